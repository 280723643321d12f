//! Lattice-path multiplicities and rag rugs.

pub mod corner;
pub mod count;
pub mod multiplicity;
pub mod path;
pub mod rug;

pub use count::{
    count_rag_rugs, is_reducible, possible_subdivisions, rug_reports, LabelledSubdivision,
    RugCount, RugReport,
};
pub use multiplicity::{path_multiplicity, PathMultiplicity};
pub use path::{
    end_path_multiplicity, enumerate_end_paths, enumerate_labelled_paths, lambda_less,
    LabelledPath, Sign,
};
pub use rug::{enumerate_rag_rugs, rug_multiplicity, total_rug_multiplicity, RagRug, RugMemo};
