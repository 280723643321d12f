//! Cross-engine agreement suite: every invariant from a provider is compared
//! with an independent computation of the same number.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::exact::rational::{display, int, ratio};
use crate::exact::Rational;
use crate::oracle::{oracle_invariant, within_budget, OracleReference};
use crate::ragrug::{
    count_rag_rugs, end_path_multiplicity, enumerate_end_paths, enumerate_labelled_paths,
    rug_reports, PathMultiplicity, Sign,
};
use crate::wdvv::{one_point_value, plane_curve_count_table, Engine, InvariantQuery};

/// Source of the invariants under test.
pub trait InvariantProvider {
    fn invariant(&mut self, q: &InvariantQuery) -> Result<Rational>;
}

impl InvariantProvider for Engine {
    fn invariant(&mut self, q: &InvariantQuery) -> Result<Rational> {
        self.compute_invariant(q).map(|v| v.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CheckLevel {
    /// Degree ≤ 2 against the curve oracle, plus the worked examples.
    Quick,
    /// Adds degree 3 against rag rugs and the oracle, and N_3, N_4.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub level: CheckLevel,
    pub checks: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Suite {
    checks: Vec<CheckOutcome>,
}

impl Suite {
    /// Records `actual == expected`; an error on either side is a failure.
    fn equal(&mut self, name: String, actual: Result<Rational>, expected: Result<Rational>) {
        let show = |r: &Result<Rational>| match r {
            Ok(v) => display(v),
            Err(e) => format!("error: {e}"),
        };
        let passed = matches!((&actual, &expected), (Ok(a), Ok(e)) if a == e);
        self.checks.push(CheckOutcome {
            name,
            passed,
            expected: show(&expected),
            actual: show(&actual),
        });
    }

    fn holds(&mut self, name: &str, expected: &str, actual: Result<String>, ok: bool) {
        let actual = actual.unwrap_or_else(|e| format!("error: {e}"));
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed: ok,
            expected: expected.to_string(),
            actual,
        });
    }
}

fn points_forms(d: u32) -> Vec<Vec<u32>> {
    InvariantQuery::all_valid(d, 0, 0)
        .into_iter()
        .map(|q| q.rs().to_vec())
        .collect()
}

fn worked_examples(suite: &mut Suite) {
    let wanted = [ratio(1, 1), ratio(1, 4), ratio(1, 12)];
    let values: Result<Vec<Rational>> = enumerate_end_paths(3, Sign::Minus)
        .iter()
        .map(|p| end_path_multiplicity(p, Sign::Minus, 3))
        .collect();
    let ok = matches!(&values, Ok(v) if wanted.iter().all(|w| v.contains(w)));
    suite.holds(
        "counterclockwise end paths of degree 3 attain 1, 1/4, 1/12",
        "all three occur",
        values.map(|v| {
            let mut shown: Vec<String> = v.iter().map(display).collect();
            shown.sort();
            shown.dedup();
            shown.join(", ")
        }),
        ok,
    );

    let mut memo = PathMultiplicity::new(3);
    let found: Result<bool> = enumerate_labelled_paths(3)
        .iter()
        .try_fold(false, |acc, p| {
            Ok(acc || (p.is_full(3) && memo.multiplicity(p, Sign::Plus)? == ratio(3, 2)))
        });
    let ok = matches!(found, Ok(true));
    suite.holds(
        "some degree-3 path has upper multiplicity 3/2",
        "found",
        found.map(|f| if f { "found" } else { "absent" }.to_string()),
        ok,
    );

    let rugs = rug_reports(3, &[2, 2, 0, 0]);
    let ok = matches!(&rugs, Ok(r) if r.iter().any(|r| r.multiplicity == ratio(1, 2)));
    suite.holds(
        "a rag rug of form (2,2,0,0) has multiplicity 1/2",
        "found",
        rugs.map(|r| format!("{} contributing rugs", r.len())),
        ok,
    );
}

/// Runs the suite. Failing checks are reported, never raised.
pub fn run_checks(
    level: CheckLevel,
    provider: &mut dyn InvariantProvider,
    seed: u64,
) -> CheckReport {
    let mut suite = Suite { checks: Vec::new() };

    for d in 1..=4 {
        let q = InvariantQuery::points(d, vec![3 * d - 2]);
        suite.equal(
            format!("one point {q}"),
            provider.invariant(&q),
            Ok(one_point_value(d)),
        );
    }
    for d in 2..=5 {
        let hi = InvariantQuery::points(d, vec![3 * d - 2]);
        let lo = InvariantQuery::points(d - 1, vec![3 * d - 5]);
        let scaled = provider.invariant(&hi).map(|v| v * int((d * d * d) as i64));
        suite.equal(format!("d^3 {hi} = {lo}"), scaled, provider.invariant(&lo));
    }

    let mut reference = OracleReference::new(seed);
    for d in 1..=2 {
        for l in 0..=2 {
            for m in 0..=1 {
                for q in InvariantQuery::all_valid(d, l, m) {
                    suite.equal(
                        format!("oracle {q}"),
                        provider.invariant(&q),
                        reference.value(&q),
                    );
                }
            }
        }
        for form in points_forms(d) {
            let q = InvariantQuery::points(d, form.clone());
            let rugs = count_rag_rugs(d, &form).map(|c| c.irreducible);
            suite.equal(format!("rag rugs {q}"), provider.invariant(&q), rugs);
        }
    }
    worked_examples(&mut suite);

    if level == CheckLevel::Full {
        for form in points_forms(3).into_iter().filter(|f| f.len() <= 4) {
            let q = InvariantQuery::points(3, form.clone());
            let rugs = count_rag_rugs(3, &form).map(|c| c.irreducible);
            suite.equal(format!("rag rugs {q}"), provider.invariant(&q), rugs);
        }
        for form in points_forms(3)
            .into_iter()
            .filter(|f| within_budget(3, f.len()))
        {
            let q = InvariantQuery::points(3, form.clone());
            let oracle = oracle_invariant(3, &form, seed).map(|o| o.value);
            suite.equal(format!("oracle {q}"), provider.invariant(&q), oracle);
        }
        for d in 3..=4 {
            let q = InvariantQuery::points(d, vec![0; (3 * d - 1) as usize]);
            let counted = count_rag_rugs(d, q.rs()).map(|c| c.irreducible);
            let table = plane_curve_count_table(d).unwrap_or_else(Rational::zero);
            suite.equal(format!("N_{d} by rag rugs"), counted, Ok(table.clone()));
            suite.equal(format!("N_{d} {q}"), provider.invariant(&q), Ok(table));
        }
    }

    CheckReport {
        level,
        checks: suite.checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_summarises_failures() {
        let report = CheckReport {
            level: CheckLevel::Quick,
            checks: vec![
                CheckOutcome {
                    name: "a".into(),
                    passed: true,
                    expected: "1".into(),
                    actual: "1".into(),
                },
                CheckOutcome {
                    name: "b".into(),
                    passed: false,
                    expected: "1".into(),
                    actual: "2".into(),
                },
            ],
        };
        assert!(!report.passed());
        assert_eq!(
            report
                .failures()
                .map(|c| c.name.as_str())
                .collect::<Vec<_>>(),
            ["b"]
        );
    }

    #[test]
    fn worked_examples_hold() {
        let mut suite = Suite { checks: Vec::new() };
        worked_examples(&mut suite);
        assert_eq!(suite.checks.len(), 3);
        assert!(suite.checks.iter().all(|c| c.passed), "{:?}", suite.checks);
    }
}
