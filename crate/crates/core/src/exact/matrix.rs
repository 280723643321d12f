//! Integer matrices: exact determinants, the triangular lattice reduction used
//! to read off intersection weights, and exact rational solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: impl Into<BigInt>) {
        self.data[r * self.cols + c] = v.into();
    }

    fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det_exact(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Malformed(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Weight of the origin in `max(h_n,0) ⋯ max(h_1,0) · V` where the rows are the
    /// linear forms `h_i`.
    ///
    /// Column operations over the integers bring the rows into lower-triangular
    /// form `h_i = a_{i,1} l_1 + … + a_{i,i} l_i` for a lattice basis `l_j`; the
    /// weight is `|a_{1,1} ⋯ a_{n,n}|`. Pivots are chosen by smallest absolute
    /// value, ties to the smallest column index.
    pub fn weight_at_origin(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Malformed(format!(
                "weight_at_origin needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut product = BigInt::one();
        for i in 0..n {
            loop {
                let pivot = (i..n)
                    .filter(|&j| !a[i][j].is_zero())
                    .min_by(|&x, &y| a[i][x].abs().cmp(&a[i][y].abs()).then(x.cmp(&y)));
                let Some(p) = pivot else {
                    return Ok(BigInt::zero());
                };
                let mut done = true;
                for j in i..n {
                    if j == p || a[i][j].is_zero() {
                        continue;
                    }
                    let q = a[i][j].div_floor(&a[i][p]);
                    for row in a.iter_mut().skip(i) {
                        let t = &row[j] - &q * &row[p];
                        row[j] = t;
                    }
                    if !a[i][j].is_zero() {
                        done = false;
                    }
                }
                if done {
                    for row in a.iter_mut() {
                        row.swap(i, p);
                    }
                    break;
                }
            }
            product *= &a[i][i];
        }
        Ok(product.abs())
    }

    /// Solves `self · x = rhs` exactly; `None` when singular.
    pub fn solve(&self, rhs: &[BigInt]) -> Result<Option<Vec<Rational>>> {
        if !self.is_square() || rhs.len() != self.rows {
            return Err(Error::Malformed("solve: shape mismatch".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = self
            .row_vecs()
            .into_iter()
            .zip(rhs)
            .map(|(row, b)| {
                row.into_iter()
                    .chain(std::iter::once(b.clone()))
                    .map(Rational::from_integer)
                    .collect()
            })
            .collect();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(None);
            };
            a.swap(k, p);
            let inv = a[k][k].recip();
            for v in a[k].iter_mut().skip(k) {
                *v *= &inv;
            }
            let pivot = a[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != k && !row[k].is_zero() {
                    let f = row[k].clone();
                    for (x, p) in row.iter_mut().zip(&pivot).skip(k) {
                        *x -= p * &f;
                    }
                }
            }
        }
        Ok(Some(a.into_iter().map(|row| row[n].clone()).collect()))
    }
}

/// Bareiss determinant of a row-major `n × n` machine-integer matrix, consumed
/// in place. `None` if an intermediate overflows `i128`.
pub fn det_i128(a: &mut [i128], n: usize) -> Option<i128> {
    debug_assert_eq!(a.len(), n * n);
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k] == 0 {
            let Some(i) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, i * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    let det = if n == 0 { 1 } else { a[n * n - 1] };
    Some(if negate { -det } else { det })
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_vecs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cofactor expansion, kept deliberately naive as an independent reference.
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn identity_and_swap() {
        let id = IntMatrix::identity(2);
        assert_eq!(id.det_exact().unwrap(), BigInt::one());
        assert_eq!(id.weight_at_origin().unwrap(), BigInt::one());
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.det_exact().unwrap(), BigInt::from(-1));
        assert_eq!(swap.weight_at_origin().unwrap(), BigInt::one());
    }

    #[test]
    fn triangular_weight() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![3, 5]]).unwrap();
        assert_eq!(m.weight_at_origin().unwrap(), BigInt::from(10));
        assert_eq!(m.det_exact().unwrap(), BigInt::from(10));
    }

    #[test]
    fn singular_is_zero() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.weight_at_origin().unwrap(), BigInt::zero());
        assert_eq!(m.det_exact().unwrap(), BigInt::zero());
        assert_eq!(m.solve(&[1.into(), 2.into(), 3.into()]).unwrap(), None);
    }

    #[test]
    fn non_square_rejected() {
        let m = IntMatrix::zeros(2, 3);
        assert!(m.det_exact().is_err());
        assert!(m.weight_at_origin().is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn solve_small_system() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        let x = m.solve(&[3.into(), 5.into()]).unwrap().unwrap();
        assert_eq!(
            x,
            vec![
                crate::exact::rational::ratio(4, 5),
                crate::exact::rational::ratio(7, 5)
            ]
        );
        let id = IntMatrix::identity(3);
        let y = id
            .solve(&[1.into(), (-2).into(), 0.into()])
            .unwrap()
            .unwrap();
        assert_eq!(y, vec![int(1), int(-2), int(0)]);
    }

    #[test]
    fn random_matrices_agree_with_cofactor_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            let reference = BigInt::from(cofactor_det(&rows));
            assert_eq!(m.det_exact().unwrap(), reference, "{rows:?}");
            assert_eq!(m.weight_at_origin().unwrap(), reference.abs(), "{rows:?}");
            let mut flat: Vec<i128> = rows.iter().flatten().map(|&v| v as i128).collect();
            assert_eq!(
                det_i128(&mut flat, n).map(BigInt::from),
                Some(reference),
                "{rows:?}"
            );
        }
    }

    #[test]
    fn machine_determinant_reports_overflow() {
        let big = i128::MAX / 2;
        let mut a = vec![big, 1, 1, big, 0, 1, 1, 1, big];
        assert_eq!(det_i128(&mut a, 3), None);
        let mut singular = vec![0, 1, 0, 2];
        assert_eq!(det_i128(&mut singular, 2), Some(0));
        assert_eq!(det_i128(&mut [], 0), Some(1));
    }
}
