//! Exact coefficients for uniform knots.
//!
//! With equally spaced knots every basis function is a translate of the same
//! one, so a single reference span carries all the information. The endpoint
//! rows collapse to `1/m!` and the interior recurrence has integer
//! coefficients, so the whole table is rational and computed without rounding.
//!
//! Row `r` (for `r = 0..=m`) holds the coefficients of the function whose
//! support starts `m - r` spans left of the reference span, matching the row
//! order of [`BBCoeffTable`](super::BBCoeffTable) blocks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of the degree-`m` B-spline basis functions over one uniform
/// reference span, as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalBBTable {
    m: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalBBTable {
    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.rows[r]
    }

    /// Row converted to `f64`, for seeding or checking floating-point paths.
    pub fn row_f64(&self, r: usize) -> Vec<f64> {
        self.rows[r]
            .iter()
            .map(|q| {
                let n = q.numer().to_string().parse::<f64>().unwrap();
                let d = q.denom().to_string().parse::<f64>().unwrap();
                n / d
            })
            .collect()
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Exact coefficients of all degree-`m` basis functions over one uniform
/// knot span.
///
/// The endpoint rows are `(0,..,0,1/m!)` and `(1/m!,0,..,0)`. Interior rows
/// are filled top-down: translation symmetry turns the continuity condition
/// at the right span boundary into `b_0` of the current row equalling `b_m`
/// of the row above, and the remaining entries follow from the same-degree
/// recurrence, whose coefficients are integers here.
pub fn compute_table_uniform(m: usize) -> RationalBBTable {
    assert!(m >= 1, "degree must be positive");
    let mut rows = vec![vec![BigRational::zero(); m + 1]; m + 1];

    let mut m_factorial = BigInt::one();
    for q in 1..=m {
        m_factorial *= BigInt::from(q);
    }
    let inv_mf = BigRational::new(BigInt::one(), m_factorial);
    rows[m][m] = inv_mf.clone();
    rows[0][0] = inv_mf;

    for r in (1..m).rev() {
        let s = (m - r) as i64;
        rows[r][0] = rows[r + 1][m].clone();
        for k in 0..m {
            let value = (int(s + 1) * &rows[r][k] + int(m as i64 + 1 - s) * &rows[r + 1][k]
                - int(m as i64 + 2 - s) * &rows[r + 1][k + 1])
                / int(s);
            rows[r][k + 1] = value;
        }
    }

    RationalBBTable { m, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn degree_one_is_the_hat_pair() {
        let table = compute_table_uniform(1);
        assert_eq!(table.row(0), &[frac(1, 1), frac(0, 1)]);
        assert_eq!(table.row(1), &[frac(0, 1), frac(1, 1)]);
    }

    #[test]
    fn degree_two_matches_the_quadratic_cardinal_spline() {
        let table = compute_table_uniform(2);
        assert_eq!(table.row(0), &[frac(1, 2), frac(0, 1), frac(0, 1)]);
        assert_eq!(table.row(1), &[frac(1, 2), frac(1, 1), frac(1, 2)]);
        assert_eq!(table.row(2), &[frac(0, 1), frac(0, 1), frac(1, 2)]);
    }

    #[test]
    fn degree_three_matches_the_cubic_cardinal_spline() {
        let table = compute_table_uniform(3);
        assert_eq!(
            table.row(2),
            &[frac(1, 6), frac(1, 3), frac(2, 3), frac(2, 3)]
        );
        assert_eq!(
            table.row(1),
            &[frac(2, 3), frac(2, 3), frac(1, 3), frac(1, 6)]
        );
    }

    #[test]
    fn columns_sum_to_exactly_one() {
        for m in 1..=10 {
            let table = compute_table_uniform(m);
            for k in 0..=m {
                let sum: BigRational = table.rows().iter().map(|row| row[k].clone()).sum();
                assert!(sum.is_one(), "m={m} k={k} sum={sum}");
            }
        }
    }

    #[test]
    fn entries_are_non_negative() {
        for m in 1..=10 {
            let table = compute_table_uniform(m);
            for row in table.rows() {
                for b in row {
                    assert!(b >= &BigRational::zero());
                }
            }
        }
    }
}
