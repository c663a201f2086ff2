//! Bernstein polynomials and evaluators for polynomials given in Bernstein
//! form: the quadratic-time de Casteljau scheme (used as an oracle) and a
//! linear-time geometric evaluator that operates on convex combinations only.

use crate::errors::EvalError;
use crate::ops::{NoTally, OpTally};
use crate::scalar::Scalar;

/// A scalar polynomial on `[0, 1]` given by its coefficients in the Bernstein
/// basis of degree `coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> BernsteinPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self, EvalError> {
        if coeffs.is_empty() {
            return Err(EvalError::EmptyCoefficients);
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(EvalError::NonFiniteCoordinate);
        }
        Ok(BernsteinPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
}

/// Binomial coefficient as `f64`, built multiplicatively so no intermediate
/// factorial overflows. Accurate to a few ulps for `n <= 60`, which covers
/// every degree used here (the experiments stop at m = 15).
fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k.min(n));
    let mut c = 1.0;
    for q in 1..=k {
        c = c * (n - k + q) as f64 / q as f64;
    }
    c
}

/// Value of the Bernstein polynomial `B^n_k` at `t`, with the convention that
/// `B^n_k = 0` for `k < 0` or `k > n`.
pub fn bernstein_value(n: usize, k: isize, t: f64) -> f64 {
    if k < 0 || k as usize > n {
        return 0.0;
    }
    let k = k as usize;
    binomial(n, k) * t.powi(k as i32) * (1.0 - t).powi((n - k) as i32)
}

/// Derivative of `B^n_k` at `t`, via the degree-lowering identity
/// `(B^n_k)' = n (B^{n-1}_{k-1} - B^{n-1}_k)`. Requires `n >= 1`.
pub fn bernstein_derivative_value(n: usize, k: isize, t: f64) -> f64 {
    assert!(n >= 1, "derivative needs degree >= 1");
    n as f64 * (bernstein_value(n - 1, k - 1, t) - bernstein_value(n - 1, k, t))
}

pub(crate) fn de_casteljau_on<T: Scalar>(coeffs: &[T], t: T) -> T {
    let mut work = coeffs.to_vec();
    let n = work.len() - 1;
    let one = T::one();
    for level in 1..=n {
        for k in 0..=(n - level) {
            work[k] = (one - t) * work[k] + t * work[k + 1];
        }
    }
    work[0]
}

/// Evaluate a Bernstein-form polynomial by repeated convex combinations
/// (de Casteljau). O(n^2) operations; the oracle the linear evaluator is
/// checked against.
pub fn de_casteljau_eval<T: Scalar>(p: &BernsteinPoly<T>, t: T) -> T {
    de_casteljau_on(p.coeffs(), t)
}

/// Convex-combination weights for the linear-time geometric evaluator at a
/// fixed parameter. The weights depend only on the degree and the parameter,
/// so one set serves every coefficient row evaluated at that parameter.
///
/// For `t > 1/2` the weights are built for `1 - t` and rows are consumed in
/// reverse, which keeps the internal ratio at most 1.
#[derive(Debug, Clone)]
pub struct GeometricWeights<T> {
    h: Vec<T>,
    reversed: bool,
}

impl<T: Scalar> GeometricWeights<T> {
    pub fn new(degree: usize, t: T) -> Self {
        let mut w = GeometricWeights {
            h: Vec::new(),
            reversed: false,
        };
        w.fill(degree, t, &mut NoTally);
        w
    }

    /// Recompute the weights in place for a new `(degree, t)`, reusing the
    /// buffer. `t` must lie in `[0, 1)`.
    pub fn fill<C: OpTally>(&mut self, degree: usize, t: T, tally: &mut C) {
        let one = T::one();
        self.reversed = t + t > one;
        let s = if self.reversed { one - t } else { t };
        let delta = s / (one - s);
        tally.sub(1);
        tally.div(1);

        self.h.clear();
        self.h.reserve(degree);
        let mut prev = one;
        for k in 1..=degree {
            let omega = prev * delta * T::from_index(degree - k + 1);
            let hk = omega / (T::from_index(k) + omega);
            tally.mul(2);
            tally.add(1);
            tally.div(1);
            self.h.push(hk);
            prev = hk;
        }
    }

    /// Evaluate one coefficient row with these weights: a running convex
    /// combination `q <- (1 - h_k) q + h_k c_k`.
    pub fn eval<C: OpTally>(&self, coeffs: &[T], tally: &mut C) -> T {
        let n = self.h.len();
        debug_assert_eq!(coeffs.len(), n + 1);
        let one = T::one();
        let mut q = if self.reversed { coeffs[n] } else { coeffs[0] };
        for (k, &h) in self.h.iter().enumerate() {
            let c = if self.reversed {
                coeffs[n - 1 - k]
            } else {
                coeffs[k + 1]
            };
            q = (one - h) * q + h * c;
            tally.sub(1);
            tally.mul(2);
            tally.add(1);
        }
        q
    }
}

pub(crate) fn geometric_eval_on<T: Scalar>(coeffs: &[T], t: T) -> T {
    let n = coeffs.len() - 1;
    if t >= T::one() {
        return coeffs[n];
    }
    if n == 0 {
        return coeffs[0];
    }
    let weights = GeometricWeights::new(n, t);
    weights.eval(coeffs, &mut NoTally)
}

/// Evaluate a Bernstein-form polynomial in O(n) arithmetic operations using
/// convex combinations only. For `t = 1` this returns the last coefficient
/// directly (endpoint interpolation); the update scheme itself is defined on
/// `[0, 1)`.
pub fn geometric_eval<T: Scalar>(p: &BernsteinPoly<T>, t: T) -> T {
    geometric_eval_on(p.coeffs(), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use proptest::prelude::*;

    #[test]
    fn value_matches_hand_cases() {
        assert_eq!(bernstein_value(2, 1, 0.5), 0.5);
        assert_eq!(bernstein_value(5, 0, 0.0), 1.0);
        assert_eq!(bernstein_value(3, 4, 0.3), 0.0);
        assert_eq!(bernstein_value(3, -1, 0.3), 0.0);
    }

    #[test]
    fn derivative_matches_hand_cases() {
        assert_eq!(bernstein_derivative_value(1, 0, 0.123), -1.0);
        assert_eq!(bernstein_derivative_value(2, 1, 0.5), 0.0);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        let fd = (bernstein_value(3, 2, 0.4 + h) - bernstein_value(3, 2, 0.4 - h)) / (2.0 * h);
        let exact = bernstein_derivative_value(3, 2, 0.4);
        assert!((fd - exact).abs() <= 1e-6, "fd={fd} exact={exact}");
    }

    #[test]
    fn de_casteljau_hand_cases() {
        let constant = BernsteinPoly::new(vec![0.7; 6]).unwrap();
        for t in [0.0, 0.25, 0.5, 0.99, 1.0] {
            assert_eq!(de_casteljau_eval(&constant, t), 0.7);
        }
        let last = BernsteinPoly::new(vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(de_casteljau_eval(&last, 1.0), 1.0);
        let middle = BernsteinPoly::new(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(de_casteljau_eval(&middle, 0.5), 0.5);
    }

    #[test]
    fn geometric_hand_cases() {
        let constant = BernsteinPoly::new(vec![-2.5; 8]).unwrap();
        for t in [0.0, 0.3, 0.9999] {
            let v: f64 = geometric_eval(&constant, t);
            assert!((v + 2.5).abs() < 1e-14);
        }
        let first = BernsteinPoly::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(geometric_eval(&first, 0.0), 1.0);
    }

    #[test]
    fn geometric_endpoint_uses_last_coefficient() {
        let p = BernsteinPoly::new(vec![3.0, -1.0, 4.0]).unwrap();
        assert_eq!(geometric_eval(&p, 1.0), 4.0);
    }

    #[test]
    fn geometric_agrees_with_de_casteljau_on_random_inputs() {
        let mut rng = Rng::new(0x5eed);
        for _ in 0..1000 {
            let n = 1 + rng.below(15);
            let coeffs: Vec<f64> = (0..=n).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let t = rng.next_f64();
            let p = BernsteinPoly::new(coeffs).unwrap();
            let reference = de_casteljau_eval(&p, t);
            let fast = geometric_eval(&p, t);
            assert!(
                (fast - reference).abs() <= 1e-12 * (1.0 + reference.abs()),
                "n={n} t={t} fast={fast} reference={reference}"
            );
        }
    }

    #[test]
    fn partition_of_unity() {
        for n in 0..=15usize {
            for step in 0..=100 {
                let t = step as f64 / 100.0;
                let sum: f64 = (0..=n).map(|k| bernstein_value(n, k as isize, t)).sum();
                assert!((sum - 1.0).abs() <= 1e-13, "n={n} t={t} sum={sum}");
            }
        }
    }

    #[test]
    fn degree_elevation_identity() {
        // B^n_k = (n-k+1)/(n+1) B^{n+1}_k + (k+1)/(n+1) B^{n+1}_{k+1}
        for n in 0..=10usize {
            for k in 0..=n {
                for step in 0..=10 {
                    let t = step as f64 / 10.0;
                    let lhs = bernstein_value(n, k as isize, t);
                    let rhs = (n - k + 1) as f64 / (n + 1) as f64
                        * bernstein_value(n + 1, k as isize, t)
                        + (k + 1) as f64 / (n + 1) as f64
                            * bernstein_value(n + 1, k as isize + 1, t);
                    assert!((lhs - rhs).abs() <= 1e-13);
                }
            }
        }
    }

    #[test]
    fn derivative_identities() {
        // t (B^n_k)' = k B^n_k - (k+1) B^n_{k+1}
        // (B^n_k)' = (n-k+1) B^n_{k-1} + (2k-n) B^n_k - (k+1) B^n_{k+1}
        for n in 1..=10usize {
            for k in 0..=n {
                let ki = k as isize;
                for step in 0..=10 {
                    let t = step as f64 / 10.0;
                    let d = bernstein_derivative_value(n, ki, t);
                    let lhs5 = t * d;
                    let rhs5 = k as f64 * bernstein_value(n, ki, t)
                        - (k + 1) as f64 * bernstein_value(n, ki + 1, t);
                    assert!((lhs5 - rhs5).abs() <= 1e-12);

                    let rhs6 = (n as f64 - k as f64 + 1.0) * bernstein_value(n, ki - 1, t)
                        + (2.0 * k as f64 - n as f64) * bernstein_value(n, ki, t)
                        - (k + 1) as f64 * bernstein_value(n, ki + 1, t);
                    assert!((d - rhs6).abs() <= 1e-12);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn geometric_equals_de_casteljau(
            coeffs in proptest::collection::vec(-1.0f64..1.0, 1..=16),
            t in 0.0f64..1.0,
        ) {
            let p = BernsteinPoly::new(coeffs).unwrap();
            let reference = de_casteljau_eval(&p, t);
            let fast = geometric_eval(&p, t);
            prop_assert!((fast - reference).abs() <= 1e-12 * (1.0 + reference.abs()));
        }

        #[test]
        fn weights_stay_convex(n in 1usize..=15, t in 0.0f64..1.0) {
            let w = GeometricWeights::<f64>::new(n, t);
            for &h in &w.h {
                prop_assert!((0.0..=1.0).contains(&h));
            }
        }
    }
}
