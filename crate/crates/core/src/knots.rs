//! Extended knot vectors: validation, span search, multiplicity and neighbor
//! queries, and end-knot inflation.
//!
//! A degree-`m` knot vector over `n` spans holds the signed-index sequence
//! `t_{-m} <= ... <= t_0 <= ... <= t_n <= ... <= t_{n+m}`; storage is a single
//! contiguous array with offset `m`, so `t_i` lives at position `i + m`.
//! Knot equality (and therefore multiplicity) is exact floating-point
//! equality: repeated knots must be constructed by copying a value, never by
//! recomputing it.

use crate::errors::{EvalError, KnotVectorError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector<T> {
    degree: usize,
    n: usize,
    knots: Vec<T>,
}

impl<T: Scalar> KnotVector<T> {
    /// Validate and build a knot vector from its degree `m`, last domain
    /// index `n` and the `n + 2m + 1` knot values `t_{-m}..t_{n+m}`.
    pub fn new(degree: usize, n: usize, knots: Vec<T>) -> Result<Self, KnotVectorError> {
        Self::validate_parts(degree, n, &knots)?;
        Ok(KnotVector { degree, n, knots })
    }

    /// Check the knot-vector invariants, reporting the first violation:
    /// nondecreasing order, a non-degenerate domain `t_0 < t_n`, and inner
    /// knots `t_1..t_{n-1}` of multiplicity at most `m`.
    pub fn validate_parts(degree: usize, n: usize, knots: &[T]) -> Result<(), KnotVectorError> {
        if degree == 0 {
            return Err(KnotVectorError::ZeroDegree);
        }
        if n == 0 {
            return Err(KnotVectorError::ZeroSpanCount);
        }
        let expected = n + 2 * degree + 1;
        if knots.len() != expected {
            return Err(KnotVectorError::WrongLength {
                expected,
                got: knots.len(),
            });
        }
        let signed = |pos: usize| pos as isize - degree as isize;
        for (pos, &x) in knots.iter().enumerate() {
            if !x.is_finite() {
                return Err(KnotVectorError::NonFinite { index: signed(pos) });
            }
        }
        for pos in 0..knots.len() - 1 {
            if knots[pos] > knots[pos + 1] {
                return Err(KnotVectorError::NotNondecreasing { index: signed(pos) });
            }
        }
        if knots[degree] == knots[degree + n] {
            return Err(KnotVectorError::DegenerateDomain);
        }
        // Multiplicity scan over runs of coincident knots.
        let mut run_start = 0;
        for pos in 1..=knots.len() {
            if pos == knots.len() || knots[pos] != knots[run_start] {
                let run_len = pos - run_start;
                if run_len > degree {
                    // Offending only if the run covers an inner index 1..=n-1.
                    let inner_lo = degree + 1;
                    let inner_hi = degree + n - 1;
                    let lo = run_start.max(inner_lo);
                    let hi = (pos - 1).min(inner_hi);
                    if lo <= hi {
                        return Err(KnotVectorError::InnerMultiplicity {
                            index: signed(lo),
                            multiplicity: run_len,
                            max: degree,
                        });
                    }
                }
                run_start = pos;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), KnotVectorError> {
        Self::validate_parts(self.degree, self.n, &self.knots)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Index of the last domain knot; the spans are `[t_j, t_{j+1})` for
    /// `j = 0..n-1`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Knot `t_i` for a signed index `i` in `-m..=n+m`.
    #[inline]
    pub fn knot(&self, i: isize) -> T {
        self.knots[(i + self.degree as isize) as usize]
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    pub fn domain(&self) -> (T, T) {
        (self.knot(0), self.knot(self.n as isize))
    }

    /// Locate `u` in a non-empty span: returns `j` with `t_j <= u < t_{j+1}`.
    /// At `u = t_n` the last non-empty span is returned, so evaluating there
    /// yields left limits.
    pub fn find_span(&self, u: T) -> Result<usize, EvalError> {
        let (lo, hi) = self.domain();
        if !(u >= lo && u <= hi) {
            return Err(EvalError::OutOfDomain {
                u: u.to_f64(),
                lo: lo.to_f64(),
                hi: hi.to_f64(),
            });
        }
        let domain = &self.knots[self.degree..=self.degree + self.n];
        let mut j = domain.partition_point(|x| *x <= u) - 1;
        if j >= self.n {
            j = self.n - 1;
        }
        while domain[j] == domain[j + 1] {
            j -= 1;
        }
        Ok(j)
    }

    /// Whether the start and end boundary knots are coincident.
    pub fn is_clamped(&self) -> (bool, bool) {
        let m = self.degree as isize;
        let n = self.n as isize;
        (
            self.knot(-m) == self.knot(0),
            self.knot(n) == self.knot(n + m),
        )
    }

    /// Smallest index `r` with `t_k < t_r`; then `[t_{r-1}, t_r)` is the
    /// non-empty span starting at the value `t_k`. Requires `t_k < t_n`.
    pub fn right_neighbor(&self, k: isize) -> isize {
        debug_assert!(self.knot(k) < self.knot(self.n as isize));
        let mut r = k + 1;
        while self.knot(r) == self.knot(k) {
            r += 1;
        }
        r
    }

    /// Largest index `l` with `t_l < t_k`; then `[t_l, t_{l+1})` is the
    /// non-empty span ending at the value `t_k`. Requires `t_k > t_0`.
    pub fn left_neighbor(&self, k: isize) -> isize {
        debug_assert!(self.knot(k) > self.knot(0));
        let mut l = k - 1;
        while self.knot(l) == self.knot(k) {
            l -= 1;
        }
        l
    }

    /// Append copies of `t_{n+m}` until it has multiplicity `m + 1`, which
    /// makes the end clamped; a no-op when it already is. Returns the new
    /// vector (with `n_1 = n + m - l` where `l + 1` is the old multiplicity
    /// of `t_{n+m}`) together with the original span count `n`, so results
    /// computed on the inflated problem can be restricted afterwards.
    pub fn inflate_end(&self) -> (KnotVector<T>, usize) {
        let last = *self.knots.last().unwrap();
        let run = self
            .knots
            .iter()
            .rev()
            .take_while(|&&x| x == last)
            .count();
        let l = run - 1;
        if l >= self.degree {
            return (self.clone(), self.n);
        }
        let extra = self.degree - l;
        let mut knots = self.knots.clone();
        knots.extend(std::iter::repeat_n(last, extra));
        let inflated = KnotVector::new(self.degree, self.n + extra, knots)
            .expect("inflating the end knot preserves validity");
        (inflated, self.n)
    }

    /// Ascending indices of the non-empty spans `[t_j, t_{j+1})`,
    /// `0 <= j <= n-1`; the length of the list is `n_e`.
    pub fn nonempty_spans(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| self.knot(j as isize) < self.knot(j as isize + 1))
            .collect()
    }

    /// Number of coincident knots equal in value to `t_k`.
    pub fn multiplicity(&self, k: isize) -> usize {
        let v = self.knot(k);
        self.knots.iter().filter(|&&x| x == v).count()
    }

    /// Convert the knot values to another scalar type. Fails if the
    /// conversion collapses knots enough to violate an invariant.
    pub fn cast<U: Scalar>(&self) -> Result<KnotVector<U>, KnotVectorError> {
        KnotVector::new(
            self.degree,
            self.n,
            self.knots.iter().map(|&x| U::from_f64(x.to_f64())).collect(),
        )
    }
}
