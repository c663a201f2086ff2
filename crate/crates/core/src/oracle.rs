//! Independent reference implementations used for verification and as the
//! benchmark baselines: generalized divided differences over truncated powers
//! (the definition of the basis functions), the degree recurrence, the
//! derivative formula, and the de Boor-Cox curve algorithm.
//!
//! Everything here favors clarity over speed except the de Boor-Cox and
//! recurrence-basis routines, which double as timed baselines.

use crate::dd::Dd;
use crate::errors::{EvalError, OracleError};
use crate::eval::BSplineCurve;
use crate::knots::KnotVector;
use crate::ops::{NoTally, OpTally};
use crate::scalar::{Field, Scalar};
use crate::surface::TensorProductSurface;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// `(x - c)^m_+`: the truncated power, with the `x >= c` branch taken
/// literally, so the kink value is `0^m = 0` for `m >= 1` and `1` for `m = 0`.
fn truncated_power<T: Field>(x: &T, c: &T, m: usize) -> T {
    if x >= c {
        let base = x.clone() - c.clone();
        let mut acc = T::one();
        for _ in 0..m {
            acc = acc * base.clone();
        }
        acc
    } else {
        T::zero()
    }
}

fn integer_binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for q in 1..=k {
        c = c * (n - k + q) as u128 / q as u128;
    }
    c
}

/// `f^(r)(x) / r!` for `f(t) = (t - u)^m_+`, i.e.
/// `C(m, r) (x - u)^{m-r}_+` for `r <= m` and `0` beyond.
fn truncpow_scaled_derivative<T: Field>(x: &T, u: &T, m: usize, r: usize) -> T {
    if r > m {
        return T::zero();
    }
    let coeff = T::from_index(integer_binomial(m, r) as usize);
    coeff * truncated_power(x, u, m - r)
}

/// Generalized divided difference `[x_i, ..., x_{i+l}] f` for
/// `f(t) = (t - u)^m_+` acting on `t`. Coincident node runs use the analytic
/// derivative branch; distinct ends use the difference quotient. O(l^2) via a
/// triangular table.
///
/// The order-`m` derivative of the truncated power does not exist at the kink
/// itself, so a run of `m + 1` nodes equal to `u` needs a one-sided
/// convention: when further nodes follow the run, the left-sided derivative
/// (zero) applies; otherwise the literal `x >= c` branch does. This makes the
/// induced basis values right-continuous at a clamped start and left limits
/// at a clamped end.
pub fn divided_difference_truncpow<T: Field>(
    nodes: &[T],
    m: usize,
    u: &T,
) -> Result<T, OracleError> {
    assert!(!nodes.is_empty(), "need at least one node");
    for q in 0..nodes.len() - 1 {
        if nodes[q] > nodes[q + 1] {
            return Err(OracleError::DecreasingNodes { index: q });
        }
    }
    let l = nodes.len() - 1;
    let mut table: Vec<T> = nodes
        .iter()
        .map(|x| truncated_power(x, u, m))
        .collect();
    for len in 1..=l {
        for a in 0..=(l - len) {
            let b = a + len;
            table[a] = if nodes[a] == nodes[b] {
                if len == m && nodes[a] == *u && b < l {
                    T::zero()
                } else {
                    truncpow_scaled_derivative(&nodes[a], u, m, len)
                }
            } else {
                (table[a + 1].clone() - table[a].clone())
                    / (nodes[b].clone() - nodes[a].clone())
            };
        }
    }
    Ok(table.swap_remove(0))
}

/// The defining value of `N_{m,i}(u)`:
/// `(t_{i+m+1} - t_i) [t_i, ..., t_{i+m+1}] (t - u)^m_+`. Exactly zero
/// outside the support `[t_i, t_{i+m+1}]`.
///
/// Two accuracy measures, both transparent to the definition: the divided
/// difference of the degree-`m` polynomial `(t - u)^m` over the `m + 2` nodes
/// vanishes, so the kink may equivalently be approached from the other side
/// on mirrored nodes, and whichever side leaves fewer nodes past the kink is
/// better conditioned; and the triangular table itself runs in double-double
/// arithmetic, since its cancellation grows sharply with the degree.
pub fn bspline_via_divdiff<T: Scalar>(kv: &KnotVector<T>, i: isize, u: T) -> T {
    let m = kv.degree() as isize;
    debug_assert!(-m <= i && i < kv.n() as isize);
    let lo = kv.knot(i);
    let hi = kv.knot(i + m + 1);
    if u < lo || u > hi || lo == hi {
        return T::zero();
    }
    let dd = if hi - u <= u - lo {
        let nodes: Vec<Dd> = (i..=i + m + 1)
            .map(|q| Dd::from_f64(kv.knot(q).to_f64()))
            .collect();
        divided_difference_truncpow(&nodes, m as usize, &Dd::from_f64(u.to_f64()))
    } else {
        let nodes: Vec<Dd> = (i..=i + m + 1)
            .rev()
            .map(|q| Dd::from_f64(-kv.knot(q).to_f64()))
            .collect();
        divided_difference_truncpow(&nodes, m as usize, &Dd::from_f64(-u.to_f64()))
    }
    .expect("knot vectors are nondecreasing");
    let span = Dd::from_f64(hi.to_f64()) - Dd::from_f64(lo.to_f64());
    T::from_f64((span * dd).to_f64())
}

/// `N_{deg,i}(u)` by the two-term degree recursion with the 0/0 convention,
/// for any `deg <= m`. The degree-0 base row is the half-open span indicator,
/// with `u = t_n` resolving to the last non-empty span (left limits).
fn recurrence_value<T: Scalar>(kv: &KnotVector<T>, deg: usize, i: isize, u: T) -> T {
    let j = kv
        .find_span(u)
        .expect("parameter inside the knot domain") as isize;
    if j < i || j > i + deg as isize {
        return T::zero();
    }
    let mut vals = vec![T::zero(); deg + 1];
    vals[(j - i) as usize] = T::one();
    for d in 1..=deg as isize {
        for off in 0..=(deg as isize - d) {
            let s = i + off;
            let left_den = kv.knot(d + s) - kv.knot(s);
            let left = if left_den == T::zero() {
                T::zero()
            } else {
                (u - kv.knot(s)) * vals[off as usize] / left_den
            };
            let right_den = kv.knot(d + s + 1) - kv.knot(s + 1);
            let right = if right_den == T::zero() {
                T::zero()
            } else {
                (kv.knot(d + s + 1) - u) * vals[off as usize + 1] / right_den
            };
            vals[off as usize] = left + right;
        }
    }
    vals[0]
}

/// `N_{m,i}(u)` by the de Boor-Mansfield-Cox recursion; O(m^2) per value.
pub fn bspline_via_recurrence<T: Scalar>(kv: &KnotVector<T>, i: isize, u: T) -> T {
    recurrence_value(kv, kv.degree(), i, u)
}

/// `N'_{m,i}(u)` via degree-(m-1) values and the 0/0 convention. Defined for
/// `u` strictly inside a non-empty span.
pub fn bspline_derivative<T: Scalar>(kv: &KnotVector<T>, i: isize, u: T) -> T {
    let m = kv.degree();
    let mi = m as isize;
    let left_den = kv.knot(mi + i) - kv.knot(i);
    let left = if left_den == T::zero() {
        T::zero()
    } else {
        recurrence_value(kv, m - 1, i, u) / left_den
    };
    let right_den = kv.knot(mi + i + 1) - kv.knot(i + 1);
    let right = if right_den == T::zero() {
        T::zero()
    } else {
        recurrence_value(kv, m - 1, i + 1, u) / right_den
    };
    T::from_index(m) * (left - right)
}

/// All `m + 1` basis values active on span `j` at `u`, by the vectorized
/// degree recursion (de Boor's basis algorithm): `values[r]` is
/// `N_{m,j-m+r}(u)`. This is the "eval splines" benchmark baseline.
pub fn active_basis_via_recurrence<T: Scalar, C: OpTally>(
    kv: &KnotVector<T>,
    j: usize,
    u: T,
    tally: &mut C,
) -> Vec<T> {
    let m = kv.degree();
    let mut vals = vec![T::zero(); m + 1];
    active_basis_into(kv, j, u, &mut vals, tally);
    vals
}

pub(crate) fn active_basis_into<T: Scalar, C: OpTally>(
    kv: &KnotVector<T>,
    j: usize,
    u: T,
    vals: &mut [T],
    tally: &mut C,
) {
    let m = kv.degree();
    let j = j as isize;
    vals[0] = T::one();
    let mut left = vec![T::zero(); m + 1];
    let mut right = vec![T::zero(); m + 1];
    for d in 1..=m {
        left[d] = u - kv.knot(j + 1 - d as isize);
        right[d] = kv.knot(j + d as isize) - u;
        tally.sub(2);
        let mut saved = T::zero();
        for r in 0..d {
            let temp = vals[r] / (right[r + 1] + left[d - r]);
            vals[r] = saved + right[r + 1] * temp;
            saved = left[d - r] * temp;
            tally.add(2);
            tally.div(1);
            tally.mul(2);
        }
        vals[d] = saved;
    }
}

/// The triangular convex-combination scheme on the active window of a span,
/// in place over `pts` (`(m + 1) * dim` coordinates); the result lands in the
/// last point slot.
fn de_boor_triangle<T: Scalar, C: OpTally>(
    kv: &KnotVector<T>,
    j: usize,
    u: T,
    pts: &mut [T],
    dim: usize,
    tally: &mut C,
) {
    let m = kv.degree();
    let first = j as isize - m as isize;
    for lvl in 1..=m {
        for r in (lvl..=m).rev() {
            let i = first + r as isize;
            let ti = kv.knot(i);
            let alpha = (u - ti) / (kv.knot(i + m as isize + 1 - lvl as isize) - ti);
            let beta = T::one() - alpha;
            tally.sub(3);
            tally.div(1);
            for c in 0..dim {
                pts[r * dim + c] = beta * pts[(r - 1) * dim + c] + alpha * pts[r * dim + c];
            }
            tally.mul(2 * dim as u64);
            tally.add(dim as u64);
        }
    }
}

pub(crate) fn de_boor_cox_into<T: Scalar, C: OpTally>(
    curve: &BSplineCurve<T>,
    u: T,
    out: &mut [T],
    work: &mut Vec<T>,
    tally: &mut C,
) -> Result<(), EvalError> {
    let kv = curve.kv();
    let m = kv.degree();
    let dim = curve.dim();
    let j = kv.find_span(u)?;
    let first = j as isize - m as isize;
    work.clear();
    for r in 0..=m {
        work.extend_from_slice(curve.control_point(first + r as isize));
    }
    de_boor_triangle(kv, j, u, work, dim, tally);
    out.copy_from_slice(&work[m * dim..]);
    Ok(())
}

/// Point on a B-spline curve by the de Boor-Cox algorithm; O(d m^2) per
/// point. The benchmark reference the fast pipeline is checked against.
pub fn de_boor_cox_point<T: Scalar>(curve: &BSplineCurve<T>, u: T) -> Result<Vec<T>, EvalError> {
    let mut out = vec![T::zero(); curve.dim()];
    let mut work = Vec::new();
    de_boor_cox_into(curve, u, &mut out, &mut work, &mut NoTally)?;
    Ok(out)
}

pub(crate) fn tensor_de_boor_cox_into<T: Scalar, C: OpTally>(
    surf: &TensorProductSurface<T>,
    u: T,
    w: T,
    out: &mut [T],
    work_u: &mut Vec<T>,
    work_v: &mut Vec<T>,
    tally: &mut C,
) -> Result<(), EvalError> {
    let m1 = surf.kv_u().degree();
    let m2 = surf.kv_v().degree();
    let dim = surf.dim();
    let j1 = surf.kv_u().find_span(u)?;
    let j2 = surf.kv_v().find_span(w)?;
    let first_u = j1 as isize - m1 as isize;
    let first_v = j2 as isize - m2 as isize;

    work_u.clear();
    for r in 0..=m1 {
        work_v.clear();
        for s in 0..=m2 {
            work_v.extend_from_slice(surf.net_point(first_u + r as isize, first_v + s as isize));
        }
        de_boor_triangle(surf.kv_v(), j2, w, work_v, dim, tally);
        work_u.extend_from_slice(&work_v[m2 * dim..]);
    }
    de_boor_triangle(surf.kv_u(), j1, u, work_u, dim, tally);
    out.copy_from_slice(&work_u[m1 * dim..]);
    Ok(())
}

/// Surface point by de Boor-Cox along the v-axis, then the u-axis; the
/// tensor-product benchmark reference.
pub fn tensor_de_boor_cox_point<T: Scalar>(
    surf: &TensorProductSurface<T>,
    u: T,
    w: T,
) -> Result<Vec<T>, EvalError> {
    let mut out = vec![T::zero(); surf.dim()];
    let mut work_u = Vec::new();
    let mut work_v = Vec::new();
    tensor_de_boor_cox_into(surf, u, w, &mut out, &mut work_u, &mut work_v, &mut NoTally)?;
    Ok(out)
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    let k = k.min(n - k);
    let mut c = BigInt::from(1);
    for q in 1..=k {
        c = c * BigInt::from(n - k + q) / BigInt::from(q);
    }
    c
}

/// Exact Bernstein coefficients of one degree-`m` basis function over a
/// uniform reference span, straight from the divided-difference definition
/// evaluated in rational polynomial arithmetic. Row `r` matches row `r` of
/// [`compute_table_uniform`](crate::bbf::uniform::compute_table_uniform):
/// the function whose knots are the integers `r ..= r + m + 1`, restricted to
/// the span `[m, m + 1)` with local parameter `t`.
pub fn uniform_reference_row(m: usize, r: usize) -> Vec<BigRational> {
    assert!(r <= m);
    let poly_len = m + 1;
    // Node values are the integers r..=r+m+1; the truncated power
    // f(x)(t) = (x - m - t)^m survives exactly when x >= m + 1, and is then a
    // polynomial in t with integer coefficients.
    let mut table: Vec<Vec<BigRational>> = (0..=m + 1)
        .map(|q| {
            let x = (r + q) as i64;
            if x > m as i64 {
                let a = BigInt::from(x - m as i64);
                (0..=m)
                    .map(|w| {
                        let mut c = big_binomial(m, w) * a.pow((m - w) as u32);
                        if w % 2 == 1 {
                            c = -c;
                        }
                        BigRational::from_integer(c)
                    })
                    .collect()
            } else {
                vec![BigRational::zero(); poly_len]
            }
        })
        .collect();

    // The nodes are distinct, so only the difference-quotient branch runs;
    // x_{q+len} - x_q = len.
    for len in 1..=m + 1 {
        let denom = BigRational::from_integer(BigInt::from(len));
        for q in 0..=(m + 1 - len) {
            table[q] = (0..poly_len)
                .map(|w| (table[q + 1][w].clone() - table[q][w].clone()) / denom.clone())
                .collect();
        }
    }

    // N = (t_{i+m+1} - t_i) * dd = (m + 1) * dd, then power basis to Bernstein:
    // b_k = sum_{w<=k} C(k,w)/C(m,w) a_w.
    let scale = BigRational::from_integer(BigInt::from(m + 1));
    let power: Vec<BigRational> = table[0].iter().map(|a| a * scale.clone()).collect();
    (0..=m)
        .map(|k| {
            let mut b = BigRational::zero();
            for (w, a) in power.iter().enumerate().take(k + 1) {
                b += BigRational::new(big_binomial(k, w), big_binomial(m, w)) * a;
            }
            b
        })
        .collect()
}

#[cfg(test)]
mod tests;
