//! The coefficient engine: Bernstein-Bezier coefficients of every B-spline
//! basis function over every non-empty knot span, computed in time
//! proportional to the number of coefficients.
//!
//! Over a non-empty span `[t_j, t_{j+1})` the degree-`m` basis function
//! `N_{m,i}` restricts to a degree-`m` polynomial; its coefficients in the
//! Bernstein basis of the span-local parameter `t = (u - t_j)/(t_{j+1} - t_j)`
//! form the row `b^(i,j)_k`, `k = 0..=m`. Rows for `i = j` and `i = j - m`
//! have one non-zero entry with a closed form. The remaining rows follow from
//! a two-term recurrence that consumes the row above and one continuity seed
//! copied from the span on the other side of `t_{j+1}`, so the whole table
//! costs O(n_e m^2).
//!
//! Repeated inner knots only change where the seed is copied from (the span
//! right of `t_{j+1}`'s right neighbor). An unclamped end is handled by
//! inflating the last knot to multiplicity `m + 1`, computing on the inflated
//! problem and restricting the result to the original spans.

pub mod uniform;

use crate::errors::KnotVectorError;
use crate::knots::KnotVector;
use crate::ops::{NoTally, OpTally};
use crate::scalar::Scalar;

/// Sparse table of the coefficients `b^(i,j)_k`: one dense
/// `(m+1) x (m+1)` block per non-empty span `j`, rows indexed by
/// `i = j-m ..= j`, columns by `k = 0 ..= m`. Entries for empty spans or
/// out-of-range `i` are implicitly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BBCoeffTable<T> {
    m: usize,
    n: usize,
    /// Rank of each span within `spans`, `None` for empty spans.
    span_rank: Vec<Option<usize>>,
    /// Ascending list of non-empty spans.
    spans: Vec<usize>,
    /// Contiguous rank-major blocks, row-major within a block.
    blocks: Vec<T>,
}

impl<T: Scalar> BBCoeffTable<T> {
    fn zeroed(m: usize, n: usize, spans: Vec<usize>) -> Self {
        let mut span_rank = vec![None; n];
        for (rank, &j) in spans.iter().enumerate() {
            span_rank[j] = Some(rank);
        }
        let block = (m + 1) * (m + 1);
        BBCoeffTable {
            m,
            n,
            span_rank,
            blocks: vec![T::zero(); block * spans.len()],
            spans,
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The non-empty spans the table stores blocks for.
    pub fn spans(&self) -> &[usize] {
        &self.spans
    }

    fn block_len(&self) -> usize {
        (self.m + 1) * (self.m + 1)
    }

    pub fn span_block(&self, j: usize) -> Option<&[T]> {
        let rank = (*self.span_rank.get(j)?)?;
        let len = self.block_len();
        Some(&self.blocks[rank * len..(rank + 1) * len])
    }

    fn span_block_mut(&mut self, j: usize) -> &mut [T] {
        let rank = self.span_rank[j].expect("span must be non-empty");
        let len = self.block_len();
        &mut self.blocks[rank * len..(rank + 1) * len]
    }

    /// Coefficient row of `N_{m,i}` over span `j`, or `None` when the span is
    /// empty or `i` is not active there.
    pub fn row(&self, j: usize, i: isize) -> Option<&[T]> {
        let block = self.span_block(j)?;
        let r = i - (j as isize - self.m as isize);
        if (0..=self.m as isize).contains(&r) {
            let r = r as usize;
            Some(&block[r * (self.m + 1)..(r + 1) * (self.m + 1)])
        } else {
            None
        }
    }

    /// Single coefficient `b^(i,j)_k`; zero outside the stored blocks.
    pub fn coeff(&self, j: usize, i: isize, k: usize) -> T {
        self.row(j, i).map_or(T::zero(), |row| row[k])
    }

    /// CSV export with header `j,i,k,b`, one line per stored entry in
    /// span-major, row-major, column-ascending order; values carry 17
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,i,k,b\n");
        for &j in &self.spans {
            for r in 0..=self.m {
                let i = j as isize - self.m as isize + r as isize;
                for k in 0..=self.m {
                    let b = self.coeff(j, i, k);
                    out.push_str(&format!("{},{},{},{:.16e}\n", j, i, k, b.to_f64()));
                }
            }
        }
        out
    }
}

fn pow_repeated<T: Scalar>(x: T, e: usize) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x;
    }
    acc
}

/// Ratio of the support lengths of `N_{m,i}` and `N_{m,i+1}`,
/// `(t_{m+i+1} - t_i) / (t_{m+i+2} - t_{i+1})`; the factor linking
/// consecutive same-degree functions in the interior recurrence. The
/// denominator is non-zero on validated vectors.
fn support_length_ratio<T: Scalar>(kv: &KnotVector<T>, i: isize) -> T {
    let m = kv.degree() as isize;
    (kv.knot(m + i + 1) - kv.knot(i)) / (kv.knot(m + i + 2) - kv.knot(i + 1))
}

/// The two closed-form rows of a span: `N_{m,j}` has only `b_m` non-zero and
/// `N_{m,j-m}` only `b_0`; both share the numerator `(t_{j+1} - t_j)^(m-1)`.
fn stage1_into<T: Scalar, C: OpTally>(
    kv: &KnotVector<T>,
    j: usize,
    top_bm: &mut T,
    bottom_b0: &mut T,
    tally: &mut C,
) {
    let m = kv.degree();
    let j = j as isize;
    let tj = kv.knot(j);
    let tj1 = kv.knot(j + 1);
    let numer = pow_repeated(tj1 - tj, m - 1);
    tally.sub(1);
    tally.pow(1);

    let mut denom_top = T::one();
    let mut denom_bottom = T::one();
    for k in 2..=m as isize {
        denom_top = denom_top * (kv.knot(j + k) - tj);
        denom_bottom = denom_bottom * (tj1 - kv.knot(j + 1 - k));
    }
    let factors = m.saturating_sub(1) as u64;
    tally.sub(2 * factors);
    tally.mul(2 * factors);

    *top_bm = numer / denom_top;
    *bottom_b0 = numer / denom_bottom;
    tally.div(2);
}

/// One backward-recurrence row over the last span of an end-clamped vector:
/// `b_m = 0` and `b_k = a b_{k+1} + c next_{k+1}` for `k = m-1..=0`, where
/// `next` is the already-computed row of `N_{m,i+1}`.
fn last_span_row_into<T: Scalar, C: OpTally>(
    kv: &KnotVector<T>,
    i: isize,
    next_row: &[T],
    out: &mut [T],
    tally: &mut C,
) {
    let m = kv.degree();
    let n = kv.n() as isize;
    let ti = kv.knot(i);
    let a = (kv.knot(n - 1) - ti) / (kv.knot(n) - ti);
    let c = (kv.knot(n) - kv.knot(n - 1)) / (kv.knot(n) - kv.knot(i + 1));
    tally.sub(4);
    tally.div(2);

    out[m] = T::zero();
    for k in (0..m).rev() {
        out[k] = a * out[k + 1] + c * next_row[k + 1];
        tally.mul(2);
        tally.add(1);
    }
}

/// One interior row over span `j`: `b_m` is the continuity seed and the rest
/// follow from the two-term recurrence consuming the row of `N_{m,i+1}`.
fn interior_row_into<T: Scalar, C: OpTally>(
    kv: &KnotVector<T>,
    j: usize,
    i: isize,
    next_row: &[T],
    seed: T,
    out: &mut [T],
    tally: &mut C,
) {
    let m = kv.degree();
    let mi = m as isize;
    let j = j as isize;
    let ti = kv.knot(i);
    let tj = kv.knot(j);
    let tj1 = kv.knot(j + 1);
    let tm2 = kv.knot(mi + i + 2);

    let v = support_length_ratio(kv, i);
    let den = tj1 - ti;
    let alpha = (tj - ti) / den;
    let w = v / den;
    let c2 = w * (tj1 - tm2);
    let c3 = w * (tm2 - tj);
    tally.sub(6);
    tally.div(3);
    tally.mul(2);

    out[m] = seed;
    for k in (0..m).rev() {
        out[k] = alpha * out[k + 1] + c2 * next_row[k] + c3 * next_row[k + 1];
        tally.mul(3);
        tally.add(2);
    }
}

fn build_clamped<T: Scalar, C: OpTally>(kv: &KnotVector<T>, tally: &mut C) -> BBCoeffTable<T> {
    let m = kv.degree();
    let n = kv.n();
    let spans = kv.nonempty_spans();
    debug_assert!(kv.is_clamped().1);
    debug_assert_eq!(*spans.last().unwrap(), n - 1);
    let mut table = BBCoeffTable::zeroed(m, n, spans);
    let width = m + 1;

    for rank in 0..table.spans.len() {
        let j = table.spans[rank];
        let block = table.span_block_mut(j);
        let (head, tail) = block.split_at_mut(m * width);
        let mut top_bm = T::zero();
        let mut bottom_b0 = T::zero();
        stage1_into(kv, j, &mut top_bm, &mut bottom_b0, tally);
        tail[m] = top_bm;
        head[0] = bottom_b0;
    }

    // Last span: rows i = n-2 down to n-m vanish at t_n, which pins b_m = 0
    // and makes the recurrence backward-solvable.
    {
        let j = n - 1;
        let block = table.span_block_mut(j);
        for i in ((n as isize - m as isize)..=(n as isize - 2)).rev() {
            let r = (i - (j as isize - m as isize)) as usize;
            let (lo, hi) = block.split_at_mut((r + 1) * width);
            let row = &mut lo[r * width..];
            let next_row = &hi[..width];
            last_span_row_into(kv, i, next_row, row, tally);
        }
    }

    // Remaining non-empty spans right to left. The seed for row i is column 0
    // of the same function over the span just right of the value t_{j+1},
    // copied verbatim.
    for rank in (0..table.spans.len() - 1).rev() {
        let j = table.spans[rank];
        let seed_span = (kv.right_neighbor(j as isize + 1) - 1) as usize;
        for i in ((j as isize - m as isize + 1)..=(j as isize - 1)).rev() {
            let seed = table.coeff(seed_span, i, 0);
            let block = table.span_block_mut(j);
            let r = (i - (j as isize - m as isize)) as usize;
            let (lo, hi) = block.split_at_mut((r + 1) * width);
            let row = &mut lo[r * width..];
            let next_row = &hi[..width];
            interior_row_into(kv, j, i, next_row, seed, row, tally);
        }
    }

    table
}

fn restrict<T: Scalar>(table: BBCoeffTable<T>, n_orig: usize) -> BBCoeffTable<T> {
    let spans: Vec<usize> = table.spans.iter().copied().filter(|&j| j < n_orig).collect();
    let mut out = BBCoeffTable::zeroed(table.m, n_orig, spans);
    let len = out.block_len();
    for (rank, &j) in out.spans.iter().enumerate() {
        let src = table.span_block(j).unwrap();
        out.blocks[rank * len..(rank + 1) * len].copy_from_slice(src);
    }
    out
}

/// Compute the full coefficient table for all non-empty spans. A vector whose
/// end is not clamped is inflated first and the result restricted to the
/// original spans `0..n-1`.
pub fn compute_table<T: Scalar>(kv: &KnotVector<T>) -> Result<BBCoeffTable<T>, KnotVectorError> {
    compute_table_counted(kv, &mut NoTally)
}

/// [`compute_table`] with operation counting.
pub fn compute_table_counted<T: Scalar, C: OpTally>(
    kv: &KnotVector<T>,
    tally: &mut C,
) -> Result<BBCoeffTable<T>, KnotVectorError> {
    kv.validate()?;
    if kv.is_clamped().1 {
        Ok(build_clamped(kv, tally))
    } else {
        let (inflated, n_orig) = kv.inflate_end();
        Ok(restrict(build_clamped(&inflated, tally), n_orig))
    }
}

/// Closed-form rows of `N_{m,j}` and `N_{m,j-m}` over the non-empty span `j`.
pub fn stage1_endpoint_rows<T: Scalar>(kv: &KnotVector<T>, j: usize) -> (Vec<T>, Vec<T>) {
    let m = kv.degree();
    assert!(kv.knot(j as isize) < kv.knot(j as isize + 1), "span {j} is empty");
    let mut top = vec![T::zero(); m + 1];
    let mut bottom = vec![T::zero(); m + 1];
    stage1_into(kv, j, &mut top[m], &mut bottom[0], &mut NoTally);
    (top, bottom)
}

/// Rows of `N_{m,i}` over the last span for `i = n-2` down to `n-m`, in that
/// order. Requires an end-clamped vector.
pub fn last_span_interior_rows<T: Scalar>(kv: &KnotVector<T>) -> Vec<Vec<T>> {
    let m = kv.degree();
    let n = kv.n() as isize;
    assert!(kv.is_clamped().1, "end boundary knots must be coincident");
    let (top, _) = stage1_endpoint_rows(kv, kv.n() - 1);
    let mut rows = Vec::new();
    let mut next = top;
    for i in ((n - m as isize)..=(n - 2)).rev() {
        let mut row = vec![T::zero(); m + 1];
        last_span_row_into(kv, i, &next, &mut row, &mut NoTally);
        rows.push(row.clone());
        next = row;
    }
    rows
}

/// One interior row over span `j` from the row of `N_{m,i+1}` and the
/// continuity seed `b^(i, r-1)_0`.
pub fn interior_row<T: Scalar>(
    kv: &KnotVector<T>,
    j: usize,
    i: isize,
    next_row: &[T],
    continuity_seed: T,
) -> Vec<T> {
    let m = kv.degree();
    let mut row = vec![T::zero(); m + 1];
    interior_row_into(kv, j, i, next_row, continuity_seed, &mut row, &mut NoTally);
    row
}

/// Absolute residual of the same-degree differential recurrence at `u`, with
/// every term computed by the reference oracles. For `i = -m` and `i = n-1`
/// the two-term endpoint identities apply; otherwise the three-term relation
/// linking `N_{m,i}` and `N_{m,i+1}`. Only meaningful for clamped vectors
/// with simple inner knots, `u` away from the knots.
pub fn diff_recurrence_residual(kv: &KnotVector<f64>, i: isize, u: f64) -> f64 {
    use crate::oracle::{bspline_derivative, bspline_via_recurrence};
    let m = kv.degree() as isize;
    let n = kv.n() as isize;
    let mf = m as f64;
    if i == -m {
        let lhs = mf * bspline_via_recurrence(kv, i, u)
            + (kv.knot(1) - u) * bspline_derivative(kv, i, u);
        lhs.abs()
    } else if i == n - 1 {
        let lhs = mf * bspline_via_recurrence(kv, i, u)
            + (kv.knot(n - 1) - u) * bspline_derivative(kv, i, u);
        lhs.abs()
    } else {
        let v = support_length_ratio(kv, i);
        let lhs = bspline_via_recurrence(kv, i, u)
            + (kv.knot(i) - u) / mf * bspline_derivative(kv, i, u);
        let rhs = v
            * (bspline_via_recurrence(kv, i + 1, u)
                + (kv.knot(m + i + 2) - u) / mf * bspline_derivative(kv, i + 1, u));
        (lhs - rhs).abs()
    }
}
