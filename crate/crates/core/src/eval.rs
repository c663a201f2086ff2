//! Fast curve evaluation on top of the coefficient table: basis values via
//! the linear-time geometric evaluator, single- and multi-curve point
//! pipelines, and span-to-Bezier conversion.

use crate::bbf::BBCoeffTable;
use crate::bernstein::GeometricWeights;
use crate::errors::EvalError;
use crate::knots::KnotVector;
use crate::ops::{NoTally, OpTally};
use crate::scalar::Scalar;

/// A degree-`m` B-spline curve in `d`-dimensional space: a knot vector and
/// `n + m` control points stored as a flat coordinate array.
#[derive(Debug, Clone, PartialEq)]
pub struct BSplineCurve<T> {
    kv: KnotVector<T>,
    dim: usize,
    control: Vec<T>,
}

impl<T: Scalar> BSplineCurve<T> {
    /// `control` holds the points `W_{-m} .. W_{n-1}` as `(n + m) * dim`
    /// coordinates in index order.
    pub fn new(kv: KnotVector<T>, dim: usize, control: Vec<T>) -> Result<Self, EvalError> {
        if dim == 0 {
            return Err(EvalError::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let expected = kv.n() + kv.degree();
        if control.len() != expected * dim {
            return Err(EvalError::ControlPointCount {
                expected,
                got: control.len() / dim,
            });
        }
        if control.iter().any(|c| !c.is_finite()) {
            return Err(EvalError::NonFiniteCoordinate);
        }
        Ok(BSplineCurve { kv, dim, control })
    }

    pub fn kv(&self) -> &KnotVector<T> {
        &self.kv
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Control point `W_i` for `i` in `-m ..= n-1`.
    pub fn control_point(&self, i: isize) -> &[T] {
        let pos = (i + self.kv.degree() as isize) as usize;
        &self.control[pos * self.dim..(pos + 1) * self.dim]
    }

    pub fn control(&self) -> &[T] {
        &self.control
    }

    pub fn cast<U: Scalar>(&self) -> Result<BSplineCurve<U>, EvalError> {
        let kv = self.kv.cast::<U>()?;
        BSplineCurve::new(
            kv,
            self.dim,
            self.control
                .iter()
                .map(|&c| U::from_f64(c.to_f64()))
                .collect(),
        )
    }
}

/// Values of the `m + 1` basis functions active on one span:
/// `values[r]` is `N_{m, span-m+r}(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisValueVector<T> {
    pub span: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> BasisValueVector<T> {
    /// Index `i` of the first active function.
    pub fn first_active(&self) -> isize {
        self.span as isize - (self.values.len() as isize - 1)
    }
}

/// Rectangular array of evaluated points with a flat coordinate store;
/// entry `(r, c)` is a `dim`-dimensional point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointGrid<T> {
    rows: usize,
    cols: usize,
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> PointGrid<T> {
    pub fn zeroed(rows: usize, cols: usize, dim: usize) -> Self {
        PointGrid {
            rows,
            cols,
            dim,
            data: vec![T::zero(); rows * cols * dim],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, r: usize, c: usize) -> &[T] {
        let at = (r * self.cols + c) * self.dim;
        &self.data[at..at + self.dim]
    }

    pub fn point_mut(&mut self, r: usize, c: usize) -> &mut [T] {
        let at = (r * self.cols + c) * self.dim;
        &mut self.data[at..at + self.dim]
    }
}

/// Shared per-parameter state for repeated basis evaluations.
pub(crate) struct BasisScratch<T> {
    weights: GeometricWeights<T>,
    pub values: Vec<T>,
}

impl<T: Scalar> BasisScratch<T> {
    pub fn new() -> Self {
        BasisScratch {
            weights: GeometricWeights::new(0, T::zero()),
            values: Vec::new(),
        }
    }

    /// Locate `u`, map it to the span-local parameter and evaluate all `m+1`
    /// coefficient rows with one shared set of geometric weights. Returns the
    /// span index. At the right domain end (`t = 1`) the rows' last columns
    /// are returned directly.
    pub fn fill<C: OpTally>(
        &mut self,
        table: &BBCoeffTable<T>,
        kv: &KnotVector<T>,
        u: T,
        tally: &mut C,
    ) -> Result<usize, EvalError> {
        let m = kv.degree();
        let j = kv.find_span(u)?;
        let tj = kv.knot(j as isize);
        let tj1 = kv.knot(j as isize + 1);
        let t = (u - tj) / (tj1 - tj);
        tally.sub(2);
        tally.div(1);

        let block = table.span_block(j).expect("table covers non-empty spans");
        let width = m + 1;
        self.values.clear();
        if t >= T::one() {
            for r in 0..=m {
                self.values.push(block[r * width + m]);
            }
        } else {
            self.weights.fill(m, t, tally);
            for r in 0..=m {
                self.values
                    .push(self.weights.eval(&block[r * width..(r + 1) * width], tally));
            }
        }
        Ok(j)
    }
}

/// Values of all basis functions active at `u`, from the coefficient table:
/// O(m) per function via the geometric evaluator, O(m^2) in total.
pub fn basis_values<T: Scalar>(
    table: &BBCoeffTable<T>,
    kv: &KnotVector<T>,
    u: T,
) -> Result<BasisValueVector<T>, EvalError> {
    basis_values_counted(table, kv, u, &mut NoTally)
}

/// [`basis_values`] with operation counting.
pub fn basis_values_counted<T: Scalar, C: OpTally>(
    table: &BBCoeffTable<T>,
    kv: &KnotVector<T>,
    u: T,
    tally: &mut C,
) -> Result<BasisValueVector<T>, EvalError> {
    let mut scratch = BasisScratch::new();
    let span = scratch.fill(table, kv, u, tally)?;
    Ok(BasisValueVector {
        span,
        values: scratch.values,
    })
}

/// Plain weighted sum of the active control points into `out`.
pub(crate) fn combine_into<T: Scalar, C: OpTally>(
    curve: &BSplineCurve<T>,
    span: usize,
    basis: &[T],
    out: &mut [T],
    tally: &mut C,
) {
    let m = curve.kv().degree();
    let first = span as isize - m as isize;
    let dim = curve.dim();
    let w0 = curve.control_point(first);
    for c in 0..dim {
        out[c] = basis[0] * w0[c];
    }
    for (r, &p) in basis.iter().enumerate().skip(1) {
        let w = curve.control_point(first + r as isize);
        for c in 0..dim {
            out[c] = out[c] + p * w[c];
        }
    }
    tally.mul(((m + 1) * dim) as u64);
    tally.add((m * dim) as u64);
}

/// Point on the curve as the convex combination of the active control points
/// with the table-derived basis values; O(m^2 + m d) per point.
pub fn curve_point<T: Scalar>(
    curve: &BSplineCurve<T>,
    table: &BBCoeffTable<T>,
    u: T,
) -> Result<Vec<T>, EvalError> {
    let basis = basis_values(table, curve.kv(), u)?;
    let mut out = vec![T::zero(); curve.dim()];
    combine_into(curve, basis.span, &basis.values, &mut out, &mut NoTally);
    Ok(out)
}

fn check_shared_kv<T: Scalar>(curves: &[BSplineCurve<T>]) -> Result<(), EvalError> {
    let first = &curves[0];
    for curve in &curves[1..] {
        if curve.kv() != first.kv() {
            return Err(EvalError::MixedKnotVectors);
        }
        if curve.dim() != first.dim() {
            return Err(EvalError::DimensionMismatch {
                expected: first.dim(),
                got: curve.dim(),
            });
        }
    }
    Ok(())
}

/// Evaluate `M` curves sharing one knot vector at `N` parameters: the table
/// is built once, each parameter costs one basis-vector computation, and each
/// curve one weighted sum. Output is parameter-major: `point(l, k)` is curve
/// `k` at `params[l]`.
pub fn multi_curve_points<T: Scalar>(
    curves: &[BSplineCurve<T>],
    params: &[T],
) -> Result<PointGrid<T>, EvalError> {
    multi_curve_points_counted(curves, params, &mut NoTally, &mut NoTally)
}

/// [`multi_curve_points`] with separate tallies for the table build and the
/// evaluation stage.
pub fn multi_curve_points_counted<T: Scalar, C1: OpTally, C2: OpTally>(
    curves: &[BSplineCurve<T>],
    params: &[T],
    build_tally: &mut C1,
    eval_tally: &mut C2,
) -> Result<PointGrid<T>, EvalError> {
    assert!(!curves.is_empty(), "need at least one curve");
    check_shared_kv(curves)?;
    let kv = curves[0].kv();
    let table = crate::bbf::compute_table_counted(kv, build_tally)?;
    multi_curve_points_with_table(curves, &table, params, eval_tally)
}

/// The evaluation stage alone, for callers that already hold the table.
pub fn multi_curve_points_with_table<T: Scalar, C: OpTally>(
    curves: &[BSplineCurve<T>],
    table: &BBCoeffTable<T>,
    params: &[T],
    tally: &mut C,
) -> Result<PointGrid<T>, EvalError> {
    check_shared_kv(curves)?;
    let kv = curves[0].kv();
    let dim = curves[0].dim();
    let mut grid = PointGrid::zeroed(params.len(), curves.len(), dim);
    let mut scratch = BasisScratch::new();
    for (l, &u) in params.iter().enumerate() {
        let span = scratch.fill(table, kv, u, tally)?;
        for (k, curve) in curves.iter().enumerate() {
            combine_into(curve, span, &scratch.values, grid.point_mut(l, k), tally);
        }
    }
    Ok(grid)
}

/// Bezier control points of the curve restricted to span `j`:
/// `V_k = sum_i b^(i,j)_k W_i`. The resulting degree-`m` Bezier curve in the
/// span-local parameter reproduces the spline on `[t_j, t_{j+1})`.
pub fn span_to_bezier<T: Scalar>(
    curve: &BSplineCurve<T>,
    table: &BBCoeffTable<T>,
    j: usize,
) -> Result<Vec<Vec<T>>, EvalError> {
    let m = curve.kv().degree();
    let block = table.span_block(j).ok_or(EvalError::EmptySpan { span: j })?;
    let width = m + 1;
    let dim = curve.dim();
    let first = j as isize - m as isize;
    let mut points = vec![vec![T::zero(); dim]; m + 1];
    for r in 0..=m {
        let w = curve.control_point(first + r as isize);
        for (k, point) in points.iter_mut().enumerate() {
            let b = block[r * width + k];
            for c in 0..dim {
                point[c] = point[c] + b * w[c];
            }
        }
    }
    Ok(points)
}
