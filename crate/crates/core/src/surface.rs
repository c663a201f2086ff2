//! Tensor-product B-spline surfaces: per-axis coefficient tables, point and
//! grid evaluation, and Bezier patch extraction.

use crate::bbf::{compute_table, compute_table_counted, BBCoeffTable};
use crate::errors::EvalError;
use crate::eval::{BasisScratch, PointGrid};
use crate::knots::KnotVector;
use crate::ops::{NoTally, OpTally};
use crate::scalar::Scalar;

/// A tensor-product surface: two knot vectors and an
/// `(n1 + m1) x (n2 + m2)` net of `d`-dimensional control points, stored
/// row-major in the u-index.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorProductSurface<T> {
    kv_u: KnotVector<T>,
    kv_v: KnotVector<T>,
    dim: usize,
    net: Vec<T>,
}

impl<T: Scalar> TensorProductSurface<T> {
    pub fn new(
        kv_u: KnotVector<T>,
        kv_v: KnotVector<T>,
        dim: usize,
        net: Vec<T>,
    ) -> Result<Self, EvalError> {
        if dim == 0 {
            return Err(EvalError::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let rows = kv_u.n() + kv_u.degree();
        let cols = kv_v.n() + kv_v.degree();
        if net.len() != rows * cols * dim {
            return Err(EvalError::ControlNetShape {
                rows,
                cols,
                got_rows: net.len() / (cols * dim).max(1),
                got_cols: cols,
            });
        }
        if net.iter().any(|c| !c.is_finite()) {
            return Err(EvalError::NonFiniteCoordinate);
        }
        Ok(TensorProductSurface {
            kv_u,
            kv_v,
            dim,
            net,
        })
    }

    pub fn kv_u(&self) -> &KnotVector<T> {
        &self.kv_u
    }

    pub fn kv_v(&self) -> &KnotVector<T> {
        &self.kv_v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Control point `W_{i,l}` for `i` in `-m1 ..= n1-1`, `l` in `-m2 ..= n2-1`.
    pub fn net_point(&self, i: isize, l: isize) -> &[T] {
        let cols = self.kv_v.n() + self.kv_v.degree();
        let r = (i + self.kv_u.degree() as isize) as usize;
        let c = (l + self.kv_v.degree() as isize) as usize;
        let at = (r * cols + c) * self.dim;
        &self.net[at..at + self.dim]
    }

    /// Both per-axis coefficient tables (step 1 of the grid pipeline).
    pub fn tables(&self) -> Result<(BBCoeffTable<T>, BBCoeffTable<T>), EvalError> {
        Ok((compute_table(&self.kv_u)?, compute_table(&self.kv_v)?))
    }

    pub fn cast<U: Scalar>(&self) -> Result<TensorProductSurface<U>, EvalError> {
        TensorProductSurface::new(
            self.kv_u.cast::<U>()?,
            self.kv_v.cast::<U>()?,
            self.dim,
            self.net.iter().map(|&c| U::from_f64(c.to_f64())).collect(),
        )
    }
}

/// The combination step shared by point and grid evaluation: the double sum
/// of net points weighted by the outer product of the two basis vectors. The
/// v-index runs innermost, streaming along net rows.
fn combine_patch<T: Scalar, C: OpTally>(
    surf: &TensorProductSurface<T>,
    j1: usize,
    j2: usize,
    pu: &[T],
    pv: &[T],
    out: &mut [T],
    tally: &mut C,
) {
    let m1 = surf.kv_u.degree();
    let m2 = surf.kv_v.degree();
    let dim = surf.dim;
    let first_u = j1 as isize - m1 as isize;
    let first_v = j2 as isize - m2 as isize;
    for c in out.iter_mut() {
        *c = T::zero();
    }
    for (r, &p) in pu.iter().enumerate() {
        for (s, &q) in pv.iter().enumerate() {
            let w = surf.net_point(first_u + r as isize, first_v + s as isize);
            let weight = p * q;
            for c in 0..dim {
                out[c] = out[c] + weight * w[c];
            }
        }
    }
    let pairs = ((m1 + 1) * (m2 + 1)) as u64;
    tally.mul(pairs * (1 + dim as u64));
    tally.add(pairs * dim as u64);
}

/// Surface point from prebuilt per-axis tables:
/// O(m1^2 + m2^2 + m1 m2 d) per point.
pub fn surface_point<T: Scalar>(
    surf: &TensorProductSurface<T>,
    tables: (&BBCoeffTable<T>, &BBCoeffTable<T>),
    u: T,
    w: T,
) -> Result<Vec<T>, EvalError> {
    let mut su = BasisScratch::new();
    let mut sv = BasisScratch::new();
    let j1 = su.fill(tables.0, &surf.kv_u, u, &mut NoTally)?;
    let j2 = sv.fill(tables.1, &surf.kv_v, w, &mut NoTally)?;
    let mut out = vec![T::zero(); surf.dim];
    combine_patch(surf, j1, j2, &su.values, &sv.values, &mut out, &mut NoTally);
    Ok(out)
}

/// Evaluate the full `N1 x N2` sample grid: tables once, one basis vector per
/// axis sample, one combination per grid cell.
pub fn surface_grid<T: Scalar>(
    surf: &TensorProductSurface<T>,
    samples_u: &[T],
    samples_v: &[T],
) -> Result<PointGrid<T>, EvalError> {
    surface_grid_counted(
        surf,
        samples_u,
        samples_v,
        &mut NoTally,
        &mut NoTally,
        &mut NoTally,
    )
}

/// [`surface_grid`] with separate tallies for the three stages: table build,
/// per-sample basis vectors, and grid combination.
pub fn surface_grid_counted<T: Scalar, C1: OpTally, C2: OpTally, C3: OpTally>(
    surf: &TensorProductSurface<T>,
    samples_u: &[T],
    samples_v: &[T],
    build_tally: &mut C1,
    basis_tally: &mut C2,
    combine_tally: &mut C3,
) -> Result<PointGrid<T>, EvalError> {
    let table_u = compute_table_counted(&surf.kv_u, build_tally)?;
    let table_v = compute_table_counted(&surf.kv_v, build_tally)?;

    let mut scratch = BasisScratch::new();
    let mut spans_u = Vec::with_capacity(samples_u.len());
    let mut basis_u = Vec::with_capacity(samples_u.len());
    for &u in samples_u {
        spans_u.push(scratch.fill(&table_u, &surf.kv_u, u, basis_tally)?);
        basis_u.push(scratch.values.clone());
    }
    let mut spans_v = Vec::with_capacity(samples_v.len());
    let mut basis_v = Vec::with_capacity(samples_v.len());
    for &w in samples_v {
        spans_v.push(scratch.fill(&table_v, &surf.kv_v, w, basis_tally)?);
        basis_v.push(scratch.values.clone());
    }

    let mut grid = PointGrid::zeroed(samples_u.len(), samples_v.len(), surf.dim);
    for iu in 0..samples_u.len() {
        for iv in 0..samples_v.len() {
            combine_patch(
                surf,
                spans_u[iu],
                spans_v[iv],
                &basis_u[iu],
                &basis_v[iv],
                grid.point_mut(iu, iv),
                combine_tally,
            );
        }
    }
    Ok(grid)
}

/// Control net of the Bezier patch reproducing the surface on the non-empty
/// span pair `(j1, j2)`: `V_{k1,k2} = sum_i sum_l b^(i,j1)_{k1} d^(l,j2)_{k2}
/// W_{i,l}`, returned row-major in `k1`.
pub fn patch_to_bezier<T: Scalar>(
    surf: &TensorProductSurface<T>,
    tables: (&BBCoeffTable<T>, &BBCoeffTable<T>),
    j1: usize,
    j2: usize,
) -> Result<Vec<Vec<T>>, EvalError> {
    let m1 = surf.kv_u.degree();
    let m2 = surf.kv_v.degree();
    let block_u = tables
        .0
        .span_block(j1)
        .ok_or(EvalError::EmptySpan { span: j1 })?;
    let block_v = tables
        .1
        .span_block(j2)
        .ok_or(EvalError::EmptySpan { span: j2 })?;
    let dim = surf.dim;
    let first_u = j1 as isize - m1 as isize;
    let first_v = j2 as isize - m2 as isize;
    let mut points = vec![vec![T::zero(); dim]; (m1 + 1) * (m2 + 1)];
    for r in 0..=m1 {
        for s in 0..=m2 {
            let w = surf.net_point(first_u + r as isize, first_v + s as isize);
            for k1 in 0..=m1 {
                let bu = block_u[r * (m1 + 1) + k1];
                for k2 in 0..=m2 {
                    let weight = bu * block_v[s * (m2 + 1) + k2];
                    let point = &mut points[k1 * (m2 + 1) + k2];
                    for c in 0..dim {
                        point[c] = point[c] + weight * w[c];
                    }
                }
            }
        }
    }
    Ok(points)
}
