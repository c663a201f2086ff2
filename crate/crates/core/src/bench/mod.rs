//! Seeded benchmark experiments: random curve/surface datasets drawn the way
//! the timing experiments specify (clamped boundary knots, span lengths in
//! [1/50, 1], control coordinates in [-1, 1]^d, 50 samples per span plus the
//! domain end), the three competing curve pipelines, and the accuracy and
//! operation-count reports.

pub mod report;

use crate::bbf::compute_table_counted;
use crate::bench::report::{MethodReport, RunReport};
use crate::errors::{EvalError, KnotVectorError};
use crate::eval::{combine_into, BSplineCurve, BasisScratch, PointGrid};
use crate::knots::KnotVector;
use crate::ops::{NoTally, OpCounter, OpTally};
use crate::oracle::{active_basis_into, de_boor_cox_into, tensor_de_boor_cox_into};
use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::surface::{surface_grid, surface_grid_counted, TensorProductSurface};
use std::hint::black_box;
use std::time::{Duration, Instant};
use thiserror::Error;

pub const METHOD_DE_BOOR_COX: &str = "de-boor-cox";
pub const METHOD_EVAL_SPLINES: &str = "eval-splines";
pub const METHOD_NEW: &str = "new-method";

/// Decimal digits carried by each precision, used to cap the common-digit
/// statistic.
pub const DIGITS_CAP_F64: f64 = 16.0;
pub const DIGITS_CAP_F32: f64 = 8.0;

/// Verification floor: a benchmark run whose methods agree to fewer mean
/// common digits than this fails before reporting any timing.
pub const VERIFY_MIN_DIGITS_F64: f64 = 12.0;
pub const VERIFY_MIN_DIGITS_F32: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMode {
    Curve,
    Surface,
    Basis,
}

impl BenchMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenchMode::Curve => "curve",
            BenchMode::Surface => "surface",
            BenchMode::Basis => "basis",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "curve" => Some(BenchMode::Curve),
            "surface" => Some(BenchMode::Surface),
            "basis" => Some(BenchMode::Basis),
            _ => None,
        }
    }
}

/// One benchmark cell: the dataset shape and how to run it.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub mode: BenchMode,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// Number of curves sharing the knots (M). Ignored in surface mode.
    pub curves: usize,
    /// Evaluation parameters per knot span; the domain end is always added.
    pub samples_per_span: usize,
    pub dim: usize,
    /// Datasets generated and accumulated per cell.
    pub repeats: usize,
    /// Run every pipeline in single precision.
    pub f32_mode: bool,
    /// Collect operation counts alongside the timings.
    pub count_ops: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: BenchMode::Curve,
            seed: 1,
            n: 20,
            m: 3,
            curves: 1,
            samples_per_span: 50,
            dim: 2,
            repeats: 1,
            f32_mode: false,
            count_ops: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |what: &str| Err(BenchError::Config(format!("{what} must be positive")));
        if self.n == 0 {
            return bad("n");
        }
        if self.m == 0 {
            return bad("m");
        }
        if self.curves == 0 {
            return bad("curves");
        }
        if self.samples_per_span == 0 {
            return bad("samples per span");
        }
        if self.dim == 0 {
            return bad("dim");
        }
        if self.repeats == 0 {
            return bad("repeats");
        }
        Ok(())
    }
}

#[derive(Error, Debug)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error("invalid knot vector: {0}")]
    Knots(#[from] KnotVectorError),
}

/// Clamped random knots: `t_0 = 0`, span lengths uniform in `[1/50, 1]`,
/// boundary knots coincident (copied, not recomputed).
pub fn generate_knots(rng: &mut Rng, m: usize, n: usize) -> KnotVector<f64> {
    let mut knots = Vec::with_capacity(n + 2 * m + 1);
    knots.extend(std::iter::repeat_n(0.0, m + 1));
    let mut t = 0.0;
    for _ in 0..n {
        t += rng.uniform(1.0 / 50.0, 1.0);
        knots.push(t);
    }
    knots.extend(std::iter::repeat_n(t, m));
    KnotVector::new(m, n, knots).expect("generated knots are valid")
}

/// Control coordinates uniform in `[-1, 1]`.
pub fn generate_control(rng: &mut Rng, points: usize, dim: usize) -> Vec<f64> {
    (0..points * dim).map(|_| rng.uniform(-1.0, 1.0)).collect()
}

/// `M` random curves sharing one knot vector.
pub fn generate_curves(
    rng: &mut Rng,
    kv: &KnotVector<f64>,
    count: usize,
    dim: usize,
) -> Vec<BSplineCurve<f64>> {
    (0..count)
        .map(|_| {
            let control = generate_control(rng, kv.n() + kv.degree(), dim);
            BSplineCurve::new(kv.clone(), dim, control).expect("generated control points are valid")
        })
        .collect()
}

/// A random tensor-product surface with square parameters
/// (`n1 = n2`, `m1 = m2`).
pub fn generate_surface(
    rng: &mut Rng,
    m: usize,
    n: usize,
    dim: usize,
) -> TensorProductSurface<f64> {
    let kv_u = generate_knots(rng, m, n);
    let kv_v = generate_knots(rng, m, n);
    let net = generate_control(rng, (n + m) * (n + m), dim);
    TensorProductSurface::new(kv_u, kv_v, dim, net).expect("generated net is valid")
}

/// The sample grid of the timing experiments: `per_span` equispaced points in
/// every non-empty span plus the domain end, `t_n`.
pub fn sample_params(kv: &KnotVector<f64>, per_span: usize) -> Vec<f64> {
    let mut params = Vec::new();
    for j in kv.nonempty_spans() {
        let tj = kv.knot(j as isize);
        let len = kv.knot(j as isize + 1) - tj;
        for l in 0..per_span {
            params.push(tj + l as f64 / per_span as f64 * len);
        }
    }
    params.push(kv.knot(kv.n() as isize));
    params
}

/// Common decimal digits of two scalars: `-log10` of the relative difference,
/// clamped to `[0, cap]`; equal values count as `cap`.
pub fn common_digits(a: f64, b: f64, cap: f64) -> f64 {
    if a == b {
        return cap;
    }
    let scale = a.abs().max(b.abs()).max(1e-300);
    let rel = (a - b).abs() / scale;
    (-rel.log10()).clamp(0.0, cap)
}

/// Running mean/min of a common-digit statistic.
#[derive(Debug, Clone, Copy)]
pub struct DigitStat {
    sum: f64,
    count: u64,
    min: f64,
}

impl Default for DigitStat {
    fn default() -> Self {
        DigitStat {
            sum: 0.0,
            count: 0,
            min: f64::INFINITY,
        }
    }
}

impl DigitStat {
    pub fn record(&mut self, digits: f64) {
        self.sum += digits;
        self.count += 1;
        self.min = self.min.min(digits);
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            f64::NAN
        } else {
            self.sum / self.count as f64
        }
    }

    pub fn min(&self) -> f64 {
        self.min
    }
}

fn grid_digits<T: Scalar>(a: &PointGrid<T>, b: &PointGrid<T>, cap: f64, stat: &mut DigitStat) {
    assert_eq!((a.rows(), a.cols(), a.dim()), (b.rows(), b.cols(), b.dim()));
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let pa = a.point(r, c);
            let pb = b.point(r, c);
            for x in 0..a.dim() {
                stat.record(common_digits(pa[x].to_f64(), pb[x].to_f64(), cap));
            }
        }
    }
}

/// Seconds per execution of `f`: one excluded warm-up pass, then three rounds
/// that each repeat `f` until the floor is reached; the best round wins.
pub fn time_best_of_3<F: FnMut()>(floor: Duration, mut f: F) -> f64 {
    f();
    let mut best = f64::INFINITY;
    for _ in 0..3 {
        let mut iters: u32 = 0;
        let start = Instant::now();
        loop {
            f();
            iters += 1;
            if start.elapsed() >= floor {
                break;
            }
        }
        best = best.min(start.elapsed().as_secs_f64() / iters as f64);
    }
    best
}

/// Default accumulation floor per timing round.
pub const TIMING_FLOOR: Duration = Duration::from_millis(200);

// ---------------------------------------------------------------------------
// The three curve pipelines, writing into a reusable grid.

pub(crate) fn dbc_grid_into<T: Scalar, C: OpTally>(
    curves: &[BSplineCurve<T>],
    params: &[T],
    grid: &mut PointGrid<T>,
    work: &mut Vec<T>,
    tally: &mut C,
) -> Result<(), EvalError> {
    for (l, &u) in params.iter().enumerate() {
        for (k, curve) in curves.iter().enumerate() {
            de_boor_cox_into(curve, u, grid.point_mut(l, k), work, tally)?;
        }
    }
    Ok(())
}

pub(crate) fn evalsplines_grid_into<T: Scalar, C: OpTally>(
    curves: &[BSplineCurve<T>],
    params: &[T],
    grid: &mut PointGrid<T>,
    vals: &mut Vec<T>,
    tally: &mut C,
) -> Result<(), EvalError> {
    let kv = curves[0].kv();
    vals.resize(kv.degree() + 1, T::zero());
    for (l, &u) in params.iter().enumerate() {
        let j = kv.find_span(u)?;
        active_basis_into(kv, j, u, vals, tally);
        for (k, curve) in curves.iter().enumerate() {
            combine_into(curve, j, vals, grid.point_mut(l, k), tally);
        }
    }
    Ok(())
}

pub(crate) fn new_method_grid_into<T: Scalar, C1: OpTally, C2: OpTally>(
    curves: &[BSplineCurve<T>],
    params: &[T],
    grid: &mut PointGrid<T>,
    scratch: &mut BasisScratch<T>,
    build_tally: &mut C1,
    eval_tally: &mut C2,
) -> Result<(), EvalError> {
    let kv = curves[0].kv();
    let table = compute_table_counted(kv, build_tally)?;
    for (l, &u) in params.iter().enumerate() {
        let span = scratch.fill(&table, kv, u, eval_tally)?;
        for (k, curve) in curves.iter().enumerate() {
            combine_into(curve, span, &scratch.values, grid.point_mut(l, k), eval_tally);
        }
    }
    Ok(())
}

struct MethodAcc {
    name: &'static str,
    seconds: f64,
    ops: OpCounter,
    counted: bool,
    digits: Option<DigitStat>,
}

impl MethodAcc {
    fn new(name: &'static str) -> Self {
        MethodAcc {
            name,
            seconds: 0.0,
            ops: OpCounter::new(),
            counted: false,
            digits: None,
        }
    }

    fn into_report(self) -> MethodReport {
        MethodReport {
            method: self.name.to_string(),
            seconds: self.seconds,
            ops: if self.counted { Some(self.ops) } else { None },
            mean_common_digits: self.digits.map(|d| d.mean()),
        }
    }
}

fn digits_cap(f32_mode: bool) -> f64 {
    if f32_mode {
        DIGITS_CAP_F32
    } else {
        DIGITS_CAP_F64
    }
}

fn verify_floor(f32_mode: bool) -> f64 {
    if f32_mode {
        VERIFY_MIN_DIGITS_F32
    } else {
        VERIFY_MIN_DIGITS_F64
    }
}

fn curve_cell<T: Scalar>(
    curves: &[BSplineCurve<T>],
    params: &[T],
    cfg: &ExperimentConfig,
    acc: &mut [MethodAcc; 3],
) -> Result<(), BenchError> {
    let dim = curves[0].dim();
    let mut grid = PointGrid::<T>::zeroed(params.len(), curves.len(), dim);
    let mut work: Vec<T> = Vec::new();
    let mut scratch = BasisScratch::new();

    // Reference output and accuracy cross-check before any timing.
    let mut reference = PointGrid::<T>::zeroed(params.len(), curves.len(), dim);
    dbc_grid_into(curves, params, &mut reference, &mut work, &mut NoTally)?;

    let cap = digits_cap(cfg.f32_mode);
    evalsplines_grid_into(curves, params, &mut grid, &mut work, &mut NoTally)?;
    let evalsplines_digits = acc[1].digits.get_or_insert_with(DigitStat::default);
    grid_digits(&grid, &reference, cap, evalsplines_digits);

    new_method_grid_into(
        curves,
        params,
        &mut grid,
        &mut scratch,
        &mut NoTally,
        &mut NoTally,
    )?;
    let new_digits = acc[2].digits.get_or_insert_with(DigitStat::default);
    grid_digits(&grid, &reference, cap, new_digits);

    let floor = verify_floor(cfg.f32_mode);
    for a in &acc[1..] {
        if let Some(d) = &a.digits {
            if d.mean() < floor {
                return Err(BenchError::Verification(format!(
                    "{} agrees with {} to only {:.2} mean common digits (need {:.1})",
                    a.name,
                    METHOD_DE_BOOR_COX,
                    d.mean(),
                    floor
                )));
            }
        }
    }

    if cfg.count_ops {
        let mut c0 = OpCounter::new();
        dbc_grid_into(curves, params, &mut grid, &mut work, &mut c0)?;
        acc[0].ops.merge(&c0);
        acc[0].counted = true;

        let mut c1 = OpCounter::new();
        evalsplines_grid_into(curves, params, &mut grid, &mut work, &mut c1)?;
        acc[1].ops.merge(&c1);
        acc[1].counted = true;

        let mut build = OpCounter::new();
        let mut eval = OpCounter::new();
        new_method_grid_into(curves, params, &mut grid, &mut scratch, &mut build, &mut eval)?;
        acc[2].ops.merge(&build);
        acc[2].ops.merge(&eval);
        acc[2].counted = true;
    }

    acc[0].seconds += time_best_of_3(TIMING_FLOOR, || {
        dbc_grid_into(curves, params, &mut grid, &mut work, &mut NoTally).unwrap();
        black_box(&grid);
    });
    acc[1].seconds += time_best_of_3(TIMING_FLOOR, || {
        evalsplines_grid_into(curves, params, &mut grid, &mut work, &mut NoTally).unwrap();
        black_box(&grid);
    });
    acc[2].seconds += time_best_of_3(TIMING_FLOOR, || {
        new_method_grid_into(
            curves,
            params,
            &mut grid,
            &mut scratch,
            &mut NoTally,
            &mut NoTally,
        )
        .unwrap();
        black_box(&grid);
    });
    Ok(())
}

/// Run the three curve pipelines (de Boor-Cox; recurrence basis plus
/// combination; coefficient table plus geometric evaluation) on seeded random
/// datasets and report times, optional operation counts, and the
/// common-digit accuracy of each method against de Boor-Cox.
pub fn run_curve_benchmark(cfg: &ExperimentConfig) -> Result<RunReport, BenchError> {
    cfg.validate()?;
    let mut rng = Rng::new(cfg.seed);
    let mut acc = [
        MethodAcc::new(METHOD_DE_BOOR_COX),
        MethodAcc::new(METHOD_EVAL_SPLINES),
        MethodAcc::new(METHOD_NEW),
    ];
    let mut points = 0;
    for _ in 0..cfg.repeats {
        let kv = generate_knots(&mut rng, cfg.m, cfg.n);
        let curves = generate_curves(&mut rng, &kv, cfg.curves, cfg.dim);
        let params = sample_params(&kv, cfg.samples_per_span);
        points = params.len();
        if cfg.f32_mode {
            let curves32: Vec<BSplineCurve<f32>> = curves
                .iter()
                .map(|c| c.cast().expect("span lengths survive f32 rounding"))
                .collect();
            let params32: Vec<f32> = params.iter().map(|&u| u as f32).collect();
            curve_cell(&curves32, &params32, cfg, &mut acc)?;
        } else {
            curve_cell(&curves, &params, cfg, &mut acc)?;
        }
    }
    Ok(RunReport {
        mode: BenchMode::Curve,
        seed: cfg.seed,
        n: cfg.n,
        m: cfg.m,
        curves: cfg.curves,
        points,
        dim: cfg.dim,
        methods: acc.into_iter().map(MethodAcc::into_report).collect(),
    })
}

fn surface_cell<T: Scalar>(
    surf: &TensorProductSurface<T>,
    samples_u: &[T],
    samples_v: &[T],
    cfg: &ExperimentConfig,
    rng: &mut Rng,
    acc: &mut [MethodAcc; 2],
) -> Result<(), BenchError> {
    let dim = surf.dim();
    let mut work_u: Vec<T> = Vec::new();
    let mut work_v: Vec<T> = Vec::new();

    // Accuracy spot-check on 1000 random grid cells before timing.
    let fast = surface_grid(surf, samples_u, samples_v)?;
    let cap = digits_cap(cfg.f32_mode);
    let stat = acc[1].digits.get_or_insert_with(DigitStat::default);
    let mut out = vec![T::zero(); dim];
    for _ in 0..1000 {
        let iu = rng.below(samples_u.len());
        let iv = rng.below(samples_v.len());
        tensor_de_boor_cox_into(
            surf,
            samples_u[iu],
            samples_v[iv],
            &mut out,
            &mut work_u,
            &mut work_v,
            &mut NoTally,
        )?;
        let p = fast.point(iu, iv);
        for c in 0..dim {
            stat.record(common_digits(p[c].to_f64(), out[c].to_f64(), cap));
        }
    }
    let floor = verify_floor(cfg.f32_mode);
    let mean = acc[1].digits.as_ref().unwrap().mean();
    if mean < floor {
        return Err(BenchError::Verification(format!(
            "surface pipeline agrees with tensor de Boor-Cox to only {mean:.2} mean common digits (need {floor:.1})"
        )));
    }

    if cfg.count_ops {
        let mut c0 = OpCounter::new();
        let mut grid = PointGrid::<T>::zeroed(samples_u.len(), samples_v.len(), dim);
        for (iu, &u) in samples_u.iter().enumerate() {
            for (iv, &w) in samples_v.iter().enumerate() {
                tensor_de_boor_cox_into(
                    surf,
                    u,
                    w,
                    grid.point_mut(iu, iv),
                    &mut work_u,
                    &mut work_v,
                    &mut c0,
                )?;
            }
        }
        acc[0].ops.merge(&c0);
        acc[0].counted = true;

        let mut build = OpCounter::new();
        let mut basis = OpCounter::new();
        let mut combine = OpCounter::new();
        surface_grid_counted(surf, samples_u, samples_v, &mut build, &mut basis, &mut combine)?;
        acc[1].ops.merge(&build);
        acc[1].ops.merge(&basis);
        acc[1].ops.merge(&combine);
        acc[1].counted = true;
    }

    acc[0].seconds += time_best_of_3(TIMING_FLOOR, || {
        let mut grid = PointGrid::<T>::zeroed(samples_u.len(), samples_v.len(), dim);
        for (iu, &u) in samples_u.iter().enumerate() {
            for (iv, &w) in samples_v.iter().enumerate() {
                tensor_de_boor_cox_into(
                    surf,
                    u,
                    w,
                    grid.point_mut(iu, iv),
                    &mut work_u,
                    &mut work_v,
                    &mut NoTally,
                )
                .unwrap();
            }
        }
        black_box(&grid);
    });
    acc[1].seconds += time_best_of_3(TIMING_FLOOR, || {
        let grid = surface_grid(surf, samples_u, samples_v).unwrap();
        black_box(&grid);
    });
    Ok(())
}

/// Tensor de Boor-Cox against the table-based pipeline over the sampled
/// surface grid.
pub fn run_surface_benchmark(cfg: &ExperimentConfig) -> Result<RunReport, BenchError> {
    cfg.validate()?;
    let mut rng = Rng::new(cfg.seed);
    let mut acc = [
        MethodAcc::new(METHOD_DE_BOOR_COX),
        MethodAcc::new(METHOD_NEW),
    ];
    let mut points = 0;
    for _ in 0..cfg.repeats {
        let surf = generate_surface(&mut rng, cfg.m, cfg.n, cfg.dim);
        let samples_u = sample_params(surf.kv_u(), cfg.samples_per_span);
        let samples_v = sample_params(surf.kv_v(), cfg.samples_per_span);
        points = samples_u.len() * samples_v.len();
        if cfg.f32_mode {
            let surf32 = surf.cast::<f32>().expect("span lengths survive f32 rounding");
            let su: Vec<f32> = samples_u.iter().map(|&u| u as f32).collect();
            let sv: Vec<f32> = samples_v.iter().map(|&u| u as f32).collect();
            surface_cell(&surf32, &su, &sv, cfg, &mut rng, &mut acc)?;
        } else {
            surface_cell(&surf, &samples_u, &samples_v, cfg, &mut rng, &mut acc)?;
        }
    }
    Ok(RunReport {
        mode: BenchMode::Surface,
        seed: cfg.seed,
        n: cfg.n,
        m: cfg.m,
        curves: cfg.curves,
        points,
        dim: cfg.dim,
        methods: acc.into_iter().map(MethodAcc::into_report).collect(),
    })
}

fn basis_cell<T: Scalar>(
    kv: &KnotVector<T>,
    params: &[T],
    cfg: &ExperimentConfig,
    acc: &mut [MethodAcc; 2],
) -> Result<(), BenchError> {
    let m = kv.degree();
    let mut vals = vec![T::zero(); m + 1];
    let mut scratch = BasisScratch::new();
    let table = crate::bbf::compute_table(kv)?;

    // Cross-check both basis pipelines and the partition of unity.
    let cap = digits_cap(cfg.f32_mode);
    let stat = acc[1].digits.get_or_insert_with(DigitStat::default);
    let drift_tol = if cfg.f32_mode { 2e-6 } else { 1e-12 };
    let agree_tol = if cfg.f32_mode { 5e-6 } else { 1e-11 };
    for &u in params {
        let j = kv.find_span(u)?;
        active_basis_into(kv, j, u, &mut vals, &mut NoTally);
        scratch.fill(&table, kv, u, &mut NoTally)?;
        let mut sum_rec = T::zero();
        let mut sum_new = T::zero();
        for r in 0..=m {
            let a = vals[r].to_f64();
            let b = scratch.values[r].to_f64();
            if (a - b).abs() > agree_tol {
                return Err(BenchError::Verification(format!(
                    "basis values disagree at u={}: recurrence {a} vs table {b}",
                    u.to_f64()
                )));
            }
            stat.record(common_digits(a, b, cap));
            sum_rec = sum_rec + vals[r];
            sum_new = sum_new + scratch.values[r];
        }
        for (name, sum) in [("recurrence", sum_rec), ("table", sum_new)] {
            let drift = (sum.to_f64() - 1.0).abs();
            if drift > drift_tol {
                return Err(BenchError::Verification(format!(
                    "{name} basis values break partition of unity by {drift:e} at u={}",
                    u.to_f64()
                )));
            }
        }
    }

    if cfg.count_ops {
        let mut c0 = OpCounter::new();
        for &u in params {
            let j = kv.find_span(u)?;
            active_basis_into(kv, j, u, &mut vals, &mut c0);
        }
        acc[0].ops.merge(&c0);
        acc[0].counted = true;

        let mut c1 = OpCounter::new();
        let counted_table = compute_table_counted(kv, &mut c1)?;
        for &u in params {
            scratch.fill(&counted_table, kv, u, &mut c1)?;
        }
        acc[1].ops.merge(&c1);
        acc[1].counted = true;
    }

    acc[0].seconds += time_best_of_3(TIMING_FLOOR, || {
        for &u in params {
            let j = kv.find_span(u).unwrap();
            active_basis_into(kv, j, u, &mut vals, &mut NoTally);
            black_box(&vals);
        }
    });
    acc[1].seconds += time_best_of_3(TIMING_FLOOR, || {
        let table = crate::bbf::compute_table(kv).unwrap();
        for &u in params {
            scratch.fill(&table, kv, u, &mut NoTally).unwrap();
            black_box(&scratch.values);
        }
    });
    Ok(())
}

/// Basis-value computation alone: the degree recurrence against table build
/// plus geometric evaluation.
pub fn run_basis_benchmark(cfg: &ExperimentConfig) -> Result<RunReport, BenchError> {
    cfg.validate()?;
    let mut rng = Rng::new(cfg.seed);
    let mut acc = [
        MethodAcc::new(METHOD_EVAL_SPLINES),
        MethodAcc::new(METHOD_NEW),
    ];
    let mut points = 0;
    for _ in 0..cfg.repeats {
        let kv = generate_knots(&mut rng, cfg.m, cfg.n);
        let params = sample_params(&kv, cfg.samples_per_span);
        points = params.len();
        if cfg.f32_mode {
            let kv32 = kv.cast::<f32>().expect("span lengths survive f32 rounding");
            let params32: Vec<f32> = params.iter().map(|&u| u as f32).collect();
            basis_cell(&kv32, &params32, cfg, &mut acc)?;
        } else {
            basis_cell(&kv, &params, cfg, &mut acc)?;
        }
    }
    Ok(RunReport {
        mode: BenchMode::Basis,
        seed: cfg.seed,
        n: cfg.n,
        m: cfg.m,
        curves: cfg.curves,
        points,
        dim: cfg.dim,
        methods: acc.into_iter().map(MethodAcc::into_report).collect(),
    })
}

/// Dispatch on the configured mode.
pub fn run_benchmark(cfg: &ExperimentConfig) -> Result<RunReport, BenchError> {
    match cfg.mode {
        BenchMode::Curve => run_curve_benchmark(cfg),
        BenchMode::Surface => run_surface_benchmark(cfg),
        BenchMode::Basis => run_basis_benchmark(cfg),
    }
}

/// Measured operation counts of the new method against the closed-form
/// budget, plus the divisions of the two baselines for scale.
#[derive(Debug, Clone)]
pub struct OpsReport {
    pub n: usize,
    pub m: usize,
    pub points: usize,
    pub curves: usize,
    pub dim: usize,
    /// Table build + evaluation stage of the new method.
    pub measured: OpCounter,
    /// Build stage alone.
    pub build: OpCounter,
    /// Evaluation stage alone.
    pub eval: OpCounter,
    /// Closed-form totals for the new method: adds, subs, muls, divs, pows.
    pub formula: [u64; 5],
    pub de_boor_cox_divs: u64,
    pub eval_splines_divs: u64,
}

impl OpsReport {
    /// Closed-form operation budget of the new method for a dataset shape.
    pub fn formula_counts(n: u64, m: u64, points: u64, curves: u64, dim: u64) -> [u64; 5] {
        let adds = (m - 1) * m * (2 * n - 1) + points * (m + 2) * m + points * curves * (m + 1) * dim;
        let subs = 2 * (m - 1) * (4 * n - 1) + n + points * ((m + 1) * m + 3);
        let muls =
            2 * (m - 1) * m * (2 * n - 1) + 2 * points * (m + 2) * m + points * curves * (m + 1) * dim;
        let divs = 2 * (m - 1) * (3 * n - 1) + points * (m + 2);
        let pows = n;
        [adds, subs, muls, divs, pows]
    }

    /// Each measured class within a factor of two of its budget, the
    /// evaluation-stage divisions exactly linear in the degree, and exactly
    /// one power per span.
    pub fn verify(&self) -> Result<(), BenchError> {
        let measured = [
            self.measured.adds,
            self.measured.subs,
            self.measured.muls,
            self.measured.divs,
            self.measured.pows,
        ];
        let names = ["adds", "subs", "muls", "divs", "pows"];
        for ((&got, &want), name) in measured.iter().zip(self.formula.iter()).zip(names) {
            let ratio = got as f64 / want as f64;
            if !(0.5..=2.0).contains(&ratio) {
                return Err(BenchError::Verification(format!(
                    "{name}: measured {got} vs budget {want} (ratio {ratio:.3})"
                )));
            }
        }
        // The final parameter is the domain end, served by endpoint
        // interpolation with a single division.
        let expected_eval_divs = (self.points as u64 - 1) * (self.m as u64 + 2) + 1;
        if self.eval.divs != expected_eval_divs {
            return Err(BenchError::Verification(format!(
                "evaluation-stage divisions: measured {} vs exact {}",
                self.eval.divs, expected_eval_divs
            )));
        }
        if self.build.pows != self.n as u64 {
            return Err(BenchError::Verification(format!(
                "power operations: measured {} vs one per span ({})",
                self.build.pows, self.n
            )));
        }
        Ok(())
    }
}

/// Instrumented single-dataset run comparing measured counts with the
/// closed-form budget.
pub fn count_ops_report(cfg: &ExperimentConfig) -> Result<OpsReport, BenchError> {
    cfg.validate()?;
    let mut rng = Rng::new(cfg.seed);
    let kv = generate_knots(&mut rng, cfg.m, cfg.n);
    let curves = generate_curves(&mut rng, &kv, cfg.curves, cfg.dim);
    let params = sample_params(&kv, cfg.samples_per_span);
    let mut grid = PointGrid::<f64>::zeroed(params.len(), curves.len(), cfg.dim);

    let mut build = OpCounter::new();
    let mut eval = OpCounter::new();
    let mut scratch = BasisScratch::new();
    new_method_grid_into(&curves, &params, &mut grid, &mut scratch, &mut build, &mut eval)?;

    let mut dbc = OpCounter::new();
    let mut work = Vec::new();
    dbc_grid_into(&curves, &params, &mut grid, &mut work, &mut dbc)?;

    let mut evs = OpCounter::new();
    evalsplines_grid_into(&curves, &params, &mut grid, &mut work, &mut evs)?;

    let mut measured = build;
    measured.merge(&eval);
    Ok(OpsReport {
        n: cfg.n,
        m: cfg.m,
        points: params.len(),
        curves: cfg.curves,
        dim: cfg.dim,
        measured,
        build,
        eval,
        formula: OpsReport::formula_counts(
            cfg.n as u64,
            cfg.m as u64,
            params.len() as u64,
            cfg.curves as u64,
            cfg.dim as u64,
        ),
        de_boor_cox_divs: dbc.divs,
        eval_splines_divs: evs.divs,
    })
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

#[cfg(test)]
mod tests;
