//! Shared knot-vector fixtures and generators for the unit tests.

use crate::knots::KnotVector;
use crate::rng::Rng;

/// m = 3, n = 5, clamped, simple inner knots 3, 5, 6, 9.
pub(crate) fn example13() -> KnotVector<f64> {
    KnotVector::new(
        3,
        5,
        vec![0.0, 0.0, 0.0, 0.0, 3.0, 5.0, 6.0, 9.0, 10.0, 10.0, 10.0, 10.0],
    )
    .unwrap()
}

/// m = 3, n = 5, clamped, inner knot 3 of multiplicity 2 (span [t_1, t_2) empty).
pub(crate) fn example15() -> KnotVector<f64> {
    KnotVector::new(
        3,
        5,
        vec![0.0, 0.0, 0.0, 0.0, 3.0, 3.0, 5.0, 9.0, 10.0, 10.0, 10.0, 10.0],
    )
    .unwrap()
}

/// m = 3, n = 2, fully unclamped uniform knots -3..5.
pub(crate) fn example_unclamped() -> KnotVector<f64> {
    KnotVector::new(3, 2, vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap()
}

/// Degree-m Bezier knots: 0 repeated m+1 times, then 1 repeated m+1 times.
pub(crate) fn bezier_knots(m: usize) -> KnotVector<f64> {
    let mut knots = vec![0.0; m + 1];
    knots.extend(std::iter::repeat_n(1.0, m + 1));
    KnotVector::new(m, 1, knots).unwrap()
}

/// Clamped knots with random inner multiplicities up to m, spans in [1/50, 1].
pub(crate) fn random_multiplicity_knots(rng: &mut Rng, m: usize, max_n: usize) -> KnotVector<f64> {
    let inner_slots = max_n.saturating_sub(1).max(1);
    let mut inner = Vec::new();
    let mut t = 0.0;
    while inner.len() < inner_slots {
        t += rng.uniform(1.0 / 50.0, 1.0);
        let mult = 1 + rng.below(m.min(inner_slots - inner.len()));
        for _ in 0..mult {
            inner.push(t);
        }
    }
    t += rng.uniform(1.0 / 50.0, 1.0);
    let n = inner.len() + 1;
    let mut knots = vec![0.0; m + 1];
    knots.extend_from_slice(&inner);
    knots.extend(std::iter::repeat_n(t, m + 1));
    KnotVector::new(m, n, knots).expect("generated multiplicity knots are valid")
}

/// Strictly increasing knots everywhere, so both boundaries are unclamped.
pub(crate) fn random_unclamped_knots(rng: &mut Rng, m: usize, n: usize) -> KnotVector<f64> {
    let mut knots = Vec::with_capacity(n + 2 * m + 1);
    let mut t = 0.0;
    knots.push(t);
    for _ in 0..n + 2 * m {
        t += rng.uniform(1.0 / 50.0, 1.0);
        knots.push(t);
    }
    KnotVector::new(m, n, knots).expect("strictly increasing knots are valid")
}
