//! Floating-point operation tallies for the benchmark accounting.
//!
//! Kernels that participate in the operation-count reports take a
//! `&mut impl OpTally`. Timing runs pass [`NoTally`], whose methods are empty
//! and compile to nothing after monomorphization, so the timed code paths
//! carry no instrumentation cost. Counted runs pass [`OpCounter`].
//!
//! A whole `(.)^(m-1)` evaluation is tallied as a single power operation even
//! though it is carried out by repeated multiplication; the inner
//! multiplications are not tallied separately.

/// Sink for floating-point operation counts.
pub trait OpTally {
    fn add(&mut self, n: u64);
    fn sub(&mut self, n: u64);
    fn mul(&mut self, n: u64);
    fn div(&mut self, n: u64);
    fn pow(&mut self, n: u64);
}

/// Tally that discards everything; the instantiation used by timing runs.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoTally;

impl OpTally for NoTally {
    #[inline(always)]
    fn add(&mut self, _: u64) {}
    #[inline(always)]
    fn sub(&mut self, _: u64) {}
    #[inline(always)]
    fn mul(&mut self, _: u64) {}
    #[inline(always)]
    fn div(&mut self, _: u64) {}
    #[inline(always)]
    fn pow(&mut self, _: u64) {}
}

/// Tally of additions, subtractions, multiplications, divisions and powers.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounter {
    pub adds: u64,
    pub subs: u64,
    pub muls: u64,
    pub divs: u64,
    pub pows: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u64 {
        self.adds + self.subs + self.muls + self.divs + self.pows
    }

    /// Merge another counter into this one, e.g. when joining per-worker tallies.
    pub fn merge(&mut self, other: &OpCounter) {
        self.adds += other.adds;
        self.subs += other.subs;
        self.muls += other.muls;
        self.divs += other.divs;
        self.pows += other.pows;
    }
}

impl OpTally for OpCounter {
    #[inline(always)]
    fn add(&mut self, n: u64) {
        self.adds += n;
    }
    #[inline(always)]
    fn sub(&mut self, n: u64) {
        self.subs += n;
    }
    #[inline(always)]
    fn mul(&mut self, n: u64) {
        self.muls += n;
    }
    #[inline(always)]
    fn div(&mut self, n: u64) {
        self.divs += n;
    }
    #[inline(always)]
    fn pow(&mut self, n: u64) {
        self.pows += n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_accumulates_and_merges() {
        let mut a = OpCounter::new();
        a.add(3);
        a.div(2);
        a.pow(1);
        let mut b = OpCounter::new();
        b.div(5);
        b.merge(&a);
        assert_eq!(b.divs, 7);
        assert_eq!(b.adds, 3);
        assert_eq!(b.pows, 1);
        assert_eq!(b.total(), 11);
    }
}
