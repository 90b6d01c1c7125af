/// Instrumentation threaded through every push.
///
/// `ops` counts primitive steps: dictionary probes, region visits,
/// pattern-pattern LCE calls, DP cells and diagonal frontier updates. The
/// engine resets a fresh `Counters` for each push so the per-push maximum is
/// an unamortised figure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    pub ops: u64,
    /// Text-pattern LCE/LCS queries issued.
    pub lce_queries: u64,
    /// Largest number of p-regions overlapping the extent returned by a single query.
    pub max_overlap: u32,
    /// Queries that needed an evicted p-region.
    pub oow_events: u64,
    /// Out-of-window events attributable to the output reported by this push.
    /// For k-difference this spans the whole lifetime of the responsible child.
    pub output_oow: u64,
}

impl Counters {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn op(&mut self) {
        self.ops += 1;
    }

    #[inline]
    pub(crate) fn ops(&mut self, n: u64) {
        self.ops += n;
    }

    pub(crate) fn record_query(&mut self, overlap: u32) {
        self.lce_queries += 1;
        self.max_overlap = self.max_overlap.max(overlap);
    }

    /// Folds another counter set into this one (sums and maxima).
    pub fn absorb(&mut self, other: &Counters) {
        self.ops += other.ops;
        self.lce_queries += other.lce_queries;
        self.max_overlap = self.max_overlap.max(other.max_overlap);
        self.oow_events += other.oow_events;
        self.output_oow += other.output_oow;
    }
}
