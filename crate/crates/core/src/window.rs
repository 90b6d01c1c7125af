//! Per-stream p-representation of the recent text.
//!
//! The text is kept as a greedy sequence of p-regions: each region says that
//! a run of text equals a run of the pattern. Only the most recent `cap`
//! regions are retained. Text-pattern LCE queries in either direction are
//! answered by walking retained regions and asking the pattern space for
//! pattern-pattern LCEs; on a greedy representation a query's extent
//! overlaps at most three regions.
//!
//! Regions carry a monotone sequence number. Callers that issue chains of
//! nearby queries pass back the sequence number returned by the previous
//! query as a hint, which keeps locating a position constant-time.

use std::collections::VecDeque;
use std::fmt;

use crate::pattern::{Locus, PatternSpace};
use crate::space::{words_for_bytes, SpaceUsage};
use crate::{Counters, Symbol};

const WILDCARD: u32 = u32::MAX;

/// `T[text_start .. text_start + len] = P[pat_start .. pat_start + len]`, or a
/// single text symbol that does not occur in `P` at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PRegion {
    pub text_start: u64,
    pat_start: u32,
    pub len: u32,
}

impl PRegion {
    /// Pattern start, or `None` for a wildcard region.
    pub fn pat_start(&self) -> Option<usize> {
        (self.pat_start != WILDCARD).then_some(self.pat_start as usize)
    }

    pub fn is_wildcard(&self) -> bool {
        self.pat_start == WILDCARD
    }

    /// One past the last text position covered.
    pub fn text_end(&self) -> u64 {
        self.text_start + u64::from(self.len)
    }
}

/// The query needed text that has already been evicted from the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutOfWindow;

impl fmt::Display for OutOfWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("query reaches evicted text")
    }
}

impl std::error::Error for OutOfWindow {}

/// Result of locating a text position among the retained regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Seek {
    Evicted,
    At(u64),
    /// Not arrived yet.
    Beyond,
}

#[derive(Debug, Clone)]
pub struct RegionWindow {
    regions: VecDeque<PRegion>,
    cap: Option<usize>,
    text_len: u64,
    /// Locus of the last region's text, `None` when it is a wildcard.
    locus: Option<Locus>,
    /// Sequence number of `regions[0]`.
    first_seq: u64,
}

impl RegionWindow {
    /// A window retaining at most `cap` regions.
    pub fn with_capacity(cap: usize) -> Self {
        assert!(cap >= 1, "window must retain at least one region");
        Self {
            regions: VecDeque::with_capacity(cap + 1),
            cap: Some(cap),
            text_len: 0,
            locus: None,
            first_seq: 0,
        }
    }

    /// A window that never evicts (full p-representation).
    pub fn unbounded() -> Self {
        Self {
            regions: VecDeque::new(),
            cap: None,
            text_len: 0,
            locus: None,
            first_seq: 0,
        }
    }

    pub fn capacity(&self) -> Option<usize> {
        self.cap
    }

    /// Symbols consumed so far.
    pub fn text_len(&self) -> u64 {
        self.text_len
    }

    /// Oldest text position still represented.
    pub fn evicted_before(&self) -> u64 {
        self.regions.front().map_or(self.text_len, |r| r.text_start)
    }

    pub fn regions(&self) -> impl ExactSizeIterator<Item = &PRegion> + '_ {
        self.regions.iter()
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub(crate) fn last_seq(&self) -> u64 {
        self.first_seq + self.regions.len() as u64 - 1
    }

    #[inline]
    fn region(&self, seq: u64) -> &PRegion {
        &self.regions[(seq - self.first_seq) as usize]
    }

    /// Appends one symbol, extending the last region when the extended run
    /// still occurs in the pattern.
    pub fn append_symbol(&mut self, ps: &PatternSpace, sym: Symbol, ctr: &mut Counters) {
        let pos = self.text_len;
        self.text_len += 1;
        ctr.op();
        if let Some(next) = self.locus.and_then(|loc| ps.locus_extend(loc, sym)) {
            ctr.op();
            let last = self.regions.back_mut().expect("locus implies a region");
            last.len += 1;
            last.pat_start = ps.locus_position(next) as u32;
            self.locus = Some(next);
            return;
        }
        ctr.op();
        self.locus = ps.locus_extend(ps.locus_start(), sym);
        let pat_start = self
            .locus
            .map_or(WILDCARD, |loc| ps.locus_position(loc) as u32);
        self.regions.push_back(PRegion {
            text_start: pos,
            pat_start,
            len: 1,
        });
        if self.cap.is_some_and(|cap| self.regions.len() > cap) {
            self.regions.pop_front();
            self.first_seq += 1;
        }
    }

    /// Finds the region holding `pos`, walking from `hint`.
    pub(crate) fn seek(&self, hint: u64, pos: u64, ctr: &mut Counters) -> Seek {
        if pos >= self.text_len {
            return Seek::Beyond;
        }
        if pos < self.evicted_before() {
            return Seek::Evicted;
        }
        let mut seq = hint.clamp(self.first_seq, self.last_seq());
        while self.region(seq).text_start > pos {
            ctr.op();
            seq -= 1;
        }
        while self.region(seq).text_end() <= pos {
            ctr.op();
            seq += 1;
        }
        Seek::At(seq)
    }

    /// Pattern index `j` with `P[j] = T[pos]`, or `None` if `T[pos]` does not
    /// occur in the pattern.
    pub(crate) fn pattern_index_at(&self, seq: u64, pos: u64) -> Option<usize> {
        let r = self.region(seq);
        r.pat_start().map(|j| j + (pos - r.text_start) as usize)
    }

    /// Forward LCE between `T[pos..]` and `P[j..]`, stopping after `limit`
    /// symbols. Returns the length and the sequence number of the region the
    /// walk stopped in.
    pub(crate) fn lce_from(
        &self,
        ps: &PatternSpace,
        hint: u64,
        pos: u64,
        j: usize,
        limit: usize,
        ctr: &mut Counters,
    ) -> (Result<usize, OutOfWindow>, u64) {
        let mut seq = match self.seek(hint, pos, ctr) {
            Seek::Evicted => {
                ctr.oow_events += 1;
                ctr.record_query(0);
                return (Err(OutOfWindow), hint);
            }
            Seek::Beyond => {
                ctr.record_query(0);
                return (Ok(0), hint);
            }
            Seek::At(seq) => seq,
        };
        let last = self.last_seq();
        let mut len = 0usize;
        let mut overlap = 0u32;
        while len < limit {
            ctr.op();
            let r = *self.region(seq);
            let Some(pat) = r.pat_start() else { break };
            let off = (pos + len as u64 - r.text_start) as usize;
            let want = (r.len as usize - off).min(limit - len);
            let l = ps.lce_pp(pat + off, j + len).min(want);
            if l > 0 {
                overlap += 1;
            }
            len += l;
            if l < want || len == limit || seq == last {
                break;
            }
            seq += 1;
        }
        ctr.record_query(overlap);
        (Ok(len), seq)
    }

    /// Reverse LCE: longest common suffix of `T[..=pos]` and `P[..=j]`,
    /// stopping after `limit` symbols. Reports [`OutOfWindow`] if the match
    /// runs into evicted text before reaching `limit`.
    pub(crate) fn lcs_from(
        &self,
        ps: &PatternSpace,
        hint: u64,
        pos: u64,
        j: usize,
        limit: usize,
        ctr: &mut Counters,
    ) -> (Result<usize, OutOfWindow>, u64) {
        let mut seq = match self.seek(hint, pos, ctr) {
            Seek::Evicted => {
                ctr.oow_events += 1;
                ctr.record_query(0);
                return (Err(OutOfWindow), hint);
            }
            Seek::Beyond => {
                ctr.record_query(0);
                return (Ok(0), hint);
            }
            Seek::At(seq) => seq,
        };
        let mut len = 0usize;
        let mut overlap = 0u32;
        while len < limit {
            ctr.op();
            let r = *self.region(seq);
            let Some(pat) = r.pat_start() else { break };
            let off = (pos - len as u64 - r.text_start) as usize;
            let want = (off + 1).min(limit - len);
            let l = ps.lcs_pp(pat + off + 1, j + 1 - len).min(want);
            if l > 0 {
                overlap += 1;
            }
            len += l;
            if l < want || len == limit {
                break;
            }
            if seq == self.first_seq {
                if r.text_start > 0 {
                    ctr.oow_events += 1;
                    ctr.record_query(overlap);
                    return (Err(OutOfWindow), seq);
                }
                break;
            }
            seq -= 1;
        }
        ctr.record_query(overlap);
        (Ok(len), seq)
    }

    /// Longest common prefix of `T[pos..]` (as far as it has arrived) and `P[j..]`.
    ///
    /// Locates `pos` by walking back from the newest region; chained queries
    /// inside the matchers use hinted lookups instead.
    pub fn lce_text(
        &self,
        ps: &PatternSpace,
        pos: u64,
        j: usize,
        ctr: &mut Counters,
    ) -> Result<usize, OutOfWindow> {
        if j >= ps.len() || self.regions.is_empty() {
            return Ok(0);
        }
        self.lce_from(ps, self.last_seq(), pos, j, ps.len() - j, ctr)
            .0
    }

    /// Longest common suffix of `T[evicted_before..=pos]` and `P[..=j]`.
    pub fn lcs_text(
        &self,
        ps: &PatternSpace,
        pos: u64,
        j: usize,
        ctr: &mut Counters,
    ) -> Result<usize, OutOfWindow> {
        if self.regions.is_empty() {
            return Ok(0);
        }
        self.lcs_from(ps, self.last_seq(), pos, j, j + 1, ctr).0
    }
}

impl SpaceUsage for RegionWindow {
    fn words(&self) -> usize {
        // cap, text_len, locus (two u32), first_seq, deque header
        7 + words_for_bytes(self.regions.capacity() * std::mem::size_of::<PRegion>())
    }
}
