use crate::pattern::PatternSpace;
use crate::space::SpaceUsage;
use crate::{Counters, MatchReport, Symbol, Verdict};

/// Text space of one stream in exact mode: the length of the longest pattern
/// prefix that is a suffix of the text so far.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExactState {
    j: u32,
    text_len: u64,
}

impl ExactState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn matched_prefix(&self) -> usize {
        self.j as usize
    }

    pub fn text_len(&self) -> u64 {
        self.text_len
    }

    /// One dictionary probe per symbol; after a full match the next state
    /// comes from the full-match dictionary `D_m`.
    pub fn push(&mut self, ps: &PatternSpace, sym: Symbol, ctr: &mut Counters) -> MatchReport {
        let position = self.text_len;
        self.text_len += 1;
        ctr.op();
        self.j = ps.shift_lookup(self.j as usize, sym) as u32;
        let verdict = if self.text_len < ps.len() as u64 {
            Verdict::NoAlignment
        } else if self.j as usize == ps.len() {
            Verdict::Match { distance: 0 }
        } else {
            Verdict::NoMatch
        };
        MatchReport { position, verdict }
    }
}

impl SpaceUsage for ExactState {
    fn words(&self) -> usize {
        2
    }
}
