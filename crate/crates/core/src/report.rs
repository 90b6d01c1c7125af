use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The alignment ending at this position is within the bound. `distance`
    /// is the exact Hamming or edit distance (always 0 in exact mode).
    Match {
        distance: u32,
    },
    NoMatch,
    /// Fewer than `m` symbols have arrived, so no full alignment exists yet.
    NoAlignment,
}

/// Output of one push: the verdict for the alignment ending at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchReport {
    /// Absolute index of the symbol just pushed.
    pub position: u64,
    pub verdict: Verdict,
}

impl MatchReport {
    pub fn is_match(&self) -> bool {
        matches!(self.verdict, Verdict::Match { .. })
    }

    pub fn distance(&self) -> Option<u32> {
        match self.verdict {
            Verdict::Match { distance } => Some(distance),
            _ => None,
        }
    }
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Match { .. } => "match",
            Verdict::NoMatch => "nomatch",
            Verdict::NoAlignment => "noalign",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match { distance } => write!(f, "match({distance})"),
            other => f.write_str(other.as_str()),
        }
    }
}
