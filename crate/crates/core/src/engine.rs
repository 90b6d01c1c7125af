use std::fmt;
use std::sync::Arc;

use crate::difference::DiffState;
use crate::error::{BuildError, EngineError};
use crate::exact::ExactState;
use crate::mismatch::MismatchState;
use crate::pattern::{Mode, PatternSpace};
use crate::space::SpaceUsage;
use crate::{Counters, MatchReport, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StreamId(pub u64);

impl fmt::Display for StreamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Text space of one stream. Can be driven directly against a shared
/// [`PatternSpace`], e.g. one state per worker thread.
#[derive(Debug, Clone)]
pub enum StreamState {
    Exact(ExactState),
    Mismatch(MismatchState),
    Difference(Box<DiffState>),
}

impl StreamState {
    pub fn new(ps: &PatternSpace) -> Self {
        match ps.mode() {
            Mode::Exact => StreamState::Exact(ExactState::new()),
            Mode::Mismatch => StreamState::Mismatch(MismatchState::new(ps.k())),
            Mode::Difference => StreamState::Difference(Box::new(DiffState::new(ps.len(), ps.k()))),
        }
    }

    pub fn push(&mut self, ps: &PatternSpace, sym: Symbol, ctr: &mut Counters) -> MatchReport {
        match self {
            StreamState::Exact(st) => st.push(ps, sym, ctr),
            StreamState::Mismatch(st) => st.push(ps, sym, ctr),
            StreamState::Difference(st) => st.push(ps, sym, ctr),
        }
    }

    pub fn text_len(&self) -> u64 {
        match self {
            StreamState::Exact(st) => st.text_len(),
            StreamState::Mismatch(st) => st.text_len(),
            StreamState::Difference(st) => st.text_len(),
        }
    }
}

impl SpaceUsage for StreamState {
    fn words(&self) -> usize {
        match self {
            StreamState::Exact(st) => st.words(),
            StreamState::Mismatch(st) => st.words(),
            StreamState::Difference(st) => st.words(),
        }
    }
}

/// Measured word counts: the shared pattern space plus each live stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceReport {
    pub pattern_words: usize,
    /// One entry per live stream, in id order.
    pub per_stream_words: Vec<(StreamId, usize)>,
    pub total_words: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpsReport {
    pub mode: Mode,
    pub k: usize,
    pub pushes: u64,
    /// Largest primitive-operation count of any single push.
    pub per_push_max_ops: u64,
    pub total_ops: u64,
    pub lce_queries: u64,
    pub max_regions_per_query: u32,
    pub out_of_window_events: u64,
}

/// Many streams over one shared pattern space.
#[derive(Debug)]
pub struct Engine {
    pattern: Arc<PatternSpace>,
    streams: Vec<Option<StreamState>>,
    pushes: u64,
    max_push_ops: u64,
    totals: Counters,
    last: Counters,
}

impl Engine {
    pub fn new(pattern: &[Symbol], mode: Mode, k: usize) -> Result<Self, BuildError> {
        Ok(Self::with_pattern_space(Arc::new(PatternSpace::build(
            pattern, mode, k,
        )?)))
    }

    pub fn with_pattern_space(pattern: Arc<PatternSpace>) -> Self {
        Self {
            pattern,
            streams: Vec::new(),
            pushes: 0,
            max_push_ops: 0,
            totals: Counters::new(),
            last: Counters::new(),
        }
    }

    pub fn pattern_space(&self) -> &Arc<PatternSpace> {
        &self.pattern
    }

    pub fn add_stream(&mut self) -> StreamId {
        let id = StreamId(self.streams.len() as u64);
        self.streams.push(Some(StreamState::new(&self.pattern)));
        id
    }

    /// Frees the stream's text space. Its id is never reused.
    pub fn remove_stream(&mut self, sid: StreamId) -> Result<StreamState, EngineError> {
        self.streams
            .get_mut(sid.0 as usize)
            .and_then(Option::take)
            .ok_or(EngineError::UnknownStream(sid.0))
    }

    pub fn stream(&self, sid: StreamId) -> Option<&StreamState> {
        self.streams.get(sid.0 as usize).and_then(Option::as_ref)
    }

    pub fn live_streams(&self) -> usize {
        self.streams.iter().flatten().count()
    }

    pub fn push(&mut self, sid: StreamId, sym: Symbol) -> Result<MatchReport, EngineError> {
        let state = self
            .streams
            .get_mut(sid.0 as usize)
            .and_then(Option::as_mut)
            .ok_or(EngineError::UnknownStream(sid.0))?;
        let mut ctr = Counters::new();
        let report = state.push(&self.pattern, sym, &mut ctr);
        self.pushes += 1;
        self.max_push_ops = self.max_push_ops.max(ctr.ops);
        self.totals.absorb(&ctr);
        self.last = ctr;
        Ok(report)
    }

    /// Instrumentation of the most recent push.
    pub fn last_push(&self) -> &Counters {
        &self.last
    }

    pub fn space_report(&self) -> SpaceReport {
        let pattern_words = self.pattern.words();
        let per_stream_words: Vec<(StreamId, usize)> = self
            .streams
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|s| (StreamId(i as u64), s.words())))
            .collect();
        let total_words = pattern_words + per_stream_words.iter().map(|(_, w)| w).sum::<usize>();
        SpaceReport {
            pattern_words,
            per_stream_words,
            total_words,
        }
    }

    pub fn ops_report(&self) -> OpsReport {
        OpsReport {
            mode: self.pattern.mode(),
            k: self.pattern.k(),
            pushes: self.pushes,
            per_push_max_ops: self.max_push_ops,
            total_ops: self.totals.ops,
            lce_queries: self.totals.lce_queries,
            max_regions_per_query: self.totals.max_overlap,
            out_of_window_events: self.totals.oow_events,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Verdict;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn construction() {
        let e = Engine::new(b"babbac", Mode::Mismatch, 2).unwrap();
        assert!(e.space_report().pattern_words <= 200 * 6);
        assert_eq!(
            Engine::new(b"", Mode::Exact, 0).unwrap_err(),
            BuildError::EmptyPattern
        );
        let e = Engine::new(b"a", Mode::Difference, 1).unwrap();
        assert_eq!(e.live_streams(), 0);
    }

    #[test]
    fn ids_are_sequential_and_not_reused() {
        let mut e = Engine::new(b"ab", Mode::Exact, 0).unwrap();
        assert_eq!(e.add_stream(), StreamId(0));
        assert_eq!(e.add_stream(), StreamId(1));
        e.remove_stream(StreamId(0)).unwrap();
        assert_eq!(e.add_stream(), StreamId(2));
        assert_eq!(
            e.push(StreamId(0), b'a'),
            Err(EngineError::UnknownStream(0))
        );
        assert_eq!(
            e.push(StreamId(9), b'a'),
            Err(EngineError::UnknownStream(9))
        );
        assert_eq!(e.space_report().per_stream_words.len(), 2);
    }

    #[test]
    fn interleaved_streams_match_independently() {
        let mut e = Engine::new(b"ab", Mode::Exact, 0).unwrap();
        let (s0, s1) = (e.add_stream(), e.add_stream());
        let mut hits = Vec::new();
        for (sid, c) in [(s0, b'a'), (s1, b'a'), (s0, b'b'), (s1, b'b')] {
            let r = e.push(sid, c).unwrap();
            if r.is_match() {
                hits.push((sid, r.position));
            }
        }
        assert_eq!(hits, vec![(s0, 1), (s1, 1)]);
    }

    #[test]
    fn empty_engine_space() {
        let e = Engine::new(b"abcabd", Mode::Exact, 0).unwrap();
        let r = e.space_report();
        assert!(r.per_stream_words.is_empty());
        assert_eq!(r.total_words, r.pattern_words);
    }

    #[test]
    fn stream_size_independent_of_stream_count() {
        for mode in [Mode::Exact, Mode::Mismatch, Mode::Difference] {
            let k = usize::from(mode != Mode::Exact) * 3;
            let mut e = Engine::new(b"abcabdabcabd", mode, k).unwrap();
            let first = {
                let id = e.add_stream();
                e.stream(id).unwrap().words()
            };
            for _ in 0..50 {
                e.add_stream();
            }
            let r = e.space_report();
            assert!(r.per_stream_words.iter().all(|&(_, w)| w == first));
        }
    }

    #[test]
    fn concurrent_streams_share_one_pattern_space() {
        let ps = Arc::new(PatternSpace::build(b"abaab", Mode::Mismatch, 1).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let texts: Vec<Vec<u8>> = (0..8)
            .map(|_| (0..400).map(|_| b'a' + rng.gen_range(0..2)).collect())
            .collect();
        let run = |t: &[u8]| {
            let mut st = StreamState::new(&ps);
            let mut ctr = Counters::new();
            t.iter()
                .map(|&c| st.push(&ps, c, &mut ctr))
                .collect::<Vec<_>>()
        };
        let serial: Vec<_> = texts.iter().map(|t| run(t)).collect();
        let parallel: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = texts.iter().map(|t| scope.spawn(|| run(t))).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert_eq!(serial, parallel);
        assert!(serial[0]
            .iter()
            .any(|r| matches!(r.verdict, Verdict::Match { .. })));
    }
}
