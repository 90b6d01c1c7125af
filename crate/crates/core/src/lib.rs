//! Deterministic pattern matching over many interleaved streams.
//!
//! A single immutable [`PatternSpace`] is built once from the pattern and
//! shared, read-only, by every stream. Each stream keeps only a small text
//! space whose size does not depend on the pattern length:
//!
//! * exact matching keeps one prefix length per stream and spends a constant
//!   number of operations per symbol;
//! * k-mismatch keeps the `4(k+1)` most recent p-regions of the stream and
//!   answers each alignment with at most `k+1` reverse LCE jumps;
//! * k-difference keeps the `5(k+1)` most recent p-regions plus two child
//!   computations of `O(k)` cells each.
//!
//! [`Engine`] multiplexes any number of streams over one pattern space and
//! records the space and per-push work it actually used.
//!
//! ```
//! use multistream::{Engine, Mode, Verdict};
//!
//! let mut engine = Engine::new(b"abab", Mode::Exact, 0).unwrap();
//! let a = engine.add_stream();
//! let b = engine.add_stream();
//! let mut hits = Vec::new();
//! for (sid, sym) in [(a, b'a'), (b, b'a'), (a, b'b'), (a, b'a'), (b, b'b'), (a, b'b')] {
//!     let report = engine.push(sid, sym).unwrap();
//!     if let Verdict::Match { .. } = report.verdict {
//!         hits.push((sid, report.position));
//!     }
//! }
//! assert_eq!(hits, vec![(a, 3)]);
//! ```

mod counters;
mod difference;
mod engine;
mod error;
mod exact;
mod mismatch;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod pattern;
mod report;
mod space;
pub mod window;

pub use counters::Counters;
pub use difference::{ChildStage, DiffState};
pub use engine::{Engine, OpsReport, SpaceReport, StreamId, StreamState};
pub use error::{BuildError, EngineError};
pub use exact::ExactState;
pub use mismatch::MismatchState;
pub use pattern::{Locus, Mode, PatternSpace};
pub use report::{MatchReport, Verdict};
pub use space::{SpaceUsage, WORD_BYTES};
pub use window::{OutOfWindow, PRegion, RegionWindow};

/// One text or pattern symbol. Input bytes map directly onto symbols.
pub type Symbol = u8;
