//! k-difference matching: per arrival, the k-capped edit distance between
//! the pattern and the best suffix of the text.
//!
//! Long patterns (`m > 3k+2`) use overlapping child computations. A child
//! spawned at arrival `s` (a multiple of `k`) owns the outputs for arrivals
//! `s+k ..= s+2k-1`:
//!
//! * stage A (`⌈k/2⌉` arrivals): diagonal-frontier search over the table,
//!   jumping along diagonals with text-pattern LCE queries, to find the
//!   column `s-1` on rows `m-3k-1 ..= m-2`;
//! * stage B (`⌊k/2⌋` arrivals): plain recurrence over columns `s ..= s+k-1`
//!   of the band, seeded from stage A;
//! * stage C (one column per arrival): continues the band and reports row
//!   `m-1` of each new column.
//!
//! All cells saturate at `k+1`. Band boundaries outside the seeded column are
//! `k+1` as well; they cannot lower any output that is within the bound.
//!
//! Short patterns (`m <= 3k+2`) keep one full DP column, which is already
//! `O(k)` words.

use crate::pattern::PatternSpace;
use crate::space::{vec_words, SpaceUsage};
use crate::window::{RegionWindow, Seek};
use crate::{Counters, MatchReport, Symbol, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildStage {
    Idle,
    A,
    B,
    C,
    Done,
}

const UNREACHED: i32 = i32::MIN;

/// Furthest row reached on one diagonal, plus the region the last jump on
/// that diagonal stopped in.
#[derive(Debug, Clone, Copy)]
struct Frontier {
    row: i32,
    hint: u64,
}

impl Frontier {
    const NONE: Frontier = Frontier {
        row: UNREACHED,
        hint: 0,
    };
}

#[derive(Debug, Clone)]
struct Child {
    stage: ChildStage,
    start: u64,
    /// First text position visible to this child; earlier starts cost more than `k`.
    base: u64,
    /// Target column `start-1`, relative to `base`.
    target: i64,
    level: usize,
    next_cell: usize,
    cells_left: usize,
    prev: Vec<Frontier>,
    cur: Vec<Frontier>,
    /// Region of text position `base`, and a cursor for the level-0 sweep.
    base_hint: u64,
    sweep_hint: u64,
    /// Column `start-1` on rows `lo ..= m-2`.
    r_a: Vec<u8>,
    /// Current band column on rows `lo ..= m-1`.
    col: Vec<u8>,
    cols_done: usize,
    col_hint: u64,
    oow: u64,
}

impl Child {
    fn new(k: usize) -> Self {
        Self {
            stage: ChildStage::Idle,
            start: 0,
            base: 0,
            target: 0,
            level: 0,
            next_cell: 0,
            cells_left: 0,
            prev: Vec::with_capacity(5 * k),
            cur: Vec::with_capacity(5 * k),
            base_hint: 0,
            sweep_hint: 0,
            r_a: Vec::with_capacity(3 * k),
            col: Vec::with_capacity(3 * k + 1),
            cols_done: 0,
            col_hint: 0,
            oow: 0,
        }
    }

    fn is_active(&self) -> bool {
        matches!(self.stage, ChildStage::A | ChildStage::B | ChildStage::C)
    }

    fn words(&self) -> usize {
        14 + vec_words(&self.prev)
            + vec_words(&self.cur)
            + vec_words(&self.r_a)
            + vec_words(&self.col)
    }
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
enum Regime {
    /// Full column of `D[., i-1]`, rows `0..m`.
    ShortPattern {
        column: Vec<u8>,
    },
    Children {
        slots: [Child; 2],
    },
}

/// Text space of one stream in k-difference mode.
#[derive(Debug, Clone)]
pub struct DiffState {
    window: RegionWindow,
    k: usize,
    regime: Regime,
}

/// Static geometry of the child computation for a given `(m, k)`.
#[derive(Debug, Clone, Copy)]
struct Geometry {
    m: usize,
    k: usize,
    /// Top row of the band, `m-3k-1`.
    lo: usize,
    cap: u8,
    a_ticks: usize,
    b_ticks: usize,
}

impl Geometry {
    fn new(m: usize, k: usize) -> Self {
        Self {
            m,
            k,
            lo: m - 3 * k - 1,
            cap: (k + 1) as u8,
            a_ticks: k.div_ceil(2),
            b_ticks: k / 2,
        }
    }

    /// Diagonals computed at level `e`: `3k` target diagonals plus `k-e` on each side.
    fn width(&self, e: usize) -> usize {
        3 * self.k + 2 * (self.k - e)
    }

    fn total_cells(&self) -> usize {
        4 * self.k * (self.k + 1)
    }
}

impl DiffState {
    pub fn new(m: usize, k: usize) -> Self {
        assert!(k >= 1, "k-difference needs k >= 1");
        let cap = (k + 1) as u8;
        let regime = if m <= 3 * k + 2 {
            Regime::ShortPattern {
                column: (0..m).map(|j| cap.min(j as u8 + 1)).collect(),
            }
        } else {
            Regime::Children {
                slots: [Child::new(k), Child::new(k)],
            }
        };
        Self {
            window: RegionWindow::with_capacity(5 * (k + 1)),
            k,
            regime,
        }
    }

    pub fn window(&self) -> &RegionWindow {
        &self.window
    }

    pub fn text_len(&self) -> u64 {
        self.window.text_len()
    }

    pub fn uses_children(&self) -> bool {
        matches!(self.regime, Regime::Children { .. })
    }

    /// `(spawn arrival, stage)` of every child slot currently in use.
    pub fn child_stages(&self) -> Vec<(u64, ChildStage)> {
        match &self.regime {
            Regime::ShortPattern { .. } => Vec::new(),
            Regime::Children { slots } => slots
                .iter()
                .filter(|c| c.stage != ChildStage::Idle)
                .map(|c| (c.start, c.stage))
                .collect(),
        }
    }

    pub fn push(&mut self, ps: &PatternSpace, sym: Symbol, ctr: &mut Counters) -> MatchReport {
        self.window.append_symbol(ps, sym, ctr);
        let position = self.window.text_len() - 1;
        let k = self.k;
        let cap = (k + 1) as u8;
        let value = match &mut self.regime {
            Regime::ShortPattern { column } => {
                short_pattern_step(column, ps.pattern(), sym, cap, ctr)
            }
            Regime::Children { slots } => {
                let geo = Geometry::new(ps.len(), k);
                if position.is_multiple_of(k as u64) {
                    let slot = slots
                        .iter_mut()
                        .find(|c| !c.is_active())
                        .expect("at most two children are alive");
                    spawn(slot, &geo, &self.window, position, ctr);
                }
                let mut out = None;
                for child in slots.iter_mut().filter(|c| c.is_active()) {
                    if let Some(v) = tick(child, &geo, ps, &self.window, position, ctr) {
                        debug_assert!(out.is_none(), "two children own one output");
                        ctr.output_oow += child.oow;
                        out = Some(v);
                    }
                }
                // before the first child matures fewer than m-k symbols exist
                debug_assert!(out.is_some() || position < k as u64);
                out.unwrap_or(cap)
            }
        };
        let verdict = if usize::from(value) <= k {
            Verdict::Match {
                distance: u32::from(value),
            }
        } else {
            Verdict::NoMatch
        };
        MatchReport { position, verdict }
    }
}

fn short_pattern_step(
    column: &mut [u8],
    p: &[Symbol],
    sym: Symbol,
    cap: u8,
    ctr: &mut Counters,
) -> u8 {
    let mut diag = 0u8;
    let mut above = 0u8;
    for (cell, &pj) in column.iter_mut().zip(p) {
        let left = *cell;
        let v = (left + 1)
            .min(above + 1)
            .min(diag + u8::from(pj != sym))
            .min(cap);
        diag = left;
        *cell = v;
        above = v;
    }
    ctr.ops(p.len() as u64);
    column[column.len() - 1]
}

fn spawn(child: &mut Child, geo: &Geometry, window: &RegionWindow, start: u64, ctr: &mut Counters) {
    let base = (start + 1).saturating_sub(geo.m as u64);
    child.stage = ChildStage::A;
    child.start = start;
    child.base = base;
    child.target = start as i64 - 1 - base as i64;
    child.level = 0;
    child.next_cell = 0;
    child.cells_left = geo.total_cells();
    child.prev.clear();
    child.cur.clear();
    child.cur.resize(geo.width(0), Frontier::NONE);
    child.r_a.clear();
    child.r_a.resize(3 * geo.k, geo.cap);
    child.col.clear();
    child.cols_done = 0;
    child.col_hint = window.last_seq();
    child.oow = 0;
    // one O(k) walk back over the retained regions
    child.base_hint = match window.seek(window.last_seq(), base, ctr) {
        Seek::At(seq) => seq,
        _ => window.last_seq().saturating_sub(window.len() as u64 - 1),
    };
    child.sweep_hint = child.base_hint;
}

/// Advances `child` by one arrival; returns its output when in stage C.
fn tick(
    child: &mut Child,
    geo: &Geometry,
    ps: &PatternSpace,
    window: &RegionWindow,
    position: u64,
    ctr: &mut Counters,
) -> Option<u8> {
    let offset = (position - child.start) as usize;
    let k = geo.k;
    if offset < geo.a_ticks {
        let last = offset + 1 == geo.a_ticks;
        let budget = if last {
            child.cells_left
        } else {
            geo.total_cells().div_ceil(geo.a_ticks)
        };
        frontier_cells(child, geo, ps, window, budget, ctr);
        if child.cells_left == 0 {
            start_band(child, geo);
            if geo.b_ticks == 0 {
                band_columns(child, geo, ps, window, k, ctr);
                child.stage = ChildStage::C;
            }
        }
        None
    } else if offset < k {
        let remaining_ticks = k - offset;
        let n = (k - child.cols_done).div_ceil(remaining_ticks);
        band_columns(child, geo, ps, window, n, ctr);
        if child.cols_done == k {
            child.stage = ChildStage::C;
        }
        None
    } else {
        debug_assert_eq!(child.stage, ChildStage::C);
        band_columns(child, geo, ps, window, 1, ctr);
        if offset + 1 == 2 * k {
            child.stage = ChildStage::Done;
        }
        child.col.last().copied()
    }
}

/// Computes up to `budget` diagonal-frontier cells, level by level.
fn frontier_cells(
    child: &mut Child,
    geo: &Geometry,
    ps: &PatternSpace,
    window: &RegionWindow,
    budget: usize,
    ctr: &mut Counters,
) {
    let m = geo.m as i64;
    let k = geo.k;
    let target = child.target;
    // diagonal (column - row) of the band's bottom target row m-2
    let diag_lo = target - (m - 2);
    for _ in 0..budget {
        if child.cells_left == 0 {
            return;
        }
        let e = child.level;
        let t = child.next_cell;
        let d = diag_lo - (k - e) as i64 + t as i64;
        ctr.op();

        let mut best = Frontier::NONE;
        let mut offer = |row: i32, hint: u64| {
            if row > best.row {
                best = Frontier { row, hint };
            }
        };
        if d <= target + 1 {
            if d >= 0 {
                // D[-1, c] = 0: start of every diagonal at or right of column -1
                offer(-1, child.sweep_hint);
            } else if (-d) as usize <= e {
                // D[r, -1] = r + 1 on the base column
                offer((-d - 1) as i32, child.base_hint);
            }
            if e > 0 {
                let left = child.prev[t];
                let own = child.prev[t + 1];
                let right = child.prev[t + 2];
                if own.row != UNREACHED {
                    offer(own.row + 1, own.hint);
                }
                if left.row != UNREACHED {
                    offer(left.row, left.hint);
                }
                if right.row != UNREACHED {
                    offer(right.row + 1, right.hint);
                }
            }
        }

        if best.row != UNREACHED {
            let mut row = i64::from(best.row).min(m - 1).min(target - d);
            if row < m - 1 && row + d < target {
                let start = child.base + (row + d + 1) as u64;
                let limit = (m - 1 - row).min(target - d - row) as usize;
                let before = ctr.oow_events;
                let (res, hint) =
                    window.lce_from(ps, best.hint, start, (row + 1) as usize, limit, ctr);
                match res {
                    Ok(l) => {
                        row += l as i64;
                        best.hint = hint;
                    }
                    Err(_) => child.oow += ctr.oow_events - before,
                }
                if e == 0 && d >= 0 {
                    child.sweep_hint = hint;
                }
            }
            best.row = row as i32;

            // target diagonals map to rows lo ..= m-2 of column start-1
            let band_row = target - d;
            if (geo.lo as i64..=m - 2).contains(&band_row) && row == band_row {
                let slot = &mut child.r_a[(band_row - geo.lo as i64) as usize];
                if usize::from(*slot) > e {
                    *slot = e as u8;
                }
            }
        }
        child.cur[t] = best;

        child.cells_left -= 1;
        child.next_cell += 1;
        if child.next_cell == geo.width(e) {
            child.level += 1;
            child.next_cell = 0;
            std::mem::swap(&mut child.prev, &mut child.cur);
            if child.level <= k {
                child.cur.clear();
                child.cur.resize(geo.width(child.level), Frontier::NONE);
            }
        }
    }
}

fn start_band(child: &mut Child, geo: &Geometry) {
    child.stage = ChildStage::B;
    child.col.clear();
    child.col.extend_from_slice(&child.r_a);
    // row m-1 of column start-1 can only feed outputs through k+1 insertions
    child.col.push(geo.cap);
    child.cols_done = 0;
}

/// Computes the next `n` band columns (rows `lo ..= m-1`) by the recurrence,
/// with `k+1` above the band.
fn band_columns(
    child: &mut Child,
    geo: &Geometry,
    ps: &PatternSpace,
    window: &RegionWindow,
    n: usize,
    ctr: &mut Counters,
) {
    let p = ps.pattern();
    let cap = geo.cap;
    for _ in 0..n {
        let pos = child.start + child.cols_done as u64;
        let text_at = match window.seek(child.col_hint, pos, ctr) {
            Seek::At(seq) => {
                child.col_hint = seq;
                window.pattern_index_at(seq, pos).map(|j| p[j])
            }
            _ => {
                ctr.oow_events += 1;
                child.oow += 1;
                None
            }
        };
        let mut diag = cap;
        let mut above = cap;
        for (cell, &pj) in child.col.iter_mut().zip(&p[geo.lo..]) {
            let left = *cell;
            let v = (left + 1)
                .min(above + 1)
                .min(diag + u8::from(text_at != Some(pj)))
                .min(cap);
            diag = left;
            *cell = v;
            above = v;
        }
        ctr.ops(child.col.len() as u64);
        child.cols_done += 1;
    }
}

impl SpaceUsage for DiffState {
    fn words(&self) -> usize {
        1 + self.window.words()
            + match &self.regime {
                Regime::ShortPattern { column } => 1 + vec_words(column),
                Regime::Children { slots } => slots.iter().map(Child::words).sum(),
            }
    }
}
