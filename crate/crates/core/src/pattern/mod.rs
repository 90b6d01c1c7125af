//! Pattern space: everything derived from the pattern alone.
//!
//! Built once, never mutated, and shared read-only by every stream.

mod automaton;
mod rmq;
mod suffix_array;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub use automaton::Locus;
use automaton::SubstringAutomaton;
use rmq::Rmq;

use crate::error::BuildError;
use crate::space::{vec_words, words_for_bytes, SpaceUsage};
use crate::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Mismatch,
    Difference,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Mismatch => "mismatch",
            Mode::Difference => "difference",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "mismatch" => Ok(Mode::Mismatch),
            "difference" => Ok(Mode::Difference),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

const NO_OCCURRENCE: u32 = u32::MAX;

/// Constant-time longest-common-extension between two suffixes of one string.
#[derive(Debug, Clone)]
struct SuffixLce {
    rank: Vec<u32>,
    lcp: Rmq,
}

impl SuffixLce {
    fn new(s: &[Symbol]) -> Self {
        let sa = suffix_array::suffix_array(s);
        let rank = suffix_array::inverse(&sa);
        let lcp = suffix_array::lcp_array(s, &sa, &rank);
        Self {
            rank,
            lcp: Rmq::new(lcp),
        }
    }

    #[inline]
    fn query(&self, a: usize, b: usize) -> usize {
        let n = self.rank.len();
        if a >= n || b >= n {
            return 0;
        }
        if a == b {
            return n - a;
        }
        let (ra, rb) = (self.rank[a] as usize, self.rank[b] as usize);
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.lcp.min(lo + 1, hi) as usize
    }

    fn heap_words(&self) -> usize {
        vec_words(&self.rank) + self.lcp.heap_words()
    }
}

/// Immutable preprocessing output shared by all streams.
#[derive(Debug, Clone)]
pub struct PatternSpace {
    pattern: Vec<Symbol>,
    mode: Mode,
    k: usize,
    /// Shift dictionaries `D_0 ..= D_m` flattened into one table keyed by
    /// `(j << 8) | symbol`; the value is the border length `j'`.
    shifts: HashMap<u64, u32>,
    shift_entries: usize,
    forward: SuffixLce,
    reverse: SuffixLce,
    automaton: SubstringAutomaton,
    first_occurrence: Box<[u32; 256]>,
}

/// KMP prefix function: `border[j]` = longest proper border of `P[..j]`, `j` in `1..=m`.
fn borders(p: &[Symbol]) -> Vec<usize> {
    let m = p.len();
    let mut border = vec![0usize; m + 1];
    let mut b = 0usize;
    for j in 1..m {
        while b > 0 && p[j] != p[b] {
            b = border[b];
        }
        if p[j] == p[b] {
            b += 1;
        }
        border[j + 1] = b;
    }
    border
}

/// `D_j` for `j in 0..=m`, each derived from `D_f` (f = border of `P[..j]`)
/// plus the pair `(P[f], f)`.
fn shift_dictionaries(p: &[Symbol]) -> Vec<Vec<(Symbol, u32)>> {
    let m = p.len();
    let border = borders(p);
    let mut dicts: Vec<Vec<(Symbol, u32)>> = vec![Vec::new(); m + 1];
    for j in 1..=m {
        let f = border[j];
        if f == 0 {
            continue;
        }
        let next = p.get(j).copied();
        let mut d: Vec<(Symbol, u32)> = dicts[f]
            .iter()
            .copied()
            .filter(|&(sym, _)| Some(sym) != next)
            .collect();
        if Some(p[f]) != next {
            d.push((p[f], f as u32));
        }
        dicts[j] = d;
    }
    dicts
}

impl PatternSpace {
    pub fn build(pattern: &[Symbol], mode: Mode, k: usize) -> Result<Self, BuildError> {
        if pattern.is_empty() {
            return Err(BuildError::EmptyPattern);
        }
        if pattern.len() >= (u32::MAX >> 1) as usize {
            return Err(BuildError::PatternTooLong(pattern.len()));
        }
        match mode {
            Mode::Exact if k != 0 => return Err(BuildError::InvalidBound { mode, k }),
            Mode::Difference if k == 0 => return Err(BuildError::InvalidBound { mode, k }),
            _ if k > u8::MAX as usize - 1 => return Err(BuildError::InvalidBound { mode, k }),
            _ => {}
        }

        let dicts = shift_dictionaries(pattern);
        let shift_entries = dicts.iter().map(Vec::len).sum();
        let mut shifts = HashMap::with_capacity(shift_entries);
        for (j, d) in dicts.iter().enumerate() {
            for &(sym, to) in d {
                shifts.insert(((j as u64) << 8) | u64::from(sym), to);
            }
        }

        let mut first_occurrence = Box::new([NO_OCCURRENCE; 256]);
        for (j, &sym) in pattern.iter().enumerate().rev() {
            first_occurrence[sym as usize] = j as u32;
        }
        let reversed: Vec<Symbol> = pattern.iter().rev().copied().collect();

        Ok(Self {
            pattern: pattern.to_vec(),
            mode,
            k,
            shifts,
            shift_entries,
            forward: SuffixLce::new(pattern),
            reverse: SuffixLce::new(&reversed),
            automaton: SubstringAutomaton::new(pattern),
            first_occurrence,
        })
    }

    pub fn pattern(&self) -> &[Symbol] {
        &self.pattern
    }

    /// Pattern length `m`.
    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The `(symbol, j')` entries of `D_j`, sorted by symbol.
    pub fn shift_dict(&self, j: usize) -> Vec<(Symbol, usize)> {
        let mut out: Vec<(Symbol, usize)> = (0..=255u8)
            .filter_map(|sym| self.shift_entry(j, sym).map(|to| (sym, to)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Total number of dictionary entries over `D_0 ..= D_m`.
    pub fn shift_entries(&self) -> usize {
        self.shift_entries
    }

    #[inline]
    fn shift_entry(&self, j: usize, sym: Symbol) -> Option<usize> {
        self.shifts
            .get(&(((j as u64) << 8) | u64::from(sym)))
            .map(|&to| to as usize)
    }

    /// Next KMP state from matched-prefix length `j` on input `sym`, with a
    /// single dictionary probe.
    #[inline]
    pub fn shift_lookup(&self, j: usize, sym: Symbol) -> usize {
        debug_assert!(j <= self.len());
        if self.pattern.get(j) == Some(&sym) {
            return j + 1;
        }
        match self.shift_entry(j, sym) {
            Some(to) => to + 1,
            None => usize::from(self.pattern[0] == sym),
        }
    }

    /// Longest common prefix of `P[a..]` and `P[b..]`; index `m` is the empty suffix.
    #[inline]
    pub fn lce_pp(&self, a: usize, b: usize) -> usize {
        self.forward.query(a, b)
    }

    /// Longest common suffix of the prefixes `P[..a]` and `P[..b]`.
    #[inline]
    pub fn lcs_pp(&self, a: usize, b: usize) -> usize {
        let m = self.len();
        if a == 0 || b == 0 {
            return 0;
        }
        self.reverse.query(m - a, m - b)
    }

    /// Locus of the empty string.
    pub fn locus_start(&self) -> Locus {
        self.automaton.start()
    }

    /// Locus of `u·sym` if that string occurs in the pattern.
    #[inline]
    pub fn locus_extend(&self, loc: Locus, sym: Symbol) -> Option<Locus> {
        self.automaton.extend(loc, sym)
    }

    /// Some `j` with `P[j .. j + |u|] = u`.
    #[inline]
    pub fn locus_position(&self, loc: Locus) -> usize {
        self.automaton.position(loc)
    }

    /// Some `j` with `P[j] = sym`.
    pub fn first_occurrence(&self, sym: Symbol) -> Option<usize> {
        match self.first_occurrence[sym as usize] {
            NO_OCCURRENCE => None,
            j => Some(j as usize),
        }
    }

    pub fn contains_symbol(&self, sym: Symbol) -> bool {
        self.first_occurrence[sym as usize] != NO_OCCURRENCE
    }
}

impl SpaceUsage for PatternSpace {
    fn words(&self) -> usize {
        let slot = std::mem::size_of::<(u64, u32)>() + 1;
        // pattern, mode, k, shift table header, entry count
        5 + words_for_bytes(self.pattern.capacity())
            + words_for_bytes(self.shifts.capacity() * slot)
            + self.forward.heap_words()
            + self.reverse.heap_words()
            + self.automaton.heap_words()
            + words_for_bytes(std::mem::size_of::<[u32; 256]>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ps(p: &[u8]) -> PatternSpace {
        PatternSpace::build(p, Mode::Exact, 0).unwrap()
    }

    /// Direct reading of the definition: for each border `j'` of `P[..j]`
    /// (0 < j' < j) with `P[j'] != P[j]`, keep the largest per symbol.
    fn brute_dict(p: &[u8], j: usize) -> Vec<(u8, usize)> {
        let mut best: HashMap<u8, usize> = HashMap::new();
        for jp in 1..j {
            if p[..jp] == p[j - jp..j] && p.get(j) != Some(&p[jp]) {
                let e = best.entry(p[jp]).or_insert(jp);
                *e = (*e).max(jp);
            }
        }
        let mut v: Vec<_> = best.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Textbook KMP state transition: longest prefix of P that is a suffix of
    /// `P[..j]·sym`, found by trying every candidate length.
    fn kmp_step(p: &[u8], j: usize, sym: u8) -> usize {
        let mut text = p[..j].to_vec();
        text.push(sym);
        (0..=p.len().min(text.len()))
            .rev()
            .find(|&l| p[..l] == text[text.len() - l..])
            .unwrap()
    }

    #[test]
    fn abcabd_dictionaries() {
        let s = ps(b"abcabd");
        for j in 0..5 {
            assert!(s.shift_dict(j).is_empty(), "D_{j} should be empty");
        }
        assert_eq!(s.shift_dict(5), vec![(b'c', 2)]);
        assert_eq!(brute_dict(b"abcabd", 5), vec![(b'c', 2)]);
    }

    #[test]
    fn distinct_symbols_have_no_shifts() {
        let s = ps(b"abcd");
        assert_eq!(s.shift_entries(), 0);
    }

    #[test]
    fn abcabd_lookups() {
        let s = ps(b"abcabd");
        assert_eq!(s.shift_lookup(5, b'c'), 3);
        assert_eq!(s.shift_lookup(5, b'd'), 6);
        assert_eq!(s.shift_lookup(5, b'z'), 0);
        assert_eq!(kmp_step(b"abcabd", 5, b'c'), 3);
    }

    #[test]
    fn babbac_lce() {
        let s = ps(b"babbac");
        assert_eq!(s.lce_pp(0, 2), 1);
        assert_eq!(s.lce_pp(3, 3), 3);
        assert_eq!(s.lce_pp(6, 2), 0);
        // suffix "b" is common to "babb" and "b"
        assert_eq!(s.lcs_pp(4, 1), 1);
        assert_eq!(s.lcs_pp(4, 4), 4);
        assert_eq!(s.lcs_pp(0, 3), 0);
    }

    #[test]
    fn babbac_locus() {
        let s = ps(b"babbac");
        let a = s.locus_extend(s.locus_start(), b'a').unwrap();
        let ab = s.locus_extend(a, b'b').unwrap();
        assert!(s.locus_extend(ab, b'c').is_none());
        assert!(s.locus_extend(ab, b'z').is_none());
        let mut loc = s.locus_start();
        for &c in b"abba" {
            loc = s.locus_extend(loc, c).unwrap();
        }
        assert_eq!(s.locus_position(loc), 1);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            PatternSpace::build(b"", Mode::Exact, 0).unwrap_err(),
            BuildError::EmptyPattern
        );
        assert!(PatternSpace::build(b"ab", Mode::Exact, 1).is_err());
        assert!(PatternSpace::build(b"ab", Mode::Difference, 0).is_err());
        assert!(PatternSpace::build(b"ab", Mode::Mismatch, 0).is_ok());
    }

    fn pattern_strategy() -> impl Strategy<Value = Vec<u8>> {
        prop_oneof![
            proptest::collection::vec(b'a'..b'c', 1..=256),
            proptest::collection::vec(b'a'..b'e', 1..=256),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn dictionaries_match_definition(p in pattern_strategy()) {
            let s = ps(&p);
            for j in 0..=p.len() {
                prop_assert_eq!(s.shift_dict(j), brute_dict(&p, j));
            }
        }

        #[test]
        fn dictionary_sum_and_unique_shifts(p in pattern_strategy()) {
            let s = ps(&p);
            let m = p.len();
            prop_assert!(s.shift_entries() <= m + 1);
            let mut seen = std::collections::HashSet::new();
            for j in 0..m {
                for (_, jp) in s.shift_dict(j) {
                    prop_assert!(seen.insert(j - jp), "shift {} repeated", j - jp);
                }
            }
        }

        #[test]
        fn lookup_is_the_kmp_automaton(p in proptest::collection::vec(b'a'..b'd', 1..40)) {
            let s = ps(&p);
            for j in 0..=p.len() {
                for sym in b'a'..=b'd' {
                    prop_assert_eq!(s.shift_lookup(j, sym), kmp_step(&p, j, sym));
                }
            }
        }

        #[test]
        fn lce_and_lcs_match_scans(p in proptest::collection::vec(b'a'..b'c', 1..=128)) {
            let s = ps(&p);
            let m = p.len();
            for a in 0..=m {
                for b in 0..=m {
                    let fwd = p[a..].iter().zip(&p[b..]).take_while(|(x, y)| x == y).count();
                    prop_assert_eq!(s.lce_pp(a, b), fwd);
                    let rev = p[..a].iter().rev().zip(p[..b].iter().rev()).take_while(|(x, y)| x == y).count();
                    prop_assert_eq!(s.lcs_pp(a, b), rev);
                }
            }
        }

        #[test]
        fn locus_extends_iff_substring(p in proptest::collection::vec(b'a'..b'd', 1..40),
                                       u in proptest::collection::vec(b'a'..b'e', 1..12)) {
            let s = ps(&p);
            let mut loc = Some(s.locus_start());
            for l in 1..=u.len() {
                loc = loc.and_then(|x| s.locus_extend(x, u[l - 1]));
                let occurs = p.windows(l).any(|w| w == &u[..l]);
                prop_assert_eq!(loc.is_some(), occurs);
                if let Some(x) = loc {
                    let j = s.locus_position(x);
                    prop_assert_eq!(&p[j..j + l], &u[..l]);
                }
            }
        }
    }
}
