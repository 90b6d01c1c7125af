use crate::pattern::PatternSpace;
use crate::space::SpaceUsage;
use crate::window::RegionWindow;
use crate::{Counters, MatchReport, Symbol, Verdict};

/// Text space of one stream in k-mismatch mode: the `4(k+1)` most recent
/// p-regions.
#[derive(Debug, Clone)]
pub struct MismatchState {
    window: RegionWindow,
    k: usize,
}

impl MismatchState {
    pub fn new(k: usize) -> Self {
        Self {
            window: RegionWindow::with_capacity(4 * (k + 1)),
            k,
        }
    }

    pub fn window(&self) -> &RegionWindow {
        &self.window
    }

    pub fn text_len(&self) -> u64 {
        self.window.text_len()
    }

    /// Appends `sym` and decides the alignment ending at it with at most
    /// `k+1` reverse LCE jumps, right to left, skipping one mismatch per jump.
    pub fn push(&mut self, ps: &PatternSpace, sym: Symbol, ctr: &mut Counters) -> MatchReport {
        self.window.append_symbol(ps, sym, ctr);
        let position = self.window.text_len() - 1;
        let m = ps.len();
        if self.window.text_len() < m as u64 {
            return MatchReport {
                position,
                verdict: Verdict::NoAlignment,
            };
        }

        let oow_before = ctr.oow_events;
        let mut pos = position;
        // pattern symbols still to compare: P[..remaining]
        let mut remaining = m;
        let mut mismatches = 0usize;
        let mut hint = self.window.last_seq();
        let verdict = loop {
            let (res, at) = self
                .window
                .lcs_from(ps, hint, pos, remaining - 1, remaining, ctr);
            let Ok(l) = res else { break Verdict::NoMatch };
            if l == remaining {
                break Verdict::Match {
                    distance: mismatches as u32,
                };
            }
            mismatches += 1;
            if mismatches > self.k {
                break Verdict::NoMatch;
            }
            remaining -= l + 1;
            if remaining == 0 {
                break Verdict::Match {
                    distance: mismatches as u32,
                };
            }
            pos -= l as u64 + 1;
            hint = at;
        };
        ctr.output_oow += ctr.oow_events - oow_before;
        MatchReport { position, verdict }
    }
}

impl SpaceUsage for MismatchState {
    fn words(&self) -> usize {
        1 + self.window.words()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_hamming;
    use crate::Mode;
    use proptest::prelude::*;

    fn run(p: &[u8], t: &[u8], k: usize) -> (Vec<MatchReport>, Counters, u64) {
        let ps = PatternSpace::build(p, Mode::Mismatch, k).unwrap();
        let mut st = MismatchState::new(k);
        let mut total = Counters::new();
        let mut worst = 0;
        let reports = t
            .iter()
            .map(|&c| {
                let mut ctr = Counters::new();
                let r = st.push(&ps, c, &mut ctr);
                worst = worst.max(ctr.ops);
                let oracle = oracle_hamming(p, &t[..=r.position as usize], k);
                if oracle.last().unwrap().is_match() {
                    assert_eq!(ctr.output_oow, 0, "window too short for a match");
                }
                total.absorb(&ctr);
                r
            })
            .collect();
        (reports, total, worst)
    }

    #[test]
    fn one_mismatch() {
        let (r, _, _) = run(b"abcab", b"zzabxab", 1);
        assert_eq!(r.last().unwrap().verdict, Verdict::Match { distance: 1 });
    }

    #[test]
    fn identity_alignment() {
        for k in [0, 1, 3] {
            let (r, _, _) = run(b"abcab", b"abcab", k);
            assert_eq!(r[4].verdict, Verdict::Match { distance: 0 });
            assert!(r[..4].iter().all(|x| x.verdict == Verdict::NoAlignment));
        }
    }

    #[test]
    fn two_mismatches_exceed_one() {
        let (r, _, _) = run(b"aaaa", b"abab", 1);
        assert_eq!(r[3].verdict, Verdict::NoMatch);
    }

    #[test]
    fn absent_symbols_count_as_mismatches() {
        let (r, _, _) = run(b"abab", b"azaz", 2);
        assert_eq!(r[3].verdict, Verdict::Match { distance: 2 });
    }

    #[test]
    fn k_zero_is_exact_matching() {
        let t = b"abababbabaabab";
        let (r, _, _) = run(b"abab", t, 0);
        let hits: Vec<u64> = r
            .iter()
            .filter(|x| x.is_match())
            .map(|x| x.position)
            .collect();
        assert_eq!(hits, crate::oracle::oracle_exact(b"abab", t));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_oracle(
            p in proptest::collection::vec(b'a'..b'c', 1..=64),
            t in proptest::collection::vec(b'a'..b'd', 0..=300),
            k in prop_oneof![Just(0usize), Just(1), Just(2), Just(4), Just(8)],
        ) {
            let (r, total, worst) = run(&p, &t, k);
            prop_assert_eq!(r, oracle_hamming(&p, &t, k));
            prop_assert!(total.max_overlap <= 3);
            prop_assert!(worst <= 8 * (k as u64 + 1) + 8, "worst push {} ops", worst);
        }
    }
}
