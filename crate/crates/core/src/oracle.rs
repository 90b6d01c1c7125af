//! Brute-force reference matchers.
//!
//! Deliberately naive: every function here works on the full text with
//! quadratic scans or full dynamic-programming tables, and none of them
//! touch the pattern space.

use crate::{MatchReport, Symbol, Verdict};

/// End positions of every occurrence of `p` in `t`, overlapping ones included.
pub fn oracle_exact(p: &[Symbol], t: &[Symbol]) -> Vec<u64> {
    let m = p.len();
    if m == 0 || t.len() < m {
        return Vec::new();
    }
    (m - 1..t.len())
        .filter(|&i| &t[i + 1 - m..=i] == p)
        .map(|i| i as u64)
        .collect()
}

/// Per-arrival verdict of exact matching (NoAlignment until `m` symbols exist).
pub fn oracle_exact_reports(p: &[Symbol], t: &[Symbol]) -> Vec<MatchReport> {
    let m = p.len();
    (0..t.len())
        .map(|i| {
            let verdict = if i + 1 < m {
                Verdict::NoAlignment
            } else if &t[i + 1 - m..=i] == p {
                Verdict::Match { distance: 0 }
            } else {
                Verdict::NoMatch
            };
            MatchReport {
                position: i as u64,
                verdict,
            }
        })
        .collect()
}

/// Per-arrival Hamming distance of `p` against the window ending there,
/// reported only when it is at most `k`.
pub fn oracle_hamming(p: &[Symbol], t: &[Symbol], k: usize) -> Vec<MatchReport> {
    let m = p.len();
    (0..t.len())
        .map(|i| {
            let verdict = if i + 1 < m {
                Verdict::NoAlignment
            } else {
                let d = t[i + 1 - m..=i]
                    .iter()
                    .zip(p)
                    .filter(|(a, b)| a != b)
                    .count();
                if d <= k {
                    Verdict::Match { distance: d as u32 }
                } else {
                    Verdict::NoMatch
                }
            };
            MatchReport {
                position: i as u64,
                verdict,
            }
        })
        .collect()
}

/// Column `col` (`-1` for the base column) of the k-capped table
/// `D[j, i]` over rows `0..m`, computed from scratch over `t[..=col]`.
pub fn kdiff_column(p: &[Symbol], t: &[Symbol], k: usize, col: i64) -> Vec<u32> {
    let cap = k as u32 + 1;
    let m = p.len();
    let mut column: Vec<u32> = (0..m).map(|j| cap.min(j as u32 + 1)).collect();
    for i in 0..=col {
        let sym = t[i as usize];
        // D[-1, i] = 0 for the diagonal of row 0
        let mut diag_prev = 0u32;
        let mut above = 0u32;
        for j in 0..m {
            let left = column[j];
            let value = (left + 1)
                .min(above + 1)
                .min(diag_prev + u32::from(p[j] != sym))
                .min(cap);
            diag_prev = left;
            column[j] = value;
            above = value;
        }
    }
    column
}

/// Per-arrival `min(k+1, D[m-1, i])` using the full table.
pub fn oracle_kdiff_values(p: &[Symbol], t: &[Symbol], k: usize) -> Vec<u32> {
    let cap = k as u32 + 1;
    let m = p.len();
    let mut table = vec![vec![0u32; m]; t.len()];
    for (i, &sym) in t.iter().enumerate() {
        for j in 0..m {
            let left = if i == 0 {
                cap.min(j as u32 + 1)
            } else {
                table[i - 1][j]
            };
            let up = if j == 0 { 0 } else { table[i][j - 1] };
            let diag = match (i, j) {
                (_, 0) => 0,
                (0, _) => cap.min(j as u32),
                _ => table[i - 1][j - 1],
            };
            table[i][j] = (left + 1)
                .min(up + 1)
                .min(diag + u32::from(p[j] != sym))
                .min(cap);
        }
    }
    table.iter().map(|col| col[m - 1]).collect()
}

pub fn oracle_kdiff(p: &[Symbol], t: &[Symbol], k: usize) -> Vec<MatchReport> {
    oracle_kdiff_values(p, t, k)
        .into_iter()
        .enumerate()
        .map(|(i, d)| MatchReport {
            position: i as u64,
            verdict: if d as usize <= k {
                Verdict::Match { distance: d }
            } else {
                Verdict::NoMatch
            },
        })
        .collect()
}

/// Number of p-regions in the greedy left-to-right parse of `t` into pattern
/// substrings, with every symbol absent from `p` forming its own region.
pub fn oracle_min_prep(p: &[Symbol], t: &[Symbol]) -> usize {
    let occurs = |u: &[Symbol]| p.windows(u.len()).any(|w| w == u);
    let mut regions = 0;
    let mut i = 0;
    while i < t.len() {
        regions += 1;
        let mut len = 1;
        if occurs(&t[i..i + 1]) {
            while i + len < t.len() && occurs(&t[i..i + len + 1]) {
                len += 1;
            }
        }
        i += len;
    }
    regions
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_examples() {
        assert_eq!(oracle_exact(b"abab", b"ababab"), vec![3, 5]);
        assert_eq!(oracle_exact(b"xyz", b"xyz"), vec![2]);
        assert!(oracle_exact(b"xyz", b"xyxy").is_empty());
    }

    #[test]
    fn hamming_examples() {
        let r = oracle_hamming(b"abcab", b"zzabxab", 1);
        assert_eq!(r.last().unwrap().verdict, Verdict::Match { distance: 1 });
        let r = oracle_hamming(b"aaaa", b"abab", 1);
        assert_eq!(r[3].verdict, Verdict::NoMatch);
        assert_eq!(r[2].verdict, Verdict::NoAlignment);
        let r = oracle_hamming(b"ab", b"xyxy", 1);
        assert!(r[1..].iter().all(|x| x.verdict == Verdict::NoMatch));
    }

    #[test]
    fn kdiff_examples() {
        let r = oracle_kdiff(b"abc", b"xbc", 1);
        assert_eq!(r[2].verdict, Verdict::Match { distance: 1 });
        let r = oracle_kdiff(b"abcd", b"abcd", 2);
        assert_eq!(r[3].verdict, Verdict::Match { distance: 0 });
        // empty text prefix: D[m-1, -1] = min(k+1, m)
        assert_eq!(kdiff_column(b"abcd", b"", 2, -1)[3], 3);
        assert_eq!(kdiff_column(b"abcd", b"", 9, -1)[3], 4);
    }

    #[test]
    fn kdiff_column_agrees_with_table() {
        let p = b"abbab";
        let t = b"babbbaabab";
        let vals = oracle_kdiff_values(p, t, 3);
        for (i, &v) in vals.iter().enumerate() {
            assert_eq!(kdiff_column(p, t, 3, i as i64)[4], v);
        }
    }

    #[test]
    fn min_prep_examples() {
        assert_eq!(oracle_min_prep(b"babbac", b"abcaababba"), 5);
        assert_eq!(oracle_min_prep(b"babbac", b"babbac"), 1);
        assert_eq!(oracle_min_prep(b"babbac", b"c"), 1);
        assert_eq!(oracle_min_prep(b"ab", b"azzb"), 4);
    }

    #[test]
    fn oracles_are_consistent() {
        let p = b"abaab";
        let t = b"abaababaabbbaabaab";
        let exact = oracle_exact(p, t);
        let ham0: Vec<u64> = oracle_hamming(p, t, 0)
            .iter()
            .filter(|r| r.is_match())
            .map(|r| r.position)
            .collect();
        assert_eq!(exact, ham0);
        let big = 10;
        let ham = oracle_hamming(p, t, big);
        let kd = oracle_kdiff_values(p, t, big);
        for i in p.len() - 1..t.len() {
            assert!(kd[i] <= ham[i].distance().unwrap());
        }
    }
}
