//! Suffix array, inverse and LCP array of a byte string.

/// Prefix doubling with two counting-sort passes per round: `O(n log n)`.
pub(crate) fn suffix_array(s: &[u8]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_unstable_by_key(|&i| s[i]);
    let mut rank = vec![0usize; n];
    for w in 1..n {
        rank[sa[w]] = rank[sa[w - 1]] + usize::from(s[sa[w]] != s[sa[w - 1]]);
    }

    let mut tmp = vec![0usize; n];
    let mut cnt = vec![0usize; n + 1];
    let mut h = 1;
    while h < n && rank[sa[n - 1]] < n - 1 {
        // second key: rank[i + h] (+1), with 0 for suffixes shorter than h
        let key2 = |i: usize| if i + h < n { rank[i + h] + 1 } else { 0 };
        let key1 = |i: usize| rank[i];

        cnt.iter_mut().for_each(|c| *c = 0);
        for i in 0..n {
            cnt[key2(i)] += 1;
        }
        for b in 1..=n {
            cnt[b] += cnt[b - 1];
        }
        for i in (0..n).rev() {
            let k = key2(i);
            cnt[k] -= 1;
            tmp[cnt[k]] = i;
        }

        cnt.iter_mut().for_each(|c| *c = 0);
        for &i in &tmp {
            cnt[key1(i)] += 1;
        }
        for b in 1..=n {
            cnt[b] += cnt[b - 1];
        }
        for &i in tmp.iter().rev() {
            let k = key1(i);
            cnt[k] -= 1;
            sa[cnt[k]] = i;
        }

        let mut next = vec![0usize; n];
        for w in 1..n {
            let (a, b) = (sa[w - 1], sa[w]);
            let differs = key1(a) != key1(b) || key2(a) != key2(b);
            next[b] = next[a] + usize::from(differs);
        }
        rank = next;
        h *= 2;
    }
    sa.into_iter().map(|i| i as u32).collect()
}

pub(crate) fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut rank = vec![0u32; sa.len()];
    for (r, &i) in sa.iter().enumerate() {
        rank[i as usize] = r as u32;
    }
    rank
}

/// Kasai et al. `lcp[r]` = LCP of suffixes `sa[r-1]` and `sa[r]`, `lcp[0] = 0`.
pub(crate) fn lcp_array(s: &[u8], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
