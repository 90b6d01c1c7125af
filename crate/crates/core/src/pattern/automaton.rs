//! Suffix automaton of the pattern, used to recognise pattern substrings
//! one symbol at a time.

use std::collections::HashMap;

use crate::space::words_for_bytes;
use crate::Symbol;

/// A recognised pattern substring `u`: the automaton state reached by `u`
/// together with `|u|`. Occupies two words of text space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Locus {
    pub(crate) state: u32,
    pub(crate) len: u32,
}

impl Locus {
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SubstringAutomaton {
    /// End index of the first occurrence of the strings of each state.
    first_end: Vec<u32>,
    /// `(state << 8 | symbol) -> state`, frozen after construction.
    next: HashMap<u64, u32>,
}

struct BuildState {
    len: u32,
    link: i64,
    first_end: u32,
    edges: Vec<(Symbol, u32)>,
}

fn edge(edges: &[(Symbol, u32)], sym: Symbol) -> Option<u32> {
    edges.iter().find(|e| e.0 == sym).map(|e| e.1)
}

fn set_edge(edges: &mut Vec<(Symbol, u32)>, sym: Symbol, to: u32) {
    match edges.iter_mut().find(|e| e.0 == sym) {
        Some(e) => e.1 = to,
        None => edges.push((sym, to)),
    }
}

impl SubstringAutomaton {
    pub(crate) fn new(pattern: &[Symbol]) -> Self {
        let mut st = vec![BuildState {
            len: 0,
            link: -1,
            first_end: 0,
            edges: Vec::new(),
        }];
        let mut last = 0usize;
        for (i, &c) in pattern.iter().enumerate() {
            let cur = st.len();
            st.push(BuildState {
                len: st[last].len + 1,
                link: 0,
                first_end: i as u32,
                edges: Vec::new(),
            });
            let mut p = last as i64;
            while p >= 0 && edge(&st[p as usize].edges, c).is_none() {
                set_edge(&mut st[p as usize].edges, c, cur as u32);
                p = st[p as usize].link;
            }
            if p >= 0 {
                let p_idx = p as usize;
                let q = edge(&st[p_idx].edges, c).unwrap() as usize;
                if st[p_idx].len + 1 == st[q].len {
                    st[cur].link = q as i64;
                } else {
                    let clone = st.len();
                    st.push(BuildState {
                        len: st[p_idx].len + 1,
                        link: st[q].link,
                        first_end: st[q].first_end,
                        edges: st[q].edges.clone(),
                    });
                    let mut p = p;
                    while p >= 0 && edge(&st[p as usize].edges, c) == Some(q as u32) {
                        set_edge(&mut st[p as usize].edges, c, clone as u32);
                        p = st[p as usize].link;
                    }
                    st[q].link = clone as i64;
                    st[cur].link = clone as i64;
                }
            }
            last = cur;
        }

        let mut next = HashMap::new();
        for (s, state) in st.iter().enumerate() {
            for &(c, to) in &state.edges {
                next.insert(key(s as u32, c), to);
            }
        }
        next.shrink_to_fit();
        Self {
            first_end: st.iter().map(|s| s.first_end).collect(),
            next,
        }
    }

    pub(crate) fn start(&self) -> Locus {
        Locus { state: 0, len: 0 }
    }

    #[inline]
    pub(crate) fn extend(&self, loc: Locus, sym: Symbol) -> Option<Locus> {
        self.next.get(&key(loc.state, sym)).map(|&state| Locus {
            state,
            len: loc.len + 1,
        })
    }

    /// Some `j` with `P[j .. j + |u|] = u`.
    #[inline]
    pub(crate) fn position(&self, loc: Locus) -> usize {
        if loc.len == 0 {
            return 0;
        }
        (self.first_end[loc.state as usize] + 1 - loc.len) as usize
    }

    pub(crate) fn heap_words(&self) -> usize {
        // hashbrown: one control byte plus the (u64, u32) slot per bucket
        let slot = std::mem::size_of::<(u64, u32)>() + 1;
        crate::space::vec_words(&self.first_end) + words_for_bytes(self.next.capacity() * slot)
    }
}

#[inline]
fn key(state: u32, sym: Symbol) -> u64 {
    (u64::from(state) << 8) | u64::from(sym)
}
