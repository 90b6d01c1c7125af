//! Linear-space range-minimum queries answered in constant time.
//!
//! The array is cut into 64-wide blocks. A sparse table over block minima
//! handles the whole-block part of a query; inside a block, `masks[i]` holds
//! the monotone stack of positions `<= i` as a bitmask, so the minimum of
//! `[l, i]` within one block is the lowest stack bit at or above `l`.

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct Rmq {
    values: Vec<u32>,
    masks: Vec<u64>,
    /// `table[level][b]` = index of the minimum over blocks `b .. b + 2^level`.
    table: Vec<Vec<u32>>,
}

impl Rmq {
    pub(crate) fn new(values: Vec<u32>) -> Self {
        let n = values.len();
        let mut masks = vec![0u64; n];
        let mut stack: Vec<usize> = Vec::with_capacity(BLOCK);
        for start in (0..n).step_by(BLOCK) {
            stack.clear();
            let mut mask = 0u64;
            for i in start..(start + BLOCK).min(n) {
                while let Some(&top) = stack.last() {
                    if values[top] < values[i] {
                        break;
                    }
                    mask &= !(1u64 << (top - start));
                    stack.pop();
                }
                stack.push(i);
                mask |= 1u64 << (i - start);
                masks[i] = mask;
            }
        }

        let blocks = n.div_ceil(BLOCK);
        let mut rmq = Self {
            values,
            masks,
            table: Vec::new(),
        };
        let base: Vec<u32> = (0..blocks)
            .map(|b| {
                let end = ((b + 1) * BLOCK).min(n) - 1;
                rmq.in_block(b * BLOCK, end) as u32
            })
            .collect();
        let mut table = vec![base];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = table.last().unwrap();
            let level: Vec<u32> = (0..=blocks - 2 * width)
                .map(|b| rmq.argmin(prev[b], prev[b + width]))
                .collect();
            table.push(level);
            width *= 2;
        }
        rmq.table = table;
        rmq
    }

    #[inline]
    fn argmin(&self, a: u32, b: u32) -> u32 {
        if self.values[b as usize] < self.values[a as usize] {
            b
        } else {
            a
        }
    }

    #[inline]
    fn in_block(&self, l: usize, r: usize) -> usize {
        let start = l - l % BLOCK;
        let m = self.masks[r] & (u64::MAX << (l - start));
        start + m.trailing_zeros() as usize
    }

    /// Minimum value over the inclusive range `[l, r]`.
    pub(crate) fn min(&self, l: usize, r: usize) -> u32 {
        debug_assert!(l <= r && r < self.values.len());
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return self.values[self.in_block(l, r)];
        }
        let mut best = self.values[self.in_block(l, bl * BLOCK + BLOCK - 1)];
        best = best.min(self.values[self.in_block(br * BLOCK, r)]);
        if bl + 1 < br {
            let (lo, hi) = (bl + 1, br - 1);
            let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
            let row = &self.table[level];
            let a = row[lo];
            let b = row[hi + 1 - (1 << level)];
            best = best.min(self.values[self.argmin(a, b) as usize]);
        }
        best
    }

    pub(crate) fn heap_words(&self) -> usize {
        use crate::space::vec_words;
        vec_words(&self.values)
            + vec_words(&self.masks)
            + self.table.iter().map(vec_words).sum::<usize>()
    }
}
