/// Bytes per machine word used by space accounting.
pub const WORD_BYTES: usize = 8;

/// Explicit word accounting for state that lives in pattern space or text space.
///
/// Counts are derived from the stored elements and reserved capacities of
/// each structure, not from allocator statistics, so they are identical on
/// every platform.
pub trait SpaceUsage {
    fn words(&self) -> usize;
}

pub(crate) fn words_for_bytes(bytes: usize) -> usize {
    bytes.div_ceil(WORD_BYTES)
}

pub(crate) fn vec_words<T>(v: &Vec<T>) -> usize {
    words_for_bytes(v.capacity() * std::mem::size_of::<T>())
}
