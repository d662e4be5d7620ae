//! In-place fast Walsh-Hadamard transform over integers.

/// Unnormalized FWHT; `data.len()` must be a power of two.
///
/// Applying it twice multiplies every entry by `data.len()`.
pub fn fwht(data: &mut [i64]) {
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Walsh spectrum of the ±1 sign sequence of output bit `bit`.
pub fn component_spectrum(table: &[u32], bit: u32) -> Vec<i64> {
    let mut signs: Vec<i64> = table
        .iter()
        .map(|&v| if (v >> bit) & 1 == 0 { 1 } else { -1 })
        .collect();
    fwht(&mut signs);
    signs
}
