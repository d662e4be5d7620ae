//! Cross-correlation spectrum of the component functions.
//!
//! Component `F_i` is output bit `i` (0-based, least significant first) and
//! `C_{i,j}(α) = Σ_x (−1)^{F_i(x) ⊕ F_j(x⊕α)}`.

use crate::sbox::SBox;
use crate::walsh::{component_spectrum, fwht};

/// Largest `n` for which [`cross_correlation`] uses the direct summation.
pub const NAIVE_MAX_BITS: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCorrelationTable {
    n: u32,
    m: u32,
    // ((i * m) + j) * 2^n + α
    c: Vec<i64>,
}

impl CrossCorrelationTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn get(&self, i: u32, j: u32, alpha: usize) -> i64 {
        self.row(i, j)[alpha]
    }

    /// `C_{i,j}(α)` for all `α`.
    pub fn row(&self, i: u32, j: u32) -> &[i64] {
        let size = 1usize << self.n;
        let start = (i * self.m + j) as usize * size;
        &self.c[start..start + size]
    }

    pub fn entries(&self) -> &[i64] {
        &self.c
    }
}

#[inline]
fn sign(bit: u32) -> i64 {
    1 - 2 * bit as i64
}

/// Direct `O(m² 4^n)` summation.
pub fn cross_correlation_naive(sbox: &SBox) -> CrossCorrelationTable {
    let (n, m) = (sbox.n(), sbox.m());
    let size = sbox.len();
    let table = sbox.table();
    let mut c = Vec::with_capacity((m * m) as usize * size);
    for i in 0..m {
        for j in 0..m {
            for alpha in 0..size {
                let sum: i64 = (0..size)
                    .map(|x| sign(((table[x] >> i) ^ (table[x ^ alpha] >> j)) & 1))
                    .sum();
                c.push(sum);
            }
        }
    }
    CrossCorrelationTable { n, m, c }
}

/// Correlation-theorem route: `C_{i,j} = 2^{-n} · WHT(Ŵ_i · Ŵ_j)`.
pub fn cross_correlation_fast(sbox: &SBox) -> CrossCorrelationTable {
    let (n, m) = (sbox.n(), sbox.m());
    let size = sbox.len();
    let spectra: Vec<Vec<i64>> = (0..m)
        .map(|bit| component_spectrum(sbox.table(), bit))
        .collect();
    let mut c = Vec::with_capacity((m * m) as usize * size);
    let mut buf = vec![0i64; size];
    for wi in &spectra {
        for wj in &spectra {
            for ((b, &a), &z) in buf.iter_mut().zip(wi).zip(wj) {
                *b = a * z;
            }
            fwht(&mut buf);
            c.extend(buf.iter().map(|&v| v >> n));
        }
    }
    CrossCorrelationTable { n, m, c }
}

/// Naive summation for `n ≤ 5`, the transform route above that.
pub fn cross_correlation(sbox: &SBox) -> CrossCorrelationTable {
    if sbox.n() <= NAIVE_MAX_BITS {
        cross_correlation_naive(sbox)
    } else {
        cross_correlation_fast(sbox)
    }
}
