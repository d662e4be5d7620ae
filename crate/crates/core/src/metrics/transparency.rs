//! Transparency order (TO) and its cross-correlation variants MTO and RTO.
//!
//! All three share the shape `m − T / (2^{2n} − 2^n)` where `T` is a sum of
//! absolute correlation terms over nonzero shifts `α`. `T` is accumulated
//! exactly in integers; the only rounding is the final division.
//!
//! MTO and RTO are computed from the Walsh spectra `Ŵ_i` of the components:
//! with `s_i = (−1)^{β_i}` and `G = Σ_i s_i Ŵ_i`,
//!
//! * `Σ_i (−1)^{β_i⊕β_j} C_{i,j}(α) = ±2^{-n} WHT(G · Ŵ_j)(α)` (MTO inner sum),
//! * `Σ_j Σ_i (−1)^{β_i⊕β_j} C_{i,j}(α) = 2^{-n} WHT(G²)(α)` (RTO sum),
//!
//! so neither needs the full `m² 2^n` table. The `*_from_table` functions are
//! the direct reference forms over a [`CrossCorrelationTable`].

use crate::metrics::cross::{CrossCorrelationTable, NAIVE_MAX_BITS};
use crate::sbox::{hamming_weight, SBox};
use crate::walsh::{component_spectrum, fwht};

fn normalizer(n: u32) -> i128 {
    let size = 1i128 << n;
    size * size - size
}

fn finish(m: u32, n: u32, total: i128) -> f64 {
    let den = normalizer(n);
    (m as i128 * den - total) as f64 / den as f64
}

fn sign(beta: u32, bit: u32) -> i64 {
    1 - 2 * ((beta >> bit) & 1) as i64
}

/// `Σ_{α≠0} | m·2^n − 2 Σ_x HW(F(x) ⊕ F(x⊕α)) |`.
fn to_total(sbox: &SBox) -> i128 {
    let size = sbox.len();
    let table = sbox.table();
    let full = sbox.m() as i64 * size as i64;
    (1..size)
        .map(|alpha| {
            let dist: i64 = (0..size)
                .map(|x| hamming_weight(table[x] ^ table[x ^ alpha]) as i64)
                .sum();
            (full - 2 * dist).abs() as i128
        })
        .sum()
}

/// Transparency order, `TO(F) = m − Σ_{α≠0} |m·2^n − 2 Σ_x HW(F(x) ⊕ F(x⊕α))| / (2^{2n} − 2^n)`.
///
/// Summed directly for `n ≤ 5`; above that the diagonal autocorrelations
/// come from the component spectra. Both give the same integer total.
pub fn transparency_order(sbox: &SBox) -> f64 {
    if sbox.n() <= NAIVE_MAX_BITS {
        transparency_order_direct(sbox)
    } else {
        ComponentSpectra::new(sbox).transparency_order()
    }
}

/// TO by direct summation over all `(α, x)`.
pub fn transparency_order_direct(sbox: &SBox) -> f64 {
    finish(sbox.m(), sbox.n(), to_total(sbox))
}

/// TO from the diagonal of a cross-correlation table.
pub fn transparency_order_from_table(table: &CrossCorrelationTable) -> f64 {
    let size = 1usize << table.n();
    let total: i128 = (1..size)
        .map(|alpha| {
            let diag: i64 = (0..table.m()).map(|i| table.get(i, i, alpha)).sum();
            diag.abs() as i128
        })
        .sum();
    finish(table.m(), table.n(), total)
}

fn mto_total_from_table(table: &CrossCorrelationTable, beta: u32) -> i128 {
    let m = table.m();
    let size = 1usize << table.n();
    let mut total = 0i128;
    for alpha in 1..size {
        for j in 0..m {
            let inner: i64 = (0..m)
                .map(|i| sign(beta, i) * sign(beta, j) * table.get(i, j, alpha))
                .sum();
            total += inner.abs() as i128;
        }
    }
    total
}

fn rto_total_from_table(table: &CrossCorrelationTable, beta: u32) -> i128 {
    let m = table.m();
    let size = 1usize << table.n();
    (1..size)
        .map(|alpha| {
            let mut sum = 0i64;
            for j in 0..m {
                for i in 0..m {
                    sum += sign(beta, i) * sign(beta, j) * table.get(i, j, alpha);
                }
            }
            sum.abs() as i128
        })
        .sum()
}

pub fn mto_beta_from_table(table: &CrossCorrelationTable, beta: u32) -> f64 {
    finish(table.m(), table.n(), mto_total_from_table(table, beta))
}

pub fn rto_beta_from_table(table: &CrossCorrelationTable, beta: u32) -> f64 {
    finish(table.m(), table.n(), rto_total_from_table(table, beta))
}

/// Walsh spectra of every component of one S-box.
#[derive(Debug, Clone)]
pub struct ComponentSpectra {
    n: u32,
    m: u32,
    spectra: Vec<Vec<i64>>,
}

impl ComponentSpectra {
    pub fn new(sbox: &SBox) -> Self {
        Self {
            n: sbox.n(),
            m: sbox.m(),
            spectra: (0..sbox.m())
                .map(|bit| component_spectrum(sbox.table(), bit))
                .collect(),
        }
    }

    fn combined(&self, beta: u32) -> Vec<i64> {
        let mut g = vec![0i64; 1 << self.n];
        for (bit, w) in self.spectra.iter().enumerate() {
            let s = sign(beta, bit as u32);
            for (acc, &v) in g.iter_mut().zip(w) {
                *acc += s * v;
            }
        }
        g
    }

    /// `Σ_i C_{i,i}(α) = 2^{-n} WHT(Σ_i Ŵ_i²)(α)`.
    fn to_total(&self) -> i128 {
        let mut acc = vec![0i64; 1 << self.n];
        for w in &self.spectra {
            for (a, &v) in acc.iter_mut().zip(w) {
                *a += v * v;
            }
        }
        fwht(&mut acc);
        acc[1..].iter().map(|&v| (v.abs() >> self.n) as i128).sum()
    }

    pub fn transparency_order(&self) -> f64 {
        finish(self.m, self.n, self.to_total())
    }

    fn mto_total(&self, beta: u32) -> i128 {
        let g = self.combined(beta);
        let mut buf = vec![0i64; g.len()];
        let mut total = 0i128;
        for w in &self.spectra {
            for ((b, &x), &y) in buf.iter_mut().zip(&g).zip(w) {
                *b = x * y;
            }
            fwht(&mut buf);
            total += buf[1..]
                .iter()
                .map(|&v| (v.abs() >> self.n) as i128)
                .sum::<i128>();
        }
        total
    }

    fn rto_total(&self, beta: u32) -> i128 {
        let mut g = self.combined(beta);
        for v in g.iter_mut() {
            *v *= *v;
        }
        fwht(&mut g);
        g[1..].iter().map(|&v| (v.abs() >> self.n) as i128).sum()
    }

    pub fn mto_beta(&self, beta: u32) -> f64 {
        finish(self.m, self.n, self.mto_total(beta))
    }

    pub fn rto_beta(&self, beta: u32) -> f64 {
        finish(self.m, self.n, self.rto_total(beta))
    }

    /// Max over β. `β` and its complement give the same value, so only the
    /// `2^{m−1}` representatives with the top bit clear are scanned.
    pub fn mto(&self) -> f64 {
        let best = representatives(self.m)
            .map(|b| self.mto_total(b))
            .min()
            .unwrap();
        finish(self.m, self.n, best)
    }

    pub fn rto(&self) -> f64 {
        let best = representatives(self.m)
            .map(|b| self.rto_total(b))
            .min()
            .unwrap();
        finish(self.m, self.n, best)
    }
}

fn representatives(m: u32) -> std::ops::Range<u32> {
    0..1u32 << (m - 1)
}

pub fn mto_beta(sbox: &SBox, beta: u32) -> f64 {
    ComponentSpectra::new(sbox).mto_beta(beta)
}

pub fn rto_beta(sbox: &SBox, beta: u32) -> f64 {
    ComponentSpectra::new(sbox).rto_beta(beta)
}

/// MTO restricted to `β = 0` (Hamming-weight model).
pub fn mto_beta_zero(sbox: &SBox) -> f64 {
    mto_beta(sbox, 0)
}

/// RTO restricted to `β = 0` (Hamming-weight model).
pub fn rto_beta_zero(sbox: &SBox) -> f64 {
    rto_beta(sbox, 0)
}

pub fn mto(sbox: &SBox) -> f64 {
    ComponentSpectra::new(sbox).mto()
}

pub fn rto(sbox: &SBox) -> f64 {
    ComponentSpectra::new(sbox).rto()
}
