//! Brute-force reference implementations written straight from the metric
//! definitions. Nothing here calls into the library's metric code.

#![allow(dead_code)]

pub const AES_SBOX: [u32; 256] = [
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
];

// Exact values from an arbitrary-precision enumeration of the definitions.
pub const AES_CCV: f64 = 926407.0 / 8323200.0;
pub const AES_TO: f64 = 32069.0 / 4080.0;
pub const AES_MTO0: f64 = 28027.0 / 4080.0;
pub const AES_RTO0: f64 = 179.0 / 24.0;

fn hw(v: u32) -> i64 {
    let mut v = v;
    let mut c = 0;
    while v != 0 {
        c += (v & 1) as i64;
        v >>= 1;
    }
    c
}

/// Expected squared leakage difference for every ordered key pair
/// `(k_i, k_j)`, `k_i ≠ k_j`, taken over all inputs.
fn pair_expectations(table: &[u32]) -> Vec<f64> {
    let size = table.len();
    let mut out = Vec::with_capacity(size * (size - 1));
    for ki in 0..size {
        for kj in 0..size {
            if ki == kj {
                continue;
            }
            let s: i64 = (0..size)
                .map(|x| {
                    let d = hw(table[x ^ ki]) - hw(table[x ^ kj]);
                    d * d
                })
                .sum();
            out.push(s as f64 / size as f64);
        }
    }
    out
}

/// CCV as the variance over all ordered key pairs.
pub fn ccv_pairs(table: &[u32]) -> f64 {
    let e = pair_expectations(table);
    let count = e.len() as f64;
    let mean = e.iter().sum::<f64>() / count;
    e.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / count
}

/// Integer proportional to the ordered-pair CCV (`P·ΣT² − (ΣT)²`), for
/// exact comparisons.
pub fn ccv_pairs_key(table: &[u32]) -> i128 {
    let size = table.len();
    let (mut sum, mut sum_sq, mut count) = (0i128, 0i128, 0i128);
    for ki in 0..size {
        for kj in 0..size {
            if ki == kj {
                continue;
            }
            let t: i128 = (0..size)
                .map(|x| {
                    let d = (hw(table[x ^ ki]) - hw(table[x ^ kj])) as i128;
                    d * d
                })
                .sum();
            sum += t;
            sum_sq += t * t;
            count += 1;
        }
    }
    count * sum_sq - sum * sum
}

fn bit(v: u32, i: u32) -> u32 {
    (v >> i) & 1
}

pub fn cross(table: &[u32], i: u32, j: u32, alpha: usize) -> i64 {
    (0..table.len())
        .map(|x| {
            if bit(table[x], i) ^ bit(table[x ^ alpha], j) == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

fn finish(m: u32, size: usize, total: i64) -> f64 {
    let den = (size * size - size) as f64;
    m as f64 - total as f64 / den
}

pub fn to(table: &[u32], m: u32) -> f64 {
    let size = table.len();
    let total: i64 = (1..size)
        .map(|a| {
            let d: i64 = (0..size).map(|x| hw(table[x] ^ table[x ^ a])).sum();
            (m as i64 * size as i64 - 2 * d).abs()
        })
        .sum();
    finish(m, size, total)
}

fn sgn(beta: u32, i: u32, j: u32) -> i64 {
    if bit(beta, i) ^ bit(beta, j) == 0 {
        1
    } else {
        -1
    }
}

pub fn mto_beta(table: &[u32], m: u32, beta: u32) -> f64 {
    let size = table.len();
    let mut total = 0;
    for a in 1..size {
        for j in 0..m {
            let s: i64 = (0..m)
                .map(|i| sgn(beta, i, j) * cross(table, i, j, a))
                .sum();
            total += s.abs();
        }
    }
    finish(m, size, total)
}

pub fn rto_beta(table: &[u32], m: u32, beta: u32) -> f64 {
    let size = table.len();
    let mut total = 0;
    for a in 1..size {
        let mut s = 0;
        for j in 0..m {
            for i in 0..m {
                s += sgn(beta, i, j) * cross(table, i, j, a);
            }
        }
        total += s.abs();
    }
    finish(m, size, total)
}

/// Max over every `β ∈ {0,1}^m`, no symmetry shortcut.
pub fn mto_full(table: &[u32], m: u32) -> f64 {
    (0..1u32 << m)
        .map(|b| mto_beta(table, m, b))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn rto_full(table: &[u32], m: u32) -> f64 {
    (0..1u32 << m)
        .map(|b| rto_beta(table, m, b))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `true` when no swap of two outputs with different weights strictly
/// increases CCV (exact comparison).
pub fn is_local_optimum(table: &[u32]) -> bool {
    let base = ccv_pairs_key(table);
    let mut t = table.to_vec();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if hw(t[i]) == hw(t[j]) {
                continue;
            }
            t.swap(i, j);
            let better = ccv_pairs_key(&t) > base;
            t.swap(i, j);
            if better {
                return false;
            }
        }
    }
    true
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
