//! S-box lookup tables, the text format, and Hamming-weight utilities.

use std::fmt;

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::rng::RngStream;

pub const MIN_BITS: u32 = 1;
pub const MAX_BITS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SBoxError {
    #[error("unsupported dimensions {n}x{m}: need 2 <= n <= 16 and 1 <= m <= 16")]
    UnsupportedDimensions { n: u32, m: u32 },
    #[error("expected {expected} entries, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("entry {index} has value {value}, which does not fit in {m} bits")]
    ValueOutOfRange { index: usize, value: u64, m: u32 },
    #[error("malformed token {token:?}")]
    MalformedToken { token: String },
    #[error("position {index} out of range for a table of {len} entries")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("swap positions must differ (both {0})")]
    SamePosition(usize),
}

/// Number of set bits.
#[inline]
pub fn hamming_weight(v: u32) -> u32 {
    v.count_ones()
}

/// An n-bit to m-bit S-box stored as its lookup table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SBox {
    n: u32,
    m: u32,
    table: Vec<u32>,
    bijective: bool,
}

fn check_dims(n: u32, m: u32) -> Result<(), SBoxError> {
    if !(2..=MAX_BITS).contains(&n) || !(MIN_BITS..=MAX_BITS).contains(&m) {
        return Err(SBoxError::UnsupportedDimensions { n, m });
    }
    Ok(())
}

fn is_permutation(table: &[u32]) -> bool {
    let mut seen = vec![false; table.len()];
    for &v in table {
        match seen.get_mut(v as usize) {
            Some(slot) if !*slot => *slot = true,
            _ => return false,
        }
    }
    true
}

impl SBox {
    pub fn new(n: u32, m: u32, table: Vec<u32>) -> Result<Self, SBoxError> {
        check_dims(n, m)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(SBoxError::WrongLength {
                expected,
                found: table.len(),
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >> m != 0) {
            return Err(SBoxError::ValueOutOfRange {
                index,
                value: value.into(),
                m,
            });
        }
        let bijective = n == m && is_permutation(&table);
        Ok(Self {
            n,
            m,
            table,
            bijective,
        })
    }

    pub fn identity(n: u32) -> Result<Self, SBoxError> {
        Self::new(n, n, (0..1u32 << n).collect())
    }

    pub fn constant(n: u32, m: u32, value: u32) -> Result<Self, SBoxError> {
        check_dims(n, m)?;
        Self::new(n, m, vec![value; 1 << n])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of inputs, `2^n`.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    #[inline]
    pub fn get(&self, x: usize) -> u32 {
        self.table[x]
    }

    /// Hamming weight of every output, in input order.
    pub fn hw_sequence(&self) -> Vec<u32> {
        self.table.iter().map(|&v| hamming_weight(v)).collect()
    }

    /// Copy of `self` with the outputs at `i` and `j` exchanged.
    pub fn swap_outputs(&self, i: usize, j: usize) -> Result<Self, SBoxError> {
        let len = self.len();
        for index in [i, j] {
            if index >= len {
                return Err(SBoxError::IndexOutOfRange { index, len });
            }
        }
        if i == j {
            return Err(SBoxError::SamePosition(i));
        }
        let mut out = self.clone();
        out.table.swap(i, j);
        Ok(out)
    }

    pub(crate) fn swap_in_place(&mut self, i: usize, j: usize) {
        self.table.swap(i, j);
    }

    /// Serializes as whitespace-separated decimal values, 16 per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (row, chunk) in self.table.chunks(16).enumerate() {
            if row > 0 {
                out.push('\n');
            }
            let line: Vec<String> = chunk.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
        }
        out.push('\n');
        out
    }
}

impl fmt::Display for SBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_token(token: &str) -> Result<u64, SBoxError> {
    let malformed = || SBoxError::MalformedToken {
        token: token.to_string(),
    };
    let (digits, radix) = match token
        .strip_prefix("0x")
        .or_else(|| token.strip_prefix("0X"))
    {
        Some(hex) => (hex, 16),
        None => (token, 10),
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_digit(radix)) {
        return Err(malformed());
    }
    u64::from_str_radix(digits, radix).map_err(|_| malformed())
}

/// Parses a row-major list of integers (decimal or `0x` hex) separated by
/// whitespace and/or commas.
pub fn parse_sbox(text: &str, n: u32, m: u32) -> Result<SBox, SBoxError> {
    check_dims(n, m)?;
    let mut values = Vec::with_capacity(1 << n);
    for token in text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
    {
        values.push(parse_token(token)?);
    }
    let expected = 1usize << n;
    if values.len() != expected {
        return Err(SBoxError::WrongLength {
            expected,
            found: values.len(),
        });
    }
    let mut table = Vec::with_capacity(expected);
    for (index, value) in values.into_iter().enumerate() {
        if value >> m != 0 {
            return Err(SBoxError::ValueOutOfRange { index, value, m });
        }
        table.push(value as u32);
    }
    SBox::new(n, m, table)
}

/// A uniformly random permutation of `0..2^n`.
pub fn random_bijective_sbox(n: u32, rng: &RngStream) -> Result<SBox, SBoxError> {
    check_dims(n, n)?;
    let mut table: Vec<u32> = (0..1u32 << n).collect();
    table.shuffle(&mut rng.rng());
    Ok(SBox {
        n,
        m: n,
        table,
        bijective: true,
    })
}

/// Input positions grouped by the Hamming weight of their output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HwClasses {
    positions: Vec<Vec<usize>>,
    values: Vec<Vec<u32>>,
}

impl HwClasses {
    /// Positions whose output has weight `w` (ascending).
    pub fn positions(&self, w: u32) -> &[usize] {
        &self.positions[w as usize]
    }

    /// Outputs of weight `w`, listed in the order of [`Self::positions`].
    pub fn values(&self, w: u32) -> &[u32] {
        &self.values[w as usize]
    }

    /// Class sizes indexed by weight `0..=m`.
    pub fn sizes(&self) -> Vec<usize> {
        self.positions.iter().map(Vec::len).collect()
    }

    pub fn max_weight(&self) -> u32 {
        self.positions.len() as u32 - 1
    }
}

pub fn hw_classes(sbox: &SBox) -> HwClasses {
    let classes = sbox.m as usize + 1;
    let mut positions = vec![Vec::new(); classes];
    let mut values = vec![Vec::new(); classes];
    for (x, &v) in sbox.table.iter().enumerate() {
        let w = hamming_weight(v) as usize;
        positions[w].push(x);
        values[w].push(v);
    }
    HwClasses { positions, values }
}

/// Re-permutes outputs uniformly within each Hamming-weight class.
///
/// The result has the same weight at every position as `sbox`, hence the
/// same confusion-coefficient profile. One independent shuffle is drawn per
/// class, in ascending weight order; the draw may reproduce `sbox` itself.
pub fn hw_class_shuffle(sbox: &SBox, rng: &RngStream) -> SBox {
    let classes = hw_classes(sbox);
    let mut gen = rng.rng();
    let mut table = sbox.table.clone();
    for (pos, vals) in classes.positions.iter().zip(&classes.values) {
        let mut vals = vals.clone();
        vals.shuffle(&mut gen);
        for (&x, v) in pos.iter().zip(vals) {
            table[x] = v;
        }
    }
    SBox {
        table,
        ..sbox.clone()
    }
}
