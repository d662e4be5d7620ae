//! Confusion coefficient variance under the Hamming-weight leakage model.
//!
//! For a key difference `δ = k_i ⊕ k_j` the confusion coefficient is
//! `κ(δ) = S(δ) / 2^n` with `S(δ) = Σ_x (HW(F(x)) − HW(F(x⊕δ)))²`. CCV is the
//! population variance of `κ` over the `2^n − 1` nonzero differences. All
//! comparisons go through [`CcvKey`], an exact integer proportional to CCV.

use crate::sbox::{SBox, SBoxError};

/// `S(δ)` for every nonzero key difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaProfile {
    n: u32,
    m: u32,
    // s[δ - 1] = S(δ)
    s: Vec<u64>,
}

impl KappaProfile {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `S(δ)` for `δ` in `1..2^n`.
    pub fn s(&self, delta: usize) -> u64 {
        self.s[delta - 1]
    }

    pub fn values(&self) -> &[u64] {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// The confusion coefficient `κ(δ) = S(δ) / 2^n`.
    pub fn kappa(&self, delta: usize) -> f64 {
        self.s(delta) as f64 / (1u64 << self.n) as f64
    }

    pub fn key(&self) -> CcvKey {
        CcvKey::from_values(self.n, &self.s)
    }
}

/// Exact integer surrogate for CCV.
///
/// `key = N·ΣS² − (ΣS)²` with `N = 2^n − 1`, so that
/// `CCV = key / (N² · 2^{2n})`. Within one `n`, ordering by `key` is
/// ordering by CCV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CcvKey {
    n: u32,
    count: u64,
    sum: u128,
    sum_sq: u128,
    key: u128,
}

impl CcvKey {
    fn from_sums(n: u32, sum: u128, sum_sq: u128) -> Self {
        let count = (1u64 << n) - 1;
        let key = count as u128 * sum_sq - sum * sum;
        Self {
            n,
            count,
            sum,
            sum_sq,
            key,
        }
    }

    fn from_values(n: u32, s: &[u64]) -> Self {
        let (sum, sum_sq) = s.iter().fold((0u128, 0u128), |(a, b), &v| {
            let v = v as u128;
            (a + v, b + v * v)
        });
        Self::from_sums(n, sum, sum_sq)
    }

    pub fn key(&self) -> u128 {
        self.key
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn sum(&self) -> u128 {
        self.sum
    }

    pub fn sum_sq(&self) -> u128 {
        self.sum_sq
    }

    /// `N² · 2^{2n}`.
    pub fn denominator(&self) -> u128 {
        (self.count as u128 * self.count as u128) << (2 * self.n)
    }

    pub fn ccv(&self) -> f64 {
        self.key as f64 / self.denominator() as f64
    }
}

pub fn kappa_profile(sbox: &SBox) -> KappaProfile {
    let hw: Vec<i64> = sbox.hw_sequence().into_iter().map(i64::from).collect();
    let size = hw.len();
    let s = (1..size)
        .map(|delta| {
            hw.iter()
                .enumerate()
                .map(|(x, &h)| {
                    let d = h - hw[x ^ delta];
                    (d * d) as u64
                })
                .sum()
        })
        .collect();
    KappaProfile {
        n: sbox.n(),
        m: sbox.m(),
        s,
    }
}

pub fn ccv_key(sbox: &SBox) -> CcvKey {
    kappa_profile(sbox).key()
}

pub fn ccv(sbox: &SBox) -> f64 {
    ccv_key(sbox).ccv()
}

/// Key and profile of `sbox` with outputs `i` and `j` swapped, updated from
/// the profile of `sbox` rather than recomputed.
pub fn ccv_incremental(
    sbox: &SBox,
    profile: &KappaProfile,
    i: usize,
    j: usize,
) -> Result<(CcvKey, KappaProfile), SBoxError> {
    let len = sbox.len();
    for index in [i, j] {
        if index >= len {
            return Err(SBoxError::IndexOutOfRange { index, len });
        }
    }
    if i == j {
        return Err(SBoxError::SamePosition(i));
    }
    let mut state = IncrementalCcv::with_profile(sbox, profile.clone());
    state.commit_swap(i, j);
    Ok((state.key(), state.profile()))
}

/// Running CCV state for a sequence of output swaps.
///
/// Swapping the outputs at `i` and `j` changes `S(δ)` only through the pairs
/// `{i, i⊕δ}` and `{j, j⊕δ}`, giving
/// `ΔS(δ) = 4 (h_j − h_i)(h_{j⊕δ} − h_{i⊕δ})` for `δ ≠ i⊕j` and `0` at
/// `δ = i⊕j`, where `h` is the weight sequence before the swap.
#[derive(Debug, Clone)]
pub struct IncrementalCcv {
    n: u32,
    m: u32,
    hw: Vec<i64>,
    s: Vec<u64>,
    key: CcvKey,
    scratch: Vec<u64>,
    pending: Option<(usize, usize, CcvKey)>,
}

impl IncrementalCcv {
    pub fn new(sbox: &SBox) -> Self {
        Self::with_profile(sbox, kappa_profile(sbox))
    }

    fn with_profile(sbox: &SBox, profile: KappaProfile) -> Self {
        debug_assert_eq!(profile.n, sbox.n());
        let key = profile.key();
        let scratch = vec![0; profile.s.len()];
        Self {
            n: sbox.n(),
            m: sbox.m(),
            hw: sbox.hw_sequence().into_iter().map(i64::from).collect(),
            s: profile.s,
            key,
            scratch,
            pending: None,
        }
    }

    pub fn key(&self) -> CcvKey {
        self.key
    }

    pub fn profile(&self) -> KappaProfile {
        KappaProfile {
            n: self.n,
            m: self.m,
            s: self.s.clone(),
        }
    }

    /// Weight of the current output at `x`.
    pub fn weight(&self, x: usize) -> i64 {
        self.hw[x]
    }

    /// Key the state would have after swapping `i` and `j`; leaves the
    /// state unchanged. Positions must be distinct and in range.
    pub fn evaluate_swap(&mut self, i: usize, j: usize) -> CcvKey {
        let dh = self.hw[j] - self.hw[i];
        let mut sum = 0u128;
        let mut sum_sq = 0u128;
        if dh == 0 {
            self.scratch.copy_from_slice(&self.s);
            let key = self.key;
            self.pending = Some((i, j, key));
            return key;
        }
        let pair = i ^ j;
        for (idx, (out, &old)) in self.scratch.iter_mut().zip(&self.s).enumerate() {
            let delta = idx + 1;
            let new = if delta == pair {
                old
            } else {
                let d = self.hw[j ^ delta] - self.hw[i ^ delta];
                (old as i64 + 4 * dh * d) as u64
            };
            *out = new;
            let v = new as u128;
            sum += v;
            sum_sq += v * v;
        }
        let key = CcvKey::from_sums(self.n, sum, sum_sq);
        self.pending = Some((i, j, key));
        key
    }

    /// Applies the swap of `i` and `j`.
    pub fn commit_swap(&mut self, i: usize, j: usize) -> CcvKey {
        let key = match self.pending {
            Some((pi, pj, key)) if (pi, pj) == (i, j) => key,
            _ => self.evaluate_swap(i, j),
        };
        std::mem::swap(&mut self.s, &mut self.scratch);
        self.hw.swap(i, j);
        self.key = key;
        self.pending = None;
        key
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use crate::sbox::{hw_class_shuffle, random_bijective_sbox};

    #[test]
    fn identity_profile() {
        let p = kappa_profile(&SBox::identity(2).unwrap());
        assert_eq!(p.values(), &[4, 4, 8]);
        assert_eq!(p.len(), 3);
        assert_eq!(p.kappa(3), 2.0);
    }

    #[test]
    fn identity_key_and_ccv() {
        let k = ccv_key(&SBox::identity(2).unwrap());
        assert_eq!(k.count(), 3);
        assert_eq!(k.sum(), 16);
        assert_eq!(k.sum_sq(), 96);
        assert_eq!(k.key(), 32);
        assert_eq!(k.denominator(), 144);
        assert!((k.ccv() - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn constant_is_zero() {
        let c = SBox::constant(4, 4, 9).unwrap();
        assert!(kappa_profile(&c).values().iter().all(|&v| v == 0));
        assert_eq!(ccv_key(&c).key(), 0);
        assert_eq!(ccv(&c), 0.0);
    }

    #[test]
    fn profile_bounds() {
        let s = random_bijective_sbox(5, &RngStream::new(4)).unwrap();
        let p = kappa_profile(&s);
        assert_eq!(p.len(), 31);
        assert!(p.values().iter().all(|&v| v <= 32 * 25));
    }

    #[test]
    fn shuffle_keeps_profile() {
        let s = random_bijective_sbox(4, &RngStream::new(5)).unwrap();
        let t = hw_class_shuffle(&s, &RngStream::new(6));
        assert_eq!(kappa_profile(&s), kappa_profile(&t));
    }

    #[test]
    fn incremental_matches_full() {
        let s = random_bijective_sbox(4, &RngStream::new(8)).unwrap();
        let p = kappa_profile(&s);
        for (i, j) in [(0, 1), (3, 12), (5, 10), (15, 0)] {
            let (key, prof) = ccv_incremental(&s, &p, i, j).unwrap();
            let swapped = s.swap_outputs(i, j).unwrap();
            assert_eq!(prof, kappa_profile(&swapped));
            assert_eq!(key, ccv_key(&swapped));
        }
    }

    #[test]
    fn incremental_equal_weight_swap_keeps_key() {
        let s = SBox::identity(3).unwrap();
        let p = kappa_profile(&s);
        // outputs 1 and 2 both have weight 1
        let (key, prof) = ccv_incremental(&s, &p, 1, 2).unwrap();
        assert_eq!(key, p.key());
        assert_eq!(prof, p);
    }

    #[test]
    fn incremental_rejects_bad_positions() {
        let s = SBox::identity(2).unwrap();
        let p = kappa_profile(&s);
        assert!(ccv_incremental(&s, &p, 0, 4).is_err());
        assert!(ccv_incremental(&s, &p, 1, 1).is_err());
    }

    #[test]
    fn evaluate_then_other_commit() {
        let s = random_bijective_sbox(4, &RngStream::new(2)).unwrap();
        let mut st = IncrementalCcv::new(&s);
        st.evaluate_swap(0, 1);
        st.commit_swap(2, 7);
        assert_eq!(st.key(), ccv_key(&s.swap_outputs(2, 7).unwrap()));
    }
}
