//! LS-HWF: first-improvement hill climbing on CCV over output swaps.
//!
//! Starting from a random permutation, the search repeatedly scans all pairs
//! `(i, j)`, `j > i`, in lexicographic order. A pair is tried only when the
//! two outputs differ in Hamming weight (equal-weight swaps leave CCV
//! unchanged). A swap is kept in place as soon as it strictly increases the
//! exact CCV key, and the scan carries on from the next pair. The search
//! stops after a full pass without any accepted swap.

use crate::metrics::{ccv_key, CcvKey, IncrementalCcv};
use crate::rng::RngStream;
use crate::sbox::{random_bijective_sbox, SBox, SBoxError};

/// One accepted swap.
#[derive(Debug, Clone, PartialEq)]
pub struct ClimbEvent {
    /// 1-based climb counter within the run.
    pub climb_index: usize,
    pub i: usize,
    pub j: usize,
    pub ccv_after: f64,
    pub key_after: CcvKey,
    /// The incumbent right after the swap.
    pub sbox: SBox,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub initial: SBox,
    pub best: SBox,
    pub best_key: CcvKey,
    pub climbs: Vec<ClimbEvent>,
    pub seed: u64,
    pub seed_path: Vec<u64>,
    /// Candidate swaps evaluated.
    pub evaluations: u64,
    /// Full scans over all pairs, including the final one without climbs.
    pub passes: u64,
}

impl SearchResult {
    pub fn n(&self) -> u32 {
        self.initial.n()
    }

    pub fn best_ccv(&self) -> f64 {
        self.best_key.ccv()
    }
}

/// Runs LS-HWF on `n`-bit bijective S-boxes; `observer` sees every climb.
pub fn ls_hwf<F>(n: u32, rng: &RngStream, mut observer: F) -> Result<SearchResult, SBoxError>
where
    F: FnMut(&ClimbEvent),
{
    let initial = random_bijective_sbox(n, rng)?;
    let mut incumbent = initial.clone();
    let mut state = IncrementalCcv::new(&incumbent);
    let mut climbs = Vec::new();
    let mut evaluations = 0u64;
    let mut passes = 0u64;
    let size = incumbent.len();

    let mut searching = true;
    while searching {
        searching = false;
        passes += 1;
        for i in 0..size {
            for j in i + 1..size {
                if state.weight(i) == state.weight(j) {
                    continue;
                }
                evaluations += 1;
                let candidate = state.evaluate_swap(i, j);
                if candidate.key() > state.key().key() {
                    state.commit_swap(i, j);
                    incumbent.swap_in_place(i, j);
                    debug_assert_eq!(state.key(), ccv_key(&incumbent));
                    let event = ClimbEvent {
                        climb_index: climbs.len() + 1,
                        i,
                        j,
                        ccv_after: candidate.ccv(),
                        key_after: candidate,
                        sbox: incumbent.clone(),
                    };
                    observer(&event);
                    climbs.push(event);
                    searching = true;
                }
            }
        }
    }

    Ok(SearchResult {
        initial,
        best_key: state.key(),
        best: incumbent,
        climbs,
        seed: rng.seed(),
        seed_path: rng.path().to_vec(),
        evaluations,
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::ccv;

    #[test]
    fn deterministic() {
        let rng = RngStream::new(7).child(0);
        let a = ls_hwf(4, &rng, |_| {}).unwrap();
        let b = ls_hwf(4, &rng, |_| {}).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn climbs_increase_and_replay() {
        let rng = RngStream::new(3).child(1);
        let mut seen = 0;
        let r = ls_hwf(5, &rng, |_| seen += 1).unwrap();
        assert_eq!(seen, r.climbs.len());
        let mut replay = r.initial.clone();
        let mut last = ccv_key(&replay).key();
        for (k, e) in r.climbs.iter().enumerate() {
            assert_eq!(e.climb_index, k + 1);
            assert_ne!(replay.get(e.i).count_ones(), replay.get(e.j).count_ones());
            replay = replay.swap_outputs(e.i, e.j).unwrap();
            assert_eq!(replay, e.sbox);
            assert!(e.key_after.key() > last);
            last = e.key_after.key();
        }
        assert_eq!(replay, r.best);
        assert!(r.best.is_bijective());
        assert!(ccv(&r.best) >= ccv(&r.initial));
        assert!(r.passes >= 1);
    }

    #[test]
    fn rejects_small_n() {
        assert!(ls_hwf(1, &RngStream::new(0), |_| {}).is_err());
    }
}
