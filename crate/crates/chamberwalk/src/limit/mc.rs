//! Monte Carlo simulation of the radial chain of the simple walk.
//!
//! From `w`, pick `i` uniformly in {0, 1, 2}; if `l(w s_i) > l(w)` move to
//! `w s_i`, otherwise move with probability `1/q` and stay otherwise.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::par::{map_range, Exec};
use crate::weyl::Affine;

/// Empirical distribution of the walk after `n` steps.
#[derive(Clone, Debug, PartialEq)]
pub struct McResult {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub counts: BTreeMap<Affine, u64>,
}

impl McResult {
    pub fn frequency(&self, w: &Affine) -> f64 {
        self.counts.get(w).copied().unwrap_or(0) as f64 / self.trials as f64
    }
}

/// Final state of trial `trial`, with its own ChaCha stream.
pub fn run_trial(q: f64, n: usize, seed: u64, trial: u64) -> Affine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let stay = 1.0 / q;
    let mut w = Affine::IDENTITY;
    let mut l = 0usize;
    for _ in 0..n {
        let i = rng.random_range(0..3u8);
        let ws = w.mul(Affine::gen(i));
        let lw = ws.length();
        if lw > l || rng.random::<f64>() < stay {
            w = ws;
            l = lw;
        }
    }
    w
}

const CHUNK: u64 = 1 << 14;

pub fn mc_simulate(q: f64, n: usize, trials: u64, seed: u64, exec: Exec) -> McResult {
    let chunks = trials.div_ceil(CHUNK) as usize;
    let parts = map_range(exec, chunks, |c| {
        let lo = c as u64 * CHUNK;
        let hi = (lo + CHUNK).min(trials);
        let mut m: HashMap<Affine, u64> = HashMap::new();
        for t in lo..hi {
            *m.entry(run_trial(q, n, seed, t)).or_insert(0) += 1;
        }
        m
    });
    let mut counts = BTreeMap::new();
    for part in parts {
        for (w, k) in part {
            *counts.entry(w).or_insert(0) += k;
        }
    }
    McResult {
        n,
        trials,
        seed,
        counts,
    }
}
