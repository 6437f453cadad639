//! Monte Carlo ML decoding over the BEC.
//!
//! ML decoding on the erasure channel fails exactly when some nonzero
//! codeword is supported inside the erased set. Equivalently, the generator
//! restricted to the surviving columns has rank below `k`. Ties count as
//! failures, which is the same convention the union bound uses.
//!
//! Trials run in fixed chunks of [`CHUNK`]. Chunk `c` draws from
//! `Stream::with_stream(seed, c)`, and each trial consumes `n` unit draws in
//! coordinate order. Results therefore do not depend on how many workers run.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::rng::Stream;

pub const CHUNK: u64 = 1 << 16;

const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub eps: f64,
    pub trials: u64,
    pub failures: u64,
    pub estimate: f64,
    pub ci95: [f64; 2],
    pub seed: u64,
}

impl SimResult {
    /// Binomial standard error of the estimate.
    pub fn std_error(&self) -> f64 {
        let p = self.estimate;
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

/// Wilson score interval at 95%.
pub fn wilson95(failures: u64, trials: u64) -> [f64; 2] {
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    [(center - half).max(0.0), (center + half).min(1.0)]
}

/// Column-major view of a generator, precomputed for repeated rank tests.
#[derive(Clone, Debug)]
pub struct ErasureDecoder {
    n: usize,
    k: usize,
    /// Column `j` as a `k`-bit word (used when `k <= 64`).
    cols: Vec<u64>,
    code: LinearCode,
}

impl ErasureDecoder {
    pub fn new(code: &LinearCode) -> Self {
        let (n, k) = (code.n(), code.k());
        let mut cols = Vec::new();
        if k <= 64 {
            cols = vec![0u64; n];
            for i in 0..k {
                for j in code.generator().row(i).ones() {
                    cols[j] |= 1 << i;
                }
            }
        }
        ErasureDecoder { n, k, cols, code: code.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True when ML decoding fails for this erasure pattern.
    pub fn fails(&self, erased: &[bool]) -> bool {
        debug_assert_eq!(erased.len(), self.n);
        if self.k == 0 {
            return false;
        }
        if self.k > 64 {
            let keep: Vec<usize> = (0..self.n).filter(|&j| !erased[j]).collect();
            return self.code.generator().select_columns(&keep).rank() < self.k;
        }
        // XOR basis keyed by highest set bit; stop as soon as rank hits k.
        let mut basis = [0u64; 64];
        let mut rank = 0;
        for (j, &gone) in erased.iter().enumerate() {
            if gone {
                continue;
            }
            let mut v = self.cols[j];
            while v != 0 {
                let top = 63 - v.leading_zeros() as usize;
                if basis[top] == 0 {
                    basis[top] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[top];
            }
            if rank == self.k {
                return false;
            }
        }
        true
    }
}

/// Whether erasing `erased` leaves the codeword ambiguous.
pub fn ml_failure(code: &LinearCode, erased: &[usize]) -> Result<bool> {
    let mut mask = vec![false; code.n()];
    for &j in erased {
        if j >= code.n() {
            return Err(Error::Domain(format!("erased position {j} outside 0..{}", code.n())));
        }
        mask[j] = true;
    }
    Ok(ErasureDecoder::new(code).fails(&mask))
}

fn run_chunk(dec: &ErasureDecoder, eps: f64, seed: u64, chunk: u64, trials: u64) -> u64 {
    let mut rng = Stream::with_stream(seed, chunk);
    let mut erased = vec![false; dec.n()];
    let mut failures = 0;
    for _ in 0..trials {
        for e in erased.iter_mut() {
            *e = rng.unit_f64() < eps;
        }
        failures += dec.fails(&erased) as u64;
    }
    failures
}

/// Estimates the ML block-error probability at erasure probability `eps`.
pub fn simulate_bep(code: &LinearCode, eps: f64, trials: u64, seed: u64) -> Result<SimResult> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("erasure probability {eps} outside [0, 1]")));
    }
    let dec = ErasureDecoder::new(code);
    let chunks = trials.div_ceil(CHUNK);
    let failures: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(trials - c * CHUNK);
            run_chunk(&dec, eps, seed, c, len)
        })
        .sum();
    Ok(SimResult {
        eps,
        trials,
        failures,
        estimate: failures as f64 / trials as f64,
        ci95: wilson95(failures, trials),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{BitMatrix, BitVector};

    fn rep2() -> LinearCode {
        LinearCode::from_generator(&BitMatrix::from_u8_rows(&[&[1, 1]])).unwrap()
    }

    fn spc3() -> LinearCode {
        LinearCode::from_generator(&BitMatrix::from_u8_rows(&[&[1, 0, 1], &[0, 1, 1]])).unwrap()
    }

    fn random_code(n: usize, k: usize, seed: u64) -> LinearCode {
        let mut rng = Stream::new(seed);
        loop {
            let rows = (0..k)
                .map(|_| BitVector::from_words(n, &[rng.next_u64() & ((1u64 << n) - 1)]))
                .collect();
            if let Ok(c) = LinearCode::from_generator(&BitMatrix::from_rows(n, rows).unwrap()) {
                return c;
            }
        }
    }

    /// Failure iff some nonzero codeword lives inside the erased set.
    fn oracle_fails(code: &LinearCode, erased_mask: u64) -> bool {
        let k = code.k();
        (1u64..1 << k).any(|m| {
            let c = code.encode(&BitVector::from_words(k, &[m])).unwrap().as_u64();
            c & !erased_mask == 0
        })
    }

    #[test]
    fn definitional_cases() {
        assert!(ml_failure(&rep2(), &[0, 1]).unwrap());
        assert!(!ml_failure(&rep2(), &[0]).unwrap());
        assert!(!ml_failure(&spc3(), &[2]).unwrap());
        assert!(ml_failure(&spc3(), &[0, 2]).unwrap());
        assert!(ml_failure(&rep2(), &[2]).is_err());
        let c = random_code(12, 5, 3);
        let w = c.encode(&BitVector::from_words(5, &[0b10110])).unwrap();
        assert!(ml_failure(&c, &w.ones().collect::<Vec<_>>()).unwrap());
    }

    #[test]
    fn rank_test_matches_codeword_oracle_on_every_pattern() {
        for (n, k, seed) in [(8, 3, 1), (10, 5, 2), (12, 7, 5)] {
            let c = random_code(n, k, seed);
            let dec = ErasureDecoder::new(&c);
            for mask in 0u64..1 << n {
                let erased: Vec<bool> = (0..n).map(|j| mask >> j & 1 == 1).collect();
                assert_eq!(dec.fails(&erased), oracle_fails(&c, mask), "n={n} mask={mask:b}");
            }
        }
    }

    #[test]
    fn simulation_converges_to_exhaustive_probability() {
        let (n, k) = (10, 4);
        let c = random_code(n, k, 9);
        let eps: f64 = 0.3;
        let exact: f64 = (0u64..1 << n)
            .filter(|&m| oracle_fails(&c, m))
            .map(|m| {
                let e = m.count_ones() as i32;
                eps.powi(e) * (1.0 - eps).powi(n as i32 - e)
            })
            .sum();
        let sim = simulate_bep(&c, eps, 200_000, 4).unwrap();
        assert!(sim.ci95[0] <= exact && exact <= sim.ci95[1], "{exact} not in {:?}", sim.ci95);
    }

    #[test]
    fn closed_forms_and_endpoints() {
        let s = simulate_bep(&rep2(), 0.5, 1_000_000, 1).unwrap();
        assert!(s.ci95[0] <= 0.25 && 0.25 <= s.ci95[1]);
        let s = simulate_bep(&spc3(), 0.1, 1_000_000, 2).unwrap();
        assert!(s.ci95[0] <= 0.028 && 0.028 <= s.ci95[1]);
        assert_eq!(simulate_bep(&spc3(), 0.0, 1000, 1).unwrap().failures, 0);
        assert_eq!(simulate_bep(&spc3(), 1.0, 1000, 1).unwrap().failures, 1000);
        assert!(simulate_bep(&spc3(), 0.2, 0, 1).is_err());
    }

    #[test]
    fn deterministic_and_worker_independent() {
        let c = random_code(16, 8, 11);
        let a = simulate_bep(&c, 0.25, 150_000, 77).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| simulate_bep(&c, 0.25, 150_000, 77).unwrap());
        assert_eq!(a, b);
        let lo_hi = wilson95(0, 10);
        assert_eq!(lo_hi[0], 0.0);
        assert!(lo_hi[1] > 0.0 && lo_hi[1] < 1.0);
    }
}
