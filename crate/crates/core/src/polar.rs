//! Polar code design for the binary erasure channel and systematic encoders.
//!
//! The kernel is `F = [[1,0],[1,1]]` and the transform is the plain
//! Kronecker power `F^{⊗m}` with rows in natural order: there is no
//! bit-reversal permutation. Row `i` has a one in column `j` exactly when the
//! bits of `j` are a subset of the bits of `i`. Relabeling coordinates
//! consistently leaves weight enumerators unchanged, so this only matters
//! when comparing frozen sets with tools that use the bit-reversed order.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::gf2::{BitMatrix, BitVector};

/// Result of a BEC polar construction.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarDesign {
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub eps_design: Rational,
    /// Erasure probability of each synthetic channel `0..n`.
    pub channel_erasure: Vec<Rational>,
    pub info_set: Vec<usize>,
    pub frozen_set: Vec<usize>,
}

/// JSON export of a [`PolarDesign`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarDesignJson {
    pub n: usize,
    pub k: usize,
    pub eps: String,
    pub info_set: Vec<usize>,
    pub frozen_set: Vec<usize>,
}

/// Exact BEC polarization over `m` levels.
///
/// Each level maps `v[j]` to `out[2j] = 2v - v²` (degraded branch) and
/// `out[2j+1] = v²` (upgraded branch), so even indices are the degraded ones.
pub fn bec_polarize(eps: &Rational, m: u32) -> Result<Vec<Rational>> {
    if *eps < Rational::zero() || *eps > Rational::one() {
        return Err(Error::Domain(format!(
            "erasure probability {} outside [0, 1]",
            format_rational(eps)
        )));
    }
    let two = Rational::from_integer(2.into());
    let mut v = vec![eps.clone()];
    for _ in 0..m {
        let mut out = Vec::with_capacity(v.len() * 2);
        for z in &v {
            let sq = z * z;
            out.push(&two * z - &sq);
            out.push(sq);
        }
        v = out;
    }
    Ok(v)
}

/// Indices of the `k` most reliable channels, ascending. Ties go to the lower index.
pub fn select_info_set(channel_erasure: &[Rational], k: usize) -> Result<Vec<usize>> {
    let n = channel_erasure.len();
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps lower indices first among equal values
    order.sort_by(|&a, &b| channel_erasure[a].cmp(&channel_erasure[b]));
    let mut info: Vec<usize> = order[..k].to_vec();
    info.sort_unstable();
    Ok(info)
}

pub fn design(n: usize, k: usize, eps: &Rational) -> Result<PolarDesign> {
    if !n.is_power_of_two() {
        return Err(Error::Domain(format!("polar length {n} is not a power of two")));
    }
    if k == 0 || k > n {
        return Err(Error::Domain(format!("polar dimension {k} not in 1..={n}")));
    }
    let m = n.trailing_zeros();
    let channel_erasure = bec_polarize(eps, m)?;
    let info_set = select_info_set(&channel_erasure, k)?;
    let mut is_info = vec![false; n];
    for &i in &info_set {
        is_info[i] = true;
    }
    let frozen_set = (0..n).filter(|&i| !is_info[i]).collect();
    Ok(PolarDesign {
        m,
        n,
        k,
        eps_design: eps.clone(),
        channel_erasure,
        info_set,
        frozen_set,
    })
}

impl PolarDesign {
    pub fn to_json(&self) -> PolarDesignJson {
        PolarDesignJson {
            n: self.n,
            k: self.k,
            eps: format_rational(&self.eps_design),
            info_set: self.info_set.clone(),
            frozen_set: self.frozen_set.clone(),
        }
    }

    /// Rebuilds the full design from its export and checks the sets agree.
    pub fn from_json(doc: &PolarDesignJson) -> Result<Self> {
        let d = design(doc.n, doc.k, &parse_rational(&doc.eps)?)?;
        if d.info_set != doc.info_set || d.frozen_set != doc.frozen_set {
            return Err(Error::Integrity(
                "information set in design file does not match the construction".into(),
            ));
        }
        Ok(d)
    }

    /// Systematic encoder for this design: `(G'_A)^-1 · G'` with `G'` the
    /// rows of `F^{⊗m}` indexed by the information set.
    pub fn systematic_code(&self) -> LinearCode {
        let rows = self.info_set.iter().map(|&i| kronecker_row(self.n, i)).collect();
        let g = BitMatrix::from_rows(self.n, rows).expect("rows have length n");
        // F^{⊗m} restricted to A×A is unit lower triangular, hence invertible.
        LinearCode::systematic_on(&g, &self.info_set)
            .expect("polar information set must index an invertible submatrix")
    }
}

/// Row `i` of `F^{⊗m}` for `n = 2^m`.
pub fn kronecker_row(n: usize, i: usize) -> BitVector {
    let mut v = BitVector::zeros(n);
    for j in 0..n {
        if j & !i == 0 {
            v.set(j, true);
        }
    }
    v
}

/// Full `n × n` matrix `F^{⊗m}`.
pub fn kronecker_power(n: usize) -> BitMatrix {
    BitMatrix::from_rows(n, (0..n).map(|i| kronecker_row(n, i)).collect())
        .expect("rows have length n")
}

/// Systematic polar code of length `n`, dimension `k`, designed at `eps`.
pub fn systematic_polar_code(n: usize, k: usize, eps: &Rational) -> Result<LinearCode> {
    Ok(design(n, k, eps)?.systematic_code())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn polarize_small_cases() {
        assert_eq!(bec_polarize(&r(1, 2), 1).unwrap(), vec![r(3, 4), r(1, 4)]);
        assert_eq!(
            bec_polarize(&r(1, 2), 2).unwrap(),
            vec![r(15, 16), r(9, 16), r(7, 16), r(1, 16)]
        );
        assert_eq!(bec_polarize(&r(1, 3), 0).unwrap(), vec![r(1, 3)]);
        assert!(bec_polarize(&r(3, 2), 2).is_err());
        assert!(bec_polarize(&r(-1, 2), 2).is_err());
    }

    /// Independent floating-point recursion with the same index convention.
    fn float_polarize(eps: f64, m: u32) -> Vec<f64> {
        let mut v = vec![eps];
        for _ in 0..m {
            v = v.iter().flat_map(|&z| [2.0 * z - z * z, z * z]).collect();
        }
        v
    }

    #[test]
    fn polarize_design_point_conserves_and_matches_floats() {
        let exact = bec_polarize(&r(3, 10), 6).unwrap();
        assert_eq!(exact.len(), 64);
        let total: Rational = exact.iter().sum();
        assert_eq!(total, r(96, 5));
        let approx = float_polarize(0.3, 6);
        for (e, f) in exact.iter().zip(&approx) {
            assert!((crate::exact::to_f64(e) - f).abs() < 1e-12);
        }
    }

    #[test]
    fn polarize_degradation_ordering() {
        for (a, b) in [(3, 10), (1, 2), (9, 10)] {
            let eps = r(a, b);
            let mut v = vec![eps.clone()];
            for m in 1..=5 {
                let next = bec_polarize(&eps, m).unwrap();
                for j in 0..v.len() {
                    assert!(next[2 * j] > v[j] && v[j] > next[2 * j + 1]);
                }
                let sum_prev: Rational = v.iter().sum();
                let sum_next: Rational = next.iter().sum();
                assert_eq!(sum_next, sum_prev * Rational::from_integer(2.into()));
                v = next;
            }
        }
        let ends = bec_polarize(&r(0, 1), 3).unwrap();
        assert!(ends.iter().all(Zero::is_zero));
    }

    #[test]
    fn info_set_selection() {
        assert_eq!(select_info_set(&[r(3, 4), r(1, 4)], 1).unwrap(), vec![1]);
        assert_eq!(
            select_info_set(&[r(15, 16), r(9, 16), r(7, 16), r(1, 16)], 2).unwrap(),
            vec![2, 3]
        );
        assert_eq!(
            select_info_set(&[r(1, 2), r(1, 2), r(1, 2)], 2).unwrap(),
            vec![0, 1]
        );
        assert!(select_info_set(&[r(1, 2)], 2).is_err());
    }

    #[test]
    fn info_sets_are_nested() {
        let ch = bec_polarize(&r(3, 10), 6).unwrap();
        let mut prev = select_info_set(&ch, 0).unwrap();
        for k in 1..=64 {
            let cur = select_info_set(&ch, k).unwrap();
            assert!(prev.iter().all(|i| cur.contains(i)), "k = {k}");
            prev = cur;
        }
    }

    #[test]
    fn tiny_systematic_codes() {
        let c = systematic_polar_code(2, 1, &r(1, 2)).unwrap();
        assert_eq!(c.generator(), &BitMatrix::from_u8_rows(&[&[1, 1]]));
        assert_eq!(c.info_positions(), &[1]);

        let c = systematic_polar_code(4, 2, &r(1, 2)).unwrap();
        assert_eq!(c.info_positions(), &[2, 3]);
        assert_eq!(
            c.generator(),
            &BitMatrix::from_u8_rows(&[&[1, 0, 1, 0], &[0, 1, 0, 1]])
        );
    }

    #[test]
    fn kronecker_matches_recursive_definition() {
        // F^{⊗(m+1)} = [[F^{⊗m}, 0], [F^{⊗m}, F^{⊗m}]]
        for m in 0..5 {
            let n = 1usize << m;
            let small = kronecker_power(n);
            let big = kronecker_power(2 * n);
            for i in 0..2 * n {
                for j in 0..2 * n {
                    let expect = match (i >= n, j >= n) {
                        (false, true) => false,
                        _ => small.get(i % n, j % n),
                    };
                    assert_eq!(big.get(i, j), expect);
                }
            }
        }
    }

    #[test]
    fn systematic_64_48_reads_back_messages_and_keeps_row_space() {
        let d = design(64, 48, &r(3, 10)).unwrap();
        let code = d.systematic_code();
        let mut rng = Stream::new(17);
        for _ in 0..4096 {
            let u = BitVector::from_words(48, &[rng.next_u64()]);
            let c = code.encode(&u).unwrap();
            assert_eq!(c.select(code.info_positions()), u);
        }
        let g_prime = BitMatrix::from_rows(
            64,
            d.info_set.iter().map(|&i| kronecker_row(64, i)).collect(),
        )
        .unwrap();
        assert_eq!(g_prime.rref().reduced, code.generator().rref().reduced);
    }

    #[test]
    fn design_json_round_trip() {
        let d = design(64, 56, &r(3, 10)).unwrap();
        let doc = d.to_json();
        assert_eq!(doc.eps, "3/10");
        assert_eq!(doc.info_set.len() + doc.frozen_set.len(), 64);
        let back = PolarDesign::from_json(&doc).unwrap();
        assert_eq!(back, d);
        let mut tampered = doc.clone();
        tampered.info_set[0] = tampered.frozen_set[0];
        assert!(PolarDesign::from_json(&tampered).is_err());
    }

    #[test]
    fn design_rejects_bad_shapes() {
        assert!(design(48, 10, &r(1, 2)).is_err());
        assert!(design(64, 0, &r(1, 2)).is_err());
        assert!(design(64, 65, &r(1, 2)).is_err());
    }
}
