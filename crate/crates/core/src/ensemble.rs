//! Serial concatenation of an outer code and an inner code through an
//! interleaver, the uniform-interleaver ensemble average, expurgation of
//! that average, and minimum-distance censuses over sampled interleavers.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::exact::{format_rational, pow2, Binomials, Rational};
use crate::gf2::Permutation;
use crate::spectrum::{code_wef, Budget, IoSpectrum, WeightSpectrum};

/// Interleaver between outer and inner encoder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interleaver {
    Identity,
    Seed(u64),
}

impl Interleaver {
    pub fn permutation(&self, n: usize) -> Permutation {
        match *self {
            Interleaver::Identity => Permutation::identity(n),
            Interleaver::Seed(s) => Permutation::random(n, s),
        }
    }
}

/// Generator `G_C · P · G_P` of the concatenated code.
///
/// The result is systematic: outer message bit `j` lands on inner
/// coordinate `inner.info[map[outer.info[j]]]`.
pub fn concat_code(
    outer: &LinearCode,
    interleaver: &Permutation,
    inner: &LinearCode,
) -> Result<LinearCode> {
    if outer.n() != inner.k() {
        return Err(Error::shape(
            "concat_code",
            format!(
                "outer length {} differs from inner dimension {}",
                outer.n(),
                inner.k()
            ),
        ));
    }
    if interleaver.len() != outer.n() {
        return Err(Error::shape(
            "concat_code",
            format!(
                "interleaver size {} for outer length {}",
                interleaver.len(),
                outer.n()
            ),
        ));
    }
    let g = outer
        .generator()
        .mat_mul(&interleaver.matrix())?
        .mat_mul(inner.generator())?;
    let info = outer
        .info_positions()
        .iter()
        .map(|&p| inner.info_positions()[interleaver.map()[p]])
        .collect();
    LinearCode::new(g, info)
}

/// Ensemble-average weight enumerator with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvgSpectrum {
    values: Vec<Rational>,
}

impl AvgSpectrum {
    pub fn new(values: Vec<Rational>) -> Self {
        assert!(!values.is_empty());
        AvgSpectrum { values }
    }

    pub fn from_wef(wef: &WeightSpectrum) -> Self {
        AvgSpectrum::new(
            wef.counts()
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, w: usize) -> &Rational {
        &self.values[w]
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    pub fn min_distance(&self) -> Option<usize> {
        (1..self.values.len()).find(|&w| !self.values[w].is_zero())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(crate::exact::to_f64).collect()
    }
}

/// `Ā_ω = Σ_i A_i^out · A^IO_{i,ω} / C(N, i)`.
pub fn uniform_awef(outer_wef: &WeightSpectrum, inner_io: &IoSpectrum) -> Result<AvgSpectrum> {
    let big_n = outer_wef.n();
    if big_n != inner_io.k() {
        return Err(Error::shape(
            "uniform_awef",
            format!(
                "outer length {big_n} differs from inner dimension {}",
                inner_io.k()
            ),
        ));
    }
    let n = inner_io.n();
    let binom = Binomials::new(big_n);
    let mut values = vec![Rational::zero(); n + 1];
    for i in 0..=big_n {
        let a_out = outer_wef.get(i);
        if a_out.is_zero() {
            continue;
        }
        let den = binom.get(big_n, i as i64);
        for (w, v) in values.iter_mut().enumerate() {
            let a_in = inner_io.get(i, w);
            if !a_in.is_zero() {
                *v += Rational::new(a_out * a_in, den.clone());
            }
        }
    }
    Ok(AvgSpectrum::new(values))
}

/// Outcome of splitting an ensemble average into good and bad subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpurgationReport {
    pub xi: Rational,
    pub adoptable: bool,
    pub removed_weights: Vec<usize>,
    pub removed_mass: Rational,
    pub good_spectrum: AvgSpectrum,
    pub warning: Option<String>,
}

/// Expurgates low-weight lines attributable to a fraction `1 - xi` of bad codes.
///
/// Nonzero weights are scanned upward; every line with `Ā_ω < xi` is removed
/// until the first line with `Ā_ω >= xi`, which is kept along with all
/// heavier lines. Kept lines are divided by `xi`, which bounds the good
/// subset's spectrum from `Ā = xi·Ā_good + (1 - xi)·Ā_bad`. When the first
/// nonzero line already reaches `xi`, nothing is removed and the report is
/// marked not adoptable. The removed mass must stay below one (a Markov
/// argument then leaves a good subset); otherwise the result is downgraded
/// to not adoptable with a warning.
pub fn expurgate(avg: &AvgSpectrum, xi: &Rational) -> Result<ExpurgationReport> {
    if *xi <= Rational::zero() || *xi >= Rational::one() {
        return Err(Error::Domain(format!(
            "good-subset fraction {} must lie strictly between 0 and 1",
            format_rational(xi)
        )));
    }
    let not_adoptable = |warning: Option<String>| ExpurgationReport {
        xi: xi.clone(),
        adoptable: false,
        removed_weights: Vec::new(),
        removed_mass: Rational::zero(),
        good_spectrum: avg.clone(),
        warning,
    };
    let mut removed = Vec::new();
    let mut mass = Rational::zero();
    let mut first_kept = None;
    for w in 1..avg.values.len() {
        let v = &avg.values[w];
        if v.is_zero() {
            continue;
        }
        if v < xi {
            removed.push(w);
            mass += v;
        } else {
            first_kept = Some(w);
            break;
        }
    }
    if removed.is_empty() {
        return Ok(not_adoptable(None));
    }
    if mass >= Rational::one() {
        return Ok(not_adoptable(Some(format!(
            "removed mass {} is not below one",
            format_rational(&mass)
        ))));
    }
    let cut = first_kept.unwrap_or(avg.values.len());
    let mut values = avg.values.clone();
    for (w, v) in values.iter_mut().enumerate().skip(1) {
        if w < cut {
            *v = Rational::zero();
        } else {
            *v = &*v / xi;
        }
    }
    Ok(ExpurgationReport {
        xi: xi.clone(),
        adoptable: true,
        removed_weights: removed,
        removed_mass: mass,
        good_spectrum: AvgSpectrum::new(values),
        warning: None,
    })
}

/// Exact weight enumerator of one concatenated code.
pub fn instance_wef(
    outer: &LinearCode,
    inner: &LinearCode,
    interleaver: Interleaver,
    budget: Budget,
) -> Result<WeightSpectrum> {
    let code = concat_code(outer, &interleaver.permutation(outer.n()), inner)?;
    code_wef(&code, budget)
}

/// Exact enumerators for a list of seeded interleavers, in seed order.
pub fn seeded_wefs(
    outer: &LinearCode,
    inner: &LinearCode,
    seeds: &[u64],
    budget: Budget,
) -> Result<Vec<(u64, WeightSpectrum)>> {
    seeds
        .par_iter()
        .map(|&s| Ok((s, instance_wef(outer, inner, Interleaver::Seed(s), budget)?)))
        .collect()
}

/// Minimum distances of concatenations through seeded interleavers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub per_seed: Vec<(u64, usize)>,
    pub histogram: BTreeMap<usize, usize>,
}

impl Census {
    pub fn from_wefs(wefs: &[(u64, WeightSpectrum)]) -> Result<Census> {
        let per_seed = wefs
            .iter()
            .map(|(s, w)| {
                w.min_distance()
                    .map(|d| (*s, d))
                    .ok_or_else(|| Error::Domain("zero-dimensional concatenation".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut histogram = BTreeMap::new();
        for &(_, d) in &per_seed {
            *histogram.entry(d).or_insert(0) += 1;
        }
        Ok(Census {
            per_seed,
            histogram,
        })
    }

    pub fn count(&self, dmin: usize) -> usize {
        self.histogram.get(&dmin).copied().unwrap_or(0)
    }
}

pub fn dmin_census(
    outer: &LinearCode,
    inner: &LinearCode,
    seeds: &[u64],
    budget: Budget,
) -> Result<Census> {
    Census::from_wefs(&seeded_wefs(outer, inner, seeds, budget)?)
}

/// `Σ Ā_ω` must equal `2^K`.
pub fn check_awef_total(avg: &AvgSpectrum, outer_dim: usize) -> Result<()> {
    let expect = Rational::from_integer(pow2(outer_dim));
    if avg.total() != expect {
        return Err(Error::Integrity(format!(
            "average enumerator sums to {}, expected 2^{outer_dim}",
            format_rational(&avg.total())
        )));
    }
    if avg.values[0] != Rational::one() {
        return Err(Error::Integrity("average enumerator has Ā_0 != 1".into()));
    }
    Ok(())
}

impl From<&WeightSpectrum> for AvgSpectrum {
    fn from(w: &WeightSpectrum) -> Self {
        AvgSpectrum::from_wef(w)
    }
}

/// Helper for tests and examples: `Ā` as a map from weight to value, zeros omitted.
pub fn support(avg: &AvgSpectrum) -> BTreeMap<usize, Rational> {
    avg.values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(w, v)| (w, v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;
    use crate::spectrum::code_spectra;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn code(rows: &[&[u8]]) -> LinearCode {
        LinearCode::from_generator(&BitMatrix::from_u8_rows(rows)).unwrap()
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_force_average(outer: &LinearCode, inner: &LinearCode) -> AvgSpectrum {
        let perms = all_permutations(outer.n());
        let count = perms.len() as i64;
        let mut acc = vec![Rational::zero(); inner.n() + 1];
        for p in perms {
            let c = concat_code(outer, &Permutation::new(p).unwrap(), inner).unwrap();
            let wef = code_wef(&c, Budget::default()).unwrap();
            for (a, x) in acc.iter_mut().zip(wef.counts()) {
                *a += Rational::from_integer(x.clone());
            }
        }
        AvgSpectrum::new(acc.into_iter().map(|v| v / r(count, 1)).collect())
    }

    #[test]
    fn repetition_into_parity_check() {
        let rep = code(&[&[1, 1, 1]]);
        let spc = code(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let c = concat_code(&rep, &Permutation::identity(3), &spc).unwrap();
        assert_eq!(c.generator(), &BitMatrix::from_u8_rows(&[&[1, 1, 1, 1]]));

        let (_, io) = code_spectra(&spc, Budget::default()).unwrap();
        let rep_wef = code_wef(&rep, Budget::default()).unwrap();
        let avg = uniform_awef(&rep_wef, &io).unwrap();
        assert_eq!(avg.values(), &[r(1, 1), r(0, 1), r(0, 1), r(0, 1), r(1, 1)]);
        assert_eq!(avg, brute_force_average(&rep, &spc));
    }

    #[test]
    fn identity_inner_reproduces_outer() {
        let outer = code(&[&[1, 1, 0, 1, 0], &[0, 1, 1, 1, 1]]);
        let id = LinearCode::from_generator(&BitMatrix::identity(5)).unwrap();
        let (_, io) = code_spectra(&id, Budget::default()).unwrap();
        let wef = code_wef(&outer, Budget::default()).unwrap();
        assert_eq!(uniform_awef(&wef, &io).unwrap(), AvgSpectrum::from_wef(&wef));
    }

    #[test]
    fn toy_ensembles_match_all_interleavers() {
        let cases = [
            (code(&[&[1, 1, 0, 1], &[0, 1, 1, 1]]), code(&[&[1, 0, 0, 0, 1, 1, 0], &[0, 1, 0, 0, 1, 0, 1], &[0, 0, 1, 0, 0, 1, 1], &[0, 0, 0, 1, 1, 1, 1]])),
            (code(&[&[1, 0, 1, 1, 0], &[0, 1, 1, 0, 1]]), code(&[&[1, 0, 0, 0, 0, 1, 1, 0], &[0, 1, 0, 0, 0, 1, 0, 1], &[0, 0, 1, 0, 0, 0, 1, 1], &[0, 0, 0, 1, 0, 1, 1, 1], &[0, 0, 0, 0, 1, 1, 0, 0]])),
            (code(&[&[1, 1, 1]]), code(&[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1]])),
        ];
        for (outer, inner) in &cases {
            let (_, io) = code_spectra(inner, Budget::default()).unwrap();
            let wef = code_wef(outer, Budget::default()).unwrap();
            let avg = uniform_awef(&wef, &io).unwrap();
            check_awef_total(&avg, outer.k()).unwrap();
            assert_eq!(avg, brute_force_average(outer, inner));
        }
    }

    #[test]
    fn concat_rejects_mismatch() {
        let outer = code(&[&[1, 1, 1]]);
        let inner = code(&[&[1, 0, 1], &[0, 1, 1]]);
        assert!(concat_code(&outer, &Permutation::identity(3), &inner).is_err());
        let inner = code(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        assert!(concat_code(&outer, &Permutation::identity(2), &inner).is_err());
    }

    #[test]
    fn expurgation_rule() {
        let mut v = vec![Rational::zero(); 9];
        v[0] = r(1, 1);
        v[4] = r(1, 5);
        v[6] = r(3, 2);
        v[8] = r(40, 1);
        let avg = AvgSpectrum::new(v);
        let xi = r(99, 100);
        let rep = expurgate(&avg, &xi).unwrap();
        assert!(rep.adoptable);
        assert_eq!(rep.removed_weights, vec![4]);
        assert_eq!(rep.removed_mass, r(1, 5));
        assert_eq!(rep.good_spectrum.get(4), &r(0, 1));
        assert_eq!(rep.good_spectrum.get(6), &(r(3, 2) / &xi));
        assert_eq!(rep.good_spectrum.get(8), &(r(40, 1) / &xi));
        assert_eq!(rep.good_spectrum.get(0), &r(1, 1));
        assert_eq!(rep.good_spectrum.min_distance(), Some(6));

        let mut v = vec![Rational::zero(); 9];
        v[0] = r(1, 1);
        v[4] = r(23, 10);
        v[8] = r(5, 1);
        let avg = AvgSpectrum::new(v);
        let rep = expurgate(&avg, &xi).unwrap();
        assert!(!rep.adoptable);
        assert_eq!(rep.good_spectrum, avg);

        assert!(expurgate(&avg, &r(1, 1)).is_err());
        assert!(expurgate(&avg, &r(0, 1)).is_err());
    }

    #[test]
    fn expurgation_downgrades_when_mass_reaches_one() {
        let mut v = vec![Rational::zero(); 7];
        v[0] = r(1, 1);
        v[2] = r(9, 10);
        v[3] = r(9, 10);
        v[6] = r(3, 1);
        let rep = expurgate(&AvgSpectrum::new(v), &r(99, 100)).unwrap();
        assert!(!rep.adoptable);
        assert!(rep.warning.is_some());
    }

    #[test]
    fn census_with_identity_seed_list() {
        let outer = code(&[&[1, 1, 0, 1], &[0, 1, 1, 1]]);
        let inner = code(&[&[1, 0, 0, 0, 1, 1, 0], &[0, 1, 0, 0, 1, 0, 1], &[0, 0, 1, 0, 0, 1, 1], &[0, 0, 0, 1, 1, 1, 1]]);
        let seeds: Vec<u64> = (1..=6).collect();
        let census = dmin_census(&outer, &inner, &seeds, Budget::default()).unwrap();
        assert_eq!(census.per_seed.len(), 6);
        assert_eq!(census.histogram.values().sum::<usize>(), 6);
        for &(s, d) in &census.per_seed {
            let c = concat_code(&outer, &Permutation::random(4, s), &inner).unwrap();
            assert_eq!(crate::spectrum::min_distance(&c, Budget::default()).unwrap(), Some(d));
        }
    }
}
