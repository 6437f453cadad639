//! Union bound on the ML block-error probability over the BEC.
//!
//! For a code (or ensemble) with spectrum `A_ω` the bound splits the erasure
//! count `e` into two regimes:
//!
//! ```text
//! P_B ≤ Σ_{e=n-k+1}^{n} C(n,e) ε^e (1-ε)^{n-e}
//!     + Σ_{e=1}^{n-k}   C(n,e) ε^e (1-ε)^{n-e} · min{1, Σ_{ω=1}^{e} A_ω C(e,ω)/C(n,ω)}
//! ```
//!
//! The first sum is the failure probability of an ideal MDS code, which no
//! `(n, k)` code can beat. In the second, `A_ω C(e,ω)/C(n,ω)` is the expected
//! number of weight-`ω` codewords hidden inside a uniformly random set of `e`
//! erasures, which equals `A_ω C(n-ω,e-ω)/C(n,e)`.
//!
//! The commonly printed form of this bound carries a typo in the inner
//! binomial and runs the outer sum up to `k`. Erasure counts above `n-k` are
//! already charged in full by the first term, so stopping at `n-k` loses
//! nothing.

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{to_f64, Binomials, Rational};

/// One evaluated bound curve plus what it was computed for.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCurve {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub points: Vec<(f64, f64)>,
}

impl BoundCurve {
    /// Bound at the grid point closest to `eps`.
    pub fn at(&self, eps: f64) -> Option<f64> {
        self.points
            .iter()
            .min_by(|a, b| (a.0 - eps).abs().total_cmp(&(b.0 - eps).abs()))
            .map(|p| p.1)
    }
}

/// `ε ∈ {0.05, 0.06, …, 0.50}` as exact fractions.
pub fn default_grid() -> Vec<Rational> {
    (5..=50)
        .map(|i| Rational::new(i.into(), 100.into()))
        .collect()
}

/// Evenly spaced grid `lo, lo+step, …` up to and including `hi`.
pub fn linear_grid(lo: &Rational, hi: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if *step <= Rational::zero() {
        return Err(Error::Domain("grid step must be positive".into()));
    }
    if lo < &Rational::zero() || hi > &Rational::one() || lo > hi {
        return Err(Error::Domain("grid must satisfy 0 <= lo <= hi <= 1".into()));
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    while x <= *hi {
        out.push(x.clone());
        x += step;
    }
    Ok(out)
}

fn check_eps(eps: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::Domain(format!("erasure probability {eps} outside [0, 1]")))
    }
}

fn check_shape(spectrum_len: usize, n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    if spectrum_len != n + 1 {
        return Err(Error::shape(
            "union_bound",
            format!("spectrum has {spectrum_len} lines, expected n + 1 = {}", n + 1),
        ));
    }
    Ok(())
}

/// Probability that more than `n - k` of `n` positions are erased.
pub fn singleton_bep(n: usize, k: usize, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    let binom = Binomials::new(n);
    Ok(singleton_with(&binom, n, k, eps))
}

fn pattern_prob(binom: &Binomials, n: usize, e: usize, eps: f64) -> f64 {
    let c = binom.get_ref(n, e).to_f64().unwrap_or(f64::INFINITY);
    c * eps.powi(e as i32) * (1.0 - eps).powi((n - e) as i32)
}

fn singleton_with(binom: &Binomials, n: usize, k: usize, eps: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let s: f64 = (n - k + 1..=n).map(|e| pattern_prob(binom, n, e, eps)).sum();
    s.clamp(0.0, 1.0)
}

/// Double-precision evaluator that reuses binomial tables across grid points.
pub struct UnionBound {
    n: usize,
    k: usize,
    binom: Binomials,
    /// `hidden[e]` = Σ_{ω ≤ e} A_ω C(e,ω)/C(n,ω), capped at one.
    hidden: Vec<f64>,
}

impl UnionBound {
    pub fn new(spectrum: &[f64], n: usize, k: usize) -> Result<Self> {
        check_shape(spectrum.len(), n, k)?;
        if let Some((w, a)) = spectrum.iter().enumerate().find(|(_, a)| a.is_nan() || **a < 0.0) {
            return Err(Error::Domain(format!("spectral line {w} is {a}, must be >= 0")));
        }
        let binom = Binomials::new(n);
        let ratio = |e: usize, w: usize| {
            binom.get_ref(e, w).to_f64().unwrap() / binom.get_ref(n, w).to_f64().unwrap()
        };
        let mut hidden = vec![0.0; n + 1];
        for (e, h) in hidden.iter_mut().enumerate().take(n - k + 1).skip(1) {
            let s: f64 = (1..=e).map(|w| spectrum[w] * ratio(e, w)).sum();
            *h = s.min(1.0);
        }
        Ok(UnionBound { n, k, binom, hidden })
    }

    pub fn eval(&self, eps: f64) -> Result<f64> {
        check_eps(eps)?;
        let (n, k) = (self.n, self.k);
        let mut p = singleton_with(&self.binom, n, k, eps);
        for e in 1..=n - k {
            if self.hidden[e] > 0.0 {
                p += pattern_prob(&self.binom, n, e, eps) * self.hidden[e];
            }
        }
        Ok(p.clamp(0.0, 1.0))
    }
}

/// Union bound at a single erasure probability.
pub fn union_bound_bec(spectrum: &[f64], n: usize, k: usize, eps: f64) -> Result<f64> {
    UnionBound::new(spectrum, n, k)?.eval(eps)
}

/// The same bound in exact rational arithmetic, for regression baselines.
pub fn union_bound_exact(spectrum: &[Rational], n: usize, k: usize, eps: &Rational) -> Result<Rational> {
    check_shape(spectrum.len(), n, k)?;
    if *eps < Rational::zero() || *eps > Rational::one() {
        return Err(Error::Domain("erasure probability outside [0, 1]".into()));
    }
    if spectrum.iter().any(|a| *a < Rational::zero()) {
        return Err(Error::Domain("spectral lines must be nonnegative".into()));
    }
    let binom = Binomials::new(n);
    let q = Rational::one() - eps;
    let mut eps_pow = vec![Rational::one(); n + 1];
    let mut q_pow = vec![Rational::one(); n + 1];
    for i in 1..=n {
        eps_pow[i] = &eps_pow[i - 1] * eps;
        q_pow[i] = &q_pow[i - 1] * &q;
    }
    let prob = |e: usize| Rational::from_integer(binom.get(n, e as i64)) * &eps_pow[e] * &q_pow[n - e];
    let mut p = Rational::zero();
    if k > 0 {
        for e in n - k + 1..=n {
            p += prob(e);
        }
    }
    for e in 1..=n - k {
        let mut hidden = Rational::zero();
        for (w, a) in spectrum.iter().enumerate().take(e + 1).skip(1) {
            if !a.is_zero() {
                hidden += a * Rational::new(binom.get(e, w as i64), binom.get(n, w as i64));
            }
        }
        if hidden > Rational::one() {
            hidden = Rational::one();
        }
        p += prob(e) * hidden;
    }
    Ok(p)
}

/// Evaluates the bound on every point of `grid`.
pub fn bound_curve(
    spectrum: &[f64],
    n: usize,
    k: usize,
    grid: &[Rational],
    label: impl Into<String>,
) -> Result<BoundCurve> {
    let ub = UnionBound::new(spectrum, n, k)?;
    let points = grid
        .iter()
        .map(|g| {
            let x = to_f64(g);
            ub.eval(x).map(|p| (x, p))
        })
        .collect::<Result<_>>()?;
    Ok(BoundCurve { label: label.into(), n, k, points })
}
