//! The five polar + outer-code schemes studied, and the full per-figure
//! pipeline: spectra, interleaver instances, ensemble average, expurgation
//! and bound curves.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{bound_curve, BoundCurve};
use crate::code::LinearCode;
use crate::cyclic::{CoordinateOrder, Gf2Poly, Gf2mField, OuterCodeSpec};
use crate::ensemble::{
    check_awef_total, expurgate, instance_wef, seeded_wefs, uniform_awef, AvgSpectrum, Census,
    ExpurgationReport, Interleaver,
};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::polar;
use crate::spectrum::{code_spectra, code_wef, Budget, WeightSpectrum};

pub const CRC8: &str = "x^8+x^2+1";
pub const CRC16: &str = "x^16+x^12+x^5+1";

/// Design erasure probability of every inner polar code.
pub fn design_eps() -> Rational {
    Rational::new(3.into(), 10.into())
}

/// Default good-subset fraction for expurgation.
pub fn default_xi() -> Rational {
    Rational::new(99.into(), 100.into())
}

/// Interleaver seeds used when none are given.
pub fn default_seeds() -> Vec<u64> {
    (1..=25).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Scheme {
    /// polar(64,48) + CRC-8 (48,40)
    Crc8,
    /// polar(64,48) + BCH(48,40)
    Bch40,
    /// polar(64,48) + CRC-16 (48,32)
    Crc16,
    /// polar(64,48) + BCH(48,32)
    Bch32,
    /// polar(64,56) + CRC-16 (56,40)
    Crc16Long,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Crc8,
        Scheme::Bch40,
        Scheme::Crc16,
        Scheme::Bch32,
        Scheme::Crc16Long,
    ];

    pub fn figure(self) -> &'static str {
        match self {
            Scheme::Crc8 => "fig1",
            Scheme::Bch40 => "fig2",
            Scheme::Crc16 => "fig3",
            Scheme::Bch32 => "fig4",
            Scheme::Crc16Long => "fig5",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Scheme::Crc8 => "polar(64,48)+CRC-8(48,40)",
            Scheme::Bch40 => "polar(64,48)+BCH(48,40)",
            Scheme::Crc16 => "polar(64,48)+CRC-16(48,32)",
            Scheme::Bch32 => "polar(64,48)+BCH(48,32)",
            Scheme::Crc16Long => "polar(64,56)+CRC-16(56,40)",
        }
    }

    /// `(n, k)` of the inner polar code.
    pub fn inner_params(self) -> (usize, usize) {
        match self {
            Scheme::Crc16Long => (64, 56),
            _ => (64, 48),
        }
    }

    pub fn outer_spec(self) -> Result<OuterCodeSpec> {
        let f8 = || Gf2mField::default_for(8);
        match self {
            Scheme::Crc8 => OuterCodeSpec::crc(Gf2Poly::parse(CRC8)?, 48),
            Scheme::Bch40 => OuterCodeSpec::bch(&f8()?, 1, 48),
            Scheme::Crc16 => OuterCodeSpec::crc(Gf2Poly::parse(CRC16)?, 48),
            Scheme::Bch32 => OuterCodeSpec::bch(&f8()?, 2, 48),
            Scheme::Crc16Long => OuterCodeSpec::crc(Gf2Poly::parse(CRC16)?, 56),
        }
    }

    pub fn codes(self) -> Result<SchemeCodes> {
        self.codes_with_order(CoordinateOrder::Descending)
    }

    pub fn codes_with_order(self, order: CoordinateOrder) -> Result<SchemeCodes> {
        let (n, k) = self.inner_params();
        Ok(SchemeCodes {
            outer: self.outer_spec()?.with_order(order).code()?,
            inner: polar::systematic_polar_code(n, k, &design_eps())?,
        })
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.figure())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.figure() == s)
            .ok_or_else(|| Error::Parse(format!("unknown figure {s:?}; expected fig1..fig5")))
    }
}

#[derive(Clone, Debug)]
pub struct SchemeCodes {
    pub outer: LinearCode,
    pub inner: LinearCode,
}

/// Every spectrum behind one figure.
#[derive(Clone, Debug)]
pub struct FigureData {
    pub scheme: Scheme,
    pub polar_wef: WeightSpectrum,
    pub identity_wef: WeightSpectrum,
    pub seeded: Vec<(u64, WeightSpectrum)>,
    pub awef: AvgSpectrum,
    pub expurgation: ExpurgationReport,
}

/// Bound curves for every plotted series of a figure.
#[derive(Clone, Debug)]
pub struct FigureCurves {
    pub polar: BoundCurve,
    pub no_interleaver: BoundCurve,
    pub interleavers: Vec<(u64, BoundCurve)>,
    pub awef: BoundCurve,
    pub expurgated: Option<BoundCurve>,
}

/// Minimum distances reported for a figure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FigureSummary {
    pub scheme: String,
    pub polar_dmin: Option<usize>,
    pub no_interleaver_dmin: Option<usize>,
    pub awef_dmin: Option<usize>,
    pub expurgation_adoptable: bool,
    pub expurgated_dmin: Option<usize>,
    pub census: BTreeMap<usize, usize>,
}

/// Computes all spectra for `scheme`.
pub fn compute_figure(scheme: Scheme, seeds: &[u64], xi: &Rational, budget: Budget) -> Result<FigureData> {
    let codes = scheme.codes()?;
    let seeded = seeded_wefs(&codes.outer, &codes.inner, seeds, budget)?;
    figure_from_instances(scheme, &codes, seeded, xi, budget)
}

/// Same as [`compute_figure`] but with instance spectra computed elsewhere.
pub fn figure_from_instances(
    scheme: Scheme,
    codes: &SchemeCodes,
    seeded: Vec<(u64, WeightSpectrum)>,
    xi: &Rational,
    budget: Budget,
) -> Result<FigureData> {
    let (polar_wef, polar_io) = code_spectra(&codes.inner, budget)?;
    let outer_wef = code_wef(&codes.outer, budget)?;
    let identity_wef = instance_wef(&codes.outer, &codes.inner, Interleaver::Identity, budget)?;
    let awef = uniform_awef(&outer_wef, &polar_io)?;
    check_awef_total(&awef, codes.outer.k())?;
    let expurgation = expurgate(&awef, xi)?;
    Ok(FigureData { scheme, polar_wef, identity_wef, seeded, awef, expurgation })
}

impl FigureData {
    pub fn census(&self) -> Result<Census> {
        Census::from_wefs(&self.seeded)
    }

    pub fn summary(&self) -> Result<FigureSummary> {
        Ok(FigureSummary {
            scheme: self.scheme.label().to_string(),
            polar_dmin: self.polar_wef.min_distance(),
            no_interleaver_dmin: self.identity_wef.min_distance(),
            awef_dmin: self.awef.min_distance(),
            expurgation_adoptable: self.expurgation.adoptable,
            expurgated_dmin: self
                .expurgation
                .adoptable
                .then(|| self.expurgation.good_spectrum.min_distance())
                .flatten(),
            census: self.census()?.histogram,
        })
    }

    pub fn curves(&self, grid: &[Rational]) -> Result<FigureCurves> {
        let (n, k_inner) = self.scheme.inner_params();
        let k = self
            .identity_wef
            .dimension()
            .ok_or_else(|| Error::Integrity("concatenated spectrum total is not a power of two".into()))?;
        let polar = bound_curve(&self.polar_wef.to_f64(), n, k_inner, grid, "polar")?;
        let no_interleaver = bound_curve(&self.identity_wef.to_f64(), n, k, grid, "no-interleaver")?;
        let interleavers = self
            .seeded
            .iter()
            .map(|(s, w)| Ok((*s, bound_curve(&w.to_f64(), n, k, grid, format!("interleaver-{s}"))?)))
            .collect::<Result<_>>()?;
        let awef = bound_curve(&self.awef.to_f64(), n, k, grid, "awef")?;
        let expurgated = if self.expurgation.adoptable {
            let label = format!("expurgated-xi-{}", format_rational(&self.expurgation.xi));
            Some(bound_curve(&self.expurgation.good_spectrum.to_f64(), n, k, grid, label)?)
        } else {
            None
        };
        Ok(FigureCurves { polar, no_interleaver, interleavers, awef, expurgated })
    }
}
