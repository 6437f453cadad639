//! CSV writers and readers for spectra, curves and censuses, plus the run
//! manifest written next to every output.
//!
//! CSVs carry data only and are byte-stable across runs. Timestamps and the
//! command line go in the manifest.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::BoundCurve;
use crate::ensemble::{AvgSpectrum, Census};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, to_f64, Rational};
use crate::spectrum::{IoSpectrum, WeightSpectrum};

/// Decimal with 12 significant digits.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn wef_csv(w: &WeightSpectrum) -> String {
    let mut s = String::from("weight,multiplicity\n");
    for (i, a) in w.counts().iter().enumerate() {
        writeln!(s, "{i},{a}").unwrap();
    }
    s
}

/// Nonzero entries only, ordered by input weight then total weight.
pub fn io_csv(io: &IoSpectrum) -> String {
    let mut s = String::from("input_weight,total_weight,multiplicity\n");
    let mut rows: Vec<_> = io.entries().filter(|(_, _, a)| **a != BigInt::from(0)).collect();
    rows.sort_by_key(|&(i, w, _)| (i, w));
    for (i, w, a) in rows {
        writeln!(s, "{i},{w},{a}").unwrap();
    }
    s
}

pub fn awef_csv(avg: &AvgSpectrum) -> String {
    let mut s = String::from("weight,multiplicity,decimal\n");
    for (w, v) in avg.values().iter().enumerate() {
        writeln!(s, "{w},{},{}", format_rational(v), sig12(to_f64(v))).unwrap();
    }
    s
}

pub fn curve_csv(c: &BoundCurve) -> String {
    let mut s = String::from("epsilon,p_block_upper_bound\n");
    for &(e, p) in &c.points {
        writeln!(s, "{},{}", sig12(e), sig12(p)).unwrap();
    }
    s
}

pub fn census_csv(c: &Census) -> String {
    let mut s = String::from("seed,dmin\n");
    for (seed, d) in &c.per_seed {
        writeln!(s, "{seed},{d}").unwrap();
    }
    s
}

/// Reads `weight,multiplicity[,...]` with integer or `p/q` multiplicities.
///
/// Missing weights are zero; the spectrum length is one past the largest
/// weight listed.
pub fn parse_spectrum_csv(text: &str) -> Result<Vec<Rational>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim_start().starts_with("weight") => {}
        _ => return Err(Error::Parse("spectrum CSV must start with a `weight,...` header".into())),
    }
    let mut pairs = Vec::new();
    for (no, line) in lines {
        let mut cols = line.split(',');
        let (w, a) = match (cols.next(), cols.next()) {
            (Some(w), Some(a)) => (w, a),
            _ => return Err(Error::Parse(format!("line {}: expected weight,multiplicity", no + 1))),
        };
        let w: usize = w
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad weight {w:?}", no + 1)))?;
        let a = parse_rational(a).map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        if a < Rational::from_integer(0.into()) {
            return Err(Error::Parse(format!("line {}: negative multiplicity", no + 1)));
        }
        pairs.push((w, a));
    }
    let n = pairs
        .iter()
        .map(|p| p.0)
        .max()
        .ok_or_else(|| Error::Parse("spectrum CSV has no rows".into()))?;
    let mut out = vec![Rational::from_integer(0.into()); n + 1];
    for (w, a) in pairs {
        out[w] += a;
    }
    Ok(out)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Provenance record written as `manifest.json` beside each command's outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub descriptor_sha256: Vec<String>,
    pub version: String,
    pub seeds: Vec<u64>,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub outputs: Vec<String>,
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl RunManifest {
    pub fn start(command: Vec<String>) -> Self {
        RunManifest {
            command,
            descriptor_sha256: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seeds: Vec::new(),
            started_unix: now(),
            finished_unix: 0,
            outputs: Vec::new(),
        }
    }
}

/// Collects output files under one directory and finishes with a manifest.
pub struct OutputDir {
    root: PathBuf,
    pub manifest: RunManifest,
}

impl OutputDir {
    pub fn create(root: impl AsRef<Path>, manifest: RunManifest) -> Result<Self> {
        fs::create_dir_all(root.as_ref())?;
        Ok(OutputDir { root: root.as_ref().to_path_buf(), manifest })
    }

    pub fn path(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let p = self.root.join(name);
        if let Some(parent) = p.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&p, contents)?;
        self.manifest.outputs.push(name.to_string());
        Ok(p)
    }

    pub fn finish(mut self) -> Result<PathBuf> {
        self.manifest.finished_unix = now();
        let p = self.root.join("manifest.json");
        fs::write(&p, serde_json::to_string_pretty(&self.manifest)? + "\n")?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wef_round_trip() {
        let w = WeightSpectrum::new(vec![1.into(), 0.into(), 3.into(), 0.into()]);
        let text = wef_csv(&w);
        assert_eq!(text, "weight,multiplicity\n0,1\n1,0\n2,3\n3,0\n");
        let back = parse_spectrum_csv(&text).unwrap();
        assert_eq!(back, AvgSpectrum::from_wef(&w).values());
    }

    #[test]
    fn awef_round_trip_keeps_fractions() {
        let avg = AvgSpectrum::new(vec![
            Rational::from_integer(1.into()),
            Rational::new(1.into(), 3.into()),
            Rational::new(5.into(), 2.into()),
        ]);
        let text = awef_csv(&avg);
        assert!(text.contains("1,1/3,3.33333333333e-1"));
        assert_eq!(parse_spectrum_csv(&text).unwrap(), avg.values());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_spectrum_csv("").is_err());
        assert!(parse_spectrum_csv("weight,multiplicity\n").is_err());
        assert!(parse_spectrum_csv("weight,multiplicity\nx,1\n").is_err());
        assert!(parse_spectrum_csv("weight,multiplicity\n1,-2\n").is_err());
        assert!(parse_spectrum_csv("1,2\n").is_err());
        let sparse = parse_spectrum_csv("weight,multiplicity\n0,1\n4,2\n").unwrap();
        assert_eq!(sparse.len(), 5);
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.028), "2.80000000000e-2");
        assert_eq!(sig12(1.0), "1.00000000000e0");
        assert_eq!(sha256_hex(b"abc").len(), 64);
        assert!(sha256_hex(b"abc").starts_with("ba7816bf"));
    }
}
