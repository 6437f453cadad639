//! Outer cyclic codes: GF(2) polynomials, CRC codes, BCH codes and shortening.
//!
//! Coordinate convention for a length-`N` word: coordinate `j` is the
//! coefficient of `x^(N-1-j)`. Systematic encoders therefore put the message
//! in coordinates `0..K` (highest powers) and the parity in `K..N`, and
//! shortening deletes leading message coordinates.
//!
//! [`CoordinateOrder::Ascending`] is the other common layout. It lists the
//! message coefficients and then the parity coefficients, each block from
//! low power to high. The two layouts give the same code up to a coordinate
//! permutation. They do yield different concatenations when the outer code
//! is wired straight into an inner code.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Polynomial over GF(2); bit `i` of the packed words is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(e: usize) -> Self {
        let mut p = Gf2Poly {
            words: vec![0; e / 64 + 1],
        };
        p.words[e / 64] = 1 << (e % 64);
        p
    }

    /// From the exponents that carry a one.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p = p.add(&Self::monomial(e));
        }
        p
    }

    /// Coefficients packed into an integer, bit `i` for `x^i`.
    pub fn from_u128(bits: u128) -> Self {
        Gf2Poly {
            words: vec![bits as u64, (bits >> 64) as u64],
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.words
            .get(e / 64)
            .is_some_and(|w| (w >> (e % 64)) & 1 == 1)
    }

    pub fn exponents(&self) -> Vec<usize> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).filter(|&e| self.coeff(e)).collect(),
        }
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let len = self.words.len().max(other.words.len());
        let words = (0..len)
            .map(|i| self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0))
            .collect();
        Gf2Poly { words }.normalized()
    }

    pub fn shl(&self, s: usize) -> Gf2Poly {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (s / 64, s % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] |= w << bs;
            if bs != 0 {
                words[i + ws + 1] |= w >> (64 - bs);
            }
        }
        Gf2Poly { words }.normalized()
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut acc = Self::zero();
        for e in other.exponents() {
            acc = acc.add(&self.shl(e));
        }
        acc
    }

    /// Quotient and remainder of division by `divisor`.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            quot = quot.add(&Self::monomial(rd - dd));
            rem = rem.add(&divisor.shl(rd - dd));
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Result<Gf2Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Reads `x^8+x^2+1` style sums of monomials, or `0x…` coefficient hex.
    pub fn parse(text: &str) -> Result<Gf2Poly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("polynomial {text:?}: {why}"));
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let bits = u128::from_str_radix(hex, 16).map_err(|_| bad("invalid hex"))?;
            return Ok(Self::from_u128(bits));
        }
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut p = Self::zero();
        for term in s.split('+') {
            let e = match term {
                "1" => 0,
                "0" => continue,
                "x" | "X" => 1,
                t => {
                    let exp = t
                        .strip_prefix("x^")
                        .or_else(|| t.strip_prefix("X^"))
                        .ok_or_else(|| bad("terms must look like x^e, x or 1"))?;
                    exp.parse::<usize>().map_err(|_| bad("bad exponent"))?
                }
            };
            p = p.add(&Self::monomial(e));
        }
        Ok(p)
    }

    /// Reads a length-`n` word as a polynomial under the module's coordinate convention.
    pub fn from_word(word: &BitVector) -> Gf2Poly {
        let n = word.len();
        Self::from_exponents(&word.ones().map(|j| n - 1 - j).collect::<Vec<_>>())
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

/// `x^8+x^4+x^3+x^2+1`.
pub const DEFAULT_GF256_PRIMITIVE: u128 = 0x11d;

/// GF(2^m) with log/antilog tables for the primitive element `α = x`.
#[derive(Clone, Debug)]
pub struct Gf2mField {
    m: u32,
    primitive_poly: Gf2Poly,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf2mField {
    /// Builds the field; fails unless `poly` has degree `m` and is primitive.
    pub fn new(m: u32, poly: Gf2Poly) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::Domain(format!("field degree {m} not in 2..=16")));
        }
        if poly.degree() != Some(m as usize) {
            return Err(Error::Domain(format!("{poly} does not have degree {m}")));
        }
        let order = (1u32 << m) - 1;
        let reduce: u32 = poly
            .exponents()
            .into_iter()
            .filter(|&e| e < m as usize)
            .map(|e| 1u32 << e)
            .sum();
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; 1 << m];
        let mut a = 1u32;
        for i in 0..order {
            if log[a as usize] != u32::MAX {
                return Err(Error::Domain(format!(
                    "{poly} is not primitive: x has order {i}"
                )));
            }
            exp[i as usize] = a;
            log[a as usize] = i;
            a <<= 1;
            if a >> m & 1 == 1 {
                a = (a & order) ^ reduce;
            }
        }
        if a != 1 {
            return Err(Error::Domain(format!("{poly} is not primitive")));
        }
        Ok(Gf2mField {
            m,
            primitive_poly: poly,
            exp,
            log,
        })
    }

    pub fn default_for(m: u32) -> Result<Self> {
        let poly = match m {
            2 => 0x7,
            3 => 0xb,
            4 => 0x13,
            5 => 0x25,
            6 => 0x43,
            7 => 0x89,
            8 => DEFAULT_GF256_PRIMITIVE,
            9 => 0x211,
            10 => 0x409,
            11 => 0x805,
            12 => 0x1053,
            13 => 0x201b,
            14 => 0x4443,
            15 => 0x8003,
            16 => 0x1100b,
            _ => return Err(Error::Domain(format!("no default primitive polynomial for m = {m}"))),
        };
        Self::new(m, Gf2Poly::from_u128(poly))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Multiplicative order `2^m - 1`.
    pub fn order(&self) -> u32 {
        (1 << self.m) - 1
    }

    pub fn primitive_poly(&self) -> &Gf2Poly {
        &self.primitive_poly
    }

    /// `α^i` as a bit pattern.
    pub fn alpha_pow(&self, i: u64) -> u32 {
        self.exp[(i % self.order() as u64) as usize]
    }

    pub fn log(&self, x: u32) -> Option<u32> {
        match self.log.get(x as usize) {
            Some(&l) if l != u32::MAX => Some(l),
            _ => None,
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % self.order()) as usize]
    }

    /// Cyclotomic coset `{i·2^j mod (2^m-1)}` in discovery order.
    pub fn conjugacy_class(&self, i: u32) -> Vec<u32> {
        let order = self.order();
        let start = i % order;
        let mut class = vec![start];
        let mut c = (start * 2) % order;
        while c != start {
            class.push(c);
            c = (c * 2) % order;
        }
        class
    }

    /// Minimal polynomial of `α^i`: the product of `(x + α^c)` over its conjugacy class.
    pub fn minimal_poly(&self, i: u32) -> Gf2Poly {
        // coefficients in GF(2^m), low degree first
        let mut coeffs: Vec<u32> = vec![1];
        for c in self.conjugacy_class(i) {
            let root = self.alpha_pow(c as u64);
            let mut next = vec![0u32; coeffs.len() + 1];
            for (d, &a) in coeffs.iter().enumerate() {
                next[d + 1] ^= a;
                next[d] ^= self.mul(a, root);
            }
            coeffs = next;
        }
        let mut exps = Vec::new();
        for (d, &a) in coeffs.iter().enumerate() {
            match a {
                0 => {}
                1 => exps.push(d),
                _ => panic!("minimal polynomial has a coefficient outside GF(2)"),
            }
        }
        Gf2Poly::from_exponents(&exps)
    }
}

/// Which family an outer code comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OuterKind {
    Crc,
    Bch,
}

/// How polynomial coefficients are laid out along the codeword.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordinateOrder {
    /// `(m, p)` with coordinate `j` holding the coefficient of `x^(N-1-j)`.
    #[default]
    Descending,
    /// `(m_0..m_{K-1}, p_0..p_{r-1})`: each block in ascending powers.
    Ascending,
}

impl CoordinateOrder {
    fn is_default(&self) -> bool {
        *self == CoordinateOrder::Descending
    }
}

/// Parameters of a (possibly shortened) cyclic outer code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterCodeSpec {
    pub kind: OuterKind,
    pub order: CoordinateOrder,
    pub length: usize,
    pub dimension: usize,
    pub generator: Gf2Poly,
    /// Information positions removed from the natural length.
    pub shortening: usize,
    /// BCH only: field degree, capability and field polynomial.
    pub bch: Option<(u32, usize, Gf2Poly)>,
}

impl OuterCodeSpec {
    pub fn crc(g: Gf2Poly, length: usize) -> Result<Self> {
        let r = g
            .degree()
            .ok_or_else(|| Error::Domain("zero generator polynomial".into()))?;
        if length <= r {
            return Err(Error::Domain(format!(
                "length {length} must exceed generator degree {r}"
            )));
        }
        Ok(OuterCodeSpec {
            kind: OuterKind::Crc,
            order: CoordinateOrder::Descending,
            length,
            dimension: length - r,
            generator: g,
            shortening: 0,
            bch: None,
        })
    }

    pub fn bch(field: &Gf2mField, t: usize, length: usize) -> Result<Self> {
        let g = bch_generator_poly(field, t)?;
        let r = g.degree().unwrap_or(0);
        let natural = field.order() as usize;
        if length <= r || length > natural {
            return Err(Error::Domain(format!(
                "BCH length {length} must lie in {}..={natural}",
                r + 1
            )));
        }
        Ok(OuterCodeSpec {
            kind: OuterKind::Bch,
            order: CoordinateOrder::Descending,
            length,
            dimension: length - r,
            generator: g,
            shortening: natural - length,
            bch: Some((field.m(), t, field.primitive_poly().clone())),
        })
    }

    pub fn with_order(mut self, order: CoordinateOrder) -> Self {
        self.order = order;
        self
    }

    pub fn code(&self) -> Result<LinearCode> {
        let code = crc_code(&self.generator, self.length)?;
        Ok(match self.order {
            CoordinateOrder::Descending => code,
            CoordinateOrder::Ascending => ascending_layout(&code)?,
        })
    }

    pub fn to_json(&self) -> OuterCodeJson {
        OuterCodeJson {
            kind: self.kind,
            g: self.generator.to_string(),
            n: self.length,
            m: self.bch.as_ref().map(|b| b.0),
            t: self.bch.as_ref().map(|b| b.1),
            primitive_poly: self.bch.as_ref().map(|b| b.2.to_string()),
            order: self.order,
        }
    }
}

/// Outer-code descriptor file: `{kind, g, N}` plus `m, t, primitive_poly` for BCH.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterCodeJson {
    pub kind: OuterKind,
    #[serde(default)]
    pub g: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive_poly: Option<String>,
    #[serde(default, skip_serializing_if = "CoordinateOrder::is_default")]
    pub order: CoordinateOrder,
}

impl OuterCodeJson {
    pub fn build(&self) -> Result<OuterCodeSpec> {
        Ok(self.build_descending()?.with_order(self.order))
    }

    fn build_descending(&self) -> Result<OuterCodeSpec> {
        match self.kind {
            OuterKind::Crc => OuterCodeSpec::crc(Gf2Poly::parse(&self.g)?, self.n),
            OuterKind::Bch => {
                let m = self
                    .m
                    .ok_or_else(|| Error::Parse("BCH descriptor needs field `m`".into()))?;
                let t = self
                    .t
                    .ok_or_else(|| Error::Parse("BCH descriptor needs field `t`".into()))?;
                let field = match &self.primitive_poly {
                    Some(p) => Gf2mField::new(m, Gf2Poly::parse(p)?)?,
                    None => Gf2mField::default_for(m)?,
                };
                let spec = OuterCodeSpec::bch(&field, t, self.n)?;
                if !self.g.is_empty() && Gf2Poly::parse(&self.g)? != spec.generator {
                    return Err(Error::Integrity(format!(
                        "descriptor g = {} disagrees with the BCH construction {}",
                        self.g, spec.generator
                    )));
                }
                Ok(spec)
            }
        }
    }
}

/// Systematic cyclic-redundancy code of length `n` generated by `g`.
///
/// Message coordinates `0..K` carry `m(x)`; parity coordinates carry
/// `x^r·m(x) mod g(x)`, so every codeword polynomial is a multiple of `g`.
pub fn crc_code(g: &Gf2Poly, n: usize) -> Result<LinearCode> {
    let r = g
        .degree()
        .ok_or_else(|| Error::Domain("zero generator polynomial".into()))?;
    if n <= r {
        return Err(Error::Domain(format!(
            "length {n} must exceed generator degree {r}"
        )));
    }
    let k = n - r;
    let mut rows = vec![BitVector::zeros(n); k];
    // x^e mod g for e = r, r+1, ..., n-1
    let mut rem = Gf2Poly::monomial(r).rem(g)?;
    for e in r..n {
        let j = n - 1 - e;
        let row = &mut rows[j];
        row.set(j, true);
        for p in rem.exponents() {
            row.set(n - 1 - p, true);
        }
        rem = rem.shl(1).rem(g)?;
    }
    let generator = BitMatrix::from_rows(n, rows)?;
    LinearCode::new(generator, (0..k).collect())
}

/// Relabels a systematic `(m, p)` code from [`crc_code`] into the ascending layout.
pub fn ascending_layout(code: &LinearCode) -> Result<LinearCode> {
    let (n, k) = (code.n(), code.k());
    if code.info_positions() != (0..k).collect::<Vec<_>>().as_slice() {
        return Err(Error::shape("ascending_layout", "message must occupy coordinates 0..K"));
    }
    // new coordinate c takes old coordinate src[c]
    let src: Vec<usize> = (0..k).rev().chain((k..n).rev()).collect();
    let g = code.generator().select_columns(&src);
    LinearCode::systematic_on(&g, &(0..k).collect::<Vec<_>>())
}

/// Generator of the narrow-sense binary BCH code correcting `t` errors:
/// the product of the distinct minimal polynomials of `α, α², …, α^{2t}`.
pub fn bch_generator_poly(field: &Gf2mField, t: usize) -> Result<Gf2Poly> {
    if t == 0 || 2 * t >= field.order() as usize {
        return Err(Error::Domain(format!(
            "BCH capability t = {t} needs 1 <= 2t < {}",
            field.order()
        )));
    }
    let mut seen = vec![false; field.order() as usize];
    let mut g = Gf2Poly::one();
    for i in 1..=(2 * t) as u32 {
        if seen[i as usize] {
            continue;
        }
        for c in field.conjugacy_class(i) {
            seen[c as usize] = true;
        }
        g = g.mul(&field.minimal_poly(i));
    }
    Ok(g)
}

/// BCH code over `field` shortened to length `n` by deleting leading message positions.
pub fn shortened_bch_code(field: &Gf2mField, t: usize, n: usize) -> Result<LinearCode> {
    OuterCodeSpec::bch(field, t, n)?.code()
}
