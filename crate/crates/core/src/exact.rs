//! Exact-arithmetic helpers shared by the spectrum, ensemble and bound code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Pascal triangle of exact binomials `C(n, j)` for `n <= max_n`.
#[derive(Clone, Debug)]
pub struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![BigInt::one(); n + 1];
            for j in 1..n {
                row[j] = &rows[n - 1][j - 1] + &rows[n - 1][j];
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    /// `C(n, j)`, zero outside `0 <= j <= n`.
    pub fn get(&self, n: usize, j: i64) -> BigInt {
        if j < 0 || j as usize > n {
            BigInt::zero()
        } else {
            self.rows[n][j as usize].clone()
        }
    }

    pub fn get_ref(&self, n: usize, j: usize) -> &BigInt {
        &self.rows[n][j]
    }
}

/// Parses `"3/10"`, `"0.3"`, `"1"` or `"2.5e-1"`-free decimals into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("cannot read {text:?} as a fraction or decimal"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Domain(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// `"p/q"` in lowest terms (`"p"` when the denominator is one).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest double to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn big_to_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(f64::INFINITY)
}

/// `2^k` as an exact integer.
pub fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        let b = Binomials::new(64);
        assert_eq!(b.get(4, 2), BigInt::from(6));
        assert_eq!(b.get(64, 32).to_string(), "1832624140942590534");
        assert_eq!(b.get(5, -1), BigInt::zero());
        assert_eq!(b.get(5, 6), BigInt::zero());
    }

    #[test]
    fn parse_fractions_and_decimals() {
        let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
        assert_eq!(parse_rational("3/10").unwrap(), r(3, 10));
        assert_eq!(parse_rational("0.3").unwrap(), r(3, 10));
        assert_eq!(parse_rational(".99").unwrap(), r(99, 100));
        assert_eq!(parse_rational("1").unwrap(), r(1, 1));
        assert_eq!(parse_rational("-0.5").unwrap(), r(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&r(6, 20)), "3/10");
        assert_eq!(format_rational(&r(4, 2)), "2");
    }
}
