//! CRC and shortened BCH outer codes: generator polynomials and spectra.

use polarcat::cyclic::{bch_generator_poly, crc_code, shortened_bch_code, Gf2Poly, Gf2mField};
use polarcat::spectrum::{code_wef, Budget};

fn main() -> polarcat::Result<()> {
    let field = Gf2mField::default_for(8)?;
    println!("GF(2^8) from {}", field.primitive_poly());
    for t in [1, 2] {
        println!("BCH t={t}: g(x) = {}", bch_generator_poly(&field, t)?);
    }

    let codes = [
        ("CRC-8 (48,40)", crc_code(&Gf2Poly::parse("x^8+x^2+1")?, 48)?),
        ("CRC-16 (48,32)", crc_code(&Gf2Poly::parse("x^16+x^12+x^5+1")?, 48)?),
        ("BCH (48,40)", shortened_bch_code(&field, 1, 48)?),
        ("BCH (48,32)", shortened_bch_code(&field, 2, 48)?),
    ];
    for (name, code) in codes {
        // enumerated through the small dual and MacWilliams
        let wef = code_wef(&code, Budget::default())?;
        let low: Vec<String> = (1..=8)
            .filter(|&w| wef.get(w).bits() > 0)
            .map(|w| format!("A{w}={}", wef.get(w)))
            .collect();
        println!("{name}: d_min {} [{}]", wef.min_distance().unwrap(), low.join(", "));
    }
    Ok(())
}
