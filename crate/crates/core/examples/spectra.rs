//! Exact WEF and IOWEF of a code, the MacWilliams round trip, and the
//! no-interleaver concatenations of all five schemes.

use num_bigint::BigInt;
use polarcat::ensemble::{instance_wef, Interleaver};
use polarcat::recipes::Scheme;
use polarcat::spectrum::{code_spectra, enumerate_wef, macwilliams_wef, Budget};
use polarcat::exact::pow2;
use std::time::Instant;

fn main() -> polarcat::Result<()> {
    let polar = Scheme::Crc8.codes()?.inner;
    let (wef, io) = code_spectra(&polar, Budget::default())?;
    println!("polar(64,48): A4 = {}, A6 = {}", wef.get(4), wef.get(6));
    println!("  IOWEF: input weight 4, total 4 -> {}", io.get(4, 4));

    // Dual enumeration (2^16 words) mapped back through MacWilliams.
    let dual = polar.dual();
    let dual_wef = enumerate_wef(dual.generator(), Budget::default())?;
    let back = macwilliams_wef(&dual_wef, &pow2(dual.k()))?;
    assert_eq!(back, wef);
    assert_eq!(wef.total(), BigInt::from(1u64) << 48);

    for s in Scheme::ALL {
        let codes = s.codes()?;
        let t = Instant::now();
        let w = instance_wef(&codes.outer, &codes.inner, Interleaver::Identity, Budget::default())?;
        let d = w.min_distance().unwrap();
        println!("{}: no interleaver d_min {d} (A = {}) in {:.1?}", s.label(), w.get(d), t.elapsed());
    }
    Ok(())
}
