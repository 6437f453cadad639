//! Uniform-interleaver average spectra and their expurgation at ξ = 0.99.

use polarcat::ensemble::{expurgate, uniform_awef};
use polarcat::exact::{format_rational, to_f64};
use polarcat::recipes::{default_xi, Scheme};
use polarcat::spectrum::{code_spectra, code_wef, Budget};

fn main() -> polarcat::Result<()> {
    for s in Scheme::ALL {
        let codes = s.codes()?;
        let outer = code_wef(&codes.outer, Budget::default())?;
        let (_, inner_io) = code_spectra(&codes.inner, Budget::default())?;
        let avg = uniform_awef(&outer, &inner_io)?;
        let d = avg.min_distance().unwrap();
        println!("{}: AWEF d_min {d}, multiplicity {:.6}", s.label(), to_f64(avg.get(d)));
        let rep = expurgate(&avg, &default_xi())?;
        if rep.adoptable {
            println!(
                "  expurgated: removed {:?} (mass {}), d_min {}",
                rep.removed_weights,
                format_rational(&rep.removed_mass),
                rep.good_spectrum.min_distance().unwrap()
            );
        } else {
            println!("  expurgation not adoptable");
        }
    }
    Ok(())
}
