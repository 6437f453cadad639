//! Union bounds on ML block error over the BEC for polar(64,48) alone, the
//! CRC-8 concatenation, and the CRC-8 ensemble average.

use polarcat::bounds::{bound_curve, default_grid, singleton_bep};
use polarcat::ensemble::{instance_wef, uniform_awef, Interleaver};
use polarcat::recipes::Scheme;
use polarcat::spectrum::{code_spectra, code_wef, Budget};

fn main() -> polarcat::Result<()> {
    let b = Budget::default();
    let codes = Scheme::Crc8.codes()?;
    let (polar_wef, polar_io) = code_spectra(&codes.inner, b)?;
    let concat = instance_wef(&codes.outer, &codes.inner, Interleaver::Identity, b)?;
    let avg = uniform_awef(&code_wef(&codes.outer, b)?, &polar_io)?;

    let grid = default_grid();
    let polar = bound_curve(&polar_wef.to_f64(), 64, 48, &grid, "polar")?;
    let ident = bound_curve(&concat.to_f64(), 64, 40, &grid, "no interleaver")?;
    let awef = bound_curve(&avg.to_f64(), 64, 40, &grid, "awef")?;
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "eps", "polar", "concat", "awef", "MDS(64,40)");
    for i in (0..grid.len()).step_by(5) {
        let e = polar.points[i].0;
        println!(
            "{e:>6.2} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            polar.points[i].1,
            ident.points[i].1,
            awef.points[i].1,
            singleton_bep(64, 40, e)?
        );
    }
    Ok(())
}
