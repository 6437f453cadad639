//! Monte Carlo ML decoding on the BEC checked against the union bound.

use polarcat::bounds::union_bound_bec;
use polarcat::ensemble::{concat_code, Interleaver};
use polarcat::mcsim::simulate_bep;
use polarcat::recipes::Scheme;
use polarcat::spectrum::{code_wef, Budget};

fn main() -> polarcat::Result<()> {
    let codes = Scheme::Crc8.codes()?;
    let code = concat_code(&codes.outer, &Interleaver::Identity.permutation(48), &codes.inner)?;
    let wef = code_wef(&code, Budget::default())?;
    for eps in [0.1, 0.2, 0.3] {
        let sim = simulate_bep(&code, eps, 200_000, 7)?;
        let bound = union_bound_bec(&wef.to_f64(), code.n(), code.k(), eps)?;
        println!(
            "eps {eps}: simulated {:.4e} [{:.4e}, {:.4e}], bound {bound:.4e}",
            sim.estimate, sim.ci95[0], sim.ci95[1]
        );
    }
    Ok(())
}
