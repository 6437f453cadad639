//! Minimum distances of concatenations through seeded random interleavers.
//!
//! `cargo run --release --example census -- fig2 1..25`

use polarcat::cli::parse_seeds;
use polarcat::ensemble::dmin_census;
use polarcat::recipes::Scheme;
use polarcat::spectrum::Budget;

fn main() -> polarcat::Result<()> {
    let mut args = std::env::args().skip(1);
    let scheme: Scheme = args.next().as_deref().unwrap_or("fig1").parse()?;
    let seeds = parse_seeds(args.next().as_deref().unwrap_or("1..10"))?;
    let codes = scheme.codes()?;
    let census = dmin_census(&codes.outer, &codes.inner, &seeds, Budget::default())?;
    println!("{} over {} seeds", scheme.label(), seeds.len());
    for (seed, d) in &census.per_seed {
        println!("  seed {seed:>3}: d_min {d}");
    }
    println!("histogram: {:?}", census.histogram);
    Ok(())
}
