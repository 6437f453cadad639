//! Every curve of one figure written as CSVs into a directory.
//!
//! `cargo run --release --example reproduce_figure -- fig1 out/`

use polarcat::bounds::default_grid;
use polarcat::cli::write_figure;
use polarcat::io::{OutputDir, RunManifest};
use polarcat::recipes::{compute_figure, default_seeds, default_xi, Scheme};
use polarcat::spectrum::Budget;

fn main() -> polarcat::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let scheme: Scheme = args.get(1).map_or("fig1", String::as_str).parse()?;
    let dir = args.get(2).map_or("polarcat-out", String::as_str);

    let data = compute_figure(scheme, &default_seeds(), &default_xi(), Budget::default())?;
    let curves = data.curves(&default_grid())?;
    let mut out = OutputDir::create(dir, RunManifest::start(args.clone()))?;
    write_figure(&mut out, &data, &curves)?;
    out.finish()?;

    println!("{}", serde_json::to_string_pretty(&data.summary()?)?);
    println!("{} files under {dir}/{}", out_count(dir, scheme), scheme.figure());
    Ok(())
}

fn out_count(dir: &str, s: Scheme) -> usize {
    std::fs::read_dir(format!("{dir}/{}", s.figure())).map_or(0, |d| d.count())
}
