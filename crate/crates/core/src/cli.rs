//! Command-line front end. The binary is a one-line wrapper around [`main_with`].
//!
//! Every flag can also come from a JSON config passed with `--config`, using
//! the flag name with `-` replaced by `_` as the key. Flags on the command
//! line win over the config, which wins over built-in defaults. Set
//! `POLARCAT_WORKERS` to size the worker pool.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_curve, default_grid, linear_grid};
use crate::descriptor::LoadedDescriptor;
use crate::ensemble::{check_awef_total, expurgate, instance_wef, seeded_wefs, uniform_awef, Census, Interleaver};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, pow2, to_f64, Rational};
use crate::io::{self, OutputDir, RunManifest};
use crate::mcsim::simulate_bep;
use crate::polar;
use crate::recipes::{compute_figure, default_seeds, default_xi, FigureCurves, FigureData, Scheme};
use crate::spectrum::{code_spectra, code_wef, Budget};

pub const WORKERS_ENV: &str = "POLARCAT_WORKERS";
const DEFAULT_OUT: &str = "polarcat-out";

#[derive(Parser, Debug)]
#[command(name = "polarcat", version, about = "Distance spectra and BEC union bounds for concatenated polar codes")]
pub struct Cli {
    /// JSON file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact BEC polar construction; prints or writes the design JSON.
    DesignPolar(DesignArgs),
    /// Exact weight enumerator (and IOWEF with --io) of a code.
    Spectrum(SpectrumArgs),
    /// Uniform-interleaver average enumerator, optionally expurgated.
    Awef(AwefArgs),
    /// Union-bound curve from a spectrum file or a code descriptor.
    Bound(BoundArgs),
    /// Minimum-distance census over seeded interleavers.
    Census(CensusArgs),
    /// Monte Carlo ML block-error estimate.
    Simulate(SimulateArgs),
    /// Named recipes: fig1..fig5, table1 or all.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
pub struct DesignArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Design erasure probability, e.g. 3/10 or 0.3.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    #[arg(long)]
    pub eps_min: Option<String>,
    #[arg(long)]
    pub eps_max: Option<String>,
    #[arg(long)]
    pub eps_step: Option<String>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Descriptor file or inline JSON.
    pub descriptor: String,
    #[arg(long)]
    pub io: bool,
    /// log2 of the largest enumeration allowed.
    #[arg(long)]
    pub budget: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the systematic generator in matrix text format.
    #[arg(long)]
    pub export_matrix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AwefArgs {
    #[arg(long)]
    pub outer: String,
    #[arg(long)]
    pub inner: String,
    #[arg(long)]
    pub expurgate: bool,
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long)]
    pub budget: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Code descriptor (alternative to --spectrum).
    pub descriptor: Option<String>,
    /// Spectrum CSV (`weight,multiplicity[,...]`).
    #[arg(long, conflicts_with = "descriptor")]
    pub spectrum: Option<PathBuf>,
    /// Code dimension; inferred when the spectrum sums to a power of two.
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub budget: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub outer: String,
    #[arg(long)]
    pub inner: String,
    /// `a..b` (inclusive) or a comma list.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Use the identity interleaver instead of seeded ones.
    #[arg(long)]
    pub identity: bool,
    /// JSON histogram to compare against, e.g. {"4": 21, "6": 4}.
    #[arg(long)]
    pub expected: Option<PathBuf>,
    #[arg(long)]
    pub budget: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    pub descriptor: String,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Curve CSV; warns when the estimate exceeds it at --eps.
    #[arg(long)]
    pub bound_curve: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(required = true)]
    pub recipes: Vec<String>,
    #[arg(long)]
    pub seeds: Option<String>,
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long)]
    pub budget: Option<u32>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Config-file equivalents of the command-line flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub eps: Option<String>,
    pub eps_min: Option<String>,
    pub eps_max: Option<String>,
    pub eps_step: Option<String>,
    pub io: Option<bool>,
    pub expurgate: Option<bool>,
    pub xi: Option<String>,
    pub budget: Option<u32>,
    pub seeds: Option<String>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub out: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))
    }
}

fn pick<T: Clone>(flag: Option<T>, cfg: &Option<T>) -> Option<T> {
    flag.or_else(|| cfg.clone())
}

/// Parses `a..b` (inclusive) or `s1,s2,...`.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("seeds {text:?}: expected a..b or a comma list"));
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

struct Ctx {
    cfg: Config,
    argv: Vec<String>,
}

impl Ctx {
    fn budget(&self, flag: Option<u32>) -> Budget {
        pick(flag, &self.cfg.budget).map(Budget::new).unwrap_or_default()
    }

    fn out(&self, flag: Option<PathBuf>) -> PathBuf {
        pick(flag, &self.cfg.out).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
    }

    fn xi(&self, flag: Option<String>) -> Result<Rational> {
        pick(flag, &self.cfg.xi).map(|s| parse_rational(&s)).unwrap_or_else(|| Ok(default_xi()))
    }

    fn seeds(&self, flag: Option<String>) -> Result<Vec<u64>> {
        pick(flag, &self.cfg.seeds).map(|s| parse_seeds(&s)).unwrap_or_else(|| Ok(default_seeds()))
    }

    fn grid(&self, g: GridArgs) -> Result<Vec<Rational>> {
        let lo = pick(g.eps_min, &self.cfg.eps_min);
        let hi = pick(g.eps_max, &self.cfg.eps_max);
        let step = pick(g.eps_step, &self.cfg.eps_step);
        if lo.is_none() && hi.is_none() && step.is_none() {
            return Ok(default_grid());
        }
        let lo = parse_rational(lo.as_deref().unwrap_or("0.05"))?;
        let hi = match hi {
            Some(h) => parse_rational(&h)?,
            None => lo.clone().max(parse_rational("0.5")?),
        };
        linear_grid(&lo, &hi, &parse_rational(step.as_deref().unwrap_or("0.01"))?)
    }

    fn manifest(&self) -> RunManifest {
        RunManifest::start(self.argv.clone())
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn main_with(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli, args) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn init_workers() -> Result<()> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v
            .parse()
            .map_err(|_| Error::Parse(format!("{WORKERS_ENV}={v:?} is not a worker count")))?;
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

pub fn run(cli: Cli, argv: Vec<String>) -> Result<()> {
    init_workers()?;
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let ctx = Ctx { cfg, argv };
    match cli.command {
        Command::DesignPolar(a) => cmd_design(&ctx, a),
        Command::Spectrum(a) => cmd_spectrum(&ctx, a),
        Command::Awef(a) => cmd_awef(&ctx, a),
        Command::Bound(a) => cmd_bound(&ctx, a),
        Command::Census(a) => cmd_census(&ctx, a),
        Command::Simulate(a) => cmd_simulate(&ctx, a),
        Command::Reproduce(a) => cmd_reproduce(&ctx, a),
    }
}

fn missing(flag: &str) -> Error {
    Error::Parse(format!("missing --{flag} (flag or config key)"))
}

fn cmd_design(ctx: &Ctx, a: DesignArgs) -> Result<()> {
    let n = pick(a.n, &ctx.cfg.n).ok_or_else(|| missing("n"))?;
    let k = pick(a.k, &ctx.cfg.k).ok_or_else(|| missing("k"))?;
    let eps = parse_rational(&pick(a.eps, &ctx.cfg.eps).ok_or_else(|| missing("eps"))?)?;
    let d = polar::design(n, k, &eps)?;
    let json = serde_json::to_string_pretty(&d.to_json())? + "\n";
    match pick(a.out, &ctx.cfg.out) {
        Some(dir) => {
            let mut out = OutputDir::create(dir, ctx.manifest())?;
            let p = out.write("design.json", &json)?;
            out.finish()?;
            println!("wrote {}", p.display());
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn sum_check(total: &num_bigint::BigInt, k: usize) -> Result<()> {
    if *total != pow2(k) {
        return Err(Error::Integrity(format!("spectrum sums to {total}, expected 2^{k}")));
    }
    Ok(())
}

fn cmd_spectrum(ctx: &Ctx, a: SpectrumArgs) -> Result<()> {
    let desc = LoadedDescriptor::load(&a.descriptor)?;
    let code = desc.build()?;
    let budget = ctx.budget(a.budget);
    let mut m = ctx.manifest();
    m.descriptor_sha256.push(desc.sha256());
    let mut out = OutputDir::create(ctx.out(a.out), m)?;
    let io_wanted = a.io || ctx.cfg.io.unwrap_or(false);
    let (wef, io_spec) = if io_wanted {
        let (w, io) = code_spectra(&code, budget)?;
        (w, Some(io))
    } else {
        (code_wef(&code, budget)?, None)
    };
    sum_check(&wef.total(), code.k())?;
    out.write("wef.csv", &io::wef_csv(&wef))?;
    if let Some(io_spec) = &io_spec {
        sum_check(&io_spec.total(), code.k())?;
        out.write("iowef.csv", &io::io_csv(io_spec))?;
    }
    if let Some(p) = a.export_matrix {
        fs::write(&p, code.generator().to_text())?;
    }
    println!("n = {}, k = {}", code.n(), code.k());
    match wef.min_distance() {
        Some(d) => println!("d_min = {d} (A_{d} = {})", wef.get(d)),
        None => println!("d_min = none (zero-dimensional code)"),
    }
    println!("sum of multiplicities = 2^{} ok", code.k());
    println!("wrote {}", out.finish()?.parent().unwrap_or(Path::new(".")).display());
    Ok(())
}

#[derive(Serialize)]
struct ExpurgationJson {
    xi: String,
    adoptable: bool,
    removed_weights: Vec<usize>,
    removed_mass: String,
    dmin: Option<usize>,
    warning: Option<String>,
}

fn cmd_awef(ctx: &Ctx, a: AwefArgs) -> Result<()> {
    let outer_d = LoadedDescriptor::load(&a.outer)?;
    let inner_d = LoadedDescriptor::load(&a.inner)?;
    let (outer, inner) = (outer_d.build()?, inner_d.build()?);
    if outer.n() != inner.k() {
        return Err(Error::shape(
            "awef",
            format!("outer length {} differs from inner dimension {}", outer.n(), inner.k()),
        ));
    }
    let budget = ctx.budget(a.budget);
    let mut m = ctx.manifest();
    m.descriptor_sha256 = vec![outer_d.sha256(), inner_d.sha256()];
    let mut out = OutputDir::create(ctx.out(a.out), m)?;
    let outer_wef = code_wef(&outer, budget)?;
    let (_, inner_io) = code_spectra(&inner, budget)?;
    let avg = uniform_awef(&outer_wef, &inner_io)?;
    check_awef_total(&avg, outer.k())?;
    out.write("awef.csv", &io::awef_csv(&avg))?;
    let d = avg.min_distance();
    println!("AWEF d_min = {}", d.map_or("none".into(), |d| d.to_string()));
    if let Some(d) = d {
        let v = avg.get(d);
        println!("{d}, {} ({})", format_rational(v), io::sig12(to_f64(v)));
    }
    if a.expurgate || ctx.cfg.expurgate.unwrap_or(false) {
        let xi = ctx.xi(a.xi)?;
        let rep = expurgate(&avg, &xi)?;
        let dmin = rep.adoptable.then(|| rep.good_spectrum.min_distance()).flatten();
        if rep.adoptable {
            out.write("awef_expurgated.csv", &io::awef_csv(&rep.good_spectrum))?;
            println!(
                "expurgated (xi = {}): removed weights {:?}, d_min = {}",
                format_rational(&xi),
                rep.removed_weights,
                dmin.map_or("none".into(), |d| d.to_string())
            );
        } else {
            println!("expurgation not adoptable at xi = {}", format_rational(&xi));
        }
        if let Some(w) = &rep.warning {
            eprintln!("warning: {w}");
        }
        let report = ExpurgationJson {
            xi: format_rational(&xi),
            adoptable: rep.adoptable,
            removed_weights: rep.removed_weights.clone(),
            removed_mass: format_rational(&rep.removed_mass),
            dmin,
            warning: rep.warning.clone(),
        };
        out.write("expurgation.json", &(serde_json::to_string_pretty(&report)? + "\n"))?;
    }
    out.finish()?;
    Ok(())
}

fn infer_k(spectrum: &[Rational]) -> Option<usize> {
    let total: Rational = spectrum.iter().sum();
    if !total.is_integer() {
        return None;
    }
    let t = total.to_integer();
    let bits = t.bits();
    (bits > 0 && t == pow2(bits as usize - 1)).then(|| bits as usize - 1)
}

fn cmd_bound(ctx: &Ctx, a: BoundArgs) -> Result<()> {
    let grid = ctx.grid(a.grid)?;
    let mut m = ctx.manifest();
    let (spectrum, label): (Vec<Rational>, String) = match (&a.spectrum, &a.descriptor) {
        (Some(p), None) => {
            let text = fs::read_to_string(p)?;
            m.descriptor_sha256.push(io::sha256_hex(text.as_bytes()));
            (io::parse_spectrum_csv(&text)?, p.display().to_string())
        }
        (None, Some(d)) => {
            let desc = LoadedDescriptor::load(d)?;
            m.descriptor_sha256.push(desc.sha256());
            let wef = code_wef(&desc.build()?, ctx.budget(a.budget))?;
            (
                wef.counts().iter().map(|c| Rational::from_integer(c.clone())).collect(),
                "descriptor".into(),
            )
        }
        _ => return Err(Error::Parse("bound needs a descriptor or --spectrum".into())),
    };
    let n = spectrum.len() - 1;
    let k = match pick(a.k, &ctx.cfg.k) {
        Some(k) => k,
        None => infer_k(&spectrum)
            .ok_or_else(|| Error::Parse("spectrum total is not a power of two; pass --k".into()))?,
    };
    let fl: Vec<f64> = spectrum.iter().map(to_f64).collect();
    let curve = bound_curve(&fl, n, k, &grid, label)?;
    let mut out = OutputDir::create(ctx.out(a.out), m)?;
    out.write("curve.csv", &io::curve_csv(&curve))?;
    for (e, p) in curve.points.iter().take(3) {
        println!("eps = {}  P_B <= {}", io::sig12(*e), io::sig12(*p));
    }
    if curve.points.len() > 3 {
        println!("... {} points", curve.points.len());
    }
    out.finish()?;
    Ok(())
}

fn cmd_census(ctx: &Ctx, a: CensusArgs) -> Result<()> {
    let outer_d = LoadedDescriptor::load(&a.outer)?;
    let inner_d = LoadedDescriptor::load(&a.inner)?;
    let (outer, inner) = (outer_d.build()?, inner_d.build()?);
    let budget = ctx.budget(a.budget);
    let mut m = ctx.manifest();
    m.descriptor_sha256 = vec![outer_d.sha256(), inner_d.sha256()];
    let census = if a.identity {
        let w = instance_wef(&outer, &inner, Interleaver::Identity, budget)?;
        Census::from_wefs(&[(0, w)])?
    } else {
        let seeds = ctx.seeds(a.seeds)?;
        m.seeds = seeds.clone();
        Census::from_wefs(&seeded_wefs(&outer, &inner, &seeds, budget)?)?
    };
    let mut out = OutputDir::create(ctx.out(a.out), m)?;
    out.write("census.csv", &io::census_csv(&census))?;
    out.write("histogram.json", &(serde_json::to_string_pretty(&census.histogram)? + "\n"))?;
    println!("histogram (d_min: count): {:?}", census.histogram);
    if let Some(p) = a.expected {
        let expected: BTreeMap<usize, usize> = serde_json::from_str(&fs::read_to_string(&p)?)
            .map_err(|e| Error::Parse(format!("expected histogram {}: {e}", p.display())))?;
        let keys: std::collections::BTreeSet<usize> =
            expected.keys().chain(census.histogram.keys()).copied().collect();
        let mut diff = 0;
        for d in keys {
            let (e, o) = (expected.get(&d).copied().unwrap_or(0), census.count(d));
            diff += e.abs_diff(o);
            println!("  d_min = {d}: expected {e}, observed {o}");
        }
        println!("divergence (half L1) = {}", diff as f64 / 2.0);
    }
    out.finish()?;
    Ok(())
}

fn cmd_simulate(ctx: &Ctx, a: SimulateArgs) -> Result<()> {
    let desc = LoadedDescriptor::load(&a.descriptor)?;
    let code = desc.build()?;
    let eps = match a.eps {
        Some(e) => e,
        None => to_f64(&parse_rational(ctx.cfg.eps.as_deref().ok_or_else(|| missing("eps"))?)?),
    };
    let trials = pick(a.trials, &ctx.cfg.trials).unwrap_or(1_000_000);
    let seed = pick(a.seed, &ctx.cfg.seed).unwrap_or(1);
    let res = simulate_bep(&code, eps, trials, seed)?;
    if let Some(p) = &a.bound_curve {
        let text = fs::read_to_string(p)?;
        let point = text.lines().skip(1).filter_map(|l| {
            let (e, b) = l.split_once(',')?;
            Some((e.trim().parse::<f64>().ok()?, b.trim().parse::<f64>().ok()?))
        });
        match point.into_iter().find(|(e, _)| (e - eps).abs() < 1e-9) {
            Some((_, b)) if res.estimate > b => {
                eprintln!("warning: estimate {} exceeds the bound {} at eps = {eps}", res.estimate, b)
            }
            Some(_) => {}
            None => eprintln!("warning: bound curve has no point at eps = {eps}"),
        }
    }
    let json = serde_json::to_string_pretty(&res)? + "\n";
    if let Some(dir) = pick(a.out, &ctx.cfg.out) {
        let mut m = ctx.manifest();
        m.descriptor_sha256.push(desc.sha256());
        m.seeds = vec![seed];
        let mut out = OutputDir::create(dir, m)?;
        out.write("simulation.json", &json)?;
        out.finish()?;
    }
    print!("{json}");
    Ok(())
}

/// Writes every series of one figure plus its spectra and summary.
pub fn write_figure(out: &mut OutputDir, data: &FigureData, curves: &FigureCurves) -> Result<()> {
    let fig = data.scheme.figure();
    let f = |name: &str| format!("{fig}/{name}");
    out.write(&f("polar.csv"), &io::curve_csv(&curves.polar))?;
    out.write(&f("no_interleaver.csv"), &io::curve_csv(&curves.no_interleaver))?;
    for (s, c) in &curves.interleavers {
        out.write(&f(&format!("interleaver_seed_{s:03}.csv")), &io::curve_csv(c))?;
    }
    out.write(&f("awef.csv"), &io::curve_csv(&curves.awef))?;
    if let Some(c) = &curves.expurgated {
        out.write(&f("awef_expurgated.csv"), &io::curve_csv(c))?;
    }
    out.write(&f("spectra/polar_wef.csv"), &io::wef_csv(&data.polar_wef))?;
    out.write(&f("spectra/no_interleaver_wef.csv"), &io::wef_csv(&data.identity_wef))?;
    out.write(&f("spectra/awef.csv"), &io::awef_csv(&data.awef))?;
    if data.expurgation.adoptable {
        out.write(&f("spectra/awef_expurgated.csv"), &io::awef_csv(&data.expurgation.good_spectrum))?;
    }
    out.write(&f("census.csv"), &io::census_csv(&data.census()?))?;
    out.write(&f("summary.json"), &(serde_json::to_string_pretty(&data.summary()?)? + "\n"))?;
    Ok(())
}

/// Table of d_min counts for every scheme, `scheme,dmin4,dmin6,dmin8,other`.
pub fn table1_csv(figures: &[&FigureData]) -> Result<String> {
    let mut s = String::from("scheme,dmin4,dmin6,dmin8,other\n");
    for data in figures {
        let c = data.census()?;
        let other: usize = c.histogram.iter().filter(|(d, _)| ![4, 6, 8].contains(*d)).map(|(_, n)| n).sum();
        s += &format!("{},{},{},{},{other}\n", data.scheme.label(), c.count(4), c.count(6), c.count(8));
    }
    Ok(s)
}

fn cmd_reproduce(ctx: &Ctx, a: ReproduceArgs) -> Result<()> {
    let mut schemes: Vec<Scheme> = Vec::new();
    let mut table = false;
    for r in &a.recipes {
        match r.as_str() {
            "all" => {
                schemes.extend(Scheme::ALL);
                table = true;
            }
            "table1" => table = true,
            other => schemes.push(other.parse()?),
        }
    }
    let mut needed = schemes.clone();
    if table {
        needed.extend(Scheme::ALL);
    }
    needed.sort();
    needed.dedup();
    schemes.sort();
    schemes.dedup();

    let seeds = ctx.seeds(a.seeds)?;
    let xi = ctx.xi(a.xi)?;
    let budget = ctx.budget(a.budget);
    let grid = ctx.grid(a.grid)?;
    let mut m = ctx.manifest();
    m.seeds = seeds.clone();
    let mut out = OutputDir::create(ctx.out(a.out), m)?;
    let mut done = Vec::new();
    for s in needed {
        eprintln!("{}: {} ...", s.figure(), s.label());
        let data = compute_figure(s, &seeds, &xi, budget)?;
        if schemes.contains(&s) {
            write_figure(&mut out, &data, &data.curves(&grid)?)?;
        }
        let sum = data.summary()?;
        println!(
            "{} {}: polar d_min {:?}, no-interleaver d_min {:?}, AWEF d_min {:?}, expurgated {:?}, census {:?}",
            s.figure(),
            s.label(),
            sum.polar_dmin,
            sum.no_interleaver_dmin,
            sum.awef_dmin,
            sum.expurgated_dmin,
            sum.census
        );
        done.push(data);
    }
    if table {
        out.write("table1/table1.csv", &table1_csv(&done.iter().collect::<Vec<_>>())?)?;
    }
    out.finish()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_syntax() {
        assert_eq!(parse_seeds("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_seeds("1..=2").unwrap(), vec![1, 2]);
        assert_eq!(parse_seeds("5, 9").unwrap(), vec![5, 9]);
        assert!(parse_seeds("3..1").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn power_of_two_totals() {
        let r = |v: i64| Rational::from_integer(v.into());
        assert_eq!(infer_k(&[r(1), r(0), r(3)]), Some(2));
        assert_eq!(infer_k(&[r(1), r(2)]), None);
        assert_eq!(infer_k(&[r(1)]), Some(0));
    }

    #[test]
    fn config_rejects_unknown_keys() {
        assert!(serde_json::from_str::<Config>(r#"{"budgett": 3}"#).is_err());
        let c: Config = serde_json::from_str(r#"{"budget": 20, "xi": "0.9"}"#).unwrap();
        assert_eq!(pick(None, &c.budget), Some(20));
        assert_eq!(pick(Some(12), &c.budget), Some(12));
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
