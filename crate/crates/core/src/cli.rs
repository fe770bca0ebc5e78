//! The `nsfrft` command line. The binary is a thin wrapper around [`main`].

use crate::apps::{self, BandKind, GaConfig, KeyMaterial, SearchSpace};
use crate::direct;
use crate::error::Error;
use crate::fast::{self, Algorithm};
use crate::grid::{io, metrics, noise, signals, ComplexGrid, Geometry};
use crate::params::{self, published, ParamDescriptor, ParamSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "nsfrft", version, about = "2D nonseparable fractional Fourier transform toolkit")]
pub struct Cli {
    /// Seed for every random draw (noise, masks, GA).
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Log progress and timings to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Transform a grid or image.
    Transform(TransformArgs),
    /// Time direct and fast algorithms and write a CSV.
    Bench(BenchArgs),
    /// Double random phase encryption.
    Encrypt(CryptArgs),
    /// Decrypt a ciphertext produced by `encrypt`.
    Decrypt(CryptArgs),
    /// Decryption MSE as the key angle θ is perturbed.
    Sweep(SweepArgs),
    /// Wiener filtering in the best transform domain found by a GA.
    FilterOptimal(FilterOptimalArgs),
    /// Bandpass/bandstop filtering around a chirp's impulse.
    FilterBand(FilterBandArgs),
    /// Run the invariant suite; exits nonzero on any failure.
    Selftest,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct ParamArgs {
    /// Parameter JSON (file path or inline object).
    #[arg(long)]
    pub params: Option<String>,
    /// Separable FRFT angles `a1,a2` (write `--sfrft=-a1,a2` when the first is negative).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub sfrft: Option<Vec<f64>>,
    /// Gyrator angle.
    #[arg(long, allow_negative_numbers = true)]
    pub gt: Option<f64>,
    /// Coupled FRFT angles `a,b` (write `--cfrft=-a,b` when the first is negative).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub cfrft: Option<Vec<f64>>,
}

impl ParamArgs {
    fn is_set(&self) -> bool {
        self.params.is_some() || self.sfrft.is_some() || self.gt.is_some() || self.cfrft.is_some()
    }

    fn resolve(&self) -> Result<ParamSet, Failure> {
        if let Some(src) = &self.params {
            let text = if src.trim_start().starts_with('{') {
                src.clone()
            } else {
                std::fs::read_to_string(src)?
            };
            return Ok(ParamDescriptor::from_json(&text)?.resolve()?);
        }
        let pair = |name: &str, v: &Vec<f64>| -> Result<(f64, f64), Failure> {
            match v.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(Failure::Usage(format!("--{name} takes two comma-separated angles"))),
            }
        };
        if let Some(v) = &self.sfrft {
            let (a1, a2) = pair("sfrft", v)?;
            return Ok(params::params_from_sfrft(a1, a2)?);
        }
        if let Some(phi) = self.gt {
            return Ok(params::params_from_gt(phi)?);
        }
        if let Some(v) = &self.cfrft {
            let (a, b) = pair("cfrft", v)?;
            return Ok(params::params_from_cfrft(a, b)?);
        }
        Err(Failure::Usage(
            "one of --params, --sfrft, --gt, --cfrft is required".into(),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Direct,
    Fast1,
    Fast2,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Direct => "direct",
            AlgoArg::Fast1 => "fast1",
            AlgoArg::Fast2 => "fast2",
        }
    }
}

/// Built-in test signals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignalArg {
    /// Hermite–Gaussian sum with separable orders.
    G1,
    /// Hermite–Gaussian sum with mixed orders.
    G2,
    /// `exp(−(x² + y²))`.
    Gauss,
    /// `exp(−(x² + 1.5xy + y²))`.
    Coupled,
    /// Newton-ring fringe pattern.
    Newton,
    F1,
    F2,
    F3,
}

impl SignalArg {
    fn generate(self, g: Geometry) -> ComplexGrid {
        match self {
            SignalArg::G1 => signals::g1_signal(g),
            SignalArg::G2 => signals::g2_signal(g),
            SignalArg::Gauss => signals::gaussian_target(g),
            SignalArg::Coupled => signals::coupled_gaussian_target(g),
            SignalArg::Newton => signals::newton_image(
                &signals::NewtonRings::default(),
                g,
                signals::NEWTON_PIXEL_PITCH,
            ),
            SignalArg::F1 => signals::chirp(&signals::ChirpSpec::f1(), g),
            SignalArg::F2 => signals::chirp(&signals::ChirpSpec::f2(), g),
            SignalArg::F3 => signals::chirp(&signals::ChirpSpec::f3(), g),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Input `.cgrid` or `.png`.
    #[arg(long = "in", conflicts_with = "signal")]
    pub input: Option<PathBuf>,
    /// Built-in signal instead of a file.
    #[arg(long, value_enum)]
    pub signal: Option<SignalArg>,
    /// Grid side for built-in signals.
    #[arg(long, default_value_t = 200)]
    pub size: usize,
    /// Sample spacing for built-in signals and PNG inputs.
    #[arg(long, default_value_t = 0.1772)]
    pub dx: f64,
}

impl InputArgs {
    fn load(&self) -> Result<Vec<ComplexGrid>, Failure> {
        match (&self.input, self.signal) {
            (Some(path), _) => load_channels(path, self.dx),
            (None, Some(s)) => Ok(vec![s.generate(Geometry::new(self.size, self.size, self.dx, self.dx)?)]),
            (None, None) => Err(Failure::Usage("one of --in or --signal is required".into())),
        }
    }
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = AlgoArg::Fast2)]
    pub algo: AlgoArg,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Apply the inverse transform.
    #[arg(long)]
    pub inverse: bool,
    /// Report NMSE of the result against this grid.
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "64,128,200")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_enum, default_value = "direct,fast1,fast2")]
    pub algos: Vec<AlgoArg>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = SignalArg::G1)]
    pub signal: SignalArg,
    /// Spacing for every size (default: self-dual `√(2π/N)`).
    #[arg(long)]
    pub dx: Option<f64>,
    #[arg(long, default_value = "bench.csv")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CryptArgs {
    /// Key JSON `{params1, params2, seed}`.
    #[arg(long)]
    pub key: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report MSE against this image or grid.
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 0.5)]
    pub delta_range: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta_step: f64,
    /// CSV destination (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchArg {
    /// Genetic search over the whole parameter sphere.
    Ga,
    /// The Fourier point only.
    Ft,
    /// The parameters given by --params/--sfrft/--gt/--cfrft.
    Fixed,
}

#[derive(Args, Debug)]
pub struct FilterOptimalArgs {
    /// Clean reference signal.
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub snr: f64,
    #[arg(long, value_enum, default_value_t = SearchArg::Ga)]
    pub search: SearchArg,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 30)]
    pub population: usize,
    #[arg(long, default_value_t = 50)]
    pub generations: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FilterBandArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = BandKind::Pass)]
    pub kind: BandKind,
    /// Disk radius in bins.
    #[arg(long, default_value_t = 5.0)]
    pub radius: f64,
    /// Add white noise at this SNR (dB) before filtering.
    #[arg(long, allow_negative_numbers = true)]
    pub snr: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Why a command failed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(Error),
    Checks(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(Error::Json(e))
    }
}

impl Failure {
    /// 2 bad arguments, 3 I/O, 4 numeric, 1 failed self-test.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Checks(_) => 1,
            Failure::Lib(e) => match e {
                Error::Io(_) | Error::Image(_) | Error::Format(_) => 3,
                Error::Json(_) | Error::InvalidParams(_) | Error::InvalidGrid(_) => 2,
                _ => 4,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Checks(n) => write!(f, "{n} self-test check(s) failed"),
        }
    }
}

/// Multi-channel CGRID data is stored as `<stem>_ch<i>.cgrid`.
fn channel_path(path: &Path, i: usize) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    path.with_file_name(format!("{stem}_ch{i}.cgrid"))
}

fn is_png(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png"))
}

pub fn load_channels(path: &Path, dx: f64) -> Result<Vec<ComplexGrid>, Failure> {
    if is_png(path) {
        return Ok(io::read_png(path, dx, dx)?);
    }
    if path.exists() {
        return Ok(vec![io::read_cgrid(path)?]);
    }
    let mut out = Vec::new();
    while channel_path(path, out.len()).exists() {
        out.push(io::read_cgrid(channel_path(path, out.len()))?);
    }
    if out.is_empty() {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("{} not found", path.display()),
        ))
        .into());
    }
    Ok(out)
}

pub fn save_channels(path: &Path, channels: &[ComplexGrid]) -> Result<(), Failure> {
    if is_png(path) {
        io::write_png_with_sidecar(path, channels)?;
    } else if channels.len() == 1 {
        io::write_cgrid(path, &channels[0])?;
    } else {
        for (i, c) in channels.iter().enumerate() {
            io::write_cgrid(channel_path(path, i), c)?;
        }
    }
    Ok(())
}

fn per_channel(
    channels: &[ComplexGrid],
    mut f: impl FnMut(&ComplexGrid) -> crate::Result<ComplexGrid>,
) -> Result<Vec<ComplexGrid>, Failure> {
    Ok(channels.iter().map(&mut f).collect::<crate::Result<_>>()?)
}

fn mean_metric(
    a: &[ComplexGrid],
    b: &[ComplexGrid],
    m: impl Fn(&ComplexGrid, &ComplexGrid) -> crate::Result<f64>,
) -> Result<f64, Failure> {
    if a.len() != b.len() {
        return Err(Failure::Usage(format!(
            "channel count mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        s += m(x, y)?;
    }
    Ok(s / a.len() as f64)
}

fn print_json(v: serde_json::Value) {
    println!("{v}");
}

fn transform_one(
    p: &ParamSet,
    f: &ComplexGrid,
    algo: AlgoArg,
    inverse: bool,
) -> crate::Result<ComplexGrid> {
    let g = *f.geometry();
    match (algo, inverse) {
        (AlgoArg::Direct, false) => direct::nsfrft_direct(p, f, g),
        (AlgoArg::Direct, true) => direct::nsfrft_inverse_direct(p, f, g),
        (AlgoArg::Fast1, false) => fast::nsfrft_fast(p, f, Algorithm::I),
        (AlgoArg::Fast1, true) => fast::nsfrft_fast_inverse(p, f, Algorithm::I),
        (AlgoArg::Fast2, false) => fast::nsfrft_fast(p, f, Algorithm::II),
        (AlgoArg::Fast2, true) => fast::nsfrft_fast_inverse(p, f, Algorithm::II),
    }
}

fn run_transform(a: &TransformArgs) -> Result<(), Failure> {
    let p = a.params.resolve()?;
    let input = a.input.load()?;
    let start = Instant::now();
    let out = per_channel(&input, |f| transform_one(&p, f, a.algo, a.inverse))?;
    let seconds = start.elapsed().as_secs_f64();
    let mut report = json!({
        "algo": a.algo.name(),
        "inverse": a.inverse,
        "params": p.as_array(),
        "seconds": seconds,
        "channels": out.len(),
    });
    if let Some(r) = &a.reference {
        let reference = load_channels(r, a.input.dx)?;
        report["nmse"] = json!(mean_metric(&out, &reference, metrics::nmse)?);
    }
    if let Some(o) = &a.out {
        save_channels(o, &out)?;
    }
    print_json(report);
    Ok(())
}

fn run_bench(a: &BenchArgs) -> Result<(), Failure> {
    let p = if a.params.is_set() {
        a.params.resolve()?
    } else {
        published::accuracy1()
    };
    let mut csv = String::from("N,algo,seconds,nmse_vs_direct\n");
    for &n in &a.sizes {
        let dx = a.dx.unwrap_or_else(|| Geometry::self_dual(n).dx);
        let f = a.signal.generate(Geometry::new(n, n, dx, dx)?);
        let mut reference: Option<ComplexGrid> = None;
        let mut rows = Vec::new();
        for &algo in &a.algos {
            let start = Instant::now();
            let out = transform_one(&p, &f, algo, false)?;
            let seconds = start.elapsed().as_secs_f64();
            log::info!("N={n} {}: {seconds:.4} s", algo.name());
            if algo == AlgoArg::Direct {
                reference = Some(out.clone());
            }
            rows.push((algo, seconds, out));
        }
        for (algo, seconds, out) in rows {
            let nmse = match &reference {
                Some(r) => format!("{:e}", metrics::nmse_ac(&out, r)?),
                None => String::new(),
            };
            csv.push_str(&format!("{n},{},{seconds},{nmse}\n", algo.name()));
        }
    }
    std::fs::write(&a.out, &csv)?;
    print!("{csv}");
    Ok(())
}

fn load_key(path: &Path, geometry: Geometry) -> Result<KeyMaterial, Failure> {
    let key: apps::drped::KeyFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Ok(KeyMaterial::from_file(&key, geometry)?)
}

fn run_crypt(a: &CryptArgs, encrypt: bool) -> Result<(), Failure> {
    let input = a.input.load()?;
    let key = load_key(&a.key, *input[0].geometry())?;
    let out = per_channel(&input, |f| {
        if encrypt {
            apps::drped_encrypt(f, &key)
        } else {
            apps::drped_decrypt(f, &key)
        }
    })?;
    let mut report = json!({
        "operation": if encrypt { "encrypt" } else { "decrypt" },
        "channels": out.len(),
    });
    if let Some(r) = &a.reference {
        let reference = load_channels(r, a.input.dx)?;
        report["mse"] = json!(mean_metric(&out, &reference, metrics::mse)?);
    }
    if let Some(o) = &a.out {
        save_channels(o, &out)?;
    }
    print_json(report);
    Ok(())
}

fn run_sweep(a: &SweepArgs) -> Result<(), Failure> {
    if a.delta_step <= 0.0 || a.delta_range < 0.0 {
        return Err(Failure::Usage("--delta-step must be positive and --delta-range non-negative".into()));
    }
    let input = a.input.load()?;
    let key = load_key(&a.key, *input[0].geometry())?;
    let rows = apps::key_sensitivity_sweep(&input[0], &key, a.delta_range, a.delta_step)?;
    let mut csv = String::from("delta,mse\n");
    for r in rows {
        csv.push_str(&format!("{},{:e}\n", r.delta, r.mse));
    }
    match &a.out {
        Some(o) => std::fs::write(o, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn run_filter_optimal(a: &FilterOptimalArgs, seed: u64) -> Result<(), Failure> {
    let clean = a.input.load()?;
    let space = match a.search {
        SearchArg::Ga => SearchSpace::Full,
        SearchArg::Ft => SearchSpace::Point(ParamSet::fourier()),
        SearchArg::Fixed => SearchSpace::Point(a.params.resolve()?),
    };
    let config = GaConfig {
        population: a.population,
        generations: a.generations,
        seed,
        ..GaConfig::default()
    };
    let mut filtered = Vec::new();
    let mut reports = Vec::new();
    for (i, c) in clean.iter().enumerate() {
        let noisy = noise::add_awgn(c, a.snr, seed.wrapping_add(i as u64))?;
        let var = noise::noise_variance_for(c, a.snr);
        let r = apps::ga_search(&noisy, c, var, &space, &config)?;
        reports.push(json!({
            "channel": i,
            "params": r.params.as_array(),
            "log10_mse": r.mse.log10(),
            "noisy_log10_mse": metrics::mse(&noisy, c)?.log10(),
            "psnr": metrics::psnr(&r.filtered, c)?,
            "noisy_psnr": metrics::psnr(&noisy, c)?,
            "ssim": metrics::ssim(&r.filtered, c)?,
            "noisy_ssim": metrics::ssim(&noisy, c)?,
        }));
        filtered.push(r.filtered);
    }
    if let Some(o) = &a.out {
        save_channels(o, &filtered)?;
    }
    print_json(json!({ "snr_db": a.snr, "channels": reports }));
    Ok(())
}

fn run_filter_band(a: &FilterBandArgs, seed: u64) -> Result<(), Failure> {
    let p = a.params.resolve()?;
    let clean = a.input.load()?;
    let observed = match a.snr {
        Some(snr) => per_channel(&clean, |c| noise::add_awgn(c, snr, seed))?,
        None => clean.clone(),
    };
    let out = per_channel(&observed, |f| apps::band_filter(f, &p, a.kind, a.radius))?;
    let mut report = json!({
        "kind": format!("{:?}", a.kind).to_lowercase(),
        "radius": a.radius,
        "params": p.as_array(),
    });
    if a.snr.is_some() {
        report["nmse_vs_clean"] = json!(mean_metric(&out, &clean, metrics::nmse)?);
        report["noisy_nmse_vs_clean"] = json!(mean_metric(&observed, &clean, metrics::nmse)?);
    }
    if let Some(o) = &a.out {
        save_channels(o, &out)?;
    }
    print_json(report);
    Ok(())
}

fn run_selftest(seed: u64) -> Result<(), Failure> {
    let mut failed = 0;
    let mut stdout = std::io::stdout().lock();
    for c in crate::selftest::run(seed) {
        writeln!(stdout, "{c}")?;
        failed += usize::from(!c.passed);
    }
    if failed > 0 {
        return Err(Failure::Checks(failed));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Transform(a) => run_transform(a),
        Command::Bench(a) => run_bench(a),
        Command::Encrypt(a) => run_crypt(a, true),
        Command::Decrypt(a) => run_crypt(a, false),
        Command::Sweep(a) => run_sweep(a),
        Command::FilterOptimal(a) => run_filter_optimal(a, cli.seed),
        Command::FilterBand(a) => run_filter_band(a, cli.seed),
        Command::Selftest => run_selftest(cli.seed),
    }
}

/// Parses arguments, runs the command and maps failures to exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nsfrft: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
