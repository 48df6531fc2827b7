//! `coin-qubit` command line: every subcommand reads states as flags or JSON,
//! calls one library operation, and prints JSON (or SVG) on stdout.
//!
//! Exit status: 0 on success, 1 on usage errors (bad flags, unreadable or
//! malformed input), 2 when the library rejects the input. Failures print
//! `{"error":{"code":..,"message":..}}` on stderr.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use coin_qubit::qubit::CoinState;
use coin_qubit::*;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

pub const SEED_ENV: &str = "COIN_QUBIT_SEED";

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "coin-qubit",
    version,
    about = "Qubit states as triples of coin probabilities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a triple as classical, mixed or pure.
    Check(StateArgs),
    /// Tr ρ² of a quantum triple.
    Purity(StateArgs),
    /// Overlap Tr(ρ1 ρ2) of two quantum triples.
    Fidelity(PairArgs),
    /// Convert between coin triples, density matrices, spinors and complex numbers.
    Convert(ConvertArgs),
    /// Superpose two pure states with the given weights.
    Superpose(SuperposeArgs),
    /// Pure state orthogonal to the given one.
    Partner(PartnerArgs),
    /// Side lengths of the triada of Malevich squares.
    Triada(StateArgs),
    /// Render the triada as SVG.
    Render(RenderArgs),
    /// Simulate coin flips and estimate the triple.
    Sample(SampleArgs),
    /// Mean of a coin observable.
    Mean(MeanArgs),
}

#[derive(Args, Debug)]
struct StateArgs {
    #[arg(long, allow_negative_numbers = true)]
    p1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p3: Option<f64>,
    /// Coin-state JSON, inline or as a file path.
    #[arg(long, conflicts_with_all = ["p1", "p2", "p3"])]
    state: Option<String>,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    state1: String,
    #[arg(long)]
    state2: String,
}

#[derive(Args, Debug)]
struct SuperposeArgs {
    #[arg(long)]
    state1: String,
    #[arg(long)]
    state2: String,
    /// Pure coin-state encoding the weights and relative phase.
    #[arg(long)]
    weights: String,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Target {
    Density,
    Spinor,
    Complex,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Output form when converting from a coin triple.
    #[arg(long, value_enum, default_value = "density")]
    to: Target,
    /// Density matrix JSON `{"re":[[..],[..]],"im":[[..],[..]]}`.
    #[arg(long, conflicts_with_all = ["p1", "p2", "p3", "state", "spinor", "re", "to"])]
    density: Option<String>,
    /// Spinor JSON `{"amplitude0":..,"amplitude1":..,"phase":..}`.
    #[arg(long, conflicts_with_all = ["p1", "p2", "p3", "state", "re", "to"])]
    spinor: Option<String>,
    /// Real part of a complex number in the closed unit disk.
    #[arg(long, allow_negative_numbers = true, requires = "im", conflicts_with_all = ["p1", "p2", "p3", "state", "to"])]
    re: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "re")]
    im: Option<f64>,
}

#[derive(Args, Debug)]
struct PartnerArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, value_enum, default_value = "plus")]
    branch: BranchArg,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Pixels per unit side length.
    #[arg(long, default_value_t = 100.0)]
    scale: f64,
    #[arg(long)]
    no_labels: bool,
    /// Write the SVG here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Flips per axis.
    #[arg(long)]
    n: u64,
    /// Defaults to $COIN_QUBIT_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Write every flip as CSV `trial,axis,outcome`.
    #[arg(long)]
    flips: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MeanArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Observable JSON `{"x":..,"y":..,"z1":..,"z2":..}`, inline or as a file path.
    #[arg(long)]
    observable: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Density matrix as separate real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub re: [[f64; 2]; 2],
    pub im: [[f64; 2]; 2],
}

impl MatrixJson {
    pub fn from_density(rho: &DensityMatrix2) -> Self {
        let part = |f: fn(Complex64) -> f64| {
            [
                [f(rho.get(0, 0)), f(rho.get(0, 1))],
                [f(rho.get(1, 0)), f(rho.get(1, 1))],
            ]
        };
        Self {
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }

    fn to_matrix(self) -> Matrix2 {
        let z = |i: usize, j: usize| Complex64::new(self.re[i][j], self.im[i][j]);
        Matrix2::new([[z(0, 0), z(0, 1)], [z(1, 0), z(1, 1)]])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpinorJson {
    amplitude0: f64,
    amplitude1: f64,
    phase: f64,
}

#[derive(Serialize)]
struct SuperposeOutput {
    result: ProbabilityTriple,
    normalization: f64,
    paths_agree: bool,
    fallback_used: bool,
}

#[derive(Serialize)]
struct MeanOutput {
    quantum_mean: f64,
    classical_means: PerCoin,
    second_moments: PerCoin,
}

/// Inline JSON if the argument starts with `{`, otherwise a file path.
fn read_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> CliResult<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| Failure::Usage(format!("cannot read {what} from {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed {what} JSON: {e}")))
}

fn parse_state(arg: &str) -> CliResult<ProbabilityTriple> {
    let raw: CoinState = read_json(arg, "coin-state")?;
    Ok(ProbabilityTriple::try_from(raw)?)
}

impl StateArgs {
    fn resolve(&self) -> CliResult<ProbabilityTriple> {
        if let Some(state) = &self.state {
            return parse_state(state);
        }
        match (self.p1, self.p2, self.p3) {
            (Some(p1), Some(p2), Some(p3)) => Ok(ProbabilityTriple::new(p1, p2, p3)?),
            _ => Err(Failure::Usage(
                "give either --p1 --p2 --p3 or --state".into(),
            )),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize infallibly");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn seed_from_env() -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{SEED_ENV}={v:?} is not an unsigned 64-bit integer"
            ))
        }),
        Err(_) => Ok(0),
    }
}

fn flips_csv(sample: &FlipSample) -> String {
    let mut csv = String::from("trial,axis,outcome\n");
    for r in &sample.records {
        csv.push_str(&format!(
            "{},{},{}\n",
            r.trial,
            r.axis.name(),
            r.outcome.name()
        ));
    }
    csv
}

fn convert(args: &ConvertArgs) -> CliResult<String> {
    if let Some(density) = &args.density {
        let m: MatrixJson = read_json(density, "density matrix")?;
        let rho = DensityMatrix2::new(m.to_matrix())?;
        return Ok(to_json(&density_to_prob(&rho)?));
    }
    if let Some(spinor) = &args.spinor {
        // parsed raw so that normalization failures surface as domain errors
        let raw: SpinorJson = read_json(spinor, "spinor")?;
        let s = Spinor2::new(raw.amplitude0, raw.amplitude1, raw.phase)?;
        return Ok(to_json(&spinor_to_prob(&s)));
    }
    if let (Some(re), Some(im)) = (args.re, args.im) {
        return Ok(to_json(&complex_to_coins(Complex64::new(re, im))?));
    }
    let p = args.state.resolve()?;
    Ok(match args.to {
        Target::Density => to_json(&MatrixJson::from_density(&prob_to_density(&p).0)),
        Target::Spinor => to_json(&prob_to_spinor(&p)?),
        Target::Complex => {
            let z = coins_to_complex(&p)?;
            to_json(&ComplexJson { re: z.re, im: z.im })
        }
    })
}

fn dispatch(command: Command) -> CliResult<String> {
    match command {
        Command::Check(s) => Ok(to_json(&is_quantum(&s.resolve()?))),
        Command::Purity(s) => Ok(to_json(&json!({ "purity": purity(&s.resolve()?)? }))),
        Command::Fidelity(a) => {
            let (p, q) = (parse_state(&a.state1)?, parse_state(&a.state2)?);
            Ok(to_json(&json!({ "fidelity": fidelity(&p, &q)? })))
        }
        Command::Convert(a) => convert(&a),
        Command::Superpose(a) => {
            let (p, q) = (parse_state(&a.state1)?, parse_state(&a.state2)?);
            let w = SuperpositionWeights::new(parse_state(&a.weights)?)?;
            let report = superpose(&p, &q, &w)?;
            Ok(to_json(&SuperposeOutput {
                result: report.result.state,
                normalization: report.result.normalization,
                paths_agree: report.paths_agree,
                fallback_used: report.result.fallback_used,
            }))
        }
        Command::Partner(a) => {
            let branch = match a.branch {
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            };
            Ok(to_json(&orthogonal_partner(&a.state.resolve()?, branch)?))
        }
        Command::Triada(s) => Ok(to_json(&triada_sides(&s.resolve()?))),
        Command::Render(a) => {
            let svg = render_svg(&triada_sides(&a.state.resolve()?), a.scale, !a.no_labels)?;
            match &a.out {
                Some(path) => {
                    write_file(path, &svg)?;
                    Ok(String::new())
                }
                None => Ok(svg),
            }
        }
        Command::Sample(a) => {
            let p = a.state.resolve()?;
            let seed = match a.seed {
                Some(s) => s,
                None => seed_from_env()?,
            };
            let sample = sample_flips(&p, a.n, seed)?;
            if let Some(path) = &a.flips {
                write_file(path, &flips_csv(&sample))?;
            }
            Ok(to_json(&estimate(&sample)?))
        }
        Command::Mean(a) => {
            let p = a.state.resolve()?;
            let obs: CoinObservable = read_json(&a.observable, "observable")?;
            Ok(to_json(&MeanOutput {
                quantum_mean: quantum_mean(&obs, &p)?,
                classical_means: classical_means(&obs, &p),
                second_moments: second_moments(&obs, &p),
            }))
        }
    }
}

fn error_json(code: &str, message: &str) -> String {
    to_json(&json!({ "error": { "code": code, "message": message } }))
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(message)) => Output {
            code: 1,
            stdout: String::new(),
            stderr: error_json("usage", &message),
        },
        Err(Failure::Domain(e)) => Output {
            code: 2,
            stdout: String::new(),
            stderr: error_json(e.code(), &e.to_string()),
        },
    }
}
