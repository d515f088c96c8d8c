//! `spinstat` command-line front end.
//!
//! Exit codes: 0 success, 1 computational failure or deviation, 2 usage
//! error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use spinstat::cg::{cg_table, photon_table, render_table_json, render_table_text, MAX_TWO_L_COUPLING};
use spinstat::reproduce::{run_suite, suite_json, Goldens};
use spinstat::spin::{
    build_operators, check_independent_commute, check_singlet_anticommute, rotation, trichotomy_sweep, verify_space,
    SpinSpace,
};
use spinstat::stats::{
    conditional_given_sum, infer_distribution, simulate_conditional, singlet_sampler, SpinDistribution,
    MAX_TWO_L_INFERENCE,
};
use spinstat::{Error, Half, VerificationReport};

const MAX_TWO_L_LIE: i32 = 6;
const MAX_N_LIE: u32 = 4;

#[derive(Parser, Debug)]
#[command(name = "spinstat", version, about = "Exact spin algebra, Clebsch-Gordan tables and spin statistics")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the step-n commutators, Casimir and lowering chain for one (l, n).
    LieVerify(LieArgs),
    /// Print the spin operators of one (l, n) representation.
    Operators(LieArgs),
    /// Print the Clebsch-Gordan table of two equal spins, or of two photons.
    Cg(CgArgs),
    /// Conditional table of independent outcomes post-selected on their sum.
    Conditional(ConditionalArgs),
    /// Infer the single-particle distribution matching the stretched multiplet.
    Infer(InferArgs),
    /// Monte Carlo check of a conditional table against its exact value.
    Simulate(SimulateArgs),
    /// Same-axis outcomes sampled from the spin-1/2 singlet.
    Singlet(SingletArgs),
    /// Rotation operator for spin step n about an axis.
    Rotate(RotateArgs),
    /// Commutator, anticommutator and exclusivity checks on Pauli tensors.
    PauliChecks(PauliArgs),
    /// Run the full golden suite.
    ReproducePaper,
}

#[derive(Args, Debug)]
struct LieArgs {
    /// Spin label, e.g. 1, 1/2 or 0.5.
    #[arg(long)]
    l: Half,
    /// Step parameter.
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Args, Debug)]
struct CgArgs {
    #[arg(long, required_unless_present = "photon")]
    l: Option<Half>,
    /// Two photons: spin-1/2 coupling with every label doubled. Ignores --l.
    #[arg(long)]
    photon: bool,
}

#[derive(Args, Debug)]
struct ConditionalArgs {
    /// Distribution literal, e.g. 1:1/4,0:1/2,-1:1/4.
    #[arg(long)]
    dist: SpinDistribution,
    /// Second particle's distribution; defaults to --dist.
    #[arg(long)]
    dist2: Option<SpinDistribution>,
    /// Conditioning total.
    #[arg(long = "M", allow_hyphen_values = true)]
    total: Half,
}

#[derive(Args, Debug)]
struct InferArgs {
    #[arg(long)]
    l: Half,
    /// Target multiplet; defaults to the stretched one, 2l.
    #[arg(long = "L")]
    total: Option<Half>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    dist: SpinDistribution,
    #[arg(long = "M", allow_hyphen_values = true)]
    total: Half,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SingletArgs {
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug)]
struct RotateArgs {
    /// Rotation angle in radians.
    #[arg(long, allow_hyphen_values = true)]
    angle: f64,
    /// Axis as x,y,z; normalized before use.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.0, 1.0], allow_hyphen_values = true)]
    axis: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Args, Debug)]
struct PauliArgs {
    /// Random operator pairs for the exclusivity sweep.
    #[arg(long, default_value_t = 500)]
    pairs: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Rendered output plus whether the computation passed.
struct Outcome {
    text: String,
    json: Value,
    pass: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, pass: true }
    }
}

fn usage(msg: String) -> Failure {
    Failure::Usage(msg)
}

fn report_outcome(report: VerificationReport) -> Outcome {
    Outcome { text: report.to_string(), json: report.to_json(), pass: report.all_pass() }
}

fn lie_space(args: &LieArgs) -> Result<SpinSpace, Failure> {
    let two_l = args.l.doubled();
    if !(0..=MAX_TWO_L_LIE).contains(&two_l) {
        return Err(usage(format!("--l must satisfy 0 ≤ 2l ≤ {MAX_TWO_L_LIE}, got {}", args.l)));
    }
    if !(1..=MAX_N_LIE).contains(&args.n) {
        return Err(usage(format!("--n must be in 1..={MAX_N_LIE}, got {}", args.n)));
    }
    Ok(SpinSpace::from_doubled(two_l as u32, args.n)?)
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::LieVerify(args) => Ok(report_outcome(verify_space(lie_space(&args)?))),
        Command::Operators(args) => {
            let ops = build_operators(lie_space(&args)?);
            let named = [
                ("S+", &ops.s_plus),
                ("S-", &ops.s_minus),
                ("Sx", &ops.s_x),
                ("Sy", &ops.s_y),
                ("Sz", &ops.s_z),
                ("S^2", &ops.s_sq),
            ];
            let mut text = String::new();
            let mut obj = serde_json::Map::new();
            for (name, m) in named {
                text.push_str(&format!("{name} =\n{m}\n"));
                let rows: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                obj.insert(name.to_string(), json!(rows));
            }
            Ok(Outcome::ok(text, Value::Object(obj)))
        }
        Command::Cg(args) => {
            let table = if args.photon {
                photon_table()
            } else {
                let l = args.l.expect("clap requires --l without --photon");
                if !(0..=MAX_TWO_L_COUPLING).contains(&l.doubled()) {
                    return Err(usage(format!("--l must satisfy 0 ≤ 2l ≤ {MAX_TWO_L_COUPLING}, got {l}")));
                }
                cg_table(l)?
            };
            Ok(Outcome::ok(render_table_text(&table), render_table_json(&table)))
        }
        Command::Conditional(args) => {
            let d2 = args.dist2.as_ref().unwrap_or(&args.dist);
            let table = conditional_given_sum(&args.dist, d2, args.total)?;
            Ok(Outcome::ok(table.to_string(), table.to_json()))
        }
        Command::Infer(args) => {
            if !(0..=MAX_TWO_L_INFERENCE).contains(&args.l.doubled()) {
                return Err(usage(format!("--l must satisfy 0 ≤ 2l ≤ {MAX_TWO_L_INFERENCE}, got {}", args.l)));
            }
            let total = args.total.unwrap_or(args.l + args.l);
            let r = infer_distribution(args.l, total)?;
            let mut text = format!("{} exact={}\n", r.distribution, r.exact_match);
            text.push_str(&format!("unique={}\n", r.unique));
            if !r.exact_match {
                text.push_str(&format!("residual={}\n", r.residual));
            }
            Ok(Outcome::ok(text, r.to_json()))
        }
        Command::Simulate(args) => {
            let report = simulate_conditional(&args.dist, args.total, args.samples, args.seed)?;
            if report.accepted == 0 {
                return Err(Failure::Compute(format!(
                    "no sample out of {} had M = {}; nothing to compare",
                    report.samples, args.total
                )));
            }
            let pass = report.passed();
            Ok(Outcome { text: report.to_string(), json: report.to_json(), pass })
        }
        Command::Singlet(args) => {
            let report = singlet_sampler(args.samples, args.seed)?;
            let pass = report.passed() && report.equal_outcomes == Some(0);
            Ok(Outcome { text: report.to_string(), json: report.to_json(), pass })
        }
        Command::Rotate(args) => {
            let axis: [f64; 3] = args
                .axis
                .as_slice()
                .try_into()
                .map_err(|_| usage(format!("--axis needs 3 components, got {}", args.axis.len())))?;
            let norm = axis.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(usage("--axis must be a finite nonzero vector".into()));
            }
            let u = rotation(axis.map(|c| c / norm * args.angle), args.n)?;
            let text: String = u
                .iter()
                .map(|row| {
                    let cells: Vec<String> =
                        row.iter().map(|z| format!("{:+.12}{:+.12}i", clean(z.re), clean(z.im))).collect();
                    format!("[{}]\n", cells.join(", "))
                })
                .collect();
            let json =
                json!(u.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>());
            Ok(Outcome::ok(text, json))
        }
        Command::PauliChecks(args) => {
            let mut report = check_independent_commute();
            report.extend(check_singlet_anticommute());
            report.extend(trichotomy_sweep(args.pairs, args.seed));
            Ok(report_outcome(report))
        }
        Command::ReproducePaper => {
            let suite = run_suite(&Goldens::default());
            Ok(Outcome { text: suite.to_string(), json: suite_json(&suite), pass: suite.all_pass() })
        }
    }
}

/// Drops rounding noise so `-0` never reaches the output.
fn clean(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

fn emit(out: &str, path: Option<&PathBuf>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, out),
        None => io::stdout().lock().write_all(out.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let out = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&outcome.json).expect("json renders"))
            } else {
                outcome.text
            };
            if let Err(e) = emit(&out, cli.output.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
