//! `czmax` command line: kernel checks, witness dumps and experiments.
//!
//! Exit codes: 0 when every verdict passes (informational verdicts count as
//! passing), 1 on a failed verdict, 2 on a usage or configuration error, 3 on
//! an internal error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Parser, Subcommand};
use czmax::algebra::{condition_iii, division_condition, factorize, invertibility, CZElement, KernelPart};
use czmax::experiments::{atomic_write, suite, ExperimentConfig, Report, Verdict, EXPERIMENT_IDS};
use czmax::grid::Grid;
use czmax::kernels::{parse_kernel_file, write_kernel_file, KernelFile, Weight};
use czmax::witness::{
    b_bilaplacian, b_first_order_2d, b_second_order, first_order_1d_field, psi_beta0, WitnessFunction,
};
use czmax::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Witness names accepted by `czmax witness`.
pub const WITNESS_NAMES: [&str; 7] =
    ["second-order", "first-order-1d", "first-order-2d-x", "first-order-2d-y", "bilaplacian", "psi", "beta0"];

#[derive(Debug, Parser)]
#[command(name = "czmax", version, about = "Truncated and maximal singular integrals: checks, witnesses, experiments")]
pub struct Invocation {
    /// Experiment config (TOML); compiled-in defaults when absent.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for reports and witness dumps.
    #[arg(long, global = true, env = "CZMAX_OUT_DIR", default_value = "czmax-out")]
    pub out_dir: PathBuf,
    /// Replaces the base seed of every seeded experiment.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Repeat for more output.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
    /// Print the default config and exit.
    #[arg(long)]
    pub print_defaults: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Does the lowest-degree term divide every other term?
    CheckDivision { kernel: PathBuf },
    /// Is the factor `U` (or the element `λI + T` for files with `identity`) invertible?
    CheckInvertible { kernel: PathBuf },
    /// Writes `T = R_P ∘ U` and prints `U` as a kernel file.
    Factorize { kernel: PathBuf },
    /// Runs one experiment and writes its report.
    Experiment { id: String },
    /// Samples a witness function and dumps it.
    Witness {
        name: String,
        /// `N,L`: nodes per axis and side length.
        #[arg(long, value_parser = parse_grid)]
        grid: (usize, f64),
    },
    /// Runs every experiment.
    Suite,
}

fn parse_grid(s: &str) -> Result<(usize, f64), String> {
    let (n, l) = s.split_once(',').ok_or_else(|| format!("expected N,L, got `{s}`"))?;
    let n = n.trim().parse().map_err(|e| format!("N: {e}"))?;
    let l = l.trim().parse().map_err(|e| format!("L: {e}"))?;
    Ok((n, l))
}

/// Failure before or during a command.
#[derive(Debug)]
enum Failure {
    Config(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> Failure {
    Failure::Config(e.to_string())
}

fn internal(e: Error) -> Failure {
    match e {
        Error::Config(m) => Failure::Config(m),
        e => Failure::Internal(e.to_string()),
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(argv) {
        Ok(inv) => inv,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    match execute(&inv) {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Config(m) => eprintln!("config error: {m}"),
                Failure::Internal(m) => eprintln!("internal error: {m}"),
            }
            f.code()
        }
    }
}

fn execute(inv: &Invocation) -> Result<i32, Failure> {
    if inv.print_defaults {
        print!("{}", ExperimentConfig::default().to_toml());
        return Ok(EXIT_PASS);
    }
    let Some(command) = &inv.command else {
        return Err(Failure::Config("no subcommand given (try --help)".into()));
    };
    match command {
        Command::CheckDivision { kernel } => check_division(&load_kernel(kernel)?),
        Command::CheckInvertible { kernel } => check_invertible(&load_kernel(kernel)?),
        Command::Factorize { kernel } => factor(&load_kernel(kernel)?),
        Command::Experiment { id } => {
            if !EXPERIMENT_IDS.contains(&id.as_str()) {
                return Err(Failure::Config(format!(
                    "unknown experiment `{id}`; expected one of {}",
                    EXPERIMENT_IDS.join(", ")
                )));
            }
            let config = load_config(inv)?;
            let report = czmax::experiments::run(id, &config).map_err(internal)?;
            emit(inv, &report)
        }
        Command::Witness { name, grid } => witness(inv, name, *grid),
        Command::Suite => {
            let config = load_config(inv)?;
            let mut code = EXIT_PASS;
            for (id, result) in EXPERIMENT_IDS.iter().zip(suite(&config)) {
                let c = match result {
                    Ok(report) => emit(inv, &report)?,
                    Err(e) => {
                        eprintln!("{id}: internal error: {e}");
                        EXIT_INTERNAL
                    }
                };
                code = code.max(c);
            }
            Ok(code)
        }
    }
}

fn load_kernel(path: &Path) -> Result<KernelFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    parse_kernel_file(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))
}

fn load_config(inv: &Invocation) -> Result<ExperimentConfig, Failure> {
    let mut config = match &inv.config {
        Some(p) => ExperimentConfig::load(p).map_err(config_err)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = inv.seed {
        config.pointwise_even.base_seed = seed;
        config.pointwise_odd.base_seed = seed;
        config.condition_survey.pointwise.base_seed = seed;
        config.llogl.base_seed = seed;
    }
    config.validate().map_err(config_err)?;
    Ok(config)
}

fn emit(inv: &Invocation, report: &Report) -> Result<i32, Failure> {
    let (json, csv) = report.write_to(&inv.out_dir).map_err(internal)?;
    println!("{}: {} ({})", report.id, report.verdict, json.display());
    if inv.verbose > 0 {
        for (k, v) in &report.metrics {
            println!("  {k} = {v}");
        }
        for n in &report.notes {
            println!("  note: {n}");
        }
        println!("  series: {}", csv.display());
    }
    Ok(match report.verdict {
        Verdict::Fail => EXIT_FAIL,
        Verdict::Pass | Verdict::Informational => EXIT_PASS,
    })
}

fn check_division(file: &KernelFile) -> Result<i32, Failure> {
    let report = division_condition(&file.spec).map_err(internal)?;
    println!("holds={}", report.holds);
    if let Some(b) = &report.base {
        println!("base={b}");
    }
    for (d, q) in &report.quotients {
        if report.base.as_ref().is_some_and(|b| b.degree() == *d) {
            continue;
        }
        println!("quotient[{d}]={q}");
    }
    if let Some(w) = report.failure_witness {
        println!("failure_degree={w}");
    }
    Ok(if report.holds { EXIT_PASS } else { EXIT_FAIL })
}

fn check_invertible(file: &KernelFile) -> Result<i32, Failure> {
    let report = match &file.identity {
        Some(w) => invertibility(&CZElement::new(w.value(), file.spec.clone())).map_err(internal)?,
        None => {
            let cond = condition_iii(&file.spec).map_err(internal)?;
            println!("division={}", cond.division);
            match cond.invertibility {
                Some(r) => r,
                None => {
                    println!("invertible=false");
                    return Ok(EXIT_FAIL);
                }
            }
        }
    };
    println!("invertible={}", report.invertible);
    println!("min_abs_symbol={:e}", report.min_abs_symbol);
    println!("argmin_angle={}", report.argmin_angle);
    Ok(if report.invertible { EXIT_PASS } else { EXIT_FAIL })
}

fn factor(file: &KernelFile) -> Result<i32, Failure> {
    if file.identity.is_some() {
        return Err(Failure::Config("factorize expects a kernel without an identity part".into()));
    }
    let f = match factorize(&file.spec) {
        Ok(f) => f,
        Err(Error::DivisionFails(d)) => {
            println!("holds=false");
            println!("failure_degree={d}");
            return Ok(EXIT_FAIL);
        }
        Err(e) => return Err(internal(e)),
    };
    let riesz = KernelFile { spec: f.riesz_part(), identity: None };
    println!("# R_P");
    print!("{}", write_kernel_file(&riesz).map_err(internal)?);
    println!("# U (lambda = {})", f.u.lambda());
    match f.u.part() {
        KernelPart::Kernel(spec) => {
            let identity = match &f.lambda_exact {
                Some(l) => Some(Weight::new(l.clone(), 0)),
                None => Some(format!("{}", f.u.lambda()).parse().map_err(internal)?),
            };
            let u = KernelFile { spec: spec.clone(), identity };
            print!("{}", write_kernel_file(&u).map_err(internal)?);
        }
        KernelPart::Zero => println!("# U is a multiple of the identity"),
        KernelPart::SymbolOnly(trig) => {
            for (m, c) in trig {
                println!("# symbol coefficient e^(i{m}θ): {} {:+}i", c.re, c.im);
            }
        }
    }
    println!("# check_error = {:e}", f.check_error);
    Ok(EXIT_PASS)
}

fn witness(inv: &Invocation, name: &str, (n, l): (usize, f64)) -> Result<i32, Failure> {
    if !WITNESS_NAMES.contains(&name) {
        return Err(Failure::Config(format!("unknown witness `{name}`; expected one of {}", WITNESS_NAMES.join(", "))));
    }
    let dim = if name == "first-order-1d" { 1 } else { 2 };
    let grid = Grid::new(dim, l, n).map_err(config_err)?;
    let w: WitnessFunction = match name {
        "second-order" => b_second_order(2, &grid),
        "first-order-1d" => first_order_1d_field(&grid),
        "first-order-2d-x" => b_first_order_2d(0, &grid),
        "first-order-2d-y" => b_first_order_2d(1, &grid),
        "bilaplacian" => b_bilaplacian(None, &grid).map(|b| b.b),
        "psi" => psi_beta0(&grid).map(|s| s.psi),
        _ => psi_beta0(&grid).map(|s| s.beta0),
    }
    .map_err(internal)?;
    let mut bytes = Vec::new();
    w.dump(&mut bytes).map_err(internal)?;
    std::fs::create_dir_all(&inv.out_dir).map_err(|e| Failure::Internal(e.to_string()))?;
    let path = inv.out_dir.join(format!("{name}.{n}.{l}.witness"));
    atomic_write(&path, &bytes).map_err(internal)?;
    println!("{name}: {}", path.display());
    if inv.verbose > 0 {
        println!("  sup = {:e}", w.samples.sup_norm());
        if let Some(b) = w.bmo_value {
            println!("  bmo = {b:e}");
        }
    }
    Ok(EXIT_PASS)
}
