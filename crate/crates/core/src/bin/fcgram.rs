use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fcgram::shape::load_beta_params;
use fcgram::study::harness::{
    parse_n_range, render_csv, render_shape_csv, run_convergence, shape_dump, StudySpec, BVP_DEFAULT_MAX_N,
};
use fcgram::study::registry::{function_registry, parse_params, problem_registry};
use fcgram::study::verify::{run_suite, Suite};
use fcgram::{validate_config, FcError, Rational, Result, ShapeFamily};

#[derive(Parser)]
#[command(name = "fcgram", version, about = "Fourier continuation convergence studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ShapeArgs {
    /// hermite | bump | doubleexp | beta
    #[arg(long, default_value = "beta")]
    family: String,
    /// Regularized-Beta parameters, one "ell mu sigma_tilde" line per ell
    #[arg(long)]
    shape_config: Option<PathBuf>,
}

impl ShapeArgs {
    fn resolve(&self, d: usize) -> Result<ShapeFamily> {
        match (&self.shape_config, self.family.as_str()) {
            (Some(path), "beta") => Ok(ShapeFamily::RegBeta { params: load_beta_params(path, d)? }),
            (Some(_), other) => Err(FcError::InvalidShape(format!("--shape-config applies to the beta family, not '{other}'"))),
            (None, name) => ShapeFamily::from_name(name, d),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Convergence study for a registered function
    Approx {
        #[arg(long)]
        function: String,
        #[arg(long = "fparam")]
        fparams: Vec<String>,
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value = "2")]
        b: Rational,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value = "2^6:2^12")]
        n_range: String,
        #[arg(long, default_value_t = 1 << 17)]
        ref_grid: usize,
        /// Output CSV (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence study for a registered boundary value problem (b = 2, d = 5)
    Bvp {
        #[arg(long)]
        problem: String,
        #[arg(long = "pparam")]
        pparams: Vec<String>,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value = "2^6:2^10")]
        n_range: String,
        #[arg(long, default_value_t = 1 << 17)]
        ref_grid: usize,
        /// Allow n above 2^10 (dense least squares; slow and memory hungry)
        #[arg(long)]
        large: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a shape function and its blended continuation on [1, b]
    Shape {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value = "2")]
        b: Rational,
        /// Grid size fixing the matching width (d-1)/n of the Gram factor
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a self-check suite; exit status reflects the outcome
    Verify {
        /// paper-tables | invariants
        #[arg(long)]
        suite: Suite,
        /// Include BVP sizes above 2^10
        #[arg(long)]
        large: bool,
    },
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(FcError::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Approx { function, fparams, d, b, shape, n_range, ref_grid, out } => {
            let f = function_registry(&function, &parse_params(&fparams)?)?;
            let mut spec = StudySpec::approx(f, d, b, shape.resolve(d)?, parse_n_range(&n_range)?);
            spec.ref_grid = ref_grid;
            let rows = run_convergence(&spec)?;
            emit(out, &render_csv(&spec.header(), &rows))?;
            Ok(true)
        }
        Command::Bvp { problem, pparams, shape, n_range, ref_grid, large, out } => {
            let p = problem_registry(&problem, &parse_params(&pparams)?)?;
            let ns = parse_n_range(&n_range)?;
            if !large && ns.iter().any(|&n| n > BVP_DEFAULT_MAX_N) {
                return Err(FcError::Parse(format!("n above {BVP_DEFAULT_MAX_N} requires --large")));
            }
            let mut spec = StudySpec::bvp(p, shape.resolve(5)?, ns);
            spec.ref_grid = ref_grid;
            let rows = run_convergence(&spec)?;
            emit(out, &render_csv(&spec.header(), &rows))?;
            Ok(true)
        }
        Command::Shape { shape, d, b, n, samples, ell, out } => {
            let cfg = validate_config(n, b, d)?;
            let family = shape.resolve(d)?;
            let rows = shape_dump(&family, &cfg, ell, samples)?;
            let mut header = vec![
                ("kind".to_string(), "shape".to_string()),
                ("d".to_string(), d.to_string()),
                ("b".to_string(), b.to_string()),
                ("n".to_string(), n.to_string()),
                ("ell".to_string(), ell.to_string()),
            ];
            header.extend(family.describe());
            emit(out, &render_shape_csv(&header, &rows))?;
            Ok(true)
        }
        Command::Verify { suite, large } => {
            let checks = run_suite(suite, large)?;
            for c in &checks {
                println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
