use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mpjacobi::harness::{self, Algorithm, GridCell, OutputFormat, Preset};
use mpjacobi::{generate, Error, MatGenSpec, Orthogonalizer, StopRule, ToleranceConfig};

#[derive(Parser)]
#[command(
    name = "mpjacobi",
    version,
    about = "Mixed-precision Jacobi eigensolver and SVD"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetric eigendecomposition of a generated matrix.
    Eig(EigArgs),
    /// Singular value decomposition of a generated matrix.
    Svd(SvdArgs),
    /// Run a preset experiment grid.
    Bench(BenchArgs),
    /// Write a generated matrix and its ground-truth spectrum.
    Gen(GenArgs),
}

#[derive(Args)]
struct Output {
    /// csv, markdown or json.
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EigArgs {
    /// kind:mode:kappa:n[:m][:mult][:seed]
    #[arg(long)]
    spec: String,
    #[arg(long, default_value = "mixed", value_parser = ["classical", "cyclic", "mixed"])]
    algo: String,
    #[arg(long, default_value = "mgs")]
    orth: Orthogonalizer,
    #[arg(long, default_value_t = 0.1)]
    eps_factor: f64,
    #[arg(long, default_value_t = 20.0)]
    nu_factor: f64,
    #[arg(long, default_value = "min")]
    stop_rule: StopRule,
    #[arg(long, default_value_t = 100)]
    max_sweeps: usize,
    /// JSON with eigenvalues, off-norm history and P.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SvdArgs {
    /// kind:mode:kappa:n[:m][:mult][:seed]
    #[arg(long)]
    spec: String,
    #[arg(long, default_value = "mixed", value_parser = ["onesided", "mixed"])]
    algo: String,
    #[arg(long, default_value = "mgs")]
    orth: Orthogonalizer,
    #[arg(long, default_value_t = 0.1)]
    eps_factor: f64,
    #[arg(long, default_value_t = 1.0)]
    nu_factor: f64,
    /// Stop once a sweep applies fewer than this fraction of n(n-1)/2 rotations.
    #[arg(long, default_value_t = 2e-4)]
    early_stop_ratio: f64,
    #[arg(long, default_value_t = 100)]
    max_sweeps: usize,
    /// JSON with singular values, off-norm history and V.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchArgs {
    /// table1, table8, fig1 or fig2.
    #[arg(long)]
    preset: Preset,
    /// Matrix order (rows for table8; the largest size for the fig ladders).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, env = "MPJACOBI_SEED")]
    seed_base: Option<u64>,
    /// Parallel cells; all cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GenArgs {
    /// kind:mode:kappa:n[:m][:mult][:seed]
    #[arg(long)]
    spec: String,
    /// Matrix file; the spectrum goes to `<out>.truth.json`.
    #[arg(long)]
    out: PathBuf,
}

/// Spec strings without a seed field take `MPJACOBI_SEED` when it is set.
fn parse_spec(s: &str) -> Result<MatGenSpec, Error> {
    let mut spec: MatGenSpec = s.parse()?;
    if s.split(':').nth(6).is_none_or(str::is_empty) {
        spec.seed = harness::seed_from_env()?;
    }
    Ok(spec)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Error> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn rows_of(m: &mpjacobi::DenseMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

fn eig(args: EigArgs) -> Result<(), Error> {
    let tol = ToleranceConfig {
        eps_factor: args.eps_factor,
        nu_factor: args.nu_factor,
        max_sweeps: args.max_sweeps,
        stop_rule: args.stop_rule,
        early_stop_ratio: None,
    };
    let cell = GridCell {
        spec: parse_spec(&args.spec)?,
        algorithm: args.algo.parse()?,
        tol,
        orthogonalizer: args.orth,
    };
    let (row, result) = harness::run_eig(&cell)?;
    if let Some(path) = &args.dump {
        let value = serde_json::json!({
            "eigenvalues": result.sorted_eigenvalues(),
            "off_history": result.report.off_history,
            "p": rows_of(&result.p),
        });
        write_json(path, &value)?;
    }
    harness::emit(&[row], args.output.format, args.output.out.as_deref())
}

fn svd(args: SvdArgs) -> Result<(), Error> {
    let tol = ToleranceConfig {
        eps_factor: args.eps_factor,
        nu_factor: args.nu_factor,
        max_sweeps: args.max_sweeps,
        early_stop_ratio: Some(args.early_stop_ratio),
        ..ToleranceConfig::svd_default()
    };
    let algorithm = match args.algo.as_str() {
        "onesided" => Algorithm::OneSidedSvd,
        _ => Algorithm::MixedSvd,
    };
    let cell = GridCell {
        spec: parse_spec(&args.spec)?,
        algorithm,
        tol,
        orthogonalizer: args.orth,
    };
    let (row, result) = harness::run_svd(&cell)?;
    if let Some(path) = &args.dump {
        let value = serde_json::json!({
            "sigma": result.sigma,
            "off_history": result.report.off_history,
            "v": rows_of(&result.v),
        });
        write_json(path, &value)?;
    }
    harness::emit(&[row], args.output.format, args.output.out.as_deref())
}

fn bench(args: BenchArgs) -> Result<(), Error> {
    let n = args.n.unwrap_or(args.preset.default_n());
    if n < 2 {
        return Err(Error::InvalidArgument("--n must be at least 2".into()));
    }
    let seed = match args.seed_base {
        Some(s) => s,
        None => harness::seed_from_env()?,
    };
    let cells = args.preset.cells(n, seed);
    let rows = match args.jobs {
        Some(j) if j > 0 => harness::run_grid_with_jobs(&cells, j)?,
        Some(_) => return Err(Error::InvalidArgument("--jobs must be positive".into())),
        None => harness::run_grid(&cells),
    };
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!(
            "{} {}: {}",
            r.spec,
            r.algorithm,
            r.error.as_deref().unwrap_or_default()
        );
    }
    harness::emit(&rows, args.output.format, args.output.out.as_deref())
}

fn gen(args: GenArgs) -> Result<(), Error> {
    let spec = parse_spec(&args.spec)?;
    let (a, truth) = generate(&spec)?;
    a.save(&args.out)?;
    let mut truth_path = args.out.clone().into_os_string();
    truth_path.push(".truth.json");
    let value = serde_json::json!({
        "spec": spec.to_string(),
        "spectrum": truth.spectrum,
        "gap": truth.gap.is_finite().then_some(truth.gap),
    });
    write_json(Path::new(&truth_path), &value)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Eig(a) => eig(a),
        Command::Svd(a) => svd(a),
        Command::Bench(a) => bench(a),
        Command::Gen(a) => gen(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_solver_failure() => {
            let msg = e.to_string();
            if msg.starts_with(e.name()) {
                eprintln!("{msg}");
            } else {
                eprintln!("{}: {msg}", e.name());
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
