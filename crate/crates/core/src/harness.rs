//! Accuracy metrics, experiment grids and result tables.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eig::{
    classical_jacobi, cyclic_jacobi, mixed_precision_jacobi, SolveReport, SymEigResult,
    ToleranceConfig,
};
use crate::error::{Error, Result};
use crate::matgen::{generate, generate_symmetric, MatGenSpec, MatrixKind, DEFAULT_SEED};
use crate::numcore::DenseMatrix;
use crate::orth::Orthogonalizer;
use crate::svd::{mixed_precision_svd, one_sided_jacobi_svd, SvdResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Classical,
    Cyclic,
    Mixed,
    #[serde(rename = "onesided")]
    OneSidedSvd,
    #[serde(rename = "mixedsvd")]
    MixedSvd,
}

impl Algorithm {
    pub fn is_svd(self) -> bool {
        matches!(self, Algorithm::OneSidedSvd | Algorithm::MixedSvd)
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Classical => "classical",
            Algorithm::Cyclic => "cyclic",
            Algorithm::Mixed => "mixed",
            Algorithm::OneSidedSvd => "onesided",
            Algorithm::MixedSvd => "mixedsvd",
        }
    }

    /// Default tolerances for this algorithm family.
    pub fn default_tol(self) -> ToleranceConfig {
        if self.is_svd() {
            ToleranceConfig::svd_default()
        } else {
            ToleranceConfig::eig_default()
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "classical" => Ok(Algorithm::Classical),
            "cyclic" => Ok(Algorithm::Cyclic),
            "mixed" => Ok(Algorithm::Mixed),
            "onesided" => Ok(Algorithm::OneSidedSvd),
            "mixedsvd" => Ok(Algorithm::MixedSvd),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm {other:?}"
            ))),
        }
    }
}

/// `‖A P − P T‖_F / ‖A‖_F`.
pub fn residual_eig(
    a: &DenseMatrix<f64>,
    p: &DenseMatrix<f64>,
    t: &DenseMatrix<f64>,
) -> Result<f64> {
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::DegenerateInput("residual of a zero matrix".into()));
    }
    let r = a.matmul(p)?.sub(&p.matmul(t)?)?;
    Ok(r.frobenius_norm() / norm)
}

/// `‖A V − U Σ‖_F / ‖A‖_F`.
pub fn residual_svd(
    a: &DenseMatrix<f64>,
    u: &DenseMatrix<f64>,
    sigma: &[f64],
    v: &DenseMatrix<f64>,
) -> Result<f64> {
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::DegenerateInput("residual of a zero matrix".into()));
    }
    if sigma.len() != u.cols() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} singular values", u.cols()),
            found: sigma.len().to_string(),
        });
    }
    let us = DenseMatrix::from_fn(u.rows(), u.cols(), |i, j| u.get(i, j) * sigma[j]);
    Ok(a.matmul(v)?.sub(&us)?.frobenius_norm() / norm)
}

/// `‖MᵀM − I‖_F`.
pub fn orth_defect(m: &DenseMatrix<f64>) -> f64 {
    let n = m.cols();
    let g = m.t_matmul(m).expect("MᵀM always conforms");
    let mut sum = 0.0;
    for j in 0..n {
        for i in 0..n {
            let d = g.get(i, j) - if i == j { 1.0 } else { 0.0 };
            sum += d * d;
        }
    }
    sum.sqrt()
}

/// One cell of an experiment grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub spec: MatGenSpec,
    pub algorithm: Algorithm,
    pub tol: ToleranceConfig,
    pub orthogonalizer: Orthogonalizer,
}

impl GridCell {
    pub fn new(spec: MatGenSpec, algorithm: Algorithm) -> Self {
        Self {
            spec,
            algorithm,
            tol: algorithm.default_tol(),
            orthogonalizer: Orthogonalizer::Mgs,
        }
    }
}

/// Metrics of one solve. Fields that do not apply, or that could not be
/// computed because the solve failed, are `None`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub spec: MatGenSpec,
    pub algorithm: Algorithm,
    pub res: Option<f64>,
    pub orth_p: Option<f64>,
    pub orth_u: Option<f64>,
    pub orth_v: Option<f64>,
    pub ju_ratio: Option<f64>,
    pub sweeps: Option<usize>,
    pub ct_seconds: Option<f64>,
    pub off0: Option<f64>,
    pub bd: Option<f64>,
    /// `d(A) / (4 √2)` from the generator spectrum.
    pub gap_term: Option<f64>,
    /// `‖off(A)‖_F` of the input (symmetric kinds).
    pub off_a: Option<f64>,
    /// Error name and message when the cell failed.
    pub error: Option<String>,
}

impl ExperimentRow {
    fn empty(spec: MatGenSpec, algorithm: Algorithm) -> Self {
        Self {
            spec,
            algorithm,
            res: None,
            orth_p: None,
            orth_u: None,
            orth_v: None,
            ju_ratio: None,
            sweeps: None,
            ct_seconds: None,
            off0: None,
            bd: None,
            gap_term: None,
            off_a: None,
            error: None,
        }
    }
}

/// Generates the matrix and runs one solve; failures land in `row.error`.
pub fn run_cell(cell: &GridCell) -> ExperimentRow {
    let outcome = if cell.algorithm.is_svd() {
        run_svd(cell).map(|(row, _)| row)
    } else {
        run_eig(cell).map(|(row, _)| row)
    };
    outcome.unwrap_or_else(|e| {
        let mut row = ExperimentRow::empty(cell.spec, cell.algorithm);
        row.error = Some(format!("{}: {e}", e.name()));
        row
    })
}

fn gap_term(gap: f64) -> Option<f64> {
    gap.is_finite()
        .then(|| gap / (4.0 * std::f64::consts::SQRT_2))
}

/// Eigen-solve of one cell, returning the metrics row and the full result.
pub fn run_eig(cell: &GridCell) -> Result<(ExperimentRow, SymEigResult<f64>)> {
    if cell.algorithm.is_svd() || cell.spec.kind == MatrixKind::Rect {
        return Err(Error::InvalidArgument(format!(
            "{} needs a symmetric spec and an eigen algorithm, got {}",
            cell.algorithm, cell.spec
        )));
    }
    let (a, truth) = generate_symmetric(&cell.spec)?;
    let r = match cell.algorithm {
        Algorithm::Classical => classical_jacobi(&a, &cell.tol)?,
        Algorithm::Cyclic => cyclic_jacobi(&a, &cell.tol, None)?,
        _ => mixed_precision_jacobi(&a, &cell.tol, cell.orthogonalizer)?,
    };
    let mut row = ExperimentRow::empty(cell.spec, cell.algorithm);
    row.gap_term = gap_term(truth.gap);
    row.off_a = Some(a.off_norm());
    row.res = Some(residual_eig(a.matrix(), &r.p, r.t.matrix())?);
    row.orth_p = Some(orth_defect(&r.p));
    set_report(&mut row, &r.report);
    Ok((row, r))
}

/// SVD of one cell, returning the metrics row and the full result.
pub fn run_svd(cell: &GridCell) -> Result<(ExperimentRow, SvdResult<f64>)> {
    if !cell.algorithm.is_svd() {
        return Err(Error::InvalidArgument(format!(
            "{} is not an SVD algorithm",
            cell.algorithm
        )));
    }
    let (a, truth) = generate(&cell.spec)?;
    let r = match cell.algorithm {
        Algorithm::OneSidedSvd => one_sided_jacobi_svd(&a, &cell.tol, None)?,
        _ => mixed_precision_svd(&a, &cell.tol, cell.orthogonalizer)?,
    };
    let mut row = ExperimentRow::empty(cell.spec, cell.algorithm);
    row.gap_term = gap_term(truth.gap);
    row.res = Some(residual_svd(&a, &r.u, &r.sigma, &r.v)?);
    row.orth_u = Some(orth_defect(&r.u));
    row.orth_v = Some(orth_defect(&r.v));
    set_report(&mut row, &r.report);
    Ok((row, r))
}

fn set_report(row: &mut ExperimentRow, report: &SolveReport) {
    row.ju_ratio = Some(report.ju_ratio);
    row.sweeps = Some(report.sweeps);
    row.ct_seconds = Some(report.wall_seconds);
    row.off0 = report.off0;
    row.bd = report.bd;
}

/// Runs every cell in parallel on the global pool; output order equals input order.
pub fn run_grid(cells: &[GridCell]) -> Vec<ExperimentRow> {
    cells.par_iter().map(run_cell).collect()
}

/// [`run_grid`] on a dedicated pool of `jobs` threads.
pub fn run_grid_with_jobs(cells: &[GridCell], jobs: usize) -> Result<Vec<ExperimentRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(|| run_grid(cells)))
}

/// Named experiment grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Symmetric, modes 1-5, kappa 1e3..1e6, cyclic vs mixed.
    Table1,
    /// Rectangular `n x n/2`, modes 1-5, kappa 1e3..1e6, one-sided vs mixed SVD.
    Table8,
    /// Mixed solver, modes 1-5, kappa 1e8, n doubling from 64.
    Fig1,
    /// Mixed solver, modes 4 and 5, kappa 1e8, n doubling from 64.
    Fig2,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table1" => Ok(Preset::Table1),
            "table8" => Ok(Preset::Table8),
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            other => Err(Error::InvalidArgument(format!(
                "unknown preset {other:?} (expected table1, table8, fig1 or fig2)"
            ))),
        }
    }
}

const TABLE_KAPPAS: [f64; 4] = [1e3, 1e4, 1e5, 1e6];

/// 64, 128, ... up to `n`, with `n` itself appended when it is not on the ladder.
fn size_ladder(n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut k = 64;
    while k <= n {
        sizes.push(k);
        k *= 2;
    }
    if sizes.last() != Some(&n) {
        sizes.push(n);
    }
    sizes
}

impl Preset {
    /// Desk-scale size: `n = 256` for the eigen presets, 256 rows for `table8`.
    pub fn default_n(self) -> usize {
        256
    }

    /// Cells of the preset; every matrix uses `seed`.
    pub fn cells(self, n: usize, seed: u64) -> Vec<GridCell> {
        let mut cells = Vec::new();
        match self {
            Preset::Table1 => {
                for kappa in TABLE_KAPPAS {
                    for mode in 1..=5 {
                        let spec = MatGenSpec::sym_pd(mode, kappa, n, seed);
                        cells.push(GridCell::new(spec, Algorithm::Cyclic));
                        cells.push(GridCell::new(spec, Algorithm::Mixed));
                    }
                }
            }
            Preset::Table8 => {
                for kappa in TABLE_KAPPAS {
                    for mode in 1..=5 {
                        let spec = MatGenSpec::rect(mode, kappa, n, (n / 2).max(1), seed);
                        cells.push(GridCell::new(spec, Algorithm::OneSidedSvd));
                        cells.push(GridCell::new(spec, Algorithm::MixedSvd));
                    }
                }
            }
            Preset::Fig1 | Preset::Fig2 => {
                let modes: &[u8] = if self == Preset::Fig1 {
                    &[1, 2, 3, 4, 5]
                } else {
                    &[4, 5]
                };
                for &mode in modes {
                    for size in size_ladder(n) {
                        let spec = MatGenSpec::sym_pd(mode, 1e8, size, seed);
                        cells.push(GridCell::new(spec, Algorithm::Mixed));
                    }
                }
            }
        }
        cells
    }
}

/// Seed base from `MPJACOBI_SEED`, falling back to the generator default.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var("MPJACOBI_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("MPJACOBI_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown format {other:?} (expected csv, markdown or json)"
            ))),
        }
    }
}

pub const CSV_HEADER: [&str; 18] = [
    "kind",
    "mode",
    "kappa",
    "n",
    "m",
    "mult",
    "seed",
    "algorithm",
    "res",
    "orth_p",
    "orth_u",
    "orth_v",
    "ju_ratio",
    "sweeps",
    "ct_seconds",
    "off0",
    "bd",
    "gap_term",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Shortest round-trip scientific notation; empty when missing.
fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub fn to_csv(rows: &[ExperimentRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        let s = &r.spec;
        w.write_record([
            s.kind.token().to_string(),
            s.mode.to_string(),
            format!("{:e}", s.kappa),
            s.cols.to_string(),
            s.rows.to_string(),
            s.multiplicity.to_string(),
            s.seed.to_string(),
            r.algorithm.to_string(),
            num(r.res),
            num(r.orth_p),
            num(r.orth_u),
            num(r.orth_v),
            num(r.ju_ratio),
            opt(r.sweeps),
            num(r.ct_seconds),
            num(r.off0),
            num(r.bd),
            num(r.gap_term),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(format!("csv: {e}")))
}

pub fn to_json(rows: &[ExperimentRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::InvalidArgument(format!("json: {e}")))
}

pub fn from_json(text: &str) -> Result<Vec<ExperimentRow>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))
}

fn sci(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2e}")).unwrap_or_else(|| "-".into())
}

/// One line per matrix, one column group per algorithm, like the published tables.
pub fn to_markdown(rows: &[ExperimentRow]) -> String {
    let mut specs: Vec<MatGenSpec> = Vec::new();
    let mut algos: Vec<Algorithm> = Vec::new();
    for r in rows {
        if !specs.contains(&r.spec) {
            specs.push(r.spec);
        }
        if !algos.contains(&r.algorithm) {
            algos.push(r.algorithm);
        }
    }
    let columns = |a: Algorithm| -> &'static [&'static str] {
        if a.is_svd() {
            &["Res.", "OR-U.", "OR-V.", "JU.", "CT.", "SP."]
        } else {
            &["Res.", "OR-P.", "JU.", "CT.", "SP."]
        }
    };
    let mut head = vec!["(mode,kappa)".to_string(), "size".to_string()];
    for &a in &algos {
        head.extend(columns(a).iter().map(|c| format!("{a} {c}")));
    }
    let mut out = String::new();
    out += &format!("| {} |\n", head.join(" | "));
    out += &format!("|{}\n", "---|".repeat(head.len()));
    for spec in &specs {
        let size = if spec.kind == MatrixKind::Rect {
            format!("{}x{}", spec.rows, spec.cols)
        } else {
            spec.cols.to_string()
        };
        let mut cells = vec![format!("({},{:e})", spec.mode, spec.kappa), size];
        for &a in &algos {
            let row = rows.iter().find(|r| r.spec == *spec && r.algorithm == a);
            let width = columns(a).len();
            match row {
                None => cells.extend(std::iter::repeat_n("-".to_string(), width)),
                Some(r) if r.error.is_some() => {
                    let name = r.error.as_deref().unwrap_or_default();
                    let name = name.split(':').next().unwrap_or_default();
                    cells.push(format!("error: {name}"));
                    cells.extend(std::iter::repeat_n("-".to_string(), width - 1));
                }
                Some(r) => {
                    cells.push(sci(r.res));
                    if a.is_svd() {
                        cells.push(sci(r.orth_u));
                        cells.push(sci(r.orth_v));
                    } else {
                        cells.push(sci(r.orth_p));
                    }
                    cells.push(
                        r.ju_ratio
                            .map(|x| format!("{x:.2}N"))
                            .unwrap_or_else(|| "-".into()),
                    );
                    cells.push(
                        r.ct_seconds
                            .map(|x| format!("{x:.2}"))
                            .unwrap_or_else(|| "-".into()),
                    );
                    cells.push(opt(r.sweeps));
                }
            }
        }
        out += &format!("| {} |\n", cells.join(" | "));
    }
    out
}

pub fn render(rows: &[ExperimentRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => to_csv(rows),
        OutputFormat::Markdown => Ok(to_markdown(rows)),
        OutputFormat::Json => to_json(rows).map(|s| s + "\n"),
    }
}

/// Writes the rendered rows to `out`, or to stdout when `out` is `None`.
pub fn emit(rows: &[ExperimentRow], format: OutputFormat, out: Option<&Path>) -> Result<()> {
    let text = render(rows, format)?;
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::HIGH_ROUNDOFF as W;

    #[test]
    fn residual_examples() {
        let a = DenseMatrix::from_diagonal(&[3.0, -1.0, 2.0]);
        let i = DenseMatrix::identity(3);
        assert_eq!(residual_eig(&a, &i, &a).unwrap(), 0.0);
        let mut t = a.clone();
        t.set(0, 2, 1e-3);
        let expect = 1e-3 / a.frobenius_norm();
        assert!((residual_eig(&a, &i, &t).unwrap() - expect).abs() <= 4.0 * W);
        let zero = DenseMatrix::zeros(2, 2);
        let i2 = DenseMatrix::identity(2);
        assert!(matches!(
            residual_eig(&zero, &i2, &zero),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn residual_svd_examples() {
        let a = DenseMatrix::from_row_major(3, 2, &[3.0, 0.0, 0.0, 2.0, 0.0, 0.0]).unwrap();
        let u = a.clone();
        let u = DenseMatrix::from_fn(3, 2, |i, j| u.get(i, j) / [3.0, 2.0][j]);
        let v = DenseMatrix::identity(2);
        assert_eq!(residual_svd(&a, &u, &[3.0, 2.0], &v).unwrap(), 0.0);
        let got = residual_svd(&a, &u, &[3.0, 2.0 + 1e-4], &v).unwrap();
        assert!((got - 1e-4 / 13f64.sqrt()).abs() <= 4.0 * W);
        assert!(residual_svd(&DenseMatrix::zeros(3, 2), &u, &[3.0, 2.0], &v).is_err());
    }

    #[test]
    fn orth_defect_examples() {
        assert_eq!(orth_defect(&DenseMatrix::identity(4)), 0.0);
        let mut m = DenseMatrix::identity(3);
        m.set(1, 1, 2.0);
        assert_eq!(orth_defect(&m), 3.0);
    }

    #[test]
    fn empty_grid() {
        assert!(run_grid(&[]).is_empty());
        assert_eq!(to_csv(&[]).unwrap(), CSV_HEADER.join(",") + "\n");
    }

    #[test]
    fn grid_keeps_order_and_records_errors() {
        let good = GridCell::new(MatGenSpec::sym_pd(4, 1e3, 12, 5), Algorithm::Cyclic);
        let bad = GridCell::new(MatGenSpec::rect(3, 1e3, 12, 6, 5), Algorithm::Mixed);
        let svd = GridCell::new(MatGenSpec::rect(3, 1e3, 12, 6, 5), Algorithm::MixedSvd);
        let rows = run_grid(&[good, bad, svd]);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].algorithm, Algorithm::Cyclic);
        assert!(rows[0].error.is_none() && rows[0].res.unwrap() < 1e-13);
        assert!(rows[0].off0.is_none() && rows[0].orth_u.is_none());
        assert!(rows[1]
            .error
            .as_deref()
            .unwrap()
            .starts_with("InvalidArgument"));
        assert!(rows[1].res.is_none());
        assert!(rows[2].orth_v.unwrap() < 1e-13 && rows[2].off0.is_some());
        let again = run_grid_with_jobs(&[good, bad, svd], 1).unwrap();
        for (x, y) in rows.iter().zip(&again) {
            assert_eq!((x.res, x.sweeps, x.off0), (y.res, y.sweeps, y.off0));
        }
    }

    #[test]
    fn csv_and_json() {
        let cell = GridCell::new(MatGenSpec::sym_pd(3, 1e3, 8, 1), Algorithm::Mixed);
        let rows = run_grid(&[cell]);
        let csv = to_csv(&rows).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields.len(), 18);
        assert_eq!(
            &fields[..8],
            &["sympd", "3", "1e3", "8", "8", "1", "1", "mixed"]
        );
        assert_eq!(fields[10], "");
        assert!(!fields[15].is_empty());
        let back = from_json(&to_json(&rows).unwrap()).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn presets() {
        assert_eq!(size_ladder(256), vec![64, 128, 256]);
        assert_eq!(size_ladder(100), vec![64, 100]);
        let t1 = Preset::Table1.cells(32, 7);
        assert_eq!(t1.len(), 40);
        assert!(t1.iter().all(|c| c.spec.seed == 7 && c.spec.cols == 32));
        let t8 = Preset::Table8.cells(32, 7);
        assert_eq!((t8[0].spec.rows, t8[0].spec.cols), (32, 16));
        assert_eq!(t8[1].tol, ToleranceConfig::svd_default());
        assert_eq!(Preset::Fig2.cells(128, 1).len(), 4);
        assert_eq!("FIG1".parse::<Preset>().unwrap(), Preset::Fig1);
    }
}
