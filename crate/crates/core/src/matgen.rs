//! Seeded test matrices with known spectra.
//!
//! Random numbers come from PCG64 (`Lcg128Xsl64`, seeded through
//! `SeedableRng::seed_from_u64`). Uniforms on `(0, 1)` are `((x >> 11) + 0.5) 2^-53`
//! and Gaussians use the Box-Muller transform, both halves of each pair consumed
//! in order. Draw order per matrix: spectrum uniforms (mode 5 only), then the
//! Gaussian matrix for the left factor column by column, then the right factor.

use std::fmt;
use std::str::FromStr;

use rand_pcg::rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::eig::{default_distinct_tol, spectral_gap};
use crate::error::{Error, Result};
use crate::numcore::{DenseMatrix, SymMatrix};
use crate::orth::householder_qr;

/// Which family of test matrix to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    /// `P diag(λ) Pᵀ` with the randsvd-style positive spectrum.
    SymPd,
    /// `P diag(λ ⊗ 1_mult) Pᵀ` with the multiple-eigenvalue spectrum lists.
    SymMult,
    /// `U diag(σ) Vᵀ`, `m x n`.
    Rect,
}

impl MatrixKind {
    pub fn is_symmetric(self) -> bool {
        !matches!(self, MatrixKind::Rect)
    }

    pub fn token(self) -> &'static str {
        match self {
            MatrixKind::SymPd => "sympd",
            MatrixKind::SymMult => "symmult",
            MatrixKind::Rect => "rect",
        }
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sympd" => Ok(MatrixKind::SymPd),
            "symmult" => Ok(MatrixKind::SymMult),
            "rect" => Ok(MatrixKind::Rect),
            other => Err(Error::Parse(format!(
                "unknown matrix kind {other:?} (expected sympd, symmult or rect)"
            ))),
        }
    }
}

/// Recipe for one generated matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatGenSpec {
    pub kind: MatrixKind,
    /// 1..=5
    pub mode: u8,
    pub kappa: f64,
    pub rows: usize,
    pub cols: usize,
    /// Copies of each spectrum value (`SymMult` only; 1 otherwise).
    pub multiplicity: usize,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_230_101;

impl MatGenSpec {
    pub fn sym_pd(mode: u8, kappa: f64, n: usize, seed: u64) -> Self {
        Self {
            kind: MatrixKind::SymPd,
            mode,
            kappa,
            rows: n,
            cols: n,
            multiplicity: 1,
            seed,
        }
    }

    pub fn sym_mult(mode: u8, kappa: f64, n: usize, multiplicity: usize, seed: u64) -> Self {
        Self {
            kind: MatrixKind::SymMult,
            mode,
            kappa,
            rows: n,
            cols: n,
            multiplicity,
            seed,
        }
    }

    pub fn rect(mode: u8, kappa: f64, m: usize, n: usize, seed: u64) -> Self {
        Self {
            kind: MatrixKind::Rect,
            mode,
            kappa,
            rows: m,
            cols: n,
            multiplicity: 1,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if !(1..=5).contains(&self.mode) {
            return bad(format!("mode must be in 1..=5, got {}", self.mode));
        }
        if !(self.kappa >= 1.0 && self.kappa.is_finite()) {
            return bad(format!(
                "kappa must be a finite value >= 1, got {}",
                self.kappa
            ));
        }
        if self.cols == 0 {
            return bad("dimension must be positive".into());
        }
        if self.multiplicity == 0 || !self.cols.is_multiple_of(self.multiplicity) {
            return bad(format!(
                "multiplicity {} must divide n = {}",
                self.multiplicity, self.cols
            ));
        }
        match self.kind {
            MatrixKind::Rect if self.rows < self.cols => bad(format!(
                "rect needs m >= n, got {}x{}",
                self.rows, self.cols
            )),
            MatrixKind::SymPd | MatrixKind::SymMult if self.rows != self.cols => {
                bad("symmetric kinds are square".into())
            }
            MatrixKind::SymPd | MatrixKind::Rect if self.multiplicity != 1 => {
                bad("multiplicity applies to symmult only".into())
            }
            _ => Ok(()),
        }
    }

    /// Length of the distinct-value list before replication.
    pub fn distinct_len(&self) -> usize {
        self.cols / self.multiplicity
    }
}

impl fmt::Display for MatGenSpec {
    /// Canonical `kind:mode:kappa:n:m:mult:seed`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{:e}:{}:{}:{}:{}",
            self.kind.token(),
            self.mode,
            self.kappa,
            self.cols,
            self.rows,
            self.multiplicity,
            self.seed
        )
    }
}

impl FromStr for MatGenSpec {
    type Err = Error;

    /// `kind:mode:kappa:n[:m][:mult][:seed]`; optional fields may be left empty.
    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split(':').collect();
        if fields.len() < 4 || fields.len() > 7 {
            return Err(Error::Parse(format!(
                "spec {s:?} must look like kind:mode:kappa:n[:m][:mult][:seed]"
            )));
        }
        let kind: MatrixKind = fields[0].parse()?;
        let parse_err =
            |what: &str, v: &str| Error::Parse(format!("bad {what} {v:?} in spec {s:?}"));
        let mode: u8 = fields[1]
            .parse()
            .map_err(|_| parse_err("mode", fields[1]))?;
        let kappa: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err("kappa", fields[2]))?;
        let n: usize = fields[3].parse().map_err(|_| parse_err("n", fields[3]))?;
        let optional = |k: usize, what: &str| -> Result<Option<u64>> {
            match fields.get(k).copied() {
                None | Some("") => Ok(None),
                Some(v) => v.parse().map(Some).map_err(|_| parse_err(what, v)),
            }
        };
        let m = optional(4, "m")?.map(|v| v as usize).unwrap_or(n);
        let default_mult = if kind == MatrixKind::SymMult { 4 } else { 1 };
        let multiplicity = optional(5, "mult")?
            .map(|v| v as usize)
            .unwrap_or(default_mult);
        let seed = optional(6, "seed")?.unwrap_or(DEFAULT_SEED);
        let spec = Self {
            kind,
            mode,
            kappa,
            rows: m,
            cols: n,
            multiplicity,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Exact generator values and the gap derived from them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// Eigenvalues (symmetric kinds) or singular values (rect), in generator order.
    pub spectrum: Vec<f64>,
    /// Smallest gap between distinct values.
    pub gap: f64,
}

impl GroundTruth {
    fn new(spectrum: Vec<f64>) -> Self {
        let norm2 = spectrum.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let gap = spectral_gap(&spectrum, default_distinct_tol(spectrum.len(), norm2));
        Self { spectrum, gap }
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.spectrum.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn norm2(&self) -> f64 {
        self.spectrum.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

struct Sampler {
    rng: Pcg64,
    spare: Option<f64>,
}

impl Sampler {
    fn new(seed: u64) -> Self {
        Self {
            rng: Pcg64::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform on the open interval (0, 1).
    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }

    fn gaussian_matrix(&mut self, m: usize, n: usize) -> DenseMatrix<f64> {
        DenseMatrix::from_fn(m, n, |_, _| self.gaussian())
    }

    /// `m x n` with orthonormal columns, Haar distributed.
    fn haar(&mut self, m: usize, n: usize) -> DenseMatrix<f64> {
        let g = self.gaussian_matrix(m, n);
        // diag(R) >= 0 is exactly the sign correction that makes Q Haar
        householder_qr(&g)
            .expect("a Gaussian matrix has full column rank")
            .0
    }
}

/// Haar-distributed `n x n` orthogonal matrix.
pub fn haar_orthogonal(n: usize, seed: u64) -> DenseMatrix<f64> {
    Sampler::new(seed).haar(n, n)
}

/// Spectrum list for `spec`, replicated `multiplicity` times per value.
pub fn make_spectrum(spec: &MatGenSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    Ok(spectrum_with(spec, &mut Sampler::new(spec.seed)))
}

fn spectrum_with(spec: &MatGenSpec, sampler: &mut Sampler) -> Vec<f64> {
    let s = spec.distinct_len();
    let kappa = spec.kappa;
    let frac = |i: usize| {
        if s == 1 {
            0.0
        } else {
            i as f64 / (s - 1) as f64
        }
    };
    let multiple = spec.kind == MatrixKind::SymMult;
    let base: Vec<f64> = match spec.mode {
        1 => (0..s)
            .map(|i| if i == 0 { 1.0 } else { 1.0 / kappa })
            .collect(),
        2 => (0..s)
            .map(|i| if i + 1 == s { 1.0 / kappa } else { 1.0 })
            .collect(),
        3 if multiple => (0..s).map(|i| kappa * (frac(i) - 1.0)).collect(),
        3 => (0..s).map(|i| kappa.powf(-frac(i))).collect(),
        4 => (0..s)
            .map(|i| 1.0 - (1.0 - 1.0 / kappa) * frac(i))
            .collect(),
        5 if multiple => (0..s).map(|_| -kappa * sampler.uniform()).collect(),
        5 => (0..s).map(|_| kappa.powf(-sampler.uniform())).collect(),
        _ => unreachable!("mode validated"),
    };
    base.iter()
        .flat_map(|&x| std::iter::repeat_n(x, spec.multiplicity))
        .collect()
}

/// Builds the matrix described by `spec` together with its exact spectrum.
pub fn generate(spec: &MatGenSpec) -> Result<(DenseMatrix<f64>, GroundTruth)> {
    spec.validate()?;
    let mut sampler = Sampler::new(spec.seed);
    let spectrum = spectrum_with(spec, &mut sampler);
    let a = match spec.kind {
        MatrixKind::SymPd | MatrixKind::SymMult => {
            let p = sampler.haar(spec.cols, spec.cols);
            let pd = scale_columns(&p, &spectrum);
            SymMatrix::symmetrize(pd.matmul(&p.transpose())?)?.into_inner()
        }
        MatrixKind::Rect => {
            let u = sampler.haar(spec.rows, spec.cols);
            let v = sampler.haar(spec.cols, spec.cols);
            scale_columns(&u, &spectrum).matmul(&v.transpose())?
        }
    };
    Ok((a, GroundTruth::new(spectrum)))
}

/// Symmetric variant of [`generate`]; fails for `Rect`.
pub fn generate_symmetric(spec: &MatGenSpec) -> Result<(SymMatrix<f64>, GroundTruth)> {
    if !spec.kind.is_symmetric() {
        return Err(Error::InvalidArgument(format!(
            "{spec} is not a symmetric kind"
        )));
    }
    let (a, truth) = generate(spec)?;
    Ok((SymMatrix::new(a)?, truth))
}

fn scale_columns(m: &DenseMatrix<f64>, d: &[f64]) -> DenseMatrix<f64> {
    DenseMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j) * d[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::HIGH_ROUNDOFF as W;

    #[test]
    fn spectrum_examples() {
        let s = make_spectrum(&MatGenSpec::sym_pd(1, 100.0, 4, 1)).unwrap();
        assert_eq!(s, vec![1.0, 0.01, 0.01, 0.01]);
        let s = make_spectrum(&MatGenSpec::sym_pd(4, 2.0, 3, 1)).unwrap();
        assert_eq!(s, vec![1.0, 0.75, 0.5]);
        let s = make_spectrum(&MatGenSpec::sym_pd(2, 10.0, 3, 1)).unwrap();
        assert_eq!(s, vec![1.0, 1.0, 0.1]);
        let s = make_spectrum(&MatGenSpec::sym_pd(3, 100.0, 3, 1)).unwrap();
        assert_eq!(s[0], 1.0);
        assert!((s[1] - 0.1).abs() <= 4.0 * W);
        assert!((s[2] - 0.01).abs() <= 4.0 * W);
    }

    #[test]
    fn multiple_eigenvalue_lists() {
        let s = make_spectrum(&MatGenSpec::sym_mult(1, 10.0, 8, 4, 3)).unwrap();
        assert_eq!(s, vec![1.0, 1.0, 1.0, 1.0, 0.1, 0.1, 0.1, 0.1]);
        let s = make_spectrum(&MatGenSpec::sym_mult(3, 10.0, 6, 2, 3)).unwrap();
        assert_eq!(s, vec![-10.0, -10.0, -5.0, -5.0, 0.0, 0.0]);
        let s = make_spectrum(&MatGenSpec::sym_mult(5, 10.0, 12, 4, 3)).unwrap();
        assert!(s.iter().all(|&x| (-10.0..0.0).contains(&x)));
        assert_eq!(s[0], s[3]);
    }

    #[test]
    fn random_log_uniform_mode() {
        let s = make_spectrum(&MatGenSpec::sym_pd(5, 1e4, 50, 9)).unwrap();
        assert!(s.iter().all(|&x| (1e-4..=1.0).contains(&x)));
        let again = make_spectrum(&MatGenSpec::sym_pd(5, 1e4, 50, 9)).unwrap();
        assert_eq!(s, again);
        let other = make_spectrum(&MatGenSpec::sym_pd(5, 1e4, 50, 10)).unwrap();
        assert_ne!(s, other);
    }

    #[test]
    fn haar_examples() {
        let one = haar_orthogonal(1, 4);
        assert_eq!(one.get(0, 0).abs(), 1.0);
        assert_eq!(haar_orthogonal(16, 5), haar_orthogonal(16, 5));
        let p = haar_orthogonal(32, 6);
        let d = p
            .t_matmul(&p)
            .unwrap()
            .sub(&DenseMatrix::identity(32))
            .unwrap();
        assert!(d.frobenius_norm() <= 32.0 * 10.0 * W);
    }

    #[test]
    fn unit_kappa_gives_identity() {
        let (a, truth) = generate(&MatGenSpec::sym_pd(1, 1.0, 4, 2)).unwrap();
        let d = a.sub(&DenseMatrix::identity(4)).unwrap();
        assert!(d.frobenius_norm() <= 10.0 * 4.0 * W);
        assert_eq!(truth.gap, f64::INFINITY);
    }

    #[test]
    fn generated_symmetric_matrices_are_exactly_symmetric() {
        for mode in 1..=5 {
            let (a, _) = generate(&MatGenSpec::sym_pd(mode, 1e3, 10, mode as u64)).unwrap();
            assert!(SymMatrix::new(a).is_ok());
        }
    }

    #[test]
    fn rectangular_shape_and_norm() {
        let (a, truth) = generate(&MatGenSpec::rect(2, 1e3, 9, 4, 1)).unwrap();
        assert_eq!(a.shape(), (9, 4));
        let fro2: f64 = truth.spectrum.iter().map(|x| x * x).sum();
        assert!((a.frobenius_norm().powi(2) - fro2).abs() <= 100.0 * W * fro2);
    }

    #[test]
    fn spec_strings() {
        let s: MatGenSpec = "sympd:4:1e3:64".parse().unwrap();
        assert_eq!(s, MatGenSpec::sym_pd(4, 1e3, 64, DEFAULT_SEED));
        let s: MatGenSpec = "rect:3:1e6:128:256".parse().unwrap();
        assert_eq!(s, MatGenSpec::rect(3, 1e6, 256, 128, DEFAULT_SEED));
        let s: MatGenSpec = "symmult:2:10:16".parse().unwrap();
        assert_eq!(s.multiplicity, 4);
        let s: MatGenSpec = "symmult:2:10:16::2:7".parse().unwrap();
        assert_eq!(s, MatGenSpec::sym_mult(2, 10.0, 16, 2, 7));
        let round: MatGenSpec = s.to_string().parse().unwrap();
        assert_eq!(round, s);

        for bad in [
            "sympd:4:1e3",
            "cube:4:1e3:8",
            "sympd:6:1e3:8",
            "sympd:4:0.5:8",
            "rect:4:10:8:4",
            "symmult:1:10:10:10:4",
            "sympd:1:10:8:9",
        ] {
            assert!(bad.parse::<MatGenSpec>().is_err(), "{bad}");
        }
    }
}
