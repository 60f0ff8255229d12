//! Two-qutrit states: the pure family `Ψ_{θ,φ}`, the isotropic mixtures `W`,
//! validation, and the negativity functional.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::linalg::{
    hermitian_eigenvalues, kron, partial_trace_a, partial_trace_b, partial_transpose_a, BasisIndex,
    ComplexMatrix, ComplexVector, LinalgError, DEFAULT_HERMITIAN_TOL, LEVELS, PAIR_DIM,
};

/// Tolerance on hermiticity, trace and positivity of a [`DensityMatrix`].
pub const STATE_TOL: f64 = 1e-9;

/// Eigenvalues of `ρ^{T_A}` in `(−NEGATIVITY_CLAMP, 0)` count as zero.
pub const NEGATIVITY_CLAMP: f64 = 1e-10;

const ANGLE_SLACK: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a valid density matrix: {0}")]
    Invalid(StateDiagnostics),
    #[error("expected a {expected}x{expected} matrix, found {found:?}")]
    Dimension {
        expected: usize,
        found: (usize, usize),
    },
    #[error(
        "negativity routes disagree: trace norm {trace_norm:e} vs negative sum {negative_sum:e}"
    )]
    NegativityMismatch { trace_norm: f64, negative_sum: f64 },
    #[error("cannot parse state spec: {0}")]
    Parse(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Measured defects of a candidate density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateDiagnostics {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub passed: bool,
}

impl fmt::Display for StateDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hermiticity defect {:e}, trace defect {:e}, min eigenvalue {:e}",
            self.hermiticity_defect, self.trace_defect, self.min_eigenvalue
        )
    }
}

/// Report hermiticity defect, trace defect and minimal eigenvalue of `m`,
/// passing when all three are within [`STATE_TOL`].
///
/// The minimal eigenvalue is taken from the Hermitian part, so it is still
/// reported when the hermiticity check fails.
pub fn validate_state(m: &ComplexMatrix) -> StateDiagnostics {
    if !m.is_square() || !m.is_finite() {
        return StateDiagnostics {
            hermiticity_defect: f64::INFINITY,
            trace_defect: f64::INFINITY,
            min_eigenvalue: f64::NEG_INFINITY,
            passed: false,
        };
    }
    let hermiticity_defect = m.hermiticity_defect();
    let trace_defect = (m.trace() - C64::new(1.0, 0.0)).norm();
    let min_eigenvalue = hermitian_eigenvalues(&m.hermitian_part(), f64::INFINITY)
        .map(|v| v[0])
        .unwrap_or(f64::NEG_INFINITY);
    let passed = hermiticity_defect <= STATE_TOL
        && trace_defect <= STATE_TOL
        && min_eigenvalue >= -STATE_TOL;
    StateDiagnostics {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        passed,
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix on `C³` or `C³⊗C³`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates `m` and stores its Hermitian part.
    pub fn new(m: ComplexMatrix) -> Result<Self, StateError> {
        let n = m.rows();
        if !m.is_square() || (n != LEVELS && n != PAIR_DIM) {
            return Err(StateError::Dimension {
                expected: PAIR_DIM,
                found: m.shape(),
            });
        }
        let diag = validate_state(&m);
        if !diag.passed {
            return Err(StateError::Invalid(diag));
        }
        Ok(Self(m.hermitian_part()))
    }

    /// `|ψ⟩⟨ψ|` after normalizing `ψ`.
    pub fn from_pure(psi: &ComplexVector) -> Result<Self, StateError> {
        let norm = psi.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(StateError::InvalidParameter(
                "state vector has zero norm".into(),
            ));
        }
        let unit = ComplexVector(psi.0.iter().map(|c| c / norm).collect());
        Self::new(unit.projector())
    }

    /// Wraps a matrix the caller has already validated.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn diagnostics(&self) -> StateDiagnostics {
        validate_state(&self.0)
    }

    /// `ρ_ij` with one-based product-basis labels, as in `ρ_15`.
    pub fn element(&self, i: usize, j: usize) -> C64 {
        self.0[(i - 1, j - 1)]
    }

    /// Whether the state equals the product of its marginals within `tol`.
    pub fn is_product(&self, tol: f64) -> bool {
        if self.dim() != PAIR_DIM {
            return true;
        }
        let a = partial_trace_b(&self.0).expect("9x9");
        let b = partial_trace_a(&self.0).expect("9x9");
        kron(&a, &b).expect("3x3 factors").max_abs_diff(&self.0) <= tol
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Angles of `Ψ_{θ,φ} = cosθ sinφ |11⟩ + sinθ sinφ |22⟩ + cosφ |33⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureStateParams {
    theta: f64,
    phi: f64,
}

impl PureStateParams {
    pub fn new(theta: f64, phi: f64) -> Result<Self, StateError> {
        for (name, v) in [("theta", theta), ("phi", phi)] {
            if !(v.is_finite() && (-ANGLE_SLACK..=FRAC_PI_2 + ANGLE_SLACK).contains(&v)) {
                return Err(StateError::InvalidParameter(format!(
                    "{name} = {v} outside [0, pi/2]"
                )));
            }
        }
        Ok(Self {
            theta: theta.clamp(0.0, FRAC_PI_2),
            phi: phi.clamp(0.0, FRAC_PI_2),
        })
    }

    /// Angles giving the maximally entangled `Ψ_max`.
    pub fn maximal() -> Self {
        Self {
            theta: PI / 4.0,
            phi: (1.0 / 3f64.sqrt()).acos(),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Schmidt coefficients on `|11⟩, |22⟩, |33⟩`.
    pub fn amplitudes(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [ct * sp, st * sp, cp]
    }
}

/// Weight `p` of `W = (1−p)·1/9 + p·|Ψ_max⟩⟨Ψ_max|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsotropicParams {
    p: f64,
}

impl IsotropicParams {
    pub fn new(p: f64) -> Result<Self, StateError> {
        if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
            return Err(StateError::InvalidParameter(format!(
                "p = {p} outside [0, 1]"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

fn diagonal_pair_vector(amps: [f64; 3]) -> ComplexVector {
    let mut v = vec![C64::new(0.0, 0.0); PAIR_DIM];
    for (k, a) in amps.into_iter().enumerate() {
        v[BasisIndex::new(k, k).flat()] = C64::new(a, 0.0);
    }
    ComplexVector(v)
}

pub fn pure_state(params: PureStateParams) -> ComplexVector {
    diagonal_pair_vector(params.amplitudes())
}

/// `(|11⟩ + |22⟩ + |33⟩)/√3`.
pub fn psi_max() -> ComplexVector {
    diagonal_pair_vector([1.0 / 3f64.sqrt(); 3])
}

pub fn psi_max_state() -> DensityMatrix {
    DensityMatrix::from_pure(&psi_max()).expect("unit vector")
}

/// Both atoms in the ground level, `|33⟩⟨33|`.
pub fn ground_state() -> DensityMatrix {
    DensityMatrix(ComplexMatrix::unit(PAIR_DIM, PAIR_DIM - 1, PAIR_DIM - 1))
}

pub fn maximally_mixed() -> DensityMatrix {
    DensityMatrix(ComplexMatrix::identity(PAIR_DIM).scale_real(1.0 / PAIR_DIM as f64))
}

pub fn pure_density(params: PureStateParams) -> DensityMatrix {
    DensityMatrix::from_pure(&pure_state(params)).expect("unit vector")
}

pub fn isotropic_state(params: IsotropicParams) -> DensityMatrix {
    let p = params.p;
    let mixed = ComplexMatrix::identity(PAIR_DIM).scale_real((1.0 - p) / PAIR_DIM as f64);
    let proj = psi_max().projector().scale_real(p);
    DensityMatrix::new(&mixed + &proj).expect("isotropic states are valid")
}

/// Both negativity routes for a 9×9 Hermitian matrix: `(Σ|λ| − Σλ)/2` and
/// `Σ|λ<0|`, over the clamped spectrum of `ρ^{T_A}`.
pub fn negativity_routes(rho: &ComplexMatrix) -> Result<(f64, f64), StateError> {
    if rho.shape() != (PAIR_DIM, PAIR_DIM) {
        return Err(StateError::Dimension {
            expected: PAIR_DIM,
            found: rho.shape(),
        });
    }
    let pt = partial_transpose_a(rho)?;
    let spectrum: Vec<f64> = hermitian_eigenvalues(&pt, DEFAULT_HERMITIAN_TOL)?
        .into_iter()
        .map(|l| {
            if l > -NEGATIVITY_CLAMP && l < 0.0 {
                0.0
            } else {
                l
            }
        })
        .collect();
    let trace_norm: f64 = spectrum.iter().map(|l| l.abs()).sum();
    let trace: f64 = spectrum.iter().sum();
    let negative_sum = spectrum
        .iter()
        .filter(|&&l| l < 0.0)
        .fold(0.0, |acc, l| acc - l);
    Ok(((trace_norm - trace) / 2.0, negative_sum))
}

/// `N(ρ) = (‖ρ^{T_A}‖₁ − 1)/2`, cross-checked against the sum of negative
/// eigenvalues of the partial transpose.
pub fn negativity(rho: &DensityMatrix) -> Result<f64, StateError> {
    let (trace_norm, negative_sum) = negativity_routes(rho.matrix())?;
    if (trace_norm - negative_sum).abs() > 1e-12 {
        return Err(StateError::NegativityMismatch {
            trace_norm,
            negative_sum,
        });
    }
    Ok(negative_sum)
}

pub fn negativity_pure_closed_form(params: PureStateParams) -> f64 {
    let (st, ct) = params.theta.sin_cos();
    let (sp, cp) = params.phi.sin_cos();
    ct * sp * cp + ct * st * sp * sp + st * cp * sp
}

pub fn negativity_isotropic_closed_form(params: IsotropicParams) -> f64 {
    if params.p <= 0.25 {
        0.0
    } else {
        (4.0 * params.p - 1.0) / 3.0
    }
}

/// Initial-state specification as accepted on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Pure(PureStateParams),
    PsiMax,
    Isotropic(IsotropicParams),
    File(PathBuf),
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityMatrix, StateError> {
        match self {
            Self::Pure(p) => Ok(pure_density(*p)),
            Self::PsiMax => Ok(psi_max_state()),
            Self::Isotropic(p) => Ok(isotropic_state(*p)),
            Self::File(path) => read_state_csv(path),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pure(p) => write!(f, "pure:theta={},phi={}", p.theta, p.phi),
            Self::PsiMax => write!(f, "psimax"),
            Self::Isotropic(p) => write!(f, "isotropic:p={}", p.p),
            Self::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

/// Parses a real number, also accepting `pi`, `pi/N`, `K*pi` and `K*pi/N`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let lower = s.to_ascii_lowercase();
    let (num, den) = match lower.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (lower.as_str(), None),
    };
    let numerator = if num == "pi" {
        PI
    } else if let Some(k) = num.strip_suffix("*pi").or_else(|| num.strip_suffix("pi")) {
        k.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number `{s}`"))?
            * PI
    } else {
        return Err(format!("bad number `{s}`"));
    };
    match den {
        Some(d) => {
            let d: f64 = d.parse().map_err(|_| format!("bad number `{s}`"))?;
            Ok(numerator / d)
        }
        None => Ok(numerator),
    }
}

/// Splits `k1=v1,k2=v2` into pairs.
pub fn parse_key_values(body: &str) -> Result<Vec<(String, f64)>, String> {
    body.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{kv}`"))?;
            Ok((k.trim().to_string(), parse_real(v)?))
        })
        .collect()
}

pub fn take_key(pairs: &[(String, f64)], key: &str) -> Result<f64, String> {
    pairs
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| format!("missing `{key}`"))
}

pub fn reject_unknown(pairs: &[(String, f64)], allowed: &[&str]) -> Result<(), String> {
    match pairs.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(format!("unknown key `{k}`")),
        None => Ok(()),
    }
}

impl FromStr for StateSpec {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, StateError> {
        let s = s.trim();
        let parse = |msg: String| StateError::Parse(format!("{s}: {msg}"));
        if s == "psimax" {
            return Ok(Self::PsiMax);
        }
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| parse("unknown state kind".into()))?;
        match kind {
            "file" => Ok(Self::File(PathBuf::from(body))),
            "pure" => {
                let kv = parse_key_values(body).map_err(parse)?;
                reject_unknown(&kv, &["theta", "phi"]).map_err(parse)?;
                let theta = take_key(&kv, "theta").map_err(parse)?;
                let phi = take_key(&kv, "phi").map_err(parse)?;
                Ok(Self::Pure(PureStateParams::new(theta, phi)?))
            }
            "isotropic" => {
                let kv = parse_key_values(body).map_err(parse)?;
                reject_unknown(&kv, &["p"]).map_err(parse)?;
                Ok(Self::Isotropic(IsotropicParams::new(
                    take_key(&kv, "p").map_err(parse)?,
                )?))
            }
            _ => Err(parse("unknown state kind".into())),
        }
    }
}

/// Parses `re+imj`, `re-imj`, `imj` or a bare real.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim();
    let bad = || format!("bad complex number `{s}`");
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
        return t
            .parse::<f64>()
            .map(|re| C64::new(re, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().map_err(|_| bad())?;
            let im_str = &body[k..];
            let im: f64 = match im_str {
                "+" => 1.0,
                "-" => -1.0,
                _ => im_str.parse().map_err(|_| bad())?,
            };
            Ok(C64::new(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => body.parse().map_err(|_| bad())?,
            };
            Ok(C64::new(0.0, im))
        }
    }
}

pub fn format_complex(z: C64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}j", z.re, -z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

/// Parses a 9×9 matrix written as comma-separated `re+imj` cells, one row per
/// line. Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix_csv(text: &str) -> Result<ComplexMatrix, StateError> {
    let mut data = Vec::with_capacity(PAIR_DIM * PAIR_DIM);
    let mut rows = 0;
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != PAIR_DIM {
            return Err(StateError::Parse(format!(
                "row {} has {} columns, expected {PAIR_DIM}",
                rows + 1,
                cells.len()
            )));
        }
        for c in cells {
            data.push(parse_complex(c).map_err(StateError::Parse)?);
        }
        rows += 1;
    }
    if rows != PAIR_DIM {
        return Err(StateError::Parse(format!(
            "found {rows} rows, expected {PAIR_DIM}"
        )));
    }
    Ok(ComplexMatrix::from_vec(PAIR_DIM, PAIR_DIM, data)?)
}

pub fn matrix_to_csv(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn read_state_csv(path: &Path) -> Result<DensityMatrix, StateError> {
    let text = std::fs::read_to_string(path).map_err(|source| StateError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    DensityMatrix::new(parse_matrix_csv(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn maximal_angles_give_psi_max() {
        let v = pure_state(PureStateParams::maximal());
        for (a, b) in v.0.iter().zip(&psi_max().0) {
            assert!((a - b).norm() < 1e-15);
        }
        assert_close(v.norm(), 1.0, 1e-12);
    }

    #[test]
    fn phi_zero_is_ground() {
        let v = pure_state(PureStateParams::new(0.7, 0.0).unwrap());
        assert_eq!(v.0[8], C64::new(1.0, 0.0));
        assert!(v.0[..8].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn theta_half_pi_phi_quarter_pi() {
        let v = pure_state(PureStateParams::new(FRAC_PI_2, PI / 4.0).unwrap());
        let s = 1.0 / 2f64.sqrt();
        assert!(v.0[0].norm() < 1e-16);
        assert_close(v.0[4].re, s, 1e-15);
        assert_close(v.0[8].re, s, 1e-15);
    }

    #[test]
    fn out_of_range_angles_rejected() {
        assert!(PureStateParams::new(-0.1, 0.2).is_err());
        assert!(PureStateParams::new(0.1, 2.0).is_err());
        assert!(IsotropicParams::new(1.01).is_err());
    }

    #[test]
    fn isotropic_endpoints_and_three_quarters() {
        let w0 = isotropic_state(IsotropicParams::new(0.0).unwrap());
        assert!(w0.matrix().max_abs_diff(maximally_mixed().matrix()) < 1e-16);
        let w1 = isotropic_state(IsotropicParams::new(1.0).unwrap());
        assert!(w1.matrix().max_abs_diff(psi_max_state().matrix()) < 1e-16);

        let w = isotropic_state(IsotropicParams::new(0.75).unwrap());
        for i in 1..=9 {
            let expected = if [1, 5, 9].contains(&i) {
                10.0 / 36.0
            } else {
                1.0 / 36.0
            };
            assert_close(w.element(i, i).re, expected, 1e-15);
        }
        for (i, j) in [(1, 5), (1, 9), (5, 9)] {
            assert_close(w.element(i, j).re, 0.25, 1e-15);
            assert_close(w.element(j, i).re, 0.25, 1e-15);
        }
    }

    #[test]
    fn negativity_reference_values() {
        assert_close(negativity(&psi_max_state()).unwrap(), 1.0, 1e-12);
        assert_eq!(negativity(&maximally_mixed()).unwrap(), 0.0);
        let w = isotropic_state(IsotropicParams::new(0.75).unwrap());
        assert_close(negativity(&w).unwrap(), 2.0 / 3.0, 1e-12);
    }

    #[test]
    fn pure_closed_form_reference_values() {
        assert_close(
            negativity_pure_closed_form(PureStateParams::maximal()),
            1.0,
            1e-15,
        );
        let phi = 0.4;
        assert_close(
            negativity_pure_closed_form(PureStateParams::new(0.0, phi).unwrap()),
            phi.sin() * phi.cos(),
            1e-15,
        );
        let p = PureStateParams::new(PI / 8.0, PI / 6.0).unwrap();
        assert_close(
            negativity_pure_closed_form(p),
            negativity(&pure_density(p)).unwrap(),
            1e-12,
        );
    }

    #[test]
    fn isotropic_closed_form_reference_values() {
        let n = |p| negativity_isotropic_closed_form(IsotropicParams::new(p).unwrap());
        assert_eq!(n(0.25), 0.0);
        assert_close(n(1.0), 1.0, 1e-15);
        assert_close(n(0.75), 2.0 / 3.0, 1e-15);
    }

    #[test]
    fn validate_flags_negative_eigenvalue() {
        let diag = validate_state(&ComplexMatrix::identity(9).scale_real(1.0 / 9.0));
        assert!(diag.passed);
        assert_eq!(diag.hermiticity_defect, 0.0);
        assert!(diag.trace_defect < 1e-15);

        let mut d = vec![0.0; 9];
        d[0] = 1.0;
        d[1] = -0.001;
        d[8] = 0.001;
        let diag = validate_state(&ComplexMatrix::from_real_diagonal(&d));
        assert!(!diag.passed);
        assert_close(diag.min_eigenvalue, -0.001, 1e-15);
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&d)).is_err());
    }

    #[test]
    fn spec_grammar() {
        assert_eq!("psimax".parse::<StateSpec>().unwrap(), StateSpec::PsiMax);
        let StateSpec::Pure(p) = "pure:theta=pi/8,phi=pi/6".parse::<StateSpec>().unwrap() else {
            panic!()
        };
        assert_close(p.theta(), PI / 8.0, 1e-15);
        assert_close(p.phi(), PI / 6.0, 1e-15);
        assert!(matches!(
            "isotropic:p=0.75".parse::<StateSpec>().unwrap(),
            StateSpec::Isotropic(p) if p.p() == 0.75
        ));
        assert!("isotropic:p=2".parse::<StateSpec>().is_err());
        assert!("pure:theta=0.1".parse::<StateSpec>().is_err());
        assert!("pure:theta=0.1,phi=0.2,x=1".parse::<StateSpec>().is_err());
        assert!("bell".parse::<StateSpec>().is_err());
        assert_eq!(
            "file:/tmp/x.csv".parse::<StateSpec>().unwrap(),
            StateSpec::File(PathBuf::from("/tmp/x.csv"))
        );
    }

    #[test]
    fn parse_real_pi_forms() {
        assert_close(parse_real("pi/4").unwrap(), PI / 4.0, 0.0);
        assert_close(parse_real("3*pi/8").unwrap(), 3.0 * PI / 8.0, 1e-15);
        assert_close(parse_real("2pi").unwrap(), 2.0 * PI, 0.0);
        assert_close(parse_real("1e-3").unwrap(), 1e-3, 0.0);
        assert!(parse_real("x").is_err());
    }

    #[test]
    fn complex_cells() {
        assert_eq!(parse_complex("0.5+0.25j").unwrap(), C64::new(0.5, 0.25));
        assert_eq!(
            parse_complex("-1e-3-2E-4j").unwrap(),
            C64::new(-1e-3, -2e-4)
        );
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("-2j").unwrap(), C64::new(0.0, -2.0));
        assert_eq!(parse_complex("1-j").unwrap(), C64::new(1.0, -1.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn matrix_csv_round_trip() {
        let w = isotropic_state(IsotropicParams::new(0.3).unwrap());
        let text = matrix_to_csv(w.matrix());
        assert_eq!(&parse_matrix_csv(&text).unwrap(), w.matrix());
        assert!(parse_matrix_csv("1,2\n").is_err());
    }

    #[test]
    fn product_detection() {
        assert!(ground_state().is_product(1e-12));
        assert!(!psi_max_state().is_product(1e-6));
    }
}
