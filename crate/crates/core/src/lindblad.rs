//! Dissipative generators for V-type three-level atoms.
//!
//! Two models are provided. System I has both excited levels `|1⟩, |2⟩`
//! decaying to `|3⟩` with a cross-damping rate `γ12 = β·√(γ1γ2)` coupling the
//! two channels. System II has plain amplitude damping `e → g` and `u → g`
//! with independent rates; the asymmetry of those rates plays the role of
//! the interference parameter. Two-atom generators are sums of the
//! single-atom terms lifted to `σ ⊗ 1` and `1 ⊗ σ`.
//!
//! Every term is stored as a triple `(L, M, rate)` contributing
//! `(rate/2)(2 L ρ M† − M†L ρ − ρ M†L)`; diagonal terms have `L = M`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::linalg::{kron, ComplexMatrix, LinalgError, LEVELS};
use crate::states::{parse_key_values, reject_unknown, take_key};

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("complete positivity violated: beta = {beta} must lie in [0, 1]")]
    CompletePositivity { beta: f64 },
    #[error("invalid rate: {0}")]
    InvalidRate(String),
    #[error("operator dimension {found} does not match generator dimension {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("cannot parse model spec: {0}")]
    Parse(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Transition operator `σ_jk = |j⟩⟨k|` with one-based level labels.
pub fn sigma(j: usize, k: usize) -> ComplexMatrix {
    assert!(
        (1..=LEVELS).contains(&j) && (1..=LEVELS).contains(&k),
        "level out of range"
    );
    ComplexMatrix::unit(LEVELS, j - 1, k - 1)
}

fn check_rate(name: &str, v: f64) -> Result<(), GeneratorError> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(GeneratorError::InvalidRate(format!(
            "{name} = {v} must be finite and non-negative"
        )));
    }
    Ok(())
}

/// Rates of system I: `γ1`, `γ2` and the interference parameter `β ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemIParams {
    gamma1: f64,
    gamma2: f64,
    beta: f64,
}

impl SystemIParams {
    pub fn new(gamma1: f64, gamma2: f64, beta: f64) -> Result<Self, GeneratorError> {
        check_rate("gamma1", gamma1)?;
        check_rate("gamma2", gamma2)?;
        if !(beta.is_finite() && (0.0..=1.0).contains(&beta)) {
            return Err(GeneratorError::CompletePositivity { beta });
        }
        Ok(Self {
            gamma1,
            gamma2,
            beta,
        })
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Cross-damping rate `β·√(γ1γ2)`.
    pub fn gamma12(&self) -> f64 {
        self.beta * (self.gamma1 * self.gamma2).sqrt()
    }

    /// Kossakowski matrix of the two decay channels.
    pub fn damping_matrix(&self) -> [[f64; 2]; 2] {
        let g12 = self.gamma12();
        [[self.gamma1, g12], [g12, self.gamma2]]
    }

    /// Ascending eigenvalues of [`damping_matrix`](Self::damping_matrix).
    pub fn damping_eigenvalues(&self) -> [f64; 2] {
        let tr = self.gamma1 + self.gamma2;
        let det = self.gamma1 * self.gamma2 - self.gamma12().powi(2);
        let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
        [tr / 2.0 - disc, tr / 2.0 + disc]
    }

    fn single_atom_terms(&self) -> Vec<LindbladTerm> {
        let g12 = self.gamma12();
        vec![
            LindbladTerm::diagonal(sigma(3, 1), self.gamma1),
            LindbladTerm::diagonal(sigma(3, 2), self.gamma2),
            LindbladTerm::cross(sigma(3, 1), sigma(3, 2), g12),
            LindbladTerm::cross(sigma(3, 2), sigma(3, 1), g12),
        ]
    }
}

/// Rates of system II: `γe` for `e → g` and `γu` for `u → g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemIIParams {
    gamma_e: f64,
    gamma_u: f64,
}

impl SystemIIParams {
    pub fn new(gamma_e: f64, gamma_u: f64) -> Result<Self, GeneratorError> {
        check_rate("gamma_e", gamma_e)?;
        check_rate("gamma_u", gamma_u)?;
        if gamma_e + gamma_u <= 0.0 {
            return Err(GeneratorError::InvalidRate(
                "gamma_e + gamma_u must be positive".into(),
            ));
        }
        Ok(Self { gamma_e, gamma_u })
    }

    pub fn gamma_e(&self) -> f64 {
        self.gamma_e
    }

    pub fn gamma_u(&self) -> f64 {
        self.gamma_u
    }

    /// Interference measure `(γe − γu)/(γe + γu)`; equals 1 iff `|u⟩` is
    /// metastable.
    pub fn beta_ii(&self) -> f64 {
        (self.gamma_e - self.gamma_u) / (self.gamma_e + self.gamma_u)
    }

    /// Rate ratio `γu/γe`, `None` when `γe = 0`.
    pub fn alpha(&self) -> Option<f64> {
        (self.gamma_e > 0.0).then(|| self.gamma_u / self.gamma_e)
    }

    pub fn is_maximal_interference(&self) -> bool {
        self.gamma_u == 0.0
    }

    fn single_atom_terms(&self) -> Vec<LindbladTerm> {
        vec![
            LindbladTerm::diagonal(sigma(3, 1), self.gamma_e),
            LindbladTerm::diagonal(sigma(3, 2), self.gamma_u),
        ]
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Atoms {
    One,
    Two,
}

impl Atoms {
    pub fn dim(self) -> usize {
        match self {
            Self::One => LEVELS,
            Self::Two => LEVELS * LEVELS,
        }
    }

    pub fn count(self) -> usize {
        match self {
            Self::One => 1,
            Self::Two => 2,
        }
    }
}

impl TryFrom<usize> for Atoms {
    type Error = GeneratorError;

    fn try_from(n: usize) -> Result<Self, GeneratorError> {
        match n {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            _ => Err(GeneratorError::Parse(format!(
                "atoms must be 1 or 2, got {n}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    SystemI(SystemIParams),
    SystemII(SystemIIParams),
}

impl Model {
    /// Largest single-channel decay rate, the natural time unit.
    pub fn max_rate(&self) -> f64 {
        match self {
            Self::SystemI(p) => p.gamma1.max(p.gamma2),
            Self::SystemII(p) => p.gamma_e.max(p.gamma_u),
        }
    }

    pub fn generator(&self, atoms: Atoms) -> LindbladGenerator {
        match self {
            Self::SystemI(p) => generator_system_i(*p, atoms),
            Self::SystemII(p) => generator_system_ii(*p, atoms),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SystemI(p) => write!(f, "sysI:g1={},g2={},beta={}", p.gamma1, p.gamma2, p.beta),
            Self::SystemII(p) => write!(f, "sysII:ge={},gu={}", p.gamma_e, p.gamma_u),
        }
    }
}

/// A parsed model string: `sysI:g1=..,g2=..,beta=..` or `sysII:ge=..,gu=..`,
/// optionally carrying `atoms=1|2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelSpec {
    pub model: Model,
    pub atoms: Option<Atoms>,
}

impl FromStr for ModelSpec {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, GeneratorError> {
        let s = s.trim();
        let parse = |msg: String| GeneratorError::Parse(format!("{s}: {msg}"));
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| parse("expected `sysI:` or `sysII:`".into()))?;
        let kv = parse_key_values(body).map_err(parse)?;
        let atoms = match kv.iter().find(|(k, _)| k == "atoms") {
            Some((_, n)) if n.fract() == 0.0 && *n >= 0.0 => Some(Atoms::try_from(*n as usize)?),
            Some((_, n)) => return Err(parse(format!("atoms must be 1 or 2, got {n}"))),
            None => None,
        };
        let model = match kind {
            "sysI" => {
                reject_unknown(&kv, &["g1", "g2", "beta", "atoms"]).map_err(parse)?;
                Model::SystemI(SystemIParams::new(
                    take_key(&kv, "g1").map_err(parse)?,
                    take_key(&kv, "g2").map_err(parse)?,
                    take_key(&kv, "beta").map_err(parse)?,
                )?)
            }
            "sysII" => {
                reject_unknown(&kv, &["ge", "gu", "atoms"]).map_err(parse)?;
                Model::SystemII(SystemIIParams::new(
                    take_key(&kv, "ge").map_err(parse)?,
                    take_key(&kv, "gu").map_err(parse)?,
                )?)
            }
            _ => return Err(parse(format!("unknown model `{kind}`"))),
        };
        Ok(Self { model, atoms })
    }
}

/// One dissipative contribution `(rate/2)(2 L ρ M† − M†L ρ − ρ M†L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LindbladTerm {
    pub jump: ComplexMatrix,
    pub partner: ComplexMatrix,
    pub rate: f64,
}

impl LindbladTerm {
    pub fn diagonal(jump: ComplexMatrix, rate: f64) -> Self {
        Self {
            partner: jump.clone(),
            jump,
            rate,
        }
    }

    pub fn cross(jump: ComplexMatrix, partner: ComplexMatrix, rate: f64) -> Self {
        Self {
            jump,
            partner,
            rate,
        }
    }

    fn lift(&self, left: &ComplexMatrix, right: &ComplexMatrix) -> Self {
        let lift = |m: &ComplexMatrix| {
            let inner = kron(left, m).expect("small operands");
            kron(&inner, right).expect("small operands")
        };
        Self {
            jump: lift(&self.jump),
            partner: lift(&self.partner),
            rate: self.rate,
        }
    }
}

type Sparse = Vec<(usize, usize, C64)>;

fn nonzeros(m: &ComplexMatrix) -> Sparse {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            if z != C64::new(0.0, 0.0) {
                out.push((i, j, z));
            }
        }
    }
    out
}

/// Sparse kernel for `apply`: `ρ ↦ Gρ + ρG† + Σ r·L ρ M†` with
/// `G = −iH − ½ Σ r·M†L`.
#[derive(Clone, Debug)]
struct Kernel {
    drift: Sparse,
    jumps: Vec<(Sparse, Sparse)>,
}

impl Kernel {
    fn compile(dim: usize, terms: &[LindbladTerm], hamiltonian: Option<&ComplexMatrix>) -> Self {
        let mut drift = match hamiltonian {
            Some(h) => h.scale(C64::new(0.0, -1.0)),
            None => ComplexMatrix::zeros(dim, dim),
        };
        let mut jumps = Vec::new();
        for t in terms.iter().filter(|t| t.rate != 0.0) {
            let m_adj = t.partner.adjoint();
            let anti = &m_adj * &t.jump;
            drift = &drift - &anti.scale_real(0.5 * t.rate);
            let jump = nonzeros(&t.jump.scale_real(t.rate));
            jumps.push((jump, nonzeros(&m_adj)));
        }
        Self {
            drift: nonzeros(&drift),
            jumps,
        }
    }

    fn apply_into(&self, rho: &ComplexMatrix, out: &mut ComplexMatrix) {
        let n = rho.rows();
        for z in out.as_mut_slice() {
            *z = C64::new(0.0, 0.0);
        }
        for &(i, k, g) in &self.drift {
            for j in 0..n {
                out[(i, j)] += g * rho[(k, j)];
                // (ρ G†)_{j i} = Σ_k ρ_{j k} conj(G_{i k})
                out[(j, i)] += rho[(j, k)] * g.conj();
            }
        }
        for (jump, partner_adj) in &self.jumps {
            for &(i, k, l) in jump {
                for &(m, j, b) in partner_adj {
                    out[(i, j)] += l * rho[(k, m)] * b;
                }
            }
        }
    }
}

/// Generator of `dρ/dt = −i[H, ρ] + Σ terms`.
#[derive(Clone, Debug)]
pub struct LindbladGenerator {
    dim: usize,
    terms: Vec<LindbladTerm>,
    hamiltonian: Option<ComplexMatrix>,
    kernel: Kernel,
}

impl LindbladGenerator {
    pub fn from_terms(dim: usize, terms: Vec<LindbladTerm>) -> Result<Self, GeneratorError> {
        for t in &terms {
            for m in [&t.jump, &t.partner] {
                if m.shape() != (dim, dim) {
                    return Err(GeneratorError::Dimension {
                        expected: dim,
                        found: m.rows(),
                    });
                }
            }
            if !t.rate.is_finite() {
                return Err(GeneratorError::InvalidRate(format!(
                    "rate {} is not finite",
                    t.rate
                )));
            }
        }
        let kernel = Kernel::compile(dim, &terms, None);
        Ok(Self {
            dim,
            terms,
            hamiltonian: None,
            kernel,
        })
    }

    /// Adds a Hamiltonian, which must be real diagonal.
    pub fn with_hamiltonian(mut self, h: ComplexMatrix) -> Result<Self, GeneratorError> {
        if h.shape() != (self.dim, self.dim) {
            return Err(GeneratorError::Dimension {
                expected: self.dim,
                found: h.rows(),
            });
        }
        let off_diagonal = (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .any(|(i, j)| (i != j && h[(i, j)].norm() != 0.0) || (i == j && h[(i, i)].im != 0.0));
        if off_diagonal || !h.is_finite() {
            return Err(GeneratorError::InvalidRate(
                "Hamiltonian must be real diagonal".into(),
            ));
        }
        self.kernel = Kernel::compile(self.dim, &self.terms, Some(&h));
        self.hamiltonian = Some(h);
        Ok(self)
    }

    /// Adds `H = diag(ω1, ω2, 0)` on every atom.
    pub fn with_level_shifts(self, omega1: f64, omega2: f64) -> Result<Self, GeneratorError> {
        let h1 = ComplexMatrix::from_real_diagonal(&[omega1, omega2, 0.0]);
        let h = if self.dim == LEVELS {
            h1
        } else {
            let id = ComplexMatrix::identity(LEVELS);
            &kron(&h1, &id)? + &kron(&id, &h1)?
        };
        self.with_hamiltonian(h)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[LindbladTerm] {
        &self.terms
    }

    pub fn hamiltonian(&self) -> Option<&ComplexMatrix> {
        self.hamiltonian.as_ref()
    }

    /// `dρ/dt` at `ρ`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix, GeneratorError> {
        if rho.shape() != (self.dim, self.dim) {
            return Err(GeneratorError::Dimension {
                expected: self.dim,
                found: rho.rows(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        self.kernel.apply_into(rho, &mut out);
        Ok(out)
    }

    /// Same as [`apply`](Self::apply) writing into `out`; both must be
    /// `dim × dim`.
    pub(crate) fn apply_into(&self, rho: &ComplexMatrix, out: &mut ComplexMatrix) {
        debug_assert_eq!(rho.shape(), (self.dim, self.dim));
        self.kernel.apply_into(rho, out);
    }

    /// Reference evaluation of the generator straight from its definition,
    /// using dense products.
    pub fn apply_dense(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix, GeneratorError> {
        if rho.shape() != (self.dim, self.dim) {
            return Err(GeneratorError::Dimension {
                expected: self.dim,
                found: rho.rows(),
            });
        }
        let mut out = match &self.hamiltonian {
            Some(h) => h.commutator(rho).scale(C64::new(0.0, -1.0)),
            None => ComplexMatrix::zeros(self.dim, self.dim),
        };
        for t in &self.terms {
            let m_adj = t.partner.adjoint();
            let anti = &m_adj * &t.jump;
            let sandwich = &(&t.jump * rho) * &m_adj;
            let part = &(&sandwich.scale_real(2.0) - &(&anti * rho)) - &(rho * &anti);
            out = &out + &part.scale_real(t.rate / 2.0);
        }
        Ok(out)
    }

    /// Matrix `S` with `S·vec(ρ) = vec(apply(ρ))` for column-stacking `vec`.
    pub fn superoperator_matrix(&self) -> ComplexMatrix {
        let n = self.dim;
        let id = ComplexMatrix::identity(n);
        let mut s = ComplexMatrix::zeros(n * n, n * n);
        let mut drift = match &self.hamiltonian {
            Some(h) => h.scale(C64::new(0.0, -1.0)),
            None => ComplexMatrix::zeros(n, n),
        };
        for t in &self.terms {
            let m_adj = t.partner.adjoint();
            drift = &drift - &(&m_adj * &t.jump).scale_real(0.5 * t.rate);
            // vec(L ρ M†) = (conj(M) ⊗ L) vec(ρ)
            let sandwich = kron(&t.partner.conj(), &t.jump).expect("generator sized");
            s = &s + &sandwich.scale_real(t.rate);
        }
        // vec(Gρ + ρG†) = (1 ⊗ G + conj(G) ⊗ 1) vec(ρ)
        s = &s + &kron(&id, &drift).expect("generator sized");
        s = &s + &kron(&drift.conj(), &id).expect("generator sized");
        s
    }
}

/// Four-term system I dissipator for one atom, or its eight-term lift to two
/// independent atoms.
pub fn generator_system_i(params: SystemIParams, atoms: Atoms) -> LindbladGenerator {
    build(params.single_atom_terms(), atoms)
}

/// Amplitude damping `e → g` (rate `γe`) and `u → g` (rate `γu`), for one or
/// two independent atoms.
pub fn generator_system_ii(params: SystemIIParams, atoms: Atoms) -> LindbladGenerator {
    build(params.single_atom_terms(), atoms)
}

fn build(single: Vec<LindbladTerm>, atoms: Atoms) -> LindbladGenerator {
    let terms = match atoms {
        Atoms::One => single,
        Atoms::Two => {
            let id = ComplexMatrix::identity(LEVELS);
            let one = ComplexMatrix::identity(1);
            let on_a = single.iter().map(|t| t.lift(&one, &id));
            let on_b = single.iter().map(|t| t.lift(&id, &one));
            on_a.chain(on_b).collect()
        }
    };
    LindbladGenerator::from_terms(atoms.dim(), terms).expect("terms built at generator dimension")
}
