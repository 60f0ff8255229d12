//! Time evolution of two-atom states: fixed-step RK4 on the master equation,
//! exact propagators for system II, and the maximal-interference asymptotic
//! map.

mod analytic;
mod asymptotic;
mod steady;

use std::io::{self, Write};

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, PAIR_DIM};
use crate::lindblad::{GeneratorError, LindbladGenerator};
use crate::states::{
    negativity, validate_state, DensityMatrix, StateDiagnostics, StateError, STATE_TOL,
};

pub use analytic::{
    analytic_ii_general, analytic_ii_general_matrix, analytic_ii_isotropic,
    analytic_ii_isotropic_matrix, negativity_psimax_closed_form, DIAGONAL_SUPPORT,
};
pub use asymptotic::{
    asymptotic_isotropic, asymptotic_isotropic_negativity, asymptotic_negativity_pure,
    asymptotic_state_max_interference,
};
pub use steady::{detect_steady_state, SteadyState};

#[derive(Debug, Error)]
pub enum EvolutionError {
    #[error("invalid integrator settings: {0}")]
    Settings(String),
    #[error("state dimension {state} does not match generator dimension {generator}")]
    Dimension { state: usize, generator: usize },
    #[error("physical invariant breached at t = {time}: {diagnostics}")]
    InvariantBreach {
        time: f64,
        diagnostics: StateDiagnostics,
    },
    #[error(
        "initial state is not supported on |11>, |22>, |33>: largest outside entry {max_outside:e}"
    )]
    UnsupportedInitialForm { max_outside: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
}

/// Fixed-step integrator settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorSettings {
    pub dt: f64,
    pub t_end: f64,
    /// Record every `sample_every`-th step; the final step is always kept.
    pub sample_every: usize,
    /// Step-halving error control: each step is split until a full step and
    /// two half steps agree within this tolerance (max entry modulus).
    pub adapt: Option<f64>,
    /// Bound on trace defect, hermiticity defect and negative eigenvalues
    /// checked at every sample.
    pub invariant_tol: f64,
}

impl IntegratorSettings {
    pub fn new(dt: f64, t_end: f64) -> Self {
        Self {
            dt,
            t_end,
            sample_every: 1,
            adapt: None,
            invariant_tol: STATE_TOL,
        }
    }

    pub fn sample_every(mut self, stride: usize) -> Self {
        self.sample_every = stride;
        self
    }

    pub fn adaptive(mut self, tol: f64) -> Self {
        self.adapt = Some(tol);
        self
    }

    pub fn validate(&self) -> Result<(), EvolutionError> {
        let bad = |m: &str| Err(EvolutionError::Settings(m.to_string()));
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad("dt must be positive");
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return bad("t_end must be positive");
        }
        if self.sample_every == 0 {
            return bad("sample_every must be at least 1");
        }
        if let Some(tol) = self.adapt {
            if !(tol.is_finite() && tol > 0.0) {
                return bad("adaptive tolerance must be positive");
            }
        }
        if !(self.invariant_tol.is_finite() && self.invariant_tol > 0.0) {
            return bad("invariant tolerance must be positive");
        }
        Ok(())
    }

    /// Number of steps; the last one is shortened when `t_end/dt` is not an
    /// integer.
    pub fn steps(&self) -> usize {
        let ratio = self.t_end / self.dt;
        let nearest = ratio.round();
        if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.0) {
            nearest.max(1.0) as usize
        } else {
            ratio.ceil() as usize
        }
    }
}

/// Per-sample physicality measurements, taken before re-symmetrization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleDiagnostics {
    pub trace_defect: f64,
    pub hermiticity_defect: f64,
    pub min_eigenvalue: f64,
}

/// Sampled solution of the master equation.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    /// `NaN` for single-atom runs.
    pub negativities: Vec<f64>,
    pub diagnostics: Vec<SampleDiagnostics>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &DensityMatrix {
        self.states
            .last()
            .expect("trajectories hold at least the initial sample")
    }

    pub fn final_negativity(&self) -> f64 {
        *self.negativities.last().expect("non-empty")
    }

    /// Index of the sample closest to `t`.
    pub fn index_near(&self, t: f64) -> usize {
        let mut best = 0;
        for (k, &s) in self.times.iter().enumerate() {
            if (s - t).abs() < (self.times[best] - t).abs() {
                best = k;
            }
        }
        best
    }

    /// Writes `t,negativity,trace_defect,min_eig` plus real and imaginary
    /// parts of the requested elements (one-based labels).
    pub fn write_csv<W: Write>(&self, mut w: W, elements: &[(usize, usize)]) -> io::Result<()> {
        let dim = self.states.first().map(|s| s.dim()).unwrap_or(PAIR_DIM);
        if let Some(&(i, j)) = elements
            .iter()
            .find(|&&(i, j)| i == 0 || j == 0 || i > dim || j > dim)
        {
            return Err(io::Error::new(
                io::ErrorKind::InvalidInput,
                format!("element ({i},{j}) outside 1..={dim}"),
            ));
        }
        write!(w, "t,negativity,trace_defect,min_eig")?;
        for (i, j) in elements {
            write!(w, ",elem_{i}_{j}_re,elem_{i}_{j}_im")?;
        }
        writeln!(w)?;
        for k in 0..self.len() {
            let d = &self.diagnostics[k];
            write!(
                w,
                "{},{},{:e},{:e}",
                self.times[k], self.negativities[k], d.trace_defect, d.min_eigenvalue
            )?;
            for &(i, j) in elements {
                let z = self.states[k].element(i, j);
                write!(w, ",{},{}", z.re, z.im)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

struct Rk4Workspace {
    k1: ComplexMatrix,
    k2: ComplexMatrix,
    k3: ComplexMatrix,
    k4: ComplexMatrix,
    stage: ComplexMatrix,
}

impl Rk4Workspace {
    fn new(n: usize) -> Self {
        let z = ComplexMatrix::zeros(n, n);
        Self {
            k1: z.clone(),
            k2: z.clone(),
            k3: z.clone(),
            k4: z.clone(),
            stage: z,
        }
    }
}

fn axpy_into(out: &mut ComplexMatrix, x: &ComplexMatrix, a: f64, y: &ComplexMatrix) {
    for ((o, &xv), &yv) in out
        .as_mut_slice()
        .iter_mut()
        .zip(x.as_slice())
        .zip(y.as_slice())
    {
        *o = xv + yv * a;
    }
}

/// One classical RK4 step of size `h`, in place.
fn rk4_step(gen: &LindbladGenerator, rho: &mut ComplexMatrix, h: f64, ws: &mut Rk4Workspace) {
    gen.apply_into(rho, &mut ws.k1);
    axpy_into(&mut ws.stage, rho, h / 2.0, &ws.k1);
    gen.apply_into(&ws.stage, &mut ws.k2);
    axpy_into(&mut ws.stage, rho, h / 2.0, &ws.k2);
    gen.apply_into(&ws.stage, &mut ws.k3);
    axpy_into(&mut ws.stage, rho, h, &ws.k3);
    gen.apply_into(&ws.stage, &mut ws.k4);
    let w = h / 6.0;
    for (i, r) in rho.as_mut_slice().iter_mut().enumerate() {
        let incr: C64 = ws.k1.as_slice()[i]
            + ws.k2.as_slice()[i] * 2.0
            + ws.k3.as_slice()[i] * 2.0
            + ws.k4.as_slice()[i];
        *r += incr * w;
    }
}

const MAX_HALVINGS: u32 = 30;

/// Step of size `h` refined by halving until full- and half-step results
/// agree within `tol`.
fn adaptive_step(
    gen: &LindbladGenerator,
    rho: &mut ComplexMatrix,
    h: f64,
    tol: f64,
    depth: u32,
    ws: &mut Rk4Workspace,
) {
    let mut full = rho.clone();
    rk4_step(gen, &mut full, h, ws);
    let mut half = rho.clone();
    rk4_step(gen, &mut half, h / 2.0, ws);
    rk4_step(gen, &mut half, h / 2.0, ws);
    if full.max_abs_diff(&half) <= tol || depth >= MAX_HALVINGS {
        *rho = half;
    } else {
        adaptive_step(gen, rho, h / 2.0, tol, depth + 1, ws);
        adaptive_step(gen, rho, h / 2.0, tol, depth + 1, ws);
    }
}

fn sample(
    rho: &mut ComplexMatrix,
    time: f64,
    tol: f64,
    traj: &mut Trajectory,
) -> Result<(), EvolutionError> {
    let hermiticity_defect = rho.hermiticity_defect();
    *rho = rho.hermitian_part();
    let diag = validate_state(rho);
    let diagnostics = StateDiagnostics {
        hermiticity_defect,
        ..diag
    };
    if hermiticity_defect > tol || diag.trace_defect > tol || diag.min_eigenvalue < -tol {
        return Err(EvolutionError::InvariantBreach {
            time,
            diagnostics: StateDiagnostics {
                passed: false,
                ..diagnostics
            },
        });
    }
    let state = DensityMatrix::new_unchecked(rho.clone());
    let n = if state.dim() == PAIR_DIM {
        negativity(&state)?
    } else {
        f64::NAN
    };
    traj.times.push(time);
    traj.states.push(state);
    traj.negativities.push(n);
    traj.diagnostics.push(SampleDiagnostics {
        trace_defect: diag.trace_defect,
        hermiticity_defect,
        min_eigenvalue: diag.min_eigenvalue,
    });
    Ok(())
}

/// Integrates `dρ/dt = gen(ρ)` from `rho0` with classical RK4.
///
/// Each recorded sample is re-symmetrized, checked against the settings'
/// invariant tolerance and tagged with its negativity. A breach aborts the
/// run with the offending time.
pub fn evolve_rk4(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    settings: &IntegratorSettings,
) -> Result<Trajectory, EvolutionError> {
    settings.validate()?;
    if rho0.dim() != gen.dim() {
        return Err(EvolutionError::Dimension {
            state: rho0.dim(),
            generator: gen.dim(),
        });
    }
    let steps = settings.steps();
    let capacity = steps / settings.sample_every + 2;
    let mut traj = Trajectory {
        times: Vec::with_capacity(capacity),
        states: Vec::with_capacity(capacity),
        negativities: Vec::with_capacity(capacity),
        diagnostics: Vec::with_capacity(capacity),
    };
    let mut rho = rho0.matrix().clone();
    let mut ws = Rk4Workspace::new(gen.dim());
    sample(&mut rho, 0.0, settings.invariant_tol, &mut traj)?;
    for k in 1..=steps {
        let t_prev = (k - 1) as f64 * settings.dt;
        let t = if k == steps {
            settings.t_end
        } else {
            k as f64 * settings.dt
        };
        let h = t - t_prev;
        match settings.adapt {
            Some(tol) => adaptive_step(gen, &mut rho, h, tol, 0, &mut ws),
            None => rk4_step(gen, &mut rho, h, &mut ws),
        }
        if k % settings.sample_every == 0 || k == steps {
            sample(&mut rho, t, settings.invariant_tol, &mut traj)?;
        }
    }
    Ok(traj)
}
