pub mod asymptote;
pub mod evolve;
pub mod figure;
pub mod negativity;
pub mod sweep;
pub mod validate;

use std::env;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use qutrit_lindblad::evolution::Trajectory;
use qutrit_lindblad::linalg::partial_trace_b;
use qutrit_lindblad::lindblad::Atoms;
use qutrit_lindblad::states::DensityMatrix;
use serde::Serialize;

use crate::config::Format;
use crate::error::CliError;

pub const THREADS_ENV: &str = "QUTRIT_LINDBLAD_THREADS";

/// Text for standard output plus the process exit code.
pub struct Outcome {
    pub report: String,
    pub exit: u8,
}

impl Outcome {
    pub fn ok(report: String) -> Self {
        Self { report, exit: 0 }
    }
}

/// Worker pool for independent trajectories, capped by
/// `QUTRIT_LINDBLAD_THREADS` when set.
pub fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Parse(format!("{THREADS_ENV}={v} is not a positive integer"))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Io(format!("cannot start worker pool: {e}")))
}

/// The two-atom state itself, or its reduction to atom A for one atom.
pub fn initial_state(rho: DensityMatrix, atoms: Atoms) -> Result<DensityMatrix, CliError> {
    match atoms {
        Atoms::Two => Ok(rho),
        Atoms::One => {
            let reduced =
                partial_trace_b(rho.matrix()).map_err(|e| CliError::Physics(e.to_string()))?;
            Ok(DensityMatrix::new(reduced)?)
        }
    }
}

#[derive(Serialize)]
struct SampleRecord {
    t: f64,
    negativity: Option<f64>,
    trace_defect: f64,
    hermiticity_defect: f64,
    min_eig: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    elements: Vec<ElementRecord>,
}

#[derive(Serialize)]
struct ElementRecord {
    label: String,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct TrajectoryRecord<'a, M: Serialize> {
    #[serde(flatten)]
    meta: &'a M,
    samples: Vec<SampleRecord>,
}

/// Writes a trajectory as CSV or as JSON carrying `meta` alongside the
/// samples.
pub fn write_trajectory<M: Serialize>(
    path: &Path,
    traj: &Trajectory,
    elements: &[(usize, usize)],
    format: Format,
    meta: &M,
) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        Format::Csv => traj
            .write_csv(&mut w, elements)
            .map_err(|e| CliError::io(path, e))?,
        Format::Json => {
            let samples = (0..traj.len())
                .map(|k| {
                    let d = traj.diagnostics[k];
                    let n = traj.negativities[k];
                    SampleRecord {
                        t: traj.times[k],
                        negativity: n.is_finite().then_some(n),
                        trace_defect: d.trace_defect,
                        hermiticity_defect: d.hermiticity_defect,
                        min_eig: d.min_eigenvalue,
                        elements: elements
                            .iter()
                            .map(|&(i, j)| {
                                let z = traj.states[k].element(i, j);
                                ElementRecord {
                                    label: format!("{i}{j}"),
                                    re: z.re,
                                    im: z.im,
                                }
                            })
                            .collect(),
                    }
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &TrajectoryRecord { meta, samples })?;
            writeln!(w).map_err(|e| CliError::io(path, e))?;
        }
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}
