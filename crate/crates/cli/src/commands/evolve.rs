use std::path::PathBuf;

use qutrit_lindblad::evolution::detect_steady_state;
use qutrit_lindblad::evolve_rk4;
use serde::Serialize;

use super::{extension, initial_state, write_trajectory, Outcome};
use crate::config::{RunConfig, DEFAULT_T_END, STEADY_TOL, STEADY_WINDOW};
use crate::error::CliError;

#[derive(Serialize)]
struct Meta {
    model: String,
    atoms: usize,
    state: String,
    dt: f64,
    t_end: f64,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (model, atoms) = cfg.model()?;
    let mut gen = model.generator(atoms);
    if let Some((w1, w2)) = cfg.level_shifts()? {
        gen = gen.with_level_shifts(w1, w2)?;
    }
    let spec = cfg.state_spec()?;
    let rho0 = initial_state(spec.build()?, atoms)?;
    let settings = cfg.settings(DEFAULT_T_END)?;
    let elements = cfg.elements(atoms.dim())?;
    let traj = evolve_rk4(&gen, &rho0, &settings)?;

    let format = cfg.format();
    let path = cfg
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("trajectory.{}", extension(format))));
    let meta = Meta {
        model: model.to_string(),
        atoms: atoms.count(),
        state: spec.to_string(),
        dt: settings.dt,
        t_end: settings.t_end,
    };
    write_trajectory(&path, &traj, &elements, format, &meta)?;

    let mut report = format!(
        "model: {model} ({} atom(s)), state: {spec}\n",
        atoms.count()
    );
    report.push_str(&format!(
        "wrote {} samples to {}\n",
        traj.len(),
        path.display()
    ));
    let n = traj.final_negativity();
    if n.is_finite() {
        report.push_str(&format!("final negativity: {n:.10}\n"));
    } else {
        report.push_str("final negativity: n/a (single atom)\n");
    }
    match detect_steady_state(&traj, STEADY_WINDOW, STEADY_TOL) {
        Some(s) if s.negativity.is_finite() => report.push_str(&format!(
            "steady state: reached at t = {:.4} (negativity {:.10})\n",
            s.time, s.negativity
        )),
        Some(s) => report.push_str(&format!("steady state: reached at t = {:.4}\n", s.time)),
        None => report.push_str(&format!(
            "steady state: not reached (window {STEADY_WINDOW}, tol {STEADY_TOL:e}, t_end {})\n",
            settings.t_end
        )),
    }
    Ok(Outcome::ok(report))
}
