use qutrit_lindblad::evolution::{
    asymptotic_isotropic_negativity, asymptotic_negativity_pure, asymptotic_state_max_interference,
    detect_steady_state,
};
use qutrit_lindblad::lindblad::{generator_system_ii, Atoms, SystemIIParams};
use qutrit_lindblad::states::{PureStateParams, StateSpec};
use qutrit_lindblad::{evolve_rk4, negativity};
use serde::Serialize;

use super::negativity::{verdict, Verdict};
use super::{write_json, Outcome};
use crate::config::{Format, RunConfig, DEFAULT_ASYMPTOTE_T_END, STEADY_TOL, STEADY_WINDOW};
use crate::error::CliError;

#[derive(Serialize)]
struct Element {
    label: String,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct Numeric {
    t_end: f64,
    dt: f64,
    max_deviation: f64,
    final_negativity: f64,
    steady_time: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    state: String,
    negativity: f64,
    closed_form: Option<f64>,
    verdict: Verdict,
    elements: Vec<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<Numeric>,
}

fn closed_form(spec: &StateSpec) -> Option<f64> {
    match spec {
        StateSpec::Pure(p) => Some(asymptotic_negativity_pure(*p)),
        StateSpec::PsiMax => Some(asymptotic_negativity_pure(PureStateParams::maximal())),
        StateSpec::Isotropic(p) => Some(asymptotic_isotropic_negativity(*p)),
        StateSpec::File(_) => None,
    }
}

/// Long-time limit under maximal interference (`γu = 0`), optionally checked
/// against a long RK4 run.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.state_spec()?;
    let rho0 = spec.build()?;
    let limit = asymptotic_state_max_interference(&rho0)?;
    let n = negativity(&limit)?;
    let mut elements = Vec::new();
    for i in 1..=9 {
        for j in i..=9 {
            let z = limit.element(i, j);
            if z.norm() > 1e-15 {
                elements.push(Element {
                    label: format!("{i}{j}"),
                    re: z.re,
                    im: z.im,
                });
            }
        }
    }
    let numeric = if cfg.check_numeric {
        let settings = cfg.settings(DEFAULT_ASYMPTOTE_T_END)?;
        let gen = generator_system_ii(SystemIIParams::new(1.0, 0.0)?, Atoms::Two);
        let traj = evolve_rk4(&gen, &rho0, &settings)?;
        Some(Numeric {
            t_end: settings.t_end,
            dt: settings.dt,
            max_deviation: traj.final_state().matrix().max_abs_diff(limit.matrix()),
            final_negativity: traj.final_negativity(),
            steady_time: detect_steady_state(&traj, STEADY_WINDOW, STEADY_TOL).map(|s| s.time),
        })
    } else {
        None
    };
    let report = Report {
        state: spec.to_string(),
        negativity: n,
        closed_form: closed_form(&spec),
        verdict: verdict(&limit, n),
        elements,
        numeric,
    };
    if let Some(path) = &cfg.output {
        write_json(path, &report)?;
    }
    let text = match cfg.format() {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = format!(
                "state: {}\nasymptotic state (upper triangle, nonzero):\n",
                report.state
            );
            for e in &report.elements {
                s.push_str(&format!(
                    "  rho_{} = {:.12} {:+.12}i\n",
                    e.label, e.re, e.im
                ));
            }
            s.push_str(&format!("asymptotic negativity: {n:.12}\n"));
            if let Some(c) = report.closed_form {
                s.push_str(&format!("closed form: {c:.12}\n"));
            }
            s.push_str(&format!("verdict: {}\n", report.verdict.text));
            if let Some(m) = &report.numeric {
                s.push_str(&format!(
                    "numeric check: t_end {}, dt {}, max deviation {:.3e}, final negativity {:.12}\n",
                    m.t_end, m.dt, m.max_deviation, m.final_negativity
                ));
                match m.steady_time {
                    Some(t) => s.push_str(&format!("steady state: reached at t = {t:.4}\n")),
                    None => s.push_str("steady state: not reached\n"),
                }
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}
