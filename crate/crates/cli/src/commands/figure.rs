use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use qutrit_lindblad::evolution::Trajectory;
use qutrit_lindblad::lindblad::{Atoms, Model, SystemIIParams, SystemIParams};
use qutrit_lindblad::states::{IsotropicParams, PureStateParams, StateSpec};
use qutrit_lindblad::{evolve_rk4, IntegratorSettings};
use rayon::prelude::*;
use serde::Serialize;

use super::{extension, pool, write_json, write_trajectory, Outcome};
use crate::config::{RunConfig, DEFAULT_ASYMPTOTE_T_END, DEFAULT_T_END};
use crate::error::CliError;

pub const ALPHA_GRID: [f64; 5] = [0.0, 0.1, 0.25, 0.5, 1.0];
pub const BETA_GRID: [f64; 5] = [0.0, 0.3, 0.6, 0.9, 1.0];
pub const KAPPA_GRID: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
pub const FIGURE_GAMMA_RATIO: f64 = 0.9;

/// One negativity curve of a figure.
#[derive(Clone, Debug)]
pub struct Curve {
    pub key: &'static str,
    pub value: f64,
    pub model: Model,
    pub state: StateSpec,
}

#[derive(Clone, Debug)]
pub struct FigureSpec {
    pub title: &'static str,
    pub t_end: f64,
    pub curves: Vec<Curve>,
}

fn fig_pure() -> StateSpec {
    StateSpec::Pure(
        PureStateParams::new(std::f64::consts::PI / 8.0, std::f64::consts::PI / 6.0)
            .expect("valid angles"),
    )
}

fn fig_isotropic() -> StateSpec {
    StateSpec::Isotropic(IsotropicParams::new(0.75).expect("valid weight"))
}

pub fn figure_spec(number: u8) -> Result<FigureSpec, CliError> {
    let system_ii = |state: StateSpec| -> Result<Vec<Curve>, CliError> {
        ALPHA_GRID
            .iter()
            .map(|&alpha| {
                Ok(Curve {
                    key: "alpha",
                    value: alpha,
                    model: Model::SystemII(SystemIIParams::new(1.0, alpha)?),
                    state: state.clone(),
                })
            })
            .collect()
    };
    let system_i = |state: StateSpec| -> Result<Vec<Curve>, CliError> {
        BETA_GRID
            .iter()
            .map(|&beta| {
                Ok(Curve {
                    key: "beta",
                    value: beta,
                    model: Model::SystemI(SystemIParams::new(1.0, FIGURE_GAMMA_RATIO, beta)?),
                    state: state.clone(),
                })
            })
            .collect()
    };
    let (title, t_end, curves) = match number {
        3 => (
            "system II, initial Psi_max, alpha = gu/ge",
            DEFAULT_T_END,
            system_ii(StateSpec::PsiMax)?,
        ),
        4 => (
            "system II, initial Psi(pi/8, pi/6), alpha = gu/ge",
            DEFAULT_T_END,
            system_ii(fig_pure())?,
        ),
        5 => (
            "system II, initial W(3/4), alpha = gu/ge",
            DEFAULT_T_END,
            system_ii(fig_isotropic())?,
        ),
        6 => (
            "system I, initial Psi(pi/8, pi/6), g2/g1 = 0.9",
            DEFAULT_T_END,
            system_i(fig_pure())?,
        ),
        7 => (
            "system I, initial W(3/4), g2/g1 = 0.9",
            DEFAULT_T_END,
            system_i(fig_isotropic())?,
        ),
        8 => {
            let curves = KAPPA_GRID
                .iter()
                .map(|&kappa| {
                    Ok(Curve {
                        key: "kappa",
                        value: kappa,
                        model: Model::SystemI(SystemIParams::new(1.0, kappa, 1.0)?),
                        state: StateSpec::PsiMax,
                    })
                })
                .collect::<Result<_, CliError>>()?;
            (
                "system I at beta = 1, initial Psi_max, kappa = g2/g1",
                DEFAULT_ASYMPTOTE_T_END,
                curves,
            )
        }
        _ => {
            return Err(CliError::Parse(format!(
                "figure must be in 3..=8, got {number}"
            )))
        }
    };
    Ok(FigureSpec {
        title,
        t_end,
        curves,
    })
}

#[derive(Serialize)]
struct CurveMeta {
    file: String,
    model: String,
    state: String,
    parameters: BTreeMap<&'static str, f64>,
    dt: f64,
    t_end: f64,
}

#[derive(Serialize)]
struct Manifest<'a> {
    figure: u8,
    title: &'a str,
    time_unit: &'a str,
    curves: Vec<CurveMeta>,
}

fn run_curve(curve: &Curve, settings: &IntegratorSettings) -> Result<Trajectory, CliError> {
    let rho0 = curve.state.build()?;
    Ok(evolve_rk4(
        &curve.model.generator(Atoms::Two),
        &rho0,
        settings,
    )?)
}

/// Emits one negativity curve per grid value and a `manifest.json` that binds
/// files to parameters.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let number = cfg
        .figure
        .ok_or_else(|| CliError::Parse("missing figure number".into()))?;
    let fig = figure_spec(number)?;
    let settings = cfg.settings(fig.t_end)?;
    let dir = cfg
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("fig{number}")));
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;

    let results: Vec<Result<Trajectory, CliError>> = pool()?.install(|| {
        fig.curves
            .par_iter()
            .map(|c| run_curve(c, &settings))
            .collect()
    });

    let format = cfg.format();
    let mut report = format!("figure {number}: {}\n", fig.title);
    let mut curves = Vec::new();
    for (curve, traj) in fig.curves.iter().zip(results) {
        let traj = traj?;
        let file = format!(
            "fig{number}_{}_{}.{}",
            curve.key,
            curve.value,
            extension(format)
        );
        let meta = CurveMeta {
            file: file.clone(),
            model: curve.model.to_string(),
            state: curve.state.to_string(),
            parameters: BTreeMap::from([(curve.key, curve.value)]),
            dt: settings.dt,
            t_end: settings.t_end,
        };
        write_trajectory(&dir.join(&file), &traj, &[], format, &meta)?;
        report.push_str(&format!(
            "  {} = {}: N(0) = {:.6}, N({}) = {:.6} -> {}\n",
            curve.key,
            curve.value,
            traj.negativities[0],
            settings.t_end,
            traj.final_negativity(),
            file
        ));
        curves.push(meta);
    }
    let manifest = Manifest {
        figure: number,
        title: fig.title,
        time_unit: "1/gamma_max",
        curves,
    };
    let path: &Path = &dir.join("manifest.json");
    write_json(path, &manifest)?;
    report.push_str(&format!("manifest: {}\n", path.display()));
    Ok(Outcome::ok(report))
}
