use std::fmt::Write as _;

use qutrit_lindblad::evolution::detect_steady_state;
use qutrit_lindblad::evolve_rk4;
use qutrit_lindblad::states::parse_real;
use rayon::prelude::*;
use serde::Serialize;

use super::{initial_state, pool, write_json, Outcome};
use crate::config::{Format, RunConfig, DEFAULT_T_END, STEADY_TOL, STEADY_WINDOW};
use crate::error::CliError;

const STATE_KEYS: [&str; 3] = ["theta", "phi", "p"];

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub model: String,
    pub state: String,
    pub final_negativity: f64,
    pub steady_time: Option<f64>,
}

/// Splits `key=v1,v2,...`.
pub fn parse_vary(text: &str) -> Result<(String, Vec<f64>), CliError> {
    let bad = |m: String| CliError::Parse(format!("--vary {text}: {m}"));
    let (key, values) = text
        .split_once('=')
        .ok_or_else(|| bad("expected key=v1,v2,...".into()))?;
    let values = values
        .split(',')
        .map(parse_real)
        .collect::<Result<Vec<_>, _>>()
        .map_err(bad)?;
    if values.is_empty() {
        return Err(bad("no values".into()));
    }
    Ok((key.trim().to_string(), values))
}

/// Sets `key=value` in a `kind:k=v,...` spec string, appending when absent.
pub fn with_key(spec: &str, key: &str, value: f64) -> Result<String, CliError> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Parse(format!("cannot vary `{key}` in `{spec}`")))?;
    let mut parts: Vec<String> = body
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::to_string)
        .collect();
    let setting = format!("{key}={value}");
    match parts
        .iter_mut()
        .find(|p| p.split_once('=').is_some_and(|(k, _)| k.trim() == key))
    {
        Some(p) => *p = setting,
        None => parts.push(setting),
    }
    Ok(format!("{kind}:{}", parts.join(",")))
}

fn run_one(cfg: &RunConfig, key: &str, value: f64) -> Result<SweepRow, CliError> {
    let mut cfg = cfg.clone();
    if STATE_KEYS.contains(&key) {
        let state = cfg
            .state
            .as_deref()
            .ok_or_else(|| CliError::Parse("missing --state".into()))?;
        cfg.state = Some(with_key(state, key, value)?);
    } else {
        let model = cfg
            .model
            .as_deref()
            .ok_or_else(|| CliError::Parse("missing --model".into()))?;
        cfg.model = Some(with_key(model, key, value)?);
    }
    let (model, atoms) = cfg.model()?;
    let spec = cfg.state_spec()?;
    let rho0 = initial_state(spec.build()?, atoms)?;
    let traj = evolve_rk4(
        &model.generator(atoms),
        &rho0,
        &cfg.settings(DEFAULT_T_END)?,
    )?;
    Ok(SweepRow {
        value,
        model: model.to_string(),
        state: spec.to_string(),
        final_negativity: traj.final_negativity(),
        steady_time: detect_steady_state(&traj, STEADY_WINDOW, STEADY_TOL).map(|s| s.time),
    })
}

/// Runs one trajectory per value in parallel. Rows keep the order of the
/// values, so output does not depend on scheduling.
pub fn sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>, CliError> {
    let vary = cfg
        .vary
        .as_deref()
        .ok_or_else(|| CliError::Parse("missing --vary".into()))?;
    let (key, values) = parse_vary(vary)?;
    let rows: Vec<Result<SweepRow, CliError>> =
        pool()?.install(|| values.par_iter().map(|&v| run_one(cfg, &key, v)).collect());
    rows.into_iter().collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("value,final_negativity,steady_time,model,state\n");
    for r in rows {
        let steady = r.steady_time.map_or_else(String::new, |t| t.to_string());
        let _ = writeln!(
            s,
            "{},{},{},\"{}\",\"{}\"",
            r.value, r.final_negativity, steady, r.model, r.state
        );
    }
    s
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rows = sweep(cfg)?;
    let text = match cfg.format() {
        Format::Csv => to_csv(&rows),
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    match &cfg.output {
        Some(path) => {
            match cfg.format() {
                Format::Csv => std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?,
                Format::Json => write_json(path, &rows)?,
            }
            Ok(Outcome::ok(format!(
                "wrote {} rows to {}\n",
                rows.len(),
                path.display()
            )))
        }
        None => Ok(Outcome::ok(text)),
    }
}
