use std::fs;
use std::path::{Path, PathBuf};

use qutrit_lindblad::lindblad::{Atoms, Model, ModelSpec, SystemIIParams, SystemIParams};
use qutrit_lindblad::states::StateSpec;
use qutrit_lindblad::IntegratorSettings;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_T_END: f64 = 10.0;
pub const DEFAULT_ASYMPTOTE_T_END: f64 = 50.0;
pub const STEADY_WINDOW: f64 = 5.0;
pub const STEADY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Evolve,
    Negativity,
    Asymptote,
    Figure,
    Validate,
    Sweep,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorConfig {
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub sample_every: Option<usize>,
    pub adapt: Option<f64>,
}

/// Everything a run needs. Loaded from `--config` and overridden by flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub model: Option<String>,
    pub atoms: Option<usize>,
    pub state: Option<String>,
    pub integrator: IntegratorConfig,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    /// Two-digit one-based element labels such as `15`.
    pub elements: Vec<String>,
    /// Level shifts `w1=..,w2=..` of the real diagonal Hamiltonian.
    pub hamiltonian: Option<String>,
    pub figure: Option<u8>,
    pub suite: Option<String>,
    pub check_numeric: bool,
    /// `key=v1,v2,...` for `sweep`.
    pub vary: Option<String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn model_spec(&self) -> Result<ModelSpec, CliError> {
        let text = self
            .model
            .as_deref()
            .ok_or_else(|| CliError::Parse("missing --model".into()))?;
        Ok(text.parse()?)
    }

    /// The model with its largest rate scaled to one, plus the atom count.
    pub fn model(&self) -> Result<(Model, Atoms), CliError> {
        let spec = self.model_spec()?;
        let atoms = match self.atoms {
            Some(n) => Atoms::try_from(n)?,
            None => spec.atoms.unwrap_or(Atoms::Two),
        };
        Ok((normalize(spec.model)?, atoms))
    }

    pub fn state_spec(&self) -> Result<StateSpec, CliError> {
        let text = self
            .state
            .as_deref()
            .ok_or_else(|| CliError::Parse("missing --state".into()))?;
        Ok(text.parse()?)
    }

    pub fn settings(&self, default_t_end: f64) -> Result<IntegratorSettings, CliError> {
        let i = &self.integrator;
        let mut s =
            IntegratorSettings::new(i.dt.unwrap_or(DEFAULT_DT), i.t_end.unwrap_or(default_t_end));
        s.sample_every = i.sample_every.unwrap_or(10);
        s.adapt = i.adapt;
        s.validate()?;
        Ok(s)
    }

    pub fn elements(&self, dim: usize) -> Result<Vec<(usize, usize)>, CliError> {
        self.elements
            .iter()
            .map(|e| parse_element(e, dim))
            .collect()
    }

    pub fn level_shifts(&self) -> Result<Option<(f64, f64)>, CliError> {
        let Some(text) = self.hamiltonian.as_deref() else {
            return Ok(None);
        };
        let parse = |m: String| CliError::Parse(format!("--hamiltonian {text}: {m}"));
        let kv = qutrit_lindblad::states::parse_key_values(text).map_err(parse)?;
        qutrit_lindblad::states::reject_unknown(&kv, &["w1", "w2"]).map_err(parse)?;
        let get = |k| kv.iter().find(|(key, _)| key == k).map_or(0.0, |(_, v)| *v);
        Ok(Some((get("w1"), get("w2"))))
    }
}

/// Rescales all rates so the largest equals one; time is then measured in
/// units of the inverse largest rate.
pub fn normalize(model: Model) -> Result<Model, CliError> {
    let m = model.max_rate();
    Ok(match model {
        Model::SystemI(p) => Model::SystemI(SystemIParams::new(
            p.gamma1() / m,
            p.gamma2() / m,
            p.beta(),
        )?),
        Model::SystemII(p) => {
            Model::SystemII(SystemIIParams::new(p.gamma_e() / m, p.gamma_u() / m)?)
        }
    })
}

/// `15` or `1,5` to the one-based pair `(1, 5)`.
pub fn parse_element(label: &str, dim: usize) -> Result<(usize, usize), CliError> {
    let label = label.trim();
    let bad = || CliError::Parse(format!("element `{label}` must be two labels in 1..={dim}"));
    let (i, j) = match label.split_once(',') {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let digits: Vec<u32> = label
                .chars()
                .map(|c| c.to_digit(10))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            match digits.as_slice() {
                [a, b] => (*a as usize, *b as usize),
                _ => return Err(bad()),
            }
        }
    };
    if (1..=dim).contains(&i) && (1..=dim).contains(&j) {
        Ok((i, j))
    } else {
        Err(bad())
    }
}
