use qutrit_lindblad::states::{
    negativity_isotropic_closed_form, negativity_pure_closed_form, negativity_routes,
    DensityMatrix, PureStateParams, StateSpec,
};
use serde::Serialize;

use super::{write_json, Outcome};
use crate::config::{Format, RunConfig};
use crate::error::CliError;

/// Negativities below this are reported as PPT.
pub const ENTANGLED_THRESHOLD: f64 = 1e-10;

#[derive(Serialize)]
pub struct Verdict {
    pub product: bool,
    pub entangled: bool,
    pub text: &'static str,
}

pub fn verdict(rho: &DensityMatrix, negativity: f64) -> Verdict {
    let product = rho.is_product(1e-9);
    let entangled = negativity > ENTANGLED_THRESHOLD;
    let text = if product {
        "separable (product state)"
    } else if entangled {
        "entangled (negative partial transpose)"
    } else {
        "PPT (no negativity detected)"
    };
    Verdict {
        product,
        entangled,
        text,
    }
}

pub fn closed_form(spec: &StateSpec) -> Option<f64> {
    match spec {
        StateSpec::Pure(p) => Some(negativity_pure_closed_form(*p)),
        StateSpec::PsiMax => Some(negativity_pure_closed_form(PureStateParams::maximal())),
        StateSpec::Isotropic(p) => Some(negativity_isotropic_closed_form(*p)),
        StateSpec::File(_) => None,
    }
}

#[derive(Serialize)]
struct Report {
    state: String,
    negativity: f64,
    trace_norm_route: f64,
    negative_sum_route: f64,
    closed_form: Option<f64>,
    verdict: Verdict,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.state_spec()?;
    let rho = spec.build()?;
    let (trace_norm_route, negative_sum_route) = negativity_routes(rho.matrix())?;
    let n = qutrit_lindblad::negativity(&rho)?;
    let report = Report {
        state: spec.to_string(),
        negativity: n,
        trace_norm_route,
        negative_sum_route,
        closed_form: closed_form(&spec),
        verdict: verdict(&rho, n),
    };
    if let Some(path) = &cfg.output {
        write_json(path, &report)?;
    }
    let text = match cfg.format() {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = format!("state: {}\nnegativity: {:.12}\n", report.state, n);
            s.push_str(&format!(
                "routes: trace norm {trace_norm_route:.12}, negative eigenvalues {negative_sum_route:.12}\n"
            ));
            if let Some(c) = report.closed_form {
                s.push_str(&format!("closed form: {c:.12}\n"));
            }
            s.push_str(&format!("verdict: {}\n", report.verdict.text));
            s
        }
    };
    Ok(Outcome::ok(text))
}
