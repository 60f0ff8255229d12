use std::f64::consts::{FRAC_PI_2, PI};

use qutrit_lindblad::evolution::{
    analytic_ii_general, analytic_ii_general_matrix, analytic_ii_isotropic, asymptotic_isotropic,
    asymptotic_negativity_pure, asymptotic_state_max_interference, negativity_psimax_closed_form,
    EvolutionError,
};
use qutrit_lindblad::linalg::{
    hermitian_eigen, kron, partial_transpose_a, ComplexMatrix, DEFAULT_HERMITIAN_TOL,
};
use qutrit_lindblad::lindblad::{
    generator_system_i, generator_system_ii, Atoms, SystemIIParams, SystemIParams,
};
use qutrit_lindblad::random;
use qutrit_lindblad::states::{
    isotropic_state, negativity_isotropic_closed_form, negativity_pure_closed_form, psi_max_state,
    pure_density, DensityMatrix, IsotropicParams, PureStateParams,
};
use qutrit_lindblad::{evolve_rk4, negativity, IntegratorSettings};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::Outcome;
use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub const SUITES: [&str; 7] = [
    "negativity",
    "partial-transpose",
    "generator",
    "trace",
    "oracle",
    "monotonicity",
    "asymptotic",
];

const GAMMA_U_GRID: [f64; 5] = [0.0, 0.1, 0.25, 0.5, 1.0];

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub suite: &'static str,
    pub check: String,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<Counterexample>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, check: &str, details: impl FnOnce() -> Value) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(Counterexample {
                    suite: self.name,
                    check: check.into(),
                    details: details(),
                });
            }
        }
    }

    fn error(&mut self, check: &str, err: impl ToString) {
        self.record(false, check, || json!({ "error": err.to_string() }));
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_state(r: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    DensityMatrix::new(random::density_matrix(r, n)).expect("Ginibre states are valid")
}

fn negativity_suite(seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("negativity");
    match negativity(&psi_max_state()) {
        Ok(n) => s.record(
            (n - 1.0).abs() <= 1e-10,
            "psi_max",
            || json!({ "negativity": n }),
        ),
        Err(e) => s.error("psi_max", e),
    }
    for k in 0..=10 {
        let p = IsotropicParams::new(k as f64 / 10.0).expect("p in range");
        let closed = negativity_isotropic_closed_form(p);
        match negativity(&isotropic_state(p)) {
            Ok(n) => s.record(
                (n - closed).abs() <= 1e-10,
                "isotropic closed form",
                || json!({ "p": p.p(), "numeric": n, "closed_form": closed }),
            ),
            Err(e) => s.error("isotropic closed form", e),
        }
    }
    let mut r = rng(seed, 1);
    for _ in 0..50 {
        let theta = rand::Rng::random_range(&mut r, 0.0..FRAC_PI_2);
        let phi = rand::Rng::random_range(&mut r, 0.0..FRAC_PI_2);
        let params = PureStateParams::new(theta, phi).expect("angles in range");
        let closed = negativity_pure_closed_form(params);
        match negativity(&pure_density(params)) {
            Ok(n) => s.record(
                (n - closed).abs() <= 1e-10,
                "pure closed form",
                || json!({ "theta": theta, "phi": phi, "numeric": n, "closed_form": closed }),
            ),
            Err(e) => s.error("pure closed form", e),
        }
    }
    for _ in 0..10 {
        let rho = random_state(&mut r, 9);
        let u = kron(
            &random::haar_unitary(&mut r, 3),
            &random::haar_unitary(&mut r, 3),
        )
        .expect("3x3 factors");
        let rotated = DensityMatrix::new(&(&u * rho.matrix()) * &u.adjoint());
        match (negativity(&rho), rotated.and_then(|x| negativity(&x))) {
            (Ok(a), Ok(b)) => s.record(
                (a - b).abs() <= 1e-10,
                "local unitary invariance",
                || json!({ "before": a, "after": b }),
            ),
            (Err(e), _) | (_, Err(e)) => s.error("local unitary invariance", e),
        }
    }
    s
}

fn partial_transpose_suite(seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("partial-transpose");
    let mut r = rng(seed, 2);
    for _ in 0..50 {
        let m = random::ginibre(&mut r, 9, 9);
        let once = partial_transpose_a(&m).expect("9x9");
        let twice = partial_transpose_a(&once).expect("9x9");
        let d = twice.max_abs_diff(&m);
        s.record(d == 0.0, "involution", || json!({ "deviation": d }));
        let dt = (once.trace() - m.trace()).norm();
        s.record(
            dt <= 1e-14,
            "trace preservation",
            || json!({ "deviation": dt }),
        );
        let h = random::hermitian(&mut r, 9);
        let hd = partial_transpose_a(&h).expect("9x9").hermiticity_defect();
        s.record(
            hd == 0.0,
            "hermiticity preservation",
            || json!({ "defect": hd }),
        );
    }
    for _ in 0..20 {
        let h = random::hermitian(&mut r, 9);
        match hermitian_eigen(&h, DEFAULT_HERMITIAN_TOL) {
            Ok(eig) => {
                let mut worst: f64 = 0.0;
                for k in 0..9 {
                    let v = eig.vector(k);
                    let hv = h.mul_vec(&v);
                    for (a, b) in hv.iter().zip(&v) {
                        worst = worst.max((a - b * eig.values[k]).norm());
                    }
                }
                s.record(
                    worst <= 1e-10,
                    "eigen residual",
                    || json!({ "residual": worst }),
                );
            }
            Err(e) => s.error("eigen residual", e),
        }
    }
    s
}

fn generator_suite(seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("generator");
    let mut gens = Vec::new();
    for beta in [0.0, 0.5, 0.9, 1.0] {
        gens.push((
            format!("sysI beta={beta}"),
            generator_system_i(SystemIParams::new(1.0, 0.9, beta).unwrap(), Atoms::Two),
        ));
    }
    for gu in GAMMA_U_GRID {
        gens.push((
            format!("sysII gu={gu}"),
            generator_system_ii(SystemIIParams::new(1.0, gu).unwrap(), Atoms::Two),
        ));
    }
    let mut r = rng(seed, 3);
    for (name, g) in &gens {
        let mut worst: f64 = 0.0;
        for i in 0..9 {
            for j in 0..9 {
                match g.apply(&ComplexMatrix::unit(9, i, j)) {
                    Ok(out) => worst = worst.max(out.trace().norm()),
                    Err(e) => s.error("trace annihilation", e),
                }
            }
        }
        s.record(
            worst <= 1e-13,
            "trace annihilation",
            || json!({ "generator": name, "max_trace": worst }),
        );
        let rho = random::hermitian(&mut r, 9);
        match (g.apply(&rho), g.apply_dense(&rho)) {
            (Ok(fast), Ok(dense)) => {
                let hd = fast.hermiticity_defect();
                s.record(
                    hd <= 1e-14,
                    "hermiticity preservation",
                    || json!({ "generator": name, "defect": hd }),
                );
                let d = fast.max_abs_diff(&dense);
                s.record(
                    d <= 1e-13,
                    "sparse vs dense",
                    || json!({ "generator": name, "deviation": d }),
                );
            }
            (Err(e), _) | (_, Err(e)) => s.error("hermiticity preservation", e),
        }
    }
    s
}

/// Checks that `propagator(ρ0, params, t)` keeps unit trace for diagonal
/// supported initial states over a grid of rates and times.
pub fn trace_suite<P>(seed: u64, propagator: P) -> SuiteReport
where
    P: Fn(&ComplexMatrix, SystemIIParams, f64) -> Result<ComplexMatrix, EvolutionError>,
{
    let mut s = SuiteReport::new("trace");
    let mut r = rng(seed, 4);
    let mut states = vec![
        psi_max_state(),
        pure_density(PureStateParams::new(PI / 8.0, PI / 6.0).unwrap()),
    ];
    for _ in 0..5 {
        let v = random::pure_vector(&mut r, 3);
        let mut psi = vec![Default::default(); 9];
        for k in 0..3 {
            psi[4 * k] = v.0[k];
        }
        states.push(DensityMatrix::from_pure(&psi.into()).expect("unit vector"));
    }
    for ge in [1.0, 0.4] {
        for gu in GAMMA_U_GRID {
            let params = SystemIIParams::new(ge, gu).unwrap();
            for rho in &states {
                for t in [0.0, 0.3, 1.0, 2.5, 10.0] {
                    match propagator(rho.matrix(), params, t) {
                        Ok(m) => {
                            let defect = (m.trace().re - 1.0).abs();
                            s.record(
                                defect <= 1e-12,
                                "trace preservation",
                                || json!({ "ge": ge, "gu": gu, "t": t, "trace_defect": defect }),
                            );
                        }
                        Err(e) => s.error("trace preservation", e),
                    }
                }
            }
        }
    }
    s
}

fn oracle_suite() -> SuiteReport {
    let mut s = SuiteReport::new("oracle");
    let settings = IntegratorSettings::new(1e-3, 5.0).sample_every(50);
    let p = IsotropicParams::new(0.75).unwrap();
    for gu in GAMMA_U_GRID {
        let params = SystemIIParams::new(1.0, gu).unwrap();
        let gen = generator_system_ii(params, Atoms::Two);
        let cases: [(&str, DensityMatrix); 3] = [
            ("psimax", psi_max_state()),
            (
                "pure",
                pure_density(PureStateParams::new(PI / 8.0, PI / 6.0).unwrap()),
            ),
            ("isotropic", isotropic_state(p)),
        ];
        for (label, rho0) in cases {
            let traj = match evolve_rk4(&gen, &rho0, &settings) {
                Ok(t) => t,
                Err(e) => {
                    s.error("rk4 vs exact", e);
                    continue;
                }
            };
            let mut worst: f64 = 0.0;
            let mut physical = true;
            for (k, t) in traj.times.iter().enumerate() {
                let exact = if label == "isotropic" {
                    analytic_ii_isotropic(p, params, *t)
                } else {
                    analytic_ii_general(&rho0, params, *t)
                };
                match exact {
                    Ok(e) => worst = worst.max(traj.states[k].matrix().max_abs_diff(e.matrix())),
                    Err(e) => s.error("rk4 vs exact", e),
                }
                let d = traj.diagnostics[k];
                physical &= d.trace_defect.abs() <= 1e-9
                    && d.hermiticity_defect <= 1e-9
                    && d.min_eigenvalue >= -1e-9;
            }
            s.record(
                worst <= 1e-6,
                "rk4 vs exact",
                || json!({ "gu": gu, "state": label, "deviation": worst }),
            );
            s.record(
                physical,
                "physicality",
                || json!({ "gu": gu, "state": label }),
            );
            if label == "psimax" {
                let dev = traj
                    .times
                    .iter()
                    .zip(&traj.negativities)
                    .map(|(t, n)| (n - negativity_psimax_closed_form(params, *t)).abs())
                    .fold(0.0, f64::max);
                s.record(
                    dev <= 1e-6,
                    "psi_max negativity curve",
                    || json!({ "gu": gu, "deviation": dev }),
                );
            }
        }
    }
    s
}

fn monotonicity_suite() -> SuiteReport {
    let mut s = SuiteReport::new("monotonicity");
    for t in [0.2, 1.0, 3.0, 10.0] {
        for w in GAMMA_U_GRID.windows(2) {
            let a = negativity_psimax_closed_form(SystemIIParams::new(1.0, w[0]).unwrap(), t);
            let b = negativity_psimax_closed_form(SystemIIParams::new(1.0, w[1]).unwrap(), t);
            s.record(
                b < a,
                "closed form decreasing in gu",
                || json!({ "t": t, "gu": w, "negativity": [a, b] }),
            );
        }
    }
    let settings = IntegratorSettings::new(1e-2, 5.0).sample_every(10);
    let states = [
        (
            "pure",
            pure_density(PureStateParams::new(PI / 8.0, PI / 6.0).unwrap()),
        ),
        (
            "isotropic",
            isotropic_state(IsotropicParams::new(0.75).unwrap()),
        ),
    ];
    for (label, rho0) in &states {
        let mut prev: Option<(f64, Vec<f64>)> = None;
        for beta in [0.0, 0.3, 0.6, 0.9, 0.99] {
            let gen = generator_system_i(SystemIParams::new(1.0, 0.9, beta).unwrap(), Atoms::Two);
            let curve = match evolve_rk4(&gen, rho0, &settings) {
                Ok(t) => t.negativities,
                Err(e) => {
                    s.error("system I ordering in beta", e);
                    continue;
                }
            };
            if let Some((b0, lower)) = &prev {
                let violation = lower
                    .iter()
                    .zip(&curve)
                    .map(|(lo, hi)| lo - hi)
                    .fold(0.0, f64::max);
                s.record(
                    violation <= 1e-6,
                    "system I ordering in beta",
                    || json!({ "state": label, "beta": [b0, beta], "violation": violation }),
                );
            }
            prev = Some((beta, curve));
        }
    }
    s
}

fn asymptotic_suite() -> SuiteReport {
    let mut s = SuiteReport::new("asymptotic");
    for i in 0..20 {
        for j in 0..20 {
            let params =
                PureStateParams::new(i as f64 * FRAC_PI_2 / 19.0, j as f64 * FRAC_PI_2 / 19.0)
                    .unwrap();
            let closed = asymptotic_negativity_pure(params);
            let numeric = asymptotic_state_max_interference(&pure_density(params))
                .map_err(|e| e.to_string())
                .and_then(|x| negativity(&x).map_err(|e| e.to_string()));
            match numeric {
                Ok(n) => s.record((n - closed).abs() <= 1e-10, "pure asymptote", || {
                    json!({ "theta": params.theta(), "phi": params.phi(), "numeric": n, "closed_form": closed })
                }),
                Err(e) => s.error("pure asymptote", e),
            }
            let initial = negativity_pure_closed_form(params);
            s.record(
                closed <= initial + 1e-15,
                "dominance",
                || json!({ "asymptotic": closed, "initial": initial }),
            );
        }
    }
    for k in 0..=20 {
        let p = IsotropicParams::new(k as f64 / 20.0).unwrap();
        let (_, closed) = asymptotic_isotropic(p);
        let numeric = asymptotic_state_max_interference(&isotropic_state(p))
            .map_err(|e| e.to_string())
            .and_then(|x| negativity(&x).map_err(|e| e.to_string()));
        match numeric {
            Ok(n) => s.record(
                (n - closed).abs() <= 1e-10,
                "isotropic asymptote",
                || json!({ "p": p.p(), "numeric": n, "closed_form": closed }),
            ),
            Err(e) => s.error("isotropic asymptote", e),
        }
    }
    s
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport, CliError> {
    Ok(match name {
        "negativity" => negativity_suite(seed),
        "partial-transpose" => partial_transpose_suite(seed),
        "generator" => generator_suite(seed),
        "trace" => trace_suite(seed, analytic_ii_general_matrix),
        "oracle" => oracle_suite(),
        "monotonicity" => monotonicity_suite(),
        "asymptotic" => asymptotic_suite(),
        _ => {
            return Err(CliError::Parse(format!(
                "unknown suite `{name}`; expected one of {}",
                SUITES.join(", ")
            )))
        }
    })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let seed = cfg.seed.unwrap_or(0);
    let names: Vec<&str> = match cfg.suite.as_deref() {
        Some(name) => vec![name],
        None => SUITES.to_vec(),
    };
    let reports = names
        .iter()
        .map(|n| run_suite(n, seed))
        .collect::<Result<Vec<_>, _>>()?;
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    let passed: usize = reports.iter().map(|r| r.passed).sum();
    let text = match cfg.format() {
        Format::Json => {
            serde_json::to_string_pretty(
                &json!({ "seed": seed, "passed": passed, "failed": failed, "suites": reports }),
            )? + "\n"
        }
        Format::Csv => {
            let mut s = format!("seed {seed}\n");
            for r in &reports {
                s.push_str(&format!(
                    "suite {}: {} passed, {} failed\n",
                    r.name, r.passed, r.failed
                ));
            }
            s.push_str(&format!("total: {passed} passed, {failed} failed\n"));
            if let Some(c) = reports.iter().find_map(|r| r.first_failure.as_ref()) {
                s.push_str(&format!("counterexample: {}\n", serde_json::to_string(c)?));
            }
            s
        }
    };
    if let Some(path) = &cfg.output {
        super::write_json(
            path,
            &json!({ "seed": seed, "passed": passed, "failed": failed, "suites": reports }),
        )?;
    }
    Ok(Outcome {
        report: text,
        exit: if failed == 0 { 0 } else { 1 },
    })
}
