use anyhow::{bail, Result};
use chrono::{SecondsFormat, Utc};
use hankel_core::catalogue::{
    build_case, classify, ode_residual, CaseId, CoefficientFamily, FamilyFunction, FamilyTag, Integrability,
    KernelCase, Params, REGISTRY,
};
use hankel_core::operators::{
    bump_functions, capital_phi, commutator_residual, default_bumps, factorization_residual, hankel_nystrom,
    hankel_operator, sturm_liouville_matrix, TracyWidomKernel,
};
use hankel_core::quadrature::{gauss_legendre, geometric_grid, multiplicative_grid, periodic_grid, uniform_grid, Grid};
use hankel_core::spectra::{
    airy_edge_hankel, decay_fit, finite_section_bound, fredholm_det, laguerre_section, symmetric_eigen, SpectralReport,
    NUMERICAL_FLOOR,
};
use hankel_core::quadrature::DomainKind;
use serde_json::{json, Value};

use crate::config::{RunConfig, Tolerances};
use crate::output::{extension, write_atomic, Table};

/// How a command finished when it did not fail outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    ToleranceExceeded,
}

pub fn catalogue_list(family: Option<&str>) -> Result<String> {
    let tag = match family {
        None => None,
        Some(f) => Some(match f.to_ascii_uppercase().as_str() {
            "Q" => FamilyTag::Q,
            "H" => FamilyTag::H,
            "C" => FamilyTag::C,
            _ => bail!(hankel_core::Error::InvalidArgument(format!("unknown family filter '{f}'"))),
        }),
    };
    let entries: Vec<Value> = REGISTRY
        .iter()
        .filter(|c| tag.is_none() || c.family == tag)
        .map(|c| {
            json!({
                "id": c.name,
                "family": c.family.map(|f| f.name()),
                "kernel": c.kernel,
                "anchor": c.anchor,
                "params": c.params.iter().map(|p| json!({
                    "name": p.name,
                    "default": p.default,
                    "constraint": p.constraint,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(serde_json::to_string_pretty(&entries)? + "\n")
}

fn get(params: &Params, name: &str, default: f64) -> f64 {
    params.get(name).copied().unwrap_or(default)
}

fn check_keys(params: &Params, allowed: &[&str]) -> Result<()> {
    for key in params.keys() {
        if !allowed.contains(&key.as_str()) {
            bail!(hankel_core::Error::InvalidParams(format!("unknown coefficient '{key}'")));
        }
    }
    Ok(())
}

/// Builds `(a, b)` from command-line coefficients. `b_family` forces the
/// family of `b`, which is how a mismatched pair is requested.
pub fn family_from_params(family: &str, b_family: Option<&str>, params: &Params) -> Result<CoefficientFamily> {
    let t = get(params, "t", 2.0);
    let hyper_b = || FamilyFunction::Hyperbolic {
        t,
        k1: get(params, "h4", 1.0),
        k2: get(params, "h5", 0.0),
        k3: get(params, "h6", 0.0),
    };
    let circ_b = || FamilyFunction::Circular {
        t,
        k1: get(params, "c4", 1.0),
        k2: get(params, "c5", 0.0),
        k3: get(params, "c6", 0.0),
    };
    let quad_b = || FamilyFunction::Quadratic {
        c2: get(params, "b2", 0.0),
        c1: get(params, "b1", 0.0),
        c0: get(params, "b0", 0.0),
    };
    let (a, own_b, keys): (FamilyFunction, FamilyFunction, &[&str]) = match family.to_ascii_uppercase().as_str() {
        "Q" => (
            FamilyFunction::Quadratic { c2: get(params, "q2", 0.0), c1: get(params, "q1", 1.0), c0: 0.0 },
            quad_b(),
            &["q2", "q1", "b2", "b1", "b0", "t", "h4", "h5", "h6", "c4", "c5", "c6"],
        ),
        "H" => {
            let h1 = get(params, "h1", 0.0);
            let a = FamilyFunction::Hyperbolic { t, k1: h1, k2: get(params, "h2", 0.0), k3: get(params, "h3", -h1) };
            (a, hyper_b(), &["t", "h1", "h2", "h3", "h4", "h5", "h6", "b2", "b1", "b0", "c4", "c5", "c6"])
        }
        "C" => {
            let c1 = get(params, "c1", 0.0);
            let a = FamilyFunction::Circular { t, k1: c1, k2: get(params, "c2", 0.0), k3: get(params, "c3", -c1) };
            (a, circ_b(), &["t", "c1", "c2", "c3", "c4", "c5", "c6", "b2", "b1", "b0", "h4", "h5", "h6"])
        }
        other => bail!(hankel_core::Error::InvalidArgument(format!("family must be Q, H or C, got '{other}'"))),
    };
    check_keys(params, keys)?;
    let b = match b_family.map(str::to_ascii_uppercase).as_deref() {
        None => own_b,
        Some("Q") => quad_b(),
        Some("H") => hyper_b(),
        Some("C") => circ_b(),
        Some(other) => bail!(hankel_core::Error::InvalidArgument(format!("b family must be Q, H or C, got '{other}'"))),
    };
    Ok(CoefficientFamily::new(a, b)?)
}

/// Rounds every float in a JSON tree to 12 significant digits.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
            *v = json!(r);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn classify_cmd(family: &str, b_family: Option<&str>, params: &Params) -> Result<String> {
    let fam = family_from_params(family, b_family, params)?;
    let report = classify(&fam)?;
    let mut v = serde_json::to_value(&report)?;
    if let Value::Object(map) = &mut v {
        map.insert("equation_class".into(), json!(report.equation_class.name()));
        map.insert("regular_count".into(), json!(report.regular_count()));
        map.insert("irregular_count".into(), json!(report.irregular_count()));
    }
    round_floats(&mut v);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn probe_max(kc: &KernelCase, f: impl Fn(f64, f64) -> hankel_core::Result<f64>) -> Result<f64> {
    let (lo, hi) = kc.probe_range;
    let pt = |i: usize| lo + (hi - lo) * i as f64 / 29.0;
    let mut worst: f64 = 0.0;
    for i in 0..30 {
        for j in 0..30 {
            worst = worst.max(f(pt(i), pt(j))?.abs());
        }
    }
    Ok(worst)
}

fn factorization_entry(kc: &KernelCase, tol: f64) -> Result<(Value, bool)> {
    if kc.integrability == Integrability::BoundedOnly {
        return Ok((json!("not applicable: bounded-only"), true));
    }
    let Some(w) = TracyWidomKernel::for_case(kc) else {
        return Ok((json!("not applicable: no integrable kernel pair"), true));
    };
    let probe: Vec<(f64, f64)> =
        (0..10).flat_map(|i| (0..10).map(move |j| (0.15 + 0.3 * i as f64, 0.15 + 0.3 * j as f64))).collect();
    let r = factorization_residual(kc, &w, &probe)?;
    Ok((json!(r), r <= tol))
}

fn commutator_entry(kc: &KernelCase, n: usize, tol: f64) -> Result<(Value, bool)> {
    let hs = kc.integrability != Integrability::BoundedOnly;
    let Some(fam) = kc.family.as_ref().filter(|_| hs && kc.domain == DomainKind::HalfLine) else {
        return Ok((json!("not applicable: needs a Hilbert-Schmidt half-line case"), true));
    };
    let t = kc.truncation();
    let grid = uniform_grid(n, t)?;
    let g = hankel_nystrom(kc, &grid)?;
    let l = sturm_liouville_matrix(fam, &grid)?;
    let r = commutator_residual(&g, &l, &bump_functions(&grid, &default_bumps(t)))?;
    Ok((json!(r), r <= tol))
}

pub struct VerifyOptions {
    pub perturb_b: Option<f64>,
    pub factorization: bool,
}

pub fn verify(id: CaseId, cfg: &RunConfig, opts: &VerifyOptions) -> Result<(Status, Value)> {
    let mut kc = build_case(id, &cfg.params)?;
    if let Some(delta) = opts.perturb_b {
        kc = kc.with_perturbed_b(delta)?;
    }
    let tol: Tolerances = cfg.tolerances;
    let phi = probe_max(&kc, |x, y| capital_phi(&kc, x, y))?;
    let mut ode: f64 = 0.0;
    for u in kc.ode_probe_points(50) {
        ode = ode.max(ode_residual(&kc, u)?.abs());
    }
    let mut pass = phi <= tol.phi && ode <= tol.ode;
    let (commutator, ok) = commutator_entry(&kc, cfg.grid_n.unwrap_or(600), tol.commutator)?;
    pass &= ok;
    let mut residuals = json!({ "phi_max": phi, "ode_max": ode, "commutator": commutator });
    if opts.factorization {
        let (f, ok) = factorization_entry(&kc, tol.factorization)?;
        pass &= ok;
        residuals["factorization"] = f;
    }
    let report = json!({
        "case": id.name(),
        "params": kc.params,
        "perturb_b": opts.perturb_b,
        "residuals": residuals,
        "tolerances": tol,
        "pass": pass,
        "timestamp": Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
    });
    write_atomic(&cfg.out_dir, &format!("verify_{}.json", id.name()), &(serde_json::to_string_pretty(&report)? + "\n"))?;
    Ok((if pass { Status::Pass } else { Status::ToleranceExceeded }, report))
}

/// Grid matched to the case's domain: Gauss-Legendre on the truncated half-line
/// for decaying kernels, log-spaced nodes for the bounded-only ones.
fn spectral_grid(kc: &KernelCase, n: usize) -> Result<Grid> {
    Ok(match kc.domain {
        DomainKind::HalfLine if kc.integrability == Integrability::BoundedOnly => geometric_grid(n, 1e-6, 1e6)?,
        DomainKind::HalfLine => gauss_legendre(n, 0.0, kc.truncation())?,
        DomainKind::UnitIntervalMultiplicative => multiplicative_grid(n, 1e-14)?,
        DomainKind::Periodic => periodic_grid(n, kc.period.unwrap_or(2.0 * std::f64::consts::PI))?,
    })
}

fn spectral_report(kc: &KernelCase, n: usize) -> Result<SpectralReport> {
    Ok(symmetric_eigen(&hankel_operator(kc, &spectral_grid(kc, n)?)?)?)
}

fn emit(cfg: &RunConfig, stem: &str, id: CaseId, table: &Table) -> Result<String> {
    let name = format!("{stem}_{}.{}", id.name(), extension(cfg.format));
    let path = write_atomic(&cfg.out_dir, &name, &table.render(cfg.format)?)?;
    Ok(path.display().to_string())
}

pub fn spectrum(id: CaseId, cfg: &RunConfig) -> Result<String> {
    let kc = build_case(id, &cfg.params)?;
    let sr = spectral_report(&kc, cfg.grid_n.unwrap_or(200))?;
    let mut table = Table::new(&["j", "s_j"]);
    for (j, s) in sr.singular_values.iter().enumerate() {
        table.push(vec![(j + 1) as f64, *s]);
    }
    emit(cfg, "spectrum", id, &table)
}

pub fn fredholm(id: CaseId, cfg: &RunConfig, points: &[f64]) -> Result<String> {
    let kc = build_case(id, &cfg.params)?;
    if kc.domain != DomainKind::HalfLine || kc.integrability == Integrability::BoundedOnly {
        bail!(hankel_core::Error::UnsupportedCase(format!(
            "{id}: the determinant curve needs a Hilbert-Schmidt half-line case"
        )));
    }
    let n = cfg.grid_n.unwrap_or(96);
    let mut table = Table::new(&["s", "det"]);
    for &s in points {
        let det = if id == CaseId::Q5Airy {
            airy_edge_hankel(s + get(&kc.params, "shift", 0.0), n)?
        } else {
            let shifted = kc.shifted(s)?;
            fredholm_det(&spectral_report(&shifted, n)?, -1.0)?
        };
        table.push(vec![s, det]);
    }
    emit(cfg, "fredholm", id, &table)
}

pub fn decay(id: CaseId, cfg: &RunConfig) -> Result<(String, String)> {
    let kc = build_case(id, &cfg.params)?;
    if kc.decay.is_none() || kc.domain != DomainKind::HalfLine {
        bail!(hankel_core::Error::UnsupportedCase(format!("{id} has no exponential decay data")));
    }
    let sr = spectral_report(&kc, cfg.grid_n.unwrap_or(200))?;
    let fit = decay_fit(&sr)?;
    let ls = laguerre_section(&kc, 64)?;
    let mut table = Table::new(&["N", "s_N", "bound", "fit"]);
    for (k, s) in sr.singular_values.iter().enumerate().take_while(|(_, s)| **s > NUMERICAL_FLOOR) {
        // the section bound for index N + 1 uses the sequence tail past N
        table.push(vec![(k + 1) as f64, *s, finite_section_bound(&ls, k), fit.fit_value(k + 1)]);
    }
    let csv = emit(cfg, "decay", id, &table)?;
    let summary = json!({
        "case": id.name(),
        "params": kc.params,
        "c1": fit.c1,
        "kappa2": fit.kappa2,
        "exponent": fit.exponent,
        "model_residual": fit.model_residual,
        "fit_indices": fit.fit_indices,
        "weighted_tails": fit.weighted_tails,
    });
    let path = write_atomic(
        &cfg.out_dir,
        &format!("decay_{}_fit.json", id.name()),
        &(serde_json::to_string_pretty(&summary)? + "\n"),
    )?;
    Ok((csv, path.display().to_string()))
}
