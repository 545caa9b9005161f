//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hankel_core::catalogue::{
    build_case, classify, default_case, ode_residual, CaseId, CoefficientFamily, EquationClass, KernelCase, Location,
    Params, PointKind,
};
use hankel_core::operators::{
    capital_phi, factorization_integral, factorization_residual, hankel_nystrom, hankel_operator, periodic_hankel,
    TracyWidomKernel,
};
use hankel_core::quadrature::{gauss_legendre, geometric_grid, periodic_grid};
use hankel_core::spectra::{
    airy_edge_hankel, airy_edge_tracy_widom, decay_fit, eigen_decompose, finite_section_bound, fredholm_log_det, laguerre_section,
    symmetric_eigen, SpectralReport, NUMERICAL_FLOOR,
};
use hankel_core::specfun::airy_ai_prime;
use hankel_core::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn case(id: CaseId, pairs: &[(&str, f64)]) -> Result<KernelCase> {
    build_case(id, &params(pairs))
}

fn nystrom(kc: &KernelCase, n: usize) -> Result<SpectralReport> {
    let grid = gauss_legendre(n, 0.0, kc.truncation())?;
    symmetric_eigen(&hankel_nystrom(kc, &grid)?)
}

fn probe_max(kc: &KernelCase, f: impl Fn(&KernelCase, f64, f64) -> Result<f64>) -> Result<f64> {
    let (lo, hi) = kc.probe_range;
    let pt = |i: usize| lo + (hi - lo) * i as f64 / 29.0;
    let mut worst: f64 = 0.0;
    for i in 0..30 {
        for j in 0..30 {
            worst = worst.max(f(kc, pt(i), pt(j))?.abs());
        }
    }
    Ok(worst)
}

fn commutation() -> Result<Outcome> {
    let mut cases = Vec::new();
    for id in [
        CaseId::Q3,
        CaseId::Q4,
        CaseId::Q5Airy,
        CaseId::Q6Plus,
        CaseId::Q6Minus,
        CaseId::Q7Plus,
        CaseId::Q7Minus,
        CaseId::H1,
        CaseId::H3,
        CaseId::H4Plus,
        CaseId::H4Minus,
        CaseId::H7,
        CaseId::CGeneral,
    ] {
        cases.push(default_case(id)?);
    }
    for n in 0..=4 {
        cases.push(case(CaseId::Q8Laguerre, &[("n", n as f64)])?);
    }
    for nu in [0.5, 1.0, 2.0] {
        cases.push(case(CaseId::H2Plus, &[("nu", nu)])?);
        cases.push(case(CaseId::H2Minus, &[("nu", nu)])?);
    }
    let (mut phi_max, mut ode_max, mut control_min) = (0.0f64, 0.0f64, f64::INFINITY);
    let mut worst = String::new();
    for kc in &cases {
        let phi = probe_max(kc, capital_phi)?;
        let mut ode: f64 = 0.0;
        for u in kc.ode_probe_points(50) {
            ode = ode.max(ode_residual(kc, u)?.abs());
        }
        let control = probe_max(&kc.with_perturbed_b(0.1)?, capital_phi)?;
        if phi > 1e-8 || ode > 1e-8 || control < 1e-3 {
            worst = format!("{worst} {}{:?}", kc.case_id, kc.params.values().collect::<Vec<_>>());
        }
        phi_max = phi_max.max(phi);
        ode_max = ode_max.max(ode);
        control_min = control_min.min(control);
    }
    Ok(Outcome {
        pass: worst.is_empty(),
        detail: format!(
            "{} cases, max Phi {phi_max:.2e}, max ODE residual {ode_max:.2e}, min perturbed Phi {control_min:.2e}{}",
            cases.len(),
            if worst.is_empty() { String::new() } else { format!("; failing:{worst}") }
        ),
    })
}

fn carleman() -> Result<Outcome> {
    let kc = default_case(CaseId::Q3)?;
    let mut tops = Vec::new();
    for n in [256, 512, 1024] {
        let grid = geometric_grid(n, 1e-6, 1e6)?;
        tops.push(symmetric_eigen(&hankel_operator(&kc, &grid)?)?.singular_values[0]);
    }
    let top = tops[2];
    let in_range = (0.9 * PI..=PI + 0.01).contains(&top);
    let monotone = tops.windows(2).all(|w| w[1] >= w[0]);
    Ok(Outcome { pass: in_range && monotone, detail: format!("top singular values {tops:?}") })
}

fn finite_rank() -> Result<Outcome> {
    let q4 = nystrom(&default_case(CaseId::Q4)?, 64)?;
    let q4_ok = (q4.singular_values[0] - 0.5).abs() <= 1e-8 && q4.singular_values[1] <= 1e-8;

    let c = default_case(CaseId::CGeneral)?;
    let op = periodic_hankel(&c, &periodic_grid(128, PI)?)?;
    let sr = symmetric_eigen(&op)?;
    let (mut ev, _) = eigen_decompose(&op.matrix, false)?;
    ev.sort_by(|a, b| b.total_cmp(a));
    let last = ev.len() - 1;
    let cos_ok = (ev[0] - PI / 2.0).abs() <= 1e-10
        && (ev[last] + PI / 2.0).abs() <= 1e-10
        && sr.numerical_rank(1e-10) == 2;

    let mut ranks = Vec::new();
    for n in 0..=4 {
        let kc = case(CaseId::Q8Laguerre, &[("n", n as f64)])?;
        ranks.push(nystrom(&kc, 128)?.numerical_rank(1e-10));
    }
    let q8_ok = ranks.iter().enumerate().all(|(n, &r)| r == n + 1);
    Ok(Outcome {
        pass: q4_ok && cos_ok && q8_ok,
        detail: format!(
            "Q4 s1 = {:.12}, s2 = {:.1e}; cosine eigenvalues {:.12}, {:.12}; Q8 ranks {ranks:?}",
            q4.singular_values[0], q4.singular_values[1], ev[0], ev[last]
        ),
    })
}

fn factorization() -> Result<Outcome> {
    let probe: Vec<(f64, f64)> =
        (0..10).flat_map(|i| (0..10).map(move |j| (0.15 + 0.3 * i as f64, 0.15 + 0.3 * j as f64))).collect();
    let mut worst = Vec::new();
    for kc in [default_case(CaseId::Q5Airy)?, case(CaseId::Q7Plus, &[("shift", 1.0)])?, case(CaseId::H2Minus, &[("nu", 1.0)])?]
    {
        let w = TracyWidomKernel::for_case(&kc).expect("paired kernel");
        worst.push(factorization_residual(&kc, &w, &probe)?);
    }
    let d = airy_ai_prime(0.0).value;
    let diag = (factorization_integral(&default_case(CaseId::Q5Airy)?, 0.0, 0.0)? - d * d).abs();
    Ok(Outcome {
        pass: worst.iter().all(|&r| r <= 1e-6) && diag <= 1e-8,
        detail: format!("residuals airy/exponential/bessel {:?}; int Ai^2 - Ai'(0)^2 = {diag:.2e}", worst.iter().map(|r| format!("{r:.2e}")).collect::<Vec<_>>()),
    })
}

fn route_equivalence() -> Result<Outcome> {
    let cases = [
        default_case(CaseId::Q4)?,
        case(CaseId::Q7Plus, &[("shift", 1.0)])?,
        case(CaseId::Q8Laguerre, &[("n", 2.0)])?,
        case(CaseId::Q5Airy, &[("shift", 2.0)])?,
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for kc in &cases {
        let a = nystrom(kc, 200)?;
        let ls = laguerre_section(kc, 64)?;
        let b = ls.singular_values()?;
        let floor = NUMERICAL_FLOOR * a.singular_values[0];
        let mut rel: f64 = 0.0;
        for k in 0..5 {
            let (x, y) = (a.singular_values[k], b.singular_values[k]);
            if x.max(y) > floor {
                rel = rel.max((x - y).abs() / x.max(y));
            } else if (x - y).abs() > floor {
                rel = f64::INFINITY;
            }
        }
        let defect = ls.hankel_defect / ls.max_entry;
        pass &= rel <= 1e-5 && defect <= 1e-8;
        parts.push(format!("{} rel {rel:.1e} defect {defect:.1e}", kc.case_id));
    }
    Ok(Outcome { pass, detail: parts.join("; ") })
}

fn decay_laws() -> Result<(Outcome, Outcome)> {
    let mut pass_a = true;
    let mut parts = Vec::new();
    for kc in [case(CaseId::Q5Airy, &[("shift", 2.0)])?, case(CaseId::Q7Plus, &[("shift", 1.0)])?] {
        let sr = nystrom(&kc, 200)?;
        let s = &sr.singular_values;
        let weighted: Vec<f64> =
            s.iter().enumerate().take_while(|(_, &v)| v > NUMERICAL_FLOOR).map(|(i, v)| ((i + 1) as f64).powi(5) * v).collect();
        let decreasing = weighted.windows(2).skip(4).all(|w| w[1] < w[0]);
        let ls = laguerre_section(&kc, 64)?;
        let slack = NUMERICAL_FLOOR * s[0];
        let bound_ok = (1..=32).all(|n| s[n] <= finite_section_bound(&ls, n) + slack);
        pass_a &= decreasing && bound_ok;
        parts.push(format!(
            "{}: j^5 s_j decreasing over {} terms {decreasing}, section bound {bound_ok}",
            kc.case_id,
            weighted.len()
        ));
    }
    let a = Outcome { pass: pass_a, detail: parts.join("; ") };

    let mut pass_b = true;
    let mut parts = Vec::new();
    for n in [0, 2, 4] {
        let kc = case(CaseId::Hermite, &[("n", n as f64)])?;
        let fit = decay_fit(&nystrom(&kc, 48)?)?;
        pass_b &= fit.kappa2 > 0.0 && fit.model_residual <= 0.5;
        parts.push(format!("n = {n}: kappa2 {:.3}, RMS {:.3}", fit.kappa2, fit.model_residual));
    }
    Ok((a, Outcome { pass: pass_b, detail: parts.join("; ") }))
}

fn edge_curve() -> Result<Outcome> {
    let (mut prev, mut increasing, mut gap) = (f64::NEG_INFINITY, true, 0.0f64);
    let mut last = 0.0;
    for k in 0..=40 {
        let s = -6.0 + 0.25 * k as f64;
        let f = airy_edge_hankel(s, 96)?;
        let w = airy_edge_tracy_widom(s, 96)?;
        increasing &= f > prev;
        gap = gap.max((f - w).abs());
        prev = f;
        last = f;
    }
    let sr = nystrom(&default_case(CaseId::Q5Airy)?, 200)?;
    let base = fredholm_log_det(&sr, 1.0)?;
    let mut shape = true;
    let mut logs = Vec::new();
    for x in [1.0f64, 10.0, 100.0, 1000.0] {
        let v = fredholm_log_det(&sr, x)?;
        shape &= v - base <= 0.5 * (x.cbrt() - 1.0);
        logs.push(v);
    }
    Ok(Outcome {
        pass: increasing && last >= 1.0 - 1e-6 && gap <= 1e-6 && shape,
        detail: format!(
            "increasing {increasing}, F(4) = {last:.12}, max route gap {gap:.1e}, log det(I + x G^2) {logs:.4?}"
        ),
    })
}

struct Golden {
    label: &'static str,
    fam: CoefficientFamily,
    class: EquationClass,
    regular: usize,
    irregular_at_infinity: bool,
    riemann_sums: bool,
}

fn golden_cases() -> Result<Vec<Golden>> {
    use EquationClass::*;
    let g = |label, fam, class, regular, irregular_at_infinity, riemann_sums| Golden {
        label,
        fam,
        class,
        regular,
        irregular_at_infinity,
        riemann_sums,
    };
    let q = CoefficientFamily::quadratic;
    let h = |h1: f64, h2: f64, h4: f64, h5: f64| CoefficientFamily::hyperbolic(2.0, [h1, h2, -h1, h4, h5, 0.0]);
    let mut out = vec![
        g("Q(iii) Carleman", q(1.0, 0.0, 0.0, 0.0, 0.0)?, Elementary, 2, false, false),
        g("Q(iii) shifted", q(2.0, 1.0, 0.0, 0.0, 0.0)?, Elementary, 2, false, false),
        g("Q(iv) exponential", q(0.0, 1.0, 0.0, 1.0, 0.0)?, Elementary, 0, true, false),
        g("Q(iv) scaled", q(0.0, 2.0, 0.0, 3.0, 0.0)?, Elementary, 0, true, false),
        g("Q(v) Airy", q(0.0, 1.0, 1.0, 0.0, 0.0)?, ConfluentHypergeometric, 0, true, false),
        g("Q(v) Airy oscillatory", q(0.0, 1.0, -1.0, 0.0, 0.0)?, ConfluentHypergeometric, 0, true, false),
        g("Q(vi) K1", q(1.0, 0.0, 0.0, 0.25, 0.0)?, ConfluentHypergeometric, 1, true, false),
        g("Q(vi) J1", q(1.0, 0.0, 0.0, -0.25, 0.0)?, ConfluentHypergeometric, 1, true, false),
        g("Q(vii) exp/linear", q(1.0, 1.0, 1.0, 1.0, 0.0)?, ConfluentHypergeometric, 1, true, false),
        g("Q(vii) trig/linear", q(1.0, 1.0, -1.0, -1.0, 0.0)?, ConfluentHypergeometric, 1, true, false),
    ];
    for n in 0..3 {
        let b1 = -2.0 * (n as f64 + 1.0);
        out.push(g("Q(viii) Laguerre", q(1.0, 0.0, 1.0, b1, 0.0)?, ConfluentHypergeometric, 1, true, false));
    }
    out.extend([
        g("H(i)", h(1.0, 1.0, 2.0, 2.0)?, Elementary, 2, false, false),
        g("H(i) negative", h(-1.0, -1.0, 3.0, 3.0)?, Elementary, 2, false, false),
        g("H(ii) K", h(-1.0, -1.0, 4.0, -4.0)?, ConfluentHypergeometric, 1, true, false),
        g("H(ii) J", h(-1.0, -1.0, -4.0, 4.0)?, ConfluentHypergeometric, 1, true, false),
        g("H(iii)", h(-1.0, 1.0, -3.0, 3.0)?, Elementary, 2, false, false),
        g("H(iii) scaled", h(2.0, -2.0, 1.0, -1.0)?, Elementary, 2, false, false),
        g("H(iv) K", h(1.0, -1.0, -4.0, -4.0)?, ConfluentHypergeometric, 1, false, false),
        g("H(iv) J", h(1.0, -1.0, 4.0, 4.0)?, ConfluentHypergeometric, 1, false, false),
        g("H(v)", h(0.25, 0.0, 0.375, -0.375)?, Hypergeometric, 3, false, true),
        g("H(vi)", h(1.0, 0.5, 1.0, 0.2)?, Hypergeometric, 3, false, true),
        g("H(vi) second", h(2.0, -0.5, 0.3, 1.0)?, Hypergeometric, 3, false, true),
        g("H(vii)", h(0.0, 1.0, 0.0, 0.0)?, Elementary, 2, false, false),
        g("C generic", CoefficientFamily::circular(2.0, [-1.0, 0.0, 1.0, 3.0, 0.0, 0.0])?, Hypergeometric, 3, false, false),
    ]);
    Ok(out)
}

fn classification() -> Result<Outcome> {
    let cases = golden_cases()?;
    let mut misses = Vec::new();
    for c in &cases {
        let r = classify(&c.fam)?;
        let irregular_inf =
            r.points.iter().any(|p| p.location == Location::Infinity && p.kind == PointKind::Irregular);
        let mut ok = r.equation_class == c.class && r.regular_count() == c.regular && irregular_inf == c.irregular_at_infinity;
        if c.riemann_sums {
            ok &= r.riemann_scheme.is_some_and(|s| {
                (s.alpha1 + s.alpha2 - 1.0).abs() < 1e-12 && (s.beta1 + s.beta2 - 1.0).abs() < 1e-12
            });
        }
        if !ok {
            misses.push(format!("{} -> {} ({})", c.label, r.equation_class.name(), r.case_label));
        }
    }
    Ok(Outcome {
        pass: misses.is_empty(),
        detail: if misses.is_empty() {
            format!("{} golden cases match", cases.len())
        } else {
            format!("{} of {} mismatched: {}", misses.len(), cases.len(), misses.join(", "))
        },
    })
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> (Result<T>, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn report(label: &str, budget: Duration, out: Result<Outcome>, took: Duration) -> bool {
    let (pass, detail) = match out {
        Ok(o) => (o.pass && took <= budget, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "{} {label}: {detail} [{:.2}s of {:.0}s]",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        budget.as_secs_f64()
    );
    pass
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut all = true;
    let (o, t) = timed(commutation);
    all &= report("1 commutation", secs(10), o, t);
    let (o, t) = timed(carleman);
    all &= report("2 carleman spectrum", secs(30), o, t);
    let (o, t) = timed(finite_rank);
    all &= report("3 finite-rank spectra", secs(5), o, t);
    let (o, t) = timed(factorization);
    all &= report("4 factorization", secs(20), o, t);
    let (o, t) = timed(route_equivalence);
    all &= report("5 route equivalence", secs(30), o, t);
    let (o, t) = timed(decay_laws);
    match o {
        Ok((a, b)) => {
            // both halves share one runtime budget
            all &= report("6a rapid decay", secs(60), Ok(a), t);
            all &= report("6b stretched-exponential fit", secs(60), Ok(b), t);
        }
        Err(e) => {
            all &= report("6 decay laws", secs(60), Err(e), t);
        }
    }
    let (o, t) = timed(edge_curve);
    all &= report("7 edge curve", secs(60), o, t);
    let (o, t) = timed(classification);
    all &= report("8 classification", secs(1), o, t);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
