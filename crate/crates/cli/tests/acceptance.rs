//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. All checks are exact; the only tolerance is zero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use multiphase::multisymplectic::{
    canonical_omega, canonical_theta, classify, construct_hamiltonian_vf, contraction_omega,
    HamiltonianGenerators, HamiltonianStatus,
};
use multiphase::polysymplectic::{canonical_theta_hat, classify_vertical};
use multiphase::{Chart, Monomial, MultiIndex, Rational, RationalField, RationalForm, RationalPoly};
use multiphase_cli::report::{run_checks, TrialReport};
use multiphase_cli::suites::{checks_of, find_check, Ctx, SuiteName};

const SEED: u64 = 20261015;

struct Criterion {
    number: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

/// Runs the named checks, `trials` each, and summarizes per-check counts.
fn run_named(names: &[(&str, u64)], ctx: &Ctx) -> (bool, String, Vec<TrialReport>) {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut reports = Vec::new();
    for &(name, trials) in names {
        let (stream, check) = find_check(name).unwrap_or_else(|| panic!("no check named {name}"));
        let charts = check.charts().len();
        let report = run_checks(name, vec![(stream, check)], trials, SEED, ctx, true);
        ok &= report.ok() && report.trials == trials;
        parts.push(format!("{name} {}/{} over {charts} charts", report.passed, report.trials));
        reports.push(report);
    }
    (ok, parts.join(", "), reports)
}

fn first_failure(reports: &[TrialReport]) -> String {
    reports
        .iter()
        .flat_map(|r| r.failures.first())
        .next()
        .map(|f| format!("; first failure: trial {} {}: {}", f.trial, f.check, f.message))
        .unwrap_or_default()
}

fn criterion(number: u32, title: &'static str, names: &[(&str, u64)], ctx: &Ctx) -> Criterion {
    let (passed, detail, reports) = run_named(names, ctx);
    Criterion { number, title, passed, detail: detail + &first_failure(&reports) }
}

fn kernel_identities(ctx: &Ctx) -> Criterion {
    let start = Instant::now();
    let checks = checks_of(SuiteName::Kernel);
    let names: Vec<&str> = checks.iter().map(|(_, c)| c.name).collect();
    let report = run_checks("kernel", checks, 200, SEED, ctx, true);
    let elapsed = start.elapsed();
    let each_200 = report.checks.values().all(|c| c.attempted >= 200 && c.passed == c.attempted);
    let passed = report.ok() && each_200 && elapsed < Duration::from_secs(60);
    Criterion {
        number: 1,
        title: "kernel identities",
        passed,
        detail: format!(
            "{} checks x {} instances, {}/{} trials clean, {:.1}s{}",
            names.len(),
            report.trials,
            report.passed,
            report.trials,
            elapsed.as_secs_f64(),
            first_failure(std::slice::from_ref(&report))
        ),
    }
}

fn q(s: &str) -> Rational {
    multiphase::scalar::parse_rational(s).expect("literal")
}

fn poly(chart: &Chart, terms: &[(&str, &[(&str, u32)])]) -> RationalPoly {
    RationalPoly::from_terms(terms.iter().map(|(c, powers)| {
        let m =
            Monomial::from_powers(powers.iter().map(|(name, e)| (chart.index_of(name).expect("name"), *e)));
        (m, q(c))
    }))
}

fn field(chart: &multiphase::ChartRef, comps: &[(&str, RationalPoly)]) -> RationalField {
    let mut x = RationalField::zero(chart);
    for (name, c) in comps {
        x.set(chart.index_of(name).expect("name"), c.clone());
    }
    x
}

/// The worked examples, each compared against a hand-derived exact value.
fn worked_examples() -> Result<usize, String> {
    let mut count = 0;
    let mut expect = |ok: bool, what: &str| -> Result<(), String> {
        count += 1;
        if ok {
            Ok(())
        } else {
            Err(what.to_string())
        }
    };

    // mechanics: extended phase space (t, q, p_1, p)
    let m = Chart::extended(1, 1).map_err(|e| e.to_string())?;
    expect(m.names() == ["x1", "q1", "p1_1", "p"], "mechanics chart coordinates")?;
    let theta: RationalForm = canonical_theta(&m).map_err(|e| e.to_string())?;
    let omega: RationalForm = canonical_omega(&m).map_err(|e| e.to_string())?;
    expect(theta.render() == "p dx1 + p1_1 dq1", "mechanics theta = p1 dq + p dt")?;
    expect(omega.render() == "dx1^dp + dq1^dp1_1", "mechanics omega = dq^dp1 - dp^dt")?;
    let free = field(&m, &[("q1", poly(&m, &[("1", &[("p1_1", 1)])]))]);
    let v = classify(&free).map_err(|e| e.to_string())?;
    expect(v.status == HamiltonianStatus::LocallyHamiltonian, "free particle is locally hamiltonian")?;
    expect(
        v.hamiltonian_form.as_ref().map(RationalForm::render).as_deref() == Some("1/2*p1_1^2"),
        "free particle hamiltonian form 1/2 p^2",
    )?;
    let spring = field(&m, &[("p1_1", poly(&m, &[("1", &[("q1", 1)])]))]);
    let v = classify(&spring).map_err(|e| e.to_string())?;
    expect(
        v.status == HamiltonianStatus::LocallyHamiltonian
            && v.hamiltonian_form.as_ref().map(RationalForm::render).as_deref() == Some("-1/2*q1^2"),
        "q d/dp1 on the mechanics chart: locally hamiltonian, f = -q^2/2",
    )?;
    let o = Chart::ordinary(1, 1, 1).map_err(|e| e.to_string())?;
    let spring = field(&o, &[("p1_1", poly(&o, &[("1", &[("q1", 1)])]))]);
    let v = classify_vertical(&spring).map_err(|e| e.to_string())?;
    expect(
        v.status == HamiltonianStatus::LocallyHamiltonian
            && v.hamiltonian_section.as_ref().map(|s| s.render()).as_deref() == Some("(-1/2*q1^2) (x) e1"),
        "q d/dp on (t, q, p): locally hamiltonian, section -q^2/2",
    )?;
    let th = canonical_theta_hat::<Rational>(&o).map_err(|e| e.to_string())?;
    expect(
        th.vertical_lie_derivative(&spring).map(|l| !l.is_zero()) == Ok(true),
        "L_X theta_hat != 0 for q d/dp",
    )?;

    // rotation field on the (2,1) chart
    let c = Chart::extended(2, 1).map_err(|e| e.to_string())?;
    let rot = HamiltonianGenerators {
        xmu: vec![poly(&c, &[("-1", &[("x2", 1)])]), poly(&c, &[("1", &[("x1", 1)])])],
        xi: vec![RationalPoly::zero()],
        f0: vec![RationalPoly::zero(), RationalPoly::zero()],
    };
    let x = construct_hamiltonian_vf(&rot, &c).map_err(|e| e.to_string())?;
    let expected = field(
        &c,
        &[
            ("x1", poly(&c, &[("-1", &[("x2", 1)])])),
            ("x2", poly(&c, &[("1", &[("x1", 1)])])),
            ("p1_1", poly(&c, &[("-1", &[("p1_2", 1)])])),
            ("p1_2", poly(&c, &[("1", &[("p1_1", 1)])])),
        ],
    );
    expect(x == expected, "rotation: X_1^1 = -p_1^2, X_1^2 = p_1^1, X_0 = 0")?;
    let v = classify(&x).map_err(|e| e.to_string())?;
    expect(v.status == HamiltonianStatus::ExactHamiltonian, "rotation is exact hamiltonian")?;
    let g = v.generators.ok_or("rotation generators")?;
    expect(g.xmu == rot.xmu && g.xi == rot.xi, "rotation generators recovered")?;

    // the counterexample q d/dp: d(i_X omega) = -dq^dx1^dx2
    let qdp = field(&c, &[("p", poly(&c, &[("1", &[("q1", 1)])]))]);
    let v = classify(&qdp).map_err(|e| e.to_string())?;
    expect(v.status == HamiltonianStatus::NotHamiltonian, "q d/dp is not hamiltonian")?;
    let w = v.witness.ok_or("q d/dp witness")?;
    let idx = MultiIndex::new(vec![c.base(0), c.base(1), c.position(0)]).expect("increasing");
    expect(
        w.index == idx && w.monomial == Monomial::one() && w.coefficient == q("-1"),
        "q d/dp witness -1 * dx1^dx2^dq1",
    )?;

    // repaired companion q d/dp + x1 d/dp_1^1, which is the field of f_0^1 = q x^1
    let repaired =
        field(&c, &[("p", poly(&c, &[("1", &[("q1", 1)])])), ("p1_1", poly(&c, &[("1", &[("x1", 1)])]))]);
    let f0 = HamiltonianGenerators {
        xmu: vec![RationalPoly::zero(), RationalPoly::zero()],
        xi: vec![RationalPoly::zero()],
        f0: vec![poly(&c, &[("1", &[("x1", 1), ("q1", 1)])]), RationalPoly::zero()],
    };
    expect(
        construct_hamiltonian_vf(&f0, &c).as_ref() == Ok(&repaired),
        "f_0^1 = q x^1 builds the repaired field",
    )?;
    let eta = contraction_omega(&repaired).map_err(|e| e.to_string())?;
    expect(eta.exterior_derivative().is_zero(), "repaired field: d(i_X omega) = 0")?;
    let v = classify(&repaired).map_err(|e| e.to_string())?;
    expect(
        v.status == HamiltonianStatus::LocallyHamiltonian,
        "repaired field is locally, not exactly, hamiltonian",
    )?;
    let f = v.hamiltonian_form.ok_or("repaired hamiltonian form")?;
    expect(f.render() == "-x1*q1 dx2", "repaired field hamiltonian form -q x1 dx2")?;
    expect(f.exterior_derivative() == eta, "repaired field: df = i_X omega")?;
    expect(v.generators.map(|g| g.f0) == Some(f0.f0), "repaired field recovers f_0 = (q x1, 0)")?;
    Ok(count)
}

fn main() -> ExitCode {
    let ctx = Ctx::default();
    let mut results = vec![kernel_identities(&ctx)];

    results.push(criterion(
        2,
        "canonical structure",
        &[
            ("omega_potential", 4),
            ("omega_hat_potential", 4),
            // one random point per trial, 4 charts: 50 points per chart
            ("omega_nondegenerate", 200),
            ("omega_hat_nondegenerate", 200),
        ],
        &ctx,
    ));
    results.push(criterion(
        3,
        "contraction identities",
        &[
            ("contraction_omega", 800),
            ("contraction_theta", 800),
            ("contraction_omega_hat", 800),
            ("contraction_theta_hat", 800),
        ],
        &ctx,
    ));
    results.push(criterion(4, "multisymplectic soundness", &[("construct_sound", 800)], &ctx));
    results.push(criterion(
        5,
        "multisymplectic completeness",
        &[("perturbation", 300), ("symbol_consistency", 200)],
        &ctx,
    ));
    results.push(criterion(
        6,
        "polysymplectic soundness and completeness",
        &[
            ("construct_sound_poly", 800),
            ("perturbation_poly", 300),
            ("exactness_clause_poly", 400),
            ("exactness_clause", 400),
        ],
        &ctx,
    ));
    results.push(criterion(
        7,
        "roundtrips",
        &[
            ("classify_roundtrip", 200),
            ("classify_roundtrip_poly", 200),
            ("solve_roundtrip", 200),
            ("solve_roundtrip_poly", 200),
            ("serialize_form_field", 200),
            ("serialize_generators_verdict", 200),
            ("serialize_poly", 200),
        ],
        &ctx,
    ));
    results.push(criterion(8, "symbol and omega_H", &[("symbol_projection", 4), ("omega_h", 100)], &ctx));

    let examples = worked_examples();
    results.push(Criterion {
        number: 9,
        title: "worked examples",
        passed: examples.is_ok(),
        detail: match examples {
            Ok(n) => format!("{n} exact expectations"),
            Err(what) => format!("mismatch: {what}"),
        },
    });

    let mut all = true;
    for c in &results {
        all &= c.passed;
        println!(
            "criterion {}: {} {} ({})",
            c.number,
            if c.passed { "PASS" } else { "FAIL" },
            c.title,
            c.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
