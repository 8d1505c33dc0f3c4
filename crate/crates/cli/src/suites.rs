//! Randomized property checks over the identities of the kernel and both
//! classification theorems.
//!
//! Each [`Check`] draws a chart and random data from a seeded RNG and either
//! passes or returns a [`Failure`] with serialized inputs. Checks are
//! registered in a fixed order; a check's position in [`registry`] selects
//! its ChaCha stream, so the same `(seed, trial)` reproduces the same
//! instance whether it runs alone or as part of `all`.

use std::collections::BTreeMap;

use multiphase::linalg::{kernel_at, vertical_kernel_at};
use multiphase::multisymplectic::{
    canonical_omega, canonical_theta, classify, construct_hamiltonian_vf, contraction_omega,
    contraction_theta, hamiltonian_form_of, pullback_by_section, solve_inverse, symbol_projection, volume_mu,
    HamiltonianGenerators, HamiltonianStatus,
};
use multiphase::polysymplectic::{
    canonical_omega_hat, canonical_theta_hat, classify_vertical, construct_polyhamiltonian_vf,
    contraction_omega_hat, contraction_theta_hat, hamiltonian_section_of, solve_inverse_poly,
    PolyHamiltonianGenerators,
};
use multiphase::random::{self, Bounds, CHART_SIZES};
use multiphase::{
    homotopy::poincare_homotopy, Chart, ChartKind, ChartRef, DifferentialForm, Polynomial, Rational,
    RationalField, RationalForm, RationalPoly, Witness,
};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::doc::{
    chart_to_doc, field_envelope, form_envelope, generators_envelope, read_field, read_form, read_generators,
    read_verdict, read_vvform, verdict_envelope, vvform_envelope, witness_to_doc, AnyGenerators, ChartDoc,
    Envelope, Verdict, WitnessDoc,
};

/// Deliberate corruptions of the construction formulas, used to show that
/// the harness catches a broken implementation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Flips the sign of the `∂f_0/∂q^i` term in `X_i^μ` (resp. `X_i^a`).
    ConstructSign,
}

impl std::str::FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "construct-sign" => Ok(Mutation::ConstructSign),
            other => Err(format!("unknown mutation {other:?} (construct-sign)")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub bounds: Bounds,
    pub mutation: Option<Mutation>,
    /// Random points per instance in the pointwise non-degeneracy checks.
    pub points: usize,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { bounds: Bounds::default(), mutation: None, points: 50 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub message: String,
    pub chart: ChartDoc,
    pub inputs: BTreeMap<String, Value>,
    pub witness: Option<WitnessDoc>,
}

impl Failure {
    fn new(chart: &Chart, message: impl Into<String>) -> Box<Self> {
        Box::new(Failure {
            message: message.into(),
            chart: chart_to_doc(chart),
            inputs: BTreeMap::new(),
            witness: None,
        })
    }

    fn input(mut self: Box<Self>, name: &str, env: Envelope) -> Box<Self> {
        self.inputs.insert(name.to_string(), serde_json::to_value(env).expect("envelopes serialize"));
        self
    }

    fn with_witness(
        mut self: Box<Self>,
        chart: &Chart,
        label: Option<usize>,
        w: &Witness<Rational>,
    ) -> Box<Self> {
        self.witness = Some(witness_to_doc(chart, label, w));
        self
    }
}

type Outcome = Result<(), Box<Failure>>;
type CheckFn = fn(&mut ChaCha8Rng, &ChartRef, &Ctx) -> Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Kernel,
    Multisymplectic,
    Polysymplectic,
    All,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Kernel => "kernel",
            SuiteName::Multisymplectic => "multisymplectic",
            SuiteName::Polysymplectic => "polysymplectic",
            SuiteName::All => "all",
        }
    }

    fn includes(self, suite: SuiteName) -> bool {
        self == SuiteName::All || self == suite
    }
}

impl std::str::FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "kernel" => Ok(SuiteName::Kernel),
            "multisymplectic" => Ok(SuiteName::Multisymplectic),
            "polysymplectic" => Ok(SuiteName::Polysymplectic),
            "all" => Ok(SuiteName::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

pub struct Check {
    pub name: &'static str,
    pub suite: SuiteName,
    /// Chart kind the check runs on; `None` means either.
    pub kind: Option<ChartKind>,
    /// Smallest base dimension the check applies to.
    pub min_n: usize,
    pub min_npos: usize,
    pub run: CheckFn,
}

impl Check {
    /// The charts this check draws from, in a fixed order.
    pub fn charts(&self) -> Vec<ChartRef> {
        let kinds = match self.kind {
            Some(k) => vec![k],
            None => vec![ChartKind::Extended, ChartKind::Ordinary],
        };
        let mut out = Vec::new();
        for kind in kinds {
            for &(n, npos) in &CHART_SIZES {
                if n < self.min_n || npos < self.min_npos {
                    continue;
                }
                out.push(
                    match kind {
                        ChartKind::Extended => Chart::extended(n, npos),
                        ChartKind::Ordinary => Chart::ordinary(n, npos, n),
                    }
                    .expect("chart sizes are valid"),
                );
            }
        }
        out
    }
}

macro_rules! check {
    ($name:literal, $suite:ident, $kind:expr, $min_n:expr, $min_npos:expr, $run:path) => {
        Check {
            name: $name,
            suite: SuiteName::$suite,
            kind: $kind,
            min_n: $min_n,
            min_npos: $min_npos,
            run: $run,
        }
    };
}

const EXT: Option<ChartKind> = Some(ChartKind::Extended);
const ORD: Option<ChartKind> = Some(ChartKind::Ordinary);

/// Every check, in stream order. Append only: reordering changes which
/// instances a given seed produces.
pub fn registry() -> Vec<Check> {
    vec![
        check!("d_squared", Kernel, None, 1, 1, kernel::d_squared),
        check!("dv_squared", Kernel, None, 1, 1, kernel::dv_squared),
        check!("graded_commutativity", Kernel, None, 1, 1, kernel::graded_commutativity),
        check!("leibniz_d", Kernel, None, 1, 1, kernel::leibniz_d),
        check!("leibniz_dv", Kernel, None, 1, 1, kernel::leibniz_dv),
        check!("interior_twice", Kernel, None, 1, 1, kernel::interior_twice),
        check!("interior_antiderivation", Kernel, None, 1, 1, kernel::interior_antiderivation),
        check!("homotopy_identity", Kernel, None, 1, 1, kernel::homotopy_identity),
        check!("lie_commutes_with_d", Kernel, None, 1, 1, kernel::lie_commutes_with_d),
        check!("serialize_form_field", Kernel, None, 1, 1, kernel::serialize_form_field),
        check!("omega_potential", Multisymplectic, EXT, 1, 1, multi::omega_potential),
        check!("omega_nondegenerate", Multisymplectic, EXT, 1, 1, multi::omega_nondegenerate),
        check!("contraction_omega", Multisymplectic, EXT, 1, 1, multi::contraction_omega_formula),
        check!("contraction_theta", Multisymplectic, EXT, 1, 1, multi::contraction_theta_formula),
        check!("construct_sound", Multisymplectic, EXT, 1, 1, multi::construct_sound),
        check!("perturbation", Multisymplectic, EXT, 2, 1, multi::perturbation),
        check!("exactness_clause", Multisymplectic, EXT, 1, 1, multi::exactness_clause),
        check!("classify_roundtrip", Multisymplectic, EXT, 1, 1, multi::classify_roundtrip),
        check!("solve_roundtrip", Multisymplectic, EXT, 1, 1, multi::solve_roundtrip),
        check!("symbol_projection", Multisymplectic, EXT, 1, 1, multi::symbol),
        check!("symbol_consistency", Multisymplectic, EXT, 1, 1, multi::symbol_consistency),
        check!("omega_h", Multisymplectic, EXT, 1, 1, multi::omega_h),
        check!("serialize_generators_verdict", Multisymplectic, EXT, 1, 1, multi::serialize),
        check!("omega_hat_potential", Polysymplectic, ORD, 1, 1, poly::omega_hat_potential),
        check!("omega_hat_nondegenerate", Polysymplectic, ORD, 1, 1, poly::omega_hat_nondegenerate),
        check!("contraction_omega_hat", Polysymplectic, ORD, 1, 1, poly::contraction_omega_hat_formula),
        check!("contraction_theta_hat", Polysymplectic, ORD, 1, 1, poly::contraction_theta_hat_formula),
        check!("construct_sound_poly", Polysymplectic, ORD, 1, 1, poly::construct_sound),
        check!("perturbation_poly", Polysymplectic, ORD, 2, 1, poly::perturbation),
        check!("exactness_clause_poly", Polysymplectic, ORD, 1, 1, poly::exactness_clause),
        check!("classify_roundtrip_poly", Polysymplectic, ORD, 1, 1, poly::classify_roundtrip),
        check!("solve_roundtrip_poly", Polysymplectic, ORD, 1, 1, poly::solve_roundtrip),
        check!("serialize_poly", Polysymplectic, ORD, 1, 1, poly::serialize),
    ]
}

/// `(stream, check)` pairs of a suite, where `stream` is the registry index.
pub fn checks_of(suite: SuiteName) -> Vec<(u64, Check)> {
    registry()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| suite.includes(c.suite))
        .map(|(k, c)| (k as u64, c))
        .collect()
}

pub fn find_check(name: &str) -> Option<(u64, Check)> {
    registry().into_iter().enumerate().find(|(_, c)| c.name == name).map(|(k, c)| (k as u64, c))
}

/// Runs `check.run`, turning a panic into a failure.
pub fn run_guarded(check: &Check, rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (check.run)(rng, chart, ctx)));
    match result {
        Ok(outcome) => outcome,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            Err(Failure::new(chart, format!("panic: {msg}")))
        }
    }
}

// ---- shared helpers ----

fn var(v: usize) -> RationalPoly {
    Polynomial::var(v)
}

fn energy(chart: &Chart) -> usize {
    chart.energy().expect("extended chart")
}

fn random_degree(rng: &mut ChaCha8Rng, chart: &Chart, lo: usize) -> usize {
    rng.gen_range(lo..=chart.dim().min(3))
}

/// Applies the configured mutation to a field built from `f0`.
fn mutate(x: RationalField, f0: &[RationalPoly], ctx: &Ctx) -> RationalField {
    match ctx.mutation {
        None => x,
        Some(Mutation::ConstructSign) => {
            let chart = x.chart().clone();
            let mut x = x;
            for i in 0..chart.npos() {
                for (a, f) in f0.iter().enumerate() {
                    let fix = f.partial(chart.position(i)).scale(&Rational::from_integer((-2).into()));
                    x.add_component(chart.momentum(i, a), &fix);
                }
            }
            x
        }
    }
}

/// A monomial of positive degree in `violating` times a monomial in
/// `allowed`, total degree at most `max_degree` (at least 1).
fn violation(rng: &mut ChaCha8Rng, violating: &[usize], allowed: &[usize], max_degree: u32) -> RationalPoly {
    let max_degree = max_degree.max(1);
    let bad = random::nonconstant_term(rng, violating, max_degree);
    let bad_degree = bad.total_degree();
    let rest = random::monomial(rng, allowed, max_degree - bad_degree);
    &bad * &Polynomial::term(Rational::from_integer(1.into()), rest)
}

fn momenta(chart: &Chart) -> Vec<usize> {
    (0..chart.dim())
        .filter(|&v| chart.is_vertical(v) && !(0..chart.npos()).any(|i| chart.position(i) == v))
        .collect()
}

mod kernel {
    use super::*;

    pub fn d_squared(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let deg = random_degree(rng, chart, 0);
        let a = random::form(rng, chart, deg, ctx.bounds);
        match a.exterior_derivative().exterior_derivative().witness() {
            None => Ok(()),
            Some(w) => Err(Failure::new(chart, "d(d a) != 0")
                .input("a", form_envelope(&a))
                .with_witness(chart, None, &w)),
        }
    }

    pub fn dv_squared(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let deg = random_degree(rng, chart, 0);
        let a = random::form(rng, chart, deg, ctx.bounds);
        match a.vertical_derivative().vertical_derivative().witness() {
            None => Ok(()),
            Some(w) => Err(Failure::new(chart, "d_V(d_V a) != 0")
                .input("a", form_envelope(&a))
                .with_witness(chart, None, &w)),
        }
    }

    fn pair(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx, lo: usize) -> (RationalForm, RationalForm) {
        let da = random_degree(rng, chart, lo);
        let db = random_degree(rng, chart, lo);
        (random::form(rng, chart, da, ctx.bounds), random::form(rng, chart, db, ctx.bounds))
    }

    fn compare(
        chart: &Chart,
        what: &str,
        lhs: &RationalForm,
        rhs: &RationalForm,
        inputs: &[(&str, &RationalForm)],
    ) -> Outcome {
        let diff = lhs.try_add(&-rhs).map_err(|e| Failure::new(chart, format!("{what}: {e}")))?;
        match diff.witness() {
            None => Ok(()),
            Some(w) => {
                let mut f = Failure::new(chart, format!("{what} fails")).with_witness(chart, None, &w);
                for (name, form) in inputs {
                    f = f.input(name, form_envelope(form));
                }
                Err(f)
            }
        }
    }

    fn sign(k: usize) -> Rational {
        multiphase::scalar::sign(k)
    }

    pub fn graded_commutativity(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let (a, b) = pair(rng, chart, ctx, 0);
        let lhs = a.wedge(&b).expect("same chart");
        let rhs = b.wedge(&a).expect("same chart").scale(&sign(a.degree() * b.degree()));
        compare(chart, "a^b = (-1)^(pq) b^a", &lhs, &rhs, &[("a", &a), ("b", &b)])
    }

    fn leibniz(
        rng: &mut ChaCha8Rng,
        chart: &ChartRef,
        ctx: &Ctx,
        d: fn(&RationalForm) -> RationalForm,
        what: &str,
    ) -> Outcome {
        let (a, b) = pair(rng, chart, ctx, 0);
        let lhs = d(&a.wedge(&b).expect("same chart"));
        let rhs = &d(&a).wedge(&b).expect("same chart")
            + &a.wedge(&d(&b)).expect("same chart").scale(&sign(a.degree()));
        compare(chart, what, &lhs, &rhs, &[("a", &a), ("b", &b)])
    }

    pub fn leibniz_d(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        leibniz(rng, chart, ctx, DifferentialForm::exterior_derivative, "d(a^b) = da^b + (-1)^p a^db")
    }

    pub fn leibniz_dv(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        leibniz(rng, chart, ctx, DifferentialForm::vertical_derivative, "d_V(a^b) = d_V a^b + (-1)^p a^d_V b")
    }

    pub fn interior_twice(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let deg = random_degree(rng, chart, 0);
        let a = random::form(rng, chart, deg, ctx.bounds);
        let x = random::vector_field(rng, chart, false, ctx.bounds);
        let twice = a.interior_product(&x).and_then(|b| b.interior_product(&x)).expect("same chart");
        match twice.witness() {
            None => Ok(()),
            Some(w) => Err(Failure::new(chart, "i_X i_X a != 0")
                .input("a", form_envelope(&a))
                .input("X", field_envelope(&x, None))
                .with_witness(chart, None, &w)),
        }
    }

    pub fn interior_antiderivation(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let (a, b) = pair(rng, chart, ctx, 1);
        let x = random::vector_field(rng, chart, false, ctx.bounds);
        let i = |f: &RationalForm| f.interior_product(&x).expect("same chart");
        let lhs = i(&a.wedge(&b).expect("same chart"));
        let rhs = &i(&a).wedge(&b).expect("same chart")
            + &a.wedge(&i(&b)).expect("same chart").scale(&sign(a.degree()));
        compare(chart, "i_X(a^b) = i_X a^b + (-1)^p a^i_X b", &lhs, &rhs, &[("a", &a), ("b", &b)])
            .map_err(|f| f.input("X", field_envelope(&x, None)))
    }

    pub fn homotopy_identity(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let deg = random_degree(rng, chart, 1);
        let a = random::form(rng, chart, deg, ctx.bounds);
        let ia = poincare_homotopy(&a).expect("positive degree");
        let ida = poincare_homotopy(&a.exterior_derivative()).expect("positive degree");
        let lhs = &ia.exterior_derivative() + &ida;
        compare(chart, "d I a + I d a = a", &lhs, &a, &[("a", &a)])
    }

    pub fn lie_commutes_with_d(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let deg = random_degree(rng, chart, 0);
        let a = random::form(rng, chart, deg, ctx.bounds);
        let x = random::vector_field(rng, chart, false, ctx.bounds);
        let lhs = a.lie_derivative(&x).expect("same chart").exterior_derivative();
        let rhs = a.exterior_derivative().lie_derivative(&x).expect("same chart");
        compare(chart, "d L_X a = L_X d a", &lhs, &rhs, &[("a", &a)])
            .map_err(|f| f.input("X", field_envelope(&x, None)))
    }

    pub fn serialize_form_field(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let deg = random_degree(rng, chart, 0);
        let a = random::form(rng, chart, deg, ctx.bounds);
        let x = random::vector_field(rng, chart, false, ctx.bounds);
        let a_env = form_envelope(&a);
        let x_env = field_envelope(&x, None);
        let a_back = Envelope::parse(a_env.to_json().as_bytes()).and_then(|e| read_form(chart, &e));
        let x_back = Envelope::parse(x_env.to_json().as_bytes()).and_then(|e| read_field(chart, &e));
        match (a_back, x_back) {
            (Ok(a2), Ok(x2)) if a2 == a && x2 == x => Ok(()),
            (a2, x2) => Err(Failure::new(
                chart,
                format!("serialization roundtrip differs: {:?} {:?}", a2.err(), x2.err()),
            )
            .input("a", a_env)
            .input("X", x_env)),
        }
    }
}

mod multi {
    use super::*;

    pub fn omega_potential(_rng: &mut ChaCha8Rng, chart: &ChartRef, _ctx: &Ctx) -> Outcome {
        let omega: RationalForm = canonical_omega(chart).expect("extended");
        let theta: RationalForm = canonical_theta(chart).expect("extended");
        match (&omega + &theta.exterior_derivative()).witness() {
            None => Ok(()),
            Some(w) => Err(Failure::new(chart, "omega != -d theta").with_witness(chart, None, &w)),
        }
    }

    pub fn omega_nondegenerate(rng: &mut ChaCha8Rng, chart: &ChartRef, _ctx: &Ctx) -> Outcome {
        let omega: RationalForm = canonical_omega(chart).expect("extended");
        let pt = random::point(rng, chart);
        let k = kernel_at(&omega, &pt);
        if k.is_empty() {
            Ok(())
        } else {
            Err(Failure::new(
                chart,
                format!("omega has a {}-dimensional kernel at {:?}", k.len(), render_point(&pt)),
            ))
        }
    }

    pub fn contraction_omega_formula(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let x = random::vector_field(rng, chart, false, ctx.bounds);
        let omega: RationalForm = canonical_omega(chart).expect("extended");
        let generic = omega.interior_product(&x).expect("same chart");
        let closed = contraction_omega(&x).expect("extended");
        match (&generic - &closed).witness() {
            None => Ok(()),
            Some(w) => Err(Failure::new(chart, "closed-form i_X omega differs from the generic contraction")
                .input("X", field_envelope(&x, None))
                .with_witness(chart, None, &w)),
        }
    }

    pub fn contraction_theta_formula(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let x = random::vector_field(rng, chart, false, ctx.bounds);
        let theta: RationalForm = canonical_theta(chart).expect("extended");
        let generic = theta.interior_product(&x).expect("same chart");
        let closed = contraction_theta(&x).expect("extended");
        match (&generic - &closed).witness() {
            None => Ok(()),
            Some(w) => Err(Failure::new(chart, "closed-form i_X theta differs from the generic contraction")
                .input("X", field_envelope(&x, None))
                .with_witness(chart, None, &w)),
        }
    }

    fn build(g: &HamiltonianGenerators<Rational>, chart: &ChartRef, ctx: &Ctx) -> RationalField {
        mutate(construct_hamiltonian_vf(g, chart).expect("valid generators"), &g.f0, ctx)
    }

    fn gen_env(chart: &Chart, g: &HamiltonianGenerators<Rational>) -> Envelope {
        generators_envelope(chart, &AnyGenerators::Extended(g.clone()))
    }

    pub fn construct_sound(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let g = random::generators(rng, chart, true, ctx.bounds);
        let x = build(&g, chart, ctx);
        let fail = |msg: &str| {
            Failure::new(chart, msg)
                .input("generators", gen_env(chart, &g))
                .input("X", field_envelope(&x, None))
        };
        let eta = contraction_omega(&x).expect("extended");
        if let Some(w) = eta.exterior_derivative().witness() {
            return Err(fail("d(i_X omega) != 0 for a constructed field").with_witness(chart, None, &w));
        }
        let f = hamiltonian_form_of(&x, &g).map_err(|e| fail(&format!("hamiltonian_form_of: {e}")))?;
        if let Some(w) = (&f.exterior_derivative() - &eta).witness() {
            return Err(fail("i_X omega != df").with_witness(chart, None, &w));
        }

        let g0 = HamiltonianGenerators { f0: vec![Polynomial::zero(); chart.n()], ..g.clone() };
        let x0 = build(&g0, chart, ctx);
        let theta: RationalForm = canonical_theta(chart).expect("extended");
        if let Some(w) = theta.lie_derivative(&x0).expect("same chart").witness() {
            return Err(Failure::new(chart, "L_X theta != 0 with f0 = 0")
                .input("generators", gen_env(chart, &g0))
                .with_witness(chart, None, &w));
        }
        Ok(())
    }

    pub fn perturbation(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let g = random::generators(rng, chart, true, ctx.bounds);
        let mut x = build(&g, chart, ctx);
        let base: Vec<usize> = chart.base_indices().collect();
        let positions: Vec<usize> = (0..chart.npos()).map(|i| chart.position(i)).collect();
        let xq = random::base_and_positions(chart);
        let p_vars = momenta(chart);
        // kinds: 0 = p-dependent X^i, 1 = p-dependent X^mu, 2 = q-dependent X^mu (N > 1)
        let kinds = if chart.npos() > 1 { 3 } else { 2 };
        let (target, delta, what) = match rng.gen_range(0..kinds) {
            0 => {
                let i = rng.gen_range(0..chart.npos());
                (
                    chart.position(i),
                    violation(rng, &p_vars, &xq, ctx.bounds.max_degree),
                    "momentum-dependent X^i",
                )
            }
            1 => {
                let mu = rng.gen_range(0..chart.n());
                (
                    chart.base(mu),
                    violation(rng, &p_vars, &xq, ctx.bounds.max_degree),
                    "momentum-dependent X^mu",
                )
            }
            _ => {
                let mu = rng.gen_range(0..chart.n());
                (
                    chart.base(mu),
                    violation(rng, &positions, &base, ctx.bounds.max_degree),
                    "position-dependent X^mu",
                )
            }
        };
        x.add_component(target, &delta);
        let fail = |msg: String| {
            Failure::new(chart, msg)
                .input("generators", gen_env(chart, &g))
                .input("X", field_envelope(&x, None))
        };
        let closed = contraction_omega(&x).expect("extended").exterior_derivative();
        let verdict = classify(&x).map_err(|e| fail(format!("{what}: classify failed: {e}")))?;
        match (verdict.status, verdict.witness) {
            (HamiltonianStatus::NotHamiltonian, Some(w)) => {
                let actual = closed.coefficient(&w.index).coefficient(&w.monomial).cloned();
                if actual.as_ref() != Some(&w.coefficient) || w.coefficient.is_zero() {
                    return Err(fail(format!("{what}: witness does not match d(i_X omega)"))
                        .with_witness(chart, None, &w));
                }
                Ok(())
            }
            (status, _) => Err(fail(format!("{what}: perturbed field classified {}", status.as_str()))),
        }
    }

    /// `f_0` that is zero, pure gauge (x-only and divergence free), or random.
    fn f0_mixed(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Vec<RationalPoly> {
        let n = chart.n();
        match rng.gen_range(0..3) {
            0 => vec![Polynomial::zero(); n],
            1 => {
                let mut f0: Vec<RationalPoly> =
                    (0..n).map(|_| random::polynomial(rng, &[], ctx.bounds)).collect();
                if n >= 2 {
                    let base: Vec<usize> = chart.base_indices().collect();
                    let phi = random::polynomial(rng, &base, ctx.bounds);
                    f0[0] += &phi.partial(chart.base(1));
                    f0[1] -= &phi.partial(chart.base(0));
                }
                f0
            }
            _ => random::generators(rng, chart, true, ctx.bounds).f0,
        }
    }

    /// `∂f_0^μ/∂q^i` for all `(μ, i)` and `Σ_μ ∂f_0^μ/∂x^μ`: what the field pins.
    fn pinned(chart: &Chart, f0: &[RationalPoly]) -> (Vec<RationalPoly>, RationalPoly) {
        let mut dq = Vec::new();
        let mut div = Polynomial::zero();
        for (mu, f) in f0.iter().enumerate() {
            for i in 0..chart.npos() {
                dq.push(f.partial(chart.position(i)));
            }
            div += &f.partial(chart.base(mu));
        }
        (dq, div)
    }

    pub fn exactness_clause(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let mut g = random::generators(rng, chart, false, ctx.bounds);
        g.f0 = f0_mixed(rng, chart, ctx);
        let x = build(&g, chart, ctx);
        let fail = |msg: &str| Failure::new(chart, msg).input("generators", gen_env(chart, &g));
        let theta: RationalForm = canonical_theta(chart).expect("extended");
        let lie_theta = theta.lie_derivative(&x).expect("same chart");
        let (dq, div) = pinned(chart, &g.f0);
        let gauge = dq.iter().all(Polynomial::is_zero) && div.is_zero();
        if lie_theta.is_zero() != gauge {
            return Err(fail(&format!(
                "L_X theta = 0 is {} but f0 pure gauge is {gauge}",
                lie_theta.is_zero()
            )));
        }
        if lie_theta.is_zero() {
            let omega: RationalForm = canonical_omega(chart).expect("extended");
            if let Some(w) = omega.lie_derivative(&x).expect("same chart").witness() {
                return Err(fail("L_X theta = 0 but L_X omega != 0").with_witness(chart, None, &w));
            }
        }
        Ok(())
    }

    pub fn classify_roundtrip(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let mut g = random::generators(rng, chart, false, ctx.bounds);
        g.f0 = f0_mixed(rng, chart, ctx);
        let x = build(&g, chart, ctx);
        let fail = |msg: &str| Failure::new(chart, msg).input("generators", gen_env(chart, &g));
        let v = classify(&x).map_err(|e| fail(&format!("classify: {e}")))?;
        if !v.status.is_hamiltonian() {
            let f = fail("constructed field classified not_hamiltonian");
            return Err(match &v.witness {
                Some(w) => f.with_witness(chart, None, w),
                None => f,
            });
        }
        let Some(r) = &v.generators else {
            return Err(fail("no generators recovered"));
        };
        if r.xmu != g.xmu || r.xi != g.xi {
            return Err(fail("recovered X^mu or X^i differ"));
        }
        if pinned(chart, &r.f0) != pinned(chart, &g.f0) {
            return Err(fail("recovered f0 differs in dq or divergence"));
        }
        let (dq, div) = pinned(chart, &g.f0);
        let exact = dq.iter().all(Polynomial::is_zero) && div.is_zero();
        if exact != (v.status == HamiltonianStatus::ExactHamiltonian) {
            return Err(fail(&format!("status {} but f0 pure gauge is {exact}", v.status.as_str())));
        }
        let f = v.hamiltonian_form.as_ref().expect("hamiltonian verdicts carry a form");
        if f.exterior_derivative() != contraction_omega(&x).expect("extended") {
            return Err(fail("verdict form is not a primitive of i_X omega"));
        }
        Ok(())
    }

    pub fn solve_roundtrip(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let g = random::generators(rng, chart, true, ctx.bounds);
        let x = build(&g, chart, ctx);
        let fail = |msg: String| Failure::new(chart, msg).input("generators", gen_env(chart, &g));
        let f = hamiltonian_form_of(&x, &g).map_err(|e| fail(format!("hamiltonian_form_of: {e}")))?;
        let back =
            solve_inverse(&f.exterior_derivative()).map_err(|e| fail(format!("solve_inverse: {e}")))?;
        if back != x {
            return Err(fail("solve_inverse(d f) != X".into()).input("solved", field_envelope(&back, None)));
        }
        Ok(())
    }

    pub fn symbol(_rng: &mut ChaCha8Rng, chart: &ChartRef, _ctx: &Ctx) -> Outcome {
        let (ord, hat) =
            symbol_projection::<Rational>(chart).map_err(|e| Failure::new(chart, format!("symbol: {e}")))?;
        let expected = Chart::ordinary(chart.n(), chart.npos(), chart.n()).expect("valid");
        if *ord != *expected {
            return Err(Failure::new(chart, format!("symbol chart {ord} != {expected}")));
        }
        if hat != canonical_omega_hat(&expected).expect("ordinary") {
            return Err(Failure::new(chart, "symbol of omega differs from omega_hat")
                .input("symbol", vvform_envelope(&hat)));
        }
        Ok(())
    }

    /// Builds a vertical field from polysymplectic generators on the symbol
    /// chart, sometimes spoils it, and lifts it to the extended chart with
    /// `X_0 = ∂_μ f_0^μ − p_i^μ ∂_μ X^i`. Both verdicts must agree, and the
    /// two-vertical block of `d(i_X ω)` must match `d_V(i_X ω̂)`.
    pub fn symbol_consistency(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let ord = Chart::ordinary(chart.n(), chart.npos(), chart.n()).expect("valid");
        let g = random::poly_generators(rng, &ord, true, ctx.bounds);
        let mut xh = construct_polyhamiltonian_vf(&g, &ord).expect("valid generators");
        if chart.n() >= 2 && rng.gen_bool(0.5) {
            let i = rng.gen_range(0..ord.npos());
            let delta =
                violation(rng, &momenta(&ord), &random::base_and_positions(&ord), ctx.bounds.max_degree);
            xh.add_component(ord.position(i), &delta);
        }
        let mut x = xh.transport(chart, Some).expect("ordinary coordinates embed");
        let mut x0 = Polynomial::zero();
        for (mu, f) in g.f0.iter().enumerate() {
            x0 += &f.partial(chart.base(mu));
            for i in 0..chart.npos() {
                x0 -=
                    &(&var(chart.momentum(i, mu)) * &x.component(chart.position(i)).partial(chart.base(mu)));
            }
        }
        x.set(energy(chart), x0);
        let fail = |msg: String| {
            Failure::new(chart, msg)
                .input("generators", generators_envelope(&ord, &AnyGenerators::Ordinary(g.clone())))
                .input("X", field_envelope(&x, None))
        };

        let ext = classify(&x).map_err(|e| fail(format!("classify: {e}")))?;
        let hat = classify_vertical(&xh).map_err(|e| fail(format!("classify_vertical: {e}")))?;
        if ext.status.is_hamiltonian() != hat.status.is_hamiltonian() {
            return Err(fail(format!(
                "extended verdict {} vs symbol verdict {}",
                ext.status.as_str(),
                hat.status.as_str()
            )));
        }

        let closed = contraction_omega(&x).expect("extended").exterior_derivative();
        let closed_hat = contraction_omega_hat(&xh).expect("vertical").vertical_derivative();
        let vertical: Vec<usize> = (0..ord.dim()).filter(|&v| ord.is_vertical(v)).collect();
        for mu in 0..chart.n() {
            let vmu = volume_mu::<Rational>(chart, mu);
            for (k, &a) in vertical.iter().enumerate() {
                for &b in &vertical[k + 1..] {
                    let basis = DifferentialForm::basis(chart, &[a, b]).wedge(&vmu).expect("same chart");
                    let lhs = closed.coefficient_along(&basis);
                    let idx = multiphase::MultiIndex::new(vec![a, b]).expect("increasing");
                    let rhs = closed_hat.component(mu).coefficient(&idx);
                    if lhs != rhs {
                        return Err(fail(format!(
                            "block d{}^d{} of d(i_X omega) along d^n x_{} differs from d_V(i_X omega_hat)",
                            chart.name(a),
                            chart.name(b),
                            mu + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn omega_h(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let h = random::hamiltonian(rng, chart, ctx.bounds);
        let fail = |msg: String| Failure::new(chart, format!("{msg} for H = {}", h.render(chart.names())));
        let omega_h = pullback_by_section(&h, chart).map_err(|e| fail(format!("pullback: {e}")))?;
        if let Some(w) = omega_h.exterior_derivative().witness() {
            return Err(fail("d omega_H != 0".into()).with_witness(chart, None, &w));
        }
        // n = 1: a 2-form on an odd-dimensional chart always has a kernel,
        // spanned by the hamiltonian flow direction
        let expected = if chart.n() == 1 { 1 } else { 0 };
        for _ in 0..ctx.points {
            let pt = random::point(rng, omega_h.chart());
            let k = kernel_at(&omega_h, &pt);
            if k.len() != expected {
                return Err(fail(format!(
                    "omega_H has a {}-dimensional kernel at {:?}",
                    k.len(),
                    render_point(&pt)
                ))
                .input("omega_H", form_envelope(&omega_h)));
            }
        }
        Ok(())
    }

    pub fn serialize(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let g = AnyGenerators::Extended(random::generators(rng, chart, true, ctx.bounds));
        let g_env = generators_envelope(chart, &g);
        let g_back = Envelope::parse(g_env.to_json().as_bytes()).and_then(|e| read_generators(chart, &e));
        if g_back.as_ref() != Ok(&g) {
            return Err(Failure::new(chart, format!("generators roundtrip differs: {:?}", g_back.err()))
                .input("generators", g_env));
        }
        let x = if rng.gen_bool(0.5) {
            random::vector_field(rng, chart, false, ctx.bounds)
        } else {
            let AnyGenerators::Extended(g) = &g else { unreachable!() };
            construct_hamiltonian_vf(g, chart).expect("valid generators")
        };
        let v: Verdict = classify(&x).map_err(|e| Failure::new(chart, format!("classify: {e}")))?.into();
        roundtrip_verdict(chart, &v).map_err(|f| f.input("X", field_envelope(&x, None)))
    }
}

fn roundtrip_verdict(chart: &ChartRef, v: &Verdict) -> Outcome {
    let env = verdict_envelope(chart, v);
    let back = Envelope::parse(env.to_json().as_bytes()).and_then(|e| read_verdict(chart, &e));
    if back.as_ref() != Ok(v) {
        return Err(
            Failure::new(chart, format!("verdict roundtrip differs: {:?}", back.err())).input("verdict", env)
        );
    }
    Ok(())
}

fn render_point(pt: &multiphase::Point<Rational>) -> Vec<String> {
    pt.values().iter().map(multiphase::scalar::format_rational).collect()
}

mod poly {
    use super::*;
    use multiphase::RationalVvForm;

    fn vv_witness(chart: &Chart, msg: &str, f: &RationalVvForm) -> Outcome {
        match f.witness() {
            None => Ok(()),
            Some((a, w)) => Err(Failure::new(chart, msg).with_witness(chart, Some(a), &w)),
        }
    }

    pub fn omega_hat_potential(_rng: &mut ChaCha8Rng, chart: &ChartRef, _ctx: &Ctx) -> Outcome {
        let om: RationalVvForm = canonical_omega_hat(chart).expect("ordinary");
        let th: RationalVvForm = canonical_theta_hat(chart).expect("ordinary");
        vv_witness(
            chart,
            "omega_hat != -d_V theta_hat",
            &om.try_add(&th.vertical_derivative()).expect("same shape"),
        )
    }

    pub fn omega_hat_nondegenerate(rng: &mut ChaCha8Rng, chart: &ChartRef, _ctx: &Ctx) -> Outcome {
        let om: RationalVvForm = canonical_omega_hat(chart).expect("ordinary");
        let pt = random::point(rng, chart);
        let k = vertical_kernel_at(&om, &pt);
        if k.is_empty() {
            Ok(())
        } else {
            Err(Failure::new(
                chart,
                format!("omega_hat has a {}-dimensional vertical kernel at {:?}", k.len(), render_point(&pt)),
            ))
        }
    }

    pub fn contraction_omega_hat_formula(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let x = random::vector_field(rng, chart, true, ctx.bounds);
        let om: RationalVvForm = canonical_omega_hat(chart).expect("ordinary");
        let generic = om.interior_product(&x).expect("same chart");
        let closed = contraction_omega_hat(&x).expect("vertical");
        vv_witness(
            chart,
            "closed-form i_X omega_hat differs",
            &generic.try_add(&closed.neg()).expect("same shape"),
        )
        .map_err(|f| f.input("X", field_envelope(&x, None)))
    }

    pub fn contraction_theta_hat_formula(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let x = random::vector_field(rng, chart, true, ctx.bounds);
        let th: RationalVvForm = canonical_theta_hat(chart).expect("ordinary");
        let generic = th.interior_product(&x).expect("same chart");
        let closed = contraction_theta_hat(&x).expect("vertical");
        vv_witness(
            chart,
            "closed-form i_X theta_hat differs",
            &generic.try_add(&closed.neg()).expect("same shape"),
        )
        .map_err(|f| f.input("X", field_envelope(&x, None)))
    }

    fn build(g: &PolyHamiltonianGenerators<Rational>, chart: &ChartRef, ctx: &Ctx) -> RationalField {
        mutate(construct_polyhamiltonian_vf(g, chart).expect("valid generators"), &g.f0, ctx)
    }

    fn gen_env(chart: &Chart, g: &PolyHamiltonianGenerators<Rational>) -> Envelope {
        generators_envelope(chart, &AnyGenerators::Ordinary(g.clone()))
    }

    pub fn construct_sound(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let g = random::poly_generators(rng, chart, true, ctx.bounds);
        let x = build(&g, chart, ctx);
        let with =
            |f: Box<Failure>| f.input("generators", gen_env(chart, &g)).input("X", field_envelope(&x, None));
        let eta = contraction_omega_hat(&x).expect("vertical");
        vv_witness(chart, "d_V(i_X omega_hat) != 0 for a constructed field", &eta.vertical_derivative())
            .map_err(with)?;
        hamiltonian_section_of(&x, &g)
            .map_err(|e| with(Failure::new(chart, format!("hamiltonian_section_of: {e}"))))?;

        let g0 = PolyHamiltonianGenerators { f0: vec![Polynomial::zero(); chart.nhat()], ..g.clone() };
        let x0 = build(&g0, chart, ctx);
        let th: RationalVvForm = canonical_theta_hat(chart).expect("ordinary");
        vv_witness(
            chart,
            "L_X theta_hat != 0 with f0 = 0",
            &th.vertical_lie_derivative(&x0).expect("vertical"),
        )
        .map_err(|f| f.input("generators", gen_env(chart, &g0)))
    }

    pub fn perturbation(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let g = random::poly_generators(rng, chart, true, ctx.bounds);
        let mut x = build(&g, chart, ctx);
        let i = rng.gen_range(0..chart.npos());
        let delta =
            violation(rng, &momenta(chart), &random::base_and_positions(chart), ctx.bounds.max_degree);
        x.add_component(chart.position(i), &delta);
        let fail = |msg: String| {
            Failure::new(chart, msg)
                .input("generators", gen_env(chart, &g))
                .input("X", field_envelope(&x, None))
        };
        let closed = contraction_omega_hat(&x).expect("vertical").vertical_derivative();
        let verdict = classify_vertical(&x).map_err(|e| fail(format!("classify_vertical: {e}")))?;
        match (verdict.status, verdict.witness) {
            (HamiltonianStatus::NotHamiltonian, Some((a, w))) => {
                let actual = closed.component(a).coefficient(&w.index).coefficient(&w.monomial).cloned();
                if actual.as_ref() != Some(&w.coefficient) || w.coefficient.is_zero() {
                    return Err(fail("witness does not match d_V(i_X omega_hat)".into()).with_witness(
                        chart,
                        Some(a),
                        &w,
                    ));
                }
                Ok(())
            }
            (status, _) => Err(fail(format!("momentum-dependent X^i classified {}", status.as_str()))),
        }
    }

    fn f0_mixed(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Vec<RationalPoly> {
        let base: Vec<usize> = chart.base_indices().collect();
        match rng.gen_range(0..3) {
            0 => vec![Polynomial::zero(); chart.nhat()],
            1 => (0..chart.nhat()).map(|_| random::polynomial(rng, &base, ctx.bounds)).collect(),
            _ => random::poly_generators(rng, chart, true, ctx.bounds).f0,
        }
    }

    fn dq(chart: &Chart, f0: &[RationalPoly]) -> Vec<RationalPoly> {
        f0.iter().flat_map(|f| (0..chart.npos()).map(move |i| f.partial(chart.position(i)))).collect()
    }

    pub fn exactness_clause(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let mut g = random::poly_generators(rng, chart, false, ctx.bounds);
        g.f0 = f0_mixed(rng, chart, ctx);
        let x = build(&g, chart, ctx);
        let fail = |msg: &str| Failure::new(chart, msg).input("generators", gen_env(chart, &g));
        let th: RationalVvForm = canonical_theta_hat(chart).expect("ordinary");
        let lie = th.vertical_lie_derivative(&x).expect("vertical");
        let gauge = dq(chart, &g.f0).iter().all(Polynomial::is_zero);
        if lie.is_zero() != gauge {
            return Err(fail(&format!(
                "L_X theta_hat = 0 is {} but f0 pure gauge is {gauge}",
                lie.is_zero()
            )));
        }
        if lie.is_zero() {
            let om: RationalVvForm = canonical_omega_hat(chart).expect("ordinary");
            vv_witness(
                chart,
                "L_X theta_hat = 0 but L_X omega_hat != 0",
                &om.vertical_lie_derivative(&x).expect("vertical"),
            )
            .map_err(|f| f.input("generators", gen_env(chart, &g)))?;
        }
        Ok(())
    }

    pub fn classify_roundtrip(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let mut g = random::poly_generators(rng, chart, false, ctx.bounds);
        g.f0 = f0_mixed(rng, chart, ctx);
        let x = build(&g, chart, ctx);
        let fail = |msg: &str| Failure::new(chart, msg).input("generators", gen_env(chart, &g));
        let v = classify_vertical(&x).map_err(|e| fail(&format!("classify_vertical: {e}")))?;
        if !v.status.is_hamiltonian() {
            return Err(fail("constructed field classified not_hamiltonian"));
        }
        let Some(r) = &v.generators else {
            return Err(fail("no generators recovered"));
        };
        if r.xi != g.xi || dq(chart, &r.f0) != dq(chart, &g.f0) {
            return Err(fail("recovered X^i or dq f0 differ"));
        }
        let exact = dq(chart, &g.f0).iter().all(Polynomial::is_zero);
        if exact != (v.status == HamiltonianStatus::ExactHamiltonian) {
            return Err(fail(&format!("status {} but f0 pure gauge is {exact}", v.status.as_str())));
        }
        let section = v.hamiltonian_section.as_ref().expect("hamiltonian verdicts carry a section");
        if section.vertical_derivative() != contraction_omega_hat(&x).expect("vertical") {
            return Err(fail("verdict section is not a d_V-primitive of i_X omega_hat"));
        }
        Ok(())
    }

    pub fn solve_roundtrip(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let g = random::poly_generators(rng, chart, true, ctx.bounds);
        let x = build(&g, chart, ctx);
        let fail = |msg: String| Failure::new(chart, msg).input("generators", gen_env(chart, &g));
        let f = hamiltonian_section_of(&x, &g).map_err(|e| fail(format!("hamiltonian_section_of: {e}")))?;
        let back = solve_inverse_poly(&f.vertical_derivative())
            .map_err(|e| fail(format!("solve_inverse_poly: {e}")))?;
        if back != x {
            return Err(
                fail("solve_inverse_poly(d_V f) != X".into()).input("solved", field_envelope(&back, None))
            );
        }
        Ok(())
    }

    pub fn serialize(rng: &mut ChaCha8Rng, chart: &ChartRef, ctx: &Ctx) -> Outcome {
        let pg = random::poly_generators(rng, chart, true, ctx.bounds);
        let g = AnyGenerators::Ordinary(pg.clone());
        let g_env = generators_envelope(chart, &g);
        let g_back = Envelope::parse(g_env.to_json().as_bytes()).and_then(|e| read_generators(chart, &e));
        if g_back.as_ref() != Ok(&g) {
            return Err(Failure::new(chart, format!("generators roundtrip differs: {:?}", g_back.err()))
                .input("generators", g_env));
        }
        let labels = chart.basis_labels();
        let deg = rng.gen_range(0..=2);
        let comps = labels.iter().map(|_| random::form(rng, chart, deg, ctx.bounds)).collect();
        let vv = RationalVvForm::new(chart, labels, comps).expect("same chart");
        let vv_env = vvform_envelope(&vv);
        let vv_back = Envelope::parse(vv_env.to_json().as_bytes()).and_then(|e| read_vvform(chart, &e));
        if vv_back.as_ref() != Ok(&vv) {
            return Err(Failure::new(chart, format!("vvform roundtrip differs: {:?}", vv_back.err()))
                .input("vvform", vv_env));
        }
        let x = if rng.gen_bool(0.5) {
            random::vector_field(rng, chart, true, ctx.bounds)
        } else {
            construct_polyhamiltonian_vf(&pg, chart).expect("valid generators")
        };
        let v: Verdict =
            classify_vertical(&x).map_err(|e| Failure::new(chart, format!("classify_vertical: {e}")))?.into();
        roundtrip_verdict(chart, &v).map_err(|f| f.input("X", field_envelope(&x, None)))
    }
}
