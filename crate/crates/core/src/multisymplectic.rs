//! Extended multiphase space: the multisymplectic form
//! `ω = dq^i ∧ dp_i^μ ∧ d^n x_μ − dp ∧ d^n x`, its potential `θ`, and the
//! classification of vector fields that preserve `ω`.
//!
//! Sign convention for the gauge coefficients `f_0^μ`: the construction uses
//! `X_i^μ = … + ∂f_0^μ/∂q^i` and `X_0 = … + ∂f_0^μ/∂x^μ`, and the hamiltonian
//! form carrying the same field is `f^μ = p_i^μ X^i + p X^μ − f_0^μ`, which is
//! the sign that makes `i_X ω = df` hold.

use std::collections::BTreeMap;

use crate::chart::{Chart, ChartKind, ChartRef, Point};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::form::{DifferentialForm, Witness};
use crate::homotopy::{poincare_homotopy, vertical_homotopy};
use crate::linalg::kernel_along;
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::vvform::VectorValuedForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HamiltonianStatus {
    NotHamiltonian,
    /// `i_X ω` is closed. On a chart this is the same as globally hamiltonian.
    LocallyHamiltonian,
    /// `L_X θ = 0`.
    ExactHamiltonian,
}

impl HamiltonianStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            HamiltonianStatus::NotHamiltonian => "not_hamiltonian",
            HamiltonianStatus::LocallyHamiltonian => "locally_hamiltonian",
            HamiltonianStatus::ExactHamiltonian => "exact_hamiltonian",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "not_hamiltonian" => Some(HamiltonianStatus::NotHamiltonian),
            "locally_hamiltonian" => Some(HamiltonianStatus::LocallyHamiltonian),
            "exact_hamiltonian" => Some(HamiltonianStatus::ExactHamiltonian),
            _ => None,
        }
    }

    pub fn is_hamiltonian(self) -> bool {
        self != HamiltonianStatus::NotHamiltonian
    }
}

/// `d^n x = dx^1 ∧ … ∧ dx^n`.
pub fn volume<S: Scalar>(chart: &ChartRef) -> DifferentialForm<S> {
    let base: Vec<usize> = chart.base_indices().collect();
    DifferentialForm::basis(chart, &base)
}

/// `d^n x_μ = i_{∂_μ} d^n x` (zero-based `mu`).
pub fn volume_mu<S: Scalar>(chart: &ChartRef, mu: usize) -> DifferentialForm<S> {
    let e = VectorField::coordinate(chart, chart.base(mu));
    volume(chart).interior_product(&e).expect("same chart")
}

/// `d^n x_{μν} = i_{∂_ν} i_{∂_μ} d^n x`; zero when `n = 1` or `μ = ν`.
pub fn volume_mu_nu<S: Scalar>(chart: &ChartRef, mu: usize, nu: usize) -> DifferentialForm<S> {
    let e = VectorField::coordinate(chart, chart.base(nu));
    volume_mu(chart, mu).interior_product(&e).expect("same chart")
}

fn var<S: Scalar>(v: usize) -> Polynomial<S> {
    Polynomial::var(v)
}

fn d<S: Scalar>(chart: &ChartRef, v: usize) -> DifferentialForm<S> {
    DifferentialForm::differential(chart, v)
}

fn wedge<S: Scalar>(a: &DifferentialForm<S>, b: &DifferentialForm<S>) -> DifferentialForm<S> {
    a.wedge(b).expect("same chart")
}

fn energy(chart: &Chart) -> usize {
    chart.energy().expect("extended chart has an energy coordinate")
}

/// `θ = p_i^μ dq^i ∧ d^n x_μ + p d^n x`.
pub fn canonical_theta<S: Scalar>(chart: &ChartRef) -> Result<DifferentialForm<S>> {
    chart.require(ChartKind::Extended)?;
    let mut theta = volume(chart).mul_function(&var(energy(chart)));
    for i in 0..chart.npos() {
        for mu in 0..chart.n() {
            let t = wedge(&d(chart, chart.position(i)), &volume_mu(chart, mu))
                .mul_function(&var(chart.momentum(i, mu)));
            theta = &theta + &t;
        }
    }
    Ok(theta)
}

/// `ω = dq^i ∧ dp_i^μ ∧ d^n x_μ − dp ∧ d^n x`.
pub fn canonical_omega<S: Scalar>(chart: &ChartRef) -> Result<DifferentialForm<S>> {
    chart.require(ChartKind::Extended)?;
    let mut omega = -wedge(&d(chart, energy(chart)), &volume(chart));
    for i in 0..chart.npos() {
        for mu in 0..chart.n() {
            let dqdp = wedge(&d(chart, chart.position(i)), &d(chart, chart.momentum(i, mu)));
            omega = &omega + &wedge(&dqdp, &volume_mu(chart, mu));
        }
    }
    Ok(omega)
}

/// Components of a vector field on an extended chart, named by role.
struct Components<S> {
    xmu: Vec<Polynomial<S>>,
    xi: Vec<Polynomial<S>>,
    xi_mu: Vec<Vec<Polynomial<S>>>,
    x0: Polynomial<S>,
}

fn components<S: Scalar>(x: &VectorField<S>) -> Components<S> {
    let c = x.chart();
    Components {
        xmu: (0..c.n()).map(|mu| x.component(c.base(mu))).collect(),
        xi: (0..c.npos()).map(|i| x.component(c.position(i))).collect(),
        xi_mu: (0..c.npos()).map(|i| (0..c.n()).map(|mu| x.component(c.momentum(i, mu))).collect()).collect(),
        x0: x.component(energy(c)),
    }
}

/// `i_X ω`, assembled term by term from its closed-form expansion
/// `X^ν dq^i∧dp_i^μ∧d^n x_{μν} − X_i^μ dq^i∧d^n x_μ + X^i dp_i^μ∧d^n x_μ
///  + X^μ dp∧d^n x_μ − X_0 d^n x`.
pub fn contraction_omega<S: Scalar>(x: &VectorField<S>) -> Result<DifferentialForm<S>> {
    let chart = x.chart();
    chart.require(ChartKind::Extended)?;
    let c = components(x);
    let (n, npos) = (chart.n(), chart.npos());
    let mut out = -volume(chart).mul_function(&c.x0);
    for i in 0..npos {
        let dq = d(chart, chart.position(i));
        for mu in 0..n {
            let dp = d(chart, chart.momentum(i, mu));
            let vmu = volume_mu(chart, mu);
            for nu in (0..n).filter(|&nu| nu != mu) {
                let t = wedge(&wedge(&dq, &dp), &volume_mu_nu(chart, mu, nu));
                out = &out + &t.mul_function(&c.xmu[nu]);
            }
            out = &out - &wedge(&dq, &vmu).mul_function(&c.xi_mu[i][mu]);
            out = &out + &wedge(&dp, &vmu).mul_function(&c.xi[i]);
        }
    }
    let de = d(chart, energy(chart));
    for mu in 0..n {
        out = &out + &wedge(&de, &volume_mu(chart, mu)).mul_function(&c.xmu[mu]);
    }
    Ok(out)
}

/// `i_X θ = (p_i^μ X^i + p X^μ) d^n x_μ − p_i^μ X^ν dq^i∧d^n x_{μν}`.
pub fn contraction_theta<S: Scalar>(x: &VectorField<S>) -> Result<DifferentialForm<S>> {
    let chart = x.chart();
    chart.require(ChartKind::Extended)?;
    let c = components(x);
    let (n, npos) = (chart.n(), chart.npos());
    let p = var(energy(chart));
    let mut out = DifferentialForm::zero(chart, n - 1);
    for mu in 0..n {
        let mut coef = &p * &c.xmu[mu];
        for i in 0..npos {
            coef += &(&var(chart.momentum(i, mu)) * &c.xi[i]);
        }
        out = &out + &volume_mu(chart, mu).mul_function(&coef);
        for i in 0..npos {
            let pim = var(chart.momentum(i, mu));
            for nu in (0..n).filter(|&nu| nu != mu) {
                let t = wedge(&d(chart, chart.position(i)), &volume_mu_nu(chart, mu, nu));
                out = &out - &t.mul_function(&(&pim * &c.xmu[nu]));
            }
        }
    }
    Ok(out)
}

/// The free data of a locally hamiltonian field: `X^μ`, `X^i` and `f_0^μ`,
/// none depending on multimomenta or energy.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianGenerators<S> {
    pub xmu: Vec<Polynomial<S>>,
    pub xi: Vec<Polynomial<S>>,
    pub f0: Vec<Polynomial<S>>,
}

impl<S: Scalar> HamiltonianGenerators<S> {
    pub fn zero(chart: &Chart) -> Self {
        HamiltonianGenerators {
            xmu: vec![Polynomial::zero(); chart.n()],
            xi: vec![Polynomial::zero(); chart.npos()],
            f0: vec![Polynomial::zero(); chart.n()],
        }
    }

    /// Checks lengths and the dependence restrictions: nothing may depend on
    /// `p_k^κ` or `p`, and for `N > 1` the `X^μ` may depend on `x` only.
    pub fn validate(&self, chart: &Chart) -> Result<()> {
        chart.require(ChartKind::Extended)?;
        if self.xmu.len() != chart.n() || self.f0.len() != chart.n() || self.xi.len() != chart.npos() {
            return Err(Error::InvalidGenerators(format!(
                "expected {} X^mu, {} X^i, {} f0 entries",
                chart.n(),
                chart.npos(),
                chart.n()
            )));
        }
        let in_chart = |p: &Polynomial<S>| p.variables().iter().all(|&v| v < chart.dim());
        let momentum = |v: usize| v >= chart.n() + chart.npos();
        let position = |v: usize| v >= chart.n() && v < chart.n() + chart.npos();
        let groups = [("X^mu", &self.xmu), ("X^i", &self.xi), ("f0", &self.f0)];
        for (label, polys) in groups {
            for (k, p) in polys.iter().enumerate() {
                if !in_chart(p) {
                    return Err(Error::InvalidGenerators(format!(
                        "{label}[{}] uses unknown variables",
                        k + 1
                    )));
                }
                if p.depends_on_any(momentum) {
                    return Err(Error::InvalidGenerators(format!(
                        "{label}[{}] depends on a multimomentum or the energy",
                        k + 1
                    )));
                }
            }
        }
        if chart.npos() > 1 {
            if let Some(mu) = self.xmu.iter().position(|p| p.depends_on_any(position)) {
                return Err(Error::InvalidGenerators(format!(
                    "X^mu[{}] depends on a position variable while N > 1",
                    mu + 1
                )));
            }
        }
        Ok(())
    }
}

/// Builds the locally hamiltonian field determined by `g`:
///
/// `X_i^μ = −p ∂_i X^μ − p_j^μ ∂_i X^j + p_i^ν ∂_ν X^μ − p_i^μ ∂_ν X^ν + ∂_i f_0^μ`
/// (the `p` term only for `N = 1`) and
/// `X_0 = −p ∂_μ X^μ − p_i^μ ∂_μ X^i + ∂_μ f_0^μ`.
pub fn construct_hamiltonian_vf<S: Scalar>(
    g: &HamiltonianGenerators<S>,
    chart: &ChartRef,
) -> Result<VectorField<S>> {
    g.validate(chart)?;
    let (n, npos) = (chart.n(), chart.npos());
    let p = var::<S>(energy(chart));
    let mut x = VectorField::zero(chart);
    for mu in 0..n {
        x.set(chart.base(mu), g.xmu[mu].clone());
    }
    for i in 0..npos {
        x.set(chart.position(i), g.xi[i].clone());
    }
    let div_x: Polynomial<S> =
        (0..n).fold(Polynomial::zero(), |acc, nu| &acc + &g.xmu[nu].partial(chart.base(nu)));
    for i in 0..npos {
        let qi = chart.position(i);
        for mu in 0..n {
            let mut c = g.f0[mu].partial(qi);
            if npos == 1 {
                c -= &(&p * &g.xmu[mu].partial(qi));
            }
            for j in 0..npos {
                c -= &(&var(chart.momentum(j, mu)) * &g.xi[j].partial(qi));
            }
            for nu in 0..n {
                c += &(&var(chart.momentum(i, nu)) * &g.xmu[mu].partial(chart.base(nu)));
            }
            c -= &(&var(chart.momentum(i, mu)) * &div_x);
            x.set(chart.momentum(i, mu), c);
        }
    }
    let mut x0 = -(&p * &div_x);
    for mu in 0..n {
        let xmu = chart.base(mu);
        x0 += &g.f0[mu].partial(xmu);
        for i in 0..npos {
            x0 -= &(&var(chart.momentum(i, mu)) * &g.xi[i].partial(xmu));
        }
    }
    x.set(energy(chart), x0);
    Ok(x)
}

/// `f^μ` and `f_i^{μν}` (for `μ < ν`) of a hamiltonian form
/// `f = f^μ d^n x_μ + ½ f_i^{μν} dq^i ∧ d^n x_{μν}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianFormComponents<S> {
    pub fmu: Vec<Polynomial<S>>,
    /// Keyed by `(i, μ, ν)` with `μ < ν`; `f_i^{νμ} = −f_i^{μν}`.
    pub fmunu: BTreeMap<(usize, usize, usize), Polynomial<S>>,
}

impl<S: Scalar> HamiltonianFormComponents<S> {
    /// `f_i^{μν}` for any ordering of `μ, ν`.
    pub fn fmunu(&self, i: usize, mu: usize, nu: usize) -> Polynomial<S> {
        use std::cmp::Ordering::*;
        match mu.cmp(&nu) {
            Less => self.fmunu.get(&(i, mu, nu)).cloned().unwrap_or_default(),
            Greater => -self.fmunu.get(&(i, nu, mu)).cloned().unwrap_or_default(),
            Equal => Polynomial::zero(),
        }
    }

    pub fn to_form(&self, chart: &ChartRef) -> DifferentialForm<S> {
        let mut f = DifferentialForm::zero(chart, chart.n() - 1);
        for (mu, c) in self.fmu.iter().enumerate() {
            f = &f + &volume_mu(chart, mu).mul_function(c);
        }
        // ½ Σ_{μ,ν} = Σ_{μ<ν} by antisymmetry
        for (&(i, mu, nu), c) in &self.fmunu {
            let t = wedge(&d(chart, chart.position(i)), &volume_mu_nu(chart, mu, nu));
            f = &f + &t.mul_function(c);
        }
        f
    }
}

/// `f^μ = p_i^μ X^i + p X^μ − f_0^μ`, `f_i^{μν} = p_i^ν X^μ − p_i^μ X^ν`.
pub fn hamiltonian_form_components<S: Scalar>(
    chart: &ChartRef,
    g: &HamiltonianGenerators<S>,
) -> HamiltonianFormComponents<S> {
    let (n, npos) = (chart.n(), chart.npos());
    let p = var::<S>(energy(chart));
    let fmu = (0..n)
        .map(|mu| {
            let mut c = &(&p * &g.xmu[mu]) - &g.f0[mu];
            for i in 0..npos {
                c += &(&var(chart.momentum(i, mu)) * &g.xi[i]);
            }
            c
        })
        .collect();
    let mut fmunu = BTreeMap::new();
    for i in 0..npos {
        for mu in 0..n {
            for nu in mu + 1..n {
                let c =
                    &(&var(chart.momentum(i, nu)) * &g.xmu[mu]) - &(&var(chart.momentum(i, mu)) * &g.xmu[nu]);
                if !c.is_zero() {
                    fmunu.insert((i, mu, nu), c);
                }
            }
        }
    }
    HamiltonianFormComponents { fmu, fmunu }
}

/// The hamiltonian form of `x` for generators `g`; fails unless
/// `i_X ω = df` holds exactly.
pub fn hamiltonian_form_of<S: Scalar>(
    x: &VectorField<S>,
    g: &HamiltonianGenerators<S>,
) -> Result<DifferentialForm<S>> {
    let chart = x.chart();
    g.validate(chart)?;
    let f = hamiltonian_form_components(chart, g).to_form(chart);
    let residual = &contraction_omega(x)? - &f.exterior_derivative();
    if !residual.is_zero() {
        return Err(Error::Inconsistent(format!("i_X omega - df = {}", residual.render())));
    }
    Ok(f)
}

#[derive(Clone, Debug)]
pub struct ClassificationVerdict<S> {
    pub status: HamiltonianStatus,
    pub generators: Option<HamiltonianGenerators<S>>,
    pub hamiltonian_form: Option<DifferentialForm<S>>,
    /// A nonzero monomial of `d(i_X ω)` when the field is not hamiltonian.
    pub witness: Option<Witness<S>>,
}

/// Decides whether `x` preserves `ω`, and if so recovers its generators and
/// a hamiltonian form in the canonical shape.
pub fn classify<S: Scalar>(x: &VectorField<S>) -> Result<ClassificationVerdict<S>> {
    let chart = x.chart();
    chart.require(ChartKind::Extended)?;
    let eta = contraction_omega(x)?;
    let closed = eta.exterior_derivative();
    if let Some(w) = closed.witness() {
        return Ok(ClassificationVerdict {
            status: HamiltonianStatus::NotHamiltonian,
            generators: None,
            hamiltonian_form: None,
            witness: Some(w),
        });
    }

    // closed on a star-shaped chart, hence exact
    let primitive = poincare_homotopy(&eta)?;
    if primitive.exterior_derivative() != eta {
        return Err(Error::Internal("homotopy primitive does not reproduce i_X omega".into()));
    }
    let f = normalize_primitive(x, &eta)?;

    let (n, npos) = (chart.n(), chart.npos());
    let p = var::<S>(energy(chart));
    let xmu: Vec<_> = (0..n).map(|mu| x.component(chart.base(mu))).collect();
    let xi: Vec<_> = (0..npos).map(|i| x.component(chart.position(i))).collect();
    let f0 = (0..n)
        .map(|mu| {
            let mut c = &(&p * &xmu[mu]) - &f.fmu[mu];
            for (i, xi) in xi.iter().enumerate() {
                c += &(&var(chart.momentum(i, mu)) * xi);
            }
            c
        })
        .collect();
    let generators = HamiltonianGenerators { xmu, xi, f0 };
    // For n = 1 the form ω is symplectic and hamiltonian fields need not have
    // the generator shape; the verdict then carries only the primitive.
    let generators = match generators.validate(chart) {
        Ok(()) => {
            if construct_hamiltonian_vf(&generators, chart)? != *x {
                return Err(Error::Internal("reconstruction from recovered generators differs".into()));
            }
            Some(generators)
        }
        Err(_) if n == 1 => None,
        Err(e) => return Err(Error::Internal(format!("recovered generators: {e}"))),
    };
    let form = f.to_form(chart);

    let theta = canonical_theta(chart)?;
    let status = if theta.lie_derivative(x)?.is_zero() {
        HamiltonianStatus::ExactHamiltonian
    } else {
        HamiltonianStatus::LocallyHamiltonian
    };
    Ok(ClassificationVerdict { status, generators, hamiltonian_form: Some(form), witness: None })
}

/// Picks the primitive of the closed form `eta = i_X ω` that has the shape
/// `f^μ d^n x_μ + ½ f_i^{μν} dq^i ∧ d^n x_{μν}`.
///
/// The `f_i^{μν}` block is fixed by `X^μ`. What remains, `r = eta − d(block)`,
/// is `d(f^μ d^n x_μ) = Σ_ξ ∂_ξ f^μ dξ ∧ d^n x_μ + ∂_μ f^μ d^n x` with ξ
/// vertical: the vertical part is integrated with the vertical homotopy, and
/// the leftover divergence is absorbed into `f^1` by an `x^1`-antiderivative.
fn normalize_primitive<S: Scalar>(
    x: &VectorField<S>,
    eta: &DifferentialForm<S>,
) -> Result<HamiltonianFormComponents<S>> {
    let chart = x.chart();
    let (n, npos) = (chart.n(), chart.npos());
    let mut shape = hamiltonian_form_components(
        chart,
        &HamiltonianGenerators {
            xmu: (0..n).map(|mu| x.component(chart.base(mu))).collect(),
            xi: vec![Polynomial::zero(); npos],
            f0: vec![Polynomial::zero(); n],
        },
    );
    shape.fmu = vec![Polynomial::zero(); n];
    let remainder = eta - &shape.to_form(chart).exterior_derivative();

    let mut fmu = Vec::with_capacity(n);
    for mu in 0..n {
        let vmu = volume_mu(chart, mu);
        let mut dv = DifferentialForm::zero(chart, 1);
        for xi in chart.vertical_indices() {
            let c = remainder.coefficient_along(&wedge(&d(chart, xi), &vmu));
            dv = &dv + &d(chart, xi).mul_function(&c);
        }
        let f = vertical_homotopy(&dv);
        fmu.push(f.coefficient(&crate::form::MultiIndex::empty()));
    }
    let mut divergence = remainder.coefficient_along(&volume(chart));
    for (mu, f) in fmu.iter().enumerate() {
        divergence -= &f.partial(chart.base(mu));
    }
    let first = chart.base(0);
    fmu[0] += &divergence.integrate(first);

    let out = HamiltonianFormComponents { fmu, fmunu: shape.fmunu };
    if out.to_form(chart).exterior_derivative() != *eta {
        return Err(Error::Internal("i_X omega has no primitive of the canonical shape".into()));
    }
    Ok(out)
}

/// Solves `i_X ω = eta` for `X` by reading components off the expansion of
/// `i_X ω`, then checks the residual.
pub fn solve_inverse<S: Scalar>(eta: &DifferentialForm<S>) -> Result<VectorField<S>> {
    let chart = eta.chart();
    chart.require(ChartKind::Extended)?;
    let (n, npos) = (chart.n(), chart.npos());
    if eta.degree() != n {
        return Err(Error::Dimension(format!("expected an {n}-form, got degree {}", eta.degree())));
    }
    let mut x = VectorField::zero(chart);
    let de = d(chart, energy(chart));
    for mu in 0..n {
        let c = eta.coefficient_along(&wedge(&de, &volume_mu(chart, mu)));
        x.set(chart.base(mu), c);
    }
    x.set(energy(chart), -eta.coefficient_along(&volume(chart)));
    for i in 0..npos {
        let dq = d(chart, chart.position(i));
        let mut xi: Option<Polynomial<S>> = None;
        for mu in 0..n {
            let vmu = volume_mu(chart, mu);
            let c = eta.coefficient_along(&wedge(&d(chart, chart.momentum(i, mu)), &vmu));
            match &xi {
                None => xi = Some(c),
                Some(prev) if *prev != c => {
                    return Err(Error::NotInImage(format!(
                        "coefficients of dp{}_mu ^ d^n x_mu disagree across mu",
                        i + 1
                    )));
                }
                _ => {}
            }
            x.set(chart.momentum(i, mu), -eta.coefficient_along(&wedge(&dq, &vmu)));
        }
        x.set(chart.position(i), xi.unwrap_or_default());
    }
    for i in 0..npos {
        let dq = d(chart, chart.position(i));
        for mu in 0..n {
            let dqdp = wedge(&dq, &d(chart, chart.momentum(i, mu)));
            for nu in 0..n {
                if nu == mu {
                    continue;
                }
                let c = eta.coefficient_along(&wedge(&dqdp, &volume_mu_nu(chart, mu, nu)));
                if c != x.component(chart.base(nu)) {
                    return Err(Error::NotInImage(format!(
                        "coefficient of dq{0}^dp{0}_{1}^d^n x_({1}{2}) disagrees with X^{2}",
                        i + 1,
                        mu + 1,
                        nu + 1
                    )));
                }
            }
        }
    }
    let residual = &contraction_omega(&x)? - eta;
    if !residual.is_zero() {
        return Err(Error::NotInImage(format!("residual {}", residual.render())));
    }
    Ok(x)
}

/// Pulls `ω` back along the section `p = −H` and returns `ω_H` on the
/// ordinary chart with `n̂ = n`:
/// `ω_H = dq^i ∧ dp_i^μ ∧ d^n x_μ + dH ∧ d^n x`.
///
/// `h` is given in the extended chart's variables and may not involve `p`.
pub fn pullback_by_section<S: Scalar>(h: &Polynomial<S>, chart: &ChartRef) -> Result<DifferentialForm<S>> {
    chart.require(ChartKind::Extended)?;
    let e = energy(chart);
    if h.depends_on(e) {
        return Err(Error::EnergyDependence);
    }
    if h.variables().iter().any(|&v| v >= chart.dim()) {
        return Err(Error::Dimension("hamiltonian uses variables outside the chart".into()));
    }
    let pulled = canonical_omega(chart)?.pullback_graph(e, &-h);
    let ordinary = Chart::ordinary(chart.n(), chart.npos(), chart.n())?;
    let omega_h = pulled.transport(&ordinary, |v| (v != e).then_some(v))?;
    if !omega_h.exterior_derivative().is_zero() {
        return Err(Error::Internal("pull-back of omega is not closed".into()));
    }
    Ok(omega_h)
}

/// Symbol of `ω` at chart level: drops the energy axis and keeps the
/// `dq^i ∧ dp_i^μ ∧ d^n x_μ` block as `ω̂ = dq^i ∧ dp_i^μ ⊗ ê_μ`, where `ê_μ`
/// stands for `d^n x_μ`. Also checks that `∂/∂p` spans the vertical kernel
/// of that block.
pub fn symbol_projection<S: Scalar>(chart: &ChartRef) -> Result<(ChartRef, VectorValuedForm<S>)> {
    chart.require(ChartKind::Extended)?;
    let n = chart.n();
    let e = energy(chart);
    let omega = canonical_omega::<S>(chart)?;
    let block =
        omega.filter_terms(|idx| idx.indices().iter().filter(|&&v| chart.is_vertical(v)).count() == 2);

    let origin = Point::from_values(chart, vec![S::zero(); chart.dim()])?;
    let dirs: Vec<usize> = chart.vertical_indices().collect();
    let kernel = kernel_along(&block, &origin, &dirs);
    let mut unit = vec![S::zero(); chart.dim()];
    unit[e] = S::one();
    if kernel != vec![unit] {
        return Err(Error::Internal("symbol is not degenerate exactly along the energy axis".into()));
    }

    let ordinary = Chart::ordinary(n, chart.npos(), n)?;
    let mut components = Vec::with_capacity(n);
    for mu in 0..n {
        let vmu = volume_mu::<S>(chart, mu);
        let (base_idx, unit) =
            vmu.terms().next().map(|(i, c)| (i.clone(), c.clone())).expect("d^n x_mu is nonzero");
        let unit = unit.as_constant().expect("constant");
        let part = block.filter_terms(|idx| {
            idx.indices().iter().filter(|&&v| !chart.is_vertical(v)).copied().collect::<Vec<_>>()
                == base_idx.indices()
        });
        // c dx^{rest} ∧ dξ^a ∧ dξ^b = (c / unit) dξ^a ∧ dξ^b ∧ d^n x_mu
        let mut comp = DifferentialForm::zero(&ordinary, 2);
        for (idx, c) in part.terms() {
            let vertical: Vec<usize> =
                idx.indices().iter().copied().filter(|&v| chart.is_vertical(v)).collect();
            let t = DifferentialForm::basis(&ordinary, &vertical)
                .mul_function(&c.scale(&(S::one() / unit.clone())));
            comp = &comp + &t;
        }
        components.push(comp);
    }
    let labels = ordinary.basis_labels();
    let omega_hat = VectorValuedForm::new(&ordinary, labels, components)?;
    Ok((ordinary, omega_hat))
}
