//! Ordinary multiphase space: the polysymplectic form
//! `ω̂ = dq^i ∧ dp_i^a ⊗ ê_a`, its potential `θ̂ = p_i^a dq^i ⊗ ê_a`, and the
//! classification of vertical vector fields preserving `ω̂`.
//!
//! As on extended charts, the construction uses `X_i^a = … + ∂f_0^a/∂q^i`
//! and the matching hamiltonian section is `f^a = p_i^a X^i − f_0^a`.

use crate::chart::{Chart, ChartKind, ChartRef};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::form::{DifferentialForm, MultiIndex, Witness};
use crate::homotopy::vertical_homotopy;
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::vvform::VectorValuedForm;

pub use crate::multisymplectic::HamiltonianStatus;

fn labelled<S: Scalar>(chart: &ChartRef, components: Vec<DifferentialForm<S>>) -> VectorValuedForm<S> {
    VectorValuedForm::new(chart, chart.basis_labels(), components).expect("consistent components")
}

/// `θ̂ = p_i^a dq^i ⊗ ê_a`.
pub fn canonical_theta_hat<S: Scalar>(chart: &ChartRef) -> Result<VectorValuedForm<S>> {
    chart.require(ChartKind::Ordinary)?;
    let components = (0..chart.nhat())
        .map(|a| {
            (0..chart.npos()).fold(DifferentialForm::zero(chart, 1), |acc, i| {
                let t = DifferentialForm::differential(chart, chart.position(i))
                    .mul_function(&Polynomial::var(chart.momentum(i, a)));
                &acc + &t
            })
        })
        .collect();
    Ok(labelled(chart, components))
}

/// `ω̂ = dq^i ∧ dp_i^a ⊗ ê_a`.
pub fn canonical_omega_hat<S: Scalar>(chart: &ChartRef) -> Result<VectorValuedForm<S>> {
    chart.require(ChartKind::Ordinary)?;
    let components = (0..chart.nhat())
        .map(|a| {
            (0..chart.npos()).fold(DifferentialForm::zero(chart, 2), |acc, i| {
                &acc + &DifferentialForm::basis(chart, &[chart.position(i), chart.momentum(i, a)])
            })
        })
        .collect();
    Ok(labelled(chart, components))
}

/// `i_X ω̂ = −X_i^a dq^i ⊗ ê_a + X^i dp_i^a ⊗ ê_a`, assembled from the
/// closed-form expansion.
pub fn contraction_omega_hat<S: Scalar>(x: &VectorField<S>) -> Result<VectorValuedForm<S>> {
    let chart = x.chart();
    chart.require(ChartKind::Ordinary)?;
    x.require_vertical()?;
    let components = (0..chart.nhat())
        .map(|a| {
            let mut out = DifferentialForm::zero(chart, 1);
            for i in 0..chart.npos() {
                let dq = DifferentialForm::differential(chart, chart.position(i));
                let dp = DifferentialForm::differential(chart, chart.momentum(i, a));
                out = &out - &dq.mul_function(&x.component(chart.momentum(i, a)));
                out = &out + &dp.mul_function(&x.component(chart.position(i)));
            }
            out
        })
        .collect();
    Ok(labelled(chart, components))
}

/// `i_X θ̂ = X^i p_i^a ê_a`.
pub fn contraction_theta_hat<S: Scalar>(x: &VectorField<S>) -> Result<VectorValuedForm<S>> {
    let chart = x.chart();
    chart.require(ChartKind::Ordinary)?;
    x.require_vertical()?;
    let components = (0..chart.nhat())
        .map(|a| {
            let f = (0..chart.npos()).fold(Polynomial::zero(), |acc, i| {
                &acc + &(&x.component(chart.position(i)) * &Polynomial::var(chart.momentum(i, a)))
            });
            DifferentialForm::function(chart, f)
        })
        .collect();
    Ok(labelled(chart, components))
}

/// Free data of a locally hamiltonian vertical field: `X^i` and `f_0^a`,
/// neither depending on the multimomenta.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyHamiltonianGenerators<S> {
    pub xi: Vec<Polynomial<S>>,
    pub f0: Vec<Polynomial<S>>,
}

impl<S: Scalar> PolyHamiltonianGenerators<S> {
    pub fn zero(chart: &Chart) -> Self {
        PolyHamiltonianGenerators {
            xi: vec![Polynomial::zero(); chart.npos()],
            f0: vec![Polynomial::zero(); chart.nhat()],
        }
    }

    pub fn validate(&self, chart: &Chart) -> Result<()> {
        chart.require(ChartKind::Ordinary)?;
        if self.xi.len() != chart.npos() || self.f0.len() != chart.nhat() {
            return Err(Error::InvalidGenerators(format!(
                "expected {} X^i and {} f0 entries",
                chart.npos(),
                chart.nhat()
            )));
        }
        let first_momentum = chart.n() + chart.npos();
        for (label, polys) in [("X^i", &self.xi), ("f0", &self.f0)] {
            for (k, p) in polys.iter().enumerate() {
                if p.variables().iter().any(|&v| v >= chart.dim()) {
                    return Err(Error::InvalidGenerators(format!(
                        "{label}[{}] uses unknown variables",
                        k + 1
                    )));
                }
                if p.depends_on_any(|v| v >= first_momentum) {
                    return Err(Error::InvalidGenerators(format!(
                        "{label}[{}] depends on a multimomentum",
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the vertical field with `X^i` from `g` and
/// `X_i^a = −p_j^a ∂X^j/∂q^i + ∂f_0^a/∂q^i`.
pub fn construct_polyhamiltonian_vf<S: Scalar>(
    g: &PolyHamiltonianGenerators<S>,
    chart: &ChartRef,
) -> Result<VectorField<S>> {
    g.validate(chart)?;
    let mut x = VectorField::zero(chart);
    for i in 0..chart.npos() {
        x.set(chart.position(i), g.xi[i].clone());
    }
    for i in 0..chart.npos() {
        let qi = chart.position(i);
        for a in 0..chart.nhat() {
            let mut c = g.f0[a].partial(qi);
            for j in 0..chart.npos() {
                c -= &(&Polynomial::var(chart.momentum(j, a)) * &g.xi[j].partial(qi));
            }
            x.set(chart.momentum(i, a), c);
        }
    }
    Ok(x)
}

/// `f^a = p_i^a X^i − f_0^a` as a degree-0 vector-valued form.
pub fn section_from_generators<S: Scalar>(
    chart: &ChartRef,
    g: &PolyHamiltonianGenerators<S>,
) -> VectorValuedForm<S> {
    let components = (0..chart.nhat())
        .map(|a| {
            let mut f = -&g.f0[a];
            for i in 0..chart.npos() {
                f += &(&Polynomial::var(chart.momentum(i, a)) * &g.xi[i]);
            }
            DifferentialForm::function(chart, f)
        })
        .collect();
    labelled(chart, components)
}

/// Hamiltonian section of `x`; fails unless `i_X ω̂ = d_V f` componentwise.
pub fn hamiltonian_section_of<S: Scalar>(
    x: &VectorField<S>,
    g: &PolyHamiltonianGenerators<S>,
) -> Result<VectorValuedForm<S>> {
    let chart = x.chart();
    g.validate(chart)?;
    let f = section_from_generators(chart, g);
    let residual = contraction_omega_hat(x)?.try_add(&f.vertical_derivative().neg())?;
    if !residual.is_zero() {
        return Err(Error::Inconsistent(format!("i_X omega_hat - d_V f = {}", residual.render())));
    }
    Ok(f)
}

#[derive(Clone, Debug)]
pub struct PolyClassificationVerdict<S> {
    pub status: HamiltonianStatus,
    pub generators: Option<PolyHamiltonianGenerators<S>>,
    pub hamiltonian_section: Option<VectorValuedForm<S>>,
    /// Label index and nonzero monomial of `d_V(i_X ω̂)`.
    pub witness: Option<(usize, Witness<S>)>,
}

/// Decides whether the vertical field `x` preserves `ω̂` and recovers its
/// generators and a hamiltonian section.
pub fn classify_vertical<S: Scalar>(x: &VectorField<S>) -> Result<PolyClassificationVerdict<S>> {
    let chart = x.chart();
    chart.require(ChartKind::Ordinary)?;
    x.require_vertical()?;
    let eta = contraction_omega_hat(x)?;
    if let Some(w) = eta.vertical_derivative().witness() {
        return Ok(PolyClassificationVerdict {
            status: HamiltonianStatus::NotHamiltonian,
            generators: None,
            hamiltonian_section: None,
            witness: Some(w),
        });
    }

    let mut f0 = Vec::with_capacity(chart.nhat());
    let mut primitives = Vec::with_capacity(chart.nhat());
    for a in 0..chart.nhat() {
        let f = vertical_homotopy(eta.component(a));
        if f.vertical_derivative() != *eta.component(a) {
            return Err(Error::Internal("vertical homotopy primitive is not a primitive".into()));
        }
        let mut c = -f.coefficient(&MultiIndex::empty());
        primitives.push(f);
        for i in 0..chart.npos() {
            c += &(&Polynomial::var(chart.momentum(i, a)) * &x.component(chart.position(i)));
        }
        f0.push(c);
    }
    let xi = (0..chart.npos()).map(|i| x.component(chart.position(i))).collect();
    let generators = PolyHamiltonianGenerators { xi, f0 };
    // With a single coefficient label ω̂ is fiberwise symplectic, so X^i may
    // depend on the momenta; the verdict then carries only the primitive.
    let (generators, section) = match generators.validate(chart) {
        Ok(()) => {
            if construct_polyhamiltonian_vf(&generators, chart)? != *x {
                return Err(Error::Internal("reconstruction from recovered generators differs".into()));
            }
            let section = section_from_generators(chart, &generators);
            (Some(generators), section)
        }
        Err(_) if chart.nhat() == 1 => (None, labelled(chart, primitives)),
        Err(e) => return Err(Error::Internal(format!("recovered generators: {e}"))),
    };

    let theta_hat = canonical_theta_hat(chart)?;
    let status = if theta_hat.vertical_lie_derivative(x)?.is_zero() {
        HamiltonianStatus::ExactHamiltonian
    } else {
        HamiltonianStatus::LocallyHamiltonian
    };
    Ok(PolyClassificationVerdict { status, generators, hamiltonian_section: Some(section), witness: None })
}

/// Solves `i_X ω̂ = eta` for a vertical `X`.
pub fn solve_inverse_poly<S: Scalar>(eta: &VectorValuedForm<S>) -> Result<VectorField<S>> {
    let chart = eta.chart();
    chart.require(ChartKind::Ordinary)?;
    if eta.degree() != 1 {
        return Err(Error::Dimension(format!("expected 1-forms, got degree {}", eta.degree())));
    }
    if eta.labels().len() != chart.nhat() {
        return Err(Error::Dimension("wrong number of coefficient labels".into()));
    }
    for comp in eta.components() {
        if let Some((idx, _)) = comp.terms().find(|(idx, _)| !chart.is_vertical(idx.indices()[0])) {
            return Err(Error::NotInImage(format!("component contains d{}", chart.name(idx.indices()[0]))));
        }
    }
    let mut x = VectorField::zero(chart);
    for i in 0..chart.npos() {
        let mut xi: Option<Polynomial<S>> = None;
        for a in 0..chart.nhat() {
            let comp = eta.component(a);
            let c = comp.coefficient(&MultiIndex::new(vec![chart.momentum(i, a)]).expect("single index"));
            match &xi {
                None => xi = Some(c),
                Some(prev) if *prev != c => {
                    return Err(Error::NotInImage(format!("X^{} differs across coefficient labels", i + 1)));
                }
                _ => {}
            }
            let dq = MultiIndex::new(vec![chart.position(i)]).expect("single index");
            x.set(chart.momentum(i, a), -comp.coefficient(&dq));
        }
        x.set(chart.position(i), xi.unwrap_or_default());
    }
    let residual = contraction_omega_hat(&x)?.try_add(&eta.neg())?;
    if !residual.is_zero() {
        return Err(Error::NotInImage(format!("residual {}", residual.render())));
    }
    Ok(x)
}
