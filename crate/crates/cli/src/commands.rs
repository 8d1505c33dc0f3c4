//! The `classify`, `construct`, `solve` and `show` commands as library
//! functions. Each returns the output document together with a plain-text
//! rendering; the binary only does file handling and exit codes.

use multiphase::multisymplectic::{
    canonical_omega, canonical_theta, classify as classify_extended, construct_hamiltonian_vf,
    contraction_omega, hamiltonian_form_of, solve_inverse,
};
use multiphase::polysymplectic::{
    canonical_omega_hat, canonical_theta_hat, classify_vertical, construct_polyhamiltonian_vf,
    contraction_omega_hat, hamiltonian_section_of, solve_inverse_poly,
};
use multiphase::{ChartKind, ChartRef, RationalField};

use crate::doc::{
    field_envelope, form_envelope, read_form, read_vvform, render_monomial, verdict_envelope,
    vvform_envelope, AnyGenerators, Envelope, Verdict,
};
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub document: Envelope,
    pub text: String,
}

pub fn classify(chart: &ChartRef, field: &RationalField) -> CliResult<(Verdict, Output)> {
    let verdict: Verdict = match chart.kind() {
        ChartKind::Extended => classify_extended(field)?.into(),
        ChartKind::Ordinary => classify_vertical(field)?.into(),
    };
    let mut text = format!("status: {}\n", verdict.status.as_str());
    if let Some(f) = &verdict.hamiltonian_form {
        text.push_str(&format!("hamiltonian form: {}\n", f.render()));
    }
    if let Some(f) = &verdict.hamiltonian_section {
        text.push_str(&format!("hamiltonian section: {}\n", f.render()));
    }
    if let Some((label, w)) = &verdict.witness {
        let basis = w.index.render(chart.names());
        let label = label.map(|a| format!(" ⊗ {}", chart.basis_labels()[a])).unwrap_or_default();
        text.push_str(&format!(
            "witness: {} * {} {basis}{label}\n",
            multiphase::scalar::format_rational(&w.coefficient),
            render_monomial(chart, &w.monomial),
        ));
    }
    let document = verdict_envelope(chart, &verdict);
    Ok((verdict, Output { document, text }))
}

/// Builds the field of `g`, re-checks that it is locally hamiltonian, and
/// attaches its hamiltonian form or section.
pub fn construct(chart: &ChartRef, g: &AnyGenerators) -> CliResult<(RationalField, Output)> {
    let (x, hamiltonian, rendered) = match g {
        AnyGenerators::Extended(g) => {
            let x = construct_hamiltonian_vf(g, chart)?;
            if let Some(w) = contraction_omega(&x)?.exterior_derivative().witness() {
                return Err(CliError::Internal(format!(
                    "constructed field has d(i_X omega) != 0 at {}",
                    w.index.render(chart.names())
                )));
            }
            let f = hamiltonian_form_of(&x, g)?;
            let r = f.render();
            (x, form_envelope(&f), r)
        }
        AnyGenerators::Ordinary(g) => {
            let x = construct_polyhamiltonian_vf(g, chart)?;
            if contraction_omega_hat(&x)?.vertical_derivative().witness().is_some() {
                return Err(CliError::Internal("constructed field has d_V(i_X omega_hat) != 0".into()));
            }
            let f = hamiltonian_section_of(&x, g)?;
            let r = f.render();
            (x, vvform_envelope(&f), r)
        }
    };
    let text = format!("X = {}\nhamiltonian: {rendered}\n", x.render());
    let document = field_envelope(&x, Some(hamiltonian));
    Ok((x, Output { document, text }))
}

/// Reads a hamiltonian form (extended, degree `n − 1`) or section
/// (ordinary, degree 0), differentiates it and solves for the field.
pub fn solve(chart: &ChartRef, input: &Envelope) -> CliResult<(RationalField, Output)> {
    let (x, hamiltonian) = match chart.kind() {
        ChartKind::Extended => {
            let f = read_form(chart, input)?;
            if f.degree() + 1 != chart.n() {
                return Err(CliError::input_at(
                    "payload.degree",
                    format!("expected a hamiltonian ({})-form, got degree {}", chart.n() - 1, f.degree()),
                ));
            }
            (solve_inverse(&f.exterior_derivative())?, form_envelope(&f))
        }
        ChartKind::Ordinary => {
            let f = read_vvform(chart, input)?;
            if f.degree() != 0 {
                return Err(CliError::input_at(
                    "payload.degree",
                    format!("expected a degree-0 section, got degree {}", f.degree()),
                ));
            }
            (solve_inverse_poly(&f.vertical_derivative())?, vvform_envelope(&f))
        }
    };
    let text = format!("X = {}\n", x.render());
    let document = field_envelope(&x, Some(hamiltonian));
    Ok((x, Output { document, text }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShowObject {
    Omega,
    Theta,
    OmegaHat,
    ThetaHat,
}

impl std::str::FromStr for ShowObject {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "omega" => Ok(ShowObject::Omega),
            "theta" => Ok(ShowObject::Theta),
            "omega_hat" => Ok(ShowObject::OmegaHat),
            "theta_hat" => Ok(ShowObject::ThetaHat),
            other => Err(format!("unknown object {other:?} (omega, theta, omega_hat, theta_hat)")),
        }
    }
}

pub fn show(chart: &ChartRef, object: ShowObject) -> CliResult<Output> {
    let (document, text) = match object {
        ShowObject::Omega => {
            let f = canonical_omega(chart)?;
            (form_envelope(&f), f.render())
        }
        ShowObject::Theta => {
            let f = canonical_theta(chart)?;
            (form_envelope(&f), f.render())
        }
        ShowObject::OmegaHat => {
            let f = canonical_omega_hat(chart)?;
            (vvform_envelope(&f), f.render())
        }
        ShowObject::ThetaHat => {
            let f = canonical_theta_hat(chart)?;
            (vvform_envelope(&f), f.render())
        }
    };
    Ok(Output { document, text: format!("{text}\n") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::{read_field, FieldDoc, Kind};
    use multiphase::multisymplectic::{HamiltonianGenerators, HamiltonianStatus};
    use multiphase::{Chart, RationalPoly};

    #[test]
    fn classify_dispatches_on_chart_kind() {
        let c = Chart::extended(2, 1).unwrap();
        let dq = RationalField::coordinate(&c, c.position(0));
        let (v, out) = classify(&c, &dq).unwrap();
        assert_eq!(v.status, HamiltonianStatus::ExactHamiltonian);
        assert!(out.text.starts_with("status: exact_hamiltonian"));

        let o = Chart::ordinary(2, 1, 2).unwrap();
        let x =
            RationalField::coordinate(&o, o.position(0)).mul_function(&RationalPoly::var(o.momentum(0, 0)));
        let (v, out) = classify(&o, &x).unwrap();
        assert_eq!(v.status, HamiltonianStatus::NotHamiltonian);
        assert!(out.text.contains("witness"));
        let base = RationalField::coordinate(&o, 0);
        assert_eq!(classify(&o, &base).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn construct_attaches_hamiltonian() {
        let c = Chart::extended(2, 1).unwrap();
        let g = AnyGenerators::Extended(HamiltonianGenerators::zero(&c));
        let (x, out) = construct(&c, &g).unwrap();
        assert!(x.is_zero());
        let doc: FieldDoc = out.document.payload_as(Kind::VectorField).unwrap();
        assert!(doc.components.is_empty());
        assert_eq!(doc.hamiltonian.unwrap().kind, Kind::Form);
        assert!(read_field(&c, &out.document).unwrap().is_zero());
    }

    #[test]
    fn show_checks_kind() {
        let c = Chart::extended(1, 1).unwrap();
        assert_eq!(show(&c, ShowObject::OmegaHat).unwrap_err().exit_code(), 2);
        assert!(show(&c, ShowObject::Omega).is_ok());
    }
}
