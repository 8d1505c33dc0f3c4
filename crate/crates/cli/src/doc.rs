//! JSON documents: a versioned envelope around one payload per object kind.
//!
//! ```json
//! {"schema_version": "1", "kind": "form",
//!  "payload": {"degree": 2, "terms": [{"index": ["q1", "p1_1"], "coeff": "3/2*x1"}]}}
//! ```
//!
//! Coefficients are polynomial strings over exact rationals (see
//! [`crate::polyparse`]); differentials and components are named by chart
//! coordinate. Payloads other than `chart` are read against a chart given
//! separately.

use std::collections::BTreeMap;

use multiphase::multisymplectic::{ClassificationVerdict, HamiltonianGenerators, HamiltonianStatus};
use multiphase::polysymplectic::{PolyClassificationVerdict, PolyHamiltonianGenerators};
use multiphase::scalar::format_rational;
use multiphase::{
    Chart, ChartKind, ChartRef, DifferentialForm, Monomial, MultiIndex, Rational, RationalField,
    RationalForm, RationalPoly, RationalVvForm, VectorField, VectorValuedForm, Witness,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::polyparse::{parse_polynomial, parse_rational};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Chart,
    VectorField,
    Form,
    Vvform,
    Generators,
    Verdict,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Chart => "chart",
            Kind::VectorField => "vector_field",
            Kind::Form => "form",
            Kind::Vvform => "vvform",
            Kind::Generators => "generators",
            Kind::Verdict => "verdict",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub schema_version: String,
    pub kind: Kind,
    pub payload: Value,
}

impl Envelope {
    pub fn new<T: Serialize>(kind: Kind, payload: &T) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION.to_string(),
            kind,
            payload: serde_json::to_value(payload).expect("payloads serialize"),
        }
    }

    pub fn parse(bytes: &[u8]) -> CliResult<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| CliError::Input(format!("not UTF-8: {e}")))?;
        let env: Envelope =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))?;
        if env.schema_version != SCHEMA_VERSION {
            return Err(CliError::input_at(
                "schema_version",
                format!("unsupported version {:?}", env.schema_version),
            ));
        }
        Ok(env)
    }

    pub fn payload_as<T: DeserializeOwned>(&self, expected: Kind) -> CliResult<T> {
        if self.kind != expected {
            return Err(CliError::input_at(
                "kind",
                format!("expected a {} document, got {}", expected.as_str(), self.kind.as_str()),
            ));
        }
        serde_json::from_value(self.payload.clone()).map_err(|e| CliError::input_at("payload", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelopes serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub kind: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub npos: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nhat: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub index: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub degree: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub label: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VvformDoc {
    pub degree: usize,
    pub components: Vec<ComponentDoc>,
}

/// `xmu` is present for extended charts and absent for ordinary ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xmu: Option<Vec<String>>,
    pub xi: Vec<String>,
    pub f0: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub components: BTreeMap<String, String>,
    /// The hamiltonian form (extended) or section (ordinary) as a nested
    /// `form` / `vvform` document, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<Box<Envelope>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub index: Vec<String>,
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<GeneratorsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian_form: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian_section: Option<VvformDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

/// Generators of either theorem, selected by chart kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyGenerators {
    Extended(HamiltonianGenerators<Rational>),
    Ordinary(PolyHamiltonianGenerators<Rational>),
}

/// A decoded verdict document.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: HamiltonianStatus,
    pub generators: Option<AnyGenerators>,
    pub hamiltonian_form: Option<RationalForm>,
    pub hamiltonian_section: Option<RationalVvForm>,
    pub witness: Option<(Option<usize>, Witness<Rational>)>,
}

impl From<ClassificationVerdict<Rational>> for Verdict {
    fn from(v: ClassificationVerdict<Rational>) -> Self {
        Verdict {
            status: v.status,
            generators: v.generators.map(AnyGenerators::Extended),
            hamiltonian_form: v.hamiltonian_form,
            hamiltonian_section: None,
            witness: v.witness.map(|w| (None, w)),
        }
    }
}

impl From<PolyClassificationVerdict<Rational>> for Verdict {
    fn from(v: PolyClassificationVerdict<Rational>) -> Self {
        Verdict {
            status: v.status,
            generators: v.generators.map(AnyGenerators::Ordinary),
            hamiltonian_form: None,
            hamiltonian_section: v.hamiltonian_section,
            witness: v.witness.map(|(a, w)| (Some(a), w)),
        }
    }
}

// ---- charts ----

pub fn chart_to_doc(chart: &Chart) -> ChartDoc {
    ChartDoc {
        kind: chart.kind().to_string(),
        n: chart.n(),
        npos: chart.npos(),
        nhat: (chart.kind() == ChartKind::Ordinary).then_some(chart.nhat()),
    }
}

pub fn chart_from_doc(doc: &ChartDoc) -> CliResult<ChartRef> {
    match doc.kind.as_str() {
        "extended" => {
            if doc.nhat.is_some() {
                return Err(CliError::input_at("payload.nhat", "extended charts take no nhat"));
            }
            Ok(Chart::extended(doc.n, doc.npos)?)
        }
        "ordinary" => Ok(Chart::ordinary(doc.n, doc.npos, doc.nhat.unwrap_or(doc.n))?),
        other => Err(CliError::input_at(
            "payload.kind",
            format!("unknown chart kind {other:?} (expected \"extended\" or \"ordinary\")"),
        )),
    }
}

pub fn chart_envelope(chart: &Chart) -> Envelope {
    Envelope::new(Kind::Chart, &chart_to_doc(chart))
}

pub fn read_chart(env: &Envelope) -> CliResult<ChartRef> {
    chart_from_doc(&env.payload_as(Kind::Chart)?)
}

// ---- polynomials ----

pub fn poly_to_string(chart: &Chart, p: &RationalPoly) -> String {
    p.render(chart.names())
}

pub fn poly_from_string(chart: &Chart, text: &str, location: &str) -> CliResult<RationalPoly> {
    parse_polynomial(text, |name| chart.index_of(name)).map_err(|e| CliError::input_at(location, e))
}

fn coordinate(chart: &Chart, name: &str, location: &str) -> CliResult<usize> {
    chart
        .index_of(name)
        .ok_or_else(|| CliError::input_at(location, format!("unknown coordinate {name:?} on chart {chart}")))
}

/// Accepts `"q1"` and `"dq1"` alike.
fn differential(chart: &Chart, name: &str, location: &str) -> CliResult<usize> {
    match chart.index_of(name) {
        Some(v) => Ok(v),
        None => match name.strip_prefix('d') {
            Some(rest) => coordinate(chart, rest, location),
            None => coordinate(chart, name, location),
        },
    }
}

// ---- forms ----

fn terms_to_doc(chart: &Chart, form: &RationalForm) -> Vec<TermDoc> {
    form.terms()
        .map(|(idx, c)| TermDoc {
            index: idx.indices().iter().map(|&v| chart.name(v).to_string()).collect(),
            coeff: poly_to_string(chart, c),
        })
        .collect()
}

fn terms_from_doc(
    chart: &ChartRef,
    degree: usize,
    terms: &[TermDoc],
    location: &str,
) -> CliResult<RationalForm> {
    let mut out = DifferentialForm::zero(chart, degree);
    for (k, t) in terms.iter().enumerate() {
        let loc = format!("{location}[{k}]");
        if t.index.len() != degree {
            return Err(CliError::input_at(
                &format!("{loc}.index"),
                format!("{} differentials in a {degree}-form", t.index.len()),
            ));
        }
        let vars = t
            .index
            .iter()
            .map(|name| differential(chart, name, &format!("{loc}.index")))
            .collect::<CliResult<Vec<_>>>()?;
        let Some((parity, idx)) = MultiIndex::sorted(vars) else {
            return Err(CliError::input_at(
                &format!("{loc}.index"),
                format!("{:?} is not a strictly increasing multi-index (repeated differential)", t.index),
            ));
        };
        let mut c = poly_from_string(chart, &t.coeff, &format!("{loc}.coeff"))?;
        if parity % 2 == 1 {
            c = -c;
        }
        out.add_term(idx, c);
    }
    Ok(out)
}

pub fn form_to_doc(form: &RationalForm) -> FormDoc {
    FormDoc { degree: form.degree(), terms: terms_to_doc(form.chart(), form) }
}

pub fn form_from_doc(chart: &ChartRef, doc: &FormDoc) -> CliResult<RationalForm> {
    terms_from_doc(chart, doc.degree, &doc.terms, "payload.terms")
}

pub fn form_envelope(form: &RationalForm) -> Envelope {
    Envelope::new(Kind::Form, &form_to_doc(form))
}

pub fn read_form(chart: &ChartRef, env: &Envelope) -> CliResult<RationalForm> {
    form_from_doc(chart, &env.payload_as(Kind::Form)?)
}

// ---- vector-valued forms ----

pub fn vvform_to_doc(form: &RationalVvForm) -> VvformDoc {
    VvformDoc {
        degree: form.degree(),
        components: form
            .labels()
            .iter()
            .zip(form.components())
            .map(|(label, c)| ComponentDoc { label: label.clone(), terms: terms_to_doc(form.chart(), c) })
            .collect(),
    }
}

/// Components may come in any order; missing labels are zero.
pub fn vvform_from_doc(chart: &ChartRef, doc: &VvformDoc) -> CliResult<RationalVvForm> {
    chart.require(ChartKind::Ordinary)?;
    let labels = chart.basis_labels();
    let mut components: Vec<Option<RationalForm>> = vec![None; labels.len()];
    for (k, comp) in doc.components.iter().enumerate() {
        let loc = format!("payload.components[{k}]");
        let Some(a) = labels.iter().position(|l| *l == comp.label) else {
            return Err(CliError::input_at(
                &format!("{loc}.label"),
                format!("unknown label {:?} (expected one of {labels:?})", comp.label),
            ));
        };
        if components[a].is_some() {
            return Err(CliError::input_at(
                &format!("{loc}.label"),
                format!("duplicate label {:?}", comp.label),
            ));
        }
        components[a] = Some(terms_from_doc(chart, doc.degree, &comp.terms, &format!("{loc}.terms"))?);
    }
    let components = components
        .into_iter()
        .map(|c| c.unwrap_or_else(|| DifferentialForm::zero(chart, doc.degree)))
        .collect();
    Ok(VectorValuedForm::new(chart, labels, components)?)
}

pub fn vvform_envelope(form: &RationalVvForm) -> Envelope {
    Envelope::new(Kind::Vvform, &vvform_to_doc(form))
}

pub fn read_vvform(chart: &ChartRef, env: &Envelope) -> CliResult<RationalVvForm> {
    vvform_from_doc(chart, &env.payload_as(Kind::Vvform)?)
}

// ---- vector fields ----

pub fn field_to_doc(field: &RationalField, hamiltonian: Option<Envelope>) -> FieldDoc {
    let chart = field.chart();
    FieldDoc {
        components: field
            .components()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| (chart.name(v).to_string(), poly_to_string(chart, c)))
            .collect(),
        hamiltonian: hamiltonian.map(Box::new),
    }
}

pub fn field_from_doc(chart: &ChartRef, doc: &FieldDoc) -> CliResult<RationalField> {
    let mut x = VectorField::zero(chart);
    for (name, text) in &doc.components {
        let loc = format!("payload.components.{name}");
        let v = coordinate(chart, name, &loc)?;
        x.set(v, poly_from_string(chart, text, &loc)?);
    }
    Ok(x)
}

pub fn field_envelope(field: &RationalField, hamiltonian: Option<Envelope>) -> Envelope {
    Envelope::new(Kind::VectorField, &field_to_doc(field, hamiltonian))
}

pub fn read_field(chart: &ChartRef, env: &Envelope) -> CliResult<RationalField> {
    field_from_doc(chart, &env.payload_as(Kind::VectorField)?)
}

// ---- generators ----

fn polys_to_strings(chart: &Chart, ps: &[RationalPoly]) -> Vec<String> {
    ps.iter().map(|p| poly_to_string(chart, p)).collect()
}

fn polys_from_strings(chart: &Chart, ps: &[String], location: &str) -> CliResult<Vec<RationalPoly>> {
    ps.iter().enumerate().map(|(k, s)| poly_from_string(chart, s, &format!("{location}[{k}]"))).collect()
}

pub fn generators_to_doc(chart: &Chart, g: &AnyGenerators) -> GeneratorsDoc {
    match g {
        AnyGenerators::Extended(g) => GeneratorsDoc {
            xmu: Some(polys_to_strings(chart, &g.xmu)),
            xi: polys_to_strings(chart, &g.xi),
            f0: polys_to_strings(chart, &g.f0),
        },
        AnyGenerators::Ordinary(g) => GeneratorsDoc {
            xmu: None,
            xi: polys_to_strings(chart, &g.xi),
            f0: polys_to_strings(chart, &g.f0),
        },
    }
}

/// Decodes and validates generators against the chart kind and sizes.
pub fn generators_from_doc(chart: &ChartRef, doc: &GeneratorsDoc) -> CliResult<AnyGenerators> {
    let xi = polys_from_strings(chart, &doc.xi, "payload.xi")?;
    let f0 = polys_from_strings(chart, &doc.f0, "payload.f0")?;
    let g = match (chart.kind(), &doc.xmu) {
        (ChartKind::Extended, Some(xmu)) => {
            let xmu = polys_from_strings(chart, xmu, "payload.xmu")?;
            let g = HamiltonianGenerators { xmu, xi, f0 };
            g.validate(chart).map_err(|e| CliError::input_at("payload", e))?;
            AnyGenerators::Extended(g)
        }
        (ChartKind::Extended, None) => {
            return Err(CliError::input_at("payload.xmu", "required on an extended chart"));
        }
        (ChartKind::Ordinary, None) => {
            let g = PolyHamiltonianGenerators { xi, f0 };
            g.validate(chart).map_err(|e| CliError::input_at("payload", e))?;
            AnyGenerators::Ordinary(g)
        }
        (ChartKind::Ordinary, Some(_)) => {
            return Err(CliError::input_at("payload.xmu", "ordinary charts have no base components"));
        }
    };
    Ok(g)
}

pub fn generators_envelope(chart: &Chart, g: &AnyGenerators) -> Envelope {
    Envelope::new(Kind::Generators, &generators_to_doc(chart, g))
}

pub fn read_generators(chart: &ChartRef, env: &Envelope) -> CliResult<AnyGenerators> {
    generators_from_doc(chart, &env.payload_as(Kind::Generators)?)
}

// ---- witnesses and verdicts ----

pub fn witness_to_doc(chart: &Chart, label: Option<usize>, w: &Witness<Rational>) -> WitnessDoc {
    let labels = chart.basis_labels();
    WitnessDoc {
        label: label.map(|a| labels[a].clone()),
        index: w.index.indices().iter().map(|&v| chart.name(v).to_string()).collect(),
        monomial: w.monomial.render(chart.names()),
        coefficient: format_rational(&w.coefficient),
    }
}

pub fn witness_from_doc(chart: &Chart, doc: &WitnessDoc) -> CliResult<(Option<usize>, Witness<Rational>)> {
    let label =
        match &doc.label {
            None => None,
            Some(l) => Some(chart.basis_labels().iter().position(|x| x == l).ok_or_else(|| {
                CliError::input_at("payload.witness.label", format!("unknown label {l:?}"))
            })?),
        };
    let vars = doc
        .index
        .iter()
        .map(|name| differential(chart, name, "payload.witness.index"))
        .collect::<CliResult<Vec<_>>>()?;
    let index = MultiIndex::new(vars).ok_or_else(|| {
        CliError::input_at("payload.witness.index", "not a strictly increasing multi-index")
    })?;
    let mono = poly_from_string(chart, &doc.monomial, "payload.witness.monomial")?;
    let monomial = match mono.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] if **c == Rational::from_integer(1.into()) => (*m).clone(),
        _ => return Err(CliError::input_at("payload.witness.monomial", "expected a single monomial")),
    };
    let coefficient =
        parse_rational(&doc.coefficient).map_err(|e| CliError::input_at("payload.witness.coefficient", e))?;
    Ok((label, Witness { index, monomial, coefficient }))
}

pub fn verdict_to_doc(chart: &Chart, v: &Verdict) -> VerdictDoc {
    VerdictDoc {
        status: v.status.as_str().to_string(),
        generators: v.generators.as_ref().map(|g| generators_to_doc(chart, g)),
        hamiltonian_form: v.hamiltonian_form.as_ref().map(form_to_doc),
        hamiltonian_section: v.hamiltonian_section.as_ref().map(vvform_to_doc),
        witness: v.witness.as_ref().map(|(a, w)| witness_to_doc(chart, *a, w)),
    }
}

pub fn verdict_from_doc(chart: &ChartRef, doc: &VerdictDoc) -> CliResult<Verdict> {
    let status = HamiltonianStatus::parse(&doc.status)
        .ok_or_else(|| CliError::input_at("payload.status", format!("unknown status {:?}", doc.status)))?;
    Ok(Verdict {
        status,
        generators: doc.generators.as_ref().map(|g| generators_from_doc(chart, g)).transpose()?,
        hamiltonian_form: doc.hamiltonian_form.as_ref().map(|f| form_from_doc(chart, f)).transpose()?,
        hamiltonian_section: doc
            .hamiltonian_section
            .as_ref()
            .map(|f| vvform_from_doc(chart, f))
            .transpose()?,
        witness: doc.witness.as_ref().map(|w| witness_from_doc(chart, w)).transpose()?,
    })
}

pub fn verdict_envelope(chart: &Chart, v: &Verdict) -> Envelope {
    Envelope::new(Kind::Verdict, &verdict_to_doc(chart, v))
}

pub fn read_verdict(chart: &ChartRef, env: &Envelope) -> CliResult<Verdict> {
    verdict_from_doc(chart, &env.payload_as(Kind::Verdict)?)
}

/// Renders a monomial with chart names; used in text output.
pub fn render_monomial(chart: &Chart, m: &Monomial) -> String {
    m.render(chart.names())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext21() -> ChartRef {
        Chart::extended(2, 1).unwrap()
    }

    #[test]
    fn chart_documents() {
        let env = Envelope::parse(
            br#"{"schema_version":"1","kind":"chart","payload":{"kind":"extended","n":2,"N":1}}"#,
        )
        .unwrap();
        let c = read_chart(&env).unwrap();
        assert_eq!(c.dim(), 6);
        assert_eq!(read_chart(&chart_envelope(&c)).unwrap(), c);
        let ord = Chart::ordinary(2, 1, 3).unwrap();
        assert_eq!(read_chart(&chart_envelope(&ord)).unwrap(), ord);
        let bad = Envelope::parse(br#"{"schema_version":"2","kind":"chart","payload":{}}"#);
        assert!(matches!(bad, Err(CliError::Input(_))));
    }

    #[test]
    fn unknown_coordinate_is_named() {
        let c = Chart::extended(1, 1).unwrap();
        let doc = FieldDoc {
            components: [("p1_2".to_string(), "1".to_string())].into_iter().collect(),
            hamiltonian: None,
        };
        let err = field_from_doc(&c, &doc).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("p1_2"), "{err}");
    }

    #[test]
    fn repeated_index_rejected_unsorted_index_normalized() {
        let c = ext21();
        let rep = FormDoc {
            degree: 2,
            terms: vec![TermDoc { index: vec!["q1".into(), "q1".into()], coeff: "1".into() }],
        };
        let err = form_from_doc(&c, &rep).unwrap_err();
        assert!(err.to_string().contains("strictly increasing"), "{err}");

        let swapped = FormDoc {
            degree: 2,
            terms: vec![TermDoc { index: vec!["p1_1".into(), "dq1".into()], coeff: "2".into() }],
        };
        let f = form_from_doc(&c, &swapped).unwrap();
        let doc = form_to_doc(&f);
        assert_eq!(doc.terms, vec![TermDoc { index: vec!["q1".into(), "p1_1".into()], coeff: "-2".into() }]);
    }

    #[test]
    fn degree_mismatch_reports_location() {
        let c = ext21();
        let doc = FormDoc { degree: 2, terms: vec![TermDoc { index: vec!["q1".into()], coeff: "1".into() }] };
        let err = form_from_doc(&c, &doc).unwrap_err();
        assert!(err.to_string().contains("payload.terms[0].index"), "{err}");
    }

    #[test]
    fn non_reduced_rationals_are_normalized() {
        let c = ext21();
        let doc =
            FormDoc { degree: 1, terms: vec![TermDoc { index: vec!["x1".into()], coeff: "4/6*q1".into() }] };
        let f = form_from_doc(&c, &doc).unwrap();
        assert_eq!(form_to_doc(&f).terms[0].coeff, "2/3*q1");
    }

    #[test]
    fn generators_match_chart_kind() {
        let c = ext21();
        let doc = GeneratorsDoc { xmu: None, xi: vec!["0".into()], f0: vec!["0".into(), "0".into()] };
        assert!(generators_from_doc(&c, &doc).is_err());
        let doc = GeneratorsDoc {
            xmu: Some(vec!["-x2".into(), "x1".into()]),
            xi: vec!["0".into()],
            f0: vec!["x1*q1".into(), "0".into()],
        };
        let g = generators_from_doc(&c, &doc).unwrap();
        assert_eq!(generators_to_doc(&c, &g), doc);
        let bad = GeneratorsDoc { xmu: Some(vec!["p1_1".into(), "0".into()]), ..doc };
        assert_eq!(generators_from_doc(&c, &bad).unwrap_err().exit_code(), 2);
    }
}
