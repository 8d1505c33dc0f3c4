//! Forms with values in a trivialized coefficient bundle `f = f^a ⊗ ê_a`.
//!
//! The basis sections `ê_a` are constant, so every operation acts
//! componentwise.

use crate::chart::{same_chart, ChartRef};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::form::{DifferentialForm, Witness};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct VectorValuedForm<S> {
    chart: ChartRef,
    degree: usize,
    labels: Vec<String>,
    components: Vec<DifferentialForm<S>>,
}

impl<S: Scalar> PartialEq for VectorValuedForm<S> {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart)
            && self.degree == other.degree
            && self.labels == other.labels
            && self.components == other.components
    }
}

impl<S: Scalar> VectorValuedForm<S> {
    pub fn zero(chart: &ChartRef, labels: Vec<String>, degree: usize) -> Self {
        let components = labels.iter().map(|_| DifferentialForm::zero(chart, degree)).collect();
        VectorValuedForm { chart: chart.clone(), degree, labels, components }
    }

    pub fn new(chart: &ChartRef, labels: Vec<String>, components: Vec<DifferentialForm<S>>) -> Result<Self> {
        if labels.len() != components.len() {
            return Err(Error::Dimension(format!(
                "{} labels for {} components",
                labels.len(),
                components.len()
            )));
        }
        let degree = components.first().map_or(0, DifferentialForm::degree);
        for c in &components {
            if !same_chart(c.chart(), chart) {
                return Err(Error::ChartMismatch);
            }
            if c.degree() != degree {
                return Err(Error::Dimension("components of different degree".into()));
            }
        }
        Ok(VectorValuedForm { chart: chart.clone(), degree, labels, components })
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn components(&self) -> &[DifferentialForm<S>] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &DifferentialForm<S> {
        &self.components[a]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(DifferentialForm::is_zero)
    }

    /// First nonzero monomial with the label index it belongs to.
    pub fn witness(&self) -> Option<(usize, Witness<S>)> {
        self.components.iter().enumerate().find_map(|(a, c)| c.witness().map(|w| (a, w)))
    }

    fn map_components(
        &self,
        f: impl Fn(&DifferentialForm<S>) -> Result<DifferentialForm<S>>,
    ) -> Result<Self> {
        let components = self.components.iter().map(f).collect::<Result<Vec<_>>>()?;
        let degree = components.first().map_or(self.degree, DifferentialForm::degree);
        Ok(VectorValuedForm { chart: self.chart.clone(), degree, labels: self.labels.clone(), components })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.labels != other.labels {
            return Err(Error::Dimension("different coefficient bases".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.chart, self.labels.clone(), components)
    }

    pub fn neg(&self) -> Self {
        self.map_components(|c| Ok(-c)).expect("negation is infallible")
    }

    pub fn interior_product(&self, x: &VectorField<S>) -> Result<Self> {
        self.map_components(|c| c.interior_product(x))
    }

    pub fn vertical_derivative(&self) -> Self {
        self.map_components(|c| Ok(c.vertical_derivative())).expect("infallible")
    }

    pub fn exterior_derivative(&self) -> Self {
        self.map_components(|c| Ok(c.exterior_derivative())).expect("infallible")
    }

    /// Componentwise `i_X d_V + d_V i_X`; `X` must be vertical.
    pub fn vertical_lie_derivative(&self, x: &VectorField<S>) -> Result<Self> {
        x.require_vertical()?;
        self.map_components(|c| c.vertical_lie_derivative(x))
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("({}) (x) {l}", c.render()))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::{RationalForm, RationalVvForm};

    #[test]
    fn rejects_mixed_degrees() {
        let c = Chart::ordinary(1, 1, 2).unwrap();
        let labels = c.basis_labels();
        let bad = RationalVvForm::new(
            &c,
            labels.clone(),
            vec![RationalForm::differential(&c, 1), RationalForm::basis(&c, &[1, 2])],
        );
        assert!(bad.is_err());
        assert!(RationalVvForm::new(&c, labels, vec![]).is_err());
    }

    #[test]
    fn vertical_lie_requires_vertical_field() {
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let f = RationalVvForm::zero(&c, c.basis_labels(), 1);
        let x = VectorField::coordinate(&c, 0);
        assert!(matches!(f.vertical_lie_derivative(&x), Err(Error::NotVertical(_))));
    }
}
