use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use crate::chart::{same_chart, ChartRef};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// A vector field `X = Σ X^ξ ∂/∂ξ` with polynomial components. Missing
/// components are zero.
#[derive(Clone, Debug)]
pub struct VectorField<S> {
    chart: ChartRef,
    components: BTreeMap<usize, Polynomial<S>>,
}

impl<S: Scalar> PartialEq for VectorField<S> {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.components == other.components
    }
}

impl<S: Scalar> VectorField<S> {
    pub fn zero(chart: &ChartRef) -> Self {
        VectorField { chart: chart.clone(), components: BTreeMap::new() }
    }

    /// The coordinate field `∂/∂ξ^v`.
    pub fn coordinate(chart: &ChartRef, v: usize) -> Self {
        let mut x = Self::zero(chart);
        x.set(v, Polynomial::one());
        x
    }

    pub fn from_components<I>(chart: &ChartRef, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Polynomial<S>)>,
    {
        let mut x = Self::zero(chart);
        for (v, c) in components {
            if v >= chart.dim() || c.variables().iter().any(|&w| w >= chart.dim()) {
                return Err(Error::Dimension(format!("component {v} outside the chart")));
            }
            x.add_component(v, &c);
        }
        Ok(x)
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn component(&self, v: usize) -> Polynomial<S> {
        self.components.get(&v).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Polynomial<S>)> {
        self.components.iter().map(|(&v, c)| (v, c))
    }

    pub fn set(&mut self, v: usize, c: Polynomial<S>) {
        assert!(v < self.chart.dim(), "component {v} outside the chart");
        if c.is_zero() {
            self.components.remove(&v);
        } else {
            self.components.insert(v, c);
        }
    }

    pub fn add_component(&mut self, v: usize, c: &Polynomial<S>) {
        let sum = &self.component(v) + c;
        self.set(v, sum);
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// No component along a base coordinate.
    pub fn is_vertical(&self) -> bool {
        self.components.keys().all(|&v| self.chart.is_vertical(v))
    }

    pub fn require_vertical(&self) -> Result<()> {
        match self.components.keys().find(|&&v| !self.chart.is_vertical(v)) {
            Some(&v) => Err(Error::NotVertical(self.chart.name(v).to_string())),
            None => Ok(()),
        }
    }

    pub fn mul_function(&self, f: &Polynomial<S>) -> Self {
        let mut out = Self::zero(&self.chart);
        for (&v, c) in &self.components {
            out.set(v, c * f);
        }
        out
    }

    /// Moves the field to another chart through an index map; components
    /// whose index maps to `None` must be zero.
    pub fn transport(&self, target: &ChartRef, map: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        let mut out = Self::zero(target);
        for (&v, c) in &self.components {
            let w = map(v).ok_or_else(|| {
                Error::Inconsistent(format!("component {} has no image", self.chart.name(v)))
            })?;
            let moved = c.reindex(&map).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "component {} depends on a dropped coordinate",
                    self.chart.name(v)
                ))
            })?;
            out.add_component(w, &moved);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.components.is_empty() {
            return "0".to_string();
        }
        let names = self.chart.names();
        self.components
            .iter()
            .map(|(&v, c)| format!("({}) d/d{}", c.render(names), names[v]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: Scalar> Add for &VectorField<S> {
    type Output = VectorField<S>;
    fn add(self, rhs: &VectorField<S>) -> VectorField<S> {
        assert!(same_chart(&self.chart, &rhs.chart), "vector fields on different charts");
        let mut out = self.clone();
        for (&v, c) in &rhs.components {
            out.add_component(v, c);
        }
        out
    }
}

impl<S: Scalar> Sub for &VectorField<S> {
    type Output = VectorField<S>;
    fn sub(self, rhs: &VectorField<S>) -> VectorField<S> {
        self + &rhs.mul_function(&Polynomial::constant(-S::one()))
    }
}
