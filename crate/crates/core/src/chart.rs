//! Darboux coordinate charts on extended and ordinary multiphase space.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Base,
    Position,
    Multimomentum,
    Energy,
}

impl Role {
    pub fn is_vertical(self) -> bool {
        self != Role::Base
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChartKind {
    /// Multisymplectic: `(x^μ, q^i, p_i^μ, p)`.
    Extended,
    /// Polysymplectic: `(x^μ, q^i, p_i^a)`.
    Ordinary,
}

impl fmt::Display for ChartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartKind::Extended => "extended",
            ChartKind::Ordinary => "ordinary",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub name: String,
    pub role: Role,
}

/// An ordered coordinate system. The order is fixed (base, position,
/// multimomentum lexicographic in `(i, a)`, energy) and defines the normal
/// form of every multi-index on the chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    kind: ChartKind,
    n: usize,
    npos: usize,
    nhat: usize,
    coords: Vec<Coordinate>,
    names: Vec<String>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    /// Extended multiphase chart of dimension `(N+1)(n+1)`.
    pub fn extended(n: usize, npos: usize) -> Result<ChartRef> {
        if n == 0 || npos == 0 {
            return Err(Error::InvalidChart(format!(
                "extended chart needs n >= 1 and N >= 1, got n={n}, N={npos}"
            )));
        }
        Ok(Arc::new(Self::build(ChartKind::Extended, n, npos, n)))
    }

    /// Ordinary multiphase chart of dimension `n + N + N·n̂`.
    pub fn ordinary(n: usize, npos: usize, nhat: usize) -> Result<ChartRef> {
        if n == 0 || npos == 0 || nhat == 0 {
            return Err(Error::InvalidChart(format!(
                "ordinary chart needs n, N, nhat >= 1, got n={n}, N={npos}, nhat={nhat}"
            )));
        }
        Ok(Arc::new(Self::build(ChartKind::Ordinary, n, npos, nhat)))
    }

    fn build(kind: ChartKind, n: usize, npos: usize, nhat: usize) -> Chart {
        let mut coords = Vec::new();
        for mu in 1..=n {
            coords.push(Coordinate { name: format!("x{mu}"), role: Role::Base });
        }
        for i in 1..=npos {
            coords.push(Coordinate { name: format!("q{i}"), role: Role::Position });
        }
        for i in 1..=npos {
            for a in 1..=nhat {
                coords.push(Coordinate { name: format!("p{i}_{a}"), role: Role::Multimomentum });
            }
        }
        if kind == ChartKind::Extended {
            coords.push(Coordinate { name: "p".to_string(), role: Role::Energy });
        }
        let names = coords.iter().map(|c| c.name.clone()).collect();
        Chart { kind, n, npos, nhat, coords, names }
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    /// Base dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of positions `N`.
    pub fn npos(&self) -> usize {
        self.npos
    }

    /// Number of coefficient-basis labels; equals `n` on extended charts.
    pub fn nhat(&self) -> usize {
        self.nhat
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn role(&self, index: usize) -> Role {
        self.coords[index].role
    }

    pub fn is_vertical(&self, index: usize) -> bool {
        self.coords[index].role.is_vertical()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of `x^μ`, with `mu` zero-based.
    pub fn base(&self, mu: usize) -> usize {
        assert!(mu < self.n, "base index {mu} out of range");
        mu
    }

    /// Index of `q^i`, zero-based.
    pub fn position(&self, i: usize) -> usize {
        assert!(i < self.npos, "position index {i} out of range");
        self.n + i
    }

    /// Index of `p_i^a`, zero-based in both slots.
    pub fn momentum(&self, i: usize, a: usize) -> usize {
        assert!(i < self.npos && a < self.nhat, "momentum index ({i},{a}) out of range");
        self.n + self.npos + i * self.nhat + a
    }

    /// Index of the energy coordinate `p`, if the chart has one.
    pub fn energy(&self) -> Option<usize> {
        match self.kind {
            ChartKind::Extended => Some(self.dim() - 1),
            ChartKind::Ordinary => None,
        }
    }

    pub fn base_indices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn vertical_indices(&self) -> std::ops::Range<usize> {
        self.n..self.dim()
    }

    /// Basis labels `e1..e{nhat}` of the coefficient bundle.
    pub fn basis_labels(&self) -> Vec<String> {
        (1..=self.nhat).map(|a| format!("e{a}")).collect()
    }

    pub fn require(&self, kind: ChartKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::WrongChartKind { expected: kind, found: self.kind });
        }
        Ok(())
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ChartKind::Extended => write!(f, "extended(n={}, N={})", self.n, self.npos),
            ChartKind::Ordinary => {
                write!(f, "ordinary(n={}, N={}, nhat={})", self.n, self.npos, self.nhat)
            }
        }
    }
}

/// Same chart by identity or by value.
pub fn same_chart(a: &ChartRef, b: &ChartRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A point of a chart, one value per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<S> {
    values: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn from_values(chart: &Chart, values: Vec<S>) -> Result<Self> {
        if values.len() != chart.dim() {
            return Err(Error::Dimension(format!(
                "point has {} values, chart has {} coordinates",
                values.len(),
                chart.dim()
            )));
        }
        Ok(Point { values })
    }

    /// Builds a point from a name map; every chart coordinate must be present.
    pub fn from_named(chart: &Chart, values: &BTreeMap<String, S>) -> Result<Self> {
        let mut out = Vec::with_capacity(chart.dim());
        for name in chart.names() {
            match values.get(name) {
                Some(v) => out.push(v.clone()),
                None => return Err(Error::MissingCoordinate(name.clone())),
            }
        }
        Ok(Point { values: out })
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_dimensions() {
        assert_eq!(Chart::extended(1, 1).unwrap().dim(), 4);
        assert_eq!(Chart::extended(2, 1).unwrap().dim(), 6);
        assert_eq!(Chart::extended(3, 2).unwrap().dim(), 12);
        for n in 1..4 {
            for npos in 1..4 {
                assert_eq!(Chart::extended(n, npos).unwrap().dim(), (npos + 1) * (n + 1));
            }
        }
    }

    #[test]
    fn ordinary_dimensions() {
        assert_eq!(Chart::ordinary(2, 1, 2).unwrap().dim(), 5);
        assert_eq!(Chart::ordinary(2, 2, 2).unwrap().dim(), 8);
        let c = Chart::ordinary(1, 1, 1).unwrap();
        assert_eq!(c.names(), ["x1", "q1", "p1_1"]);
        assert_eq!(c.energy(), None);
    }

    #[test]
    fn coordinate_order_and_roles() {
        let c = Chart::extended(2, 2).unwrap();
        assert_eq!(c.names(), ["x1", "x2", "q1", "q2", "p1_1", "p1_2", "p2_1", "p2_2", "p"]);
        assert_eq!(c.momentum(1, 0), c.index_of("p2_1").unwrap());
        assert_eq!(c.role(c.energy().unwrap()), Role::Energy);
        assert!(!c.is_vertical(1));
        assert!(c.is_vertical(2));
    }

    #[test]
    fn rejects_zero_sizes() {
        assert!(matches!(Chart::extended(0, 1), Err(Error::InvalidChart(_))));
        assert!(matches!(Chart::ordinary(1, 0, 1), Err(Error::InvalidChart(_))));
        assert!(matches!(Chart::ordinary(1, 1, 0), Err(Error::InvalidChart(_))));
    }

    #[test]
    fn point_requires_every_coordinate() {
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let mut m = BTreeMap::new();
        m.insert("x1".to_string(), 1.0f64);
        m.insert("q1".to_string(), 2.0);
        assert_eq!(Point::from_named(&c, &m), Err(Error::MissingCoordinate("p1_1".to_string())));
        m.insert("p1_1".to_string(), 3.0);
        assert_eq!(Point::from_named(&c, &m).unwrap().values(), [1.0, 2.0, 3.0]);
    }
}
