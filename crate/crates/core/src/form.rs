//! Differential forms with polynomial coefficients on a chart.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use crate::chart::{same_chart, ChartRef, Point};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{sign, Scalar};

/// Strictly increasing list of coordinate indices labelling `dξ^{I_1} ∧ … ∧ dξ^{I_k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// Accepts only strictly increasing input.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Some(MultiIndex(indices))
        } else {
            None
        }
    }

    /// Sorts arbitrary indices, returning the permutation parity, or `None`
    /// if an index repeats.
    pub fn sorted(mut indices: Vec<usize>) -> Option<(usize, Self)> {
        let mut swaps = 0;
        // insertion sort; indices are short
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((swaps % 2, MultiIndex(indices)))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `dξ^v ∧ dξ^I`: the merged index and the parity of moving `v` into place.
    pub fn prepend(&self, v: usize) -> Option<(usize, MultiIndex)> {
        match self.0.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Some((pos % 2, MultiIndex(out)))
            }
        }
    }

    /// Drops the entry at `pos`.
    pub fn without(&self, pos: usize) -> MultiIndex {
        let mut out = self.0.clone();
        out.remove(pos);
        MultiIndex(out)
    }

    /// `dξ^I ∧ dξ^J` in normal form with the parity of the merge.
    pub fn merge(&self, other: &MultiIndex) -> Option<(usize, MultiIndex)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut parity = 0;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else if a[i] > b[j] {
                // b[j] jumps over the remaining a's
                parity += a.len() - i;
                out.push(b[j]);
                j += 1;
            } else {
                return None;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((parity % 2, MultiIndex(out)))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|&v| format!("d{}", names[v])).collect::<Vec<_>>().join("^")
    }
}

/// A homogeneous differential form of degree `k` on a chart.
#[derive(Clone, Debug)]
pub struct DifferentialForm<S> {
    chart: ChartRef,
    degree: usize,
    terms: BTreeMap<MultiIndex, Polynomial<S>>,
}

impl<S: Scalar> PartialEq for DifferentialForm<S> {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.degree == other.degree && self.terms == other.terms
    }
}

/// A nonzero monomial of a form, used to witness that it does not vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S> {
    pub index: MultiIndex,
    pub monomial: Monomial,
    pub coefficient: S,
}

impl<S: Scalar> DifferentialForm<S> {
    pub fn zero(chart: &ChartRef, degree: usize) -> Self {
        DifferentialForm { chart: chart.clone(), degree, terms: BTreeMap::new() }
    }

    /// The 0-form `f`.
    pub fn function(chart: &ChartRef, f: Polynomial<S>) -> Self {
        let mut out = Self::zero(chart, 0);
        out.add_term(MultiIndex::empty(), f);
        out
    }

    /// `dξ^v` for coordinate index `v`.
    pub fn differential(chart: &ChartRef, v: usize) -> Self {
        Self::basis(chart, &[v])
    }

    /// `dξ^{v_1} ∧ … ∧ dξ^{v_k}` in the given (not necessarily sorted) order.
    pub fn basis(chart: &ChartRef, vars: &[usize]) -> Self {
        let mut out = Self::zero(chart, vars.len());
        if let Some((parity, idx)) = MultiIndex::sorted(vars.to_vec()) {
            out.add_term(idx, Polynomial::constant(sign(parity)));
        }
        out
    }

    /// Builds a form from `(index, coefficient)` pairs, checking lengths and
    /// coordinate bounds.
    pub fn from_terms<I>(chart: &ChartRef, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Polynomial<S>)>,
    {
        let mut out = Self::zero(chart, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::Dimension(format!(
                    "multi-index of length {} in a {}-form",
                    idx.len(),
                    degree
                )));
            }
            if idx.indices().iter().any(|&v| v >= chart.dim()) {
                return Err(Error::Dimension("multi-index outside the chart".into()));
            }
            if c.variables().iter().any(|&v| v >= chart.dim()) {
                return Err(Error::Dimension("coefficient uses a variable outside the chart".into()));
            }
            out.add_term(idx, c);
        }
        Ok(out)
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(Polynomial::is_negligible)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial<S>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Polynomial<S> {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// Coefficient of `self` along a single-term basis form `±dξ^I`, so that
    /// `self` contains `c · basis`.
    pub fn coefficient_along(&self, basis: &DifferentialForm<S>) -> Polynomial<S> {
        let mut it = basis.terms.iter();
        let Some((idx, unit)) = it.next() else {
            return Polynomial::zero();
        };
        debug_assert!(it.next().is_none(), "basis form must have a single term");
        let unit = unit.as_constant().expect("basis form must have a constant coefficient");
        self.coefficient(idx).scale(&(S::one() / unit))
    }

    /// The first nonzero monomial in normal order.
    pub fn witness(&self) -> Option<Witness<S>> {
        let (idx, c) = self.terms.iter().next()?;
        let (m, k) = c.leading()?;
        Some(Witness { index: idx.clone(), monomial: m.clone(), coefficient: k.clone() })
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: Polynomial<S>) {
        debug_assert_eq!(idx.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_chart(&self.chart, &other.chart) {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "cannot add a {}-form and a {}-form",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    /// Multiplies every coefficient by the function `f`.
    pub fn mul_function(&self, f: &Polynomial<S>) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c * f);
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        self.mul_function(&Polynomial::constant(c.clone()))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Polynomial<S>) -> Polynomial<S>) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), f(c));
        }
        out
    }

    /// Exterior product. Degrees beyond the chart dimension give the zero form.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.chart, self.degree + other.degree);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((parity, idx)) = ia.merge(ib) {
                    let c = ca * cb;
                    out.add_term(idx, if parity == 1 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    fn derivative_where(&self, along: impl Fn(usize) -> bool) -> Self {
        let mut out = Self::zero(&self.chart, self.degree + 1);
        for (idx, c) in &self.terms {
            for v in c.variables() {
                if !along(v) {
                    continue;
                }
                if let Some((parity, merged)) = idx.prepend(v) {
                    let dc = c.partial(v);
                    out.add_term(merged, if parity == 1 { -dc } else { dc });
                }
            }
        }
        out
    }

    /// Exterior derivative `d`.
    pub fn exterior_derivative(&self) -> Self {
        self.derivative_where(|_| true)
    }

    /// Vertical exterior derivative `d_V`: differentiates along fiber
    /// coordinates only, treating base coordinates as parameters.
    pub fn vertical_derivative(&self) -> Self {
        let chart = self.chart.clone();
        self.derivative_where(|v| chart.is_vertical(v))
    }

    /// Interior product `i_X`, contracting the leftmost slot: the `j`-th
    /// entry of a multi-index contributes sign `(-1)^(j-1)`.
    pub fn interior_product(&self, x: &VectorField<S>) -> Result<Self> {
        if !same_chart(&self.chart, x.chart()) {
            return Err(Error::ChartMismatch);
        }
        if self.degree == 0 {
            return Ok(Self::zero(&self.chart, 0));
        }
        let mut out = Self::zero(&self.chart, self.degree - 1);
        for (idx, c) in &self.terms {
            for (pos, &v) in idx.indices().iter().enumerate() {
                let xv = x.component(v);
                if xv.is_zero() {
                    continue;
                }
                let t = &xv * c;
                out.add_term(idx.without(pos), if pos % 2 == 1 { -t } else { t });
            }
        }
        Ok(out)
    }

    /// Lie derivative by Cartan's formula `L_X = i_X d + d i_X`.
    pub fn lie_derivative(&self, x: &VectorField<S>) -> Result<Self> {
        let a = self.exterior_derivative().interior_product(x)?;
        if self.degree == 0 {
            return Ok(a);
        }
        let b = self.interior_product(x)?.exterior_derivative();
        a.try_add(&b)
    }

    /// Vertical Lie derivative `i_X d_V + d_V i_X`; requires vertical `X`.
    pub fn vertical_lie_derivative(&self, x: &VectorField<S>) -> Result<Self> {
        x.require_vertical()?;
        let a = self.vertical_derivative().interior_product(x)?;
        if self.degree == 0 {
            return Ok(a);
        }
        let b = self.interior_product(x)?.vertical_derivative();
        a.try_add(&b)
    }

    /// Substitutes `var ↦ value` in the coefficients and `dξ^var ↦ d(value)`
    /// in the differentials: the pull-back by the graph of `value`.
    pub fn pullback_graph(&self, var: usize, value: &Polynomial<S>) -> Self {
        let dvalue = DifferentialForm::function(&self.chart, value.clone()).exterior_derivative();
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, c) in &self.terms {
            let c = c.substitute(var, value);
            match idx.indices().iter().position(|&v| v == var) {
                None => out.add_term(idx.clone(), c),
                Some(pos) => {
                    // dξ^I = (-1)^pos dξ^var ∧ dξ^{I \ var}
                    let mut rest = Self::zero(&self.chart, self.degree - 1);
                    rest.add_term(idx.without(pos), c);
                    let piece = dvalue.wedge(&rest).expect("same chart");
                    let piece = if pos % 2 == 1 { -piece } else { piece };
                    for (i, k) in piece.terms {
                        out.add_term(i, k);
                    }
                }
            }
        }
        out
    }

    /// Moves the form to another chart through an index map that must be
    /// order preserving on the indices that occur.
    pub fn transport(&self, target: &ChartRef, map: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        let mut out = Self::zero(target, self.degree);
        for (idx, c) in &self.terms {
            let image = idx
                .indices()
                .iter()
                .map(|&v| map(v))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Inconsistent("differential of a dropped coordinate".into()))?;
            let (parity, image) = MultiIndex::sorted(image)
                .ok_or_else(|| Error::Inconsistent("index map is not injective".into()))?;
            let c = c
                .reindex(&map)
                .ok_or_else(|| Error::Inconsistent("coefficient depends on a dropped coordinate".into()))?;
            out.add_term(image, if parity == 1 { -c } else { c });
        }
        Ok(out)
    }

    /// Drops every term whose multi-index fails `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&MultiIndex) -> bool) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, c) in &self.terms {
            if keep(idx) {
                out.add_term(idx.clone(), c.clone());
            }
        }
        out
    }

    /// Exact evaluation of every coefficient at `pt`; zero entries are dropped.
    pub fn evaluate_at(&self, pt: &Point<S>) -> BTreeMap<MultiIndex, S> {
        self.terms
            .iter()
            .map(|(idx, c)| (idx.clone(), c.eval(pt.values())))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Human-readable rendering such as `dq1^dp1_1^dx2 - dp^dx1^dx2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = self.chart.names();
        let mut out = String::new();
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let basis = idx.render(names);
            let mut coef = c.render(names);
            let neg = c.len() == 1 && coef.starts_with('-');
            if neg {
                coef.remove(0);
            }
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let coef = if c.len() > 1 { format!("({coef})") } else { coef };
            match (idx.is_empty(), coef.as_str()) {
                (true, _) => out.push_str(&coef),
                (false, "1") => out.push_str(&basis),
                _ => {
                    let _ = write!(out, "{coef} {basis}");
                }
            }
        }
        out
    }
}

impl<S: Scalar> Add for &DifferentialForm<S> {
    type Output = DifferentialForm<S>;

    /// Panics on chart or degree mismatch; use [`DifferentialForm::try_add`]
    /// for a fallible version.
    fn add(self, rhs: &DifferentialForm<S>) -> DifferentialForm<S> {
        self.try_add(rhs).expect("form addition")
    }
}

impl<S: Scalar> Sub for &DifferentialForm<S> {
    type Output = DifferentialForm<S>;
    fn sub(self, rhs: &DifferentialForm<S>) -> DifferentialForm<S> {
        self.try_add(&-rhs).expect("form subtraction")
    }
}

impl<S: Scalar> Neg for &DifferentialForm<S> {
    type Output = DifferentialForm<S>;
    fn neg(self) -> DifferentialForm<S> {
        DifferentialForm {
            chart: self.chart.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c)).collect(),
        }
    }
}

impl<S: Scalar> Neg for DifferentialForm<S> {
    type Output = DifferentialForm<S>;
    fn neg(self) -> DifferentialForm<S> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::{Rational, RationalForm, RationalPoly};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn multi_index_sorting_tracks_parity() {
        assert_eq!(MultiIndex::sorted(vec![2, 0, 1]), Some((0, MultiIndex(vec![0, 1, 2]))));
        assert_eq!(MultiIndex::sorted(vec![1, 0]), Some((1, MultiIndex(vec![0, 1]))));
        assert_eq!(MultiIndex::sorted(vec![1, 1]), None);
        assert!(MultiIndex::new(vec![0, 0]).is_none());
        let a = MultiIndex(vec![1, 3]);
        let b = MultiIndex(vec![0, 2]);
        // dξ1∧dξ3∧dξ0∧dξ2 -> 0,1,2,3 needs three transpositions
        assert_eq!(a.merge(&b), Some((1, MultiIndex(vec![0, 1, 2, 3]))));
    }

    #[test]
    fn wedge_of_basis_forms() {
        let c = Chart::extended(2, 1).unwrap();
        let dx1 = RationalForm::differential(&c, 0);
        let dx2 = RationalForm::differential(&c, 1);
        let w = dx1.wedge(&dx2).unwrap();
        assert_eq!(w.coefficient(&MultiIndex(vec![0, 1])), RationalPoly::one());
        assert_eq!(dx2.wedge(&dx1).unwrap(), -&w);
        assert!(dx1.wedge(&dx1).unwrap().is_zero());
    }

    #[test]
    fn wedge_multiplies_coefficients() {
        // (p dq) ∧ (q dp) = p·q dq∧dp on the (t, q, p) chart
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let (q, p) = (1, 2);
        let a = RationalForm::differential(&c, q).mul_function(&RationalPoly::var(p));
        let b = RationalForm::differential(&c, p).mul_function(&RationalPoly::var(q));
        let w = a.wedge(&b).unwrap();
        let expected =
            RationalForm::basis(&c, &[q, p]).mul_function(&(&RationalPoly::var(p) * &RationalPoly::var(q)));
        assert_eq!(w, expected);
    }

    #[test]
    fn derivative_of_product_coefficient() {
        // d(q·p dx1) = p dq∧dx1 + q dp∧dx1
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let (x, q, p) = (0, 1, 2);
        let a =
            RationalForm::differential(&c, x).mul_function(&(&RationalPoly::var(q) * &RationalPoly::var(p)));
        let expected = &RationalForm::basis(&c, &[q, x]).mul_function(&RationalPoly::var(p))
            + &RationalForm::basis(&c, &[p, x]).mul_function(&RationalPoly::var(q));
        assert_eq!(a.exterior_derivative(), expected);
        assert!(a.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn vertical_derivative_ignores_base() {
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let f = RationalForm::function(&c, &RationalPoly::var(0) * &RationalPoly::var(1));
        let expected = RationalForm::differential(&c, 1).mul_function(&RationalPoly::var(0));
        assert_eq!(f.vertical_derivative(), expected);
    }

    #[test]
    fn interior_product_signs() {
        let c = Chart::extended(2, 1).unwrap();
        let vol = RationalForm::basis(&c, &[0, 1]);
        let e1 = VectorField::coordinate(&c, 0);
        let e2 = VectorField::coordinate(&c, 1);
        assert_eq!(vol.interior_product(&e1).unwrap(), RationalForm::differential(&c, 1));
        assert_eq!(vol.interior_product(&e2).unwrap(), -RationalForm::differential(&c, 0));
        let twice = vol.interior_product(&e1).unwrap().interior_product(&e1).unwrap();
        assert!(twice.is_zero());
    }

    #[test]
    fn evaluation_drops_zeros() {
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let a =
            RationalForm::differential(&c, 1).mul_function(&(&RationalPoly::var(1) * &RationalPoly::var(2)));
        let pt = Point::from_values(&c, vec![r(5), r(2), r(3)]).unwrap();
        let v = a.evaluate_at(&pt);
        assert_eq!(v.len(), 1);
        assert_eq!(v[&MultiIndex(vec![1])], r(6));
        let zero = Point::from_values(&c, vec![r(0), r(0), r(0)]).unwrap();
        assert!(a.evaluate_at(&zero).is_empty());
        assert!(RationalForm::zero(&c, 2).evaluate_at(&pt).is_empty());
    }

    #[test]
    fn mismatched_charts_are_rejected() {
        let a = RationalForm::differential(&Chart::extended(1, 1).unwrap(), 0);
        let b = RationalForm::differential(&Chart::extended(2, 1).unwrap(), 0);
        assert_eq!(a.wedge(&b), Err(Error::ChartMismatch));
    }

    #[test]
    fn pullback_by_graph_substitutes_differentials() {
        // on (x, q, p): pulling back dp∧dx along p = q^2 gives 2q dq∧dx
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let a = RationalForm::basis(&c, &[2, 0]);
        let q2 = &RationalPoly::var(1) * &RationalPoly::var(1);
        let pulled = a.pullback_graph(2, &q2);
        let expected = RationalForm::basis(&c, &[1, 0]).mul_function(&RationalPoly::var(1).scale(&r(2)));
        assert_eq!(pulled, expected);
    }
}
