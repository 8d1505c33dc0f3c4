//! Sparse multivariate polynomials over a [`Scalar`].
//!
//! Variables are identified by their index in a chart's coordinate list, so a
//! polynomial carries no chart of its own. Terms are kept in a `BTreeMap`
//! keyed by monomial, with no zero coefficients stored, which makes equality
//! a structural comparison.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::scalar::Scalar;

/// A power product `Π v^e`, stored as `(variable, exponent)` pairs sorted by
/// variable with every exponent positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Monomial(vec![(index, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_powers<I: IntoIterator<Item = (usize, u32)>>(powers: I) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0u32) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.binary_search_by_key(&var, |&(v, _)| v).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Sum of exponents over the variables selected by `pred`.
    pub fn degree_where(&self, pred: impl Fn(usize) -> bool) -> u32 {
        self.0.iter().filter(|&&(v, _)| pred(v)).map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `var` by one, returning the old exponent.
    fn lower(&self, var: usize) -> Option<(u32, Monomial)> {
        let pos = self.0.binary_search_by_key(&var, |&(v, _)| v).ok()?;
        let e = self.0[pos].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    /// Renders the monomial as `x1*q1^2`, or `1` for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                s.push('*');
            }
            let name = names.get(v).map(String::as_str).unwrap_or("?");
            if e == 1 {
                s.push_str(name);
            } else {
                let _ = write!(s, "{name}^{e}");
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for Polynomial<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(index: usize) -> Self {
        Self::term(S::one(), Monomial::var(index))
    }

    pub fn term(c: S, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, S)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient passes [`Scalar::is_negligible`].
    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(Scalar::is_negligible)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, S)> {
        self.terms.into_iter()
    }

    /// Coefficient of `m`, if present.
    pub fn coefficient(&self, m: &Monomial) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .filter(|(_, k)| !k.is_zero())
                .collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn depends_on_any(&self, pred: impl Fn(usize) -> bool) -> bool {
        self.terms.keys().any(|m| m.powers().iter().any(|&(v, _)| pred(v)))
    }

    /// Sorted list of variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut vars: Vec<usize> =
            self.terms.keys().flat_map(|m| m.powers().iter().map(|&(v, _)| v)).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(var) {
                out.add_term(lowered, c.clone() * S::from_i64(e as i64));
            }
        }
        out
    }

    /// Antiderivative in `var` vanishing on the hyperplane `var = 0`.
    pub fn integrate(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var) + 1;
            let raised = m.mul(&Monomial::var(var));
            out.add_term(raised, c.clone() / S::from_i64(e as i64));
        }
        out
    }

    /// Rescales every term by `f(monomial)`.
    pub fn map_terms(&self, f: impl Fn(&Monomial) -> S) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * f(m));
        }
        out
    }

    /// Replaces `var` by `value` everywhere.
    pub fn substitute(&self, var: usize, value: &Polynomial<S>) -> Self {
        let mut out = Self::zero();
        let mut powers: Vec<Polynomial<S>> = vec![Self::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let rest = Monomial::from_powers(m.powers().iter().copied().filter(|&(v, _)| v != var));
            let base = Self::term(c.clone(), rest);
            out += &(&base * &powers[e]);
        }
        out
    }

    /// Renames variables through `map`; `None` if a variable has no image.
    pub fn reindex(&self, map: impl Fn(usize) -> Option<usize>) -> Option<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let powers =
                m.powers().iter().map(|&(v, e)| map(v).map(|w| (w, e))).collect::<Option<Vec<_>>>()?;
            out.add_term(Monomial::from_powers(powers), c.clone());
        }
        Some(out)
    }

    /// Evaluates with `value(var)` supplying each variable.
    pub fn eval_with(&self, value: impl Fn(usize) -> S) -> S {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.powers() {
                let x = value(v);
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval(&self, values: &[S]) -> S {
        self.eval_with(|v| values[v].clone())
    }

    /// First term in monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&m.render(names));
            } else {
                let _ = write!(out, "{mag}*{}", m.render(names));
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    /// Renders with generic variable names `v0, v1, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.variables().last().map_or(0, |v| v + 1);
        let names: Vec<String> = (0..max).map(|i| format!("v{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl<S: Scalar> AddAssign<&Polynomial<S>> for Polynomial<S> {
    fn add_assign(&mut self, rhs: &Polynomial<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&Polynomial<S>> for Polynomial<S> {
    fn sub_assign(&mut self, rhs: &Polynomial<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Add for Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(mut self, rhs: Polynomial<S>) -> Polynomial<S> {
        self += &rhs;
        self
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> Sub for Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(mut self, rhs: Polynomial<S>) -> Polynomial<S> {
        self -= &rhs;
        self
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        -&self
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Mul for Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: Polynomial<S>) -> Polynomial<S> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    type P = Polynomial<Rational>;

    #[test]
    fn arithmetic_cancels_to_canonical_zero() {
        let x = P::var(0);
        let y = P::var(1);
        let a = &(&x + &y) * &(&x - &y);
        let b = &(&x * &x) - &(&y * &y);
        assert_eq!(a, b);
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn partial_and_integrate_are_inverse_up_to_constants() {
        let x = P::var(0);
        let y = P::var(2);
        let p = &(&(&x * &x) * &y).scale(&q(3, 2)) + &P::constant(q(5, 1));
        assert_eq!(p.partial(0), (&x * &y).scale(&q(3, 1)));
        let back = p.partial(0).integrate(0);
        assert_eq!(back, (&(&x * &x) * &y).scale(&q(3, 2)));
        assert!(p.partial(7).is_zero());
    }

    #[test]
    fn substitution_expands() {
        // (v0 + 1)^2 with v0 -> v1 - 1 gives v1^2
        let x = P::var(0);
        let one = P::one();
        let p = &(&x + &one) * &(&x + &one);
        let r = p.substitute(0, &(&P::var(1) - &one));
        assert_eq!(r, &P::var(1) * &P::var(1));
    }

    #[test]
    fn evaluation_and_rendering() {
        let names: Vec<String> = ["q", "p"].iter().map(|s| s.to_string()).collect();
        let p = &(&P::var(0) * &P::var(1)) - &P::constant(q(1, 2));
        assert_eq!(p.eval(&[q(2, 1), q(3, 1)]), q(11, 2));
        assert_eq!(p.render(&names), "-1/2 + q*p");
        assert_eq!(P::zero().render(&names), "0");
    }

    #[test]
    fn monomial_product_merges_exponents() {
        let a = Monomial::from_powers([(0, 1), (2, 2)]);
        let b = Monomial::from_powers([(2, 1), (3, 1)]);
        assert_eq!(a.mul(&b), Monomial::from_powers([(0, 1), (2, 3), (3, 1)]));
        assert_eq!(a.mul(&b).total_degree(), 5);
    }
}
