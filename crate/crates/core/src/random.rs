//! Seeded random instances for property checks.
//!
//! Coefficients are drawn uniformly from `{−9..9} \ {0}` and divided by a
//! denominator in `1..=4`. Polynomials have total degree at most
//! `max_degree` and at most `max_terms` terms. Chart sizes come from
//! [`CHART_SIZES`].

use rand::seq::index::sample;
use rand::Rng;

use crate::chart::{Chart, ChartKind, ChartRef, Point};
use crate::field::VectorField;
use crate::form::{DifferentialForm, MultiIndex};
use crate::multisymplectic::HamiltonianGenerators;
use crate::poly::{Monomial, Polynomial};
use crate::polysymplectic::PolyHamiltonianGenerators;
use crate::Rational;

/// `(n, N)` pairs used for random charts. Ordinary charts take `n̂ = n`.
pub const CHART_SIZES: [(usize, usize); 4] = [(1, 1), (2, 1), (2, 2), (3, 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_degree: 3, max_terms: 4 }
    }
}

pub fn chart_size<R: Rng + ?Sized>(rng: &mut R) -> (usize, usize) {
    CHART_SIZES[rng.gen_range(0..CHART_SIZES.len())]
}

pub fn extended_chart<R: Rng + ?Sized>(rng: &mut R) -> ChartRef {
    let (n, npos) = chart_size(rng);
    Chart::extended(n, npos).expect("chart sizes are valid")
}

pub fn ordinary_chart<R: Rng + ?Sized>(rng: &mut R) -> ChartRef {
    let (n, npos) = chart_size(rng);
    Chart::ordinary(n, npos, n).expect("chart sizes are valid")
}

pub fn chart_of_kind<R: Rng + ?Sized>(rng: &mut R, kind: ChartKind) -> ChartRef {
    match kind {
        ChartKind::Extended => extended_chart(rng),
        ChartKind::Ordinary => ordinary_chart(rng),
    }
}

pub fn coefficient<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut num = rng.gen_range(1..=9i64);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    let den = rng.gen_range(1..=4i64);
    Rational::new(num.into(), den.into())
}

/// A monomial in `vars` of total degree `0..=max_degree`.
pub fn monomial<R: Rng + ?Sized>(rng: &mut R, vars: &[usize], max_degree: u32) -> Monomial {
    if vars.is_empty() {
        return Monomial::one();
    }
    let degree = rng.gen_range(0..=max_degree);
    let mut powers = vec![0u32; vars.len()];
    for _ in 0..degree {
        powers[rng.gen_range(0..vars.len())] += 1;
    }
    Monomial::from_powers(vars.iter().copied().zip(powers).filter(|&(_, e)| e > 0))
}

/// A polynomial in `vars` with up to `max_terms` terms; may be zero.
pub fn polynomial<R: Rng + ?Sized>(rng: &mut R, vars: &[usize], bounds: Bounds) -> Polynomial<Rational> {
    let terms = rng.gen_range(0..=bounds.max_terms);
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        p.add_term(monomial(rng, vars, bounds.max_degree), coefficient(rng));
    }
    p
}

/// A polynomial in `vars` that is not identically zero.
pub fn nonzero_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    vars: &[usize],
    bounds: Bounds,
) -> Polynomial<Rational> {
    loop {
        let p = polynomial(rng, vars, bounds);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A monomial of positive degree in `vars` (which must be non-empty),
/// times a random coefficient.
pub fn nonconstant_term<R: Rng + ?Sized>(
    rng: &mut R,
    vars: &[usize],
    max_degree: u32,
) -> Polynomial<Rational> {
    let max_degree = max_degree.max(1);
    let degree = rng.gen_range(1..=max_degree);
    let mut powers = vec![0u32; vars.len()];
    powers[rng.gen_range(0..vars.len())] += 1;
    for _ in 1..degree {
        powers[rng.gen_range(0..vars.len())] += 1;
    }
    let m = Monomial::from_powers(vars.iter().copied().zip(powers).filter(|&(_, e)| e > 0));
    Polynomial::term(coefficient(rng), m)
}

pub fn all_variables(chart: &Chart) -> Vec<usize> {
    (0..chart.dim()).collect()
}

/// Base and position coordinates: the variables the generators may use.
pub fn base_and_positions(chart: &Chart) -> Vec<usize> {
    chart.base_indices().chain((0..chart.npos()).map(|i| chart.position(i))).collect()
}

/// A `k`-form with up to `max_terms` random terms.
pub fn form<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &ChartRef,
    degree: usize,
    bounds: Bounds,
) -> DifferentialForm<Rational> {
    let vars = all_variables(chart);
    let mut out = DifferentialForm::zero(chart, degree);
    if degree > chart.dim() {
        return out;
    }
    let terms = rng.gen_range(0..=bounds.max_terms);
    for _ in 0..terms {
        let mut idx = sample(rng, chart.dim(), degree).into_vec();
        idx.sort_unstable();
        let idx = MultiIndex::new(idx).expect("sampled indices are distinct");
        out.add_term(idx, polynomial(rng, &vars, bounds));
    }
    out
}

/// A form of random degree `0..=max_form_degree`.
pub fn form_any_degree<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &ChartRef,
    max_form_degree: usize,
    bounds: Bounds,
) -> DifferentialForm<Rational> {
    let degree = rng.gen_range(0..=max_form_degree.min(chart.dim()));
    form(rng, chart, degree, bounds)
}

/// A vector field with random polynomial components in all variables;
/// `vertical` restricts the support to fiber directions.
pub fn vector_field<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &ChartRef,
    vertical: bool,
    bounds: Bounds,
) -> VectorField<Rational> {
    let vars = all_variables(chart);
    let mut x = VectorField::zero(chart);
    for v in 0..chart.dim() {
        if vertical && !chart.is_vertical(v) {
            continue;
        }
        x.set(v, polynomial(rng, &vars, bounds));
    }
    x
}

/// Generators satisfying the theorem's dependence constraints on an
/// extended chart; `with_f0 = false` makes every `f_0^μ` zero.
pub fn generators<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &ChartRef,
    with_f0: bool,
    bounds: Bounds,
) -> HamiltonianGenerators<Rational> {
    let xq = base_and_positions(chart);
    let base: Vec<usize> = chart.base_indices().collect();
    let xmu_vars = if chart.npos() > 1 { &base } else { &xq };
    HamiltonianGenerators {
        xmu: (0..chart.n()).map(|_| polynomial(rng, xmu_vars, bounds)).collect(),
        xi: (0..chart.npos()).map(|_| polynomial(rng, &xq, bounds)).collect(),
        f0: (0..chart.n())
            .map(|_| if with_f0 { polynomial(rng, &xq, bounds) } else { Polynomial::zero() })
            .collect(),
    }
}

pub fn poly_generators<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &ChartRef,
    with_f0: bool,
    bounds: Bounds,
) -> PolyHamiltonianGenerators<Rational> {
    let xq = base_and_positions(chart);
    PolyHamiltonianGenerators {
        xi: (0..chart.npos()).map(|_| polynomial(rng, &xq, bounds)).collect(),
        f0: (0..chart.nhat())
            .map(|_| if with_f0 { polynomial(rng, &xq, bounds) } else { Polynomial::zero() })
            .collect(),
    }
}

/// A hamiltonian `H(x, q, p_i^μ)` on an extended chart (no energy dependence).
pub fn hamiltonian<R: Rng + ?Sized>(rng: &mut R, chart: &ChartRef, bounds: Bounds) -> Polynomial<Rational> {
    let energy = chart.energy();
    let vars: Vec<usize> = (0..chart.dim()).filter(|&v| Some(v) != energy).collect();
    polynomial(rng, &vars, bounds)
}

/// A point with coordinates `k / d`, `|k| ≤ 5`, `1 ≤ d ≤ 3`.
pub fn point<R: Rng + ?Sized>(rng: &mut R, chart: &Chart) -> Point<Rational> {
    let values = (0..chart.dim())
        .map(|_| {
            let k = rng.gen_range(-5..=5i64);
            let d = rng.gen_range(1..=3i64);
            Rational::new(k.into(), d.into())
        })
        .collect();
    Point::from_values(chart, values).expect("dimension matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_data_respects_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bounds = Bounds { max_degree: 2, max_terms: 3 };
        for _ in 0..50 {
            let c = extended_chart(&mut rng);
            let p = polynomial(&mut rng, &all_variables(&c), bounds);
            assert!(p.len() <= 3);
            assert!(p.total_degree() <= 2);
            for (_, coef) in p.terms() {
                assert!((num_bigint::BigInt::from(12) % coef.denom()).is_zero());
            }
            let g = generators(&mut rng, &c, true, bounds);
            g.validate(&c).unwrap();
            let oc = ordinary_chart(&mut rng);
            poly_generators(&mut rng, &oc, true, bounds).validate(&oc).unwrap();
            assert!(vector_field(&mut rng, &oc, true, bounds).is_vertical());
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let c = extended_chart(&mut rng);
            form(&mut rng, &c, 2, Bounds::default())
        };
        let b = {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let c = extended_chart(&mut rng);
            form(&mut rng, &c, 2, Bounds::default())
        };
        assert_eq!(a, b);
    }
}
