//! The calculus runs over any `Scalar`; the classifiers are exact only over
//! rationals, but the kernel identities hold for small-integer data in
//! floating point and in `Rational64` as well.

use multiphase::multisymplectic::{canonical_omega, canonical_theta, contraction_omega};
use multiphase::{Chart, DifferentialForm, F64Field, F64Form, F64Poly, Polynomial, Scalar, VectorField};
use num_rational::Rational64;

fn identities<S: Scalar>() {
    let c = Chart::extended(2, 1).unwrap();
    let omega: DifferentialForm<S> = canonical_omega(&c).unwrap();
    let theta: DifferentialForm<S> = canonical_theta(&c).unwrap();
    assert!((&omega + &theta.exterior_derivative()).is_negligible());

    let q = Polynomial::<S>::var(c.position(0));
    let mut x = VectorField::zero(&c);
    x.set(c.energy().unwrap(), q.clone());
    x.set(c.momentum(0, 0), Polynomial::var(c.base(0)));
    let generic = omega.interior_product(&x).unwrap();
    assert!((&generic - &contraction_omega(&x).unwrap()).is_negligible());
    assert!(generic.exterior_derivative().is_negligible());
    assert!(omega.lie_derivative(&x).unwrap().is_negligible());
}

#[test]
fn f64_kernel() {
    identities::<f64>();
    let c = Chart::ordinary(1, 1, 1).unwrap();
    let p: F64Poly = Polynomial::var(c.momentum(0, 0));
    let a: F64Form = DifferentialForm::function(&c, &p * &p);
    let x: F64Field = VectorField::coordinate(&c, c.momentum(0, 0));
    assert_eq!(a.lie_derivative(&x).unwrap(), DifferentialForm::function(&c, p.scale(&2.0)));
}

#[test]
fn f32_kernel() {
    identities::<f32>();
}

#[test]
fn rational64_kernel() {
    identities::<Rational64>();
}
