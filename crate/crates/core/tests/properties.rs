use multiphase::homotopy::{poincare_homotopy, vertical_homotopy};
use multiphase::multisymplectic::{
    canonical_omega, classify, construct_hamiltonian_vf, contraction_omega, hamiltonian_form_of,
    solve_inverse, HamiltonianStatus,
};
use multiphase::polysymplectic::{
    classify_vertical, construct_polyhamiltonian_vf, contraction_omega_hat, hamiltonian_section_of,
    solve_inverse_poly,
};
use multiphase::random::{self, Bounds};
use multiphase::{ChartKind, ChartRef, RationalForm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn chart(rng: &mut ChaCha8Rng) -> ChartRef {
    let kind = if rand::Rng::gen_bool(rng, 0.5) { ChartKind::Extended } else { ChartKind::Ordinary };
    random::chart_of_kind(rng, kind)
}

fn form(rng: &mut ChaCha8Rng, chart: &ChartRef) -> RationalForm {
    random::form_any_degree(rng, chart, 3, Bounds::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_and_dv_square_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = chart(&mut r);
        let a = form(&mut r, &c);
        prop_assert!(a.exterior_derivative().exterior_derivative().is_zero());
        prop_assert!(a.vertical_derivative().vertical_derivative().is_zero());
    }

    #[test]
    fn d_commutes_with_lie_derivative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = chart(&mut r);
        let a = form(&mut r, &c);
        let x = random::vector_field(&mut r, &c, false, Bounds::default());
        prop_assert_eq!(
            a.lie_derivative(&x).unwrap().exterior_derivative(),
            a.exterior_derivative().lie_derivative(&x).unwrap()
        );
    }

    #[test]
    fn homotopies_invert_their_derivative_on_closed_forms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = chart(&mut r);
        let b = random::form(&mut r, &c, 1 + (seed % 2) as usize, Bounds::default());
        let closed = b.exterior_derivative();
        prop_assert_eq!(poincare_homotopy(&closed).unwrap().exterior_derivative(), closed);
        let v_closed = b.vertical_derivative();
        prop_assert_eq!(vertical_homotopy(&v_closed).vertical_derivative(), v_closed);
    }

    #[test]
    fn constructed_fields_classify_and_solve_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random::extended_chart(&mut r);
        let g = random::generators(&mut r, &c, true, Bounds::default());
        let x = construct_hamiltonian_vf(&g, &c).unwrap();
        prop_assert!(contraction_omega(&x).unwrap().exterior_derivative().is_zero());
        let v = classify(&x).unwrap();
        prop_assert_ne!(v.status, HamiltonianStatus::NotHamiltonian);
        let f = hamiltonian_form_of(&x, &g).unwrap();
        prop_assert_eq!(solve_inverse(&f.exterior_derivative()).unwrap(), x.clone());
        let omega: RationalForm = canonical_omega(&c).unwrap();
        if g.f0.iter().all(|f| f.is_zero()) {
            prop_assert!(omega.lie_derivative(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn constructed_vertical_fields_classify_and_solve_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random::ordinary_chart(&mut r);
        let g = random::poly_generators(&mut r, &c, true, Bounds::default());
        let x = construct_polyhamiltonian_vf(&g, &c).unwrap();
        prop_assert!(contraction_omega_hat(&x).unwrap().vertical_derivative().is_zero());
        let v = classify_vertical(&x).unwrap();
        prop_assert_ne!(v.status, HamiltonianStatus::NotHamiltonian);
        let f = hamiltonian_section_of(&x, &g).unwrap();
        prop_assert_eq!(solve_inverse_poly(&f.vertical_derivative()).unwrap(), x);
    }

    #[test]
    fn random_fields_get_consistent_verdicts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random::extended_chart(&mut r);
        let x = random::vector_field(&mut r, &c, false, Bounds { max_degree: 2, max_terms: 2 });
        let v = classify(&x).unwrap();
        let closed = contraction_omega(&x).unwrap().exterior_derivative();
        prop_assert_eq!(v.status == HamiltonianStatus::NotHamiltonian, !closed.is_zero());
        match v.witness {
            Some(w) => prop_assert_eq!(closed.coefficient(&w.index).coefficient(&w.monomial).cloned(), Some(w.coefficient)),
            None => prop_assert_eq!(
                v.hamiltonian_form.unwrap().exterior_derivative(),
                contraction_omega(&x).unwrap()
            ),
        }
    }
}
