mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use skt_core::exterior::Codifferential;
use skt_core::{Complex64, Frame, Hermitian, InvariantForm};

const TRIALS: usize = 200;

#[test]
fn d_squared_vanishes_on_random_forms() {
    let mut r = rng(11);
    let algebras = catalogue_derived(12, &mut r);
    for t in 0..TRIALS {
        let (name, alg, _) = &algebras[t % algebras.len()];
        let deg = r.gen_range(0..4);
        let f = random_form(alg.dim(), deg, Frame::Real, &mut r);
        let dd = alg.d(&alg.d(&f).unwrap()).unwrap();
        assert!(dd.sup_norm() < 1e-8, "{name}: |d d f| = {}", dd.sup_norm());
    }
}

#[test]
fn leibniz_rule() {
    let mut r = rng(12);
    let algebras = catalogue_derived(12, &mut r);
    for t in 0..TRIALS {
        let (_, alg, _) = &algebras[t % algebras.len()];
        let (p, q) = (r.gen_range(0..3), r.gen_range(0..3));
        let a = random_form(alg.dim(), p, Frame::Real, &mut r);
        let b = random_form(alg.dim(), q, Frame::Real, &mut r);
        let lhs = alg.d(&a.wedge(&b).unwrap()).unwrap();
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = alg
            .d(&a)
            .unwrap()
            .wedge(&b)
            .unwrap()
            .add(&a.wedge(&alg.d(&b).unwrap()).unwrap().scale_real(sign))
            .unwrap();
        assert!(lhs.sub(&rhs).unwrap().sup_norm() < 1e-8);
    }
}

#[test]
fn star_squares_to_sign() {
    let mut r = rng(13);
    for t in 0..TRIALS {
        let n = 1 + t % 4;
        let (alg, j) = random_two_step(n, n.div_ceil(2), &mut r);
        let h = Hermitian::new(alg, j.clone(), random_metric(&j, &mut r)).unwrap();
        let deg = r.gen_range(0..=2 * n);
        let f = random_form(2 * n, deg, Frame::Unitary, &mut r);
        let ss = h.hodge_star(&h.hodge_star(&f).unwrap()).unwrap();
        let sign = if deg % 2 == 0 { 1.0 } else { -1.0 };
        assert!(
            ss.sub(&f.scale_real(sign)).unwrap().sup_norm() < 1e-8,
            "n={n} deg={deg}"
        );
    }
}

#[test]
fn star_defines_the_inner_product() {
    // u ^ *conj(v) = <u, v> vol on random forms.
    let mut r = rng(14);
    for t in 0..TRIALS {
        let n = 1 + t % 3;
        let (alg, j) = random_two_step(n, 1, &mut r);
        let h = Hermitian::new(alg, j.clone(), random_metric(&j, &mut r)).unwrap();
        let deg = r.gen_range(0..=2 * n);
        let u = random_form(2 * n, deg, Frame::Unitary, &mut r);
        let v = random_form(2 * n, deg, Frame::Unitary, &mut r);
        let lhs = u.wedge(&h.hodge_star(&v.conj()).unwrap()).unwrap();
        let vol = h.hodge().volume();
        let rhs = vol.scale(h.inner(&u, &v).unwrap());
        assert!(lhs.sub(&rhs).unwrap().sup_norm() < 1e-8);
    }
}

#[test]
fn codifferentials_are_adjoint() {
    let mut r = rng(15);
    let kinds = [
        Codifferential::Del,
        Codifferential::DelBar,
        Codifferential::D,
    ];
    for t in 0..TRIALS {
        let n = 2 + t % 3;
        let (alg, j) = random_two_step(n, 2, &mut r);
        let h = Hermitian::new(alg, j.clone(), random_metric(&j, &mut r)).unwrap();
        let deg = r.gen_range(1..=2 * n);
        let eta = random_form(2 * n, deg, Frame::Unitary, &mut r);
        let phi = random_form(2 * n, deg - 1, Frame::Unitary, &mut r);
        for which in kinds {
            let star = h.codifferential(&eta, which).unwrap();
            let op = match which {
                Codifferential::Del => h.del(&phi).unwrap(),
                Codifferential::DelBar => h.delbar(&phi).unwrap(),
                Codifferential::D => h.d(&phi).unwrap(),
            };
            let lhs = h.inner(&star, &phi).unwrap();
            let rhs = h.inner(&eta, &op).unwrap();
            assert!((lhs - rhs).norm() < 1e-8, "{which:?}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn torsion_matches_j_d_omega() {
    let mut r = rng(16);
    let algebras = catalogue_derived(12, &mut r);
    for (name, alg, j) in &algebras {
        for _ in 0..5 {
            let h = Hermitian::new(alg.clone(), j.clone(), random_metric(j, &mut r)).unwrap();
            let c = h.bismut_torsion().unwrap();
            let from_omega = h.torsion_from_omega().unwrap();
            assert!(c.sub(&from_omega).unwrap().sup_norm() < 1e-10, "{name}");
        }
    }
}

#[test]
fn del_plus_delbar_is_d() {
    let mut r = rng(17);
    for _ in 0..50 {
        let (alg, j) = random_two_step(3, 2, &mut r);
        let h = Hermitian::new(alg, j.clone(), random_metric(&j, &mut r)).unwrap();
        let f = random_form(6, 2, Frame::Unitary, &mut r);
        let sum = h.del(&f).unwrap().add(&h.delbar(&f).unwrap()).unwrap();
        assert!(sum.sub(&h.d(&f).unwrap()).unwrap().sup_norm() < 1e-10);
        let dd = h.del(&h.del(&f).unwrap()).unwrap();
        assert!(dd.sup_norm() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative(seed in 0u64..10_000, p in 0usize..4, q in 0usize..4) {
        let mut r = rng(seed);
        let a = random_form(8, p, Frame::Real, &mut r);
        let b = random_form(8, q, Frame::Real, &mut r);
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        let diff = a.wedge(&b).unwrap().sub(&b.wedge(&a).unwrap().scale_real(sign)).unwrap();
        prop_assert!(diff.sup_norm() < 1e-12);
    }

    #[test]
    fn unitary_round_trip(seed in 0u64..10_000, deg in 0usize..5) {
        let mut r = rng(seed);
        let (alg, j) = random_two_step(3, 2, &mut r);
        let h = Hermitian::new(alg, j.clone(), random_metric(&j, &mut r)).unwrap();
        let f = random_form(6, deg, Frame::Real, &mut r);
        let back = h.to_real(&h.to_unitary(&f).unwrap()).unwrap();
        prop_assert!(back.sub(&f).unwrap().sup_norm() < 1e-10);
        prop_assert!(back.max_imaginary() < 1e-10);
    }

    #[test]
    fn d_commutes_with_frame_change(seed in 0u64..10_000, deg in 0usize..4) {
        let mut r = rng(seed);
        let (alg, j) = random_two_step(3, 2, &mut r);
        let h = Hermitian::new(alg.clone(), j.clone(), random_metric(&j, &mut r)).unwrap();
        let f = random_form(6, deg, Frame::Real, &mut r);
        let via_unitary = h.to_real(&h.d(&h.to_unitary(&f).unwrap()).unwrap()).unwrap();
        prop_assert!(via_unitary.sub(&alg.d(&f).unwrap()).unwrap().sup_norm() < 1e-9);
    }
}

#[test]
fn scalar_forms_are_closed() {
    let alg = skt_core::LieAlgebra::abelian(4);
    let one = InvariantForm::constant(4, Complex64::new(2.0, 0.0), Frame::Real);
    assert!(alg.d(&one).unwrap().is_zero(0.0));
}
