mod common;

use common::*;
use rand::Rng;
use skt_core::linalg::{self, RMatrix};
use skt_core::tamed::{
    fond_functional, hs_decompose, hs_obstruction, skt_find, tamed_find, tamed_search, tames,
    ObstructionKind, SearchOptions, Status,
};
use skt_core::{
    catalogue, families, Complex64, ComplexStructure, Frame, Hermitian, HermitianMetric,
};
use skt_core::{InvariantForm, LieAlgebra};

fn quick(seed: u64) -> SearchOptions {
    SearchOptions {
        trials: 8,
        iterations: 300,
        seed,
        ..Default::default()
    }
}

fn pairs(m: usize) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            out.push([a, b]);
        }
    }
    out
}

/// A random closed real 2-form, drawn from the kernel of `d` on 2-forms.
fn random_closed(alg: &LieAlgebra, r: &mut rand_chacha::ChaCha8Rng) -> InvariantForm {
    let m = alg.dim();
    let two = pairs(m);
    let mut triples = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                triples.push([a, b, c]);
            }
        }
    }
    let forms: Vec<InvariantForm> = two
        .iter()
        .map(|p| InvariantForm::basis(m, p, Frame::Real).unwrap())
        .collect();
    let a = RMatrix::from_fn(triples.len(), two.len(), |row, col| {
        alg.d(&forms[col]).unwrap().coefficient(&triples[row]).re
    });
    let kernel = linalg::null_space(&a, 1e-10);
    let mut out = InvariantForm::zero(m, 2, Frame::Real);
    for k in 0..kernel.ncols() {
        let c: f64 = r.gen_range(-1.0..1.0);
        for (col, f) in forms.iter().enumerate() {
            let w = kernel[(col, k)] * c;
            if w != 0.0 {
                out.add_assign_scaled(f, Complex64::new(w, 0.0)).unwrap();
            }
        }
    }
    out
}

fn non_abelian_nilpotent() -> Vec<catalogue::Entry> {
    catalogue::NAMES
        .iter()
        .map(|n| catalogue::get(n).unwrap())
        .filter(|e| e.algebra.is_nilpotent() && !e.algebra.is_abelian(1e-12))
        .collect()
}

#[test]
fn torus_carries_a_taming_form() {
    let e = catalogue::get("torus-8").unwrap();
    let j = e.complex_structure.unwrap();
    let report = tamed_find(&e.algebra, &j, &quick(0)).unwrap();
    assert_eq!(report.status, Status::Found);
    let cert = report.certificate.unwrap();
    assert!(e.algebra.d(&cert.form).unwrap().sup_norm() < 1e-12);
    let (ok, lmin) = tames(&cert.form, &j).unwrap();
    assert!(ok && lmin > 0.0);
}

#[test]
fn two_step_entries_produce_a_witness() {
    let mut r = rng(31);
    let mut cases: Vec<(String, LieAlgebra, ComplexStructure)> = non_abelian_nilpotent()
        .into_iter()
        .filter(|e| e.algebra.nil_step() == Some(2))
        .map(|e| (e.name, e.algebra, e.complex_structure.unwrap()))
        .collect();
    for k in 0..10 {
        let (a, j) = random_two_step(4, 1 + k % 3, &mut r);
        if !a.is_abelian(1e-12) {
            cases.push((format!("random#{k}"), a, j));
        }
    }
    assert!(cases.len() >= 12);
    for (name, alg, j) in cases {
        let ob = hs_obstruction(&alg, &j).unwrap();
        assert!(ob.blocked, "{name}");
        let w = ob.witness.unwrap();
        assert!(w.norm() > 0.5, "{name}");
        assert!(alg.derived().contains(&w, 1e-9), "{name}");
        assert!(alg.central_residual(&j.apply(&w)).unwrap() < 1e-9, "{name}");
        let report = tamed_find(&alg, &j, &quick(0)).unwrap();
        assert_eq!(report.status, Status::NotFound, "{name}");
        let kind = report.obstruction.map(|o| o.kind);
        assert_eq!(kind, Some(ObstructionKind::CenterMeetsCommutator), "{name}");
    }
}

#[test]
fn no_taming_form_on_non_abelian_nilpotent_entries() {
    for e in non_abelian_nilpotent() {
        let j = e.complex_structure.unwrap();
        let report = tamed_find(&e.algebra, &j, &quick(3)).unwrap();
        assert!(!report.found(), "{}", e.name);
        assert!(report.certificate.is_none(), "{}", e.name);
    }
}

#[test]
fn blocked_entries_never_yield_a_numeric_certificate() {
    for e in non_abelian_nilpotent() {
        let j = e.complex_structure.unwrap();
        if !hs_obstruction(&e.algebra, &j).unwrap().blocked {
            continue;
        }
        for seed in 0..8 {
            let report = tamed_search(&e.algebra, &j, &quick(seed)).unwrap();
            assert!(!report.found(), "{} seed {seed}", e.name);
            assert!(report.best_min_eigenvalue.unwrap() <= 1e-6, "{}", e.name);
        }
    }
}

#[test]
fn decomposition_residuals_vanish_for_closed_forms() {
    let mut r = rng(32);
    let p = families::Family1Params::parse("B1=0.3+0.1i,B4=1,C4=0.5i,F1=0.2,G4=-0.7").unwrap();
    let (f1, jf1) = families::build_family1(&p).unwrap();
    let ten = catalogue::get("example-3.9").unwrap();
    let torus = catalogue::get("torus-8").unwrap();
    let cases = [
        (f1, jf1),
        (ten.algebra, ten.complex_structure.unwrap()),
        (torus.algebra, torus.complex_structure.unwrap()),
    ];
    for (alg, j) in cases {
        for _ in 0..5 {
            let metric = random_metric(&j, &mut r);
            let h = Hermitian::new(alg.clone(), j.clone(), metric).unwrap();
            let big = random_closed(&alg, &mut r);
            assert!(alg.d(&big).unwrap().sup_norm() < 1e-9);
            let dec = hs_decompose(&h, &big, 1e-9).unwrap();
            assert!(dec.del_omega_minus_delbar_beta < 1e-9);
            assert!(dec.del_beta < 1e-9);
            // Omega = omega - beta - conj(beta).
            let beta_real = h.to_real(&dec.beta).unwrap();
            let rebuilt = dec
                .omega
                .sub(&beta_real)
                .unwrap()
                .sub(&beta_real.conj())
                .unwrap();
            assert!(rebuilt.sub(&big).unwrap().sup_norm() < 1e-9);
        }
    }
}

#[test]
fn non_closed_forms_are_rejected() {
    let e = catalogue::get("h3R-R5").unwrap();
    let j = e.complex_structure.unwrap();
    let h = Hermitian::with_reference_metric(e.algebra.clone(), j).unwrap();
    let e38 = InvariantForm::basis(8, &[2, 7], Frame::Real).unwrap();
    assert!(hs_decompose(&h, &e38, 1e-9).is_err());
}

#[test]
fn functional_bound_on_taming_forms() {
    let mut r = rng(33);
    let e = catalogue::get("torus-8").unwrap();
    let j = e.complex_structure.unwrap();
    for _ in 0..20 {
        let metric = random_metric(&j, &mut r);
        let h = Hermitian::new(e.algebra.clone(), j.clone(), metric).unwrap();
        let small = random_form(8, 2, Frame::Real, &mut r).scale_real(0.05);
        let big = h.fundamental_form().add(&small).unwrap();
        if !tames(&big, &j).unwrap().0 {
            continue;
        }
        let mut eta = InvariantForm::zero(8, 3, Frame::Unitary);
        for _ in 0..4 {
            let mut idx = [r.gen_range(0..4), r.gen_range(0..4), 4 + r.gen_range(0..4)];
            if idx[0] == idx[1] {
                continue;
            }
            idx.sort();
            let t = InvariantForm::basis(8, &idx, Frame::Unitary).unwrap();
            eta.add_assign_scaled(&t, complex(&mut r)).unwrap();
        }
        let f = fond_functional(&h, &eta, &big, 1e-9).unwrap();
        assert!(f.bound_holds(1e-9), "{f:?}");
    }
}

#[test]
fn functional_requires_a_taming_form() {
    let e = catalogue::get("torus-8").unwrap();
    let j = e.complex_structure.unwrap();
    let h = Hermitian::with_reference_metric(e.algebra.clone(), j).unwrap();
    let minus = h.fundamental_form().scale_real(-1.0);
    let eta = InvariantForm::basis(8, &[0, 1, 4], Frame::Unitary).unwrap();
    assert!(fond_functional(&h, &eta, &minus, 1e-9).is_err());
}

#[test]
fn skt_search_certificates_verify_independently() {
    let mut r = rng(34);
    for name in ["h3R-R5", "h3C-R2", "h7Q-R"] {
        let e = catalogue::get(name).unwrap();
        let j = e.complex_structure.unwrap();
        let p = random_basis(8, &mut r);
        let (alg, jj) = transport(&e.algebra, &j, &p);
        let report = skt_find(&alg, &jj, &quick(1)).unwrap();
        assert_eq!(report.status, Status::Found, "{name}");
        let cert = report.certificate.unwrap();
        let metric = HermitianMetric::new(cert.metric, &jj).unwrap();
        let h = Hermitian::new(alg, jj, metric).unwrap();
        assert!(h.skt_residual().unwrap().value() < 1e-8, "{name}");
    }
}

#[test]
fn skt_search_reports_structural_reasons() {
    let expect = [
        ("h5-R3", ObstructionKind::CommutatorLine),
        ("n6-3step", ObstructionKind::StepTooLarge),
        ("example-3.9", ObstructionKind::CenterNotInvariant),
    ];
    for (name, kind) in expect {
        let e = catalogue::get(name).unwrap();
        let j = e.complex_structure.unwrap();
        let report = skt_find(&e.algebra, &j, &quick(0)).unwrap();
        assert_eq!(report.status, Status::NotFound, "{name}");
        assert_eq!(report.obstruction.map(|o| o.kind), Some(kind), "{name}");
    }
}

#[test]
fn searches_are_deterministic_in_the_seed() {
    let e = catalogue::get("example-3.9").unwrap();
    let j = e.complex_structure.unwrap();
    let a = tamed_find(&e.algebra, &j, &quick(11)).unwrap();
    let b = tamed_find(&e.algebra, &j, &quick(11)).unwrap();
    assert_eq!(a, b);
    let e = catalogue::get("h7Q-R").unwrap();
    let j = e.complex_structure.unwrap();
    let a = skt_find(&e.algebra, &j, &quick(5)).unwrap();
    let b = skt_find(&e.algebra, &j, &quick(5)).unwrap();
    assert_eq!(a, b);
}
