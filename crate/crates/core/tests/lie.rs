mod common;

use common::*;
use skt_core::exterior::betti_numbers;
use skt_core::families::{build_family1, standard_hermitian, Family1Params};
use skt_core::linalg::RMatrix;
use skt_core::{catalogue, Complex64, ComplexStructure, LieAlgebra, Subspace};

#[test]
fn heisenberg_sums_have_expected_invariants() {
    let h3r = catalogue::get("h3R-R5").unwrap().algebra;
    assert_eq!(h3r.dim(), 8);
    assert_eq!(h3r.derived().dim(), 1);
    assert_eq!(h3r.center().dim(), 6);
    assert_eq!(h3r.nil_step(), Some(2));

    let h3c = catalogue::get("h3C-R2").unwrap().algebra;
    assert_eq!(h3c.derived().dim(), 2);
    assert_eq!(h3c.center().dim(), 4);

    let h5 = catalogue::get("h5-R3").unwrap().algebra;
    assert_eq!(h5.derived().dim(), 1);
    assert_eq!(h5.center().dim(), 4);
}

#[test]
fn direct_sums() {
    let a = LieAlgebra::abelian(3).direct_sum(&LieAlgebra::abelian(5));
    assert!(a.is_abelian(0.0));
    let h3 = LieAlgebra::from_entries(3, &[(2, 0, 1, 1.0)]).unwrap();
    let s = h3.direct_sum(&LieAlgebra::abelian(5));
    let reference = catalogue::get("h3R-R5").unwrap().algebra;
    // Same equations up to the position of the central generator.
    assert_eq!(s.derived().dim(), reference.derived().dim());
    assert_eq!(s.center().dim(), reference.center().dim());
}

#[test]
fn basis_changes() {
    let mut r = rng(31);
    let e = catalogue::get("example-3.9").unwrap().algebra;
    assert!(
        e.change_basis(&RMatrix::identity(10, 10))
            .unwrap()
            .distance(&e)
            < 1e-15
    );
    let p = random_basis(10, &mut r);
    let moved = e.change_basis(&p).unwrap();
    assert!(moved.jacobi_residual() < 1e-9);
    assert_eq!(moved.center().dim(), e.center().dim());
    assert_eq!(moved.nil_step(), e.nil_step());
    let back = moved
        .change_basis(&p.clone().try_inverse().unwrap())
        .unwrap();
    assert!(back.distance(&e) < 1e-9);
    let ab = LieAlgebra::abelian(6)
        .change_basis(&random_basis(6, &mut r))
        .unwrap();
    assert!(ab.is_abelian(1e-14));
    assert!(e.change_basis(&RMatrix::zeros(10, 10)).is_err());
}

#[test]
fn shifting_a4_by_f4_a3_removes_the_a11_term() {
    let f4 = Complex64::new(0.3, -0.7);
    let p = Family1Params {
        B4: Complex64::new(1.0, 0.0),
        F4: f4,
        G3: Complex64::new(0.2, 0.1),
        ..Default::default()
    };
    let (alg, _) = build_family1(&p).unwrap();
    // a'^4 = a^4 - F4 a^3 in real terms.
    let mut q = RMatrix::identity(8, 8);
    q[(6, 4)] = -f4.re;
    q[(6, 5)] = f4.im;
    q[(7, 4)] = -f4.im;
    q[(7, 5)] = -f4.re;
    let moved = alg.change_coframe(&q).unwrap();
    let h = standard_hermitian(&moved, &ComplexStructure::standard(8)).unwrap();
    let d4 = h.unitary_equations().generator(3);
    assert!(d4.coefficient(&[0, 4]).norm() < 1e-12);
    assert!((d4.coefficient(&[1, 4]) - p.G3).norm() < 1e-12);
}

#[test]
fn last_central_series_term_is_central() {
    for name in catalogue::NAMES {
        let alg = catalogue::get(name).unwrap().algebra;
        let series = alg.lower_central_series();
        if let Some(step) = series.nil_step {
            let last = &series.terms[step - 1];
            assert!(last.is_subspace_of(&alg.center(), 1e-9), "{name}");
        }
    }
}

#[test]
fn betti_numbers_of_examples() {
    let h3 = LieAlgebra::from_entries(3, &[(2, 0, 1, 1.0)]).unwrap();
    assert_eq!(betti_numbers(h3.equations()).unwrap(), vec![1, 2, 2, 1]);
    let b = betti_numbers(catalogue::get("h3R-R5").unwrap().algebra.equations()).unwrap();
    assert_eq!(b[1], 7);
    for name in catalogue::NAMES {
        let alg = catalogue::get(name).unwrap().algebra;
        let b = betti_numbers(alg.equations()).unwrap();
        let m = alg.dim();
        for k in 0..=m {
            assert_eq!(b[k], b[m - k], "{name}: duality fails in degree {k}");
        }
    }
}

#[test]
fn jacobi_violations_are_detected() {
    // d(d e^4) = e^{34} ^ e^2 != 0.
    let a = LieAlgebra::from_entries(4, &[(3, 0, 1, 1.0), (0, 2, 3, 1.0)]).unwrap();
    assert!(a.jacobi_residual() > 0.5);
}

#[test]
fn nijenhuis_and_nilpotency_of_j() {
    let h3r = LieAlgebra::from_entries(4, &[(2, 0, 1, 1.0)]).unwrap();
    let bad = ComplexStructure::from_pairs(4, &[(0, 2), (1, 3)]).unwrap();
    assert!(!bad.is_integrable(&h3r).unwrap());
    let good = ComplexStructure::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(good.is_integrable(&h3r).unwrap());

    let e = catalogue::get("example-3.9").unwrap();
    let (_, nilpotent) = e
        .complex_structure
        .unwrap()
        .ascending_series(&e.algebra)
        .unwrap();
    assert!(!nilpotent);
    for name in ["h3R-R5", "h3C-R2", "h7Q-R", "n6-3step", "h5-R3"] {
        let e = catalogue::get(name).unwrap();
        let (_, nilpotent) = e
            .complex_structure
            .unwrap()
            .ascending_series(&e.algebra)
            .unwrap();
        assert!(nilpotent, "{name}");
    }
}

#[test]
fn subspace_operations() {
    let a = Subspace::coordinate(4, &[0, 1]);
    let b = Subspace::coordinate(4, &[1, 2]);
    assert_eq!(a.sum(&b).dim(), 3);
    assert_eq!(a.intersection(&b).dim(), 1);
    assert_eq!(a.complement(None).dim(), 2);
    assert!(Subspace::zero(4).is_subspace_of(&a, 0.0));
}
