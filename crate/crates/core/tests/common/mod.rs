#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skt_core::families::{from_unitary_equations, Family1Params, Family2Params};
use skt_core::linalg::RMatrix;
use skt_core::{
    catalogue, Complex64, ComplexStructure, Frame, HermitianMetric, InvariantForm, LieAlgebra,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Uniform in the unit disc.
pub fn disc(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = complex(rng);
        if z.norm() < 1.0 {
            return z;
        }
    }
}

/// `A + J^T A J` for a random positive definite `A`.
pub fn random_metric(j: &ComplexStructure, rng: &mut ChaCha8Rng) -> HermitianMetric {
    let m = j.dim();
    let b = RMatrix::from_fn(m, m, |_, _| rng.gen_range(-1.0..1.0));
    let a = &b * b.transpose() + RMatrix::identity(m, m) * 0.5;
    let g = &a + j.matrix().transpose() * &a * j.matrix();
    HermitianMetric::new(g, j).expect("compatible by construction")
}

pub fn random_form(dim: usize, degree: usize, frame: Frame, rng: &mut ChaCha8Rng) -> InvariantForm {
    let mut f = InvariantForm::zero(dim, degree, frame);
    let all: Vec<usize> = (0..dim).collect();
    for _ in 0..6 {
        let mut idx = all.clone();
        for k in 0..degree {
            let r = rng.gen_range(k..dim);
            idx.swap(k, r);
        }
        idx.truncate(degree);
        let t = InvariantForm::basis(dim, &idx, frame).unwrap();
        let c = match frame {
            Frame::Real => Complex64::new(rng.gen_range(-1.0..1.0), 0.0),
            Frame::Unitary => complex(rng),
        };
        f.add_assign_scaled(&t, c).unwrap();
    }
    f
}

/// A random 2-step algebra of complex dimension `n`: `d a^k` for `k > p`
/// is a random (2,0) + (1,1) form in `a^1..a^p`.
pub fn random_two_step(n: usize, p: usize, rng: &mut ChaCha8Rng) -> (LieAlgebra, ComplexStructure) {
    let dim = 2 * n;
    let mut eqs = Vec::new();
    for k in 0..n {
        let mut f = InvariantForm::zero(dim, 2, Frame::Unitary);
        if k >= p {
            for i in 0..p {
                for j in 0..p {
                    if i < j && rng.gen_bool(0.6) {
                        let t = InvariantForm::basis(dim, &[i, j], Frame::Unitary).unwrap();
                        f.add_assign_scaled(&t, complex(rng)).unwrap();
                    }
                    if rng.gen_bool(0.6) {
                        let t = InvariantForm::basis(dim, &[i, n + j], Frame::Unitary).unwrap();
                        f.add_assign_scaled(&t, complex(rng)).unwrap();
                    }
                }
            }
        }
        eqs.push(f);
    }
    from_unitary_equations(&eqs).unwrap()
}

/// Transport `(alg, j)` to the basis given by the columns of `p`.
pub fn transport(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    p: &RMatrix,
) -> (LieAlgebra, ComplexStructure) {
    let pinv = p.clone().try_inverse().unwrap();
    let a = alg.change_basis(p).unwrap();
    let jj = ComplexStructure::new(&pinv * j.matrix() * p).unwrap();
    (a, jj)
}

/// A well-conditioned random basis change.
pub fn random_basis(dim: usize, rng: &mut ChaCha8Rng) -> RMatrix {
    RMatrix::identity(dim, dim) + RMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-0.4..0.4))
}

/// Catalogue entries and random 2- and 3-step algebras derived from them.
pub fn catalogue_derived(
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(String, LieAlgebra, ComplexStructure)> {
    let bases = [
        "h3R-R5",
        "h3C-R2",
        "h5-R3",
        "h7Q-R",
        "n6-3step",
        "example-3.9",
    ];
    let mut out = Vec::new();
    for k in 0..count {
        let name = bases[k % bases.len()];
        let e = catalogue::get(name).unwrap();
        let j = e.complex_structure.unwrap();
        let p = random_basis(e.algebra.dim(), rng);
        let (a, jj) = transport(&e.algebra, &j, &p);
        out.push((format!("{name}#{k}"), a, jj));
    }
    out
}

pub fn hermitian_matrix(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let b = DMatrix::from_fn(n, n, |_, _| complex(rng));
    &b * b.adjoint() + DMatrix::identity(n, n) * Complex64::new(0.3, 0.0)
}

pub fn random_family1(r: &mut ChaCha8Rng) -> Family1Params {
    let mut a = [Complex64::new(0.0, 0.0); 10];
    for z in a.iter_mut() {
        *z = disc(r);
    }
    Family1Params::from_array(a)
}

pub fn random_family2(r: &mut ChaCha8Rng) -> Family2Params {
    let mut a = [Complex64::new(0.0, 0.0); 12];
    for z in a.iter_mut() {
        *z = disc(r);
    }
    let mut p = Family2Params::from_array(a);
    while p.H4.norm() < 1e-3 {
        p.H4 = disc(r);
    }
    p
}

/// A random first-family point on the SKT locus, obtained by solving for `C4`.
pub fn skt_family1(r: &mut ChaCha8Rng) -> Family1Params {
    let mut p = random_family1(r);
    while p.B4.norm() < 0.1 {
        p.B4 = disc(r);
    }
    let sq = |z: Complex64| z.norm_sqr();
    let l = sq(p.B1) + sq(p.F1) + sq(p.G3) + sq(p.B5) + sq(p.C3) + sq(p.F5);
    let t = l / 2.0 - (p.F4 * p.G4.conj()).re;
    p.C4 = p.B4 * (t / p.B4.norm_sqr());
    p
}

/// A random second-family point on the SKT locus: `F4 = t H4`, `G4 = i u H4`,
/// `H2 = H4 conj(F6) / conj(H4)` and `|F2|^2 = 2 t |H4|^2 - 2 |F6|^2`.
pub fn skt_family2(r: &mut ChaCha8Rng) -> Family2Params {
    let h4 = loop {
        let z = disc(r);
        if z.norm() > 0.2 {
            break z;
        }
    };
    let t: f64 = r.gen_range(0.5..1.5);
    let u: f64 = r.gen_range(-1.0..1.0);
    let f6 = disc(r) * 0.3;
    let f2_sq = 2.0 * t * h4.norm_sqr() - 2.0 * f6.norm_sqr();
    let phase = Complex64::from_polar(1.0, r.gen_range(0.0..std::f64::consts::TAU));
    Family2Params {
        H4: h4,
        F4: h4 * t,
        G4: Complex64::new(0.0, 1.0) * h4 * u,
        F6: f6,
        H2: h4 * f6.conj() / h4.conj(),
        F2: phase * f2_sq.max(0.0).sqrt(),
        ..Default::default()
    }
}
