#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use symorder::builders::{self, ClassData, Fixture};
use symorder::forms::{is_symmetrising, psp_direct, SymmetricData};
use symorder::lattice::HomLattice;
use symorder::{Matrix, Prime, Scalar};

pub fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

pub fn q(a: i64, b: i64) -> Scalar {
    Scalar::new(a, b)
}

/// Every fixture algebra with at least one lattice, symmetrising form attached.
pub fn fixture_algebras() -> Vec<Fixture> {
    let rank2_12 = builders::rank2_order(1, p(2)).unwrap();
    let mat2 = builders::matrix_order(2, p(2)).unwrap();
    let mut out = vec![
        builders::symmetric_group_s3(p(3)).unwrap(),
        rank2_12.clone(),
        builders::rank2_order(2, p(2)).unwrap(),
        builders::rank2_order(1, p(3)).unwrap(),
        mat2.clone(),
        builders::matrix_order(2, p(3)).unwrap(),
        builders::hecke_rank1(3, p(2)).unwrap(),
        builders::hecke_rank1(5, p(2)).unwrap(),
        builders::four_dim_nonrational(3).unwrap(),
        builders::character_ring(&ClassData::c2(), p(2)).unwrap(),
    ];
    out.push(rank2_12.direct_product(&mat2).unwrap());
    out.push(rank2_12.tensor_product(&rank2_12).unwrap());
    for f in &out {
        assert!(is_symmetrising(&f.order, &f.form), "{} form", f.name);
    }
    out
}

/// Data for the form with scalar Casimir element, when there is one.
pub fn psp_data(f: &Fixture) -> Option<SymmetricData> {
    let cert = psp_direct(&f.order, &f.form).unwrap()?;
    Some(SymmetricData::new(&f.order, &cert.witness).unwrap())
}

pub fn form_data(f: &Fixture) -> SymmetricData {
    SymmetricData::new(&f.order, &f.form).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = s(rng.gen_range(-3..=3));
        }
    }
    m
}

pub fn random_hom(rng: &mut impl Rng, h: &HomLattice) -> Matrix {
    let coeffs: Vec<Scalar> = (0..h.rank()).map(|_| s(rng.gen_range(-3..=3))).collect();
    h.combine(&coeffs)
}
