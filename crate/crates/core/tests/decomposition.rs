mod common;

use common::*;
use symorder::builders::{self, Fixture};
use symorder::character::{CharacterTable, DecompositionMatrix};
use symorder::decomp::*;
use symorder::forms::{is_symmetrising, psp_direct};
use symorder::{Error, LinearForm, Scalar};

fn parts(f: &Fixture) -> (&CharacterTable, &DecompositionMatrix) {
    (f.characters.as_ref().unwrap(), f.decomposition.as_ref().unwrap())
}

/// `p^{-n} Σ a_χ χ` assembled by hand.
fn combination_form(table: &CharacterTable, a: &[i64], n: u32, f: &Fixture) -> LinearForm {
    let scale = f.prime().power(-(n as i64));
    let mut values = vec![Scalar::from(0); f.order.dim()];
    for (c, &x) in table.characters.iter().zip(a) {
        for (v, cv) in values.iter_mut().zip(&c.values) {
            *v += &(&(cv * &Scalar::from(x)) * &scale);
        }
    }
    LinearForm::new(values)
}

#[test]
fn morita_search_on_s3() {
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let (table, d) = parts(&f);
    assert_eq!(d.rows, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    let w = morita_psp_search(&f.order, table, d, 3).unwrap();
    assert_eq!((w.m.clone(), w.a.clone(), w.n), (vec![1, 1], vec![1, 2, 1], 1));
    assert_eq!(w.form, combination_form(table, &[1, 2, 1], 1, &f));
    assert!(is_symmetrising(&f.order, &w.form));
    // sign-unrestricted search also certifies
    let wi = morita_psp_search_integers(&f.order, table, d, 1).unwrap();
    assert!(is_symmetrising(&f.order, &wi.form));
    assert!(morita_psp_search(&f.order, table, d, 0).is_none());
}

#[test]
fn sign_unrestricted_vectors_and_shifting() {
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let (table, d) = parts(&f);
    assert_eq!(d.apply(&[2, -1]), vec![2, 1, -1]);
    // exhaustive oracle: every integer vector in the box whose form is symmetrising
    let mut found = Vec::new();
    for m0 in -2..=2i64 {
        for m1 in -2..=2i64 {
            let a = d.apply(&[m0, m1]);
            for n in 0..=2 {
                if is_symmetrising(&f.order, &combination_form(table, &a, n, &f)) {
                    found.push(((m0, m1), n));
                }
            }
        }
    }
    let w = morita_psp_search_integers(&f.order, table, d, 2).unwrap();
    assert!(found.contains(&((w.m[0], w.m[1]), w.n)));
    for ((m0, m1), n) in found {
        let w = MoritaWitness {
            m: vec![m0, m1],
            a: d.apply(&[m0, m1]),
            n,
            form: combination_form(table, &d.apply(&[m0, m1]), n, &f),
        };
        let shifted = shift_to_positive(&f.order, table, d, &w).unwrap();
        assert!(shifted.m.iter().all(|&x| x > 0));
        assert_eq!(shifted.n, n);
        assert!(is_symmetrising(&f.order, &shifted.form));
    }
}

#[test]
fn morita_search_trivial_and_negative_cases() {
    for n in 1..=3 {
        let m = builders::matrix_order(n, p(2)).unwrap();
        let (table, d) = parts(&m);
        let w = morita_psp_search(&m.order, table, d, 2).unwrap();
        // the trace form is already unimodular
        assert_eq!((w.m, w.a, w.n), (vec![1], vec![1], 0));
        assert_eq!(w.form, table.characters[0]);
    }
    let r = builders::rank2_order(2, p(2)).unwrap();
    let (table, d) = parts(&r);
    assert!(morita_psp_search(&r.order, table, d, 6).is_none());
    assert!(morita_psp_search_integers(&r.order, table, d, 4).is_none());
}

#[test]
fn rational_centres() {
    for m in 1..=2 {
        let r = builders::rank2_order(m, p(2)).unwrap();
        let c = rational_centre(&r.order, r.characters.as_ref().unwrap()).unwrap();
        assert_eq!(c.basis.len(), 2);
    }
    let four = builders::four_dim_nonrational(3).unwrap();
    assert_eq!(rational_centre(&four.order, four.characters.as_ref().unwrap()).unwrap().basis.len(), 4);
    let m = builders::matrix_order(2, p(2)).unwrap();
    assert_eq!(rational_centre(&m.order, m.characters.as_ref().unwrap()).unwrap().basis.len(), 1);
}

#[test]
fn rational_symmetry() {
    for m in 1..=3 {
        let r = builders::rank2_order(m, p(2)).unwrap();
        let table = r.characters.as_ref().unwrap();
        let rep = rational_symmetry_search(&r.order, table, &r.form, 3).unwrap();
        let w = rep.witness.expect("rank2 is rationally symmetric");
        assert!(is_symmetrising(&r.order, &w.form));
        let mut rebuilt = vec![Scalar::from(0); 2];
        let scale = p(2).power(-(w.n as i64));
        for (c, sg) in table.characters.iter().zip(&w.sigma) {
            for (v, cv) in rebuilt.iter_mut().zip(&c.values) {
                *v += &(&(cv * sg) * &scale);
            }
        }
        assert_eq!(LinearForm::new(rebuilt), w.form);
    }
    for x in [1, 3] {
        let four = builders::four_dim_nonrational(x).unwrap();
        let rep = rational_symmetry_search(&four.order, four.characters.as_ref().unwrap(), &four.form, 3).unwrap();
        assert_eq!(rep.satisfiable_in_prime_field, Some(true), "x={x}");
        assert!(rep.witness.is_some(), "x={x}");
    }
}

#[test]
fn intersection_criterion_matches_psp() {
    let cases = [
        (builders::symmetric_group_s3(p(3)).unwrap(), true),
        (builders::rank2_order(2, p(2)).unwrap(), false),
        (builders::rank2_order(1, p(2)).unwrap(), true),
        (builders::matrix_order(2, p(2)).unwrap(), true),
        (builders::matrix_order(3, p(3)).unwrap(), true),
    ];
    for (f, want) in cases {
        let (table, d) = parts(&f);
        let rep = rational_symmetry_search(&f.order, table, &f.form, 3).unwrap();
        let v = rational_intersection_criterion(&f.order, table, d, rep.witness.as_ref().unwrap(), DEFAULT_IDEAL_DIM)
            .unwrap();
        assert_eq!(v.verdict, want, "{}", f.name);
        assert_eq!(psp_direct(&f.order, &f.form).unwrap().is_some(), want, "{}", f.name);
    }
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let (table, d) = parts(&f);
    let w = rational_symmetry_search(&f.order, table, &f.form, 3).unwrap().witness.unwrap();
    assert!(matches!(rational_intersection_criterion(&f.order, table, d, &w, 1), Err(Error::ResourceBound(_))));
}

#[test]
fn heights_of_degrees() {
    let (cond, _) = builders::condensed_s3_data();
    let h: Vec<i64> = cond.degrees.iter().map(|d| height(d, &cond.degrees, p(3)).unwrap()).collect();
    assert_eq!(h, vec![0, 1, 0]);
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let deg = &f.characters.as_ref().unwrap().degrees;
    assert!(deg.iter().all(|d| height(d, deg, p(3)) == Ok(0)));
    for x in [1, 4, 9] {
        assert_eq!(height(&s(x), &[s(x)], p(3)), Ok(0));
    }
}

fn facts(name: &str, rank: u64, knorr: bool, projective: bool, exponent: u32) -> LatticeFacts {
    LatticeFacts { name: name.into(), rank, knorr, projective, exponent }
}

#[test]
fn divisibility() {
    let list = [facts("trivial", 1, true, false, 1), facts("regular", 6, false, true, 0)];
    let r = degree_divisibility_checks(1, &list, p(3)).unwrap();
    assert_eq!(r.knorr, vec![("trivial".to_string(), 0, 1)]);
    assert_eq!(r.projective, vec![("regular".to_string(), 1, 1)]);
    let col = [facts("column", 2, true, true, 0)];
    let r = degree_divisibility_checks(1, &col, p(2)).unwrap();
    assert_eq!((r.knorr[0].1, r.projective[0].1), (1, 1));
    assert!(matches!(degree_divisibility_checks(0, &col, p(2)), Err(Error::Violation(m)) if m.contains("column")));
    assert!(matches!(degree_divisibility_checks(2, &col, p(2)), Err(Error::Violation(_))));
}

#[test]
fn minimal_degrees() {
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let deg = &f.characters.as_ref().unwrap().degrees;
    let list = [facts("trivial", 1, true, false, 1), facts("sign", 1, true, false, 1), facts("regular", 6, false, true, 0)];
    let r = min_degree_check(deg, 1, &list, p(3));
    assert_eq!((r.a0, r.target, r.verdict), (1, 0, MinDegreeVerdict::Found(0)));
    let m = builders::matrix_order(2, p(2)).unwrap();
    let deg = &m.characters.as_ref().unwrap().degrees;
    let r = min_degree_check(deg, 1, &[facts("column", 2, true, true, 0)], p(2));
    assert_eq!((r.a0, r.verdict), (0, MinDegreeVerdict::Found(0)));
    let r = min_degree_check(deg, 1, &[], p(2));
    assert_eq!((r.a0, r.target, r.verdict), (0, 1, MinDegreeVerdict::Found(0)));
    assert_eq!(min_degree_check(deg, 3, &[], p(2)).verdict, MinDegreeVerdict::Inconclusive);
}

#[test]
fn height_invariance() {
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let deg = &f.characters.as_ref().unwrap().degrees;
    let pairs: Vec<(Scalar, Scalar)> = [1, 6, 2].iter().map(|&r| (s(r), s(r))).collect();
    assert_eq!(height_invariance_check(deg, deg, &pairs, p(3)), Ok(vec![0, 1, 0]));
    let one = [s(1)];
    assert_eq!(height_invariance_check(&one, &one, &[(s(1), s(1))], p(2)), Ok(vec![0]));
    let (cond, _) = builders::condensed_s3_data();
    assert!(matches!(
        height_invariance_check(deg, &cond.degrees, &[(s(1), s(3))], p(3)),
        Err(Error::HeightMismatch(_))
    ));
}

#[test]
fn decomposition_matrix_validation() {
    let deg = [s(1), s(2), s(1)];
    let d = DecompositionMatrix::new(vec![vec![1, 0], vec![1, 1], vec![0, 1]], vec![1, 1]);
    assert!(d.validate(&deg).is_ok());
    let wrong = DecompositionMatrix::new(vec![vec![1, 0], vec![1, 0], vec![0, 1]], vec![1, 1]);
    assert!(matches!(wrong.validate(&deg), Err(Error::InvalidDecomposition(_))));
    let short = DecompositionMatrix::new(vec![vec![1, 0]], vec![1, 1]);
    assert!(short.validate(&deg).is_err());
    assert!(DecompositionMatrix::new(vec![vec![1]], vec![0]).validate(&[s(0)]).is_err());
}
