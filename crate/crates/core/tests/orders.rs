mod common;

use common::*;
use symorder::builders::{self, permutations, symmetric_group, ClassData, GroupTable};
use symorder::forms::{central_idempotents, is_symmetrising};
use symorder::{Element, Error, Matrix, Order};

fn perm_index(perms: &[Vec<usize>], q: &[usize]) -> usize {
    perms.iter().position(|x| x == q).unwrap()
}

#[test]
fn rank2_order_is_valid_and_multiplies() {
    let f = builders::rank2_order(1, p(2)).unwrap();
    let a = &f.order;
    let l2 = a.basis_element(1);
    assert_eq!(a.multiply(&l2, &l2), l2.scale(&s(2)));
    assert_eq!(a.multiply(a.one(), &l2), l2);
    for m in 1..4 {
        let f = builders::rank2_order(m, p(2)).unwrap();
        assert_eq!(f.order.regular_character(&f.order.basis_element(1)), s(1 << m));
    }
}

#[test]
fn broken_unit_is_rejected() {
    // b1·b1 = b2 and b1 claimed as unit
    let mut st = vec![vec![vec![s(0); 2]; 2]; 2];
    st[0][0][1] = s(1);
    st[0][1][1] = s(1);
    st[1][0][1] = s(1);
    let r = Order::new(p(2), 2, st, vec![s(1), s(0)]);
    assert!(matches!(r, Err(Error::UnitFails(_))));
}

#[test]
fn hecke_relations() {
    let f = builders::hecke_rank1(3, p(2)).unwrap();
    let a = &f.order;
    let ts = a.basis_element(1);
    assert_eq!(a.multiply(&ts, &ts), Element::from_ints(&[3, -2]));
    for q in [3, 5, 7] {
        let f = builders::hecke_rank1(q, p(2)).unwrap();
        let ts = f.order.basis_element(1);
        assert_eq!(f.order.left_regular_matrix(&ts), Matrix::from_ints(&[&[0, q], &[1, 1 - q]]));
        assert_eq!(f.order.regular_character(&ts), s(1 - q));
    }
}

#[test]
fn hecke_at_q_one_is_the_group_algebra_of_c2() {
    let h = builders::hecke_rank1(1, p(2)).unwrap();
    let g = builders::group_algebra("C2", &GroupTable::cyclic(2), p(2)).unwrap();
    assert_eq!(h.order.structure_nested(), g.order.structure_nested());
}

#[test]
fn group_algebra_of_s3() {
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let a = &f.order;
    assert_eq!(a.dim(), 6);
    assert_eq!(a.regular_character(a.one()), s(6));
    for g in 0..6 {
        let m = a.left_regular_matrix(&a.basis_element(g));
        for c in 0..6 {
            let col = m.column(c);
            assert_eq!(col.iter().filter(|x| x.is_one()).count(), 1);
            assert_eq!(col.iter().filter(|x| x.is_zero()).count(), 5);
        }
        if g != 0 {
            assert!(a.regular_character(&a.basis_element(g)).is_zero());
        }
    }
    assert_eq!(a.center_basis().len(), 3);
    assert_eq!(a.invert(&a.scalar(&s(6))).unwrap(), a.scalar(&q(1, 6)));
    assert!(a.is_unit(&a.scalar(&s(2))));
    assert!(!a.is_unit(&a.scalar(&s(3))));
    assert!(a.is_idempotent(&builders::s3_transposition_idempotent(&f)));
}

#[test]
fn s3_central_idempotents_match_the_class_formula() {
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let (_, perms) = symmetric_group(3);
    let fixed = |g: &[usize]| g.iter().enumerate().filter(|(i, x)| i == *x).count() as i64;
    let parity = |g: &[usize]| {
        let mut s = 1;
        for i in 0..3 {
            for j in i + 1..3 {
                if g[i] > g[j] {
                    s = -s;
                }
            }
        }
        s
    };
    let chars: [(i64, Box<dyn Fn(&[usize]) -> i64>); 3] =
        [(1, Box::new(|_| 1)), (2, Box::new(move |g| fixed(g) - 1)), (1, Box::new(parity))];
    let inverse = |g: &[usize]| {
        let mut h = vec![0; 3];
        for (i, &x) in g.iter().enumerate() {
            h[x] = i;
        }
        h
    };
    let table = f.characters.as_ref().unwrap();
    let got = central_idempotents(&f.order, &table.characters).unwrap();
    for (k, (deg, chi)) in chars.iter().enumerate() {
        let mut e = Element::zero(6);
        for g in &perms {
            e.coords[perm_index(&perms, g)] = &q(*deg, 6) * &s(chi(&inverse(g)));
        }
        assert_eq!(got[k], e, "idempotent {k}");
    }
}

#[test]
fn centre_is_saturated() {
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let a = &f.order;
    for z in a.center_basis() {
        assert!(a.is_central(&z));
        assert!(!z.scale(&q(1, 3)).is_integral(p(3)));
    }
    assert_eq!(builders::matrix_order(2, p(2)).unwrap().order.center_basis().len(), 1);
    assert_eq!(builders::rank2_order(2, p(2)).unwrap().order.center_basis().len(), 2);
}

#[test]
fn inverses_in_rank2() {
    let f = builders::rank2_order(1, p(2)).unwrap();
    let a = &f.order;
    // z = (−2, 2) in K×K is −2λ₁ + 2λ₂
    let z = Element::from_ints(&[-2, 2]);
    let inv = a.invert(&z).unwrap();
    // (−1/2, 1/2) = −1/2·λ₁ + 1/2·λ₂
    assert_eq!(inv, Element::new(vec![q(-1, 2), q(1, 2)]));
    assert_eq!(a.invert(&a.basis_element(1)), Err(Error::NotInvertible));
}

#[test]
fn condensation() {
    let f = builders::symmetric_group_s3(p(3)).unwrap();
    let a = &f.order;
    let whole = a.condense(a.one()).unwrap();
    assert_eq!(whole.order.structure_nested(), a.structure_nested());
    assert!(a.condense(&Element::zero(6)).is_err());

    // rank of eAe is Σ m_χ² with m_χ the multiplicity of the trivial C2 character
    let e = builders::s3_transposition_idempotent(&f);
    let (_, perms) = symmetric_group(3);
    let t = perm_index(&perms, &[1, 0, 2]);
    let table = f.characters.as_ref().unwrap();
    let expected: i64 = table
        .characters
        .iter()
        .map(|c| {
            let m = &(&c.values[0] + &c.values[t]) / &s(2);
            m.to_i64().unwrap().pow(2)
        })
        .sum();
    let c = a.condense(&e).unwrap();
    assert_eq!(c.order.dim() as i64, expected);
    assert_eq!(c.to_ambient(c.order.one()), e);
}

#[test]
fn products_and_tensor_products() {
    let m1 = builders::matrix_order(1, p(2)).unwrap();
    let m2 = builders::matrix_order(2, p(2)).unwrap();
    assert_eq!(m1.order.direct_product(&m2.order).unwrap().dim(), 5);
    let r = builders::rank2_order(1, p(2)).unwrap();
    assert_eq!(r.order.tensor_product(&m1.order).unwrap().structure_nested(), r.order.structure_nested());
    assert_eq!(r.order.tensor_product(&r.order).unwrap().dim(), 4);
}

#[test]
fn group_algebra_tensor_matches_product_group() {
    let c2 = GroupTable::cyclic(2);
    let a = builders::group_algebra("C2", &c2, p(2)).unwrap();
    let t = a.order.tensor_product(&a.order).unwrap();
    let g = builders::group_algebra("C2×C2", &c2.product(&c2), p(2)).unwrap();
    let found = permutations(4).into_iter().any(|sigma| {
        (0..4).all(|i| {
            (0..4).all(|j| (0..4).all(|k| t.c(i, j, k) == g.order.c(sigma[i], sigma[j], sigma[k])))
        })
    });
    assert!(found);
}

#[test]
fn small_group_algebras() {
    let c2 = builders::group_algebra("C2", &GroupTable::cyclic(2), p(2)).unwrap();
    assert_eq!(c2.order.dim(), 2);
    let trivial = builders::group_algebra("1", &GroupTable::cyclic(1), p(5)).unwrap();
    assert_eq!(trivial.order.structure_nested(), builders::matrix_order(1, p(5)).unwrap().order.structure_nested());
}

#[test]
fn builders_attach_symmetrising_forms() {
    let mut all = fixture_algebras();
    all.push(builders::character_ring(&ClassData::s3(), p(3)).unwrap());
    all.push(builders::character_ring(&ClassData::s3(), p(2)).unwrap());
    all.push(builders::four_dim_nonrational(1).unwrap());
    for q in [1, 7, 9] {
        all.push(builders::hecke_rank1(q, p(2)).unwrap());
    }
    for f in &all {
        assert!(is_symmetrising(&f.order, &f.form), "{}", f.name);
        if let Some(t) = &f.characters {
            t.validate(&f.order).unwrap();
            if let Some(d) = &f.decomposition {
                d.validate(&t.degrees).unwrap();
            }
        }
    }
}

#[test]
fn builder_input_errors() {
    assert!(matches!(builders::hecke_rank1(2, p(2)), Err(Error::QNotUnit)));
    assert!(matches!(GroupTable::new(vec![vec![0, 1], vec![0, 1]]), Err(Error::NotAGroup(_))));
    let bad = ClassData { sizes: vec![1, 1], values: vec![vec![1, 1], vec![1, 1]] };
    assert!(matches!(builders::character_ring(&bad, p(2)), Err(Error::OrthogonalityFails(_))));
}
