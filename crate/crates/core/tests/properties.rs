mod common;

use std::sync::OnceLock;

use common::*;
use proptest::prelude::*;
use symorder::builders::{self, Fixture, GroupTable};
use symorder::decomp::height_invariance_check;
use symorder::forms::{casimir, relative_trace, twist_form, SymmetricData};
use symorder::lattice::{exponent, hom_lattice, projective_hom_lattice, stable_exponent_check, stable_hom, Limits};
use symorder::{Element, Error, Scalar};

fn algebras() -> &'static [Fixture] {
    static ALL: OnceLock<Vec<Fixture>> = OnceLock::new();
    ALL.get_or_init(fixture_algebras)
}

fn element(dim: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(-4i64..5, dim).prop_map(|xs| Element::from_ints(&xs))
}

/// An algebra index with two random elements of it.
fn algebra_and_elements() -> impl Strategy<Value = (usize, Element, Element)> {
    (0..algebras().len()).prop_flat_map(|i| {
        let d = algebras()[i].order.dim();
        (Just(i), element(d), element(d))
    })
}

/// `c·1 + p·w` for a p'-integer `c` and integral central `w`: a central unit.
fn central_unit(f: &Fixture, c: i64, coeffs: &[i64]) -> Element {
    let a = &f.order;
    let pr = Scalar::from(f.prime().get() as i64);
    let mut z = a.scalar(&Scalar::from(c));
    for (b, &k) in a.center_basis().iter().zip(coeffs) {
        z = &z + &b.scale(&(&pr * &Scalar::from(k)));
    }
    z
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residue_field_map_is_additive(a in -300i64..300, b in 1i64..100, c in -300i64..300, d in 1i64..100) {
        for pr in [2u64, 3, 5] {
            let (x, y) = (q(a, b), q(c, d));
            let prime = p(pr);
            if let (Some(rx), Some(ry)) = (x.residue(prime), y.residue(prime)) {
                prop_assert_eq!((&x + &y).residue(prime), Some((rx + ry) % pr));
                prop_assert_eq!((&x * &y).residue(prime), Some(rx * ry % pr));
            }
        }
    }

    #[test]
    fn multiplication_is_associative((i, x, y) in algebra_and_elements(), k in 0usize..64) {
        let a = &algebras()[i].order;
        let z = a.basis_element(k % a.dim());
        prop_assert_eq!(a.multiply(&a.multiply(&x, &y), &z), a.multiply(&x, &a.multiply(&y, &z)));
        prop_assert_eq!(a.multiply(a.one(), &x), x.clone());
        prop_assert_eq!(a.multiply(&x, a.one()), x);
    }

    #[test]
    fn regular_character_is_a_trace((i, x, y) in algebra_and_elements()) {
        let a = &algebras()[i].order;
        prop_assert_eq!(a.regular_character(&a.multiply(&x, &y)), a.regular_character(&a.multiply(&y, &x)));
    }

    #[test]
    fn casimir_is_central_and_traces_are_central((i, x, _) in algebra_and_elements()) {
        let f = &algebras()[i];
        let a = &f.order;
        let z = casimir(a, &f.form).unwrap();
        prop_assert_eq!(a.multiply(&z, &x), a.multiply(&x, &z));
        let t = relative_trace(a, &f.form, &x).unwrap();
        prop_assert!(a.is_central(&t));
        // Σ b_i x b_i^∨ is a two-sided module map over the centre
        let c = a.center_basis()[0].clone();
        prop_assert_eq!(relative_trace(a, &f.form, &a.multiply(&c, &x)).unwrap(), a.multiply(&c, &t));
        prop_assert!(t.is_integral(f.prime()));
    }

    #[test]
    fn twisting_divides_the_casimir_element(i in 0usize..64, c in 1i64..30, w in prop::collection::vec(-2i64..3, 8)) {
        let f = &algebras()[i % algebras().len()];
        let a = &f.order;
        prop_assume!(c % f.prime().get() as i64 != 0);
        let z = central_unit(f, c, &w);
        prop_assert!(a.is_unit(&z));
        let twisted = twist_form(a, &f.form, &z).unwrap();
        let want = a.multiply(&casimir(a, &f.form).unwrap(), &a.invert(&z).unwrap());
        prop_assert_eq!(casimir(a, &twisted).unwrap(), want);
    }

    #[test]
    fn projective_homs_sit_inside_homs(i in 0usize..64, u in 0usize..8, v in 0usize..8) {
        let f = &algebras()[i % algebras().len()];
        let (u, v) = (&f.lattices[u % f.lattices.len()].1, &f.lattices[v % f.lattices.len()].1);
        let data = form_data(f);
        let full = hom_lattice(&f.order, u, v);
        for m in projective_hom_lattice(&f.order, &data.dual, u, v).unwrap().basis {
            prop_assert!(full.contains(&m, f.prime()));
        }
    }

    #[test]
    fn stable_invariants_ignore_the_twist(i in 0usize..64, l in 0usize..8, c in 1i64..20, w in prop::collection::vec(-1i64..2, 8)) {
        let f = &algebras()[i % algebras().len()];
        let a = &f.order;
        prop_assume!(c % f.prime().get() as i64 != 0);
        let u = &f.lattices[l % f.lattices.len()].1;
        let twisted = twist_form(a, &f.form, &central_unit(f, c, &w)).unwrap();
        let (d0, d1) = (form_data(f), SymmetricData::new(a, &twisted).unwrap());
        prop_assert_eq!(
            stable_hom(a, &d0, u, u).unwrap().exponents(),
            stable_hom(a, &d1, u, u).unwrap().exponents()
        );
        prop_assert_eq!(exponent(a, &d0, u).unwrap(), exponent(a, &d1, u).unwrap());
        let limits = Limits::default();
        match (stable_exponent_check(a, &d0, u, &limits), stable_exponent_check(a, &d1, u, &limits)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x.criterion, y.criterion),
            (Err(Error::Projective), Err(Error::Projective)) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn regular_lattices_of_cyclic_groups_are_stably_zero(n in 1usize..7, pr in prop::sample::select(vec![2u64, 3, 5])) {
        let f = builders::group_algebra("C", &GroupTable::cyclic(n), p(pr)).unwrap();
        let reg = f.lattice("regular").unwrap();
        prop_assert!(stable_hom(&f.order, &form_data(&f), reg, reg).unwrap().is_zero());
    }

    #[test]
    fn heights_ignore_common_unit_scaling(
        deg in prop::collection::vec(1i64..50, 1..5),
        ranks in prop::collection::vec(1i64..50, 1..4),
        pr in prop::sample::select(vec![2u64, 3, 5]),
        u in 1i64..30,
    ) {
        prop_assume!(u % pr as i64 != 0);
        let prime = p(pr);
        let degrees: Vec<Scalar> = deg.iter().map(|&d| s(d)).collect();
        let min = degrees.iter().map(|d| d.val(prime).finite().unwrap()).min().unwrap();
        let ranks: Vec<i64> = ranks.into_iter().filter(|&r| s(r).val(prime).finite().unwrap() >= min).collect();
        let scaled: Vec<Scalar> = degrees.iter().map(|d| d * &s(u)).collect();
        let pairs: Vec<(Scalar, Scalar)> = ranks.iter().map(|&r| (s(r), s(r * u))).collect();
        let h = height_invariance_check(&degrees, &scaled, &pairs, prime).unwrap();
        for (hv, r) in h.iter().zip(&ranks) {
            prop_assert_eq!(*hv, s(*r).val(prime).finite().unwrap() - min);
        }
    }
}
