mod common;

use std::sync::Arc;

use grfrob::constructions::truncated_polynomial;
use grfrob::corpus::{builtin, random_members};
use grfrob::radicals::{
    graded_radical, graded_singular, is_graded_semisimple, is_vn_regular, left_socle, nilpotency_index, right_socle,
    Tri,
};
use grfrob::{FiniteGroup, PrimeField};
use proptest::prelude::*;

use common::*;

#[test]
fn graded_radical_is_certified() {
    let mut decided = 0;
    for e in builtin().into_iter().chain(random_members(6, 3)) {
        let a = &e.algebra;
        if let Some(ok) = graded_radical_certificate(a, &graded_radical(a).vectors(), 4096) {
            assert!(ok, "{}", e.name);
            decided += 1;
        }
    }
    assert!(decided >= 30, "only {decided} certified");
}

#[test]
fn socles_are_radical_annihilators() {
    for e in builtin() {
        let a = &e.algebra;
        let p = a.field().p();
        let j = graded_radical(a).vectors();
        assert!(same_span(&left_socle(a).vectors(), &annihilator(a, &j, true), p), "{}", e.name);
        assert!(same_span(&right_socle(a).vectors(), &annihilator(a, &j, false), p), "{}", e.name);
    }
}

#[test]
fn singular_ideal_matches_definition() {
    for e in builtin().into_iter().filter(|e| e.algebra.dim() <= 12) {
        let a = &e.algebra;
        let Some(parts) = singular_oracle(a, 256) else { continue };
        let z = graded_singular(a);
        for (h, part) in parts.iter().enumerate() {
            assert!(same_span(part, z.part(h).basis(), a.field().p()), "{} degree {h}", e.name);
        }
    }
}

#[test]
fn regularity_matches_semisimplicity() {
    for e in builtin().into_iter().filter(|e| e.algebra.dim() <= 8) {
        let a = &e.algebra;
        match is_vn_regular(a, 1 << 16) {
            Tri::Indeterminate => {}
            t => assert_eq!(t.as_bool(), Some(is_graded_semisimple(a)), "{}", e.name),
        }
    }
}

#[test]
fn modular_group_algebra_is_graded_semisimple() {
    // GF(2)[C2] graded by C2 has a nonzero ungraded radical but J^gr = 0.
    let g = Arc::new(FiniteGroup::cyclic(2));
    let a = grfrob::constructions::group_algebra(g, PrimeField::new(2).unwrap()).unwrap();
    assert!(is_graded_semisimple(&a));
    assert_eq!(grfrob::radicals::radical(&a).dim(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncated_polynomial_radical(gi in 0usize..3, p in prop::sample::select(vec![2u32, 3, 5]), m in 1usize..6, deg in 0usize..6) {
        let g = Arc::new(FiniteGroup::named(["C2", "C3", "V4"][gi]).unwrap());
        let deg = deg % g.order();
        let a = truncated_polynomial(PrimeField::new(p).unwrap(), g, deg, m).unwrap();
        let j = graded_radical(&a);
        prop_assert_eq!(j.dim(), m - 1);
        prop_assert_eq!(nilpotency_index(&a, &j), Some(m));
        prop_assert_eq!(graded_radical_certificate(&a, &j.vectors(), 4096), Some(true));
    }
}
