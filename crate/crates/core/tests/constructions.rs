mod common;

use std::sync::Arc;

use grfrob::constructions::{
    graded_division_ring, matrix_over, named_inner, quaternion_cocycle, structure_recovery, trivial_extension,
    GradedDivisionSpec,
};
use grfrob::corpus::builtin;
use grfrob::{FiniteGroup, PrimeField};
use proptest::prelude::*;

use common::*;

#[test]
fn quaternion_division_ring_has_invertible_homogeneous_elements() {
    let f = PrimeField::new(3).unwrap();
    let g = Arc::new(FiniteGroup::klein());
    let support: Vec<usize> = ["e", "a", "b", "ab"].iter().map(|s| g.parse_element(s).unwrap()).collect();
    let spec = GradedDivisionSpec { group: g.clone(), support, cocycle: Some(quaternion_cocycle(f)) };
    let d = graded_division_ring(f, &spec).unwrap();
    assert!(!d.is_commutative());
    for i in 0..d.dim() {
        let x = unit(d.dim(), i);
        let sq = d.mul(&x, &x);
        assert!(rank(std::slice::from_ref(&sq), 3) == 1 && in_span(&[d.unit().to_vec()], &sq, 3));
    }
}

#[test]
fn trivial_extension_grading() {
    let f = PrimeField::new(3).unwrap();
    let a = named_inner("upper-triangular-2", f).unwrap();
    let e = trivial_extension(&a).unwrap();
    let c = e.group().parse_element("c").unwrap();
    assert_eq!(e.dim(), 2 * a.dim());
    assert_eq!(basis_in(&e, c).len(), a.dim());
    // A* squares to zero.
    let dual: Vec<Vec<u32>> = basis_in(&e, c).into_iter().map(|i| unit(e.dim(), i)).collect();
    assert!(products(&e, &dual, &dual).is_empty());
}

#[test]
fn graded_simple_corpus_members_are_recovered() {
    for e in builtin().into_iter().filter(|e| e.graded_simple) {
        let r = structure_recovery(&e.algebra).unwrap();
        assert!(r.witness_verified, "{}", e.name);
        assert_eq!(r.n * r.n * r.support.len(), e.algebra.dim(), "{}", e.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn matrix_grading_matches_formula(
        gi in 0usize..4,
        gen in 0usize..6,
        shifts in prop::collection::vec(0usize..6, 1..4),
    ) {
        let g = Arc::new(FiniteGroup::named(["C2", "C4", "S3", "C2xC4"][gi]).unwrap());
        let order = g.order();
        let h = g.subgroup_generated(&[gen % order]);
        let shifts: Vec<usize> = shifts.into_iter().map(|s| s % order).collect();
        let d = graded_division_ring(PrimeField::new(5).unwrap(), &GradedDivisionSpec::untwisted(g.clone(), h.clone())).unwrap();
        let a = matrix_over(&d, &shifts).unwrap();
        prop_assert!(a.validate().is_ok());
        let dims: Vec<usize> = (0..order).map(|x| basis_in(&a, x).len()).collect();
        prop_assert_eq!(dims, matrix_graded_dims(&g, &h, &shifts));
    }
}
