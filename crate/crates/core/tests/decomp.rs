mod common;

use std::sync::Arc;

use grfrob::constructions::{ground_field, product_algebra};
use grfrob::corpus::{builtin, matrix_instances};
use grfrob::decomp::{classify_isoshift, is_graded_simple, principal_indecomposables, top_of};
use grfrob::report::classification_block;
use grfrob::{FiniteGroup, GradedModule, PrimeField};

use common::*;

#[test]
fn tops_are_graded_simple_by_definition() {
    for e in builtin().into_iter().filter(|e| e.algebra.dim() <= 24) {
        for pi in principal_indecomposables(&e.algebra, 0).unwrap() {
            assert_eq!(graded_simple_oracle(&pi.top, 4096), Some(true), "{}", e.name);
            assert!(is_graded_simple(&pi.top).unwrap());
            let local = pi.module.dim() > pi.top.dim();
            if let Some(simple) = graded_simple_oracle(&pi.module, 4096) {
                assert_eq!(simple, !local, "{}", e.name);
            }
        }
    }
}

#[test]
fn top_of_regular_module_is_semisimple_quotient() {
    for e in builtin().into_iter().filter(|e| e.algebra.dim() <= 24) {
        let r = GradedModule::left_regular(&e.algebra);
        let jgr = grfrob::radicals::graded_radical(&e.algebra);
        assert_eq!(top_of(&r).dim(), e.algebra.dim() - jgr.dim(), "{}", e.name);
    }
}

#[test]
fn small_classifications() {
    let f = PrimeField::new(3).unwrap();
    let t = Arc::new(FiniteGroup::trivial());
    let k = ground_field(t, f);
    let kk = Arc::new(product_algebra(&[&k, &k]).unwrap());
    let cls = classify_isoshift(&kk, 0).unwrap();
    assert_eq!(cls.t(), 2);
    assert_eq!(cls.multiplicities(), vec![1, 1]);

    let g = Arc::new(FiniteGroup::klein());
    let d = Arc::new(grfrob::constructions::group_algebra(g, f).unwrap());
    let cls = classify_isoshift(&d, 0).unwrap();
    assert_eq!((cls.t(), cls.multiplicities()), (1, vec![1]));
}

/// Counting for graded matrix rings from the coset data alone: `[G : H]`
/// types, embedded types indexed by right cosets `H g_i` meeting the shifts,
/// multiplicity the number of shifts in the coset.
#[test]
fn matrix_ring_counts_match_cosets() {
    for m in matrix_instances(10, 11) {
        let g = m.algebra.group();
        let cls = classify_isoshift(&m.algebra, 0).unwrap();
        let block = classification_block(&m.algebra, &cls).unwrap();
        assert_eq!(block.simple_types, g.order() / m.support.len(), "{}", m.name);
        let mut cosets: Vec<Vec<usize>> = m
            .shifts
            .iter()
            .map(|&x| {
                let mut c: Vec<usize> = m.support.iter().map(|&h| g.mul(h, x)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cosets.sort();
        let mut want: Vec<usize> = Vec::new();
        let mut i = 0;
        while i < cosets.len() {
            let j = (i..cosets.len()).find(|&j| cosets[j] != cosets[i]).unwrap_or(cosets.len());
            want.push(j - i);
            i = j;
        }
        want.sort_unstable();
        let mut got: Vec<usize> = block.embedded_types.iter().map(|t| t.multiplicity).collect();
        got.sort_unstable();
        assert_eq!(got, want, "{}", m.name);
        assert_eq!(block.gr_uniform, want.len() == 1, "{}", m.name);
    }
}
