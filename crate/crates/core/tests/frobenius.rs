mod common;

use std::sync::Arc;

use grfrob::config::Limits;
use grfrob::constructions::group_algebra;
use grfrob::corpus::{builtin, random_members};
use grfrob::frobenius::{analyze_qf, biduality_check, frobenius_report, is_sigma_faithful};
use grfrob::par::ExecMode;
use grfrob::report::analyze;
use grfrob::{FiniteGroup, GradedModule, PrimeField, Side};
use proptest::prelude::*;

use common::*;

#[test]
fn sigma_set_matches_linear_form_search() {
    for e in builtin().into_iter().chain(random_members(8, 7)) {
        let a = &e.algebra;
        let qf = analyze_qf(a, 0).unwrap();
        let fr = frobenius_report(a, &qf, ExecMode::Sequential).unwrap();
        for s in 0..a.group().order() {
            if let Some(o) = sigma_frobenius_oracle(a, s, 4096) {
                assert_eq!(o, fr.sigma_set.contains(&s), "{} at {}", e.name, a.group().label(s));
            }
        }
    }
}

#[test]
fn faithfulness_matches_definition() {
    for e in builtin() {
        let a = &e.algebra;
        for s in 0..a.group().order() {
            for (side, left) in [(Side::Left, true), (Side::Right, false)] {
                if let Some(o) = sigma_faithful_oracle(a, s, left, 4096) {
                    assert_eq!(is_sigma_faithful(a, s, side), o, "{} {side:?} {}", e.name, a.group().label(s));
                }
            }
        }
    }
}

#[test]
fn regular_module_is_reflexive_on_qf_instances() {
    for e in builtin().into_iter().filter(|e| e.expect_qf == Some(true) && e.algebra.dim() <= 16) {
        let b = biduality_check(&GradedModule::left_regular(&e.algebra)).unwrap();
        assert!(b.homomorphism && b.bijective, "{}", e.name);
    }
}

#[test]
fn reports_do_not_depend_on_execution_mode() {
    let limits = Limits::default();
    for e in builtin().into_iter().take(12) {
        let seq = analyze(&e.algebra, &limits, 0, ExecMode::Sequential).unwrap();
        let par = analyze(&e.algebra, &limits, 0, ExecMode::Parallel).unwrap();
        assert_eq!(serde_json::to_string(&seq).unwrap(), serde_json::to_string(&par).unwrap(), "{}", e.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// A group algebra graded by its group is a graded division ring, hence
    /// σ-graded Frobenius for every σ.
    #[test]
    fn group_algebras_are_frobenius_everywhere(gi in 0usize..5, p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let g = Arc::new(FiniteGroup::named(["C2", "C3", "C4", "V4", "S3"][gi]).unwrap());
        let a = Arc::new(group_algebra(g.clone(), PrimeField::new(p).unwrap()).unwrap());
        let qf = analyze_qf(&a, 0).unwrap();
        let fr = frobenius_report(&a, &qf, ExecMode::Parallel).unwrap();
        prop_assert!(fr.graded_qf && fr.all_agree);
        prop_assert_eq!(fr.sigma_set, g.all());
    }
}
