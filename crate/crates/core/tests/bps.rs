use std::collections::BTreeSet;

use num_traits::Zero;
use qlie::bps::*;
use qlie::lie::{root_space_dimensions, AffineAlgebra, SignConvention};
use qlie::{Cocycle, Orientation, Rational, RootSystem};

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

#[test]
fn d4_degree_one_counts() {
    let d4 = rs("D~4");
    let b = bps_basis(&d4, 1).unwrap();
    let real = b.iter().filter(|s| matches!(s, BpsSymbol::RealStable { .. })).count();
    assert_eq!(real, 24);
    assert_eq!(b.len() - real, 4);
    assert!(multiplicity_audit(&d4, 1).unwrap().passed());
}

#[test]
fn delta_multiples_carry_rank_of_finite_part() {
    for (ty, m, count) in [("A~1", 1, 1), ("A~2", 2, 2), ("D~4", 1, 4)] {
        let r = rs(ty);
        let grading = r.delta().unwrap().as_weight().scale(m);
        let hist = bps_histogram(&r, m as u32).unwrap();
        assert_eq!(hist[&grading], count, "{ty}");
    }
}

#[test]
fn histogram_matches_algebra_dimensions() {
    for (ty, cutoff) in [("A~1", 4), ("A~2", 4), ("D~4", 4)] {
        let r = rs(ty);
        let alg = AffineAlgebra::new(
            &r,
            &Cocycle::new(&Orientation::reference(r.graph())),
            SignConvention::Descended,
            cutoff,
        )
        .unwrap();
        assert_eq!(bps_histogram(&r, cutoff).unwrap(), root_space_dimensions(&alg), "{ty}");
        let audit = multiplicity_audit(&r, cutoff).unwrap();
        assert!(audit.passed(), "{:?}", audit.render());
    }
}

#[test]
fn audit_lines_have_four_fields() {
    let audit = multiplicity_audit(&rs("A~1"), 1).unwrap();
    assert_eq!(audit.render(), ["0,1;1;1;ok", "1,0;1;1;ok", "1,1;1;1;ok"]);
}

#[test]
fn basis_is_duplicate_free_and_deterministic() {
    for ty in ["A~1", "A~2", "A~3", "D~4", "E~6"] {
        let r = rs(ty);
        let a = bps_basis(&r, 3).unwrap();
        let b = bps_basis(&r, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().collect::<BTreeSet<_>>().len(), a.len(), "{ty}");
    }
}

#[test]
fn conjecture_checks_pass_on_small_types() {
    for (ty, cutoff) in [("A~1", 3), ("A~2", 2), ("D~4", 2)] {
        let report = conjecture_algebra_checks(&rs(ty), cutoff).unwrap();
        assert!(report.passed(), "{report:?}");
        let unchecked = report.checks.iter().filter(|c| c.passed.is_none()).count();
        assert!(unchecked > 0);
        assert!(report
            .checks
            .iter()
            .filter(|c| c.passed.is_none())
            .all(|c| c.detail == "not machine-checked here"));
    }
}

#[test]
fn degenerate_character_fails_wall_check() {
    let r = rs("A~2");
    let report = conjecture_algebra_checks_with(&r, 2, Some(vec![Rational::zero(); 2])).unwrap();
    assert!(!report.passed());
    let wall = report.checks.iter().find(|c| c.name == "nakajima-off-walls").unwrap();
    assert_eq!(wall.passed, Some(false));
}

#[test]
fn rejects_finite_types_and_large_cutoffs() {
    assert!(bps_basis(&rs("A2"), 1).is_err());
    assert!(multiplicity_audit(&rs("A~1"), 0).is_err());
    assert!(conjecture_algebra_checks(&rs("A~1"), 5).is_err());
}
