use std::sync::Arc;

use qlie::fq::{field, Mat};
use qlie::hall::{generic_label, orientation_label, HallCache, HallConfig, HallElement, HallEngine};
use qlie::{all_orientations, root_partitions, DimVector, FqRep, Orientation, RootPartition, RootSystem};

fn dv(v: &[i32]) -> DimVector {
    DimVector::new(v.to_vec()).unwrap()
}

fn label(parts: &[&[i32]]) -> RootPartition {
    let rank = parts.first().map_or(0, |p| p.len());
    RootPartition::new(parts.iter().map(|p| dv(p)).collect(), rank)
}

fn engine(ty: &str, orientation: &str) -> HallEngine {
    let rs = RootSystem::from_label(ty).unwrap();
    let o = Orientation::parse(rs.graph(), orientation).unwrap();
    HallEngine::new(&rs, &o, HallConfig::default()).unwrap()
}

#[test]
fn enumerate_a2_and_a3() {
    let e = engine("A2", "1>2");
    let classes = e.enumerate_reps(&dv(&[1, 1]), 3).unwrap();
    let labels: Vec<String> = classes.iter().map(|(c, _)| c.label.key()).collect();
    assert_eq!(labels, ["0,1;1,0", "1,1"]);
    let e = engine("A3", "1>2,2>3");
    assert_eq!(e.enumerate_reps(&dv(&[1, 1, 1]), 2).unwrap().len(), 4);
}

#[test]
fn enumerate_d4_matches_partition_count() {
    let rs = RootSystem::from_label("D4").unwrap();
    let d = dv(&[2, 1, 1, 1]);
    let count = root_partitions(&d, &rs).unwrap().len();
    for q in [2, 3] {
        let e = HallEngine::new(&rs, &Orientation::parse(rs.graph(), "1>0,2>0,3>0").unwrap(), HallConfig::default()).unwrap();
        let reps = e.enumerate_reps(&d, q).unwrap();
        assert_eq!(reps.len(), count);
        for (class, rep) in &reps {
            assert_eq!(&e.identify_class(rep).unwrap(), class);
        }
    }
}

#[test]
fn identify_simple_cases() {
    let e = engine("A2", "1>2");
    let h = e.orientation().arrows();
    for (x, expect) in [(1, "1,1"), (0, "0,1;1,0")] {
        let rep = FqRep::new(field(5).unwrap(), vec![1, 1], h.clone(), vec![Mat::from_rows(1, 1, vec![x])]).unwrap();
        assert_eq!(e.identify_class(&rep).unwrap().label.key(), expect);
    }
}

#[test]
fn d4_three_distinct_lines_are_indecomposable() {
    let e = engine("D4", "1>0,2>0,3>0");
    let f = field(3).unwrap();
    let col = |a, b| Mat::from_rows(2, 1, vec![a, b]);
    let rep = FqRep::new(f, vec![2, 1, 1, 1], e.orientation().arrows(), vec![col(1, 0), col(0, 1), col(1, 1)]).unwrap();
    assert_eq!(e.identify_class(&rep).unwrap().label.key(), "2,1,1,1");
}

#[test]
fn hall_numbers_a2() {
    let e = engine("A2", "1>2");
    let (p12, s1, s2) = (label(&[&[1, 1]]), label(&[&[1, 0]]), label(&[&[0, 1]]));
    for q in [2, 3, 4] {
        assert_eq!(e.hall_number(&p12, &s1, &s2, q).unwrap(), 1);
        assert_eq!(e.hall_number(&p12, &s2, &s1, q).unwrap(), 0);
        assert_eq!(e.hall_number(&p12, &RootPartition::empty(2), &p12, q).unwrap(), 1);
    }
    assert!(e.hall_number(&p12, &s1, &s1, 2).is_err());
}

#[test]
fn hall_polynomials_are_exact() {
    let e = engine("A2", "1>2");
    let split = label(&[&[1, 0], &[0, 1]]);
    let (s1, s2) = (label(&[&[1, 0]]), label(&[&[0, 1]]));
    assert_eq!(e.hall_polynomial(&split, &s1, &s2).unwrap().coeffs, vec![1]);
    let e = engine("A3", "1>2,2>3");
    let m = label(&[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
    let n = label(&[&[1, 0, 0]]);
    let p = label(&[&[1, 0, 0], &[0, 1, 0]]);
    let poly = e.hall_polynomial(&m, &n, &p).unwrap();
    for q in [2u32, 3, 4, 5] {
        assert_eq!(poly.eval(i64::from(q)), i128::from(e.hall_number(&m, &n, &p, q).unwrap()));
    }
    // Gaussian binomial [2 choose 1]_q = q + 1 lines in S1^2
    assert_eq!(poly.coeffs, vec![1, 1]);
}

#[test]
fn products_a2() {
    let e = engine("A2", "1>2");
    let s1 = e.simple(0);
    let s2 = e.simple(1);
    let p12 = HallElement::class(e.orientation(), label(&[&[1, 1]]));
    let split = HallElement::class(e.orientation(), label(&[&[1, 0], &[0, 1]]));
    assert_eq!(e.product(&s1, &s2).unwrap(), p12.plus(&split));
    assert_eq!(e.product(&s2, &s1).unwrap(), split);
    let unit = HallElement::class(e.orientation(), RootPartition::empty(2));
    assert_eq!(e.product(&s1, &unit).unwrap(), s1);
    assert_eq!(e.product(&unit, &p12).unwrap(), p12);
}

#[test]
fn bracket_identity_a2_a3_all_orientations() {
    for ty in ["A2", "A3"] {
        let rs = RootSystem::from_label(ty).unwrap();
        for o in all_orientations(rs.graph()) {
            let e = HallEngine::new(&rs, &o, HallConfig::default()).unwrap();
            for a in rs.finite_positive_roots() {
                for b in rs.finite_positive_roots() {
                    let c = e.verify_bracket_e(a, b).unwrap();
                    assert!(c.passed, "{ty} {o} {a} {b}: {}", c.diff());
                }
            }
        }
    }
}

#[test]
fn iterated_brackets_a2() {
    let e = engine("A2", "1>2");
    let p12 = HallElement::class(e.orientation(), label(&[&[1, 1]]));
    assert_eq!(e.iterated_bracket_value(&[0, 1]).unwrap(), p12);
    assert_eq!(e.iterated_bracket_value(&[1, 0]).unwrap(), p12.scaled(-1));
    assert_eq!(e.iterated_bracket_value(&[1]).unwrap(), e.simple(1));
    assert!(e.iterated_bracket_value(&[0, 0]).is_err());
}

#[test]
fn serre_a2_both_orientations() {
    for o in ["1>2", "2>1"] {
        let e = engine("A2", o);
        assert!(e.serre(0, 1).unwrap());
        assert!(e.serre(1, 0).unwrap());
    }
}

#[test]
fn associativity_a3_small() {
    let e = engine("A3", "1>2,3>2");
    let rs = e.root_system().clone();
    let mut classes = Vec::new();
    for d in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1]] {
        for l in root_partitions(&dv(&d), &rs).unwrap() {
            classes.push(HallElement::class(e.orientation(), l));
        }
    }
    for a in &classes {
        for b in &classes {
            for c in &classes {
                let left = e.product(&e.product(a, b).unwrap(), c).unwrap();
                let right = e.product(a, &e.product(b, c).unwrap()).unwrap();
                assert_eq!(left, right, "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn generic_labels_a2_and_a4() {
    let rs = RootSystem::from_label("A2").unwrap();
    let reference = Orientation::reference(rs.graph());
    assert_eq!(generic_label(&rs, &dv(&[1, 1]), &reference.arrows()).unwrap().key(), "1,1");
    assert_eq!(generic_label(&rs, &dv(&[1, 1]), &[]).unwrap().key(), "0,1;1,0");
    let rs = RootSystem::from_label("A4").unwrap();
    let o = Orientation::parse(rs.graph(), "1>2,3>2,3>4").unwrap();
    // cut at the one disagreeing arrow 3>2
    assert_eq!(orientation_label(&rs, &dv(&[1, 1, 1, 1]), &o).unwrap().key(), "0,0,1,1;1,1,0,0");
}

#[test]
fn disk_cache_is_a_pure_accelerator() {
    let dir = tempfile::tempdir().unwrap();
    let rs = RootSystem::from_label("A3").unwrap();
    let o = Orientation::reference(rs.graph());
    let theta = dv(&[1, 1, 1]);
    let cold = {
        let cache = Arc::new(HallCache::open(dir.path()).unwrap());
        let e = HallEngine::new(&rs, &o, HallConfig::default()).unwrap().with_cache(cache.clone());
        let v = e.verify_bracket_e(&dv(&[1, 0, 0]), &dv(&[0, 1, 1])).unwrap();
        e.flush().unwrap();
        assert!(!cache.is_empty());
        v
    };
    let cache = Arc::new(HallCache::open(dir.path()).unwrap());
    let e = HallEngine::new(&rs, &o, HallConfig::default()).unwrap().with_cache(cache);
    let warm = e.verify_bracket_e(&dv(&[1, 0, 0]), &dv(&[0, 1, 1])).unwrap();
    assert_eq!(cold, warm);
    assert!(warm.passed);
    assert_eq!(warm.rhs, e.e_alpha(&theta).unwrap());
}
