use std::collections::BTreeSet;

use qlie::semican::*;
use qlie::{all_orientations, root_partitions, DimVector, Orientation, RootPartition, RootSystem};

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn key(rs: &RootSystem, s: &str) -> RootPartition {
    RootPartition::parse_key(s, rs.rank()).unwrap()
}

#[test]
fn a2_sign_character_values() {
    let a2 = rs("A2");
    let two = key(&a2, "1,0;0,1");
    let one = key(&a2, "1,1");
    assert_eq!(jordan_type_an(&two, 2).unwrap(), vec![3]);
    assert_eq!(jordan_type_an(&one, 2).unwrap(), vec![2, 1]);
    assert_eq!(c_an(&a2, &two, Normalization::None).unwrap().value(), 1);
    assert_eq!(c_an(&a2, &one, Normalization::None).unwrap().value(), -1);
    assert_eq!(c_an(&a2, &one, Normalization::Reference).unwrap().value(), 1);
}

#[test]
fn an_closed_form_depends_on_part_count_only() {
    for n in 2..=4 {
        let r = rs(&format!("A{n}"));
        for alpha in r.finite_positive_roots() {
            for y in root_partitions(alpha, &r).unwrap() {
                let c = c_an(&r, &y, Normalization::None).unwrap().value();
                let expected = if y.len() % 2 == 0 { 1 } else { -1 };
                assert_eq!(c, expected, "A{n} {y}");
            }
        }
    }
}

#[test]
fn an_cross_check_agrees_with_orientation_products() {
    for n in 2..=4 {
        let report = cross_check_an(n).unwrap();
        assert!(report.passed(), "{report:?}");
        let roots = rs(&format!("A{n}")).finite_positive_roots().len();
        assert_eq!(report.lines.len(), roots);
        for line in &report.lines {
            assert_eq!(line.labels, line.partitions, "orientation components exhaust A{n}");
        }
    }
}

fn vector_for(r: &RootSystem, alpha: &DimVector, p: &[usize]) -> Vec<(RootPartition, i64)> {
    orientation_signs(&orientation_component_vector(r, alpha, p).unwrap())
        .into_iter()
        .collect()
}

#[test]
fn orientation_vector_is_presentation_independent() {
    let a3 = rs("A3");
    let roots: Vec<DimVector> = a3.finite_positive_roots().to_vec();
    let d4 = rs("D4");
    let theta = d4.highest_root().clone();
    for (r, alpha) in roots.iter().map(|a| (&a3, a)).chain([(&d4, &theta)]) {
        let presentations = r.presentations(alpha);
        assert!(!presentations.is_empty());
        let base = vector_for(r, alpha, &presentations[0]);
        for p in &presentations[1..] {
            let v = vector_for(r, alpha, p);
            let same = v == base;
            let negated = v.iter().zip(&base).all(|((k1, s1), (k2, s2))| k1 == k2 && s1 == &-s2);
            assert!(same || negated, "{alpha} presentation {p:?}");
        }
    }
}

#[test]
fn c_orientation_rejects_invalid_presentations() {
    let a3 = rs("A3");
    let o = Orientation::reference(a3.graph());
    assert!(c_orientation(&a3, &[0, 2], &o).is_err());
    assert!(c_orientation(&a3, &[0, 1, 2], &o).is_ok());
}

#[test]
fn d4_table_matches_printed_display() {
    let d4 = rs("D4");
    let t = load_reference_table("D4-thetamax", Normalization::Reference).unwrap();
    assert!(t.is_complete());
    assert!(t.global_sign_disclaimer());
    assert_eq!(t.entries.len(), 15);
    assert_eq!(t.with_provenance(Provenance::ComputedOrientation).count(), 8);
    assert_eq!(t.with_provenance(Provenance::StoredPaper).count(), 7);
    assert_eq!(t.get(&key(&d4, "1,0,0,0;1,1,1,1")).unwrap().value, Some(2));
    assert_eq!(t.get(&key(&d4, "1,1,0,0;1,0,1,1")).unwrap().value, Some(-1));
    assert_eq!(t.get(&key(&d4, "2,1,1,1")).unwrap().value, Some(1));
    assert!(validate_table(&t).unwrap().passed());
}

#[test]
fn d5_table_structure() {
    let t = load_reference_table("D5", Normalization::Reference).unwrap();
    assert_eq!(t.entries.len(), 55);
    assert_eq!(t.with_provenance(Provenance::ComputedOrientation).count(), 16);
    assert_eq!(t.with_provenance(Provenance::StoredPaper).count(), 38);
    let unknown: Vec<_> = t.with_provenance(Provenance::Unknown).map(|(k, _)| k.key()).collect();
    assert_eq!(unknown, vec!["1,0,0,1,0;1,1,1,1,1"]);
    for (_, e) in t.with_provenance(Provenance::StoredPaper) {
        assert!([1, 2].contains(&e.value.unwrap().abs()));
    }
    let report = validate_table(&t).unwrap();
    assert!(report.passed(), "{report:?}");
}

/// The two printed D5 terms whose parts do not sum to the maximal root are
/// completed by the missing simple root. Exactly one completion is a valid
/// partition that is neither stored elsewhere nor an orientation component.
#[test]
fn d5_restored_entries_are_forced() {
    let d5 = rs("D5");
    let theta = d5.highest_root().clone();
    let t = load_reference_table("D5", Normalization::None).unwrap();
    let orientation: BTreeSet<_> = t.with_provenance(Provenance::ComputedOrientation).map(|(k, _)| k.clone()).collect();
    let cases = [
        ("1,0,0,1,0;1,0,0,0,0;0,0,1,0,0;0,0,0,1,0;0,0,0,0,1", 1, "0,0,0,1,0;0,0,0,0,1;0,0,1,0,0;1,0,0,0,0;0,1,0,0,0;1,0,0,1,0"),
        ("1,1,1,0,0;1,0,0,1,0;0,0,0,0,1", 3, "0,0,0,1,0;0,0,0,0,1;1,0,0,1,0;1,1,1,0,0"),
    ];
    for (printed, missing, restored) in cases {
        let printed = key(&d5, printed);
        assert!(printed.validate(&d5, theta.as_weight()).is_err());
        let extra = DimVector::unit(5, missing);
        let mut candidates = BTreeSet::new();
        candidates.insert(printed.union(&RootPartition::single(extra.clone())));
        for (i, part) in printed.parts().iter().enumerate() {
            let merged = part + &extra;
            if d5.is_positive_real_root(&merged) {
                let mut parts = printed.parts().to_vec();
                parts[i] = merged;
                candidates.insert(RootPartition::new(parts, 5));
            }
        }
        let restored = key(&d5, restored);
        let survivors: Vec<_> = candidates
            .into_iter()
            .filter(|c| c.validate(&d5, theta.as_weight()).is_ok())
            .filter(|c| !orientation.contains(c))
            .filter(|c| c == &restored || t.get(c).map(|e| e.provenance) != Some(Provenance::StoredPaper))
            .collect();
        assert_eq!(survivors, vec![restored]);
    }
}

/// With the default indexing orientation two stored D5 keys would be
/// orientation components; the bipartite indexing in the table header
/// separates them.
#[test]
fn d5_indexing_orientation_matters() {
    let d5 = rs("D5");
    let theta = d5.highest_root().clone();
    let t = load_reference_table("D5", Normalization::None).unwrap();
    let stored: BTreeSet<_> = t.with_provenance(Provenance::StoredPaper).map(|(k, _)| k.clone()).collect();
    let pres = d5.first_presentation(&theta).unwrap();
    let clashes = |indexing: &Orientation| {
        orientation_component_vector_in(&d5, &theta, &pres, indexing)
            .unwrap()
            .iter()
            .filter(|c| stored.contains(&c.label))
            .map(|c| c.label.clone())
            .collect::<BTreeSet<_>>()
            .len()
    };
    assert_eq!(clashes(&Orientation::reference(d5.graph())), 2);
    assert_eq!(clashes(&t.indexing), 0);
}

fn mutate_line(text: &str, index: usize, f: impl Fn(&str) -> String) -> String {
    let mut seen = 0;
    text.lines()
        .map(|l| {
            if !l.starts_with('#') && !l.trim().is_empty() {
                seen += 1;
                if seen - 1 == index {
                    return f(l);
                }
            }
            l.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn every_single_entry_mutation_is_detected() {
    for case in REFERENCE_CASES {
        let text = reference_table_text(case).unwrap();
        let n = parse_table_file(text).unwrap().entries.len();
        for i in 0..n {
            let flipped = mutate_line(text, i, |l| {
                let (lhs, rest) = l.split_once('=').unwrap();
                let (v, prov) = rest.split_once('#').unwrap();
                let v: i64 = v.trim().parse().unwrap();
                format!("{lhs}= {} #{prov}", -v)
            });
            let t = table_from_text(&flipped, Normalization::None).unwrap();
            assert!(!validate_table(&t).unwrap().passed(), "{case} entry {i} sign flip");

            let dropped = mutate_line(text, i, |_| String::new());
            let t = table_from_text(&dropped, Normalization::None).unwrap();
            assert!(!validate_table(&t).unwrap().passed(), "{case} entry {i} removed");

            let tripled = mutate_line(text, i, |l| l.replacen(" = ", " = 3*", 1));
            assert!(table_from_text(&tripled, Normalization::None).is_err());
        }
    }
}

#[test]
fn corrupt_key_is_itemized() {
    let text = reference_table_text("D4").unwrap();
    let bad = mutate_line(text, 0, |l| l.replacen("1,1,0,0", "1,1,1,0", 1));
    let t = table_from_text(&bad, Normalization::None).unwrap();
    let report = validate_table(&t).unwrap();
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"keys-are-root-partitions"), "{failed:?}");
    assert!(failed.contains(&"digest"));
}

#[test]
fn malformed_tables_are_input_errors() {
    assert!(parse_table_file("# format: 1\n1,0 = 1\n").is_err());
    assert!(parse_table_file("# format: 2\n# case: x\n# type: A1\n# root: 1\n# digest: 0\n").is_err());
    assert!(load_reference_table("E6-thetamax", Normalization::None).is_err());
}

#[test]
fn decompose_covers_declared_scopes() {
    let a3 = rs("A3");
    let t = decompose_e_star(&a3, a3.highest_root(), Normalization::Reference).unwrap();
    assert_eq!(t.entries.len(), 4);
    assert!(t.is_complete());
    assert!(t.entries.values().all(|e| e.value.unwrap().abs() == 1 && e.provenance == Provenance::ComputedAn));
    assert_eq!(t.get(&RootPartition::single(a3.highest_root().clone())).unwrap().value, Some(1));

    let d4 = rs("D4");
    let t = decompose_e_star(&d4, d4.highest_root(), Normalization::Reference).unwrap();
    assert!(t.is_complete());
    assert_eq!(t.entries.len(), 15);

    let e6 = rs("E6");
    let alpha = e6
        .finite_positive_roots()
        .iter()
        .filter(|r| r.contains(&2))
        .min_by_key(|r| r.height())
        .unwrap()
        .clone();
    let t = decompose_e_star(&e6, &alpha, Normalization::Reference).unwrap();
    assert!(!t.is_complete());
    assert!(t.with_provenance(Provenance::Unknown).count() > 0);
    assert!(t.with_provenance(Provenance::ComputedOrientation).all(|(_, e)| e.value.unwrap().abs() == 1));

    assert!(decompose_e_star(&a3, &DimVector::new(vec![1, 0, 1]).unwrap(), Normalization::None).is_err());
}

#[test]
fn reference_normalization_makes_reference_label_positive() {
    let d4 = rs("D4");
    let theta = d4.highest_root().clone();
    let t = decompose_e_star(&d4, &theta, Normalization::Reference).unwrap();
    let pres = d4.first_presentation(&theta).unwrap();
    let reference = Orientation::reference(d4.graph()).encode();
    let comps = orientation_component_vector_in(&d4, &theta, &pres, &t.indexing).unwrap();
    let label = &comps.iter().find(|c| c.orientation == reference).unwrap().label;
    assert_eq!(t.get(label).unwrap().value, Some(1));
    assert_eq!(all_orientations(d4.graph()).len(), comps.len());
}

#[test]
fn ad_jordan_types_in_sl3() {
    let a2 = rs("A2");
    let o = Orientation::reference(a2.graph());
    assert_eq!(ad_jordan_type(&a2, &key(&a2, "1,0;0,1"), &o).unwrap(), vec![5, 3]);
    assert_eq!(ad_jordan_type(&a2, &key(&a2, "1,1"), &o).unwrap(), vec![3, 2, 2, 1]);
}

#[test]
fn provenance_round_trips() {
    for p in [
        Provenance::ComputedOrientation,
        Provenance::ComputedAn,
        Provenance::StoredPaper,
        Provenance::Unknown,
    ] {
        assert_eq!(Provenance::parse(p.as_str()).unwrap(), p);
    }
    assert!(Provenance::parse("guessed").is_err());
}
