//! The acceptance criteria as executable checks, shared by the `acceptance`
//! test target and `qlie selfcheck`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bps::{conjecture_algebra_checks, multiplicity_audit};
use crate::cocycle::{all_orientations, Cocycle, Orientation, Sign};
use crate::error::Result;
use crate::hall::{encode_record, parse_record, CacheKey, HallCache};
use crate::hall::{HallConfig, HallEngine};
use crate::lie::{check_jacobi, AffineAlgebra, CocycleAlgebra, SignConvention};
use crate::partition::{root_partitions, RootPartition};
use crate::roots::RootSystem;
use crate::semican::{
    cross_check_an, load_reference_table, orientation_component_vector, orientation_signs, reference_table_text,
    table_from_text, validate_table, Normalization, Provenance, REFERENCE_CASES,
};
use crate::stability::{flows_to_extending, nakajima_wall_test, stability_lemma_harness, StabilityConfig, Verdict};
use crate::vector::{DimVector, Weight};

/// Time budgets in seconds, one per criterion.
pub const BUDGETS: [(u32, u64); 12] = [
    (1, 1),
    (2, 5),
    (3, 30),
    (4, 30),
    (5, 600),
    (6, 600),
    (7, 10),
    (8, 120),
    (9, 300),
    (10, 1),
    (11, 30),
    (12, 30),
];

pub const NAMES: [&str; 12] = [
    "D5 partition count",
    "D4/D5 table checks",
    "A_n sign-character cross-check",
    "presentation independence",
    "Hall bracket identity",
    "Serre relations in the Hall algebra",
    "cocycle laws",
    "Jacobi suites",
    "stability lemma harness",
    "orientation-flow counts",
    "affine audits",
    "mutation robustness",
];

#[derive(Debug, Clone, Default)]
pub struct SelfcheckConfig {
    /// Hall polynomial cache directory; none keeps everything in memory.
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed_ms <= self.budget_ms
    }

    /// `[PASS] 1 D5 partition count: 55 partitions (0.01 s / 1 s)`.
    pub fn render(&self) -> String {
        format!(
            "[{}] {:>2} {}: {} ({:.2} s / {} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms as f64 / 1000.0,
            self.budget_ms / 1000
        )
    }
}

type Outcome = Result<(bool, String)>;

pub fn budget(id: u32) -> Duration {
    let secs = BUDGETS.iter().find(|(i, _)| *i == id).map_or(0, |(_, s)| *s);
    Duration::from_secs(secs)
}

/// Runs one criterion; errors count as failures with the error as detail.
pub fn run(id: u32, config: &SelfcheckConfig) -> Option<CriterionResult> {
    let f: fn(&SelfcheckConfig) -> Outcome = match id {
        1 => c1_d5_partitions,
        2 => c2_tables,
        3 => c3_an_cross_check,
        4 => c4_presentation_independence,
        5 => c5_hall_brackets,
        6 => c6_serre,
        7 => c7_cocycle_laws,
        8 => c8_jacobi,
        9 => c9_stability_lemma,
        10 => c10_flow_counts,
        11 => c11_affine,
        12 => c12_mutations,
        _ => return None,
    };
    let start = Instant::now();
    let (passed, detail) = match f(config) {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CriterionResult {
        id,
        name: NAMES[id as usize - 1].to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
        budget_ms: budget(id).as_millis(),
    })
}

pub fn run_all(config: &SelfcheckConfig) -> Vec<CriterionResult> {
    (1..=12).filter_map(|id| run(id, config)).collect()
}

fn rs(label: &str) -> Result<RootSystem> {
    RootSystem::from_label(label)
}

fn c1_d5_partitions(_: &SelfcheckConfig) -> Outcome {
    let d5 = rs("D5")?;
    let n = root_partitions(d5.highest_root(), &d5)?.len();
    Ok((n == 55, format!("{n} partitions of the maximal root")))
}

fn c2_tables(_: &SelfcheckConfig) -> Outcome {
    let t4 = load_reference_table("D4-thetamax", Normalization::Reference)?;
    let key = RootPartition::parse_key("1,0,0,0;1,1,1,1", 4)?;
    let two = t4.get(&key).and_then(|e| e.value).map(i64::abs) == Some(2);
    let stored4 = t4.with_provenance(Provenance::StoredPaper).count();
    let t5 = load_reference_table("D5-thetamax", Normalization::Reference)?;
    let d5_values = t5
        .with_provenance(Provenance::StoredPaper)
        .all(|(_, e)| matches!(e.value, Some(v) if v.abs() == 1 || v.abs() == 2));
    let r4 = validate_table(&t4)?;
    let r5 = validate_table(&t5)?;
    let passed = two && stored4 == 7 && d5_values && r4.passed() && r5.passed();
    let failed: Vec<String> = r4
        .checks
        .iter()
        .chain(&r5.checks)
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    Ok((
        passed,
        if failed.is_empty() {
            format!(
                "D4 |c|=2 entry present, {stored4} stored; D5 {} stored in {{±1,±2}}, {} unknown; validators pass",
                t5.with_provenance(Provenance::StoredPaper).count(),
                t5.with_provenance(Provenance::Unknown).count()
            )
        } else {
            failed.join("; ")
        },
    ))
}

fn c3_an_cross_check(_: &SelfcheckConfig) -> Outcome {
    let mut roots = 0;
    let mut bad = Vec::new();
    for n in 2..=4 {
        let report = cross_check_an(n)?;
        roots += report.lines.len();
        for line in report.lines.iter().filter(|l| !l.mismatches.is_empty()) {
            bad.push(format!("A{n} {}: {}", line.root, line.mismatches.join(", ")));
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() { format!("{roots} roots of A2..A4 agree") } else { bad.join("; ") },
    ))
}

fn c4_presentation_independence(_: &SelfcheckConfig) -> Outcome {
    let a3 = rs("A3")?;
    let d4 = rs("D4")?;
    let mut cases: Vec<(&RootSystem, DimVector)> = a3.finite_positive_roots().iter().map(|a| (&a3, a.clone())).collect();
    cases.push((&d4, d4.highest_root().clone()));
    let mut checked = 0;
    let mut bad = Vec::new();
    for (r, alpha) in cases {
        let presentations = r.presentations(&alpha);
        let base = orientation_signs(&orientation_component_vector(r, &alpha, &presentations[0])?);
        for p in &presentations {
            checked += 1;
            let v = orientation_signs(&orientation_component_vector(r, &alpha, p)?);
            let same = v == base;
            let negated = v.len() == base.len() && v.iter().all(|(k, s)| base.get(k) == Some(&-s));
            if !(same || negated) {
                bad.push(format!("{} {alpha} {p:?}", r.graph()));
            }
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() { format!("{checked} presentations") } else { bad.join("; ") },
    ))
}

fn engine(r: &RootSystem, o: &Orientation, cache: &Option<Arc<HallCache>>) -> Result<HallEngine> {
    let e = HallEngine::new(r, o, HallConfig::default())?;
    Ok(match cache {
        Some(c) => e.with_cache(c.clone()),
        None => e,
    })
}

fn open_cache(config: &SelfcheckConfig) -> Result<Option<Arc<HallCache>>> {
    config
        .cache_dir
        .as_ref()
        .map(|d| HallCache::open(d).map(Arc::new))
        .transpose()
}

/// Orientations tested for the `D4` bracket identity: the reference one and
/// one with a single reversed edge.
fn d4_orientations(d4: &RootSystem) -> Vec<Orientation> {
    let all = all_orientations(d4.graph());
    vec![all[0].clone(), all[1].clone()]
}

fn c5_hall_brackets(config: &SelfcheckConfig) -> Outcome {
    let cache = open_cache(config)?;
    let mut pairs = 0;
    let mut bad = Vec::new();
    for ty in ["A2", "A3"] {
        let r = rs(ty)?;
        let roots = r.finite_positive_roots().to_vec();
        for o in all_orientations(r.graph()) {
            let e = engine(&r, &o, &cache)?;
            for a in &roots {
                for b in &roots {
                    if !r.is_positive_root(&(a + b)) {
                        continue;
                    }
                    pairs += 1;
                    if !e.verify_bracket_e(a, b)?.passed {
                        bad.push(format!("{ty} {o} ({a}, {b})"));
                    }
                }
            }
            e.flush()?;
        }
    }
    let d4 = rs("D4")?;
    let theta = d4.highest_root().clone();
    let roots = d4.finite_positive_roots().to_vec();
    for o in d4_orientations(&d4) {
        let e = engine(&d4, &o, &cache)?;
        for a in &roots {
            for b in &roots {
                if a + b != theta {
                    continue;
                }
                pairs += 1;
                if !e.verify_bracket_e(a, b)?.passed {
                    bad.push(format!("D4 {o} ({a}, {b})"));
                }
            }
        }
        e.flush()?;
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() { format!("{pairs} ordered pairs exact") } else { bad.join("; ") },
    ))
}

fn c6_serre(config: &SelfcheckConfig) -> Outcome {
    let cache = open_cache(config)?;
    let mut cases: Vec<(RootSystem, Orientation)> = Vec::new();
    let a2 = rs("A2")?;
    for o in all_orientations(a2.graph()) {
        cases.push((a2.clone(), o));
    }
    for ty in ["A3", "D4"] {
        let r = rs(ty)?;
        let o = Orientation::reference(r.graph());
        cases.push((r, o));
    }
    let mut count = 0;
    let mut bad = Vec::new();
    for (r, o) in &cases {
        let e = engine(r, o, &cache)?;
        for i in 0..r.rank() {
            for j in (0..r.rank()).filter(|&j| j != i) {
                count += 1;
                if !e.serre(i, j)? {
                    bad.push(format!("{} {o} ({i},{j})", r.graph()));
                }
            }
        }
        e.flush()?;
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() { format!("{count} relations vanish") } else { bad.join("; ") },
    ))
}

fn all_roots(r: &RootSystem) -> Vec<Weight> {
    r.finite_positive_roots()
        .iter()
        .flat_map(|a| [a.as_weight().clone(), -a.as_weight()])
        .collect()
}

fn c7_cocycle_laws(_: &SelfcheckConfig) -> Outcome {
    let d4 = rs("D4")?;
    let roots = all_roots(&d4);
    let mut bad = Vec::new();
    let mut checks = 0u64;
    for o in all_orientations(d4.graph()) {
        let c = Cocycle::new(&o);
        for a in &roots {
            for b in &roots {
                checks += 1;
                let sym = c.epsilon(a, b) * c.epsilon(b, a);
                if sym != Sign::from_parity(i64::from(d4.pairing(a, b))) {
                    bad.push(format!("{o} symmetrization at ({a}, {b})"));
                }
                for g in &roots {
                    let left = c.epsilon(&(a + b), g) == c.epsilon(a, g) * c.epsilon(b, g);
                    let right = c.epsilon(g, &(a + b)) == c.epsilon(g, a) * c.epsilon(g, b);
                    if !(left && right) {
                        bad.push(format!("{o} bimultiplicativity at ({a}, {b}, {g})"));
                    }
                }
            }
            if c.euler_form(a, a) != 1 {
                bad.push(format!("{o} <{a},{a}> != 1"));
            }
        }
    }
    let a1 = rs("A~1")?;
    let real: Vec<_> = a1.positive_roots(Some(4))?.into_iter().filter(|w| a1.is_real_root(w)).collect();
    for o in all_orientations(a1.graph()) {
        let c = Cocycle::new(&o);
        for w in &real {
            checks += 1;
            if c.euler_form(w, w) != 1 {
                bad.push(format!("A~1 {o} <{w},{w}> != 1"));
            }
        }
    }
    bad.truncate(5);
    Ok((
        bad.is_empty(),
        if bad.is_empty() { format!("{checks} root pairs over all orientations") } else { bad.join("; ") },
    ))
}

fn c8_jacobi(_: &SelfcheckConfig) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for ty in ["A2", "A3", "D4"] {
        let r = rs(ty)?;
        let alg = CocycleAlgebra::full(&r, &Cocycle::new(&Orientation::reference(r.graph())))?;
        let report = check_jacobi(&alg)?;
        ok &= report.passed();
        details.push(format!("{ty}: {} triples", report.checked));
    }
    for ty in ["A~1", "A~2"] {
        let r = rs(ty)?;
        let alg = AffineAlgebra::new(
            &r,
            &Cocycle::new(&Orientation::reference(r.graph())),
            SignConvention::Descended,
            4,
        )?;
        let report = check_jacobi(&alg)?;
        ok &= report.passed();
        details.push(format!("{ty} to 4δ: {} triples", report.checked));
    }
    Ok((ok, details.join(", ")))
}

fn c9_stability_lemma(_: &SelfcheckConfig) -> Outcome {
    let mut cases = Vec::new();
    for ty in ["A2", "A3"] {
        let r = rs(ty)?;
        for a in r.finite_positive_roots().to_vec() {
            cases.push((r.clone(), a));
        }
    }
    let d4 = rs("D4")?;
    let theta = d4.highest_root().clone();
    cases.push((d4, theta));
    let cfg = StabilityConfig::default();
    let mut classes = 0;
    let mut bad = Vec::new();
    for (r, alpha) in &cases {
        let o = Orientation::reference(r.graph());
        let mut verdicts: Vec<BTreeMap<String, Verdict>> = Vec::new();
        for q in [2, 3] {
            let report = stability_lemma_harness(r, alpha, &o, q, &cfg)?;
            for l in report.lines.iter().filter(|l| !l.consistent) {
                bad.push(format!("{} {alpha} F{q}: {}", r.graph(), l.render()));
            }
            classes += report.lines.len();
            verdicts.push(report.lines.iter().map(|l| (l.label.clone(), l.verdict)).collect());
        }
        if verdicts[0] != verdicts[1] {
            bad.push(format!("{} {alpha}: verdicts differ between F2 and F3", r.graph()));
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            format!("{classes} classes over F2 and F3, {} roots", cases.len())
        } else {
            bad.join("; ")
        },
    ))
}

fn c10_flow_counts(_: &SelfcheckConfig) -> Outcome {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    let expected = [("A~1", 1), ("A~2", 2), ("A~3", 3), ("A~4", 4), ("D~4", 1), ("E~6", 1)];
    for (ty, want) in expected {
        let r = rs(ty)?;
        let p = r.graph().extending_vertex().expect("affine");
        let n = all_orientations(r.graph())
            .iter()
            .filter(|o| flows_to_extending(o, p))
            .count();
        seen.push(format!("{ty}:{n}"));
        if n != want {
            bad.push(format!("{ty} has {n}, expected {want}"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { seen.join(" ") } else { bad.join("; ") }))
}

fn c11_affine(_: &SelfcheckConfig) -> Outcome {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for ty in ["A~1", "A~2"] {
        let report = conjecture_algebra_checks(&rs(ty)?, 3)?;
        for c in report.checks.iter().filter(|c| c.passed == Some(false)) {
            bad.push(format!("{ty} {}: {}", c.name, c.detail));
        }
    }
    for ty in ["A~1", "A~2", "D~4"] {
        let r = rs(ty)?;
        let audit = multiplicity_audit(&r, 4)?;
        if !audit.passed() {
            bad.push(format!("{ty} audit: {}", audit.render().join(" ")));
        }
        notes.push(format!("{ty} {} gradings", audit.lines.len()));
        if !nakajima_wall_test(r.graph(), r.delta().expect("affine"))? {
            bad.push(format!("{ty} Nakajima character on a wall"));
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            format!("ehat identities to 3δ; histograms to 4δ ({}); off walls", notes.join(", "))
        } else {
            bad.join("; ")
        },
    ))
}

fn entry_lines(text: &str) -> Vec<usize> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, _)| i)
        .collect()
}

fn replace_line(text: &str, at: usize, with: &str) -> String {
    text.lines()
        .enumerate()
        .map(|(i, l)| if i == at { with } else { l })
        .collect::<Vec<_>>()
        .join("\n")
}

fn detected(text: &str) -> bool {
    match table_from_text(text, Normalization::None) {
        Err(_) => true,
        Ok(t) => validate_table(&t).map_or(true, |r| !r.passed()),
    }
}

/// Mutations of one table line: sign flip, doubled value, deletion.
fn table_mutations(line: &str) -> Vec<String> {
    let Some((lhs, rest)) = line.split_once('=') else {
        return vec![String::new()];
    };
    let Some((v, prov)) = rest.split_once('#') else {
        return vec![String::new()];
    };
    let v: i64 = v.trim().parse().unwrap_or(0);
    vec![
        format!("{lhs}= {} #{prov}", -v),
        format!("{lhs}= {} #{prov}", 2 * v),
        String::new(),
    ]
}

fn c12_mutations(_: &SelfcheckConfig) -> Outcome {
    let mut tried = 0;
    let mut missed = Vec::new();
    for case in REFERENCE_CASES {
        let text = reference_table_text(case)?;
        if detected(text) {
            missed.push(format!("{case}: pristine table rejected"));
        }
        let lines: Vec<&str> = text.lines().collect();
        for i in entry_lines(text) {
            for m in table_mutations(lines[i]) {
                tried += 1;
                if !detected(&replace_line(text, i, &m)) {
                    missed.push(format!("{case} line {}", i + 1));
                }
            }
        }
    }
    let key = CacheKey {
        graph: "D4".into(),
        orientation: "0>1,0>2,0>3".into(),
        m: RootPartition::parse_key("1,0,0,0;1,1,0,0", 4)?,
        n: RootPartition::parse_key("1,0,0,0", 4)?,
        p: RootPartition::parse_key("1,1,0,0", 4)?,
    };
    let record = encode_record(&key, &[1, 1, 0, 2]);
    if parse_record(&record).is_err() {
        missed.push("pristine cache record rejected".into());
    }
    let bytes = record.as_bytes();
    for i in 0..bytes.len() {
        for &replacement in b"019;,af" {
            if bytes[i] == replacement {
                continue;
            }
            let mut mutated = bytes.to_vec();
            mutated[i] = replacement;
            tried += 1;
            let text = String::from_utf8_lossy(&mutated).into_owned();
            if let Ok(parsed) = parse_record(&text) {
                if parsed != (key.clone(), vec![1, 1, 0, 2]) {
                    missed.push(format!("cache byte {i} -> {}", replacement as char));
                }
            }
        }
    }
    Ok((
        missed.is_empty(),
        if missed.is_empty() {
            format!("{tried} single-entry mutations detected")
        } else {
            format!("undetected: {}", missed.join(", "))
        },
    ))
}
