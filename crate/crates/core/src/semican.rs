//! Coefficients `c_Y` of `E*_α` in the semicanonical basis: the
//! orientation-component products in every type, the complete `A_n` answer
//! through Jordan types and the sign character, and the stored `D4`/`D5`
//! tables with their validators.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cocycle::{all_orientations, Cocycle, Orientation, Sign};
use crate::error::{Error, Result};
use crate::graph::Family;
use crate::hall::orientation_label_in;
use crate::lie::{build_full_g, BasisSymbol, LieElement};
use crate::linalg::nilpotent_jordan_type;
use crate::partition::{root_partitions, RootPartition};
use crate::roots::RootSystem;
use crate::vector::DimVector;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ComputedOrientation,
    ComputedAn,
    StoredPaper,
    Unknown,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ComputedOrientation => "computed-orientation",
            Provenance::ComputedAn => "computed-An",
            Provenance::StoredPaper => "stored-paper",
            Provenance::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "computed-orientation" => Ok(Provenance::ComputedOrientation),
            "computed-An" => Ok(Provenance::ComputedAn),
            "stored-paper" => Ok(Provenance::StoredPaper),
            "unknown" => Ok(Provenance::Unknown),
            other => Err(Error::input(format!("unknown provenance `{other}`"))),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Global sign convention for emitted tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Computed entries are scaled so the entry on the label of the reference
    /// orientation component is positive. Stored entries are kept as printed.
    #[default]
    Reference,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub value: Option<i64>,
    pub provenance: Provenance,
}

/// Where a table loaded from a data file came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableSource {
    pub case: String,
    pub declared_digest: String,
    pub actual_digest: String,
}

/// `c_Y` for the root partitions `Y` of one root. The coefficients are only
/// defined up to one global sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub graph: String,
    pub root: DimVector,
    pub entries: BTreeMap<RootPartition, TableEntry>,
    pub normalization: Normalization,
    /// Orientation whose orbits index the partitions.
    pub indexing: Orientation,
    pub source: Option<TableSource>,
}

impl CoefficientTable {
    /// Always set: entries are meaningful only up to one global sign.
    pub fn global_sign_disclaimer(&self) -> bool {
        true
    }

    pub fn get(&self, label: &RootPartition) -> Option<&TableEntry> {
        self.entries.get(label)
    }

    pub fn with_provenance(&self, p: Provenance) -> impl Iterator<Item = (&RootPartition, &TableEntry)> {
        self.entries.iter().filter(move |(_, e)| e.provenance == p)
    }

    pub fn is_complete(&self) -> bool {
        self.entries.values().all(|e| e.value.is_some())
    }
}

/// `∏_{i<j} ε_Ω(α_{k_i}, α_{k_j})` for a presentation `(k_1, …, k_h)`.
pub fn c_orientation(rs: &RootSystem, presentation: &[usize], orientation: &Orientation) -> Result<Sign> {
    rs.check_presentation(presentation)?;
    let simple: Vec<DimVector> = presentation.iter().map(|&k| rs.simple_root(k)).collect();
    let refs: Vec<&[i32]> = simple.iter().map(|d| &d[..]).collect();
    Ok(Cocycle::new(orientation).ordered_product(&refs))
}

/// One orientation, the label of its component `E_{V,Ω}`, and its sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientationComponent {
    pub orientation: String,
    pub label: RootPartition,
    pub sign: i64,
}

/// `c_orientation` for every orientation, keyed by component label in the
/// indexing of the reference orientation. Orientations sharing a label must
/// share the sign.
pub fn orientation_component_vector(
    rs: &RootSystem,
    alpha: &DimVector,
    presentation: &[usize],
) -> Result<Vec<OrientationComponent>> {
    orientation_component_vector_in(rs, alpha, presentation, &Orientation::reference(rs.graph()))
}

/// [`orientation_component_vector`] with labels in the indexing of `indexing`.
pub fn orientation_component_vector_in(
    rs: &RootSystem,
    alpha: &DimVector,
    presentation: &[usize],
    indexing: &Orientation,
) -> Result<Vec<OrientationComponent>> {
    let total = rs.check_presentation(presentation)?;
    if total != *alpha.as_weight() {
        return Err(Error::input(format!("presentation sums to {total}, not {alpha}")));
    }
    let mut out = Vec::new();
    for o in all_orientations(rs.graph()) {
        let label = orientation_label_in(rs, alpha, &o, indexing)?;
        let sign = c_orientation(rs, presentation, &o)?.value();
        out.push(OrientationComponent {
            orientation: o.encode(),
            label,
            sign,
        });
    }
    let mut seen: BTreeMap<&RootPartition, (i64, &str)> = BTreeMap::new();
    for c in &out {
        if let Some(&(s, other)) = seen.get(&c.label) {
            if s != c.sign {
                return Err(Error::internal(format!(
                    "orientations {other} and {} share the component {} with different signs",
                    c.orientation, c.label
                )));
            }
        } else {
            seen.insert(&c.label, (c.sign, &c.orientation));
        }
    }
    Ok(out)
}

/// The orientation vector collapsed to one sign per label.
pub fn orientation_signs(components: &[OrientationComponent]) -> BTreeMap<RootPartition, i64> {
    components.iter().map(|c| (c.label.clone(), c.sign)).collect()
}

fn interval(part: &DimVector) -> Result<(usize, usize)> {
    let support: Vec<usize> = (0..part.rank()).filter(|&i| part[i] != 0).collect();
    let (lo, hi) = (support[0], *support.last().expect("nonzero part"));
    if part.iter().any(|&c| c > 1) || support.len() != hi - lo + 1 {
        return Err(Error::internal(format!("{part} is not an interval root")));
    }
    Ok((lo, hi))
}

/// Jordan type of `Σ_parts E_{i, j+1}` on `C^{n+1}` for interval parts
/// `[i..j]`.
pub fn jordan_type_an(partition: &RootPartition, n: usize) -> Result<Vec<usize>> {
    let mut m = vec![vec![Rational::from_integer(0.into()); n + 1]; n + 1];
    for part in partition.parts() {
        if part.rank() != n {
            return Err(Error::input("partition rank differs from n"));
        }
        let (i, j) = interval(part)?;
        m[i][j + 1] += Rational::from_integer(1.into());
    }
    nilpotent_jordan_type(&m)
}

/// The sign of a permutation of cycle type `λ`.
pub fn sign_character(lambda: &[usize]) -> Sign {
    let size: usize = lambda.iter().sum();
    Sign::from_parity((size - lambda.len()) as i64)
}

fn require_an(rs: &RootSystem) -> Result<usize> {
    if rs.graph().family() != Family::A || rs.is_affine() {
        return Err(Error::input(format!("{} is not of type A_n", rs.graph())));
    }
    Ok(rs.rank())
}

/// `c_An(Y) = g · sgn(cl Y)`; under [`Normalization::Reference`] `g = −1`,
/// which makes the one-part label positive, otherwise `g = 1`.
pub fn c_an(rs: &RootSystem, y: &RootPartition, normalization: Normalization) -> Result<Sign> {
    let n = require_an(rs)?;
    y.validate(rs, y.total().as_weight())?;
    let raw = sign_character(&jordan_type_an(y, n)?);
    Ok(match normalization {
        Normalization::Reference => -raw,
        Normalization::None => raw,
    })
}

/// Per-root result of comparing the orientation vector with `c_An`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckLine {
    pub root: String,
    pub presentation: Vec<usize>,
    pub labels: usize,
    pub partitions: usize,
    pub global_sign: Option<i64>,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub n: usize,
    pub lines: Vec<CrossCheckLine>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.mismatches.is_empty())
    }
}

/// Compares, for every positive root of `A_n`, the orientation vector of its
/// first presentation with `c_An` up to one global sign per root, and checks
/// that orientation components exhaust the root partitions.
pub fn cross_check_an(n: usize) -> Result<CrossCheckReport> {
    if !(1..=6).contains(&n) {
        return Err(Error::input("cross check supports 1 <= n <= 6"));
    }
    let rs = RootSystem::from_label(&format!("A{n}"))?;
    let mut lines = Vec::new();
    for alpha in rs.finite_positive_roots() {
        let pres = rs.first_presentation(alpha)?;
        let signs = orientation_signs(&orientation_component_vector(&rs, alpha, &pres)?);
        let partitions = root_partitions(alpha, &rs)?;
        let mut mismatches = Vec::new();
        let mut global = None;
        for y in &partitions {
            let Some(&s) = signs.get(y) else {
                mismatches.push(format!("{y}: not an orientation component"));
                continue;
            };
            let c = c_an(&rs, y, Normalization::None)?.value();
            match global {
                None => global = Some(s * c),
                Some(g) if g != s * c => mismatches.push(format!("{y}: orientation {s}, sign character {c}")),
                _ => {}
            }
        }
        lines.push(CrossCheckLine {
            root: alpha.encode(),
            presentation: pres,
            labels: signs.len(),
            partitions: partitions.len(),
            global_sign: global,
            mismatches,
        });
    }
    Ok(CrossCheckReport { n, lines })
}

/// Jordan type of `ad(Σ ẽ_{β_i})` on `g^ε`, an invariant of the nilpotent
/// orbit attached to `Y = {β_i}`.
pub fn ad_jordan_type(rs: &RootSystem, y: &RootPartition, orientation: &Orientation) -> Result<Vec<usize>> {
    let g = build_full_g(rs, &Cocycle::new(orientation))?;
    let mut x: LieElement<Rational> = LieElement::zero();
    for part in y.parts() {
        x.add_term(BasisSymbol::root(part), Rational::from_integer(1.into()));
    }
    nilpotent_jordan_type(&g.ad_matrix(&x)?)
}

/// Bundled reference tables.
pub const REFERENCE_CASES: [&str; 2] = ["D4-thetamax", "D5-thetamax"];

pub fn reference_table_text(case: &str) -> Result<&'static str> {
    match case.to_ascii_lowercase().as_str() {
        "d4-thetamax" | "d4" => Ok(include_str!("../data/d4_thetamax.tbl")),
        "d5-thetamax" | "d5" => Ok(include_str!("../data/d5_thetamax.tbl")),
        _ => Err(Error::input(format!(
            "unknown table `{case}`, expected one of {}",
            REFERENCE_CASES.join(", ")
        ))),
    }
}

/// A parsed table file: header fields and stored lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFile {
    pub case: String,
    pub graph: String,
    pub root: String,
    pub indexing: Option<String>,
    pub declared_digest: String,
    pub actual_digest: String,
    pub entries: Vec<(String, i64, Provenance)>,
}

/// SHA-256 (hex) of the entry lines, trimmed and newline-joined.
pub fn entries_digest<'a>(lines: impl IntoIterator<Item = &'a str>) -> String {
    let joined = lines.into_iter().map(str::trim).collect::<Vec<_>>().join("\n");
    Sha256::digest(joined.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses the table format: `# key: value` header lines, free `#` comments,
/// and `partition-key = integer # provenance` entries.
pub fn parse_table_file(text: &str) -> Result<TableFile> {
    let mut header: BTreeMap<String, String> = BTreeMap::new();
    let mut entries = Vec::new();
    let mut raw = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(':') {
                let k = k.trim();
                if ["format", "case", "type", "root", "indexing", "digest"].contains(&k) {
                    header.insert(k.to_string(), v.trim().to_string());
                }
            }
            continue;
        }
        let bad = |why: &str| Error::input(format!("table line {}: {why}: `{line}`", no + 1));
        let (lhs, prov) = line.split_once('#').ok_or_else(|| bad("missing provenance"))?;
        let (key, value) = lhs.split_once('=').ok_or_else(|| bad("missing `=`"))?;
        let value: i64 = value.trim().parse().map_err(|_| bad("bad integer"))?;
        entries.push((key.trim().to_string(), value, Provenance::parse(prov.trim())?));
        raw.push(line);
    }
    let field = |k: &str| {
        header
            .get(k)
            .cloned()
            .ok_or_else(|| Error::input(format!("table header lacks `{k}`")))
    };
    if field("format")? != "1" {
        return Err(Error::input("unsupported table format version"));
    }
    let declared = field("digest")?;
    Ok(TableFile {
        case: field("case")?,
        graph: field("type")?,
        root: field("root")?,
        indexing: header.get("indexing").cloned(),
        declared_digest: declared.strip_prefix("sha256:").unwrap_or(&declared).to_string(),
        actual_digest: entries_digest(raw),
        entries,
    })
}

/// Loads a table from its text: stored entries as printed, the orientation
/// part computed, every other partition marked unknown.
pub fn table_from_text(text: &str, normalization: Normalization) -> Result<CoefficientTable> {
    let file = parse_table_file(text)?;
    let rs = RootSystem::from_label(&file.graph)?;
    let root = rs.parse_root(&file.root)?;
    let indexing = match &file.indexing {
        Some(enc) => Orientation::parse(rs.graph(), enc)?,
        None => Orientation::reference(rs.graph()),
    };
    let mut table = orientation_table(&rs, &root, &indexing, normalization)?;
    for (key, value, provenance) in &file.entries {
        let label = RootPartition::parse_key(key, rs.rank())?;
        table.entries.insert(
            label,
            TableEntry {
                value: Some(*value),
                provenance: *provenance,
            },
        );
    }
    table.source = Some(TableSource {
        case: file.case,
        declared_digest: file.declared_digest,
        actual_digest: file.actual_digest,
    });
    Ok(table)
}

pub fn load_reference_table(case: &str, normalization: Normalization) -> Result<CoefficientTable> {
    table_from_text(reference_table_text(case)?, normalization)
}

/// All partitions of `alpha`: orientation labels computed, the rest unknown.
fn orientation_table(
    rs: &RootSystem,
    alpha: &DimVector,
    indexing: &Orientation,
    normalization: Normalization,
) -> Result<CoefficientTable> {
    let pres = rs.first_presentation(alpha)?;
    let components = orientation_component_vector_in(rs, alpha, &pres, indexing)?;
    let reference = Orientation::reference(rs.graph()).encode();
    let flip = match normalization {
        Normalization::Reference => components
            .iter()
            .find(|c| c.orientation == reference)
            .map_or(1, |c| c.sign),
        Normalization::None => 1,
    };
    let mut entries: BTreeMap<RootPartition, TableEntry> = root_partitions(alpha, rs)?
        .into_iter()
        .map(|y| {
            (
                y,
                TableEntry {
                    value: None,
                    provenance: Provenance::Unknown,
                },
            )
        })
        .collect();
    for (label, sign) in orientation_signs(&components) {
        entries.insert(
            label,
            TableEntry {
                value: Some(sign * flip),
                provenance: Provenance::ComputedOrientation,
            },
        );
    }
    Ok(CoefficientTable {
        graph: rs.graph().name().to_string(),
        root: alpha.clone(),
        entries,
        normalization,
        indexing: indexing.clone(),
        source: None,
    })
}

/// `E*_α` in the semicanonical basis: complete for `A_n`, merged with the
/// stored tables for the maximal roots of `D4`/`D5`, orientation part only
/// (other entries unknown) elsewhere.
pub fn decompose_e_star(rs: &RootSystem, alpha: &DimVector, normalization: Normalization) -> Result<CoefficientTable> {
    if rs.is_affine() || !rs.is_positive_root(alpha) {
        return Err(Error::input(format!("{alpha} is not a positive root of a finite type")));
    }
    if rs.graph().family() == Family::A {
        let entries = root_partitions(alpha, rs)?
            .into_iter()
            .map(|y| {
                let v = c_an(rs, &y, normalization)?.value();
                Ok((
                    y,
                    TableEntry {
                        value: Some(v),
                        provenance: Provenance::ComputedAn,
                    },
                ))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        return Ok(CoefficientTable {
            graph: rs.graph().name().to_string(),
            root: alpha.clone(),
            entries,
            normalization,
            indexing: Orientation::reference(rs.graph()),
            source: None,
        });
    }
    let name = rs.graph().name();
    if (name == "D4" || name == "D5") && alpha == rs.highest_root() {
        return load_reference_table(&format!("{name}-thetamax"), normalization);
    }
    orientation_table(rs, alpha, &Orientation::reference(rs.graph()), normalization)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub graph: String,
    pub root: String,
    pub checks: Vec<Check>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, failures: Vec<String>, ok_detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() { ok_detail } else { failures.join("; ") },
    }
}

/// Structural checks: keys are root partitions, stored and orientation keys
/// are disjoint, computed and stored values are nonzero, stored absolute
/// values are powers of two, and (for file tables) the digest matches.
pub fn validate_table(t: &CoefficientTable) -> Result<TableReport> {
    let rs = RootSystem::from_label(&t.graph)?;
    let universe = root_partitions(&t.root, &rs)?;
    let mut checks = Vec::new();

    let bad_keys: Vec<String> = t
        .entries
        .keys()
        .filter(|k| k.validate(&rs, t.root.as_weight()).is_err())
        .map(|k| k.key())
        .collect();
    checks.push(check(
        "keys-are-root-partitions",
        bad_keys.into_iter().map(|k| format!("`{k}` is not a root partition of {}", t.root)).collect(),
        format!("{} keys", t.entries.len()),
    ));

    let extra = t.entries.len().saturating_sub(universe.len());
    checks.push(check(
        "partition-universe",
        if t.entries.len() <= universe.len() {
            Vec::new()
        } else {
            vec![format!("{extra} more keys than the {} partitions", universe.len())]
        },
        format!("{} partitions of {}", universe.len(), t.root),
    ));

    let pres = rs.first_presentation(&t.root)?;
    let indexing = Orientation::parse(rs.graph(), &t.indexing.encode())?;
    let orientation_labels = orientation_signs(&orientation_component_vector_in(&rs, &t.root, &pres, &indexing)?);
    let clash: Vec<String> = t
        .with_provenance(Provenance::StoredPaper)
        .filter(|(k, _)| orientation_labels.contains_key(*k))
        .map(|(k, _)| format!("stored key {k} is an orientation component"))
        .collect();
    checks.push(check(
        "stored-disjoint-from-orientation",
        clash,
        format!("{} orientation components", orientation_labels.len()),
    ));

    let zeros: Vec<String> = t
        .entries
        .iter()
        .filter(|(_, e)| e.provenance != Provenance::Unknown && e.value == Some(0))
        .map(|(k, e)| format!("{k} has value 0 ({})", e.provenance))
        .collect();
    checks.push(check("no-zero-entries", zeros, "all known entries nonzero".into()));

    let not_pow2: Vec<String> = t
        .with_provenance(Provenance::StoredPaper)
        .filter_map(|(k, e)| e.value.map(|v| (k, v)))
        .filter(|(_, v)| {
            let a = v.unsigned_abs();
            a == 0 || !a.is_power_of_two()
        })
        .map(|(k, v)| format!("{k} = {v}"))
        .collect();
    checks.push(check(
        "stored-powers-of-two",
        not_pow2,
        format!("{} stored entries", t.with_provenance(Provenance::StoredPaper).count()),
    ));

    if let Some(src) = &t.source {
        checks.push(check(
            "digest",
            if src.declared_digest == src.actual_digest {
                Vec::new()
            } else {
                vec![format!("declared {} but entries hash to {}", src.declared_digest, src.actual_digest)]
            },
            src.actual_digest.clone(),
        ));
    }
    Ok(TableReport {
        graph: t.graph.clone(),
        root: t.root.encode(),
        checks,
    })
}
