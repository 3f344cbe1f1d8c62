use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use qlie::bps::{conjecture_algebra_checks, multiplicity_audit};
use qlie::hall::{default_cache_dir, validate_cache_file, HallCache, CACHE_FILE};
use qlie::lie::{AffineAlgebra, CocycleAlgebra, LieStructure, SignConvention};
use qlie::selfcheck::{self, SelfcheckConfig};
use qlie::semican::{
    decompose_e_star, load_reference_table, table_from_text, validate_table, CoefficientTable, Normalization,
    TableReport,
};
use qlie::stability::{stability_lemma_harness, StabilityConfig};
use qlie::{
    root_partitions, BasisSymbol, Cocycle, DimVector, Error, HallConfig, HallElement, HallEngine, LieElement,
    Orientation, Rational, Result, RootPartition, RootSystem, Weight,
};

use crate::{Cli, Command, Convention, Normalize, Output};

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Roots { ty, max_height, count } => roots(&ty.ty, *max_height, *count),
        Command::Partitions { ty, root, count } => partitions(&ty.ty, root, *count),
        Command::Epsilon {
            ty,
            orientation,
            alpha,
            beta,
        } => epsilon(&ty.ty, orientation.as_deref(), alpha, beta),
        Command::Bracket {
            ty,
            orientation,
            alpha,
            beta,
            cutoff,
            convention,
        } => bracket(&ty.ty, orientation.as_deref(), alpha, beta, *cutoff, *convention),
        Command::Hall {
            ty,
            orientation,
            alpha,
            beta,
            m,
            n,
            p,
            q,
        } => {
            let rs = RootSystem::from_label(&ty.ty)?;
            let o = orientation_arg(&rs, orientation.as_deref())?;
            let mut engine = HallEngine::new(&rs, &o, HallConfig::default())?;
            if let Some(cache) = open_cache(cli)? {
                engine = engine.with_cache(cache);
            }
            let out = match (alpha, beta, m, n, p) {
                (Some(a), Some(b), ..) => hall_bracket(&rs, &engine, a, b),
                (_, _, Some(m), Some(n), Some(p)) => hall_polynomial(&rs, &engine, m, n, p, *q),
                _ => Err(Error::input("hall needs --alpha/--beta or --m/--n/--p")),
            };
            engine.flush()?;
            out
        }
        Command::Stability {
            ty,
            root,
            orientation,
            q,
        } => stability(&ty.ty, root, orientation.as_deref(), *q),
        Command::Coeffs { ty, root, normalize } => coeffs(&ty.ty, root, *normalize),
        Command::Validate {
            tables,
            table_file,
            cache,
        } => validate(cli, tables, table_file, *cache),
        Command::BpsAudit { ty, cutoff } => bps_audit(&ty.ty, *cutoff),
        Command::Selfcheck { only } => selfcheck(cli, only),
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    cli.cache_dir.clone().or_else(default_cache_dir)
}

fn open_cache(cli: &Cli) -> Result<Option<Arc<HallCache>>> {
    match cache_dir(cli) {
        Some(dir) => match HallCache::open(&dir) {
            Ok(c) => Ok(Some(Arc::new(c))),
            Err(e) => {
                log::warn!("cache disabled: {e}");
                Ok(None)
            }
        },
        None => Ok(None),
    }
}

fn orientation_arg(rs: &RootSystem, s: Option<&str>) -> Result<Orientation> {
    match s {
        Some(s) if s != "reference" => Orientation::parse(rs.graph(), s),
        _ => Ok(Orientation::reference(rs.graph())),
    }
}

fn weight_arg(rs: &RootSystem, s: &str) -> Result<Weight> {
    match s.trim() {
        "highest" | "theta" | "max" | "delta" => Ok(rs.parse_root(s)?.into_weight()),
        other => Weight::parse(other, rs.rank()),
    }
}

fn roots(ty: &str, max_height: u32, count: bool) -> Result<Output> {
    let rs = RootSystem::from_label(ty)?;
    let roots = rs.positive_roots(Some(max_height))?;
    let encoded: Vec<String> = roots.iter().map(|r| r.encode()).collect();
    let mut json = json!({ "type": rs.graph().name(), "count": roots.len() });
    if rs.is_affine() {
        json["max_height"] = json!(max_height);
    }
    let text = if count {
        vec![roots.len().to_string()]
    } else {
        json["roots"] = json!(encoded);
        roots
            .iter()
            .map(|r| {
                let kind = if rs.is_real_root(r) { "real" } else { "imaginary" };
                format!("{r}  height {}  {kind}", r.height())
            })
            .collect()
    };
    Ok(Output {
        json,
        text,
        passed: true,
    })
}

fn partitions(ty: &str, root: &str, count: bool) -> Result<Output> {
    let rs = RootSystem::from_label(ty)?;
    let alpha = rs.parse_root(root)?;
    let parts = root_partitions(&alpha, &rs)?;
    let mut json = json!({ "type": rs.graph().name(), "root": alpha.encode(), "count": parts.len() });
    let text = if count {
        vec![parts.len().to_string()]
    } else {
        json["partitions"] = json!(parts.iter().map(RootPartition::key).collect::<Vec<_>>());
        parts.iter().map(|p| p.to_string()).collect()
    };
    Ok(Output {
        json,
        text,
        passed: true,
    })
}

fn epsilon(ty: &str, orientation: Option<&str>, alpha: &str, beta: &str) -> Result<Output> {
    let rs = RootSystem::from_label(ty)?;
    let o = orientation_arg(&rs, orientation)?;
    let (a, b) = (weight_arg(&rs, alpha)?, weight_arg(&rs, beta)?);
    let c = Cocycle::new(&o);
    let euler = c.euler_form(&a, &b);
    let eps = c.epsilon(&a, &b).value();
    Ok(Output {
        json: json!({
            "type": rs.graph().name(),
            "orientation": o.encode(),
            "alpha": a.encode(),
            "beta": b.encode(),
            "euler_form": euler,
            "epsilon": eps,
            "pairing": rs.pairing(&a, &b),
        }),
        text: vec![
            format!("<{a}, {b}>_Ω = {euler}"),
            format!("ε({a}, {b}) = {eps}"),
            format!("({a}, {b}) = {}", rs.pairing(&a, &b)),
        ],
        passed: true,
    })
}

fn bracket(
    ty: &str,
    orientation: Option<&str>,
    alpha: &str,
    beta: &str,
    cutoff: u32,
    convention: Convention,
) -> Result<Output> {
    let rs = RootSystem::from_label(ty)?;
    let o = orientation_arg(&rs, orientation)?;
    let c = Cocycle::new(&o);
    let x: LieElement<Rational> = LieElement::parse(alpha, rs.graph()).or_else(|_| {
        weight_arg(&rs, alpha).map(|w| LieElement::basis(BasisSymbol::Root(w)))
    })?;
    let y: LieElement<Rational> = LieElement::parse(beta, rs.graph())
        .or_else(|_| weight_arg(&rs, beta).map(|w| LieElement::basis(BasisSymbol::Root(w))))?;
    let z = if rs.is_affine() {
        let conv = match convention {
            Convention::Descended => SignConvention::Descended,
            Convention::Orientation => SignConvention::Orientation,
        };
        AffineAlgebra::new(&rs, &c, conv, cutoff)?.bracket(&x, &y)?
    } else {
        CocycleAlgebra::full(&rs, &c)?.bracket(&x, &y)?
    };
    let g = rs.graph();
    Ok(Output {
        json: json!({
            "type": g.name(),
            "orientation": o.encode(),
            "x": x.render(g),
            "y": y.render(g),
            "bracket": z.render(g),
        }),
        text: vec![format!("[{}, {}] = {}", x.render(g), y.render(g), z.render(g))],
        passed: true,
    })
}

fn hall_json(e: &HallElement) -> Value {
    Value::Object(
        e.terms()
            .iter()
            .map(|(l, c)| (l.key(), json!(c)))
            .collect(),
    )
}

fn hall_bracket(rs: &RootSystem, engine: &HallEngine, alpha: &str, beta: &str) -> Result<Output> {
    let a = rs.parse_root(alpha)?;
    let b = rs.parse_root(beta)?;
    let check = engine.verify_bracket_e(&a, &b)?;
    let eps = Cocycle::new(engine.orientation()).epsilon(&a, &b).value();
    Ok(Output {
        json: json!({
            "type": rs.graph().name(),
            "orientation": engine.orientation().encode(),
            "alpha": a.encode(),
            "beta": b.encode(),
            "epsilon": eps,
            "commutator": hall_json(&check.lhs),
            "expected": hall_json(&check.rhs),
            "passed": check.passed,
        }),
        text: vec![
            format!("[E_{a}, E_{b}] = {}", check.lhs),
            format!("ε·E_(α+β)  = {}", check.rhs),
            format!("identity {}", if check.passed { "holds" } else { "FAILS" }),
        ],
        passed: check.passed,
    })
}

fn hall_polynomial(
    rs: &RootSystem,
    engine: &HallEngine,
    m: &str,
    n: &str,
    p: &str,
    q: Option<u32>,
) -> Result<Output> {
    let parse = |s: &str| {
        let y = RootPartition::parse_key(s, rs.rank())?;
        y.validate(rs, y.total().as_weight())
            .map_err(|e| Error::input(e.to_string().replacen("validation failure: ", "", 1)))?;
        Ok::<_, Error>(y)
    };
    let (m, n, p) = (parse(m)?, parse(n)?, parse(p)?);
    let poly = engine.hall_polynomial(&m, &n, &p)?;
    let mut json = json!({
        "type": rs.graph().name(),
        "orientation": engine.orientation().encode(),
        "m": m.key(),
        "n": n.key(),
        "p": p.key(),
        "coeffs": poly.coeffs,
        "at_one": poly.eval(1).to_string(),
    });
    let mut text = vec![
        format!("h^{m}_({n}),({p})(q) coefficients {:?}", poly.coeffs),
        format!("value at q = 1: {}", poly.eval(1)),
    ];
    if let Some(q) = q {
        let counted = engine.hall_number(&m, &n, &p, q)?;
        let predicted = poly.eval(i64::from(q));
        json["q"] = json!(q);
        json["counted"] = json!(counted);
        json["predicted"] = json!(predicted.to_string());
        text.push(format!("q = {q}: counted {counted}, polynomial {predicted}"));
        if i128::from(counted) != predicted {
            return Err(Error::validation(format!(
                "Hall number {counted} at q = {q} disagrees with the polynomial value {predicted}"
            )));
        }
    }
    Ok(Output {
        json,
        text,
        passed: true,
    })
}

fn stability(ty: &str, root: &str, orientation: Option<&str>, q: u32) -> Result<Output> {
    let rs = RootSystem::from_label(ty)?;
    let alpha = rs.parse_root(root)?;
    let o = orientation_arg(&rs, orientation)?;
    let report = stability_lemma_harness(&rs, &alpha, &o, q, &StabilityConfig::default())?;
    Ok(Output {
        json: json!({
            "type": report.graph,
            "root": report.root,
            "orientation": report.orientation,
            "q": report.q,
            "lines": report.lines.iter().map(|l| l.render()).collect::<Vec<_>>(),
            "passed": report.passed(),
        }),
        text: report
            .lines
            .iter()
            .map(|l| format!("{}{}", l.render(), if l.consistent { "" } else { "  <- contradicts the lemma" }))
            .collect(),
        passed: report.passed(),
    })
}

fn table_json(t: &CoefficientTable) -> Value {
    json!({
        "type": t.graph,
        "root": t.root.encode(),
        "normalization": match t.normalization {
            Normalization::Reference => "reference",
            Normalization::None => "none",
        },
        "indexing": t.indexing.encode(),
        "global_sign_disclaimer": t.global_sign_disclaimer(),
        "complete": t.is_complete(),
        "entries": t.entries.iter().map(|(k, e)| json!({
            "partition": k.key(),
            "value": e.value,
            "provenance": e.provenance.as_str(),
        })).collect::<Vec<_>>(),
    })
}

fn table_text(t: &CoefficientTable) -> Vec<String> {
    let mut out = vec![format!(
        "E*_{} in {} (entries up to one global sign, indexing {})",
        t.root, t.graph, t.indexing
    )];
    for (k, e) in &t.entries {
        let v = e.value.map_or("?".to_string(), |v| format!("{v:+}"));
        out.push(format!("{v:>3}  {k}  [{}]", e.provenance));
    }
    out
}

fn coeffs(ty: &str, root: &str, normalize: Normalize) -> Result<Output> {
    let rs = RootSystem::from_label(ty)?;
    let alpha: DimVector = rs.parse_root(root)?;
    let norm = match normalize {
        Normalize::Reference => Normalization::Reference,
        Normalize::None => Normalization::None,
    };
    let t = decompose_e_star(&rs, &alpha, norm)?;
    Ok(Output {
        json: table_json(&t),
        text: table_text(&t),
        passed: true,
    })
}

fn report_json(name: &str, r: &TableReport) -> Value {
    json!({
        "name": name,
        "type": r.graph,
        "root": r.root,
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

fn validate(cli: &Cli, tables: &[String], files: &[PathBuf], cache: bool) -> Result<Output> {
    if tables.is_empty() && files.is_empty() && !cache {
        return Err(Error::input("nothing to validate: pass --tables, --table-file or --cache"));
    }
    let mut items = Vec::new();
    let mut text = Vec::new();
    let mut passed = true;
    let mut add = |name: String, r: TableReport, items: &mut Vec<Value>, text: &mut Vec<String>| {
        passed &= r.passed();
        text.push(format!("{name}: {}", if r.passed() { "pass" } else { "FAIL" }));
        for c in &r.checks {
            text.push(format!("  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
        }
        items.push(report_json(&name, &r));
    };
    for name in tables {
        let t = load_reference_table(name, Normalization::None)?;
        add(name.to_ascii_lowercase(), validate_table(&t)?, &mut items, &mut text);
    }
    for path in files {
        let body = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        let t = table_from_text(&body, Normalization::None)?;
        add(path.display().to_string(), validate_table(&t)?, &mut items, &mut text);
    }
    let mut cache_json = Value::Null;
    if cache {
        let dir = cache_dir(cli).ok_or_else(|| Error::input("no cache directory configured"))?;
        let report = validate_cache_file(&dir.join(CACHE_FILE))?;
        passed &= report.passed();
        text.push(format!(
            "{}: {} records, {} corrupt",
            report.path.display(),
            report.records,
            report.corrupt.len()
        ));
        for c in &report.corrupt {
            text.push(format!("  line {}: {}", c.line, c.reason));
        }
        cache_json = json!({
            "path": report.path.display().to_string(),
            "records": report.records,
            "corrupt": report.corrupt.iter().map(|c| json!({"line": c.line, "reason": c.reason})).collect::<Vec<_>>(),
            "passed": report.passed(),
        });
    }
    Ok(Output {
        json: json!({ "passed": passed, "tables": items, "cache": cache_json }),
        text,
        passed,
    })
}

fn bps_audit(ty: &str, cutoff: u32) -> Result<Output> {
    let rs = RootSystem::from_label(ty)?;
    let audit = multiplicity_audit(&rs, cutoff)?;
    let conj = conjecture_algebra_checks(&rs, cutoff)?;
    let passed = audit.passed() && conj.passed();
    let mut text = vec!["grading;expected;found;status".to_string()];
    text.extend(audit.render());
    for c in &conj.checks {
        let status = match c.passed {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "n/a",
        };
        text.push(format!("[{status}] {}: {}", c.name, c.detail));
    }
    Ok(Output {
        json: json!({
            "type": rs.graph().name(),
            "cutoff": cutoff,
            "lines": audit.render(),
            "checks": conj.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "passed": passed,
        }),
        text,
        passed,
    })
}

fn selfcheck(cli: &Cli, only: &[u32]) -> Result<Output> {
    let ids: Vec<u32> = if only.is_empty() { (1..=12).collect() } else { only.to_vec() };
    let config = SelfcheckConfig {
        cache_dir: cache_dir(cli),
    };
    let mut results = Vec::new();
    for id in ids {
        results.push(selfcheck::run(id, &config).ok_or_else(|| Error::input(format!("no criterion {id}")))?);
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(Output {
        json: json!({
            "passed": passed,
            "criteria": results.iter().map(|r| json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "budget_ms": r.budget_ms as u64,
            })).collect::<Vec<_>>(),
        }),
        text: results.iter().map(|r| r.render()).collect(),
        passed,
    })
}
