use std::path::Path;

use serde_json::{json, Value};
use tamesym::algebra::build_algebra;
use tamesym::catalog::{make_entry_with, tame_block_entries, BlockSpec, CatalogEntry, FamilyId, RepType, Validation};
use tamesym::classifier::{
    algebra_fingerprint, block_table, check_value, compare_fingerprints, find_open_case, fingerprints, section7_suite, MoritaFingerprint,
    Verdict, CHECK_ORDER,
};
use tamesym::field::parse_modulus;
use tamesym::presentation::parse_presentation;
use tamesym::selftest::{run_criterion, Fault, Options, CRITERIA};
use tamesym::{Error, Field};

use crate::render::{render, Format, Report, Table};
use crate::{Common, FieldArgs};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::Syntax { .. }
            | Error::Path { .. }
            | Error::Name { .. }
            | Error::Quiver(_)
            | Error::InvalidPrime(_)
            | Error::InvalidField(_)
            | Error::FieldMismatch
            | Error::CharMismatch(..)
            | Error::ParameterConstraint(_)
            | Error::CharConstraint(_)
            | Error::UnknownFamily(_)
            | Error::DefectOutOfRange { .. } => 2,
            _ => 4,
        };
        CliError { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: 2, message: message.into() }
}

type Outcome = Result<(String, u8), CliError>;

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).find(|d| d * d > n || n.is_multiple_of(*d)).map_or(n, |d| if n.is_multiple_of(d) { d } else { n })
}

pub fn resolve_field(args: &FieldArgs) -> Result<Option<Field>, CliError> {
    let p = match (args.characteristic, args.field_order) {
        (None, None) => {
            if args.modulus.is_some() {
                return Err(usage("--modulus needs --field-order"));
            }
            return Ok(None);
        }
        (Some(p), _) => p,
        (None, Some(q)) if q >= 2 => smallest_prime_factor(q) as u32,
        (None, Some(q)) => return Err(usage(format!("invalid field order {q}"))),
    };
    if p == 0 {
        if args.field_order.is_some() || args.modulus.is_some() {
            return Err(usage("--field-order and --modulus need a positive characteristic"));
        }
        return Ok(Some(Field::rationals()));
    }
    let field = match args.field_order {
        None if args.modulus.is_some() => return Err(usage("--modulus needs --field-order")),
        None => Field::prime(p)?,
        Some(q) => {
            let modulus = args.modulus.as_deref().map(|m| parse_modulus(m, p)).transpose()?;
            Field::of_order(p, q, modulus)?
        }
    };
    Ok(Some(field))
}

fn require_field(args: &FieldArgs) -> Result<Field, CliError> {
    resolve_field(args)?.ok_or_else(|| usage("a field is required: pass --char (and --field-order for extensions)"))
}

fn validation(common: &Common) -> Validation {
    if common.relaxed {
        Validation::Relaxed
    } else {
        Validation::Strict
    }
}

fn entry(family: FamilyId, field: &Field, common: &Common) -> Result<CatalogEntry, CliError> {
    match make_entry_with(family.clone(), field, validation(common)) {
        Err(e @ Error::ParameterConstraint(_)) if !common.relaxed => {
            let mut err = CliError::from(e);
            if make_entry_with(family, field, Validation::Relaxed).is_ok() {
                err.message.push_str(" (accepted with --relaxed)");
            }
            Err(err)
        }
        other => Ok(other?),
    }
}

fn parse_spec(spec: &str) -> Result<FamilyId, CliError> {
    let (code, params) = spec.split_once(':').unwrap_or((spec, ""));
    Ok(FamilyId::parse(code, params)?)
}

fn file_fingerprint(path: &Path, field: Option<&Field>) -> Result<MoritaFingerprint, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let presentation = parse_presentation(&text, field)?;
    if let Some(f) = field {
        if presentation.field != *f {
            return Err(usage(format!(
                "{} declares {} but the command line asks for {f}",
                path.display(),
                presentation.field
            )));
        }
    }
    let a = build_algebra(&presentation)?;
    let mut fp = algebra_fingerprint(&a)?;
    fp.family = format!("@{}", path.display());
    fp.label = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    Ok(fp)
}

fn cartan_text<T: std::fmt::Display>(c: &[Vec<T>]) -> String {
    let rows: Vec<String> = c
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    if rows.len() == 1 {
        rows[0].clone()
    } else {
        format!("[{}]", rows.join(","))
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report data serializes")
}

fn fingerprint_table(fp: &MoritaFingerprint) -> Table {
    let mut t = Table::new(Some(format!("{} over {}", fp.label, fp.field)), &["invariant", "value"]);
    let mut row = |k: &str, v: String| t.push(vec![k.to_string(), v]);
    row("family", fp.family.clone());
    row("simple modules", fp.n_simples.to_string());
    row("dim A", fp.dim_a.to_string());
    row("dim Z", fp.dim_z.to_string());
    row("dim R", fp.dim_r.to_string());
    row("dim Zpr", fp.dim_zpr.to_string());
    row("dim Zst", fp.dim_zst.to_string());
    row("Cartan matrix", cartan_text(&fp.cartan));
    row(
        "elementary divisors",
        fp.cartan_divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
    );
    for name in CHECK_ORDER {
        row(name, check_value(fp, name));
    }
    t
}

pub fn invariants(family: Option<&str>, params: &str, file: Option<&Path>, args: &FieldArgs, common: &Common) -> Outcome {
    let fp = match (family, file) {
        (_, Some(path)) => file_fingerprint(path, resolve_field(args)?.as_ref())?,
        (Some(code), None) => {
            let f = require_field(args)?;
            let e = entry(FamilyId::parse(code, params)?, &f, common)?;
            tamesym::classifier::morita_fingerprint(&e)?
        }
        (None, None) => return Err(usage("pass --family or --presentation-file")),
    };
    let report = Report {
        command: "invariants",
        data: json!({ "fingerprint": to_value(&fp) }),
        tables: vec![fingerprint_table(&fp)],
        summary: Vec::new(),
    };
    Ok((render(&report, common.format), 0))
}

fn local_dihedral_families(f: &Field) -> Vec<FamilyId> {
    let mut v: Vec<FamilyId> = [(3, 2), (4, 2), (3, 3)].iter().map(|&(m, n)| FamilyId::A1 { m, n }).collect();
    v.push(FamilyId::C1);
    v.extend((2..=3).map(|k| FamilyId::D1A1 { k }));
    if f.characteristic() == 2 {
        v.push(FamilyId::B1);
        for k in 2..=3 {
            v.extend((0..2).map(|d| FamilyId::D1A2 { k, d }));
        }
    }
    v
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<u32>, CliError> {
    let bad = || usage(format!("bad defect range `{text}` (expected `n` or `a..b`)"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let n = num(text)?;
            Ok(n..=n)
        }
    }
}

fn rep_type(name: &str) -> Result<RepType, CliError> {
    Ok(RepType::parse(name)?)
}

fn verdict_table(title: &str, pairs: &[(String, String, &Verdict)]) -> Table {
    let mut t = Table::new(Some(title.to_string()), &["left", "right", "verdict"]);
    for (l, r, v) in pairs {
        t.push(vec![l.clone(), r.clone(), v.describe()]);
    }
    t
}

pub fn table(section: &str, defect: Option<&str>, args: &FieldArgs, common: &Common) -> Outcome {
    if section == "dihedral-1" {
        if defect.is_some() {
            return Err(usage("--defect applies to the block tables only"));
        }
        let f = require_field(args)?;
        let entries = local_dihedral_families(&f)
            .into_iter()
            .map(|fam| entry(fam, &f, common))
            .collect::<Result<Vec<_>, _>>()?;
        let fps = fingerprints(&entries).into_iter().collect::<Result<Vec<_>, _>>()?;
        let mut t = Table::new(None, &["algebra", "dim Z", "dim Zpr", "dim Zst", "Cartan", "G0st"]);
        for fp in &fps {
            t.push(vec![
                fp.label.clone(),
                fp.dim_z.to_string(),
                fp.dim_zpr.to_string(),
                fp.dim_zst.to_string(),
                cartan_text(&fp.cartan),
                fp.stable_grothendieck.describe(),
            ]);
        }
        let keys = ["family", "label", "dim_z", "dim_zpr", "dim_zst", "cartan", "stable_grothendieck"];
        let rows: Vec<Value> = fps
            .iter()
            .map(|fp| {
                let full = to_value(fp);
                Value::Object(keys.iter().map(|k| (k.to_string(), full[*k].clone())).collect())
            })
            .collect();
        let report = Report {
            command: "table",
            data: json!({ "section": section, "field": f.to_string(), "rows": rows }),
            tables: vec![t],
            summary: Vec::new(),
        };
        return Ok((render(&report, common.format), 0));
    }
    let rt = rep_type(section.trim_start_matches("blocks-"))?;
    if let Some(f) = resolve_field(args)? {
        if f != Field::prime(2)? {
            return Err(usage(format!("block tables are computed over F_2, not {f}")));
        }
    }
    let range = match defect {
        Some(d) => parse_range(d)?,
        None => rt.min_defect().max(3)..=5,
    };
    let bt = block_table(rt, range)?;
    let mut t = Table::new(
        Some(format!("{rt} blocks over F_2")),
        &["n", "simples", "algebra", "dim A", "dim Z", "dim Zst", "expected dim Zst", "|det C|", "G0st"],
    );
    for r in &bt.rows {
        t.push(vec![
            r.defect.to_string(),
            r.n_simples.to_string(),
            r.label.clone(),
            r.dim_a.to_string(),
            r.dim_z.to_string(),
            r.dim_zst.to_string(),
            r.expected_dim_zst.map_or("-".into(), |d| d.to_string()),
            r.cartan_det_abs.to_string(),
            r.stable_grothendieck.clone(),
        ]);
    }
    let pairs: Vec<(String, String, &Verdict)> = bt.pairs.iter().map(|p| (p.left.clone(), p.right.clone(), &p.verdict)).collect();
    let report = Report {
        command: "table",
        data: json!({ "section": section, "field": "F_2", "rows": to_value(&bt.rows), "pairs": to_value(&bt.pairs) }),
        tables: vec![t, verdict_table("pairwise verdicts", &pairs)],
        summary: Vec::new(),
    };
    Ok((render(&report, common.format), 0))
}

fn exit_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Distinguished { .. } | Verdict::Identical => 0,
        Verdict::NotDistinguished { known_open: true, .. } => 3,
        Verdict::NotDistinguished { known_open: false, .. } => 4,
    }
}

fn file_spec(s: &str) -> Option<&Path> {
    s.strip_prefix('@').map(Path::new)
}

pub fn compare(left: &str, right: &str, args: &FieldArgs, common: &Common) -> Outcome {
    let mut field = resolve_field(args)?;
    // presentation files fix the field when the command line does not
    let mut file_fps: Vec<Option<MoritaFingerprint>> = Vec::new();
    for spec in [left, right] {
        file_fps.push(match file_spec(spec) {
            Some(path) => {
                let fp = file_fingerprint(path, field.as_ref())?;
                if field.is_none() {
                    field = Some(tamesym_field_of(path)?);
                }
                Some(fp)
            }
            None => None,
        });
    }
    let f = field.ok_or_else(|| usage("a field is required: pass --char (and --field-order for extensions)"))?;
    let mut families = Vec::new();
    let mut entries = Vec::new();
    for (spec, fp) in [left, right].iter().zip(&file_fps) {
        if fp.is_none() {
            let fam = parse_spec(spec)?;
            entries.push(entry(fam.clone(), &f, common)?);
            families.push(Some(fam));
        } else {
            families.push(None);
        }
    }
    let mut computed = fingerprints(&entries).into_iter();
    let mut fps = Vec::new();
    for fp in file_fps {
        fps.push(match fp {
            Some(fp) => fp,
            None => computed.next().expect("one fingerprint per entry")?,
        });
    }
    if fps[0].field != fps[1].field {
        return Err(CliError::from(Error::FieldMismatch));
    }
    let verdict = match (&families[0], &families[1]) {
        (Some(a), Some(b)) if a == b => Verdict::Identical,
        (Some(a), Some(b)) => compare_fingerprints(&fps[0], &fps[1], find_open_case(a, b, f.characteristic())),
        _ => compare_fingerprints(&fps[0], &fps[1], None),
    };
    let mut t = Table::new(
        Some(format!("{} vs {} over {f}", fps[0].label, fps[1].label)),
        &["check", "left", "right", "differs"],
    );
    for name in CHECK_ORDER {
        let (l, r) = (check_value(&fps[0], name), check_value(&fps[1], name));
        let differs = if l != r { "yes" } else { "no" };
        t.push(vec![name.to_string(), l, r, differs.to_string()]);
    }
    let report = Report {
        command: "compare",
        data: json!({ "left": to_value(&fps[0]), "right": to_value(&fps[1]), "verdict": to_value(&verdict) }),
        tables: vec![t],
        summary: vec![format!("verdict: {}", verdict.describe())],
    };
    Ok((render(&report, common.format), exit_code(&verdict)))
}

fn tamesym_field_of(path: &Path) -> Result<Field, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_presentation(&text, None)?.field)
}

pub fn blocks(rep: &str, defect: u32, common: &Common) -> Outcome {
    let rt = rep_type(rep)?;
    let mut listing = Vec::new();
    let mut t = Table::new(Some(format!("{rt} blocks of defect {defect}")), &["simples", "algebra", "family"]);
    for s in 1..=3 {
        for e in tame_block_entries(BlockSpec { rep_type: rt, defect, n_simples: s })? {
            t.push(vec![s.to_string(), e.label(), e.family.to_string()]);
            listing.push(json!({ "n_simples": s, "algebra": e.label(), "family": e.family.to_string(), "presentation": e.text }));
        }
    }
    let bt = block_table(rt, defect..=defect)?;
    let pairs: Vec<(String, String, &Verdict)> = bt.pairs.iter().map(|p| (p.left.clone(), p.right.clone(), &p.verdict)).collect();
    let report = Report {
        command: "blocks",
        data: json!({ "rep_type": rt, "defect": defect, "entries": listing, "rows": to_value(&bt.rows), "pairs": to_value(&bt.pairs) }),
        tables: vec![t, verdict_table("pairwise verdicts", &pairs)],
        summary: Vec::new(),
    };
    Ok((render(&report, common.format), 0))
}

pub fn section7(rep: &str, bound: u32, args: &FieldArgs, common: &Common) -> Outcome {
    let rt = rep_type(rep)?;
    let f = require_field(args)?;
    let r = section7_suite(rt, &f, bound)?;
    let mut t = Table::new(None, &["rep type", "field", "entries", "pairs checked", "failures"]);
    t.push(vec![
        rt.to_string(),
        r.field.clone(),
        r.entries.to_string(),
        r.pairs_checked.to_string(),
        r.failures.len().to_string(),
    ]);
    let pairs: Vec<(String, String, &Verdict)> = r.failures.iter().map(|p| (p.left.clone(), p.right.clone(), &p.verdict)).collect();
    let mut tables = vec![t];
    if !pairs.is_empty() {
        tables.push(verdict_table("pairs not distinguished", &pairs));
    }
    let report = Report {
        command: "section7",
        data: to_value(&r),
        tables,
        summary: Vec::new(),
    };
    Ok((render(&report, common.format), if r.failures.is_empty() { 0 } else { 1 }))
}

pub fn selftest(quick: bool, criteria: &[u32], fault: bool, format: Format) -> Outcome {
    let opts = Options {
        quick,
        fault: fault.then_some(Fault::WrongCartan),
    };
    for id in criteria {
        if !CRITERIA.iter().any(|(c, _)| c == id) {
            return Err(usage(format!("no criterion {id}")));
        }
    }
    let results: Vec<_> = CRITERIA
        .iter()
        .filter(|(id, _)| criteria.is_empty() || criteria.contains(id))
        .map(|(id, _)| run_criterion(*id, opts))
        .collect();
    let mut t = Table::new(None, &["criterion", "name", "result", "checks", "ms"]);
    let mut summary = Vec::new();
    for r in &results {
        t.push(vec![
            r.id.to_string(),
            r.name.to_string(),
            if r.passed { "pass" } else { "FAIL" }.to_string(),
            r.checks.to_string(),
            r.millis.to_string(),
        ]);
        summary.extend(r.failures.iter().map(|f| format!("criterion {}: {f}", r.id)));
    }
    let report = Report {
        command: "selftest",
        data: json!({ "quick": quick, "results": to_value(&results) }),
        tables: vec![t],
        summary,
    };
    let code = if results.iter().all(|r| r.passed) { 0 } else { 1 };
    Ok((render(&report, format), code))
}

pub fn parse_check(path: &Path, build: bool, args: &FieldArgs, format: Format) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let p = parse_presentation(&text, resolve_field(args)?.as_ref())?;
    let q = &p.quiver;
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({ "name": a.name, "source": a.source, "target": a.target }))
        .collect();
    let relations = p.format_relations();
    let mut t = Table::new(None, &["item", "value"]);
    t.push(vec!["field".into(), p.field.to_string()]);
    t.push(vec!["vertices".into(), q.vertex_count().to_string()]);
    for a in q.arrows() {
        t.push(vec!["arrow".into(), format!("{}: {} -> {}", a.name, a.source, a.target)]);
    }
    for r in &relations {
        t.push(vec!["relation".into(), r.clone()]);
    }
    let mut data = json!({
        "field": p.field.to_string(),
        "vertices": q.vertex_count(),
        "arrows": arrows,
        "relations": relations,
    });
    if build {
        let a = build_algebra(&p)?;
        t.push(vec!["dimension".into(), a.dim().to_string()]);
        t.push(vec!["Loewy length".into(), a.loewy_length().to_string()]);
        data["dimension"] = json!(a.dim());
        data["loewy_length"] = json!(a.loewy_length());
        data["radical_dims"] = json!(a.radical_power_dims());
    }
    let report = Report {
        command: "parse-check",
        data,
        tables: vec![t],
        summary: Vec::new(),
    };
    Ok((render(&report, format), 0))
}
