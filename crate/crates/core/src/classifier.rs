//! Invariants of stable equivalence of Morita type assembled per catalog
//! entry, pairwise comparison, and the suites built on top of it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::catalog::{make_entry_with, tame_block_entries, BlockSpec, CatalogEntry, FamilyId, RepType, Validation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::integer::smith_normal_form;
use crate::invariants::{compute_invariants, Fingerprint, StableGrothendieck};
use crate::kuelshammer::KuelshammerContext;

/// Levels `n` of the quotients `Z / T_n^⊥` recorded in a fingerprint.
pub const KUELSHAMMER_LEVELS: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaFingerprint {
    pub family: String,
    pub label: String,
    pub field: String,
    /// Unknown for algebras read from a presentation file.
    pub rep_type: Option<RepType>,
    pub n_simples: usize,
    pub special_biserial: Option<bool>,
    pub dim_a: usize,
    pub dim_z: usize,
    pub dim_r: usize,
    pub dim_zpr: usize,
    pub dim_zst: usize,
    #[serde(with = "crate::integer::decimal::rows")]
    pub cartan: Vec<Vec<BigInt>>,
    #[serde(with = "crate::integer::decimal::vec")]
    pub cartan_divisors: Vec<BigInt>,
    #[serde(with = "crate::integer::decimal")]
    pub cartan_det_abs: BigInt,
    pub stable_grothendieck: StableGrothendieck,
    pub fp_z: Fingerprint,
    pub fp_z_mod_r: Fingerprint,
    pub fp_zst: Fingerprint,
    pub loewy_zst: usize,
    pub kuelshammer_fps: Vec<Fingerprint>,
}

pub fn morita_fingerprint(e: &CatalogEntry) -> Result<MoritaFingerprint> {
    let a = e.build()?;
    let mut fp = algebra_fingerprint(&a)?;
    fp.family = e.family.to_string();
    fp.label = e.label();
    fp.rep_type = Some(e.metadata.rep_type);
    fp.n_simples = e.metadata.n_simples;
    fp.special_biserial = Some(e.metadata.special_biserial);
    Ok(fp)
}

/// Fingerprint of an algebra outside the catalog. Family, label and the
/// catalog-only fields are left blank.
pub fn algebra_fingerprint(a: &Algebra) -> Result<MoritaFingerprint> {
    let inv = compute_invariants(a)?;
    let snf = smith_normal_form(&inv.cartan);
    let det = inv.cartan.determinant()?.abs();
    let mut kuelshammer_fps = Vec::new();
    if !a.field().is_rational() {
        let ctx = KuelshammerContext::new(a, &inv.centre, &inv.centre_space, &inv.form);
        for n in 1..=KUELSHAMMER_LEVELS {
            kuelshammer_fps.push(ctx.level(n)?.quotient_fp);
        }
    }
    Ok(MoritaFingerprint {
        family: String::new(),
        label: String::new(),
        field: a.field().to_string(),
        rep_type: None,
        n_simples: inv.cartan.to_rows().len(),
        special_biserial: None,
        dim_a: a.dim(),
        dim_z: inv.centre.dim(),
        dim_r: inv.reynolds.dim(),
        dim_zpr: inv.higman.dim(),
        dim_zst: inv.centre.dim() - inv.higman.dim(),
        cartan: inv.cartan.to_rows(),
        cartan_divisors: snf.divisors,
        cartan_det_abs: det,
        stable_grothendieck: inv.stable_grothendieck.clone(),
        fp_z: inv.centre.fingerprint(),
        fp_z_mod_r: inv.z_mod_r.fingerprint(),
        fp_zst: inv.z_stable.fingerprint(),
        loewy_zst: inv.z_stable.loewy_length(),
        kuelshammer_fps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Verdict {
    /// `invariant` is the first differing check in [`CHECK_ORDER`]; `also`
    /// lists the later checks that differ as well.
    Distinguished {
        invariant: String,
        left: String,
        right: String,
        also: Vec<String>,
    },
    NotDistinguished { known_open: bool, note: String },
    Identical,
}

impl Verdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Verdict::Distinguished { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            Verdict::Distinguished { invariant, left, right, .. } => {
                format!("distinguished by {invariant}: {left} vs {right}")
            }
            Verdict::NotDistinguished { known_open: true, note } => format!("not distinguished (known open: {note})"),
            Verdict::NotDistinguished { known_open: false, note } => format!("not distinguished (unexpected: {note})"),
            Verdict::Identical => "identical".into(),
        }
    }
}

/// The checks of [`compare`], in order.
pub const CHECK_ORDER: &[&str] = &[
    "rep_type",
    "special_biserial",
    "stable_grothendieck",
    "cartan_det_abs",
    "dim_zst",
    "fp_z_mod_r",
    "fp_zst",
    "loewy_zst",
    "kuelshammer_1",
    "kuelshammer_2",
    "kuelshammer_3",
];

fn fp_text(f: &Fingerprint) -> String {
    format!(
        "dim {} loewy {:?} socle {:?} gens {} frob_ker {:?} frob_im {:?}",
        f.dim, f.loewy_dims, f.socle_series_dims, f.min_generators, f.frobenius_kernel_dims, f.frobenius_image_dims
    )
}

/// Value of a named check, as displayed in verdicts.
pub fn check_value(fp: &MoritaFingerprint, name: &str) -> String {
    match name {
        "rep_type" => fp.rep_type.map_or("unknown".into(), |r| r.to_string()),
        "special_biserial" => fp.special_biserial.map_or("unknown".into(), |b| b.to_string()),
        "stable_grothendieck" => fp.stable_grothendieck.describe(),
        "cartan_det_abs" => fp.cartan_det_abs.to_string(),
        "dim_zst" => fp.dim_zst.to_string(),
        "fp_z_mod_r" => fp_text(&fp.fp_z_mod_r),
        "fp_zst" => fp_text(&fp.fp_zst),
        "loewy_zst" => fp.loewy_zst.to_string(),
        _ => match name.strip_prefix("kuelshammer_").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => fp.kuelshammer_fps.get(n - 1).map(fp_text).unwrap_or_else(|| "-".into()),
            None => panic!("unknown check {name}"),
        },
    }
}

fn differs(a: &MoritaFingerprint, b: &MoritaFingerprint, name: &str) -> bool {
    match name {
        // catalog-only checks do not apply when either side is unknown
        "rep_type" => a.rep_type.zip(b.rep_type).is_some_and(|(x, y)| x != y),
        "special_biserial" => a.special_biserial.zip(b.special_biserial).is_some_and(|(x, y)| x != y),
        "stable_grothendieck" => a.stable_grothendieck != b.stable_grothendieck,
        "cartan_det_abs" => a.cartan_det_abs != b.cartan_det_abs,
        "dim_zst" => a.dim_zst != b.dim_zst,
        "fp_z_mod_r" => a.fp_z_mod_r != b.fp_z_mod_r,
        "fp_zst" => a.fp_zst != b.fp_zst,
        "loewy_zst" => a.loewy_zst != b.loewy_zst,
        _ => {
            let n: usize = name["kuelshammer_".len()..].parse().expect("level");
            a.kuelshammer_fps.get(n - 1) != b.kuelshammer_fps.get(n - 1)
        }
    }
}

/// Compares two fingerprints computed over the same field.
pub fn compare_fingerprints(
    a: &MoritaFingerprint,
    b: &MoritaFingerprint,
    open: Option<&OpenCase>,
) -> Verdict {
    let differing: Vec<&str> = CHECK_ORDER.iter().copied().filter(|c| differs(a, b, c)).collect();
    if let Some((first, rest)) = differing.split_first() {
        return Verdict::Distinguished {
            invariant: first.to_string(),
            left: check_value(a, first),
            right: check_value(b, first),
            also: rest.iter().map(|s| s.to_string()).collect(),
        };
    }
    match open {
        Some(case) if case.is_open() => Verdict::NotDistinguished {
            known_open: true,
            note: format!("{}: {}", case.category, case.quote),
        },
        Some(case) => Verdict::NotDistinguished {
            known_open: false,
            note: format!("all invariants agree, but the pair is known to be separated: {}", case.quote),
        },
        None => Verdict::NotDistinguished {
            known_open: false,
            note: "all invariants agree and the pair is not a recorded open case".into(),
        },
    }
}

/// Rebuilds `e` over `field` when that is meaningful (same characteristic,
/// no scalar parameters that name the field generator).
fn over_field(e: &CatalogEntry, field: &Field) -> Result<CatalogEntry> {
    if e.field == *field {
        return Ok(e.clone());
    }
    if e.field.characteristic() != field.characteristic() {
        return Err(Error::CharMismatch(e.field.to_string(), field.to_string()));
    }
    if e.family.params().iter().any(|(_, v)| v.contains('g')) {
        return Err(Error::FieldMismatch);
    }
    make_entry_with(e.family.clone(), field, Validation::Relaxed)
}

/// Larger of two fields of the same characteristic, when one contains the
/// other.
pub fn common_field(a: &Field, b: &Field) -> Result<Field> {
    if a.characteristic() != b.characteristic() {
        return Err(Error::CharMismatch(a.to_string(), b.to_string()));
    }
    if a == b {
        return Ok(a.clone());
    }
    let (small, large) = if a.degree() <= b.degree() { (a, b) } else { (b, a) };
    if large.degree() % small.degree() != 0 || small.degree() != 1 {
        return Err(Error::FieldMismatch);
    }
    Ok(large.clone())
}

/// Compares two entries. Entries over different fields of one characteristic
/// are moved to the larger field first.
pub fn compare(e1: &CatalogEntry, e2: &CatalogEntry) -> Result<Verdict> {
    let field = common_field(&e1.field, &e2.field)?;
    let (e1, e2) = (over_field(e1, &field)?, over_field(e2, &field)?);
    if e1.family == e2.family {
        return Ok(Verdict::Identical);
    }
    let (a, b) = rayon::join(|| morita_fingerprint(&e1), || morita_fingerprint(&e2));
    let (a, b) = (a?, b?);
    let open = find_open_case(&e1.family, &e2.family, field.characteristic());
    Ok(compare_fingerprints(&a, &b, open))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct OpenCase {
    pub category: String,
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub same: Vec<String>,
    pub char: Option<u32>,
    pub char_not: Option<u32>,
    pub when: Option<String>,
    pub quote: String,
}

impl OpenCase {
    /// Whether the entry leaves the pair undecided (as opposed to recording
    /// a separation).
    pub fn is_open(&self) -> bool {
        self.category != "separated"
    }
}

#[derive(Deserialize)]
struct OpenCaseFile {
    version: u32,
    case: Vec<OpenCase>,
}

const OPEN_CASES: &str = include_str!("open_cases.toml");

pub fn open_cases() -> &'static [OpenCase] {
    static CASES: OnceLock<Vec<OpenCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        let file: OpenCaseFile = toml::from_str(OPEN_CASES).expect("open case table parses");
        assert_eq!(file.version, 1, "open case table version");
        for c in &file.case {
            assert!(
                ["separated", "open", "unclaimed"].contains(&c.category.as_str()),
                "unknown category {}",
                c.category
            );
        }
        file.case
    })
}

fn param(f: &FamilyId, name: &str) -> Option<String> {
    f.params().into_iter().find(|(n, _)| *n == name).map(|(_, v)| v)
}

/// `if k = 2 then t >= 3 is odd, and if t = 2 then k >= 3 is odd`.
pub fn hz1(k: u32, t: u32) -> bool {
    (k != 2 || (t >= 3 && t % 2 == 1)) && (t != 2 || (k >= 3 && k % 2 == 1))
}

/// `k and t both odd`.
pub fn hz2(k: u32, t: u32) -> bool {
    k % 2 == 1 && t % 2 == 1
}

fn hypothesis_holds(name: &str, f: &FamilyId) -> bool {
    let kt = match f {
        FamilyId::SD2B1 { k, t, .. } | FamilyId::SD2B2 { k, t, .. } => (*k, *t),
        _ => return false,
    };
    match name {
        "hz1" => hz1(kt.0, kt.1),
        "hz2" => hz2(kt.0, kt.1),
        _ => false,
    }
}

/// The first entry of the open-case table matching the pair, if any.
pub fn find_open_case(a: &FamilyId, b: &FamilyId, characteristic: u32) -> Option<&'static OpenCase> {
    open_cases().iter().find(|c| {
        let codes = (a.code(), b.code());
        if codes != (c.left.as_str(), c.right.as_str()) && codes != (c.right.as_str(), c.left.as_str()) {
            return false;
        }
        if c.char.is_some_and(|p| p != characteristic) || c.char_not.is_some_and(|p| p == characteristic) {
            return false;
        }
        if !c.same.iter().all(|n| param(a, n).is_some() && param(a, n) == param(b, n)) {
            return false;
        }
        match &c.when {
            Some(h) => hypothesis_holds(h, a) && hypothesis_holds(h, b),
            None => true,
        }
    })
}

/// Fingerprints of many entries, computed in parallel and returned in input
/// order.
pub fn fingerprints(entries: &[CatalogEntry]) -> Vec<Result<MoritaFingerprint>> {
    entries.par_iter().map(morita_fingerprint).collect()
}

/// All pairwise verdicts among entries over one field.
pub fn pairwise(entries: &[CatalogEntry], fps: &[MoritaFingerprint]) -> Vec<(usize, usize, Verdict)> {
    let mut out = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let v = if entries[i].family == entries[j].family {
                Verdict::Identical
            } else {
                let open = find_open_case(&entries[i].family, &entries[j].family, entries[i].field.characteristic());
                compare_fingerprints(&fps[i], &fps[j], open)
            };
            out.push((i, j, v));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRow {
    pub defect: u32,
    pub n_simples: usize,
    pub family: String,
    pub label: String,
    pub dim_a: usize,
    pub dim_z: usize,
    pub dim_zst: usize,
    pub expected_dim_zst: Option<usize>,
    #[serde(with = "crate::integer::decimal")]
    pub cartan_det_abs: BigInt,
    pub stable_grothendieck: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRow {
    pub left: String,
    pub right: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockTable {
    pub rep_type: RepType,
    pub rows: Vec<BlockRow>,
    pub pairs: Vec<PairRow>,
}

/// Block representatives for each defect in `defects` and simple count, with
/// stable centre dimensions and all pairwise verdicts within each defect.
pub fn block_table(rep_type: RepType, defects: std::ops::RangeInclusive<u32>) -> Result<BlockTable> {
    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    for n in defects {
        let mut entries = Vec::new();
        let mut simples = Vec::new();
        for s in 1..=3 {
            for e in tame_block_entries(BlockSpec { rep_type, defect: n, n_simples: s })? {
                entries.push(e);
                simples.push(s);
            }
        }
        let fps: Vec<MoritaFingerprint> = fingerprints(&entries).into_iter().collect::<Result<_>>()?;
        for ((e, fp), s) in entries.iter().zip(&fps).zip(&simples) {
            rows.push(BlockRow {
                defect: n,
                n_simples: *s,
                family: e.family.to_string(),
                label: e.label(),
                dim_a: fp.dim_a,
                dim_z: fp.dim_z,
                dim_zst: fp.dim_zst,
                expected_dim_zst: crate::catalog::expected_block_stable_centre(&e.family, n),
                cartan_det_abs: fp.cartan_det_abs.clone(),
                stable_grothendieck: fp.stable_grothendieck.describe(),
            });
        }
        for (i, j, v) in pairwise(&entries, &fps) {
            pairs.push(PairRow {
                left: entries[i].label(),
                right: entries[j].label(),
                verdict: v,
            });
        }
    }
    Ok(BlockTable { rep_type, rows, pairs })
}

/// Every legal entry of one representation type over `field` whose integer
/// parameters are at most `bound`. Scalar parameters range over `{0, 1}`
/// (and `a = 1`); `Q(3A)_1^{2,2}(d)` gets one admissible `d` where the field
/// has one.
pub fn grid_entries(rep_type: RepType, field: &Field, bound: u32) -> Vec<CatalogEntry> {
    let r = || 1..=bound;
    let bits = ["0", "1"];
    let mut fams: Vec<FamilyId> = Vec::new();
    let three_k = |fams: &mut Vec<FamilyId>, make: fn(u32, u32, u32) -> FamilyId| {
        for (a, b, c) in triples(bound) {
            fams.push(make(a, b, c));
        }
    };
    match rep_type {
        RepType::Dihedral => {
            fams.push(FamilyId::C1);
            fams.push(FamilyId::B1);
            for m in r() {
                for n in r() {
                    fams.push(FamilyId::A1 { m, n });
                }
            }
            for k in r() {
                fams.push(FamilyId::D1A1 { k });
                fams.extend((0..2).map(|d| FamilyId::D1A2 { k, d }));
                for s in r() {
                    fams.extend((0..2).map(|c| FamilyId::D2B { k, s, c }));
                }
            }
            three_k(&mut fams, |a, b, c| FamilyId::D3K { a, b, c });
            for s in r() {
                for (t, u, k) in triples(s) {
                    fams.push(FamilyId::D3R { k, s, t, u });
                }
            }
        }
        RepType::Semidihedral => {
            for k in r() {
                fams.push(FamilyId::SD1A1 { k });
                for (c, d) in [("1", "0"), ("0", "1"), ("1", "1")] {
                    fams.push(FamilyId::SD1A2 { k, c: c.into(), d: d.into() });
                }
                for t in r() {
                    for c in 0..2 {
                        fams.push(FamilyId::SD2B1 { k, t, c });
                        fams.push(FamilyId::SD2B2 { k, t, c });
                    }
                }
            }
            three_k(&mut fams, |a, b, c| FamilyId::SD3K { a, b, c });
        }
        RepType::Quaternion => {
            for k in r() {
                fams.push(FamilyId::Q1A1 { k });
                for (c, d) in [("1", "0"), ("0", "1"), ("1", "1")] {
                    fams.push(FamilyId::Q1A2 { k, c: c.into(), d: d.into() });
                }
                for s in r() {
                    for c in bits {
                        fams.push(FamilyId::Q2B1 { k, s, a: "1".into(), c: c.into() });
                    }
                }
            }
            three_k(&mut fams, |a, b, c| FamilyId::Q3K { a, b, c });
            let d = match (field.characteristic(), field.order()) {
                (0, _) => Some("2"),
                (2, Some(q)) if q > 2 => Some("g"),
                (2, _) => None,
                _ => Some("-1"),
            };
            if let Some(d) = d {
                fams.push(FamilyId::Q3A1 { d: d.into() });
            }
        }
    }
    fams.into_iter()
        .filter_map(|f| crate::catalog::make_entry(f, field).ok())
        .collect()
}

fn triples(bound: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 1..=bound {
        for b in 1..=a {
            for c in 1..=b {
                out.push((a, b, c));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Section7Report {
    pub field: String,
    pub rep_type: RepType,
    pub entries: usize,
    pub pairs_checked: usize,
    pub failures: Vec<PairRow>,
}

/// Every pair of entries with different numbers of simple modules, within
/// one representation type, must be distinguished.
pub fn section7_suite(rep_type: RepType, field: &Field, bound: u32) -> Result<Section7Report> {
    let entries = grid_entries(rep_type, field, bound);
    let fps: Vec<MoritaFingerprint> = fingerprints(&entries).into_iter().collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if fps[i].n_simples == fps[j].n_simples {
                continue;
            }
            pairs_checked += 1;
            let v = compare_fingerprints(&fps[i], &fps[j], None);
            if !v.is_distinguished() {
                failures.push(PairRow {
                    left: entries[i].label(),
                    right: entries[j].label(),
                    verdict: v,
                });
            }
        }
    }
    Ok(Section7Report {
        field: field.to_string(),
        rep_type,
        entries: entries.len(),
        pairs_checked,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub rep_type: RepType,
    pub n_simples: usize,
    pub entries: usize,
    pub pairs: usize,
    pub distinguished: usize,
    pub open: Vec<PairRow>,
    pub unexpected: Vec<PairRow>,
}

/// Pairwise verdicts within each (type, number of simples) cell of the grid
/// over `field`. Pairs that are not distinguished are sorted into recorded
/// open cases and unexpected ones.
pub fn replay_cells(field: &Field, bound: u32) -> Result<Vec<CellReport>> {
    let mut out = Vec::new();
    for rep_type in [RepType::Dihedral, RepType::Semidihedral, RepType::Quaternion] {
        let entries = grid_entries(rep_type, field, bound);
        let fps: Vec<MoritaFingerprint> = fingerprints(&entries).into_iter().collect::<Result<_>>()?;
        for ((rt, n), idx) in cells(&fps) {
            let sub: Vec<CatalogEntry> = idx.iter().map(|&i| entries[i].clone()).collect();
            let sub_fps: Vec<MoritaFingerprint> = idx.iter().map(|&i| fps[i].clone()).collect();
            let mut cell = CellReport {
                rep_type: rt,
                n_simples: n,
                entries: sub.len(),
                pairs: 0,
                distinguished: 0,
                open: Vec::new(),
                unexpected: Vec::new(),
            };
            for (i, j, v) in pairwise(&sub, &sub_fps) {
                cell.pairs += 1;
                let row = PairRow {
                    left: sub[i].label(),
                    right: sub[j].label(),
                    verdict: v,
                };
                match &row.verdict {
                    Verdict::Distinguished { .. } => cell.distinguished += 1,
                    Verdict::NotDistinguished { known_open: true, .. } => cell.open.push(row),
                    _ => cell.unexpected.push(row),
                }
            }
            out.push(cell);
        }
    }
    Ok(out)
}

/// Groups fingerprints by the cell (representation type, simple count).
pub fn cells(fps: &[MoritaFingerprint]) -> BTreeMap<(RepType, usize), Vec<usize>> {
    let mut out: BTreeMap<(RepType, usize), Vec<usize>> = BTreeMap::new();
    for (i, fp) in fps.iter().enumerate() {
        out.entry((fp.rep_type.expect("catalog entry"), fp.n_simples)).or_default().push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_entry;

    fn f(p: u32) -> Field {
        if p == 0 {
            Field::rationals()
        } else {
            Field::prime(p).unwrap()
        }
    }

    #[test]
    fn open_case_table_loads() {
        assert!(open_cases().len() >= 5);
        let a = FamilyId::D1A2 { k: 3, d: 0 };
        let b = FamilyId::D1A2 { k: 3, d: 1 };
        assert!(find_open_case(&a, &b, 2).is_some());
        let c = FamilyId::D1A2 { k: 2, d: 1 };
        assert!(find_open_case(&a, &c, 2).is_none());
        let s0 = FamilyId::SD2B1 { k: 1, t: 3, c: 0 };
        let s1 = FamilyId::SD2B1 { k: 1, t: 3, c: 1 };
        assert!(!find_open_case(&s0, &s1, 2).unwrap().is_open());
        assert!(find_open_case(&s0, &s1, 3).unwrap().is_open());
        let s0 = FamilyId::SD2B1 { k: 2, t: 2, c: 0 };
        let s1 = FamilyId::SD2B1 { k: 2, t: 2, c: 1 };
        assert_eq!(find_open_case(&s0, &s1, 2).unwrap().category, "open");
        let d3 = FamilyId::D3K { a: 1, b: 1, c: 1 };
        assert!(find_open_case(&d3, &a, 2).is_none());
    }

    #[test]
    fn hypotheses() {
        assert!(hz1(1, 3) && hz1(3, 1) && hz1(3, 3));
        assert!(!hz1(2, 2) && !hz1(2, 4) && hz1(2, 3));
        assert!(hz2(3, 3) && !hz2(2, 3));
    }

    #[test]
    fn reflexive() {
        let e = make_entry(FamilyId::C1, &f(0)).unwrap();
        assert_eq!(compare(&e, &e).unwrap(), Verdict::Identical);
    }

    #[test]
    fn char_mismatch() {
        let a = make_entry(FamilyId::C1, &f(0)).unwrap();
        let b = make_entry(FamilyId::C1, &f(2)).unwrap();
        assert!(matches!(compare(&a, &b), Err(Error::CharMismatch(_, _))));
    }

    #[test]
    fn grothendieck_separates_c1() {
        let a = make_entry(FamilyId::C1, &f(0)).unwrap();
        let b = make_entry(FamilyId::D1A1 { k: 2 }, &f(0)).unwrap();
        match compare(&a, &b).unwrap() {
            Verdict::Distinguished { invariant, left, right, .. } => {
                assert_eq!(invariant, "stable_grothendieck");
                assert_eq!((left.as_str(), right.as_str()), ("Z/4", "Z/8"));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn a1_fingerprint() {
        let fp = morita_fingerprint(&make_entry(FamilyId::A1 { m: 3, n: 2 }, &f(0)).unwrap()).unwrap();
        assert_eq!((fp.dim_z, fp.dim_zpr, fp.dim_zst), (5, 1, 4));
        assert_eq!(fp.stable_grothendieck.describe(), "Z/5");
        assert!(fp.kuelshammer_fps.is_empty());
    }
}
