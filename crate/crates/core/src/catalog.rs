//! The families of symmetric algebras of dihedral, semi-dihedral and
//! quaternion type, given by quivers with relations, together with the
//! representatives of tame blocks of each defect.
//!
//! Each entry is generated as presentation text and parsed, so the text shown
//! to users is exactly what gets built.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, Algebra};
use crate::error::{Error, Result};
use crate::field::{field_statement, Field};
use crate::integer::MatrixZ;
use crate::presentation::{parse_presentation, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Dihedral,
    Semidihedral,
    Quaternion,
}

impl RepType {
    pub fn parse(s: &str) -> Result<RepType> {
        match s.to_ascii_lowercase().as_str() {
            "dihedral" | "d" => Ok(RepType::Dihedral),
            "semidihedral" | "semi-dihedral" | "sd" => Ok(RepType::Semidihedral),
            "quaternion" | "q" => Ok(RepType::Quaternion),
            _ => Err(Error::UnknownFamily(format!("unknown representation type `{s}`"))),
        }
    }

    /// Smallest defect of a tame block of this type.
    pub fn min_defect(self) -> u32 {
        match self {
            RepType::Dihedral => 2,
            RepType::Semidihedral => 4,
            RepType::Quaternion => 3,
        }
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepType::Dihedral => "dihedral",
            RepType::Semidihedral => "semidihedral",
            RepType::Quaternion => "quaternion",
        })
    }
}

/// A family together with its parameters. Scalars that range over the whole
/// field are kept as text and interpreted in the entry's field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    A1 { m: u32, n: u32 },
    C1,
    B1,
    D1A1 { k: u32 },
    D1A2 { k: u32, d: u32 },
    D2B { k: u32, s: u32, c: u32 },
    D3K { a: u32, b: u32, c: u32 },
    D3R { k: u32, s: u32, t: u32, u: u32 },
    SD1A1 { k: u32 },
    SD1A2 { k: u32, c: String, d: String },
    SD2B1 { k: u32, t: u32, c: u32 },
    SD2B2 { k: u32, t: u32, c: u32 },
    SD3K { a: u32, b: u32, c: u32 },
    Q1A1 { k: u32 },
    Q1A2 { k: u32, c: String, d: String },
    Q2B1 { k: u32, s: u32, a: String, c: String },
    Q3K { a: u32, b: u32, c: u32 },
    Q3A1 { d: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Int,
    Bit,
    Scalar,
}

/// Static description of one family.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyInfo {
    pub code: &'static str,
    pub name: &'static str,
    pub params: Vec<&'static str>,
    pub rep_type: RepType,
    pub n_simples: usize,
    pub quiver: &'static str,
    pub constraints: &'static str,
    pub char_two_only: bool,
}

struct Spec {
    code: &'static str,
    name: &'static str,
    params: &'static [(&'static str, Kind)],
    rep_type: RepType,
    n_simples: usize,
    quiver: &'static str,
    constraints: &'static str,
    char_two_only: bool,
}

use Kind::{Bit, Int, Scalar as Sc};

const SPECS: &[Spec] = &[
    Spec { code: "A1", name: "A_1(m,n)", params: &[("m", Int), ("n", Int)], rep_type: RepType::Dihedral, n_simples: 1, quiver: "1A", constraints: "m >= n >= 2, m + n > 4", char_two_only: false },
    Spec { code: "C1", name: "C_1", params: &[], rep_type: RepType::Dihedral, n_simples: 1, quiver: "1A", constraints: "", char_two_only: false },
    Spec { code: "B1", name: "B_1", params: &[], rep_type: RepType::Dihedral, n_simples: 1, quiver: "1A", constraints: "char 2", char_two_only: true },
    Spec { code: "D1A1", name: "D(1A)_1^k", params: &[("k", Int)], rep_type: RepType::Dihedral, n_simples: 1, quiver: "1A", constraints: "k >= 2", char_two_only: false },
    Spec { code: "D1A2", name: "D(1A)_2^k(d)", params: &[("k", Int), ("d", Bit)], rep_type: RepType::Dihedral, n_simples: 1, quiver: "1A", constraints: "k >= 2, d in {0, 1}, char 2", char_two_only: true },
    Spec { code: "D2B", name: "D(2B)^{k,s}(c)", params: &[("k", Int), ("s", Int), ("c", Bit)], rep_type: RepType::Dihedral, n_simples: 2, quiver: "2B", constraints: "k >= s >= 1, c in {0, 1}, c = 1 needs char 2", char_two_only: false },
    Spec { code: "D3K", name: "D(3K)^{a,b,c}", params: &[("a", Int), ("b", Int), ("c", Int)], rep_type: RepType::Dihedral, n_simples: 3, quiver: "3K", constraints: "a >= b >= c >= 1", char_two_only: false },
    Spec { code: "D3R", name: "D(3R)^{k,s,t,u}", params: &[("k", Int), ("s", Int), ("t", Int), ("u", Int)], rep_type: RepType::Dihedral, n_simples: 3, quiver: "3R", constraints: "s >= t >= u >= k >= 1, t >= 2", char_two_only: false },
    Spec { code: "SD1A1", name: "SD(1A)_1^k", params: &[("k", Int)], rep_type: RepType::Semidihedral, n_simples: 1, quiver: "1A", constraints: "k >= 2", char_two_only: false },
    Spec { code: "SD1A2", name: "SD(1A)_2^k(c,d)", params: &[("k", Int), ("c", Sc), ("d", Sc)], rep_type: RepType::Semidihedral, n_simples: 1, quiver: "1A", constraints: "k >= 2, (c, d) != (0, 0), char 2", char_two_only: true },
    Spec { code: "SD2B1", name: "SD(2B)_1^{k,t}(c)", params: &[("k", Int), ("t", Int), ("c", Bit)], rep_type: RepType::Semidihedral, n_simples: 2, quiver: "2B", constraints: "k >= 1, t >= 2, c in {0, 1}", char_two_only: false },
    Spec { code: "SD2B2", name: "SD(2B)_2^{k,t}(c)", params: &[("k", Int), ("t", Int), ("c", Bit)], rep_type: RepType::Semidihedral, n_simples: 2, quiver: "2B", constraints: "k >= 1, t >= 2, k + t >= 4, c in {0, 1}", char_two_only: false },
    Spec { code: "SD3K", name: "SD(3K)^{a,b,c}", params: &[("a", Int), ("b", Int), ("c", Int)], rep_type: RepType::Semidihedral, n_simples: 3, quiver: "3K", constraints: "a >= b >= c >= 1, a >= 2", char_two_only: false },
    Spec { code: "Q1A1", name: "Q(1A)_1^k", params: &[("k", Int)], rep_type: RepType::Quaternion, n_simples: 1, quiver: "1A", constraints: "k >= 2", char_two_only: false },
    Spec { code: "Q1A2", name: "Q(1A)_2^k(c,d)", params: &[("k", Int), ("c", Sc), ("d", Sc)], rep_type: RepType::Quaternion, n_simples: 1, quiver: "1A", constraints: "k >= 2, (c, d) != (0, 0), char 2", char_two_only: true },
    Spec { code: "Q2B1", name: "Q(2B)_1^{k,s}(a,c)", params: &[("k", Int), ("s", Int), ("a", Sc), ("c", Sc)], rep_type: RepType::Quaternion, n_simples: 2, quiver: "2B", constraints: "k >= 1, s >= 3, a != 0", char_two_only: false },
    Spec { code: "Q3K", name: "Q(3K)^{a,b,c}", params: &[("a", Int), ("b", Int), ("c", Int)], rep_type: RepType::Quaternion, n_simples: 3, quiver: "3K", constraints: "a >= b >= c >= 1, b >= 2, (a, b, c) != (2, 2, 1)", char_two_only: false },
    Spec { code: "Q3A1", name: "Q(3A)_1^{2,2}(d)", params: &[("d", Sc)], rep_type: RepType::Quaternion, n_simples: 3, quiver: "3A", constraints: "d not in {0, 1}", char_two_only: false },
];

fn spec_of(code: &str) -> Option<&'static Spec> {
    SPECS.iter().find(|s| s.code.eq_ignore_ascii_case(code))
}

/// All families in a fixed order.
pub fn list_families() -> Vec<FamilyInfo> {
    SPECS
        .iter()
        .map(|s| FamilyInfo {
            code: s.code,
            name: s.name,
            params: s.params.iter().map(|(n, _)| *n).collect(),
            rep_type: s.rep_type,
            n_simples: s.n_simples,
            quiver: s.quiver,
            constraints: s.constraints,
            char_two_only: s.char_two_only,
        })
        .collect()
}

impl FamilyId {
    /// Parses a family code and a parameter list, either `k=2,s=3,c=1` or
    /// positional `2,3,1`.
    pub fn parse(code: &str, params: &str) -> Result<FamilyId> {
        let spec = spec_of(code.trim()).ok_or_else(|| Error::UnknownFamily(code.trim().to_string()))?;
        let items: Vec<&str> = params
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let mut values: BTreeMap<&str, String> = BTreeMap::new();
        let bad = |m: String| Error::ParameterConstraint(format!("{}: {m}", spec.code));
        if items.iter().all(|i| !i.contains('=')) && !items.is_empty() {
            if items.len() != spec.params.len() {
                return Err(bad(format!(
                    "expected {} parameters ({}), got {}",
                    spec.params.len(),
                    spec.params.iter().map(|p| p.0).collect::<Vec<_>>().join(","),
                    items.len()
                )));
            }
            for ((name, _), v) in spec.params.iter().zip(&items) {
                values.insert(name, v.to_string());
            }
        } else {
            for item in &items {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| bad(format!("mixed positional and named parameters in `{params}`")))?;
                let name = spec
                    .params
                    .iter()
                    .map(|p| p.0)
                    .find(|n| *n == k.trim())
                    .ok_or_else(|| bad(format!("unknown parameter `{}`", k.trim())))?;
                if values.insert(name, v.trim().to_string()).is_some() {
                    return Err(bad(format!("parameter `{name}` given twice")));
                }
            }
        }
        let int = |name: &str| -> Result<u32> {
            let v = values.get(name).ok_or_else(|| bad(format!("missing parameter `{name}`")))?;
            v.parse::<u32>()
                .map_err(|_| bad(format!("parameter `{name}` must be a non-negative integer, got `{v}`")))
        };
        let text = |name: &str| -> Result<String> {
            values
                .get(name)
                .cloned()
                .ok_or_else(|| bad(format!("missing parameter `{name}`")))
        };
        Ok(match spec.code {
            "A1" => FamilyId::A1 { m: int("m")?, n: int("n")? },
            "C1" => FamilyId::C1,
            "B1" => FamilyId::B1,
            "D1A1" => FamilyId::D1A1 { k: int("k")? },
            "D1A2" => FamilyId::D1A2 { k: int("k")?, d: int("d")? },
            "D2B" => FamilyId::D2B { k: int("k")?, s: int("s")?, c: int("c")? },
            "D3K" => FamilyId::D3K { a: int("a")?, b: int("b")?, c: int("c")? },
            "D3R" => FamilyId::D3R { k: int("k")?, s: int("s")?, t: int("t")?, u: int("u")? },
            "SD1A1" => FamilyId::SD1A1 { k: int("k")? },
            "SD1A2" => FamilyId::SD1A2 { k: int("k")?, c: text("c")?, d: text("d")? },
            "SD2B1" => FamilyId::SD2B1 { k: int("k")?, t: int("t")?, c: int("c")? },
            "SD2B2" => FamilyId::SD2B2 { k: int("k")?, t: int("t")?, c: int("c")? },
            "SD3K" => FamilyId::SD3K { a: int("a")?, b: int("b")?, c: int("c")? },
            "Q1A1" => FamilyId::Q1A1 { k: int("k")? },
            "Q1A2" => FamilyId::Q1A2 { k: int("k")?, c: text("c")?, d: text("d")? },
            "Q2B1" => FamilyId::Q2B1 { k: int("k")?, s: int("s")?, a: text("a")?, c: text("c")? },
            "Q3K" => FamilyId::Q3K { a: int("a")?, b: int("b")?, c: int("c")? },
            "Q3A1" => FamilyId::Q3A1 { d: text("d")? },
            _ => unreachable!("every spec code is handled"),
        })
    }

    pub fn code(&self) -> &'static str {
        match self {
            FamilyId::A1 { .. } => "A1",
            FamilyId::C1 => "C1",
            FamilyId::B1 => "B1",
            FamilyId::D1A1 { .. } => "D1A1",
            FamilyId::D1A2 { .. } => "D1A2",
            FamilyId::D2B { .. } => "D2B",
            FamilyId::D3K { .. } => "D3K",
            FamilyId::D3R { .. } => "D3R",
            FamilyId::SD1A1 { .. } => "SD1A1",
            FamilyId::SD1A2 { .. } => "SD1A2",
            FamilyId::SD2B1 { .. } => "SD2B1",
            FamilyId::SD2B2 { .. } => "SD2B2",
            FamilyId::SD3K { .. } => "SD3K",
            FamilyId::Q1A1 { .. } => "Q1A1",
            FamilyId::Q1A2 { .. } => "Q1A2",
            FamilyId::Q2B1 { .. } => "Q2B1",
            FamilyId::Q3K { .. } => "Q3K",
            FamilyId::Q3A1 { .. } => "Q3A1",
        }
    }

    fn spec(&self) -> &'static Spec {
        spec_of(self.code()).expect("known code")
    }

    pub fn rep_type(&self) -> RepType {
        self.spec().rep_type
    }

    pub fn n_simples(&self) -> usize {
        self.spec().n_simples
    }

    /// Parameter names and values in declaration order.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        let ints = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let values: Vec<String> = match self {
            FamilyId::A1 { m, n } => ints(&[*m, *n]),
            FamilyId::C1 | FamilyId::B1 => vec![],
            FamilyId::D1A1 { k } | FamilyId::SD1A1 { k } | FamilyId::Q1A1 { k } => ints(&[*k]),
            FamilyId::D1A2 { k, d } => ints(&[*k, *d]),
            FamilyId::D2B { k, s, c } => ints(&[*k, *s, *c]),
            FamilyId::D3K { a, b, c } | FamilyId::SD3K { a, b, c } | FamilyId::Q3K { a, b, c } => ints(&[*a, *b, *c]),
            FamilyId::D3R { k, s, t, u } => ints(&[*k, *s, *t, *u]),
            FamilyId::SD1A2 { k, c, d } | FamilyId::Q1A2 { k, c, d } => vec![k.to_string(), c.clone(), d.clone()],
            FamilyId::SD2B1 { k, t, c } | FamilyId::SD2B2 { k, t, c } => ints(&[*k, *t, *c]),
            FamilyId::Q2B1 { k, s, a, c } => vec![k.to_string(), s.to_string(), a.clone(), c.clone()],
            FamilyId::Q3A1 { d } => vec![d.clone()],
        };
        self.spec().params.iter().map(|p| p.0).zip(values).collect()
    }

    /// Notation used in tables, e.g. `D(2B)^{1,2}(0)`.
    pub fn label(&self) -> String {
        let p: Vec<String> = self.params().into_iter().map(|(_, v)| v).collect();
        let j = |r: std::ops::Range<usize>| p[r].join(",");
        match self {
            FamilyId::A1 { .. } => format!("A_1({})", j(0..2)),
            FamilyId::C1 => "C_1".into(),
            FamilyId::B1 => "B_1".into(),
            FamilyId::D1A1 { .. } => format!("D(1A)_1^{}", p[0]),
            FamilyId::D1A2 { .. } => format!("D(1A)_2^{}({})", p[0], p[1]),
            FamilyId::D2B { .. } => format!("D(2B)^{{{}}}({})", j(0..2), p[2]),
            FamilyId::D3K { .. } => format!("D(3K)^{{{}}}", j(0..3)),
            FamilyId::D3R { .. } => format!("D(3R)^{{{}}}", j(0..4)),
            FamilyId::SD1A1 { .. } => format!("SD(1A)_1^{}", p[0]),
            FamilyId::SD1A2 { .. } => format!("SD(1A)_2^{}({})", p[0], j(1..3)),
            FamilyId::SD2B1 { .. } => format!("SD(2B)_1^{{{}}}({})", j(0..2), p[2]),
            FamilyId::SD2B2 { .. } => format!("SD(2B)_2^{{{}}}({})", j(0..2), p[2]),
            FamilyId::SD3K { .. } => format!("SD(3K)^{{{}}}", j(0..3)),
            FamilyId::Q1A1 { .. } => format!("Q(1A)_1^{}", p[0]),
            FamilyId::Q1A2 { .. } => format!("Q(1A)_2^{}({})", p[0], j(1..3)),
            FamilyId::Q2B1 { .. } => format!("Q(2B)_1^{{{}}}({})", j(0..2), j(2..4)),
            FamilyId::Q3K { .. } => format!("Q(3K)^{{{}}}", j(0..3)),
            FamilyId::Q3A1 { .. } => format!("Q(3A)_1^{{2,2}}({})", p[0]),
        }
    }

    /// Whether the family is special biserial at these parameters.
    pub fn special_biserial(&self) -> bool {
        match self {
            FamilyId::B1 | FamilyId::D1A2 { .. } => false,
            FamilyId::D2B { c, .. } => *c == 0,
            _ => self.rep_type() == RepType::Dihedral,
        }
    }

    /// Length bound handed to the truncation oracle.
    pub fn truncation_hint(&self) -> usize {
        let u = |x: &u32| *x as usize;
        match self {
            FamilyId::A1 { m, n } => u(m) + u(n) + 1,
            FamilyId::C1 | FamilyId::B1 => 5,
            FamilyId::D1A1 { k }
            | FamilyId::D1A2 { k, .. }
            | FamilyId::SD1A1 { k }
            | FamilyId::SD1A2 { k, .. }
            | FamilyId::Q1A1 { k }
            | FamilyId::Q1A2 { k, .. } => 2 * u(k) + 3,
            FamilyId::D2B { k, s, .. } | FamilyId::Q2B1 { k, s, .. } => 3 * u(k) + u(s) + 3,
            FamilyId::SD2B1 { k, t, .. } | FamilyId::SD2B2 { k, t, .. } => 3 * u(k) + u(t) + 3,
            FamilyId::D3K { a, b, c } | FamilyId::SD3K { a, b, c } | FamilyId::Q3K { a, b, c } => {
                2 * (u(a) + u(b) + u(c)) + 3
            }
            FamilyId::D3R { k, s, t, u: w } => 3 * u(k) + u(s) + u(t) + u(w) + 3,
            FamilyId::Q3A1 { .. } => 8,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            return f.write_str(self.code());
        }
        let body: Vec<String> = params.iter().map(|(n, v)| format!("{n}={v}")).collect();
        write!(f, "{}({})", self.code(), body.join(","))
    }
}

/// How strictly parameters are checked. Block representatives and some
/// published comparisons use parameters outside the family table's
/// inequalities; `Relaxed` keeps only the checks needed for the presentation
/// to make sense (positive exponents, scalar and characteristic conditions).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    Strict,
    Relaxed,
}

/// Values recorded in the literature for an entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub dim: Option<usize>,
    pub dim_z: Option<usize>,
    pub dim_r: Option<usize>,
    pub cartan: Option<Vec<Vec<i64>>>,
    pub det: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub rep_type: RepType,
    pub n_simples: usize,
    pub special_biserial: bool,
    pub char_two_only: bool,
    pub truncation_hint: usize,
    pub expected: Expected,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub family: FamilyId,
    pub field: Field,
    pub text: String,
    pub presentation: Presentation,
    pub metadata: Metadata,
}

impl CatalogEntry {
    /// Builds the algebra and checks the recorded dimension.
    pub fn build(&self) -> Result<Algebra> {
        let a = build_algebra(&self.presentation)?;
        if let Some(d) = self.metadata.expected.dim {
            if a.dim() != d {
                return Err(Error::Consistency(format!(
                    "{}: built dimension {} but expected {d}",
                    self.family,
                    a.dim()
                )));
            }
        }
        Ok(a)
    }

    pub fn label(&self) -> String {
        self.family.label()
    }
}

fn constraint(ok: bool, family: &FamilyId, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ParameterConstraint(format!("{family}: {what} violated")))
    }
}

fn check(family: &FamilyId, field: &Field, validation: Validation) -> Result<()> {
    let strict = validation == Validation::Strict;
    let p = field.characteristic();
    let f = family;
    if family.spec().char_two_only && p != 2 {
        return Err(Error::CharConstraint(format!("{family} requires characteristic 2, got {field}")));
    }
    let bit = |x: u32, name: &str| constraint(x <= 1, f, &format!("{name} in {{0, 1}}"));
    let scalar = |t: &str| field.parse_scalar(t);
    match family {
        FamilyId::A1 { m, n } => {
            constraint(m >= n && *n >= 2, f, "m >= n >= 2")?;
            constraint(m + n > 4, f, "m + n > 4")?;
        }
        FamilyId::C1 | FamilyId::B1 => {}
        FamilyId::D1A1 { k } => constraint(*k >= 2, f, "k >= 2")?,
        FamilyId::D1A2 { k, d } => {
            constraint(*k >= 2, f, "k >= 2")?;
            bit(*d, "d")?;
        }
        FamilyId::D2B { k, s, c } => {
            constraint(*s >= 1 && *k >= 1, f, "k >= s >= 1")?;
            if strict {
                constraint(k >= s, f, "k >= s")?;
            }
            bit(*c, "c")?;
            if *c == 1 && p != 2 {
                return Err(Error::CharConstraint(format!("{family}: c = 1 requires characteristic 2")));
            }
        }
        FamilyId::D3K { a, b, c } => constraint(a >= b && b >= c && *c >= 1, f, "a >= b >= c >= 1")?,
        FamilyId::D3R { k, s, t, u } => {
            constraint(s >= t && t >= u && u >= k && *k >= 1, f, "s >= t >= u >= k >= 1")?;
            constraint(*t >= 2, f, "t >= 2")?;
        }
        FamilyId::SD1A1 { k } | FamilyId::Q1A1 { k } => constraint(*k >= 2, f, "k >= 2")?,
        FamilyId::SD1A2 { k, c, d } | FamilyId::Q1A2 { k, c, d } => {
            constraint(*k >= 2, f, "k >= 2")?;
            let (c, d) = (scalar(c)?, scalar(d)?);
            constraint(!(field.is_zero(&c) && field.is_zero(&d)), f, "(c, d) != (0, 0)")?;
        }
        FamilyId::SD2B1 { k, t, c } => {
            constraint(*k >= 1, f, "k >= 1")?;
            constraint(*t >= 2 || (!strict && *t >= 1), f, "t >= 2")?;
            bit(*c, "c")?;
        }
        FamilyId::SD2B2 { k, t, c } => {
            constraint(*k >= 1, f, "k >= 1")?;
            constraint(*t >= 2, f, "t >= 2")?;
            constraint(k + t >= 4, f, "k + t >= 4")?;
            bit(*c, "c")?;
        }
        FamilyId::SD3K { a, b, c } => {
            constraint(a >= b && b >= c && *c >= 1, f, "a >= b >= c >= 1")?;
            constraint(*a >= 2, f, "a >= 2")?;
        }
        FamilyId::Q2B1 { k, s, a, c } => {
            constraint(*k >= 1, f, "k >= 1")?;
            constraint(*s >= 3 || (!strict && *s >= 2), f, "s >= 3")?;
            constraint(!field.is_zero(&scalar(a)?), f, "a != 0")?;
            scalar(c)?;
        }
        FamilyId::Q3K { a, b, c } => {
            constraint(a >= b && b >= c && *c >= 1, f, "a >= b >= c >= 1")?;
            constraint(*b >= 2, f, "b >= 2")?;
            constraint((*a, *b, *c) != (2, 2, 1), f, "(a, b, c) != (2, 2, 1)")?;
        }
        FamilyId::Q3A1 { d } => {
            let d = scalar(d)?;
            constraint(!field.is_zero(&d) && !field.is_one(&d), f, "d not in {0, 1}")?;
        }
    }
    Ok(())
}

const ONE_A: &str = "vertices 1\narrow X 0 0\narrow Y 0 0\n";
const TWO_B: &str = "vertices 2\narrow alpha 0 0\narrow beta 0 1\narrow gamma 1 0\narrow eta 1 1\n";
const THREE_K: &str = "vertices 3\narrow beta 0 1\narrow gamma 1 0\narrow kappa 0 2\narrow lambda 2 0\narrow delta 1 2\narrow eta 2 1\n";
const THREE_R: &str = "vertices 3\narrow alpha 0 0\narrow beta 0 1\narrow rho 1 1\narrow delta 1 2\narrow xi 2 2\narrow lambda 2 0\n";
const THREE_A: &str = "vertices 3\narrow beta 0 1\narrow gamma 1 0\narrow delta 1 2\narrow eta 2 1\n";

fn relations(family: &FamilyId) -> (&'static str, &'static [&'static str], bool) {
    match family {
        FamilyId::A1 { .. } => (ONE_A, &["X*Y", "X^m - Y^n"], true),
        FamilyId::C1 => (ONE_A, &["X^2", "Y^2"], true),
        FamilyId::B1 => (ONE_A, &["X^2", "Y*X - Y^2"], true),
        FamilyId::D1A1 { .. } => (ONE_A, &["X^2", "Y^2", "(X*Y)^k - (Y*X)^k"], false),
        FamilyId::D1A2 { .. } => (
            ONE_A,
            &["X^2 - (X*Y)^k", "Y^2 - d*(X*Y)^k", "(X*Y)^k - (Y*X)^k", "(X*Y)^k*X", "(Y*X)^k*Y"],
            false,
        ),
        FamilyId::SD1A1 { .. } => (
            ONE_A,
            &["(X*Y)^k - (Y*X)^k", "(X*Y)^k*X", "Y^2", "X^2 - (Y*X)^(k-1)*Y"],
            false,
        ),
        FamilyId::SD1A2 { .. } => (
            ONE_A,
            &["(X*Y)^k - (Y*X)^k", "(X*Y)^k*X", "Y^2 - d*(X*Y)^k", "X^2 - (Y*X)^(k-1)*Y + c*(X*Y)^k"],
            false,
        ),
        FamilyId::Q1A1 { .. } => (
            ONE_A,
            &["(X*Y)^k - (Y*X)^k", "(X*Y)^k*X", "Y^2 - (X*Y)^(k-1)*X", "X^2 - (Y*X)^(k-1)*Y"],
            false,
        ),
        FamilyId::Q1A2 { .. } => (
            ONE_A,
            &[
                "X^2 - (Y*X)^(k-1)*Y - c*(X*Y)^k",
                "Y^2 - (X*Y)^(k-1)*X - d*(X*Y)^k",
                "(X*Y)^k - (Y*X)^k",
                "(X*Y)^k*X",
                "(Y*X)^k*Y",
            ],
            false,
        ),
        FamilyId::D2B { .. } => (
            TWO_B,
            &[
                "beta*eta",
                "eta*gamma",
                "gamma*beta",
                "alpha^2 - c*(alpha*beta*gamma)^k",
                "(alpha*beta*gamma)^k - (beta*gamma*alpha)^k",
                "eta^s - (gamma*alpha*beta)^k",
            ],
            false,
        ),
        FamilyId::SD2B1 { .. } => (
            TWO_B,
            &[
                "gamma*beta",
                "eta*gamma",
                "beta*eta",
                "alpha^2 - (beta*gamma*alpha)^(k-1)*beta*gamma - c*(alpha*beta*gamma)^k",
                "eta^t - (gamma*alpha*beta)^k",
                "(alpha*beta*gamma)^k - (beta*gamma*alpha)^k",
            ],
            false,
        ),
        FamilyId::SD2B2 { .. } => (
            TWO_B,
            &[
                "beta*eta - (alpha*beta*gamma)^(k-1)*alpha*beta",
                "eta*gamma - (gamma*alpha*beta)^(k-1)*gamma*alpha",
                "gamma*beta - eta^(t-1)",
                "alpha^2 - c*(alpha*beta*gamma)^k",
                "beta*eta^2",
                "eta^2*gamma",
            ],
            false,
        ),
        FamilyId::Q2B1 { .. } => (
            TWO_B,
            &[
                "gamma*beta - eta^(s-1)",
                "beta*eta - (alpha*beta*gamma)^(k-1)*alpha*beta",
                "eta*gamma - (gamma*alpha*beta)^(k-1)*gamma*alpha",
                "alpha^2 - a*(beta*gamma*alpha)^(k-1)*beta*gamma - c*(beta*gamma*alpha)^k",
                "alpha^2*beta",
                "gamma*alpha^2",
            ],
            false,
        ),
        FamilyId::D3K { .. } => (
            THREE_K,
            &[
                "beta*delta",
                "delta*lambda",
                "lambda*beta",
                "gamma*kappa",
                "kappa*eta",
                "eta*gamma",
                "(beta*gamma)^a - (kappa*lambda)^b",
                "(lambda*kappa)^b - (eta*delta)^c",
                "(delta*eta)^c - (gamma*beta)^a",
            ],
            false,
        ),
        // The published list has a non-composable first relation here; the
        // cycle at vertex 1 through gamma is the one that fits the pattern of
        // the other two.
        FamilyId::SD3K { .. } => (
            THREE_K,
            &[
                "kappa*eta",
                "eta*gamma",
                "gamma*kappa",
                "delta*lambda - (gamma*beta)^(a-1)*gamma",
                "beta*delta - (kappa*lambda)^(b-1)*kappa",
                "lambda*beta - (eta*delta)^(c-1)*eta",
            ],
            false,
        ),
        FamilyId::Q3K { .. } => (
            THREE_K,
            &[
                "beta*delta - (kappa*lambda)^(a-1)*kappa",
                "eta*gamma - (lambda*kappa)^(a-1)*lambda",
                "delta*lambda - (gamma*beta)^(b-1)*gamma",
                "kappa*eta - (beta*gamma)^(b-1)*beta",
                "lambda*beta - (eta*delta)^(c-1)*eta",
                "gamma*kappa - (delta*eta)^(c-1)*delta",
                "gamma*beta*delta",
                "delta*eta*gamma",
                "lambda*kappa*eta",
            ],
            false,
        ),
        // The cycle at the rho vertex is delta*lambda*beta; the published
        // relation names an arrow that is not in this quiver.
        FamilyId::D3R { .. } => (
            THREE_R,
            &[
                "alpha*beta",
                "beta*rho",
                "rho*delta",
                "delta*xi",
                "xi*lambda",
                "lambda*alpha",
                "alpha^s - (beta*delta*lambda)^k",
                "rho^t - (delta*lambda*beta)^k",
                "xi^u - (lambda*beta*delta)^k",
            ],
            false,
        ),
        FamilyId::Q3A1 { .. } => (
            THREE_A,
            &[
                "beta*delta*eta - beta*gamma*beta",
                "delta*eta*gamma - gamma*beta*gamma",
                "eta*gamma*beta - d*eta*delta*eta",
                "gamma*beta*delta - d*delta*eta*delta",
                "beta*delta*eta*delta",
                "eta*gamma*beta*gamma",
            ],
            false,
        ),
    }
}

/// Presentation text of a family over `field`, without validation.
pub fn presentation_text(family: &FamilyId, field: &Field) -> String {
    let (quiver, rels, commutative) = relations(family);
    let mut out = format!("# {}\n{}\n{quiver}", family.label(), field_statement(field));
    for (name, value) in family.params() {
        out.push_str(&format!("param {name}={value}\n"));
    }
    for r in rels {
        out.push_str(&format!("relation {r}\n"));
    }
    if commutative {
        out.push_str("commutative\n");
    }
    out.push_str(&format!("truncate {}\n", family.truncation_hint()));
    out
}

fn cartan_2b(k: i64, s: i64) -> Vec<Vec<i64>> {
    vec![vec![4 * k, 2 * k], vec![2 * k, k + s]]
}

fn cartan_3k(a: i64, b: i64, c: i64) -> Vec<Vec<i64>> {
    vec![vec![a + b, a, b], vec![a, a + c, c], vec![b, c, b + c]]
}

/// Values stated in the literature for the entry.
pub fn expected_values(family: &FamilyId) -> Expected {
    let i = |x: &u32| *x as i64;
    let z = |x: &u32| *x as usize;
    let mut e = Expected::default();
    match family {
        FamilyId::A1 { m, n } => {
            e.dim = Some(z(m) + z(n));
            e.dim_z = e.dim;
            e.cartan = Some(vec![vec![i(m) + i(n)]]);
        }
        FamilyId::C1 | FamilyId::B1 => {
            e.dim = Some(4);
            e.dim_z = Some(4);
            e.cartan = Some(vec![vec![4]]);
        }
        FamilyId::D1A1 { k } | FamilyId::D1A2 { k, .. } => {
            e.dim = Some(4 * z(k));
            e.dim_z = Some(z(k) + 3);
            e.cartan = Some(vec![vec![4 * i(k)]]);
        }
        FamilyId::SD1A1 { k } | FamilyId::SD1A2 { k, .. } | FamilyId::Q1A1 { k } | FamilyId::Q1A2 { k, .. } => {
            e.dim = Some(4 * z(k));
            e.dim_z = Some(z(k) + 3);
            e.dim_r = Some(1);
            e.cartan = Some(vec![vec![4 * i(k)]]);
        }
        FamilyId::D2B { k, s, .. } => e.det = Some(4 * i(k) * i(s)),
        FamilyId::SD2B1 { k, t: s, .. } | FamilyId::SD2B2 { k, t: s, .. } | FamilyId::Q2B1 { k, s, .. } => {
            e.dim_z = Some(z(k) + z(s) + 2);
            e.dim_r = Some(2);
            e.cartan = Some(cartan_2b(i(k), i(s)));
            e.det = Some(4 * i(k) * i(s));
        }
        FamilyId::SD3K { a, b, c } | FamilyId::Q3K { a, b, c } => {
            e.dim_z = Some(z(a) + z(b) + z(c) + 1);
            e.dim_r = Some(3);
            e.cartan = Some(cartan_3k(i(a), i(b), i(c)));
            e.det = Some(4 * i(a) * i(b) * i(c));
        }
        FamilyId::Q3A1 { .. } => {
            e.dim_z = Some(6);
            e.dim_r = Some(3);
            e.cartan = Some(vec![vec![4, 2, 2], vec![2, 3, 1], vec![2, 1, 3]]);
        }
        FamilyId::D3K { .. } | FamilyId::D3R { .. } => {}
    }
    if e.dim.is_none() {
        if let Some(c) = &e.cartan {
            e.dim = Some(c.iter().flatten().sum::<i64>() as usize);
        }
    }
    e
}

/// Validates the parameters and produces the entry's presentation.
pub fn make_entry(family: FamilyId, field: &Field) -> Result<CatalogEntry> {
    make_entry_with(family, field, Validation::Strict)
}

pub fn make_entry_with(family: FamilyId, field: &Field, validation: Validation) -> Result<CatalogEntry> {
    check(&family, field, validation)?;
    let text = presentation_text(&family, field);
    let presentation = parse_presentation(&text, Some(field))?;
    let metadata = Metadata {
        rep_type: family.rep_type(),
        n_simples: family.n_simples(),
        special_biserial: family.special_biserial(),
        char_two_only: family.spec().char_two_only,
        truncation_hint: family.truncation_hint(),
        expected: expected_values(&family),
    };
    Ok(CatalogEntry {
        family,
        field: field.clone(),
        text,
        presentation,
        metadata,
    })
}

/// Cartan matrix of an entry as stated in the literature, as an integer matrix.
pub fn expected_cartan(e: &CatalogEntry) -> Option<MatrixZ> {
    e.metadata
        .expected
        .cartan
        .as_ref()
        .map(|rows| MatrixZ::from_rows(rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockSpec {
    pub rep_type: RepType,
    pub defect: u32,
    pub n_simples: usize,
}

/// Largest defect accepted for block tables; `2^(n-2)` sets the size of the
/// algebras.
pub const MAX_DEFECT: u32 = 8;

/// The derived-equivalence representatives of tame blocks (over `F_2`) of a
/// given type, defect and number of simple modules.
pub fn tame_block_entries(b: BlockSpec) -> Result<Vec<CatalogEntry>> {
    let n = b.defect;
    if n < b.rep_type.min_defect() || n > MAX_DEFECT {
        return Err(Error::ParameterConstraint(format!(
            "{} blocks need defect {} <= n <= {MAX_DEFECT}, got {n}",
            b.rep_type,
            b.rep_type.min_defect()
        )));
    }
    if !(1..=3).contains(&b.n_simples) {
        return Err(Error::ParameterConstraint(format!(
            "number of simple modules must be 1, 2 or 3, got {}",
            b.n_simples
        )));
    }
    let q = 1u32 << (n - 2);
    let one = || "1".to_string();
    let zero = || "0".to_string();
    let families: Vec<FamilyId> = match (b.rep_type, b.n_simples) {
        (RepType::Dihedral, 1) if q == 1 => vec![FamilyId::C1],
        (RepType::Dihedral, 1) => vec![FamilyId::D1A1 { k: q }],
        (RepType::Dihedral, 2) if n < 3 => vec![],
        (RepType::Dihedral, 2) => (0..2).map(|c| FamilyId::D2B { k: 1, s: q, c }).collect(),
        (RepType::Dihedral, _) => vec![FamilyId::D3K { a: q, b: 1, c: 1 }],
        (RepType::Semidihedral, 1) => vec![FamilyId::SD1A1 { k: q }],
        (RepType::Semidihedral, 2) => {
            let mut v: Vec<FamilyId> = (0..2).map(|c| FamilyId::SD2B1 { k: 1, t: q, c }).collect();
            v.extend((0..2).map(|c| FamilyId::SD2B2 { k: 2, t: q, c }));
            v
        }
        (RepType::Semidihedral, _) => vec![FamilyId::SD3K { a: q, b: 2, c: 1 }],
        (RepType::Quaternion, 1) => vec![FamilyId::Q1A1 { k: q }],
        (RepType::Quaternion, 2) => vec![
            FamilyId::Q2B1 { k: 2, s: q, a: one(), c: zero() },
            FamilyId::Q2B1 { k: 2, s: q, a: one(), c: one() },
        ],
        (RepType::Quaternion, _) => vec![FamilyId::Q3K { a: q, b: 2, c: 2 }],
    };
    let f2 = Field::prime(2)?;
    families
        .into_iter()
        .map(|fam| make_entry_with(fam, &f2, Validation::Relaxed))
        .collect()
}

/// Stable centre dimension of block representatives as stated in the
/// literature, where it is stated.
pub fn expected_block_stable_centre(family: &FamilyId, defect: u32) -> Option<usize> {
    let q = 1usize << (defect - 2);
    match family {
        FamilyId::D2B { c: 1, .. } => Some(q + 2),
        FamilyId::SD1A1 { .. } | FamilyId::SD3K { .. } | FamilyId::Q1A1 { .. } => Some(q + 3),
        FamilyId::SD2B1 { .. } => Some(q + 2),
        FamilyId::SD2B2 { .. } | FamilyId::Q2B1 { .. } => Some(q + 4),
        FamilyId::Q3K { .. } => Some(q + 5),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        if p == 0 {
            Field::rationals()
        } else {
            Field::prime(p).unwrap()
        }
    }

    #[test]
    fn eighteen_families() {
        assert_eq!(list_families().len(), 18);
        assert!(list_families().iter().find(|i| i.code == "B1").unwrap().char_two_only);
    }

    #[test]
    fn parse_named_and_positional() {
        let a = FamilyId::parse("D2B", "k=2,s=1,c=1").unwrap();
        let b = FamilyId::parse("d2b", "2,1,1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "D2B(k=2,s=1,c=1)");
        assert_eq!(a.label(), "D(2B)^{2,1}(1)");
        assert!(matches!(FamilyId::parse("D9", ""), Err(Error::UnknownFamily(_))));
        assert!(matches!(FamilyId::parse("D1A1", "q=2"), Err(Error::ParameterConstraint(_))));
        assert_eq!(FamilyId::parse("C1", "").unwrap(), FamilyId::C1);
    }

    #[test]
    fn d1a1_relations() {
        let e = make_entry(FamilyId::D1A1 { k: 2 }, &f(2)).unwrap();
        assert_eq!(e.presentation.relations.len(), 3);
        let rels = e.presentation.format_relations();
        assert!(rels.contains(&"XX".to_string()), "{rels:?}");
        assert!(rels.contains(&"YY".to_string()), "{rels:?}");
    }

    #[test]
    fn constraint_errors() {
        assert!(matches!(
            make_entry(FamilyId::SD3K { a: 1, b: 1, c: 1 }, &f(3)),
            Err(Error::ParameterConstraint(_))
        ));
        assert!(matches!(
            make_entry(FamilyId::Q3A1 { d: "1".into() }, &f(2)),
            Err(Error::ParameterConstraint(_))
        ));
        assert!(matches!(make_entry(FamilyId::B1, &f(3)), Err(Error::CharConstraint(_))));
        assert!(matches!(
            make_entry(FamilyId::D2B { k: 1, s: 1, c: 1 }, &f(0)),
            Err(Error::CharConstraint(_))
        ));
        assert!(matches!(
            make_entry(FamilyId::Q3K { a: 2, b: 2, c: 1 }, &f(2)),
            Err(Error::ParameterConstraint(_))
        ));
        assert!(make_entry(FamilyId::D2B { k: 1, s: 2, c: 0 }, &f(2)).is_err());
        assert!(make_entry_with(FamilyId::D2B { k: 1, s: 2, c: 0 }, &f(2), Validation::Relaxed).is_ok());
    }

    #[test]
    fn special_biserial_flags() {
        assert!(FamilyId::D2B { k: 1, s: 1, c: 0 }.special_biserial());
        assert!(!FamilyId::D2B { k: 1, s: 1, c: 1 }.special_biserial());
        assert!(!FamilyId::B1.special_biserial());
        assert!(FamilyId::C1.special_biserial());
        assert!(!FamilyId::SD1A1 { k: 2 }.special_biserial());
    }

    #[test]
    fn block_representatives() {
        let e = tame_block_entries(BlockSpec { rep_type: RepType::Dihedral, defect: 3, n_simples: 2 }).unwrap();
        let fams: Vec<_> = e.iter().map(|x| x.family.clone()).collect();
        assert_eq!(fams, vec![FamilyId::D2B { k: 1, s: 2, c: 0 }, FamilyId::D2B { k: 1, s: 2, c: 1 }]);
        let e = tame_block_entries(BlockSpec { rep_type: RepType::Semidihedral, defect: 4, n_simples: 3 }).unwrap();
        assert_eq!(e[0].family, FamilyId::SD3K { a: 4, b: 2, c: 1 });
        let e = tame_block_entries(BlockSpec { rep_type: RepType::Quaternion, defect: 3, n_simples: 1 }).unwrap();
        assert_eq!(e[0].family, FamilyId::Q1A1 { k: 2 });
        assert!(tame_block_entries(BlockSpec { rep_type: RepType::Semidihedral, defect: 3, n_simples: 1 }).is_err());
    }

    #[test]
    fn presentation_text_round_trips() {
        let fam = FamilyId::Q3A1 { d: "g".into() };
        let field = Field::extension(2, 2, None).unwrap();
        let e = make_entry(fam, &field).unwrap();
        let again = parse_presentation(&e.text, None).unwrap();
        assert_eq!(again.field, field);
        assert_eq!(again.relations, e.presentation.relations);
    }
}
