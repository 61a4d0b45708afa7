//! Quivers, paths and linear combinations of paths.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Validates names, endpoints and connectivity.
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        if vertex_count == 0 {
            return Err(Error::Quiver("a quiver needs at least one vertex".into()));
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::Quiver(format!(
                    "arrow `{}` has an endpoint outside 0..{vertex_count}",
                    a.name
                )));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Quiver(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        let mut parent: Vec<usize> = (0..vertex_count).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for a in &arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            parent[x] = y;
        }
        let root = find(&mut parent, 0);
        if (0..vertex_count).any(|v| find(&mut parent, v) != root) {
            return Err(Error::Quiver("underlying graph is not connected".into()));
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn path_of_arrow(&self, i: usize) -> Path {
        Path {
            start: self.arrows[i].source,
            end: self.arrows[i].target,
            arrows: vec![i],
        }
    }

    /// Paths of the given arrow sequence, or `None` if consecutive arrows do not compose.
    pub fn path(&self, arrows: &[usize]) -> Option<Path> {
        let (&first, &last) = (arrows.first()?, arrows.last()?);
        arrows
            .windows(2)
            .all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
            .then(|| Path {
                start: self.arrows[first].source,
                end: self.arrows[last].target,
                arrows: arrows.to_vec(),
            })
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", p.start);
        }
        let short = p.arrows.iter().all(|&a| self.arrows[a].name.chars().count() == 1);
        let names: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join(if short { "" } else { "*" })
    }
}

/// A path read left to right; length-zero paths are vertex idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            start: v,
            end: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            start: self.start,
            end: other.end,
            arrows,
        })
    }
}

/// Degree-lexicographic order: length first, then arrow indices, then vertices.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.start.cmp(&other.start))
            .then_with(|| self.end.cmp(&other.end))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PathPoly {
    terms: BTreeMap<Path, Scalar>,
}

impl PathPoly {
    pub fn zero() -> PathPoly {
        PathPoly::default()
    }

    pub fn monomial(f: &Field, p: Path, c: Scalar) -> PathPoly {
        let mut out = PathPoly::zero();
        out.add_term(f, p, c);
        out
    }

    /// `c * (e_0 + ... + e_{n-1})`.
    pub fn scalar(f: &Field, n: usize, c: Scalar) -> PathPoly {
        let mut out = PathPoly::zero();
        for v in 0..n {
            out.add_term(f, Path::trivial(v), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(Path, Scalar)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, f: &Field, p: Path, c: Scalar) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(e.get(), &c);
                if f.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, f: &Field, other: &PathPoly, c: &Scalar) {
        for (p, x) in &other.terms {
            self.add_term(f, p.clone(), f.mul(c, x));
        }
    }

    pub fn scale(&self, f: &Field, c: &Scalar) -> PathPoly {
        let mut out = PathPoly::zero();
        out.add_scaled(f, self, c);
        out
    }

    pub fn mul(&self, f: &Field, other: &PathPoly) -> PathPoly {
        let mut out = PathPoly::zero();
        for (p, x) in &self.terms {
            for (q, y) in &other.terms {
                if let Some(pq) = p.concat(q) {
                    out.add_term(f, pq, f.mul(x, y));
                }
            }
        }
        out
    }

    /// `u * self * v` for paths `u`, `v`.
    pub fn sandwich(&self, f: &Field, u: &Path, v: &Path) -> PathPoly {
        let mut out = PathPoly::zero();
        for (p, x) in &self.terms {
            if let Some(w) = u.concat(p).and_then(|w| w.concat(v)) {
                out.add_term(f, w, x.clone());
            }
        }
        out
    }

    /// Common `(start, end)` of all terms, if they are parallel.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.start, first.end);
        it.all(|p| (p.start, p.end) == ends).then_some(ends)
    }

    pub fn format(&self, f: &Field, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let word = q.format_path(p);
            let coef = f.format(c);
            let (neg, coef) = match coef.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coef),
            };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if coef == "1" {
                out.push_str(&word);
            } else if coef.contains('+') {
                out.push_str(&format!("({coef})*{word}"));
            } else {
                out.push_str(&format!("{coef}*{word}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loops() -> Quiver {
        Quiver::new(
            1,
            vec![
                Arrow { name: "X".into(), source: 0, target: 0 },
                Arrow { name: "Y".into(), source: 0, target: 0 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn deglex_order() {
        let q = loops();
        let x = q.path(&[0]).unwrap();
        let yx = q.path(&[1, 0]).unwrap();
        let xy = q.path(&[0, 1]).unwrap();
        assert!(Path::trivial(0) < x);
        assert!(x < xy && xy < yx);
    }

    #[test]
    fn disconnected_quiver_rejected() {
        let err = Quiver::new(2, vec![]).unwrap_err();
        assert!(matches!(err, Error::Quiver(_)));
    }

    #[test]
    fn noncomposable_path() {
        let q = Quiver::new(
            2,
            vec![
                Arrow { name: "b".into(), source: 0, target: 1 },
                Arrow { name: "g".into(), source: 1, target: 0 },
            ],
        )
        .unwrap();
        assert!(q.path(&[0, 0]).is_none());
        assert_eq!(q.path(&[0, 1]).unwrap().end, 0);
    }
}
