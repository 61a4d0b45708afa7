//! Finite-dimensional quotient path algebras with exact structure constants.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::integer::MatrixZ;
use crate::linalg::{axpy, is_zero_vec, unit_vector, MatrixF, Subspace};
use crate::presentation::Presentation;
use crate::quiver::{Path, PathPoly, Quiver};
use crate::rewriting::{ceiling_from_env, RewriteSystem};

/// Coefficient vector over an algebra's basis.
pub type Element = Vec<Scalar>;

#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    quiver: Quiver,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    table: Vec<Vec<(usize, Scalar)>>,
    idempotents: Vec<usize>,
    arrows: Vec<Element>,
    rewriting: RewriteSystem,
    radical_dims: Vec<usize>,
    truncation_hint: Option<usize>,
}

/// Builds the algebra of a presentation. Relations are completed into a
/// rewriting system; normal words form the basis. The arrow ideal must be
/// nilpotent, which is certified by computing the radical series to zero.
pub fn build_algebra(p: &Presentation) -> Result<Algebra> {
    build_algebra_with_ceiling(p, ceiling_from_env())
}

pub fn build_algebra_with_ceiling(p: &Presentation, ceiling: usize) -> Result<Algebra> {
    let f = &p.field;
    let rewriting = RewriteSystem::complete(f, &p.relations, ceiling)?;
    let basis = rewriting.normal_words(&p.quiver, ceiling)?;
    let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let n = basis.len();
    let to_vec = |poly: &PathPoly| -> Vec<(usize, Scalar)> {
        let mut v: Vec<(usize, Scalar)> = poly.terms().map(|(w, c)| (index[w], c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let table: Vec<Vec<(usize, Scalar)>> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            match basis[i].concat(&basis[j]) {
                Some(w) => to_vec(&rewriting.reduce(PathPoly::monomial(f, w, f.one()))),
                None => Vec::new(),
            }
        })
        .collect();
    let idempotents: Vec<usize> = (0..p.quiver.vertex_count())
        .map(|v| index[&Path::trivial(v)])
        .collect();
    let arrows: Vec<Element> = (0..p.quiver.arrows().len())
        .map(|a| {
            let poly = rewriting.reduce(PathPoly::monomial(f, p.quiver.path_of_arrow(a), f.one()));
            let mut v = vec![f.zero(); n];
            for (i, c) in to_vec(&poly) {
                v[i] = c;
            }
            v
        })
        .collect();
    let mut alg = Algebra {
        field: f.clone(),
        quiver: p.quiver.clone(),
        basis,
        index,
        table,
        idempotents,
        arrows,
        rewriting,
        radical_dims: Vec::new(),
        truncation_hint: p.truncation_hint,
    };
    alg.radical_dims = alg.compute_radical_dims()?;
    Ok(alg)
}

impl Algebra {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_label(&self, i: usize) -> String {
        self.quiver.format_path(&self.basis[i])
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn idempotent_indices(&self) -> &[usize] {
        &self.idempotents
    }

    /// Basis positions of arrows that are themselves normal words.
    pub fn arrow_indices(&self) -> Vec<Option<usize>> {
        (0..self.quiver.arrows().len())
            .map(|a| self.index.get(&self.quiver.path_of_arrow(a)).copied())
            .collect()
    }

    pub fn arrow_elements(&self) -> &[Element] {
        &self.arrows
    }

    pub fn vertex_of(&self, i: usize) -> (usize, usize) {
        (self.basis[i].start, self.basis[i].end)
    }

    pub fn rewriting(&self) -> &RewriteSystem {
        &self.rewriting
    }

    pub fn truncation_hint(&self) -> Option<usize> {
        self.truncation_hint
    }

    /// `b_i * b_j` as sparse coordinates.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn zero(&self) -> Element {
        vec![self.field.zero(); self.dim()]
    }

    pub fn one(&self) -> Element {
        let mut v = self.zero();
        for &i in &self.idempotents {
            v[i] = self.field.one();
        }
        v
    }

    pub fn basis_element(&self, i: usize) -> Element {
        unit_vector(&self.field, self.dim(), i)
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Element> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: v.len(),
                });
            }
        }
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let f = &self.field;
        let n = self.dim();
        let mut out = self.zero();
        let ys: Vec<usize> = (0..n).filter(|&j| !f.is_zero(&y[j])).collect();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for &j in &ys {
                let c = f.mul(a, &y[j]);
                for (k, s) in &self.table[i * n + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, s));
                }
            }
        }
        out
    }

    pub fn commutator(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let f = &self.field;
        let mut out = self.mul(x, y);
        axpy(f, &mut out, &f.from_i64(-1), &self.mul(y, x));
        out
    }

    pub fn power(&self, x: &[Scalar], mut e: u64) -> Element {
        let mut base = x.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Normal form of an arbitrary path combination, as an element.
    pub fn element_of(&self, poly: &PathPoly) -> Element {
        let mut v = self.zero();
        for (w, c) in self.rewriting.reduce(poly.clone()).terms() {
            v[self.index[w]] = c.clone();
        }
        v
    }

    pub fn format_element(&self, x: &[Scalar]) -> String {
        let mut poly = PathPoly::zero();
        for (i, c) in x.iter().enumerate() {
            poly.add_term(&self.field, self.basis[i].clone(), c.clone());
        }
        poly.format(&self.field, &self.quiver)
    }

    /// Cartan matrix: entry `(i, j)` is `dim e_i A e_j`.
    pub fn cartan_matrix(&self) -> MatrixZ {
        let n = self.quiver.vertex_count();
        let mut counts = vec![vec![0i64; n]; n];
        for b in &self.basis {
            counts[b.start][b.end] += 1;
        }
        MatrixZ::from_rows(&counts)
    }

    /// Rows `b_i * y` (if `left` is false) or `y * b_i` (if true), one per basis element.
    pub fn multiplication_rows(&self, y: &[Scalar], left: bool) -> Vec<Element> {
        (0..self.dim())
            .into_par_iter()
            .map(|i| {
                let b = self.basis_element(i);
                if left {
                    self.mul(y, &b)
                } else {
                    self.mul(&b, y)
                }
            })
            .collect()
    }

    /// `{x : x * g = g * x}` for all `g` in `gens`.
    pub fn centralizer(&self, gens: &[Element]) -> Subspace {
        let f = &self.field;
        let mut rows: Vec<Element> = Vec::new();
        for g in gens {
            let cols: Vec<Element> = (0..self.dim())
                .into_par_iter()
                .map(|i| self.commutator(&self.basis_element(i), g))
                .collect();
            rows.extend(transpose(&cols, self.dim()));
        }
        kernel_of_rows(f, rows, self.dim())
    }

    /// `{x : x * g = 0 for all g}` (right annihilator of the set when `left` is false).
    pub fn annihilator_of(&self, gens: &[Element], left: bool) -> Subspace {
        let f = &self.field;
        let mut rows = Vec::new();
        for g in gens {
            let cols = self.multiplication_rows(g, !left);
            rows.extend(transpose(&cols, self.dim()));
        }
        kernel_of_rows(f, rows, self.dim())
    }

    /// Elements killed by every arrow on the right (`left = false`) or on the left.
    pub fn arrow_annihilator(&self, left: bool) -> Subspace {
        self.annihilator_of(&self.arrows, left)
    }

    /// Two-sided socle `{x : xJ = 0 and Jx = 0}`.
    pub fn socle(&self) -> Subspace {
        self.arrow_annihilator(false)
            .intersect(&self.arrow_annihilator(true))
            .expect("same ambient space")
    }

    /// Subspace spanned by basis words of positive length.
    pub fn radical(&self) -> Subspace {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| !self.basis[i].is_trivial()).collect();
        Subspace::coordinate(&self.field, self.dim(), &idx)
    }

    /// `J^{i+1} = span{x a : x in J^i, a an arrow}`.
    pub fn radical_power(&self, prev: &Subspace) -> Subspace {
        let vectors: Vec<Element> = (0..prev.dim())
            .into_par_iter()
            .flat_map_iter(|i| {
                let x = prev.vector(i).to_vec();
                self.arrows.iter().map(move |a| self.mul(&x, a))
            })
            .collect();
        Subspace::span(&self.field, self.dim(), vectors)
    }

    fn compute_radical_dims(&self) -> Result<Vec<usize>> {
        let mut dims = vec![self.dim()];
        let mut j = self.radical();
        loop {
            dims.push(j.dim());
            if j.dim() == 0 {
                return Ok(dims);
            }
            let next = self.radical_power(&j);
            if next.dim() == j.dim() {
                return Err(Error::Consistency(
                    "the arrow ideal is not nilpotent modulo the relations".into(),
                ));
            }
            j = next;
        }
    }

    /// Dimensions of `J^0 ⊃ J^1 ⊃ ... ⊃ J^L = 0`.
    pub fn radical_power_dims(&self) -> &[usize] {
        &self.radical_dims
    }

    pub fn loewy_length(&self) -> usize {
        self.radical_dims.len() - 1
    }

    /// Dimensions of `A / J^N` for `N = L` and `N = L + 1`, with `L` the Loewy
    /// length: equal exactly when truncating paths at length `L` loses nothing.
    pub fn truncation_certificate(&self) -> (usize, usize) {
        let l = self.loewy_length();
        let at = |n: usize| self.dim() - self.radical_dims.get(n).copied().unwrap_or(0);
        (at(l), at(l + 1))
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on all triples, or on `samples`
    /// pseudo-random triples when given.
    pub fn check_associativity(&self, samples: Option<usize>) -> Result<usize> {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = match samples {
            None => (0..n * n * n).map(|t| (t / (n * n), (t / n) % n, t % n)).collect(),
            Some(count) => {
                let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
                (0..count)
                    .map(|_| {
                        let mut next = || {
                            state ^= state << 13;
                            state ^= state >> 7;
                            state ^= state << 17;
                            (state % n as u64) as usize
                        };
                        (next(), next(), next())
                    })
                    .collect()
            }
        };
        let bad = triples.par_iter().find_any(|&&(i, j, k)| {
            let (bi, bj, bk) = (self.basis_element(i), self.basis_element(j), self.basis_element(k));
            self.mul(&self.mul(&bi, &bj), &bk) != self.mul(&bi, &self.mul(&bj, &bk))
        });
        match bad {
            Some(&(i, j, k)) => Err(Error::Consistency(format!(
                "associativity fails on ({}, {}, {})",
                self.basis_label(i),
                self.basis_label(j),
                self.basis_label(k)
            ))),
            None => Ok(triples.len()),
        }
    }

    /// Checks that the sum of the vertex idempotents is a two-sided identity.
    pub fn check_identity(&self) -> bool {
        let one = self.one();
        (0..self.dim()).all(|i| {
            let b = self.basis_element(i);
            self.mul(&one, &b) == b && self.mul(&b, &one) == b
        })
    }

    pub fn is_zero(&self, x: &[Scalar]) -> bool {
        is_zero_vec(&self.field, x)
    }
}

pub(crate) fn transpose(cols: &[Element], n: usize) -> Vec<Element> {
    (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// Kernel of the matrix with the given rows.
pub(crate) fn kernel_of_rows(f: &Field, rows: Vec<Element>, n: usize) -> Subspace {
    if rows.is_empty() {
        return Subspace::full(f, n);
    }
    MatrixF::from_rows(f, n, rows).expect("rectangular").kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn build(text: &str) -> Algebra {
        build_algebra(&parse_presentation(text, None).unwrap()).unwrap()
    }

    const C1: &str = "field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\ncommutative\n";

    #[test]
    fn c1_structure() {
        let a = build(C1);
        assert_eq!(a.dim(), 4);
        assert_eq!(a.radical_power_dims(), &[4, 3, 1, 0]);
        assert_eq!(a.socle().dim(), 1);
        assert_eq!(a.cartan_matrix(), MatrixZ::from_rows(&[vec![4]]));
        assert!(a.check_identity());
        a.check_associativity(None).unwrap();
    }

    #[test]
    fn semisimple_field() {
        let a = build("field char=0\nvertices 1\n");
        assert_eq!(a.dim(), 1);
        assert_eq!(a.radical_power_dims(), &[1, 0]);
        assert_eq!(a.socle().dim(), 1);
    }

    #[test]
    fn dihedral_local_dimension() {
        let a = build("field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nparam k=2\nrelation X^2\nrelation Y^2\nrelation (XY)^k - (YX)^k\n");
        assert_eq!(a.dim(), 8);
        let x = a.arrow_elements()[0].clone();
        assert!(a.is_zero(&a.multiply(&x, &x).unwrap()));
    }

    #[test]
    fn commutative_a1() {
        let a = build("field char=0\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation XY\nrelation X^3 - Y^2\ncommutative\n");
        assert_eq!(a.dim(), 5);
        assert_eq!(a.radical_power_dims(), &[5, 4, 2, 1, 0]);
    }

    #[test]
    fn idempotent_arrow_ideal_detected() {
        let p = parse_presentation("field char=0\nvertices 1\narrow X 0 0\nrelation X - X^2\n", None).unwrap();
        assert!(matches!(build_algebra(&p), Err(Error::Consistency(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let a = build(C1);
        assert!(matches!(
            a.multiply(&a.one(), &[]),
            Err(Error::DimensionMismatch { expected: 4, got: 0 })
        ));
    }
}
