//! Centre, socle, symmetrizing forms, Higman and Reynolds ideals, stable
//! centres, stable Grothendieck groups, and fingerprints of commutative algebras.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{kernel_of_rows, transpose, Algebra, Element};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::integer::{smith_normal_form, MatrixZ};
use crate::linalg::{axpy, dot, kernel_additive_map, restrict_scalars, MatrixF, Subspace};

/// A finite-dimensional commutative algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct CommAlgebra {
    field: Field,
    labels: Vec<String>,
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Element,
}

impl CommAlgebra {
    /// Structure of a multiplicatively closed subspace of `a` containing 1.
    pub fn from_subalgebra(a: &Algebra, s: &Subspace) -> Result<CommAlgebra> {
        let n = s.dim();
        let basis: Vec<Element> = s.basis_vectors();
        let table: Vec<Vec<(usize, Scalar)>> = (0..n * n)
            .into_par_iter()
            .map(|ij| {
                let prod = a.mul(&basis[ij / n], &basis[ij % n]);
                s.coordinates(&prod)
                    .map(|c| sparse(a.field(), &c))
                    .ok_or_else(|| Error::Consistency("subspace is not closed under multiplication".into()))
            })
            .collect::<Result<_>>()?;
        let unit = s
            .coordinates(&a.one())
            .ok_or_else(|| Error::Consistency("subspace does not contain the identity".into()))?;
        let labels = basis.iter().map(|b| a.format_element(b)).collect();
        let z = CommAlgebra {
            field: a.field().clone(),
            labels,
            table,
            unit,
        };
        if !z.is_commutative() {
            return Err(Error::Consistency("subalgebra is not commutative".into()));
        }
        Ok(z)
    }

    /// The commutative algebra underlying a built algebra (which must be commutative).
    pub fn from_algebra(a: &Algebra) -> Result<CommAlgebra> {
        CommAlgebra::from_subalgebra(a, &Subspace::full(a.field(), a.dim()))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![f.zero(); n];
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

    pub fn power(&self, x: &[Scalar], mut e: u64) -> Element {
        let mut base = x.to_vec();
        let mut acc = self.unit.clone();
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

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.table[i * n + j] == self.table[j * n + i]))
    }

    fn products(&self, xs: &[Element], ys: &[Element]) -> Subspace {
        let vectors: Vec<Element> = xs
            .par_iter()
            .flat_map_iter(|x| ys.iter().map(move |y| self.mul(x, y)))
            .collect();
        Subspace::span(&self.field, self.dim(), vectors)
    }

    /// `{x : x s = 0 for all s in gens}`.
    pub fn annihilator(&self, gens: &[Element]) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for g in gens {
            let cols: Vec<Element> = (0..n).map(|i| self.mul(&self.basis_element(i), g)).collect();
            rows.extend(transpose(&cols, n));
        }
        kernel_of_rows(&self.field, rows, n)
    }

    /// Image of `x -> x^{p^j}` as a map on the prime-field restriction of `s`:
    /// returns the matrix of images (one row per prime-field basis vector).
    fn frobenius_images(&self, s: &Subspace, j: u32) -> MatrixF {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let q = p.pow(j);
        let prime = f.prime_subfield();
        let scalars = f.power_basis();
        let rows: Vec<Element> = (0..s.dim())
            .into_par_iter()
            .flat_map_iter(|i| {
                let v = s.vector(i).to_vec();
                scalars.iter().map(move |c| {
                    let x: Element = v.iter().map(|t| f.mul(c, t)).collect();
                    restrict_scalars(f, &self.power(&x, q))
                }).collect::<Vec<_>>()
            })
            .collect();
        MatrixF::from_rows(&prime, self.dim() * f.degree() as usize, rows).expect("rectangular")
    }

    /// Prime-field kernel of `x -> x^{p^j}` on `s`, as a subspace over the algebra's field.
    fn frobenius_kernel(&self, s: &Subspace, j: u32) -> Subspace {
        let f = &self.field;
        let images = self.frobenius_images(s, j);
        let kernel = kernel_additive_map(&images);
        let scalars = f.power_basis();
        let vectors = kernel
            .basis_vectors()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![f.zero(); self.dim()];
                for (idx, c) in coeffs.iter().enumerate() {
                    let (i, t) = (idx / scalars.len(), idx % scalars.len());
                    if !f.is_zero(c) {
                        let scaled: Element = s.vector(i).iter().map(|x| f.mul(&scalars[t], x)).collect();
                        axpy(f, &mut v, c, &scaled);
                    }
                }
                v
            })
            .collect();
        Subspace::span(f, self.dim(), vectors)
    }

    /// Nilradical (the Jacobson radical of a commutative algebra).
    pub fn radical(&self) -> Subspace {
        let f = &self.field;
        let n = self.dim();
        if n == 0 {
            return Subspace::zero(f, 0);
        }
        if f.is_rational() {
            // trace-form radical: {x : Tr(L_{xy}) = 0 for all y}
            let traces: Vec<Scalar> = (0..n)
                .map(|k| {
                    let bk = self.basis_element(k);
                    let mut t = f.zero();
                    for i in 0..n {
                        let prod = self.mul(&bk, &self.basis_element(i));
                        t = f.add(&t, &prod[i]);
                    }
                    t
                })
                .collect();
            let rows: Vec<Element> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let prod = self.mul(&self.basis_element(i), &self.basis_element(j));
                            dot(f, &prod, &traces)
                        })
                        .collect()
                })
                .collect();
            return kernel_of_rows(f, rows, n);
        }
        let p = f.characteristic() as usize;
        let mut e = 0;
        let mut pe = 1;
        while pe < n {
            pe *= p;
            e += 1;
        }
        self.frobenius_kernel(&Subspace::full(f, n), e.max(1))
    }

    pub fn radical_powers(&self) -> Vec<Subspace> {
        let rad = self.radical();
        let rad_basis = rad.basis_vectors();
        let mut out = vec![Subspace::full(&self.field, self.dim()), rad.clone()];
        let mut cur = rad;
        while cur.dim() > 0 {
            let next = self.products(&cur.basis_vectors(), &rad_basis);
            if next.dim() == cur.dim() {
                break;
            }
            out.push(next.clone());
            cur = next;
        }
        out
    }

    pub fn loewy_length(&self) -> usize {
        self.radical_powers().len() - 1
    }

    pub fn fingerprint(&self) -> Fingerprint {
        fingerprint(self)
    }

    /// `self / ideal`, where `ideal` is given in this algebra's coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<CommAlgebra> {
        quotient_comm(self, ideal)
    }
}

fn sparse(f: &Field, v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Quotient of a commutative algebra by an ideal, on the complement of the
/// ideal's pivot coordinates.
pub fn quotient_comm(z: &CommAlgebra, ideal: &Subspace) -> Result<CommAlgebra> {
    let f = &z.field;
    if ideal.ambient_dim() != z.dim() {
        return Err(Error::AmbientMismatch(ideal.ambient_dim(), z.dim()));
    }
    for i in 0..ideal.dim() {
        for j in 0..z.dim() {
            if !ideal.contains(&z.mul(ideal.vector(i), &z.basis_element(j))) {
                return Err(Error::NotAnIdeal);
            }
        }
    }
    let keep = ideal.complement_indices();
    let m = keep.len();
    let project = |v: &[Scalar]| -> Element {
        let r = ideal.reduce(v);
        keep.iter().map(|&k| r[k].clone()).collect()
    };
    let table = (0..m * m)
        .map(|ij| {
            let prod = z.mul(&z.basis_element(keep[ij / m]), &z.basis_element(keep[ij % m]));
            sparse(f, &project(&prod))
        })
        .collect();
    Ok(CommAlgebra {
        field: f.clone(),
        labels: keep.iter().map(|&k| z.labels[k].clone()).collect(),
        table,
        unit: project(&z.unit),
    })
}

/// Sound but incomplete isomorphism profile of a commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub loewy_dims: Vec<usize>,
    pub socle_series_dims: Vec<usize>,
    pub min_generators: usize,
    pub frobenius_kernel_dims: Vec<usize>,
    pub frobenius_image_dims: Vec<usize>,
    pub extension_degree: u32,
}

pub fn fingerprint(z: &CommAlgebra) -> Fingerprint {
    let f = &z.field;
    let powers = z.radical_powers();
    let mut loewy_dims: Vec<usize> = powers.iter().map(|s| s.dim()).collect();
    if loewy_dims.last() != Some(&0) {
        loewy_dims.push(0);
    }
    let socle_series_dims = powers
        .iter()
        .map(|s| z.annihilator(&s.basis_vectors()).dim())
        .collect();
    let min_generators = loewy_dims[1] - loewy_dims.get(2).copied().unwrap_or(0);
    let (mut kernels, mut images) = (Vec::new(), Vec::new());
    if !f.is_rational() && z.dim() > 0 {
        let full = Subspace::full(f, z.dim());
        for j in 1..=3 {
            let m = f.degree() as usize;
            kernels.push(z.frobenius_kernel(&powers[1], j).dim() * m);
            images.push(z.frobenius_images(&full, j).rank());
        }
    }
    Fingerprint {
        dim: z.dim(),
        loewy_dims,
        socle_series_dims,
        min_generators,
        frobenius_kernel_dims: kernels,
        frobenius_image_dims: images,
        extension_degree: f.degree(),
    }
}

pub fn loewy_length(z: &CommAlgebra) -> usize {
    z.loewy_length()
}

/// Centre of `a` and its multiplication.
pub fn centre(a: &Algebra) -> Result<(CommAlgebra, Subspace)> {
    let mut gens: Vec<Element> = a.idempotent_indices().iter().map(|&i| a.basis_element(i)).collect();
    gens.extend(a.arrow_elements().iter().cloned());
    let z = a.centralizer(&gens);
    Ok((CommAlgebra::from_subalgebra(a, &z)?, z))
}

pub fn socle(a: &Algebra) -> Subspace {
    a.socle()
}

/// Span of all commutators `b_i b_j - b_j b_i`.
pub fn commutator_space(a: &Algebra) -> Subspace {
    let n = a.dim();
    let vectors: Vec<Element> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).map(move |j| a.commutator(&a.basis_element(i), &a.basis_element(j)))
        })
        .collect();
    Subspace::span(a.field(), n, vectors)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coefficients: Vec<Scalar>,
}

impl LinearForm {
    pub fn eval(&self, f: &Field, x: &[Scalar]) -> Scalar {
        dot(f, &self.coefficients, x)
    }
}

/// Gram matrix `(λ(b_i b_j))`.
pub fn gram_matrix(a: &Algebra, form: &LinearForm) -> MatrixF {
    let f = a.field();
    let n = a.dim();
    let rows = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = f.zero();
                    for (k, c) in a.product_of_basis(i, j) {
                        s = f.add(&s, &f.mul(c, &form.coefficients[*k]));
                    }
                    s
                })
                .collect()
        })
        .collect();
    MatrixF::from_rows(f, n, rows).expect("square")
}

/// A nondegenerate form vanishing on `[A, A]`. Candidates are tried in a fixed
/// order: the echelon basis of the admissible forms, their sum, then a few
/// deterministic combinations.
pub fn symmetrizing_form(a: &Algebra) -> Result<LinearForm> {
    let f = a.field();
    let n = a.dim();
    let admissible = commutator_space(a).annihilator();
    let socle = a.socle();
    let basis = admissible.basis_vectors();
    let mut candidates: Vec<Element> = basis.clone();
    if basis.len() > 1 {
        let mut sum = vec![f.zero(); n];
        for b in &basis {
            axpy(f, &mut sum, &f.one(), b);
        }
        candidates.push(sum);
        let weights: Vec<Scalar> = match f.generator() {
            Some(g) => (0..basis.len() as u64).map(|i| f.pow(&g, i + 1)).collect(),
            None => (0..basis.len() as i64).map(|i| f.from_i64(i + 1)).collect(),
        };
        let mut combo = vec![f.zero(); n];
        for (b, w) in basis.iter().zip(&weights) {
            axpy(f, &mut combo, w, b);
        }
        candidates.push(combo);
    }
    for c in candidates {
        // a form vanishing on the socle is degenerate
        if (0..socle.dim()).all(|i| f.is_zero(&dot(f, &c, socle.vector(i)))) {
            continue;
        }
        let form = LinearForm { coefficients: c };
        if gram_matrix(a, &form).rank() == n {
            return Ok(form);
        }
    }
    Err(Error::NotSymmetric)
}

/// Dual basis `{b^i}` with `λ(b_i b^j) = δ_ij`.
pub fn dual_basis(a: &Algebra, form: &LinearForm) -> Result<Vec<Element>> {
    let inv = gram_matrix(a, form).inverse().map_err(|_| Error::DualBasisFailure)?;
    // b^j = sum_k inv[k][j] b_k, i.e. the j-th column of the inverse
    Ok(inv.transpose().row_vectors())
}

/// Image of the trace map `x -> sum_i b_i x b^i`.
pub fn higman_ideal(a: &Algebra, form: &LinearForm) -> Result<Subspace> {
    let dual = dual_basis(a, form)?;
    let n = a.dim();
    let images: Vec<Element> = (0..n)
        .into_par_iter()
        .map(|j| {
            let f = a.field();
            let bj = a.basis_element(j);
            let mut acc = a.zero();
            for (i, bi) in dual.iter().enumerate() {
                let left = a.mul(&a.basis_element(i), &bj);
                if a.is_zero(&left) {
                    continue;
                }
                let t = a.mul(&left, bi);
                axpy(f, &mut acc, &f.one(), &t);
            }
            acc
        })
        .collect();
    Ok(Subspace::span(a.field(), n, images))
}

/// `R(A) = Z(A) ∩ soc(A)`.
pub fn reynolds_ideal(a: &Algebra) -> Result<Subspace> {
    let (_, z) = centre(a)?;
    z.intersect(&a.socle())
}

/// Coordinates of a subspace of `A` inside the centre's echelon basis.
pub fn in_centre_coordinates(z: &Subspace, s: &Subspace) -> Result<Subspace> {
    let vectors = (0..s.dim())
        .map(|i| {
            z.coordinates(s.vector(i))
                .ok_or_else(|| Error::Consistency("subspace is not contained in the centre".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(z.field(), z.dim(), vectors))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StableGrothendieck {
    /// Elementary divisors greater than one, in divisibility order.
    #[serde(with = "crate::integer::decimal::vec")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl StableGrothendieck {
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn stable_grothendieck(c: &MatrixZ) -> StableGrothendieck {
    let snf = smith_normal_form(c);
    StableGrothendieck {
        torsion: snf.divisors.into_iter().filter(|d| !d.is_one()).collect(),
        free_rank: snf.cokernel_free_rank,
    }
}

/// Every invariant of a single algebra, computed once.
#[derive(Clone, Debug)]
pub struct AlgebraInvariants {
    pub centre: CommAlgebra,
    pub centre_space: Subspace,
    pub socle: Subspace,
    pub reynolds: Subspace,
    pub form: LinearForm,
    pub higman: Subspace,
    pub cartan: MatrixZ,
    pub stable_grothendieck: StableGrothendieck,
    /// `Z / R` and `Z / Z^pr`.
    pub z_mod_r: CommAlgebra,
    pub z_stable: CommAlgebra,
}

pub fn compute_invariants(a: &Algebra) -> Result<AlgebraInvariants> {
    let (centre, centre_space) = centre(a)?;
    let socle = a.socle();
    let reynolds = centre_space.intersect(&socle)?;
    let form = symmetrizing_form(a)?;
    let higman = higman_ideal(a, &form)?;
    let cartan = a.cartan_matrix();
    let stable_grothendieck = stable_grothendieck(&cartan);
    let z_mod_r = centre.quotient(&in_centre_coordinates(&centre_space, &reynolds)?)?;
    let z_stable = centre.quotient(&in_centre_coordinates(&centre_space, &higman)?)?;
    Ok(AlgebraInvariants {
        centre,
        centre_space,
        socle,
        reynolds,
        form,
        higman,
        cartan,
        stable_grothendieck,
        z_mod_r,
        z_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::presentation::parse_presentation;

    fn build(text: &str) -> Algebra {
        build_algebra(&parse_presentation(text, None).unwrap()).unwrap()
    }

    fn c1(ch: u32) -> Algebra {
        build(&format!(
            "field char={ch}\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\ncommutative\n"
        ))
    }

    #[test]
    fn c1_invariants() {
        for (ch, zpr) in [(2, 0), (0, 1), (3, 1)] {
            let a = c1(ch);
            let inv = compute_invariants(&a).unwrap();
            assert_eq!(inv.centre.dim(), 4);
            assert_eq!(inv.higman.dim(), zpr, "char {ch}");
            assert_eq!(inv.reynolds.dim(), 1);
            assert_eq!(inv.stable_grothendieck.describe(), "Z/4");
        }
    }

    #[test]
    fn c1_form_is_socle_coefficient() {
        let a = c1(2);
        let form = symmetrizing_form(&a).unwrap();
        let xy = a.index_of(&a.quiver().path(&[0, 1]).unwrap()).unwrap();
        let expected: Vec<Scalar> = (0..4).map(|i| if i == xy { a.field().one() } else { a.field().zero() }).collect();
        assert_eq!(form.coefficients, expected);
    }

    #[test]
    fn semisimple_form() {
        let a = build("field char=0\nvertices 1\n");
        let form = symmetrizing_form(&a).unwrap();
        assert_eq!(form.coefficients, vec![a.field().one()]);
    }

    #[test]
    fn field_fingerprint() {
        let a = build("field char=2\nvertices 1\n");
        let z = CommAlgebra::from_algebra(&a).unwrap();
        let fp = z.fingerprint();
        assert_eq!(fp.dim, 1);
        assert_eq!(fp.loewy_dims, vec![1, 0]);
        assert_eq!(fp.min_generators, 0);
        assert_eq!(z.loewy_length(), 1);
    }

    #[test]
    fn quotient_by_zero_ideal_is_identity() {
        let a = c1(0);
        let z = CommAlgebra::from_algebra(&a).unwrap();
        let q = z.quotient(&Subspace::zero(a.field(), 4)).unwrap();
        assert_eq!(q.fingerprint(), z.fingerprint());
    }

    #[test]
    fn non_ideal_rejected() {
        let a = c1(0);
        let z = CommAlgebra::from_algebra(&a).unwrap();
        // span of the identity is not an ideal
        let s = Subspace::span(a.field(), 4, vec![z.unit().to_vec()]);
        assert_eq!(z.quotient(&s).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn stable_grothendieck_examples() {
        let g = stable_grothendieck(&MatrixZ::from_rows(&[vec![8]]));
        assert_eq!(g.describe(), "Z/8");
        let g = stable_grothendieck(&MatrixZ::from_rows(&[vec![4, 2], vec![2, 3]]));
        assert_eq!(g.describe(), "Z/8");
    }
}
