//! Dense exact matrices, reduced row-echelon form, kernels and canonical subspaces.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixF {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub reduced: MatrixF,
    pub pivots: Vec<usize>,
}

fn check_scalar(field: &Field, s: &Scalar) -> Result<()> {
    match (s, field.order()) {
        (Scalar::Rational(_), None) => Ok(()),
        (Scalar::Finite(x), Some(q)) if *x < q => Ok(()),
        _ => Err(Error::FieldMismatch),
    }
}

impl MatrixF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatrixF {
        MatrixF {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatrixF {
        let mut m = MatrixF::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input and foreign scalars.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<MatrixF> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for s in &row {
                check_scalar(field, s)?;
            }
            entries.extend(row);
        }
        Ok(MatrixF {
            field: field.clone(),
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> MatrixF {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        MatrixF::from_rows(field, cols, data).expect("well-formed integer rows")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixF {
        let mut t = MatrixF::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixF) -> Result<MatrixF> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = MatrixF::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !f.is_zero(b) {
                        let idx = r * other.cols + c;
                        out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| dot(f, self.row(r), v))
            .collect())
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.row_vectors();
        let pivots = rref_rows(&self.field, &mut rows, self.cols);
        rows.truncate(pivots.len());
        let rank = pivots.len();
        let mut reduced = MatrixF::zeros(&self.field, self.rows, self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            reduced.entries[i * self.cols..(i + 1) * self.cols].clone_from_slice(&row);
        }
        Rref {
            rank,
            reduced,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vectors();
        rref_rows(&self.field, &mut rows, self.cols).len()
    }

    /// `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let mut rows = self.row_vectors();
        let pivots = rref_rows(&self.field, &mut rows, self.cols);
        kernel_from_rref(&self.field, &rows, &pivots, self.cols)
    }

    pub fn inverse(&self) -> Result<MatrixF> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let f = &self.field;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { f.one() } else { f.zero() }));
                row
            })
            .collect();
        let pivots = rref_rows(f, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let data = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        MatrixF::from_rows(f, n, data)
    }
}

pub fn dot(f: &Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

pub fn is_zero_vec(f: &Field, v: &[Scalar]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// `a + c * b` in place.
pub fn axpy(f: &Field, a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if f.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !f.is_zero(y) {
            *x = f.add(x, &f.mul(c, y));
        }
    }
}

trait Ops {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
}

struct RatOps;

impl Ops for RatOps {
    type E = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
}

struct FinOps<'a>(&'a Field);

impl Ops for FinOps<'_> {
    type E = u32;
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> u32 {
        self.0.inv_ff(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.0.mul_ff(*a, *b)
    }
    fn sub_mul(&self, a: &u32, b: &u32, c: &u32) -> u32 {
        self.0.add_ff(*a, self.0.neg_ff(self.0.mul_ff(*b, *c)))
    }
}

fn rref_generic<O: Ops>(ops: &O, rows: &mut Vec<Vec<O::E>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !ops.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ops.inv(&rows[r][c]);
        for x in rows[r][c..].iter_mut() {
            if !ops.is_zero(x) {
                *x = ops.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || ops.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !ops.is_zero(&pivot_row[j]) {
                    row[j] = ops.sub_mul(&row[j], &factor, &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row-reduces `rows` in place; the first `pivots.len()` rows are the nonzero
/// rows of the reduced echelon form.
pub fn rref_rows(f: &Field, rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    if f.is_rational() {
        let mut raw: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| match s {
                        Scalar::Rational(x) => x.clone(),
                        Scalar::Finite(_) => panic!("finite scalar over Q"),
                    })
                    .collect()
            })
            .collect();
        let pivots = rref_generic(&RatOps, &mut raw, cols);
        *rows = raw
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::Rational).collect())
            .collect();
        pivots
    } else {
        let mut raw: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| match s {
                        Scalar::Finite(x) => *x,
                        Scalar::Rational(_) => panic!("rational scalar over a finite field"),
                    })
                    .collect()
            })
            .collect();
        let pivots = rref_generic(&FinOps(f), &mut raw, cols);
        *rows = raw
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::Finite).collect())
            .collect();
        pivots
    }
}

fn kernel_from_rref(f: &Field, rows: &[Vec<Scalar>], pivots: &[usize], cols: usize) -> Subspace {
    let mut is_pivot = vec![None; cols];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            let x = &rows[i][free];
            if !f.is_zero(x) {
                v[p] = f.neg(x);
            }
        }
        basis.push(v);
    }
    Subspace::span(f, cols, basis)
}

/// Canonical subspace of `K^n`: its basis is in reduced row-echelon form, so
/// equal subspaces have identical records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: MatrixF,
    pivot_columns: Vec<usize>,
}

impl Subspace {
    pub fn span(f: &Field, ambient_dim: usize, mut vectors: Vec<Vec<Scalar>>) -> Subspace {
        assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        let pivots = rref_rows(f, &mut vectors, ambient_dim);
        vectors.truncate(pivots.len());
        let rows = pivots.len();
        Subspace {
            ambient_dim,
            basis: MatrixF {
                field: f.clone(),
                rows,
                cols: ambient_dim,
                entries: vectors.into_iter().flatten().collect(),
            },
            pivot_columns: pivots,
        }
    }

    pub fn zero(f: &Field, ambient_dim: usize) -> Subspace {
        Subspace::span(f, ambient_dim, Vec::new())
    }

    pub fn full(f: &Field, ambient_dim: usize) -> Subspace {
        Subspace::span(f, ambient_dim, MatrixF::identity(f, ambient_dim).row_vectors())
    }

    /// Span of standard basis vectors.
    pub fn coordinate(f: &Field, ambient_dim: usize, indices: &[usize]) -> Subspace {
        let vectors = indices
            .iter()
            .map(|&i| {
                let mut v = vec![f.zero(); ambient_dim];
                v[i] = f.one();
                v
            })
            .collect();
        Subspace::span(f, ambient_dim, vectors)
    }

    pub fn field(&self) -> &Field {
        &self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivot_columns.len()
    }

    pub fn basis(&self) -> &MatrixF {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn vector(&self, i: usize) -> &[Scalar] {
        self.basis.row(i)
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_columns
    }

    /// `v` minus its projection along pivots; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivot_columns.iter().enumerate() {
            let c = out[p].clone();
            if !f.is_zero(&c) {
                axpy(f, &mut out, &f.neg(&c), self.basis.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(self.field(), &self.reduce(v))
    }

    /// Coordinates in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains(v)
            .then(|| self.pivot_columns.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.ambient_dim];
        for (i, c) in coords.iter().enumerate() {
            axpy(f, &mut out, c, self.basis.row(i));
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|i| other.contains(self.vector(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        let mut v = self.basis_vectors();
        v.extend(other.basis_vectors());
        Ok(Subspace::span(self.field(), self.ambient_dim, v))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let rows = self.basis_vectors();
        kernel_from_rref(self.field(), &rows, &self.pivot_columns, self.ambient_dim)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Indices of standard basis vectors completing the subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|c| !self.pivot_columns.contains(c))
            .collect()
    }
}

pub fn rref(m: &MatrixF) -> Rref {
    m.rref()
}

pub fn kernel(m: &MatrixF) -> Subspace {
    m.kernel()
}

pub fn intersect(s1: &Subspace, s2: &Subspace) -> Result<Subspace> {
    if s1.ambient_dim != s2.ambient_dim {
        return Err(Error::AmbientMismatch(s1.ambient_dim, s2.ambient_dim));
    }
    s1.intersect(s2)
}

/// Kernel of an additive map given by the images of a prime-field basis:
/// row `i` of `images` is the image of the `i`-th basis vector. Returns the
/// prime-field subspace of coefficient vectors mapped to zero.
pub fn kernel_additive_map(images: &MatrixF) -> Subspace {
    images.transpose().kernel()
}

/// Writes each coordinate of `v` (over `F_{p^m}`) as its `m` prime-field digits.
pub fn restrict_scalars(f: &Field, v: &[Scalar]) -> Vec<Scalar> {
    if f.degree() == 1 {
        return v.to_vec();
    }
    v.iter()
        .flat_map(|s| f.digits(s).into_iter().map(Scalar::Finite))
        .collect()
}

/// Inverse of [`restrict_scalars`].
pub fn extend_scalars(f: &Field, v: &[Scalar]) -> Vec<Scalar> {
    let m = f.degree() as usize;
    if m == 1 {
        return v.to_vec();
    }
    v.chunks(m)
        .map(|c| {
            let digits: Vec<u32> = c
                .iter()
                .map(|s| match s {
                    Scalar::Finite(x) => *x,
                    Scalar::Rational(_) => unreachable!(),
                })
                .collect();
            f.from_digits(&digits)
        })
        .collect()
}

pub fn rational(n: i64) -> Scalar {
    Scalar::Rational(BigRational::from_integer(n.into()))
}

pub fn unit_vector(f: &Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn identity_is_reduced() {
        let f = f2();
        let id = MatrixF::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.reduced, id);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let q = Field::rationals();
        assert_eq!(MatrixF::zeros(&q, 2, 4).rref().rank, 0);
    }

    #[test]
    fn cartan_mod_two() {
        let f = f2();
        let m = MatrixF::from_i64(&f, &[&[4, 2], &[2, 3]]);
        assert_eq!(m.rref().rank, 1);
    }

    #[test]
    fn kernel_by_enumeration() {
        let f = f2();
        let m = MatrixF::from_i64(&f, &[&[1, 1], &[1, 1]]);
        let k = m.kernel();
        let members: Vec<_> = f
            .elements()
            .into_iter()
            .flat_map(|a| f.elements().into_iter().map(move |b| vec![a.clone(), b]))
            .filter(|v| is_zero_vec(&f, &m.mul_vec(v).unwrap()))
            .collect();
        assert_eq!(members.len(), 2);
        assert_eq!(k, Subspace::span(&f, 2, members));
        assert_eq!(MatrixF::identity(&f, 3).kernel().dim(), 0);
        assert_eq!(MatrixF::zeros(&f, 5, 5).kernel().dim(), 5);
    }

    #[test]
    fn coordinate_intersection() {
        let q = Field::rationals();
        let a = Subspace::coordinate(&q, 3, &[0, 1]);
        let b = Subspace::coordinate(&q, 3, &[1, 2]);
        assert_eq!(intersect(&a, &b).unwrap(), Subspace::coordinate(&q, 3, &[1]));
        assert_eq!(intersect(&a, &a).unwrap(), a);
        assert_eq!(intersect(&a, &Subspace::zero(&q, 3)).unwrap().dim(), 0);
        assert!(matches!(
            intersect(&a, &Subspace::zero(&q, 4)),
            Err(Error::AmbientMismatch(3, 4))
        ));
    }

    #[test]
    fn mixed_scalars_rejected() {
        let f = f2();
        let bad = MatrixF::from_rows(&f, 1, vec![vec![rational(1)]]);
        assert_eq!(bad.unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn frobenius_on_f4_is_injective() {
        // x -> x^2 on F_4 over F_2 in the basis 1, g: 1 -> 1, g -> g + 1
        let f4 = Field::extension(2, 2, None).unwrap();
        let f = f2();
        let images: Vec<Vec<Scalar>> = f4
            .power_basis()
            .iter()
            .map(|b| restrict_scalars(&f4, &[f4.mul(b, b)]))
            .collect();
        let m = MatrixF::from_rows(&f, 2, images).unwrap();
        assert_eq!(kernel_additive_map(&m).dim(), 0);
        assert_eq!(kernel_additive_map(&MatrixF::zeros(&f, 3, 3)).dim(), 3);
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Field::rationals();
        let m = MatrixF::from_i64(&q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), MatrixF::identity(&q, 2));
        assert_eq!(
            MatrixF::from_i64(&q, &[&[1, 1], &[1, 1]]).inverse().unwrap_err(),
            Error::Singular
        );
    }
}
