//! Külshammer spaces `T_n(A) = {x : x^{p^n} ∈ [A, A]}` and the quotients
//! `Z(A) / T_n(A)^⊥` in positive characteristic.

use rayon::prelude::*;

use crate::algebra::{kernel_of_rows, Algebra, Element};
use crate::error::{Error, Result};
use crate::invariants::{centre, commutator_space, in_centre_coordinates, symmetrizing_form, CommAlgebra, Fingerprint, LinearForm};
use crate::linalg::{axpy, extend_scalars, kernel_additive_map, restrict_scalars, MatrixF, Subspace};

/// Highest level computed; `p^6` exceeds every Loewy length met in practice.
pub const MAX_LEVEL: u32 = 6;

#[derive(Clone, Debug)]
pub struct TnData {
    pub n: u32,
    pub t_space: Subspace,
    pub t_perp: Subspace,
    pub quotient: CommAlgebra,
    pub quotient_fp: Fingerprint,
}

pub fn commutators(a: &Algebra) -> Subspace {
    commutator_space(a)
}

/// `{x : x^{p^n} ∈ [A, A]}` computed over the prime field and checked to be
/// stable under the base field.
pub fn t_space(a: &Algebra, commutators: &Subspace, n: u32) -> Result<Subspace> {
    let f = a.field();
    if f.is_rational() {
        return Err(Error::CharZero);
    }
    if n > MAX_LEVEL {
        return Err(Error::ParameterConstraint(format!("level {n} exceeds {MAX_LEVEL}")));
    }
    if n == 0 {
        return Ok(commutators.clone());
    }
    let dim = a.dim();
    let q = (f.characteristic() as u64).pow(n);
    let scalars = f.power_basis();
    let m = scalars.len();
    let prime = f.prime_subfield();
    // prime-field basis vectors c_t b_i, in the order of `restrict_scalars`
    let domain: Vec<Element> = (0..dim)
        .flat_map(|i| {
            scalars.iter().map(move |c| {
                let mut v = a.zero();
                v[i] = c.clone();
                v
            })
        })
        .collect();
    let images: Vec<Element> = domain
        .par_iter()
        .map(|x| restrict_scalars(f, &commutators.reduce(&a.power(x, q))))
        .collect();
    let kernel = kernel_additive_map(&MatrixF::from_rows(&prime, dim * m, images)?);
    if m > 1 {
        let g = f.generator().expect("finite field");
        for v in kernel.basis_vectors() {
            let x = extend_scalars(f, &v);
            let gx: Element = x.iter().map(|c| f.mul(&g, c)).collect();
            if !kernel.contains(&restrict_scalars(f, &gx)) {
                return Err(Error::KStabilityFailure(format!(
                    "level {n}: g * {} leaves the prime-field kernel",
                    a.format_element(&x)
                )));
            }
        }
    }
    let vectors = kernel.basis_vectors().iter().map(|v| extend_scalars(f, v)).collect();
    let t = Subspace::span(f, dim, vectors);
    if t.dim() * m != kernel.dim() {
        return Err(Error::KStabilityFailure(format!(
            "level {n}: prime-field dimension {} is not {m} times {}",
            kernel.dim(),
            t.dim()
        )));
    }
    Ok(t)
}

/// `{y : λ(y s) = 0 for all s ∈ s}`.
pub fn perp(a: &Algebra, form: &LinearForm, s: &Subspace) -> Subspace {
    let f = a.field();
    let rows: Vec<Element> = (0..s.dim())
        .into_par_iter()
        .map(|k| {
            let sv = s.vector(k);
            (0..a.dim())
                .map(|i| form.eval(f, &a.mul(&a.basis_element(i), sv)))
                .collect()
        })
        .collect();
    kernel_of_rows(f, rows, a.dim())
}

/// Precomputed data shared by all levels of one algebra.
pub struct KuelshammerContext<'a> {
    pub algebra: &'a Algebra,
    pub centre: &'a CommAlgebra,
    pub centre_space: &'a Subspace,
    pub form: &'a LinearForm,
    pub commutators: Subspace,
}

impl<'a> KuelshammerContext<'a> {
    pub fn new(
        algebra: &'a Algebra,
        centre: &'a CommAlgebra,
        centre_space: &'a Subspace,
        form: &'a LinearForm,
    ) -> KuelshammerContext<'a> {
        KuelshammerContext {
            algebra,
            centre,
            centre_space,
            form,
            commutators: commutator_space(algebra),
        }
    }

    pub fn level(&self, n: u32) -> Result<TnData> {
        let t = t_space(self.algebra, &self.commutators, n)?;
        let t_perp = perp(self.algebra, self.form, &t);
        let ideal = in_centre_coordinates(self.centre_space, &t_perp)?;
        let quotient = self.centre.quotient(&ideal)?;
        let quotient_fp = quotient.fingerprint();
        Ok(TnData {
            n,
            t_space: t,
            t_perp,
            quotient,
            quotient_fp,
        })
    }
}

/// `T_n`, `T_n^⊥` and the fingerprint of `Z(A) / T_n^⊥`.
pub fn kuelshammer_quotient(a: &Algebra, n: u32) -> Result<TnData> {
    if a.field().is_rational() {
        return Err(Error::CharZero);
    }
    let (z, zs) = centre(a)?;
    let form = symmetrizing_form(a)?;
    KuelshammerContext::new(a, &z, &zs, &form).level(n)
}

/// Counts of `{x : x^2 = 0}` and `{x : x^2 = x}` in a commutative algebra over
/// `F_2`, by exhaustive enumeration. Returns `None` above `max_dim`.
pub fn square_point_counts(z: &CommAlgebra, max_dim: usize) -> Option<(u64, u64)> {
    let f = z.field();
    if f.order() != Some(2) || z.dim() > max_dim {
        return None;
    }
    let n = z.dim();
    let basis: Vec<Element> = (0..n).map(|i| z.basis_element(i)).collect();
    let (mut nil, mut idem) = (0u64, 0u64);
    for code in 0u64..(1u64 << n) {
        let mut x = vec![f.zero(); n];
        for (i, b) in basis.iter().enumerate() {
            if code >> i & 1 == 1 {
                axpy(f, &mut x, &f.one(), b);
            }
        }
        let sq = z.mul(&x, &x);
        if sq.iter().all(|c| f.is_zero(c)) {
            nil += 1;
        }
        if sq == x {
            idem += 1;
        }
    }
    Some((nil, idem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::presentation::parse_presentation;

    fn build(text: &str) -> Algebra {
        build_algebra(&parse_presentation(text, None).unwrap()).unwrap()
    }

    #[test]
    fn commutative_algebra_has_no_commutators() {
        let a = build("field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\ncommutative\n");
        assert_eq!(commutators(&a).dim(), 0);
        assert_eq!(t_space(&a, &commutators(&a), 0).unwrap().dim(), 0);
    }

    #[test]
    fn semisimple_product_has_no_commutators() {
        let a = build("field char=3\nvertices 1\n");
        assert_eq!(commutators(&a).dim(), 0);
    }

    #[test]
    fn char_zero_rejected() {
        let a = build("field char=0\nvertices 1\n");
        assert_eq!(kuelshammer_quotient(&a, 1).unwrap_err(), Error::CharZero);
    }

    #[test]
    fn anticommuting_toy() {
        // K<X,Y>/(X^2, Y^2, XY + YX) in char 2 is commutative
        let a = build("field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\nrelation XY + YX\n");
        let c = commutators(&a);
        let oracle = Subspace::span(
            a.field(),
            a.dim(),
            (0..a.dim())
                .flat_map(|i| (0..a.dim()).map(move |j| (i, j)))
                .map(|(i, j)| a.commutator(&a.basis_element(i), &a.basis_element(j)))
                .collect(),
        );
        assert_eq!(c, oracle);
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn perp_of_whole_and_zero() {
        let a = build("field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nparam k=1\nrelation X^2\nrelation Y^2\nrelation (XY)^k - (YX)^k\n");
        let form = symmetrizing_form(&a).unwrap();
        let n = a.dim();
        assert_eq!(perp(&a, &form, &Subspace::full(a.field(), n)).dim(), 0);
        assert_eq!(perp(&a, &form, &Subspace::zero(a.field(), n)).dim(), n);
        let (_, z) = centre(&a).unwrap();
        assert_eq!(perp(&a, &form, &commutators(&a)), z);
    }
}
