use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use tamesym::algebra::{build_algebra, Algebra};
use tamesym::catalog::{make_entry, make_entry_with, FamilyId, Validation};
use tamesym::classifier::{compare, morita_fingerprint, Verdict};
use tamesym::integer::{rank_over, smith_normal_form, MatrixZ};
use tamesym::invariants::centre;
use tamesym::linalg::{MatrixF, Subspace};
use tamesym::presentation::parse_presentation;
use tamesym::{Field, Scalar};

fn small_field(i: usize) -> Field {
    match i % 5 {
        0 => Field::rationals(),
        1 => Field::prime(2).unwrap(),
        2 => Field::prime(7).unwrap(),
        3 => Field::extension(2, 3, None).unwrap(),
        _ => Field::extension(3, 2, None).unwrap(),
    }
}

fn scalar(f: &Field, n: i64) -> Scalar {
    match f.order() {
        Some(q) if f.degree() > 1 => {
            let p = f.characteristic() as i64;
            let mut k = n.rem_euclid(q as i64);
            let digits: Vec<u32> = (0..f.degree())
                .map(|_| {
                    let d = (k % p) as u32;
                    k /= p;
                    d
                })
                .collect();
            f.from_digits(&digits)
        }
        _ => f.from_i64(n),
    }
}

fn matrix(f: &Field, rows: usize, cols: usize, data: &[i64]) -> MatrixF {
    let rows: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| (0..cols).map(|c| scalar(f, data[r * cols + c])).collect())
        .collect();
    MatrixF::from_rows(f, cols, rows).unwrap()
}

fn int_matrix(n: usize, data: &[i64]) -> MatrixZ {
    MatrixZ::new(n, n, data[..n * n].iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

/// Determinant by expansion over permutations.
fn leibniz(n: usize, data: &[i64]) -> BigInt {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut total = BigInt::zero();
    for p in perms(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = BigInt::from(if inversions % 2 == 0 { 1 } else { -1 });
        for (r, &c) in p.iter().enumerate() {
            term *= data[r * n + c];
        }
        total += term;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..5, a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let f = small_field(fi);
        let (a, b, c) = (scalar(&f, a), scalar(&f, b), scalar(&f, c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn frobenius_fixes_prime_field(fi in 1usize..5, a in -50i64..50) {
        let f = small_field(fi);
        let a = scalar(&f, a);
        let q = f.order().unwrap() as u64;
        prop_assert_eq!(f.pow(&a, q), a);
    }

    #[test]
    fn rank_nullity(fi in 0usize..5, rows in 1usize..6, cols in 1usize..6, data in prop::collection::vec(-3i64..4, 36)) {
        let f = small_field(fi);
        let m = matrix(&f, rows, cols, &data);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let k = m.kernel();
        prop_assert_eq!(k.dim() + m.rank(), cols);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn subspace_dimension_formula(fi in 0usize..5, a in prop::collection::vec(-2i64..3, 20), b in prop::collection::vec(-2i64..3, 20)) {
        let f = small_field(fi);
        let span = |d: &[i64]| Subspace::span(&f, 5, matrix(&f, 4, 5, d).row_vectors());
        let (u, w) = (span(&a), span(&b));
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&sum) && w.is_subspace_of(&sum));
    }

    #[test]
    fn determinant_matches_permutation_expansion(n in 1usize..5, data in prop::collection::vec(-6i64..7, 16)) {
        prop_assert_eq!(int_matrix(n, &data).determinant().unwrap(), leibniz(n, &data));
    }

    #[test]
    fn smith_form_invariants(n in 1usize..5, data in prop::collection::vec(-6i64..7, 16)) {
        let m = int_matrix(n, &data);
        let snf = smith_normal_form(&m);
        for w in snf.divisors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(snf.divisors.iter().all(|d| d.is_positive()));
        prop_assert_eq!(snf.rank, rank_over(&m, &Field::rationals()));
        prop_assert_eq!(snf.rank + snf.cokernel_free_rank, n);
        // first divisor is the gcd of the entries
        let g = data[..n * n].iter().fold(BigInt::zero(), |g, &x| g.gcd(&BigInt::from(x)));
        if let Some(d) = snf.divisors.first() {
            prop_assert_eq!(d, &g);
        }
        if snf.rank == n {
            let product: BigInt = snf.divisors.iter().product();
            prop_assert_eq!(product, leibniz(n, &data).abs());
        }
        // rank mod p is the number of divisors prime to p
        for p in [2u32, 3, 5] {
            let count = snf.divisors.iter().filter(|d| !d.is_multiple_of(&BigInt::from(p))).count();
            prop_assert_eq!(rank_over(&m, &Field::prime(p).unwrap()), count);
        }
    }

    #[test]
    fn truncated_polynomial_ring(a in 1usize..5, b in 1usize..5, fi in 0usize..3) {
        let f = small_field(fi);
        let text = format!(
            "{}\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^{a}\nrelation Y^{b}\ncommutative\n",
            tamesym::field::field_statement(&f)
        );
        let alg = build_algebra(&parse_presentation(&text, None).unwrap()).unwrap();
        prop_assert_eq!(alg.dim(), a * b);
        prop_assert_eq!(alg.loewy_length(), a + b - 1);
        prop_assert_eq!(centre(&alg).unwrap().0.dim(), a * b);
    }
}

/// Centre by solving `x b = b x` for every basis element `b`.
fn brute_force_centre(a: &Algebra) -> Subspace {
    let f = a.field();
    let n = a.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        let b = a.basis_element(j);
        // coordinate k of [e_i, b] as a row over i
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| a.commutator(&a.basis_element(i), &b)).collect();
        for k in 0..n {
            rows.push(cols.iter().map(|c| c[k].clone()).collect());
        }
    }
    MatrixF::from_rows(f, n, rows).unwrap().kernel()
}

/// `dim e_i A e_j` from products with the vertex idempotents.
fn brute_force_cartan(a: &Algebra) -> Vec<Vec<BigInt>> {
    let f = a.field();
    let idem = a.idempotent_indices();
    idem.iter()
        .map(|&i| {
            idem.iter()
                .map(|&j| {
                    let (ei, ej) = (a.basis_element(i), a.basis_element(j));
                    let images: Vec<Vec<Scalar>> = (0..a.dim())
                        .map(|b| {
                            let x = a.multiply(&ei, &a.basis_element(b)).unwrap();
                            a.multiply(&x, &ej).unwrap()
                        })
                        .collect();
                    BigInt::from(Subspace::span(f, a.dim(), images).dim())
                })
                .collect()
        })
        .collect()
}

fn oracle_families() -> Vec<(FamilyId, Field)> {
    let f2 = Field::prime(2).unwrap();
    let q = Field::rationals();
    let f3 = Field::prime(3).unwrap();
    vec![
        (FamilyId::A1 { m: 3, n: 2 }, q.clone()),
        (FamilyId::D1A1 { k: 2 }, f2.clone()),
        (FamilyId::D1A2 { k: 2, d: 1 }, f2.clone()),
        (FamilyId::D2B { k: 3, s: 2, c: 0 }, f3.clone()),
        (FamilyId::D3K { a: 2, b: 2, c: 1 }, q.clone()),
        (FamilyId::SD2B1 { k: 1, t: 3, c: 1 }, f2.clone()),
        (FamilyId::SD2B2 { k: 2, t: 2, c: 0 }, f3.clone()),
        (FamilyId::Q2B1 { k: 2, s: 3, a: "1".into(), c: "0".into() }, f2.clone()),
        (FamilyId::SD3K { a: 2, b: 1, c: 1 }, q.clone()),
        (FamilyId::Q3K { a: 2, b: 2, c: 2 }, f2),
    ]
}

#[test]
fn centre_and_cartan_agree_with_brute_force() {
    for (fam, f) in oracle_families() {
        let e = make_entry(fam.clone(), &f).unwrap();
        let a = e.build().unwrap();
        let (z, zs) = centre(&a).unwrap();
        let oracle = brute_force_centre(&a);
        assert_eq!(zs, oracle, "{fam}");
        assert_eq!(z.dim(), oracle.dim(), "{fam}");
        assert_eq!(a.cartan_matrix().to_rows(), brute_force_cartan(&a), "{fam}");
    }
}

#[test]
fn published_values() {
    let f2 = Field::prime(2).unwrap();
    let fp = morita_fingerprint(&make_entry(FamilyId::D1A1 { k: 2 }, &f2).unwrap()).unwrap();
    assert_eq!((fp.dim_z, fp.dim_zpr), (5, 0));
    assert_eq!(fp.stable_grothendieck.torsion, vec![BigInt::from(8)]);
    let fp = morita_fingerprint(&make_entry(FamilyId::A1 { m: 3, n: 2 }, &Field::rationals()).unwrap()).unwrap();
    assert_eq!((fp.dim_z, fp.dim_zpr), (5, 1));
    let f4 = Field::extension(2, 2, None).unwrap();
    let fp = morita_fingerprint(&make_entry(FamilyId::Q3A1 { d: "g".into() }, &f4).unwrap()).unwrap();
    assert_eq!(fp.dim_z, 6);
    // the same matrix up to the order of the vertices
    let published = [[4, 2, 2], [2, 3, 1], [2, 1, 3]];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    assert!(perms.iter().any(|p| (0..3).all(|i| (0..3).all(|j| fp.cartan[p[i]][p[j]] == BigInt::from(published[i][j])))));
}

#[test]
fn published_verdicts() {
    let f2 = Field::prime(2).unwrap();
    // the block representatives D(2B)^{1,s}(c) lie outside k >= s
    let e = |code: &str, params: &str| make_entry_with(FamilyId::parse(code, params).unwrap(), &f2, Validation::Relaxed).unwrap();
    let v = compare(&e("D2B", "k=1,s=2,c=0"), &e("D2B", "k=1,s=2,c=1")).unwrap();
    assert!(matches!(&v, Verdict::Distinguished { invariant, .. } if invariant == "special_biserial"), "{v:?}");
    let v = compare(&e("SD2B1", "1,3,0"), &e("SD2B1", "1,3,1")).unwrap();
    assert!(matches!(&v, Verdict::Distinguished { invariant, .. } if invariant == "kuelshammer_1"), "{v:?}");
    let v = compare(&e("D1A2", "k=2,d=0"), &e("D1A2", "k=2,d=1")).unwrap();
    assert!(matches!(v, Verdict::NotDistinguished { known_open: true, .. }), "{v:?}");
}

fn grid_family(i: usize) -> FamilyId {
    let all = [
        FamilyId::A1 { m: 3, n: 2 },
        FamilyId::A1 { m: 4, n: 2 },
        FamilyId::A1 { m: 3, n: 3 },
        FamilyId::C1,
        FamilyId::D1A1 { k: 2 },
        FamilyId::D1A1 { k: 3 },
        FamilyId::D2B { k: 1, s: 2, c: 0 },
        FamilyId::D2B { k: 2, s: 1, c: 0 },
        FamilyId::D2B { k: 1, s: 3, c: 1 },
        FamilyId::SD1A1 { k: 2 },
        FamilyId::Q1A1 { k: 2 },
        FamilyId::SD2B1 { k: 1, t: 2, c: 0 },
    ];
    all[i % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn comparison_is_symmetric(i in 0usize..12, j in 0usize..12, p in prop::sample::select(vec![0u32, 2, 3])) {
        let f = if p == 0 { Field::rationals() } else { Field::prime(p).unwrap() };
        let (x, y) = (grid_family(i), grid_family(j));
        let (Ok(a), Ok(b)) = (make_entry(x, &f), make_entry(y, &f)) else { return Ok(()) };
        let (v1, v2) = (compare(&a, &b).unwrap(), compare(&b, &a).unwrap());
        match (&v1, &v2) {
            (
                Verdict::Distinguished { invariant: i1, left: l1, right: r1, also: a1 },
                Verdict::Distinguished { invariant: i2, left: l2, right: r2, also: a2 },
            ) => {
                prop_assert_eq!(i1, i2);
                prop_assert_eq!(l1, r2);
                prop_assert_eq!(r1, l2);
                prop_assert_eq!(a1, a2);
            }
            _ => prop_assert_eq!(v1, v2),
        }
    }
}
