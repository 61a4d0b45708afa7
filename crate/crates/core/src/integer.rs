//! Integer matrices: Smith normal form, determinants and ranks modulo primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, Field};
use crate::linalg::MatrixF;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixZ {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`, all positive.
    #[serde(with = "decimal::vec")]
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    pub cokernel_free_rank: usize,
}

impl MatrixZ {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<MatrixZ> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(MatrixZ {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> MatrixZ {
        MatrixZ {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> MatrixZ {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        MatrixZ {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> MatrixZ {
        let mut t = MatrixZ::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Simultaneous row/column permutation: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permute(&self, perm: &[usize]) -> MatrixZ {
        assert_eq!(self.rows, self.cols);
        let mut out = MatrixZ::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    pub fn sum(&self) -> BigInt {
        self.entries.iter().sum()
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn to_field(&self, f: &Field) -> MatrixF {
        let rows = self
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|x| f.from_bigint(x)).collect())
            .collect();
        MatrixF::from_rows(f, self.cols, rows).expect("rectangular")
    }
}

pub fn smith_normal_form(m: &MatrixZ) -> SmithForm {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows, m.cols);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero |entry| in the trailing block, first in row-major order
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                dirty |= !a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                dirty |= !a[t][j].is_zero();
            }
        }
        if dirty {
            continue;
        }
        let pivot = a[t][t].clone();
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
        if let Some(i) = offender {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        divisors.push(pivot.abs());
        t += 1;
    }
    let rank = divisors.len();
    SmithForm {
        divisors,
        rank,
        cokernel_free_rank: rows - rank,
    }
}

pub fn rank_mod_p(m: &MatrixZ, p: u64) -> Result<usize> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::InvalidPrime(p));
    }
    let f = Field::prime(p as u32)?;
    Ok(m.to_field(&f).rank())
}

pub fn rank_over(m: &MatrixZ, f: &Field) -> usize {
    m.to_field(f).rank()
}

/// Serde adapters writing integers as JSON numbers when they fit in `i64`
/// and as decimal strings otherwise.
pub mod decimal {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Num {
        Small(i64),
        Big(String),
    }

    fn to_num(x: &BigInt) -> Num {
        match x.to_i64() {
            Some(n) => Num::Small(n),
            None => Num::Big(x.to_string()),
        }
    }

    fn from_num<E: de::Error>(n: Num) -> Result<BigInt, E> {
        match n {
            Num::Small(n) => Ok(BigInt::from(n)),
            Num::Big(s) => BigInt::from_str(&s).map_err(|_| E::custom(format!("`{s}` is not an integer"))),
        }
    }

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_num(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_num(Num::deserialize(d)?)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            x.iter().map(to_num).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<Num>::deserialize(d)?.into_iter().map(from_num).collect()
        }
    }

    pub mod rows {
        use super::*;

        pub fn serialize<S: Serializer>(x: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            x.iter()
                .map(|r| r.iter().map(to_num).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            Vec::<Vec<Num>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(from_num).collect())
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divs(m: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&MatrixZ::from_rows(m))
            .divisors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(divs(&[vec![4, 2], vec![2, 3]]), vec![1, 8]);
        assert_eq!(
            divs(&[vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]),
            vec![1, 1, 4]
        );
        assert_eq!(divs(&[vec![5]]), vec![5]);
        assert_eq!(divs(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(divs(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn rank_mod_p_examples() {
        assert_eq!(rank_mod_p(&MatrixZ::from_rows(&[vec![4, 2], vec![2, 3]]), 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&MatrixZ::from_rows(&[vec![4, 2], vec![2, 4]]), 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&MatrixZ::from_rows(&[vec![5]]), 5).unwrap(), 0);
        assert_eq!(
            rank_mod_p(&MatrixZ::from_rows(&[vec![1]]), 4).unwrap_err(),
            Error::InvalidPrime(4)
        );
    }

    #[test]
    fn bareiss_determinant() {
        let m = MatrixZ::from_rows(&[vec![0, 2, 1], vec![1, 0, 3], vec![4, 1, 0]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(25));
    }

    #[test]
    fn rectangular_free_rank() {
        let s = smith_normal_form(&MatrixZ::from_rows(&[vec![2, 4, 6]]));
        assert_eq!(s.rank, 1);
        assert_eq!(s.cokernel_free_rank, 0);
        assert_eq!(s.divisors, vec![BigInt::from(2)]);
    }
}
