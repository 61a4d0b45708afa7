//! Exact scalar arithmetic over the rationals and over finite fields `F_{p^m}`.
//!
//! A [`Field`] is a cheap, clonable handle. Scalars do not carry their field;
//! every operation goes through the field that owns them. Elements of
//! `F_{p^m}` are encoded as integers `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_0 + c_1 x + ...` is the reduced polynomial representative modulo
//! the field's defining polynomial.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest field order for which log/antilog tables are built.
const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Finite(u32),
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    characteristic: u32,
    degree: u32,
    modulus: Option<Vec<u32>>,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Conway polynomials (low-to-high coefficients) for the built-in table.
fn default_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    let v: &[u32] = match (p, m) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        _ => return None,
    };
    Some(v.to_vec())
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead * c as u64) % p as u64;
            let idx = shift + i;
            r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|x| x as u32).collect())
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            if poly_rem(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let e = (a as i64).extended_gcd(&(p as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i64) as u32
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(Inner {
            characteristic: 0,
            degree: 1,
            modulus: None,
            order: 0,
            exp: Vec::new(),
            log: Vec::new(),
            generator: 0,
        }))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::extension(p, 1, None)
    }

    /// `F_{p^m}`; `modulus` defaults to the built-in table when absent.
    pub fn extension(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let order = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidField(format!("field order {p}^{m} exceeds {MAX_ORDER}"))
        })? as u32;
        if m == 1 {
            if modulus.as_ref().is_some_and(|f| f.len() != 2) {
                return Err(Error::InvalidField("modulus of a prime field must be linear".into()));
            }
            let generator = (1..p.max(2))
                .find(|&g| p == 2 || prime_order(g, p) == p - 1)
                .unwrap_or(1);
            return Ok(Field(Arc::new(Inner {
                characteristic: p,
                degree: 1,
                modulus: None,
                order,
                exp: Vec::new(),
                log: Vec::new(),
                generator,
            })));
        }
        let modulus = match modulus {
            Some(f) => f,
            None => default_modulus(p, m).ok_or_else(|| {
                Error::InvalidField(format!("no built-in modulus for F_{p}^{m}; supply one"))
            })?,
        };
        let modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::InvalidField(format!("modulus must be monic of degree {m}")));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let decode = |mut c: u32| {
            let mut v = Vec::with_capacity(m as usize);
            for _ in 0..m {
                v.push(c % p);
                c /= p;
            }
            trim(v)
        };
        let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let mulmod = |a: u32, b: u32| encode(&poly_rem(&poly_mul(&decode(a), &decode(b), p), &modulus, p));
        let primitive = (2..order)
            .find(|&c| {
                let mut x = c;
                let mut k = 1;
                while x != 1 {
                    x = mulmod(x, c);
                    k += 1;
                }
                k == order - 1
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize - 1);
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for i in 0..order - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = mulmod(x, primitive);
        }
        Ok(Field(Arc::new(Inner {
            characteristic: p,
            degree: m,
            modulus: Some(modulus),
            order,
            exp,
            log,
            generator: p,
        })))
    }

    /// Field of the given order (`p^m`), using the built-in modulus table.
    pub fn of_order(characteristic: u32, order: u64, modulus: Option<Vec<u32>>) -> Result<Field> {
        if characteristic == 0 {
            return Ok(Field::rationals());
        }
        let p = characteristic as u64;
        let mut m = 0;
        let mut q = 1u64;
        while q < order {
            q *= p;
            m += 1;
        }
        if q != order || m == 0 {
            return Err(Error::InvalidField(format!("{order} is not a power of {p}")));
        }
        Field::extension(characteristic, m, modulus)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// Number of elements; `None` for the rationals.
    pub fn order(&self) -> Option<u32> {
        (self.0.characteristic > 0).then_some(self.0.order)
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_rational(&self) -> bool {
        self.0.characteristic == 0
    }

    pub fn prime_subfield(&self) -> Field {
        if self.0.degree == 1 {
            self.clone()
        } else {
            Field::prime(self.0.characteristic).expect("characteristic is prime")
        }
    }

    pub fn zero(&self) -> Scalar {
        if self.is_rational() {
            Scalar::Rational(BigRational::zero())
        } else {
            Scalar::Finite(0)
        }
    }

    pub fn one(&self) -> Scalar {
        if self.is_rational() {
            Scalar::Rational(BigRational::one())
        } else {
            Scalar::Finite(1)
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        if self.is_rational() {
            Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
        } else {
            Scalar::Finite(n.rem_euclid(self.0.characteristic as i64) as u32)
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        if self.is_rational() {
            Scalar::Rational(BigRational::from_integer(n.clone()))
        } else {
            let p = BigInt::from(self.0.characteristic);
            Scalar::Finite(n.mod_floor(&p).to_u32().unwrap())
        }
    }

    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
        } else {
            let d = self.from_bigint(den);
            self.div(&self.from_bigint(num), &d)
        }
    }

    /// The distinguished generator `g`: the class of `x` for proper extensions,
    /// the least primitive root for prime fields.
    pub fn generator(&self) -> Option<Scalar> {
        (!self.is_rational()).then(|| Scalar::Finite(self.0.generator))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Finite(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Finite(x) => *x == 1,
        }
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(self.add_ff(*x, *y)),
            _ => panic!("scalar variants do not match"),
        }
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Finite(x) => Scalar::Finite(self.neg_ff(*x)),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (Scalar::Finite(x), Scalar::Finite(y)) => {
                Scalar::Finite(self.add_ff(*x, self.neg_ff(*y)))
            }
            _ => panic!("scalar variants do not match"),
        }
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(self.mul_ff(*x, *y)),
            _ => panic!("scalar variants do not match"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Finite(x) => Scalar::Finite(self.inv_ff(*x)),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn add_ff(&self, x: u32, y: u32) -> u32 {
        let p = self.0.characteristic;
        if self.0.degree == 1 {
            let s = x + y;
            return if s >= p { s - p } else { s };
        }
        if p == 2 {
            return x ^ y;
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    pub(crate) fn neg_ff(&self, x: u32) -> u32 {
        let p = self.0.characteristic;
        if self.0.degree == 1 {
            return if x == 0 { 0 } else { p - x };
        }
        if p == 2 {
            return x;
        }
        let mut x = x;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        out
    }

    pub(crate) fn mul_ff(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        if self.0.degree == 1 {
            return ((x as u64 * y as u64) % self.0.characteristic as u64) as u32;
        }
        let n = self.0.order - 1;
        let l = (self.0.log[x as usize] + self.0.log[y as usize]) % n;
        self.0.exp[l as usize]
    }

    pub(crate) fn inv_ff(&self, x: u32) -> u32 {
        if self.0.degree == 1 {
            return mod_inv(x, self.0.characteristic);
        }
        let n = self.0.order - 1;
        self.0.exp[((n - self.0.log[x as usize]) % n) as usize]
    }

    /// Coordinates of `a` over the prime field in the basis `1, g, ..., g^{m-1}`.
    pub fn digits(&self, a: &Scalar) -> Vec<u32> {
        let Scalar::Finite(mut x) = *a else {
            panic!("digits of a rational scalar")
        };
        let p = self.0.characteristic;
        (0..self.0.degree)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Scalar {
        let p = self.0.characteristic;
        Scalar::Finite(digits.iter().rev().fold(0u32, |acc, &c| acc * p + c % p))
    }

    /// The basis `1, x, ..., x^{m-1}` of the field over its prime field.
    pub fn power_basis(&self) -> Vec<Scalar> {
        (0..self.0.degree)
            .map(|t| {
                let mut d = vec![0; self.0.degree as usize];
                d[t as usize] = 1;
                self.from_digits(&d)
            })
            .collect()
    }

    /// All elements of a finite field in encoding order.
    pub fn elements(&self) -> Vec<Scalar> {
        assert!(!self.is_rational(), "the rationals are infinite");
        (0..self.0.order).map(Scalar::Finite).collect()
    }

    /// Parses a scalar literal: integers, `p/q`, and polynomials in `g`
    /// such as `g`, `g^2+1`, `2*g-1`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        ScalarParser::new(self, text).parse()
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Finite(x) => {
                if self.0.degree == 1 {
                    return x.to_string();
                }
                let d = self.digits(a);
                let mut terms = Vec::new();
                for (t, &c) in d.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mono = match t {
                        0 => String::new(),
                        1 => "g".to_string(),
                        _ => format!("g^{t}"),
                    };
                    terms.push(match (c, mono.is_empty()) {
                        (_, true) => c.to_string(),
                        (1, false) => mono,
                        (_, false) => format!("{c}*{mono}"),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }
}

fn prime_order(g: u32, p: u32) -> u32 {
    let mut x = g as u64 % p as u64;
    let mut k = 1;
    while x != 1 {
        x = x * g as u64 % p as u64;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.characteristic == other.0.characteristic
                && self.0.degree == other.0.degree
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.characteristic {
            0 => write!(f, "Q"),
            _ => write!(f, "F_{}", self.0.order),
        }
    }
}

/// Inverse of [`parse_modulus`]: `[1, 1, 1]` becomes `x^2+x+1`.
pub fn format_modulus(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        };
        terms.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// The `field` statement of the presentation format describing `f`.
pub fn field_statement(f: &Field) -> String {
    match (f.order(), f.modulus()) {
        (None, _) => "field char=0".into(),
        (Some(q), Some(m)) if f.degree() > 1 => {
            format!("field char={} order={q} modulus={}", f.characteristic(), format_modulus(m))
        }
        (Some(_), _) => format!("field char={}", f.characteristic()),
    }
}

/// Parses `x^2+x+1` style polynomials into low-to-high coefficient vectors.
pub fn parse_modulus(text: &str, p: u32) -> Result<Vec<u32>> {
    let bad = |m: &str| Error::InvalidField(format!("bad modulus `{text}`: {m}"));
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad("empty"));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let normalized = cleaned.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (sign, term) = match term.strip_prefix('-') {
            Some(t) => (-1i64, t),
            None => (1, term),
        };
        let (coef, exp) = match term.find('x') {
            None => (term.parse::<i64>().map_err(|_| bad(term))?, 0usize),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad(term))? };
                let rest = &term[pos + 1..];
                let e = match rest.strip_prefix('^') {
                    Some(e) => e.parse::<usize>().map_err(|_| bad(term))?,
                    None if rest.is_empty() => 1,
                    None => return Err(bad(term)),
                };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * coef;
    }
    Ok(trim(coeffs.into_iter().map(|c| c.rem_euclid(p as i64) as u32).collect()))
}

struct ScalarParser<'a> {
    field: &'a Field,
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> ScalarParser<'a> {
    fn new(field: &'a Field, text: &'a str) -> Self {
        ScalarParser {
            field,
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            text,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::InvalidField(format!("bad scalar `{}`: {msg}", self.text))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .unwrap()
        })
    }

    fn parse(mut self) -> Result<Scalar> {
        if self.chars.is_empty() {
            return Err(self.err("empty"));
        }
        let f = self.field;
        let mut acc = f.zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let sign = match self.peek() {
                Some('+') if !first => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Err(self.err("expected `+` or `-`")),
            };
            first = false;
            let term = self.term()?;
            acc = if sign < 0 { f.sub(&acc, &term) } else { f.add(&acc, &term) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let f = self.field;
        let mut coef = match self.integer() {
            Some(n) => {
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer().ok_or_else(|| self.err("missing denominator"))?;
                    f.from_ratio(&n, &d)?
                } else {
                    f.from_bigint(&n)
                }
            }
            None => f.one(),
        };
        let had_coef = self.pos > 0 && self.chars[self.pos - 1].is_ascii_digit();
        if self.peek() == Some('*') {
            self.pos += 1;
        }
        if self.peek() == Some('g') {
            self.pos += 1;
            let g = f.generator().ok_or_else(|| self.err("`g` is undefined over Q"))?;
            let e = if self.peek() == Some('^') {
                self.pos += 1;
                self.integer()
                    .and_then(|e| e.to_u64())
                    .ok_or_else(|| self.err("bad exponent"))?
            } else {
                1
            };
            coef = f.mul(&coef, &f.pow(&g, e));
        } else if !had_coef {
            return Err(self.err("expected a number or `g`"));
        }
        Ok(coef)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = Field::extension(2, 2, None).unwrap();
        let g = f.generator().unwrap();
        // g^2 = g + 1 in F_4 = F_2[x]/(x^2+x+1)
        let g2 = f.mul(&g, &g);
        assert_eq!(g2, f.add(&g, &f.one()));
        assert_eq!(f.pow(&g, 3), f.one());
        assert_eq!(f.format(&g2), "g+1");
        assert_eq!(f.parse_scalar("g^2").unwrap(), g2);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for (p, m) in [(2, 1), (3, 1), (5, 1), (2, 3), (3, 2), (5, 2), (2, 4)] {
            let f = Field::extension(p, m, None).unwrap();
            for x in f.elements().into_iter().skip(1) {
                let y = f.inv(&x).unwrap();
                assert!(f.is_one(&f.mul(&x, &y)), "{x:?} in {f}");
            }
        }
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for p in [2, 3, 5] {
            for m in 2..=4 {
                assert!(is_irreducible(&default_modulus(p, m).unwrap(), p));
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(Field::extension(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(Field::prime(4).is_err());
    }

    #[test]
    fn rational_parsing_and_formatting() {
        let q = Field::rationals();
        let x = q.parse_scalar("-3/6").unwrap();
        assert_eq!(q.format(&x), "-1/2");
        assert!(q.parse_scalar("g").is_err());
    }

    #[test]
    fn modulus_parsing() {
        assert_eq!(parse_modulus("x^2+x+1", 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_modulus("x^3 - x + 1", 3).unwrap(), vec![1, 2, 0, 1]);
    }

    #[test]
    fn order_lookup() {
        assert_eq!(Field::of_order(2, 8, None).unwrap().degree(), 3);
        assert!(Field::of_order(2, 6, None).is_err());
    }
}
