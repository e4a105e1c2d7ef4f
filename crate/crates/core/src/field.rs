//! Finite fields GF(p^t).
//!
//! An element is stored as the integer `Σ digits[i]·p^i`, where `digits` are
//! the low-to-high coefficients of its residue polynomial modulo the defining
//! modulus. That integer is also the canonical total order on elements, so
//! `FieldElement` derives `Ord` and every downstream tie-break is a plain
//! comparison.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 6;

/// An element of some [`Field`]. Meaningless without the field it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    /// Position of the element in the canonical order (0 is the zero element).
    pub fn value(self) -> u64 {
        self.0
    }
}

/// The context GF(p^t): prime, extension degree and, for t > 1, a monic
/// irreducible modulus of degree t over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    p: u64,
    t: usize,
    // low-to-high, length t + 1, monic; empty for prime fields
    modulus: Vec<u64>,
    q: u64,
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Validates `p`, `t` and the modulus and builds GF(p^t).
    pub fn new(p: u64, t: usize, modulus: Option<Vec<u64>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::BadModulus(format!("prime {p} too large")));
        }
        if t == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        if t > MAX_EXTENSION_DEGREE {
            return Err(Error::BadModulus(format!(
                "extension degree {t} exceeds {MAX_EXTENSION_DEGREE}"
            )));
        }
        let q = (p as u128).pow(t as u32);
        if q >= 1 << 63 {
            return Err(Error::BadModulus(format!("field of size {p}^{t} too large")));
        }
        let modulus = match (t, modulus) {
            (1, None) => Vec::new(),
            (1, Some(_)) => {
                return Err(Error::BadModulus("prime fields take no modulus".into()));
            }
            (_, None) => {
                return Err(Error::BadModulus(format!("GF({p}^{t}) needs a modulus")));
            }
            (_, Some(m)) => {
                if m.len() != t + 1 {
                    return Err(Error::BadModulus(format!(
                        "modulus has degree {}, expected {t}",
                        m.len() as i64 - 1
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus("modulus coefficients must be below p".into()));
                }
                if m[t] != 1 {
                    return Err(Error::BadModulus("modulus is not monic".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::BadModulus("modulus is reducible".into()));
                }
                m
            }
        };
        Ok(Field { p, t, modulus, q: q as u64 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of elements, p^t.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Defining modulus, low-to-high; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.t == 1 {
            None
        } else {
            Some(&self.modulus)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u64)
    }

    /// Element with the given canonical index, if it is below q.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::BadElement(format!("{value} is not below q = {}", self.q)))
        }
    }

    /// Builds an element from residue-polynomial digits (low-to-high).
    pub fn from_digits(&self, digits: &[u64]) -> Result<FieldElement> {
        if digits.len() > self.t {
            return Err(Error::BadElement(format!(
                "{} digits given, field has degree {}",
                digits.len(),
                self.t
            )));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= self.p) {
            return Err(Error::BadElement(format!("digit {d} is not below p = {}", self.p)));
        }
        Ok(self.encode(digits))
    }

    /// Residue-polynomial digits of `a`, always of length t.
    pub fn digits(&self, a: FieldElement) -> Vec<u64> {
        let mut v = a.0;
        (0..self.t)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u64]) -> FieldElement {
        FieldElement(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn is_zero(&self, a: FieldElement) -> bool {
        a.0 == 0
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.t == 1 {
            return FieldElement(add_mod(a.0, b.0, self.p));
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| add_mod(x, y, self.p)).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.t == 1 {
            return FieldElement(neg_mod(a.0, self.p));
        }
        let d: Vec<u64> = self.digits(a).iter().map(|&x| neg_mod(x, self.p)).collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.t == 1 {
            return FieldElement(mul_mod(a.0, b.0, self.p));
        }
        let prod = zp::mul(&self.digits(a), &self.digits(b), self.p);
        let mut r = zp::rem(&prod, &self.modulus, self.p);
        r.resize(self.t, 0);
        self.encode(&r)
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm on the
    /// residue polynomial (on integers for prime fields).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.t == 1 {
            return Ok(FieldElement(inv_mod(a.0, self.p)));
        }
        let mut r = zp::inverse_mod(&self.digits(a), &self.modulus, self.p);
        r.resize(self.t, 0);
        Ok(self.encode(&r))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All q elements in canonical order, starting at zero.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Decimal for prime fields, `[d0,d1,...]` for extensions.
    pub fn render(&self, a: FieldElement) -> String {
        if self.t == 1 {
            a.0.to_string()
        } else {
            let d: Vec<String> = self.digits(a).iter().map(u64::to_string).collect();
            format!("[{}]", d.join(","))
        }
    }

    /// Parses the rendering grammar. A bare (possibly negative) integer is
    /// read as an element of the prime subfield in any field.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::BadElement(format!("unterminated element '{s}'")))?;
            let digits = inner
                .split(',')
                .map(|d| {
                    d.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::BadElement(format!("bad digit '{}' in '{s}'", d.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            return self.from_digits(&digits);
        }
        let n: i64 = s
            .parse()
            .map_err(|_| Error::BadElement(format!("cannot parse '{s}' as a field element")))?;
        Ok(self.from_int(n))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.t)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

/// Dense polynomials over Z/p as plain digit vectors, used for residue
/// arithmetic and the irreducibility test. Results carry no trailing zeros.
mod zp {
    use super::{add_mod, inv_mod, mul_mod, neg_mod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                add_mod(x, neg_mod(y, p), p)
            })
            .collect();
        trim(out)
    }

    /// (quotient, remainder); `b` must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
        let mut q = vec![0; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), lead_inv, p);
            q[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = add_mod(r[shift + i], neg_mod(mul_mod(c, bi, p), p), p);
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Inverse of `a` modulo the irreducible `m`.
    pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant because m is irreducible
        let c = inv_mod(r0[0], p);
        let s0: Vec<u64> = s0.iter().map(|&x| mul_mod(x, c, p)).collect();
        rem(&s0, m, p)
    }

    pub fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }
}

/// Ben-Or test: monic `m` of degree t is irreducible over GF(p) iff
/// gcd(x^(p^i) - x, m) = 1 for every 1 <= i <= t/2.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let t = m.len() - 1;
    let x = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=t / 2 {
        frob = zp::powmod(&frob, p as u128, m, p);
        let g = zp::gcd(&zp::sub(&frob, &x, p), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
