//! Dense univariate polynomials over a [`Field`].

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.value() == 0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::new(vec![c])
    }

    pub fn one(k: &Field) -> Poly {
        Poly::constant(k.one())
    }

    /// The monomial x.
    pub fn x(k: &Field) -> Poly {
        Poly::new(vec![k.zero(), k.one()])
    }

    pub fn monomial(k: &Field, c: FieldElement, deg: usize) -> Poly {
        let mut v = vec![k.zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    /// x - a
    pub fn linear(k: &Field, a: FieldElement) -> Poly {
        Poly::new(vec![k.neg(a), k.one()])
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(k: &Field, c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&n| k.from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial and sorts below
    /// every actual degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Poly, k: &Field) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| k.add(self.coeff(i), rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Poly, k: &Field) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| k.sub(self.coeff(i), rhs.coeff(i))).collect())
    }

    pub fn neg(&self, k: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElement, k: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, rhs: &Poly, k: &Field) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![k.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.value() == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize, k: &Field) -> Poly {
        (0..e).fold(Poly::one(k), |acc, _| acc.mul(self, k))
    }

    /// Euclidean division: `self = q·rhs + r` with deg r < deg rhs.
    pub fn divrem(&self, rhs: &Poly, k: &Field) -> Result<(Poly, Poly)> {
        let lead = rhs.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = k.inv(lead)?;
        let dr = rhs.coeffs.len();
        let mut r = self.coeffs.clone();
        if r.len() < dr {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![k.zero(); r.len() - dr + 1];
        for shift in (0..q.len()).rev() {
            let c = k.mul(r[shift + dr - 1], lead_inv);
            q[shift] = c;
            if c.value() == 0 {
                continue;
            }
            for (i, &b) in rhs.coeffs.iter().enumerate() {
                r[shift + i] = k.sub(r[shift + i], k.mul(c, b));
            }
        }
        r.truncate(dr - 1);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Exact quotient; errors if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Poly, k: &Field) -> Result<Poly> {
        let (q, r) = self.divrem(rhs, k)?;
        if !r.is_zero() {
            return Err(Error::BadDegree("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self, k: &Field) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(c) => self.scale(k.inv(c).expect("leading coefficient is nonzero"), k),
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Poly, k: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.divrem(&b, k).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Formal derivative; the factor i is reduced into the prime subfield.
    pub fn derivative(&self, k: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| k.mul(k.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement, k: &Field) -> FieldElement {
        self.coeffs.iter().rev().fold(k.zero(), |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// The polynomial x ↦ self(x + c).
    pub fn shift_compose(&self, c: FieldElement, k: &Field) -> Poly {
        let lin = Poly::new(vec![c, k.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &a| acc.mul(&lin, k).add(&Poly::constant(a), k))
    }

    /// Taylor coefficients at `a`: the coefficients of self(a + w) in w.
    pub fn taylor(&self, a: FieldElement, k: &Field) -> Vec<FieldElement> {
        let shifted = self.shift_compose(a, k);
        shifted.coeffs
    }

    /// Multiplicity of `a` as a root; `None` for the zero polynomial.
    pub fn root_order(&self, a: FieldElement, k: &Field) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.taylor(a, k).iter().take_while(|c| c.value() == 0).count())
    }

    /// Splits off the full power of (x - a): returns (s, self / (x - a)^s).
    pub fn strip_root(&self, a: FieldElement, k: &Field) -> (usize, Poly) {
        if self.is_zero() {
            return (0, Poly::zero());
        }
        let lin = Poly::linear(k, a);
        let mut s = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(&lin, k).expect("nonzero divisor");
            if !r.is_zero() {
                return (s, cur);
            }
            cur = q;
            s += 1;
        }
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, rhs: &Poly, k: &Field) -> FieldElement {
        let (Some(da), Some(db)) = (self.degree(), rhs.degree()) else {
            return k.zero();
        };
        if db == 0 {
            return k.pow(rhs.coeff(0), da as u64);
        }
        if da == 0 {
            return k.pow(self.coeff(0), db as u64);
        }
        let r = self.divrem(rhs, k).expect("nonzero divisor").1;
        let Some(dr) = r.degree() else {
            return k.zero();
        };
        // Res(a, b) = (-1)^(da·db) · lc(b)^(da - dr) · Res(b, r)
        let mut out = k.mul(k.pow(rhs.leading().unwrap(), (da - dr) as u64), rhs.resultant(&r, k));
        if da * db % 2 == 1 {
            out = k.neg(out);
        }
        out
    }

    /// `c0 + c1*x + c2*x^2 ...` with zero terms omitted; "0" for zero.
    pub fn render(&self, k: &Field) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.value() != 0)
            .map(|(i, &c)| match i {
                0 => k.render(c),
                1 => format!("{}*x", k.render(c)),
                _ => format!("{}*x^{i}", k.render(c)),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    /// 22(x-1)^2 + 10(x-1)^3 + 26(x-1)^4 + 3(x-1)^5 + 14(x-1)^6 + 18(x-1)^7
    fn gf31_curve_poly(k: &Field) -> Poly {
        Poly::from_ints(k, &[0, 0, 22, 10, 26, 3, 14, 18]).shift_compose(k.from_int(-1), k)
    }

    #[test]
    fn evaluates_shifted_curve_polynomial() {
        let k = gf(31);
        let f = gf31_curve_poly(&k);
        // direct sum of the shifted terms at x = 3, i.e. (x - 1) = 2
        let direct = [22i64, 10, 26, 3, 14, 18]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * 2i64.pow(i as u32 + 2))
            .sum::<i64>();
        assert_eq!(f.eval(k.from_int(3), &k), k.from_int(direct));
        assert_eq!(f.eval(k.from_int(3), &k), k.from_int(5));
        // 25^2 = 625 = 20 * 31 + 5
        assert_eq!(k.mul(k.from_int(25), k.from_int(25)), k.from_int(5));
    }

    #[test]
    fn derivatives() {
        let k = gf(5);
        assert!(Poly::from_ints(&k, &[3]).derivative(&k).is_zero());
        let k2 = gf(2);
        assert!(Poly::from_ints(&k2, &[0, 0, 1]).derivative(&k2).is_zero());
        assert_eq!(
            Poly::from_ints(&k, &[1, 1, 1, 1, 1, 1]).derivative(&k),
            Poly::from_ints(&k, &[1, 2, 3, 4])
        );
    }

    #[test]
    fn degree_and_zero() {
        assert_eq!(Poly::zero().degree(), None);
        assert!(Poly::zero().degree() < Some(0));
        let k = gf(5);
        assert_eq!(Poly::from_ints(&k, &[1, 0, 5]).degree(), Some(0));
        assert!(Poly::from_ints(&k, &[1]).divrem(&Poly::zero(), &k).is_err());
    }

    #[test]
    fn resultant_detects_common_roots() {
        let k = gf(5);
        // x^5 + 4x + 1 is squarefree over GF(5)
        let f = Poly::from_ints(&k, &[1, 4, 0, 0, 0, 1]);
        assert_ne!(f.resultant(&f.derivative(&k), &k), k.zero());
        let g = Poly::from_ints(&k, &[0, 0, 1]).mul(&Poly::linear(&k, k.from_int(2)), &k);
        assert_eq!(g.resultant(&g.derivative(&k), &k), k.zero());
        // Res(x - a, x - b) = a - b
        let r = Poly::linear(&k, k.from_int(1)).resultant(&Poly::linear(&k, k.from_int(3)), &k);
        assert_eq!(r, k.from_int(1 - 3));
    }

    #[test]
    fn root_order_and_strip() {
        let k = gf(31);
        let f = gf31_curve_poly(&k);
        assert_eq!(f.root_order(k.one(), &k), Some(2));
        let (s, rest) = f.strip_root(k.one(), &k);
        assert_eq!(s, 2);
        assert_ne!(rest.eval(k.one(), &k), k.zero());
    }

    #[test]
    fn render_poly() {
        let k = gf(5);
        assert_eq!(Poly::from_ints(&k, &[1, 0, 3]).render(&k), "1 + 3*x^2");
        assert_eq!(Poly::from_ints(&k, &[0, 2]).render(&k), "2*x");
        assert_eq!(Poly::zero().render(&k), "0");
    }

    fn arb_poly(p: u64, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0..p as i64, 0..max_len)
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(
            p in prop::sample::select(vec![2u64, 5, 13, 31]),
            a in arb_poly(31, 12),
            b in arb_poly(31, 7),
        ) {
            let k = gf(p);
            let a = Poly::from_ints(&k, &a);
            let b = Poly::from_ints(&k, &b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b, &k).unwrap();
            prop_assert_eq!(q.mul(&b, &k).add(&r, &k), a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides(
            p in prop::sample::select(vec![2u64, 5, 13, 31]),
            a in arb_poly(31, 8),
            b in arb_poly(31, 8),
            c in arb_poly(31, 4),
        ) {
            let k = gf(p);
            let c = Poly::from_ints(&k, &c);
            let a = Poly::from_ints(&k, &a).mul(&c, &k);
            let b = Poly::from_ints(&k, &b).mul(&c, &k);
            let g = a.gcd(&b, &k);
            if !g.is_zero() {
                prop_assert_eq!(g.leading(), Some(k.one()));
                prop_assert!(a.divrem(&g, &k).unwrap().1.is_zero());
                prop_assert!(b.divrem(&g, &k).unwrap().1.is_zero());
                if !c.is_zero() {
                    prop_assert!(g.divrem(&c.monic(&k), &k).unwrap().1.is_zero());
                }
            }
            prop_assert_eq!(a.gcd(&Poly::zero(), &k), a.monic(&k));
        }

        #[test]
        fn shift_compose_inverts(
            p in prop::sample::select(vec![2u64, 5, 13, 31]),
            a in arb_poly(31, 10),
            c in 0i64..31,
            x in 0i64..31,
        ) {
            let k = gf(p);
            let a = Poly::from_ints(&k, &a);
            let c = k.from_int(c);
            let shifted = a.shift_compose(c, &k);
            prop_assert_eq!(shifted.shift_compose(k.neg(c), &k), a.clone());
            let x = k.from_int(x);
            prop_assert_eq!(shifted.eval(x, &k), a.eval(k.add(x, c), &k));
        }
    }
}
