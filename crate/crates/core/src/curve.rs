//! Imaginary hyperelliptic curves y² + h(x)·y = f(x) with one point Ω at
//! infinity.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{linsolve, Matrix};
use crate::poly::Poly;

/// A point of the curve: an affine solution or Ω = [0:1:0].
///
/// The derived order lists affine points by abscissa, then ordinate, and puts
/// Ω last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Affine { x: FieldElement, y: FieldElement },
    Infinity,
}

impl Point {
    pub fn affine(x: FieldElement, y: FieldElement) -> Point {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// Abscissa of an affine point.
    pub fn x(&self) -> Option<FieldElement> {
        match *self {
            Point::Affine { x, .. } => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn render(&self, k: &Field) -> String {
        match *self {
            Point::Affine { x, y } => format!("({},{})", k.render(x), k.render(y)),
            Point::Infinity => "inf".to_string(),
        }
    }
}

/// The curve y² + h(x)·y = f(x) over a finite field, with deg f = 2g + 1 and
/// deg h ≤ g. In odd characteristic h is always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: Field,
    f: Poly,
    h: Poly,
    genus: usize,
    singular: Option<String>,
}

impl Curve {
    /// Validates the model and its nonsingularity certificate. With
    /// `singular_ok` a failed certificate is recorded (see [`Curve::warning`])
    /// instead of rejected.
    pub fn new(field: Field, f: Poly, h: Poly, singular_ok: bool) -> Result<Curve> {
        let d = f.degree().ok_or_else(|| Error::BadDegree("f is zero".into()))?;
        if d < 3 || d % 2 == 0 {
            return Err(Error::BadDegree(format!("deg f = {d} must be odd and at least 3")));
        }
        let genus = (d - 1) / 2;
        if h.degree().is_some_and(|dh| dh > genus) {
            return Err(Error::BadDegree(format!(
                "deg h = {} exceeds the genus {genus}",
                h.degree().unwrap()
            )));
        }
        if field.p() != 2 && !h.is_zero() {
            return Err(Error::NonzeroHOddChar);
        }
        let singular = singularity_certificate(&field, &f, &h);
        if let Some(reason) = &singular {
            if !singular_ok {
                return Err(Error::SingularCurve(reason.clone()));
            }
        }
        Ok(Curve { field, f, h, genus, singular })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Why the nonsingularity certificate failed, when it was waived.
    pub fn warning(&self) -> Option<&str> {
        self.singular.as_deref()
    }

    /// b² + h(a)·b - f(a), zero exactly on the curve.
    fn residual(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let k = &self.field;
        let lhs = k.add(k.mul(b, b), k.mul(self.h.eval(a, k), b));
        k.sub(lhs, self.f.eval(a, k))
    }

    pub fn on_curve(&self, p: &Point) -> bool {
        match *p {
            Point::Affine { x, y } => self.residual(x, y).value() == 0,
            Point::Infinity => true,
        }
    }

    fn check(&self, p: &Point) -> Result<()> {
        if self.on_curve(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(p.render(&self.field)))
        }
    }

    /// Image under the hyperelliptic involution (a, b) ↦ (a, -b - h(a)).
    pub fn opposite(&self, p: &Point) -> Result<Point> {
        self.check(p)?;
        Ok(match *p {
            Point::Affine { x, y } => {
                let k = &self.field;
                Point::affine(x, k.sub(k.neg(y), self.h.eval(x, k)))
            }
            Point::Infinity => Point::Infinity,
        })
    }

    /// Whether the point is fixed by the involution, i.e. 2b + h(a) = 0.
    pub fn is_ramification(&self, p: &Point) -> Result<bool> {
        Ok(self.opposite(p)? == *p)
    }

    /// All rational points: affine ones by (a, b), then Ω.
    pub fn points(&self) -> Vec<Point> {
        let k = &self.field;
        let mut out = Vec::new();
        for a in k.elements() {
            let ha = self.h.eval(a, k);
            let fa = self.f.eval(a, k);
            for b in k.elements() {
                if k.add(k.mul(b, b), k.mul(ha, b)) == fa {
                    out.push(Point::affine(a, b));
                }
            }
        }
        out.push(Point::Infinity);
        out
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.field;
        write!(f, "y^2 + ({})*y = {} over {}", self.h.render(k), self.f.render(k), k)
    }
}

/// `None` when the affine model is smooth, else a description of the failure.
fn singularity_certificate(k: &Field, f: &Poly, h: &Poly) -> Option<String> {
    if k.p() != 2 {
        let df = f.derivative(k);
        if f.resultant(&df, k).value() == 0 {
            return Some(format!("Res(f, f') = 0: f has a repeated root (gcd {})", f.gcd(&df, k).render(k)));
        }
        return None;
    }
    if h.is_zero() {
        return Some("h = 0 in characteristic 2".into());
    }
    let df = f.derivative(k);
    let dh = h.derivative(k);
    let g = df.mul(&df, k).add(&f.mul(&dh.mul(&dh, k), k), k);
    if h.resultant(&g, k).value() == 0 {
        return Some("Res(h, f'^2 + f*h'^2) = 0".into());
    }
    None
}

/// A curve equation fitted through sample points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFit {
    /// Coefficients a_k of (x - c)^k for k in the exponent range.
    pub shifted: Vec<FieldElement>,
    /// The same polynomial in plain low-to-high coefficients.
    pub poly: Poly,
    /// Rows (x_i - c)^k over the exponent range.
    pub vandermonde: Matrix,
}

/// Fits f = Σ a_k (x - c)^k, k in `exponents`, so that y_i² = f(x_i) for every
/// sample.
pub fn fit_curve(
    k: &Field,
    shift: FieldElement,
    exponents: (usize, usize),
    samples: &[(FieldElement, FieldElement)],
) -> Result<CurveFit> {
    let (lo, hi) = exponents;
    if hi < lo {
        return Err(Error::OutOfRange(format!("empty exponent range {lo}..{hi}")));
    }
    let n = hi - lo + 1;
    if samples.len() != n {
        return Err(Error::SingularSystem(format!(
            "{} samples for {n} unknown coefficients",
            samples.len()
        )));
    }
    let rows = samples
        .iter()
        .map(|&(x, _)| {
            let w = k.sub(x, shift);
            (lo..=hi).map(|e| k.pow(w, e as u64)).collect()
        })
        .collect();
    let v = Matrix::from_rows(rows, n);
    let rhs: Vec<_> = samples.iter().map(|&(_, y)| k.mul(y, y)).collect();
    let sol = linsolve(k, &v, &rhs);
    let coeffs = match sol.particular {
        Some(c) if sol.nullspace.is_empty() => c,
        _ => {
            return Err(Error::SingularSystem(
                "sample abscissas must be distinct and differ from the shift".into(),
            ))
        }
    };
    let mut padded = vec![k.zero(); lo];
    padded.extend_from_slice(&coeffs);
    let poly = Poly::new(padded).shift_compose(k.neg(shift), k);
    Ok(CurveFit { shifted: coeffs, poly, vandermonde: v })
}
