//! Explicit bases of L(D) for divisors D = Σ m_i·P_i + (n - j)·Ω with
//! j = Σ m_i ≤ g.
//!
//! With κ the curve y = k(x) of least degree meeting the curve in the
//! opposite points Q_i (to the given multiplicities), Ψ = (y - k(x)) / Π (x - a_i)^{m_i}
//! has poles of order m_i at the P_i and of order 2g + 1 - 2j at Ω. A basis of
//! L(D) is then
//!
//! * x^h for 0 ≤ h ≤ ⌊(n - j)/2⌋, and
//! * Ψ·x^k for 0 ≤ k ≤ ⌊((n - j) - 2(g - j) - 1)/2⌋ when n - j ≥ 2(g - j) + 1,
//!
//! in that order.

use std::collections::BTreeMap;

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::function::{denominator_support_check, valuation, Divisor, FuncElem};
use crate::matrix::{linsolve, Matrix};
use crate::poly::Poly;

/// The interpolating curve y = k(x); `delta` is max(deg k, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaCurve {
    pub k: Poly,
    pub delta: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisCase {
    WithPsi,
    NoPsi,
}

impl BasisCase {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisCase::WithPsi => "with-psi",
            BasisCase::NoPsi => "no-psi",
        }
    }
}

/// An ordered basis of L(D): powers of x, then Ψ times powers of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRBasis {
    pub elements: Vec<FuncElem>,
    /// Ψ itself, whether or not it lies in L(D).
    pub psi: FuncElem,
    pub n: i64,
    pub j: i64,
    pub g: i64,
    pub case: BasisCase,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// `dim=<k> case=<with-psi|no-psi>` followed by one element per line.
    pub fn render(&self, k: &Field) -> String {
        let mut s = format!("dim={} case={}\n", self.dim(), self.case.as_str());
        for e in &self.elements {
            s.push_str(&e.render(k));
            s.push('\n');
        }
        s
    }
}

/// A divisor checked to be Σ m_i·P_i + (n - j)·Ω with affine P_i, m_i ≥ 1,
/// j ≤ g and n ≥ j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDivisor {
    pub affine: Vec<(Point, i64)>,
    pub n: i64,
    pub j: i64,
}

impl ReducedDivisor {
    pub fn from_divisor(curve: &Curve, d: &Divisor) -> Result<ReducedDivisor> {
        d.validate(curve)?;
        let affine = d.affine_part();
        if let Some((p, m)) = affine.iter().find(|(_, m)| *m < 1) {
            return Err(Error::OutOfRange(format!(
                "affine multiplicity {m} at {} must be positive",
                p.render(curve.field())
            )));
        }
        let j: i64 = affine.iter().map(|(_, m)| m).sum();
        let g = curve.genus() as i64;
        if j > g {
            return Err(Error::OutOfRange(format!("affine part has degree {j} > genus {g}")));
        }
        let n = d.degree();
        if n < j {
            return Err(Error::DegreeTooSmall { n, j });
        }
        Ok(ReducedDivisor { affine, n, j })
    }

    /// Distinct abscissas of the affine part.
    pub fn abscissas(&self) -> Vec<FieldElement> {
        let mut xs: Vec<_> = self.affine.iter().filter_map(|(p, _)| p.x()).collect();
        xs.dedup();
        xs
    }
}

/// Hensel lift of the branch y = τ(x) through (a, q): τ² + h·τ ≡ f mod (x - a)^m,
/// as Taylor coefficients at a. Needs 2q + h(a) ≠ 0.
fn hensel_branch(curve: &Curve, a: FieldElement, q: FieldElement, m: usize) -> Vec<FieldElement> {
    let k = curve.field();
    let ft = curve.f().taylor(a, k);
    let ht = curve.h().taylor(a, k);
    let at = |v: &[FieldElement], i: usize| v.get(i).copied().unwrap_or_default();
    let slope = k.add(k.add(q, q), at(&ht, 0));
    let slope_inv = k.inv(slope).expect("unramified point");
    let mut tau = vec![q];
    for n in 1..m {
        let mut rest = at(&ft, n);
        for i in 1..n {
            rest = k.sub(rest, k.mul(tau[i], tau[n - i]));
        }
        for i in 1..=n {
            rest = k.sub(rest, k.mul(at(&ht, i), tau[n - i]));
        }
        tau.push(k.mul(rest, slope_inv));
    }
    tau
}

fn binomial(n: usize, r: usize) -> u128 {
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Row giving the i-th Taylor coefficient at `a` of Σ_{l ≤ deg} k_l x^l.
fn taylor_row(k: &Field, a: FieldElement, i: usize, deg: usize) -> Vec<FieldElement> {
    (0..=deg)
        .map(|l| {
            if l < i {
                k.zero()
            } else {
                let c = k.from_int((binomial(l, i) % k.p() as u128) as i64);
                k.mul(c, k.pow(a, (l - i) as u64))
            }
        })
        .collect()
}

/// One interpolation target after merging repeated points.
struct Target {
    a: FieldElement,
    q: FieldElement,
    mult: i64,
    ramified: bool,
}

fn merge_targets(curve: &Curve, targets: &[(Point, i64)]) -> Result<Vec<Target>> {
    let k = curve.field();
    let mut by_x: BTreeMap<FieldElement, (FieldElement, i64)> = BTreeMap::new();
    for (p, m) in targets {
        let Point::Affine { x, y } = *p else {
            return Err(Error::OutOfRange("κ passes through affine points only".into()));
        };
        if *m < 1 {
            return Err(Error::OutOfRange(format!("multiplicity {m} must be positive")));
        }
        if !curve.on_curve(p) {
            return Err(Error::NotOnCurve(p.render(k)));
        }
        let e = by_x.entry(x).or_insert((y, 0));
        if e.0 != y {
            return Err(Error::NoInterpolant(format!(
                "two points above x = {}: the divisor is not reduced",
                k.render(x)
            )));
        }
        e.1 += m;
    }
    by_x.into_iter()
        .map(|(a, (q, mult))| {
            let ramified = curve.is_ramification(&Point::affine(a, q))?;
            Ok(Target { a, q, mult, ramified })
        })
        .collect()
}

/// Checks k(a) = q and ord_a(k² + k·h - f) ≥ m for every target.
fn satisfies_targets(curve: &Curve, kpoly: &Poly, targets: &[Target]) -> bool {
    let k = curve.field();
    let resid = kpoly.mul(kpoly, k).add(&kpoly.mul(curve.h(), k), k).sub(curve.f(), k);
    targets.iter().all(|t| {
        kpoly.eval(t.a, k) == t.q && resid.root_order(t.a, k).is_none_or(|o| o as i64 >= t.mult)
    })
}

/// Finds κ: y = k(x) through the targets with their multiplicities, of least
/// degree, or validates `override_k` against the same conditions.
pub fn kappa_interpolate(curve: &Curve, targets: &[(Point, i64)], override_k: Option<&Poly>) -> Result<KappaCurve> {
    if targets.is_empty() {
        return Err(Error::OutOfRange("κ needs at least one target point".into()));
    }
    let k = curve.field();
    let merged = merge_targets(curve, targets)?;
    let j: i64 = merged.iter().map(|t| t.mult).sum();

    if let Some(kpoly) = override_k {
        if !satisfies_targets(curve, kpoly, &merged) {
            return Err(Error::NoInterpolant(format!(
                "override k = {} misses the target points",
                kpoly.render(k)
            )));
        }
        let delta = kpoly.degree().unwrap_or(0).max(1);
        if delta as i64 > j {
            return Err(Error::NoInterpolant(format!("override has degree {delta} > j = {j}")));
        }
        return Ok(KappaCurve { k: kpoly.clone(), delta });
    }

    // linearized conditions: (abscissa, Taylor index, required value)
    let mut conditions: Vec<(FieldElement, usize, FieldElement)> = Vec::new();
    for t in &merged {
        if t.ramified {
            match t.mult {
                1 => {}
                2 => {
                    let resid = Poly::constant(k.mul(t.q, t.q))
                        .add(&curve.h().scale(t.q, k), k)
                        .sub(curve.f(), k);
                    if resid.root_order(t.a, k).is_some_and(|o| o < 2) {
                        return Err(Error::NoInterpolant(format!(
                            "2·{} is not realizable: the curve is smooth there",
                            Point::affine(t.a, t.q).render(k)
                        )));
                    }
                }
                m => {
                    return Err(Error::UnsupportedMultiplicity {
                        point: Point::affine(t.a, t.q).render(k),
                        mult: m,
                    })
                }
            }
            conditions.push((t.a, 0, t.q));
        } else {
            let tau = hensel_branch(curve, t.a, t.q, t.mult as usize);
            conditions.extend(tau.into_iter().enumerate().map(|(i, c)| (t.a, i, c)));
        }
    }

    for deg in 0..conditions.len() {
        let rows = conditions.iter().map(|&(a, i, _)| taylor_row(k, a, i, deg)).collect();
        let m = Matrix::from_rows(rows, deg + 1);
        let rhs: Vec<_> = conditions.iter().map(|c| c.2).collect();
        let sol = linsolve(k, &m, &rhs);
        let Some(coeffs) = sol.particular else {
            continue;
        };
        // at the least consistent degree the Hermite conditions pin k down
        debug_assert!(sol.nullspace.is_empty());
        let kpoly = Poly::new(coeffs);
        if !satisfies_targets(curve, &kpoly, &merged) {
            return Err(Error::NoInterpolant("linearized solution misses a target".into()));
        }
        let delta = kpoly.degree().unwrap_or(0).max(1);
        return Ok(KappaCurve { k: kpoly, delta });
    }
    Err(Error::NoInterpolant("no polynomial meets the conditions".into()))
}

/// Ψ for a divisor in reduced shape: y when j = 0, otherwise
/// (y - k(x)) / Π (x - a_i)^{m_i} with κ through the opposite points.
pub fn psi_build(curve: &Curve, d: &Divisor, override_k: Option<&Poly>) -> Result<FuncElem> {
    let rd = ReducedDivisor::from_divisor(curve, d)?;
    psi_for(curve, &rd, override_k)
}

fn psi_for(curve: &Curve, rd: &ReducedDivisor, override_k: Option<&Poly>) -> Result<FuncElem> {
    let k = curve.field();
    if rd.j == 0 {
        return Ok(FuncElem::y(k));
    }
    let targets = rd
        .affine
        .iter()
        .map(|(p, m)| Ok((curve.opposite(p)?, *m)))
        .collect::<Result<Vec<_>>>()?;
    let kappa = kappa_interpolate(curve, &targets, override_k)?;
    let den = rd.affine.iter().fold(Poly::one(k), |acc, (p, m)| {
        acc.mul(&Poly::linear(k, p.x().expect("affine")).pow(*m as usize, k), k)
    });
    FuncElem::new(kappa.k.neg(k), Poly::one(k), den, k)
}

/// dim L(D) for D = P_1 + ... + P_j + (n - j)·Ω on a genus-g curve.
pub fn rr_dim(g: i64, j: i64, n: i64) -> Result<usize> {
    if g < 1 || j < 0 || j > g || n < j {
        return Err(Error::OutOfRange(format!("need 0 <= j <= g, n >= j; got g={g} j={j} n={n}")));
    }
    let d = if n >= 2 * g - j { n - g + 1 } else { (n - j).div_euclid(2) + 1 };
    Ok(d as usize)
}

/// The explicit basis of L(D).
pub fn rr_basis(curve: &Curve, d: &Divisor, override_k: Option<&Poly>) -> Result<RRBasis> {
    let k = curve.field();
    let rd = ReducedDivisor::from_divisor(curve, d)?;
    let g = curve.genus() as i64;
    let (n, j) = (rd.n, rd.j);
    let psi = psi_for(curve, &rd, override_k)?;
    let x = FuncElem::x(k);
    let mut elements = Vec::new();
    let mut xpow = FuncElem::constant(k.one(), k);
    for _ in 0..=(n - j) / 2 {
        elements.push(xpow.clone());
        xpow = xpow.mul(&x, curve);
    }
    let case = if n - j > 2 * (g - j) {
        let mut term = psi.clone();
        for _ in 0..=((n - j) - 2 * (g - j) - 1) / 2 {
            elements.push(term.clone());
            term = term.mul(&x, curve);
        }
        BasisCase::WithPsi
    } else {
        BasisCase::NoPsi
    };
    Ok(RRBasis { elements, psi, n, j, g, case })
}

/// Whether div(F) + D ≥ 0 holds at every rational point and Ω, and F has no
/// poles away from supp(D) over the algebraic closure.
pub fn in_riemann_roch_space(curve: &Curve, d: &Divisor, func: &FuncElem) -> Result<bool> {
    if func.is_zero() {
        return Ok(true);
    }
    let k = curve.field();
    let abscissas: Vec<_> = d.affine_part().iter().filter_map(|(p, _)| p.x()).collect();
    if !denominator_support_check(func, &abscissas, k) {
        return Ok(false);
    }
    for p in curve.points() {
        if valuation(curve, func, &p)? + d.multiplicity(&p) < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of a family of functions over the base field, computed on the
/// (A, B) numerators brought to a common denominator.
pub fn functions_rank(funcs: &[FuncElem], k: &Field) -> usize {
    if funcs.is_empty() {
        return 0;
    }
    let lcm = funcs.iter().fold(Poly::one(k), |acc, f| {
        let g = acc.gcd(f.c(), k);
        acc.mul(f.c(), k).div_exact(&g, k).expect("gcd divides")
    });
    let cleared: Vec<(Poly, Poly)> = funcs
        .iter()
        .map(|f| {
            let m = lcm.div_exact(f.c(), k).expect("lcm multiple");
            (f.a().mul(&m, k), f.b().mul(&m, k))
        })
        .collect();
    let width_a = cleared.iter().filter_map(|(a, _)| a.degree()).max().map_or(0, |d| d + 1);
    let width_b = cleared.iter().filter_map(|(_, b)| b.degree()).max().map_or(0, |d| d + 1);
    let rows = cleared
        .iter()
        .map(|(a, b)| {
            (0..width_a).map(|i| a.coeff(i)).chain((0..width_b).map(|i| b.coeff(i))).collect()
        })
        .collect();
    Matrix::from_rows(rows, width_a + width_b).rank(k)
}
