//! Brute-force dim L(D) by linear algebra on an ansatz, independent of the
//! κ/Ψ construction.
//!
//! Every F in L(D) with D = Σ m_i·P_i + (n - j)·Ω can be written as
//! (A + B·y) / C with C = Π (x - a_i)^{m_i}. The pole bound at Ω caps the
//! degrees of A and B; the conditions at each abscissa come from local power
//! series of the branches y = τ(w), w = x - a.

use std::collections::BTreeMap;

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::function::Divisor;
use crate::matrix::Matrix;

/// Truncated power series in w.
type Series = Vec<FieldElement>;

fn series_mul(k: &Field, a: &[FieldElement], b: &[FieldElement], prec: usize) -> Series {
    let mut out = vec![k.zero(); prec];
    for (i, &x) in a.iter().enumerate().take(prec) {
        if x.value() == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(prec - i) {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    out
}

/// 1/a mod w^prec, by long division; a[0] must be nonzero.
fn series_inv(k: &Field, a: &[FieldElement], prec: usize) -> Series {
    let c0 = k.inv(a[0]).expect("unit series");
    let mut out = vec![k.zero(); prec];
    out[0] = c0;
    for n in 1..prec {
        let s = (1..=n.min(a.len() - 1)).fold(k.zero(), |acc, i| k.add(acc, k.mul(a[i], out[n - i])));
        out[n] = k.neg(k.mul(s, c0));
    }
    out
}

/// A polynomial with coefficients `p` written as a series in w = x - a.
fn poly_series(k: &Field, p: &[FieldElement], a: FieldElement, prec: usize) -> Series {
    // Horner in the series ring: p(a + w)
    let lin = [a, k.one()];
    p.iter().rev().fold(vec![k.zero(); prec], |acc, &c| {
        let mut next = series_mul(k, &acc, &lin, prec);
        next[0] = k.add(next[0], c);
        next
    })
}

/// The branch y = τ(w) through (a, b): Newton iteration on τ² + h·τ - f.
fn branch_series(curve: &Curve, a: FieldElement, b: FieldElement, prec: usize) -> Series {
    let k = curve.field();
    let f = poly_series(k, curve.f().coeffs(), a, prec);
    let h = poly_series(k, curve.h().coeffs(), a, prec);
    let mut tau = vec![k.zero(); prec];
    tau[0] = b;
    let mut done = 1;
    while done < prec {
        done = (2 * done).min(prec);
        let sq = series_mul(k, &tau, &tau, done);
        let ht = series_mul(k, &h, &tau, done);
        let resid: Series = (0..done).map(|i| k.sub(k.add(sq[i], ht[i]), f[i])).collect();
        let deriv: Series = (0..done).map(|i| k.add(k.add(tau[i], tau[i]), h[i])).collect();
        let step = series_mul(k, &resid, &series_inv(k, &deriv, done), done);
        for i in 0..done {
            tau[i] = k.sub(tau[i], step[i]);
        }
    }
    tau
}

/// dim L(D) for an effective affine part plus any multiple of Ω, at the
/// default series precision.
pub fn dim_oracle(curve: &Curve, d: &Divisor) -> Result<usize> {
    let g = curve.genus() as i64;
    let j: i64 = d.affine_part().iter().map(|(_, m)| m).sum();
    dim_oracle_with_precision(curve, d, (2 * j + 2 * g + 2) as usize)
}

/// As [`dim_oracle`] with an explicit number of series terms, which must
/// cover the largest local multiplicity.
pub fn dim_oracle_with_precision(curve: &Curve, d: &Divisor, prec: usize) -> Result<usize> {
    d.validate(curve)?;
    let k = curve.field();
    let g = curve.genus() as i64;
    let affine = d.affine_part();
    if affine.iter().any(|(_, m)| *m < 1) {
        return Err(Error::OutOfRange("affine part must be effective".into()));
    }
    let j: i64 = affine.iter().map(|(_, m)| m).sum();
    let n = d.degree();
    if n < j {
        return Ok(0);
    }
    let deg_a = (n - j).div_euclid(2) + j;
    let deg_b = (n - j - 2 * g - 1).div_euclid(2) + j;
    let na = (deg_a + 1) as usize;
    let nb = (deg_b + 1).max(0) as usize;

    let mut above: BTreeMap<FieldElement, Vec<(FieldElement, i64)>> = BTreeMap::new();
    for (p, m) in &affine {
        if let Point::Affine { x, y } = *p {
            above.entry(x).or_default().push((y, *m));
        }
    }

    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for (&a, pts) in &above {
        let e: i64 = pts.iter().map(|(_, m)| m).sum();
        if e as usize > prec {
            return Err(Error::OutOfRange(format!("precision {prec} below multiplicity {e}")));
        }
        let prec = prec.max(1);
        // series of each unknown's monomial x^l at a
        let mono: Vec<Series> = (0..na.max(nb))
            .map(|l| {
                let mut c = vec![k.zero(); l + 1];
                c[l] = k.one();
                poly_series(k, &c, a, prec)
            })
            .collect();
        let h_at = curve.h().coeffs().iter().rev().fold(k.zero(), |acc, &c| k.add(k.mul(acc, a), c));
        let b0 = pts[0].0;
        let ramified = k.add(k.add(b0, b0), h_at).value() == 0;

        if ramified {
            // A + b·B vanishes to order ⌈e/2⌉ and B to order ⌈(e-1)/2⌉
            let need_sum = ((e + 1) / 2) as usize;
            let need_b = (e / 2) as usize;
            for i in 0..need_sum {
                let mut row: Vec<_> = (0..na).map(|l| mono[l][i]).collect();
                row.extend((0..nb).map(|l| k.mul(b0, mono[l][i])));
                rows.push(row);
            }
            for i in 0..need_b {
                let mut row = vec![k.zero(); na];
                row.extend((0..nb).map(|l| mono[l][i]));
                rows.push(row);
            }
            continue;
        }

        let other = k.neg(k.add(b0, h_at));
        for ordinate in [b0, other] {
            let own = pts.iter().find(|(y, _)| *y == ordinate).map_or(0, |(_, m)| *m);
            let need = (e - own) as usize;
            if need == 0 {
                continue;
            }
            let tau = branch_series(curve, a, ordinate, prec);
            let tb: Vec<Series> = (0..nb).map(|l| series_mul(k, &mono[l], &tau, prec)).collect();
            for i in 0..need {
                let mut row: Vec<_> = (0..na).map(|l| mono[l][i]).collect();
                row.extend((0..nb).map(|l| tb[l][i]));
                rows.push(row);
            }
        }
    }
    let unknowns = na + nb;
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows, unknowns).rank(k) };
    Ok(unknowns - rank)
}
