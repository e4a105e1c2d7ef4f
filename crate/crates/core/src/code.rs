//! Algebraic-geometry (Goppa) codes C_L(D, G): evaluation of an L(D) basis
//! at rational points outside supp(D).

use rayon::prelude::*;

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::function::{eval, Divisor};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::riemann_roch::{rr_basis, RRBasis};

/// Default cap on the number of message vectors enumerated by [`min_distance`].
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    gen: Matrix,
    /// Degree of the divisor the code was built from, when known.
    deg_d: Option<i64>,
}

impl LinearCode {
    /// Wraps a generator matrix, which must have full row rank.
    pub fn from_generator(field: Field, gen: Matrix) -> Result<LinearCode> {
        let rank = gen.rank(&field);
        if rank != gen.rows() {
            return Err(Error::RankDeficient { rank, expected: gen.rows() });
        }
        Ok(LinearCode { field, gen, deg_d: None })
    }

    pub fn with_divisor_degree(mut self, deg: i64) -> LinearCode {
        self.deg_d = Some(deg);
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// Length m.
    pub fn length(&self) -> usize {
        self.gen.cols()
    }

    /// Dimension k.
    pub fn dimension(&self) -> usize {
        self.gen.rows()
    }

    pub fn divisor_degree(&self) -> Option<i64> {
        self.deg_d
    }

    /// m - deg D, the designed distance.
    pub fn goppa_bound(&self) -> Option<i64> {
        self.deg_d.map(|d| self.length() as i64 - d)
    }

    pub fn singleton_bound(&self) -> usize {
        self.length() - self.dimension() + 1
    }

    /// Report line, with the distance if it is known.
    pub fn report(&self, dist: Option<&Distance>) -> String {
        let (m, k) = (self.length(), self.dimension());
        let d = match dist {
            Some(d) => format!("d={} mds={}", d.d, d.mds),
            None => {
                let lo = self.goppa_bound().unwrap_or(1).max(1);
                format!("d=[{lo},{}] mds=unknown", self.singleton_bound())
            }
        };
        let bound = self.goppa_bound().map_or_else(|| "none".to_string(), |b| b.to_string());
        format!("code m={m} k={k} {d} goppa_bound={bound}")
    }
}

/// The code together with the basis it was built from.
#[derive(Clone, Debug)]
pub struct GoppaCode {
    pub code: LinearCode,
    pub basis: RRBasis,
    pub points: Vec<Point>,
}

/// Evaluates the L(D) basis at `points`: row r, column c is basis[r](points[c]).
pub fn generator_matrix(
    curve: &Curve,
    d: &Divisor,
    points: &[Point],
    kappa_override: Option<&Poly>,
) -> Result<GoppaCode> {
    let k = curve.field();
    if points.is_empty() {
        return Err(Error::OutOfRange("need at least one evaluation point".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if p.is_infinity() {
            return Err(Error::OutOfRange("evaluation points must be affine".into()));
        }
        if !curve.on_curve(p) {
            return Err(Error::NotOnCurve(p.render(k)));
        }
        if d.contains(p) {
            return Err(Error::PointInSupport(p.render(k)));
        }
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoint(p.render(k)));
        }
    }
    let basis = rr_basis(curve, d, kappa_override)?;
    let rows = basis
        .elements
        .iter()
        .map(|f| points.iter().map(|p| eval(curve, f, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let gen = Matrix::from_rows(rows, points.len());
    let code = LinearCode::from_generator(k.clone(), gen)?.with_divisor_degree(d.degree());
    Ok(GoppaCode { code, basis, points: points.to_vec() })
}

/// A parity-check matrix and, when the generator's pivots were not the
/// leading columns, the column order used to reach systematic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheck {
    pub h: Matrix,
    pub permutation: Option<Vec<usize>>,
}

/// H = [-Aᵀ | I] from the systematic form [I | A] of the generator, built in
/// permuted coordinates and mapped back if needed.
pub fn parity_check(code: &LinearCode) -> Result<ParityCheck> {
    let k = &code.field;
    let (m, dim) = (code.length(), code.dimension());
    let (red, pivots) = code.gen.rref(k);
    if pivots.len() != dim {
        return Err(Error::RankDeficient { rank: pivots.len(), expected: dim });
    }
    let systematic = pivots.iter().enumerate().all(|(i, &p)| i == p);
    let perm: Vec<usize> = pivots.iter().copied().chain((0..m).filter(|c| !pivots.contains(c))).collect();
    let red = if systematic { red } else { red.permute_columns(&perm) };

    let r = m - dim;
    let mut hp = Matrix::zeros(r, m);
    for i in 0..r {
        for row in 0..dim {
            hp.set(i, row, k.neg(red.get(row, dim + i)));
        }
        hp.set(i, dim + i, k.one());
    }
    if systematic {
        return Ok(ParityCheck { h: hp, permutation: None });
    }
    let mut h = Matrix::zeros(r, m);
    for i in 0..r {
        for (c, &orig) in perm.iter().enumerate() {
            h.set(i, orig, hp.get(i, c));
        }
    }
    Ok(ParityCheck { h, permutation: Some(perm) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Distance {
    pub d: usize,
    pub mds: bool,
}

/// Exact minimum distance by enumerating all q^k - 1 nonzero messages.
pub fn min_distance(code: &LinearCode, budget: u128) -> Result<Distance> {
    min_distance_chunked(code, budget, rayon::current_num_threads().max(1) * 8)
}

/// As [`min_distance`], splitting the message range into `chunks` pieces
/// searched in parallel.
pub fn min_distance_chunked(code: &LinearCode, budget: u128, chunks: usize) -> Result<Distance> {
    let k = &code.field;
    let q = k.q() as u128;
    let dim = code.dimension() as u32;
    let needed = q.checked_pow(dim).map_or(u128::MAX, |n| n - 1);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let total = needed as u64 + 1;
    let chunks = (chunks.max(1) as u64).min(total);
    let step = total.div_ceil(chunks);
    let rows = code.gen.to_rows();
    let d = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = (c * step).max(1);
            let hi = ((c + 1) * step).min(total);
            (lo..hi).map(|msg| weight(k, &rows, msg)).min().unwrap_or(usize::MAX)
        })
        .min()
        .unwrap_or(usize::MAX);
    let dist = Distance { d, mds: d == code.singleton_bound() };
    if let Some(bound) = code.goppa_bound() {
        if code.length() as i64 > code.deg_d.unwrap_or(0) && (d as i64) < bound {
            return Err(Error::GoppaBoundViolated { d, bound });
        }
    }
    Ok(dist)
}

/// Hamming weight of the codeword for message number `msg` (base-q digits).
fn weight(k: &Field, rows: &[Vec<FieldElement>], mut msg: u64) -> usize {
    let m = rows.first().map_or(0, |r| r.len());
    let mut word = vec![k.zero(); m];
    for row in rows {
        let coef = k.element(msg % k.q()).expect("digit below q");
        msg /= k.q();
        if coef.value() == 0 {
            continue;
        }
        for (w, &g) in word.iter_mut().zip(row) {
            *w = k.add(*w, k.mul(coef, g));
        }
    }
    word.iter().filter(|e| e.value() != 0).count()
}
