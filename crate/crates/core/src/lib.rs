//! Riemann-Roch bases on imaginary hyperelliptic curves and the Goppa codes
//! built from them.
//!
//! ```
//! use hyperell::code::{generator_matrix, min_distance, parity_check, DEFAULT_BUDGET};
//! use hyperell::curve::{Curve, Point};
//! use hyperell::field::Field;
//! use hyperell::function::Divisor;
//! use hyperell::poly::Poly;
//!
//! # fn main() -> hyperell::error::Result<()> {
//! let k = Field::prime(5)?;
//! let curve = Curve::new(k.clone(), Poly::from_ints(&k, &[1, 4, 0, 0, 0, 1]), Poly::zero(), false)?;
//! let pt = |a, b| Point::affine(k.from_int(a), k.from_int(b));
//! let d = Divisor::from_parts(&[(pt(0, 1), 1), (pt(1, 4), 1)], 2);
//! let g: Vec<Point> = [(2, 1), (2, 4), (3, 1), (3, 4), (4, 1), (4, 4)].map(|(a, b)| pt(a, b)).to_vec();
//!
//! let code = generator_matrix(&curve, &d, &g, None)?;
//! let h = parity_check(&code.code)?.h;
//! assert!(code.code.generator().mul(&h.transpose(), &k).is_zero());
//! let dist = min_distance(&code.code, DEFAULT_BUDGET)?;
//! assert_eq!((dist.d, dist.mds), (4, true));
//! # Ok(())
//! # }
//! ```

pub mod code;
pub mod curve;
pub mod error;
pub mod field;
pub mod function;
pub mod jobspec;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod riemann_roch;
