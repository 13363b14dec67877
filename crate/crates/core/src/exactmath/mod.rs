//! Exact rational scalars and dense linear algebra over them.
//!
//! Everything downstream (ideal membership, stabilizer systems, Killing
//! forms) reduces to row reduction over `Q`, so this module never rounds.

mod matrix;
mod upoly;

pub use matrix::{JordanType, Matrix, Rref};
pub use upoly::UPoly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a [`Rational`]. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `7`, `-3/4` or `+2/6` (normalized to `1/3`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: `{s}`") };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// `a` or `a/b`, the inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

/// Linear span helpers on row vectors.
pub mod span {
    use super::{Matrix, Rational};
    use num_traits::Zero;

    /// Rank of the given vectors (all of equal length).
    pub fn rank(vectors: &[Vec<Rational>], len: usize) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        Matrix::from_rows(vectors, len).rref().rank
    }

    /// Coordinates of `v` in the basis `basis`, if `v` lies in its span.
    pub fn coordinates(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
        let n = v.len();
        let k = basis.len();
        // columns are basis vectors; augmented with v
        let mut m = Matrix::zeros(n, k + 1);
        for (j, b) in basis.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = b[i].clone();
            }
        }
        for i in 0..n {
            m[(i, k)] = v[i].clone();
        }
        let r = m.rref();
        if r.pivots.contains(&k) {
            return None;
        }
        let mut out = vec![Rational::zero(); k];
        for (row, &p) in r.pivots.iter().enumerate() {
            out[p] = r.matrix[(row, k)].clone();
        }
        Some(out)
    }

    /// True when every vector of `a` lies in the span of `b`.
    pub fn contained_in(a: &[Vec<Rational>], b: &[Vec<Rational>], len: usize) -> bool {
        let rb = rank(b, len);
        let mut all = b.to_vec();
        all.extend_from_slice(a);
        rank(&all, len) == rb
    }
}
