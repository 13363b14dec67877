//! Stabilizer subalgebras of multihomogeneous ideals.
//!
//! `X` preserves `I` as soon as `act(X, g) ∈ I` for every generator `g`:
//! `act(X, sum a_i g_i) = sum act(X, a_i) g_i + a_i act(X, g_i)` and both
//! sums lie in `I`. So one linear system over the generators suffices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{span, Matrix, Rational};
use crate::lieaction::{act, bracket, AlgElement, AmbientAlgebra};
use crate::polyring::{GradedPiece, Ideal, Multidegree};

/// A subalgebra with basis `b_0, ..., b_{k-1}` and structure constants
/// `[b_i, b_j] = sum_l c[i][j][l] b_l`.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    ambient: AmbientAlgebra,
    basis: Vec<AlgElement>,
    structure_constants: Vec<Vec<Vec<Rational>>>,
}

impl Subalgebra {
    /// Span of `basis` inside `ambient`. Fails with `BracketClosure` when the
    /// span is not closed, and with `Dimension` when the basis is dependent.
    pub fn from_basis(ambient: &AmbientAlgebra, basis: Vec<AlgElement>) -> Result<Self> {
        let flat: Vec<Vec<Rational>> = basis.iter().map(AlgElement::flatten).collect();
        let len = ambient.block_sizes().iter().map(|n| n * n).sum();
        if span::rank(&flat, len) != basis.len() {
            return Err(Error::Dimension("subalgebra basis is linearly dependent".into()));
        }
        let k = basis.len();
        let mut c = vec![vec![vec![Rational::zero(); k]; k]; k];
        for i in 0..k {
            for j in (i + 1)..k {
                let b = bracket(&basis[i], &basis[j])?;
                let coords = span::coordinates(&flat, &b.flatten())
                    .ok_or_else(|| Error::BracketClosure(format!("[b{i}, b{j}] = {b} leaves the span")))?;
                for (l, x) in coords.into_iter().enumerate() {
                    c[j][i][l] = -x.clone();
                    c[i][j][l] = x;
                }
            }
        }
        Ok(Subalgebra { ambient: ambient.clone(), basis, structure_constants: c })
    }

    pub fn ambient(&self) -> &AmbientAlgebra {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[AlgElement] {
        &self.basis
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.structure_constants
    }

    /// Coordinates of `x` in the basis, if it lies in the subalgebra.
    pub fn coordinates(&self, x: &AlgElement) -> Option<Vec<Rational>> {
        let flat: Vec<Vec<Rational>> = self.basis.iter().map(AlgElement::flatten).collect();
        span::coordinates(&flat, &x.flatten())
    }

    pub fn contains(&self, x: &AlgElement) -> bool {
        self.coordinates(x).is_some()
    }

    /// Re-verifies closure against the stored constants.
    pub fn check_closure(&self) -> Result<()> {
        let k = self.dim();
        for i in 0..k {
            for j in 0..k {
                let lhs = bracket(&self.basis[i], &self.basis[j])?;
                let mut rhs = AlgElement::zero(&self.ambient.block_sizes());
                for (l, c) in self.structure_constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&self.basis[l].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(Error::BracketClosure(format!("[b{i}, b{j}] disagrees with constants")));
                }
            }
        }
        Ok(())
    }

    /// Same subspace of the ambient algebra.
    pub fn same_span(&self, other: &Subalgebra) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|x| self.contains(x))
    }
}

/// Subalgebra of `g` preserving `ideal`.
pub fn stabilizer(ideal: &Ideal, g: &AmbientAlgebra) -> Result<Subalgebra> {
    joint_stabilizer(std::slice::from_ref(ideal), g)
}

/// Subalgebra of `g` preserving every ideal in `ideals`, as one linear system.
pub fn joint_stabilizer(ideals: &[Ideal], g: &AmbientAlgebra) -> Result<Subalgebra> {
    let n = g.dim();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for ideal in ideals {
        if ideal.ring() != g.ring() {
            return Err(Error::RingMismatch);
        }
        let mut pieces: BTreeMap<Multidegree, GradedPiece> = BTreeMap::new();
        for f in ideal.generators() {
            let d = f.multidegree()?;
            let piece = pieces.entry(d.clone()).or_insert_with(|| ideal.graded_piece(&d));
            // column k = normal form of act(B_k, f) modulo I_d
            let columns: Vec<Vec<Rational>> = g
                .basis()
                .iter()
                .map(|b| {
                    let image = act(b, f)?;
                    let v = piece.coords(&image).expect("act preserves multidegree");
                    Ok(piece.reduce(&v))
                })
                .collect::<Result<_>>()?;
            for r in 0..piece.ambient_dim() {
                if columns.iter().any(|c| !c[r].is_zero()) {
                    rows.push(columns.iter().map(|c| c[r].clone()).collect());
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..n)
            .map(|k| {
                let mut v = vec![Rational::zero(); n];
                v[k] = Rational::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(&rows, n).kernel_basis()
    };
    let basis = kernel.iter().map(|v| g.combination(v)).collect();
    Subalgebra::from_basis(g, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use crate::lieaction::sl2_in_sld;
    use crate::polyring::RingSpec;

    #[test]
    fn twisted_cubic_is_three_dimensional() {
        let r = RingSpec::projective("x", 4);
        let tc = Ideal::parse(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]).unwrap();
        let s = stabilizer(&tc, &AmbientAlgebra::new(&r)).unwrap();
        assert_eq!(s.dim(), 3);
        s.check_closure().unwrap();
        let (e, f, h) = sl2_in_sld(3);
        assert!(s.contains(&e) && s.contains(&f) && s.contains(&h));
    }

    #[test]
    fn linear_ideals() {
        let r = RingSpec::projective("x", 4);
        let g = AmbientAlgebra::new(&r);
        assert_eq!(stabilizer(&Ideal::parse(&r, &["x0"]).unwrap(), &g).unwrap().dim(), 12);
        assert_eq!(stabilizer(&Ideal::parse(&r, &["x0", "x1"]).unwrap(), &g).unwrap().dim(), 11);
        let empty = Ideal::new(&r, vec![]).unwrap();
        assert_eq!(stabilizer(&empty, &g).unwrap().dim(), 15);
    }

    #[test]
    fn bidegree_curves() {
        let r = RingSpec::product(&[("x", 2), ("y", 2)]);
        let g = AmbientAlgebra::new(&r);
        let s = stabilizer(&Ideal::parse(&r, &["x0*y0^3 + x1*y1^3"]).unwrap(), &g).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0].to_matrix().jordan_type().unwrap(), crate::exactmath::JordanType::Semisimple);
        let s = stabilizer(&Ideal::parse(&r, &["x0*y0 + x1*y1"]).unwrap(), &g).unwrap();
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn joint_equals_single_for_one_ideal() {
        let r = RingSpec::projective("x", 3);
        let g = AmbientAlgebra::new(&r);
        let i = Ideal::parse(&r, &["x0*x2 - x1^2"]).unwrap();
        let a = stabilizer(&i, &g).unwrap();
        let b = joint_stabilizer(std::slice::from_ref(&i), &g).unwrap();
        assert!(a.same_span(&b));
        assert_eq!(a.dim(), 3);
        let j = Ideal::parse(&r, &["x0"]).unwrap();
        let c = joint_stabilizer(&[i, j], &g).unwrap();
        assert!(c.dim() <= a.dim());
    }

    #[test]
    fn dependent_or_open_bases_are_rejected() {
        let r = RingSpec::projective("x", 2);
        let g = AmbientAlgebra::new(&r);
        let e = g.basis()[0].clone();
        let f = g.basis()[1].clone();
        assert!(matches!(Subalgebra::from_basis(&g, vec![e.clone(), e.scale(&int(2))]), Err(Error::Dimension(_))));
        assert!(matches!(Subalgebra::from_basis(&g, vec![e, f]), Err(Error::BracketClosure(_))));
    }
}
