use std::collections::BTreeMap;

use num_traits::Zero;

use super::{graded_monomials, Monomial, Multidegree, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Rational};

/// Ideal given by multihomogeneous generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            g.multidegree()?;
        }
        Ok(Ideal { ring: ring.clone(), generators })
    }

    pub fn parse(ring: &Ring, generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<_>>()?;
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Degree-`d` piece: span of `m * g` over generators `g` with
    /// `deg g <= d` and monomials `m` of the complementary degree.
    pub fn graded_piece(&self, d: &Multidegree) -> GradedPiece {
        let monomials = graded_monomials(&self.ring, d);
        let index: BTreeMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in &self.generators {
            let gd = g.multidegree().expect("checked at construction");
            let Some(rest) = d.sub(&gd) else { continue };
            for m in graded_monomials(&self.ring, &rest) {
                let mut row = vec![Rational::zero(); monomials.len()];
                for (gm, c) in g.terms() {
                    row[index[&m.mul(gm)]] = c.clone();
                }
                rows.push(row);
            }
        }
        let (basis, pivots) = if rows.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let r = Matrix::from_rows(&rows, monomials.len()).rref();
            let basis = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
            (basis, r.pivots)
        };
        GradedPiece { ring: self.ring.clone(), degree: d.clone(), monomials, index, basis, pivots }
    }

    /// Membership of a multihomogeneous `f` at its own multidegree.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let d = f.multidegree()?;
        let piece = self.graded_piece(&d);
        Ok(piece.contains(f))
    }
}

/// Basis of `I_d` in reduced row-echelon form against the graded monomials.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    ring: Ring,
    degree: Multidegree,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl GradedPiece {
    pub fn degree(&self) -> &Multidegree {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the ambient space of degree-`d` forms.
    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index(&self) -> &BTreeMap<Monomial, usize> {
        &self.index
    }

    pub fn basis_vectors(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|v| Polynomial::from_coords(&self.ring, &self.monomials, v)).collect()
    }

    /// Coordinates of `f` against the graded monomials; `None` when `f` has
    /// a term of another degree.
    pub fn coords(&self, f: &Polynomial) -> Option<Vec<Rational>> {
        f.coords(&self.index)
    }

    /// Normal form modulo `I_d`: zero exactly on pivot columns, and zero
    /// overall iff `v` lies in `I_d`.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &c * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        match self.coords(f) {
            Some(v) => self.reduce(&v).iter().all(Zero::is_zero),
            None => false,
        }
    }
}

/// Basis of the vector space `I_d`.
pub fn ideal_graded_basis(ideal: &Ideal, d: &Multidegree) -> Vec<Polynomial> {
    ideal.graded_piece(d).basis()
}

#[cfg(test)]
mod tests {
    use super::super::RingSpec;
    use super::*;

    fn twisted_cubic(r: &Ring) -> Ideal {
        Ideal::parse(r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]).unwrap()
    }

    #[test]
    fn graded_pieces() {
        let r = RingSpec::projective("x", 4);
        let tc = twisted_cubic(&r);
        assert_eq!(tc.graded_piece(&Multidegree(vec![2])).dim(), 3);
        let lin = Ideal::parse(&r, &["x0"]).unwrap();
        assert_eq!(lin.graded_piece(&Multidegree(vec![1])).dim(), 1);
        assert_eq!(lin.graded_piece(&Multidegree(vec![2])).dim(), 4);
        assert_eq!(lin.graded_piece(&Multidegree(vec![0])).dim(), 0);
        // rational normal quartic: 15 - 9
        let r5 = RingSpec::projective("x", 5);
        let rnc = Ideal::parse(
            &r5,
            &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x0*x4 - x1*x3", "x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"],
        )
        .unwrap();
        assert_eq!(ideal_graded_basis(&rnc, &Multidegree(vec![2])).len(), 6);
    }

    #[test]
    fn membership() {
        let r = RingSpec::projective("x", 4);
        let tc = twisted_cubic(&r);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(Ideal::parse(&r, &["x0"]).unwrap().contains(&p("x0*x1")).unwrap());
        assert!(tc.contains(&p("x0*x2 - x1^2")).unwrap());
        assert!(tc.contains(&p("x0*(x0*x3 - x1*x2) + x3*(x1*x3 - x2^2)")).unwrap());
        let conic = Ideal::parse(&r, &["x0*x2 - x1^2"]).unwrap();
        assert!(!conic.contains(&p("x0*x3 - x1*x2")).unwrap());
        assert!(conic.contains(&p("x0")).is_ok_and(|b| !b));
        assert!(matches!(conic.contains(&p("x0 + x1^2")), Err(Error::Inhomogeneous(_))));
    }
}
