//! Direct sums of special linear algebras acting on a multigraded ring by
//! derivations.
//!
//! A block matrix `X` acts on points; the induced derivation on coordinate
//! functions is `act(X, x_i) = -sum_j X_ij x_j`, extended by Leibniz. With
//! this sign `act` is a Lie algebra homomorphism.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{int, Matrix, Rational};
use crate::polyring::{Monomial, Polynomial, Ring};

/// One traceless square matrix per variable block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgElement {
    blocks: Vec<Matrix>,
}

impl AlgElement {
    /// Panics if a block is not square.
    pub fn new(blocks: Vec<Matrix>) -> Self {
        assert!(blocks.iter().all(Matrix::is_square), "blocks must be square");
        AlgElement { blocks }
    }

    pub fn zero(sizes: &[usize]) -> Self {
        AlgElement { blocks: sizes.iter().map(|&n| Matrix::zeros(n, n)).collect() }
    }

    /// Element supported on block `b` only.
    pub fn in_block(sizes: &[usize], b: usize, m: Matrix) -> Self {
        let mut e = Self::zero(sizes);
        assert_eq!(m.rows(), sizes[b]);
        e.blocks[b] = m;
        e
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &Matrix {
        &self.blocks[b]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_traceless(&self) -> bool {
        self.blocks.iter().all(|m| m.trace().is_zero())
    }

    fn same_shape(&self, other: &AlgElement) -> Result<()> {
        if self.sizes() == other.sizes() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        self.same_shape(other).expect("block sizes differ");
        AlgElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        self.same_shape(other).expect("block sizes differ");
        AlgElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> AlgElement {
        AlgElement { blocks: self.blocks.iter().map(|m| m.scale(c)).collect() }
    }

    /// Block-diagonal matrix in the defining representation.
    pub fn to_matrix(&self) -> Matrix {
        let n: usize = self.sizes().iter().sum();
        let mut out = Matrix::zeros(n, n);
        let mut off = 0;
        for m in &self.blocks {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out[(off + i, off + j)] = m[(i, j)].clone();
                }
            }
            off += m.rows();
        }
        out
    }

    /// All block entries concatenated in row-major order.
    pub fn flatten(&self) -> Vec<Rational> {
        self.blocks.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Conjugation `g X g^{-1}` blockwise.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<AlgElement> {
        let blocks =
            self.blocks.iter().zip(g).map(|(x, gb)| Ok(gb.mul(x).mul(&gb.inverse()?))).collect::<Result<_>>()?;
        Ok(AlgElement { blocks })
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(Matrix::to_string).collect();
        f.write_str(&parts.join(" (+) "))
    }
}

/// Blockwise commutator `XY - YX`.
pub fn bracket(x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
    x.same_shape(y)?;
    Ok(AlgElement { blocks: x.blocks.iter().zip(&y.blocks).map(|(a, b)| a.commutator(b)).collect() })
}

/// The derivation of `X` applied to `f`.
pub fn act(x: &AlgElement, f: &Polynomial) -> Result<Polynomial> {
    let ring = f.ring();
    if x.sizes() != ring.block_sizes() {
        return Err(Error::RingMismatch);
    }
    let n = ring.nvars();
    // images[i] = list of (j, -X_ij) over the block of i
    let mut images: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (b, m) in x.blocks.iter().enumerate() {
        let range = ring.block_range(b);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() {
                    images[range.start + i].push((range.start + j, -m[(i, j)].clone()));
                }
            }
        }
    }
    let mut out = Polynomial::zero(ring);
    for (mono, c) in f.terms() {
        let e = mono.exponents();
        for i in (0..n).filter(|&i| e[i] > 0) {
            let base = c * int(e[i] as i64);
            for (j, xij) in &images[i] {
                let mut ex = e.to_vec();
                ex[i] -= 1;
                ex[*j] += 1;
                out.add_term(Monomial::from_exponents(ex), &base * xij);
            }
        }
    }
    Ok(out)
}

/// `sl(n_1) + ... + sl(n_k)` for the blocks of a ring.
#[derive(Clone, Debug)]
pub struct AmbientAlgebra {
    ring: Ring,
    basis: Vec<AlgElement>,
}

impl AmbientAlgebra {
    /// Basis per block: off-diagonal `E_ij` in row-major order, then
    /// `E_ii - E_{i+1,i+1}`.
    pub fn new(ring: &Ring) -> Self {
        let sizes = ring.block_sizes();
        let mut basis = Vec::new();
        for (b, &n) in sizes.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        basis.push(AlgElement::in_block(&sizes, b, Matrix::unit(n, i, j)));
                    }
                }
            }
            for i in 0..n.saturating_sub(1) {
                let h = Matrix::unit(n, i, i).sub(&Matrix::unit(n, i + 1, i + 1));
                basis.push(AlgElement::in_block(&sizes, b, h));
            }
        }
        AmbientAlgebra { ring: ring.clone(), basis }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[AlgElement] {
        &self.basis
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.ring.block_sizes()
    }

    /// `sum_k c_k B_k`.
    pub fn combination(&self, coeffs: &[Rational]) -> AlgElement {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut acc = AlgElement::zero(&self.block_sizes());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Image of the standard triple under `Sym^d` of the defining
/// representation, acting on points with coordinates `p_i = u^{d-i} v^i`.
/// Returns `(E, F, H)` with `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
pub fn sl2_in_sld(d: usize) -> (AlgElement, AlgElement, AlgElement) {
    assert!(d >= 1, "d must be positive");
    let n = d + 1;
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    let mut h = Matrix::zeros(n, n);
    for i in 0..n {
        if i + 1 < n {
            e[(i, i + 1)] = int((d - i) as i64);
        }
        if i > 0 {
            f[(i, i - 1)] = int(i as i64);
        }
        h[(i, i)] = int(d as i64 - 2 * i as i64);
    }
    (AlgElement::new(vec![e]), AlgElement::new(vec![f]), AlgElement::new(vec![h]))
}
