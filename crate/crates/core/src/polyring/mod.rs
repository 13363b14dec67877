//! Multigraded polynomial rings over `Q`, one variable block per projective
//! factor, with graded pieces of ideals and same-degree membership.

mod ideal;
mod parse;

pub use ideal::{ideal_graded_basis, GradedPiece, Ideal};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, int, is_negative, Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub name: String,
    pub vars: Vec<String>,
}

/// Variable blocks of a multigraded ring. Variables are numbered globally in
/// block order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    blocks: Vec<Block>,
    offsets: Vec<usize>,
}

pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new<S: AsRef<str>>(blocks: &[(S, Vec<S>)]) -> Result<Ring> {
        if blocks.is_empty() {
            return Err(Error::InvalidRing("no blocks".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut offsets = Vec::new();
        let mut off = 0;
        for (name, vars) in blocks {
            if vars.is_empty() {
                return Err(Error::InvalidRing(format!("block `{}` is empty", name.as_ref())));
            }
            for v in vars {
                let v = v.as_ref();
                let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
                }
                if !seen.insert(v.to_string()) {
                    return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
                }
            }
            offsets.push(off);
            off += vars.len();
            out.push(Block {
                name: name.as_ref().to_string(),
                vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            });
        }
        Ok(Arc::new(RingSpec { blocks: out, offsets }))
    }

    /// Single block `prefix0, ..., prefix{n-1}`.
    pub fn projective(prefix: &str, n: usize) -> Ring {
        Self::product(&[(prefix, n)])
    }

    /// One block per `(prefix, size)` with numbered variables.
    pub fn product(blocks: &[(&str, usize)]) -> Ring {
        let spec: Vec<(String, Vec<String>)> =
            blocks.iter().map(|&(p, n)| (p.to_string(), (0..n).map(|i| format!("{p}{i}")).collect())).collect();
        Self::new(&spec).expect("numbered variables are valid")
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.vars.len()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(|b| b.vars.len()).sum()
    }

    /// Global index range of block `b`.
    pub fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b] + self.blocks[b].vars.len()
    }

    pub fn block_of(&self, var: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= var).expect("variable index in range")
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.blocks.iter().zip(&self.offsets).find_map(|(b, &o)| b.vars.iter().position(|v| v == name).map(|i| o + i))
    }

    pub fn var_name(&self, i: usize) -> &str {
        let b = self.block_of(i);
        &self.blocks[b].vars[i - self.offsets[b]]
    }
}

/// Exponent vector indexed by global variable number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }

    pub fn multidegree(&self, ring: &RingSpec) -> Multidegree {
        Multidegree((0..ring.num_blocks()).map(|b| self.0[ring.block_range(b)].iter().sum()).collect())
    }

    fn write(&self, ring: &RingSpec, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(ring.var_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// One total degree per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn zero(nblocks: usize) -> Self {
        Multidegree(vec![0; nblocks])
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Multidegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sub(&self, other: &Multidegree) -> Option<Multidegree> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Multidegree)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// All monomials of multidegree `d`. Block-major; within a block,
/// lexicographic with `x0^d` first.
pub fn graded_monomials(ring: &RingSpec, d: &Multidegree) -> Vec<Monomial> {
    assert_eq!(d.0.len(), ring.num_blocks(), "multidegree length");
    let per_block: Vec<Vec<Vec<u32>>> =
        ring.block_sizes().iter().zip(&d.0).map(|(&n, &deg)| compositions(n, deg)).collect();
    let mut out = vec![Vec::new()];
    for block in &per_block {
        let mut next = Vec::with_capacity(out.len() * block.len());
        for prefix in &out {
            for e in block {
                let mut v: Vec<u32> = prefix.clone();
                v.extend_from_slice(e);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial).collect()
}

/// Exponent vectors of length `n` summing to `d`, lexicographically
/// descending.
fn compositions(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for rest in compositions(n - 1, d - first) {
            let mut v = Vec::with_capacity(n);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), Rational::one())
    }

    /// Variable by name; panics if absent.
    pub fn named(ring: &Ring, name: &str) -> Self {
        let i = ring.var_index(name).unwrap_or_else(|| panic!("no variable `{name}`"));
        Self::var(ring, i)
    }

    pub fn parse(ring: &Ring, s: &str) -> Result<Self> {
        parse::parse(ring, s)
    }

    /// Builds from a coefficient vector against `monomials`.
    pub fn from_coords(ring: &Ring, monomials: &[Monomial], coords: &[Rational]) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in monomials.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Self::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::constant(&self.ring, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Common multidegree of all terms.
    pub fn multidegree(&self) -> Result<Multidegree> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?.multidegree(&self.ring);
        for m in it {
            if m.multidegree(&self.ring) != first {
                return Err(Error::Inhomogeneous(self.to_string()));
            }
        }
        Ok(first)
    }

    /// Coefficients against `index`; `None` if a term falls outside it.
    pub fn coords(&self, index: &BTreeMap<Monomial, usize>) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); index.len()];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * int(e as i64));
        }
        out
    }

    /// Replaces every variable `x_i` by `images[i]`; the images may live in
    /// any single ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.ring.nvars())));
        }
        let target = images.first().map(|p| p.ring.clone()).ok_or(Error::RingMismatch)?;
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&images[i].pow(e))?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Linear change of coordinates within each block:
    /// `x_i -> sum_j g_b[i][j] x_j` for `x_i` in block `b`.
    pub fn linear_substitute(&self, per_block: &[Matrix]) -> Result<Polynomial> {
        let ring = &self.ring;
        if per_block.len() != ring.num_blocks() {
            return Err(Error::Dimension("one matrix per block expected".into()));
        }
        let mut images = Vec::with_capacity(ring.nvars());
        for (b, g) in per_block.iter().enumerate() {
            let range = ring.block_range(b);
            if g.rows() != range.len() || g.cols() != range.len() {
                return Err(Error::Dimension(format!("block {b} matrix has wrong size")));
            }
            for i in 0..range.len() {
                let mut img = Self::zero(ring);
                for j in 0..range.len() {
                    img.add_term(Monomial::var(ring.nvars(), range.start + j), g[(i, j)].clone());
                }
                images.push(img);
            }
        }
        self.substitute(&images)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.clone();
                for (x, &e) in point.iter().zip(&m.0) {
                    for _ in 0..e {
                        t *= x;
                    }
                }
                t
            })
            .sum()
    }

    /// Quotient `self / d` when `d` divides `self` exactly; both homogeneous.
    /// Solved as a linear system over the monomials of the quotient degree.
    pub fn divide_exact(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(d)?;
        if self.is_zero() {
            return Ok(Some(Self::zero(&self.ring)));
        }
        let dd = d.multidegree()?;
        let fd = self.multidegree()?;
        let Some(qd) = fd.sub(&dd) else {
            return Ok(None);
        };
        let qmons = graded_monomials(&self.ring, &qd);
        let fmons = graded_monomials(&self.ring, &fd);
        let index: BTreeMap<Monomial, usize> = fmons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        // column j = coordinates of qmons[j] * d; last column = self
        let mut sys = Matrix::zeros(fmons.len(), qmons.len() + 1);
        for (j, q) in qmons.iter().enumerate() {
            for (m, c) in &d.terms {
                sys[(index[&q.mul(m)], j)] = c.clone();
            }
        }
        for (m, c) in &self.terms {
            sys[(index[m], qmons.len())] = c.clone();
        }
        let r = sys.rref();
        if r.pivots.contains(&qmons.len()) {
            return Ok(None);
        }
        let mut q = Self::zero(&self.ring);
        for (row, &p) in r.pivots.iter().enumerate() {
            q.add_term(qmons[p].clone(), r.matrix[(row, qmons.len())].clone());
        }
        Ok(Some(q))
    }

    /// Divides by the coefficient of the leading printed term.
    pub fn normalized(&self) -> Polynomial {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints terms in descending lexicographic order, e.g. `3/2*x0^2*y1 - y0*y2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.0.iter().all(|&e| e == 0);
            if is_const {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                m.write(&self.ring, f)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(&-rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}
