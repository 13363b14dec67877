//! Characters of `SL(2)` representations and explicit invariants.
//!
//! `U_m` denotes the irreducible representation of dimension `m + 1`.

mod expr;

pub use expr::parse_character;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Rational};
use crate::lieaction::{act, sl2_in_sld};
use crate::polyring::{graded_monomials, Ideal, Monomial, Multidegree, Polynomial, Ring, RingSpec};

/// Weight multiplicities, symmetric under `w -> -w`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Character(BTreeMap<i64, u64>);

impl Character {
    /// Validates symmetry; zero multiplicities are dropped.
    pub fn new(weights: BTreeMap<i64, u64>) -> Result<Self> {
        let c = Character(weights.into_iter().filter(|&(_, m)| m > 0).collect());
        for (&w, &m) in &c.0 {
            if c.0.get(&-w) != Some(&m) {
                return Err(Error::NotACharacter(format!("weight {w} has no symmetric partner")));
            }
        }
        Ok(c)
    }

    pub fn weights(&self) -> &BTreeMap<i64, u64> {
        &self.0
    }

    pub fn multiplicity(&self, w: i64) -> u64 {
        self.0.get(&w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut out = self.0.clone();
        for (&w, &m) in &other.0 {
            *out.entry(w).or_default() += m;
        }
        Character(out)
    }

    /// Flattened weight list, each weight repeated by its multiplicity.
    fn weight_list(&self) -> Vec<i64> {
        self.0.iter().flat_map(|(&w, &m)| std::iter::repeat_n(w, m as usize)).collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(w, m)| format!("{w}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Weights `-m, -m+2, ..., m`.
pub fn irr_char(m: u32) -> Character {
    let m = m as i64;
    Character((0..=m).map(|i| (-m + 2 * i, 1)).collect())
}

/// Weight convolution.
pub fn tensor(a: &Character, b: &Character) -> Character {
    let mut out = BTreeMap::new();
    for (&wa, &ma) in &a.0 {
        for (&wb, &mb) in &b.0 {
            *out.entry(wa + wb).or_default() += ma * mb;
        }
    }
    Character(out)
}

/// Weights of `Sym^k`: sums over multisets of `k` basis vectors.
pub fn sym_power(a: &Character, k: u32) -> Character {
    // dp[j] = weight distribution of multisets of size j drawn from the
    // basis vectors processed so far
    let mut dp: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::new(); k as usize + 1];
    dp[0].insert(0, 1);
    for w in a.weight_list() {
        for j in 1..=k as usize {
            let prev = dp[j - 1].clone();
            for (s, m) in prev {
                *dp[j].entry(s + w).or_default() += m;
            }
        }
    }
    Character(dp.pop().unwrap_or_default())
}

/// Highest weights of the irreducible summands, in decreasing order.
pub fn decompose(c: &Character) -> Result<Vec<u32>> {
    let mut rest: BTreeMap<i64, i64> = c.0.iter().map(|(&w, &m)| (w, m as i64)).collect();
    let mut out = Vec::new();
    loop {
        rest.retain(|_, m| *m != 0);
        let Some((&top, &mult)) = rest.iter().next_back() else { break };
        if top < 0 || mult < 0 {
            return Err(Error::NotACharacter(format!("leftover weight {top} with multiplicity {mult}")));
        }
        for w in irr_char(top as u32).0.keys() {
            let e = rest.entry(*w).or_default();
            *e -= mult;
            if *e < 0 {
                return Err(Error::NotACharacter(format!("weight {w} goes negative removing U{top}")));
            }
        }
        out.extend(std::iter::repeat_n(top as u32, mult as usize));
    }
    Ok(out)
}

/// Sum of `irr_char(m)` over a multiset of highest weights.
pub fn recompose(highest: &[u32]) -> Character {
    highest.iter().fold(Character::default(), |acc, &m| acc.add(&irr_char(m)))
}

/// Coordinate ring of `P^d` with variables `x0..xd`.
pub fn curve_ring(d: usize) -> Ring {
    RingSpec::projective("x", d + 1)
}

/// 2x2 minors of `[[x0 .. x_{d-1}], [x1 .. x_d]]`, over [`curve_ring`].
pub fn rational_normal_curve_ideal(d: usize) -> Ideal {
    assert!(d >= 2, "d must be at least 2");
    rational_normal_curve_ideal_in(&curve_ring(d))
}

/// Same minors over a caller-supplied single-block ring of `d + 1` variables.
pub fn rational_normal_curve_ideal_in(ring: &Ring) -> Ideal {
    let d = ring.nvars() - 1;
    let x = |i: usize| Polynomial::var(ring, i);
    let mut gens = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            // columns i, j: x_i x_{j+1} - x_{i+1} x_j
            gens.push(&(&x(i) * &x(j + 1)) - &(&x(i + 1) * &x(j)));
        }
    }
    Ideal::new(ring, gens).expect("minors are homogeneous")
}

/// Basis of the degree-`degree` forms on `P^d` killed by `E`, `F` and `H`.
pub fn invariant_vectors(d: usize, degree: u32) -> Vec<Polynomial> {
    let ring = curve_ring(d);
    let (e, f, h) = sl2_in_sld(d);
    let monomials = graded_monomials(&ring, &Multidegree(vec![degree]));
    let index: BTreeMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let n = monomials.len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for x in [&e, &f, &h] {
        let cols: Vec<Vec<Rational>> = monomials
            .iter()
            .map(|m| {
                let p = Polynomial::monomial(&ring, m.clone(), Rational::one());
                act(x, &p).expect("same ring").coords(&index).expect("degree preserved")
            })
            .collect();
        for r in 0..n {
            if cols.iter().any(|c| !c[r].is_zero()) {
                rows.push(cols.iter().map(|c| c[r].clone()).collect());
            }
        }
    }
    let kernel =
        if rows.is_empty() { Matrix::zeros(1, n).kernel_basis() } else { Matrix::from_rows(&rows, n).kernel_basis() };
    kernel.iter().map(|v| Polynomial::from_coords(&ring, &monomials, v)).collect()
}
