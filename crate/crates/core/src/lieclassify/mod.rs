//! Structural fingerprints of matrix Lie algebras and of the group notation
//! they are compared against.

mod groupexpr;
mod simple;

pub use groupexpr::{expected_signature, GroupExpr};
pub use simple::SimpleType;

use std::fmt;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{int, span, Matrix, Rational};
use crate::lieaction::AlgElement;
use crate::stabilizer::Subalgebra;

/// Invariants of a Lie algebra. `None` means "unspecified" and only arises
/// from [`expected_signature`]; computed signatures fill every field.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LieSignature {
    pub dim: Option<usize>,
    pub derived_dim: Option<usize>,
    pub radical_dim: Option<usize>,
    pub unipotent_dim: Option<usize>,
    pub toral_rank: Option<usize>,
    pub killing_rank: Option<usize>,
    pub levi_components: Option<Vec<SimpleType>>,
    pub reductive: Option<bool>,
    pub abelian: Option<bool>,
}

impl LieSignature {
    /// Toral part of the radical, `radical_dim - unipotent_dim`.
    pub fn radical_toral(&self) -> Option<usize> {
        Some(self.radical_dim? - self.unipotent_dim?)
    }

    pub fn levi_rank(&self) -> Option<usize> {
        self.levi_components.as_ref().map(|l| l.iter().map(SimpleType::rank).sum())
    }

    fn fields(&self) -> [(&'static str, Option<String>); 9] {
        let n = |x: Option<usize>| x.map(|v| v.to_string());
        [
            ("dim", n(self.dim)),
            ("derived_dim", n(self.derived_dim)),
            ("radical_dim", n(self.radical_dim)),
            ("unipotent_dim", n(self.unipotent_dim)),
            ("toral_rank", n(self.toral_rank)),
            ("killing_rank", n(self.killing_rank)),
            ("levi", self.levi_components.as_ref().map(|l| simple::format_levi(l))),
            ("reductive", self.reductive.map(|b| b.to_string())),
            ("abelian", self.abelian.map(|b| b.to_string())),
        ]
    }
}

impl fmt::Display for LieSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.fields().into_iter().map(|(k, v)| format!("{k}={}", v.unwrap_or_else(|| "?".into()))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Field-by-field comparison of a signature against a group expression.
#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub expected: LieSignature,
    pub agreements: Vec<String>,
    pub mismatches: Vec<Mismatch>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub computed: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, computed {}", self.field, self.expected, self.computed)
    }
}

/// Compares every field of `expected_signature(e)` that is specified.
pub fn match_signature(sig: &LieSignature, e: &GroupExpr) -> Result<MatchReport> {
    let expected = expected_signature(e)?;
    let mut agreements = Vec::new();
    let mut mismatches = Vec::new();
    for ((field, want), (_, got)) in expected.fields().into_iter().zip(sig.fields()) {
        let Some(want) = want else { continue };
        let got = got.unwrap_or_else(|| "?".into());
        if want == got {
            agreements.push(field.to_string());
        } else {
            mismatches.push(Mismatch { field: field.to_string(), expected: want, computed: got });
        }
    }
    let pass = mismatches.is_empty();
    Ok(MatchReport { expected, agreements, mismatches, pass })
}

/// Structure constants in coordinates: `ad[i]` is the matrix of `ad(b_i)`.
fn ad_matrices(c: &[Vec<Vec<Rational>>]) -> Vec<Matrix> {
    let k = c.len();
    (0..k)
        .map(|i| {
            let mut m = Matrix::zeros(k, k);
            for j in 0..k {
                for l in 0..k {
                    m[(l, j)] = c[i][j][l].clone();
                }
            }
            m
        })
        .collect()
}

/// `[x, y]` in coordinates.
fn bracket_coords(c: &[Vec<Vec<Rational>>], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let k = c.len();
    let mut out = vec![Rational::zero(); k];
    for i in (0..k).filter(|&i| !x[i].is_zero()) {
        for j in (0..k).filter(|&j| !y[j].is_zero()) {
            let s = &x[i] * &y[j];
            for l in 0..k {
                if !c[i][j][l].is_zero() {
                    out[l] += &s * &c[i][j][l];
                }
            }
        }
    }
    out
}

fn combine(basis: &[AlgElement], coords: &[Rational], sizes: &[usize]) -> AlgElement {
    let mut acc = AlgElement::zero(sizes);
    for (b, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Computes the signature of a closed subalgebra.
pub fn signature(s: &Subalgebra) -> Result<LieSignature> {
    let k = s.dim();
    let c = s.structure_constants();
    let sizes = s.ambient().block_sizes();
    let ad = ad_matrices(c);

    let mut killing = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = ad[i].mul(&ad[j]).trace();
            killing[(j, i)] = v.clone();
            killing[(i, j)] = v;
        }
    }
    let killing_rank = killing.rank();

    let brackets: Vec<Vec<Rational>> = (0..k).flat_map(|i| (i + 1..k).map(move |j| c[i][j].clone())).collect();
    let derived_dim = span::rank(&brackets, k);
    let derived: Vec<Vec<Rational>> = if brackets.is_empty() {
        Vec::new()
    } else {
        let r = Matrix::from_rows(&brackets, k).rref();
        (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect()
    };

    // radical = Killing-orthogonal complement of [g, g]
    let radical: Vec<Vec<Rational>> = if derived.is_empty() {
        identity_rows(k)
    } else {
        let rows: Vec<Vec<Rational>> = derived.iter().map(|d| killing.mul_vec(d)).collect();
        Matrix::from_rows(&rows, k).kernel_basis()
    };
    let radical_dim = radical.len();
    let rad_elems: Vec<AlgElement> = radical.iter().map(|v| combine(s.basis(), v, &sizes)).collect();
    let rad_mats: Vec<Matrix> = rad_elems.iter().map(AlgElement::to_matrix).collect();

    // unipotent part: kernel of tr(XY) on the radical, every basis vector nilpotent
    let mut trace_form = Matrix::zeros(radical_dim, radical_dim);
    for a in 0..radical_dim {
        for b in a..radical_dim {
            let v = rad_mats[a].mul(&rad_mats[b]).trace();
            trace_form[(b, a)] = v.clone();
            trace_form[(a, b)] = v;
        }
    }
    let unipotent = trace_form.kernel_basis();
    for u in &unipotent {
        let m = combine(&rad_elems, u, &sizes).to_matrix();
        if !m.is_nilpotent()? {
            return Err(Error::NilpotencyCheck(format!("trace-form kernel element {m} is not nilpotent")));
        }
    }
    let unipotent_dim = unipotent.len();
    let radical_toral = radical_dim - unipotent_dim;

    let radical_abelian = (0..radical_dim)
        .all(|a| (a + 1..radical_dim).all(|b| bracket_coords(c, &radical[a], &radical[b]).iter().all(Zero::is_zero)));
    if radical_abelian && radical_dim > 0 {
        let semisimple: Vec<Vec<Rational>> =
            rad_mats.iter().map(|m| Ok(m.semisimple_part()?.entries().to_vec())).collect::<Result<_>>()?;
        let n = rad_mats[0].rows();
        let toral = span::rank(&semisimple, n * n);
        if toral != radical_toral {
            return Err(Error::NilpotencyCheck(format!(
                "semisimple parts span {toral} dimensions, trace form leaves {radical_toral}"
            )));
        }
    }

    let levi = levi_components(c, &radical)?;
    let levi_rank: usize = levi.iter().map(SimpleType::rank).sum();

    let central_radical = radical.iter().all(|r| {
        (0..k).all(|j| {
            let mut e = vec![Rational::zero(); k];
            e[j] = int(1);
            bracket_coords(c, r, &e).iter().all(Zero::is_zero)
        })
    });

    Ok(LieSignature {
        dim: Some(k),
        derived_dim: Some(derived_dim),
        radical_dim: Some(radical_dim),
        unipotent_dim: Some(unipotent_dim),
        toral_rank: Some(radical_toral + levi_rank),
        killing_rank: Some(killing_rank),
        levi_components: Some(levi),
        reductive: Some(unipotent_dim == 0 && central_radical),
        abelian: Some(derived_dim == 0),
    })
}

fn identity_rows(k: usize) -> Vec<Vec<Rational>> {
    (0..k)
        .map(|i| {
            let mut v = vec![Rational::zero(); k];
            v[i] = int(1);
            v
        })
        .collect()
}

/// Simple components of `g / rad`, from its dimension, its rank (generic
/// nullity of `ad`) and its number of components (dimension of the
/// centroid).
fn levi_components(c: &[Vec<Vec<Rational>>], radical: &[Vec<Rational>]) -> Result<Vec<SimpleType>> {
    let k = c.len();
    // complement of the radical from standard basis vectors
    let mut adapted: Vec<Vec<Rational>> = radical.to_vec();
    let mut complement = Vec::new();
    for e in identity_rows(k) {
        let mut trial = adapted.clone();
        trial.push(e.clone());
        if span::rank(&trial, k) == trial.len() {
            adapted = trial;
            complement.push(e);
        }
    }
    let m = complement.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let r = radical.len();
    // quotient structure constants q[a][b][d]
    let mut q = vec![vec![vec![Rational::zero(); m]; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let br = bracket_coords(c, &complement[a], &complement[b]);
            let coords = span::coordinates(&adapted, &br).expect("adapted basis spans g");
            for d in 0..m {
                q[a][b][d] = coords[r + d].clone();
                q[b][a][d] = -coords[r + d].clone();
            }
        }
    }
    let ad = ad_matrices(&q);

    // centroid: T with T ad_x = ad_x T, unknowns T_{ij} row-major
    let mut rows = Vec::new();
    for x in &ad {
        for i in 0..m {
            for j in 0..m {
                let mut row = vec![Rational::zero(); m * m];
                // (T X - X T)_{ij} = sum_l T_il X_lj - X_il T_lj
                for l in 0..m {
                    row[i * m + l] += &x[(l, j)];
                    row[l * m + j] -= &x[(i, l)];
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let count = if rows.is_empty() { m * m } else { Matrix::from_rows(&rows, m * m).kernel_basis().len() };

    let mut rng = StdRng::seed_from_u64(0x5eed_1e71);
    let rank = (0..8)
        .map(|_| {
            let mut x = Matrix::zeros(m, m);
            for a in &ad {
                x = x.add(&a.scale(&int(rng.gen_range(-9..=9))));
            }
            m - x.rank()
        })
        .min()
        .expect("nonempty");

    let candidates = simple::multisets(m, rank, count);
    match candidates.len() {
        1 => Ok(candidates.into_iter().next().unwrap()),
        0 => Err(Error::LeviUnidentified(format!("no semisimple type with dim {m}, rank {rank}, {count} components"))),
        _ => Err(Error::LeviUnidentified(format!(
            "dim {m}, rank {rank}, {count} components is ambiguous: {}",
            candidates.iter().map(|l| simple::format_levi(l)).collect::<Vec<_>>().join(" or ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lieaction::AmbientAlgebra;
    use crate::polyring::{Ideal, RingSpec};
    use crate::stabilizer::stabilizer;

    fn sig_of(ring: &crate::polyring::Ring, gens: &[&str]) -> LieSignature {
        let i = Ideal::parse(ring, gens).unwrap();
        signature(&stabilizer(&i, &AmbientAlgebra::new(ring)).unwrap()).unwrap()
    }

    #[test]
    fn twisted_cubic_signature() {
        let r = RingSpec::projective("x", 4);
        let s = sig_of(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        assert_eq!(s.dim, Some(3));
        assert_eq!(s.killing_rank, Some(3));
        assert_eq!(s.levi_components, Some(vec![SimpleType::A(1)]));
        assert_eq!(s.reductive, Some(true));
        assert!(match_signature(&s, &"PGL(2)".parse().unwrap()).unwrap().pass);
    }

    #[test]
    fn plane_cubic_signature() {
        let r = RingSpec::projective("x", 4);
        let s = sig_of(&r, &["x0", "x1^3 + x2^3 + x3^3"]);
        assert_eq!(s.dim, Some(4));
        assert_eq!(s.unipotent_dim, Some(3));
        assert_eq!(s.toral_rank, Some(1));
        assert_eq!(s.reductive, Some(false));
    }

    #[test]
    fn one_dimensional_algebras() {
        let r = RingSpec::projective("x", 2);
        let g = AmbientAlgebra::new(&r);
        let h = crate::lieaction::AlgElement::new(vec![Matrix::from_ints(&[&[1, 0], &[0, -1]])]);
        let s = signature(&Subalgebra::from_basis(&g, vec![h]).unwrap()).unwrap();
        assert_eq!((s.dim, s.toral_rank, s.reductive), (Some(1), Some(1), Some(true)));
        assert!(match_signature(&s, &"Gm".parse().unwrap()).unwrap().pass);

        let e = crate::lieaction::AlgElement::new(vec![Matrix::from_ints(&[&[0, 1], &[0, 0]])]);
        let s = signature(&Subalgebra::from_basis(&g, vec![e]).unwrap()).unwrap();
        let rep = match_signature(&s, &"Gm".parse().unwrap()).unwrap();
        assert!(!rep.pass);
        assert!(rep.mismatches.iter().any(|m| m.field == "toral_rank" && m.expected == "1" && m.computed == "0"));
        assert!(match_signature(&s, &"Ga".parse().unwrap()).unwrap().pass);
    }

    #[test]
    fn full_sl4_and_parabolics() {
        let r = RingSpec::projective("x", 4);
        let full = signature(&stabilizer(&Ideal::new(&r, vec![]).unwrap(), &AmbientAlgebra::new(&r)).unwrap()).unwrap();
        assert_eq!(full.levi_components, Some(vec![SimpleType::A(3)]));
        assert_eq!(full.toral_rank, Some(3));
        assert!(match_signature(&full, &"PGL(4)".parse().unwrap()).unwrap().pass);
        let line = sig_of(&r, &["x0", "x1"]);
        assert!(match_signature(&line, &"PGL(4;2)".parse().unwrap()).unwrap().pass, "{line}");
    }
}
