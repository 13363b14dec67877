//! Group notation and the Lie invariants it determines.
//!
//! ```text
//! semi    := quot (':' quot)?
//! quot    := prod ('/' ('Gm' | 'mu(' n ')'))*
//! prod    := power ('x' power)*
//! power   := atom ('^' n)?
//! atom    := 'Ga' | 'Gm' | 'B' | '1' | 'PGL22' | 'PGL22_1' | 'AutP1112'
//!          | ('GL' | 'PGL' | 'SL' | 'SO' | 'PSO') '(' n (';' n (',' n)*)? ')'
//!          | '(' semi ')'
//! ```
//!
//! `PGL(n;k1,...,kr)` is the stabilizer of a flag of subspaces of dimensions
//! `k1 > ... > kr` and `PSO(n;k)` the stabilizer of an isotropic
//! `k`-subspace. In `U : R` the left side is the unipotent normal subgroup.

use std::fmt;
use std::str::FromStr;

use super::{LieSignature, SimpleType};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Trivial,
    Ga(u32),
    Gm(u32),
    GL(u32),
    PGL(u32),
    SL(u32),
    SO(u32),
    PSO(u32),
    Borel,
    Parabolic(u32, Vec<u32>),
    PSOParabolic(u32, u32),
    PGL22,
    PGL22_1,
    AutP1112,
    Power(Box<GroupExpr>, u32),
    Product(Vec<GroupExpr>),
    Semidirect(Box<GroupExpr>, Box<GroupExpr>),
    QuotientByGm(Box<GroupExpr>),
    QuotientByFinite(Box<GroupExpr>, u32),
}

impl GroupExpr {
    pub fn parse(s: &str) -> Result<GroupExpr> {
        let tokens = lex(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.semi()?;
        if p.pos != p.tokens.len() {
            return Err(invalid(format!("trailing input in `{s}`")));
        }
        e.validate()?;
        Ok(e)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(invalid(msg));
        match self {
            GroupExpr::PGL(n) | GroupExpr::SL(n) if *n < 2 => bad(format!("{self}: need n >= 2")),
            GroupExpr::GL(0) => bad("GL(0)".into()),
            GroupExpr::SO(n) | GroupExpr::PSO(n) if *n < 2 => bad(format!("{self}: need n >= 2")),
            GroupExpr::Parabolic(n, ks) => {
                let decreasing = ks.windows(2).all(|w| w[0] > w[1]);
                if ks.is_empty() || !decreasing || ks[0] >= *n || *ks.last().unwrap() == 0 {
                    bad(format!("{self}: need {n} > k1 > ... > kr > 0"))
                } else {
                    Ok(())
                }
            }
            GroupExpr::PSOParabolic(n, k) if *k == 0 || 2 * k > *n || *n < 3 => {
                bad(format!("{self}: need 0 < 2k <= n"))
            }
            GroupExpr::Power(e, _) | GroupExpr::QuotientByGm(e) | GroupExpr::QuotientByFinite(e, _) => e.validate(),
            GroupExpr::Product(es) => es.iter().try_for_each(GroupExpr::validate),
            GroupExpr::Semidirect(u, r) => {
                u.validate()?;
                r.validate()
            }
            _ => Ok(()),
        }
    }

    fn is_atom(&self) -> bool {
        !matches!(
            self,
            GroupExpr::Power(..)
                | GroupExpr::Product(_)
                | GroupExpr::Semidirect(..)
                | GroupExpr::QuotientByGm(_)
                | GroupExpr::QuotientByFinite(..)
        )
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGroupExpr(msg.into())
}

impl FromStr for GroupExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupExpr::parse(s)
    }
}

fn list(ks: &[u32]) -> String {
    ks.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |e: &GroupExpr, wrap: bool| if wrap { format!("({e})") } else { e.to_string() };
        match self {
            GroupExpr::Trivial => f.write_str("1"),
            GroupExpr::Ga(1) => f.write_str("Ga"),
            GroupExpr::Ga(k) => write!(f, "Ga^{k}"),
            GroupExpr::Gm(1) => f.write_str("Gm"),
            GroupExpr::Gm(k) => write!(f, "Gm^{k}"),
            GroupExpr::GL(n) => write!(f, "GL({n})"),
            GroupExpr::PGL(n) => write!(f, "PGL({n})"),
            GroupExpr::SL(n) => write!(f, "SL({n})"),
            GroupExpr::SO(n) => write!(f, "SO({n})"),
            GroupExpr::PSO(n) => write!(f, "PSO({n})"),
            GroupExpr::Borel => f.write_str("B"),
            GroupExpr::Parabolic(n, ks) => write!(f, "PGL({n};{})", list(ks)),
            GroupExpr::PSOParabolic(n, k) => write!(f, "PSO({n};{k})"),
            GroupExpr::PGL22 => f.write_str("PGL22"),
            GroupExpr::PGL22_1 => f.write_str("PGL22_1"),
            GroupExpr::AutP1112 => f.write_str("AutP1112"),
            GroupExpr::Power(e, k) => {
                // Ga^k and Gm^k are atoms of their own
                let wrap = !e.is_atom() || matches!(**e, GroupExpr::Ga(_) | GroupExpr::Gm(_));
                write!(f, "{}^{k}", paren(e, wrap))
            }
            GroupExpr::Product(es) => {
                let parts: Vec<String> =
                    es.iter().map(|e| paren(e, !e.is_atom() && !matches!(e, GroupExpr::Power(..)))).collect();
                f.write_str(&parts.join(" x "))
            }
            GroupExpr::Semidirect(u, r) => {
                let wrap = |e: &GroupExpr| !e.is_atom() && !matches!(e, GroupExpr::Power(..));
                write!(f, "{} : {}", paren(u, wrap(u)), paren(r, wrap(r)))
            }
            GroupExpr::QuotientByGm(e) => {
                write!(f, "{} / Gm", paren(e, !e.is_atom() && !matches!(**e, GroupExpr::Power(..))))
            }
            GroupExpr::QuotientByFinite(e, n) => {
                write!(f, "{} / mu({n})", paren(e, !e.is_atom() && !matches!(**e, GroupExpr::Power(..))))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| invalid(format!("number `{text}` too large")))?));
        } else if "()^:/;,".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else if c == '×' {
            out.push(Tok::Ident("x".into()));
            i += 1;
        } else {
            return Err(invalid(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(invalid(format!("expected `{c}` at token {}", self.pos)))
        }
    }

    fn num(&mut self) -> Result<u32> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(invalid(format!("expected a number at token {}", self.pos))),
        }
    }

    fn semi(&mut self) -> Result<GroupExpr> {
        let u = self.quot()?;
        if self.eat_sym(':') {
            let r = self.quot()?;
            Ok(GroupExpr::Semidirect(Box::new(u), Box::new(r)))
        } else {
            Ok(u)
        }
    }

    fn quot(&mut self) -> Result<GroupExpr> {
        let mut e = self.prod()?;
        while self.eat_sym('/') {
            match self.peek() {
                Some(Tok::Ident(s)) if s == "Gm" => {
                    self.pos += 1;
                    e = GroupExpr::QuotientByGm(Box::new(e));
                }
                Some(Tok::Ident(s)) if s == "mu" => {
                    self.pos += 1;
                    self.expect_sym('(')?;
                    let n = self.num()?;
                    self.expect_sym(')')?;
                    e = GroupExpr::QuotientByFinite(Box::new(e), n);
                }
                _ => return Err(invalid("expected `Gm` or `mu(n)` after `/`")),
            }
        }
        Ok(e)
    }

    fn prod(&mut self) -> Result<GroupExpr> {
        let mut parts = vec![self.power()?];
        while matches!(self.peek(), Some(Tok::Ident(s)) if s == "x") {
            self.pos += 1;
            parts.push(self.power()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { GroupExpr::Product(parts) })
    }

    fn power(&mut self) -> Result<GroupExpr> {
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let k = self.num()?;
        if k == 0 {
            return Err(invalid("exponent must be positive"));
        }
        Ok(match base {
            GroupExpr::Ga(1) => GroupExpr::Ga(k),
            GroupExpr::Gm(1) => GroupExpr::Gm(k),
            other => GroupExpr::Power(Box::new(other), k),
        })
    }

    fn atom(&mut self) -> Result<GroupExpr> {
        if self.eat_sym('(') {
            let e = self.semi()?;
            self.expect_sym(')')?;
            return Ok(e);
        }
        let tok = self.peek().cloned();
        self.pos += 1;
        let name = match tok {
            Some(Tok::Num(1)) => return Ok(GroupExpr::Trivial),
            Some(Tok::Ident(s)) => s,
            _ => return Err(invalid(format!("expected a group at token {}", self.pos - 1))),
        };
        match name.as_str() {
            "Ga" => return Ok(GroupExpr::Ga(1)),
            "Gm" => return Ok(GroupExpr::Gm(1)),
            "B" => return Ok(GroupExpr::Borel),
            "PGL22" => return Ok(GroupExpr::PGL22),
            "PGL22_1" => return Ok(GroupExpr::PGL22_1),
            "AutP1112" => return Ok(GroupExpr::AutP1112),
            "GL" | "PGL" | "SL" | "SO" | "PSO" => {}
            other => return Err(invalid(format!("unknown group `{other}`"))),
        }
        self.expect_sym('(')?;
        let n = self.num()?;
        let mut ks = Vec::new();
        if self.eat_sym(';') {
            ks.push(self.num()?);
            while self.eat_sym(',') {
                ks.push(self.num()?);
            }
        }
        self.expect_sym(')')?;
        match (name.as_str(), ks.len()) {
            ("GL", 0) => Ok(GroupExpr::GL(n)),
            ("PGL", 0) => Ok(GroupExpr::PGL(n)),
            ("SL", 0) => Ok(GroupExpr::SL(n)),
            ("SO", 0) => Ok(GroupExpr::SO(n)),
            ("PSO", 0) => Ok(GroupExpr::PSO(n)),
            ("PGL", _) => Ok(GroupExpr::Parabolic(n, ks)),
            ("PSO", 1) => Ok(GroupExpr::PSOParabolic(n, ks[0])),
            _ => Err(invalid(format!("{name} does not take flag parameters"))),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn sig(
    dim: usize,
    derived: Option<usize>,
    radical: usize,
    unipotent: usize,
    toral: usize,
    killing: Option<usize>,
    levi: Vec<SimpleType>,
    abelian: Option<bool>,
) -> LieSignature {
    LieSignature {
        dim: Some(dim),
        derived_dim: derived,
        radical_dim: Some(radical),
        unipotent_dim: Some(unipotent),
        toral_rank: Some(toral),
        killing_rank: killing,
        levi_components: Some(levi),
        // only used for non-reductive atoms and the trivial unipotent group
        reductive: Some(unipotent == 0 && radical == 0),
        abelian,
    }
}

fn reductive_sig(dim: usize, center: usize, levi: Vec<SimpleType>) -> LieSignature {
    let ss: usize = levi.iter().map(SimpleType::dim).sum();
    let rank: usize = levi.iter().map(SimpleType::rank).sum();
    debug_assert_eq!(dim, ss + center);
    LieSignature {
        dim: Some(dim),
        derived_dim: Some(ss),
        radical_dim: Some(center),
        unipotent_dim: Some(0),
        toral_rank: Some(center + rank),
        killing_rank: Some(ss),
        abelian: Some(ss == 0),
        levi_components: Some(levi),
        reductive: Some(true),
    }
}

/// Simple components of `so(n)`, and whether it has a one-dimensional
/// center (`n = 2`).
fn so_levi(n: u32) -> (Vec<SimpleType>, usize) {
    match n {
        0 | 1 => (vec![], 0),
        2 => (vec![], 1),
        3 => (vec![SimpleType::A(1)], 0),
        4 => (vec![SimpleType::A(1), SimpleType::A(1)], 0),
        5 => (vec![SimpleType::B(2)], 0),
        6 => (vec![SimpleType::A(3)], 0),
        n if n % 2 == 1 => (vec![SimpleType::B(((n - 1) / 2) as usize)], 0),
        n => (vec![SimpleType::D((n / 2) as usize)], 0),
    }
}

fn a_type(n: u32) -> Vec<SimpleType> {
    if n >= 2 {
        vec![SimpleType::A(n as usize - 1)]
    } else {
        vec![]
    }
}

fn add(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a? + b?)
}

fn both(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

fn product(a: &LieSignature, b: &LieSignature) -> LieSignature {
    let levi = match (&a.levi_components, &b.levi_components) {
        (Some(x), Some(y)) => {
            let mut l = x.clone();
            l.extend(y.iter().copied());
            l.sort();
            Some(l)
        }
        _ => None,
    };
    LieSignature {
        dim: add(a.dim, b.dim),
        derived_dim: add(a.derived_dim, b.derived_dim),
        radical_dim: add(a.radical_dim, b.radical_dim),
        unipotent_dim: add(a.unipotent_dim, b.unipotent_dim),
        toral_rank: add(a.toral_rank, b.toral_rank),
        killing_rank: add(a.killing_rank, b.killing_rank),
        levi_components: levi,
        reductive: both(a.reductive, b.reductive),
        abelian: both(a.abelian, b.abelian),
    }
}

fn dec(x: Option<usize>, what: &str, e: &GroupExpr) -> Result<Option<usize>> {
    match x {
        Some(0) => Err(invalid(format!("{e}: no central torus to divide by ({what} is 0)"))),
        Some(v) => Ok(Some(v - 1)),
        None => Ok(None),
    }
}

/// Lie invariants determined by the notation.
pub fn expected_signature(e: &GroupExpr) -> Result<LieSignature> {
    e.validate()?;
    use GroupExpr as G;
    Ok(match e {
        G::Trivial => reductive_sig(0, 0, vec![]),
        G::Ga(k) => {
            let k = *k as usize;
            sig(k, Some(0), k, k, 0, Some(0), vec![], Some(true))
        }
        G::Gm(k) => reductive_sig(*k as usize, *k as usize, vec![]),
        G::GL(n) => {
            let n2 = (n * n) as usize;
            reductive_sig(n2, 1, a_type(*n))
        }
        G::PGL(n) | G::SL(n) => reductive_sig((n * n - 1) as usize, 0, a_type(*n)),
        G::SO(n) | G::PSO(n) => {
            let (levi, center) = so_levi(*n);
            reductive_sig((n * (n - 1) / 2) as usize, center, levi)
        }
        G::Borel => sig(2, Some(1), 2, 1, 1, Some(1), vec![], Some(false)),
        G::Parabolic(n, ks) => {
            let mut blocks = Vec::new();
            let mut prev = 0;
            for &k in ks.iter().rev() {
                blocks.push(k - prev);
                prev = k;
            }
            blocks.push(n - prev);
            let sq: u32 = blocks.iter().map(|b| b * b).sum();
            let dim = ((n * n + sq) / 2 - 1) as usize;
            let unipotent = ((n * n - sq) / 2) as usize;
            let center = blocks.len() - 1;
            let mut levi: Vec<SimpleType> = blocks.iter().flat_map(|&b| a_type(b)).collect();
            levi.sort();
            sig(dim, Some(dim - center), unipotent + center, unipotent, (n - 1) as usize, None, levi, Some(false))
        }
        G::PSOParabolic(n, k) => {
            let m = n - 2 * k;
            let so_n = (n * (n - 1) / 2) as usize;
            let levi_dim = (k * k + m * m.saturating_sub(1) / 2) as usize;
            let unipotent = (so_n - levi_dim) / 2;
            let dim = so_n - unipotent;
            let (so_m, so_center) = so_levi(m);
            let center = 1 + so_center;
            let mut levi = a_type(*k);
            levi.extend(so_m);
            levi.sort();
            sig(dim, Some(dim - center), unipotent + center, unipotent, (n / 2) as usize, None, levi, Some(false))
        }
        G::PGL22 => {
            let mut s = reductive_sig(7, 1, vec![SimpleType::A(1), SimpleType::A(1)]);
            s.toral_rank = Some(3);
            s
        }
        G::PGL22_1 => sig(6, Some(4), 3, 1, 3, None, vec![SimpleType::A(1)], Some(false)),
        G::AutP1112 => sig(15, Some(14), 7, 6, 3, None, vec![SimpleType::A(2)], Some(false)),
        G::Power(inner, k) => {
            let s = expected_signature(inner)?;
            let mut acc = s.clone();
            for _ in 1..*k {
                acc = product(&acc, &s);
            }
            acc
        }
        G::Product(es) => {
            let mut acc = expected_signature(&G::Trivial)?;
            for x in es {
                acc = product(&acc, &expected_signature(x)?);
            }
            acc
        }
        G::Semidirect(u, r) => {
            let su = expected_signature(u)?;
            if su.unipotent_dim != su.dim {
                return Err(invalid(format!("{e}: left side of `:` must be unipotent")));
            }
            let sr = expected_signature(r)?;
            let mut s = product(&su, &sr);
            s.derived_dim = None;
            s.killing_rank = None;
            s.abelian = None;
            if su.dim != Some(0) {
                s.reductive = Some(false);
            }
            s
        }
        G::QuotientByGm(inner) => {
            let s = expected_signature(inner)?;
            LieSignature {
                dim: dec(s.dim, "dim", e)?,
                toral_rank: dec(s.toral_rank, "toral rank", e)?,
                radical_dim: dec(s.radical_dim, "radical", e)?,
                ..s
            }
        }
        G::QuotientByFinite(inner, _) => expected_signature(inner)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig_of(s: &str) -> LieSignature {
        expected_signature(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn atoms() {
        let s = sig_of("PGL(2)");
        assert_eq!((s.dim, s.killing_rank, s.reductive), (Some(3), Some(3), Some(true)));
        assert_eq!(s.levi_components, Some(vec![SimpleType::A(1)]));
        let s = sig_of("PGL(4;2)");
        assert_eq!((s.dim, s.unipotent_dim), (Some(11), Some(4)));
        let s = sig_of("PSO(6;1)");
        assert_eq!((s.dim, s.unipotent_dim), (Some(11), Some(4)));
        assert_eq!(s.levi_components, Some(vec![SimpleType::A(1), SimpleType::A(1)]));
        assert_eq!(s.toral_rank, Some(3));
        assert_eq!(s.radical_toral(), Some(1));
        let s = sig_of("AutP1112");
        assert_eq!((s.dim, s.unipotent_dim), (Some(15), Some(6)));
        let s = sig_of("PSO(5;1)");
        assert_eq!((s.dim, s.unipotent_dim, s.radical_dim), (Some(7), Some(3), Some(4)));
        assert_eq!(sig_of("PGL(4;1)").dim, Some(12));
        assert_eq!(sig_of("PGL(4;2,1)").dim, Some(10));
        assert_eq!(sig_of("PGL(4;3,1)").dim, Some(10));
        assert_eq!(sig_of("PGL22").dim, Some(7));
    }

    #[test]
    fn combinators() {
        let s = sig_of("Ga^3 : Gm");
        assert_eq!((s.dim, s.unipotent_dim, s.toral_rank, s.derived_dim), (Some(4), Some(3), Some(1), None));
        assert_eq!(s.reductive, Some(false));
        let s = sig_of("(GL(2) x GL(2)) / Gm");
        assert_eq!((s.dim, s.toral_rank, s.radical_dim), (Some(7), Some(3), Some(1)));
        assert_eq!(s, sig_of("PGL22"));
        assert_eq!(sig_of("PGL(2)^3").dim, Some(9));
        assert_eq!(sig_of("(SO(4) x Gm) / mu(2)").dim, Some(7));
        let s = sig_of("PGL(2) x Gm");
        assert_eq!((s.dim, s.reductive, s.toral_rank), (Some(4), Some(true), Some(2)));
        assert_eq!(sig_of("GL(2)"), s);
        assert_eq!(sig_of("B x PGL(2)").dim, Some(5));
        assert_eq!(sig_of("Ga^3 : (B x Gm)").unipotent_dim, Some(4));
    }

    #[test]
    fn round_trip() {
        for s in [
            "Ga^3 : (GL(2) x Gm)",
            "PGL(4;2,1)",
            "(GL(2) x GL(2)) / Gm",
            "PGL(2)^3",
            "B x PGL(3;1)",
            "Ga^4 : (GL(2) x Gm)",
            "PSO(6;1)",
            "(SO(4) x Gm) / mu(2)",
            "1",
            "Gm^2",
            "PGL22_1",
            "Ga^6 : ((GL(3) x Gm) / Gm)",
        ] {
            let e: GroupExpr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(e.to_string().parse::<GroupExpr>().unwrap(), e);
        }
        assert_eq!(sig_of("Ga^6 : ((GL(3) x Gm) / Gm)").dim, sig_of("AutP1112").dim);
    }

    #[test]
    fn malformed() {
        for s in ["", "PGL(1)", "PGL(4;1,2)", "PGL(4;4)", "Foo", "GL(2", "Gm : Ga", "Ga^0", "SL(2;1)", "Ga / Gm"] {
            let r = s.parse::<GroupExpr>().and_then(|e| expected_signature(&e));
            assert!(r.is_err(), "{s} should be rejected");
        }
    }
}
