//! Explicit projective configurations with known connected automorphism
//! groups, and the runner that recomputes them.

mod discriminant;

pub use discriminant::{
    conic_rank, discriminant_cubic, discriminant_ring, gram_matrix, linear_factor_divides, linear_quotient,
};

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, int, parse_rational, rat, JordanType, Rational};
use crate::lieaction::AmbientAlgebra;
use crate::lieclassify::{expected_signature, match_signature, signature, GroupExpr, LieSignature};
use crate::polyring::{Ideal, Polynomial, Ring, RingSpec};
use crate::sl2rep::rational_normal_curve_ideal_in;
use crate::stabilizer::{joint_stabilizer, Subalgebra};

/// Every case name accepted by [`build`].
pub const ROSTER: &[&str] = &[
    "twisted_cubic",
    "plane_cubic",
    "nodal_cubic_plane",
    "hyperplane_P3",
    "line_P3",
    "point_line_flag",
    "point_plane_flag",
    "two_skew_lines",
    "conic_on_quadric",
    "quadric_point_P4",
    "quadric_point_P5",
    "bidegree_1n",
    "two_conics_bitangent",
    "two_conics_osculating",
    "twisted_quartic_pencil",
    "v5_line_model",
    "v5_conic_model",
    "bidegree12_line_conic",
    "bidegree12_toric",
    "flag_diagonal_conics",
    "veronese_cone",
];

/// Values of the pencil parameter scanned by [`verify_all`].
pub fn lambda_grid() -> Vec<Rational> {
    vec![int(-3), int(-2), int(-1), rat(-1, 3), rat(1, 2), int(2), int(3)]
}

pub const BIDEGREE_GRID: std::ops::RangeInclusive<u32> = 0..=4;
const MAX_N: u32 = 24;

/// Case parameters by name (`lambda`, `n`).
pub type Params = BTreeMap<String, Rational>;

/// Parses `lambda=-1/3`, `λ=2` or `n=3`.
pub fn parse_param(s: &str) -> Result<(String, Rational)> {
    let (k, v) = s.split_once('=').ok_or_else(|| Error::Parameter(format!("expected name=value, got `{s}`")))?;
    let key = match k.trim() {
        "λ" | "lambda" => "lambda",
        "n" => "n",
        other => return Err(Error::Parameter(format!("unknown parameter `{other}`"))),
    };
    Ok((key.to_string(), parse_rational(v)?))
}

/// A fully instantiated configuration.
#[derive(Clone, Debug)]
pub struct ModelCase {
    pub name: String,
    pub params: Params,
    pub ring: Ring,
    pub ideals: Vec<Ideal>,
    pub expected: GroupExpr,
    pub expected_dim: usize,
    /// Set for one-dimensional expectations.
    pub expected_jordan: Option<JordanType>,
    pub anchor: &'static str,
}

impl ModelCase {
    pub fn ambient(&self) -> AmbientAlgebra {
        AmbientAlgebra::new(&self.ring)
    }

    pub fn stabilizer(&self) -> Result<Subalgebra> {
        joint_stabilizer(&self.ideals, &self.ambient())
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", format_rational(v))).collect();
        format!("{}({})", self.name, ps.join(", "))
    }
}

struct Spec {
    ring: Ring,
    ideals: Vec<Ideal>,
    expected: &'static str,
    jordan: Option<JordanType>,
    anchor: &'static str,
}

fn ring(names: &[&str]) -> Ring {
    RingSpec::new(&[("P", names.to_vec())]).expect("valid names")
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).expect("roster generators parse")
}

fn param_n(params: &Params) -> Result<u32> {
    let n = params.get("n").cloned().unwrap_or_else(|| int(2));
    if !n.is_integer() || n < Rational::zero() || n > int(MAX_N as i64) {
        return Err(Error::Parameter(format!("n must be an integer in 0..={MAX_N}, got {}", format_rational(&n))));
    }
    Ok(n.to_integer().try_into().expect("range checked"))
}

fn param_lambda(params: &Params) -> Result<Rational> {
    let l = params.get("lambda").cloned().unwrap_or_else(|| int(2));
    if l.is_zero() || l.is_one() {
        return Err(Error::Parameter("lambda must differ from 0 and 1 (singular or reducible member)".into()));
    }
    Ok(l)
}

fn allowed(name: &str) -> &'static [&'static str] {
    match name {
        "bidegree_1n" => &["n"],
        "twisted_quartic_pencil" => &["lambda"],
        _ => &[],
    }
}

/// Instantiates a roster case. Missing parameters default to `lambda = 2`
/// and `n = 2`.
pub fn build(name: &str, params: &Params) -> Result<ModelCase> {
    if !ROSTER.contains(&name) {
        return Err(Error::UnknownCase(name.to_string()));
    }
    for k in params.keys() {
        if !allowed(name).contains(&k.as_str()) {
            return Err(Error::Parameter(format!("`{name}` takes no parameter `{k}`")));
        }
    }
    let mut used = Params::new();
    let p3 = || RingSpec::projective("x", 4);
    let semisimple = Some(JordanType::Semisimple);
    let spec = match name {
        "twisted_cubic" => {
            let r = p3();
            Spec {
                ideals: vec![rational_normal_curve_ideal_in(&r)],
                ring: r,
                expected: "PGL(2)",
                jordan: None,
                anchor: "twisted cubic in P3 (2x2 minors of the 2x3 catalecticant); stabilizer is PGL(2)",
            }
        }
        "plane_cubic" => {
            let r = p3();
            Spec {
                ideals: vec![ideal(&r, &["x0", "x1^3 + x2^3 + x3^3"])],
                ring: r,
                expected: "Ga^3 : Gm",
                jordan: None,
                anchor:
                    "smooth plane cubic (Fermat) in a plane of P3; translations fixing the plane pointwise plus scaling",
            }
        }
        "nodal_cubic_plane" => {
            let r = RingSpec::projective("x", 3);
            Spec {
                ideals: vec![ideal(&r, &["x1^2*x2 - x0^2*(x0 + x2)"])],
                ring: r,
                expected: "1",
                jordan: None,
                anchor: "nodal plane cubic; only finitely many projective automorphisms preserve it",
            }
        }
        "hyperplane_P3" => {
            let r = p3();
            Spec {
                ideals: vec![ideal(&r, &["x0"])],
                ring: r,
                expected: "PGL(4;1)",
                jordan: None,
                anchor: "plane in P3; maximal parabolic with blocks (1,3)",
            }
        }
        "line_P3" => {
            let r = p3();
            Spec {
                ideals: vec![ideal(&r, &["x0", "x1"])],
                ring: r,
                expected: "PGL(4;2)",
                jordan: None,
                anchor: "line in P3; maximal parabolic with blocks (2,2)",
            }
        }
        "point_line_flag" => {
            let r = p3();
            Spec {
                ideals: vec![ideal(&r, &["x0", "x1"]), ideal(&r, &["x0", "x1", "x2"])],
                ring: r,
                expected: "PGL(4;2,1)",
                jordan: None,
                anchor: "point on a line in P3; flag parabolic",
            }
        }
        "point_plane_flag" => {
            let r = p3();
            Spec {
                ideals: vec![ideal(&r, &["x0"]), ideal(&r, &["x0", "x1", "x2"])],
                ring: r,
                expected: "PGL(4;3,1)",
                jordan: None,
                anchor: "point in a plane in P3; flag parabolic",
            }
        }
        "two_skew_lines" => {
            let r = p3();
            Spec {
                ideals: vec![ideal(&r, &["x0", "x1"]), ideal(&r, &["x2", "x3"])],
                ring: r,
                expected: "PGL22",
                jordan: None,
                anchor: "two disjoint lines in P3; block-diagonal GL(2) x GL(2) modulo scalars",
            }
        }
        "conic_on_quadric" => {
            let r = RingSpec::projective("x", 5);
            Spec {
                ideals: vec![
                    ideal(&r, &["x0*x1 + x2^2 + x3^2 + x4^2"]),
                    ideal(&r, &["x0", "x1", "x2^2 + x3^2 + x4^2"]),
                ],
                ring: r,
                expected: "PGL(2) x Gm",
                jordan: None,
                anchor: "smooth conic cut from a smooth quadric threefold by a plane; PGL(2) times a central torus",
            }
        }
        "quadric_point_P4" => {
            let r = RingSpec::projective("x", 5);
            Spec {
                ideals: vec![ideal(&r, &["x0*x1 + x2^2 + x3^2 + x4^2"]), ideal(&r, &["x1", "x2", "x3", "x4"])],
                ring: r,
                expected: "PSO(5;1)",
                jordan: None,
                anchor: "point on a smooth quadric threefold; parabolic of SO(5) fixing an isotropic line",
            }
        }
        "quadric_point_P5" => {
            let r = RingSpec::projective("x", 6);
            Spec {
                ideals: vec![
                    ideal(&r, &["x0*x1 + x2^2 + x3^2 + x4^2 + x5^2"]),
                    ideal(&r, &["x1", "x2", "x3", "x4", "x5"]),
                ],
                ring: r,
                expected: "PSO(6;1)",
                jordan: None,
                anchor: "point on a smooth quadric fourfold; parabolic of SO(6) fixing an isotropic line",
            }
        }
        "bidegree_1n" => {
            let n = param_n(params)?;
            used.insert("n".into(), int(n as i64));
            let r = RingSpec::product(&[("x", 2), ("y", 2)]);
            let (expected, jordan) = match n {
                0 => ("B x PGL(2)", None),
                1 => ("PGL(2)", None),
                _ => ("Gm", semisimple),
            };
            Spec {
                ideals: vec![ideal(&r, &[&format!("x0*y0^{n} + x1*y1^{n}")])],
                ring: r,
                expected,
                jordan,
                anchor: "curve x0*y0^n + x1*y1^n = 0 of bidegree (1,n) on P1 x P1",
            }
        }
        "two_conics_bitangent" => {
            let r = RingSpec::projective("x", 3);
            Spec {
                ideals: vec![ideal(&r, &["(x0^2 - x1*x2)*(x0^2 - 2*x1*x2)"])],
                ring: r,
                expected: "Gm",
                jordan: semisimple,
                anchor: "two smooth conics tangent at two points; a one-dimensional torus",
            }
        }
        "two_conics_osculating" => {
            let r = RingSpec::projective("x", 3);
            Spec {
                ideals: vec![ideal(&r, &["(x1*x2 - x0^2)*(x1*x2 - x0^2 + x2^2)"])],
                ring: r,
                expected: "Ga",
                jordan: Some(JordanType::Nilpotent),
                anchor: "two smooth conics meeting in a single point; a one-dimensional unipotent group",
            }
        }
        "twisted_quartic_pencil" => {
            let lambda = param_lambda(params)?;
            used.insert("lambda".into(), lambda.clone());
            let r = ring(&["x", "y", "z", "t", "w"]);
            let q = format!(
                "z^2 - ({})*x*w - ({})*y*t",
                format_rational(&lambda),
                format_rational(&(Rational::one() - &lambda))
            );
            let special = lambda == rat(-1, 3);
            Spec {
                ideals: vec![rational_normal_curve_ideal_in(&r), ideal(&r, &[&q])],
                ring: r,
                expected: if special { "PGL(2)" } else { "Gm" },
                jordan: if special { None } else { semisimple },
                anchor: "rational normal quartic on the quadric z^2 = lambda*x*w + (1-lambda)*y*t; SL(2)-invariant at lambda = -1/3",
            }
        }
        "v5_line_model" => {
            let r = ring(&["x", "y", "z", "t", "w"]);
            Spec {
                ideals: vec![ideal(&r, &["x*t - y*z + w^2"]), ideal(&r, &["w", "x*z - y^2", "y*t - z^2", "x*t - y*z"])],
                ring: r,
                expected: "Gm",
                jordan: semisimple,
                anchor: "twisted cubic in a smooth hyperplane section of a quadric threefold",
            }
        }
        "v5_conic_model" => {
            let r = ring(&["x", "y", "z", "t"]);
            Spec {
                ideals: vec![ideal(&r, &["x*t - y*z", "y^3 - x^2*z", "z^3 - y*t^2", "y^2*t - x*z^2"])],
                ring: r,
                expected: "Gm",
                jordan: semisimple,
                anchor: "smooth rational quartic [u^4 : u^3 v : u v^3 : v^4] on the quadric x*t = y*z",
            }
        }
        "bidegree12_line_conic" => {
            let r = RingSpec::product(&[("x", 3), ("y", 3)]);
            Spec {
                ideals: vec![ideal(&r, &["x0*(y0^2 - y1*y2) + x1*y1^2 + x2*y2^2"])],
                ring: r,
                expected: "Gm",
                jordan: semisimple,
                anchor: "divisor of bidegree (1,2) on P2 x P2 whose discriminant is a line plus a conic",
            }
        }
        "bidegree12_toric" => {
            let r = RingSpec::product(&[("x", 3), ("y", 3)]);
            Spec {
                ideals: vec![ideal(&r, &["x0*y0^2 + x1*y1^2 + x2*y2^2"])],
                ring: r,
                expected: "Gm^2",
                jordan: None,
                anchor: "diagonal divisor of bidegree (1,2) on P2 x P2; a two-dimensional torus",
            }
        }
        "flag_diagonal_conics" => {
            let r = RingSpec::product(&[("x", 3), ("y", 3)]);
            Spec {
                ideals: vec![
                    ideal(&r, &["x0*y0 + x1*y1 + x2*y2"]),
                    ideal(&r, &["x0*x2 - x1^2"]),
                    ideal(&r, &["4*y0*y2 - y1^2"]),
                ],
                ring: r,
                expected: "PGL(2)",
                jordan: None,
                anchor: "flag variety as a (1,1) divisor with a conic and its dual conic",
            }
        }
        "veronese_cone" => {
            let r = RingSpec::projective("x", 7);
            // symmetric matrix [[x0,x1,x2],[x1,x3,x4],[x2,x4,x5]]; x6 is the vertex
            let s = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
            let mut gens = Vec::new();
            for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
                for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
                    gens.push(format!("x{}*x{} - x{}*x{}", s[r1][c1], s[r2][c2], s[r1][c2], s[r2][c1]));
                }
            }
            let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
            Spec {
                ideals: vec![ideal(&r, &gens)],
                ring: r,
                expected: "AutP1112",
                jordan: None,
                anchor: "cone in P6 over the Veronese surface, i.e. the weighted projective space P(1,1,1,2)",
            }
        }
        _ => unreachable!("roster checked above"),
    };
    let expected: GroupExpr = spec.expected.parse()?;
    let expected_dim = expected_signature(&expected)?.dim.expect("atoms specify dim");
    Ok(ModelCase {
        name: name.to_string(),
        params: used,
        ring: spec.ring,
        ideals: spec.ideals,
        expected,
        expected_dim,
        expected_jordan: spec.jordan,
        anchor: spec.anchor,
    })
}

/// Outcome of recomputing one case.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub case: String,
    pub params: BTreeMap<String, String>,
    pub expected: String,
    pub expected_dim: usize,
    pub dim: Option<usize>,
    pub jordan: Option<JordanType>,
    pub signature: Option<LieSignature>,
    pub mismatches: Vec<String>,
    pub error: Option<String>,
    pub pass: bool,
    pub wall_ms: f64,
}

/// Runs the stabilizer, signature, match and Jordan checks for one case.
pub fn verify(case: &ModelCase) -> Report {
    let start = Instant::now();
    let mut report = Report {
        case: case.name.clone(),
        params: case.params.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
        expected: case.expected.to_string(),
        expected_dim: case.expected_dim,
        dim: None,
        jordan: None,
        signature: None,
        mismatches: Vec::new(),
        error: None,
        pass: false,
        wall_ms: 0.0,
    };
    match run(case, &mut report) {
        Ok(()) => report.pass = report.mismatches.is_empty(),
        Err(e) => report.error = Some(e.to_string()),
    }
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

fn run(case: &ModelCase, report: &mut Report) -> Result<()> {
    let s = case.stabilizer()?;
    s.check_closure()?;
    report.dim = Some(s.dim());
    if s.dim() != case.expected_dim {
        report.mismatches.push(format!("dim: expected {}, computed {}", case.expected_dim, s.dim()));
    }
    if s.dim() == 1 {
        report.jordan = Some(s.basis()[0].to_matrix().jordan_type()?);
    }
    if let Some(want) = case.expected_jordan {
        if report.jordan != Some(want) {
            let got = report.jordan.map_or("none".to_string(), |j| j.to_string());
            report.mismatches.push(format!("jordan: expected {want}, computed {got}"));
        }
    }
    let sig = signature(&s)?;
    let m = match_signature(&sig, &case.expected)?;
    report.mismatches.extend(m.mismatches.iter().map(ToString::to_string));
    report.signature = Some(sig);
    Ok(())
}

/// Every roster case with default parameters, plus the pencil over
/// [`lambda_grid`] and `bidegree_1n` over [`BIDEGREE_GRID`].
pub fn default_grid() -> Vec<(String, Params)> {
    let mut out = Vec::new();
    for &name in ROSTER {
        match name {
            "twisted_quartic_pencil" => {
                for l in lambda_grid() {
                    out.push((name.to_string(), Params::from([("lambda".to_string(), l)])));
                }
            }
            "bidegree_1n" => {
                for n in BIDEGREE_GRID {
                    out.push((name.to_string(), Params::from([("n".to_string(), int(n as i64))])));
                }
            }
            _ => out.push((name.to_string(), Params::new())),
        }
    }
    out
}

/// Verifies every grid entry in parallel on the current rayon pool. Build
/// failures become failed reports.
pub fn verify_all(grid: &[(String, Params)]) -> Vec<Report> {
    grid.par_iter()
        .map(|(name, params)| match build(name, params) {
            Ok(case) => verify(&case),
            Err(e) => Report {
                case: name.clone(),
                params: params.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
                expected: String::new(),
                expected_dim: 0,
                dim: None,
                jordan: None,
                signature: None,
                mismatches: Vec::new(),
                error: Some(e.to_string()),
                pass: false,
                wall_ms: 0.0,
            },
        })
        .collect()
}

/// The ring `u, v` and the images `x_i -> u^{d-i} v^i` parameterizing a
/// rational normal curve; used to certify curve ideals by substitution.
pub fn curve_parameterization(exponents: &[(u32, u32)]) -> Vec<Polynomial> {
    let uv = RingSpec::new(&[("t", vec!["u", "v"])]).expect("valid");
    let (u, v) = (Polynomial::named(&uv, "u"), Polynomial::named(&uv, "v"));
    exponents.iter().map(|&(a, b)| &u.pow(a) * &v.pow(b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Multidegree;

    fn check(name: &str, params: Params) -> Report {
        let r = verify(&build(name, &params).unwrap());
        assert!(r.pass, "{name}: {r:?}");
        r
    }

    #[test]
    fn small_cases() {
        assert_eq!(check("twisted_cubic", Params::new()).dim, Some(3));
        assert_eq!(check("nodal_cubic_plane", Params::new()).dim, Some(0));
        assert_eq!(check("two_conics_bitangent", Params::new()).jordan, Some(JordanType::Semisimple));
        assert_eq!(check("two_conics_osculating", Params::new()).jordan, Some(JordanType::Nilpotent));
    }

    #[test]
    fn parameters() {
        assert!(matches!(build("nope", &Params::new()), Err(Error::UnknownCase(_))));
        let bad = Params::from([("lambda".to_string(), int(1))]);
        assert!(matches!(build("twisted_quartic_pencil", &bad), Err(Error::Parameter(_))));
        let bad = Params::from([("lambda".to_string(), int(0))]);
        assert!(build("twisted_quartic_pencil", &bad).is_err());
        let bad = Params::from([("n".to_string(), rat(1, 2))]);
        assert!(build("bidegree_1n", &bad).is_err());
        assert!(build("twisted_cubic", &Params::from([("n".to_string(), int(1))])).is_err());
        assert_eq!(parse_param("λ=-1/3").unwrap(), ("lambda".to_string(), rat(-1, 3)));
        assert!(parse_param("mu=2").is_err());
        let c = build("twisted_quartic_pencil", &Params::new()).unwrap();
        assert_eq!(c.label(), "twisted_quartic_pencil(lambda=2)");
    }

    #[test]
    fn expected_dims_agree_with_signatures() {
        for (name, params) in default_grid() {
            let c = build(&name, &params).unwrap();
            assert_eq!(Some(c.expected_dim), expected_signature(&c.expected).unwrap().dim);
        }
    }

    #[test]
    fn conic_pairs_meet_as_claimed() {
        // bitangent pair: on x0^2 = x1*x2 the second conic restricts to -x1*x2 = -x0^2,
        // vanishing only at [0:1:0] and [0:0:1], each to order 2 in the parameter
        let pts = curve_parameterization(&[(1, 1), (2, 0), (0, 2)]);
        let r = RingSpec::projective("x", 3);
        let second = Polynomial::parse(&r, "x0^2 - 2*x1*x2").unwrap();
        let restricted = second.substitute(&pts).unwrap();
        assert_eq!(restricted.to_string(), "-u^2*v^2");
        // osculating pair: second conic restricts to x2^2 = v^4, a single point of multiplicity 4
        let second = Polynomial::parse(&r, "x1*x2 - x0^2 + x2^2").unwrap();
        assert_eq!(second.substitute(&pts).unwrap().to_string(), "v^4");
    }

    #[test]
    fn v5_conic_hilbert_function() {
        let c = build("v5_conic_model", &Params::new()).unwrap();
        let i = &c.ideals[0];
        for k in 2..=4u32 {
            let piece = i.graded_piece(&Multidegree(vec![k]));
            assert_eq!(piece.ambient_dim() - piece.dim(), (4 * k + 1) as usize);
        }
        let pts = curve_parameterization(&[(4, 0), (3, 1), (1, 3), (0, 4)]);
        for g in i.generators() {
            assert!(g.substitute(&pts).unwrap().is_zero());
        }
    }
}
