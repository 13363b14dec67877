//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if
//! any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fano_core::catalog::{self, Params, Report};
use fano_core::exactmath::{int, rat};
use fano_core::fanodb;
use fano_core::polyring::{graded_monomials, Ideal};
use fano_core::sl2rep::{invariant_vectors, rational_normal_curve_ideal, recompose};
use fano_core::{
    act, bracket, decompose, irr_char, stabilizer, sym_power, AlgElement, AmbientAlgebra, JordanType, Matrix,
    Multidegree, Polynomial, Rational, Ring, RingSpec, Subalgebra,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const TRIALS: usize = 100;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_case(name: &str, params: Params) -> Result<Report, String> {
    let case = catalog::build(name, &params).map_err(|e| format!("{name}: {e}"))?;
    let r = catalog::verify(&case);
    ensure(r.pass, || format!("{name} {:?} failed: {:?} {:?}", r.params, r.mismatches, r.error))?;
    Ok(r)
}

fn timed(name: &str, limit: Duration, f: impl FnOnce() -> Result<Report, String>) -> Result<Report, String> {
    let start = Instant::now();
    let r = f()?;
    let t = start.elapsed();
    ensure(t < limit, || format!("{name} took {t:?}, limit {limit:?}"))?;
    Ok(r)
}

fn lambda(l: Rational) -> Params {
    Params::from([("lambda".to_string(), l)])
}

fn stabilizer_golden() -> Outcome {
    let limit = Duration::from_secs(2);
    let case = |n: &str| timed(n, limit, || run_case(n, Params::new()));
    let sig = |r: &Report| r.signature.clone().ok_or_else(|| format!("{} has no signature", r.case));

    let tc = sig(&case("twisted_cubic")?)?;
    ensure(tc.dim == Some(3) && tc.killing_rank == Some(3), || format!("twisted_cubic: {tc}"))?;
    let pc = sig(&case("plane_cubic")?)?;
    ensure(pc.dim == Some(4) && pc.unipotent_dim == Some(3), || format!("plane_cubic: {pc}"))?;
    let cq = sig(&case("conic_on_quadric")?)?;
    let levi = cq.levi_components.as_ref().map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>());
    ensure(cq.dim == Some(4) && levi == Some(vec!["A1".to_string()]) && cq.radical_toral() == Some(1), || {
        format!("conic_on_quadric: {cq}")
    })?;
    let dims = [
        ("hyperplane_P3", 12),
        ("line_P3", 11),
        ("two_skew_lines", 7),
        ("point_line_flag", 10),
        ("point_plane_flag", 10),
        ("quadric_point_P4", 7),
        ("quadric_point_P5", 11),
        ("veronese_cone", 15),
    ];
    for (name, d) in dims {
        let r = case(name)?;
        ensure(r.dim == Some(d), || format!("{name}: dim {:?}, want {d}", r.dim))?;
    }
    Ok("11 cases, each under 2 s".into())
}

fn lambda_grid_dims() -> Result<Vec<(Rational, usize)>, String> {
    let mut out = Vec::new();
    for l in catalog::lambda_grid() {
        let r = run_case("twisted_quartic_pencil", lambda(l.clone()))?;
        let d = r.dim.ok_or("no dim")?;
        if d == 1 {
            ensure(r.jordan == Some(JordanType::Semisimple), || format!("lambda {l}: {:?}", r.jordan))?;
        }
        out.push((l, d));
    }
    Ok(out)
}

fn lambda_scan() -> Outcome {
    let start = Instant::now();
    let dims: Vec<usize> = lambda_grid_dims()?.into_iter().map(|(_, d)| d).collect();
    ensure(dims == [1, 1, 1, 3, 1, 1, 1], || format!("dims {dims:?}"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("scan took {t:?}"))?;
    Ok(format!("dims {dims:?}, semisimple at dim 1, {t:.1?}"))
}

fn bidegree_scan() -> Outcome {
    let mut dims = Vec::new();
    for n in 0..=4 {
        let r = run_case("bidegree_1n", Params::from([("n".to_string(), int(n))]))?;
        if n >= 2 {
            ensure(r.jordan == Some(JordanType::Semisimple), || format!("n={n}: {:?}", r.jordan))?;
        }
        dims.push(r.dim.ok_or("no dim")?);
    }
    ensure(dims == [5, 3, 1, 1, 1], || format!("dims {dims:?}"))?;
    Ok(format!("dims {dims:?}"))
}

fn conic_pairs() -> Outcome {
    let b = run_case("two_conics_bitangent", Params::new())?;
    let o = run_case("two_conics_osculating", Params::new())?;
    ensure(b.dim == Some(1) && b.jordan == Some(JordanType::Semisimple), || format!("bitangent {:?}", b.jordan))?;
    ensure(o.dim == Some(1) && o.jordan == Some(JordanType::Nilpotent), || format!("osculating {:?}", o.jordan))?;
    Ok("bitangent semisimple, osculating nilpotent".into())
}

fn representation_theory() -> Outcome {
    let c = sym_power(&sym_power(&irr_char(1), 4), 2);
    let parts = decompose(&c).map_err(|e| e.to_string())?;
    ensure(parts == [8, 4, 0], || format!("decompose {parts:?}"))?;
    let total: u32 = parts.iter().map(|m| m + 1).sum();
    ensure(total == 15 && c.dim() == 15, || format!("dims {total} vs {}", c.dim()))?;

    let inv = invariant_vectors(4, 2);
    ensure(inv.len() == 1, || format!("{} invariant quadrics", inv.len()))?;
    let r = inv[0].ring().clone();
    let coef = |m: &str| {
        let p = Polynomial::parse(&r, m).expect("monomial");
        let (mono, _) = p.terms().next().expect("one term");
        inv[0].coeff(mono)
    };
    let q = inv[0].scale(&coef("x2^2").recip());
    let want = Polynomial::parse(&r, "x2^2 + 1/3*x0*x4 - 4/3*x1*x3").expect("parses");
    ensure(q == want, || format!("invariant {q}"))?;

    // the pencil member is z^2 - lambda*x*w - (1 - lambda)*y*t
    let scale = coef("x2^2").recip();
    let from_solver = -(coef("x0*x4") * &scale);
    ensure(-(coef("x1*x3") * &scale) == int(1) - &from_solver, || "not in the pencil".into())?;
    let jumps: Vec<Rational> = lambda_grid_dims()?.into_iter().filter(|&(_, d)| d == 3).map(|(l, _)| l).collect();
    ensure(jumps == [from_solver.clone()], || format!("scan jumps at {jumps:?}, solver gives {from_solver}"))?;
    Ok(format!("U8+U4+U0, invariant {q}, lambda {from_solver} from both solver and scan"))
}

fn discriminants() -> Outcome {
    let y = RingSpec::projective("y", 3);
    let p = |s: &str| Polynomial::parse(&y, s).expect("parses");
    let x = catalog::discriminant_ring();
    let px = |s: &str| Polynomial::parse(&x, s).expect("parses");
    let d1 = catalog::discriminant_cubic([&p("y0^2"), &p("y1^2"), &p("y2^2")]).map_err(|e| e.to_string())?;
    ensure(d1 == px("x0*x1*x2"), || format!("three lines: {d1}"))?;
    let d2 = catalog::discriminant_cubic([&p("y0^2 - y1*y2"), &p("y1^2"), &p("y2^2")]).map_err(|e| e.to_string())?;
    ensure(d2 == &px("x0") * &px("x1*x2 - 1/4*x0^2"), || format!("line and conic: {d2}"))?;
    let residual = catalog::linear_quotient(&px("x0"), &d2).map_err(|e| e.to_string())?.ok_or("x0 does not divide")?;
    let rank = catalog::conic_rank(&residual).map_err(|e| e.to_string())?;
    ensure(rank == 3, || format!("residual conic rank {rank}"))?;
    Ok(format!("{d1}; {d2} = x0 * ({residual}), rank 3"))
}

fn database() -> Outcome {
    let start = Instant::now();
    let db = fanodb::FanoDb::parse(fanodb::DATA).map_err(|e| e.to_string())?;
    let checks = db.consistency().map_err(|e| e.to_string())?;
    for c in &checks {
        ensure(c.pass, || format!("{}: {}", c.name, c.detail))?;
    }
    for id in fanodb::SOMETIMES_DISCREPANCIES {
        let f = db.lookup(id).map_err(|e| e.to_string())?;
        ensure(!f.notes.is_empty(), || format!("{id} lacks a discrepancy note"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("{} checks over {} families, {t:.1?}", checks.len(), db.len()))
}

fn small_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn random_element(rng: &mut StdRng, amb: &AmbientAlgebra) -> AlgElement {
    let coeffs: Vec<Rational> = (0..amb.dim()).map(|_| small_rational(rng)).collect();
    amb.combination(&coeffs)
}

fn random_form(rng: &mut StdRng, ring: &Ring, degree: Vec<u32>) -> Polynomial {
    let monos = graded_monomials(ring, &Multidegree(degree));
    let coords: Vec<Rational> =
        monos.iter().map(|_| if rng.gen_bool(0.5) { small_rational(rng) } else { int(0) }).collect();
    Polynomial::from_coords(ring, &monos, &coords)
}

fn random_invertible(rng: &mut StdRng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
        let m = Matrix::from_rows(&rows, n);
        if m.rank() == n {
            return m;
        }
    }
}

fn action_identities(rng: &mut StdRng) -> Result<(), String> {
    let ring = RingSpec::product(&[("x", 3), ("y", 2)]);
    let amb = AmbientAlgebra::new(&ring);
    for t in 0..TRIALS {
        let (x, y) = (random_element(rng, &amb), random_element(rng, &amb));
        let (df, dg) =
            (vec![rng.gen_range(0..=2), rng.gen_range(0..=2)], vec![rng.gen_range(0..=2), rng.gen_range(0..=1)]);
        let f = random_form(rng, &ring, df);
        let g = random_form(rng, &ring, dg);
        let e = |r: fano_core::Result<Polynomial>| r.map_err(|e| e.to_string());
        let lhs = e(act(&x, &(&f * &g)))?;
        let rhs = &(&e(act(&x, &f))? * &g) + &(&f * &e(act(&x, &g))?);
        ensure(lhs == rhs, || format!("Leibniz fails at trial {t}"))?;
        let xy = bracket(&x, &y).map_err(|e| e.to_string())?;
        let lhs = e(act(&xy, &f))?;
        let rhs = &e(act(&x, &e(act(&y, &f))?))? - &e(act(&y, &e(act(&x, &f))?))?;
        ensure(lhs == rhs, || format!("representation identity fails at trial {t}"))?;
    }
    Ok(())
}

fn equivariance(rng: &mut StdRng, closures: &mut usize) -> Result<(), String> {
    let p2 = RingSpec::projective("x", 3);
    let p1p1 = RingSpec::product(&[("x", 2), ("y", 2)]);
    let ideals = [
        Ideal::parse(&p2, &["(x0^2 - x1*x2)*(x0^2 - 2*x1*x2)"]).map_err(|e| e.to_string())?,
        Ideal::parse(&p2, &["x0*x1*x2"]).map_err(|e| e.to_string())?,
        Ideal::parse(&p1p1, &["x0*y0^2 + x1*y1^2"]).map_err(|e| e.to_string())?,
        rational_normal_curve_ideal(3),
    ];
    for t in 0..TRIALS {
        let ideal = &ideals[t % ideals.len()];
        let ring = ideal.ring();
        let amb = AmbientAlgebra::new(ring);
        let g: Vec<Matrix> = ring.block_sizes().iter().map(|&n| random_invertible(rng, n)).collect();
        let moved_gens: Vec<Polynomial> = ideal
            .generators()
            .iter()
            .map(|f| f.linear_substitute(&g))
            .collect::<fano_core::Result<_>>()
            .map_err(|e| e.to_string())?;
        let moved = Ideal::new(ring, moved_gens).map_err(|e| e.to_string())?;
        let s = stabilizer(ideal, &amb).map_err(|e| e.to_string())?;
        let s_moved = stabilizer(&moved, &amb).map_err(|e| e.to_string())?;
        for sub in [&s, &s_moved] {
            sub.check_closure().map_err(|e| e.to_string())?;
            *closures += 1;
        }
        // f -> f(g x) moves the zero set by g^{-1}
        let ginv: Vec<Matrix> =
            g.iter().map(Matrix::inverse).collect::<fano_core::Result<_>>().map_err(|e| e.to_string())?;
        let conj: Vec<AlgElement> = s
            .basis()
            .iter()
            .map(|x| x.conjugate(&ginv))
            .collect::<fano_core::Result<_>>()
            .map_err(|e| e.to_string())?;
        let expected = Subalgebra::from_basis(&amb, conj).map_err(|e| e.to_string())?;
        ensure(s_moved.same_span(&expected), || format!("equivariance fails at trial {t}"))?;
    }
    Ok(())
}

fn catalog_closures(closures: &mut usize) -> Result<(), String> {
    for (name, params) in catalog::default_grid() {
        let case = catalog::build(&name, &params).map_err(|e| e.to_string())?;
        let s = case.stabilizer().map_err(|e| e.to_string())?;
        s.check_closure().map_err(|e| format!("{name}: {e}"))?;
        *closures += 1;
    }
    Ok(())
}

fn rank_nullity(rng: &mut StdRng) -> Result<(), String> {
    for t in 0..TRIALS * 2 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<Rational>> = (0..r)
            .map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { int(0) } else { small_rational(rng) }).collect())
            .collect();
        let m = Matrix::from_rows(&rows, c);
        let kernel = m.kernel_basis();
        ensure(m.rank() + kernel.len() == c, || format!("rank-nullity fails at trial {t}"))?;
        for v in &kernel {
            ensure(m.mul_vec(v).iter().all(|x| *x == int(0)), || {
                format!("kernel vector not annihilated at trial {t}")
            })?;
        }
    }
    Ok(())
}

fn decompose_round_trip(rng: &mut StdRng) -> Result<(), String> {
    for t in 0..TRIALS * 2 {
        let mut ms: Vec<u32> = (0..rng.gen_range(0..8)).map(|_| rng.gen_range(0..12)).collect();
        let c = recompose(&ms);
        ms.sort_unstable_by(|a, b| b.cmp(a));
        let got = decompose(&c).map_err(|e| e.to_string())?;
        ensure(got == ms, || format!("round trip fails at trial {t}: {ms:?} -> {got:?}"))?;
    }
    Ok(())
}

fn properties() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_97ed);
    let mut closures = 0;
    action_identities(&mut rng)?;
    equivariance(&mut rng, &mut closures)?;
    catalog_closures(&mut closures)?;
    rank_nullity(&mut rng)?;
    decompose_round_trip(&mut rng)?;
    ensure(closures >= TRIALS, || format!("only {closures} closure checks"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("{TRIALS}+ trials per property, {closures} closure checks, {t:.1?}"))
}

fn cli_verify_all() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fano")).args(["verify", "--all"]).output().map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}\n{}", out.status.code(), String::from_utf8_lossy(&out.stdout))
    })?;
    ensure(t < Duration::from_secs(120), || format!("took {t:?}"))?;
    Ok(format!("exit 0 in {t:.1?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("stabilizer golden suite", stabilizer_golden),
        ("lambda scan", lambda_scan),
        ("bidegree scan", bidegree_scan),
        ("conic-pair dichotomy", conic_pairs),
        ("representation theory", representation_theory),
        ("discriminant cubics", discriminants),
        ("database consistency", database),
        ("property suites", properties),
        ("fano verify --all", cli_verify_all),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
