use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fano_core::catalog::{self, Params, Report};
use fano_core::fanodb::{self, FanoFamily, GimelId};
use fano_core::{decompose, parse_character, Polynomial, RingSpec};
use serde_json::json;

/// Automorphism groups of Fano threefolds: exact stabilizer checks and a
/// queryable family table.
#[derive(Parser)]
#[command(name = "fano", version)]
struct Cli {
    /// Emit one JSON document instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show one family, e.g. `fano lookup 2.28`.
    Lookup { id: String },
    /// List families by automorphism behaviour.
    List(ListArgs),
    /// Recompute a catalog case, or every case with `--all`.
    Verify(VerifyArgs),
    /// Split an SL(2) character such as `sym(2, sym(4, U1))` into irreducibles.
    Decompose { expr: String },
    /// Discriminant cubic of three ternary quadrics in y0, y1, y2, one per line.
    Discriminant { file: PathBuf },
    /// Check the table against the published lists.
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Infinite {
    Always,
    Sometimes,
}

#[derive(Args)]
#[group(multiple = false)]
struct ListArgs {
    #[arg(long, value_enum)]
    infinite: Option<Infinite>,
    /// Always-infinite families with a non-reductive identity component.
    #[arg(long)]
    nonreductive: bool,
    /// Infinite automorphisms together with positive h^{1,2}.
    #[arg(long)]
    h12: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    case: Option<String>,
    /// `lambda=<rational>` (also `λ=`) or `n=<integer>`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Every roster case over the default parameter grid.
    #[arg(long)]
    all: bool,
    /// Worker threads for `--all`.
    #[arg(long, requires = "all")]
    jobs: Option<usize>,
}

/// Distinguishes bad input (exit 2) from failed verification (exit 1).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(r: fano_core::Result<T>) -> Result<T> {
    r.map_err(|e| Usage(e.to_string()).into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a verification failed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Lookup { id } => lookup(id, cli.json),
        Command::List(args) => list(args, cli.json),
        Command::Verify(args) => verify(args, cli.json),
        Command::Decompose { expr } => decompose_cmd(expr, cli.json),
        Command::Discriminant { file } => discriminant(file, cli.json),
        Command::Check => check(cli.json),
    }
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn lookup(id: &str, json: bool) -> Result<bool> {
    let db = fanodb::load().context("loading the family table")?;
    let f = usage(db.lookup(id))?;
    if json {
        print_json(&serde_json::to_value(f)?)?;
        return Ok(true);
    }
    println!("id            {}", f.id);
    println!("description   {}", f.description);
    println!("infinite      {}", f.infinity_class);
    println!("generic aut0  {}", f.generic_aut0);
    for m in &f.exceptional_members {
        println!("member        {}  ({}; {})", m.group, m.description, m.family_note);
    }
    if let Some(d) = f.degree {
        println!("degree        {d}");
    }
    if let Some(h) = &f.h12_note {
        println!("h12           {h}");
    }
    println!("ke obstructed {}", f.ke_obstructed);
    if !f.model_refs.is_empty() {
        println!("models        {}", f.model_refs.join(", "));
    }
    for n in &f.notes {
        println!("note          {n}");
    }
    println!("anchor        {}", f.anchor);
    Ok(true)
}

fn list(args: &ListArgs, json: bool) -> Result<bool> {
    let db = fanodb::load()?;
    let (label, ids): (&str, Vec<GimelId>) = if args.nonreductive {
        ("nonreductive", db.nonreductive_always()?.into_iter().collect())
    } else if args.h12 {
        ("h12", db.h12_infinite().into_iter().collect())
    } else {
        match args.infinite {
            Some(Infinite::Always) => ("always", db.infinite_always().into_iter().collect()),
            Some(Infinite::Sometimes) => ("sometimes", db.infinite_sometimes().into_iter().collect()),
            None => ("all", db.families().map(|f| f.id).collect()),
        }
    };
    let rows: Vec<&FanoFamily> = ids.iter().filter_map(|i| db.get(*i)).collect();
    if json {
        let ids: Vec<String> = ids.iter().map(ToString::to_string).collect();
        print_json(&json!({ "filter": label, "count": ids.len(), "ids": ids, "families": rows }))?;
        return Ok(true);
    }
    println!("{:<6} {:<10} {:<26} description", "id", "infinite", "generic aut0");
    for f in rows {
        println!(
            "{:<6} {:<10} {:<26} {}",
            f.id.to_string(),
            f.infinity_class.to_string(),
            f.generic_aut0.to_string(),
            f.description
        );
    }
    println!("{} families", ids.len());
    Ok(true)
}

fn verify(args: &VerifyArgs, json: bool) -> Result<bool> {
    let reports = if args.all {
        let grid = catalog::default_grid();
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = args.jobs {
            if n == 0 {
                bail!(Usage("--jobs must be positive".into()));
            }
            pool = pool.num_threads(n);
        }
        pool.build()?.install(|| catalog::verify_all(&grid))
    } else {
        let name = args.case.as_deref().expect("clap enforces a case");
        let mut params = Params::new();
        for p in &args.params {
            let (k, v) = usage(catalog::parse_param(p))?;
            params.insert(k, v);
        }
        vec![catalog::verify(&usage(catalog::build(name, &params))?)]
    };
    let pass = reports.iter().all(|r| r.pass);
    if json {
        let failed = reports.iter().filter(|r| !r.pass).count();
        print_json(&json!({ "pass": pass, "total": reports.len(), "failed": failed, "reports": reports }))?;
    } else {
        print_reports(&reports);
    }
    Ok(pass)
}

fn print_reports(reports: &[Report]) {
    println!(
        "{:<24} {:<14} {:<18} {:>4} {:<11} {:<5} {:>9}",
        "case", "params", "expected", "dim", "jordan", "pass", "ms"
    );
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let jordan = r.jordan.map_or("-".to_string(), |j| j.to_string());
        let dim = r.dim.map_or("-".to_string(), |d| d.to_string());
        let verdict = if r.pass { "ok" } else { "FAIL" };
        println!(
            "{:<24} {:<14} {:<18} {:>4} {:<11} {:<5} {:>9.1}",
            r.case,
            params.join(","),
            r.expected,
            dim,
            jordan,
            verdict,
            r.wall_ms
        );
        if let Some(sig) = &r.signature {
            if !r.pass {
                println!("    computed {sig}");
            }
        }
        for m in &r.mismatches {
            println!("    {m}");
        }
        if let Some(e) = &r.error {
            println!("    error: {e}");
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    println!("{passed}/{} passed", reports.len());
}

fn decompose_cmd(expr: &str, json: bool) -> Result<bool> {
    let c = usage(parse_character(expr))?;
    let parts = usage(decompose(&c))?;
    if json {
        print_json(&json!({ "expr": expr, "dim": c.dim(), "character": c.weights(), "highest_weights": parts }))?;
    } else {
        let summands: Vec<String> = parts.iter().map(|m| format!("U{m}")).collect();
        println!("{expr} = {}", if summands.is_empty() { "0".to_string() } else { summands.join(" + ") });
        println!("dim {} = {}", c.dim(), parts.iter().map(|m| (m + 1).to_string()).collect::<Vec<_>>().join(" + "));
    }
    Ok(true)
}

fn discriminant(file: &PathBuf, json: bool) -> Result<bool> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))
        .map_err(|e| Usage(format!("{e:#}")))?;
    let ring = RingSpec::projective("y", 3);
    let forms: Vec<Polynomial> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| usage(Polynomial::parse(&ring, l)))
        .collect::<Result<_>>()?;
    let [q0, q1, q2] = forms.as_slice() else {
        bail!(Usage(format!("expected three quadrics, found {}", forms.len())));
    };
    let cubic = usage(catalog::discriminant_cubic([q0, q1, q2]))?;
    let ranks: Vec<usize> = forms.iter().map(catalog::conic_rank).collect::<fano_core::Result<_>>()?;
    let xr = catalog::discriminant_ring();
    let mut factors = Vec::new();
    for i in 0..3 {
        let l = Polynomial::var(&xr, i);
        if !cubic.is_zero() {
            if let Some(q) = catalog::linear_quotient(&l, &cubic)? {
                let rank = catalog::conic_rank(&q)?;
                factors.push(json!({ "line": l.to_string(), "residual": q.to_string(), "residual_rank": rank }));
            }
        }
    }
    if json {
        print_json(&json!({
            "forms": forms.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "form_ranks": ranks,
            "cubic": cubic.to_string(),
            "coordinate_line_factors": factors,
        }))?;
    } else {
        println!("discriminant {cubic}");
        for f in &factors {
            println!(
                "  {} divides; residual conic {} of rank {}",
                f["line"].as_str().unwrap_or(""),
                f["residual"].as_str().unwrap_or(""),
                f["residual_rank"]
            );
        }
    }
    Ok(true)
}

fn check(json: bool) -> Result<bool> {
    let db = fanodb::load()?;
    let checks = db.consistency()?;
    let models = db.model_expectations()?;
    let pass = checks.iter().all(|c| c.pass) && models.iter().all(|m| m.2);
    if json {
        let models: Vec<_> =
            models.iter().map(|(id, name, ok)| json!({ "id": id, "case": name, "pass": ok })).collect();
        print_json(&json!({ "pass": pass, "checks": checks, "model_refs": models }))?;
    } else {
        for c in &checks {
            println!("{:<5} {:<22} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
        }
        for (id, name, ok) in &models {
            println!("{:<5} model {:<16} {}", if *ok { "ok" } else { "FAIL" }, id.to_string(), name);
        }
    }
    Ok(pass)
}
