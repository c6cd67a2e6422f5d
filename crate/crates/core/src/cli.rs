//! Command-line front end. Every number is printed as an exact string.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::exact::{fmt_rational, int, parse_rational, Rational, ScalarPoly};
use crate::fock::{fock_bracket_check, fock_inner, fock_l, heis_act, monomials_of_weight, FockPoly};
use crate::formal::{delta_identity_suite, locality_order, Laurent};
use crate::verma::{
    cocycle_check, discrete_series, discrete_series_extended, first_failure, quotient_graded_dims,
    singular_vectors, unitarity_classify, Partition, VermaModule, VermaVector,
};
use crate::voa::{build_voa, name_state, quotient_voa_dims, verify_all, VoaState};
use crate::{Error, Result};

/// Largest level or cutoff accepted on the command line.
pub const MAX_LEVEL: usize = 12;

/// Environment variable naming a directory where the memo table of the
/// symbolic Verma module is loaded from and saved to.
pub const CACHE_ENV: &str = "CFT_KERNEL_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "virasoro", version, about = "Exact Virasoro representation theory")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for scans; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub parallel: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kac determinant at one level, symbolic or at a point.
    KacDet(PointArgs),
    /// Gram matrix of the Shapovalov form at one level.
    Gram(PointArgs),
    /// Definiteness of the Gram matrices over a grid of (c, h).
    UnitarityScan {
        #[arg(long, value_delimiter = ',', value_parser = rational_arg, required = true)]
        c_list: Vec<Rational>,
        #[arg(long, value_delimiter = ',', value_parser = rational_arg, required = true)]
        h_list: Vec<Rational>,
        #[arg(long)]
        level_max: usize,
    },
    /// Central charge and weights of the unitary discrete series.
    DiscreteSeries {
        #[arg(long)]
        m: u32,
        /// List 1 <= p <= m+1, 1 <= q <= m+2 instead of 1 <= p <= q <= m+1.
        #[arg(long)]
        extended_range: bool,
    },
    /// Kernel of the Gram matrix at a point.
    Singular {
        #[arg(long, value_parser = rational_arg)]
        c: Rational,
        #[arg(long, value_parser = rational_arg)]
        h: Rational,
        #[arg(long)]
        level: usize,
    },
    /// Graded dimensions of L(c, h), or of the vacuum VOA L(c, 0) without --h.
    QuotientDims {
        #[arg(long, value_parser = rational_arg)]
        c: Rational,
        #[arg(long, value_parser = rational_arg)]
        h: Option<Rational>,
        #[arg(long)]
        level_max: usize,
    },
    /// Virasoro brackets and adjointness on the Fock space.
    FockVerify {
        #[arg(long)]
        cutoff: usize,
        #[arg(long, value_delimiter = ',', value_parser = rational_arg, default_value = "0")]
        mu: Vec<Rational>,
        #[arg(long, default_value_t = 3)]
        mode_max: i64,
    },
    /// Identities of the formal delta function on a finite window.
    DeltaCheck {
        #[arg(long)]
        window: i64,
        #[arg(long)]
        guard: i64,
        /// Test function as exponent:coefficient pairs, e.g. "2:1,-1:1/2".
        #[arg(long, default_value = "2:1")]
        f: String,
    },
    /// Operator product expansion of two fields of the vacuum VOA.
    Ope(OpeArgs),
    /// Vertex algebra axioms on the truncated vacuum VOA.
    VoaVerify {
        #[command(flatten)]
        voa: VoaArgs,
        /// Highest level of the state pairs in the Borcherds check.
        #[arg(long, default_value_t = 3)]
        borcherds_level: usize,
    },
    /// The Witt 2-cocycle recurrence.
    Cocycle {
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
}

#[derive(Args, Debug)]
pub struct PointArgs {
    #[arg(long)]
    pub level: usize,
    /// Keep c and h as indeterminates (the default without --c/--h).
    #[arg(long, conflicts_with_all = ["c", "h"])]
    pub symbolic: bool,
    #[arg(long, value_parser = rational_arg, requires = "h")]
    pub c: Option<Rational>,
    #[arg(long, value_parser = rational_arg, requires = "c")]
    pub h: Option<Rational>,
}

#[derive(Args, Debug)]
pub struct VoaArgs {
    /// Central charge, a rational or the letter c for symbolic.
    #[arg(long, default_value = "c", value_parser = central_charge_arg)]
    pub c: ScalarPoly,
    #[arg(long, default_value_t = 6)]
    pub cutoff: usize,
}

#[derive(Args, Debug)]
pub struct OpeArgs {
    #[command(flatten)]
    pub voa: VoaArgs,
    /// First state as comma-separated parts (all >= 2); empty for |0>.
    #[arg(long, default_value = "2")]
    pub a: String,
    /// Second state.
    #[arg(long, default_value = "2")]
    pub b: String,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn central_charge_arg(s: &str) -> std::result::Result<ScalarPoly, String> {
    if s.trim() == "c" {
        Ok(ScalarPoly::c())
    } else {
        rational_arg(s).map(ScalarPoly::constant)
    }
}

/// Result of one command: whether every check passed, the JSON document,
/// and a table (header first) for CSV and pretty output.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub ok: bool,
    pub json: Value,
    pub table: Vec<Vec<String>>,
}

fn q(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

fn poly(x: &ScalarPoly) -> Value {
    Value::String(x.to_string())
}

fn parts(p: &Partition) -> Value {
    json!(p.parts())
}

fn vector_json(v: &VermaVector) -> Value {
    Value::Array(
        v.terms()
            .map(|(p, c)| json!({"partition": parts(p), "coeff": c.to_string()}))
            .collect(),
    )
}

fn guard(what: &str, n: usize) -> Result<()> {
    if n > MAX_LEVEL {
        return Err(Error::Parse(format!("{what} {n} exceeds the limit of {MAX_LEVEL}")));
    }
    Ok(())
}

fn parse_state(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad state {s:?}"))))
        .collect::<Result<Vec<u32>>>()?;
    if parts.iter().any(|&p| p < 2) {
        return Err(Error::Parse(format!("state parts must be at least 2, got {s:?}")));
    }
    Ok(Partition::new(parts))
}

fn parse_laurent(s: &str) -> Result<Laurent> {
    let mut f = Laurent::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected exponent:coefficient, got {item:?}")))?;
        let k: i64 = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
        let v = parse_rational(v)?;
        *f.entry(k).or_insert_with(|| int(0)) += v;
    }
    f.retain(|_, v| *v != int(0));
    Ok(f)
}

fn cache_file() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join("verma-symbolic.cache"))
}

/// Runs `f` on the symbolic Verma module, loading and saving its memo table
/// when the cache directory is configured.
fn with_symbolic<T>(f: impl FnOnce(&VermaModule) -> T) -> T {
    let module = VermaModule::symbolic();
    let path = cache_file();
    if let Some(path) = &path {
        if let Ok(text) = std::fs::read_to_string(path) {
            if let Err(e) = module.import_cache(&text) {
                eprintln!("ignoring cache {}: {e}", path.display());
            }
        }
    }
    let out = f(&module);
    if let Some(path) = &path {
        let saved = path
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .and_then(|_| std::fs::write(path, module.export_cache()));
        if let Err(e) = saved {
            eprintln!("could not write cache {}: {e}", path.display());
        }
    }
    out
}

fn point(args: &PointArgs) -> Option<(Rational, Rational)> {
    match (&args.c, &args.h) {
        (Some(c), Some(h)) => Some((c.clone(), h.clone())),
        _ => None,
    }
}

fn kac_det(args: &PointArgs) -> Result<Outcome> {
    guard("level", args.level)?;
    let level = args.level as u32;
    let (gram, det, formula) = with_symbolic(|m| {
        let gram = m.gram(level);
        let det = gram.det();
        (gram, det, m.kac_det_formula(level))
    });
    let basis: Vec<Value> = gram.basis.iter().map(parts).collect();
    let exponents: Vec<Value> = formula
        .as_ref()
        .map(|f| f.exponents.iter().map(|e| json!({"p": e.p, "q": e.q, "exp": e.exp})).collect())
        .unwrap_or_default();
    let k = formula.as_ref().ok().map(|f| f.constant.clone());
    let mut doc = json!({
        "level": level,
        "basis": basis,
        "K": k.as_ref().map(q),
        "phi_exponents": exponents,
    });
    let mut ok = formula.is_ok();
    if let Err(e) = &formula {
        doc["error"] = json!(e.to_string());
    }
    let table;
    match point(args) {
        None => {
            doc["det"] = poly(&det);
            table = vec![
                vec!["level".into(), "det".into(), "K".into()],
                vec![level.to_string(), det.to_string(), k.as_ref().map(fmt_rational).unwrap_or_default()],
            ];
        }
        Some((c, h)) => {
            let value = det.eval(&c, &h);
            doc["c"] = q(&c);
            doc["h"] = q(&h);
            doc["det"] = q(&value);
            if let Ok(f) = &formula {
                let via = &f.constant * f.product.eval(&c, &h);
                ok &= via == value;
                doc["formula"] = q(&via);
            }
            table = vec![
                vec!["level".into(), "c".into(), "h".into(), "det".into()],
                vec![level.to_string(), fmt_rational(&c), fmt_rational(&h), fmt_rational(&value)],
            ];
        }
    }
    doc["ok"] = json!(ok);
    Ok(Outcome { ok, json: doc, table })
}

fn gram(args: &PointArgs) -> Result<Outcome> {
    guard("level", args.level)?;
    let level = args.level as u32;
    let gram = with_symbolic(|m| m.gram(level));
    let basis: Vec<Value> = gram.basis.iter().map(parts).collect();
    let rows: Vec<Vec<String>> = match point(args) {
        None => gram.matrix.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        Some((c, h)) => gram.eval(&c, &h).to_rows().iter().map(|r| r.iter().map(fmt_rational).collect()).collect(),
    };
    let mut doc = json!({"level": level, "basis": basis, "gram": rows});
    if let Some((c, h)) = point(args) {
        doc["c"] = q(&c);
        doc["h"] = q(&h);
        let m = gram.eval(&c, &h);
        doc["definiteness"] = json!(m.definiteness()?.as_str());
    }
    let mut table = vec![gram.basis.iter().map(ToString::to_string).collect::<Vec<_>>()];
    table.extend(rows);
    Ok(Outcome { ok: true, json: doc, table })
}

fn pool(parallel: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallel)
        .build()
        .map_err(|e| Error::Parse(format!("cannot start {parallel} workers: {e}")))
}

fn unitarity_scan(cs: &[Rational], hs: &[Rational], level_max: usize, parallel: usize) -> Result<Outcome> {
    guard("level", level_max)?;
    let grid: Vec<(Rational, Rational)> =
        cs.iter().flat_map(|c| hs.iter().map(move |h| (c.clone(), h.clone()))).collect();
    let verdicts = pool(parallel)?.install(|| {
        grid.par_iter()
            .map(|(c, h)| unitarity_classify(c, h, level_max as u32))
            .collect::<Vec<_>>()
    });
    let mut table = vec![["c", "h", "level", "dim", "definiteness", "nullity"].map(String::from).to_vec()];
    let mut points = Vec::new();
    for ((c, h), levels) in grid.iter().zip(&verdicts) {
        let rows: Vec<Value> = levels
            .iter()
            .map(|v| {
                table.push(vec![
                    fmt_rational(c),
                    fmt_rational(h),
                    v.level.to_string(),
                    v.dim.to_string(),
                    v.definiteness.as_str().into(),
                    v.nullity.to_string(),
                ]);
                json!({"level": v.level, "dim": v.dim, "definiteness": v.definiteness.as_str(), "nullity": v.nullity})
            })
            .collect();
        points.push(json!({"c": q(c), "h": q(h), "levels": rows}));
    }
    Ok(Outcome { ok: true, json: json!({"level_max": level_max, "points": points}), table })
}

fn discrete(m: u32, extended: bool) -> Outcome {
    let series = if extended { discrete_series_extended(m) } else { discrete_series(m) };
    let points: Vec<Value> =
        series.points.iter().map(|pt| json!({"p": pt.p, "q": pt.q, "h": q(&pt.h)})).collect();
    let mut table = vec![["m", "c", "p", "q", "h"].map(String::from).to_vec()];
    for pt in &series.points {
        table.push(vec![
            m.to_string(),
            fmt_rational(&series.central_charge),
            pt.p.to_string(),
            pt.q.to_string(),
            fmt_rational(&pt.h),
        ]);
    }
    let doc = json!({
        "m": m,
        "c": q(&series.central_charge),
        "range": if extended { "extended" } else { "p<=q" },
        "h": series.weights().iter().map(q).collect::<Vec<_>>(),
        "points": points,
    });
    Outcome { ok: true, json: doc, table }
}

fn singular(c: &Rational, h: &Rational, level: usize) -> Result<Outcome> {
    guard("level", level)?;
    let vectors = singular_vectors(c, h, level as u32);
    let module = VermaModule::at(c, h);
    let mut ok = true;
    let mut table = vec![["vector", "partition", "coeff"].map(String::from).to_vec()];
    let docs: Vec<Value> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let annihilated = (1..=2).all(|n| module.act(n, v).eval(c, h).is_zero());
            ok &= annihilated;
            for (p, coeff) in v.terms() {
                table.push(vec![i.to_string(), p.to_string(), coeff.to_string()]);
            }
            json!({"terms": vector_json(v), "annihilated_by_L1_L2": annihilated})
        })
        .collect();
    let doc = json!({
        "c": q(c),
        "h": q(h),
        "level": level,
        "nullity": vectors.len(),
        "vectors": docs,
        "ok": ok,
    });
    Ok(Outcome { ok, json: doc, table })
}

fn quotient_dims(c: &Rational, h: Option<&Rational>, level_max: usize) -> Result<Outcome> {
    guard("level", level_max)?;
    let (dims, module) = match h {
        Some(h) => (quotient_graded_dims(c, h, level_max as u32), "L(c,h)"),
        None => (quotient_voa_dims(c, level_max), "L(c,0) vacuum"),
    };
    let mut table = vec![vec!["level".to_string(), "dim".to_string()]];
    table.extend(dims.iter().enumerate().map(|(l, d)| vec![l.to_string(), d.to_string()]));
    let doc = json!({"c": q(c), "h": h.map(q), "module": module, "dims": dims});
    Ok(Outcome { ok: true, json: doc, table })
}

fn fock_verify(cutoff: usize, mus: &[Rational], mode_max: i64, parallel: usize) -> Result<Outcome> {
    guard("cutoff", cutoff)?;
    if mode_max < 0 || mode_max as usize > cutoff {
        return Err(Error::Parse(format!("mode-max {mode_max} must lie in 0..={cutoff}")));
    }
    let jobs: Vec<(Rational, i64, i64)> = mus
        .iter()
        .flat_map(|mu| {
            (-mode_max..=mode_max).flat_map(move |m| (-mode_max..=mode_max).map(move |n| (mu.clone(), m, n)))
        })
        .filter(|(_, m, n)| (m + n).unsigned_abs() as usize <= cutoff)
        .collect();
    let reports = pool(parallel)?.install(|| {
        jobs.par_iter()
            .map(|(mu, m, n)| fock_bracket_check(*m, *n, cutoff, mu))
            .collect::<Vec<_>>()
    });
    let mut ok = true;
    let mut checks = Vec::new();
    let mut table = vec![["check", "mu", "m", "n", "checked", "ok"].map(String::from).to_vec()];
    for r in reports {
        let r = r?;
        ok &= r.ok();
        let counterexample = r.counterexample.as_ref().map(|ce| {
            json!({"monomial": ce.monomial.to_string(), "lhs": ce.lhs.to_string(), "rhs": ce.rhs.to_string()})
        });
        table.push(vec![
            "fock_bracket".into(),
            fmt_rational(&r.mu),
            r.m.to_string(),
            r.n.to_string(),
            r.checked.to_string(),
            r.ok().to_string(),
        ]);
        checks.push(json!({
            "check": "fock_bracket", "m": r.m, "n": r.n, "cutoff": r.cutoff,
            "mu": q(&r.mu), "ok": r.ok(), "counterexample": counterexample,
        }));
    }
    // <X f, g> = <f, X^dagger g> for a_n and L_n with |n| <= mode_max
    let top = cutoff as i64 - mode_max;
    for mu in mus {
        let mut failure = None;
        let mut checked = 0usize;
        for n in -mode_max..=mode_max {
            for w in 0..=top.max(0) {
                if w - n < 0 || w - n > cutoff as i64 {
                    continue;
                }
                for a in monomials_of_weight(w as u32) {
                    let f = FockPoly::monomial(a);
                    for b in monomials_of_weight((w - n) as u32) {
                        let g = FockPoly::monomial(b);
                        checked += 1;
                        let heis = fock_inner(&heis_act(n, &f, mu), &g) == fock_inner(&f, &heis_act(-n, &g, mu));
                        let vir = fock_inner(&fock_l(n, &f, mu), &g) == fock_inner(&f, &fock_l(-n, &g, mu));
                        if (!heis || !vir) && failure.is_none() {
                            failure = Some(json!({"n": n, "f": f.to_string(), "g": g.to_string()}));
                        }
                    }
                }
            }
        }
        ok &= failure.is_none();
        table.push(vec![
            "fock_adjoint".into(),
            fmt_rational(mu),
            format!("{}", -mode_max),
            format!("{mode_max}"),
            checked.to_string(),
            failure.is_none().to_string(),
        ]);
        checks.push(json!({
            "check": "fock_adjoint", "mode_max": mode_max, "cutoff": cutoff, "mu": q(mu),
            "ok": failure.is_none(), "counterexample": failure,
        }));
    }
    Ok(Outcome { ok, json: json!({"ok": ok, "checks": checks}), table })
}

fn delta_check(window: i64, guard_band: i64, f: &str) -> Result<Outcome> {
    guard("window", window.unsigned_abs() as usize / 2)?;
    let f = parse_laurent(f)?;
    let report = delta_identity_suite(window, guard_band, &f)?;
    let mut table = vec![["identity", "compared", "ok"].map(String::from).to_vec()];
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            table.push(vec![c.name.clone(), c.compared.to_string(), c.ok().to_string()]);
            json!({"identity": c.name, "compared": c.compared, "ok": c.ok(), "failure": c.failure})
        })
        .collect();
    let f_doc: serde_json::Map<String, Value> = f.iter().map(|(k, v)| (k.to_string(), q(v))).collect();
    let doc = json!({"window": window, "guard": guard_band, "f": f_doc, "ok": report.ok(), "checks": checks});
    Ok(Outcome { ok: report.ok(), json: doc, table })
}

fn ope(args: &OpeArgs) -> Result<Outcome> {
    guard("cutoff", args.voa.cutoff)?;
    let (a, b) = (parse_state(&args.a)?, parse_state(&args.b)?);
    let voa = build_voa(args.voa.c.clone(), args.voa.cutoff)?;
    for s in [&a, &b] {
        if s.weight() as usize > voa.cutoff() {
            return Err(Error::Parse(format!("state {s} lies above the cutoff")));
        }
    }
    let (fa, fb) = (voa.basis_field(&a), voa.basis_field(&b));
    let n_max = (a.weight() + b.weight()) as usize + 1;
    let pair = [name_state(&VoaState::basis(a.clone())), name_state(&VoaState::basis(b.clone()))];
    let mut doc = json!({"pair": pair, "c": poly(voa.central_charge()), "cutoff": voa.cutoff()});
    let mut table = vec![vec!["j".to_string(), "field".to_string()]];
    let Some(report) = locality_order(&fa, &fb, n_max) else {
        doc["locality_order"] = Value::Null;
        doc["ok"] = json!(false);
        return Ok(Outcome { ok: false, json: doc, table });
    };
    let mut ok = true;
    let coeffs: Vec<Value> = report
        .products
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let name = voa.name_field(f).unwrap_or_else(|e| {
                ok = false;
                format!("? ({e})")
            });
            table.push(vec![j.to_string(), name.clone()]);
            json!({"j": j, "field": name})
        })
        .collect();
    doc["locality_order"] = json!(report.order);
    doc["coeffs"] = Value::Array(coeffs);
    doc["ok"] = json!(ok);
    Ok(Outcome { ok, json: doc, table })
}

fn voa_verify(args: &VoaArgs, borcherds_level: usize, parallel: usize) -> Result<Outcome> {
    guard("cutoff", args.cutoff)?;
    let voa = build_voa(args.c.clone(), args.cutoff)?;
    let reports = pool(parallel)?.install(|| verify_all(&voa, borcherds_level.min(args.cutoff)));
    let ok = reports.iter().all(|r| r.ok());
    let mut table = vec![["axiom", "cutoff", "checked", "ok"].map(String::from).to_vec()];
    let axioms: Vec<Value> = reports
        .iter()
        .map(|r| {
            table.push(vec![r.axiom.into(), r.cutoff.to_string(), r.checked.to_string(), r.ok().to_string()]);
            json!({"axiom": r.axiom, "cutoff": r.cutoff, "ok": r.ok(), "checked": r.checked, "failures": r.failures})
        })
        .collect();
    let doc = json!({"c": poly(voa.central_charge()), "cutoff": args.cutoff, "ok": ok, "axioms": axioms});
    Ok(Outcome { ok, json: doc, table })
}

fn cocycle(bound: i64) -> Result<Outcome> {
    if bound < 3 {
        return Err(Error::Parse(format!("bound {bound} must be at least 3")));
    }
    let ok = cocycle_check(bound);
    let square = first_failure(|n| int(n * n), bound);
    let doc = json!({"bound": bound, "ok": ok, "n_squared_first_failure": square});
    let table = vec![
        vec!["bound".into(), "ok".into(), "n_squared_first_failure".into()],
        vec![bound.to_string(), ok.to_string(), square.map(|n| n.to_string()).unwrap_or_default()],
    ];
    Ok(Outcome { ok, json: doc, table })
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::KacDet(args) => kac_det(args),
        Command::Gram(args) => gram(args),
        Command::UnitarityScan { c_list, h_list, level_max } => {
            unitarity_scan(c_list, h_list, *level_max, cli.parallel)
        }
        Command::DiscreteSeries { m, extended_range } => Ok(discrete(*m, *extended_range)),
        Command::Singular { c, h, level } => singular(c, h, *level),
        Command::QuotientDims { c, h, level_max } => quotient_dims(c, h.as_ref(), *level_max),
        Command::FockVerify { cutoff, mu, mode_max } => fock_verify(*cutoff, mu, *mode_max, cli.parallel),
        Command::DeltaCheck { window, guard, f } => delta_check(*window, *guard, f),
        Command::Ope(args) => ope(args),
        Command::VoaVerify { voa, borcherds_level } => voa_verify(voa, *borcherds_level, cli.parallel),
        Command::Cocycle { bound } => cocycle(*bound),
    }
}

/// Renders an outcome in the requested format.
pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => outcome.json.to_string(),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            for row in &outcome.table {
                w.write_record(row).expect("writing to memory");
            }
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
        }
        Format::Pretty => {
            let cols = outcome.table.iter().map(Vec::len).max().unwrap_or(0);
            let widths: Vec<usize> = (0..cols)
                .map(|i| outcome.table.iter().filter_map(|r| r.get(i)).map(String::len).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for row in &outcome.table {
                let cells: Vec<String> =
                    row.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = widths[i])).collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
            out.push_str(if outcome.ok { "ok\n" } else { "FAILED\n" });
            out
        }
    }
}

/// Parses `args`, runs the command and prints the result. Returns the exit
/// code: 0 when every check passed, 1 when a check failed, 2 for usage or
/// configuration errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let text = render(&outcome, cli.format);
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{}", text.trim_end()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("virasoro").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn gram_level_zero() {
        let out = run_args(&["gram", "--level", "0"]).unwrap();
        assert_eq!(out.json["gram"], json!([["1"]]));
    }

    #[test]
    fn kac_det_level_two() {
        let out = run_args(&["kac-det", "--level", "2", "--symbolic"]).unwrap();
        assert!(out.ok);
        assert_eq!(out.json["det"], json!("32*h^3 + 4*c*h^2 - 20*h^2 + 2*c*h"));
        assert_eq!(out.json["K"], json!("32"));
        let at = run_args(&["kac-det", "--level", "2", "--c", "2", "--h", "1"]).unwrap();
        assert_eq!(at.json["det"], json!("24"));
    }

    #[test]
    fn discrete_series_m1() {
        let out = run_args(&["discrete-series", "--m", "1"]).unwrap();
        assert_eq!(out.json["c"], json!("1/2"));
        assert_eq!(out.json["h"], json!(["0", "1/16", "1/16"]));
    }

    #[test]
    fn level_guard_is_a_config_error() {
        assert!(matches!(run_args(&["gram", "--level", "13"]), Err(Error::Parse(_))));
        assert_eq!(main_with_args(["virasoro", "gram", "--level", "13"]), 2);
        assert_eq!(main_with_args(["virasoro", "gram", "--level", "x"]), 2);
        assert_eq!(main_with_args(["virasoro", "singular", "--c", "1/0", "--h", "0", "--level", "1"]), 2);
    }

    #[test]
    fn json_round_trips() {
        let out = run_args(&["singular", "--c", "1", "--h", "1/4", "--level", "2"]).unwrap();
        let text = out.json.to_string();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_string(), text);
        assert_eq!(out.json["nullity"], json!(1));
    }

    #[test]
    fn csv_and_pretty() {
        let out = run_args(&["quotient-dims", "--c", "1/2", "--level-max", "3"]).unwrap();
        assert_eq!(render(&out, Format::Csv), "level,dim\n0,1\n1,0\n2,1\n3,1\n");
        assert!(render(&out, Format::Pretty).ends_with("ok\n"));
    }

    #[test]
    fn laurent_and_state_parsing() {
        let f = parse_laurent("2:1, -1:1/2, 2:-1").unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(parse_state("2,3").unwrap().parts(), &[3, 2]);
        assert!(parse_state("1").is_err());
        assert_eq!(parse_state("").unwrap(), Partition::empty());
    }
}
