//! One PASS/FAIL line per acceptance criterion, each with its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use serde_json::Value;
use virasoro::cli::{run, Cli};
use virasoro::exact::{int, rat, Definiteness, Monomial, ScalarPoly};
use virasoro::fock::{
    fock_bracket_check, fock_inner, fock_l, heis_act, monomials_of_weight, FockMonomial, FockPoly,
};
use virasoro::formal::{delta_identity_suite, locality_order, ope_coeffs, Laurent, ModeField};
use virasoro::verma::{
    discrete_series, kac_det_direct, kac_det_formula, partition_count, phi_pq, singular_vectors,
    unitarity_classify, Partition, VermaModule,
};
use virasoro::voa::{
    borcherds_check, build_voa, invariant_form_check, sl2_check, translation_axiom_check, vacuum_axiom_check,
};

type Outcome = Result<String, String>;

fn cli(args: &[&str]) -> Result<Value, String> {
    let cli = Cli::try_parse_from(std::iter::once("virasoro").chain(args.iter().copied())).map_err(|e| e.to_string())?;
    run(&cli).map(|o| o.json).map_err(|e| e.to_string())
}

fn poly_at(v: &Value) -> Result<ScalarPoly, String> {
    v.as_str().ok_or("expected a string")?.parse().map_err(|e| format!("{e}"))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let (c, h) = (ScalarPoly::c(), ScalarPoly::h());
    let k = |n: i64| ScalarPoly::from_int(n);
    let expected = [
        [&(&k(4) * &h) + &c.scale(&rat(1, 2)), &k(6) * &h],
        [&k(6) * &h, &(&k(8) * &(&h * &h)) + &(&k(4) * &h)],
    ];
    let gram = cli(&["gram", "--level", "2", "--symbolic"])?;
    for (i, row) in expected.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            let got = poly_at(&gram["gram"][i][j])?;
            ensure(&got == want, format!("A2[{i}][{j}] = {got}, want {want}"))?;
        }
    }
    // 2h(16h^2 - 10h + 2hc + c)
    let inner = &(&(&k(16) * &(&h * &h)) - &(&k(10) * &h)) + &(&(&k(2) * &(&h * &c)) + &c);
    let want = &(&k(2) * &h) * &inner;
    let det = poly_at(&cli(&["kac-det", "--level", "2", "--symbolic"])?["det"])?;
    ensure(det == want, format!("det = {det}"))?;
    Ok(format!("det A2 = {det}"))
}

fn criterion_2() -> Outcome {
    let mut ks = Vec::new();
    for n in 1..=5u32 {
        let direct = kac_det_direct(n);
        let mut product = ScalarPoly::one();
        for p in 1..=n {
            for q in 1..=p {
                if p * q <= n {
                    let mult = partition_count(n - p * q) as u32;
                    product = &product * &phi_pq(p, q).map_err(|e| e.to_string())?.pow(mult);
                }
            }
        }
        let (quot, rem) = direct.div_rem(&product);
        ensure(rem.is_zero(), format!("level {n}: nonzero remainder {rem}"))?;
        let k = quot.as_constant().ok_or(format!("level {n}: quotient {quot} not constant"))?;
        ensure(k > int(0), format!("level {n}: K = {k}"))?;
        let f = kac_det_formula(n).map_err(|e| e.to_string())?;
        ensure(f.constant == k, format!("level {n}: formula K {} vs {k}", f.constant))?;
        ks.push(k.to_string());
    }
    Ok(format!("K_1..K_5 = {}", ks.join(", ")))
}

fn criterion_3() -> Outcome {
    let cs = [rat(3, 2), int(2), int(3)];
    let hs = [rat(1, 2), int(1), int(2)];
    let mut blocks = 0;
    for c in &cs {
        for h in &hs {
            for v in unitarity_classify(c, h, 6) {
                ensure(
                    v.definiteness == Definiteness::PositiveDefinite,
                    format!("c={c} h={h} level {}: {}", v.level, v.definiteness),
                )?;
                blocks += 1;
            }
        }
    }
    for v in unitarity_classify(&int(1), &int(0), 4) {
        ensure(v.definiteness != Definiteness::Indefinite, format!("c=1 h=0 level {} indefinite", v.level))?;
        blocks += 1;
    }
    Ok(format!("{blocks} Gram blocks classified"))
}

fn criterion_4() -> Outcome {
    let mut zeros = 0;
    for m in [1, 2] {
        let s = discrete_series(m);
        for pt in s.points.iter().filter(|pt| pt.p * pt.q <= 4) {
            let det = kac_det_direct(pt.p * pt.q).eval(&s.central_charge, &pt.h);
            ensure(det == int(0), format!("m={m} (p,q)=({},{}): det = {det}", pt.p, pt.q))?;
            zeros += 1;
        }
    }
    Ok(format!("{zeros} determinants vanish"))
}

fn criterion_5() -> Outcome {
    let (c, h) = (int(1), rat(1, 4));
    let kernel = singular_vectors(&c, &h, 2);
    ensure(kernel.len() == 1, format!("kernel dimension {}", kernel.len()))?;
    let v = &kernel[0];
    let (v2, v11) = (Partition::new(vec![2]), Partition::new(vec![1, 1]));
    let lead = v.coeff(&v2);
    ensure(!lead.is_zero(), "no v_2 component")?;
    let normalized = v.scale(&ScalarPoly::constant(int(1) / lead.as_constant().unwrap()));
    ensure(
        normalized.coeff(&v2) == ScalarPoly::one() && normalized.coeff(&v11) == ScalarPoly::from_int(-1),
        format!("normalized vector {normalized}"),
    )?;
    let module = VermaModule::at(&c, &h);
    ensure(module.act(1, v).is_zero() && module.act(2, v).is_zero(), "not annihilated by L1, L2")?;
    let json = cli(&["singular", "--c", "1", "--h", "1/4", "--level", "2"])?;
    ensure(json["ok"] == Value::Bool(true), "CLI singular check failed")?;
    Ok(format!("kernel spanned by {normalized}"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for mu in [int(0), rat(1, 2), int(2)] {
        for m in -3..=3 {
            for n in -3..=3 {
                let r = fock_bracket_check(m, n, 6, &mu).map_err(|e| e.to_string())?;
                ensure(r.ok(), format!("mu={mu} [L_{m}, L_{n}]: {:?}", r.counterexample))?;
                checked += r.checked;
            }
        }
    }
    let x1sq = FockPoly::monomial(FockMonomial::var(1, 2));
    ensure(fock_inner(&x1sq, &x1sq) == int(2), "<x1^2, x1^2> != 2")?;
    let mu = rat(1, 2);
    let mut pairs = 0;
    for n in -5i64..=5 {
        for w in 0..=5i64 {
            if !(0..=5).contains(&(w - n)) {
                continue;
            }
            for a in monomials_of_weight(w as u32) {
                for b in monomials_of_weight((w - n) as u32) {
                    let (f, g) = (FockPoly::monomial(a.clone()), FockPoly::monomial(b));
                    ensure(
                        fock_inner(&heis_act(n, &f, &mu), &g) == fock_inner(&f, &heis_act(-n, &g, &mu))
                            && fock_inner(&fock_l(n, &f, &mu), &g) == fock_inner(&f, &fock_l(-n, &g, &mu)),
                        format!("adjointness fails for n={n}, {f}, {g}"),
                    )?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{checked} bracket evaluations, {pairs} adjoint pairs"))
}

fn criterion_7() -> Outcome {
    let f: Laurent = [(2, int(1))].into_iter().collect();
    let report = delta_identity_suite(8, 4, &f).map_err(|e| e.to_string())?;
    for c in &report.checks {
        ensure(c.ok(), format!("{}: {:?}", c.name, c.failure))?;
    }
    ensure(report.ok(), "suite failed")?;
    Ok(format!("{} identities", report.checks.len()))
}

fn criterion_8() -> Outcome {
    let voa = build_voa(ScalarPoly::c(), 6).map_err(|e| e.to_string())?;
    let l = voa.virasoro_field();
    let report = locality_order(&l, &l, 8).ok_or("L is not local")?;
    ensure(report.order == 4, format!("locality order {}", report.order))?;
    let coeffs = ope_coeffs(&l, &l, 4).map_err(|e| e.to_string())?;
    let dims = voa.dims().clone();
    let c_half = ScalarPoly::term(Monomial::new(1, 0), rat(1, 2));
    let expected = [
        l.derivative(),
        l.scale(&ScalarPoly::from_int(2)),
        ModeField::zero(1, dims.clone()),
        ModeField::identity(dims).scale(&c_half),
    ];
    let mut blocks = 0;
    for (j, (got, want)) in coeffs.iter().zip(&expected).enumerate() {
        let cmp = got.compare(want);
        ensure(cmp.agrees() && cmp.compared > 0, format!("L_({j})L: {cmp:?}"))?;
        blocks += cmp.compared;
    }
    let names: Vec<String> = coeffs.iter().map(|f| voa.name_field(f).unwrap_or_else(|e| e.to_string())).collect();
    Ok(format!("order 4, [{}], {blocks} blocks", names.join(", ")))
}

fn criterion_9() -> Outcome {
    let voa = build_voa(ScalarPoly::c(), 6).map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for r in [vacuum_axiom_check(&voa), translation_axiom_check(&voa), sl2_check(&voa), invariant_form_check(&voa)] {
        ensure(r.ok(), format!("{}: {:?}", r.axiom, r.failures))?;
        summary.push(format!("{} {}", r.axiom, r.checked));
    }
    let basis = voa.basis_up_to(3);
    let mut pairs = 0;
    let mut checked = 0;
    for a in &basis {
        for b in &basis {
            checked += borcherds_check(&voa, a, b).map_err(|e| format!("borcherds ({a}, {b}): {e}"))?;
            pairs += 1;
        }
    }
    summary.push(format!("borcherds {pairs} pairs/{checked} blocks"));
    Ok(summary.join(", "))
}

fn criterion_10() -> Outcome {
    let voa = build_voa(ScalarPoly::c(), 6).map_err(|e| e.to_string())?;
    let mut states = 0;
    let mut compared = 0;
    for p in voa.basis_up_to(4) {
        compared += voa.field_matches_oracle(&p).map_err(|e| format!("state {p}: {e}"))?;
        states += 1;
    }
    Ok(format!("{states} states, {compared} coefficients"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("Gram fidelity at level 2", 1, criterion_1),
        ("Kac factorization N=1..5", 60, criterion_2),
        ("unitary region evidence", 120, criterion_3),
        ("determinant vanishing on the discrete series", 30, criterion_4),
        ("singular vector at (1, 1/4)", 1, criterion_5),
        ("Fock representation", 60, criterion_6),
        ("formal delta suite", 5, criterion_7),
        ("Virasoro OPE", 30, criterion_8),
        ("vertex axioms at cutoff 6", 120, criterion_9),
        ("field recipe vs rewriting oracle", 60, criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget}s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
