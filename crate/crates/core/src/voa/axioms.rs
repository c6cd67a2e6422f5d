use rayon::prelude::*;

use super::module::{VoaModule, VoaState};
use crate::exact::{binomial, ScalarPoly};
use crate::formal::{locality_order, GradedOperator, ModeField};
use crate::verma::Partition;

/// Verdict for one axiom family on a truncated VOA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub cutoff: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    fn new(axiom: &'static str, cutoff: usize) -> Self {
        AxiomReport { axiom, cutoff, checked: 0, failures: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    fn record(&mut self, r: Result<usize, String>) {
        match r {
            Ok(n) => self.checked += n,
            Err(e) => self.failures.push(e),
        }
    }

    fn merge(&mut self, other: AxiomReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

fn ops_agree(what: &str, lhs: &GradedOperator, rhs: &GradedOperator) -> Result<usize, String> {
    lhs.compare(rhs).map_err(|level| format!("{what}: blocks differ at level {level}"))
}

fn fields_agree(what: &str, lhs: &ModeField, rhs: &ModeField) -> Result<usize, String> {
    let cmp = lhs.compare(rhs);
    match cmp.mismatch {
        None => Ok(cmp.compared),
        Some((n, level)) => Err(format!("{what}: mode {n} differs at level {level}")),
    }
}

/// Keeps only the blocks with source level at most `max_level`.
fn restrict(op: &GradedOperator, max_level: usize) -> GradedOperator {
    GradedOperator::from_fn(op.shift(), op.dims().clone(), |l| {
        (l <= max_level).then(|| op.block(l).map(|b| b.into_owned())).flatten()
    })
}

/// `T|0> = 0`, `Y(|0>, z) = id` and `Y(a, z)|0>|_{z=0} = a` with no
/// singular part, for basis `a` up to level `cutoff - 2`.
pub fn vacuum_axiom_check(voa: &VoaModule) -> AxiomReport {
    let mut report = AxiomReport::new("V3", voa.cutoff());
    let vac = voa.vacuum();
    report.record(if voa.act(-1, &vac).is_zero() { Ok(1) } else { Err("T|0> != 0".into()) });

    let id = ModeField::identity(voa.dims().clone());
    report.record(fields_agree("Y(|0>)", &voa.basis_field(&Partition::empty()), &id));
    for b in voa.basis_up_to(voa.cutoff()) {
        let vb = VoaState::basis(b.clone());
        for n in -3..=2 {
            let expected = if n == -1 { vb.clone() } else { VoaState::zero() };
            let got = voa.mode_apply(&vac, n, &vb);
            report.record(if got == expected {
                Ok(1)
            } else {
                Err(format!("|0>_({n}) {b} = {got}"))
            });
        }
    }

    for a in voa.basis_up_to(voa.cutoff().saturating_sub(2)) {
        let va = VoaState::basis(a.clone());
        let field = voa.basis_field(&a);
        for n in -1..=field.weight() {
            let expected = if n == -1 { Some(va.clone()) } else { Some(VoaState::zero()) };
            let got = voa.field_mode_apply(&va, n, &vac);
            report.record(if got == expected {
                Ok(1)
            } else {
                Err(format!("{a}_({n})|0> = {got:?}"))
            });
        }
    }
    report
}

/// `[L_{-1}, a_(n)] = -n a_(n-1)` and `Y(L_{-1} a, z) = d Y(a, z)` for basis
/// `a` up to level `cutoff - 2`.
pub fn translation_axiom_check(voa: &VoaModule) -> AxiomReport {
    let mut report = AxiomReport::new("V1", voa.cutoff());
    let t = voa.virasoro_mode(-1);
    for a in voa.basis_up_to(voa.cutoff().saturating_sub(2)) {
        let field = voa.basis_field(&a);
        for n in field.mode_range() {
            let lhs = t.commutator(&field.mode(n));
            let rhs = field.mode(n - 1).scale(&ScalarPoly::from_int(-n));
            report.record(ops_agree(&format!("[T, {a}_({n})]"), &lhs, &rhs));
        }
        let ta = voa.act(-1, &VoaState::basis(a.clone()));
        match voa.state_field(&ta) {
            Ok(yta) => report.record(fields_agree(&format!("Y(T{a})"), &yta, &field.derivative())),
            Err(e) => report.failures.push(format!("Y(T{a}): {e}")),
        }
    }
    report
}

/// Every pair of basis fields up to level `cutoff - 3` is local, with order
/// at most `h_a + h_b + 1`.
pub fn locality_axiom_check(voa: &VoaModule) -> (AxiomReport, Vec<(Partition, Partition, usize)>) {
    let states = voa.basis_up_to(voa.cutoff().saturating_sub(3));
    let pairs: Vec<(Partition, Partition)> = states
        .iter()
        .flat_map(|a| states.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|(a, b)| {
            let (fa, fb) = (voa.basis_field(a), voa.basis_field(b));
            let n_max = (a.weight() + b.weight()) as usize + 1;
            (a.clone(), b.clone(), locality_order(&fa, &fb, n_max))
        })
        .collect();
    let mut report = AxiomReport::new("V2", voa.cutoff());
    let mut orders = Vec::new();
    for (a, b, r) in results {
        match r {
            Some(loc) => {
                report.checked += loc.compared;
                orders.push((a, b, loc.order));
            }
            None => report.failures.push(format!("Y({a}), Y({b}) not local on the window")),
        }
    }
    (report, orders)
}

/// `[a_(m), b_(n)] = sum_{j >= 0} (m choose j) (a_(j) b)_(m+n-j)` for all
/// stored `m`, `n`, with `a_(j) b` computed as a state and turned back into
/// a field.
pub fn borcherds_check(voa: &VoaModule, a: &Partition, b: &Partition) -> Result<usize, String> {
    let (va, vb) = (VoaState::basis(a.clone()), VoaState::basis(b.clone()));
    let (fa, fb) = (voa.basis_field(a), voa.basis_field(b));
    let top = (a.weight() + b.weight()) as i64;
    let mut products = Vec::new();
    for j in 0..top {
        let state = voa
            .field_mode_apply(&va, j, &vb)
            .ok_or_else(|| format!("{a}_({j}) {b} outside the window"))?;
        let field = if state.is_zero() {
            ModeField::zero(top - j - 1, voa.dims().clone())
        } else {
            voa.state_field(&state).map_err(|e| e.to_string())?
        };
        products.push(field);
    }
    let mut compared = 0;
    for m in fa.mode_range() {
        for n in fb.mode_range() {
            let lhs = fa.mode(m).commutator(&fb.mode(n));
            let mut rhs = GradedOperator::zero(lhs.shift(), voa.dims().clone());
            for (j, c) in products.iter().enumerate() {
                let coeff = ScalarPoly::constant(binomial(m, j as u32));
                rhs = rhs.add(&c.mode(m + n - j as i64).scale(&coeff));
            }
            compared += ops_agree(&format!("[{a}_({m}), {b}_({n})]"), &lhs, &rhs)?;
        }
    }
    Ok(compared)
}

/// [`borcherds_check`] over all basis pairs up to `max_level`.
pub fn borcherds_suite(voa: &VoaModule, max_level: usize) -> AxiomReport {
    let states = voa.basis_up_to(max_level);
    let pairs: Vec<(Partition, Partition)> = states
        .iter()
        .flat_map(|a| states.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let partial: Vec<AxiomReport> = pairs
        .par_iter()
        .map(|(a, b)| {
            let mut r = AxiomReport::new("borcherds", voa.cutoff());
            r.record(borcherds_check(voa, a, b));
            r
        })
        .collect();
    let mut report = AxiomReport::new("borcherds", voa.cutoff());
    for r in partial {
        report.merge(r);
    }
    report
}

/// `[H, T] = T`, `[H, T*] = -T*`, `[T*, T] = 2H` with `T = L_{-1}`,
/// `H = L_0`, `T* = L_1` on levels below the cutoff, and `H|0> = T*|0> =
/// T|0> = 0`.
pub fn sl2_check(voa: &VoaModule) -> AxiomReport {
    let mut report = AxiomReport::new("sl2", voa.cutoff());
    let top = voa.cutoff() - 1;
    let (t, h, ts) = (voa.virasoro_mode(-1), voa.virasoro_mode(0), voa.virasoro_mode(1));
    let two = ScalarPoly::from_int(2);
    let minus = ScalarPoly::from_int(-1);
    report.record(ops_agree("[H, T]", &restrict(&h.commutator(&t), top), &restrict(&t, top)));
    report.record(ops_agree("[H, T*]", &restrict(&h.commutator(&ts), top), &restrict(&ts.scale(&minus), top)));
    report.record(ops_agree("[T*, T]", &restrict(&ts.commutator(&t), top), &restrict(&h.scale(&two), top)));
    for (name, n) in [("H", 0), ("T*", 1), ("T", -1)] {
        let ok = voa.act(n, &voa.vacuum()).is_zero();
        report.record(if ok { Ok(1) } else { Err(format!("{name}|0> != 0")) });
    }
    report
}

/// `(L_n a, b) = (a, L_{-n} b)` for `|n| <= 3` on levels up to
/// `cutoff - 3`, orthogonality of distinct levels, and `(|0>, |0>) = 1`.
pub fn invariant_form_check(voa: &VoaModule) -> AxiomReport {
    let mut report = AxiomReport::new("invariant_form", voa.cutoff());
    let engine = voa.engine();
    let vac = voa.vacuum();
    report.record(if engine.form(&vac, &vac) == ScalarPoly::one() {
        Ok(1)
    } else {
        Err("(|0>, |0>) != 1".into())
    });
    let states = voa.basis_up_to(voa.cutoff().saturating_sub(3));
    for x in &states {
        for y in &states {
            let (vx, vy) = (VoaState::basis(x.clone()), VoaState::basis(y.clone()));
            if x.weight() != y.weight() && !engine.form(&vx, &vy).is_zero() {
                report.failures.push(format!("({x}, {y}) != 0 across levels"));
                continue;
            }
            report.checked += 1;
            for n in -3i64..=3 {
                if x.weight() as i64 - n != y.weight() as i64 {
                    continue;
                }
                let lhs = engine.form(&voa.act(n, &vx), &vy);
                let rhs = engine.form(&vx, &voa.act(-n, &vy));
                report.record(if lhs == rhs {
                    Ok(1)
                } else {
                    Err(format!("(L_{n} {x}, {y}) = {lhs} but ({x}, L_{} {y}) = {rhs}", -n))
                });
            }
        }
    }
    report
}

/// Every axiom family: V1, V2, V3, Borcherds on pairs up to level
/// `borcherds_level`, sl2 and the invariant form.
pub fn verify_all(voa: &VoaModule, borcherds_level: usize) -> Vec<AxiomReport> {
    vec![
        translation_axiom_check(voa),
        locality_axiom_check(voa).0,
        vacuum_axiom_check(voa),
        borcherds_suite(voa, borcherds_level),
        sl2_check(voa),
        invariant_form_check(voa),
    ]
}
