use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::exact::{binomial, int, PolyMatrix, Rational, ScalarPoly};
use crate::formal::{coefficient_prefix, nth_product, GradedOperator, ModeField};
use crate::verma::{Partition, VermaModule, VermaVector};
use crate::{Error, Result};

/// A state of the vacuum module, in the basis of partitions with all parts
/// at least 2.
pub type VoaState = VermaVector;

/// The Virasoro vertex operator algebra `M(c, 0) / <L_{-1}|0>>` truncated at
/// level `cutoff`, with `L_n` for `|n| <= cutoff` stored as graded blocks.
pub struct VoaModule {
    engine: VermaModule,
    cutoff: usize,
    basis: Vec<Vec<Partition>>,
    dims: Arc<Vec<usize>>,
    virasoro: BTreeMap<i64, GradedOperator>,
    fields: Mutex<HashMap<Partition, Arc<ModeField>>>,
    oracle: Mutex<HashMap<(Partition, i64, Partition), VoaState>>,
}

/// Builds the truncated vacuum VOA. `c` may be symbolic.
pub fn build_voa(central_charge: ScalarPoly, cutoff: usize) -> Result<VoaModule> {
    if cutoff < 2 {
        return Err(Error::WindowExhausted(format!("cutoff {cutoff} is below the conformal vector")));
    }
    let engine = VermaModule::vacuum(central_charge);
    let basis: Vec<Vec<Partition>> = (0..=cutoff as u32).map(|l| engine.basis(l)).collect();
    let dims = Arc::new(basis.iter().map(Vec::len).collect::<Vec<_>>());
    let lambda = cutoff as i64;
    let virasoro = (-lambda..=lambda)
        .map(|n| {
            let op = GradedOperator::from_fn(-n, dims.clone(), |level| {
                let target = &basis[(level as i64 - n) as usize];
                let cols: Vec<Vec<ScalarPoly>> = basis[level]
                    .iter()
                    .map(|p| engine.act_basis(n as i32, p).coordinates(target))
                    .collect();
                Some(columns_to_matrix(target.len(), &cols))
            });
            (n, op)
        })
        .collect();
    Ok(VoaModule {
        engine,
        cutoff,
        basis,
        dims,
        virasoro,
        fields: Mutex::new(HashMap::new()),
        oracle: Mutex::new(HashMap::new()),
    })
}

fn columns_to_matrix(rows: usize, cols: &[Vec<ScalarPoly>]) -> PolyMatrix {
    PolyMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
}

/// Coarse classification of a state under `L_0`, `L_1`, `L_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateClass {
    /// `L_n a = 0` for all `n >= 1`, `L_0 a = h a`.
    Primary(u32),
    /// `L_1 a = 0`, `L_0 a = h a`, but some `L_n a != 0`.
    Quasiprimary(u32),
    Neither,
    /// Zero or of mixed level.
    NotHomogeneous,
}

impl VoaModule {
    pub fn central_charge(&self) -> &ScalarPoly {
        self.engine.central_charge()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// The rewriting engine behind the `L_n` blocks.
    pub fn engine(&self) -> &VermaModule {
        &self.engine
    }

    pub fn dims(&self) -> &Arc<Vec<usize>> {
        &self.dims
    }

    pub fn basis(&self, level: usize) -> &[Partition] {
        &self.basis[level]
    }

    /// Every basis partition up to `max_level`, by level.
    pub fn basis_up_to(&self, max_level: usize) -> Vec<Partition> {
        self.basis[..=max_level.min(self.cutoff)].iter().flatten().cloned().collect()
    }

    pub fn vacuum(&self) -> VoaState {
        VoaState::vacuum()
    }

    /// `nu = L_{-2}|0>`.
    pub fn conformal_vector(&self) -> VoaState {
        VoaState::basis(Partition::new(vec![2]))
    }

    /// `L_n` as a graded operator; zero or unknown outside `|n| <= cutoff`.
    pub fn virasoro_mode(&self, n: i64) -> GradedOperator {
        match self.virasoro.get(&n) {
            Some(op) => op.clone(),
            None if n > 0 => GradedOperator::zero(-n, self.dims.clone()),
            None => GradedOperator::undefined(-n, self.dims.clone()),
        }
    }

    /// `L_n a` by direct rewriting.
    pub fn act(&self, n: i64, a: &VoaState) -> VoaState {
        self.engine.act(n as i32, a)
    }

    /// Coordinates of a homogeneous state in the basis of its level.
    pub fn coordinates(&self, a: &VoaState) -> Option<(usize, Vec<ScalarPoly>)> {
        let level = a.weight()? as usize;
        if level > self.cutoff {
            return None;
        }
        Some((level, a.coordinates(&self.basis[level])))
    }

    pub fn state(&self, level: usize, coords: &[ScalarPoly]) -> VoaState {
        VoaState::from_coordinates(&self.basis[level], coords)
    }

    /// `Y(nu, z) = sum L_n z^{-n-2}`, i.e. `nu_(n) = L_{n-1}`.
    pub fn virasoro_field(&self) -> Arc<ModeField> {
        self.basis_field(&Partition::new(vec![2]))
    }

    /// `Y(v_{n1 ... nk}, z) = Y(nu, z)_(1 - n1) Y(v_{n2 ... nk}, z)`, with
    /// `Y(|0>, z) = id` and `Y(nu, z)` read off the stored `L_n`.
    pub fn basis_field(&self, p: &Partition) -> Arc<ModeField> {
        if let Some(f) = self.fields.lock().expect("field cache").get(p) {
            return f.clone();
        }
        let field = if p.is_empty() {
            ModeField::identity(self.dims.clone())
        } else if p.parts() == [2] {
            ModeField::from_fn(2, self.dims.clone(), |n| self.virasoro_mode(n - 1))
        } else {
            let first = p.first().expect("nonempty") as i64;
            let rest = self.basis_field(&p.tail());
            nth_product(&self.virasoro_field(), &rest, 1 - first)
        };
        let field = Arc::new(field);
        self.fields.lock().expect("field cache").insert(p.clone(), field.clone());
        field
    }

    /// `Y(a, z)` for a homogeneous state of level at most the cutoff.
    pub fn state_field(&self, a: &VoaState) -> Result<ModeField> {
        let level = match a.weight() {
            Some(l) if (l as usize) <= self.cutoff => l as i64,
            Some(l) => return Err(Error::WindowExhausted(format!("state of level {l}"))),
            None if a.is_zero() => return Ok(ModeField::zero(0, self.dims.clone())),
            None => return Err(Error::WindowExhausted("state is not homogeneous".into())),
        };
        let mut acc = ModeField::zero(level, self.dims.clone());
        for (p, q) in a.terms() {
            acc = acc.add(&self.basis_field(p).scale(q));
        }
        Ok(acc)
    }

    /// `a_(n) b` read off the block of `Y(a, z)`; `None` when unknown.
    pub fn field_mode_apply(&self, a: &VoaState, n: i64, b: &VoaState) -> Option<VoaState> {
        if b.is_zero() || a.is_zero() {
            return Some(VoaState::zero());
        }
        let field = self.state_field(a).ok()?;
        let (level, coords) = self.coordinates(b)?;
        let target = level as i64 + field.shift_of(n);
        if target < 0 {
            return Some(VoaState::zero());
        }
        let image = field.mode(n).apply(level, &coords)?;
        Some(self.state(target as usize, &image))
    }

    /// `a_(n) b` computed on states without any field machinery, from
    /// `a_(n)|0> = L_{-1}^k a / k!` for `n = -k-1` (zero for `n >= 0`) and
    /// the commutator with `L_{-m} = nu_(1-m)`:
    ///
    /// `a_(n) L_{-m} b = L_{-m} a_(n) b - sum_j (1-m choose j) (L_{j-1} a)_(n+1-m-j) b`,
    ///
    /// where the `j = 0` term uses `(L_{-1} a)_(p) = -p a_(p-1)`.
    pub fn mode_apply(&self, a: &VoaState, n: i64, b: &VoaState) -> VoaState {
        let mut out = VoaState::zero();
        for (pa, qa) in a.terms() {
            for (pb, qb) in b.terms() {
                out.add_scaled(&self.mode_apply_basis(pa, n, pb), &(qa * qb));
            }
        }
        out
    }

    fn mode_apply_basis(&self, a: &Partition, n: i64, b: &Partition) -> VoaState {
        let key = (a.clone(), n, b.clone());
        if let Some(v) = self.oracle.lock().expect("oracle cache").get(&key) {
            return v.clone();
        }
        let va = VoaState::basis(a.clone());
        let result = if b.is_empty() {
            if n >= 0 {
                VoaState::zero()
            } else {
                let k = (-n - 1) as u32;
                let mut v = va;
                let mut fact = int(1);
                for i in 1..=k {
                    v = self.act(-1, &v);
                    fact *= int(i as i64);
                }
                v.scale(&ScalarPoly::constant(int(1) / fact))
            }
        } else {
            let m = b.first().expect("nonempty") as i64;
            let rest = VoaState::basis(b.tail());
            let mut out = self.act(-m, &self.mode_apply(&va, n, &rest));
            let p = 1 - m + n;
            // j = 0: (L_{-1} a)_(p) = -p a_(p-1)
            let translated = self.mode_apply(&va, p - 1, &rest).scale(&ScalarPoly::from_int(-p));
            out.add_scaled(&translated, &ScalarPoly::from_int(-1));
            for j in 1..=(a.weight() as i64 + 1) {
                let la = self.act(j - 1, &va);
                if la.is_zero() {
                    continue;
                }
                let coeff = binomial(1 - m, j as u32);
                if coeff == int(0) {
                    continue;
                }
                let term = self.mode_apply(&la, p - j, &rest);
                out.add_scaled(&term, &ScalarPoly::constant(-coeff));
            }
            out
        };
        self.oracle.lock().expect("oracle cache").insert(key, result.clone());
        result
    }

    /// Compares every known block of `Y(v_p, z)` with [`Self::mode_apply`]
    /// column by column. Returns the number of columns compared.
    pub fn field_matches_oracle(&self, p: &Partition) -> std::result::Result<usize, String> {
        let field = self.basis_field(p);
        let a = VoaState::basis(p.clone());
        let mut compared = 0;
        for n in field.mode_range() {
            let op = field.mode(n);
            for level in 0..=self.cutoff {
                let target = level as i64 + op.shift();
                let Some(block) = op.block(level) else { continue };
                for (col, b) in self.basis[level].iter().enumerate() {
                    let expected = self.mode_apply(&a, n, &VoaState::basis(b.clone()));
                    let got = if target < 0 {
                        VoaState::zero()
                    } else {
                        let coords: Vec<ScalarPoly> =
                            (0..block.rows()).map(|r| block[(r, col)].clone()).collect();
                        self.state(target as usize, &coords)
                    };
                    if got != expected {
                        return Err(format!("{p}_({n}) {b}: field gives {got}, oracle gives {expected}"));
                    }
                    compared += 1;
                }
            }
        }
        Ok(compared)
    }

    /// Primary if `L_1 a = L_2 a = 0` (the higher `L_n` are generated by these
    /// two), quasiprimary if only `L_1 a = 0`.
    pub fn classify_state(&self, a: &VoaState) -> StateClass {
        let Some(level) = a.weight() else {
            return StateClass::NotHomogeneous;
        };
        if !self.act(1, a).is_zero() {
            return StateClass::Neither;
        }
        if self.act(2, a).is_zero() {
            StateClass::Primary(level)
        } else {
            StateClass::Quasiprimary(level)
        }
    }

    /// Writes `f` as a combination of `Y(v_p, z)` via `f_(-1)|0>`, checks the
    /// combination modewise, and renders it as `dL`, `2L`, `(1/2*c)id`, ...
    pub fn name_field(&self, f: &ModeField) -> Result<String> {
        let weight = f.weight();
        if f.defined_blocks() == 0 {
            return Err(self.unnamed(weight));
        }
        if weight as usize > self.cutoff {
            return Err(self.unnamed(weight));
        }
        if weight < 0 {
            return if f.is_zero() { Ok("0".into()) } else { Err(self.unnamed(weight)) };
        }
        let column = f
            .mode(-1)
            .apply(0, &[ScalarPoly::one()])
            .ok_or_else(|| self.unnamed(weight))?;
        let state = self.state(weight as usize, &column);
        let rebuilt = self.state_field(&state)?;
        let cmp = f.compare(&rebuilt);
        if cmp.mismatch.is_some() || (cmp.compared == 0 && !(f.is_zero() && state.is_zero())) {
            return Err(Error::WindowExhausted(format!(
                "field of weight {weight} is not Y({state}) on the window"
            )));
        }
        Ok(name_state(&state))
    }

    fn unnamed(&self, weight: i64) -> Error {
        Error::WindowExhausted(format!("cannot identify a field of weight {weight}"))
    }
}

/// Field name of `Y(a, z)`.
pub fn name_state(a: &VoaState) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = a
        .terms()
        .map(|(p, q)| {
            let parts = p.parts();
            let (scale, name) = match parts {
                [] => (q.clone(), "id".to_string()),
                [2] => (q.clone(), "L".to_string()),
                [n] => {
                    // v_n = D^(n-2) L |0> = d^{n-2} L / (n-2)!
                    let k = *n as i64 - 2;
                    let fact = (1..=k).fold(int(1), |acc, i| acc * int(i));
                    let name = if k == 1 { "dL".to_string() } else { format!("d^{k}L") };
                    (q.scale(&(int(1) / fact)), name)
                }
                _ => (q.clone(), format!("Y({p})")),
            };
            format!("{}{}", coefficient_prefix(&scale), name)
        })
        .collect();
    terms.join(" + ")
}

/// `dim L(c0, 0)_N` for `N <= cutoff`: ranks of the Gram matrices of the
/// vacuum module at `c = c0`.
pub fn quotient_voa_dims(c0: &Rational, cutoff: usize) -> Vec<usize> {
    let engine = VermaModule::vacuum(ScalarPoly::constant(c0.clone()));
    (0..=cutoff as u32)
        .map(|l| engine.gram(l).eval(c0, &int(0)).rank())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn voa(cutoff: usize) -> VoaModule {
        build_voa(ScalarPoly::c(), cutoff).unwrap()
    }

    #[test]
    fn dims_and_conformal_vector() {
        let v = voa(6);
        assert_eq!(**v.dims(), vec![1, 0, 1, 1, 2, 2, 4]);
        let nu = v.conformal_vector();
        assert!(v.act(1, &nu).is_zero());
        assert_eq!(v.act(0, &nu), nu.scale(&ScalarPoly::from_int(2)));
        assert_eq!(v.act(2, &nu), v.vacuum().scale(&ScalarPoly::c().scale(&rat(1, 2))));
        assert!(build_voa(ScalarPoly::c(), 1).is_err());
    }

    #[test]
    fn virasoro_field_modes() {
        let v = voa(5);
        let l = v.virasoro_field();
        for n in -4..=4i64 {
            assert!(l.mode(n + 1).compare(&v.virasoro_mode(n)).is_ok());
        }
        assert!(l.is_fully_defined());
    }

    #[test]
    fn oracle_basics() {
        let v = voa(6);
        let nu = v.conformal_vector();
        let vac = v.vacuum();
        // nu_(-1)|0> = nu, nu_(n)|0> = 0 for n >= 0
        assert_eq!(v.mode_apply(&nu, -1, &vac), nu);
        assert!(v.mode_apply(&nu, 0, &vac).is_zero());
        // nu_(n) = L_{n-1} on states
        for b in v.basis_up_to(4) {
            let b = VoaState::basis(b);
            for n in -3..=4 {
                assert_eq!(v.mode_apply(&nu, n, &b), v.act(n - 1, &b), "n={n} b={b}");
            }
        }
        // |0>_(n) = delta_{n,-1}
        let v22 = VoaState::basis(p(&[2, 2]));
        assert_eq!(v.mode_apply(&vac, -1, &v22), v22);
        assert!(v.mode_apply(&vac, -2, &v22).is_zero());
    }

    #[test]
    fn low_fields_match_oracle() {
        let v = voa(5);
        for part in v.basis_up_to(3) {
            let n = v.field_matches_oracle(&part).unwrap();
            assert!(n > 0);
        }
    }

    #[test]
    fn normal_ordered_square() {
        let v = voa(6);
        let l = v.virasoro_field();
        let y22 = v.basis_field(&p(&[2, 2]));
        assert!(crate::formal::normal_ordered(&l, &l).compare(&y22).agrees());
        // :LL:_(-1)|0> = v_{2,2}
        assert_eq!(
            v.field_mode_apply(&VoaState::basis(p(&[2, 2])), -1, &v.vacuum()),
            Some(VoaState::basis(p(&[2, 2])))
        );
    }

    #[test]
    fn classification() {
        let v = voa(4);
        assert_eq!(v.classify_state(&v.vacuum()), StateClass::Primary(0));
        assert_eq!(v.classify_state(&v.conformal_vector()), StateClass::Quasiprimary(2));
        let mixed = v.conformal_vector().add(&VoaState::basis(p(&[2, 2])));
        assert_eq!(v.classify_state(&mixed), StateClass::NotHomogeneous);
        assert_eq!(v.classify_state(&VoaState::zero()), StateClass::NotHomogeneous);
        assert_eq!(v.classify_state(&VoaState::basis(p(&[3]))), StateClass::Neither);
        let v0 = build_voa(ScalarPoly::zero(), 4).unwrap();
        assert_eq!(v0.classify_state(&v0.conformal_vector()), StateClass::Primary(2));
    }

    #[test]
    fn naming() {
        let v = voa(6);
        let l = v.virasoro_field();
        assert_eq!(v.name_field(&l).unwrap(), "L");
        assert_eq!(v.name_field(&l.derivative()).unwrap(), "dL");
        assert_eq!(v.name_field(&l.scale(&ScalarPoly::from_int(2))).unwrap(), "2L");
        let id = ModeField::identity(v.dims().clone());
        assert_eq!(v.name_field(&id.scale(&ScalarPoly::c().scale(&rat(1, 2)))).unwrap(), "(1/2*c)id");
        assert_eq!(v.name_field(&ModeField::zero(1, v.dims().clone())).unwrap(), "0");
        assert_eq!(v.name_field(&l.derivative().derivative()).unwrap(), "d^2L");
        assert_eq!(name_state(&VoaState::basis(p(&[2, 2]))), "Y(v_{2,2})");
    }

    #[test]
    fn quotient_dims() {
        assert_eq!(quotient_voa_dims(&int(0), 6), vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(quotient_voa_dims(&rat(1, 2), 6), vec![1, 0, 1, 1, 2, 2, 3]);
        assert_eq!(quotient_voa_dims(&rat(7, 3), 6), vec![1, 0, 1, 1, 2, 2, 4]);
    }
}
