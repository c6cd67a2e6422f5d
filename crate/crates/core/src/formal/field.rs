use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::graded::GradedOperator;
use crate::exact::{binomial, int, ScalarPoly};
use crate::{Error, Result};

/// A field `a(z) = sum_n a_(n) z^{-n-1}` on a graded space truncated at
/// level `L`. `a_(n)` raises the level by `weight - n - 1`; only the modes
/// with `|n - (weight - 1)| <= L` can connect two in-window levels, and
/// exactly those are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ModeField {
    weight: i64,
    dims: Arc<Vec<usize>>,
    modes: BTreeMap<i64, GradedOperator>,
}

impl ModeField {
    /// Builds every stored mode from `f(n)`.
    pub fn from_fn(weight: i64, dims: Arc<Vec<usize>>, mut f: impl FnMut(i64) -> GradedOperator) -> Self {
        let cutoff = dims.len() as i64 - 1;
        let modes = (weight - 1 - cutoff..=weight - 1 + cutoff)
            .map(|n| {
                let op = f(n);
                assert_eq!(op.shift(), weight - n - 1, "mode {n} has the wrong shift");
                (n, op)
            })
            .collect();
        ModeField { weight, dims, modes }
    }

    pub fn zero(weight: i64, dims: Arc<Vec<usize>>) -> Self {
        let d = dims.clone();
        Self::from_fn(weight, dims, |n| GradedOperator::zero(weight - n - 1, d.clone()))
    }

    /// `Y(|0>, z) = id`: weight 0, `id_(-1) = 1`, every other mode zero.
    pub fn identity(dims: Arc<Vec<usize>>) -> Self {
        let d = dims.clone();
        Self::from_fn(0, dims, |n| {
            if n == -1 {
                GradedOperator::identity(d.clone())
            } else {
                GradedOperator::zero(-n - 1, d.clone())
            }
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn dims(&self) -> &Arc<Vec<usize>> {
        &self.dims
    }

    pub fn cutoff(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn shift_of(&self, n: i64) -> i64 {
        self.weight - n - 1
    }

    /// Indices of the stored modes.
    pub fn mode_range(&self) -> std::ops::RangeInclusive<i64> {
        let l = self.cutoff() as i64;
        self.weight - 1 - l..=self.weight - 1 + l
    }

    /// `a_(n)`. Modes that lower past level 0 everywhere are zero; modes
    /// that raise past the cutoff everywhere have no known block.
    pub fn mode(&self, n: i64) -> Cow<'_, GradedOperator> {
        match self.modes.get(&n) {
            Some(op) => Cow::Borrowed(op),
            None => Cow::Owned(GradedOperator::undefined(self.shift_of(n), self.dims.clone())),
        }
    }

    /// `true` when every stored mode is fully defined.
    pub fn is_fully_defined(&self) -> bool {
        self.modes.values().all(GradedOperator::is_fully_defined)
    }

    /// `true` when every known block of every mode vanishes.
    pub fn is_zero(&self) -> bool {
        self.modes.values().all(GradedOperator::is_zero)
    }

    pub fn scale(&self, s: &ScalarPoly) -> ModeField {
        ModeField {
            weight: self.weight,
            dims: self.dims.clone(),
            modes: self.modes.iter().map(|(n, op)| (*n, op.scale(s))).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> ModeField {
        ModeField {
            weight: self.weight,
            dims: self.dims.clone(),
            modes: self.modes.iter().map(|(n, op)| (*n, op.map(&f))).collect(),
        }
    }

    /// Sum of two fields of the same weight.
    pub fn add(&self, other: &ModeField) -> ModeField {
        assert_eq!(self.weight, other.weight, "adding fields of different weight");
        ModeField {
            weight: self.weight,
            dims: self.dims.clone(),
            modes: self.modes.iter().map(|(n, op)| (*n, op.add(&other.modes[n]))).collect(),
        }
    }

    pub fn sub(&self, other: &ModeField) -> ModeField {
        self.add(&other.scale(&ScalarPoly::from_int(-1)))
    }

    /// `(d a)_(n) = -n a_(n-1)`.
    pub fn derivative(&self) -> ModeField {
        ModeField::from_fn(self.weight + 1, self.dims.clone(), |n| {
            self.mode(n - 1).scale(&ScalarPoly::from_int(-n))
        })
    }

    /// `D^(k) a = d^k a / k!`.
    pub fn divided_derivative(&self, k: u32) -> ModeField {
        let mut out = self.clone();
        let mut fact = int(1);
        for i in 1..=k {
            out = out.derivative();
            fact *= int(i as i64);
        }
        out.scale(&ScalarPoly::constant(int(1) / fact))
    }

    /// Modewise comparison on blocks known on both sides.
    pub fn compare(&self, other: &ModeField) -> FieldComparison {
        let mut compared = 0;
        if self.weight != other.weight {
            let agree = self.is_zero() && other.is_zero();
            let first = *self.mode_range().start();
            return FieldComparison { compared: 0, mismatch: (!agree).then_some((first, 0)) };
        }
        for (n, op) in &self.modes {
            match op.compare(&other.modes[n]) {
                Ok(k) => compared += k,
                Err(level) => return FieldComparison { compared, mismatch: Some((*n, level)) },
            }
        }
        FieldComparison { compared, mismatch: None }
    }

    /// Number of known blocks over all stored modes.
    pub fn defined_blocks(&self) -> usize {
        self.modes.values().map(|op| op.defined_sources().count()).sum()
    }
}

impl fmt::Debug for ModeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModeField")
            .field("weight", &self.weight)
            .field("modes", &self.modes)
            .finish()
    }
}

/// Outcome of [`ModeField::compare`]: number of blocks compared, and the
/// first `(mode, source level)` where the fields differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldComparison {
    pub compared: usize,
    pub mismatch: Option<(i64, usize)>,
}

impl FieldComparison {
    /// Agreement on at least one block and no disagreement.
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none() && self.compared > 0
    }
}

/// `:a(z) b(z):`, with modes
/// `sum_{j <= -1} a_(j) b_(n-j-1) + sum_{j >= 0} b_(n-j-1) a_(j)`.
///
/// Both sums are finite on a truncated space: terms outside the ranges used
/// below pass through a negative level and vanish.
pub fn normal_ordered(a: &ModeField, b: &ModeField) -> ModeField {
    let cutoff = a.cutoff() as i64;
    let (ha, hb) = (a.weight, b.weight);
    ModeField::from_fn(ha + hb, a.dims.clone(), |n| {
        let mut acc = GradedOperator::zero(ha + hb - n - 1, a.dims.clone());
        for j in (n - hb - cutoff)..=-1 {
            acc = acc.add(&a.mode(j).compose(&b.mode(n - j - 1)));
        }
        for j in 0..=(cutoff + ha - 1) {
            acc = acc.add(&b.mode(n - j - 1).compose(&a.mode(j)));
        }
        acc
    })
}

/// `a_(n) b` as a field. For `n >= 0` its modes are
/// `sum_{j=0}^{n} (-1)^j (n choose j) [a_(n-j), b_(m+j)]`; for `n < 0` it is
/// `:(D^(-n-1) a) b:`.
pub fn nth_product(a: &ModeField, b: &ModeField, n: i64) -> ModeField {
    if n < 0 {
        return normal_ordered(&a.divided_derivative((-n - 1) as u32), b);
    }
    let weight = a.weight + b.weight - n - 1;
    ModeField::from_fn(weight, a.dims.clone(), |m| {
        let mut acc = GradedOperator::zero(weight - m - 1, a.dims.clone());
        for j in 0..=n {
            let coeff = binomial(n, j as u32) * if j % 2 == 0 { int(1) } else { int(-1) };
            let term = a.mode(n - j).commutator(&b.mode(m + j));
            acc = acc.add(&term.scale(&ScalarPoly::constant(coeff)));
        }
        acc
    })
}

/// `[a_(m), b_(n)] - sum_{j < N} (m choose j) (c^j)_(m+n-j)` compared on
/// known blocks, over all stored `(m, n)`.
fn locality_holds(a: &ModeField, b: &ModeField, products: &[ModeField], order: usize) -> Result<usize, String> {
    let mut compared = 0;
    for m in a.mode_range() {
        for n in b.mode_range() {
            let lhs = a.mode(m).commutator(&b.mode(n));
            let mut rhs = GradedOperator::zero(lhs.shift(), a.dims.clone());
            for (j, c) in products.iter().enumerate().take(order) {
                let k = m + n - j as i64;
                let coeff = ScalarPoly::constant(binomial(m, j as u32));
                rhs = rhs.add(&c.mode(k).scale(&coeff));
            }
            match lhs.compare(&rhs) {
                Ok(k) => compared += k,
                Err(level) => return Err(format!("[a_({m}), b_({n})] on level {level}")),
            }
        }
    }
    Ok(compared)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityReport {
    /// Least `N >= 1` that works on the window.
    pub order: usize,
    /// Blocks compared at that `N`.
    pub compared: usize,
    /// `a_(j) b` for `j < order`.
    pub products: Vec<ModeField>,
}

/// The least `N <= n_max` with
/// `[a_(m), b_(n)] = sum_{j<N} (m choose j) (a_(j) b)_(m+n-j)` on every
/// known block; `None` if no such `N` exists in range. A vanishing
/// commutator gives `N = 1`.
pub fn locality_order(a: &ModeField, b: &ModeField, n_max: usize) -> Option<LocalityReport> {
    let mut products = Vec::new();
    for order in 1..=n_max {
        products.push(nth_product(a, b, order as i64 - 1));
        if let Ok(compared) = locality_holds(a, b, &products, order) {
            return Some(LocalityReport { order, compared, products });
        }
    }
    None
}

/// `[a_(0) b, ..., a_(N-1) b]`, each checked to reconstruct the
/// commutator. Fails when the window is too small to see any block.
pub fn ope_coeffs(a: &ModeField, b: &ModeField, order: usize) -> Result<Vec<ModeField>> {
    let products: Vec<ModeField> = (0..order as i64).map(|j| nth_product(a, b, j)).collect();
    match locality_holds(a, b, &products, order) {
        Ok(0) => Err(Error::WindowExhausted("no commutator block is known".into())),
        Ok(_) => Ok(products),
        Err(e) => Err(Error::WindowExhausted(format!("OPE does not close at order {order}: {e}"))),
    }
}

/// Prefix for a field name scaled by `q`: `""`, `"-"`, `"2"` or `"(1/2*c)"`.
pub fn coefficient_prefix(q: &ScalarPoly) -> String {
    if *q == ScalarPoly::one() {
        return String::new();
    }
    if *q == ScalarPoly::from_int(-1) {
        return "-".into();
    }
    match q.as_constant() {
        Some(k) if k.is_integer() => k.to_string(),
        _ => format!("({q})"),
    }
}
