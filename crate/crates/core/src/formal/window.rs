use std::collections::BTreeMap;

use crate::exact::{binomial, int, Rational, ScalarPoly};
use crate::{Error, Result};

/// Truncated univariate Laurent series: the keys are the exponents whose
/// coefficient is known (possibly zero); everything else is undefined.
pub type LaurentWindow = BTreeMap<i64, ScalarPoly>;

/// Finite Laurent polynomial, used as a test function `f(z)`.
pub type Laurent = BTreeMap<i64, Rational>;

/// A window onto a series in `U[[z^{+-1}, w^{+-1}]]`. The key `(i, j)`
/// holds the coefficient of `z^i w^j`; absent keys are undefined, not zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiLaurentWindow {
    entries: BTreeMap<(i64, i64), ScalarPoly>,
}

impl BiLaurentWindow {
    /// All `|i|, |j| <= w` defined, with `f` supplying each coefficient.
    pub fn from_fn(w: i64, f: impl Fn(i64, i64) -> ScalarPoly) -> Self {
        let mut entries = BTreeMap::new();
        for i in -w..=w {
            for j in -w..=w {
                entries.insert((i, j), f(i, j));
            }
        }
        BiLaurentWindow { entries }
    }

    pub fn from_entries(entries: BTreeMap<(i64, i64), ScalarPoly>) -> Self {
        BiLaurentWindow { entries }
    }

    /// `None` when the coefficient lies outside the known region.
    pub fn coeff(&self, i: i64, j: i64) -> Option<&ScalarPoly> {
        self.entries.get(&(i, j))
    }

    pub fn defined(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn derive(&self, f: impl Fn(i64, i64) -> Option<ScalarPoly>) -> Self {
        let entries = self
            .entries
            .keys()
            .filter_map(|&(i, j)| f(i, j).map(|q| ((i, j), q)))
            .collect();
        BiLaurentWindow { entries }
    }

    fn get2(&self, a: (i64, i64), b: (i64, i64)) -> Option<(&ScalarPoly, &ScalarPoly)> {
        Some((self.entries.get(&a)?, self.entries.get(&b)?))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.derive(|i, j| other.coeff(i, j).map(|q| &self.entries[&(i, j)] + q))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.derive(|i, j| other.coeff(i, j).map(|q| &self.entries[&(i, j)] - q))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.derive(|i, j| Some(self.entries[&(i, j)].scale(s)))
    }

    /// `(z - w) A`.
    pub fn mul_z_minus_w(&self) -> Self {
        self.derive(|i, j| self.get2((i - 1, j), (i, j - 1)).map(|(a, b)| a - b))
    }

    /// `(z - w)^k A`.
    pub fn mul_z_minus_w_pow(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.mul_z_minus_w())
    }

    fn mul_laurent(&self, f: &Laurent, in_z: bool) -> Self {
        self.derive(|i, j| {
            let mut acc = ScalarPoly::zero();
            for (&k, q) in f {
                let src = if in_z { (i - k, j) } else { (i, j - k) };
                acc += &self.coeff(src.0, src.1)?.scale(q);
            }
            Some(acc)
        })
    }

    /// `f(z) A`.
    pub fn mul_fz(&self, f: &Laurent) -> Self {
        self.mul_laurent(f, true)
    }

    /// `f(w) A`.
    pub fn mul_fw(&self, f: &Laurent) -> Self {
        self.mul_laurent(f, false)
    }

    /// `d/dz A`.
    pub fn d_z(&self) -> Self {
        self.derive(|i, j| self.coeff(i + 1, j).map(|q| q.scale(&int(i + 1))))
    }

    /// `d/dw A`.
    pub fn d_w(&self) -> Self {
        self.derive(|i, j| self.coeff(i, j + 1).map(|q| q.scale(&int(j + 1))))
    }

    /// Coefficient of `z^{-1}`, as a series in `w`.
    pub fn res_z(&self) -> LaurentWindow {
        self.entries
            .range((-1, i64::MIN)..=(-1, i64::MAX))
            .map(|(&(_, j), q)| (j, q.clone()))
            .collect()
    }

    /// Swaps the roles of `z` and `w`.
    pub fn swap(&self) -> Self {
        BiLaurentWindow {
            entries: self.entries.iter().map(|(&(i, j), q)| ((j, i), q.clone())).collect(),
        }
    }

    /// Compares on `|i|, |j| <= inner`. Both sides must be defined there.
    pub fn agrees_on(&self, other: &Self, inner: i64) -> std::result::Result<usize, String> {
        let mut count = 0;
        for i in -inner..=inner {
            for j in -inner..=inner {
                match (self.coeff(i, j), other.coeff(i, j)) {
                    (Some(a), Some(b)) if a == b => count += 1,
                    (Some(a), Some(b)) => return Err(format!("z^{i} w^{j}: {a} != {b}")),
                    _ => return Err(format!("z^{i} w^{j} undefined")),
                }
            }
        }
        Ok(count)
    }
}

/// `delta(z - w) = sum_n z^{n-1} w^{-n}` on `|i|, |j| <= w`.
pub fn delta_window(w: i64) -> BiLaurentWindow {
    delta_derivative(w, 0)
}

/// `D^{(j)}_w delta(z - w) = sum_m (m choose j) z^{-m-1} w^{m-j}`, where
/// `D^{(j)} = (d/dw)^j / j!`.
pub fn delta_derivative(w: i64, j: u32) -> BiLaurentWindow {
    BiLaurentWindow::from_fn(w, |a, b| {
        if a + b == -1 - j as i64 {
            ScalarPoly::constant(binomial(-a - 1, j))
        } else {
            ScalarPoly::zero()
        }
    })
}

/// `D^{(j)}_w delta` obtained by differentiating the delta window `j` times.
pub fn delta_derivative_by_differentiation(w: i64, j: u32) -> BiLaurentWindow {
    let fact = (1..=j as i64).fold(int(1), |acc, k| acc * int(k));
    (0..j)
        .fold(delta_window(w), |acc, _| acc.d_w())
        .scale(&(int(1) / fact))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub compared: usize,
    pub failure: Option<String>,
}

impl IdentityCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaReport {
    pub window: i64,
    pub guard: i64,
    pub checks: Vec<IdentityCheck>,
}

impl DeltaReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(IdentityCheck::ok)
    }
}

/// Highest derivative order exercised by [`delta_identity_suite`].
pub const MAX_DELTA_ORDER: u32 = 3;

/// Runs the delta-function identities on the inner window
/// `|i|, |j| <= window - guard`:
///
/// * `f(z) delta = f(w) delta`
/// * `Res_z f(z) delta(z - w) = f(w)`
/// * `d_z delta = -d_w delta`
/// * `(z - w) D^{(j+1)} delta = D^{(j)} delta` for `j <= 3`
/// * `(z - w)^{j+1} D^{(j)} delta = 0` for `j <= 3`
///
/// plus agreement of the closed form of `D^{(j)} delta` with repeated
/// differentiation and the symmetry `delta(z - w) = delta(w - z)`.
pub fn delta_identity_suite(window: i64, guard: i64, f: &Laurent) -> Result<DeltaReport> {
    let span = f.keys().map(|k| k.abs()).max().unwrap_or(0);
    let required = span.max(MAX_DELTA_ORDER as i64 + 1);
    if guard < required {
        return Err(Error::GuardTooSmall { guard: guard.max(0) as usize, required: required as usize });
    }
    if window <= guard {
        return Err(Error::WindowExhausted(format!(
            "window {window} leaves no room inside guard {guard}"
        )));
    }
    let inner = window - guard;
    let delta = delta_window(window);
    let mut checks = Vec::new();
    let mut push = |name: &str, r: std::result::Result<usize, String>| {
        let (compared, failure) = match r {
            Ok(n) => (n, None),
            Err(e) => (0, Some(e)),
        };
        checks.push(IdentityCheck { name: name.to_string(), compared, failure });
    };

    push("delta symmetric", delta.agrees_on(&delta.swap(), inner));
    push("f(z) delta = f(w) delta", delta.mul_fz(f).agrees_on(&delta.mul_fw(f), inner));

    let res = delta.mul_fz(f).res_z();
    let residue = (|| {
        let mut count = 0;
        for j in -inner..=inner {
            let expected = ScalarPoly::constant(f.get(&j).cloned().unwrap_or_else(|| int(0)));
            match res.get(&j) {
                Some(q) if *q == expected => count += 1,
                Some(q) => return Err(format!("w^{j}: {q} != {expected}")),
                None => return Err(format!("w^{j} undefined")),
            }
        }
        Ok(count)
    })();
    push("Res_z f(z) delta = f(w)", residue);

    push("d_z delta = -d_w delta", delta.d_z().agrees_on(&delta.d_w().scale(&int(-1)), inner));

    let derivs: Vec<BiLaurentWindow> =
        (0..=MAX_DELTA_ORDER + 1).map(|j| delta_derivative(window, j)).collect();
    for (j, d) in derivs.iter().enumerate() {
        let by_diff = delta_derivative_by_differentiation(window, j as u32);
        push(&format!("D^({j}) delta closed form"), d.agrees_on(&by_diff, inner));
    }
    let zero = BiLaurentWindow::from_fn(window, |_, _| ScalarPoly::zero());
    for j in 0..=MAX_DELTA_ORDER as usize {
        push(
            &format!("(z-w) D^({}) delta = D^({j}) delta", j + 1),
            derivs[j + 1].mul_z_minus_w().agrees_on(&derivs[j], inner),
        );
        push(
            &format!("(z-w)^{} D^({j}) delta = 0", j + 1),
            derivs[j].mul_z_minus_w_pow(j as u32 + 1).agrees_on(&zero, inner),
        );
    }
    Ok(DeltaReport { window, guard, checks })
}
