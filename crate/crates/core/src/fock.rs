//! The bosonic Fock space `C[x_1, x_2, ...]` with the Heisenberg action
//! `a_n = d/dx_n`, `a_{-n} = n x_n`, `a_0 = mu`, and the normally ordered
//! Virasoro operators it carries at `c = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{factorial, fmt_rational, int, rat, Rational};
use crate::verma::{partitions_of, Partition};
use crate::{Error, Result};

/// `prod x_n^{k_n}`; the empty map is the constant 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FockMonomial(BTreeMap<u32, u32>);

impl FockMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// `x_n^k`.
    pub fn var(n: u32, k: u32) -> Self {
        assert!(n >= 1, "variable indices start at 1");
        let mut m = BTreeMap::new();
        if k > 0 {
            m.insert(n, k);
        }
        FockMonomial(m)
    }

    /// The monomial `prod x_{lambda_i}`, i.e. `a_{-lambda_1} ... a_{-lambda_k} 1`
    /// up to the scalar `prod lambda_i`.
    pub fn from_partition(p: &Partition) -> Self {
        let mut m = BTreeMap::new();
        for &part in p.parts() {
            *m.entry(part).or_insert(0) += 1;
        }
        FockMonomial(m)
    }

    pub fn exponent(&self, n: u32) -> u32 {
        self.0.get(&n).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&n, &k)| (n, k))
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(&n, &k)| n * k).sum()
    }

    pub fn max_index(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    fn with_exponent(&self, n: u32, k: u32) -> Self {
        let mut m = self.0.clone();
        if k == 0 {
            m.remove(&n);
        } else {
            m.insert(n, k);
        }
        FockMonomial(m)
    }

    /// `<x^k, x^k> = prod k_n! / n^{k_n}`.
    pub fn norm(&self) -> Rational {
        self.0.iter().fold(Rational::one(), |acc, (&n, &k)| {
            let num = Rational::from_integer(factorial(k));
            let den = Rational::from_integer(num_bigint::BigInt::from(n).pow(k));
            acc * num / den
        })
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(&n, &k)| if k == 1 { format!("x{n}") } else { format!("x{n}^{k}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockPoly(BTreeMap<FockMonomial, Rational>);

impl FockPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(FockMonomial::one())
    }

    pub fn monomial(m: FockMonomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: FockMonomial, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, m: &FockMonomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &Rational)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, m: FockMonomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.0.entry(m).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &FockPoly) -> FockPoly {
        let mut out = self.clone();
        for (m, q) in &other.0 {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &FockPoly) -> FockPoly {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> FockPoly {
        if s.is_zero() {
            return FockPoly::zero();
        }
        FockPoly(self.0.iter().map(|(m, q)| (m.clone(), q * s)).collect())
    }

    /// Weights of the monomials present, ascending, without repeats.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.0.keys().map(FockMonomial::weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

impl fmt::Display for FockPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(m, q)| {
                if q.is_one() {
                    m.to_string()
                } else if m.0.is_empty() {
                    fmt_rational(q)
                } else {
                    format!("{}*{}", fmt_rational(q), m)
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for FockPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `rho(a_n) f`.
pub fn heis_act(n: i64, f: &FockPoly, mu: &Rational) -> FockPoly {
    if n == 0 {
        return f.scale(mu);
    }
    let idx = n.unsigned_abs() as u32;
    let mut out = FockPoly::zero();
    for (m, q) in &f.0 {
        let k = m.exponent(idx);
        if n > 0 {
            if k > 0 {
                out.add_term(m.with_exponent(idx, k - 1), q * int(k as i64));
            }
        } else {
            out.add_term(m.with_exponent(idx, k + 1), q * int(idx as i64));
        }
    }
    out
}

/// `rho(L_n) f = 1/2 sum_k :a_{n-k} a_k: f`.
///
/// Terms with `i < j`, `i + j = n` appear twice in the sum, the diagonal
/// `i = j = n/2` once; annihilators act first.
pub fn fock_l(n: i64, f: &FockPoly, mu: &Rational) -> FockPoly {
    let top = f.0.keys().map(FockMonomial::max_index).max().unwrap_or(0) as i64;
    let mut out = FockPoly::zero();
    // j > n/2, and a_j f = 0 once j exceeds every variable index present
    let lo = n.div_euclid(2) + 1;
    let hi = top.max(0);
    for j in lo..=hi {
        let i = n - j;
        out = out.add(&heis_act(i, &heis_act(j, f, mu), mu));
    }
    if n % 2 == 0 {
        let half = n / 2;
        let diag = heis_act(half, &heis_act(half, f, mu), mu);
        out = out.add(&diag.scale(&rat(1, 2)));
    }
    out
}

/// `<f, g>` with distinct monomials orthogonal.
pub fn fock_inner(f: &FockPoly, g: &FockPoly) -> Rational {
    let (small, large) = if f.0.len() <= g.0.len() { (f, g) } else { (g, f) };
    small
        .0
        .iter()
        .filter_map(|(m, q)| large.0.get(m).map(|r| q * r * m.norm()))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Every monomial of weight exactly `w`.
pub fn monomials_of_weight(w: u32) -> Vec<FockMonomial> {
    partitions_of(w).iter().map(FockMonomial::from_partition).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCounterexample {
    pub monomial: FockMonomial,
    pub lhs: FockPoly,
    pub rhs: FockPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketReport {
    pub m: i64,
    pub n: i64,
    pub cutoff: usize,
    pub mu: Rational,
    /// Highest monomial weight tested.
    pub max_weight: u32,
    pub checked: usize,
    pub counterexample: Option<BracketCounterexample>,
}

impl BracketReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `[L_m, L_n] = (m-n) L_{m+n} + (m^3-m)/12 delta_{m+n,0}` on every
/// monomial whose intermediate weights all stay at or below `cutoff`.
pub fn fock_bracket_check(m: i64, n: i64, cutoff: usize, mu: &Rational) -> Result<BracketReport> {
    let too_small = Error::CutoffTooSmall { m, n, cutoff };
    let cut = cutoff as i64;
    if m.abs() > cut || n.abs() > cut || (m + n).abs() > cut {
        return Err(too_small);
    }
    let rise = 0.max(-m).max(-n).max(-m - n);
    let max_weight = cut - rise;
    if max_weight < 0 {
        return Err(too_small);
    }
    let central = if m + n == 0 { rat(m * m * m - m, 12) } else { Rational::zero() };
    let mut checked = 0;
    for w in 0..=max_weight as u32 {
        for mono in monomials_of_weight(w) {
            let f = FockPoly::monomial(mono.clone());
            let lhs = fock_l(m, &fock_l(n, &f, mu), mu).sub(&fock_l(n, &fock_l(m, &f, mu), mu));
            let rhs = fock_l(m + n, &f, mu)
                .scale(&int(m - n))
                .add(&f.scale(&central));
            checked += 1;
            if lhs != rhs {
                return Ok(BracketReport {
                    m,
                    n,
                    cutoff,
                    mu: mu.clone(),
                    max_weight: max_weight as u32,
                    checked,
                    counterexample: Some(BracketCounterexample { monomial: mono, lhs, rhs }),
                });
            }
        }
    }
    Ok(BracketReport {
        m,
        n,
        cutoff,
        mu: mu.clone(),
        max_weight: max_weight as u32,
        checked,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: u32) -> FockPoly {
        FockPoly::monomial(FockMonomial::var(n, 1))
    }

    fn mono(pairs: &[(u32, u32)]) -> FockMonomial {
        pairs.iter().fold(FockMonomial::one(), |m, &(n, k)| m.with_exponent(n, k))
    }

    #[test]
    fn heisenberg_examples() {
        let zero = Rational::zero();
        assert_eq!(heis_act(2, &x(2), &zero), FockPoly::one());
        assert_eq!(
            heis_act(-2, &x(1), &zero),
            FockPoly::term(mono(&[(1, 1), (2, 1)]), int(2))
        );
        assert_eq!(heis_act(0, &x(3), &rat(2, 3)), x(3).scale(&rat(2, 3)));
        assert!(heis_act(1, &FockPoly::one(), &zero).is_zero());
    }

    #[test]
    fn heisenberg_relations() {
        let mu = rat(1, 3);
        for w in 0..=6 {
            for m0 in monomials_of_weight(w) {
                let f = FockPoly::monomial(m0);
                for a in -4i64..=4 {
                    for b in -4i64..=4 {
                        let lhs = heis_act(a, &heis_act(b, &f, &mu), &mu)
                            .sub(&heis_act(b, &heis_act(a, &f, &mu), &mu));
                        let rhs = if a + b == 0 { f.scale(&int(a)) } else { FockPoly::zero() };
                        assert_eq!(lhs, rhs, "a={a} b={b} f={f}");
                    }
                }
            }
        }
    }

    #[test]
    fn virasoro_examples() {
        let mu = rat(3, 5);
        assert_eq!(fock_l(0, &FockPoly::one(), &mu), FockPoly::one().scale(&rat(9, 50)));
        assert!(fock_l(1, &FockPoly::one(), &mu).is_zero());
        let f = FockPoly::monomial(mono(&[(1, 1), (2, 1)]));
        assert_eq!(fock_l(0, &f, &Rational::zero()), f.scale(&int(3)));
        // L_{-1} 1 = a_{-1} a_0 1 = mu x_1
        assert_eq!(fock_l(-1, &FockPoly::one(), &mu), x(1).scale(&mu));
    }

    #[test]
    fn l0_grading() {
        let mu = rat(-7, 2);
        for w in 0..=6 {
            for m0 in monomials_of_weight(w) {
                let f = FockPoly::monomial(m0);
                let expected = f.scale(&(int(w as i64) + &mu * &mu / int(2)));
                assert_eq!(fock_l(0, &f, &mu), expected);
            }
        }
    }

    #[test]
    fn inner_product() {
        let x1sq = FockPoly::monomial(FockMonomial::var(1, 2));
        assert_eq!(fock_inner(&x1sq, &x1sq), int(2));
        assert_eq!(fock_inner(&FockPoly::one(), &FockPoly::one()), int(1));
        assert_eq!(fock_inner(&x(1), &x(2)), int(0));
        assert_eq!(mono(&[(2, 3), (3, 1)]).norm(), rat(6, 24));
    }

    #[test]
    fn adjointness() {
        let mu = rat(1, 2);
        for w in 0..=5u32 {
            for a in monomials_of_weight(w) {
                let f = FockPoly::monomial(a);
                for n in -4i64..=4 {
                    let target = w as i64 - n;
                    if target < 0 {
                        continue;
                    }
                    for b in monomials_of_weight(target as u32) {
                        let g = FockPoly::monomial(b);
                        assert_eq!(
                            fock_inner(&heis_act(n, &f, &mu), &g),
                            fock_inner(&f, &heis_act(-n, &g, &mu))
                        );
                        assert_eq!(
                            fock_inner(&fock_l(n, &f, &mu), &g),
                            fock_inner(&f, &fock_l(-n, &g, &mu))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn brackets() {
        let mu = rat(1, 2);
        for (m, n) in [(1, -1), (2, -2), (0, 0), (3, -1), (-2, 1), (3, -3)] {
            let r = fock_bracket_check(m, n, 6, &mu).unwrap();
            assert!(r.ok(), "{m} {n}: {:?}", r.counterexample);
            assert!(r.checked > 0);
        }
        assert_eq!(
            fock_bracket_check(5, 2, 6, &mu),
            Err(Error::CutoffTooSmall { m: 5, n: 2, cutoff: 6 })
        );
    }
}
