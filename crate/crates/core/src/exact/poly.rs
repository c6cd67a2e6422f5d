use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, parse_rational, Rational};
use crate::{Error, Result};

/// `c^c * h^h`.
///
/// Ordered by total degree, ties broken by the power of `h`. This is the
/// printing order (largest first) and the leading-term order used by
/// division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub c: u32,
    pub h: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { c: 0, h: 0 };

    pub fn new(c: u32, h: u32) -> Self {
        Monomial { c, h }
    }

    pub fn degree(self) -> u32 {
        self.c + self.h
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.c <= other.c && self.h <= other.h
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.c + other.c, self.h + other.h)
    }

    fn div(self, other: Monomial) -> Monomial {
        Monomial::new(self.c - other.c, self.h - other.h)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.h.cmp(&other.h))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("c", self.c), ("h", self.h)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Polynomial in the central charge `c` and highest weight `h` with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        Self::term(Monomial::ONE, q)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(super::int(n))
    }

    pub fn term(m: Monomial, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        ScalarPoly { terms }
    }

    /// The indeterminate `c`.
    pub fn c() -> Self {
        Self::term(Monomial::new(1, 0), Rational::one())
    }

    /// The indeterminate `h`.
    pub fn h() -> Self {
        Self::term(Monomial::new(0, 1), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, q) in it {
            p.add_term(m, &q);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// The constant value, if the polynomial has no `c` or `h` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(Monomial::ONE))
        } else {
            None
        }
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, q)| (*m, q))
    }

    pub fn degree_h(&self) -> u32 {
        self.terms.keys().map(|m| m.h).max().unwrap_or(0)
    }

    pub fn degree_c(&self) -> u32 {
        self.terms.keys().map(|m| m.c).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, q: &Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        ScalarPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `c = c0`, `h = h0`.
    pub fn eval(&self, c0: &Rational, h0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, q) in &self.terms {
            acc += q * num_traits::pow(c0.clone(), m.c as usize) * num_traits::pow(h0.clone(), m.h as usize);
        }
        acc
    }

    /// Substitutes only `h = h0`, leaving a polynomial in `c`.
    pub fn eval_h(&self, h0: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, q)| {
            (Monomial::new(m.c, 0), q * num_traits::pow(h0.clone(), m.h as usize))
        }))
    }

    /// Substitutes only `c = c0`, leaving a polynomial in `h`.
    pub fn eval_c(&self, c0: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, q)| {
            (Monomial::new(0, m.h), q * num_traits::pow(c0.clone(), m.c as usize))
        }))
    }

    /// Division with remainder by a single polynomial. Since one polynomial
    /// is a Groebner basis of the ideal it generates, the remainder is zero
    /// exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &ScalarPoly) -> (ScalarPoly, ScalarPoly) {
        let (lead_m, lead_q) = divisor.leading().expect("division by the zero polynomial");
        let lead_q = lead_q.clone();
        let mut rest = self.clone();
        let mut quot = ScalarPoly::zero();
        let mut rem = ScalarPoly::zero();
        while let Some((m, q)) = rest.leading() {
            let q = q.clone();
            if lead_m.divides(m) {
                let t = ScalarPoly::term(m.div(lead_m), &q / &lead_q);
                rest = &rest - &(&t * divisor);
                quot += &t;
            } else {
                rem.add_term(m, &q);
                rest.terms.remove(&m);
            }
        }
        (quot, rem)
    }

    pub fn div_exact(&self, divisor: &ScalarPoly) -> Option<ScalarPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms.iter().rev().enumerate() {
            let neg = q.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = q.abs();
            if *m == Monomial::ONE {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarPoly({self})")
    }
}

impl FromStr for ScalarPoly {
    type Err = Error;

    /// Parses the canonical text form (and any reordering or respacing of it).
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'/' | b'^' | b'*') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut out = ScalarPoly::zero();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-Rational::one(), &piece[1..]),
                b'+' => (Rational::one(), &piece[1..]),
                _ => (Rational::one(), piece),
            };
            let mut coeff = sign;
            let mut mono = Monomial::ONE;
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                match base {
                    "c" => mono.c += exp,
                    "h" => mono.h += exp,
                    _ => coeff *= num_traits::pow(parse_rational(base)?, exp as usize),
                }
            }
            out.add_term(mono, &coeff);
        }
        Ok(out)
    }
}

impl From<Rational> for ScalarPoly {
    fn from(q: Rational) -> Self {
        ScalarPoly::constant(q)
    }
}

impl AddAssign<&ScalarPoly> for ScalarPoly {
    fn add_assign(&mut self, rhs: &ScalarPoly) {
        for (m, q) in &rhs.terms {
            self.add_term(*m, q);
        }
    }
}

impl SubAssign<&ScalarPoly> for ScalarPoly {
    fn sub_assign(&mut self, rhs: &ScalarPoly) {
        for (m, q) in &rhs.terms {
            self.add_term(*m, &-q);
        }
    }
}

impl Add<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                out.add_term(ma.mul(*mb), &(qa * qb));
            }
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            terms: self.terms.iter().map(|(m, q)| (*m, -q)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $method(self, rhs: ScalarPoly) -> ScalarPoly { (&self).$method(&rhs) }
        }
        impl $tr<&ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $method(self, rhs: &ScalarPoly) -> ScalarPoly { (&self).$method(rhs) }
        }
        impl $tr<ScalarPoly> for &ScalarPoly {
            type Output = ScalarPoly;
            fn $method(self, rhs: ScalarPoly) -> ScalarPoly { self.$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn c() -> ScalarPoly {
        ScalarPoly::c()
    }
    fn h() -> ScalarPoly {
        ScalarPoly::h()
    }
    fn k(n: i64) -> ScalarPoly {
        ScalarPoly::from_int(n)
    }

    /// 2h(16h^2 - 10h + 2hc + c)
    fn det_a2() -> ScalarPoly {
        k(2) * h() * (k(16) * h() * h() - k(10) * h() + k(2) * h() * c() + c())
    }

    #[test]
    fn canonical_text_form() {
        assert_eq!(det_a2().to_string(), "32*h^3 + 4*c*h^2 - 20*h^2 + 2*c*h");
        assert_eq!(ScalarPoly::zero().to_string(), "0");
        let p = k(4) * h() + c().scale(&rat(1, 2));
        assert_eq!(p.to_string(), "4*h + 1/2*c");
        assert_eq!((-c() + k(-3)).to_string(), "-c - 3");
    }

    #[test]
    fn parse_inverts_display() {
        for p in [det_a2(), ScalarPoly::zero(), -c() + k(-3), c().scale(&rat(-7, 3)) * h().pow(4)] {
            let back: ScalarPoly = p.to_string().parse().unwrap();
            assert_eq!(back, p);
        }
        let q: ScalarPoly = "32*h^3+4*c*h^2-20*h^2+2*c*h".parse().unwrap();
        assert_eq!(q, det_a2());
        assert!("2*x".parse::<ScalarPoly>().is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(det_a2().eval(&int(1), &rat(1, 4)), int(0));
        assert_eq!(ScalarPoly::one().eval(&rat(5, 7), &rat(-2, 3)), int(1));
        assert_eq!((c() * h()).eval(&rat(2, 3), &rat(3, 5)), rat(2, 5));
    }

    #[test]
    fn exact_division() {
        let phi21 = k(16) * h() * h() - k(10) * h() + k(2) * h() * c() + c();
        let q = det_a2().div_exact(&phi21).unwrap();
        assert_eq!(q, k(2) * h());
        assert!(det_a2().div_exact(&(h() + k(1))).is_none());
        let (q, r) = (c() * c() + k(1)).div_rem(&c());
        assert_eq!(q, c());
        assert_eq!(r, k(1));
    }

    #[test]
    fn partial_substitution() {
        let p = det_a2();
        assert_eq!(p.eval_h(&rat(1, 2)).eval(&int(3), &int(0)), p.eval(&int(3), &rat(1, 2)));
        assert_eq!(p.eval_c(&int(3)).eval(&int(0), &rat(1, 2)), p.eval(&int(3), &rat(1, 2)));
    }
}
