use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use super::partition::{partitions_with_min_part, Partition};
use crate::exact::{rat, PolyMatrix, QMatrix, Rational, ScalarPoly};
use crate::{Error, Result};

/// Finite linear combination of partition basis vectors with coefficients in
/// `Q[c, h]`. No zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VermaVector {
    coeffs: BTreeMap<Partition, ScalarPoly>,
}

impl VermaVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(p: Partition) -> Self {
        Self::term(p, ScalarPoly::one())
    }

    pub fn vacuum() -> Self {
        Self::basis(Partition::empty())
    }

    pub fn term(p: Partition, coeff: ScalarPoly) -> Self {
        let mut v = Self::zero();
        v.add_term(p, &coeff);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, ScalarPoly)>>(it: I) -> Self {
        let mut v = Self::zero();
        for (p, q) in it {
            v.add_term(p, &q);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> ScalarPoly {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &ScalarPoly)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, p: Partition, q: &ScalarPoly) {
        if q.is_zero() {
            return;
        }
        match self.coeffs.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &VermaVector, s: &ScalarPoly) {
        if s.is_zero() {
            return;
        }
        for (p, q) in &other.coeffs {
            self.add_term(p.clone(), &(q * s));
        }
    }

    pub fn scale(&self, s: &ScalarPoly) -> VermaVector {
        let mut out = VermaVector::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn add(&self, other: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        out.add_scaled(other, &ScalarPoly::one());
        out
    }

    pub fn sub(&self, other: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        out.add_scaled(other, &ScalarPoly::from_int(-1));
        out
    }

    /// Distinct weights carried by the nonzero terms, ascending.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.coeffs.keys().map(Partition::weight).collect();
        w.dedup();
        w
    }

    /// The common weight, if all terms share one. `None` for the zero vector.
    pub fn weight(&self) -> Option<u32> {
        match self.weights().as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights().len() <= 1
    }

    pub fn eval(&self, c0: &Rational, h0: &Rational) -> VermaVector {
        VermaVector::from_terms(
            self.coeffs
                .iter()
                .map(|(p, q)| (p.clone(), ScalarPoly::constant(q.eval(c0, h0)))),
        )
    }

    pub fn map_coeffs(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> VermaVector {
        VermaVector::from_terms(self.coeffs.iter().map(|(p, q)| (p.clone(), f(q))))
    }

    /// Coordinates with respect to `basis`. Panics if a term lies outside it.
    pub fn coordinates(&self, basis: &[Partition]) -> Vec<ScalarPoly> {
        let mut out = vec![ScalarPoly::zero(); basis.len()];
        for (p, q) in &self.coeffs {
            let idx = basis
                .iter()
                .position(|b| b == p)
                .unwrap_or_else(|| panic!("{p} is not in the given basis"));
            out[idx] = q.clone();
        }
        out
    }

    pub fn from_coordinates(basis: &[Partition], coords: &[ScalarPoly]) -> VermaVector {
        VermaVector::from_terms(basis.iter().cloned().zip(coords.iter().cloned()))
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, q)| {
                if *q == ScalarPoly::one() {
                    p.to_string()
                } else {
                    format!("({q})*{p}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VermaVector({self})")
    }
}

/// Which relations hold on the generating vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VacuumKind {
    /// `L_n v0 = 0` for `n >= 1`: the Verma module `M(c, h)`.
    Verma,
    /// Additionally `L_{-1} v0 = 0`: the vacuum module `M(c, 0) / <L_{-1} v0>`.
    Vacuum,
}

/// Highest weight Virasoro module with the `L_n` action computed by
/// rewriting words into the partition basis.
///
/// The central charge and highest weight are arbitrary elements of
/// `Q[c, h]`; use the indeterminates for symbolic work and constants for a
/// specialisation. Results of `L_n` on basis vectors are memoised behind a
/// lock, so one module can be shared between threads.
pub struct VermaModule {
    central_charge: ScalarPoly,
    highest_weight: ScalarPoly,
    kind: VacuumKind,
    cache: RwLock<HashMap<(i32, Partition), VermaVector>>,
}

impl fmt::Debug for VermaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VermaModule")
            .field("c", &self.central_charge.to_string())
            .field("h", &self.highest_weight.to_string())
            .field("kind", &self.kind)
            .finish()
    }
}

/// Level `N` Gram matrix of the Shapovalov form, in canonical basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub level: u32,
    pub basis: Vec<Partition>,
    pub matrix: PolyMatrix,
}

impl GramMatrix {
    pub fn eval(&self, c0: &Rational, h0: &Rational) -> QMatrix {
        self.matrix.eval(c0, h0)
    }

    pub fn det(&self) -> ScalarPoly {
        self.matrix.bareiss_det().expect("Gram matrices are square")
    }
}

impl VermaModule {
    pub fn new(central_charge: ScalarPoly, highest_weight: ScalarPoly, kind: VacuumKind) -> Self {
        VermaModule {
            central_charge,
            highest_weight,
            kind,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// `M(c, h)` with both parameters left as indeterminates.
    pub fn symbolic() -> Self {
        Self::new(ScalarPoly::c(), ScalarPoly::h(), VacuumKind::Verma)
    }

    /// `M(c0, h0)` at a rational point.
    pub fn at(c0: &Rational, h0: &Rational) -> Self {
        Self::new(
            ScalarPoly::constant(c0.clone()),
            ScalarPoly::constant(h0.clone()),
            VacuumKind::Verma,
        )
    }

    /// The vacuum module `M(c, 0) / <L_{-1} v0>` underlying the Virasoro
    /// vertex operator algebra.
    pub fn vacuum(central_charge: ScalarPoly) -> Self {
        Self::new(central_charge, ScalarPoly::zero(), VacuumKind::Vacuum)
    }

    pub fn central_charge(&self) -> &ScalarPoly {
        &self.central_charge
    }

    pub fn highest_weight(&self) -> &ScalarPoly {
        &self.highest_weight
    }

    pub fn kind(&self) -> VacuumKind {
        self.kind
    }

    /// Smallest allowed part in a basis partition.
    pub fn min_part(&self) -> u32 {
        match self.kind {
            VacuumKind::Verma => 1,
            VacuumKind::Vacuum => 2,
        }
    }

    /// Basis of the weight `level` subspace in canonical order.
    pub fn basis(&self, level: u32) -> Vec<Partition> {
        partitions_with_min_part(level, self.min_part())
    }

    /// `L_n` applied to a basis vector.
    pub fn act_basis(&self, n: i32, p: &Partition) -> VermaVector {
        if let Some(v) = self.cache.read().expect("cache lock").get(&(n, p.clone())) {
            return v.clone();
        }
        let v = self.compute(n, p);
        self.cache
            .write()
            .expect("cache lock")
            .insert((n, p.clone()), v.clone());
        v
    }

    fn compute(&self, n: i32, p: &Partition) -> VermaVector {
        if n == 0 {
            let eigen = &self.highest_weight + &ScalarPoly::from_int(p.weight() as i64);
            return VermaVector::term(p.clone(), eigen);
        }
        let Some(first) = p.first() else {
            // n != 0 on the generating vector
            if n > 0 || (n == -1 && self.kind == VacuumKind::Vacuum) {
                return VermaVector::zero();
            }
            return VermaVector::basis(Partition::new(vec![(-n) as u32]));
        };
        let rest = p.tail();
        let first_i = first as i32;
        if n < 0 {
            let m = (-n) as u32;
            if m >= first {
                return VermaVector::basis(p.prepend(m));
            }
            // L_{-m} L_{-f} = L_{-f} L_{-m} + (f - m) L_{-(m+f)}
            let inner = self.act_basis(n, &rest);
            let mut out = self.act(-first_i, &inner);
            let merged = self.act_basis(n - first_i, &rest);
            out.add_scaled(&merged, &ScalarPoly::from_int((first_i + n) as i64));
            return out;
        }
        // L_n L_{-f} = L_{-f} L_n + (n + f) L_{n-f} + delta_{n,f} c/12 (n^3 - n)
        let inner = self.act_basis(n, &rest);
        let mut out = self.act(-first_i, &inner);
        let shifted = self.act_basis(n - first_i, &rest);
        out.add_scaled(&shifted, &ScalarPoly::from_int((n + first_i) as i64));
        if n == first_i {
            let n = n as i64;
            let central = self.central_charge.scale(&rat(n * n * n - n, 12));
            out.add_term(rest, &central);
        }
        out
    }

    /// `L_n v`.
    pub fn act(&self, n: i32, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero();
        for (p, q) in v.terms() {
            out.add_scaled(&self.act_basis(n, p), q);
        }
        out
    }

    /// `L_{m1} L_{m2} ... L_{mr} v` for `modes = [m1, ..., mr]`.
    pub fn act_word(&self, modes: &[i32], v: &VermaVector) -> VermaVector {
        modes.iter().rev().fold(v.clone(), |acc, &m| self.act(m, &acc))
    }

    /// Coefficient of the generating vector, `<v0, v>`.
    pub fn expectation(&self, v: &VermaVector) -> ScalarPoly {
        v.coeff(&Partition::empty())
    }

    /// Shapovalov form on basis vectors:
    /// `<v_lambda, v_mu> = <v0, L_{lambda_k} ... L_{lambda_1} v_mu>`.
    pub fn shapovalov(&self, lambda: &Partition, mu: &Partition) -> ScalarPoly {
        if lambda.weight() != mu.weight() {
            return ScalarPoly::zero();
        }
        let mut w = VermaVector::basis(mu.clone());
        for &part in lambda.parts() {
            w = self.act(part as i32, &w);
            if w.is_zero() {
                return ScalarPoly::zero();
            }
        }
        self.expectation(&w)
    }

    /// Bilinear extension of [`Self::shapovalov`].
    pub fn form(&self, x: &VermaVector, y: &VermaVector) -> ScalarPoly {
        let mut acc = ScalarPoly::zero();
        for (a, qa) in x.terms() {
            for (b, qb) in y.terms() {
                let s = self.shapovalov(a, b);
                if !s.is_zero() {
                    acc += &(&(qa * qb) * &s);
                }
            }
        }
        acc
    }

    pub fn gram(&self, level: u32) -> GramMatrix {
        let basis = self.basis(level);
        let matrix = PolyMatrix::from_fn(basis.len(), basis.len(), |i, j| {
            self.shapovalov(&basis[i], &basis[j])
        });
        GramMatrix {
            level,
            basis,
            matrix,
        }
    }

    /// Number of memoised `(mode, partition)` results.
    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// Serialises the memo table. The first lines identify the module, so a
    /// table is only ever imported into a module with the same parameters.
    pub fn export_cache(&self) -> String {
        let mut out = self.cache_header();
        let cache = self.cache.read().expect("cache lock");
        let mut entries: Vec<_> = cache.iter().collect();
        entries.sort_by(|a, b| (a.0 .0, &a.0 .1).cmp(&(b.0 .0, &b.0 .1)));
        for ((n, p), v) in entries {
            let terms: Vec<String> = v
                .terms()
                .map(|(q, coeff)| format!("{}:{}", fmt_parts(q), coeff))
                .collect();
            let body = if terms.is_empty() { "0".to_string() } else { terms.join(";") };
            out.push_str(&format!("{n}\t{}\t{body}\n", fmt_parts(p)));
        }
        out
    }

    /// Loads entries written by [`Self::export_cache`]. Returns the number of
    /// entries imported, or an error if the header belongs to a different
    /// module or a line is malformed.
    pub fn import_cache(&self, text: &str) -> Result<usize> {
        let header = self.cache_header();
        let Some(body) = text.strip_prefix(header.as_str()) else {
            return Err(Error::Parse("cache header does not match this module".into()));
        };
        let mut parsed = Vec::new();
        for line in body.lines().filter(|l| !l.trim().is_empty()) {
            let mut cols = line.split('\t');
            let (Some(n), Some(p), Some(v), None) = (cols.next(), cols.next(), cols.next(), cols.next()) else {
                return Err(Error::Parse(format!("malformed cache line {line:?}")));
            };
            let n: i32 = n.parse().map_err(|_| Error::Parse(format!("bad mode in {line:?}")))?;
            let p = parse_parts(p)?;
            let mut vec = VermaVector::zero();
            if v != "0" {
                for term in v.split(';') {
                    let (q, coeff) = term
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
                    vec.add_term(parse_parts(q)?, &coeff.parse()?);
                }
            }
            parsed.push(((n, p), vec));
        }
        let count = parsed.len();
        self.cache.write().expect("cache lock").extend(parsed);
        Ok(count)
    }

    fn cache_header(&self) -> String {
        let kind = match self.kind {
            VacuumKind::Verma => "verma",
            VacuumKind::Vacuum => "vacuum",
        };
        format!(
            "virasoro-kernel-cache v1\nc\t{}\nh\t{}\nkind\t{kind}\n",
            self.central_charge, self.highest_weight
        )
    }
}

fn fmt_parts(p: &Partition) -> String {
    if p.is_empty() {
        "-".into()
    } else {
        p.parts().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

fn parse_parts(s: &str) -> Result<Partition> {
    if s == "-" {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|x| x.parse::<u32>().ok().filter(|&v| v > 0))
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::Parse(format!("bad partition {s:?}")))?;
    Ok(Partition::new(parts))
}

/// `c/12 (m^3 - m)`.
#[cfg(test)]
pub(crate) fn central_term(c: &ScalarPoly, m: i64) -> ScalarPoly {
    c.scale(&rat(m * m * m - m, 12))
}
