use crate::exact::{rat, Rational};

/// `c(m) = 1 - 6 / ((m+2)(m+3))`.
pub fn discrete_central_charge(m: u32) -> Rational {
    let m = m as i64;
    rat(1, 1) - rat(6, (m + 2) * (m + 3))
}

/// `h_{p,q}(m) = (((m+3)p - (m+2)q)^2 - 1) / (4(m+2)(m+3))`.
pub fn discrete_weight(m: u32, p: u32, q: u32) -> Rational {
    let (m, p, q) = (m as i64, p as i64, q as i64);
    let d = (m + 3) * p - (m + 2) * q;
    rat(d * d - 1, 4 * (m + 2) * (m + 3))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretePoint {
    pub p: u32,
    pub q: u32,
    pub h: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteSeries {
    pub m: u32,
    pub central_charge: Rational,
    pub points: Vec<DiscretePoint>,
}

impl DiscreteSeries {
    /// The weights in listing order, duplicates kept.
    pub fn weights(&self) -> Vec<Rational> {
        self.points.iter().map(|pt| pt.h.clone()).collect()
    }
}

fn build(m: u32, pairs: impl Iterator<Item = (u32, u32)>) -> DiscreteSeries {
    DiscreteSeries {
        m,
        central_charge: discrete_central_charge(m),
        points: pairs
            .map(|(p, q)| DiscretePoint { p, q, h: discrete_weight(m, p, q) })
            .collect(),
    }
}

/// Pairs `1 <= p <= q <= m+1`, ordered by `p` then `q`.
///
/// At `m = 1` this lists `0, 1/16, 1/16` and misses `1/2`; see
/// [`discrete_series_extended`] for the full Kac table.
pub fn discrete_series(m: u32) -> DiscreteSeries {
    build(m, (1..=m + 1).flat_map(move |p| (p..=m + 1).map(move |q| (p, q))))
}

/// Pairs `1 <= p <= m+1`, `1 <= q <= m+2`, ordered by `p` then `q`.
pub fn discrete_series_extended(m: u32) -> DiscreteSeries {
    build(m, (1..=m + 1).flat_map(move |p| (1..=m + 2).map(move |q| (p, q))))
}
