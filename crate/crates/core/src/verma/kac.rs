use num_traits::Signed;

use super::module::VermaModule;
use super::partition::partition_count;
use crate::exact::{rat, Rational, ScalarPoly};
use crate::{Error, Result};

/// The paired Kac factor `phi_{p,q}`, `p >= q >= 1`.
///
/// For `p = q` this is `h - h_{q,q}(c) = h + (c-1)(q^2-1)/24`; for `p > q` it
/// is the product `(h - h_{p,q}(c))(h - h_{q,p}(c))`, written out so the
/// square roots in the individual roots cancel.
pub fn phi_pq(p: u32, q: u32) -> Result<ScalarPoly> {
    if q < 1 || p < q {
        return Err(Error::InvalidPair { p, q });
    }
    let h = ScalarPoly::h();
    let cm1 = &ScalarPoly::c() - &ScalarPoly::one();
    let (p, q) = (p as i64, q as i64);
    if p == q {
        return Ok(&h + &cm1.scale(&rat(q * q - 1, 24)));
    }
    let shift = ScalarPoly::constant(rat((p - q) * (p - q), 4));
    let square = (&h - &shift).pow(2);
    let linear = (&h * &cm1).scale(&rat(p * p + q * q - 2, 24));
    let quadratic = cm1.pow(2).scale(&rat((p * p - 1) * (q * q - 1), 576));
    let constant = cm1.scale(&rat((p - q) * (p - q) * (p * q + 1), 48));
    Ok(square + linear + quadratic + constant)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiExponent {
    pub p: u32,
    pub q: u32,
    pub exp: u32,
}

/// `det A^N = K_N * prod phi_{p,q}^{P(N - pq)}` with the constant recovered
/// by exact division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KacFactorization {
    pub level: u32,
    pub constant: Rational,
    pub product: ScalarPoly,
    pub exponents: Vec<PhiExponent>,
}

/// Exponents `P(N - pq)` for all `pq <= N`, `q <= p`, ordered by `p` then `q`.
pub fn phi_exponents(level: u32) -> Vec<PhiExponent> {
    let mut out = Vec::new();
    for p in 1..=level {
        for q in 1..=p {
            if p * q <= level {
                out.push(PhiExponent {
                    p,
                    q,
                    exp: partition_count(level - p * q) as u32,
                });
            }
        }
    }
    out
}

/// `prod phi_{p,q}^{P(N - pq)}` over `pq <= N`, `q <= p`.
pub fn phi_product(level: u32) -> ScalarPoly {
    phi_exponents(level)
        .iter()
        .fold(ScalarPoly::one(), |acc, e| {
            acc * phi_pq(e.p, e.q).expect("p >= q").pow(e.exp)
        })
}

impl VermaModule {
    /// `det A^N` computed from the Gram matrix.
    pub fn kac_det_direct(&self, level: u32) -> ScalarPoly {
        self.gram(level).det()
    }

    /// Divides `det A^N` by the `phi` product and checks the quotient is a
    /// positive rational constant. Only meaningful on a symbolic module.
    pub fn kac_det_formula(&self, level: u32) -> Result<KacFactorization> {
        let det = self.kac_det_direct(level);
        let exponents = phi_exponents(level);
        let product = phi_product(level);
        let (quot, rem) = det.div_rem(&product);
        let constant = match quot.as_constant() {
            Some(k) if rem.is_zero() && k.is_positive() => k,
            _ => return Err(Error::NonconstantRatio { level: level as usize }),
        };
        Ok(KacFactorization {
            level,
            constant,
            product,
            exponents,
        })
    }
}

/// `det A^N` on the shared symbolic Verma module.
pub fn kac_det_direct(level: u32) -> ScalarPoly {
    super::shared_symbolic().kac_det_direct(level)
}

pub fn kac_det_formula(level: u32) -> Result<KacFactorization> {
    super::shared_symbolic().kac_det_formula(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn h() -> ScalarPoly {
        ScalarPoly::h()
    }

    #[test]
    fn phi_small_cases() {
        assert_eq!(phi_pq(1, 1).unwrap(), h());
        let phi21 = phi_pq(2, 1).unwrap();
        assert_eq!(phi21.eval(&int(1), &rat(1, 4)), int(0));
        // 16 phi_{2,1} = 16h^2 - 10h + 2hc + c
        assert_eq!(phi21.scale(&int(16)).to_string(), "16*h^2 + 2*c*h - 10*h + c");
        for q in 1..6 {
            assert_eq!(phi_pq(q, q).unwrap().eval_c(&int(1)), h());
        }
        assert_eq!(phi_pq(1, 2), Err(Error::InvalidPair { p: 1, q: 2 }));
        assert_eq!(phi_pq(0, 0), Err(Error::InvalidPair { p: 0, q: 0 }));
    }

    #[test]
    fn phi_degree_in_h() {
        for p in 1..6 {
            for q in 1..=p {
                let d = phi_pq(p, q).unwrap().degree_h();
                assert_eq!(d, if p == q { 1 } else { 2 });
            }
        }
    }

    #[test]
    fn low_level_factorisations() {
        let m = VermaModule::symbolic();
        let f0 = m.kac_det_formula(0).unwrap();
        assert_eq!((f0.constant, f0.product), (int(1), ScalarPoly::one()));
        let f1 = m.kac_det_formula(1).unwrap();
        assert_eq!((f1.constant, f1.product), (int(2), h()));
        let f2 = m.kac_det_formula(2).unwrap();
        assert_eq!(
            f2.product.scale(&f2.constant),
            "32*h^3 + 4*c*h^2 - 20*h^2 + 2*c*h".parse().unwrap()
        );
        assert_eq!(f2.constant, int(32));
    }

    #[test]
    fn exponents_at_level_three() {
        let e = phi_exponents(3);
        assert_eq!(
            e,
            vec![
                PhiExponent { p: 1, q: 1, exp: 2 },
                PhiExponent { p: 2, q: 1, exp: 1 },
                PhiExponent { p: 3, q: 1, exp: 1 },
            ]
        );
    }

    #[test]
    fn wrong_product_is_rejected() {
        let m = VermaModule::symbolic();
        let det = m.kac_det_direct(2);
        assert!(det.div_exact(&phi_pq(3, 1).unwrap()).is_none());
    }
}
