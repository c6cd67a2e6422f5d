//! Kac determinant: direct Bareiss elimination against the factorized formula.

use virasoro::verma::{kac_det_direct, kac_det_formula, phi_pq};

fn main() -> virasoro::Result<()> {
    for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        println!("phi_{p},{q} = {}", phi_pq(p, q)?);
    }
    for level in 0..=4 {
        let direct = kac_det_direct(level);
        let f = kac_det_formula(level)?;
        let exps: Vec<String> = f.exponents.iter().map(|e| format!("phi_{},{}^{}", e.p, e.q, e.exp)).collect();
        println!("level {level}: K = {}, det = K * {}", f.constant, exps.join(" * "));
        assert_eq!(direct, f.product.scale(&f.constant));
    }
    Ok(())
}
