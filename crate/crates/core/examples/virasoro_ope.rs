//! The T(z)T(w) operator product expansion computed from mode matrices.

use virasoro::exact::ScalarPoly;
use virasoro::formal::locality_order;
use virasoro::voa::build_voa;

fn main() -> virasoro::Result<()> {
    let voa = build_voa(ScalarPoly::c(), 6)?;
    let l = voa.virasoro_field();
    let report = locality_order(&l, &l, 6).expect("L is local with itself");
    println!("(z-w)^{} [L(z), L(w)] = 0", report.order);
    for (j, f) in report.products.iter().enumerate() {
        println!("L_({j})L = {}", voa.name_field(f)?);
    }
    Ok(())
}
