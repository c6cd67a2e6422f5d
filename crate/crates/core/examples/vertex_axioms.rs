//! Vertex algebra axioms on the truncated vacuum module, symbolic in c.

use virasoro::exact::{rat, ScalarPoly};
use virasoro::voa::{build_voa, quotient_voa_dims, verify_all};

fn main() -> virasoro::Result<()> {
    let voa = build_voa(ScalarPoly::c(), 5)?;
    for r in verify_all(&voa, 2) {
        println!("{:<16} checked {:>5}  {}", r.axiom, r.checked, if r.ok() { "ok" } else { "FAIL" });
    }
    println!("dims of L(1/2, 0): {:?}", quotient_voa_dims(&rat(1, 2), 8));
    Ok(())
}
