//! Identities of the formal delta function on a finite coefficient window.

use virasoro::exact::int;
use virasoro::formal::{delta_derivative, delta_identity_suite, Laurent};

fn main() -> virasoro::Result<()> {
    let d1 = delta_derivative(6, 1);
    println!("D^(1) delta at z^-2 w^0: {:?}", d1.coeff(-2, 0).map(ToString::to_string));
    let f: Laurent = [(2, int(1)), (-1, int(3))].into_iter().collect();
    let report = delta_identity_suite(12, 4, &f)?;
    for c in &report.checks {
        println!("{:<40} {:>5} {}", c.name, c.compared, if c.ok() { "ok" } else { "FAIL" });
    }
    Ok(())
}
