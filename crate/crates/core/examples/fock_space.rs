//! The Virasoro algebra on the Heisenberg Fock space.

use virasoro::exact::{int, rat};
use virasoro::fock::{fock_bracket_check, fock_l, FockMonomial, FockPoly};

fn main() -> virasoro::Result<()> {
    let vac = FockPoly::one();
    let mu = rat(1, 2);
    let l_2 = fock_l(-2, &vac, &mu);
    println!("L_-2 |mu> = {l_2}");
    println!("L_0 x1^2 = {}", fock_l(0, &FockPoly::monomial(FockMonomial::var(1, 2)), &mu));
    for mu in [int(0), rat(1, 2), int(3)] {
        for (m, n) in [(2, -2), (3, -1), (-1, -2)] {
            let r = fock_bracket_check(m, n, 6, &mu)?;
            println!("mu={mu} [L_{m}, L_{n}] on {} monomials: {}", r.checked, if r.ok() { "ok" } else { "FAIL" });
        }
    }
    Ok(())
}
