//! Singular vectors in the kernel of the Gram matrix, and the graded
//! dimensions of the irreducible quotient.

use virasoro::exact::{int, rat};
use virasoro::verma::{quotient_graded_dims, singular_vectors, VermaModule};

fn main() {
    let (c, h) = (rat(1, 2), rat(1, 16));
    let module = VermaModule::at(&c, &h);
    for v in singular_vectors(&c, &h, 2) {
        let terms: Vec<String> = v.terms().map(|(p, q)| format!("({q}) {p}")).collect();
        println!("level 2: {}", terms.join(" + "));
        assert!(module.act(1, &v).is_zero() && module.act(2, &v).is_zero());
    }
    println!("L(1/2, 1/16): {:?}", quotient_graded_dims(&c, &h, 8));
    println!("L(1, 0):      {:?}", quotient_graded_dims(&int(1), &int(0), 8));
}
