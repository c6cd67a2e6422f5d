//! Gram matrices of the Shapovalov form, symbolic and at a point.

use virasoro::exact::rat;
use virasoro::verma::{shapovalov, Partition, VermaModule};

fn main() {
    let v = VermaModule::symbolic();
    for level in 1..=3 {
        let g = v.gram(level);
        println!("level {level}, basis {:?}", g.basis.iter().map(ToString::to_string).collect::<Vec<_>>());
        for row in g.matrix.to_rows() {
            println!("  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | "));
        }
    }
    let l2 = Partition::new(vec![2]);
    println!("<L_-2 v, L_-2 v> = {}", shapovalov(&l2, &l2));
    let at = v.gram(2).eval(&rat(1, 2), &rat(1, 16));
    println!("level 2 at c=1/2, h=1/16: rank {} of {}", at.rank(), at.rows());
}
