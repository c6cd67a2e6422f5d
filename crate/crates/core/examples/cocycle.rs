//! The Witt 2-cocycle recurrence fixes f from f(1) and f(2).

use virasoro::exact::int;
use virasoro::verma::{cocycle_check, first_failure, propagate};

fn main() {
    for (i, [a, b]) in propagate(8).iter().enumerate() {
        println!("f({}) = ({a}) f(1) + ({b}) f(2)", i + 1);
    }
    println!("span {{n, n^3}} matches: {}", cocycle_check(20));
    println!("f(n) = n^2 first fails at n = {:?}", first_failure(|n| int(n * n), 20));
}
