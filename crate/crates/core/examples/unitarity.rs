//! Definiteness of the Gram matrices level by level.

use virasoro::exact::{fmt_rational, int, rat};
use virasoro::verma::unitarity_classify;

fn main() {
    for (c, h) in [(rat(1, 2), rat(1, 16)), (int(1), int(0)), (int(2), int(1)), (rat(1, 2), rat(-1, 10))] {
        let verdicts = unitarity_classify(&c, &h, 5);
        let line: Vec<String> = verdicts.iter().map(|v| format!("{}:{}", v.level, v.definiteness.as_str())).collect();
        println!("c={} h={}  {}", fmt_rational(&c), fmt_rational(&h), line.join(" "));
    }
}
