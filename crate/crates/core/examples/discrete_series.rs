//! The unitary discrete series and the vanishing of the Kac determinant there.

use virasoro::exact::{fmt_rational, int};
use virasoro::verma::{discrete_series, kac_det_direct};

fn main() {
    for m in 1..=4 {
        let s = discrete_series(m);
        let hs: Vec<String> = s.weights().iter().map(fmt_rational).collect();
        println!("m={m} c={} h in {{{}}}", fmt_rational(&s.central_charge), hs.join(", "));
        for pt in &s.points {
            let level = pt.p * pt.q;
            if level <= 4 {
                let det = kac_det_direct(level).eval(&s.central_charge, &pt.h);
                assert_eq!(det, int(0));
            }
        }
    }
}
