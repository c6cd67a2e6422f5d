//! The recurrence `(n-1) f(n+1) = (n+2) f(n) - (2n+1) f(1)` satisfied by a
//! Witt 2-cocycle `omega(L_n, L_{-n}) = f(n)` after a coboundary shift.

use crate::exact::{int, rat, Rational};

/// `(n-1) f(n+1) - (n+2) f(n) + (2n+1) f(1)`.
pub fn recurrence_residual(f: impl Fn(i64) -> Rational, n: i64) -> Rational {
    int(n - 1) * f(n + 1) - int(n + 2) * f(n) + int(2 * n + 1) * f(1)
}

/// Smallest `n` in `2..=bound` where the recurrence fails.
pub fn first_failure(f: impl Fn(i64) -> Rational, bound: i64) -> Option<i64> {
    (2..=bound).find(|&n| recurrence_residual(&f, n) != int(0))
}

/// `f(n)` for `1 <= n <= bound` as coefficient pairs on the free values
/// `(f(1), f(2))`, obtained by running the recurrence forward from `n = 2`.
pub fn propagate(bound: i64) -> Vec<[Rational; 2]> {
    let mut f: Vec<[Rational; 2]> = vec![[int(1), int(0)], [int(0), int(1)]];
    for n in 2..bound {
        let cur = &f[(n - 1) as usize];
        let next = [0, 1].map(|k| {
            let one = if k == 0 { int(1) } else { int(0) };
            (int(n + 2) * &cur[k] - int(2 * n + 1) * one) / int(n - 1)
        });
        f.push(next);
    }
    f.truncate(bound.max(0) as usize);
    f
}

/// `f(n)` in terms of `(f(1), f(2))` when `f` lies in `span{n, n^3}`.
fn span_prediction(n: i64) -> [Rational; 2] {
    let n3 = n * n * n;
    [rat(8 * n - 2 * n3, 6), rat(n3 - n, 6)]
}

/// `f(n) = n` and `f(n) = n^3` satisfy the recurrence up to `bound`, and the
/// general solution stays inside `span{n, n^3}`.
pub fn cocycle_check(bound: i64) -> bool {
    let linear = first_failure(int, bound).is_none();
    let cubic = first_failure(|n| int(n * n * n), bound).is_none();
    let spanned = propagate(bound)
        .iter()
        .enumerate()
        .all(|(i, coeffs)| *coeffs == span_prediction(i as i64 + 1));
    linear && cubic && spanned
}
