#![allow(dead_code)]

use lqnash::exactalg::Rational;
use lqnash::game::{normalize, GameParams, NormalizedGame};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Log-uniform in `[1e-2, 1e2]`.
pub fn log_weight() -> impl Strategy<Value = f64> {
    (-2.0f64..=2.0).prop_map(|e| 10f64.powf(e))
}

/// `a` uniform in `(0, 4]`, weights log-uniform, unit inputs.
pub fn float_game() -> impl Strategy<Value = NormalizedGame> {
    (1e-4f64..=4.0, log_weight(), log_weight(), log_weight(), log_weight()).prop_map(|(a, q1, r1, q2, r2)| {
        normalize(&GameParams::from_f64(a, q1, r1, q2, r2).expect("finite")).expect("valid game")
    })
}

/// Small-denominator rational game with `a` in `(0, 4]` and weights in `(0, 10]`.
pub fn rational_game() -> impl Strategy<Value = NormalizedGame> {
    let w = || {
        (1i64..=40, 1i64..=4)
            .prop_map(|(n, d)| r(n, d))
            .prop_filter("<= 10", |x| *x <= r(10, 1))
    };
    (
        (1i64..=16, 1i64..=4)
            .prop_map(|(n, d)| r(n, d))
            .prop_filter("<= 4", |x| *x <= r(4, 1)),
        w(),
        w(),
        w(),
        w(),
    )
        .prop_map(|(a, q1, r1, q2, r2)| NormalizedGame::canonical(a, q1, r1, q2, r2))
}
