mod common;

use common::{float_game, r, rational_game};
use lqnash::exactalg::rational::to_f64;
use lqnash::exactalg::Rational;
use lqnash::game::{best_response, cost, residuals, NormalizedGame, Player};
use lqnash::solver::{solve_normalized, TOL_VERIFY};
use proptest::prelude::*;

fn player() -> impl Strategy<Value = Player> {
    prop_oneof![Just(Player::One), Just(Player::Two)]
}

fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn cost_of(norm: &NormalizedGame, p: Player, ki: f64, kj: f64) -> f64 {
    match p {
        Player::One => cost(norm, ki, kj).j1,
        Player::Two => cost(norm, kj, ki).j2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn best_response_sign_and_magnitude(g in float_game(), p in player(), t in -2.0f64..3.0) {
        let a = g.float().a;
        let k_other = t * a;
        let u = a - k_other;
        let k = best_response(&g, p, k_other).k_best;
        if u == 0.0 {
            prop_assert_eq!(k, 0.0);
        } else {
            prop_assert_eq!(k.signum(), u.signum());
            prop_assert!(k.abs() < u.abs());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn best_response_solves_the_riccati_relation(g in float_game(), p in player(), t in -1.0f64..2.0) {
        let k_other = t * g.float().a;
        let e = best_response(&g, p, k_other);
        let r = g.float().r(p);
        let lhs = e.k_best * (r + e.p_value);
        let rhs = (g.float().a - k_other) * e.p_value;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE));
    }

    /// Pick `u`, `r` and the Riccati value `p`, then solve for the `q` that
    /// makes `p` exact: `q = p - u^2 r p / (r + p)`. The best response is then
    /// the rational `u p / (r + p)`.
    #[test]
    fn best_response_matches_exact_rational_cases(
        un in 1i64..60, ud in 1i64..8, rn in 1i64..40, rd in 1i64..8, pn in 1i64..80, pd in 1i64..8,
    ) {
        let (u, rr) = (r(un, ud), r(rn, rd));
        // q > 0 needs p > r (u^2 - 1)
        let floor = (&rr * (&u * &u - r(1, 1))).max(r(0, 1));
        let pp = floor + r(pn, pd);
        let q = &pp - &u * &u * &rr * &pp / (&rr + &pp);
        let a = u.clone() + r(1, 3);
        let g = NormalizedGame::canonical(a, q.clone(), rr.clone(), q, rr.clone());
        let exact = to_f64(&(&u * &pp / (&rr + &pp)));
        let got = best_response(&g, Player::One, 1.0 / 3.0).k_best;
        prop_assert!((got - exact).abs() <= 1e-12 * exact.abs());
    }

    #[test]
    fn cost_gradient_vanishes_only_at_best_response(g in float_game(), p in player(), t in 0.0f64..1.0) {
        let a = g.float().a;
        let kj = t * a;
        let kbest = best_response(&g, p, kj).k_best;
        let f = |k: f64| cost_of(&g, p, k, kj);
        let d0 = central_diff(f, kbest, 1e-6);
        let scale = f(kbest).max(1.0);
        prop_assert!(d0.abs() < 1e-4 * scale, "derivative {} at best response", d0);
        // away from the best response the slope points back towards it
        for (dk, sign) in [(-1e-2, -1.0), (1e-2, 1.0)] {
            let k = kbest + dk;
            if cost(&g, k, kj).is_stabilizing() && cost(&g, k + 1e-6, kj).is_stabilizing() && cost(&g, k - 1e-6, kj).is_stabilizing() {
                prop_assert_eq!(central_diff(f, k, 1e-6).signum(), sign);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn equilibria_are_isolated_zeros_of_the_residuals(g in rational_game()) {
        let rep = solve_normalized(&g).unwrap();
        for e in &rep.equilibria {
            let (k1, k2) = e.normalized;
            let (r1, r2) = residuals(&g, k1, k2);
            prop_assert!(r1.abs().max(r2.abs()) <= TOL_VERIFY);
            prop_assert!(cost(&g, k1, k2).is_stabilizing());
            for (d1, d2) in [(1e-3, 0.0), (-1e-3, 0.0), (0.0, 1e-3), (0.0, -1e-3)] {
                let (p1, p2) = residuals(&g, k1 + d1, k2 + d2);
                prop_assert!(p1.abs().max(p2.abs()) > TOL_VERIFY);
            }
        }
    }
}

#[test]
fn x0_scales_costs_only() {
    let base = NormalizedGame::canonical(r(3, 2), r(1, 2), r(2, 1), r(1, 1), r(1, 3));
    let p = lqnash::game::GameParams::new(r(3, 2), r(1, 2), r(2, 1), r(1, 1), r(1, 3))
        .with_x0(Rational::from_integer(3.into()));
    let scaled = lqnash::game::normalize(&p).unwrap();
    let a = solve_normalized(&base).unwrap();
    let b = solve_normalized(&scaled).unwrap();
    assert_eq!(a.n_nash(), b.n_nash());
    for (x, y) in a.equilibria.iter().zip(&b.equilibria) {
        assert_eq!(x.normalized, y.normalized);
        assert!((y.j1 - 9.0 * x.j1).abs() <= 1e-12 * y.j1);
    }
}
