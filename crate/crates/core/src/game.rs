//! Game parameters, normalization to the canonical `a > 0, b = 1` form,
//! closed loop and cost evaluation, best responses and the stationarity
//! residuals.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::rational::{from_f64_decimal, to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("{name} must be {requirement}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
    },
    /// `a = 0`: the unique equilibrium is `(0, 0)`.
    #[error("trivial game (a = 0): the unique equilibrium is (0, 0)")]
    Trivial,
}

/// A raw game: `x(t+1) = a x(t) + b1 u1(t) + b2 u2(t)`, `u_i = -k_i x`,
/// costs `sum q_i x^2 + r_i u_i^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameParams {
    pub a: Rational,
    pub b1: Rational,
    pub b2: Rational,
    pub q1: Rational,
    pub q2: Rational,
    pub r1: Rational,
    pub r2: Rational,
    pub x0: Rational,
}

impl GameParams {
    /// Unit input coefficients and `x0 = 1`.
    pub fn new(a: Rational, q1: Rational, r1: Rational, q2: Rational, r2: Rational) -> Self {
        GameParams {
            a,
            b1: Rational::one(),
            b2: Rational::one(),
            q1,
            q2,
            r1,
            r2,
            x0: Rational::one(),
        }
    }

    /// Builds from floats through their shortest decimal form, so `0.1`
    /// becomes exactly `1/10`.
    pub fn from_f64(a: f64, q1: f64, r1: f64, q2: f64, r2: f64) -> Result<Self, GameError> {
        let conv = |x: f64, name: &'static str| {
            from_f64_decimal(x).ok_or(GameError::InvalidParameter {
                name,
                requirement: "finite",
            })
        };
        Ok(Self::new(
            conv(a, "a")?,
            conv(q1, "q1")?,
            conv(r1, "r1")?,
            conv(q2, "q2")?,
            conv(r2, "r2")?,
        ))
    }

    pub fn with_b(mut self, b1: Rational, b2: Rational) -> Self {
        self.b1 = b1;
        self.b2 = b2;
        self
    }

    pub fn with_x0(mut self, x0: Rational) -> Self {
        self.x0 = x0;
        self
    }

    pub fn validate(&self) -> Result<(), GameError> {
        let positive = [("q1", &self.q1), ("q2", &self.q2), ("r1", &self.r1), ("r2", &self.r2)];
        for (name, v) in positive {
            if !v.is_positive() {
                return Err(GameError::InvalidParameter {
                    name,
                    requirement: "> 0",
                });
            }
        }
        for (name, v) in [("b1", &self.b1), ("b2", &self.b2)] {
            if v.is_zero() {
                return Err(GameError::InvalidParameter {
                    name,
                    requirement: "nonzero",
                });
            }
        }
        Ok(())
    }
}

/// Float copies of the normalized parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatParams {
    pub a: f64,
    pub q1: f64,
    pub q2: f64,
    pub r1: f64,
    pub r2: f64,
    pub x0: f64,
}

impl FloatParams {
    pub fn q(&self, p: Player) -> f64 {
        match p {
            Player::One => self.q1,
            Player::Two => self.q2,
        }
    }

    pub fn r(&self, p: Player) -> f64 {
        match p {
            Player::One => self.r1,
            Player::Two => self.r2,
        }
    }
}

/// Canonical game: `a > 0`, unit input coefficients, effective control
/// weights `r_i / b_i^2`. Equilibria map back through
/// [`denormalize_equilibrium`].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedGame {
    pub a: Rational,
    pub q1: Rational,
    pub q2: Rational,
    pub r1: Rational,
    pub r2: Rational,
    pub x0: Rational,
    pub sign_flipped: bool,
    pub b_scale: (Rational, Rational),
    float: FloatParams,
}

impl NormalizedGame {
    /// A game already in canonical form (`b = 1`, no flip, `x0 = 1`).
    /// Panics unless `a, q_i, r_i > 0`.
    pub fn canonical(a: Rational, q1: Rational, r1: Rational, q2: Rational, r2: Rational) -> Self {
        normalize(&GameParams::new(a.clone(), q1, r1, q2, r2))
            .ok()
            .filter(|_| a.is_positive())
            .expect("canonical game needs a, q_i, r_i > 0")
    }

    pub fn float(&self) -> &FloatParams {
        &self.float
    }

    pub fn q(&self, p: Player) -> &Rational {
        match p {
            Player::One => &self.q1,
            Player::Two => &self.q2,
        }
    }

    pub fn r(&self, p: Player) -> &Rational {
        match p {
            Player::One => &self.r1,
            Player::Two => &self.r2,
        }
    }
}

/// Folds `b_i` into the controls and weights and flips the sign of `a` if
/// needed. `a = 0` is reported as [`GameError::Trivial`].
pub fn normalize(params: &GameParams) -> Result<NormalizedGame, GameError> {
    params.validate()?;
    if params.a.is_zero() {
        return Err(GameError::Trivial);
    }
    let sign_flipped = params.a.is_negative();
    let a = params.a.abs();
    let r1 = &params.r1 / (&params.b1 * &params.b1);
    let r2 = &params.r2 / (&params.b2 * &params.b2);
    let float = FloatParams {
        a: to_f64(&a),
        q1: to_f64(&params.q1),
        q2: to_f64(&params.q2),
        r1: to_f64(&r1),
        r2: to_f64(&r2),
        x0: to_f64(&params.x0),
    };
    Ok(NormalizedGame {
        a,
        q1: params.q1.clone(),
        q2: params.q2.clone(),
        r1,
        r2,
        x0: params.x0.clone(),
        sign_flipped,
        b_scale: (params.b1.clone(), params.b2.clone()),
        float,
    })
}

/// Maps a normalized pair back to raw gains: `k_i = s * k~_i / b_i`,
/// `s = -1` when the sign of `a` was flipped.
pub fn denormalize_equilibrium(norm: &NormalizedGame, pair: (f64, f64)) -> (f64, f64) {
    let s = if norm.sign_flipped { -1.0 } else { 1.0 };
    (
        s * pair.0 / to_f64(&norm.b_scale.0),
        s * pair.1 / to_f64(&norm.b_scale.1),
    )
}

/// Exact counterpart of [`denormalize_equilibrium`].
pub fn denormalize_exact(norm: &NormalizedGame, pair: (&Rational, &Rational)) -> (Rational, Rational) {
    let (k1, k2) = (pair.0 / &norm.b_scale.0, pair.1 / &norm.b_scale.1);
    if norm.sign_flipped {
        (-k1, -k2)
    } else {
        (k1, k2)
    }
}

pub fn closed_loop(a: f64, k1: f64, k2: f64) -> f64 {
    a - k1 - k2
}

/// Infinite-horizon costs. Outside the stabilizing set (`|a_cl| >= 1`)
/// both costs are `f64::INFINITY`; that is a value, not an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostReport {
    pub j1: f64,
    pub j2: f64,
    pub a_cl: f64,
}

impl CostReport {
    pub fn is_stabilizing(&self) -> bool {
        self.a_cl.abs() < 1.0
    }

    pub fn of(&self, p: Player) -> f64 {
        match p {
            Player::One => self.j1,
            Player::Two => self.j2,
        }
    }
}

pub fn cost(norm: &NormalizedGame, k1: f64, k2: f64) -> CostReport {
    let f = norm.float();
    let a_cl = closed_loop(f.a, k1, k2);
    if a_cl.abs() >= 1.0 {
        return CostReport {
            j1: f64::INFINITY,
            j2: f64::INFINITY,
            a_cl,
        };
    }
    let denom = 1.0 - a_cl * a_cl;
    let x2 = f.x0 * f.x0;
    CostReport {
        j1: (f.q1 + f.r1 * k1 * k1) / denom * x2,
        j2: (f.q2 + f.r2 * k2 * k2) / denom * x2,
        a_cl,
    }
}

/// One evaluation of the best-response map of `player` against `k_other`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestResponseEval {
    pub k_other: f64,
    /// `s = (((a - k_other)^2 - 1) r + q)^2 + 4 q r`
    pub s_value: f64,
    /// Positive root of the scalar Riccati equation.
    pub p_value: f64,
    pub k_best: f64,
    /// Rounding bound on `k_best` from the square root and the ratio.
    pub abs_error_bound: f64,
}

/// Closed-form best response
/// `(a - k) (((a-k)^2 - 1) r + q + sqrt(s)) / (((a-k)^2 + 1) r + q + sqrt(s))`.
pub fn best_response(norm: &NormalizedGame, player: Player, k_other: f64) -> BestResponseEval {
    best_response_f(norm.float(), player, k_other)
}

pub fn best_response_f(f: &FloatParams, player: Player, k_other: f64) -> BestResponseEval {
    let (q, r) = (f.q(player), f.r(player));
    let u = f.a - k_other;
    let m = (u * u - 1.0) * r + q;
    let s = m * m + 4.0 * q * r;
    let sq = s.sqrt();
    // m + sqrt(s), rewritten when m < 0 to avoid cancellation
    let n = if m >= 0.0 { m + sq } else { 4.0 * q * r / (sq - m) };
    let p_value = 0.5 * n;
    let k_best = u * (n / (n + 2.0 * r));
    BestResponseEval {
        k_other,
        s_value: s,
        p_value,
        k_best,
        abs_error_bound: 8.0 * f64::EPSILON * k_best.abs(),
    }
}

/// Residuals of the two stationarity polynomials
/// `(a-k_j) r_i k_i^2 + (r_i + q_i - (a-k_j)^2 r_i) k_i - (a-k_j) q_i`.
pub fn residuals(norm: &NormalizedGame, k1: f64, k2: f64) -> (f64, f64) {
    let f = norm.float();
    let rho = |ki: f64, kj: f64, q: f64, r: f64| {
        let u = f.a - kj;
        u * r * ki * ki + (r + q - u * u * r) * ki - u * q
    };
    (rho(k1, k2, f.q1, f.r1), rho(k2, k1, f.q2, f.r2))
}

/// Exact residuals at rational gains.
pub fn residuals_exact(norm: &NormalizedGame, k1: &Rational, k2: &Rational) -> (Rational, Rational) {
    let rho = |ki: &Rational, kj: &Rational, q: &Rational, r: &Rational| {
        let u = &norm.a - kj;
        &u * r * ki * ki + (r + q - &u * &u * r) * ki - u * q
    };
    (rho(k1, k2, &norm.q1, &norm.r1), rho(k2, k1, &norm.q2, &norm.r2))
}
