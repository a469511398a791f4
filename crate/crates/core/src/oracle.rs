//! Brute-force cross-checks that never use the elimination polynomial:
//! composed best-response iteration, a residual grid scan with Newton
//! polishing, resultant elimination, and trajectory simulation.

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::resultant::sylvester_layout;
use crate::exactalg::sturm::{sturm_count, Bound};
use crate::exactalg::{Rational, UniPoly};
use crate::game::{best_response, closed_loop, FloatParams, NormalizedGame, Player};
use crate::solver::build_g;

/// Deduplication radius in policy space.
pub const DEDUP_TOL: f64 = 1e-6;
pub const DEFAULT_GRID: usize = 512;
pub const NEWTON_MAX_ITER: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("resultant in k1 vanishes identically")]
    ResultantVanishes,
}

/// `br1(br2(x)) - x`.
pub fn h_eval(norm: &NormalizedGame, x: f64) -> f64 {
    let k2 = best_response(norm, Player::Two, x).k_best;
    best_response(norm, Player::One, k2).k_best - x
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrIterationReport {
    pub converged: bool,
    pub iterations: usize,
    /// Last iterate `x` and `br2(x)`.
    pub k1: f64,
    pub k2: f64,
    pub last_step: f64,
}

/// Iterates `x <- br1(br2(x))` from `k_start`. Stops when a step is
/// shorter than `tol`; otherwise reports the last iterate with
/// `converged = false`.
pub fn br_iteration(norm: &NormalizedGame, k_start: f64, max_iter: usize, tol: f64) -> BrIterationReport {
    assert!(
        max_iter >= 1 && tol > 0.0,
        "br_iteration needs max_iter >= 1 and tol > 0"
    );
    let mut x = k_start;
    let mut step = f64::INFINITY;
    for it in 1..=max_iter {
        let next = h_eval(norm, x) + x;
        step = (next - x).abs();
        x = next;
        if step < tol {
            let k2 = best_response(norm, Player::Two, x).k_best;
            return BrIterationReport {
                converged: true,
                iterations: it,
                k1: x,
                k2,
                last_step: step,
            };
        }
    }
    let k2 = best_response(norm, Player::Two, x).k_best;
    BrIterationReport {
        converged: false,
        iterations: max_iter,
        k1: x,
        k2,
        last_step: step,
    }
}

/// Deliberate oracle corruption, used to prove that disagreement is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of the constant term of the player-1 residual.
    NegatedResidual,
}

#[derive(Debug, Clone, Copy)]
struct Residuals {
    f: FloatParams,
    fault: Option<Fault>,
}

impl Residuals {
    fn rho_i(&self, ki: f64, kj: f64, q: f64, r: f64, negate_const: bool) -> f64 {
        let u = self.f.a - kj;
        let c = if negate_const { u * q } else { -u * q };
        u * r * ki * ki + (r + q - u * u * r) * ki + c
    }

    fn eval(&self, k1: f64, k2: f64) -> (f64, f64) {
        let neg = self.fault == Some(Fault::NegatedResidual);
        (
            self.rho_i(k1, k2, self.f.q1, self.f.r1, neg),
            self.rho_i(k2, k1, self.f.q2, self.f.r2, false),
        )
    }

    /// Partial derivatives `[d/dk_i, d/dk_j]` of `rho_i`.
    fn grad_i(&self, ki: f64, kj: f64, q: f64, r: f64, negate_const: bool) -> (f64, f64) {
        let u = self.f.a - kj;
        let dconst = if negate_const { -q } else { q };
        (
            2.0 * u * r * ki + r + q - u * u * r,
            -r * ki * ki + 2.0 * u * r * ki + dconst,
        )
    }

    fn scale(&self) -> f64 {
        let f = &self.f;
        (1.0 + f.a * f.a) * (1.0 + f.a) * (f.q1 + f.r1 + f.q2 + f.r2)
    }

    fn jacobian(&self, k1: f64, k2: f64) -> [[f64; 2]; 2] {
        let neg = self.fault == Some(Fault::NegatedResidual);
        let (a11, a12) = self.grad_i(k1, k2, self.f.q1, self.f.r1, neg);
        let (a22, a21) = self.grad_i(k2, k1, self.f.q2, self.f.r2, false);
        [[a11, a12], [a21, a22]]
    }
}

fn norm2(r: (f64, f64)) -> f64 {
    r.0.hypot(r.1)
}

/// Damped Newton on `(rho1, rho2)`: the step is halved while it increases
/// the residual. `None` if the iteration neither settles nor reaches a
/// small residual.
fn newton(res: &Residuals, start: (f64, f64), step_tol: f64) -> Option<(f64, f64)> {
    let (mut k1, mut k2) = start;
    let mut r = res.eval(k1, k2);
    for _ in 0..NEWTON_MAX_ITER {
        let j = res.jacobian(k1, k2);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let d1 = (r.0 * j[1][1] - r.1 * j[0][1]) / det;
        let d2 = (r.1 * j[0][0] - r.0 * j[1][0]) / det;
        let mut t = 1.0;
        let base = norm2(r);
        let (mut n1, mut n2, mut nr) = (k1 - d1, k2 - d2, res.eval(k1 - d1, k2 - d2));
        while norm2(nr) > base && t > 1e-6 {
            t *= 0.5;
            n1 = k1 - t * d1;
            n2 = k2 - t * d2;
            nr = res.eval(n1, n2);
        }
        let moved = (n1 - k1).abs().max((n2 - k2).abs());
        (k1, k2, r) = (n1, n2, nr);
        if !(k1.is_finite() && k2.is_finite()) {
            return None;
        }
        if moved <= step_tol {
            return Some((k1, k2));
        }
    }
    // slow linear convergence at a multiple root still lands on it
    (norm2(r) <= 1e-12 * res.scale()).then_some((k1, k2))
}

fn sign_changes(v: [f64; 4]) -> bool {
    let pos = v.iter().any(|x| *x > 0.0);
    let neg = v.iter().any(|x| *x < 0.0);
    let zero = v.contains(&0.0);
    (pos && neg) || zero
}

/// Equilibria found by scanning an `n x n` grid over `(0, a)^2` for cells
/// where both residuals change sign, then polishing each cell centre with
/// damped Newton. Results lie in the admissible set
/// `0 < k_i < a - k_j < a`, are stabilizing, are deduplicated within
/// [`DEDUP_TOL`] and sorted by `k2`.
pub fn grid_scan(norm: &NormalizedGame, n: usize) -> Vec<(f64, f64)> {
    grid_scan_with(norm, n, None)
}

pub fn grid_scan_with(norm: &NormalizedGame, n: usize, fault: Option<Fault>) -> Vec<(f64, f64)> {
    assert!(n >= 16, "grid resolution must be at least 16");
    let res = Residuals {
        f: *norm.float(),
        fault,
    };
    let a = res.f.a;
    let h = a / n as f64;
    let at = |i: usize| if i == n { a } else { i as f64 * h };
    let mut corners = vec![(0.0, 0.0); (n + 1) * (n + 1)];
    for i in 0..=n {
        for j in 0..=n {
            corners[i * (n + 1) + j] = res.eval(at(i), at(j));
        }
    }
    let c = |i: usize, j: usize| corners[i * (n + 1) + j];
    let step_tol = 1e-14 * a.max(1.0);
    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // the admissible region is the triangle k1 + k2 < a
            if i + j > n {
                continue;
            }
            let cs = [c(i, j), c(i + 1, j), c(i, j + 1), c(i + 1, j + 1)];
            if !sign_changes(cs.map(|x| x.0)) || !sign_changes(cs.map(|x| x.1)) {
                continue;
            }
            let start = ((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
            let Some((k1, k2)) = newton(&res, start, step_tol) else {
                continue;
            };
            let admissible = 0.0 < k1 && k1 < a - k2 && a - k2 < a && 0.0 < k2 && k2 < a - k1 && a - k1 < a;
            if !admissible || closed_loop(a, k1, k2).abs() >= 1.0 {
                continue;
            }
            if !found
                .iter()
                .any(|&(x, y)| (x - k1).abs().max((y - k2).abs()) <= DEDUP_TOL)
            {
                found.push((k1, k2));
            }
        }
    }
    found.sort_by(|x, y| x.1.total_cmp(&y.1));
    found
}

/// `rho1` and `rho2` as polynomials in `k1` with coefficients in `k2`,
/// highest power first.
fn system_in_k1(norm: &NormalizedGame) -> [Vec<UniPoly>; 2] {
    let (a, q1, q2, r1, r2) = (&norm.a, &norm.q1, &norm.q2, &norm.r1, &norm.r2);
    let k2 = UniPoly::x();
    let c = |x: &Rational| UniPoly::constant(x.clone());
    let u = &c(a) - &k2;
    let rho1 = vec![&u * &c(r1), &(&c(r1) + &c(q1)) - &(&(&u * &u) * &c(r1)), -(&u * &c(q1))];
    // rho2 = -r2 k2 k1^2 + (-r2 k2^2 + 2a r2 k2 + q2) k1 + (a r2 k2^2 + (r2 + q2 - a^2 r2) k2 - a q2)
    let k2sq = &k2 * &k2;
    let lead = -(&k2 * &c(r2));
    let mid = &(&(&c(&(a + a)) * &c(r2)) * &k2) + &(&c(q2) - &(&k2sq * &c(r2)));
    let low = &(&(&c(&(a * r2)) * &k2sq) + &(&c(&(r2 + q2 - a * a * r2)) * &k2)) - &c(&(a * q2));
    [rho1, vec![lead, mid, low]]
}

/// `Res_{k1}(rho1, rho2)` as a polynomial in `k2` of degree at most 9.
pub fn resultant_elimination(norm: &NormalizedGame) -> Result<UniPoly, OracleError> {
    let [p1, p2] = system_in_k1(norm);
    let m = sylvester_layout(&p1, &p2, &UniPoly::zero());
    let det = laplace_det(&m);
    if det.is_zero() {
        return Err(OracleError::ResultantVanishes);
    }
    Ok(det)
}

fn laplace_det(m: &[Vec<UniPoly>]) -> UniPoly {
    match m.len() {
        0 => UniPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = UniPoly::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<UniPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &laplace_det(&minor);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Exact containment: `gcd(resultant, g)` has exactly as many distinct roots
/// in `(0, a)` as `g`, so every candidate root of `g` is a root of the
/// resultant.
pub fn resultant_contains_g_roots(norm: &NormalizedGame) -> Result<bool, OracleError> {
    let res = resultant_elimination(norm)?;
    let g = build_g(norm);
    let common = UniPoly::gcd(&res, &g);
    let (lo, hi) = (Bound::Finite(Rational::zero()), Bound::Finite(norm.a.clone()));
    let in_g = sturm_count(&g, &lo, &hi);
    let in_common = if common.is_constant() {
        0
    } else {
        sturm_count(&common, &lo, &hi)
    };
    Ok(in_common == in_g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: usize,
    pub x: f64,
    pub u1: f64,
    pub u2: f64,
    /// Sum of stage costs over times `0..=t`.
    pub partial_cost_1: f64,
    pub partial_cost_2: f64,
}

/// Closed-loop trajectory for `t = 0..horizon`. For a stabilizing pair the
/// final partial sums are within
/// `(q_i + r_i k_i^2) x0^2 a_cl^(2T) / (1 - a_cl^2)` of the infinite-horizon
/// cost.
pub fn simulate_cost(norm: &NormalizedGame, k1: f64, k2: f64, horizon: usize, x0: f64) -> Vec<TrajectorySample> {
    assert!(horizon >= 1, "horizon must be at least 1");
    let f = norm.float();
    let a_cl = closed_loop(f.a, k1, k2);
    let (w1, w2) = (f.q1 + f.r1 * k1 * k1, f.q2 + f.r2 * k2 * k2);
    let mut out = Vec::with_capacity(horizon);
    let (mut x, mut c1, mut c2) = (x0, 0.0, 0.0);
    for t in 0..horizon {
        c1 += w1 * x * x;
        c2 += w2 * x * x;
        out.push(TrajectorySample {
            t,
            x,
            u1: -k1 * x,
            u2: -k2 * x,
            partial_cost_1: c1,
            partial_cost_2: c2,
        });
        x *= a_cl;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};
    use crate::game::cost;

    fn ones() -> NormalizedGame {
        NormalizedGame::canonical(int(1), int(1), int(1), int(1), int(1))
    }

    const K_STAR: f64 = 0.355416;

    #[test]
    fn h_examples() {
        let n = ones();
        assert!(h_eval(&n, 0.0) > 0.0);
        assert!(h_eval(&n, 1.0) < 0.0);
        assert!(h_eval(&n, 0.3554163).abs() < 1e-6);
    }

    #[test]
    fn br_iteration_examples() {
        let n = ones();
        let rep = br_iteration(&n, 0.0, 200, 1e-14);
        assert!(rep.converged);
        assert!((rep.k1 - K_STAR).abs() < 1e-6 && (rep.k2 - K_STAR).abs() < 1e-6);
        let (r1, r2) = crate::game::residuals(&n, rep.k1, rep.k2);
        assert!(r1.abs().max(r2.abs()) <= 10.0 * 1e-14);
        assert_eq!(best_response(&n, Player::Two, 1.0).k_best, 0.0);
        let one = br_iteration(&n, 1.0, 1, 1e-300);
        assert!(!one.converged);
        assert!((one.k1 - best_response(&n, Player::One, 0.0).k_best).abs() < 1e-15);
    }

    #[test]
    fn grid_scan_all_ones() {
        let found = grid_scan(&ones(), 256);
        assert_eq!(found.len(), 1);
        assert!((found[0].0 - K_STAR).abs() < 1e-6 && (found[0].1 - K_STAR).abs() < 1e-6);
    }

    #[test]
    fn injected_fault_changes_the_answer() {
        let found = grid_scan_with(&ones(), 64, Some(Fault::NegatedResidual));
        assert!(found
            .iter()
            .all(|&(x, y)| (x - K_STAR).abs().max((y - K_STAR).abs()) > DEDUP_TOL));
    }

    #[test]
    fn system_in_k1_matches_residuals() {
        let n = NormalizedGame::canonical(rat(5, 2), rat(1, 3), int(2), rat(3, 2), rat(1, 5));
        let [p1, p2] = system_in_k1(&n);
        let (k1, k2) = (rat(2, 9), rat(3, 7));
        let ev = |p: &[UniPoly]| p.iter().fold(Rational::zero(), |acc, c| acc * &k1 + c.eval(&k2));
        let (e1, e2) = crate::game::residuals_exact(&n, &k1, &k2);
        assert_eq!(ev(&p1), e1);
        assert_eq!(ev(&p2), e2);
    }

    #[test]
    fn resultant_examples() {
        let n = ones();
        let res = resultant_elimination(&n).unwrap();
        assert!(res.degree().unwrap() <= 9);
        assert!(res.eval_f64(0.3554163).abs() < 1e-5);
        assert!(resultant_contains_g_roots(&n).unwrap());
    }

    #[test]
    fn simulation_examples() {
        let n = ones();
        let traj = simulate_cost(&n, 0.5, 0.5, 10, 1.0);
        assert!(traj[1..].iter().all(|s| s.partial_cost_1 == traj[0].partial_cost_1));
        let k = 0.35541634;
        let traj = simulate_cost(&n, k, k, 200, 1.0);
        let last = traj.last().unwrap();
        assert!((last.partial_cost_1 - cost(&n, k, k).j1).abs() < 1e-10);
        assert!((last.partial_cost_1 - 1.22909).abs() < 1e-5);
        let unstable = simulate_cost(&n, -0.5, 0.0, 50, 1.0);
        assert!(unstable.windows(2).all(|w| w[1].partial_cost_1 > w[0].partial_cost_1));
        assert!(unstable.last().unwrap().partial_cost_1 > 1e6);
    }
}
