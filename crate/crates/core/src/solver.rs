//! The exact equilibrium pipeline.
//!
//! `normalize -> build_g -> classify_discriminant -> find_candidate_roots ->
//! recover_k1 -> verify -> denormalize`. Root existence, counting and
//! location are certified in exact arithmetic; floats appear only in the
//! reported gains and costs.

use num_traits::Signed;
use thiserror::Error;

use crate::exactalg::rational::{from_f64_exact, int, rat, to_f64, Rational};
use crate::exactalg::resultant::{discriminant, signum};
use crate::exactalg::sturm::{default_width, refine_with_chain, Bound, RootInterval, SturmChain};
use crate::exactalg::UniPoly;
use crate::game::{
    best_response, cost, denormalize_equilibrium, normalize, residuals_exact, GameError, GameParams, NormalizedGame,
    Player,
};

/// Residual tolerance at the reported floating pair.
pub const TOL_VERIFY: f64 = 1e-8;

/// `build_g` returns `G_SCALE * g` so every coefficient is free of halves.
pub const G_SCALE: i64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("elimination polynomial has degree {0:?}, expected 5")]
    DegenerateDegree(Option<usize>),
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaSign {
    Negative,
    Zero,
    Positive,
}

impl DeltaSign {
    pub fn of(r: &Rational) -> Self {
        match signum(r) {
            -1 => DeltaSign::Negative,
            0 => DeltaSign::Zero,
            _ => DeltaSign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            DeltaSign::Negative => -1,
            DeltaSign::Zero => 0,
            DeltaSign::Positive => 1,
        }
    }
}

/// The quintic elimination polynomial in `k2`, scaled by [`G_SCALE`]:
///
/// ```text
/// g(k) = a r1^2 r2^2 k^5
///      + (-5/2 a^2 r1^2 r2^2 + q2 r1^2 r2 - q1 r1 r2^2 + r1^2 r2^2) k^4
///      + (2a^3 r1^2 r2^2 - 2a q2 r1^2 r2 + 2a q1 r1 r2^2 - 2a r1^2 r2^2) k^3
///      + (-1/2 a^4 r1^2 r2^2 + a^2 q2 r1^2 r2 - a^2 q1 r1 r2^2 + a^2 r1^2 r2^2
///         + 1/2 q2^2 r1^2 - 1/2 q1^2 r2^2 - q1 r1 r2^2 - 1/2 r1^2 r2^2) k^2
///      - a q2^2 r1^2 k + 1/2 a^2 q2^2 r1^2
/// ```
pub fn build_g(norm: &NormalizedGame) -> UniPoly {
    let (a, q1, q2, r1, r2) = (&norm.a, &norm.q1, &norm.q2, &norm.r1, &norm.r2);
    let a2 = a * a;
    let rr = r1 * r1 * r2 * r2;
    let q2r1r1r2 = q2 * r1 * r1 * r2;
    let q1r1r2r2 = q1 * r1 * r2 * r2;
    let q2q2r1r1 = q2 * q2 * r1 * r1;
    let half = rat(1, 2);
    let g = [
        &half * &a2 * &q2q2r1r1,
        -(a * &q2q2r1r1),
        -(&half * &a2 * &a2 * &rr) + &a2 * &q2r1r1r2 - &a2 * &q1r1r2r2 + &a2 * &rr + &half * &q2q2r1r1
            - &half * q1 * q1 * r2 * r2
            - &q1r1r2r2
            - &half * &rr,
        int(2) * (&a2 * a * &rr - a * &q2r1r1r2 + a * &q1r1r2r2 - a * &rr),
        -(rat(5, 2) * &a2 * &rr) + &q2r1r1r2 - &q1r1r2r2 + &rr,
        a * &rr,
    ];
    let scale = int(G_SCALE);
    UniPoly::new(g.iter().map(|c| c * &scale).collect())
}

/// Exact discriminant of `g` (at whatever scale it is given) and its sign.
/// Anything but a quintic is rejected.
pub fn classify_discriminant(g: &UniPoly) -> Result<(Rational, DeltaSign), SolveError> {
    if g.degree() != Some(5) {
        return Err(SolveError::DegenerateDegree(g.degree()));
    }
    let delta = discriminant(g).map_err(|e| SolveError::InternalConsistency(e.to_string()))?;
    let sign = DeltaSign::of(&delta);
    Ok((delta, sign))
}

/// A distinct real root of `g` inside `(0, a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateRoot {
    pub interval: RootInterval,
    /// Refined to within [`default_width`] / 2 of the true root.
    pub value: Rational,
    pub approx: f64,
    pub multiplicity: usize,
}

/// Every distinct root of `g` strictly inside `(0, a)`, ascending.
/// `g(0) > 0` and `g(a) < 0` hold exactly for valid games, so neither
/// endpoint can be a root and the half-open isolation convention loses
/// nothing.
pub fn find_candidate_roots(g: &UniPoly, a: &Rational) -> Vec<CandidateRoot> {
    let chain = SturmChain::new(g);
    find_candidates_with(g, &chain, a, &default_width())
}

fn find_candidates_with(g: &UniPoly, chain: &SturmChain, a: &Rational, width: &Rational) -> Vec<CandidateRoot> {
    let lo = Bound::Finite(int(0));
    let hi = Bound::Finite(a.clone());
    crate::exactalg::sturm::isolate_with_chain(g, chain, &lo, &hi)
        .into_iter()
        .map(|iv| {
            let value = refine_with_chain(chain, &iv, width);
            CandidateRoot {
                approx: to_f64(&value),
                multiplicity: iv.multiplicity,
                value,
                interval: iv,
            }
        })
        .collect()
}

/// Player 1's gain matching a `k2` root: the admissible branch of the
/// player-1 stationarity quadratic, i.e. its best response.
pub fn recover_k1(norm: &NormalizedGame, k2: f64) -> f64 {
    best_response(norm, Player::One, k2).k_best
}

/// A verified equilibrium. `k1, k2, a_cl` are in raw game coordinates;
/// `normalized` holds the canonical-form pair.
#[derive(Debug, Clone, PartialEq)]
pub struct NashEquilibrium {
    pub k1: f64,
    pub k2: f64,
    pub a_cl: f64,
    pub j1: f64,
    pub j2: f64,
    pub residual_norm: f64,
    pub root_multiplicity: usize,
    pub normalized: (f64, f64),
    pub k2_root: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremFlags {
    /// At least one equilibrium.
    pub existence: bool,
    pub at_most_three: bool,
    /// Negative discriminant gives exactly one equilibrium and three real
    /// roots; zero discriminant gives at most two equilibria.
    pub delta_consistent: bool,
    /// At least one root below 0 and one above `a`.
    pub outer_roots: bool,
}

impl TheoremFlags {
    pub fn all(&self) -> bool {
        self.existence && self.at_most_three && self.delta_consistent && self.outer_roots
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub normalized: NormalizedGame,
    /// `G_SCALE * g`.
    pub g: UniPoly,
    /// Discriminant of the unscaled `g` (`disc(2g) / 2^8`).
    pub delta: Rational,
    pub delta_sign: DeltaSign,
    pub real_roots_total: usize,
    pub roots_below_zero: usize,
    pub roots_above_a: usize,
    pub equilibria: Vec<NashEquilibrium>,
    pub theorem_flags: TheoremFlags,
}

impl SolveReport {
    pub fn n_nash(&self) -> usize {
        self.equilibria.len()
    }
}

pub fn solve(params: &GameParams) -> Result<SolveReport, SolveError> {
    let norm = normalize(params)?;
    solve_normalized(&norm)
}

pub fn solve_normalized(norm: &NormalizedGame) -> Result<SolveReport, SolveError> {
    solve_with_width(norm, &default_width())
}

/// [`solve_normalized`] with an explicit root refinement width.
pub fn solve_with_width(norm: &NormalizedGame, width: &Rational) -> Result<SolveReport, SolveError> {
    let g = build_g(norm);
    let (delta_scaled, delta_sign) = classify_discriminant(&g)?;
    let delta = delta_scaled / int(G_SCALE.pow(8));

    let chain = SturmChain::new(&g);
    let zero = Bound::Finite(int(0));
    let a_bound = Bound::Finite(norm.a.clone());
    let real_roots_total = chain.count(&Bound::NegInf, &Bound::PosInf);
    let roots_below_zero = chain.count(&Bound::NegInf, &zero);
    let roots_above_a = chain.count(&a_bound, &Bound::PosInf);

    let g0 = g.eval(&int(0));
    let ga = g.eval(&norm.a);
    if !g0.is_positive() || !ga.is_negative() {
        return Err(SolveError::InternalConsistency(format!(
            "endpoint signs violated: g(0) = {g0}, g(a) = {ga}"
        )));
    }

    let mut equilibria = Vec::new();
    for cand in find_candidates_with(&g, &chain, &norm.a, width) {
        equilibria.push(verify_candidate(norm, &cand)?);
    }

    let n = equilibria.len();
    let theorem_flags = TheoremFlags {
        existence: n >= 1,
        at_most_three: n <= 3,
        delta_consistent: match delta_sign {
            DeltaSign::Negative => n == 1 && real_roots_total == 3,
            DeltaSign::Zero => n <= 2,
            DeltaSign::Positive => true,
        },
        outer_roots: roots_below_zero >= 1 && roots_above_a >= 1,
    };
    if !theorem_flags.all() {
        return Err(SolveError::InternalConsistency(format!(
            "theorem flags violated: {theorem_flags:?} (n = {n}, delta sign {delta_sign:?}, real roots {real_roots_total})"
        )));
    }

    Ok(SolveReport {
        normalized: norm.clone(),
        g,
        delta,
        delta_sign,
        real_roots_total,
        roots_below_zero,
        roots_above_a,
        equilibria,
        theorem_flags,
    })
}

fn verify_candidate(norm: &NormalizedGame, cand: &CandidateRoot) -> Result<NashEquilibrium, SolveError> {
    let a = norm.float().a;
    let k2 = cand.approx;
    let k1 = recover_k1(norm, k2);
    let fail = |what: String| Err(SolveError::InternalConsistency(format!("root k2 = {k2}: {what}")));

    let (r1, r2) = residuals_exact(norm, &exact(k1), &exact(k2));
    let residual_norm = to_f64(&r1).abs().max(to_f64(&r2).abs());
    // NaN fails too
    if residual_norm.is_nan() || residual_norm > TOL_VERIFY {
        return fail(format!("residual {residual_norm:e} exceeds {TOL_VERIFY:e}"));
    }
    let c = cost(norm, k1, k2);
    if !c.is_stabilizing() {
        return fail(format!("closed loop {} is not stable", c.a_cl));
    }
    let bounds_ok = 0.0 < k1 && k1 < a - k2 && a - k2 < a && 0.0 < k2 && k2 < a - k1 && a - k1 < a;
    if !bounds_ok {
        return fail(format!("gains ({k1}, {k2}) outside 0 < k_i < a - k_j < a"));
    }
    let back = best_response(norm, Player::Two, k1).k_best;
    if (back - k2).abs() > TOL_VERIFY {
        return fail(format!("not a best-response fixed point: br2(k1) = {back}"));
    }

    let (rk1, rk2) = denormalize_equilibrium(norm, (k1, k2));
    let a_cl = if norm.sign_flipped { -c.a_cl } else { c.a_cl };
    Ok(NashEquilibrium {
        k1: rk1,
        k2: rk2,
        a_cl,
        j1: c.j1,
        j2: c.j2,
        residual_norm,
        root_multiplicity: cand.multiplicity,
        normalized: (k1, k2),
        k2_root: cand.value.clone(),
    })
}

fn exact(x: f64) -> Rational {
    from_f64_exact(x).expect("finite gain")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones() -> NormalizedGame {
        NormalizedGame::canonical(int(1), int(1), int(1), int(1), int(1))
    }

    #[test]
    fn g_of_all_ones_game() {
        assert_eq!(build_g(&ones()), UniPoly::from_i64s(&[1, -2, -2, 0, -3, 2]));
    }

    #[test]
    fn g_endpoints() {
        let n = NormalizedGame::canonical(rat(7, 2), rat(1, 3), rat(5, 4), rat(9, 2), rat(2, 7));
        let g = build_g(&n);
        let (a, q1, q2, r1, r2) = (&n.a, &n.q1, &n.q2, &n.r1, &n.r2);
        assert_eq!(g.eval(&int(0)), a * a * q2 * q2 * r1 * r1);
        let ga = -(q1 * q1 * r2 * r2 / int(2) + q1 * r1 * r2 * r2 + r1 * r1 * r2 * r2 / int(2)) * a * a;
        assert_eq!(g.eval(a), ga * int(2));
    }

    #[test]
    fn classify_rejects_non_quintics() {
        assert_eq!(
            classify_discriminant(&UniPoly::from_i64s(&[1, 2, 3])),
            Err(SolveError::DegenerateDegree(Some(2)))
        );
    }

    #[test]
    fn discriminant_sign_is_scale_invariant() {
        let g = build_g(&ones());
        let (d, s) = classify_discriminant(&g).unwrap();
        let (d3, s3) = classify_discriminant(&g.scale(&rat(3, 7))).unwrap();
        assert_eq!(s, s3);
        assert_eq!(d3, d * num_traits::pow(rat(3, 7), 8));
    }

    #[test]
    fn all_ones_candidates() {
        let roots = find_candidate_roots(&build_g(&ones()), &int(1));
        assert_eq!(roots.len(), 1);
        assert!((roots[0].approx - 0.355416).abs() < 1e-6);
        assert_eq!(roots[0].multiplicity, 1);
    }

    #[test]
    fn all_ones_solve() {
        let rep = solve_normalized(&ones()).unwrap();
        assert_eq!(rep.n_nash(), 1);
        assert_eq!(rep.delta_sign, DeltaSign::Negative);
        assert_eq!(rep.delta, int(-1_294_336) / int(256));
        assert_eq!(rep.real_roots_total, 3);
        let e = &rep.equilibria[0];
        assert!((e.k1 - e.k2).abs() < 1e-15);
        assert!((e.a_cl - 0.28916).abs() < 1e-5);
        assert!((e.j1 - 1.22909).abs() < 1e-5);
    }

    #[test]
    fn recover_k1_near_a_goes_to_zero() {
        let n = ones();
        assert!(recover_k1(&n, 1.0 - 1e-9) < 1e-8);
        assert_eq!(recover_k1(&n, 1.0), 0.0);
    }

    #[test]
    fn trivial_game_signal() {
        let p = GameParams::new(int(0), int(1), int(1), int(1), int(1));
        assert_eq!(solve(&p).unwrap_err(), SolveError::Game(GameError::Trivial));
    }

    #[test]
    fn sign_flip_maps_back_by_negation() {
        let p = GameParams::new(int(-1), int(1), int(1), int(1), int(1));
        let rep = solve(&p).unwrap();
        let e = &rep.equilibria[0];
        assert!(e.k1 < 0.0 && e.k2 < 0.0);
        assert!((e.a_cl + 0.28916).abs() < 1e-5);
    }

    #[test]
    fn input_scaling_maps_back() {
        let raw = GameParams::new(int(1), int(1), int(4), int(1), int(1)).with_b(int(2), int(1));
        let rep = solve(&raw).unwrap();
        let e = &rep.equilibria[0];
        assert!((e.k1 * 2.0 - e.normalized.0).abs() < 1e-15);
        assert!((e.k1 * 2.0 - 0.355416).abs() < 1e-6);
    }
}
