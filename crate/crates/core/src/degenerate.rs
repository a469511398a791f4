//! Games on the zero-discriminant locus.
//!
//! With unit control weights (`r1 = r2 = 1`) a double root of `g` at `k`
//! can be written down in closed form. Pick rationals `k` and `m`, then
//!
//! ```text
//! s = (m^2 - 1) / (2m),  t = (m^2 + 1) / (2m)
//! a = k (k - m) / (m s^2 + k),  w = k - a
//! q1 = 2 w t - w^2 - 1,  q2 = 2 k s - k^2
//! ```
//!
//! gives `g(k) = g'(k) = 0`. Any game can be brought to unit weights by
//! scaling each player's cost, which leaves the equilibria unchanged, so
//! `(a, q1, 1, q2, 1)` and `(a, q1 r, r, q2 r', r')` share `g` up to a
//! constant.
//!
//! The second half of the module brackets sign changes of the discriminant
//! along a one-parameter family in exact arithmetic.

use num_traits::{One, Signed, Zero};

use crate::exactalg::rational::{int, to_f64};
use crate::exactalg::Rational;
use crate::game::NormalizedGame;
use crate::solver::{build_g, classify_discriminant, solve_normalized, DeltaSign, SolveError, SolveReport};

/// A game whose `g` has a double root at `root`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleRootGame {
    pub game: NormalizedGame,
    pub root: Rational,
}

fn st(m: &Rational) -> (Rational, Rational) {
    let two_m = m * int(2);
    ((m * m - int(1)) / &two_m, (m * m + int(1)) / two_m)
}

/// The unit-weight game with a double root of `g` at `k`, or `None` when
/// the construction leaves the valid parameter range or puts `k` outside
/// `(0, a)`.
pub fn double_root_game(k: &Rational, m: &Rational) -> Option<DoubleRootGame> {
    if m.is_zero() || !k.is_positive() {
        return None;
    }
    let (s, t) = st(m);
    let den = m * &s * &s + k;
    if den.is_zero() {
        return None;
    }
    let a = k * (k - m) / den;
    let w = k - &a;
    let q1 = int(2) * &w * &t - &w * &w - int(1);
    let q2 = int(2) * k * &s - k * k;
    if !(a.is_positive() && q1.is_positive() && q2.is_positive() && *k < a) {
        return None;
    }
    Some(DoubleRootGame {
        game: NormalizedGame::canonical(a, q1, int(1), q2, int(1)),
        root: k.clone(),
    })
}

/// Double-root construction driven by `w = k - a` instead of `k`. Used to
/// hit games with a prescribed `q1` (choose `w` on the conic
/// `w^2 - 2 t w + 1 + q1 = 0`).
pub fn double_root_game_from_offset(w: &Rational, m: &Rational) -> Option<DoubleRootGame> {
    if m.is_zero() {
        return None;
    }
    let (s, t) = st(m);
    let den = m * &t * &t - w;
    if den.is_zero() {
        return None;
    }
    let k = w * m * &s * &s / den;
    double_root_game(&k, m)
}

/// Exact zero-discriminant members of the family `q1 = 1/2, r1 = 1,
/// q2 = 1`, as `(a, r2, double root)`. They come from `m = -1/2`, where
/// `t^2 - 3/2` is a rational square.
pub fn unit_family_double_roots() -> Vec<(Rational, Rational, Rational)> {
    let m = Rational::new((-1).into(), 2.into());
    [int(-1), Rational::new((-3).into(), 2.into())]
        .iter()
        .filter_map(|w| double_root_game_from_offset(w, &m))
        .filter(|d| d.game.q1 == Rational::new(1.into(), 2.into()))
        .map(|d| {
            // scale player 2 so that q2 = 1: r2 = 1 / q2
            let r2 = d.game.q2.recip();
            (d.game.a.clone(), r2, d.root)
        })
        .collect()
}

/// Exact sign of the discriminant of `g` for `game`.
pub fn delta_sign(game: &NormalizedGame) -> Result<DeltaSign, SolveError> {
    Ok(classify_discriminant(&build_g(game))?.1)
}

/// A bracket `[lo, hi]` around a sign change of the discriminant along
/// `family`. `lo == hi` when a bisection point hit the zero exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaBracket {
    pub lo: Rational,
    pub hi: Rational,
    pub sign_lo: DeltaSign,
    pub sign_hi: DeltaSign,
}

impl DeltaBracket {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Bisects `[lo, hi]` until narrower than `width`, keeping a strict sign
/// change of the discriminant inside. Returns `None` when the endpoint
/// signs do not differ.
pub fn bisect_delta_root<F>(
    family: F,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<Option<DeltaBracket>, SolveError>
where
    F: Fn(&Rational) -> NormalizedGame,
{
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let (s_lo, s_hi) = (delta_sign(&family(&lo))?, delta_sign(&family(&hi))?);
    if s_lo == s_hi || s_lo == DeltaSign::Zero || s_hi == DeltaSign::Zero {
        return Ok(None);
    }
    let two = int(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match delta_sign(&family(&mid))? {
            DeltaSign::Zero => {
                return Ok(Some(DeltaBracket {
                    lo: mid.clone(),
                    hi: mid,
                    sign_lo: DeltaSign::Zero,
                    sign_hi: DeltaSign::Zero,
                }))
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(Some(DeltaBracket {
        lo,
        hi,
        sign_lo: s_lo,
        sign_hi: s_hi,
    }))
}

/// Number of groups left after merging equilibria closer than `tol` in
/// policy space.
pub fn equilibrium_clusters(report: &SolveReport, tol: f64) -> usize {
    let mut pts: Vec<(f64, f64)> = report.equilibria.iter().map(|e| e.normalized).collect();
    pts.sort_by(|x, y| x.1.total_cmp(&y.1));
    let mut groups: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        if !groups.iter().any(|g| (g.0 - p.0).abs().max((g.1 - p.1).abs()) <= tol) {
            groups.push(p);
        }
    }
    groups.len()
}

/// Solutions on both sides of a narrow discriminant bracket.
#[derive(Debug, Clone)]
pub struct LimitWitness {
    pub bracket: DeltaBracket,
    pub at_lo: SolveReport,
    pub at_hi: SolveReport,
}

impl LimitWitness {
    /// Approximate location of the discriminant root.
    pub fn location(&self) -> f64 {
        to_f64(&((&self.bracket.lo + &self.bracket.hi) / int(2)))
    }

    /// Distinct equilibria at the root: on the side with more equilibria,
    /// the pair that merges at the root collapses into one cluster.
    pub fn clusters_at_root(&self, tol: f64) -> usize {
        let side = if self.at_lo.n_nash() >= self.at_hi.n_nash() {
            &self.at_lo
        } else {
            &self.at_hi
        };
        equilibrium_clusters(side, tol)
    }
}

pub fn limit_witness<F>(family: F, bracket: DeltaBracket) -> Result<LimitWitness, SolveError>
where
    F: Fn(&Rational) -> NormalizedGame,
{
    let at_lo = solve_normalized(&family(&bracket.lo))?;
    let at_hi = solve_normalized(&family(&bracket.hi))?;
    Ok(LimitWitness { bracket, at_lo, at_hi })
}

/// The family `q1 = 1/2, r1 = 1, q2 = 1` at fixed `r2`, parametrized by `a`.
pub fn unit_family(r2: Rational) -> impl Fn(&Rational) -> NormalizedGame {
    move |a: &Rational| {
        NormalizedGame::canonical(
            a.clone(),
            Rational::new(1.into(), 2.into()),
            Rational::one(),
            Rational::one(),
            r2.clone(),
        )
    }
}
