//! Sturm chains, real root counting, isolation and refinement.
//!
//! Every chain is built on the square-free part of its input, so counts are
//! of distinct roots. Chain members are stored as primitive integer
//! polynomials; sign evaluation at `n/d` uses the homogenized form
//! `sum c_i n^i d^(deg-i)` and never builds a rational.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rational::{pow2_neg, Rational};

/// Extended rational endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::Finite(r)
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// An isolating interval `(lo, hi]` for one distinct real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

/// Integer polynomial for fast exact sign evaluation.
#[derive(Clone, Debug)]
struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn from_poly(p: &UniPoly) -> Self {
        IntPoly {
            coeffs: p.integer_coeffs().0,
        }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn sign_at(&self, x: &Rational) -> i8 {
        let (n, d) = (x.numer(), x.denom());
        // Horner on the homogenized polynomial: acc = acc * n + c * d^i
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        sign_of(&acc)
    }

    fn sign_at_bound(&self, b: &Bound) -> i8 {
        let lc = sign_of(self.coeffs.last().expect("nonzero"));
        match b {
            Bound::PosInf => lc,
            Bound::NegInf if self.degree() % 2 == 1 => -lc,
            Bound::NegInf => lc,
            Bound::Finite(x) => self.sign_at(x),
        }
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `p0 = sqf(p)`, `p1 = p0'`, `p(i+1) = -rem(p(i-1), p(i))`, each scaled by
/// a positive constant.
#[derive(Clone, Debug)]
pub struct SturmChain {
    sequence: Vec<UniPoly>,
    ints: Vec<IntPoly>,
    square_free_input: bool,
}

fn remainder_sequence(p0: UniPoly) -> Vec<UniPoly> {
    let mut sequence = vec![p0.clone()];
    if !p0.is_constant() {
        let mut prev = p0.clone();
        let mut cur = p0.derivative().primitive_positive();
        while !cur.is_zero() {
            sequence.push(cur.clone());
            let next = -&prev.pseudo_rem_primitive(&cur);
            prev = cur;
            cur = next;
        }
    }
    sequence
}

impl SturmChain {
    /// Panics on the zero polynomial.
    pub fn new(p: &UniPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let p0 = p.primitive_positive();
        let mut sequence = remainder_sequence(p0.clone());
        // the last member is gcd(p, p') up to a constant
        let last = sequence.last().expect("nonempty").clone();
        let square_free_input = last.is_constant();
        if !square_free_input {
            sequence = remainder_sequence(p0.div_rem(&last).0.primitive_positive());
        }
        let ints = sequence.iter().map(IntPoly::from_poly).collect();
        SturmChain {
            sequence,
            ints,
            square_free_input,
        }
    }

    /// Whether the input had only simple roots.
    pub fn square_free_input(&self) -> bool {
        self.square_free_input
    }

    pub fn sequence(&self) -> &[UniPoly] {
        &self.sequence
    }

    /// The square-free polynomial the chain starts from.
    pub fn base(&self) -> &UniPoly {
        &self.sequence[0]
    }

    pub fn sign_variations(&self, at: &Bound) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.ints {
            let s = p.sign_at_bound(at);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        if lo >= hi {
            return 0;
        }
        self.sign_variations(lo).saturating_sub(self.sign_variations(hi))
    }

    /// Sign of the square-free base at `x`.
    pub fn base_sign_at(&self, x: &Rational) -> i8 {
        self.ints[0].sign_at(x)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &UniPoly, lo: &Bound, hi: &Bound) -> usize {
    SturmChain::new(p).count(lo, hi)
}

/// A power of two strictly larger than every root magnitude
/// (Cauchy: `1 + max |c_i / c_n|`).
pub fn root_bound(p: &UniPoly) -> Rational {
    let lc = p.leading_coeff().expect("nonzero").abs();
    let n = p.degree().expect("nonzero");
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    let target = max + Rational::one();
    let mut b = Rational::one();
    while b <= target {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

/// Isolating intervals for every distinct real root of `p`, ascending.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<RootInterval> {
    isolate_real_roots_in(p, &Bound::NegInf, &Bound::PosInf)
}

/// Isolating intervals for the distinct real roots of `p` in `(lo, hi]`,
/// ascending, each a subset of `(lo, hi]` and annotated with its
/// multiplicity in `p`.
pub fn isolate_real_roots_in(p: &UniPoly, lo: &Bound, hi: &Bound) -> Vec<RootInterval> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    if p.is_constant() {
        return Vec::new();
    }
    isolate_with_chain(p, &SturmChain::new(p), lo, hi)
}

/// [`isolate_real_roots_in`] reusing a chain already built for `p`.
pub fn isolate_with_chain(p: &UniPoly, chain: &SturmChain, lo: &Bound, hi: &Bound) -> Vec<RootInterval> {
    if p.is_constant() {
        return Vec::new();
    }
    let b = root_bound(p);
    let clamp_lo = match lo {
        Bound::Finite(x) if *x > -b.clone() => x.clone(),
        _ => -b.clone(),
    };
    let clamp_hi = match hi {
        Bound::Finite(x) if *x < b => x.clone(),
        _ => b.clone(),
    };
    let mut out = Vec::new();
    if clamp_lo >= clamp_hi {
        return out;
    }
    let mut stack = vec![(clamp_lo, clamp_hi)];
    let two = Rational::from_integer(BigInt::from(2));
    while let Some((l, h)) = stack.pop() {
        let c = chain.count(&Bound::Finite(l.clone()), &Bound::Finite(h.clone()));
        match c {
            0 => {}
            1 => out.push(RootInterval {
                lo: l,
                hi: h,
                multiplicity: 1,
            }),
            _ => {
                let mid = (&l + &h) / &two;
                stack.push((mid.clone(), h));
                stack.push((l, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    if !chain.square_free_input() {
        annotate_multiplicities(p, &mut out);
    }
    out
}

fn annotate_multiplicities(p: &UniPoly, intervals: &mut [RootInterval]) {
    let factors: Vec<(SturmChain, usize)> = p
        .square_free_decomposition()
        .into_iter()
        .filter(|(_, m)| *m > 1)
        .map(|(f, m)| (SturmChain::new(&f), m))
        .collect();
    if factors.is_empty() {
        return;
    }
    for iv in intervals {
        let (lo, hi) = (Bound::Finite(iv.lo.clone()), Bound::Finite(iv.hi.clone()));
        if let Some((_, m)) = factors.iter().find(|(c, _)| c.count(&lo, &hi) == 1) {
            iv.multiplicity = *m;
        }
    }
}

/// Bisects `iv` on the square-free part of `p` until the bracket is no wider
/// than `width`, and returns its midpoint (or the exact root if a bisection
/// point lands on it). The result is within `width / 2` of the root.
pub fn refine_root(p: &UniPoly, iv: &RootInterval, width: &Rational) -> Rational {
    refine_with_chain(&SturmChain::new(p), iv, width)
}

pub(crate) fn refine_with_chain(chain: &SturmChain, iv: &RootInterval, width: &Rational) -> Rational {
    let base = chain.base();
    if base.degree() == Some(1) {
        return -base.coeff(0) / base.coeff(1);
    }
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let s_hi = chain.base_sign_at(&hi);
    if s_hi == 0 {
        return hi;
    }
    let two = Rational::from_integer(BigInt::from(2));
    // The root is simple for the base, so the sign flips exactly once
    // inside (lo, hi); the sign at lo itself is never needed.
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match chain.base_sign_at(&mid) {
            0 => return mid,
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    (lo + hi) / two
}

/// Default refinement width, `2^-60`.
pub fn default_width() -> Rational {
    pow2_neg(60)
}
