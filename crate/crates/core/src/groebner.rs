//! Buchberger's algorithm for bivariate systems over the rationals, lex
//! order with `k1 > k2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{Rational, UniPoly};
use crate::game::NormalizedGame;
use crate::solver::build_g;

/// Exponents of `k1` and `k2`. The derived order compares `k1` first, which
/// is exactly lex with `k1 > k2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub u32, pub u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0, 0);

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0 <= other.0 && self.1 <= other.1
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.max(other.0), self.1.max(other.1))
    }

    /// `other / self`; caller guarantees divisibility.
    fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0 - self.0, other.1 - self.1)
    }

    pub fn degree(&self) -> u32 {
        self.0 + self.1
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0 + other.0, self.1 + other.1)
    }
}

pub fn lex_compare(m1: &Monomial, m2: &Monomial) -> Ordering {
    m1.cmp(m2)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("operation requires nonzero polynomials")]
    ZeroInput,
    #[error("basis has no member free of k1")]
    NoUnivariateMember,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn k1() -> Self {
        Self::from_terms([(Monomial(1, 0), Rational::one())])
    }

    pub fn k2() -> Self {
        Self::from_terms([(Monomial(0, 1), Rational::one())])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([(Monomial::ONE, c)])
    }

    /// Embeds a univariate polynomial in `k2`.
    pub fn from_k2(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial(0, i as u32), c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.leading().map(|(m, _)| *m)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn sub_scaled(&mut self, other: &MultiPoly, c: &Rational, m: &Monomial) {
        for (om, oc) in &other.terms {
            self.add_term(om.times(m), -(oc * c));
        }
    }

    fn mul_term(&self, c: &Rational, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(om, oc)| (om.times(m), oc * c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.mul_term(&inv, &Monomial::ONE)
            }
        }
    }

    /// `Some` when no term involves `k1`.
    pub fn as_k2_poly(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|m| m.0 > 0) {
            return None;
        }
        let deg = self.terms.keys().map(|m| m.1).max().unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (m, v) in &self.terms {
            c[m.1 as usize] = v.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn eval(&self, k1: &Rational, k2: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            acc + c * num_traits::pow(k1.clone(), m.0 as usize) * num_traits::pow(k2.clone(), m.1 as usize)
        })
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.sub_scaled(rhs, &Rational::one(), &Monomial::ONE);
        out
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &rhs.terms {
            for (om, oc) in &self.terms {
                out.add_term(om.times(m), oc * c);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if m.0 > 0 {
                write!(f, "*k1^{}", m.0)?;
            }
            if m.1 > 0 {
                write!(f, "*k2^{}", m.1)?;
            }
        }
        Ok(())
    }
}

pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, GroebnerError> {
    let ((fm, fc), (gm, gc)) = match (f.leading(), g.leading()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GroebnerError::ZeroInput),
    };
    let l = fm.lcm(gm);
    let left = f.mul_term(&fc.recip(), &fm.quotient(&l));
    let right = g.mul_term(&gc.recip(), &gm.quotient(&l));
    Ok(&left - &right)
}

/// Full multivariate division remainder: no term of the result is
/// divisible by a leading monomial of `basis`.
pub fn reduce(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let leads: Vec<(Monomial, Rational, &MultiPoly)> = basis
        .iter()
        .filter_map(|b| b.leading().map(|(m, c)| (*m, c.clone(), b)))
        .collect();
    let mut p = f.clone();
    let mut rem = MultiPoly::zero();
    while let Some((m, c)) = p.leading().map(|(m, c)| (*m, c.clone())) {
        match leads.iter().find(|(lm, _, _)| lm.divides(&m)) {
            Some((lm, lc, b)) => p.sub_scaled(b, &(&c / lc), &lm.quotient(&m)),
            None => {
                p.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
    }
    rem
}

/// Reduced lex Gröbner basis, sorted by ascending leading monomial.
pub fn buchberger(system: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut g: Vec<MultiPoly> = system.iter().filter(|p| !p.is_zero()).map(MultiPoly::monic).collect();
    let mut pairs: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let lm = |p: &MultiPoly| p.leading_monomial().expect("nonzero basis member");
    for j in 0..g.len() {
        for i in 0..j {
            let l = lm(&g[i]).lcm(&lm(&g[j]));
            pairs.insert((l.degree(), l, i, j));
        }
    }
    while let Some(pair) = pairs.pop_first() {
        let (_, l, i, j) = pair;
        done.insert((i, j));
        let (li, lj) = (lm(&g[i]), lm(&g[j]));
        if li.times(&lj) == l {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i && k != j && lm(&g[k]).divides(&l) && done.contains(&ordered(i, k)) && done.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&g[i], &g[j]).expect("nonzero basis members");
        let r = reduce(&s, &g);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let n = g.len();
        let lr = lm(&r);
        g.push(r);
        for (k, gk) in g[..n].iter().enumerate() {
            let l = lm(gk).lcm(&lr);
            pairs.insert((l.degree(), l, k, n));
        }
    }
    reduce_basis(g)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn reduce_basis(g: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let m = p.leading_monomial().expect("nonzero");
        let redundant = g.iter().enumerate().any(|(o, q)| {
            let qm = q.leading_monomial().expect("nonzero");
            o != idx && qm.divides(&m) && (qm != m || o < idx)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<MultiPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            let lead = minimal[i].leading().map(|(m, c)| (*m, c.clone())).expect("nonzero");
            let tail = MultiPoly {
                terms: minimal[i]
                    .terms
                    .iter()
                    .filter(|(m, _)| **m != lead.0)
                    .map(|(m, c)| (*m, c.clone()))
                    .collect(),
            };
            let mut r = reduce(&tail, &others);
            r.add_term(lead.0, lead.1);
            r.monic()
        })
        .collect();
    out.sort_by_key(|p| p.leading_monomial());
    out
}

/// The basis member free of `k1`, as a monic polynomial in `k2`.
pub fn elimination_polynomial(basis: &[MultiPoly]) -> Result<UniPoly, GroebnerError> {
    basis
        .iter()
        .filter(|p| !p.is_zero())
        .find_map(MultiPoly::as_k2_poly)
        .map(|p| p.monic())
        .ok_or(GroebnerError::NoUnivariateMember)
}

/// The two stationarity polynomials of the normalized game:
/// `rho_i = (a - k_j) r_i k_i^2 + (r_i + q_i - (a - k_j)^2 r_i) k_i - (a - k_j) q_i`.
pub fn system_p(norm: &NormalizedGame) -> [MultiPoly; 2] {
    let a = MultiPoly::constant(norm.a.clone());
    let build = |ki: &MultiPoly, kj: &MultiPoly, q: &Rational, r: &Rational| {
        let u = &a - kj;
        let (qc, rc) = (MultiPoly::constant(q.clone()), MultiPoly::constant(r.clone()));
        let quad = &(&(&u * &rc) * ki) * ki;
        let lin_coeff = &(&rc + &qc) - &(&(&u * &u) * &rc);
        let lin = &lin_coeff * ki;
        let cst = &u * &qc;
        &(&quad + &lin) - &cst
    };
    let (k1, k2) = (MultiPoly::k1(), MultiPoly::k2());
    [build(&k1, &k2, &norm.q1, &norm.r1), build(&k2, &k1, &norm.q2, &norm.r2)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerCheck {
    pub basis: Vec<MultiPoly>,
    /// Monic eliminant from the basis.
    pub eliminant: UniPoly,
    /// Monic `build_g` output.
    pub expected: UniPoly,
}

impl GroebnerCheck {
    pub fn passed(&self) -> bool {
        self.eliminant == self.expected
    }
}

pub fn groebner_check(norm: &NormalizedGame) -> Result<GroebnerCheck, GroebnerError> {
    let basis = buchberger(&system_p(norm));
    let eliminant = elimination_polynomial(&basis)?;
    Ok(GroebnerCheck {
        basis,
        eliminant,
        expected: build_g(norm).monic(),
    })
}
