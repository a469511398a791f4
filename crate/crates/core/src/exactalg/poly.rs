use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{to_f64, Rational};

/// Univariate polynomial with exact rational coefficients, lowest power first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `degree()` is `None` for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// The positive rational multiple of `self` whose coefficients are
    /// coprime integers. Signs are preserved, which Sturm chains rely on.
    pub fn primitive_positive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ints, _) = self.integer_coeffs();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        Self::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    /// Coefficients multiplied by the (positive) lcm of their denominators.
    pub fn integer_coeffs(&self) -> (Vec<BigInt>, BigInt) {
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        (ints, l)
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// A positive multiple of `rem(self, divisor)` with coprime integer
    /// coefficients. Runs integer pseudo-division, so no rational is
    /// normalized inside the loop.
    pub fn pseudo_rem_primitive(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let (mut r, _) = self.integer_coeffs();
        let (d, _) = divisor.integer_coeffs();
        let lc = &d[dd];
        let mut negate = false;
        loop {
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
            let n = r.len() - 1;
            let g = r[n].gcd(lc);
            let (m, c) = (lc / &g, &r[n] / &g);
            if m.is_negative() {
                negate = !negate;
            }
            for x in r.iter_mut() {
                *x *= &m;
            }
            for (j, dj) in d.iter().enumerate() {
                r[n - dd + j] -= &c * dj;
            }
        }
        let content = r.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if content.is_zero() {
            return Self::zero();
        }
        let sign = if negate { -BigInt::one() } else { BigInt::one() };
        Self::new(
            r.into_iter()
                .map(|c| Rational::from_integer(c / &content * &sign))
                .collect(),
        )
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.pseudo_rem_primitive(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// `p / gcd(p, p')`, monic. Same roots as `p`, all simple.
    pub fn square_free_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` pairs with
    /// pairwise coprime, square-free, monic, non-constant factors whose
    /// product (with multiplicities) is `self` up to a constant.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = Self::gcd(&f, &fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = Self::gcd(&b, &d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.is_constant() {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Renders with the given variable name, highest power first.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

struct PolyDisplay<'a> {
    poly: &'a UniPoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 if show_coeff => write!(f, "*{}", self.var)?,
                1 => write!(f, "{}", self.var)?,
                _ if show_coeff => write!(f, "*{}^{i}", self.var)?,
                _ => write!(f, "{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Exact value of `p` at `x`.
pub fn poly_eval(p: &UniPoly, x: &Rational) -> Rational {
    p.eval(x)
}

pub fn poly_derivative(p: &UniPoly) -> UniPoly {
    p.derivative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn eval_examples() {
        let p = UniPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(poly_eval(&p, &int(1)), int(0));
        assert_eq!(poly_eval(&UniPoly::zero(), &int(7)), int(0));
        // 2g of the all-ones game; g(0) = 1/2
        let g2 = UniPoly::from_i64s(&[1, -2, -2, 0, -3, 2]);
        assert_eq!(poly_eval(&g2.scale(&rat(1, 2)), &int(0)), rat(1, 2));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            poly_derivative(&UniPoly::from_i64s(&[-1, 0, 1])),
            UniPoly::from_i64s(&[0, 2])
        );
        assert_eq!(poly_derivative(&UniPoly::from_i64s(&[5])), UniPoly::zero());
        let g2 = UniPoly::from_i64s(&[1, -2, -2, 0, -3, 2]);
        assert_eq!(poly_derivative(&g2), UniPoly::from_i64s(&[-2, -4, 0, -12, 10]));
    }

    #[test]
    fn trims_and_degree() {
        let p = UniPoly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UniPoly::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_identity() {
        let a = UniPoly::from_i64s(&[3, -1, 4, 1, -5, 9]);
        let b = UniPoly::new(vec![rat(1, 2), int(0), rat(-3, 7)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-1)^2 (x+2)
        let p = &UniPoly::from_i64s(&[-1, 1]).pow(2) * &UniPoly::from_i64s(&[2, 1]);
        assert_eq!(p.square_free_part(), UniPoly::from_i64s(&[-2, 1, 1]));
        let dec = p.square_free_decomposition();
        assert_eq!(
            dec,
            vec![(UniPoly::from_i64s(&[2, 1]), 1), (UniPoly::from_i64s(&[-1, 1]), 2)]
        );
        assert_eq!(
            UniPoly::gcd(&p, &UniPoly::from_i64s(&[-1, 0, 1])),
            UniPoly::from_i64s(&[-1, 1])
        );
    }

    #[test]
    fn all_ones_quintic_factors() {
        // 2g = (2k^3 - 3k^2 - 2k + 1)(k^2 + 1)
        let cubic = UniPoly::from_i64s(&[1, -2, -3, 2]);
        let quad = UniPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(&cubic * &quad, UniPoly::from_i64s(&[1, -2, -2, 0, -3, 2]));
    }

    #[test]
    fn display() {
        let p = UniPoly::new(vec![int(1), int(-2), int(0), rat(1, 2), int(-1)]);
        assert_eq!(p.display_with("k").to_string(), "-k^4 + (1/2)*k^3 - 2*k + 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
