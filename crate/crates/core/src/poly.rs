//! Dense univariate polynomials over a [`Scalar`] field.
//!
//! The same type carries polynomials in `H` (the defining polynomial `f`,
//! its antiderivative `u`) and polynomials in the Casimir `Omega` (module
//! annihilators `g`); the variable name only matters when printing.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients are stored low-to-high; `coeffs[i]` multiplies `X^i`.
/// The zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// `X - root`.
    pub fn linear(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `X^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&(T::one() / lc.clone())),
            _ => self.clone(),
        }
    }

    /// `p(X + k)`, by Horner's rule in the shifted variable.
    pub fn shift(&self, k: &T) -> Self {
        let x_plus_k = Self::new(vec![k.clone(), T::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &x_plus_k) + &Self::constant(c.clone())
        })
    }

    pub fn shift_int(&self, k: i64) -> Self {
        self.shift(&T::from_int(k))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone() / lc.clone();
            if !c.is_zero() {
                let shift = top - dd;
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = rem[shift + i].clone() - c.clone() * dc.clone();
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// True iff `self` divides `other` exactly. Zero divides only zero.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Formats with the given variable name, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("X"))
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

/// The unique `u` with `u(X+1) - u(X) = 2 f(X)` and `u(0) = 0`.
///
/// Solved top-down: the leading term of the forward difference of
/// `c X^(m+1)` is `(m+1) c X^m`, so each step kills the current top
/// coefficient of the remaining target.
pub fn discrete_antiderivative<T: Scalar>(f: &Polynomial<T>) -> Polynomial<T> {
    let mut target = f.scale(&T::from_int(2));
    let mut u = Polynomial::zero();
    while let Some(m) = target.degree() {
        let c = target.coeffs[m].clone() / T::from_int(m as i64 + 1);
        let term = Polynomial::monomial(c, m + 1);
        let diff = &term.shift(&T::one()) - &term;
        target = &target - &diff;
        u = &u + &term;
    }
    u
}

/// Extended Euclid: returns `(g, s, t)` with `g` monic and `g = s a + t b`.
pub fn extended_gcd<T: Scalar>(
    a: &Polynomial<T>,
    b: &Polynomial<T>,
) -> Result<(Polynomial<T>, Polynomial<T>, Polynomial<T>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(), Polynomial::zero());
    let (mut t0, mut t1) = (Polynomial::zero(), Polynomial::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let inv = T::one() / r0.leading().expect("nonzero remainder").clone();
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

pub fn gcd<T: Scalar>(a: &Polynomial<T>, b: &Polynomial<T>) -> Result<Polynomial<T>> {
    Ok(extended_gcd(a, b)?.0)
}

/// Monic least common multiple; zero if either input is zero.
pub fn lcm<T: Scalar>(a: &Polynomial<T>, b: &Polynomial<T>) -> Polynomial<T> {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let g = gcd(a, b).expect("nonzero inputs");
    let (q, _) = (a * b).div_rem(&g).expect("nonzero gcd");
    q.monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Polynomial<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn shift_examples() {
        let h2 = P::from_ints(&[0, 0, 1]);
        assert_eq!(h2.shift_int(1), P::from_ints(&[1, 2, 1]));
        assert_eq!(P::zero().shift_int(5), P::zero());
        // 2(H+1)^2 - 2(H+1) = 2H^2 + 2H
        assert_eq!(P::from_ints(&[0, -2, 2]).shift_int(1), P::from_ints(&[0, 2, 2]));
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(discrete_antiderivative(&P::zero()), P::zero());
        assert_eq!(discrete_antiderivative(&P::one()), P::from_ints(&[0, 2]));
        assert_eq!(discrete_antiderivative(&P::from_ints(&[0, 2])), P::from_ints(&[0, -2, 2]));
    }

    #[test]
    fn antiderivative_of_cubic() {
        // f = H^3 - 1: hand check of the top coefficient 2/4 = 1/2
        let f = P::from_ints(&[-1, 0, 0, 1]);
        let u = discrete_antiderivative(&f);
        assert_eq!(u.degree(), Some(4));
        assert_eq!(u.coeff(4), q(1, 2));
        assert_eq!(&u.shift_int(1) - &u, f.scale(&q(2, 1)));
    }

    #[test]
    fn extended_gcd_examples() {
        let (g, s, t) = extended_gcd(&P::from_ints(&[-1, 1]), &P::from_ints(&[1, 1])).unwrap();
        assert_eq!(g, P::one());
        assert_eq!(s, P::constant(q(-1, 2)));
        assert_eq!(t, P::constant(q(1, 2)));

        let (g, s, t) = extended_gcd(&P::from_ints(&[0, 0, 1]), &P::from_ints(&[0, 1])).unwrap();
        assert_eq!((g, s, t), (P::from_ints(&[0, 1]), P::zero(), P::one()));

        // (X-1)^2 = X^2 - 2X + 1, (X-1)(X-2) = X^2 - 3X + 2.
        // By hand: a - b = X - 1, already monic, so s = 1, t = -1.
        let a = P::from_ints(&[1, -2, 1]);
        let b = P::from_ints(&[2, -3, 1]);
        let (g, s, t) = extended_gcd(&a, &b).unwrap();
        assert_eq!(g, P::from_ints(&[-1, 1]));
        assert_eq!(s, P::one());
        assert_eq!(t, P::from_ints(&[-1]));
    }

    #[test]
    fn gcd_of_zeros_is_an_error() {
        assert_eq!(extended_gcd(&P::zero(), &P::zero()), Err(Error::GcdOfZeros));
        let (g, s, t) = extended_gcd(&P::zero(), &P::from_ints(&[2, 4])).unwrap();
        assert_eq!(g, P::new(vec![q(1, 2), q(1, 1)]));
        assert_eq!(s, P::zero());
        assert_eq!(t, P::constant(q(1, 4)));
    }

    #[test]
    fn division_and_lcm() {
        let a = P::from_ints(&[-1, 0, 1]);
        let (quot, rem) = a.div_rem(&P::from_ints(&[1, 1])).unwrap();
        assert_eq!(quot, P::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        assert!(a.div_rem(&P::zero()).is_err());
        let l = lcm(&P::from_ints(&[-1, 1]), &P::from_ints(&[1, -2, 1]));
        assert_eq!(l, P::from_ints(&[1, -2, 1]));
        assert!(P::from_ints(&[-1, 1]).divides(&a));
        assert!(!P::from_ints(&[-2, 1]).divides(&a));
    }

    #[test]
    fn zero_degree_is_a_sentinel() {
        assert_eq!(P::zero().degree(), None);
        assert_eq!(P::one().degree(), Some(0));
        assert_eq!(P::new(vec![q(0, 1), q(0, 1)]), P::zero());
    }

    #[test]
    fn printing() {
        assert_eq!(P::from_ints(&[0, -2, 2]).to_string_in("H"), "2*H^2 - 2*H");
        assert_eq!(P::new(vec![q(3, 1), q(-1, 2)]).to_string_in("Omega"), "-1/2*Omega + 3");
        assert_eq!(P::from_ints(&[-1, 0, 0, 1]).to_string_in("H"), "H^3 - 1");
        assert_eq!(P::zero().to_string_in("H"), "0");
    }
}
