//! Square-free decomposition and rational-root splitting over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{gcd, Polynomial};
use crate::scalar::Scalar;

/// Beyond this size we do not enumerate divisors for the rational root test.
const DIVISOR_SEARCH_LIMIT: u64 = 100_000_000_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Factor<T> {
    pub poly: Polynomial<T>,
    pub multiplicity: u32,
    /// Proven irreducible over the rationals. Only linear factors ever are.
    pub certified_irreducible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactoredPoly<T> {
    pub unit: T,
    pub factors: Vec<Factor<T>>,
}

impl<T: Scalar> FactoredPoly<T> {
    pub fn expand(&self) -> Polynomial<T> {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, f| {
                &acc * &f.poly.pow(f.multiplicity)
            })
    }

    /// A single (not necessarily irreducible) factor, possibly repeated.
    pub fn is_primary(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|f| f.poly.degree() == Some(1))
    }

    pub fn all_certified(&self) -> bool {
        self.factors.iter().all(|f| f.certified_irreducible)
    }
}

/// Yun's square-free decomposition of a monic polynomial: `(part, i)` with
/// the parts square-free, pairwise coprime, and `g = prod part_i^i`.
fn square_free<T: Scalar>(g: &Polynomial<T>) -> Vec<(Polynomial<T>, u32)> {
    let mut out = Vec::new();
    if g.degree() == Some(0) {
        return out;
    }
    let dg = g.derivative();
    let a0 = gcd(g, &dg).expect("g is nonzero");
    let mut b = g.div_rem(&a0).expect("nonzero").0;
    let c = dg.div_rem(&a0).expect("nonzero").0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() != Some(0) {
        let a = gcd(&b, &d).expect("b is nonconstant");
        b = b.div_rem(&a).expect("nonzero").0;
        let c = d.div_rem(&a).expect("nonzero").0;
        d = &c - &b.derivative();
        if a.degree() != Some(0) {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n <= DIVISOR_SEARCH_LIMIT)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(BigInt::from(k));
            if k * k != n {
                large.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational roots of a square-free polynomial, ascending. `None` when the
/// coefficients are too large for the divisor search.
fn rational_roots<T: Scalar>(p: &Polynomial<T>) -> Option<Vec<BigRational>> {
    let coeffs: Vec<BigRational> = p.coeffs().iter().map(Scalar::to_big_rational).collect();
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero())?;
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let ints = &ints[low..];
    if ints.len() > 1 {
        let nums = positive_divisors(&ints[0])?;
        let dens = positive_divisors(ints.last().expect("nonempty"))?;
        let eval = |x: &BigRational| {
            ints.iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
        };
        let mut found: Vec<BigRational> = Vec::new();
        for q in &dens {
            for n in &nums {
                for cand in [
                    BigRational::new(n.clone(), q.clone()),
                    BigRational::new(-n.clone(), q.clone()),
                ] {
                    if !found.contains(&cand) && eval(&cand).is_zero() {
                        found.push(cand);
                    }
                }
            }
        }
        roots.extend(found);
    }
    roots.sort();
    Some(roots)
}

/// Factors `g` into coprime monic pieces: every rational root becomes a
/// certified linear factor and whatever is left of each square-free part is
/// returned as a single uncertified factor.
pub fn factor_over_rationals<T: Scalar>(g: &Polynomial<T>) -> Result<FactoredPoly<T>> {
    let unit = g.leading().ok_or(Error::FactorZero)?.clone();
    let monic = g.monic();
    let mut factors = Vec::new();
    for (part, mult) in square_free(&monic) {
        let mut residual = part;
        for root in rational_roots(&residual).unwrap_or_default() {
            let Some(r) = T::from_big_rational(&root) else {
                continue;
            };
            let lin = Polynomial::linear(r);
            residual = residual.div_rem(&lin)?.0;
            factors.push(Factor {
                poly: lin,
                multiplicity: mult,
                certified_irreducible: true,
            });
        }
        if residual.degree().is_some_and(|d| d > 0) {
            let certified = residual.degree() == Some(1);
            factors.push(Factor {
                poly: residual,
                multiplicity: mult,
                certified_irreducible: certified,
            });
        }
    }
    factors.sort_by_cached_key(|f| {
        let deg = f.poly.degree();
        let key: Vec<BigRational> = f
            .poly
            .coeffs()
            .iter()
            .map(|c| -c.to_big_rational())
            .collect();
        (deg, key)
    });
    Ok(FactoredPoly { unit, factors })
}
