use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elim::integer_row;
use super::matrix::RatMatrix;
use super::rat::Rat;
use crate::{Error, Result};

/// Univariate polynomial with rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear(r: &Rat) -> Self {
        Self::new(vec![-r, Rat::one()])
    }

    /// Monic polynomial with the given roots (repeated as listed).
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Self::constant(Rat::one()), |p, r| p.mul(&Self::linear(r)))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &RatMatrix) -> Result<RatMatrix> {
        let n = m.ensure_square()?;
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(m)?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder. Panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(BigInt::from(i))).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rat::one() / self.leading()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Multiplicity of `r` as a root (0 when it is not a root).
    pub fn root_multiplicity(&self, r: &Rat) -> usize {
        let lin = Self::linear(r);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Distinct rational roots, in ascending order.
    ///
    /// Works on the square-free part scaled to a primitive integer polynomial:
    /// every root is `p/q` with `p | a_0` and `q | a_n`. Candidates are found by
    /// factoring `a_0` and `a_n` by trial division, or, when that is out of
    /// reach, by scanning numerators up to a root bound.
    pub fn rational_roots(&self) -> Result<Vec<Rat>> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let sf = self.square_free_part();
        let mut a = integer_row(sf.coeffs());
        let mut roots = Vec::new();
        if a[0].is_zero() {
            roots.push(Rat::zero());
            a.remove(0);
        }
        if a.len() > 1 {
            let a0 = a[0].abs();
            let an = a[a.len() - 1].abs();
            let bound = root_bound(&a);
            let dens = divisors(&an).ok_or(Error::RootSearchExhausted)?;
            let nums = divisors(&a0);
            for q in &dens {
                let limit = &bound * q;
                let candidates: Vec<BigInt> = match &nums {
                    Some(ds) => ds.iter().filter(|d| **d <= limit).cloned().collect(),
                    None => {
                        if limit > BigInt::from(SCAN_LIMIT) {
                            return Err(Error::RootSearchExhausted);
                        }
                        let l = limit.to_i64().expect("scan limit fits");
                        (1..=l).map(BigInt::from).filter(|p| a0.is_multiple_of(p)).collect()
                    }
                };
                for p in candidates {
                    if !p.gcd(q).is_one() {
                        continue;
                    }
                    for sp in [p.clone(), -p] {
                        if is_root(&a, &sp, q) {
                            roots.push(Rat::new(sp, q.clone()));
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;
const SCAN_LIMIT: i64 = 20_000_000;

/// `sum a_i p^i q^(n-i) == 0`
fn is_root(a: &[BigInt], p: &BigInt, q: &BigInt) -> bool {
    // Horner in p, with the coefficient of p^i picking up q^(n-i).
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in a.iter().rev() {
        acc = acc * p + c * &qpow;
        qpow *= q;
    }
    acc.is_zero()
}

/// Upper bound on the absolute value of every root: twice the largest
/// `|a_{n-i}/a_n|^(1/i)`, rounded up to a power of two using bit lengths.
fn root_bound(a: &[BigInt]) -> BigInt {
    let n = a.len() - 1;
    let lead_bits = a[n].abs().bits() as i64;
    let mut e: i64 = 0;
    for i in 1..=n {
        let c = &a[n - i];
        if c.is_zero() {
            continue;
        }
        // |c / lead| < 2^(bits(c) - bits(lead) + 1)
        let ratio_bits = c.abs().bits() as i64 - lead_bits + 1;
        let ei = (ratio_bits + i as i64 - 1).div_euclid(i as i64);
        e = e.max(ei);
    }
    BigInt::from(2) << (e.max(0) as usize + 1)
}

/// Positive divisors of `m > 0` when `m` factors by trial division up to
/// `TRIAL_LIMIT` (a cofactor below `TRIAL_LIMIT^2` is then prime).
fn divisors(m: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = m.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(TRIAL_LIMIT);
    while &p * &p <= rest && p <= limit {
        let mut e = 0;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        if &p * &p <= rest {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (f, e) in factors {
        let current = divs.clone();
        let mut pw = BigInt::one();
        for _ in 0..e {
            pw *= &f;
            divs.extend(current.iter().map(|d| d * &pw));
        }
    }
    divs.sort();
    Some(divs)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
