//! Exact arithmetic over the totally real field Q(√2, √3, √5).
//!
//! Elements are stored as 8 rational coordinates over the basis
//! {1, √2, √3, √6, √5, √10, √15, √30}. The basis is indexed by a bitmask
//! over the primes (2, 3, 5), so products of basis elements reduce with a
//! XOR on masks plus a rational factor from the shared primes. This is
//! enough to house every bilinear-form value −cos(π/m) for m ∈ {2,…,6}
//! and the value −1 used for m = ∞.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

/// `RADICAND[mask]` is the square-free integer under the root for that
/// basis coordinate: bit 0 selects the prime 2, bit 1 the prime 3,
/// bit 2 the prime 5.
const RADICAND: [u64; 8] = [1, 2, 3, 6, 5, 10, 15, 30];

/// Display order and names follow the rendering contract
/// `a + b*r2 + c*r3 + d*r5 + e*r6 + f*r10 + g*r15 + h*r30`.
const DISPLAY_ORDER: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];
const SURD_NAME: [&str; 8] = ["1", "r2", "r3", "r6", "r5", "r10", "r15", "r30"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// An element of Q(√2, √3, √5).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem {
    coords: [Rational; 8],
}

fn zero_coords() -> [Rational; 8] {
    std::array::from_fn(|_| Rational::zero())
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            coords: zero_coords(),
        }
    }

    pub fn one() -> Self {
        FieldElem::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        FieldElem::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coords = zero_coords();
        coords[0] = q;
        FieldElem { coords }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        FieldElem::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// √d for d ∈ {2, 3, 5, 6, 10, 15, 30}, or the rational case d = 1.
    pub fn sqrt_of(d: u64) -> Result<Self> {
        let mask = RADICAND
            .iter()
            .position(|&r| r == d)
            .ok_or(Error::UnsupportedLabel { m: d })?;
        let mut coords = zero_coords();
        coords[mask] = Rational::one();
        Ok(FieldElem { coords })
    }

    pub fn sqrt2() -> Self {
        FieldElem::sqrt_of(2).unwrap()
    }

    pub fn sqrt3() -> Self {
        FieldElem::sqrt_of(3).unwrap()
    }

    pub fn sqrt5() -> Self {
        FieldElem::sqrt_of(5).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational part when the element is purely rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn double(&self) -> Self {
        self + self
    }

    pub fn halve(&self) -> Self {
        let mut coords = self.coords.clone();
        let two = Rational::from_integer(BigInt::from(2));
        for c in coords.iter_mut() {
            *c /= &two;
        }
        FieldElem { coords }
    }

    /// Galois conjugate flipping the sign of √p for each prime p selected
    /// by `flips` (a mask in the same convention as the basis).
    fn conjugate(&self, flips: usize) -> Self {
        let mut coords = self.coords.clone();
        for (mask, c) in coords.iter_mut().enumerate() {
            if (mask & flips).count_ones() % 2 == 1 {
                *c = -c.clone();
            }
        }
        FieldElem { coords }
    }

    /// Exact multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Product of all nontrivial Galois conjugates; multiplying by the
        // element itself yields the rational field norm.
        let mut cofactor = self.conjugate(1);
        for flips in 2..8 {
            cofactor = &cofactor * &self.conjugate(flips);
        }
        let norm = self * &cofactor;
        let norm = norm
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::InvariantViolation("field norm is not rational".into()))?;
        if norm.is_zero() {
            return Err(Error::InvariantViolation(
                "zero field norm for nonzero element".into(),
            ));
        }
        let mut coords = cofactor.coords;
        for c in coords.iter_mut() {
            *c /= &norm;
        }
        Ok(FieldElem { coords })
    }

    /// Exact sign. Zero is decided symbolically from the coordinates
    /// (the eight surds are linearly independent over Q); otherwise the
    /// value is bracketed by rational intervals for the surds, refined
    /// until the interval excludes zero.
    pub fn sign(&self) -> Sign {
        let nonzero: Vec<usize> = (0..8).filter(|&m| !self.coords[m].is_zero()).collect();
        if nonzero.is_empty() {
            return Sign::Zero;
        }
        // All surds are positive, so same-signed coordinates decide directly.
        if nonzero.iter().all(|&m| self.coords[m].is_positive()) {
            return Sign::Positive;
        }
        if nonzero.iter().all(|&m| self.coords[m].is_negative()) {
            return Sign::Negative;
        }
        let mut bits = 32u32;
        loop {
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for &m in &nonzero {
                let c = &self.coords[m];
                let (slo, shi) = surd_bounds(RADICAND[m], bits);
                if c.is_positive() {
                    lo += c * &slo;
                    hi += c * &shi;
                } else {
                    lo += c * &shi;
                    hi += c * &slo;
                }
            }
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            bits *= 2;
        }
    }

    /// Exact comparison of real values (distinct from the derived `Ord`,
    /// which is only a structural order for containers).
    pub fn cmp_value(&self, other: &FieldElem) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// Rational bracket [lo, hi] around √d with hi − lo = 2^−bits.
fn surd_bounds(d: u64, bits: u32) -> (Rational, Rational) {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), BigInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let floor = {
        let mut guard = cache.lock().unwrap();
        guard
            .entry((d, bits))
            .or_insert_with(|| (BigInt::from(d) << (2 * bits)).sqrt())
            .clone()
    };
    let denom = BigInt::one() << bits;
    (
        Rational::new(floor.clone(), denom.clone()),
        Rational::new(floor + 1, denom),
    )
}

/// cos(π/m) for the supported labels m ∈ {2, 3, 4, 5, 6}.
pub fn cos_pi_over(m: u64) -> Result<FieldElem> {
    match m {
        2 => Ok(FieldElem::zero()),
        3 => Ok(FieldElem::ratio(1, 2)),
        4 => Ok(FieldElem::sqrt2().halve()),
        5 => {
            // (1 + √5) / 4
            let x = &FieldElem::one() + &FieldElem::sqrt5();
            Ok(x.halve().halve())
        }
        6 => Ok(FieldElem::sqrt3().halve()),
        m => Err(Error::UnsupportedLabel { m }),
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        let mut coords = self.coords.clone();
        for (a, b) in coords.iter_mut().zip(rhs.coords.iter()) {
            *a += b;
        }
        FieldElem { coords }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        let mut coords = self.coords.clone();
        for (a, b) in coords.iter_mut().zip(rhs.coords.iter()) {
            *a -= b;
        }
        FieldElem { coords }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let mut coords = self.coords.clone();
        for a in coords.iter_mut() {
            *a = -a.clone();
        }
        FieldElem { coords }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        let mut coords = zero_coords();
        for i in 0..8 {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if rhs.coords[j].is_zero() {
                    continue;
                }
                // √a·√b = (shared primes) · √(a xor b)
                let shared = i & j;
                let factor = RADICAND[shared];
                let mut term = &self.coords[i] * &rhs.coords[j];
                if factor != 1 {
                    term *= BigInt::from(factor);
                }
                coords[i ^ j] += term;
            }
        }
        FieldElem { coords }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &mask in DISPLAY_ORDER.iter() {
            let c = &self.coords[mask];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mask == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", SURD_NAME[mask])?;
            } else {
                write!(f, "{mag}*{}", SURD_NAME[mask])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
