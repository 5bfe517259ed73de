use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers, the certification field.
pub type Rat = BigRational;

/// Relative tolerance used when two float multipliers are considered the same atom.
pub const FLOAT_MERGE_TOL: f64 = 1e-12;

/// Coefficient field for q-bracket expressions.
///
/// Two implementations exist: [`Rat`] (exact, used to certify identities) and
/// [`Complex64`] (used for Bethe-root numerics and the lattice oracle).
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn from_rat(r: &Rat) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Absolute value as a float (lossy for huge rationals).
    fn modulus(&self) -> f64;

    fn to_complex(&self) -> Complex64;

    /// Embeds a complex number when the field can hold it.
    fn from_complex(c: Complex64) -> Option<Self>;

    /// Exact equality for rationals, relative closeness for floats.
    fn same_as(&self, other: &Self) -> bool;

    /// Whether `-self` is the canonical representative of `{self, -self}`.
    fn prefers_negation(&self) -> bool;

    /// Total order used to sort atoms into canonical position.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// `coeff · ∏ v^e`, or `None` when a negative power meets a zero.
    fn monomial_value<'a>(coeff: &Self, factors: impl IntoIterator<Item = (&'a Self, i32)>) -> Option<Self> {
        let mut num = coeff.clone();
        let mut den = Self::one();
        for (v, e) in factors {
            if e >= 0 {
                num = num * v.powi(e);
            } else {
                if v.is_zero() {
                    return None;
                }
                den = den * v.powi(-e);
            }
        }
        Some(num / den)
    }

    fn powi(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * sq.clone();
            }
            n >>= 1;
            if n > 0 {
                sq = sq.clone() * sq;
            }
        }
        acc
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn modulus(&self) -> f64 {
        rat_to_f64(self).abs()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(self), 0.0)
    }

    fn from_complex(_: Complex64) -> Option<Self> {
        None
    }

    fn same_as(&self, other: &Self) -> bool {
        self == other
    }

    fn prefers_negation(&self) -> bool {
        self.is_negative()
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    // multiply raw numerators and denominators, reduce once
    fn monomial_value<'a>(coeff: &Self, factors: impl IntoIterator<Item = (&'a Self, i32)>) -> Option<Self> {
        let mut num = coeff.numer().clone();
        let mut den = coeff.denom().clone();
        for (v, e) in factors {
            let (a, b) = if e >= 0 { (v.numer(), v.denom()) } else { (v.denom(), v.numer()) };
            let k = e.unsigned_abs();
            if k == 1 {
                num *= a;
                den *= b;
            } else {
                num *= num_traits::pow(a.clone(), k as usize);
                den *= num_traits::pow(b.clone(), k as usize);
            }
        }
        if den.is_zero() {
            return None;
        }
        Some(Rat::new(num, den))
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_rat(r: &Rat) -> Self {
        Complex64::new(rat_to_f64(r), 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn from_complex(c: Complex64) -> Option<Self> {
        Some(c)
    }

    fn same_as(&self, other: &Self) -> bool {
        let scale = self.norm().max(other.norm());
        (self - other).norm() <= FLOAT_MERGE_TOL * scale
    }

    fn prefers_negation(&self) -> bool {
        self.re < 0.0 || (self.re == 0.0 && self.im < 0.0)
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        if self.same_as(other) {
            return Ordering::Equal;
        }
        self.re
            .partial_cmp(&other.re)
            .unwrap_or(Ordering::Equal)
            .then(self.im.partial_cmp(&other.im).unwrap_or(Ordering::Equal))
    }
}

/// Converts a big rational to `f64` (accurate even when numerator and
/// denominator individually overflow).
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"n/d"` or `"n"` into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = rat(3, 2);
        assert_eq!(x.powi(3), rat(27, 8));
        assert_eq!(x.powi(-2), rat(4, 9));
        assert_eq!(x.powi(0), Rat::one());
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rat("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rat(" -7 "), Some(rat(-7, 1)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("abc"), None);
    }

    #[test]
    fn huge_rationals_convert_to_float() {
        let big = BigInt::from(10).pow(400);
        let r = Rat::new(big.clone() * 3 + 1, big * 2);
        assert!((rat_to_f64(&r) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn complex_canonical_sign() {
        assert!(Complex64::new(-1.0, 2.0).prefers_negation());
        assert!(!Complex64::new(0.0, 2.0).prefers_negation());
        assert!(rat(-1, 3).prefers_negation());
    }
}
