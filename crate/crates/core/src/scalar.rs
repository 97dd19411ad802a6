//! Exact scalars: arbitrary-precision rationals and elements of a prime
//! field `F_p` whose modulus is chosen at runtime.
//!
//! Arithmetic between two prime-field elements with different moduli, or
//! between a rational and a prime-field element, is a hard error. The
//! `checked_*` methods report it as [`Error::DomainMismatch`]; the operator
//! impls panic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient domain of a scalar or polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Rational,
    Prime(u64),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl Domain {
    pub fn zero(self) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::zero()),
            Domain::Prime(p) => Scalar::Mod(0, p),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::one()),
            Domain::Prime(p) => Scalar::Mod(1 % p, p),
        }
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Domain::Rational => Scalar::from(v),
            Domain::Prime(p) => Scalar::Mod(v.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Maps a rational into this domain. Fails in `F_p` when `p` divides the
    /// denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Domain::Rational => Ok(Scalar::Rational(q.clone())),
            Domain::Prime(p) => {
                let num = mod_bigint(q.numer(), p);
                let den = mod_bigint(q.denom(), p);
                if den == 0 {
                    return Err(Error::BadPrime { p });
                }
                Ok(Scalar::Mod(mul_mod(num, inv_mod(den, p), p), p))
            }
        }
    }
}

/// An exact scalar. Rationals are always kept in lowest terms with a
/// positive denominator (guaranteed by `BigRational`); prime-field values
/// live in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod(u64, u64),
}

pub(crate) fn mod_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse in `F_p` by Fermat; `a` must be nonzero mod `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a modulus for prime-field work: prime and at least 5.
pub fn check_good_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::SmallPrime(p));
    }
    Ok(())
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn fp(value: i64, p: u64) -> Self {
        Domain::Prime(p).from_i64(value)
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Mod(_, p) => Domain::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod(..) => None,
        }
    }

    /// Sign of a rational (0 for zero); prime-field elements report 1 when nonzero.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Mod(v, _) => i32::from(*v != 0),
        }
    }

    fn same_domain(&self, other: &Scalar) -> Result<()> {
        if self.domain() != other.domain() {
            return Err(Error::DomainMismatch {
                left: self.domain(),
                right: other.domain(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_domain(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + b) % p, *p),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_domain(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod(mul_mod(*a, *b, *p), *p),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_domain(other)?;
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(inv_mod(*v, *p), *p),
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(num_traits::pow(q.clone(), exp as usize)),
            Scalar::Mod(v, p) => Scalar::Mod(pow_mod(*v, exp as u64, *p), *p),
        }
    }

    /// Reduction of a rational into `F_p`; identity on prime-field values
    /// of the same modulus.
    pub fn reduce(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => Domain::Prime(p).from_rational(q),
            Scalar::Mod(_, q) if *q == p => Ok(self.clone()),
            Scalar::Mod(_, q) => Err(Error::DomainMismatch {
                left: Domain::Prime(*q),
                right: Domain::Prime(p),
            }),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(v.into()))
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(v))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Mod(v, p) => Scalar::Mod((p - v) % p, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(Scalar::rational(2, 4), Scalar::rational(-1, -2));
        assert_eq!(Scalar::rational(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = Scalar::fp(3, 7);
        let b = Scalar::fp(5, 7);
        assert_eq!(&a + &b, Scalar::fp(1, 7));
        assert_eq!(&a * &b, Scalar::fp(1, 7));
        assert_eq!(a.inv().unwrap(), Scalar::fp(5, 7));
        assert_eq!(-&a, Scalar::fp(4, 7));
    }

    #[test]
    fn mixing_moduli_is_an_error() {
        let a = Scalar::fp(1, 5);
        let b = Scalar::fp(1, 7);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::DomainMismatch { .. })
        ));
        assert!(a.checked_mul(&Scalar::from(1)).is_err());
    }

    #[test]
    #[should_panic]
    fn mixing_moduli_panics_in_operators() {
        let _ = Scalar::fp(1, 5) + Scalar::fp(1, 7);
    }

    #[test]
    fn reduction_refuses_bad_denominators() {
        let half = Scalar::rational(1, 2);
        assert_eq!(half.reduce(7).unwrap(), Scalar::fp(4, 7));
        assert_eq!(
            Scalar::rational(1, 5).reduce(5),
            Err(Error::BadPrime { p: 5 })
        );
    }

    #[test]
    fn good_primes() {
        assert!(check_good_prime(5).is_ok());
        assert!(matches!(check_good_prime(3), Err(Error::SmallPrime(3))));
        assert!(matches!(check_good_prime(9), Err(Error::NotPrime(9))));
    }
}
