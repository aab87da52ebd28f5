//! Exact scalars over the rationals or a prime field GF(p).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Ground field descriptor. Carried per matrix; arithmetic never mixes
/// descriptors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Prime { value: 1, modulus: p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Prime { value: r, modulus: p }
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element: a reduced fraction or a canonical residue mod p.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Prime { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("scalar arithmetic across field descriptors"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                let v = ((*a as u128 * *b as u128) % *p as u128) as u64;
                Scalar::Prime { value: v, modulus: *p }
            }
            _ => panic!("scalar arithmetic across field descriptors"),
        }
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Prime { value, modulus } => {
                let v = mod_inverse(*value, *modulus);
                Ok(Scalar::Prime { value: v, modulus: *modulus })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, Error> {
        Ok(self.mul(&other.inv()?))
    }

    /// Parses the document text form: "p", "-p" or "p/q" for rationals,
    /// a bare integer reduced mod p for prime fields.
    pub fn parse(text: &str, field: Field) -> Result<Scalar, Error> {
        let text = text.trim();
        match field {
            Field::Rational => {
                let r = if let Some((num, den)) = text.split_once('/') {
                    let n = BigInt::from_str(num.trim())
                        .map_err(|_| Error::ScalarSyntax(text.to_string()))?;
                    let d = BigInt::from_str(den.trim())
                        .map_err(|_| Error::ScalarSyntax(text.to_string()))?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    BigRational::new(n, d)
                } else {
                    let n = BigInt::from_str(text)
                        .map_err(|_| Error::ScalarSyntax(text.to_string()))?;
                    BigRational::from_integer(n)
                };
                Ok(Scalar::Rational(r))
            }
            Field::Prime(p) => {
                let n = BigInt::from_str(text)
                    .map_err(|_| Error::ScalarSyntax(text.to_string()))?;
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                let value = digits.first().copied().unwrap_or(0);
                Ok(Scalar::Prime { value, modulus: p })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.denom().is_negative() {
                    // BigRational keeps denominators positive; unreachable, but
                    // keep Display total.
                    write!(f, "{}/{}", -r.numer(), -r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{}", value),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime, a != 0 mod p
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}
