//! Ground fields: a prime field `F_p` or the rationals.
//!
//! Scalars do not carry their field; every operation goes through the
//! [`Field`] that owns the computation. Feeding a rational into a prime-field
//! operation (or vice versa) is a programming error and panics.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

pub const DEFAULT_PRIME: u64 = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Prime(u64),
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Q(BigRational),
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `rational`, or a prime such as `101`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t, "Q" | "QQ" | "q" | "rational" | "rationals") {
            return Ok(Field::Rational);
        }
        let p: u64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Prime fields are limited to odd primes below 2^31 so products fit in u64.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p == 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::Parse(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rational => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(1),
            Field::Rational => Scalar::Q(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64),
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => mixed(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + p - y) % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x - y),
            _ => mixed(),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x * y) % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(-x),
            _ => mixed(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Some(Scalar::Fp(pow_mod(*x, p - 2, *p))),
            (Field::Rational, Scalar::Q(x)) => Some(Scalar::Q(x.recip())),
            _ => mixed(),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Integer representative used when reading a scalar back out
    /// (symmetric range for `F_p`); `None` for non-integral rationals.
    pub fn to_i64(&self, a: &Scalar) -> Option<i64> {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => {
                let x = *x as i64;
                let p = *p as i64;
                Some(if x > p / 2 { x - p } else { x })
            }
            (Field::Rational, Scalar::Q(q)) if q.is_integer() => {
                let n = q.to_integer();
                if n.abs() < BigInt::from(i64::MAX) {
                    n.to_string().parse().ok()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Q(q) => q.to_string(),
        }
    }

    /// Parses an integer (`-3`) or, over the rationals, a fraction (`2/3`).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, Error> {
        let t = s.trim();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(self.from_i64(v));
        }
        if let Field::Rational = self {
            if let Ok(q) = t.parse::<BigRational>() {
                return Ok(Scalar::Q(q));
            }
        }
        Err(Error::Parse(format!("bad scalar `{s}` for field {self}")))
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[cold]
fn mixed() -> ! {
    panic!("scalars from different fields were mixed in one computation")
}
