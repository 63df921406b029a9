use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::Rational;
use super::FieldError;

/// Runtime description of the ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// GF(p), with `p` checked for primality by trial division.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::from_integer(n)),
            Field::Prime(p) => Scalar::Fp {
                value: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    /// The field element `num / den`; `den` must be nonzero in the field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        let den = self.from_i64(den);
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(&self.from_i64(num) / &den)
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    /// Parses `"3"`, `"-7/2"` (rationals) or a decimal residue (GF(p); any
    /// integer or fraction is reduced mod p).
    pub fn parse(self, text: &str) -> Result<Scalar, FieldError> {
        let text = text.trim();
        let bad = || FieldError::Parse(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        match self {
            Field::Rational => {
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(Scalar::Q(Rational::from_big(BigRational::new(num, den))))
            }
            Field::Prime(p) => {
                let reduce = |x: &BigInt| {
                    let m = BigInt::from(p);
                    let r = ((x % &m) + &m) % &m;
                    r.to_u64().expect("residue fits in u64")
                };
                let den = Scalar::Fp { value: reduce(&den), p };
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(&Scalar::Fp { value: reduce(&num), p } / &den)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// An exact element of Q or GF(p).
///
/// Rationals are kept in lowest terms with positive denominator;
/// prime-field values lie in `[0, p)`.
/// Binary operators panic when the operands live in different fields; the
/// container types check field agreement at construction so that mixing
/// cannot happen through the public API.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip().expect("nonzero")),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rational value, when over Q.
    pub fn to_big_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(q) => Some(q.to_big()),
            Scalar::Fp { .. } => None,
        }
    }

    /// Total order used only to make outputs deterministic (root lists and
    /// the like). Over GF(p) it is the order of residues.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp { value: a, .. }, Scalar::Fp { value: b, .. }) => a.cmp(b),
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    fn check(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!("field mismatch: {} vs {}", self.field(), other.field());
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.sub(b)),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.check(rhs);
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);
