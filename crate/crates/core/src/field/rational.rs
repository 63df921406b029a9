//! Rational numbers with an inline fast path.
//!
//! Values whose lowest-terms numerator and denominator fit in an `i64` are
//! stored inline and combined with 128-bit intermediates; everything else
//! falls back to `BigRational`. The representation is canonical (a value
//! is `Small` exactly when it fits), so derived equality and hashing agree
//! with numeric equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// den > 0, gcd(num, den) = 1
    Small { num: i64, den: i64 },
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    /// Normalizes `num/den` given as 128-bit integers (den ≠ 0).
    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) if num != i64::MIN => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(q: BigRational) -> Self {
        // BigRational::new and the arithmetic operators keep lowest terms with
        // a positive denominator.
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(num), Some(den)) if num != i64::MIN => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(q)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(q) => q.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(q) => q.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(q) => q.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(q) => q.is_integer(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    return Self::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big(q) => Self::from_big(-q),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    /// Reciprocal; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small { num, den } => {
                if *num < 0 {
                    Rational(Repr::Small { num: -den, den: -num })
                } else {
                    Rational(Repr::Small { num: *den, den: *num })
                }
            }
            Repr::Big(q) => Self::from_big(q.recip()),
        })
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(q) => {
                if q.is_positive() {
                    1
                } else if q.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn agrees_with_bigrational() {
        let vals = [(3, 4), (-7, 2), (0, 1), (i64::MAX, 3), (-i64::MAX, 7), (5, 1)];
        for &(a, b) in &vals {
            for &(c, d) in &vals {
                let x = Rational::from_big(big(a, b));
                let y = Rational::from_big(big(c, d));
                assert_eq!(x.add(&y).to_big(), big(a, b) + big(c, d));
                assert_eq!(x.sub(&y).to_big(), big(a, b) - big(c, d));
                assert_eq!(x.mul(&y).to_big(), big(a, b) * big(c, d));
                assert_eq!(x.cmp(&y), big(a, b).cmp(&big(c, d)));
            }
        }
    }

    #[test]
    fn canonical_after_overflow_and_back() {
        let m = Rational::from_integer(i64::MAX);
        let sq = m.mul(&m);
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = sq.mul(&m.recip().unwrap());
        assert_eq!(back, m);
        assert!(matches!(back.0, Repr::Small { .. }));
    }
}
