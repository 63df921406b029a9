use std::fmt;

use super::{ensure_field, Field, FieldError, Scalar};

/// Dense univariate polynomial in λ, coefficients in ascending degree.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient list and a nonzero polynomial has a nonzero leading
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<Self, FieldError> {
        ensure_field(field, &coeffs)?;
        Ok(Self::trimmed(field, coeffs))
    }

    fn trimmed(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Self {
        Self::trimmed(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        Self::trimmed(field, vec![c])
    }

    /// λ − root
    pub fn linear_root(root: &Scalar) -> Self {
        let field = root.field();
        Self::trimmed(field, vec![-root, field.one()])
    }

    /// The monomial λ^k.
    pub fn monomial(field: Field, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Self { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of λ^k (zero past the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "field mismatch in polynomial arithmetic");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::trimmed(self.field, (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::trimmed(self.field, (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::trimmed(self.field, out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Self::trimmed(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// λ · self
    pub fn shift(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(self.field.zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { field: self.field, coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar, FieldError> {
        if x.field() != self.field {
            return Err(FieldError::FieldMismatch(self.field, x.field()));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), FieldError> {
        self.check(divisor);
        let d = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = divisor.leading().and_then(Scalar::inv).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        Ok((Self::trimmed(self.field, quot), Self::trimmed(self.field, rem)))
    }

    /// The unique polynomial of degree ≤ n−1 through `n` points with distinct
    /// abscissae, by the Lagrange formula.
    pub fn interpolate(field: Field, xs: &[Scalar], ys: &[Scalar]) -> Result<Poly, FieldError> {
        if xs.len() != ys.len() {
            return Err(FieldError::DimensionMismatch("interpolation points".into()));
        }
        ensure_field(field, xs.iter().chain(ys))?;
        let mut acc = Poly::zero(field);
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Poly::one(field);
            let mut denom = field.one();
            for (j, xj) in xs.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&Poly::linear_root(xj));
                denom = &denom * &(xi - xj);
            }
            let c = yi.checked_div(&denom).ok_or(FieldError::DivisionByZero)?;
            acc = acc.add(&basis.scale(&c));
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({c})λ"),
                _ => format!("({c})λ^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let q = Field::Rational;
        let f = Poly::from_i64(q, &[15, -8, 1]);
        assert!(f.eval(&q.from_i64(3)).unwrap().is_zero());
        assert_eq!(Poly::one(q).eval(&q.from_i64(42)).unwrap(), q.one());
        // λ² − λ at 3 over GF(5): 9 − 3 = 6 ≡ 1
        let g5 = Field::prime(5).unwrap();
        let g = Poly::from_i64(g5, &[0, -1, 1]);
        let expected = (9i64 - 3).rem_euclid(5);
        assert_eq!(g.eval(&g5.from_i64(3)).unwrap(), g5.from_i64(expected));
        assert!(matches!(f.eval(&g5.one()), Err(FieldError::FieldMismatch(..))));
    }

    #[test]
    fn trimming_and_degree() {
        let q = Field::Rational;
        let z = Poly::from_i64(q, &[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(Poly::from_i64(q, &[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn division_and_interpolation() {
        let q = Field::Rational;
        let f = Poly::from_i64(q, &[15, -8, 1]);
        let (quot, rem) = f.div_rem(&Poly::linear_root(&q.from_i64(5))).unwrap();
        assert_eq!(quot, Poly::linear_root(&q.from_i64(3)));
        assert!(rem.is_zero());
        let xs: Vec<_> = [0, 1, 2].iter().map(|&x| q.from_i64(x)).collect();
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x).unwrap()).collect();
        assert_eq!(Poly::interpolate(q, &xs, &ys).unwrap(), f);
    }
}
