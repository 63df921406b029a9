use super::{Field, FieldError, Poly, Scalar};

/// Polynomial in two commuting variables λ, μ. `coeffs[a][b]` is the
/// coefficient of λ^a μ^b; trailing all-zero rows and columns are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: Field,
    coeffs: Vec<Vec<Scalar>>,
}

impl BiPoly {
    pub fn zero(field: Field) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn new(field: Field, coeffs: Vec<Vec<Scalar>>) -> Result<Self, FieldError> {
        super::ensure_field(field, coeffs.iter().flatten())?;
        Ok(Self::trimmed(field, coeffs))
    }

    fn trimmed(field: Field, mut coeffs: Vec<Vec<Scalar>>) -> Self {
        let width = coeffs
            .iter()
            .map(|row| row.iter().rposition(|c| !c.is_zero()).map_or(0, |k| k + 1))
            .max()
            .unwrap_or(0);
        for row in &mut coeffs {
            row.resize(width, field.zero());
        }
        while coeffs.last().is_some_and(|row| row.iter().all(Scalar::is_zero)) {
            coeffs.pop();
        }
        if width == 0 {
            coeffs.clear();
        }
        Self { field, coeffs }
    }

    /// f(λ)·g(μ)
    pub fn outer(f: &Poly, g: &Poly) -> Self {
        assert_eq!(f.field(), g.field(), "field mismatch");
        let coeffs = f
            .coeffs()
            .iter()
            .map(|a| g.coeffs().iter().map(|b| a * b).collect())
            .collect();
        Self::trimmed(f.field(), coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Vec<Scalar>] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize, b: usize) -> Scalar {
        self.coeffs
            .get(a)
            .and_then(|row| row.get(b))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// (degree in λ, degree in μ); `None` for zero.
    pub fn degrees(&self) -> Option<(usize, usize)> {
        if self.coeffs.is_empty() {
            return None;
        }
        Some((self.coeffs.len() - 1, self.coeffs[0].len() - 1))
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        assert_eq!(self.field, other.field, "field mismatch");
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self
            .coeffs
            .first()
            .map_or(0, Vec::len)
            .max(other.coeffs.first().map_or(0, Vec::len));
        let coeffs = (0..rows)
            .map(|a| (0..cols).map(|b| &self.coeff(a, b) + &other.coeff(a, b)).collect())
            .collect();
        Self::trimmed(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> BiPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|x| x * c).collect())
            .collect();
        Self::trimmed(self.field, coeffs)
    }

    /// p(μ, λ): exchange the roles of the two variables.
    pub fn swap_variables(&self) -> BiPoly {
        let cols = self.coeffs.first().map_or(0, Vec::len);
        let coeffs = (0..cols)
            .map(|b| self.coeffs.iter().map(|row| row[b].clone()).collect())
            .collect();
        Self::trimmed(self.field, coeffs)
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Result<Scalar, FieldError> {
        for v in [x, y] {
            if v.field() != self.field {
                return Err(FieldError::FieldMismatch(self.field, v.field()));
            }
        }
        Ok(self.in_lambda_at(y).eval_unchecked(x))
    }

    /// p(λ, y) as a polynomial in λ.
    pub fn in_lambda_at(&self, y: &Scalar) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * y) + c))
            .collect();
        Poly::new(self.field, coeffs).expect("same field")
    }

    /// p(x, μ) as a polynomial in μ.
    pub fn in_mu_at(&self, x: &Scalar) -> Poly {
        self.swap_variables().in_lambda_at(x)
    }
}
