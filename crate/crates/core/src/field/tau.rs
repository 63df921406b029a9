use super::{Field, FieldError, Poly, Scalar};

fn product_of_roots<'a>(field: Field, roots: impl Iterator<Item = &'a Scalar>) -> Poly {
    roots.fold(Poly::one(field), |acc, r| acc.mul(&Poly::linear_root(r)))
}

fn sequence_field(thetas: &[Scalar]) -> Result<Field, FieldError> {
    let field = thetas.first().ok_or(FieldError::Empty)?.field();
    super::ensure_field(field, thetas)?;
    Ok(field)
}

/// τ_i = (λ − θ_0)(λ − θ_1)⋯(λ − θ_{i−1}), for 0 ≤ i ≤ d+1.
pub fn make_tau(thetas: &[Scalar], i: usize) -> Result<Poly, FieldError> {
    let field = sequence_field(thetas)?;
    if i > thetas.len() {
        return Err(FieldError::IndexOutOfRange {
            index: i,
            max: thetas.len(),
        });
    }
    Ok(product_of_roots(field, thetas[..i].iter()))
}

/// η_i = (λ − θ_d)(λ − θ_{d−1})⋯(λ − θ_{d−i+1}), for 0 ≤ i ≤ d+1.
pub fn make_eta(thetas: &[Scalar], i: usize) -> Result<Poly, FieldError> {
    let field = sequence_field(thetas)?;
    if i > thetas.len() {
        return Err(FieldError::IndexOutOfRange {
            index: i,
            max: thetas.len(),
        });
    }
    Ok(product_of_roots(field, thetas.iter().rev().take(i)))
}

/// All τ_i and η_i (0 ≤ i ≤ d+1) for one base sequence, computed up front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauEtaFamily {
    thetas: Vec<Scalar>,
    tau: Vec<Poly>,
    eta: Vec<Poly>,
}

impl TauEtaFamily {
    pub fn new(thetas: &[Scalar]) -> Result<Self, FieldError> {
        let field = sequence_field(thetas)?;
        let mut tau = vec![Poly::one(field)];
        let mut eta = vec![Poly::one(field)];
        let n = thetas.len();
        for i in 0..n {
            tau.push(tau[i].mul(&Poly::linear_root(&thetas[i])));
            eta.push(eta[i].mul(&Poly::linear_root(&thetas[n - 1 - i])));
        }
        Ok(Self {
            thetas: thetas.to_vec(),
            tau,
            eta,
        })
    }

    pub fn thetas(&self) -> &[Scalar] {
        &self.thetas
    }

    pub fn d(&self) -> usize {
        self.thetas.len() - 1
    }

    pub fn tau(&self, i: usize) -> &Poly {
        &self.tau[i]
    }

    pub fn eta(&self, i: usize) -> &Poly {
        &self.eta[i]
    }

    /// τ_i(x)
    pub fn tau_at(&self, i: usize, x: &Scalar) -> Scalar {
        self.tau[i].eval_unchecked(x)
    }

    /// η_i(x)
    pub fn eta_at(&self, i: usize, x: &Scalar) -> Scalar {
        self.eta[i].eval_unchecked(x)
    }

    /// τ_r(θ_r) η_{d−r}(θ_r) = ∏_{j≠r} (θ_r − θ_j), never zero for a distinct sequence.
    pub fn lagrange_denominator(&self, r: usize) -> Scalar {
        let x = &self.thetas[r];
        &self.tau_at(r, x) * &self.eta_at(self.d() - r, x)
    }
}
