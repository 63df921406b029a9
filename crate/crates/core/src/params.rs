//! Parameter arrays, affine transformations, the relatives of a parameter
//! array, and canonical reduced representatives.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("theta_{0} = theta_{1}")]
    DuplicateTheta(usize, usize),
    #[error("theta*_{0} = theta*_{1}")]
    DuplicateThetaStar(usize, usize),
    #[error("phi_{0} = 0")]
    ZeroPhi(usize),
    #[error("length mismatch: {thetas} thetas, {theta_stars} theta*s, {phis} phis (need d+1, d+1, d)")]
    LengthMismatch {
        thetas: usize,
        theta_stars: usize,
        phis: usize,
    },
    #[error("affine map needs nonzero alpha and alpha*")]
    ZeroScale,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A validated parameter array `({θ_i}, {θ*_i}, {φ_i})` of diameter `d`.
///
/// The only way to obtain one is through [`ParameterArray::new`], so every
/// value in circulation has distinct eigenvalues, distinct dual eigenvalues
/// and a nonzero split sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterArray {
    field: Field,
    thetas: Vec<Scalar>,
    theta_stars: Vec<Scalar>,
    phis: Vec<Scalar>,
}

fn first_duplicate(xs: &[Scalar]) -> Option<(usize, usize)> {
    for j in 1..xs.len() {
        for i in 0..j {
            if xs[i] == xs[j] {
                return Some((i, j));
            }
        }
    }
    None
}

impl ParameterArray {
    /// Validates a candidate triple. `phis[k]` is φ_{k+1}.
    pub fn new(
        thetas: Vec<Scalar>,
        theta_stars: Vec<Scalar>,
        phis: Vec<Scalar>,
    ) -> Result<Self, ParamError> {
        if thetas.is_empty() || theta_stars.len() != thetas.len() || phis.len() + 1 != thetas.len() {
            return Err(ParamError::LengthMismatch {
                thetas: thetas.len(),
                theta_stars: theta_stars.len(),
                phis: phis.len(),
            });
        }
        let field = thetas[0].field();
        crate::field::ensure_field(field, thetas.iter().chain(&theta_stars).chain(&phis))?;
        if let Some((i, j)) = first_duplicate(&thetas) {
            return Err(ParamError::DuplicateTheta(i, j));
        }
        if let Some((i, j)) = first_duplicate(&theta_stars) {
            return Err(ParamError::DuplicateThetaStar(i, j));
        }
        if let Some(k) = phis.iter().position(Scalar::is_zero) {
            return Err(ParamError::ZeroPhi(k + 1));
        }
        Ok(Self {
            field,
            thetas,
            theta_stars,
            phis,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, thetas: &[i64], theta_stars: &[i64], phis: &[i64]) -> Result<Self, ParamError> {
        let conv = |xs: &[i64]| xs.iter().map(|&x| field.from_i64(x)).collect();
        Self::new(conv(thetas), conv(theta_stars), conv(phis))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn d(&self) -> usize {
        self.thetas.len() - 1
    }

    pub fn thetas(&self) -> &[Scalar] {
        &self.thetas
    }

    pub fn theta_stars(&self) -> &[Scalar] {
        &self.theta_stars
    }

    /// φ_1..φ_d; note the offset, `phis()[0]` is φ_1.
    pub fn phis(&self) -> &[Scalar] {
        &self.phis
    }

    /// φ_i for 1 ≤ i ≤ d.
    pub fn phi(&self, i: usize) -> &Scalar {
        &self.phis[i - 1]
    }

    /// φ_1 φ_2 ⋯ φ_i (empty product 1 for i = 0).
    pub fn phi_product(&self, i: usize) -> Scalar {
        self.phis[..i].iter().fold(self.field.one(), |acc, p| &acc * p)
    }

    pub fn affine(&self, map: &AffineMap) -> Result<Self, ParamError> {
        map.apply(self)
    }

    pub fn relative(&self, g: GroupElement) -> Self {
        let rev = |xs: &[Scalar]| xs.iter().rev().cloned().collect::<Vec<_>>();
        let (thetas, theta_stars, phis) = match g {
            GroupElement::Id => return self.clone(),
            GroupElement::Star => (self.theta_stars.clone(), self.thetas.clone(), rev(&self.phis)),
            GroupElement::Tilde => (rev(&self.thetas), rev(&self.theta_stars), rev(&self.phis)),
            GroupElement::TildeStar => (rev(&self.theta_stars), rev(&self.thetas), self.phis.clone()),
        };
        Self {
            field: self.field,
            thetas,
            theta_stars,
            phis,
        }
    }

    /// The representative of the affine class with θ_0 = θ*_0 = 0 and, when
    /// d ≥ 1, θ_1 = θ*_1 = 1.
    pub fn canonical_reduced(&self) -> Self {
        self.apply_unchecked(&self.normalizing_map())
    }

    /// The affine map sending `self` to its canonical reduced representative.
    pub fn normalizing_map(&self) -> AffineMap {
        let f = self.field;
        let pin = |xs: &[Scalar]| -> (Scalar, Scalar) {
            let scale = match xs.get(1) {
                Some(x1) => (x1 - &xs[0]).inv().expect("distinct"),
                None => f.one(),
            };
            let shift = -(&scale * &xs[0]);
            (scale, shift)
        };
        let (alpha, beta) = pin(&self.thetas);
        let (alpha_star, beta_star) = pin(&self.theta_stars);
        AffineMap {
            alpha,
            beta,
            alpha_star,
            beta_star,
        }
    }

    fn apply_unchecked(&self, m: &AffineMap) -> Self {
        let aa = &m.alpha * &m.alpha_star;
        Self {
            field: self.field,
            thetas: self.thetas.iter().map(|t| &(&m.alpha * t) + &m.beta).collect(),
            theta_stars: self
                .theta_stars
                .iter()
                .map(|t| &(&m.alpha_star * t) + &m.beta_star)
                .collect(),
            phis: self.phis.iter().map(|p| &aa * p).collect(),
        }
    }
}

fn fmt_seq(xs: &[Scalar]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for ParameterArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}) over {}",
            fmt_seq(&self.thetas),
            fmt_seq(&self.theta_stars),
            fmt_seq(&self.phis),
            self.field
        )
    }
}

/// θ ↦ αθ + β, θ* ↦ α*θ* + β*, φ ↦ αα*φ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub alpha_star: Scalar,
    pub beta_star: Scalar,
}

impl AffineMap {
    pub fn new(alpha: Scalar, beta: Scalar, alpha_star: Scalar, beta_star: Scalar) -> Result<Self, ParamError> {
        if alpha.is_zero() || alpha_star.is_zero() {
            return Err(ParamError::ZeroScale);
        }
        let field = alpha.field();
        crate::field::ensure_field(field, [&beta, &alpha_star, &beta_star])?;
        Ok(Self {
            alpha,
            beta,
            alpha_star,
            beta_star,
        })
    }

    pub fn identity(field: Field) -> Self {
        Self {
            alpha: field.one(),
            beta: field.zero(),
            alpha_star: field.one(),
            beta_star: field.zero(),
        }
    }

    pub fn from_i64(field: Field, alpha: i64, beta: i64, alpha_star: i64, beta_star: i64) -> Result<Self, ParamError> {
        Self::new(
            field.from_i64(alpha),
            field.from_i64(beta),
            field.from_i64(alpha_star),
            field.from_i64(beta_star),
        )
    }

    pub fn field(&self) -> Field {
        self.alpha.field()
    }

    pub fn apply(&self, pa: &ParameterArray) -> Result<ParameterArray, ParamError> {
        if self.alpha.is_zero() || self.alpha_star.is_zero() {
            return Err(ParamError::ZeroScale);
        }
        if self.field() != pa.field() {
            return Err(FieldError::FieldMismatch(pa.field(), self.field()).into());
        }
        Ok(pa.apply_unchecked(self))
    }

    /// The map "apply `self`, then `next`".
    pub fn then(&self, next: &AffineMap) -> AffineMap {
        AffineMap {
            alpha: &next.alpha * &self.alpha,
            beta: &(&next.alpha * &self.beta) + &next.beta,
            alpha_star: &next.alpha_star * &self.alpha_star,
            beta_star: &(&next.alpha_star * &self.beta_star) + &next.beta_star,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let ai = self.alpha.inv().expect("nonzero alpha");
        let asi = self.alpha_star.inv().expect("nonzero alpha*");
        AffineMap {
            beta: -(&ai * &self.beta),
            alpha: ai,
            beta_star: -(&asi * &self.beta_star),
            alpha_star: asi,
        }
    }

    /// The same map seen from the star relative: the two coordinates swap.
    pub fn swapped(&self) -> AffineMap {
        AffineMap {
            alpha: self.alpha_star.clone(),
            beta: self.beta_star.clone(),
            alpha_star: self.alpha.clone(),
            beta_star: self.beta.clone(),
        }
    }
}

/// Outcome of [`is_affine_related`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineRelation {
    /// `witness.apply(pa) == pa'`
    Related { witness: AffineMap },
    Unrelated { reason: String },
}

impl AffineRelation {
    pub fn is_related(&self) -> bool {
        matches!(self, AffineRelation::Related { .. })
    }
}

/// Decides whether `pa'` is an affine transform of `pa`.
///
/// For d ≥ 1 the map is forced by θ_0, θ_1 and θ*_0, θ*_1; for d = 0 any two
/// arrays over the same field are related.
pub fn is_affine_related(pa: &ParameterArray, other: &ParameterArray) -> AffineRelation {
    if pa.field() != other.field() {
        return AffineRelation::Unrelated {
            reason: format!("fields differ: {} vs {}", pa.field(), other.field()),
        };
    }
    if pa.d() != other.d() {
        return AffineRelation::Unrelated {
            reason: format!("diameters differ: {} vs {}", pa.d(), other.d()),
        };
    }
    // Compose the two normalizing maps: pa -> canonical -> other.
    let to_canon = pa.normalizing_map();
    let witness = to_canon.then(&other.normalizing_map().inverse());
    let image = pa.apply_unchecked(&witness);
    if &image == other {
        return AffineRelation::Related { witness };
    }
    let reason = if image.thetas != other.thetas {
        "eigenvalue sequences are not affinely related".to_string()
    } else if image.theta_stars != other.theta_stars {
        "dual eigenvalue sequences are not affinely related".to_string()
    } else {
        let k = image
            .phis
            .iter()
            .zip(&other.phis)
            .position(|(a, b)| a != b)
            .map_or(0, |k| k + 1);
        format!("split sequences disagree at phi_{k}")
    };
    AffineRelation::Unrelated { reason }
}

/// The four relatives Φ, Φ*, Φ̃, Φ̃* as elements of ℤ₂×ℤ₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Id,
    Star,
    Tilde,
    TildeStar,
}

impl GroupElement {
    pub const ALL: [GroupElement; 4] = [
        GroupElement::Id,
        GroupElement::Star,
        GroupElement::Tilde,
        GroupElement::TildeStar,
    ];

    fn bits(self) -> (bool, bool) {
        match self {
            GroupElement::Id => (false, false),
            GroupElement::Star => (true, false),
            GroupElement::Tilde => (false, true),
            GroupElement::TildeStar => (true, true),
        }
    }

    fn from_bits(star: bool, tilde: bool) -> Self {
        match (star, tilde) {
            (false, false) => GroupElement::Id,
            (true, false) => GroupElement::Star,
            (false, true) => GroupElement::Tilde,
            (true, true) => GroupElement::TildeStar,
        }
    }

    pub fn compose(self, other: GroupElement) -> GroupElement {
        let (a, b) = self.bits();
        let (c, e) = other.bits();
        Self::from_bits(a ^ c, b ^ e)
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupElement::Id => "id",
            GroupElement::Star => "star",
            GroupElement::Tilde => "tilde",
            GroupElement::TildeStar => "tilde_star",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == s)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn pa(t: &[i64], ts: &[i64], p: &[i64]) -> ParameterArray {
        ParameterArray::from_i64(Q, t, ts, p).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(ParameterArray::from_i64(Q, &[0, 1], &[0, 1], &[1]).is_ok());
        assert_eq!(
            ParameterArray::from_i64(Q, &[0, 0], &[0, 1], &[1]),
            Err(ParamError::DuplicateTheta(0, 1))
        );
        assert_eq!(
            ParameterArray::from_i64(Q, &[0, 1], &[0, 1], &[0]),
            Err(ParamError::ZeroPhi(1))
        );
        assert_eq!(
            ParameterArray::from_i64(Q, &[0, 1], &[2, 2], &[1]),
            Err(ParamError::DuplicateThetaStar(0, 1))
        );
        assert!(matches!(
            ParameterArray::from_i64(Q, &[0, 1], &[0, 1], &[]),
            Err(ParamError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn affine_substitution() {
        let m = AffineMap::from_i64(Q, 2, 3, 1, 0).unwrap();
        assert_eq!(pa(&[0, 1], &[0, 1], &[1]).affine(&m).unwrap(), pa(&[3, 5], &[0, 1], &[2]));
        assert_eq!(AffineMap::from_i64(Q, 0, 1, 1, 0), Err(ParamError::ZeroScale));
    }

    #[test]
    fn canonical_example() {
        assert_eq!(pa(&[3, 5], &[0, 1], &[2]).canonical_reduced(), pa(&[0, 1], &[0, 1], &[1]));
        assert_eq!(pa(&[5], &[7], &[]).canonical_reduced(), pa(&[0], &[0], &[]));
    }

    #[test]
    fn relation_examples() {
        let base = pa(&[0, 1], &[0, 1], &[1]);
        assert!(!is_affine_related(&base, &pa(&[0, 1], &[0, 1], &[2])).is_related());
        assert!(is_affine_related(&pa(&[5], &[7], &[]), &pa(&[0], &[0], &[])).is_related());
        let m = AffineMap::from_i64(Q, 2, 3, 1, 0).unwrap();
        match is_affine_related(&base, &base.affine(&m).unwrap()) {
            AffineRelation::Related { witness } => assert_eq!(witness, m),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tilde_reverses_everything() {
        let x = pa(&[1, 2, 3], &[4, 5, 6], &[7, 8]);
        assert_eq!(x.relative(GroupElement::Tilde), pa(&[3, 2, 1], &[6, 5, 4], &[8, 7]));
        assert_eq!(x.relative(GroupElement::Star), pa(&[4, 5, 6], &[1, 2, 3], &[8, 7]));
        assert_eq!(x.relative(GroupElement::TildeStar), pa(&[6, 5, 4], &[3, 2, 1], &[7, 8]));
    }

    #[test]
    fn group_table() {
        use GroupElement::*;
        for g in GroupElement::ALL {
            assert_eq!(g.compose(g), Id);
            assert_eq!(g.compose(Id), g);
            for h in GroupElement::ALL {
                assert_eq!(g.compose(h), h.compose(g));
            }
        }
        assert_eq!(Star.compose(Tilde), TildeStar);
        assert_eq!(GroupElement::parse("tilde_star"), Some(TildeStar));
    }
}
