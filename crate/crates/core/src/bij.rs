//! The maps ρ and χ between parameter arrays and normalized west-south
//! Vandermonde systems, reduced TH systems, and the correspondence between
//! affine classes, Vandermonde matrices and reductions.

use thiserror::Error;

use crate::field::{Matrix, Scalar};
use crate::params::{is_affine_related, ParamError, ParameterArray};
use crate::report::Report;
use crate::thsystem::{idempotents_closed, THSystem};
use crate::transition::build_transition;
use crate::vand::{VandError, WSVandSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijError {
    #[error("not normalized: {0}")]
    NotNormalized(String),
    #[error("zero (0,0) entry of eta_{0}(A)")]
    ZeroPivot(usize),
    #[error(transparent)]
    Vand(#[from] VandError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// A west-south Vandermonde system with `X_i0 = 1` and `X_di = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedWSVand {
    ws: WSVandSystem,
}

impl NormalizedWSVand {
    /// Certifies both Vandermonde structures and both normalizations.
    pub fn certify(x: &Matrix, thetas: &[Scalar], theta_stars: &[Scalar]) -> Result<Self, BijError> {
        let ws = WSVandSystem::extract(x, thetas, theta_stars)?;
        if !ws.west().is_normalized() {
            return Err(BijError::NotNormalized("first column is not all ones".into()));
        }
        if !ws.south().is_normalized() {
            return Err(BijError::NotNormalized("last row is not all ones".into()));
        }
        Ok(Self { ws })
    }

    pub fn x(&self) -> &Matrix {
        self.ws.x()
    }

    pub fn thetas(&self) -> &[Scalar] {
        self.ws.thetas()
    }

    pub fn theta_stars(&self) -> &[Scalar] {
        self.ws.theta_stars()
    }

    pub fn system(&self) -> &WSVandSystem {
        &self.ws
    }
}

/// ρ: (𝒫, θ, θ*).
pub fn rho(pa: &ParameterArray) -> NormalizedWSVand {
    let td = build_transition(pa);
    NormalizedWSVand::certify(&td.script_p, pa.thetas(), pa.theta_stars())
        .expect("the transition matrix is a normalized double Vandermonde system")
}

/// χ: with A = X⁻¹DX and A* = D*, E*_0 is the first coordinate projection,
/// so φ_i = (θ*_0 − θ*_i) η_i(A)_00 / η_{i−1}(A)_00.
pub fn chi(ws: &NormalizedWSVand) -> Result<ParameterArray, BijError> {
    let x = ws.x();
    let th = ws.thetas();
    let ts = ws.theta_stars();
    let d = th.len() - 1;
    let dm = Matrix::diagonal(x.field(), th).map_err(VandError::from)?;
    let a = x
        .inverse()
        .and_then(|xi| xi.mul(&dm)?.mul(x))
        .map_err(VandError::from)?;
    // η_i(A) = (A − θ_d)(A − θ_{d−1})⋯(A − θ_{d−i+1})
    let etas = a.cumulative_products(th.iter().rev().take(d));
    let mut phis = Vec::with_capacity(d);
    for i in 1..=d {
        let num = &etas[i][(0, 0)];
        let den = etas[i - 1][(0, 0)].inv().ok_or(BijError::ZeroPivot(i - 1))?;
        phis.push(&(&(&ts[0] - &ts[i]) * num) * &den);
    }
    Ok(ParameterArray::new(th.to_vec(), ts.to_vec(), phis)?)
}

/// The bare matrix of a normalized double Vandermonde system; constant on
/// affine classes.
pub fn reduce_to_matrix(ws: &NormalizedWSVand) -> Matrix {
    ws.x().clone()
}

/// A reduced TH system: the two idempotent sequences without A and A*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTHSystemRep {
    pub e: Vec<Matrix>,
    pub e_star: Vec<Matrix>,
}

impl RTHSystemRep {
    /// The idempotents after the diagonal change of basis that makes the
    /// first row of E*_0 all ones. Two reductions are isomorphic exactly
    /// when their fingerprints agree.
    pub fn fingerprint(&self) -> RTHSystemRep {
        let e0 = &self.e_star[0];
        let n = e0.rows();
        let f = e0.field();
        let s: Vec<Scalar> = (0..n).map(|j| e0[(0, j)].clone()).collect();
        let s_inv: Vec<Scalar> = s.iter().map(|x| x.inv().expect("nonzero first row")).collect();
        let conj = |m: &Matrix| Matrix::from_fn(f, n, n, |i, j| &(&s[i] * &m[(i, j)]) * &s_inv[j]);
        RTHSystemRep {
            e: self.e.iter().map(conj).collect(),
            e_star: self.e_star.iter().map(conj).collect(),
        }
    }
}

pub fn reduction(sys: &THSystem) -> RTHSystemRep {
    RTHSystemRep {
        e: sys.e().to_vec(),
        e_star: sys.e_star().to_vec(),
    }
}

fn reduction_of(pa: &ParameterArray) -> RTHSystemRep {
    let (e, e_star) = idempotents_closed(pa);
    RTHSystemRep { e, e_star }
}

/// Whether the reductions of the systems of `pa` and `other` are isomorphic.
pub fn rth_iso_invariant(pa: &ParameterArray, other: &ParameterArray) -> bool {
    pa.d() == other.d()
        && pa.field() == other.field()
        && reduction_of(pa).fingerprint() == reduction_of(other).fingerprint()
}

/// The four class tests for a pair of arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassComparison {
    pub affine_related: bool,
    pub canonical_equal: bool,
    pub matrix_equal: bool,
    pub reduction_equal: bool,
}

impl ClassComparison {
    pub fn of(pa: &ParameterArray, other: &ParameterArray) -> Self {
        let comparable = pa.d() == other.d() && pa.field() == other.field();
        Self {
            affine_related: is_affine_related(pa, other).is_related(),
            canonical_equal: comparable && pa.canonical_reduced() == other.canonical_reduced(),
            matrix_equal: comparable && reduce_to_matrix(&rho(pa)) == reduce_to_matrix(&rho(other)),
            reduction_equal: rth_iso_invariant(pa, other),
        }
    }

    pub fn all(&self) -> bool {
        self.affine_related && self.canonical_equal && self.matrix_equal && self.reduction_equal
    }

    pub fn none(&self) -> bool {
        !(self.affine_related || self.canonical_equal || self.matrix_equal || self.reduction_equal)
    }

    pub fn consistent(&self) -> bool {
        self.all() || self.none()
    }
}

/// Checks that the class tests agree for `pa` against `other`, and the
/// round trips χ∘ρ and ρ∘χ on both.
pub fn five_set_roundtrip(pa: &ParameterArray, other: &ParameterArray) -> Report {
    let mut r = Report::new();
    for (name, x) in [("first", pa), ("second", other)] {
        let ws = rho(x);
        match chi(&ws) {
            Ok(back) => {
                r.expect(format!("chi(rho) = id on {name}"), &back == x, || format!("got {back}"));
                r.expect(format!("rho(chi) = id on {name}"), rho(&back) == ws, String::new);
            }
            Err(e) => r.fail(format!("chi(rho) = id on {name}"), e.to_string()),
        }
    }
    let cmp = ClassComparison::of(pa, other);
    r.expect("class tests agree", cmp.consistent(), || format!("{cmp:?}"));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::params::{AffineMap, GroupElement};

    const Q: Field = Field::Rational;

    fn pa(t: &[i64], ts: &[i64], p: &[i64]) -> ParameterArray {
        ParameterArray::from_i64(Q, t, ts, p).unwrap()
    }

    #[test]
    fn rho_smallest() {
        let a = pa(&[0, 1], &[0, 1], &[1]);
        let ws = rho(&a);
        assert_eq!(ws.x(), &Matrix::from_i64(Q, &[&[1, 0], &[1, 1]]).unwrap());
        assert_eq!(chi(&ws).unwrap(), a);
    }

    #[test]
    fn d0() {
        let a = pa(&[4], &[-2], &[]);
        let ws = rho(&a);
        assert_eq!(ws.x(), &Matrix::identity(Q, 1));
        assert_eq!(chi(&ws).unwrap(), a);
        let b = pa(&[9], &[1], &[]);
        assert!(ClassComparison::of(&a, &b).all());
    }

    #[test]
    fn affine_pairs_share_everything() {
        let a = pa(&[0, 3, -1], &[2, 1, 5], &[2, -3]);
        let b = a.affine(&AffineMap::from_i64(Q, 2, 3, 1, 0).unwrap()).unwrap();
        assert_eq!(reduction_of(&a), reduction_of(&b));
        let c = a.affine(&AffineMap::from_i64(Q, -1, 2, 3, -7).unwrap()).unwrap();
        assert_ne!(reduction_of(&a), reduction_of(&c));
        let cmp = ClassComparison::of(&a, &c);
        assert!(cmp.all(), "{cmp:?}");
        assert!(five_set_roundtrip(&a, &c).all_passed());
    }

    #[test]
    fn scaled_phi_is_a_different_class() {
        let a = pa(&[0, 1, 2], &[0, 1, 2], &[1, 1]);
        let b = pa(&[0, 1, 2], &[0, 1, 2], &[1, 2]);
        assert!(ClassComparison::of(&a, &b).none());
        let s = a.relative(GroupElement::Star);
        let c = pa(&[0, 3, -1], &[2, 1, 5], &[2, -3]);
        assert!(ClassComparison::of(&c, &c.relative(GroupElement::Star)).none());
        assert!(five_set_roundtrip(&a, &s).all_passed());
    }

    #[test]
    fn rejects_unnormalized() {
        let x = Matrix::from_i64(Q, &[&[2, 0], &[2, 2]]).unwrap();
        let r = NormalizedWSVand::certify(&x, &[Q.zero(), Q.one()], &[Q.zero(), Q.one()]);
        assert!(matches!(r, Err(BijError::NotNormalized(_))));
    }
}
