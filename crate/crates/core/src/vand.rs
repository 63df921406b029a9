//! West, south and double Vandermonde systems, graded polynomial sequences,
//! and the correspondence between Hessenberg matrices and their polynomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{Field, FieldError, Matrix, Poly, Rational, Scalar, TauEtaFamily};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VandError {
    #[error("theta_{0} = theta_{1}")]
    DuplicateTheta(usize, usize),
    #[error("first-column entry X[{0}][0] is zero")]
    ZeroFirstColumn(usize),
    #[error("column {0} is not the evaluation of a polynomial of degree {0}")]
    NotCompatible(usize),
    #[error("not a graded sequence: f_{0} has the wrong degree")]
    NotGraded(usize),
    #[error("graded sequence is not standard (top polynomial is not monic)")]
    NotStandard,
    #[error("not Hessenberg at ({0}, {1})")]
    NotHessenberg(usize, usize),
    #[error("not multiplicity-free: {0}")]
    NotMultiplicityFree(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A graded sequence f_0, …, f_{d+1}: f_0 = 1 and deg f_i = i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPolySeq {
    polys: Vec<Poly>,
}

impl GradedPolySeq {
    pub fn new(polys: Vec<Poly>) -> Result<Self, VandError> {
        if polys.len() < 2 {
            return Err(VandError::NotGraded(polys.len()));
        }
        let field = polys[0].field();
        if !(polys[0].degree() == Some(0) && polys[0].coeff(0).is_one()) {
            return Err(VandError::NotGraded(0));
        }
        for (i, f) in polys.iter().enumerate() {
            if f.field() != field {
                return Err(FieldError::FieldMismatch(field, f.field()).into());
            }
            if f.degree() != Some(i) {
                return Err(VandError::NotGraded(i));
            }
        }
        Ok(Self { polys })
    }

    /// The index d of the last "interior" polynomial; the sequence has d+2 terms.
    pub fn d(&self) -> usize {
        self.polys.len() - 2
    }

    pub fn field(&self) -> Field {
        self.polys[0].field()
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.polys[i]
    }

    pub fn top(&self) -> &Poly {
        &self.polys[self.polys.len() - 1]
    }

    pub fn is_standard(&self) -> bool {
        self.top().is_monic()
    }

    /// Coordinates of `g` (degree ≤ `upto`) in the basis f_0..f_upto.
    fn expand(&self, g: &Poly, upto: usize) -> Vec<Scalar> {
        let f = self.field();
        let mut rest = g.clone();
        let mut coords = vec![f.zero(); upto + 1];
        for k in (0..=upto).rev() {
            let c = &rest.coeff(k) / self.polys[k].leading().expect("graded");
            if !c.is_zero() {
                rest = rest.sub(&self.polys[k].scale(&c));
            }
            coords[k] = c;
        }
        debug_assert!(rest.is_zero());
        coords
    }
}

fn check_distinct(thetas: &[Scalar]) -> Result<(), VandError> {
    for j in 1..thetas.len() {
        for i in 0..j {
            if thetas[i] == thetas[j] {
                return Err(VandError::DuplicateTheta(i, j));
            }
        }
    }
    Ok(())
}

fn check_square(x: &Matrix, thetas: &[Scalar]) -> Result<(), VandError> {
    if !x.is_square() || x.rows() != thetas.len() || thetas.is_empty() {
        return Err(FieldError::DimensionMismatch(format!(
            "{}x{} matrix with {} points",
            x.rows(),
            x.cols(),
            thetas.len()
        ))
        .into());
    }
    crate::field::ensure_field(x.field(), thetas)?;
    Ok(())
}

/// Lagrange basis L_0..L_d at distinct points, reused across columns.
struct LagrangeBasis {
    basis: Vec<Poly>,
}

impl LagrangeBasis {
    fn new(field: Field, xs: &[Scalar]) -> Self {
        let full = xs.iter().fold(Poly::one(field), |acc, x| acc.mul(&Poly::linear_root(x)));
        let basis = xs
            .iter()
            .enumerate()
            .map(|(i, xi)| {
                let (num, _) = full.div_rem(&Poly::linear_root(xi)).expect("nonzero divisor");
                let den = xs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(field.one(), |acc, (_, xj)| &acc * &(xi - xj));
                num.scale(&den.inv().expect("distinct points"))
            })
            .collect();
        Self { basis }
    }

    fn interpolate(&self, field: Field, ys: &[Scalar]) -> Poly {
        self.basis
            .iter()
            .zip(ys)
            .filter(|(_, y)| !y.is_zero())
            .fold(Poly::zero(field), |acc, (l, y)| acc.add(&l.scale(y)))
    }
}

fn product_of_roots(field: Field, xs: &[Scalar]) -> Poly {
    xs.iter().fold(Poly::one(field), |acc, x| acc.mul(&Poly::linear_root(x)))
}

/// A west Vandermonde system: `X_ij = X_i0 f_j(θ_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WestVandSystem {
    x: Matrix,
    thetas: Vec<Scalar>,
    polys: GradedPolySeq,
}

impl WestVandSystem {
    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn thetas(&self) -> &[Scalar] {
        &self.thetas
    }

    /// f_0..f_{d+1}, with f_{d+1} = ∏(λ − θ_i).
    pub fn polys(&self) -> &GradedPolySeq {
        &self.polys
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.x.rows()).all(|i| self.x[(i, 0)].is_one())
    }

    /// D = diag(θ_0..θ_d)
    pub fn eigenvalue_matrix(&self) -> Matrix {
        Matrix::diagonal(self.x.field(), &self.thetas).expect("same field")
    }
}

/// Recovers the graded sequence of a west Vandermonde matrix.
pub fn extract_west(x: &Matrix, thetas: &[Scalar]) -> Result<WestVandSystem, VandError> {
    check_square(x, thetas)?;
    check_distinct(thetas)?;
    let field = x.field();
    let n = thetas.len();
    let inv0: Vec<Scalar> = (0..n)
        .map(|i| x[(i, 0)].inv().ok_or(VandError::ZeroFirstColumn(i)))
        .collect::<Result<_, _>>()?;
    let lb = LagrangeBasis::new(field, thetas);
    let mut polys = Vec::with_capacity(n + 1);
    for j in 0..n {
        let ys: Vec<Scalar> = (0..n).map(|i| &x[(i, j)] * &inv0[i]).collect();
        let f = lb.interpolate(field, &ys);
        if f.degree() != Some(j) {
            return Err(VandError::NotCompatible(j));
        }
        polys.push(f);
    }
    polys.push(product_of_roots(field, thetas));
    Ok(WestVandSystem {
        x: x.clone(),
        thetas: thetas.to_vec(),
        polys: GradedPolySeq::new(polys)?,
    })
}

/// A south Vandermonde system: the clockwise rotation `X'_ij = X_{d-j,i}`
/// is west Vandermonde for the same points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SouthVandSystem {
    x: Matrix,
    thetas: Vec<Scalar>,
    polys: GradedPolySeq,
}

impl SouthVandSystem {
    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn thetas(&self) -> &[Scalar] {
        &self.thetas
    }

    pub fn polys(&self) -> &GradedPolySeq {
        &self.polys
    }

    pub fn is_normalized(&self) -> bool {
        let d = self.x.rows() - 1;
        (0..self.x.cols()).all(|i| self.x[(d, i)].is_one())
    }
}

pub fn extract_south(x: &Matrix, theta_stars: &[Scalar]) -> Result<SouthVandSystem, VandError> {
    let west = extract_west(&x.rotate_clockwise(), theta_stars)?;
    Ok(SouthVandSystem {
        x: x.clone(),
        thetas: west.thetas,
        polys: west.polys,
    })
}

/// A matrix that is west Vandermonde for one sequence and south Vandermonde
/// for another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSVandSystem {
    west: WestVandSystem,
    south: SouthVandSystem,
}

impl WSVandSystem {
    pub fn extract(x: &Matrix, thetas: &[Scalar], theta_stars: &[Scalar]) -> Result<Self, VandError> {
        Ok(Self {
            west: extract_west(x, thetas)?,
            south: extract_south(x, theta_stars)?,
        })
    }

    pub fn x(&self) -> &Matrix {
        &self.west.x
    }

    pub fn thetas(&self) -> &[Scalar] {
        &self.west.thetas
    }

    pub fn theta_stars(&self) -> &[Scalar] {
        &self.south.thetas
    }

    pub fn west(&self) -> &WestVandSystem {
        &self.west
    }

    pub fn south(&self) -> &SouthVandSystem {
        &self.south
    }

    pub fn is_normalized(&self) -> bool {
        self.west.is_normalized() && self.south.is_normalized()
    }
}

/// Which eigenvalue sequences a west Vandermonde matrix is compatible with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Compatibility {
    /// d = 0: any singleton works.
    Unconstrained,
    /// Exactly the sequences `a·base + b` with `a ≠ 0`.
    AffineLine { base: Vec<Scalar> },
}

impl Compatibility {
    pub fn admits(&self, thetas: &[Scalar]) -> bool {
        match self {
            Compatibility::Unconstrained => thetas.len() == 1,
            Compatibility::AffineLine { base } => {
                if thetas.len() != base.len() {
                    return false;
                }
                let Some(a) = (&thetas[1] - &thetas[0]).checked_div(&(&base[1] - &base[0])) else {
                    return false;
                };
                if a.is_zero() {
                    return false;
                }
                let b = &thetas[0] - &(&a * &base[0]);
                base.iter().zip(thetas).all(|(x, t)| &(&(&a * x) + &b) == t)
            }
        }
    }
}

/// The base sequence `X_i1 / X_i0` of a west Vandermonde matrix.
pub fn compatible_sequences(x: &Matrix) -> Result<Compatibility, VandError> {
    if !x.is_square() || x.rows() == 0 {
        return Err(FieldError::DimensionMismatch("square matrix needed".into()).into());
    }
    if x.rows() == 1 {
        return Ok(Compatibility::Unconstrained);
    }
    let base = (0..x.rows())
        .map(|i| {
            x[(i, 1)]
                .checked_div(&x[(i, 0)])
                .ok_or(VandError::ZeroFirstColumn(i))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Compatibility::AffineLine { base })
}

/// A Hessenberg matrix with its polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessenbergPolyData {
    pub h: Matrix,
    /// c_H = ∏ H_{i,i−1}
    pub c_h: Scalar,
    pub polys: GradedPolySeq,
}

/// c_H for a Hessenberg matrix.
pub fn subdiagonal_product(h: &Matrix) -> Scalar {
    (1..h.rows()).fold(h.field().one(), |acc, i| &acc * &h[(i, i - 1)])
}

/// The polynomials of a Hessenberg matrix, from the recurrence
/// `λ f_j = Σ_{i ≤ j+1} H_ij f_i` and `λ f_d = c_H⁻¹ f_{d+1} + Σ H_id f_i`.
pub fn polys_of_hessenberg(h: &Matrix) -> Result<HessenbergPolyData, VandError> {
    if let Some((i, j)) = h.hessenberg_violation() {
        return Err(VandError::NotHessenberg(i, j));
    }
    let n = h.rows();
    let field = h.field();
    let c_h = subdiagonal_product(h);
    let mut polys: Vec<Poly> = vec![Poly::one(field)];
    for j in 0..n {
        let mut g = polys[j].shift();
        for (i, fi) in polys.iter().enumerate() {
            let c = &h[(i, j)];
            if !c.is_zero() {
                g = g.sub(&fi.scale(c));
            }
        }
        let next = if j + 1 < n {
            g.scale(&h[(j + 1, j)].inv().expect("nonzero subdiagonal"))
        } else {
            g.scale(&c_h)
        };
        polys.push(next);
    }
    Ok(HessenbergPolyData {
        h: h.clone(),
        c_h,
        polys: GradedPolySeq::new(polys)?,
    })
}

/// The Hessenberg matrix H with `λ f_j = Σ_{i ≤ j+1} H_ij f_i`, rows 0..d.
pub fn connection_matrix(seq: &GradedPolySeq) -> Matrix {
    let n = seq.d() + 1;
    let mut h = Matrix::zeros(seq.field(), n, n);
    for j in 0..n {
        let coords = seq.expand(&seq.get(j).shift(), j + 1);
        for (i, c) in coords.into_iter().enumerate().take(n) {
            h[(i, j)] = c;
        }
    }
    h
}

/// The associated sequence {f_i^ς}: the polynomials of H^ς, where H is the
/// connection matrix of the given standard sequence.
pub fn associated_seq(seq: &GradedPolySeq) -> Result<GradedPolySeq, VandError> {
    if !seq.is_standard() {
        return Err(VandError::NotStandard);
    }
    Ok(polys_of_hessenberg(&connection_matrix(seq).zeta_reflect())?.polys)
}

/// Distinct roots of `f` in its field, with multiplicity check.
///
/// Over Q this is the rational root theorem on the primitive integer
/// polynomial, over GF(p) an exhaustive scan. Returns `Err` when `f` does
/// not split into distinct linear factors.
pub fn distinct_roots(f: &Poly) -> Result<Vec<Scalar>, VandError> {
    let deg = f.degree().ok_or_else(|| VandError::NotMultiplicityFree("zero polynomial".into()))?;
    let roots = match f.field() {
        Field::Prime(p) => {
            if p > 1 << 24 {
                return Err(VandError::NotMultiplicityFree(format!("root scan over GF({p}) is too large")));
            }
            (0..p)
                .map(|v| Scalar::Fp { value: v, p })
                .filter(|x| f.eval(x).map(|y| y.is_zero()).unwrap_or(false))
                .collect()
        }
        Field::Rational => rational_roots(f)?,
    };
    if roots.len() != deg {
        return Err(VandError::NotMultiplicityFree(format!(
            "{} distinct roots found for a polynomial of degree {deg}",
            roots.len()
        )));
    }
    // Distinct roots and the right count: the product must be f up to a constant.
    let lead = f.leading().expect("nonzero");
    if product_of_roots(f.field(), &roots).scale(lead) != *f {
        return Err(VandError::NotMultiplicityFree("repeated root".into()));
    }
    Ok(roots)
}

/// Largest trial divisor used when factoring coefficients.
const TRIAL_LIMIT: u64 = 1 << 22;

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>, VandError> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut k = 2u64;
    while k <= TRIAL_LIMIT {
        let kb = BigInt::from(k);
        if &kb * &kb > n {
            break;
        }
        let mut e = 0;
        while (&n % &kb).is_zero() {
            n /= &kb;
            e += 1;
        }
        if e > 0 {
            factors.push((kb, e));
        }
        k += if k == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let limit = BigInt::from(TRIAL_LIMIT);
        if n > &limit * &limit {
            return Err(VandError::NotMultiplicityFree(
                "coefficients too large for rational root search".into(),
            ));
        }
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// Integer coefficients of a rational polynomial with content removed.
fn primitive_integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let rats: Vec<num_rational::BigRational> =
        f.coeffs().iter().map(|c| c.to_big_rational().expect("rational")).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &content).collect()
}

fn rational_roots(f: &Poly) -> Result<Vec<Scalar>, VandError> {
    let q = Field::Rational;
    let mut rest = f.clone();
    let mut roots = Vec::new();
    // zero roots first, so the constant term is nonzero below
    while rest.degree().is_some_and(|d| d > 0) && rest.coeff(0).is_zero() {
        roots.push(q.zero());
        rest = rest.div_rem(&Poly::monomial(q, 1))?.0;
    }
    let mut seen = BTreeSet::new();
    while rest.degree().is_some_and(|d| d > 0) {
        let ints = primitive_integer_coeffs(&rest);
        let a0 = &ints[0];
        let an = ints.last().expect("nonempty");
        let ps = positive_divisors(a0)?;
        let qs = positive_divisors(an)?;
        let mut found = None;
        'search: for qd in &qs {
            for pd in &ps {
                if !pd.gcd(qd).is_one() {
                    continue;
                }
                for sign in [1i32, -1] {
                    let num = if sign > 0 { pd.clone() } else { -pd.clone() };
                    let cand = Scalar::Q(Rational::from_big(num_rational::BigRational::new(num, qd.clone())));
                    if rest.eval(&cand)?.is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let Some(r) = found else { break };
        rest = rest.div_rem(&Poly::linear_root(&r))?.0;
        if !seen.insert(r.to_string()) {
            return Err(VandError::NotMultiplicityFree("repeated root".into()));
        }
        roots.push(r);
    }
    let zeros = roots.iter().filter(|r| r.is_zero()).count();
    if zeros > 1 {
        return Err(VandError::NotMultiplicityFree("repeated root 0".into()));
    }
    roots.sort_by(Scalar::canonical_cmp);
    Ok(roots)
}

/// The diagonalization `H = X⁻¹ D X` of a multiplicity-free Hessenberg matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub system: WestVandSystem,
    pub d: Matrix,
}

/// Diagonalizes `h` with its eigenvalues in canonical order.
pub fn diag_west(h: &Matrix) -> Result<Diagonalization, VandError> {
    let data = polys_of_hessenberg(h)?;
    let thetas = distinct_roots(data.polys.top())?;
    diag_west_ordered(h, &thetas)
}

/// Diagonalizes `h` with the eigenvalues in the given order, building
/// `X_ij = f_j(θ_i)` and certifying `X H = D X` exactly.
pub fn diag_west_ordered(h: &Matrix, thetas: &[Scalar]) -> Result<Diagonalization, VandError> {
    let data = polys_of_hessenberg(h)?;
    check_distinct(thetas)?;
    let n = h.rows();
    if thetas.len() != n {
        return Err(FieldError::DimensionMismatch("one eigenvalue per row needed".into()).into());
    }
    for (i, t) in thetas.iter().enumerate() {
        if !data.polys.top().eval(t)?.is_zero() {
            return Err(VandError::NotMultiplicityFree(format!("theta_{i} is not an eigenvalue")));
        }
    }
    let x = Matrix::from_fn(h.field(), n, n, |i, j| data.polys.get(j).eval_unchecked(&thetas[i]));
    let d = Matrix::diagonal(h.field(), thetas)?;
    if x.mul(h)? != d.mul(&x)? {
        return Err(VandError::Certification("X H ≠ D X".into()));
    }
    let system = WestVandSystem {
        x,
        thetas: thetas.to_vec(),
        polys: data.polys,
    };
    Ok(Diagonalization { system, d })
}

/// The south structure of `X⁻¹` for a west system `(X, θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseStructure {
    pub inverse: Matrix,
    pub south: SouthVandSystem,
    pub associated: GradedPolySeq,
    pub c_h: Scalar,
    pub report: Report,
}

/// Inverts a west system and certifies that `(X⁻¹, θ)` is south Vandermonde
/// with the associated polynomials, and that the bottom row of `X⁻¹` is
/// `c_H / (τ_j(θ_j) η_{d−j}(θ_j) X_j0)`.
pub fn inverse_structure(sys: &WestVandSystem) -> Result<InverseStructure, VandError> {
    let inverse = sys.x.inverse()?;
    let h = connection_matrix(&sys.polys);
    let c_h = subdiagonal_product(&h);
    let associated = associated_seq(&sys.polys)?;
    let south = extract_south(&inverse, &sys.thetas)?;
    let mut report = Report::new();
    report.expect("X⁻¹ is south Vandermonde with the associated polynomials", south.polys == associated, || {
        "south polynomials differ from the associated sequence".into()
    });
    let fam = TauEtaFamily::new(&sys.thetas)?;
    let d = sys.thetas.len() - 1;
    let bad = (0..=d).find(|&j| {
        let expected = &c_h / &(&fam.lagrange_denominator(j) * &sys.x[(j, 0)]);
        inverse[(d, j)] != expected
    });
    report.expect("bottom row of X⁻¹", bad.is_none(), || format!("mismatch at column {}", bad.unwrap_or(0)));
    Ok(InverseStructure {
        inverse,
        south,
        associated,
        c_h,
        report,
    })
}

/// `X D X⁻¹` for a south system equals the connection matrix of the
/// associated sequence of its polynomials.
pub fn certify_south_diagonalization(sys: &SouthVandSystem) -> Result<(), VandError> {
    let d = Matrix::diagonal(sys.x.field(), &sys.thetas)?;
    let lhs = sys.x.mul(&d)?.mul(&sys.x.inverse()?)?;
    let rhs = connection_matrix(&associated_seq(&sys.polys)?);
    if lhs == rhs {
        Ok(())
    } else {
        Err(VandError::Certification("X D X⁻¹ is not the connection matrix of the associated sequence".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn seq(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    fn classical(thetas: &[i64]) -> Matrix {
        let n = thetas.len();
        Matrix::from_fn(Q, n, n, |i, j| Q.from_i64(thetas[i]).pow(j as u32))
    }

    #[test]
    fn classical_vandermonde() {
        let x = classical(&[0, 1, 2]);
        let sys = extract_west(&x, &seq(&[0, 1, 2])).unwrap();
        for j in 0..3 {
            assert_eq!(sys.polys().get(j), &Poly::monomial(Q, j));
        }
        assert_eq!(sys.polys().get(3), &Poly::from_i64(Q, &[0, 2, -3, 1]));
    }

    #[test]
    fn identity_and_non_vandermonde() {
        // I has zeros in its first column, so it fails before any interpolation.
        let id = Matrix::identity(Q, 3);
        assert_eq!(extract_west(&id, &seq(&[0, 1, 2])), Err(VandError::ZeroFirstColumn(1)));
        // First column of ones but column 1 is not linear in θ.
        let x = Matrix::from_i64(Q, &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]).unwrap();
        assert_eq!(extract_west(&x, &seq(&[0, 1, 2])), Err(VandError::NotCompatible(1)));
    }

    #[test]
    fn south_of_a_generic_west_matrix_fails() {
        let x = classical(&[0, 1, 2]);
        // rotated: rows (1,1,1),(2,1,0),(4,1,0): row 1 col 2 … interpolation of column 1 is fine,
        // but the rotated first column holds X_{2,i} = θ_2^i, nonzero, so failure is in degrees.
        assert!(matches!(extract_south(&x, &seq(&[0, 1, 2])), Err(VandError::NotCompatible(_))));
    }

    #[test]
    fn rotation_by_hand() {
        let x = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(x.rotate_clockwise(), Matrix::from_i64(Q, &[&[3, 1], &[4, 2]]).unwrap());
    }

    #[test]
    fn south_constructed_instance() {
        // X_{kl} = f_{d-k}(θ*_l) with f = (1, λ, λ²) and a bottom row of ones.
        let ts = seq(&[1, 3, 4]);
        let x = Matrix::from_fn(Q, 3, 3, |k, l| ts[l].pow((2 - k) as u32));
        let s = extract_south(&x, &ts).unwrap();
        assert!(s.is_normalized());
        assert_eq!(s.polys().get(2), &Poly::monomial(Q, 2));
    }

    #[test]
    fn compatibility() {
        let x = classical(&[0, 1, 2]);
        let c = compatible_sequences(&x).unwrap();
        assert_eq!(c, Compatibility::AffineLine { base: seq(&[0, 1, 2]) });
        assert!(c.admits(&seq(&[3, 5, 7])));
        assert!(!c.admits(&seq(&[3, 5, 8])));
        let dx = Matrix::diagonal(Q, &seq(&[2, -1, 5])).unwrap().mul(&x).unwrap();
        assert_eq!(compatible_sequences(&dx).unwrap(), c);
        assert_eq!(compatible_sequences(&Matrix::identity(Q, 1)).unwrap(), Compatibility::Unconstrained);
    }

    #[test]
    fn hessenberg_examples() {
        let h = Matrix::from_i64(Q, &[&[7]]).unwrap();
        let data = polys_of_hessenberg(&h).unwrap();
        assert_eq!(data.polys.polys(), &[Poly::one(Q), Poly::from_i64(Q, &[-7, 1])]);

        let h = Matrix::from_i64(Q, &[&[0, 0], &[1, 1]]).unwrap();
        let data = polys_of_hessenberg(&h).unwrap();
        assert_eq!(data.polys.get(1), &Poly::monomial(Q, 1));
        assert_eq!(data.polys.get(2), &Poly::from_i64(Q, &[0, -1, 1]));
        assert!(h.eval_poly(data.polys.get(2)).unwrap().is_zero());
        assert_eq!(connection_matrix(&data.polys), h);

        assert_eq!(
            polys_of_hessenberg(&Matrix::identity(Q, 2)),
            Err(VandError::NotHessenberg(1, 0))
        );
    }

    #[test]
    fn monomials_give_the_shift() {
        let s = GradedPolySeq::new((0..4).map(|k| Poly::monomial(Q, k)).collect()).unwrap();
        let h = connection_matrix(&s);
        let shift = Matrix::from_fn(Q, 3, 3, |i, j| if i == j + 1 { Q.one() } else { Q.zero() });
        assert_eq!(h, shift);
        assert_eq!(associated_seq(&s).unwrap(), s);
    }

    #[test]
    fn scaling_the_top_keeps_the_connection_matrix() {
        let s = GradedPolySeq::new((0..4).map(|k| Poly::monomial(Q, k)).collect()).unwrap();
        let mut polys = s.polys().to_vec();
        polys[3] = polys[3].scale(&Q.from_i64(5));
        let scaled = GradedPolySeq::new(polys).unwrap();
        assert_eq!(connection_matrix(&scaled), connection_matrix(&s));
        assert!(!scaled.is_standard());
        assert_eq!(associated_seq(&scaled), Err(VandError::NotStandard));
    }

    #[test]
    fn diag_with_planted_spectrum() {
        let thetas = seq(&[-2, 0, 3, 5]);
        let f = vec![
            Poly::one(Q),
            Poly::from_i64(Q, &[1, 2]),
            Poly::from_i64(Q, &[0, -1, 3]),
            Poly::from_i64(Q, &[4, 0, 1, -1]),
        ];
        let mut all = f.clone();
        all.push(product_of_roots(Q, &thetas));
        let h = connection_matrix(&GradedPolySeq::new(all).unwrap());
        let diag = diag_west(&h).unwrap();
        assert_eq!(diag.system.thetas(), thetas.as_slice());
        assert_eq!(diag.system.x().inverse().unwrap().mul(&diag.d).unwrap().mul(diag.system.x()).unwrap(), h);
        let d0 = diag_west(&Matrix::from_i64(Q, &[&[4]]).unwrap()).unwrap();
        assert_eq!(d0.system.x(), &Matrix::identity(Q, 1));
    }

    #[test]
    fn non_split_spectrum_rejected() {
        // λ² − 2 has no rational roots
        let h = Matrix::from_i64(Q, &[&[0, 2], &[1, 0]]).unwrap();
        assert!(matches!(diag_west(&h), Err(VandError::NotMultiplicityFree(_))));
        // λ² has a repeated root
        let h = Matrix::from_i64(Q, &[&[0, 0], &[1, 0]]).unwrap();
        assert!(matches!(diag_west(&h), Err(VandError::NotMultiplicityFree(_))));
    }

    #[test]
    fn rational_roots_with_denominators() {
        let roots = [Q.ratio(-7, 3).unwrap(), Q.ratio(1, 2).unwrap(), Q.from_i64(4)];
        let f = product_of_roots(Q, &roots).scale(&Q.ratio(6, 5).unwrap());
        let mut expected = roots.to_vec();
        expected.sort_by(Scalar::canonical_cmp);
        assert_eq!(distinct_roots(&f).unwrap(), expected);
    }

    #[test]
    fn inverse_of_classical_2x2() {
        let th = seq(&[2, 5]);
        let x = classical(&[2, 5]);
        let sys = extract_west(&x, &th).unwrap();
        let inv = inverse_structure(&sys).unwrap();
        assert!(inv.report.all_passed(), "{}", inv.report);
        // c_H = 1 for (1, λ, …); bottom row = 1/(θ_0 − θ_1), 1/(θ_1 − θ_0)
        assert!(inv.c_h.is_one());
        assert_eq!(inv.inverse[(1, 0)], Q.ratio(-1, 3).unwrap());
        assert_eq!(inv.inverse[(1, 1)], Q.ratio(1, 3).unwrap());
        certify_south_diagonalization(&inv.south).unwrap();
    }

    #[test]
    fn d0_inverse() {
        let x = Matrix::from_i64(Q, &[&[4]]).unwrap();
        let sys = extract_west(&x, &seq(&[9])).unwrap();
        let inv = inverse_structure(&sys).unwrap();
        assert_eq!(inv.inverse, Matrix::from_rows(Q, vec![vec![Q.ratio(1, 4).unwrap()]]).unwrap());
        assert!(inv.report.all_passed());
    }
}
