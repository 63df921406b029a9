//! TH systems in the split basis: the bidiagonal pair A, A*, their primitive
//! idempotents, the scalars ℓ and ν, and the checks tying them together.

use thiserror::Error;

use crate::field::{Field, FieldError, Matrix, Scalar, TauEtaFamily};
use crate::params::ParameterArray;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThError {
    #[error("eigenvalues {0} and {1} coincide")]
    RepeatedEigenvalue(usize, usize),
    #[error("trace formula {variant} hit a zero trace at i = {i}")]
    ZeroTrace { variant: &'static str, i: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A TH system written in a split basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct THSystem {
    pa: ParameterArray,
    a: Matrix,
    a_star: Matrix,
    e: Vec<Matrix>,
    e_star: Vec<Matrix>,
}

/// `(A, A*)` in the split basis: A lower bidiagonal with diagonal θ_d..θ_0
/// and subdiagonal φ_1..φ_d, A* upper bidiagonal with diagonal θ*_0..θ*_d and
/// superdiagonal 1.
pub fn split_matrices(pa: &ParameterArray) -> (Matrix, Matrix) {
    let f = pa.field();
    let d = pa.d();
    let mut a = Matrix::zeros(f, d + 1, d + 1);
    let mut a_star = Matrix::zeros(f, d + 1, d + 1);
    for i in 0..=d {
        a[(i, i)] = pa.thetas()[d - i].clone();
        a_star[(i, i)] = pa.theta_stars()[i].clone();
        if i > 0 {
            a[(i, i - 1)] = pa.phi(i).clone();
            a_star[(i - 1, i)] = f.one();
        }
    }
    (a, a_star)
}

/// Closed-form primitive idempotents `(E_0..E_d, E*_0..E*_d)` of the split
/// basis pair.
pub fn idempotents_closed(pa: &ParameterArray) -> (Vec<Matrix>, Vec<Matrix>) {
    let f = pa.field();
    let d = pa.d();
    let th = TauEtaFamily::new(pa.thetas()).expect("nonempty");
    let ths = TauEtaFamily::new(pa.theta_stars()).expect("nonempty");
    let phi_prod: Vec<Scalar> = (0..=d).map(|i| pa.phi_product(i)).collect();
    let phi_prod_inv: Vec<Scalar> = phi_prod.iter().map(|p| p.inv().expect("nonzero φ")).collect();

    let e = (0..=d)
        .map(|r| {
            let x = &pa.thetas()[r];
            let den = th.lagrange_denominator(r).inv().expect("distinct θ");
            let tau: Vec<Scalar> = (0..=d).map(|k| th.tau_at(k, x)).collect();
            let eta: Vec<Scalar> = (0..=d).map(|k| th.eta_at(k, x)).collect();
            Matrix::from_fn(f, d + 1, d + 1, |i, j| {
                let num = &tau[d - i] * &eta[j];
                if num.is_zero() {
                    return f.zero();
                }
                &(&(&phi_prod[i] * &phi_prod_inv[j]) * &num) * &den
            })
        })
        .collect();

    let e_star = (0..=d)
        .map(|r| {
            let x = &pa.theta_stars()[r];
            let den = ths.lagrange_denominator(r).inv().expect("distinct θ*");
            let tau: Vec<Scalar> = (0..=d).map(|k| ths.tau_at(k, x)).collect();
            let eta: Vec<Scalar> = (0..=d).map(|k| ths.eta_at(k, x)).collect();
            Matrix::from_fn(f, d + 1, d + 1, |i, j| &(&tau[i] * &eta[d - j]) * &den)
        })
        .collect();
    (e, e_star)
}

/// E_r = ∏_{j≠r} (M − θ_j I)/(θ_r − θ_j).
pub fn idempotents_lagrange(m: &Matrix, thetas: &[Scalar], r: usize) -> Result<Matrix, ThError> {
    if r >= thetas.len() {
        return Err(ThError::IndexOutOfRange(r));
    }
    if !m.is_square() || m.rows() != thetas.len() {
        return Err(FieldError::DimensionMismatch("one eigenvalue per row needed".into()).into());
    }
    let mut acc = Matrix::identity(m.field(), m.rows());
    for (j, tj) in thetas.iter().enumerate() {
        if j == r {
            continue;
        }
        let gap = (&thetas[r] - tj).inv().ok_or(ThError::RepeatedEigenvalue(r.min(j), r.max(j)))?;
        acc = acc.mul(&m.shifted(tj))?.scale(&gap);
    }
    Ok(acc)
}

impl THSystem {
    /// Builds the split-basis system of `pa` and cross-checks the closed-form
    /// idempotents against the Lagrange products.
    pub fn build(pa: &ParameterArray) -> Self {
        let sys = Self::build_closed(pa);
        for r in 0..=pa.d() {
            let e = idempotents_lagrange(&sys.a, pa.thetas(), r).expect("valid parameter array");
            assert_eq!(e, sys.e[r], "closed-form E_{r} disagrees with the Lagrange product");
            let es = idempotents_lagrange(&sys.a_star, pa.theta_stars(), r).expect("valid parameter array");
            assert_eq!(es, sys.e_star[r], "closed-form E*_{r} disagrees with the Lagrange product");
        }
        sys
    }

    /// Closed-form construction only.
    pub fn build_closed(pa: &ParameterArray) -> Self {
        let (a, a_star) = split_matrices(pa);
        let (e, e_star) = idempotents_closed(pa);
        Self {
            pa: pa.clone(),
            a,
            a_star,
            e,
            e_star,
        }
    }

    /// Assembles a system from arbitrary parts, for checking matrices that did
    /// not come from [`THSystem::build`].
    pub fn from_parts(pa: ParameterArray, a: Matrix, a_star: Matrix, e: Vec<Matrix>, e_star: Vec<Matrix>) -> Self {
        Self {
            pa,
            a,
            a_star,
            e,
            e_star,
        }
    }

    pub fn pa(&self) -> &ParameterArray {
        &self.pa
    }

    pub fn d(&self) -> usize {
        self.pa.d()
    }

    pub fn field(&self) -> Field {
        self.pa.field()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn a_star(&self) -> &Matrix {
        &self.a_star
    }

    pub fn e(&self) -> &[Matrix] {
        &self.e
    }

    pub fn e_star(&self) -> &[Matrix] {
        &self.e_star
    }

    /// Checks the TH-system axioms and the basic idempotent identities.
    pub fn verify_axioms(&self) -> Report {
        let mut rep = Report::new();
        let thetas = self.pa.thetas();
        let theta_stars = self.pa.theta_stars();
        for (label, op, idem, eig) in [
            ("E", &self.a, &self.e, thetas),
            ("E*", &self.a_star, &self.e_star, theta_stars),
        ] {
            rep.check(format!("sum of {label}_i is I"), resolution_of_identity(idem));
            rep.check(format!("{label}_i {label}_j = δ_ij {label}_i"), orthogonal_idempotents(idem));
            rep.check(format!("spectral decomposition of the {label} operator"), spectral(op, idem, eig));
        }
        rep.check("E_i A* E_j support", hessenberg_support(&self.e, &self.a_star, "A*"));
        rep.check("E*_i A E*_j support", hessenberg_support(&self.e_star, &self.a, "A"));
        rep
    }

    /// ℓ, ν and their relatives, with ν and ν̃ also recomputed from traces.
    ///
    /// Panics if the two routes to ν disagree, which would mean a bug.
    pub fn scalars(&self) -> ScalarData {
        let sd = ScalarData::new(&self.pa);
        let d = self.d();
        let t0 = self.e[0].trace_of_product(&self.e_star[0]).expect("square");
        let td = self.e[d].trace_of_product(&self.e_star[d]).expect("square");
        assert!((&sd.nu * &t0).is_one(), "ν · trace(E_0 E*_0) ≠ 1");
        assert!((&sd.nu_tilde * &td).is_one(), "ν̃ · trace(E_d E*_d) ≠ 1");
        sd
    }

    /// Recovers φ_1..φ_d by each of the four trace formulas.
    pub fn split_from_traces(&self) -> Result<SplitRecovery, ThError> {
        let d = self.d();
        let th = self.pa.thetas();
        let ts = self.pa.theta_stars();
        let ratio = |variant: &'static str, i: usize, factor: Scalar, num: &Matrix, den: &Matrix, e: &Matrix| {
            let n = num.trace_of_product(e)?;
            let m = den.trace_of_product(e)?;
            if n.is_zero() || m.is_zero() {
                return Err(ThError::ZeroTrace { variant, i });
            }
            Ok::<Scalar, ThError>(&factor * &(&n / &m))
        };

        // η_k(A), τ_k(A), η*_k(A*), τ*_k(A*) for k = 0..=d
        let eta_a = self.a.cumulative_products(th.iter().rev().take(d));
        let tau_a = self.a.cumulative_products(th.iter().take(d));
        let eta_as = self.a_star.cumulative_products(ts.iter().rev().take(d));
        let tau_as = self.a_star.cumulative_products(ts.iter().take(d));

        let mut out = SplitRecovery::default();
        for i in 1..=d {
            out.standard.push(ratio(
                "standard",
                i,
                &ts[0] - &ts[i],
                &eta_a[i],
                &eta_a[i - 1],
                &self.e_star[0],
            )?);
            out.via_e0.push(ratio(
                "via E_0",
                i,
                &th[0] - &th[d - i + 1],
                &eta_as[d - i + 1],
                &eta_as[d - i],
                &self.e[0],
            )?);
            out.via_e_star_d.push(ratio(
                "via E*_d",
                i,
                &ts[d] - &ts[i - 1],
                &tau_a[d - i + 1],
                &tau_a[d - i],
                &self.e_star[d],
            )?);
            out.via_e_d.push(ratio(
                "via E_d",
                i,
                &th[d] - &th[d - i],
                &tau_as[i],
                &tau_as[i - 1],
                &self.e[d],
            )?);
        }
        Ok(out)
    }

    /// Verifies the product identities relating the idempotents, ℓ and ν.
    pub fn check_identities(&self, sc: &ScalarData) -> Report {
        let mut rep = Report::new();
        let d = self.d();
        let (e, es) = (&self.e, &self.e_star);
        let th = self.pa.thetas();
        let ts = self.pa.theta_stars();
        let f = self.field();
        let mul3 = |x: &Matrix, y: &Matrix, z: &Matrix| x.mul(y).and_then(|p| p.mul(z)).expect("square");

        let family = |rep: &mut Report, name: &str, lhs: &dyn Fn(usize) -> Matrix, rhs: &dyn Fn(usize) -> Matrix| {
            let bad = (0..=d).find(|&i| lhs(i) != rhs(i));
            rep.expect(name, bad.is_none(), || format!("fails at i = {}", bad.unwrap_or(0)));
        };

        let ed_es0_e0 = mul3(&e[d], &es[0], &e[0]);
        let esd_e0_es0 = mul3(&es[d], &e[0], &es[0]);
        let ed_esd_e0 = mul3(&e[d], &es[d], &e[0]);
        let esd_ed_es0 = mul3(&es[d], &e[d], &es[0]);
        family(
            &mut rep,
            "E_d E*_i E_0 = ℓ_i E_d E*_0 E_0",
            &|i| mul3(&e[d], &es[i], &e[0]),
            &|i| ed_es0_e0.scale(&sc.ell[i]),
        );
        family(
            &mut rep,
            "E*_d E_i E*_0 = ℓ*_i E*_d E_0 E*_0",
            &|i| mul3(&es[d], &e[i], &es[0]),
            &|i| esd_e0_es0.scale(&sc.ell_star[i]),
        );
        family(
            &mut rep,
            "E_d E*_i E_0 = ℓ̃_{d-i} E_d E*_d E_0",
            &|i| mul3(&e[d], &es[i], &e[0]),
            &|i| ed_esd_e0.scale(&sc.ell_tilde[d - i]),
        );
        family(
            &mut rep,
            "E*_d E_i E*_0 = ℓ̃*_{d-i} E*_d E_d E*_0",
            &|i| mul3(&es[d], &e[i], &es[0]),
            &|i| esd_ed_es0.scale(&sc.ell_tilde_star[d - i]),
        );

        rep.expect("ν E_0 E*_0 E_0 = E_0", mul3(&e[0], &es[0], &e[0]).scale(&sc.nu) == e[0], String::new);
        rep.expect("ν E*_0 E_0 E*_0 = E*_0", mul3(&es[0], &e[0], &es[0]).scale(&sc.nu) == es[0], String::new);
        rep.expect(
            "ν̃ E_d E*_d E_d = E_d",
            mul3(&e[d], &es[d], &e[d]).scale(&sc.nu_tilde) == e[d],
            String::new,
        );
        rep.expect(
            "ν̃ E*_d E_d E*_d = E*_d",
            mul3(&es[d], &e[d], &es[d]).scale(&sc.nu_tilde) == es[d],
            String::new,
        );

        // E*_0 η_i(A) E*_0 = φ_1⋯φ_i / ∏_{k≤i}(θ*_0 − θ*_k) · E*_0
        let eta_a = self.a.cumulative_products(th.iter().rev().take(d));
        let tau_a = self.a.cumulative_products(th.iter().take(d));
        let eta_as = self.a_star.cumulative_products(ts.iter().rev().take(d));
        let tau_as = self.a_star.cumulative_products(ts.iter().take(d));
        let prod = |range: std::ops::RangeInclusive<usize>, g: &dyn Fn(usize) -> Scalar| {
            range.fold(f.one(), |acc, k| &acc * &g(k))
        };
        let phi_top = |i: usize| prod(1..=i, &|k| self.pa.phi(d - k + 1).clone());
        family(
            &mut rep,
            "E*_0 η_i(A) E*_0 = (φ_1⋯φ_i)/∏(θ*_0 − θ*_k) E*_0",
            &|i| mul3(&es[0], &eta_a[i], &es[0]),
            &|i| es[0].scale(&(&self.pa.phi_product(i) / &prod(1..=i, &|k| &ts[0] - &ts[k]))),
        );
        family(
            &mut rep,
            "E_0 η*_i(A*) E_0 = (φ_d⋯φ_{d-i+1})/∏(θ_0 − θ_k) E_0",
            &|i| mul3(&e[0], &eta_as[i], &e[0]),
            &|i| e[0].scale(&(&phi_top(i) / &prod(1..=i, &|k| &th[0] - &th[k]))),
        );
        family(
            &mut rep,
            "E*_d τ_i(A) E*_d = (φ_d⋯φ_{d-i+1})/∏(θ*_d − θ*_{d-k}) E*_d",
            &|i| mul3(&es[d], &tau_a[i], &es[d]),
            &|i| es[d].scale(&(&phi_top(i) / &prod(1..=i, &|k| &ts[d] - &ts[d - k]))),
        );
        family(
            &mut rep,
            "E_d τ*_i(A*) E_d = (φ_1⋯φ_i)/∏(θ_d − θ_{d-k}) E_d",
            &|i| mul3(&e[d], &tau_as[i], &e[d]),
            &|i| e[d].scale(&(&self.pa.phi_product(i) / &prod(1..=i, &|k| &th[d] - &th[d - k]))),
        );
        rep
    }
}

fn resolution_of_identity(idem: &[Matrix]) -> Result<(), String> {
    let n = idem.len();
    let f = idem[0].field();
    let sum = idem[1..].iter().try_fold(idem[0].clone(), |acc, m| acc.add(m)).map_err(|e| e.to_string())?;
    if sum == Matrix::identity(f, n) {
        Ok(())
    } else {
        Err("sum differs from I".into())
    }
}

fn orthogonal_idempotents(idem: &[Matrix]) -> Result<(), String> {
    for (i, ei) in idem.iter().enumerate() {
        for (j, ej) in idem.iter().enumerate() {
            let p = ei.mul(ej).map_err(|e| e.to_string())?;
            let ok = if i == j { &p == ei } else { p.is_zero() };
            if !ok {
                return Err(format!("fails at (i, j) = ({i}, {j})"));
            }
        }
    }
    Ok(())
}

fn spectral(op: &Matrix, idem: &[Matrix], eig: &[Scalar]) -> Result<(), String> {
    let f = op.field();
    let mut sum = Matrix::zeros(f, op.rows(), op.cols());
    for (m, t) in idem.iter().zip(eig) {
        sum = sum.add(&m.scale(t)).map_err(|e| e.to_string())?;
    }
    if &sum == op {
        Ok(())
    } else {
        Err("Σ θ_i E_i differs from the operator".into())
    }
}

/// E_i M E_j = 0 for i − j > 1 and ≠ 0 for i − j = 1.
fn hessenberg_support(idem: &[Matrix], m: &Matrix, name: &str) -> Result<(), String> {
    let n = idem.len();
    for j in 0..n {
        let mj = m.mul(&idem[j]).map_err(|e| e.to_string())?;
        for i in j + 1..n {
            let p = idem[i].mul(&mj).map_err(|e| e.to_string())?;
            if i == j + 1 && p.is_zero() {
                return Err(format!("E_{i} {name} E_{j} = 0 with i − j = 1"));
            }
            if i > j + 1 && !p.is_zero() {
                return Err(format!("E_{i} {name} E_{j} ≠ 0 with i − j = {}", i - j));
            }
        }
    }
    Ok(())
}

/// The four split-sequence recoveries; each vector holds φ_1..φ_d.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitRecovery {
    pub standard: Vec<Scalar>,
    pub via_e0: Vec<Scalar>,
    pub via_e_star_d: Vec<Scalar>,
    pub via_e_d: Vec<Scalar>,
}

impl SplitRecovery {
    pub fn variants(&self) -> [(&'static str, &[Scalar]); 4] {
        [
            ("standard", &self.standard),
            ("via E_0", &self.via_e0),
            ("via E*_d", &self.via_e_star_d),
            ("via E_d", &self.via_e_d),
        ]
    }
}

/// The scalars ℓ_i, ℓ*_i, ℓ̃_i, ℓ̃*_i, ν, ν̃ of a parameter array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarData {
    pub ell: Vec<Scalar>,
    pub ell_star: Vec<Scalar>,
    pub ell_tilde: Vec<Scalar>,
    pub ell_tilde_star: Vec<Scalar>,
    pub nu: Scalar,
    pub nu_tilde: Scalar,
}

/// ℓ_i = η_d(x_0)/(τ_i(x_i) η_{d−i}(x_i)).
fn ell_sequence(xs: &[Scalar]) -> Vec<Scalar> {
    let fam = TauEtaFamily::new(xs).expect("nonempty");
    let d = fam.d();
    let top = fam.eta_at(d, &xs[0]);
    (0..=d)
        .map(|i| &top / &fam.lagrange_denominator(i))
        .collect()
}

/// ℓ̃_i = τ_d(x_d)/(η_i(x_{d−i}) τ_{d−i}(x_{d−i})).
fn ell_tilde_sequence(xs: &[Scalar]) -> Vec<Scalar> {
    let fam = TauEtaFamily::new(xs).expect("nonempty");
    let d = fam.d();
    let top = fam.tau_at(d, &xs[d]);
    (0..=d)
        .map(|i| {
            let x = &xs[d - i];
            &top / &(&fam.eta_at(i, x) * &fam.tau_at(d - i, x))
        })
        .collect()
}

impl ScalarData {
    pub fn new(pa: &ParameterArray) -> Self {
        let th = pa.thetas();
        let ts = pa.theta_stars();
        let d = pa.d();
        let f = pa.field();
        let phi = pa.phi_product(d);
        let spread = |xs: &[Scalar], base: usize| {
            (0..=d)
                .filter(|&k| k != base)
                .fold(f.one(), |acc, k| &acc * &(&xs[base] - &xs[k]))
        };
        let nu = &(&spread(th, 0) * &spread(ts, 0)) / &phi;
        let nu_tilde = &(&spread(th, d) * &spread(ts, d)) / &phi;
        Self {
            ell: ell_sequence(ts),
            ell_star: ell_sequence(th),
            ell_tilde: ell_tilde_sequence(ts),
            ell_tilde_star: ell_tilde_sequence(th),
            nu,
            nu_tilde,
        }
    }

    pub fn d(&self) -> usize {
        self.ell.len() - 1
    }

    /// L = diag(ℓ_0, …, ℓ_d).
    pub fn ell_matrix(&self) -> Matrix {
        Matrix::diagonal(self.nu.field(), &self.ell).expect("same field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::GroupElement;

    const Q: Field = Field::Rational;

    fn pa(t: &[i64], ts: &[i64], p: &[i64]) -> ParameterArray {
        ParameterArray::from_i64(Q, t, ts, p).unwrap()
    }

    #[test]
    fn d1_matrices() {
        let sys = THSystem::build(&pa(&[0, 1], &[0, 1], &[1]));
        assert_eq!(sys.a(), &Matrix::from_i64(Q, &[&[1, 0], &[1, 0]]).unwrap());
        assert_eq!(sys.a_star(), &Matrix::from_i64(Q, &[&[0, 1], &[0, 1]]).unwrap());
    }

    #[test]
    fn d0_is_trivial() {
        let sys = THSystem::build(&pa(&[4], &[9], &[]));
        assert_eq!(sys.e()[0], Matrix::identity(Q, 1));
        assert_eq!(sys.e_star()[0], Matrix::identity(Q, 1));
        assert!(sys.verify_axioms().all_passed());
        assert!(sys.split_from_traces().unwrap().standard.is_empty());
        let sc = sys.scalars();
        assert!(sc.nu.is_one() && sc.nu_tilde.is_one());
        assert!(sys.check_identities(&sc).all_passed());
    }

    #[test]
    fn lagrange_small_cases() {
        let m = Matrix::from_i64(Q, &[&[0, 0], &[0, 1]]).unwrap();
        let th = [Q.zero(), Q.one()];
        assert_eq!(idempotents_lagrange(&m, &th, 1).unwrap(), m);
        let same = [Q.one(), Q.one()];
        assert_eq!(idempotents_lagrange(&m, &same, 0), Err(ThError::RepeatedEigenvalue(0, 1)));
    }

    #[test]
    fn d1_scalars_and_trace_recovery() {
        let sys = THSystem::build(&pa(&[0, 1], &[0, 1], &[1]));
        let sc = sys.scalars();
        assert_eq!(sc.ell, vec![Q.one(), Q.from_i64(-1)]);
        assert!(sc.nu.is_one());
        // η_1(A) = A − θ_1 I = [[0,0],[1,-1]], E*_0 = [[1,-1],[0,0]]
        let eta1 = Matrix::from_i64(Q, &[&[0, 0], &[1, -1]]).unwrap();
        assert_eq!(sys.e_star()[0], Matrix::from_i64(Q, &[&[1, -1], &[0, 0]]).unwrap());
        assert_eq!(eta1.mul(&sys.e_star()[0]).unwrap().trace().unwrap(), Q.from_i64(-1));
        let rec = sys.split_from_traces().unwrap();
        for (_, v) in rec.variants() {
            assert_eq!(v, &[Q.one()]);
        }
    }

    #[test]
    fn e_star_diagonal_entries_are_one() {
        let sys = THSystem::build(&pa(&[2, -1, 5, 0], &[1, 3, -2, 7], &[2, -3, 1]));
        for (r, m) in sys.e_star().iter().enumerate() {
            assert!(m[(r, r)].is_one());
        }
        assert!(sys.verify_axioms().all_passed());
        assert!(sys.check_identities(&sys.scalars()).all_passed());
    }

    #[test]
    fn relatives_of_ell() {
        let p = pa(&[2, -1, 5, 0], &[1, 3, -2, 7], &[2, -3, 1]);
        let sc = ScalarData::new(&p);
        assert!(sc.ell[0].is_one());
        assert_eq!(ScalarData::new(&p.relative(GroupElement::Star)).ell, sc.ell_star);
        assert_eq!(ScalarData::new(&p.relative(GroupElement::Tilde)).ell, sc.ell_tilde);
        assert_eq!(ScalarData::new(&p.relative(GroupElement::TildeStar)).ell, sc.ell_tilde_star);
        assert_eq!(ScalarData::new(&p.relative(GroupElement::Star)).nu, sc.nu);
    }

    #[test]
    fn zeroed_phi_breaks_the_axioms() {
        // Zero φ_1 in A after the fact and recompute the idempotents of the
        // damaged matrix; A is still diagonalizable but no longer irreducible.
        let p = pa(&[0, 1, 3], &[0, 2, 5], &[1, 2]);
        let sys = THSystem::build(&p);
        let mut a = sys.a().clone();
        a[(1, 0)] = Q.zero();
        let e: Vec<Matrix> = (0..=2).map(|r| idempotents_lagrange(&a, p.thetas(), r).unwrap()).collect();
        let broken = THSystem::from_parts(p.clone(), a, sys.a_star().clone(), e, sys.e_star().to_vec());
        let rep = broken.verify_axioms();
        let fail = rep.first_failure().expect("must fail");
        assert!(fail.detail.contains("i − j = 1"), "{rep}");
    }
}
