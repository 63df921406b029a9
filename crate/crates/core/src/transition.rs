//! Transition matrices P and 𝒫, the two-variable polynomial p, and the
//! polynomial families {s_i}, {t_i}.

use thiserror::Error;

use crate::field::{BiPoly, Field, Matrix, Poly, Scalar, TauEtaFamily};
use crate::params::{GroupElement, ParameterArray};
use crate::report::Report;
use crate::thsystem::{ScalarData, THSystem};
use crate::vand::{extract_south, extract_west, GradedPolySeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitionError {
    #[error("E_0 has no nonzero column")]
    DegenerateXi,
    #[error("basis matrix is singular")]
    SingularBasis,
}

/// p = Σ_h η_h(λ) τ*_h(μ) / (φ_1 ⋯ φ_h).
pub fn two_var_p(pa: &ParameterArray) -> BiPoly {
    let eta = TauEtaFamily::new(pa.thetas()).expect("valid array");
    let tau_star = TauEtaFamily::new(pa.theta_stars()).expect("valid array");
    (0..=pa.d()).fold(BiPoly::zero(pa.field()), |acc, h| {
        let c = pa.phi_product(h).inv().expect("nonzero phi");
        acc.add(&BiPoly::outer(eta.eta(h), tau_star.tau(h)).scale(&c))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionData {
    pub pa: ParameterArray,
    pub p: BiPoly,
    /// P = 𝒫 L
    pub p_matrix: Matrix,
    /// 𝒫_ij = p(θ_i, θ*_j)
    pub script_p: Matrix,
    /// L = diag(ℓ_0..ℓ_d)
    pub l: Matrix,
    pub scalars: ScalarData,
    /// s_i = ℓ_i p(λ, θ*_i), s_{d+1} = ∏(λ − θ_i)
    pub s_polys: GradedPolySeq,
    /// t_i = p(λ, θ*_i), t_{d+1} = ∏(λ − θ_i)
    pub t_polys: GradedPolySeq,
}

fn char_poly(field: Field, xs: &[Scalar]) -> Poly {
    xs.iter().fold(Poly::one(field), |acc, x| acc.mul(&Poly::linear_root(x)))
}

/// 𝒫 as the product of [η_h(θ_i) / (φ_1 ⋯ φ_h)] and [τ*_h(θ*_j)].
pub fn script_p_matrix(pa: &ParameterArray) -> Matrix {
    let f = pa.field();
    let n = pa.d() + 1;
    let eta = TauEtaFamily::new(pa.thetas()).expect("valid array");
    let tau_star = TauEtaFamily::new(pa.theta_stars()).expect("valid array");
    let inv_phi: Vec<Scalar> = (0..n).map(|h| pa.phi_product(h).inv().expect("nonzero phi")).collect();
    let left = Matrix::from_fn(f, n, n, |i, h| &eta.eta_at(h, &pa.thetas()[i]) * &inv_phi[h]);
    let right = Matrix::from_fn(f, n, n, |h, j| tau_star.tau_at(h, &pa.theta_stars()[j]));
    left.mul(&right).expect("square")
}

/// P = 𝒫 L alone, without the polynomial families.
pub fn p_matrix(pa: &ParameterArray) -> Matrix {
    script_p_matrix(pa).mul(&ScalarData::new(pa).ell_matrix()).expect("square")
}

pub fn build_transition(pa: &ParameterArray) -> TransitionData {
    let f = pa.field();
    let p = two_var_p(pa);
    let scalars = ScalarData::new(pa);
    let script_p = script_p_matrix(pa);
    let l = scalars.ell_matrix();
    let p_matrix = script_p.mul(&l).expect("square");
    let top = char_poly(f, pa.thetas());
    let mut t: Vec<Poly> = pa.theta_stars().iter().map(|ts| p.in_lambda_at(ts)).collect();
    let mut s: Vec<Poly> = t.iter().zip(&scalars.ell).map(|(ti, l)| ti.scale(l)).collect();
    t.push(top.clone());
    s.push(top);
    TransitionData {
        pa: pa.clone(),
        p,
        p_matrix,
        script_p,
        l,
        s_polys: GradedPolySeq::new(s).expect("graded by construction"),
        t_polys: GradedPolySeq::new(t).expect("graded by construction"),
        scalars,
    }
}

/// PP* = P*P = νI and P̃P̃* = P̃*P̃ = ν̃I.
pub fn verify_pp_star(pa: &ParameterArray) -> Report {
    let f = pa.field();
    let n = pa.d() + 1;
    let sc = ScalarData::new(pa);
    let p_of = |g| p_matrix(&pa.relative(g));
    let (p, ps, pt, pts) = (
        p_of(GroupElement::Id),
        p_of(GroupElement::Star),
        p_of(GroupElement::Tilde),
        p_of(GroupElement::TildeStar),
    );
    let nu_i = Matrix::identity(f, n).scale(&sc.nu);
    let nu_t = Matrix::identity(f, n).scale(&sc.nu_tilde);
    let mut r = Report::new();
    let mut prod = |name: &str, a: &Matrix, b: &Matrix, want: &Matrix| {
        r.expect(name, &a.mul(b).expect("square") == want, || format!("{name} differs"));
    };
    prod("P P* = nu I", &p, &ps, &nu_i);
    prod("P* P = nu I", &ps, &p, &nu_i);
    prod("P~ P~* = nu~ I", &pt, &pts, &nu_t);
    prod("P~* P~ = nu~ I", &pts, &pt, &nu_t);
    r
}

/// 𝒫^ς = 𝒫̃*, (𝒫*)^ς = 𝒫̃, p(μ, λ) = p̃*(λ, μ) and p*(μ, λ) = p̃(λ, μ).
pub fn verify_zeta_relations(pa: &ParameterArray) -> Report {
    let rel = |g| {
        let x = pa.relative(g);
        (script_p_matrix(&x), two_var_p(&x))
    };
    let (t, ts, tt, tts) = (
        rel(GroupElement::Id),
        rel(GroupElement::Star),
        rel(GroupElement::Tilde),
        rel(GroupElement::TildeStar),
    );
    let mut r = Report::new();
    r.expect("scriptP zeta = scriptP~*", t.0.zeta_reflect() == tts.0, || {
        "matrices differ".into()
    });
    r.expect("scriptP* zeta = scriptP~", ts.0.zeta_reflect() == tt.0, || {
        "matrices differ".into()
    });
    r.expect("p(mu, lambda) = p~*(lambda, mu)", t.1.swap_variables() == tts.1, || {
        "coefficients differ".into()
    });
    r.expect("p*(mu, lambda) = p~(lambda, mu)", ts.1.swap_variables() == tt.1, || {
        "coefficients differ".into()
    });
    r
}

/// West and south structure of 𝒫 and P, plus the boundary values.
pub fn verify_vand_structure(pa: &ParameterArray) -> Report {
    let d = pa.d();
    let td = build_transition(pa);
    let tts = build_transition(&pa.relative(GroupElement::TildeStar));
    let mut r = Report::new();
    let mut table = |name: &str, got: Result<GradedPolySeq, String>, want: &GradedPolySeq| {
        r.check(
            name,
            got.and_then(|g| if &g == want { Ok(()) } else { Err("polynomials differ".into()) }),
        );
    };
    let west = |x: &Matrix| extract_west(x, pa.thetas()).map(|s| s.polys().clone()).map_err(|e| e.to_string());
    let south = |x: &Matrix| {
        extract_south(x, pa.theta_stars())
            .map(|s| s.polys().clone())
            .map_err(|e| e.to_string())
    };
    table("(scriptP, theta) west with {t_i}", west(&td.script_p), &td.t_polys);
    table("(scriptP, theta*) south with {t~*_i}", south(&td.script_p), &tts.t_polys);
    table("(P, theta) west with {s_i}", west(&td.p_matrix), &td.s_polys);
    table("(P, theta*) south with {t~*_i}", south(&td.p_matrix), &tts.t_polys);

    let f = pa.field();
    let ones = |m: &Matrix| (0..=d).all(|i| m[(i, 0)].is_one() && m[(d, i)].is_one());
    r.expect("scriptP first column and last row are ones", ones(&td.script_p), String::new);
    let ell = &td.scalars.ell;
    r.expect(
        "P_i0 = 1 and P_di = ell_i",
        (0..=d).all(|i| td.p_matrix[(i, 0)].is_one() && td.p_matrix[(d, i)] == ell[i]),
        String::new,
    );
    let theta_d = &pa.thetas()[d];
    r.expect(
        "t_i(theta_d) = 1",
        (0..=d).all(|i| td.t_polys.get(i).eval(theta_d).expect("same field") == f.one()),
        String::new,
    );
    r.expect(
        "s_i(theta_d) = ell_i",
        (0..=d).all(|i| td.s_polys.get(i).eval(theta_d).expect("same field") == ell[i]),
        String::new,
    );
    r
}

/// The four orthogonality relations for {t_i} and {s_i}.
pub fn verify_orthogonality(pa: &ParameterArray) -> Report {
    let f = pa.field();
    let d = pa.d();
    let th = pa.thetas();
    let td = build_transition(pa);
    let tt = build_transition(&pa.relative(GroupElement::Tilde));
    let sc = &td.scalars;
    let ev = |seq: &GradedPolySeq, i: usize, x: &Scalar| seq.get(i).eval(x).expect("same field");
    let delta = |b: bool, v: Scalar| if b { v } else { f.zero() };
    let mut r = Report::new();

    let mut bad = None;
    'a: for i in 0..=d {
        for j in 0..=d {
            let sum = (0..=d).fold(f.zero(), |acc, n| {
                &acc + &(&(&ev(&td.t_polys, i, &th[n]) * &ev(&tt.t_polys, j, &th[n])) * &sc.ell_star[n])
            });
            if sum != delta(i + j == d, &sc.nu / &sc.ell[i]) {
                bad = Some((i, j));
                break 'a;
            }
        }
    }
    r.expect("sum_n t_i t~_j ell*_n", bad.is_none(), || format!("fails at {bad:?}"));

    let mut bad = None;
    'b: for m in 0..=d {
        for n in 0..=d {
            let sum = (0..=d).fold(f.zero(), |acc, i| {
                &acc + &(&(&ev(&td.t_polys, i, &th[m]) * &ev(&tt.t_polys, d - i, &th[n])) * &sc.ell[i])
            });
            if sum != delta(m == n, &sc.nu / &sc.ell_star[m]) {
                bad = Some((m, n));
                break 'b;
            }
        }
    }
    r.expect("sum_i t_i t~_(d-i) ell_i", bad.is_none(), || format!("fails at {bad:?}"));

    let mut bad = None;
    'c: for i in 0..=d {
        for j in 0..=d {
            let sum = (0..=d).fold(f.zero(), |acc, n| {
                &acc + &(&(&ev(&td.s_polys, i, &th[n]) * &ev(&tt.s_polys, j, &th[n])) * &sc.ell_star[n])
            });
            if sum != delta(i + j == d, &sc.nu * &sc.ell_tilde[j]) {
                bad = Some((i, j));
                break 'c;
            }
        }
    }
    r.expect("sum_n s_i s~_j ell*_n", bad.is_none(), || format!("fails at {bad:?}"));

    let mut bad = None;
    'e: for m in 0..=d {
        for n in 0..=d {
            let sum = (0..=d).fold(f.zero(), |acc, i| {
                &acc + &(&(&ev(&td.s_polys, i, &th[m]) * &ev(&tt.s_polys, d - i, &th[n])) / &sc.ell_tilde[d - i])
            });
            if sum != delta(m == n, &sc.nu / &sc.ell_star[m]) {
                bad = Some((m, n));
                break 'e;
            }
        }
    }
    r.expect("sum_i s_i s~_(d-i) / ell~_(d-i)", bad.is_none(), || format!("fails at {bad:?}"));
    r
}

/// P as the transition matrix from {E_i ξ*_0} to {E*_i ξ_0}, with ξ_0 the
/// first nonzero column of E_0 and ξ*_0 = E*_0 ξ_0.
pub fn transition_from_bases(sys: &THSystem) -> Result<Matrix, TransitionError> {
    transition_from_bases_scaled(sys, &sys.field().one())
}

/// As [`transition_from_bases`] with ξ_0 replaced by `c ξ_0`.
pub fn transition_from_bases_scaled(sys: &THSystem, c: &Scalar) -> Result<Matrix, TransitionError> {
    let e0 = &sys.e()[0];
    let col = (0..e0.cols())
        .map(|j| e0.column(j))
        .find(|v| v.iter().any(|x| !x.is_zero()))
        .ok_or(TransitionError::DegenerateXi)?;
    let xi: Vec<Scalar> = col.iter().map(|x| x * c).collect();
    let xi_star = sys.e_star()[0].mul_vec(&xi).expect("square");
    let n = sys.d() + 1;
    let assemble = |es: &[Matrix], v: &[Scalar]| {
        let cols: Vec<Vec<Scalar>> = es.iter().map(|e| e.mul_vec(v).expect("square")).collect();
        Matrix::from_fn(sys.field(), n, n, |i, j| cols[j][i].clone())
    };
    let b = assemble(sys.e(), &xi_star);
    let cm = assemble(sys.e_star(), &xi);
    let binv = b.inverse().map_err(|_| TransitionError::SingularBasis)?;
    Ok(binv.mul(&cm).expect("square"))
}
