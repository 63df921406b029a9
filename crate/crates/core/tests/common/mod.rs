//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use thvand::field::{Field, Matrix, Poly, Scalar};
use thvand::params::AffineMap;
use thvand::sample::Sampler;
use thvand::vand::GradedPolySeq;

pub fn gf101() -> Field {
    Field::prime(101).unwrap()
}

pub fn affine_map(s: &mut Sampler) -> AffineMap {
    s.affine_map()
}

/// A polynomial of exact degree `k` with leading coefficient `lead`.
pub fn poly_with_lead(s: &mut Sampler, k: usize, lead: Scalar) -> Poly {
    let mut c: Vec<Scalar> = (0..k).map(|_| s.scalar()).collect();
    c.push(lead);
    Poly::new(s.field(), c).unwrap()
}

/// A random standard graded sequence f_0..f_{d+1}.
pub fn standard_seq(s: &mut Sampler, d: usize) -> GradedPolySeq {
    let f = s.field();
    let mut polys = vec![Poly::one(f)];
    for k in 1..=d {
        let lead = s.nonzero_scalar();
        polys.push(poly_with_lead(s, k, lead));
    }
    polys.push(poly_with_lead(s, d + 1, f.one()));
    GradedPolySeq::new(polys).unwrap()
}

/// A random Hessenberg matrix (nonzero subdiagonal, zeros below it).
pub fn hessenberg(s: &mut Sampler, n: usize) -> Matrix {
    let f = s.field();
    let mut h = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j + 1 {
                h[(i, j)] = s.nonzero_scalar();
            } else if i <= j {
                h[(i, j)] = s.scalar();
            }
        }
    }
    h
}

/// X_ij = c_i f_j(θ_i) for a random graded f, distinct θ and nonzero c.
pub fn west_matrix(s: &mut Sampler, d: usize) -> (Matrix, Vec<Scalar>, Vec<Poly>) {
    let f = s.field();
    let thetas = s.distinct_scalars(d + 1).unwrap();
    let seq = standard_seq(s, d);
    let polys: Vec<Poly> = seq.polys()[..=d].to_vec();
    let c: Vec<Scalar> = (0..=d).map(|_| s.nonzero_scalar()).collect();
    let x = Matrix::from_fn(f, d + 1, d + 1, |i, j| &c[i] * &polys[j].eval(&thetas[i]).unwrap());
    (x, thetas, polys)
}
