//! Property tests for the algebraic invariants of each module.

mod common;

use proptest::prelude::*;

use thvand::bij::{chi, reduce_to_matrix, rho, ClassComparison};
use thvand::field::{make_tau, Field, Matrix, TauEtaFamily};
use thvand::params::{is_affine_related, AffineRelation, GroupElement, ParameterArray};
use thvand::sample::Sampler;
use thvand::thsystem::{idempotents_lagrange, THSystem};
use thvand::transition::{build_transition, p_matrix, script_p_matrix, transition_from_bases, transition_from_bases_scaled};
use thvand::vand::{
    certify_south_diagonalization, connection_matrix, diag_west, diag_west_ordered, extract_west,
    inverse_structure, polys_of_hessenberg,
};

fn field_of(prime: bool) -> Field {
    if prime {
        common::gf101()
    } else {
        Field::Rational
    }
}

fn sampler() -> impl Strategy<Value = Sampler> {
    (any::<u64>(), any::<bool>()).prop_map(|(seed, prime)| Sampler::new(field_of(prime), seed))
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn tau_has_degree_i_and_is_monic(mut s in sampler(), d in 0usize..8) {
        let xs = s.distinct_scalars(d + 1).unwrap();
        for i in 0..=d + 1 {
            let t = make_tau(&xs, i).unwrap();
            prop_assert_eq!(t.degree(), Some(i));
            prop_assert!(t.is_monic());
        }
    }

    #[test]
    fn zeta_is_an_involutive_anti_automorphism(mut s in sampler(), n in 1usize..6) {
        let f = s.field();
        let m = Matrix::from_fn(f, n, n, |_, _| s.scalar());
        let k = Matrix::from_fn(f, n, n, |_, _| s.scalar());
        prop_assert_eq!(m.zeta_reflect().zeta_reflect(), m.clone());
        prop_assert_eq!(m.mul(&k).unwrap().zeta_reflect(), k.zeta_reflect().mul(&m.zeta_reflect()).unwrap());
    }

    #[test]
    fn scalars_round_trip_through_strings(mut s in sampler()) {
        let f = s.field();
        let x = s.scalar();
        prop_assert_eq!(f.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn relatives_follow_the_group_law(mut s in sampler(), d in 0usize..7) {
        let pa = s.parameter_array(d).unwrap();
        for g in GroupElement::ALL {
            for h in GroupElement::ALL {
                prop_assert_eq!(pa.relative(g).relative(h), pa.relative(g.compose(h)));
            }
        }
    }

    #[test]
    fn affine_and_star_commute(mut s in sampler(), d in 0usize..7) {
        let pa = s.parameter_array(d).unwrap();
        let m = common::affine_map(&mut s);
        let lhs = pa.affine(&m).unwrap().relative(GroupElement::Star);
        let rhs = pa.relative(GroupElement::Star).affine(&m.swapped()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn affine_relation_is_an_equivalence(mut s in sampler(), d in 0usize..7) {
        let a = s.parameter_array(d).unwrap();
        let b = a.affine(&common::affine_map(&mut s)).unwrap();
        let c = b.affine(&common::affine_map(&mut s)).unwrap();
        let witness = |x: &ParameterArray, y: &ParameterArray| match is_affine_related(x, y) {
            AffineRelation::Related { witness } => Some(witness),
            AffineRelation::Unrelated { .. } => None,
        };
        prop_assert!(witness(&a, &a).is_some());
        let ab = witness(&a, &b).unwrap();
        prop_assert_eq!(ab.inverse().apply(&b).unwrap(), a.clone());
        prop_assert!(witness(&b, &a).is_some());
        let bc = witness(&b, &c).unwrap();
        prop_assert_eq!(ab.then(&bc).apply(&a).unwrap(), c.clone());
        prop_assert!(witness(&a, &c).is_some());
    }

    #[test]
    fn system_axioms_and_idempotent_methods(mut s in sampler(), d in 0usize..7) {
        let pa = s.parameter_array(d).unwrap();
        let sys = THSystem::build_closed(&pa);
        let rep = sys.verify_axioms();
        prop_assert!(rep.all_passed(), "{}", rep);
        for r in 0..=d {
            prop_assert_eq!(&idempotents_lagrange(sys.a(), pa.thetas(), r).unwrap(), &sys.e()[r]);
            prop_assert_eq!(&idempotents_lagrange(sys.a_star(), pa.theta_stars(), r).unwrap(), &sys.e_star()[r]);
        }
    }

    #[test]
    fn idempotent_zero_pattern_follows_the_closed_form(mut s in sampler(), d in 0usize..7) {
        let pa = s.parameter_array(d).unwrap();
        let sys = THSystem::build_closed(&pa);
        let tau = TauEtaFamily::new(pa.thetas()).unwrap();
        let tau_star = TauEtaFamily::new(pa.theta_stars()).unwrap();
        for r in 0..=d {
            let (t, ts) = (&pa.thetas()[r], &pa.theta_stars()[r]);
            for i in 0..=d {
                for j in 0..=d {
                    let vanishes = (&tau.tau_at(d - i, t) * &tau.eta_at(j, t)).is_zero();
                    prop_assert_eq!(sys.e()[r][(i, j)].is_zero(), vanishes);
                    let vanishes = (&tau_star.tau_at(i, ts) * &tau_star.eta_at(d - j, ts)).is_zero();
                    prop_assert_eq!(sys.e_star()[r][(i, j)].is_zero(), vanishes);
                }
                // E*_r is upper triangular
                for j in 0..i {
                    prop_assert!(sys.e_star()[r][(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn nu_inverts_the_traces(mut s in sampler(), d in 0usize..7) {
        let pa = s.parameter_array(d).unwrap();
        let sys = THSystem::build_closed(&pa);
        let sc = sys.scalars();
        let f = pa.field();
        prop_assert_eq!(&sc.nu * &sys.e()[0].trace_of_product(&sys.e_star()[0]).unwrap(), f.one());
        prop_assert_eq!(&sc.nu_tilde * &sys.e()[d].trace_of_product(&sys.e_star()[d]).unwrap(), f.one());
        let ids = sys.check_identities(&sc);
        prop_assert!(ids.all_passed(), "{}", ids);
    }

    #[test]
    fn extract_west_recovers_planted_sequences(mut s in sampler(), d in 0usize..7) {
        let (x, thetas, polys) = common::west_matrix(&mut s, d);
        let sys = extract_west(&x, &thetas).unwrap();
        prop_assert_eq!(&sys.polys().polys()[..=d], &polys[..]);
        prop_assert!(x.inverse().is_ok());
    }

    #[test]
    fn hessenberg_and_connection_are_inverse(mut s in sampler(), d in 0usize..7) {
        let seq = common::standard_seq(&mut s, d);
        prop_assert_eq!(polys_of_hessenberg(&connection_matrix(&seq)).unwrap().polys, seq);
        let h = common::hessenberg(&mut s, d + 1);
        let data = polys_of_hessenberg(&h).unwrap();
        prop_assert_eq!(connection_matrix(&data.polys), h.clone());
        prop_assert!(h.eval_poly(data.polys.top()).unwrap().is_zero());
        // leading coefficient of f_i is the inverse of the leading subdiagonal product
        for i in 0..=d {
            let prod = (1..=i).fold(s.field().one(), |acc, k| &acc * &h[(k, k - 1)]);
            prop_assert_eq!(data.polys.get(i).leading().unwrap(), &prod.inv().unwrap());
        }
    }

    #[test]
    fn diagonalization_composes_with_the_inverse(mut s in sampler(), d in 0usize..7) {
        // plant the spectrum: H is the connection matrix of a sequence whose top has distinct roots
        let thetas = s.distinct_scalars(d + 1).unwrap();
        let seq = common::standard_seq(&mut s, d);
        let top = thetas.iter().fold(thvand::field::Poly::one(s.field()), |acc, t| {
            acc.mul(&thvand::field::Poly::linear_root(t))
        });
        let mut polys = seq.polys().to_vec();
        polys[d + 1] = top;
        let seq = thvand::vand::GradedPolySeq::new(polys).unwrap();
        let h = connection_matrix(&seq);
        let diag = diag_west(&h).unwrap();
        let x = diag.system.x();
        prop_assert_eq!(&x.inverse().unwrap().mul(&diag.d).unwrap().mul(x).unwrap(), &h);
        let inv = inverse_structure(&diag.system).unwrap();
        prop_assert!(inv.report.all_passed(), "{}", inv.report);
        certify_south_diagonalization(&inv.south).unwrap();
        let y = &inv.inverse;
        prop_assert_eq!(y.mul(&diag.d).unwrap().mul(&y.inverse().unwrap()).unwrap(), h);
    }

    #[test]
    fn split_a_diagonalizes_to_the_left_factor_of_script_p(mut s in sampler(), d in 0usize..7) {
        let pa = s.parameter_array(d).unwrap();
        let sys = THSystem::build_closed(&pa);
        let diag = diag_west_ordered(sys.a(), pa.thetas()).unwrap();
        let tau_star = TauEtaFamily::new(pa.theta_stars()).unwrap();
        let right = Matrix::from_fn(pa.field(), d + 1, d + 1, |h, j| tau_star.tau_at(h, &pa.theta_stars()[j]));
        prop_assert_eq!(diag.system.x().mul(&right).unwrap(), script_p_matrix(&pa));
    }

    #[test]
    fn transition_invariants(mut s in sampler(), d in 0usize..7) {
        let pa = s.parameter_array(d).unwrap();
        let sys = THSystem::build_closed(&pa);
        let td = build_transition(&pa);
        let c = s.nonzero_scalar();
        prop_assert_eq!(transition_from_bases(&sys).unwrap(), transition_from_bases_scaled(&sys, &c).unwrap());
        let p_star = p_matrix(&pa.relative(GroupElement::Star));
        prop_assert_eq!(td.p_matrix.inverse().unwrap(), p_star.scale(&td.scalars.nu.inv().unwrap()));
        let image = pa.affine(&common::affine_map(&mut s)).unwrap();
        prop_assert_eq!(script_p_matrix(&image), td.script_p.clone());
        for i in 0..=d {
            prop_assert!(td.script_p[(i, 0)].is_one() && td.script_p[(d, i)].is_one());
        }
    }

    #[test]
    fn rho_and_chi_are_inverse(mut s in sampler(), d in 0usize..7) {
        let pa = s.parameter_array(d).unwrap();
        let ws = rho(&pa);
        let back = chi(&ws).unwrap();
        prop_assert_eq!(&back, &pa);
        prop_assert_eq!(rho(&back), ws.clone());
        let image = pa.affine(&common::affine_map(&mut s)).unwrap();
        let moved = rho(&image);
        prop_assert_eq!(reduce_to_matrix(&moved), reduce_to_matrix(&ws));
        prop_assert_eq!(moved.thetas(), image.thetas());
        prop_assert_eq!(moved.theta_stars(), image.theta_stars());
    }

    #[test]
    fn class_tests_agree(mut s in sampler(), d in 0usize..7) {
        let a = s.parameter_array(d).unwrap();
        let b = s.parameter_array(d).unwrap();
        let cmp = ClassComparison::of(&a, &b);
        prop_assert!(cmp.consistent(), "{:?}", cmp);
        let image = a.affine(&common::affine_map(&mut s)).unwrap();
        prop_assert!(ClassComparison::of(&a, &image).all());
    }
}
