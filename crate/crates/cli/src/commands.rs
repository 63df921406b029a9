use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use thvand::bij::{chi, five_set_roundtrip, rho, ClassComparison};
use thvand::field::Field;
use thvand::params::{AffineMap, GroupElement, ParameterArray};
use thvand::report::Report;
use thvand::sample::Sampler;
use thvand::thsystem::THSystem;
use thvand::transition::{
    build_transition, transition_from_bases, verify_orthogonality, verify_pp_star, verify_vand_structure,
    verify_zeta_relations,
};
use thvand::vand::{
    compatible_sequences, diag_west, diag_west_ordered, extract_south, extract_west, inverse_structure,
    Compatibility,
};

use crate::json::*;
use crate::{Emit, Outcome, VandOp};

pub fn validate(v: &Value) -> Result<Outcome> {
    let pa = pa_from_json(v)?;
    Ok(Outcome::ok(json!({"valid": true, "d": pa.d()})))
}

pub fn build(v: &Value, emit: Emit) -> Result<Outcome> {
    let pa = pa_from_json(v)?;
    let sys = THSystem::build(&pa);
    let axioms = sys.verify_axioms();
    let mut out = Map::new();
    out.insert("field".into(), field_to_json(pa.field()));
    match emit {
        Emit::Matrices => {
            let ms = |xs: &[thvand::field::Matrix]| Value::Array(xs.iter().map(matrix_to_json).collect());
            out.insert("A".into(), matrix_to_json(sys.a()));
            out.insert("A_star".into(), matrix_to_json(sys.a_star()));
            out.insert("E".into(), ms(sys.e()));
            out.insert("E_star".into(), ms(sys.e_star()));
            out.insert("axioms".into(), report_to_json(&axioms));
            Ok(Outcome::checked(Value::Object(out), axioms.all_passed()))
        }
        Emit::Scalars => {
            let sc = sys.scalars();
            let ids = sys.check_identities(&sc);
            out.insert("ell".into(), scalars_to_json(&sc.ell));
            out.insert("ell_star".into(), scalars_to_json(&sc.ell_star));
            out.insert("ell_tilde".into(), scalars_to_json(&sc.ell_tilde));
            out.insert("ell_tilde_star".into(), scalars_to_json(&sc.ell_tilde_star));
            out.insert("nu".into(), scalar_to_json(&sc.nu));
            out.insert("nu_tilde".into(), scalar_to_json(&sc.nu_tilde));
            let mut split = Map::new();
            let mut recovered = true;
            match sys.split_from_traces() {
                Ok(rec) => {
                    for (name, phis) in rec.variants() {
                        recovered &= phis == pa.phis();
                        split.insert(name.into(), scalars_to_json(phis));
                    }
                }
                Err(e) => {
                    recovered = false;
                    split.insert("error".into(), e.to_string().into());
                }
            }
            out.insert("phi_from_traces".into(), Value::Object(split));
            out.insert("identities".into(), report_to_json(&ids));
            Ok(Outcome::checked(Value::Object(out), recovered && ids.all_passed()))
        }
    }
}

pub fn transition(v: &Value) -> Result<Outcome> {
    let pa = pa_from_json(v)?;
    let td = build_transition(&pa);
    Ok(Outcome::ok(json!({
        "field": field_to_json(pa.field()),
        "P": matrix_to_json(&td.p_matrix),
        "scriptP": matrix_to_json(&td.script_p),
        "L": matrix_to_json(&td.l),
        "nu": scalar_to_json(&td.scalars.nu),
        "s": polys_to_json(td.s_polys.polys()),
        "t": polys_to_json(td.t_polys.polys()),
        "p": bipoly_to_json(&td.p),
    })))
}

pub fn relatives(v: &Value, g: &str) -> Result<Outcome> {
    let pa = pa_from_json(v)?;
    let g = GroupElement::parse(g).ok_or_else(|| anyhow!("unknown relative {g:?}; use star, tilde or tilde_star"))?;
    Ok(Outcome::ok(pa_to_json(&pa.relative(g))))
}

pub fn affine(v: &Value, params: [&String; 4]) -> Result<Outcome> {
    let pa = pa_from_json(v)?;
    let f = pa.field();
    let [a, b, a_star, b_star] = params.map(|s| f.parse(s));
    let map = AffineMap::new(a?, b?, a_star?, b_star?)?;
    Ok(Outcome::ok(pa_to_json(&pa.affine(&map)?)))
}

fn input_field(v: &Value) -> Result<Field> {
    field_from_json(v.get("field").context("missing \"field\"")?)
}

pub fn vand(v: &Value, op: VandOp) -> Result<Outcome> {
    let f = input_field(v)?;
    let seq = |k: &str| v.get(k).map(|x| scalars_from_json(f, x)).transpose();
    match op {
        VandOp::Extract => {
            let x = matrix_from_json(f, v.get("X").context("missing \"X\"")?)?;
            let (thetas, theta_stars) = (seq("theta")?, seq("theta_star")?);
            if thetas.is_none() && theta_stars.is_none() {
                bail!("give \"theta\" (west), \"theta_star\" (south) or both");
            }
            let mut out = Map::new();
            out.insert("field".into(), field_to_json(f));
            if let Some(t) = &thetas {
                let w = extract_west(&x, t)?;
                out.insert(
                    "west".into(),
                    json!({"polys": polys_to_json(w.polys().polys()), "normalized": w.is_normalized()}),
                );
                let compat = match compatible_sequences(&x)? {
                    Compatibility::Unconstrained => Value::String("unconstrained".into()),
                    Compatibility::AffineLine { base } => json!({"base": scalars_to_json(&base)}),
                };
                out.insert("compatible".into(), compat);
            }
            if let Some(t) = &theta_stars {
                let s = extract_south(&x, t)?;
                out.insert(
                    "south".into(),
                    json!({"polys": polys_to_json(s.polys().polys()), "normalized": s.is_normalized()}),
                );
            }
            Ok(Outcome::ok(Value::Object(out)))
        }
        VandOp::Invert => {
            let x = matrix_from_json(f, v.get("X").context("missing \"X\"")?)?;
            let thetas = seq("theta")?.context("missing \"theta\"")?;
            let sys = extract_west(&x, &thetas)?;
            let inv = inverse_structure(&sys)?;
            Ok(Outcome::checked(
                json!({
                    "field": field_to_json(f),
                    "inverse": matrix_to_json(&inv.inverse),
                    "c_H": scalar_to_json(&inv.c_h),
                    "associated": polys_to_json(inv.associated.polys()),
                    "south_polys": polys_to_json(inv.south.polys().polys()),
                    "checks": report_to_json(&inv.report),
                }),
                inv.report.all_passed(),
            ))
        }
        VandOp::Diag => {
            let h = matrix_from_json(f, v.get("H").context("missing \"H\"")?)?;
            let diag = match seq("theta")? {
                Some(t) => diag_west_ordered(&h, &t)?,
                None => diag_west(&h)?,
            };
            Ok(Outcome::ok(json!({
                "field": field_to_json(f),
                "X": matrix_to_json(diag.system.x()),
                "D": matrix_to_json(&diag.d),
                "theta": scalars_to_json(diag.system.thetas()),
                "polys": polys_to_json(diag.system.polys().polys()),
            })))
        }
    }
}

/// Pass/fail counts per suite and the first counterexample seen.
struct Tally {
    suites: Vec<(&'static str, u64, u64)>,
    first: Option<Value>,
}

impl Tally {
    fn new() -> Self {
        Self {
            suites: Vec::new(),
            first: None,
        }
    }

    fn record(&mut self, suite: &'static str, pa: &ParameterArray, report: &Report) {
        let idx = match self.suites.iter().position(|s| s.0 == suite) {
            Some(i) => i,
            None => {
                self.suites.push((suite, 0, 0));
                self.suites.len() - 1
            }
        };
        match report.first_failure() {
            None => self.suites[idx].1 += 1,
            Some(c) => {
                self.suites[idx].2 += 1;
                if self.first.is_none() {
                    self.first = Some(json!({
                        "suite": suite,
                        "check": c.name,
                        "detail": c.detail,
                        "input": pa_to_json(pa),
                    }));
                }
            }
        }
    }

    fn finish(self, header: Value) -> Outcome {
        let passed = self.first.is_none();
        let suites: Map<String, Value> = self
            .suites
            .iter()
            .map(|(n, p, f)| (n.to_string(), json!({"passed": p, "failed": f})))
            .collect();
        let mut out = header.as_object().cloned().unwrap_or_default();
        out.insert("passed".into(), passed.into());
        out.insert("suites".into(), Value::Object(suites));
        out.insert("first_counterexample".into(), self.first.unwrap_or(Value::Null));
        Outcome::checked(Value::Object(out), passed)
    }
}

fn sampler(field: &str, d: usize, seed: u64) -> Result<Sampler> {
    let f = field_from_flag(field)?;
    // fail early when the field is too small for d + 1 distinct eigenvalues
    Sampler::new(f, seed).parameter_array(d)?;
    Ok(Sampler::new(f, seed))
}

fn header(field: &str, d: usize, samples: u64, seed: u64) -> Result<Value> {
    Ok(json!({
        "field": field_to_json(field_from_flag(field)?),
        "d": d,
        "samples": samples,
        "seed": seed,
    }))
}

pub fn roundtrip(field: &str, d: usize, samples: u64, seed: u64) -> Result<Outcome> {
    let mut s = sampler(field, d, seed)?;
    let mut tally = Tally::new();
    for _ in 0..samples {
        let pa = s.parameter_array(d)?;
        let image = pa.affine(&s.affine_map())?;
        let mut related = five_set_roundtrip(&pa, &image);
        let cmp = ClassComparison::of(&pa, &image);
        related.expect("affine image shares every class fingerprint", cmp.all(), || format!("{cmp:?}"));
        tally.record("affine pair", &pa, &related);
        let other = s.parameter_array(d)?;
        tally.record("independent pair", &pa, &five_set_roundtrip(&pa, &other));
    }
    Ok(tally.finish(header(field, d, samples, seed)?))
}

pub fn selftest(field: &str, d: usize, samples: u64, seed: u64) -> Result<Outcome> {
    let mut s = sampler(field, d, seed)?;
    let mut tally = Tally::new();
    for _ in 0..samples {
        let pa = s.parameter_array(d)?;
        let sys = THSystem::build(&pa);
        tally.record("axioms", &pa, &sys.verify_axioms());

        let mut split = Report::new();
        match sys.split_from_traces() {
            Ok(rec) => {
                for (name, phis) in rec.variants() {
                    split.expect(name, phis == pa.phis(), || format!("{phis:?}"));
                }
            }
            Err(e) => split.fail("trace formulas", e.to_string()),
        }
        tally.record("split from traces", &pa, &split);
        tally.record("scalar identities", &pa, &sys.check_identities(&sys.scalars()));
        tally.record("PP* = nu I", &pa, &verify_pp_star(&pa));
        tally.record("zeta relations", &pa, &verify_zeta_relations(&pa));
        tally.record("double Vandermonde structure", &pa, &verify_vand_structure(&pa));
        tally.record("orthogonality", &pa, &verify_orthogonality(&pa));

        let mut bij = Report::new();
        let ws = rho(&pa);
        match chi(&ws) {
            Ok(back) => {
                bij.expect("chi(rho) = id", back == pa, || back.to_string());
                bij.expect("rho(chi) = id", rho(&back) == ws, String::new);
            }
            Err(e) => bij.fail("chi(rho) = id", e.to_string()),
        }
        tally.record("rho and chi", &pa, &bij);

        let mut oracle = Report::new();
        match transition_from_bases(&sys) {
            Ok(p) => oracle.expect("basis construction = sum formula", p == build_transition(&pa).p_matrix, String::new),
            Err(e) => oracle.fail("basis construction = sum formula", e.to_string()),
        }
        tally.record("transition oracle", &pa, &oracle);
    }
    Ok(tally.finish(header(field, d, samples, seed)?))
}
