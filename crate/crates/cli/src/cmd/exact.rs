use anyhow::Result;
use normgrid_core::exact::{
    build_recovery, exact_cubature, exact_weighted_discretization, moment_residual, positive_exact_lq,
    stable_exact_weights, tchakaloff_compress, tchakaloff_probability, StableExponent, WeightedRule,
    TCHAKALOFF_CANDIDATE_CAP,
};
use serde_json::{json, Value};

use super::{candidates, capped_candidates, core, explicit_candidates};
use crate::cli::{ExactCmd, GlobalArgs, StableP};
use crate::format::{num, nums, points_json, rule_json};
use crate::space::{parse_points, parse_space, Space};
use crate::Outcome;

/// `moment_residual` is against the moments of the space itself, so it is
/// left out for lifted rules.
fn meta(space: &Space, rule: &WeightedRule, extra: Value) -> Value {
    let mut m = json!({
        "space": space.descriptor,
        "N": space.sys.len(),
        "nodes": rule.len(),
    });
    if extra.get("q").is_none_or(Value::is_null) {
        let target = space.sys.integrals();
        m["moment_residual"] = num(moment_residual(&space.sys, rule, &target));
    }
    if let (Value::Object(m), Value::Object(e)) = (&mut m, extra) {
        m.extend(e);
    }
    m
}

pub(crate) fn run(c: &ExactCmd, g: &GlobalArgs) -> Result<(String, Outcome)> {
    let (name, value) = match c {
        ExactCmd::Cubature { space, cand } => {
            let s = parse_space(&space.space)?;
            let rule = core(exact_cubature(&s.sys, &candidates(&s, cand)?))?;
            ("exact cubature", rule_json(&rule, Some(meta(&s, &rule, json!({})))))
        }
        ExactCmd::Lift { space, q, cand } => {
            let s = parse_space(&space.space)?;
            let cands = explicit_candidates(&s, cand)?;
            let rule = core(exact_weighted_discretization(&s.sys, *q, cands.as_ref()))?;
            ("exact lift", rule_json(&rule, Some(meta(&s, &rule, json!({ "q": q })))))
        }
        ExactCmd::Tchakaloff {
            space,
            cand,
            probability,
            q,
        } => {
            let s = parse_space(&space.space)?;
            let rule = match (q, probability) {
                (Some(q), _) => core(positive_exact_lq(&s.sys, *q, explicit_candidates(&s, cand)?.as_ref()))?,
                (None, true) => core(tchakaloff_probability(&s.sys, explicit_candidates(&s, cand)?.as_ref()))?,
                (None, false) => {
                    let cands = capped_candidates(&s, cand, TCHAKALOFF_CANDIDATE_CAP)?;
                    core(tchakaloff_compress(&s.sys, &s.sys.integrals(), &cands))?
                }
            };
            let extra = json!({ "q": q, "probability": probability, "min_weight": rule.weights.iter().copied().reduce(f64::min).map(num) });
            ("exact tchakaloff", rule_json(&rule, Some(meta(&s, &rule, extra))))
        }
        ExactCmd::Stable { space, points, p } => {
            let s = parse_space(&space.space)?;
            let w = parse_points(points, &s, g.seed)?;
            let mu = w
                .weights
                .clone()
                .unwrap_or_else(|| vec![1.0 / w.points.len().max(1) as f64; w.points.len()]);
            let p = match p {
                StableP::One => StableExponent::One,
                StableP::Two => StableExponent::Two,
                StableP::Inf => StableExponent::Infinity,
            };
            let sw = core(stable_exact_weights(&s.sys, &w.points, &mu, p, None, g.seed))?;
            let rule = core(WeightedRule::new(w.points.clone(), sw.weights.clone()))?;
            let extra = json!({
                "p": match p { StableExponent::One => "1", StableExponent::Two => "2", StableExponent::Infinity => "inf" },
                "norm": num(sw.norm),
                "measured_C1": num(sw.measured_c1),
                "mu": nums(&mu),
                "witness": nums(&sw.witness),
            });
            ("exact stable", rule_json(&rule, Some(meta(&s, &rule, extra))))
        }
        ExactCmd::Recover { space, points } => {
            let s = parse_space(&space.space)?;
            let nodes = parse_points(points, &s, g.seed)?.points;
            let rec = core(build_recovery(&s.sys, &nodes))?;
            let coeffs: Vec<Value> = (0..rec.coeffs.rows()).map(|i| nums(rec.coeffs.row(i))).collect();
            let v = json!({
                "space": s.descriptor,
                "N": s.sys.len(),
                "nodes": points_json(&rec.nodes, None, &[], None),
                "coeffs": coeffs,
            });
            return Ok(("exact recover".into(), Outcome::new().report("recovery.json", v)));
        }
    };
    Ok((name.into(), Outcome::new().data("points.json", value)))
}
