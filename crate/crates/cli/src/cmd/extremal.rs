use anyhow::Result;
use normgrid_core::extremal::{
    build_condition_l, build_sidon_quadratic, gft2_witness, lacunary_ratio_probe, sidon_bounds, sidon_coverage,
    small_ball_probe, ConditionLParams, LacunaryFamily,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::core;
use crate::cli::{ConditionLArgs, ExtremalCmd, FamilyArg, GlobalArgs};
use crate::format::{freqset_json, num, points_json};
use crate::Outcome;

fn condition_l(a: &ConditionLArgs) -> Result<ConditionLParams> {
    core(build_condition_l(a.n, a.b, a.nu, a.big_k))
}

fn params_json(p: &ConditionLParams) -> Value {
    json!({ "n": p.n, "b": num(p.b), "K": num(p.big_k), "nu": p.nu, "k_values": p.k_values })
}

fn family_name(f: LacunaryFamily) -> &'static str {
    match f {
        LacunaryFamily::Uniform => "uniform",
        LacunaryFamily::Random => "random",
        LacunaryFamily::Dense { .. } => "dense",
    }
}

pub(crate) fn run(c: &ExtremalCmd, g: &GlobalArgs) -> Result<(String, Outcome)> {
    match c {
        ExtremalCmd::Sidon { n, verify_up_to } => {
            let q = core(build_sidon_quadratic(*n))?;
            let (lo, hi) = sidon_bounds(*n);
            let gap = sidon_coverage(&q, *n);
            let size_ok = (q.len() as f64) >= lo && (q.len() as f64) <= hi;
            let failing: Vec<u32> = match verify_up_to {
                Some(k) => (1..=*k)
                    .into_par_iter()
                    .map(|m| {
                        let qm = core(build_sidon_quadratic(m))?;
                        let (lo, hi) = sidon_bounds(m);
                        let len = qm.len() as f64;
                        Ok((sidon_coverage(&qm, m).is_some() || len < lo || len > hi).then_some(m))
                    })
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .flatten()
                    .collect(),
                None => Vec::new(),
            };
            let rep = json!({
                "N": n,
                "size": q.len(),
                "bounds": [num(lo), num(hi)],
                "first_uncovered": gap,
                "verified_up_to": verify_up_to,
                "failing": failing,
            });
            let below = gap.is_some() || !size_ok || !failing.is_empty();
            Ok((
                "extremal sidon".into(),
                Outcome::new()
                    .data("freqset.json", freqset_json(&q))
                    .report("sidon_report.json", rep)
                    .below(below),
            ))
        }
        ExtremalCmd::Lacunary { cond, families, dense_m } => {
            let p = condition_l(cond)?;
            let n_dim = p.k_values.len() * (2 * p.nu as usize + 1);
            let fams: Vec<LacunaryFamily> = families
                .iter()
                .map(|f| match f {
                    FamilyArg::Uniform => LacunaryFamily::Uniform,
                    FamilyArg::Random => LacunaryFamily::Random,
                    FamilyArg::Dense => LacunaryFamily::Dense {
                        m: dense_m.unwrap_or(4 * n_dim),
                    },
                })
                .collect();
            let rows = core(lacunary_ratio_probe(&p, &fams, g.seed, g.oversample))?;
            let rep = json!({
                "params": params_json(&p),
                "rows": rows.iter().map(|r| json!({
                    "family": family_name(r.family),
                    "N": r.n_dim,
                    "m": r.m,
                    "ratio": num(r.ratio),
                    "ratio_over_sqrt_N": num(r.ratio_over_sqrt_n),
                    "method": r.method,
                })).collect::<Vec<_>>(),
                "seed": g.seed,
            });
            Ok(("extremal lacunary".into(), Outcome::new().report("lacunary_report.json", rep)))
        }
        ExtremalCmd::Smallball { cond, trials } => {
            let p = condition_l(cond)?;
            let r = core(small_ball_probe(&p, *trials, g.seed, g.oversample))?;
            let rep = json!({
                "params": params_json(&p),
                "C_hat": num(r.c_hat),
                "flat_ratio": num(r.flat_ratio),
                "best_trial": r.best_trial,
                "grid_points": r.grid_points,
                "trials": trials,
                "seed": r.seed,
            });
            Ok(("extremal smallball".into(), Outcome::new().report("smallball_report.json", rep)))
        }
        ExtremalCmd::Witness { vars, q } => {
            let r = core(gft2_witness(*vars, *q, g.seed))?;
            let below = r.max_weight_deviation > g.tol
                || r.uniform_residual > g.tol
                || !(r.min_drop_one_residual > g.tol);
            let rep = json!({
                "vars": r.vars,
                "q": r.q,
                "M": r.m,
                "abs_det": num(r.abs_det),
                "max_weight_deviation": num(r.max_weight_deviation),
                "uniform_residual": num(r.uniform_residual),
                "min_drop_one_residual": num(r.min_drop_one_residual),
                "candidates": r.candidates,
                "seed": r.seed,
            });
            Ok((
                "extremal witness".into(),
                Outcome::new()
                    .data("points.json", points_json(&r.nodes, Some(&r.weights), &[], None))
                    .report("witness_report.json", rep)
                    .below(below),
            ))
        }
    }
}
