use anyhow::{bail, Result};
use normgrid_core::hypercross::{build_w, verify_w, HypercrossSetParams, VerifyMode};
use normgrid_core::spaces::{Frame, FrequencySet};
use rayon::prelude::*;
use serde_json::json;

use super::core;
use crate::cli::{GlobalArgs, HypercrossCmd, VerifyModeArg};
use crate::format::{num, points_json};
use crate::space::load_points_file;
use crate::Outcome;

pub(crate) fn run(c: &HypercrossCmd, g: &GlobalArgs) -> Result<(String, Outcome)> {
    match c {
        HypercrossCmd::Build {
            n,
            d,
            eps,
            c0,
            base_factor,
        } => {
            let mut p = HypercrossSetParams::new(*n, *d, *eps, *c0);
            p.base_grid_factor = *base_factor;
            let w = core(build_w(&p))?;
            let meta = json!({
                "N": n,
                "d": d,
                "eps": num(*eps),
                "C0": num(*c0),
                "base_factor": num(*base_factor),
                "M_sequence": w.m_sequence,
                "sizes": w.sizes,
                "pre_dedup": w.pre_dedup,
                "alpha_d": num(w.alpha),
                "beta_d": num(w.beta),
            });
            Ok((
                "hypercross build".into(),
                Outcome::new().data("points.json", points_json(&w.points, None, &[], Some(meta))),
            ))
        }
        HypercrossCmd::Verify {
            n,
            d,
            points,
            mode,
            trials,
            seeds,
            max_c,
        } => {
            let w = match points {
                Some(path) => {
                    let p = load_points_file(path)?.points;
                    if p.dim() != *d {
                        bail!("points have dimension {}, expected {d}", p.dim());
                    }
                    p.reframe(Frame::Torus)
                }
                None => core(build_w(&HypercrossSetParams::new(*n, *d, 0.1, 1.0)))?.points,
            };
            let q = core(FrequencySet::build_hyperbolic(*n, *d))?;
            let mode = match mode {
                VerifyModeArg::Lp => VerifyMode::LpExact,
                VerifyModeArg::Probe => VerifyMode::Probe,
            };
            let runs = (0..*seeds)
                .into_par_iter()
                .map(|k| core(verify_w(&q, &w, mode, g.oversample, *trials, g.seed.wrapping_add(k))))
                .collect::<Result<Vec<_>>>()?;
            let worst = runs.iter().map(|r| r.c_hat).fold(0.0, f64::max);
            let v = json!({
                "N": n,
                "d": d,
                "W_size": w.len(),
                "mode": mode.name(),
                "reference_points": runs.first().map(|r| r.reference_points),
                "trials": trials,
                "runs": runs.iter().map(|r| json!({ "seed": r.seed, "C_hat": num(r.c_hat) })).collect::<Vec<_>>(),
                "C_hat_max": num(worst),
            });
            let below = max_c.is_some_and(|m| !(worst <= m));
            Ok((
                "hypercross verify".into(),
                Outcome::new().report("hypercross_report.json", v).below(below),
            ))
        }
    }
}
