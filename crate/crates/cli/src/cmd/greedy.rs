use anyhow::Result;
use normgrid_core::greedy::{oga_exact_l2, rga_equal_weight, GreedyRun};
use serde_json::json;

use super::{candidates, core};
use crate::cli::{GlobalArgs, GreedyCmd};
use crate::format::{num, nums, rule_json};
use crate::space::parse_space;
use crate::Outcome;

fn outcome(run: &GreedyRun, space: &str, n: usize) -> Outcome {
    let trace = json!({
        "space": space,
        "N": n,
        "iterations": run.state.iteration,
        "selected": run.state.selected,
        "residual_frobenius": nums(&run.state.trace),
        "final_residual": num(run.state.residual.frobenius()),
    });
    let meta = json!({ "space": space, "N": n, "iterations": run.state.iteration });
    Outcome::new()
        .data("points.json", rule_json(&run.rule, Some(meta)))
        .report("greedy_trace.json", trace)
}

pub(crate) fn run(c: &GreedyCmd, _g: &GlobalArgs) -> Result<(String, Outcome)> {
    match c {
        GreedyCmd::Oga { space, cand, max_iter } => {
            let s = parse_space(&space.space)?;
            let run = core(oga_exact_l2(&s.sys, &candidates(&s, cand)?, *max_iter))?;
            Ok(("greedy oga".into(), outcome(&run, &s.descriptor, s.sys.len())))
        }
        GreedyCmd::Rga { space, cand, m, t } => {
            let s = parse_space(&space.space)?;
            let run = core(rga_equal_weight(&s.sys, &candidates(&s, cand)?, *m, *t))?;
            Ok(("greedy rga".into(), outcome(&run, &s.descriptor, s.sys.len())))
        }
    }
}
