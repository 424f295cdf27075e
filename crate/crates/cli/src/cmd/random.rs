use anyhow::{bail, Result};
use normgrid_core::exact::WeightedRule;
use normgrid_core::random::{
    monte_carlo_domain, plan_sample_size, sample_and_certify_l1, sample_and_certify_l2, subset_select_discrete,
    SampleMode,
};
use serde_json::json;

use super::{cert_below, core};
use crate::cli::{GlobalArgs, RandomCmd, SampleModeArg};
use crate::format::{certificate_json, num, points_json};
use crate::space::{parse_points, parse_space};
use crate::Outcome;

pub(crate) fn run(c: &RandomCmd, g: &GlobalArgs) -> Result<(String, Outcome)> {
    match c {
        RandomCmd::Plan { n, t, eps, delta } => {
            let p = core(plan_sample_size(*n, *t, *eps, *delta))?;
            let v = json!({
                "N": p.n,
                "t": num(p.t),
                "eps": num(p.eps),
                "delta": num(p.delta),
                "m": p.m,
                "R": num(p.r),
                "constant": num(p.constant),
            });
            Ok(("random plan".into(), Outcome::new().report("plan.json", v)))
        }
        RandomCmd::Sample {
            space,
            m,
            mode,
            q,
            budget,
            threshold,
        } => {
            let s = parse_space(&space.space)?;
            let (points, cert) = if *q == 2.0 {
                let mode = match mode {
                    SampleModeArg::Random => SampleMode::Random,
                    SampleModeArg::Grid => SampleMode::Grid,
                };
                core(sample_and_certify_l2(&s.sys, *m, g.seed, mode))?
            } else if *q == 1.0 {
                if *mode == SampleModeArg::Grid {
                    bail!("grid mode is only available for q = 2");
                }
                core(sample_and_certify_l1(&s.sys, *m, g.seed, *budget, g.oversample))?
            } else {
                bail!("q must be 1 or 2");
            };
            let below = cert_below(&cert, threshold.eps, g);
            let rule = WeightedRule::equal_weight(points);
            let meta = json!({ "space": s.descriptor, "seed": g.seed });
            Ok((
                "random sample".into(),
                Outcome::new()
                    .data("points.json", points_json(&rule.nodes, Some(&rule.weights), &[], Some(meta)))
                    .report("certificate.json", certificate_json(&cert))
                    .below(below),
            ))
        }
        RandomCmd::Subset {
            space,
            domain,
            m,
            trials,
            threshold,
        } => {
            let s = parse_space(&space.space)?;
            let dom = parse_points(domain, &s, g.seed)?.points;
            let sel = core(subset_select_discrete(&s.sys, &dom, *m, *trials, g.seed))?;
            let below = cert_below(&sel.certificate, threshold.eps, g);
            let rule = WeightedRule::equal_weight(dom.select(&sel.indices));
            let meta = json!({ "space": s.descriptor, "indices": sel.indices, "trial": sel.trial, "domain_size": dom.len() });
            Ok((
                "random subset".into(),
                Outcome::new()
                    .data("points.json", points_json(&rule.nodes, Some(&rule.weights), &[], Some(meta)))
                    .report("certificate.json", certificate_json(&sel.certificate))
                    .below(below),
            ))
        }
        RandomCmd::Domain { space, delta } => {
            let s = parse_space(&space.space)?;
            let mc = core(monte_carlo_domain(&s.sys, *delta, g.seed))?;
            let rep = json!({
                "space": s.descriptor,
                "N": s.sys.len(),
                "delta": num(*delta),
                "m": mc.points.len(),
                "entry_deviation": num(mc.entry_deviation),
                "eig_min": num(mc.eig_min),
                "eig_max": num(mc.eig_max),
                "rounds": mc.rounds,
                "seed": g.seed,
            });
            Ok((
                "random domain".into(),
                Outcome::new()
                    .data("points.json", points_json(&mc.points, None, &[], None))
                    .report("domain_report.json", rep),
            ))
        }
    }
}
