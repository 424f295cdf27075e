use anyhow::{anyhow, Result};
use normgrid_core::certify::{bernstein_probe, certify_l1, certify_l2, certify_linfty_oversampled, remez_check};
use serde_json::json;

use super::{cert_below, core};
use crate::cli::{CertifyCmd, GlobalArgs, RuleArgs};
use crate::format::{certificate_json, num, nums};
use crate::space::{parse_points, parse_space};
use crate::Outcome;

pub(crate) fn run(c: &CertifyCmd, g: &GlobalArgs) -> Result<(String, Outcome)> {
    let load = |r: &RuleArgs| -> Result<_> {
        let s = parse_space(&r.space.space)?;
        let rule = parse_points(&r.points, &s, g.seed)?.rule()?;
        Ok((s, rule))
    };
    match c {
        CertifyCmd::L2 { rule } => {
            let (s, r) = load(rule)?;
            let mut cert = core(certify_l2(&s.sys, &r))?;
            cert.tolerances = crate::resolved_tolerances(g);
            let below = cert_below(&cert, rule.threshold.eps, g);
            Ok((
                "certify l2".into(),
                Outcome::new().report("certificate.json", certificate_json(&cert)).below(below),
            ))
        }
        CertifyCmd::L1 { rule, budget } => {
            let (s, r) = load(rule)?;
            let cert = core(certify_l1(&s.sys, &r, *budget, g.seed, g.oversample))?;
            let below = cert_below(&cert, rule.threshold.eps, g);
            Ok((
                "certify l1".into(),
                Outcome::new().report("certificate.json", certificate_json(&cert)).below(below),
            ))
        }
        CertifyCmd::Linf { rule } => {
            let (s, r) = load(rule)?;
            let rep = core(certify_linfty_oversampled(&s.sys, &r.nodes, g.oversample))?;
            let below = rep.unbounded || cert_below(&rep.certificate, rule.threshold.eps, g);
            let mut v = certificate_json(&rep.certificate);
            v["ratio"] = num(rep.ratio);
            v["unbounded"] = json!(rep.unbounded);
            v["argmax"] = json!(rep.argmax);
            Ok(("certify linf".into(), Outcome::new().report("certificate.json", v).below(below)))
        }
        CertifyCmd::Remez {
            space,
            measure,
            trials,
            c2,
        } => {
            let s = parse_space(&space.space)?;
            let q = s
                .freqs
                .as_ref()
                .ok_or_else(|| anyhow!("remez needs a frequency-set space"))?;
            let r = core(remez_check(q, *measure, *trials, g.seed, g.oversample, *c2))?;
            let v = json!({
                "space": s.descriptor,
                "measure_of_B": num(r.measure_of_b),
                "excluded_cells": r.excluded_cells,
                "grid_sizes": r.grid_sizes,
                "ratios": nums(&r.ratios),
                "max_ratio": num(r.max_ratio),
                "threshold": num(r.threshold),
                "below_threshold": r.below_threshold,
                "trials": trials,
                "seed": r.seed,
            });
            Ok(("certify remez".into(), Outcome::new().report("remez_report.json", v)))
        }
        CertifyCmd::Bernstein { n, d, trials } => {
            let r = core(bernstein_probe(*n, *d, *trials, g.seed, g.oversample))?;
            let v = json!({
                "N": r.n,
                "d": r.d,
                "C_hat": num(r.c_hat),
                "best_trial": r.best_trial,
                "grid_sizes": r.grid_sizes,
                "trials": trials,
                "seed": r.seed,
            });
            Ok(("certify bernstein".into(), Outcome::new().report("bernstein_report.json", v)))
        }
    }
}
