use anyhow::{bail, Result};
use normgrid_core::rng::rng_from_seed;
use normgrid_core::spaces::{Frame, PointSet};
use normgrid_core::universal::{
    build_hammersley_net, certify_member, cube_to_torus, dispersion, dispersion_implies_universal_check, reduce,
    universal_implies_dispersion_check, universal_random_for_sparse, Collection, MemberBudget, NetParams,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{core, exponent};
use crate::cli::{GlobalArgs, UniversalCmd};
use crate::format::{certificate_json, exponent_json, num, points_json};
use crate::space::load_points_file;
use crate::Outcome;

/// Points in `[0,1)^d`; torus points are rescaled.
fn cube_points(path: &str) -> Result<PointSet> {
    Ok(load_points_file(path)?.points.reframe(Frame::Cube))
}

pub(crate) fn run(c: &UniversalCmd, g: &GlobalArgs) -> Result<(String, Outcome)> {
    let budget = |probes: usize| MemberBudget {
        oversample: g.oversample,
        probes,
        seed: g.seed,
    };
    match c {
        UniversalCmd::Dispersion { points, n, c } => {
            let t = cube_points(points)?;
            let disp = core(dispersion(&t))?;
            let mut v = json!({ "m": t.len(), "d": t.dim(), "dispersion": num(disp) });
            let mut below = false;
            if let Some(n) = n {
                let r = core(universal_implies_dispersion_check(&t, *n, *c))?;
                v["check"] = json!({ "n": r.n, "C": num(*c), "fitted_C": num(r.fitted_c), "holds": r.holds });
                below = !r.holds;
            }
            Ok((
                "universal dispersion".into(),
                Outcome::new().report("dispersion_report.json", v).below(below),
            ))
        }
        UniversalCmd::Net {
            r,
            t,
            d,
            points,
            c_max,
            max_ratio,
        } => {
            let (pts, built) = match points {
                Some(p) => (cube_points(p)?, false),
                None => (core(build_hammersley_net(*r, *d))?, true),
            };
            if pts.dim() != *d {
                bail!("points have dimension {}, expected {d}", pts.dim());
            }
            let verdict = core(normgrid_core::universal::verify_net(&pts, NetParams { t: *t, r: *r, d: *d }))?;
            let mut v = json!({
                "t": t,
                "r": r,
                "d": d,
                "m": pts.len(),
                "is_net": verdict.is_net,
                "violation": verdict.violation.as_ref().map(|b| json!({ "shape": b.shape, "position": b.position, "count": b.count })),
                "dispersion": num(core(dispersion(&pts))?),
            });
            let mut below = !verdict.is_net;
            if let Some(c_max) = c_max {
                let rep = core(dispersion_implies_universal_check(&pts, *r, *c_max, *max_ratio, g.oversample))?;
                v["sweep"] = json!({
                    "scaled_dispersion": num(rep.scaled_dispersion),
                    "threshold": num(rep.threshold),
                    "smallest_c": rep.smallest_c,
                    "rows": rep.rows.iter().map(|row| json!({
                        "c": row.c, "n": row.n, "worst_ratio": num(row.worst_ratio), "failures": row.failures,
                    })).collect::<Vec<_>>(),
                });
                below |= rep.smallest_c.is_none();
            }
            let mut out = Outcome::new();
            if built {
                out = out.data("points.json", points_json(&pts, None, &[], None));
            }
            Ok(("universal net".into(), out.report("net_report.json", v).below(below)))
        }
        UniversalCmd::Collection {
            n,
            d,
            points,
            q,
            probes,
            threshold,
        } => {
            let coll = core(Collection::dyadic(*n, *d))?;
            let pts = if points == "grid" {
                core(PointSet::torus_grid(&vec![1usize << (n + 1); *d]))?
            } else if let Some(m) = points.strip_prefix("random:") {
                PointSet::random(*d, Frame::Torus, m.parse()?, &mut rng_from_seed(g.seed))
            } else {
                let p = load_points_file(points)?.points;
                match p.frame() {
                    Frame::Cube => core(cube_to_torus(&p))?,
                    Frame::Torus => p,
                }
            };
            if pts.dim() != *d {
                bail!("points have dimension {}, expected {d}", pts.dim());
            }
            let exp = exponent(*q);
            let b = budget(*probes);
            let certs: Vec<_> = coll
                .members
                .par_iter()
                .map(|member| certify_member(member, &pts, exp, &b))
                .collect();
            let rep = reduce(exp, pts.len(), certs);
            let member_ok = rep.worst_c1 > g.tol
                && threshold
                    .eps
                    .is_none_or(|e| rep.worst_c1 >= 1.0 - e && rep.worst_c2 <= 1.0 + e);
            let below = !rep.failures.is_empty() || !member_ok;
            let v = json!({
                "collection": { "kind": "dyadic", "n": n, "d": d, "members": coll.len() },
                "m": rep.m,
                "q": exponent_json(rep.q),
                "worst_C1": num(rep.worst_c1),
                "worst_C2": num(rep.worst_c2),
                "argmin": rep.argmin,
                "failures": rep.failures.iter().map(|(i, _)| *i).collect::<Vec<_>>(),
                "failure_messages": rep.failures.iter().map(|(_, m)| m.clone()).collect::<Vec<_>>(),
                "certificates": rep.certificates.iter().map(|c| c.as_ref().map_or(Value::Null, certificate_json)).collect::<Vec<_>>(),
                "seed": g.seed,
            });
            Ok((
                "universal collection".into(),
                Outcome::new().report("universal_report.json", v).below(below),
            ))
        }
        UniversalCmd::Sparse {
            v,
            n,
            d,
            m,
            q,
            samples,
            probes,
        } => {
            let r = core(universal_random_for_sparse(*v, *n, *d, exponent(*q), *m, g.seed, *samples, &budget(*probes)))?;
            let out = json!({
                "collection": { "kind": "sparse", "v": r.v, "n": r.n, "d": r.d, "members": r.members, "enumerated": r.enumerated },
                "m": r.m,
                "q": exponent_json(r.q),
                "worst_C1": num(r.worst_c1),
                "worst_C2": num(r.worst_c2),
                "failure_fraction": num(r.failure_fraction),
                "regime_m": num(r.regime_m),
                "seed": r.seed,
            });
            Ok((
                "universal sparse".into(),
                Outcome::new().report("universal_report.json", out).below(!(r.worst_c1 > g.tol)),
            ))
        }
    }
}
