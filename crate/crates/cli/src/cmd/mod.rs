//! One function per subcommand. Each returns the artifacts to emit and
//! whether a threshold was missed.

use anyhow::{anyhow, Result};
use normgrid_core::certify::DiscretizationCertificate;
use normgrid_core::exact::{candidate_grid, DEFAULT_CANDIDATE_FACTOR};
use normgrid_core::spaces::{Exponent, PointSet};

use crate::cli::{CandidateArg, Cli, Command, GlobalArgs, QArg};
use crate::space::Space;
use crate::Outcome;

mod certify;
mod exact;
mod extremal;
mod greedy;
mod hypercross;
mod random;
mod spaces;
mod universal;

/// Largest default candidate grid.
const CANDIDATE_CAP: usize = 20_000;

pub(crate) fn core<T>(r: normgrid_core::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!("{e}"))
}

/// `--grid G` in the system frame, else the default candidate grid.
pub(crate) fn candidates(space: &Space, cand: &CandidateArg) -> Result<PointSet> {
    capped_candidates(space, cand, CANDIDATE_CAP)
}

pub(crate) fn capped_candidates(space: &Space, cand: &CandidateArg, cap: usize) -> Result<PointSet> {
    let sys = &space.sys;
    match cand.grid {
        Some(g) => core(PointSet::tensor_grid(&vec![g; sys.point_dim()], sys.frame())),
        None => core(candidate_grid(sys, DEFAULT_CANDIDATE_FACTOR, cap)),
    }
}

/// Only an explicit `--grid`; the core picks its own default otherwise.
pub(crate) fn explicit_candidates(space: &Space, cand: &CandidateArg) -> Result<Option<PointSet>> {
    cand.grid.map(|_| candidates(space, cand)).transpose()
}

/// Below threshold: not in `M(m, q, eps)` when `eps` is given, or `C₁` not
/// above the tolerance.
pub(crate) fn cert_below(c: &DiscretizationCertificate, eps: Option<f64>, g: &GlobalArgs) -> bool {
    !(c.c1 > g.tol) || eps.is_some_and(|e| !c.is_member(e))
}

pub(crate) fn exponent(q: QArg) -> Exponent {
    match q {
        QArg::One => Exponent::Finite(1.0),
        QArg::Two => Exponent::Finite(2.0),
        QArg::Inf => Exponent::Infinity,
    }
}

/// Runs the parsed command; returns its name and outcome.
pub(crate) fn dispatch(cli: &Cli) -> Result<(String, Outcome)> {
    let g = &cli.global;
    match &cli.command {
        Command::Spaces(c) => spaces::run(c, g),
        Command::Exact(c) => exact::run(c, g),
        Command::Greedy(c) => greedy::run(c, g),
        Command::Random(c) => random::run(c, g),
        Command::Certify(c) => certify::run(c, g),
        Command::Hypercross(c) => hypercross::run(c, g),
        Command::Universal(c) => universal::run(c, g),
        Command::Extremal(c) => extremal::run(c, g),
    }
}
