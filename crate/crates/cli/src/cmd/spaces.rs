use anyhow::{bail, Result};
use normgrid_core::spaces::FrequencySet;

use super::core;
use crate::cli::{FreqKindArg, GlobalArgs, SpacesCmd};
use crate::format::freqset_json;
use crate::Outcome;

pub(crate) fn run(c: &SpacesCmd, _g: &GlobalArgs) -> Result<(String, Outcome)> {
    let SpacesCmd::Build { kind, n, d } = c;
    let narrow = || -> Result<Vec<u32>> {
        n.iter()
            .map(|&v| u32::try_from(v).map_err(|_| anyhow::anyhow!("degree {v} too large")))
            .collect()
    };
    let q = match kind {
        FreqKindArg::Box => core(FrequencySet::build_box(&narrow()?))?,
        FreqKindArg::Dyadic => core(FrequencySet::build_dyadic_block(&narrow()?))?,
        FreqKindArg::Hyperbolic => {
            if n.len() != 1 {
                bail!("a hyperbolic cross takes one N");
            }
            core(FrequencySet::build_hyperbolic(n[0], *d))?
        }
    };
    Ok(("spaces build".into(), Outcome::new().data("freqset.json", freqset_json(&q))))
}
