//! Parsing of `--space` and `--points` arguments.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use normgrid_core::rng::rng_from_seed;
use normgrid_core::spaces::{FrequencySet, MonomialSystem, PointSet, System, TrigSystem};

use crate::format::{freqset_from_json, points_from_json, LoadedPoints};

pub type DynSystem = Box<dyn System + Send + Sync>;

/// A function system together with its frequency set when it has one.
pub struct Space {
    pub descriptor: String,
    pub sys: DynSystem,
    pub freqs: Option<FrequencySet>,
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| anyhow!("bad number {t:?} in {s:?}")))
        .collect()
}

fn core<T>(r: normgrid_core::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!("{e}"))
}

pub fn read_json(path: &Path) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// `box:N1,N2,…`, `hyperbolic:N:d`, `dyadic:s1,s2,…`, `trig:N:sincos`,
/// `trig:N:cosine`, `freqset:PATH` or `monomial:N:q`.
pub fn parse_space(spec: &str) -> Result<Space> {
    let parts: Vec<&str> = spec.splitn(3, ':').collect();
    let trig = |q: FrequencySet| -> Space {
        Space {
            descriptor: spec.to_string(),
            sys: Box::new(TrigSystem::orthonormal(&q)),
            freqs: Some(q),
        }
    };
    Ok(match parts.as_slice() {
        ["box", n] => trig(core(FrequencySet::build_box(&list::<u32>(n)?))?),
        ["hyperbolic", n, d] => trig(core(FrequencySet::build_hyperbolic(n.parse()?, d.parse()?))?),
        ["dyadic", s] => trig(core(FrequencySet::build_dyadic_block(&list::<u32>(s)?))?),
        ["freqset", path] => trig(freqset_from_json(&read_json(Path::new(path))?)?),
        ["trig", n, kind] => {
            let n: u32 = n.parse().context("trig degree")?;
            let sys: DynSystem = match *kind {
                "sincos" => Box::new(TrigSystem::sincos(n)),
                "cosine" => Box::new(TrigSystem::cosine(n)),
                _ => bail!("unknown trig family {kind:?} (expected sincos or cosine)"),
            };
            Space {
                descriptor: spec.to_string(),
                sys,
                freqs: None,
            }
        }
        ["monomial", n, q] => Space {
            descriptor: spec.to_string(),
            sys: Box::new(core(MonomialSystem::new(n.parse()?, q.parse()?))?),
            freqs: None,
        },
        _ => bail!("unrecognized space {spec:?}"),
    })
}

/// `grid` (canonical grid of the space), `grid:G` (G points per axis),
/// `random:M` (seeded uniform points) or a `points.json` path.
pub fn parse_points(spec: &str, space: &Space, seed: u64) -> Result<LoadedPoints> {
    let sys = &space.sys;
    let plain = |points: PointSet| LoadedPoints {
        points,
        weights: None,
        tags: Vec::new(),
    };
    if spec == "grid" {
        let deg = sys
            .trig_degree()
            .ok_or_else(|| anyhow!("`grid` needs a trigonometric space"))?;
        let n: Vec<u32> = deg.iter().map(|&k| k as u32).collect();
        return Ok(plain(core(PointSet::canonical_grid(&n))?));
    }
    if let Some(g) = spec.strip_prefix("grid:") {
        let g: usize = g.parse().context("grid size")?;
        return Ok(plain(core(PointSet::tensor_grid(&vec![g; sys.point_dim()], sys.frame()))?));
    }
    if let Some(m) = spec.strip_prefix("random:") {
        let m: usize = m.parse().context("point count")?;
        return Ok(plain(PointSet::random(sys.point_dim(), sys.frame(), m, &mut rng_from_seed(seed))));
    }
    let lp = points_from_json(&read_json(Path::new(spec))?)?;
    if lp.points.dim() != sys.point_dim() {
        bail!("points have dimension {}, space needs {}", lp.points.dim(), sys.point_dim());
    }
    Ok(lp)
}

/// Loads a `points.json` file without a space to check it against.
pub fn load_points_file(path: &str) -> Result<LoadedPoints> {
    points_from_json(&read_json(Path::new(path))?)
}
