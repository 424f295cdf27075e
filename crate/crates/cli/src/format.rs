//! JSON and CSV encodings. Floats are written with 17 significant digits so
//! every file re-reads to the identical `f64`; non-finite values are written
//! as the strings `"inf"`, `"-inf"` and `"nan"`.

use std::io;

use anyhow::{anyhow, bail, Context, Result};
use normgrid_core::certify::DiscretizationCertificate;
use normgrid_core::exact::{RuleTag, WeightedRule};
use normgrid_core::spaces::{Exponent, Frame, FreqKind, FrequencySet, PointSet};
use normgrid_core::Tolerances;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Map, Value};

/// `{:.16e}` for every float, pretty layout otherwise.
struct FixedDigits<'a>(PrettyFormatter<'a>);

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{}", fmt_f64(v))
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Finite floats as `d.dddddddddddddddde±x`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serializes with fixed 17-digit floats and a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits(PrettyFormatter::with_indent(b"  ")));
    serde::Serialize::serialize(v, &mut ser).expect("serializing a Value to memory cannot fail");
    let mut s = String::from_utf8(out).expect("serde_json emits UTF-8");
    s.push('\n');
    s
}

pub fn num(v: f64) -> Value {
    if v.is_finite() {
        Value::from(v)
    } else if v.is_nan() {
        Value::from("nan")
    } else if v > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

pub fn nums(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

pub fn get_f64(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| anyhow!("number out of range")),
        Value::String(s) => match s.as_str() {
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            "nan" => Ok(f64::NAN),
            _ => bail!("expected a number, got {s:?}"),
        },
        _ => bail!("expected a number, got {v}"),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| anyhow!("missing field `{key}`"))
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| anyhow!("field `{key}` must be a nonnegative integer"))
}

pub fn exponent_json(q: Exponent) -> Value {
    match q {
        Exponent::Finite(p) => num(p),
        Exponent::Infinity => Value::from("inf"),
    }
}

pub fn exponent_from_json(v: &Value) -> Result<Exponent> {
    Exponent::finite(get_f64(v)?).map_err(|e| anyhow!("{e}"))
}

pub fn frame_from_name(s: &str) -> Result<Frame> {
    match s {
        "torus" => Ok(Frame::Torus),
        "cube" => Ok(Frame::Cube),
        _ => bail!("unknown frame {s:?} (expected torus or cube)"),
    }
}

pub fn tolerances_json(t: &Tolerances) -> Value {
    json!({
        "feasibility": num(t.feasibility),
        "symmetry": num(t.symmetry),
        "exact": num(t.exact),
        "pivot": num(t.pivot),
        "eigen": num(t.eigen),
    })
}

pub fn tolerances_from_json(v: &Value) -> Result<Tolerances> {
    Ok(Tolerances {
        feasibility: get_f64(field(v, "feasibility")?)?,
        symmetry: get_f64(field(v, "symmetry")?)?,
        exact: get_f64(field(v, "exact")?)?,
        pivot: get_f64(field(v, "pivot")?)?,
        eigen: get_f64(field(v, "eigen")?)?,
    })
}

/// `freqset.json`: `{dim, kind, params, freqs}`.
pub fn freqset_json(q: &FrequencySet) -> Value {
    let params = match q.kind() {
        FreqKind::Box { n } => json!({ "N": n }),
        FreqKind::Hyperbolic { n } => json!({ "N": n }),
        FreqKind::DyadicBlock { s } => json!({ "s": s }),
        FreqKind::Lacunary | FreqKind::Explicit => json!({}),
    };
    json!({
        "dim": q.dim(),
        "kind": q.kind().name(),
        "params": params,
        "freqs": q.to_rows(),
    })
}

pub fn freqset_from_json(v: &Value) -> Result<FrequencySet> {
    let dim = get_usize(v, "dim")?;
    let rows: Vec<Vec<i64>> = serde_json::from_value(field(v, "freqs")?.clone()).context("`freqs` must be integer rows")?;
    let params = v.get("params").cloned().unwrap_or(Value::Null);
    let kind_name = v.get("kind").and_then(Value::as_str).unwrap_or("explicit");
    let kind = match kind_name {
        "box" => FreqKind::Box {
            n: serde_json::from_value(field(&params, "N")?.clone())?,
        },
        "hyperbolic" => FreqKind::Hyperbolic {
            n: serde_json::from_value(field(&params, "N")?.clone())?,
        },
        "dyadic_block" => FreqKind::DyadicBlock {
            s: serde_json::from_value(field(&params, "s")?.clone())?,
        },
        "lacunary" => FreqKind::Lacunary,
        "explicit" => FreqKind::Explicit,
        other => bail!("unknown frequency-set kind {other:?}"),
    };
    FrequencySet::with_kind(dim, &rows, kind).map_err(|e| anyhow!("{e}"))
}

pub fn tag_name(t: &RuleTag) -> String {
    match t {
        RuleTag::Positive => "positive".into(),
        RuleTag::Probability => "probability".into(),
        RuleTag::ExactQ(q) => format!("exact_q:{q}"),
    }
}

pub fn tag_from_name(s: &str) -> Result<RuleTag> {
    match s {
        "positive" => Ok(RuleTag::Positive),
        "probability" => Ok(RuleTag::Probability),
        _ => match s.strip_prefix("exact_q:") {
            Some(q) => Ok(RuleTag::ExactQ(q.parse().context("bad exact_q tag")?)),
            None => bail!("unknown rule tag {s:?}"),
        },
    }
}

/// `points.json`: `{dim, frame, points, weights?}` plus optional `tags` and `meta`.
pub fn points_json(p: &PointSet, weights: Option<&[f64]>, tags: &[RuleTag], meta: Option<Value>) -> Value {
    let mut m = Map::new();
    m.insert("dim".into(), Value::from(p.dim()));
    m.insert("frame".into(), Value::from(p.frame().name()));
    m.insert("points".into(), Value::Array(p.iter().map(nums).collect()));
    if let Some(w) = weights {
        m.insert("weights".into(), nums(w));
    }
    if !tags.is_empty() {
        m.insert("tags".into(), Value::Array(tags.iter().map(|t| Value::from(tag_name(t))).collect()));
    }
    if let Some(meta) = meta {
        m.insert("meta".into(), meta);
    }
    Value::Object(m)
}

pub fn rule_json(r: &WeightedRule, meta: Option<Value>) -> Value {
    points_json(&r.nodes, Some(&r.weights), &r.tags, meta)
}

/// Points, optional weights and tags from a `points.json` value.
pub struct LoadedPoints {
    pub points: PointSet,
    pub weights: Option<Vec<f64>>,
    pub tags: Vec<RuleTag>,
}

impl LoadedPoints {
    /// The stored rule, or equal weights `1/m` when none are stored.
    pub fn rule(&self) -> Result<WeightedRule> {
        match &self.weights {
            Some(w) => {
                let mut r = WeightedRule::new(self.points.clone(), w.clone()).map_err(|e| anyhow!("{e}"))?;
                r.tags = self.tags.clone();
                Ok(r)
            }
            None => Ok(WeightedRule::equal_weight(self.points.clone())),
        }
    }
}

pub fn points_from_json(v: &Value) -> Result<LoadedPoints> {
    let dim = get_usize(v, "dim")?;
    let frame = frame_from_name(v.get("frame").and_then(Value::as_str).unwrap_or("torus"))?;
    let rows = field(v, "points")?.as_array().ok_or_else(|| anyhow!("`points` must be an array"))?;
    let mut flat = Vec::with_capacity(rows.len() * dim);
    for row in rows {
        let row = row.as_array().ok_or_else(|| anyhow!("each point must be an array"))?;
        if row.len() != dim {
            bail!("point of length {} in a {dim}-dimensional set", row.len());
        }
        for x in row {
            flat.push(get_f64(x)?);
        }
    }
    let points = PointSet::from_flat(dim, frame, flat).map_err(|e| anyhow!("{e}"))?;
    let weights = match v.get("weights") {
        None | Some(Value::Null) => None,
        Some(w) => {
            let w = w.as_array().ok_or_else(|| anyhow!("`weights` must be an array"))?;
            Some(w.iter().map(get_f64).collect::<Result<Vec<_>>>()?)
        }
    };
    if let Some(w) = &weights {
        if w.len() != points.len() {
            bail!("{} weights for {} points", w.len(), points.len());
        }
    }
    let tags = match v.get("tags").and_then(Value::as_array) {
        Some(ts) => ts
            .iter()
            .map(|t| tag_from_name(t.as_str().unwrap_or_default()))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok(LoadedPoints { points, weights, tags })
}

/// `certificate.json`: `{q, m, N, C1, C2, method, seed, tolerances, empirical}`.
pub fn certificate_json(c: &DiscretizationCertificate) -> Value {
    json!({
        "q": exponent_json(c.q),
        "m": c.m,
        "N": c.n,
        "C1": num(c.c1),
        "C2": num(c.c2),
        "method": c.method.name(),
        "seed": c.seed,
        "oversample": c.oversample,
        "tolerances": tolerances_json(&c.tolerances),
        "empirical": c.empirical,
    })
}

/// One row per node: coordinates, then the weight when present.
pub fn points_csv(p: &PointSet, weights: Option<&[f64]>) -> String {
    let mut s = String::new();
    let mut header: Vec<String> = (1..=p.dim()).map(|j| format!("x{j}")).collect();
    if weights.is_some() {
        header.push("weight".into());
    }
    s.push_str(&header.join(","));
    s.push('\n');
    for (i, x) in p.iter().enumerate() {
        let mut cells: Vec<String> = x.iter().map(|&v| fmt_f64(v)).collect();
        if let Some(w) = weights {
            cells.push(fmt_f64(w[i]));
        }
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// CSV form of a `points.json` value, if it is one.
pub fn csv_from_points_value(v: &Value) -> Option<String> {
    let lp = points_from_json(v).ok()?;
    Some(points_csv(&lp.points, lp.weights.as_deref()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 6.02214076e23, -0.0, 5e-324] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
            let j = to_json_string(&json!({ "x": v }));
            let back: Value = serde_json::from_str(&j).unwrap();
            assert_eq!(get_f64(&back["x"]).unwrap().to_bits(), v.to_bits(), "{j}");
        }
    }

    #[test]
    fn non_finite_strings() {
        assert_eq!(get_f64(&num(f64::INFINITY)).unwrap(), f64::INFINITY);
        assert!(get_f64(&num(f64::NAN)).unwrap().is_nan());
    }

    #[test]
    fn freqset_round_trip() {
        for q in [
            FrequencySet::build_box(&[2, 1]).unwrap(),
            FrequencySet::build_hyperbolic(6, 2).unwrap(),
            FrequencySet::build_dyadic_block(&[1, 2]).unwrap(),
            FrequencySet::explicit(1, &[[0i64], [3], [-7]]).unwrap(),
        ] {
            let v: Value = serde_json::from_str(&to_json_string(&freqset_json(&q))).unwrap();
            assert_eq!(freqset_from_json(&v).unwrap(), q);
        }
    }

    #[test]
    fn points_round_trip() {
        let p = PointSet::new(2, Frame::Cube, &[[0.1, 0.7], [0.3333333333333333, 0.0]]).unwrap();
        let tags = [RuleTag::Positive, RuleTag::ExactQ(4)];
        let v = points_json(&p, Some(&[0.25, 0.75]), &tags, None);
        let back = points_from_json(&serde_json::from_str(&to_json_string(&v)).unwrap()).unwrap();
        assert_eq!(back.points, p);
        assert_eq!(back.weights.unwrap(), vec![0.25, 0.75]);
        assert_eq!(back.tags, tags);
    }

    #[test]
    fn csv_layout() {
        let p = PointSet::new(1, Frame::Torus, &[[0.5]]).unwrap();
        assert_eq!(points_csv(&p, Some(&[1.0])), "x1,weight\n5.0000000000000000e-1,1.0000000000000000e0\n");
    }
}
