//! Instance files, result records and the conversions between their JSON
//! shapes and the core types.
//!
//! Points are integer arrays. Cubes are `{"root": [..], "dir": [axes]}`.
//! Rationals are `"p/q"` strings. Labeling tables are objects keyed by the
//! comma-joined point (`"0,1"`), one entry per grid point.
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use cubelab_core::hurewicz::{BoxTiling, TiledSet};
use cubelab_core::lebesgue::CubicalSet;
use cubelab_core::tilings::rat;
use cubelab_core::{Ambient, Cube, Error, Interval, Kind, Point, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub ambient: AmbientSpec,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientSpec {
    /// One of `Q`, `K`, `C`, `S`, `bigS`.
    pub kind: String,
    pub n: usize,
    /// l for `Q` and `bigS`, k otherwise.
    pub size: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeSpec {
    pub root: Vec<i64>,
    pub dir: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec {
    pub lo: Vec<String>,
    pub hi: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Payload {
    /// Point → 0/1 vector. Kuhn labelings (cᵢ = {Lᵢ = 0}) and grid maps.
    Labeling { table: BTreeMap<String, Vec<u8>> },
    /// A list of point sets.
    Sets { sets: Vec<Vec<Point>> },
    /// A list of sets of top-dimensional cubes.
    Cubes { sets: Vec<Vec<CubeSpec>> },
    /// A box tiling and tiled sets given by tile indices.
    Tiling { domain: BoxSpec, tiles: Vec<BoxSpec>, sets: Vec<Vec<usize>> },
    /// Lebesgue parameters ε₁..ε_{n−1} and a window lo..hi of K.
    Params { eps: Vec<String>, lo: Vec<i64>, hi: Vec<i64> },
}

impl Payload {
    pub fn name(&self) -> &'static str {
        match self {
            Payload::Labeling { .. } => "labeling",
            Payload::Sets { .. } => "sets",
            Payload::Cubes { .. } => "cubes",
            Payload::Tiling { .. } => "tiling",
            Payload::Params { .. } => "params",
        }
    }
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1.
    Precondition { clause: String, detail: String },
    /// Exit 2. `key` is a path into the input.
    Malformed { key: String, detail: String },
    /// Exit 3: a guaranteed property failed.
    Internal(String),
}

impl Failure {
    pub fn malformed(key: impl Into<String>, detail: impl Into<String>) -> Self {
        Failure::Malformed { key: key.into(), detail: detail.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Precondition { .. } => 1,
            Failure::Malformed { .. } => 2,
            Failure::Internal(_) => 3,
        }
    }

    pub fn to_json(&self, command: &str) -> Value {
        match self {
            Failure::Precondition { clause, detail } => serde_json::json!({
                "command": command, "verdict": "violation", "clause": clause, "detail": detail,
            }),
            Failure::Malformed { key, detail } => serde_json::json!({
                "command": command, "verdict": "malformed", "key": key, "detail": detail,
            }),
            Failure::Internal(msg) => serde_json::json!({
                "command": command, "verdict": "internal-error", "detail": msg,
            }),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Precondition { clause, detail } => write!(f, "precondition {clause}: {detail}"),
            Failure::Malformed { key, detail } => write!(f, "malformed input at {key}: {detail}"),
            Failure::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

/// Core errors seen while handling the part of the input at `key`.
pub fn at(key: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| match e {
        Error::Precondition { clause, detail } => Failure::Precondition { clause, detail },
        Error::Invalid(msg) => Failure::malformed(key, msg),
        Error::Internal(msg) => Failure::Internal(msg),
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

pub fn parse_instance(text: &str) -> Outcome<InstanceFile> {
    let raw: Value = serde_json::from_str(text).map_err(|e| Failure::malformed("$", e.to_string()))?;
    let obj = raw.as_object().ok_or_else(|| Failure::malformed("$", "expected an object"))?;
    for key in ["version", "ambient", "payload"] {
        if !obj.contains_key(key) {
            return Err(Failure::malformed(key, "missing"));
        }
    }
    if let Some(key) = obj.keys().find(|k| !["version", "ambient", "payload", "seed"].contains(&k.as_str())) {
        return Err(Failure::malformed(key.as_str(), "unknown field"));
    }
    let field = |key: &str, e: serde_json::Error| Failure::malformed(key, e.to_string());
    let version: u32 = serde_json::from_value(raw["version"].clone()).map_err(|e| field("version", e))?;
    if version != SCHEMA_VERSION {
        return Err(Failure::malformed("version", format!("unsupported version {version}")));
    }
    let ambient: AmbientSpec = serde_json::from_value(raw["ambient"].clone()).map_err(|e| field("ambient", e))?;
    let payload: Payload = serde_json::from_value(raw["payload"].clone()).map_err(|e| field("payload", e))?;
    let seed: Option<u64> = match obj.get("seed") {
        None => None,
        Some(v) => Some(serde_json::from_value(v.clone()).map_err(|e| field("seed", e))?),
    };
    Ok(InstanceFile { version, ambient, payload, seed })
}

pub fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::SolidQ => "Q",
        Kind::DiscreteK => "K",
        Kind::SymmetricC => "C",
        Kind::SphereS => "S",
        Kind::BigSphere => "bigS",
    }
}

impl AmbientSpec {
    pub fn of(amb: &Ambient) -> Self {
        AmbientSpec { kind: kind_name(amb.kind).to_string(), n: amb.dim, size: amb.size }
    }

    pub fn to_ambient(&self) -> Outcome<Ambient> {
        let kind = match self.kind.as_str() {
            "Q" => Kind::SolidQ,
            "K" => Kind::DiscreteK,
            "C" => Kind::SymmetricC,
            "S" => Kind::SphereS,
            "bigS" => Kind::BigSphere,
            other => return Err(Failure::malformed("ambient.kind", format!("unknown kind {other:?}"))),
        };
        Ambient::new(kind, self.n, self.size).map_err(at("ambient"))
    }
}

pub fn point_key(p: &[i64]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_point_key(key: &str) -> Option<Point> {
    key.split(',').map(|s| s.trim().parse().ok()).collect()
}

/// A dense table: exactly one entry of length n per grid point.
pub fn labeling_table(amb: &Ambient, table: &BTreeMap<String, Vec<u8>>) -> Outcome<BTreeMap<Point, u32>> {
    let n = amb.dim;
    let mut out = BTreeMap::new();
    for (key, v) in table {
        let path = format!("payload.table[{key:?}]");
        let p = parse_point_key(key).ok_or_else(|| Failure::malformed(&path, "key is not a comma-separated point"))?;
        if !amb.contains_point(&p) {
            return Err(Failure::malformed(&path, "point outside the grid"));
        }
        if v.len() != n || v.iter().any(|&b| b > 1) {
            return Err(Failure::malformed(&path, format!("expected {n} entries in {{0,1}}")));
        }
        let bits = v.iter().enumerate().fold(0u32, |m, (i, &b)| m | u32::from(b) << i);
        out.insert(p, bits);
    }
    let pts = amb.points();
    if out.len() != pts.len() {
        let missing = pts.iter().find(|p| !out.contains_key(*p)).map(|p| point_key(p)).unwrap_or_default();
        return Err(Failure::malformed(
            format!("payload.table[{missing:?}]"),
            format!("table has {} entries, grid has {}", out.len(), pts.len()),
        ));
    }
    Ok(out)
}

pub fn table_of(image: &BTreeMap<Point, u32>, n: usize) -> BTreeMap<String, Vec<u8>> {
    image.iter().map(|(p, &m)| (point_key(p), (0..n).map(|i| (m >> i & 1) as u8).collect())).collect()
}

/// cᵢ = {v : Lᵢ(v) = 0}.
pub fn sets_from_table(amb: &Ambient, table: &BTreeMap<Point, u32>) -> Vec<BTreeSet<Point>> {
    (0..amb.dim).map(|i| table.iter().filter(|(_, &m)| m >> i & 1 == 0).map(|(p, _)| p.clone()).collect()).collect()
}

pub fn table_from_sets(amb: &Ambient, cs: &[BTreeSet<Point>]) -> BTreeMap<Point, u32> {
    amb.points()
        .into_iter()
        .map(|p| {
            let m = cs.iter().enumerate().fold(0u32, |m, (i, c)| m | u32::from(!c.contains(&p)) << i);
            (p, m)
        })
        .collect()
}

pub fn point_sets(amb: &Ambient, sets: &[Vec<Point>]) -> Outcome<Vec<BTreeSet<Point>>> {
    let mut out = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let mut set = BTreeSet::new();
        for (j, p) in s.iter().enumerate() {
            if !amb.contains_point(p) {
                return Err(Failure::malformed(format!("payload.sets[{i}][{j}]"), format!("{p:?} is not a grid point")));
            }
            set.insert(p.clone());
        }
        out.push(set);
    }
    Ok(out)
}

pub fn cube_of(amb: &Ambient, c: &CubeSpec, key: &str) -> Outcome<Cube> {
    let mut dir = 0u32;
    for &a in &c.dir {
        if a >= amb.coords() {
            return Err(Failure::malformed(key, format!("axis {a} out of range")));
        }
        dir |= 1 << a;
    }
    let cube = Cube::new(c.root.clone(), dir);
    amb.check_cube(&cube).map_err(at(key))?;
    Ok(cube)
}

pub fn cube_spec(c: &Cube) -> CubeSpec {
    CubeSpec { root: c.root.clone(), dir: c.axes() }
}

pub fn cubical_sets(amb: &Ambient, sets: &[Vec<CubeSpec>]) -> Outcome<Vec<CubicalSet>> {
    let mut out = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let mut set = CubicalSet::new();
        for (j, c) in s.iter().enumerate() {
            let key = format!("payload.sets[{i}][{j}]");
            let cube = cube_of(amb, c, &key)?;
            if cube.dim() != amb.top_dim() {
                return Err(Failure::malformed(key, format!("expected a {}-cube", amb.top_dim())));
            }
            set.insert(cube);
        }
        out.push(set);
    }
    Ok(out)
}

pub fn cube_sets_spec(es: &[CubicalSet]) -> Vec<Vec<CubeSpec>> {
    es.iter().map(|e| e.iter().map(cube_spec).collect()).collect()
}

pub fn parse_rational(s: &str, key: &str) -> Outcome<Rational> {
    let bad = || Failure::malformed(key, format!("{s:?} is not a fraction p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(rat(p, q))
}

pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn parse_box(b: &BoxSpec, key: &str) -> Outcome<Interval> {
    let lo = b.lo.iter().enumerate().map(|(i, s)| parse_rational(s, &format!("{key}.lo[{i}]"))).collect::<Outcome<_>>()?;
    let hi = b.hi.iter().enumerate().map(|(i, s)| parse_rational(s, &format!("{key}.hi[{i}]"))).collect::<Outcome<_>>()?;
    Interval::new(lo, hi).map_err(at(key))
}

pub fn box_spec(b: &Interval) -> BoxSpec {
    BoxSpec { lo: rationals(&b.lo), hi: rationals(&b.hi) }
}

pub fn tiling(n: usize, domain: &BoxSpec, tiles: &[BoxSpec], sets: &[Vec<usize>]) -> Outcome<(BoxTiling, Vec<TiledSet>)> {
    let domain = parse_box(domain, "payload.domain")?;
    if domain.ambient_dim() != n {
        return Err(Failure::malformed("payload.domain", format!("expected {n} coordinates")));
    }
    let tiles: Vec<Interval> =
        tiles.iter().enumerate().map(|(i, b)| parse_box(b, &format!("payload.tiles[{i}]"))).collect::<Outcome<_>>()?;
    let t = BoxTiling { domain, tiles };
    let mut es = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let mut set = TiledSet::new();
        for (j, &x) in s.iter().enumerate() {
            if x >= t.tiles.len() {
                return Err(Failure::malformed(format!("payload.sets[{i}][{j}]"), format!("no tile {x}")));
            }
            set.insert(x);
        }
        es.push(set);
    }
    Ok((t, es))
}

pub fn tiling_payload(t: &BoxTiling, es: &[TiledSet]) -> Payload {
    Payload::Tiling {
        domain: box_spec(&t.domain),
        tiles: t.tiles.iter().map(box_spec).collect(),
        sets: es.iter().map(|e| e.iter().copied().collect()).collect(),
    }
}

/// A command's output. Maps are sorted, so equal records print identically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub command: String,
    pub verdict: String,
    pub counts: BTreeMap<String, Value>,
    pub witnesses: Vec<Value>,
    /// The instance actually processed, so that generated runs can be replayed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    pub timing_ms: u64,
}

impl Record {
    pub fn new(command: &str) -> Self {
        Record {
            command: command.to_string(),
            verdict: "ok".to_string(),
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            instance: None,
            text: None,
            timing_ms: 0,
        }
    }

    pub fn count(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.counts.insert(key.to_string(), serde_json::to_value(v).expect("plain data"));
        self
    }

    pub fn witness(&mut self, v: impl Serialize) -> &mut Self {
        self.witnesses.push(serde_json::to_value(v).expect("plain data"));
        self
    }

    /// `key: value` lines, counts first, then witnesses.
    pub fn to_text(&self) -> String {
        if let Some(t) = &self.text {
            return t.clone();
        }
        let mut out = format!("command: {}\nverdict: {}\n", self.command, self.verdict);
        for (k, v) in &self.counts {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness: {w}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        for s in ["1/3", "-2/4", "5", "0/7"] {
            let r = parse_rational(s, "x").unwrap();
            assert_eq!(parse_rational(&fmt_rational(&r), "x").unwrap(), r);
        }
        assert!(parse_rational("1/0", "x").is_err());
        assert!(parse_rational("a/b", "x").is_err());
    }

    #[test]
    fn short_table_names_a_missing_key() {
        let amb = Ambient::discrete(1, 1);
        let table: BTreeMap<String, Vec<u8>> = [("0".to_string(), vec![0])].into_iter().collect();
        match labeling_table(&amb, &table) {
            Err(Failure::Malformed { key, .. }) => assert_eq!(key, "payload.table[\"1\"]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tables_and_sets_agree() {
        let amb = Ambient::discrete(2, 2);
        let cs = cubelab_core::gen::kuhn_sets(&amb, &mut cubelab_core::Lcg::new(4));
        assert_eq!(sets_from_table(&amb, &table_from_sets(&amb, &cs)), cs);
    }
}
