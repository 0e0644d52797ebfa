//! Box tilings of an n-interval, the one-dimensional intersection structure
//! of n tiled sets, parity of the full intersection, and path following.
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tilings::{rat, scaled_params, tile, Interval, Rational};
use crate::util::grid;

pub type RPoint = Vec<Rational>;
pub type TiledSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxTiling {
    pub domain: Interval,
    pub tiles: Vec<Interval>,
}

/// Calls `visit` on every set of tile indices (increasing, size ≤ `max`)
/// whose common intersection is nonempty.
fn for_each_meeting(tiles: &[Interval], max: usize, visit: &mut dyn FnMut(&[usize], &Interval) -> Result<()>) -> Result<()> {
    fn go(
        tiles: &[Interval],
        max: usize,
        idx: &mut Vec<usize>,
        acc: &Interval,
        visit: &mut dyn FnMut(&[usize], &Interval) -> Result<()>,
    ) -> Result<()> {
        visit(idx, acc)?;
        if idx.len() == max {
            return Ok(());
        }
        for j in idx[idx.len() - 1] + 1..tiles.len() {
            if let Some(b) = acc.intersect(&tiles[j]) {
                idx.push(j);
                go(tiles, max, idx, &b, visit)?;
                idx.pop();
            }
        }
        Ok(())
    }
    for i in 0..tiles.len() {
        go(tiles, max, &mut vec![i], &tiles[i], visit)?;
    }
    Ok(())
}

impl BoxTiling {
    pub fn trivial(domain: Interval) -> Self {
        BoxTiling { tiles: vec![domain.clone()], domain }
    }

    pub fn n(&self) -> usize {
        self.domain.ambient_dim()
    }

    /// Cover, disjoint interiors, then conditions (a) and (b).
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.domain.dim() != n {
            return Err(Error::pre("domain", "domain is degenerate"));
        }
        let mut vol = Rational::zero();
        for (i, t) in self.tiles.iter().enumerate() {
            if t.ambient_dim() != n || t.dim() != n || !self.domain.contains_box(t) {
                return Err(Error::pre("tile", format!("tile {i} is not an n-interval inside the domain")));
            }
            vol += t.volume();
        }
        for i in 0..self.tiles.len() {
            for j in i + 1..self.tiles.len() {
                if self.tiles[i].interiors_meet(&self.tiles[j]) {
                    return Err(Error::pre("interiors", format!("tiles {i} and {j} overlap")));
                }
            }
        }
        if vol != self.domain.volume() {
            return Err(Error::pre("cover", "tiles do not fill the domain"));
        }
        for_each_meeting(&self.tiles, n + 2, &mut |idx, b| {
            let k = idx.len();
            if k == n + 2 {
                return Err(Error::pre("(a)", format!("tiles {idx:?} share the point {:?}", b.lo)));
            }
            if b.dim() + k != n + 1 {
                return Err(Error::pre("(b)", format!("tiles {idx:?} meet in a {}-interval", b.dim())));
            }
            Ok(())
        })
    }

    /// Split tile `index` by the hyperplane x_axis = level.
    pub fn refine(&self, index: usize, axis: usize, level: Rational) -> Result<BoxTiling> {
        let t = self.tiles.get(index).ok_or_else(|| Error::invalid("tile index out of range"))?;
        if axis >= self.n() {
            return Err(Error::invalid("axis out of range"));
        }
        if !(t.lo[axis] < level && level < t.hi[axis]) {
            return Err(Error::pre("level inside tile", format!("{level} not strictly inside tile {index}")));
        }
        if let Some(j) = self.tiles.iter().position(|s| s.lo[axis] == level || s.hi[axis] == level) {
            return Err(Error::pre("hyperplane avoids faces", format!("x_{} = {level} contains a face of tile {j}", axis + 1)));
        }
        let mut a = t.clone();
        let mut b = t.clone();
        a.hi[axis] = level;
        b.lo[axis] = level;
        let mut tiles = self.tiles.clone();
        tiles[index] = a;
        tiles.insert(index + 1, b);
        let out = BoxTiling { domain: self.domain.clone(), tiles };
        out.validate()?;
        Ok(out)
    }

    /// Traces on the face x_axis = lo (or hi), with that axis dropped.
    /// Also returns the index of the tile behind each trace.
    pub fn face_tiling(&self, axis: usize, high: bool) -> Result<(BoxTiling, Vec<usize>)> {
        if axis >= self.n() {
            return Err(Error::invalid("axis out of range"));
        }
        let v = if high { self.domain.hi[axis] } else { self.domain.lo[axis] };
        let drop = |b: &Interval| {
            let mut lo = b.lo.clone();
            let mut hi = b.hi.clone();
            lo.remove(axis);
            hi.remove(axis);
            Interval { lo, hi }
        };
        let mut tiles = Vec::new();
        let mut from = Vec::new();
        for (i, t) in self.tiles.iter().enumerate() {
            if t.lo[axis] <= v && v <= t.hi[axis] {
                tiles.push(drop(t));
                from.push(i);
            }
        }
        let out = BoxTiling { domain: drop(&self.domain), tiles };
        out.validate()?;
        Ok((out, from))
    }

    fn on_boundary(&self, p: &[Rational]) -> bool {
        (0..self.n()).any(|i| p[i] == self.domain.lo[i] || p[i] == self.domain.hi[i])
    }

    fn touches(&self, t: usize, axis: usize, high: bool) -> bool {
        let b = &self.tiles[t];
        if high {
            b.hi[axis] == self.domain.hi[axis]
        } else {
            b.lo[axis] == self.domain.lo[axis]
        }
    }
}

/// Every tile in exactly one set.
fn check_partition(t: &BoxTiling, es: &[TiledSet]) -> Result<()> {
    let n = t.n();
    if es.len() != n + 1 {
        return Err(Error::invalid(format!("expected {} tiled sets, got {}", n + 1, es.len())));
    }
    let mut owner = vec![usize::MAX; t.tiles.len()];
    for (i, e) in es.iter().enumerate() {
        for &j in e {
            if j >= t.tiles.len() {
                return Err(Error::invalid(format!("tile index {j} out of range")));
            }
            if owner[j] != usize::MAX {
                return Err(Error::pre("essentially disjoint", format!("tile {j} in e_{} and e_{}", owner[j] + 1, i + 1)));
            }
            owner[j] = i;
        }
    }
    if let Some(j) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::pre("cover", format!("tile {j} in no set")));
    }
    Ok(())
}

/// eᵢ ∩ Bᵢ = ∅ for i ≤ n and eᵢ ∩ A_{i−1} = ∅ for i ≥ 2.
fn check_faces(t: &BoxTiling, sets: &[TiledSet]) -> Result<()> {
    let n = t.n();
    for (i, e) in sets.iter().enumerate() {
        for &j in e {
            if i < n && t.touches(j, i, true) {
                return Err(Error::pre("e_i misses B_i", format!("e_{} meets B_{} via tile {j}", i + 1, i + 1)));
            }
            if i >= 1 && t.touches(j, i - 1, false) {
                return Err(Error::pre("e_i misses A_(i-1)", format!("e_{} meets A_{} via tile {j}", i + 1, i)));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndKind {
    /// On bd Z.
    Boundary,
    /// Off bd Z and in all n+1 sets.
    Full,
    /// Off bd Z, shared by two segments.
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// One tile from each of e₁..eₙ.
    pub tiles: Vec<usize>,
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub point: RPoint,
    pub kind: EndKind,
    pub segments: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub segments: Vec<Segment>,
    pub endpoints: Vec<Endpoint>,
}

impl Structure {
    /// (e, h, r, f): full endpoints, boundary endpoints, interior endpoints, segments.
    pub fn euler_counts(&self) -> (usize, usize, usize, usize) {
        let count = |k| self.endpoints.iter().filter(|e| e.kind == k).count();
        (count(EndKind::Full), count(EndKind::Boundary), count(EndKind::Interior), self.segments.len())
    }
}

/// n-tuples, one tile per set, with nonempty common intersection.
fn tuples(t: &BoxTiling, sets: &[TiledSet], visit: &mut dyn FnMut(&[usize], &Interval)) {
    fn go(t: &BoxTiling, sets: &[TiledSet], idx: &mut Vec<usize>, acc: Option<&Interval>, visit: &mut dyn FnMut(&[usize], &Interval)) {
        let depth = idx.len();
        if depth == sets.len() {
            visit(idx, acc.expect("nonempty tuple"));
            return;
        }
        for &j in &sets[depth] {
            let next = match acc {
                None => Some(t.tiles[j].clone()),
                Some(a) => a.intersect(&t.tiles[j]),
            };
            if let Some(b) = next {
                idx.push(j);
                go(t, sets, idx, Some(&b), visit);
                idx.pop();
            }
        }
    }
    go(t, sets, &mut Vec::new(), None, visit);
}

/// P = e₁ ∩ … ∩ eₙ as a graph of 1-intervals.
pub fn intersection_structure(t: &BoxTiling, es: &[TiledSet]) -> Result<Structure> {
    check_partition(t, es)?;
    let n = t.n();
    let mut raw: Vec<(Vec<usize>, Interval)> = Vec::new();
    tuples(t, &es[..n], &mut |idx, b| raw.push((idx.to_vec(), b.clone())));
    let mut index: BTreeMap<RPoint, usize> = BTreeMap::new();
    let mut endpoints: Vec<Endpoint> = Vec::new();
    let mut segments = Vec::new();
    for (tiles, b) in raw {
        if b.dim() != 1 {
            return Err(Error::internal(format!("tiles {tiles:?} meet in a {}-interval", b.dim())));
        }
        let mut ends = [0usize; 2];
        for (s, p) in [b.lo.clone(), b.hi.clone()].into_iter().enumerate() {
            let id = *index.entry(p.clone()).or_insert_with(|| {
                let kind = if t.on_boundary(&p) {
                    EndKind::Boundary
                } else if es[n].iter().any(|&j| t.tiles[j].contains(&p)) {
                    EndKind::Full
                } else {
                    EndKind::Interior
                };
                endpoints.push(Endpoint { point: p, kind, segments: Vec::new() });
                endpoints.len() - 1
            });
            endpoints[id].segments.push(segments.len());
            ends[s] = id;
        }
        segments.push(Segment { tiles, ends });
    }
    for e in &endpoints {
        let want = if e.kind == EndKind::Interior { 2 } else { 1 };
        if e.segments.len() != want {
            return Err(Error::internal(format!("endpoint {:?} has degree {}", e.point, e.segments.len())));
        }
    }
    Ok(Structure { segments, endpoints })
}

/// e₁ ∩ … ∩ e_{n+1}, sorted; under the face conditions its size is odd.
pub fn parity_count(t: &BoxTiling, es: &[TiledSet]) -> Result<Vec<RPoint>> {
    check_partition(t, es)?;
    check_faces(t, es)?;
    let mut pts = BTreeSet::new();
    tuples(t, es, &mut |_, b| {
        pts.insert(b.lo.clone());
    });
    Ok(pts.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    /// Vertices visited, start first.
    pub points: Vec<RPoint>,
    pub segments: Vec<usize>,
    /// True when the walk stopped at a full point.
    pub reached_full: bool,
}

impl Walk {
    pub fn end(&self) -> &RPoint {
        self.points.last().expect("walk has a start")
    }
}

fn walk_from(s: &Structure, start: usize) -> Result<Walk> {
    let mut v = start;
    let mut seg = s.endpoints[v].segments[0];
    let mut w = Walk { points: vec![s.endpoints[v].point.clone()], segments: Vec::new(), reached_full: false };
    let mut used = vec![false; s.segments.len()];
    loop {
        if used[seg] {
            return Err(Error::internal("walk revisited a segment"));
        }
        used[seg] = true;
        w.segments.push(seg);
        let [a, b] = s.segments[seg].ends;
        v = if a == v { b } else { a };
        let ep = &s.endpoints[v];
        w.points.push(ep.point.clone());
        match ep.kind {
            EndKind::Full => {
                w.reached_full = true;
                return Ok(w);
            }
            EndKind::Boundary => return Ok(w),
            EndKind::Interior => {
                seg = if ep.segments[0] == seg { ep.segments[1] } else { ep.segments[0] };
            }
        }
    }
}

/// Walk from a boundary endpoint on Aₙ until a degree-one endpoint.
pub fn follow_path(t: &BoxTiling, es: &[TiledSet], start: &[Rational]) -> Result<Walk> {
    let s = intersection_structure(t, es)?;
    let n = t.n();
    let id = s
        .endpoints
        .iter()
        .position(|e| e.point.as_slice() == start)
        .ok_or_else(|| Error::pre("start is an endpoint", format!("{start:?} is not an endpoint of P")))?;
    if s.endpoints[id].kind != EndKind::Boundary || start[n - 1] != t.domain.lo[n - 1] {
        return Err(Error::pre("start on A_n", format!("{start:?} is not a boundary endpoint on A_n")));
    }
    walk_from(&s, id)
}

/// Tries the boundary starts on Aₙ in lexicographic order.
pub fn hurewicz_path(t: &BoxTiling, es: &[TiledSet]) -> Result<Walk> {
    check_faces(t, es)?;
    let s = intersection_structure(t, es)?;
    let n = t.n();
    let mut starts: Vec<usize> = (0..s.endpoints.len())
        .filter(|&i| s.endpoints[i].kind == EndKind::Boundary && s.endpoints[i].point[n - 1] == t.domain.lo[n - 1])
        .collect();
    starts.sort_by(|&a, &b| s.endpoints[a].point.cmp(&s.endpoints[b].point));
    for st in starts {
        let w = walk_from(&s, st)?;
        if w.reached_full {
            return Ok(w);
        }
    }
    Err(Error::internal("no boundary start reaches a full point"))
}

/// eᵢ = tiles of dᵢ in no earlier d_j.
pub fn disjointify_tiles(ds: &[TiledSet]) -> Vec<TiledSet> {
    let mut seen = TiledSet::new();
    ds.iter()
        .map(|d| {
            let e = d.difference(&seen).copied().collect();
            seen.extend(d.iter().copied());
            e
        })
        .collect()
}

fn in_tiled(t: &BoxTiling, d: &TiledSet, p: &[Rational]) -> bool {
    d.iter().any(|&j| t.tiles[j].contains(p))
}

/// A point common to d₁..d_{n+1}, which may overlap.
pub fn hurewicz_lemma_witness(t: &BoxTiling, ds: &[TiledSet]) -> Result<RPoint> {
    let n = t.n();
    if ds.len() != n + 1 {
        return Err(Error::invalid(format!("expected {} tiled sets", n + 1)));
    }
    check_faces(t, ds)?;
    let es = disjointify_tiles(ds);
    check_partition(t, &es)?;
    let w = hurewicz_path(t, &es)?;
    let p = w.end().clone();
    if !ds.iter().all(|d| in_tiled(t, d, &p)) {
        return Err(Error::internal("path end misses a set"));
    }
    Ok(p)
}

/// Fusion for tiled sets, then the path: n+1 of the dⱼ sharing a point.
pub fn collecting_tiled_sets(t: &BoxTiling, ds: &[TiledSet]) -> Result<(RPoint, Vec<usize>)> {
    let n = t.n();
    let mut all = TiledSet::new();
    for (j, d) in ds.iter().enumerate() {
        for &x in d {
            if x >= t.tiles.len() {
                return Err(Error::invalid(format!("tile index {x} out of range")));
            }
        }
        for i in 0..n {
            if d.iter().any(|&x| t.touches(x, i, false)) && d.iter().any(|&x| t.touches(x, i, true)) {
                return Err(Error::pre("no set meets two opposite faces", format!("d_{} meets A_{i1} and B_{i1}", j + 1, i1 = i + 1)));
            }
        }
        all.extend(d.iter().copied());
    }
    if all.len() != t.tiles.len() {
        return Err(Error::pre("cover", "some tile is in no set"));
    }
    let mut group = vec![n; ds.len()];
    let mut used = vec![false; ds.len()];
    for i in 0..n {
        for (j, d) in ds.iter().enumerate() {
            if !used[j] && d.iter().any(|&x| t.touches(x, i, false)) {
                used[j] = true;
                group[j] = i;
            }
        }
    }
    let mut es = vec![TiledSet::new(); n + 1];
    for (j, d) in ds.iter().enumerate() {
        es[group[j]].extend(d.iter().copied());
    }
    let p = hurewicz_lemma_witness(t, &es)?;
    let mut picks = Vec::new();
    for i in 0..=n {
        let j = (0..ds.len())
            .find(|&j| group[j] == i && in_tiled(t, &ds[j], &p))
            .ok_or_else(|| Error::internal("no set of the group holds the point"))?;
        picks.push(j);
    }
    Ok((p, picks))
}

/// Lebesgue tiles e(a), a ∈ {0..k}ⁿ, clipped to Z = [1/3, k+1/3]ⁿ, with
/// parameters εᵢ = −2^{−(i+1+s)} and 2^s ≥ k+1 so every shift stays in
/// (−1/2, 0]. Tile j has index vector `indices[j]`; it meets the face
/// xᵢ = 1/3 iff aᵢ = 0 and xᵢ = k+1/3 iff aᵢ = k.
pub fn clipped_lebesgue_tiling(n: usize, k: i64) -> Result<(BoxTiling, Vec<Vec<i64>>)> {
    if n == 0 || k < 1 {
        return Err(Error::invalid("need n ≥ 1 and k ≥ 1"));
    }
    let mut s = 0u32;
    while (1i64 << s) < k + 1 {
        s += 1;
    }
    let p = scaled_params(n, s);
    let third = rat(1, 3);
    let domain = Interval::cube(n, third, third + k);
    let mut tiles = Vec::new();
    let mut idx = Vec::new();
    for a in grid(&vec![0; n], &vec![k; n]) {
        let b = tile(&a, &p)?.intersect(&domain).ok_or_else(|| Error::internal("tile misses the window"))?;
        tiles.push(b);
        idx.push(a);
    }
    Ok((BoxTiling { domain, tiles }, idx))
}

/// Largest side length over all tiles.
pub fn max_side(t: &BoxTiling) -> Rational {
    t.tiles.iter().map(Interval::diameter_sides).max().unwrap_or_else(Rational::one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    fn unit(n: usize) -> BoxTiling {
        BoxTiling::trivial(Interval::cube(n, int(0), int(1)))
    }

    fn set(xs: &[usize]) -> TiledSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn split_interval_is_valid() {
        let t = unit(1).refine(0, 0, rat(1, 2)).unwrap();
        assert!(t.validate().is_ok());
        assert_eq!(t.tiles.len(), 2);
    }

    #[test]
    fn grid_of_four_squares_fails_a() {
        let h = rat(1, 2);
        let mk = |x: Rational, y: Rational| Interval::new(vec![x, y], vec![x + h, y + h]).unwrap();
        let z = int(0);
        let t = BoxTiling { domain: Interval::cube(2, int(0), int(1)), tiles: vec![mk(z, z), mk(h, z), mk(z, h), mk(h, h)] };
        match t.validate() {
            Err(Error::Precondition { clause, .. }) => assert!(clause == "(a)" || clause == "(b)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn refine_rejects_face_levels() {
        let t = unit(2).refine(0, 0, rat(1, 2)).unwrap();
        assert!(t.refine(1, 0, rat(1, 2)).is_err());
        assert!(t.refine(0, 1, rat(1, 2)).is_ok());
    }

    #[test]
    fn face_tiling_counts() {
        let t = unit(2).refine(0, 0, rat(1, 2)).unwrap();
        // split orthogonal to x₁ = 0: the face sees one tile
        assert_eq!(t.face_tiling(0, false).unwrap().0.tiles.len(), 1);
        // the face x₂ = 0 is cut in two
        assert_eq!(t.face_tiling(1, false).unwrap().0.tiles.len(), 2);
        assert_eq!(unit(2).face_tiling(1, true).unwrap().0.tiles.len(), 1);
    }

    #[test]
    fn one_dimensional_parity() {
        let t = unit(1).refine(0, 0, rat(1, 2)).unwrap();
        assert_eq!(parity_count(&t, &[set(&[0]), set(&[1])]).unwrap(), vec![vec![rat(1, 2)]]);
        let t = t.refine(0, 0, rat(1, 4)).unwrap().refine(2, 0, rat(3, 4)).unwrap();
        let es = [set(&[0, 2]), set(&[1, 3])];
        assert_eq!(parity_count(&t, &es).unwrap().len(), 3);
        let w = follow_path(&t, &es, &[int(0)]).unwrap();
        assert!(w.reached_full);
        assert_eq!(w.end(), &vec![rat(1, 4)]);
    }

    #[test]
    fn clipped_tiling_is_a_tiling() {
        for (n, k) in [(1, 2), (2, 1), (2, 2), (3, 1)] {
            let (t, idx) = clipped_lebesgue_tiling(n, k).unwrap();
            t.validate().unwrap();
            for (j, a) in idx.iter().enumerate() {
                for i in 0..n {
                    assert_eq!(t.touches(j, i, false), a[i] == 0);
                    assert_eq!(t.touches(j, i, true), a[i] == k);
                }
            }
        }
    }
}
