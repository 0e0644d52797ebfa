//! Lebesgue tilings of ℝⁿ by shifted unit cubes, their intersections and nerves.
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::complex::SimplicialComplex;
use crate::cube::{is_pivot_subsequence, Ambient, PivotSeq, Point};
use crate::error::{Error, Result};
use crate::util::grid;

pub type Rational = Ratio<i64>;

pub fn rat(p: i64, q: i64) -> Rational {
    Ratio::new(p, q)
}

fn int(p: i64) -> Rational {
    Ratio::from_integer(p)
}

/// Closed axis-parallel box with rational corners. Degenerate sides allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl Interval {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.len() != hi.len() || lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::invalid("box corners out of order"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn cube(n: usize, lo: Rational, hi: Rational) -> Self {
        Interval { lo: vec![lo; n], hi: vec![hi; n] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.lo.len()
    }

    /// Number of non-degenerate sides.
    pub fn dim(&self) -> usize {
        self.lo.iter().zip(&self.hi).filter(|(a, b)| a < b).count()
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let mut lo = Vec::with_capacity(self.lo.len());
        let mut hi = Vec::with_capacity(self.lo.len());
        for i in 0..self.lo.len() {
            let a = self.lo[i].max(other.lo[i]);
            let b = self.hi[i].min(other.hi[i]);
            if a > b {
                return None;
            }
            lo.push(a);
            hi.push(b);
        }
        Some(Interval { lo, hi })
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        (0..self.lo.len()).all(|i| self.lo[i] <= p[i] && p[i] <= self.hi[i])
    }

    pub fn contains_box(&self, b: &Interval) -> bool {
        (0..self.lo.len()).all(|i| self.lo[i] <= b.lo[i] && b.hi[i] <= self.hi[i])
    }

    pub fn volume(&self) -> Rational {
        self.lo.iter().zip(&self.hi).fold(Rational::one(), |v, (a, b)| v * (b - a))
    }

    /// Interiors meet: every side overlaps in a non-degenerate interval.
    pub fn interiors_meet(&self, other: &Interval) -> bool {
        (0..self.lo.len()).all(|i| self.lo[i].max(other.lo[i]) < self.hi[i].min(other.hi[i]))
    }

    pub fn diameter_sides(&self) -> Rational {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).max().unwrap_or_else(Rational::zero)
    }
}

/// ε₁..ε_{n−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingParams {
    pub eps: Vec<Rational>,
}

impl TilingParams {
    /// Checks −1 < εᵢ < 0, Σ|εᵢ| < 1 and genericity.
    pub fn new(eps: Vec<Rational>) -> Result<Self> {
        let mut total = Rational::zero();
        for e in &eps {
            if !(*e > int(-1) && *e < Rational::zero()) {
                return Err(Error::invalid(format!("ε = {e} outside (−1, 0)")));
            }
            total += e.abs();
        }
        if total >= Rational::one() {
            return Err(Error::invalid("Σ|εᵢ| ≥ 1"));
        }
        if !is_generic(&eps) {
            return Err(Error::invalid("parameters are not generic"));
        }
        Ok(TilingParams { eps })
    }

    pub fn n(&self) -> usize {
        self.eps.len() + 1
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// No εᵢ is an integer combination of 1, ε₁, …, ε_{i−1}.
///
/// For rationals those combinations are exactly (1/L)ℤ with L the lcm of the
/// reduced denominators, so the test is exact.
pub fn is_generic(eps: &[Rational]) -> bool {
    let mut l: i64 = 1;
    for e in eps {
        let d = *e.denom();
        if l % d == 0 {
            return false;
        }
        l = l / gcd(l, d) * d;
    }
    true
}

/// εᵢ = −2^{−(i+1)}.
pub fn default_params(n: usize) -> TilingParams {
    scaled_params(n, 0)
}

/// εᵢ = −2^{−(i+1+s)}.
pub fn scaled_params(n: usize, s: u32) -> TilingParams {
    let eps = (1..n).map(|i| rat(-1, 1i64 << (i as u32 + 1 + s))).collect();
    TilingParams { eps }
}

/// Dyadic argument for the default family: the i-th parameter has a strictly
/// larger power of two in its denominator than all earlier ones.
pub fn dyadic_genericity_proof(p: &TilingParams) -> bool {
    let mut prev = 1i64;
    for e in &p.eps {
        let d = *e.denom();
        if d.count_ones() != 1 || d <= prev {
            return false;
        }
        prev = d;
    }
    true
}

/// Lower corner u of e(a).
pub fn corner(a: &[i64], p: &TilingParams) -> Result<Vec<Rational>> {
    let n = a.len();
    if n != p.n() {
        return Err(Error::invalid(format!("index has {n} coordinates, parameters expect {}", p.n())));
    }
    let mut u = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = int(a[i]);
        for j in i + 1..n {
            x += p.eps[j - 1] * a[j];
        }
        u.push(x);
    }
    Ok(u)
}

pub fn tile(a: &[i64], p: &TilingParams) -> Result<Interval> {
    let lo = corner(a, p)?;
    let hi = lo.iter().map(|x| x + 1).collect();
    Ok(Interval { lo, hi })
}

pub fn tiles_intersection(r#as: &[Point], p: &TilingParams) -> Result<Option<Interval>> {
    let mut it = r#as.iter();
    let Some(first) = it.next() else {
        return Err(Error::invalid("empty index list"));
    };
    let mut acc = tile(first, p)?;
    for a in it {
        match acc.intersect(&tile(a, p)?) {
            Some(b) => acc = b,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// (geometric verdict, pivot-subsequence verdict).
pub fn intersects_iff_pivot(r#as: &[Point], p: &TilingParams) -> Result<(bool, bool)> {
    Ok((tiles_intersection(r#as, p)?.is_some(), is_pivot_subsequence(r#as)))
}

/// Chains inside one unit cube of the window, as simplices.
pub fn nerve(lo: &[i64], hi: &[i64]) -> SimplicialComplex {
    let n = lo.len();
    let inside = |q: &[i64]| (0..n).all(|i| lo[i] <= q[i] && q[i] <= hi[i]);
    let mut c = SimplicialComplex::new();
    for p in grid(lo, hi) {
        // maximal chains of the Boolean lattice over p, cut to the window
        let mut stack = vec![(0u32, vec![p.clone()])];
        while let Some((mask, chain)) = stack.pop() {
            let mut grew = false;
            for bit in 0..n {
                if mask >> bit & 1 == 0 {
                    let m2 = mask | 1 << bit;
                    let q: Point = (0..n).map(|i| p[i] + (m2 >> i & 1) as i64).collect();
                    if inside(&q) {
                        let mut ch = chain.clone();
                        ch.push(q);
                        stack.push((m2, ch));
                        grew = true;
                    }
                }
            }
            if !grew {
                c.insert_closed(chain);
            }
        }
    }
    c
}

/// Subsets of window points whose tiles share a point.
pub fn geometric_nerve(lo: &[i64], hi: &[i64], p: &TilingParams) -> Result<SimplicialComplex> {
    let pts = grid(lo, hi);
    let tiles: Vec<Interval> = pts.iter().map(|a| tile(a, p)).collect::<Result<_>>()?;
    let mut c = SimplicialComplex::new();
    fn grow(
        idx: &mut Vec<usize>,
        acc: &Interval,
        pts: &[Point],
        tiles: &[Interval],
        c: &mut SimplicialComplex,
    ) {
        c.insert_closed(idx.iter().map(|&i| pts[i].clone()).collect());
        let last = *idx.last().expect("nonempty");
        for j in last + 1..pts.len() {
            if let Some(b) = acc.intersect(&tiles[j]) {
                idx.push(j);
                grow(idx, &b, pts, tiles, c);
                idx.pop();
            }
        }
    }
    for i in 0..pts.len() {
        grow(&mut vec![i], &tiles[i], &pts, &tiles, &mut c);
    }
    Ok(c)
}

/// Partition of K = {0..k}ⁿ given as a label 0..=n per point.
fn check_wh(k_amb: &Ambient, sets: &[BTreeSet<Point>], need_disjoint: bool) -> Result<()> {
    let n = k_amb.dim;
    let k = k_amb.size;
    if sets.len() != n + 1 {
        return Err(Error::invalid(format!("expected {} sets", n + 1)));
    }
    for p in k_amb.points() {
        let hits = sets.iter().filter(|s| s.contains(&p)).count();
        if hits == 0 {
            return Err(Error::pre("cover", format!("{p:?} in no set")));
        }
        if need_disjoint && hits > 1 {
            return Err(Error::pre("disjoint", format!("{p:?} in {hits} sets")));
        }
    }
    for (i, s) in sets.iter().enumerate() {
        for q in s {
            k_amb.check_point(q)?;
            if i < n && q[i] == k {
                return Err(Error::pre("e_i misses B_i", format!("e_{} meets B_{} at {q:?}", i + 1, i + 1)));
            }
            if i >= 1 && q[i - 1] == 0 {
                return Err(Error::pre("e_i misses A_(i-1)", format!("e_{} meets A_{} at {q:?}", i + 1, i, )));
            }
        }
    }
    Ok(())
}

fn label_of(sets: &[BTreeSet<Point>], p: &[i64]) -> usize {
    sets.iter().position(|s| s.contains(p)).unwrap_or(sets.len())
}

fn rainbow(seq: &PivotSeq, sets: &[BTreeSet<Point>]) -> bool {
    let mut seen = 0u64;
    for v in seq {
        seen |= 1 << label_of(sets, v);
    }
    seen == (1u64 << sets.len()) - 1
}

/// Pivot sequences of K with one term in each eᵢ.
pub fn wh_tilings_count(k_amb: &Ambient, sets: &[BTreeSet<Point>]) -> Result<u64> {
    check_wh(k_amb, sets, true)?;
    let mut count = 0;
    for c in k_amb.cubes(k_amb.dim) {
        for seq in k_amb.pivot_sequences(&c) {
            if rainbow(&seq, sets) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// A pivot sequence with a term in every dᵢ; the dᵢ may overlap.
pub fn strong_kuhn_nerve_witness(k_amb: &Ambient, sets: &[BTreeSet<Point>]) -> Result<PivotSeq> {
    check_wh(k_amb, sets, false)?;
    let mut seen = BTreeSet::new();
    let disjoint: Vec<BTreeSet<Point>> = sets
        .iter()
        .map(|s| {
            let e: BTreeSet<Point> = s.difference(&seen).cloned().collect();
            seen.extend(s.iter().cloned());
            e
        })
        .collect();
    for c in k_amb.cubes(k_amb.dim) {
        for seq in k_amb.pivot_sequences(&c) {
            if rainbow(&seq, &disjoint) {
                return Ok(seq);
            }
        }
    }
    Err(Error::internal("no rainbow pivot sequence"))
}

/// Exact checks of the tiles indexed by a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowReport {
    pub tiles: usize,
    /// Pairs of distinct tiles whose interiors meet.
    pub overlapping_pairs: usize,
    /// Largest number of tiles with a common point.
    pub order: usize,
    /// Intersecting index sets, all sizes.
    pub intersecting_sets: usize,
    /// Intersecting sets that are not pivot subsequences, or whose
    /// intersection does not have n − r proper factors for r + 1 terms.
    pub mismatches: usize,
    /// Pivot subsequences of the window whose tiles do not meet.
    pub missing: usize,
}

impl WindowReport {
    pub fn is_clean(&self, n: usize) -> bool {
        self.overlapping_pairs == 0 && self.order == n + 1 && self.mismatches == 0 && self.missing == 0
    }
}

/// Interiors, covering order and the pivot criterion over a window. Meeting
/// is inherited by subsets, so growing intersecting sets one tile at a time
/// visits every intersecting subset.
pub fn window_report(lo: &[i64], hi: &[i64], p: &TilingParams) -> Result<WindowReport> {
    let n = lo.len();
    let pts = grid(lo, hi);
    let tiles: Vec<Interval> = pts.iter().map(|a| tile(a, p)).collect::<Result<_>>()?;
    let mut r = WindowReport { tiles: pts.len(), overlapping_pairs: 0, order: 0, intersecting_sets: 0, mismatches: 0, missing: 0 };
    for i in 0..tiles.len() {
        for j in i + 1..tiles.len() {
            if tiles[i].interiors_meet(&tiles[j]) {
                r.overlapping_pairs += 1;
            }
        }
    }
    let mut found = BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, Interval)> = (0..tiles.len()).map(|i| (vec![i], tiles[i].clone())).collect();
    while let Some((idx, acc)) = stack.pop() {
        r.intersecting_sets += 1;
        r.order = r.order.max(idx.len());
        let set: Vec<Point> = idx.iter().map(|&i| pts[i].clone()).collect();
        if !is_pivot_subsequence(&set) || acc.dim() + idx.len() != n + 1 {
            r.mismatches += 1;
        }
        let mut key = set;
        key.sort();
        found.insert(key);
        for j in idx[idx.len() - 1] + 1..tiles.len() {
            if let Some(b) = acc.intersect(&tiles[j]) {
                let mut next = idx.clone();
                next.push(j);
                stack.push((next, b));
            }
        }
    }
    r.missing = nerve(lo, hi).iter().filter(|s| !found.contains(*s)).count();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tile_examples() {
        let p = default_params(2);
        assert_eq!(p.eps, vec![rat(-1, 4)]);
        assert_eq!(tile(&[0, 0], &p).unwrap(), Interval::cube(2, int(0), int(1)));
        let t = tile(&[0, 1], &p).unwrap();
        assert_eq!(t.lo, vec![rat(-1, 4), int(1)]);
        assert_eq!(t.hi, vec![rat(3, 4), int(2)]);
        let t = tile(&[1, 1], &p).unwrap();
        assert_eq!(t.lo, vec![rat(3, 4), int(1)]);
    }

    #[test]
    fn default_params_are_generic() {
        let p = default_params(3);
        assert_eq!(p.eps, vec![rat(-1, 4), rat(-1, 8)]);
        assert!(dyadic_genericity_proof(&p));
        assert!(is_generic(&p.eps));
        assert!(TilingParams::new(p.eps.clone()).is_ok());
        assert!(!is_generic(&[rat(-1, 2), rat(-1, 2)]));
        assert!(!is_generic(&[rat(-1, 4), rat(-1, 2)]));
        assert!(TilingParams::new(vec![rat(-1, 3), rat(-1, 2)]).is_ok());
    }

    #[test]
    fn intersection_examples() {
        let p = default_params(2);
        let b = tiles_intersection(&[vec![0, 0], vec![1, 1]], &p).unwrap().unwrap();
        assert_eq!(b.lo, vec![rat(3, 4), int(1)]);
        assert_eq!(b.hi, vec![int(1), int(1)]);
        assert_eq!(b.dim(), 1);
        assert!(tiles_intersection(&[vec![0, 1], vec![1, 0]], &p).unwrap().is_none());
    }

    #[test]
    fn nerve_examples() {
        let c = nerve(&[0], &[2]);
        assert_eq!(c.of_dim(1).len(), 2);
        assert_eq!(c.dim(), 1);
        let c = nerve(&[0, 0], &[1, 1]);
        assert_eq!((c.of_dim(0).len(), c.of_dim(1).len(), c.of_dim(2).len()), (4, 5, 2));
    }

    #[test]
    fn windows_are_clean() {
        for n in 1..=3 {
            let r = window_report(&vec![0; n], &vec![2; n], &default_params(n)).unwrap();
            assert!(r.is_clean(n), "{r:?}");
            assert_eq!(r.intersecting_sets, nerve(&vec![0; n], &vec![2; n]).len());
        }
    }

    #[test]
    fn nerve_matches_geometry() {
        for n in 1..=3 {
            let lo = vec![0; n];
            let hi = vec![2; n];
            let g = geometric_nerve(&lo, &hi, &default_params(n)).unwrap();
            assert_eq!(g, nerve(&lo, &hi));
        }
    }

    #[test]
    fn wh_count_in_one_dimension() {
        let k = Ambient::discrete(1, 1);
        let e1: BTreeSet<Point> = [vec![0]].into_iter().collect();
        let e2: BTreeSet<Point> = [vec![1]].into_iter().collect();
        assert_eq!(wh_tilings_count(&k, &[e1.clone(), e2.clone()]).unwrap(), 1);
        assert_eq!(strong_kuhn_nerve_witness(&k, &[e1, e2]).unwrap(), vec![vec![0], vec![1]]);
    }
}
