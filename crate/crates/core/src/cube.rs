//! Ambient grids, combinatorial cubes, faces, roots and peaks, pivot sequences.
//!
//! A cube is a root point plus a bitmask of extended axes. On an extended
//! axis the cube spans `root[i] ..= root[i] + step`, where `step` is 1 except
//! on the big sphere, whose coordinates are stored doubled (step 2, all
//! coordinates odd).
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::util::{bits, permutations, submasks_of_size};

pub type Point = Vec<i64>;

/// `n+1` points of one cube, consecutive points joined by an edge.
pub type PivotSeq = Vec<Point>;

pub const MAX_COORDS: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// Solid cube Q = [0,l]ⁿ, seen through its integer vertices.
    SolidQ,
    /// Discrete cube K = {0..k}ⁿ.
    DiscreteK,
    /// Symmetric cube C = {−k..k}ⁿ⁺¹.
    SymmetricC,
    /// Discrete sphere S = bd C.
    SphereS,
    /// Boundary of [−l−½, l+½]ⁿ⁺¹ in doubled coordinates.
    BigSphere,
}

/// How the two ends of an extended axis are told apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    /// Lower coordinate first.
    Lex,
    /// Smaller absolute value first.
    L1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub kind: Kind,
    /// n. The coordinate count is n for Q and K, n+1 otherwise.
    pub dim: usize,
    /// l for Q and the big sphere, k for K, C and S.
    pub size: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub root: Point,
    pub dir: u32,
}

impl Cube {
    pub fn new(root: Point, dir: u32) -> Self {
        Cube { root, dir }
    }

    pub fn vertex(p: Point) -> Self {
        Cube { root: p, dir: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dir.count_ones() as usize
    }

    pub fn axes(&self) -> Vec<usize> {
        bits(self.dir)
    }

    pub fn extends(&self, axis: usize) -> bool {
        self.dir >> axis & 1 == 1
    }
}

impl Ambient {
    pub fn new(kind: Kind, dim: usize, size: i64) -> Result<Self> {
        // Q⁰ (a single point) is allowed as the target of plane sections
        if (dim == 0 && kind != Kind::SolidQ) || size < 1 {
            return Err(Error::invalid(format!("ambient needs dim ≥ 1 and size ≥ 1, got {dim}, {size}")));
        }
        let a = Ambient { kind, dim, size };
        if a.coords() > MAX_COORDS {
            return Err(Error::invalid("too many coordinates"));
        }
        Ok(a)
    }

    pub fn solid(n: usize, l: i64) -> Self {
        Self::new(Kind::SolidQ, n, l).expect("valid solid cube")
    }

    pub fn discrete(n: usize, k: i64) -> Self {
        Self::new(Kind::DiscreteK, n, k).expect("valid discrete cube")
    }

    pub fn symmetric(n: usize, k: i64) -> Self {
        Self::new(Kind::SymmetricC, n, k).expect("valid symmetric cube")
    }

    pub fn sphere(n: usize, k: i64) -> Self {
        Self::new(Kind::SphereS, n, k).expect("valid discrete sphere")
    }

    pub fn big_sphere(n: usize, l: i64) -> Self {
        Self::new(Kind::BigSphere, n, l).expect("valid big sphere")
    }

    pub fn coords(&self) -> usize {
        match self.kind {
            Kind::SolidQ | Kind::DiscreteK => self.dim,
            _ => self.dim + 1,
        }
    }

    /// Dimension of the top cells: the coordinate count, or n on the spheres.
    pub fn top_dim(&self) -> usize {
        if self.is_sphere() {
            self.dim
        } else {
            self.coords()
        }
    }

    pub fn step(&self) -> i64 {
        if self.kind == Kind::BigSphere {
            2
        } else {
            1
        }
    }

    pub fn lo(&self) -> i64 {
        match self.kind {
            Kind::SolidQ | Kind::DiscreteK => 0,
            _ => -self.bound(),
        }
    }

    pub fn hi(&self) -> i64 {
        self.bound()
    }

    /// Largest coordinate value: l, k, or 2l+1 on the big sphere.
    pub fn bound(&self) -> i64 {
        if self.kind == Kind::BigSphere {
            2 * self.size + 1
        } else {
            self.size
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.kind, Kind::SymmetricC | Kind::SphereS | Kind::BigSphere)
    }

    fn is_sphere(&self) -> bool {
        matches!(self.kind, Kind::SphereS | Kind::BigSphere)
    }

    fn value_ok(&self, x: i64) -> bool {
        x >= self.lo() && x <= self.hi() && (self.kind != Kind::BigSphere || x.rem_euclid(2) == 1)
    }

    /// Values a frozen coordinate may take.
    pub fn values(&self) -> Vec<i64> {
        (self.lo()..=self.hi()).filter(|&x| self.value_ok(x)).collect()
    }

    fn all_axes(&self) -> u32 {
        (1u32 << self.coords()) - 1
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        p.len() == self.coords()
            && p.iter().all(|&x| self.value_ok(x))
            && (!self.is_sphere() || p.iter().any(|&x| x.abs() == self.bound()))
    }

    pub fn contains_cube(&self, c: &Cube) -> bool {
        if c.root.len() != self.coords() || c.dir & !self.all_axes() != 0 {
            return false;
        }
        let s = self.step();
        for (i, &x) in c.root.iter().enumerate() {
            if !self.value_ok(x) || (c.extends(i) && x + s > self.hi()) {
                return false;
            }
        }
        !self.is_sphere()
            || c.root.iter().enumerate().any(|(i, &x)| !c.extends(i) && x.abs() == self.bound())
    }

    pub fn check_cube(&self, c: &Cube) -> Result<()> {
        if self.contains_cube(c) {
            Ok(())
        } else {
            Err(Error::invalid(format!("cube {:?}/{:#b} not in {:?}", c.root, c.dir, self.kind)))
        }
    }

    pub fn check_point(&self, p: &[i64]) -> Result<()> {
        if self.contains_point(p) {
            Ok(())
        } else {
            Err(Error::invalid(format!("point {:?} not in {:?}", p, self.kind)))
        }
    }

    pub fn points(&self) -> Vec<Point> {
        self.cubes(0).into_iter().map(|c| c.root).collect()
    }

    /// All m-cubes, sorted.
    pub fn cubes(&self, m: usize) -> Vec<Cube> {
        let d = self.coords();
        let vals = self.values();
        let mut out = Vec::new();
        for dir in submasks_of_size(self.all_axes(), m) {
            let ranges: Vec<Vec<i64>> = (0..d)
                .map(|i| {
                    if dir >> i & 1 == 1 {
                        vals.iter().copied().filter(|&x| x + self.step() <= self.hi()).collect()
                    } else {
                        vals.clone()
                    }
                })
                .collect();
            for_each_product(&ranges, |root| {
                let c = Cube { root: root.to_vec(), dir };
                if self.contains_cube(&c) {
                    out.push(c);
                }
            });
        }
        out.sort();
        out
    }

    /// Points with coordinate `axis` pinned at the low or high end: Aᵢ/Bᵢ, 𝒜ᵢ/ℬᵢ.
    pub fn face_set(&self, axis: usize, high: bool) -> Result<Vec<Point>> {
        if axis >= self.coords() {
            return Err(Error::invalid(format!("axis {axis} out of range")));
        }
        let v = if high { self.hi() } else { self.lo() };
        Ok(self.points().into_iter().filter(|p| p[axis] == v).collect())
    }

    /// True when some frozen axis sits at an end of the range, i.e. the cube
    /// lies in the boundary of the box.
    pub fn in_boundary(&self, c: &Cube) -> bool {
        c.root
            .iter()
            .enumerate()
            .any(|(i, &x)| !c.extends(i) && (x == self.lo() || x == self.hi()))
    }

    pub fn peak(&self, c: &Cube) -> Point {
        let s = self.step();
        c.root
            .iter()
            .enumerate()
            .map(|(i, &x)| if c.extends(i) { x + s } else { x })
            .collect()
    }

    pub fn vertices(&self, c: &Cube) -> Vec<Point> {
        self.faces_unchecked(c, 0).into_iter().map(|f| f.root).collect()
    }

    pub fn cube_contains(&self, c: &Cube, p: &[i64]) -> bool {
        let s = self.step();
        c.root.iter().enumerate().all(|(i, &x)| {
            if c.extends(i) {
                p[i] >= x && p[i] <= x + s
            } else {
                p[i] == x
            }
        })
    }

    /// All m-faces of `c`: C(|A|,m)·2^(|A|−m) of them.
    pub fn faces(&self, c: &Cube, m: usize) -> Result<Vec<Cube>> {
        if m > c.dim() {
            return Err(Error::invalid(format!("face dimension {m} exceeds cube dimension {}", c.dim())));
        }
        Ok(self.faces_unchecked(c, m))
    }

    fn faces_unchecked(&self, c: &Cube, m: usize) -> Vec<Cube> {
        let s = self.step();
        let mut out = Vec::new();
        for keep in submasks_of_size(c.dir, m) {
            let frozen = bits(c.dir & !keep);
            for eps in 0u32..(1 << frozen.len()) {
                let mut root = c.root.clone();
                for (t, &a) in frozen.iter().enumerate() {
                    if eps >> t & 1 == 1 {
                        root[a] += s;
                    }
                }
                out.push(Cube { root, dir: keep });
            }
        }
        out
    }

    /// Every face of `c` of every dimension, `c` included.
    pub fn closure(&self, c: &Cube) -> Vec<Cube> {
        (0..=c.dim()).flat_map(|m| self.faces_unchecked(c, m)).collect()
    }

    pub fn is_face(&self, f: &Cube, c: &Cube) -> bool {
        f.dir & !c.dir == 0 && self.cube_contains(c, &f.root) && self.cube_contains(c, &self.peak(f))
    }

    /// The two ends of extended axis `i` of `c`, ordered by `norm`.
    fn ends(&self, c: &Cube, i: usize, norm: Norm) -> Result<(i64, i64)> {
        let a = c.root[i];
        let b = a + self.step();
        match norm {
            Norm::Lex => Ok((a, b)),
            Norm::L1 => match a.abs().cmp(&b.abs()) {
                core::cmp::Ordering::Less => Ok((a, b)),
                core::cmp::Ordering::Greater => Ok((b, a)),
                core::cmp::Ordering::Equal => Err(Error::invalid("l1 ends tie")),
            },
        }
    }

    /// λ_H^ε: freeze the axes of `h` at their first (ε=0) or second (ε=1) end.
    pub fn lambda(&self, c: &Cube, h: u32, eps: bool, norm: Norm) -> Result<Cube> {
        if h & !c.dir != 0 {
            return Err(Error::invalid("λ: H is not inside the direction"));
        }
        let mut root = c.root.clone();
        for i in bits(h) {
            let (first, second) = self.ends(c, i, norm)?;
            root[i] = if eps { second } else { first };
        }
        // an extended axis keeps its lex lower end as root
        Ok(Cube { root, dir: c.dir & !h })
    }

    pub fn root_of(&self, c: &Cube, norm: Norm) -> Result<Point> {
        Ok(self.lambda(c, c.dir, false, norm)?.root)
    }

    pub fn peak_of(&self, c: &Cube, norm: Norm) -> Result<Point> {
        Ok(self.lambda(c, c.dir, true, norm)?.root)
    }

    /// Pivot sequences of `c` under the lex order: one per permutation of A(c).
    pub fn pivot_sequences(&self, c: &Cube) -> Vec<PivotSeq> {
        self.pivot_sequences_norm(c, Norm::Lex).expect("lex ends never tie")
    }

    /// Sequences from the `norm`-root to the `norm`-peak moving one axis at a time.
    pub fn pivot_sequences_norm(&self, c: &Cube, norm: Norm) -> Result<Vec<PivotSeq>> {
        let start = self.root_of(c, norm)?;
        self.walks(c, &start)
    }

    /// Sequences from `start` to the opposite vertex, each axis flipped once.
    pub fn free_pivot_sequences(&self, c: &Cube, start: &[i64]) -> Result<Vec<PivotSeq>> {
        if !self.vertices(c).iter().any(|v| v.as_slice() == start) {
            return Err(Error::invalid(format!("{start:?} is not a vertex of the cube")));
        }
        self.walks(c, start)
    }

    fn walks(&self, c: &Cube, start: &[i64]) -> Result<Vec<PivotSeq>> {
        let axes = c.axes();
        let s = self.step();
        let mut out = Vec::new();
        for perm in permutations(axes.len()) {
            let mut v = start.to_vec();
            let mut seq = vec![v.clone()];
            for &t in &perm {
                let a = axes[t];
                v[a] = if v[a] == c.root[a] { c.root[a] + s } else { c.root[a] };
                seq.push(v.clone());
            }
            out.push(seq);
        }
        Ok(out)
    }

    pub fn antipode_point(&self, p: &[i64]) -> Result<Point> {
        if !self.is_symmetric() {
            return Err(Error::invalid("ambient has no central symmetry"));
        }
        Ok(p.iter().map(|x| -x).collect())
    }

    pub fn antipode_cube(&self, c: &Cube) -> Result<Cube> {
        if !self.is_symmetric() {
            return Err(Error::invalid("ambient has no central symmetry"));
        }
        Ok(Cube { root: self.peak(c).iter().map(|x| -x).collect(), dir: c.dir })
    }
}

/// Coordinatewise ≤.
pub fn leq(p: &[i64], q: &[i64]) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::invalid("length mismatch"));
    }
    Ok(p.iter().zip(q).all(|(a, b)| a <= b))
}

/// Distinct, pairwise comparable, and inside one unit cube: the terms of a
/// pivot subsequence.
pub fn is_pivot_subsequence(pts: &[Point]) -> bool {
    let mut v: Vec<&Point> = pts.iter().collect();
    v.sort();
    v.dedup();
    if v.len() != pts.len() {
        return false;
    }
    // lex-sorted comparable points are a ≤-chain
    for w in v.windows(2) {
        if !w[0].iter().zip(w[1]).all(|(a, b)| a <= b) {
            return false;
        }
    }
    match (v.first(), v.last()) {
        (Some(a), Some(b)) => a.iter().zip(b.iter()).all(|(x, y)| y - x <= 1),
        _ => true,
    }
}

/// Unit steps along distinct axes, each +1: a pivot sequence of an n-cube.
pub fn is_pivot_sequence(seq: &[Point], n: usize) -> bool {
    if seq.len() != n + 1 {
        return false;
    }
    let mut used = 0u32;
    for w in seq.windows(2) {
        let diff: Vec<usize> = (0..w[0].len()).filter(|&i| w[0][i] != w[1][i]).collect();
        if diff.len() != 1 {
            return false;
        }
        let a = diff[0];
        if w[1][a] - w[0][a] != 1 || used >> a & 1 == 1 {
            return false;
        }
        used |= 1 << a;
    }
    true
}

pub(crate) fn for_each_product(ranges: &[Vec<i64>], mut f: impl FnMut(&[i64])) {
    if ranges.iter().any(|r| r.is_empty()) {
        return;
    }
    let d = ranges.len();
    let mut idx = vec![0usize; d];
    let mut cur: Vec<i64> = ranges.iter().map(|r| r[0]).collect();
    loop {
        f(&cur);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + 1 < ranges[i].len() {
                idx[i] += 1;
                cur[i] = ranges[i][idx[i]];
                for j in i + 1..d {
                    idx[j] = 0;
                    cur[j] = ranges[j][0];
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::binomial;

    #[test]
    fn face_set_examples() {
        let k = Ambient::discrete(1, 1);
        assert_eq!(k.face_set(0, false).unwrap(), vec![vec![0]]);
        let k = Ambient::discrete(2, 1);
        assert_eq!(k.face_set(1, true).unwrap(), vec![vec![0, 1], vec![1, 1]]);
        let q = Ambient::solid(2, 2);
        assert_eq!(q.face_set(0, false).unwrap(), vec![vec![0, 0], vec![0, 1], vec![0, 2]]);
        assert!(q.face_set(2, false).is_err());
    }

    #[test]
    fn face_counts() {
        let k = Ambient::discrete(3, 2);
        let e = Cube::new(vec![0], 1);
        let k1 = Ambient::discrete(1, 1);
        assert_eq!(k1.faces(&e, 0).unwrap(), vec![Cube::vertex(vec![0]), Cube::vertex(vec![1])]);
        let sq = Cube::new(vec![0, 0, 0], 0b011);
        assert_eq!(k.faces(&sq, 1).unwrap().len(), 4);
        let c3 = Cube::new(vec![0, 0, 0], 0b111);
        assert_eq!(k.faces(&c3, 2).unwrap().len(), 6);
        for m in 0..=3 {
            let want = binomial(3, m as u64) * (1 << (3 - m));
            assert_eq!(k.faces(&c3, m).unwrap().len() as u64, want);
        }
        assert!(k.faces(&sq, 3).is_err());
    }

    #[test]
    fn lambda_lex_root_and_peak() {
        let k = Ambient::discrete(2, 5);
        let c = Cube::new(vec![2, 3], 0b11);
        assert_eq!(k.lambda(&c, 0b11, false, Norm::Lex).unwrap(), Cube::vertex(vec![2, 3]));
        assert_eq!(k.lambda(&c, 0b11, true, Norm::Lex).unwrap(), Cube::vertex(vec![3, 4]));
        assert!(k.lambda(&c, 0b100, true, Norm::Lex).is_err());
    }

    #[test]
    fn lambda_l1_picks_smaller_absolute_value() {
        let c = Ambient::symmetric(1, 2);
        let e = Cube::new(vec![-1, 2], 0b01);
        assert_eq!(c.lambda(&e, 0b01, false, Norm::L1).unwrap().root, vec![0, 2]);
        assert_eq!(c.lambda(&e, 0b01, true, Norm::L1).unwrap().root, vec![-1, 2]);
    }

    #[test]
    fn pivot_sequence_examples() {
        let k = Ambient::discrete(3, 1);
        assert_eq!(k.pivot_sequences(&Cube::new(vec![0, 0, 0], 0b111)).len(), 6);
        let k2 = Ambient::discrete(2, 1);
        let seqs = k2.pivot_sequences(&Cube::new(vec![0, 0], 0b11));
        assert_eq!(
            seqs,
            vec![
                vec![vec![0, 0], vec![1, 0], vec![1, 1]],
                vec![vec![0, 0], vec![0, 1], vec![1, 1]],
            ]
        );
        let k1 = Ambient::discrete(1, 1);
        assert_eq!(k1.pivot_sequences(&Cube::new(vec![0], 1)).len(), 1);
    }

    #[test]
    fn free_pivot_examples() {
        let k1 = Ambient::discrete(1, 1);
        let e = Cube::new(vec![0], 1);
        assert_eq!(k1.free_pivot_sequences(&e, &[1]).unwrap(), vec![vec![vec![1], vec![0]]]);
        let k2 = Ambient::discrete(2, 1);
        let sq = Cube::new(vec![0, 0], 0b11);
        let s = k2.free_pivot_sequences(&sq, &[1, 0]).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|q| q[2] == vec![0, 1]));
        let k3 = Ambient::discrete(3, 1);
        let c = Cube::new(vec![0, 0, 0], 0b111);
        assert_eq!(k3.free_pivot_sequences(&c, &[1, 0, 1]).unwrap().len(), 6);
        assert!(k2.free_pivot_sequences(&sq, &[2, 0]).is_err());
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&[0, 0], &[1, 1]).unwrap());
        assert!(!leq(&[0, 1], &[1, 0]).unwrap());
        assert!(leq(&[3, 4], &[3, 4]).unwrap());
        assert!(leq(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn antipode_examples() {
        let c = Ambient::symmetric(1, 2);
        assert_eq!(c.antipode_point(&[1, -2]).unwrap(), vec![-1, 2]);
        let s = Ambient::sphere(1, 1);
        let e = Cube::new(vec![0, 1], 0b01);
        assert_eq!(s.antipode_cube(&e).unwrap(), Cube::new(vec![-1, -1], 0b01));
        for c in s.cubes(1) {
            assert_eq!(s.antipode_cube(&s.antipode_cube(&c).unwrap()).unwrap(), c);
        }
        assert!(Ambient::discrete(1, 1).antipode_point(&[0]).is_err());
    }

    #[test]
    fn sphere_cubes_touch_the_boundary() {
        let s = Ambient::sphere(2, 1);
        // 6 faces of the 3-cube {-1,0,1}^3, each a 2×2 grid of squares
        assert_eq!(s.cubes(2).len(), 24);
        assert_eq!(s.points().len(), 27 - 1);
        assert!(!s.contains_cube(&Cube::new(vec![0, 0, 0], 0b001)));
    }

    #[test]
    fn big_sphere_cubes() {
        let b = Ambient::big_sphere(1, 1);
        // square of side 3 cells: 4 sides × 3 cells
        assert_eq!(b.cubes(1).len(), 12);
        assert_eq!(b.points().len(), 12);
        assert!(b.contains_point(&[3, -1]));
        assert!(!b.contains_point(&[2, 3]));
    }

    #[test]
    fn pivot_subsequence_predicate() {
        assert!(is_pivot_subsequence(&[vec![0, 0], vec![0, 1], vec![1, 1]]));
        assert!(!is_pivot_subsequence(&[vec![0, 1], vec![1, 0]]));
        assert!(!is_pivot_subsequence(&[vec![0, 0], vec![2, 0]]));
        assert!(is_pivot_sequence(&[vec![0, 0], vec![0, 1], vec![1, 1]], 2));
    }
}
