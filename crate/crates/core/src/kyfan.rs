//! Adjacency-preserving maps K → 𝕂 = {0,1}ⁿ and Ky Fan's parity lemma.
//!
//! An image point of 𝕂 is a bitmask: bit i is the component hᵢ.
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::chains::Cochain;
use crate::cube::{Ambient, Cube, Kind, Norm, PivotSeq, Point};
use crate::error::{Error, Result};
use crate::products::{check_kuhn, multi_cup_at};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridMap {
    amb: Ambient,
    image: BTreeMap<Point, u32>,
}

/// A face {x_axis = value} of 𝕂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitFace {
    pub axis: usize,
    pub value: bool,
}

/// 𝔹₁ = 1 × {0,1}ⁿ⁻¹.
pub const B1: UnitFace = UnitFace { axis: 0, value: true };

impl UnitFace {
    pub fn contains(&self, x: u32) -> bool {
        (x >> self.axis & 1 == 1) == self.value
    }
}

fn adjacent_or_equal(a: u32, b: u32) -> bool {
    (a ^ b).count_ones() <= 1
}

impl GridMap {
    pub fn new(amb: Ambient, image: BTreeMap<Point, u32>) -> Result<Self> {
        if amb.kind != Kind::DiscreteK {
            return Err(Error::invalid("grid maps live on the discrete cube K"));
        }
        let pts = amb.points();
        if image.len() != pts.len() || pts.iter().any(|p| !image.contains_key(p)) {
            return Err(Error::invalid("a grid map needs one image per point of K"));
        }
        if image.values().any(|&x| x >> amb.dim != 0) {
            return Err(Error::invalid("image outside {0,1}^n"));
        }
        Ok(GridMap { amb, image })
    }

    pub fn from_fn(amb: Ambient, f: impl Fn(&[i64]) -> u32) -> Result<Self> {
        let image = amb.points().into_iter().map(|p| (p.clone(), f(&p))).collect();
        Self::new(amb, image)
    }

    /// hᵢ(v) = [vᵢ ≥ tᵢ], complemented on the axes set in `flips`.
    pub fn threshold(amb: Ambient, ts: &[i64], flips: u32) -> Result<Self> {
        if ts.len() != amb.dim {
            return Err(Error::invalid("one threshold per axis"));
        }
        Self::from_fn(amb, |v| {
            (0..ts.len()).fold(0, |m, i| m | (u32::from(v[i] >= ts[i]) ^ (flips >> i & 1)) << i)
        })
    }

    /// L(v): hᵢ(v) = 0 exactly on cᵢ.
    pub fn from_sets(amb: Ambient, cs: &[BTreeSet<Point>]) -> Result<Self> {
        if cs.len() != amb.dim {
            return Err(Error::invalid(format!("expected {} sets", amb.dim)));
        }
        Self::from_fn(amb, |v| (0..cs.len()).fold(0, |m, i| m | u32::from(!cs[i].contains(v)) << i))
    }

    pub fn ambient(&self) -> Ambient {
        self.amb
    }

    pub fn at(&self, p: &[i64]) -> u32 {
        self.image[p]
    }

    pub fn table(&self) -> &BTreeMap<Point, u32> {
        &self.image
    }

    /// hᵢ as a 0-cochain.
    pub fn component(&self, i: usize) -> Cochain {
        let pts = self.image.iter().filter(|(_, &x)| x >> i & 1 == 1).map(|(p, _)| Cube::vertex(p.clone()));
        Cochain::from_cubes(self.amb, 0, pts).expect("points of K")
    }

    /// A 1-cube whose ends go to non-adjacent points, if any.
    pub fn adjacency_violation(&self) -> Option<Cube> {
        self.amb.cubes(1).into_iter().find(|e| !self.edge_ok(e))
    }

    pub fn is_adjacency_preserving(&self) -> bool {
        self.adjacency_violation().is_none()
    }

    fn edge_ok(&self, e: &Cube) -> bool {
        adjacent_or_equal(self.image[&e.root], self.image[&self.amb.peak(e)])
    }

    fn check_on(&self, c: &Cube) -> Result<()> {
        for e in self.amb.faces(c, 1)? {
            if !self.edge_ok(&e) {
                return Err(Error::pre("adjacency-preserving", format!("edge {e:?} is stretched")));
            }
        }
        Ok(())
    }

    /// The images of the vertices of `c` are distinct and fill `target`.
    pub fn maps_onto(&self, c: &Cube, target: impl Fn(u32) -> bool) -> bool {
        let imgs: BTreeSet<u32> = self.amb.vertices(c).iter().map(|v| self.image[v]).collect();
        imgs.len() == 1 << c.dim() && imgs.iter().all(|&x| target(x))
    }

    pub fn is_pivot_image(&self, seq: &[Point]) -> bool {
        seq.windows(2).all(|w| {
            let (a, b) = (self.image[&w[0]], self.image[&w[1]]);
            a & b == a && (a ^ b).count_ones() == 1
        }) && self.image[&seq[0]] == 0
    }
}

/// (φ bijective on σ, f₁·…·fₙ(σ)), computed separately and required equal.
pub fn bijection_iff_product(phi: &GridMap, sigma: &Cube) -> Result<(bool, bool)> {
    let amb = phi.amb;
    amb.check_cube(sigma)?;
    if sigma.dim() != amb.dim {
        return Err(Error::invalid("σ must be an n-cube"));
    }
    phi.check_on(sigma)?;
    let bij = phi.maps_onto(sigma, |_| true);
    let fs: Vec<Cochain> = (0..amb.dim).map(|i| phi.component(i).coboundary()).collect::<Result<_>>()?;
    let refs: Vec<&Cochain> = fs.iter().collect();
    let prod = multi_cup_at(&refs, sigma, Norm::Lex)?;
    if bij != prod {
        return Err(Error::internal(format!("bijection {bij} but product {prod} on {sigma:?}")));
    }
    Ok((bij, prod))
}

/// (s, t): n-cubes mapped onto 𝕂, boundary (n−1)-cubes mapped onto `b`.
pub fn kyfan_counts(phi: &GridMap, b: UnitFace) -> Result<(u64, u64)> {
    let amb = phi.amb;
    if b.axis >= amb.dim {
        return Err(Error::invalid(format!("face axis {} out of range", b.axis)));
    }
    if let Some(e) = phi.adjacency_violation() {
        return Err(Error::pre("adjacency-preserving", format!("edge {e:?} is stretched")));
    }
    let s = amb.cubes(amb.dim).iter().filter(|c| phi.maps_onto(c, |_| true)).count() as u64;
    let t = amb
        .cubes(amb.dim - 1)
        .iter()
        .filter(|c| amb.in_boundary(c) && phi.maps_onto(c, |x| b.contains(x)))
        .count() as u64;
    if s % 2 != t % 2 {
        return Err(Error::internal(format!("s = {s}, t = {t}")));
    }
    Ok((s, t))
}

/// n-cubes mapped onto 𝕂 by the Kuhn map L; their number is odd.
pub fn kuhn_via_kyfan(amb: &Ambient, cs: &[BTreeSet<Point>]) -> Result<Vec<Cube>> {
    check_kuhn(amb, cs)?;
    let l = GridMap::from_sets(*amb, cs)?;
    if let Some(e) = l.adjacency_violation() {
        return Err(Error::pre("adjacency-preserving", format!("edge {e:?} is stretched")));
    }
    let cubes: Vec<Cube> = amb.cubes(amb.dim).into_iter().filter(|c| l.maps_onto(c, |_| true)).collect();
    if cubes.len().is_multiple_of(2) {
        return Err(Error::internal(format!("{} bijective cubes", cubes.len())));
    }
    for c in &cubes {
        let ok = amb
            .pivot_sequences(c)
            .iter()
            .any(|seq| (0..amb.dim).all(|i| cs[i].contains(&seq[i]) != cs[i].contains(&seq[i + 1])));
        if !ok {
            return Err(Error::internal(format!("{c:?} holds no separating pivot sequence")));
        }
    }
    Ok(cubes)
}

/// For an (n−1)-cube τ with f₂·…·fₙ(τ) = 1: the value of h₁ on all of τ,
/// which equals h₁ at the root. `None` when the product vanishes.
pub fn face_product_side(phi: &GridMap, tau: &Cube) -> Result<Option<bool>> {
    let amb = phi.amb;
    amb.check_cube(tau)?;
    if amb.dim < 2 || tau.dim() != amb.dim - 1 {
        return Err(Error::invalid("τ must be an (n−1)-cube, n ≥ 2"));
    }
    phi.check_on(tau)?;
    let fs: Vec<Cochain> = (1..amb.dim).map(|i| phi.component(i).coboundary()).collect::<Result<_>>()?;
    let refs: Vec<&Cochain> = fs.iter().collect();
    if !multi_cup_at(&refs, tau, Norm::Lex)? {
        return Ok(None);
    }
    let side = phi.image[&tau.root] & 1 == 1;
    if amb.vertices(tau).iter().any(|v| (phi.image[v] & 1 == 1) != side) {
        return Err(Error::internal(format!("h_1 is not constant on {tau:?}")));
    }
    Ok(Some(side))
}

/// Every map of the points of K into 𝕂. Only for tiny K.
pub fn all_maps(amb: &Ambient) -> Result<Vec<GridMap>> {
    let pts = amb.points();
    let bits = amb.dim * pts.len();
    if bits > 20 {
        return Err(Error::invalid("too many maps to enumerate"));
    }
    let mask = (1u64 << amb.dim) - 1;
    (0u64..1 << bits)
        .map(|code| {
            let image = pts
                .iter()
                .enumerate()
                .map(|(j, p)| (p.clone(), (code >> (j * amb.dim) & mask) as u32))
                .collect();
            GridMap::new(*amb, image)
        })
        .collect()
}

/// Free pivot sequences of σ from `v`, and their images from φ(v).
pub fn free_pivot_correspondence(phi: &GridMap, sigma: &Cube, v: &[i64]) -> Result<(usize, usize)> {
    let amb = phi.amb;
    let seqs: Vec<PivotSeq> = amb.free_pivot_sequences(sigma, v)?;
    let images: BTreeSet<Vec<u32>> = seqs.iter().map(|s| s.iter().map(|p| phi.image[p]).collect()).collect();
    let is_free = |s: &Vec<u32>| {
        s.windows(2).all(|w| (w[0] ^ w[1]).count_ones() == 1)
            && s.windows(2).fold(0u32, |m, w| m | (w[0] ^ w[1])).count_ones() as usize == amb.dim
    };
    Ok((seqs.len(), images.iter().filter(|s| is_free(s)).count()))
}
