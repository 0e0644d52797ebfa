//! Star duality between the discrete cube K of size k and the solid cube Q of
//! size l = k + 1.
//!
//! A point v of K goes to the n-cube ∏[vᵢ, vᵢ+1] of Q (centre v + ½).
//! An m-cube of K goes to an (n−m)-cube of Q; cubes of bd Q have no dual and
//! map to zero. Relative (co)chains are plain supports with bd Q cubes
//! filtered out.
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::chains::{Chain, Chains, Cochain};
use crate::cube::{Ambient, Cube, Kind, Point};
use crate::error::{Error, Result};
use crate::lebesgue::{cubes_partitions_witness, e_coverings_witness, set_contains_point, CubicalSet, PartitionMode};
use crate::products::kuhn_witnesses;

/// K of size k together with Q of size k + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub k: Ambient,
    pub q: Ambient,
}

impl DualPair {
    pub fn new(n: usize, k: i64) -> Result<Self> {
        Ok(DualPair { k: Ambient::new(Kind::DiscreteK, n, k)?, q: Ambient::new(Kind::SolidQ, n, k + 1)? })
    }

    pub fn of(k: &Ambient) -> Result<Self> {
        if k.kind != Kind::DiscreteK {
            return Err(Error::invalid("expected the discrete cube K"));
        }
        Self::new(k.dim, k.size)
    }

    pub fn n(&self) -> usize {
        self.k.dim
    }

    pub fn star_point(&self, v: &[i64]) -> Result<Cube> {
        self.k.check_point(v)?;
        Ok(Cube::new(v.to_vec(), (1 << self.n()) - 1))
    }

    pub fn star_set(&self, s: &BTreeSet<Point>) -> Result<CubicalSet> {
        s.iter().map(|v| self.star_point(v)).collect()
    }

    /// Points v of K with *v in `d`.
    pub fn unstar_set(&self, d: &CubicalSet) -> Result<BTreeSet<Point>> {
        d.iter()
            .map(|c| {
                self.q.check_cube(c)?;
                if c.dim() != self.n() {
                    return Err(Error::invalid("cubical sets consist of n-cubes"));
                }
                Ok(c.root.clone())
            })
            .collect()
    }

    /// *σ: extended axes become {aᵢ+1}, frozen axes become [aᵢ, aᵢ+1].
    pub fn star_cube(&self, s: &Cube) -> Result<Cube> {
        self.k.check_cube(s)?;
        let all = (1u32 << self.n()) - 1;
        let root = s.root.iter().enumerate().map(|(i, &a)| if s.extends(i) { a + 1 } else { a }).collect();
        Ok(Cube::new(root, all & !s.dir))
    }

    /// *c for a cube of Q; `None` when c lies in bd Q.
    pub fn unstar(&self, c: &Cube) -> Result<Option<Cube>> {
        self.q.check_cube(c)?;
        if self.q.in_boundary(c) {
            return Ok(None);
        }
        let all = (1u32 << self.n()) - 1;
        let root = c.root.iter().enumerate().map(|(i, &a)| if c.extends(i) { a } else { a - 1 }).collect();
        Ok(Some(Cube::new(root, all & !c.dir)))
    }

    /// An m-chain of K as a relative (n−m)-cochain of Q.
    pub fn star_chain(&self, g: &Chain) -> Result<Cochain> {
        self.need_k(g)?;
        let mut out = Cochain::zero(self.q, self.n() - g.dim());
        for c in g.iter() {
            out.toggle(self.star_cube(c)?);
        }
        Ok(out)
    }

    /// A relative m-chain of Q as an (n−m)-cochain of K.
    pub fn unstar_chain(&self, g: &Chain) -> Result<Cochain> {
        if g.ambient() != self.q {
            return Err(Error::invalid("chain is not on Q"));
        }
        let mut out = Cochain::zero(self.k, self.n() - g.dim());
        for c in g.iter() {
            if let Some(s) = self.unstar(c)? {
                out.toggle(s);
            }
        }
        Ok(out)
    }

    fn need_k<R>(&self, g: &Chains<R>) -> Result<()> {
        if g.ambient() != self.k {
            return Err(Error::invalid("chain is not on K"));
        }
        Ok(())
    }

    /// (σ face of τ, *τ face of *σ), required equal.
    pub fn face_duality_check(&self, s: &Cube, t: &Cube) -> Result<(bool, bool)> {
        let a = self.k.is_face(s, t);
        let b = self.q.is_face(&self.star_cube(t)?, &self.star_cube(s)?);
        if a != b {
            return Err(Error::internal(format!("face duality fails for {s:?}, {t:?}")));
        }
        Ok((a, b))
    }

    /// *(∂γ) = ∂*(*γ) for a chain of K.
    pub fn dual_boundary_check(&self, g: &Chain) -> Result<bool> {
        self.need_k(g)?;
        if g.dim() == 0 {
            // ∂ of a 0-chain is zero; so is ∂* of a top cochain
            return Ok(true);
        }
        let lhs = self.star_chain(&g.boundary()?)?;
        let rhs = relative(&self.q, &self.star_chain(g)?.coboundary()?);
        Ok(lhs == rhs)
    }

    /// *(∂γ) = ∂*(*γ) for a relative chain of Q.
    pub fn dual_boundary_check_q(&self, g: &Chain) -> Result<bool> {
        if g.ambient() != self.q {
            return Err(Error::invalid("chain is not on Q"));
        }
        if g.dim() == 0 {
            return Ok(true);
        }
        let rel = relative(&self.q, g);
        let lhs = self.unstar_chain(&rel.boundary()?)?;
        let rhs = self.unstar_chain(&rel)?.coboundary()?;
        Ok(lhs == rhs)
    }

    /// (some n-cube of K meets every sᵢ, *s₁ ∩ … ∩ *s_r ≠ ∅), required equal.
    pub fn cubes_intersections_bridge(&self, sets: &[BTreeSet<Point>]) -> Result<(bool, bool)> {
        let meets = |c: &Cube| {
            let vs = self.k.vertices(c);
            sets.iter().all(|s| vs.iter().any(|v| s.contains(v)))
        };
        let left = self.k.cubes(self.n()).iter().any(meets);
        let stars: Vec<CubicalSet> = sets.iter().map(|s| self.star_set(s)).collect::<Result<_>>()?;
        let right = self.q.points().iter().any(|p| stars.iter().all(|d| set_contains_point(&self.q, d, p)));
        if left != right {
            return Err(Error::internal("cube/intersection duality fails"));
        }
        Ok((left, right))
    }

    /// The n-cube ∏{aᵢ−1, aᵢ} of K, clamped into K, around a vertex a of Q.
    pub fn cube_around(&self, a: &[i64]) -> Result<Cube> {
        self.q.check_point(a)?;
        let k = self.k.size;
        let root = a.iter().map(|&x| (x - 1).clamp(0, k - 1)).collect();
        Ok(Cube::new(root, (1 << self.n()) - 1))
    }
}

fn relative<R>(q: &Ambient, f: &Chains<R>) -> Chains<R> {
    f.filter(|c| !q.in_boundary(c))
}

/// Which covering theorem to carry across the duality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transport {
    /// s₁..s_{n+1} ⊆ K covering K with conditions (i), (ii).
    DiscreteCoverings,
    /// s₁..sₙ ⊆ K with 𝒜ᵢ ⊆ s₁ ∪ … ∪ sᵢ and ℬᵢ ∩ sᵢ = ∅.
    SeparationWeak,
    /// d₁..dₙ cubical in Q with Aᵢ ⊆ dᵢ and Bᵢ ⊆ d̄ᵢ.
    SeparationLebesgue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An n-cube of K meeting every set (and every complement, where asked).
    Cube(Cube),
    /// A vertex of Q in every dᵢ and every d̄ᵢ.
    Point(Point),
}

fn in_k_face(p: &[i64], i: usize, high: bool, k: i64) -> bool {
    p[i] == if high { k } else { 0 }
}

fn check_discrete_coverings(pair: &DualPair, ss: &[BTreeSet<Point>]) -> Result<()> {
    let n = pair.n();
    let k = pair.k.size;
    if ss.len() != n + 1 {
        return Err(Error::invalid(format!("expected {} sets", n + 1)));
    }
    for p in pair.k.points() {
        if !ss.iter().any(|s| s.contains(&p)) {
            return Err(Error::pre("cover", format!("{p:?} is in no set")));
        }
        for i in 0..n {
            if in_k_face(&p, i, false, k) && !ss[..=i].iter().any(|s| s.contains(&p)) {
                return Err(Error::pre("(i) A_i in s_1..s_i", format!("{p:?} in A_{} is not covered", i + 1)));
            }
            if in_k_face(&p, i, true, k) && ss[i].contains(&p) {
                return Err(Error::pre("(i) s_i misses B_i", format!("{p:?} in B_{} and s_{}", i + 1, i + 1)));
            }
        }
        for (i, s) in ss.iter().enumerate() {
            for j in 0..i.min(n) {
                if in_k_face(&p, j, false, k) && s.contains(&p) {
                    return Err(Error::pre(
                        "(ii) s_i misses A_j for i > j",
                        format!("{p:?} in A_{} and s_{}", j + 1, i + 1),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn check_separation_weak(pair: &DualPair, ss: &[BTreeSet<Point>]) -> Result<()> {
    let n = pair.n();
    let k = pair.k.size;
    if ss.len() != n {
        return Err(Error::invalid(format!("expected {n} sets")));
    }
    for p in pair.k.points() {
        for i in 0..n {
            if in_k_face(&p, i, false, k) && !ss[..=i].iter().any(|s| s.contains(&p)) {
                return Err(Error::pre("A_i in s_1..s_i", format!("{p:?} in A_{} is not covered", i + 1)));
            }
            if in_k_face(&p, i, true, k) && ss[i].contains(&p) {
                return Err(Error::pre("B_i misses s_i", format!("{p:?} in B_{} and s_{}", i + 1, i + 1)));
            }
        }
    }
    Ok(())
}

fn cube_meets(amb: &Ambient, c: &Cube, s: &BTreeSet<Point>, inside: bool) -> bool {
    amb.vertices(c).iter().any(|v| s.contains(v) == inside)
}

/// K-side sets for the first two modes; for `SeparationLebesgue` the sets
/// are the points v of K with *v in dᵢ (see [`DualPair::unstar_set`]).
pub fn transported_witness(pair: &DualPair, mode: Transport, sets: &[BTreeSet<Point>], verify: bool) -> Result<Witness> {
    for s in sets {
        for p in s {
            pair.k.check_point(p)?;
        }
    }
    let n = pair.n();
    match mode {
        Transport::DiscreteCoverings => {
            check_discrete_coverings(pair, sets)?;
            let es: Vec<CubicalSet> = sets.iter().map(|s| pair.star_set(s)).collect::<Result<_>>()?;
            let w = e_coverings_witness(&pair.q, &es, verify)?;
            let c = pair.cube_around(&w.point)?;
            if !sets.iter().all(|s| cube_meets(&pair.k, &c, s, true)) {
                return Err(Error::internal("transported cube misses a set"));
            }
            Ok(Witness::Cube(c))
        }
        Transport::SeparationWeak => {
            check_separation_weak(pair, sets)?;
            let last: BTreeSet<Point> =
                pair.k.points().into_iter().filter(|p| !sets.iter().any(|s| s.contains(p))).collect();
            let mut ds: Vec<CubicalSet> = sets.iter().map(|s| pair.star_set(s)).collect::<Result<_>>()?;
            ds.push(pair.star_set(&last)?);
            let p = cubes_partitions_witness(&pair.q, &ds, PartitionMode::Standard, verify)?;
            let c = pair.cube_around(&p)?;
            if !sets.iter().all(|s| cube_meets(&pair.k, &c, s, true) && cube_meets(&pair.k, &c, s, false)) {
                return Err(Error::internal("transported cube misses a set or a complement"));
            }
            Ok(Witness::Cube(c))
        }
        Transport::SeparationLebesgue => {
            if sets.len() != n {
                return Err(Error::invalid(format!("expected {n} sets")));
            }
            let k = pair.k.size;
            for p in pair.k.points() {
                for (i, s) in sets.iter().enumerate() {
                    if in_k_face(&p, i, false, k) && !s.contains(&p) {
                        return Err(Error::pre("A_i in d_i", format!("*{p:?} meets A_{} outside d_{}", i + 1, i + 1)));
                    }
                    if in_k_face(&p, i, true, k) && s.contains(&p) {
                        return Err(Error::pre("B_i in d̄_i", format!("*{p:?} meets B_{} inside d_{}", i + 1, i + 1)));
                    }
                }
            }
            let seqs = kuhn_witnesses(&pair.k, sets)?;
            let seq = seqs.first().ok_or_else(|| Error::internal("no separating pivot sequence"))?;
            let p: Point = seq[0].iter().map(|x| x + 1).collect();
            for s in sets {
                let d = pair.star_set(s)?;
                let dbar: CubicalSet = pair.q.cubes(n).into_iter().filter(|c| !d.contains(c)).collect();
                if !set_contains_point(&pair.q, &d, &p) || !set_contains_point(&pair.q, &dbar, &p) {
                    return Err(Error::internal(format!("{p:?} misses some d_i or its complement")));
                }
            }
            Ok(Witness::Point(p))
        }
    }
}
