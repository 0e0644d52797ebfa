//! Chains in the solid cube Q: proper, special and essential chains, the
//! Lebesgue construction, fusion of coverings and the covering theorems.
//!
//! A cubical set is a set of n-cubes. Point-set statements about cubical
//! sets are decided cell by cell: an m-cube lies in a union of n-cubes iff it
//! is a face of one of them.
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::chains::Chain;
use crate::cube::{Ambient, Cube, Kind, Point};
use crate::error::{Error, Result};

pub type CubicalSet = BTreeSet<Cube>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Essential {
    Projection,
    /// Section by the plane with every level at 1/2.
    Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionMode {
    /// d₁ ∪ … ∪ dᵢ ⊇ Aᵢ and dᵢ ∩ Bᵢ = ∅.
    Standard,
    /// d_k ∩ Aᵢ = ∅ for i < k and d_k ∩ B_k = ∅.
    EarlyHurewicz,
}

/// All cells of the closed cubes in `cubes`.
pub fn closure_of(amb: &Ambient, cubes: impl IntoIterator<Item = impl core::borrow::Borrow<Cube>>) -> BTreeSet<Cube> {
    let mut out = BTreeSet::new();
    for c in cubes {
        for f in amb.closure(c.borrow()) {
            out.insert(f);
        }
    }
    out
}

pub fn set_contains_point(amb: &Ambient, e: &CubicalSet, p: &[i64]) -> bool {
    e.iter().any(|c| amb.cube_contains(c, p))
}

fn need_solid(amb: &Ambient) -> Result<()> {
    if amb.kind != Kind::SolidQ {
        return Err(Error::invalid("expected the solid cube Q"));
    }
    Ok(())
}

pub fn check_cubical_set(amb: &Ambient, e: &CubicalSet) -> Result<()> {
    for c in e {
        amb.check_cube(c)?;
        if c.dim() != amb.dim {
            return Err(Error::invalid("cubical sets consist of n-cubes"));
        }
    }
    Ok(())
}

/// ‖∂γ‖ = ‖γ‖ ∩ bd Q.
pub fn is_proper(g: &Chain) -> bool {
    let amb = g.ambient();
    let on_bd: BTreeSet<Cube> = closure_of(&amb, g.iter()).into_iter().filter(|c| amb.in_boundary(c)).collect();
    if g.dim() == 0 {
        return on_bd.is_empty();
    }
    let d = g.boundary().expect("positive dimension");
    closure_of(&amb, d.iter()) == on_bd
}

/// Proper, and ‖γ‖ misses Aᵢ ∪ Bᵢ for the first n−m axes.
pub fn is_special(g: &Chain) -> bool {
    let amb = g.ambient();
    let n = amb.dim;
    let m = g.dim();
    let l = amb.size;
    let clear = g.iter().all(|c| {
        (0..n.saturating_sub(m)).all(|i| {
            let top = c.root[i] + if c.extends(i) { 1 } else { 0 };
            c.root[i] != 0 && top != l
        })
    });
    clear && is_proper(g)
}

fn last_axes(n: usize, m: usize) -> u32 {
    ((1u32 << m) - 1) << (n - m)
}

/// [P_m]: every m-cube of the face x₁ = … = x_{n−m} = 0.
pub fn face_chain(amb: Ambient, m: usize) -> Chain {
    let dir = last_axes(amb.dim, m);
    Chain::full(amb, m).filter(|c| c.dir == dir && c.root[..amb.dim - m].iter().all(|&x| x == 0))
}

pub fn is_essential(g: &Chain, method: Essential) -> bool {
    if !is_special(g) {
        return false;
    }
    let amb = g.ambient();
    let (n, m) = (amb.dim, g.dim());
    match method {
        Essential::Projection => g.project(last_axes(n, m)).map(|p| p == face_chain(amb, m)).unwrap_or(false),
        Essential::Plane => g
            .intersect_plane(&vec![1; m], n - m)
            .map(|s| s.len() % 2 == 1)
            .unwrap_or(false),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LebesgueStep {
    pub gamma_e: Chain,
    pub gamma_rest: Chain,
    pub delta: Chain,
    pub delta_e: Chain,
}

pub fn lebesgue_step(g: &Chain, e: &CubicalSet) -> Result<LebesgueStep> {
    let amb = g.ambient();
    need_solid(&amb)?;
    check_cubical_set(&amb, e)?;
    let cl = closure_of(&amb, e.iter());
    let gamma_e = g.filter(|c| cl.contains(c));
    let gamma_rest = g.filter(|c| !cl.contains(c));
    let be = gamma_e.boundary()?;
    let br = gamma_rest.boundary()?;
    let delta = be.common(&br)?;
    let delta_e = be.add(&delta)?;
    Ok(LebesgueStep { gamma_e, gamma_rest, delta, delta_e })
}

fn covers(amb: &Ambient, sets: &[CubicalSet]) -> Result<()> {
    for c in amb.cubes(amb.dim) {
        if !sets.iter().any(|e| e.contains(&c)) {
            return Err(Error::pre("cover", format!("n-cube {:?} is not covered", c.root)));
        }
    }
    Ok(())
}

/// Conditions (i) and (ii) for e₁..e_{n+1}, plus the covering condition.
pub fn check_e_coverings(amb: &Ambient, es: &[CubicalSet]) -> Result<()> {
    need_solid(amb)?;
    let n = amb.dim;
    let l = amb.size;
    if es.len() != n + 1 {
        return Err(Error::invalid(format!("expected {} sets, got {}", n + 1, es.len())));
    }
    for e in es {
        check_cubical_set(amb, e)?;
    }
    covers(amb, es)?;
    for i in 0..n {
        for c in amb.cubes(n) {
            if c.root[i] == 0 && !es[..=i].iter().any(|e| e.contains(&c)) {
                return Err(Error::pre(
                    "(i) A_i in e_1..e_i",
                    format!("A_{} not covered by e_1..e_{} at {:?}", i + 1, i + 1, c.root),
                ));
            }
        }
        if let Some(c) = es[i].iter().find(|c| c.root[i] + 1 == l) {
            return Err(Error::pre("(i) e_i misses B_i", format!("e_{} meets B_{} at {:?}", i + 1, i + 1, c.root)));
        }
    }
    for (i, e) in es.iter().enumerate() {
        for j in 0..i.min(n) {
            if let Some(c) = e.iter().find(|c| c.root[j] == 0) {
                return Err(Error::pre(
                    "(ii) e_i misses A_j for i > j",
                    format!("e_{} meets A_{} at {:?}", i + 1, j + 1, c.root),
                ));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringWitness {
    pub point: Point,
    /// γ₀ = ⟦Q⟧, γ₁, …, γₙ.
    pub chains: Vec<Chain>,
}

/// A point of e₁ ∩ … ∩ e_{n+1}, found by the recursive construction.
/// With `verify`, every γ_m is checked to be essential by both methods.
pub fn e_coverings_witness(amb: &Ambient, es: &[CubicalSet], verify: bool) -> Result<CoveringWitness> {
    check_e_coverings(amb, es)?;
    let n = amb.dim;
    let mut g = Chain::full(*amb, n);
    let mut chains = vec![g.clone()];
    for e in es.iter().take(n) {
        g = lebesgue_step(&g, e)?.delta;
        if verify && !(is_essential(&g, Essential::Projection) && is_essential(&g, Essential::Plane)) {
            return Err(Error::internal(format!("γ_{} is not essential", chains.len())));
        }
        chains.push(g.clone());
    }
    let point = g
        .iter()
        .next()
        .map(|c| c.root.clone())
        .ok_or_else(|| Error::internal("final chain is empty"))?;
    if !es.iter().all(|e| set_contains_point(amb, e, &point)) {
        return Err(Error::internal(format!("witness {point:?} misses a set")));
    }
    Ok(CoveringWitness { point, chains })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fusion {
    pub es: Vec<CubicalSet>,
    /// `assignment[j]` is the 0-based index of the eᵢ that absorbed d_j.
    pub assignment: Vec<usize>,
}

/// Lebesgue fusion: eᵢ collects the unused d_j meeting Aᵢ; e_{n+1} the rest.
pub fn fuse(amb: &Ambient, ds: &[CubicalSet]) -> Result<Fusion> {
    need_solid(amb)?;
    let n = amb.dim;
    let l = amb.size;
    for d in ds {
        check_cubical_set(amb, d)?;
    }
    covers(amb, ds)?;
    for (j, d) in ds.iter().enumerate() {
        for i in 0..n {
            if d.iter().any(|c| c.root[i] == 0) && d.iter().any(|c| c.root[i] + 1 == l) {
                return Err(Error::pre(
                    "no set meets two opposite faces",
                    format!("d_{} meets A_{} and B_{}", j + 1, i + 1, i + 1),
                ));
            }
        }
    }
    let mut assignment = vec![n; ds.len()];
    let mut used = vec![false; ds.len()];
    for i in 0..n {
        for (j, d) in ds.iter().enumerate() {
            if !used[j] && d.iter().any(|c| c.root[i] == 0) {
                used[j] = true;
                assignment[j] = i;
            }
        }
    }
    let mut es = vec![CubicalSet::new(); n + 1];
    for (j, d) in ds.iter().enumerate() {
        es[assignment[j]].extend(d.iter().cloned());
    }
    Ok(Fusion { es, assignment })
}

/// n+1 of the dᵢ with a common point: the point and the 0-based indices.
pub fn collecting_sets_witness(amb: &Ambient, ds: &[CubicalSet], verify: bool) -> Result<(Point, Vec<usize>)> {
    let fu = fuse(amb, ds)?;
    let w = e_coverings_witness(amb, &fu.es, verify)?;
    let mut picks = Vec::new();
    for i in 0..=amb.dim {
        let j = (0..ds.len())
            .find(|&j| fu.assignment[j] == i && set_contains_point(amb, &ds[j], &w.point))
            .ok_or_else(|| Error::internal("no set of the group holds the witness"))?;
        picks.push(j);
    }
    Ok((w.point, picks))
}

/// eᵢ = n-cubes of dᵢ lying in no earlier d_j.
pub fn disjointify(ds: &[CubicalSet]) -> Vec<CubicalSet> {
    let mut seen = CubicalSet::new();
    let mut out = Vec::new();
    for d in ds {
        out.push(d.difference(&seen).cloned().collect());
        seen.extend(d.iter().cloned());
    }
    out
}

pub fn check_partitions(amb: &Ambient, ds: &[CubicalSet], mode: PartitionMode) -> Result<()> {
    need_solid(amb)?;
    let n = amb.dim;
    let l = amb.size;
    if ds.len() != n + 1 {
        return Err(Error::invalid(format!("expected {} sets, got {}", n + 1, ds.len())));
    }
    for d in ds {
        check_cubical_set(amb, d)?;
    }
    covers(amb, ds)?;
    for i in 0..n {
        if let Some(c) = ds[i].iter().find(|c| c.root[i] + 1 == l) {
            return Err(Error::pre("d_i misses B_i", format!("d_{} meets B_{} at {:?}", i + 1, i + 1, c.root)));
        }
    }
    match mode {
        PartitionMode::Standard => {
            for i in 0..n {
                for c in amb.cubes(n) {
                    if c.root[i] == 0 && !ds[..=i].iter().any(|d| d.contains(&c)) {
                        return Err(Error::pre(
                            "A_i in d_1..d_i",
                            format!("A_{} not covered by d_1..d_{} at {:?}", i + 1, i + 1, c.root),
                        ));
                    }
                }
            }
        }
        PartitionMode::EarlyHurewicz => {
            for (k, d) in ds.iter().enumerate() {
                for i in 0..k.min(n) {
                    if let Some(c) = d.iter().find(|c| c.root[i] == 0) {
                        return Err(Error::pre(
                            "d_k misses A_i for i < k",
                            format!("d_{} meets A_{} at {:?}", k + 1, i + 1, c.root),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// A point of d₁ ∩ … ∩ d_{n+1}.
pub fn cubes_partitions_witness(amb: &Ambient, ds: &[CubicalSet], mode: PartitionMode, verify: bool) -> Result<Point> {
    check_partitions(amb, ds, mode)?;
    let es = disjointify(ds);
    let w = e_coverings_witness(amb, &es, verify)?;
    Ok(w.point)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(a: i64) -> Cube {
        Cube::new(vec![a], 1)
    }

    fn set(cs: impl IntoIterator<Item = Cube>) -> CubicalSet {
        cs.into_iter().collect()
    }

    #[test]
    fn full_chain_is_essential() {
        let q = Ambient::solid(2, 3);
        let full = Chain::full(q, 2);
        assert!(is_proper(&full));
        assert!(is_special(&full));
        assert!(is_essential(&full, Essential::Projection));
        assert!(is_essential(&full, Essential::Plane));
    }

    #[test]
    fn interior_edge_is_not_proper() {
        let q = Ambient::solid(2, 3);
        let g = Chain::from_cubes(q, 1, [Cube::new(vec![1, 1], 0b01)]).unwrap();
        assert!(!is_proper(&g));
    }

    #[test]
    fn zero_chain_parity() {
        let q = Ambient::solid(2, 3);
        let one = Chain::from_cubes(q, 0, [Cube::vertex(vec![1, 2])]).unwrap();
        let two = Chain::from_cubes(q, 0, [Cube::vertex(vec![1, 2]), Cube::vertex(vec![2, 1])]).unwrap();
        for m in [Essential::Projection, Essential::Plane] {
            assert!(is_essential(&one, m));
            assert!(!is_essential(&two, m));
        }
    }

    #[test]
    fn step_examples() {
        let q = Ambient::solid(1, 2);
        let full = Chain::full(q, 1);
        let s = lebesgue_step(&full, &set([edge(0), edge(1)])).unwrap();
        assert!(s.gamma_rest.is_empty() && s.delta.is_empty());
        let s = lebesgue_step(&full, &CubicalSet::new()).unwrap();
        assert!(s.gamma_e.is_empty() && s.delta.is_empty());
        let s = lebesgue_step(&full, &set([edge(0)])).unwrap();
        assert_eq!(s.delta, Chain::from_cubes(q, 0, [Cube::vertex(vec![1])]).unwrap());
        assert_eq!(s.delta_e, Chain::from_cubes(q, 0, [Cube::vertex(vec![0])]).unwrap());
    }

    #[test]
    fn one_dimensional_witnesses() {
        let q = Ambient::solid(1, 2);
        let es = [set([edge(0)]), set([edge(1)])];
        assert_eq!(e_coverings_witness(&q, &es, true).unwrap().point, vec![1]);
        let f = fuse(&q, &es).unwrap();
        assert_eq!(f.es, es.to_vec());
        assert_eq!(collecting_sets_witness(&q, &es, true).unwrap(), (vec![1], vec![0, 1]));
        assert_eq!(cubes_partitions_witness(&q, &es, PartitionMode::Standard, true).unwrap(), vec![1]);
    }

    #[test]
    fn violated_condition_is_named() {
        let q = Ambient::solid(1, 2);
        let es = [set([edge(0), edge(1)]), CubicalSet::new()];
        match e_coverings_witness(&q, &es, true) {
            Err(Error::Precondition { clause, .. }) => assert!(clause.contains("B_i")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn slab_partition_in_the_square() {
        let q = Ambient::solid(2, 2);
        let all = q.cubes(2);
        let d1: CubicalSet = all.iter().filter(|c| c.root[0] == 0).cloned().collect();
        let d2: CubicalSet = all.iter().filter(|c| c.root[1] == 0).cloned().collect();
        let d3: CubicalSet = all.iter().filter(|c| !d1.contains(c) && !d2.contains(c)).cloned().collect();
        let ds = [d1, d2, d3];
        let p = cubes_partitions_witness(&q, &ds, PartitionMode::Standard, true).unwrap();
        assert!(ds.iter().all(|d| set_contains_point(&q, d, &p)));
    }
}
