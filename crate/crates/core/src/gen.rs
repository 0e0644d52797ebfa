//! Seeded random instances satisfying each module's preconditions.
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::chains::{Chain, Chains};
use crate::cube::{Ambient, Cube, Point};
use crate::hurewicz::{clipped_lebesgue_tiling, BoxTiling, TiledSet};
use crate::kyfan::GridMap;
use crate::lebesgue::{closure_of, is_special, CubicalSet};
use crate::rng::Lcg;
use crate::tilings::rat;

/// Each cube of the given dimension with probability 1/2.
pub fn chains<R>(amb: Ambient, dim: usize, rng: &mut Lcg) -> Chains<R> {
    let mut out = Chains::zero(amb, dim);
    for c in amb.cubes(dim) {
        if rng.coin() {
            out.toggle(c);
        }
    }
    out
}

/// Kuhn sets: cᵢ ⊇ 𝒜ᵢ, cᵢ ∩ ℬᵢ = ∅, random elsewhere.
pub fn kuhn_sets(amb: &Ambient, rng: &mut Lcg) -> Vec<BTreeSet<Point>> {
    let k = amb.size;
    (0..amb.dim)
        .map(|i| amb.points().into_iter().filter(|p| p[i] == 0 || (p[i] != k && rng.coin())).collect())
        .collect()
}

/// Kuhn sets with each cᵢ = {vᵢ < tᵢ}: the threshold labelings.
pub fn threshold_kuhn_sets(amb: &Ambient, rng: &mut Lcg) -> Vec<BTreeSet<Point>> {
    let k = amb.size;
    (0..amb.dim)
        .map(|i| {
            let t = rng.range(1, k);
            amb.points().into_iter().filter(|p| p[i] < t).collect()
        })
        .collect()
}

/// hᵢ(v) = [vᵢ ≥ tᵢ] with random thresholds and random complements.
pub fn threshold_map(amb: Ambient, rng: &mut Lcg) -> GridMap {
    let ts: Vec<i64> = (0..amb.dim).map(|_| rng.range(0, amb.size + 1)).collect();
    let flips = rng.next_u32() & ((1 << amb.dim) - 1);
    GridMap::threshold(amb, &ts, flips).expect("thresholds match the dimension")
}

/// One point from each antipodal pair of the sphere: ι(c) = S ∖ c.
pub fn antipodal_half(amb: &Ambient, rng: &mut Lcg) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for p in amb.points() {
        let q = amb.antipode_point(&p).expect("symmetric ambient");
        if p < q {
            out.insert(if rng.coin() { p } else { q });
        }
    }
    out
}

/// A random set of n-cubes of the big sphere whose closure misses its
/// antipodal image. Cubes are tried in random order.
pub fn antipodal_free_set(amb: &Ambient, rng: &mut Lcg, tries: usize) -> CubicalSet {
    let cubes = amb.cubes(amb.dim);
    let mut set = CubicalSet::new();
    let mut bar = BTreeSet::new();
    for _ in 0..tries {
        let c = rng.pick(&cubes).clone();
        let cl: BTreeSet<Cube> = amb.closure(&c).into_iter().collect();
        let cl_bar: BTreeSet<Cube> = cl.iter().map(|f| amb.antipode_cube(f).expect("symmetric")).collect();
        let own = closure_of(amb, set.iter());
        if cl.iter().any(|f| bar.contains(f) || cl_bar.contains(f)) || cl_bar.iter().any(|f| own.contains(f)) {
            continue;
        }
        set.insert(c);
        bar.extend(cl_bar);
    }
    set
}

fn first_zero_axis(c: &Cube, n: usize) -> usize {
    (0..n).find(|&i| c.root[i] == 0).unwrap_or(n)
}

/// e₁..e_{n+1} on Q satisfying the cover condition and (i), (ii). Needs l ≥ 2.
pub fn e_covering(amb: &Ambient, rng: &mut Lcg) -> Vec<CubicalSet> {
    let n = amb.dim;
    let l = amb.size;
    let mut es = vec![CubicalSet::new(); n + 1];
    for c in amb.cubes(n) {
        let m0 = first_zero_axis(&c, n);
        let allowed: Vec<usize> = (0..=m0).filter(|&i| i == n || c.root[i] + 1 != l).collect();
        let i = *rng.pick(&allowed);
        es[i].insert(c);
    }
    es
}

/// d₁..d_{n+1} on Q for the standard partition theorem, overlapping at random.
pub fn partition_sets(amb: &Ambient, rng: &mut Lcg) -> Vec<CubicalSet> {
    let n = amb.dim;
    let l = amb.size;
    let mut ds = vec![CubicalSet::new(); n + 1];
    for c in amb.cubes(n) {
        let ok = |i: usize| i == n || c.root[i] + 1 != l;
        let m0 = first_zero_axis(&c, n);
        let first: Vec<usize> = (0..=m0).filter(|&i| ok(i)).collect();
        ds[*rng.pick(&first)].insert(c.clone());
        for (i, d) in ds.iter_mut().enumerate() {
            if ok(i) && rng.chance(1, 4) {
                d.insert(c.clone());
            }
        }
    }
    ds
}

/// d₁..d_{n+1} on Q for the early Hurewicz variant: d_k stays off A_i for i < k.
pub fn early_partition_sets(amb: &Ambient, rng: &mut Lcg) -> Vec<CubicalSet> {
    let n = amb.dim;
    let l = amb.size;
    let mut ds = vec![CubicalSet::new(); n + 1];
    for c in amb.cubes(n) {
        let m0 = first_zero_axis(&c, n);
        let allowed: Vec<usize> = (0..=m0).filter(|&i| i == n || c.root[i] + 1 != l).collect();
        ds[*rng.pick(&allowed)].insert(c.clone());
        for &i in &allowed {
            if rng.chance(1, 4) {
                ds[i].insert(c.clone());
            }
        }
    }
    ds
}

/// A special m-chain: a sum of level slabs plus the boundary of an interior
/// chain. It is essential exactly when the number of distinct slabs is odd.
pub fn special_chain(amb: &Ambient, rng: &mut Lcg) -> (Chain, bool) {
    let n = amb.dim;
    let l = amb.size;
    loop {
        let m = rng.below(n as u64 + 1) as usize;
        let front = n - m;
        let dir = ((1u32 << m) - 1) << front;
        let mut g = Chain::zero(*amb, m);
        let mut levels = BTreeSet::new();
        for _ in 0..rng.below(3) {
            let t: Vec<i64> = (0..front).map(|_| rng.range(1, l - 1)).collect();
            if !levels.insert(t.clone()) {
                levels.remove(&t);
            }
        }
        if m == n && levels.is_empty() && rng.coin() {
            levels.insert(Vec::new());
        }
        for t in &levels {
            for c in amb.cubes(m) {
                if c.dir == dir && c.root[..front] == t[..] {
                    g.toggle(c);
                }
            }
        }
        if m < n {
            let mut beta = Chain::zero(*amb, m + 1);
            for c in amb.cubes(m + 1) {
                let inner = c.root.iter().enumerate().all(|(i, &x)| x >= 1 && x + i64::from(c.extends(i)) < l);
                if inner && rng.chance(1, 3) {
                    beta.toggle(c);
                }
            }
            g = g.add(&beta.boundary().expect("positive dimension")).expect("same space");
        }
        if is_special(&g) {
            return (g, levels.len() % 2 == 1);
        }
    }
}

fn touches(t: &BoxTiling, j: usize, axis: usize, high: bool) -> bool {
    let b = &t.tiles[j];
    if high {
        b.hi[axis] == t.domain.hi[axis]
    } else {
        b.lo[axis] == t.domain.lo[axis]
    }
}

/// A clipped Lebesgue tiling, randomly refined, with tiles split into
/// e₁..e_{n+1} so that eᵢ misses Bᵢ (i ≤ n) and eᵢ misses A_{i−1} (i ≥ 2).
pub fn tiled_instance(n: usize, k: i64, refinements: usize, rng: &mut Lcg) -> (BoxTiling, Vec<TiledSet>) {
    loop {
        let (mut t, _) = clipped_lebesgue_tiling(n, k).expect("valid sizes");
        for _ in 0..refinements {
            let j = rng.below(t.tiles.len() as u64) as usize;
            let axis = rng.below(n as u64) as usize;
            let b = &t.tiles[j];
            let q = rng.range(1, 3);
            let level = b.lo[axis] + (b.hi[axis] - b.lo[axis]) * rat(q, 4);
            if let Ok(r) = t.refine(j, axis, level) {
                t = r;
            }
        }
        let mut es = vec![TiledSet::new(); n + 1];
        let mut ok = true;
        for j in 0..t.tiles.len() {
            let allowed: Vec<usize> = (0..=n)
                .filter(|&i| (i == n || !touches(&t, j, i, true)) && (i == 0 || !touches(&t, j, i - 1, false)))
                .collect();
            if allowed.is_empty() {
                ok = false;
                break;
            }
            es[*rng.pick(&allowed)].insert(j);
        }
        if ok {
            return (t, es);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lebesgue::{check_e_coverings, check_partitions, PartitionMode};
    use crate::products::check_kuhn;

    #[test]
    fn generators_meet_preconditions() {
        let mut rng = Lcg::new(11);
        for _ in 0..20 {
            let k = Ambient::discrete(2, 2);
            check_kuhn(&k, &kuhn_sets(&k, &mut rng)).unwrap();
            check_kuhn(&k, &threshold_kuhn_sets(&k, &mut rng)).unwrap();
            assert!(threshold_map(k, &mut rng).is_adjacency_preserving());
            let q = Ambient::solid(2, 3);
            check_e_coverings(&q, &e_covering(&q, &mut rng)).unwrap();
            check_partitions(&q, &partition_sets(&q, &mut rng), PartitionMode::Standard).unwrap();
            check_partitions(&q, &early_partition_sets(&q, &mut rng), PartitionMode::EarlyHurewicz).unwrap();
            let (t, _) = tiled_instance(2, 2, 3, &mut rng);
            t.validate().unwrap();
        }
    }

    #[test]
    fn antipodal_free_sets_are_free() {
        let b = Ambient::big_sphere(2, 1);
        let mut rng = Lcg::new(5);
        let e = antipodal_free_set(&b, &mut rng, 40);
        assert!(!e.is_empty());
        let cl = closure_of(&b, e.iter());
        assert!(cl.iter().all(|f| !cl.contains(&b.antipode_cube(f).unwrap())));
    }
}
