use std::collections::BTreeSet;

use cubelab_core::duality::DualPair;
use cubelab_core::freudenthal::{canonical_complex, nonbranching_report, sperner_count};
use cubelab_core::gen;
use cubelab_core::hurewicz::{hurewicz_path, intersection_structure, parity_count, BoxTiling, RPoint, TiledSet};
use cubelab_core::kyfan::{all_maps, kyfan_counts, kuhn_via_kyfan, GridMap, B1};
use cubelab_core::lebesgue::{e_coverings_witness, is_essential, CubicalSet, Essential};
use cubelab_core::products::{
    indicator, kuhn_strong_count, kuhn_witnesses, label_classes, products_faces_count, products_induction_counts,
    reduced_labeling,
};
use cubelab_core::tilings::wh_tilings_count;
use cubelab_core::util::permutations;
use cubelab_core::{Ambient, Chain, Cochain, Lcg, Point, SimplicialComplex};
use proptest::prelude::*;

/// Counts root-and-permutation walks through a cube carrying all n+1 labels.
fn brute_strong_count(n: usize, k: i64, cs: &[BTreeSet<Point>]) -> u64 {
    let label = |p: &Point| cs.iter().position(|c| c.contains(p)).unwrap_or(n);
    let mut count = 0;
    let mut roots = vec![vec![]];
    for _ in 0..n {
        roots = roots.into_iter().flat_map(|r: Vec<i64>| (0..k).map(move |x| [r.clone(), vec![x]].concat())).collect();
    }
    for a in &roots {
        for perm in permutations(n) {
            let mut v = a.clone();
            let mut seen = 1u64 << label(&v);
            for &axis in &perm {
                v[axis] += 1;
                seen |= 1 << label(&v);
            }
            if seen == (1 << (n + 1)) - 1 {
                count += 1;
            }
        }
    }
    count
}

fn in_closed_tile(t: &BoxTiling, j: usize, p: &RPoint) -> bool {
    t.tiles[j].contains(p)
}

fn point_in_set(amb: &Ambient, e: &CubicalSet, p: &[i64]) -> bool {
    e.iter().any(|c| (0..amb.dim).all(|i| c.root[i] <= p[i] && p[i] <= c.root[i] + i64::from(c.extends(i))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn induction_parity(n in 1usize..=3, k in 1i64..=2, seed: u64) {
        let amb = Ambient::discrete(n, k);
        let mut rng = Lcg::new(seed);
        let hs: Vec<Cochain> = (0..n).map(|_| gen::chains(amb, 0, &mut rng)).collect();
        let (s, t) = products_induction_counts(&amb, &hs).unwrap();
        prop_assert_eq!(s % 2, t % 2);
    }

    #[test]
    fn face_products_are_odd(n in 1usize..=3, k in 1i64..=2, seed: u64) {
        let amb = Ambient::discrete(n, k);
        let cs = gen::kuhn_sets(&amb, &mut Lcg::new(seed));
        let hs: Vec<Cochain> = cs.iter().map(|c| indicator(amb, c).unwrap()).collect();
        prop_assert_eq!(products_faces_count(&amb, &hs).unwrap() % 2, 1);
        prop_assert_eq!(kuhn_strong_count(&amb, &cs).unwrap() % 2, 1);
    }

    #[test]
    fn strong_count_oracles_agree(n in 1usize..=3, k in 1i64..=2, seed: u64) {
        let amb = Ambient::discrete(n, k);
        let cs = gen::kuhn_sets(&amb, &mut Lcg::new(seed));
        let count = kuhn_strong_count(&amb, &cs).unwrap();
        let classes = label_classes(&reduced_labeling(&amb, &cs), n);
        prop_assert_eq!(count, wh_tilings_count(&amb, &classes).unwrap());
        prop_assert_eq!(count, sperner_count(&amb, &cs).unwrap());
        prop_assert_eq!(count, brute_strong_count(n, k, &cs));
    }

    #[test]
    fn separation_witnesses_separate(n in 1usize..=3, k in 1i64..=2, seed: u64) {
        let amb = Ambient::discrete(n, k);
        let cs = gen::kuhn_sets(&amb, &mut Lcg::new(seed));
        let ws = kuhn_witnesses(&amb, &cs).unwrap();
        prop_assert_eq!(ws.len() % 2, 1);
        for seq in &ws {
            for i in 0..n {
                prop_assert_ne!(cs[i].contains(&seq[i]), cs[i].contains(&seq[i + 1]));
            }
        }
    }

    #[test]
    fn kyfan_cubes_match_kuhn(n in 1usize..=3, k in 1i64..=2, seed: u64) {
        let amb = Ambient::discrete(n, k);
        let mut rng = Lcg::new(seed);
        let cs = gen::threshold_kuhn_sets(&amb, &mut rng);
        prop_assert_eq!(kuhn_via_kyfan(&amb, &cs).unwrap().len() % 2, 1);
        let cs = gen::kuhn_sets(&amb, &mut rng);
        match kuhn_via_kyfan(&amb, &cs) {
            Ok(cubes) => prop_assert_eq!(cubes.len() % 2, 1),
            Err(e) => { let pre = matches!(e, cubelab_core::Error::Precondition { .. }); prop_assert!(pre) }
        }
    }

    #[test]
    fn threshold_maps_have_matching_parities(n in 1usize..=3, k in 1i64..=2, seed: u64) {
        let amb = Ambient::discrete(n, k);
        let phi = gen::threshold_map(amb, &mut Lcg::new(seed));
        let (s, t) = kyfan_counts(&phi, B1).unwrap();
        prop_assert_eq!(s % 2, t % 2);
    }

    #[test]
    fn e_covering_witness_lies_in_every_set(n in 1usize..=3, l in 2i64..=3, seed: u64) {
        let amb = Ambient::solid(n, l);
        let es = gen::e_covering(&amb, &mut Lcg::new(seed));
        let w = e_coverings_witness(&amb, &es, true).unwrap();
        for e in &es {
            prop_assert!(point_in_set(&amb, e, &w.point));
        }
    }

    #[test]
    fn essentiality_definitions_agree(n in 1usize..=3, l in 2i64..=4, seed: u64) {
        let amb = Ambient::solid(n, l);
        let (g, expected) = gen::special_chain(&amb, &mut Lcg::new(seed));
        prop_assert_eq!(is_essential(&g, Essential::Projection), expected);
        prop_assert_eq!(is_essential(&g, Essential::Plane), expected);
    }

    #[test]
    fn hurewicz_parity_and_paths(k in 1i64..=2, refinements in 0usize..6, seed: u64) {
        let (t, es) = gen::tiled_instance(2, k, refinements, &mut Lcg::new(seed));
        let pts = parity_count(&t, &es).unwrap();
        prop_assert_eq!(pts.len() % 2, 1);
        let (e, h, r, f) = intersection_structure(&t, &es).unwrap().euler_counts();
        prop_assert_eq!(e + h + 2 * r, 2 * f);
        let walk = hurewicz_path(&t, &es).unwrap();
        prop_assert!(walk.reached_full);
        let end = walk.end();
        for set in &es {
            prop_assert!(set.iter().any(|&j| in_closed_tile(&t, j, end)));
        }
        prop_assert!(pts.contains(end));
    }

    #[test]
    fn canonical_complex_is_invariant_under_coordinate_permutations(n in 1usize..=3, k in 1i64..=2, seed: u64) {
        let amb = Ambient::discrete(n, k);
        let cx = canonical_complex(&amb).unwrap();
        let perms = permutations(n);
        let perm = &perms[Lcg::new(seed).below(perms.len() as u64) as usize];
        let moved = SimplicialComplex::from_facets(cx.facets().into_iter().map(|s| {
            s.into_iter().map(|v| perm.iter().map(|&i| v[i]).collect::<Point>()).collect::<Vec<_>>()
        }));
        prop_assert_eq!(moved, cx);
    }
}

#[test]
fn basis_instance_has_one_cube() {
    for (n, k) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)] {
        let amb = Ambient::discrete(n, k);
        let cs: Vec<BTreeSet<Point>> = (0..n).map(|i| amb.points().into_iter().filter(|p| p[i] == 0).collect()).collect();
        let hs: Vec<Cochain> = cs.iter().map(|c| indicator(amb, c).unwrap()).collect();
        assert_eq!(products_faces_count(&amb, &hs).unwrap(), 1);
    }
}

/// Every Kuhn family on the grid: cᵢ is fixed on 𝒜ᵢ and ℬᵢ and free elsewhere.
fn all_kuhn_families(amb: &Ambient) -> Vec<Vec<BTreeSet<Point>>> {
    let k = amb.size;
    let mut out = vec![vec![]];
    for i in 0..amb.dim {
        let free: Vec<Point> = amb.points().into_iter().filter(|p| p[i] != 0 && p[i] != k).collect();
        let base: BTreeSet<Point> = amb.points().into_iter().filter(|p| p[i] == 0).collect();
        let mut next = Vec::new();
        for fam in &out {
            for m in 0u32..1 << free.len() {
                let mut c = base.clone();
                c.extend(free.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).map(|(_, p)| p.clone()));
                let mut f: Vec<BTreeSet<Point>> = fam.clone();
                f.push(c);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

#[test]
fn strong_count_exhaustive_on_small_squares() {
    for (k, families) in [(1, 1), (2, 64)] {
        let amb = Ambient::discrete(2, k);
        let all = all_kuhn_families(&amb);
        assert_eq!(all.len(), families);
        for cs in &all {
            let count = kuhn_strong_count(&amb, cs).unwrap();
            assert_eq!(count, brute_strong_count(2, k, cs));
            assert_eq!(count, sperner_count(&amb, cs).unwrap());
            let classes = label_classes(&reduced_labeling(&amb, cs), 2);
            assert_eq!(count, wh_tilings_count(&amb, &classes).unwrap());
        }
    }
}

#[test]
fn kyfan_parity_on_every_adjacency_preserving_square_map() {
    let amb = Ambient::discrete(2, 1);
    let maps: Vec<GridMap> = all_maps(&amb).unwrap().into_iter().filter(|m| m.is_adjacency_preserving()).collect();
    assert!(!maps.is_empty());
    for phi in &maps {
        let (s, t) = kyfan_counts(phi, B1).unwrap();
        assert_eq!(s % 2, t % 2);
    }
}

#[test]
fn adjacency_preserving_maps_give_transversal_dual_chains() {
    for (n, k) in [(2, 1), (2, 2), (3, 1)] {
        let amb = Ambient::discrete(n, k);
        let pair = DualPair::of(&amb).unwrap();
        let mut rng = Lcg::new(3);
        for _ in 0..30 {
            let phi = gen::threshold_map(amb, &mut rng);
            let duals: Vec<Cochain> = (0..n)
                .map(|i| {
                    let f = phi.component(i).coboundary().unwrap();
                    let g: Chain = f.recast();
                    pair.star_chain(&g).unwrap()
                })
                .collect();
            for i in 0..n {
                for j in i + 1..n {
                    assert!(duals[i].common(&duals[j]).unwrap().is_empty());
                }
            }
        }
    }
}

#[test]
fn triangulations_are_pseudomanifolds() {
    for (n, k) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)] {
        let amb = Ambient::discrete(n, k);
        assert!(nonbranching_report(&amb).unwrap().is_clean());
    }
}

#[test]
fn tiled_sets_are_disjoint_partitions() {
    let mut rng = Lcg::new(21);
    for _ in 0..20 {
        let (t, es) = gen::tiled_instance(2, 2, 4, &mut rng);
        let all: TiledSet = es.iter().flatten().copied().collect();
        assert_eq!(all.len(), t.tiles.len());
        assert_eq!(es.iter().map(|e| e.len()).sum::<usize>(), t.tiles.len());
    }
}
