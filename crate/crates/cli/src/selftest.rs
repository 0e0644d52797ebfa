//! Property suites run by `selftest`. Case i of a suite uses the seed
//! `seed + i`, so results do not depend on the thread count.
use std::collections::BTreeSet;

use cubelab_core::chains::pairing;
use cubelab_core::duality::{transported_witness, DualPair, Transport, Witness};
use cubelab_core::freudenthal::{canonical_complex, nonbranching_report, sperner_count};
use cubelab_core::gen;
use cubelab_core::hurewicz::{hurewicz_path, intersection_structure, parity_count};
use cubelab_core::kyfan::{kuhn_via_kyfan, kyfan_counts, B1};
use cubelab_core::lebesgue::{
    cubes_partitions_witness, e_coverings_witness, is_essential, set_contains_point, Essential, PartitionMode,
};
use cubelab_core::products::{
    cup, indicator, kuhn_strong_count, kuhn_witnesses, label_classes, leibniz_check, products_faces_count,
    products_induction_counts, reduced_labeling,
};
use cubelab_core::sphere::{big_cube_contains, ls_descent, ls_witness, power_of_generator_pairs};
use cubelab_core::tilings::{default_params, geometric_nerve, nerve, scaled_params, wh_tilings_count, window_report};
use cubelab_core::{Ambient, Chain, Cochain, Kind, Lcg, Point, Result};
use rayon::prelude::*;

use crate::commands::Options;
use crate::io::{Failure, Outcome, Record};

type Check = fn(&mut Lcg, usize, i64) -> Result<bool>;

const SUITES: [(&str, Check, usize, i64); 12] = [
    ("algebra", algebra, 4, 2),
    ("products", products, 4, 2),
    ("induction", induction, 3, 2),
    ("kuhn", kuhn, 3, 2),
    ("oracles", oracles, 3, 2),
    ("tilings", tilings, 3, 2),
    ("hurewicz", hurewicz, 2, 2),
    ("lebesgue", lebesgue, 3, 3),
    ("sphere", sphere, 2, 2),
    ("kyfan", kyfan, 3, 2),
    ("freudenthal", freudenthal, 3, 2),
    ("duality", duality, 3, 2),
];

/// Draws n in 1..=min(n, cap_n) and k in 1..=min(k, cap_k).
fn sizes(rng: &mut Lcg, n: usize, k: i64, cap_n: usize, cap_k: i64) -> (usize, i64) {
    let n = rng.range(1, n.clamp(1, cap_n) as i64) as usize;
    let k = rng.range(1, k.clamp(1, cap_k));
    (n, k)
}

fn run_suite(check: Check, cap_n: usize, cap_k: i64, opts: &Options) -> usize {
    (0..opts.cases)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = Lcg::new(opts.seed.wrapping_add(i as u64));
            let (n, k) = sizes(&mut rng, opts.n, opts.k, cap_n, cap_k);
            !matches!(check(&mut rng, n, k), Ok(true))
        })
        .count()
}

pub fn run(rec: &mut Record, opts: &Options) -> Outcome<()> {
    let results: Vec<(&str, usize)> =
        SUITES.par_iter().map(|&(name, check, cn, ck)| (name, run_suite(check, cn, ck, opts))).collect();
    let mut total = 0;
    for (name, failures) in &results {
        rec.count(name, serde_json::json!({ "cases": opts.cases, "failures": failures }));
        total += failures;
    }
    rec.count("failures", total);
    if total > 0 {
        rec.verdict = "violation".to_string();
    }
    Ok(())
}

fn any_ambient(rng: &mut Lcg, n: usize, k: i64) -> Ambient {
    let kinds = [Kind::SolidQ, Kind::DiscreteK, Kind::SymmetricC, Kind::SphereS, Kind::BigSphere];
    let kind = *rng.pick(&kinds);
    let n = if kind == Kind::SolidQ || kind == Kind::DiscreteK { n } else { n.min(3) };
    Ambient::new(kind, n, k).expect("valid sizes")
}

fn algebra(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = any_ambient(rng, n, k);
    let top = amb.top_dim();
    for m in 1..=top {
        let g: Chain = gen::chains(amb, m, rng);
        let f: Cochain = gen::chains(amb, m - 1, rng);
        if m >= 2 && !g.boundary()?.boundary()?.is_empty() {
            return Ok(false);
        }
        if m < top && !f.coboundary()?.coboundary()?.is_empty() {
            return Ok(false);
        }
        if pairing(&g.boundary()?, &f)? != pairing(&g, &f.coboundary()?)? {
            return Ok(false);
        }
    }
    let q = Ambient::solid(n, k);
    let m = rng.range(1, n as i64) as usize;
    let g: Chain = gen::chains(q, m, rng);
    let kept = rng.next_u32() & ((1 << n) - 1);
    if g.project(kept)?.boundary()? != g.boundary()?.project(kept)? {
        return Ok(false);
    }
    let u = n - rng.range(1, m as i64) as usize;
    if m > n - u {
        let levels: Vec<i64> = (u..n).map(|_| 2 * rng.range(0, k - 1) + 1).collect();
        if g.intersect_plane(&levels, u)?.boundary()? != g.boundary()?.intersect_plane(&levels, u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Associativity and the Leibniz rule for random cochains.
pub fn product_laws(n: usize, k: i64, cases: usize, seed: u64) -> (usize, usize) {
    let failures = (0..cases)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = Lcg::new(seed.wrapping_add(i as u64));
            let (n, k) = sizes(&mut rng, n, k, 4, 2);
            !matches!(products(&mut rng, n, k), Ok(true))
        })
        .count();
    (cases, failures)
}

fn products(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = Ambient::discrete(n, k);
    let p = rng.below(n as u64 + 1) as usize;
    let q = rng.below((n - p) as u64 + 1) as usize;
    let r = rng.below((n - p - q) as u64 + 1) as usize;
    let f: Cochain = gen::chains(amb, p, rng);
    let g: Cochain = gen::chains(amb, q, rng);
    let h: Cochain = gen::chains(amb, r, rng);
    let assoc = cup(&cup(&f, &g)?, &h)? == cup(&f, &cup(&g, &h)?)?;
    let leibniz = p + q >= n || leibniz_check(&f, &g)?;
    Ok(assoc && leibniz)
}

fn induction(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = Ambient::discrete(n, k);
    let hs: Vec<Cochain> = (0..n).map(|_| gen::chains(amb, 0, rng)).collect();
    let (s, t) = products_induction_counts(&amb, &hs)?;
    Ok(s % 2 == t % 2)
}

fn kuhn(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = Ambient::discrete(n, k);
    let cs = gen::kuhn_sets(&amb, rng);
    let hs: Vec<Cochain> = cs.iter().map(|c| indicator(amb, c)).collect::<Result<_>>()?;
    let ws = kuhn_witnesses(&amb, &cs)?;
    let valid = ws.iter().all(|s| (0..n).all(|i| cs[i].contains(&s[i]) != cs[i].contains(&s[i + 1])));
    Ok(products_faces_count(&amb, &hs)? % 2 == 1 && kuhn_strong_count(&amb, &cs)? % 2 == 1 && ws.len() % 2 == 1 && valid)
}

fn oracles(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = Ambient::discrete(n, k);
    let cs = gen::kuhn_sets(&amb, rng);
    let count = kuhn_strong_count(&amb, &cs)?;
    let classes = label_classes(&reduced_labeling(&amb, &cs), n);
    Ok(count == wh_tilings_count(&amb, &classes)? && count == sperner_count(&amb, &cs)?)
}

fn tilings(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let lo: Vec<i64> = (0..n).map(|_| rng.range(-2, 2)).collect();
    let hi: Vec<i64> = lo.iter().map(|x| x + k).collect();
    let r = window_report(&lo, &hi, &default_params(n))?;
    let same = geometric_nerve(&lo, &hi, &scaled_params(n, 2))? == nerve(&lo, &hi);
    Ok(r.is_clean(n) && same)
}

fn hurewicz(rng: &mut Lcg, _n: usize, k: i64) -> Result<bool> {
    let refinements = rng.below(6) as usize;
    let (t, es) = gen::tiled_instance(2, k, refinements, rng);
    let pts = parity_count(&t, &es)?;
    let (e, h, r, f) = intersection_structure(&t, &es)?.euler_counts();
    let w = hurewicz_path(&t, &es)?;
    let end_full = es.iter().all(|s| s.iter().any(|&j| t.tiles[j].contains(w.end())));
    Ok(pts.len() % 2 == 1 && e + h + 2 * r == 2 * f && w.reached_full && end_full)
}

fn lebesgue(rng: &mut Lcg, n: usize, l: i64) -> Result<bool> {
    let l = l.max(2);
    let amb = Ambient::solid(n, l);
    let es = gen::e_covering(&amb, rng);
    let w = e_coverings_witness(&amb, &es, true)?;
    let mut inside = es.iter().all(|e| set_contains_point(&amb, e, &w.point));
    for (ds, mode) in [
        (gen::partition_sets(&amb, rng), PartitionMode::Standard),
        (gen::early_partition_sets(&amb, rng), PartitionMode::EarlyHurewicz),
    ] {
        let p = cubes_partitions_witness(&amb, &ds, mode, true)?;
        inside &= ds.iter().all(|d| set_contains_point(&amb, d, &p));
    }
    let (g, expected) = gen::special_chain(&amb, rng);
    let agree = is_essential(&g, Essential::Projection) == expected && is_essential(&g, Essential::Plane) == expected;
    Ok(inside && agree)
}

fn sphere(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = Ambient::sphere(n, k);
    let cs: Vec<BTreeSet<Point>> = (0..n).map(|_| gen::antipodal_half(&amb, rng)).collect();
    let hs: Vec<Cochain> = cs.iter().map(|c| indicator(amb, c)).collect::<Result<_>>()?;
    let odd = power_of_generator_pairs(&amb, &hs)?.len() % 2 == 1;
    let rho = ls_witness(&amb, &cs)?;
    let vs = amb.vertices(&rho);
    let ls = cs.iter().all(|c| vs.iter().any(|v| c.contains(v)) && vs.iter().any(|v| !c.contains(v)));
    let big = Ambient::big_sphere(n, 1);
    let es: Vec<_> = (0..n).map(|_| gen::antipodal_free_set(&big, rng, 6)).collect();
    let d = ls_descent(&big, &es)?;
    let mut outside = true;
    for e in &es {
        for c in e {
            outside &= !big_cube_contains(c, &d.point) && !big_cube_contains(&big.antipode_cube(c)?, &d.point);
        }
    }
    Ok(odd && ls && outside)
}

fn kyfan(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = Ambient::discrete(n, k);
    let phi = gen::threshold_map(amb, rng);
    let (s, t) = kyfan_counts(&phi, B1)?;
    let cs = gen::threshold_kuhn_sets(&amb, rng);
    Ok(s % 2 == t % 2 && kuhn_via_kyfan(&amb, &cs)?.len() % 2 == 1)
}

fn freudenthal(_rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = Ambient::discrete(n, k);
    Ok(nonbranching_report(&amb)?.is_clean() && canonical_complex(&amb)? == nerve(&vec![0; n], &vec![k; n]))
}

fn duality(rng: &mut Lcg, n: usize, k: i64) -> Result<bool> {
    let amb = Ambient::discrete(n, k);
    let pair = DualPair::of(&amb)?;
    let m = rng.range(1, n as i64) as usize;
    let g: Chain = gen::chains(amb, m, rng);
    let boundary = pair.dual_boundary_check(&g)?;
    let sets: Vec<BTreeSet<Point>> =
        (0..rng.range(1, 3)).map(|_| amb.points().into_iter().filter(|_| rng.chance(1, 3)).collect()).collect();
    let (a, b) = pair.cubes_intersections_bridge(&sets)?;
    let cs = gen::kuhn_sets(&amb, rng);
    let classes = label_classes(&reduced_labeling(&amb, &cs), n);
    let cover = matches!(transported_witness(&pair, Transport::DiscreteCoverings, &classes, true)?, Witness::Cube(_));
    let weak = matches!(transported_witness(&pair, Transport::SeparationWeak, &cs, true)?, Witness::Cube(_));
    let leb = matches!(transported_witness(&pair, Transport::SeparationLebesgue, &cs, true)?, Witness::Point(_));
    Ok(boundary && a == b && cover && weak && leb)
}

/// Face-duality pairs (exhaustive), dual-boundary chains and bridge families
/// (random) checked on K(n, k).
pub fn duality_counts(n: usize, k: i64, cases: usize, seed: u64) -> Outcome<(usize, usize, usize)> {
    let amb = Ambient::new(Kind::DiscreteK, n, k).map_err(crate::io::at("--n/--k"))?;
    let pair = DualPair::of(&amb).map_err(crate::io::at("--n/--k"))?;
    let fail = |what: &str| Failure::Internal(format!("{what} duality fails"));
    let cubes: Vec<_> = (0..=n).flat_map(|m| amb.cubes(m)).collect();
    let mut faces = 0;
    for s in &cubes {
        for t in &cubes {
            let (a, b) = pair.face_duality_check(s, t).map_err(|e| Failure::Internal(e.to_string()))?;
            if a != b {
                return Err(fail("face"));
            }
            faces += 1;
        }
    }
    let mut rng = Lcg::new(seed);
    let mut boundaries = 0;
    let mut bridges = 0;
    for _ in 0..cases {
        for m in 1..=n {
            let g: Chain = gen::chains(amb, m, &mut rng);
            if !pair.dual_boundary_check(&g).map_err(|e| Failure::Internal(e.to_string()))? {
                return Err(fail("boundary"));
            }
            boundaries += 1;
        }
        let sets: Vec<BTreeSet<Point>> =
            (0..rng.range(1, 3)).map(|_| amb.points().into_iter().filter(|_| rng.chance(1, 3)).collect()).collect();
        let (a, b) = pair.cubes_intersections_bridge(&sets).map_err(|e| Failure::Internal(e.to_string()))?;
        if a != b {
            return Err(fail("bridge"));
        }
        bridges += 1;
    }
    Ok((faces, boundaries, bridges))
}
