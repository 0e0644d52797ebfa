//! One function per command. Without an input instance each command draws
//! one from `--seed` with the generators of `cubelab_core::gen`.
use std::collections::BTreeSet;

use cubelab_core::cube::{is_pivot_sequence, is_pivot_subsequence};
use cubelab_core::duality::{transported_witness, DualPair, Transport, Witness};
use cubelab_core::freudenthal::{
    canonical_complex, freudenthal_by_shuffles, nonbranching_report, sperner_count, top_simplices,
};
use cubelab_core::gen;
use cubelab_core::hurewicz::{hurewicz_path, intersection_structure, parity_count, BoxTiling, TiledSet};
use cubelab_core::kyfan::{all_maps, bijection_iff_product, kyfan_counts, GridMap, B1};
use cubelab_core::lebesgue::{
    check_e_coverings, collecting_sets_witness, cubes_partitions_witness, e_coverings_witness, fuse,
    set_contains_point, CubicalSet, PartitionMode,
};
use cubelab_core::products::{
    check_face_conditions, indicator, kuhn_strong_sequences, kuhn_witnesses, products_faces_count,
    products_induction_counts, reduced_labeling,
};
use cubelab_core::sphere::{big_cube_contains, hemisphere, ls_descent, ls_witness, power_of_generator_pairs};
use cubelab_core::tilings::{default_params, geometric_nerve, nerve, scaled_params, window_report, TilingParams};
use cubelab_core::{Ambient, Cochain, Cube, Kind, Lcg, Point, SimplicialComplex};

use crate::io::{
    at, cube_sets_spec, cube_spec, cubical_sets, fmt_rational, labeling_table, parse_rational, point_sets,
    rationals, sets_from_table, table_from_sets, table_of, tiling, tiling_payload, AmbientSpec, Failure,
    InstanceFile, Outcome, Payload, Record, SCHEMA_VERSION,
};
use crate::selftest;

pub const COMMANDS: [&str; 16] = [
    "kuhn-check",
    "kuhn-strong-count",
    "kyfan-count",
    "kyfan-equivalence",
    "products-verify",
    "lebesgue-witness",
    "fuse",
    "tiling-nerve",
    "tiling-check",
    "hurewicz-path",
    "hurewicz-parity",
    "sphere-ls",
    "sphere-power",
    "freudenthal",
    "duality-check",
    "selftest",
];

#[derive(Clone, Debug)]
pub struct Options {
    pub n: usize,
    pub k: i64,
    pub seed: u64,
    pub cases: usize,
    pub mode: Option<String>,
    /// Skip the optional internal re-derivations; witnesses are still checked.
    pub fast: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { n: 2, k: 2, seed: 1, cases: 100, mode: None, fast: false }
    }
}

pub fn run(command: &str, input: Option<InstanceFile>, opts: &Options) -> Outcome<Record> {
    let mut rec = Record::new(command);
    match command {
        "kuhn-check" => kuhn_check(&mut rec, input, opts, false)?,
        "kuhn-strong-count" => kuhn_check(&mut rec, input, opts, true)?,
        "kyfan-count" => kyfan_count(&mut rec, input, opts)?,
        "kyfan-equivalence" => kyfan_equivalence(&mut rec, input, opts)?,
        "products-verify" => products_verify(&mut rec, input, opts)?,
        "lebesgue-witness" => lebesgue_witness(&mut rec, input, opts)?,
        "fuse" => fuse_cmd(&mut rec, input, opts)?,
        "tiling-nerve" => tiling_nerve(&mut rec, input, opts)?,
        "tiling-check" => tiling_check(&mut rec, input, opts)?,
        "hurewicz-path" => hurewicz(&mut rec, input, opts, true)?,
        "hurewicz-parity" => hurewicz(&mut rec, input, opts, false)?,
        "sphere-ls" => sphere_ls(&mut rec, input, opts)?,
        "sphere-power" => sphere_power(&mut rec, input, opts)?,
        "freudenthal" => freudenthal(&mut rec, input, opts)?,
        "duality-check" => duality(&mut rec, input, opts)?,
        "selftest" => selftest::run(&mut rec, opts)?,
        other => return Err(Failure::malformed("command", format!("unknown command {other:?}"))),
    }
    Ok(rec)
}

fn instance(amb: &Ambient, payload: Payload, seed: Option<u64>) -> InstanceFile {
    InstanceFile { version: SCHEMA_VERSION, ambient: AmbientSpec::of(amb), payload, seed }
}

fn need_kind(amb: &Ambient, kinds: &[Kind]) -> Outcome<()> {
    if kinds.contains(&amb.kind) {
        Ok(())
    } else {
        let names: Vec<&str> = kinds.iter().map(|k| crate::io::kind_name(*k)).collect();
        Err(Failure::malformed("ambient.kind", format!("expected one of {names:?}")))
    }
}

fn wrong_payload(p: &Payload, want: &str) -> Failure {
    Failure::malformed("payload.type", format!("expected {want}, got {}", p.name()))
}

fn mode<'a>(opts: &'a Options, default: &'a str) -> &'a str {
    opts.mode.as_deref().unwrap_or(default)
}

fn bad_mode(m: &str, allowed: &[&str]) -> Failure {
    Failure::malformed("--mode", format!("unknown mode {m:?}; expected one of {allowed:?}"))
}

fn internal(msg: impl Into<String>) -> Failure {
    Failure::Internal(msg.into())
}

/// Point sets from a `labeling` (cᵢ = {Lᵢ = 0}) or `sets` payload.
fn family(amb: &Ambient, p: &Payload) -> Outcome<Vec<BTreeSet<Point>>> {
    match p {
        Payload::Labeling { table } => Ok(sets_from_table(amb, &labeling_table(amb, table)?)),
        Payload::Sets { sets } => point_sets(amb, sets),
        other => Err(wrong_payload(other, "labeling or sets")),
    }
}

fn grid_map(amb: &Ambient, p: &Payload) -> Outcome<GridMap> {
    match p {
        Payload::Labeling { table } => GridMap::new(*amb, labeling_table(amb, table)?).map_err(at("payload.table")),
        other => Err(wrong_payload(other, "labeling")),
    }
}

fn discrete(opts: &Options) -> Outcome<Ambient> {
    Ambient::new(Kind::DiscreteK, opts.n, opts.k).map_err(at("--n/--k"))
}

fn kuhn_check(rec: &mut Record, input: Option<InstanceFile>, opts: &Options, strong: bool) -> Outcome<()> {
    let inst = match input {
        Some(i) => i,
        None => {
            let amb = discrete(opts)?;
            let mut rng = Lcg::new(opts.seed);
            let cs = match mode(opts, "random") {
                "random" => gen::kuhn_sets(&amb, &mut rng),
                "threshold" => gen::threshold_kuhn_sets(&amb, &mut rng),
                m => return Err(bad_mode(m, &["random", "threshold"])),
            };
            let table = table_of(&table_from_sets(&amb, &cs), amb.dim);
            instance(&amb, Payload::Labeling { table }, Some(opts.seed))
        }
    };
    let amb = inst.ambient.to_ambient()?;
    need_kind(&amb, &[Kind::DiscreteK])?;
    let cs = family(&amb, &inst.payload)?;
    let n = amb.dim;
    if strong {
        let seqs = kuhn_strong_sequences(&amb, &cs).map_err(at("payload"))?;
        let r = reduced_labeling(&amb, &cs);
        for s in &seqs {
            let seen: BTreeSet<usize> = s.iter().map(|v| r[v]).collect();
            if !is_pivot_sequence(s, n) || seen.len() != n + 1 {
                return Err(internal(format!("{s:?} is not fully labelled")));
            }
            rec.witness(s);
        }
        rec.count("count", seqs.len()).count("odd", seqs.len() % 2 == 1);
    } else {
        let seqs = kuhn_witnesses(&amb, &cs).map_err(at("payload"))?;
        for s in &seqs {
            if !is_pivot_sequence(s, n) || (0..n).any(|i| cs[i].contains(&s[i]) == cs[i].contains(&s[i + 1])) {
                return Err(internal(format!("{s:?} does not separate")));
            }
            rec.witness(s);
        }
        rec.count("witnesses", seqs.len()).count("odd", seqs.len() % 2 == 1);
    }
    rec.instance = Some(inst);
    Ok(())
}

fn kyfan_count(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    let inst = match input {
        Some(i) => i,
        None => {
            let amb = discrete(opts)?;
            let phi = gen::threshold_map(amb, &mut Lcg::new(opts.seed));
            instance(&amb, Payload::Labeling { table: table_of(phi.table(), amb.dim) }, Some(opts.seed))
        }
    };
    let amb = inst.ambient.to_ambient()?;
    need_kind(&amb, &[Kind::DiscreteK])?;
    let phi = grid_map(&amb, &inst.payload)?;
    let (s, t) = kyfan_counts(&phi, B1).map_err(at("payload"))?;
    let onto: Vec<Cube> = amb.cubes(amb.dim).into_iter().filter(|c| phi.maps_onto(c, |_| true)).collect();
    if onto.len() as u64 != s || s % 2 != t % 2 {
        return Err(internal("Ky Fan counts do not re-verify"));
    }
    for c in &onto {
        rec.witness(cube_spec(c));
    }
    rec.count("s", s).count("t", t).count("parity_match", true);
    rec.instance = Some(inst);
    Ok(())
}

fn kyfan_equivalence(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    let maps: Vec<GridMap> = match &input {
        Some(inst) => {
            let amb = inst.ambient.to_ambient()?;
            need_kind(&amb, &[Kind::DiscreteK])?;
            vec![grid_map(&amb, &inst.payload)?]
        }
        None => {
            let amb = Ambient::new(Kind::DiscreteK, opts.n, 1).map_err(at("--n"))?;
            if opts.n <= 2 {
                all_maps(&amb).map_err(at("--n"))?.into_iter().filter(|m| m.is_adjacency_preserving()).collect()
            } else {
                let mut rng = Lcg::new(opts.seed);
                (0..opts.cases).map(|_| gen::threshold_map(amb, &mut rng)).collect()
            }
        }
    };
    let (mut cubes, mut bijective, mut agree, mut skipped) = (0u64, 0u64, 0u64, 0u64);
    for phi in &maps {
        let amb = phi.ambient();
        for sigma in amb.cubes(amb.dim) {
            match bijection_iff_product(phi, &sigma) {
                Ok((bij, prod)) => {
                    cubes += 1;
                    bijective += u64::from(bij);
                    agree += u64::from(bij == prod);
                }
                Err(cubelab_core::Error::Precondition { .. }) => skipped += 1,
                Err(e) => return Err(at("payload")(e)),
            }
        }
    }
    if agree != cubes {
        return Err(internal("bijection and product disagree"));
    }
    rec.count("maps", maps.len())
        .count("cubes", cubes)
        .count("bijective", bijective)
        .count("agree", agree)
        .count("skipped_cubes", skipped);
    rec.instance = input;
    Ok(())
}

fn products_verify(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    if mode(opts, "instance") == "laws" {
        let (cases, failures) = selftest::product_laws(opts.n, opts.k, opts.cases, opts.seed);
        rec.count("cases", cases).count("failures", failures);
        if failures > 0 {
            return Err(internal(format!("{failures} product-law failures")));
        }
        return Ok(());
    }
    let inst = match input {
        Some(i) => i,
        None => {
            let amb = discrete(opts)?;
            let mut rng = Lcg::new(opts.seed);
            let sets: Vec<Vec<Point>> = (0..amb.dim)
                .map(|_| amb.points().into_iter().filter(|_| rng.coin()).collect())
                .collect();
            instance(&amb, Payload::Sets { sets }, Some(opts.seed))
        }
    };
    let amb = inst.ambient.to_ambient()?;
    need_kind(&amb, &[Kind::DiscreteK])?;
    let hs: Vec<Cochain> = match &inst.payload {
        Payload::Sets { sets } => point_sets(&amb, sets)?,
        Payload::Labeling { table } => {
            let t = labeling_table(&amb, table)?;
            (0..amb.dim).map(|i| t.iter().filter(|(_, &m)| m >> i & 1 == 1).map(|(p, _)| p.clone()).collect()).collect()
        }
        other => return Err(wrong_payload(other, "sets or labeling")),
    }
    .iter()
    .map(|s| indicator(amb, s).map_err(at("payload")))
    .collect::<Outcome<_>>()?;
    if hs.len() != amb.dim {
        return Err(Failure::malformed("payload.sets", format!("expected {} sets", amb.dim)));
    }
    let (s, t) = products_induction_counts(&amb, &hs).map_err(at("payload"))?;
    if s % 2 != t % 2 {
        return Err(internal(format!("s = {s}, t = {t}")));
    }
    rec.count("s", s).count("t", t).count("parity_match", true);
    let faces = check_face_conditions(&amb, &hs).is_ok();
    rec.count("face_conditions", faces);
    if faces {
        let c = products_faces_count(&amb, &hs).map_err(at("payload"))?;
        if c % 2 != 1 {
            return Err(internal("face product count is even"));
        }
        rec.count("faces_count", c);
    }
    rec.instance = Some(inst);
    Ok(())
}

fn solid(opts: &Options) -> Outcome<Ambient> {
    Ambient::new(Kind::SolidQ, opts.n, opts.k).map_err(at("--n/--k"))
}

fn cube_instance(inst: &InstanceFile, kinds: &[Kind]) -> Outcome<(Ambient, Vec<CubicalSet>)> {
    let amb = inst.ambient.to_ambient()?;
    need_kind(&amb, kinds)?;
    match &inst.payload {
        Payload::Cubes { sets } => Ok((amb, cubical_sets(&amb, sets)?)),
        other => Err(wrong_payload(other, "cubes")),
    }
}

fn lebesgue_witness(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    let m = mode(opts, "coverings").to_string();
    let allowed = ["coverings", "partitions", "early", "collecting"];
    if !allowed.contains(&m.as_str()) {
        return Err(bad_mode(&m, &allowed));
    }
    let inst = match input {
        Some(i) => i,
        None => {
            let amb = solid(opts)?;
            let mut rng = Lcg::new(opts.seed);
            let es = match m.as_str() {
                "coverings" => gen::e_covering(&amb, &mut rng),
                "early" => gen::early_partition_sets(&amb, &mut rng),
                "collecting" => singleton_sets(&amb, &mut rng),
                _ => gen::partition_sets(&amb, &mut rng),
            };
            instance(&amb, Payload::Cubes { sets: cube_sets_spec(&es) }, Some(opts.seed))
        }
    };
    let (amb, ds) = cube_instance(&inst, &[Kind::SolidQ])?;
    let verify = !opts.fast;
    let (point, picks) = match m.as_str() {
        "coverings" => {
            let w = e_coverings_witness(&amb, &ds, verify).map_err(at("payload"))?;
            rec.count("chain_sizes", w.chains.iter().map(|g| g.len()).collect::<Vec<_>>());
            (w.point, (0..ds.len()).collect())
        }
        "partitions" | "early" => {
            let pm = if m == "early" { PartitionMode::EarlyHurewicz } else { PartitionMode::Standard };
            let p = cubes_partitions_witness(&amb, &ds, pm, verify).map_err(at("payload"))?;
            (p, (0..ds.len()).collect())
        }
        _ => collecting_sets_witness(&amb, &ds, verify).map_err(at("payload"))?,
    };
    for &j in &picks {
        if !set_contains_point(&amb, &ds[j], &point) {
            return Err(internal(format!("{point:?} is not in set {j}")));
        }
    }
    rec.count("sets", picks.clone());
    rec.witness(&point);
    rec.instance = Some(inst);
    Ok(())
}

/// Every n-cube as its own set, in shuffled order.
fn singleton_sets(amb: &Ambient, rng: &mut Lcg) -> Vec<CubicalSet> {
    let mut cubes = amb.cubes(amb.dim);
    rng.shuffle(&mut cubes);
    cubes.into_iter().map(|c| [c].into_iter().collect()).collect()
}

fn fuse_cmd(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    let inst = match input {
        Some(i) => i,
        None => {
            let amb = solid(opts)?;
            let es = singleton_sets(&amb, &mut Lcg::new(opts.seed));
            instance(&amb, Payload::Cubes { sets: cube_sets_spec(&es) }, Some(opts.seed))
        }
    };
    let (amb, ds) = cube_instance(&inst, &[Kind::SolidQ])?;
    let fu = fuse(&amb, &ds).map_err(at("payload"))?;
    check_e_coverings(&amb, &fu.es).map_err(|e| internal(format!("fused sets fail the covering conditions: {e}")))?;
    rec.count("assignment", &fu.assignment).count("sizes", fu.es.iter().map(|e| e.len()).collect::<Vec<_>>());
    rec.witness(cube_sets_spec(&fu.es));
    rec.instance = Some(inst);
    Ok(())
}

/// One simplex per line, vertices as comma tuples joined by `;`, sorted.
pub fn complex_text(cx: &SimplicialComplex) -> String {
    let mut lines: Vec<String> = cx
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            let mut vs: Vec<&Point> = s.iter().collect();
            vs.sort();
            vs.iter().map(|v| crate::io::point_key(v)).collect::<Vec<_>>().join(";")
        })
        .collect();
    lines.sort();
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

fn window(input: &Option<InstanceFile>, opts: &Options) -> Outcome<(TilingParams, Vec<i64>, Vec<i64>)> {
    match input {
        None => {
            if opts.n == 0 {
                return Err(Failure::malformed("--n", "n must be positive"));
            }
            Ok((default_params(opts.n), vec![0; opts.n], vec![opts.k; opts.n]))
        }
        Some(inst) => match &inst.payload {
            Payload::Params { eps, lo, hi } => {
                let n = inst.ambient.n;
                if lo.len() != n || hi.len() != n || lo.iter().zip(hi).any(|(a, b)| a > b) {
                    return Err(Failure::malformed("payload.lo", format!("expected a window of {n} coordinates")));
                }
                if eps.len() + 1 != n {
                    return Err(Failure::malformed("payload.eps", format!("expected {} parameters", n - 1)));
                }
                let e = eps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_rational(s, &format!("payload.eps[{i}]")))
                    .collect::<Outcome<Vec<_>>>()?;
                let p = TilingParams::new(e).map_err(at("payload.eps"))?;
                Ok((p, lo.clone(), hi.clone()))
            }
            other => Err(wrong_payload(other, "params")),
        },
    }
}

fn tiling_nerve(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    let (p, lo, hi) = window(&input, opts)?;
    let comb = nerve(&lo, &hi);
    let geo = geometric_nerve(&lo, &hi, &p).map_err(at("payload"))?;
    if comb != geo {
        return Err(internal("geometric nerve differs from the pivot complex"));
    }
    let cx = match mode(opts, "combinatorial") {
        "combinatorial" | "geometric" => comb,
        m => return Err(bad_mode(m, &["combinatorial", "geometric"])),
    };
    rec.count("simplices", cx.len()).count("dim", cx.dim()).count("eps", rationals(&p.eps));
    rec.text = Some(complex_text(&cx));
    rec.instance = input;
    Ok(())
}

fn tiling_check(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    let (p, lo, hi) = window(&input, opts)?;
    let n = lo.len();
    let r = window_report(&lo, &hi, &p).map_err(at("payload"))?;
    let other = if p == default_params(n) { scaled_params(n, 1) } else { default_params(n) };
    let same = geometric_nerve(&lo, &hi, &p).map_err(at("payload"))? == geometric_nerve(&lo, &hi, &other).map_err(at("payload"))?;
    rec.count("tiles", r.tiles)
        .count("overlapping_pairs", r.overlapping_pairs)
        .count("order", r.order)
        .count("intersecting_sets", r.intersecting_sets)
        .count("mismatches", r.mismatches)
        .count("missing", r.missing)
        .count("nerve_independent", same)
        .count("eps", rationals(&p.eps));
    if !r.is_clean(n) || !same {
        rec.verdict = "violation".to_string();
    }
    rec.instance = input;
    Ok(())
}

fn tiling_instance(inst: &InstanceFile) -> Outcome<(BoxTiling, Vec<TiledSet>)> {
    let amb = inst.ambient.to_ambient()?;
    need_kind(&amb, &[Kind::SolidQ])?;
    match &inst.payload {
        Payload::Tiling { domain, tiles, sets } => tiling(amb.dim, domain, tiles, sets),
        other => Err(wrong_payload(other, "tiling")),
    }
}

fn hurewicz(rec: &mut Record, input: Option<InstanceFile>, opts: &Options, path: bool) -> Outcome<()> {
    let inst = match input {
        Some(i) => i,
        None => {
            if opts.n == 0 || opts.k < 1 {
                return Err(Failure::malformed("--n/--k", "need n ≥ 1 and k ≥ 1"));
            }
            let (t, es) = gen::tiled_instance(opts.n, opts.k, 4, &mut Lcg::new(opts.seed));
            instance(&Ambient::solid(opts.n, opts.k), tiling_payload(&t, &es), Some(opts.seed))
        }
    };
    let (t, es) = tiling_instance(&inst)?;
    t.validate().map_err(at("payload"))?;
    let full = parity_count(&t, &es).map_err(at("payload"))?;
    if full.len() % 2 != 1 {
        return Err(internal("even number of full points"));
    }
    let in_all = |q: &[cubelab_core::Rational]| es.iter().all(|e| e.iter().any(|&j| t.tiles[j].contains(q)));
    if path {
        let w = hurewicz_path(&t, &es).map_err(at("payload"))?;
        if !w.reached_full || !in_all(w.end()) {
            return Err(internal("walk does not end at a full point"));
        }
        rec.count("steps", w.segments.len()).count("end", rationals(w.end()));
        for q in &w.points {
            rec.witness(rationals(q));
        }
    } else {
        let (e, h, r, f) = intersection_structure(&t, &es).map_err(at("payload"))?.euler_counts();
        if e + h + 2 * r != 2 * f {
            return Err(internal("Euler identity fails"));
        }
        rec.count("full", e).count("boundary", h).count("interior", r).count("segments", f);
        for q in &full {
            if !in_all(q) {
                return Err(internal("listed point misses a set"));
            }
            rec.witness(rationals(q));
        }
    }
    rec.instance = Some(inst);
    Ok(())
}

fn sphere_ls(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    let inst = match input {
        Some(i) => i,
        None => {
            let mut rng = Lcg::new(opts.seed);
            match mode(opts, "witness") {
                "witness" => {
                    let amb = Ambient::new(Kind::SphereS, opts.n, opts.k).map_err(at("--n/--k"))?;
                    let sets = (0..amb.dim).map(|_| gen::antipodal_half(&amb, &mut rng).into_iter().collect()).collect();
                    instance(&amb, Payload::Sets { sets }, Some(opts.seed))
                }
                "descent" => {
                    let amb = Ambient::new(Kind::BigSphere, opts.n, 1).map_err(at("--n"))?;
                    let es: Vec<CubicalSet> = (0..amb.dim).map(|_| gen::antipodal_free_set(&amb, &mut rng, 6)).collect();
                    instance(&amb, Payload::Cubes { sets: cube_sets_spec(&es) }, Some(opts.seed))
                }
                m => return Err(bad_mode(m, &["witness", "descent"])),
            }
        }
    };
    let amb = inst.ambient.to_ambient()?;
    match amb.kind {
        Kind::SphereS => {
            let cs = match &inst.payload {
                Payload::Sets { sets } => point_sets(&amb, sets)?,
                other => return Err(wrong_payload(other, "sets")),
            };
            let rho = ls_witness(&amb, &cs).map_err(at("payload"))?;
            let vs = amb.vertices(&rho);
            if !cs.iter().all(|c| vs.iter().any(|v| c.contains(v)) && vs.iter().any(|v| !c.contains(v))) {
                return Err(internal("witness cube misses a side"));
            }
            rec.witness(cube_spec(&rho));
        }
        Kind::BigSphere => {
            let (_, es) = cube_instance(&inst, &[Kind::BigSphere])?;
            let d = ls_descent(&amb, &es).map_err(at("payload"))?;
            for e in &es {
                for c in e {
                    let bar = amb.antipode_cube(c).map_err(at("payload"))?;
                    if big_cube_contains(c, &d.point) || big_cube_contains(&bar, &d.point) {
                        return Err(internal("descent point lies in a set"));
                    }
                }
            }
            rec.count("equator_pairs", &d.equator_pairs).count("sizes", &d.sizes);
            rec.witness(d.point.iter().map(fmt_rational).collect::<Vec<_>>());
        }
        _ => return Err(Failure::malformed("ambient.kind", "expected S or bigS")),
    }
    rec.instance = Some(inst);
    Ok(())
}

fn sphere_power(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    let inst = match input {
        Some(i) => i,
        None => {
            let amb = Ambient::new(Kind::SphereS, opts.n, opts.k).map_err(at("--n/--k"))?;
            let sets: Vec<Vec<Point>> = match mode(opts, "random") {
                "random" => {
                    let mut rng = Lcg::new(opts.seed);
                    (0..amb.dim).map(|_| gen::antipodal_half(&amb, &mut rng).into_iter().collect()).collect()
                }
                "canonical" => (0..amb.dim)
                    .map(|i| hemisphere(amb, i).map(|h| h.into_iter().collect()))
                    .collect::<cubelab_core::Result<_>>()
                    .map_err(at("--n"))?,
                m => return Err(bad_mode(m, &["random", "canonical"])),
            };
            instance(&amb, Payload::Sets { sets }, Some(opts.seed))
        }
    };
    let amb = inst.ambient.to_ambient()?;
    need_kind(&amb, &[Kind::SphereS])?;
    let cs = match &inst.payload {
        Payload::Sets { sets } => point_sets(&amb, sets)?,
        other => return Err(wrong_payload(other, "sets")),
    };
    let hs: Vec<Cochain> = cs.iter().map(|c| indicator(amb, c).map_err(at("payload"))).collect::<Outcome<_>>()?;
    let pairs = power_of_generator_pairs(&amb, &hs).map_err(at("payload"))?;
    if pairs.len() % 2 != 1 {
        return Err(internal("even number of antipodal pairs"));
    }
    for (a, b) in &pairs {
        if amb.antipode_cube(a).map_err(at("payload"))? != *b {
            return Err(internal("listed cubes are not antipodal"));
        }
        rec.witness([cube_spec(a), cube_spec(b)]);
    }
    rec.count("pairs", pairs.len());
    rec.instance = Some(inst);
    Ok(())
}

fn freudenthal(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    if let Some(inst) = input {
        let amb = inst.ambient.to_ambient()?;
        need_kind(&amb, &[Kind::DiscreteK])?;
        let cs = family(&amb, &inst.payload)?;
        let count = sperner_count(&amb, &cs).map_err(at("payload"))?;
        if count % 2 != 1 {
            return Err(internal("even Sperner count"));
        }
        rec.count("fully_labelled", count);
        rec.instance = Some(inst);
        return Ok(());
    }
    let amb = discrete(opts)?;
    let tops = top_simplices(&amb).map_err(at("--n/--k"))?;
    let expect = (amb.size as u64).pow(amb.dim as u32) * cubelab_core::util::factorial(amb.dim as u64);
    if tops.len() as u64 != expect || !tops.iter().all(|s| is_pivot_subsequence(s)) {
        return Err(internal("top simplices miscounted"));
    }
    let report = nonbranching_report(&amb).map_err(at("--n/--k"))?;
    let cx = canonical_complex(&amb).map_err(at("--n/--k"))?;
    let equals_nerve = cx == nerve(&vec![0; amb.dim], &vec![amb.size; amb.dim]);
    let two = freudenthal_by_shuffles(amb.dim).map_err(at("--n"))?;
    rec.count("top_simplices", tops.len())
        .count("interior_ridges", report.interior)
        .count("boundary_ridges", report.boundary)
        .count("violations", report.violations.len())
        .count("equals_nerve", equals_nerve)
        .count("doubled_simplex_pieces", two.len());
    if !report.is_clean() || !equals_nerve || two.len() != 1 << amb.dim {
        rec.verdict = "violation".to_string();
    }
    if mode(opts, "summary") == "complex" {
        rec.text = Some(complex_text(&cx));
    }
    Ok(())
}

fn duality(rec: &mut Record, input: Option<InstanceFile>, opts: &Options) -> Outcome<()> {
    if let Some(inst) = input {
        let amb = inst.ambient.to_ambient()?;
        need_kind(&amb, &[Kind::DiscreteK])?;
        let pair = DualPair::of(&amb).map_err(at("ambient"))?;
        let sets = family(&amb, &inst.payload)?;
        let t = match mode(opts, "separation-weak") {
            "discrete-coverings" => Transport::DiscreteCoverings,
            "separation-weak" => Transport::SeparationWeak,
            "separation-lebesgue" => Transport::SeparationLebesgue,
            m => return Err(bad_mode(m, &["discrete-coverings", "separation-weak", "separation-lebesgue"])),
        };
        match transported_witness(&pair, t, &sets, !opts.fast).map_err(at("payload"))? {
            Witness::Cube(c) => rec.witness(cube_spec(&c)),
            Witness::Point(p) => rec.witness(p),
        };
        rec.instance = Some(inst);
        return Ok(());
    }
    let (faces, boundaries, bridges) = selftest::duality_counts(opts.n, opts.k, opts.cases, opts.seed)?;
    rec.count("face_pairs", faces).count("boundary_chains", boundaries).count("bridge_families", bridges);
    Ok(())
}
