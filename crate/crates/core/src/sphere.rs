//! The discrete sphere S = bd C with its antipodal map, l1 products, and the
//! Lusternik–Schnirelmann statements. The descent on the big sphere lives at
//! the bottom of the file.
//!
//! S and the big sphere are separate ambients. They are dual to each other
//! (vertices of one sit at the centres of top cells of the other) but no code
//! relies on that.
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::chains::{Chain, Chains, Cochain};
use crate::cube::{Ambient, Cube, Kind, Norm, Point};
use crate::error::{Error, Result};
use crate::lebesgue::{check_cubical_set, closure_of, CubicalSet};
use crate::products::{indicator, multi_cup_norm};
use crate::tilings::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// ι*f = f.
    Symmetric,
    /// ι*f = 1 − f.
    Asymmetric,
    None,
}

/// Which cube of each antipodal pair a transversal keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transversal {
    LexMin,
    LexMax,
}

fn need_sphere(amb: &Ambient) -> Result<()> {
    if amb.kind != Kind::SphereS {
        return Err(Error::invalid("expected the discrete sphere S"));
    }
    Ok(())
}

/// ι* on cochains, ι_* on chains: both move the support through ι.
pub fn iota<R>(f: &Chains<R>) -> Result<Chains<R>> {
    let amb = f.ambient();
    let mut out = Chains::zero(amb, f.dim());
    for c in f.iter() {
        out.toggle(amb.antipode_cube(c)?);
    }
    Ok(out)
}

pub fn classify<R>(f: &Chains<R>) -> Result<Symmetry> {
    let amb = f.ambient();
    let mut sym = true;
    let mut asym = true;
    for c in amb.cubes(f.dim()) {
        let a = f.contains(&c);
        let b = f.contains(&amb.antipode_cube(&c)?);
        sym &= a == b;
        asym &= a != b;
    }
    Ok(match (sym, asym) {
        (true, _) => Symmetry::Symmetric,
        (_, true) => Symmetry::Asymmetric,
        _ => Symmetry::None,
    })
}

/// Indicator of the points whose first nonzero coordinate is negative.
pub fn h_indicator(amb: Ambient) -> Result<Cochain> {
    need_sphere(&amb)?;
    let set: BTreeSet<Point> = amb
        .points()
        .into_iter()
        .filter(|p| p.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0))
        .collect();
    indicator(amb, &set)
}

/// Like [`h_indicator`], reading the coordinates cyclically from `axis`.
pub fn hemisphere(amb: Ambient, axis: usize) -> Result<BTreeSet<Point>> {
    need_sphere(&amb)?;
    let d = amb.coords();
    if axis >= d {
        return Err(Error::invalid(format!("axis {axis} out of range")));
    }
    Ok(amb
        .points()
        .into_iter()
        .filter(|p| (0..d).map(|t| p[(axis + t) % d]).find(|&x| x != 0).is_some_and(|x| x < 0))
        .collect())
}

/// f₁·…·f_r with l1 roots and peaks.
pub fn sphere_multi_cup(amb: Ambient, fs: &[&Cochain]) -> Result<Cochain> {
    need_sphere(&amb)?;
    multi_cup_norm(amb, fs, Norm::L1)
}

/// Σ f(σ) over one cube from each antipodal pair of n-cubes.
pub fn sym_sum(f: &Cochain) -> Result<bool> {
    sym_sum_over(f, Transversal::LexMin)
}

pub fn sym_sum_over(f: &Cochain, t: Transversal) -> Result<bool> {
    let amb = f.ambient();
    need_sphere(&amb)?;
    if f.dim() != amb.dim {
        return Err(Error::invalid("sym_sum needs an n-cochain"));
    }
    if classify(f)? != Symmetry::Symmetric {
        return Err(Error::pre("f symmetric", "ι*f differs from f"));
    }
    let mut v = false;
    for c in f.iter() {
        let a = amb.antipode_cube(c)?;
        let keep = match t {
            Transversal::LexMin => *c < a,
            Transversal::LexMax => *c > a,
        };
        v ^= keep;
    }
    Ok(v)
}

fn need_asymmetric_points(amb: &Ambient, hs: &[Cochain]) -> Result<()> {
    need_sphere(amb)?;
    if hs.len() != amb.dim {
        return Err(Error::invalid(format!("expected {} cochains", amb.dim)));
    }
    for (i, h) in hs.iter().enumerate() {
        if h.ambient() != *amb || h.dim() != 0 {
            return Err(Error::invalid("expected 0-cochains on S"));
        }
        if classify(h)? != Symmetry::Asymmetric {
            return Err(Error::pre("h_i asymmetric", format!("h_{} is not asymmetric", i + 1)));
        }
    }
    Ok(())
}

/// Antipodal pairs (ρ, ιρ), ρ < ιρ, on which ∂*h₁·…·∂*hₙ is 1.
pub fn power_of_generator_pairs(amb: &Ambient, hs: &[Cochain]) -> Result<Vec<(Cube, Cube)>> {
    need_asymmetric_points(amb, hs)?;
    let fs: Vec<Cochain> = hs.iter().map(|h| h.coboundary()).collect::<Result<_>>()?;
    let refs: Vec<&Cochain> = fs.iter().collect();
    let prod = sphere_multi_cup(*amb, &refs)?;
    let mut out = Vec::new();
    for c in prod.iter() {
        let a = amb.antipode_cube(c)?;
        if !prod.contains(&a) {
            return Err(Error::internal("product of symmetric cochains is not symmetric"));
        }
        if *c < a {
            out.push((c.clone(), a));
        }
    }
    Ok(out)
}

/// An n-cube of S meeting cᵢ and S ∖ cᵢ for every i.
pub fn ls_witness(amb: &Ambient, cs: &[BTreeSet<Point>]) -> Result<Cube> {
    need_sphere(amb)?;
    if cs.len() != amb.dim {
        return Err(Error::invalid(format!("expected {} sets", amb.dim)));
    }
    for (i, c) in cs.iter().enumerate() {
        for p in c {
            amb.check_point(p)?;
        }
        for p in amb.points() {
            if c.contains(&p) == c.contains(&amb.antipode_point(&p)?) {
                return Err(Error::pre(
                    "ι(c_i) = S ∖ c_i",
                    format!("{p:?} and its antipode are on the same side of c_{}", i + 1),
                ));
            }
        }
    }
    let hs: Vec<Cochain> = cs.iter().map(|c| indicator(*amb, c)).collect::<Result<_>>()?;
    let pairs = power_of_generator_pairs(amb, &hs)?;
    let (rho, _) = pairs.into_iter().next().ok_or_else(|| Error::internal("no antipodal pair carries the product"))?;
    let vs = amb.vertices(&rho);
    for c in cs {
        let inside = vs.iter().filter(|v| c.contains(*v)).count();
        if inside == 0 || inside == vs.len() {
            return Err(Error::internal("witness cube misses a side"));
        }
    }
    Ok(rho)
}

/// δ with γ = δ + ι_*δ: the lex-smaller cube of each pair.
pub fn symmetric_split(g: &Chain) -> Result<Chain> {
    let amb = g.ambient();
    let mut d = Chain::zero(amb, g.dim());
    for c in g.iter() {
        let a = amb.antipode_cube(c)?;
        if a == *c {
            return Err(Error::pre("γ symmetric", format!("{c:?} is its own antipode")));
        }
        if !g.contains(&a) {
            return Err(Error::pre("γ symmetric", format!("{c:?} is in γ, its antipode is not")));
        }
        if *c < a {
            d.toggle(c.clone());
        }
    }
    Ok(d)
}

/// Result of the descent on the big sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    /// The point in the original coordinates.
    pub point: Vec<Rational>,
    /// The same point on the 3× dilated sphere, doubled coordinates.
    pub scaled: Point,
    /// Number of antipodal pairs in γ_m ∩ S^m, m = 0..=n. All odd.
    pub equator_pairs: Vec<usize>,
    /// Cube counts of γ_0..γ_n.
    pub sizes: Vec<usize>,
}

fn need_big_sphere(amb: &Ambient) -> Result<()> {
    if amb.kind != Kind::BigSphere {
        return Err(Error::invalid("expected the big sphere"));
    }
    Ok(())
}

/// μ: multiply by 3. Each original n-cube becomes 3ⁿ cubes.
fn dilate(big: &Ambient, e: &CubicalSet) -> CubicalSet {
    let mut out = CubicalSet::new();
    for c in e {
        let axes = c.axes();
        for t in 0..3usize.pow(axes.len() as u32) {
            let mut root: Point = c.root.iter().map(|x| 3 * x).collect();
            let mut r = t;
            for &a in &axes {
                root[a] += 2 * (r % 3) as i64;
                r /= 3;
            }
            out.insert(Cube::new(root, c.dir));
        }
    }
    debug_assert!(out.iter().all(|c| big.contains_cube(c)));
    out
}

/// e together with every n-cube sharing a point with it.
fn thicken(big: &Ambient, e: &CubicalSet) -> CubicalSet {
    let vs: BTreeSet<Point> = e.iter().flat_map(|c| big.vertices(c)).collect();
    big.cubes(big.dim).into_iter().filter(|c| big.vertices(c).iter().any(|v| vs.contains(v))).collect()
}

fn antipodes(amb: &Ambient, cells: &BTreeSet<Cube>) -> Result<BTreeSet<Cube>> {
    cells.iter().map(|c| amb.antipode_cube(c)).collect()
}

/// Cubes of γ meeting S^m: every axis past m extended around 0.
fn equator_count(g: &Chain, m: usize) -> usize {
    let d = g.ambient().coords();
    g.iter().filter(|c| (m + 1..d).all(|a| c.extends(a) && c.root[a] == -1)).count()
}

/// Membership of a rational point in a closed cube of the big sphere.
pub fn big_cube_contains(c: &Cube, q: &[Rational]) -> bool {
    c.root.iter().enumerate().all(|(a, &r)| {
        let lo = rat(r, 2);
        if c.extends(a) {
            q[a] >= lo && q[a] <= lo + rat(1, 1)
        } else {
            q[a] == lo
        }
    })
}

/// A point of the big sphere outside every eᵢ ∪ ι(eᵢ).
///
/// Each `es[i]` is a set of n-cubes disjoint from its antipodal image. The
/// sets are dilated by 3 internally and thickened by one layer of cubes.
pub fn ls_descent(amb: &Ambient, es: &[CubicalSet]) -> Result<Descent> {
    need_big_sphere(amb)?;
    let n = amb.dim;
    if es.len() != n {
        return Err(Error::invalid(format!("expected {n} sets")));
    }
    for (i, e) in es.iter().enumerate() {
        check_cubical_set(amb, e)?;
        let cl = closure_of(amb, e);
        if cl.iter().any(|f| cl.contains(&amb.antipode_cube(f).expect("symmetric ambient"))) {
            return Err(Error::pre("e_i misses its antipode", format!("e_{} meets ι(e_{})", i + 1, i + 1)));
        }
    }

    let big = Ambient::big_sphere(n, 3 * amb.size + 1);
    let small: Vec<BTreeSet<Cube>> = es.iter().map(|e| closure_of(&big, dilate(&big, e))).collect();
    let small_bar: Vec<BTreeSet<Cube>> = small.iter().map(|s| antipodes(&big, s)).collect::<Result<_>>()?;

    let mut gamma = Chain::full(big, n);
    let mut pairs = Vec::new();
    let mut sizes = Vec::new();
    for m in 0..=n {
        check_level(&gamma, m, &small[..m], &small_bar[..m])?;
        let eq = equator_count(&gamma, m);
        if eq % 4 != 2 {
            return Err(Error::internal(format!("γ_{m} ∩ S^{m} has {eq} points")));
        }
        pairs.push(eq / 2);
        sizes.push(gamma.len());
        if m == n {
            break;
        }
        let e = thicken(&big, &dilate(&big, &es[m]));
        let cl = closure_of(&big, &e);
        let cl_bar = antipodes(&big, &cl)?;
        let mut delta = Chain::zero(big, gamma.dim());
        for c in gamma.iter() {
            let (a, b) = (cl.contains(c), cl_bar.contains(c));
            if a && b {
                return Err(Error::internal("E meets its antipode"));
            }
            if a || (!b && *c < big.antipode_cube(c)?) {
                delta.toggle(c.clone());
            }
        }
        gamma = delta.boundary()?;
    }

    let scaled = gamma.iter().next().ok_or_else(|| Error::internal("γ_n is empty"))?.root.clone();
    let point: Vec<Rational> = scaled.iter().map(|&x| rat(x, 6)).collect();
    for e in es {
        for c in e {
            let c_bar = amb.antipode_cube(c)?;
            if big_cube_contains(c, &point) || big_cube_contains(&c_bar, &point) {
                return Err(Error::internal("descent point lies in some e_i"));
            }
        }
    }
    Ok(Descent { point, scaled, equator_pairs: pairs, sizes })
}

fn check_level(g: &Chain, m: usize, small: &[BTreeSet<Cube>], small_bar: &[BTreeSet<Cube>]) -> Result<()> {
    let amb = g.ambient();
    if classify(g)? != Symmetry::Symmetric {
        return Err(Error::internal(format!("γ_{m} is not symmetric")));
    }
    if g.dim() > 0 && !g.boundary()?.is_empty() {
        return Err(Error::internal(format!("γ_{m} is not a cycle")));
    }
    for c in g.iter() {
        for f in amb.closure(c) {
            if small.iter().chain(small_bar).any(|s| s.contains(&f)) {
                return Err(Error::internal(format!("γ_{m} meets a processed set")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Lcg;
    use alloc::vec;

    fn random_asymmetric(amb: Ambient, rng: &mut Lcg) -> BTreeSet<Point> {
        let mut set = BTreeSet::new();
        for p in amb.points() {
            let q = amb.antipode_point(&p).unwrap();
            if p < q {
                set.insert(if rng.coin() { p } else { q });
            }
        }
        set
    }

    #[test]
    fn h_is_asymmetric() {
        let s = Ambient::sphere(2, 2);
        let h = h_indicator(s).unwrap();
        assert_eq!(classify(&h).unwrap(), Symmetry::Asymmetric);
        assert_eq!(classify(&Cochain::zero(s, 0)).unwrap(), Symmetry::Symmetric);
        let g = indicator(s, &hemisphere(s, 1).unwrap()).unwrap();
        assert_eq!(classify(&h.add(&g).unwrap()).unwrap(), Symmetry::Symmetric);
        assert_eq!(classify(&h.coboundary().unwrap()).unwrap(), Symmetry::Symmetric);
    }

    #[test]
    fn generator_on_the_circle() {
        let s = Ambient::sphere(1, 1);
        let h = h_indicator(s).unwrap();
        let f = h.coboundary().unwrap();
        assert_eq!(f.len(), 2);
        let pairs = power_of_generator_pairs(&s, &[h]).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].1, s.antipode_cube(&pairs[0].0).unwrap());
    }

    #[test]
    fn generator_pairs_are_odd() {
        let mut rng = Lcg::new(7);
        for (n, k) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let s = Ambient::sphere(n, k);
            for _ in 0..10 {
                let hs: Vec<Cochain> =
                    (0..n).map(|_| indicator(s, &random_asymmetric(s, &mut rng)).unwrap()).collect();
                assert_eq!(power_of_generator_pairs(&s, &hs).unwrap().len() % 2, 1);
            }
        }
    }

    #[test]
    fn rejects_non_asymmetric() {
        let s = Ambient::sphere(1, 1);
        let err = power_of_generator_pairs(&s, &[Cochain::zero(s, 0)]).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn sym_sum_examples() {
        let s = Ambient::sphere(2, 1);
        let c = s.cubes(2)[3].clone();
        let pair = Cochain::from_cubes(s, 2, [c.clone(), s.antipode_cube(&c).unwrap()]).unwrap();
        assert!(sym_sum(&pair).unwrap());
        assert!(sym_sum_over(&pair, Transversal::LexMax).unwrap());
        let e = s.cubes(1)[0].clone();
        let g = Cochain::from_cubes(s, 1, [e.clone(), s.antipode_cube(&e).unwrap()]).unwrap();
        assert!(!sym_sum(&g.coboundary().unwrap()).unwrap());
        assert!(sym_sum(&Cochain::from_cubes(s, 2, [c]).unwrap()).is_err());
    }

    #[test]
    fn iota_star_is_multiplicative() {
        let s = Ambient::sphere(2, 1);
        let mut rng = Lcg::new(3);
        let mut anti_fails = 0;
        for _ in 0..30 {
            let f = indicator(s, &random_asymmetric(s, &mut rng)).unwrap().coboundary().unwrap();
            let mut g = Cochain::zero(s, 1);
            for c in s.cubes(1) {
                if rng.coin() {
                    g.toggle(c);
                }
            }
            let fg = sphere_multi_cup(s, &[&f, &g]).unwrap();
            let (fi, gi) = (iota(&f).unwrap(), iota(&g).unwrap());
            assert_eq!(iota(&fg).unwrap(), sphere_multi_cup(s, &[&fi, &gi]).unwrap());
            if iota(&fg).unwrap() != sphere_multi_cup(s, &[&gi, &fi]).unwrap() {
                anti_fails += 1;
            }
        }
        // the order-reversing form does not hold at the cochain level
        assert!(anti_fails > 0);
    }

    #[test]
    fn ls_witness_hemispheres() {
        let s = Ambient::sphere(2, 1);
        let cs: Vec<_> = (0..2).map(|i| hemisphere(s, i).unwrap()).collect();
        let c = ls_witness(&s, &cs).unwrap();
        for set in &cs {
            let vs = s.vertices(&c);
            assert!(vs.iter().any(|v| set.contains(v)) && vs.iter().any(|v| !set.contains(v)));
        }
        let bad = vec![BTreeSet::new(), cs[1].clone()];
        assert!(ls_witness(&s, &bad).is_err());
    }

    #[test]
    fn split_of_a_pair() {
        let b = Ambient::big_sphere(1, 1);
        let c = b.cubes(1)[0].clone();
        let a = b.antipode_cube(&c).unwrap();
        let g = Chain::from_cubes(b, 1, [c.clone(), a.clone()]).unwrap();
        let d = symmetric_split(&g).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![&c.clone().min(a)]);
        assert_eq!(d.add(&iota(&d).unwrap()).unwrap(), g);
        let full = Chain::full(b, 1);
        let d = symmetric_split(&full).unwrap();
        assert_eq!(classify(&d.boundary().unwrap()).unwrap(), Symmetry::Symmetric);
        assert!(symmetric_split(&Chain::from_cubes(b, 1, [c]).unwrap()).is_err());
    }

    #[test]
    fn dilation_shapes() {
        let b = Ambient::big_sphere(1, 1);
        let big = Ambient::big_sphere(1, 4);
        let e: CubicalSet = [b.cubes(1)[0].clone()].into_iter().collect();
        let d = dilate(&big, &e);
        assert_eq!(d.len(), 3);
        assert!(d.iter().all(|c| big.contains_cube(c)));
    }

    #[test]
    fn descent_on_the_circle() {
        let b = Ambient::big_sphere(1, 1);
        // a quarter arc: the cubes with first coordinate frozen at +3
        let e: CubicalSet = b.cubes(1).into_iter().filter(|c| !c.extends(0) && c.root[0] == 3).collect();
        let r = ls_descent(&b, core::slice::from_ref(&e)).unwrap();
        for c in &e {
            assert!(!big_cube_contains(c, &r.point));
            assert!(!big_cube_contains(&b.antipode_cube(c).unwrap(), &r.point));
        }
        assert!(r.equator_pairs.iter().all(|p| p % 2 == 1));
    }

    #[test]
    fn descent_on_two_collars() {
        let b = Ambient::big_sphere(2, 1);
        let collar = |axis: usize| -> CubicalSet {
            b.cubes(2).into_iter().filter(|c| !c.extends(axis) && c.root[axis] == 3).collect()
        };
        let r = ls_descent(&b, &[collar(0), collar(1)]).unwrap();
        assert_eq!(r.sizes.len(), 3);
        assert!(r.equator_pairs.iter().all(|p| p % 2 == 1));
        let bad: CubicalSet = b.cubes(2).into_iter().filter(|c| c.root[0] == 3 || c.root[0] == -3).collect();
        assert!(ls_descent(&b, &[bad, collar(1)]).is_err());
    }
}
