//! Cup products of cubical cochains and the Kuhn-lemma family.
//!
//! Labels and set indices are 0-based: label i in 1-based numbering is `i − 1` here.
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::chains::Cochain;
use crate::cube::{Ambient, Cube, Kind, Norm, PivotSeq, Point};
use crate::error::{Error, Result};
use crate::util::{bits, submasks_of_size};

fn same_ambient(fs: &[&Cochain]) -> Result<Ambient> {
    let amb = fs.first().ok_or_else(|| Error::invalid("no cochains"))?.ambient();
    if fs.iter().any(|f| f.ambient() != amb) {
        return Err(Error::invalid("cochains on different ambients"));
    }
    Ok(amb)
}

fn check_total(amb: &Ambient, total: usize) -> Result<()> {
    if total > amb.top_dim() {
        return Err(Error::invalid(format!("product dimension {total} exceeds {}", amb.top_dim())));
    }
    Ok(())
}

/// f·g(σ) = Σ_{F ⊔ G = A(σ), |F| = p} f(λ⁰_G σ)·g(λ¹_F σ).
pub fn cup_at(f: &Cochain, g: &Cochain, s: &Cube, norm: Norm) -> Result<bool> {
    let amb = same_ambient(&[f, g])?;
    if s.dim() != f.dim() + g.dim() {
        return Err(Error::invalid("cube dimension differs from p+q"));
    }
    let mut v = false;
    for ff in submasks_of_size(s.dir, f.dim()) {
        let gg = s.dir & !ff;
        if f.contains(&amb.lambda(s, gg, false, norm)?) && g.contains(&amb.lambda(s, ff, true, norm)?) {
            v = !v;
        }
    }
    Ok(v)
}

pub fn cup_norm(f: &Cochain, g: &Cochain, norm: Norm) -> Result<Cochain> {
    let amb = same_ambient(&[f, g])?;
    let d = f.dim() + g.dim();
    check_total(&amb, d)?;
    let mut out = Cochain::zero(amb, d);
    for s in amb.cubes(d) {
        if cup_at(f, g, &s, norm)? {
            out.toggle(s);
        }
    }
    Ok(out)
}

pub fn cup(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    cup_norm(f, g, Norm::Lex)
}

/// Same product through face pairs: root(τ) = root(σ), peak(τ) = root(ρ).
pub fn cup_chained(f: &Cochain, g: &Cochain, norm: Norm) -> Result<Cochain> {
    let amb = same_ambient(&[f, g])?;
    let d = f.dim() + g.dim();
    check_total(&amb, d)?;
    let mut out = Cochain::zero(amb, d);
    for s in amb.cubes(d) {
        let root = amb.root_of(&s, norm)?;
        let taus: Vec<Cube> = amb.faces(&s, f.dim())?.into_iter().filter(|t| f.contains(t)).collect();
        let rhos: Vec<Cube> = amb.faces(&s, g.dim())?.into_iter().filter(|r| g.contains(r)).collect();
        let mut v = false;
        for t in &taus {
            if amb.root_of(t, norm)? != root {
                continue;
            }
            let peak = amb.peak_of(t, norm)?;
            for r in &rhos {
                if t.dir & r.dir == 0 && amb.root_of(r, norm)? == peak {
                    v = !v;
                }
            }
        }
        if v {
            out.toggle(s);
        }
    }
    Ok(out)
}

/// f₁·…·f_r(σ) through chained faces τ₁..τ_r with disjoint directions.
pub fn multi_cup_at(fs: &[&Cochain], s: &Cube, norm: Norm) -> Result<bool> {
    if fs.is_empty() {
        return Ok(s.dim() == 0);
    }
    let amb = same_ambient(fs)?;
    let total: usize = fs.iter().map(|f| f.dim()).sum();
    if s.dim() != total {
        return Err(Error::invalid("cube dimension differs from the total degree"));
    }
    // first/second end of each extended axis
    let mut first = s.root.clone();
    let mut second = s.root.clone();
    for a in bits(s.dir) {
        let e0 = amb.lambda(s, 1 << a, false, norm)?.root[a];
        let e1 = amb.lambda(s, 1 << a, true, norm)?.root[a];
        first[a] = e0;
        second[a] = e1;
    }
    fn go(fs: &[&Cochain], s: &Cube, first: &[i64], second: &[i64], used: u32, i: usize) -> bool {
        if i == fs.len() {
            return true;
        }
        let rest = s.dir & !used;
        let mut v = false;
        for d in submasks_of_size(rest, fs[i].dim()) {
            let root: Point = (0..s.root.len())
                .map(|a| {
                    if d >> a & 1 == 1 {
                        s.root[a]
                    } else if used >> a & 1 == 1 {
                        second[a]
                    } else {
                        first[a]
                    }
                })
                .collect();
            if fs[i].contains(&Cube::new(root, d)) && go(fs, s, first, second, used | d, i + 1) {
                v = !v;
            }
        }
        v
    }
    Ok(go(fs, s, &first, &second, 0, 0))
}

pub fn multi_cup_norm(amb: Ambient, fs: &[&Cochain], norm: Norm) -> Result<Cochain> {
    if fs.is_empty() {
        return Ok(Cochain::unit(amb));
    }
    if same_ambient(fs)? != amb {
        return Err(Error::invalid("cochains on a different ambient"));
    }
    let d: usize = fs.iter().map(|f| f.dim()).sum();
    check_total(&amb, d)?;
    let mut out = Cochain::zero(amb, d);
    for s in amb.cubes(d) {
        if multi_cup_at(fs, &s, norm)? {
            out.toggle(s);
        }
    }
    Ok(out)
}

pub fn multi_cup(amb: Ambient, fs: &[&Cochain]) -> Result<Cochain> {
    multi_cup_norm(amb, fs, Norm::Lex)
}

/// ∂*(f·g) = ∂*f·g + f·∂*g.
pub fn leibniz_check(f: &Cochain, g: &Cochain) -> Result<bool> {
    let lhs = cup(f, g)?.coboundary()?;
    let rhs = cup(&f.coboundary()?, g)?.add(&cup(f, &g.coboundary()?)?)?;
    Ok(lhs == rhs)
}

fn in_bd(amb: &Ambient, c: &Cube) -> bool {
    amb.in_boundary(c)
}

/// (Σ_σ ∂*f(σ), Σ_{τ ⊂ bd K} f(τ)) for an (n−1)-cochain f.
pub fn boundary_sum(f: &Cochain) -> Result<(bool, bool)> {
    let amb = f.ambient();
    if f.dim() + 1 != amb.top_dim() {
        return Err(Error::invalid("boundary_sum needs an (n−1)-cochain"));
    }
    let left = f.coboundary()?.len() % 2 == 1;
    let right = f.iter().filter(|t| in_bd(&amb, t)).count() % 2 == 1;
    Ok((left, right))
}

fn need_discrete(amb: &Ambient) -> Result<()> {
    if amb.kind != Kind::DiscreteK {
        return Err(Error::invalid("expected the discrete cube K"));
    }
    Ok(())
}

/// (s, t) of the induction step: s counts n-cubes with f₁·…·fₙ = 1, t counts
/// boundary (n−1)-cubes τ with h₁(λ⁰τ) = 1 and f₂·…·fₙ(τ) = 1.
pub fn products_induction_counts(amb: &Ambient, hs: &[Cochain]) -> Result<(u64, u64)> {
    need_discrete(amb)?;
    let n = amb.dim;
    if hs.len() != n || hs.iter().any(|h| h.dim() != 0 || h.ambient() != *amb) {
        return Err(Error::invalid(format!("expected {n} 0-cochains on K")));
    }
    let fs: Vec<Cochain> = hs.iter().map(|h| h.coboundary()).collect::<Result<_>>()?;
    let refs: Vec<&Cochain> = fs.iter().collect();
    let s = multi_cup(*amb, &refs)?.len() as u64;
    let mut t = 0;
    for tau in amb.cubes(n - 1) {
        if in_bd(amb, &tau)
            && hs[0].contains(&Cube::vertex(tau.root.clone()))
            && multi_cup_at(&refs[1..], &tau, Norm::Lex)?
        {
            t += 1;
        }
    }
    Ok((s, t))
}

/// hᵢ = 1 on 𝒜ᵢ and 0 on ℬᵢ.
pub fn check_face_conditions(amb: &Ambient, hs: &[Cochain]) -> Result<()> {
    let k = amb.size;
    for (i, h) in hs.iter().enumerate() {
        for p in amb.points() {
            let on = h.contains(&Cube::vertex(p.clone()));
            if p[i] == 0 && !on {
                return Err(Error::pre("h_i = 1 on A_i", format!("h_{} vanishes at {p:?} in A_{}", i + 1, i + 1)));
            }
            if p[i] == k && on {
                return Err(Error::pre("h_i = 0 on B_i", format!("h_{} is 1 at {p:?} in B_{}", i + 1, i + 1)));
            }
        }
    }
    Ok(())
}

/// s under the face conditions; odd.
pub fn products_faces_count(amb: &Ambient, hs: &[Cochain]) -> Result<u64> {
    need_discrete(amb)?;
    if hs.len() != amb.dim {
        return Err(Error::invalid(format!("expected {} 0-cochains", amb.dim)));
    }
    check_face_conditions(amb, hs)?;
    Ok(products_induction_counts(amb, hs)?.0)
}

pub fn indicator(amb: Ambient, set: &BTreeSet<Point>) -> Result<Cochain> {
    Cochain::from_cubes(amb, 0, set.iter().map(|p| Cube::vertex(p.clone())))
}

/// 𝒜ᵢ ⊆ cᵢ and ℬᵢ ∩ cᵢ = ∅.
pub fn check_kuhn(amb: &Ambient, cs: &[BTreeSet<Point>]) -> Result<()> {
    need_discrete(amb)?;
    if cs.len() != amb.dim {
        return Err(Error::invalid(format!("expected {} sets", amb.dim)));
    }
    let k = amb.size;
    for (i, c) in cs.iter().enumerate() {
        for p in c {
            amb.check_point(p)?;
        }
        for p in amb.points() {
            if p[i] == 0 && !c.contains(&p) {
                return Err(Error::pre("A_i in c_i", format!("{p:?} in A_{} but not in c_{}", i + 1, i + 1)));
            }
            if p[i] == k && c.contains(&p) {
                return Err(Error::pre("B_i misses c_i", format!("{p:?} in B_{} and in c_{}", i + 1, i + 1)));
            }
        }
    }
    Ok(())
}

/// Pivot sequences whose i-th step meets both cᵢ and its complement.
pub fn kuhn_witnesses(amb: &Ambient, cs: &[BTreeSet<Point>]) -> Result<Vec<PivotSeq>> {
    check_kuhn(amb, cs)?;
    let mut out = Vec::new();
    for s in amb.cubes(amb.dim) {
        for seq in amb.pivot_sequences(&s) {
            if (0..amb.dim).all(|i| cs[i].contains(&seq[i]) != cs[i].contains(&seq[i + 1])) {
                out.push(seq);
            }
        }
    }
    Ok(out)
}

/// r(v) = least i with v ∈ cᵢ, else n.
pub fn reduced_labeling(amb: &Ambient, cs: &[BTreeSet<Point>]) -> BTreeMap<Point, usize> {
    amb.points()
        .into_iter()
        .map(|p| {
            let r = cs.iter().position(|c| c.contains(&p)).unwrap_or(cs.len());
            (p, r)
        })
        .collect()
}

/// The sets eᵢ = r⁻¹(i), i = 0..=n.
pub fn label_classes(labels: &BTreeMap<Point, usize>, n: usize) -> Vec<BTreeSet<Point>> {
    let mut out = alloc::vec![BTreeSet::new(); n + 1];
    for (p, &r) in labels {
        out[r].insert(p.clone());
    }
    out
}

/// Pivot sequences carrying every reduced label.
pub fn kuhn_strong_sequences(amb: &Ambient, cs: &[BTreeSet<Point>]) -> Result<Vec<PivotSeq>> {
    check_kuhn(amb, cs)?;
    let r = reduced_labeling(amb, cs);
    let full = (1u64 << (amb.dim + 1)) - 1;
    let mut out = Vec::new();
    for s in amb.cubes(amb.dim) {
        for seq in amb.pivot_sequences(&s) {
            let m = seq.iter().fold(0u64, |m, v| m | 1 << r[v]);
            if m == full {
                out.push(seq);
            }
        }
    }
    Ok(out)
}

pub fn kuhn_strong_count(amb: &Ambient, cs: &[BTreeSet<Point>]) -> Result<u64> {
    Ok(kuhn_strong_sequences(amb, cs)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn face_sets(amb: &Ambient) -> Vec<BTreeSet<Point>> {
        (0..amb.dim).map(|i| amb.points().into_iter().filter(|p| p[i] == 0).collect()).collect()
    }

    #[test]
    fn unit_square_product_is_one() {
        let k = Ambient::discrete(2, 1);
        let cs = face_sets(&k);
        let f = indicator(k, &cs[0]).unwrap().coboundary().unwrap();
        let g = indicator(k, &cs[1]).unwrap().coboundary().unwrap();
        let fg = cup(&f, &g).unwrap();
        assert!(fg.contains(&Cube::new(vec![0, 0], 0b11)));
        assert!(cup(&f, &Cochain::zero(k, 1)).unwrap().is_empty());
        assert_eq!(cup_chained(&f, &g, Norm::Lex).unwrap(), fg);
        assert_eq!(multi_cup(k, &[&f, &g]).unwrap(), fg);
    }

    #[test]
    fn boundary_sum_examples() {
        let k = Ambient::discrete(2, 2);
        let inner = Cochain::from_cubes(k, 1, [Cube::new(vec![1, 0], 0b10)]).unwrap();
        assert_eq!(boundary_sum(&inner).unwrap(), (false, false));
        let outer = Cochain::from_cubes(k, 1, [Cube::new(vec![0, 0], 0b10)]).unwrap();
        assert_eq!(boundary_sum(&outer).unwrap(), (true, true));
    }

    #[test]
    fn induction_counts_small() {
        let k = Ambient::discrete(1, 1);
        let h = indicator(k, &[vec![0]].into_iter().collect()).unwrap();
        assert_eq!(products_induction_counts(&k, &[h]).unwrap(), (1, 1));
        let z = Cochain::zero(k, 0);
        assert_eq!(products_induction_counts(&k, &[z]).unwrap(), (0, 0));
    }

    #[test]
    fn faces_count_alternating() {
        let k = Ambient::discrete(1, 3);
        let h = indicator(k, &[vec![0], vec![2]].into_iter().collect()).unwrap();
        assert_eq!(products_faces_count(&k, &[h]).unwrap(), 3);
    }

    #[test]
    fn face_indicators_give_one() {
        for (n, kk) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)] {
            let k = Ambient::discrete(n, kk);
            let hs: Vec<Cochain> = face_sets(&k).iter().map(|c| indicator(k, c).unwrap()).collect();
            assert_eq!(products_faces_count(&k, &hs).unwrap(), 1);
        }
    }

    #[test]
    fn kuhn_examples() {
        let k = Ambient::discrete(1, 2);
        let c: BTreeSet<Point> = [vec![0], vec![1]].into_iter().collect();
        assert_eq!(kuhn_witnesses(&k, &[c]).unwrap(), vec![vec![vec![1], vec![2]]]);
        let k = Ambient::discrete(2, 1);
        let cs = face_sets(&k);
        assert_eq!(kuhn_witnesses(&k, &cs).unwrap(), vec![vec![vec![0, 0], vec![1, 0], vec![1, 1]]]);
        assert_eq!(kuhn_strong_count(&k, &cs).unwrap(), 1);
        let k1 = Ambient::discrete(1, 1);
        assert_eq!(kuhn_strong_count(&k1, &face_sets(&k1)).unwrap(), 1);
    }

    #[test]
    fn reduced_labels() {
        let k = Ambient::discrete(2, 1);
        let cs = face_sets(&k);
        let r = reduced_labeling(&k, &cs);
        assert_eq!(r[&vec![0, 0]], 0);
        assert_eq!(r[&vec![1, 0]], 1);
        assert_eq!(r[&vec![1, 1]], 2);
    }
}
