//! Canonical and Freudenthal triangulations, and a simplicial Sperner count.
//!
//! A permutation ω is a `Vec<usize>` with `ω[i]` the rank of axis `i`, all
//! 0-based. The simplex a + Δ(ω) starts at `a` and raises axis ω⁻¹(j) at
//! step j, so the identity gives the prefix-of-ones points.
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{Simplex, SimplicialComplex};
use crate::cube::{Ambient, Kind, PivotSeq, Point};
use crate::error::{Error, Result};
use crate::products::{check_kuhn, reduced_labeling};
use crate::util::{grid, permutations};

pub type Permutation = Vec<usize>;

pub fn is_permutation(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len()];
    w.iter().all(|&x| x < w.len() && !core::mem::replace(&mut seen[x], true))
}

pub fn inverse(w: &[usize]) -> Permutation {
    let mut inv = vec![0; w.len()];
    for (i, &x) in w.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn need_discrete(amb: &Ambient) -> Result<()> {
    if amb.kind != Kind::DiscreteK {
        return Err(Error::invalid("expected the discrete cube K"));
    }
    Ok(())
}

/// Vertices of a + Δ(ω) in increasing order.
pub fn simplex_of(amb: &Ambient, w: &[usize], a: &[i64]) -> Result<PivotSeq> {
    need_discrete(amb)?;
    let n = amb.dim;
    if w.len() != n || !is_permutation(w) {
        return Err(Error::invalid(format!("{w:?} is not a permutation of {n} axes")));
    }
    if a.len() != n || a.iter().any(|&x| x < 0 || x >= amb.size) {
        return Err(Error::invalid(format!("{a:?} is not a cube root of the window")));
    }
    let inv = inverse(w);
    let mut v = a.to_vec();
    let mut out = vec![v.clone()];
    for &axis in &inv {
        v[axis] += 1;
        out.push(v.clone());
    }
    Ok(out)
}

/// ω|a: axes ranked by (−aᵢ, ω(i)).
pub fn omega_restrict(w: &[usize], a: &[i64]) -> Permutation {
    let mut axes: Vec<usize> = (0..w.len()).collect();
    axes.sort_by_key(|&i| (-a[i], w[i]));
    inverse(&axes)
}

/// x ∈ lΔ(ω): coordinates in [0, l], non-increasing along ω⁻¹.
pub fn in_scaled_simplex(w: &[usize], l: i64, x: &[i64]) -> bool {
    let inv = inverse(w);
    x.iter().all(|&c| (0..=l).contains(&c)) && inv.windows(2).all(|p| x[p[0]] >= x[p[1]])
}

/// The big simplices lΔ(ω′) holding every vertex of a + Δ(ω).
pub fn containing_simplices(w: &[usize], a: &[i64], l: i64) -> Result<Vec<Permutation>> {
    let amb = Ambient::new(Kind::DiscreteK, w.len(), l)?;
    let s = simplex_of(&amb, w, a)?;
    Ok(permutations(w.len())
        .into_iter()
        .filter(|w2| s.iter().all(|v| in_scaled_simplex(w2, l, v)))
        .collect())
}

/// All n-simplices a + Δ(ω) of the window.
pub fn top_simplices(amb: &Ambient) -> Result<Vec<PivotSeq>> {
    need_discrete(amb)?;
    let n = amb.dim;
    let mut out = Vec::new();
    for a in grid(&vec![0; n], &vec![amb.size - 1; n]) {
        for w in permutations(n) {
            out.push(simplex_of(amb, &w, &a)?);
        }
    }
    Ok(out)
}

pub fn canonical_complex(amb: &Ambient) -> Result<SimplicialComplex> {
    Ok(SimplicialComplex::from_facets(top_simplices(amb)?))
}

/// Permutations increasing on the first q and on the last p positions.
pub fn shuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    permutations(n)
        .into_iter()
        .filter(|w| w[..q].windows(2).all(|x| x[0] < x[1]) && w[q..].windows(2).all(|x| x[0] < x[1]))
        .collect()
}

/// n-simplices of Freudenthal's triangulation of lΔ(ω′).
pub fn freudenthal_simplices(n: usize, l: i64, target: &[usize]) -> Result<Vec<PivotSeq>> {
    let amb = Ambient::new(Kind::DiscreteK, n, l)?;
    let mut out = Vec::new();
    for a in grid(&vec![0; n], &vec![l - 1; n]) {
        for w in permutations(n) {
            if omega_restrict(&w, &a) == target {
                out.push(simplex_of(&amb, &w, &a)?);
            }
        }
    }
    Ok(out)
}

/// The l = 2 triangulation of 2Δ built from shuffles: a = 1^q 0^p.
pub fn freudenthal_by_shuffles(n: usize) -> Result<Vec<PivotSeq>> {
    let amb = Ambient::new(Kind::DiscreteK, n, 2)?;
    let mut out = Vec::new();
    for q in 0..=n {
        let a: Point = (0..n).map(|i| i64::from(i < q)).collect();
        for w in shuffles(n - q, q) {
            out.push(simplex_of(&amb, &w, &a)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NonBranching {
    pub interior: usize,
    pub boundary: usize,
    /// Ridges with the wrong number of cofaces.
    pub violations: Vec<(Simplex, usize)>,
}

impl NonBranching {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn on_boundary(s: &[Point], k: i64) -> bool {
    let n = s[0].len();
    (0..n).any(|i| s.iter().all(|v| v[i] == 0) || s.iter().all(|v| v[i] == k))
}

/// Each (n−1)-simplex lies in 2 n-simplices, or 1 on bd K.
pub fn nonbranching_report(amb: &Ambient) -> Result<NonBranching> {
    let cx = canonical_complex(amb)?;
    let mut r = NonBranching::default();
    for (ridge, deg) in cx.ridge_degrees(amb.dim) {
        let want = if on_boundary(&ridge, amb.size) { 1 } else { 2 };
        if want == 1 {
            r.boundary += 1;
        } else {
            r.interior += 1;
        }
        if deg != want {
            r.violations.push((ridge, deg));
        }
    }
    Ok(r)
}

/// Number of n-simplices carrying all n+1 reduced labels.
///
/// Door counting relates this to the same count on the face x₀ = k; that
/// relation is checked all the way down to dimension 0.
pub fn sperner_count(amb: &Ambient, cs: &[BTreeSet<Point>]) -> Result<u64> {
    check_kuhn(amb, cs)?;
    count_down(&reduced_labeling(amb, cs), amb.dim, amb.size)
}

fn count_down(labels: &BTreeMap<Point, usize>, n: usize, k: i64) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    let amb = Ambient::discrete(n, k);
    let full: BTreeSet<usize> = (0..=n).collect();
    let door: BTreeSet<usize> = (1..=n).collect();
    let mut e = 0u64;
    let mut incidences = 0u64;
    let mut boundary_doors = BTreeSet::new();
    for s in top_simplices(&amb)? {
        let ls: BTreeSet<usize> = s.iter().map(|v| labels[v]).collect();
        if ls == full {
            e += 1;
        }
        for skip in 0..s.len() {
            let mut f = s.clone();
            f.remove(skip);
            if f.iter().map(|v| labels[v]).collect::<BTreeSet<_>>() == door {
                incidences += 1;
                if on_boundary(&f, k) {
                    boundary_doors.insert(f);
                }
            }
        }
    }
    let h = boundary_doors.len() as u64;
    if incidences % 2 != h % 2 || e % 2 != h % 2 {
        return Err(Error::internal(format!("door parity broken: e={e}, h={h}")));
    }
    if boundary_doors.iter().any(|f| f.iter().any(|v| v[0] != k)) {
        return Err(Error::internal("boundary door off the face x_0 = k"));
    }
    let face: BTreeMap<Point, usize> =
        labels.iter().filter(|(p, _)| p[0] == k).map(|(p, &r)| (p[1..].to_vec(), r - 1)).collect();
    let below = count_down(&face, n - 1, k)?;
    if below != h {
        return Err(Error::internal(format!("{h} boundary doors but {below} full simplices on the face")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilings::nerve;
    use crate::util::binomial;

    #[test]
    fn simplex_examples() {
        let k = Ambient::discrete(3, 1);
        let s = simplex_of(&k, &[0, 1, 2], &[0, 0, 0]).unwrap();
        assert_eq!(s, vec![vec![0, 0, 0], vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]);
        let k2 = Ambient::discrete(2, 1);
        assert_eq!(simplex_of(&k2, &[1, 0], &[0, 0]).unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert!(simplex_of(&k2, &[0, 0], &[0, 0]).is_err());
        assert!(simplex_of(&k2, &[0, 1], &[1, 0]).is_err());
    }

    #[test]
    fn restriction() {
        assert_eq!(omega_restrict(&[1, 0, 2], &[3, 3, 3]), vec![1, 0, 2]);
        for w in permutations(2) {
            let r = omega_restrict(&w, &[1, 0]);
            assert!(r[0] < r[1]);
        }
        for n in 1..=3 {
            for a in grid(&vec![0; n], &vec![2; n]) {
                for w in permutations(n) {
                    assert_eq!(containing_simplices(&w, &a, 3).unwrap(), vec![omega_restrict(&w, &a)]);
                }
            }
        }
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(0, 3), vec![vec![0, 1, 2]]);
        assert_eq!(shuffles(1, 1).len(), 2);
        for n in 1..=4 {
            for q in 0..=n {
                assert_eq!(shuffles(n - q, q).len() as u64, binomial(n as u64, q as u64));
            }
            let mut a = freudenthal_by_shuffles(n).unwrap();
            let mut b = freudenthal_simplices(n, 2, &(0..n).collect::<Vec<_>>()).unwrap();
            assert_eq!(a.len(), 1 << n);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn canonical_matches_nerve() {
        for n in 1..=3 {
            for k in 1..=2 {
                let amb = Ambient::discrete(n, k);
                let cx = canonical_complex(&amb).unwrap();
                assert_eq!(cx, nerve(&vec![0; n], &vec![k; n]));
                let tops = cx.of_dim(n).len() as i64;
                assert_eq!(tops, k.pow(n as u32) * (1..=n as i64).product::<i64>());
            }
        }
    }

    #[test]
    fn path_complex() {
        let cx = canonical_complex(&Ambient::discrete(1, 2)).unwrap();
        assert_eq!(cx.len(), 5);
        let r = nonbranching_report(&Ambient::discrete(1, 2)).unwrap();
        assert_eq!((r.interior, r.boundary), (1, 2));
    }

    #[test]
    fn nonbranching_small() {
        let r = nonbranching_report(&Ambient::discrete(2, 1)).unwrap();
        assert_eq!((r.interior, r.boundary), (1, 4));
        for (n, k) in [(3, 1), (3, 2), (2, 2)] {
            assert!(nonbranching_report(&Ambient::discrete(n, k)).unwrap().is_clean());
        }
    }

    #[test]
    fn sperner_face_sets() {
        for (n, k) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let amb = Ambient::discrete(n, k);
            let cs: Vec<BTreeSet<Point>> =
                (0..n).map(|i| amb.points().into_iter().filter(|p| p[i] == 0).collect()).collect();
            assert_eq!(sperner_count(&amb, &cs).unwrap(), 1);
        }
    }
}
