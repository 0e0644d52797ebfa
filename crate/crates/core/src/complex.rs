//! Finite abstract simplicial complexes on integer points.
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::cube::Point;

pub type Simplex = Vec<Point>;

/// A set of sorted vertex lists, closed under taking faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

fn normalize(mut s: Simplex) -> Simplex {
    s.sort();
    s.dedup();
    s
}

impl SimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_facets(facets: impl IntoIterator<Item = Simplex>) -> Self {
        let mut c = Self::new();
        for f in facets {
            c.insert_closed(f);
        }
        c
    }

    /// Add a simplex with all of its nonempty faces.
    pub fn insert_closed(&mut self, s: Simplex) {
        let s = normalize(s);
        if s.is_empty() || self.simplices.contains(&s) {
            return;
        }
        for skip in 0..s.len() {
            if s.len() > 1 {
                let mut f = s.clone();
                f.remove(skip);
                self.insert_closed(f);
            }
        }
        self.simplices.insert(s);
    }

    pub fn contains(&self, s: &[Point]) -> bool {
        self.simplices.contains(&normalize(s.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    /// Largest simplex dimension; −1 when empty.
    pub fn dim(&self) -> isize {
        self.simplices.iter().map(|s| s.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn of_dim(&self, d: usize) -> Vec<&Simplex> {
        self.simplices.iter().filter(|s| s.len() == d + 1).collect()
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.of_dim(0).into_iter().map(|s| s[0].clone()).collect()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut faces = Vec::new();
        for s in &self.simplices {
            for skip in 0..s.len() {
                let mut f = s.clone();
                f.remove(skip);
                faces.push(f);
            }
        }
        let faces: BTreeSet<Simplex> = faces.into_iter().collect();
        for s in &self.simplices {
            if faces.contains(s) {
                covered.insert(s);
            }
        }
        self.simplices.iter().filter(|s| !covered.contains(s)).cloned().collect()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|f| f.len() as isize - 1 == d)
    }

    /// For each (d−1)-face of a d-simplex, the number of d-simplices containing it.
    pub fn ridge_degrees(&self, d: usize) -> BTreeMap<Simplex, usize> {
        let mut deg = BTreeMap::new();
        if d == 0 {
            return deg;
        }
        for s in self.of_dim(d) {
            for skip in 0..s.len() {
                let mut f = s.clone();
                f.remove(skip);
                *deg.entry(f).or_insert(0) += 1;
            }
        }
        deg
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }
}
