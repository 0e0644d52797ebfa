//! F₂ chains and cochains of a fixed dimension.
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::marker::PhantomData;

use crate::cube::{Ambient, Cube, Kind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainRole;
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainRole;

/// A finite set of m-cubes, read as an F₂ sum. `R` tags the role.
pub struct Chains<R> {
    amb: Ambient,
    dim: usize,
    cubes: BTreeSet<Cube>,
    _role: PhantomData<R>,
}

pub type Chain = Chains<ChainRole>;
pub type Cochain = Chains<CochainRole>;

impl<R> Clone for Chains<R> {
    fn clone(&self) -> Self {
        Chains { amb: self.amb, dim: self.dim, cubes: self.cubes.clone(), _role: PhantomData }
    }
}

impl<R> PartialEq for Chains<R> {
    fn eq(&self, other: &Self) -> bool {
        self.amb == other.amb && self.dim == other.dim && self.cubes == other.cubes
    }
}

impl<R> Eq for Chains<R> {}

impl<R> fmt::Debug for Chains<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chains").field("dim", &self.dim).field("cubes", &self.cubes).finish()
    }
}

impl<R> Chains<R> {
    pub fn zero(amb: Ambient, dim: usize) -> Self {
        Chains { amb, dim, cubes: BTreeSet::new(), _role: PhantomData }
    }

    /// Sum of the given cubes; repeated cubes cancel.
    pub fn from_cubes(amb: Ambient, dim: usize, cubes: impl IntoIterator<Item = Cube>) -> Result<Self> {
        let mut c = Self::zero(amb, dim);
        for q in cubes {
            amb.check_cube(&q)?;
            if q.dim() != dim {
                return Err(Error::invalid(format!("cube of dimension {} in a {dim}-chain", q.dim())));
            }
            c.toggle(q);
        }
        Ok(c)
    }

    /// Every m-cube of the ambient: ⟦K⟧, ⟦Q⟧, [P_m]-style full chains.
    pub fn full(amb: Ambient, dim: usize) -> Self {
        Chains { amb, dim, cubes: amb.cubes(dim).into_iter().collect(), _role: PhantomData }
    }

    pub fn ambient(&self) -> Ambient {
        self.amb
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, c: &Cube) -> bool {
        self.cubes.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cube> {
        self.cubes.iter()
    }

    pub fn support(&self) -> &BTreeSet<Cube> {
        &self.cubes
    }

    pub fn toggle(&mut self, c: Cube) {
        if !self.cubes.remove(&c) {
            self.cubes.insert(c);
        }
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.amb != other.amb || self.dim != other.dim {
            return Err(Error::invalid("chains live in different spaces"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let cubes = self.cubes.symmetric_difference(&other.cubes).cloned().collect();
        Ok(Chains { amb: self.amb, dim: self.dim, cubes, _role: PhantomData })
    }

    /// Cubes in both supports.
    pub fn common(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let cubes = self.cubes.intersection(&other.cubes).cloned().collect();
        Ok(Chains { amb: self.amb, dim: self.dim, cubes, _role: PhantomData })
    }

    pub fn filter(&self, mut keep: impl FnMut(&Cube) -> bool) -> Self {
        let cubes = self.cubes.iter().filter(|c| keep(c)).cloned().collect();
        Chains { amb: self.amb, dim: self.dim, cubes, _role: PhantomData }
    }

    /// Reinterpret the support under the other role.
    pub fn recast<S>(self) -> Chains<S> {
        Chains { amb: self.amb, dim: self.dim, cubes: self.cubes, _role: PhantomData }
    }
}

impl Chain {
    pub fn boundary(&self) -> Result<Chain> {
        if self.dim == 0 {
            return Err(Error::invalid("boundary of a 0-chain"));
        }
        let mut out = Chain::zero(self.amb, self.dim - 1);
        for c in &self.cubes {
            for f in self.amb.faces(c, self.dim - 1)? {
                out.toggle(f);
            }
        }
        Ok(out)
    }

    /// p_*: cubes whose direction lies in `kept` stay, with the other
    /// coordinates set to 0; the rest vanish.
    pub fn project(&self, kept: u32) -> Result<Chain> {
        if self.amb.kind != Kind::SolidQ {
            return Err(Error::invalid("projection needs the solid cube"));
        }
        let d = self.amb.coords();
        if kept >> d != 0 {
            return Err(Error::invalid(format!("kept axes {kept:#b} out of range")));
        }
        let mut out = Chain::zero(self.amb, self.dim);
        for c in &self.cubes {
            if c.dir & !kept == 0 {
                let root = (0..d).map(|i| if kept >> i & 1 == 1 { c.root[i] } else { 0 }).collect();
                out.toggle(Cube::new(root, c.dir));
            }
        }
        Ok(out)
    }

    /// γ ∩ Lᵘ with Lᵘ given by `levels` (doubled, odd) on axes u..n−1.
    /// The result lives in the u-dimensional solid cube.
    pub fn intersect_plane(&self, levels: &[i64], u: usize) -> Result<Chain> {
        let amb = self.amb;
        if amb.kind != Kind::SolidQ {
            return Err(Error::invalid("plane sections need the solid cube"));
        }
        let n = amb.dim;
        if u > n || levels.len() != n - u {
            return Err(Error::invalid("plane needs one level per axis u..n"));
        }
        for &lv in levels {
            if lv.rem_euclid(2) != 1 || lv <= 0 || lv >= 2 * amb.size {
                return Err(Error::invalid(format!("level {lv}/2 is not a non-integer inside (0, l)")));
            }
        }
        if self.dim < n - u {
            return Err(Error::invalid("chain dimension below plane codimension"));
        }
        let target = Ambient::new(Kind::SolidQ, u, amb.size)?;
        let low = (1u32 << u) - 1;
        let mut out = Chain::zero(target, self.dim - (n - u));
        for c in &self.cubes {
            let hit = (u..n).all(|i| c.extends(i) && 2 * c.root[i] + 1 == levels[i - u]);
            if hit {
                out.toggle(Cube::new(c.root[..u].to_vec(), c.dir & low));
            }
        }
        Ok(out)
    }
}

impl Cochain {
    /// ∂*f: the (m+1)-cubes with an odd number of m-faces in the support.
    pub fn coboundary(&self) -> Result<Cochain> {
        if self.dim >= self.amb.top_dim() {
            return Err(Error::invalid("coboundary of a top-dimensional cochain"));
        }
        let s = self.amb.step();
        let mut out = Cochain::zero(self.amb, self.dim + 1);
        for c in &self.cubes {
            for a in 0..self.amb.coords() {
                if c.extends(a) {
                    continue;
                }
                for shift in [0, s] {
                    let mut root = c.root.clone();
                    root[a] -= shift;
                    let up = Cube::new(root, c.dir | 1 << a);
                    if self.amb.contains_cube(&up) {
                        out.toggle(up);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The cochain taking the value 1 on every vertex.
    pub fn unit(amb: Ambient) -> Cochain {
        Cochain::full(amb, 0)
    }
}

/// ⟨γ, f⟩: parity of the common support.
pub fn pairing(g: &Chain, f: &Cochain) -> Result<bool> {
    if g.amb != f.amb || g.dim != f.dim {
        return Err(Error::invalid("pairing across different spaces"));
    }
    Ok(g.cubes.intersection(&f.cubes).count() % 2 == 1)
}

pub fn cubes_of_dim(amb: Ambient, dim: usize) -> Vec<Cube> {
    amb.cubes(dim)
}
