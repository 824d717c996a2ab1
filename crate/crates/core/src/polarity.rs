//! Polarities `(X, ⊥, Y)`: polar maps, Galois-stable sets, the specialization
//! preorders and the lattice of stable sets.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::check::{tuples, Check};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::sets::PointSet;

/// Default cap on the number of stable sets materialized by [`Polarity::enumerate_stable`].
pub const DEFAULT_MAX_FAMILY: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Y => "Y",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolarityError {
    #[error("universe {0} is empty")]
    EmptyUniverse(Side),
    #[error("point {index} out of range for {side} of size {size}")]
    OutOfRange { side: Side, index: usize, size: usize },
    #[error("{got} names given for {side} of size {size}")]
    NameCount { side: Side, got: usize, size: usize },
    #[error("more than {cap} stable sets")]
    FamilyTooLarge { cap: usize },
    #[error("stable family is not a lattice: {0}")]
    Lattice(#[from] LatticeError),
}

/// A subset of one side of a polarity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisSet {
    pub side: Side,
    pub members: PointSet,
}

/// Two nonempty finite universes and the Galois relation `⊥ ⊆ X × Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarity {
    x_names: Vec<String>,
    y_names: Vec<String>,
    // {x}′ per x and ′{y} per y.
    row: Vec<PointSet>,
    col: Vec<PointSet>,
    // Specialization up-sets: up_x[x] = {z : x ⪯ z}.
    up_x: Vec<PointSet>,
    up_y: Vec<PointSet>,
}

impl Polarity {
    pub fn from_fn(nx: usize, ny: usize, perp: impl Fn(usize, usize) -> bool) -> Result<Self, PolarityError> {
        if nx == 0 {
            return Err(PolarityError::EmptyUniverse(Side::X));
        }
        if ny == 0 {
            return Err(PolarityError::EmptyUniverse(Side::Y));
        }
        let row: Vec<PointSet> = (0..nx).map(|x| PointSet::from_predicate(ny, |y| perp(x, y))).collect();
        let col: Vec<PointSet> = (0..ny).map(|y| PointSet::from_predicate(nx, |x| perp(x, y))).collect();
        let up_x = (0..nx)
            .map(|x| PointSet::from_predicate(nx, |z| row[x].is_subset(&row[z])))
            .collect();
        let up_y = (0..ny)
            .map(|y| PointSet::from_predicate(ny, |v| col[y].is_subset(&col[v])))
            .collect();
        Ok(Polarity {
            x_names: (0..nx).map(|i| format!("x{i}")).collect(),
            y_names: (0..ny).map(|i| format!("y{i}")).collect(),
            row,
            col,
            up_x,
            up_y,
        })
    }

    /// Build from the list of pairs `(x, y)` with `x ⊥ y`.
    pub fn from_pairs(nx: usize, ny: usize, pairs: &[(usize, usize)]) -> Result<Self, PolarityError> {
        for &(x, y) in pairs {
            if x >= nx {
                return Err(PolarityError::OutOfRange { side: Side::X, index: x, size: nx });
            }
            if y >= ny {
                return Err(PolarityError::OutOfRange { side: Side::Y, index: y, size: ny });
            }
        }
        let mut table = vec![vec![false; ny]; nx];
        for &(x, y) in pairs {
            table[x][y] = true;
        }
        Self::from_fn(nx, ny, |x, y| table[x][y])
    }

    pub fn with_names(mut self, xs: Vec<String>, ys: Vec<String>) -> Result<Self, PolarityError> {
        if xs.len() != self.size(Side::X) {
            return Err(PolarityError::NameCount { side: Side::X, got: xs.len(), size: self.size(Side::X) });
        }
        if ys.len() != self.size(Side::Y) {
            return Err(PolarityError::NameCount { side: Side::Y, got: ys.len(), size: self.size(Side::Y) });
        }
        self.x_names = xs;
        self.y_names = ys;
        Ok(self)
    }

    pub fn size(&self, side: Side) -> usize {
        match side {
            Side::X => self.row.len(),
            Side::Y => self.col.len(),
        }
    }

    pub fn names(&self, side: Side) -> &[String] {
        match side {
            Side::X => &self.x_names,
            Side::Y => &self.y_names,
        }
    }

    pub fn index_of(&self, side: Side, name: &str) -> Option<usize> {
        self.names(side).iter().position(|n| n == name)
    }

    #[inline]
    pub fn perp(&self, x: usize, y: usize) -> bool {
        self.row[x].contains(y)
    }

    /// `{u}′`: the points of the other side related to `u`.
    pub fn point_polar(&self, side: Side, u: usize) -> &PointSet {
        match side {
            Side::X => &self.row[u],
            Side::Y => &self.col[u],
        }
    }

    pub fn empty(&self, side: Side) -> PointSet {
        PointSet::empty(self.size(side))
    }

    pub fn full(&self, side: Side) -> PointSet {
        PointSet::full(self.size(side))
    }

    /// `U′` for `U ⊆ X` (side X) or `′V` for `V ⊆ Y` (side Y).
    pub fn polar(&self, side: Side, set: &PointSet) -> PointSet {
        let mut out = self.full(side.opposite());
        for u in set.iter() {
            out.intersect_with(self.point_polar(side, u));
        }
        out
    }

    pub fn polar_right(&self, u: &PointSet) -> PointSet {
        self.polar(Side::X, u)
    }

    pub fn polar_left(&self, v: &PointSet) -> PointSet {
        self.polar(Side::Y, v)
    }

    /// `U″`: stabilization on X, co-stabilization on Y.
    pub fn closure(&self, side: Side, set: &PointSet) -> PointSet {
        self.polar(side.opposite(), &self.polar(side, set))
    }

    pub fn stabilize(&self, side: Side, set: &PointSet) -> GaloisSet {
        GaloisSet { side, members: self.closure(side, set) }
    }

    pub fn is_galois(&self, side: Side, set: &PointSet) -> bool {
        &self.closure(side, set) == set
    }

    pub fn is_stable(&self, set: &PointSet) -> bool {
        self.is_galois(Side::X, set)
    }

    pub fn is_costable(&self, set: &PointSet) -> bool {
        self.is_galois(Side::Y, set)
    }

    /// Specialization preorder: `u ⪯ w` iff `{u}′ ⊆ {w}′` on X and
    /// `′{u} ⊆ ′{w}` on Y.
    #[inline]
    pub fn leq(&self, side: Side, u: usize, w: usize) -> bool {
        self.up(side, u).contains(w)
    }

    fn up(&self, side: Side, u: usize) -> &PointSet {
        match side {
            Side::X => &self.up_x[u],
            Side::Y => &self.up_y[u],
        }
    }

    /// Boolean table of the specialization preorder on one side.
    pub fn specialization_order(&self, side: Side) -> Vec<Vec<bool>> {
        let n = self.size(side);
        (0..n).map(|u| (0..n).map(|w| self.leq(side, u, w)).collect()).collect()
    }

    /// Both preorders antisymmetric; the witness is `[side, u, w]` with
    /// side 0 for X and 1 for Y.
    pub fn check_separated(&self) -> Check {
        let mut checked = 0;
        for (code, side) in [(0, Side::X), (1, Side::Y)] {
            let n = self.size(side);
            for u in 0..n {
                for w in u + 1..n {
                    checked += 1;
                    if self.point_polar(side, u) == self.point_polar(side, w) {
                        return Check::fail("separated", vec![code, u, w], checked);
                    }
                }
            }
        }
        Check::pass("separated", checked)
    }

    pub fn is_separated(&self) -> bool {
        self.check_separated().passed
    }

    /// `Γu = {u}″`.
    pub fn gamma(&self, side: Side, u: usize) -> PointSet {
        self.polar(side.opposite(), self.point_polar(side, u))
    }

    /// Up-closure under the specialization preorder.
    pub fn up_closure(&self, side: Side, set: &PointSet) -> PointSet {
        let mut out = self.empty(side);
        for u in set.iter() {
            out.union_with(self.up(side, u));
        }
        out
    }

    /// Closed elements `Γu` of the Galois sets on `side`, one per point.
    pub fn closed_elements(&self, side: Side) -> Vec<PointSet> {
        (0..self.size(side)).map(|u| self.gamma(side, u)).collect()
    }

    /// Open elements of the Galois sets on `side`: polars of the opposite points.
    pub fn open_elements(&self, side: Side) -> Vec<PointSet> {
        let other = side.opposite();
        (0..self.size(other)).map(|w| self.point_polar(other, w).clone()).collect()
    }

    /// The point `w` of the opposite side with `Γu = {w}′`, if `Γu` is clopen.
    pub fn clopen_witness(&self, side: Side, u: usize) -> Option<usize> {
        let g = self.gamma(side, u);
        let other = side.opposite();
        (0..self.size(other)).find(|&w| self.point_polar(other, w) == &g)
    }

    /// All Galois sets on `side` as the intersection-closure of the open
    /// elements together with the whole side.
    pub fn enumerate_galois(&self, side: Side, cap: usize) -> Result<StableFamily, PolarityError> {
        let full = self.full(side);
        let mut seen: HashMap<PointSet, ()> = HashMap::new();
        seen.insert(full.clone(), ());
        let mut family = vec![full];
        for open in self.open_elements(side) {
            let mut fresh = Vec::new();
            for s in &family {
                let m = s.intersection(&open);
                if !seen.contains_key(&m) {
                    seen.insert(m.clone(), ());
                    fresh.push(m);
                }
            }
            family.extend(fresh);
            if family.len() > cap {
                return Err(PolarityError::FamilyTooLarge { cap });
            }
        }
        family.sort();
        StableFamily::from_sets(side, family)
    }

    pub fn enumerate_stable(&self, cap: usize) -> Result<StableFamily, PolarityError> {
        self.enumerate_galois(Side::X, cap)
    }

    /// Swap the roles of X and Y.
    pub fn dual(&self) -> Polarity {
        Polarity {
            x_names: self.y_names.clone(),
            y_names: self.x_names.clone(),
            row: self.col.clone(),
            col: self.row.clone(),
            up_x: self.up_y.clone(),
            up_y: self.up_x.clone(),
        }
    }

    /// Relabel points; `px[x]` and `py[y]` are the new indices.
    pub fn relabel(&self, px: &[usize], py: &[usize]) -> Result<Polarity, PolarityError> {
        let mut inv_x = vec![0; px.len()];
        for (old, &new) in px.iter().enumerate() {
            inv_x[new] = old;
        }
        let mut inv_y = vec![0; py.len()];
        for (old, &new) in py.iter().enumerate() {
            inv_y[new] = old;
        }
        let p = Polarity::from_fn(px.len(), py.len(), |x, y| self.perp(inv_x[x], inv_y[y]))?;
        let xs = inv_x.iter().map(|&o| self.x_names[o].clone()).collect();
        let ys = inv_y.iter().map(|&o| self.y_names[o].clone()).collect();
        p.with_names(xs, ys)
    }
}

/// The complete lattice of Galois sets on one side of a polarity, indexed
/// by the numeric order of member bit patterns.
#[derive(Clone, Debug)]
pub struct StableFamily {
    side: Side,
    sets: Vec<PointSet>,
    index: HashMap<PointSet, usize>,
    lattice: FiniteLattice,
}

impl StableFamily {
    fn from_sets(side: Side, sets: Vec<PointSet>) -> Result<Self, PolarityError> {
        let order: Vec<Vec<bool>> = sets
            .iter()
            .map(|a| sets.iter().map(|b| a.is_subset(b)).collect())
            .collect();
        let lattice = FiniteLattice::from_order(&order)?
            .with_names((0..sets.len()).map(|i| format!("G{i}")))?;
        let index = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(StableFamily { side, sets, index, lattice })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &PointSet {
        &self.sets[i]
    }

    pub fn index_of(&self, s: &PointSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Order, meet (intersection) and join (closure of union) as a lattice on indices.
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bot()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.lattice.meet(i, j)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.lattice.join(i, j)
    }

    /// Pairs of indices, for exhaustive checks.
    pub fn pairs(&self) -> impl Iterator<Item = Vec<usize>> {
        tuples(self.len(), 2)
    }
}
