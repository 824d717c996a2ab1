//! Sorted relations over a polarity, stored as output sections per input tuple.

use std::fmt;

use crate::check::{mixed_tuples, Check};
use crate::polarity::{Polarity, Side};
use crate::sets::PointSet;

/// Sort of an argument place: `One` ranges over X, `Dual` over Y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    One,
    Dual,
}

impl Sort {
    pub fn side(self) -> Side {
        match self {
            Sort::One => Side::X,
            Sort::Dual => Side::Y,
        }
    }

    pub fn flip(self) -> Sort {
        match self {
            Sort::One => Sort::Dual,
            Sort::Dual => Sort::One,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::One => "1",
            Sort::Dual => "∂",
        })
    }
}

/// An `(n+1)`-ary relation `R ⊆ Z_out × Z_1 × … × Z_n`.
///
/// Position 0 is the output place; tuples passed to [`SortedRelation::contains`]
/// and friends are full `(out, in_1, …, in_n)` tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedRelation {
    sorts: Vec<Sort>,
    dims: Vec<usize>,
    sections: Vec<PointSet>,
}

impl SortedRelation {
    /// The empty relation of sort type `(sorts[0]; sorts[1..])`.
    pub fn empty(p: &Polarity, sorts: &[Sort]) -> Self {
        assert!(!sorts.is_empty(), "a relation needs an output place");
        let dims: Vec<usize> = sorts.iter().map(|s| p.size(s.side())).collect();
        let inputs: usize = dims[1..].iter().product();
        SortedRelation {
            sorts: sorts.to_vec(),
            sections: vec![PointSet::empty(dims[0]); inputs],
            dims,
        }
    }

    pub fn from_fn(p: &Polarity, sorts: &[Sort], mut holds: impl FnMut(&[usize]) -> bool) -> Self {
        let mut r = Self::empty(p, sorts);
        let dims = r.dims.clone();
        for t in mixed_tuples(&dims) {
            if holds(&t) {
                r.insert(&t);
            }
        }
        r
    }

    /// Build from output sections given per input tuple.
    pub fn from_sections(p: &Polarity, sorts: &[Sort], section: impl Fn(&[usize]) -> PointSet) -> Self {
        let mut r = Self::empty(p, sorts);
        let in_dims = r.dims[1..].to_vec();
        for (k, t) in mixed_tuples(&in_dims).enumerate() {
            let s = section(&t);
            assert_eq!(s.universe(), r.dims[0]);
            r.sections[k] = s;
        }
        r
    }

    pub fn sorts(&self) -> &[Sort] {
        &self.sorts
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arity(&self) -> usize {
        self.sorts.len()
    }

    fn offset(&self, inputs: &[usize]) -> usize {
        debug_assert_eq!(inputs.len() + 1, self.dims.len());
        inputs
            .iter()
            .zip(&self.dims[1..])
            .fold(0, |acc, (&i, &d)| {
                debug_assert!(i < d);
                acc * d + i
            })
    }

    pub fn insert(&mut self, tuple: &[usize]) {
        let k = self.offset(&tuple[1..]);
        self.sections[k].insert(tuple[0]);
    }

    pub fn remove(&mut self, tuple: &[usize]) {
        let k = self.offset(&tuple[1..]);
        self.sections[k].remove(tuple[0]);
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.sections[self.offset(&tuple[1..])].contains(tuple[0])
    }

    /// Output section `R v⃗` for an input tuple.
    pub fn section(&self, inputs: &[usize]) -> &PointSet {
        &self.sections[self.offset(inputs)]
    }

    /// The section at place `k` (0 is the output): all `v` with
    /// `tuple[k := v]` in the relation. `tuple[k]` itself is ignored.
    pub fn section_at(&self, k: usize, tuple: &[usize]) -> PointSet {
        if k == 0 {
            return self.section(&tuple[1..]).clone();
        }
        let mut t = tuple.to_vec();
        PointSet::from_predicate(self.dims[k], |v| {
            t[k] = v;
            self.contains(&t)
        })
    }

    /// All member tuples in lexicographic order.
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        mixed_tuples(&self.dims).filter(|t| self.contains(t)).collect()
    }

    pub fn len(&self) -> usize {
        self.sections.iter().map(PointSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.iter().all(PointSet::is_empty)
    }

    /// `R′`: same input sorts, flipped output sort, `R′v⃗ = (Rv⃗)′`.
    pub fn galois_dual(&self, p: &Polarity) -> SortedRelation {
        let out = self.sorts[0];
        let mut sorts = self.sorts.clone();
        sorts[0] = out.flip();
        let mut dims = self.dims.clone();
        dims[0] = p.size(sorts[0].side());
        SortedRelation {
            sections: self.sections.iter().map(|s| p.polar(out.side(), s)).collect(),
            sorts,
            dims,
        }
    }

    /// Argument permutation: place `i` of the result is place `perm[i]` of `self`.
    pub fn permute(&self, p: &Polarity, perm: &[usize]) -> SortedRelation {
        assert_eq!(perm.len(), self.arity());
        let sorts: Vec<Sort> = perm.iter().map(|&i| self.sorts[i]).collect();
        let mut out = SortedRelation::empty(p, &sorts);
        let mut old = vec![0; perm.len()];
        for t in self.tuples() {
            for (i, &j) in perm.iter().enumerate() {
                old[i] = t[j];
            }
            out.insert(&old);
        }
        out
    }

    /// Every section at each requested place is a Galois set of its sort.
    /// The witness is `[k, tuple...]` with the hole entry set to 0.
    pub fn check_sections_galois(&self, p: &Polarity, places: &[usize], name: &str) -> Check {
        let mut checked = 0;
        for &k in places {
            let mut others = self.dims.clone();
            others[k] = 1;
            let side = self.sorts[k].side();
            for t in mixed_tuples(&others) {
                checked += 1;
                let s = self.section_at(k, &t);
                if !p.is_galois(side, &s) {
                    let mut w = vec![k];
                    w.extend(t);
                    return Check::fail(name, w, checked);
                }
            }
        }
        Check::pass(name, checked)
    }
}
