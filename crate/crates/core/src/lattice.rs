//! Finite bounded lattices with an implication table, and exhaustive checkers
//! for the implicative, distributive, Heyting and residuated axiom systems.
//!
//! Elements are dense indices `0..n`. Every table is total, so each axiom is
//! checked by plain enumeration of argument tuples in lexicographic order and
//! the first counterexample is returned as the witness.

use thiserror::Error;

use crate::check::{tuples, Check};
use crate::sets::PointSet;

pub type Elem = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosetLaw {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("order table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("{} names given for {expected} elements", .got)]
    NameCount { got: usize, expected: usize },
    #[error("not a partial order: {law:?} fails at {witness:?}")]
    NotAPoset { law: PosetLaw, witness: Vec<Elem> },
    #[error("not a lattice: elements {a} and {b} have no {missing:?}")]
    NotALattice { a: Elem, b: Elem, missing: Bound },
    #[error("order has no bottom or no top")]
    Unbounded,
    #[error("lattice has no implication table")]
    MissingArrow,
    #[error("implication table must have {expected} entries in 0..{n}")]
    BadArrow { expected: usize, n: usize },
    #[error("meet has no residual: the candidate for {a} -> {b} fails residuation")]
    NotResiduated { a: Elem, b: Elem },
}

/// A bounded lattice on `0..n` with order, meet and join tables and an
/// optional implication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    down: Vec<PointSet>,
    up: Vec<PointSet>,
    bot: Elem,
    top: Elem,
    arrow: Option<Vec<Elem>>,
}

impl FiniteLattice {
    /// Validate an order table and compute meets, joins and bounds.
    pub fn from_order(order: &[Vec<bool>]) -> Result<Self, LatticeError> {
        let n = order.len();
        for (row, r) in order.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::NotSquare { row, len: r.len(), expected: n });
            }
        }
        for a in 0..n {
            if !order[a][a] {
                return Err(LatticeError::NotAPoset {
                    law: PosetLaw::Reflexivity,
                    witness: vec![a],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && order[a][b] && order[b][a] {
                    return Err(LatticeError::NotAPoset {
                        law: PosetLaw::Antisymmetry,
                        witness: vec![a, b],
                    });
                }
            }
        }
        let down: Vec<PointSet> = (0..n).map(|a| PointSet::from_predicate(n, |b| order[b][a])).collect();
        let up: Vec<PointSet> = (0..n).map(|a| PointSet::from_predicate(n, |b| order[a][b])).collect();
        for a in 0..n {
            for b in up[a].iter() {
                if !up[b].is_subset(&up[a]) {
                    let c = up[b].iter().find(|&c| !up[a].contains(c)).unwrap_or(b);
                    return Err(LatticeError::NotAPoset {
                        law: PosetLaw::Transitivity,
                        witness: vec![a, b, c],
                    });
                }
            }
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = down[a].intersection(&down[b]);
                let glb = lower
                    .iter()
                    .find(|&g| down[g] == lower)
                    .ok_or(LatticeError::NotALattice { a, b, missing: Bound::Meet })?;
                let upper = up[a].intersection(&up[b]);
                let lub = upper
                    .iter()
                    .find(|&g| up[g] == upper)
                    .ok_or(LatticeError::NotALattice { a, b, missing: Bound::Join })?;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
            }
        }
        let bot = (0..n).find(|&a| up[a].is_full()).ok_or(LatticeError::Unbounded)?;
        let top = (0..n).find(|&a| down[a].is_full()).ok_or(LatticeError::Unbounded)?;
        Ok(FiniteLattice {
            names: (0..n).map(|i| i.to_string()).collect(),
            leq: order.iter().flatten().copied().collect(),
            meet,
            join,
            down,
            up,
            bot,
            top,
            arrow: None,
        })
    }

    /// Build from covering or generating pairs `(a, b)` meaning `a <= b`; the
    /// reflexive-transitive closure is taken.
    pub fn from_pairs(n: usize, pairs: &[(Elem, Elem)]) -> Result<Self, LatticeError> {
        let mut order = vec![vec![false; n]; n];
        for (a, row) in order.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            order[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if order[i][k] {
                    for j in 0..n {
                        if order[k][j] {
                            order[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(&order)
    }

    pub fn with_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Result<Self, LatticeError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.len() {
            return Err(LatticeError::NameCount { got: names.len(), expected: self.len() });
        }
        self.names = names;
        Ok(self)
    }

    /// Attach an implication table in row-major order (`table[a * n + b]` is `a -> b`).
    pub fn with_arrow(mut self, table: Vec<Elem>) -> Result<Self, LatticeError> {
        let n = self.len();
        if table.len() != n * n || table.iter().any(|&c| c >= n) {
            return Err(LatticeError::BadArrow { expected: n * n, n });
        }
        self.arrow = Some(table);
        Ok(self)
    }

    pub fn with_arrow_fn(self, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self, LatticeError> {
        let n = self.len();
        let table = tuples(n, 2).map(|t| f(t[0], t[1])).collect();
        self.with_arrow(table)
    }

    /// Attach the residual of meet as the implication (Heyting arrow).
    pub fn with_residual_arrow(self) -> Result<Self, LatticeError> {
        let table = self.residual_arrow()?;
        self.with_arrow(table)
    }

    pub fn without_arrow(mut self) -> Self {
        self.arrow = None;
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elems(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Principal down-set `↓a`.
    pub fn down(&self, a: Elem) -> &PointSet {
        &self.down[a]
    }

    /// Principal up-set `↑a`.
    pub fn up(&self, a: Elem) -> &PointSet {
        &self.up[a]
    }

    pub fn meet_all(&self, s: &PointSet) -> Elem {
        s.iter().fold(self.top, |acc, a| self.meet(acc, a))
    }

    pub fn join_all(&self, s: &PointSet) -> Elem {
        s.iter().fold(self.bot, |acc, a| self.join(acc, a))
    }

    pub fn has_arrow(&self) -> bool {
        self.arrow.is_some()
    }

    pub fn arrow_table(&self) -> Option<&[Elem]> {
        self.arrow.as_deref()
    }

    pub fn arrow(&self, a: Elem, b: Elem) -> Result<Elem, LatticeError> {
        self.arrow
            .as_ref()
            .map(|t| t[a * self.len() + b])
            .ok_or(LatticeError::MissingArrow)
    }

    #[inline]
    fn imp(&self, t: &[Elem], a: Elem, b: Elem) -> Elem {
        t[a * self.len() + b]
    }

    fn arrow_or_err(&self) -> Result<&[Elem], LatticeError> {
        self.arrow.as_deref().ok_or(LatticeError::MissingArrow)
    }

    /// Lattice laws (commutativity, associativity, idempotence, absorption)
    /// of the computed tables, and the bound laws.
    pub fn check_lattice_laws(&self) -> Check {
        let n = self.len();
        Check::forall("lattice-laws", tuples(n, 3), |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            self.meet(a, b) == self.meet(b, a)
                && self.join(a, b) == self.join(b, a)
                && self.meet(a, self.meet(b, c)) == self.meet(self.meet(a, b), c)
                && self.join(a, self.join(b, c)) == self.join(self.join(a, b), c)
                && self.meet(a, a) == a
                && self.join(a, a) == a
                && self.meet(a, self.join(a, b)) == a
                && self.join(a, self.meet(a, b)) == a
                && self.leq(self.bot, a)
                && self.leq(a, self.top)
        })
    }

    /// A1, A2 and A3.
    pub fn check_implicative(&self) -> Result<ImplicativeReport, LatticeError> {
        let t = self.arrow_or_err()?;
        let n = self.len();
        let a1 = Check::forall("A1", tuples(n, 3), |v| {
            let (a, b, c) = (v[0], v[1], v[2]);
            self.imp(t, self.join(a, b), c) == self.meet(self.imp(t, a, c), self.imp(t, b, c))
        });
        let a2 = Check::forall("A2", tuples(n, 3), |v| {
            let (a, b, c) = (v[0], v[1], v[2]);
            self.imp(t, a, self.meet(b, c)) == self.meet(self.imp(t, a, b), self.imp(t, a, c))
        });
        let a3 = Check::forall("A3", tuples(n, 2), |v| {
            let (a, b) = (v[0], v[1]);
            self.leq(a, b) == self.leq(self.top, self.imp(t, a, b))
        });
        Ok(ImplicativeReport { a1, a2, a3 })
    }

    /// A4.
    pub fn check_distributive(&self) -> Check {
        Check::forall("A4", tuples(self.len(), 3), |v| {
            let (a, b, c) = (v[0], v[1], v[2]);
            self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
        })
    }

    /// H1 and H2.
    pub fn check_heyting(&self) -> Result<HeytingReport, LatticeError> {
        let t = self.arrow_or_err()?;
        let n = self.len();
        let h1 = Check::forall("H1", tuples(n, 2), |v| {
            let (a, b) = (v[0], v[1]);
            self.leq(self.meet(a, self.imp(t, a, b)), b)
        });
        let h2 = Check::forall("H2", tuples(n, 2), |v| {
            let (a, b) = (v[0], v[1]);
            self.leq(b, self.imp(t, a, self.meet(a, b)))
        });
        Ok(HeytingReport { h1, h2 })
    }

    /// The residual of meet: `a -> b` is the join of `{c : a ∧ c <= b}`,
    /// accepted only if it satisfies `a ∧ c <= b ⇔ c <= a -> b` for all `c`.
    pub fn residual_arrow(&self) -> Result<Vec<Elem>, LatticeError> {
        let n = self.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let cand = (0..n)
                    .filter(|&c| self.leq(self.meet(a, c), b))
                    .fold(self.bot, |acc, c| self.join(acc, c));
                if (0..n).any(|c| self.leq(self.meet(a, c), b) != self.leq(c, cand)) {
                    return Err(LatticeError::NotResiduated { a, b });
                }
                table.push(cand);
            }
        }
        Ok(table)
    }

    /// `a^n -> b`: `a^0 -> b = b`, `a^(k+1) -> b = a -> (a^k -> b)`.
    pub fn iter_arrow(&self, a: Elem, b: Elem, n: usize) -> Result<Elem, LatticeError> {
        let t = self.arrow_or_err()?;
        Ok((0..n).fold(b, |acc, _| self.imp(t, a, acc)))
    }

    /// The axiom `a^(n+1) -> b <= a^n -> b` over all pairs.
    pub fn check_an(&self, n: usize) -> Result<Check, LatticeError> {
        let t = self.arrow_or_err()?;
        let size = self.len();
        Ok(Check::forall(format!("A_{n}"), tuples(size, 2), |v| {
            let (a, b) = (v[0], v[1]);
            let lower = (0..n).fold(b, |acc, _| self.imp(t, a, acc));
            let upper = self.imp(t, a, lower);
            self.leq(upper, lower)
        }))
    }

    /// All filters (nonempty, up-closed, meet-closed), sorted by carrier.
    pub fn enumerate_filters(&self, proper_only: bool) -> Vec<Filter> {
        self.enumerate_closed(Kind::Filter, proper_only)
    }

    /// All ideals (nonempty, down-closed, join-closed), sorted by carrier.
    pub fn enumerate_ideals(&self, proper_only: bool) -> Vec<Filter> {
        self.enumerate_closed(Kind::Ideal, proper_only)
    }

    fn enumerate_closed(&self, kind: Kind, proper_only: bool) -> Vec<Filter> {
        let n = self.len();
        // Decide elements from the outer end inward so the up- (down-)closure
        // constraint of each element only mentions already-decided elements.
        let mut order: Vec<Elem> = self.elems().collect();
        match kind {
            Kind::Filter => order.sort_by_key(|&a| self.up[a].len()),
            Kind::Ideal => order.sort_by_key(|&a| self.down[a].len()),
        }
        let mut out = Vec::new();
        let mut current = PointSet::empty(n);
        self.scan(kind, &order, 0, &mut current, &mut out);
        let mut filters: Vec<Filter> = out
            .into_iter()
            .filter(|s| !proper_only || !s.is_full())
            .map(|carrier| Filter {
                proper: !carrier.is_full(),
                carrier,
                kind,
            })
            .collect();
        filters.sort_by(|a, b| a.carrier.cmp(&b.carrier));
        filters
    }

    fn scan(&self, kind: Kind, order: &[Elem], i: usize, cur: &mut PointSet, out: &mut Vec<PointSet>) {
        if i == order.len() {
            if !cur.is_empty() && self.op_closed(kind, cur) {
                out.push(cur.clone());
            }
            return;
        }
        let e = order[i];
        self.scan(kind, order, i + 1, cur, out);
        let beyond = match kind {
            Kind::Filter => &self.up[e],
            Kind::Ideal => &self.down[e],
        };
        let mut needed = beyond.clone();
        needed.remove(e);
        if needed.is_subset(cur) {
            cur.insert(e);
            self.scan(kind, order, i + 1, cur, out);
            cur.remove(e);
        }
    }

    fn op_closed(&self, kind: Kind, s: &PointSet) -> bool {
        s.iter().all(|a| {
            s.iter().all(|b| match kind {
                Kind::Filter => s.contains(self.meet(a, b)),
                Kind::Ideal => s.contains(self.join(a, b)),
            })
        })
    }

    /// Filter generated by a set; in a finite lattice this is `↑⋀s`.
    pub fn filter_generated(&self, s: &PointSet) -> PointSet {
        self.up[self.meet_all(s)].clone()
    }

    /// Ideal generated by a set; in a finite lattice this is `↓⋁s`.
    pub fn ideal_generated(&self, s: &PointSet) -> PointSet {
        self.down[self.join_all(s)].clone()
    }

    /// Order-isomorphism search. Returns `map` with `map[a]` the image in `other`.
    pub fn find_isomorphism(&self, other: &FiniteLattice) -> Option<Vec<Elem>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |l: &FiniteLattice, a: Elem| (l.down[a].len(), l.up[a].len());
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            l: &FiniteLattice,
            r: &FiniteLattice,
            sig: &dyn Fn(&FiniteLattice, Elem) -> (usize, usize),
            map: &mut Vec<Elem>,
            used: &mut Vec<bool>,
        ) -> bool {
            let n = l.len();
            if i == n {
                return true;
            }
            for cand in 0..n {
                if used[cand] || sig(l, i) != sig(r, cand) {
                    continue;
                }
                let consistent = (0..i).all(|j| {
                    l.leq(i, j) == r.leq(cand, map[j]) && l.leq(j, i) == r.leq(map[j], cand)
                });
                if consistent {
                    map[i] = cand;
                    used[cand] = true;
                    if go(i + 1, l, r, sig, map, used) {
                        return true;
                    }
                    used[cand] = false;
                }
            }
            false
        }
        go(0, self, other, &sig, &mut map, &mut used).then_some(map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicativeReport {
    pub a1: Check,
    pub a2: Check,
    pub a3: Check,
}

impl ImplicativeReport {
    pub fn passed(&self) -> bool {
        self.a1.passed && self.a2.passed && self.a3.passed
    }

    pub fn checks(&self) -> [&Check; 3] {
        [&self.a1, &self.a2, &self.a3]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeytingReport {
    pub h1: Check,
    pub h2: Check,
}

impl HeytingReport {
    pub fn passed(&self) -> bool {
        self.h1.passed && self.h2.passed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Filter,
    Ideal,
}

/// A filter or ideal of a finite lattice, by carrier set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter {
    pub carrier: PointSet,
    pub kind: Kind,
    pub proper: bool,
}

/// A lattice with a residuated triple `(∘, \, /)`.
///
/// Tables are row-major: `circ[a * n + b] = a ∘ b`, `under[a * n + c] = a \ c`
/// and `over[c * n + b] = c / b`.
#[derive(Clone, Debug)]
pub struct ResiduatedTriple {
    pub base: FiniteLattice,
    pub circ: Vec<Elem>,
    pub under: Vec<Elem>,
    pub over: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct ResiduatedReport {
    /// `a∘b <= c ⇔ b <= a\c ⇔ a <= c/b`.
    pub residuation: Check,
    /// `a∘1 = a`.
    pub right_unit: Check,
    /// `1∘a = a`.
    pub left_unit: Check,
    pub distributive: Check,
    /// `(L, \)` satisfies A1–A3.
    pub under_implicative: ImplicativeReport,
    /// H1/H2 of the base arrow, when the base has one.
    pub heyting: Option<HeytingReport>,
}

impl ResiduatedReport {
    /// Residuated with the top as two-sided unit.
    pub fn integral_residuated(&self) -> bool {
        self.residuation.passed && self.right_unit.passed && self.left_unit.passed
    }

    /// Heyting base, distributive integral residuated lattice, and an
    /// integral implicative `\`-reduct.
    pub fn residuated_heyting(&self) -> bool {
        self.integral_residuated()
            && self.distributive.passed
            && self.under_implicative.passed()
            && self.heyting.as_ref().is_some_and(HeytingReport::passed)
    }

    pub fn checks(&self) -> Vec<&Check> {
        let mut v = vec![&self.residuation, &self.right_unit, &self.left_unit, &self.distributive];
        v.extend(self.under_implicative.checks());
        if let Some(h) = &self.heyting {
            v.push(&h.h1);
            v.push(&h.h2);
        }
        v
    }
}

impl ResiduatedTriple {
    pub fn check(&self) -> ResiduatedReport {
        let l = &self.base;
        let n = l.len();
        let at = |t: &[Elem], i: Elem, j: Elem| t[i * n + j];
        let residuation = Check::forall("residuation", tuples(n, 3), |v| {
            let (a, b, c) = (v[0], v[1], v[2]);
            let lhs = l.leq(at(&self.circ, a, b), c);
            let mid = l.leq(b, at(&self.under, a, c));
            let rhs = l.leq(a, at(&self.over, c, b));
            lhs == mid && mid == rhs
        });
        let right_unit = Check::forall("right-unit", tuples(n, 1), |v| at(&self.circ, v[0], l.top()) == v[0]);
        let left_unit = Check::forall("left-unit", tuples(n, 1), |v| at(&self.circ, l.top(), v[0]) == v[0]);
        let under_lattice = l.clone().with_arrow(self.under.clone()).expect("under table has lattice shape");
        let under_implicative = under_lattice
            .check_implicative()
            .expect("arrow was just attached");
        let heyting = l.check_heyting().ok();
        ResiduatedReport {
            residuation,
            right_unit,
            left_unit,
            distributive: l.check_distributive(),
            under_implicative,
            heyting,
        }
    }
}
