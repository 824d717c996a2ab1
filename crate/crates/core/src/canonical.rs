//! Canonical filter-ideal frames of finite implicative lattices and the
//! checks that the lattice is represented by their stable sets.

use thiserror::Error;

use crate::check::{mixed_tuples, tuples, Check};
use crate::frame::{FrameError, ImplicativeFrame, T_SORT};
use crate::lattice::{Elem, FiniteLattice, LatticeError, ResiduatedReport};
use crate::polarity::{Polarity, Side};
use crate::relation::{Sort, SortedRelation};
use crate::sets::PointSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("lattice is not implicative: {0}")]
    NotImplicative(Check),
    #[error("lattice is not a Heyting algebra: {0}")]
    NotHeyting(Check),
    #[error("verification failed: {0}")]
    VerificationFailure(Check),
    #[error("x ⇝ v may be the improper ideal; rebuild with all points")]
    RequiresImproper,
}

/// A named list of checks.
#[derive(Clone, Debug)]
pub struct Verification {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// `Ok(self)` if every check passed, else the first failure.
    pub fn into_result(self) -> Result<Self, CanonicalError> {
        match self.first_failure() {
            Some(c) => Err(CanonicalError::VerificationFailure(c.clone())),
            None => Ok(self),
        }
    }
}

/// Filters `X`, ideals `Y`, `x ⊥ y` iff `x ∩ y ≠ ∅`, and
/// `y T x v` iff `a → b ∈ y` for all `a ∈ x`, `b ∈ v`.
#[derive(Clone, Debug)]
pub struct CanonicalFrame {
    source: FiniteLattice,
    proper_only: bool,
    filters: Vec<PointSet>,
    ideals: Vec<PointSet>,
    frame: ImplicativeFrame,
    filt_index: Vec<Option<usize>>,
    idl_index: Vec<Option<usize>>,
}

impl CanonicalFrame {
    /// Build and check the frame axioms.
    pub fn build(l: &FiniteLattice, proper_only: bool) -> Result<Self, CanonicalError> {
        let imp = l.check_implicative()?;
        if let Some(bad) = imp.checks().into_iter().find(|c| !c.passed) {
            return Err(CanonicalError::NotImplicative(bad.clone()));
        }
        let filters: Vec<PointSet> = l.enumerate_filters(proper_only).into_iter().map(|f| f.carrier).collect();
        let ideals: Vec<PointSet> = l.enumerate_ideals(proper_only).into_iter().map(|f| f.carrier).collect();
        let (nx, ny) = (filters.len(), ideals.len());

        let filt_index: Vec<Option<usize>> = l.elems().map(|a| filters.iter().position(|f| f == l.up(a))).collect();
        let idl_index: Vec<Option<usize>> = l.elems().map(|a| ideals.iter().position(|i| i == l.down(a))).collect();
        let name_of = |prefix: &str, i: usize, index: &[Option<usize>]| match index.iter().position(|&p| p == Some(i)) {
            Some(a) => format!("{prefix}_{}", l.name(a)),
            None => format!("{prefix}{i}"),
        };
        let x_names = (0..nx).map(|i| name_of("x", i, &filt_index)).collect();
        let y_names = (0..ny).map(|i| name_of("y", i, &idl_index)).collect();

        let polarity = Polarity::from_fn(nx, ny, |x, y| filters[x].intersects(&ideals[y]))
            .and_then(|p| p.with_names(x_names, y_names))
            .map_err(FrameError::from)?;
        let arrow = l.arrow_table().ok_or(LatticeError::MissingArrow)?;
        let n = l.len();
        let t = SortedRelation::from_fn(&polarity, &T_SORT, |w| {
            let (y, x, v) = (&ideals[w[0]], &filters[w[1]], &ideals[w[2]]);
            x.iter().all(|a| v.iter().all(|b| y.contains(arrow[a * n + b])))
        });
        let frame = ImplicativeFrame::new(polarity, t)?;
        if let Some(bad) = frame.check_axioms().first_failure() {
            return Err(CanonicalError::VerificationFailure(bad.clone()));
        }
        Ok(CanonicalFrame {
            source: l.clone(),
            proper_only,
            filters,
            ideals,
            frame,
            filt_index,
            idl_index,
        })
    }

    pub fn source(&self) -> &FiniteLattice {
        &self.source
    }

    pub fn proper_only(&self) -> bool {
        self.proper_only
    }

    pub fn frame(&self) -> &ImplicativeFrame {
        &self.frame
    }

    pub fn polarity(&self) -> &Polarity {
        self.frame.polarity()
    }

    pub fn filters(&self) -> &[PointSet] {
        &self.filters
    }

    pub fn ideals(&self) -> &[PointSet] {
        &self.ideals
    }

    /// The point `x_a = ↑a`, absent for `a = 0` in proper-only mode.
    pub fn filter_point(&self, a: Elem) -> Option<usize> {
        self.filt_index[a]
    }

    /// The point `y_a = ↓a`, absent for `a = 1` in proper-only mode.
    pub fn ideal_point(&self, a: Elem) -> Option<usize> {
        self.idl_index[a]
    }

    /// `X_a = {x : a ∈ x}`.
    pub fn rep_x(&self, a: Elem) -> PointSet {
        PointSet::from_predicate(self.filters.len(), |x| self.filters[x].contains(a))
    }

    /// `Y^a = {y : a ∈ y}`.
    pub fn rep_y(&self, a: Elem) -> PointSet {
        PointSet::from_predicate(self.ideals.len(), |y| self.ideals[y].contains(a))
    }

    /// `x ⇝ v = ↓⋁ {a → b : a ∈ x, b ∈ v}` as an ideal point.
    pub fn leadsto(&self, x: usize, v: usize) -> Result<usize, CanonicalError> {
        if self.proper_only {
            return Err(CanonicalError::RequiresImproper);
        }
        let l = &self.source;
        let mut j = l.bot();
        for a in self.filters[x].iter() {
            for b in self.ideals[v].iter() {
                j = l.join(j, l.arrow(a, b)?);
            }
        }
        Ok(self.idl_index[j].expect("all principal ideals are points"))
    }

    /// Filter join `↑(⋀x ∧ ⋀u)` as a carrier; may be the whole lattice.
    pub fn filter_join(&self, x: usize, u: usize) -> PointSet {
        let l = &self.source;
        l.up(l.meet(l.meet_all(&self.filters[x]), l.meet_all(&self.filters[u]))).clone()
    }

    /// `x R_∧ u z` iff `a ∧ b ∈ x` for all `a ∈ u`, `b ∈ z`.
    pub fn canonical_r_meet(&self) -> SortedRelation {
        let l = &self.source;
        let f = &self.filters;
        SortedRelation::from_fn(self.polarity(), &[Sort::One, Sort::One, Sort::One], |w| {
            f[w[1]].iter().all(|a| f[w[2]].iter().all(|b| f[w[0]].contains(l.meet(a, b))))
        })
    }

    /// `a ↦ X_a` is a lattice isomorphism onto the stable sets, and
    /// `a ↦ Y^a` a dual isomorphism onto the co-stable sets.
    pub fn verify_lattice_rep(&self, cap: usize) -> Result<Verification, CanonicalError> {
        let l = &self.source;
        let p = self.polarity();
        let n = l.len();
        let family = self.frame.stable_family(cap)?;
        let cofamily = p.enumerate_galois(Side::Y, cap).map_err(FrameError::from)?;
        let xs: Vec<PointSet> = l.elems().map(|a| self.rep_x(a)).collect();
        let ys: Vec<PointSet> = l.elems().map(|a| self.rep_y(a)).collect();

        let size = |name: &str, got: usize| {
            if got == n {
                Check::pass(name, 1)
            } else {
                Check::fail(name, vec![got, n], 1)
            }
        };
        let checks = vec![
            size("stable-count", family.len()),
            Check::forall("X_a-stable", tuples(n, 1), |t| p.is_stable(&xs[t[0]])),
            Check::forall("injective", tuples(n, 2), |t| t[0] == t[1] || xs[t[0]] != xs[t[1]]),
            Check::forall("surjective", tuples(family.len(), 1), |t| xs.contains(family.set(t[0]))),
            Check::forall("order", tuples(n, 2), |t| l.leq(t[0], t[1]) == xs[t[0]].is_subset(&xs[t[1]])),
            Check::forall("meet", tuples(n, 2), |t| xs[l.meet(t[0], t[1])] == xs[t[0]].intersection(&xs[t[1]])),
            Check::forall("join", tuples(n, 2), |t| {
                xs[l.join(t[0], t[1])] == p.closure(Side::X, &xs[t[0]].union(&xs[t[1]]))
            }),
            Check::forall("bottom", tuples(1, 1), |_| &xs[l.bot()] == family.set(family.bottom())),
            Check::forall("top", tuples(1, 1), |_| xs[l.top()].is_full()),
            size("costable-count", cofamily.len()),
            Check::forall("Y^a-costable", tuples(n, 1), |t| p.is_costable(&ys[t[0]])),
            Check::forall("dual-order", tuples(n, 2), |t| l.leq(t[0], t[1]) == ys[t[1]].is_subset(&ys[t[0]])),
            Check::forall("dual-meet", tuples(n, 2), |t| ys[l.join(t[0], t[1])] == ys[t[0]].intersection(&ys[t[1]])),
            Check::forall("dual-join", tuples(n, 2), |t| {
                ys[l.meet(t[0], t[1])] == p.closure(Side::Y, &ys[t[0]].union(&ys[t[1]]))
            }),
        ];
        Ok(Verification { name: "lattice-representation".into(), checks })
    }

    /// `X_a ⇒ X_b = X_{a→b}` and the point characterizations of `T` and `T′`.
    pub fn verify_implicative_rep(&self) -> Result<Verification, CanonicalError> {
        let l = &self.source;
        let n = l.len();
        let f = &self.frame;
        let (nx, ny) = (f.size(Side::X), f.size(Side::Y));
        let arrow = l.arrow_table().ok_or(LatticeError::MissingArrow)?;
        let xs: Vec<PointSet> = l.elems().map(|a| self.rep_x(a)).collect();
        let checks = vec![
            Check::forall("X_a⇒X_b", tuples(n, 2), |t| f.implies(&xs[t[0]], &xs[t[1]]) == xs[arrow[t[0] * n + t[1]]]),
            // [u, a, b]
            Check::forall("T′-principal", mixed_tuples(&[nx, n, n]), |t| {
                let (u, a, b) = (t[0], t[1], t[2]);
                match (self.filt_index[a], self.idl_index[b]) {
                    (Some(x), Some(v)) => f.t_dual().contains(&[u, x, v]) == self.filters[u].contains(arrow[a * n + b]),
                    _ => true,
                }
            }),
            // [y, a, b]
            Check::forall("T-principal", mixed_tuples(&[ny, n, n]), |t| {
                let (y, a, b) = (t[0], t[1], t[2]);
                match (self.filt_index[a], self.idl_index[b]) {
                    (Some(x), Some(v)) => f.t().contains(&[y, x, v]) == self.ideals[y].contains(arrow[a * n + b]),
                    _ => true,
                }
            }),
            Check::forall("T′-exists", mixed_tuples(&[nx, nx, ny]), |t| {
                let (u, x, v) = (t[0], t[1], t[2]);
                let witnessed = self.filters[x]
                    .iter()
                    .any(|a| self.ideals[v].iter().any(|b| self.filters[u].contains(arrow[a * n + b])));
                f.t_dual().contains(t) == witnessed
            }),
        ];
        Ok(Verification { name: "implicative-representation".into(), checks })
    }

    /// `R_∧` equals the upper-bound relation `R_≤`.
    pub fn verify_upper_bound(&self) -> Verification {
        let r_meet = self.canonical_r_meet();
        let d = self.frame.derive_relations();
        let nx = self.frame.size(Side::X);
        let checks = vec![
            Check::forall("R∧=R≤", tuples(nx, 3), |t| r_meet.contains(t) == d.r_leq.contains(t)),
            Check::forall("R∧-reflexive", tuples(nx, 1), |t| r_meet.contains(&[t[0], t[0], t[0]])),
        ];
        Verification { name: "upper-bound".into(), checks }
    }

    /// For a Heyting source: the frame is a Heyting frame, `uT′xy` iff
    /// `(x ∨ u) ⊥ y`, `Γu ∩ Γx = Γ(x ∨ u)`, `⦿ = ∩` and `⇒` is the
    /// Kripke implication.
    pub fn verify_heyting_canonical(&self, cap: usize) -> Result<Verification, CanonicalError> {
        let h = self.source.check_heyting()?;
        if let Some(bad) = [&h.h1, &h.h2].into_iter().find(|c| !c.passed) {
            return Err(CanonicalError::NotHeyting(bad.clone()));
        }
        let f = &self.frame;
        let p = f.polarity();
        let (nx, ny) = (f.size(Side::X), f.size(Side::Y));
        let d = f.derive_relations();
        let hf = f.check_heyting_frame(&d);
        let joins: Vec<PointSet> = tuples(nx, 2).map(|t| self.filter_join(t[0], t[1])).collect();
        let gammas = p.closed_elements(Side::X);
        let family = f.stable_family(cap)?;
        let sets = family.sets();
        let checks = vec![
            hf.r111_equals_rleq,
            // [x, u, y]
            Check::forall("kernel", mixed_tuples(&[nx, nx, ny]), |t| {
                let (x, u, y) = (t[0], t[1], t[2]);
                f.t_dual().contains(&[u, x, y]) == joins[x * nx + u].intersects(&self.ideals[y])
            }),
            Check::forall("Γu∩Γx=Γ(x∨u)", tuples(nx, 2), |t| {
                let j = &joins[t[0] * nx + t[1]];
                let above = PointSet::from_predicate(nx, |z| j.is_subset(&self.filters[z]));
                gammas[t[1]].intersection(&gammas[t[0]]) == above
            }),
            Check::forall("⦿=∩", family.pairs(), |t| {
                f.overt(&d, &sets[t[0]], &sets[t[1]]) == sets[t[0]].intersection(&sets[t[1]])
            }),
            Check::forall("⇒=kripke", family.pairs(), |t| {
                f.implies(&sets[t[0]], &sets[t[1]]) == f.kripke_implies(&sets[t[0]], &sets[t[1]])
            }),
        ];
        Ok(Verification { name: "heyting-canonical".into(), checks })
    }

    /// `ℬ = {X_a}` and `𝒞 = {Y^a}` are meet-closed and dually isomorphic
    /// through the polars; stable sets are joins of closed elements, meets of
    /// open elements and joins of basis members.
    pub fn verify_basis(&self, cap: usize) -> Result<Verification, CanonicalError> {
        let l = &self.source;
        let n = l.len();
        let p = self.polarity();
        let xs: Vec<PointSet> = l.elems().map(|a| self.rep_x(a)).collect();
        let ys: Vec<PointSet> = l.elems().map(|a| self.rep_y(a)).collect();
        let family = self.frame.stable_family(cap)?;
        let gammas = p.closed_elements(Side::X);
        let opens = p.open_elements(Side::X);
        let checks = vec![
            Check::forall("X_a∩X_b=X_{a∧b}", tuples(n, 2), |t| xs[t[0]].intersection(&xs[t[1]]) == xs[l.meet(t[0], t[1])]),
            Check::forall("Y^a∩Y^b=Y^{a∨b}", tuples(n, 2), |t| ys[t[0]].intersection(&ys[t[1]]) == ys[l.join(t[0], t[1])]),
            Check::forall("polars", tuples(n, 1), |t| {
                let a = t[0];
                p.polar(Side::X, &xs[a]) == ys[a] && p.polar(Side::Y, &ys[a]) == xs[a]
            }),
            Check::forall("clopen-points", tuples(n, 1), |t| {
                let a = t[0];
                let x_ok = match (self.filt_index[a], self.idl_index[a]) {
                    (Some(x), Some(y)) => xs[a] == gammas[x] && &xs[a] == p.point_polar(Side::Y, y),
                    (Some(x), None) => xs[a] == gammas[x],
                    _ => true,
                };
                let y_ok = match (self.idl_index[a], self.filt_index[a]) {
                    (Some(y), Some(x)) => ys[a] == p.gamma(Side::Y, y) && &ys[a] == p.point_polar(Side::X, x),
                    (Some(y), None) => ys[a] == p.gamma(Side::Y, y),
                    _ => true,
                };
                x_ok && y_ok
            }),
            Check::forall("closed-density", tuples(family.len(), 1), |t| {
                let g = family.set(t[0]);
                let mut u = p.empty(Side::X);
                for x in g.iter() {
                    u.union_with(&gammas[x]);
                }
                &p.closure(Side::X, &u) == g
            }),
            Check::forall("open-density", tuples(family.len(), 1), |t| {
                let g = family.set(t[0]);
                let mut m = p.full(Side::X);
                for o in opens.iter().filter(|o| g.is_subset(o)) {
                    m.intersect_with(o);
                }
                &m == g
            }),
            Check::forall("basis-density", tuples(family.len(), 1), |t| {
                let g = family.set(t[0]);
                let mut u = p.empty(Side::X);
                for b in xs.iter().filter(|b| b.is_subset(g)) {
                    u.union_with(b);
                }
                &p.closure(Side::X, &u) == g
            }),
        ];
        Ok(Verification { name: "basis".into(), checks })
    }

    /// The source embeds into the full complex algebra with `⇒` restricting
    /// to `→`, and the complex algebra's residuated signature is certified.
    pub fn reduct_report(&self, cap: usize) -> Result<ReductReport, CanonicalError> {
        let l = &self.source;
        let n = l.len();
        let ca = self.frame.full_complex_algebra(cap)?;
        let fam = &ca.family;
        let e: Vec<Option<usize>> = l.elems().map(|a| fam.index_of(&self.rep_x(a))).collect();
        let embedding = Check::forall("embedding", tuples(n, 2), |t| {
            let (a, b) = (t[0], t[1]);
            match (e[a], e[b], e[l.meet(a, b)], e[l.join(a, b)]) {
                (Some(ea), Some(eb), Some(em), Some(ej)) => {
                    (a == b || ea != eb) && fam.meet(ea, eb) == em && fam.join(ea, eb) == ej
                }
                _ => false,
            }
        });
        let arrow_table = l.arrow_table().ok_or(LatticeError::MissingArrow)?;
        let arrow = Check::forall("⇒-restricts-to-→", tuples(n, 2), |t| {
            match (e[t[0]], e[t[1]], e[arrow_table[t[0] * n + t[1]]]) {
                (Some(ea), Some(eb), Some(ec)) => ca.imp(ea, eb) == ec,
                _ => false,
            }
        });
        let certification = ca.certify();
        let distributive = l.check_distributive().passed;
        let heyting_source = l.check_heyting()?.passed();
        let residual_of_meet = heyting_source.then(|| match ca.heyting_arrow() {
            Some(h) => Check::forall("⇒=residual-of-∩", fam.pairs(), |t| ca.imp(t[0], t[1]) == h[t[0] * fam.len() + t[1]]),
            None => Check::fail("⇒=residual-of-∩", vec![], 0),
        });
        Ok(ReductReport {
            family_size: fam.len(),
            embedding,
            arrow,
            heyting_certified: distributive.then(|| certification.residuated_heyting()),
            certification,
            residual_of_meet,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ReductReport {
    pub family_size: usize,
    pub embedding: Check,
    pub arrow: Check,
    pub certification: ResiduatedReport,
    /// Present when the source is distributive.
    pub heyting_certified: Option<bool>,
    /// Present when the source is a Heyting algebra.
    pub residual_of_meet: Option<Check>,
}

impl ReductReport {
    pub fn passed(&self) -> bool {
        self.embedding.passed
            && self.arrow.passed
            && self.certification.integral_residuated()
            && self.heyting_certified.unwrap_or(true)
            && self.residual_of_meet.as_ref().is_none_or(|c| c.passed)
    }
}
