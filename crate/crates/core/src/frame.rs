//! Implicative frames `(X, ⊥, Y, T)` with `T ⊆ Y × (X × Y)`: the frame
//! axioms, the operators `⊵`, `⇒`, `⦿`, `⇐` on Galois sets, the relations
//! derived from `T`, and the distributivity and Heyting deciders.

use thiserror::Error;

use crate::check::{mixed_tuples, tuples, Check};
use crate::lattice::{FiniteLattice, ResiduatedReport, ResiduatedTriple};
use crate::polarity::{Polarity, PolarityError, Side, StableFamily};
use crate::relation::{Sort, SortedRelation};
use crate::sets::PointSet;

/// Sort type `(∂; 1 ∂)` of the frame relation.
pub const T_SORT: [Sort; 3] = [Sort::Dual, Sort::One, Sort::Dual];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrameError {
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error("relation must have sort (∂;1∂)")]
    WrongSort,
    #[error("triple ({y}, {x}, {v}) out of range")]
    OutOfRange { y: usize, x: usize, v: usize },
    #[error("{op} of Galois sets {args:?} is not a Galois set")]
    NotGalois { op: &'static str, args: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicativeFrame {
    polarity: Polarity,
    t: SortedRelation,
    t_dual: SortedRelation,
}

impl ImplicativeFrame {
    pub fn new(polarity: Polarity, t: SortedRelation) -> Result<Self, FrameError> {
        if t.sorts() != T_SORT || t.dims()[0] != polarity.size(Side::Y) || t.dims()[1] != polarity.size(Side::X) {
            return Err(FrameError::WrongSort);
        }
        let t_dual = t.galois_dual(&polarity);
        Ok(ImplicativeFrame { polarity, t, t_dual })
    }

    /// Build from triples `(y, x, v)` meaning `y T x v`.
    pub fn from_triples(polarity: Polarity, triples: &[(usize, usize, usize)]) -> Result<Self, FrameError> {
        let (nx, ny) = (polarity.size(Side::X), polarity.size(Side::Y));
        let mut t = SortedRelation::empty(&polarity, &T_SORT);
        for &(y, x, v) in triples {
            if y >= ny || x >= nx || v >= ny {
                return Err(FrameError::OutOfRange { y, x, v });
            }
            t.insert(&[y, x, v]);
        }
        Self::new(polarity, t)
    }

    pub fn polarity(&self) -> &Polarity {
        &self.polarity
    }

    pub fn t(&self) -> &SortedRelation {
        &self.t
    }

    /// `T′ = T^{11∂}`.
    pub fn t_dual(&self) -> &SortedRelation {
        &self.t_dual
    }

    pub fn size(&self, side: Side) -> usize {
        self.polarity.size(side)
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        self.t.tuples().into_iter().map(|t| (t[0], t[1], t[2])).collect()
    }

    /// Relabel points; `px[x]`, `py[y]` are the new indices.
    pub fn relabel(&self, px: &[usize], py: &[usize]) -> Result<Self, FrameError> {
        let p = self.polarity.relabel(px, py)?;
        let triples: Vec<_> = self.triples().into_iter().map(|(y, x, v)| (py[y], px[x], py[v])).collect();
        Self::from_triples(p, &triples)
    }

    pub fn check_axioms(&self) -> FrameAxiomReport {
        let p = &self.polarity;
        let (nx, ny) = (p.size(Side::X), p.size(Side::Y));

        let f0 = Check::forall("F0", mixed_tuples(&[nx, ny]), |t| {
            p.perp(t[0], t[1]) == self.t_dual.section(t).is_full()
        });

        let mut f1 = p.check_separated();
        f1.name = "F1".into();

        let closed_y = p.closed_elements(Side::Y);
        let empty_costable = p.is_costable(&p.empty(Side::Y));
        let f2 = Check::forall("F2", mixed_tuples(&[nx, ny]), |t| {
            let s = self.t.section(t);
            (s.is_empty() && empty_costable) || closed_y.iter().any(|g| g == s)
        });

        // Witness [y, x, v, place, lower]: y T x v holds but fails after
        // lowering place 1 (x) or 2 (v) to `lower`.
        let mut checked = 0;
        let mut f3 = None;
        'outer: for t in self.t.tuples() {
            let (y, x, v) = (t[0], t[1], t[2]);
            for x2 in 0..nx {
                if p.leq(Side::X, x2, x) {
                    checked += 1;
                    if !self.t.contains(&[y, x2, v]) {
                        f3 = Some(Check::fail("F3", vec![y, x, v, 1, x2], checked));
                        break 'outer;
                    }
                }
            }
            for v2 in 0..ny {
                if p.leq(Side::Y, v2, v) {
                    checked += 1;
                    if !self.t.contains(&[y, x, v2]) {
                        f3 = Some(Check::fail("F3", vec![y, x, v, 2, v2], checked));
                        break 'outer;
                    }
                }
            }
        }
        let f3 = f3.unwrap_or_else(|| Check::pass("F3", checked));

        let f4 = self.t_dual.check_sections_galois(p, &[1, 2], "F4");
        FrameAxiomReport { f0, f1, f2, f3, f4 }
    }

    /// `α_T(U, V) = ⋃ {T x v : x ∈ U, v ∈ V}`.
    pub fn alpha_t(&self, u: &PointSet, v: &PointSet) -> PointSet {
        let mut out = self.polarity.empty(Side::Y);
        for x in u.iter() {
            for w in v.iter() {
                out.union_with(self.t.section(&[x, w]));
            }
        }
        out
    }

    /// `A ⊵ B`: co-stable closure of `α_T(A, B)`.
    pub fn mtright(&self, a: &PointSet, b: &PointSet) -> PointSet {
        self.polarity.closure(Side::Y, &self.alpha_t(a, b))
    }

    /// `A ⇒ C = (A ⊵ C′)′`.
    pub fn implies(&self, a: &PointSet, c: &PointSet) -> PointSet {
        let c_polar = self.polarity.polar(Side::X, c);
        self.polarity.polar(Side::Y, &self.mtright(a, &c_polar))
    }

    /// `{u : ∀x ∈ A ∀y (C ⊥ y → u T′ x y)}`.
    pub fn implies_pointwise(&self, a: &PointSet, c: &PointSet) -> PointSet {
        let c_polar = self.polarity.polar(Side::X, c);
        let mut out = self.polarity.full(Side::X);
        for x in a.iter() {
            for y in c_polar.iter() {
                out.intersect_with(self.t_dual.section(&[x, y]));
            }
        }
        out
    }

    /// `{x : ∀z (x ⪯ z ∧ z ∈ A → z ∈ C)}`.
    pub fn kripke_implies(&self, a: &PointSet, c: &PointSet) -> PointSet {
        let p = &self.polarity;
        let n = p.size(Side::X);
        PointSet::from_predicate(n, |x| (0..n).all(|z| !p.leq(Side::X, x, z) || !a.contains(z) || c.contains(z)))
    }

    pub fn derive_relations(&self) -> DerivedRelations {
        let p = &self.polarity;
        let t_dual = self.t_dual.clone();
        // v R^{∂11} z x  iff  x T′ z v
        let r_d11 = t_dual.permute(p, &[2, 1, 0]);
        let r_111 = r_d11.galois_dual(p);
        // y S^{∂∂1} v x  iff  y T x v
        let s_dd1 = self.t.permute(p, &[0, 2, 1]);
        let s_1d1 = s_dd1.galois_dual(p);
        let r_leq = SortedRelation::from_fn(p, &[Sort::One, Sort::One, Sort::One], |t| {
            p.leq(Side::X, t[1], t[0]) && p.leq(Side::X, t[2], t[0])
        });
        let r_leq_dual = r_leq.galois_dual(p);
        DerivedRelations { t_dual, r_d11, r_111, s_dd1, s_1d1, r_leq, r_leq_dual }
    }

    /// `A ⦿ F`: stable closure of `⋃ {R^{111} z x : z ∈ A, x ∈ F}`.
    pub fn overt(&self, d: &DerivedRelations, a: &PointSet, f: &PointSet) -> PointSet {
        let mut img = self.polarity.empty(Side::X);
        for z in a.iter() {
            for x in f.iter() {
                img.union_with(d.r_111.section(&[z, x]));
            }
        }
        self.polarity.closure(Side::X, &img)
    }

    /// `C ⇐ F = {z : ∀x ∈ F ∀v (C ⊥ v → x S^{1∂1} v z)}`.
    pub fn la(&self, d: &DerivedRelations, c: &PointSet, f: &PointSet) -> PointSet {
        let c_polar = self.polarity.polar(Side::X, c);
        let n = self.size(Side::X);
        PointSet::from_predicate(n, |z| {
            f.iter().all(|x| c_polar.iter().all(|v| d.s_1d1.contains(&[x, v, z])))
        })
    }

    /// `C ⇐ F = ′α_S(C′, F)` through the image operator of `S^{∂∂1}`.
    pub fn la_via_image(&self, d: &DerivedRelations, c: &PointSet, f: &PointSet) -> PointSet {
        let c_polar = self.polarity.polar(Side::X, c);
        let mut img = self.polarity.empty(Side::Y);
        for v in c_polar.iter() {
            for x in f.iter() {
                img.union_with(d.s_dd1.section(&[v, x]));
            }
        }
        self.polarity.polar(Side::Y, &img)
    }

    pub fn stable_family(&self, cap: usize) -> Result<StableFamily, FrameError> {
        Ok(self.polarity.enumerate_stable(cap)?)
    }

    /// The stable-set lattice with `⇒`, `⦿` and `⇐` tables.
    pub fn full_complex_algebra(&self, cap: usize) -> Result<ComplexAlgebra, FrameError> {
        let family = self.stable_family(cap)?;
        let d = self.derive_relations();
        let n = family.len();
        let mut imp = Vec::with_capacity(n * n);
        let mut overt = Vec::with_capacity(n * n);
        let mut la = Vec::with_capacity(n * n);
        let lookup = |op: &'static str, s: PointSet, i: usize, j: usize| {
            family.index_of(&s).ok_or(FrameError::NotGalois { op, args: vec![i, j] })
        };
        for t in tuples(n, 2) {
            let (i, j) = (t[0], t[1]);
            let (a, b) = (family.set(i), family.set(j));
            imp.push(lookup("⇒", self.implies(a, b), i, j)?);
            overt.push(lookup("⦿", self.overt(&d, a, b), i, j)?);
            la.push(lookup("⇐", self.la(&d, a, b), i, j)?);
        }
        Ok(ComplexAlgebra { family, imp, overt, la })
    }

    /// `A ⊆ C ⇐ F  ⇔  A ⦿ F ⊆ C  ⇔  F ⊆ A ⇒ C` over all stable triples.
    pub fn check_residuation(&self, cap: usize) -> Result<ResiduationReport, FrameError> {
        self.check_residuation_with(&self.derive_relations(), cap)
    }

    /// As [`Self::check_residuation`], with `⦿` and `⇐` taken from `d`
    /// while `⇒` uses this frame's `T`.
    pub fn check_residuation_with(&self, d: &DerivedRelations, cap: usize) -> Result<ResiduationReport, FrameError> {
        let family = self.stable_family(cap)?;
        let n = family.len();
        let sets = family.sets();
        let imp: Vec<PointSet> = tuples(n, 2).map(|t| self.implies(&sets[t[0]], &sets[t[1]])).collect();
        let ov: Vec<PointSet> = tuples(n, 2).map(|t| self.overt(d, &sets[t[0]], &sets[t[1]])).collect();
        let la: Vec<PointSet> = tuples(n, 2).map(|t| self.la(d, &sets[t[0]], &sets[t[1]])).collect();
        let check = Check::forall("residuation", tuples(n, 3), |t| {
            let (a, f, c) = (t[0], t[1], t[2]);
            let left = sets[a].is_subset(&la[c * n + f]);
            let mid = ov[a * n + f].is_subset(&sets[c]);
            let right = sets[f].is_subset(&imp[a * n + c]);
            left == mid && mid == right
        });
        Ok(ResiduationReport { family_size: n, triples: n * n * n, check })
    }

    /// Section condition on `R′_≤` and brute-force distributivity of the
    /// stable-set lattice.
    pub fn check_distributivity(&self, cap: usize) -> Result<DistributivityReport, FrameError> {
        let family = self.stable_family(cap)?;
        let d = self.derive_relations();
        let section_condition = d.r_leq_dual.check_sections_galois(&self.polarity, &[0, 1, 2], "section-condition");
        let mut brute_force = family.lattice().check_distributive();
        brute_force.name = "brute-force".into();
        Ok(DistributivityReport { section_condition, brute_force })
    }

    /// Decide `R^{111} = R_≤` and check both inclusion biconditionals
    /// pointwise, evaluating each side on its own.
    pub fn check_heyting_frame(&self, d: &DerivedRelations) -> HeytingFrameReport {
        let p = &self.polarity;
        let nx = p.size(Side::X);
        let gammas = p.closed_elements(Side::X);
        let equal = Check::forall("R111=R<=", tuples(nx, 2), |t| {
            d.r_111.section(t) == d.r_leq.section(t)
        });
        let mut overts = Vec::with_capacity(nx * nx);
        for t in tuples(nx, 2) {
            overts.push(self.overt(d, &gammas[t[0]], &gammas[t[1]]));
        }
        let lower = Check::forall("meet-below-fusion", tuples(nx, 2), |t| {
            let (x, z) = (t[0], t[1]);
            let lhs = gammas[x].intersection(&gammas[z]).is_subset(&overts[x * nx + z]);
            let rhs = d.r_leq.section(t).is_subset(d.r_111.section(t));
            lhs == rhs
        });
        let upper = Check::forall("fusion-below-meet", tuples(nx, 2), |t| {
            let (x, z) = (t[0], t[1]);
            let lhs = overts[x * nx + z].is_subset(&gammas[x].intersection(&gammas[z]));
            let rhs = d.r_111.section(t).is_subset(d.r_leq.section(t));
            lhs == rhs
        });
        HeytingFrameReport { r111_equals_rleq: equal, lower, upper }
    }

    pub fn is_heyting_frame(&self) -> bool {
        self.check_heyting_frame(&self.derive_relations()).r111_equals_rleq.passed
    }
}

#[derive(Clone, Debug)]
pub struct FrameAxiomReport {
    pub f0: Check,
    pub f1: Check,
    pub f2: Check,
    pub f3: Check,
    pub f4: Check,
}

impl FrameAxiomReport {
    pub fn checks(&self) -> [&Check; 5] {
        [&self.f0, &self.f1, &self.f2, &self.f3, &self.f4]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks().into_iter().find(|c| !c.passed)
    }
}

/// Relations derived from `T` by Galois dualization and argument permutation.
///
/// Tuple layouts (output first): `t_dual` = `(x; z, v)`, `r_d11` = `(v; z, x)`,
/// `r_111` = `(u; z, x)`, `s_dd1` = `(y; v, x)`, `s_1d1` = `(u; v, x)`,
/// `r_leq` = `(x; u, z)`, `r_leq_dual` = `(y; u, z)`.
#[derive(Clone, Debug)]
pub struct DerivedRelations {
    pub t_dual: SortedRelation,
    pub r_d11: SortedRelation,
    pub r_111: SortedRelation,
    pub s_dd1: SortedRelation,
    pub s_1d1: SortedRelation,
    pub r_leq: SortedRelation,
    pub r_leq_dual: SortedRelation,
}

impl DerivedRelations {
    /// Re-check each defining biconditional by direct quantification over points.
    pub fn verify(&self, f: &ImplicativeFrame) -> Check {
        let p = f.polarity();
        let (nx, ny) = (p.size(Side::X), p.size(Side::Y));
        let t = f.t();
        let checks = [
            Check::forall("T′", mixed_tuples(&[nx, nx, ny]), |w| {
                let (x, z, v) = (w[0], w[1], w[2]);
                self.t_dual.contains(w) == (0..ny).all(|y| !t.contains(&[y, z, v]) || p.perp(x, y))
            }),
            Check::forall("R∂11", mixed_tuples(&[ny, nx, nx]), |w| {
                let (v, z, x) = (w[0], w[1], w[2]);
                self.r_d11.contains(w) == self.t_dual.contains(&[x, z, v])
            }),
            Check::forall("R111", mixed_tuples(&[nx, nx, nx]), |w| {
                let (u, z, x) = (w[0], w[1], w[2]);
                self.r_111.contains(w) == (0..ny).all(|v| !self.r_d11.contains(&[v, z, x]) || p.perp(u, v))
            }),
            Check::forall("S∂∂1", mixed_tuples(&[ny, ny, nx]), |w| {
                let (y, v, x) = (w[0], w[1], w[2]);
                self.s_dd1.contains(w) == t.contains(&[y, x, v])
            }),
            Check::forall("S1∂1", mixed_tuples(&[nx, ny, nx]), |w| {
                let (u, v, x) = (w[0], w[1], w[2]);
                self.s_1d1.contains(w) == (0..ny).all(|y| !self.s_dd1.contains(&[y, v, x]) || p.perp(u, y))
            }),
            Check::forall("R≤", mixed_tuples(&[nx, nx, nx]), |w| {
                let (x, u, z) = (w[0], w[1], w[2]);
                self.r_leq.contains(w) == (p.leq(Side::X, u, x) && p.leq(Side::X, z, x))
            }),
            Check::forall("R′≤", mixed_tuples(&[ny, nx, nx]), |w| {
                let (y, u, z) = (w[0], w[1], w[2]);
                self.r_leq_dual.contains(w) == (0..nx).all(|x| !self.r_leq.contains(&[x, u, z]) || p.perp(x, y))
            }),
        ];
        Check::all("derived-relations", &checks)
    }
}

#[derive(Clone, Debug)]
pub struct ResiduationReport {
    pub family_size: usize,
    pub triples: usize,
    pub check: Check,
}

#[derive(Clone, Debug)]
pub struct DistributivityReport {
    pub section_condition: Check,
    pub brute_force: Check,
}

impl DistributivityReport {
    /// The section condition is sufficient for distributivity; a report where
    /// it holds but brute force fails would contradict that.
    pub fn consistent(&self) -> bool {
        !self.section_condition.passed || self.brute_force.passed
    }
}

#[derive(Clone, Debug)]
pub struct HeytingFrameReport {
    pub r111_equals_rleq: Check,
    /// `Γx ∩ Γz ⊆ Γx ⦿ Γz  ⇔  R_≤ x z ⊆ R^{111} x z`.
    pub lower: Check,
    /// `Γx ⦿ Γz ⊆ Γx ∩ Γz  ⇔  R^{111} x z ⊆ R_≤ x z`.
    pub upper: Check,
}

impl HeytingFrameReport {
    pub fn is_heyting(&self) -> bool {
        self.r111_equals_rleq.passed
    }
}

/// Full complex algebra: stable sets with `⇒`, `⦿`, `⇐` as index tables.
///
/// `imp[a * n + c] = A ⇒ C`, `overt[a * n + f] = A ⦿ F`, `la[c * n + f] = C ⇐ F`.
#[derive(Clone, Debug)]
pub struct ComplexAlgebra {
    pub family: StableFamily,
    pub imp: Vec<usize>,
    pub overt: Vec<usize>,
    pub la: Vec<usize>,
}

impl ComplexAlgebra {
    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn imp(&self, a: usize, c: usize) -> usize {
        self.imp[a * self.len() + c]
    }

    pub fn overt(&self, a: usize, f: usize) -> usize {
        self.overt[a * self.len() + f]
    }

    pub fn la(&self, c: usize, f: usize) -> usize {
        self.la[c * self.len() + f]
    }

    /// The residual of intersection, when the stable-set lattice has one.
    pub fn heyting_arrow(&self) -> Option<Vec<usize>> {
        self.family.lattice().residual_arrow().ok()
    }

    /// `(𝒢(X), ∩, ⋁, ⦿, ⇒, ⇐)` as a residuated triple over a base carrying
    /// the residual of intersection when it exists.
    pub fn residuated_triple(&self) -> ResiduatedTriple {
        let base: FiniteLattice = match self.heyting_arrow() {
            Some(t) => self.family.lattice().clone().with_arrow(t).expect("residual table"),
            None => self.family.lattice().clone(),
        };
        ResiduatedTriple {
            base,
            circ: self.overt.clone(),
            under: self.imp.clone(),
            over: self.la.clone(),
        }
    }

    pub fn certify(&self) -> ResiduatedReport {
        self.residuated_triple().check()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::CanonicalFrame;
    use crate::corpus;
    use crate::polarity::DEFAULT_MAX_FAMILY;

    fn canon(name: &str, proper_only: bool) -> CanonicalFrame {
        CanonicalFrame::build(&corpus::by_name(name).unwrap(), proper_only).unwrap()
    }

    #[test]
    fn empty_t_on_full_polarity_fails_f2_only_among_f0_f2() {
        let p = Polarity::from_fn(2, 2, |_, _| true).unwrap();
        let f = ImplicativeFrame::from_triples(p, &[]).unwrap();
        let r = f.check_axioms();
        assert!(r.f0.passed);
        assert!(!r.f2.passed);
        assert_eq!(r.f2.witness, Some(vec![0, 0]));
    }

    #[test]
    fn non_decreasing_t_fails_f3() {
        // C2 with all points: x1 ⪯ x0. Dropping (ω, x1, y0) while (ω, x0, y0)
        // stays breaks downward closure.
        let cf = canon("C2", false);
        let (x1, x0) = (cf.filter_point(1).unwrap(), cf.filter_point(0).unwrap());
        let (y0, w) = (cf.ideal_point(0).unwrap(), cf.ideal_point(1).unwrap());
        let mut triples = cf.frame().triples();
        assert!(triples.contains(&(w, x0, y0)));
        triples.retain(|&t| t != (w, x1, y0));
        let f = ImplicativeFrame::from_triples(cf.frame().polarity().clone(), &triples).unwrap();
        let r = f.check_axioms();
        assert!(!r.f3.passed);
        let wit = r.f3.witness.unwrap();
        let mut lowered = [wit[0], wit[1], wit[2]];
        lowered[wit[3]] = wit[4];
        assert_eq!((lowered[0], lowered[1], lowered[2]), (w, x1, y0));
    }

    #[test]
    fn c2_proper_mtright_and_implies() {
        let cf = canon("C2", true);
        let f = cf.frame();
        let p = f.polarity();
        let gx = p.gamma(Side::X, 0);
        let gy = p.gamma(Side::Y, 0);
        assert_eq!(f.mtright(&gx, &gy).to_vec(), vec![0]);
        assert!(f.alpha_t(&p.empty(Side::X), &gy).is_empty());
        // X1 ⇒ X0 = ∅ = X0.
        let x1 = p.full(Side::X);
        let x0 = p.empty(Side::X);
        assert!(f.implies(&x1, &x0).is_empty());
        assert!(f.implies(&x0, &x1).is_full());
    }

    #[test]
    fn derived_relations_verify_on_corpus() {
        for name in corpus::NAMES {
            for proper in [true, false] {
                let cf = canon(name, proper);
                let f = cf.frame();
                let d = f.derive_relations();
                assert!(d.verify(f).passed, "{name} {proper}");
                // S′ v x = T′ x v.
                let (nx, ny) = (f.size(Side::X), f.size(Side::Y));
                for x in 0..nx {
                    for v in 0..ny {
                        assert_eq!(d.s_1d1.section(&[v, x]), f.t_dual().section(&[x, v]));
                    }
                }
            }
        }
    }

    #[test]
    fn empty_t_gives_full_r111() {
        let p = Polarity::from_pairs(2, 2, &[(0, 0), (1, 1)]).unwrap();
        let f = ImplicativeFrame::from_triples(p, &[]).unwrap();
        let d = f.derive_relations();
        // T′ sections are full, so R∂11 is full and R111 sections are ′Y.
        let bottom = f.polarity().polar(Side::Y, &f.polarity().full(Side::Y));
        for z in 0..2 {
            for x in 0..2 {
                assert_eq!(d.r_111.section(&[z, x]), &bottom);
            }
        }
        // With ′Y = ∅ here, a polarity where ′Y is everything gives full R111.
        let q = Polarity::from_fn(2, 2, |_, _| true).unwrap();
        let g = ImplicativeFrame::from_triples(q, &[]).unwrap();
        let d = g.derive_relations();
        assert!(d.r_111.section(&[0, 1]).is_full());
    }

    #[test]
    fn c3_r111_is_upper_bound() {
        let cf = canon("C3", true);
        let d = cf.frame().derive_relations();
        assert_eq!(d.r_111, d.r_leq);
    }

    /// The image route computes `F ⇒ C`, so it matches the first-order
    /// formula for `C ⇐ F` exactly when `⦿` commutes.
    #[test]
    fn la_routes_and_overt_examples() {
        for name in corpus::NAMES {
            let cf = canon(name, false);
            let f = cf.frame();
            let d = f.derive_relations();
            let fam = f.stable_family(DEFAULT_MAX_FAMILY).unwrap();
            let mut routes_agree = true;
            let mut commutes = true;
            for t in fam.pairs() {
                let (c, a) = (fam.set(t[0]), fam.set(t[1]));
                assert_eq!(f.la_via_image(&d, c, a), f.implies(a, c), "{name}");
                routes_agree &= f.la(&d, c, a) == f.la_via_image(&d, c, a);
                commutes &= f.overt(&d, c, a) == f.overt(&d, a, c);
                assert!(f.la(&d, fam.set(fam.top()), a).is_full());
                assert_eq!(f.implies(c, a), f.implies_pointwise(c, a));
            }
            assert_eq!(routes_agree, commutes, "{name}");
            let bot = fam.set(fam.bottom());
            let top = fam.set(fam.top());
            assert_eq!(&f.overt(&d, top, bot), bot, "{name}");
        }
        let m3 = canon("M3", true);
        let f = m3.frame();
        let d = f.derive_relations();
        let fam = f.stable_family(DEFAULT_MAX_FAMILY).unwrap();
        assert!(fam.pairs().any(|t| f.la(&d, fam.set(t[0]), fam.set(t[1])) != f.la_via_image(&d, fam.set(t[0]), fam.set(t[1]))));
    }

    #[test]
    fn heyting_canonical_overt_is_intersection() {
        for name in ["C2", "C3", "C4", "B4", "B8"] {
            let cf = canon(name, true);
            let f = cf.frame();
            let d = f.derive_relations();
            let fam = f.stable_family(DEFAULT_MAX_FAMILY).unwrap();
            for t in fam.pairs() {
                let (a, b) = (fam.set(t[0]), fam.set(t[1]));
                assert_eq!(f.overt(&d, a, b), a.intersection(b), "{name}");
                assert_eq!(f.kripke_implies(a, b), f.implies(a, b), "{name}");
            }
        }
    }

    #[test]
    fn residuation_examples() {
        for name in corpus::NAMES {
            let cf = canon(name, true);
            let r = cf.frame().check_residuation(DEFAULT_MAX_FAMILY).unwrap();
            assert!(r.check.passed, "{name}");
        }
        let c2 = canon("C2", true);
        let r = c2.frame().check_residuation(DEFAULT_MAX_FAMILY).unwrap();
        assert_eq!((r.family_size, r.triples, r.check.checked), (2, 8, 8));
    }

    #[test]
    fn corrupted_t_breaks_residuation() {
        let cf = canon("C3", true);
        let f = cf.frame();
        let d = f.derive_relations();
        let mut found = false;
        for victim in f.triples() {
            let mut triples = f.triples();
            triples.retain(|&t| t != victim);
            let g = ImplicativeFrame::from_triples(f.polarity().clone(), &triples).unwrap();
            let r = g.check_residuation_with(&d, DEFAULT_MAX_FAMILY).unwrap();
            if !r.check.passed {
                assert_eq!(r.check.witness.as_ref().map(Vec::len), Some(3));
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn distributivity_examples() {
        let b4 = canon("B4", true).frame().check_distributivity(DEFAULT_MAX_FAMILY).unwrap();
        assert!(b4.section_condition.passed && b4.brute_force.passed);
        let m3 = canon("M3", true).frame().check_distributivity(DEFAULT_MAX_FAMILY).unwrap();
        assert!(!m3.section_condition.passed && !m3.brute_force.passed);
        let single = ImplicativeFrame::from_triples(Polarity::from_fn(1, 1, |_, _| true).unwrap(), &[(0, 0, 0)])
            .unwrap()
            .check_distributivity(DEFAULT_MAX_FAMILY)
            .unwrap();
        assert!(single.section_condition.passed && single.brute_force.passed);
    }

    #[test]
    fn heyting_frame_verdicts() {
        for name in ["C2", "C3", "B4"] {
            assert!(canon(name, true).frame().is_heyting_frame(), "{name}");
        }
        let l3 = canon("L3", true);
        let f = l3.frame();
        let r = f.check_heyting_frame(&f.derive_relations());
        assert!(!r.is_heyting());
        assert!(r.lower.passed && r.upper.passed);
        // ⇒ differs from the Kripke implication somewhere.
        let fam = f.stable_family(DEFAULT_MAX_FAMILY).unwrap();
        assert!(fam.pairs().any(|t| f.kripke_implies(fam.set(t[0]), fam.set(t[1])) != f.implies(fam.set(t[0]), fam.set(t[1]))));
    }

    #[test]
    fn complex_algebra_examples() {
        let c2 = canon("C2", true).frame().full_complex_algebra(DEFAULT_MAX_FAMILY).unwrap();
        assert_eq!(c2.len(), 2);
        assert!(c2.certify().integral_residuated());
        let b4 = canon("B4", true).frame().full_complex_algebra(DEFAULT_MAX_FAMILY).unwrap();
        assert_eq!(b4.len(), 4);
        assert!(b4.certify().residuated_heyting());
        let m3 = canon("M3", true).frame().full_complex_algebra(DEFAULT_MAX_FAMILY).unwrap();
        assert_eq!(m3.len(), 5);
        let rep = m3.certify();
        assert!(rep.residuation.passed && rep.right_unit.passed);
        assert!(!rep.distributive.passed);
    }
}
