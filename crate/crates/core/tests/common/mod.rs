//! Brute-force oracles shared by the integration tests. Everything here is
//! computed from `perp` and raw tuple membership only.

#![allow(dead_code)]

use galframe::{ImplicativeFrame, Polarity, PointSet, Side};

pub fn subsets(n: usize) -> Vec<PointSet> {
    (0u32..1 << n).map(|m| PointSet::from_predicate(n, |i| m >> i & 1 == 1)).collect()
}

/// `U′ = {y : ∀x ∈ U, x ⊥ y}`.
pub fn up(p: &Polarity, u: &PointSet) -> PointSet {
    PointSet::from_predicate(p.size(Side::Y), |y| u.iter().all(|x| p.perp(x, y)))
}

/// `′V = {x : ∀y ∈ V, x ⊥ y}`.
pub fn down(p: &Polarity, v: &PointSet) -> PointSet {
    PointSet::from_predicate(p.size(Side::X), |x| v.iter().all(|y| p.perp(x, y)))
}

pub fn close(p: &Polarity, u: &PointSet) -> PointSet {
    down(p, &up(p, u))
}

pub fn gamma(p: &Polarity, x: usize) -> PointSet {
    close(p, &PointSet::singleton(p.size(Side::X), x))
}

/// `′{y}`.
pub fn open(p: &Polarity, y: usize) -> PointSet {
    down(p, &PointSet::singleton(p.size(Side::Y), y))
}

/// Stable sets by scanning every subset of `X`.
pub fn stable_sets(p: &Polarity) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = subsets(p.size(Side::X)).into_iter().filter(|u| close(p, u) == *u).collect();
    out.sort();
    out
}

/// `x ⪯ z` iff `{x}′ ⊆ {z}′`.
pub fn spec_leq(p: &Polarity, x: usize, z: usize) -> bool {
    let n = p.size(Side::X);
    up(p, &PointSet::singleton(n, x)).is_subset(&up(p, &PointSet::singleton(n, z)))
}

/// `u T′ x v` iff every `y` with `y T x v` has `u ⊥ y`, as a table indexed
/// `[u][x][v]`.
pub fn t_dual_table(f: &ImplicativeFrame) -> Vec<Vec<Vec<bool>>> {
    let p = f.polarity();
    let (nx, ny) = (p.size(Side::X), p.size(Side::Y));
    (0..nx)
        .map(|u| {
            (0..nx)
                .map(|x| (0..ny).map(|v| (0..ny).all(|y| !f.t().contains(&[y, x, v]) || p.perp(u, y))).collect())
                .collect()
        })
        .collect()
}

/// `{u : ∀x ∈ A ∀y ∈ C′, u T′ x y}`.
pub fn implies(f: &ImplicativeFrame, td: &[Vec<Vec<bool>>], a: &PointSet, c: &PointSet) -> PointSet {
    let p = f.polarity();
    let cp = up(p, c);
    PointSet::from_predicate(p.size(Side::X), |u| a.iter().all(|x| cp.iter().all(|y| td[u][x][y])))
}

/// The largest stable `D` with `D ∩ A ⊆ C`, by scanning the family.
pub fn meet_residual(family: &[PointSet], a: &PointSet, c: &PointSet) -> Option<PointSet> {
    let below: Vec<&PointSet> = family.iter().filter(|d| d.intersection(a).is_subset(c)).collect();
    below.iter().find(|d| below.iter().all(|e| e.is_subset(d))).map(|d| (*d).clone())
}
