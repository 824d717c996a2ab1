//! Built-in lattices: chains, Boolean algebras, the two minimal
//! nondistributive lattices and the three-element Łukasiewicz chain.

use crate::lattice::{Elem, FiniteLattice};

pub const NAMES: [&str; 8] = ["C2", "C3", "C4", "B4", "B8", "M3", "N5", "L3"];

/// Expected verdicts for a corpus member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expect {
    pub distributive: bool,
    pub heyting: bool,
}

pub fn by_name(name: &str) -> Option<FiniteLattice> {
    Some(match name {
        "C2" => c2(),
        "C3" => c3(),
        "C4" => c4(),
        "B4" => b4(),
        "B8" => b8(),
        "M3" => m3(),
        "N5" => n5(),
        "L3" => l3(),
        _ => return None,
    })
}

pub fn expectation(name: &str) -> Option<Expect> {
    let (distributive, heyting) = match name {
        "C2" | "C3" | "C4" | "B4" | "B8" => (true, true),
        "L3" => (true, false),
        "M3" | "N5" => (false, false),
        _ => return None,
    };
    Some(Expect { distributive, heyting })
}

pub fn all() -> Vec<(&'static str, FiniteLattice)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("corpus name"))).collect()
}

fn chain(names: &[&str]) -> FiniteLattice {
    let pairs: Vec<_> = (1..names.len()).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_pairs(names.len(), &pairs)
        .and_then(|l| l.with_names(names.iter().copied()))
        .expect("chains are lattices")
}

fn heyting(l: FiniteLattice) -> FiniteLattice {
    l.with_residual_arrow().expect("distributive corpus member")
}

/// `a -> b` is the top when `a <= b` and the bottom otherwise. Satisfies
/// A1–A3 on every bounded lattice.
pub fn indicator_arrow(l: FiniteLattice) -> FiniteLattice {
    let (bot, top) = (l.bot(), l.top());
    let leq: Vec<bool> = crate::check::tuples(l.len(), 2).map(|t| l.leq(t[0], t[1])).collect();
    let n = l.len();
    l.with_arrow_fn(|a, b| if leq[a * n + b] { top } else { bot })
        .expect("indicator table has lattice shape")
}

pub fn c2() -> FiniteLattice {
    heyting(chain(&["0", "1"]))
}

pub fn c3() -> FiniteLattice {
    heyting(chain(&["0", "m", "1"]))
}

pub fn c4() -> FiniteLattice {
    heyting(chain(&["0", "a", "b", "1"]))
}

/// The four-element Boolean algebra `{0, a, b, 1}`.
pub fn b4() -> FiniteLattice {
    let l = FiniteLattice::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
        .and_then(|l| l.with_names(["0", "a", "b", "1"]))
        .expect("B4");
    heyting(l)
}

/// Subsets of `{a, b, c}` indexed by bit mask.
pub fn b8() -> FiniteLattice {
    let order: Vec<Vec<bool>> = (0..8usize)
        .map(|s| (0..8usize).map(|t| s & !t == 0).collect())
        .collect();
    let l = FiniteLattice::from_order(&order)
        .and_then(|l| l.with_names(["0", "a", "b", "ab", "c", "ac", "bc", "1"]))
        .expect("B8");
    heyting(l)
}

/// Bottom, three pairwise incomparable atoms, top.
pub fn m3() -> FiniteLattice {
    let l = FiniteLattice::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        .and_then(|l| l.with_names(["0", "a", "b", "c", "1"]))
        .expect("M3");
    indicator_arrow(l)
}

/// The pentagon: `0 < a < b < 1` and `0 < c < 1`.
pub fn n5() -> FiniteLattice {
    let l = FiniteLattice::from_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
        .and_then(|l| l.with_names(["0", "a", "b", "c", "1"]))
        .expect("N5");
    indicator_arrow(l)
}

/// `{0, ½, 1}` as indices `{0, 1, 2}` with `a -> b = min(1, 1 - a + b)`.
pub fn l3() -> FiniteLattice {
    chain(&["0", "half", "1"])
        .with_arrow_fn(|a: Elem, b: Elem| (2 + b).saturating_sub(a).min(2))
        .expect("L3")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_members_are_implicative() {
        for (name, l) in all() {
            assert!(l.check_implicative().unwrap().passed(), "{name}");
            assert!(l.check_lattice_laws().passed, "{name}");
            let e = expectation(name).unwrap();
            assert_eq!(l.check_distributive().passed, e.distributive, "{name}");
            assert_eq!(l.check_heyting().unwrap().passed(), e.heyting, "{name}");
        }
    }

    #[test]
    fn lukasiewicz_table() {
        let l = l3();
        let t: Vec<_> = crate::check::tuples(3, 2).map(|v| l.arrow(v[0], v[1]).unwrap()).collect();
        assert_eq!(t, vec![2, 2, 2, 1, 2, 2, 0, 1, 2]);
    }

    #[test]
    fn unknown_name() {
        assert!(by_name("Z9").is_none());
    }
}
