//! Seeded generators for random polarities, lattices, implication tables and
//! canonical frames.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::canonical::CanonicalFrame;
use crate::check::tuples;
use crate::frame::ImplicativeFrame;
use crate::lattice::{Elem, FiniteLattice};
use crate::polarity::{Polarity, DEFAULT_MAX_FAMILY};

/// A polarity with `1..=max_x` by `1..=max_y` points and each pair in `⊥`
/// with probability `density`.
pub fn random_polarity<R: Rng>(rng: &mut R, max_x: usize, max_y: usize, density: f64) -> Polarity {
    let nx = rng.gen_range(1..=max_x);
    let ny = rng.gen_range(1..=max_y);
    let table: Vec<bool> = (0..nx * ny).map(|_| rng.gen_bool(density)).collect();
    Polarity::from_fn(nx, ny, |x, y| table[x * ny + y]).expect("nonempty sides")
}

/// The concept lattice of a random context, resampled until it has between
/// `2` and `max_size` elements.
pub fn random_lattice<R: Rng>(rng: &mut R, max_size: usize) -> FiniteLattice {
    assert!(max_size >= 2);
    loop {
        let density = rng.gen_range(0.2..0.8);
        let p = random_polarity(rng, 4, 4, density);
        let fam = p.enumerate_stable(DEFAULT_MAX_FAMILY).expect("tiny polarity");
        if (2..=max_size).contains(&fam.len()) {
            return fam.lattice().clone();
        }
    }
}

/// A random table satisfying A1–A3, found by randomized backtracking over
/// the entries with `a ≰ b`. `None` if `node_cap` nodes are exhausted.
pub fn random_arrow<R: Rng>(rng: &mut R, l: &FiniteLattice, node_cap: usize) -> Option<Vec<Elem>> {
    let n = l.len();
    let top = l.top();
    let mut table: Vec<Option<Elem>> = tuples(n, 2)
        .map(|t| l.leq(t[0], t[1]).then_some(top))
        .collect();
    let cells: Vec<usize> = (0..n * n).filter(|&k| table[k].is_none()).collect();
    let values: Vec<Elem> = l.elems().filter(|&c| c != top).collect();
    let mut nodes = 0;
    search(rng, l, &mut table, &cells, 0, &values, &mut nodes, node_cap)
        .then(|| table.into_iter().map(|c| c.expect("filled")).collect())
}

#[allow(clippy::too_many_arguments)]
fn search<R: Rng>(
    rng: &mut R,
    l: &FiniteLattice,
    table: &mut [Option<Elem>],
    cells: &[usize],
    i: usize,
    values: &[Elem],
    nodes: &mut usize,
    cap: usize,
) -> bool {
    if i == cells.len() {
        return true;
    }
    let mut order = values.to_vec();
    order.shuffle(rng);
    for c in order {
        *nodes += 1;
        if *nodes > cap {
            return false;
        }
        table[cells[i]] = Some(c);
        if consistent(l, table) && search(rng, l, table, cells, i + 1, values, nodes, cap) {
            return true;
        }
    }
    table[cells[i]] = None;
    false
}

/// A1 and A2 on every instance whose entries are all decided.
fn consistent(l: &FiniteLattice, table: &[Option<Elem>]) -> bool {
    let n = l.len();
    let at = |a: Elem, b: Elem| table[a * n + b];
    tuples(n, 3).all(|t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let a1 = match (at(l.join(a, b), c), at(a, c), at(b, c)) {
            (Some(j), Some(x), Some(y)) => j == l.meet(x, y),
            _ => true,
        };
        let a2 = match (at(a, l.meet(b, c)), at(a, b), at(a, c)) {
            (Some(m), Some(x), Some(y)) => m == l.meet(x, y),
            _ => true,
        };
        a1 && a2
    })
}

/// A canonical frame of a random implicative lattice with its points
/// shuffled, small enough that both sides have at most `max_points` points.
#[derive(Clone, Debug)]
pub struct RandomFrame {
    pub lattice: FiniteLattice,
    pub proper_only: bool,
    pub frame: ImplicativeFrame,
}

pub fn random_canonical_frame<R: Rng>(rng: &mut R, max_points: usize) -> RandomFrame {
    assert!(max_points >= 1);
    let proper_only = rng.gen_bool(0.5);
    // A finite lattice of size n has n filters, n - 1 of them proper.
    let max_size = if proper_only { max_points + 1 } else { max_points }.max(2);
    let l = random_lattice(rng, max_size);
    let residual = if rng.gen_bool(0.3) { l.residual_arrow().ok() } else { None };
    let table = residual
        .or_else(|| random_arrow(rng, &l, 20_000))
        .unwrap_or_else(|| {
            let n = l.len();
            tuples(n, 2).map(|t| if l.leq(t[0], t[1]) { l.top() } else { l.bot() }).collect()
        });
    let l = l.with_arrow(table).expect("table has lattice shape");
    let cf = CanonicalFrame::build(&l, proper_only).expect("random arrow satisfies A1-A3");
    let (nx, ny) = (cf.filters().len(), cf.ideals().len());
    let mut px: Vec<usize> = (0..nx).collect();
    let mut py: Vec<usize> = (0..ny).collect();
    px.shuffle(rng);
    py.shuffle(rng);
    let frame = cf.frame().relabel(&px, &py).expect("permutations");
    RandomFrame { lattice: l, proper_only, frame }
}
