//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines always appear in the output.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use galframe::corpus;
use galframe::gen::{random_canonical_frame, random_polarity};
use galframe::semantics::{parse_formula, random_formulas, Formula, Model};
use galframe::{CanonicalFrame, FiniteLattice, ImplicativeFrame, PointSet, Polarity, Side, DEFAULT_MAX_FAMILY};

use common::*;

const CAP: usize = DEFAULT_MAX_FAMILY;
const HEYTING: [&str; 5] = ["C2", "C3", "C4", "B4", "B8"];

type Outcome = Result<String, Vec<String>>;

fn canon(name: &str, proper_only: bool) -> CanonicalFrame {
    CanonicalFrame::build(&corpus::by_name(name).unwrap(), proper_only).unwrap()
}

fn corpus_frames() -> Vec<(String, CanonicalFrame)> {
    let mut out = Vec::new();
    for name in corpus::NAMES {
        for proper in [true, false] {
            let mode = if proper { "proper" } else { "all" };
            out.push((format!("{name}/{mode}"), canon(name, proper)));
        }
    }
    out
}

fn finish(errors: Vec<String>, summary: String) -> Outcome {
    if errors.is_empty() {
        Ok(summary)
    } else {
        Err(errors)
    }
}

fn frame_axioms() -> Outcome {
    let mut errors = Vec::new();
    let mut slowest = Duration::ZERO;
    for name in corpus::NAMES {
        for proper in [true, false] {
            let start = Instant::now();
            let cf = CanonicalFrame::build(&corpus::by_name(name).unwrap(), proper);
            match cf {
                Ok(cf) => {
                    let rep = cf.frame().check_axioms();
                    if let Some(c) = rep.first_failure() {
                        errors.push(format!("{name} proper={proper}: {} fails at {:?}", c.name, c.witness));
                    }
                    if !cf.polarity().check_separated().passed {
                        errors.push(format!("{name} proper={proper}: not separated"));
                    }
                }
                Err(e) => errors.push(format!("{name} proper={proper}: {e}")),
            }
            slowest = slowest.max(start.elapsed());
        }
    }
    finish(errors, format!("16 frames, F0-F4 and separation, slowest {:.0?}", slowest))
}

fn representation() -> Outcome {
    let mut errors = Vec::new();
    for (label, cf) in corpus_frames() {
        let l = cf.source();
        let f = cf.frame();
        let p = f.polarity();
        let td = t_dual_table(f);
        let family = stable_sets(p);
        if family.len() != l.len() {
            errors.push(format!("{label}: {} stable sets for {} elements", family.len(), l.len()));
            continue;
        }
        let rep: Vec<PointSet> = l.elems().map(|a| cf.rep_x(a)).collect();
        let mut bad = |what: &str, args: &[usize]| errors.push(format!("{label}: {what} at {args:?}"));
        for a in l.elems() {
            if !family.contains(&rep[a]) {
                bad("X_a not stable", &[a]);
            }
            for b in l.elems() {
                if a != b && rep[a] == rep[b] {
                    bad("not injective", &[a, b]);
                }
                if rep[l.meet(a, b)] != rep[a].intersection(&rep[b]) {
                    bad("meet", &[a, b]);
                }
                if rep[l.join(a, b)] != close(p, &rep[a].union(&rep[b])) {
                    bad("join", &[a, b]);
                }
                if rep[l.arrow(a, b).unwrap()] != implies(f, &td, &rep[a], &rep[b]) {
                    bad("arrow", &[a, b]);
                }
                if rep[l.arrow(a, b).unwrap()] != f.implies(&rep[a], &rep[b]) {
                    bad("arrow (library)", &[a, b]);
                }
            }
        }
        if rep[l.bot()] != close(p, &p.empty(Side::X)) {
            bad("bottom", &[]);
        }
        if !rep[l.top()].is_full() {
            bad("top", &[]);
        }
        for v in [cf.verify_lattice_rep(CAP).unwrap(), cf.verify_implicative_rep().unwrap()] {
            if let Some(c) = v.first_failure() {
                errors.push(format!("{label}: {} {} fails at {:?}", v.name, c.name, c.witness));
            }
        }
    }
    finish(errors, "16 frames, a ↦ X_a preserves ∧ ∨ 0 1 → and is bijective".into())
}

fn residuation() -> Outcome {
    let mut errors = Vec::new();
    let mut triples = 0;
    let mut largest = 0;
    for (label, cf) in corpus_frames() {
        let f = cf.frame();
        let rep = f.check_residuation(CAP).unwrap();
        largest = largest.max(rep.family_size);
        triples += rep.triples;
        if !rep.check.passed {
            errors.push(format!("{label}: residuation fails at {:?}", rep.check.witness));
        }
        // Independent pass: ⇒ by the oracle, ⦿ and ⇐ from the library.
        let d = f.derive_relations();
        let td = t_dual_table(f);
        let sets = stable_sets(f.polarity());
        for a in &sets {
            for g in &sets {
                let ov = f.overt(&d, a, g);
                for c in &sets {
                    let left = a.is_subset(&f.la(&d, c, g));
                    let mid = ov.is_subset(c);
                    let right = g.is_subset(&implies(f, &td, a, c));
                    if !(left == mid && mid == right) {
                        errors.push(format!("{label}: oracle residuation fails at {a:?} {g:?} {c:?}"));
                    }
                }
            }
        }
        if largest > 8 {
            errors.push(format!("{label}: family of {largest} exceeds 8"));
        }
    }
    finish(errors, format!("{triples} stable triples, families ≤ {largest}"))
}

fn heyting_frames() -> Outcome {
    let mut errors = Vec::new();
    for (label, cf) in corpus_frames() {
        let name = label.split('/').next().unwrap();
        let f = cf.frame();
        let d = f.derive_relations();
        let rep = f.check_heyting_frame(&d);
        if HEYTING.contains(&name) {
            if !rep.is_heyting() {
                errors.push(format!("{label}: R111 ≠ R≤ at {:?}", rep.r111_equals_rleq.witness));
            }
            let p = f.polarity();
            let td = t_dual_table(f);
            let sets = stable_sets(p);
            for a in &sets {
                for c in &sets {
                    if f.overt(&d, a, c) != a.intersection(c) {
                        errors.push(format!("{label}: ⦿ ≠ ∩ at {a:?} {c:?}"));
                    }
                    let imp = implies(f, &td, a, c);
                    if f.kripke_implies(a, c) != imp {
                        errors.push(format!("{label}: kripke ≠ ⇒ at {a:?} {c:?}"));
                    }
                    if meet_residual(&sets, a, c).as_ref() != Some(&imp) {
                        errors.push(format!("{label}: ⇒ is not the residual of ∩ at {a:?} {c:?}"));
                    }
                }
            }
            if let Err(e) = cf.verify_heyting_canonical(CAP).and_then(|v| v.into_result()) {
                errors.push(format!("{label}: {e}"));
            }
        } else if name == "L3" && rep.r111_equals_rleq.passed {
            errors.push(format!("{label}: canonical L3 frame satisfies R111 = R≤"));
        }
    }
    finish(errors, "C2 C3 C4 B4 B8 Heyting in both modes, L3 not".into())
}

/// `A ∩ (B ∨ C) = (A ∩ B) ∨ (A ∩ C)` over the brute-force family.
fn brute_distributive(p: &Polarity) -> bool {
    let sets = stable_sets(p);
    sets.iter().all(|a| {
        sets.iter().all(|b| {
            sets.iter().all(|c| {
                a.intersection(&close(p, &b.union(c))) == close(p, &a.intersection(b).union(&a.intersection(c)))
            })
        })
    })
}

fn distributivity() -> Outcome {
    let mut errors = Vec::new();
    let mut tested = 0;
    let mut check = |label: &str, f: &ImplicativeFrame, expect: Option<bool>, errors: &mut Vec<String>| {
        tested += 1;
        let rep = f.check_distributivity(CAP).unwrap();
        let brute = brute_distributive(f.polarity());
        if rep.brute_force.passed != brute {
            errors.push(format!("{label}: library brute-force verdict {} vs oracle {brute}", rep.brute_force.passed));
        }
        if rep.section_condition.passed && !brute {
            errors.push(format!("{label}: section condition holds on a nondistributive frame"));
        }
        if let Some(want) = expect {
            if rep.section_condition.passed != want || brute != want {
                errors.push(format!(
                    "{label}: expected {want}, section {} brute {brute}",
                    rep.section_condition.passed
                ));
            }
        }
    };
    for (label, cf) in corpus_frames() {
        let name = label.split('/').next().unwrap();
        let expect = corpus::expectation(name).unwrap().distributive;
        check(&label, cf.frame(), Some(expect), &mut errors);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for i in 0..200 {
        let rf = random_canonical_frame(&mut rng, 6);
        check(&format!("random {i}"), &rf.frame, None, &mut errors);
    }
    finish(errors, format!("M3 N5 fail both tests, distributive members pass both, {tested} frames one-directional"))
}

fn an_chain() -> Outcome {
    let mut errors = Vec::new();
    for name in HEYTING {
        let l = corpus::by_name(name).unwrap();
        if !l.check_an(1).unwrap().passed {
            errors.push(format!("{name}: A_1 fails"));
        }
    }
    let l3 = corpus::l3();
    let (half, zero, one) = (l3.index_of("half").unwrap(), l3.index_of("0").unwrap(), l3.index_of("1").unwrap());
    let a1 = l3.check_an(1).unwrap();
    if a1.passed || a1.witness != Some(vec![half, zero]) {
        errors.push(format!("L3: A_1 verdict {} witness {:?}", a1.passed, a1.witness));
    }
    let twice = l3.arrow(half, l3.arrow(half, zero).unwrap()).unwrap();
    let once = l3.arrow(half, zero).unwrap();
    if twice != one || once != half {
        errors.push(format!("L3: ½²→0 = {} and ½→0 = {}", l3.name(twice), l3.name(once)));
    }
    if !l3.check_an(2).unwrap().passed {
        errors.push("L3: A_2 fails".into());
    }
    for (name, l) in corpus::all() {
        for n in 1..=3 {
            // Oracle: a^(n+1) -> b <= a^n -> b for all a, b.
            let holds = |n: usize| {
                l.elems().all(|a| {
                    l.elems().all(|b| {
                        let lower = (0..n).fold(b, |acc, _| l.arrow(a, acc).unwrap());
                        l.leq(l.arrow(a, lower).unwrap(), lower)
                    })
                })
            };
            if l.check_an(n).unwrap().passed != holds(n) {
                errors.push(format!("{name}: A_{n} verdict disagrees with table evaluation"));
            }
            if holds(n) && !holds(n + 1) {
                errors.push(format!("{name}: A_{n} holds but A_{} fails", n + 1));
            }
        }
    }
    finish(errors, "Heyting members pass A_1, L3 fails A_1 at (½,0) with 1 vs ½, passes A_2, chain monotone".into())
}

/// Certification of every corpus complex algebra. Failures of the left unit
/// law on M3 and N5 are reported separately from all other failures.
fn certification() -> (Outcome, Vec<String>) {
    let mut errors = Vec::new();
    let mut left_unit = Vec::new();
    for (label, cf) in corpus_frames() {
        let name = label.split('/').next().unwrap();
        let ca = cf.frame().full_complex_algebra(CAP).unwrap();
        let cert = ca.certify();
        for c in cert.checks() {
            if c.passed {
                continue;
            }
            let line = format!("{label}: {} fails at {:?}", c.name, c.witness);
            if c.name == "left-unit" {
                left_unit.push(name.to_string());
                errors.push(line);
            } else if corpus::expectation(name).unwrap().distributive || !["A4", "H1", "H2"].contains(&c.name.as_str()) {
                errors.push(format!("{line} (unexpected)"));
            }
        }
        if corpus::expectation(name).unwrap().distributive && !cert.residuated_heyting() && cert.left_unit.passed {
            errors.push(format!("{label}: distributive member does not certify residuated Heyting (unexpected)"));
        }
    }
    left_unit.dedup();
    (finish(errors, "every corpus complex algebra is integral residuated, distributive ones residuated Heyting".into()), left_unit)
}

fn polarity_facts(p: &Polarity) -> Vec<String> {
    let mut errors = Vec::new();
    for (side, q) in [("X", p.clone()), ("Y", p.dual())] {
        let mut bad = |what: String| errors.push(format!("side {side}: {what}"));
        let (nx, ny) = (q.size(Side::X), q.size(Side::Y));
        let family = stable_sets(&q);
        let lib = q.enumerate_galois(Side::X, CAP).unwrap();
        if lib.sets() != family.as_slice() {
            bad(format!("enumeration {:?} vs scan {:?}", lib.sets(), family));
        }
        let gammas: Vec<PointSet> = (0..nx).map(|x| gamma(&q, x)).collect();
        let dual = q.dual();
        for x in 0..nx {
            for z in 0..nx {
                if q.leq(Side::X, x, z) != spec_leq(&q, x, z) {
                    bad(format!("specialization at {x} {z}"));
                }
                for y in 0..ny {
                    if q.perp(x, y) && spec_leq(&q, x, z) && !q.perp(z, y) {
                        bad(format!("⊥ not increasing at x {x} ⪯ {z}, y {y}"));
                    }
                }
            }
            for y in 0..ny {
                for w in 0..ny {
                    if q.perp(x, y) && spec_leq(&dual, y, w) && !q.perp(x, w) {
                        bad(format!("⊥ not increasing at y {y} ⪯ {w}, x {x}"));
                    }
                }
            }
            let single = PointSet::singleton(nx, x);
            if up(&q, &gammas[x]) != up(&q, &single) || q.gamma(Side::X, x) != gammas[x] {
                bad(format!("Γ at {x}"));
            }
        }
        for g in &family {
            let mut union = q.empty(Side::X);
            for u in g.iter() {
                if !gammas[u].is_subset(g) {
                    bad(format!("Γ{u} ⊄ {g:?}"));
                }
                union.union_with(&gammas[u]);
            }
            if union != *g || close(&q, &union) != *g {
                bad(format!("{g:?} is not the union of its Γu"));
            }
            let mut meet = q.full(Side::X);
            for y in up(&q, g).iter() {
                meet.intersect_with(&open(&q, y));
            }
            if meet != *g {
                bad(format!("{g:?} is not the meet of its open elements"));
            }
        }
        let all_x = subsets(nx);
        for w in &all_x {
            let cw = close(&q, w);
            for g in &family {
                if cw.is_subset(g) != w.is_subset(g) {
                    bad(format!("W″ ⊆ G fails for {w:?} {g:?}"));
                }
            }
        }
        let all_y = subsets(ny);
        for u in &all_x {
            let up_lib = q.polar(Side::X, u);
            if up_lib != up(&q, u) {
                bad(format!("polar of {u:?}"));
            }
            for v in &all_y {
                if v.is_subset(&up_lib) != u.is_subset(&q.polar(Side::Y, v)) {
                    bad(format!("Galois connection at {u:?} {v:?}"));
                }
            }
        }
        let sets = lib.sets();
        for i in 0..lib.len() {
            for j in 0..lib.len() {
                if *lib.set(lib.meet(i, j)) != sets[i].intersection(&sets[j]) {
                    bad(format!("family meet at {i} {j}"));
                }
                if *lib.set(lib.join(i, j)) != close(&q, &sets[i].union(&sets[j])) {
                    bad(format!("family join at {i} {j}"));
                }
            }
        }
    }
    errors
}

fn subfamilies(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(s) = stack.pop() {
        if s.len() < max {
            for j in s.last().unwrap() + 1..n {
                let mut t = s.clone();
                t.push(j);
                stack.push(t);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}

fn implication_items(f: &ImplicativeFrame, max_sub: usize) -> Vec<String> {
    let mut errors = Vec::new();
    let p = f.polarity();
    let (nx, ny) = (p.size(Side::X), p.size(Side::Y));
    let td = t_dual_table(f);
    let sets = stable_sets(p);
    let n = sets.len();
    let imp: Vec<PointSet> = (0..n * n).map(|k| f.implies(&sets[k / n], &sets[k % n])).collect();
    // (4) and stability
    for k in 0..n * n {
        let (a, c) = (&sets[k / n], &sets[k % n]);
        if !sets.contains(&imp[k]) {
            errors.push(format!("A⇒C not stable at {a:?} {c:?}"));
        }
        if imp[k] != implies(f, &td, a, c) || imp[k] != f.implies_pointwise(a, c) {
            errors.push(format!("(4) pointwise form differs at {a:?} {c:?}"));
        }
        // (5)
        if a.is_subset(c) != imp[k].is_full() {
            errors.push(format!("(5) fails at {a:?} {c:?}"));
        }
    }
    // (3)
    let point_imp: Vec<Vec<PointSet>> =
        (0..nx).map(|x| (0..ny).map(|y| f.implies(&gamma(p, x), &open(p, y))).collect()).collect();
    for u in 0..nx {
        for x in 0..nx {
            for y in 0..ny {
                if td[u][x][y] != point_imp[x][y].contains(u) {
                    errors.push(format!("(3) fails at u {u} x {x} y {y}"));
                }
            }
        }
    }
    // (2)
    for k in 0..n * n {
        let (a, c) = (&sets[k / n], &sets[k % n]);
        let mut meet = p.full(Side::X);
        for x in a.iter() {
            for y in up(p, c).iter() {
                meet.intersect_with(&point_imp[x][y]);
            }
        }
        if meet != imp[k] {
            errors.push(format!("(2) fails at {a:?} {c:?}"));
        }
    }
    // (1) monotonicity
    for a in 0..n {
        for b in 0..n {
            if !sets[a].is_subset(&sets[b]) {
                continue;
            }
            for c in 0..n {
                if !imp[b * n + c].is_subset(&imp[a * n + c]) {
                    errors.push(format!("(1) not antitone at {a} {b} {c}"));
                }
                if !imp[c * n + a].is_subset(&imp[c * n + b]) {
                    errors.push(format!("(1) not monotone at {c} {a} {b}"));
                }
            }
        }
    }
    // (1) joins in the first place and meets in the second
    let subs = subfamilies(n, max_sub);
    for ai in &subs {
        let mut join = p.empty(Side::X);
        for &i in ai {
            join.union_with(&sets[i]);
        }
        let join = close(p, &join);
        for cj in &subs {
            let mut meet = p.full(Side::X);
            let mut pieces = p.full(Side::X);
            for &j in cj {
                meet.intersect_with(&sets[j]);
                for &i in ai {
                    pieces.intersect_with(&imp[i * n + j]);
                }
            }
            if f.implies(&join, &meet) != pieces {
                errors.push(format!("(1) distribution fails at {ai:?} {cj:?}"));
            }
        }
    }
    errors
}

fn preliminaries() -> Outcome {
    let start = Instant::now();
    let mut errors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for i in 0..200 {
        let density = [0.3, 0.5, 0.7].choose(&mut rng).copied().unwrap();
        let p = random_polarity(&mut rng, 6, 6, density);
        errors.extend(polarity_facts(&p).into_iter().map(|e| format!("random polarity {i}: {e}")));
    }
    let mut axioms_checked = 0;
    for i in 0..200 {
        let rf = random_canonical_frame(&mut rng, 6);
        let f = &rf.frame;
        if !f.check_axioms().passed() {
            errors.push(format!("random frame {i}: fails F0-F4"));
            continue;
        }
        axioms_checked += 1;
        errors.extend(polarity_facts(f.polarity()).into_iter().map(|e| format!("random frame {i}: {e}")));
        errors.extend(implication_items(f, 2).into_iter().map(|e| format!("random frame {i}: {e}")));
    }
    for (label, cf) in corpus_frames() {
        let f = cf.frame();
        errors.extend(polarity_facts(f.polarity()).into_iter().map(|e| format!("{label}: {e}")));
        errors.extend(implication_items(f, 3).into_iter().map(|e| format!("{label}: {e}")));
    }
    errors.truncate(20);
    finish(
        errors,
        format!(
            "200 random polarities, {axioms_checked} random frames, 16 corpus frames in {:.1?}",
            start.elapsed()
        ),
    )
}

/// Formula value by the oracle: polars from `⊥`, implication from `T′`.
fn oracle_value(f: &ImplicativeFrame, td: &[Vec<Vec<bool>>], val: &BTreeMap<String, PointSet>, phi: &Formula) -> PointSet {
    let p = f.polarity();
    match phi {
        Formula::Atom(a) => val[a].clone(),
        Formula::Top => p.full(Side::X),
        Formula::Bot => close(p, &p.empty(Side::X)),
        Formula::And(l, r) => oracle_value(f, td, val, l).intersection(&oracle_value(f, td, val, r)),
        Formula::Or(l, r) => {
            let co = up(p, &oracle_value(f, td, val, l)).intersection(&up(p, &oracle_value(f, td, val, r)));
            down(p, &co)
        }
        Formula::Imp(l, r) => implies(f, td, &oracle_value(f, td, val, l), &oracle_value(f, td, val, r)),
    }
}

fn semantics() -> Outcome {
    let start = Instant::now();
    let mut errors = Vec::new();
    let atoms = ["p", "q", "r"];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for (k, (label, cf)) in corpus_frames().into_iter().enumerate() {
        let name = label.split('/').next().unwrap();
        let f = cf.frame();
        let p = f.polarity();
        let td = t_dual_table(f);
        let sets = stable_sets(p);
        let heyting = HEYTING.contains(&name);
        for (i, phi) in random_formulas(k as u64, 50, 5, &atoms).iter().enumerate() {
            let val: BTreeMap<String, PointSet> =
                atoms.iter().map(|a| (a.to_string(), sets.choose(&mut rng).unwrap().clone())).collect();
            let model = Model::new(f, val.clone()).unwrap();
            if model.is_heyting() != heyting {
                errors.push(format!("{label}: Heyting verdict {}", model.is_heyting()));
            }
            let interp = model.interpret(phi).unwrap();
            let mut bad = |what: &str| errors.push(format!("{label} formula {i} `{phi}`: {what}"));
            if !sets.contains(&interp.val) {
                bad("value not stable");
            }
            if interp.coval != up(p, &interp.val) || interp.val != down(p, &interp.coval) {
                bad("co-value is not the polar of the value");
            }
            if interp.val != oracle_value(f, &td, &val, phi) {
                bad("value differs from the oracle");
            }
            for s in phi.subformulas() {
                if let Formula::Imp(l, r) = s {
                    let (vl, vr) = (model.interpret(l).unwrap().val, model.interpret(r).unwrap().val);
                    if model.interpret(s).unwrap().val != f.implies(&vl, &vr) {
                        bad("clause (3) differs from algebraic ⇒");
                    }
                }
            }
            let rep = model.check_clause_equivalences(phi).unwrap();
            for c in rep.checks() {
                if !c.passed {
                    bad(&format!("{} fails at {:?}", c.name, c.witness));
                }
            }
            if rep.kripke.is_some() != heyting {
                bad("Kripke clause presence");
            }
        }
    }
    let c3 = canon("C3", true);
    let m = c3.source().index_of("m").unwrap();
    let model = Model::new(c3.frame(), BTreeMap::from([("p".to_string(), c3.rep_x(m))])).unwrap();
    if model.validity(&parse_formula("p | (p -> 0)").unwrap()).unwrap() {
        errors.push("excluded middle valid on C3".into());
    }
    let l3 = canon("L3", true);
    let src: &FiniteLattice = l3.source();
    let val = BTreeMap::from([
        ("p".to_string(), l3.rep_x(src.index_of("half").unwrap())),
        ("q".to_string(), l3.rep_x(src.index_of("0").unwrap())),
    ]);
    let model = Model::new(l3.frame(), val).unwrap();
    if model.validity(&parse_formula("(p -> (p -> q)) -> (p -> q)").unwrap()).unwrap() {
        errors.push("contraction valid on L3".into());
    }
    errors.truncate(20);
    finish(
        errors,
        format!("50 formulas on each of 16 frames in {:.1?}; excluded middle fails on C3, contraction on L3", start.elapsed()),
    )
}

fn mode_equivalence() -> Outcome {
    let mut errors = Vec::new();
    for (name, l) in corpus::all() {
        let (proper, all) = (canon(name, true), canon(name, false));
        let fp = proper.frame().stable_family(CAP).unwrap();
        let fa = all.frame().stable_family(CAP).unwrap();
        if fp.lattice().find_isomorphism(fa.lattice()).is_none() {
            errors.push(format!("{name}: stable-set lattices not isomorphic"));
        }
        if fp.lattice().find_isomorphism(&l).is_none() {
            errors.push(format!("{name}: stable-set lattice not isomorphic to the source"));
        }
        let verdicts = |cf: &CanonicalFrame| {
            let heyting = match cf.verify_heyting_canonical(CAP) {
                Ok(v) => Some(v.passed()),
                Err(_) => None,
            };
            (
                cf.verify_lattice_rep(CAP).unwrap().passed(),
                cf.verify_implicative_rep().unwrap().passed(),
                cf.verify_basis(CAP).unwrap().passed(),
                cf.verify_upper_bound().passed(),
                heyting,
                cf.frame().is_heyting_frame(),
            )
        };
        let (vp, va) = (verdicts(&proper), verdicts(&all));
        if vp != va {
            errors.push(format!("{name}: verdicts {vp:?} vs {va:?}"));
        }
        if !(vp.0 && vp.1 && vp.2) {
            errors.push(format!("{name}: representation verdicts {vp:?}"));
        }
    }
    finish(errors, "8 lattices, isomorphic families and matching verdicts".into())
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    let mut report = |n: usize, title: &str, outcome: &Outcome, expected_fail: bool| {
        match outcome {
            Ok(summary) => println!("criterion {n:>2} {title}: PASS ({summary})"),
            Err(errors) => {
                println!("criterion {n:>2} {title}: FAIL");
                for e in errors {
                    println!("    {e}");
                }
                if !expected_fail {
                    unexpected.push(n);
                }
            }
        }
    };
    report(1, "frame axioms", &frame_axioms(), false);
    report(2, "representation isomorphism", &representation(), false);
    report(3, "residuation", &residuation(), false);
    report(4, "Heyting frames", &heyting_frames(), false);
    report(5, "distributivity separation", &distributivity(), false);
    report(6, "A_n chain", &an_chain(), false);
    // The left unit law 1 ⦿ A = A needs 1 → b = b in the source lattice,
    // which no implicative arrow on M3 or N5 satisfies. Only that failure
    // is tolerated.
    let (cert, left_unit) = certification();
    let tolerated = match &cert {
        Ok(_) => true,
        Err(errors) => {
            errors.iter().all(|e| e.contains("left-unit") && !e.contains("unexpected"))
                && left_unit.iter().all(|n| n == "M3" || n == "N5")
        }
    };
    report(7, "complex algebra certification", &cert, tolerated);
    report(8, "polarity facts and implication properties", &preliminaries(), false);
    report(9, "semantics coherence", &semantics(), false);
    report(10, "mode equivalence", &mode_equivalence(), false);
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
