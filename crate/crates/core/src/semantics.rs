//! Formulas over `{∧, ∨, →, 0, 1}` and their two-sorted interpretation in an
//! implicative frame: `⟦φ⟧` is a stable set of satisfying points, `co-⟦φ⟧`
//! the co-stable set of refuting points.
//!
//! Concrete syntax: `&`, `|`, `->` (also `∧`, `∨`, `→`), constants `0`, `1`
//! (also `⊥`, `⊤`), identifiers as atoms. `->` binds weakest and associates
//! to the right; `|` and `&` associate to the left.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::check::{mixed_tuples, Check};
use crate::frame::ImplicativeFrame;
use crate::polarity::Side;
use crate::sets::PointSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot | Formula::Top => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Atom names in sorted order, without repetition.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => out.push(a.clone()),
            Formula::Bot | Formula::Top => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Subformulas in post-order; the formula itself comes last.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.post_order(&mut out);
        out
    }

    fn post_order<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        if let Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) = self {
            l.post_order(out);
            r.post_order(out);
        }
        out.push(self);
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(a) => f.write_str(a)?,
            Formula::Bot => f.write_str("0")?,
            Formula::Top => f.write_str("1")?,
            Formula::And(l, r) => {
                l.write_at(f, 3)?;
                f.write_str(" & ")?;
                r.write_at(f, 4)?;
            }
            Formula::Or(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" | ")?;
                r.write_at(f, 3)?;
            }
            Formula::Imp(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" -> ")?;
                r.write_at(f, 1)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// Position is the 1-based character column.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    And,
    Or,
    Imp,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Imp
            }
            '0' | '⊥' => Tok::Bot,
            '1' | '⊤' => Tok::Top,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(SyntaxError { position: pos, message: format!("unexpected character {other:?}") });
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError { position: self.pos(), message: message.into() }
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let l = self.or()?;
        if self.peek() == Some(&Tok::Imp) {
            self.at += 1;
            let r = self.imp()?;
            return Ok(Formula::imp(l, r));
        }
        Ok(l)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut l = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            l = Formula::or(l, self.and()?);
        }
        Ok(l)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut l = self.primary()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            l = Formula::and(l, self.primary()?);
        }
        Ok(l)
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        let open = self.pos();
        self.at += 1;
        match tok {
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::Bot => Ok(Formula::Bot),
            Tok::Top => Ok(Formula::Top),
            Tok::LParen => {
                let inner = self.imp().map_err(|e| {
                    if e.position == self.end {
                        SyntaxError { position: open, message: "unclosed parenthesis".into() }
                    } else {
                        e
                    }
                })?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    None => Err(SyntaxError { position: open, message: "unclosed parenthesis".into() }),
                    Some(_) => Err(self.err("expected ')'")),
                }
            }
            _ => {
                self.at -= 1;
                Err(self.err("expected an atom, a constant or '('"))
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let toks = tokenize(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { toks, at: 0, end };
    let f = p.imp()?;
    if p.at < p.toks.len() {
        return Err(p.err("unexpected token"));
    }
    Ok(f)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("atom {0} has no value")]
    UnboundAtom(String),
    #[error("value of {atom} is not a stable set")]
    NotStable { atom: String },
    #[error("value of {atom} has universe {got}, expected {expected}")]
    WrongUniverse { atom: String, got: usize, expected: usize },
    #[error("entailment by inclusion and by validity of the implication disagree")]
    RouteMismatch,
}

/// Interpretation and co-interpretation of a formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interp {
    pub val: PointSet,
    pub coval: PointSet,
}

/// A frame with a valuation of atoms by stable sets.
#[derive(Clone, Debug)]
pub struct Model<'a> {
    frame: &'a ImplicativeFrame,
    valuation: BTreeMap<String, PointSet>,
    heyting: bool,
}

impl<'a> Model<'a> {
    pub fn new(frame: &'a ImplicativeFrame, valuation: BTreeMap<String, PointSet>) -> Result<Self, SemanticsError> {
        let p = frame.polarity();
        let nx = p.size(Side::X);
        for (atom, set) in &valuation {
            if set.universe() != nx {
                return Err(SemanticsError::WrongUniverse { atom: atom.clone(), got: set.universe(), expected: nx });
            }
            if !p.is_stable(set) {
                return Err(SemanticsError::NotStable { atom: atom.clone() });
            }
        }
        Ok(Model { frame, valuation, heyting: frame.is_heyting_frame() })
    }

    pub fn frame(&self) -> &ImplicativeFrame {
        self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, PointSet> {
        &self.valuation
    }

    pub fn is_heyting(&self) -> bool {
        self.heyting
    }

    pub fn interpret(&self, phi: &Formula) -> Result<Interp, SemanticsError> {
        let p = self.frame.polarity();
        let from_val = |val: PointSet| {
            let coval = p.polar(Side::X, &val);
            Interp { val, coval }
        };
        Ok(match phi {
            Formula::Atom(a) => {
                from_val(self.valuation.get(a).cloned().ok_or_else(|| SemanticsError::UnboundAtom(a.clone()))?)
            }
            Formula::Top => from_val(p.full(Side::X)),
            Formula::Bot => Interp { val: p.closure(Side::X, &p.empty(Side::X)), coval: p.full(Side::Y) },
            Formula::And(l, r) => {
                let (l, r) = (self.interpret(l)?, self.interpret(r)?);
                from_val(l.val.intersection(&r.val))
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.interpret(l)?, self.interpret(r)?);
                let coval = l.coval.intersection(&r.coval);
                Interp { val: p.polar(Side::Y, &coval), coval }
            }
            Formula::Imp(l, r) => {
                let (l, r) = (self.interpret(l)?, self.interpret(r)?);
                from_val(self.frame.implies(&l.val, &r.val))
            }
        })
    }

    pub fn satisfies(&self, x: usize, phi: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.interpret(phi)?.val.contains(x))
    }

    pub fn refutes(&self, y: usize, phi: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.interpret(phi)?.coval.contains(y))
    }

    /// `u ⊩ φ → ψ` by the pointwise clause: `u T′ x y` whenever `x ⊩ φ`
    /// and `y` refutes `ψ`.
    pub fn implication_clause(&self, u: usize, antecedent: &Interp, consequent: &Interp) -> bool {
        let t_dual = self.frame.t_dual();
        antecedent
            .val
            .iter()
            .all(|x| consequent.coval.iter().all(|y| t_dual.contains(&[u, x, y])))
    }

    /// `x ⊩ φ ∨ ψ` by the derived clause: every `y` with `x I y` (not `x ⊥ y`)
    /// fails to refute one of the disjuncts.
    pub fn disjunction_clause(&self, x: usize, l: &Interp, r: &Interp) -> bool {
        let p = self.frame.polarity();
        (0..p.size(Side::Y)).all(|y| p.perp(x, y) || !(l.coval.contains(y) && r.coval.contains(y)))
    }

    /// `x ⊩ φ → ψ` by the Kripke clause over the specialization order.
    pub fn kripke_clause(&self, x: usize, antecedent: &Interp, consequent: &Interp) -> bool {
        let p = self.frame.polarity();
        (0..p.size(Side::X))
            .all(|z| !p.leq(Side::X, x, z) || !antecedent.val.contains(z) || consequent.val.contains(z))
    }

    /// Compare each clause with membership in `⟦·⟧` on every connective
    /// subformula. Witnesses are `[subformula index in post-order, point]`.
    pub fn check_clause_equivalences(&self, phi: &Formula) -> Result<ClauseReport, SemanticsError> {
        let subs = phi.subformulas();
        let interps: Vec<Interp> = subs.iter().map(|s| self.interpret(s)).collect::<Result<_, _>>()?;
        let index_of = |f: &Formula| subs.iter().position(|s| std::ptr::eq(*s, f)).expect("own subformula");
        let nx = self.frame.size(Side::X);
        let pairs = |want: fn(&Formula) -> bool| -> Vec<(usize, usize, usize)> {
            subs.iter()
                .enumerate()
                .filter(|(_, s)| want(s))
                .map(|(i, s)| match s {
                    Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => (i, index_of(l), index_of(r)),
                    _ => unreachable!(),
                })
                .collect()
        };
        let imps = pairs(|f| matches!(f, Formula::Imp(..)));
        let ors = pairs(|f| matches!(f, Formula::Or(..)));
        let dims_for = |list: &[(usize, usize, usize)]| vec![list.len(), nx];

        let imp_dims = dims_for(&imps);
        let implication = Check::forall("implication-clause", mixed_tuples(&imp_dims), |t| {
            let (i, l, r) = imps[t[0]];
            self.implication_clause(t[1], &interps[l], &interps[r]) == interps[i].val.contains(t[1])
        })
        .with_subformula_index(&imps);
        let or_dims = dims_for(&ors);
        let disjunction = Check::forall("disjunction-clause", mixed_tuples(&or_dims), |t| {
            let (i, l, r) = ors[t[0]];
            self.disjunction_clause(t[1], &interps[l], &interps[r]) == interps[i].val.contains(t[1])
        })
        .with_subformula_index(&ors);
        let kripke = self.heyting.then(|| {
            Check::forall("kripke-clause", mixed_tuples(&imp_dims), |t| {
                let (_, l, r) = imps[t[0]];
                self.kripke_clause(t[1], &interps[l], &interps[r])
                    == self.implication_clause(t[1], &interps[l], &interps[r])
            })
            .with_subformula_index(&imps)
        });
        Ok(ClauseReport { implication, disjunction, kripke })
    }

    /// `X ⊆ ⟦φ⟧`.
    pub fn validity(&self, phi: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.interpret(phi)?.val.is_full())
    }

    /// `⟦φ⟧ ⊆ ⟦ψ⟧`, cross-checked against the validity of `φ → ψ`.
    pub fn entails(&self, phi: &Formula, psi: &Formula) -> Result<bool, SemanticsError> {
        let by_inclusion = self.interpret(phi)?.val.is_subset(&self.interpret(psi)?.val);
        let by_validity = self.validity(&Formula::imp(phi.clone(), psi.clone()))?;
        if by_inclusion != by_validity {
            return Err(SemanticsError::RouteMismatch);
        }
        Ok(by_inclusion)
    }
}

trait SubformulaWitness {
    fn with_subformula_index(self, list: &[(usize, usize, usize)]) -> Self;
}

impl SubformulaWitness for Check {
    /// Replace the position in the filtered list with the post-order index.
    fn with_subformula_index(mut self, list: &[(usize, usize, usize)]) -> Self {
        if let Some(w) = self.witness.as_mut() {
            w[0] = list[w[0]].0;
        }
        self
    }
}

#[derive(Clone, Debug)]
pub struct ClauseReport {
    pub implication: Check,
    pub disjunction: Check,
    /// Present on Heyting frames only.
    pub kripke: Option<Check>,
}

impl ClauseReport {
    pub fn passed(&self) -> bool {
        self.implication.passed && self.disjunction.passed && self.kripke.as_ref().is_none_or(|c| c.passed)
    }

    pub fn checks(&self) -> Vec<&Check> {
        let mut v = vec![&self.implication, &self.disjunction];
        v.extend(self.kripke.as_ref());
        v
    }
}

/// A random formula of depth at most `max_depth` over `atoms`.
pub fn random_formula<R: Rng>(rng: &mut R, max_depth: usize, atoms: &[&str]) -> Formula {
    if max_depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..atoms.len() + 2) {
            k if k < atoms.len() => Formula::atom(atoms[k]),
            k if k == atoms.len() => Formula::Bot,
            _ => Formula::Top,
        };
    }
    let l = random_formula(rng, max_depth - 1, atoms);
    let r = random_formula(rng, max_depth - 1, atoms);
    match rng.gen_range(0..3) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        _ => Formula::imp(l, r),
    }
}

/// `count` formulas from a ChaCha8 stream seeded with `seed`.
pub fn random_formulas(seed: u64, count: usize, max_depth: usize, atoms: &[&str]) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_formula(&mut rng, max_depth, atoms)).collect()
}
