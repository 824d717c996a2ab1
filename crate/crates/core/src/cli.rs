//! Command implementations behind the `galframe` binary. Each command returns
//! a [`Report`]; the binary only parses arguments and prints.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::canonical::{CanonicalError, CanonicalFrame};
use crate::check::Check;
use crate::corpus;
use crate::frame::{FrameError, ImplicativeFrame};
use crate::io::{self, FrameFile, IoError, LATTICE_HEADER};
use crate::lattice::FiniteLattice;
use crate::polarity::Side;
use crate::report::{Report, Section};
use crate::semantics::{parse_formula, random_formulas, Model, SemanticsError, SyntaxError};
use crate::sets::PointSet;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("formula: {0}")]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub max_family: usize,
    pub seed: u64,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_family: crate::polarity::DEFAULT_MAX_FAMILY, seed: 0, timing: false }
    }
}

impl Options {
    fn timed<T>(&self, f: impl FnOnce() -> T) -> (T, Option<Duration>) {
        let start = Instant::now();
        let out = f();
        (out, self.timing.then(|| start.elapsed()))
    }
}

fn mode_name(proper_only: bool) -> &'static str {
    if proper_only {
        "proper-only"
    } else {
        "all-points"
    }
}

fn names_of(set: &PointSet, names: &[String]) -> String {
    let v: Vec<&str> = set.iter().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Build a canonical frame; a source that is not implicative, or a frame
/// failing its axioms, yields a failed report section instead of an error.
fn build_canonical(l: &FiniteLattice, proper_only: bool) -> Result<Result<CanonicalFrame, Section>, CliError> {
    match CanonicalFrame::build(l, proper_only) {
        Ok(cf) => Ok(Ok(cf)),
        Err(CanonicalError::NotImplicative(c)) => {
            let mut s = Section::new("precondition");
            s.check(&c);
            Ok(Err(s))
        }
        Err(CanonicalError::VerificationFailure(c)) => {
            let mut s = Section::new("frame axioms");
            s.check(&c);
            Ok(Err(s))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn check_lattice(source: &str, ns: &[usize], opts: &Options) -> Result<Report, CliError> {
    let lf = io::load_lattice(source)?;
    let l = &lf.lattice;
    let mut r = Report::new("check-lattice", source);

    let (laws, t) = opts.timed(|| l.check_lattice_laws());
    let mut s = Section::new("lattice");
    s.fact("elements", l.len())
        .fact("bottom", l.name(l.bot()))
        .fact("top", l.name(l.top()))
        .check(&laws);
    r.push(s, t);

    let mut s = Section::new("implicative");
    let (imp, t) = opts.timed(|| l.check_implicative());
    match &imp {
        Ok(rep) => {
            s.checks(rep.checks());
        }
        Err(_) => {
            s.skip("A1-A3", "no arrow table");
        }
    }
    r.push(s, t);

    let mut s = Section::new("distributive");
    let (a4, t) = opts.timed(|| l.check_distributive());
    s.check(&a4);
    s.fact(
        "residual of meet",
        if l.residual_arrow().is_ok() { "exists" } else { "none" },
    );
    r.push(s, t);

    let mut s = Section::new("heyting");
    let (h, t) = opts.timed(|| l.check_heyting());
    match &h {
        Ok(rep) => {
            s.checks([&rep.h1, &rep.h2]);
        }
        Err(_) => {
            s.skip("H1-H2", "no arrow table");
        }
    }
    r.push(s, t);

    let mut s = Section::new("iterated arrow");
    let (an, t) = opts.timed(|| ns.iter().map(|&n| l.check_an(n)).collect::<Vec<_>>());
    for (n, c) in ns.iter().zip(&an) {
        match c {
            Ok(c) => {
                s.check(c);
            }
            Err(_) => {
                s.skip(format!("A_{n}"), "no arrow table");
            }
        }
    }
    r.push(s, t);

    if lf.expect_distributive || lf.expect_heyting {
        let mut s = Section::new("expectations");
        let flag = |name: &str, ok: bool| if ok { Check::pass(name, 1) } else { Check::fail(name, vec![], 1) };
        if lf.expect_distributive {
            s.check(&flag("expect distributive", a4.passed));
        }
        if lf.expect_heyting {
            s.check(&flag("expect heyting", h.as_ref().is_ok_and(|h| h.passed())));
        }
        r.push(s, None);
    }
    Ok(r)
}

pub fn canonical(source: &str, proper_only: bool, verify: bool, opts: &Options) -> Result<Report, CliError> {
    let lf = io::load_lattice(source)?;
    let mut r = Report::new("canonical", format!("{source} ({})", mode_name(proper_only)));
    let (built, t) = opts.timed(|| build_canonical(&lf.lattice, proper_only));
    let cf = match built? {
        Ok(cf) => cf,
        Err(section) => {
            r.push(section, t);
            return Ok(r);
        }
    };
    let frame = cf.frame();
    let mut s = Section::new("frame");
    s.fact("x points", frame.size(Side::X))
        .fact("y points", frame.size(Side::Y))
        .fact("t tuples", frame.t().len())
        .checks(frame.check_axioms().checks());
    r.push(s, t);

    if verify {
        let cap = opts.max_family;
        let (v, t) = opts.timed(|| cf.verify_lattice_rep(cap));
        push_verification(&mut r, v?, t);
        let (v, t) = opts.timed(|| cf.verify_implicative_rep());
        push_verification(&mut r, v?, t);
        let (v, t) = opts.timed(|| cf.verify_basis(cap));
        push_verification(&mut r, v?, t);
        let (v, t) = opts.timed(|| cf.verify_upper_bound());
        push_verification(&mut r, v, t);
        let (v, t) = opts.timed(|| cf.verify_heyting_canonical(cap));
        match v {
            Ok(v) => push_verification(&mut r, v, t),
            Err(CanonicalError::NotHeyting(c)) => {
                let mut s = Section::new("heyting-canonical");
                s.skip("heyting-canonical", format!("source is not Heyting: {} fails", c.name));
                r.push(s, t);
            }
            Err(e) => return Err(e.into()),
        }
    }
    r.artifact = Some(io::write_frame(&FrameFile::from_canonical(&cf)));
    Ok(r)
}

fn push_verification(r: &mut Report, v: crate::canonical::Verification, t: Option<Duration>) {
    let mut s = Section::new(v.name.clone());
    s.checks(&v.checks);
    r.push(s, t);
}

/// A loaded frame and, for lattice sources, its canonical construction.
pub struct FrameSource {
    pub file: FrameFile,
    pub canonical: Option<CanonicalFrame>,
}

/// A corpus name, a `GLATTICE 1` file (canonical frame of it) or a
/// `GFRAME 1` file.
pub fn load_frame_source(source: &str, proper_only: bool) -> Result<Result<FrameSource, Section>, CliError> {
    let lattice = if corpus::by_name(source).is_some() {
        Some(io::load_lattice(source)?.lattice)
    } else {
        let text = std::fs::read_to_string(source)
            .map_err(|e| IoError::File { path: source.to_string(), source: e })?;
        let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        if first == Some(LATTICE_HEADER) {
            Some(io::parse_lattice(&text)?.lattice)
        } else {
            let file = io::parse_frame(&text)?;
            return Ok(Ok(FrameSource { file, canonical: None }));
        }
    };
    let l = lattice.expect("lattice source");
    Ok(build_canonical(&l, proper_only)?.map(|cf| FrameSource {
        file: FrameFile::from_canonical(&cf),
        canonical: Some(cf),
    }))
}

pub fn check_frame(source: &str, proper_only: bool, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("check-frame", source);
    let fs = match load_frame_source(source, proper_only)? {
        Ok(fs) => fs,
        Err(section) => {
            r.push(section, None);
            return Ok(r);
        }
    };
    let f = &fs.file.frame;
    let cap = opts.max_family;

    let (axioms, t) = opts.timed(|| f.check_axioms());
    let mut s = Section::new("axioms");
    s.fact("x points", f.size(Side::X))
        .fact("y points", f.size(Side::Y))
        .fact("t tuples", f.t().len())
        .checks(axioms.checks());
    r.push(s, t);

    let (d, t) = opts.timed(|| {
        let d = f.derive_relations();
        let v = d.verify(f);
        (d, v)
    });
    let (d, dv) = d;
    let mut s = Section::new("derived relations");
    s.check(&dv);
    r.push(s, t);

    let (res, t) = opts.timed(|| f.check_residuation_with(&d, cap));
    let res = res?;
    let mut s = Section::new("residuation");
    s.fact("stable sets", res.family_size)
        .fact("triples", res.triples)
        .check(&res.check);
    r.push(s, t);

    let (dist, t) = opts.timed(|| f.check_distributivity(cap));
    let dist = dist?;
    let mut s = Section::new("distributivity");
    s.check(&dist.section_condition).check(&dist.brute_force);
    let consistent = if dist.consistent() {
        Check::pass("section-condition-implies-brute-force", 1)
    } else {
        Check::fail("section-condition-implies-brute-force", vec![], 1)
    };
    s.check(&consistent);
    r.push(s, t);

    let (h, t) = opts.timed(|| f.check_heyting_frame(&d));
    let mut s = Section::new("heyting frame");
    s.fact("heyting", h.is_heyting())
        .checks([&h.r111_equals_rleq, &h.lower, &h.upper]);
    r.push(s, t);
    Ok(r)
}

pub fn complex_algebra(source: &str, proper_only: bool, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("complex-algebra", source);
    let fs = match load_frame_source(source, proper_only)? {
        Ok(fs) => fs,
        Err(section) => {
            r.push(section, None);
            return Ok(r);
        }
    };
    let f = &fs.file.frame;
    let (ca, t) = opts.timed(|| f.full_complex_algebra(opts.max_family));
    let ca = ca?;
    let xn = f.polarity().names(Side::X);
    let n = ca.len();

    let mut s = Section::new("stable sets");
    s.fact("count", n);
    for (i, set) in ca.family.sets().iter().enumerate() {
        let label = fs
            .file
            .reps
            .iter()
            .filter(|(_, rep)| rep == set)
            .map(|(name, _)| format!(" = X_{name}"))
            .collect::<String>();
        s.fact(format!("G{i}"), format!("{}{label}", names_of(set, xn)));
    }
    r.push(s, t);

    let mut s = Section::new("tables");
    let table = |get: &dyn Fn(usize, usize) -> usize| {
        (0..n)
            .map(|i| (0..n).map(|j| format!("G{}", get(i, j))).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
    };
    for (name, rows) in [
        ("A ⇒ C", table(&|a, c| ca.imp(a, c))),
        ("A ⦿ F", table(&|a, b| ca.overt(a, b))),
        ("C ⇐ F", table(&|c, b| ca.la(c, b))),
    ] {
        for (i, row) in rows.into_iter().enumerate() {
            s.fact(format!("{name} row G{i}"), row);
        }
    }
    r.push(s, None);

    let (cert, t) = opts.timed(|| ca.certify());
    let mut s = Section::new("certification");
    s.fact("integral residuated", cert.integral_residuated())
        .fact("residuated heyting", cert.residuated_heyting())
        .checks([&cert.residuation, &cert.right_unit, &cert.left_unit]);
    r.push(s, t);

    let mut s = Section::new("structure");
    s.check(&cert.distributive).checks(cert.under_implicative.checks());
    match &cert.heyting {
        Some(h) => {
            s.checks([&h.h1, &h.h2]);
        }
        None => {
            s.skip("H1-H2", "intersection has no residual");
        }
    }
    r.push(s, None);
    Ok(r)
}

/// Parse `atom=SPEC` where SPEC is `X_a` for a recorded element or a point
/// list `{x, ...}`. Point lists that are not stable are stabilized with a
/// warning.
pub fn parse_binding(frame: &ImplicativeFrame, file: &FrameFile, text: &str, warnings: &mut Vec<String>) -> Result<(String, PointSet), CliError> {
    let (atom, spec) = text
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--let expects atom=SPEC, got {text:?}")))?;
    let (atom, spec) = (atom.trim(), spec.trim());
    if atom.is_empty() || !atom.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(CliError::Usage(format!("bad atom name {atom:?}")));
    }
    let p = frame.polarity();
    if let Some(name) = spec.strip_prefix("X_") {
        let set = file
            .rep(name)
            .ok_or_else(|| CliError::Usage(format!("no element {name:?} recorded for X_{name}")))?;
        return Ok((atom.to_string(), set.clone()));
    }
    let inner = spec
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| CliError::Usage(format!("value must be X_a or {{points}}, got {spec:?}")))?;
    let mut set = p.empty(Side::X);
    for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let x = p
            .index_of(Side::X, name)
            .ok_or_else(|| CliError::Usage(format!("unknown point {name:?}")))?;
        set.insert(x);
    }
    if !p.is_stable(&set) {
        let closed = p.closure(Side::X, &set);
        warnings.push(format!(
            "{atom}: {} is not stable, using {}",
            names_of(&set, p.names(Side::X)),
            names_of(&closed, p.names(Side::X))
        ));
        set = closed;
    }
    Ok((atom.to_string(), set))
}

pub fn model_check(
    source: &str,
    proper_only: bool,
    bindings: &[String],
    formula: &str,
    random: usize,
    opts: &Options,
) -> Result<Report, CliError> {
    let phi = parse_formula(formula)?;
    let mut r = Report::new("model-check", format!("{source}: {phi}"));
    let fs = match load_frame_source(source, proper_only)? {
        Ok(fs) => fs,
        Err(section) => {
            r.push(section, None);
            return Ok(r);
        }
    };
    let frame = &fs.file.frame;
    let mut warnings = Vec::new();
    let mut valuation = BTreeMap::new();
    for b in bindings {
        let (atom, set) = parse_binding(frame, &fs.file, b, &mut warnings)?;
        valuation.insert(atom, set);
    }
    let model = Model::new(frame, valuation)?;
    let p = frame.polarity();

    let (out, t) = opts.timed(|| -> Result<_, SemanticsError> {
        Ok((model.interpret(&phi)?, model.validity(&phi)?, model.check_clause_equivalences(&phi)?))
    });
    let (interp, valid, clauses) = out?;
    let mut s = Section::new("formula");
    s.fact("formula", &phi)
        .fact("value", names_of(&interp.val, p.names(Side::X)))
        .fact("co-value", names_of(&interp.coval, p.names(Side::Y)))
        .fact("valid", valid)
        .fact("heyting frame", model.is_heyting());
    s.checks([&clauses.implication, &clauses.disjunction]);
    match &clauses.kripke {
        Some(k) => {
            s.check(k);
        }
        None => {
            s.skip("kripke-clause", "not a Heyting frame");
        }
    }
    r.push(s, t);

    if random > 0 {
        let atoms: Vec<String> = model.valuation().keys().cloned().collect();
        if atoms.is_empty() {
            return Err(CliError::Usage("--random needs at least one --let binding".into()));
        }
        let atom_refs: Vec<&str> = atoms.iter().map(String::as_str).collect();
        let (checks, t) = opts.timed(|| -> Result<Vec<Check>, SemanticsError> {
            let mut parts = Vec::new();
            for (k, f) in random_formulas(opts.seed, random, 5, &atom_refs).iter().enumerate() {
                let rep = model.check_clause_equivalences(f)?;
                let i = model.interpret(f)?;
                let coherent = i.coval == p.polar(Side::X, &i.val) && i.val == p.polar(Side::Y, &i.coval) && p.is_stable(&i.val);
                let mut all = rep.checks().into_iter().cloned().collect::<Vec<_>>();
                all.push(if coherent { Check::pass("coherence", 1) } else { Check::fail("coherence", vec![], 1) });
                let mut c = Check::all(format!("formula {k}"), &all);
                if let Some(w) = c.witness.as_mut() {
                    w.insert(0, k);
                }
                parts.push(c);
            }
            Ok(parts)
        });
        let checks = checks?;
        let mut s = Section::new("random formulas");
        s.fact("seed", opts.seed).fact("count", random);
        s.check(&Check::all("clauses-and-coherence", &checks));
        r.push(s, t);
    }
    r.warnings = warnings;
    Ok(r)
}
