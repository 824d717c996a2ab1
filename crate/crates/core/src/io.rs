//! Line-oriented text formats `GLATTICE 1` and `GFRAME 1`.
//!
//! Blank lines and lines starting with `#` are ignored. Names are single
//! whitespace-free tokens.
//!
//! ```text
//! GLATTICE 1
//! elements 0 a b 1
//! leq 0 a
//! leq 0 b
//! leq a 1
//! leq b 1
//! arrow a b = b
//! expect distributive
//! ```
//!
//! `order` rows of `0`/`1` flags may replace `leq` pairs. `leq` pairs are
//! closed reflexively and transitively. Arrow lines, if any, must cover every
//! pair.
//!
//! ```text
//! GFRAME 1
//! x x_1
//! y y_0
//! perp x_1 y_0
//! t y_0 x_1 y_0
//! rep 1 : x_1
//! ```
//!
//! `t y x v` means `y T x v`. `rep NAME : points...` records `X_a` for a
//! lattice element so valuations can name it.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::canonical::CanonicalFrame;
use crate::corpus;
use crate::frame::{FrameError, ImplicativeFrame};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::polarity::{Polarity, PolarityError, Side};
use crate::sets::PointSet;

pub const LATTICE_HEADER: &str = "GLATTICE 1";
pub const FRAME_HEADER: &str = "GFRAME 1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
}

fn perr(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

/// Numbered content lines with comments and blanks removed. The first must
/// be `header`.
fn content_lines<'a>(text: &'a str, header: &str) -> Result<Vec<(usize, Vec<&'a str>)>, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == header => {}
        Some((n, l)) => return Err(perr(n, format!("expected header {header:?}, found {l:?}"))),
        None => return Err(perr(1, format!("expected header {header:?}, found end of file"))),
    }
    Ok(lines.map(|(n, l)| (n, l.split_whitespace().collect())).collect())
}

fn names_index(line: usize, names: &[&str], what: &str) -> Result<HashMap<String, usize>, IoError> {
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.to_string(), i).is_some() {
            return Err(perr(line, format!("duplicate {what} name {n:?}")));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, line: usize, name: &str, what: &str) -> Result<usize, IoError> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| perr(line, format!("unknown {what} {name:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFile {
    pub lattice: FiniteLattice,
    pub expect_distributive: bool,
    pub expect_heyting: bool,
}

pub fn parse_lattice(text: &str) -> Result<LatticeFile, IoError> {
    let lines = content_lines(text, LATTICE_HEADER)?;
    let mut names: Option<(usize, Vec<String>, HashMap<String, usize>)> = None;
    let mut pairs = Vec::new();
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut arrows: Vec<(usize, usize, usize, usize)> = Vec::new();
    let (mut dist, mut heyt) = (false, false);

    for (ln, words) in lines {
        let need_names = || {
            names
                .as_ref()
                .map(|(_, _, idx)| idx)
                .ok_or_else(|| perr(ln, "elements must be declared first"))
        };
        match words[0] {
            "elements" => {
                if names.is_some() {
                    return Err(perr(ln, "elements declared twice"));
                }
                if words.len() < 2 {
                    return Err(perr(ln, "no elements"));
                }
                let idx = names_index(ln, &words[1..], "element")?;
                names = Some((ln, words[1..].iter().map(|s| s.to_string()).collect(), idx));
            }
            "leq" => {
                let idx = need_names()?;
                if words.len() != 3 {
                    return Err(perr(ln, "expected: leq A B"));
                }
                pairs.push((lookup(idx, ln, words[1], "element")?, lookup(idx, ln, words[2], "element")?));
            }
            "order" => {
                need_names()?;
                let row = words[1..]
                    .iter()
                    .map(|w| match *w {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        other => Err(perr(ln, format!("order entries are 0 or 1, found {other:?}"))),
                    })
                    .collect::<Result<Vec<bool>, _>>()?;
                rows.push(row);
            }
            "arrow" => {
                let idx = need_names()?;
                if words.len() != 5 || words[3] != "=" {
                    return Err(perr(ln, "expected: arrow A B = C"));
                }
                let a = lookup(idx, ln, words[1], "element")?;
                let b = lookup(idx, ln, words[2], "element")?;
                let c = lookup(idx, ln, words[4], "element")?;
                arrows.push((ln, a, b, c));
            }
            "expect" => match words.get(1..) {
                Some(["distributive"]) => dist = true,
                Some(["heyting"]) => heyt = true,
                _ => return Err(perr(ln, "expected: expect distributive|heyting")),
            },
            other => return Err(perr(ln, format!("unknown directive {other:?}"))),
        }
    }

    let (decl_line, names, _) = names.ok_or_else(|| perr(1, "missing elements line"))?;
    let n = names.len();
    let lattice = if rows.is_empty() {
        FiniteLattice::from_pairs(n, &pairs)?
    } else {
        if !pairs.is_empty() {
            return Err(perr(decl_line, "use either leq pairs or order rows, not both"));
        }
        if rows.len() != n {
            return Err(perr(decl_line, format!("{} order rows for {n} elements", rows.len())));
        }
        FiniteLattice::from_order(&rows)?
    };
    let mut lattice = lattice.with_names(names.iter().cloned())?;
    if !arrows.is_empty() {
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        for &(ln, a, b, c) in &arrows {
            if table[a * n + b].replace(c).is_some() {
                return Err(perr(ln, format!("arrow {} {} given twice", names[a], names[b])));
            }
        }
        if let Some(k) = table.iter().position(Option::is_none) {
            return Err(perr(
                arrows[0].0,
                format!("arrow table incomplete: missing {} {}", names[k / n], names[k % n]),
            ));
        }
        lattice = lattice.with_arrow(table.into_iter().map(|c| c.expect("complete")).collect())?;
    }
    Ok(LatticeFile { lattice, expect_distributive: dist, expect_heyting: heyt })
}

/// Covering pairs of the order, every arrow entry and the expectation flags.
pub fn write_lattice(f: &LatticeFile) -> String {
    let l = &f.lattice;
    let mut out = String::new();
    writeln!(out, "{LATTICE_HEADER}").unwrap();
    writeln!(out, "elements {}", l.names().join(" ")).unwrap();
    for a in l.elems() {
        for b in l.elems() {
            let covers = a != b && l.leq(a, b) && !l.elems().any(|c| c != a && c != b && l.leq(a, c) && l.leq(c, b));
            if covers {
                writeln!(out, "leq {} {}", l.name(a), l.name(b)).unwrap();
            }
        }
    }
    if let Some(t) = l.arrow_table() {
        let n = l.len();
        for a in l.elems() {
            for b in l.elems() {
                writeln!(out, "arrow {} {} = {}", l.name(a), l.name(b), l.name(t[a * n + b])).unwrap();
            }
        }
    }
    if f.expect_distributive {
        writeln!(out, "expect distributive").unwrap();
    }
    if f.expect_heyting {
        writeln!(out, "expect heyting").unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameFile {
    pub frame: ImplicativeFrame,
    /// Named stable sets, typically `X_a` for the source lattice elements.
    pub reps: Vec<(String, PointSet)>,
}

impl FrameFile {
    pub fn from_canonical(cf: &CanonicalFrame) -> Self {
        let l = cf.source();
        FrameFile {
            frame: cf.frame().clone(),
            reps: l.elems().map(|a| (l.name(a).to_string(), cf.rep_x(a))).collect(),
        }
    }

    pub fn rep(&self, name: &str) -> Option<&PointSet> {
        self.reps.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

pub fn parse_frame(text: &str) -> Result<FrameFile, IoError> {
    let lines = content_lines(text, FRAME_HEADER)?;
    let mut xs: Option<(Vec<String>, HashMap<String, usize>)> = None;
    let mut ys: Option<(Vec<String>, HashMap<String, usize>)> = None;
    let mut perp = Vec::new();
    let mut triples = Vec::new();
    let mut reps: Vec<(usize, String, Vec<usize>)> = Vec::new();

    for (ln, words) in lines {
        let side = |s: &Option<(Vec<String>, HashMap<String, usize>)>, what: &str| {
            s.as_ref()
                .map(|(_, idx)| idx.clone())
                .ok_or_else(|| perr(ln, format!("{what} points must be declared first")))
        };
        match words[0] {
            "x" | "y" => {
                let slot = if words[0] == "x" { &mut xs } else { &mut ys };
                if slot.is_some() {
                    return Err(perr(ln, format!("{} points declared twice", words[0])));
                }
                if words.len() < 2 {
                    return Err(perr(ln, format!("no {} points", words[0])));
                }
                let idx = names_index(ln, &words[1..], "point")?;
                *slot = Some((words[1..].iter().map(|s| s.to_string()).collect(), idx));
            }
            "perp" => {
                let (xi, yi) = (side(&xs, "x")?, side(&ys, "y")?);
                if words.len() != 3 {
                    return Err(perr(ln, "expected: perp X Y"));
                }
                perp.push((lookup(&xi, ln, words[1], "x point")?, lookup(&yi, ln, words[2], "y point")?));
            }
            "t" => {
                let (xi, yi) = (side(&xs, "x")?, side(&ys, "y")?);
                if words.len() != 4 {
                    return Err(perr(ln, "expected: t Y X Y"));
                }
                triples.push((
                    lookup(&yi, ln, words[1], "y point")?,
                    lookup(&xi, ln, words[2], "x point")?,
                    lookup(&yi, ln, words[3], "y point")?,
                ));
            }
            "rep" => {
                let xi = side(&xs, "x")?;
                if words.len() < 3 || words[2] != ":" {
                    return Err(perr(ln, "expected: rep NAME : X..."));
                }
                let members = words[3..]
                    .iter()
                    .map(|w| lookup(&xi, ln, w, "x point"))
                    .collect::<Result<Vec<_>, _>>()?;
                reps.push((ln, words[1].to_string(), members));
            }
            other => return Err(perr(ln, format!("unknown directive {other:?}"))),
        }
    }
    let (xn, _) = xs.ok_or_else(|| perr(1, "missing x line"))?;
    let (yn, _) = ys.ok_or_else(|| perr(1, "missing y line"))?;
    let p = Polarity::from_pairs(xn.len(), yn.len(), &perp)?.with_names(xn.clone(), yn)?;
    let frame = ImplicativeFrame::from_triples(p, &triples)?;
    let reps = reps
        .into_iter()
        .map(|(_, name, m)| (name, PointSet::from_indices(xn.len(), m)))
        .collect();
    Ok(FrameFile { frame, reps })
}

pub fn write_frame(f: &FrameFile) -> String {
    let frame = &f.frame;
    let p = frame.polarity();
    let xn = p.names(Side::X);
    let yn = p.names(Side::Y);
    let mut out = String::new();
    writeln!(out, "{FRAME_HEADER}").unwrap();
    writeln!(out, "x {}", xn.join(" ")).unwrap();
    writeln!(out, "y {}", yn.join(" ")).unwrap();
    for x in 0..xn.len() {
        for y in 0..yn.len() {
            if p.perp(x, y) {
                writeln!(out, "perp {} {}", xn[x], yn[y]).unwrap();
            }
        }
    }
    for (y, x, v) in frame.triples() {
        writeln!(out, "t {} {} {}", yn[y], xn[x], yn[v]).unwrap();
    }
    for (name, set) in &f.reps {
        let members: Vec<&str> = set.iter().map(|x| xn[x].as_str()).collect();
        if members.is_empty() {
            writeln!(out, "rep {name} :").unwrap();
        } else {
            writeln!(out, "rep {name} : {}", members.join(" ")).unwrap();
        }
    }
    out
}

fn read(path: &str) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File { path: path.to_string(), source })
}

/// A corpus name, or else a path to a `GLATTICE 1` file.
pub fn load_lattice(source: &str) -> Result<LatticeFile, IoError> {
    if let Some(l) = corpus::by_name(source) {
        let e = corpus::expectation(source).expect("corpus member");
        return Ok(LatticeFile { lattice: l, expect_distributive: e.distributive, expect_heyting: e.heyting });
    }
    parse_lattice(&read(source)?)
}

/// A path to a `GFRAME 1` file.
pub fn load_frame(path: &str) -> Result<FrameFile, IoError> {
    parse_frame(&read(path)?)
}
