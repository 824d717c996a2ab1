//! C ABI over `galframe`.
//!
//! Every function returns a [`GfStatus`]; results come back through out
//! pointers. Handles are opaque and owned by the caller, who releases them
//! with the matching `*_free` function. After a non-`Ok` status,
//! [`gf_last_error_message`] describes the error on the calling thread.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use galframe::cli::{parse_binding, CliError};
use galframe::io::{self, FrameFile};
use galframe::semantics::{parse_formula, Model};
use galframe::{corpus, CanonicalError, CanonicalFrame, FiniteLattice};

/// Result code of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Text could not be parsed as a lattice, frame or formula.
    Parse = 3,
    /// No corpus member has the given name.
    NotFound = 4,
    /// The lattice has no implication table or it violates A1-A3.
    NotImplicative = 5,
    /// A construction or evaluation was rejected; see the message.
    Invalid = 6,
    /// An internal panic was caught at the boundary.
    Panic = 7,
}

/// A finite lattice, optionally with an implication table.
pub struct GfLattice(FiniteLattice);

/// An implicative frame with any named stable sets recorded for it.
pub struct GfFrame(FrameFile);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(GfStatus, String);

impl Failure {
    fn new(status: GfStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(GfStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(GfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(GfStatus::NullArgument, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(GfStatus::NullArgument, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

fn cli_failure(e: CliError) -> Failure {
    let status = match &e {
        CliError::Io(_) | CliError::Syntax(_) | CliError::Usage(_) => GfStatus::Parse,
        _ => GfStatus::Invalid,
    };
    Failure::new(status, e)
}

/// Message for the most recent failure on this thread, or null if there has
/// been none. A failed axiom check also records its first violation here.
/// The pointer stays valid until the next failure on the same thread.
#[no_mangle]
pub extern "C" fn gf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Look up a built-in lattice: C2, C3, C4, B4, B8, M3, N5 or L3.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_lattice_from_corpus(name: *const c_char, out: *mut *mut GfLattice) -> GfStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let l = corpus::by_name(name)
            .ok_or_else(|| Failure::new(GfStatus::NotFound, format!("no corpus lattice named {name:?}")))?;
        write_out(out, Box::into_raw(Box::new(GfLattice(l))))
    })
}

/// Parse a `GLATTICE 1` document.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_lattice_parse(text: *const c_char, out: *mut *mut GfLattice) -> GfStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let lf = io::parse_lattice(text).map_err(|e| Failure::new(GfStatus::Parse, e))?;
        write_out(out, Box::into_raw(Box::new(GfLattice(lf.lattice))))
    })
}

/// # Safety
/// `lattice` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_lattice_size(lattice: *const GfLattice, out: *mut usize) -> GfStatus {
    guard(|| write_out(out, handle(lattice, "lattice")?.0.len()))
}

/// # Safety
/// `lattice` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_lattice_is_distributive(lattice: *const GfLattice, out: *mut bool) -> GfStatus {
    guard(|| write_out(out, handle(lattice, "lattice")?.0.check_distributive().passed))
}

/// Whether the implication table satisfies H1 and H2. Fails with
/// `NotImplicative` when the lattice has no table.
///
/// # Safety
/// `lattice` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_lattice_is_heyting(lattice: *const GfLattice, out: *mut bool) -> GfStatus {
    guard(|| {
        let l = &handle(lattice, "lattice")?.0;
        let rep = l.check_heyting().map_err(|e| Failure::new(GfStatus::NotImplicative, e))?;
        write_out(out, rep.passed())
    })
}

/// Whether `a^(n+1) -> b <= a^n -> b` holds for all `a`, `b`.
///
/// # Safety
/// `lattice` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_lattice_check_an(lattice: *const GfLattice, n: usize, out: *mut bool) -> GfStatus {
    guard(|| {
        let l = &handle(lattice, "lattice")?.0;
        let c = l.check_an(n).map_err(|e| Failure::new(GfStatus::NotImplicative, e))?;
        write_out(out, c.passed)
    })
}

/// # Safety
/// `lattice` must come from this library or be null. It must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn gf_lattice_free(lattice: *mut GfLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// The canonical filter/ideal frame of an implicative lattice.
///
/// # Safety
/// `lattice` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_canonical_frame(
    lattice: *const GfLattice,
    proper_only: bool,
    out: *mut *mut GfFrame,
) -> GfStatus {
    guard(|| {
        let l = &handle(lattice, "lattice")?.0;
        let cf = CanonicalFrame::build(l, proper_only).map_err(|e| match e {
            CanonicalError::NotImplicative(_) | CanonicalError::Lattice(_) => {
                Failure::new(GfStatus::NotImplicative, e)
            }
            e => Failure::new(GfStatus::Invalid, e),
        })?;
        write_out(out, Box::into_raw(Box::new(GfFrame(FrameFile::from_canonical(&cf)))))
    })
}

/// Parse a `GFRAME 1` document.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_frame_parse(text: *const c_char, out: *mut *mut GfFrame) -> GfStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let file = io::parse_frame(text).map_err(|e| Failure::new(GfStatus::Parse, e))?;
        write_out(out, Box::into_raw(Box::new(GfFrame(file))))
    })
}

/// Serialize as a `GFRAME 1` document. Release the string with
/// [`gf_string_free`].
///
/// # Safety
/// `frame` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_frame_to_text(frame: *const GfFrame, out: *mut *mut c_char) -> GfStatus {
    guard(|| {
        let text = io::write_frame(&handle(frame, "frame")?.0);
        let c = CString::new(text).map_err(|e| Failure::new(GfStatus::Invalid, e))?;
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn gf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Whether F0-F4 all hold. On failure the message names the first failing
/// axiom and its witness.
///
/// # Safety
/// `frame` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_frame_check_axioms(frame: *const GfFrame, out: *mut bool) -> GfStatus {
    guard(|| {
        let rep = handle(frame, "frame")?.0.frame.check_axioms();
        if let Some(c) = rep.first_failure() {
            set_error(format!("{} fails at {:?}", c.name, c.witness));
        }
        write_out(out, rep.passed())
    })
}

/// Number of stable sets, enumerating at most `max_family` of them.
///
/// # Safety
/// `frame` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_frame_stable_count(frame: *const GfFrame, max_family: usize, out: *mut usize) -> GfStatus {
    guard(|| {
        let fam = handle(frame, "frame")?
            .0
            .frame
            .stable_family(max_family)
            .map_err(|e| Failure::new(GfStatus::Invalid, e))?;
        write_out(out, fam.len())
    })
}

/// # Safety
/// `frame` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_frame_is_heyting(frame: *const GfFrame, out: *mut bool) -> GfStatus {
    guard(|| write_out(out, handle(frame, "frame")?.0.frame.is_heyting_frame()))
}

/// Evaluate `formula` under `bindings`, a newline- or semicolon-separated
/// list of `atom=X_a` or `atom={x,...}` entries. Writes whether the formula
/// is valid and whether every clause-equivalence check passed.
///
/// # Safety
/// `frame` must come from this library; strings must be nul-terminated;
/// `valid` and `clauses_ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_model_check(
    frame: *const GfFrame,
    bindings: *const c_char,
    formula: *const c_char,
    valid: *mut bool,
    clauses_ok: *mut bool,
) -> GfStatus {
    guard(|| {
        let file = &handle(frame, "frame")?.0;
        let bindings = str_arg(bindings, "bindings")?;
        let phi = parse_formula(str_arg(formula, "formula")?).map_err(|e| Failure::new(GfStatus::Parse, e))?;
        let mut warnings = Vec::new();
        let mut valuation = BTreeMap::new();
        for b in bindings.split(['\n', ';']).map(str::trim).filter(|s| !s.is_empty()) {
            let (atom, set) = parse_binding(&file.frame, file, b, &mut warnings).map_err(cli_failure)?;
            valuation.insert(atom, set);
        }
        let invalid = |e: galframe::semantics::SemanticsError| Failure::new(GfStatus::Invalid, e);
        let model = Model::new(&file.frame, valuation).map_err(invalid)?;
        let v = model.validity(&phi).map_err(invalid)?;
        let rep = model.check_clause_equivalences(&phi).map_err(invalid)?;
        write_out(valid, v)?;
        write_out(clauses_ok, rep.passed())
    })
}

/// # Safety
/// `frame` must come from this library or be null. It must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn gf_frame_free(frame: *mut GfFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}
