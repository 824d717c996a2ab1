//! Verdicts produced by the exhaustive checkers.

use std::fmt;

use serde::Serialize;

/// Outcome of one universally quantified check.
///
/// `witness` is the first failing tuple in enumeration order. A failed check
/// always carries one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
    /// Number of tuples examined.
    pub checked: usize,
}

impl Check {
    pub fn pass(name: impl Into<String>, checked: usize) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
            checked,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Vec<usize>, checked: usize) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness),
            checked,
        }
    }

    /// Run `holds` over `tuples` and stop at the first counterexample.
    pub fn forall<I>(name: impl Into<String>, tuples: I, mut holds: impl FnMut(&[usize]) -> bool) -> Self
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut checked = 0;
        for t in tuples {
            checked += 1;
            if !holds(&t) {
                return Check::fail(name, t, checked);
            }
        }
        Check::pass(name, checked)
    }

    /// Conjunction of several checks under a new name; the witness is the
    /// first failing component's.
    pub fn all(name: impl Into<String>, parts: &[Check]) -> Self {
        let checked = parts.iter().map(|c| c.checked).sum();
        match parts.iter().find(|c| !c.passed) {
            Some(bad) => Check::fail(name, bad.witness.clone().unwrap_or_default(), checked),
            None => Check::pass(name, checked),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{}: {} ({} checked)", self.name, verdict, self.checked)?;
        if let Some(w) = &self.witness {
            write!(f, " witness {w:?}")?;
        }
        Ok(())
    }
}

/// All tuples in `0..n` of the given arity, in lexicographic order.
pub fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(arity as u32).unwrap_or(0);
    let total = if arity == 0 { 1 } else { total };
    (0..total).map(move |mut k| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        t
    })
}

/// Mixed-radix tuples: position `i` ranges over `0..dims[i]`.
pub fn mixed_tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |mut k| {
        let mut t = vec![0; dims.len()];
        for (slot, &d) in t.iter_mut().zip(dims).rev() {
            *slot = k % d;
            k /= d;
        }
        t
    })
}
