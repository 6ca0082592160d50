//! Process-wide registry of indeterminates.
//!
//! Monomials store exponents positionally, so every indeterminate gets a
//! stable index the first time it is seen. `q` is always index 0. The
//! registry is append-only: an index, once handed out, never changes, which
//! keeps previously built values valid while new names are introduced.

use std::sync::{OnceLock, RwLock};

use super::ScalarError;

/// Maximum number of distinct indeterminates in one process.
pub const MAX_VARS: usize = 16;

/// Names registered before anything else, in this order.
pub const DEFAULT_INDETERMINATES: &[&str] = &["q", "t", "a", "g"];

fn registry() -> &'static RwLock<Vec<String>> {
    static REGISTRY: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        RwLock::new(DEFAULT_INDETERMINATES.iter().map(|s| s.to_string()).collect())
    })
}

/// Index of an indeterminate, registering it if needed.
pub fn var_index(name: &str) -> Result<usize, ScalarError> {
    if let Some(i) = lookup(name) {
        return Ok(i);
    }
    let mut reg = registry().write().expect("indeterminate registry poisoned");
    if let Some(i) = reg.iter().position(|n| n == name) {
        return Ok(i);
    }
    if reg.len() >= MAX_VARS {
        return Err(ScalarError::TooManyIndeterminates(name.to_string()));
    }
    reg.push(name.to_string());
    Ok(reg.len() - 1)
}

/// Index of an already registered indeterminate.
pub fn lookup(name: &str) -> Option<usize> {
    let reg = registry().read().expect("indeterminate registry poisoned");
    reg.iter().position(|n| n == name)
}

pub fn var_name(index: usize) -> String {
    let reg = registry().read().expect("indeterminate registry poisoned");
    reg.get(index).cloned().unwrap_or_else(|| format!("v{index}"))
}

/// Registers the given names in order (names already present keep their slot).
pub fn declare_indeterminates<S: AsRef<str>>(names: &[S]) -> Result<(), ScalarError> {
    for n in names {
        var_index(n.as_ref())?;
    }
    Ok(())
}

/// Snapshot of the current indeterminate list.
pub fn indeterminates() -> Vec<String> {
    registry().read().expect("indeterminate registry poisoned").clone()
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
