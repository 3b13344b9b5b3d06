//! Variables drawn from the countable pool `x1, x2, x3, ...`.
//!
//! A [`Variable`] is a plain numeric index; the order of indices is the fixed
//! enumeration of the pool. Names of the form `x<n>` denote index `n`
//! directly. Any other name a user writes (`y`, `customer`, ...) is interned
//! once in a process-wide registry and receives an index from a reserved high
//! range, so user names never collide with the `x<n>` family or with the
//! fresh variables picked by [`crate::mapping::FreshScheme`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};

/// First index handed to interned (non `x<n>`) names.
const INTERNED_BASE: u32 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

/// Finite set of variables, iterated in enumeration order.
pub type VarSet = BTreeSet<Variable>;

#[derive(Default)]
struct Registry {
    by_name: HashMap<String, u32>,
    names: Vec<String>,
}

fn registry() -> &'static RwLock<Registry> {
    static REGISTRY: OnceLock<RwLock<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

fn enumerated_index(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&n| n < INTERNED_BASE)
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Variable {
    /// The `n`-th variable `x_n` of the enumeration (`n >= 1`).
    pub fn x(n: u32) -> Self {
        assert!((1..INTERNED_BASE).contains(&n), "variable index {n} out of range");
        Variable(n)
    }

    /// Looks up or interns a user-facing name.
    pub fn named(name: &str) -> Result<Self> {
        if !is_identifier(name) {
            return Err(Error::Value(format!("`{name}` is not a valid variable name")));
        }
        if let Some(n) = enumerated_index(name) {
            return Ok(Variable(n));
        }
        if let Some(&id) = registry().read().unwrap().by_name.get(name) {
            return Ok(Variable(id));
        }
        let mut reg = registry().write().unwrap();
        if let Some(&id) = reg.by_name.get(name) {
            return Ok(Variable(id));
        }
        let id = INTERNED_BASE + reg.names.len() as u32;
        reg.names.push(name.to_owned());
        reg.by_name.insert(name.to_owned(), id);
        Ok(Variable(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 >= INTERNED_BASE {
            let reg = registry().read().unwrap();
            if let Some(name) = reg.names.get((self.0 - INTERNED_BASE) as usize) {
                return f.write_str(name);
            }
        }
        write!(f, "x{}", self.0)
    }
}

/// `{x1,x2}` style rendering of a variable set.
pub fn fmt_vars(vars: &VarSet) -> String {
    let inner: Vec<String> = vars.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// The first `n` variables `x1 .. xn`.
pub fn first_n(n: u32) -> Vec<Variable> {
    (1..=n).map(Variable::x).collect()
}

/// Parses a whitespace or comma separated list of variable names.
pub fn parse_var_list(src: &str) -> Result<VarSet> {
    src.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(Variable::named)
        .collect()
}
