//! Values, named tuples, tables and relational structures.
//!
//! Tables are kept in canonical form: the schema is a sorted list of
//! variables, every row is stored positionally against that list, and rows
//! live in an ordered set. Structural equality of two [`Table`]s is therefore
//! set equality of the tables they denote.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::var::{fmt_vars, Variable, VarSet};

/// An opaque base element, compared and ordered by its canonical text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(Arc<str>);

impl Value {
    pub fn new(text: &str) -> Self {
        Value(Arc::from(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Value {
    fn from(text: &str) -> Self {
        Value::new(text)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite, duplicate-free, ordered set of values. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Base(Vec<Value>);

impl Base {
    pub fn new<I, V>(elems: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<Value>,
    {
        let set: BTreeSet<Value> = elems.into_iter().map(Into::into).collect();
        Base(set.into_iter().collect())
    }

    /// One single-character value per letter: `"abc"` gives `{a, b, c}`.
    pub fn from_letters(letters: &str) -> Self {
        Base::new(letters.chars().map(|c| Value::new(c.encode_utf8(&mut [0; 4]))))
    }

    pub fn empty() -> Self {
        Base(Vec::new())
    }

    pub fn elems(&self) -> &[Value] {
        &self.0
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<&str> = self.0.iter().map(Value::as_str).collect();
        write!(f, "{{{}}}", inner.join(","))
    }
}

/// A finite map from variables to values; one row of a table.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NamedTuple(BTreeMap<Variable, Value>);

impl NamedTuple {
    pub fn new() -> Self {
        NamedTuple(BTreeMap::new())
    }

    pub fn get(&self, x: Variable) -> Option<&Value> {
        self.0.get(&x)
    }

    pub fn insert(&mut self, x: Variable, v: Value) -> Option<Value> {
        self.0.insert(x, v)
    }

    pub fn domain(&self) -> VarSet {
        self.0.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, &Value)> {
        self.0.iter().map(|(x, v)| (*x, v))
    }

    /// `t|_X`. Fails when `X` is not contained in the domain of `t`.
    pub fn restrict(&self, vars: &VarSet) -> Result<NamedTuple> {
        let missing: VarSet = vars.iter().filter(|x| !self.0.contains_key(x)).copied().collect();
        if !missing.is_empty() {
            return Err(Error::Domain { missing: fmt_vars(&missing) });
        }
        Ok(NamedTuple(
            self.0.iter().filter(|(x, _)| vars.contains(x)).map(|(x, v)| (*x, v.clone())).collect(),
        ))
    }
}

impl<V: Into<Value>> FromIterator<(Variable, V)> for NamedTuple {
    fn from_iter<I: IntoIterator<Item = (Variable, V)>>(iter: I) -> Self {
        NamedTuple(iter.into_iter().map(|(x, v)| (x, v.into())).collect())
    }
}

impl fmt::Display for NamedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(|(x, v)| format!("{x}:{v}")).collect();
        write!(f, "<{}>", inner.join(","))
    }
}

/// Schema of a table: a finite variable set, or the marker for "all
/// variables" that only the empty table carries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Schema {
    Finite(VarSet),
    AllVariables,
}

impl Schema {
    pub fn contains(&self, x: Variable) -> bool {
        match self {
            Schema::Finite(vars) => vars.contains(&x),
            Schema::AllVariables => true,
        }
    }

    pub fn as_finite(&self) -> Option<&VarSet> {
        match self {
            Schema::Finite(vars) => Some(vars),
            Schema::AllVariables => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Schema::Finite(_))
    }

    /// Intersection with a finite probe set.
    pub fn restrict_to(&self, probe: &VarSet) -> VarSet {
        probe.iter().filter(|x| self.contains(**x)).copied().collect()
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schema::Finite(vars) => f.write_str(&fmt_vars(vars)),
            Schema::AllVariables => f.write_str("*"),
        }
    }
}

pub(crate) type Row = Vec<Value>;

/// Body of a nonempty table: a sorted schema and a nonempty set of rows,
/// each row stored positionally against the schema.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonEmptyTable {
    pub(crate) columns: Vec<Variable>,
    pub(crate) rows: BTreeSet<Row>,
}

impl NonEmptyTable {
    pub fn columns(&self) -> &[Variable] {
        &self.columns
    }

    pub fn schema(&self) -> VarSet {
        self.columns.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn position(&self, x: Variable) -> Option<usize> {
        self.columns.binary_search(&x).ok()
    }

    pub fn rows(&self) -> impl Iterator<Item = NamedTuple> + '_ {
        self.rows.iter().map(|row| self.columns.iter().copied().zip(row.iter().cloned()).collect())
    }

    /// Positional rows in canonical order, aligned with [`Self::columns`].
    pub fn raw_rows(&self) -> impl Iterator<Item = &[Value]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub(crate) fn contains_row(&self, row: &[Value]) -> bool {
        self.rows.contains(row)
    }
}

/// An element of `Tab(G)`: the unique empty table, or a finite schema with a
/// nonempty set of rows over exactly that schema.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Table {
    Empty,
    NonEmpty(NonEmptyTable),
}

impl Table {
    /// `{<>}`: the table over the empty schema holding the empty tuple.
    pub fn unit() -> Self {
        Table::NonEmpty(NonEmptyTable { columns: Vec::new(), rows: BTreeSet::from([Vec::new()]) })
    }

    /// Builds a canonical table. An empty row list yields [`Table::Empty`]
    /// whatever schema was given.
    pub fn new<I>(schema: &VarSet, rows: I) -> Result<Table>
    where
        I: IntoIterator<Item = NamedTuple>,
    {
        let columns: Vec<Variable> = schema.iter().copied().collect();
        let mut set = BTreeSet::new();
        for t in rows {
            if t.len() != columns.len() || !columns.iter().all(|x| t.get(*x).is_some()) {
                return Err(Error::Construction { row: t.to_string(), schema: fmt_vars(schema) });
            }
            set.insert(t.0.into_values().collect());
        }
        Ok(Table::from_parts(columns, set))
    }

    /// Builds a table from positional rows aligned with the schema's
    /// enumeration order.
    pub fn from_rows<I, R, V>(schema: &VarSet, rows: I) -> Result<Table>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = V>,
        V: Into<Value>,
    {
        let columns: Vec<Variable> = schema.iter().copied().collect();
        let mut set = BTreeSet::new();
        for r in rows {
            let row: Row = r.into_iter().map(Into::into).collect();
            if row.len() != columns.len() {
                let shown: Vec<&str> = row.iter().map(Value::as_str).collect();
                return Err(Error::Construction {
                    row: format!("({})", shown.join(",")),
                    schema: fmt_vars(schema),
                });
            }
            set.insert(row);
        }
        Ok(Table::from_parts(columns, set))
    }

    pub(crate) fn from_parts(columns: Vec<Variable>, rows: BTreeSet<Row>) -> Table {
        debug_assert!(columns.windows(2).all(|w| w[0] < w[1]));
        if rows.is_empty() {
            Table::Empty
        } else {
            Table::NonEmpty(NonEmptyTable { columns, rows })
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Table::Empty)
    }

    pub fn as_nonempty(&self) -> Option<&NonEmptyTable> {
        match self {
            Table::Empty => None,
            Table::NonEmpty(t) => Some(t),
        }
    }

    pub fn schema(&self) -> Schema {
        match self {
            Table::Empty => Schema::AllVariables,
            Table::NonEmpty(t) => Schema::Finite(t.schema()),
        }
    }

    /// Schema of a nonempty table; `None` for the empty one.
    pub fn finite_schema(&self) -> Option<VarSet> {
        self.as_nonempty().map(NonEmptyTable::schema)
    }

    pub fn len(&self) -> usize {
        self.as_nonempty().map_or(0, NonEmptyTable::len)
    }

    pub fn rows(&self) -> Vec<NamedTuple> {
        self.as_nonempty().map(|t| t.rows().collect()).unwrap_or_default()
    }

    pub fn contains(&self, t: &NamedTuple) -> bool {
        match self {
            Table::Empty => false,
            Table::NonEmpty(body) => {
                t.len() == body.columns.len()
                    && body
                        .columns
                        .iter()
                        .map(|x| t.get(*x).cloned())
                        .collect::<Option<Row>>()
                        .is_some_and(|row| body.contains_row(&row))
            }
        }
    }

    /// Membership of `t` in the set of all extensions of rows of `self`.
    pub fn extends_member(&self, t: &NamedTuple) -> bool {
        let Table::NonEmpty(body) = self else { return false };
        body.columns
            .iter()
            .map(|x| t.get(*x).cloned())
            .collect::<Option<Row>>()
            .is_some_and(|row| body.contains_row(&row))
    }

    /// Checks that every value occurring in the table belongs to `base`.
    pub fn is_over(&self, base: &Base) -> bool {
        match self {
            Table::Empty => true,
            Table::NonEmpty(t) => t.rows.iter().flatten().all(|v| base.contains(v)),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Table::Empty => f.write_str("EMPTY"),
            Table::NonEmpty(t) => {
                let cols: Vec<String> = t.columns.iter().map(ToString::to_string).collect();
                let rows: Vec<String> = t
                    .rows
                    .iter()
                    .map(|r| {
                        let vals: Vec<&str> = r.iter().map(Value::as_str).collect();
                        format!("({})", vals.join(","))
                    })
                    .collect();
                write!(f, "[{}]{{{}}}", cols.join(","), rows.join(","))
            }
        }
    }
}

/// A relation symbol's interpretation: declared arity and positional tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDecl {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<Value>>,
}

/// A finite relational structure: base plus named relations over it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Structure {
    base: Base,
    relations: BTreeMap<String, RelationDecl>,
}

impl Structure {
    pub fn new(base: Base) -> Self {
        Structure { base, relations: BTreeMap::new() }
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn relations(&self) -> &BTreeMap<String, RelationDecl> {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&RelationDecl> {
        self.relations.get(name)
    }

    pub fn add_relation<I, R, V>(&mut self, name: &str, arity: usize, tuples: I) -> Result<()>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = V>,
        V: Into<Value>,
    {
        if !crate::var::is_identifier(name) {
            return Err(Error::Structure(format!("`{name}` is not a valid relation name")));
        }
        if self.relations.contains_key(name) {
            return Err(Error::Structure(format!("relation {name} declared twice")));
        }
        let mut set = BTreeSet::new();
        for tuple in tuples {
            let tuple: Vec<Value> = tuple.into_iter().map(Into::into).collect();
            if tuple.len() != arity {
                return Err(Error::Structure(format!(
                    "tuple of length {} in relation {name}/{arity}",
                    tuple.len()
                )));
            }
            if let Some(v) = tuple.iter().find(|v| !self.base.contains(v)) {
                return Err(Error::Structure(format!("value {v} in relation {name} is not in the base")));
            }
            set.insert(tuple);
        }
        self.relations.insert(name.to_owned(), RelationDecl { arity, tuples: set });
        Ok(())
    }
}
