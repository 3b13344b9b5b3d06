//! The operations of the table algebra over a fixed base.
//!
//! Operations that never need to invent values (join, deletion, projection,
//! duplication, renaming, equality selection, the table order) are inherent
//! methods on [`Table`]. Equality tables materialize `G^{x,y}` and therefore
//! live on [`TableAlgebra`], which owns the base.
//!
//! [`ProjectionalSemilattice`] is the abstract signature
//! `(V, ∧, 0, 1, c_x, d_xy, dom)` used by the outer composition, the monoid
//! action and the law suite. Every model here has tables as its carrier, so
//! the trait is phrased over [`Table`].

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::table::{Base, NonEmptyTable, Row, Schema, Table, Value};
use crate::var::{fmt_vars, Variable, VarSet};

impl NonEmptyTable {
    /// Builds a table whose column `columns[i]` is copied from source column
    /// `sources[i]` of `self`.
    fn reindex(&self, columns: Vec<Variable>, sources: &[usize]) -> Table {
        let rows: BTreeSet<Row> =
            self.rows.iter().map(|r| sources.iter().map(|&i| r[i].clone()).collect()).collect();
        Table::from_parts(columns, rows)
    }

    fn keep_columns(&self, keep: impl Fn(Variable) -> bool) -> Table {
        let (columns, sources): (Vec<_>, Vec<_>) =
            self.columns.iter().enumerate().filter(|(_, x)| keep(**x)).map(|(i, x)| (*x, i)).unzip();
        if columns.len() == self.columns.len() {
            return Table::NonEmpty(self.clone());
        }
        self.reindex(columns, &sources)
    }

    fn require(&self, x: Variable, what: &str) -> Result<usize> {
        self.position(x).ok_or_else(|| {
            Error::Schema(format!("{what}: {x} is not in schema {}", fmt_vars(&self.schema())))
        })
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left(usize),
    Right(usize),
}

fn hash_join(a: &NonEmptyTable, b: &NonEmptyTable) -> Table {
    let mut columns = Vec::with_capacity(a.columns.len() + b.columns.len());
    let mut sources = Vec::with_capacity(columns.capacity());
    let mut shared = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.columns.len() || j < b.columns.len() {
        match (a.columns.get(i), b.columns.get(j)) {
            (Some(x), Some(y)) if x == y => {
                shared.push((i, j));
                columns.push(*x);
                sources.push(Side::Left(i));
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                columns.push(*x);
                sources.push(Side::Left(i));
                i += 1;
            }
            (Some(x), None) => {
                columns.push(*x);
                sources.push(Side::Left(i));
                i += 1;
            }
            (_, Some(y)) => {
                columns.push(*y);
                sources.push(Side::Right(j));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }

    let mut partitions: HashMap<Vec<&Value>, Vec<&Row>> = HashMap::new();
    for rb in &b.rows {
        partitions.entry(shared.iter().map(|&(_, jb)| &rb[jb]).collect()).or_default().push(rb);
    }
    let mut rows = BTreeSet::new();
    for ra in &a.rows {
        let key: Vec<&Value> = shared.iter().map(|&(ia, _)| &ra[ia]).collect();
        let Some(matches) = partitions.get(&key) else { continue };
        for rb in matches {
            rows.insert(
                sources
                    .iter()
                    .map(|s| match *s {
                        Side::Left(k) => ra[k].clone(),
                        Side::Right(k) => rb[k].clone(),
                    })
                    .collect(),
            );
        }
    }
    Table::from_parts(columns, rows)
}

impl Table {
    /// Natural join. Partitions the right operand on the shared columns.
    pub fn join(&self, other: &Table) -> Table {
        match (self, other) {
            (Table::NonEmpty(a), Table::NonEmpty(b)) => hash_join(a, b),
            _ => Table::Empty,
        }
    }

    /// `del_x`: drops column `x` if present.
    pub fn delete(&self, x: Variable) -> Table {
        match self {
            Table::Empty => Table::Empty,
            Table::NonEmpty(t) => t.keep_columns(|c| c != x),
        }
    }

    /// `del_Z`: drops every column in `vars`.
    pub fn delete_all(&self, vars: &VarSet) -> Table {
        match self {
            Table::Empty => Table::Empty,
            Table::NonEmpty(t) => t.keep_columns(|c| !vars.contains(&c)),
        }
    }

    /// `proj_Y`. For a nonempty table `Y` must be part of the schema.
    pub fn project(&self, vars: &VarSet) -> Result<Table> {
        match self {
            Table::Empty => Ok(Table::Empty),
            Table::NonEmpty(t) => {
                let extra: VarSet = vars.iter().filter(|x| t.position(**x).is_none()).copied().collect();
                if !extra.is_empty() {
                    return Err(Error::Schema(format!(
                        "cannot project onto {} not in schema {}",
                        fmt_vars(&extra),
                        fmt_vars(&t.schema())
                    )));
                }
                Ok(t.keep_columns(|c| vars.contains(&c)))
            }
        }
    }

    /// `dup_xy`: adds column `y` as a copy of column `x`.
    pub fn duplicate(&self, x: Variable, y: Variable) -> Result<Table> {
        let Table::NonEmpty(t) = self else { return Ok(Table::Empty) };
        let src = t.require(x, "duplicate")?;
        fresh_target(t, x, y, "duplicate")?;
        let (columns, sources) = splice(t, y, src, None);
        Ok(t.reindex(columns, &sources))
    }

    /// `rnm_xy`: column `x` becomes column `y`.
    pub fn rename(&self, x: Variable, y: Variable) -> Result<Table> {
        let Table::NonEmpty(t) = self else { return Ok(Table::Empty) };
        let src = t.require(x, "rename")?;
        fresh_target(t, x, y, "rename")?;
        let (columns, sources) = splice(t, y, src, Some(x));
        Ok(t.reindex(columns, &sources))
    }

    /// `σ_{x=y}`: rows whose `x` and `y` entries agree.
    pub fn select_eq(&self, x: Variable, y: Variable) -> Result<Table> {
        let Table::NonEmpty(t) = self else { return Ok(Table::Empty) };
        let (i, j) = (t.require(x, "select")?, t.require(y, "select")?);
        let rows = t.rows.iter().filter(|r| r[i] == r[j]).cloned().collect();
        Ok(Table::from_parts(t.columns.clone(), rows))
    }

    /// The table order: `self <= other` iff `self = self ⋈ other`.
    pub fn leq(&self, other: &Table) -> bool {
        *self == self.join(other)
    }

    /// `dom(T)`: the schema, `AllVariables` for the empty table.
    pub fn dom(&self) -> Schema {
        self.schema()
    }

    /// `{x ∈ probe | del_x(T) ≠ T}`.
    pub fn dim(&self, probe: &VarSet) -> VarSet {
        probe.iter().filter(|x| self.delete(**x) != *self).copied().collect()
    }
}

fn fresh_target(t: &NonEmptyTable, x: Variable, y: Variable, what: &str) -> Result<()> {
    if x == y {
        return Err(Error::Schema(format!("{what}: source and target are both {x}")));
    }
    if t.position(y).is_some() {
        return Err(Error::Schema(format!(
            "{what}: {y} is already in schema {}",
            fmt_vars(&t.schema())
        )));
    }
    Ok(())
}

/// Column layout after adding `target` (copied from source index `src`) and
/// optionally dropping `drop`.
fn splice(t: &NonEmptyTable, target: Variable, src: usize, drop: Option<Variable>) -> (Vec<Variable>, Vec<usize>) {
    let mut pairs: Vec<(Variable, usize)> =
        t.columns.iter().enumerate().filter(|(_, c)| Some(**c) != drop).map(|(i, c)| (*c, i)).collect();
    let at = pairs.partition_point(|(c, _)| *c < target);
    pairs.insert(at, (target, src));
    pairs.into_iter().unzip()
}

/// Smallest-index variables outside `avoid`, `count` of them.
pub fn fresh_variables(avoid: &VarSet, count: usize) -> Vec<Variable> {
    (1..).map(Variable::x).filter(|x| !avoid.contains(x)).take(count).collect()
}

/// Probe set for `dim`: the schema plus two fresh variables.
pub fn default_probe(t: &Table) -> VarSet {
    let mut probe = t.finite_schema().unwrap_or_default();
    let fresh = fresh_variables(&probe, 2);
    probe.extend(fresh);
    probe
}

/// The abstract operations `(∧, 0, 1, c_x, d_xy, dom)` of a projectional
/// semilattice whose carrier is a set of tables.
pub trait ProjectionalSemilattice: Send + Sync {
    fn zero(&self) -> Table;
    fn one(&self) -> Table;
    fn meet(&self, u: &Table, v: &Table) -> Table;
    fn cyl(&self, x: Variable, u: &Table) -> Table;
    fn diag(&self, x: Variable, y: Variable) -> Table;
    fn dom(&self, u: &Table) -> Schema;

    fn leq(&self, u: &Table, v: &Table) -> bool {
        self.meet(u, v) == *u
    }

    /// Generalized cylindrification `C_Z`.
    fn cyl_all(&self, vars: &VarSet, u: &Table) -> Table {
        vars.iter().fold(u.clone(), |acc, x| self.cyl(*x, &acc))
    }

    /// Generalized diagonal `e_ρ`, the meet of `d_xy` over `(x, y) ∈ ρ`.
    fn diag_gen(&self, pairs: &[(Variable, Variable)]) -> Table {
        pairs.iter().fold(self.one(), |acc, (x, y)| self.meet(&acc, &self.diag(*x, *y)))
    }

    /// Dimension set `{x ∈ probe | c_x(u) ≠ u}`.
    fn dim(&self, u: &Table, probe: &VarSet) -> VarSet {
        probe.iter().filter(|x| self.cyl(**x, u) != *u).copied().collect()
    }
}

/// `Tab(G)` with its operations, for a fixed base `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableAlgebra {
    base: Base,
}

impl TableAlgebra {
    pub fn new(base: Base) -> Self {
        TableAlgebra { base }
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    /// `E_xy = {t ∈ G^{x,y} | t(x) = t(y)}`; one column when `x = y`.
    pub fn equality_table(&self, x: Variable, y: Variable) -> Table {
        let columns = if x == y { vec![x] } else { vec![x.min(y), x.max(y)] };
        let width = columns.len();
        let rows = self.base.elems().iter().map(|g| vec![g.clone(); width]).collect();
        Table::from_parts(columns, rows)
    }

    /// `E_ρ`, the join of `E_xy` over `(x, y) ∈ ρ`; `E_∅ = {<>}`.
    pub fn equality_table_gen(&self, pairs: &[(Variable, Variable)]) -> Table {
        pairs.iter().fold(Table::unit(), |acc, (x, y)| acc.join(&self.equality_table(*x, *y)))
    }

    /// `σ_{x=g}`. Not expressible by the conjunctive operations in general.
    pub fn select_const(&self, x: Variable, g: &Value, t: &Table) -> Result<Table> {
        if !self.base.contains(g) {
            return Err(Error::Value(format!("{g} is not in the base {}", self.base)));
        }
        let Table::NonEmpty(body) = t else { return Ok(Table::Empty) };
        let i = body.require(x, "select")?;
        let rows = body.rows.iter().filter(|r| r[i] == *g).cloned().collect();
        Ok(Table::from_parts(body.columns.clone(), rows))
    }

    /// Every row of `t` draws its values from the base.
    pub fn contains(&self, t: &Table) -> bool {
        t.is_over(&self.base)
    }
}

impl ProjectionalSemilattice for TableAlgebra {
    fn zero(&self) -> Table {
        Table::Empty
    }

    fn one(&self) -> Table {
        Table::unit()
    }

    fn meet(&self, u: &Table, v: &Table) -> Table {
        u.join(v)
    }

    fn cyl(&self, x: Variable, u: &Table) -> Table {
        u.delete(x)
    }

    fn diag(&self, x: Variable, y: Variable) -> Table {
        self.equality_table(x, y)
    }

    fn dom(&self, u: &Table) -> Schema {
        u.dom()
    }

    fn leq(&self, u: &Table, v: &Table) -> bool {
        u.leq(v)
    }

    fn cyl_all(&self, vars: &VarSet, u: &Table) -> Table {
        u.delete_all(vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::NamedTuple;

    fn x(n: u32) -> Variable {
        Variable::x(n)
    }

    fn vars(ns: &[u32]) -> VarSet {
        ns.iter().map(|&n| x(n)).collect()
    }

    fn table(ns: &[u32], rows: &[&[&str]]) -> Table {
        Table::from_rows(&vars(ns), rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    fn ab() -> TableAlgebra {
        TableAlgebra::new(Base::from_letters("ab"))
    }

    #[test]
    fn join_examples() {
        let t = table(&[1, 2], &[&["a", "b"], &["b", "b"]]);
        assert_eq!(t.join(&Table::Empty), Table::Empty);
        assert_eq!(Table::Empty.join(&t), Table::Empty);
        assert_eq!(t.join(&t), t);
        let t1 = table(&[1], &[&["a"]]);
        let t2 = table(&[2], &[&["a"], &["b"]]);
        assert_eq!(t1.join(&t2), table(&[1, 2], &[&["a", "a"], &["a", "b"]]));
        assert_eq!(t.join(&Table::unit()), t);
    }

    #[test]
    fn join_on_shared_columns() {
        let r = table(&[1, 2], &[&["a", "b"], &["b", "a"]]);
        let s = table(&[2, 3], &[&["b", "a"], &["b", "b"], &["c", "a"]]);
        assert_eq!(r.join(&s), table(&[1, 2, 3], &[&["a", "b", "a"], &["a", "b", "b"]]));
        let disjoint = table(&[2], &[&["c"]]);
        assert_eq!(r.join(&disjoint), Table::Empty);
    }

    #[test]
    fn delete_examples() {
        assert_eq!(Table::Empty.delete(x(1)), Table::Empty);
        let t = table(&[1, 2], &[&["a", "a"], &["a", "b"]]);
        assert_eq!(t.delete(x(3)), t);
        assert_eq!(t.delete(x(2)), table(&[1], &[&["a"]]));
        assert_eq!(t.delete_all(&VarSet::new()), t);
        assert_eq!(t.delete_all(&vars(&[1, 2])), Table::unit());
        assert_eq!(t.delete_all(&vars(&[1, 2])), t.delete(x(2)).delete(x(1)));
    }

    #[test]
    fn equality_table_examples() {
        let alg = ab();
        assert_eq!(alg.equality_table(x(1), x(1)), table(&[1], &[&["a"], &["b"]]));
        assert_eq!(alg.equality_table(x(2), x(1)), table(&[1, 2], &[&["a", "a"], &["b", "b"]]));
        assert_eq!(TableAlgebra::new(Base::empty()).equality_table(x(1), x(2)), Table::Empty);
        assert_eq!(alg.equality_table_gen(&[]), Table::unit());
        let chain = alg.equality_table_gen(&[(x(1), x(2)), (x(2), x(3))]);
        assert_eq!(chain, table(&[1, 2, 3], &[&["a", "a", "a"], &["b", "b", "b"]]));
    }

    #[test]
    fn project_examples() {
        let t = table(&[1, 2], &[&["a", "b"]]);
        assert_eq!(t.project(&vars(&[1, 2])).unwrap(), t);
        assert_eq!(t.project(&VarSet::new()).unwrap(), Table::unit());
        assert_eq!(t.project(&vars(&[1])).unwrap(), table(&[1], &[&["a"]]));
        assert_eq!(Table::Empty.project(&vars(&[7])).unwrap(), Table::Empty);
        let err = t.project(&vars(&[1, 4])).unwrap_err();
        assert!(err.to_string().contains("{x4}"), "{err}");
    }

    #[test]
    fn duplicate_examples() {
        let t = table(&[1], &[&["a"]]);
        assert_eq!(t.duplicate(x(1), x(2)).unwrap(), table(&[1, 2], &[&["a", "a"]]));
        assert_eq!(Table::Empty.duplicate(x(1), x(2)).unwrap(), Table::Empty);
        let t = table(&[2, 4], &[&["a", "b"], &["b", "b"]]);
        let d = t.duplicate(x(4), x(1)).unwrap();
        assert_eq!(d, t.join(&ab().equality_table(x(4), x(1))));
        assert_eq!(d.delete(x(1)), t);
        assert!(t.duplicate(x(2), x(4)).is_err());
        assert!(t.duplicate(x(3), x(5)).is_err());
        assert!(t.duplicate(x(2), x(2)).is_err());
    }

    #[test]
    fn rename_examples() {
        let alg = ab();
        let t = table(&[1], &[&["a"]]);
        assert_eq!(t.rename(x(1), x(2)).unwrap(), table(&[2], &[&["a"]]));
        let t = table(&[2, 3], &[&["a", "b"], &["b", "b"]]);
        let r = t.rename(x(3), x(1)).unwrap();
        assert_eq!(r, t.join(&alg.equality_table(x(3), x(1))).delete(x(3)));
        assert_eq!(r.rename(x(1), x(3)).unwrap(), t);
        assert_eq!(Table::Empty.rename(x(1), x(2)).unwrap(), Table::Empty);
        assert!(t.rename(x(2), x(3)).is_err());
    }

    #[test]
    fn select_eq_examples() {
        let t = table(&[1, 2], &[&["a", "b"], &["a", "a"]]);
        assert_eq!(t.select_eq(x(1), x(1)).unwrap(), t);
        assert_eq!(t.select_eq(x(1), x(2)).unwrap(), table(&[1, 2], &[&["a", "a"]]));
        assert_eq!(t.select_eq(x(1), x(2)).unwrap(), t.join(&ab().equality_table(x(1), x(2))));
        let via_dup = t.join(&t.project(&vars(&[1])).unwrap().duplicate(x(1), x(2)).unwrap());
        assert_eq!(t.select_eq(x(1), x(2)).unwrap(), via_dup);
        assert!(t.select_eq(x(1), x(3)).is_err());
    }

    #[test]
    fn select_const_examples() {
        let alg = TableAlgebra::new(Base::from_letters("abc"));
        let t = table(&[1], &[&["a"], &["b"]]);
        let a = Value::new("a");
        assert_eq!(alg.select_const(x(1), &a, &t).unwrap(), table(&[1], &[&["a"]]));
        assert_eq!(alg.select_const(x(1), &a, &Table::Empty).unwrap(), Table::Empty);
        assert_eq!(alg.select_const(x(1), &Value::new("c"), &t).unwrap(), Table::Empty);
        assert!(alg.select_const(x(1), &Value::new("z"), &t).is_err());
        assert!(alg.select_const(x(2), &a, &t).is_err());
    }

    #[test]
    fn table_order_examples() {
        let t = table(&[1, 2], &[&["a", "a"]]);
        assert!(Table::Empty.leq(&t));
        assert!(t.leq(&Table::unit()));
        assert!(t.leq(&table(&[1], &[&["a"]])));
        assert!(!table(&[1], &[&["a"]]).leq(&t));
        assert!(!t.leq(&Table::Empty));
    }

    #[test]
    fn dom_and_dim() {
        assert_eq!(Table::Empty.dom(), Schema::AllVariables);
        assert!(Table::Empty.dim(&vars(&[1, 2, 3])).is_empty());
        let t = table(&[2, 5], &[&["a", "b"]]);
        let probe = default_probe(&t);
        assert_eq!(probe, vars(&[1, 2, 3, 5]));
        assert_eq!(t.dim(&probe), vars(&[2, 5]));
        assert_eq!(ab().dim(&t, &probe), vars(&[2, 5]));
        assert!(Table::unit().dim(&default_probe(&Table::unit())).is_empty());
    }

    #[test]
    fn generalized_diagonal_matches_equality_tables() {
        let alg = ab();
        let pairs = [(x(1), x(3)), (x(3), x(3)), (x(4), x(2))];
        assert_eq!(alg.diag_gen(&pairs), alg.equality_table_gen(&pairs));
        let row: NamedTuple = [(x(1), "a"), (x(2), "b"), (x(3), "a"), (x(4), "b")].into_iter().collect();
        assert!(alg.diag_gen(&pairs).contains(&row));
    }
}
