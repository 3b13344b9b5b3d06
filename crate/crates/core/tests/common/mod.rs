//! Brute-force reference implementations and proptest strategies.

#![allow(dead_code)]

use ctab::lab::gen::full_table;
use ctab::var::first_n;
use ctab::{Base, Mapping, NamedTuple, Table, Variable, VarSet};
use proptest::prelude::*;

pub fn pool() -> Vec<Variable> {
    first_n(5)
}

/// Natural join by enumerating `G^(X1 ∪ X2)` and keeping the tuples whose
/// restrictions are rows of both operands.
pub fn oracle_join(t1: &Table, t2: &Table, base: &Base) -> Table {
    let (Some(x1), Some(x2)) = (t1.finite_schema(), t2.finite_schema()) else { return Table::Empty };
    let both: VarSet = x1.union(&x2).copied().collect();
    let rows = full_table(&both, base)
        .rows()
        .into_iter()
        .filter(|t| t1.contains(&t.restrict(&x1).unwrap()) && t2.contains(&t.restrict(&x2).unwrap()));
    Table::new(&both, rows).unwrap()
}

/// `del_x` by restricting every row.
pub fn oracle_delete(t: &Table, x: Variable) -> Table {
    let Some(mut schema) = t.finite_schema() else { return Table::Empty };
    schema.remove(&x);
    Table::new(&schema, t.rows().iter().map(|r| r.restrict(&schema).unwrap())).unwrap()
}

/// `T ∘ λ` row by row: the row `t` becomes `x ↦ t(λ(x))`.
pub fn oracle_compose(t: &Table, lambda: &Mapping) -> Table {
    let rows = t.rows().into_iter().map(|row| {
        lambda.pairs().into_iter().map(|(x, y)| (x, row.get(y).unwrap().clone())).collect::<NamedTuple>()
    });
    Table::new(&lambda.dom(), rows.collect::<Vec<_>>()).unwrap()
}

pub fn arb_base() -> impl Strategy<Value = Base> {
    (1usize..=3).prop_map(|n| Base::from_letters(&"abc"[..n]))
}

/// Tables over `base` with at most four columns from `x1..x5`.
pub fn arb_table(base: Base) -> impl Strategy<Value = Table> {
    let n = base.len();
    let rows = proptest::sample::subsequence(pool(), 0..=4).prop_flat_map(move |cols| {
        let base = base.clone();
        let width = cols.len();
        proptest::collection::vec(proptest::collection::vec(0..n, width), 1..6).prop_map(move |rows| {
            let schema: VarSet = cols.iter().copied().collect();
            Table::from_rows(&schema, rows.iter().map(|r| r.iter().map(|&i| base.elems()[i].clone()).collect::<Vec<_>>()))
                .unwrap()
        })
    });
    prop_oneof![1 => Just(Table::Empty), 1 => Just(Table::unit()), 8 => rows]
}

pub fn arb_var() -> impl Strategy<Value = Variable> {
    proptest::sample::select(pool())
}
