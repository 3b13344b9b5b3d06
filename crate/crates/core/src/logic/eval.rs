use std::collections::BTreeMap;

use super::Formula;
use crate::algebra::TableAlgebra;
use crate::error::{Error, Result};
use crate::table::{NamedTuple, Structure, Table, Value};
use crate::var::{Variable, VarSet};

fn relation<'a>(structure: &'a Structure, name: &str, args: &[Variable]) -> Result<&'a crate::table::RelationDecl> {
    let decl = structure
        .relation(name)
        .ok_or_else(|| Error::Eval(format!("unknown relation {name} in atom {}", Formula::atom(name, args.to_vec()))))?;
    if decl.arity != args.len() {
        return Err(Error::Eval(format!(
            "relation {name} has arity {} but atom {} has {} arguments",
            decl.arity,
            Formula::atom(name, args.to_vec()),
            args.len()
        )));
    }
    Ok(decl)
}

/// Named table of an atom `R(z1,...,zn)`: the schema is the set of distinct
/// argument variables, and a positional tuple contributes a row only if it
/// assigns equal values to repeated variables.
fn atom_table(structure: &Structure, name: &str, args: &[Variable]) -> Result<Table> {
    let decl = relation(structure, name, args)?;
    let schema: VarSet = args.iter().copied().collect();
    let rows = decl.tuples.iter().filter_map(|tuple| {
        let mut row = NamedTuple::new();
        for (x, v) in args.iter().zip(tuple) {
            if let Some(prev) = row.insert(*x, v.clone()) {
                if prev != *v {
                    return None;
                }
            }
        }
        Some(row)
    });
    Table::new(&schema, rows)
}

/// `res_A(φ)` by compiling the formula into table operations.
pub fn evaluate(phi: &Formula, structure: &Structure, alg: &TableAlgebra) -> Result<Table> {
    if alg.base() != structure.base() {
        return Err(Error::Eval(format!(
            "algebra base {} differs from structure base {}",
            alg.base(),
            structure.base()
        )));
    }
    compile(phi, structure, alg)
}

fn compile(phi: &Formula, structure: &Structure, alg: &TableAlgebra) -> Result<Table> {
    Ok(match phi {
        Formula::True => Table::unit(),
        Formula::False => Table::Empty,
        Formula::Eq(x, y) => alg.equality_table(*x, *y),
        Formula::RelAtom(name, args) => atom_table(structure, name, args)?,
        Formula::And(l, r) => compile(l, structure, alg)?.join(&compile(r, structure, alg)?),
        Formula::Exists(x, body) => compile(body, structure, alg)?.delete(*x),
    })
}

/// `res_A(φ)` by enumerating every assignment of the free variables and
/// checking satisfaction directly.
pub fn evaluate_oracle(phi: &Formula, structure: &Structure) -> Result<Table> {
    check_atoms(phi, structure)?;
    let free: Vec<Variable> = phi.free_vars().into_iter().collect();
    let base = structure.base().elems();
    let mut assignment = BTreeMap::new();
    let mut rows = Vec::new();
    let mut digits = vec![0usize; free.len()];
    if free.is_empty() || !base.is_empty() {
        loop {
            for (x, &d) in free.iter().zip(&digits) {
                assignment.insert(*x, base[d].clone());
            }
            if satisfies(phi, structure, &mut assignment) {
                rows.push(free.iter().map(|x| (*x, assignment[x].clone())).collect::<NamedTuple>());
            }
            // odometer over base^free
            let Some(i) = digits.iter().rposition(|&d| d + 1 < base.len()) else { break };
            digits[i] += 1;
            digits[i + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    Table::new(&free.iter().copied().collect(), rows)
}

fn check_atoms(phi: &Formula, structure: &Structure) -> Result<()> {
    match phi {
        Formula::RelAtom(name, args) => relation(structure, name, args).map(|_| ()),
        Formula::And(l, r) => check_atoms(l, structure).and_then(|()| check_atoms(r, structure)),
        Formula::Exists(_, body) => check_atoms(body, structure),
        _ => Ok(()),
    }
}

fn satisfies(phi: &Formula, structure: &Structure, assignment: &mut BTreeMap<Variable, Value>) -> bool {
    match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Eq(x, y) => assignment[x] == assignment[y],
        Formula::RelAtom(name, args) => {
            let tuple: Vec<Value> = args.iter().map(|x| assignment[x].clone()).collect();
            structure.relation(name).is_some_and(|r| r.tuples.contains(&tuple))
        }
        Formula::And(l, r) => satisfies(l, structure, assignment) && satisfies(r, structure, assignment),
        Formula::Exists(x, body) => {
            let saved = assignment.remove(x);
            let found = structure.base().elems().iter().any(|g| {
                assignment.insert(*x, g.clone());
                satisfies(body, structure, assignment)
            });
            assignment.remove(x);
            if let Some(v) = saved {
                assignment.insert(*x, v);
            }
            found
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;
    use crate::table::Base;

    fn structure() -> Structure {
        let mut s = Structure::new(Base::from_letters("ab"));
        s.add_relation("R", 2, [["a", "b"]]).unwrap();
        s.add_relation("E", 1, Vec::<[&str; 1]>::new()).unwrap();
        s
    }

    fn both(src: &str) -> (Table, Table) {
        let s = structure();
        let alg = TableAlgebra::new(s.base().clone());
        let phi = parse(src).unwrap();
        (evaluate(&phi, &s, &alg).unwrap(), evaluate_oracle(&phi, &s).unwrap())
    }

    #[test]
    fn worked_example() {
        let (compiled, oracle) = both("exists x2 . R(x1,x2)");
        let x1: VarSet = [Variable::x(1)].into();
        let expected = Table::from_rows(&x1, [["a"]]).unwrap();
        assert_eq!(compiled, expected);
        assert_eq!(oracle, expected);
    }

    #[test]
    fn constants() {
        assert_eq!(both("true"), (Table::unit(), Table::unit()));
        assert_eq!(both("false"), (Table::Empty, Table::Empty));
        assert_eq!(both("exists x1 . exists x2 . R(x1, x2)"), (Table::unit(), Table::unit()));
        assert_eq!(both("E(x1)"), (Table::Empty, Table::Empty));
    }

    #[test]
    fn equality_atoms_are_equality_tables() {
        let s = structure();
        let alg = TableAlgebra::new(s.base().clone());
        let (a, b) = (Variable::x(1), Variable::x(4));
        assert_eq!(evaluate(&Formula::Eq(a, b), &s, &alg).unwrap(), alg.equality_table(a, b));
        assert_eq!(both("x4 = x1").0, both("x4 = x1").1);
    }

    #[test]
    fn repeated_atom_variables() {
        let mut s = Structure::new(Base::from_letters("ab"));
        s.add_relation("R", 2, [["a", "a"], ["a", "b"]]).unwrap();
        let alg = TableAlgebra::new(s.base().clone());
        let phi = parse("R(x1, x1)").unwrap();
        let expected = Table::from_rows(&[Variable::x(1)].into(), [["a"]]).unwrap();
        assert_eq!(evaluate(&phi, &s, &alg).unwrap(), expected);
        assert_eq!(evaluate_oracle(&phi, &s).unwrap(), expected);
    }

    #[test]
    fn evaluation_errors_name_the_atom() {
        let s = structure();
        let alg = TableAlgebra::new(s.base().clone());
        let err = evaluate(&parse("S(x1)").unwrap(), &s, &alg).unwrap_err();
        assert!(err.to_string().contains("S(x1)"), "{err}");
        let err = evaluate_oracle(&parse("R(x1)").unwrap(), &s).unwrap_err();
        assert!(err.to_string().contains("arity 2"), "{err}");
        let other = TableAlgebra::new(Base::from_letters("abc"));
        assert!(evaluate(&Formula::True, &s, &other).is_err());
    }

    #[test]
    fn vacuous_quantifier_is_identity() {
        let (compiled, oracle) = both("exists x5 . R(x1, x2)");
        assert_eq!(compiled, oracle);
        assert_eq!(compiled.len(), 1);
    }

    #[test]
    fn empty_base() {
        let s = Structure::new(Base::empty());
        let alg = TableAlgebra::new(Base::empty());
        for src in ["x1 = x1", "exists x1 . x1 = x1", "true"] {
            let phi = parse(src).unwrap();
            assert_eq!(evaluate(&phi, &s, &alg).unwrap(), evaluate_oracle(&phi, &s).unwrap(), "{src}");
        }
    }
}
