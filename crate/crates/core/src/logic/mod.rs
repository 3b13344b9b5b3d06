//! Primitive positive formulas: atoms, equalities, conjunction and
//! existential quantification.

mod eval;
mod parse;

use std::fmt;

pub use eval::{evaluate, evaluate_oracle};
pub use parse::parse;

use crate::var::{Variable, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    RelAtom(String, Vec<Variable>),
    Eq(Variable, Variable),
    And(Box<Formula>, Box<Formula>),
    Exists(Variable, Box<Formula>),
    True,
    False,
}

impl Formula {
    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn exists(x: Variable, body: Formula) -> Formula {
        Formula::Exists(x, Box::new(body))
    }

    pub fn atom(name: &str, args: Vec<Variable>) -> Formula {
        Formula::RelAtom(name.to_owned(), args)
    }

    pub fn free_vars(&self) -> VarSet {
        match self {
            Formula::RelAtom(_, args) => args.iter().copied().collect(),
            Formula::Eq(x, y) => [*x, *y].into(),
            Formula::And(l, r) => l.free_vars().union(&r.free_vars()).copied().collect(),
            Formula::Exists(x, body) => {
                let mut free = body.free_vars();
                free.remove(x);
                free
            }
            Formula::True | Formula::False => VarSet::new(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::And(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Exists(_, body) => 1 + body.depth(),
            _ => 0,
        }
    }
}

// Prints in the query grammar: `exists` extends as far right as possible and
// `&` associates to the left, so an `exists` on the left of `&` and a
// conjunction on the right of `&` get parentheses.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::RelAtom(name, args) => {
                let args: Vec<String> = args.iter().map(ToString::to_string).collect();
                write!(f, "{name}({})", args.join(","))
            }
            Formula::Eq(x, y) => write!(f, "{x} = {y}"),
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Exists(x, body) => write!(f, "exists {x} . {body}"),
            Formula::And(l, r) => {
                match **l {
                    Formula::Exists(..) => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                match **r {
                    Formula::Exists(..) | Formula::And(..) => write!(f, " & ({r})"),
                    _ => write!(f, " & {r}"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: u32) -> Variable {
        Variable::x(n)
    }

    #[test]
    fn free_variables() {
        let phi = Formula::exists(x(2), Formula::and(Formula::atom("R", vec![x(1), x(2)]), Formula::Eq(x(2), x(3))));
        assert_eq!(phi.free_vars(), [x(1), x(3)].into());
        assert!(Formula::True.free_vars().is_empty());
        assert!(Formula::False.free_vars().is_empty());
        assert_eq!(Formula::exists(x(9), Formula::Eq(x(1), x(1))).free_vars(), [x(1)].into());
    }

    #[test]
    fn printing_parenthesizes_where_needed() {
        let left = Formula::and(Formula::exists(x(1), Formula::True), Formula::False);
        assert_eq!(left.to_string(), "(exists x1 . true) & false");
        let right = Formula::and(Formula::True, Formula::and(Formula::False, Formula::True));
        assert_eq!(right.to_string(), "true & (false & true)");
        let flat = Formula::and(Formula::and(Formula::False, Formula::True), Formula::True);
        assert_eq!(flat.to_string(), "false & true & true");
    }
}
