//! Conjunctive table algebras over finite bases.
//!
//! * [`table`]: values, named tuples, canonical tables, relational structures.
//! * [`algebra`]: join, deletion, equality tables and the derived operations;
//!   the [`ProjectionalSemilattice`] signature.
//! * [`mapping`]: maps between variable sets, outer composition, finite
//!   partial transformations and their action on tables.
//! * [`logic`]: primitive positive formulas, parser and evaluators.
//! * [`lab`]: randomized law checking against concrete and counterexample
//!   models.
//! * [`text`]: structure file and table text formats.

pub mod algebra;
pub mod error;
pub mod lab;
pub mod logic;
pub mod mapping;
pub mod table;
pub mod text;
pub mod var;

pub use algebra::{ProjectionalSemilattice, TableAlgebra};
pub use error::{Error, Result};
pub use mapping::{FinPartialTransform, FreshScheme, Mapping, Transformation};
pub use table::{Base, NamedTuple, Schema, Structure, Table, Value};
pub use var::{Variable, VarSet};
