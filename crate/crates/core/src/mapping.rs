//! Re-indexing tables along maps between variable sets.
//!
//! A [`Mapping`] `λ: X → Y` acts on a table `T` over `Y` by outer
//! composition, `T ∘ λ = {t ∘ λ | t ∈ T}`: the new column `x` is a copy of
//! the old column `λ(x)`. [`table_compose`] computes this directly.
//! [`outer_compose`] computes the same thing through the semilattice
//! operations only (`C_Y(u ∧ e_λ)` for domain-disjoint `λ`, a detour through
//! fresh variables otherwise), which makes it available for every
//! [`ProjectionalSemilattice`].
//!
//! [`FinPartialTransform`]s are the finite functional relations on the
//! variable pool; together with the global identity they form the monoid of
//! [`Transformation`]s that [`act`]s on the right of a semilattice:
//! `u · λ · μ = u · (λ ∘ μ)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{fresh_variables, ProjectionalSemilattice};
use crate::error::{Error, Result};
use crate::table::{Schema, Table};
use crate::var::{fmt_vars, Variable, VarSet};

/// A total function between two finite variable sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mapping {
    graph: BTreeMap<Variable, Variable>,
    cod: VarSet,
}

impl Mapping {
    /// Checks that `graph` is total on `dom` and lands in `cod`.
    pub fn new(dom: &VarSet, cod: VarSet, graph: BTreeMap<Variable, Variable>) -> Result<Self> {
        let keys: VarSet = graph.keys().copied().collect();
        if let Some(x) = dom.difference(&keys).next() {
            return Err(Error::Mapping(format!("no image given for {x} in the domain {}", fmt_vars(dom))));
        }
        if let Some(x) = keys.difference(dom).next() {
            return Err(Error::Mapping(format!("{x} is mapped but not in the domain {}", fmt_vars(dom))));
        }
        Mapping::from_graph(graph, cod)
    }

    /// The domain is read off the graph.
    pub fn from_graph(graph: BTreeMap<Variable, Variable>, cod: VarSet) -> Result<Self> {
        if let Some((x, y)) = graph.iter().find(|(_, y)| !cod.contains(y)) {
            return Err(Error::Mapping(format!("{x} maps to {y}, outside the codomain {}", fmt_vars(&cod))));
        }
        Ok(Mapping { graph, cod })
    }

    pub fn identity(vars: &VarSet) -> Self {
        Mapping { graph: vars.iter().map(|x| (*x, *x)).collect(), cod: vars.clone() }
    }

    /// The natural inclusion `ι_X: X → Y`.
    pub fn inclusion(sub: &VarSet, sup: &VarSet) -> Result<Self> {
        if !sub.is_subset(sup) {
            return Err(Error::Mapping(format!("{} is not a subset of {}", fmt_vars(sub), fmt_vars(sup))));
        }
        Ok(Mapping { graph: sub.iter().map(|x| (*x, *x)).collect(), cod: sup.clone() })
    }

    pub fn dom(&self) -> VarSet {
        self.graph.keys().copied().collect()
    }

    pub fn cod(&self) -> &VarSet {
        &self.cod
    }

    pub fn apply(&self, x: Variable) -> Option<Variable> {
        self.graph.get(&x).copied()
    }

    pub fn pairs(&self) -> Vec<(Variable, Variable)> {
        self.graph.iter().map(|(x, y)| (*x, *y)).collect()
    }

    pub fn image(&self) -> VarSet {
        self.graph.values().copied().collect()
    }

    pub fn is_inclusion(&self) -> bool {
        self.graph.iter().all(|(x, y)| x == y)
    }

    pub fn is_bijection(&self) -> bool {
        self.image() == self.cod && self.image().len() == self.graph.len()
    }

    /// `Y ⊆ X` and every `y ∈ Y` is fixed.
    pub fn is_folding(&self) -> bool {
        self.cod.iter().all(|y| self.graph.get(y) == Some(y))
    }

    pub fn is_domain_disjoint(&self) -> bool {
        self.graph.keys().all(|x| !self.cod.contains(x))
    }

    pub fn inverse(&self) -> Option<Mapping> {
        self.is_bijection().then(|| Mapping {
            graph: self.graph.iter().map(|(x, y)| (*y, *x)).collect(),
            cod: self.dom(),
        })
    }

    /// Factors `λ = ι ∘ ξ ∘ δ` into a folding, a bijection and an inclusion.
    /// Each fiber of `λ` is represented by its smallest variable.
    pub fn decompose(&self) -> Decomposition {
        let mut representative: BTreeMap<Variable, Variable> = BTreeMap::new();
        for (x, y) in &self.graph {
            representative.entry(*y).or_insert(*x);
        }
        let reps: VarSet = representative.values().copied().collect();
        let image: VarSet = representative.keys().copied().collect();
        let folding = Mapping {
            graph: self.graph.iter().map(|(x, y)| (*x, representative[y])).collect(),
            cod: reps,
        };
        let bijection = Mapping {
            graph: representative.iter().map(|(y, z)| (*z, *y)).collect(),
            cod: image.clone(),
        };
        let inclusion = Mapping { graph: image.iter().map(|y| (*y, *y)).collect(), cod: self.cod.clone() };
        Decomposition { folding, bijection, inclusion }
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self.graph.iter().map(|(x, y)| format!("{x}->{y}")).collect();
        write!(f, "{}: {} -> {}", arrows.join(","), fmt_vars(&self.dom()), fmt_vars(&self.cod))
    }
}

/// `ν ∘ μ`, defined when `cod(μ) = dom(ν)`.
pub fn compose(nu: &Mapping, mu: &Mapping) -> Result<Mapping> {
    if mu.cod != nu.dom() {
        return Err(Error::Composition(format!(
            "codomain {} does not match domain {}",
            fmt_vars(&mu.cod),
            fmt_vars(&nu.dom())
        )));
    }
    Ok(Mapping { graph: mu.graph.iter().map(|(x, y)| (*x, nu.graph[y])).collect(), cod: nu.cod.clone() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub folding: Mapping,
    pub bijection: Mapping,
    pub inclusion: Mapping,
}

impl Decomposition {
    pub fn recompose(&self) -> Result<Mapping> {
        compose(&self.inclusion, &compose(&self.bijection, &self.folding)?)
    }
}

/// `T ∘ λ = {t ∘ λ | t ∈ T}` computed row by row.
pub fn table_compose(t: &Table, lambda: &Mapping) -> Result<Table> {
    let Table::NonEmpty(body) = t else { return Ok(Table::Empty) };
    if body.schema() != lambda.cod {
        return Err(Error::Schema(format!(
            "mapping codomain {} differs from table schema {}",
            fmt_vars(&lambda.cod),
            fmt_vars(&body.schema())
        )));
    }
    let columns: Vec<Variable> = lambda.graph.keys().copied().collect();
    let sources: Vec<usize> =
        lambda.graph.values().map(|y| body.position(*y).expect("codomain equals schema")).collect();
    let rows = body.raw_rows().map(|r| sources.iter().map(|&i| r[i].clone()).collect()).collect();
    Ok(Table::from_parts(columns, rows))
}

/// Choice of the fresh variables `Z_XY` and bijection `ξ_XY: Z_XY → Y` used
/// when outer composition has to detour around overlapping domain and
/// codomain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreshScheme {
    /// Enumeration index from which fresh variables are searched.
    pub start: u32,
    /// Pair the fresh variables with `Y` in reverse enumeration order.
    pub reversed: bool,
}

impl Default for FreshScheme {
    fn default() -> Self {
        FreshScheme { start: 1, reversed: false }
    }
}

impl FreshScheme {
    /// A second deterministic scheme, disjoint in its choices from the default
    /// one for small variable sets.
    pub fn alternate() -> Self {
        FreshScheme { start: 101, reversed: true }
    }

    /// `ξ_XY: Z_XY → Y` with `Z_XY ∩ (X ∪ Y) = ∅`.
    pub fn xi(&self, dom: &VarSet, cod: &VarSet) -> Mapping {
        let mut avoid: VarSet = dom.union(cod).copied().collect();
        avoid.extend((1..self.start).map(Variable::x));
        let fresh = fresh_variables(&avoid, cod.len());
        let targets: Vec<Variable> =
            if self.reversed { cod.iter().rev().copied().collect() } else { cod.iter().copied().collect() };
        Mapping { graph: fresh.into_iter().zip(targets).collect(), cod: cod.clone() }
    }
}

/// `u ⊙ λ` for `u` with domain `cod(λ)`, using only the semilattice
/// operations of `alg`:
///
/// * `C_Y(u ∧ e_λ)` when `λ: X → Y` is domain-disjoint;
/// * `(u ⊙ ξ_XY) ⊙ (ξ_XY⁻¹ ∘ λ)` otherwise, both steps domain-disjoint.
pub fn outer_compose<A>(alg: &A, u: &Table, lambda: &Mapping, scheme: &FreshScheme) -> Result<Table>
where
    A: ProjectionalSemilattice + ?Sized,
{
    if u.is_empty() || alg.dom(u) != Schema::Finite(lambda.cod.clone()) {
        return Err(Error::Schema(format!(
            "outer composition needs a nonzero element with domain {}, got one with domain {}",
            fmt_vars(&lambda.cod),
            alg.dom(u)
        )));
    }
    if lambda.is_domain_disjoint() {
        return Ok(disjoint_compose(alg, u, lambda));
    }
    let xi = scheme.xi(&lambda.dom(), &lambda.cod);
    let back = compose(&xi.inverse().expect("ξ is a bijection"), lambda)?;
    let v = disjoint_compose(alg, u, &xi);
    Ok(disjoint_compose(alg, &v, &back))
}

fn disjoint_compose<A>(alg: &A, u: &Table, lambda: &Mapping) -> Table
where
    A: ProjectionalSemilattice + ?Sized,
{
    debug_assert!(lambda.is_domain_disjoint());
    alg.cyl_all(&lambda.cod, &alg.meet(u, &alg.diag_gen(&lambda.pairs())))
}

/// A finite functional relation on variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FinPartialTransform {
    graph: BTreeMap<Variable, Variable>,
}

impl FinPartialTransform {
    pub fn new<I: IntoIterator<Item = (Variable, Variable)>>(pairs: I) -> Result<Self> {
        let mut graph = BTreeMap::new();
        for (x, y) in pairs {
            if let Some(prev) = graph.insert(x, y) {
                if prev != y {
                    return Err(Error::Mapping(format!("{x} is sent to both {prev} and {y}")));
                }
            }
        }
        Ok(FinPartialTransform { graph })
    }

    /// The local identity `π_X`.
    pub fn local_identity(vars: &VarSet) -> Self {
        FinPartialTransform { graph: vars.iter().map(|x| (*x, *x)).collect() }
    }

    pub fn apply(&self, x: Variable) -> Option<Variable> {
        self.graph.get(&x).copied()
    }

    pub fn pairs(&self) -> Vec<(Variable, Variable)> {
        self.graph.iter().map(|(x, y)| (*x, *y)).collect()
    }

    pub fn domain(&self) -> VarSet {
        self.graph.keys().copied().collect()
    }

    /// `λ⁻¹(Y)`.
    pub fn preimage(&self, vars: &VarSet) -> VarSet {
        self.graph.iter().filter(|(_, y)| vars.contains(y)).map(|(x, _)| *x).collect()
    }

    /// Relational composition `λ ∘ μ = {(x, z) | (x, y) ∈ μ, (y, z) ∈ λ}`:
    /// `μ` is applied first. For `λ = {(x2, x1)}` and `μ = {(x3, x2)}` this
    /// gives `{(x3, x1)}`.
    pub fn compose(&self, mu: &FinPartialTransform) -> FinPartialTransform {
        FinPartialTransform {
            graph: mu.graph.iter().filter_map(|(x, y)| self.graph.get(y).map(|z| (*x, *z))).collect(),
        }
    }

    /// `λ‖^Y: λ⁻¹(Y) → Y`.
    pub fn restrict_to(&self, vars: &VarSet) -> Mapping {
        Mapping {
            graph: self.graph.iter().filter(|(_, y)| vars.contains(y)).map(|(x, y)| (*x, *y)).collect(),
            cod: vars.clone(),
        }
    }
}

impl fmt::Display for FinPartialTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self.graph.iter().map(|(x, y)| format!("{x}->{y}")).collect();
        write!(f, "{{{}}}", arrows.join(","))
    }
}

/// An element of the acting monoid: a finite partial transformation or the
/// global identity `π_var`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Transformation {
    GlobalIdentity,
    Finite(FinPartialTransform),
}

impl Transformation {
    pub fn compose(&self, mu: &Transformation) -> Transformation {
        match (self, mu) {
            (Transformation::GlobalIdentity, other) | (other, Transformation::GlobalIdentity) => other.clone(),
            (Transformation::Finite(l), Transformation::Finite(m)) => Transformation::Finite(l.compose(m)),
        }
    }

    /// `λ⁻¹(Y)`; the global identity returns `Y`.
    pub fn preimage(&self, vars: &VarSet) -> VarSet {
        match self {
            Transformation::GlobalIdentity => vars.clone(),
            Transformation::Finite(l) => l.preimage(vars),
        }
    }

    pub fn restrict_to(&self, vars: &VarSet) -> Mapping {
        match self {
            Transformation::GlobalIdentity => Mapping::identity(vars),
            Transformation::Finite(l) => l.restrict_to(vars),
        }
    }
}

impl From<FinPartialTransform> for Transformation {
    fn from(l: FinPartialTransform) -> Self {
        Transformation::Finite(l)
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transformation::GlobalIdentity => f.write_str("id"),
            Transformation::Finite(l) => l.fmt(f),
        }
    }
}

/// `u · λ` with the default fresh-variable scheme.
pub fn act<A>(alg: &A, u: &Table, lambda: &Transformation) -> Table
where
    A: ProjectionalSemilattice + ?Sized,
{
    act_with(alg, u, lambda, &FreshScheme::default())
}

/// `u · λ = u ⊙ λ‖^dom(u)`, `0 · λ = 0`.
pub fn act_with<A>(alg: &A, u: &Table, lambda: &Transformation, scheme: &FreshScheme) -> Table
where
    A: ProjectionalSemilattice + ?Sized,
{
    if *u == alg.zero() {
        return alg.zero();
    }
    match (lambda, alg.dom(u)) {
        (Transformation::GlobalIdentity, _) => u.clone(),
        (Transformation::Finite(l), Schema::Finite(y)) => outer_compose(alg, u, &l.restrict_to(&y), scheme)
            .expect("restriction has the element's domain as codomain"),
        (Transformation::Finite(_), Schema::AllVariables) => {
            panic!("nonzero element {u} has an infinite domain")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TableAlgebra;
    use crate::table::Base;

    fn x(n: u32) -> Variable {
        Variable::x(n)
    }

    fn vars(ns: &[u32]) -> VarSet {
        ns.iter().map(|&n| x(n)).collect()
    }

    fn map(pairs: &[(u32, u32)], cod: &[u32]) -> Mapping {
        Mapping::from_graph(pairs.iter().map(|&(a, b)| (x(a), x(b))).collect(), vars(cod)).unwrap()
    }

    fn fpt(pairs: &[(u32, u32)]) -> FinPartialTransform {
        FinPartialTransform::new(pairs.iter().map(|&(a, b)| (x(a), x(b)))).unwrap()
    }

    fn table(ns: &[u32], rows: &[&[&str]]) -> Table {
        Table::from_rows(&vars(ns), rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    #[test]
    fn mapping_validation() {
        assert!(Mapping::new(&vars(&[1, 2]), vars(&[3]), [(x(1), x(3))].into()).is_err());
        assert!(Mapping::from_graph([(x(1), x(4))].into(), vars(&[3])).is_err());
        assert!(Mapping::inclusion(&vars(&[1, 5]), &vars(&[1, 2])).is_err());
    }

    #[test]
    fn classifiers() {
        assert!(Mapping::inclusion(&vars(&[1]), &vars(&[1, 2])).unwrap().is_inclusion());
        assert!(map(&[(1, 3), (2, 4)], &[3, 4]).is_bijection());
        assert!(!map(&[(1, 3), (2, 3)], &[3, 4]).is_bijection());
        assert!(map(&[(1, 1), (2, 1)], &[1]).is_folding());
        assert!(!map(&[(1, 2), (2, 2)], &[1, 2]).is_folding());
        assert!(map(&[(1, 3)], &[3]).is_domain_disjoint());
        assert!(!map(&[(1, 1)], &[1]).is_domain_disjoint());
        let empty = Mapping::from_graph(BTreeMap::new(), vars(&[1])).unwrap();
        assert!(empty.is_inclusion() && empty.is_domain_disjoint() && !empty.is_bijection());
    }

    #[test]
    fn compose_examples() {
        let mu = map(&[(1, 3)], &[3]);
        let nu = map(&[(3, 2)], &[2]);
        assert_eq!(compose(&nu, &mu).unwrap(), map(&[(1, 2)], &[2]));
        assert_eq!(compose(&Mapping::identity(&vars(&[3])), &mu).unwrap(), mu);
        assert_eq!(compose(&nu, &Mapping::identity(&vars(&[3]))).unwrap(), nu);
        assert!(matches!(compose(&mu, &mu), Err(Error::Composition(_))));
    }

    #[test]
    fn decompose_examples() {
        let id = Mapping::identity(&vars(&[1, 2]));
        let d = id.decompose();
        assert_eq!((d.folding.clone(), d.bijection.clone(), d.inclusion.clone()), (id.clone(), id.clone(), id));

        let y1 = Variable::named("y1").unwrap();
        let constant = Mapping::from_graph([(x(1), y1), (x(2), y1)].into(), [y1].into()).unwrap();
        let d = constant.decompose();
        assert_eq!(d.folding, map(&[(1, 1), (2, 1)], &[1]));
        assert_eq!(d.bijection, Mapping::from_graph([(x(1), y1)].into(), [y1].into()).unwrap());
        assert_eq!(d.inclusion, Mapping::identity(&[y1].into()));
        assert_eq!(d.recompose().unwrap(), constant);

        let bij = map(&[(1, 4), (2, 3)], &[3, 4]);
        let d = bij.decompose();
        assert_eq!(d.folding, Mapping::identity(&vars(&[1, 2])));
        assert_eq!(d.bijection, bij);
        assert_eq!(d.inclusion, Mapping::identity(&vars(&[3, 4])));
    }

    #[test]
    fn table_compose_examples() {
        let t = table(&[1], &[&["a"], &["b"]]);
        let constant = map(&[(2, 1), (3, 1)], &[1]);
        assert_eq!(table_compose(&t, &constant).unwrap(), table(&[2, 3], &[&["a", "a"], &["b", "b"]]));

        let t = table(&[1, 2], &[&["a", "b"], &["b", "b"]]);
        let incl = Mapping::inclusion(&vars(&[2]), &vars(&[1, 2])).unwrap();
        assert_eq!(table_compose(&t, &incl).unwrap(), t.project(&vars(&[2])).unwrap());
        assert!(table_compose(&t, &constant).is_err());
        assert_eq!(table_compose(&Table::Empty, &constant).unwrap(), Table::Empty);
    }

    #[test]
    fn fresh_scheme_avoids_both_sides() {
        let xi = FreshScheme::default().xi(&vars(&[1, 3]), &vars(&[2, 3]));
        assert_eq!(xi, map(&[(4, 2), (5, 3)], &[2, 3]));
        let alt = FreshScheme::alternate().xi(&vars(&[1, 3]), &vars(&[2, 3]));
        assert_eq!(alt, map(&[(101, 3), (102, 2)], &[2, 3]));
        assert!(xi.is_bijection() && xi.is_domain_disjoint());
    }

    #[test]
    fn outer_compose_matches_direct_route() {
        let alg = TableAlgebra::new(Base::from_letters("ab"));
        let u = table(&[1, 2], &[&["a", "b"], &["b", "b"], &["b", "a"]]);
        let swap = map(&[(1, 2), (2, 1)], &[1, 2]);
        let folded = map(&[(1, 1), (2, 1), (3, 2)], &[1, 2]);
        let disjoint = map(&[(3, 1), (4, 1)], &[1, 2]);
        for lambda in [swap, folded, disjoint] {
            let expected = table_compose(&u, &lambda).unwrap();
            assert_eq!(outer_compose(&alg, &u, &lambda, &FreshScheme::default()).unwrap(), expected);
            assert_eq!(outer_compose(&alg, &u, &lambda, &FreshScheme::alternate()).unwrap(), expected);
        }
        assert!(outer_compose(&alg, &Table::Empty, &map(&[], &[]), &FreshScheme::default()).is_err());
        assert!(outer_compose(&alg, &u, &map(&[(3, 1)], &[1]), &FreshScheme::default()).is_err());
    }

    #[test]
    fn fpt_examples() {
        assert!(FinPartialTransform::new([(x(1), x(2)), (x(1), x(3))]).is_err());
        let l = fpt(&[(2, 1)]);
        let m = fpt(&[(3, 2)]);
        assert_eq!(l.compose(&m), fpt(&[(3, 1)]));
        let px = FinPartialTransform::local_identity(&vars(&[1, 2, 3]));
        let py = FinPartialTransform::local_identity(&vars(&[2, 3, 4]));
        assert_eq!(px.compose(&py), FinPartialTransform::local_identity(&vars(&[2, 3])));
        let l = fpt(&[(2, 1), (3, 5)]);
        assert_eq!(l.compose(&FinPartialTransform::local_identity(&l.domain())), l);
    }

    #[test]
    fn restrict_to_examples() {
        let l = fpt(&[(2, 1), (3, 5)]);
        assert_eq!(l.restrict_to(&vars(&[1])), map(&[(2, 1)], &[1]));
        let pi = FinPartialTransform::local_identity(&vars(&[1, 2]));
        assert_eq!(pi.restrict_to(&vars(&[2, 3])), map(&[(2, 2)], &[2, 3]));
        assert_eq!(FinPartialTransform::default().restrict_to(&vars(&[4])), map(&[], &[4]));
    }

    #[test]
    fn act_examples() {
        let alg = TableAlgebra::new(Base::from_letters("ab"));
        let l: Transformation = fpt(&[(2, 1)]).into();
        assert_eq!(act(&alg, &Table::Empty, &l), Table::Empty);
        let u = table(&[1], &[&["a"]]);
        assert_eq!(act(&alg, &u, &l), table(&[2], &[&["a"]]));
        let pi: Transformation = FinPartialTransform::local_identity(&vars(&[1])).into();
        assert_eq!(act(&alg, &u, &pi), u);
        assert_eq!(act(&alg, &u, &Transformation::GlobalIdentity), u);
        let pi0: Transformation = FinPartialTransform::default().into();
        assert_eq!(act(&alg, &u, &pi0), Table::unit());
    }
}
