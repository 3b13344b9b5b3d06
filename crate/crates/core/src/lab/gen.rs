//! Seeded random generation of tables, mappings, transformations, formulas
//! and structures.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::Formula;
use crate::mapping::{FinPartialTransform, Mapping, Transformation};
use crate::table::{Base, Structure, Table, Value};
use crate::var::{first_n, Variable, VarSet};

/// Widest schema the generators produce.
pub const MAX_COLUMNS: usize = 4;

/// Random table over a sub-schema of `pool`: a mix of the empty table,
/// `{<>}`, full tables `G^X` and tables with up to `max_rows` random rows.
pub fn gen_table<R: Rng + ?Sized>(rng: &mut R, pool: &[Variable], base: &Base, max_rows: usize) -> Table {
    match rng.random_range(0..10) {
        0 => Table::Empty,
        1 => Table::unit(),
        kind => {
            let width = rng.random_range(0..=MAX_COLUMNS.min(pool.len()));
            let schema: VarSet = pool.choose_multiple(rng, width).copied().collect();
            if kind == 2 {
                full_table(&schema, base)
            } else {
                table_over(rng, &schema, base, max_rows)
            }
        }
    }
}

/// Random rows over exactly `schema`; empty only when `G^schema` is.
pub fn table_over<R: Rng + ?Sized>(rng: &mut R, schema: &VarSet, base: &Base, max_rows: usize) -> Table {
    if base.is_empty() {
        return if schema.is_empty() { Table::unit() } else { Table::Empty };
    }
    let n = rng.random_range(1..=max_rows.max(1));
    let rows: Vec<Vec<Value>> = (0..n)
        .map(|_| schema.iter().map(|_| base.elems().choose(rng).expect("nonempty base").clone()).collect())
        .collect();
    Table::from_rows(schema, rows).expect("rows fit the schema")
}

/// `G^schema`.
pub fn full_table(schema: &VarSet, base: &Base) -> Table {
    let mut rows: Vec<Vec<Value>> = vec![Vec::new()];
    for _ in schema {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                base.elems().iter().map(move |g| {
                    let mut r = r.clone();
                    r.push(g.clone());
                    r
                })
            })
            .collect();
    }
    Table::from_rows(schema, rows).expect("rows fit the schema")
}

/// Generator state for one law case.
pub struct Gen {
    rng: ChaCha8Rng,
    pub pool: Vec<Variable>,
    pub base: Base,
    pub max_rows: usize,
}

impl Gen {
    pub fn new(seed: u64, pool: Vec<Variable>, base: Base) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), pool, base, max_rows: 6 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn var(&mut self) -> Variable {
        *self.pool.choose(&mut self.rng).expect("nonempty pool")
    }

    /// Two variables, distinct from each other.
    pub fn distinct_pair(&mut self) -> (Variable, Variable) {
        let picked: Vec<Variable> = self.pool.choose_multiple(&mut self.rng, 2).copied().collect();
        (picked[0], picked[1])
    }

    pub fn var_outside(&mut self, avoid: &VarSet) -> Option<Variable> {
        let options: Vec<Variable> = self.pool.iter().filter(|x| !avoid.contains(x)).copied().collect();
        options.choose(&mut self.rng).copied()
    }

    /// Random subset of the pool with at most `max` elements.
    pub fn subset(&mut self, max: usize) -> VarSet {
        let n = self.rng.random_range(0..=max.min(self.pool.len()));
        self.pool.choose_multiple(&mut self.rng, n).copied().collect()
    }

    pub fn nonempty_subset(&mut self, max: usize) -> VarSet {
        let n = self.rng.random_range(1..=max.clamp(1, self.pool.len()));
        self.pool.choose_multiple(&mut self.rng, n).copied().collect()
    }

    /// Random subset of `from`.
    pub fn subset_of(&mut self, from: &VarSet) -> VarSet {
        from.iter().filter(|_| self.rng.random_bool(0.5)).copied().collect()
    }

    pub fn table(&mut self) -> Table {
        gen_table(&mut self.rng, &self.pool, &self.base, self.max_rows)
    }

    /// Random table with schema exactly `schema`, empty only if forced.
    pub fn table_over(&mut self, schema: &VarSet) -> Table {
        if self.rng.random_bool(0.1) {
            return full_table(schema, &self.base);
        }
        table_over(&mut self.rng, schema, &self.base, self.max_rows)
    }

    /// A finite set of variable pairs drawn from the pool.
    pub fn pairs(&mut self, max: usize) -> Vec<(Variable, Variable)> {
        let n = self.rng.random_range(0..=max);
        (0..n).map(|_| (self.var(), self.var())).collect()
    }

    /// Uniformly random map `dom -> cod`; `cod` must be nonempty unless `dom` is empty.
    pub fn mapping(&mut self, dom: &VarSet, cod: &VarSet) -> Mapping {
        let targets: Vec<Variable> = cod.iter().copied().collect();
        let graph: BTreeMap<Variable, Variable> =
            dom.iter().map(|x| (*x, *targets.choose(&mut self.rng).expect("codomain is nonempty"))).collect();
        Mapping::from_graph(graph, cod.clone()).expect("targets lie in the codomain")
    }

    /// Random `λ: X -> Y` between subsets of the pool.
    pub fn any_mapping(&mut self) -> Mapping {
        let cod = self.subset(3);
        let dom = if cod.is_empty() { VarSet::new() } else { self.subset(3) };
        self.mapping(&dom, &cod)
    }

    /// Random domain-disjoint `λ: X -> Y`.
    pub fn disjoint_mapping(&mut self) -> Mapping {
        let cod = self.subset(3);
        let dom = if cod.is_empty() {
            VarSet::new()
        } else {
            let rest: Vec<Variable> = self.pool.iter().filter(|x| !cod.contains(x)).copied().collect();
            let n = self.rng.random_range(0..=rest.len().min(3));
            rest.choose_multiple(&mut self.rng, n).copied().collect()
        };
        self.mapping(&dom, &cod)
    }

    /// Random folding `δ: X -> Y` with `Y ⊆ X`.
    pub fn folding(&mut self) -> Mapping {
        let dom = self.subset(MAX_COLUMNS);
        let mut cod = self.subset_of(&dom);
        if cod.is_empty() {
            if let Some(first) = dom.iter().next() {
                cod.insert(*first);
            }
        }
        let targets: Vec<Variable> = cod.iter().copied().collect();
        let graph = dom
            .iter()
            .map(|x| (*x, if cod.contains(x) { *x } else { *targets.choose(&mut self.rng).unwrap() }))
            .collect();
        Mapping::from_graph(graph, cod).expect("targets lie in the codomain")
    }

    /// Random domain-disjoint bijection `σ: X -> Y`; `X` may use variables
    /// beyond the pool.
    pub fn disjoint_bijection(&mut self) -> Mapping {
        let cod = self.subset(3);
        let mut candidates: Vec<Variable> =
            first_n(self.pool.len() as u32 + 3).into_iter().filter(|x| !cod.contains(x)).collect();
        candidates.shuffle(&mut self.rng);
        let graph = candidates.into_iter().zip(cod.iter().copied()).collect();
        Mapping::from_graph(graph, cod).expect("targets lie in the codomain")
    }

    /// Random finite partial transformation on the pool plus one outside variable.
    pub fn fpt(&mut self) -> FinPartialTransform {
        let outside = Variable::x(self.pool.iter().map(|x| x.id()).max().unwrap_or(0) + 1);
        let mut domain = self.pool.clone();
        domain.push(outside);
        let mut pairs = Vec::new();
        for x in domain {
            if self.rng.random_bool(0.6) {
                pairs.push((x, *self.pool.choose(&mut self.rng).unwrap()));
            }
        }
        FinPartialTransform::new(pairs).expect("one image per variable")
    }

    /// Mostly finite partial transformations, occasionally the global identity.
    pub fn transformation(&mut self) -> Transformation {
        if self.rng.random_bool(0.1) {
            Transformation::GlobalIdentity
        } else {
            Transformation::Finite(self.fpt())
        }
    }
}

/// Random structure: base of at most `max_base` elements (rarely empty) and
/// one or two relations of arity 1 to 3.
pub fn gen_structure<R: Rng + ?Sized>(rng: &mut R, max_base: usize) -> Structure {
    const LETTERS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
    let size = if rng.random_bool(0.05) { 0 } else { rng.random_range(1..=max_base.clamp(1, LETTERS.len())) };
    let base = Base::new(LETTERS[..size].iter().copied());
    let mut s = Structure::new(base.clone());
    let n_rel = rng.random_range(1..=2);
    for (i, name) in ["R", "S"].iter().enumerate().take(n_rel) {
        let arity = rng.random_range(1..=3);
        let density = [0.2, 0.4, 0.7][i % 3];
        let all = full_table(&first_n(arity as u32).into_iter().collect(), &base);
        let tuples: Vec<Vec<Value>> = all
            .as_nonempty()
            .map(|t| t.raw_rows().filter(|_| rng.random_bool(density)).map(<[Value]>::to_vec).collect())
            .unwrap_or_default();
        s.add_relation(name, arity, tuples).expect("generated tuples fit");
    }
    s
}

/// Random primitive positive formula of depth at most `depth` over the
/// relations of `structure`. Variables come from `x1..x4` so conjuncts share
/// columns and quantifiers usually bind something.
pub fn gen_formula<R: Rng + ?Sized>(rng: &mut R, structure: &Structure, depth: usize) -> Formula {
    let pool = first_n(4);
    if depth == 0 || rng.random_bool(0.25) {
        return gen_atom(rng, structure, &pool);
    }
    if rng.random_bool(0.6) {
        Formula::and(gen_formula(rng, structure, depth - 1), gen_formula(rng, structure, depth - 1))
    } else {
        let body = gen_formula(rng, structure, depth - 1);
        let free: Vec<Variable> = body.free_vars().into_iter().collect();
        let x = if !free.is_empty() && rng.random_bool(0.85) {
            *free.choose(rng).unwrap()
        } else {
            *pool.choose(rng).unwrap()
        };
        Formula::exists(x, body)
    }
}

fn gen_atom<R: Rng + ?Sized>(rng: &mut R, structure: &Structure, pool: &[Variable]) -> Formula {
    let relations: Vec<(&String, usize)> = structure.relations().iter().map(|(n, d)| (n, d.arity)).collect();
    match rng.random_range(0..20) {
        0 => Formula::True,
        1 => Formula::False,
        2..=6 => Formula::Eq(*pool.choose(rng).unwrap(), *pool.choose(rng).unwrap()),
        _ => match relations.choose(rng) {
            Some((name, arity)) => {
                let args = (0..*arity).map(|_| *pool.choose(rng).unwrap()).collect();
                Formula::RelAtom((*name).clone(), args)
            }
            None => Formula::Eq(*pool.choose(rng).unwrap(), *pool.choose(rng).unwrap()),
        },
    }
}
