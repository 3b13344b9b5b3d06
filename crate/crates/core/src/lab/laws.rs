//! Executable statements of the axioms and derived results.
//!
//! Every law draws its inputs from a [`Case`], binds them for reporting and
//! returns a [`Verdict`]. Laws with side conditions generate inputs inside
//! [`Case::given`], which retries until the condition holds or gives up.

use std::fmt::Display;

use super::gen::Gen;
use crate::algebra::{default_probe, ProjectionalSemilattice, TableAlgebra};
use crate::mapping::{act_with, compose, outer_compose, table_compose, FinPartialTransform, FreshScheme, Mapping, Transformation};
use crate::table::{NamedTuple, Schema, Table};
use crate::var::{fmt_vars, Variable, VarSet};

/// Attempts per case before a side condition is reported as unmet.
pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    SideConditionUnmet,
}

/// Which group of statements a law belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// PS0–PS12.
    Semilattice,
    /// A1–A13.
    Orbital,
    /// Propositions, interdefinability identities, decomposition.
    Derived,
}

#[derive(Debug)]
pub struct Law {
    pub id: &'static str,
    pub suite: Suite,
    pub statement: &'static str,
    /// Needs the concrete table operations, not just the abstract signature.
    pub concrete: bool,
    run: fn(&mut Case<'_>) -> Verdict,
}

impl Law {
    pub fn run(&self, case: &mut Case<'_>) -> Verdict {
        (self.run)(case)
    }
}

/// Inputs and operations available to one law case.
pub struct Case<'a> {
    pub model: &'a dyn ProjectionalSemilattice,
    pub tables: &'a TableAlgebra,
    pub gen: Gen,
    pub bindings: Vec<(String, String)>,
}

impl<'a> Case<'a> {
    pub fn new(model: &'a dyn ProjectionalSemilattice, tables: &'a TableAlgebra, gen: Gen) -> Self {
        Case { model, tables, gen, bindings: Vec::new() }
    }

    fn bind(&mut self, name: &str, value: impl Display) {
        self.bindings.push((name.to_owned(), value.to_string()));
    }

    fn bind_vars(&mut self, name: &str, vars: &VarSet) {
        self.bind(name, fmt_vars(vars));
    }

    /// Runs `attempt` until it yields inputs, at most [`MAX_ATTEMPTS`] times.
    fn given<T>(&mut self, mut attempt: impl FnMut(&mut Self) -> Option<T>) -> Option<T> {
        (0..MAX_ATTEMPTS).find_map(|_| attempt(self))
    }

    fn is_zero(&self, u: &Table) -> bool {
        *u == self.model.zero()
    }

    fn nonzero(&mut self) -> Option<Table> {
        let u = self.gen.table();
        (!self.is_zero(&u)).then_some(u)
    }

    /// An element of `V*[Y]`.
    fn element_over(&mut self, y: &VarSet) -> Option<Table> {
        let u = self.gen.table_over(y);
        (!self.is_zero(&u) && self.model.dom(&u) == Schema::Finite(y.clone())).then_some(u)
    }

    fn finite_dom(&self, u: &Table) -> Option<VarSet> {
        self.model.dom(u).as_finite().cloned()
    }

    fn act(&self, u: &Table, lambda: &Transformation) -> Table {
        act_with(self.model, u, lambda, &FreshScheme::default())
    }

    fn odot(&self, u: &Table, lambda: &Mapping) -> Result<Table, String> {
        outer_compose(self.model, u, lambda, &FreshScheme::default()).map_err(|e| e.to_string())
    }

    fn e(&self, lambda: &Mapping) -> Table {
        self.model.diag_gen(&lambda.pairs())
    }
}

macro_rules! given {
    ($case:expr, $attempt:expr) => {
        match $case.given($attempt) {
            Some(inputs) => inputs,
            None => return Verdict::SideConditionUnmet,
        }
    };
}

macro_rules! tried {
    ($result:expr) => {
        match $result {
            Ok(value) => value,
            Err(e) => return Verdict::Fail(e.to_string()),
        }
    };
}

fn same(what: &str, lhs: &Table, rhs: &Table) -> Verdict {
    if lhs == rhs {
        Verdict::Pass
    } else {
        Verdict::Fail(format!("{what}: left side {lhs}, right side {rhs}"))
    }
}

fn holds(cond: bool, what: impl FnOnce() -> String) -> Verdict {
    if cond {
        Verdict::Pass
    } else {
        Verdict::Fail(what())
    }
}

fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts.into_iter().find(|v| *v != Verdict::Pass).unwrap_or(Verdict::Pass)
}

// ---------------------------------------------------------------- PS0–PS12

fn ps0(c: &mut Case<'_>) -> Verdict {
    let (u, v, w) = (c.gen.table(), c.gen.table(), c.gen.table());
    c.bind("u", &u);
    c.bind("v", &v);
    c.bind("w", &w);
    let m = c.model;
    all([
        same("(u∧v)∧w = u∧(v∧w)", &m.meet(&m.meet(&u, &v), &w), &m.meet(&u, &m.meet(&v, &w))),
        same("u∧v = v∧u", &m.meet(&u, &v), &m.meet(&v, &u)),
        same("u∧u = u", &m.meet(&u, &u), &u),
        same("0∧u = 0", &m.meet(&m.zero(), &u), &m.zero()),
        same("1∧u = u", &m.meet(&m.one(), &u), &u),
    ])
}

fn ps1(c: &mut Case<'_>) -> Verdict {
    let x = c.gen.var();
    c.bind("x", x);
    let m = c.model;
    same("c_x(0) = 0", &m.cyl(x, &m.zero()), &m.zero())
}

fn ps2(c: &mut Case<'_>) -> Verdict {
    let (x, u) = (c.gen.var(), c.gen.table());
    c.bind("x", x);
    c.bind("u", &u);
    let cu = c.model.cyl(x, &u);
    holds(c.model.leq(&u, &cu), || format!("u ≰ c_x(u) = {cu}"))
}

fn ps3(c: &mut Case<'_>) -> Verdict {
    let (x, u, v) = (c.gen.var(), c.gen.table(), c.gen.table());
    c.bind("x", x);
    c.bind("u", &u);
    c.bind("v", &v);
    let m = c.model;
    let cv = m.cyl(x, &v);
    same("c_x(u∧c_x v) = c_x u ∧ c_x v", &m.cyl(x, &m.meet(&u, &cv)), &m.meet(&m.cyl(x, &u), &cv))
}

fn ps4(c: &mut Case<'_>) -> Verdict {
    let (x, y, u) = (c.gen.var(), c.gen.var(), c.gen.table());
    c.bind("x", x);
    c.bind("y", y);
    c.bind("u", &u);
    let m = c.model;
    same("c_x c_y u = c_y c_x u", &m.cyl(x, &m.cyl(y, &u)), &m.cyl(y, &m.cyl(x, &u)))
}

fn ps5(c: &mut Case<'_>) -> Verdict {
    let u = given!(c, Case::nonzero);
    let x = c.gen.var();
    c.bind("u", &u);
    c.bind("x", x);
    let m = c.model;
    let moved = m.cyl(x, &u) != u;
    let below = m.leq(&u, &m.diag(x, x));
    holds(moved == below, || format!("u ≠ c_x(u) is {moved} but u ≤ d_xx is {below}"))
}

fn ps6(c: &mut Case<'_>) -> Verdict {
    let (x, y, z) = given!(c, |c: &mut Case<'_>| {
        let (x, y, z) = (c.gen.var(), c.gen.var(), c.gen.var());
        (x != y && x != z).then_some((x, y, z))
    });
    c.bind("x", x);
    c.bind("y", y);
    c.bind("z", z);
    let m = c.model;
    same("d_yz = c_x(d_yx ∧ d_xz)", &m.diag(y, z), &m.cyl(x, &m.meet(&m.diag(y, x), &m.diag(x, z))))
}

fn ps7(c: &mut Case<'_>) -> Verdict {
    let (x, y) = c.gen.distinct_pair();
    let u = c.gen.table();
    c.bind("x", x);
    c.bind("y", y);
    c.bind("u", &u);
    let m = c.model;
    let d = m.diag(x, y);
    let lhs = m.meet(&d, &m.cyl(x, &m.meet(&d, &u)));
    holds(m.leq(&lhs, &u), || format!("d_xy ∧ c_x(d_xy ∧ u) = {lhs} is not below u"))
}

fn finite_domain(c: &mut Case<'_>) -> Verdict {
    let u = given!(c, Case::nonzero);
    c.bind("u", &u);
    let dom = c.model.dom(&u);
    holds(dom.is_finite(), || format!("dom(u) = {dom}"))
}

fn domain_by_diagonals(c: &mut Case<'_>) -> Verdict {
    let u = c.gen.table();
    c.bind("u", &u);
    let mut probe: VarSet = c.gen.pool.iter().copied().collect();
    probe.extend(default_probe(&u));
    let m = c.model;
    let dom = m.dom(&u).restrict_to(&probe);
    let below: VarSet = probe.iter().filter(|x| m.leq(&u, &m.diag(**x, **x))).copied().collect();
    holds(dom == below, || format!("dom(u) = {} but {{x | u ≤ d_xx}} = {}", fmt_vars(&dom), fmt_vars(&below)))
}

fn ps10(c: &mut Case<'_>) -> Verdict {
    let u = given!(c, |c: &mut Case<'_>| {
        let u0 = c.nonzero()?;
        let dom = c.finite_dom(&u0)?;
        let u = c.model.cyl_all(&dom, &u0);
        (c.model.dom(&u) == Schema::Finite(VarSet::new())).then_some(u)
    });
    c.bind("u", &u);
    same("dom(u) = ∅ ⇒ u = 1", &u, &c.model.one())
}

fn nonzero_diagonal(c: &mut Case<'_>) -> Verdict {
    let x = c.gen.var();
    c.bind("x", x);
    let d = c.model.diag(x, x);
    holds(!c.is_zero(&d), || "d_xx = 0".into())
}

fn ps12(c: &mut Case<'_>) -> Verdict {
    let (x, y) = (c.gen.var(), c.gen.var());
    c.bind("x", x);
    c.bind("y", y);
    same("d_xy = d_yx", &c.model.diag(x, y), &c.model.diag(y, x))
}

// ------------------------------------------------------------------ A1–A13

fn a1(c: &mut Case<'_>) -> Verdict {
    let u = given!(c, Case::nonzero);
    c.bind("u", &u);
    let pi = FinPartialTransform::local_identity(&VarSet::new()).into();
    same("u·π_∅ = 1", &c.act(&u, &pi), &c.model.one())
}

fn a2(c: &mut Case<'_>) -> Verdict {
    let lambda = c.gen.transformation();
    c.bind("λ", &lambda);
    let zero = c.model.zero();
    same("0·λ = 0", &c.act(&zero, &lambda), &zero)
}

fn a3(c: &mut Case<'_>) -> Verdict {
    let u = given!(c, Case::nonzero);
    let v = c.gen.table();
    let mut z = c.finite_dom(&u).expect("nonzero elements have finite domains");
    z.extend(c.gen.subset(3));
    c.bind("u", &u);
    c.bind("v", &v);
    c.bind_vars("Z", &z);
    let pi: Transformation = FinPartialTransform::local_identity(&z).into();
    let m = c.model;
    same("(u∧v)·π_Z = u ∧ v·π_Z", &c.act(&m.meet(&u, &v), &pi), &m.meet(&u, &c.act(&v, &pi)))
}

fn a4(c: &mut Case<'_>) -> Verdict {
    let (u, z) = (c.gen.table(), c.gen.subset(4));
    c.bind("u", &u);
    c.bind_vars("Z", &z);
    let moved = c.act(&u, &FinPartialTransform::local_identity(&z).into());
    holds(c.model.leq(&u, &moved), || format!("u ≰ u·π_Z = {moved}"))
}

fn a5(c: &mut Case<'_>) -> Verdict {
    let (v, w, lambda) = (c.gen.table(), c.gen.table(), c.gen.transformation());
    let u = if c.gen.chance(0.2) { v.clone() } else { c.model.meet(&v, &w) };
    c.bind("u", &u);
    c.bind("v", &v);
    c.bind("λ", &lambda);
    let (ul, vl) = (c.act(&u, &lambda), c.act(&v, &lambda));
    holds(c.model.leq(&ul, &vl), || format!("u·λ = {ul} is not below v·λ = {vl}"))
}

fn a6(c: &mut Case<'_>) -> Verdict {
    let (x, y, u) = given!(c, |c: &mut Case<'_>| {
        let (x, y) = c.gen.distinct_pair();
        let u = c.model.meet(&c.gen.table(), &c.model.diag(x, y));
        (!c.is_zero(&u)).then_some((x, y, u))
    });
    c.bind("x", x);
    c.bind("y", y);
    c.bind("u", &u);
    let mut keep = c.finite_dom(&u).expect("nonzero elements have finite domains");
    keep.remove(&y);
    let pi = FinPartialTransform::local_identity(&keep).into();
    same("u = u·π_{dom(u)∖{y}} ∧ d_xy", &u, &c.model.meet(&c.act(&u, &pi), &c.model.diag(x, y)))
}

fn a7(c: &mut Case<'_>) -> Verdict {
    let (u, lambda, mu) = (c.gen.table(), c.gen.transformation(), c.gen.transformation());
    c.bind("u", &u);
    c.bind("λ", &lambda);
    c.bind("μ", &mu);
    same("u·λ·μ = u·(λ∘μ)", &c.act(&c.act(&u, &lambda), &mu), &c.act(&u, &lambda.compose(&mu)))
}

fn a8(c: &mut Case<'_>) -> Verdict {
    let u = c.gen.table();
    c.bind("u", &u);
    let pi = match c.finite_dom(&u) {
        Some(dom) => FinPartialTransform::local_identity(&dom).into(),
        None => Transformation::GlobalIdentity,
    };
    same("u·π_dom(u) = u", &c.act(&u, &pi), &u)
}

fn a10(c: &mut Case<'_>) -> Verdict {
    let (x, y) = (c.gen.var(), c.gen.var());
    c.bind("x", x);
    c.bind("y", y);
    let delta = tried!(FinPartialTransform::new([(x, x), (y, x)]));
    let m = c.model;
    same("d_xy = d_xx·(xx/xy)", &m.diag(x, y), &c.act(&m.diag(x, x), &delta.into()))
}

fn a11(c: &mut Case<'_>) -> Verdict {
    let u = given!(c, Case::nonzero);
    let lambda = c.gen.transformation();
    c.bind("u", &u);
    c.bind("λ", &lambda);
    let dom = c.finite_dom(&u).expect("nonzero elements have finite domains");
    let expected = Schema::Finite(lambda.preimage(&dom));
    let got = c.model.dom(&c.act(&u, &lambda));
    holds(got == expected, || format!("dom(u·λ) = {got} but λ⁻¹(dom u) = {expected}"))
}

// -------------------------------------------------------- outer composition

fn pse1(c: &mut Case<'_>) -> Verdict {
    let (lambda, u) = given!(c, |c: &mut Case<'_>| {
        let lambda = c.gen.disjoint_mapping();
        let u = c.element_over(lambda.cod())?;
        Some((lambda, u))
    });
    c.bind("u", &u);
    c.bind("λ", &lambda);
    let m = c.model;
    let lhs = tried!(c.odot(&u, &lambda));
    same("u⊙λ = C_Y(u ∧ e_λ)", &lhs, &m.cyl_all(lambda.cod(), &m.meet(&u, &c.e(&lambda))))
}

fn pse2(c: &mut Case<'_>) -> Verdict {
    let (mu, nu, u) = given!(c, |c: &mut Case<'_>| {
        let y = c.gen.subset(3);
        let z = if y.is_empty() { VarSet::new() } else { c.gen.subset(3) };
        let x = if z.is_empty() { VarSet::new() } else { c.gen.subset(3) };
        let (mu, nu) = (c.gen.mapping(&x, &z), c.gen.mapping(&z, &y));
        let u = c.element_over(&y)?;
        Some((mu, nu, u))
    });
    c.bind("u", &u);
    c.bind("μ", &mu);
    c.bind("ν", &nu);
    let nu_mu = tried!(compose(&nu, &mu));
    let lhs = tried!(c.odot(&u, &nu_mu));
    let rhs = tried!(c.odot(&tried!(c.odot(&u, &nu)), &mu));
    same("u⊙(ν∘μ) = (u⊙ν)⊙μ", &lhs, &rhs)
}

fn arbitrary_composition(c: &mut Case<'_>) -> Option<(Mapping, Table)> {
    let lambda = c.gen.any_mapping();
    let u = c.element_over(lambda.cod())?;
    Some((lambda, u))
}

fn scheme_independence(c: &mut Case<'_>) -> Verdict {
    let (lambda, u) = given!(c, arbitrary_composition);
    c.bind("u", &u);
    c.bind("λ", &lambda);
    let a = tried!(outer_compose(c.model, &u, &lambda, &FreshScheme::default()));
    let b = tried!(outer_compose(c.model, &u, &lambda, &FreshScheme::alternate()));
    same("u⊙λ under two fresh-variable schemes", &a, &b)
}

fn outer_matches_direct(c: &mut Case<'_>) -> Verdict {
    let (lambda, u) = given!(c, arbitrary_composition);
    c.bind("u", &u);
    c.bind("λ", &lambda);
    let abstract_route = tried!(c.odot(&u, &lambda));
    same("u⊙λ = {t∘λ | t ∈ u}", &abstract_route, &tried!(table_compose(&u, &lambda)))
}

// ------------------------------------------------------------ table order

fn prop1(c: &mut Case<'_>) -> Verdict {
    let t1 = c.gen.table();
    let t2 = match (c.gen.chance(0.5), t1.finite_schema()) {
        (true, Some(schema)) => {
            let keep = c.gen.subset_of(&schema);
            let shrunk = t1.project(&keep).expect("subset of the schema");
            if c.gen.chance(0.5) { shrunk } else { shrunk.join(&c.gen.table_over(&keep)) }
        }
        _ => c.gen.table(),
    };
    c.bind("T1", &t1);
    c.bind("T2", &t2);
    let by_schema = match (&t1, t2.finite_schema()) {
        (Table::Empty, _) => true,
        (_, None) => false,
        (_, Some(x2)) => {
            let x1 = t1.finite_schema().expect("nonempty");
            x2.is_subset(&x1) && t1.rows().iter().all(|t| t.restrict(&x2).is_ok_and(|s| t2.contains(&s)))
        }
    };
    let by_join = t1.leq(&t2);
    holds(by_join == by_schema, || format!("T1 = T1⋈T2 is {by_join} but the schema characterization is {by_schema}"))
}

/// All named tuples over `base` whose domain is a subset of `vars`.
fn partial_tuples(vars: &VarSet, c: &Case<'_>) -> Vec<NamedTuple> {
    let base = c.tables.base().elems();
    let mut out = vec![NamedTuple::new()];
    for x in vars {
        let extended: Vec<NamedTuple> = out
            .iter()
            .flat_map(|t| {
                base.iter().map(move |g| {
                    let mut t = t.clone();
                    t.insert(*x, g.clone());
                    t
                })
            })
            .collect();
        out.extend(extended);
    }
    out
}

fn prop2(c: &mut Case<'_>) -> Verdict {
    let (t1, t2) = (c.gen.table(), c.gen.table());
    c.bind("T1", &t1);
    c.bind("T2", &t2);
    let mut w = t1.finite_schema().unwrap_or_default();
    w.extend(t2.finite_schema().unwrap_or_default());
    let tuples = partial_tuples(&w, c);
    let witness = tuples.iter().find(|t| t1.extends_member(t) && !t2.extends_member(t));
    let leq = t1.leq(&t2);
    match (leq, witness) {
        (true, Some(t)) => Verdict::Fail(format!("T1 ≤ T2 but {t} extends a row of T1 and none of T2")),
        (false, None) => Verdict::Fail("T1 ≰ T2 but every extension of a row of T1 extends a row of T2".into()),
        _ => Verdict::Pass,
    }
}

// ------------------------------------------------------------- Prop 3

fn prop3_i(c: &mut Case<'_>) -> Verdict {
    let (x, v) = (c.gen.var(), c.gen.table());
    c.bind("x", x);
    c.bind("v", &v);
    let cv = c.model.cyl(x, &v);
    same("c_x c_x v = c_x v", &c.model.cyl(x, &cv), &cv)
}

fn prop3_ii(c: &mut Case<'_>) -> Verdict {
    let (x, v, w) = (c.gen.var(), c.gen.table(), c.gen.table());
    let m = c.model;
    let u = m.meet(&v, &w);
    c.bind("x", x);
    c.bind("u", &u);
    c.bind("v", &v);
    let (cu, cv) = (m.cyl(x, &u), m.cyl(x, &v));
    holds(m.leq(&cu, &cv), || format!("c_x u = {cu} is not below c_x v = {cv}"))
}

fn prop3_iii(c: &mut Case<'_>) -> Verdict {
    let (x, v) = given!(c, |c: &mut Case<'_>| {
        let (x, v) = (c.gen.var(), c.gen.table());
        (!c.model.dom(&v).contains(x)).then_some((x, v))
    });
    let u = c.gen.table();
    c.bind("x", x);
    c.bind("u", &u);
    c.bind("v", &v);
    let m = c.model;
    same("c_x(u∧v) = c_x u ∧ v", &m.cyl(x, &m.meet(&u, &v)), &m.meet(&m.cyl(x, &u), &v))
}

fn prop3_iv(c: &mut Case<'_>) -> Verdict {
    let (x, y) = c.gen.distinct_pair();
    let m = c.model;
    let u = m.meet(&c.gen.table(), &m.diag(x, y));
    c.bind("x", x);
    c.bind("y", y);
    c.bind("u", &u);
    same("d_xy ∧ c_x u = u", &m.meet(&m.diag(x, y), &m.cyl(x, &u)), &u)
}

fn prop3_v(c: &mut Case<'_>) -> Verdict {
    let (x, y) = c.gen.distinct_pair();
    c.bind("x", x);
    c.bind("y", y);
    let m = c.model;
    same("c_x d_xy = d_yy", &m.cyl(x, &m.diag(x, y)), &m.diag(y, y))
}

fn prop3_vi(c: &mut Case<'_>) -> Verdict {
    let (x, y, z) = (c.gen.var(), c.gen.var(), c.gen.var());
    c.bind("x", x);
    c.bind("y", y);
    c.bind("z", z);
    let m = c.model;
    let lhs = m.meet(&m.diag(x, z), &m.diag(z, y));
    holds(m.leq(&lhs, &m.diag(x, y)), || format!("d_xz ∧ d_zy = {lhs} is not below d_xy"))
}

// ------------------------------------------------------------- Prop 4

fn in_slice(c: &Case<'_>, u: &Table, x: &VarSet) -> bool {
    c.is_zero(u) || c.model.dom(u) == Schema::Finite(x.clone())
}

fn prop4_i(c: &mut Case<'_>) -> Verdict {
    let (x, y) = (c.gen.var(), c.gen.var());
    c.bind("x", x);
    c.bind("y", y);
    let d = c.model.diag(x, y);
    let dom = c.model.dom(&d);
    let expected = Schema::Finite([x, y].into());
    holds(!c.is_zero(&d) && dom == expected, || format!("d_xy = {d} has domain {dom}"))
}

fn prop4_ii(c: &mut Case<'_>) -> Verdict {
    let (u, v) = (c.gen.table(), c.gen.table());
    c.bind("u", &u);
    c.bind("v", &v);
    let meet = c.model.meet(&u, &v);
    match (c.finite_dom(&u), c.finite_dom(&v)) {
        (Some(x), Some(y)) => {
            let xy: VarSet = x.union(&y).copied().collect();
            holds(in_slice(c, &meet, &xy), || format!("u∧v = {meet} is outside V[{}]", fmt_vars(&xy)))
        }
        _ => holds(c.is_zero(&meet), || format!("u∧v = {meet} with a zero operand")),
    }
}

fn prop4_iii(c: &mut Case<'_>) -> Verdict {
    let u = given!(c, Case::nonzero);
    let z = c.gen.subset(3);
    c.bind("u", &u);
    c.bind_vars("Z", &z);
    let y = c.finite_dom(&u).expect("nonzero elements have finite domains");
    let rest: VarSet = y.difference(&z).copied().collect();
    let cu = c.model.cyl_all(&z, &u);
    holds(!c.is_zero(&cu) && c.model.dom(&cu) == Schema::Finite(rest.clone()), || {
        format!("C_Z(u) = {cu} is not in V*[{}]", fmt_vars(&rest))
    })
}

fn prop4_iv(c: &mut Case<'_>) -> Verdict {
    let rho = c.gen.pairs(4);
    let shown: Vec<String> = rho.iter().map(|(x, y)| format!("({x},{y})")).collect();
    c.bind("ρ", format!("{{{}}}", shown.join(",")));
    let field: VarSet = rho.iter().flat_map(|(x, y)| [*x, *y]).collect();
    let e = c.model.diag_gen(&rho);
    holds(!c.is_zero(&e) && c.model.dom(&e) == Schema::Finite(field.clone()), || {
        format!("e_ρ = {e} is not in V*[{}]", fmt_vars(&field))
    })
}

// ------------------------------------------------------------- Prop 5

fn prop5_i(c: &mut Case<'_>) -> Verdict {
    let x = c.gen.subset(4);
    c.bind_vars("X", &x);
    let zero = c.model.zero();
    same("C_X(0) = 0", &c.model.cyl_all(&x, &zero), &zero)
}

fn prop5_ii(c: &mut Case<'_>) -> Verdict {
    let (x, y, u) = (c.gen.subset(3), c.gen.subset(3), c.gen.table());
    c.bind_vars("X", &x);
    c.bind_vars("Y", &y);
    c.bind("u", &u);
    let m = c.model;
    same("C_X C_Y u = C_Y C_X u", &m.cyl_all(&x, &m.cyl_all(&y, &u)), &m.cyl_all(&y, &m.cyl_all(&x, &u)))
}

fn prop5_iii(c: &mut Case<'_>) -> Verdict {
    let v = given!(c, Case::nonzero);
    let dom_v = c.finite_dom(&v).expect("nonzero elements have finite domains");
    let z: VarSet = c.gen.subset(3).difference(&dom_v).copied().collect();
    let u = c.gen.table();
    c.bind("u", &u);
    c.bind("v", &v);
    c.bind_vars("Z", &z);
    let m = c.model;
    same("C_Z(u∧v) = C_Z u ∧ v", &m.cyl_all(&z, &m.meet(&u, &v)), &m.meet(&m.cyl_all(&z, &u), &v))
}

// ------------------------------------------------------------- Prop 6

fn composable_pair(c: &mut Case<'_>, folding: bool) -> (Mapping, Mapping) {
    let mu = if folding {
        c.gen.folding()
    } else {
        let z = c.gen.subset(3);
        let x = if z.is_empty() { VarSet::new() } else { c.gen.subset(3) };
        c.gen.mapping(&x, &z)
    };
    let y = if mu.cod().is_empty() { c.gen.subset(3) } else { c.gen.nonempty_subset(3) };
    let nu = c.gen.mapping(mu.cod(), &y);
    c.bind("μ", &mu);
    c.bind("ν", &nu);
    (mu, nu)
}

fn prop6_i(c: &mut Case<'_>) -> Verdict {
    let (mu, nu) = composable_pair(c, false);
    let nu_mu = tried!(compose(&nu, &mu));
    let m = c.model;
    let lhs = m.meet(&c.e(&mu), &c.e(&nu));
    holds(m.leq(&lhs, &c.e(&nu_mu)), || format!("e_μ ∧ e_ν = {lhs} is not below e_ν∘μ"))
}

fn prop6_ii(c: &mut Case<'_>) -> Verdict {
    let (mu, nu) = composable_pair(c, false);
    let nu_mu = tried!(compose(&nu, &mu));
    let m = c.model;
    same("e_μ ∧ e_ν = e_ν∘μ ∧ e_ν", &m.meet(&c.e(&mu), &c.e(&nu)), &m.meet(&c.e(&nu_mu), &c.e(&nu)))
}

fn prop6_iii(c: &mut Case<'_>) -> Verdict {
    let (mu, nu) = composable_pair(c, true);
    let nu_mu = tried!(compose(&nu, &mu));
    same("e_μ ∧ e_ν = e_ν∘μ", &c.model.meet(&c.e(&mu), &c.e(&nu)), &c.e(&nu_mu))
}

// ------------------------------------------------------------- Prop 7

fn prop7_i(c: &mut Case<'_>) -> Verdict {
    let (lambda, u) = given!(c, |c: &mut Case<'_>| {
        let lambda = c.gen.disjoint_mapping();
        let u = c.element_over(lambda.cod())?;
        Some((lambda, u))
    });
    c.bind("u", &u);
    c.bind("λ", &lambda);
    let m = c.model;
    same("C_X(u ∧ e_λ) = u", &m.cyl_all(&lambda.dom(), &m.meet(&u, &c.e(&lambda))), &u)
}

fn prop7_ii(c: &mut Case<'_>) -> Verdict {
    let lambda = c.gen.disjoint_mapping();
    let m = c.model;
    let u = m.meet(&c.gen.table(), &c.e(&lambda));
    c.bind("u", &u);
    c.bind("λ", &lambda);
    same("C_X(u) ∧ e_λ = u", &m.meet(&m.cyl_all(&lambda.dom(), &u), &c.e(&lambda)), &u)
}

// ------------------------------------------------------------- Prop 9

fn prop9_i(c: &mut Case<'_>) -> Verdict {
    let (sigma, u) = given!(c, |c: &mut Case<'_>| {
        let sigma = c.gen.disjoint_bijection();
        let u = c.element_over(sigma.cod())?;
        Some((sigma, u))
    });
    c.bind("u", &u);
    c.bind("σ", &sigma);
    let inverse = sigma.inverse().expect("bijection");
    let there = tried!(c.odot(&u, &sigma));
    same("u⊙σ⊙σ⁻¹ = u", &tried!(c.odot(&there, &inverse)), &u)
}

fn prop9_ii(c: &mut Case<'_>) -> Verdict {
    let (x, y, u) = given!(c, |c: &mut Case<'_>| {
        let y = c.gen.subset(4);
        let x = c.gen.subset_of(&y);
        let u = c.element_over(&y)?;
        Some((x, y, u))
    });
    c.bind("u", &u);
    c.bind_vars("X", &x);
    c.bind_vars("Y", &y);
    let iota = tried!(Mapping::inclusion(&x, &y));
    let rest: VarSet = y.difference(&x).copied().collect();
    same("u⊙ι_X = C_{Y∖X}(u)", &tried!(c.odot(&u, &iota)), &c.model.cyl_all(&rest, &u))
}

fn prop9_iii(c: &mut Case<'_>) -> Verdict {
    let (delta, u) = given!(c, |c: &mut Case<'_>| {
        let delta = c.gen.folding();
        let u = c.element_over(delta.cod())?;
        Some((delta, u))
    });
    c.bind("u", &u);
    c.bind("δ", &delta);
    same("u⊙δ = u ∧ e_δ", &tried!(c.odot(&u, &delta)), &c.model.meet(&u, &c.e(&delta)))
}

// --------------------------------------------- table identities, mappings

fn interdef_select(c: &mut Case<'_>) -> Verdict {
    let (t, x, y) = given!(c, |c: &mut Case<'_>| {
        let t = c.gen.table();
        let cols: Vec<Variable> = t.finite_schema()?.into_iter().collect();
        (cols.len() >= 2).then_some(())?;
        let picked: Vec<Variable> = rand::seq::IndexedRandom::choose_multiple(&cols[..], c.gen.rng(), 2).copied().collect();
        Some((t, picked[0], picked[1]))
    });
    c.bind("T", &t);
    c.bind("x", x);
    c.bind("y", y);
    let px = tried!(t.project(&[x].into()));
    let rhs = t.join(&tried!(px.duplicate(x, y)));
    same("σ_{x=y}(T) = T ⋈ dup_xy(proj_x T)", &tried!(t.select_eq(x, y)), &rhs)
}

/// A nonempty table, a column `x` and a variable `y` outside the schema.
fn dup_inputs(c: &mut Case<'_>) -> Option<(Table, Variable, Variable)> {
    let t = c.gen.table();
    let schema = t.finite_schema()?;
    let x = c.gen.subset_of(&schema).into_iter().next().or_else(|| schema.iter().next().copied())?;
    let y = c.gen.var_outside(&schema)?;
    Some((t, x, y))
}

fn interdef_dup(c: &mut Case<'_>) -> Verdict {
    let (t, x, y) = given!(c, dup_inputs);
    c.bind("T", &t);
    c.bind("x", x);
    c.bind("y", y);
    let renamed = tried!(tried!(t.project(&[x].into())).rename(x, y));
    let rhs = tried!(t.join(&renamed).select_eq(x, y));
    same("dup_xy(T) = σ_{x=y}(T ⋈ rnm_xy(proj_x T))", &tried!(t.duplicate(x, y)), &rhs)
}

fn dup_round_trip(c: &mut Case<'_>) -> Verdict {
    let (t, x, y) = given!(c, dup_inputs);
    c.bind("T", &t);
    c.bind("x", x);
    c.bind("y", y);
    same("del_y(dup_xy(T)) = T", &tried!(t.duplicate(x, y)).delete(y), &t)
}

fn decomposition(c: &mut Case<'_>) -> Verdict {
    let lambda = c.gen.any_mapping();
    c.bind("λ", &lambda);
    let d = lambda.decompose();
    let recomposed = tried!(d.recompose());
    all([
        holds(d.folding.is_folding(), || format!("δ = {} is not a folding", d.folding)),
        holds(d.bijection.is_bijection(), || format!("ξ = {} is not a bijection", d.bijection)),
        holds(d.inclusion.is_inclusion(), || format!("ι = {} is not an inclusion", d.inclusion)),
        holds(recomposed == lambda, || format!("ι∘ξ∘δ = {recomposed}")),
    ])
}

macro_rules! law {
    ($id:literal, $suite:ident, $statement:literal, $run:expr) => {
        Law { id: $id, suite: Suite::$suite, statement: $statement, concrete: false, run: $run }
    };
    ($id:literal, $suite:ident, $statement:literal, $run:expr, concrete) => {
        Law { id: $id, suite: Suite::$suite, statement: $statement, concrete: true, run: $run }
    };
}

/// The registry, in reporting order.
pub static LAWS: &[Law] = &[
    law!("PS0", Semilattice, "(V,∧,0,1) is a bounded semilattice", ps0),
    law!("PS1", Semilattice, "c_x(0) = 0", ps1),
    law!("PS2", Semilattice, "u ≤ c_x(u)", ps2),
    law!("PS3", Semilattice, "c_x(u ∧ c_x(v)) = c_x(u) ∧ c_x(v)", ps3),
    law!("PS4", Semilattice, "c_x(c_y(u)) = c_y(c_x(u))", ps4),
    law!("PS5", Semilattice, "u ≠ 0 ⇒ (u ≠ c_x(u) ⇔ u ≤ d_xx)", ps5),
    law!("PS6", Semilattice, "x ≠ y,z ⇒ d_yz = c_x(d_yx ∧ d_xz)", ps6),
    law!("PS7", Semilattice, "x ≠ y ⇒ d_xy ∧ c_x(d_xy ∧ u) ≤ u", ps7),
    law!("PS8", Semilattice, "u ≠ 0 ⇒ dom(u) finite", finite_domain),
    law!("PS9", Semilattice, "dom(u) = {x | u ≤ d_xx}", domain_by_diagonals),
    law!("PS10", Semilattice, "dom(u) = ∅ ⇒ u = 1", ps10),
    law!("PS11", Semilattice, "d_xx ≠ 0", nonzero_diagonal),
    law!("PS12", Semilattice, "d_xy = d_yx", ps12),
    law!("A1", Orbital, "u ≠ 0 ⇒ u·π_∅ = 1", a1),
    law!("A2", Orbital, "0·λ = 0", a2),
    law!("A3", Orbital, "dom(u) ⊆ Z ⇒ (u ∧ v)·π_Z = u ∧ (v·π_Z)", a3),
    law!("A4", Orbital, "u ≤ u·π_Z", a4),
    law!("A5", Orbital, "u ≤ v ⇒ u·λ ≤ v·λ", a5),
    law!("A6", Orbital, "u ≤ d_xy, u ≠ 0, x ≠ y ⇒ u = (u·π_{dom(u)∖{y}}) ∧ d_xy", a6),
    law!("A7", Orbital, "u·λ·μ = u·(λ∘μ)", a7),
    law!("A8", Orbital, "u·π_dom(u) = u", a8),
    law!("A9", Orbital, "d_xx ≠ 0", nonzero_diagonal),
    law!("A10", Orbital, "d_xy = d_xx·(xx/xy)", a10),
    law!("A11", Orbital, "u ≠ 0 ⇒ dom(u·λ) = λ⁻¹(dom(u))", a11),
    law!("A12", Orbital, "u ≠ 0 ⇒ dom(u) finite", finite_domain),
    law!("A13", Orbital, "dom(u) = {x | u ≤ d_xx}", domain_by_diagonals),
    law!("Prop1", Derived, "T1 ≤ T2 ⇔ X1 ⊇ X2 and {t|X2 | t ∈ T1} ⊆ T2", prop1, concrete),
    law!("Prop2", Derived, "T1 ≤ T2 ⇔ every extension of a row of T1 extends a row of T2", prop2, concrete),
    law!("Prop3.i", Derived, "c_x(c_x(v)) = c_x(v)", prop3_i),
    law!("Prop3.ii", Derived, "u ≤ v ⇒ c_x(u) ≤ c_x(v)", prop3_ii),
    law!("Prop3.iii", Derived, "x ∉ dom(v) ⇒ c_x(u ∧ v) = c_x(u) ∧ v", prop3_iii),
    law!("Prop3.iv", Derived, "x ≠ y, u ≤ d_xy ⇒ d_xy ∧ c_x(u) = u", prop3_iv),
    law!("Prop3.v", Derived, "x ≠ y ⇒ c_x(d_xy) = d_yy", prop3_v),
    law!("Prop3.vi", Derived, "d_xz ∧ d_zy ≤ d_xy", prop3_vi),
    law!("Prop4.i", Derived, "d_xy ∈ V*[{x,y}]", prop4_i),
    law!("Prop4.ii", Derived, "u ∈ V[X], v ∈ V[Y] ⇒ u ∧ v ∈ V[X ∪ Y]", prop4_ii),
    law!("Prop4.iii", Derived, "u ∈ V*[Y] ⇒ C_Z(u) ∈ V*[Y∖Z]", prop4_iii),
    law!("Prop4.iv", Derived, "e_ρ ∈ V*[field(ρ)]", prop4_iv),
    law!("Prop5.i", Derived, "C_X(0) = 0", prop5_i),
    law!("Prop5.ii", Derived, "C_X(C_Y(u)) = C_Y(C_X(u))", prop5_ii),
    law!("Prop5.iii", Derived, "Z ∩ dom(v) = ∅ ⇒ C_Z(u ∧ v) = C_Z(u) ∧ v", prop5_iii),
    law!("Prop6.i", Derived, "e_μ ∧ e_ν ≤ e_ν∘μ", prop6_i),
    law!("Prop6.ii", Derived, "e_μ ∧ e_ν = e_ν∘μ ∧ e_ν", prop6_ii),
    law!("Prop6.iii", Derived, "μ folding ⇒ e_μ ∧ e_ν = e_ν∘μ", prop6_iii),
    law!("Prop7.i", Derived, "λ domain-disjoint, u ∈ V*[Y] ⇒ C_X(u ∧ e_λ) = u", prop7_i),
    law!("Prop7.ii", Derived, "λ domain-disjoint, u ≤ e_λ ⇒ C_X(u) ∧ e_λ = u", prop7_ii),
    law!("PSE1", Derived, "λ domain-disjoint ⇒ u⊙λ = C_Y(u ∧ e_λ)", pse1),
    law!("PSE2", Derived, "u⊙(ν∘μ) = (u⊙ν)⊙μ", pse2),
    law!("Prop8.scheme", Derived, "u⊙λ does not depend on the fresh-variable scheme", scheme_independence),
    law!("Prop8.direct", Derived, "u⊙λ = {t∘λ | t ∈ u}", outer_matches_direct, concrete),
    law!("Prop9.i", Derived, "σ domain-disjoint bijection ⇒ u⊙σ⊙σ⁻¹ = u", prop9_i),
    law!("Prop9.ii", Derived, "u⊙ι_X = C_{Y∖X}(u)", prop9_ii),
    law!("Prop9.iii", Derived, "δ folding ⇒ u⊙δ = u ∧ e_δ", prop9_iii),
    law!("Interdef.select", Derived, "σ_{x=y}(T) = T ⋈ dup_xy(proj_x(T))", interdef_select, concrete),
    law!("Interdef.dup", Derived, "dup_xy(T) = σ_{x=y}(T ⋈ rnm_xy(proj_x(T)))", interdef_dup, concrete),
    law!("Dup.roundtrip", Derived, "del_y(dup_xy(T)) = T", dup_round_trip, concrete),
    law!("Decomposition", Derived, "λ = ι∘ξ∘δ with δ folding, ξ bijection, ι inclusion", decomposition),
];

pub fn find(id: &str) -> Option<&'static Law> {
    LAWS.iter().find(|law| law.id.eq_ignore_ascii_case(id))
}
