//! Randomized law checking.
//!
//! A [`ModelUnderTest`] supplies the operations; every registered law in
//! [`laws::LAWS`] is run on seeded random cases and summarized in a
//! [`Report`]. Each model states which laws it is expected to satisfy or
//! violate, so the counterexample models double as checks of the harness.

pub mod gen;
pub mod laws;

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{ProjectionalSemilattice, TableAlgebra};
use crate::error::{Error, Result};
use crate::table::{Base, Schema, Table};
use crate::var::{first_n, Variable};
use gen::Gen;
pub use laws::{Law, Suite, Verdict, LAWS, MAX_ATTEMPTS};

/// Default size of the variable pool `x1..xn` the generators draw from.
pub const POOL_SIZE: u32 = 5;

/// Parameters of a law run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub cases: usize,
    pub seed: u64,
    /// Generated tables and maps use the variables `x1..x{pool}`.
    pub pool: u32,
}

impl Run {
    pub fn new(cases: usize, seed: u64) -> Self {
        Run { cases, seed, pool: POOL_SIZE }
    }

    pub fn with_pool(self, pool: u32) -> Self {
        Run { pool, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(2..=16).contains(&self.pool) {
            return Err(Error::Model(format!("variable pool size must be between 2 and 16, got {}", self.pool)));
        }
        Ok(())
    }
}

/// The algebra a law run is checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelUnderTest {
    /// `Tab(G)`.
    Standard(Base),
    /// `Tab({g})` with `d_xy := E_xx`; satisfies PS0–PS11 but not PS12.
    BogusDiagonal(Base),
    /// `Tab(∅)`, which only contains the empty table and `{<>}`.
    DegenerateEmptyBase,
}

impl ModelUnderTest {
    pub fn standard(letters: &str) -> Self {
        ModelUnderTest::Standard(Base::from_letters(letters))
    }

    pub fn bogus(base: Base) -> Result<Self> {
        if base.len() != 1 {
            return Err(Error::Model(format!("the bogus-diagonal model needs a singleton base, got {base}")));
        }
        Ok(ModelUnderTest::BogusDiagonal(base))
    }

    pub fn base(&self) -> Base {
        match self {
            ModelUnderTest::Standard(b) | ModelUnderTest::BogusDiagonal(b) => b.clone(),
            ModelUnderTest::DegenerateEmptyBase => Base::empty(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelUnderTest::Standard(_) => "standard",
            ModelUnderTest::BogusDiagonal(_) => "bogus",
            ModelUnderTest::DegenerateEmptyBase => "empty-base",
        }
    }

    /// What a run of `law` on this model should show.
    pub fn expectation(&self, law: &Law) -> Expectation {
        let ps = |n: u32| law.id == format!("PS{n}");
        match self {
            ModelUnderTest::Standard(b) if b.is_empty() => Expectation::Informational,
            ModelUnderTest::Standard(_) => Expectation::Holds,
            ModelUnderTest::BogusDiagonal(_) if ps(12) => Expectation::Violated,
            ModelUnderTest::BogusDiagonal(_) if law.suite == Suite::Semilattice => Expectation::Holds,
            ModelUnderTest::DegenerateEmptyBase if ps(11) => Expectation::Violated,
            ModelUnderTest::DegenerateEmptyBase if law.suite == Suite::Semilattice => Expectation::Holds,
            _ => Expectation::Informational,
        }
    }

    fn algebra(&self) -> Result<Box<dyn ProjectionalSemilattice>> {
        Ok(match self {
            ModelUnderTest::Standard(b) => Box::new(TableAlgebra::new(b.clone())),
            ModelUnderTest::BogusDiagonal(b) => Box::new(BogusDiagonal::new(b.clone())?),
            ModelUnderTest::DegenerateEmptyBase => Box::new(TableAlgebra::new(Base::empty())),
        })
    }
}

impl fmt::Display for ModelUnderTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelUnderTest::DegenerateEmptyBase => f.write_str("empty-base G={}"),
            other => write!(f, "{} G={}", other.name(), other.base()),
        }
    }
}

/// `Tab({g})` whose diagonals are replaced by `d_xy := E_xx`.
#[derive(Debug, Clone)]
pub struct BogusDiagonal {
    inner: TableAlgebra,
}

impl BogusDiagonal {
    pub fn new(base: Base) -> Result<Self> {
        if base.len() != 1 {
            return Err(Error::Model(format!("the bogus-diagonal model needs a singleton base, got {base}")));
        }
        Ok(BogusDiagonal { inner: TableAlgebra::new(base) })
    }
}

impl ProjectionalSemilattice for BogusDiagonal {
    fn zero(&self) -> Table {
        self.inner.zero()
    }

    fn one(&self) -> Table {
        self.inner.one()
    }

    fn meet(&self, u: &Table, v: &Table) -> Table {
        self.inner.meet(u, v)
    }

    fn cyl(&self, x: Variable, u: &Table) -> Table {
        self.inner.cyl(x, u)
    }

    fn diag(&self, x: Variable, _y: Variable) -> Table {
        self.inner.diag(x, x)
    }

    fn dom(&self, u: &Table) -> Schema {
        self.inner.dom(u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Every case must pass.
    Holds,
    /// At least one case must fail.
    Violated,
    /// Reported without a verdict on the model.
    Informational,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::Holds => "holds",
            Expectation::Violated => "violated",
            Expectation::Informational => "info",
        })
    }
}

/// One generated instance of a law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCase {
    pub law: &'static str,
    pub seed: u64,
    pub inputs: Vec<(String, String)>,
    pub verdict: Verdict,
}

impl LawCase {
    pub fn input(&self, name: &str) -> Option<&str> {
        self.inputs.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for LawCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<String> = self.inputs.iter().map(|(n, v)| format!("{n}={v}")).collect();
        write!(f, "{} seed={} {}", self.law, self.seed, inputs.join(" "))?;
        match &self.verdict {
            Verdict::Pass => f.write_str(" pass"),
            Verdict::Fail(w) => write!(f, " FAIL {w}"),
            Verdict::SideConditionUnmet => f.write_str(" side-condition-unmet"),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of case `index` of `law` in a run seeded with `seed`.
pub fn case_seed(seed: u64, law: &str, index: usize) -> u64 {
    let tag = law.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    splitmix64(splitmix64(seed ^ tag).wrapping_add(index as u64))
}

fn lookup(id: &str) -> Result<&'static Law> {
    laws::find(id).ok_or_else(|| Error::UnknownLaw(id.to_owned()))
}

fn run_case(law: &'static Law, alg: &dyn ProjectionalSemilattice, tables: &TableAlgebra, seed: u64, pool: u32) -> LawCase {
    let gen = Gen::new(seed, first_n(pool), tables.base().clone());
    let mut case = laws::Case::new(alg, tables, gen);
    let verdict = law.run(&mut case);
    LawCase { law: law.id, seed, inputs: case.bindings, verdict }
}

/// Runs `cases` random instances of the law `id`.
pub fn check_law(id: &str, model: &ModelUnderTest, run: &Run) -> Result<Vec<LawCase>> {
    let law = lookup(id)?;
    run.validate()?;
    let alg = model.algebra()?;
    let tables = TableAlgebra::new(model.base());
    Ok((0..run.cases).map(|i| run_case(law, alg.as_ref(), &tables, case_seed(run.seed, law.id, i), run.pool)).collect())
}

/// Reruns a single case from the seed printed in a report.
pub fn rerun(id: &str, model: &ModelUnderTest, case_seed: u64, pool: u32) -> Result<LawCase> {
    let law = lookup(id)?;
    Run::new(1, case_seed).with_pool(pool).validate()?;
    let alg = model.algebra()?;
    Ok(run_case(law, alg.as_ref(), &TableAlgebra::new(model.base()), case_seed, pool))
}

/// Summary of one law over a run.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: &'static Law,
    pub expectation: Expectation,
    pub cases: usize,
    pub pass: usize,
    pub fail: usize,
    pub unmet: usize,
    pub first_failure: Option<LawCase>,
}

impl LawReport {
    fn new(law: &'static Law, expectation: Expectation, cases: &[LawCase]) -> Self {
        let count = |pred: fn(&Verdict) -> bool| cases.iter().filter(|c| pred(&c.verdict)).count();
        LawReport {
            law,
            expectation,
            cases: cases.len(),
            pass: count(|v| *v == Verdict::Pass),
            fail: count(|v| matches!(v, Verdict::Fail(_))),
            unmet: count(|v| *v == Verdict::SideConditionUnmet),
            first_failure: cases.iter().find(|c| matches!(c.verdict, Verdict::Fail(_))).cloned(),
        }
    }

    /// Whether the outcome agrees with the model's expectation.
    pub fn as_expected(&self) -> bool {
        match self.expectation {
            Expectation::Holds => self.pass == self.cases,
            Expectation::Violated => self.fail > 0,
            Expectation::Informational => true,
        }
    }

    /// One tab-separated line: id, cases, pass, fail, unmet, expectation,
    /// outcome and the first failing case if any.
    pub fn machine_line(&self) -> String {
        let outcome = if self.as_expected() { "ok" } else { "UNEXPECTED" };
        let witness = self.first_failure.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.law.id, self.cases, self.pass, self.fail, self.unmet, self.expectation, outcome, witness
        )
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub model: ModelUnderTest,
    pub run: Run,
    pub laws: Vec<LawReport>,
}

impl Report {
    pub fn law(&self, id: &str) -> Option<&LawReport> {
        self.laws.iter().find(|r| r.law.id == id)
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &LawReport> {
        self.laws.iter().filter(|r| !r.as_expected())
    }

    pub fn is_ok(&self) -> bool {
        self.unexpected().next().is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model {} seed {} pool x1..x{}", self.model, self.run.seed, self.run.pool)?;
        let width = self.laws.iter().map(|r| r.law.id.len()).max().unwrap_or(0);
        for r in &self.laws {
            let mark = match (r.as_expected(), r.expectation) {
                (false, _) => "UNEXPECTED",
                (true, Expectation::Violated) => "violated as expected",
                (true, Expectation::Informational) if r.fail > 0 => "fails (not claimed)",
                (true, _) => "ok",
            };
            writeln!(
                f,
                "{:<width$}  {:>4} pass {:>4} fail {:>4} unmet  {mark:<22} {}",
                r.law.id, r.pass, r.fail, r.unmet, r.law.statement
            )?;
            if let Some(case) = &r.first_failure {
                if !r.as_expected() || r.expectation == Expectation::Violated {
                    writeln!(f, "{:<width$}  witness: {case}", "")?;
                }
            }
        }
        let bad = self.unexpected().count();
        write!(f, "{} laws, {} unexpected", self.laws.len(), bad)
    }
}

/// Runs `laws` (all registered laws if `None`) in parallel.
pub fn check(model: &ModelUnderTest, ids: Option<&[&str]>, run: &Run) -> Result<Report> {
    let selected: Vec<&'static Law> = match ids {
        None => LAWS.iter().collect(),
        Some(ids) => ids.iter().map(|id| lookup(id)).collect::<Result<_>>()?,
    };
    run.validate()?;
    model.algebra()?;
    let laws = selected
        .into_par_iter()
        .map(|law| {
            let cases = check_law(law.id, model, run)?;
            Ok(LawReport::new(law, model.expectation(law), &cases))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { model: model.clone(), run: *run, laws })
}

/// Runs every registered law on the default pool.
pub fn check_all(model: &ModelUnderTest, cases: usize, seed: u64) -> Result<Report> {
    check(model, None, &Run::new(cases, seed))
}
