//! One line per acceptance criterion; exits nonzero if any fails.

use std::io::Write;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ctab::lab::gen::{full_table, gen_formula, gen_structure, gen_table, Gen};
use ctab::lab::{self, ModelUnderTest, Run, Suite, Verdict, LAWS};
use ctab::logic::{evaluate, evaluate_oracle, Formula};
use ctab::mapping::{outer_compose, FreshScheme};
use ctab::{Base, Mapping, NamedTuple, Table, TableAlgebra, Variable};

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pool(n: u32) -> Vec<Variable> {
    (1..=n).map(Variable::x).collect()
}

fn standard_models() -> Vec<ModelUnderTest> {
    ["a", "ab", "abc"].iter().map(|g| ModelUnderTest::standard(g)).collect()
}

fn suite_ids(suite: Suite) -> Vec<&'static str> {
    LAWS.iter().filter(|l| l.suite == suite).map(|l| l.id).collect()
}

/// Every law of `ids` holds on every standard model with zero failures and
/// zero unmet side conditions.
fn suite_holds(ids: &[&str], cases: usize, pools: &[u32]) -> Outcome {
    let mut total = 0;
    for model in standard_models() {
        for &p in pools {
            let run = Run::new(cases, SEED).with_pool(p);
            let report = lab::check(&model, Some(ids), &run).map_err(|e| e.to_string())?;
            for r in &report.laws {
                ensure(r.fail == 0 && r.unmet == 0 && r.pass == cases, || {
                    format!("{model} pool {p}: {} pass {} fail {} unmet {}", r.law.id, r.pass, r.fail, r.unmet)
                })?;
                total += r.pass;
            }
        }
    }
    Ok(format!("{} laws, {total} cases, 0 failures", ids.len()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let detail = suite_holds(&suite_ids(Suite::Semilattice), 200, &[4, 5])?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{detail}, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    suite_holds(&suite_ids(Suite::Orbital), 200, &[5])
}

fn criterion_3() -> Outcome {
    suite_holds(&suite_ids(Suite::Derived), 100, &[5])
}

fn rowwise(u: &Table, lambda: &Mapping) -> Table {
    let dom = lambda.dom();
    let rows = u.rows().into_iter().map(|t| {
        lambda.pairs().into_iter().map(|(x, y)| (x, t.get(y).expect("row covers codomain").clone())).collect()
    });
    Table::new(&dom, rows).unwrap()
}

fn criterion_4() -> Outcome {
    let models = standard_models();
    let mut gens: Vec<Gen> = models.iter().enumerate().map(|(k, m)| Gen::new(SEED + k as u64, pool(5), m.base())).collect();
    let mut pairs = 0;
    while pairs < 200 {
        let k = pairs % models.len();
        let (alg, gen) = (TableAlgebra::new(models[k].base()), &mut gens[k]);
        let lambda = gen.any_mapping();
        let u = gen.table_over(lambda.cod());
        if u.is_empty() {
            continue;
        }
        let a = outer_compose(&alg, &u, &lambda, &FreshScheme::default()).map_err(|e| e.to_string())?;
        let b = outer_compose(&alg, &u, &lambda, &FreshScheme::alternate()).map_err(|e| e.to_string())?;
        let direct = rowwise(&u, &lambda);
        ensure(a == b && a == direct, || format!("u={u} λ={lambda:?}: {a} / {b} / {direct}"))?;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs, both schemes equal the row-wise oracle"))
}

fn criterion_5() -> Outcome {
    let run = Run::new(200, SEED);
    let bogus = ModelUnderTest::bogus(Base::from_letters("g")).map_err(|e| e.to_string())?;
    let mut witnessed = 0;
    for case in lab::check_law("PS12", &bogus, &run).map_err(|e| e.to_string())? {
        if case.input("x") != case.input("y") {
            ensure(matches!(case.verdict, Verdict::Fail(_)), || format!("PS12 held on {case}"))?;
            witnessed += 1;
        }
    }
    ensure(witnessed > 0, || "no case with x ≠ y".into())?;
    let mut ids = suite_ids(Suite::Semilattice);
    ids.retain(|id| *id != "PS12");
    let report = lab::check(&bogus, Some(&ids), &run).map_err(|e| e.to_string())?;
    for r in &report.laws {
        ensure(r.fail == 0, || format!("bogus model: {} failed {} times", r.law.id, r.fail))?;
    }
    let empty = lab::check(&ModelUnderTest::DegenerateEmptyBase, Some(&["PS11"]), &run).map_err(|e| e.to_string())?;
    let ps11 = empty.law("PS11").expect("PS11 was run");
    ensure(ps11.fail > 0, || "PS11 held on the empty base".into())?;
    Ok(format!(
        "PS12 failed on all {witnessed} cases with x ≠ y, PS0–PS11 clean; empty base fails PS11 {}/{}",
        ps11.fail, ps11.cases
    ))
}

fn criterion_6() -> Outcome {
    let mut gen = Gen::new(SEED, pool(4), Base::from_letters("a"));
    for i in 0..500 {
        let s = gen_structure(gen.rng(), 3);
        let phi = gen_formula(gen.rng(), &s, 4);
        let alg = TableAlgebra::new(s.base().clone());
        let fast = evaluate(&phi, &s, &alg).map_err(|e| e.to_string())?;
        let slow = evaluate_oracle(&phi, &s).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("pair {i}: {phi} gives {fast}, oracle {slow}"))?;
    }
    for i in 0..200 {
        let s = gen_structure(gen.rng(), 3);
        let alg = TableAlgebra::new(s.base().clone());
        let a = gen_formula(gen.rng(), &s, 3);
        let b = gen_formula(gen.rng(), &s, 3);
        let (x, y) = (gen.var(), gen.var());
        let oracle = |f: &Formula| evaluate_oracle(f, &s).map_err(|e| e.to_string());
        let eval = |f: &Formula| evaluate(f, &s, &alg).map_err(|e| e.to_string());
        let checks = [
            (eval(&Formula::Eq(x, y))?, alg.equality_table(x, y)),
            (eval(&Formula::and(a.clone(), b.clone()))?, oracle(&a)?.join(&oracle(&b)?)),
            (eval(&Formula::exists(x, a.clone()))?, oracle(&a)?.delete(x)),
        ];
        for (n, (got, want)) in checks.iter().enumerate() {
            ensure(got == want, || format!("instance {i}, identity {n}: {got} vs {want}"))?;
        }
    }
    Ok("500 evaluations agree; Eq, And and Exists identities hold on 200 instances".into())
}

fn oracle_join(t1: &Table, t2: &Table, base: &Base) -> Table {
    let (Some(s1), Some(s2)) = (t1.finite_schema(), t2.finite_schema()) else { return Table::Empty };
    let all = s1.union(&s2).copied().collect();
    let keep = |r: &NamedTuple| t1.contains(&r.restrict(&s1).unwrap()) && t2.contains(&r.restrict(&s2).unwrap());
    Table::new(&all, full_table(&all, base).rows().into_iter().filter(keep)).unwrap()
}

fn criterion_7() -> Outcome {
    let vars = pool(5);
    let bases: Vec<Base> = standard_models().iter().map(ModelUnderTest::base).collect();
    let mut gen = Gen::new(SEED, vars.clone(), bases[0].clone());
    for i in 0..200 {
        let base = &bases[i % bases.len()];
        let t1 = gen_table(gen.rng(), &vars, base, 6);
        let t2 = gen_table(gen.rng(), &vars, base, 6);
        let (fast, slow) = (t1.join(&t2), oracle_join(&t1, &t2, base));
        ensure(fast == slow, || format!("pair {i}: {t1} ⋈ {t2} = {fast}, oracle {slow}"))?;
    }
    Ok("200 pairs agree".into())
}

fn criterion_8() -> Outcome {
    let mut file = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
    file.write_all(b"base: a b\nrel R/2: (a,b)\n").map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_ctab"))
        .args(["eval", "--structure"])
        .arg(file.path())
        .args(["--query", "exists x2 . R(x1,x2)", "--format", "tsv"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    ensure(out.stdout == b"x1\na\n", || format!("got {:?}", String::from_utf8_lossy(&out.stdout)))?;
    Ok("stdout is exactly \"x1\\na\\n\"".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("semilattice axioms", criterion_1),
        ("orbital axioms", criterion_2),
        ("derived laws", criterion_3),
        ("outer composition is scheme independent", criterion_4),
        ("counterexample models", criterion_5),
        ("evaluator against brute force", criterion_6),
        ("hash join against enumeration", criterion_7),
        ("command line worked example", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
