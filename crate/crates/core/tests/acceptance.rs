//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qtorsion::complex::torsion_periodic;
use qtorsion::group_rep::{is_narrow, quantum_torsion, QuotientKind};
use qtorsion::pearl::{self, ring, D1Data};
use qtorsion::verify::{complex_suites, VerifyConfig};
use qtorsion::{GradedRingPresentation, RatFunc, Representation, TorsionValue, VarTable};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(s: &str, v: &VarTable) -> RatFunc {
    RatFunc::parse(s, v).unwrap()
}

fn vars(names: &[&str]) -> VarTable {
    VarTable::new(names.iter().copied()).unwrap()
}

fn d1_torsion(d1: Result<D1Data, pearl::PearlError>) -> Result<TorsionValue, String> {
    let d1 = d1.map_err(|e| e.to_string())?;
    pearl::torsion_from_d1(&d1).map_err(|e| e.to_string())
}

fn expect(t: &TorsionValue, want: &RatFunc, what: &str) -> Result<(), String> {
    if t.matches(want) {
        Ok(())
    } else {
        Err(format!("{what}: got {t}, expected {want}"))
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn circle_rep(v: &VarTable) -> Representation {
    Representation::parse(v, &[("A", "z1"), ("B", "z2")]).unwrap()
}

fn c1_circle_value() -> Outcome {
    let v = vars(&["z1", "z2"]);
    let want = q("1/(z1 - z2)", &v);
    let start = Instant::now();
    for n in 1..=6 {
        let c = pearl::circle_pearl(n).map_err(|e| e.to_string())?;
        let t = quantum_torsion(&c, &circle_rep(&v), QuotientKind::Signs).map_err(|e| e.to_string())?;
        expect(&t, &want, &format!("n = {n}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("n = 1..6 all equal 1/(z1 - z2) in {elapsed:.2?}"))
}

fn c2_analogy() -> Outcome {
    let v = vars(&["z"]);
    let rep = Representation::parse(&v, &[("A", "z"), ("B", "z^-1")]).unwrap();
    let c = pearl::circle_pearl(3).map_err(|e| e.to_string())?;
    let t = quantum_torsion(&c, &rep, QuotientKind::Units).map_err(|e| e.to_string())?;
    expect(&t, &q("1/(z^2 - 1)", &v), "substituted value")?;
    if t.matches(&q("1/(z - 1)", &v)) {
        return Err(format!("{t} unexpectedly equals 1/(z - 1)"));
    }
    Ok(format!("{t}, distinct from 1/(z - 1)"))
}

fn c3_pipeline() -> Outcome {
    let v = vars(&["z1", "z2"]);
    let from_d1 = d1_torsion(pearl::circle_d1(&q("z1 - z2", &v)))?;
    for n in 1..=6 {
        let c = pearl::circle_pearl(n).map_err(|e| e.to_string())?;
        let t = quantum_torsion(&c, &circle_rep(&v), QuotientKind::Signs).map_err(|e| e.to_string())?;
        if t != from_d1 {
            return Err(format!("n = {n}: pearl {t} vs d1 {from_d1}"));
        }
    }
    Ok(format!("pearl and d1 torsions agree for n = 1..6: {from_d1}"))
}

fn c4_torus() -> Outcome {
    let mut times = Vec::new();
    for m in 2..=4 {
        let start = Instant::now();
        let t = d1_torsion(pearl::torus_d1(m))?;
        let elapsed = start.elapsed();
        expect(&t, &RatFunc::one(t.value().vars()), &format!("m = {m}"))?;
        if m == 4 {
            within(elapsed, Duration::from_secs(10))?;
        }
        times.push(format!("m={m} {elapsed:.2?}"));
    }
    Ok(format!("torsion 1 for m = 2, 3, 4 ({})", times.join(", ")))
}

fn c5_surfaces() -> Outcome {
    let v = vars(&["c"]);
    for g in [2usize, 3] {
        let t = d1_torsion(pearl::sigma_g_d1(g))?;
        expect(&t, &q(&format!("c^{}", 2 * (g - 1)), &v), &format!("g = {g}"))?;
    }
    Ok("c^2 for g = 2, c^4 for g = 3".into())
}

fn c6_star() -> Outcome {
    let v = vars(&["r"]);
    let r = q("r", &v);
    let spaces: Vec<(&str, GradedRingPresentation)> = vec![
        ("point", ring::point()),
        ("S^2", ring::sphere(2).unwrap()),
        ("T^2", ring::torus(2).unwrap()),
        ("Sigma_2", ring::surface(2).unwrap()),
    ];
    let mut seen = Vec::new();
    for (name, space) in &spaces {
        let chi = space.euler_characteristic();
        for k in 0..=1 {
            let t = d1_torsion(pearl::product_star(space, k, &r))?;
            expect(&t, &r.pow(-chi).unwrap(), &format!("V = {name}, k = {k}"))?;
        }
        seen.push(format!("{name}: r^{}", -chi));
    }
    Ok(seen.join(", "))
}

fn c7_cross_model() -> Outcome {
    let v = vars(&["c"]);
    let c = q("c", &v);
    for g in [2usize, 3] {
        let explicit = d1_torsion(pearl::sigma_g_d1(g))?;
        let star = d1_torsion(pearl::product_star(&ring::surface(g).unwrap(), 0, &c))?;
        if explicit != star {
            return Err(format!("g = {g}: {explicit} vs {star}"));
        }
    }
    Ok("explicit and product models agree for g = 2, 3".into())
}

fn c8_s1xs2() -> Outcome {
    let v = vars(&["r", "beta", "r_bb"]);
    let t1 = d1_torsion(pearl::s1xs2_possibility1(&q("r", &v)))?;
    expect(&t1, &q("r^-2", &v), "possibility 1")?;
    let p = pearl::s1xs2_possibility2(&q("beta", &v), &q("r_bb", &v)).map_err(|e| e.to_string())?;
    let t2 = torsion_periodic(&p).map_err(|e| e.to_string())?;
    expect(&t2, &q("1/r_bb", &v), "possibility 2")?;
    Ok(format!("{t1}; {t2}"))
}

fn c9_suites() -> Outcome {
    let cfg = VerifyConfig::default();
    if cfg.cases < 100 || cfg.max_dim > 12 {
        return Err("configuration below the required scale".into());
    }
    let results = complex_suites(&cfg);
    for r in &results {
        println!("      {r}");
    }
    match results.iter().find(|r| !r.passed()) {
        Some(r) => Err(format!("suite `{}` failed", r.name)),
        None => Ok(format!("{} suites x {} cases, zero failures", results.len(), cfg.cases)),
    }
}

fn c10_negative() -> Outcome {
    let v = vars(&["z"]);
    let rep = Representation::parse(&v, &[("A", "z"), ("B", "z")]).unwrap();
    let c = pearl::circle_pearl(2).map_err(|e| e.to_string())?;
    if is_narrow(&c, &rep).map_err(|e| e.to_string())? {
        return Err("z1 = z2 accepted as narrow".into());
    }
    if quantum_torsion(&c, &rep, QuotientKind::Signs).is_ok() {
        return Err("torsion computed at z1 = z2".into());
    }
    let zero = RatFunc::zero(&v);
    let d1 = pearl::torus_d1_with(&[zero.clone(), zero]).map_err(|e| e.to_string())?;
    if pearl::is_e1_narrow(&d1) {
        return Err("zero d1 accepted as E1-narrow".into());
    }
    match pearl::torsion_from_d1(&d1) {
        Err(pearl::PearlError::NotE1Narrow(_)) => Ok("z1 = z2 is not narrow; zero d1 is not E1-narrow".into()),
        other => Err(format!("zero d1: unexpected {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("circle value", c1_circle_value),
        ("circle substitution", c2_analogy),
        ("pearl vs d1 pipeline", c3_pipeline),
        ("torus", c4_torus),
        ("surfaces", c5_surfaces),
        ("odd-sphere products", c6_star),
        ("cross-model consistency", c7_cross_model),
        ("S^1 x S^2", c8_s1xs2),
        ("property suites", c9_suites),
        ("negative controls", c10_negative),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
