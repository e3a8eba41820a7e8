//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the test harness, so the lines are always printed.

use std::time::{Duration, Instant};

use metabelian::algebra::AlgebraContext;
use metabelian::codim::{
    brute_force_codimension, codim_table, codimension, codimension_intersection, hwv_check,
    multiplicity_report, render_csv, ComputeOptions, Multiplicity,
};
use metabelian::variety::{classify_growth, Growth};
use metabelian::words::{
    balance_constant, complexity, disjointness_degree, prefix, slope_deviation_check, slope_limit,
    Alpha, FiniteWord, WordSpec,
};
use num_rational::Ratio;

const GOLDEN: &str = "mech:(3-1*sqrt(5))/2";

fn spec(s: &str) -> WordSpec {
    s.parse().unwrap()
}

fn quotient(s: &str, cap: usize) -> AlgebraContext {
    AlgebraContext::quotient(spec(s), cap).unwrap()
}

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

fn sturmian_complexity() -> Check {
    let start = Instant::now();
    let s = spec(GOLDEN);
    for n in 1..=40 {
        let c = complexity(&s, n).map_err(|e| e.to_string())?;
        ensure(c == n + 1, || format!("complexity({n}) = {c}"))?;
    }
    within(start, Duration::from_secs(5))
}

fn periodic_complexity_and_slope() -> Check {
    let s = spec("mech:1/2");
    ensure(s.periodic_pattern() == Some("01".parse().unwrap()), || {
        "pattern is not 01".into()
    })?;
    for n in 1..=40 {
        let c = complexity(&s, n).map_err(|e| e.to_string())?;
        ensure(c == 2, || format!("complexity({n}) = {c}"))?;
    }
    for t in [2, 10, 40, 400] {
        let h = prefix(&s, t).height();
        ensure(Ratio::new(h as i64, t as i64) == Ratio::new(1, 2), || {
            format!("h(w(1,{t})) = {h}")
        })?;
    }
    ensure(slope_limit(&s) == Alpha::rational(1, 2).unwrap(), || {
        "slope limit is not 1/2".into()
    })
}

fn balance() -> Check {
    let s = spec(GOLDEN);
    let c = balance_constant(&s, 30).map_err(|e| e.to_string())?;
    ensure(c <= 1, || format!("balance constant {c}"))?;
    ensure(
        slope_deviation_check(&s, 30, 1).map_err(|e| e.to_string())?,
        || "slope deviation exceeds 1/|u|".into(),
    )
}

fn free_lower_bound() -> Check {
    let start = Instant::now();
    let free = AlgebraContext::free(16).unwrap();
    for n in 3..=10 {
        let c = codimension(&free, n).map_err(|e| e.to_string())?.c_n;
        ensure(c >= 1 << (n - 2), || format!("c_{n} = {c} < 2^{}", n - 2))?;
    }
    within(start, Duration::from_secs(60))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let contexts = [
        AlgebraContext::free(16).unwrap(),
        quotient("periodic:01", 16),
        quotient("periodic:001", 16),
        quotient(GOLDEN, 16),
    ];
    for ctx in &contexts {
        for n in 1..=6 {
            let fast = codimension(ctx, n).map_err(|e| e.to_string())?.c_n;
            for tail in 0..=3 {
                let slow = brute_force_codimension(ctx, n, tail)
                    .map_err(|e| e.to_string())?
                    .c_n;
                ensure(slow == fast, || {
                    format!("{ctx}, n = {n}, tail {tail}: {slow} vs {fast}")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(120))
}

fn growth_labels() -> Check {
    for s in ["mech:1/2", "mech:1/3"] {
        let r = classify_growth(&quotient(s, 32), 12).map_err(|e| e.to_string())?;
        ensure(r.classification == Growth::AtMostLinear, || {
            format!("{s}: {}", r.classification)
        })?;
        for (n, &c) in (3..).zip(&r.sequence) {
            ensure(Ratio::new(c as i64, n) <= r.c2, || {
                format!("{s}: c_{n} > C2 * n")
            })?;
        }
    }
    let r = classify_growth(&quotient(GOLDEN, 32), 12).map_err(|e| e.to_string())?;
    ensure(
        r.classification == Growth::SuperlinearAtMostQuadratic,
        || format!("golden slope: {}", r.classification),
    )?;
    let per_n: Vec<Ratio<i64>> = (3..)
        .zip(&r.sequence)
        .filter(|p| p.0 >= 6)
        .map(|(n, &c)| Ratio::new(c as i64, n))
        .collect();
    ensure(per_n.windows(2).all(|w| w[0] < w[1]), || {
        "c_n / n not increasing on 6..12".into()
    })?;
    for (n, &c) in (3..).zip(&r.sequence) {
        let q = Ratio::new(c as i64, n * n);
        ensure(r.c1 <= q && q <= r.c2, || {
            format!("c_{n} / n^2 outside [C1, C2]")
        })?;
    }
    Ok(())
}

fn intersection_nilpotency() -> Check {
    let start = Instant::now();
    let (a, b) = (spec("mech:1/3"), spec("mech:1/2"));
    let m = disjointness_degree(&a, &b, 10).map_err(|e| e.to_string())?;
    ensure(m == Some(4), || format!("disjointness degree {m:?}"))?;
    let ctxs = [
        AlgebraContext::quotient(a, 8).unwrap(),
        AlgebraContext::quotient(b, 8).unwrap(),
    ];
    let c = codimension_intersection(&ctxs, 6)
        .map_err(|e| e.to_string())?
        .c_n;
    ensure(c == 0, || format!("c_6 = {c}"))?;
    within(start, Duration::from_secs(10))
}

fn hwv_structure() -> Check {
    let free = AlgebraContext::free(32).unwrap();
    let quotients = ["periodic:01", "periodic:001", "mech:1/3", GOLDEN].map(|s| quotient(s, 32));
    let err = |e: metabelian::Error| e.to_string();
    for n in 4..=8 {
        for spine in FiniteWord::all_of_length(n - 2) {
            let g1 = hwv_check(&free, n, &spine, 1, 2).map_err(err)?;
            for i in 2..=n - 2 {
                let gi = hwv_check(&free, n, &spine, i, 2).map_err(err)?;
                ensure(gi.values() == g1.values(), || {
                    format!("n = {n}, spine {spine}: g{i} != g1")
                })?;
            }
            let m = multiplicity_report(&free, n, &spine).map_err(err)?;
            ensure(
                m == Multiplicity {
                    m_row: 1,
                    m_hook: 2,
                },
                || format!("n = {n}, spine {spine}: {m:?}"),
            )?;
            for q in &quotients {
                if q.admits(&spine).map_err(err)? {
                    let m = multiplicity_report(q, n, &spine).map_err(err)?;
                    ensure(m.m_hook >= 1, || {
                        format!("{q}, n = {n}, spine {spine}: m_hook = 0")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn determinism() -> Check {
    let cases: Vec<Vec<AlgebraContext>> = vec![
        vec![AlgebraContext::free(16).unwrap()],
        vec![quotient(GOLDEN, 16)],
        vec![quotient("mech:1/3", 16), quotient("mech:2/5", 16)],
    ];
    for ctxs in &cases {
        let table = |threads| {
            codim_table(ctxs, 9, ComputeOptions { threads })
                .map(|t| render_csv(&t))
                .map_err(|e| e.to_string())
        };
        let one = table(1)?;
        for threads in [2, 8] {
            ensure(table(threads)? == one, || {
                format!("{} workers differ", threads)
            })?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Sturmian complexity n+1 for n <= 40", sturmian_complexity),
        (
            "periodic complexity 2 and slope 1/2",
            periodic_complexity_and_slope,
        ),
        ("balance constant 1 and slope deviation", balance),
        ("free codimension at least 2^(n-2)", free_lower_bound),
        ("reduced matrix equals brute force", oracle_equivalence),
        ("growth labels at n_max = 12", growth_labels),
        (
            "1/3 and 1/2 intersection nilpotent at 6",
            intersection_nilpotency,
        ),
        ("highest weight vectors and multiplicities", hwv_structure),
        ("codim-table independent of worker count", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS {} {name} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                println!("FAIL {} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
