//! The eight acceptance criteria, one pass/fail line each.

use std::io::Write;
use std::time::{Duration, Instant};

use tiltwall::catalog::{all_scenarios, load_scenario};
use tiltwall::cli::check::{run_all, CheckOptions, SuiteResult};
use tiltwall::exactnum::{int, rat, QuadPoly, QuadraticIrrational, Rational};
use tiltwall::hntree::{assemble_chd0, classify_breakpoints, trivial_chd, Condition, PiecewiseQuadratic};
use tiltwall::lattice::{ChernClass, SurfaceConfig};
use tiltwall::walls::{enumerate_with, wall_between, EnumerationOptions, NumericalWall, WallCandidate};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(v0: i64, v1: i64, v2: i64) -> ChernClass {
    ChernClass::ints(v0, v1, v2)
}

fn semicircle(center: Rational, radius_sq: Rational) -> NumericalWall {
    NumericalWall::semicircle(center, radius_sq).unwrap()
}

fn walls_at(v: &ChernClass, beta: Rational) -> Result<Vec<WallCandidate>, String> {
    enumerate_with(
        v,
        &beta,
        &rat(1, 100),
        &EnumerationOptions::default(),
        &SurfaceConfig::ppas(),
    )
    .map_err(|e| format!("{v}: {e}"))
}

fn qi(s: &str) -> QuadraticIrrational {
    s.parse().unwrap()
}

fn wall_exactness() -> Outcome {
    let v = c(2, 0, -2);
    let expected = semicircle(rat(-3, 2), rat(1, 4));
    let first = wall_between(&v, &c(4, -4, 2));
    let second = wall_between(&v, &c(2, -2, 1));
    ensure(first.as_ref() == Some(&expected), || {
        format!("first decomposition gives {first:?}")
    })?;
    ensure(second.as_ref() == Some(&expected), || {
        format!("second decomposition gives {second:?}")
    })?;
    Ok("both decompositions give center -3/2, radius_sq 1/4".into())
}

fn enumeration_completeness() -> Outcome {
    let n4 = walls_at(&c(2, 0, -4), int(-2))?;
    let got: Vec<&NumericalWall> = n4.iter().map(|w| &w.wall).collect();
    ensure(got == vec![&semicircle(rat(-5, 2), rat(9, 4))], || {
        format!("(2, 0, -4): {got:?}")
    })?;

    let n5 = walls_at(&c(2, 0, -5), int(-2))?;
    let got: Vec<(NumericalWall, Rational)> = n5.iter().map(|w| (w.wall.clone(), w.cross_a.clone())).collect();
    let expected = vec![
        (semicircle(int(-3), int(4)), rat(3, 2)),
        (semicircle(rat(-5, 2), rat(5, 4)), rat(1, 2)),
        (semicircle(rat(-7, 3), rat(4, 9)), rat(1, 6)),
    ];
    ensure(got == expected, || format!("(2, 0, -5): {got:?}"))?;

    let n3 = walls_at(&c(2, 0, -3), rat(-7, 4))?;
    let target = semicircle(rat(-7, 4), rat(1, 16));
    ensure(n3.iter().any(|w| w.wall == target), || {
        format!("(2, 0, -3) at -7/4: {n3:?}")
    })?;
    Ok(format!("1 + 3 walls exact, (-7/4, 1/16) among {} walls", n3.len()))
}

fn delta_zero_rigidity(results: &[SuiteResult]) -> Outcome {
    let r = suite(results, "walls/delta-zero")?;
    let checked = r.outcome.clone()?;
    ensure(checked >= 100, || format!("only {checked} classes"))?;
    // The catalog's own Δ = 0 classes on a fixed segment.
    let cfg = SurfaceConfig::ppas();
    for v in [c(2, 0, 0), c(2, -2, 1), c(4, -4, 2), c(2, -4, 4), c(4, 4, 2)] {
        let beta = Rational::new(v.v1.clone(), v.v0.clone()) - int(3);
        let found = enumerate_with(
            &v,
            &beta,
            &rat(1, 100),
            &EnumerationOptions {
                a_max: Some(int(20)),
                ..Default::default()
            },
            &cfg,
        )
        .map_err(|e| e.to_string())?;
        ensure(found.is_empty(), || format!("{v}: {} walls", found.len()))?;
    }
    Ok(format!("{checked} classes with Δ = 0, no walls"))
}

fn function_regressions() -> Outcome {
    let mut n = 0;
    for s in all_scenarios() {
        let (Some(t), Some(expected)) = (s.tree(), &s.expected_chd0) else {
            continue;
        };
        let f = assemble_chd0(&t).map_err(|e| format!("{}: {e}", s.id))?;
        ensure(&f == expected, || format!("{}: {f}", s.id))?;
        ensure(f.is_continuous(), || format!("{}: not continuous", s.id))?;
        n += 1;
    }
    ensure(n >= 10, || format!("only {n} scenarios have functions"))?;

    let t = load_scenario("ppas-ideal-4-collinear").unwrap().tree().unwrap();
    let f = assemble_chd0(&t).map_err(|e| e.to_string())?;
    let expected = PiecewiseQuadratic::new(
        vec![int(1).into(), int(2).into(), int(3).into()],
        vec![
            QuadPoly::zero(),
            QuadPoly::from_i64(1, -2, 1),
            QuadPoly::from_i64(5, -6, 2),
            QuadPoly::from_i64(-4, 0, 1),
        ],
    )
    .unwrap();
    ensure(f == expected, || format!("n = 4 collinear: {f}"))?;

    let f = trivial_chd(&c(2, 0, -2)).map_err(|e| e.to_string())?;
    let expected = PiecewiseQuadratic::new(
        vec![qi("sqrt(2)")],
        vec![QuadPoly::zero(), QuadPoly::from_i64(-2, 0, 1)],
    )
    .unwrap();
    ensure(f == expected && f.is_continuous(), || format!("ideal of 2 points: {f}"))?;
    Ok(format!(
        "{n} scenario functions exact and continuous, breakpoint sqrt(2) exact"
    ))
}

fn critical_point_law() -> Outcome {
    for id in ["ppas-ideal-2", "ppas-ideal-4-collinear", "abelian12-ideal-point"] {
        let t = load_scenario(id).unwrap().tree().unwrap();
        let reports = classify_breakpoints(&t).map_err(|e| e.to_string())?;
        ensure(
            reports.iter().all(|r| r.derivative_jump.is_zero() && r.differentiable),
            || {
                format!(
                    "{id}: jumps {:?}",
                    reports
                        .iter()
                        .map(|r| r.derivative_jump.to_string())
                        .collect::<Vec<_>>()
                )
            },
        )?;
    }
    let two: QuadraticIrrational = int(2).into();
    for (id, overlap) in [("ppas-ideal-3-collinear", false), ("ppas-ideal-5-W2", true)] {
        let t = load_scenario(id).unwrap().tree().unwrap();
        let reports = classify_breakpoints(&t).map_err(|e| e.to_string())?;
        let at2 = reports
            .iter()
            .find(|r| r.x == two)
            .ok_or_else(|| format!("{id}: no breakpoint at 2"))?;
        ensure(at2.derivative_jump == two, || {
            format!("{id}: jump {} at 2", at2.derivative_jump)
        })?;
        ensure(at2.overlap == overlap, || format!("{id}: overlap {}", at2.overlap))?;
        if overlap {
            let conditions: Vec<Condition> = at2.condition_tags.iter().map(|t| t.condition).collect();
            ensure(
                conditions.contains(&Condition::A) && conditions.contains(&Condition::C),
                || format!("{id}: conditions {conditions:?}"),
            )?;
        }
    }
    // Symbolic sum of sqrt(Δ) against left and right derivatives of the pieces.
    let mut checked = 0;
    for s in all_scenarios() {
        let Some(t) = s.tree() else { continue };
        let reports = classify_breakpoints(&t).map_err(|e| e.to_string())?;
        let jumps = assemble_chd0(&t).map_err(|e| e.to_string())?.derivative_jumps();
        ensure(reports.len() == jumps.len(), || format!("{}: breakpoint count", s.id))?;
        for (r, j) in reports.iter().zip(&jumps) {
            let mut sum = QuadraticIrrational::zero();
            for leaf in &r.contributing_leaves {
                sum = sum
                    .checked_add(&QuadraticIrrational::sqrt_of(&leaf.discriminant).unwrap())
                    .unwrap();
            }
            ensure(&sum == j && &r.derivative_jump == j, || {
                format!("{} at {}: {sum} vs {j}", s.id, r.x)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "differentiable where expected, jump 2 at x = 2, {checked} breakpoints agree both ways"
    ))
}

fn suite<'a>(results: &'a [SuiteResult], name: &str) -> Result<&'a SuiteResult, String> {
    results
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| format!("suite {name} missing"))
}

fn identity_suites(results: &[SuiteResult]) -> Outcome {
    let names = [
        "prop/alternating-identity",
        "prop/serre-involution",
        "prop/twist-invariance",
        "prop/top-points",
        "prop/nesting",
        "prop/hn-monotone",
    ];
    let mut summary = Vec::new();
    for name in names {
        let r = suite(results, name)?;
        let n = r.outcome.clone().map_err(|e| format!("{name}: {e}"))?;
        summary.push(format!("{} {n}", name.trim_start_matches("prop/")));
    }
    Ok(summary.join(", "))
}

fn oracle_cross_check(results: &[SuiteResult], total: Duration) -> Outcome {
    for name in ["walls/oracle", "catalog/walls-oracle"] {
        let r = suite(results, name)?;
        r.outcome.clone().map_err(|e| format!("{name}: {e}"))?;
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    ensure(failed.is_empty(), || format!("check suite failures: {failed:?}"))?;
    ensure(total < Duration::from_secs(30), || {
        format!("check suite took {total:?}")
    })?;
    Ok(format!(
        "every wall confirmed at step 1/64, perturbations rejected, suite in {:.1}s",
        total.as_secs_f64()
    ))
}

/// Every PPAS class with `v0` in {2, 4, 6}, `0 <= v1 < v0` and `0 <= Δ <= 100`.
fn probe_classes(cfg: &SurfaceConfig) -> Vec<ChernClass> {
    let mut out = Vec::new();
    for v0 in [2i64, 4, 6] {
        for v1 in (0..v0).step_by(2) {
            for h in -400i64..=400 {
                let v = ChernClass::new(v0, v1, rat(h, 2));
                let d = v.discriminant();
                if d >= int(0) && d <= int(100) && cfg.discriminant_admissible(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn probe(
    classes: &[ChernClass],
    cfg: &SurfaceConfig,
    threads: usize,
) -> Result<(Vec<Vec<WallCandidate>>, Duration), String> {
    let opts = EnumerationOptions {
        threads,
        ..Default::default()
    };
    let start = Instant::now();
    let mut out = Vec::new();
    for v in classes {
        let beta = Rational::new(v.v1.clone(), v.v0.clone()) - int(1);
        out.push(enumerate_with(v, &beta, &rat(1, 100), &opts, cfg).map_err(|e| format!("{v}: {e}"))?);
    }
    Ok((out, start.elapsed()))
}

fn scale_probe() -> Outcome {
    let cfg = SurfaceConfig::ppas();
    let classes = probe_classes(&cfg);
    let n = std::thread::available_parallelism().map_or(1, |n| n.get()).max(4);
    let (single, t1) = probe(&classes, &cfg, 1)?;
    let (multi, tn) = probe(&classes, &cfg, n)?;
    let walls: usize = single.iter().map(Vec::len).sum();
    ensure(single == multi, || "outputs differ between thread counts".into())?;
    ensure(t1 < Duration::from_secs(10) && tn < Duration::from_secs(10), || {
        format!("took {t1:?} and {tn:?}")
    })?;
    Ok(format!(
        "{} classes, {walls} walls, {:.2}s on 1 thread, {:.2}s on {n}, identical",
        classes.len(),
        t1.as_secs_f64(),
        tn.as_secs_f64()
    ))
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let results = run_all(&CheckOptions::default());
    let suite_time = start.elapsed();
    let outcomes: Vec<(&str, Outcome)> = vec![
        ("1 wall exactness", wall_exactness()),
        ("2 enumeration completeness", enumeration_completeness()),
        ("3 Δ = 0 rigidity", delta_zero_rigidity(&results)),
        ("4 function regressions", function_regressions()),
        ("5 critical-point law", critical_point_law()),
        ("6 identity suites", identity_suites(&results)),
        ("7 oracle cross-check", oracle_cross_check(&results, suite_time)),
        ("8 scale probe", scale_probe()),
    ];
    // Written past the test harness capture so the lines always show.
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (name, outcome) in &outcomes {
        let line = match outcome {
            Ok(detail) => format!("criterion {name}: PASS ({detail})"),
            Err(e) => {
                failed.push(*name);
                format!("criterion {name}: FAIL ({e})")
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
