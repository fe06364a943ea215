//! Catalog regressions and seeded property suites behind `tiltwall check`.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gen;
use crate::catalog::{all_scenarios, Scenario};
use crate::exactnum::{int, rat, QuadPoly, QuadraticIrrational, Rational};
use crate::hntree::{
    assemble_chd0, assemble_chd1, chd0_from_factors, classify_breakpoints, hn_factors_at, hn_factors_limit,
    serre_dual_function, trivial_chd, validate_tree_in, HNTree, PiecewiseQuadratic, TreeError,
};
use crate::lattice::{chd_polynomial, ChernClass, SurfaceConfig};
use crate::walls::{
    enumerate_candidates, enumerate_with, nesting, slope_crossing_oracle, top_point_on_hyperbola, wall_a_at,
    wall_between, EnumerationOptions, Nesting, NumericalWall, WallCandidate,
};

pub const DEFAULT_SEED: u64 = 20_240_611;
pub const DEFAULT_CASES: usize = 1000;

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub seed: u64,
    /// Random cases per property suite.
    pub cases: usize,
    pub threads: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            cases: DEFAULT_CASES,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    /// Number of checked cases, or the first failure.
    pub outcome: Result<usize, String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

type Suite = fn(&mut ChaCha8Rng, &CheckOptions) -> Result<usize, String>;

pub const SUITES: &[(&str, Suite)] = &[
    ("catalog/validate", catalog_validate),
    ("catalog/chd0", catalog_chd0),
    ("catalog/breakpoints", catalog_breakpoints),
    ("catalog/walls-enumerated", catalog_walls_enumerated),
    ("catalog/walls-oracle", catalog_walls_oracle),
    ("walls/exact", walls_exact),
    ("walls/oracle", walls_oracle),
    ("walls/delta-zero", walls_delta_zero),
    ("prop/alternating-identity", prop_alternating_identity),
    ("prop/serre-involution", prop_serre_involution),
    ("prop/twist-invariance", prop_twist_invariance),
    ("prop/top-points", prop_top_points),
    ("prop/nesting", prop_nesting),
    ("prop/hn-monotone", prop_hn_monotone),
    ("prop/json-round-trip", prop_json_round_trip),
];

/// Runs one suite by name with its own seeded generator.
pub fn run_suite(name: &str, opts: &CheckOptions) -> Option<SuiteResult> {
    let (i, (name, suite)) = SUITES.iter().enumerate().find(|(_, (n, _))| *n == name)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
    let start = Instant::now();
    let outcome = suite(&mut rng, opts);
    Some(SuiteResult {
        name,
        outcome,
        elapsed: start.elapsed(),
    })
}

pub fn run_all(opts: &CheckOptions) -> Vec<SuiteResult> {
    SUITES.iter().filter_map(|(name, _)| run_suite(name, opts)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog_validate(_: &mut ChaCha8Rng, _: &CheckOptions) -> Result<usize, String> {
    let mut n = 0;
    for s in all_scenarios() {
        if let Some(t) = s.tree() {
            let report = validate_tree_in(&t, &s.config);
            ensure(report.is_pass(), || format!("{}: {report}", s.id))?;
            n += 1;
        }
    }
    Ok(n)
}

fn catalog_chd0(_: &mut ChaCha8Rng, _: &CheckOptions) -> Result<usize, String> {
    let mut n = 0;
    for s in all_scenarios() {
        let (Some(t), Some(expected)) = (s.tree(), &s.expected_chd0) else {
            continue;
        };
        let f = assemble_chd0(&t).map_err(|e| format!("{}: {e}", s.id))?;
        ensure(&f == expected, || format!("{}: got {f}, expected {expected}", s.id))?;
        ensure(f.is_continuous(), || {
            format!("{}: discontinuous at {:?}", s.id, f.continuity_defects())
        })?;
        if t.is_trivial() {
            let g = trivial_chd(&s.class).map_err(|e| e.to_string())?;
            ensure(g == f, || format!("{}: trivial function {g} differs", s.id))?;
        }
        n += 1;
    }
    // The ideal of two points has its only breakpoint at sqrt(2).
    let f = trivial_chd(&ChernClass::ints(2, 0, -2)).map_err(|e| e.to_string())?;
    let root2: QuadraticIrrational = "sqrt(2)".parse().map_err(|e| format!("{e:?}"))?;
    ensure(f.breakpoints == vec![root2], || format!("trivial (2, 0, -2): {f}"))?;
    ensure(f.is_continuous(), || "trivial (2, 0, -2) is discontinuous".into())?;
    Ok(n + 1)
}

fn catalog_breakpoints(_: &mut ChaCha8Rng, _: &CheckOptions) -> Result<usize, String> {
    let mut n = 0;
    for s in all_scenarios() {
        let Some(t) = s.tree() else { continue };
        if s.expected_breakpoints.is_empty() {
            continue;
        }
        let reports = classify_breakpoints(&t).map_err(|e| format!("{}: {e}", s.id))?;
        let f = assemble_chd0(&t).map_err(|e| format!("{}: {e}", s.id))?;
        let jumps = f.derivative_jumps();
        ensure(reports.len() == s.expected_breakpoints.len(), || {
            format!("{}: {} breakpoints reported", s.id, reports.len())
        })?;
        for ((r, e), j) in reports.iter().zip(&s.expected_breakpoints).zip(&jumps) {
            ensure(
                r.x == e.x && r.derivative_jump == e.jump && r.overlap == e.overlap,
                || {
                    format!(
                        "{}: at {} got jump {} overlap {}",
                        s.id, r.x, r.derivative_jump, r.overlap
                    )
                },
            )?;
            ensure(&r.derivative_jump == j, || {
                format!("{}: at {} the pieces jump by {j}, not {}", s.id, r.x, r.derivative_jump)
            })?;
        }
        n += 1;
    }
    Ok(n)
}

fn catalog_walls_enumerated(_: &mut ChaCha8Rng, _: &CheckOptions) -> Result<usize, String> {
    let mut n = 0;
    for s in all_scenarios() {
        for (class, wall) in s.walls() {
            let Some((center, _)) = wall.circle() else { continue };
            if !class.im_at(center).is_positive() || class.discriminant() <= int(0) {
                continue;
            }
            let top = wall.top_a().expect("semicircle");
            let found = enumerate_candidates(&class, center, &(&top / int(2)), &top, &s.config)
                .map_err(|e| format!("{}: {e}", s.id))?;
            ensure(found.iter().any(|c| c.wall == wall), || {
                format!("{}: wall {wall} of {class} not found", s.id)
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn witnessed_walls(s: &Scenario) -> Vec<(ChernClass, ChernClass, NumericalWall)> {
    match s.tree() {
        Some(t) => t
            .internal_nodes()
            .into_iter()
            .filter_map(|(_, node)| Some((node.class.clone(), node.children[0].class.clone(), node.wall.clone()?)))
            .collect(),
        None => match &s.shape {
            crate::catalog::Shape::WallsOnly { walls } => walls
                .iter()
                .map(|(w, sub)| (s.class.clone(), sub.clone(), w.clone()))
                .collect(),
            _ => Vec::new(),
        },
    }
}

fn perturbations(wall: &NumericalWall) -> Vec<NumericalWall> {
    let d = rat(1, 32);
    match wall {
        NumericalWall::Semicircle { center, radius_sq } => {
            let mut out = vec![
                NumericalWall::Semicircle {
                    center: center + &d,
                    radius_sq: radius_sq.clone(),
                },
                NumericalWall::Semicircle {
                    center: center.clone(),
                    radius_sq: radius_sq + &d,
                },
            ];
            if radius_sq > &d {
                out.push(NumericalWall::Semicircle {
                    center: center.clone(),
                    radius_sq: radius_sq - &d,
                });
            }
            out
        }
        NumericalWall::Vertical { beta } => vec![NumericalWall::Vertical { beta: beta + &d }],
    }
}

/// The oracle accepts `wall` for `(v, w)` and rejects every perturbation of it.
pub fn oracle_confirms(v: &ChernClass, w: &ChernClass, wall: &NumericalWall) -> Result<(), String> {
    let step = rat(1, 64);
    ensure(slope_crossing_oracle(v, w, wall, &step), || {
        format!("oracle rejects {wall} for {v} and {w}")
    })?;
    for p in perturbations(wall) {
        ensure(!slope_crossing_oracle(v, w, &p, &step), || {
            format!("oracle accepts perturbed {p} for {v}")
        })?;
    }
    Ok(())
}

fn catalog_walls_oracle(_: &mut ChaCha8Rng, _: &CheckOptions) -> Result<usize, String> {
    let mut n = 0;
    for s in all_scenarios() {
        for (v, w, wall) in witnessed_walls(&s) {
            oracle_confirms(&v, &w, &wall).map_err(|e| format!("{}: {e}", s.id))?;
            n += 1;
        }
    }
    Ok(n)
}

/// The wall lists expected for the ideal sheaves of 3, 4 and 5 points on a PPAS.
/// `(center, radius_sq, cross_a)` of one wall.
pub type WallRow = (Rational, Rational, Rational);

pub fn reference_wall_queries() -> Vec<(ChernClass, Rational, Vec<WallRow>)> {
    vec![
        (
            ChernClass::ints(2, 0, -4),
            int(-2),
            vec![(rat(-5, 2), rat(9, 4), int(1))],
        ),
        (
            ChernClass::ints(2, 0, -5),
            int(-2),
            vec![
                (int(-3), int(4), rat(3, 2)),
                (rat(-5, 2), rat(5, 4), rat(1, 2)),
                (rat(-7, 3), rat(4, 9), rat(1, 6)),
            ],
        ),
        (
            ChernClass::ints(2, 0, -3),
            rat(-7, 4),
            vec![(rat(-7, 4), rat(1, 16), rat(1, 32))],
        ),
    ]
}

fn reference_candidates() -> Result<Vec<(ChernClass, Vec<WallCandidate>)>, String> {
    let cfg = SurfaceConfig::ppas();
    reference_wall_queries()
        .into_iter()
        .map(|(v, beta, _)| {
            let opts = EnumerationOptions::default();
            let found = enumerate_with(&v, &beta, &rat(1, 100), &opts, &cfg).map_err(|e| e.to_string())?;
            Ok((v, found))
        })
        .collect()
}

fn walls_exact(_: &mut ChaCha8Rng, _: &CheckOptions) -> Result<usize, String> {
    let v = ChernClass::ints(2, 0, -2);
    let expected = NumericalWall::semicircle(rat(-3, 2), rat(1, 4)).map_err(|e| e.to_string())?;
    for w in [ChernClass::ints(4, -4, 2), ChernClass::ints(2, -2, 1)] {
        let got = wall_between(&v, &w);
        ensure(got.as_ref() == Some(&expected), || {
            format!("wall of {v} and {w}: {got:?}")
        })?;
    }
    let mut n = 2;
    let found = reference_candidates()?;
    for ((v, beta, expected), (_, got)) in reference_wall_queries().into_iter().zip(found) {
        let got: Vec<WallRow> = got
            .into_iter()
            .filter_map(|c| c.wall.circle().map(|(s, r)| (s.clone(), r.clone(), c.cross_a.clone())))
            .collect();
        if beta == rat(-7, 4) {
            ensure(expected.iter().all(|e| got.contains(e)), || {
                format!("{v} at {beta}: {got:?}")
            })?;
        } else {
            ensure(got == expected, || format!("{v} at {beta}: {got:?}"))?;
        }
        n += 1;
    }
    Ok(n)
}

fn walls_oracle(_: &mut ChaCha8Rng, _: &CheckOptions) -> Result<usize, String> {
    let mut n = 0;
    for (v, found) in reference_candidates()? {
        for c in found {
            for w in &c.witnesses {
                oracle_confirms(&v, w, &c.wall)?;
            }
            n += 1;
        }
    }
    Ok(n)
}

fn walls_delta_zero(rng: &mut ChaCha8Rng, opts: &CheckOptions) -> Result<usize, String> {
    let cfg = SurfaceConfig::ppas();
    let mut classes: Vec<ChernClass> = all_scenarios()
        .iter()
        .flat_map(|s| {
            let mut cs = vec![s.class.clone()];
            if let Some(t) = s.tree() {
                cs.extend(t.leaves().into_iter().map(|(_, l)| l.class.clone()));
            }
            cs
        })
        .filter(|c| c.discriminant().is_zero() && c.v0 > 0.into() && cfg.contains(c))
        .collect();
    let random = opts.cases.div_ceil(10).max(100);
    classes.extend((0..random).map(|_| gen::delta_zero_class(rng)));
    for v in &classes {
        let mu = Rational::new(v.v1.clone(), v.v0.clone());
        let beta = &mu - rat(rng.gen_range(1..=64), rng.gen_range(1..=8));
        let a_min = rat(1, rng.gen_range(1..=200));
        let a_max = &a_min + int(rng.gen_range(1..=20));
        let found = enumerate_candidates(v, &beta, &a_min, &a_max, &cfg).map_err(|e| format!("{v}: {e}"))?;
        ensure(found.is_empty(), || format!("{v} at β = {beta}: {} walls", found.len()))?;
    }
    Ok(classes.len())
}

fn prop_alternating_identity(rng: &mut ChaCha8Rng, opts: &CheckOptions) -> Result<usize, String> {
    for _ in 0..opts.cases {
        let t = gen::tree(rng);
        let root = t.root_class().clone();
        let chd0 = assemble_chd0(&t).map_err(|e| e.to_string())?;
        let chd1 = assemble_chd1(&t).map_err(|e| e.to_string())?;
        let poly = chd_polynomial(&root);
        for (p0, p1) in chd0.pieces.iter().zip(&chd1.pieces) {
            ensure((p0 - p1) == poly, || format!("{root}: {p0} - {p1} is not {poly}"))?;
        }
        // Pointwise against the limit HN filtration right of -μ.
        let mu = Rational::new(root.v1.clone(), root.v0.clone());
        let x = -&mu + rat(rng.gen_range(1..=80), rng.gen_range(1..=8));
        if chd0.breakpoints.contains(&QuadraticIrrational::from(x.clone())) {
            continue;
        }
        let beta = -&x;
        let factors = hn_factors_limit(&t, &beta).map_err(|e| format!("{root} at β = {beta}: {e}"))?;
        let h0 = chd0_from_factors(&factors, &beta);
        ensure(h0 == chd0.eval_rational(&x), || {
            format!("{root}: limit factors give {h0} at x = {x}")
        })?;
        let h1 = &h0 - poly.eval_rational(&x);
        ensure(h1 == chd1.eval_rational(&x), || {
            format!("{root}: chd1 disagrees at x = {x}")
        })?;
    }
    Ok(opts.cases)
}

fn random_function(rng: &mut ChaCha8Rng) -> PiecewiseQuadratic {
    let k = rng.gen_range(0..4usize);
    let mut xs: Vec<QuadraticIrrational> = (0..k).map(|_| gen::rational(rng, 6, 4).into()).collect();
    if rng.gen_bool(0.3) {
        let q = int(rng.gen_range(-3..=3));
        xs.push(QuadraticIrrational::new(q, int(1), 2.into()).expect("sqrt(2)"));
    }
    xs.sort();
    xs.dedup();
    let pieces = (0..=xs.len())
        .map(|_| {
            QuadPoly::new(
                gen::rational(rng, 5, 3),
                gen::rational(rng, 5, 3),
                gen::rational(rng, 2, 2),
            )
        })
        .collect();
    PiecewiseQuadratic::new(xs, pieces).expect("ascending breakpoints")
}

fn prop_serre_involution(rng: &mut ChaCha8Rng, opts: &CheckOptions) -> Result<usize, String> {
    for _ in 0..opts.cases {
        let f = random_function(rng);
        let g = serre_dual_function(&f);
        ensure(serre_dual_function(&g) == f, || format!("not an involution on {f}"))?;
        let x = gen::rational(rng, 8, 5);
        if !f.breakpoints.contains(&QuadraticIrrational::from(x.clone())) {
            ensure(g.eval_rational(&-&x) == f.eval_rational(&x), || {
                format!("{g} is not {f} reflected")
            })?;
        }
    }
    // chd^0 and chd^2 of the structure sheaf.
    let chd0 = trivial_chd(&ChernClass::ints(2, 0, 0)).map_err(|e| e.to_string())?;
    let chd2 = PiecewiseQuadratic::new(vec![int(0).into()], vec![QuadPoly::from_i64(0, 0, 1), QuadPoly::zero()])
        .map_err(|e| e.to_string())?;
    ensure(serre_dual_function(&chd0) == chd2, || format!("dual of {chd0}"))?;
    ensure(serre_dual_function(&chd2) == chd0, || format!("dual of {chd2}"))?;
    Ok(opts.cases + 1)
}

fn prop_twist_invariance(rng: &mut ChaCha8Rng, opts: &CheckOptions) -> Result<usize, String> {
    let cfg = SurfaceConfig::ppas();
    for _ in 0..opts.cases {
        let v = gen::class(rng);
        let beta = gen::rational(rng, 10, 12);
        ensure(v.twist(&beta).discriminant() == v.discriminant(), || {
            format!("{v} twisted by {beta}")
        })?;
        ensure(v.shift().discriminant() == v.discriminant(), || format!("{v} shifted"))?;
        // Tensoring by L^k is the twist by -k and stays in the lattice.
        let k = rng.gen_range(-4i64..=4);
        let t = v.twist(&int(-k));
        let w = ChernClass::new(t.t0.to_integer(), t.t1.to_integer(), t.t2.clone());
        ensure(cfg.contains(&w) && w.discriminant() == v.discriminant(), || {
            format!("{v} tensored by L^{k}")
        })?;
    }
    Ok(opts.cases)
}

fn prop_top_points(rng: &mut ChaCha8Rng, opts: &CheckOptions) -> Result<usize, String> {
    let cfg = SurfaceConfig::ppas();
    let mut n = 0;
    while n < opts.cases {
        let v = gen::class(rng);
        let w = gen::class(rng);
        let Some(wall) = wall_between(&v, &w) else { continue };
        if !wall.is_semicircle() {
            continue;
        }
        ensure(top_point_on_hyperbola(&v, &wall), || {
            format!("{wall} for {v} misses H_v")
        })?;
        ensure(top_point_on_hyperbola(&w, &wall), || {
            format!("{wall} for {w} misses H_w")
        })?;
        n += 1;
    }
    for _ in 0..opts.cases / 20 {
        let (v, found) = small_enumeration(rng, &cfg)?;
        for c in found {
            ensure(top_point_on_hyperbola(&v, &c.wall), || {
                format!("enumerated {} for {v} misses H_v", c.wall)
            })?;
        }
    }
    Ok(n)
}

fn small_enumeration(rng: &mut ChaCha8Rng, cfg: &SurfaceConfig) -> Result<(ChernClass, Vec<WallCandidate>), String> {
    let v = gen::class_with_small_discriminant(rng, 40);
    let mu = Rational::new(v.v1.clone(), v.v0.clone());
    let beta = &mu - rat(rng.gen_range(1..=24), rng.gen_range(1..=4));
    let a_min = rat(1, rng.gen_range(2..=20));
    let found = enumerate_with(&v, &beta, &a_min, &EnumerationOptions::default(), cfg)
        .map_err(|e| format!("{v} at β = {beta}: {e}"))?;
    Ok((v, found))
}

fn prop_nesting(rng: &mut ChaCha8Rng, opts: &CheckOptions) -> Result<usize, String> {
    let cfg = SurfaceConfig::ppas();
    let mut pairs = 0;
    for _ in 0..opts.cases {
        let (v, found) = small_enumeration(rng, &cfg)?;
        for (i, outer) in found.iter().enumerate() {
            for inner in &found[i + 1..] {
                let rel = nesting(&outer.wall, &inner.wall).map_err(|e| e.to_string())?;
                ensure(
                    rel == Nesting::Nested {
                        inner: crate::walls::Which::Second,
                    },
                    || format!("{v}: {} and {} are {rel:?}", outer.wall, inner.wall),
                )?;
                pairs += 1;
            }
        }
    }
    Ok(pairs)
}

/// A point strictly inside the heart's half plane and off every wall of the tree.
fn off_wall_point(rng: &mut ChaCha8Rng, t: &HNTree) -> (Rational, Rational) {
    let root = t.root_class();
    let walls: Vec<NumericalWall> = t
        .internal_nodes()
        .into_iter()
        .filter_map(|(_, n)| n.wall.clone())
        .collect();
    loop {
        let beta = match root.v0.sign() {
            num_bigint::Sign::Plus => Rational::new(root.v1.clone(), root.v0.clone()) - rat(rng.gen_range(1..=96), 16),
            _ => gen::rational(rng, 6, 16),
        };
        let a = rat(rng.gen_range(1..=64), 16);
        if !root.im_at(&beta).is_positive() {
            continue;
        }
        let on_wall = walls
            .iter()
            .any(|w| matches!(wall_a_at(w, &beta), Ok(Some(h)) if h == a));
        if !on_wall {
            return (a, beta);
        }
    }
}

fn prop_hn_monotone(rng: &mut ChaCha8Rng, _: &CheckOptions) -> Result<usize, String> {
    let mut n = 0;
    for s in all_scenarios() {
        let Some(t) = s.tree() else { continue };
        if t.is_trivial() {
            continue;
        }
        for _ in 0..50 {
            let (a, beta) = off_wall_point(rng, &t);
            let factors = match hn_factors_at(&t, &a, &beta) {
                Ok(f) => f,
                Err(TreeError::OnWall(_)) => continue,
                Err(e) => return Err(format!("{} at (a, β) = ({a}, {beta}): {e}", s.id)),
            };
            for pair in factors.windows(2) {
                ensure(pair[0].slope > pair[1].slope, || {
                    format!(
                        "{} at ({a}, {beta}): slopes {} then {}",
                        s.id, pair[0].slope, pair[1].slope
                    )
                })?;
            }
            let total: ChernClass = factors.iter().map(|f| &f.class).sum();
            ensure(&total == t.root_class(), || format!("{}: factors sum to {total}", s.id))?;
            n += 1;
        }
    }
    Ok(n)
}

fn round_trip<T>(x: &T) -> Result<(), String>
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let s = serde_json::to_string(x).map_err(|e| e.to_string())?;
    let back: T = serde_json::from_str(&s).map_err(|e| format!("{s}: {e}"))?;
    ensure(&back == x, || format!("{s} parsed as {back:?}"))
}

fn prop_json_round_trip(rng: &mut ChaCha8Rng, opts: &CheckOptions) -> Result<usize, String> {
    for _ in 0..opts.cases {
        let v = gen::class(rng);
        round_trip(&v)?;
        if let Some(wall) = wall_between(&v, &gen::class(rng)) {
            round_trip(&wall)?;
        }
        round_trip(&random_function(rng))?;
        let t = gen::tree(rng);
        round_trip(&t)?;
        round_trip(&assemble_chd1(&t).map_err(|e| e.to_string())?)?;
    }
    for s in all_scenarios() {
        if let Some(t) = s.tree() {
            round_trip(&t)?;
        }
    }
    Ok(opts.cases)
}
