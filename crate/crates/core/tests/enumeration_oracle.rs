//! Enumeration against an exhaustive search over a box of lattice classes.

use std::collections::BTreeSet;

use tiltwall::exactnum::{int, rat, Rational};
use tiltwall::lattice::{ChernClass, SurfaceConfig};
use tiltwall::walls::{enumerate_with, wall_a_at, wall_between, EnumerationOptions, NumericalWall};

const BOX: i64 = 12;
const V2_BOX: i64 = 40;

/// Walls of every box class passing the destabilizer conditions, keyed by `(center, radius_sq)`.
fn brute_force(
    v: &ChernClass,
    beta: &Rational,
    a_min: &Rational,
    a_max: &Rational,
    strict: bool,
) -> BTreeSet<(Rational, Rational)> {
    let cfg = SurfaceConfig::ppas();
    let dv = v.discriminant();
    let mut out = BTreeSet::new();
    for w0 in (-BOX..=BOX).step_by(2) {
        for w1 in (-BOX..=BOX).step_by(2) {
            for h in -V2_BOX..=V2_BOX {
                let w = ChernClass::new(w0, w1, rat(h, 2));
                let u = v - &w;
                let (dw, du) = (w.discriminant(), u.discriminant());
                if dw < int(0) || du < int(0) || !cfg.discriminant_admissible(&w) || !cfg.discriminant_admissible(&u) {
                    continue;
                }
                let total = &dw + &du;
                if total > dv || (strict && total == dv) {
                    continue;
                }
                let Some(wall @ NumericalWall::Semicircle { .. }) = wall_between(v, &w) else {
                    continue;
                };
                let Ok(Some(height)) = wall_a_at(&wall, beta) else {
                    continue;
                };
                if &height < a_min || &height > a_max {
                    continue;
                }
                let (s, r) = wall.circle().unwrap();
                let im = w.im_at(s);
                if im <= int(0) || im > v.im_at(s) {
                    continue;
                }
                out.insert((s.clone(), r.clone()));
            }
        }
    }
    out
}

fn enumerated(
    v: &ChernClass,
    beta: &Rational,
    a_min: &Rational,
    a_max: &Rational,
    strict: bool,
) -> BTreeSet<(Rational, Rational)> {
    let opts = EnumerationOptions {
        a_max: Some(a_max.clone()),
        strict,
        threads: 1,
    };
    let found = enumerate_with(v, beta, a_min, &opts, &SurfaceConfig::ppas()).unwrap();
    for c in &found {
        let in_box = c.witnesses.iter().any(|w| {
            let u = v - w;
            [w, &u].iter().any(|x| {
                x.v0.magnitude() <= &BOX.unsigned_abs().into()
                    && x.v1.magnitude() <= &BOX.unsigned_abs().into()
                    && x.v2 <= rat(V2_BOX, 2)
                    && x.v2 >= rat(-V2_BOX, 2)
            })
        });
        assert!(in_box, "{v}: wall {} has no witness inside the search box", c.wall);
    }
    found
        .into_iter()
        .map(|c| {
            let (s, r) = c.wall.circle().unwrap();
            (s.clone(), r.clone())
        })
        .collect()
}

fn compare(v: (i64, i64, i64), beta: Rational, a_min: Rational, a_max: Rational) {
    let v = ChernClass::ints(v.0, v.1, v.2);
    for strict in [false, true] {
        let expected = brute_force(&v, &beta, &a_min, &a_max, strict);
        let got = enumerated(&v, &beta, &a_min, &a_max, strict);
        assert_eq!(got, expected, "{v} at β = {beta}, strict = {strict}");
    }
}

#[test]
fn ideal_sheaves_match_exhaustive_search() {
    compare((2, 0, -2), int(-2), rat(1, 100), int(4));
    compare((2, 0, -3), rat(-7, 4), rat(1, 100), int(4));
    compare((2, 0, -4), int(-2), rat(1, 100), int(4));
    compare((2, 0, -5), int(-2), rat(1, 100), int(4));
    compare((2, 0, -5), rat(-5, 2), rat(1, 50), int(3));
}

#[test]
fn other_classes_match_exhaustive_search() {
    compare((4, 2, -3), rat(-1, 2), rat(1, 20), int(4));
    compare((2, 2, -2), int(-1), rat(1, 20), int(4));
    compare((4, 0, -3), rat(-3, 2), rat(1, 20), int(4));
}

#[test]
fn delta_zero_classes_have_no_destabilizer_in_the_box() {
    for (v, beta) in [
        ((2, -2, 1), int(-3)),
        ((4, -4, 2), rat(-5, 2)),
        ((2, 0, 0), rat(-1, 3)),
        ((6, 6, 3), int(-2)),
    ] {
        let v = ChernClass::ints(v.0, v.1, v.2);
        assert!(brute_force(&v, &beta, &rat(1, 100), &int(20), false).is_empty(), "{v}");
        assert!(enumerated(&v, &beta, &rat(1, 100), &int(20), false).is_empty(), "{v}");
    }
}
