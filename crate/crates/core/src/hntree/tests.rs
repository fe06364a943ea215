use super::*;
use crate::catalog::load_scenario;
use crate::exactnum::{int, rat, QuadPoly, QuadraticIrrational, Rational};
use crate::lattice::{ChernClass, Slope};
use crate::walls::NumericalWall;

fn c(v0: i64, v1: i64, v2: i64) -> ChernClass {
    ChernClass::ints(v0, v1, v2)
}

fn tree(id: &str) -> HNTree {
    load_scenario(id).unwrap().tree().unwrap()
}

fn qi(q: Rational) -> QuadraticIrrational {
    q.into()
}

#[test]
fn validates_collinear_four_points() {
    let t = tree("ppas-ideal-4-collinear");
    assert!(validate_tree(&t).is_pass());
    let ps: Vec<QuadraticIrrational> = t.leaves().iter().map(|(_, l)| l.p().unwrap().value).collect();
    assert_eq!(ps, vec![qi(int(-1)), qi(int(-2)), qi(int(-3))]);
}

#[test]
fn swapped_leaves_break_order() {
    let mut t = tree("ppas-ideal-4-collinear");
    t.root.children[1].children.swap(0, 1);
    let report = validate_tree(&t);
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].kind, ViolationKind::WellOrdered);
    assert_eq!(report.violations[0].path, "root/1/1");
}

#[test]
fn broken_class_sum_is_reported() {
    let t = HNTree::new(TreeNode::split(
        c(2, 0, -2),
        NumericalWall::semicircle(rat(-3, 2), rat(1, 4)).unwrap(),
        vec![TreeNode::leaf(c(2, -2, 1)), TreeNode::leaf(c(0, 2, -2))],
    ));
    let report = validate_tree(&t);
    assert!(report.has(ViolationKind::ClassSum));
    assert!(!report.is_pass());
}

#[test]
fn structural_violations() {
    let mut t = tree("ppas-ideal-2");
    t.root.children[0].wall = t.root.wall.clone();
    assert!(validate_tree(&t).has(ViolationKind::LeafWall));
    let mut t = tree("ppas-ideal-2");
    t.root.wall = Some(NumericalWall::semicircle(int(-2), int(1)).unwrap());
    assert!(validate_tree(&t).has(ViolationKind::WallMismatch));
    let mut t = tree("ppas-ideal-4-collinear");
    t.root.children[1].wall = t.root.wall.clone();
    let report = validate_tree(&t);
    assert!(report.has(ViolationKind::NotNested));
    let t = HNTree::new(TreeNode::split(
        c(2, 0, -2),
        NumericalWall::semicircle(rat(-3, 2), rat(1, 4)).unwrap(),
        vec![TreeNode::leaf(c(2, 0, -2))],
    ));
    assert!(validate_tree(&t).has(ViolationKind::TooFewChildren));
    let report = validate_tree_in(&tree("ppas-ideal-2"), &crate::lattice::SurfaceConfig::abelian_1_2());
    assert!(report.has(ViolationKind::Lattice));
}

#[test]
fn hn_inside_both_walls() {
    let t = tree("ppas-ideal-4-collinear");
    let f = hn_factors_at(&t, &rat(1, 50), &rat(-5, 2)).unwrap();
    let classes: Vec<ChernClass> = f.iter().map(|x| x.class.clone()).collect();
    assert_eq!(classes, vec![c(2, -2, 1), c(2, -4, 4), c(-2, 6, -9)]);
    let slopes: Vec<Slope> = f.iter().map(|x| x.slope.clone()).collect();
    assert_eq!(
        slopes,
        vec![
            Slope::Finite(rat(221, 300)),
            Slope::Finite(rat(21, 100)),
            Slope::Finite(rat(-21, 100))
        ]
    );
}

#[test]
fn hn_in_gieseker_chamber_and_trivial() {
    let t = tree("ppas-ideal-4-collinear");
    let f = hn_factors_at(&t, &int(2), &rat(-5, 2)).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].class, c(2, 0, -4));
    let f = hn_factors_at(&t, &int(1), &rat(-5, 2)).unwrap();
    assert_eq!(f.len(), 2);
    let single = HNTree::trivial(c(2, 0, -1));
    assert_eq!(
        hn_factors_at(&single, &rat(1, 3), &int(-7)).unwrap()[0].class,
        c(2, 0, -1)
    );
}

#[test]
fn hn_errors() {
    let t = tree("ppas-ideal-4-collinear");
    assert_eq!(
        hn_factors_at(&t, &rat(9, 8), &rat(-5, 2)),
        Err(TreeError::OnWall("root".into()))
    );
    assert_eq!(
        hn_factors_at(&t, &rat(1, 8), &rat(-5, 2)),
        Err(TreeError::OnWall("root/1".into()))
    );
    assert_eq!(hn_factors_at(&t, &int(1), &int(0)), Err(TreeError::WrongSide));
    assert_eq!(hn_factors_at(&t, &int(-1), &int(-3)), Err(TreeError::NegativeA));
}

#[test]
fn hn_at_zero_merges_ties() {
    let t = tree("ppas-ideal-5-W2");
    // At β = -2 both E and Q1 have slope 0 in the limit but differ at first order.
    let f = hn_factors_limit(&t, &int(-2)).unwrap();
    assert!(f.windows(2).all(|w| w[0].slope >= w[1].slope));
    assert_eq!(chd0_from_factors(&f, &int(-2)), int(0));
    let f = hn_factors_at(&t, &int(0), &rat(-9, 4)).unwrap();
    assert!(f.windows(2).all(|w| w[0].slope > w[1].slope));
}

fn pq(bps: Vec<Rational>, pieces: Vec<(i64, i64, i64)>) -> PiecewiseQuadratic {
    PiecewiseQuadratic::new(
        bps.into_iter().map(qi).collect(),
        pieces
            .into_iter()
            .map(|(a, b, cc)| QuadPoly::from_i64(a, b, cc))
            .collect(),
    )
    .unwrap()
}

#[test]
fn assemble_examples() {
    assert_eq!(
        assemble_chd0(&tree("ppas-ideal-2")).unwrap(),
        pq(vec![int(1), int(2)], vec![(0, 0, 0), (2, -4, 2), (-2, 0, 1)])
    );
    assert_eq!(
        assemble_chd0(&tree("ppas-ideal-4-collinear")).unwrap(),
        pq(
            vec![int(1), int(2), int(3)],
            vec![(0, 0, 0), (1, -2, 1), (5, -6, 2), (-4, 0, 1)]
        )
    );
    assert_eq!(
        assemble_chd0(&tree("ppas-ideal-5-W2")).unwrap(),
        pq(vec![int(2), int(3)], vec![(0, 0, 0), (4, -6, 2), (-5, 0, 1)])
    );
    assert_eq!(
        assemble_chd0(&tree("abelian12-ideal-point")).unwrap(),
        pq(vec![rat(1, 2), int(1)], vec![(0, 0, 0), (1, -4, 4), (-1, 0, 2)])
    );
}

#[test]
fn assemble_rejects_invalid_and_negative_rank() {
    let mut t = tree("ppas-ideal-4-collinear");
    t.root.children[1].children.swap(0, 1);
    assert!(matches!(assemble_chd0(&t), Err(TreeError::Invalid(_))));
    assert_eq!(
        assemble_chd0(&HNTree::trivial(c(-2, 6, -9))),
        Err(TreeError::NegativeRank)
    );
}

#[test]
fn chd1_examples() {
    let f = assemble_chd1(&tree("ppas-ideal-2")).unwrap();
    assert_eq!(
        f.pieces,
        vec![
            QuadPoly::from_i64(2, 0, -1),
            QuadPoly::from_i64(4, -4, 1),
            QuadPoly::zero()
        ]
    );
    assert_eq!(f.domain_lower, Some(qi(int(0))));
    assert!(f.is_nonnegative());
    let f = assemble_chd1(&HNTree::trivial(c(2, 0, -1))).unwrap();
    assert_eq!(f.pieces, vec![QuadPoly::from_i64(1, 0, -1), QuadPoly::zero()]);
    assert_eq!(f.to_string(), "{-x^2 + 1 | 0 <= x <= 1; 0 | x >= 1}");
    let f = assemble_chd1(&HNTree::trivial(c(2, 0, 0))).unwrap();
    for k in 0..20 {
        assert_eq!(f.eval_rational(&rat(k, 3)), int(0));
    }
}

#[test]
fn trivial_examples() {
    assert_eq!(
        trivial_chd(&c(2, 0, -1)).unwrap(),
        pq(vec![int(1)], vec![(0, 0, 0), (-1, 0, 1)])
    );
    assert_eq!(
        trivial_chd(&c(2, 0, -4)).unwrap(),
        pq(vec![int(2)], vec![(0, 0, 0), (-4, 0, 1)])
    );
    assert_eq!(
        trivial_chd(&c(0, 2, 0)).unwrap(),
        pq(vec![int(0)], vec![(0, 0, 0), (0, 2, 0)])
    );
    let f = trivial_chd(&c(2, 0, -2)).unwrap();
    assert_eq!(f.breakpoints, vec!["sqrt(2)".parse::<QuadraticIrrational>().unwrap()]);
    assert!(f.is_continuous());
    assert!(matches!(trivial_chd(&c(2, 0, 1)), Err(TreeError::NoRealRoot(_))));
    assert_eq!(assemble_chd0(&HNTree::trivial(c(2, 0, -2))).unwrap(), f);
}

#[test]
fn breakpoint_classification() {
    let reports = classify_breakpoints(&tree("ppas-ideal-2")).unwrap();
    assert!(reports.iter().all(|r| r.differentiable && r.derivative_jump.is_zero()));
    let reports = classify_breakpoints(&tree("ppas-ideal-3-collinear")).unwrap();
    assert_eq!(reports[0].derivative_jump, qi(int(0)));
    assert_eq!(reports[1].x, qi(int(2)));
    assert_eq!(reports[1].derivative_jump, qi(int(2)));
    assert!(!reports[1].differentiable);
    let reports = classify_breakpoints(&tree("ppas-ideal-5-W2")).unwrap();
    let first = &reports[0];
    assert_eq!(first.x, qi(int(2)));
    assert_eq!(first.contributing_leaves.len(), 2);
    assert!(first.overlap);
    assert_eq!(first.derivative_jump, qi(int(2)));
    assert_eq!(
        first.condition_tags,
        vec![
            ConditionTag {
                condition: Condition::A,
                status: TagStatus::NumericallyWitnessed
            },
            ConditionTag {
                condition: Condition::C,
                status: TagStatus::RequiresGeometricInput
            },
        ]
    );
    assert!(reports[1].differentiable);
    let reports = classify_breakpoints(&HNTree::trivial(c(2, 0, -2))).unwrap();
    assert_eq!(reports[0].derivative_jump, "2*sqrt(2)".parse().unwrap());
}

#[test]
fn serre_duality_on_functions() {
    let chd0 = trivial_chd(&c(2, 0, 0)).unwrap();
    let chd2 = serre_dual_function(&chd0);
    assert_eq!(chd2, pq(vec![int(0)], vec![(0, 0, 1), (0, 0, 0)]));
    assert_eq!(serre_dual_function(&chd2), chd0);
    let f = serre_dual_function(&trivial_chd(&c(2, 0, -1)).unwrap());
    assert_eq!(f, pq(vec![int(-1)], vec![(-1, 0, 1), (0, 0, 0)]));
}

#[test]
fn json_round_trips() {
    let t = tree("ppas-ideal-5-W2");
    let s = serde_json::to_string(&t).unwrap();
    assert!(s.starts_with(r#"{"class":[2,0,"-5"],"wall":{"center":"-5/2","radius_sq":"5/4"},"children":["#));
    assert_eq!(serde_json::from_str::<HNTree>(&s).unwrap(), t);
    let f = assemble_chd1(&t).unwrap();
    let s = serde_json::to_string(&f).unwrap();
    assert_eq!(serde_json::from_str::<PiecewiseQuadratic>(&s).unwrap(), f);
    let f = trivial_chd(&c(2, 0, -2)).unwrap();
    let s = serde_json::to_string(&f).unwrap();
    assert_eq!(
        s,
        r#"{"breakpoints":["0+1*sqrt(2)"],"pieces":[["0","0","0"],["-2","0","1"]]}"#
    );
}

#[test]
fn piecewise_checks() {
    let f = pq(vec![int(1)], vec![(0, 0, 0), (0, 0, 1)]);
    assert_eq!(f.continuity_defects(), vec![0]);
    let g = pq(vec![int(0)], vec![(0, 0, 0), (0, -1, 0)]);
    assert!(!g.is_nonnegative());
    let h = pq(vec![int(2)], vec![(0, 0, 0), (4, -4, 1)]);
    assert!(h.is_nonnegative());
    assert!(h.is_monotone(true, None));
    let dip = pq(vec![int(0)], vec![(0, 0, 0), (1, -4, 2)]);
    assert!(!dip.is_nonnegative());
    assert!(PiecewiseQuadratic::new(vec![qi(int(1)), qi(int(1))], vec![QuadPoly::zero(); 3]).is_err());
    assert!(PiecewiseQuadratic::new(vec![qi(int(1))], vec![QuadPoly::zero()]).is_err());
}
