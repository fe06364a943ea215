//! Built-in scenarios: ideal sheaves of points and a few trivial classes on abelian surfaces.

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{int, rat, QuadPoly, QuadraticIrrational, Rational};
use crate::hntree::{HNTree, PiecewiseQuadratic, TreeNode};
use crate::lattice::{ChernClass, SurfaceConfig};
use crate::walls::NumericalWall;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown scenario `{0}`")]
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
#[allow(clippy::large_enum_variant)]
pub enum Shape {
    /// A destabilization tree with at least one wall.
    Tree { tree: HNTree },
    /// The class is never destabilized above the β-axis.
    Trivial,
    /// Known walls with a destabilizing class each; no function is recorded.
    WallsOnly { walls: Vec<(NumericalWall, ChernClass)> },
}

/// Expected jump of `chd^0` at one breakpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedBreakpoint {
    pub x: QuadraticIrrational,
    pub jump: QuadraticIrrational,
    pub overlap: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scenario {
    pub id: &'static str,
    pub config: SurfaceConfig,
    pub class: ChernClass,
    pub shape: Shape,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_chd0: Option<PiecewiseQuadratic>,
    pub expected_breakpoints: Vec<ExpectedBreakpoint>,
    pub notes: &'static str,
}

impl Scenario {
    /// The destabilization tree; trivial scenarios get a single leaf.
    pub fn tree(&self) -> Option<HNTree> {
        match &self.shape {
            Shape::Tree { tree } => Some(tree.clone()),
            Shape::Trivial => Some(HNTree::trivial(self.class.clone())),
            Shape::WallsOnly { .. } => None,
        }
    }

    /// Every wall of the scenario with the class it belongs to.
    pub fn walls(&self) -> Vec<(ChernClass, NumericalWall)> {
        match &self.shape {
            Shape::Tree { tree } => tree
                .internal_nodes()
                .into_iter()
                .filter_map(|(_, n)| n.wall.clone().map(|w| (n.class.clone(), w)))
                .collect(),
            Shape::Trivial => Vec::new(),
            Shape::WallsOnly { walls } => walls.iter().map(|(w, _)| (self.class.clone(), w.clone())).collect(),
        }
    }
}

fn c(v0: i64, v1: i64, v2: i64) -> ChernClass {
    ChernClass::ints(v0, v1, v2)
}

fn wall(center: Rational, radius_sq: Rational) -> NumericalWall {
    NumericalWall::semicircle(center, radius_sq).expect("positive radius")
}

fn leaf(class: ChernClass, label: &str) -> TreeNode {
    TreeNode::leaf(class).labeled(label)
}

fn q(c0: i64, c1: i64, c2: i64) -> QuadPoly {
    QuadPoly::from_i64(c0, c1, c2)
}

fn x(v: Rational) -> QuadraticIrrational {
    v.into()
}

fn function(breakpoints: Vec<Rational>, pieces: Vec<QuadPoly>) -> Option<PiecewiseQuadratic> {
    Some(PiecewiseQuadratic::new(breakpoints.into_iter().map(x).collect(), pieces).expect("well formed"))
}

fn bp(at: Rational, jump: i64, overlap: bool) -> ExpectedBreakpoint {
    ExpectedBreakpoint {
        x: x(at),
        jump: x(int(jump)),
        overlap,
    }
}

const IDS: [&str; 13] = [
    "ppas-ideal-1",
    "ppas-ideal-2",
    "ppas-ideal-3-collinear",
    "ppas-ideal-3-generic",
    "ppas-ideal-4-collinear",
    "ppas-ideal-4-generic",
    "ppas-ideal-5-W2",
    "ppas-ideal-5-generic",
    "ppas-ideal-5-W1-walls",
    "ppas-ideal-5-W3-walls",
    "abelian12-ideal-point",
    "ppas-structure-sheaf",
    "ppas-abel-jacobi",
];

pub fn list_scenarios() -> Vec<&'static str> {
    IDS.to_vec()
}

pub fn all_scenarios() -> Vec<Scenario> {
    IDS.iter().map(|id| load_scenario(id).expect("listed")).collect()
}

pub fn load_scenario(id: &str) -> Result<Scenario, CatalogError> {
    let ppas = SurfaceConfig::ppas();
    let id: &'static str = IDS
        .iter()
        .find(|known| **known == id)
        .ok_or_else(|| CatalogError::Unknown(id.to_string()))?;
    let scenario = match id {
        "ppas-ideal-1" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -1),
            shape: Shape::Trivial,
            expected_chd0: function(vec![int(1)], vec![q(0, 0, 0), q(-1, 0, 1)]),
            expected_breakpoints: vec![bp(int(1), 2, false)],
            notes: "Ideal sheaf of a single point; never destabilized above the β-axis.",
        },
        "ppas-ideal-2" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -2),
            shape: Shape::Tree {
                tree: HNTree::new(TreeNode::split(
                    c(2, 0, -2),
                    wall(rat(-3, 2), rat(1, 4)),
                    vec![leaf(c(4, -4, 2), "E"), leaf(c(-2, 4, -4), "Q")],
                )),
            },
            expected_chd0: function(vec![int(1), int(2)], vec![q(0, 0, 0), q(2, -4, 2), q(-2, 0, 1)]),
            expected_breakpoints: vec![bp(int(1), 0, false), bp(int(2), 0, false)],
            notes: "Length two subscheme: E = (L^-1)^2 maps onto the ideal with quotient Q of class (-1, 2L, -4).",
        },
        "ppas-ideal-3-collinear" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -3),
            shape: Shape::Tree {
                tree: HNTree::new(TreeNode::split(
                    c(2, 0, -3),
                    wall(int(-2), int(1)),
                    vec![leaf(c(2, -2, 1), "L^-1"), leaf(c(0, 2, -4), "O_C(-T)")],
                )),
            },
            expected_chd0: function(vec![int(1), int(2)], vec![q(0, 0, 0), q(1, -2, 1), q(-3, 0, 1)]),
            expected_breakpoints: vec![bp(int(1), 0, false), bp(int(2), 2, false)],
            notes: "Three points on a translate C of the theta divisor; the quotient O_C(-T) has v = (0, 2, -4).",
        },
        "ppas-ideal-3-generic" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -3),
            shape: Shape::Tree {
                tree: HNTree::new(TreeNode::split(
                    c(2, 0, -3),
                    wall(rat(-7, 4), rat(1, 16)),
                    vec![leaf(c(8, -12, 9), "E"), leaf(c(-6, 12, -12), "Q")],
                )),
            },
            expected_chd0: function(vec![rat(3, 2), int(2)], vec![q(0, 0, 0), q(9, -12, 4), q(-3, 0, 1)]),
            expected_breakpoints: vec![bp(rat(3, 2), 0, false), bp(int(2), 0, false)],
            notes: "Three general points; a rank four semihomogeneous bundle E with ch = (4, -6L, 9) destabilizes.",
        },
        "ppas-ideal-4-collinear" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -4),
            shape: Shape::Tree {
                tree: HNTree::new(TreeNode::split(
                    c(2, 0, -4),
                    wall(rat(-5, 2), rat(9, 4)),
                    vec![
                        leaf(c(2, -2, 1), "E"),
                        TreeNode::split(
                            c(0, 2, -5),
                            wall(rat(-5, 2), rat(1, 4)),
                            vec![leaf(c(2, -4, 4), "Q1"), leaf(c(-2, 6, -9), "Q2")],
                        )
                        .labeled("Q"),
                    ],
                )),
            },
            expected_chd0: function(
                vec![int(1), int(2), int(3)],
                vec![q(0, 0, 0), q(1, -2, 1), q(5, -6, 2), q(-4, 0, 1)],
            ),
            expected_breakpoints: vec![bp(int(1), 0, false), bp(int(2), 0, false), bp(int(3), 0, false)],
            notes: "Four points on a translate C; Q = O_C(-T) is destabilized again by L^-2 with quotient L^-3[1].",
        },
        "ppas-ideal-4-generic" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -4),
            shape: Shape::Trivial,
            expected_chd0: function(vec![int(2)], vec![q(0, 0, 0), q(-4, 0, 1)]),
            expected_breakpoints: vec![bp(int(2), 4, false)],
            notes: "Four points not on a common translate of the theta divisor: the only numerical wall is not actual.",
        },
        "ppas-ideal-5-W2" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -5),
            shape: Shape::Tree {
                tree: HNTree::new(TreeNode::split(
                    c(2, 0, -5),
                    wall(rat(-5, 2), rat(5, 4)),
                    vec![
                        leaf(c(2, -2, 0), "E"),
                        TreeNode::split(
                            c(0, 2, -5),
                            wall(rat(-5, 2), rat(1, 4)),
                            vec![leaf(c(2, -4, 4), "Q1"), leaf(c(-2, 6, -9), "Q2")],
                        )
                        .labeled("Q"),
                    ],
                )),
            },
            expected_chd0: function(vec![int(2), int(3)], vec![q(0, 0, 0), q(4, -6, 2), q(-5, 0, 1)]),
            expected_breakpoints: vec![bp(int(2), 2, true), bp(int(3), 0, false)],
            notes:
                "Four of five points on a translate C; E = L^-1 tensor the ideal of the fifth point, p_E = p_Q1 = -2.",
        },
        "ppas-ideal-5-generic" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -5),
            shape: Shape::Tree {
                tree: HNTree::new(TreeNode::split(
                    c(2, 0, -5),
                    wall(rat(-9, 4), rat(1, 16)),
                    vec![leaf(c(10, -20, 20), "E"), leaf(c(-8, 20, -25), "Q")],
                )),
            },
            expected_chd0: function(vec![int(2), rat(5, 2)], vec![q(0, 0, 0), q(20, -20, 5), q(-5, 0, 1)]),
            expected_breakpoints: vec![bp(int(2), 0, false), bp(rat(5, 2), 0, false)],
            notes: "Five general points; a rank five semihomogeneous bundle with v = (10, -20, 20) destabilizes.",
        },
        "ppas-ideal-5-W1-walls" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -5),
            shape: Shape::WallsOnly {
                walls: vec![(wall(int(-3), int(4)), c(2, -2, 1))],
            },
            expected_chd0: None,
            expected_breakpoints: Vec::new(),
            notes: "Five points on a translate C: L^-1 destabilizes along the outermost wall.",
        },
        "ppas-ideal-5-W3-walls" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, -5),
            shape: Shape::WallsOnly {
                walls: vec![(wall(rat(-7, 3), rat(4, 9)), c(4, -6, 4))],
            },
            expected_chd0: None,
            expected_breakpoints: Vec::new(),
            notes: "Innermost candidate wall, witnessed by a class K with ch = (2, -3L, 4).",
        },
        "abelian12-ideal-point" => Scenario {
            id,
            config: SurfaceConfig::abelian_1_2(),
            class: c(4, 0, -1),
            shape: Shape::Tree {
                tree: HNTree::new(TreeNode::split(
                    c(4, 0, -1),
                    wall(rat(-3, 4), rat(1, 16)),
                    vec![leaf(c(8, -4, 1), "E"), leaf(c(-4, 4, -2), "Q")],
                )),
            },
            expected_chd0: function(vec![rat(1, 2), int(1)], vec![q(0, 0, 0), q(1, -4, 4), q(-1, 0, 2)]),
            expected_breakpoints: vec![bp(rat(1, 2), 0, false), bp(int(1), 0, false)],
            notes: "Ideal of a point on a (1,2)-polarized abelian surface, L^2 = 4.",
        },
        "ppas-structure-sheaf" => Scenario {
            id,
            config: ppas,
            class: c(2, 0, 0),
            shape: Shape::Trivial,
            expected_chd0: function(vec![int(0)], vec![q(0, 0, 0), q(0, 0, 1)]),
            expected_breakpoints: vec![bp(int(0), 0, false)],
            notes: "Structure sheaf; semistable for every α > 0, so the function is (L^2/2) x^2 for x >= 0.",
        },
        "ppas-abel-jacobi" => Scenario {
            id,
            config: ppas,
            class: c(0, 2, 0),
            shape: Shape::Trivial,
            expected_chd0: function(vec![int(0)], vec![q(0, 0, 0), q(0, 2, 0)]),
            expected_breakpoints: vec![bp(int(0), 2, false)],
            notes: "Pushforward of a degree one line bundle M on the theta divisor: chi = deg M - 1 = 0.",
        },
        _ => unreachable!("listed id"),
    };
    Ok(scenario)
}
