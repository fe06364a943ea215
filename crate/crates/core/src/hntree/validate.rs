use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::tree::{HNTree, TreeNode};
use crate::exactnum::{fmt_rational, Rational};
use crate::lattice::{ChernClass, SurfaceConfig};
use crate::walls::{strictly_inside, wall_between};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    MissingWall,
    LeafWall,
    VerticalWall,
    TooFewChildren,
    ClassSum,
    WallMismatch,
    NegativeDiscriminant,
    DiscriminantSum,
    NotNested,
    NoIntercept,
    WellOrdered,
    Lattice,
}

impl ViolationKind {
    pub fn name(&self) -> &'static str {
        match self {
            ViolationKind::MissingWall => "missing-wall",
            ViolationKind::LeafWall => "leaf-wall",
            ViolationKind::VerticalWall => "vertical-wall",
            ViolationKind::TooFewChildren => "too-few-children",
            ViolationKind::ClassSum => "class-sum",
            ViolationKind::WallMismatch => "wall-mismatch",
            ViolationKind::NegativeDiscriminant => "negative-discriminant",
            ViolationKind::DiscriminantSum => "discriminant-sum",
            ViolationKind::NotNested => "not-nested",
            ViolationKind::NoIntercept => "no-intercept",
            ViolationKind::WellOrdered => "well-ordered",
            ViolationKind::Lattice => "lattice",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: String,
    pub kind: ViolationKind,
    pub detail: String,
}

/// Outcome of [`validate_tree`]; empty means the tree passed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, path: &str, kind: ViolationKind, detail: String) {
        self.violations.push(Violation {
            path: path.to_string(),
            kind,
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return f.write_str("pass");
        }
        let lines: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at {}: {}", v.kind, v.path, v.detail))
            .collect();
        f.write_str(&lines.join("; "))
    }
}

/// Checks every structural invariant of a destabilization tree and that it is well-ordered.
pub fn validate_tree(t: &HNTree) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_node(&t.root, "root", None, &mut report);
    check_order(t, &mut report);
    report
}

/// [`validate_tree`] plus lattice membership of every class.
pub fn validate_tree_in(t: &HNTree, cfg: &SurfaceConfig) -> ValidationReport {
    let mut report = validate_tree(t);
    let mut stack = vec![("root".to_string(), &t.root)];
    while let Some((path, node)) = stack.pop() {
        if let Err(e) = cfg.check(&node.class) {
            report.push(&path, ViolationKind::Lattice, e.to_string());
        }
        for (i, child) in node.children.iter().enumerate() {
            stack.push((format!("{path}/{i}"), child));
        }
    }
    report
}

fn check_node(node: &TreeNode, path: &str, parent: Option<&TreeNode>, report: &mut ValidationReport) {
    if node.is_leaf() {
        if node.wall.is_some() {
            report.push(path, ViolationKind::LeafWall, "leaf carries a wall".into());
        }
        if let Err(e) = node.p() {
            report.push(path, ViolationKind::NoIntercept, e.to_string());
        }
        return;
    }
    let wall = match &node.wall {
        Some(w) if w.is_semicircle() => Some(w),
        Some(w) => {
            report.push(path, ViolationKind::VerticalWall, format!("{w} is not a semicircle"));
            None
        }
        None => {
            report.push(path, ViolationKind::MissingWall, "internal node without wall".into());
            None
        }
    };
    if node.children.len() < 2 {
        report.push(
            path,
            ViolationKind::TooFewChildren,
            format!("{} child", node.children.len()),
        );
    }
    let sum: ChernClass = node.children.iter().map(|c| &c.class).sum();
    if sum != node.class {
        report.push(
            path,
            ViolationKind::ClassSum,
            format!("children sum to {sum}, node is {}", node.class),
        );
    }
    let mut delta_sum = Rational::zero();
    for (i, child) in node.children.iter().enumerate() {
        let child_path = format!("{path}/{i}");
        if let Some(wall) = wall {
            match wall_between(&node.class, &child.class) {
                Some(w) if &w == wall => {}
                Some(w) => report.push(
                    &child_path,
                    ViolationKind::WallMismatch,
                    format!("child defines {w}, node has {wall}"),
                ),
                None => report.push(&child_path, ViolationKind::WallMismatch, "child defines no wall".into()),
            }
        }
        let d = child.class.discriminant();
        if d.is_negative() {
            report.push(
                &child_path,
                ViolationKind::NegativeDiscriminant,
                format!("Δ = {}", fmt_rational(&d)),
            );
        }
        delta_sum += d;
    }
    let dn = node.class.discriminant();
    if node.children.len() >= 2 && delta_sum >= dn {
        report.push(
            path,
            ViolationKind::DiscriminantSum,
            format!(
                "children Δ sum {} is not below {}",
                fmt_rational(&delta_sum),
                fmt_rational(&dn)
            ),
        );
    }
    if let (Some(parent), Some(wall)) = (parent, wall) {
        if let Some(outer) = parent.wall.as_ref().filter(|w| w.is_semicircle()) {
            if !strictly_inside(wall, outer).unwrap_or(false) {
                report.push(
                    path,
                    ViolationKind::NotNested,
                    format!("{wall} is not strictly inside {outer}"),
                );
            }
        }
    }
    for (i, child) in node.children.iter().enumerate() {
        check_node(child, &format!("{path}/{i}"), Some(node), report);
    }
}

fn check_order(t: &HNTree, report: &mut ValidationReport) {
    let leaves = t.leaves();
    let mut prev: Option<(String, crate::exactnum::QuadraticIrrational)> = None;
    for (path, leaf) in leaves {
        let Ok(p) = leaf.p() else { continue };
        if let Some((prev_path, prev_p)) = &prev {
            if prev_p < &p.value {
                report.push(
                    &path,
                    ViolationKind::WellOrdered,
                    format!("p = {} follows p = {} at {prev_path}", p.value, prev_p),
                );
            }
        }
        prev = Some((path, p.value));
    }
}
