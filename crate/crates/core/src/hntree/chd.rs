use num_traits::Signed;
use serde::Serialize;

use super::piecewise::PiecewiseQuadratic;
use super::tree::HNTree;
use super::validate::validate_tree;
use super::TreeError;
use crate::exactnum::{fmt_rational, QuadPoly, QuadraticIrrational, Rational};
use crate::lattice::{chd_polynomial, ChernClass};

/// A leaf contributing to a breakpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafRef {
    pub path: String,
    pub class: ChernClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(serialize_with = "crate::exactnum::serde_rational::serialize")]
    pub discriminant: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TagStatus {
    NumericallyWitnessed,
    RequiresGeometricInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionTag {
    pub condition: Condition,
    pub status: TagStatus,
}

/// What the tree forces at one breakpoint of `chd^0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakpointReport {
    pub x: QuadraticIrrational,
    pub contributing_leaves: Vec<LeafRef>,
    /// Right minus left derivative, the sum of `sqrt(Δ)` over the contributing leaves.
    pub derivative_jump: QuadraticIrrational,
    pub differentiable: bool,
    /// More than one leaf meets at this point.
    pub overlap: bool,
    pub condition_tags: Vec<ConditionTag>,
}

fn require_valid(t: &HNTree) -> Result<(), TreeError> {
    let report = validate_tree(t);
    if report.is_pass() {
        Ok(())
    } else {
        Err(TreeError::Invalid(report))
    }
}

/// Leaves grouped by the breakpoint `x = -p` they create, ascending in `x`.
fn leaf_groups(t: &HNTree) -> Result<Vec<(QuadraticIrrational, Vec<LeafRef>)>, TreeError> {
    let mut groups: Vec<(QuadraticIrrational, Vec<LeafRef>)> = Vec::new();
    for (path, leaf) in t.leaves() {
        let x = leaf.p()?.value.neg();
        let entry = LeafRef {
            path,
            class: leaf.class.clone(),
            label: leaf.label.clone(),
            discriminant: leaf.class.discriminant(),
        };
        match groups.iter_mut().find(|(y, _)| y == &x) {
            Some((_, list)) => list.push(entry),
            None => groups.push((x, vec![entry])),
        }
    }
    groups.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(groups)
}

/// `chd^0` of the root class from a well-ordered tree.
///
/// The piece after the breakpoint `-p_G` adds `ch2^{-x}(G)` to the piece before it; left of every
/// breakpoint the function vanishes.
pub fn assemble_chd0(t: &HNTree) -> Result<PiecewiseQuadratic, TreeError> {
    require_valid(t)?;
    if t.root_class().v0.is_negative() {
        return Err(TreeError::NegativeRank);
    }
    let groups = leaf_groups(t)?;
    let mut pieces = vec![QuadPoly::zero()];
    let mut acc = QuadPoly::zero();
    for (_, leaves) in &groups {
        for leaf in leaves {
            acc = &acc + &chd_polynomial(&leaf.class);
        }
        pieces.push(acc.clone());
    }
    let breakpoints = groups.into_iter().map(|(x, _)| x).collect();
    PiecewiseQuadratic::new(breakpoints, pieces)
}

/// `chd^1 = chd^0 - ch2^{-x}(root)`, valid right of `-μ(root)` when the root has positive rank.
pub fn assemble_chd1(t: &HNTree) -> Result<PiecewiseQuadratic, TreeError> {
    let chd0 = assemble_chd0(t)?;
    let root = t.root_class();
    let lower = if root.v0.is_positive() {
        Some(QuadraticIrrational::from(-Rational::new(
            root.v1.clone(),
            root.v0.clone(),
        )))
    } else {
        None
    };
    Ok(chd0.minus(&chd_polynomial(root)).with_domain(lower, None))
}

/// `{0 | x <= r; ch2^{-x}(v) | x >= r}` with `r` the largest root of the Chern degree polynomial.
pub fn trivial_chd(v: &ChernClass) -> Result<PiecewiseQuadratic, TreeError> {
    let delta = v.discriminant();
    if delta.is_negative() {
        return Err(TreeError::NoRealRoot(format!("Δ = {}", fmt_rational(&delta))));
    }
    let poly = chd_polynomial(v);
    let roots = poly.roots()?;
    let largest = roots
        .into_iter()
        .map(|r| r.value)
        .max()
        .ok_or_else(|| TreeError::NoRealRoot(poly.to_string()))?;
    PiecewiseQuadratic::new(vec![largest], vec![QuadPoly::zero(), poly])
}

/// Derivative jumps and numerically forced conditions at every breakpoint of `chd^0`.
///
/// A leaf with `Δ > 0` is a factor of slope zero at `β = p`, witnessing condition (a). A leaf with
/// `Δ = 0` becomes a kernel class there; it points at (c) when it has positive rank and at (b)
/// otherwise, but deciding either needs the geometry of the filtration.
pub fn classify_breakpoints(t: &HNTree) -> Result<Vec<BreakpointReport>, TreeError> {
    require_valid(t)?;
    let groups = leaf_groups(t)?;
    let mut out = Vec::new();
    for (x, leaves) in groups {
        let mut jump = QuadraticIrrational::zero();
        let mut tags: Vec<ConditionTag> = Vec::new();
        let mut add_tag = |condition, status| {
            let tag = ConditionTag { condition, status };
            if !tags.contains(&tag) {
                tags.push(tag);
            }
        };
        for leaf in &leaves {
            let root = QuadraticIrrational::sqrt_of(&leaf.discriminant)?;
            jump = jump
                .checked_add(&root)
                .unwrap_or_else(|| panic!("sqrt(Δ) of leaves at {x} lie in one quadratic field"));
            if leaf.discriminant.is_positive() {
                add_tag(Condition::A, TagStatus::NumericallyWitnessed);
            } else if leaf.class.v0.is_positive() {
                add_tag(Condition::C, TagStatus::RequiresGeometricInput);
            } else {
                add_tag(Condition::B, TagStatus::RequiresGeometricInput);
            }
        }
        tags.sort_by_key(|t| t.condition as u8);
        out.push(BreakpointReport {
            differentiable: jump.is_zero(),
            overlap: leaves.len() > 1,
            x,
            contributing_leaves: leaves,
            derivative_jump: jump,
            condition_tags: tags,
        });
    }
    Ok(out)
}

/// Serre duality on functions: `x -> f(-x)`.
pub fn serre_dual_function(f: &PiecewiseQuadratic) -> PiecewiseQuadratic {
    f.reflect()
}
