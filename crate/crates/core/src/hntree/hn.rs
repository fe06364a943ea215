use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::tree::{HNTree, TreeNode};
use super::TreeError;
use crate::exactnum::Rational;
use crate::lattice::{tilt_slope, ChernClass, Slope};
use crate::walls::wall_a_at;

/// One HN factor: its class, tilt slope and the tree nodes merged into it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnFactor {
    pub class: ChernClass,
    pub slope: Slope,
    pub nodes: Vec<String>,
}

fn check_side(t: &HNTree, beta: &Rational) -> Result<(), TreeError> {
    if t.root_class().im_at(beta).is_positive() {
        Ok(())
    } else {
        Err(TreeError::WrongSide)
    }
}

/// Cuts the tree at `(a, β)`: a node splits iff the point lies strictly inside its wall.
fn cut<'a>(
    node: &'a TreeNode,
    path: String,
    split: &dyn Fn(&Rational) -> Option<bool>,
    beta: &Rational,
    out: &mut Vec<(String, &'a TreeNode)>,
) -> Result<(), TreeError> {
    if node.is_leaf() {
        out.push((path, node));
        return Ok(());
    }
    let wall = node
        .wall
        .as_ref()
        .ok_or_else(|| TreeError::Malformed(format!("{path} has no wall")))?;
    let height = wall_a_at(wall, beta)?;
    let inside = match height {
        Some(h) => split(&h).ok_or_else(|| TreeError::OnWall(path.clone()))?,
        None => false,
    };
    if inside {
        for (i, child) in node.children.iter().enumerate() {
            cut(child, format!("{path}/{i}"), split, beta, out)?;
        }
    } else {
        out.push((path, node));
    }
    Ok(())
}

fn merge_into(factors: &mut Vec<HnFactor>, path: String, class: ChernClass, slope: Slope, merge_ties: bool) {
    if merge_ties {
        if let Some(last) = factors.last_mut() {
            if last.slope == slope {
                last.class = &last.class + &class;
                last.nodes.push(path);
                return;
            }
        }
    }
    factors.push(HnFactor {
        class,
        slope,
        nodes: vec![path],
    });
}

/// HN factors of the root class at `(a, β)`, read off the tree.
///
/// At `a = 0` adjacent factors of equal slope merge. Points on a wall are refused.
pub fn hn_factors_at(t: &HNTree, a: &Rational, beta: &Rational) -> Result<Vec<HnFactor>, TreeError> {
    if a.is_negative() {
        return Err(TreeError::NegativeA);
    }
    check_side(t, beta)?;
    let mut pieces = Vec::new();
    let split = |h: &Rational| match a.cmp(h) {
        Ordering::Less => Some(true),
        Ordering::Equal => None,
        Ordering::Greater => Some(false),
    };
    cut(&t.root, "root".into(), &split, beta, &mut pieces)?;
    let mut factors = Vec::new();
    for (path, node) in pieces {
        let slope = tilt_slope(&node.class, a, beta);
        merge_into(&mut factors, path, node.class.clone(), slope, a.is_zero());
    }
    ensure_decreasing(&factors, |f| f.slope.clone())?;
    Ok(factors)
}

/// Limit of the HN factors as `a -> 0+` along the vertical line `β`.
///
/// Factors are ordered by the limit slope, ties broken by the slope's first order term in `a`;
/// factors agreeing in both merge. The reported slope is the limit `ν_{0,β}`.
pub fn hn_factors_limit(t: &HNTree, beta: &Rational) -> Result<Vec<HnFactor>, TreeError> {
    check_side(t, beta)?;
    let mut pieces = Vec::new();
    let split = |h: &Rational| Some(h.is_positive());
    cut(&t.root, "root".into(), &split, beta, &mut pieces)?;
    let key = |c: &ChernClass| -> (Slope, Slope) {
        let im = c.im_at(beta);
        if im.is_zero() {
            return (Slope::PosInfinity, Slope::PosInfinity);
        }
        let nu0 = c.ch2_at(beta) / &im;
        let first_order = -c.v0r() / &im;
        (Slope::Finite(nu0), Slope::Finite(first_order))
    };
    let mut keyed: Vec<(String, ChernClass, (Slope, Slope))> = Vec::new();
    for (path, node) in pieces {
        let k = key(&node.class);
        match keyed.last_mut() {
            Some(last) if last.2 == k => {
                last.1 = &last.1 + &node.class;
                last.0 = format!("{}+{path}", last.0);
            }
            _ => keyed.push((path, node.class.clone(), k)),
        }
    }
    let factors: Vec<(HnFactor, (Slope, Slope))> = keyed
        .into_iter()
        .map(|(path, class, k)| {
            let nodes = path.split('+').map(str::to_string).collect();
            (
                HnFactor {
                    class,
                    slope: k.0.clone(),
                    nodes,
                },
                k,
            )
        })
        .collect();
    ensure_decreasing(&factors, |(_, k)| k.clone())?;
    Ok(factors.into_iter().map(|(f, _)| f).collect())
}

fn ensure_decreasing<T, K: Ord>(items: &[T], key: impl Fn(&T) -> K) -> Result<(), TreeError>
where
    T: HasNodes,
{
    for pair in items.windows(2) {
        if key(&pair[0]) <= key(&pair[1]) {
            return Err(TreeError::NotDecreasing(pair[1].first_node()));
        }
    }
    Ok(())
}

trait HasNodes {
    fn first_node(&self) -> String;
}

impl HasNodes for HnFactor {
    fn first_node(&self) -> String {
        self.nodes.first().cloned().unwrap_or_default()
    }
}

impl<K> HasNodes for (HnFactor, K) {
    fn first_node(&self) -> String {
        self.0.first_node()
    }
}

/// `chd^0(-β)` from σ_{0,β} HN factors: the sum of `ch2^β` over factors of slope `>= 0`.
pub fn chd0_from_factors(factors: &[HnFactor], beta: &Rational) -> Rational {
    factors
        .iter()
        .filter(|f| match &f.slope {
            Slope::PosInfinity => true,
            Slope::Finite(q) => !q.is_negative(),
        })
        .map(|f| f.class.ch2_at(beta))
        .fold(Rational::zero(), |acc, x| acc + x)
}
