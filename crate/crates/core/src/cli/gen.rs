//! Seeded generators of lattice classes and destabilization trees on the PPAS lattice.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{int, rat, Rational};
use crate::hntree::{validate_tree, HNTree, TreeNode};
use crate::lattice::ChernClass;
use crate::walls::wall_between;

pub fn rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Rational {
    rat(
        rng.gen_range(-span * max_den..=span * max_den),
        rng.gen_range(1..=max_den),
    )
}

/// A PPAS lattice class `(2a, 2b, h/2)` with small entries.
pub fn class(rng: &mut ChaCha8Rng) -> ChernClass {
    ChernClass::new(
        2 * rng.gen_range(-6i64..=6),
        2 * rng.gen_range(-8i64..=8),
        rat(rng.gen_range(-60i64..=60), 2),
    )
}

/// A PPAS class with integral `v2`, positive rank and `0 <= Δ <= max_delta`.
pub fn class_with_small_discriminant(rng: &mut ChaCha8Rng, max_delta: i64) -> ChernClass {
    loop {
        let v0 = 2 * rng.gen_range(1i64..=3);
        let v1 = 2 * rng.gen_range(-6i64..=6);
        let v2 = rng.gen_range(-30i64..=30);
        let v = ChernClass::ints(v0, v1, v2);
        let d = v.discriminant();
        if d >= int(0) && d <= int(max_delta) {
            return v;
        }
    }
}

/// A class with `Δ = 0`: a multiple of `(2r, 2m, m^2/r)` in the PPAS lattice, with `v0 > 0`.
pub fn delta_zero_class(rng: &mut ChaCha8Rng) -> ChernClass {
    loop {
        let r = rng.gen_range(1i64..=6);
        let m = rng.gen_range(-12i64..=12);
        let v2 = rat(m * m, r);
        if (&v2 * int(2)).denom() == &1.into() {
            return ChernClass::new(2 * r, 2 * m, v2);
        }
    }
}

/// `r` copies of `L^k` (`r > 0`) or of `L^k[1]` (`r < 0`).
fn bundle(r: i64, k: i64) -> ChernClass {
    ChernClass::ints(2 * r, 2 * r * k, r * k * k)
}

/// Twist of an ideal sheaf of `n` points by `L^k`, possibly shifted.
fn twisted_ideal(sign: i64, k: i64, n: i64) -> ChernClass {
    ChernClass::ints(2 * sign, 2 * sign * k, sign * (k * k - n))
}

fn random_leaf(rng: &mut ChaCha8Rng, positive: bool) -> ChernClass {
    let sign = if positive { 1 } else { -1 };
    let k = rng.gen_range(-5i64..=5);
    if rng.gen_bool(0.7) {
        bundle(sign * rng.gen_range(1i64..=4), k)
    } else {
        twisted_ideal(sign, k, rng.gen_range(1i64..=3))
    }
}

fn node(children: Vec<TreeNode>) -> Option<TreeNode> {
    let class: ChernClass = children.iter().map(|c| &c.class).sum();
    let wall = wall_between(&class, &children[0].class)?;
    Some(TreeNode::split(class, wall, children))
}

/// A valid, well-ordered tree whose root has positive rank.
///
/// Candidates are a positive rank leaf followed by a shifted leaf, optionally with the second
/// child split once more; anything failing validation is discarded.
pub fn tree(rng: &mut ChaCha8Rng) -> HNTree {
    loop {
        let a = TreeNode::leaf(random_leaf(rng, true));
        let b = if rng.gen_bool(0.35) {
            let inner = vec![
                TreeNode::leaf(random_leaf(rng, true)),
                TreeNode::leaf(random_leaf(rng, false)),
            ];
            match node(inner) {
                Some(n) => n,
                None => continue,
            }
        } else {
            TreeNode::leaf(random_leaf(rng, false))
        };
        let Some(root) = node(vec![a, b]) else { continue };
        if root.class.v0 <= 0.into() {
            continue;
        }
        let t = HNTree::new(root);
        if validate_tree(&t).is_pass() {
            return t;
        }
    }
}
