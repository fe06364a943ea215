use serde::{Deserialize, Serialize};

use crate::lattice::{p_intercept, ChernClass, Intercept, LatticeError};
use crate::walls::NumericalWall;

/// A node of a destabilization tree; leaves have no wall and no children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub class: ChernClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall: Option<NumericalWall>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TreeNode {
    pub fn leaf(class: ChernClass) -> Self {
        Self {
            class,
            wall: None,
            children: Vec::new(),
            label: None,
        }
    }

    pub fn split(class: ChernClass, wall: NumericalWall, children: Vec<TreeNode>) -> Self {
        Self {
            class,
            wall: Some(wall),
            children,
            label: None,
        }
    }

    pub fn labeled(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn p(&self) -> Result<Intercept, LatticeError> {
        p_intercept(&self.class)
    }
}

/// Rooted tree of successive destabilizations, read in depth-first order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HNTree {
    pub root: TreeNode,
}

impl HNTree {
    pub fn new(root: TreeNode) -> Self {
        Self { root }
    }

    pub fn trivial(class: ChernClass) -> Self {
        Self::new(TreeNode::leaf(class))
    }

    pub fn root_class(&self) -> &ChernClass {
        &self.root.class
    }

    pub fn is_trivial(&self) -> bool {
        self.root.is_leaf()
    }

    /// Leaves in depth-first order with their paths (`root/0/1`).
    pub fn leaves(&self) -> Vec<(String, &TreeNode)> {
        let mut out = Vec::new();
        collect_leaves(&self.root, "root".to_string(), &mut out);
        out
    }

    /// Internal nodes in depth-first order with their paths.
    pub fn internal_nodes(&self) -> Vec<(String, &TreeNode)> {
        let mut out = Vec::new();
        collect_internal(&self.root, "root".to_string(), &mut out);
        out
    }
}

fn collect_leaves<'a>(node: &'a TreeNode, path: String, out: &mut Vec<(String, &'a TreeNode)>) {
    if node.is_leaf() {
        out.push((path, node));
        return;
    }
    for (i, child) in node.children.iter().enumerate() {
        collect_leaves(child, format!("{path}/{i}"), out);
    }
}

fn collect_internal<'a>(node: &'a TreeNode, path: String, out: &mut Vec<(String, &'a TreeNode)>) {
    if node.is_leaf() {
        return;
    }
    out.push((path.clone(), node));
    for (i, child) in node.children.iter().enumerate() {
        collect_internal(child, format!("{path}/{i}"), out);
    }
}
