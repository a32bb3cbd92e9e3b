//! Decision-tree view of a rule set: root -> trigger1 -> trigger2 -> dT -> consequence.
//!
//! Rules sharing a label prefix share the internal nodes for it. Only leaves
//! carry metrics. Siblings are ordered by descending subtree weight, ties by
//! label.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::miner::{FuzzyRule, RuleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Level {
    Root,
    Trigger1,
    Trigger2,
    DeltaT,
    Consequence,
}

impl Level {
    fn child(self) -> Option<Level> {
        match self {
            Level::Root => Some(Level::Trigger1),
            Level::Trigger1 => Some(Level::Trigger2),
            Level::Trigger2 => Some(Level::DeltaT),
            Level::DeltaT => Some(Level::Consequence),
            Level::Consequence => None,
        }
    }

    fn depth(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LeafMetrics {
    pub support: f64,
    pub confidence: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeNode {
    pub level: Level,
    /// Empty for the root.
    pub label: String,
    pub children: Vec<TreeNode>,
    /// Present exactly on consequence-level nodes.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none", flatten))]
    pub leaf_metrics: Option<LeafMetrics>,
}

impl TreeNode {
    pub fn root() -> Self {
        TreeNode { level: Level::Root, label: String::new(), children: Vec::new(), leaf_metrics: None }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty() && self.level == Level::Consequence
    }

    /// Number of nodes in the subtree, including `self`.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(TreeNode::node_count).sum::<usize>()
    }

    pub fn edge_count(&self) -> usize {
        self.node_count() - 1
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(TreeNode::leaf_count).sum()
        }
    }

    /// Every root-to-leaf path as its four labels plus the leaf metrics.
    pub fn paths(&self) -> Vec<([String; 4], LeafMetrics)> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        collect_paths(self, &mut prefix, &mut out);
        out
    }
}

fn collect_paths<'a>(node: &'a TreeNode, prefix: &mut Vec<&'a str>, out: &mut Vec<([String; 4], LeafMetrics)>) {
    if node.level != Level::Root {
        prefix.push(&node.label);
    }
    if let (Some(metrics), [l1, l2, ldt, l3]) = (node.leaf_metrics, prefix.as_slice()) {
        out.push(([(*l1).into(), (*l2).into(), (*ldt).into(), (*l3).into()], metrics));
    }
    for child in &node.children {
        collect_paths(child, prefix, out);
    }
    if node.level != Level::Root {
        prefix.pop();
    }
}

/// Builds the prefix-merged four-level tree for `ruleset`.
pub fn build_tree(ruleset: &RuleSet) -> TreeNode {
    let rules: Vec<&FuzzyRule> = ruleset.iter().collect();
    let mut root = TreeNode::root();
    root.children = build_level(&rules, Level::Trigger1);
    root
}

fn build_level(rules: &[&FuzzyRule], level: Level) -> Vec<TreeNode> {
    let index = level.depth() - 1;
    let mut groups: BTreeMap<&str, Vec<&FuzzyRule>> = BTreeMap::new();
    for rule in rules {
        groups.entry(rule.key.labels()[index]).or_default().push(rule);
    }

    // BTreeMap iteration already orders by label, so a stable sort on weight
    // leaves ties in lexicographic order.
    let mut weighted: Vec<(f64, TreeNode)> = groups
        .into_iter()
        .map(|(label, members)| {
            let weight: f64 = members.iter().map(|r| r.weight).sum();
            let node = match level.child() {
                Some(next) => TreeNode {
                    level,
                    label: label.into(),
                    children: build_level(&members, next),
                    leaf_metrics: None,
                },
                None => TreeNode {
                    level,
                    label: label.into(),
                    children: Vec::new(),
                    leaf_metrics: Some(LeafMetrics { support: members[0].support, confidence: members[0].confidence }),
                },
            };
            (weight, node)
        })
        .collect();
    weighted.sort_by(|x, y| y.0.total_cmp(&x.0));
    weighted.into_iter().map(|(_, node)| node).collect()
}

fn display_label(node: &TreeNode) -> String {
    match (node.level, node.leaf_metrics) {
        (Level::Root, _) => String::from("(root)"),
        (_, Some(m)) => format!("{} [sup={:.4}, conf={:.4}]", node.label, m.support, m.confidence),
        (_, None) => node.label.clone(),
    }
}

/// Indented text rendering, one node per line, newline-terminated.
pub fn render_ascii(tree: &TreeNode) -> String {
    let mut out = String::new();
    out.push_str(&display_label(tree));
    out.push('\n');
    render_ascii_children(tree, "", &mut out);
    out
}

fn render_ascii_children(node: &TreeNode, indent: &str, out: &mut String) {
    let last = node.children.len().saturating_sub(1);
    for (idx, child) in node.children.iter().enumerate() {
        let (branch, continuation) = if idx == last { ("`-- ", "    ") } else { ("|-- ", "|   ") };
        let _ = writeln!(out, "{indent}{branch}{}", display_label(child));
        render_ascii_children(child, &format!("{indent}{continuation}"), out);
    }
}

/// Graphviz DOT rendering. Node identifiers are the escaped root-to-node label paths.
pub fn render_dot(tree: &TreeNode) -> String {
    let mut out = String::from("digraph rules {\n  node [shape=box];\n");
    let root_id = String::from("root");
    let _ = writeln!(out, "  \"{}\" [label=\"(root)\"];", root_id);
    render_dot_children(tree, &root_id, &mut out);
    out.push_str("}\n");
    out
}

fn render_dot_children(node: &TreeNode, parent_id: &str, out: &mut String) {
    for child in &node.children {
        let id = format!("{parent_id}/{}", path_component(&child.label));
        let label = match child.leaf_metrics {
            Some(m) => format!("{}\\nsup={:.4} conf={:.4}", dot_escape(&child.label), m.support, m.confidence),
            None => dot_escape(&child.label),
        };
        let shape = if child.leaf_metrics.is_some() { ", shape=ellipse" } else { "" };
        let _ = writeln!(out, "  \"{}\" [label=\"{label}\"{shape}];", dot_escape(&id));
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", dot_escape(parent_id), dot_escape(&id));
        render_dot_children(child, &id, out);
    }
}

fn path_component(label: &str) -> String {
    label.replace('%', "%25").replace('/', "%2F")
}

fn dot_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            _ => out.push(ch),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::miner::{aggregate, FuzzyInstance, RuleKey};
    use alloc::vec;

    fn example_rules() -> RuleSet {
        let inst = |l: [&str; 4], weight| FuzzyInstance { key: RuleKey::new(l[0], l[1], l[2], l[3]), weight };
        aggregate(&[
            inst(["Small", "Medium", "Short Time After", "Medium"], 0.5),
            inst(["Small", "Medium", "Short Time After", "Large"], 0.5),
            inst(["Small", "Medium", "Long Time After", "Large"], 1.0),
            inst(["Medium", "Small", "Long Time After", "Medium"], 1.0),
        ])
    }

    #[test]
    fn example_tree_shape() {
        let tree = build_tree(&example_rules());
        assert_eq!(tree.children.len(), 2);
        assert_eq!(tree.children[0].label, "Small");
        let small_medium = &tree.children[0].children[0];
        assert_eq!(small_medium.label, "Medium");
        let dts: Vec<_> = small_medium.children.iter().map(|n| (n.label.as_str(), n.children.len())).collect();
        assert_eq!(dts, vec![("Long Time After", 1), ("Short Time After", 2)]);
        assert_eq!(tree.leaf_count(), 4);
        assert_eq!(tree.node_count(), 12);
        assert_eq!(tree.edge_count(), 11);
    }

    #[test]
    fn empty_and_single() {
        let empty = build_tree(&RuleSet::default());
        assert!(empty.children.is_empty());
        assert_eq!(render_ascii(&empty), "(root)\n");
        assert_eq!(render_dot(&empty).matches("->").count(), 0);

        let single = build_tree(&aggregate(&[FuzzyInstance { key: RuleKey::new("a", "b", "c", "d"), weight: 0.3 }]));
        assert_eq!(single.node_count(), 5);
        let mut node = &single;
        for _ in 0..4 {
            assert_eq!(node.children.len(), 1);
            node = &node.children[0];
        }
        assert_eq!(node.level, Level::Consequence);
        assert_eq!(node.leaf_metrics, Some(LeafMetrics { support: 1.0, confidence: 1.0 }));
    }

    #[test]
    fn ascii_rendering() {
        let text = render_ascii(&build_tree(&example_rules()));
        let expected = "\
(root)
|-- Small
|   `-- Medium
|       |-- Long Time After
|       |   `-- Large [sup=0.3333, conf=0.5000]
|       `-- Short Time After
|           |-- Large [sup=0.1667, conf=0.2500]
|           `-- Medium [sup=0.1667, conf=0.2500]
`-- Medium
    `-- Small
        `-- Long Time After
            `-- Medium [sup=0.3333, conf=1.0000]
";
        assert_eq!(text, expected);
    }

    #[test]
    fn dot_identifiers_follow_paths() {
        let dot = render_dot(&build_tree(&example_rules()));
        assert!(dot.starts_with("digraph rules {\n"));
        assert!(dot.contains("\"root/Medium/Small/Long Time After/Medium\" [label=\"Medium\\nsup=0.3333 conf=1.0000\", shape=ellipse];"));
        assert_eq!(dot.matches(" -> ").count(), 11);
    }

    #[test]
    fn dot_escapes_awkward_labels() {
        let rs = aggregate(&[FuzzyInstance { key: RuleKey::new("a/b", "q\"x", "back\\slash", "100%"), weight: 1.0 }]);
        let dot = render_dot(&build_tree(&rs));
        assert!(dot.contains("\"root/a%2Fb\" [label=\"a/b\"];"));
        assert!(dot.contains("q\\\"x"));
        assert!(dot.contains("back\\\\slash"));
        assert!(dot.contains("100%25"));
    }

    #[test]
    fn paths_reconstruct_rules() {
        let rs = example_rules();
        let paths = build_tree(&rs).paths();
        assert_eq!(paths.len(), rs.len());
        for rule in &rs {
            let labels = rule.key.labels().map(String::from);
            let (_, m) = paths.iter().find(|(l, _)| *l == labels).unwrap();
            assert_eq!((m.support, m.confidence), (rule.support, rule.confidence));
        }
    }
}
