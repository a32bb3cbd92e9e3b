//! Report document, table layout and structured (JSON) tree.

use std::fmt::Write;

use itassoc_core::{FuzzyRule, RuleSet, TreeNode};
use serde::{Deserialize, Serialize};

/// The JSON report written by `mine --format json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rules: Vec<FuzzyRule>,
    pub total_weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeNode>,
}

impl Report {
    pub fn new(ruleset: &RuleSet, tree: Option<TreeNode>) -> Self {
        Report { rules: ruleset.rules().to_vec(), total_weight: ruleset.total_weight(), tree }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        text.push('\n');
        text
    }
}

/// Lossless hierarchical form of a tree.
pub fn tree_to_structured(tree: &TreeNode) -> serde_json::Value {
    serde_json::to_value(tree).expect("tree serialization cannot fail")
}

pub fn tree_from_structured(value: serde_json::Value) -> Result<TreeNode, serde_json::Error> {
    serde_json::from_value(value)
}

/// `%g`-style formatting with six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exponent) {
        let text = format!("{x:.5e}");
        let (mantissa, exp) = text.split_once('e').unwrap();
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (5 - exponent).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(text: &str) -> &str {
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.')
    } else {
        text
    }
}

/// Rule table: label tuple, weight, support and confidence per row, then a summary line.
pub fn render_table(ruleset: &RuleSet) -> String {
    const HEADER: [&str; 7] = ["trigger1", "trigger2", "delta_t", "consequence", "weight", "support", "confidence"];
    let rows: Vec<[String; 7]> = ruleset
        .iter()
        .map(|r| {
            [
                r.key.trigger1.clone(),
                r.key.trigger2.clone(),
                r.key.delta_t.clone(),
                r.key.consequence.clone(),
                format_sig6(r.weight),
                format_sig6(r.support),
                format_sig6(r.confidence),
            ]
        })
        .collect();

    let mut widths = HEADER.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }

    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let mut text = String::new();
        for (idx, (cell, width)) in cells.iter().zip(widths).enumerate() {
            if idx > 0 {
                text.push_str("  ");
            }
            let _ = write!(text, "{cell:<width$}");
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(&HEADER);
    for row in &rows {
        line(&row.each_ref().map(String::as_str));
    }
    let _ = writeln!(out, "rules: {}  total_weight: {}", ruleset.len(), format_sig6(ruleset.total_weight()));
    out
}
