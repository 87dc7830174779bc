//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write as _;

use crate::algebra::EffectAlgebra;
use crate::element::ElementId;
use crate::structure::sharp_elements;

/// Pairs `(a, b)` with `a < b` and nothing strictly between.
pub fn cover_pairs(e: &EffectAlgebra) -> Vec<(ElementId, ElementId)> {
    let mut out = Vec::new();
    for a in e.elements() {
        for b in e.up(a).iter().filter(|&b| b != a) {
            let between = e.up(a).intersection(e.down(b)).len();
            if between == 2 {
                out.push((a, b));
            }
        }
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Bottom-to-top Hasse diagram; sharp elements get a double outline.
pub fn to_dot(e: &EffectAlgebra) -> String {
    let sharp = sharp_elements(e);
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=ellipse];\n");
    for x in e.elements() {
        let marks = if sharp.contains(x) { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  n{} [label={}{}];", x.index(), quote(e.name(x)), marks);
    }
    for (a, b) in cover_pairs(e) {
        let _ = writeln!(out, "  n{} -> n{};", a.index(), b.index());
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog;

    #[test]
    fn chain_covers() {
        let c = catalog::chain(3);
        let pairs: Vec<(usize, usize)> = cover_pairs(&c).iter().map(|(a, b)| (a.index(), b.index())).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn dot_marks_sharp() {
        let g = catalog::gen18();
        let text = to_dot(&g);
        assert_eq!(text.matches("peripheries=2").count(), 14);
        assert!(text.contains("label=\"(d+d)'\""));
    }
}
