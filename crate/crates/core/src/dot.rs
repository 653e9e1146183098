//! Graphviz output. Node and edge order follow element and world order so the
//! text is byte-stable across runs.

use std::fmt::Write;

use crate::algebra::{Algebra, ElementId};
use crate::error::Result;
use crate::filters::stone_embed;
use crate::frames::AwarenessModel;

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\"").replace('\n', "\\n"))
}

/// Pairs `x < y` with nothing strictly between them.
fn covers(alg: &Algebra) -> Vec<(ElementId, ElementId)> {
    let lt = |a: ElementId, b: ElementId| a != b && alg.leq(a, b);
    let mut out = Vec::new();
    for x in alg.elements() {
        for y in alg.elements() {
            if lt(x, y) && !alg.elements().any(|z| lt(x, z) && lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Hasse diagram of the order, one colour per domain, larger elements on top.
pub fn hasse(alg: &Algebra) -> Result<String> {
    hasse_with_labels(alg, &|x| alg.label(x).to_string())
}

fn hasse_with_labels(alg: &Algebra, label: &dyn Fn(ElementId) -> String) -> Result<String> {
    let domains = alg.domain_lattice()?;
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box, style=rounded];\n");
    for x in alg.elements() {
        let d = domains.iter().position(|&t| t == alg.relative_top(x)).unwrap_or(0);
        let colour = PALETTE[d % PALETTE.len()];
        let _ = writeln!(s, "  {} [label={}, color=\"{colour}\", fontcolor=\"{colour}\"];", x.0, quote(&label(x)));
    }
    for (x, y) in covers(alg) {
        let _ = writeln!(s, "  {} -> {} [arrowhead=none];", x.0, y.0);
    }
    s.push_str("}\n");
    Ok(s)
}

/// The frame of a model: `R` solid, strict `≥` dashed from the larger world,
/// worlds coloured by the set of propositions in their language.
pub fn frame(m: &AwarenessModel) -> String {
    let f = &m.frame;
    let mut langs: Vec<Vec<String>> = Vec::new();
    let mut s = String::from("digraph frame {\n  node [shape=circle];\n");
    for w in 0..f.len() {
        let lang: Vec<String> = m.entries().filter(|(_, l, _)| l >> w & 1 == 1).map(|(p, _, _)| p.to_string()).collect();
        let true_here: Vec<String> = m.entries().filter(|(_, _, v)| v >> w & 1 == 1).map(|(p, _, _)| p.to_string()).collect();
        let idx = langs.iter().position(|l| *l == lang).unwrap_or_else(|| {
            langs.push(lang.clone());
            langs.len() - 1
        });
        let colour = PALETTE[idx % PALETTE.len()];
        let label = format!("{}\nL: {{{}}}\nV: {{{}}}", f.worlds()[w], lang.join(","), true_here.join(","));
        let _ = writeln!(s, "  {} [label={}, color=\"{colour}\", fontcolor=\"{colour}\"];", quote(&f.worlds()[w]), quote(&label));
    }
    for w in 0..f.len() {
        for v in 0..f.len() {
            if f.related(w, v) {
                let _ = writeln!(s, "  {} -> {};", quote(&f.worlds()[w]), quote(&f.worlds()[v]));
            }
        }
    }
    for w in 0..f.len() {
        for v in 0..f.len() {
            if w != v && f.geq(w, v) && !f.geq(v, w) {
                let _ = writeln!(s, "  {} -> {} [style=dashed, arrowhead=empty];", quote(&f.worlds()[w]), quote(&f.worlds()[v]));
            }
        }
    }
    // Equivalent worlds under ≥ get one undirected dashed edge.
    for w in 0..f.len() {
        for v in w + 1..f.len() {
            if f.geq(w, v) && f.geq(v, w) {
                let _ = writeln!(s, "  {} -> {} [style=dashed, dir=both, arrowhead=empty, arrowtail=empty];", quote(&f.worlds()[w]), quote(&f.worlds()[v]));
            }
        }
    }
    s.push_str("}\n");
    s
}

/// The Hasse diagram of the algebra with each element labelled by its image
/// `(truth, domain)` over the points of `F^RB`.
pub fn embedding(alg: &Algebra) -> Result<String> {
    let e = stone_embed(alg)?;
    let names: Vec<String> = e
        .points
        .iter()
        .map(|p| p.generator(alg).map_or_else(|| p.names(alg).join("·"), |g| format!("^{}", alg.label(g))))
        .collect();
    let set = |bits: u128| -> String {
        let xs: Vec<&str> = (0..names.len()).filter(|&i| bits >> i & 1 == 1).map(|i| names[i].as_str()).collect();
        format!("{{{}}}", xs.join(","))
    };
    hasse_with_labels(alg, &|x| {
        let p = e.image[x.index()];
        format!("{}\n({}, {})", alg.label(x), set(p.truth), set(p.domain))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hasse_of_four_element_boolean() {
        let a = Algebra::powerset(&["a", "b"]);
        let d = hasse(&a).unwrap();
        assert_eq!(d.matches("arrowhead=none").count(), 4);
        assert_eq!(d, hasse(&a).unwrap());
    }

    #[test]
    fn frame_lists_every_edge() {
        let m = fixtures::figure3().unwrap();
        let d = frame(&m);
        let r: usize = (0..5).map(|w| m.frame.successors(w).count_ones() as usize).sum();
        assert_eq!(d.lines().filter(|l| l.contains("->") && !l.contains("dashed")).count(), r);
    }

    #[test]
    fn embedding_labels_points_by_generator() {
        let d = embedding(&fixtures::example1().unwrap()).unwrap();
        assert!(d.contains("^X_R"));
    }
}
