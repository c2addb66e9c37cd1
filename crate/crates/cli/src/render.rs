//! Hasse diagrams of a domain, optionally colored, as Graphviz text or SVG.

use std::fmt::Write;

use vramsey::{Coloring, Domain, ElementSet};

const PALETTE: [&str; 8] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45",
];

/// `{1,2}` is drawn as `12`, `∅` for the empty set.
pub fn label(x: ElementSet) -> String {
    if x.is_empty() {
        return "∅".into();
    }
    let sep = if x.ground() >= 10 { "," } else { "" };
    x.members().iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn fill(c: Option<&Coloring>, x: ElementSet) -> Option<&'static str> {
    c.and_then(|c| c.color(x)).map(|col| PALETTE[(col as usize - 1) % PALETTE.len()])
}

/// Cover pairs of the induced order: `x ⊂ y` with no present set between.
pub fn covers(d: &Domain) -> Vec<(ElementSet, ElementSet)> {
    let elems = d.elements();
    let mut out = Vec::new();
    for &x in &elems {
        for &y in &elems {
            if x == y || !x.is_subset(y) {
                continue;
            }
            let between = elems.iter().any(|&z| z != x && z != y && x.is_subset(z) && z.is_subset(y));
            if !between {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn dot(d: &Domain, c: Option<&Coloring>) -> String {
    let mut s = String::new();
    writeln!(s, "graph hasse {{").unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    writeln!(s, "  node [shape=circle, fontsize=10];").unwrap();
    for x in d.elements() {
        let style = match fill(c, x) {
            Some(col) => format!(", style=filled, fillcolor=\"{col}\""),
            None => String::new(),
        };
        let color = c.and_then(|c| c.color(x)).map(|k| format!(", xlabel=\"{k}\"")).unwrap_or_default();
        writeln!(s, "  n{} [label=\"{}\"{style}{color}];", x.bits(), label(x)).unwrap();
    }
    for size in 0..=d.n() {
        let same: Vec<String> = d
            .elements()
            .into_iter()
            .filter(|x| x.len() == size)
            .map(|x| format!("n{}", x.bits()))
            .collect();
        if !same.is_empty() {
            writeln!(s, "  {{ rank=same; {} }}", same.join("; ")).unwrap();
        }
    }
    for (x, y) in covers(d) {
        writeln!(s, "  n{} -- n{};", x.bits(), y.bits()).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn svg(d: &Domain, c: Option<&Coloring>) -> String {
    let elems = d.elements();
    let widest = (0..=d.n())
        .map(|k| elems.iter().filter(|x| x.len() == k).count())
        .max()
        .unwrap_or(1)
        .max(1);
    let (dx, dy, r) = (60.0, 70.0, 16.0);
    let width = widest as f64 * dx + dx;
    let height = (d.n() + 1) as f64 * dy + dy;
    let pos = |x: ElementSet| {
        let level: Vec<ElementSet> = elems.iter().copied().filter(|y| y.len() == x.len()).collect();
        let i = level.iter().position(|&y| y == x).unwrap() as f64;
        let cx = width / 2.0 + (i - (level.len() as f64 - 1.0) / 2.0) * dx;
        let cy = height - dy / 2.0 - x.len() as f64 * dy;
        (cx, cy)
    };
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    for (x, y) in covers(d) {
        let ((x1, y1), (x2, y2)) = (pos(x), pos(y));
        writeln!(s, r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>"#).unwrap();
    }
    for &x in &elems {
        let (cx, cy) = pos(x);
        let f = fill(c, x).unwrap_or("white");
        writeln!(s, r#"  <circle cx="{cx}" cy="{cy}" r="{r}" fill="{f}" stroke="black"/>"#).unwrap();
        writeln!(
            s,
            r#"  <text x="{cx}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
            cy + 4.0,
            label(x)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_covers() {
        let d = Domain::full(2).unwrap();
        assert_eq!(label(ElementSet::from_members(&[1, 2], 2).unwrap()), "12");
        assert_eq!(label(ElementSet::empty(2)), "∅");
        assert_eq!(covers(&d).len(), 4);
        let without_middle = Domain::without(2, &[ElementSet::from_members(&[1], 2).unwrap()]).unwrap();
        assert_eq!(covers(&without_middle).len(), 2);
    }

    #[test]
    fn dot_has_every_node_and_edge() {
        let d = Domain::full(3).unwrap();
        let text = dot(&d, None);
        assert_eq!(text.matches(" -- ").count(), 12);
        assert!(text.contains("n7 [label=\"123\"]"));
        let picture = svg(&d, None);
        assert_eq!(picture.matches("<circle").count(), 8);
    }
}
