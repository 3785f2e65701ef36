use std::fmt::Write;

use super::format_bound;
use crate::tree::{MultivaluedTree, Node};

/// Layout of the SVG drawing, in pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub width: f64,
    pub row_height: f64,
    /// Room on the left for leaf labels.
    pub label_width: f64,
    pub margin: f64,
    pub ticks: usize,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 640.0,
            row_height: 24.0,
            label_width: 80.0,
            margin: 20.0,
            ticks: 5,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Multidendrogram with heights on the horizontal axis. Leaves sit on the
/// left; every node with `h_u > h_l` gets a shaded `band` rectangle over
/// its fusion interval, spanning its children vertically.
pub fn render_svg(tree: &MultivaluedTree, options: &SvgOptions) -> String {
    let tree = tree.canonicalized();
    let SvgOptions {
        width,
        row_height,
        label_width,
        margin,
        ticks,
    } = *options;

    let mut leaf_order = Vec::new();
    order_leaves(&tree, tree.root(), &mut leaf_order);
    let rows = leaf_order.len();
    let axis_y = margin + rows as f64 * row_height;
    let height = axis_y + 2.0 * margin;

    let internal = tree.internal_postorder();
    let (lo, hi) = internal.iter().fold((0.0_f64, 0.0_f64), |(lo, hi), &id| {
        let (l, u) = tree.node(id).interval();
        (lo.min(l), hi.max(u))
    });
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x0 = margin + label_width;
    let plot = width - x0 - margin;
    let x = |h: f64| x0 + (h - lo) / span * plot;

    let mut y = vec![0.0; tree.nodes().len()];
    for (row, &id) in leaf_order.iter().enumerate() {
        y[id] = margin + (row as f64 + 0.5) * row_height;
    }
    for &id in &internal {
        let cs = tree.node(id).children();
        y[id] = cs.iter().map(|&c| y[c]).sum::<f64>() / cs.len() as f64;
    }
    let at = |id: usize| match tree.node(id) {
        Node::Leaf { .. } => x(0.0),
        Node::Internal { lower, .. } => x(*lower),
    };

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    s.push_str("<style>.band{fill:#808080;fill-opacity:0.35;stroke:none}.link{stroke:#000;stroke-width:1.5;fill:none}.label,.tick{font-family:sans-serif;font-size:12px}</style>\n");

    for &id in &internal {
        let (lower, upper) = tree.node(id).interval();
        let cs = tree.node(id).children();
        let top = cs.iter().map(|&c| y[c]).fold(f64::INFINITY, f64::min);
        let bottom = cs.iter().map(|&c| y[c]).fold(f64::NEG_INFINITY, f64::max);
        if upper > lower {
            writeln!(
                s,
                r#"<rect class="band" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                x(lower),
                top,
                x(upper) - x(lower),
                bottom - top
            )
            .unwrap();
        }
        writeln!(
            s,
            r#"<line class="link" x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}"/>"#,
            x(lower),
            top,
            bottom
        )
        .unwrap();
        for &c in cs {
            writeln!(
                s,
                r#"<line class="link" x1="{:.2}" y1="{2:.2}" x2="{:.2}" y2="{2:.2}"/>"#,
                at(c),
                x(lower),
                y[c]
            )
            .unwrap();
        }
    }

    for &id in &leaf_order {
        if let Node::Leaf { individual } = tree.node(id) {
            writeln!(
                s,
                r#"<text class="label" x="{:.2}" y="{:.2}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
                x0 - 6.0,
                y[id],
                escape(&tree.labels()[*individual])
            )
            .unwrap();
        }
    }

    if !internal.is_empty() {
        writeln!(
            s,
            r#"<line class="link" x1="{:.2}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}"/>"#,
            x(lo),
            x(hi)
        )
        .unwrap();
        let steps = ticks.max(1);
        for k in 0..=steps {
            let h = lo + span * k as f64 / steps as f64;
            writeln!(
                s,
                r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                x(h),
                axis_y + margin * 0.75,
                format_bound(h, tree.precision().map(|p| p + 1))
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

fn order_leaves(tree: &MultivaluedTree, id: usize, out: &mut Vec<usize>) {
    match tree.node(id) {
        Node::Leaf { .. } => out.push(id),
        Node::Internal { children, .. } => {
            children.iter().for_each(|&c| order_leaves(tree, c, out))
        }
    }
}
