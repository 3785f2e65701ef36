use super::format_bound;
use crate::tree::newick::format_height;
use crate::tree::{MultivaluedTree, Node};

/// Indented drawing, one node per line, children ordered by smallest
/// member. Internal nodes show `[h_l..h_u]` and any chosen fusion value.
pub fn render_text(tree: &MultivaluedTree) -> String {
    let tree = tree.canonicalized();
    let mut out = String::new();
    line(&tree, tree.root(), &mut out);
    walk(&tree, tree.root(), "", &mut out);
    out
}

fn line(tree: &MultivaluedTree, id: usize, out: &mut String) {
    match tree.node(id) {
        Node::Leaf { individual } => out.push_str(&tree.labels()[*individual]),
        Node::Internal {
            lower,
            upper,
            fusion,
            ..
        } => {
            let p = tree.precision();
            out.push_str(&format!(
                "[{}..{}]",
                format_bound(*lower, p),
                format_bound(*upper, p)
            ));
            if let Some(f) = fusion {
                if lower != upper {
                    out.push_str(&format!(" fusion {}", format_height(*f, p)));
                }
            }
        }
    }
    out.push('\n');
}

fn walk(tree: &MultivaluedTree, id: usize, prefix: &str, out: &mut String) {
    let children = tree.node(id).children();
    for (k, &c) in children.iter().enumerate() {
        let last = k + 1 == children.len();
        out.push_str(prefix);
        out.push_str(if last { "`-- " } else { "+-- " });
        line(tree, c, out);
        let deeper = format!("{prefix}{}", if last { "    " } else { "|   " });
        walk(tree, c, &deeper, out);
    }
}
