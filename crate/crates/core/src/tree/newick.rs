//! Extended Newick: `((a,b,c)[2.000,4.000],d)[5.000,5.000];`
//!
//! ```text
//! tree     := node ";"
//! node     := label | "(" node ("," node)+ ")" "[" h_l "," h_u "]"
//! ```
//!
//! Heights are printed with `max(precision + 1, 3)` decimals, or with their
//! shortest round-tripping form when the tree carries no precision.

use super::{MultivaluedTree, Node, TreeError};
use crate::proximity::valid_label;

pub(crate) fn height_decimals(precision: Option<u32>) -> Option<usize> {
    precision.map(|p| (p as usize + 1).max(3))
}

pub(crate) fn format_height(v: f64, precision: Option<u32>) -> String {
    match height_decimals(precision) {
        Some(d) => format!("{:.*}", d, v),
        None => format!("{}", v),
    }
}

pub fn to_newick_extended(tree: &MultivaluedTree) -> String {
    fn write(tree: &MultivaluedTree, id: usize, out: &mut String) {
        match tree.node(id) {
            Node::Leaf { individual } => out.push_str(&tree.labels()[*individual]),
            Node::Internal {
                children,
                lower,
                upper,
                ..
            } => {
                out.push('(');
                for (k, &c) in children.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    write(tree, c, out);
                }
                out.push_str(")[");
                out.push_str(&format_height(*lower, tree.precision()));
                out.push(',');
                out.push_str(&format_height(*upper, tree.precision()));
                out.push(']');
            }
        }
    }
    let mut out = String::new();
    write(tree, tree.root(), &mut out);
    out.push(';');
    out
}

enum Parsed {
    Leaf(String),
    Internal(Vec<Parsed>, f64, f64),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    decimals: Vec<usize>,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, TreeError> {
        Err(TreeError::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<(), TreeError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => self.error(format!("expected `{want}`, found `{c}`")),
            None => self.error(format!("expected `{want}`, found end of input")),
        }
    }

    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() || "(),;[]:".contains(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn height(&mut self) -> Result<f64, TreeError> {
        let start = self.pos;
        let tok = self.token();
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.decimals
                    .push(tok.split_once('.').map_or(0, |(_, f)| f.len()));
                Ok(v)
            }
            _ => {
                self.pos = start;
                self.error(format!("`{tok}` is not a height"))
            }
        }
    }

    fn node(&mut self) -> Result<Parsed, TreeError> {
        if self.peek() == Some('(') {
            self.expect('(')?;
            let mut children = vec![self.node()?];
            while self.peek() == Some(',') {
                self.expect(',')?;
                children.push(self.node()?);
            }
            self.expect(')')?;
            if children.len() < 2 {
                return self.error("internal node needs at least two children");
            }
            self.expect('[')?;
            let lower = self.height()?;
            self.expect(',')?;
            let upper = self.height()?;
            self.expect(']')?;
            Ok(Parsed::Internal(children, lower, upper))
        } else {
            let label = self.token();
            if !valid_label(label) {
                return self.error("expected a label or `(`");
            }
            Ok(Parsed::Leaf(label.to_string()))
        }
    }
}

/// Parses the extended Newick form. Leaves are numbered in order of
/// appearance, so for canonical trees this is the exact inverse of
/// [`to_newick_extended`].
pub fn parse_newick_extended(text: &str) -> Result<MultivaluedTree, TreeError> {
    let mut p = Parser {
        text,
        pos: 0,
        decimals: Vec::new(),
    };
    let parsed = p.node()?;
    p.expect(';')?;
    if p.peek().is_some() {
        return p.error("trailing input after `;`");
    }

    let mut labels = Vec::new();
    collect_labels(&parsed, &mut labels);
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
        return Err(TreeError::Parse {
            position: 0,
            message: format!("label `{dup}` appears twice"),
        });
    }
    let n = labels.len();
    let mut nodes: Vec<Node> = (0..n).map(|i| Node::Leaf { individual: i }).collect();
    let mut next_leaf = 0;
    let root = build(&parsed, &mut nodes, &mut next_leaf);

    let precision = match p.decimals.first() {
        Some(&d) if d >= 3 && p.decimals.iter().all(|&x| x == d) => Some(d as u32 - 1),
        _ => None,
    };
    Ok(MultivaluedTree::from_parts(labels, nodes, root)?.with_tags(precision, None, None))
}

fn collect_labels(p: &Parsed, out: &mut Vec<String>) {
    match p {
        Parsed::Leaf(l) => out.push(l.clone()),
        Parsed::Internal(children, ..) => children.iter().for_each(|c| collect_labels(c, out)),
    }
}

fn build(p: &Parsed, nodes: &mut Vec<Node>, next_leaf: &mut usize) -> usize {
    match p {
        Parsed::Leaf(_) => {
            *next_leaf += 1;
            *next_leaf - 1
        }
        Parsed::Internal(children, lower, upper) => {
            let ids = children
                .iter()
                .map(|c| build(c, nodes, next_leaf))
                .collect();
            nodes.push(Node::Internal {
                children: ids,
                lower: *lower,
                upper: *upper,
                fusion: None,
            });
            nodes.len() - 1
        }
    }
}
