//! Static drawings of multivalued trees.

mod svg;
mod text;

pub use svg::{render_svg, SvgOptions};
pub use text::render_text;

/// Interval bound at the matrix precision, or its shortest form.
pub(crate) fn format_bound(v: f64, precision: Option<u32>) -> String {
    match precision {
        Some(p) => format!("{:.*}", p as usize, v),
        None => format!("{v}"),
    }
}
