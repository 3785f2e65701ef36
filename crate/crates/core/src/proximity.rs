//! Dissimilarity matrices over labelled individuals.
//!
//! Values are stored as a condensed upper triangle. A matrix may carry a
//! decimal precision; when it does, the agglomerator compares distances only
//! after rounding them to that many decimals, so ties are a property of the
//! data's precision rather than of floating-point noise.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProximityError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("asymmetric input: entry ({row},{col}) = {upper} but ({col},{row}) = {lower}")]
    AsymmetricInput {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },
    #[error("no value given for pair ({first}, {second})")]
    MissingPair { first: String, second: String },
    #[error("pair ({first}, {second}) listed more than once")]
    DuplicatePair { first: String, second: String },
    #[error("negative dissimilarity {value} for pair ({first}, {second})")]
    NegativeValue {
        first: String,
        second: String,
        value: f64,
    },
    #[error("value {value} for pair ({first}, {second}) is outside [0, 1]")]
    OutOfRange {
        first: String,
        second: String,
        value: f64,
    },
    #[error("non-finite value for pair ({first}, {second})")]
    NonFinite { first: String, second: String },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`: labels must be non-empty and free of whitespace and `(),;[]:`")]
    InvalidLabel(String),
    #[error("diagonal entry for `{label}` is {value}, expected 0")]
    NonZeroDiagonal { label: String, value: f64 },
    #[error("expected {expected} condensed values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("unknown matrix format `{0}`")]
    UnknownFormat(String),
}

/// Whether the stored values were given as distances or derived from
/// similarities with `d = 1 - s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProximityKind {
    Distance,
    FromSimilarity,
}

/// Text layouts understood by [`ProximityMatrix::parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    /// `n` rows of `n` values, optionally preceded by a line of labels.
    Square,
    /// Row `i` (1-based) holds `i` values ending with the zero diagonal,
    /// optionally preceded by a line of labels.
    Lower,
    /// Lines `i j value` with 1-based indices.
    Pairs,
    /// Lines `labelA labelB value`.
    LabeledPairs,
}

impl MatrixFormat {
    pub const ALL: [MatrixFormat; 4] = [
        MatrixFormat::Square,
        MatrixFormat::Lower,
        MatrixFormat::Pairs,
        MatrixFormat::LabeledPairs,
    ];
}

impl FromStr for MatrixFormat {
    type Err = ProximityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "square" => Ok(MatrixFormat::Square),
            "lower" | "lower-triangle" | "lower_triangle" => Ok(MatrixFormat::Lower),
            "pairs" => Ok(MatrixFormat::Pairs),
            "labeled-pairs" | "labeled_pairs" | "labelled-pairs" => Ok(MatrixFormat::LabeledPairs),
            other => Err(ProximityError::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for MatrixFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixFormat::Square => "square",
            MatrixFormat::Lower => "lower",
            MatrixFormat::Pairs => "pairs",
            MatrixFormat::LabeledPairs => "labeled-pairs",
        })
    }
}

/// Symmetric dissimilarity matrix with condensed storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximityMatrix {
    labels: Vec<String>,
    values: Vec<f64>,
    precision: Option<u32>,
    kind: ProximityKind,
}

/// Position of pair `(i, j)`, `i < j`, in a condensed upper triangle over `n` items.
#[inline]
pub fn condensed_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    n * i - i * (i + 1) / 2 + (j - i - 1)
}

pub(crate) fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || "(),;[]:".contains(c))
}

impl ProximityMatrix {
    /// Builds a matrix from labels and the condensed upper triangle
    /// (row-major, `i < j`). No precision is attached.
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self, ProximityError> {
        let n = labels.len();
        let expected = n * n.saturating_sub(1) / 2;
        if values.len() != expected {
            return Err(ProximityError::LengthMismatch {
                expected,
                actual: values.len(),
            });
        }
        check_labels(&labels)?;
        let m = ProximityMatrix {
            labels,
            values,
            precision: None,
            kind: ProximityKind::Distance,
        };
        for i in 0..n {
            for j in i + 1..n {
                let v = m.get(i, j);
                if !v.is_finite() {
                    return Err(ProximityError::NonFinite {
                        first: m.labels[i].clone(),
                        second: m.labels[j].clone(),
                    });
                }
                if v < 0.0 {
                    return Err(ProximityError::NegativeValue {
                        first: m.labels[i].clone(),
                        second: m.labels[j].clone(),
                        value: v,
                    });
                }
            }
        }
        Ok(m)
    }

    /// Builds an `n`-individual matrix labelled `x1..xn` from a pair function.
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, ProximityError> {
        let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                values.push(f(i, j));
            }
        }
        ProximityMatrix::new(default_labels(n), values)
    }

    pub fn with_precision(mut self, precision: Option<u32>) -> Self {
        self.precision = precision;
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Condensed upper triangle, row-major.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn kind(&self) -> ProximityKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 0.0,
            Less => self.values[condensed_index(self.len(), i, j)],
            Greater => self.values[condensed_index(self.len(), j, i)],
        }
    }

    /// The value used when testing two distances for equality.
    pub fn tie_key(&self, value: f64) -> f64 {
        tie_key(value, self.precision)
    }

    /// Pairs of distinct individuals at distance zero.
    pub fn zero_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.get(i, j) == 0.0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Reorders individuals: position `k` of the result holds individual `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> ProximityMatrix {
        assert_eq!(order.len(), self.len(), "permutation length mismatch");
        let n = self.len();
        let labels = order.iter().map(|&k| self.labels[k].clone()).collect();
        let mut values = Vec::with_capacity(self.values.len());
        for a in 0..n {
            for b in a + 1..n {
                values.push(self.get(order[a], order[b]));
            }
        }
        ProximityMatrix {
            labels,
            values,
            precision: self.precision,
            kind: self.kind,
        }
    }

    /// Replaces each similarity `s` by `1 - s`.
    ///
    /// The result is re-rounded to the matrix precision, or when there is
    /// none, to the decimals of each value's shortest representation, so that
    /// decimal data stays decimal.
    pub fn similarity_to_dissimilarity(&self) -> Result<ProximityMatrix, ProximityError> {
        let n = self.len();
        let mut values = Vec::with_capacity(self.values.len());
        for i in 0..n {
            for j in i + 1..n {
                let s = self.get(i, j);
                if !(0.0..=1.0).contains(&s) {
                    return Err(ProximityError::OutOfRange {
                        first: self.labels[i].clone(),
                        second: self.labels[j].clone(),
                        value: s,
                    });
                }
                let places = self.precision.unwrap_or_else(|| shortest_decimals(s));
                values.push(round_half_away(1.0 - s, places));
            }
        }
        Ok(ProximityMatrix {
            labels: self.labels.clone(),
            values,
            precision: self.precision,
            kind: ProximityKind::FromSimilarity,
        })
    }

    /// Rounds every value half-away-from-zero to `places` decimals and
    /// records that precision for tie detection.
    pub fn round_to_precision(&self, places: u32) -> ProximityMatrix {
        ProximityMatrix {
            labels: self.labels.clone(),
            values: self
                .values
                .iter()
                .map(|&v| round_half_away(v, places))
                .collect(),
            precision: Some(places),
            kind: self.kind,
        }
    }

    /// Parses `text` in the given layout. The precision is inferred as the
    /// largest number of decimals among the numeric tokens.
    pub fn parse(text: &str, format: MatrixFormat) -> Result<ProximityMatrix, ProximityError> {
        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("")))
            .map(|(k, l)| (k, l.split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, toks)| !toks.is_empty())
            .collect();
        match format {
            MatrixFormat::Square => parse_square(&lines),
            MatrixFormat::Lower => parse_lower(&lines),
            MatrixFormat::Pairs => parse_pairs(&lines, false),
            MatrixFormat::LabeledPairs => parse_pairs(&lines, true),
        }
    }

    /// Writes the matrix in the given layout. With a precision, values are
    /// printed with exactly that many decimals; otherwise with their shortest
    /// round-tripping representation.
    pub fn serialize(&self, format: MatrixFormat) -> String {
        let n = self.len();
        let fmt_value = |v: f64| -> String {
            match self.precision {
                Some(p) => format!("{:.*}", p as usize, v),
                None => format!("{}", v),
            }
        };
        let mut out = String::new();
        match format {
            MatrixFormat::Square | MatrixFormat::Lower => {
                if n > 0 {
                    out.push_str(&self.labels.join(" "));
                    out.push('\n');
                }
                for i in 0..n {
                    let cols = if format == MatrixFormat::Square {
                        n
                    } else {
                        i + 1
                    };
                    let row: Vec<String> = (0..cols).map(|j| fmt_value(self.get(i, j))).collect();
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
            }
            MatrixFormat::Pairs => {
                for i in 0..n {
                    for j in i + 1..n {
                        let _ = writeln!(out, "{} {} {}", i + 1, j + 1, fmt_value(self.get(i, j)));
                    }
                }
            }
            MatrixFormat::LabeledPairs => {
                for i in 0..n {
                    for j in i + 1..n {
                        let _ = writeln!(
                            out,
                            "{} {} {}",
                            self.labels[i],
                            self.labels[j],
                            fmt_value(self.get(i, j))
                        );
                    }
                }
            }
        }
        out
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("x{k}")).collect()
}

fn check_labels(labels: &[String]) -> Result<(), ProximityError> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !valid_label(l) {
            return Err(ProximityError::InvalidLabel(l.clone()));
        }
        if !seen.insert(l.as_str()) {
            return Err(ProximityError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Equality key for a distance under an optional decimal precision.
pub fn tie_key(value: f64, precision: Option<u32>) -> f64 {
    match precision {
        Some(p) => round_half_away(value, p),
        None => value,
    }
}

/// Number of decimals in the shortest round-tripping representation of `v`.
pub fn shortest_decimals(v: f64) -> u32 {
    let s = format!("{}", v);
    s.split_once('.').map_or(0, |(_, frac)| frac.len() as u32)
}

/// Rounds `v` half-away-from-zero at `places` decimals.
///
/// Operates on the shortest decimal representation of `v`, so a value
/// written as `0.0375` rounds to `0.04` even though its binary value is
/// slightly off.
pub fn round_half_away(v: f64, places: u32) -> f64 {
    if !v.is_finite() {
        return v;
    }
    let text = format!("{}", v.abs());
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text.as_str(), ""));
    let places = places as usize;
    if frac_part.len() <= places {
        return v;
    }
    let mut digits: Vec<u8> = int_part
        .bytes()
        .chain(frac_part.bytes().take(places))
        .map(|b| b - b'0')
        .collect();
    if frac_part.as_bytes()[places] >= b'5' {
        let mut k = digits.len();
        loop {
            if k == 0 {
                digits.insert(0, 1);
                break;
            }
            k -= 1;
            if digits[k] == 9 {
                digits[k] = 0;
            } else {
                digits[k] += 1;
                break;
            }
        }
    }
    let split = digits.len() - places;
    let mut s = String::with_capacity(digits.len() + 2);
    for (k, d) in digits.iter().enumerate() {
        if k == split {
            s.push('.');
        }
        s.push((b'0' + d) as char);
    }
    let magnitude: f64 = s.parse().expect("digits form a valid number");
    if v < 0.0 {
        -magnitude
    } else {
        magnitude
    }
}

fn token_decimals(tok: &str) -> u32 {
    let (mantissa, exponent) = match tok.find(['e', 'E']) {
        Some(k) => (&tok[..k], tok[k + 1..].parse::<i64>().unwrap_or(0)),
        None => (tok, 0),
    };
    let frac = mantissa.split_once('.').map_or(0, |(_, f)| f.len() as i64);
    (frac - exponent).max(0) as u32
}

struct Reader {
    precision: u32,
}

impl Reader {
    fn number(&mut self, line: usize, tok: &str) -> Result<f64, ProximityError> {
        let v: f64 = tok.parse().map_err(|_| ProximityError::Malformed {
            line,
            message: format!("`{tok}` is not a number"),
        })?;
        if !v.is_finite() {
            return Err(ProximityError::Malformed {
                line,
                message: format!("`{tok}` is not finite"),
            });
        }
        self.precision = self.precision.max(token_decimals(tok));
        Ok(v)
    }
}

fn all_numeric(toks: &[&str]) -> bool {
    toks.iter().all(|t| t.parse::<f64>().is_ok())
}

fn finish(
    labels: Vec<String>,
    values: Vec<f64>,
    precision: u32,
) -> Result<ProximityMatrix, ProximityError> {
    Ok(ProximityMatrix::new(labels, values)?.with_precision(Some(precision)))
}

fn parse_square(lines: &[(usize, Vec<&str>)]) -> Result<ProximityMatrix, ProximityError> {
    if lines.is_empty() {
        return finish(Vec::new(), Vec::new(), 0);
    }
    let first = &lines[0].1;
    let has_header = !all_numeric(first) || lines.len() == first.len() + 1;
    let (labels, rows) = if has_header {
        (
            first.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            &lines[1..],
        )
    } else {
        (default_labels(lines.len()), lines)
    };
    let n = labels.len();
    if rows.len() != n {
        return Err(ProximityError::Malformed {
            line: lines[0].0,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    check_labels(&labels)?;
    let mut reader = Reader { precision: 0 };
    let mut full = vec![0.0; n * n];
    for (i, (line, toks)) in rows.iter().enumerate() {
        if toks.len() != n {
            return Err(ProximityError::Malformed {
                line: *line,
                message: format!("expected {n} values, found {}", toks.len()),
            });
        }
        for (j, tok) in toks.iter().enumerate() {
            full[i * n + j] = reader.number(*line, tok)?;
        }
    }
    let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        if full[i * n + i] != 0.0 {
            return Err(ProximityError::NonZeroDiagonal {
                label: labels[i].clone(),
                value: full[i * n + i],
            });
        }
        for j in i + 1..n {
            let (upper, lower) = (full[i * n + j], full[j * n + i]);
            if (upper - lower).abs() > 1e-12 {
                return Err(ProximityError::AsymmetricInput {
                    row: i + 1,
                    col: j + 1,
                    upper,
                    lower,
                });
            }
            values.push(upper);
        }
    }
    finish(labels, values, reader.precision)
}

fn parse_lower(lines: &[(usize, Vec<&str>)]) -> Result<ProximityMatrix, ProximityError> {
    if lines.is_empty() {
        return finish(Vec::new(), Vec::new(), 0);
    }
    let first = &lines[0].1;
    let has_header = !(first.len() == 1 && all_numeric(first));
    let (labels, rows) = if has_header {
        (
            first.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            &lines[1..],
        )
    } else {
        (default_labels(lines.len()), lines)
    };
    let n = labels.len();
    if rows.len() != n {
        return Err(ProximityError::Malformed {
            line: lines[0].0,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    check_labels(&labels)?;
    let mut reader = Reader { precision: 0 };
    let mut full = vec![0.0; n * n];
    for (i, (line, toks)) in rows.iter().enumerate() {
        if toks.len() != i + 1 {
            return Err(ProximityError::Malformed {
                line: *line,
                message: format!(
                    "row {} must hold {} values, found {}",
                    i + 1,
                    i + 1,
                    toks.len()
                ),
            });
        }
        for (j, tok) in toks.iter().enumerate() {
            let v = reader.number(*line, tok)?;
            if j == i && v != 0.0 {
                return Err(ProximityError::NonZeroDiagonal {
                    label: labels[i].clone(),
                    value: v,
                });
            }
            full[j * n + i] = v;
        }
    }
    let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            values.push(full[i * n + j]);
        }
    }
    finish(labels, values, reader.precision)
}

fn parse_pairs(
    lines: &[(usize, Vec<&str>)],
    labeled: bool,
) -> Result<ProximityMatrix, ProximityError> {
    let mut reader = Reader { precision: 0 };
    let mut labels: Vec<String> = Vec::new();
    let mut index_of = std::collections::HashMap::<String, usize>::new();
    let mut entries: Vec<(usize, usize, f64, usize)> = Vec::new();
    for (line, toks) in lines {
        if toks.len() != 3 {
            return Err(ProximityError::Malformed {
                line: *line,
                message: format!("expected 3 fields, found {}", toks.len()),
            });
        }
        let (a, b) = if labeled {
            let mut lookup = |name: &str| -> Result<usize, ProximityError> {
                if let Some(&k) = index_of.get(name) {
                    return Ok(k);
                }
                if !valid_label(name) {
                    return Err(ProximityError::InvalidLabel(name.to_string()));
                }
                index_of.insert(name.to_string(), labels.len());
                labels.push(name.to_string());
                Ok(labels.len() - 1)
            };
            (lookup(toks[0])?, lookup(toks[1])?)
        } else {
            let index = |tok: &str| -> Result<usize, ProximityError> {
                match tok.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(ProximityError::Malformed {
                        line: *line,
                        message: format!("`{tok}` is not a 1-based index"),
                    }),
                }
            };
            (index(toks[0])?, index(toks[1])?)
        };
        let v = reader.number(*line, toks[2])?;
        entries.push((a, b, v, *line));
    }
    if !labeled {
        let n = entries.iter().map(|e| e.0.max(e.1) + 1).max().unwrap_or(0);
        labels = default_labels(n);
    }
    let n = labels.len();
    let mut slots: Vec<Option<f64>> = vec![None; n * n.saturating_sub(1) / 2];
    for (a, b, v, _) in entries {
        if a == b {
            if v != 0.0 {
                return Err(ProximityError::NonZeroDiagonal {
                    label: labels[a].clone(),
                    value: v,
                });
            }
            continue;
        }
        let (i, j) = (a.min(b), a.max(b));
        let slot = &mut slots[condensed_index(n, i, j)];
        if slot.is_some() {
            return Err(ProximityError::DuplicatePair {
                first: labels[i].clone(),
                second: labels[j].clone(),
            });
        }
        *slot = Some(v);
    }
    let mut values = Vec::with_capacity(slots.len());
    for i in 0..n {
        for j in i + 1..n {
            match slots[condensed_index(n, i, j)] {
                Some(v) => values.push(v),
                None => {
                    return Err(ProximityError::MissingPair {
                        first: labels[i].clone(),
                        second: labels[j].clone(),
                    })
                }
            }
        }
    }
    finish(labels, values, reader.precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY_SQUARE: &str = "0 2 4 7\n2 0 2 5\n4 2 0 3\n7 5 3 0\n";

    #[test]
    fn parses_toy_square() {
        let m = ProximityMatrix::parse(TOY_SQUARE, MatrixFormat::Square).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m.values(), &[2.0, 4.0, 7.0, 2.0, 5.0, 3.0]);
        assert_eq!(m.labels(), &["x1", "x2", "x3", "x4"]);
        assert_eq!(m.precision(), Some(0));
        assert_eq!(m.get(1, 3), 5.0);
        assert_eq!(m.get(3, 1), 5.0);
    }

    #[test]
    fn square_with_header() {
        let text = "a b c\n0 1 2\n1 0 3\n2 3 0\n";
        let m = ProximityMatrix::parse(text, MatrixFormat::Square).unwrap();
        assert_eq!(m.labels(), &["a", "b", "c"]);
        assert_eq!(m.values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn labeled_single_pair() {
        let m = ProximityMatrix::parse("a b 1.5\n", MatrixFormat::LabeledPairs).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.get(0, 1), 1.5);
        assert_eq!(m.precision(), Some(1));
    }

    #[test]
    fn asymmetric_square_rejected() {
        let err = ProximityMatrix::parse("0 3\n4 0\n", MatrixFormat::Square).unwrap_err();
        assert!(matches!(
            err,
            ProximityError::AsymmetricInput { row: 1, col: 2, .. }
        ));
    }

    #[test]
    fn pair_errors() {
        let missing = ProximityMatrix::parse("1 2 1\n1 3 2\n", MatrixFormat::Pairs).unwrap_err();
        assert!(matches!(missing, ProximityError::MissingPair { .. }));
        let dup = ProximityMatrix::parse("1 2 1\n2 1 1\n", MatrixFormat::Pairs).unwrap_err();
        assert!(matches!(dup, ProximityError::DuplicatePair { .. }));
        let neg = ProximityMatrix::parse("a b -1\n", MatrixFormat::LabeledPairs).unwrap_err();
        assert!(matches!(neg, ProximityError::NegativeValue { .. }));
        let lbl = ProximityMatrix::parse("a a b\n0 1 2\n1 0 3\n2 3 0\n", MatrixFormat::Square)
            .unwrap_err();
        assert_eq!(lbl, ProximityError::DuplicateLabel("a".into()));
    }

    #[test]
    fn lower_triangle_with_diagonal() {
        let text = "0\n2 0\n4 2 0\n7 5 3 0\n";
        let m = ProximityMatrix::parse(text, MatrixFormat::Lower).unwrap();
        assert_eq!(m.values(), &[2.0, 4.0, 7.0, 2.0, 5.0, 3.0]);
        let bad = ProximityMatrix::parse("0\n2 0 1\n", MatrixFormat::Lower).unwrap_err();
        assert!(matches!(bad, ProximityError::Malformed { line: 2, .. }));
    }

    #[test]
    fn similarity_conversion() {
        let m = ProximityMatrix::parse("a b 0.962\n", MatrixFormat::LabeledPairs).unwrap();
        let d = m.similarity_to_dissimilarity().unwrap();
        assert_eq!(d.get(0, 1), 0.038);
        assert_eq!(d.kind(), ProximityKind::FromSimilarity);

        let one = ProximityMatrix::new(default_labels(2), vec![1.0]).unwrap();
        assert_eq!(one.similarity_to_dissimilarity().unwrap().get(0, 1), 0.0);

        let bad = ProximityMatrix::new(default_labels(2), vec![1.3]).unwrap();
        assert!(matches!(
            bad.similarity_to_dissimilarity(),
            Err(ProximityError::OutOfRange { .. })
        ));
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_away(0.0375, 2), 0.04);
        assert_eq!(round_half_away(0.125, 2), 0.13);
        assert_eq!(round_half_away(2.675, 2), 2.68);
        assert_eq!(round_half_away(9.996, 2), 10.0);
        assert_eq!(round_half_away(-0.5, 0), -1.0);
        assert_eq!(round_half_away(0.273, 2), 0.27);
        assert_eq!(round_half_away(0.268, 2), 0.27);

        let toy = ProximityMatrix::parse(TOY_SQUARE, MatrixFormat::Square).unwrap();
        assert_eq!(toy.round_to_precision(0).values(), toy.values());
    }

    #[test]
    fn precision_inference() {
        let m = ProximityMatrix::parse("1 2 0.5\n1 3 0.125\n2 3 1\n", MatrixFormat::Pairs).unwrap();
        assert_eq!(m.precision(), Some(3));
        assert_eq!(token_decimals("1.5e-2"), 3);
        assert_eq!(token_decimals("15e1"), 0);
    }

    #[test]
    fn zero_pairs_reported() {
        let m = ProximityMatrix::new(default_labels(3), vec![0.0, 1.0, 1.0]).unwrap();
        assert_eq!(m.zero_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn condensed_layout() {
        let n = 5;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(condensed_index(n, i, j), k);
                k += 1;
            }
        }
    }
}
