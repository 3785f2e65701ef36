//! Command-line front end.

use std::error::Error;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::agglomerate::{
    cluster_pair_group, cluster_variable_group, detect_reversals, enumerate_pair_group,
    FusionPolicy, MergeTrace, TieBreak, DEFAULT_SOLUTION_LIMIT,
};
use crate::linkage::Method;
use crate::proximity::{MatrixFormat, ProximityMatrix};
use crate::render::{render_svg, render_text, SvgOptions};
use crate::tree::{to_newick_extended, to_records, MultivaluedTree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REVERSALS: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputKind {
    Newick,
    Records,
    Text,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    First,
    Last,
    Random,
}

/// Variable-group agglomerative clustering with fusion intervals.
///
/// Exits with 0 on success, 2 when the result contains reversals and 1 on
/// errors.
#[derive(Debug, Clone, Parser)]
#[command(name = "multidendrogram", version)]
pub struct RunConfig {
    /// Proximity matrix file; standard input when omitted or `-`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// square, lower, pairs or labeled-pairs.
    #[arg(long, default_value = "square")]
    pub format: MatrixFormat,
    /// Treat values as similarities in [0, 1] and use 1 - s.
    #[arg(long)]
    pub similarity: bool,
    /// Decimal places used for tie detection; inferred from the input by default.
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long, default_value = "unweighted_average")]
    pub method: String,
    /// Exponent for joint_between_within, in (0, 2]; defaults to 1.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value = "interval")]
    pub policy: FusionPolicy,
    #[arg(long, value_enum, default_value = "newick")]
    pub output: OutputKind,
    /// List every distinct pair-group tree the ties allow.
    #[arg(long)]
    pub enumerate: bool,
    /// Run the pair-group algorithm, breaking ties this way.
    #[arg(long, value_enum)]
    pub tiebreak: Option<TieBreakArg>,
    /// Seed for `--tiebreak random`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Maximum number of trees for `--enumerate`.
    #[arg(long, default_value_t = DEFAULT_SOLUTION_LIMIT)]
    pub limit: usize,
}

impl RunConfig {
    fn check(&self) -> Result<(Method, Option<TieBreak>), Box<dyn Error>> {
        let method = Method::from_name(&self.method, self.alpha)?;
        let tiebreak = match (self.tiebreak, self.seed) {
            (Some(TieBreakArg::Random), seed) => Some(TieBreak::SeededRandom(seed.unwrap_or(0))),
            (_, Some(_)) => return Err("--seed requires --tiebreak random".into()),
            (Some(TieBreakArg::First), None) => Some(TieBreak::FirstPair),
            (Some(TieBreakArg::Last), None) => Some(TieBreak::LastPair),
            (None, None) => None,
        };
        if self.enumerate && tiebreak.is_some() {
            return Err("--enumerate explores every tie-break; drop --tiebreak".into());
        }
        Ok((method, tiebreak))
    }

    fn read_matrix(&self) -> Result<ProximityMatrix, Box<dyn Error>> {
        let text = match &self.input {
            Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
            _ => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            }
        };
        let mut m = ProximityMatrix::parse(&text, self.format)?;
        if self.similarity {
            m = m.similarity_to_dissimilarity()?;
        }
        if let Some(p) = self.precision {
            m = m.round_to_precision(p);
        }
        Ok(m)
    }
}

/// A node placed above the node that contains it.
fn has_inversion(tree: &MultivaluedTree) -> bool {
    tree.parents()
        .iter()
        .enumerate()
        .any(|(id, parent)| match (parent, tree.scalar_height(id)) {
            (Some(p), Some(h)) => tree.scalar_height(*p).is_some_and(|ph| h > ph),
            _ => false,
        })
}

fn render(tree: &MultivaluedTree, trace: &MergeTrace, kind: OutputKind) -> String {
    match kind {
        OutputKind::Newick => to_newick_extended(tree) + "\n",
        OutputKind::Records => to_records(tree, trace).to_json() + "\n",
        OutputKind::Text => render_text(tree),
        OutputKind::Svg => render_svg(tree, &SvgOptions::default()),
    }
}

fn execute(
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Box<dyn Error>> {
    let (method, tiebreak) = config.check()?;
    let m = config.read_matrix()?;

    if config.enumerate {
        let trees = enumerate_pair_group(&m, method, config.limit)?;
        writeln!(out, "{}", trees.len())?;
        let mut reversals = false;
        for t in &trees {
            reversals |= has_inversion(t);
            out.write_all(render(t, &MergeTrace::default(), config.output).as_bytes())?;
        }
        if reversals {
            writeln!(err, "warning: some trees contain reversals")?;
        }
        return Ok(if reversals { EXIT_REVERSALS } else { EXIT_OK });
    }

    let (tree, trace) = match tiebreak {
        Some(tb) => {
            let (t, trace) = cluster_pair_group(&m, method, tb)?;
            (t.into_inner(), trace)
        }
        None => cluster_variable_group(&m, method, config.policy)?,
    };
    for w in &trace.warnings {
        writeln!(err, "warning: {w}")?;
    }
    let reports = detect_reversals(&trace);
    for r in &reports {
        writeln!(
            err,
            "warning: reversal ({:?}) between node {} at {} and its parent {} at {}",
            r.kind, r.child, r.child_height, r.parent, r.parent_height
        )?;
    }
    out.write_all(render(&tree, &trace, config.output).as_bytes())?;
    Ok(if reports.is_empty() {
        EXIT_OK
    } else {
        EXIT_REVERSALS
    })
}

/// Runs one invocation and returns the process exit code. Diagnostics go
/// to `err`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
