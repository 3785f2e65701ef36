use super::fusion::fusion_value;
use super::reversal::mark_reversals;
use super::state::{tie_groups, ClusterRecord, ClusterState};
use super::trace::{Iteration, MergeRecord, MergeTrace};
use super::{ClusterError, FusionPolicy};
use crate::linkage::{vg_distance, Block, BlockView, Method};
use crate::proximity::ProximityMatrix;
use crate::tree::{MultivaluedTree, Node};

/// Clusters of the previous iteration joined into one supercluster.
struct Group {
    /// Indices into the previous state's cluster list.
    parts: Vec<usize>,
    block: Block,
    record: ClusterRecord,
}

fn block_of(state: &ClusterState, parts: &[usize]) -> Block {
    let sizes = parts.iter().map(|&c| state.clusters()[c].size()).collect();
    let mut within = Vec::with_capacity(parts.len() * (parts.len().saturating_sub(1)) / 2);
    for (k, &a) in parts.iter().enumerate() {
        for &b in &parts[k + 1..] {
            within.push(state.distance(a, b));
        }
    }
    Block::new(sizes, within)
}

fn group_distance(
    method: Method,
    state: &ClusterState,
    g: &Group,
    h: &Group,
) -> Result<f64, ClusterError> {
    if g.parts.len() == 1 && h.parts.len() == 1 {
        return Ok(state.distance(g.parts[0], h.parts[0]));
    }
    let mut cross = Vec::with_capacity(g.parts.len() * h.parts.len());
    for &a in &g.parts {
        for &b in &h.parts {
            cross.push(state.distance(a, b));
        }
    }
    let view = BlockView::new(g.block.clone(), h.block.clone(), cross);
    Ok(vg_distance(method, &view)?)
}

/// Variable-group agglomeration: every connected group of clusters at the
/// shortest distance merges at once, with fusion interval
/// `[D_lower, D_max(group)]`.
///
/// Leaves take node ids `0..n`; internal nodes follow in creation order.
/// Under the interval policy internal nodes carry no fusion value.
pub fn cluster_variable_group(
    m: &ProximityMatrix,
    method: Method,
    policy: FusionPolicy,
) -> Result<(MultivaluedTree, MergeTrace), ClusterError> {
    method.validate()?;
    let n = m.len();
    if n == 0 {
        return Err(ClusterError::EmptyInput);
    }
    let mut trace = MergeTrace::default();
    let zero = m.zero_pairs();
    if !zero.is_empty() {
        trace.warnings.push(format!(
            "{} pair(s) of distinct individuals at distance zero; their merges sit at height 0",
            zero.len()
        ));
    }
    let mut nodes: Vec<Node> = (0..n).map(|i| Node::Leaf { individual: i }).collect();
    let mut state = ClusterState::initial(m);
    let mut fallback_warned = false;

    while let Some((key, d_lower)) = state.shortest() {
        let tied_pairs = state.pairs_at(key).len();
        let partition = tie_groups(&state, d_lower);
        let mut groups = Vec::with_capacity(partition.len());
        let mut merges = Vec::new();
        for parts in partition {
            let block = block_of(&state, &parts);
            let record = if parts.len() == 1 {
                state.clusters()[parts[0]].clone()
            } else {
                let upper = block.within.iter().copied().fold(d_lower, f64::max);
                let fusion = match policy {
                    FusionPolicy::Interval => None,
                    _ => {
                        let f = fusion_value(method, policy, d_lower, &block)?;
                        if f.fell_back && !fallback_warned {
                            fallback_warned = true;
                            trace.warnings.push(format!(
                                "{method} has no natural fusion value; using the shortest distance"
                            ));
                        }
                        Some(f.value)
                    }
                };
                let children: Vec<usize> =
                    parts.iter().map(|&c| state.clusters()[c].node).collect();
                let mut members: Vec<usize> = parts
                    .iter()
                    .flat_map(|&c| state.clusters()[c].members.iter().copied())
                    .collect();
                members.sort_unstable();
                let node = nodes.len();
                nodes.push(Node::Internal {
                    children: children.clone(),
                    lower: d_lower,
                    upper,
                    fusion,
                });
                merges.push(MergeRecord {
                    node,
                    children,
                    members: members.clone(),
                    lower: d_lower,
                    upper,
                    fusion,
                    reversal: false,
                });
                ClusterRecord { node, members }
            };
            groups.push(Group {
                parts,
                block,
                record,
            });
        }

        let k = groups.len();
        let mut dist = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for a in 0..k {
            for b in a + 1..k {
                dist.push(group_distance(method, &state, &groups[a], &groups[b])?);
            }
        }
        let group_nodes = groups
            .iter()
            .map(|g| g.parts.iter().map(|&c| state.clusters()[c].node).collect())
            .collect();
        state.advance(groups.into_iter().map(|g| g.record).collect(), dist);
        trace.iterations.push(Iteration {
            d_lower,
            tied_pairs,
            groups: group_nodes,
            merges,
            d_next: state.shortest().map(|(_, d)| d),
            reversal: false,
        });
    }

    mark_reversals(&mut trace);
    let root = nodes.len() - 1;
    let tree = MultivaluedTree::from_parts(m.labels().to_vec(), nodes, root)
        .expect("agglomeration builds a well-formed tree")
        .with_tags(m.precision(), Some(method), Some(policy));
    Ok((tree, trace))
}
