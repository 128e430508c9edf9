use super::{require_common_independent, ExchangeSet, PathKind};
use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;
use crate::set::{ElementId, ElementSet};

/// Exchange sets for two partition matroids, found by routing flow on the
/// quotient graph whose nodes are parts.
///
/// Nodes are the parts of `m2` ("colors") followed by the parts of `m1`
/// ("groups"). Each element of `Y \ P` is an edge color -> group, each
/// element of `P \ Y` an edge group -> color. Trails run from nodes with
/// surplus out-degree to nodes with surplus in-degree; the ones ending at a
/// color node are returned, reversed so they start with an element of `P`.
///
/// All returned sets are disjoint and can be applied together.
pub fn fast_paths_partition(
    m1: &MatroidSpec,
    m2: &MatroidSpec,
    y: &ElementSet,
    p: &ElementSet,
) -> Result<Vec<ExchangeSet>> {
    let (
        MatroidSpec::Partition { groups, caps: caps1 },
        MatroidSpec::Partition { groups: colors, caps: caps2 },
    ) = (m1, m2)
    else {
        return Err(Error::precondition("fast paths need two partition matroids"));
    };
    require_common_independent(&[m1, m2], y, "base")?;
    require_common_independent(&[m1, m2], p, "target")?;
    if y.len() > p.len() {
        return Err(Error::precondition("base is larger than the target"));
    }

    let nc = caps2.len();
    let nodes = nc + caps1.len();
    // (element, head) in ascending element order per tail node.
    let mut out_edges: Vec<Vec<(ElementId, usize)>> = vec![Vec::new(); nodes];
    let mut balance = vec![0i64; nodes];
    for &e in y.minus(p).iter() {
        let (tail, head) = (colors[e], nc + groups[e]);
        out_edges[tail].push((e, head));
        balance[tail] += 1;
        balance[head] -= 1;
    }
    for &e in p.minus(y).iter() {
        let (tail, head) = (nc + groups[e], colors[e]);
        out_edges[tail].push((e, head));
        balance[tail] += 1;
        balance[head] -= 1;
    }
    let mut next = vec![0usize; nodes];
    let mut deficit: Vec<i64> = balance.iter().map(|&b| (-b).max(0)).collect();

    let mut out = Vec::new();
    for source in 0..nodes {
        while balance[source] > 0 {
            balance[source] -= 1;
            let mut trail = Vec::new();
            let mut cur = source;
            loop {
                let &(e, head) = out_edges[cur].get(next[cur]).ok_or_else(|| {
                    Error::invariant(format!("trail stuck at node {cur}"))
                })?;
                next[cur] += 1;
                trail.push(e);
                cur = head;
                if deficit[cur] > 0 {
                    deficit[cur] -= 1;
                    break;
                }
            }
            if cur < nc {
                trail.reverse();
                let augmenting = source >= nc;
                out.push(ExchangeSet {
                    increased: Some(cur),
                    decreased: (!augmenting).then_some(source),
                    kind: if augmenting { PathKind::Augmenting } else { PathKind::Alternating },
                    vertices: trail,
                });
            }
        }
    }
    Ok(out)
}
