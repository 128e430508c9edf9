use super::{
    bipartite_max_matching, check_exchange, exchange_graph_unchecked, require_common_independent,
    ExchangeGraph, ExchangeSet, PathKind,
};
use crate::error::{Error, Result};
use crate::fairness::FairnessSpec;
use crate::matroid::MatroidSpec;
use crate::set::ElementSet;

/// Vertices of a path as graph indices: even positions index `graph.right`
/// (elements of `P \ Y`), odd positions index `graph.left` (`Y \ P`).
type IndexPath = Vec<usize>;

fn first_n(flags: &[bool], n: usize) -> Result<Vec<bool>> {
    let mut out = vec![false; flags.len()];
    let mut taken = 0;
    for (o, &f) in out.iter_mut().zip(flags) {
        if taken == n {
            break;
        }
        if f {
            *o = true;
            taken += 1;
        }
    }
    if taken < n {
        return Err(Error::invariant(format!(
            "only {taken} addable elements, {n} needed"
        )));
    }
    Ok(out)
}

/// Perfect matching from the right vertices not in `skip` onto the left side,
/// along right-to-left edges. Returns `mate[r]` for every right vertex.
fn match_right_onto_left(graph: &ExchangeGraph, skip: &[bool]) -> Result<Vec<Option<usize>>> {
    let rows: Vec<usize> = (0..graph.right.len()).filter(|&r| !skip[r]).collect();
    let adj: Vec<Vec<usize>> = rows
        .iter()
        .map(|&r| (0..graph.left.len()).filter(|&l| graph.has_right_to_left(r, l)).collect())
        .collect();
    let m = bipartite_max_matching(rows.len(), graph.left.len(), &adj);
    if m.len() != rows.len() || m.len() != graph.left.len() {
        return Err(Error::invariant(format!(
            "no perfect matching: {} of {} right and {} left vertices matched",
            m.len(),
            rows.len(),
            graph.left.len()
        )));
    }
    let mut mate = vec![None; graph.right.len()];
    for (row, l) in m.pairs {
        mate[rows[row]] = Some(l);
    }
    Ok(mate)
}

fn check_sizes(y: &ElementSet, p: &ElementSet) -> Result<()> {
    if y.len() > p.len() {
        return Err(Error::precondition(format!(
            "base of size {} is larger than the target of size {}",
            y.len(),
            p.len()
        )));
    }
    Ok(())
}

fn into_exchange(
    graph: &ExchangeGraph,
    path: &IndexPath,
    color: impl Fn(usize) -> usize,
) -> ExchangeSet {
    let vertices: Vec<usize> = path
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 2 == 0 { graph.right[v] } else { graph.left[v] })
        .collect();
    let augmenting = path.len() % 2 == 1;
    ExchangeSet {
        increased: vertices.first().map(|&e| color(e)),
        decreased: if augmenting { None } else { vertices.last().map(|&e| color(e)) },
        kind: if augmenting { PathKind::Augmenting } else { PathKind::Alternating },
        vertices,
    }
}

/// Returns `k(Y)` disjoint exchange sets for `y` relative to the larger,
/// upper-fair independent set `p`. Each one, applied to `y` on its own, gives
/// an upper-fair independent set that gains one element of an undersaturated
/// color, losing either nothing or one element of an oversaturated color.
pub fn generate_paths(
    m: &MatroidSpec,
    spec: &FairnessSpec,
    y: &ElementSet,
    p: &ElementSet,
) -> Result<Vec<ExchangeSet>> {
    let upper = spec.upper_matroid();
    require_common_independent(&[m, &upper], y, "base")?;
    require_common_independent(&[m, &upper], p, "target")?;
    check_sizes(y, p)?;

    let graph = exchange_graph_unchecked(m, &upper, y, p);
    let (left, right) = (&graph.left, &graph.right);
    let need = right.len() - left.len();

    let oracle = m.local(y);
    let addable: Vec<bool> = right.iter().map(|&e| oracle.can_add(e)).collect();
    let chosen = first_n(&addable, need)?;

    // Backward matching: every remaining right vertex onto Y \ P. Pairs
    // touching addable-but-unchosen vertices are discarded so those vertices
    // terminate walks instead.
    let mut back = match_right_onto_left(&graph, &chosen)?;
    for r in 0..right.len() {
        if addable[r] {
            back[r] = None;
        }
    }

    // Forward matching: pair Y \ P with P \ Y within each color, ascending.
    let mut fwd: Vec<Option<usize>> = vec![None; left.len()];
    let mut fwd_rev: Vec<Option<usize>> = vec![None; right.len()];
    let mut by_color_left = vec![Vec::new(); spec.num_colors()];
    let mut by_color_right = vec![Vec::new(); spec.num_colors()];
    for (l, &e) in left.iter().enumerate() {
        by_color_left[spec.color_of(e)].push(l);
    }
    for (r, &e) in right.iter().enumerate() {
        by_color_right[spec.color_of(e)].push(r);
    }
    for (ls, rs) in by_color_left.iter().zip(&by_color_right) {
        for (&l, &r) in ls.iter().zip(rs) {
            fwd[l] = Some(r);
            fwd_rev[r] = Some(l);
        }
    }

    let mut paths = Vec::new();
    for start in (0..right.len()).filter(|&r| fwd_rev[r].is_none()) {
        let mut path = vec![start];
        let mut cur = start;
        loop {
            if addable[cur] {
                break;
            }
            let l = back[cur].ok_or_else(|| {
                Error::invariant(format!("walk stuck at {}", right[cur]))
            })?;
            path.push(l);
            match fwd[l] {
                Some(r) => {
                    path.push(r);
                    cur = r;
                }
                None => break,
            }
            if path.len() > left.len() + right.len() {
                return Err(Error::invariant("walk revisits a vertex"));
            }
        }
        paths.push(shortcut(&graph, path));
    }

    let out: Vec<ExchangeSet> = paths
        .iter()
        .map(|path| into_exchange(&graph, path, |e| spec.color_of(e)))
        .collect();
    let k = spec.deficiency_k(y, p);
    if out.len() != k {
        return Err(Error::invariant(format!("{} paths for deficiency {k}", out.len())));
    }
    if cfg!(debug_assertions) {
        check_path_system(m, spec, y, p, &out)?;
    }
    Ok(out)
}

/// Removes detours: from each kept right vertex, jumps to the farthest later
/// left vertex it has an edge to. One pass leaves no forward chord.
fn shortcut(graph: &ExchangeGraph, path: IndexPath) -> IndexPath {
    let mut out = vec![path[0]];
    let mut pos = 0;
    while pos + 1 < path.len() {
        let q = (pos + 3..path.len())
            .step_by(2)
            .rev()
            .find(|&q| graph.has_right_to_left(path[pos], path[q]))
            .unwrap_or(pos + 1);
        out.push(path[q]);
        if q + 1 >= path.len() {
            break;
        }
        out.push(path[q + 1]);
        pos = q + 1;
    }
    out
}

/// Each set individually valid, and the sets pairwise disjoint.
pub(crate) fn check_path_system(
    m: &MatroidSpec,
    spec: &FairnessSpec,
    y: &ElementSet,
    p: &ElementSet,
    paths: &[ExchangeSet],
) -> Result<()> {
    let mut seen = ElementSet::new();
    for x in paths {
        check_exchange(m, spec, y, p, x)?;
        let xs = x.elements();
        if xs.len() != x.vertices.len() || !seen.is_disjoint(&xs) {
            return Err(Error::invariant(format!("path {:?} overlaps another", x.vertices)));
        }
        seen = seen.union(&xs);
    }
    Ok(())
}

/// Two-matroid counterpart: given common independent sets `y` and larger `p`,
/// returns `|P| - |Y|` disjoint sets each of which, applied alone, yields a
/// common independent set one larger. `increased` reports the `m2` part of
/// the first vertex when `m2` is a partition matroid.
pub fn generate_paths_two_matroids(
    m1: &MatroidSpec,
    m2: &MatroidSpec,
    y: &ElementSet,
    p: &ElementSet,
) -> Result<Vec<ExchangeSet>> {
    require_common_independent(&[m1, m2], y, "base")?;
    require_common_independent(&[m1, m2], p, "target")?;
    check_sizes(y, p)?;

    let graph = exchange_graph_unchecked(m1, m2, y, p);
    let (left, right) = (&graph.left, &graph.right);
    let need = right.len() - left.len();
    let (o1, o2) = (m1.local(y), m2.local(y));
    let in_t: Vec<bool> = right.iter().map(|&e| o1.can_add(e)).collect();
    let in_s: Vec<bool> = right.iter().map(|&e| o2.can_add(e)).collect();
    let t_chosen = first_n(&in_t, need)?;
    let s_chosen = first_n(&in_s, need)?;

    let back = match_right_onto_left(&graph, &t_chosen)?;

    // Forward matching: Y \ P onto the right vertices outside the chosen S.
    let cols: Vec<usize> = (0..right.len()).filter(|&r| !s_chosen[r]).collect();
    let adj: Vec<Vec<usize>> = (0..left.len())
        .map(|l| {
            (0..cols.len())
                .filter(|&c| graph.has_left_to_right(l, cols[c]))
                .collect()
        })
        .collect();
    let fm = bipartite_max_matching(left.len(), cols.len(), &adj);
    if fm.len() != left.len() || cols.len() != left.len() {
        return Err(Error::invariant("no perfect forward matching"));
    }
    let fwd: Vec<usize> = fm.mate_left.iter().map(|c| cols[c.expect("perfect")]).collect();

    let part = |e: usize| match m2 {
        MatroidSpec::Partition { groups, .. } => groups[e],
        _ => 0,
    };
    let mut out = Vec::with_capacity(need);
    for start in (0..right.len()).filter(|&r| s_chosen[r]) {
        let mut path = vec![start];
        let mut cur = start;
        while !t_chosen[cur] {
            let l = back[cur].ok_or_else(|| Error::invariant("walk left the matching"))?;
            cur = fwd[l];
            path.push(l);
            path.push(cur);
            if path.len() > left.len() + right.len() {
                return Err(Error::invariant("walk revisits a vertex"));
            }
        }
        let path = shortcut_two(&graph, &in_s, &in_t, path);
        let mut x = into_exchange(&graph, &path, part);
        if !m2.is_partition() {
            x.increased = None;
        }
        x.decreased = None;
        out.push(x);
    }

    if cfg!(debug_assertions) {
        let mut seen = ElementSet::new();
        for x in &out {
            let next = super::apply_exchange(y, x);
            let xs = x.elements();
            if !x.is_augmenting()
                || next.len() != y.len() + 1
                || !m1.independent(&next)
                || !m2.independent(&next)
                || !seen.is_disjoint(&xs)
            {
                return Err(Error::invariant(format!("bad augmenting set {:?}", x.vertices)));
            }
            seen = seen.union(&xs);
        }
    }
    Ok(out)
}

/// Shortens an `S`-to-`T` path until it starts at its only `S` vertex, ends
/// at its only `T` vertex, and has no forward chords in either matroid.
fn shortcut_two(graph: &ExchangeGraph, in_s: &[bool], in_t: &[bool], mut path: IndexPath) -> IndexPath {
    loop {
        let len = path.len();
        if let Some(q) = (2..len).step_by(2).rev().find(|&q| in_s[path[q]]) {
            path.drain(..q);
            continue;
        }
        if let Some(q) = (0..len - 1).step_by(2).find(|&q| in_t[path[q]]) {
            path.truncate(q + 1);
            continue;
        }
        let chord = (0..len).find_map(|a| {
            (a + 3..len).step_by(2).rev().find_map(|b| {
                let edge = if a % 2 == 0 {
                    graph.has_right_to_left(path[a], path[b])
                } else {
                    graph.has_left_to_right(path[a], path[b])
                };
                edge.then_some((a, b))
            })
        });
        match chord {
            Some((a, b)) => {
                path.drain(a + 1..b);
            }
            None => return path,
        }
    }
}
