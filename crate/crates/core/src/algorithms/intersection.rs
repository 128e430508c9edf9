use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;
use crate::set::ElementSet;

/// A largest set independent in both `m1` and `m2`.
///
/// Starts from a greedy common independent set and repeatedly augments
/// along a shortest path in the exchange graph: arcs `y -> x` when
/// `S - y + x` is independent in `m1`, arcs `x -> y` when it is independent
/// in `m2`, from elements addable in `m1` to elements addable in `m2`.
pub fn max_card_intersection(m1: &MatroidSpec, m2: &MatroidSpec) -> Result<ElementSet> {
    let n = m1.universe_size();
    if m2.universe_size() != n {
        return Err(Error::malformed(format!(
            "universe sizes disagree: {n} and {}",
            m2.universe_size()
        )));
    }
    let all: Vec<usize> = (0..n).collect();
    let mut s = ElementSet::new();
    {
        let (mut o1, mut o2) = (m1.local(&s), m2.local(&s));
        for &e in &all {
            if o1.can_add(e) && o2.can_add(e) {
                s.insert(e);
                o1.push(e);
                o2.push(e);
            }
        }
    }
    while let Some(path) = shortest_augmenting_path(m1, m2, &s, n) {
        s = s.symmetric_difference(&ElementSet::from_unsorted(path));
    }
    Ok(s)
}

fn shortest_augmenting_path(
    m1: &MatroidSpec,
    m2: &MatroidSpec,
    s: &ElementSet,
    n: usize,
) -> Option<Vec<usize>> {
    let (o1, o2) = (m1.local(s), m2.local(s));
    let outside: Vec<usize> = (0..n).filter(|&e| !s.contains(e)).collect();
    let is_sink: Vec<bool> = (0..n).map(|e| !s.contains(e) && o2.can_add(e)).collect();

    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &x in &outside {
        if o1.can_add(x) {
            seen[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(v) = queue.pop_front() {
        if is_sink[v] {
            let mut path = vec![v];
            let mut cur = v;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            return Some(path);
        }
        if s.contains(v) {
            for &x in &outside {
                if !seen[x] && o1.can_swap(v, x) {
                    seen[x] = true;
                    parent[x] = Some(v);
                    queue.push_back(x);
                }
            }
        } else {
            for &y in s.iter() {
                if !seen[y] && o2.can_swap(y, v) {
                    seen[y] = true;
                    parent[y] = Some(v);
                    queue.push_back(y);
                }
            }
        }
    }
    None
}
