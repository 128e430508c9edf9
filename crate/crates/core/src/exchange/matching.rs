//! Maximum-cardinality bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// `(left, right)` index pairs in ascending left order.
    pub pairs: Vec<(usize, usize)>,
    pub direction: Direction,
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

const INF: usize = usize::MAX;

/// `adjacency[l]` lists the right vertices adjacent to left vertex `l`.
/// The result depends only on the adjacency order.
pub fn bipartite_max_matching(
    left_size: usize,
    right_size: usize,
    adjacency: &[Vec<usize>],
) -> Matching {
    assert_eq!(adjacency.len(), left_size, "adjacency must list every left vertex");
    let mut mate_left = vec![None; left_size];
    let mut mate_right: Vec<Option<usize>> = vec![None; right_size];
    let mut dist = vec![INF; left_size];

    loop {
        // Layer the graph from all free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..left_size {
            if mate_left[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = INF;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adjacency[l] {
                match mate_right[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == INF => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left_size {
            if mate_left[l].is_none() {
                augment(l, adjacency, &mut mate_left, &mut mate_right, &mut dist);
            }
        }
    }

    let pairs = mate_left
        .iter()
        .enumerate()
        .filter_map(|(l, r)| r.map(|r| (l, r)))
        .collect();
    Matching {
        pairs,
        direction: Direction::LeftToRight,
        mate_left,
        mate_right,
    }
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    mate_left: &mut [Option<usize>],
    mate_right: &mut [Option<usize>],
    dist: &mut [usize],
) -> bool {
    for &r in &adjacency[l] {
        let ok = match mate_right[r] {
            None => true,
            Some(l2) => {
                dist[l2] == dist[l].wrapping_add(1)
                    && augment(l2, adjacency, mate_left, mate_right, dist)
            }
        };
        if ok {
            mate_left[l] = Some(r);
            mate_right[r] = Some(l);
            return true;
        }
    }
    dist[l] = INF;
    false
}
