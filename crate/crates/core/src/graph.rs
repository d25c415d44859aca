//! Bitset graphs, class recognizers, P3 machinery, matching and UDG cliques.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use num_traits::Signed;
use thiserror::Error;

use crate::geom::{dist2, int, GraphClass, Point, Rational};

/// Simple undirected graph on `0..n` with one adjacency bitset per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyGraph {
    rows: Vec<FixedBitSet>,
}

impl AdjacencyGraph {
    pub fn new(n: usize) -> Self {
        Self { rows: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.set_edge(u, v, true);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.set_edge(u, v, false);
    }

    /// Panics on a self-loop.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.rows[u].set(v, present);
        self.rows[v].set(u, present);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, u: usize) -> &FixedBitSet {
        &self.rows[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[u].ones()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(u, r)| r.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Removes every edge incident to `u`.
    pub fn isolate(&mut self, u: usize) {
        let nb: Vec<usize> = self.rows[u].ones().collect();
        for v in nb {
            self.rows[v].set(u, false);
        }
        self.rows[u].clear();
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()`.
    pub fn induced(&self, vertices: &[usize]) -> AdjacencyGraph {
        let mut g = AdjacencyGraph::new(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}

/// Lexicographically smallest induced P3 `(u, v, w)`: `uv, vw` edges, `uw` not.
pub fn find_induced_p3(g: &AdjacencyGraph) -> Option<(usize, usize, usize)> {
    find_p3_within(g, None, 0)
}

fn find_p3_within(g: &AdjacencyGraph, alive: Option<&FixedBitSet>, from: usize) -> Option<(usize, usize, usize)> {
    let is_alive = |x: usize| alive.is_none_or(|a| a.contains(x));
    for u in from..g.n() {
        if !is_alive(u) {
            continue;
        }
        for v in g.neighbors(u) {
            if !is_alive(v) {
                continue;
            }
            let w = g.row(v).difference(g.row(u)).find(|&w| w != u && is_alive(w));
            if let Some(w) = w {
                return Some((u, v, w));
            }
        }
    }
    None
}

/// Lexicographically smallest non-adjacent pair.
pub fn first_non_edge(g: &AdjacencyGraph) -> Option<(usize, usize)> {
    (0..g.n()).find_map(|u| (u + 1..g.n()).find(|&v| !g.has_edge(u, v)).map(|v| (u, v)))
}

/// Connected components, each ascending, ordered by smallest vertex.
pub fn components(g: &AdjacencyGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut out = Vec::new();
    for s in 0..n {
        if seen.contains(s) {
            continue;
        }
        seen.insert(s);
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if !seen.contains(v) {
                    seen.insert(v);
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn recognize(g: &AdjacencyGraph, cls: GraphClass) -> bool {
    match cls {
        GraphClass::Cluster => find_induced_p3(g).is_none(),
        GraphClass::Complete => (0..g.n()).all(|u| g.degree(u) + 1 == g.n()),
        GraphClass::Connected => is_connected(g),
        GraphClass::Edgeless => (0..g.n()).all(|u| g.degree(u) == 0),
    }
}

fn is_connected(g: &AdjacencyGraph) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    let mut seen = FixedBitSet::with_capacity(n);
    seen.insert(0);
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for v in g.row(u).difference(&seen).collect::<Vec<_>>() {
            seen.insert(v);
            count += 1;
            stack.push(v);
        }
    }
    count == n
}

/// Vertex-disjoint induced P3s with the covered vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P3Packing {
    pub triples: Vec<(usize, usize, usize)>,
    /// Covered vertices, ascending.
    pub covered: Vec<usize>,
}

/// Greedy maximal packing: repeatedly take the lexicographically smallest
/// induced P3 among uncovered vertices.
pub fn maximal_p3_packing(g: &AdjacencyGraph) -> P3Packing {
    let n = g.n();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut triples = Vec::new();
    // Removing vertices only destroys P3s, so the scan never needs to move back.
    let mut from = 0;
    while let Some((u, v, w)) = find_p3_within(g, Some(&alive), from) {
        triples.push((u, v, w));
        for x in [u, v, w] {
            alive.set(x, false);
        }
        from = u;
    }
    let mut covered: Vec<usize> = triples.iter().flat_map(|&(u, v, w)| [u, v, w]).collect();
    covered.sort_unstable();
    P3Packing { triples, covered }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("not a cluster graph: induced P3 ({0}, {1}, {2})")]
    NotCluster(usize, usize, usize),
}

/// Components of a cluster graph; fails if some component is not a clique.
pub fn clusters_of(g: &AdjacencyGraph) -> Result<Vec<Vec<usize>>, GraphError> {
    let comps = components(g);
    for c in &comps {
        for &u in c {
            if g.degree(u) + 1 != c.len() {
                let (a, b, d) = find_induced_p3(&g.induced(c)).expect("non-clique component has a P3");
                return Err(GraphError::NotCluster(c[a], c[b], c[d]));
            }
        }
    }
    Ok(comps)
}

/// Maximum matching with a minimum vertex cover of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMatching {
    /// Matched pairs `(left, right)`, ascending by left.
    pub pairs: Vec<(usize, usize)>,
    pub cover_left: Vec<usize>,
    pub cover_right: Vec<usize>,
}

impl BipartiteMatching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

/// Hopcroft–Karp, with a König cover extracted from the final matching.
pub fn max_bipartite_matching(left: usize, right: usize, edges: &[(usize, usize)]) -> BipartiteMatching {
    const NIL: usize = usize::MAX;
    let mut adj = vec![Vec::new(); left];
    for &(l, r) in edges {
        assert!(l < left && r < right, "edge endpoint out of range");
        adj[l].push(r);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut layer = vec![0usize; left];

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..left {
            if match_l[l] == NIL {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = match_r[r];
                if m == NIL {
                    found = true;
                } else if layer[m] == usize::MAX {
                    layer[m] = layer[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        fn augment(
            l: usize,
            adj: &[Vec<usize>],
            layer: &mut [usize],
            match_l: &mut [usize],
            match_r: &mut [usize],
        ) -> bool {
            for i in 0..adj[l].len() {
                let r = adj[l][i];
                let m = match_r[r];
                if m == usize::MAX || (layer[m] == layer[l] + 1 && augment(m, adj, layer, match_l, match_r)) {
                    match_l[l] = r;
                    match_r[r] = l;
                    return true;
                }
            }
            layer[l] = usize::MAX;
            false
        }
        for l in 0..left {
            if match_l[l] == NIL {
                augment(l, &adj, &mut layer, &mut match_l, &mut match_r);
            }
        }
    }

    // König: Z = vertices reachable from free left vertices by alternating paths.
    let mut z_left = vec![false; left];
    let mut z_right = vec![false; right];
    let mut stack: Vec<usize> = (0..left).filter(|&l| match_l[l] == NIL).collect();
    for &l in &stack {
        z_left[l] = true;
    }
    while let Some(l) = stack.pop() {
        for &r in &adj[l] {
            if !z_right[r] {
                z_right[r] = true;
                let m = match_r[r];
                if m != NIL && !z_left[m] {
                    z_left[m] = true;
                    stack.push(m);
                }
            }
        }
    }
    BipartiteMatching {
        pairs: (0..left).filter(|&l| match_l[l] != NIL).map(|l| (l, match_l[l])).collect(),
        cover_left: (0..left).filter(|&l| !z_left[l]).collect(),
        cover_right: (0..right).filter(|&r| z_right[r]).collect(),
    }
}

/// A maximum clique of `G(points, 1)`, as ascending indices into `points`.
///
/// For a diametral pair `(a, b)` of a clique every member lies in the lens of
/// radius `|ab|` around both; each half of that lens is a clique, so the
/// complement on the lens is bipartite and a maximum independent set of it is
/// the lens minus a minimum vertex cover.
pub fn max_clique_udg(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    if n == 0 {
        return Vec::new();
    }
    let four = int(4);
    let d2: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| dist2(&points[i], &points[j])).collect()).collect();
    let mut best = vec![0];
    for a in 0..n {
        for b in a + 1..n {
            let dab = &d2[a][b];
            if *dab > four {
                continue;
            }
            let cand: Vec<usize> = (0..n).filter(|&p| d2[p][a] <= *dab && d2[p][b] <= *dab).collect();
            if cand.len() <= best.len() {
                continue;
            }
            let (ax, ay) = (&points[a].x, &points[a].y);
            let (ux, uy) = (&points[b].x - ax, &points[b].y - ay);
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for &p in &cand {
                let cross = &ux * (&points[p].y - ay) - &uy * (&points[p].x - ax);
                if cross.is_negative() {
                    right.push(p);
                } else {
                    left.push(p);
                }
            }
            let mut edges = Vec::new();
            for (li, &l) in left.iter().enumerate() {
                for (ri, &r) in right.iter().enumerate() {
                    if d2[l][r] > four {
                        edges.push((li, ri));
                    }
                }
            }
            let m = max_bipartite_matching(left.len(), right.len(), &edges);
            if cand.len() - m.size() <= best.len() {
                continue;
            }
            let mut clique: Vec<usize> = left
                .iter()
                .enumerate()
                .filter(|(i, _)| m.cover_left.binary_search(i).is_err())
                .map(|(_, &p)| p)
                .chain(right.iter().enumerate().filter(|(i, _)| m.cover_right.binary_search(i).is_err()).map(|(_, &p)| p))
                .collect();
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> AdjacencyGraph {
        AdjacencyGraph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn p3_examples() {
        assert_eq!(find_induced_p3(&path(3)), Some((0, 1, 2)));
        assert_eq!(find_induced_p3(&AdjacencyGraph::complete(3)), None);
        assert_eq!(find_induced_p3(&AdjacencyGraph::from_edges(4, &[(0, 1), (2, 3)])), None);
        // centre 0: (1, 0, 2) is the smallest ordered triple
        assert_eq!(find_induced_p3(&AdjacencyGraph::from_edges(3, &[(0, 1), (0, 2)])), Some((1, 0, 2)));
    }

    #[test]
    fn recognize_examples() {
        use GraphClass::*;
        let k4 = AdjacencyGraph::complete(4);
        assert!(recognize(&k4, Complete) && recognize(&k4, Connected) && recognize(&k4, Cluster));
        assert!(!recognize(&k4, Edgeless));
        let e3 = AdjacencyGraph::new(3);
        assert!(recognize(&e3, Edgeless) && recognize(&e3, Cluster) && !recognize(&e3, Connected));
        let p3 = path(3);
        assert_eq!(GraphClass::ALL.map(|c| recognize(&p3, c)), [false, false, true, false]);
        assert!(recognize(&AdjacencyGraph::new(1), Connected));
    }

    #[test]
    fn packing_examples() {
        let p = maximal_p3_packing(&path(3));
        assert_eq!((p.triples, p.covered), (vec![(0, 1, 2)], vec![0, 1, 2]));
        let p = maximal_p3_packing(&path(5));
        assert_eq!(p.triples, vec![(0, 1, 2)]);
        assert!(maximal_p3_packing(&AdjacencyGraph::complete(4)).triples.is_empty());
    }

    #[test]
    fn clusters_examples() {
        let two = AdjacencyGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(clusters_of(&two).unwrap(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(clusters_of(&AdjacencyGraph::new(4)).unwrap().len(), 4);
        assert_eq!(clusters_of(&AdjacencyGraph::complete(5)).unwrap(), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(clusters_of(&path(3)), Err(GraphError::NotCluster(0, 1, 2)));
    }

    #[test]
    fn matching_examples() {
        let m = max_bipartite_matching(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(m.size(), 2);
        let star = max_bipartite_matching(1, 3, &[(0, 0), (0, 1), (0, 2)]);
        assert_eq!(star.size(), 1);
        assert_eq!(star.cover_left.len() + star.cover_right.len(), 1);
    }

    #[test]
    fn clique_examples() {
        let tri: Vec<Point> = [(0, 0), (1, 0), (0, 1)].iter().enumerate().map(|(i, &(x, y))| Point::from_ints(i, x, y)).collect();
        assert_eq!(max_clique_udg(&tri).len(), 3);
        let line: Vec<Point> = [0, 2, 4].iter().enumerate().map(|(i, &x)| Point::from_ints(i, x, 0)).collect();
        assert_eq!(max_clique_udg(&line).len(), 2);
        assert!(max_clique_udg(&[]).is_empty());
    }
}
