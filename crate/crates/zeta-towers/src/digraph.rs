//! Finite directed multigraphs with loops and parallel edges.
//!
//! Matrix conventions: the adjacency matrix entry (i, j) counts edges
//! from vertex j to vertex i, so column sums are out-degrees, and the
//! Laplacian D - A has zero column sums. The degree matrix D is the
//! diagonal of out-degrees in input vertex order.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A directed edge. `id` is the position in the edge list; voltage
/// assignments index by it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub src: usize,
    pub dst: usize,
}

/// Directed multigraph with string vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

/// Connectivity facts computed by Tarjan plus a condensation pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub weakly_connected: bool,
    pub strongly_connected: bool,
    pub scc_count: usize,
    /// Number of reaches: sink components of the condensation. This is
    /// the free rank of the Picard group.
    pub reach_count: usize,
}

impl Digraph {
    pub fn new(labels: Vec<String>, arcs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::MalformedSpec(format!("duplicate vertex label {l:?}")));
            }
        }
        let mut edges = Vec::with_capacity(arcs.len());
        for (id, &(src, dst)) in arcs.iter().enumerate() {
            if src >= n || dst >= n {
                return Err(Error::MalformedSpec(format!(
                    "edge ({src}, {dst}) out of range for {n} vertices"
                )));
            }
            edges.push(Edge { id, src, dst });
        }
        Ok(Digraph { labels, edges })
    }

    /// Build from an adjacency matrix in the crate convention:
    /// `a[i][j]` parallel edges from vertex j to vertex i. Edges are
    /// emitted column by column (source-major), so out-edges of one
    /// vertex are contiguous.
    pub fn from_adjacency(a: &[Vec<i64>]) -> Result<Self> {
        let n = a.len();
        if a.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedSpec("adjacency matrix must be square".into()));
        }
        let labels = (0..n).map(|i| format!("v{}", i + 1)).collect();
        let mut arcs = Vec::new();
        for j in 0..n {
            for (i, row) in a.iter().enumerate() {
                if row[j] < 0 {
                    return Err(Error::MalformedSpec("negative edge multiplicity".into()));
                }
                for _ in 0..row[j] {
                    arcs.push((j, i));
                }
            }
        }
        Digraph::new(labels, &arcs)
    }

    /// Directed cycle v1 -> v2 -> ... -> vr -> v1. A 1-cycle is a loop.
    pub fn directed_cycle(r: usize) -> Self {
        let labels = (0..r).map(|i| format!("v{}", i + 1)).collect();
        let arcs: Vec<(usize, usize)> = (0..r).map(|i| (i, (i + 1) % r)).collect();
        Digraph::new(labels, &arcs).expect("cycle is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.src == v).count()
    }

    pub fn adjacency_matrix(&self) -> Result<IntMatrix> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut m = IntMatrix::zero(n, n);
        for e in &self.edges {
            let cur = m.at(e.dst, e.src).clone();
            m.set(e.dst, e.src, cur + 1);
        }
        Ok(m)
    }

    pub fn degree_matrix(&self) -> Result<IntMatrix> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut m = IntMatrix::zero(n, n);
        for e in &self.edges {
            let cur = m.at(e.src, e.src).clone();
            m.set(e.src, e.src, cur + BigInt::from(1));
        }
        Ok(m)
    }

    /// D - A, the out-degree Laplacian. Columns sum to zero.
    pub fn laplacian(&self) -> Result<IntMatrix> {
        self.degree_matrix()?.sub(&self.adjacency_matrix()?)
    }

    /// Id - A, the Bowen-Franks relation matrix.
    pub fn id_minus_adjacency(&self) -> Result<IntMatrix> {
        IntMatrix::identity(self.vertex_count()).sub(&self.adjacency_matrix()?)
    }

    /// Common out-degree if the graph is out-regular.
    pub fn out_regular_degree(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        let mut degs = vec![0usize; n];
        for e in &self.edges {
            degs[e.src] += 1;
        }
        let q = degs[0];
        degs.iter().all(|&d| d == q).then_some(q)
    }

    pub fn connectivity(&self) -> Result<ConnectivityReport> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let comp = tarjan_scc(self);
        let scc_count = comp.iter().max().map_or(0, |&m| m + 1);

        // sink components: no edge leaving to another component
        let mut has_exit = vec![false; scc_count];
        for e in &self.edges {
            if comp[e.src] != comp[e.dst] {
                has_exit[comp[e.src]] = true;
            }
        }
        let reach_count = has_exit.iter().filter(|&&x| !x).count();

        // weak connectivity: BFS ignoring direction
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }

        Ok(ConnectivityReport {
            weakly_connected: count == n,
            strongly_connected: scc_count == 1,
            scc_count,
            reach_count,
        })
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.connectivity().map(|r| r.strongly_connected).unwrap_or(false)
    }
}

/// Iterative Tarjan; returns the component index of each vertex.
fn tarjan_scc(g: &Digraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        out[e.src].push(e.dst);
    }

    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0;
    let mut comp_count = 0;

    // explicit DFS frames: (vertex, next child position)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut ci)) = frames.last_mut() {
            if *ci < out[v].len() {
                let w = out[v][*ci];
                *ci += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("stack nonempty");
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if w == v {
                            break;
                        }
                    }
                    comp_count += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    /// Reach oracle: for every vertex the set of vertices that reach it,
    /// keep the maximal distinct sets, count them.
    fn reach_count_oracle(g: &Digraph) -> usize {
        let n = g.vertex_count();
        let mut reach = vec![vec![false; n]; n]; // reach[u][v]: u reaches v
        for v in 0..n {
            reach[v][v] = true;
        }
        for e in g.edges() {
            reach[e.src][e.dst] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        // B(v) = set of u reaching v
        let sets: Vec<Vec<bool>> = (0..n)
            .map(|v| (0..n).map(|u| reach[u][v]).collect())
            .collect();
        let maximal: Vec<&Vec<bool>> = sets
            .iter()
            .filter(|s| {
                !sets.iter().any(|t| {
                    t != *s && s.iter().zip(t.iter()).all(|(a, b)| !a || *b)
                })
            })
            .collect();
        let mut distinct: Vec<&Vec<bool>> = Vec::new();
        for s in maximal {
            if !distinct.contains(&s) {
                distinct.push(s);
            }
        }
        distinct.len()
    }

    #[test]
    fn adjacency_and_degree_conventions() {
        // single edge v1 -> v2: entry (2,1) = 1, out-degrees (1, 0)
        let g = Digraph::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        let a = g.adjacency_matrix().unwrap();
        assert_eq!(*a.at(1, 0), BigInt::from(1));
        assert_eq!(*a.at(0, 1), BigInt::zero());
        let d = g.degree_matrix().unwrap();
        assert_eq!(*d.at(0, 0), BigInt::from(1));
        assert_eq!(*d.at(1, 1), BigInt::zero());
    }

    #[test]
    fn laplacian_columns_sum_to_zero() {
        let g = Digraph::from_adjacency(&[
            vec![1, 0, 1],
            vec![1, 2, 0],
            vec![1, 1, 2],
        ])
        .unwrap();
        let l = g.laplacian().unwrap();
        for j in 0..3 {
            let sum: BigInt = (0..3).map(|i| l.at(i, j).clone()).sum();
            assert!(sum.is_zero(), "column {j}");
        }
    }

    #[test]
    fn from_adjacency_round_trips() {
        let a = vec![vec![1, 0, 1], vec![1, 2, 0], vec![1, 1, 2]];
        let g = Digraph::from_adjacency(&a).unwrap();
        let m = g.adjacency_matrix().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*m.at(i, j), BigInt::from(a[i][j]));
            }
        }
        assert_eq!(g.edge_count(), 9);
    }

    #[test]
    fn out_regular_detection() {
        let g = Digraph::directed_cycle(4);
        assert_eq!(g.out_regular_degree(), Some(1));
        let h = Digraph::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        assert_eq!(h.out_regular_degree(), None);
        let loopy = Digraph::new(vec!["a".into()], &[]).unwrap();
        assert_eq!(loopy.out_regular_degree(), Some(0));
    }

    #[test]
    fn connectivity_on_cycle_and_path() {
        let g = Digraph::directed_cycle(3);
        let r = g.connectivity().unwrap();
        assert!(r.strongly_connected);
        assert!(r.weakly_connected);
        assert_eq!(r.scc_count, 1);
        assert_eq!(r.reach_count, 1);

        // path a -> b: weakly connected, 2 SCCs, one sink
        let p = Digraph::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        let r = p.connectivity().unwrap();
        assert!(!r.strongly_connected);
        assert!(r.weakly_connected);
        assert_eq!(r.scc_count, 2);
        assert_eq!(r.reach_count, 1);

        // two sources into one sink: still one reach
        let s = Digraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 2), (1, 2)],
        )
        .unwrap();
        assert_eq!(s.connectivity().unwrap().reach_count, 1);

        // one source into two sinks: two reaches
        let t = Digraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1), (0, 2)],
        )
        .unwrap();
        assert_eq!(t.connectivity().unwrap().reach_count, 2);
    }

    #[test]
    fn reach_count_matches_oracle() {
        let mut seed = 0x1234_5678u64;
        let mut next = |m: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % m
        };
        for _ in 0..60 {
            let n = 2 + (next(7) as usize); // up to 8 vertices
            let e = next(2 * n as u64 + 1) as usize;
            let arcs: Vec<(usize, usize)> = (0..e)
                .map(|_| (next(n as u64) as usize, next(n as u64) as usize))
                .collect();
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            let g = Digraph::new(labels, &arcs).unwrap();
            assert_eq!(
                g.connectivity().unwrap().reach_count,
                reach_count_oracle(&g),
                "arcs {arcs:?}"
            );
        }
    }

    #[test]
    fn empty_graph_errors() {
        let g = Digraph::new(vec![], &[]).unwrap();
        assert!(g.adjacency_matrix().is_err());
        assert!(g.degree_matrix().is_err());
        assert!(g.connectivity().is_err());
    }

    #[test]
    fn reach_count_equals_laplacian_corank() {
        // free rank of the Picard group is the reach count
        use crate::linalg::smith_normal_form;
        let graphs = [
            Digraph::directed_cycle(4),
            Digraph::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (0, 2)]).unwrap(),
            Digraph::from_adjacency(&[vec![1, 0, 1], vec![1, 2, 0], vec![1, 1, 2]]).unwrap(),
        ];
        for g in graphs {
            let r = g.connectivity().unwrap();
            let snf = smith_normal_form(&g.laplacian().unwrap());
            assert_eq!(r.reach_count, snf.cokernel_rank, "graph {:?}", g.labels());
        }
    }
}
