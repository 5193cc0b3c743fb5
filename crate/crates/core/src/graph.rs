//! Immutable simple undirected graphs, rooted graphs, and the two rooted
//! operations used by the synthesizer: pasting and path extension.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..vertex_count`.
///
/// Neighbor lists are kept sorted, so two graphs compare equal exactly when
/// they have the same labeled edge set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A connected component together with the original label of each of its
/// vertices (`vertices[i]` is the label in the parent graph of vertex `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// repeated edges (in either orientation).
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut graph = Graph::edgeless(n);
        for (u, v) in edges {
            graph.insert_edge(u, v)?;
        }
        Ok(graph)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::InvalidArgument(format!(
                "edge {u}-{v} has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidArgument(format!("duplicate edge {u}-{v}"))),
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.vertex_count()
    }

    /// Sorted open neighborhood N(v).
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.contains(u) && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "vertex {v} is not in a graph with {} vertices",
                self.vertex_count()
            )))
        }
    }

    /// Induced subgraph on the vertices with `keep[v] == true`, relabeled in
    /// increasing order of the old labels. Also returns the new-to-old map.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        assert_eq!(keep.len(), self.vertex_count());
        let mut new_label = vec![usize::MAX; self.vertex_count()];
        let mut old_label = Vec::new();
        for (v, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            new_label[v] = old_label.len();
            old_label.push(v);
        }
        let mut edge_count = 0;
        let adjacency: Vec<Vec<usize>> = old_label
            .iter()
            .map(|&v| {
                let row: Vec<usize> = self.adjacency[v]
                    .iter()
                    .filter(|&&w| keep[w])
                    .map(|&w| new_label[w])
                    .collect();
                edge_count += row.len();
                row
            })
            .collect();
        (
            Graph {
                adjacency,
                edge_count: edge_count / 2,
            },
            old_label,
        )
    }

    /// Removes the given vertices; remaining labels are compacted in order.
    pub fn delete_vertices(&self, vertices: &[usize]) -> Result<Graph> {
        let mut keep = vec![true; self.vertex_count()];
        for &v in vertices {
            self.check_vertex(v)?;
            keep[v] = false;
        }
        Ok(self.induced_subgraph(&keep).0)
    }

    /// G - v.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.delete_vertices(&[v])
    }

    /// G - N[v].
    pub fn delete_closed_neighborhood(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut closed = self.adjacency[v].clone();
        closed.push(v);
        self.delete_vertices(&closed)
    }

    /// Disjoint union; `other`'s labels are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|row| row.iter().map(|&w| w + shift).collect()),
        );
        Graph {
            adjacency,
            edge_count: self.edge_count + other.edge_count,
        }
    }

    /// Component index of every vertex, numbered in order of lowest member.
    fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    /// True when the graph has at most one component (the null graph counts
    /// as connected).
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Connected components, ordered by their lowest original label.
    pub fn components(&self) -> Vec<Component> {
        let (label, count) = self.component_labels();
        (0..count)
            .map(|c| {
                let keep: Vec<bool> = label.iter().map(|&l| l == c).collect();
                let (graph, vertices) = self.induced_subgraph(&keep);
                Component { graph, vertices }
            })
            .collect()
    }

    /// Number of independent cycles, |E| - |V| + #components.
    pub fn cyclomatic_number(&self) -> usize {
        self.edge_count + self.component_count() - self.vertex_count()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cyclomatic_number() == 0
    }

    /// Some cycle of the graph as a vertex sequence (consecutive vertices
    /// adjacent, last adjacent to first), or `None` for a forest.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        for start in 0..n {
            if depth[start] != usize::MAX {
                continue;
            }
            depth[start] = 0;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if w == parent[u] {
                        continue;
                    }
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = u;
                        stack.push(w);
                    } else {
                        // Non-tree edge u-w closes a cycle through their
                        // lowest common ancestor in the search tree.
                        return Some(tree_cycle(&parent, &depth, u, w));
                    }
                }
            }
        }
        None
    }
}

fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut x, mut y) = (u, w);
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[x] > depth[y] {
        left.push(x);
        x = parent[x];
    }
    while depth[y] > depth[x] {
        right.push(y);
        y = parent[y];
    }
    while x != y {
        left.push(x);
        right.push(y);
        x = parent[x];
        y = parent[y];
    }
    left.push(x);
    left.extend(right.into_iter().rev());
    left
}

/// Path on `n >= 1` vertices, labeled in traversal order.
pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "a path needs at least one vertex".into(),
        ));
    }
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle on `n >= 3` vertices, labeled in traversal order.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Complete graph on `n >= 1` vertices.
pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "a complete graph needs at least one vertex".into(),
        ));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// A graph with one distinguished vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    graph: Graph,
    root: usize,
}

/// Result of [`RootedGraph::paste_with_maps`]: the pasted graph plus where
/// each input vertex ended up.
#[derive(Clone, Debug)]
pub struct Pasted {
    pub rooted: RootedGraph,
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        graph.check_vertex(root)?;
        Ok(RootedGraph { graph, root })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// Identifies the two roots. The merged root is vertex 0, followed by
    /// `self`'s other vertices in order, then `other`'s.
    pub fn paste(&self, other: &RootedGraph) -> RootedGraph {
        self.paste_with_maps(other).rooted
    }

    pub fn paste_with_maps(&self, other: &RootedGraph) -> Pasted {
        let relabel = |rooted: &RootedGraph, offset: usize| -> Vec<usize> {
            let mut next = offset;
            (0..rooted.graph.vertex_count())
                .map(|v| {
                    if v == rooted.root {
                        0
                    } else {
                        next += 1;
                        next
                    }
                })
                .collect()
        };
        let left_map = relabel(self, 0);
        let right_map = relabel(other, self.graph.vertex_count() - 1);
        let n = self.graph.vertex_count() + other.graph.vertex_count() - 1;
        let mut graph = Graph::edgeless(n);
        for (map, source) in [(&left_map, &self.graph), (&right_map, &other.graph)] {
            for (u, v) in source.edges() {
                graph
                    .insert_edge(map[u], map[v])
                    .expect("pasting at a single vertex cannot create loops or parallel edges");
            }
        }
        Pasted {
            rooted: RootedGraph { graph, root: 0 },
            left_map,
            right_map,
        }
    }

    /// Attaches a path with `length` edges at the root and moves the root to
    /// the far end. Existing labels are kept; path vertices are appended.
    pub fn extend(&self, length: usize) -> RootedGraph {
        let n = self.graph.vertex_count();
        let mut graph = self.graph.clone();
        graph.adjacency.resize(n + length, Vec::new());
        let mut previous = self.root;
        for next in n..n + length {
            graph
                .insert_edge(previous, next)
                .expect("fresh path vertex");
            previous = next;
        }
        RootedGraph {
            graph,
            root: previous,
        }
    }
}
