//! Decycling number (minimum feedback vertex set) and checkable certificates.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exact decycling number with a witness set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decycling {
    pub phi: usize,
    pub witness: Vec<usize>,
}

/// Minimum decycling set by iterative deepening on the budget.
///
/// At budget `t` the search takes a shortest cycle of what remains and
/// branches on deleting each of its vertices. Returns
/// [`Error::BudgetExceeded`] if no set of size `<= budget_cap` exists.
pub fn min_decycling(graph: &Graph, budget_cap: Option<usize>) -> Result<Decycling> {
    let cap = budget_cap.unwrap_or(graph.vertex_count());
    let mut search = Search {
        graph,
        deleted: vec![false; graph.vertex_count()],
        chosen: Vec::new(),
    };
    for budget in 0..=cap {
        if search.run(budget) {
            let mut witness = search.chosen.clone();
            witness.sort_unstable();
            return Ok(Decycling {
                phi: budget,
                witness,
            });
        }
    }
    Err(Error::BudgetExceeded { cap })
}

struct Search<'g> {
    graph: &'g Graph,
    deleted: Vec<bool>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, budget: usize) -> bool {
        let Some(cycle) = shortest_cycle(self.graph, &self.deleted) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for v in cycle {
            self.deleted[v] = true;
            self.chosen.push(v);
            if self.run(budget - 1) {
                return true;
            }
            self.chosen.pop();
            self.deleted[v] = false;
        }
        false
    }
}

/// Vertices of the 2-core of `graph - deleted`; every cycle lives there.
fn two_core(graph: &Graph, deleted: &[bool]) -> Vec<bool> {
    let n = graph.vertex_count();
    let mut alive: Vec<bool> = deleted.iter().map(|d| !d).collect();
    let mut degree: Vec<usize> = (0..n)
        .map(|v| graph.neighbors(v).iter().filter(|&&w| alive[w]).count())
        .collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in graph.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    alive
}

/// A shortest cycle of `graph - deleted`, found by breadth-first search from
/// every 2-core vertex in label order; the first minimum wins.
pub(crate) fn shortest_cycle(graph: &Graph, deleted: &[bool]) -> Option<Vec<usize>> {
    let alive = two_core(graph, deleted);
    let n = graph.vertex_count();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();

    for source in (0..n).filter(|&v| alive[v]) {
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[source] = 0;
        touched.push(source);
        queue.push_back(source);
        let mut bound = best.as_ref().map_or(usize::MAX, Vec::len);
        while let Some(u) = queue.pop_front() {
            // Any cycle found from here has length >= 2 * dist[u] + 1.
            if 2 * dist[u] + 1 >= bound {
                break;
            }
            for &w in graph.neighbors(u) {
                if !alive[w] || w == parent[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if dist[u] + dist[w] + 1 < bound {
                    if let Some(cycle) = join_paths(&parent, u, w) {
                        bound = cycle.len();
                        best = Some(cycle);
                    }
                }
            }
        }
        if best.as_ref().is_some_and(|c| c.len() == 3) {
            break;
        }
    }
    best
}

/// Cycle from the tree paths `u -> source` and `w -> source` plus edge u-w;
/// `None` when the two paths meet before the source.
fn join_paths(parent: &[usize], u: usize, w: usize) -> Option<Vec<usize>> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let left = path(u);
    let right = path(w);
    let shared = left.iter().filter(|x| right.contains(x)).count();
    if shared != 1 {
        return None;
    }
    let mut cycle = left;
    cycle.extend(right.into_iter().rev().skip(1));
    Some(cycle)
}

/// True iff deleting `set` leaves a forest.
pub fn is_decycling_set(graph: &Graph, set: &[usize]) -> Result<bool> {
    Ok(graph.delete_vertices(set)?.is_acyclic())
}

/// Two-sided witness for `phi(G) = k`: `k` vertex-disjoint cycles force at
/// least `k` deletions, and a decycling set of size `k` shows `k` suffice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiCertificate {
    pub disjoint_cycles: Vec<Vec<usize>>,
    pub decycling_set: Vec<usize>,
}

impl PhiCertificate {
    pub fn phi(&self) -> usize {
        self.decycling_set.len()
    }
}

/// Why a [`PhiCertificate`] was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiViolation {
    CountMismatch { cycles: usize, set: usize },
    NotACycle { index: usize },
    CyclesOverlap { vertex: usize },
    InvalidVertex { vertex: usize },
    RepeatedVertex { vertex: usize },
    NotDecycling,
}

impl fmt::Display for PhiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiViolation::CountMismatch { cycles, set } => {
                write!(
                    f,
                    "{cycles} cycles listed but decycling set has {set} vertices"
                )
            }
            PhiViolation::NotACycle { index } => {
                write!(f, "entry {index} is not a cycle of the graph")
            }
            PhiViolation::CyclesOverlap { vertex } => {
                write!(f, "vertex {vertex} lies on two listed cycles")
            }
            PhiViolation::InvalidVertex { vertex } => {
                write!(f, "vertex {vertex} is not in the graph")
            }
            PhiViolation::RepeatedVertex { vertex } => {
                write!(f, "vertex {vertex} repeated in the decycling set")
            }
            PhiViolation::NotDecycling => write!(f, "deleting the set leaves a cycle"),
        }
    }
}

/// Checks every clause of the certificate; `Ok` proves `phi(G) = cert.phi()`.
pub fn check_phi_certificate(
    graph: &Graph,
    cert: &PhiCertificate,
) -> std::result::Result<(), PhiViolation> {
    let n = graph.vertex_count();
    if cert.disjoint_cycles.len() != cert.decycling_set.len() {
        return Err(PhiViolation::CountMismatch {
            cycles: cert.disjoint_cycles.len(),
            set: cert.decycling_set.len(),
        });
    }
    let mut used = vec![false; n];
    for (index, cycle) in cert.disjoint_cycles.iter().enumerate() {
        if let Some(&vertex) = cycle.iter().find(|&&v| v >= n) {
            return Err(PhiViolation::InvalidVertex { vertex });
        }
        let closed = cycle.len() >= 3
            && (0..cycle.len()).all(|i| graph.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if !closed || sorted.len() != cycle.len() {
            return Err(PhiViolation::NotACycle { index });
        }
        for &v in cycle {
            if used[v] {
                return Err(PhiViolation::CyclesOverlap { vertex: v });
            }
            used[v] = true;
        }
    }
    let mut in_set = vec![false; n];
    for &v in &cert.decycling_set {
        if v >= n {
            return Err(PhiViolation::InvalidVertex { vertex: v });
        }
        if in_set[v] {
            return Err(PhiViolation::RepeatedVertex { vertex: v });
        }
        in_set[v] = true;
    }
    match is_decycling_set(graph, &cert.decycling_set) {
        Ok(true) => Ok(()),
        _ => Err(PhiViolation::NotDecycling),
    }
}

/// Reference decycling number by scanning every vertex subset in order of
/// size, with its own union-find acyclicity test. Refuses graphs above
/// [`EXHAUSTIVE_CAP`] vertices.
pub fn exhaustive_decycling_number(graph: &Graph) -> Result<usize> {
    let n = graph.vertex_count();
    if n > EXHAUSTIVE_CAP {
        return Err(Error::SizeLimit {
            vertices: n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        if forest_after_removing(n, &edges, mask) {
            best = size;
        }
    }
    Ok(best)
}

/// Vertex cap for [`exhaustive_decycling_number`].
pub const EXHAUSTIVE_CAP: usize = 15;

fn forest_after_removing(n: usize, edges: &[(usize, usize)], removed: u32) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in edges {
        if removed >> u & 1 == 1 || removed >> v & 1 == 1 {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}
