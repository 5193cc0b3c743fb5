//! Exact independence polynomials and their value at `x = -1`.
//!
//! Both quantities come out of one recursion, generic over the coefficient
//! ring: split into connected components and multiply; a tree component is
//! finished by dynamic programming; any other component is split at a pivot
//! `v` via `I(G) = I(G - v) + x * I(G - N[v])`.
//!
//! The pivot is a maximum-degree vertex of the component's 2-core (lowest
//! label on ties). A 2-core vertex lies on a cycle, so both branches have
//! strictly fewer independent cycles and the recursion depth is bounded by
//! the cyclomatic number.

use std::collections::VecDeque;
use std::env;

use num_traits::ToPrimitive;

use crate::bracket::Bracket;
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::poly::IntegerPolynomial;

/// Default vertex cap for [`brute_force_census`].
pub const DEFAULT_ORACLE_CAP: usize = 25;
/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "INDPOLY_ORACLE_CAP";
/// Largest cap the subset table can support.
pub const MAX_ORACLE_CAP: usize = 30;

/// Oracle cap from `INDPOLY_ORACLE_CAP`, falling back to the default when the
/// variable is unset or unparsable; clamped to [`MAX_ORACLE_CAP`].
pub fn oracle_cap_from_env() -> usize {
    env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
        .min(MAX_ORACLE_CAP)
}

trait Ring: Clone {
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn times_x(&self) -> Self;
}

impl Ring for IntegerPolynomial {
    fn one() -> Self {
        IntegerPolynomial::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn times_x(&self) -> Self {
        self.shift()
    }
}

/// Integers with `x` specialized to -1.
#[derive(Clone, Copy)]
struct AtMinusOne(i64);

impl Ring for AtMinusOne {
    fn one() -> Self {
        AtMinusOne(1)
    }
    fn add(&self, other: &Self) -> Self {
        AtMinusOne(self.0 + other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        AtMinusOne(self.0 * other.0)
    }
    fn times_x(&self) -> Self {
        AtMinusOne(-self.0)
    }
}

struct Solver<'g> {
    graph: &'g Graph,
    active: Vec<bool>,
}

impl<'g> Solver<'g> {
    fn new(graph: &'g Graph) -> Self {
        Solver {
            graph,
            active: vec![false; graph.vertex_count()],
        }
    }

    /// Independence "polynomial" of the subgraph induced by `vertices`.
    fn solve<R: Ring>(&mut self, vertices: &[usize]) -> R {
        let mut result = R::one();
        for component in self.components(vertices) {
            let value = self.solve_connected::<R>(&component);
            result = result.mul(&value);
        }
        result
    }

    fn set_active(&mut self, vertices: &[usize], on: bool) {
        for &v in vertices {
            self.active[v] = on;
        }
    }

    fn components(&mut self, vertices: &[usize]) -> Vec<Vec<usize>> {
        self.set_active(vertices, true);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for &start in vertices {
            if !self.active[start] {
                continue;
            }
            self.active[start] = false;
            let mut component = vec![start];
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in self.graph.neighbors(u) {
                    if self.active[w] {
                        self.active[w] = false;
                        component.push(w);
                        queue.push_back(w);
                    }
                }
            }
            component.sort_unstable();
            out.push(component);
        }
        out
    }

    fn solve_connected<R: Ring>(&mut self, component: &[usize]) -> R {
        self.set_active(component, true);
        let degree: Vec<usize> = component
            .iter()
            .map(|&v| {
                self.graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| self.active[w])
                    .count()
            })
            .collect();
        let edges = degree.iter().sum::<usize>() / 2;
        let result = if edges + 1 == component.len() {
            self.tree_dp::<R>(component)
        } else {
            let pivot = self.core_pivot(component, &degree);
            let without_v: Vec<usize> = component.iter().copied().filter(|&u| u != pivot).collect();
            let closed = self.graph.neighbors(pivot);
            let without_closed: Vec<usize> = without_v
                .iter()
                .copied()
                .filter(|u| closed.binary_search(u).is_err())
                .collect();
            self.set_active(component, false);
            let a = self.solve::<R>(&without_v);
            let b = self.solve::<R>(&without_closed);
            return a.add(&b.times_x());
        };
        self.set_active(component, false);
        result
    }

    /// Maximum-degree vertex of the 2-core, lowest label first. Requires the
    /// component to be active and to contain a cycle.
    fn core_pivot(&self, component: &[usize], degree: &[usize]) -> usize {
        let index_of = |v: usize| component.binary_search(&v).expect("component member");
        let mut core_degree = degree.to_vec();
        let mut removed = vec![false; component.len()];
        let mut queue: Vec<usize> = (0..component.len())
            .filter(|&i| core_degree[i] <= 1)
            .collect();
        while let Some(i) = queue.pop() {
            if removed[i] {
                continue;
            }
            removed[i] = true;
            for &w in self.graph.neighbors(component[i]) {
                if !self.active[w] {
                    continue;
                }
                let j = index_of(w);
                if !removed[j] {
                    core_degree[j] -= 1;
                    if core_degree[j] == 1 {
                        queue.push(j);
                    }
                }
            }
        }
        (0..component.len())
            .filter(|&i| !removed[i])
            .max_by(|&i, &j| core_degree[i].cmp(&core_degree[j]).then(j.cmp(&i)))
            .map(|i| component[i])
            .expect("a component with a cycle has a non-empty 2-core")
    }

    /// Tree DP: `with[v] = x * prod without[c]`, `without[v] = prod (with[c] + without[c])`.
    fn tree_dp<R: Ring>(&self, component: &[usize]) -> R {
        let index_of = |v: usize| component.binary_search(&v).expect("component member");
        let n = component.len();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        visited[0] = true;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let i = order[head];
            head += 1;
            for &w in self.graph.neighbors(component[i]) {
                if !self.active[w] {
                    continue;
                }
                let j = index_of(w);
                if !visited[j] {
                    visited[j] = true;
                    parent[j] = i;
                    order.push(j);
                }
            }
        }
        let mut with: Vec<R> = vec![R::one(); n];
        let mut without: Vec<R> = vec![R::one(); n];
        for &i in order.iter().rev() {
            let included = with[i].times_x();
            let total = included.add(&without[i]);
            with[i] = included;
            if parent[i] != usize::MAX {
                let p = parent[i];
                without[p] = without[p].mul(&total);
                with[p] = with[p].mul(&without[i]);
            } else {
                return total;
            }
        }
        unreachable!("root is processed last")
    }
}

fn all_vertices(graph: &Graph) -> Vec<usize> {
    (0..graph.vertex_count()).collect()
}

/// Independence polynomial `I(G; x)`, including the empty set (`s_0 = 1`).
pub fn independence_polynomial(graph: &Graph) -> IntegerPolynomial {
    Solver::new(graph).solve(&all_vertices(graph))
}

/// `I(G; -1)`, computed over machine integers without building the polynomial.
pub fn value_at_minus_one(graph: &Graph) -> i64 {
    Solver::new(graph)
        .solve::<AtMinusOne>(&all_vertices(graph))
        .0
}

/// Size of a largest independent set; 0 for the empty graph.
pub fn independence_number(graph: &Graph) -> usize {
    independence_polynomial(graph).degree().unwrap_or(0)
}

/// Bracket `<a - b, a, b>` with `a = I(G - v; -1)` and `b = I(G - N[v]; -1)`.
pub fn bracket(rooted: &RootedGraph) -> Bracket {
    let graph = rooted.graph();
    let root = rooted.root();
    let mut solver = Solver::new(graph);
    let without_root: Vec<usize> = (0..graph.vertex_count()).filter(|&u| u != root).collect();
    let closed = graph.neighbors(root);
    let without_closed: Vec<usize> = without_root
        .iter()
        .copied()
        .filter(|u| closed.binary_search(u).is_err())
        .collect();
    let a = solver.solve::<AtMinusOne>(&without_root).0;
    let b = solver.solve::<AtMinusOne>(&without_closed).0;
    let bracket = Bracket::new(a, b);
    debug_assert_eq!(bracket.value(), value_at_minus_one(graph));
    bracket
}

/// Reference census: scans all `2^n` vertex subsets and tallies the
/// independent ones by size. Refuses graphs above `cap` vertices.
pub fn brute_force_census(graph: &Graph, cap: usize) -> Result<IntegerPolynomial> {
    let n = graph.vertex_count();
    if n > cap.min(MAX_ORACLE_CAP) {
        return Err(Error::SizeLimit {
            vertices: n,
            cap: cap.min(MAX_ORACLE_CAP),
        });
    }
    let adjacency: Vec<u32> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let subsets = 1usize << n;
    // independent[s] for every subset s, packed 64 per word.
    let mut independent = vec![0u64; subsets.div_ceil(64)];
    let mut counts = vec![0u64; n + 1];
    independent[0] |= 1;
    counts[0] = 1;
    for s in 1..subsets {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let rest_ok = independent[rest >> 6] >> (rest & 63) & 1 == 1;
        if rest_ok && adjacency[low] & (rest as u32) == 0 {
            independent[s >> 6] |= 1 << (s & 63);
            counts[s.count_ones() as usize] += 1;
        }
    }
    Ok(IntegerPolynomial::new(
        counts.into_iter().map(Into::into).collect(),
    ))
}

/// Value at -1 of a census or recursion result, as `i64`.
pub fn polynomial_at_minus_one(poly: &IntegerPolynomial) -> i64 {
    poly.at_minus_one()
        .to_i64()
        .expect("|I(G;-1)| <= 2^phi(G) fits in i64 at supported sizes")
}
