use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::BivariatePoly;

/// Default cap on edge count for the deletion/contraction Tutte recursion.
pub const DEFAULT_GRAPH_TUTTE_CAP: u32 = 16;

/// Default cap on the exponent of orientation enumerations (2^cap cases).
pub const DEFAULT_ORIENTATION_CAP: u32 = 20;

/// An undirected multigraph: parallel edges are distinct entries of the edge
/// list and carry their list index as identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(num_vertices: usize) -> Self {
        Multigraph { num_vertices, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.num_vertices && v < self.num_vertices, "endpoint out of range");
        self.edges.push((u, v));
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `{vertices, edges: [[u, v, id], …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.num_vertices,
            "edges": self
                .edges
                .iter()
                .enumerate()
                .map(|(id, &(u, v))| serde_json::json!([u, v, id]))
                .collect::<Vec<_>>(),
        })
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_vertices];
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
        count == self.num_vertices
    }

    /// Exact spanning-tree count by the matrix-tree theorem: the determinant
    /// of a principal minor of the multiplicity-weighted Laplacian, computed
    /// by fraction-free integer elimination. Returns 0 for disconnected
    /// input. Self-loops are ignored.
    pub fn spanning_trees(&self) -> BigUint {
        let n = self.num_vertices;
        if n == 0 {
            return BigUint::zero();
        }
        if n == 1 {
            return BigUint::one();
        }
        let mut lap = vec![vec![BigInt::zero(); n]; n];
        for &(u, v) in &self.edges {
            if u == v {
                continue;
            }
            lap[u][u] += 1;
            lap[v][v] += 1;
            lap[u][v] -= 1;
            lap[v][u] -= 1;
        }
        let minor: Vec<Vec<BigInt>> = (1..n)
            .map(|i| (1..n).map(|j| lap[i][j].clone()).collect())
            .collect();
        let det = det_bareiss(minor);
        det.abs().to_biguint().expect("|det| is nonnegative")
    }

    /// Parallel classes (endpoint pairs ignoring order) with multiplicities.
    fn parallel_classes(&self) -> BTreeMap<(usize, usize), u32> {
        let mut classes = BTreeMap::new();
        for &(u, v) in &self.edges {
            let key = (u.min(v), u.max(v));
            *classes.entry(key).or_insert(0u32) += 1;
        }
        classes
    }

    /// Exact count of acyclic orientations by enumerating one direction per
    /// parallel class (antiparallel edges inside a class form a 2-cycle, so
    /// such orientations are cyclic and never counted) and testing each
    /// digraph for cycles with an iterative topological sort.
    pub fn acyclic_orientations(&self, cap: u32) -> Result<BigUint> {
        if self.edges.iter().any(|&(u, v)| u == v) {
            return Ok(BigUint::zero());
        }
        let classes: Vec<(usize, usize)> = self.parallel_classes().into_keys().collect();
        let k = classes.len() as u32;
        if k > cap {
            return Err(Error::CapExceeded { size: k, cap });
        }
        let mut count = BigUint::zero();
        for assignment in 0u64..(1 << k) {
            let arcs: Vec<(usize, usize)> = classes
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if assignment >> i & 1 == 0 { (u, v) } else { (v, u) })
                .collect();
            if is_acyclic(self.num_vertices, &arcs) {
                count += BigUint::one();
            }
        }
        Ok(count)
    }

    /// Exact count of totally cyclic orientations (every edge on a directed
    /// cycle, i.e. every connected component strongly connected), enumerating
    /// all single-edge directions.
    pub fn totally_cyclic_orientations(&self, cap: u32) -> Result<BigUint> {
        let k = self.edges.len() as u32;
        if k > cap {
            return Err(Error::CapExceeded { size: k, cap });
        }
        let components = self.underlying_components();
        let mut count = BigUint::zero();
        for assignment in 0u64..(1 << k) {
            let arcs: Vec<(usize, usize)> = self
                .edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if assignment >> i & 1 == 0 { (u, v) } else { (v, u) })
                .collect();
            if components
                .iter()
                .all(|comp| strongly_connected_within(comp, &arcs))
            {
                count += BigUint::one();
            }
        }
        Ok(count)
    }

    fn underlying_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_vertices];
        let mut out = Vec::new();
        for start in 0..self.num_vertices {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Tutte polynomial by edge deletion/contraction: loops contribute `y`
    /// factors, bridges `x` factors, and other edges recurse into
    /// `T(G\e) + T(G/e)`.
    pub fn tutte(&self, cap: u32) -> Result<BivariatePoly> {
        let k = self.edges.len() as u32;
        if k > cap {
            return Err(Error::CapExceeded { size: k, cap });
        }
        Ok(tutte_rec(self))
    }
}

fn tutte_rec(g: &Multigraph) -> BivariatePoly {
    let Some(&(u, v)) = g.edges.first() else {
        return BivariatePoly::one();
    };
    if u == v {
        let mut rest = g.clone();
        rest.edges.remove(0);
        return &BivariatePoly::y() * &tutte_rec(&rest);
    }
    if is_bridge(g, 0) {
        return &BivariatePoly::x() * &tutte_rec(&contract_edge(g, 0));
    }
    let mut deleted = g.clone();
    deleted.edges.remove(0);
    let sum = tutte_rec(&deleted);
    &sum + &tutte_rec(&contract_edge(g, 0))
}

/// Whether removing edge `idx` disconnects its endpoints.
fn is_bridge(g: &Multigraph, idx: usize) -> bool {
    let (u, v) = g.edges[idx];
    let mut adj = vec![Vec::new(); g.num_vertices];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if i != idx && a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; g.num_vertices];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(w) = stack.pop() {
        if w == v {
            return false;
        }
        for &x in &adj[w] {
            if !seen[x] {
                seen[x] = true;
                stack.push(x);
            }
        }
    }
    true
}

/// Merges the endpoints of edge `idx`, keeping resulting parallels and
/// turning the other copies of the contracted class into loops.
fn contract_edge(g: &Multigraph, idx: usize) -> Multigraph {
    let (u, v) = g.edges[idx];
    debug_assert_ne!(u, v);
    let (keep, gone) = (u.min(v), u.max(v));
    let map = |w: usize| {
        if w == gone {
            keep
        } else if w > gone {
            w - 1
        } else {
            w
        }
    };
    let mut out = Multigraph::new(g.num_vertices - 1);
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if i != idx {
            out.edges.push((map(a), map(b)));
        }
    }
    out
}

fn is_acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indegree = vec![0u32; n];
    let mut out = vec![Vec::new(); n];
    for &(u, v) in arcs {
        indegree[v] += 1;
        out[u].push(v);
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop() {
        removed += 1;
        for &w in &out[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push(w);
            }
        }
    }
    removed == n
}

/// Two-pass reachability from the component's first vertex, restricted to
/// the component's vertex set.
fn strongly_connected_within(component: &[usize], arcs: &[(usize, usize)]) -> bool {
    if component.len() <= 1 {
        return true;
    }
    let reach = |forward: bool| -> usize {
        let mut member = std::collections::HashSet::new();
        member.extend(component.iter().cloned());
        let mut seen = std::collections::HashSet::new();
        let root = component[0];
        seen.insert(root);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &(a, b) in arcs {
                let (from, to) = if forward { (a, b) } else { (b, a) };
                if from == v && member.contains(&to) && seen.insert(to) {
                    stack.push(to);
                }
            }
        }
        seen.len()
    };
    reach(true) == component.len() && reach(false) == component.len()
}

fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by Bareiss
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        g
    }

    fn parallel_pair() -> Multigraph {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        g
    }

    #[test]
    fn spanning_trees_of_small_graphs() {
        assert_eq!(triangle().spanning_trees(), BigUint::from(3u32));
        assert_eq!(parallel_pair().spanning_trees(), BigUint::from(2u32));
        let mut bundle = Multigraph::new(2);
        for _ in 0..7 {
            bundle.add_edge(0, 1);
        }
        assert_eq!(bundle.spanning_trees(), BigUint::from(7u32));
    }

    #[test]
    fn spanning_trees_of_disconnected_graph_is_zero() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1);
        assert!(!g.is_connected());
        assert_eq!(g.spanning_trees(), BigUint::zero());
    }

    #[test]
    fn acyclic_orientation_counts() {
        assert_eq!(triangle().acyclic_orientations(20).unwrap(), BigUint::from(6u32));
        assert_eq!(parallel_pair().acyclic_orientations(20).unwrap(), BigUint::from(2u32));
        let mut with_loop = triangle();
        with_loop.add_edge(1, 1);
        assert_eq!(with_loop.acyclic_orientations(20).unwrap(), BigUint::zero());
    }

    #[test]
    fn totally_cyclic_orientation_counts() {
        assert_eq!(triangle().totally_cyclic_orientations(20).unwrap(), BigUint::from(2u32));
        assert_eq!(parallel_pair().totally_cyclic_orientations(20).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn orientation_caps_are_enforced() {
        let mut g = Multigraph::new(2);
        for _ in 0..8 {
            g.add_edge(0, 1);
        }
        assert!(g.totally_cyclic_orientations(7).is_err());
        assert!(g.acyclic_orientations(0).is_err());
    }

    #[test]
    fn tutte_of_small_graphs() {
        assert_eq!(parallel_pair().tutte(16).unwrap().to_string(), "x + y");
        assert_eq!(triangle().tutte(16).unwrap().to_string(), "x^2 + x + y");

        let mut single = Multigraph::new(2);
        single.add_edge(0, 1);
        assert_eq!(single.tutte(16).unwrap().to_string(), "x");

        let mut lone_loop = Multigraph::new(1);
        lone_loop.add_edge(0, 0);
        assert_eq!(lone_loop.tutte(16).unwrap().to_string(), "y");
    }

    #[test]
    fn tutte_counts_match_direct_counts() {
        for g in [triangle(), parallel_pair()] {
            let t = g.tutte(16).unwrap();
            assert_eq!(t.eval(1, 1).to_biguint().unwrap(), g.spanning_trees());
            assert_eq!(
                t.eval(2, 0).to_biguint().unwrap(),
                g.acyclic_orientations(20).unwrap()
            );
            assert_eq!(
                t.eval(0, 2).to_biguint().unwrap(),
                g.totally_cyclic_orientations(20).unwrap()
            );
        }
    }

    #[test]
    fn serialization_shape() {
        let v = parallel_pair().to_json();
        assert_eq!(v["vertices"], 2);
        assert_eq!(v["edges"][1], serde_json::json!([0, 1, 1]));
    }
}
