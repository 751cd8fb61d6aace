//! Finite connected multigraphs with loops and rational edge lengths.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{One, Signed};

use crate::chain::Chain;
use crate::error::{PrymError, Result};
use crate::rat::{format_rat, Rat};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type EdgeSet = BTreeSet<EdgeId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }

    /// The endpoint across from `v`; `v` itself for a loop.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.src == v {
            self.dst
        } else {
            self.src
        }
    }
}

/// A finite multigraph. Vertices and edges are dense indices; names are labels.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    edges: Vec<Edge>,
    lengths: Vec<Rat>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

/// A connected piece of a subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Component {
    pub fn genus(&self) -> usize {
        (self.edges.len() + 1)
            .checked_sub(self.vertices.len())
            .expect("a connected component has at least |V|-1 edges")
    }
}

/// Union-find with rollback.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((ra, rb)));
        true
    }

    pub(crate) fn undo(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `v0..` with edges `e0..` of unit length.
    pub fn from_unit_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Graph::new();
        for v in 0..vertex_count {
            g.add_vertex(format!("v{v}"))?;
        }
        for (i, &(s, t)) in edges.iter().enumerate() {
            g.add_edge(format!("e{i}"), s, t, Rat::one())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(PrymError::InvalidInput(format!("duplicate vertex {name:?}")));
        }
        let id = self.vertex_names.len();
        self.vertex_index.insert(name.clone(), id);
        self.vertex_names.push(name);
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        src: VertexId,
        dst: VertexId,
        length: Rat,
    ) -> Result<EdgeId> {
        let name = name.into();
        if self.edge_index.contains_key(&name) {
            return Err(PrymError::InvalidInput(format!("duplicate edge {name:?}")));
        }
        let n = self.vertex_count();
        if src >= n || dst >= n {
            return Err(PrymError::InvalidInput(format!(
                "edge {name:?} has an endpoint outside the vertex set"
            )));
        }
        if !length.is_positive() {
            return Err(PrymError::InvalidInput(format!(
                "edge {name:?} has non-positive length {}",
                format_rat(&length)
            )));
        }
        let id = self.edges.len();
        self.edge_index.insert(name.clone(), id);
        self.edge_names.push(name);
        self.edges.push(Edge { src, dst });
        self.lengths.push(length);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn length(&self, e: EdgeId) -> &Rat {
        &self.lengths[e]
    }

    pub fn lengths(&self) -> &[Rat] {
        &self.lengths
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn edge_ids(&self, names: &[&str]) -> Result<EdgeSet> {
        names
            .iter()
            .map(|n| {
                self.edge_id(n)
                    .ok_or_else(|| PrymError::InvalidInput(format!("unknown edge {n:?}")))
            })
            .collect()
    }

    pub fn edge_names_of(&self, edges: impl IntoIterator<Item = EdgeId>) -> Vec<String> {
        edges.into_iter().map(|e| self.edge_names[e].clone()).collect()
    }

    /// Same combinatorics with new edge lengths.
    pub fn with_lengths(&self, lengths: Vec<Rat>) -> Result<Self> {
        if lengths.len() != self.edge_count() {
            return Err(PrymError::InvalidInput("wrong number of edge lengths".into()));
        }
        if let Some(e) = lengths.iter().position(|l| !l.is_positive()) {
            return Err(PrymError::InvalidInput(format!(
                "edge {:?} has non-positive length",
                self.edge_names[e]
            )));
        }
        let mut g = self.clone();
        g.lengths = lengths;
        Ok(g)
    }

    pub fn with_unit_lengths(&self) -> Self {
        let mut g = self.clone();
        g.lengths = vec![Rat::one(); self.edge_count()];
        g
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Edges incident to `v`; a loop appears once.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        (0..self.edge_count())
            .filter(|&e| self.edges[e].src == v || self.edges[e].dst == v)
            .collect()
    }

    /// Degree of `v`, counting loops twice.
    pub fn valency(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.src == v) + usize::from(e.dst == v))
            .sum()
    }

    /// Connected components of the subgraph on all vertices using only `edges`.
    pub fn components_of(&self, edges: &EdgeSet) -> Vec<Component> {
        let mut adjacency: Vec<Vec<(EdgeId, VertexId)>> = vec![Vec::new(); self.vertex_count()];
        for &e in edges {
            let Edge { src, dst } = self.edges[e];
            adjacency[src].push((e, dst));
            if src != dst {
                adjacency[dst].push((e, src));
            }
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut vertices = Vec::new();
            let mut comp_edges = BTreeSet::new();
            while let Some(v) = stack.pop() {
                vertices.push(v);
                for &(e, w) in &adjacency[v] {
                    comp_edges.insert(e);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            vertices.sort_unstable();
            out.push(Component {
                vertices,
                edges: comp_edges.into_iter().collect(),
            });
        }
        out
    }

    /// Components of the graph with the edges in `removed` deleted.
    pub fn components_without(&self, removed: &EdgeSet) -> Vec<Component> {
        let kept: EdgeSet = (0..self.edge_count()).filter(|e| !removed.contains(e)).collect();
        self.components_of(&kept)
    }

    pub fn components(&self) -> Vec<Component> {
        self.components_without(&EdgeSet::new())
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        let comps = self.components();
        if self.vertex_count() == 0 {
            return Err(PrymError::InvalidInput("graph has no vertices".into()));
        }
        if comps.len() > 1 {
            return Err(PrymError::Disconnected {
                components: comps
                    .iter()
                    .map(|c| c.vertices.iter().map(|&v| self.vertex_names[v].clone()).collect())
                    .collect(),
            });
        }
        Ok(())
    }

    /// First Betti number `|E| - |V| + 1` of a connected graph.
    pub fn genus(&self) -> Result<usize> {
        self.require_connected()?;
        Ok(self.edge_count() + 1 - self.vertex_count())
    }

    /// Checks that `tree` is a spanning tree.
    pub fn check_spanning_tree(&self, tree: &EdgeSet) -> Result<()> {
        if let Some(&e) = tree.iter().find(|&&e| e >= self.edge_count()) {
            return Err(PrymError::NotSpanningTree(format!("edge id {e} out of range")));
        }
        if tree.len() + 1 != self.vertex_count() {
            return Err(PrymError::NotSpanningTree(format!(
                "{} edges given, a spanning tree has {}",
                tree.len(),
                self.vertex_count().saturating_sub(1)
            )));
        }
        let mut uf = UnionFind::new(self.vertex_count());
        for &e in tree {
            let Edge { src, dst } = self.edges[e];
            if !uf.union(src, dst) {
                return Err(PrymError::NotSpanningTree(format!(
                    "edge {:?} closes a cycle",
                    self.edge_names[e]
                )));
            }
        }
        Ok(())
    }

    /// Spanning tree from Kruskal's rule on edge ids in increasing order.
    pub fn least_spanning_tree(&self) -> Result<EdgeSet> {
        self.require_connected()?;
        let mut uf = UnionFind::new(self.vertex_count());
        Ok((0..self.edge_count())
            .filter(|&e| uf.union(self.edges[e].src, self.edges[e].dst))
            .collect())
    }

    /// All spanning trees, by include/exclude backtracking.
    pub fn spanning_trees(&self) -> Result<Vec<EdgeSet>> {
        self.require_connected()?;
        let need = self.vertex_count() - 1;
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let mut uf = UnionFind::new(self.vertex_count());
        self.trees_from(0, need, &mut uf, &mut chosen, &mut out);
        Ok(out)
    }

    fn trees_from(
        &self,
        e: EdgeId,
        need: usize,
        uf: &mut UnionFind,
        chosen: &mut Vec<EdgeId>,
        out: &mut Vec<EdgeSet>,
    ) {
        if chosen.len() == need {
            out.push(chosen.iter().copied().collect());
            return;
        }
        if self.edge_count() - e < need - chosen.len() {
            return;
        }
        let Edge { src, dst } = self.edges[e];
        if uf.union(src, dst) {
            chosen.push(e);
            self.trees_from(e + 1, need, uf, chosen, out);
            chosen.pop();
        }
        uf.undo();
        self.trees_from(e + 1, need, uf, chosen, out);
    }

    /// The oriented path from `from` to `to` inside `tree`, as a chain.
    pub fn tree_path(&self, tree: &EdgeSet, from: VertexId, to: VertexId) -> Chain {
        let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([to]);
        seen[to] = true;
        while let Some(v) = queue.pop_front() {
            for &e in tree {
                let edge = self.edges[e];
                if edge.src != v && edge.dst != v {
                    continue;
                }
                let w = edge.other(v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((e, v));
                    queue.push_back(w);
                }
            }
        }
        let mut chain = Chain::zero(self.edge_count());
        let mut v = from;
        while v != to {
            let (e, next) = parent[v].expect("tree does not connect the endpoints");
            let sign = if self.edges[e].src == v { 1 } else { -1 };
            chain.set(e, chain.coeff(e) + sign);
            v = next;
        }
        chain
    }

    /// The unique cycle in `tree + e`, oriented along `e`.
    pub fn fundamental_cycle(&self, tree: &EdgeSet, e: EdgeId) -> Chain {
        let Edge { src, dst } = self.edges[e];
        let mut c = self.tree_path(tree, dst, src);
        c.set(e, c.coeff(e) + 1);
        c
    }

    /// `d(chain)` as a vector indexed by vertex, with `d(e) = dst - src`.
    pub fn boundary(&self, chain: &Chain) -> Vec<i64> {
        let mut b = vec![0; self.vertex_count()];
        for (e, c) in chain.support() {
            b[self.edges[e].dst] += c;
            b[self.edges[e].src] -= c;
        }
        b
    }

    pub fn is_cycle(&self, chain: &Chain) -> bool {
        self.boundary(chain).iter().all(|&x| x == 0)
    }

    /// Splits each listed edge at its midpoint.
    ///
    /// Edge `e` keeps its id and becomes the half from its source to the new
    /// vertex; the other half is appended. The returned vector maps each new
    /// edge id to the original edge it came from.
    pub fn subdivide(&self, which: &EdgeSet) -> Result<(Graph, Vec<EdgeId>)> {
        let mut g = Graph::new();
        for name in &self.vertex_names {
            g.add_vertex(name.clone())?;
        }
        let half = Rat::new(1.into(), 2.into());
        let mut mids = HashMap::new();
        for &e in which {
            let mid = g.add_vertex(format!("{}.mid", self.edge_names[e]))?;
            mids.insert(e, mid);
        }
        let mut origin = Vec::new();
        for e in 0..self.edge_count() {
            let Edge { src, dst } = self.edges[e];
            match mids.get(&e) {
                Some(&mid) => {
                    g.add_edge(format!("{}.a", self.edge_names[e]), src, mid, &self.lengths[e] * &half)?;
                }
                None => {
                    g.add_edge(self.edge_names[e].clone(), src, dst, self.lengths[e].clone())?;
                }
            }
            origin.push(e);
        }
        for &e in which {
            let Edge { dst, .. } = self.edges[e];
            g.add_edge(format!("{}.b", self.edge_names[e]), mids[&e], dst, &self.lengths[e] * &half)?;
            origin.push(e);
        }
        Ok((g, origin))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn theta() -> Graph {
        Graph::from_unit_edges(2, &[(0, 1), (0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn genus_and_components() {
        let g = theta();
        assert_eq!(g.genus().unwrap(), 2);
        let removed: EdgeSet = [0, 1, 2].into();
        assert_eq!(g.components_without(&removed).len(), 2);
        let split = Graph::from_unit_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(split.genus(), Err(PrymError::Disconnected { .. })));
        let bouquet = Graph::from_unit_edges(1, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(bouquet.genus().unwrap(), 2);
        assert_eq!(bouquet.valency(0), 4);
    }

    #[test]
    fn spanning_tree_enumeration() {
        let g = theta();
        assert_eq!(g.spanning_trees().unwrap().len(), 3);
        let k4 = Graph::from_unit_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.spanning_trees().unwrap().len(), 16);
        let looped = Graph::from_unit_edges(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(looped.spanning_trees().unwrap(), vec![EdgeSet::from([1])]);
    }

    #[test]
    fn fundamental_cycles_are_cycles() {
        let g = Graph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 0), (0, 2), (1, 1)]).unwrap();
        let tree = g.least_spanning_tree().unwrap();
        g.check_spanning_tree(&tree).unwrap();
        for e in 0..g.edge_count() {
            if tree.contains(&e) {
                continue;
            }
            let c = g.fundamental_cycle(&tree, e);
            assert!(g.is_cycle(&c));
            assert_eq!(c.coeff(e), 1);
        }
        assert!(g.check_spanning_tree(&EdgeSet::from([0, 4])).is_err());
    }

    #[test]
    fn subdivision_keeps_lengths() {
        let g = Graph::from_unit_edges(1, &[(0, 0)]).unwrap().with_lengths(vec![int(3)]).unwrap();
        let (h, origin) = g.subdivide(&EdgeSet::from([0])).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert!(!h.has_loops());
        assert_eq!(origin, vec![0, 0]);
        assert_eq!(h.length(0) + h.length(1), int(3));
        assert_eq!(h.genus().unwrap(), 1);
    }
}
