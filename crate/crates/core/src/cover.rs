//! Free double covers presented by a spanning tree and a flip set.

use std::collections::{BTreeMap, VecDeque};

use crate::chain::Chain;
use crate::error::{PrymError, Result};
use crate::graph::{Component, Edge, EdgeId, EdgeSet, Graph, UnionFind, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheet {
    Plus,
    Minus,
}

impl Sheet {
    pub fn other(self) -> Sheet {
        match self {
            Sheet::Plus => Sheet::Minus,
            Sheet::Minus => Sheet::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sheet::Plus => '+',
            Sheet::Minus => '-',
        }
    }
}

/// Labelling choices beyond the tree and the flip set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverOptions {
    /// Flip edge whose `+` lift joins the two lifted trees; defaults to the
    /// smallest flip id.
    pub base_flip: Option<EdgeId>,
    /// Per flip edge, `+1` if the `+` lift starts on the `+` sheet and `-1`
    /// if it starts on the `-` sheet. Unlisted flips get `+1`.
    pub orientations: BTreeMap<EdgeId, i8>,
}

/// A free double cover `total -> base`.
///
/// Total vertices and edges are numbered so that the lift of base vertex `v`
/// on sheet `+` is `2v` and on sheet `-` is `2v + 1`; likewise the lifts of
/// base edge `e` labelled `+` and `-` are `2e` and `2e + 1`. The involution
/// is therefore `x ^ 1` on both vertices and edges.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    base: Graph,
    total: Graph,
    tree: EdgeSet,
    flips: EdgeSet,
    base_flip: EdgeId,
    orientation: Vec<i8>,
}

/// Identification of an externally numbered total graph with the canonical one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverIsomorphism {
    /// Input total vertex to canonical total vertex.
    pub vertex: Vec<VertexId>,
    /// Input total edge to canonical total edge.
    pub edge: Vec<EdgeId>,
}

impl DoubleCover {
    pub fn new(base: Graph, tree: EdgeSet, flips: EdgeSet) -> Result<Self> {
        Self::with_options(base, tree, flips, CoverOptions::default())
    }

    pub fn with_options(base: Graph, tree: EdgeSet, flips: EdgeSet, options: CoverOptions) -> Result<Self> {
        base.require_connected()?;
        base.check_spanning_tree(&tree)?;
        if let Some(&e) = flips.iter().find(|&&e| e >= base.edge_count()) {
            return Err(PrymError::InvalidInput(format!("flip edge id {e} out of range")));
        }
        if let Some(&e) = flips.iter().find(|e| tree.contains(e)) {
            return Err(PrymError::EdgeInTree(base.edge_name(e).to_string()));
        }
        let Some(&first_flip) = flips.iter().next() else {
            return Err(PrymError::EmptyFlipSet);
        };
        let base_flip = options.base_flip.unwrap_or(first_flip);
        if !flips.contains(&base_flip) {
            return Err(PrymError::InvalidInput(format!(
                "base flip edge {e} is not a flip",
                e = name_or_id(&base, base_flip)
            )));
        }
        let mut orientation = vec![1i8; base.edge_count()];
        for (&e, &sign) in &options.orientations {
            if !flips.contains(&e) {
                return Err(PrymError::InvalidInput(format!(
                    "orientation given for non-flip edge {}",
                    name_or_id(&base, e)
                )));
            }
            if sign != 1 && sign != -1 {
                return Err(PrymError::InvalidInput(format!("orientation must be +1 or -1, got {sign}")));
            }
            if e == base_flip && sign != 1 {
                return Err(PrymError::InvalidInput(
                    "the base flip edge always has orientation +1".into(),
                ));
            }
            orientation[e] = sign;
        }
        let total = build_total(&base, &flips, &orientation)?;
        Ok(DoubleCover {
            base,
            total,
            tree,
            flips,
            base_flip,
            orientation,
        })
    }

    /// Presents an arbitrary free double cover given as a graph morphism.
    ///
    /// Uses the least spanning tree of the base, puts the lowest-numbered lift
    /// of base vertex 0 on sheet `+`, and labels `+` the lift of each flip edge
    /// whose source is on sheet `+`.
    pub fn from_morphism(
        base: &Graph,
        total: &Graph,
        vertex_map: &[VertexId],
        edge_map: &[EdgeId],
    ) -> Result<(DoubleCover, CoverIsomorphism)> {
        let tree = base.least_spanning_tree()?;
        Self::present(base, total, vertex_map, edge_map, &tree, None, &BTreeMap::new())
    }

    /// Presents a morphism with a chosen tree, base flip edge and `+` lifts.
    ///
    /// `plus_lifts` maps flip base edges to the input total edge that should
    /// be labelled `+`; requests for non-flip edges are ignored, since those
    /// are fixed by the sheets.
    pub fn present(
        base: &Graph,
        total: &Graph,
        vertex_map: &[VertexId],
        edge_map: &[EdgeId],
        tree: &EdgeSet,
        base_flip: Option<EdgeId>,
        plus_lifts: &BTreeMap<EdgeId, EdgeId>,
    ) -> Result<(DoubleCover, CoverIsomorphism)> {
        base.require_connected()?;
        base.check_spanning_tree(tree)?;
        let n = base.vertex_count();
        let m = base.edge_count();
        if vertex_map.len() != total.vertex_count() || edge_map.len() != total.edge_count() {
            return Err(PrymError::InvalidInput("morphism maps have the wrong size".into()));
        }
        let mut vertex_fibres: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (x, &v) in vertex_map.iter().enumerate() {
            if v >= n {
                return Err(PrymError::InvalidInput(format!("vertex image {v} out of range")));
            }
            vertex_fibres[v].push(x);
        }
        let mut edge_fibres: Vec<Vec<EdgeId>> = vec![Vec::new(); m];
        for (x, &e) in edge_map.iter().enumerate() {
            if e >= m {
                return Err(PrymError::InvalidInput(format!("edge image {e} out of range")));
            }
            let te = total.edge(x);
            let be = base.edge(e);
            if vertex_map[te.src] != be.src || vertex_map[te.dst] != be.dst {
                return Err(PrymError::InvalidInput(format!(
                    "total edge {:?} does not lie over base edge {:?}",
                    total.edge_name(x),
                    base.edge_name(e)
                )));
            }
            edge_fibres[e].push(x);
        }
        if vertex_fibres.iter().any(|f| f.len() != 2) || edge_fibres.iter().any(|f| f.len() != 2) {
            return Err(PrymError::InvalidInput("morphism is not two-to-one".into()));
        }
        for (e, fibre) in edge_fibres.iter().enumerate() {
            let (a, b) = (total.edge(fibre[0]), total.edge(fibre[1]));
            if a.src == b.src || a.dst == b.dst {
                return Err(PrymError::InvalidInput(format!(
                    "lifts of edge {:?} share an endpoint; the cover is not free",
                    base.edge_name(e)
                )));
            }
        }
        if !total.is_connected() {
            return Err(PrymError::EmptyFlipSet);
        }

        // Sheets by propagation along the lifted tree.
        let mut sheet: Vec<Option<Sheet>> = vec![None; total.vertex_count()];
        let root = vertex_fibres[0][0].min(vertex_fibres[0][1]);
        sheet[root] = Some(Sheet::Plus);
        sheet[other_in(&vertex_fibres[0], root)] = Some(Sheet::Minus);
        let mut queue = VecDeque::from([0usize]);
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &e in tree {
                let be = base.edge(e);
                if be.src != v && be.dst != v {
                    continue;
                }
                let w = be.other(v);
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                for &x in &edge_fibres[e] {
                    let te = total.edge(x);
                    let (near, far) = if be.src == v { (te.src, te.dst) } else { (te.dst, te.src) };
                    sheet[far] = sheet[near];
                }
                queue.push_back(w);
            }
        }
        let sheet: Vec<Sheet> = sheet.into_iter().map(|s| s.expect("tree spans")).collect();

        let mut flips = EdgeSet::new();
        for (e, fibre) in edge_fibres.iter().enumerate() {
            let te = total.edge(fibre[0]);
            if sheet[te.src] != sheet[te.dst] {
                flips.insert(e);
            }
        }
        if flips.is_empty() {
            return Err(PrymError::EmptyFlipSet);
        }
        let mut options = CoverOptions {
            base_flip,
            orientations: BTreeMap::new(),
        };
        let mut plus_lift = vec![0; m];
        for (e, fibre) in edge_fibres.iter().enumerate() {
            let start_sheet = |x: EdgeId| sheet[total.edge(x).src];
            plus_lift[e] = if flips.contains(&e) {
                let chosen = match plus_lifts.get(&e) {
                    Some(&x) if fibre.contains(&x) => x,
                    Some(&x) => {
                        return Err(PrymError::InvalidInput(format!(
                            "requested lift {:?} does not lie over {:?}",
                            total.edge_name(x),
                            base.edge_name(e)
                        )))
                    }
                    None => *fibre
                        .iter()
                        .find(|&&x| start_sheet(x) == Sheet::Plus)
                        .expect("free lift"),
                };
                if start_sheet(chosen) == Sheet::Minus {
                    options.orientations.insert(e, -1);
                }
                chosen
            } else {
                *fibre.iter().find(|&&x| start_sheet(x) == Sheet::Plus).expect("free lift")
            };
        }
        if let Some(b) = base_flip {
            if options.orientations.get(&b) == Some(&-1) {
                return Err(PrymError::InvalidInput(
                    "the base flip edge must have its + lift starting on sheet +".into(),
                ));
            }
        }
        let cover = DoubleCover::with_options(base.clone(), tree.clone(), flips, options)?;
        let vertex = (0..total.vertex_count())
            .map(|x| cover.lift_vertex(vertex_map[x], sheet[x]))
            .collect();
        let edge = (0..total.edge_count())
            .map(|x| {
                let e = edge_map[x];
                let s = if plus_lift[e] == x { Sheet::Plus } else { Sheet::Minus };
                cover.lift_edge(e, s)
            })
            .collect();
        let iso = CoverIsomorphism { vertex, edge };
        debug_assert!(iso_is_consistent(&cover, total, &iso));
        Ok((cover, iso))
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn total(&self) -> &Graph {
        &self.total
    }

    pub fn tree(&self) -> &EdgeSet {
        &self.tree
    }

    pub fn flips(&self) -> &EdgeSet {
        &self.flips
    }

    pub fn is_flip(&self, e: EdgeId) -> bool {
        self.flips.contains(&e)
    }

    pub fn base_flip(&self) -> EdgeId {
        self.base_flip
    }

    /// `+1` or `-1` for flip edges as in [`CoverOptions::orientations`]; `+1` otherwise.
    pub fn orientation(&self, e: EdgeId) -> i8 {
        self.orientation[e]
    }

    pub fn options(&self) -> CoverOptions {
        CoverOptions {
            base_flip: Some(self.base_flip),
            orientations: self
                .flips
                .iter()
                .filter(|&&e| self.orientation[e] != 1)
                .map(|&e| (e, self.orientation[e]))
                .collect(),
        }
    }

    pub fn lift_vertex(&self, v: VertexId, sheet: Sheet) -> VertexId {
        2 * v + usize::from(sheet == Sheet::Minus)
    }

    pub fn lift_edge(&self, e: EdgeId, sheet: Sheet) -> EdgeId {
        2 * e + usize::from(sheet == Sheet::Minus)
    }

    pub fn project_vertex(&self, x: VertexId) -> VertexId {
        x / 2
    }

    pub fn project_edge(&self, x: EdgeId) -> EdgeId {
        x / 2
    }

    pub fn vertex_sheet(&self, x: VertexId) -> Sheet {
        if x.is_multiple_of(2) {
            Sheet::Plus
        } else {
            Sheet::Minus
        }
    }

    /// Sheet label of a total edge (its `+`/`-` name, not the sheet of its source).
    pub fn edge_label(&self, x: EdgeId) -> Sheet {
        self.vertex_sheet(x)
    }

    /// The sheet-swapping involution, on vertex or edge ids alike.
    pub fn involution(&self, x: usize) -> usize {
        x ^ 1
    }

    pub fn genus(&self) -> usize {
        self.base.edge_count() + 1 - self.base.vertex_count()
    }

    pub fn involute_chain(&self, c: &Chain) -> Chain {
        Chain::from_coeffs((0..c.edge_count()).map(|x| c.coeff(x ^ 1)).collect())
    }

    pub fn push_forward(&self, c: &Chain) -> Chain {
        Chain::from_coeffs(
            (0..self.base.edge_count())
                .map(|e| c.coeff(2 * e) + c.coeff(2 * e + 1))
                .collect(),
        )
    }

    pub fn pull_back(&self, c: &Chain) -> Chain {
        Chain::from_coeffs((0..self.total.edge_count()).map(|x| c.coeff(x / 2)).collect())
    }

    /// Lifted spanning tree: both lifts of every tree edge plus the `+` lift
    /// of the base flip edge.
    pub fn lifted_tree(&self) -> EdgeSet {
        let mut t: EdgeSet = self
            .tree
            .iter()
            .flat_map(|&e| [2 * e, 2 * e + 1])
            .collect();
        t.insert(2 * self.base_flip);
        t
    }

    /// Same cover with new base edge lengths.
    pub fn with_lengths(&self, lengths: Vec<crate::rat::Rat>) -> Result<Self> {
        let base = self.base.with_lengths(lengths)?;
        Self::with_options(base, self.tree.clone(), self.flips.clone(), self.options())
    }

    pub fn with_unit_lengths(&self) -> Self {
        Self::with_options(
            self.base.with_unit_lengths(),
            self.tree.clone(),
            self.flips.clone(),
            self.options(),
        )
        .expect("relabelling lengths keeps a valid cover")
    }

    /// Whether the preimage of a connected subgraph is connected, by walking the lifts.
    pub fn preimage_connected(&self, comp: &Component) -> bool {
        let lifted: EdgeSet = comp.edges.iter().flat_map(|&e| [2 * e, 2 * e + 1]).collect();
        let start = 2 * comp.vertices[0];
        let target = start + 1;
        let mut seen = vec![false; self.total.vertex_count()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            if x == target {
                return true;
            }
            for &f in &lifted {
                let Edge { src, dst } = self.total.edge(f);
                for (a, b) in [(src, dst), (dst, src)] {
                    if a == x && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        false
    }

    /// Whether some cycle of the component crosses an odd number of flip edges.
    pub fn has_odd_cycle(&self, comp: &Component) -> bool {
        let mut uf = UnionFind::new(self.base.vertex_count());
        let mut local_tree = EdgeSet::new();
        for &e in &comp.edges {
            let Edge { src, dst } = self.base.edge(e);
            if uf.union(src, dst) {
                local_tree.insert(e);
            }
        }
        comp.edges.iter().filter(|e| !local_tree.contains(e)).any(|&e| {
            let cycle = self.base.fundamental_cycle(&local_tree, e);
            let crossings: i64 = cycle
                .support()
                .filter(|(f, _)| self.flips.contains(f))
                .map(|(_, c)| c.abs())
                .sum();
            crossings % 2 == 1
        })
    }

    /// Subdivides every base loop at its midpoint, see [`DoubleCover::subdivide`].
    pub fn loopless_model(&self) -> Result<(DoubleCover, Vec<EdgeId>)> {
        let loops: EdgeSet = (0..self.base.edge_count())
            .filter(|&e| self.base.edge(e).is_loop())
            .collect();
        if loops.is_empty() {
            return Ok((self.clone(), (0..self.base.edge_count()).collect()));
        }
        self.subdivide(&loops)
    }

    /// Splits the listed base edges at their midpoints.
    ///
    /// The first half of edge `e` keeps id `e` and joins the tree; the second
    /// half carries the tree, flip, base-flip and orientation data of `e`.
    /// Returns the new cover and the base edge each new base edge came from.
    pub fn subdivide(&self, which: &EdgeSet) -> Result<(DoubleCover, Vec<EdgeId>)> {
        let (base, origin) = self.base.subdivide(which)?;
        let second_half: BTreeMap<EdgeId, EdgeId> = which
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, self.base.edge_count() + i))
            .collect();
        let moved = |e: EdgeId| second_half.get(&e).copied().unwrap_or(e);
        let mut tree = self.tree.clone();
        tree.extend(which.iter().copied());
        tree.extend(self.tree.iter().filter_map(|e| second_half.get(e).copied()));
        let flips: EdgeSet = self.flips.iter().map(|&e| moved(e)).collect();
        let options = CoverOptions {
            base_flip: Some(moved(self.base_flip)),
            orientations: self
                .options()
                .orientations
                .into_iter()
                .map(|(e, s)| (moved(e), s))
                .collect(),
        };
        Ok((DoubleCover::with_options(base, tree, flips, options)?, origin))
    }
}

fn name_or_id(g: &Graph, e: EdgeId) -> String {
    if e < g.edge_count() {
        format!("{:?}", g.edge_name(e))
    } else {
        format!("#{e}")
    }
}

fn other_in(pair: &[usize], x: usize) -> usize {
    if pair[0] == x {
        pair[1]
    } else {
        pair[0]
    }
}

fn build_total(base: &Graph, flips: &EdgeSet, orientation: &[i8]) -> Result<Graph> {
    let mut total = Graph::new();
    for v in 0..base.vertex_count() {
        total.add_vertex(format!("{}+", base.vertex_name(v)))?;
        total.add_vertex(format!("{}-", base.vertex_name(v)))?;
    }
    for e in 0..base.edge_count() {
        let Edge { src, dst } = base.edge(e);
        let (p, m) = (|v: VertexId| 2 * v, |v: VertexId| 2 * v + 1);
        let (plus, minus) = if !flips.contains(&e) {
            ((p(src), p(dst)), (m(src), m(dst)))
        } else if orientation[e] == 1 {
            ((p(src), m(dst)), (m(src), p(dst)))
        } else {
            ((m(src), p(dst)), (p(src), m(dst)))
        };
        let len = base.length(e).clone();
        total.add_edge(format!("{}+", base.edge_name(e)), plus.0, plus.1, len.clone())?;
        total.add_edge(format!("{}-", base.edge_name(e)), minus.0, minus.1, len)?;
    }
    Ok(total)
}

fn iso_is_consistent(cover: &DoubleCover, input: &Graph, iso: &CoverIsomorphism) -> bool {
    (0..input.edge_count()).all(|x| {
        let a = input.edge(x);
        let b = cover.total().edge(iso.edge[x]);
        iso.vertex[a.src] == b.src && iso.vertex[a.dst] == b.dst
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_cover() -> DoubleCover {
        let g = Graph::from_unit_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        DoubleCover::new(g, EdgeSet::from([0]), EdgeSet::from([1])).unwrap()
    }

    #[test]
    fn construction_rules() {
        let c = theta_cover();
        let t = c.total();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edge_count(), 6);
        assert!(t.is_connected());
        assert_eq!(t.genus().unwrap(), 2 * c.genus() - 1);
        assert_eq!(t.edge(2), Edge { src: 0, dst: 3 });
        assert_eq!(t.edge(3), Edge { src: 1, dst: 2 });
        t.check_spanning_tree(&c.lifted_tree()).unwrap();
    }

    #[test]
    fn rejects_bad_presentations() {
        let g = Graph::from_unit_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(matches!(
            DoubleCover::new(g.clone(), EdgeSet::from([0]), EdgeSet::new()),
            Err(PrymError::EmptyFlipSet)
        ));
        assert!(matches!(
            DoubleCover::new(g.clone(), EdgeSet::from([0]), EdgeSet::from([0])),
            Err(PrymError::EdgeInTree(_))
        ));
        assert!(matches!(
            DoubleCover::new(g, EdgeSet::from([0, 1]), EdgeSet::from([1])),
            Err(PrymError::NotSpanningTree(_))
        ));
    }

    #[test]
    fn morphism_round_trip() {
        let c = theta_cover();
        let n = c.total().vertex_count();
        let vmap: Vec<_> = (0..n).map(|x| c.project_vertex(x)).collect();
        let emap: Vec<_> = (0..c.total().edge_count()).map(|x| c.project_edge(x)).collect();
        let (d, iso) = DoubleCover::from_morphism(c.base(), c.total(), &vmap, &emap).unwrap();
        assert_eq!(d.flips(), c.flips());
        assert_eq!(iso.vertex, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn preimage_routes_agree_on_subgraphs() {
        let c = theta_cover();
        for mask in 0u32..8 {
            let kept: EdgeSet = (0..3).filter(|e| mask & (1 << e) != 0).collect();
            for comp in c.base().components_of(&kept) {
                assert_eq!(c.preimage_connected(&comp), c.has_odd_cycle(&comp), "mask {mask}");
            }
        }
    }

    #[test]
    fn loops_subdivide_consistently() {
        let g = Graph::from_unit_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let opts = CoverOptions {
            base_flip: None,
            orientations: BTreeMap::from([(2, -1)]),
        };
        let c = DoubleCover::with_options(g, EdgeSet::from([1]), EdgeSet::from([0, 2]), opts).unwrap();
        let (model, origin) = c.loopless_model().unwrap();
        assert!(!model.base().has_loops());
        assert_eq!(model.genus(), c.genus());
        assert_eq!(origin, vec![0, 1, 2, 0, 2]);
        assert!(model.total().is_connected());
        assert_eq!(model.orientation(4), -1);
    }
}
