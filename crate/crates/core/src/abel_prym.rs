//! The degree `g - 1` Abel-Prym map, cell by cell.
//!
//! A cell is an ordered list of `g - 1` edges of the total graph; a point in
//! it picks a parameter on each edge, measured from the edge's source. In the
//! coordinates `a_j = (D - iota D, basis_j)` the map is affine on each cell
//! with linear part the integer matrix `M[j][i] = coefficient of basis_j on
//! edge i`, and lands in `R^(g-1)` modulo the lattice spanned by the Gram
//! matrix rows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::chain::Chain;
use crate::cover::DoubleCover;
use crate::error::{PrymError, Result};
use crate::graph::{EdgeId, EdgeSet, VertexId};
use crate::lattice::{gram_matrix, prym_basis, prym_basis_ordered, verify_basis, PrymBasis};
use crate::matrix::RatMatrix;
use crate::ogod::is_ogod;
use crate::rat::{format_rat, Rat};

/// Linear part of the Abel-Prym map on one cell.
#[derive(Clone, Debug)]
pub struct CellMatrix {
    pub edges: Vec<EdgeId>,
    pub matrix: RatMatrix,
    pub det: Rat,
    pub degree: u64,
}

/// A point of the Prym torsor in `a_j` coordinates, defined modulo the Gram lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorPoint {
    pub coords: Vec<Rat>,
}

/// One preimage of a target point.
#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub edges: Vec<EdgeId>,
    pub parameters: Vec<Rat>,
    pub degree: u64,
    /// Lattice translate used: `image = target + G * lattice_shift`.
    pub lattice_shift: Vec<BigInt>,
}

/// Column-replacement determinants around one codimension-one cell.
#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub vertex: VertexId,
    /// `(edge, det)` for each edge at the vertex, oriented away from it.
    pub terms: Vec<(EdgeId, Rat)>,
    pub sum: Rat,
    pub positive: Rat,
    pub negative: Rat,
    pub balanced: bool,
    /// Nonzero `|det|` values in decreasing order.
    pub pattern: Vec<u64>,
}

/// The three generic local pictures around a codimension-one cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BalancePattern {
    /// No non-contracted neighbour.
    Contracted,
    /// Two cells of equal degree.
    Two,
    /// One cell of twice the degree of two others.
    Three,
    /// Four cells of equal degree.
    Four,
    Other,
}

impl BalanceReport {
    pub fn classify(&self) -> BalancePattern {
        match self.pattern.as_slice() {
            [] => BalancePattern::Contracted,
            [a, b] if a == b => BalancePattern::Two,
            [a, b, c] if b == c && *a == 2 * b => BalancePattern::Three,
            [a, b, c, d] if a == b && b == c && c == d => BalancePattern::Four,
            _ => BalancePattern::Other,
        }
    }
}

/// `M[j][i] = coefficient of basis cycle j on edge i`, for a loopless cover.
pub fn cell_matrix(cover: &DoubleCover, basis: &PrymBasis, edges: &[EdgeId]) -> Result<CellMatrix> {
    if cover.base().has_loops() {
        return Err(PrymError::LoopyModel);
    }
    let k = basis.rank();
    if edges.len() != k {
        return Err(PrymError::InvalidInput(format!("a cell has {k} edges, got {}", edges.len())));
    }
    if let Some(&x) = edges.iter().find(|&&x| x >= cover.total().edge_count()) {
        return Err(PrymError::InvalidInput(format!("edge id {x} out of range")));
    }
    let matrix = RatMatrix::from_fn(k, k, |j, i| {
        let c = &basis.cycles[j];
        let x = edges[i];
        Rat::new(BigInt::from(c.coeff(x) - c.coeff(x ^ 1)), BigInt::from(2))
    });
    let det = matrix.det();
    let degree = det.abs().to_integer().to_u64().expect("cell degree fits in u64");
    Ok(CellMatrix {
        edges: edges.to_vec(),
        matrix,
        det,
        degree,
    })
}

/// `2^(r-1)` if the projected edges are distinct and form a decomposition of rank `r`, else 0.
pub fn cell_degree_by_ogod(cover: &DoubleCover, edges: &[EdgeId]) -> u64 {
    let projected: EdgeSet = edges.iter().map(|&x| cover.project_edge(x)).collect();
    if projected.len() != edges.len() || !is_ogod(cover, &projected) {
        return 0;
    }
    let r = cover.base().components_without(&projected).len();
    1 << (r - 1)
}

/// Abel-Prym data on the loopless model of a cover.
#[derive(Clone, Debug)]
pub struct AbelPrym {
    model: DoubleCover,
    base_origin: Vec<EdgeId>,
    basis: PrymBasis,
    gram: RatMatrix,
    gram_inverse: RatMatrix,
    /// `a_j` of the tree path from the base vertex to each total vertex.
    vertex_offsets: Vec<Vec<Rat>>,
}

impl AbelPrym {
    /// Subdivides loops and sets up the basis, keeping the generator order of the original cover.
    pub fn new(cover: &DoubleCover) -> Result<Self> {
        if cover.genus() < 2 {
            return Err(PrymError::InvalidInput("the Prym variety of a genus one base is a point".into()));
        }
        let (model, base_origin) = cover.loopless_model()?;
        let original = prym_basis(cover);
        // Loops keep their flip data on the appended second half, the later id.
        let moved: BTreeMap<EdgeId, EdgeId> = (0..model.base().edge_count())
            .map(|e| (base_origin[e], e))
            .collect();
        let order: Vec<EdgeId> = original.generators.iter().map(|e| moved[e]).collect();
        let basis = prym_basis_ordered(&model, &order)?;
        verify_basis(&model, &basis)?;
        let gram = gram_matrix(&model, &basis);
        let gram_inverse = gram
            .inverse()
            .ok_or_else(|| PrymError::Inconsistent("Gram matrix is singular".into()))?;
        let tree = model.lifted_tree();
        let total = model.total();
        let vertex_offsets = (0..total.vertex_count())
            .map(|v| {
                let path = total.tree_path(&tree, 0, v);
                chain_coordinates_with(&model, &basis, &path)
            })
            .collect();
        Ok(AbelPrym {
            model,
            base_origin,
            basis,
            gram,
            gram_inverse,
            vertex_offsets,
        })
    }

    pub fn model(&self) -> &DoubleCover {
        &self.model
    }

    pub fn basis(&self) -> &PrymBasis {
        &self.basis
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }

    /// Original base edge of a model base edge.
    pub fn base_origin(&self, e: EdgeId) -> EdgeId {
        self.base_origin[e]
    }

    /// Model total edge id from its name, e.g. `"h3+"` or `"h1.a-"`.
    pub fn total_edge(&self, name: &str) -> Result<EdgeId> {
        self.model
            .total()
            .edge_id(name)
            .ok_or_else(|| PrymError::InvalidInput(format!("unknown total edge {name:?}")))
    }

    pub fn total_edges(&self, names: &[&str]) -> Result<Vec<EdgeId>> {
        names.iter().map(|n| self.total_edge(n)).collect()
    }

    /// Model edge and parameter of the point at `distance` from the source of
    /// total edge `x` of the original cover.
    pub fn locate(&self, x: EdgeId, distance: &Rat) -> Result<(EdgeId, Rat)> {
        let original_edges = self.base_origin.len() - self.subdivided_count();
        let e = x / 2;
        if e >= original_edges {
            return Err(PrymError::InvalidInput(format!("edge id {x} out of range")));
        }
        let total = self.model.total();
        let Some(second) = (original_edges..self.base_origin.len()).find(|&b| self.base_origin[b] == e) else {
            let len = total.length(x);
            if distance.is_negative() || distance > len {
                return Err(PrymError::ParameterOutOfRange {
                    edge: total.edge_name(x).to_string(),
                    value: format_rat(distance),
                    length: format_rat(len),
                });
            }
            return Ok((x, distance.clone()));
        };
        let label = x % 2;
        let half = total.length(2 * e).clone();
        let full = &half + &half;
        if distance.is_negative() || distance > &full {
            return Err(PrymError::ParameterOutOfRange {
                edge: format!("{}{}", self.model.base().edge_name(e).trim_end_matches(".a"), ["+", "-"][label]),
                value: format_rat(distance),
                length: format_rat(&full),
            });
        }
        // The first half's label agrees with the original label unless the
        // flip's `+` lift starts on sheet `-`.
        let first_label = if self.model.orientation(second) == 1 { label } else { label ^ 1 };
        if distance <= &half {
            Ok((2 * e + first_label, distance.clone()))
        } else {
            Ok((2 * second + label, distance - half))
        }
    }

    fn subdivided_count(&self) -> usize {
        self.base_origin.iter().enumerate().filter(|&(i, &o)| i != o).count()
    }

    pub fn cell_matrix(&self, edges: &[EdgeId]) -> Result<CellMatrix> {
        cell_matrix(&self.model, &self.basis, edges)
    }

    /// Cell degree by determinant, cross-checked against the decomposition count.
    pub fn cell_degree(&self, edges: &[EdgeId]) -> Result<u64> {
        let by_det = self.cell_matrix(edges)?.degree;
        let by_ogod = cell_degree_by_ogod(&self.model, edges);
        if by_det != by_ogod {
            return Err(PrymError::Inconsistent(format!(
                "cell {:?}: determinant gives degree {by_det}, decomposition gives {by_ogod}",
                self.model.total().edge_names_of(edges.iter().copied())
            )));
        }
        Ok(by_det)
    }

    /// All cells with nonzero degree: every lift of every decomposition.
    pub fn noncontracted_cells(&self) -> Result<Vec<CellMatrix>> {
        let mut out = Vec::new();
        for ogod in crate::ogod::enumerate_ogods(&self.model) {
            let k = ogod.edges.len();
            for mask in 0u32..(1 << k) {
                let edges: Vec<EdgeId> = ogod
                    .edges
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| 2 * e + usize::from(mask & (1 << i) != 0))
                    .collect();
                let cell = self.cell_matrix(&edges)?;
                if cell.degree == 0 {
                    return Err(PrymError::Inconsistent(format!(
                        "lift {:?} of a decomposition is contracted",
                        self.model.total().edge_names_of(edges)
                    )));
                }
                out.push(cell);
            }
        }
        Ok(out)
    }

    /// Determinants with column `drop_index` replaced by each edge at one endpoint of that edge.
    pub fn harmonicity_balance(&self, edges: &[EdgeId], drop_index: usize, at_source: bool) -> Result<BalanceReport> {
        let cell = self.cell_matrix(edges)?;
        if drop_index >= edges.len() {
            return Err(PrymError::InvalidInput("drop index out of range".into()));
        }
        let total = self.model.total();
        let dropped = total.edge(edges[drop_index]);
        let vertex = if at_source { dropped.src } else { dropped.dst };
        let mut terms = Vec::new();
        for x in total.incident_edges(vertex) {
            let sign = if total.edge(x).src == vertex { 1 } else { -1 };
            let mut m = cell.matrix.clone();
            for j in 0..m.rows() {
                let c = &self.basis.cycles[j];
                m[(j, drop_index)] = Rat::new(BigInt::from(sign * (c.coeff(x) - c.coeff(x ^ 1))), BigInt::from(2));
            }
            terms.push((x, m.det()));
        }
        let sum: Rat = terms.iter().map(|(_, d)| d.clone()).sum();
        let positive: Rat = terms.iter().filter(|(_, d)| d.is_positive()).map(|(_, d)| d.clone()).sum();
        let negative: Rat = terms.iter().filter(|(_, d)| d.is_negative()).map(|(_, d)| -d.clone()).sum();
        let mut pattern: Vec<u64> = terms
            .iter()
            .filter(|(_, d)| !d.is_zero())
            .map(|(_, d)| d.abs().to_integer().to_u64().expect("degree fits in u64"))
            .collect();
        pattern.sort_unstable_by(|a, b| b.cmp(a));
        Ok(BalanceReport {
            vertex,
            balanced: sum.is_zero() && positive == negative,
            terms,
            sum,
            positive,
            negative,
            pattern,
        })
    }

    /// `a_j` coordinates of an integer chain `c`: `1/2 sum_e (c - iota c)_e basis_j,e len(e)`.
    pub fn chain_coordinates(&self, chain: &Chain) -> TorsorPoint {
        TorsorPoint {
            coords: chain_coordinates_with(&self.model, &self.basis, chain),
        }
    }

    /// Coordinates of the divisor `D - iota D`, where `D` has one point per
    /// `(edge, parameter)` pair at that distance from the edge's source.
    pub fn torsor_coordinates(&self, divisor: &[(EdgeId, Rat)]) -> Result<TorsorPoint> {
        let total = self.model.total();
        let k = self.dimension();
        let mut coords = vec![Rat::zero(); k];
        for (x, t) in divisor {
            if *x >= total.edge_count() {
                return Err(PrymError::InvalidInput(format!("edge id {x} out of range")));
            }
            let len = total.length(*x);
            if t.is_negative() || t > len {
                return Err(PrymError::ParameterOutOfRange {
                    edge: total.edge_name(*x).to_string(),
                    value: format_rat(t),
                    length: format_rat(len),
                });
            }
            let src = total.edge(*x).src;
            for (j, a) in coords.iter_mut().enumerate() {
                let c = &self.basis.cycles[j];
                let speed = Rat::new(BigInt::from(c.coeff(*x) - c.coeff(x ^ 1)), BigInt::from(2));
                *a += &self.vertex_offsets[src][j] + speed * t;
            }
        }
        Ok(TorsorPoint { coords })
    }

    /// Integer `lambda` with `p - q = G lambda`, if any.
    pub fn lattice_difference(&self, p: &TorsorPoint, q: &TorsorPoint) -> Option<Vec<BigInt>> {
        let delta: Vec<Rat> = p.coords.iter().zip(&q.coords).map(|(a, b)| a - b).collect();
        let lambda = self.gram_inverse.mul_vec(&delta);
        lambda
            .iter()
            .all(Rat::is_integer)
            .then(|| lambda.iter().map(Rat::to_integer).collect())
    }

    pub fn equivalent(&self, p: &TorsorPoint, q: &TorsorPoint) -> bool {
        self.lattice_difference(p, q).is_some()
    }

    /// Image of the corner of a cell where every parameter is zero.
    pub fn cell_origin(&self, edges: &[EdgeId]) -> Result<TorsorPoint> {
        let zero: Vec<(EdgeId, Rat)> = edges.iter().map(|&x| (x, Rat::zero())).collect();
        self.torsor_coordinates(&zero)
    }

    /// Images of the `2^(g-1)` corners of a cell, in binary order of the corner.
    pub fn cell_image_corners(&self, edges: &[EdgeId]) -> Result<Vec<TorsorPoint>> {
        let total = self.model.total();
        let k = edges.len();
        (0u32..(1 << k))
            .map(|mask| {
                let divisor: Vec<(EdgeId, Rat)> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let t = if mask & (1 << i) != 0 { total.length(x).clone() } else { Rat::zero() };
                        (x, t)
                    })
                    .collect();
                self.torsor_coordinates(&divisor)
            })
            .collect()
    }

    /// All preimages of a generic target with their local degrees.
    pub fn fiber(&self, target: &TorsorPoint) -> Result<Vec<FiberPoint>> {
        let mut out = Vec::new();
        for cell in self.noncontracted_cells()? {
            out.extend(self.fiber_in_cell(&cell, target)?);
        }
        Ok(out)
    }

    fn fiber_in_cell(&self, cell: &CellMatrix, target: &TorsorPoint) -> Result<Vec<FiberPoint>> {
        let total = self.model.total();
        let k = self.dimension();
        let inverse = cell.matrix.inverse().expect("non-contracted cell has invertible matrix");
        let origin = self.cell_origin(&cell.edges)?;
        let lengths: Vec<Rat> = cell.edges.iter().map(|&x| total.length(x).clone()).collect();
        let mut low: Vec<Option<BigInt>> = vec![None; k];
        let mut high: Vec<Option<BigInt>> = vec![None; k];
        for corner in self.cell_image_corners(&cell.edges)? {
            let delta: Vec<Rat> = corner.coords.iter().zip(&target.coords).map(|(a, b)| a - b).collect();
            let lambda = self.gram_inverse.mul_vec(&delta);
            for (i, l) in lambda.iter().enumerate() {
                let f = l.floor().to_integer();
                let c = l.ceil().to_integer();
                if low[i].as_ref().is_none_or(|x| f < *x) {
                    low[i] = Some(f);
                }
                if high[i].as_ref().is_none_or(|x| c > *x) {
                    high[i] = Some(c);
                }
            }
        }
        let low: Vec<BigInt> = low.into_iter().map(|x| x.expect("at least one corner")).collect();
        let high: Vec<BigInt> = high.into_iter().map(|x| x.expect("at least one corner")).collect();
        let mut out = Vec::new();
        let mut lambda = low.clone();
        loop {
            let lambda_rat: Vec<Rat> = lambda.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let shift = self.gram.mul_vec(&lambda_rat);
            let rhs: Vec<Rat> = (0..k).map(|j| &target.coords[j] + &shift[j] - &origin.coords[j]).collect();
            let x = inverse.mul_vec(&rhs);
            let inside = x.iter().zip(&lengths).all(|(t, l)| !t.is_negative() && t <= l);
            if inside {
                if x.iter().zip(&lengths).any(|(t, l)| t.is_zero() || t == l) {
                    return Err(PrymError::NonGenericTarget);
                }
                out.push(FiberPoint {
                    edges: cell.edges.clone(),
                    parameters: x,
                    degree: cell.degree,
                    lattice_shift: lambda.clone(),
                });
            }
            // Odometer over the integer box.
            let mut i = 0;
            while i < k {
                if lambda[i] < high[i] {
                    lambda[i] += 1;
                    break;
                }
                lambda[i] = low[i].clone();
                i += 1;
            }
            if i == k {
                break;
            }
        }
        Ok(out)
    }

    /// A random target `G mu` with `mu` uniform rationals in `[0, 1)`.
    pub fn random_target(&self, rng: &mut impl Rng) -> TorsorPoint {
        let k = self.dimension();
        let mu: Vec<Rat> = (0..k)
            .map(|_| {
                let den: i64 = rng.gen_range(1_000..1_000_000);
                let num: i64 = rng.gen_range(0..den);
                Rat::new(num.into(), den.into())
            })
            .collect();
        TorsorPoint {
            coords: self.gram.mul_vec(&mu),
        }
    }

    /// Sum of local degrees over the fiber of a fresh generic random target.
    pub fn random_fiber_degree(&self, rng: &mut impl Rng) -> Result<(TorsorPoint, Vec<FiberPoint>, u64)> {
        for _ in 0..100 {
            let target = self.random_target(rng);
            match self.fiber(&target) {
                Ok(points) => {
                    let total = points.iter().map(|p| p.degree).sum();
                    return Ok((target, points, total));
                }
                Err(PrymError::NonGenericTarget) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(PrymError::NonGenericTarget)
    }

    /// The cell matrix in a basis adapted to the cell, which is lower
    /// triangular with `|diagonal| = (2, ..., 2, 1, ..., 1)` (`r - 1` twos).
    ///
    /// Re-presents the cover with a spanning tree made of spanning trees of
    /// the complementary components joined by the cell edges reached in
    /// breadth-first order, labels the remaining edges so the triangular shape
    /// appears, and returns the matrix with columns in that order and each
    /// tree column signed to point away from the root component.
    pub fn adapted_cell_matrix(&self, edges: &[EdgeId]) -> Result<AdaptedCell> {
        adapted_cell_matrix(&self.model, edges)
    }
}

fn chain_coordinates_with(cover: &DoubleCover, basis: &PrymBasis, chain: &Chain) -> Vec<Rat> {
    let anti = chain - &cover.involute_chain(chain);
    let lengths = cover.total().lengths();
    basis
        .cycles
        .iter()
        .map(|c| anti.length_pairing(c, lengths) / Rat::from_integer(2.into()))
        .collect()
}

/// Result of [`AbelPrym::adapted_cell_matrix`].
#[derive(Clone, Debug)]
pub struct AdaptedCell {
    /// Number of components left after removing the projected edges.
    pub rank: usize,
    /// Base edges indexing the adapted basis.
    pub generators: Vec<EdgeId>,
    /// Total edges of the cell in column order, in the original numbering.
    pub columns: Vec<EdgeId>,
    pub matrix: RatMatrix,
}

impl AdaptedCell {
    pub fn is_triangular_with_expected_diagonal(&self) -> bool {
        let k = self.matrix.rows();
        let lower = (0..k).all(|j| (j + 1..k).all(|i| self.matrix[(j, i)].is_zero()));
        let diag = (0..k).all(|j| {
            let want = if j + 1 < self.rank { 2 } else { 1 };
            self.matrix[(j, j)].abs() == Rat::from_integer(want.into())
        });
        lower && diag
    }
}

fn adapted_cell_matrix(cover: &DoubleCover, edges: &[EdgeId]) -> Result<AdaptedCell> {
    let base = cover.base();
    let total = cover.total();
    let projected: Vec<EdgeId> = edges.iter().map(|&x| cover.project_edge(x)).collect();
    let removed: EdgeSet = projected.iter().copied().collect();
    if removed.len() != edges.len() || !is_ogod(cover, &removed) {
        return Err(PrymError::InvalidInput("cell does not lie over a decomposition".into()));
    }
    let comps = base.components_without(&removed);
    let r = comps.len();
    let mut comp_of = vec![0usize; base.vertex_count()];
    for (k, c) in comps.iter().enumerate() {
        for &v in &c.vertices {
            comp_of[v] = k;
        }
    }
    // Spanning tree of each component and its one extra edge.
    let mut tree = EdgeSet::new();
    let mut extra = vec![0; r];
    for (k, c) in comps.iter().enumerate() {
        let mut uf = crate::graph::UnionFind::new(base.vertex_count());
        for &e in &c.edges {
            let edge = base.edge(e);
            if uf.union(edge.src, edge.dst) {
                tree.insert(e);
            } else {
                extra[k] = e;
            }
        }
    }
    // Breadth-first tree of the contracted graph; `label[k]` orders components.
    let mut label = vec![usize::MAX; r];
    label[0] = 0;
    let mut joining: Vec<(usize, usize, i64)> = Vec::new(); // (cell index, component reached, orientation)
    let mut frontier = std::collections::VecDeque::from([0usize]);
    while let Some(k) = frontier.pop_front() {
        for (i, &e) in projected.iter().enumerate() {
            let edge = base.edge(e);
            let (a, b) = (comp_of[edge.src], comp_of[edge.dst]);
            let (far, sign) = if a == k && label[b] == usize::MAX {
                (b, 1)
            } else if b == k && label[a] == usize::MAX {
                (a, -1)
            } else {
                continue;
            };
            label[far] = joining.len() + 1;
            joining.push((i, far, sign));
            tree.insert(e);
            frontier.push_back(far);
        }
    }
    let tree_cells: EdgeSet = joining.iter().map(|&(i, _, _)| i).collect();
    let rest: Vec<usize> = (0..edges.len()).filter(|i| !tree_cells.contains(i)).collect();

    let vmap: Vec<VertexId> = (0..total.vertex_count()).map(|x| cover.project_vertex(x)).collect();
    let emap: Vec<EdgeId> = (0..total.edge_count()).map(|x| cover.project_edge(x)).collect();
    let base_flip = extra[0];
    let (probe, probe_iso) =
        DoubleCover::present(base, total, &vmap, &emap, &tree, Some(base_flip), &BTreeMap::new())?;
    let new_sheet = |x: VertexId| probe_iso.vertex[x] % 2;
    let mut plus_lifts = BTreeMap::new();
    for &(i, comp, sign) in &joining {
        let f = total.edge(edges[i]);
        let far_end = if sign == 1 { f.dst } else { f.src };
        let e = extra[comp];
        let lift = [2 * e, 2 * e + 1]
            .into_iter()
            .find(|&x| new_sheet(total.edge(x).src) == new_sheet(far_end))
            .expect("one lift starts on each sheet");
        plus_lifts.insert(e, lift);
    }
    for &i in &rest {
        if probe.is_flip(projected[i]) {
            plus_lifts.insert(projected[i], edges[i]);
        }
    }
    let (adapted, iso) = DoubleCover::present(base, total, &vmap, &emap, &tree, Some(base_flip), &plus_lifts)?;
    let mut generators: Vec<EdgeId> = joining.iter().map(|&(_, comp, _)| extra[comp]).collect();
    generators.extend(rest.iter().map(|&i| projected[i]));
    let basis = prym_basis_ordered(&adapted, &generators)?;
    let mut columns: Vec<usize> = joining.iter().map(|&(i, _, _)| i).collect();
    columns.extend(rest.iter().copied());
    let column_sign: Vec<i64> = joining
        .iter()
        .map(|&(_, _, s)| s)
        .chain(rest.iter().map(|&i| if iso.edge[edges[i]] % 2 == 0 { 1 } else { -1 }))
        .collect();
    let k = edges.len();
    let matrix = RatMatrix::from_fn(k, k, |j, c| {
        let x = iso.edge[edges[columns[c]]];
        let cyc = &basis.cycles[j];
        let value = (cyc.coeff(x) - cyc.coeff(x ^ 1)) / 2;
        Rat::from_integer(BigInt::from(value * column_sign[c]))
    });
    debug_assert!(matrix.det().abs().is_integer());
    Ok(AdaptedCell {
        rank: r,
        generators,
        columns: columns.iter().map(|&i| edges[i]).collect(),
        matrix,
    })
}

/// Cells of every `(g-1)`-multiset of total edges, for exhaustive scans.
pub fn all_multisets(edge_count: usize, size: usize) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, edge_count, size, &mut cur, &mut out);
    out
}

/// Checks `sum over non-contracted cells of det^2 * w = 2^(g-1) * Vol^2`.
pub fn volume_cover_identity(ap: &AbelPrym) -> Result<bool> {
    let total = ap.model().total();
    let mut lhs = Rat::zero();
    for cell in ap.noncontracted_cells()? {
        let w: Rat = cell.edges.iter().fold(Rat::one(), |acc, &x| acc * total.length(x));
        lhs += &cell.det * &cell.det * w;
    }
    let rhs = ap.gram().det() * Rat::from_integer(BigInt::from(2).pow(ap.dimension() as u32));
    Ok(lhs == rhs)
}
