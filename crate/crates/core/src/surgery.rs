//! Graph surgery: subdivision, cuts, rewirings, rearrangements, smoothing of
//! degree-two vertices, and moving points between rearrangements.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::edge::{EdgeId, EdgeSpace};
use crate::graph::{GraphPoint, MetricGraph};
use crate::relation::{format_block, Endpoint, EndpointRelation, Side};
use crate::{Error, Rational, Result};

/// A subdivision `ς: Ê → E` of a parent graph: every parent edge is tiled by
/// consecutive child edges glued end to start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    parent: MetricGraph,
    child: MetricGraph,
    edge_map: BTreeMap<EdgeId, EdgeId>,
    offsets: BTreeMap<EdgeId, Rational>,
    pieces: BTreeMap<EdgeId, Vec<EdgeId>>,
}

impl Subdivision {
    pub fn parent(&self) -> &MetricGraph {
        &self.parent
    }

    pub fn child(&self) -> &MetricGraph {
        &self.child
    }

    /// `ς(child_edge)`.
    pub fn parent_edge(&self, child_edge: &EdgeId) -> Option<&EdgeId> {
        self.edge_map.get(child_edge)
    }

    /// Where `child_edge` starts inside its parent edge.
    pub fn offset(&self, child_edge: &EdgeId) -> Option<&Rational> {
        self.offsets.get(child_edge)
    }

    /// `ς⁻¹(parent_edge)` in order along the parent edge.
    pub fn pieces(&self, parent_edge: &EdgeId) -> Option<&[EdgeId]> {
        self.pieces.get(parent_edge).map(Vec::as_slice)
    }

    pub fn edge_map(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.edge_map
    }

    fn lift_endpoint(&self, endpoint: &Endpoint) -> Endpoint {
        let pieces = &self.pieces[&endpoint.edge];
        let piece = match endpoint.side {
            Side::Zero => &pieces[0],
            Side::Length => &pieces[pieces.len() - 1],
        };
        Endpoint::new(piece.clone(), endpoint.side)
    }

    /// All child representatives of a parent point: one for points inside a
    /// piece, two at an interior cut point.
    pub fn lift_all(&self, p: &GraphPoint) -> Result<Vec<GraphPoint>> {
        self.parent.check_point(p)?;
        let mut reps = Vec::new();
        for piece in &self.pieces[&p.edge] {
            let start = &self.offsets[piece];
            let length = self.child.length(piece).expect("piece of the child");
            let local = &p.coordinate - start;
            if !local.is_negative() && &local <= length {
                reps.push(GraphPoint::new(piece.clone(), local));
            }
        }
        Ok(reps)
    }

    /// The child point corresponding to a parent point.
    pub fn lift(&self, p: &GraphPoint) -> Result<GraphPoint> {
        Ok(self.lift_all(p)?.swap_remove(0))
    }

    /// The parent point corresponding to a child point.
    pub fn project(&self, p: &GraphPoint) -> Result<GraphPoint> {
        self.child.check_point(p)?;
        Ok(GraphPoint::new(
            self.edge_map[&p.edge].clone(),
            &self.offsets[&p.edge] + &p.coordinate,
        ))
    }
}

/// Splits edges at interior points. `cuts` maps an edge to strictly
/// increasing coordinates in `(0, ℓ_e)`; edges without cuts keep their id,
/// the pieces of a cut edge `e` are named `e_1, e_2, …`.
pub fn subdivide(g: &MetricGraph, cuts: &BTreeMap<EdgeId, Vec<Rational>>) -> Result<Subdivision> {
    for (edge, points) in cuts {
        let length = g
            .length(edge)
            .ok_or_else(|| Error::UnknownEdge(edge.clone()))?;
        let mut previous = Rational::zero();
        for x in points {
            if !x.is_positive() || x >= length {
                return Err(Error::InvalidCut {
                    edge: edge.clone(),
                    reason: format!("{x} is not strictly inside (0, {length})"),
                });
            }
            if x <= &previous {
                return Err(Error::InvalidCut {
                    edge: edge.clone(),
                    reason: "cut points must be strictly increasing".into(),
                });
            }
            previous = x.clone();
        }
    }

    let mut taken: BTreeSet<String> = g.edges().ids().map(|e| e.to_string()).collect();
    let mut lengths = Vec::new();
    let mut edge_map = BTreeMap::new();
    let mut offsets = BTreeMap::new();
    let mut pieces = BTreeMap::new();
    let mut new_blocks = Vec::new();

    for (edge, length) in g.edges().iter() {
        let points = cuts.get(edge).map(Vec::as_slice).unwrap_or(&[]);
        if points.is_empty() {
            lengths.push((edge.clone(), length.clone()));
            edge_map.insert(edge.clone(), edge.clone());
            offsets.insert(edge.clone(), Rational::zero());
            pieces.insert(edge.clone(), vec![edge.clone()]);
            continue;
        }
        let names = fresh_names(edge, points.len() + 1, &mut taken);
        let mut bounds = vec![Rational::zero()];
        bounds.extend(points.iter().cloned());
        bounds.push(length.clone());
        for (i, name) in names.iter().enumerate() {
            lengths.push((name.clone(), &bounds[i + 1] - &bounds[i]));
            edge_map.insert(name.clone(), edge.clone());
            offsets.insert(name.clone(), bounds[i].clone());
            if i > 0 {
                new_blocks.push(vec![
                    Endpoint::length(names[i - 1].clone()),
                    Endpoint::zero(name.clone()),
                ]);
            }
        }
        pieces.insert(edge.clone(), names);
    }

    let mut subdivision = Subdivision {
        parent: g.clone(),
        child: MetricGraph::fully_cut(EdgeSpace::default()),
        edge_map,
        offsets,
        pieces,
    };
    let carried = g
        .relation()
        .blocks()
        .iter()
        .map(|b| b.iter().map(|e| subdivision.lift_endpoint(e)).collect());
    let relation = EndpointRelation::from_blocks(carried.chain(new_blocks))?;
    subdivision.child = MetricGraph::new(EdgeSpace::new(lengths)?, relation)?;
    Ok(subdivision)
}

fn fresh_names(edge: &EdgeId, count: usize, taken: &mut BTreeSet<String>) -> Vec<EdgeId> {
    let mut stem = format!("{edge}_");
    while (1..=count).any(|i| taken.contains(&format!("{stem}{i}"))) {
        stem.push('_');
    }
    (1..=count)
        .map(|i| {
            let name = format!("{stem}{i}");
            taken.insert(name.clone());
            EdgeId::new(name).expect("built from a valid id")
        })
        .collect()
}

/// Replaces the relation by an arbitrary one on the same endpoints.
pub fn rewire(g: &MetricGraph, relation: EndpointRelation) -> Result<MetricGraph> {
    MetricGraph::new(g.edges().clone(), relation)
}

/// Result of [`cut_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub graph: MetricGraph,
    /// At least one vertex was actually split.
    pub nontrivial: bool,
}

/// Cuts through vertices: the new relation must refine the current one.
pub fn cut_graph(g: &MetricGraph, relation: EndpointRelation) -> Result<Cut> {
    if let Some(block) = relation.first_unrefined_block(g.relation())? {
        return Err(Error::NotARefinement {
            block: format_block(block),
        });
    }
    let nontrivial = relation.block_count() > g.relation().block_count();
    Ok(Cut {
        graph: g.with_relation_unchecked(relation),
        nontrivial,
    })
}

/// A rewiring of a subdivision. `relation` lives on the endpoints of
/// `subdivide(g, cuts).child()`.
pub fn rearrange(
    g: &MetricGraph,
    cuts: &BTreeMap<EdgeId, Vec<Rational>>,
    relation: EndpointRelation,
) -> Result<MetricGraph> {
    rewire(subdivide(g, cuts)?.child(), relation)
}

/// A metric graph presented over a shared family of intervals `Ê`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chart {
    /// A graph whose own edge space is `Ê`.
    Quotient(MetricGraph),
    /// The parent of a subdivision whose child edge space is `Ê`.
    Coarse(Subdivision),
}

impl Chart {
    pub fn graph(&self) -> &MetricGraph {
        match self {
            Chart::Quotient(g) => g,
            Chart::Coarse(s) => s.parent(),
        }
    }

    fn shared_edges(&self) -> &EdgeSpace {
        match self {
            Chart::Quotient(g) => g.edges(),
            Chart::Coarse(s) => s.child().edges(),
        }
    }

    /// `q⁻¹(p)` as points of `Ê`.
    fn preimage(&self, p: &GraphPoint) -> Result<Vec<GraphPoint>> {
        let g = self.graph();
        g.check_point(p)?;
        let block: Option<Vec<Endpoint>> = g.endpoint_at(p).map(|end| {
            let i = g.vertex_index(&end).expect("endpoint of this graph");
            g.relation().blocks()[i].clone()
        });
        match (self, block) {
            (Chart::Quotient(_), None) => Ok(vec![p.clone()]),
            (Chart::Quotient(g), Some(block)) => block.iter().map(|e| g.point_at(e)).collect(),
            (Chart::Coarse(s), None) => s.lift_all(p),
            (Chart::Coarse(s), Some(block)) => block
                .iter()
                .map(|e| s.child().point_at(&s.lift_endpoint(e)))
                .collect(),
        }
    }

    /// `q(x)` for a point `x` of `Ê`, canonically represented.
    fn image(&self, x: &GraphPoint) -> Result<GraphPoint> {
        match self {
            Chart::Quotient(g) => g.canonical_point(x),
            Chart::Coarse(s) => s.parent().canonical_point(&s.project(x)?),
        }
    }
}

/// The set-valued map `Q = q_target ∘ q_source⁻¹` identifying points of two
/// graphs presented over the same intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTransfer {
    source: Chart,
    target: Chart,
}

impl PointTransfer {
    pub fn new(source: Chart, target: Chart) -> Result<Self> {
        if source.shared_edges() != target.shared_edges() {
            return Err(Error::EdgeSpaceMismatch);
        }
        Ok(PointTransfer { source, target })
    }

    /// Between two rearrangements on one edge space.
    pub fn between(source: &MetricGraph, target: &MetricGraph) -> Result<Self> {
        Self::new(
            Chart::Quotient(source.clone()),
            Chart::Quotient(target.clone()),
        )
    }

    /// From a graph to one of its subdivisions.
    pub fn refining(s: &Subdivision) -> Self {
        PointTransfer {
            source: Chart::Coarse(s.clone()),
            target: Chart::Quotient(s.child().clone()),
        }
    }

    /// From a subdivision back to its parent.
    pub fn coarsening(s: &Subdivision) -> Self {
        Self::refining(s).reversed()
    }

    pub fn reversed(self) -> Self {
        PointTransfer {
            source: self.target,
            target: self.source,
        }
    }

    pub fn source(&self) -> &MetricGraph {
        self.source.graph()
    }

    pub fn target(&self) -> &MetricGraph {
        self.target.graph()
    }

    /// All target points identified with `p`, canonically represented.
    pub fn transfer_points(&self, p: &GraphPoint) -> Result<BTreeSet<GraphPoint>> {
        self.source
            .preimage(p)?
            .iter()
            .map(|x| self.target.image(x))
            .collect()
    }
}

/// Smooths away every vertex made of exactly two endpoints on two distinct
/// edges, joining those edges into one. Loops are kept. The merged edge keeps
/// the smaller id and runs from the far end of that edge to the far end of the
/// other.
pub fn primitive_form(g: &MetricGraph) -> MetricGraph {
    let mut lengths: BTreeMap<EdgeId, Rational> = g
        .edges()
        .iter()
        .map(|(e, l)| (e.clone(), l.clone()))
        .collect();
    let mut relation = g.relation().clone();
    loop {
        let smoothable = relation
            .blocks()
            .iter()
            .find(|b| b.len() == 2 && b[0].edge != b[1].edge)
            .cloned();
        let Some(block) = smoothable else { break };
        let (kept, absorbed) = (&block[0], &block[1]);
        let kept_far = kept.opposite();
        let absorbed_far = absorbed.opposite();
        let merged = &lengths[&kept.edge] + &lengths[&absorbed.edge];
        lengths.remove(&absorbed.edge);
        lengths.insert(kept.edge.clone(), merged);

        let remaining = relation.blocks().iter().filter(|b| **b != block).cloned();
        let rest = EndpointRelation::from_blocks(remaining).expect("blocks stay disjoint");
        relation = rest.map_endpoints(|e| {
            if *e == kept_far {
                Endpoint::zero(kept.edge.clone())
            } else if *e == absorbed_far {
                Endpoint::length(kept.edge.clone())
            } else {
                e.clone()
            }
        });
    }
    let edges = EdgeSpace::new(lengths).expect("lengths stay positive");
    MetricGraph::new(edges, relation).expect("ambient tracks the edge space")
}

/// An isomorphism of metric graphs: a length-preserving bijection of edges,
/// each possibly reversed, carrying vertices onto vertices.
pub type EdgeCorrespondence = BTreeMap<EdgeId, (EdgeId, bool)>;

/// Searches for an isomorphism from `a` to `b` by backtracking. The map sends
/// each edge of `a` to an edge of `b` and whether it is traversed backwards.
pub fn find_isomorphism(a: &MetricGraph, b: &MetricGraph) -> Option<EdgeCorrespondence> {
    if a.edge_count() != b.edge_count() || a.vertex_count() != b.vertex_count() {
        return None;
    }
    let sorted_lengths = |g: &MetricGraph| {
        let mut v: Vec<Rational> = g.edges().iter().map(|(_, l)| l.clone()).collect();
        v.sort();
        v
    };
    let sorted_sizes = |g: &MetricGraph| {
        let mut v: Vec<usize> = g.relation().blocks().iter().map(Vec::len).collect();
        v.sort();
        v
    };
    if sorted_lengths(a) != sorted_lengths(b) || sorted_sizes(a) != sorted_sizes(b) {
        return None;
    }

    let side_a = Incidence::of(a);
    let side_b = Incidence::of(b);
    let order = search_order(&side_a);
    let mut search = Matcher {
        a: &side_a,
        b: &side_b,
        forward: vec![None; a.vertex_count()],
        backward: vec![None; b.vertex_count()],
        used: vec![false; side_b.edges.len()],
        chosen: vec![None; side_a.edges.len()],
    };
    if !search.extend(&order, 0) {
        return None;
    }
    Some(
        order
            .iter()
            .map(|&i| {
                let (j, reversed) = search.chosen[i].expect("complete match");
                (
                    side_a.edges[i].0.clone(),
                    (side_b.edges[j].0.clone(), reversed),
                )
            })
            .collect(),
    )
}

pub fn is_isomorphic(a: &MetricGraph, b: &MetricGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// `g₁ ≡ g₂`: both are subdivisions of a common graph, decided by comparing
/// primitive forms up to isomorphism.
pub fn equivalent_mod_subdivision(g1: &MetricGraph, g2: &MetricGraph) -> bool {
    is_isomorphic(&primitive_form(g1), &primitive_form(g2))
}

struct Incidence {
    // (id, length, zero-end vertex, length-end vertex)
    edges: Vec<(EdgeId, Rational, usize, usize)>,
    multiplicity: Vec<usize>,
}

impl Incidence {
    fn of(g: &MetricGraph) -> Self {
        let edges = g
            .edges()
            .iter()
            .map(|(e, l)| {
                let (x, y) = g.ends(e).expect("edge of this graph");
                (e.clone(), l.clone(), x, y)
            })
            .collect();
        let multiplicity = g.relation().blocks().iter().map(Vec::len).collect();
        Incidence {
            edges,
            multiplicity,
        }
    }
}

/// Edge order that keeps each new edge touching already-placed vertices when
/// possible, so vertex constraints prune early.
fn search_order(g: &Incidence) -> Vec<usize> {
    let mut placed = vec![false; g.edges.len()];
    let mut seen = BTreeSet::new();
    let mut order = Vec::with_capacity(g.edges.len());
    while order.len() < g.edges.len() {
        let next = (0..g.edges.len())
            .filter(|&i| !placed[i])
            .find(|&i| seen.contains(&g.edges[i].2) || seen.contains(&g.edges[i].3))
            .or_else(|| (0..g.edges.len()).find(|&i| !placed[i]))
            .expect("unplaced edge remains");
        placed[next] = true;
        seen.insert(g.edges[next].2);
        seen.insert(g.edges[next].3);
        order.push(next);
    }
    order
}

struct Matcher<'a> {
    a: &'a Incidence,
    b: &'a Incidence,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
    used: Vec<bool>,
    chosen: Vec<Option<(usize, bool)>>,
}

impl Matcher<'_> {
    fn extend(&mut self, order: &[usize], depth: usize) -> bool {
        let Some(&i) = order.get(depth) else {
            return true;
        };
        let (_, length, x, y) = &self.a.edges[i];
        for j in 0..self.b.edges.len() {
            if self.used[j] || &self.b.edges[j].1 != length {
                continue;
            }
            let (_, _, u, v) = self.b.edges[j];
            let flips: &[bool] = if x == y { &[false] } else { &[false, true] };
            for &reversed in flips {
                let (tx, ty) = if reversed { (v, u) } else { (u, v) };
                let mut assigned = Vec::new();
                if self.assign(*x, tx, &mut assigned) && self.assign(*y, ty, &mut assigned) {
                    self.used[j] = true;
                    self.chosen[i] = Some((j, reversed));
                    if self.extend(order, depth + 1) {
                        return true;
                    }
                    self.used[j] = false;
                    self.chosen[i] = None;
                }
                for vertex in assigned {
                    let image = self.forward[vertex].take().expect("assigned");
                    self.backward[image] = None;
                }
            }
        }
        false
    }

    fn assign(&mut self, from: usize, to: usize, assigned: &mut Vec<usize>) -> bool {
        match (self.forward[from], self.backward[to]) {
            (Some(image), _) => image == to,
            (None, Some(_)) => false,
            (None, None) => {
                if self.a.multiplicity[from] != self.b.multiplicity[to] {
                    return false;
                }
                self.forward[from] = Some(to);
                self.backward[to] = Some(from);
                assigned.push(from);
                true
            }
        }
    }
}
