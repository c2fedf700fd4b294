//! The metric graph `Γ = 𝓔/∼` and its combinatorial structure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::edge::{EdgeId, EdgeSpace};
use crate::relation::{format_block, Endpoint, EndpointRelation, Side, UnionFind};
use crate::{Error, Rational, Result};

/// A family of intervals together with an equivalence relation gluing their
/// endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetricGraph {
    edges: EdgeSpace,
    relation: EndpointRelation,
}

/// A vertex: one block of the endpoint relation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    block: Vec<Endpoint>,
}

impl Vertex {
    pub fn endpoints(&self) -> &[Endpoint] {
        &self.block
    }

    /// Number of endpoints glued into this vertex.
    pub fn multiplicity(&self) -> usize {
        self.block.len()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_block(&self.block))
    }
}

/// A point `(x, e)` of the disjoint union, read modulo the gluing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphPoint {
    pub edge: EdgeId,
    pub coordinate: Rational,
}

impl GraphPoint {
    pub fn new(edge: impl Into<EdgeId>, coordinate: Rational) -> Self {
        GraphPoint {
            edge: edge.into(),
            coordinate,
        }
    }
}

impl fmt::Display for GraphPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.edge, self.coordinate)
    }
}

/// The combinatorial multigraph `(V, E, ι)` underlying a metric graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    /// `ι(e)`: indices into `vertices`, one entry for a loop, two otherwise.
    pub incidence: BTreeMap<EdgeId, BTreeSet<usize>>,
}

impl MetricGraph {
    pub fn new(edges: EdgeSpace, relation: EndpointRelation) -> Result<Self> {
        let expected = edges.endpoints();
        if !relation.ambient().eq(expected.iter()) {
            return Err(Error::AmbientMismatch);
        }
        Ok(MetricGraph { edges, relation })
    }

    /// Builds the graph whose relation is generated by the `glue` pairs.
    pub fn build(
        lengths: impl IntoIterator<Item = (EdgeId, Rational)>,
        glue: impl IntoIterator<Item = (Endpoint, Endpoint)>,
    ) -> Result<Self> {
        let edges = EdgeSpace::new(lengths)?;
        let glue: Vec<(Endpoint, Endpoint)> = glue.into_iter().collect();
        let relation =
            EndpointRelation::closure(glue.iter().map(|(a, b)| (a, b)), edges.endpoints())?;
        Ok(MetricGraph { edges, relation })
    }

    /// The flower: all endpoints glued into a single vertex.
    pub fn flower(edges: EdgeSpace) -> Self {
        let relation = EndpointRelation::universal(edges.endpoints());
        MetricGraph { edges, relation }
    }

    /// Disjoint intervals: no gluing at all.
    pub fn fully_cut(edges: EdgeSpace) -> Self {
        let relation = EndpointRelation::identity(edges.endpoints());
        MetricGraph { edges, relation }
    }

    pub fn edges(&self) -> &EdgeSpace {
        &self.edges
    }

    pub fn relation(&self) -> &EndpointRelation {
        &self.relation
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn length(&self, edge: &EdgeId) -> Option<&Rational> {
        self.edges.length(edge)
    }

    /// Same edges, different relation. The caller guarantees the ambient.
    pub(crate) fn with_relation_unchecked(&self, relation: EndpointRelation) -> Self {
        MetricGraph {
            edges: self.edges.clone(),
            relation,
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.relation
            .blocks()
            .iter()
            .map(|b| Vertex { block: b.clone() })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.relation.block_count()
    }

    /// Index (into [`vertices`](Self::vertices)) of the vertex containing `endpoint`.
    pub fn vertex_index(&self, endpoint: &Endpoint) -> Result<usize> {
        self.relation
            .block_index(endpoint)
            .ok_or_else(|| Error::UnknownEndpoint(endpoint.clone()))
    }

    fn index_of_vertex(&self, v: &Vertex) -> Result<usize> {
        let i = v
            .block
            .first()
            .and_then(|e| self.relation.block_index(e))
            .ok_or_else(|| Error::ForeignVertex(v.to_string()))?;
        if self.relation.blocks()[i] == v.block {
            Ok(i)
        } else {
            Err(Error::ForeignVertex(v.to_string()))
        }
    }

    /// The vertex indices at the `0` and `ℓ_e` ends of `edge`.
    pub fn ends(&self, edge: &EdgeId) -> Result<(usize, usize)> {
        self.edges.require(edge)?;
        Ok((
            self.vertex_index(&Endpoint::new(edge.clone(), Side::Zero))?,
            self.vertex_index(&Endpoint::new(edge.clone(), Side::Length))?,
        ))
    }

    /// [`ends`](Self::ends) for every edge at once.
    pub(crate) fn end_table(&self) -> BTreeMap<&EdgeId, (usize, usize)> {
        let mut table = BTreeMap::new();
        for (i, block) in self.relation.blocks().iter().enumerate() {
            for e in block {
                let entry = table.entry(&e.edge).or_insert((i, i));
                match e.side {
                    Side::Zero => entry.0 = i,
                    Side::Length => entry.1 = i,
                }
            }
        }
        table
    }

    /// Whether some edge has one end in `v` and the other in `w`. A loop makes
    /// its vertex adjacent to itself.
    pub fn adjacent(&self, v: &Vertex, w: &Vertex) -> Result<bool> {
        let i = self.index_of_vertex(v)?;
        let j = self.index_of_vertex(w)?;
        Ok(self.neighbour_indices(i).contains(&j))
    }

    fn neighbour_indices(&self, i: usize) -> BTreeSet<usize> {
        self.relation.blocks()[i]
            .iter()
            .map(|e| {
                self.relation
                    .block_index(&e.opposite())
                    .expect("both ends of an edge are in the ambient")
            })
            .collect()
    }

    /// Number of distinct vertices adjacent to `v` (itself included when a
    /// loop sits at `v`). Parallel edges count once.
    pub fn degree(&self, v: &Vertex) -> Result<usize> {
        let i = self.index_of_vertex(v)?;
        Ok(self.neighbour_indices(i).len())
    }

    /// Number of edge ends glued into `v`; a loop contributes two.
    pub fn endpoint_multiplicity(&self, v: &Vertex) -> Result<usize> {
        self.index_of_vertex(v)?;
        Ok(v.multiplicity())
    }

    /// Whether every vertex has finitely many neighbours, i.e. at most one
    /// per endpoint of the graph.
    pub fn is_combinatorially_locally_finite(&self) -> bool {
        let bound = self.relation.ambient_len();
        (0..self.vertex_count()).all(|i| self.neighbour_indices(i).len() <= bound)
    }

    /// Whether the total length of edges at every vertex is finite. Always
    /// the case for a finite edge set; evaluated literally anyway.
    pub fn is_metrically_locally_finite(&self) -> bool {
        self.relation.blocks().iter().all(|block| {
            let incident: BTreeSet<&EdgeId> = block.iter().map(|e| &e.edge).collect();
            let total = incident
                .into_iter()
                .filter_map(|e| self.edges.length(e))
                .fold(Rational::zero(), |acc, l| acc + l);
            !total.is_negative()
        })
    }

    pub fn volume(&self) -> Rational {
        self.edges.volume()
    }

    /// The metric subgraph on `keep`, with the restricted relation.
    pub fn subgraph<'a>(&self, keep: impl IntoIterator<Item = &'a EdgeId>) -> Result<Self> {
        let edges = self.edges.restrict(keep)?;
        let blocks = self.relation.blocks().iter().filter_map(|b| {
            let kept: Vec<Endpoint> = b
                .iter()
                .filter(|e| edges.contains(&e.edge))
                .cloned()
                .collect();
            (!kept.is_empty()).then_some(kept)
        });
        let relation = EndpointRelation::from_blocks(blocks)?;
        Ok(MetricGraph { edges, relation })
    }

    /// Edge sets of the connected components, ordered by least edge id.
    pub fn component_edge_sets(&self) -> Vec<Vec<EdgeId>> {
        let mut forest = UnionFind::new(self.vertex_count());
        for edge in self.edges.ids() {
            let (a, b) = self.ends(edge).expect("edge of this graph");
            forest.union(a, b);
        }
        let mut groups: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
        for edge in self.edges.ids() {
            let (a, _) = self.ends(edge).expect("edge of this graph");
            groups.entry(forest.find(a)).or_default().push(edge.clone());
        }
        let mut sets: Vec<Vec<EdgeId>> = groups.into_values().collect();
        sets.sort();
        sets
    }

    pub fn connected_components(&self) -> Vec<MetricGraph> {
        self.component_edge_sets()
            .iter()
            .map(|set| self.subgraph(set).expect("edges of this graph"))
            .collect()
    }

    pub fn underlying_multigraph(&self) -> Multigraph {
        let incidence = self
            .edges
            .ids()
            .map(|e| {
                let (a, b) = self.ends(e).expect("edge of this graph");
                (e.clone(), BTreeSet::from([a, b]))
            })
            .collect();
        Multigraph {
            vertices: self.vertices(),
            edges: self.edges.ids().cloned().collect(),
            incidence,
        }
    }

    pub fn check_point(&self, p: &GraphPoint) -> Result<()> {
        let length = self.edges.require(&p.edge)?;
        if p.coordinate.is_negative() || &p.coordinate > length {
            return Err(Error::InvalidCoordinate {
                edge: p.edge.clone(),
                coordinate: p.coordinate.to_string(),
                length: length.to_string(),
            });
        }
        Ok(())
    }

    /// The endpoint a point sits on, if it sits on one.
    pub fn endpoint_at(&self, p: &GraphPoint) -> Option<Endpoint> {
        let length = self.edges.length(&p.edge)?;
        if p.coordinate.is_zero() {
            Some(Endpoint::zero(p.edge.clone()))
        } else if &p.coordinate == length {
            Some(Endpoint::length(p.edge.clone()))
        } else {
            None
        }
    }

    pub fn point_at(&self, endpoint: &Endpoint) -> Result<GraphPoint> {
        Ok(GraphPoint {
            edge: endpoint.edge.clone(),
            coordinate: self.edges.coordinate(endpoint)?,
        })
    }

    /// Canonical representative of a point of `Γ`: interior points are
    /// unchanged, vertex points become the least endpoint of their block.
    pub fn canonical_point(&self, p: &GraphPoint) -> Result<GraphPoint> {
        self.check_point(p)?;
        match self.endpoint_at(p) {
            Some(end) => {
                let i = self.vertex_index(&end)?;
                self.point_at(&self.relation.blocks()[i][0])
            }
            None => Ok(p.clone()),
        }
    }

    /// Whether two points of the disjoint union denote the same point of `Γ`.
    pub fn same_point(&self, p: &GraphPoint, q: &GraphPoint) -> Result<bool> {
        Ok(self.canonical_point(p)? == self.canonical_point(q)?)
    }
}
