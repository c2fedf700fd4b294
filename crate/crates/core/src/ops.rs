//! Intersection, union and complement of graphs on a shared edge space.

use crate::graph::MetricGraph;
use crate::{Error, Result};

fn require_same_edges(g1: &MetricGraph, g2: &MetricGraph) -> Result<()> {
    if g1.edges() == g2.edges() {
        Ok(())
    } else {
        Err(Error::EdgeSpaceMismatch)
    }
}

/// The graph glued by `∼₁ ∩ ∼₂`.
pub fn graph_intersection(g1: &MetricGraph, g2: &MetricGraph) -> Result<MetricGraph> {
    require_same_edges(g1, g2)?;
    let relation = g1.relation().intersect(g2.relation())?;
    Ok(g1.with_relation_unchecked(relation))
}

/// The graph glued by the equivalence relation generated by `∼₁ ∪ ∼₂`.
pub fn graph_union(g1: &MetricGraph, g2: &MetricGraph) -> Result<MetricGraph> {
    require_same_edges(g1, g2)?;
    let relation = g1.relation().union_generated(g2.relation())?;
    Ok(g1.with_relation_unchecked(relation))
}

/// The complement of `g` in `ambient`: glued by the relation generated by
/// `∼_ambient \ ∼_g`. With no ambient the flower on `g`'s edges is used.
pub fn graph_complement(g: &MetricGraph, ambient: Option<&MetricGraph>) -> Result<MetricGraph> {
    let flower;
    let ambient = match ambient {
        Some(a) => {
            require_same_edges(a, g)?;
            a
        }
        None => {
            flower = MetricGraph::flower(g.edges().clone());
            &flower
        }
    };
    let relation = ambient.relation().difference_generated(g.relation())?;
    Ok(g.with_relation_unchecked(relation))
}
