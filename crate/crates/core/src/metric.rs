//! The path pseudo-metric and geodesics.
//!
//! The infimum over chains of within-edge distances reduces to a shortest-path
//! problem on the vertex quotient: a chain either stays on one edge, or leaves
//! the start point through one end of its edge, hops between vertices along
//! whole edges, and enters the end point's edge through one of its ends.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::Add;

use num_traits::{Signed, Zero};

use crate::edge::EdgeId;
use crate::graph::{GraphPoint, MetricGraph};
use crate::relation::{Endpoint, Side};
use crate::{Rational, Result};

/// A generalised distance: a nonnegative rational or `∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(Rational),
    Infinite,
}

impl Distance {
    pub fn zero() -> Self {
        Distance::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl Add for &Distance {
    type Output = Distance;

    fn add(self, rhs: &Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        &self + &rhs
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Traversal of `[start, end]` (or `[end, start]` backwards) along one edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub edge: EdgeId,
    pub start: Rational,
    pub end: Rational,
}

impl Segment {
    pub fn length(&self) -> Rational {
        (&self.end - &self.start).abs()
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.edge, self.start, self.end)
    }
}

/// A shortest chain, as consecutive edge traversals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Geodesic {
    pub segments: Vec<Segment>,
}

impl Geodesic {
    pub fn length(&self) -> Rational {
        self.segments
            .iter()
            .fold(Rational::zero(), |acc, s| acc + s.length())
    }

    /// The point reached after travelling `t` along the geodesic, for
    /// `0 ≤ t ≤ length`. `None` outside that range.
    pub fn point_at(&self, t: &Rational) -> Option<GraphPoint> {
        if t.is_negative() {
            return None;
        }
        let mut remaining = t.clone();
        for segment in &self.segments {
            let len = segment.length();
            if remaining <= len {
                let coordinate = if segment.end >= segment.start {
                    &segment.start + &remaining
                } else {
                    &segment.start - &remaining
                };
                return Some(GraphPoint::new(segment.edge.clone(), coordinate));
            }
            remaining -= len;
        }
        None
    }
}

#[derive(Clone, Debug)]
enum Step {
    Start(Side),
    Edge {
        edge: EdgeId,
        from: usize,
        forward: bool,
    },
}

struct Search {
    best: Vec<Option<Rational>>,
    via: Vec<Option<Step>>,
}

/// Multi-source Dijkstra seeded at the two ends of `p`'s edge.
fn search_from(g: &MetricGraph, p: &GraphPoint) -> Result<Search> {
    let n = g.vertex_count();
    let mut adjacency: Vec<Vec<(usize, &EdgeId, bool, &Rational)>> = vec![Vec::new(); n];
    let ends = g.end_table();
    for (edge, length) in g.edges().iter() {
        let (a, b) = ends[edge];
        if a != b {
            adjacency[a].push((b, edge, true, length));
            adjacency[b].push((a, edge, false, length));
        }
    }

    let length = g.edges().require(&p.edge)?;
    let (zero_end, length_end) = ends[&p.edge];
    let mut best: Vec<Option<Rational>> = vec![None; n];
    let mut via: Vec<Option<Step>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    for (vertex, cost, side) in [
        (zero_end, p.coordinate.clone(), Side::Zero),
        (length_end, length - &p.coordinate, Side::Length),
    ] {
        if best[vertex].as_ref().is_none_or(|b| &cost < b) {
            best[vertex] = Some(cost.clone());
            via[vertex] = Some(Step::Start(side));
            heap.push(Reverse((cost, vertex)));
        }
    }

    while let Some(Reverse((cost, u))) = heap.pop() {
        if best[u].as_ref() != Some(&cost) {
            continue;
        }
        for &(v, edge, forward, weight) in &adjacency[u] {
            let candidate = &cost + weight;
            if best[v].as_ref().is_none_or(|b| &candidate < b) {
                best[v] = Some(candidate.clone());
                via[v] = Some(Step::Edge {
                    edge: edge.clone(),
                    from: u,
                    forward,
                });
                heap.push(Reverse((candidate, v)));
            }
        }
    }
    Ok(Search { best, via })
}

enum Route {
    Degenerate,
    Direct,
    Through { vertex: usize, arrive: Side },
}

fn shortest(
    g: &MetricGraph,
    p: &GraphPoint,
    q: &GraphPoint,
) -> Result<Option<(Rational, Route, Search)>> {
    g.check_point(p)?;
    g.check_point(q)?;
    if g.same_point(p, q)? {
        let nothing = Search {
            best: Vec::new(),
            via: Vec::new(),
        };
        return Ok(Some((Rational::zero(), Route::Degenerate, nothing)));
    }
    let search = search_from(g, p)?;

    let mut found: Option<(Rational, Route)> = None;
    if p.edge == q.edge {
        found = Some(((&p.coordinate - &q.coordinate).abs(), Route::Direct));
    }
    let length = g.edges().require(&q.edge)?;
    let (zero_end, length_end) = g.ends(&q.edge)?;
    for (vertex, tail, arrive) in [
        (zero_end, q.coordinate.clone(), Side::Zero),
        (length_end, length - &q.coordinate, Side::Length),
    ] {
        if let Some(head) = &search.best[vertex] {
            let total = head + tail;
            if found.as_ref().is_none_or(|(d, _)| &total < d) {
                found = Some((total, Route::Through { vertex, arrive }));
            }
        }
    }
    Ok(found.map(|(d, route)| (d, route, search)))
}

/// The path pseudo-metric `d_Γ(p, q)`: exact, or [`Distance::Infinite`] when
/// `p` and `q` lie in different components.
pub fn distance(g: &MetricGraph, p: &GraphPoint, q: &GraphPoint) -> Result<Distance> {
    Ok(match shortest(g, p, q)? {
        Some((d, _, _)) => Distance::Finite(d),
        None => Distance::Infinite,
    })
}

/// A chain realising `distance(g, p, q)`, or `None` if the distance is infinite.
pub fn geodesic(g: &MetricGraph, p: &GraphPoint, q: &GraphPoint) -> Result<Option<Geodesic>> {
    let Some((_, route, search)) = shortest(g, p, q)? else {
        return Ok(None);
    };
    let (vertex, arrive) = match route {
        Route::Degenerate => {
            return Ok(Some(Geodesic {
                segments: vec![Segment {
                    edge: p.edge.clone(),
                    start: p.coordinate.clone(),
                    end: p.coordinate.clone(),
                }],
            }))
        }
        Route::Direct => {
            return Ok(Some(Geodesic {
                segments: vec![Segment {
                    edge: p.edge.clone(),
                    start: p.coordinate.clone(),
                    end: q.coordinate.clone(),
                }],
            }))
        }
        Route::Through { vertex, arrive } => (vertex, arrive),
    };

    let coordinate = |edge: &EdgeId, side: Side| {
        g.edges()
            .coordinate(&Endpoint::new(edge.clone(), side))
            .expect("edge of this graph")
    };
    let mut reversed = vec![Segment {
        edge: q.edge.clone(),
        start: coordinate(&q.edge, arrive),
        end: q.coordinate.clone(),
    }];
    let mut at = vertex;
    loop {
        match search.via[at]
            .as_ref()
            .expect("reached vertices have a step")
        {
            Step::Start(side) => {
                reversed.push(Segment {
                    edge: p.edge.clone(),
                    start: p.coordinate.clone(),
                    end: coordinate(&p.edge, *side),
                });
                break;
            }
            Step::Edge {
                edge,
                from,
                forward,
            } => {
                let (start, end) = if *forward {
                    (Side::Zero, Side::Length)
                } else {
                    (Side::Length, Side::Zero)
                };
                reversed.push(Segment {
                    edge: edge.clone(),
                    start: coordinate(edge, start),
                    end: coordinate(edge, end),
                });
                at = *from;
            }
        }
    }
    reversed.reverse();
    let segments: Vec<Segment> = reversed.into_iter().filter(|s| s.start != s.end).collect();
    Ok(Some(Geodesic { segments }))
}

/// Connected iff no pair of points is at infinite distance.
pub fn is_connected(g: &MetricGraph) -> bool {
    g.component_edge_sets().len() <= 1
}

/// Whether the path pseudo-metric is certainly a metric, i.e. vanishes only
/// on identified points. This is guaranteed when the edge set is finite, and
/// an [`EdgeSpace`](crate::EdgeSpace) always is, so the answer is always yes.
pub fn is_metric_certified(_g: &MetricGraph) -> bool {
    true
}
