//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the library's algorithms: graphs are read only through their edge
//! lengths and relation blocks.
#![allow(dead_code)]

use std::collections::BTreeMap;

use metric_graph::functions::{PiecewiseFunction, Polynomial};
use metric_graph::rational::{int, ratio};
use metric_graph::{EdgeId, Endpoint, EndpointRelation, GraphPoint, MetricGraph, Rational, Side};
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

/// Endpoint `i` of a graph with edges `1..=m`: `2k` is `(k+1):0`, `2k+1` is `(k+1):1`.
pub fn endpoint(i: usize) -> Endpoint {
    let side = if i.is_multiple_of(2) {
        Side::Zero
    } else {
        Side::Length
    };
    Endpoint::new(EdgeId::from((i / 2 + 1) as u64), side)
}

/// Every set partition of `0..n`, as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=max + 1 {
            prefix.push(label);
            let next = if label > max { label } else { max };
            extend(prefix, next, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        let mut prefix = vec![0];
        extend(&mut prefix, 0, n, &mut out);
    }
    out
}

/// Graph on edges `1..=lengths.len()` whose endpoint `i` lies in block `labels[i]`.
pub fn graph_from_labels(lengths: &[Rational], labels: &[usize]) -> MetricGraph {
    assert_eq!(labels.len(), 2 * lengths.len());
    let mut blocks: BTreeMap<usize, Vec<Endpoint>> = BTreeMap::new();
    for (i, &label) in labels.iter().enumerate() {
        blocks.entry(label).or_default().push(endpoint(i));
    }
    let edges = metric_graph::EdgeSpace::new(
        lengths
            .iter()
            .enumerate()
            .map(|(i, l)| (EdgeId::from(i as u64 + 1), l.clone())),
    )
    .unwrap();
    let relation = EndpointRelation::from_blocks(blocks.into_values()).unwrap();
    MetricGraph::new(edges, relation).unwrap()
}

struct Skeleton {
    /// `(id, length, vertex at 0, vertex at ℓ)`.
    edges: Vec<(EdgeId, Rational, usize, usize)>,
    vertices: usize,
}

impl Skeleton {
    fn of(g: &MetricGraph) -> Self {
        let mut block_of = BTreeMap::new();
        for (i, block) in g.relation().blocks().iter().enumerate() {
            for e in block {
                block_of.insert(e.clone(), i);
            }
        }
        let edges = g
            .edges()
            .iter()
            .map(|(id, l)| {
                let zero = block_of[&Endpoint::new(id.clone(), Side::Zero)];
                let end = block_of[&Endpoint::new(id.clone(), Side::Length)];
                (id.clone(), l.clone(), zero, end)
            })
            .collect();
        Skeleton {
            edges,
            vertices: g.relation().blocks().len(),
        }
    }

    fn edge(&self, id: &EdgeId) -> &(EdgeId, Rational, usize, usize) {
        self.edges.iter().find(|e| &e.0 == id).unwrap()
    }

    /// Length of every vertex-simple chain from `s` to `t`.
    fn chains(&self, s: usize, t: usize) -> Vec<Rational> {
        fn walk(
            sk: &Skeleton,
            at: usize,
            t: usize,
            visited: &mut Vec<bool>,
            len: Rational,
            out: &mut Vec<Rational>,
        ) {
            if at == t {
                out.push(len);
                return;
            }
            for (_, l, a, b) in &sk.edges {
                for (from, to) in [(*a, *b), (*b, *a)] {
                    if from == at && !visited[to] {
                        visited[to] = true;
                        walk(sk, to, t, visited, &len + l, out);
                        visited[to] = false;
                    }
                }
            }
        }
        let mut visited = vec![false; self.vertices];
        visited[s] = true;
        let mut out = Vec::new();
        walk(self, s, t, &mut visited, int(0), &mut out);
        out
    }
}

/// Infimum over chains of the path metric, by exhaustive enumeration:
/// leave `p` through either end of its edge, follow a vertex-simple chain,
/// enter `q` through either end of its edge; or stay on a shared edge.
/// `None` when no chain exists.
pub fn oracle_distance(g: &MetricGraph, p: &GraphPoint, q: &GraphPoint) -> Option<Rational> {
    let sk = Skeleton::of(g);
    let (_, lp, p0, p1) = sk.edge(&p.edge).clone();
    let (_, lq, q0, q1) = sk.edge(&q.edge).clone();
    let mut best: Option<Rational> = None;
    let mut offer = |d: Rational| {
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    };
    if p.edge == q.edge {
        offer((&p.coordinate - &q.coordinate).abs());
    }
    let exits = [(p0, p.coordinate.clone()), (p1, &lp - &p.coordinate)];
    let entries = [(q0, q.coordinate.clone()), (q1, &lq - &q.coordinate)];
    for (s, cs) in &exits {
        for (t, ct) in &entries {
            for chain in sk.chains(*s, *t) {
                offer(cs + chain + ct);
            }
        }
    }
    best
}

pub fn lengths_from(choices: &[Rational], rng: &mut impl Rng, m: usize) -> Vec<Rational> {
    (0..m)
        .map(|_| choices[rng.gen_range(0..choices.len())].clone())
        .collect()
}

pub fn small_lengths() -> Vec<Rational> {
    vec![ratio(1, 2), int(1), ratio(3, 2), int(2), int(3)]
}

/// Up to `max_edges` edges with random lengths and a random gluing.
pub fn random_graph(rng: &mut impl Rng, max_edges: usize) -> MetricGraph {
    let m = rng.gen_range(1..=max_edges);
    let lengths = lengths_from(&small_lengths(), rng, m);
    let labels: Vec<usize> = (0..2 * m).map(|_| rng.gen_range(0..2 * m)).collect();
    graph_from_labels(&lengths, &labels)
}

pub fn random_connected_graph(rng: &mut impl Rng, max_edges: usize) -> MetricGraph {
    loop {
        let g = random_graph(rng, max_edges);
        if g.component_edge_sets().len() == 1 {
            return g;
        }
    }
}

/// A point of `g`; a quarter of the time an edge endpoint.
pub fn random_point(rng: &mut impl Rng, g: &MetricGraph) -> GraphPoint {
    let ids: Vec<&EdgeId> = g.edges().ids().collect();
    let id = ids[rng.gen_range(0..ids.len())].clone();
    let l = g.length(&id).unwrap().clone();
    let x = if rng.gen_bool(0.25) {
        if rng.gen_bool(0.5) {
            int(0)
        } else {
            l
        }
    } else {
        let d = rng.gen_range(2..=8);
        l * ratio(rng.gen_range(1..d), d)
    };
    GraphPoint::new(id, x)
}

/// Sorted distinct interior cut points on some of the edges.
pub fn random_cuts(rng: &mut impl Rng, g: &MetricGraph) -> BTreeMap<EdgeId, Vec<Rational>> {
    let mut cuts = BTreeMap::new();
    for (id, l) in g.edges().iter() {
        if rng.gen_bool(0.5) {
            continue;
        }
        let d: i64 = rng.gen_range(2..=7);
        let mut ks: Vec<i64> = (0..rng.gen_range(1..=3))
            .map(|_| rng.gen_range(1..d))
            .collect();
        ks.sort();
        ks.dedup();
        cuts.insert(
            id.clone(),
            ks.into_iter().map(|k| l * ratio(k, d)).collect(),
        );
    }
    cuts
}

pub fn random_polynomial(rng: &mut impl Rng, max_degree: usize) -> Polynomial {
    let degree = rng.gen_range(0..=max_degree);
    Polynomial::new(
        (0..=degree)
            .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
            .collect(),
    )
}

/// `c · Π (x − r_i)` with rational roots, some of them inside `[0, l]`.
pub fn random_split_polynomial(rng: &mut impl Rng, l: &Rational, max_degree: usize) -> Polynomial {
    let mut f = Polynomial::constant(ratio(
        rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 },
        rng.gen_range(1..=3),
    ));
    for _ in 0..rng.gen_range(0..=max_degree) {
        let r = l * ratio(rng.gen_range(-2..=10), 8);
        f = &f * &Polynomial::new(vec![-r, int(1)]);
    }
    f
}

pub fn random_function(
    rng: &mut impl Rng,
    g: &MetricGraph,
    max_degree: usize,
) -> PiecewiseFunction {
    PiecewiseFunction::new(
        g.edges()
            .ids()
            .map(|id| (id.clone(), random_polynomial(rng, max_degree)))
            .collect::<Vec<_>>(),
    )
}

/// A graph with up to `max_edges` edges, as a proptest strategy.
pub fn graph_strategy(max_edges: usize) -> impl Strategy<Value = MetricGraph> {
    (1..=max_edges)
        .prop_flat_map(|m| {
            (
                proptest::collection::vec(prop::sample::select(small_lengths()), m),
                proptest::collection::vec(0..2 * m, 2 * m),
            )
        })
        .prop_map(|(lengths, labels)| graph_from_labels(&lengths, &labels))
}
