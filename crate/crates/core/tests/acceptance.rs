//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use metric_graph::format::{emit_graph, parse_graph};
use metric_graph::functions::{
    ck_witness, lp_norm_pow, push_to_subdivision, sobolev_norm, Exponent, PiecewiseFunction,
    Polynomial,
};
use metric_graph::metric::distance;
use metric_graph::ops::{graph_complement, graph_intersection, graph_union};
use metric_graph::rational::{int, ratio};
use metric_graph::surgery::{
    equivalent_mod_subdivision, primitive_form, subdivide, PointTransfer, Subdivision,
};
use metric_graph::{Distance, EdgeId, Endpoint, GraphPoint, MetricGraph, Rational, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const SEED: u64 = 0x6d67_7261_7068;

type Matrix = [[bool; 4]; 4];

/// Relation tables over `(0,1), (ℓ₁,1), (0,2), (ℓ₂,2)`, transcribed cell by cell.
const CYCLE: Matrix = [
    [true, false, false, true],
    [false, true, true, false],
    [false, true, true, false],
    [true, false, false, true],
];
const TWO_LOOPS: Matrix = [
    [true, true, false, false],
    [true, true, false, false],
    [false, false, true, true],
    [false, false, true, true],
];
const TWO_INTERVALS: Matrix = [
    [true, false, false, false],
    [false, true, false, false],
    [false, false, true, false],
    [false, false, false, true],
];
const FIGURE_EIGHT: Matrix = [[true; 4]; 4];
const LASSO: Matrix = [
    [true, true, true, false],
    [true, true, true, false],
    [true, true, true, false],
    [false, false, false, true],
];

fn two_edge_endpoints() -> [Endpoint; 4] {
    [
        Endpoint::new(EdgeId::from(1), Side::Zero),
        Endpoint::new(EdgeId::from(1), Side::Length),
        Endpoint::new(EdgeId::from(2), Side::Zero),
        Endpoint::new(EdgeId::from(2), Side::Length),
    ]
}

fn from_matrix(m: &Matrix, l1: &Rational, l2: &Rational) -> MetricGraph {
    let ends = two_edge_endpoints();
    let mut glue = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if m[i][j] {
                glue.push((ends[i].clone(), ends[j].clone()));
            }
        }
    }
    MetricGraph::build(
        [(EdgeId::from(1), l1.clone()), (EdgeId::from(2), l2.clone())],
        glue,
    )
    .unwrap()
}

fn to_matrix(g: &MetricGraph) -> Matrix {
    let ends = two_edge_endpoints();
    let mut m = [[false; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = g.relation().related(&ends[i], &ends[j]);
        }
    }
    m
}

fn length_pairs() -> Vec<(Rational, Rational)> {
    vec![
        (int(1), int(1)),
        (ratio(1, 2), int(3)),
        (ratio(7, 3), ratio(2, 5)),
    ]
}

struct Suite {
    quiet: bool,
    failures: usize,
    /// Every graph produced by criteria 1-6, except the exhaustive sweep.
    graphs: Vec<MetricGraph>,
    /// Round-trip failures and a digest of the emitted bytes of the sweep.
    sweep_round_trip_failures: usize,
    sweep_digest: u64,
    sweep_count: usize,
}

impl Suite {
    fn new(quiet: bool) -> Self {
        Suite {
            quiet,
            failures: 0,
            graphs: Vec::new(),
            sweep_round_trip_failures: 0,
            sweep_digest: 0,
            sweep_count: 0,
        }
    }

    fn report(&mut self, n: usize, passed: bool, summary: &str) {
        if !self.quiet {
            let verdict = if passed { "PASS" } else { "FAIL" };
            println!("criterion {n}: {verdict}  {summary}");
        }
        if !passed {
            self.failures += 1;
        }
    }

    fn keep(&mut self, g: &MetricGraph) {
        self.graphs.push(g.clone());
    }
}

fn criterion_1(suite: &mut Suite) {
    let start = Instant::now();
    let mut ok = true;
    for (l1, l2) in length_pairs() {
        let cycle = from_matrix(&CYCLE, &l1, &l2);
        let loops = from_matrix(&TWO_LOOPS, &l1, &l2);
        ok &= to_matrix(&cycle) == CYCLE && to_matrix(&loops) == TWO_LOOPS;
        let meet = graph_intersection(&cycle, &loops).unwrap();
        let join = graph_union(&cycle, &loops).unwrap();
        ok &= to_matrix(&meet) == TWO_INTERVALS && to_matrix(&join) == FIGURE_EIGHT;
        ok &= meet == from_matrix(&TWO_INTERVALS, &l1, &l2)
            && join == from_matrix(&FIGURE_EIGHT, &l1, &l2);
        ok &= meet.vertex_count() == 4 && join.vertex_count() == 1;
        for g in [&cycle, &loops, &meet, &join] {
            suite.keep(g);
        }
    }
    let elapsed = start.elapsed();
    let passed = ok && elapsed < Duration::from_secs(1);
    suite.report(
        1,
        passed,
        &format!("cycle ∩ two loops = two intervals, cycle ∪ two loops = figure-8 ({elapsed:.2?})"),
    );
}

fn criterion_2(suite: &mut Suite) {
    let mut ok = true;
    let mut checked = 0;
    for (l1, l2) in length_pairs() {
        for m in [&LASSO, &CYCLE, &TWO_LOOPS, &TWO_INTERVALS] {
            let g = from_matrix(m, &l1, &l2);
            let c = graph_complement(&g, None).unwrap();
            let flower = MetricGraph::flower(g.edges().clone());
            ok &= to_matrix(&c) == FIGURE_EIGHT && c == flower;
            checked += 1;
            suite.keep(&g);
            suite.keep(&c);
        }
    }
    suite.report(
        2,
        ok,
        &format!(
            "complement of lasso, cycle, two loops, two intervals = figure-8 ({checked} cases)"
        ),
    );
}

fn criterion_3(suite: &mut Suite) {
    let triangle =
        parse_graph("edge 1 1\nedge 2 2\nedge 3 4\nglue 1:1 2:0\nglue 2:1 3:0\nglue 3:1 1:0\n")
            .unwrap();
    let p = GraphPoint::new(3u64, int(0));
    let q = GraphPoint::new(3u64, int(4));
    let d = distance(&triangle, &p, &q).unwrap();
    let oracle = oracle_distance(&triangle, &p, &q);
    let passed = d == Distance::Finite(int(3)) && oracle == Some(int(3));
    suite.keep(&triangle);
    suite.report(
        3,
        passed,
        &format!(
            "triangle 1, 2, 4: d = {d}, oracle = {}",
            oracle.map_or("inf".into(), |o| o.to_string())
        ),
    );
}

/// Every connected graph with at most four edges, lengths in {1/2, 1, 2},
/// over every partition of its endpoints.
fn sweep(mut visit: impl FnMut(MetricGraph)) {
    let choices = [ratio(1, 2), int(1), int(2)];
    for m in 1..=4usize {
        let parts = partitions(2 * m);
        for code in 0..3usize.pow(m as u32) {
            let lengths: Vec<Rational> = (0..m)
                .map(|i| choices[code / 3usize.pow(i as u32) % 3].clone())
                .collect();
            for labels in &parts {
                let g = graph_from_labels(&lengths, labels);
                if g.component_edge_sets().len() == 1 {
                    visit(g);
                }
            }
        }
    }
}

fn criterion_4(suite: &mut Suite) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut graphs = 0usize;
    let mut mismatches = 0usize;
    let mut round_trip_failures = 0usize;
    let mut hasher = DefaultHasher::new();
    sweep(|g| {
        graphs += 1;
        for _ in 0..5 {
            let p = random_point(&mut rng, &g);
            let q = random_point(&mut rng, &g);
            let d = distance(&g, &p, &q).unwrap();
            let expected = match oracle_distance(&g, &p, &q) {
                Some(o) => Distance::Finite(o),
                None => Distance::Infinite,
            };
            if d != expected {
                mismatches += 1;
                if mismatches <= 3 {
                    eprintln!("  mismatch on {}: {p} {q}: {d} vs {expected}", g.relation());
                }
            }
        }
        let text = emit_graph(&g);
        if parse_graph(&text).as_ref() != Ok(&g) {
            round_trip_failures += 1;
        }
        text.hash(&mut hasher);
    });
    suite.sweep_round_trip_failures = round_trip_failures;
    suite.sweep_digest = hasher.finish();
    suite.sweep_count = graphs;
    let elapsed = start.elapsed();
    let passed = mismatches == 0 && graphs > 0 && elapsed < Duration::from_secs(60);
    suite.report(
        4,
        passed,
        &format!(
            "{graphs} connected graphs × 5 point pairs, {mismatches} disagreements with the chain oracle ({elapsed:.2?})"
        ),
    );
}

fn subdivision_trials(
    seed: u64,
    trials: usize,
    mut visit: impl FnMut(&mut ChaCha8Rng, MetricGraph, Subdivision),
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < trials {
        let g = random_graph(&mut rng, 4);
        let cuts = random_cuts(&mut rng, &g);
        if cuts.is_empty() {
            continue;
        }
        let s = subdivide(&g, &cuts).unwrap();
        visit(&mut rng, g, s);
        done += 1;
    }
}

fn criterion_5(suite: &mut Suite) {
    let mut violations = 0;
    let mut mixed = 0;
    subdivision_trials(SEED ^ 5, 200, |rng, g, s| {
        let child = s.child();
        let p = random_point(rng, &g);
        let q = random_point(rng, &g);
        let transfer = PointTransfer::refining(&s);
        let ps = transfer.transfer_points(&p).unwrap();
        let qs = transfer.transfer_points(&q).unwrap();
        let d = distance(&g, &p, &q).unwrap();
        if !d.is_finite() {
            mixed += 1;
        }
        for lp in &ps {
            for lq in &qs {
                if distance(child, lp, lq).unwrap() != d {
                    violations += 1;
                }
            }
        }
        suite.keep(&g);
        suite.keep(child);
    });
    suite.report(
        5,
        violations == 0,
        &format!("200 subdivision trials ({mixed} with infinite distance), {violations} distance changes"),
    );
}

fn criterion_6(suite: &mut Suite) {
    let mut failures = 0;
    subdivision_trials(SEED ^ 6, 200, |_, g, s| {
        let child = s.child();
        let pf = primitive_form(&g);
        let ok = primitive_form(&pf) == pf
            && pf.volume() == g.volume()
            && primitive_form(child).volume() == g.volume()
            && equivalent_mod_subdivision(&g, child);
        if !ok {
            failures += 1;
        }
        suite.keep(&g);
        suite.keep(child);
        suite.keep(&pf);
    });
    suite.report(
        6,
        failures == 0,
        &format!("200 trials of idempotence, volume and equivalence with a subdivision, {failures} failures"),
    );
}

fn criterion_7(suite: &mut Suite) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut violations = 0;
    let mut infinite = 0;
    for _ in 0..50 {
        let g = random_graph(&mut rng, 5);
        for _ in 0..10 {
            let [p, q, r] = [0; 3].map(|_| random_point(&mut rng, &g));
            let d = |a: &GraphPoint, b: &GraphPoint| distance(&g, a, b).unwrap();
            let (pq, qr, pr) = (d(&p, &q), d(&q, &r), d(&p, &r));
            if !pr.is_finite() {
                infinite += 1;
            }
            let identity = d(&p, &p) == Distance::zero()
                && (pq == Distance::zero()) == g.same_point(&p, &q).unwrap();
            let symmetry = pq == d(&q, &p) && qr == d(&r, &q) && pr == d(&r, &p);
            let triangle =
                pr <= pq.clone() + qr.clone() && pq <= pr.clone() + qr.clone() && qr <= pq + pr;
            if !(identity && symmetry && triangle) {
                violations += 1;
            }
        }
    }
    suite.report(
        7,
        violations == 0,
        &format!(
            "500 triples on 50 graphs ({infinite} with an infinite side), {violations} violations"
        ),
    );
}

fn criterion_8(suite: &mut Suite) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut mismatches = 0;
    let mut inexact = 0;
    for _ in 0..100 {
        let g = random_graph(&mut rng, 3);
        let p: u32 = rng.gen_range(1..=4);
        let f = if p.is_multiple_of(2) {
            random_function(&mut rng, &g, 4)
        } else {
            let pieces: Vec<(EdgeId, Polynomial)> = g
                .edges()
                .iter()
                .map(|(id, l)| (id.clone(), random_split_polynomial(&mut rng, l, 3)))
                .collect();
            PiecewiseFunction::new(pieces)
        };
        let mut cuts = random_cuts(&mut rng, &g);
        if cuts.is_empty() {
            let (id, l) = g.edges().iter().next().unwrap();
            cuts.insert(id.clone(), vec![l * ratio(1, 3)]);
        }
        let s = subdivide(&g, &cuts).unwrap();
        let pushed = push_to_subdivision(&s, &f).unwrap();
        let before = lp_norm_pow(&g, &f, p).unwrap();
        let after = lp_norm_pow(s.child(), &pushed, p).unwrap();
        if !(before.is_exact() && after.is_exact()) {
            inexact += 1;
        }
        if before != after {
            mismatches += 1;
        }
    }
    let invariance = mismatches == 0 && inexact == 0;

    let interval = parse_graph("edge 1 1\n").unwrap();
    let x = PiecewiseFunction::new([(EdgeId::from(1), Polynomial::x())]);
    let norm = sobolev_norm(&interval, &x, 1, Exponent::Finite(2)).unwrap();
    let expected = 1.0 / 3f64.sqrt() + 1.0;
    let relative = (norm.value - expected).abs() / expected;
    let sobolev = relative <= 1e-12;

    let path = parse_graph("edge 1 1\nedge 2 1\nglue 1:1 2:0\n").unwrap();
    let f = PiecewiseFunction::new([
        (EdgeId::from(1), Polynomial::x()),
        (EdgeId::from(2), Polynomial::from_ints(&[1, -1])),
    ]);
    let witness = ck_witness(&path, &f, 1).unwrap();
    let middle = [
        Endpoint::new(EdgeId::from(1), Side::Length),
        Endpoint::new(EdgeId::from(2), Side::Zero),
    ];
    let c1 = matches!(
        &witness,
        Some(w) if w.order == 1
            && w.vertex.endpoints() == middle
            && w.values.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>() == [int(1), int(-1)]
    ) && ck_witness(&path, &f, 0).unwrap().is_none()
        && sobolev_norm(&path, &f, 2, Exponent::Finite(2)).is_err();
    suite.keep(&path);

    let witness_text = witness.map_or("none".into(), |w| {
        format!("order {} at {} ({})", w.order, w.vertex, w.format_values())
    });
    suite.report(
        8,
        invariance && sobolev && c1,
        &format!(
            "L^p invariance: {mismatches} mismatches, {inexact} inexact in 100 trials; ‖x‖_(1,2) relative error {relative:.1e}; C^1 witness {witness_text}"
        ),
    );
}

fn criterion_9(suite: &mut Suite) {
    let round_trip = suite
        .graphs
        .iter()
        .filter(|g| parse_graph(&emit_graph(g)).as_ref() != Ok(*g))
        .count()
        + suite.sweep_round_trip_failures;

    // Regenerate everything from scratch and compare the emitted bytes.
    let first: String = suite.graphs.iter().map(emit_graph).collect();
    let mut again = Suite::new(true);
    for run in [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ] {
        run(&mut again);
    }
    let second: String = again.graphs.iter().map(emit_graph).collect();
    let mut hasher = DefaultHasher::new();
    let mut count = 0;
    sweep(|g| {
        emit_graph(&g).hash(&mut hasher);
        count += 1;
    });
    let deterministic =
        first == second && hasher.finish() == suite.sweep_digest && count == suite.sweep_count;
    let total = suite.graphs.len() + suite.sweep_count;
    suite.report(
        9,
        round_trip == 0 && deterministic,
        &format!(
            "{total} graphs: {round_trip} round-trip failures, second run {}",
            if deterministic {
                "byte-identical"
            } else {
                "differs"
            }
        ),
    );
}

fn main() -> ExitCode {
    let mut suite = Suite::new(false);
    criterion_1(&mut suite);
    criterion_2(&mut suite);
    criterion_3(&mut suite);
    criterion_4(&mut suite);
    criterion_5(&mut suite);
    criterion_6(&mut suite);
    criterion_7(&mut suite);
    criterion_8(&mut suite);
    criterion_9(&mut suite);
    if suite.failures == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 9 criteria failed", suite.failures);
        ExitCode::FAILURE
    }
}
