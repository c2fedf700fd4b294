//! Functions on a metric graph, represented edgewise by polynomials.
//!
//! A function `f = ⊕ f_e` assigns to every edge a polynomial in that edge's
//! own coordinate `x ∈ [0, ℓ_e]`. Derivatives are taken edgewise, with no
//! orientation correction at vertices. Continuity, `C^k` membership and the
//! `L^p` and Sobolev norms are all computed from this description; integrals
//! are exact rationals whenever the value is rational, otherwise a certified
//! rational enclosure.

mod polynomial;
mod roots;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

pub use polynomial::Polynomial;
pub use roots::{Enclosure, Root};

use crate::edge::EdgeId;
use crate::graph::{MetricGraph, Vertex};
use crate::rational::int;
use crate::relation::Endpoint;
use crate::surgery::Subdivision;
use crate::{Error, Rational, Result};
use roots::RootFinder;

/// Width allowed for each irrational contribution to an enclosure.
pub fn default_tolerance() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(1u8) << 96)
}

/// One polynomial per edge.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiecewiseFunction {
    pieces: BTreeMap<EdgeId, Polynomial>,
}

impl PiecewiseFunction {
    pub fn new(pieces: impl IntoIterator<Item = (EdgeId, Polynomial)>) -> Self {
        PiecewiseFunction {
            pieces: pieces.into_iter().collect(),
        }
    }

    /// The same constant on every edge of `g`.
    pub fn constant(g: &MetricGraph, c: Rational) -> Self {
        Self::new(
            g.edges()
                .ids()
                .map(|e| (e.clone(), Polynomial::constant(c.clone()))),
        )
    }

    pub fn piece(&self, edge: &EdgeId) -> Option<&Polynomial> {
        self.pieces.get(edge)
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&EdgeId, &Polynomial)> + '_ {
        self.pieces.iter()
    }

    /// `f^{(h)} = ⊕ f_e^{(h)}`.
    pub fn derivative(&self, order: usize) -> Self {
        Self::new(
            self.pieces
                .iter()
                .map(|(e, p)| (e.clone(), p.nth_derivative(order))),
        )
    }

    /// `αf + βg`, edge by edge. Missing pieces count as zero.
    pub fn linear_combination(alpha: &Rational, f: &Self, beta: &Rational, g: &Self) -> Self {
        let mut pieces = BTreeMap::new();
        for edge in f.pieces.keys().chain(g.pieces.keys()) {
            let zero = Polynomial::zero();
            let a = f.pieces.get(edge).unwrap_or(&zero).scale(alpha);
            let b = g.pieces.get(edge).unwrap_or(&zero).scale(beta);
            pieces.insert(edge.clone(), &a + &b);
        }
        Self { pieces }
    }

    /// Checks that the pieces are exactly the edges of `g`.
    pub fn check_domain(&self, g: &MetricGraph) -> Result<()> {
        if let Some(missing) = g.edges().ids().find(|e| !self.pieces.contains_key(e)) {
            return Err(Error::MissingPiece(missing.clone()));
        }
        if let Some(extra) = self.pieces.keys().find(|e| !g.edges().contains(e)) {
            return Err(Error::ExtraPiece(extra.clone()));
        }
        Ok(())
    }

    /// Value of the piece at an endpoint.
    pub fn endpoint_value(&self, g: &MetricGraph, endpoint: &Endpoint) -> Result<Rational> {
        let piece = self
            .pieces
            .get(&endpoint.edge)
            .ok_or_else(|| Error::MissingPiece(endpoint.edge.clone()))?;
        Ok(piece.eval(&g.edges().coordinate(endpoint)?))
    }
}

/// A vertex at which some derivative takes different values on different
/// incident pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discontinuity {
    pub order: usize,
    pub vertex: Vertex,
    pub values: Vec<(Endpoint, Rational)>,
}

impl Discontinuity {
    fn into_error(self) -> Error {
        Error::Discontinuous {
            order: self.order,
            vertex: self.vertex.to_string(),
            values: self.format_values(),
        }
    }

    pub fn format_values(&self) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(e, v)| format!("{e}={v}"))
            .collect();
        parts.join(" ")
    }
}

fn order_witness(
    g: &MetricGraph,
    f: &PiecewiseFunction,
    order: usize,
) -> Result<Option<Discontinuity>> {
    let derived = f.derivative(order);
    for vertex in g.vertices() {
        let values = vertex
            .endpoints()
            .iter()
            .map(|e| Ok((e.clone(), derived.endpoint_value(g, e)?)))
            .collect::<Result<Vec<_>>>()?;
        if values.iter().any(|(_, v)| v != &values[0].1) {
            return Ok(Some(Discontinuity {
                order,
                vertex,
                values,
            }));
        }
    }
    Ok(None)
}

/// A vertex where `f` fails to be continuous, if any.
pub fn continuity_witness(g: &MetricGraph, f: &PiecewiseFunction) -> Result<Option<Discontinuity>> {
    f.check_domain(g)?;
    order_witness(g, f, 0)
}

/// `f ∈ C(Γ)`: at every vertex all incident pieces agree.
pub fn is_continuous(g: &MetricGraph, f: &PiecewiseFunction) -> Result<bool> {
    Ok(continuity_witness(g, f)?.is_none())
}

/// The lowest derivative order `h ≤ k` that breaks continuity, if any.
pub fn ck_witness(
    g: &MetricGraph,
    f: &PiecewiseFunction,
    k: usize,
) -> Result<Option<Discontinuity>> {
    f.check_domain(g)?;
    for order in 0..=k {
        if let Some(w) = order_witness(g, f, order)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `f ∈ C^k(Γ)`: edgewise derivatives of orders `0..=k` are continuous on `Γ`.
pub fn is_ck(g: &MetricGraph, f: &PiecewiseFunction, k: usize) -> Result<bool> {
    Ok(ck_witness(g, f, k)?.is_none())
}

/// An `L^p` exponent, `1 ≤ p ≤ ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Finite(u32),
    Infinity,
}

impl Exponent {
    pub fn finite(p: u32) -> Result<Self> {
        if p == 0 {
            Err(Error::InvalidExponent("p must be at least 1".into()))
        } else {
            Ok(Exponent::Finite(p))
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            _ => {
                let p: u32 = s.parse().map_err(|_| {
                    Error::InvalidExponent(format!("{s:?} is not a positive integer or inf"))
                })?;
                Exponent::finite(p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

/// `∫_lo^hi |p(x)|^exponent dx` for odd or even exponents.
fn abs_power_integral(
    p: &Polynomial,
    exponent: u32,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
) -> Enclosure {
    if p.is_zero() {
        return Enclosure::exact(Rational::zero());
    }
    let power = p.pow(exponent);
    let primitive = power.antiderivative();
    let signed = |a: &Rational, b: &Rational, positive: bool| {
        let v = primitive.eval(b) - primitive.eval(a);
        if positive {
            v
        } else {
            -v
        }
    };
    if exponent.is_multiple_of(2) {
        return Enclosure::exact(signed(lo, hi, true));
    }

    let finder = RootFinder::new(p);
    let sign_at = |x: &Rational| p.eval(x).is_positive();
    let mut total = Enclosure::exact(Rational::zero());
    let mut cursor = lo.clone();
    let plain = |from: &Rational, to: &Rational, total: &mut Enclosure| {
        if from < to {
            let mid = (from + to) / int(2);
            *total = total.add(&Enclosure::exact(signed(from, to, sign_at(&mid))));
        }
    };
    for root in finder.roots_between(lo, hi) {
        match root {
            Root::Exact(r) => {
                plain(&cursor, &r, &mut total);
                cursor = r;
            }
            Root::Irrational { lo: a, hi: b } => {
                let piece = bracket_integral(&finder, p, exponent, a, b, &signed, tol);
                plain(&cursor, &piece.lo, &mut total);
                total = total.add(&piece.enclosure);
                cursor = piece.hi;
            }
        }
    }
    plain(&cursor, hi, &mut total);
    total
}

/// Enclosure of the integral over a refined bracket `[lo, hi]`.
struct BracketPiece {
    enclosure: Enclosure,
    lo: Rational,
    hi: Rational,
}

/// Encloses `∫_a^b |p|^n` over a bracket holding one irrational root of `p`.
fn bracket_integral(
    finder: &RootFinder,
    p: &Polynomial,
    exponent: u32,
    mut a: Rational,
    mut b: Rational,
    signed: &dyn Fn(&Rational, &Rational, bool) -> Rational,
    tol: &Rational,
) -> BracketPiece {
    loop {
        let (sa, sb) = (p.eval(&a).is_positive(), p.eval(&b).is_positive());
        if sa == sb {
            // even multiplicity: |p|^n has one sign expression on the whole bracket
            return BracketPiece {
                enclosure: Enclosure::exact(signed(&a, &b, sa)),
                lo: a,
                hi: b,
            };
        }
        // With the crossing at r, the value is h(r) where
        // h(t) = sa·∫_a^t pⁿ + sb·∫_t^b pⁿ rises up to r and falls after it.
        let h_at_a = signed(&a, &b, sb);
        let h_at_b = signed(&a, &b, sa);
        let lower = std::cmp::max(Rational::zero(), std::cmp::max(h_at_a, h_at_b));
        let width = &b - &a;
        let bound = abs_bound(p, &a, &width);
        let upper = &width * pow_rational(&bound, exponent);
        let upper = std::cmp::max(upper, lower.clone());
        if &upper - &lower <= *tol {
            return BracketPiece {
                enclosure: Enclosure::new(lower, upper),
                lo: a,
                hi: b,
            };
        }
        (a, b) = finder.bisect(&a, &b);
    }
}

fn pow_rational(x: &Rational, n: u32) -> Rational {
    (0..n).fold(int(1), |acc, _| acc * x)
}

/// Upper bound for `|p|` on `[a, a + width]` from the Taylor expansion at `a`.
fn abs_bound(p: &Polynomial, a: &Rational, width: &Rational) -> Rational {
    let local = p.shift(a);
    let mut power = int(1);
    let mut bound = Rational::zero();
    for c in local.coeffs() {
        bound += c.abs() * &power;
        power *= width;
    }
    bound
}

/// `∫_Γ |f|^p dμ = Σ_e ∫_0^{ℓ_e} |f_e|^p`, exact when rational.
pub fn lp_norm_pow(g: &MetricGraph, f: &PiecewiseFunction, p: u32) -> Result<Enclosure> {
    lp_norm_pow_with_tolerance(g, f, p, &default_tolerance())
}

/// As [`lp_norm_pow`], with each irrational contribution enclosed to within `tol`.
pub fn lp_norm_pow_with_tolerance(
    g: &MetricGraph,
    f: &PiecewiseFunction,
    p: u32,
    tol: &Rational,
) -> Result<Enclosure> {
    Exponent::finite(p)?;
    f.check_domain(g)?;
    let mut total = Enclosure::exact(Rational::zero());
    for (edge, length) in g.edges().iter() {
        let piece = &f.pieces[edge];
        total = total.add(&abs_power_integral(
            piece,
            p,
            &Rational::zero(),
            length,
            tol,
        ));
    }
    Ok(total)
}

/// `max_Γ |f|`, attained at an endpoint or a critical point of some piece.
pub fn sup_norm(g: &MetricGraph, f: &PiecewiseFunction) -> Result<Enclosure> {
    f.check_domain(g)?;
    let tol = default_tolerance();
    let mut best = Enclosure::exact(Rational::zero());
    for (edge, length) in g.edges().iter() {
        let piece = &f.pieces[edge];
        let zero = Rational::zero();
        for x in [&zero, length] {
            best = best.max(&Enclosure::exact(piece.eval(x).abs()));
        }
        let slope = piece.derivative();
        if slope.is_zero() {
            continue;
        }
        let finder = RootFinder::new(&slope);
        for root in finder.roots_between(&zero, length) {
            let candidate = match root {
                Root::Exact(r) => Enclosure::exact(piece.eval(&r).abs()),
                Root::Irrational { lo, hi } => critical_value(&finder, piece, &slope, lo, hi, &tol),
            };
            best = best.max(&candidate);
        }
    }
    Ok(best)
}

/// Encloses `|p(r)|` for the critical point `r` bracketed by `(lo, hi)`.
fn critical_value(
    finder: &RootFinder,
    p: &Polynomial,
    slope: &Polynomial,
    mut lo: Rational,
    mut hi: Rational,
    tol: &Rational,
) -> Enclosure {
    loop {
        let width = &hi - &lo;
        let drift = abs_bound(slope, &lo, &width) * &width;
        let at_lo = p.eval(&lo).abs();
        let lower = std::cmp::max(Rational::zero(), &at_lo - &drift);
        let upper = &at_lo + &drift;
        if &upper - &lower <= *tol {
            return Enclosure::new(lower, upper);
        }
        (lo, hi) = finder.bisect(&lo, &hi);
    }
}

/// `‖f‖_p` as a float: the `p`-th root of the midpoint of the exact power
/// enclosure, or the midpoint of the sup enclosure for `p = ∞`. The relative
/// error is a few ulps beyond the enclosure width.
pub fn lp_norm(g: &MetricGraph, f: &PiecewiseFunction, p: Exponent) -> Result<f64> {
    Ok(match p {
        Exponent::Finite(p) => lp_norm_pow(g, f, p)?.to_f64().powf(1.0 / f64::from(p)),
        Exponent::Infinity => sup_norm(g, f)?.to_f64(),
    })
}

/// `‖f‖_{k,p} = Σ_{h ≤ k} ‖f^{(h)}‖_p` together with the exact per-order parts.
#[derive(Clone, Debug, PartialEq)]
pub struct SobolevNorm {
    pub exponent: Exponent,
    /// Order `h` holds `∫|f^{(h)}|^p` for finite `p`, `sup|f^{(h)}|` for `p = ∞`.
    pub parts: Vec<Enclosure>,
    pub value: f64,
}

/// The `W^{k,p}` norm, after checking that `f^{(h)}` is continuous for every
/// `h < k`.
pub fn sobolev_norm(
    g: &MetricGraph,
    f: &PiecewiseFunction,
    k: usize,
    p: Exponent,
) -> Result<SobolevNorm> {
    if let Exponent::Finite(0) = p {
        return Err(Error::InvalidExponent("p must be at least 1".into()));
    }
    f.check_domain(g)?;
    if k > 0 {
        if let Some(w) = ck_witness(g, f, k - 1)? {
            return Err(w.into_error());
        }
    }
    let mut parts = Vec::with_capacity(k + 1);
    let mut value = 0.0;
    for h in 0..=k {
        let derived = f.derivative(h);
        let part = match p {
            Exponent::Finite(p) => lp_norm_pow(g, &derived, p)?,
            Exponent::Infinity => sup_norm(g, &derived)?,
        };
        value += match p {
            Exponent::Finite(p) => part.to_f64().powf(1.0 / f64::from(p)),
            Exponent::Infinity => part.to_f64(),
        };
        parts.push(part);
    }
    Ok(SobolevNorm {
        exponent: p,
        parts,
        value,
    })
}

/// The function induced on a subdivision: each piece is the parent piece
/// re-centred at the piece's offset.
pub fn push_to_subdivision(s: &Subdivision, f: &PiecewiseFunction) -> Result<PiecewiseFunction> {
    f.check_domain(s.parent())?;
    let pieces = s.child().edges().ids().map(|child| {
        let parent = s.parent_edge(child).expect("child edge has a parent");
        let offset = s.offset(child).expect("child edge has an offset");
        (child.clone(), f.pieces[parent].shift(offset))
    });
    Ok(PiecewiseFunction::new(pieces))
}
