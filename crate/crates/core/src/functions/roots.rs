//! Real root isolation with Sturm sequences and exact rational certificates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::polynomial::Polynomial;
use crate::rational::{int, simplest_between, to_f64};
use crate::Rational;

/// A real root inside an isolating interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Root {
    /// A rational root, known exactly.
    Exact(Rational),
    /// The only root in the open interval `(lo, hi)`; it is irrational and
    /// simple, and the squarefree part changes sign across it.
    Irrational { lo: Rational, hi: Rational },
}

/// Distinct real roots of a squarefree polynomial.
pub(crate) struct RootFinder {
    poly: Polynomial,
    chain: Vec<Polynomial>,
    lead_squared: Rational,
}

impl RootFinder {
    /// Prepares root finding for the distinct roots of `p`, which must be nonzero.
    pub(crate) fn new(p: &Polynomial) -> Self {
        let poly = p.squarefree();
        let mut chain = vec![poly.clone()];
        if poly.degree().unwrap_or(0) > 0 {
            chain.push(poly.derivative());
            loop {
                let n = chain.len();
                let (_, rem) = chain[n - 2].div_rem(&chain[n - 1]);
                if rem.is_zero() {
                    break;
                }
                chain.push(-&rem);
            }
        }
        let lead: BigInt = poly.integer_leading();
        let lead_squared = Rational::from_integer(&lead * &lead);
        RootFinder {
            poly,
            chain,
            lead_squared,
        }
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let mut changes = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let positive = v.is_positive();
            if last.is_some_and(|l| l != positive) {
                changes += 1;
            }
            last = Some(positive);
        }
        changes
    }

    /// Number of distinct roots in the half-open interval `(lo, hi]`.
    fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.sign_changes(lo) - self.sign_changes(hi)
    }

    /// Roots in the open interval `(lo, hi)`, in increasing order.
    pub(crate) fn roots_between(&self, lo: &Rational, hi: &Rational) -> Vec<Root> {
        let mut out = Vec::new();
        if self.poly.degree().unwrap_or(0) > 0 && lo < hi {
            self.isolate(lo.clone(), hi.clone(), &mut out);
        }
        out
    }

    fn open_count(&self, lo: &Rational, hi: &Rational) -> usize {
        let closed = self.count(lo, hi);
        closed - usize::from(self.poly.eval(hi).is_zero())
    }

    fn isolate(&self, lo: Rational, hi: Rational, out: &mut Vec<Root>) {
        match self.open_count(&lo, &hi) {
            0 => {}
            1 => out.push(self.classify(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                let on_root = self.poly.eval(&mid).is_zero();
                self.isolate(lo, mid.clone(), out);
                if on_root {
                    out.push(Root::Exact(mid.clone()));
                }
                self.isolate(mid, hi, out);
            }
        }
    }

    /// Shrinks an interval holding exactly one root until it either hits the
    /// root or is narrow enough that the simplest rational inside decides
    /// whether the root is rational.
    fn classify(&self, mut lo: Rational, mut hi: Rational) -> Root {
        loop {
            let ends_clear = !self.poly.eval(&lo).is_zero() && !self.poly.eval(&hi).is_zero();
            if ends_clear && (&hi - &lo) * &self.lead_squared < int(1) {
                let candidate = simplest_between(&lo, &hi);
                return if self.poly.eval(&candidate).is_zero() {
                    Root::Exact(candidate)
                } else {
                    Root::Irrational { lo, hi }
                };
            }
            let mid = (&lo + &hi) / int(2);
            if self.poly.eval(&mid).is_zero() {
                return Root::Exact(mid);
            }
            if self.count(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// One bisection step on an irrational root's bracket.
    pub(crate) fn bisect(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mid = (lo + hi) / int(2);
        let low_sign = self.poly.eval(lo).is_positive();
        if self.poly.eval(&mid).is_positive() == low_sign {
            (mid, hi.clone())
        } else {
            (lo.clone(), mid)
        }
    }
}

/// A certified rational enclosure `[lower, upper]` of a real number. Exact
/// when both ends coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lower: Rational,
    upper: Rational,
}

impl Enclosure {
    pub fn exact(value: Rational) -> Self {
        Enclosure {
            lower: value.clone(),
            upper: value,
        }
    }

    pub fn new(lower: Rational, upper: Rational) -> Self {
        assert!(lower <= upper, "inverted enclosure");
        Enclosure { lower, upper }
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The value, when known exactly.
    pub fn value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lower)
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / int(2)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        Enclosure {
            lower: &self.lower + &other.lower,
            upper: &self.upper + &other.upper,
        }
    }

    pub(crate) fn max(&self, other: &Self) -> Self {
        Enclosure {
            lower: std::cmp::max(&self.lower, &other.lower).clone(),
            upper: std::cmp::max(&self.upper, &other.upper).clone(),
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}
