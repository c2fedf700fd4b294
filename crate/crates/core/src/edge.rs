//! Edge identifiers and the disjoint union of intervals they index.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::relation::{Endpoint, Side};
use crate::{Error, Rational, Result};

/// Name of an edge. Purely numeric ids order numerically and sort before
/// every other id; the rest order lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let valid =
            !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
        if valid {
            Ok(EdgeId(name))
        } else {
            Err(Error::InvalidEdgeId(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric_key(&self) -> Option<(usize, &str)> {
        if self.0.bytes().all(|b| b.is_ascii_digit()) {
            let trimmed = self.0.trim_start_matches('0');
            Some((trimmed.len(), trimmed))
        } else {
            None
        }
    }
}

impl Ord for EdgeId {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_kind = match (self.numeric_key(), other.numeric_key()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        };
        by_kind.then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for EdgeId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for EdgeId {
    fn from(n: u64) -> Self {
        EdgeId(n.to_string())
    }
}

impl FromStr for EdgeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EdgeId::new(s)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The family of interval lengths `(ℓ_e)`, i.e. the disjoint union of the
/// intervals `[0, ℓ_e]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EdgeSpace {
    lengths: BTreeMap<EdgeId, Rational>,
}

impl EdgeSpace {
    pub fn new(lengths: impl IntoIterator<Item = (EdgeId, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (edge, length) in lengths {
            if !length.is_positive() {
                return Err(Error::NonPositiveLength { edge, length });
            }
            if map.contains_key(&edge) {
                return Err(Error::DuplicateEdge(edge));
            }
            map.insert(edge, length);
        }
        Ok(EdgeSpace { lengths: map })
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn contains(&self, edge: &EdgeId) -> bool {
        self.lengths.contains_key(edge)
    }

    pub fn length(&self, edge: &EdgeId) -> Option<&Rational> {
        self.lengths.get(edge)
    }

    pub(crate) fn require(&self, edge: &EdgeId) -> Result<&Rational> {
        self.lengths
            .get(edge)
            .ok_or_else(|| Error::UnknownEdge(edge.clone()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &EdgeId> + '_ {
        self.lengths.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, &Rational)> + '_ {
        self.lengths.iter()
    }

    /// All endpoints `(0, e)` and `(ℓ_e, e)` in canonical order.
    pub fn endpoints(&self) -> Vec<Endpoint> {
        self.lengths
            .keys()
            .flat_map(|e| [Endpoint::zero(e.clone()), Endpoint::length(e.clone())])
            .collect()
    }

    /// Total length `Σ ℓ_e`.
    pub fn volume(&self) -> Rational {
        self.lengths
            .values()
            .fold(Rational::zero(), |acc, l| acc + l)
    }

    /// Coordinate of an endpoint on its own edge.
    pub fn coordinate(&self, endpoint: &Endpoint) -> Result<Rational> {
        let length = self.require(&endpoint.edge)?;
        Ok(match endpoint.side {
            Side::Zero => Rational::zero(),
            Side::Length => length.clone(),
        })
    }

    pub fn restrict<'a>(&self, keep: impl IntoIterator<Item = &'a EdgeId>) -> Result<Self> {
        let mut lengths = BTreeMap::new();
        for edge in keep {
            let length = self.require(edge)?;
            lengths.insert(edge.clone(), length.clone());
        }
        Ok(EdgeSpace { lengths })
    }
}
