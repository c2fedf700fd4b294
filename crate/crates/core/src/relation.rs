//! Equivalence relations on finite endpoint sets.
//!
//! A relation is stored as its partition: blocks of endpoints, each block
//! sorted, blocks ordered by their least endpoint. Two relations are equal
//! exactly when their partitions are, so the representation is canonical.

use std::collections::BTreeMap;
use std::fmt;

use crate::edge::EdgeId;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// The coordinate `0`.
    Zero,
    /// The coordinate `ℓ_e`.
    Length,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Zero => Side::Length,
            Side::Length => Side::Zero,
        }
    }
}

/// One of the two ends of an edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub edge: EdgeId,
    pub side: Side,
}

impl Endpoint {
    pub fn new(edge: impl Into<EdgeId>, side: Side) -> Self {
        Endpoint {
            edge: edge.into(),
            side,
        }
    }

    pub fn zero(edge: impl Into<EdgeId>) -> Self {
        Endpoint::new(edge, Side::Zero)
    }

    pub fn length(edge: impl Into<EdgeId>) -> Self {
        Endpoint::new(edge, Side::Length)
    }

    pub fn opposite(&self) -> Self {
        Endpoint {
            edge: self.edge.clone(),
            side: self.side.opposite(),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Zero => 0,
            Side::Length => 1,
        };
        write!(f, "{}:{}", self.edge, side)
    }
}

/// Disjoint-set forest over `0..n`, used transiently while closing relations.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// An equivalence relation on a finite set of endpoints, held as a partition.
#[derive(Clone)]
pub struct EndpointRelation {
    blocks: Vec<Vec<Endpoint>>,
    // sorted by endpoint; value is the block index
    index: Vec<(Endpoint, usize)>,
}

impl PartialEq for EndpointRelation {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for EndpointRelation {}

impl std::hash::Hash for EndpointRelation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.blocks.hash(state);
    }
}

impl fmt::Debug for EndpointRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EndpointRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_block(block))?;
        }
        f.write_str("}")
    }
}

pub(crate) fn format_block(block: &[Endpoint]) -> String {
    let names: Vec<String> = block.iter().map(Endpoint::to_string).collect();
    format!("{{{}}}", names.join(" "))
}

impl EndpointRelation {
    fn from_canonical_parts(mut blocks: Vec<Vec<Endpoint>>) -> Self {
        for block in &mut blocks {
            block.sort();
        }
        blocks.sort();
        let mut index: Vec<(Endpoint, usize)> = blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |e| (e.clone(), i)))
            .collect();
        index.sort();
        EndpointRelation { blocks, index }
    }

    /// Builds a relation from explicit blocks. Blocks must be nonempty and
    /// pairwise disjoint; their union is the ambient set.
    pub fn from_blocks(blocks: impl IntoIterator<Item = Vec<Endpoint>>) -> Result<Self> {
        let blocks: Vec<Vec<Endpoint>> = blocks.into_iter().collect();
        let mut seen = std::collections::BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for e in block {
                if !seen.insert(e.clone()) {
                    return Err(Error::OverlappingBlocks(e.clone()));
                }
            }
        }
        Ok(Self::from_canonical_parts(blocks))
    }

    /// The diagonal relation: every endpoint alone in its block.
    pub fn identity(ambient: impl IntoIterator<Item = Endpoint>) -> Self {
        let mut all: Vec<Endpoint> = ambient.into_iter().collect();
        all.sort();
        all.dedup();
        Self::from_canonical_parts(all.into_iter().map(|e| vec![e]).collect())
    }

    /// The universal relation: one block holding everything (none if empty).
    pub fn universal(ambient: impl IntoIterator<Item = Endpoint>) -> Self {
        let mut all: Vec<Endpoint> = ambient.into_iter().collect();
        all.sort();
        all.dedup();
        if all.is_empty() {
            return Self::from_canonical_parts(Vec::new());
        }
        Self::from_canonical_parts(vec![all])
    }

    /// The equivalence relation on `ambient` generated by `pairs`: the finest
    /// partition in which both members of every pair share a block.
    pub fn closure<'a>(
        pairs: impl IntoIterator<Item = (&'a Endpoint, &'a Endpoint)>,
        ambient: impl IntoIterator<Item = Endpoint>,
    ) -> Result<Self> {
        let mut all: Vec<Endpoint> = ambient.into_iter().collect();
        all.sort();
        all.dedup();
        let position = |e: &Endpoint| {
            all.binary_search(e)
                .map_err(|_| Error::UnknownEndpoint(e.clone()))
        };
        let mut forest = UnionFind::new(all.len());
        for (a, b) in pairs {
            let (i, j) = (position(a)?, position(b)?);
            forest.union(i, j);
        }
        Ok(Self::from_forest(&all, &mut forest))
    }

    fn from_forest(all: &[Endpoint], forest: &mut UnionFind) -> Self {
        let mut groups: BTreeMap<usize, Vec<Endpoint>> = BTreeMap::new();
        for (i, e) in all.iter().enumerate() {
            groups.entry(forest.find(i)).or_default().push(e.clone());
        }
        Self::from_canonical_parts(groups.into_values().collect())
    }

    pub fn blocks(&self) -> &[Vec<Endpoint>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The ambient endpoint set in canonical order.
    pub fn ambient(&self) -> impl Iterator<Item = &Endpoint> + '_ {
        self.index.iter().map(|(e, _)| e)
    }

    pub fn ambient_len(&self) -> usize {
        self.index.len()
    }

    pub fn contains(&self, endpoint: &Endpoint) -> bool {
        self.block_index(endpoint).is_some()
    }

    /// Index into [`blocks`](Self::blocks) of the block holding `endpoint`.
    pub fn block_index(&self, endpoint: &Endpoint) -> Option<usize> {
        self.index
            .binary_search_by(|(e, _)| e.cmp(endpoint))
            .ok()
            .map(|i| self.index[i].1)
    }

    pub fn block_of(&self, endpoint: &Endpoint) -> Option<&[Endpoint]> {
        self.block_index(endpoint)
            .map(|i| self.blocks[i].as_slice())
    }

    pub fn related(&self, a: &Endpoint, b: &Endpoint) -> bool {
        match (self.block_index(a), self.block_index(b)) {
            (Some(i), Some(j)) => i == j,
            _ => false,
        }
    }

    /// Every related ordered pair, reflexive pairs included.
    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        self.blocks
            .iter()
            .flat_map(|b| {
                b.iter()
                    .flat_map(move |x| b.iter().map(move |y| (x.clone(), y.clone())))
            })
            .collect()
    }

    pub fn same_ambient(&self, other: &Self) -> bool {
        self.index.len() == other.index.len()
            && self
                .index
                .iter()
                .zip(&other.index)
                .all(|((a, _), (b, _))| a == b)
    }

    fn require_same_ambient(&self, other: &Self) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// `∼₁ ∩ ∼₂`, which is again an equivalence relation.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.require_same_ambient(other)?;
        let mut blocks = Vec::new();
        for block in &self.blocks {
            let mut split: BTreeMap<usize, Vec<Endpoint>> = BTreeMap::new();
            for e in block {
                let j = other.block_index(e).expect("same ambient");
                split.entry(j).or_default().push(e.clone());
            }
            blocks.extend(split.into_values());
        }
        Ok(Self::from_canonical_parts(blocks))
    }

    /// The equivalence relation generated by `∼₁ ∪ ∼₂`.
    pub fn union_generated(&self, other: &Self) -> Result<Self> {
        self.require_same_ambient(other)?;
        let all: Vec<Endpoint> = self.ambient().cloned().collect();
        let mut forest = UnionFind::new(all.len());
        for relation in [self, other] {
            for block in &relation.blocks {
                let first = all.binary_search(&block[0]).expect("same ambient");
                for e in &block[1..] {
                    forest.union(first, all.binary_search(e).expect("same ambient"));
                }
            }
        }
        Ok(Self::from_forest(&all, &mut forest))
    }

    /// The equivalence relation generated by the pair set `∼₁ \ ∼₂`.
    ///
    /// Diagonal pairs are always removed by the difference and come back only
    /// through reflexive closure.
    pub fn difference_generated(&self, other: &Self) -> Result<Self> {
        self.require_same_ambient(other)?;
        let all: Vec<Endpoint> = self.ambient().cloned().collect();
        let mut forest = UnionFind::new(all.len());
        for block in &self.blocks {
            for (i, x) in block.iter().enumerate() {
                for y in &block[i + 1..] {
                    if !other.related(x, y) {
                        forest.union(
                            all.binary_search(x).expect("same ambient"),
                            all.binary_search(y).expect("same ambient"),
                        );
                    }
                }
            }
        }
        Ok(Self::from_forest(&all, &mut forest))
    }

    /// Whether every block of `self` lies inside some block of `coarse`.
    pub fn is_refinement(&self, coarse: &Self) -> Result<bool> {
        Ok(self.first_unrefined_block(coarse)?.is_none())
    }

    /// Refinement with at least one block of `coarse` split.
    pub fn is_strict_refinement(&self, coarse: &Self) -> Result<bool> {
        Ok(self.is_refinement(coarse)? && self.blocks.len() > coarse.blocks.len())
    }

    /// The first block of `self` that straddles several blocks of `coarse`.
    pub(crate) fn first_unrefined_block(&self, coarse: &Self) -> Result<Option<&[Endpoint]>> {
        self.require_same_ambient(coarse)?;
        Ok(self
            .blocks
            .iter()
            .find(|block| {
                let j = coarse.block_index(&block[0]).expect("same ambient");
                block[1..].iter().any(|e| coarse.block_index(e) != Some(j))
            })
            .map(Vec::as_slice))
    }

    /// Renames endpoints through `f`, which must be injective on the ambient.
    pub(crate) fn map_endpoints(&self, mut f: impl FnMut(&Endpoint) -> Endpoint) -> Self {
        Self::from_canonical_parts(
            self.blocks
                .iter()
                .map(|b| b.iter().map(&mut f).collect())
                .collect(),
        )
    }
}
