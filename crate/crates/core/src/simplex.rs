//! Abstract simplices as strictly increasing label sequences.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::label::VertexLabel;

/// A simplex stored in canonical (sorted, duplicate-free) vertex order.
/// The empty simplex has dimension -1 and acts as the identity for joins.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<VertexLabel>);

impl Simplex {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts the vertices; fails if any vertex is repeated.
    pub fn new<I: IntoIterator<Item = VertexLabel>>(vertices: I) -> Result<Self> {
        let mut v: Vec<VertexLabel> = vertices.into_iter().collect();
        v.sort();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertexInFacet(v.iter().join(" ")));
        }
        Ok(Self(v))
    }

    pub(crate) fn from_sorted(v: Vec<VertexLabel>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// 0-based position of `v` in sorted order.
    pub fn position(&self, v: &VertexLabel) -> Option<usize> {
        self.0.binary_search(v).ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        // both sorted: merge walk
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(v))
    }

    /// The face obtained by deleting the vertex at sorted position `i`.
    pub fn omit(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// Vertices of `self` not in `other`.
    pub fn minus(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().filter(|v| !other.contains(v)).cloned().collect())
    }

    /// All faces with exactly `size` vertices, in lexicographic order.
    pub fn faces_of_size(&self, size: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().cloned().combinations(size).map(Simplex)
    }

    pub fn join(&self, other: &Simplex) -> Result<Simplex> {
        if let Some(v) = self.0.iter().find(|v| other.contains(v)) {
            return Err(Error::VertexCollision(v.to_string()));
        }
        let mut v: Vec<VertexLabel> = self.0.iter().chain(other.0.iter()).cloned().collect();
        v.sort();
        Ok(Simplex(v))
    }

    pub fn with_vertex(&self, apex: &VertexLabel) -> Result<Simplex> {
        self.join(&Simplex(vec![apex.clone()]))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// Parses space-separated labels, e.g. `"u1_1 u2_1 u3_1"`.
impl FromStr for Simplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Simplex::new(s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>()?)
    }
}

/// Serializes as the space-separated label string.
impl serde::Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses an ordered label sequence without sorting it.
pub fn parse_ordered(s: &str) -> Result<Vec<VertexLabel>> {
    s.split_whitespace().map(str::parse).collect()
}
