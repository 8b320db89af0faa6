//! Faces of a simplicial complex: canonical (sorted) and ordered forms.

use std::fmt;

use itertools::Itertools;

use crate::error::HdxError;
use crate::Result;

/// Vertex identifier. Files use nonnegative integers; internal tokens map 1:1.
pub type Vertex = u32;

/// An unordered face, stored canonically as ascending distinct vertex ids.
///
/// The empty face is a valid `Face` of dimension `-1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<Vertex>);

impl Face {
    /// Builds a face from arbitrary-order vertices; rejects repeats.
    pub fn new(vertices: impl Into<Vec<Vertex>>) -> Result<Self> {
        let mut v = vertices.into();
        v.sort_unstable();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(HdxError::RepeatedVertex(w[0]));
            }
        }
        Ok(Face(v))
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Face dimension: `|vertices| - 1`, so the empty face has dimension -1.
    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// Set union; errors if the faces overlap is fine (union dedups).
    pub fn union(&self, other: &Face) -> Face {
        let mut v: Vec<Vertex> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    /// Vertices of `self` not in `other`.
    pub fn difference(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .filter(|v| !other.contains_vertex(**v))
                .copied()
                .collect(),
        )
    }

    /// Adds one vertex; errors if already present.
    pub fn with_vertex(&self, v: Vertex) -> Result<Face> {
        if self.contains_vertex(v) {
            return Err(HdxError::RepeatedVertex(v));
        }
        let mut out = self.0.clone();
        out.push(v);
        out.sort_unstable();
        Ok(Face(out))
    }

    /// All subfaces with `size` vertices, in lexicographic order.
    pub fn subfaces(&self, size: usize) -> impl Iterator<Item = Face> + '_ {
        self.0
            .iter()
            .copied()
            .combinations(size)
            .map(|v| Face(v))
    }

    /// Canonically ordered (ascending) ordered face.
    pub fn ordered(&self) -> OrderedFace {
        OrderedFace(self.0.clone())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parity of the permutation sorting an ordered face into canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn compose(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// An ordered face: a tuple of distinct vertices in arbitrary order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedFace(Vec<Vertex>);

impl OrderedFace {
    pub fn new(vertices: impl Into<Vec<Vertex>>) -> Result<Self> {
        let v = vertices.into();
        let mut sorted = v.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(HdxError::RepeatedVertex(w[0]));
            }
        }
        Ok(OrderedFace(v))
    }

    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Underlying set together with the parity of the sorting permutation.
    pub fn canonicalize(&self) -> (Face, Parity) {
        let mut v = self.0.clone();
        // Insertion sort, counting swaps of adjacent elements.
        let mut swaps = 0usize;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        let parity = if swaps % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        (Face(v), parity)
    }

    /// Concatenation `sigma . tau`; errors if the faces share a vertex.
    pub fn concat(&self, other: &OrderedFace) -> Result<OrderedFace> {
        for v in &other.0 {
            if self.0.contains(v) {
                return Err(HdxError::RepeatedVertex(*v));
            }
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Ok(OrderedFace(v))
    }

    /// Removes the vertex at position `i` (the paper's `sigma_i`).
    pub fn delete(&self, i: usize) -> OrderedFace {
        let mut v = self.0.clone();
        v.remove(i);
        OrderedFace(v)
    }
}

impl fmt::Display for OrderedFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl fmt::Debug for OrderedFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
