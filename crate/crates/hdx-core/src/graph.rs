//! Weighted underlying graphs, their normalized random walk, and the
//! exhaustive subset checks of the Cheeger-style lemma.

use nalgebra::DMatrix;
use num::Zero;

use crate::error::HdxError;
use crate::face::Vertex;
use crate::ratio::{self, Ratio};
use crate::Result;

/// Cap on exhaustive vertex-subset enumeration.
pub const SUBSET_CAP: usize = 20;

/// A weighted graph with vertex measure `P_0` and edge measure `P_1`.
///
/// Invariant (inherited from pure complexes): every vertex lies on an edge
/// and `P_0(u) = (1/2) sum_{e : u in e} P_1(e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    vertex_weights: Vec<Ratio>,
    edges: Vec<(usize, usize)>,
    edge_weights: Vec<Ratio>,
    /// vertex -> [(neighbor, edge index)]
    adjacency: Vec<Vec<(usize, usize)>>,
}

/// A subset violating one of the two expander inequalities.
#[derive(Debug, Clone)]
pub struct CheegerViolation {
    pub subset: Vec<Vertex>,
    pub inequality: CheegerInequality,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheegerInequality {
    /// `||E(S, S-bar)|| >= 2 (1 - lambda) ||S|| ||S-bar||`
    CutLowerBound,
    /// `||E(S, S)|| <= ||S||^2 + lambda ||S||`
    InternalUpperBound,
}

impl WeightedGraph {
    pub fn new(
        vertices: Vec<Vertex>,
        vertex_weights: Vec<Ratio>,
        edges: Vec<(usize, usize)>,
        edge_weights: Vec<Ratio>,
    ) -> Result<Self> {
        if vertices.len() != vertex_weights.len() || edges.len() != edge_weights.len() {
            return Err(HdxError::InvalidInput(
                "mismatched graph weight lengths".into(),
            ));
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (idx, (a, b)) in edges.iter().enumerate() {
            if *a >= vertices.len() || *b >= vertices.len() || a == b {
                return Err(HdxError::InvalidInput(format!(
                    "bad edge ({a},{b}) in graph on {} vertices",
                    vertices.len()
                )));
            }
            adjacency[*a].push((*b, idx));
            adjacency[*b].push((*a, idx));
        }
        Ok(WeightedGraph {
            vertices,
            vertex_weights,
            edges,
            edge_weights,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_weight(&self, i: usize) -> &Ratio {
        &self.vertex_weights[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_weight(&self, i: usize) -> &Ratio {
        &self.edge_weights[i]
    }

    /// Row-stochastic non-lazy walk: `M(u, v) = P_1({u,v}) / (2 P_0(u))`.
    pub fn walk_matrix(&self) -> Vec<Vec<Ratio>> {
        let n = self.vertices.len();
        let mut m = vec![vec![Ratio::zero(); n]; n];
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            let denom = &self.vertex_weights[u] * ratio::int(2);
            for (v, e) in nbrs {
                m[u][*v] = &self.edge_weights[*e] / &denom;
            }
        }
        m
    }

    /// Symmetrized walk operator `D^{1/2} M D^{-1/2}` in doubles; its
    /// spectrum equals the walk spectrum.
    fn symmetrized(&self) -> DMatrix<f64> {
        let n = self.vertices.len();
        let sqrt_w: Vec<f64> = self
            .vertex_weights
            .iter()
            .map(|w| ratio::to_f64(w).sqrt())
            .collect();
        let mut s = DMatrix::zeros(n, n);
        for (idx, (a, b)) in self.edges.iter().enumerate() {
            let w = ratio::to_f64(&self.edge_weights[idx]);
            let val = w / (2.0 * sqrt_w[*a] * sqrt_w[*b]);
            s[(*a, *b)] = val;
            s[(*b, *a)] = val;
        }
        s
    }

    /// All eigenvalues of the normalized adjacency (walk) operator, sorted
    /// descending.
    pub fn walk_spectrum(&self) -> Vec<f64> {
        let eig = self.symmetrized().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    }

    /// Second-largest eigenvalue of the normalized adjacency operator.
    pub fn lambda2(&self) -> f64 {
        let spectrum = self.walk_spectrum();
        if spectrum.len() < 2 {
            // A single-vertex graph cannot arise from a pure complex of
            // dimension >= 1, but fall back to a harmless value.
            return -1.0;
        }
        spectrum[1]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, _) in &self.adjacency[u] {
                if !seen[*v] {
                    seen[*v] = true;
                    stack.push(*v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Measure of vertices in the subset (by bitmask over vertex indices).
    fn subset_weight(&self, mask: u32) -> Ratio {
        let mut acc = Ratio::zero();
        for i in 0..self.vertices.len() {
            if mask & (1 << i) != 0 {
                acc += &self.vertex_weights[i];
            }
        }
        acc
    }

    /// Checks both inequalities of the expander-mixing lemma for every vertex
    /// subset, exhaustively. Rational edge/vertex measures are compared
    /// against the real bound within `tol`.
    pub fn cheeger_check(&self, lambda: f64, tol: f64) -> Result<Vec<CheegerViolation>> {
        let n = self.vertices.len();
        if n > SUBSET_CAP {
            return Err(HdxError::SubsetCapExceeded(n, SUBSET_CAP));
        }
        let mut violations = Vec::new();
        for mask in 0u32..(1u32 << n) {
            let s_weight = ratio::to_f64(&self.subset_weight(mask));
            let sbar_weight = 1.0 - s_weight;
            let mut cut = Ratio::zero();
            let mut internal = Ratio::zero();
            for (idx, (a, b)) in self.edges.iter().enumerate() {
                let a_in = mask & (1 << *a) != 0;
                let b_in = mask & (1 << *b) != 0;
                if a_in && b_in {
                    internal += &self.edge_weights[idx];
                } else if a_in || b_in {
                    cut += &self.edge_weights[idx];
                }
            }
            let subset: Vec<Vertex> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.vertices[i])
                .collect();

            let cut_f = ratio::to_f64(&cut);
            let cut_bound = 2.0 * (1.0 - lambda) * s_weight * sbar_weight;
            if cut_f < cut_bound - tol {
                violations.push(CheegerViolation {
                    subset: subset.clone(),
                    inequality: CheegerInequality::CutLowerBound,
                    lhs: cut_f,
                    rhs: cut_bound,
                });
            }

            let internal_f = ratio::to_f64(&internal);
            let internal_bound = s_weight * s_weight + lambda * s_weight;
            if internal_f > internal_bound + tol {
                violations.push(CheegerViolation {
                    subset,
                    inequality: CheegerInequality::InternalUpperBound,
                    lhs: internal_f,
                    rhs: internal_bound,
                });
            }
        }
        Ok(violations)
    }
}
