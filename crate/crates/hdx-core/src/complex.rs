//! Pure weighted simplicial complexes, face distributions, links, and the
//! outside neighborhoods `Y_sigma^k`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num::{One, Signed, Zero};

use crate::error::HdxError;
use crate::face::{Face, Vertex};
use crate::ratio::{self, Ratio};
use crate::Result;

/// Exact probability distribution over the `k`-faces of a complex.
///
/// Induced from the top-face distribution: select a `d`-face by `P_d`, then a
/// uniformly random `(k+1)`-subset of its vertices. `P_{-1}(emptyset) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceDistribution {
    k: i32,
    probs: BTreeMap<Face, Ratio>,
}

impl FaceDistribution {
    pub fn dim(&self) -> i32 {
        self.k
    }

    pub fn prob(&self, face: &Face) -> Option<&Ratio> {
        self.probs.get(face)
    }

    /// Faces and probabilities in canonical (sorted-face) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Face, &Ratio)> {
        self.probs.iter()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> Ratio {
        self.probs.values().sum()
    }
}

/// A pure weighted `d`-dimensional simplicial complex.
///
/// Faces are stored per dimension, including `X(-1) = {emptyset}`. The top
/// dimension carries strictly positive rational weights summing to one, and
/// every induced face distribution is precomputed at construction. Complexes
/// are immutable once built and safe to share across threads.
pub struct SimplicialComplex {
    dim: i32,
    /// `faces[k + 1]` lists the `k`-faces in canonical sorted order.
    faces: Vec<Vec<Face>>,
    /// Per-dimension face index for O(1) membership tests.
    index: Vec<HashMap<Face, usize>>,
    /// Top-face weights aligned with `faces[dim + 1]`.
    top_weights: Vec<Ratio>,
    /// `distributions[k + 1]` is `P_k`.
    distributions: Vec<FaceDistribution>,
    /// Lazily built links, keyed by base face.
    link_cache: Mutex<HashMap<Face, Arc<SimplicialComplex>>>,
}

impl SimplicialComplex {
    /// Builds a complex from weighted top faces, materializing the downward
    /// closure and normalizing the weights to sum to one.
    pub fn build(top_faces: Vec<(Face, Ratio)>) -> Result<Self> {
        if top_faces.is_empty() {
            return Err(HdxError::EmptyComplex);
        }
        let card = top_faces[0].0.len();
        if card == 0 {
            return Err(HdxError::EmptyComplex);
        }
        let mut seen: BTreeSet<Face> = BTreeSet::new();
        let mut total = Ratio::zero();
        for (face, weight) in &top_faces {
            if face.len() != card {
                return Err(HdxError::MixedCardinality(card, face.len()));
            }
            if !seen.insert(face.clone()) {
                return Err(HdxError::DuplicateTopFace(face.clone()));
            }
            if !weight.is_positive() {
                return Err(HdxError::NonPositiveWeight(face.clone()));
            }
            total += weight;
        }
        let dim = card as i32 - 1;

        // Downward closure, one sorted set per dimension.
        let mut by_dim: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); card + 1];
        by_dim[0].insert(Face::empty());
        for (face, _) in &top_faces {
            for size in 1..=card {
                for sub in face.subfaces(size) {
                    by_dim[size].insert(sub);
                }
            }
        }
        let faces: Vec<Vec<Face>> = by_dim
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect();
        let index: Vec<HashMap<Face, usize>> = faces
            .iter()
            .map(|fs| {
                fs.iter()
                    .enumerate()
                    .map(|(i, f)| (f.clone(), i))
                    .collect()
            })
            .collect();

        // Normalized top weights, aligned with the sorted top-face list.
        let mut weight_of: BTreeMap<Face, Ratio> = BTreeMap::new();
        for (face, weight) in top_faces {
            weight_of.insert(face, weight / &total);
        }
        let top_weights: Vec<Ratio> = faces[card]
            .iter()
            .map(|f| weight_of.get(f).expect("top face indexed").clone())
            .collect();

        // P_k(tau) = sum_{sigma in X(d), sigma >= tau} P_d(sigma) / C(d+1, k+1).
        let mut distributions: Vec<FaceDistribution> = Vec::with_capacity(card + 1);
        for k in -1..=dim {
            let denom = ratio::binomial(card as u64, (k + 1) as u64);
            let mut probs: BTreeMap<Face, Ratio> = faces[(k + 1) as usize]
                .iter()
                .map(|f| (f.clone(), Ratio::zero()))
                .collect();
            for (top, w) in faces[card].iter().zip(top_weights.iter()) {
                let share = w / Ratio::from_integer(denom.clone());
                for sub in top.subfaces((k + 1) as usize) {
                    *probs.get_mut(&sub).expect("closure face") += &share;
                }
            }
            distributions.push(FaceDistribution { k, probs });
        }

        Ok(SimplicialComplex {
            dim,
            faces,
            index,
            top_weights,
            distributions,
            link_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Complete complex: all `(d+1)`-subsets of `{0, .., n-1}`, uniform weights.
    pub fn complete(n: u32, d: u32) -> Result<Self> {
        if n < d + 1 {
            return Err(HdxError::InvalidInput(format!(
                "complete complex needs n >= d+1, got n={n}, d={d}"
            )));
        }
        let all: Vec<Vertex> = (0..n).collect();
        let whole = Face::new(all)?;
        let tops = whole
            .subfaces((d + 1) as usize)
            .map(|f| (f, Ratio::one()))
            .collect();
        Self::build(tops)
    }

    /// Two triangles sharing the edge `{0,1}`, uniform weights.
    pub fn two_triangles() -> Self {
        Self::build(vec![
            (Face::new(vec![0, 1, 2]).unwrap(), Ratio::one()),
            (Face::new(vec![0, 1, 3]).unwrap(), Ratio::one()),
        ])
        .expect("static complex")
    }

    /// Two triangles sharing the edge `{0,1}` with weights 2:1.
    pub fn two_triangles_weighted() -> Self {
        Self::build(vec![
            (Face::new(vec![0, 1, 2]).unwrap(), ratio::int(2)),
            (Face::new(vec![0, 1, 3]).unwrap(), Ratio::one()),
        ])
        .expect("static complex")
    }

    /// Two triangles glued at the single vertex `0`, uniform weights.
    pub fn bowtie() -> Self {
        Self::build(vec![
            (Face::new(vec![0, 1, 2]).unwrap(), Ratio::one()),
            (Face::new(vec![0, 3, 4]).unwrap(), Ratio::one()),
        ])
        .expect("static complex")
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    /// The `k`-faces in canonical order, `-1 <= k <= d` (empty slice outside).
    pub fn faces(&self, k: i32) -> &[Face] {
        if k < -1 || k > self.dim {
            return &[];
        }
        &self.faces[(k + 1) as usize]
    }

    pub fn contains(&self, face: &Face) -> bool {
        let k = face.dim();
        if k < -1 || k > self.dim {
            return false;
        }
        self.index[(k + 1) as usize].contains_key(face)
    }

    pub fn face_index(&self, face: &Face) -> Option<usize> {
        let k = face.dim();
        if k < -1 || k > self.dim {
            return None;
        }
        self.index[(k + 1) as usize].get(face).copied()
    }

    /// Normalized weight of a top face.
    pub fn top_weight(&self, face: &Face) -> Option<&Ratio> {
        if face.dim() != self.dim {
            return None;
        }
        self.face_index(face).map(|i| &self.top_weights[i])
    }

    /// The induced distribution `P_k`, `-1 <= k <= d`.
    pub fn face_distribution(&self, k: i32) -> Result<&FaceDistribution> {
        if k < -1 || k > self.dim {
            return Err(HdxError::DimensionOutOfRange {
                found: k,
                min: -1,
                max: self.dim,
                context: "face distribution",
            });
        }
        Ok(&self.distributions[(k + 1) as usize])
    }

    /// The link `X_sigma = {tau \ sigma : sigma <= tau in X}` with induced
    /// weights. `link(X, emptyset) = X`. Requires `dim(sigma) <= d - 1`.
    pub fn link(&self, sigma: &Face) -> Result<LinkView> {
        if !self.contains(sigma) {
            return Err(HdxError::NotAFace(sigma.clone()));
        }
        if sigma.dim() > self.dim - 1 {
            return Err(HdxError::DimensionOutOfRange {
                found: sigma.dim(),
                min: -1,
                max: self.dim - 1,
                context: "link base face",
            });
        }
        if let Some(hit) = self.link_cache.lock().unwrap().get(sigma) {
            return Ok(LinkView {
                base: sigma.clone(),
                complex: Arc::clone(hit),
            });
        }
        let tops: Vec<(Face, Ratio)> = self
            .faces(self.dim)
            .iter()
            .zip(self.top_weights.iter())
            .filter(|(top, _)| sigma.is_subset_of(top))
            .map(|(top, w)| (top.difference(sigma), w.clone()))
            .collect();
        let built = Arc::new(Self::build(tops)?);
        let mut cache = self.link_cache.lock().unwrap();
        let entry = cache.entry(sigma.clone()).or_insert(built);
        Ok(LinkView {
            base: sigma.clone(),
            complex: Arc::clone(entry),
        })
    }

    /// The outside pair set `Y_sigma^k`: pairs `(tau, i)` with
    /// `tau in X_sigma(k - l)` and `i` indexing a vertex of `sigma`, each with
    /// probability `P_{X_sigma}(tau) / (l + 1)`, realizing the `k`-face
    /// `(sigma tau)_i`.
    pub fn outside_pairs(&self, sigma: &Face, k: i32) -> Result<OutsidePairSet> {
        if !self.contains(sigma) {
            return Err(HdxError::NotAFace(sigma.clone()));
        }
        let ell = sigma.dim();
        if ell < 0 || k < ell || k > self.dim - 1 {
            return Err(HdxError::DimensionOutOfRange {
                found: k,
                min: ell.max(0),
                max: self.dim - 1,
                context: "outside pairs",
            });
        }
        let link = self.link(sigma)?;
        let link_dist = link.complex.face_distribution(k - ell)?;
        let count = Ratio::from_integer((ell + 1).into());
        let mut pairs = Vec::new();
        for (tau, p) in link_dist.iter() {
            let prob = p / &count;
            for i in 0..=(ell as usize) {
                let removed = sigma.vertices()[i];
                let mut verts: Vec<Vertex> = sigma
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|v| *v != removed)
                    .collect();
                verts.extend_from_slice(tau.vertices());
                let realized = Face::new(verts)?;
                pairs.push(OutsidePair {
                    link_face: tau.clone(),
                    removed_index: i,
                    realized,
                    prob: prob.clone(),
                });
            }
        }
        Ok(OutsidePairSet {
            base: sigma.clone(),
            k,
            pairs,
        })
    }

    /// The weighted underlying graph (vertices with `P_0`, edges with `P_1`).
    pub fn underlying_graph(&self) -> Result<crate::graph::WeightedGraph> {
        if self.dim < 1 {
            return Err(HdxError::DimensionOutOfRange {
                found: self.dim,
                min: 1,
                max: i32::MAX,
                context: "underlying graph",
            });
        }
        let p0 = self.face_distribution(0)?;
        let p1 = self.face_distribution(1)?;
        let vertices: Vec<Vertex> = self.faces(0).iter().map(|f| f.vertices()[0]).collect();
        let vw: Vec<Ratio> = p0.iter().map(|(_, w)| w.clone()).collect();
        let pos: HashMap<Vertex, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i))
            .collect();
        let mut edges = Vec::new();
        let mut ew = Vec::new();
        for (e, w) in p1.iter() {
            let a = pos[&e.vertices()[0]];
            let b = pos[&e.vertices()[1]];
            edges.push((a.min(b), a.max(b)));
            ew.push(w.clone());
        }
        crate::graph::WeightedGraph::new(vertices, vw, edges, ew)
    }

    /// Total number of faces across all dimensions (including the empty face).
    pub fn face_count(&self) -> usize {
        self.faces.iter().map(|f| f.len()).sum()
    }
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            dim: self.dim,
            faces: self.faces.clone(),
            index: self.index.clone(),
            top_weights: self.top_weights.clone(),
            distributions: self.distributions.clone(),
            link_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.faces == other.faces
            && self.top_weights == other.top_weights
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex(d={}, faces per dim {:?})",
            self.dim,
            self.faces.iter().map(|v| v.len()).collect::<Vec<_>>()
        )
    }
}

/// A link `X_sigma` together with its base face.
#[derive(Debug, Clone)]
pub struct LinkView {
    pub base: Face,
    pub complex: Arc<SimplicialComplex>,
}

/// One element of `Y_sigma^k`: a link face, the index of the dropped vertex
/// of `sigma`, the realized `k`-face `(sigma tau)_i`, and its probability.
#[derive(Debug, Clone, PartialEq)]
pub struct OutsidePair {
    pub link_face: Face,
    pub removed_index: usize,
    pub realized: Face,
    pub prob: Ratio,
}

/// The set `Y_sigma^k` with its probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct OutsidePairSet {
    pub base: Face,
    pub k: i32,
    pub pairs: Vec<OutsidePair>,
}

impl OutsidePairSet {
    pub fn total_prob(&self) -> Ratio {
        self.pairs.iter().map(|p| p.prob.clone()).sum()
    }
}
