//! Antisymmetric group-valued cochains, the coboundary operator, weights,
//! distances, localizations, and outside restrictions.

use std::collections::BTreeMap;

use num::{BigUint, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::complex::{FaceDistribution, SimplicialComplex};
use crate::error::HdxError;
use crate::face::{Face, OrderedFace, Parity};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::ratio::Ratio;
use crate::Result;

/// A `k`-cochain: an antisymmetric function on ordered `k`-faces, stored
/// sparsely on canonically ordered faces (zero values omitted).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    k: i32,
    group: FiniteAbelianGroup,
    values: BTreeMap<Face, GroupElement>,
}

impl Cochain {
    pub fn zero(k: i32, group: FiniteAbelianGroup) -> Self {
        Cochain {
            k,
            group,
            values: BTreeMap::new(),
        }
    }

    /// Builds a cochain from values on canonical faces, validating dimension
    /// and membership against the complex. Zero values are dropped.
    pub fn from_values(
        complex: &SimplicialComplex,
        k: i32,
        group: FiniteAbelianGroup,
        values: impl IntoIterator<Item = (Face, GroupElement)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (face, value) in values {
            if face.dim() != k {
                return Err(HdxError::DimensionMismatch {
                    expected: k,
                    found: face.dim(),
                });
            }
            if !complex.contains(&face) {
                return Err(HdxError::NotAFace(face));
            }
            if !value.is_zero() {
                map.insert(face, value);
            }
        }
        Ok(Cochain {
            k,
            group,
            values: map,
        })
    }

    /// Internal constructor for faces already known to be canonical k-faces.
    pub(crate) fn from_trusted(
        k: i32,
        group: FiniteAbelianGroup,
        values: BTreeMap<Face, GroupElement>,
    ) -> Self {
        Cochain { k, group, values }
    }

    pub fn dim(&self) -> i32 {
        self.k
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn support(&self) -> impl Iterator<Item = &Face> {
        self.values.keys()
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn supp_contains(&self, face: &Face) -> bool {
        self.values.contains_key(face)
    }

    /// Value on a canonical face (zero when absent). No membership check.
    pub fn value_on_canonical(&self, face: &Face) -> GroupElement {
        self.values
            .get(face)
            .copied()
            .unwrap_or_else(|| self.group.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Face, &GroupElement)> {
        self.values.iter()
    }

    /// Evaluates on an arbitrarily ordered face: the stored value times the
    /// sign of the sorting permutation (group inverse for odd parity).
    pub fn evaluate(&self, complex: &SimplicialComplex, face: &OrderedFace) -> Result<GroupElement> {
        if face.dim() != self.k {
            return Err(HdxError::DimensionMismatch {
                expected: self.k,
                found: face.dim(),
            });
        }
        let (canonical, parity) = face.canonicalize();
        if !complex.contains(&canonical) {
            return Err(HdxError::NotAFace(canonical));
        }
        let value = self.value_on_canonical(&canonical);
        Ok(match parity {
            Parity::Even => value,
            Parity::Odd => self.group.neg(value),
        })
    }

    /// The coboundary `delta f(sigma) = sum_i (-1)^i f(sigma_i)`, a
    /// `(k+1)`-cochain. Errors at the top dimension.
    pub fn coboundary(&self, complex: &SimplicialComplex) -> Result<Cochain> {
        if self.k < -1 || self.k > complex.dim() - 1 {
            return Err(HdxError::DimensionOutOfRange {
                found: self.k,
                min: -1,
                max: complex.dim() - 1,
                context: "coboundary",
            });
        }
        let mut values = BTreeMap::new();
        for tau in complex.faces(self.k + 1) {
            let ordered = tau.ordered();
            let mut acc = self.group.zero();
            for i in 0..tau.len() {
                // Deleting index i from an ascending tuple keeps it ascending.
                let sub = ordered.delete(i);
                let (face, _) = sub.canonicalize();
                let v = self.value_on_canonical(&face);
                let signed = if i % 2 == 0 { v } else { self.group.neg(v) };
                acc = self.group.add(acc, signed);
            }
            if !acc.is_zero() {
                values.insert(tau.clone(), acc);
            }
        }
        Ok(Cochain {
            k: self.k + 1,
            group: self.group.clone(),
            values,
        })
    }

    /// `||f|| = Pr_{sigma ~ P_k}[f(sigma) != 0]`, exact.
    pub fn weight(&self, dist: &FaceDistribution) -> Result<Ratio> {
        if dist.dim() != self.k {
            return Err(HdxError::DimensionMismatch {
                expected: self.k,
                found: dist.dim(),
            });
        }
        let mut acc = Ratio::zero();
        for face in self.values.keys() {
            let p = dist
                .prob(face)
                .ok_or_else(|| HdxError::NotAFace(face.clone()))?;
            acc += p;
        }
        Ok(acc)
    }

    /// Pointwise group difference `f - g`.
    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        if self.k != other.k {
            return Err(HdxError::DimensionMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        if self.group != other.group {
            return Err(HdxError::GroupMismatch(
                self.group.spec_string(),
                other.group.spec_string(),
            ));
        }
        let mut values = self.values.clone();
        for (face, v) in &other.values {
            let current = values
                .get(face)
                .copied()
                .unwrap_or_else(|| self.group.zero());
            let next = self.group.sub(current, *v);
            if next.is_zero() {
                values.remove(face);
            } else {
                values.insert(face.clone(), next);
            }
        }
        Ok(Cochain {
            k: self.k,
            group: self.group.clone(),
            values,
        })
    }

    /// `dist(f, g) = ||f - g||`.
    pub fn distance(&self, other: &Cochain, dist: &FaceDistribution) -> Result<Ratio> {
        self.sub(other)?.weight(dist)
    }

    /// The localization `f_sigma(tau) = f(sigma tau)`, a `(k - l - 1)`-cochain
    /// on the link `X_sigma`. `localize(f, emptyset) = f`.
    pub fn localize(&self, complex: &SimplicialComplex, sigma: &Face) -> Result<Cochain> {
        if sigma.is_empty() {
            return Ok(self.clone());
        }
        if !complex.contains(sigma) {
            return Err(HdxError::NotAFace(sigma.clone()));
        }
        let ell = sigma.dim();
        if ell > self.k - 1 {
            return Err(HdxError::DimensionOutOfRange {
                found: ell,
                min: 0,
                max: self.k - 1,
                context: "localization base face",
            });
        }
        let link = complex.link(sigma)?;
        let target = self.k - ell - 1;
        let sigma_ordered = sigma.ordered();
        let mut values = BTreeMap::new();
        for tau in link.complex.faces(target) {
            let joint = sigma_ordered.concat(&tau.ordered())?;
            let v = self.evaluate(complex, &joint)?;
            if !v.is_zero() {
                values.insert(tau.clone(), v);
            }
        }
        Ok(Cochain {
            k: target,
            group: self.group.clone(),
            values,
        })
    }

    /// `||f^sigma||`: the probability under `Y_sigma^k` that the realized
    /// face carries a nonzero value.
    pub fn outside_restriction_weight(
        &self,
        complex: &SimplicialComplex,
        sigma: &Face,
    ) -> Result<Ratio> {
        let pairs = complex.outside_pairs(sigma, self.k)?;
        let mut acc = Ratio::zero();
        for pair in &pairs.pairs {
            if self.supp_contains(&pair.realized) {
                acc += &pair.prob;
            }
        }
        Ok(acc)
    }

    /// Whether `delta f = 0`.
    pub fn is_cocycle(&self, complex: &SimplicialComplex) -> Result<bool> {
        Ok(self.coboundary(complex)?.is_zero())
    }

    /// Whether some `g` of one dimension below has `delta g = f`, by
    /// exhaustive witness search (budget-guarded).
    pub fn is_coboundary(&self, complex: &SimplicialComplex, budget: &Budget) -> Result<bool> {
        for g in enumerate_cochains(complex, self.k - 1, self.group.clone(), budget)? {
            if g.coboundary(complex)? == *self {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `dist(f, B^k) = min_g ||f - delta g||` over all of `C^{k-1}`.
    pub fn dist_to_coboundaries(
        &self,
        complex: &SimplicialComplex,
        budget: &Budget,
    ) -> Result<Ratio> {
        let dist = complex.face_distribution(self.k)?;
        let mut best: Option<Ratio> = None;
        for g in enumerate_cochains(complex, self.k - 1, self.group.clone(), budget)? {
            let d = self.distance(&g.coboundary(complex)?, dist)?;
            if best.as_ref().map_or(true, |b| &d < b) {
                best = Some(d);
            }
        }
        // C^{k-1} always contains the zero cochain, so a minimum exists.
        Ok(best.expect("at least one coboundary"))
    }
}

/// Number of cochains in `C^k`: `|Gamma|^{|X(k)|}`, saturating at `u128::MAX`.
pub fn count_cochains(complex: &SimplicialComplex, k: i32, group: &FiniteAbelianGroup) -> u128 {
    let n = complex.faces(k).len() as u32;
    big_to_u128(&BigUint::from(group.order()).pow(n))
}

/// Number of cochains with support size at most `max_support`.
pub fn count_cochains_bounded(
    complex: &SimplicialComplex,
    k: i32,
    group: &FiniteAbelianGroup,
    max_support: usize,
) -> u128 {
    let n = complex.faces(k).len();
    let nonzero = BigUint::from(group.order() - 1);
    let mut total = BigUint::zero();
    for j in 0..=max_support.min(n) {
        let c = crate::ratio::binomial(n as u64, j as u64)
            .to_biguint()
            .expect("binomial is nonnegative");
        total += c * nonzero.pow(j as u32);
    }
    big_to_u128(&total)
}

fn big_to_u128(b: &BigUint) -> u128 {
    b.to_u128().unwrap_or(u128::MAX)
}

/// Enumerates all of `C^k(X, Gamma)` in deterministic order (mixed-radix
/// counter over the canonical face list, identity first).
pub fn enumerate_cochains(
    complex: &SimplicialComplex,
    k: i32,
    group: FiniteAbelianGroup,
    budget: &Budget,
) -> Result<FullEnumerator> {
    if k < -1 || k > complex.dim() {
        return Err(HdxError::DimensionOutOfRange {
            found: k,
            min: -1,
            max: complex.dim(),
            context: "cochain enumeration",
        });
    }
    budget.check(count_cochains(complex, k, &group))?;
    let faces = complex.faces(k).to_vec();
    Ok(FullEnumerator {
        codes: vec![0; faces.len()],
        faces,
        group,
        k,
        done: false,
    })
}

pub struct FullEnumerator {
    faces: Vec<Face>,
    group: FiniteAbelianGroup,
    k: i32,
    codes: Vec<u64>,
    done: bool,
}

impl Iterator for FullEnumerator {
    type Item = Cochain;

    fn next(&mut self) -> Option<Cochain> {
        if self.done {
            return None;
        }
        let mut values = BTreeMap::new();
        for (face, code) in self.faces.iter().zip(self.codes.iter()) {
            if *code != 0 {
                values.insert(face.clone(), GroupElement(*code));
            }
        }
        let item = Cochain::from_trusted(self.k, self.group.clone(), values);
        // Little-endian increment.
        let order = self.group.order();
        let mut i = 0;
        loop {
            if i == self.codes.len() {
                self.done = true;
                break;
            }
            self.codes[i] += 1;
            if self.codes[i] < order {
                break;
            }
            self.codes[i] = 0;
            i += 1;
        }
        Some(item)
    }
}

/// Enumerates cochains with support size at most `max_support`, in
/// deterministic order: by support size, then support set (lexicographic in
/// face indices), then value codes.
pub fn enumerate_cochains_bounded(
    complex: &SimplicialComplex,
    k: i32,
    group: FiniteAbelianGroup,
    max_support: usize,
    budget: &Budget,
) -> Result<BoundedEnumerator> {
    if k < -1 || k > complex.dim() {
        return Err(HdxError::DimensionOutOfRange {
            found: k,
            min: -1,
            max: complex.dim(),
            context: "cochain enumeration",
        });
    }
    budget.check(count_cochains_bounded(complex, k, &group, max_support))?;
    let faces = complex.faces(k).to_vec();
    let cap = max_support.min(faces.len());
    Ok(BoundedEnumerator {
        faces,
        group,
        k,
        cap,
        size: 0,
        combo: Vec::new(),
        vals: Vec::new(),
        fresh_combo: true,
        done: false,
    })
}

pub struct BoundedEnumerator {
    faces: Vec<Face>,
    group: FiniteAbelianGroup,
    k: i32,
    cap: usize,
    size: usize,
    combo: Vec<usize>,
    vals: Vec<u64>,
    fresh_combo: bool,
    done: bool,
}

impl BoundedEnumerator {
    fn emit(&self) -> Cochain {
        let mut values = BTreeMap::new();
        for (idx, val) in self.combo.iter().zip(self.vals.iter()) {
            values.insert(self.faces[*idx].clone(), GroupElement(*val));
        }
        Cochain::from_trusted(self.k, self.group.clone(), values)
    }

    /// Advances the value counter; true if it wrapped (combo exhausted).
    fn bump_values(&mut self) -> bool {
        let order = self.group.order();
        for v in self.vals.iter_mut() {
            *v += 1;
            if *v < order {
                return false;
            }
            *v = 1;
        }
        true
    }

    /// Advances the support combination; true if the size is exhausted.
    fn bump_combo(&mut self) -> bool {
        let n = self.faces.len();
        let k = self.combo.len();
        if k == 0 {
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if self.combo[i] != i + n - k {
                break;
            }
        }
        self.combo[i] += 1;
        for j in i + 1..k {
            self.combo[j] = self.combo[j - 1] + 1;
        }
        false
    }
}

impl Iterator for BoundedEnumerator {
    type Item = Cochain;

    fn next(&mut self) -> Option<Cochain> {
        if self.done {
            return None;
        }
        if self.fresh_combo {
            self.fresh_combo = false;
            self.combo = (0..self.size).collect();
            self.vals = vec![1; self.size];
        }
        let item = self.emit();
        if self.bump_values() {
            if self.bump_combo() {
                self.size += 1;
                if self.size > self.cap {
                    self.done = true;
                } else {
                    self.fresh_combo = true;
                }
            } else {
                self.vals = vec![1; self.size];
            }
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, ratio};

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn z(m: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(m).unwrap()
    }

    fn single_edge(complex: &SimplicialComplex, a: u32, b: u32) -> Cochain {
        let g = z(2);
        let one = g.element(1).unwrap();
        Cochain::from_values(complex, 1, g, vec![(face(&[a, b]), one)]).unwrap()
    }

    /// All edges at the given vertex, value 1 over Z_2.
    fn vertex_star(complex: &SimplicialComplex, u: u32) -> Cochain {
        let g = z(2);
        let one = g.element(1).unwrap();
        let vals: Vec<(Face, GroupElement)> = complex
            .faces(1)
            .iter()
            .filter(|e| e.contains_vertex(u))
            .map(|e| (e.clone(), one))
            .collect();
        Cochain::from_values(complex, 1, g, vals).unwrap()
    }

    #[test]
    fn evaluate_applies_antisymmetry() {
        // f({1,2}) = 1 over Z_3: evaluate((2,1)) = 2 = -1 mod 3.
        let x = SimplicialComplex::build(vec![(face(&[1, 2]), int(1))]).unwrap();
        let g = z(3);
        let f = Cochain::from_values(&x, 1, g.clone(), vec![(face(&[1, 2]), g.element(1).unwrap())])
            .unwrap();
        let rev = OrderedFace::new(vec![2, 1]).unwrap();
        assert_eq!(f.evaluate(&x, &rev).unwrap(), g.element(2).unwrap());

        // Over Z_2 reversal is invisible.
        let f2 = single_edge(&x, 1, 2);
        assert_eq!(
            f2.evaluate(&x, &rev).unwrap(),
            f2.evaluate(&x, &OrderedFace::new(vec![1, 2]).unwrap()).unwrap()
        );
    }

    #[test]
    fn evaluate_defaults_to_zero_and_checks_membership() {
        let x = SimplicialComplex::complete(4, 2).unwrap();
        let f = single_edge(&x, 0, 1);
        let absent = OrderedFace::new(vec![2, 3]).unwrap();
        assert!(f.evaluate(&x, &absent).unwrap().is_zero());
        let not_face = OrderedFace::new(vec![0, 9]).unwrap();
        assert!(f.evaluate(&x, &not_face).is_err());
    }

    #[test]
    fn coboundary_of_edge_indicator_on_triangle() {
        // Hand-run of the formula: the only triangle contains exactly one
        // supported edge, so its coboundary value is 1.
        let x = SimplicialComplex::complete(3, 2).unwrap();
        let f = single_edge(&x, 0, 1);
        let df = f.coboundary(&x).unwrap();
        assert_eq!(df.support_size(), 1);
        assert!(!df.value_on_canonical(&face(&[0, 1, 2])).is_zero());
    }

    #[test]
    fn vertex_star_is_a_cocycle_and_a_coboundary() {
        // Every triangle contains either zero or two star edges.
        for n in [5u32, 6, 7] {
            let x = SimplicialComplex::complete(n, 2).unwrap();
            let f = vertex_star(&x, 0);
            assert!(f.coboundary(&x).unwrap().is_zero());
            assert!(f.is_cocycle(&x).unwrap());
            // Witness: delta of the indicator cochain of vertex 0.
            let g = z(2);
            let indicator =
                Cochain::from_values(&x, 0, g.clone(), vec![(face(&[0]), g.element(1).unwrap())])
                    .unwrap();
            assert_eq!(indicator.coboundary(&x).unwrap(), f);
            assert!(f.is_coboundary(&x, &Budget::default()).unwrap());
        }
    }

    #[test]
    fn single_edge_on_k4_is_not_a_cocycle() {
        let x = SimplicialComplex::complete(4, 2).unwrap();
        let f = single_edge(&x, 0, 1);
        assert!(!f.is_cocycle(&x).unwrap());
    }

    #[test]
    fn coboundary_squared_vanishes_for_sampled_cochains() {
        // delta delta = 0 on a 3-dimensional complex where C^{k+2} is real.
        let x = SimplicialComplex::complete(5, 3).unwrap();
        let g = z(3);
        for f in enumerate_cochains_bounded(&x, 0, g, 2, &Budget::default()).unwrap() {
            let ddf = f.coboundary(&x).unwrap().coboundary(&x).unwrap();
            assert!(ddf.is_zero(), "delta delta f != 0 for {:?}", f);
        }
    }

    #[test]
    fn coboundary_errors_at_top_dimension() {
        let x = SimplicialComplex::complete(4, 2).unwrap();
        let g = z(2);
        let f = Cochain::zero(2, g);
        assert!(matches!(
            f.coboundary(&x),
            Err(HdxError::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn weights_and_distances() {
        let x = SimplicialComplex::complete(7, 2).unwrap();
        let p1 = x.face_distribution(1).unwrap();

        let zero = Cochain::zero(1, z(2));
        assert_eq!(zero.weight(p1).unwrap(), int(0));

        // Single edge: 1/21 of the 21 uniform edges.
        let f = single_edge(&x, 0, 1);
        assert_eq!(f.weight(p1).unwrap(), ratio(1, 21));

        // Vertex star: (n-1)/C(n,2) = 2/n, enumeration oracle 6/21.
        let star = vertex_star(&x, 0);
        assert_eq!(star.weight(p1).unwrap(), ratio(2, 7));

        // Distances.
        assert_eq!(f.distance(&f, p1).unwrap(), int(0));
        assert_eq!(f.distance(&zero, p1).unwrap(), ratio(1, 21));
        let g2 = single_edge(&x, 2, 3);
        assert_eq!(f.distance(&g2, p1).unwrap(), ratio(2, 21));
    }

    #[test]
    fn localize_star_is_constant_one_on_link() {
        let x = SimplicialComplex::complete(6, 2).unwrap();
        let star = vertex_star(&x, 0);
        let loc = star.localize(&x, &face(&[0])).unwrap();
        assert_eq!(loc.dim(), 0);
        let link = x.link(&face(&[0])).unwrap();
        assert_eq!(loc.support_size(), link.complex.faces(0).len());
    }

    #[test]
    fn localize_empty_face_is_identity() {
        let x = SimplicialComplex::complete(5, 2).unwrap();
        let f = single_edge(&x, 0, 1);
        assert_eq!(f.localize(&x, &Face::empty()).unwrap(), f);
    }

    #[test]
    fn localize_triangle_indicator_to_vertex() {
        // Direct evaluation oracle: 2-cochain supported on {0,1,2} localizes
        // at vertex 0 to the single-edge indicator {1,2} in the K_4 link.
        let x = SimplicialComplex::complete(5, 2).unwrap();
        let g = z(2);
        let f = Cochain::from_values(
            &x,
            2,
            g.clone(),
            vec![(face(&[0, 1, 2]), g.element(1).unwrap())],
        )
        .unwrap();
        let loc = f.localize(&x, &face(&[0])).unwrap();
        assert_eq!(loc.dim(), 1);
        assert_eq!(loc.support_size(), 1);
        assert!(!loc.value_on_canonical(&face(&[1, 2])).is_zero());

        // Out-of-range base.
        assert!(f.localize(&x, &face(&[0, 1, 2])).is_err());
    }

    #[test]
    fn localization_respects_signs_over_z3() {
        // f on {0,1,2} with value 1 (canonical order). Localizing at sigma={1}
        // reads f((1,0,2)) = -1: one inversion.
        let x = SimplicialComplex::complete(3, 2).unwrap();
        let g = z(3);
        let f = Cochain::from_values(
            &x,
            2,
            g.clone(),
            vec![(face(&[0, 1, 2]), g.element(1).unwrap())],
        )
        .unwrap();
        let loc = f.localize(&x, &face(&[1])).unwrap();
        assert_eq!(
            loc.value_on_canonical(&face(&[0, 2])),
            g.element(2).unwrap()
        );
    }

    #[test]
    fn outside_restriction_weights() {
        let x = SimplicialComplex::complete(7, 2).unwrap();

        // Star at u has no edge omitting u.
        let star = vertex_star(&x, 0);
        assert_eq!(
            star.outside_restriction_weight(&x, &face(&[0])).unwrap(),
            int(0)
        );

        // Single edge {0,1}, sigma = {2}: only the pair realizing {0,1}
        // contributes, with probability 1/15 (enumeration oracle: K_6 link).
        let f = single_edge(&x, 0, 1);
        assert_eq!(
            f.outside_restriction_weight(&x, &face(&[2])).unwrap(),
            ratio(1, 15)
        );

        let zero = Cochain::zero(1, z(2));
        assert_eq!(
            zero.outside_restriction_weight(&x, &face(&[2])).unwrap(),
            int(0)
        );
    }

    #[test]
    fn enumeration_counts() {
        let x = SimplicialComplex::complete(3, 2).unwrap(); // 3 edges
        let b = Budget::default();

        let all: Vec<Cochain> = enumerate_cochains(&x, 1, z(2), &b).unwrap().collect();
        assert_eq!(all.len(), 8);
        assert!(all[0].is_zero());

        // Dedup check: all distinct.
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 8);

        let x7 = SimplicialComplex::complete(7, 2).unwrap(); // 21 edges
        let bounded: Vec<Cochain> =
            enumerate_cochains_bounded(&x7, 1, z(2), 1, &b).unwrap().collect();
        assert_eq!(bounded.len(), 22);

        let two_faces = SimplicialComplex::build(vec![
            (face(&[0, 1]), int(1)),
            (face(&[1, 2]), int(1)),
        ])
        .unwrap();
        let z3_all: Vec<Cochain> = enumerate_cochains(&two_faces, 1, z(3), &b).unwrap().collect();
        assert_eq!(z3_all.len(), 9);

        // 1562 including the zero cochain; theorem scans skip the zero
        // cochain and see 1561 candidates.
        assert_eq!(count_cochains_bounded(&x7, 1, &z(2), 3), 1562);
    }

    #[test]
    fn enumeration_budget_refusal() {
        let x = SimplicialComplex::complete(7, 2).unwrap();
        let b = Budget::new(1000);
        match enumerate_cochains(&x, 1, z(2), &b) {
            Err(HdxError::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 1 << 21);
                assert_eq!(budget, 1000);
            }
            other => panic!("expected refusal, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn coboundaries_are_cocycles_exhaustively() {
        // B^k subset of Z^k on the single triangle, both k = 0 and k = 1.
        let x = SimplicialComplex::complete(3, 2).unwrap();
        let b = Budget::default();
        for k in 0..=1 {
            for g in enumerate_cochains(&x, k - 1, z(2), &b).unwrap() {
                let dg = g.coboundary(&x).unwrap();
                if dg.dim() <= x.dim() - 1 {
                    assert!(dg.is_cocycle(&x).unwrap());
                }
            }
        }
    }

    #[test]
    fn dist_to_coboundaries_on_triangle() {
        // Brute-force oracle (hand): B^1 on the single triangle consists of 0
        // and the three 2-edge cuts; a single edge has distance 1/3.
        let x = SimplicialComplex::complete(3, 2).unwrap();
        let f = single_edge(&x, 0, 1);
        assert_eq!(
            f.dist_to_coboundaries(&x, &Budget::default()).unwrap(),
            ratio(1, 3)
        );
    }
}
