//! Coboundary expansion, local spectral expansion, minimality, and heavy
//! faces.

use std::collections::HashSet;

use num::{One, Signed, Zero};

use crate::budget::Budget;
use crate::cochain::{enumerate_cochains, Cochain};
use crate::complex::SimplicialComplex;
use crate::error::HdxError;
use crate::face::Face;
use crate::group::FiniteAbelianGroup;
use crate::ratio::{int, Ratio};
use crate::Result;

/// A coboundary-expansion constant; `Infinite` is the sentinel for the
/// vacuous case where every cochain is a coboundary.
#[derive(Debug, Clone, PartialEq)]
pub enum BetaValue {
    Finite(Ratio),
    Infinite,
}

impl BetaValue {
    /// Clamped to at most 1 (the theorem bounds assume `beta <= 1`).
    pub fn clamped(&self) -> Ratio {
        match self {
            BetaValue::Finite(b) => {
                if b > &Ratio::one() {
                    Ratio::one()
                } else {
                    b.clone()
                }
            }
            BetaValue::Infinite => Ratio::one(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            BetaValue::Finite(b) => b.is_positive(),
            BetaValue::Infinite => true,
        }
    }

    pub fn as_string(&self) -> String {
        match self {
            BetaValue::Finite(b) => b.to_string(),
            BetaValue::Infinite => "inf".to_string(),
        }
    }
}

impl std::fmt::Display for BetaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_string())
    }
}

/// `min_{f not in B^k} ||delta f|| / dist(f, B^k)` by brute force; the
/// `Infinite` sentinel when every `k`-cochain is a coboundary.
pub fn coboundary_expansion(
    complex: &SimplicialComplex,
    group: &FiniteAbelianGroup,
    k: i32,
    budget: &Budget,
) -> Result<BetaValue> {
    if k < 0 || k > complex.dim() - 1 {
        return Err(HdxError::DimensionOutOfRange {
            found: k,
            min: 0,
            max: complex.dim() - 1,
            context: "coboundary expansion",
        });
    }
    let dist_k = complex.face_distribution(k)?;

    let mut coboundaries: Vec<Cochain> = Vec::new();
    let mut seen: HashSet<Cochain> = HashSet::new();
    for g in enumerate_cochains(complex, k - 1, group.clone(), budget)? {
        let dg = g.coboundary(complex)?;
        if seen.insert(dg.clone()) {
            coboundaries.push(dg);
        }
    }

    let mut best: Option<Ratio> = None;
    for f in enumerate_cochains(complex, k, group.clone(), budget)? {
        if seen.contains(&f) {
            continue;
        }
        let df_weight = f
            .coboundary(complex)?
            .weight(complex.face_distribution(k + 1)?)?;
        let mut dist: Option<Ratio> = None;
        for b in &coboundaries {
            let d = f.distance(b, dist_k)?;
            if dist.as_ref().map_or(true, |cur| &d < cur) {
                dist = Some(d);
            }
        }
        let dist = dist.expect("B^k is nonempty");
        let ratio = df_weight / dist;
        if best.as_ref().map_or(true, |cur| &ratio < cur) {
            best = Some(ratio);
        }
    }
    Ok(match best {
        Some(b) => BetaValue::Finite(b),
        None => BetaValue::Infinite,
    })
}

/// Coboundary expansion of one link at one cochain dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBetaRecord {
    pub sigma: Face,
    pub cochain_dim: i32,
    pub beta: BetaValue,
}

/// Spectral data of one link's underlying graph.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkLambdaRecord {
    pub sigma: Face,
    pub lambda2: f64,
    pub connected: bool,
}

/// The expansion constants of a complex: uniform link coboundary expansion
/// (min over links and valid cochain dimensions) and the one-sided local
/// spectral bound (max of second eigenvalues over all links, the empty face
/// included).
#[derive(Debug, Clone)]
pub struct ExpansionConstants {
    pub beta_raw: BetaValue,
    pub beta_clamped: Ratio,
    /// True when the dimension admits no links in range (d < 2).
    pub beta_vacuous: bool,
    pub per_link_beta: Vec<LinkBetaRecord>,
    pub lambda_raw: f64,
    /// `max(0, lambda_raw)`.
    pub lambda: f64,
    pub per_link_lambda: Vec<LinkLambdaRecord>,
}

impl ExpansionConstants {
    /// The uniform beta fed to heavy-face classification and theorem bounds.
    pub fn uniform_beta(&self, clamp: bool) -> BetaValue {
        if clamp {
            BetaValue::Finite(self.beta_clamped.clone())
        } else {
            self.beta_raw.clone()
        }
    }

    /// Per-link beta of one face: min over its recorded cochain dimensions.
    pub fn link_beta(&self, sigma: &Face, clamp: bool) -> Result<BetaValue> {
        let mut best: Option<BetaValue> = None;
        for rec in self.per_link_beta.iter().filter(|r| &r.sigma == sigma) {
            let candidate = rec.beta.clone();
            best = Some(match best {
                None => candidate,
                Some(cur) => min_beta(cur, candidate),
            });
        }
        let raw = best.ok_or_else(|| HdxError::NotAFace(sigma.clone()))?;
        Ok(if clamp {
            BetaValue::Finite(raw.clamped())
        } else {
            raw
        })
    }
}

fn min_beta(a: BetaValue, b: BetaValue) -> BetaValue {
    match (&a, &b) {
        (BetaValue::Infinite, _) => b,
        (_, BetaValue::Infinite) => a,
        (BetaValue::Finite(x), BetaValue::Finite(y)) => {
            if x <= y {
                a
            } else {
                b
            }
        }
    }
}

/// Minimum link coboundary expansion over all `sigma in X(l)`,
/// `0 <= l <= d-2`, and all valid cochain dimensions of each link.
/// Returns the sentinel plus a vacuous flag when `d < 2`.
pub fn min_link_coboundary_expansion(
    complex: &SimplicialComplex,
    group: &FiniteAbelianGroup,
    budget: &Budget,
) -> Result<(BetaValue, Vec<LinkBetaRecord>, bool)> {
    let d = complex.dim();
    let mut records = Vec::new();
    let mut best = BetaValue::Infinite;
    if d < 2 {
        return Ok((best, records, true));
    }
    for ell in 0..=d - 2 {
        for sigma in complex.faces(ell) {
            let link = complex.link(sigma)?;
            for k in 0..=link.complex.dim() - 1 {
                let beta = coboundary_expansion(&link.complex, group, k, budget)?;
                best = min_beta(best, beta.clone());
                records.push(LinkBetaRecord {
                    sigma: sigma.clone(),
                    cochain_dim: k,
                    beta,
                });
            }
        }
    }
    Ok((best, records, false))
}

/// Second eigenvalues of the underlying graphs of all links `X_sigma`,
/// `sigma in X(k)` for `-1 <= k <= d-2` (the empty face included).
/// Disconnected links report `lambda2 = 1` and are flagged.
pub fn local_spectral_lambda(
    complex: &SimplicialComplex,
) -> Result<(f64, f64, Vec<LinkLambdaRecord>)> {
    let d = complex.dim();
    if d < 1 {
        return Err(HdxError::DimensionOutOfRange {
            found: d,
            min: 1,
            max: i32::MAX,
            context: "local spectral expansion",
        });
    }
    let mut records = Vec::new();
    let mut raw = f64::NEG_INFINITY;
    for k in -1..=d - 2 {
        for sigma in complex.faces(k) {
            let link = complex.link(sigma)?;
            let graph = link.complex.underlying_graph()?;
            let connected = graph.is_connected();
            let lambda2 = graph.lambda2();
            raw = raw.max(lambda2);
            records.push(LinkLambdaRecord {
                sigma: sigma.clone(),
                lambda2,
                connected,
            });
        }
    }
    Ok((raw, raw.max(0.0), records))
}

/// Computes the full [`ExpansionConstants`] for a complex and group.
pub fn expansion_constants(
    complex: &SimplicialComplex,
    group: &FiniteAbelianGroup,
    budget: &Budget,
) -> Result<ExpansionConstants> {
    let (beta_raw, per_link_beta, beta_vacuous) =
        min_link_coboundary_expansion(complex, group, budget)?;
    let (lambda_raw, lambda, per_link_lambda) = local_spectral_lambda(complex)?;
    Ok(ExpansionConstants {
        beta_clamped: beta_raw.clamped(),
        beta_raw,
        beta_vacuous,
        per_link_beta,
        lambda_raw,
        lambda,
        per_link_lambda,
    })
}

/// Whether `||f|| <= ||f - delta g||` for every `g` in `C^{k-1}`.
pub fn is_minimal(complex: &SimplicialComplex, f: &Cochain, budget: &Budget) -> Result<bool> {
    let dist = complex.face_distribution(f.dim())?;
    let own = f.weight(dist)?;
    for g in enumerate_cochains(complex, f.dim() - 1, f.group().clone(), budget)? {
        let shifted = f.sub(&g.coboundary(complex)?)?.weight(dist)?;
        if shifted < own {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `f_sigma` is minimal in `X_sigma` for every non-empty face
/// `sigma in X(l)`, `0 <= l <= k-1`.
pub fn is_locally_minimal(
    complex: &SimplicialComplex,
    f: &Cochain,
    budget: &Budget,
) -> Result<bool> {
    for ell in 0..f.dim() {
        for sigma in complex.faces(ell) {
            let localized = f.localize(complex, sigma)?;
            let link = complex.link(sigma)?;
            if !is_minimal(&link.complex, &localized, budget)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The set of heavy `l`-faces of a cochain: `sigma` with
/// `||f_sigma|| > (l+2) beta^{-1} ||f^sigma||`, decided in exact rationals
/// (strict inequality; ties are non-heavy).
#[derive(Debug, Clone, PartialEq)]
pub struct HeavyFaceSet {
    pub level: i32,
    pub faces: Vec<Face>,
    /// `||Heavy_l(f)||` under `P_l`.
    pub weight: Ratio,
    /// `E_{sigma in Heavy}[||f_sigma||]` (zero when empty).
    pub conditional_mean: Ratio,
    /// `E_{sigma in Heavy}[||f_sigma||] * ||Heavy_l(f)||`.
    pub mass: Ratio,
}

/// Classifies the heavy `l`-faces of `f` with a single beta for every face.
pub fn heavy_faces(
    complex: &SimplicialComplex,
    f: &Cochain,
    ell: i32,
    beta: &BetaValue,
) -> Result<HeavyFaceSet> {
    heavy_faces_with(complex, f, ell, |_| Ok(beta.clone()))
}

/// Classifies heavy faces with a per-face beta (the link's own coboundary
/// expansion when the per-link mode is selected).
pub fn heavy_faces_with(
    complex: &SimplicialComplex,
    f: &Cochain,
    ell: i32,
    beta_of: impl Fn(&Face) -> Result<BetaValue>,
) -> Result<HeavyFaceSet> {
    if ell < 0 || ell > f.dim() - 1 {
        return Err(HdxError::DimensionOutOfRange {
            found: ell,
            min: 0,
            max: f.dim() - 1,
            context: "heavy faces",
        });
    }
    let p_ell = complex.face_distribution(ell)?;
    let factor = int((ell + 2) as i64);
    let mut faces = Vec::new();
    let mut weight = Ratio::zero();
    let mut mass = Ratio::zero();
    for sigma in complex.faces(ell) {
        let beta = beta_of(sigma)?;
        if !beta.is_positive() {
            return Err(HdxError::NonPositiveBeta(beta.as_string()));
        }
        let localized_weight = localized_weight(complex, f, sigma)?;
        let outside = f.outside_restriction_weight(complex, sigma)?;
        // ||f_sigma|| > (l+2) beta^{-1} ||f^sigma||, cross-multiplied.
        let heavy = match &beta {
            BetaValue::Finite(b) => &localized_weight * b > &factor * &outside,
            BetaValue::Infinite => localized_weight.is_positive(),
        };
        if heavy {
            let p = p_ell
                .prob(sigma)
                .ok_or_else(|| HdxError::NotAFace(sigma.clone()))?;
            weight += p;
            mass += p * &localized_weight;
            faces.push(sigma.clone());
        }
    }
    let conditional_mean = if weight.is_zero() {
        Ratio::zero()
    } else {
        &mass / &weight
    };
    Ok(HeavyFaceSet {
        level: ell,
        faces,
        weight,
        conditional_mean,
        mass,
    })
}

/// `||f_sigma||` in the link of `sigma` (the weight of the localization).
pub fn localized_weight(complex: &SimplicialComplex, f: &Cochain, sigma: &Face) -> Result<Ratio> {
    let localized = f.localize(complex, sigma)?;
    let link = complex.link(sigma)?;
    let dist = link.complex.face_distribution(localized.dim())?;
    localized.weight(dist)
}
