//! Up/down walk operators on the `j`-faces of a link, and their spectra.
//!
//! Walk #1 moves from a face to a contained vertex and then to a face
//! completing that vertex; walk #2 moves from a face to a completing vertex
//! and then to a face containing it. Composed the other way around, both
//! walks collapse to the non-lazy random walk on the link's underlying
//! graph. The mixed face walk averages the two.

use nalgebra::DMatrix;
use num::{One, Zero};

use crate::complex::SimplicialComplex;
use crate::error::HdxError;
use crate::face::Face;
use crate::ratio::{self, Ratio};
use crate::Result;

/// Row-stochastic rational matrix.
pub type WalkMatrix = Vec<Vec<Ratio>>;

/// The walk operators of a link `X_sigma` at face dimension `j`, with the
/// induced face distribution as reference measure.
#[derive(Debug, Clone)]
pub struct WalkOperators {
    pub base: Face,
    pub j: i32,
    /// The `j`-faces of the link, canonical order (walk state space).
    pub faces: Vec<Face>,
    /// The vertices (0-faces) of the link.
    pub vertices: Vec<Face>,
    /// Stationary distribution `Q_j` aligned with `faces`.
    pub stationary: Vec<Ratio>,
    /// Face walk #1 (`B_1 A_1`): down to a contained vertex, up to a
    /// completing face.
    pub face_walk_1: WalkMatrix,
    /// Face walk #2 (`B_2 A_2`): out to a completing vertex, back to a
    /// containing face.
    pub face_walk_2: WalkMatrix,
    /// Vertex walk `A_1 B_1`.
    pub vertex_walk_1: WalkMatrix,
    /// Vertex walk `A_2 B_2` (entrywise equal to `A_1 B_1`).
    pub vertex_walk_2: WalkMatrix,
    /// The mixed face walk `(B_1 A_1 + B_2 A_2) / 2`.
    pub mixed: WalkMatrix,
}

/// Builds the walk operators for the link of `sigma` at face dimension
/// `j = k - l`. Requires `0 <= j <= dim(X_sigma) - 1`.
pub fn build_walk_operators(
    complex: &SimplicialComplex,
    sigma: &Face,
    j: i32,
) -> Result<WalkOperators> {
    let link = complex.link(sigma)?;
    let y = &link.complex;
    if j < 0 || j > y.dim() - 1 {
        return Err(HdxError::DimensionOutOfRange {
            found: j,
            min: 0,
            max: y.dim() - 1,
            context: "walk operator face dimension",
        });
    }
    let faces: Vec<Face> = y.faces(j).to_vec();
    let vertices: Vec<Face> = y.faces(0).to_vec();
    let q0 = y.face_distribution(0)?;
    let qj = y.face_distribution(j)?;
    let qj1 = y.face_distribution(j + 1)?;

    let nf = faces.len();
    let nv = vertices.len();
    let face_pos: std::collections::HashMap<&Face, usize> =
        faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let vert_pos: std::collections::HashMap<u32, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, f)| (f.vertices()[0], i))
        .collect();

    // Down step of walk #1: face -> uniformly random contained vertex.
    let mut down = vec![vec![Ratio::zero(); nv]; nf];
    let uniform = Ratio::new(1.into(), ((j + 1) as i64).into());
    for (fi, face) in faces.iter().enumerate() {
        for v in face.vertices() {
            down[fi][vert_pos[v]] = uniform.clone();
        }
    }

    // Up step of walk #1: vertex u -> face t' with u + t' a (j+1)-face,
    // with probability Q_{j+1}(u + t') / ((j+2) Q_0(u)).
    let mut up_complete = vec![vec![Ratio::zero(); nf]; nv];
    // Out step of walk #2: face t -> completing vertex u, probability
    // Q_{j+1}(t + u) / ((j+2) Q_j(t)).
    let mut complete = vec![vec![Ratio::zero(); nv]; nf];
    let j2 = ratio::int((j + 2) as i64);
    for (rho, q) in qj1.iter() {
        for v in rho.vertices() {
            let rest = rho.difference(&Face::new(vec![*v]).unwrap());
            let fi = face_pos[&rest];
            let vi = vert_pos[v];
            let q0v = q0.prob(&vertices[vi]).expect("link vertex weight");
            up_complete[vi][fi] += q / (&j2 * q0v);
            let qjr = qj.prob(&rest).expect("link face weight");
            complete[fi][vi] += q / (&j2 * qjr);
        }
    }

    // Back step of walk #2: vertex u -> face t containing u, probability
    // Q_j(t) / ((j+1) Q_0(u)).
    let mut contain = vec![vec![Ratio::zero(); nf]; nv];
    let j1 = ratio::int((j + 1) as i64);
    for (fi, face) in faces.iter().enumerate() {
        let qf = qj.prob(face).expect("link face weight");
        for v in face.vertices() {
            let vi = vert_pos[v];
            let q0v = q0.prob(&vertices[vi]).expect("link vertex weight");
            contain[vi][fi] = qf / (&j1 * q0v);
        }
    }

    let face_walk_1 = mat_mul(&down, &up_complete);
    let face_walk_2 = mat_mul(&complete, &contain);
    let vertex_walk_1 = mat_mul(&up_complete, &down);
    let vertex_walk_2 = mat_mul(&contain, &complete);
    let mixed = mat_avg(&face_walk_1, &face_walk_2);

    let stationary: Vec<Ratio> = faces
        .iter()
        .map(|f| qj.prob(f).expect("stationary weight").clone())
        .collect();

    // The mixed walk is reversible with respect to Q_j; the eigensolver
    // relies on this symmetry.
    for a in 0..nf {
        for b in (a + 1)..nf {
            debug_assert_eq!(
                &stationary[a] * &mixed[a][b],
                &stationary[b] * &mixed[b][a],
                "mixed walk must be reversible"
            );
        }
    }

    Ok(WalkOperators {
        base: sigma.clone(),
        j,
        faces,
        vertices,
        stationary,
        face_walk_1,
        face_walk_2,
        vertex_walk_1,
        vertex_walk_2,
        mixed,
    })
}

impl WalkOperators {
    /// Second-largest eigenvalue of the mixed face walk.
    pub fn lambda2_mixed(&self) -> f64 {
        let n = self.faces.len();
        let sqrt_q: Vec<f64> = self
            .stationary
            .iter()
            .map(|q| ratio::to_f64(q).sqrt())
            .collect();
        let mut s = DMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                s[(a, b)] = ratio::to_f64(&self.mixed[a][b]) * sqrt_q[a] / sqrt_q[b];
            }
        }
        // Symmetric by reversibility; average away float noise.
        let s = (&s + s.transpose()) * 0.5;
        let mut vals: Vec<f64> = s.symmetric_eigen().eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals[1]
    }

    /// Eigenvalues (complex, as `(re, im)` sorted pairs) of a walk matrix.
    pub fn spectrum(matrix: &WalkMatrix) -> Vec<(f64, f64)> {
        let n = matrix.len();
        let mut m = DMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] = ratio::to_f64(&matrix[a][b]);
            }
        }
        let mut vals: Vec<(f64, f64)> = m
            .complex_eigenvalues()
            .iter()
            .map(|c| (c.re, c.im))
            .collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    /// Whether the nonzero spectra of two walk matrices agree within `tol`
    /// (the smaller spectrum is padded with zeros).
    pub fn spectra_match(a: &WalkMatrix, b: &WalkMatrix, tol: f64) -> bool {
        let mut sa = Self::spectrum(a);
        let mut sb = Self::spectrum(b);
        while sa.len() < sb.len() {
            sa.push((0.0, 0.0));
        }
        while sb.len() < sa.len() {
            sb.push((0.0, 0.0));
        }
        sa.sort_by(|x, y| x.partial_cmp(y).unwrap());
        sb.sort_by(|x, y| x.partial_cmp(y).unwrap());
        sa.iter()
            .zip(sb.iter())
            .all(|(x, y)| (x.0 - y.0).abs() <= tol && (x.1 - y.1).abs() <= tol)
    }

    pub fn row_sums_are_one(&self) -> bool {
        let one = Ratio::one();
        [
            &self.face_walk_1,
            &self.face_walk_2,
            &self.vertex_walk_1,
            &self.vertex_walk_2,
            &self.mixed,
        ]
        .iter()
        .all(|m| {
            m.iter()
                .all(|row| row.iter().sum::<Ratio>() == one)
        })
    }
}

fn mat_mul(a: &WalkMatrix, b: &WalkMatrix) -> WalkMatrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Ratio::zero(); cols]; rows];
    for r in 0..rows {
        for m in 0..inner {
            if a[r][m].is_zero() {
                continue;
            }
            for c in 0..cols {
                if !b[m][c].is_zero() {
                    out[r][c] += &a[r][m] * &b[m][c];
                }
            }
        }
    }
    out
}

fn mat_avg(a: &WalkMatrix, b: &WalkMatrix) -> WalkMatrix {
    let half = Ratio::new(1.into(), 2.into());
    a.iter()
        .zip(b.iter())
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb.iter())
                .map(|(x, y)| (x + y) * &half)
                .collect()
        })
        .collect()
}
