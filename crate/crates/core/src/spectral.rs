//! The normalized Laplacian `Lf(x) = (1/d(x)) Σ_{y~x} (f(x) - f(y))`, its
//! degree-weighted inner product, and a dense eigensolver.
//!
//! Eigenvalues are computed on the symmetric form
//! `S = I - D^{-1/2} A D^{-1/2}`, which is similar to `L` via
//! `L = D^{-1/2} S D^{1/2}`. Eigenvectors `u` of `S` map back to
//! eigenfunctions `f = D^{-1/2} u` of `L`, and an orthonormal `u` gives
//! `<f, f> = 1` in the degree inner product.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::SpectralError;
use crate::graph::Graph;

/// Default threshold on the off-diagonal Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-12;
/// Sweep cap for the Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are treated as one value with multiplicity.
pub const MULTIPLICITY_TOL: f64 = 1e-8;

/// A real value per vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexFunction(pub Vec<f64>);

impl VertexFunction {
    pub fn zeros(n: usize) -> Self {
        VertexFunction(vec![0.0; n])
    }

    pub fn constant(n: usize, c: f64) -> Self {
        VertexFunction(vec![c; n])
    }

    /// `1_S`, the indicator of a vertex set.
    pub fn indicator<I: IntoIterator<Item = usize>>(n: usize, vs: I) -> Self {
        let mut f = Self::zeros(n);
        for v in vs {
            f.0[v] = 1.0;
        }
        f
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    /// Vertices where the function is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != 0.0).collect()
    }

    pub fn scaled(&self, c: f64) -> Self {
        VertexFunction(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: f64, other: &VertexFunction) -> Self {
        VertexFunction(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Index<usize> for VertexFunction {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for VertexFunction {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl From<Vec<f64>> for VertexFunction {
    fn from(v: Vec<f64>) -> Self {
        VertexFunction(v)
    }
}

fn check_degrees(g: &Graph) -> Result<(), SpectralError> {
    match g.isolated_vertex() {
        Some(v) => Err(SpectralError::IsolatedVertex(v)),
        None => Ok(()),
    }
}

fn check_dim(g: &Graph, f: &VertexFunction) -> Result<(), SpectralError> {
    if f.len() == g.n() {
        Ok(())
    } else {
        Err(SpectralError::DimensionMismatch {
            expected: g.n(),
            got: f.len(),
        })
    }
}

pub fn apply_laplacian(g: &Graph, f: &VertexFunction) -> Result<VertexFunction, SpectralError> {
    check_degrees(g)?;
    check_dim(g, f)?;
    let out = (0..g.n())
        .map(|x| {
            let nbrs = g.neighbors(x);
            let sum: f64 = nbrs.iter().map(|y| f[x] - f[y]).sum();
            sum / nbrs.len() as f64
        })
        .collect();
    Ok(VertexFunction(out))
}

/// `<f, h> = Σ_x f(x) h(x) d(x)`.
pub fn degree_inner_product(
    g: &Graph,
    f: &VertexFunction,
    h: &VertexFunction,
) -> Result<f64, SpectralError> {
    check_degrees(g)?;
    check_dim(g, f)?;
    check_dim(g, h)?;
    Ok((0..g.n()).map(|x| f[x] * h[x] * g.degree(x) as f64).sum())
}

/// `<Lf, f> / <f, f>`; a lower bound on the largest eigenvalue for any `f != 0`.
pub fn rayleigh_quotient(g: &Graph, f: &VertexFunction) -> Result<f64, SpectralError> {
    check_degrees(g)?;
    check_dim(g, f)?;
    if f.is_zero() {
        return Err(SpectralError::ZeroFunction);
    }
    let lf = apply_laplacian(g, f)?;
    Ok(degree_inner_product(g, &lf, f)? / degree_inner_product(g, f, f)?)
}

/// True iff `max_x |Lf(x) - λ f(x)| <= tol`.
pub fn verify_eigenpair(
    g: &Graph,
    lambda: f64,
    f: &VertexFunction,
    tol: f64,
) -> Result<bool, SpectralError> {
    Ok(eigen_residual(g, lambda, f)? <= tol)
}

/// `max_x |Lf(x) - λ f(x)|`.
pub fn eigen_residual(g: &Graph, lambda: f64, f: &VertexFunction) -> Result<f64, SpectralError> {
    check_dim(g, f)?;
    if f.is_zero() {
        return Err(SpectralError::ZeroFunction);
    }
    let lf = apply_laplacian(g, f)?;
    Ok((0..g.n()).fold(0.0, |m, x| m.max((lf[x] - lambda * f[x]).abs())))
}

/// Dense symmetric matrix in row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds from rows; fails unless the input is square and exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectralError> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SpectralError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(SpectralError::NotSymmetric(i, j));
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self[(i, j)] * self[(i, j)];
                }
            }
        }
        s.sqrt()
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SymMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// `S = I - D^{-1/2} A D^{-1/2}`.
pub fn symmetric_form(g: &Graph) -> Result<SymMatrix, SpectralError> {
    check_degrees(g)?;
    let n = g.n();
    let inv_sqrt: Vec<f64> = (0..n).map(|x| 1.0 / (g.degree(x) as f64).sqrt()).collect();
    let mut s = SymMatrix::identity(n);
    for (x, y) in g.edges() {
        let w = -inv_sqrt[x] * inv_sqrt[y];
        s[(x, y)] = w;
        s[(y, x)] = w;
    }
    Ok(s)
}

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues and the
/// matching orthonormal eigenvectors (`vectors[k]` belongs to `values[k]`).
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Cyclic Jacobi rotations with a threshold on the first sweeps.
///
/// Stops once the off-diagonal Frobenius norm is below `tol`.
pub fn jacobi_eigensolve(s: &SymMatrix, tol: f64) -> Result<SymEigen, SpectralError> {
    let n = s.n();
    let mut a = s.clone();
    let mut v = SymMatrix::identity(n);
    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal_norm();
        if off < tol || n < 2 {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(SpectralError::NonConvergence {
                sweeps,
                off_norm: off,
            });
        }
        // Skip small entries early on; rotate everything later.
        let threshold = if sweeps < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= threshold || apq == 0.0 {
                    continue;
                }
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&k| a[(k, k)]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();
    Ok(SymEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Zeroes `a[p][q]` by a plane rotation, accumulating it into `v`.
fn rotate(a: &mut SymMatrix, v: &mut SymMatrix, p: usize, q: usize) {
    let n = a.n();
    let apq = a[(p, q)];
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r != p && r != q {
            let arp = a[(r, p)];
            let arq = a[(r, q)];
            let new_rp = arp - s * (arq + tau * arp);
            let new_rq = arq + s * (arp - tau * arq);
            a[(r, p)] = new_rp;
            a[(p, r)] = new_rp;
            a[(r, q)] = new_rq;
            a[(q, r)] = new_rq;
        }
    }
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp - s * (vrq + tau * vrp);
        v[(r, q)] = vrq + s * (vrp - tau * vrq);
    }
}

/// Spectrum of the normalized Laplacian.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// `λ_1 <= ... <= λ_n`.
    pub eigenvalues: Vec<f64>,
    /// Eigenfunctions of `L`, unit length in the degree inner product.
    pub eigenvectors: Vec<VertexFunction>,
    /// Per pair `max_x |Lf(x) - λ f(x)|`.
    pub residuals: Vec<f64>,
    pub components: usize,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// The largest eigenvalue `λ_n`.
    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is nonempty")
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, &r| m.max(r))
    }

    /// Distinct eigenvalues with multiplicities, grouping values within `tol`
    /// of the first member of each group.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for &x in &self.eigenvalues {
            match groups.last_mut() {
                Some((rep, count)) if (x - *rep).abs() <= tol => *count += 1,
                _ => groups.push((x, 1)),
            }
        }
        groups
    }

    /// Number of eigenvalues within `tol` of `value`.
    pub fn multiplicity(&self, value: f64, tol: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|&&x| (x - value).abs() <= tol)
            .count()
    }

    pub fn record(&self) -> SpectrumRecord {
        SpectrumRecord {
            version: SpectrumRecord::VERSION,
            n: self.n(),
            eigenvalues: self.eigenvalues.clone(),
            residual: self.max_residual(),
            components: self.components,
        }
    }
}

/// Serialized form of a [`Spectrum`]. Eigenvalues are written with shortest
/// round-trip decimal precision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub version: u32,
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    pub residual: f64,
    pub components: usize,
}

impl SpectrumRecord {
    pub const VERSION: u32 = 1;
}

pub fn spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    let s = symmetric_form(g)?;
    let eig = jacobi_eigensolve(&s, JACOBI_TOL)?;
    let inv_sqrt: Vec<f64> = (0..g.n())
        .map(|x| 1.0 / (g.degree(x) as f64).sqrt())
        .collect();
    let eigenvectors: Vec<VertexFunction> = eig
        .vectors
        .iter()
        .map(|u| VertexFunction(u.iter().zip(&inv_sqrt).map(|(a, b)| a * b).collect()))
        .collect();
    let residuals = eig
        .values
        .iter()
        .zip(&eigenvectors)
        .map(|(&l, f)| eigen_residual(g, l, f))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Spectrum {
        eigenvalues: eig.values,
        eigenvectors,
        residuals,
        components: g.connected_components().len(),
    })
}

/// Largest eigenvalue only; same computation as [`spectrum`].
pub fn lambda_max(g: &Graph) -> Result<f64, SpectralError> {
    let s = symmetric_form(g)?;
    let eig = jacobi_eigensolve(&s, JACOBI_TOL)?;
    Ok(*eig.values.last().expect("n >= 1"))
}
