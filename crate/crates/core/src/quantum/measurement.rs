use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Tolerance for hermiticity, positivity and completeness.
pub const MEASUREMENT_TOL: f64 = 1e-10;

pub type CMatrix = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A POVM on a product of subsystems with dimensions `dims`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    dims: Vec<usize>,
    elements: Vec<CMatrix>,
}

impl MeasurementSet {
    pub fn new(dims: Vec<usize>, elements: Vec<CMatrix>) -> Result<Self> {
        let d: usize = dims.iter().product();
        if dims.is_empty() || d == 0 {
            return Err(Error::InvalidMeasurement(format!("bad dimensions {dims:?}")));
        }
        if elements.is_empty() {
            return Err(Error::InvalidMeasurement("no elements".into()));
        }
        let mut total = CMatrix::zeros(d, d);
        for (k, m) in elements.iter().enumerate() {
            if m.shape() != (d, d) {
                return Err(Error::InvalidMeasurement(format!(
                    "element {k} has shape {:?}, expected ({d}, {d})",
                    m.shape()
                )));
            }
            let herm = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if herm > MEASUREMENT_TOL {
                return Err(Error::InvalidMeasurement(format!("element {k} is not Hermitian ({herm:e})")));
            }
            let min_eig = m.clone().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
            if min_eig < -MEASUREMENT_TOL {
                return Err(Error::InvalidMeasurement(format!(
                    "element {k} has eigenvalue {min_eig:e} below zero"
                )));
            }
            total += m;
        }
        let gap = (total - CMatrix::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if gap > MEASUREMENT_TOL {
            return Err(Error::InvalidMeasurement(format!(
                "elements sum to identity only within {gap:e}"
            )));
        }
        Ok(Self { dims, elements })
    }

    /// Projective measurement onto an orthonormal basis given as vectors.
    pub fn from_basis(dims: Vec<usize>, basis: &[Vec<Complex64>]) -> Result<Self> {
        let elements = basis
            .iter()
            .map(|v| {
                let col = CMatrix::from_column_slice(v.len(), 1, v);
                &col * col.adjoint()
            })
            .collect();
        Self::new(dims, elements)
    }

    pub fn computational(dims: Vec<usize>) -> Self {
        let d: usize = dims.iter().product();
        let elements = (0..d)
            .map(|i| {
                let mut m = CMatrix::zeros(d, d);
                m[(i, i)] = c(1.0);
                m
            })
            .collect();
        Self { dims, elements }
    }

    /// Qubit basis `{cos(t/2)|0> + e^{i f} sin(t/2)|1>, its orthogonal complement}`.
    pub fn qubit_basis(theta: f64, phi: f64) -> Self {
        let (s, co) = (theta / 2.0).sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        let b0 = vec![c(co), e * s];
        let b1 = vec![-e.conj() * s, c(co)];
        Self::from_basis(vec![2], &[b0, b1]).expect("orthonormal by construction")
    }

    /// Random POVM with `outcomes` elements, `S^{-1/2} G_k^† G_k S^{-1/2}`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>, outcomes: usize) -> Self {
        let d: usize = dims.iter().product();
        let gs: Vec<CMatrix> = (0..outcomes)
            .map(|_| {
                let g = CMatrix::from_fn(d, d, |_, _| {
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                });
                g.adjoint() * g
            })
            .collect();
        let s = gs.iter().fold(CMatrix::zeros(d, d), |acc, g| acc + g);
        let eig = s.symmetric_eigen();
        let inv_sqrt = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| c(1.0 / l.sqrt())));
        let w = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.adjoint();
        let elements = gs
            .iter()
            .map(|g| {
                let m = &w * g * &w;
                // exact hermiticity
                (&m + m.adjoint()) * c(0.5)
            })
            .collect();
        Self::new(dims, elements).expect("valid by construction")
    }

    /// Product measurement; outcome `k1 * n2 + k2`.
    pub fn tensor(&self, other: &MeasurementSet) -> Self {
        let elements = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| a.kronecker(b)))
            .collect();
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        Self { dims, elements }
    }

    /// Groups outcomes by `table[k]`, summing the elements.
    pub fn coarse_grain(&self, table: &[usize], out: usize) -> Result<Self> {
        if table.len() != self.elements.len() || table.iter().any(|&t| t >= out) {
            return Err(Error::InvalidMeasurement("bad coarse-graining table".into()));
        }
        let d = self.dim();
        let mut elements = vec![CMatrix::zeros(d, d); out];
        for (m, &t) in self.elements.iter().zip(table) {
            elements[t] += m;
        }
        Ok(Self {
            dims: self.dims.clone(),
            elements,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }
}
