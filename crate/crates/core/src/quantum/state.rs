use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Normalisation tolerance of a pure state.
pub const STATE_TOL: f64 = 1e-12;

/// Coefficients at or below this count as zero when computing Schmidt rank.
pub const SCHMIDT_RANK_TOL: f64 = 1e-10;

/// A normalised vector on a product of subsystems, row-major in `dims`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidState(format!("bad subsystem dimensions {dims:?}")));
        }
        let len: usize = dims.iter().product();
        if amplitudes.len() != len {
            return Err(Error::InvalidState(format!(
                "dimensions {dims:?} need {len} amplitudes, found {}",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm}, expected 1")));
        }
        Ok(Self { dims, amplitudes })
    }

    pub fn from_real(dims: Vec<usize>, amplitudes: &[f64]) -> Result<Self> {
        Self::new(dims, amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Rescales `amplitudes` to unit norm first.
    pub fn normalized(dims: Vec<usize>, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("zero vector".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(dims, amplitudes)
    }

    /// Computational basis state `|index>`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let len: usize = dims.iter().product();
        if index >= len {
            return Err(Error::InvalidState(format!("basis index {index} >= {len}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    /// `(|00> + |11>) / sqrt 2`.
    pub fn epr() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(vec![2, 2], &[r, 0.0, 0.0, r]).expect("normalised")
    }

    /// Haar-distributed state from normalised complex Gaussians.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> Self {
        let len: usize = dims.iter().product();
        let amps = (0..len)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::normalized(dims, amps).expect("non-zero Gaussian vector")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        PureState { dims, amplitudes }
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtDecomposition {
    /// Non-increasing, squares summing to one.
    pub coefficients: Vec<f64>,
    /// Orthonormal vectors on the first group, one per coefficient.
    pub left: Vec<Vec<Complex64>>,
    /// Orthonormal vectors on the second group, one per coefficient.
    pub right: Vec<Vec<Complex64>>,
    left_dims: Vec<usize>,
    right_dims: Vec<usize>,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&c| c > SCHMIDT_RANK_TOL).count()
    }

    /// `sum_i c_i |l_i> |r_i>` in the order (first group, second group).
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let dl: usize = self.left_dims.iter().product();
        let dr: usize = self.right_dims.iter().product();
        let mut out = vec![Complex64::new(0.0, 0.0); dl * dr];
        for ((c, l), r) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            for i in 0..dl {
                for j in 0..dr {
                    out[i * dr + j] += l[i] * r[j] * *c;
                }
            }
        }
        out
    }
}

/// Reorders subsystems of a row-major vector so that `order[k]` becomes axis `k`.
pub(crate) fn permute_axes(dims: &[usize], amps: &[Complex64], order: &[usize]) -> Vec<Complex64> {
    let new_dims: Vec<usize> = order.iter().map(|&k| dims[k]).collect();
    let mut old_strides = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        old_strides[k] = old_strides[k + 1] * dims[k + 1];
    }
    let strides: Vec<usize> = order.iter().map(|&k| old_strides[k]).collect();
    let mut out = Vec::with_capacity(amps.len());
    let mut idx = vec![0usize; new_dims.len()];
    for _ in 0..amps.len() {
        let old: usize = idx.iter().zip(&strides).map(|(i, s)| i * s).sum();
        out.push(amps[old]);
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < new_dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    out
}

/// Schmidt decomposition across `first | rest`, where `first` lists subsystem
/// indices of the first group (kept in the given order).
pub fn schmidt_decomposition(state: &PureState, first: &[usize]) -> Result<SchmidtDecomposition> {
    let n = state.dims.len();
    if first.is_empty() || first.len() >= n {
        return Err(Error::InvalidParameter("both sides of a bipartition must be non-empty".into()));
    }
    let mut seen = vec![false; n];
    for &k in first {
        if k >= n || std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidParameter(format!("bad subsystem index {k} in bipartition")));
        }
    }
    let second: Vec<usize> = (0..n).filter(|k| !seen[*k]).collect();
    let order: Vec<usize> = first.iter().chain(&second).copied().collect();
    let amps = permute_axes(&state.dims, &state.amplitudes, &order);
    let left_dims: Vec<usize> = first.iter().map(|&k| state.dims[k]).collect();
    let right_dims: Vec<usize> = second.iter().map(|&k| state.dims[k]).collect();
    let dl: usize = left_dims.iter().product();
    let dr: usize = right_dims.iter().product();
    let m = DMatrix::from_row_slice(dl, dr, &amps);
    let svd = m.svd(true, true);
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let coefficients = idx.iter().map(|&i| svd.singular_values[i]).collect();
    let left = idx.iter().map(|&i| u.column(i).iter().copied().collect()).collect();
    let right = idx.iter().map(|&i| v_t.row(i).iter().copied().collect()).collect();
    Ok(SchmidtDecomposition {
        coefficients,
        left,
        right,
        left_dims,
        right_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn rejects_unnormalised() {
        assert!(PureState::from_real(vec![2], &[1.0, 1.0]).is_err());
        assert!(PureState::from_real(vec![2, 2], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn epr_coefficients() {
        let s = schmidt_decomposition(&PureState::epr(), &[0]).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.coefficients[0] - r).abs() < 1e-12 && (s.coefficients[1] - r).abs() < 1e-12);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn product_state_has_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = PureState::random(&mut rng, vec![2]).tensor(&PureState::random(&mut rng, vec![2, 2]));
        let s = schmidt_decomposition(&p, &[0]).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-10);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let st = PureState::random(&mut rng, vec![2, 3, 2]);
            let s = schmidt_decomposition(&st, &[0, 2]).unwrap();
            let sq: f64 = s.coefficients.iter().map(|c| c * c).sum();
            assert!((sq - 1.0).abs() < 1e-10);
            assert!(s.coefficients.windows(2).all(|w| w[0] >= w[1]));
            let back = s.reconstruct();
            let want = permute_axes(st.dims(), st.amplitudes(), &[0, 2, 1]);
            assert!(dist(&back, &want) < 1e-10);
        }
    }

    #[test]
    fn empty_side_is_rejected() {
        assert!(schmidt_decomposition(&PureState::epr(), &[]).is_err());
        assert!(schmidt_decomposition(&PureState::epr(), &[0, 1]).is_err());
    }

    #[test]
    fn permute_axes_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let st = PureState::random(&mut rng, vec![2, 3, 4]);
        let p = permute_axes(st.dims(), st.amplitudes(), &[2, 0, 1]);
        let back = permute_axes(&[4, 2, 3], &p, &[1, 2, 0]);
        assert!(dist(&back, st.amplitudes()) == 0.0);
    }
}
