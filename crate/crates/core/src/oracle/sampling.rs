//! Sample-covariance estimate of Gaussian information terms.
//!
//! Samples are drawn with `ChaCha8Rng::seed_from_u64(seed)` and standard
//! normals from `rand_distr::StandardNormal`, so a given seed reproduces the
//! same estimate on every platform.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::covariance::{gaussian_cmi, CovarianceSystem};
use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 1000;

/// Square-root factor `F` with `F F^T = sigma`, from the symmetric
/// eigendecomposition (negative round-off eigenvalues are zeroed).
fn factor(sigma: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = sigma.clone().symmetric_eigen();
    let roots = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    &eig.eigenvectors * DMatrix::from_diagonal(&roots)
}

/// Unbiased sample covariance of `n_samples` joint draws from `cov`.
pub fn sample_covariance(
    cov: &CovarianceSystem,
    n_samples: usize,
    seed: u64,
) -> Result<CovarianceSystem> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: n_samples,
            min: MIN_SAMPLES,
        });
    }
    let dim = cov.labels().len();
    let f = factor(cov.sigma());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = DVector::<f64>::zeros(dim);
    let mut x = DVector::<f64>::zeros(dim);
    let mut sum = DVector::<f64>::zeros(dim);
    let mut cross = DMatrix::<f64>::zeros(dim, dim);

    for _ in 0..n_samples {
        for v in z.iter_mut() {
            *v = StandardNormal.sample(&mut rng);
        }
        x.gemv(1.0, &f, &z, 0.0);
        sum += &x;
        cross.ger(1.0, &x, &x, 1.0);
    }

    let n = n_samples as f64;
    let mean = sum / n;
    let mut sigma = (cross - &mean * mean.transpose() * n) / (n - 1.0);
    sigma = (&sigma + sigma.transpose()) * 0.5;
    CovarianceSystem::new(cov.labels().to_vec(), sigma)
}

/// Estimate of `I(A; B | C)` from the sample covariance of `n_samples` draws.
pub fn sample_mi_estimate(
    cov: &CovarianceSystem,
    a: &[&str],
    b: &[&str],
    c: &[&str],
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    gaussian_cmi(&sample_covariance(cov, n_samples, seed)?, a, b, c)
}
