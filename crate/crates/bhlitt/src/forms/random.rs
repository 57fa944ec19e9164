//! Seeded random form generators for the verification suites.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::forms::{MultilinearForm, ScalarField};

/// Real form with i.i.d. uniform ±1 coefficients.
pub fn random_sign_form(degree: usize, dim: usize, seed: u64) -> Result<MultilinearForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = dim.pow(degree as u32);
    let coeffs = (0..len)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect();
    MultilinearForm::from_real(degree, dim, coeffs)
}

/// Real form with i.i.d. standard Gaussian coefficients.
pub fn random_gaussian_form(degree: usize, dim: usize, seed: u64) -> Result<MultilinearForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = dim.pow(degree as u32);
    let coeffs = (0..len).map(|_| StandardNormal.sample(&mut rng)).collect();
    MultilinearForm::from_real(degree, dim, coeffs)
}

/// Complex form with i.i.d. uniform-phase unimodular coefficients.
pub fn random_unimodular_form(degree: usize, dim: usize, seed: u64) -> Result<MultilinearForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = dim.pow(degree as u32);
    let coeffs = (0..len)
        .map(|_| {
            let theta = rng.random::<f64>() * std::f64::consts::TAU;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect();
    MultilinearForm::new(ScalarField::Complex, degree, dim, coeffs)
}
