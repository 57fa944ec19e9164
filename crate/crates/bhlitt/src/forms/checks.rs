//! Monte-Carlo and exact inequality checks on individual forms.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::forms::{sup_norm_real_exact, MultilinearForm, ScalarField};
use crate::khinchine::{steinhaus_a, MomentEstimate};
use crate::util;

/// Result of one Steinhaus-chaos inequality check:
/// ℓ₂(y) ≤ Ã_r^{−m} · ‖Σ ε_{i₁}⋯ε_{i_m} y_{i₁…i_m}‖_r, estimated by
/// sampling the chaos with m independent phase vectors.
#[derive(Debug, Clone)]
pub struct ChaosCheck {
    pub r: f64,
    pub degree: usize,
    pub l2: f64,
    /// Ã_r^{−m}.
    pub constant: f64,
    pub moment: MomentEstimate,
    /// constant · (moment + sigmas·σ), the margin-adjusted right side.
    pub bound: f64,
    pub holds: bool,
}

/// Verifies the degree-m chaos inequality by Monte-Carlo sampling.
///
/// The chaos is the form evaluated at m independent Steinhaus vectors;
/// sampling is chunk-seeded so estimates are worker-count invariant.
pub fn verify_chaos_inequality(
    tensor: &MultilinearForm,
    r: f64,
    samples: usize,
    seed: u64,
    workers: usize,
    sigmas: f64,
) -> Result<ChaosCheck> {
    if !(1.0..=2.0).contains(&r) {
        return Err(Error::domain(format!(
            "chaos inequality is stated for r in [1, 2], got {r}"
        )));
    }
    if tensor.degree() > 3 || tensor.dim() > 4 {
        return Err(Error::Budget(format!(
            "chaos sampling is limited to degree <= 3 and dim <= 4, got ({}, {})",
            tensor.degree(),
            tensor.dim()
        )));
    }
    let m = tensor.degree();
    let n = tensor.dim();
    let l2 = tensor.coefficient_norm(2.0)?;

    const CHUNKS: usize = 64;
    let chunks = CHUNKS.min(samples.max(1));
    let base = samples / chunks;
    let extra = samples % chunks;
    let partials = util::run_indexed(chunks, workers, |c| {
        let count = base + usize::from(c < extra);
        let mut rng = util::item_rng(seed, c as u64);
        let mut args = vec![vec![Complex64::new(0.0, 0.0); n]; m];
        let mut sum = 0.0f64;
        let mut sum_sq = 0.0f64;
        for _ in 0..count {
            for slot in args.iter_mut() {
                for z in slot.iter_mut() {
                    let theta = rng.random::<f64>() * std::f64::consts::TAU;
                    *z = Complex64::new(theta.cos(), theta.sin());
                }
            }
            let value = tensor.evaluate(&args).expect("sample args match shape").norm();
            let x = value.powf(r);
            sum += x;
            sum_sq += x * x;
        }
        (sum, sum_sq)
    });
    let (sum, sum_sq) = partials
        .into_iter()
        .fold((0.0, 0.0), |(s, q), (ps, pq)| (s + ps, q + pq));
    let count = samples as f64;
    let mean = sum / count;
    let variance = (sum_sq / count - mean * mean).max(0.0);
    let se_mean = (variance / count).sqrt();
    let norm = mean.powf(1.0 / r);
    let std_error = se_mean * (1.0 / r) * mean.powf(1.0 / r - 1.0);
    let moment = MomentEstimate { norm, std_error, samples };

    let constant = steinhaus_a(r)?.powi(-(m as i32));
    let bound = constant * (moment.norm + sigmas * moment.std_error);
    Ok(ChaosCheck { r, degree: m, l2, constant, moment, bound, holds: l2 <= bound })
}

/// Result of the scalar cotype-2 check (Σ|c|²)^{1/2} ≤ ‖U‖ for real
/// bilinear forms, where the constant is exactly 1.
#[derive(Debug, Clone, Copy)]
pub struct CotypeCheck {
    pub l2: f64,
    pub norm: f64,
    pub holds: bool,
}

/// Checks the cotype-2 inequality against the exact real norm.
pub fn verify_cotype_l2(form: &MultilinearForm, budget: u64) -> Result<CotypeCheck> {
    if form.field() != ScalarField::Real || form.degree() != 2 {
        return Err(Error::domain(
            "cotype check is stated for real bilinear forms".to_string(),
        ));
    }
    let l2 = form.coefficient_norm(2.0)?;
    let norm = sup_norm_real_exact(form, budget)?.lower;
    Ok(CotypeCheck { l2, norm, holds: l2 <= norm + 1e-10 })
}
