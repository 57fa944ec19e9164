//! Best lower constants in the Khinchine inequality.
//!
//! For coefficients a₁,…,a_N and independent random signs (Rademacher) or
//! phases (Steinhaus) ε₁,…,ε_N, the inequality bounds the p-th moment of
//! |Σ aₙεₙ| from below by A_p·(Σ|aₙ|²)^{1/2}. The sharp A_p are known in
//! closed form: for Steinhaus variables A_p = Γ((p+2)/2)^{1/p} whenever
//! p ≥ 1, and for Rademacher signs Haagerup's two-branch formula with a
//! breakpoint p₀ ∈ (1, 2) where Γ((p₀+1)/2) = √π/2.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::specfun::{find_root, gamma, log_gamma, Bracket};
use crate::util;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// The two random-variable families the inequality is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KhinchineFamily {
    /// Independent fair ±1 signs.
    Rademacher,
    /// Independent phases uniform on the complex unit circle.
    Steinhaus,
}

impl std::fmt::Display for KhinchineFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KhinchineFamily::Rademacher => write!(f, "rademacher"),
            KhinchineFamily::Steinhaus => write!(f, "steinhaus"),
        }
    }
}

/// A lower Khinchine constant at a given exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KhinchineConstant {
    pub family: KhinchineFamily,
    pub p: f64,
    pub value: f64,
}

/// Sharp Steinhaus constant Γ((p+2)/2)^{1/p}.
///
/// The closed form is only proven for p ≥ 1; smaller exponents are
/// rejected rather than extrapolated.
pub fn steinhaus_a(p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!(
            "steinhaus constant is only available for p >= 1, got {p}"
        )));
    }
    Ok(ln_steinhaus_a(p)?.exp())
}

/// log of [`steinhaus_a`]; the recursion accumulates in this domain.
pub fn ln_steinhaus_a(p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!(
            "steinhaus constant is only available for p >= 1, got {p}"
        )));
    }
    Ok(log_gamma((p + 2.0) / 2.0)? / p)
}

/// Sharp Rademacher constant (Haagerup), piecewise with breakpoint [`haagerup_p0`].
pub fn rademacher_a(p: f64) -> Result<f64> {
    Ok(ln_rademacher_a(p)?.exp())
}

/// log of [`rademacher_a`].
pub fn ln_rademacher_a(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 2.0) {
        return Err(Error::domain(format!(
            "rademacher constant requires 0 < p <= 2, got {p}"
        )));
    }
    if p <= haagerup_p0() {
        Ok((0.5 - 1.0 / p) * std::f64::consts::LN_2)
    } else {
        Ok(0.5 * std::f64::consts::LN_2 + (log_gamma((p + 1.0) / 2.0)? - SQRT_PI.ln()) / p)
    }
}

/// Lower constant for either family.
pub fn lower_constant(family: KhinchineFamily, p: f64) -> Result<KhinchineConstant> {
    let value = match family {
        KhinchineFamily::Rademacher => rademacher_a(p)?,
        KhinchineFamily::Steinhaus => steinhaus_a(p)?,
    };
    Ok(KhinchineConstant { family, p, value })
}

/// Breakpoint of Haagerup's formula: the root of Γ((p+1)/2) = √π/2 in (1, 2).
///
/// Γ((p+1)/2) − √π/2 also vanishes at p = 2, so the bracket [1.5, 1.95]
/// deliberately stops short of that spurious root.
pub fn haagerup_p0() -> f64 {
    static P0: std::sync::OnceLock<f64> = std::sync::OnceLock::new();
    *P0.get_or_init(|| {
        find_root(
            |p| gamma((p + 1.0) / 2.0).expect("argument inside gamma domain") - SQRT_PI / 2.0,
            Bracket { lo: 1.5, hi: 1.95 },
            1e-13,
        )
        .expect("sign change on [1.5, 1.95]")
    })
}

/// Sawa's critical exponent: the root in (0, 1) of
/// 2^{p/2}·Γ((p+1)/2) = √π·Γ((p+2)/2)².
///
/// The defining equation also vanishes at p = 0 and p = 2; the bracket
/// [0.05, 1] isolates the interior root near 0.4756.
pub fn sawa_p0() -> f64 {
    static P0: std::sync::OnceLock<f64> = std::sync::OnceLock::new();
    *P0.get_or_init(|| {
        find_root(sawa_residual, Bracket { lo: 0.05, hi: 1.0 }, 1e-12)
            .expect("sign change on [0.05, 1]")
    })
}

/// Residual of Sawa's root equation.
pub fn sawa_residual(p: f64) -> f64 {
    let lhs = 2f64.powf(p / 2.0) * gamma((p + 1.0) / 2.0).expect("positive argument");
    let rhs = SQRT_PI * gamma((p + 2.0) / 2.0).expect("positive argument").powi(2);
    lhs - rhs
}

/// Whether the Rademacher constant is dominated by the Steinhaus one at `p`.
pub fn dominance_check(p: f64) -> Result<bool> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::domain(format!(
            "dominance check requires 1 <= p <= 2, got {p}"
        )));
    }
    Ok(rademacher_a(p)? <= steinhaus_a(p)? + 1e-12)
}

/// Monte-Carlo estimate of ‖Σ aₙεₙ‖_p = (E|Σ aₙεₙ|^p)^{1/p}.
#[derive(Debug, Clone, Copy)]
pub struct MomentEstimate {
    /// Estimated p-norm of the random sum.
    pub norm: f64,
    /// Standard error of `norm` (delta method through x ↦ x^{1/p}).
    pub std_error: f64,
    pub samples: usize,
}

/// Samples the p-th moment of |Σ aₙ εₙ| for one family.
///
/// Sampling is split into a fixed number of chunks, each with its own RNG
/// derived from `(seed, chunk)`, so the estimate is identical for every
/// worker count.
pub fn sample_moment(
    family: KhinchineFamily,
    p: f64,
    coeffs: &[f64],
    samples: usize,
    seed: u64,
    workers: usize,
) -> MomentEstimate {
    const CHUNKS: usize = 64;
    let chunks = CHUNKS.min(samples.max(1));
    let base = samples / chunks;
    let extra = samples % chunks;
    let partials = util::run_indexed(chunks, workers, |c| {
        let n = base + usize::from(c < extra);
        let mut rng = util::item_rng(seed, c as u64);
        let mut sum = 0.0f64;
        let mut sum_sq = 0.0f64;
        for _ in 0..n {
            let modulus = match family {
                KhinchineFamily::Rademacher => {
                    let mut acc = 0.0f64;
                    for &a in coeffs {
                        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                        acc += a * sign;
                    }
                    acc.abs()
                }
                KhinchineFamily::Steinhaus => {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &a in coeffs {
                        let theta = rng.random::<f64>() * std::f64::consts::TAU;
                        acc += a * Complex64::new(theta.cos(), theta.sin());
                    }
                    acc.norm()
                }
            };
            let x = modulus.powf(p);
            sum += x;
            sum_sq += x * x;
        }
        (sum, sum_sq)
    });
    let (sum, sum_sq) = partials
        .into_iter()
        .fold((0.0, 0.0), |(s, q), (ps, pq)| (s + ps, q + pq));
    let n = samples as f64;
    let mean = sum / n;
    let variance = (sum_sq / n - mean * mean).max(0.0);
    let se_mean = (variance / n).sqrt();
    let norm = mean.powf(1.0 / p);
    // d/dx x^{1/p} = (1/p) x^{1/p - 1}
    let std_error = se_mean * (1.0 / p) * mean.powf(1.0 / p - 1.0);
    MomentEstimate { norm, std_error, samples }
}

/// One Monte-Carlo check of the lower Khinchine inequality.
#[derive(Debug, Clone)]
pub struct MomentCheck {
    pub family: KhinchineFamily,
    pub p: f64,
    pub constant: f64,
    pub l2: f64,
    pub estimate: MomentEstimate,
    /// Whether estimate + 3σ clears constant · ℓ₂.
    pub holds: bool,
}

/// Verifies ‖Σ aₙεₙ‖_p ≥ A_p·ℓ₂(a) up to a `sigmas`-sigma sampling margin.
pub fn verify_moment_lower_bound(
    family: KhinchineFamily,
    p: f64,
    coeffs: &[f64],
    samples: usize,
    seed: u64,
    workers: usize,
    sigmas: f64,
) -> Result<MomentCheck> {
    let constant = lower_constant(family, p)?.value;
    let l2 = coeffs.iter().map(|a| a * a).sum::<f64>().sqrt();
    let estimate = sample_moment(family, p, coeffs, samples, seed, workers);
    let holds = estimate.norm + sigmas * estimate.std_error >= constant * l2;
    Ok(MomentCheck { family, p, constant, l2, estimate, holds })
}
