//! Named verification suites driven by the CLI and the acceptance tests.
//!
//! Each suite bundles the randomized/enumerated checks of one inequality
//! family and reports machine-readable per-check results. All randomness
//! is derived from the options' seed, and sampling is chunk-seeded, so
//! reports are identical across worker counts.

use std::str::FromStr;

use rand::Rng;

use crate::constants::{blei_exponents, interpolation_theta, littlewood_real};
use crate::error::{Error, Result};
use crate::forms::{
    random_gaussian_form, random_sign_form, sup_norm_complex, sup_norm_real_exact,
    verify_chaos_inequality, verify_cotype_l2, ComplexNormOptions, MultilinearForm, NormOptions,
    ScalarField, DEFAULT_NORM_BUDGET,
};
use crate::khinchine::{sample_moment, verify_moment_lower_bound, KhinchineFamily};
use crate::util;

/// The suites `verify` knows how to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Khinchine,
    Chaos,
    Cotype,
    Interpolation,
    Blei,
    LittlewoodReal,
    Norms,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Khinchine,
        Suite::Chaos,
        Suite::Cotype,
        Suite::Interpolation,
        Suite::Blei,
        Suite::LittlewoodReal,
        Suite::Norms,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Khinchine => "khinchine",
            Suite::Chaos => "chaos",
            Suite::Cotype => "cotype",
            Suite::Interpolation => "interpolation",
            Suite::Blei => "blei",
            Suite::LittlewoodReal => "littlewood-real",
            Suite::Norms => "norms",
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::ALL.map(|s| s.name()).join(", ")
                ))
            })
    }
}

/// One named pass/fail entry of a suite run.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }
}

/// Options shared by every suite.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Monte-Carlo samples per moment estimate.
    pub samples: usize,
    pub workers: usize,
    /// Sampling margin in standard errors.
    pub sigmas: f64,
    /// Override for the deterministic comparison tolerances.
    pub tol: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 42, samples: 100_000, workers: 1, sigmas: 3.0, tol: None }
    }
}

impl VerifyOptions {
    fn eps(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Khinchine => khinchine_suite(opts)?,
        Suite::Chaos => chaos_suite(opts)?,
        Suite::Cotype => cotype_suite(opts)?,
        Suite::Interpolation => interpolation_suite(opts)?,
        Suite::Blei => blei_suite(opts)?,
        Suite::LittlewoodReal => littlewood_real_suite(opts)?,
        Suite::Norms => norms_suite(opts)?,
    };
    Ok(SuiteReport { suite, checks })
}

fn aggregate(name: &str, total: usize, failures: Vec<String>) -> Check {
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{total}/{total} cases hold")
        } else {
            format!("{} of {total} cases failed: {}", failures.len(), failures.join("; "))
        },
    }
}

// ---------------------------------------------------------------- khinchine

const MOMENT_VECTORS: usize = 50;
const MOMENT_EXPONENTS: [f64; 3] = [1.0, 4.0 / 3.0, 2.0];

fn khinchine_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // Dominance of the Steinhaus constant over the Rademacher one on a
    // p-grid with step 0.01.
    let mut failures = Vec::new();
    for k in 0..=100 {
        let p = 1.0 + k as f64 * 0.01;
        if !crate::khinchine::dominance_check(p)? {
            failures.push(format!("p={p}"));
        }
    }
    checks.push(aggregate("dominance-grid", 101, failures));

    // Random coefficient vectors, both families, three exponents.
    let vectors: Vec<Vec<f64>> = (0..MOMENT_VECTORS)
        .map(|i| {
            let mut rng = util::item_rng(opts.seed, 5000 + i as u64);
            let n = 1 + (i % 8);
            (0..n).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect()
        })
        .collect();
    for family in [KhinchineFamily::Rademacher, KhinchineFamily::Steinhaus] {
        for p in MOMENT_EXPONENTS {
            let mut failures = Vec::new();
            for (i, coeffs) in vectors.iter().enumerate() {
                let check = verify_moment_lower_bound(
                    family,
                    p,
                    coeffs,
                    opts.samples,
                    util::mix_seed(opts.seed, (i * 7 + 1) as u64),
                    opts.workers,
                    opts.sigmas,
                )?;
                if !check.holds {
                    failures.push(format!(
                        "vector {i}: {} + {}σ < {}",
                        check.estimate.norm,
                        opts.sigmas,
                        check.constant * check.l2
                    ));
                }
            }
            checks.push(aggregate(
                &format!("moment-lower-bound {family} p={p:.4}"),
                vectors.len(),
                failures,
            ));
        }
    }

    // At p = 2 the moment is an equality by orthonormality.
    for family in [KhinchineFamily::Rademacher, KhinchineFamily::Steinhaus] {
        let mut failures = Vec::new();
        for (i, coeffs) in vectors.iter().take(10).enumerate() {
            let l2 = coeffs.iter().map(|a| a * a).sum::<f64>().sqrt();
            let est = sample_moment(
                family,
                2.0,
                coeffs,
                opts.samples,
                util::mix_seed(opts.seed, (900 + i) as u64),
                opts.workers,
            );
            let slack = (opts.sigmas + 1.0) * est.std_error + 1e-6;
            if (est.norm - l2).abs() > slack {
                failures.push(format!("vector {i}: |{} − {l2}| > {slack}", est.norm));
            }
        }
        checks.push(aggregate(&format!("second-moment-equality {family}"), 10, failures));
    }

    Ok(checks)
}

// -------------------------------------------------------------------- chaos

fn chaos_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let configs: [(usize, f64); 3] = [(1, 2.0), (2, 1.0), (2, 4.0 / 3.0)];
    for (ci, (degree, r)) in configs.into_iter().enumerate() {
        let dim: usize = if degree == 1 { 4 } else { 3 };
        let mut tensors: Vec<(String, MultilinearForm)> = Vec::new();
        // Single unit entry: the chaos is unimodular, ℓ₂ = 1.
        let mut unit = vec![num_complex::Complex64::new(0.0, 0.0); dim.pow(degree as u32)];
        unit[0] = num_complex::Complex64::new(1.0, 0.0);
        tensors.push((
            "unit-entry".to_string(),
            MultilinearForm::new(ScalarField::Complex, degree, dim, unit)?,
        ));
        for t in 0..5u64 {
            let mut rng = util::item_rng(opts.seed, 7000 + 10 * ci as u64 + t);
            let coeffs = (0..dim.pow(degree as u32))
                .map(|_| {
                    num_complex::Complex64::new(
                        rng.random::<f64>() * 2.0 - 1.0,
                        rng.random::<f64>() * 2.0 - 1.0,
                    )
                })
                .collect();
            tensors.push((
                format!("random-{t}"),
                MultilinearForm::new(ScalarField::Complex, degree, dim, coeffs)?,
            ));
        }
        let mut failures = Vec::new();
        for (label, tensor) in &tensors {
            let check = verify_chaos_inequality(
                tensor,
                r,
                opts.samples,
                util::mix_seed(opts.seed, 31 * ci as u64),
                opts.workers,
                opts.sigmas,
            )?;
            if !check.holds {
                failures.push(format!("{label}: l2 {} > bound {}", check.l2, check.bound));
            }
        }
        checks.push(aggregate(&format!("chaos m={degree} r={r:.4}"), tensors.len(), failures));
    }
    Ok(checks)
}

// ------------------------------------------------------------------- cotype

const COTYPE_FORMS: usize = 100;

fn cotype_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut failures = Vec::new();
    for i in 0..COTYPE_FORMS {
        let form = random_sign_form(2, 3, util::mix_seed(opts.seed, i as u64))?;
        let check = verify_cotype_l2(&form, DEFAULT_NORM_BUDGET)?;
        let eps = opts.eps(1e-10);
        if check.l2 > check.norm + eps {
            failures.push(format!("form {i}: l2 {} > norm {}", check.l2, check.norm));
        }
    }
    Ok(vec![aggregate("cotype-l2", COTYPE_FORMS, failures)])
}

// ------------------------------------------------------------ interpolation

const INTERPOLATION_MATRICES: usize = 1000;

fn interpolation_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let r_grid = [1.4, 1.5, 1.6, 1.75, 1.9];
    let mut failures = Vec::new();
    for i in 0..INTERPOLATION_MATRICES {
        let mut rng = util::item_rng(opts.seed, 11_000 + i as u64);
        let n = 1 + rng.random_range(0..8usize);
        let coeffs: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>() * 2.0).collect();
        let matrix = MultilinearForm::from_real(2, n, coeffs)?;
        let l43 = matrix.coefficient_norm(4.0 / 3.0)?;
        let l2 = matrix.coefficient_norm(2.0)?;
        for r in r_grid {
            let theta = interpolation_theta(r)?;
            let lr = matrix.coefficient_norm(r)?;
            let bound = l43.powf(theta) * l2.powf(1.0 - theta);
            if lr > bound * (1.0 + opts.eps(1e-12)) {
                failures.push(format!("matrix {i}, r={r}: {lr} > {bound}"));
            }
        }
    }
    Ok(vec![aggregate(
        "interpolation-inequality",
        INTERPOLATION_MATRICES * r_grid.len(),
        failures,
    )])
}

// --------------------------------------------------------------------- blei

const BLEI_MATRICES: usize = 200;

fn blei_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut failures = Vec::new();
    for i in 0..BLEI_MATRICES {
        let mut rng = util::item_rng(opts.seed, 13_000 + i as u64);
        let rows: usize = 1 + rng.random_range(0..6usize);
        let cols: usize = 1 + rng.random_range(0..6usize);
        let a: Vec<Vec<f64>> = (0..rows)
            .map(|_| (0..cols).map(|_| 0.1 + rng.random::<f64>() * 2.0).collect())
            .collect();
        let s1 = 1.0 + rng.random::<f64>() * 2.0;
        let s2 = 1.0 + rng.random::<f64>() * 2.0;
        let q = s1.max(s2) + 0.1 + rng.random::<f64>() * 2.0;
        let (w, f12, f21) = blei_exponents(s1, s2, q)?;

        let lhs = a
            .iter()
            .flatten()
            .map(|&v| v.powf(w))
            .sum::<f64>()
            .powf(1.0 / w);
        // Rows β_i and columns α_j enter through their ℓ_q norms.
        let row_norm = |i: usize| a[i].iter().map(|v| v.powf(q)).sum::<f64>().powf(1.0 / q);
        let col_norm =
            |j: usize| a.iter().map(|row| row[j].powf(q)).sum::<f64>().powf(1.0 / q);
        let rhs_rows = (0..rows).map(|i| row_norm(i).powf(s1)).sum::<f64>().powf(f12 / s1);
        let rhs_cols = (0..cols).map(|j| col_norm(j).powf(s2)).sum::<f64>().powf(f21 / s2);
        let rhs = rhs_rows * rhs_cols;
        if lhs > rhs * (1.0 + opts.eps(1e-12)) {
            failures.push(format!("matrix {i} ({rows}x{cols}): {lhs} > {rhs}"));
        }
    }
    Ok(vec![aggregate("blei-mixed-norm", BLEI_MATRICES, failures)])
}

// ---------------------------------------------------------- littlewood-real

const LITTLEWOOD_FORMS: usize = 1000;

fn littlewood_real_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let r_grid = [4.0 / 3.0, 1.5, 1.7, 1.9, 2.0];
    let mut failures = Vec::new();
    for i in 0..LITTLEWOOD_FORMS {
        let seed = util::mix_seed(opts.seed, 17_000 + i as u64);
        let mut rng = util::item_rng(opts.seed, 17_000 + i as u64);
        let n = 1 + rng.random_range(0..4usize);
        let form = if i % 2 == 0 {
            random_sign_form(2, n, seed)?
        } else {
            random_gaussian_form(2, n, seed)?
        };
        let norm = sup_norm_real_exact(&form, DEFAULT_NORM_BUDGET)?.lower;
        for r in r_grid {
            let constant = littlewood_real(r)?.lower;
            let lr = form.coefficient_norm(r)?;
            if lr > constant * norm + opts.eps(1e-9) {
                failures.push(format!("form {i}, r={r}: {lr} > {}", constant * norm));
            }
        }
    }
    Ok(vec![aggregate(
        "littlewood-real-bound",
        LITTLEWOOD_FORMS * r_grid.len(),
        failures,
    )])
}

// -------------------------------------------------------------------- norms

const ORACLE_FORMS: usize = 100;

/// Independent oracle: brute force over all 2^{N·m} sign vertices.
fn full_vertex_enumeration_norm(form: &MultilinearForm) -> Result<f64> {
    let n = form.dim();
    let m = form.degree();
    let bits = n * m;
    assert!(bits < 32, "oracle is for desk-scale forms only");
    let one = num_complex::Complex64::new(1.0, 0.0);
    let mut best = 0.0f64;
    let mut args = vec![vec![one; n]; m];
    for assignment in 0u64..(1 << bits) {
        for slot in 0..m {
            for j in 0..n {
                let bit = (assignment >> (slot * n + j)) & 1;
                args[slot][j] =
                    num_complex::Complex64::new(if bit == 0 { 1.0 } else { -1.0 }, 0.0);
            }
        }
        best = best.max(form.evaluate(&args)?.norm());
    }
    Ok(best)
}

fn norms_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let eps = opts.eps(1e-10);

    // Reduced enumeration agrees with the independent full-vertex oracle,
    // and every witness attains its reported value.
    let mut oracle_failures = Vec::new();
    let mut witness_failures = Vec::new();
    for i in 0..ORACLE_FORMS {
        let mut rng = util::item_rng(opts.seed, 19_000 + i as u64);
        let m = 1 + rng.random_range(0..3usize);
        let n = 1 + rng.random_range(0..3usize);
        let form = random_gaussian_form(m, n, util::mix_seed(opts.seed, 23_000 + i as u64))?;
        let fast = sup_norm_real_exact(&form, DEFAULT_NORM_BUDGET)?;
        let slow = full_vertex_enumeration_norm(&form)?;
        if (fast.lower - slow).abs() > eps * slow.max(1.0) {
            oracle_failures.push(format!("form {i} (m={m}, n={n}): {} vs {slow}", fast.lower));
        }
        let attained = form.evaluate(&fast.witness)?.norm();
        if (attained - fast.lower).abs() > eps * fast.lower.max(1.0) {
            witness_failures.push(format!("form {i}: witness gives {attained} vs {}", fast.lower));
        }
    }
    checks.push(aggregate("vertex-enumeration-oracle", ORACLE_FORMS, oracle_failures));
    checks.push(aggregate("witness-validity", ORACLE_FORMS, witness_failures));

    // The complex relaxation never falls below the exact real norm.
    let mut failures = Vec::new();
    for i in 0..20 {
        let form = random_gaussian_form(2, 3, util::mix_seed(opts.seed, 29_000 + i))?;
        let real = sup_norm_real_exact(&form, DEFAULT_NORM_BUDGET)?.lower;
        let complex = sup_norm_complex(
            &form,
            &ComplexNormOptions { seed: util::mix_seed(opts.seed, i), ..Default::default() },
        );
        if complex.lower < real - eps {
            failures.push(format!("form {i}: complex {} < real {real}", complex.lower));
        }
    }
    checks.push(aggregate("complex-dominates-real", 20, failures));

    // Certified bracket on the classical witness at grid 64.
    let u1 = crate::search::witness_u1();
    let bracket = sup_norm_complex(
        &u1,
        &ComplexNormOptions { grid: Some(64), seed: opts.seed, ..Default::default() },
    );
    let expected = 2.0 * std::f64::consts::SQRT_2;
    let ok = bracket.certified()
        && bracket.width() <= 1e-2
        && bracket.lower >= 2.0
        && bracket.lower <= expected + 1e-9
        && bracket.upper >= expected - 1e-9;
    checks.push(Check {
        name: "u1-complex-bracket".to_string(),
        passed: ok,
        detail: format!(
            "bracket [{}, {}], width {:.3e}",
            bracket.lower,
            bracket.upper,
            bracket.width()
        ),
    });

    // Ratios are scale invariant.
    let mut failures = Vec::new();
    for (i, scale) in [0.25, -3.0, 7.5].into_iter().enumerate() {
        let scaled = u1.scaled(num_complex::Complex64::new(scale, 0.0))?;
        let a = crate::forms::ratio(&u1, Some(1.5), &NormOptions::default())?;
        let b = crate::forms::ratio(&scaled, Some(1.5), &NormOptions::default())?;
        if (a.ratio_lower - b.ratio_lower).abs() > 1e-12 * a.ratio_lower {
            failures.push(format!("scale {scale} changed the ratio"));
        }
        let _ = i;
    }
    checks.push(aggregate("ratio-scale-invariance", 3, failures));

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_opts() -> VerifyOptions {
        VerifyOptions { samples: 20_000, ..Default::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(Suite::from_str(suite.name()).unwrap(), suite);
        }
        assert!(Suite::from_str("nonsense").is_err());
    }

    #[test]
    fn cotype_suite_passes() {
        let report = run_suite(Suite::Cotype, &quick_opts()).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
    }

    #[test]
    fn interpolation_suite_passes() {
        let report = run_suite(Suite::Interpolation, &quick_opts()).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
    }

    #[test]
    fn blei_suite_passes() {
        let report = run_suite(Suite::Blei, &quick_opts()).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
    }

    #[test]
    fn littlewood_real_suite_passes() {
        let report = run_suite(Suite::LittlewoodReal, &quick_opts()).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
    }

    #[test]
    fn norms_suite_passes() {
        let report = run_suite(Suite::Norms, &quick_opts()).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
    }

    #[test]
    fn chaos_suite_passes_with_reduced_samples() {
        let report = run_suite(Suite::Chaos, &quick_opts()).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
    }

    #[test]
    fn reports_are_worker_invariant() {
        let base = VerifyOptions { samples: 5_000, ..Default::default() };
        let parallel = VerifyOptions { workers: 4, ..base.clone() };
        let a = run_suite(Suite::Chaos, &base).unwrap();
        let b = run_suite(Suite::Chaos, &parallel).unwrap();
        let details_a: Vec<&str> = a.checks.iter().map(|c| c.detail.as_str()).collect();
        let details_b: Vec<&str> = b.checks.iter().map(|c| c.detail.as_str()).collect();
        assert_eq!(details_a, details_b);
    }
}
