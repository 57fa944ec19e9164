//! Extremal-ratio search: multistart hill climbing over coefficient
//! tensors that recovers the known real witnesses and probes lower
//! bounds for the Littlewood-variant constants.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::constants::R_MIN;
use crate::error::{Error, Result};
use crate::forms::{
    ratio, sup_norm_complex, sup_norm_real_exact, ComplexNormOptions, MultilinearForm,
    NormOptions, RatioResult, ScalarField, DEFAULT_NORM_BUDGET,
};
use crate::util;

/// The classical bilinear witness U₁(x, y) = x₁y₁ + x₁y₂ + x₂y₁ − x₂y₂,
/// whose real norm is 2 and whose ratio attains 2^{(2−r)/r}.
pub fn witness_u1() -> MultilinearForm {
    MultilinearForm::from_real(2, 2, vec![1.0, 1.0, 1.0, -1.0])
        .expect("witness coefficients are well formed")
}

/// The rank-one witness U₀(x, y) = x₁y₁ with ratio 1 for every exponent.
pub fn witness_u0() -> MultilinearForm {
    MultilinearForm::from_real(2, 1, vec![1.0]).expect("witness coefficients are well formed")
}

/// Configuration for [`search_extremal_ratio`].
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub degree: usize,
    pub dim: usize,
    pub field: ScalarField,
    /// Coefficient exponent, at least 4/3.
    pub r: f64,
    pub restarts: u32,
    /// Hill-climbing steps per restart.
    pub steps: u32,
    /// Initial perturbation scale.
    pub initial_step: f64,
    /// Geometric decay applied to the step size each step.
    pub step_decay: f64,
    pub seed: u64,
    /// Vertex/evaluation budget for norm computations.
    pub norm_budget: u64,
    /// Phase-grid resolution for the final certified complex bracket.
    pub grid: Option<u32>,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            degree: 2,
            dim: 2,
            field: ScalarField::Real,
            r: R_MIN,
            restarts: 16,
            steps: 200,
            initial_step: 0.5,
            step_decay: 0.99,
            seed: 0,
            norm_budget: DEFAULT_NORM_BUDGET,
            grid: None,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 || self.dim < 1 {
            return Err(Error::domain("degree and dim must be positive".to_string()));
        }
        if self.restarts < 1 || self.steps < 1 {
            return Err(Error::domain("restarts and steps must be positive".to_string()));
        }
        if !(self.r >= R_MIN - 1e-7) {
            return Err(Error::domain(format!("search exponent must be >= 4/3, got {}", self.r)));
        }
        if !(self.initial_step > 0.0 && self.step_decay > 0.0 && self.step_decay <= 1.0) {
            return Err(Error::domain("step schedule must be positive with decay in (0, 1]".to_string()));
        }
        Ok(())
    }
}

/// One improvement event in a search run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub restart: u32,
    pub step: u32,
    pub ratio: f64,
}

/// Best ratio found by a search, with its improvement trace.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best: RatioResult,
    /// Improvement events ordered by (restart, step).
    pub trace: Vec<TraceRecord>,
}

/// Embeds `seed_form` into a (degree, dim) tensor, padding with zeros.
///
/// Extra slots load on the first coordinate, so the padded form keeps the
/// original's norm and coefficient norms.
fn pad_form(seed_form: &MultilinearForm, degree: usize, dim: usize, field: ScalarField) -> Option<MultilinearForm> {
    if seed_form.degree() > degree || seed_form.dim() > dim {
        return None;
    }
    let len = dim.checked_pow(degree as u32)?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
    let small_m = seed_form.degree();
    let small_n = seed_form.dim();
    for (flat, &c) in seed_form.coefficients().iter().enumerate() {
        // Decode the small tensor's indices, re-encode in the big one;
        // the extra leading slots stay at index 0.
        let mut rem = flat;
        let mut small_idx = vec![0usize; small_m];
        for k in (0..small_m).rev() {
            small_idx[k] = rem % small_n;
            rem /= small_n;
        }
        let mut big_flat = 0usize;
        for k in 0..degree {
            let idx = if k < degree - small_m { 0 } else { small_idx[k - (degree - small_m)] };
            big_flat = big_flat * dim + idx;
        }
        coeffs[big_flat] = c;
    }
    MultilinearForm::new(field, degree, dim, coeffs).ok()
}

/// Objective: an estimate of ℓ_r(coefficients)/‖candidate‖ that is exact
/// for real forms and uses the alternating lower bound for complex ones
/// (final certification happens once, on the winner).
fn objective(candidate: &MultilinearForm, config: &SearchConfig) -> Result<(f64, f64)> {
    let coefficient_norm = candidate.coefficient_norm(config.r)?;
    if coefficient_norm == 0.0 {
        return Ok((0.0, 1.0));
    }
    let norm = match config.field {
        ScalarField::Real => sup_norm_real_exact(candidate, config.norm_budget)?.lower,
        ScalarField::Complex => {
            let opts = ComplexNormOptions {
                restarts: 3,
                tol: 1e-9,
                seed: config.seed,
                grid: None,
                max_sweeps: 60,
                ..Default::default()
            };
            sup_norm_complex(candidate, &opts).lower
        }
    };
    if norm == 0.0 {
        return Ok((0.0, 1.0));
    }
    Ok((coefficient_norm / norm, norm))
}

fn perturb(
    candidate: &MultilinearForm,
    scale: f64,
    rng: &mut ChaCha8Rng,
    field: ScalarField,
) -> MultilinearForm {
    let mut coeffs = candidate.coefficients().to_vec();
    let jitter_all = rng.random::<f64>() < 0.1;
    let draw = |rng: &mut ChaCha8Rng| -> Complex64 {
        match field {
            ScalarField::Real => Complex64::new(<StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng), 0.0),
            ScalarField::Complex => Complex64::new(
                <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng),
                <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng),
            ),
        }
    };
    if jitter_all {
        for c in coeffs.iter_mut() {
            *c += scale * 0.3 * draw(rng);
        }
    } else {
        let idx = rng.random_range(0..coeffs.len());
        coeffs[idx] += scale * draw(rng);
    }
    MultilinearForm::new(field, candidate.degree(), candidate.dim(), coeffs)
        .expect("perturbation preserves shape")
}

/// Renormalizes a candidate to unit sup norm (using the objective's norm
/// estimate) so the step schedule acts on a fixed scale.
fn renormalize(candidate: &MultilinearForm, norm: f64) -> MultilinearForm {
    if norm > 0.0 && norm.is_finite() {
        candidate
            .scaled(Complex64::new(1.0 / norm, 0.0))
            .expect("rescaling preserves shape")
    } else {
        candidate.clone()
    }
}

/// Multistart hill climbing for the extremal ratio at `config.r`.
///
/// Restart 0 is the padded rank-one witness, restart 1 the padded U₁
/// (when it fits), and the rest are seeded random forms. Moves are
/// single-coefficient Gaussian perturbations with an occasional
/// full-tensor jitter, accepted only when strictly improving; the step
/// size decays geometrically. Restarts run independently (optionally in
/// parallel) and reduce in restart order, keeping the earliest winner on
/// ties, so outcomes are deterministic for a fixed seed.
pub fn search_extremal_ratio(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let starts = restart_candidates(config);
    let total = starts.len();

    let runs = util::run_indexed(total, config.workers, |index| {
        let start = &starts[index];
        run_restart(index as u32, start, config)
    });

    let mut trace = Vec::new();
    let mut best: Option<(f64, MultilinearForm)> = None;
    for run in runs {
        let (records, candidate_best) = run?;
        trace.extend(records);
        if let Some((value, form)) = candidate_best {
            let better = match &best {
                Some((incumbent, _)) => value > *incumbent,
                None => true,
            };
            if better {
                best = Some((value, form));
            }
        }
    }
    let (_, best_form) = best.ok_or_else(|| {
        Error::domain("search produced no admissible candidate".to_string())
    })?;

    // Certify the winner: exact norm for real fields, bracketed norm
    // (certified only when a grid is configured) for complex fields.
    let opts = NormOptions {
        budget: config.norm_budget,
        complex: ComplexNormOptions {
            seed: config.seed,
            grid: config.grid,
            ..Default::default()
        },
    };
    let best = ratio(&best_form, Some(config.r), &opts)?;
    Ok(SearchOutcome { best, trace })
}

fn restart_candidates(config: &SearchConfig) -> Vec<MultilinearForm> {
    let mut starts = Vec::with_capacity(config.restarts as usize);
    if let Some(u0) = pad_form(&witness_u0(), config.degree, config.dim, config.field) {
        starts.push(u0);
    }
    if let Some(u1) = pad_form(&witness_u1(), config.degree, config.dim, config.field) {
        starts.push(u1);
    }
    let mut index = 0u64;
    while starts.len() < config.restarts as usize {
        let mut rng = util::item_rng(config.seed, 1000 + index);
        let len = config.dim.pow(config.degree as u32);
        let coeffs: Vec<Complex64> = (0..len)
            .map(|_| match config.field {
                ScalarField::Real => Complex64::new(
                    <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng),
                    0.0,
                ),
                ScalarField::Complex => Complex64::new(
                    <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng),
                    <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng),
                ),
            })
            .collect();
        if let Ok(form) = MultilinearForm::new(config.field, config.degree, config.dim, coeffs) {
            starts.push(form);
        }
        index += 1;
    }
    starts
}

type RestartResult = Result<(Vec<TraceRecord>, Option<(f64, MultilinearForm)>)>;

fn run_restart(restart: u32, start: &MultilinearForm, config: &SearchConfig) -> RestartResult {
    let mut rng = util::item_rng(config.seed, restart as u64);
    let mut records = Vec::new();
    let (mut current_ratio, mut current_norm) = objective(start, config)?;
    let mut current = renormalize(start, current_norm);
    records.push(TraceRecord { restart, step: 0, ratio: current_ratio });
    let mut scale = config.initial_step;
    for step in 1..=config.steps {
        let candidate = perturb(&current, scale, &mut rng, config.field);
        let (candidate_ratio, candidate_norm) = objective(&candidate, config)?;
        if candidate_ratio > current_ratio {
            current_ratio = candidate_ratio;
            current_norm = candidate_norm;
            current = renormalize(&candidate, current_norm);
            records.push(TraceRecord { restart, step, ratio: current_ratio });
        }
        scale *= config.step_decay;
    }
    if current_ratio > 0.0 {
        Ok((records, Some((current_ratio, current))))
    } else {
        Ok((records, None))
    }
}

/// Report of [`certify_real_optimality`].
#[derive(Debug, Clone)]
pub struct OptimalityReport {
    pub r: f64,
    /// Closed-form constant 2^{(2−r)/r}.
    pub closed_form: f64,
    /// Exact ratio of the U₁ witness.
    pub witness_ratio: f64,
    /// Best ratio over the seeded search.
    pub best_searched: f64,
    /// Whether any searched form exceeded the closed form by more than 1e-9.
    pub violation_found: bool,
}

/// Checks the bilinear real optimality claim at exponent `r ∈ [4/3, 2)`:
/// the witness attains 2^{(2−r)/r} and no searched form beats it.
pub fn certify_real_optimality(
    r: f64,
    dim: usize,
    seed: u64,
    restarts: u32,
    steps: u32,
    workers: usize,
) -> Result<OptimalityReport> {
    if !(r >= R_MIN - 1e-7 && r < 2.0) {
        return Err(Error::domain(format!(
            "optimality certification is stated for r in [4/3, 2), got {r}"
        )));
    }
    if dim > 4 {
        return Err(Error::domain(format!("dim is capped at 4, got {dim}")));
    }
    let closed_form = 2f64.powf((2.0 - r) / r);

    let witness = ratio(&witness_u1(), Some(r), &NormOptions::default())?;
    let witness_ratio = witness.ratio_lower;

    let config = SearchConfig {
        degree: 2,
        dim,
        field: ScalarField::Real,
        r,
        restarts,
        steps,
        seed,
        workers,
        ..Default::default()
    };
    let outcome = search_extremal_ratio(&config)?;
    // The best over a run dominates every candidate the run evaluated, so
    // one comparison settles the falsification question.
    let best_searched = outcome.best.ratio_lower;
    Ok(OptimalityReport {
        r,
        closed_form,
        witness_ratio,
        best_searched,
        violation_found: best_searched > closed_form + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_have_expected_norms_and_ratios() {
        let u1 = witness_u1();
        let norm = sup_norm_real_exact(&u1, DEFAULT_NORM_BUDGET).unwrap();
        assert_eq!(norm.lower, 2.0);
        let res = ratio(&u1, Some(4.0 / 3.0), &NormOptions::default()).unwrap();
        assert!((res.ratio_lower - std::f64::consts::SQRT_2).abs() < 1e-12);
        for r in [1.4, 1.6, 1.9] {
            let res = ratio(&u1, Some(r), &NormOptions::default()).unwrap();
            assert!((res.ratio_lower - 2f64.powf((2.0 - r) / r)).abs() < 1e-12);
        }

        let u0 = witness_u0();
        let norm = sup_norm_real_exact(&u0, DEFAULT_NORM_BUDGET).unwrap();
        assert_eq!(norm.lower, 1.0);
        for r in [4.0 / 3.0, 2.0, 3.0] {
            let res = ratio(&u0, Some(r), &NormOptions::default()).unwrap();
            assert!((res.ratio_lower - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn padding_preserves_norm_and_coefficients() {
        let padded = pad_form(&witness_u1(), 2, 4, ScalarField::Real).unwrap();
        assert_eq!(padded.dim(), 4);
        let norm = sup_norm_real_exact(&padded, DEFAULT_NORM_BUDGET).unwrap();
        assert_eq!(norm.lower, 2.0);
        assert_eq!(padded.coefficient_norm(2.0).unwrap(), 2.0);

        let cubic = pad_form(&witness_u1(), 3, 2, ScalarField::Real).unwrap();
        assert_eq!(cubic.degree(), 3);
        let norm = sup_norm_real_exact(&cubic, DEFAULT_NORM_BUDGET).unwrap();
        assert_eq!(norm.lower, 2.0);
    }

    #[test]
    fn search_recovers_the_witness_ratio_at_r_min() {
        let config = SearchConfig { restarts: 4, steps: 50, ..Default::default() };
        let outcome = search_extremal_ratio(&config).unwrap();
        assert!(outcome.best.ratio_lower >= std::f64::consts::SQRT_2 - 1e-9);
        // Theorem bound: nothing exceeds the closed form.
        assert!(outcome.best.ratio_lower <= std::f64::consts::SQRT_2 + 1e-9);
        assert!(!outcome.trace.is_empty());
    }

    #[test]
    fn search_at_r_two_stays_at_one() {
        let config = SearchConfig { r: 2.0, restarts: 6, steps: 80, ..Default::default() };
        let outcome = search_extremal_ratio(&config).unwrap();
        assert!(outcome.best.ratio_lower >= 1.0 - 1e-9);
        assert!(outcome.best.ratio_lower <= 1.0 + 1e-9);
    }

    #[test]
    fn search_is_deterministic_and_worker_invariant() {
        let config = SearchConfig { restarts: 5, steps: 40, seed: 9, ..Default::default() };
        let a = search_extremal_ratio(&config).unwrap();
        let b = search_extremal_ratio(&config).unwrap();
        assert_eq!(a.best.ratio_lower.to_bits(), b.best.ratio_lower.to_bits());
        assert_eq!(a.trace, b.trace);
        let parallel = search_extremal_ratio(&SearchConfig { workers: 4, ..config }).unwrap();
        assert_eq!(a.best.ratio_lower.to_bits(), parallel.best.ratio_lower.to_bits());
        assert_eq!(a.trace, parallel.trace);
    }

    #[test]
    fn search_best_dominates_trace() {
        let config = SearchConfig { restarts: 6, steps: 60, seed: 3, ..Default::default() };
        let outcome = search_extremal_ratio(&config).unwrap();
        let trace_max = outcome.trace.iter().map(|t| t.ratio).fold(f64::MIN, f64::max);
        assert!(outcome.best.ratio_lower >= trace_max - 1e-9);
    }

    #[test]
    fn complex_search_produces_certified_bracket() {
        let config = SearchConfig {
            field: ScalarField::Complex,
            r: 1.5,
            restarts: 4,
            steps: 30,
            grid: Some(64),
            ..Default::default()
        };
        let outcome = search_extremal_ratio(&config).unwrap();
        assert!(outcome.best.certified());
        let upper = crate::constants::littlewood_complex(1.5).unwrap().upper;
        // Certified lower bounds can never beat the proven upper bound
        // (allow bracket slack).
        let slack = outcome.best.norm.width() / outcome.best.norm.lower;
        assert!(outcome.best.ratio_lower <= upper + slack + 1e-9);
        assert!(outcome.best.ratio_lower >= 1.0 - 0.05);
    }

    #[test]
    fn certify_real_optimality_reports() {
        let report = certify_real_optimality(4.0 / 3.0, 2, 1, 4, 40, 1).unwrap();
        assert!((report.witness_ratio - report.closed_form).abs() < 1e-9);
        assert!(!report.violation_found);
        let report = certify_real_optimality(1.99, 2, 1, 4, 40, 1).unwrap();
        assert!((report.witness_ratio - 2f64.powf(0.01 / 1.99)).abs() < 1e-9);
        assert!(!report.violation_found);
        assert!(matches!(
            certify_real_optimality(2.0, 2, 1, 4, 40, 1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            certify_real_optimality(1.5, 5, 1, 4, 40, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn config_validation() {
        let bad_r = SearchConfig { r: 1.2, ..Default::default() };
        assert!(bad_r.validate().is_err());
        let bad_counts = SearchConfig { restarts: 0, ..Default::default() };
        assert!(bad_counts.validate().is_err());
        // Truncated 4/3 from the command line is accepted.
        let truncated = SearchConfig { r: 1.3333333, ..Default::default() };
        assert!(truncated.validate().is_ok());
    }
}
