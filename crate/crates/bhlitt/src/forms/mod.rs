//! Dense multilinear forms and their norms.
//!
//! A form of degree m and dimension N maps m vectors to a scalar through
//! its coefficient tensor U(e_{i₁},…,e_{i_m}). Norms are taken over the
//! unit ball of ℓ∞: the cube [−1,1]^N for real scalars (where the exact
//! norm is a finite vertex enumeration) and the polydisc for complex
//! scalars (where [`sup_norm_complex`] produces certified brackets).

mod checks;
mod io;
mod norm;
mod random;

pub use checks::{verify_chaos_inequality, verify_cotype_l2, ChaosCheck, CotypeCheck};
pub use io::{parse_form, read_form, render_form, write_form};
pub use norm::{
    sup_norm_complex, sup_norm_real_exact, ComplexNormOptions, DEFAULT_NORM_BUDGET,
};
pub use random::{random_gaussian_form, random_sign_form, random_unimodular_form};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar field a form is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarField {
    Real,
    Complex,
}

impl std::fmt::Display for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarField::Real => write!(f, "real"),
            ScalarField::Complex => write!(f, "complex"),
        }
    }
}

/// Hard cap on tensor size; keeps untrusted headers from allocating.
pub const MAX_COEFFICIENTS: usize = 1 << 26;

/// Hard cap on the degree m.
pub const MAX_DEGREE: usize = 16;

/// A dense m-linear form with coefficients stored row-major, last index
/// fastest. Real-tagged forms keep zero imaginary parts throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearForm {
    field: ScalarField,
    degree: usize,
    dim: usize,
    coefficients: Vec<Complex64>,
}

impl MultilinearForm {
    pub fn new(
        field: ScalarField,
        degree: usize,
        dim: usize,
        coefficients: Vec<Complex64>,
    ) -> Result<Self> {
        let expected = tensor_len(degree, dim)?;
        if coefficients.len() != expected {
            return Err(Error::shape(format!(
                "degree {degree} and dim {dim} require {expected} coefficients, got {}",
                coefficients.len()
            )));
        }
        for (i, c) in coefficients.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::shape(format!("coefficient {i} is not finite: {c}")));
            }
            if field == ScalarField::Real && c.im != 0.0 {
                return Err(Error::shape(format!(
                    "real form has nonzero imaginary part at coefficient {i}"
                )));
            }
        }
        Ok(MultilinearForm { field, degree, dim, coefficients })
    }

    /// Real form from plain coefficients.
    pub fn from_real(degree: usize, dim: usize, coefficients: Vec<f64>) -> Result<Self> {
        let coefficients = coefficients.into_iter().map(|re| Complex64::new(re, 0.0)).collect();
        Self::new(ScalarField::Real, degree, dim, coefficients)
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Coefficient U(e_{i₁},…,e_{i_m}) at 0-based indices.
    pub fn coefficient(&self, indices: &[usize]) -> Complex64 {
        assert_eq!(indices.len(), self.degree);
        let mut flat = 0usize;
        for &i in indices {
            assert!(i < self.dim);
            flat = flat * self.dim + i;
        }
        self.coefficients[flat]
    }

    /// The same form with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        let field = if self.field == ScalarField::Real && factor.im == 0.0 {
            ScalarField::Real
        } else {
            ScalarField::Complex
        };
        let coefficients = self.coefficients.iter().map(|c| c * factor).collect();
        Self::new(field, self.degree, self.dim, coefficients)
    }

    /// Full multilinear expansion Σ c_{i₁…i_m} · Π args[k][i_k].
    pub fn evaluate(&self, args: &[Vec<Complex64>]) -> Result<Complex64> {
        if args.len() != self.degree {
            return Err(Error::shape(format!(
                "form of degree {} applied to {} arguments",
                self.degree,
                args.len()
            )));
        }
        for (k, v) in args.iter().enumerate() {
            if v.len() != self.dim {
                return Err(Error::shape(format!(
                    "argument {k} has length {}, expected {}",
                    v.len(),
                    self.dim
                )));
            }
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (flat, &c) in self.coefficients.iter().enumerate() {
            let mut term = c;
            let mut rem = flat;
            for k in (0..self.degree).rev() {
                term *= args[k][rem % self.dim];
                rem /= self.dim;
            }
            total += term;
        }
        Ok(total)
    }

    /// Convenience wrapper for real arguments.
    pub fn evaluate_real(&self, args: &[Vec<f64>]) -> Result<f64> {
        let lifted: Vec<Vec<Complex64>> = args
            .iter()
            .map(|v| v.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Ok(self.evaluate(&lifted)?.re)
    }

    /// Coefficients of the linear functional induced in `free_slot` once
    /// every other slot is fixed at the given vectors (whose entry at
    /// `free_slot` is ignored).
    pub(crate) fn induced_coefficients(
        &self,
        args: &[Vec<Complex64>],
        free_slot: usize,
    ) -> Vec<Complex64> {
        debug_assert!(free_slot < self.degree);
        debug_assert_eq!(args.len(), self.degree);
        let mut g = vec![Complex64::new(0.0, 0.0); self.dim];
        for (flat, &c) in self.coefficients.iter().enumerate() {
            let mut term = c;
            let mut rem = flat;
            let mut free_index = 0usize;
            for k in (0..self.degree).rev() {
                let idx = rem % self.dim;
                rem /= self.dim;
                if k == free_slot {
                    free_index = idx;
                } else {
                    term *= args[k][idx];
                }
            }
            g[free_index] += term;
        }
        g
    }

    /// ℓ_r norm of the coefficient tensor, (Σ |c|^r)^{1/r}.
    pub fn coefficient_norm(&self, r: f64) -> Result<f64> {
        if !(r >= 1.0) {
            return Err(Error::domain(format!("coefficient norm requires r >= 1, got {r}")));
        }
        let max = self.coefficients.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if max == 0.0 {
            return Ok(0.0);
        }
        // Scale by the largest modulus so c^r never under/overflows.
        let sum: f64 = self.coefficients.iter().map(|c| (c.norm() / max).powf(r)).sum();
        Ok(max * sum.powf(1.0 / r))
    }
}

fn tensor_len(degree: usize, dim: usize) -> Result<usize> {
    if degree < 1 || dim < 1 {
        return Err(Error::shape(format!(
            "degree and dim must be at least 1, got ({degree}, {dim})"
        )));
    }
    if degree > MAX_DEGREE {
        return Err(Error::shape(format!("degree {degree} exceeds cap {MAX_DEGREE}")));
    }
    let mut len = 1usize;
    for _ in 0..degree {
        len = len
            .checked_mul(dim)
            .filter(|&l| l <= MAX_COEFFICIENTS)
            .ok_or_else(|| {
                Error::shape(format!(
                    "tensor with dim {dim}, degree {degree} exceeds {MAX_COEFFICIENTS} entries"
                ))
            })?;
    }
    Ok(len)
}

/// How a [`NormResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    /// Exact vertex enumeration for real forms.
    RealVertexEnumeration,
    /// Alternating phase maximization, lower bound only.
    PhaseAlternation,
    /// Alternating lower bound plus a certified phase-grid upper bound.
    PhaseGridBracket,
}

/// A certified bracket [lower, upper] on a sup norm, with the witness
/// arguments attaining `lower`.
#[derive(Debug, Clone)]
pub struct NormResult {
    pub lower: f64,
    pub upper: f64,
    pub witness: Vec<Vec<Complex64>>,
    pub method: NormMethod,
    pub evaluations: u64,
}

impl NormResult {
    /// Whether the bracket has a finite certified upper side.
    pub fn certified(&self) -> bool {
        self.upper.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Norm computation knobs shared by [`sup_norm`] and [`ratio`].
#[derive(Debug, Clone)]
pub struct NormOptions {
    /// Enumeration budget for real forms (count of vertex assignments).
    pub budget: u64,
    pub complex: ComplexNormOptions,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions { budget: DEFAULT_NORM_BUDGET, complex: ComplexNormOptions::default() }
    }
}

/// Field-dispatching sup norm: exact for real forms, bracket for complex.
pub fn sup_norm(form: &MultilinearForm, opts: &NormOptions) -> Result<NormResult> {
    match form.field() {
        ScalarField::Real => sup_norm_real_exact(form, opts.budget),
        ScalarField::Complex => Ok(sup_norm_complex(form, &opts.complex)),
    }
}

/// The coefficient exponent of the degree-m inequality, 2m/(m+1).
pub fn default_bh_exponent(degree: usize) -> f64 {
    let m = degree as f64;
    2.0 * m / (m + 1.0)
}

/// Quotient ℓ_r(coefficients) / ‖U‖ with certified bracketing.
#[derive(Debug, Clone)]
pub struct RatioResult {
    pub form: MultilinearForm,
    pub r: f64,
    pub coefficient_norm: f64,
    pub norm: NormResult,
    /// coefficient_norm / norm.upper — a certified lower bound when the
    /// norm bracket is certified, zero when upper is the +∞ marker.
    pub ratio_lower: f64,
    /// coefficient_norm / norm.lower.
    pub ratio_upper: f64,
}

impl RatioResult {
    /// Whether ratio_lower is certified (finite norm upper bound).
    pub fn certified(&self) -> bool {
        self.norm.certified()
    }
}

/// Computes the coefficient-norm-to-sup-norm ratio at exponent `r`
/// (default 2m/(m+1)). For real forms the bracket is a point.
pub fn ratio(form: &MultilinearForm, r: Option<f64>, opts: &NormOptions) -> Result<RatioResult> {
    let r = r.unwrap_or_else(|| default_bh_exponent(form.degree()));
    let coefficient_norm = form.coefficient_norm(r)?;
    if coefficient_norm == 0.0 {
        return Err(Error::domain("the zero form has no ratio".to_string()));
    }
    let norm = sup_norm(form, opts)?;
    let ratio_lower = if norm.upper.is_finite() { coefficient_norm / norm.upper } else { 0.0 };
    let ratio_upper = coefficient_norm / norm.lower;
    Ok(RatioResult { form: form.clone(), r, coefficient_norm, norm, ratio_lower, ratio_upper })
}
