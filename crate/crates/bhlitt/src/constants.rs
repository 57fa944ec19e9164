//! Named constants: the Bohnenblust–Hille recursion, the classical
//! closed-form bounds, Littlewood-variant constants for both scalar
//! fields, Blei-type exponents and the growth asymptotics.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forms::ScalarField;
use crate::khinchine::{ln_rademacher_a, ln_steinhaus_a, KhinchineFamily};
use crate::specfun::{euler_mascheroni, log_gamma};

/// ln(2/√π) = −ln Γ(3/2).
const LN_TWO_OVER_SQRT_PI: f64 = 0.120_782_237_635_245_22;

/// Smallest admissible Littlewood exponent, 4/3.
pub const R_MIN: f64 = 4.0 / 3.0;

// CLI users type truncated decimals such as 1.3333333; accept anything
// within this slack of 4/3 instead of rejecting the intended endpoint.
const R_MIN_SLACK: f64 = 1e-7;

fn check_r(r: f64, what: &str) -> Result<()> {
    if !(r >= R_MIN - R_MIN_SLACK) {
        return Err(Error::domain(format!("{what} requires r >= 4/3, got {r}")));
    }
    Ok(())
}

/// Columns of the constant table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BhColumn {
    /// Steinhaus-recursion constants.
    NewConstants,
    /// The same recursion run with Rademacher constants.
    RademacherRecursion,
    /// (2/√π)^{m−1}.
    Queffelec1995,
    /// 2^{(m−1)/2}.
    Kaijser1978,
    /// m^{(m+1)/2m}·2^{(m−1)/2}.
    Bh1931,
}

impl BhColumn {
    pub const ALL: [BhColumn; 5] = [
        BhColumn::NewConstants,
        BhColumn::RademacherRecursion,
        BhColumn::Queffelec1995,
        BhColumn::Kaijser1978,
        BhColumn::Bh1931,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BhColumn::NewConstants => "new_constants",
            BhColumn::RademacherRecursion => "rademacher_recursion",
            BhColumn::Queffelec1995 => "queffelec_1995",
            BhColumn::Kaijser1978 => "kaijser_1978",
            BhColumn::Bh1931 => "bh_1931",
        }
    }
}

/// One `(m, column, value)` entry of a constant table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub m: u64,
    pub column: BhColumn,
    pub value: f64,
}

/// Dense table of constants, one value per `(m, column)` pair.
#[derive(Debug, Clone, Default)]
pub struct ConstantTable {
    pub rows: Vec<TableRow>,
}

impl ConstantTable {
    pub fn get(&self, m: u64, column: BhColumn) -> Option<f64> {
        self.rows
            .iter()
            .find(|row| row.m == m && row.column == column)
            .map(|row| row.value)
    }

    pub fn ms(&self) -> Vec<u64> {
        let mut ms: Vec<u64> = self.rows.iter().map(|r| r.m).collect();
        ms.dedup();
        ms
    }
}

/// Memoized Bohnenblust–Hille constant recursion for one variable family.
///
/// Values are accumulated as ln C_m so that chains like m = 2^20 never
/// underflow: C_1 = 1; for even m, C_m = C_{m/2}·A_{2m/(m+2)}^{−m/2};
/// for odd m the two half-index branches combine with exponents
/// (m−1)/2m and (m+1)/2m. The memo covers every index reachable through
/// m → m/2 and m → (m±1)/2, which keeps the odd branching polynomial.
#[derive(Debug, Clone)]
pub struct BhRecursion {
    family: KhinchineFamily,
    memo: HashMap<u64, f64>,
}

impl BhRecursion {
    pub fn new(family: KhinchineFamily) -> Self {
        BhRecursion { family, memo: HashMap::new() }
    }

    pub fn family(&self) -> KhinchineFamily {
        self.family
    }

    fn ln_a(&self, p: f64) -> f64 {
        let ln = match self.family {
            KhinchineFamily::Steinhaus => ln_steinhaus_a(p),
            KhinchineFamily::Rademacher => ln_rademacher_a(p),
        };
        // The recursion only requests p = 2m/(m+2), (2m−2)/(m+1) and
        // (2m+2)/(m+3), all of which lie in [1, 2).
        ln.expect("recursion exponent inside [1, 2)")
    }

    /// ln C_m.
    pub fn ln_constant(&mut self, m: u64) -> f64 {
        assert!(m >= 1, "the recursion starts at m = 1");
        if let Some(&v) = self.memo.get(&m) {
            return v;
        }
        let value = if m == 1 {
            0.0
        } else if m % 2 == 0 {
            let mf = m as f64;
            let p = 2.0 * mf / (mf + 2.0);
            self.ln_constant(m / 2) - mf / 2.0 * self.ln_a(p)
        } else {
            let mf = m as f64;
            let p_lo = (2.0 * mf - 2.0) / (mf + 1.0);
            let p_hi = (2.0 * mf + 2.0) / (mf + 3.0);
            let lo = self.ln_constant((m - 1) / 2) - (mf + 1.0) / 2.0 * self.ln_a(p_lo);
            let hi = self.ln_constant((m + 1) / 2) - (mf - 1.0) / 2.0 * self.ln_a(p_hi);
            (mf - 1.0) / (2.0 * mf) * lo + (mf + 1.0) / (2.0 * mf) * hi
        };
        self.memo.insert(m, value);
        value
    }

    /// C_m.
    pub fn constant(&mut self, m: u64) -> f64 {
        self.ln_constant(m).exp()
    }
}

/// C_m for a single index; callers iterating over many m should reuse a
/// [`BhRecursion`] so the memo is shared.
pub fn bh_constant(m: u64, family: KhinchineFamily) -> f64 {
    BhRecursion::new(family).constant(m)
}

/// The classical closed-form upper bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistoricalVariant {
    /// m^{(m+1)/2m}·2^{(m−1)/2}, the original 1931 estimate.
    Bh1931,
    /// 2^{(m−1)/2} (1978).
    Kaijser1978,
    /// (2/√π)^{m−1} (1995).
    Queffelec1995,
}

/// Evaluates one historical bound at degree `m`.
pub fn historical_bound(m: u64, variant: HistoricalVariant) -> f64 {
    assert!(m >= 1, "degree must be positive");
    let mf = m as f64;
    match variant {
        HistoricalVariant::Queffelec1995 => ((mf - 1.0) * LN_TWO_OVER_SQRT_PI).exp(),
        HistoricalVariant::Kaijser1978 => ((mf - 1.0) / 2.0).exp2(),
        HistoricalVariant::Bh1931 => {
            ((mf + 1.0) / (2.0 * mf) * mf.ln() + (mf - 1.0) / 2.0 * std::f64::consts::LN_2).exp()
        }
    }
}

/// Builds the full five-column table for the requested degrees.
pub fn bh_table(ms: &[u64]) -> ConstantTable {
    let mut steinhaus = BhRecursion::new(KhinchineFamily::Steinhaus);
    let mut rademacher = BhRecursion::new(KhinchineFamily::Rademacher);
    let mut rows = Vec::with_capacity(ms.len() * BhColumn::ALL.len());
    for &m in ms {
        rows.push(TableRow { m, column: BhColumn::NewConstants, value: steinhaus.constant(m) });
        rows.push(TableRow {
            m,
            column: BhColumn::RademacherRecursion,
            value: rademacher.constant(m),
        });
        rows.push(TableRow {
            m,
            column: BhColumn::Queffelec1995,
            value: historical_bound(m, HistoricalVariant::Queffelec1995),
        });
        rows.push(TableRow {
            m,
            column: BhColumn::Kaijser1978,
            value: historical_bound(m, HistoricalVariant::Kaijser1978),
        });
        rows.push(TableRow {
            m,
            column: BhColumn::Bh1931,
            value: historical_bound(m, HistoricalVariant::Bh1931),
        });
    }
    ConstantTable { rows }
}

/// Bounds on a Littlewood-variant constant L_{K,r}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LittlewoodBound {
    pub r: f64,
    pub field: ScalarField,
    pub lower: f64,
    pub upper: f64,
    /// Whether lower = upper is known to be the optimal constant.
    pub optimal: bool,
}

/// Optimal constant for real scalars: 2^{(2−r)/r} on [4/3, 2), then 1.
pub fn littlewood_real(r: f64) -> Result<LittlewoodBound> {
    check_r(r, "littlewood_real")?;
    let value = if r < 2.0 { 2f64.powf((2.0 - r) / r) } else { 1.0 };
    Ok(LittlewoodBound { r, field: ScalarField::Real, lower: value, upper: value, optimal: true })
}

/// Known bracket for complex scalars: lower bound 1, upper bound the
/// better of the interpolation bound (2/√π)^{(4−2r)/r} and the Blei-type
/// bound; the constant is exactly 1 for r ≥ 2 and open below.
pub fn littlewood_complex(r: f64) -> Result<LittlewoodBound> {
    check_r(r, "littlewood_complex")?;
    if r >= 2.0 {
        return Ok(LittlewoodBound {
            r,
            field: ScalarField::Complex,
            lower: 1.0,
            upper: 1.0,
            optimal: true,
        });
    }
    let interpolation = interpolation_bound_complex(r)?;
    let blei = blei_bound_complex(r)?;
    Ok(LittlewoodBound {
        r,
        field: ScalarField::Complex,
        lower: 1.0,
        upper: interpolation.min(blei),
        optimal: false,
    })
}

/// Interpolation upper bound (2/√π)^{(4−2r)/r} for r ∈ [4/3, 2).
pub fn interpolation_bound_complex(r: f64) -> Result<f64> {
    check_r(r, "interpolation_bound_complex")?;
    if r >= 2.0 {
        return Err(Error::domain(format!(
            "interpolation bound is stated for r < 2, got {r}"
        )));
    }
    Ok(((4.0 - 2.0 * r) / r * LN_TWO_OVER_SQRT_PI).exp())
}

/// Blei-type upper bound Γ(4/(4−r))^{(r−4)/(2r)} for r ∈ [4/3, 2).
///
/// Coincides with the interpolation bound at r = 4/3 and is strictly
/// worse on the open interval, but is kept as the independent route.
pub fn blei_bound_complex(r: f64) -> Result<f64> {
    check_r(r, "blei_bound_complex")?;
    if r >= 2.0 {
        return Err(Error::domain(format!(
            "blei bound is stated for r < 2, got {r}"
        )));
    }
    let arg = 4.0 / (4.0 - r);
    Ok(((r - 4.0) / (2.0 * r) * log_gamma(arg)?).exp())
}

/// Mixed-norm exponents of the Blei-type inequality:
/// w(x, y) = (q²(x+y) − 2qxy)/(q² − xy) and the weight pair
/// (f(x, y), f(y, x)) with f(x, y) = (q²x − qxy)/(q²(x+y) − 2qxy).
pub fn blei_exponents(x: f64, y: f64, q: f64) -> Result<(f64, f64, f64)> {
    if !(x >= 1.0 && y >= 1.0) {
        return Err(Error::domain(format!(
            "blei exponents require x, y >= 1, got ({x}, {y})"
        )));
    }
    if !(q > x.max(y)) {
        return Err(Error::domain(format!(
            "blei exponents require q > max(x, y), got q = {q}"
        )));
    }
    let denom = q * q * (x + y) - 2.0 * q * x * y;
    let w = denom / (q * q - x * y);
    let f_xy = (q * q * x - q * x * y) / denom;
    let f_yx = (q * q * y - q * x * y) / denom;
    Ok((w, f_xy, f_yx))
}

/// Interpolation parameter θ solving 1/r = θ/(4/3) + (1−θ)/2.
pub fn interpolation_theta(r: f64) -> Result<f64> {
    check_r(r, "interpolation_theta")?;
    if r > 2.0 {
        return Err(Error::domain(format!(
            "interpolation is stated for r <= 2, got {r}"
        )));
    }
    Ok((4.0 / r - 2.0).clamp(0.0, 1.0))
}

/// Limit of C_m / C_{m/2} along the Steinhaus recursion, e^{(1−γ)/2}.
pub fn ratio_limit_steinhaus() -> f64 {
    ((1.0 - euler_mascheroni()) / 2.0).exp()
}

/// Growth-exponent bounds for the optimal complex constants:
/// the new bound log₂ e^{(1−γ)/2} and the older log₂(e^{1−γ/2}/√2).
pub fn growth_exponent_bounds() -> (f64, f64) {
    let new_bound = ratio_limit_steinhaus().log2();
    let old_bound = ((1.0 - euler_mascheroni() / 2.0).exp() / std::f64::consts::SQRT_2).log2();
    (new_bound, old_bound)
}
