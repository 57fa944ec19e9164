//! Validates the Gamma kernel against an independent slow oracle: the
//! Stirling series with Bernoulli correction terms, shifted into its
//! asymptotic regime by the recurrence. The oracle shares no code with
//! the Lanczos implementation.

use bhlitt::specfun::{gamma, log_gamma};

/// B_{2n}/((2n)(2n−1)) for n = 1..8.
const STIRLING_TERMS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// ln Γ(x) by Stirling's series; below the asymptotic threshold the
/// argument is shifted up with ln Γ(x) = ln Γ(x+1) − ln x.
fn stirling_log_gamma(x: f64) -> f64 {
    assert!(x > 0.0);
    if x < 30.0 {
        return stirling_log_gamma(x + 1.0) - x.ln();
    }
    let mut series = 0.0;
    let mut power = x;
    for term in STIRLING_TERMS {
        series += term / power;
        power *= x * x;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + series
}

fn stirling_gamma(x: f64) -> f64 {
    stirling_log_gamma(x).exp()
}

#[test]
fn gamma_matches_stirling_oracle_on_grid() {
    // Dense grid over [0.5, 171]; requirement is 1e-12 relative.
    let mut worst: (f64, f64) = (0.0, 0.0);
    let mut x = 0.5;
    while x <= 171.0 {
        let got = gamma(x).unwrap();
        let expected = stirling_gamma(x);
        let rel = ((got - expected) / expected).abs();
        if rel > worst.1 {
            worst = (x, rel);
        }
        assert!(rel < 1e-12, "gamma({x}) = {got}, oracle {expected}, rel {rel:e}");
        x += 0.0625;
    }
    println!("worst gamma relative error {:.3e} at x = {}", worst.1, worst.0);
}

#[test]
fn log_gamma_matches_stirling_oracle_on_grid() {
    let mut x = 0.5;
    while x <= 200.0 {
        let got = log_gamma(x).unwrap();
        let expected = stirling_log_gamma(x);
        let err = (got - expected).abs() / expected.abs().max(1.0);
        assert!(err < 1e-12, "log_gamma({x}) = {got}, oracle {expected}");
        x += 0.0625;
    }
}

#[test]
fn gamma_spot_values_from_high_precision_oracle() {
    // Frozen from 50-digit arithmetic before the build.
    let cases = [
        (0.5, 1.772_453_850_905_516),
        (1.0, 1.0),
        (2.5, 1.329_340_388_179_137),
        (5.0, 24.0),
        (10.0, 362_880.0),
        (20.5, 5.406_242_982_335_075e17),
        (50.25, 1.614_476_471_241_244_1e63),
        (100.0, 9.332_621_544_394_415_3e155),
        (150.5, 4.661_072_627_097_377_9e261),
        (171.0, 7.257_415_615_307_999e306),
    ];
    for (x, expected) in cases {
        let got = gamma(x).unwrap();
        assert!(
            ((got - expected) / expected).abs() < 1e-12,
            "gamma({x}) = {got:e}, expected {expected:e}"
        );
    }
    let log_cases = [
        (0.5, 0.572_364_942_924_700_1),
        (10.0, 12.801_827_480_081_47),
        (100.0, 359.134_205_369_575_4),
        (200.0, 857.933_669_825_857_44),
    ];
    for (x, expected) in log_cases {
        let got = log_gamma(x).unwrap();
        assert!(
            (got - expected).abs() < 1e-12 * expected.abs().max(1.0),
            "log_gamma({x}) = {got}, expected {expected}"
        );
    }
}
