//! Closed-form binary-source functions and their critical constants:
//! the fluctuation maxima, the derivative jump at p = 1/2 and the
//! low-variability interval where H2 >= F2.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::solve_scalar_root;

const LN_2: f64 = std::f64::consts::LN_2;

/// Default tolerance handed to the root finder by [`constants`].
pub const DEFAULT_CONSTANTS_TOL: f64 = 1e-13;

fn check_unit_interval(p: f64) -> Result<f64> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfDomain {
            value: p,
            domain: "[0, 1]",
        });
    }
    Ok(p)
}

/// Binary entropy H2(p) = -p log2 p - q log2 q, in shannons.
pub fn binary_entropy(p: f64) -> Result<f64> {
    let p = check_unit_interval(p)?;
    let q = 1.0 - p;
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.log2();
    }
    if q > 0.0 {
        h -= q * q.log2();
    }
    Ok(h.max(0.0))
}

/// Binary fluctuation F2(p) = sqrt(pq) |log2 p - log2 q|, in shannons.
/// Zero at p in {0, 1/2, 1} (limit values at the endpoints).
pub fn binary_fluctuation(p: f64) -> Result<f64> {
    let p = check_unit_interval(p)?;
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    let q = 1.0 - p;
    Ok((p * q).sqrt() * (p.log2() - q.log2()).abs())
}

/// Derivative of F2, from the analytic piecewise form
/// dF2/dp = (1-2p)/(2 sqrt(pq)) log2(q/p) - 1/(ln2 sqrt(pq)) for p < 1/2
/// and its antisymmetric image for p > 1/2. Singular at {0, 1/2, 1}:
/// unbounded at the endpoints, a jump at 1/2.
pub fn binary_fluctuation_derivative(p: f64) -> Result<f64> {
    let p = check_unit_interval(p)?;
    if p == 0.0 || p == 0.5 || p == 1.0 {
        return Err(Error::SingularPoint { p });
    }
    let q = 1.0 - p;
    let root_pq = (p * q).sqrt();
    if p < 0.5 {
        Ok((1.0 - 2.0 * p) / (2.0 * root_pq) * (q / p).log2() - 1.0 / (LN_2 * root_pq))
    } else {
        Ok((1.0 - 2.0 * p) / (2.0 * root_pq) * (p / q).log2() + 1.0 / (LN_2 * root_pq))
    }
}

/// Critical constants of the binary fluctuation curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinaryConstants {
    /// Root of tanh(1/x) = x on (0, 1).
    pub x_star: f64,
    /// Maximizers of F2: (1 -+ x_star)/2.
    pub p_star_low: f64,
    pub p_star_high: f64,
    /// F2 at the maximizers.
    pub f2_max: f64,
    /// Jump of dF2/dp at p = 1/2 (right limit minus left limit), 4/ln2.
    pub saltus: f64,
    /// Endpoints of the interval where H2 >= F2.
    pub low_var_lo: f64,
    pub low_var_hi: f64,
}

/// Solve for the constants with the shared root finder.
pub fn compute_constants(tol: f64) -> Result<BinaryConstants> {
    if !tol.is_finite() || tol < 1e-14 {
        return Err(Error::OutOfDomain {
            value: tol,
            domain: "[1e-14, inf)",
        });
    }
    let x_star = solve_scalar_root(|x: f64| (1.0 / x).tanh() - x, 0.5, 0.99, tol)?;
    let p_star_low = (1.0 - x_star) / 2.0;
    let p_star_high = (1.0 + x_star) / 2.0;
    let f2_max = binary_fluctuation(p_star_low)?;
    // One-sided limits of the derivative at 1/2 are -+2/ln2, so the
    // jump is 4/ln2; confirmed against one-sided differences in tests.
    let saltus = 4.0 / LN_2;
    let gap = |p: f64| binary_entropy(p).unwrap() - binary_fluctuation(p).unwrap();
    // H2 - F2 is negative at the maximizers of F2 and positive at 1/2.
    let low_var_lo = solve_scalar_root(gap, p_star_low, 0.5, tol)?;
    let low_var_hi = solve_scalar_root(gap, 0.5, p_star_high, tol)?;
    Ok(BinaryConstants {
        x_star,
        p_star_low,
        p_star_high,
        f2_max,
        saltus,
        low_var_lo,
        low_var_hi,
    })
}

/// Memoized constants at [`DEFAULT_CONSTANTS_TOL`].
pub fn constants() -> &'static BinaryConstants {
    static CACHE: OnceLock<BinaryConstants> = OnceLock::new();
    CACHE.get_or_init(|| {
        compute_constants(DEFAULT_CONSTANTS_TOL)
            .expect("constants converge at the default tolerance")
    })
}

/// One row of the curve data behind Figs. 1-3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinaryCurvePoint {
    pub p: f64,
    pub h2: f64,
    pub f2: f64,
    /// Absent at the singular points {0, 1/2, 1}.
    pub df2_dp: Option<f64>,
    /// Coefficient of variation 100 F2/H2 in percent; absent where H2 = 0.
    pub cv: Option<f64>,
}

/// Evenly spaced curve rows over [0, 1] inclusive.
pub fn curve_table(grid_size: usize) -> Result<Vec<BinaryCurvePoint>> {
    if grid_size < 2 {
        return Err(Error::GridTooSmall {
            size: grid_size,
            minimum: 2,
        });
    }
    let n = grid_size - 1;
    (0..=n)
        .map(|i| {
            let p = i as f64 / n as f64;
            let h2 = binary_entropy(p)?;
            let f2 = binary_fluctuation(p)?;
            let df2_dp = binary_fluctuation_derivative(p).ok();
            let cv = if h2 > 0.0 { Some(100.0 * f2 / h2) } else { None };
            Ok(BinaryCurvePoint {
                p,
                h2,
                f2,
                df2_dp,
                cv,
            })
        })
        .collect()
}
