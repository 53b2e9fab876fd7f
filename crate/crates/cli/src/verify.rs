use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyReport {
    pub ok: bool,
    pub max_abs_error: f64,
    /// Index of the largest error.
    pub argmax: usize,
}

/// Checks `|a_i - b_i| <= epsilon` for every pair.
pub fn verify(a: &[f64], b: &[f64], epsilon: f64) -> Result<VerifyReport> {
    if a.len() != b.len() {
        return Err(CliError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut report = VerifyReport {
        ok: true,
        max_abs_error: 0.0,
        argmax: 0,
    };
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        let err = (x - y).abs();
        // NaN never compares greater, so treat it as an unbounded error.
        if err > report.max_abs_error || err.is_nan() {
            report.max_abs_error = if err.is_nan() { f64::INFINITY } else { err };
            report.argmax = i;
        }
    }
    report.ok = report.max_abs_error <= epsilon;
    Ok(report)
}

/// Tolerance for comparing decimal values that went through binary floating
/// point: an exact bound of `epsilon` plus a few ulps of the operands.
pub fn slack(epsilon: f64, magnitude: f64) -> f64 {
    epsilon + 4.0 * f64::EPSILON * magnitude.abs().max(1.0)
}
