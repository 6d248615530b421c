//! Sharp-threshold constants for 2-neighbour bootstrap percolation.

use std::f64::consts::PI;

/// lambda(2,2) = pi^2 / 18.
pub const LAMBDA_2_2: f64 = PI * PI / 18.0;

/// pi^2 / 9 = 2 * lambda(2,2), the FA-2f threshold constant in d = 2.
pub const PI_SQ_OVER_9: f64 = PI * PI / 9.0;

/// Threshold constant lambda(d, j). Only (2, 2) is tabulated here; other
/// pairs are deliberately absent.
pub fn lambda(d: u32, j: u32) -> Option<f64> {
    if (d, j) == (2, 2) {
        Some(LAMBDA_2_2)
    } else {
        None
    }
}
