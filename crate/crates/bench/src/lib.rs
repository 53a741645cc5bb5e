//! Shared fixtures for the criterion benchmarks.

use std::f64::consts::PI;

use qdot_core::geometry::{normalize_area, BoundaryCurve};

/// Aspect-2 ellipse of area `4π`.
pub fn ellipse() -> BoundaryCurve {
    normalize_area(&BoundaryCurve::ellipse(2.0, 1.0).unwrap(), 4.0 * PI).unwrap()
}

/// `r = c0 (1 + 0.1 cos 3φ)` at area `4π`.
pub fn cos3() -> BoundaryCurve {
    normalize_area(&BoundaryCurve::cosine_perturbation(1.0, 3, 0.1).unwrap(), 4.0 * PI).unwrap()
}
