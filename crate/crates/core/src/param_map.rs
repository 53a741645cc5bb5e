//! The change of parameters between the Dirac problem `(θ, λ)` and the
//! ∂̄-Robin problem `(a, μ)`:
//!
//! ```text
//! ϑ(θ) = (1 − sin θ)/cos θ = tan(π/4 − θ/2)
//! T(θ, λ) = ((λ + m) ϑ(θ), λ² − m²)
//! T⁻¹(a, μ) = (ϑ⁻¹(a / (√(μ + m²) + m)), √(μ + m²))
//! ```
//!
//! plus the transfer constructions that move a first eigenvalue from one
//! problem to the other through a monotone evaluator.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::roots::brent;

/// `ϑ(θ)` on the open interval `(−π/2, π/2)`.
pub fn vartheta(theta: f64) -> Result<f64> {
    if !(theta.abs() < FRAC_PI_2) {
        return Err(Error::ZigzagExcluded(theta));
    }
    Ok(half_angle_ratio(theta))
}

fn half_angle_ratio(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    if s >= 0.0 {
        c / (1.0 + s)
    } else {
        (1.0 - s) / c
    }
}

/// `ϑ⁻¹(y) = π/2 − 2 arctan y` for `y > 0`.
pub fn vartheta_inv(y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("vartheta_inv needs y > 0, got {y}")));
    }
    Ok(FRAC_PI_2 - 2.0 * y.atan())
}

/// `(1 − sin θ)/cos θ` for any `θ` with `cos θ ≠ 0`. On `(π/2, 3π/2)` this
/// is negative; it is the factor in the boundary relation `v = i ϑ ν u`.
pub fn boundary_ratio(theta: f64) -> Result<f64> {
    let c = theta.cos();
    if c.abs() < 1e-15 {
        return Err(Error::ZigzagExcluded(theta));
    }
    Ok(half_angle_ratio(theta))
}

/// `T(θ, λ) = (a, μ)` for `λ > m`.
pub fn t_map(theta: f64, lambda: f64, m: f64) -> Result<(f64, f64)> {
    let vt = vartheta(theta)?;
    if !(lambda > m) {
        return Err(Error::Domain(format!("t_map needs lambda > m, got lambda={lambda}, m={m}")));
    }
    Ok(((lambda + m) * vt, (lambda - m) * (lambda + m)))
}

/// `T⁻¹(a, μ) = (θ, λ)` for `a, μ > 0`.
pub fn t_inv(a: f64, mu: f64, m: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && mu > 0.0) {
        return Err(Error::Domain(format!("t_inv needs a > 0 and mu > 0, got a={a}, mu={mu}")));
    }
    let lambda = (mu + m * m).sqrt();
    Ok((vartheta_inv(a / (lambda + m))?, lambda))
}

/// `f(a) = ϑ⁻¹(a / (√(μ(a) + m²) + m))` given `μ(a)`; strictly decreasing in `a`
/// when `μ` is the first ∂̄-Robin eigenvalue.
pub fn f_map(a: f64, mu_of_a: f64, m: f64) -> Result<f64> {
    Ok(t_inv(a, mu_of_a, m)?.0)
}

/// A consistent tuple `(θ, λ, a, μ; m)` with `(a, μ) = T(θ, λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamQuad {
    pub theta: f64,
    pub lambda: f64,
    pub a: f64,
    pub mu: f64,
    pub m: f64,
}

impl ParamQuad {
    pub fn from_dirac(theta: f64, lambda: f64, m: f64) -> Result<Self> {
        let (a, mu) = t_map(theta, lambda, m)?;
        Ok(Self { theta, lambda, a, mu, m })
    }

    pub fn from_robin(a: f64, mu: f64, m: f64) -> Result<Self> {
        let (theta, lambda) = t_inv(a, mu, m)?;
        Ok(Self { theta, lambda, a, mu, m })
    }

    /// Largest relative defect in the two defining relations.
    pub fn defect(&self) -> f64 {
        let vt = (0.25 * PI - 0.5 * self.theta).tan();
        let da = ((self.lambda + self.m) * vt - self.a).abs() / self.a.abs();
        let dm = (self.lambda * self.lambda - self.m * self.m - self.mu).abs() / self.mu.abs();
        da.max(dm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// A strictly monotone scalar function exposed together with its bracket.
///
/// `domain` is the open interval of admissible arguments and `range` the
/// open interval of attained values; transfers refuse targets outside it.
pub trait MonotoneFn: Sync {
    fn eval(&self, x: f64) -> Result<f64>;
    fn domain(&self) -> (f64, f64);
    fn range(&self) -> (f64, f64);
    fn direction(&self) -> Monotonicity;
}

/// Solves `g(x) = target` for a monotone `g` by bracket expansion inside the
/// domain followed by Brent.
pub fn invert_monotone<G: MonotoneFn + ?Sized>(g: &G, target: f64) -> Result<f64> {
    let (lo_v, hi_v) = g.range();
    if !(target > lo_v && target < hi_v) {
        return Err(Error::TransferUndefined { target, lo: lo_v, hi: hi_v });
    }
    let (dlo, dhi) = g.domain();
    let sign = match g.direction() {
        Monotonicity::Increasing => 1.0,
        Monotonicity::Decreasing => -1.0,
    };
    let h = |x: f64| -> Result<f64> { Ok(sign * (g.eval(x)? - target)) };

    // start in the middle of the domain (geometric middle for half-lines)
    let mut lo;
    let mut hi;
    if dhi.is_infinite() {
        let base = if dlo > 0.0 { dlo.max(1e-300) } else { 0.0 };
        let mut x = if base > 0.0 { base * 2.0 } else { 1.0 };
        let mut hx = h(x)?;
        if hx < 0.0 {
            lo = x;
            loop {
                x *= 4.0;
                hx = h(x)?;
                if hx >= 0.0 {
                    hi = x;
                    break;
                }
                lo = x;
                if x > 1e300 {
                    return Err(Error::TransferUndefined { target, lo: lo_v, hi: hi_v });
                }
            }
        } else {
            hi = x;
            loop {
                x = dlo + 0.25 * (x - dlo);
                hx = h(x)?;
                if hx <= 0.0 {
                    lo = x;
                    break;
                }
                hi = x;
                if x - dlo < 1e-300 {
                    return Err(Error::TransferUndefined { target, lo: lo_v, hi: hi_v });
                }
            }
        }
    } else {
        let width = dhi - dlo;
        let mut delta = 1e-3 * width;
        loop {
            lo = dlo + delta;
            hi = dhi - delta;
            if h(lo)? < 0.0 && h(hi)? > 0.0 {
                break;
            }
            delta *= 0.1;
            if delta < 1e-14 * width.max(1.0) {
                return Err(Error::TransferUndefined { target, lo: lo_v, hi: hi_v });
            }
        }
    }
    let flo = h(lo)?;
    let fhi = h(hi)?;
    brent(h, lo, hi, flo, fhi, 1e-15 * hi.abs().max(lo.abs()))
}

/// `a := μ_Ω⁻¹(λ_D(θ)² − m²)`: the ∂̄-Robin parameter whose first eigenvalue
/// on `Ω` equals the Dirac value transported through `T`.
pub fn transfer_a<G: MonotoneFn + ?Sized>(
    theta: f64,
    m: f64,
    lambda_value: f64,
    mu_omega: &G,
) -> Result<f64> {
    vartheta(theta)?;
    if mu_omega.direction() != Monotonicity::Increasing {
        return Err(Error::Domain("transfer_a needs an increasing a -> mu evaluator".into()));
    }
    let target = (lambda_value - m) * (lambda_value + m);
    invert_monotone(mu_omega, target)
}

/// `θ := λ_Ω⁻¹(√(μ_D(a) + m²))`.
pub fn transfer_theta<G: MonotoneFn + ?Sized>(
    a: f64,
    m: f64,
    mu_value: f64,
    lambda_omega: &G,
) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("transfer_theta needs a > 0, got {a}")));
    }
    if lambda_omega.direction() != Monotonicity::Decreasing {
        return Err(Error::Domain("transfer_theta needs a decreasing theta -> lambda evaluator".into()));
    }
    invert_monotone(lambda_omega, (mu_value + m * m).sqrt())
}

/// Crossing angles for the eigenvalue `|m|` under negative mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegMassCrossing {
    /// `θ* = ϑ⁻¹(2|m| / S_Ω)`.
    pub theta_star: f64,
    /// `ϑ⁻¹(|m| √(|Ω|/π))`, attained only by disks; present when the area was supplied.
    pub lower_bound: Option<f64>,
}

pub fn neg_mass_cross(s_omega: f64, m: f64, area: Option<f64>) -> Result<NegMassCrossing> {
    if !(s_omega > 0.0) || !(m < 0.0) {
        return Err(Error::Domain(format!(
            "neg_mass_cross needs S > 0 and m < 0, got S={s_omega}, m={m}"
        )));
    }
    let theta_star = vartheta_inv(2.0 * m.abs() / s_omega)?;
    let lower_bound = match area {
        Some(a) if a > 0.0 => Some(vartheta_inv(m.abs() * (a / PI).sqrt())?),
        Some(a) => return Err(Error::Domain(format!("area must be positive, got {a}"))),
        None => None,
    };
    Ok(NegMassCrossing { theta_star, lower_bound })
}

/// The same crossing read on `(π/2, 3π/2)` for `m > 0` (eigenvalue `−m`):
/// `π − ϑ⁻¹(2m / S_Ω)`, with upper bound `π − ϑ⁻¹(m √(|Ω|/π))`.
pub fn pos_mass_mirror(s_omega: f64, m: f64, area: Option<f64>) -> Result<NegMassCrossing> {
    let c = neg_mass_cross(s_omega, -m, area)?;
    Ok(NegMassCrossing {
        theta_star: PI - c.theta_star,
        lower_bound: c.lower_bound.map(|b| PI - b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn vartheta_values() {
        assert_eq!(vartheta(0.0).unwrap(), 1.0);
        let near_top = vartheta(FRAC_PI_2 - 1e-6).unwrap();
        let near_bottom = vartheta(-(FRAC_PI_2 - 1e-6)).unwrap();
        assert!(near_top > 0.0 && near_top < 1e-6);
        assert!(near_bottom > 1e6);
        // tan half-angle: θ = −0.643501... has t = tan(θ/2) = −1/3, ϑ = (1−t)/(1+t)
        let theta = 2.0 * (-1.0f64 / 3.0).atan();
        assert!((vartheta(theta).unwrap() - 2.0).abs() < 1e-14);
        assert!((theta + 0.643501).abs() < 1e-6);
        assert!(matches!(vartheta(FRAC_PI_2), Err(Error::ZigzagExcluded(_))));
    }

    #[test]
    fn vartheta_matches_defining_quotient() {
        for i in 1..40 {
            let th = -1.5 + 3.0 * i as f64 / 40.0;
            let q = (1.0 - th.sin()) / th.cos();
            assert!((vartheta(th).unwrap() - q).abs() < 1e-13 * q.max(1.0));
        }
    }

    #[test]
    fn vartheta_inverse_pairs() {
        assert_eq!(vartheta_inv(1.0).unwrap(), 0.0);
        assert!((vartheta_inv(2.0).unwrap() + 0.6435011088).abs() < 1e-10);
        for y in [1e-3, 1.0, 1e3] {
            let back = vartheta(vartheta_inv(y).unwrap()).unwrap();
            assert!((back - y).abs() < 1e-13 * y.max(1.0));
        }
        assert!(vartheta_inv(0.0).is_err());
        assert!(vartheta_inv(-1.0).is_err());
    }

    #[test]
    fn t_map_examples() {
        let (a, mu) = t_map(0.0, 0.7, 0.0).unwrap();
        assert_eq!((a, mu), (0.7, 0.7 * 0.7));
        assert_eq!(t_map(0.0, 2.0, 1.0).unwrap(), (3.0, 3.0));
        let (th, la) = t_inv(3.0, 3.0, 1.0).unwrap();
        assert!(th.abs() < 1e-15 && (la - 2.0).abs() < 1e-15);
        assert!(t_map(0.0, 1.0, 1.0).is_err());
        assert!(t_inv(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn crossing_angle_on_disks() {
        // S = 2/R on a disk of radius R
        let r: f64 = 2.0;
        let c = neg_mass_cross(2.0 / r, -1.0, Some(PI * r * r)).unwrap();
        let closed = FRAC_PI_2 - 2.0 * 2f64.atan();
        assert!((c.theta_star - closed).abs() < 1e-15);
        assert!((c.theta_star + 0.6435011).abs() < 1e-7);
        assert!((c.lower_bound.unwrap() - c.theta_star).abs() < 1e-15);
        let tiny = neg_mass_cross(1.0, -1e-9, None).unwrap();
        assert!(tiny.theta_star < FRAC_PI_2 && FRAC_PI_2 - tiny.theta_star < 1e-8);
        let mirror = pos_mass_mirror(1.0, 1.0, None).unwrap();
        assert!((mirror.theta_star - (PI - vartheta_inv(2.0).unwrap())).abs() < 1e-15);
    }

    struct Linear;
    impl MonotoneFn for Linear {
        fn eval(&self, x: f64) -> Result<f64> {
            Ok(-(-x).exp_m1())
        }
        fn domain(&self) -> (f64, f64) {
            (0.0, f64::INFINITY)
        }
        fn range(&self) -> (f64, f64) {
            (0.0, 1.0)
        }
        fn direction(&self) -> Monotonicity {
            Monotonicity::Increasing
        }
    }

    #[test]
    fn inversion_of_saturating_function() {
        let x = invert_monotone(&Linear, 0.5).unwrap();
        assert!((x - 2f64.ln()).abs() < 1e-14);
        let x = invert_monotone(&Linear, 1e-9).unwrap();
        assert!((x - 1e-9).abs() < 1e-18);
        assert!(matches!(invert_monotone(&Linear, 1.5), Err(Error::TransferUndefined { .. })));
    }

    proptest! {
        #[test]
        fn t_roundtrips(theta in -1.55f64..1.55, excess in 1e-3f64..20.0, mi in 0usize..4) {
            let m = [0.0, 0.5, 1.0, 2.0][mi];
            let lambda = m + excess;
            let (a, mu) = t_map(theta, lambda, m).unwrap();
            let (th2, la2) = t_inv(a, mu, m).unwrap();
            prop_assert!((th2 - theta).abs() < 1e-12);
            prop_assert!((la2 - lambda).abs() < 1e-12 * lambda);
            let (a2, mu2) = t_map(th2, la2, m).unwrap();
            prop_assert!((a2 - a).abs() < 1e-12 * a.max(1.0));
            prop_assert!((mu2 - mu).abs() < 1e-12 * mu.max(1.0));
        }
    }
}
