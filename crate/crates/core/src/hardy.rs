//! Hardy and Bergman norms on the unit disk from Taylor coefficients, the
//! sharp inequality `‖f‖_{A⁴} <= ‖f‖_{H²}` and the conformal pullback
//! `√(2π)‖u(F)·(F')^{1/2}‖_{H²} = ‖u‖_{L²(∂F(𝔻))}` for Möbius maps.
//!
//! Bergman norms use the normalized area measure `dA/π`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{build_grid, BoundaryCurve};

/// A truncated power series `Σ a_n z^n` on the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    pub coeffs: Vec<Complex64>,
    /// Bound on `‖f − f_N‖_{H²}` for the discarded tail.
    pub tail_bound: f64,
    /// The coefficients were cut from an infinite series.
    pub truncated: bool,
}

impl TaylorSeries {
    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs, tail_bound: 0.0, truncated: false }
    }

    /// `a_n = c₁ c₂ⁿ`, `n = 0..=N`, with the exact geometric tail bound.
    pub fn geometric(c1: Complex64, c2: Complex64, n: usize) -> Result<Self> {
        let q = c2.norm();
        if q >= 1.0 {
            return Err(Error::Domain(format!("geometric series needs |c2| < 1, got {q}")));
        }
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut acc = c1;
        for _ in 0..=n {
            coeffs.push(acc);
            acc *= c2;
        }
        let tail = c1.norm() * q.powi(n as i32 + 1) / (1.0 - q * q).sqrt();
        Ok(Self { coeffs, tail_bound: tail, truncated: q > 0.0 })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
    }

    /// Cauchy product, kept to `max_len` terms when given.
    pub fn mul(&self, other: &Self, max_len: Option<usize>) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::polynomial(Vec::new());
        }
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = max_len.map_or(full, |m| m.min(full));
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::polynomial(out)
    }

    /// `M₂(r, f)² = Σ |a_n|² r^{2n}`.
    pub fn mean_square(&self, r: f64) -> f64 {
        let r2 = r * r;
        let mut p = 1.0;
        let mut sum = 0.0;
        for a in &self.coeffs {
            sum += a.norm_sqr() * p;
            p *= r2;
        }
        sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub h2: f64,
    pub a2: f64,
    pub a4: f64,
    pub tail_bound: f64,
}

pub fn norms(f: &TaylorSeries) -> Norms {
    let h2 = f.coeffs.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let a2sq = |s: &TaylorSeries| -> f64 {
        s.coeffs.iter().enumerate().map(|(n, a)| a.norm_sqr() / (n + 1) as f64).sum()
    };
    let a2 = a2sq(f).sqrt();
    // ‖f‖⁴_{A⁴} = ‖f²‖²_{A²}
    let a4 = a2sq(&f.mul(f, None)).sqrt().sqrt();
    Norms { h2, a2, a4, tail_bound: f.tail_bound }
}

/// `‖f‖_{H²} − ‖f‖_{A⁴}`; nonnegative up to twice the tail bound.
pub fn vukotic_gap(f: &TaylorSeries) -> f64 {
    let n = norms(f);
    n.h2 - n.a4
}

/// CSV row `case,H2,A2,A4,gap`.
pub fn norms_csv_row(case: &str, f: &TaylorSeries) -> String {
    let n = norms(f);
    format!("{case},{:.14e},{:.14e},{:.14e},{:.6e}", n.h2, n.a2, n.a4, n.h2 - n.a4)
}

pub const NORMS_CSV_HEADER: &str = "case,H2,A2,A4,gap";

/// `F(z) = c₃ z/(1 − c₂ z) + c₅` with `|c₂| < 1`, `c₃ ≠ 0`, so that
/// `F'(z) = c₃/(1 − c₂ z)²` and `c₂ = 0` is the affine map `c₃ z + c₅`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub c2: Complex64,
    pub c3: Complex64,
    pub c5: Complex64,
}

impl MobiusMap {
    pub fn new(c2: Complex64, c3: Complex64, c5: Complex64) -> Result<Self> {
        if !(c2.norm() < 1.0) {
            return Err(Error::InvalidMap(format!("|c2| = {} must be < 1", c2.norm())));
        }
        if c3.norm() == 0.0 || !c3.is_finite() || !c5.is_finite() {
            return Err(Error::InvalidMap("c3 must be finite and nonzero".into()));
        }
        Ok(Self { c2, c3, c5 })
    }

    /// From `F(z) = c₄/(1 − c₂ z) + c₅` with `c₂ ≠ 0`.
    pub fn from_pole_form(c2: Complex64, c4: Complex64, c5: Complex64) -> Result<Self> {
        if c2.norm() == 0.0 {
            return Err(Error::InvalidMap("pole form needs c2 != 0".into()));
        }
        Self::new(c2, c4 * c2, c5 + c4)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.c3 * z / (1.0 - self.c2 * z) + self.c5
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let d = 1.0 - self.c2 * z;
        self.c3 / (d * d)
    }

    /// Center and radius of `F(𝔻)`.
    pub fn image_disk(&self) -> (Complex64, f64) {
        let q = 1.0 - self.c2.norm_sqr();
        (self.c5 + self.c3 * self.c2.conj() / q, self.c3.norm() / q)
    }

    /// `(F')^{1/2} = √c₃/(1 − c₂ z)` on the principal branch of `√c₃`.
    pub fn sqrt_derivative(&self, n: usize) -> TaylorSeries {
        let mut s = geometric_terms(self.c3.sqrt(), self.c2, n);
        s.truncated = self.c2.norm() > 0.0;
        s
    }

    /// `u(F(z))·(F'(z))^{1/2}` to `n + 1` terms with a Cauchy-estimate tail bound.
    pub fn pullback(&self, u: &TaylorSeries, n: usize) -> TaylorSeries {
        let len = n + 1;
        // F(z) = c₅ + c₃ Σ_{k>=1} c₂^{k−1} zᵏ
        let mut fz = geometric_terms(self.c3, self.c2, n);
        fz.coeffs.rotate_right(1);
        fz.coeffs[0] = self.c5;
        let mut composed = TaylorSeries::polynomial(vec![Complex64::new(0.0, 0.0); len]);
        let mut power = TaylorSeries::polynomial(vec![Complex64::new(1.0, 0.0)]);
        for b in &u.coeffs {
            for (c, p) in composed.coeffs.iter_mut().zip(&power.coeffs) {
                *c += b * p;
            }
            power = power.mul(&fz, Some(len));
        }
        let mut f = composed.mul(&self.sqrt_derivative(n), Some(len));
        f.coeffs.resize(len, Complex64::new(0.0, 0.0));
        let q = self.c2.norm();
        if q == 0.0 {
            f.truncated = false;
            f.tail_bound = if u.degree() <= n { 0.0 } else { f64::INFINITY };
            return f;
        }
        // |a_k| <= M(r) r^{−k} on |z| = r < 1/|c₂|
        let r = 0.5 * (1.0 + 1.0 / q);
        let gap = 1.0 - q * r;
        let fmax = self.c5.norm() + self.c3.norm() * r / gap;
        let umax: f64 = u.coeffs.iter().enumerate().map(|(j, b)| b.norm() * fmax.powi(j as i32)).sum();
        let m = umax * self.c3.norm().sqrt() / gap;
        f.tail_bound = m * r.powi(-(len as i32)) / (1.0 - r.powi(-2)).sqrt();
        f.truncated = true;
        f
    }
}

fn geometric_terms(c1: Complex64, c2: Complex64, n: usize) -> TaylorSeries {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut acc = c1;
    for _ in 0..=n {
        coeffs.push(acc);
        acc *= c2;
    }
    TaylorSeries::polynomial(coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PullbackReport {
    /// `√(2π)‖f‖_{H²}` from the coefficients.
    pub lhs: f64,
    /// `‖u‖_{L²(∂Ω)}` by boundary quadrature on the image circle.
    pub rhs: f64,
    pub defect: f64,
    pub tail_bound: f64,
}

impl PullbackReport {
    pub fn holds(&self) -> bool {
        self.defect < 1e-8 + (2.0 * std::f64::consts::PI).sqrt() * self.tail_bound
    }
}

pub fn pullback_identity(u: &TaylorSeries, map: &MobiusMap, nodes: usize, terms: usize) -> Result<PullbackReport> {
    let f = map.pullback(u, terms);
    let lhs = (2.0 * std::f64::consts::PI).sqrt() * norms(&f).h2;
    let (center, radius) = map.image_disk();
    let grid = build_grid(&BoundaryCurve::disk(radius)?.with_center(center), nodes)?;
    let rhs = grid.integrate(|w| u.eval(w).norm_sqr()).sqrt();
    Ok(PullbackReport { lhs, rhs, defect: (lhs - rhs).abs(), tail_bound: f.tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::gauss_legendre_unit;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `(1/π) ∫_𝔻 |f|⁴ dA` in polar coordinates; exact for polynomials of
    /// degree `<= 10` at these node counts.
    fn a4_quadrature(f: &TaylorSeries) -> f64 {
        let (rn, rw) = gauss_legendre_unit(32);
        let nt = 128;
        let mut sum = 0.0;
        for (r, w) in rn.iter().zip(&rw) {
            for j in 0..nt {
                let z = Complex64::from_polar(*r, 2.0 * PI * j as f64 / nt as f64);
                sum += f.eval(z).norm_sqr().powi(2) * r * w;
            }
        }
        (sum * 2.0 * PI / nt as f64 / PI).powf(0.25)
    }

    fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> TaylorSeries {
        let mut p = TaylorSeries::polynomial(
            (0..=deg).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect(),
        );
        let h = norms(&p).h2;
        for a in p.coeffs.iter_mut() {
            *a /= h;
        }
        p
    }

    #[test]
    fn elementary_norms() {
        let one = norms(&TaylorSeries::polynomial(vec![c(1.0, 0.0)]));
        assert_eq!((one.h2, one.a2, one.a4), (1.0, 1.0, 1.0));
        let z = TaylorSeries::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let n = norms(&z);
        assert_eq!(n.h2, 1.0);
        assert!((n.a2 - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((n.a4 - 3f64.powf(-0.25)).abs() < 1e-15);
        assert!((n.a4 - 0.759836).abs() < 1e-6);
        assert!((vukotic_gap(&z) - (1.0 - 3f64.powf(-0.25))).abs() < 1e-12);
    }

    #[test]
    fn extremal_family() {
        let g = TaylorSeries::geometric(c(1.0, 0.0), c(0.5, 0.0), 200).unwrap();
        let n = norms(&g);
        assert!((n.h2 * n.h2 - 4.0 / 3.0).abs() < 1e-14);
        assert!((n.a4.powi(4) - 16.0 / 9.0).abs() < 1e-13);
        assert!(vukotic_gap(&g).abs() < 1e-12);
        assert!(g.tail_bound < 1e-60);
        let rotated = TaylorSeries::geometric(c(0.3, -2.0), c(0.2, 0.6), 200).unwrap();
        assert!(vukotic_gap(&rotated).abs() < 1e-12);
        // short truncations stay within the certified tail
        let short = TaylorSeries::geometric(c(1.0, 0.0), c(0.5, 0.0), 20).unwrap();
        assert!(vukotic_gap(&short) >= -(2.0 * short.tail_bound + 1e-12));
    }

    #[test]
    fn a4_against_area_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for deg in [0, 1, 4, 10] {
            let p = random_poly(&mut rng, deg);
            let n = norms(&p);
            assert!((n.a4 - a4_quadrature(&p)).abs() < 1e-8);
            assert!(n.a2 <= n.h2 + 1e-15);
            assert!(vukotic_gap(&p) >= -1e-12);
        }
    }

    #[test]
    fn mean_square_is_monotone_and_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let p = random_poly(&mut rng, 8);
            let mut prev = 0.0;
            for r in [0.2, 0.5, 0.9] {
                let nt = 64;
                let direct: f64 = (0..nt)
                    .map(|j| p.eval(Complex64::from_polar(r, 2.0 * PI * j as f64 / nt as f64)).norm_sqr())
                    .sum::<f64>()
                    / nt as f64;
                let series = p.mean_square(r);
                assert!((direct - series).abs() < 1e-13);
                assert!(series >= prev);
                prev = series;
            }
        }
    }

    #[test]
    fn image_disk_contains_boundary_values() {
        let f = MobiusMap::new(c(0.3, 0.4), c(1.5, -0.2), c(0.1, 2.0)).unwrap();
        let (center, radius) = f.image_disk();
        for j in 0..32 {
            let w = f.eval(Complex64::from_polar(1.0, 0.2 * j as f64));
            assert!(((w - center).norm() - radius).abs() < 1e-12);
        }
        let h = 1e-6;
        let z = c(0.2, -0.1);
        let fd = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
        assert!((fd - f.derivative(z)).norm() < 1e-8);
    }

    #[test]
    fn pole_form_conversion() {
        let (c2, c4, c5) = (c(0.3, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let f = MobiusMap::from_pole_form(c2, c4, c5).unwrap();
        for z in [c(0.1, 0.2), c(-0.5, 0.3)] {
            assert!((f.eval(z) - (c4 / (1.0 - c2 * z) + c5)).norm() < 1e-15);
        }
        assert!(MobiusMap::from_pole_form(c(0.0, 0.0), c4, c5).is_err());
        assert!(matches!(MobiusMap::new(c(1.0, 0.0), c4, c5), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn pullback_cases() {
        let one = TaylorSeries::polynomial(vec![c(1.0, 0.0)]);
        let w = TaylorSeries::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let affine = MobiusMap::new(c(0.0, 0.0), c(1.7, 0.0), c(0.4, -0.2)).unwrap();
        let r = pullback_identity(&one, &affine, 256, 10).unwrap();
        assert!((r.lhs - (2.0 * PI * 1.7).sqrt()).abs() < 1e-12);
        assert!((r.rhs - (2.0 * PI * 1.7).sqrt()).abs() < 1e-12);
        assert_eq!(r.tail_bound, 0.0);
        for c2 in [0.0, 0.3, 0.6] {
            let map = MobiusMap::new(c(c2, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
            for u in [&one, &w] {
                let r = pullback_identity(u, &map, 512, 200).unwrap();
                assert!(r.holds(), "c2={c2}: {r:?}");
                assert!(r.defect < 1e-8);
            }
        }
        let skew = MobiusMap::new(c(-0.2, 0.5), c(0.4, 1.1), c(1.0, 1.0)).unwrap();
        let cubic = TaylorSeries::polynomial(vec![c(0.5, 0.0), c(0.0, -1.0), c(0.2, 0.3), c(0.1, 0.0)]);
        assert!(pullback_identity(&cubic, &skew, 512, 300).unwrap().holds());
    }

    #[test]
    fn pullback_tail_bound_covers_truncation() {
        let w = TaylorSeries::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let map = MobiusMap::new(c(0.6, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let short = map.pullback(&w, 15);
        let long = map.pullback(&w, 400);
        let diff: f64 = long.coeffs[16..].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        assert!(diff <= short.tail_bound);
        assert!(short.truncated);
    }

    proptest::proptest! {
        #[test]
        fn norm_ordering_and_mean_square(coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..12), r in 0.0f64..0.99, dr in 0.0f64..0.01) {
            let f = TaylorSeries::polynomial(coeffs.iter().map(|(a, b)| Complex64::new(*a, *b)).collect());
            let n = norms(&f);
            // ‖f‖_{A²} <= ‖f‖_{A⁴} <= ‖f‖_{H²}
            proptest::prop_assert!(n.a2 <= n.a4 * (1.0 + 1e-12));
            proptest::prop_assert!(n.a4 <= n.h2 * (1.0 + 1e-12));
            proptest::prop_assert!(f.mean_square(r) <= f.mean_square(r + dr));
        }
    }
}
