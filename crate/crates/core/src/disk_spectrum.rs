//! Implicit-equation spectra on the disk `D_R`.
//!
//! With `u = J_k(c r) e^{ikφ}` and `2ν̄∂_z̄ = ∂_r + (i/r)∂_φ` on the circle,
//! the ∂̄-Robin condition reduces to
//!
//! ```text
//! a R J_k(x) = x J_{k+1}(x),   x = R √μ.
//! ```
//!
//! For `k >= 0` the `n`-th root lies between consecutive zeros of `J_k`
//! (with `j_{k,0} = 0`); for `k = −p < 0` it lies between consecutive zeros
//! of `J_p`. Dirac eigenvalues are obtained either through the T-map fixed
//! point on these branches or directly from
//!
//! ```text
//! (λ + m) ϑ R J_k(x) = x J_{k+1}(x),   x = R √(λ² − m²),
//! ```
//!
//! which holds for every real `ϑ` and either sign of `λ` with `|λ| > |m|`.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::param_map::vartheta;
use crate::roots::{bisect_newton, brent};
use crate::special::{bessel_j_upto, signed_order, zeros_of, MAX_ZERO_INDEX};

pub const MAX_DISK_ORDER: i32 = 40;

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must be positive, got {r}")))
    }
}

/// `g(x) = c J_k(x) − x J_{k+1}(x)` and `g'(x)`.
fn robin_residual(c: f64, k: i32, x: f64) -> (f64, f64) {
    let t = bessel_j_upto(k.unsigned_abs() as usize + 2, x);
    let jk = signed_order(&t, k);
    let jk1 = signed_order(&t, k + 1);
    let djk = 0.5 * (signed_order(&t, k - 1) - signed_order(&t, k + 1));
    let djk1 = 0.5 * (signed_order(&t, k) - signed_order(&t, k + 2));
    (c * jk - x * jk1, c * djk - jk1 - x * djk1)
}

/// First `n_max` eigenvalues `μ` of the ∂̄-Robin Laplacian on `D_R` in the
/// angular sector `k`, in increasing order.
pub fn robin_disk_eigs(r: f64, a: f64, k: i32, n_max: usize) -> Result<Vec<f64>> {
    check_radius(r)?;
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("robin parameter must be positive, got {a}")));
    }
    if k.abs() > MAX_DISK_ORDER || n_max == 0 || n_max > MAX_ZERO_INDEX as usize {
        return Err(Error::UnsupportedRange(format!(
            "k = {k}, n_max = {n_max} outside |k| <= {MAX_DISK_ORDER}, 1 <= n_max <= {MAX_ZERO_INDEX}"
        )));
    }
    let c = a * r;
    let zeros = zeros_of(k.unsigned_abs() as usize);
    let mut out = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let hi = zeros[n];
        let (lo, left_positive) = if n == 0 {
            // near 0 both terms scale like x^{|k|}; the sign is that of J_k
            (0.0, k >= 0 || k % 2 == 0)
        } else {
            let lo = zeros[n - 1];
            (lo, robin_residual(c, k, lo).0 > 0.0)
        };
        let right = robin_residual(c, k, hi).0;
        if (right > 0.0) == left_positive || right == 0.0 {
            return Err(Error::RootLocalization {
                lo,
                hi,
                context: format!("robin branch k={k}, n={} (a={a}, R={r})", n + 1),
            });
        }
        let x = bisect_newton(|x| robin_residual(c, k, x), lo, hi, left_positive, 1e-6, 1e-15)?;
        out.push((x / r) * (x / r));
    }
    Ok(out)
}

/// Residual of the disk Robin equation normalized by its two terms.
pub fn robin_disk_residual(r: f64, a: f64, k: i32, mu: f64) -> f64 {
    robin_residual(a * r, k, r * mu.sqrt()).0
}

/// First eigenvalue `μ_D(a)` of the ∂̄-Robin Laplacian on `D_R`.
pub fn robin_disk_first(r: f64, a: f64) -> Result<f64> {
    Ok(robin_disk_first_with_order(r, a)?.0)
}

/// `μ_D(a)` together with the angular index that attains it.
pub fn robin_disk_first_with_order(r: f64, a: f64) -> Result<(f64, i32)> {
    let mut best = (robin_disk_eigs(r, a, 0, 1)?[0], 0);
    for p in 1..=MAX_DISK_ORDER {
        let mut level = f64::INFINITY;
        for k in [p, -p] {
            let v = robin_disk_eigs(r, a, k, 1)?[0];
            level = level.min(v);
            if v < best.0 {
                best = (v, k);
            }
        }
        // zero interlacing makes larger |k| only worse once clearly above
        if level > 1.1 * best.0 {
            break;
        }
    }
    Ok(best)
}

/// `Λ_{D_R} = (j_{0,1}/R)²`.
pub fn dirichlet_disk_first(r: f64) -> Result<f64> {
    check_radius(r)?;
    let j = zeros_of(0)[0];
    Ok((j / r) * (j / r))
}

/// `Λ_{k,n} = (j_{|k|,n}/R)²`.
pub fn dirichlet_disk_level(r: f64, k: i32, n: usize) -> Result<f64> {
    check_radius(r)?;
    if n == 0 || n > MAX_ZERO_INDEX as usize || k.abs() > MAX_DISK_ORDER {
        return Err(Error::UnsupportedRange(format!("Dirichlet level ({k},{n})")));
    }
    let j = zeros_of(k.unsigned_abs() as usize)[n - 1];
    Ok((j / r) * (j / r))
}

/// Solves `λ² − m² = μ((λ + m) ϑ(θ))` for `λ ∈ (m, √(upper + m²))`.
fn dirac_fixed_point<F>(m: f64, theta: f64, upper_mu: f64, mu_of_a: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let vt = vartheta(theta)?;
    let hi = (upper_mu + m * m).sqrt();
    let h = |lambda: f64| -> Result<f64> {
        Ok((lambda - m) * (lambda + m) - mu_of_a((lambda + m) * vt)?)
    };
    let fhi = h(hi)?;
    let mut delta = 1e-9 * (hi - m);
    let (lo, flo) = loop {
        let lo = m + delta;
        let f = h(lo)?;
        if f < 0.0 {
            break (lo, f);
        }
        delta *= 1e-3;
        if delta < 1e-300 {
            return Err(Error::RootLocalization {
                lo: m,
                hi,
                context: format!("no sign change near lambda = m (theta = {theta})"),
            });
        }
    };
    brent(h, lo, hi, flo, fhi, 1e-15 * hi)
}

/// First nonnegative eigenvalue `λ_D(θ)` of the quantum-dot Dirac operator
/// on `D_R` for `m >= 0` and `θ ∈ (−π/2, π/2)`.
pub fn dirac_disk_first(r: f64, m: f64, theta: f64) -> Result<f64> {
    check_radius(r)?;
    if !(m >= 0.0) {
        return Err(Error::Domain(format!("dirac_disk_first needs m >= 0, got {m}")));
    }
    if !(theta.abs() < FRAC_PI_2) {
        return Err(Error::ZigzagExcluded(theta));
    }
    let upper = dirichlet_disk_first(r)?;
    dirac_fixed_point(m, theta, upper, |a| robin_disk_first(r, a))
}

/// Eigenvalue on the positive Dirac branch `(k, n)`: the fixed point with the
/// `n`-th Robin root in sector `k` in place of the first eigenvalue.
pub fn dirac_disk_branch(r: f64, m: f64, theta: f64, k: i32, n: usize) -> Result<f64> {
    check_radius(r)?;
    if !(m >= 0.0) {
        return Err(Error::Domain(format!("dirac_disk_branch needs m >= 0, got {m}")));
    }
    let upper = dirichlet_disk_level(r, k, n)?;
    dirac_fixed_point(m, theta, upper, |a| Ok(robin_disk_eigs(r, a, k, n)?[n - 1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSign {
    Positive,
    Negative,
}

/// Dirac eigenvalues in sector `k` on the half-line `sign · λ > |m|`, found
/// directly from `(λ + m) ϑ R J_k(x) = x J_{k+1}(x)` without the T-map.
/// `vt` is the boundary ratio `(1 − sin θ)/cos θ` and may be negative.
/// Returns the first `n_max` roots ordered by `|λ|`.
pub fn dirac_disk_direct(
    r: f64,
    m: f64,
    vt: f64,
    k: i32,
    n_max: usize,
    sign: SpectrumSign,
) -> Result<Vec<f64>> {
    check_radius(r)?;
    if !vt.is_finite() || vt == 0.0 {
        return Err(Error::Domain(format!("boundary ratio must be finite and nonzero, got {vt}")));
    }
    if k.abs() > MAX_DISK_ORDER + 1 {
        return Err(Error::UnsupportedRange(format!("k = {k}")));
    }
    let s = match sign {
        SpectrumSign::Positive => 1.0,
        SpectrumSign::Negative => -1.0,
    };
    let lambda_of = |x: f64| s * ((x / r) * (x / r) + m * m).sqrt();
    let g = |x: f64| -> f64 {
        let t = bessel_j_upto(k.unsigned_abs() as usize + 1, x);
        (lambda_of(x) + m) * vt * r * signed_order(&t, k) - x * signed_order(&t, k + 1)
    };
    let mut roots = Vec::with_capacity(n_max);
    let mut x = 1e-6;
    let mut gx = g(x);
    while roots.len() < n_max {
        let next = if x < 0.5 { x * 1.25 } else { x + 0.02 };
        if next > 1000.0 {
            return Err(Error::RootLocalization {
                lo: 0.0,
                hi: 1000.0,
                context: format!("found {} of {n_max} direct Dirac roots for k={k}", roots.len()),
            });
        }
        let gn = g(next);
        if gx != 0.0 && gn != 0.0 && (gx > 0.0) != (gn > 0.0) {
            let root = brent(|y| Ok(g(y)), x, next, gx, gn, 1e-15 * next)?;
            roots.push(lambda_of(root));
        }
        x = next;
        gx = gn;
    }
    Ok(roots)
}

/// Reference levels at the zigzag angles `θ = ±π/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZigzagLevels {
    /// The infinitely degenerate level `±m` (sign of `θ`).
    pub flat: f64,
    /// `(k, n, √(Λ_{k,n} + m²))` for `k >= 0`, increasing; `k > 0` levels are
    /// doubly degenerate (`±k`) and the spectrum also holds their negatives.
    pub levels: Vec<(u32, usize, f64)>,
}

impl ZigzagLevels {
    /// The first nonnegative eigenvalue at this zigzag angle.
    pub fn first_nonnegative(&self) -> f64 {
        if self.flat >= 0.0 {
            self.flat
        } else {
            self.levels[0].2
        }
    }
}

pub fn zigzag_levels(r: f64, m: f64, sign: SpectrumSign, count: usize) -> Result<ZigzagLevels> {
    check_radius(r)?;
    let flat = match sign {
        SpectrumSign::Positive => m,
        SpectrumSign::Negative => -m,
    };
    let mut levels = Vec::new();
    for k in 0..=MAX_DISK_ORDER as u32 {
        for n in 1..=count.min(MAX_ZERO_INDEX as usize) {
            let lam = dirichlet_disk_level(r, k as i32, n)?;
            levels.push((k, n, (lam + m * m).sqrt()));
        }
    }
    levels.sort_by(|a, b| a.2.total_cmp(&b.2));
    levels.truncate(count);
    Ok(ZigzagLevels { flat, levels })
}

/// One eigenvalue curve `(k, n)` sampled on a parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskBranch {
    pub k: i32,
    pub n: usize,
    pub params: Vec<f64>,
    pub values: Vec<f64>,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiskOperator {
    /// ∂̄-Robin Laplacian; the grid holds `a` values.
    Robin,
    /// Quantum-dot Dirac operator; the grid holds `θ` values.
    Dirac(SpectrumSign),
}

/// Eigenvalue curves for every `(k, n)` in `branches`, ordered by branch.
/// Positive Dirac branches follow the T-map fixed point; negative ones use
/// the direct equation on `λ < −m`.
pub fn disk_curves(
    r: f64,
    m: f64,
    grid: &[f64],
    branches: &[(i32, usize)],
    operator: DiskOperator,
) -> Result<Vec<DiskBranch>> {
    check_radius(r)?;
    let mut sorted: Vec<(i32, usize)> = branches.to_vec();
    sorted.sort();
    sorted.dedup();
    let point = |k: i32, n: usize, p: f64| -> Result<f64> {
        match operator {
            DiskOperator::Robin => Ok(robin_disk_eigs(r, p, k, n)?[n - 1]),
            DiskOperator::Dirac(SpectrumSign::Positive) => dirac_disk_branch(r, m, p, k, n),
            DiskOperator::Dirac(SpectrumSign::Negative) => {
                let vt = vartheta(p)?;
                Ok(dirac_disk_direct(r, m, vt, k, n, SpectrumSign::Negative)?[n - 1])
            }
        }
    };
    sorted
        .par_iter()
        .map(|&(k, n)| {
            let values = grid
                .iter()
                .map(|&p| point(k, n, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(DiskBranch {
                k,
                n,
                params: grid.to_vec(),
                values,
                mass: m,
            })
        })
        .collect()
}

/// CSV table `param,k,n,value` (header included, 15 significant digits).
pub fn branches_to_csv(branches: &[DiskBranch]) -> String {
    let mut out = String::from("param,k,n,value\n");
    for b in branches {
        for (p, v) in b.params.iter().zip(&b.values) {
            out.push_str(&format!("{},{},{},{}\n", fmt15(*p), b.k, b.n, fmt15(*v)));
        }
    }
    out
}

/// A float at 15 significant digits in scientific notation.
pub fn fmt15(v: f64) -> String {
    format!("{v:.14e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param_map::boundary_ratio;
    use crate::special::bessel_j;

    const R: f64 = 2.0;

    /// Plain bisection on `J_0(x) − J_1(x)` using the public evaluator.
    fn j0_eq_j1_root() -> f64 {
        let f = |x: f64| bessel_j(0, x).unwrap().value - bessel_j(1, x).unwrap().value;
        let (mut lo, mut hi) = (1.0, 2.0);
        assert!(f(lo) > 0.0 && f(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn small_and_large_robin_limits() {
        let mu = robin_disk_eigs(R, 1e-3, 0, 1).unwrap()[0];
        assert!((mu / 1e-3 - 1.0).abs() < 1e-3);
        let lam = dirichlet_disk_first(R).unwrap();
        assert!((lam - 1.445796).abs() < 1e-6);
        let big = robin_disk_eigs(R, 1e3, 0, 1).unwrap()[0];
        assert!(big < lam && big / lam > 0.995);
    }

    #[test]
    fn returned_roots_solve_the_equation() {
        for k in [-7, -1, 0, 1, 3, 12] {
            for a in [0.05, 1.0, 30.0] {
                let eigs = robin_disk_eigs(R, a, k, 6).unwrap();
                for w in eigs.windows(2) {
                    assert!(w[1] > w[0]);
                }
                for mu in eigs {
                    let res = robin_disk_residual(R, a, k, mu);
                    assert!(res.abs() < 1e-10, "k={k} a={a} mu={mu} res={res:e}");
                }
            }
        }
    }

    #[test]
    fn first_eigenvalue_bounds() {
        let lam = dirichlet_disk_first(R).unwrap();
        let mu1 = robin_disk_first(R, 1.0).unwrap();
        assert!(mu1 > 0.0 && mu1 < lam);
        let mu2 = robin_disk_first(R, 2.0).unwrap();
        assert!(mu2 / 2.0 < mu1 / 1.0);
        let mu_half = robin_disk_first(R, 0.5).unwrap();
        assert!(mu_half / 0.5 <= 1.0);
        assert_eq!(robin_disk_first_with_order(R, 1.0).unwrap().1, 0);
    }

    #[test]
    fn monotone_first_branch_on_log_grid() {
        let lam = dirichlet_disk_first(R).unwrap();
        let grid: Vec<f64> = (0..50).map(|i| 10f64.powf(-3.0 + 6.0 * i as f64 / 49.0)).collect();
        let mu: Vec<f64> = grid.iter().map(|&a| robin_disk_first(R, a).unwrap()).collect();
        for i in 1..grid.len() {
            assert!(mu[i] > mu[i - 1]);
            assert!(mu[i] / grid[i] < mu[i - 1] / grid[i - 1]);
            assert!(mu[i] < lam);
            assert!(mu[i] / grid[i] <= 2.0 / R);
        }
    }

    #[test]
    fn dirichlet_scaling() {
        let one = dirichlet_disk_first(1.0).unwrap();
        assert!((one - 5.783186).abs() < 1e-6);
        assert!((dirichlet_disk_first(2.0).unwrap() - one / 4.0).abs() < 1e-15);
    }

    #[test]
    fn dirac_infinite_mass_massless_value() {
        let x = j0_eq_j1_root();
        assert!((x - 1.43470).abs() < 1e-5);
        let lam = dirac_disk_first(R, 0.0, 0.0).unwrap();
        assert!((lam - x / R).abs() < 1e-9, "{lam} vs {}", x / R);
    }

    #[test]
    fn dirac_endpoints_and_monotonicity() {
        let lam_d = dirichlet_disk_first(R).unwrap();
        let top = (lam_d + 1.0).sqrt();
        assert!((top - 1.563904).abs() < 1e-6);
        let near_bottom = dirac_disk_first(R, 1.0, -FRAC_PI_2 + 1e-3).unwrap();
        assert!((near_bottom - top).abs() / top < 0.01);
        let near_top = dirac_disk_first(R, 1.0, FRAC_PI_2 - 1e-3).unwrap();
        assert!((near_top - 1.0).abs() < 0.01);
        let grid: Vec<f64> = (0..50).map(|i| -1.5 + 3.0 * i as f64 / 49.0).collect();
        let mut prev = f64::INFINITY;
        for &th in &grid {
            let l = dirac_disk_first(R, 1.0, th).unwrap();
            assert!(l > 1.0 && l < top);
            assert!(l < prev);
            prev = l;
        }
        assert!(matches!(dirac_disk_first(R, 1.0, FRAC_PI_2), Err(Error::ZigzagExcluded(_))));
    }

    #[test]
    fn direct_route_matches_t_map_route() {
        for (m, th) in [(0.0, 0.0), (1.0, 0.4), (0.5, -0.9), (2.0, 1.2)] {
            let vt = vartheta(th).unwrap();
            for k in [-3, -1, 0, 2] {
                let direct = dirac_disk_direct(R, m, vt, k, 3, SpectrumSign::Positive).unwrap();
                for n in 1..=3 {
                    let via_t = dirac_disk_branch(R, m, th, k, n).unwrap();
                    assert!(
                        (via_t - direct[n - 1]).abs() < 1e-10,
                        "m={m} th={th} k={k} n={n}: {via_t} vs {}",
                        direct[n - 1]
                    );
                }
            }
        }
    }

    #[test]
    fn charge_conjugation_pairs_sectors() {
        // branch (k, n) at θ  ↔  −(branch (−k−1, n) at −θ)
        for th in [-0.8, 0.3, 1.1] {
            let vt_minus = vartheta(-th).unwrap();
            for k in [-2, 0, 1] {
                for n in 1..=2 {
                    let pos = dirac_disk_branch(R, 1.0, th, k, n).unwrap();
                    let neg =
                        dirac_disk_direct(R, 1.0, vt_minus, -k - 1, n, SpectrumSign::Negative).unwrap();
                    assert!((pos + neg[n - 1]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn chiral_pairing_with_reflected_angle() {
        let th: f64 = 0.5;
        let vt_reflected = boundary_ratio(std::f64::consts::PI - th).unwrap();
        assert!(vt_reflected < 0.0);
        for k in [-1, 0, 2] {
            let neg = dirac_disk_direct(R, -1.0, vt_reflected, k, 2, SpectrumSign::Negative).unwrap();
            for n in 1..=2 {
                let pos = dirac_disk_branch(R, 1.0, th, k, n).unwrap();
                assert!((pos + neg[n - 1]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn zigzag_reference_levels() {
        let plus = zigzag_levels(R, 1.0, SpectrumSign::Positive, 4).unwrap();
        assert_eq!(plus.flat, 1.0);
        assert_eq!(plus.first_nonnegative(), 1.0);
        let minus = zigzag_levels(R, 1.0, SpectrumSign::Negative, 4).unwrap();
        assert_eq!(minus.flat, -1.0);
        assert!((minus.first_nonnegative() - 1.563904).abs() < 1e-6);
        assert_eq!(minus.levels[0].0, 0);
        assert_eq!(minus.levels[1].0, 1);
        let massless = zigzag_levels(R, 0.0, SpectrumSign::Negative, 2).unwrap();
        assert_eq!(massless.flat, 0.0);
        assert_eq!(zigzag_levels(R, 0.0, SpectrumSign::Positive, 2).unwrap().flat, 0.0);
    }

    #[test]
    fn curves_are_consistent_and_ordered() {
        let lam = dirichlet_disk_first(R).unwrap();
        let grid: Vec<f64> = (0..12).map(|i| 0.05 * (400f64).powf(i as f64 / 11.0)).collect();
        let curves = disk_curves(R, 0.0, &grid, &[(1, 1), (0, 1), (-1, 1), (0, 2)], DiskOperator::Robin)
            .unwrap();
        assert_eq!(
            curves.iter().map(|b| (b.k, b.n)).collect::<Vec<_>>(),
            vec![(-1, 1), (0, 1), (0, 2), (1, 1)]
        );
        for b in &curves {
            for v in &b.values {
                assert!(*v > 0.0);
            }
            if b.n == 1 && b.k == 0 {
                for v in &b.values {
                    assert!(*v < lam);
                }
            }
        }
        let single = disk_curves(R, 1.0, &[0.3], &[(0, 1)], DiskOperator::Dirac(SpectrumSign::Positive))
            .unwrap();
        assert!((single[0].values[0] - dirac_disk_first(R, 1.0, 0.3).unwrap()).abs() < 1e-13);
        let one = disk_curves(R, 0.0, &[0.7], &[(0, 1)], DiskOperator::Robin).unwrap();
        assert!((one[0].values[0] - robin_disk_first(R, 0.7).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn csv_layout() {
        let b = DiskBranch { k: -1, n: 2, params: vec![0.5], values: vec![1.25], mass: 0.0 };
        let csv = branches_to_csv(&[b]);
        assert_eq!(csv, "param,k,n,value\n5.00000000000000e-1,-1,2,1.25000000000000e0\n");
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(robin_disk_eigs(R, 0.0, 0, 1).is_err());
        assert!(robin_disk_eigs(R, 1.0, 41, 1).is_err());
        assert!(robin_disk_eigs(-1.0, 1.0, 0, 1).is_err());
        assert!(dirac_disk_first(R, -1.0, 0.0).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn robin_first_increases_in_a(r in 0.5f64..4.0, a in 1e-3f64..1e3, factor in 1.01f64..3.0) {
            let lo = robin_disk_first(r, a).unwrap();
            let hi = robin_disk_first(r, a * factor).unwrap();
            proptest::prop_assert!(lo < hi);
            proptest::prop_assert!(hi < dirichlet_disk_first(r).unwrap());
        }

        #[test]
        fn dirac_first_decreases_in_theta(m in 0.0f64..2.0, t in -1.4f64..1.3, dt in 0.01f64..0.2) {
            let a = dirac_disk_first(2.0, m, t).unwrap();
            let b = dirac_disk_first(2.0, m, t + dt).unwrap();
            proptest::prop_assert!(b < a);
            proptest::prop_assert!(b > m);
        }
    }
}
