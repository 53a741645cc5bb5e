//! Method of particular solutions for the first ∂̄-Robin, Dirichlet and
//! Dirac eigenvalues on smooth star-shaped domains.
//!
//! Trial functions are `u_k = J_k(c r) e^{ikφ}` about the area centroid with
//! `c = √μ`, `|k| <= K`. With `∂_z̄ u_k = −(c/2) J_{k+1} e^{i(k+1)φ}` the
//! boundary operator `2ν̄∂_z̄u + au` is evaluated in closed form. Eigenvalues
//! are the values of `μ` where the boundary block of the stacked
//! boundary/interior matrix loses rank relative to the interior block.

use std::f64::consts::{FRAC_PI_2, PI};

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{build_grid, domain_quadrature, BoundaryCurve, QuadratureGrid};
use crate::param_map::{boundary_ratio, vartheta, MonotoneFn, Monotonicity};
use crate::roots::{brent, brent_min};
use crate::special::{bessel_j_upto, signed_order, zeros_of};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Fourier–Bessel functions `J_k(c r) e^{ikφ}`, `k = −K..=K`, about `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelmholtzBasis {
    pub center: Complex64,
    pub order: usize,
    pub c: f64,
}

impl HelmholtzBasis {
    pub fn new(center: Complex64, order: usize, mu: f64) -> Self {
        Self { center, order, c: mu.sqrt() }
    }

    pub fn len(&self) -> usize {
        2 * self.order + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn orders(&self) -> impl Iterator<Item = i32> {
        let k = self.order as i32;
        -k..=k
    }

    /// `J_k(cr)e^{ikφ}` for `k = lo..=hi` (any signed range within `±(K+1)`).
    fn shifted(&self, z: Complex64, lo: i32, hi: i32) -> Vec<Complex64> {
        let d = z - self.center;
        let r = d.norm();
        let top = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
        let t = bessel_j_upto(top, self.c * r);
        let e = if r > 0.0 { d / r } else { Complex64::new(1.0, 0.0) };
        let e_inv = e.conj();
        (lo..=hi)
            .map(|k| {
                let phase = if k >= 0 { e.powi(k) } else { e_inv.powi(-k) };
                phase * signed_order(&t, k)
            })
            .collect()
    }

    /// `u_k(z)` for all `k`.
    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        let k = self.order as i32;
        self.shifted(z, -k, k)
    }

    /// `∂_z̄ u_k(z) = −(c/2) J_{k+1} e^{i(k+1)φ}`.
    pub fn dbar(&self, z: Complex64) -> Vec<Complex64> {
        let k = self.order as i32;
        let h = -0.5 * self.c;
        self.shifted(z, -k + 1, k + 1).into_iter().map(|v| v * h).collect()
    }

    /// `∂_z u_k(z) = (c/2) J_{k−1} e^{i(k−1)φ}`.
    pub fn dz(&self, z: Complex64) -> Vec<Complex64> {
        let k = self.order as i32;
        let h = 0.5 * self.c;
        self.shifted(z, -k - 1, k - 1).into_iter().map(|v| v * h).collect()
    }

    /// `Σ x_k u_k(z)`.
    pub fn combine(&self, coeffs: &[Complex64], z: Complex64) -> Complex64 {
        self.eval(z).iter().zip(coeffs).map(|(u, x)| u * x).sum()
    }
}

/// Which boundary operator the rows enforce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    /// `2ν̄∂_z̄u + au = 0`.
    Robin(f64),
    /// `u = 0`.
    Dirichlet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MpsConfig {
    /// Highest angular order `K`.
    pub order: usize,
    /// Boundary nodes `M`; raised to `4(2K+1)` when smaller.
    pub nodes: usize,
    pub seed: u64,
    /// Acceptance threshold on `σ_min` at a refined dip.
    pub tol: f64,
    pub scan_points: usize,
    /// How many `K → K+8` escalations to try before giving up.
    pub escalations: usize,
}

impl Default for MpsConfig {
    fn default() -> Self {
        Self { order: 16, nodes: 0, seed: 7, tol: 1e-8, scan_points: 64, escalations: 5 }
    }
}

impl MpsConfig {
    pub fn with_order(order: usize, nodes: usize) -> Self {
        Self { order, nodes, ..Self::default() }
    }

    pub fn effective_nodes(&self) -> usize {
        let need = 4 * (2 * self.order + 1);
        let m = self.nodes.max(need).max(64);
        m + m % 2
    }

    fn escalated(&self) -> Self {
        let order = self.order + 8;
        Self { order, nodes: self.nodes.max(4 * (2 * order + 1)), escalations: self.escalations - 1, ..self.clone() }
    }
}

/// An accepted eigenvalue with its trial-space eigenfunction.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    pub eigenvalue: f64,
    pub condition: BoundaryCondition,
    pub basis: HelmholtzBasis,
    /// Coefficients over `k = −K..=K`, normalized to `‖u‖_{L²(Ω)} = 1`.
    pub coeffs: Vec<Complex64>,
    /// Boundary-condition residual in `L²(∂Ω)` relative to `‖u‖_{L²(Ω)}`.
    pub residual: f64,
    pub sigma_min: f64,
    pub order: usize,
    pub nodes: usize,
}

impl EigenSolution {
    /// CSV row `a_or_theta,eigenvalue,residual,sigma_min,K,M`.
    pub fn csv_row(&self, param: f64) -> String {
        format!(
            "{:.14e},{:.14e},{:.6e},{:.6e},{},{}",
            param, self.eigenvalue, self.residual, self.sigma_min, self.order, self.nodes
        )
    }
}

pub const SOLUTION_CSV_HEADER: &str = "a_or_theta,eigenvalue,residual,sigma_min,K,M";

/// The MPS discretization of one domain at fixed `K`, `M` and seed.
#[derive(Debug, Clone)]
pub struct MpsSolver {
    curve: BoundaryCurve,
    config: MpsConfig,
    grid: QuadratureGrid,
    center: Complex64,
    inradius: f64,
    area: f64,
    perimeter: f64,
    interior: Vec<Complex64>,
}

impl MpsSolver {
    pub fn new(curve: &BoundaryCurve, config: MpsConfig) -> Result<Self> {
        let nodes = config.effective_nodes();
        let grid = build_grid(curve, nodes)?;
        let center = grid.centroid();
        let inradius = grid.distance_to_boundary(center);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let count = 2 * (2 * config.order + 1);
        let interior = (0..count)
            .map(|_| {
                let r = 0.5 * inradius * rng.random::<f64>().sqrt();
                let t = 2.0 * PI * rng.random::<f64>();
                center + Complex64::from_polar(r, t)
            })
            .collect();
        Ok(Self {
            curve: curve.clone(),
            area: grid.area(),
            perimeter: grid.perimeter(),
            config: MpsConfig { nodes, ..config },
            grid,
            center,
            inradius,
            interior,
        })
    }

    /// A solver whose `K` already suffices for the Dirichlet problem and for
    /// the Robin problem at `a = 1`, so later calls rarely need to escalate.
    pub fn calibrated(curve: &BoundaryCurve, config: MpsConfig) -> Result<Self> {
        let mut solver = Self::new(curve, config)?;
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Robin(1.0)] {
            let sol = solver.solve_first(bc)?;
            if sol.order > solver.config.order {
                let next = MpsConfig { order: sol.order, nodes: sol.nodes, ..solver.config.clone() };
                solver = Self::new(curve, next)?;
            }
        }
        Ok(solver)
    }

    /// The same discretization with `K` and `M` doubled.
    pub fn refined(&self) -> Result<Self> {
        let order = 2 * self.config.order;
        Self::new(&self.curve, MpsConfig { order, nodes: 2 * self.config.nodes, ..self.config.clone() })
    }

    pub fn config(&self) -> &MpsConfig {
        &self.config
    }

    pub fn curve(&self) -> &BoundaryCurve {
        &self.curve
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn inradius(&self) -> f64 {
        self.inradius
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn basis(&self, mu: f64) -> HelmholtzBasis {
        HelmholtzBasis::new(self.center, self.config.order, mu)
    }

    fn boundary_row(&self, basis: &HelmholtzBasis, bc: BoundaryCondition, j: usize) -> Vec<Complex64> {
        let z = self.grid.points[j];
        let sw = self.grid.weights[j].sqrt();
        let u = basis.eval(z);
        match bc {
            BoundaryCondition::Dirichlet => u.into_iter().map(|v| v * sw).collect(),
            BoundaryCondition::Robin(a) => {
                let nu_bar = self.grid.normals[j].conj();
                let d = basis.dbar(z);
                u.iter().zip(&d).map(|(u, d)| (2.0 * nu_bar * d + a * u) * sw).collect()
            }
        }
    }

    /// Column-scaled stacked matrix `[boundary; interior]` with its scales.
    fn stacked(&self, basis: &HelmholtzBasis, bc: BoundaryCondition) -> (Mat<Complex64>, Vec<f64>) {
        let nb = self.grid.len();
        let rows: Vec<Vec<Complex64>> = (0..nb)
            .map(|j| self.boundary_row(basis, bc, j))
            .chain(self.interior.iter().map(|z| basis.eval(*z)))
            .collect();
        let n = basis.len();
        let scales: Vec<f64> = (0..n)
            .map(|c| {
                let s = rows.iter().map(|r| r[c].norm_sqr()).sum::<f64>().sqrt();
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        let a = Mat::from_fn(rows.len(), n, |r, c| rows[r][c] / scales[c]);
        (a, scales)
    }

    fn decompose(
        &self,
        bc: BoundaryCondition,
        mu: f64,
        want_vector: bool,
    ) -> Result<(f64, Option<Vec<Complex64>>)> {
        let basis = self.basis(mu);
        let (a, scales) = self.stacked(&basis, bc);
        let nb = self.grid.len();
        let n = basis.len();
        let svd = a.thin_svd().map_err(|_| Error::BasisDegenerate)?;
        let s = svd.S().column_vector();
        let s: Vec<f64> = (0..n).map(|i| s[i].re).collect();
        let smax = s.iter().cloned().fold(0.0, f64::max);
        let keep: Vec<usize> = (0..n).filter(|&i| s[i] > 1e-12 * smax).collect();
        if keep.len() < 2 {
            return Err(Error::BasisDegenerate);
        }
        let u = svd.U();
        let ub = Mat::from_fn(nb, keep.len(), |r, c| u[(r, keep[c])]);
        if !want_vector {
            let sv = ub.singular_values().map_err(|_| Error::BasisDegenerate)?;
            return Ok((sv.into_iter().fold(f64::INFINITY, f64::min), None));
        }
        let inner = ub.thin_svd().map_err(|_| Error::BasisDegenerate)?;
        let si: Vec<f64> = inner.S().column_vector().iter().map(|v| v.re).collect();
        let imin = (0..keep.len()).fold(0, |best, i| if si[i] < si[best] { i } else { best });
        let vi = inner.V();
        let v = svd.V();
        // y in the kept U-coordinates, then x = V Σ⁻¹ y, then undo column scaling
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (c, &kc) in keep.iter().enumerate() {
            let y = vi[(c, imin)] / s[kc];
            for (col, xv) in x.iter_mut().enumerate() {
                *xv += v[(col, kc)] * y;
            }
        }
        for (xv, sc) in x.iter_mut().zip(&scales) {
            *xv /= *sc;
        }
        Ok((si[imin], Some(x)))
    }

    /// Smallest singular value of the boundary block relative to the
    /// interior block at `μ`.
    pub fn sigma_min(&self, bc: BoundaryCondition, mu: f64) -> Result<f64> {
        if !(mu > 0.0) {
            return Err(Error::Domain(format!("mu must be positive, got {mu}")));
        }
        Ok(self.decompose(bc, mu, false)?.0)
    }

    /// `σ_min` on `points` equispaced values covering `window`.
    pub fn sigma_min_scan(
        &self,
        bc: BoundaryCondition,
        window: (f64, f64),
        points: usize,
    ) -> Result<Vec<(f64, f64)>> {
        let (lo, hi) = window;
        if !(lo > 0.0 && hi > lo) || points < 2 {
            return Err(Error::Domain(format!("bad scan window ({lo}, {hi}) with {points} points")));
        }
        scan(|mu| self.sigma_min(bc, mu), lo, hi, points)
    }

    fn window(&self, bc: BoundaryCondition) -> (f64, f64) {
        let j = zeros_of(0)[0];
        let upper_dirichlet = (j / self.inradius).powi(2);
        match bc {
            BoundaryCondition::Dirichlet => (0.9 * PI * j * j / self.area, 1.05 * upper_dirichlet),
            BoundaryCondition::Robin(a) => {
                let hi = (a * self.perimeter / self.area).min(upper_dirichlet);
                (1e-3 * hi, 1.05 * hi)
            }
        }
    }

    /// Scans `f` on `[lo, hi]`, refines local minima of `f²` in increasing
    /// order and returns the first one below tolerance, or else the lowest
    /// refined floor. A minimum at the left edge triggers a rescan toward
    /// `bottom`.
    fn first_dip<F>(&self, f: F, lo: f64, hi: f64, bottom: f64) -> Result<std::result::Result<(f64, f64), f64>>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        let (mut lo, mut hi) = (lo, hi);
        let mut floor = f64::INFINITY;
        let mut rescanned = false;
        loop {
            let pts = scan(&f, lo, hi, self.config.scan_points)?;
            let n = pts.len();
            for i in 0..n {
                let s = pts[i].1;
                let left = if i == 0 { f64::INFINITY } else { pts[i - 1].1 };
                let right = if i + 1 == n { f64::INFINITY } else { pts[i + 1].1 };
                if !(s <= left && s <= right) {
                    continue;
                }
                let a = pts[i.saturating_sub(1)].0;
                let b = pts[(i + 1).min(n - 1)].0;
                let (x, s2) = brent_min(|x| Ok(f(x)?.powi(2)), a, pts[i].0, b, 1e-13, 0.0)?;
                let s = s2.sqrt();
                if s < self.config.tol {
                    return Ok(Ok((x, s)));
                }
                floor = floor.min(s);
            }
            // one look below the window; further down the matrix degenerates
            if pts[0].1 < pts[1].1 && !rescanned {
                rescanned = true;
                hi = lo;
                lo = bottom + 1e-3 * (lo - bottom);
                continue;
            }
            return Ok(Err(floor));
        }
    }

    fn escalate(&self, floor: f64) -> Result<MpsSolver> {
        if self.config.escalations == 0 {
            return Err(Error::EigenNotFound(format!(
                "best sigma_min {floor:.3e} at K = {}, M = {}",
                self.config.order, self.config.nodes
            )));
        }
        MpsSolver::new(&self.curve, self.config.escalated())
    }

    fn solve_first(&self, bc: BoundaryCondition) -> Result<EigenSolution> {
        let (lo, hi) = self.window(bc);
        match self.first_dip(|mu| self.sigma_min(bc, mu), lo, hi, 0.0)? {
            Ok((mu, sigma)) => self.solution_at(bc, mu, sigma),
            Err(floor) => self.escalate(floor)?.solve_first(bc),
        }
    }

    fn solution_at(&self, bc: BoundaryCondition, mu: f64, sigma: f64) -> Result<EigenSolution> {
        let (_, x) = self.decompose(bc, mu, true)?;
        let mut coeffs = x.expect("requested vector");
        let basis = self.basis(mu);
        let norm = self.interior_norm(&basis, &coeffs);
        for c in coeffs.iter_mut() {
            *c /= norm;
        }
        let residual = self.boundary_residual(&basis, bc, &coeffs);
        Ok(EigenSolution {
            eigenvalue: mu,
            condition: bc,
            basis,
            coeffs,
            residual,
            sigma_min: sigma,
            order: self.config.order,
            nodes: self.config.nodes,
        })
    }

    fn interior_norm(&self, basis: &HelmholtzBasis, coeffs: &[Complex64]) -> f64 {
        let (pts, wts) = domain_quadrature(&self.curve, self.grid.len(), 32);
        pts.iter()
            .zip(&wts)
            .map(|(z, w)| basis.combine(coeffs, *z).norm_sqr() * w)
            .sum::<f64>()
            .sqrt()
    }

    fn boundary_residual(&self, basis: &HelmholtzBasis, bc: BoundaryCondition, coeffs: &[Complex64]) -> f64 {
        (0..self.grid.len())
            .map(|j| {
                let row = self.boundary_row(basis, bc, j);
                row.iter().zip(coeffs).map(|(r, x)| r * x).sum::<Complex64>().norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }

    /// `μ_Ω(a)`.
    pub fn mu_first(&self, a: f64) -> Result<EigenSolution> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Domain(format!("robin parameter must be positive, got {a}")));
        }
        self.solve_first(BoundaryCondition::Robin(a))
    }

    /// `Λ_Ω`.
    pub fn dirichlet_first(&self) -> Result<EigenSolution> {
        self.solve_first(BoundaryCondition::Dirichlet)
    }

    /// Follows the dip of `σ_min(Robin(a), ·)` near `guess` as `a` moves.
    fn track(&self, a: f64, guess: f64) -> Result<(f64, f64)> {
        let bc = BoundaryCondition::Robin(a);
        let w = 1e-4 * guess;
        let (mu, s2) = brent_min(|mu| Ok(self.sigma_min(bc, mu)?.powi(2)), guess - w, guess, guess + w, 1e-14, 0.0)?;
        let s = s2.sqrt();
        if s >= self.config.tol {
            return Err(Error::EigenNotFound(format!("lost the branch at a = {a} (sigma_min {s:.3e})")));
        }
        Ok((mu, s))
    }

    /// `λ_Ω(θ)` for `m >= 0`: the root of `λ² − m² = μ_Ω((λ + m)ϑ(θ))` in
    /// `(m, √(Λ_Ω + m²))`. `lambda_dirichlet` is `Λ_Ω` (computed when `None`).
    ///
    /// The smallest `λ` at which the Robin matrix at `(a, μ) = T(θ, λ)` is
    /// singular gives a candidate; `mu_first` at its `a` must return the same
    /// eigenvalue, and Brent's method on a tight bracket around it, with
    /// `μ_Ω` continued along its branch, gives the root.
    pub fn lambda_first(&self, m: f64, theta: f64, lambda_dirichlet: Option<f64>) -> Result<DiracEigen> {
        if !(m >= 0.0) {
            return Err(Error::Domain(format!("lambda_first needs m >= 0, got {m}")));
        }
        let vt = vartheta(theta)?;
        let big = match lambda_dirichlet {
            Some(v) => v,
            None => self.dirichlet_first()?.eigenvalue,
        };
        let top = (big + m * m).sqrt();
        let sigma_at = |lambda: f64| {
            self.sigma_min(BoundaryCondition::Robin((lambda + m) * vt), (lambda - m) * (lambda + m))
        };
        // constants give μ_Ω(a) <= a|∂Ω|/|Ω|, hence λ − m <= ϑ|∂Ω|/|Ω|
        let span = (top - m).min(vt * self.perimeter / self.area);
        let (lo, hi) = (m + 0.02 * span, m + 1.01 * span);
        let candidate = match self.first_dip(sigma_at, lo, hi, m)? {
            Ok((l, _)) => l,
            Err(floor) => return self.escalate(floor)?.lambda_first(m, theta, Some(big)),
        };
        let anchor = self.mu_first((candidate + m) * vt)?;
        let mu_c = (candidate - m) * (candidate + m);
        if (anchor.eigenvalue - mu_c).abs() > 1e-6 * mu_c {
            return Err(Error::EigenNotFound(format!(
                "dirac candidate {candidate} is not on the first robin branch (mu {} vs {mu_c})",
                anchor.eigenvalue
            )));
        }
        let h = |lambda: f64| -> Result<f64> {
            Ok((lambda - m) * (lambda + m) - self.track((lambda + m) * vt, anchor.eigenvalue)?.0)
        };
        let delta = 1e-6 * (candidate - m);
        let (l, r) = (candidate - delta, candidate + delta);
        let lambda = brent(h, l, r, h(l)?, h(r)?, 1e-15 * candidate)?;
        let a = (lambda + m) * vt;
        let (mu, s) = self.track(a, anchor.eigenvalue)?;
        let robin = self.solution_at(BoundaryCondition::Robin(a), mu, s)?;
        Ok(DiracEigen { lambda, theta, mass: m, robin })
    }
}

fn scan<F>(f: F, lo: f64, hi: f64, points: usize) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    (0..points)
        .into_par_iter()
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
            Ok((x, f(x)?))
        })
        .collect()
}

/// `λ_Ω(θ)` with the ∂̄-Robin solution it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracEigen {
    pub lambda: f64,
    pub theta: f64,
    pub mass: f64,
    pub robin: EigenSolution,
}

/// `σ_min` scan on a fresh solver with the given `K`, `M`.
pub fn sigma_min_scan(
    domain: &BoundaryCurve,
    a: f64,
    window: (f64, f64),
    grid_points: usize,
    order: usize,
    nodes: usize,
) -> Result<Vec<(f64, f64)>> {
    if nodes < 4 * (2 * order + 1) {
        return Err(Error::Domain(format!("need M >= 4(2K+1) = {}, got {nodes}", 4 * (2 * order + 1))));
    }
    MpsSolver::new(domain, MpsConfig::with_order(order, nodes))?.sigma_min_scan(
        BoundaryCondition::Robin(a),
        window,
        grid_points,
    )
}

pub fn mu_first(domain: &BoundaryCurve, a: f64, order: usize, nodes: usize) -> Result<EigenSolution> {
    MpsSolver::new(domain, MpsConfig::with_order(order, nodes))?.mu_first(a)
}

pub fn dirichlet_first(domain: &BoundaryCurve, order: usize, nodes: usize) -> Result<EigenSolution> {
    MpsSolver::new(domain, MpsConfig::with_order(order, nodes))?.dirichlet_first()
}

pub fn lambda_first(domain: &BoundaryCurve, m: f64, theta: f64, order: usize, nodes: usize) -> Result<f64> {
    Ok(MpsSolver::new(domain, MpsConfig::with_order(order, nodes))?
        .lambda_first(m, theta, None)?
        .lambda)
}

/// The spinor `(u, v)` with `v = (−2i/(λ+m)) ∂_z̄u`, stored as coefficients
/// over `u_k` and over the shifted functions `J_{k+1}e^{i(k+1)φ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracPair {
    pub basis: HelmholtzBasis,
    pub lambda: f64,
    pub mass: f64,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
}

impl DiracPair {
    pub fn u_at(&self, z: Complex64) -> Complex64 {
        self.basis.combine(&self.u, z)
    }

    pub fn v_at(&self, z: Complex64) -> Complex64 {
        let k = self.basis.order as i32;
        self.basis.shifted(z, -k + 1, k + 1).iter().zip(&self.v).map(|(b, y)| b * y).sum()
    }
}

pub fn reconstruct_dirac_pair(solution: &EigenSolution, m: f64, lambda: f64) -> Result<DiracPair> {
    if !(lambda > m) {
        return Err(Error::Domain(format!("need lambda > m, got lambda={lambda}, m={m}")));
    }
    let basis = solution.basis;
    // −2i/(λ+m) · (−c/2) = i c/(λ+m)
    let f = I * basis.c / (lambda + m);
    Ok(DiracPair {
        basis,
        lambda,
        mass: m,
        u: solution.coeffs.clone(),
        v: solution.coeffs.iter().map(|x| x * f).collect(),
    })
}

/// Discrete residuals of the component equations of the Dirac problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracResiduals {
    /// `‖−2i∂_z v − (λ−m)u‖` over the interior cloud, by central differences.
    pub first: f64,
    /// `‖−2i∂_z̄ u − (λ+m)v‖` over the interior cloud, by central differences.
    pub second: f64,
    /// `max |v − iϑνu|` over the boundary nodes.
    pub boundary: f64,
    /// `λ∫|u|² − λ∫|v|² − ϑ∫_∂Ω|u|²` (meaningful for `m = 0`).
    pub energy: f64,
}

/// Wirtinger derivatives of `f` at `z` by central differences with step `h`.
fn wirtinger<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64, h: f64) -> (Complex64, Complex64) {
    let fx = (f(z + h) - f(z - h)) / (2.0 * h);
    let fy = (f(z + I * h) - f(z - I * h)) / (2.0 * h);
    (0.5 * (fx - I * fy), 0.5 * (fx + I * fy))
}

pub fn dirac_residuals(pair: &DiracPair, solver: &MpsSolver, theta: f64) -> Result<DiracResiduals> {
    let vt = boundary_ratio(theta)?;
    let (lam, m) = (pair.lambda, pair.mass);
    let u = |z| pair.u_at(z);
    let v = |z| pair.v_at(z);
    let h = 1e-4 * solver.inradius;
    let (mut first, mut second) = (0.0f64, 0.0f64);
    for &z in &solver.interior {
        let (dz_v, _) = wirtinger(&v, z, h);
        let (_, dbar_u) = wirtinger(&u, z, h);
        first = first.max((-2.0 * I * dz_v - (lam - m) * u(z)).norm());
        second = second.max((-2.0 * I * dbar_u - (lam + m) * v(z)).norm());
    }
    let grid = &solver.grid;
    let mut boundary = 0.0f64;
    let mut trace = 0.0;
    for j in 0..grid.len() {
        let z = grid.points[j];
        let uz = u(z);
        boundary = boundary.max((v(z) - I * vt * grid.normals[j] * uz).norm());
        trace += uz.norm_sqr() * grid.weights[j];
    }
    let (pts, wts) = domain_quadrature(&solver.curve, grid.len(), 32);
    let (mut nu, mut nv) = (0.0, 0.0);
    for (z, w) in pts.iter().zip(&wts) {
        nu += u(*z).norm_sqr() * w;
        nv += v(*z).norm_sqr() * w;
    }
    Ok(DiracResiduals { first, second, boundary, energy: lam * nu - lam * nv - vt * trace })
}

/// `a ↦ μ_Ω(a)` as a monotone evaluator.
pub struct RobinCurve<'a> {
    pub solver: &'a MpsSolver,
    /// `Λ_Ω`, the supremum of the range.
    pub dirichlet: f64,
}

impl MonotoneFn for RobinCurve<'_> {
    fn eval(&self, a: f64) -> Result<f64> {
        Ok(self.solver.mu_first(a)?.eigenvalue)
    }
    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
    fn range(&self) -> (f64, f64) {
        (0.0, self.dirichlet)
    }
    fn direction(&self) -> Monotonicity {
        Monotonicity::Increasing
    }
}

/// `θ ↦ λ_Ω(θ)` at fixed `m >= 0` as a monotone evaluator.
pub struct DiracCurve<'a> {
    pub solver: &'a MpsSolver,
    pub mass: f64,
    pub dirichlet: f64,
}

impl MonotoneFn for DiracCurve<'_> {
    fn eval(&self, theta: f64) -> Result<f64> {
        Ok(self.solver.lambda_first(self.mass, theta, Some(self.dirichlet))?.lambda)
    }
    fn domain(&self) -> (f64, f64) {
        (-FRAC_PI_2, FRAC_PI_2)
    }
    fn range(&self) -> (f64, f64) {
        (self.mass, (self.dirichlet + self.mass * self.mass).sqrt())
    }
    fn direction(&self) -> Monotonicity {
        Monotonicity::Decreasing
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk_spectrum::{dirac_disk_first, dirichlet_disk_first, robin_disk_first};
    use crate::geometry::normalize_area;

    fn disk_solver() -> MpsSolver {
        MpsSolver::new(&BoundaryCurve::disk(2.0).unwrap(), MpsConfig::with_order(10, 0)).unwrap()
    }

    #[test]
    fn dbar_identity_against_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let basis = HelmholtzBasis::new(Complex64::new(0.3, -0.2), 5, 1.7);
        for _ in 0..100 {
            let z = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
            let each = |k: usize| move |w: Complex64| basis.eval(w)[k];
            let dbar = basis.dbar(z);
            let dz = basis.dz(z);
            for k in 0..basis.len() {
                let (fd_z, fd_zbar) = wirtinger(&each(k), z, 1e-5);
                let scale = dbar[k].norm().max(dz[k].norm()).max(1e-3);
                assert!((fd_zbar - dbar[k]).norm() < 1e-6 * scale, "dbar k={k}");
                assert!((fd_z - dz[k]).norm() < 1e-6 * scale, "dz k={k}");
            }
        }
    }

    #[test]
    fn basis_solves_helmholtz() {
        let basis = HelmholtzBasis::new(Complex64::new(0.1, 0.4), 4, 2.3);
        let z = Complex64::new(0.7, -0.5);
        let h = 1e-3;
        let lap = |k: usize| {
            let f = |w: Complex64| basis.eval(w)[k];
            (f(z + h) + f(z - h) + f(z + I * h) + f(z - I * h) - 4.0 * f(z)) / (h * h)
        };
        for k in 0..basis.len() {
            let u = basis.eval(z)[k];
            assert!((lap(k) + 2.3 * u).norm() < 1e-5);
        }
    }

    #[test]
    fn disk_dirichlet_matches_closed_form() {
        let s = disk_solver().dirichlet_first().unwrap();
        let want = dirichlet_disk_first(2.0).unwrap();
        assert!((s.eigenvalue - want).abs() < 1e-8, "{} vs {want}", s.eigenvalue);
        assert!(s.residual < 1e-6);
    }

    #[test]
    fn disk_robin_matches_oracle() {
        let solver = disk_solver();
        for a in [0.1, 1.0, 10.0] {
            let s = solver.mu_first(a).unwrap();
            let want = robin_disk_first(2.0, a).unwrap();
            assert!((s.eigenvalue - want).abs() < 1e-8, "a={a}: {} vs {want}", s.eigenvalue);
            assert!(s.residual < 1e-6, "residual {}", s.residual);
            assert!(s.sigma_min < 1e-8);
            assert!(s.eigenvalue <= a * solver.perimeter() / solver.area() + 1e-12);
        }
    }

    #[test]
    fn scan_separates_and_dips() {
        let solver = disk_solver();
        let bc = BoundaryCondition::Robin(1.0);
        let mu = robin_disk_first(2.0, 1.0).unwrap();
        assert!(solver.sigma_min(bc, mu).unwrap() < 1e-8);
        // disk gap: the first root at a = 1 is near 0.70, the next well above 1.5
        let gap = solver.sigma_min_scan(bc, (0.05, 0.3), 12).unwrap();
        assert!(gap.iter().all(|&(_, s)| s > 1e-3));
        let coarse = solver.sigma_min_scan(bc, (0.1, 1.4), 14).unwrap();
        let fine = solver.sigma_min_scan(bc, (0.1, 1.4), 27).unwrap();
        let argmin = |v: &[(f64, f64)]| v.iter().cloned().fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a }).0;
        assert!((argmin(&coarse) - argmin(&fine)).abs() <= 0.1 + 1e-12);
    }

    #[test]
    fn disk_dirac_matches_oracle_and_pair_checks() {
        let solver = disk_solver();
        let big = dirichlet_disk_first(2.0).unwrap();
        let d = solver.lambda_first(0.0, 0.0, Some(big)).unwrap();
        let want = dirac_disk_first(2.0, 0.0, 0.0).unwrap();
        assert!((d.lambda - want).abs() < 1e-7, "{} vs {want}", d.lambda);
        let pair = reconstruct_dirac_pair(&d.robin, 0.0, d.lambda).unwrap();
        let res = dirac_residuals(&pair, &solver, 0.0).unwrap();
        assert!(res.boundary < 1e-6, "{res:?}");
        assert!(res.first < 1e-6 && res.second < 1e-6, "{res:?}");
        assert!(res.energy.abs() < 1e-8, "{res:?}");
    }

    #[test]
    fn ellipse_properties() {
        let e = normalize_area(&BoundaryCurve::ellipse(2.0, 1.0).unwrap(), 4.0 * PI).unwrap();
        let solver = MpsSolver::new(&e, MpsConfig::with_order(20, 0)).unwrap();
        let big = solver.dirichlet_first().unwrap();
        assert!(big.eigenvalue > dirichlet_disk_first(2.0).unwrap());
        let s = solver.mu_first(1.0).unwrap();
        assert!(s.eigenvalue > robin_disk_first(2.0, 1.0).unwrap());
        assert!(s.eigenvalue < big.eigenvalue);
        assert!(s.eigenvalue <= solver.perimeter() / solver.area());
        assert!(s.residual < 1e-6);
    }
}
