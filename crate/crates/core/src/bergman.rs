//! `S_Ω = inf ∫_∂Ω |u|² / ∫_Ω |u|²` over holomorphic `u`, computed on
//! polynomials in `w = (z − z₀)/ρ` about the centroid.
//!
//! Both Gram matrices come from the boundary grid alone:
//!
//! ```text
//! A_mn = ∫_Ω w^m w̄^n dA = (ρ/(2i(n+1))) ∮ w^m w̄^{n+1} dz
//! B_mn = ∮ w^m w̄^n |dz|
//! ```

use std::f64::consts::PI;

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{build_grid, BoundaryCurve};
use crate::mps::MpsSolver;

pub const MAX_DEGREE: usize = 40;

/// Domain and boundary Gram matrices of the scaled monomials `w^0..w^N`.
#[derive(Debug, Clone)]
pub struct GramPair {
    pub degree: usize,
    pub center: Complex64,
    pub rho: f64,
    /// `A[m][n]`, row-major.
    pub a: Vec<Vec<Complex64>>,
    pub b: Vec<Vec<Complex64>>,
}

impl GramPair {
    pub fn new(curve: &BoundaryCurve, degree: usize, nodes: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::Conditioning(degree));
        }
        let grid = build_grid(curve, nodes)?;
        let center = grid.centroid();
        let rho = grid.distance_to_boundary(center);
        let n = degree + 1;
        let powers: Vec<Vec<Complex64>> = grid
            .points
            .iter()
            .map(|z| {
                let w = (z - center) / rho;
                let mut p = Vec::with_capacity(n + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=n {
                    p.push(acc);
                    acc *= w;
                }
                p
            })
            .collect();
        let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let mut b = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (j, p) in powers.iter().enumerate() {
            let dz = grid.dz[j];
            let ds = grid.weights[j];
            for m in 0..n {
                for k in 0..n {
                    a[m][k] += p[m] * p[k + 1].conj() * dz * (rho / (k + 1) as f64);
                    b[m][k] += p[m] * p[k].conj() * ds;
                }
            }
        }
        let two_i = Complex64::new(0.0, 2.0);
        for row in a.iter_mut() {
            for v in row.iter_mut() {
                *v /= two_i;
            }
        }
        Ok(Self { degree, center, rho, a, b })
    }

    /// Largest `|M_mn − conj(M_nm)|` over both matrices.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.degree + 1;
        let mut worst = 0.0f64;
        for m in 0..n {
            for k in 0..n {
                worst = worst.max((self.a[m][k] - self.a[k][m].conj()).norm());
                worst = worst.max((self.b[m][k] - self.b[k][m].conj()).norm());
            }
        }
        worst
    }
}

/// The smallest generalized eigenpair of `B w = s A w`.
#[derive(Debug, Clone, PartialEq)]
pub struct SOmega {
    pub s: f64,
    pub degree: usize,
    /// Eigenvector with `w^H A w = 1`.
    pub w: Vec<Complex64>,
    /// Coefficients of the minimizer in powers of `(z − z₀)/ρ` (`conj(w)`).
    pub coeffs: Vec<Complex64>,
    /// `max_n |s (A w)_n − (B w)_n| / ‖w^n‖_{L²(Ω)}`, i.e. tested against the
    /// normalized monomials.
    pub el_residual: f64,
}

fn to_mat(m: &[Vec<Complex64>], d: &[f64]) -> Mat<Complex64> {
    let n = m.len();
    // Hermitian part, diagonally equilibrated
    Mat::from_fn(n, n, |r, c| 0.5 * (m[r][c] + m[c][r].conj()) * (d[r] * d[c]))
}

pub fn solve_gram(pair: &GramPair) -> Result<SOmega> {
    let n = pair.degree + 1;
    let d: Vec<f64> = (0..n).map(|i| 1.0 / pair.a[i][i].re.sqrt()).collect();
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::Conditioning(pair.degree));
    }
    let a = to_mat(&pair.a, &d);
    let b = to_mat(&pair.b, &d);
    let llt = a.llt(Side::Lower).map_err(|_| Error::Conditioning(pair.degree))?;
    let l = llt.L().to_owned();
    // C = L⁻¹ B L⁻ᴴ
    let linv = lower_inverse(&l);
    let c = &linv * &b * linv.adjoint();
    let c = Mat::from_fn(n, n, |r, k| 0.5 * (c[(r, k)] + c[(k, r)].conj()));
    let eig = c.self_adjoint_eigen(Side::Lower).map_err(|_| Error::Conditioning(pair.degree))?;
    let vals = eig.S().column_vector();
    let (imin, s) = (0..n).fold((0, f64::INFINITY), |acc, i| if vals[i].re < acc.1 { (i, vals[i].re) } else { acc });
    let y = eig.U().col(imin).to_owned();
    let wh = linv.adjoint() * &y;
    // undo equilibration, then normalize against the original A
    let mut w: Vec<Complex64> = (0..n).map(|i| wh[i] * d[i]).collect();
    let quad = |m: &[Vec<Complex64>], v: &[Complex64]| -> Vec<Complex64> {
        (0..n).map(|r| (0..n).map(|k| m[r][k] * v[k]).sum()).collect()
    };
    let aw = quad(&pair.a, &w);
    let norm = w.iter().zip(&aw).map(|(x, y)| x.conj() * y).sum::<Complex64>().re.sqrt();
    for x in w.iter_mut() {
        *x /= norm;
    }
    let aw = quad(&pair.a, &w);
    let bw = quad(&pair.b, &w);
    let el_residual = (0..n).map(|i| (s * aw[i] - bw[i]).norm() * d[i]).fold(0.0, f64::max);
    Ok(SOmega { s, degree: pair.degree, coeffs: w.iter().map(|x| x.conj()).collect(), w, el_residual })
}

fn lower_inverse(l: &Mat<Complex64>) -> Mat<Complex64> {
    let n = l.nrows();
    let mut inv = Mat::<Complex64>::zeros(n, n);
    for col in 0..n {
        for r in col..n {
            let mut acc = if r == col { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            for k in col..r {
                acc -= l[(r, k)] * inv[(k, col)];
            }
            inv[(r, col)] = acc / l[(r, r)];
        }
    }
    inv
}

/// `S_Ω` restricted to polynomials of degree `<= N`.
pub fn s_omega(curve: &BoundaryCurve, degree: usize, nodes: usize) -> Result<SOmega> {
    solve_gram(&GramPair::new(curve, degree, nodes)?)
}

/// `S` against the sharp lower bound `2√(π/|Ω|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlemanReport {
    pub degree: usize,
    pub s: f64,
    pub bound: f64,
    pub margin: f64,
}

impl CarlemanReport {
    /// CSV row `N,S,bound,margin`.
    pub fn csv_row(&self) -> String {
        format!("{},{:.14e},{:.14e},{:.6e}", self.degree, self.s, self.bound, self.margin)
    }
}

pub const CARLEMAN_CSV_HEADER: &str = "N,S,bound,margin";

pub fn carleman_check(curve: &BoundaryCurve, degree: usize, nodes: usize) -> Result<CarlemanReport> {
    let pair = GramPair::new(curve, degree, nodes)?;
    let area = pair.a[0][0].re;
    let s = solve_gram(&pair)?.s;
    let bound = 2.0 * (PI / area).sqrt();
    Ok(CarlemanReport { degree, s, bound, margin: s - bound })
}

/// Extrapolated `lim_{a↓0} μ_Ω(a)/a` against `S_Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeReport {
    pub samples: Vec<(f64, f64)>,
    pub limit: f64,
    pub s_omega: f64,
    /// `|limit − S_Ω| / S_Ω`.
    pub discrepancy: f64,
}

/// Value at `0` of the interpolating polynomial through `(x_i, y_i)`.
pub fn neville_at_zero(points: &[(f64, f64)]) -> f64 {
    let x: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut p: Vec<f64> = points.iter().map(|p| p.1).collect();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (x[i], x[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

pub fn slope_check(solver: &MpsSolver, a_small: &[f64], degree: usize, nodes: usize) -> Result<SlopeReport> {
    if a_small.len() < 2 || a_small.iter().any(|&a| !(a > 0.0 && a <= 1e-2)) {
        return Err(Error::Domain("slope_check needs at least two a values in (0, 1e-2]".into()));
    }
    let samples = a_small
        .iter()
        .map(|&a| Ok((a, solver.mu_first(a)?.eigenvalue / a)))
        .collect::<Result<Vec<_>>>()?;
    let limit = neville_at_zero(&samples);
    let s = s_omega(solver.curve(), degree, nodes)?.s;
    Ok(SlopeReport { samples, limit, s_omega: s, discrepancy: (limit - s).abs() / s })
}
