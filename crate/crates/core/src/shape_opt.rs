//! Faber–Krahn comparisons against the disk of equal area.
//!
//! Sweeps evaluate `μ_Ω(a) − μ_D(a)` and `λ_Ω(θ) − λ_D(θ)` on fixed grids and
//! label every point. A positive margin only *supports* the inequality.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bergman::{s_omega, solve_gram, GramPair};
use crate::disk_spectrum::{
    dirac_disk_direct, dirac_disk_first, dirichlet_disk_first, fmt15, robin_disk_first, SpectrumSign,
};
use crate::error::{Error, Result};
use crate::geometry::{build_grid, domain_quadrature, normalize_area, BoundaryCurve};
use crate::mps::{DiracCurve, MpsSolver, RobinCurve};
use crate::param_map::{boundary_ratio, neg_mass_cross, pos_mass_mirror, transfer_a, transfer_theta, vartheta};

/// Margins within this band are inconclusive.
pub const VERDICT_TOL: f64 = 1e-7;

/// Relative area mismatch tolerated between `Ω` and the reference disk.
pub const AREA_TOL: f64 = 1e-10;

/// Bergman degree used for `S_Ω` in sweep diagnostics.
pub const SWEEP_DEGREE: usize = 30;

const SWEEP_BERGMAN_NODES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn of(margin: f64) -> Self {
        if margin > VERDICT_TOL {
            Verdict::Pass
        } else if margin < -VERDICT_TOL {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// The log-spaced `a` grid `10^{-2}, …, 10^{2}` (nine points).
pub fn standard_a_grid() -> Vec<f64> {
    (0..9).map(|i| 10f64.powf(-2.0 + 0.5 * i as f64)).collect()
}

pub const STANDARD_THETA_GRID: [f64; 5] = [-1.4, -0.7, 0.0, 0.7, 1.4];

/// Comparison family at area `4π`: cos-3 and cos-4 perturbations with
/// `ε ∈ {0.05, 0.1, 0.2}` and ellipses with aspect `{1.2, 2, 3}`.
pub fn test_family() -> Result<Vec<BoundaryCurve>> {
    let mut out = Vec::new();
    for mode in [3, 4] {
        for eps in [0.05, 0.1, 0.2] {
            out.push(normalize_area(&BoundaryCurve::cosine_perturbation(1.0, mode, eps)?, 4.0 * PI)?);
        }
    }
    for aspect in [1.2, 2.0, 3.0] {
        out.push(normalize_area(&BoundaryCurve::ellipse(aspect, 1.0)?, 4.0 * PI)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub param: f64,
    pub omega: f64,
    pub disk: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

impl SweepPoint {
    fn new(param: f64, omega: f64, disk: f64) -> Self {
        let margin = omega - disk;
        Self { param, omega, disk, margin, verdict: Verdict::of(margin) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub domain: String,
    /// `mu` or `lambda(m=…)`.
    pub quantity: String,
    pub points: Vec<SweepPoint>,
    /// Named asymptotic diagnostics in insertion order.
    pub diagnostics: Vec<(String, f64)>,
    pub order: usize,
    pub nodes: usize,
}

pub const SWEEP_CSV_HEADER: &str = "domain,param,value_omega,value_disk,margin,verdict";

impl SweepReport {
    /// `fail` if any point fails, `pass` if all pass, else `inconclusive`.
    pub fn verdict(&self) -> Verdict {
        if self.points.iter().any(|p| p.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.points.iter().all(|p| p.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn diagnostic(&self, name: &str) -> Option<f64> {
        self.diagnostics.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    /// Data rows without the header.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&format!(
                "\"{}\",{},{},{},{},{}\n",
                self.domain,
                fmt15(p.param),
                fmt15(p.omega),
                fmt15(p.disk),
                fmt15(p.margin),
                p.verdict
            ));
        }
        out
    }

    /// Plain-text summary block, one `key: value` per line inside braces.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{{\n  domain: \"{}\"\n  quantity: \"{}\"\n  K: {}\n  M: {}\n  points: {}\n  verdict: \"{}\"\n",
            self.domain,
            self.quantity,
            self.order,
            self.nodes,
            self.points.len(),
            self.label()
        );
        for (k, v) in &self.diagnostics {
            out.push_str(&format!("  {k}: {}\n", fmt15(*v)));
        }
        out.push_str("}\n");
        out
    }

    /// Evidence wording for the overall verdict.
    pub fn label(&self) -> &'static str {
        match self.verdict() {
            Verdict::Pass => "supports",
            Verdict::Fail => "contradicts",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Refuses to compare unless `|Ω|` matches `πR²`.
pub fn check_area(solver: &MpsSolver, radius: f64) -> Result<()> {
    let disk = PI * radius * radius;
    let rel = (solver.area() - disk).abs() / disk;
    if rel > AREA_TOL {
        return Err(Error::Domain(format!(
            "area {} differs from the reference disk area {disk} (relative {rel:.3e})",
            solver.area()
        )));
    }
    Ok(())
}

fn flag(ok: bool) -> f64 {
    if ok {
        1.0
    } else {
        0.0
    }
}

/// `μ_Ω(a) − μ_D(a)` over `a_grid` with small- and large-`a` diagnostics.
pub fn fk_sweep_mu(solver: &MpsSolver, a_grid: &[f64], radius: f64) -> Result<SweepReport> {
    check_area(solver, radius)?;
    if a_grid.is_empty() || a_grid.iter().any(|a| !(*a > 0.0)) {
        return Err(Error::Domain("a grid must be nonempty and positive".into()));
    }
    let mut grid = a_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let points = grid
        .par_iter()
        .map(|&a| Ok(SweepPoint::new(a, solver.mu_first(a)?.eigenvalue, robin_disk_first(radius, a)?)))
        .collect::<Result<Vec<_>>>()?;

    let big_omega = solver.dirichlet_first()?.eigenvalue;
    let big_disk = dirichlet_disk_first(radius)?;
    let s = s_omega(solver.curve(), SWEEP_DEGREE, SWEEP_BERGMAN_NODES)?.s;
    let bound = 2.0 / radius;
    let first = points[0];
    let last = points[points.len() - 1];
    let slope = first.margin / first.param;
    let diagnostics = vec![
        ("S_omega".into(), s),
        ("carleman_bound".into(), bound),
        ("S_minus_bound".into(), s - bound),
        ("small_a".into(), first.param),
        ("small_a_margin_over_a".into(), slope),
        ("small_a_consistent".into(), flag(Verdict::of(slope) == Verdict::of(s - bound))),
        ("Lambda_omega".into(), big_omega),
        ("Lambda_disk".into(), big_disk),
        ("Lambda_gap".into(), big_omega - big_disk),
        ("large_a".into(), last.param),
        ("large_a_margin".into(), last.margin),
        ("large_a_consistent".into(), flag(Verdict::of(last.margin) == Verdict::of(big_omega - big_disk))),
    ];
    Ok(SweepReport {
        domain: solver.curve().label(),
        quantity: "mu".into(),
        points,
        diagnostics,
        order: solver.config().order,
        nodes: solver.config().effective_nodes(),
    })
}

/// `λ_Ω(θ) − λ_D(θ)` at mass `m >= 0` over `theta_grid` with diagnostics at
/// both zigzag ends.
pub fn fk_sweep_lambda(solver: &MpsSolver, m: f64, theta_grid: &[f64], radius: f64) -> Result<SweepReport> {
    check_area(solver, radius)?;
    if theta_grid.is_empty() || theta_grid.iter().any(|t| !(t.abs() < 0.5 * PI)) {
        return Err(Error::Domain("theta grid must be nonempty and inside (-pi/2, pi/2)".into()));
    }
    let mut grid = theta_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let big_omega = solver.dirichlet_first()?.eigenvalue;
    let big_disk = dirichlet_disk_first(radius)?;
    let points = grid
        .par_iter()
        .map(|&t| {
            let omega = solver.lambda_first(m, t, Some(big_omega))?.lambda;
            Ok(SweepPoint::new(t, omega, dirac_disk_first(radius, m, t)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let s = s_omega(solver.curve(), SWEEP_DEGREE, SWEEP_BERGMAN_NODES)?.s;
    let first = points[0];
    let last = points[points.len() - 1];
    let low_limit = (big_omega + m * m).sqrt() - (big_disk + m * m).sqrt();
    // λ − m ≈ S ϑ(θ) as θ ↑ π/2
    let high_scaled = last.margin / vartheta(last.param)?;
    let diagnostics = vec![
        ("mass".into(), m),
        ("Lambda_omega".into(), big_omega),
        ("Lambda_disk".into(), big_disk),
        ("zigzag_low_theta".into(), first.param),
        ("zigzag_low_margin".into(), first.margin),
        ("zigzag_low_limit".into(), low_limit),
        ("zigzag_low_consistent".into(), flag(Verdict::of(first.margin) == Verdict::of(low_limit))),
        ("zigzag_high_theta".into(), last.param),
        ("zigzag_high_margin".into(), last.margin),
        ("zigzag_high_margin_over_vartheta".into(), high_scaled),
        ("S_minus_bound".into(), s - 2.0 / radius),
        ("zigzag_high_consistent".into(), flag(Verdict::of(high_scaled) == Verdict::of(s - 2.0 / radius))),
    ];
    Ok(SweepReport {
        domain: solver.curve().label(),
        quantity: format!("lambda(m={m})"),
        points,
        diagnostics,
        order: solver.config().order,
        nodes: solver.config().effective_nodes(),
    })
}

/// Agreement of a sweep with the same sweep at doubled `K` and `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementCheck {
    pub flips: usize,
    /// Largest relative change of a passing margin.
    pub max_relative_shift: f64,
    pub stable: bool,
}

pub fn refinement_check(base: &SweepReport, refined: &SweepReport) -> Result<RefinementCheck> {
    if base.points.len() != refined.points.len()
        || base.points.iter().zip(&refined.points).any(|(p, q)| p.param != q.param)
    {
        return Err(Error::Domain("refinement check needs sweeps on the same grid".into()));
    }
    let mut flips = 0;
    let mut shift = 0.0f64;
    for (p, q) in base.points.iter().zip(&refined.points) {
        if p.verdict != q.verdict {
            flips += 1;
        }
        if p.verdict == Verdict::Pass {
            shift = shift.max((q.margin - p.margin).abs() / p.margin.abs());
        }
    }
    Ok(RefinementCheck { flips, max_relative_shift: shift, stable: flips == 0 && shift < 0.1 })
}

/// Both directions of the conjecture transfer on one domain.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferReport {
    pub domain: String,
    /// The domain whose inverse defines the transferred parameter.
    pub inverse_domain: String,
    pub mass: f64,
    pub theta: f64,
    /// `a = μ_Ω⁻¹(λ_D(θ)² − m²)`.
    pub a: f64,
    pub mu_margin: f64,
    pub lambda_margin: f64,
    /// `θ' = λ_Ω⁻¹(√(μ_D(a) + m²))`.
    pub mirror_theta: f64,
    pub mirror_lambda_margin: f64,
    pub consistent: bool,
}

impl TransferReport {
    pub fn mu_verdict(&self) -> Verdict {
        Verdict::of(self.mu_margin)
    }

    pub fn lambda_verdict(&self) -> Verdict {
        Verdict::of(self.lambda_margin)
    }

    pub fn mirror_verdict(&self) -> Verdict {
        Verdict::of(self.mirror_lambda_margin)
    }
}

pub fn transfer_roundtrip(solver: &MpsSolver, radius: f64, theta: f64, m: f64) -> Result<TransferReport> {
    check_area(solver, radius)?;
    let big = solver.dirichlet_first()?.eigenvalue;
    let lambda_disk = dirac_disk_first(radius, m, theta)?;
    let robin = RobinCurve { solver, dirichlet: big };
    let a = transfer_a(theta, m, lambda_disk, &robin)?;
    let mu_disk = robin_disk_first(radius, a)?;
    let mu_margin = solver.mu_first(a)?.eigenvalue - mu_disk;
    let lambda_margin = solver.lambda_first(m, theta, Some(big))?.lambda - lambda_disk;

    let dirac = DiracCurve { solver, mass: m, dirichlet: big };
    let mirror_theta = transfer_theta(a, m, mu_disk, &dirac)?;
    let mirror_lambda_margin =
        solver.lambda_first(m, mirror_theta, Some(big))?.lambda - dirac_disk_first(radius, m, mirror_theta)?;
    let mu_v = Verdict::of(mu_margin);
    Ok(TransferReport {
        domain: solver.curve().label(),
        inverse_domain: solver.curve().label(),
        mass: m,
        theta,
        a,
        mu_margin,
        lambda_margin,
        mirror_theta,
        mirror_lambda_margin,
        consistent: mu_v == Verdict::of(lambda_margin) && mu_v == Verdict::of(mirror_lambda_margin),
    })
}

/// The crossing angle `θ*` for the eigenvalue `|m|`, `m < 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NegMassReport {
    pub domain: String,
    pub mass: f64,
    pub degree: usize,
    pub s_omega: f64,
    pub theta_star: f64,
    pub lower_bound: f64,
    /// `θ* − bound`; zero only for disks.
    pub gap: f64,
    /// `ϑ(θ*)`.
    pub identity_lhs: f64,
    /// `2|m| ∫_Ω|u|² / ∫_∂Ω|u|²` at the Galerkin minimizer, by direct quadrature.
    pub identity_rhs: f64,
    /// `π − ϑ⁻¹(2|m|/S_Ω)`, the crossing for mass `|m|` on `(π/2, 3π/2)`.
    pub mirror: f64,
}

impl NegMassReport {
    pub fn identity_defect(&self) -> f64 {
        (self.identity_lhs - self.identity_rhs).abs() / self.identity_lhs
    }

    pub fn summary(&self) -> String {
        let rows = [
            ("mass", self.mass),
            ("S_omega", self.s_omega),
            ("theta_star", self.theta_star),
            ("lower_bound", self.lower_bound),
            ("gap", self.gap),
            ("identity_lhs", self.identity_lhs),
            ("identity_rhs", self.identity_rhs),
            ("identity_defect", self.identity_defect()),
            ("mirror_theta", self.mirror),
        ];
        let mut out = format!("{{\n  domain: \"{}\"\n  N: {}\n", self.domain, self.degree);
        for (k, v) in rows {
            out.push_str(&format!("  {k}: {}\n", fmt15(v)));
        }
        out.push_str("}\n");
        out
    }
}

pub const NEG_MASS_CSV_HEADER: &str = "domain,m,N,S,theta_star,lower_bound,gap,identity_defect,mirror";

impl NegMassReport {
    pub fn csv_row(&self) -> String {
        format!(
            "\"{}\",{},{},{},{},{},{},{:.6e},{}",
            self.domain,
            fmt15(self.mass),
            self.degree,
            fmt15(self.s_omega),
            fmt15(self.theta_star),
            fmt15(self.lower_bound),
            fmt15(self.gap),
            self.identity_defect(),
            fmt15(self.mirror)
        )
    }
}

pub fn neg_mass_report(curve: &BoundaryCurve, m: f64, degree: usize, nodes: usize) -> Result<NegMassReport> {
    if !(m < 0.0) {
        return Err(Error::Domain(format!("neg_mass_report needs m < 0, got {m}")));
    }
    let pair = GramPair::new(curve, degree, nodes)?;
    let sol = solve_gram(&pair)?;
    let grid = build_grid(curve, nodes)?;
    let cross = neg_mass_cross(sol.s, m, Some(grid.area()))?;
    let bound = cross.lower_bound.expect("area supplied");

    let u = |z: Complex64| {
        let w = (z - pair.center) / pair.rho;
        sol.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
    };
    let (pts, wts) = domain_quadrature(curve, nodes, degree + 16);
    let interior: f64 = pts.iter().zip(&wts).map(|(z, w)| u(*z).norm_sqr() * w).sum();
    let trace = grid.integrate(|z| u(z).norm_sqr());
    Ok(NegMassReport {
        domain: curve.label(),
        mass: m,
        degree,
        s_omega: sol.s,
        theta_star: cross.theta_star,
        lower_bound: bound,
        gap: cross.theta_star - bound,
        identity_lhs: vartheta(cross.theta_star)?,
        identity_rhs: 2.0 * m.abs() * interior / trace,
        mirror: pos_mass_mirror(sol.s, -m, None)?.theta_star,
    })
}

/// Spectral symmetries of the disk at one angle.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceSample {
    pub theta: f64,
    /// Eigenvalues compared in the charge-conjugation set test.
    pub compared: usize,
    /// `max |λ − (−λ')|` between `spec⁺(θ, m)` and `−spec⁻(−θ, m)`.
    pub charge_defect: f64,
    /// `max |λ⁺_{k,n}(θ, m) + λ⁻_{k,n}(π − θ, −m)|` over matched branches.
    pub chiral_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub radius: f64,
    pub mass: f64,
    pub samples: Vec<InvarianceSample>,
}

impl InvarianceReport {
    pub fn max_defect(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.charge_defect.max(s.chiral_defect))
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_defect() < tol && self.samples.iter().all(|s| s.compared > 0)
    }
}

pub const INVARIANCE_CSV_HEADER: &str = "theta,compared,charge_defect,chiral_defect";

const SYMMETRY_ORDER: i32 = 12;
const SYMMETRY_LEVELS: usize = 4;

/// All branch values of one sign below the first `|λ|` that an omitted
/// branch could reach.
fn sector_spectrum(r: f64, m: f64, vt: f64, sign: SpectrumSign) -> Result<(Vec<f64>, f64)> {
    let mut values = Vec::new();
    let mut cap = f64::INFINITY;
    for k in -SYMMETRY_ORDER..=SYMMETRY_ORDER {
        let roots = dirac_disk_direct(r, m, vt, k, SYMMETRY_LEVELS, sign)?;
        cap = cap.min(roots[SYMMETRY_LEVELS - 1].abs());
        if k.abs() == SYMMETRY_ORDER {
            cap = cap.min(roots[0].abs());
        }
        values.extend(roots.iter().map(|v| v.abs()));
    }
    Ok((values, cap))
}

/// Charge conjugation and chiral pairing on `D_r` for `m >= 0`; the chiral
/// side exercises the operator with mass `−m`. Eigenvalues inside the gap
/// `|λ| < |m|`, which occur for negative mass, are not covered.
pub fn invariance_check(r: f64, m: f64, thetas: &[f64]) -> Result<InvarianceReport> {
    if !(m >= 0.0) {
        return Err(Error::Domain(format!("invariance_check needs m >= 0, got {m}")));
    }
    let samples = thetas
        .par_iter()
        .map(|&theta| {
            // charge conjugation: spec⁺(θ) = −spec⁻(−θ) as sets
            let (mut pos, cp) = sector_spectrum(r, m, boundary_ratio(theta)?, SpectrumSign::Positive)?;
            let (mut neg, cn) = sector_spectrum(r, m, boundary_ratio(-theta)?, SpectrumSign::Negative)?;
            let cap = cp.min(cn) * (1.0 - 1e-6);
            pos.retain(|v| *v < cap);
            neg.retain(|v| *v < cap);
            pos.sort_by(f64::total_cmp);
            neg.sort_by(f64::total_cmp);
            let charge_defect = if pos.len() == neg.len() {
                pos.iter().zip(&neg).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };

            // chiral pairing on matched (k, n)
            let vt_mirror = boundary_ratio(PI - theta)?;
            let vt = boundary_ratio(theta)?;
            let mut chiral_defect = 0.0f64;
            for k in -SYMMETRY_ORDER..=SYMMETRY_ORDER {
                let p = dirac_disk_direct(r, m, vt, k, SYMMETRY_LEVELS, SpectrumSign::Positive)?;
                let q = dirac_disk_direct(r, -m, vt_mirror, k, SYMMETRY_LEVELS, SpectrumSign::Negative)?;
                for (a, b) in p.iter().zip(&q) {
                    chiral_defect = chiral_defect.max((a + b).abs());
                }
            }
            Ok(InvarianceSample { theta, compared: pos.len(), charge_defect, chiral_defect })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InvarianceReport { radius: r, mass: m, samples })
}
