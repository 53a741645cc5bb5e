//! Smooth Jordan domains described by their boundary parametrization.
//!
//! Every domain integral in the crate is pushed to the boundary through the
//! complex Green identity `∫_Ω ∂_z̄ g dA = (1/2i) ∮ g dz`, and boundary
//! integrals use the periodic trapezoidal rule, which is spectrally accurate
//! on the analytic parametrizations supported here.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Shape of a boundary curve, in coordinates relative to its center.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    Disk {
        radius: f64,
    },
    Ellipse {
        semi_major: f64,
        semi_minor: f64,
    },
    /// `r(φ) = c0 + Σ_k cos_k cos kφ + sin_k sin kφ`, `k = 1..=K`.
    RadialFourier {
        c0: f64,
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
}

/// A positively oriented C² Jordan curve bounding a star-shaped domain.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub kind: CurveKind,
    pub center: Complex64,
}

impl BoundaryCurve {
    pub fn disk(radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidCurve(format!("radius must be positive, got {radius}")));
        }
        Ok(Self {
            kind: CurveKind::Disk { radius },
            center: Complex64::new(0.0, 0.0),
        })
    }

    pub fn ellipse(semi_major: f64, semi_minor: f64) -> Result<Self> {
        if !(semi_major > 0.0 && semi_minor > 0.0)
            || !semi_major.is_finite()
            || !semi_minor.is_finite()
        {
            return Err(Error::InvalidCurve(format!(
                "semi-axes must be positive, got ({semi_major}, {semi_minor})"
            )));
        }
        Ok(Self {
            kind: CurveKind::Ellipse {
                semi_major,
                semi_minor,
            },
            center: Complex64::new(0.0, 0.0),
        })
    }

    /// Radial Fourier curve. Positivity of `r` is checked on a fine sample
    /// here and again on every grid.
    pub fn radial_fourier(c0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        let k = cos.len().max(sin.len());
        let mut cos = cos;
        let mut sin = sin;
        cos.resize(k, 0.0);
        sin.resize(k, 0.0);
        let curve = Self {
            kind: CurveKind::RadialFourier { c0, cos, sin },
            center: Complex64::new(0.0, 0.0),
        };
        let samples = 64 * (k + 1);
        for j in 0..samples {
            let t = 2.0 * PI * j as f64 / samples as f64;
            let r = curve.radial(t).0;
            if !(r > 0.0) {
                return Err(Error::InvalidCurve(format!(
                    "radial function r({t:.6}) = {r} is not positive"
                )));
            }
        }
        Ok(curve)
    }

    /// Perturbed disk `r(φ) = c0 (1 + eps cos(mode φ))`.
    pub fn cosine_perturbation(c0: f64, mode: usize, eps: f64) -> Result<Self> {
        let mut cos = vec![0.0; mode];
        cos[mode - 1] = c0 * eps;
        Self::radial_fourier(c0, cos, Vec::new())
    }

    pub fn with_center(mut self, center: Complex64) -> Self {
        self.center = center;
        self
    }

    /// `(r, r', r'')` for radial Fourier curves; the disk radius otherwise.
    fn radial(&self, t: f64) -> (f64, f64, f64) {
        match &self.kind {
            CurveKind::Disk { radius } => (*radius, 0.0, 0.0),
            CurveKind::RadialFourier { c0, cos, sin } => {
                let (mut r, mut dr, mut ddr) = (*c0, 0.0, 0.0);
                for (idx, (a, b)) in cos.iter().zip(sin).enumerate() {
                    let k = (idx + 1) as f64;
                    let (s, c) = (k * t).sin_cos();
                    r += a * c + b * s;
                    dr += k * (-a * s + b * c);
                    ddr -= k * k * (a * c + b * s);
                }
                (r, dr, ddr)
            }
            CurveKind::Ellipse { .. } => unreachable!("ellipse has no radial form here"),
        }
    }

    /// Position, first and second derivative in the curve parameter.
    pub fn eval(&self, t: f64) -> (Complex64, Complex64, Complex64) {
        let (z, dz, ddz) = match &self.kind {
            CurveKind::Ellipse {
                semi_major: a,
                semi_minor: b,
            } => {
                let (s, c) = t.sin_cos();
                (
                    Complex64::new(a * c, b * s),
                    Complex64::new(-a * s, b * c),
                    Complex64::new(-a * c, -b * s),
                )
            }
            _ => {
                let (r, dr, ddr) = self.radial(t);
                let e = Complex64::from_polar(1.0, t);
                (
                    r * e,
                    (dr + I * r) * e,
                    (ddr - r + 2.0 * I * dr) * e,
                )
            }
        };
        (self.center + z, dz, ddz)
    }

    /// The same curve dilated by `factor` about its center.
    pub fn scaled(&self, factor: f64) -> Self {
        let kind = match &self.kind {
            CurveKind::Disk { radius } => CurveKind::Disk {
                radius: radius * factor,
            },
            CurveKind::Ellipse {
                semi_major,
                semi_minor,
            } => CurveKind::Ellipse {
                semi_major: semi_major * factor,
                semi_minor: semi_minor * factor,
            },
            CurveKind::RadialFourier { c0, cos, sin } => CurveKind::RadialFourier {
                c0: c0 * factor,
                cos: cos.iter().map(|v| v * factor).collect(),
                sin: sin.iter().map(|v| v * factor).collect(),
            },
        };
        Self {
            kind,
            center: self.center,
        }
    }

    pub fn is_disk(&self) -> bool {
        matches!(self.kind, CurveKind::Disk { .. })
    }

    /// Short identifier used in reports.
    pub fn label(&self) -> String {
        match &self.kind {
            CurveKind::Disk { radius } => format!("disk(R={radius:.6})"),
            CurveKind::Ellipse {
                semi_major,
                semi_minor,
            } => format!("ellipse({semi_major:.6},{semi_minor:.6})"),
            CurveKind::RadialFourier { c0, cos, sin } => {
                let mut s = format!("radial(c0={c0:.6}");
                for (k, v) in cos.iter().enumerate().filter(|(_, v)| **v != 0.0) {
                    s.push_str(&format!(",cos{}={v:.6}", k + 1));
                }
                for (k, v) in sin.iter().enumerate().filter(|(_, v)| **v != 0.0) {
                    s.push_str(&format!(",sin{}={v:.6}", k + 1));
                }
                s.push(')');
                s
            }
        }
    }
}

impl fmt::Display for BoundaryCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Equispaced periodic nodes on a boundary curve.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub params: Vec<f64>,
    pub points: Vec<Complex64>,
    pub tangents: Vec<Complex64>,
    pub normals: Vec<Complex64>,
    /// Arc-length weights `|z'(t_j)| · 2π/M`.
    pub weights: Vec<f64>,
    /// Complex line elements `z'(t_j) · 2π/M`, i.e. the weights of `dz`.
    pub dz: Vec<Complex64>,
    pub curvature: Vec<f64>,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `∮ f |dz|`.
    pub fn integrate<F: Fn(Complex64) -> f64>(&self, f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(z, w)| f(*z) * w)
            .sum()
    }

    /// `(1/2i) ∮ g dz`, i.e. `∫_Ω ∂_z̄ g dA`.
    pub fn green<F: Fn(Complex64) -> Complex64>(&self, g: F) -> Complex64 {
        let s: Complex64 = self.points.iter().zip(&self.dz).map(|(z, dz)| g(*z) * dz).sum();
        s / (2.0 * I)
    }

    pub fn perimeter(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn area(&self) -> f64 {
        self.green(|z| z.conj()).re
    }

    pub fn centroid(&self) -> Complex64 {
        self.green(|z| z * z.conj()) / self.area()
    }

    /// Distance from `p` to the nearest node; an inradius estimate when `p`
    /// is a well-placed interior point.
    pub fn distance_to_boundary(&self, p: Complex64) -> f64 {
        self.points
            .iter()
            .map(|z| (z - p).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Builds the periodic grid with `m` nodes (`m >= 16`, even).
pub fn build_grid(curve: &BoundaryCurve, m: usize) -> Result<QuadratureGrid> {
    if m < 16 || m % 2 != 0 {
        return Err(Error::Domain(format!("node count must be even and >= 16, got {m}")));
    }
    let h = 2.0 * PI / m as f64;
    let mut grid = QuadratureGrid {
        params: Vec::with_capacity(m),
        points: Vec::with_capacity(m),
        tangents: Vec::with_capacity(m),
        normals: Vec::with_capacity(m),
        weights: Vec::with_capacity(m),
        dz: Vec::with_capacity(m),
        curvature: Vec::with_capacity(m),
    };
    for j in 0..m {
        let t = j as f64 * h;
        if let CurveKind::RadialFourier { .. } = curve.kind {
            let r = curve.radial(t).0;
            if !(r > 0.0) {
                return Err(Error::InvalidCurve(format!("r({t:.6}) = {r} at node {j}")));
            }
        }
        let (z, dz, ddz) = curve.eval(t);
        let speed = dz.norm();
        let tau = dz / speed;
        grid.params.push(t);
        grid.points.push(z);
        grid.tangents.push(tau);
        // τ = iν  ⇔  ν = −iτ
        grid.normals.push(-I * tau);
        grid.weights.push(speed * h);
        grid.dz.push(dz * h);
        grid.curvature.push((dz.conj() * ddz).im / speed.powi(3));
    }
    Ok(grid)
}

/// Area and perimeter of a domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measure {
    pub area: f64,
    pub perimeter: f64,
}

pub fn measure(curve: &BoundaryCurve, m: usize) -> Result<Measure> {
    let grid = build_grid(curve, m)?;
    Ok(Measure {
        area: grid.area(),
        perimeter: grid.perimeter(),
    })
}

/// Node count used when a caller does not specify one.
pub const DEFAULT_NODES: usize = 512;

/// Dilates `curve` about its center so that its area equals `target_area`.
pub fn normalize_area(curve: &BoundaryCurve, target_area: f64) -> Result<BoundaryCurve> {
    if !(target_area > 0.0) {
        return Err(Error::Domain(format!("target area must be positive, got {target_area}")));
    }
    let area = measure(curve, DEFAULT_NODES)?.area;
    Ok(curve.scaled((target_area / area).sqrt()))
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// 2-D quadrature on a domain that is star-shaped about its center: the map
/// `(s, t) ↦ c + s (z(t) − c)` with Gauss–Legendre in `s` and trapezoid in `t`.
pub fn domain_quadrature(
    curve: &BoundaryCurve,
    angular: usize,
    radial: usize,
) -> (Vec<Complex64>, Vec<f64>) {
    let (sn, sw) = gauss_legendre_unit(radial);
    let h = 2.0 * PI / angular as f64;
    let c = curve.center;
    let mut pts = Vec::with_capacity(angular * radial);
    let mut wts = Vec::with_capacity(angular * radial);
    for j in 0..angular {
        let (z, dz, _) = curve.eval(j as f64 * h);
        let rel = z - c;
        let jac = (rel.conj() * dz).im;
        for (s, w) in sn.iter().zip(&sw) {
            pts.push(c + *s * rel);
            wts.push(w * s * jac * h);
        }
    }
    (pts, wts)
}

/// Parsed contents of a domain-spec file.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub curve: BoundaryCurve,
    pub normalize_area: Option<f64>,
}

impl DomainSpec {
    /// The curve, dilated to the requested area if one was given.
    pub fn resolve(&self) -> Result<BoundaryCurve> {
        match self.normalize_area {
            Some(a) => normalize_area(&self.curve, a),
            None => Ok(self.curve.clone()),
        }
    }
}

/// Parses the `key = value` domain format (`#` starts a comment).
pub fn parse_domain_spec(text: &str) -> Result<DomainSpec> {
    use std::collections::BTreeMap;

    let mut entries: BTreeMap<String, (usize, f64)> = BTreeMap::new();
    let mut kind: Option<(usize, String)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key == "kind" {
            if kind.is_some() {
                return Err(Error::Parse { line: line_no, msg: "duplicate key `kind`".into() });
            }
            kind = Some((line_no, value.to_string()));
            continue;
        }
        let known = matches!(key, "radius" | "semi_major" | "semi_minor" | "c0" | "normalize_area")
            || harmonic_key(key).is_some();
        if !known {
            return Err(Error::Parse { line: line_no, msg: format!("unknown key `{key}`") });
        }
        let v: f64 = value.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("`{key}` expects a number, got `{value}`"),
        })?;
        if entries.insert(key.to_string(), (line_no, v)).is_some() {
            return Err(Error::Parse { line: line_no, msg: format!("duplicate key `{key}`") });
        }
    }
    let (kind_line, kind) = kind.ok_or(Error::Parse { line: 0, msg: "missing `kind`".into() })?;
    let normalize = entries.remove("normalize_area").map(|(_, v)| v);
    let take = |entries: &mut BTreeMap<String, (usize, f64)>, key: &str| {
        entries.remove(key).map(|(_, v)| v).ok_or(Error::Parse {
            line: kind_line,
            msg: format!("kind `{kind}` requires `{key}`"),
        })
    };
    let curve = match kind.as_str() {
        "disk" => {
            let r = take(&mut entries, "radius")?;
            BoundaryCurve::disk(r)?
        }
        "ellipse" => {
            let a = take(&mut entries, "semi_major")?;
            let b = take(&mut entries, "semi_minor")?;
            BoundaryCurve::ellipse(a, b)?
        }
        "radial-fourier" => {
            let c0 = take(&mut entries, "c0")?;
            let mut cos = Vec::new();
            let mut sin = Vec::new();
            let keys: Vec<String> = entries.keys().cloned().collect();
            for key in keys {
                if let Some((is_cos, k)) = harmonic_key(&key) {
                    let v = entries.remove(&key).unwrap().1;
                    let target = if is_cos { &mut cos } else { &mut sin };
                    if target.len() < k {
                        target.resize(k, 0.0);
                    }
                    target[k - 1] = v;
                }
            }
            BoundaryCurve::radial_fourier(c0, cos, sin)?
        }
        other => {
            return Err(Error::Parse {
                line: kind_line,
                msg: format!("unknown kind `{other}` (disk, ellipse, radial-fourier)"),
            })
        }
    };
    if let Some((key, (line, _))) = entries.into_iter().next() {
        return Err(Error::Parse { line, msg: format!("key `{key}` does not apply to kind `{kind}`") });
    }
    if let Some(a) = normalize {
        if !(a > 0.0) {
            return Err(Error::Parse { line: 0, msg: format!("normalize_area must be positive, got {a}") });
        }
    }
    Ok(DomainSpec {
        curve,
        normalize_area: normalize,
    })
}

fn harmonic_key(key: &str) -> Option<(bool, usize)> {
    let (is_cos, digits) = if let Some(d) = key.strip_prefix("cos") {
        (true, d)
    } else if let Some(d) = key.strip_prefix("sin") {
        (false, d)
    } else {
        return None;
    };
    match digits.parse::<usize>() {
        Ok(k) if k >= 1 && !digits.starts_with('0') => Some((is_cos, k)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perturbed(eps: f64) -> BoundaryCurve {
        BoundaryCurve::radial_fourier(1.0, vec![0.0, 0.0, eps], vec![]).unwrap()
    }

    /// Arc length of the ellipse by composite Simpson with many panels.
    fn ellipse_perimeter_oracle(a: f64, b: f64) -> f64 {
        let n = 200_000;
        let h = 0.5 * PI / n as f64;
        let f = |t: f64| (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).sqrt();
        let mut s = f(0.0) + f(0.5 * PI);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        4.0 * s * h / 3.0
    }

    #[test]
    fn disk_grid_geometry() {
        let g = build_grid(&BoundaryCurve::disk(2.0).unwrap(), 64).unwrap();
        for j in 0..g.len() {
            assert!((g.points[j].norm() - 2.0).abs() < 1e-14);
            assert!((g.normals[j] - g.points[j] / 2.0).norm() < 1e-14);
            assert!((g.curvature[j] - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn ellipse_perimeter() {
        let oracle = ellipse_perimeter_oracle(2.0, 1.0);
        assert!((oracle - 9.688448).abs() < 1e-6);
        let g = build_grid(&BoundaryCurve::ellipse(2.0, 1.0).unwrap(), 128).unwrap();
        assert!((g.perimeter() - oracle).abs() < 1e-10);
    }

    #[test]
    fn frame_is_orthonormal() {
        let g = build_grid(&perturbed(0.1), 256).unwrap();
        for j in 0..g.len() {
            let (n, t) = (g.normals[j], g.tangents[j]);
            assert!((n.norm() - 1.0).abs() < 1e-15);
            assert!((n.re * t.re + n.im * t.im).abs() < 1e-15);
            assert_eq!(t, I * n);
        }
    }

    #[test]
    fn areas_match_closed_forms() {
        let d = measure(&BoundaryCurve::disk(2.0).unwrap(), 64).unwrap();
        assert!((d.area - 4.0 * PI).abs() < 1e-12);
        assert!((d.perimeter - 4.0 * PI).abs() < 1e-12);
        let e = measure(&BoundaryCurve::ellipse(2.0, 1.0).unwrap(), 128).unwrap();
        assert!((e.area - 2.0 * PI).abs() < 1e-12);
        for eps in [0.05, 0.1, 0.2] {
            let r = measure(&perturbed(eps), 256).unwrap();
            assert!((r.area - PI * (1.0 + 0.5 * eps * eps)).abs() < 1e-12);
        }
    }

    #[test]
    fn spectral_convergence_under_refinement() {
        let curves = [
            BoundaryCurve::disk(1.3).unwrap(),
            BoundaryCurve::ellipse(2.0, 1.0).unwrap(),
            perturbed(0.1),
        ];
        for c in &curves {
            for m in [64, 128, 256] {
                let a = measure(c, m).unwrap();
                let b = measure(c, 2 * m).unwrap();
                assert!(((a.area - b.area) / b.area).abs() < 1e-10, "{c} m={m}");
                assert!(((a.perimeter - b.perimeter) / b.perimeter).abs() < 1e-10, "{c} m={m}");
            }
        }
    }

    #[test]
    fn normalize_area_scales() {
        let d = normalize_area(&BoundaryCurve::disk(1.0).unwrap(), 4.0 * PI).unwrap();
        assert!(matches!(d.kind, CurveKind::Disk { radius } if (radius - 2.0).abs() < 1e-12));
        let e = normalize_area(&BoundaryCurve::ellipse(2.0, 1.0).unwrap(), 4.0 * PI).unwrap();
        match e.kind {
            CurveKind::Ellipse { semi_major, semi_minor } => {
                assert!((semi_major - 2.0 * 2f64.sqrt()).abs() < 1e-12);
                assert!((semi_minor - 2f64.sqrt()).abs() < 1e-12);
            }
            _ => unreachable!(),
        }
        let r = normalize_area(&perturbed(0.1), 4.0 * PI).unwrap();
        let want = (4.0 * PI / (PI * 1.005)).sqrt();
        match &r.kind {
            CurveKind::RadialFourier { c0, .. } => assert!((c0 - want).abs() < 1e-12),
            _ => unreachable!(),
        }
        let area = measure(&r, 256).unwrap().area;
        assert!(((area - 4.0 * PI) / (4.0 * PI)).abs() < 1e-10);
        let again = normalize_area(&r, 4.0 * PI).unwrap();
        match (&again.kind, &r.kind) {
            (CurveKind::RadialFourier { c0: a, .. }, CurveKind::RadialFourier { c0: b, .. }) => {
                assert!((a - b).abs() < 1e-14)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn non_positive_radius_is_invalid() {
        assert!(matches!(
            BoundaryCurve::radial_fourier(1.0, vec![1.2], vec![]),
            Err(Error::InvalidCurve(_))
        ));
        assert!(BoundaryCurve::disk(0.0).is_err());
        assert!(BoundaryCurve::ellipse(1.0, -1.0).is_err());
        assert!(build_grid(&BoundaryCurve::disk(1.0).unwrap(), 15).is_err());
    }

    #[test]
    fn domain_quadrature_integrates_polynomials() {
        let c = perturbed(0.15);
        let (pts, w) = domain_quadrature(&c, 256, 24);
        let area: f64 = w.iter().sum();
        assert!((area - PI * (1.0 + 0.5 * 0.15 * 0.15)).abs() < 1e-12);
        let g = build_grid(&c, 256).unwrap();
        let by_green = g.green(|z| z * z * z.conj() * z.conj() / 3.0 * z.conj());
        let direct: Complex64 = pts
            .iter()
            .zip(&w)
            .map(|(z, w)| z * z * z.conj() * z.conj() * *w)
            .sum();
        assert!((by_green - direct).norm() < 1e-12);
    }

    #[test]
    fn gauss_legendre_exactness() {
        let (x, w) = gauss_legendre_unit(8);
        for p in 0..16 {
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p)).sum();
            assert!((s - 1.0 / (p as f64 + 1.0)).abs() < 1e-14, "degree {p}");
        }
    }

    #[test]
    fn parses_domain_files() {
        let spec = parse_domain_spec(
            "# ellipse of aspect two\nkind = ellipse\nsemi_major = 2\nsemi_minor = 1 # comment\nnormalize_area = 12.566370614359172\n",
        )
        .unwrap();
        assert_eq!(spec.curve, BoundaryCurve::ellipse(2.0, 1.0).unwrap());
        let c = spec.resolve().unwrap();
        assert!((measure(&c, 256).unwrap().area - 4.0 * PI).abs() < 1e-10);

        let rf = parse_domain_spec("kind = radial-fourier\nc0 = 1\ncos3 = 0.1\nsin2 = 0.02").unwrap();
        assert_eq!(
            rf.curve,
            BoundaryCurve::radial_fourier(1.0, vec![0.0, 0.0, 0.1], vec![0.0, 0.02]).unwrap()
        );
    }

    #[test]
    fn rejects_bad_domain_files() {
        for (text, needle) in [
            ("kind = disk\nradius = 1\ncolour = 3", "unknown key"),
            ("kind = disk\nsemi_major = 1\nradius = 1", "does not apply"),
            ("kind = square\n", "unknown kind"),
            ("radius = 1\n", "missing"),
            ("kind = disk\nradius = abc", "expects a number"),
            ("kind = disk\nradius", "key = value"),
            ("kind = radial-fourier\nc0 = 1\ncos03 = 0.1", "unknown key"),
        ] {
            let err = parse_domain_spec(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?} -> {err}");
        }
    }

    proptest::proptest! {
        #[test]
        fn frame_and_area_properties(
            c0 in 0.5f64..3.0,
            a2 in -0.15f64..0.15,
            a3 in -0.15f64..0.15,
            b4 in -0.1f64..0.1,
            target in 0.5f64..50.0,
        ) {
            let curve = BoundaryCurve::radial_fourier(c0, vec![0.0, a2 * c0, a3 * c0], vec![0.0, 0.0, 0.0, b4 * c0]).unwrap();
            let grid = build_grid(&curve, 128).unwrap();
            for (t, n) in grid.tangents.iter().zip(&grid.normals) {
                proptest::prop_assert_eq!(*t, I * n);
                proptest::prop_assert!((n.norm() - 1.0).abs() < 1e-15);
            }
            let area = 0.5 * c0 * c0 * (2.0 * PI) + 0.5 * c0 * c0 * PI * (a2 * a2 + a3 * a3 + b4 * b4);
            proptest::prop_assert!((grid.area() - area).abs() < 1e-12 * area);
            let once = normalize_area(&curve, target).unwrap();
            let twice = normalize_area(&once, target).unwrap();
            proptest::prop_assert!((measure(&once, 256).unwrap().area - target).abs() < 1e-10 * target);
            let (z1, _, _) = once.eval(0.7);
            let (z2, _, _) = twice.eval(0.7);
            proptest::prop_assert!((z1 - z2).norm() < 1e-14 * z1.norm());
        }
    }
}
