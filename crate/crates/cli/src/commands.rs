use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;

use anyhow::anyhow;
use serde_json::Value;

use qdot_core::bergman::{carleman_check, CARLEMAN_CSV_HEADER};
use qdot_core::disk_spectrum::{
    branches_to_csv, dirac_disk_first, dirichlet_disk_level, disk_curves, fmt15, robin_disk_first, DiskOperator,
    SpectrumSign,
};
use qdot_core::geometry::{measure, parse_domain_spec, BoundaryCurve, CurveKind, DEFAULT_NODES};
use qdot_core::hardy::{norms_csv_row, pullback_identity, vukotic_gap, MobiusMap, TaylorSeries, NORMS_CSV_HEADER};
use qdot_core::mps::{MpsConfig, MpsSolver, SOLUTION_CSV_HEADER};
use qdot_core::param_map::{t_inv, t_map};
use qdot_core::shape_opt::{
    fk_sweep_lambda, fk_sweep_mu, invariance_check, neg_mass_report, standard_a_grid, Verdict,
    INVARIANCE_CSV_HEADER, NEG_MASS_CSV_HEADER, STANDARD_THETA_GRID, SWEEP_CSV_HEADER,
};
use qdot_core::{Complex64, Error};

use crate::manifest::{sha256_hex, RunKey, RunManifest};
use crate::{Command, Operator, Opts, EXIT_INCONCLUSIVE, EXIT_SOLVER};

pub enum Failure {
    Usage(String),
    Solver(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Solver(other.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Solver(e)
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect()
}

/// Resolved parameters plus the manifest key they produce.
struct Ctx<'a> {
    opts: &'a Opts,
    params: BTreeMap<String, Value>,
    solver: BTreeMap<String, Value>,
    input_hash: String,
}

impl<'a> Ctx<'a> {
    fn new(opts: &'a Opts) -> Self {
        Self { opts, params: BTreeMap::new(), solver: BTreeMap::new(), input_hash: "none".into() }
    }

    fn param(&mut self, key: &str, v: impl Into<Value>) {
        self.params.insert(key.into(), v.into());
    }

    fn setting(&mut self, key: &str, v: impl Into<Value>) {
        self.solver.insert(key.into(), v.into());
    }

    fn manifest(self, subcommand: &str) -> std::result::Result<RunManifest, Failure> {
        let key = RunKey {
            subcommand: subcommand.into(),
            params: self.params,
            solver: self.solver,
            input_hash: self.input_hash,
        };
        Ok(RunManifest::new(key, &self.opts.out)?)
    }

    fn radius(&mut self) -> std::result::Result<f64, Failure> {
        let r = self.opts.radius.unwrap_or(2.0);
        if !(r > 0.0) {
            return usage(format!("--radius must be positive, got {r}"));
        }
        self.param("radius", r);
        Ok(r)
    }

    fn mass(&mut self, default: f64) -> f64 {
        let m = self.opts.mass.unwrap_or(default);
        self.param("mass", m);
        m
    }

    fn points(&mut self, default: usize) -> std::result::Result<usize, Failure> {
        let n = self.opts.points.unwrap_or(default);
        if n == 0 {
            return usage("--points must be positive");
        }
        self.param("points", n);
        Ok(n)
    }

    fn theta_grid(&mut self, lo: f64, hi: f64, n: usize) -> std::result::Result<Vec<f64>, Failure> {
        let (lo, hi) = (self.opts.theta_min.unwrap_or(lo), self.opts.theta_max.unwrap_or(hi));
        if !(lo <= hi) {
            return usage(format!("--theta-min {lo} exceeds --theta-max {hi}"));
        }
        self.param("theta_min", lo);
        self.param("theta_max", hi);
        Ok(linspace(lo, hi, n))
    }

    fn a_grid(&mut self, lo: f64, hi: f64, n: usize) -> std::result::Result<Vec<f64>, Failure> {
        let (lo, hi) = (self.opts.a_min.unwrap_or(lo), self.opts.a_max.unwrap_or(hi));
        if !(lo > 0.0 && lo <= hi) {
            return usage(format!("need 0 < --a-min <= --a-max, got {lo}, {hi}"));
        }
        self.param("a_min", lo);
        self.param("a_max", hi);
        Ok(logspace(lo, hi, n))
    }

    /// The domain file (with `--radius` overriding a disk's radius), or the
    /// disk of radius `--radius`.
    fn domain(&mut self) -> std::result::Result<BoundaryCurve, Failure> {
        let curve = match &self.opts.domain {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                self.input_hash = sha256_hex(text.as_bytes());
                let spec = parse_domain_spec(&text)?;
                let mut curve = spec.resolve()?;
                if let (CurveKind::Disk { .. }, Some(r)) = (&curve.kind, self.opts.radius) {
                    curve = BoundaryCurve::disk(r)?.with_center(curve.center);
                }
                curve
            }
            None => BoundaryCurve::disk(self.opts.radius.unwrap_or(2.0))?,
        };
        self.param("domain", curve.label());
        Ok(curve)
    }

    fn mps_config(&mut self) -> MpsConfig {
        let base = MpsConfig::default();
        let config = MpsConfig {
            order: self.opts.orders.unwrap_or(base.order),
            nodes: self.opts.nodes.unwrap_or(0),
            seed: self.opts.seed.unwrap_or(base.seed),
            ..base
        };
        self.setting("K", config.order);
        self.setting("M", config.effective_nodes());
        self.setting("seed", config.seed);
        self.setting("sigma_tol", config.tol);
        self.setting("scan_points", config.scan_points);
        self.setting("escalations", config.escalations);
        config
    }

    fn bergman(&mut self, degree: usize) -> std::result::Result<(usize, usize), Failure> {
        let n = self.opts.degree.unwrap_or(degree);
        let nodes = self.opts.nodes.unwrap_or(1024);
        if nodes < 16 || nodes % 2 != 0 {
            return usage(format!("--nodes must be even and >= 16, got {nodes}"));
        }
        self.setting("N", n);
        self.setting("M", nodes);
        Ok((n, nodes))
    }
}

pub fn run(command: Command, opts: &Opts) -> Outcome {
    let ctx = Ctx::new(opts);
    match command {
        Command::DiskCurves => disk_curves_cmd(ctx),
        Command::DomainEig => domain_eig(ctx),
        Command::SOmega => s_omega_cmd(ctx),
        Command::Hardy => hardy(ctx),
        Command::FkSweep => fk_sweep(ctx),
        Command::NegMass => neg_mass(ctx),
        Command::Invariance => invariance(ctx),
        Command::Selfcheck => selfcheck(ctx),
    }
}

fn disk_curves_cmd(mut ctx: Ctx) -> Outcome {
    let r = ctx.radius()?;
    let m = ctx.mass(0.0);
    let op = ctx.opts.operator.unwrap_or(Operator::Dirac);
    let order = ctx.opts.orders.unwrap_or(3) as i32;
    ctx.param("operator", format!("{op:?}").to_lowercase());
    ctx.param("max_order", order);
    let branches: Vec<(i32, usize)> = (-order..=order).flat_map(|k| [(k, 1), (k, 2)]).collect();
    match op {
        Operator::Dirichlet => {
            let mut man = ctx.manifest("disk-curves")?;
            let mut body = String::from("k,n,value\n");
            for &(k, n) in &branches {
                body.push_str(&format!("{k},{n},{}\n", fmt15(dirichlet_disk_level(r, k, n)?)));
            }
            man.write("disk_dirichlet.csv", &body)?;
            man.finish()?;
        }
        Operator::Robin => {
            let n = ctx.points(100)?;
            let grid = ctx.a_grid(1e-2, 1e2, n)?;
            let mut man = ctx.manifest("disk-curves")?;
            let curves = disk_curves(r, m, &grid, &branches, DiskOperator::Robin)?;
            man.write("disk_robin.csv", &branches_to_csv(&curves))?;
            man.finish()?;
        }
        Operator::Dirac => {
            let n = ctx.points(100)?;
            let grid = ctx.theta_grid(-1.47, 1.47, n)?;
            if grid.iter().any(|t| t.abs() >= 0.5 * PI) {
                return usage("theta grid must stay inside (-pi/2, pi/2)");
            }
            let mut man = ctx.manifest("disk-curves")?;
            let pos = disk_curves(r, m, &grid, &branches, DiskOperator::Dirac(SpectrumSign::Positive))?;
            let neg = disk_curves(r, m, &grid, &branches, DiskOperator::Dirac(SpectrumSign::Negative))?;
            man.write("disk_dirac_positive.csv", &branches_to_csv(&pos))?;
            man.write("disk_dirac_negative.csv", &branches_to_csv(&neg))?;
            man.finish()?;
        }
    }
    Ok(0)
}

fn domain_eig(mut ctx: Ctx) -> Outcome {
    let curve = ctx.domain()?;
    let config = ctx.mps_config();
    let op = ctx.opts.operator.unwrap_or(Operator::Robin);
    ctx.param("operator", format!("{op:?}").to_lowercase());
    let mut body = format!("{SOLUTION_CSV_HEADER}\n");
    let rows: Vec<String>;
    match op {
        Operator::Dirichlet => {
            let solver = MpsSolver::calibrated(&curve, config)?;
            rows = vec![solver.dirichlet_first()?.csv_row(0.0)];
        }
        Operator::Robin => {
            let n = ctx.points(9)?;
            let grid = ctx.a_grid(1e-2, 1e2, n)?;
            let solver = MpsSolver::calibrated(&curve, config)?;
            rows = grid.iter().map(|&a| Ok(solver.mu_first(a)?.csv_row(a))).collect::<Result<_, Error>>()?;
        }
        Operator::Dirac => {
            let m = ctx.mass(0.0);
            if m < 0.0 {
                return usage("domain-eig --operator dirac needs --mass >= 0 (use neg-mass for m < 0)");
            }
            let n = ctx.points(5)?;
            let grid = ctx.theta_grid(-1.4, 1.4, n)?;
            let solver = MpsSolver::calibrated(&curve, config)?;
            let big = solver.dirichlet_first()?.eigenvalue;
            rows = grid
                .iter()
                .map(|&t| {
                    let d = solver.lambda_first(m, t, Some(big))?;
                    let r = &d.robin;
                    Ok(format!(
                        "{},{},{:.6e},{:.6e},{},{}",
                        fmt15(t),
                        fmt15(d.lambda),
                        r.residual,
                        r.sigma_min,
                        r.order,
                        r.nodes
                    ))
                })
                .collect::<Result<_, Error>>()?;
        }
    }
    for row in &rows {
        body.push_str(row);
        body.push('\n');
    }
    let mut man = ctx.manifest("domain-eig")?;
    man.write("domain_eig.csv", &body)?;
    man.finish()?;
    emit(&body);
    Ok(0)
}

fn s_omega_cmd(mut ctx: Ctx) -> Outcome {
    let curve = ctx.domain()?;
    let (degree, nodes) = ctx.bergman(25)?;
    let mut body = format!("{CARLEMAN_CSV_HEADER}\n");
    let mut last = String::new();
    for n in 0..=degree {
        last = carleman_check(&curve, n, nodes)?.csv_row();
        body.push_str(&last);
        body.push('\n');
    }
    let mut man = ctx.manifest("s-omega")?;
    man.write("s_omega.csv", &body)?;
    man.finish()?;
    emit(&format!("{CARLEMAN_CSV_HEADER}\n{last}\n"));
    Ok(0)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hardy(mut ctx: Ctx) -> Outcome {
    let n = ctx.opts.degree.unwrap_or(200);
    let nodes = ctx.opts.nodes.unwrap_or(DEFAULT_NODES);
    ctx.setting("truncation", n);
    ctx.setting("M", nodes);
    let cases = [
        ("one".to_string(), TaylorSeries::polynomial(vec![c(1.0, 0.0)])),
        ("z".to_string(), TaylorSeries::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)])),
        ("1+z".to_string(), TaylorSeries::polynomial(vec![c(1.0, 0.0), c(1.0, 0.0)])),
        ("1/(1-0.5z)".to_string(), TaylorSeries::geometric(c(1.0, 0.0), c(0.5, 0.0), n)?),
        ("(0.3-2i)/(1-(0.2+0.6i)z)".to_string(), TaylorSeries::geometric(c(0.3, -2.0), c(0.2, 0.6), n)?),
    ];
    let mut norms_body = format!("{NORMS_CSV_HEADER}\n");
    for (name, f) in &cases {
        norms_body.push_str(&norms_csv_row(name, f));
        norms_body.push('\n');
    }
    let mut pull = String::from("c2,u,lhs,rhs,defect,tail_bound,holds\n");
    let mut all = true;
    for c2 in [0.0, 0.3, 0.6] {
        let map = MobiusMap::new(c(c2, 0.0), c(1.0, 0.0), c(0.0, 0.0))?;
        for (label, u) in [
            ("1", TaylorSeries::polynomial(vec![c(1.0, 0.0)])),
            ("w", TaylorSeries::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)])),
        ] {
            let rep = pullback_identity(&u, &map, nodes, n)?;
            all &= rep.holds();
            pull.push_str(&format!(
                "{c2},{label},{},{},{:.6e},{:.6e},{}\n",
                fmt15(rep.lhs),
                fmt15(rep.rhs),
                rep.defect,
                rep.tail_bound,
                rep.holds()
            ));
        }
    }
    let mut man = ctx.manifest("hardy")?;
    man.write("hardy_norms.csv", &norms_body)?;
    man.write("hardy_pullback.csv", &pull)?;
    man.finish()?;
    emit(&format!("{norms_body}{pull}"));
    Ok(if all { 0 } else { EXIT_SOLVER })
}

fn fk_sweep(mut ctx: Ctx) -> Outcome {
    let curve = ctx.domain()?;
    let area = measure(&curve, DEFAULT_NODES)?.area;
    let r = match ctx.opts.radius {
        Some(r) if !curve.is_disk() => r,
        _ => (area / PI).sqrt(),
    };
    ctx.param("reference_radius", r);
    let config = ctx.mps_config();
    let op = ctx.opts.operator.unwrap_or(Operator::Robin);
    ctx.param("operator", format!("{op:?}").to_lowercase());
    let report = match op {
        Operator::Robin => {
            let grid = if ctx.opts.a_min.is_some() || ctx.opts.a_max.is_some() || ctx.opts.points.is_some() {
                let n = ctx.points(9)?;
                ctx.a_grid(1e-2, 1e2, n)?
            } else {
                standard_a_grid()
            };
            ctx.param("grid", grid.clone());
            let solver = MpsSolver::calibrated(&curve, config)?;
            fk_sweep_mu(&solver, &grid, r)?
        }
        Operator::Dirac => {
            let m = ctx.mass(0.0);
            if m < 0.0 {
                return usage("fk-sweep --operator dirac needs --mass >= 0");
            }
            let grid = if ctx.opts.theta_min.is_some() || ctx.opts.theta_max.is_some() || ctx.opts.points.is_some() {
                let n = ctx.points(5)?;
                ctx.theta_grid(-1.4, 1.4, n)?
            } else {
                STANDARD_THETA_GRID.to_vec()
            };
            ctx.param("grid", grid.clone());
            let solver = MpsSolver::calibrated(&curve, config)?;
            fk_sweep_lambda(&solver, m, &grid, r)?
        }
        Operator::Dirichlet => return usage("fk-sweep supports --operator robin or dirac"),
    };
    let mut man = ctx.manifest("fk-sweep")?;
    man.write("fk_sweep.csv", &format!("{SWEEP_CSV_HEADER}\n{}", report.csv_rows()))?;
    man.write("fk_summary.txt", &report.summary())?;
    man.finish()?;
    emit(&report.summary());
    Ok(match report.verdict() {
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        _ => 0,
    })
}

fn neg_mass(mut ctx: Ctx) -> Outcome {
    let curve = ctx.domain()?;
    let m = ctx.mass(-1.0);
    if !(m < 0.0) {
        return usage(format!("neg-mass needs --mass < 0, got {m}"));
    }
    let (degree, nodes) = ctx.bergman(30)?;
    let report = neg_mass_report(&curve, m, degree, nodes)?;
    let mut man = ctx.manifest("neg-mass")?;
    man.write("neg_mass.csv", &format!("{NEG_MASS_CSV_HEADER}\n{}\n", report.csv_row()))?;
    man.write("neg_mass_summary.txt", &report.summary())?;
    man.finish()?;
    emit(&report.summary());
    Ok(0)
}

fn invariance(mut ctx: Ctx) -> Outcome {
    let r = ctx.radius()?;
    let m = ctx.mass(1.0);
    let n = ctx.points(3)?;
    let thetas = ctx.theta_grid(-0.8, 1.1, n)?;
    let report = invariance_check(r, m, &thetas)?;
    let mut body = format!("{INVARIANCE_CSV_HEADER}\n");
    for s in &report.samples {
        body.push_str(&format!("{},{},{:.6e},{:.6e}\n", fmt15(s.theta), s.compared, s.charge_defect, s.chiral_defect));
    }
    let mut man = ctx.manifest("invariance")?;
    man.write("invariance.csv", &body)?;
    man.finish()?;
    emit(&body);
    if !report.passes(1e-9) {
        return Err(Failure::Solver(anyhow!("symmetry defect {:.3e} exceeds 1e-9", report.max_defect())));
    }
    Ok(0)
}

struct Check {
    name: &'static str,
    value: f64,
    tol: f64,
}

fn selfcheck(mut ctx: Ctx) -> Outcome {
    let r = ctx.radius()?;
    let config = ctx.mps_config();
    let disk = BoundaryCurve::disk(r)?;
    let solver = MpsSolver::new(&disk, MpsConfig { order: config.order.min(12), ..config })?;
    let j01 = qdot_core::special::bessel_zero(0, 1)?;

    let mut checks = Vec::new();
    let big = solver.dirichlet_first()?.eigenvalue;
    checks.push(Check { name: "disk_dirichlet_mps", value: (big - (j01 / r).powi(2)).abs(), tol: 1e-8 });
    let mu = solver.mu_first(1.0)?.eigenvalue;
    checks.push(Check { name: "disk_robin_mps", value: (mu - robin_disk_first(r, 1.0)?).abs(), tol: 1e-8 });
    let lam = solver.lambda_first(0.0, 0.0, Some(big))?.lambda;
    checks.push(Check { name: "disk_dirac_mps", value: (lam - dirac_disk_first(r, 0.0, 0.0)?).abs(), tol: 1e-7 });

    let mut worst = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let theta = -1.4 + 2.8 * i as f64 / 9.0;
            let m = [0.0, 0.5, 1.0, 2.0][(i + j) % 4];
            let lambda = m + 0.05 + 0.4 * j as f64;
            let (a, mu) = t_map(theta, lambda, m)?;
            let (t2, l2) = t_inv(a, mu, m)?;
            worst = worst.max((t2 - theta).abs()).max((l2 - lambda).abs() / lambda);
        }
    }
    checks.push(Check { name: "t_map_roundtrip", value: worst, tol: 1e-12 });

    let s = carleman_check(&disk, 20, 256)?;
    checks.push(Check { name: "disk_s_omega", value: (s.s - 2.0 / r).abs(), tol: 1e-10 });
    let z = TaylorSeries::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    checks.push(Check { name: "vukotic_z", value: (vukotic_gap(&z) - (1.0 - 3f64.powf(-0.25))).abs(), tol: 1e-12 });
    let g = TaylorSeries::geometric(c(1.0, 0.0), c(0.5, 0.0), 200)?;
    checks.push(Check { name: "vukotic_extremal", value: vukotic_gap(&g).abs(), tol: 1e-12 });
    let map = MobiusMap::new(c(0.3, 0.0), c(1.0, 0.0), c(0.0, 0.0))?;
    let p = pullback_identity(&z, &map, DEFAULT_NODES, 200)?;
    checks.push(Check {
        name: "pullback_identity",
        value: p.defect,
        tol: 1e-8 + (2.0 * PI).sqrt() * p.tail_bound,
    });
    let inv = invariance_check(r, 1.0, &[0.3])?;
    checks.push(Check { name: "disk_invariances", value: inv.max_defect(), tol: 1e-9 });
    let neg = neg_mass_report(&disk, -1.0, 20, 256)?;
    checks.push(Check { name: "neg_mass_disk_gap", value: neg.gap.abs(), tol: 1e-9 });

    let mut body = String::from("check,value,tolerance,status\n");
    let mut ok = true;
    for ch in &checks {
        let pass = ch.value < ch.tol;
        ok &= pass;
        body.push_str(&format!(
            "{},{:.6e},{:.3e},{}\n",
            ch.name,
            ch.value,
            ch.tol,
            if pass { "pass" } else { "fail" }
        ));
    }
    let mut man = ctx.manifest("selfcheck")?;
    man.write("selfcheck.csv", &body)?;
    man.finish()?;
    emit(&body);
    Ok(if ok { 0 } else { EXIT_SOLVER })
}
