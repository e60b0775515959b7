//! Verification suites behind `le3 verify`. Each produces a JSON-ready
//! report with the computed constants, witnesses and tolerances.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use clap::ValueEnum;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bounds::{
    bound_check, max_equilateral_orbit_angle, min_equilateral_orbit_angle, quotient_curve,
    quotient_sample, t_max, theorem1_constant, BoundReport, QuotientCurve, DEFAULT_T_MIN,
    REGION_TOL, THEOREM2_BOUND,
};
use crate::complex::{format_complex, Complex64};
use crate::error::Result;
use crate::geometry::{
    angles, child, random_in_sigma, trisect, w_r_closed_form, Branch, NormalizedTriangle,
};
use crate::hyperbolic::distance;
use crate::landmarks::{
    circle_radius, extremal_orbit_point, gamma_eq_exceptional, omega, right_isosceles, z_eq,
};
use crate::orbit::{exhaustive_orbit, simulate_orbit, walker_stream, OrbitSet, RandomWalkConfig};

/// Match tolerance for exact fixed-point identities.
pub const EXACT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyTarget {
    FixedOrbit,
    GammaEqLemma,
    Nonincreasing,
    WrClosedForm,
    Theorem1,
    Theorem2,
    BoundsEquilateral,
    BoundsRightIsosceles,
}

impl VerifyTarget {
    pub fn name(self) -> &'static str {
        match self {
            VerifyTarget::FixedOrbit => "fixed-orbit",
            VerifyTarget::GammaEqLemma => "gamma-eq-lemma",
            VerifyTarget::Nonincreasing => "nonincreasing",
            VerifyTarget::WrClosedForm => "wr-closed-form",
            VerifyTarget::Theorem1 => "theorem1",
            VerifyTarget::Theorem2 => "theorem2",
            VerifyTarget::BoundsEquilateral => "bounds-equilateral",
            VerifyTarget::BoundsRightIsosceles => "bounds-right-isosceles",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub t_step: f64,
    pub depth: u32,
    pub walkers: u64,
    pub steps: u64,
    pub seed: u64,
    /// Random samples for the sampled checks; `None` uses each check's default.
    pub samples: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            t_step: 1e-4,
            depth: 6,
            walkers: 1000,
            steps: 200,
            seed: 0,
            samples: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: String,
    pub pass: bool,
    pub constants: BTreeMap<String, f64>,
    pub witnesses: Vec<serde_json::Value>,
    pub tolerances: BTreeMap<String, f64>,
    pub duration_ms: f64,
    pub first_failure: Option<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(target: VerifyTarget) -> Self {
        Self {
            target: target.name().to_string(),
            pass: true,
            constants: BTreeMap::new(),
            witnesses: Vec::new(),
            tolerances: BTreeMap::new(),
            duration_ms: 0.0,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    fn constant(&mut self, k: &str, v: f64) {
        self.constants.insert(k.to_string(), v);
    }

    fn tolerance(&mut self, k: &str, v: f64) {
        self.tolerances.insert(k.to_string(), v);
    }

    /// Records a failed check; the first one is kept as the counterexample.
    fn fail(&mut self, msg: String) {
        self.pass = false;
        if self.first_failure.is_none() {
            self.first_failure = Some(msg);
        }
    }

    fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    /// Multi-line human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {}\n",
            self.target,
            if self.pass { "PASS" } else { "FAIL" }
        );
        for (k, v) in &self.constants {
            if *v != 0.0 && v.abs() < 1e-4 {
                s.push_str(&format!("  {k} = {v:e}\n"));
            } else {
                s.push_str(&format!("  {k} = {v}\n"));
            }
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        if let Some(f) = &self.first_failure {
            s.push_str(&format!("  counterexample: {f}\n"));
        }
        s
    }
}

pub struct VerifyOutcome {
    pub report: VerificationReport,
    /// Sampled curve, for `theorem2`.
    pub quotient: Option<QuotientCurve>,
}

fn nt(z: Complex64) -> NormalizedTriangle {
    NormalizedTriangle::new(z).expect("landmark lies in Σ")
}

fn point_json(z: Complex64) -> serde_json::Value {
    json!({ "z": format_complex(z), "re": z.re, "im": z.im })
}

pub fn run(target: VerifyTarget, opts: &VerifyOptions) -> Result<VerifyOutcome> {
    let start = Instant::now();
    let mut report = VerificationReport::new(target);
    let mut quotient = None;
    match target {
        VerifyTarget::FixedOrbit => fixed_orbit(&mut report),
        VerifyTarget::GammaEqLemma => gamma_eq_lemma(&mut report, opts.depth)?,
        VerifyTarget::Nonincreasing => nonincreasing(&mut report, opts),
        VerifyTarget::WrClosedForm => wr_closed_form(&mut report, opts)?,
        VerifyTarget::Theorem1 => theorem1(&mut report),
        VerifyTarget::Theorem2 => quotient = Some(theorem2(&mut report, opts.t_step)?),
        VerifyTarget::BoundsEquilateral => bounds(
            &mut report,
            opts,
            nt(z_eq()),
            min_equilateral_orbit_angle(),
            max_equilateral_orbit_angle(),
        )?,
        VerifyTarget::BoundsRightIsosceles => bounds(
            &mut report,
            opts,
            nt(right_isosceles()),
            0.75 * min_equilateral_orbit_angle(),
            1.5 * max_equilateral_orbit_angle(),
        )?,
    }
    report.duration_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(VerifyOutcome { report, quotient })
}

fn fixed_orbit(report: &mut VerificationReport) {
    let ws = omega();
    let mut worst: f64 = 0.0;
    for (i, &w) in ws.iter().enumerate() {
        let t = trisect(nt(w));
        let mut row = Vec::new();
        for (b, ch) in Branch::ALL.iter().zip(t.children) {
            let (j, dev) = ws
                .iter()
                .enumerate()
                .map(|(j, &o)| (j, (ch.z() - o).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("three centres");
            worst = worst.max(dev);
            row.push(json!({ "branch": b.letter().to_string(), "child": format!("omega{}", j + 1), "deviation": dev }));
            report.require(dev < EXACT_TOL, || {
                format!(
                    "child {} of omega{} is {} (deviation {dev:e})",
                    b.letter(),
                    i + 1,
                    ch
                )
            });
        }
        report
            .witnesses
            .push(json!({ "parent": format!("omega{}", i + 1), "children": row }));
    }
    report.constant("max_deviation", worst);
    report.tolerance("match", EXACT_TOL);
}

/// Exhaustive orbit of `z_eq`: each point is an exceptional point or lies
/// inside `C1 ∪ C2 ∪ C3`.
pub fn gamma_eq_lemma(report: &mut VerificationReport, depth: u32) -> Result<()> {
    let orbit = exhaustive_orbit(nt(z_eq()), depth)?;
    let exceptional = gamma_eq_exceptional();
    let rho = circle_radius();
    let (mut listed, mut inside) = (0usize, 0usize);
    let mut seen = [false; 10];
    let mut max_inside_radius: f64 = 0.0;
    for z in orbit.iter() {
        if let Some(k) = exceptional
            .iter()
            .position(|&e| (z.z() - e).norm() <= REGION_TOL)
        {
            listed += 1;
            seen[k] = true;
            continue;
        }
        let r = omega()
            .iter()
            .map(|&w| distance(z.z(), w))
            .fold(f64::INFINITY, f64::min);
        if r < rho + REGION_TOL {
            inside += 1;
            max_inside_radius = max_inside_radius.max(r);
        } else {
            report
                .witnesses
                .push(json!({ "outside": point_json(z.z()), "omega_radius": r }));
            report.fail(format!(
                "{z} is neither exceptional nor inside the circles (radius {r})"
            ));
        }
    }
    report.constant("depth", depth as f64);
    report.constant("orbit_size", orbit.len() as f64);
    report.constant("exceptional_hits", listed as f64);
    report.constant("inside_circles", inside as f64);
    report.constant("max_inside_radius", max_inside_radius);
    report.constant("circle_radius", rho);
    report.tolerance("match", REGION_TOL);
    report.tolerance("circle", REGION_TOL);
    let missing: Vec<String> = exceptional
        .iter()
        .zip(seen)
        .filter(|(_, s)| !s)
        .map(|(e, _)| format_complex(*e))
        .collect();
    if !missing.is_empty() {
        report.notes.push(format!(
            "exceptional points not reached at this depth: {}",
            missing.join(", ")
        ));
    }
    Ok(())
}

fn nonincreasing(report: &mut VerificationReport, opts: &VerifyOptions) {
    let n = opts.samples.unwrap_or(100_000);
    let mut rng = walker_stream(opts.seed, 0);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..n {
        let (a, b) = (random_in_sigma(&mut rng), random_in_sigma(&mut rng));
        let d = distance(a.z(), b.z());
        for br in Branch::ALL {
            let excess = distance(child(a, br).z(), child(b, br).z()) - d;
            if excess > worst {
                worst = excess;
            }
            report.require(excess <= REGION_TOL, || {
                format!("branch {}: d grows by {excess:e} for {a}, {b}", br.letter())
            });
        }
    }
    report.constant("pairs", n as f64);
    report.constant("max_excess", worst);
    report.tolerance("excess", REGION_TOL);
}

fn wr_closed_form(report: &mut VerificationReport, opts: &VerifyOptions) -> Result<()> {
    let n = opts.samples.unwrap_or(10_000);
    let mut rng = walker_stream(opts.seed, 1);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    while count < n {
        let z = Complex64::new(
            rng.gen_range(1.0 / 3.0..=0.5),
            rng.gen_range(0.0..1.0 / 3.0),
        );
        if z.im <= 0.0 || (z - 2.0 / 3.0).norm() > 1.0 / 3.0 {
            continue;
        }
        let Ok(t) = NormalizedTriangle::new(z) else {
            continue;
        };
        count += 1;
        let dev = (w_r_closed_form(z)? - child(t, Branch::R).z()).norm();
        worst = worst.max(dev);
        report.require(dev < EXACT_TOL, || {
            format!("closed form differs by {dev:e} at {t}")
        });
    }
    report.constant("samples", n as f64);
    report.constant("max_deviation", worst);
    report.tolerance("match", EXACT_TOL);
    Ok(())
}

fn theorem1(report: &mut VerificationReport) {
    let c = theorem1_constant();
    let num = angles(nt(extremal_orbit_point())).gamma;
    let den = angles(nt(z_eq())).gamma;
    report.constant("constant", c);
    report.constant("numerator", max_equilateral_orbit_angle());
    report.constant("gamma_at_extremal_point", num);
    report.constant("gamma_at_z_eq", den);
    report.tolerance("decomposition", EXACT_TOL);
    report.witnesses.push(point_json(extremal_orbit_point()));
    report.require(c > 2.6815 && c < 2.6817, || {
        format!("constant {c} outside (2.6815, 2.6817)")
    });
    report.require(
        (num - max_equilateral_orbit_angle()).abs() < EXACT_TOL,
        || format!("numerator mismatch: gamma = {num}"),
    );
    report.require((den - PI / 3.0).abs() < EXACT_TOL, || {
        format!("denominator mismatch: gamma = {den}")
    });
}

fn theorem2(report: &mut VerificationReport, step: f64) -> Result<QuotientCurve> {
    let curve = quotient_curve(DEFAULT_T_MIN, t_max(), step)?;
    let endpoint = quotient_sample(t_max())?;
    report.constant("max_ratio", curve.max_ratio);
    report.constant("argmax_t", curve.argmax_t);
    report.constant("endpoint_ratio", endpoint.ratio);
    report.constant("samples", curve.samples.len() as f64);
    report.constant("t_step", step);
    report.constant("bound", THEOREM2_BOUND);
    report
        .witnesses
        .push(json!({ "t": curve.argmax_t, "ratio": curve.max_ratio }));
    let max = curve.max_ratio;
    report.require(max < THEOREM2_BOUND, || {
        format!("max ratio {max} >= {THEOREM2_BOUND}")
    });
    report.require(curve.is_monotone_non_decreasing(), || {
        "quotient curve decreases somewhere".into()
    });
    Ok(curve)
}

fn bound_json(r: &BoundReport, label: &str) -> serde_json::Value {
    json!({
        "run": label,
        "pass": r.pass,
        "orbit_size": r.orbit_size,
        "min_angle": r.min_angle,
        "min_witness": point_json(r.min_witness.z()),
        "max_angle": r.max_angle,
        "max_witness": point_json(r.max_witness.z()),
        "vacuous_upper": r.vacuous_upper,
    })
}

fn bounds(
    report: &mut VerificationReport,
    opts: &VerifyOptions,
    seed: NormalizedTriangle,
    lower: f64,
    upper: f64,
) -> Result<()> {
    let cfg = RandomWalkConfig::new(opts.walkers, opts.steps, opts.seed)?;
    let runs: [(&str, OrbitSet); 2] = [
        ("exhaustive", exhaustive_orbit(seed, opts.depth)?),
        ("monte-carlo", simulate_orbit(seed, &cfg)),
    ];
    report.constant("lower", lower);
    report.constant("upper", upper);
    report.tolerance("bound", REGION_TOL);
    let mut overall_min = f64::INFINITY;
    for (label, orbit) in &runs {
        let r = bound_check(seed, orbit, lower, upper)?;
        report.witnesses.push(bound_json(&r, label));
        report.constant(&format!("{label}_min_angle"), r.min_angle);
        report.constant(&format!("{label}_max_angle"), r.max_angle);
        overall_min = overall_min.min(r.min_angle);
        if let Some(v) = r.violation {
            report.fail(format!(
                "{label}: angle {} at {} breaks bound {}",
                v.angle, v.z, v.bound
            ));
        }
        if r.vacuous_upper && !report.notes.iter().any(|n| n.contains("vacuous")) {
            report.notes.push(format!(
                "upper bound {upper} exceeds pi: vacuously satisfied"
            ));
        }
    }
    if seed.z() == z_eq() {
        let lo = lower;
        report.require((overall_min - lo).abs() <= REGION_TOL, || {
            format!("lower bound not attained: min angle {overall_min} vs {lo}")
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions {
            samples: Some(500),
            walkers: 50,
            steps: 50,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn every_target_passes_on_quick_settings() {
        for t in VerifyTarget::value_variants() {
            let out = run(*t, &quick()).unwrap();
            assert!(out.report.pass, "{}", out.report.summary());
            assert_eq!(out.quotient.is_some(), *t == VerifyTarget::Theorem2);
        }
    }

    #[test]
    fn right_isosceles_flags_vacuous_upper() {
        let r = run(VerifyTarget::BoundsRightIsosceles, &quick())
            .unwrap()
            .report;
        assert!(r.notes.iter().any(|n| n.contains("vacuous")));
    }

    #[test]
    fn report_serializes_with_schema_keys() {
        let r = run(VerifyTarget::Theorem1, &quick()).unwrap().report;
        let v = serde_json::to_value(&r).unwrap();
        for k in [
            "target",
            "pass",
            "constants",
            "witnesses",
            "tolerances",
            "duration_ms",
        ] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }
}
