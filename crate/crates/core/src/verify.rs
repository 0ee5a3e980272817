//! Monte-Carlo certification of the bounds.
//!
//! A trial draws Schwarz coefficients `(u₁, u₂)`, solves the coefficient
//! system for `(a₂, a₃)` and for the inverse-side `v₂` (with `v₁ = −u₁`),
//! discards the tuple unless all four moduli are at most 1, and compares
//! `|a₂|`, `|a₃|` and `|a₃ − νa₂²|` with the engine bounds.
//!
//! Each trial seeds its own ChaCha stream from `(seed, trial index)`, so a
//! run is reproducible bit for bit regardless of how rayon schedules it, and
//! the first `n` trials of a longer run are exactly the trials of a run of
//! length `n`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{Bound, BoundEngine};
use crate::classes::{self, ClassSpec, FunctionCoeffs, DEFAULT_ORDER};
use crate::Error;

/// A trial violates a bound when a ratio exceeds `1 + RATIO_SLACK`.
pub const RATIO_SLACK: f64 = 1e-9;
/// Slack on the unit-modulus constraints.
pub const ADMISSIBLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzTuple {
    pub u1: Complex64,
    pub u2: Complex64,
    pub v1: Complex64,
    pub v2: Complex64,
}

impl SchwarzTuple {
    pub fn is_admissible(&self) -> bool {
        let unit = |c: Complex64| c.norm() <= 1.0 + ADMISSIBLE_EPS;
        unit(self.u1) && unit(self.u2) && unit(self.v1) && unit(self.v2) && (self.v1 + self.u1).norm() <= ADMISSIBLE_EPS
    }
}

pub fn is_admissible(tuple: &SchwarzTuple) -> bool {
    tuple.is_admissible()
}

/// Solves the coefficient system for `f` and `v₂` given `(u₁, u₂)`.
///
/// `a₂ = h₂u₁/c1`, `a₃ = (h₂u₂ + h₃u₁² − e2·a₂²)/e1` and
/// `v₂ = (f1·a₂² + f2·a₃ − h₃u₁²)/h₂`.
pub fn construct_candidate(spec: &ClassSpec, u1: Complex64, u2: Complex64) -> Result<(FunctionCoeffs, Complex64), Error> {
    if u1.norm() > 1.0 + ADMISSIBLE_EPS || u2.norm() > 1.0 + ADMISSIBLE_EPS {
        return Err(Error::InvalidArgument(format!("Schwarz coefficients must lie in the closed unit disk, got u1 = {u1}, u2 = {u2}")));
    }
    let sys = spec.coefficient_system()?;
    let h2 = spec.h2();
    if h2.abs() <= 1e-12 {
        return Err(Error::DegenerateH2(h2));
    }
    let h3 = spec.h3();
    Ok(solve(&sys, h2, h3, u1, u2))
}

fn solve(sys: &classes::CoefficientSystem, h2: f64, h3: f64, u1: Complex64, u2: Complex64) -> (FunctionCoeffs, Complex64) {
    let a2 = h2 * u1 / sys.c1;
    let a2_sq = a2 * a2;
    let a3 = (h2 * u2 + h3 * u1 * u1 - sys.e2 * a2_sq) / sys.e1;
    let v2 = (sys.f1 * a2_sq + sys.f2 * a3 - h3 * u1 * u1) / h2;
    (FunctionCoeffs::new(a2, a3), v2)
}

/// Rebuilds `f` from `(u₁, u₂)`, expands the class functional and reads the
/// Schwarz coefficients back; returns `max(|u₁ − û₁|, |u₂ − û₂|)`.
pub fn roundtrip_check(spec: &ClassSpec, u1: Complex64, u2: Complex64) -> Result<f64, Error> {
    let (f, _) = construct_candidate(spec, u1, u2)?;
    let series = classes::functional_series(spec, &f, DEFAULT_ORDER)?;
    let (r1, r2) = classes::extract_schwarz(&series, &spec.horadam, spec.x)?;
    Ok((u1 - r1).norm().max((u2 - r2).norm()))
}

/// Inverse-side counterpart of [`roundtrip_check`]: reverts `f`, expands the
/// functional of `g = f⁻¹`, and compares the recovered `(v̂₁, v̂₂)` with
/// `(−u₁, v₂)` from [`construct_candidate`].
pub fn inverse_roundtrip_check(spec: &ClassSpec, u1: Complex64, u2: Complex64) -> Result<f64, Error> {
    let (f, v2) = construct_candidate(spec, u1, u2)?;
    let g = f.to_series(DEFAULT_ORDER + 2).revert()?;
    let series = spec.kind.functional_of(spec.alpha, &g)?;
    let (r1, r2) = classes::extract_schwarz(&series, &spec.horadam, spec.x)?;
    Ok((-u1 - r1).norm().max((v2 - r2).norm()))
}

/// How `u₂` is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// `u₁`, `u₂` independent and uniform on the closed unit disk.
    #[default]
    Loose,
    /// `u₂` uniform on the disk of radius `1 − |u₁|²`.
    StrictSchwarz,
}

impl Sampling {
    pub fn from_strict(strict: bool) -> Self {
        if strict {
            Sampling::StrictSchwarz
        } else {
            Sampling::Loose
        }
    }
}

fn unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.gen::<f64>();
    Complex64::from_polar(r, theta)
}

/// The `(u₁, u₂)` drawn for one trial.
pub fn trial_inputs(seed: u64, trial: u64, sampling: Sampling) -> (Complex64, Complex64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let u1 = unit_disk(&mut rng);
    let w = unit_disk(&mut rng);
    let u2 = match sampling {
        Sampling::Loose => w,
        Sampling::StrictSchwarz => w * (1.0 - u1.norm_sqr()),
    };
    (u1, u2)
}

/// Running statistics; merging is associative and order-independent.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tally {
    pub trials: u64,
    pub admissible: u64,
    pub violations: u64,
    pub max_ratio_a2: f64,
    pub max_ratio_a3: f64,
    pub max_ratio_fs: f64,
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        Tally {
            trials: self.trials + other.trials,
            admissible: self.admissible + other.admissible,
            violations: self.violations + other.violations,
            max_ratio_a2: self.max_ratio_a2.max(other.max_ratio_a2),
            max_ratio_a3: self.max_ratio_a3.max(other.max_ratio_a3),
            max_ratio_fs: self.max_ratio_fs.max(other.max_ratio_fs),
        }
    }
}

/// Precomputed bounds for one spec and ν grid.
struct Certifier {
    system: classes::CoefficientSystem,
    h2: f64,
    h3: f64,
    nu_grid: Vec<f64>,
    a2: Bound,
    a3: Bound,
    fs: Vec<Bound>,
}

impl Certifier {
    fn new(spec: &ClassSpec, nu_grid: &[f64]) -> Result<Self, Error> {
        let engine = BoundEngine::from_spec(spec)?;
        if engine.h2.abs() <= 1e-12 {
            return Err(Error::DegenerateH2(engine.h2));
        }
        if let Some(nu) = nu_grid.iter().find(|nu| !nu.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite nu {nu}")));
        }
        Ok(Self {
            system: engine.system,
            h2: engine.h2,
            h3: engine.h3,
            nu_grid: nu_grid.to_vec(),
            a2: engine.a2(),
            a3: engine.a3(),
            fs: nu_grid.iter().map(|&nu| engine.fekete_szego(nu).bound).collect(),
        })
    }

    fn trial(&self, u1: Complex64, u2: Complex64) -> Tally {
        let mut tally = Tally { trials: 1, ..Tally::default() };
        let (f, v2) = solve(&self.system, self.h2, self.h3, u1, u2);
        let tuple = SchwarzTuple { u1, u2, v1: -u1, v2 };
        if !tuple.is_admissible() {
            return tally;
        }
        tally.admissible = 1;
        let ratio = |value: f64, bound: Bound| {
            bound.finite().map_or(0.0, |b| {
                if b > 0.0 {
                    value / b
                } else if value > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            })
        };
        tally.max_ratio_a2 = ratio(f.a2.norm(), self.a2);
        tally.max_ratio_a3 = ratio(f.a3.norm(), self.a3);
        let a2_sq = f.a2 * f.a2;
        tally.max_ratio_fs =
            self.nu_grid.iter().zip(&self.fs).map(|(&nu, &bound)| ratio((f.a3 - nu * a2_sq).norm(), bound)).fold(0.0, f64::max);
        let worst = tally.max_ratio_a2.max(tally.max_ratio_a3).max(tally.max_ratio_fs);
        if worst > 1.0 + RATIO_SLACK {
            tally.violations = 1;
        }
        tally
    }
}

/// Certification statistics for one class instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub version: String,
    pub spec: ClassSpec,
    pub nu_grid: Vec<f64>,
    pub seed: u64,
    pub sampling: Sampling,
    pub trials: u64,
    pub admissible: u64,
    pub violations: u64,
    pub max_ratio_a2: f64,
    pub max_ratio_a3: f64,
    pub max_ratio_fs: f64,
    pub a2_bound: Bound,
    pub a3_bound: Bound,
    pub fs_bounds: Vec<Bound>,
}

impl VerifyReport {
    pub fn certified(&self) -> bool {
        self.violations == 0
    }
}

fn report(spec: &ClassSpec, certifier: &Certifier, seed: u64, sampling: Sampling, tally: Tally) -> VerifyReport {
    VerifyReport {
        version: crate::VERSION.to_string(),
        spec: *spec,
        nu_grid: certifier.nu_grid.clone(),
        seed,
        sampling,
        trials: tally.trials,
        admissible: tally.admissible,
        violations: tally.violations,
        max_ratio_a2: tally.max_ratio_a2,
        max_ratio_a3: tally.max_ratio_a3,
        max_ratio_fs: tally.max_ratio_fs,
        a2_bound: certifier.a2,
        a3_bound: certifier.a3,
        fs_bounds: certifier.fs.clone(),
    }
}

/// Runs `trials` random trials in parallel.
pub fn run_verification(spec: &ClassSpec, nu_grid: &[f64], trials: u64, seed: u64, strict_schwarz: bool) -> Result<VerifyReport, Error> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let certifier = Certifier::new(spec, nu_grid)?;
    let sampling = Sampling::from_strict(strict_schwarz);
    let tally = (0..trials)
        .into_par_iter()
        .map(|i| {
            let (u1, u2) = trial_inputs(seed, i, sampling);
            certifier.trial(u1, u2)
        })
        .reduce(Tally::default, Tally::merge);
    Ok(report(spec, &certifier, seed, sampling, tally))
}

/// Certifies an explicit list of `(u₁, u₂)` inputs; `seed` is recorded only.
pub fn certify_inputs(spec: &ClassSpec, nu_grid: &[f64], inputs: &[(Complex64, Complex64)], seed: u64) -> Result<VerifyReport, Error> {
    let certifier = Certifier::new(spec, nu_grid)?;
    let tally = inputs.iter().map(|&(u1, u2)| certifier.trial(u1, u2)).fold(Tally::default(), Tally::merge);
    Ok(report(spec, &certifier, seed, Sampling::Loose, tally))
}
