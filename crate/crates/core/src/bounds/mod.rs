//! Coefficient and Fekete-Szegő bounds.
//!
//! One engine serves all three classes. From the coefficient system
//! `(c1, e1, e2, f1, f2)` with `K = e2 + f1`, `h₂ = bx`, `h₃ = pbx² + qa`:
//!
//! ```text
//! D            = (K·h₂² − 2·c1²·h₃) / 2
//! |a₂|         ≤ |h₂|·√|h₂| / √|D|
//! |a₃|         ≤ |h₂|/e1 + h₂²/c1²
//! |a₃ − νa₂²|  ≤ |h₂|/e1              if |ν − 1| ≤ |D| / (h₂²·e1)
//!              ≤ |h₂|³·|ν − 1| / |D|  otherwise
//! ```
//!
//! The per-class closed forms live in [`corollary`] and are only used as
//! cross-checks.

pub mod corollary;

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::classes::{ClassSpec, CoefficientSystem};
use crate::Error;

/// `|D|` at or below this makes the bounds vacuous.
pub const DEGENERATE_EPS: f64 = 1e-13;
/// Relative tolerance for declaring `|ν − 1|` equal to the branch threshold.
pub const BRANCH_EPS: f64 = 1e-12;

/// A nonnegative bound, or the vacuous bound of a degenerate denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Finite(f64),
    Unbounded,
}

impl Bound {
    /// `+∞` for [`Bound::Unbounded`].
    pub fn value(&self) -> f64 {
        match *self {
            Bound::Finite(v) => v,
            Bound::Unbounded => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Bound::Finite(v) => Some(v),
            Bound::Unbounded => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v:.12}"),
            Bound::Unbounded => f.write_str("unbounded (vacuous)"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => serializer.serialize_f64(*v),
            Bound::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(v) => Ok(Bound::Finite(v)),
            Repr::Str(s) if s == "unbounded" => Ok(Bound::Unbounded),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("invalid bound `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FsBranch {
    Inner,
    Outer,
    Boundary,
}

impl FsBranch {
    pub fn name(&self) -> &'static str {
        match self {
            FsBranch::Inner => "inner",
            FsBranch::Outer => "outer",
            FsBranch::Boundary => "boundary",
        }
    }
}

impl fmt::Display for FsBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fekete-Szegő bound at one `ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeketeSzego {
    pub bound: Bound,
    pub branch: FsBranch,
    /// The `|ν − 1|` switch point; `+∞` when `h₂ = 0`.
    pub threshold: f64,
}

/// Shared piecewise rule: the inner value up to the threshold, the outer
/// formula beyond it.
pub(crate) fn piecewise(nu: f64, threshold: f64, inner: f64, outer: impl Fn(f64) -> f64) -> FeketeSzego {
    let dist = (nu - 1.0).abs();
    let branch = if threshold.is_finite() && (dist - threshold).abs() <= BRANCH_EPS * threshold.max(1.0) {
        FsBranch::Boundary
    } else if dist < threshold {
        FsBranch::Inner
    } else {
        FsBranch::Outer
    };
    let bound = match branch {
        FsBranch::Inner | FsBranch::Boundary => inner,
        FsBranch::Outer => outer(dist),
    };
    FeketeSzego { bound: Bound::Finite(bound), branch, threshold }
}

/// Fekete-Szegő rule for a degenerate denominator: only `ν = 1` carries
/// information.
pub(crate) fn degenerate_fs(nu: f64, inner: f64) -> FeketeSzego {
    if (nu - 1.0).abs() <= BRANCH_EPS {
        FeketeSzego { bound: Bound::Finite(inner), branch: FsBranch::Inner, threshold: 0.0 }
    } else {
        FeketeSzego { bound: Bound::Unbounded, branch: FsBranch::Outer, threshold: 0.0 }
    }
}

/// The generic bound engine for one class instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEngine {
    pub system: CoefficientSystem,
    pub h2: f64,
    pub h3: f64,
}

impl BoundEngine {
    pub fn new(system: CoefficientSystem, h2: f64, h3: f64) -> Self {
        Self { system, h2, h3 }
    }

    pub fn from_spec(spec: &ClassSpec) -> Result<Self, Error> {
        Ok(Self::new(spec.coefficient_system()?, spec.h2(), spec.h3()))
    }

    /// The signed denominator `D`.
    pub fn denom(&self) -> f64 {
        let s = &self.system;
        (s.k() * self.h2 * self.h2 - 2.0 * s.c1 * s.c1 * self.h3) / 2.0
    }

    /// Sum of the moduli of the two terms of `D`; `scale / |D|` is the
    /// condition number of the denominator.
    pub fn denom_scale(&self) -> f64 {
        let s = &self.system;
        (s.k() * self.h2 * self.h2 / 2.0).abs() + (s.c1 * s.c1 * self.h3).abs()
    }

    pub fn is_degenerate(&self) -> bool {
        self.denom().abs() <= DEGENERATE_EPS
    }

    pub fn a2(&self) -> Bound {
        if self.is_degenerate() {
            return Bound::Unbounded;
        }
        let h = self.h2.abs();
        Bound::Finite(h * h.sqrt() / self.denom().abs().sqrt())
    }

    pub fn a3(&self) -> Bound {
        let s = &self.system;
        Bound::Finite(self.h2.abs() / s.e1 + self.h2 * self.h2 / (s.c1 * s.c1))
    }

    /// `Ω(ν) = (1 − ν)·h₂² / (2D)`.
    pub fn omega(&self, nu: f64) -> f64 {
        (1.0 - nu) * self.h2 * self.h2 / (2.0 * self.denom())
    }

    /// Switch point on `|ν − 1|`: `|D| / (h₂²·e1)`.
    pub fn threshold(&self) -> f64 {
        if self.h2 == 0.0 {
            return f64::INFINITY;
        }
        self.denom().abs() / (self.h2 * self.h2 * self.system.e1)
    }

    /// `|h₂| / e1`.
    pub fn fs_inner(&self) -> f64 {
        self.h2.abs() / self.system.e1
    }

    /// `|h₂|³·|ν − 1| / |D|`, equivalently `2|h₂||Ω|`.
    pub fn fs_outer(&self, nu: f64) -> f64 {
        self.h2.abs().powi(3) * (nu - 1.0).abs() / self.denom().abs()
    }

    pub fn fekete_szego(&self, nu: f64) -> FeketeSzego {
        if self.is_degenerate() {
            return degenerate_fs(nu, self.fs_inner());
        }
        piecewise(nu, self.threshold(), self.fs_inner(), |dist| self.h2.abs().powi(3) * dist / self.denom().abs())
    }

    pub fn report(&self, nu: f64) -> BoundReport {
        let fs = self.fekete_szego(nu);
        BoundReport {
            a2_bound: self.a2(),
            a3_bound: self.a3(),
            fs_bound: fs.bound,
            fs_branch: fs.branch,
            nu,
            denom: self.denom(),
            threshold: fs.threshold,
            h2_degenerate: self.h2.abs() <= 1e-12,
        }
    }
}

/// All bounds for one class instance at one `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub a2_bound: Bound,
    pub a3_bound: Bound,
    pub fs_bound: Bound,
    pub fs_branch: FsBranch,
    pub nu: f64,
    /// The signed denominator `D`.
    pub denom: f64,
    /// Switch point on `|ν − 1|`; `null` in JSON when infinite.
    #[serde(with = "finite_or_null")]
    pub threshold: f64,
    /// `h₂(x) = 0`: the subordination collapses and every bound is 0.
    pub h2_degenerate: bool,
}

mod finite_or_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

pub fn denom(spec: &ClassSpec) -> Result<f64, Error> {
    Ok(BoundEngine::from_spec(spec)?.denom())
}

pub fn bound_a2(spec: &ClassSpec) -> Result<Bound, Error> {
    Ok(BoundEngine::from_spec(spec)?.a2())
}

pub fn bound_a3(spec: &ClassSpec) -> Result<Bound, Error> {
    Ok(BoundEngine::from_spec(spec)?.a3())
}

pub fn fekete_szego(spec: &ClassSpec, nu: f64) -> Result<(Bound, FsBranch), Error> {
    let fs = BoundEngine::from_spec(spec)?.fekete_szego(nu);
    Ok((fs.bound, fs.branch))
}

pub fn bound_report(spec: &ClassSpec, nu: f64) -> Result<BoundReport, Error> {
    Ok(BoundEngine::from_spec(spec)?.report(nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ClassKind;
    use crate::horadam::{HoradamParams, PolyFamily};

    fn spec(kind: ClassKind, alpha: f64, family: PolyFamily, x: f64) -> ClassSpec {
        ClassSpec::new(kind, alpha, family.params(), x).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn denominators() {
        let s = spec(ClassKind::SStar, 0.0, PolyFamily::Fibonacci, 0.5);
        assert_eq!(denom(&s).unwrap(), -1.0);

        let degenerate = HoradamParams::new(3.0, 1.5, 1.5, 0.0).unwrap();
        let s = ClassSpec::new(ClassKind::SStar, 0.0, degenerate, 0.5).unwrap();
        assert_eq!(denom(&s).unwrap(), 0.0);

        // Mocanu at α = 1 on Chebyshev-U: K = 4, c1 = 2, h2 = 2t, h3 = 4t² − 1, so D = 4(1 − 2t²).
        for t in [0.1, 0.5, 0.9] {
            let s = spec(ClassKind::Mocanu, 1.0, PolyFamily::ChebyshevSecond, t);
            assert!(close(denom(&s).unwrap(), 4.0 * (1.0 - 2.0 * t * t), 1e-15));
            let want = t * (2.0 * t).sqrt() / (1.0 - 2.0 * t * t).abs().sqrt();
            assert!(close(bound_a2(&s).unwrap().value(), want, 1e-14));
        }
    }

    #[test]
    fn a2_bounds() {
        let s = spec(ClassKind::SStar, 0.0, PolyFamily::Fibonacci, 0.5);
        assert!(close(bound_a2(&s).unwrap().value(), 0.5 * 0.5f64.sqrt(), 1e-15));
        let s = spec(ClassKind::SStar, 1.0, PolyFamily::ChebyshevSecond, 0.5);
        assert!(close(bound_a2(&s).unwrap().value(), 1.0 / 5f64.sqrt(), 1e-15));
        let degenerate = HoradamParams::new(3.0, 1.5, 1.5, 0.0).unwrap();
        let s = ClassSpec::new(ClassKind::SStar, 0.0, degenerate, 0.8).unwrap();
        assert_eq!(bound_a2(&s).unwrap(), Bound::Unbounded);
    }

    #[test]
    fn a3_bounds() {
        let s = spec(ClassKind::SStar, 0.0, PolyFamily::Fibonacci, 0.5);
        assert_eq!(bound_a3(&s).unwrap(), Bound::Finite(0.5));
        let params = HoradamParams::new(0.7, -1.3, 2.1, 0.4).unwrap();
        let x = 0.9;
        let s = ClassSpec::new(ClassKind::Mocanu, 1.0, params, x).unwrap();
        let bx = params.b * x;
        assert!(close(bound_a3(&s).unwrap().value(), bx.abs() / 6.0 + bx * bx / 4.0, 1e-15));
        let blend = ClassSpec::new(ClassKind::AlphaBlend, 1.0, params, x).unwrap();
        let star = ClassSpec::new(ClassKind::SStar, 0.0, params, x).unwrap();
        assert_eq!(bound_a3(&blend).unwrap(), bound_a3(&star).unwrap());
    }

    #[test]
    fn fekete_szego_branches() {
        let s = spec(ClassKind::SStar, 0.0, PolyFamily::Fibonacci, 0.5);
        let (b, br) = fekete_szego(&s, 1.0).unwrap();
        assert_eq!((b, br), (Bound::Finite(0.25), FsBranch::Inner));
        let (b, br) = fekete_szego(&s, 0.0).unwrap();
        assert_eq!((b, br), (Bound::Finite(0.25), FsBranch::Inner));
        let (b, br) = fekete_szego(&s, 4.0).unwrap();
        assert_eq!(br, FsBranch::Outer);
        assert!(close(b.value(), 0.375, 1e-15));
        let (b, br) = fekete_szego(&s, 3.0).unwrap();
        assert_eq!((b, br), (Bound::Finite(0.25), FsBranch::Boundary));
        assert_eq!(BoundEngine::from_spec(&s).unwrap().threshold(), 2.0);
    }

    #[test]
    fn omega_matches_threshold() {
        let s = spec(ClassKind::AlphaBlend, 0.3, PolyFamily::Pell, 0.7);
        let e = BoundEngine::from_spec(&s).unwrap();
        let nu = 1.0 + e.threshold();
        assert!(close(e.omega(nu).abs(), 1.0 / (2.0 * e.system.e1), 1e-14));
        assert!(close(2.0 * e.h2.abs() * e.omega(5.0).abs(), e.fs_outer(5.0), 1e-13));
    }

    #[test]
    fn degenerate_fekete_szego() {
        let degenerate = HoradamParams::new(3.0, 1.5, 1.5, 0.0).unwrap();
        let s = ClassSpec::new(ClassKind::SStar, 0.0, degenerate, 0.8).unwrap();
        let (b, br) = fekete_szego(&s, 1.0).unwrap();
        assert_eq!(br, FsBranch::Inner);
        assert!(close(b.value(), 1.2 / 2.0, 1e-15));
        assert_eq!(fekete_szego(&s, 1.5).unwrap().0, Bound::Unbounded);
    }

    #[test]
    fn zero_x_collapses_bounds() {
        let s = spec(ClassKind::Mocanu, 0.5, PolyFamily::Fibonacci, 0.0);
        let r = bound_report(&s, 2.0).unwrap();
        assert!(r.h2_degenerate);
        assert_eq!(r.a2_bound, Bound::Finite(0.0));
        assert_eq!(r.a3_bound, Bound::Finite(0.0));
        assert_eq!(r.fs_bound, Bound::Finite(0.0));
        assert_eq!(r.fs_branch, FsBranch::Inner);
        assert!(r.threshold.is_infinite());
    }

    #[test]
    fn report_json() {
        let s = spec(ClassKind::SStar, 0.0, PolyFamily::Fibonacci, 0.0);
        let json = serde_json::to_string(&bound_report(&s, 1.0).unwrap()).unwrap();
        assert!(json.contains("\"threshold\":null"), "{json}");
        let back: BoundReport = serde_json::from_str(&json).unwrap();
        assert!(back.threshold.is_infinite());
        let unbounded = serde_json::to_string(&Bound::Unbounded).unwrap();
        assert_eq!(unbounded, "\"unbounded\"");
        assert_eq!(serde_json::from_str::<Bound>(&unbounded).unwrap(), Bound::Unbounded);
    }
}
