//! The three bi-univalent classes and their coefficient systems.
//!
//! Each class is defined by subordinating a functional of `f` to
//! `Π(x, z) + 1 − a`. Comparing the `z` and `z²` coefficients on both sides,
//! for `f` and for its inverse `g`, gives four linear relations that every
//! class shares in shape:
//!
//! ```text
//!  c1·a₂             = h₂u₁
//!  e1·a₃ + e2·a₂²    = h₂u₂ + h₃u₁²
//! −c1·a₂             = h₂v₁
//!  f1·a₂² + f2·a₃    = h₂v₂ + h₃v₁²
//! ```
//!
//! [`CoefficientSystem`] stores `(c1, e1, e2, f1, f2)`; everything in
//! [`crate::bounds`] and [`crate::verify`] is driven by it.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::horadam::HoradamParams;
use crate::series::TruncatedSeries;
use crate::Error;

/// Truncation order used for class functionals unless a caller asks otherwise.
pub const DEFAULT_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    /// `zf′/f + α z²f″/f`, α ≥ 0.
    SStar,
    /// `(1−α) zf′/f + α (1 + zf″/f′)`, 0 ≤ α ≤ 1.
    Mocanu,
    /// `(zf′/f)^α (1 + zf″/f′)^{1−α}`, 0 ≤ α ≤ 1.
    AlphaBlend,
}

impl ClassKind {
    pub const ALL: [ClassKind; 3] = [ClassKind::SStar, ClassKind::Mocanu, ClassKind::AlphaBlend];

    pub fn name(&self) -> &'static str {
        match self {
            ClassKind::SStar => "sstar",
            ClassKind::Mocanu => "mocanu",
            ClassKind::AlphaBlend => "alpha-blend",
        }
    }

    /// Upper end of the admissible α range (`None` = unbounded).
    pub fn alpha_max(&self) -> Option<f64> {
        match self {
            ClassKind::SStar => None,
            ClassKind::Mocanu | ClassKind::AlphaBlend => Some(1.0),
        }
    }

    pub fn alpha_in_range(&self, alpha: f64) -> bool {
        alpha.is_finite() && alpha >= 0.0 && self.alpha_max().is_none_or(|max| alpha <= max)
    }

    pub fn coefficient_system(&self, alpha: f64) -> Result<CoefficientSystem, Error> {
        if !self.alpha_in_range(alpha) {
            return Err(Error::AlphaOutOfRange { kind: *self, alpha });
        }
        let a = alpha;
        let sys = match self {
            ClassKind::SStar => CoefficientSystem {
                c1: 1.0 + 2.0 * a,
                e1: 2.0 * (1.0 + 3.0 * a),
                e2: -(1.0 + 2.0 * a),
                f1: 3.0 + 10.0 * a,
                f2: -2.0 * (1.0 + 3.0 * a),
            },
            ClassKind::Mocanu => CoefficientSystem {
                c1: 1.0 + a,
                e1: 2.0 * (1.0 + 2.0 * a),
                e2: -(1.0 + 3.0 * a),
                f1: 3.0 + 5.0 * a,
                f2: -2.0 * (1.0 + 2.0 * a),
            },
            ClassKind::AlphaBlend => CoefficientSystem {
                c1: 2.0 - a,
                e1: 2.0 * (3.0 - 2.0 * a),
                e2: ((a - 2.0).powi(2) - 3.0 * (4.0 - 3.0 * a)) / 2.0,
                f1: 8.0 * (1.0 - a) + a * (a + 5.0) / 2.0,
                f2: -2.0 * (3.0 - 2.0 * a),
            },
        };
        Ok(sys)
    }

    /// Evaluates the class functional of a normalised `f` given as a series
    /// of order `M ≥ 3`; the result has order `M − 2`.
    pub fn functional_of(&self, alpha: f64, f: &TruncatedSeries) -> Result<TruncatedSeries, Error> {
        let m = f.order();
        if m < 3 {
            return Err(Error::InvalidArgument(format!("f must have order >= 3, got {m}")));
        }
        let n = m - 2;
        let df = f.derivative();
        let d2f = df.derivative();
        let df = df.truncate(n);
        let f_over_z = f.shift_down()?.truncate(n);
        let one = TruncatedSeries::one(n);

        // zf'/f and 1 + zf''/f'
        let starlike = || df.div(&f_over_z);
        let convex = || one.add(&d2f.shift_up().div(&df)?);

        let out = match self {
            ClassKind::SStar => {
                let z2_f2_over_f = d2f.shift_up().div(&f_over_z)?;
                starlike()?.add(&z2_f2_over_f.scale(alpha.into()))?
            }
            ClassKind::Mocanu => starlike()?.scale((1.0 - alpha).into()).add(&convex()?.scale(alpha.into()))?,
            ClassKind::AlphaBlend => starlike()?.real_power(alpha)?.mul(&convex()?.real_power(1.0 - alpha)?)?,
        };
        Ok(out)
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "sstar" | "s-star" | "starlike" => Ok(ClassKind::SStar),
            "mocanu" => Ok(ClassKind::Mocanu),
            "alpha-blend" | "alphablend" | "lambda" => Ok(ClassKind::AlphaBlend),
            other => Err(Error::Parse(format!("unknown class `{other}` (expected sstar, mocanu or alpha-blend)"))),
        }
    }
}

/// A fully specified class instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub kind: ClassKind,
    pub alpha: f64,
    pub horadam: HoradamParams,
    pub x: f64,
}

impl ClassSpec {
    pub fn new(kind: ClassKind, alpha: f64, horadam: HoradamParams, x: f64) -> Result<Self, Error> {
        let spec = Self { kind, alpha, horadam, x };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), Error> {
        self.horadam.validate()?;
        if !self.x.is_finite() {
            return Err(Error::NonFinite("x"));
        }
        if !self.kind.alpha_in_range(self.alpha) {
            return Err(Error::AlphaOutOfRange { kind: self.kind, alpha: self.alpha });
        }
        Ok(())
    }

    pub fn coefficient_system(&self) -> Result<CoefficientSystem, Error> {
        self.validate()?;
        self.kind.coefficient_system(self.alpha)
    }

    pub fn h2(&self) -> f64 {
        self.horadam.h2(self.x)
    }

    pub fn h3(&self) -> f64 {
        self.horadam.h3(self.x)
    }
}

/// Free-function form of [`ClassSpec::coefficient_system`].
pub fn coefficient_system(spec: &ClassSpec) -> Result<CoefficientSystem, Error> {
    spec.coefficient_system()
}

/// The first two non-trivial Taylor coefficients of `f(z) = z + a₂z² + a₃z³ + …`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FunctionCoeffs {
    pub a2: Complex64,
    pub a3: Complex64,
}

impl FunctionCoeffs {
    pub fn new(a2: Complex64, a3: Complex64) -> Self {
        Self { a2, a3 }
    }

    pub fn real(a2: f64, a3: f64) -> Self {
        Self { a2: a2.into(), a3: a3.into() }
    }

    /// `z + a₂z² + a₃z³` truncated at `order` (higher coefficients zero).
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order.max(3) + 1];
        coeffs[1] = 1.0.into();
        coeffs[2] = self.a2;
        coeffs[3] = self.a3;
        TruncatedSeries::new(coeffs).expect("finite coefficients").truncate(order)
    }

    /// Second and third coefficients of the inverse `w − a₂w² + (2a₂² − a₃)w³ − …`.
    pub fn inverse(&self) -> FunctionCoeffs {
        FunctionCoeffs { a2: -self.a2, a3: 2.0 * self.a2 * self.a2 - self.a3 }
    }
}

/// Free-function form of [`FunctionCoeffs::inverse`].
pub fn inverse_coeffs(f: &FunctionCoeffs) -> FunctionCoeffs {
    f.inverse()
}

/// `(c1, e1, e2, f1, f2)` for one class at one α; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSystem {
    pub c1: f64,
    pub e1: f64,
    pub e2: f64,
    pub f1: f64,
    pub f2: f64,
}

impl CoefficientSystem {
    /// `K = e2 + f1`, the coefficient of `a₂²` in the summed `z²` equations.
    pub fn k(&self) -> f64 {
        self.e2 + self.f1
    }
}

/// The class functional of `f = z + a₂z² + a₃z³` up to `z^order`.
pub fn functional_series(spec: &ClassSpec, f: &FunctionCoeffs, order: usize) -> Result<TruncatedSeries, Error> {
    if order < 3 {
        return Err(Error::InvalidArgument(format!("functional order must be >= 3, got {order}")));
    }
    spec.validate()?;
    spec.kind.functional_of(spec.alpha, &f.to_series(order + 2))
}

/// Reads `(u₁, u₂)` off `1 + h₂u₁z + (h₂u₂ + h₃u₁²)z² + …`.
pub fn extract_schwarz(series: &TruncatedSeries, params: &HoradamParams, x: f64) -> Result<(Complex64, Complex64), Error> {
    let c0 = series.coeff(0);
    if (c0 - 1.0).norm() > 1e-10 {
        return Err(Error::ConstantTerm(c0));
    }
    let h2 = params.h2(x);
    if h2.abs() <= 1e-12 {
        return Err(Error::DegenerateH2(h2));
    }
    let h3 = params.h3(x);
    let u1 = series.coeff(1) / h2;
    let u2 = (series.coeff(2) - h3 * u1 * u1) / h2;
    Ok((u1, u2))
}
