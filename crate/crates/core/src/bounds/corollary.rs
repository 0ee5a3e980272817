//! Closed-form bounds for the named special cases, written out by hand and
//! independent of [`BoundEngine`]. They exist to cross-check the engine.
//!
//! | id                 | class / family                       | engine instance                   |
//! |--------------------|--------------------------------------|-----------------------------------|
//! | `starlike-x`       | bi-starlike, any Horadam family      | SStar, α = 0                      |
//! | `convex-x`         | bi-convex, any Horadam family        | Mocanu, α = 1                     |
//! | `sstar-alpha-t`    | SStar, Chebyshev-U at `x = t`        | SStar, (1, 2, 2, −1)              |
//! | `mocanu-alpha-t`   | Mocanu, Chebyshev-U at `x = t`       | Mocanu, (1, 2, 2, −1)             |
//! | `convex-t`         | bi-convex, Chebyshev-U at `x = t`    | Mocanu, α = 1, (1, 2, 2, −1)      |
//! | `alpha-blend-t`    | AlphaBlend, Chebyshev-U at `x = t`   | AlphaBlend, (1, 2, 2, −1)         |
//!
//! The Chebyshev forms assume `t > 0`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{degenerate_fs, piecewise, Bound, BoundEngine, BoundReport, FeketeSzego, DEGENERATE_EPS};
use crate::classes::{ClassKind, ClassSpec};
use crate::horadam::{HoradamParams, PolyFamily};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corollary {
    StarlikeX,
    ConvexX,
    SStarAlphaT,
    MocanuAlphaT,
    ConvexT,
    AlphaBlendT,
}

impl Corollary {
    pub const ALL: [Corollary; 6] = [
        Corollary::StarlikeX,
        Corollary::ConvexX,
        Corollary::SStarAlphaT,
        Corollary::MocanuAlphaT,
        Corollary::ConvexT,
        Corollary::AlphaBlendT,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Corollary::StarlikeX => "starlike-x",
            Corollary::ConvexX => "convex-x",
            Corollary::SStarAlphaT => "sstar-alpha-t",
            Corollary::MocanuAlphaT => "mocanu-alpha-t",
            Corollary::ConvexT => "convex-t",
            Corollary::AlphaBlendT => "alpha-blend-t",
        }
    }

    /// Row label for reduction tables.
    pub fn label(&self) -> &'static str {
        match self {
            Corollary::StarlikeX => "SStar α=0 vs bi-starlike (Horadam)",
            Corollary::ConvexX => "Mocanu α=1 vs bi-convex (Horadam)",
            Corollary::SStarAlphaT => "SStar vs SStar (Chebyshev t)",
            Corollary::MocanuAlphaT => "Mocanu vs Mocanu (Chebyshev t)",
            Corollary::ConvexT => "Mocanu α=1 vs bi-convex (Chebyshev t)",
            Corollary::AlphaBlendT => "AlphaBlend vs AlphaBlend (Chebyshev t)",
        }
    }

    /// Whether the closed form is stated for Chebyshev-U with `x = t`.
    pub fn is_chebyshev(&self) -> bool {
        !matches!(self, Corollary::StarlikeX | Corollary::ConvexX)
    }

    pub fn kind(&self) -> ClassKind {
        match self {
            Corollary::StarlikeX | Corollary::SStarAlphaT => ClassKind::SStar,
            Corollary::ConvexX | Corollary::MocanuAlphaT | Corollary::ConvexT => ClassKind::Mocanu,
            Corollary::AlphaBlendT => ClassKind::AlphaBlend,
        }
    }

    /// α is pinned for the two bi-starlike / bi-convex forms.
    pub fn fixed_alpha(&self) -> Option<f64> {
        match self {
            Corollary::StarlikeX => Some(0.0),
            Corollary::ConvexX | Corollary::ConvexT => Some(1.0),
            _ => None,
        }
    }

    /// The engine instance this closed form specialises.
    pub fn engine_spec(&self, inputs: &CorollaryInputs) -> Result<ClassSpec, Error> {
        let alpha = self.fixed_alpha().unwrap_or(inputs.alpha);
        let params = if self.is_chebyshev() { PolyFamily::ChebyshevSecond.params() } else { inputs.params };
        ClassSpec::new(self.kind(), alpha, params, inputs.x)
    }

    pub fn bounds(&self, inputs: &CorollaryInputs, nu: f64) -> Result<BoundReport, Error> {
        // validates α and finiteness the same way the engine does
        self.engine_spec(inputs)?;
        let alpha = self.fixed_alpha().unwrap_or(inputs.alpha);
        let form = match self {
            Corollary::StarlikeX => starlike_x(&inputs.params, inputs.x),
            Corollary::ConvexX => convex_x(&inputs.params, inputs.x),
            Corollary::SStarAlphaT => sstar_alpha_t(alpha, inputs.x),
            Corollary::MocanuAlphaT => mocanu_alpha_t(alpha, inputs.x),
            Corollary::ConvexT => convex_t(inputs.x),
            Corollary::AlphaBlendT => alpha_blend_t(alpha, inputs.x),
        };
        Ok(form.report(nu))
    }
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Corollary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Corollary::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| Error::UnknownCorollary(s.to_string()))
    }
}

/// Inputs to a closed form. Chebyshev forms read `t` from `x` and ignore
/// `params`; forms with a pinned α ignore `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryInputs {
    pub alpha: f64,
    pub params: HoradamParams,
    pub x: f64,
}

impl CorollaryInputs {
    pub fn chebyshev(alpha: f64, t: f64) -> Self {
        Self { alpha, params: PolyFamily::ChebyshevSecond.params(), x: t }
    }

    pub fn horadam(params: HoradamParams, x: f64) -> Self {
        Self { alpha: 0.0, params, x }
    }
}

/// Looks up a closed form by id.
pub fn corollary_bounds(id: &str, inputs: &CorollaryInputs, nu: f64) -> Result<BoundReport, Error> {
    id.parse::<Corollary>()?.bounds(inputs, nu)
}

/// One closed form evaluated at a point: every field is a literal
/// transcription, `bracket` being the printed denominator.
struct ClosedForm {
    bracket: f64,
    /// `D / bracket` for the engine's normalisation of the denominator.
    denom_scale: f64,
    a2_numerator: f64,
    a3: f64,
    fs_inner: f64,
    /// The threshold is `|bracket|·threshold_factor`.
    threshold_factor: f64,
    /// Outer bound is `outer_factor·|ν − 1| / |bracket|`.
    outer_factor: f64,
    h2_zero: bool,
}

impl ClosedForm {
    fn report(&self, nu: f64) -> BoundReport {
        let degenerate = self.bracket.abs() <= DEGENERATE_EPS;
        let a2 = if degenerate { Bound::Unbounded } else { Bound::Finite(self.a2_numerator / self.bracket.abs().sqrt()) };
        let fs: FeketeSzego = if degenerate {
            degenerate_fs(nu, self.fs_inner)
        } else {
            let threshold = self.bracket.abs() * self.threshold_factor;
            piecewise(nu, threshold, self.fs_inner, |dist| self.outer_factor * dist / self.bracket.abs())
        };
        BoundReport {
            a2_bound: a2,
            a3_bound: Bound::Finite(self.a3),
            fs_bound: fs.bound,
            fs_branch: fs.branch,
            nu,
            denom: self.bracket * self.denom_scale,
            threshold: fs.threshold,
            h2_degenerate: self.h2_zero,
        }
    }
}

fn starlike_x(params: &HoradamParams, x: f64) -> ClosedForm {
    let HoradamParams { a, b, p, q } = *params;
    let bx = (b * x).abs();
    let bracket = (b - p) * b * x * x - q * a;
    ClosedForm {
        bracket,
        denom_scale: 1.0,
        a2_numerator: bx * bx.sqrt(),
        a3: bx / 2.0 + b * b * x * x,
        fs_inner: bx / 2.0,
        threshold_factor: 1.0 / (2.0 * b * b * x * x),
        outer_factor: bx.powi(3),
        h2_zero: bx == 0.0,
    }
}

fn convex_x(params: &HoradamParams, x: f64) -> ClosedForm {
    let HoradamParams { a, b, p, q } = *params;
    let bx = (b * x).abs();
    let bracket = (2.0 * b - 4.0 * p) * b * x * x - 4.0 * q * a;
    ClosedForm {
        bracket,
        denom_scale: 1.0,
        a2_numerator: bx * bx.sqrt(),
        a3: bx / 6.0 + b * b * x * x / 4.0,
        fs_inner: bx / 6.0,
        threshold_factor: 1.0 / (6.0 * b * b * x * x),
        outer_factor: bx.powi(3),
        h2_zero: bx == 0.0,
    }
}

fn sstar_alpha_t(alpha: f64, t: f64) -> ClosedForm {
    let bracket = (1.0 + 2.0 * alpha).powi(2) - 16.0 * alpha * alpha * t * t;
    ClosedForm {
        bracket,
        denom_scale: 1.0,
        a2_numerator: 2.0 * t * (2.0 * t).sqrt(),
        a3: t / (1.0 + 3.0 * alpha) + 4.0 * t * t / (1.0 + 2.0 * alpha).powi(2),
        fs_inner: 2.0 * t / (2.0 + 6.0 * alpha),
        threshold_factor: 1.0 / (8.0 * t * t * (1.0 + 3.0 * alpha)),
        outer_factor: 8.0 * t.powi(3),
        h2_zero: t == 0.0,
    }
}

fn mocanu_alpha_t(alpha: f64, t: f64) -> ClosedForm {
    let bracket = (1.0 + alpha).powi(2) - 4.0 * alpha * (1.0 + alpha) * t * t;
    ClosedForm {
        bracket,
        denom_scale: 1.0,
        a2_numerator: 2.0 * t * (2.0 * t).sqrt(),
        a3: t / (1.0 + 2.0 * alpha) + 4.0 * t * t / (1.0 + alpha).powi(2),
        fs_inner: t / (1.0 + 2.0 * alpha),
        threshold_factor: 1.0 / (8.0 * t * t * (1.0 + 2.0 * alpha)),
        outer_factor: 8.0 * t.powi(3),
        h2_zero: t == 0.0,
    }
}

fn convex_t(t: f64) -> ClosedForm {
    let bracket = 1.0 - 2.0 * t * t;
    ClosedForm {
        bracket,
        denom_scale: 4.0,
        a2_numerator: t * (2.0 * t).sqrt(),
        a3: t / 3.0 + t * t,
        fs_inner: t / 3.0,
        threshold_factor: 1.0 / (6.0 * t * t),
        outer_factor: 2.0 * t.powi(3),
        h2_zero: t == 0.0,
    }
}

/// The `t²` term carries `2(α² − 5α + 4)`, which is what substituting
/// `(1, 2, 2, −1)` into the general AlphaBlend bound gives. With a bare
/// `(α² − 5α + 4)` the form would disagree with `convex-t` at α = 0, where
/// the two classes coincide.
fn alpha_blend_t(alpha: f64, t: f64) -> ClosedForm {
    let bracket = (2.0 - alpha).powi(2) - 2.0 * (alpha * alpha - 5.0 * alpha + 4.0) * t * t;
    ClosedForm {
        bracket,
        denom_scale: 1.0,
        a2_numerator: 2.0 * t * (2.0 * t).sqrt(),
        a3: t / (3.0 - 2.0 * alpha) + 4.0 * t * t / (2.0 - alpha).powi(2),
        fs_inner: t / (3.0 - 2.0 * alpha),
        threshold_factor: 1.0 / (8.0 * t * t * (3.0 - 2.0 * alpha)),
        outer_factor: 8.0 * t.powi(3),
        h2_zero: t == 0.0,
    }
}

/// Fekete-Szegő ν values probed at every grid point.
pub const NU_PROBES: [f64; 7] = [-2.0, 0.0, 0.5, 1.0, 1.5, 3.0, 10.0];

/// Points with `scale/|D|` above this are ill-conditioned for a 1e-11
/// relative comparison and are counted as skipped.
pub const MAX_CONDITION: f64 = 1e4;

/// Grid of inputs for comparing a closed form with the engine.
///
/// Chebyshev forms: `grid_size` α values across the class range (SStar uses
/// `[0, 2]`) times `grid_size` values of `t` in `(0, 1)`; pinned-α forms use
/// `grid_size²` values of `t`. Horadam forms: every `(a, b, p, q)` with
/// `a, p, q ∈ {−2..2}`, `b ∈ {±1, ±2}`, times `2·grid_size` values of `x` in
/// `[−2, 2] \ {0}`.
pub fn equivalence_grid(cor: Corollary, grid_size: usize) -> Vec<CorollaryInputs> {
    let n = grid_size.max(1);
    let mid = |k: usize, count: usize| (k as f64 + 0.5) / count as f64;
    let mut out = Vec::new();
    if cor.is_chebyshev() {
        if cor.fixed_alpha().is_some() {
            let m = n * n;
            out.extend((0..m).map(|k| CorollaryInputs::chebyshev(0.0, mid(k, m))));
        } else {
            let alpha_hi = cor.kind().alpha_max().unwrap_or(2.0);
            for i in 0..n {
                let alpha = if n == 1 { alpha_hi / 2.0 } else { alpha_hi * i as f64 / (n - 1) as f64 };
                out.extend((0..n).map(|k| CorollaryInputs::chebyshev(alpha, mid(k, n))));
            }
        }
    } else {
        let xs: Vec<f64> = (0..n).map(|k| 2.0 * (k as f64 + 1.0) / n as f64).flat_map(|x| [x, -x]).collect();
        let small = [-2.0, -1.0, 0.0, 1.0, 2.0];
        for a in small {
            for b in [-2.0, -1.0, 1.0, 2.0] {
                for p in small {
                    for q in small {
                        let params = HoradamParams { a, b, p, q };
                        out.extend(xs.iter().map(|&x| CorollaryInputs::horadam(params, x)));
                    }
                }
            }
        }
    }
    out
}

/// Outcome of comparing one closed form with the engine over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionRow {
    pub corollary: Corollary,
    pub label: &'static str,
    pub points: usize,
    pub skipped: usize,
    /// Largest relative deviation over `a₂`, `a₃`, and every probed ν.
    pub max_rel_dev: f64,
    /// Largest relative gap between the inner and outer Fekete-Szegő values
    /// at `|ν − 1|` equal to the threshold.
    pub max_continuity_gap: f64,
}

fn rel_dev(engine: Bound, closed: Bound) -> f64 {
    match (engine, closed) {
        (Bound::Unbounded, Bound::Unbounded) => 0.0,
        (Bound::Finite(e), Bound::Finite(c)) => {
            let scale = e.abs().max(c.abs());
            if scale == 0.0 {
                0.0
            } else {
                (e - c).abs() / scale
            }
        }
        _ => f64::INFINITY,
    }
}

/// Compares a closed form with the engine across [`equivalence_grid`].
pub fn reduction_check(cor: Corollary, grid_size: usize) -> Result<ReductionRow, Error> {
    let mut row = ReductionRow { corollary: cor, label: cor.label(), points: 0, skipped: 0, max_rel_dev: 0.0, max_continuity_gap: 0.0 };
    for inputs in equivalence_grid(cor, grid_size) {
        let engine = BoundEngine::from_spec(&cor.engine_spec(&inputs)?)?;
        if engine.denom_scale() > MAX_CONDITION * engine.denom().abs() {
            row.skipped += 1;
            continue;
        }
        row.points += 1;
        for nu in NU_PROBES {
            let e = engine.report(nu);
            let c = cor.bounds(&inputs, nu)?;
            let dev = rel_dev(e.a2_bound, c.a2_bound)
                .max(rel_dev(e.a3_bound, c.a3_bound))
                .max(rel_dev(e.fs_bound, c.fs_bound))
                .max(rel_dev(Bound::Finite(e.denom), Bound::Finite(c.denom)));
            row.max_rel_dev = row.max_rel_dev.max(dev);
        }
        let nu_star = 1.0 + engine.threshold();
        let gap = rel_dev(Bound::Finite(engine.fs_inner()), Bound::Finite(engine.fs_outer(nu_star)));
        row.max_continuity_gap = row.max_continuity_gap.max(gap);
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for c in Corollary::ALL {
            assert_eq!(c.id().parse::<Corollary>().unwrap(), c);
        }
        assert!(matches!("cor-9".parse::<Corollary>(), Err(Error::UnknownCorollary(_))));
    }

    #[test]
    fn spot_values() {
        let fib = CorollaryInputs::horadam(PolyFamily::Fibonacci.params(), 0.5);
        let r = corollary_bounds("starlike-x", &fib, 1.0).unwrap();
        assert!((r.a2_bound.value() - 0.353_553_390_593_273_8).abs() < 1e-15);

        let r = corollary_bounds("convex-t", &CorollaryInputs::chebyshev(1.0, 0.5), 1.0).unwrap();
        assert!((r.a2_bound.value() - 0.5 / 0.5f64.sqrt()).abs() < 1e-15);
        assert!((r.fs_bound.value() - 0.5 / 3.0).abs() < 1e-15);

        let t = 0.37;
        let r = corollary_bounds("sstar-alpha-t", &CorollaryInputs::chebyshev(0.0, t), 1.0).unwrap();
        assert!((r.a2_bound.value() - 2.0 * t * (2.0 * t).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn alpha_validation_applies() {
        let r = Corollary::MocanuAlphaT.bounds(&CorollaryInputs::chebyshev(1.5, 0.5), 1.0);
        assert!(matches!(r, Err(Error::AlphaOutOfRange { .. })));
    }

    #[test]
    fn grids_are_large_enough() {
        for c in Corollary::ALL {
            assert!(equivalence_grid(c, 32).len() >= 1000, "{c}");
            assert!(!equivalence_grid(c, 1).is_empty());
        }
        assert_eq!(equivalence_grid(Corollary::SStarAlphaT, 1).len(), 1);
    }
}
