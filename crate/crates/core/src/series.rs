//! Truncated formal power series over complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c₀..c_N`. Binary operations
//! require both operands to share the same order; callers align orders with
//! [`TruncatedSeries::truncate`] explicitly.

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance on a divisor's constant term.
pub const DIV_EPS: f64 = 1e-13;
/// Tolerance on normalisation conditions (`c₀ = 1` for log, `c₁ = 1` for reversion).
pub const NORM_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by a series with constant term {0} (|c0| <= {DIV_EPS:e})")]
    DivisionByZero(Complex64),
    #[error("composition requires the inner series to vanish at 0, got c0 = {0}")]
    NonZeroInnerConstant(Complex64),
    #[error("expected constant term {expected}, got {got}")]
    ConstantTerm { expected: f64, got: Complex64 },
    #[error("reversion requires c0 = 0 and c1 = 1, got c0 = {c0}, c1 = {c1}")]
    NotNormalized { c0: Complex64, c1: Complex64 },
    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),
    #[error("a series needs at least one coefficient")]
    Empty,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from `c₀..c_N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(SeriesError::NonFinite(i));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0); order + 1] }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The series `z` (zero at order 0).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Re-truncates to `order`, dropping higher terms or padding with zeros.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * lambda).collect() }
    }

    /// Truncated Cauchy product.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `self / other` by forward substitution.
    #[allow(clippy::should_implement_trait)]
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let t0 = other.coeffs[0];
        if t0.norm() <= DIV_EPS {
            return Err(SeriesError::DivisionByZero(t0));
        }
        let n = self.order();
        let mut out: Vec<Complex64> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * out[k - j];
            }
            out.push(acc / t0);
        }
        Ok(Self { coeffs: out })
    }

    /// Term-wise derivative; the result has order `N - 1` (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
        Self { coeffs }
    }

    /// Antiderivative with zero constant term; the result has order `N + 1`.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)));
        Self { coeffs }
    }

    /// Multiplies by `z`, keeping the order (the top coefficient falls off).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    /// Divides by `z`, keeping the order (the top coefficient becomes 0).
    /// Requires `c₀ = 0`.
    pub fn shift_down(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() > DIV_EPS {
            return Err(SeriesError::DivisionByZero(c0));
        }
        let mut coeffs = self.coeffs[1..].to_vec();
        coeffs.push(Complex64::new(0.0, 0.0));
        Ok(Self { coeffs })
    }

    /// `outer ∘ inner` via Horner's scheme in the series ring.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        let c0 = inner.coeffs[0];
        if c0.norm() > DIV_EPS {
            return Err(SeriesError::NonZeroInnerConstant(c0));
        }
        let n = self.order();
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// `log(s)` for `s` with constant term 1, as `∫ s'/s`.
    pub fn log1(&self) -> Result<Self> {
        self.expect_constant(1.0)?;
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let ds = self.derivative();
        let base = self.truncate(n - 1);
        Ok(ds.div(&base)?.integral())
    }

    /// `exp(s)` for `s` with constant term 0, from `e' = s'e`.
    pub fn exp0(&self) -> Result<Self> {
        self.expect_constant(0.0)?;
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = Complex64::new(1.0, 0.0);
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * (j as f64) * out[k - j];
            }
            out[k] = acc / k as f64;
        }
        Ok(Self { coeffs: out })
    }

    /// `s^alpha` for `s` with constant term 1 (principal branch).
    pub fn real_power(&self, alpha: f64) -> Result<Self> {
        self.log1()?.scale(Complex64::new(alpha, 0.0)).exp0()
    }

    /// Compositional inverse of `z + c₂z² + …`.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        let c0 = self.coeffs[0];
        let c1 = self.coeff(1);
        if c0.norm() > NORM_EPS || (n >= 1 && (c1 - 1.0).norm() > NORM_EPS) {
            return Err(SeriesError::NotNormalized { c0, c1 });
        }
        let mut g = Self::identity(n);
        if n < 2 {
            return Ok(g);
        }
        // powers[k] = s^k; coefficient m of compose(g, s) is Σ g_k [s^k]_m.
        let mut powers = vec![Self::one(n), self.clone()];
        for k in 2..n {
            let next = powers[k - 1].mul(self)?;
            powers.push(next);
        }
        for m in 2..=n {
            let acc: Complex64 = (1..m).map(|k| g.coeffs[k] * powers[k].coeffs[m]).sum();
            g.coeffs[m] = -acc;
        }
        Ok(g)
    }

    fn expect_constant(&self, expected: f64) -> Result<()> {
        let got = self.coeffs[0];
        if (got - expected).norm() > NORM_EPS {
            return Err(SeriesError::ConstantTerm { expected, got });
        }
        Ok(())
    }

    /// Largest coefficient-wise modulus of `self - other` over the common prefix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order().max(other.order());
        (0..=n).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn s(coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs).unwrap()
    }

    fn assert_series(got: &TruncatedSeries, want: &[f64], tol: f64) {
        assert_eq!(got.order() + 1, want.len(), "order of {got:?}");
        let diff = got.max_abs_diff(&s(want));
        assert!(diff <= tol, "got {got:?}, want {want:?} (diff {diff:e})");
    }

    #[test]
    fn add_sub_scale() {
        assert_series(&s(&[1.0, 1.0]).add(&s(&[1.0, -1.0])).unwrap(), &[2.0, 0.0], 0.0);
        assert_series(&s(&[0.0, 1.0]).scale(c(3.0)), &[0.0, 3.0], 0.0);
        assert_series(&s(&[0.0, 1.0, 1.0]).sub(&s(&[0.0, 1.0, 0.0])).unwrap(), &[0.0, 0.0, 1.0], 0.0);
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let err = s(&[1.0, 2.0]).add(&s(&[1.0])).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 1, right: 0 });
        assert!(s(&[1.0]).mul(&s(&[1.0, 0.0])).is_err());
        assert!(s(&[1.0]).div(&s(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn cauchy_product() {
        assert_series(&s(&[1.0, 1.0, 0.0]).mul(&s(&[1.0, -1.0, 0.0])).unwrap(), &[1.0, 0.0, -1.0], 0.0);
        assert_series(&s(&[0.0, 1.0, 0.0, 0.0]).mul(&s(&[0.0, 1.0, 0.0, 0.0])).unwrap(), &[0.0, 0.0, 1.0, 0.0], 0.0);
        assert_series(&s(&[1.0, 2.0, 3.0]).mul(&s(&[1.0, 1.0, 0.0])).unwrap(), &[1.0, 3.0, 5.0], 0.0);
    }

    #[test]
    fn division() {
        let one = TruncatedSeries::one(3);
        assert_series(&one.div(&s(&[1.0, -1.0, 0.0, 0.0])).unwrap(), &[1.0, 1.0, 1.0, 1.0], 0.0);
        let t = s(&[1.0, 1.0, 0.0]);
        assert_series(&t.div(&t).unwrap(), &[1.0, 0.0, 0.0], 0.0);
        let q = TruncatedSeries::one(2).div(&s(&[1.0, -0.6, 1.0])).unwrap();
        assert_series(&q, &[1.0, 0.6, -0.64], 1e-15);
    }

    #[test]
    fn division_by_zero_constant() {
        let err = TruncatedSeries::one(2).div(&s(&[1e-14, 1.0, 0.0])).unwrap_err();
        assert!(matches!(err, SeriesError::DivisionByZero(_)));
    }

    #[test]
    fn derivative_rules() {
        let a2 = 0.3;
        let a3 = -1.5;
        assert_series(&s(&[0.0, 1.0, a2, a3]).derivative(), &[1.0, 2.0 * a2, 3.0 * a3], 0.0);
        assert_series(&s(&[7.0, 0.0]).derivative(), &[0.0], 0.0);
        assert_series(&s(&[0.0, 0.0, 0.0, 0.0, 1.0]).derivative(), &[0.0, 0.0, 0.0, 4.0], 0.0);
    }

    #[test]
    fn derivative_of_integral_is_exact() {
        let x = s(&[0.5, -1.25, 3.0, 0.125, 7.0]);
        assert_eq!(x.integral().derivative(), x);
    }

    #[test]
    fn composition() {
        let outer = s(&[1.0, 1.0, 1.0, 0.0, 0.0]);
        let inner = s(&[0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_series(&outer.compose(&inner).unwrap(), &[1.0, 0.0, 1.0, 0.0, 1.0], 0.0);

        let outer = s(&[4.0, 2.0, -1.0]);
        assert_series(&outer.compose(&TruncatedSeries::zero(2)).unwrap(), &[4.0, 0.0, 0.0], 0.0);

        let geom = TruncatedSeries::one(3).div(&s(&[1.0, -1.0, 0.0, 0.0])).unwrap();
        let got = geom.compose(&s(&[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert_series(&got, &[1.0, 1.0, 2.0, 3.0], 1e-15);
    }

    #[test]
    fn composition_needs_zero_constant() {
        let err = s(&[1.0, 1.0]).compose(&s(&[0.5, 1.0])).unwrap_err();
        assert!(matches!(err, SeriesError::NonZeroInnerConstant(_)));
    }

    #[test]
    fn log_and_exp() {
        assert_series(&TruncatedSeries::one(4).log1().unwrap(), &[0.0; 5], 0.0);
        assert_series(&TruncatedSeries::zero(4).exp0().unwrap(), &[1.0, 0.0, 0.0, 0.0, 0.0], 0.0);
        let log = s(&[1.0, 1.0, 0.0, 0.0]).log1().unwrap();
        assert_series(&log, &[0.0, 1.0, -0.5, 1.0 / 3.0], 1e-15);
        assert!(matches!(s(&[2.0, 1.0]).log1(), Err(SeriesError::ConstantTerm { .. })));
        assert!(matches!(s(&[0.1, 1.0]).exp0(), Err(SeriesError::ConstantTerm { .. })));
    }

    #[test]
    fn real_powers() {
        let x = s(&[1.0, 0.4, -0.2, 0.9]);
        assert_series(&x.real_power(0.0).unwrap(), &[1.0, 0.0, 0.0, 0.0], 0.0);
        assert!(x.real_power(1.0).unwrap().max_abs_diff(&x) <= 1e-11);
        let half = s(&[1.0, 1.0, 0.0]).real_power(0.5).unwrap();
        assert_series(&half, &[1.0, 0.5, -0.125], 1e-15);
    }

    #[test]
    fn reversion() {
        assert_series(&TruncatedSeries::identity(5).revert().unwrap(), &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0], 0.0);
        let g = s(&[0.0, 1.0, 0.5, 0.0]).revert().unwrap();
        assert_series(&g, &[0.0, 1.0, -0.5, 0.5], 1e-15);
        let back = g.compose(&s(&[0.0, 1.0, 0.5, 0.0])).unwrap();
        assert_series(&back, &[0.0, 1.0, 0.0, 0.0], 1e-15);
    }

    #[test]
    fn reversion_requires_normalisation() {
        assert!(matches!(s(&[0.0, 2.0, 1.0]).revert(), Err(SeriesError::NotNormalized { .. })));
        assert!(matches!(s(&[0.1, 1.0, 1.0]).revert(), Err(SeriesError::NotNormalized { .. })));
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(TruncatedSeries::from_real(&[1.0, f64::NAN]).unwrap_err(), SeriesError::NonFinite(1));
        assert_eq!(TruncatedSeries::new(vec![]).unwrap_err(), SeriesError::Empty);
    }

    #[test]
    fn shifts() {
        let x = s(&[0.0, 1.0, 2.0, 3.0]);
        assert_series(&x.shift_down().unwrap(), &[1.0, 2.0, 3.0, 0.0], 0.0);
        assert_series(&x.shift_up(), &[0.0, 0.0, 1.0, 2.0], 0.0);
        assert!(s(&[1.0, 1.0]).shift_down().is_err());
    }
}
