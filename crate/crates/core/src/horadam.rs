//! Horadam polynomials `h₁ = a`, `h₂ = bx`, `hₙ = p·x·hₙ₋₁ + q·hₙ₋₂`.
//!
//! Indexing starts at `n = 1`, so the classical degree-`n` member of a named
//! family (Chebyshev, Fibonacci, ...) sits at engine index `n + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::series::TruncatedSeries;
use crate::Error;

/// The real quadruple `(a, b, p, q)` defining a Horadam family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoradamParams {
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub q: f64,
}

impl HoradamParams {
    pub fn new(a: f64, b: f64, p: f64, q: f64) -> Result<Self, Error> {
        let params = Self { a, b, p, q };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if [self.a, self.b, self.p, self.q].iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite("Horadam parameter"))
        }
    }

    /// `hₙ(x)` by the three-term recurrence.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn eval(&self, n: usize, x: f64) -> f64 {
        assert!(n >= 1, "Horadam polynomials are indexed from 1");
        let (mut prev, mut cur) = (self.a, self.b * x);
        if n == 1 {
            return prev;
        }
        for _ in 2..n {
            let next = self.p * x * cur + self.q * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `[h₁(x), …, h_{n_max}(x)]`.
    pub fn sequence(&self, n_max: usize, x: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(n_max);
        if n_max == 0 {
            return out;
        }
        out.push(self.a);
        if n_max >= 2 {
            out.push(self.b * x);
        }
        for n in 2..n_max {
            out.push(self.p * x * out[n - 1] + self.q * out[n - 2]);
        }
        out
    }

    /// The first `n_max` Taylor coefficients in `z` of
    /// `(a + (b − ap)xz) / (1 − pxz − qz²)`, obtained by series division.
    /// Coefficient `k` equals `h_{k+1}(x)`.
    pub fn gf_coefficients(&self, x: f64, n_max: usize) -> Vec<f64> {
        if n_max == 0 {
            return Vec::new();
        }
        let order = n_max - 1;
        let mut num = vec![0.0; n_max.max(3)];
        let mut den = vec![0.0; n_max.max(3)];
        num[0] = self.a;
        num[1] = (self.b - self.a * self.p) * x;
        den[0] = 1.0;
        den[1] = -self.p * x;
        den[2] = -self.q;
        let num = TruncatedSeries::from_real(&num).expect("finite numerator").truncate(order);
        let den = TruncatedSeries::from_real(&den).expect("finite denominator").truncate(order);
        num.div(&den).expect("denominator has constant term 1").coeffs().iter().map(|c| c.re).collect()
    }

    /// `h₂(x) = bx`.
    pub fn h2(&self, x: f64) -> f64 {
        self.b * x
    }

    /// `h₃(x) = pbx² + qa`, the constant every bound denominator depends on.
    pub fn h3(&self, x: f64) -> f64 {
        self.p * self.b * x * x + self.q * self.a
    }
}

impl fmt::Display for HoradamParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.p, self.q)
    }
}

/// A named specialisation of the Horadam recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyFamily {
    Fibonacci,
    Lucas,
    Pell,
    PellLucas,
    ChebyshevFirst,
    ChebyshevSecond,
    Custom(HoradamParams),
}

impl PolyFamily {
    pub const NAMED: [PolyFamily; 6] = [
        PolyFamily::Fibonacci,
        PolyFamily::Lucas,
        PolyFamily::Pell,
        PolyFamily::PellLucas,
        PolyFamily::ChebyshevFirst,
        PolyFamily::ChebyshevSecond,
    ];

    pub fn params(&self) -> HoradamParams {
        let (a, b, p, q) = match *self {
            PolyFamily::Fibonacci => (1.0, 1.0, 1.0, 1.0),
            PolyFamily::Lucas => (2.0, 1.0, 1.0, 1.0),
            PolyFamily::Pell => (1.0, 2.0, 2.0, 1.0),
            PolyFamily::PellLucas => (2.0, 2.0, 2.0, 1.0),
            PolyFamily::ChebyshevFirst => (1.0, 1.0, 2.0, -1.0),
            PolyFamily::ChebyshevSecond => (1.0, 2.0, 2.0, -1.0),
            PolyFamily::Custom(params) => return params,
        };
        HoradamParams { a, b, p, q }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PolyFamily::Fibonacci => "fibonacci",
            PolyFamily::Lucas => "lucas",
            PolyFamily::Pell => "pell",
            PolyFamily::PellLucas => "pell-lucas",
            PolyFamily::ChebyshevFirst => "chebyshev1",
            PolyFamily::ChebyshevSecond => "chebyshev2",
            PolyFamily::Custom(_) => "custom",
        }
    }
}

/// Free-function form of [`PolyFamily::params`].
pub fn family_params(family: PolyFamily) -> HoradamParams {
    family.params()
}

impl FromStr for PolyFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let family = match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "fibonacci" => PolyFamily::Fibonacci,
            "lucas" => PolyFamily::Lucas,
            "pell" => PolyFamily::Pell,
            "pell-lucas" | "pelllucas" => PolyFamily::PellLucas,
            "chebyshev1" | "chebyshev-first" | "chebyshev-t" => PolyFamily::ChebyshevFirst,
            "chebyshev2" | "chebyshev-second" | "chebyshev-u" => PolyFamily::ChebyshevSecond,
            other => return Err(Error::Parse(format!("unknown polynomial family `{other}`"))),
        };
        Ok(family)
    }
}

impl FromStr for HoradamParams {
    type Err = Error;

    /// Parses `a,b,p,q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("bad parameter list `{s}`: {e}")))?;
        match values[..] {
            [a, b, p, q] => HoradamParams::new(a, b, p, q),
            _ => Err(Error::Parse(format!("expected four comma-separated values, got `{s}`"))),
        }
    }
}

/// `Uₙ(cos φ) = sin((n+1)φ) / sin φ`, with the removable singularity at
/// `φ ≡ 0 (mod π)` filled in by `±(n+1)`.
pub fn chebyshev_u_trig(n: usize, phi: f64) -> f64 {
    let s = phi.sin();
    if s.abs() < 1e-12 {
        let m = (n + 1) as f64;
        // cos φ = -1 gives Uₙ(-1) = (-1)ⁿ(n+1)
        return if phi.cos() < 0.0 && n % 2 == 1 { -m } else { m };
    }
    (((n + 1) as f64) * phi).sin() / s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn named_family_quadruples() {
        assert_eq!(family_params(PolyFamily::Fibonacci), HoradamParams { a: 1.0, b: 1.0, p: 1.0, q: 1.0 });
        assert_eq!(family_params(PolyFamily::ChebyshevSecond), HoradamParams { a: 1.0, b: 2.0, p: 2.0, q: -1.0 });
        let custom = HoradamParams::new(3.0, 1.0, 2.0, 5.0).unwrap();
        assert_eq!(family_params(PolyFamily::Custom(custom)), custom);
        let quads: Vec<_> = PolyFamily::NAMED
            .iter()
            .map(|f| {
                let p = f.params();
                (p.a, p.b, p.p, p.q)
            })
            .collect();
        assert_eq!(
            quads,
            vec![
                (1.0, 1.0, 1.0, 1.0),
                (2.0, 1.0, 1.0, 1.0),
                (1.0, 2.0, 2.0, 1.0),
                (2.0, 2.0, 2.0, 1.0),
                (1.0, 1.0, 2.0, -1.0),
                (1.0, 2.0, 2.0, -1.0),
            ]
        );
    }

    #[test]
    fn recurrence_values() {
        let fib = PolyFamily::Fibonacci.params();
        assert_eq!(fib.eval(4, 1.0), 3.0);
        assert_eq!(fib.eval(3, 0.5), 1.25);
        let odd = HoradamParams::new(-2.5, 4.0, 7.0, 9.0).unwrap();
        assert_eq!(odd.eval(1, 123.0), -2.5);
        assert_eq!(PolyFamily::Lucas.params().eval(3, 2.0), 6.0);
    }

    #[test]
    #[should_panic]
    fn index_zero_panics() {
        PolyFamily::Fibonacci.params().eval(0, 1.0);
    }

    #[test]
    fn sequences() {
        assert_eq!(PolyFamily::Fibonacci.params().sequence(4, 1.0), vec![1.0, 1.0, 2.0, 3.0]);
        let custom = HoradamParams::new(0.7, -1.3, 2.0, 3.0).unwrap();
        assert_eq!(custom.sequence(2, 0.4), vec![0.7, -1.3 * 0.4]);
        let u = PolyFamily::ChebyshevSecond.params().sequence(3, 0.3);
        assert_eq!(u.len(), 3);
        for (got, want) in u.iter().zip([1.0, 0.6, -0.64]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn generating_function_coefficients() {
        let u = PolyFamily::ChebyshevSecond.params().gf_coefficients(0.3, 3);
        for (got, want) in u.iter().zip([1.0, 0.6, -0.64]) {
            assert!((got - want).abs() < 1e-15);
        }
        let custom = HoradamParams::new(-1.75, 2.0, 3.0, 4.0).unwrap();
        assert_eq!(custom.gf_coefficients(0.9, 1), vec![-1.75]);
        assert_eq!(PolyFamily::Fibonacci.params().gf_coefficients(1.0, 4), vec![1.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn trig_form() {
        assert!((chebyshev_u_trig(0, 0.7) - 1.0).abs() < 1e-15);
        assert!((chebyshev_u_trig(1, PI / 3.0) - 1.0).abs() < 1e-15);
        let phi = 0.3f64.acos();
        assert!((chebyshev_u_trig(2, phi) + 0.64).abs() < 1e-14);
    }

    #[test]
    fn trig_form_limits() {
        assert_eq!(chebyshev_u_trig(4, 0.0), 5.0);
        assert_eq!(chebyshev_u_trig(3, PI), -4.0);
        assert_eq!(chebyshev_u_trig(2, PI), 3.0);
        assert_eq!(chebyshev_u_trig(3, 2.0 * PI), 4.0);
    }

    #[test]
    fn parsing() {
        assert_eq!("Chebyshev2".parse::<PolyFamily>().unwrap(), PolyFamily::ChebyshevSecond);
        assert_eq!("pell_lucas".parse::<PolyFamily>().unwrap(), PolyFamily::PellLucas);
        assert!("hermite".parse::<PolyFamily>().is_err());
        let p: HoradamParams = "1, 2,2,-1".parse().unwrap();
        assert_eq!(p, PolyFamily::ChebyshevSecond.params());
        assert!("1,2,3".parse::<HoradamParams>().is_err());
        assert!("1,2,3,x".parse::<HoradamParams>().is_err());
        assert!("1,2,3,inf".parse::<HoradamParams>().is_err());
    }
}
