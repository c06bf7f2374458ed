//! Pearson weights `W'/W = (d*x + e*)/(ax² + bx + c)` and the six classical
//! distributions (Beta, Gamma, Normal, Fisher F, inverse Gamma, generalized T).
//!
//! Two parameter conventions coexist. The weight form `(d*, e*)` is what the
//! logarithmic derivative uses; the equation form `(d, e)` of the
//! hypergeometric equation `σy'' + (dx + e)y' − λy = 0` satisfied by the
//! orthogonal polynomials is related by `d = d* + 2a`, `e = e* + b`.

use crate::polycore::rational::to_f64;
use crate::polycore::{int, Poly, Rational};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PearsonError {
    #[error("denominator ax^2+bx+c vanishes identically")]
    ZeroDenominator,
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("x = {0} is outside the open support")]
    Domain(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PearsonParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub dstar: Rational,
    pub estar: Rational,
}

impl PearsonParams {
    pub fn new(
        a: Rational,
        b: Rational,
        c: Rational,
        dstar: Rational,
        estar: Rational,
    ) -> Result<Self, PearsonError> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(PearsonError::ZeroDenominator);
        }
        Ok(PearsonParams { a, b, c, dstar, estar })
    }

    /// Weight of the hypergeometric equation with `σ = ax²+bx+c`, `τ = dx+e`.
    pub fn from_equation_form(
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        e: Rational,
    ) -> Result<Self, PearsonError> {
        let dstar = d - int(2) * &a;
        let estar = e - &b;
        Self::new(a, b, c, dstar, estar)
    }

    /// `(d, e) = (d* + 2a, e* + b)`.
    pub fn equation_form(&self) -> (Rational, Rational) {
        (&self.dstar + int(2) * &self.a, &self.estar + &self.b)
    }

    pub fn sigma(&self) -> Poly {
        Poly::from_coeffs(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    /// Natural log of the weight, integrating `(d*x+e*)/(ax²+bx+c)` by the
    /// root configuration of the denominator. The additive constant is
    /// chosen so the six table rows come out with unit normalization.
    pub fn log_weight(&self, x: f64) -> Result<f64, PearsonError> {
        let [a, b, c, d, e] =
            [&self.a, &self.b, &self.c, &self.dstar, &self.estar].map(to_f64);
        let disc = &self.b * &self.b - int(4) * &self.a * &self.c;
        let v = if !self.a.is_zero() {
            if disc.is_positive() {
                let s = to_f64(&disc).sqrt();
                let x1 = (-b + s) / (2.0 * a);
                let x2 = (-b - s) / (2.0 * a);
                let ea = (d * x1 + e) / (a * (x1 - x2));
                let eb = (d * x2 + e) / (a * (x2 - x1));
                ea * (x - x1).abs().ln() + eb * (x - x2).abs().ln()
            } else if disc.is_zero() {
                let x0 = -b / (2.0 * a);
                (d / a) * (x - x0).abs().ln() - (d * x0 + e) / (a * (x - x0))
            } else {
                let s = to_f64(&-disc).sqrt();
                let sig = a * x * x + b * x + c;
                (d / (2.0 * a)) * sig.abs().ln()
                    + (e - d * b / (2.0 * a)) * (2.0 / s) * ((2.0 * a * x + b) / s).atan()
            }
        } else if !self.b.is_zero() {
            (d / b) * x + ((e - d * c / b) / b) * (b * x + c).abs().ln()
        } else {
            d * x * x / (2.0 * c) + e * x / c
        };
        if v.is_nan() {
            return Err(PearsonError::Domain(x));
        }
        Ok(v)
    }

    pub fn weight_eval(&self, x: f64) -> Result<f64, PearsonError> {
        let sig = to_f64(&self.a) * x * x + to_f64(&self.b) * x + to_f64(&self.c);
        if sig == 0.0 {
            return Err(PearsonError::Domain(x));
        }
        Ok(self.log_weight(x)?.exp())
    }
}

/// `W'/W` as the exact pair `(d*x + e*, ax² + bx + c)`.
pub fn weight_logderiv(w: &PearsonParams) -> (Poly, Poly) {
    (
        Poly::from_coeffs(vec![w.estar.clone(), w.dstar.clone()]),
        w.sigma(),
    )
}

/// Interval endpoint.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    Finite(Rational),
    NegInf,
    PosInf,
}

impl Bound {
    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::Finite(r) => to_f64(r),
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::PosInf => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    pub lo: Bound,
    pub hi: Bound,
}

impl Support {
    pub fn finite(lo: Rational, hi: Rational) -> Self {
        Support { lo: Bound::Finite(lo), hi: Bound::Finite(hi) }
    }

    pub fn half_line(lo: Rational) -> Self {
        Support { lo: Bound::Finite(lo), hi: Bound::PosInf }
    }

    pub fn real_line() -> Self {
        Support { lo: Bound::NegInf, hi: Bound::PosInf }
    }

    pub fn bounds_f64(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }

    /// Strict interior membership.
    pub fn contains_open(&self, x: &Rational) -> bool {
        let above = match &self.lo {
            Bound::Finite(l) => x > l,
            _ => true,
        };
        let below = match &self.hi {
            Bound::Finite(h) => x < h,
            _ => true,
        };
        above && below
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Beta,
    Gamma,
    Normal,
    FisherF,
    InverseGamma,
    GeneralizedT,
}

/// One row of the classical weight table with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalWeight {
    /// `(1−x)^α (1+x)^β` on `[−1, 1]`
    Beta { alpha: Rational, beta: Rational },
    /// `x^α e^(−x)` on `[0, ∞)`
    Gamma { alpha: Rational },
    /// `e^(−x²)` on `(−∞, ∞)`
    Normal,
    /// `x^q (1+x)^(−(p+q))` on `[0, ∞)`
    FisherF { p: Rational, q: Rational },
    /// `x^(−p) e^(−1/x)` on `[0, ∞)`
    InverseGamma { p: Rational },
    /// `(1+x²)^(−p) e^(q·atan x)` on `(−∞, ∞)`
    GeneralizedT { p: Rational, q: Rational },
}

impl ClassicalWeight {
    pub fn kind(&self) -> WeightKind {
        match self {
            ClassicalWeight::Beta { .. } => WeightKind::Beta,
            ClassicalWeight::Gamma { .. } => WeightKind::Gamma,
            ClassicalWeight::Normal => WeightKind::Normal,
            ClassicalWeight::FisherF { .. } => WeightKind::FisherF,
            ClassicalWeight::InverseGamma { .. } => WeightKind::InverseGamma,
            ClassicalWeight::GeneralizedT { .. } => WeightKind::GeneralizedT,
        }
    }

    pub fn support(&self) -> Support {
        match self {
            ClassicalWeight::Beta { .. } => Support::finite(int(-1), int(1)),
            ClassicalWeight::Normal | ClassicalWeight::GeneralizedT { .. } => Support::real_line(),
            _ => Support::half_line(int(0)),
        }
    }

    /// Parameter-domain constraints that do not depend on the degree.
    pub fn validate(&self) -> Result<(), PearsonError> {
        let gt = |v: &Rational, name: &str| {
            if *v > int(-1) {
                Ok(())
            } else {
                Err(PearsonError::Constraint(format!("{name} > -1 (got {v})")))
            }
        };
        match self {
            ClassicalWeight::Beta { alpha, beta } => {
                gt(alpha, "alpha")?;
                gt(beta, "beta")
            }
            ClassicalWeight::Gamma { alpha } => gt(alpha, "alpha"),
            ClassicalWeight::FisherF { q, .. } => gt(q, "q"),
            _ => Ok(()),
        }
    }

    /// Whether degree `n` lies in the finite-orthogonality window.
    pub fn admits_degree(&self, n: usize) -> Result<(), PearsonError> {
        let two_n = int(2 * n as i64);
        match self {
            ClassicalWeight::FisherF { p, .. } | ClassicalWeight::InverseGamma { p } => {
                if two_n < p - int(1) {
                    Ok(())
                } else {
                    Err(PearsonError::Constraint(format!("max n < (p-1)/2 (n = {n}, p = {p})")))
                }
            }
            ClassicalWeight::GeneralizedT { p, .. } => {
                if two_n < int(2) * p - int(1) {
                    Ok(())
                } else {
                    Err(PearsonError::Constraint(format!("max n < p - 1/2 (n = {n}, p = {p})")))
                }
            }
            _ => Ok(()),
        }
    }

    /// Natural log of the closed-form weight. `to_lo`/`to_hi` are the
    /// distances from `x` to the support ends (infinite for unbounded ends)
    /// and are used instead of `x` near finite endpoints.
    pub fn log_weight_at(&self, x: f64, to_lo: f64, to_hi: f64) -> f64 {
        match self {
            ClassicalWeight::Beta { alpha, beta } => {
                to_f64(alpha) * to_hi.ln() + to_f64(beta) * to_lo.ln()
            }
            ClassicalWeight::Gamma { alpha } => to_f64(alpha) * to_lo.ln() - x,
            ClassicalWeight::Normal => -x * x,
            ClassicalWeight::FisherF { p, q } => {
                to_f64(q) * to_lo.ln() - to_f64(&(p + q)) * to_lo.ln_1p()
            }
            ClassicalWeight::InverseGamma { p } => -to_f64(p) * to_lo.ln() - 1.0 / to_lo,
            ClassicalWeight::GeneralizedT { p, q } => {
                let l = if x.abs() > 1e150 { 2.0 * x.abs().ln() } else { (x * x).ln_1p() };
                -to_f64(p) * l + to_f64(q) * x.atan()
            }
        }
    }

    pub fn weight_eval(&self, x: f64) -> Result<f64, PearsonError> {
        let (lo, hi) = self.support().bounds_f64();
        if !(x > lo && x < hi) {
            return Err(PearsonError::Domain(x));
        }
        Ok(self.log_weight_at(x, x - lo, hi - x).exp())
    }
}

/// The `(d*, e*; a, b, c)` row of the weight table, after validating the
/// row's parameter domain.
pub fn pearson_from_table(w: &ClassicalWeight) -> Result<PearsonParams, PearsonError> {
    w.validate()?;
    let (a, b, c, d, e) = match w {
        ClassicalWeight::Beta { alpha, beta } => {
            (int(-1), int(0), int(1), -(alpha + beta), beta - alpha)
        }
        ClassicalWeight::Gamma { alpha } => (int(0), int(1), int(0), int(-1), alpha.clone()),
        ClassicalWeight::Normal => (int(0), int(0), int(1), int(-2), int(0)),
        ClassicalWeight::FisherF { p, q } => (int(1), int(1), int(0), -p.clone(), q.clone()),
        ClassicalWeight::InverseGamma { p } => (int(1), int(0), int(0), -p.clone(), int(1)),
        ClassicalWeight::GeneralizedT { p, q } => {
            (int(1), int(0), int(1), int(-2) * p, q.clone())
        }
    };
    PearsonParams::new(a, b, c, d, e)
}
