//! Dense univariate polynomials over an exact [`Scalar`] field.

use super::{Rational, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero divisor")]
    ZeroDivisor,
}

/// Coefficient `k` multiplies `x^k`. Trailing zeros are never stored, so the
/// zero polynomial has no coefficients and equality is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F = Rational> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![F::zero(), F::one()] }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// `x − r`
    pub fn linear_root(r: F) -> Self {
        Self::from_coeffs(vec![-r, F::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Divides by the leading coefficient; `None` for the zero polynomial.
    pub fn monic(&self) -> Option<Self> {
        let lead = self.leading()?.clone();
        Some(self.scale(&(F::one() / lead)))
    }

    /// Quotient and remainder with `deg(rem) < deg(q)`.
    pub fn div_rem(&self, q: &Self) -> Result<(Self, Self), PolyError> {
        let dq = q.degree().ok_or(PolyError::ZeroDivisor)?;
        let lead = q.coeffs[dq].clone();
        let mut rem = self.coeffs.clone();
        let Some(dp) = self.degree().filter(|&d| d >= dq) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![F::zero(); dp - dq + 1];
        for k in (0..=dp - dq).rev() {
            let c = rem[k + dq].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * qc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dq);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// `q(x) = p(x + r)`: the coefficients of `p` in powers of `(x − r)`.
    pub fn shift(&self, r: &F) -> Self {
        // repeated synthetic division by (x − r)
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone() * r.clone();
                c[j] = c[j].clone() + t;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from(Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    /// Exact `k`-th derivative.
    pub fn diff(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// `p(q(x))`
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * q) + &Self::constant(c.clone()))
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn approx_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(Scalar::approx).collect()
    }

    pub fn exact_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(Scalar::format_exact).collect()
    }
}

impl<F: Scalar> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<F: Scalar> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<F: Scalar> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(v)
    }
}

impl<F: Scalar> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Scalar> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, o: Poly<F>) -> Poly<F> {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Scalar> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) if !m.contains(' ') => (true, m.to_string()),
                _ => (false, s),
            };
            let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = mag == "1";
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}*x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}
