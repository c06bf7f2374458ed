//! Elements `p + q·√D` of a quadratic extension of the rationals.
//!
//! `D` may be negative. Values with `q = 0` are plain rationals and mix freely
//! with any extension; two genuinely irrational values must share a field
//! (their radicands differ by a rational square factor), otherwise arithmetic
//! panics.

use super::rational::{format_exact, sqrt_exact, to_f64, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug)]
pub struct Surd {
    p: Rational,
    q: Rational,
    d: Rational,
}

impl Surd {
    pub fn new(p: Rational, q: Rational, d: Rational) -> Self {
        Surd { p, q, d }.normalized()
    }

    pub fn from_rational(p: Rational) -> Self {
        Surd { p, q: Rational::zero(), d: Rational::zero() }
    }

    /// `√r`, rational when `r` is a rational square.
    pub fn sqrt(r: &Rational) -> Self {
        Surd::new(Rational::zero(), Rational::one(), r.clone())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.q
    }

    /// Radicand; zero for rational values.
    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.p.clone())
    }

    pub fn conj(&self) -> Self {
        Surd { p: self.p.clone(), q: -self.q.clone(), d: self.d.clone() }
    }

    /// Field norm `p² − q²D`.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * &self.d
    }

    pub fn approx(&self) -> f64 {
        if self.q.is_zero() {
            return to_f64(&self.p);
        }
        to_f64(&self.p) + to_f64(&self.q) * to_f64(&self.d).sqrt()
    }

    /// `p+q*sqrt(D)` with exact `num/den` parts; plain `num/den` when rational.
    pub fn format_exact(&self) -> String {
        if self.is_rational() {
            format_exact(&self.p)
        } else {
            format!("{}+{}*sqrt({})", format_exact(&self.p), format_exact(&self.q), format_exact(&self.d))
        }
    }

    /// Keeps an already-normalized radicand.
    fn raw(p: Rational, q: Rational, d: Rational) -> Self {
        if q.is_zero() {
            Surd::from_rational(p)
        } else {
            Surd { p, q, d }
        }
    }

    fn normalized(mut self) -> Self {
        if self.q.is_zero() || self.d.is_zero() {
            self.q = Rational::zero();
            self.d = Rational::zero();
            return self;
        }
        if let Some(s) = sqrt_exact(&self.d) {
            self.p = &self.p + &self.q * s;
            self.q = Rational::zero();
            self.d = Rational::zero();
            return self;
        }
        // integral radicand with small square factors pulled out
        let den = self.d.denom().clone();
        let mut m: BigInt = self.d.numer() * &den;
        self.q = &self.q / Rational::from_integer(den);
        let mut k = BigInt::from(2);
        let limit = BigInt::from(64);
        while k <= limit {
            let k2 = &k * &k;
            while (&m % &k2).is_zero() {
                m /= &k2;
                self.q = &self.q * Rational::from_integer(k.clone());
            }
            k += 1;
        }
        self.d = Rational::from_integer(m);
        self
    }

    /// Rewrites both operands over one radicand.
    fn unify(&self, other: &Surd) -> (Rational, Rational, Rational) {
        if other.q.is_zero() {
            return (self.d.clone(), self.q.clone(), Rational::zero());
        }
        if self.q.is_zero() || self.d == other.d {
            return (other.d.clone(), self.q.clone(), other.q.clone());
        }
        let ratio = &other.d / &self.d;
        match sqrt_exact(&ratio) {
            Some(s) => (self.d.clone(), self.q.clone(), &other.q * s),
            None => panic!(
                "mixing incompatible quadratic fields sqrt({}) and sqrt({})",
                self.d, other.d
            ),
        }
    }

    fn compatible(&self, other: &Surd) -> bool {
        self.q.is_zero()
            || other.q.is_zero()
            || self.d == other.d
            || sqrt_exact(&(&other.d / &self.d)).is_some()
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        if !self.compatible(other) {
            return false;
        }
        let (_, q1, q2) = self.unify(other);
        self.p == other.p && q1 == q2
    }
}

impl From<Rational> for Surd {
    fn from(p: Rational) -> Self {
        Surd::from_rational(p)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.p)
        } else if self.q.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.p, -self.q.clone(), self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.d)
        }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let (d, q1, q2) = self.unify(&o);
        Surd::raw(self.p + o.p, q1 + q2, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        self + (-o)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { p: -self.p, q: -self.q, d: self.d }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let (d, q1, q2) = self.unify(&o);
        let p = &self.p * &o.p + &q1 * &q2 * &d;
        let q = &self.p * &q2 + &o.p * &q1;
        Surd::raw(p, q, d)
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, o: Surd) -> Surd {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero");
        let num = self * o.conj();
        Surd::raw(num.p / &n, num.q / &n, num.d)
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::from_rational(Rational::one())
    }
}
