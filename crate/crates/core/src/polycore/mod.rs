//! Exact scalars, dense polynomials and small exact linear algebra.

pub mod linalg;
pub mod poly;
pub mod rational;
pub mod surd;

pub use poly::{Poly, PolyError};
pub use rational::{int, parse_rational, rat, Rational};
pub use surd::Surd;

use num_traits::{One, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact coefficient field. Implemented for [`Rational`] and [`Surd`].
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + From<Rational>
    + Send
    + Sync
    + 'static
{
    fn approx(&self) -> f64;

    /// `num/den`, or `p+q*sqrt(D)` for extension elements.
    fn format_exact(&self) -> String;
}

impl Scalar for Rational {
    fn approx(&self) -> f64 {
        rational::to_f64(self)
    }
    fn format_exact(&self) -> String {
        rational::format_exact(self)
    }
}

impl Scalar for Surd {
    fn approx(&self) -> f64 {
        Surd::approx(self)
    }
    fn format_exact(&self) -> String {
        Surd::format_exact(self)
    }
}
