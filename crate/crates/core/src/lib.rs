//! Classical and exceptional X1 orthogonal polynomials built from the generic
//! Pearson/Sturm-Liouville classification.
//!
//! All algebra is exact over [`polycore::Rational`] (or the quadratic extension
//! [`polycore::Surd`] when the roots of `B` are irrational); orthogonality is
//! checked numerically by [`quadrature`].

pub mod polycore;
pub mod pearson;
pub mod classical;
pub mod quadrature;
pub mod x1;
pub mod families;
