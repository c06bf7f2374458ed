//! Closed-form reductions of the X1 equation to classical polynomials.
//!
//! Everything is written in `t = x − r` with `A(t + r) = a₂t² + A'(r)t + A(r)`:
//!
//! * Cases 1 and 4 with `A(r) = 0`: `y = t·P̄_{n−1}(b₂+2a₂, B'(r)+2A'(r); a₂, A'(r), 0 | t)`
//! * Case 2: `y = P̄_n(b₂, B'(r); a₂, A'(r), A(r) | t)`
//! * Case 3: `y = P̄_n(b₂, 0; a₂, A'(r), A(r) | t)`
//! * Case 6: `y = P̄_n(0, 0; a₂, A'(r), A(r) | t)`
//!
//! Case 5 and the general configuration have no reduction of this kind.

use super::{lift, spectral_data, BCase, X1Error, X1Spec};
use crate::classical::{monic_explicit, HypergeometricSpec};
use crate::polycore::{int, Poly, Surd};
use num_traits::Zero;

pub fn classify_b(spec: &X1Spec) -> Result<BCase, X1Error> {
    Ok(spectral_data(spec)?.case)
}

/// Monic degree-`n` eigenfunction from the classical reduction of its case.
/// The result is checked against the X1 equation before it is returned.
pub fn case_reduction(spec: &X1Spec, n: usize) -> Result<Poly<Surd>, X1Error> {
    if n == 0 {
        return Err(X1Error::InvalidSpec("X1 degrees start at 1".into()));
    }
    let der = spectral_data(spec)?;
    let (at, bt) = spec.shifted();
    let (a, b, c) = (spec.a2.clone(), at.coeff(1), at.coeff(0));
    let hyper = |d, e| HypergeometricSpec::new(a.clone(), b.clone(), c.clone(), d, e);
    let in_t = match der.case {
        BCase::Case1 | BCase::Case4 => {
            if !c.is_zero() {
                return Err(X1Error::NoClosedReduction(
                    "the factored form needs A(r) = 0".into(),
                ));
            }
            let h = hyper(&spec.b2 + int(2) * &spec.a2, bt.coeff(1) + int(2) * &b)?;
            &Poly::x() * &monic_explicit(&h, n - 1)?
        }
        BCase::Case2 => monic_explicit(&hyper(spec.b2.clone(), bt.coeff(1))?, n)?,
        BCase::Case3 => monic_explicit(&hyper(spec.b2.clone(), int(0))?, n)?,
        BCase::Case6 => {
            if n == 1 {
                return Err(X1Error::DegenerateEigenvalue { n, dim: 2 });
            }
            monic_explicit(&hyper(int(0), int(0))?, n)?
        }
        BCase::Case5 => {
            return Err(X1Error::NoClosedReduction("case 5 (b2 = 0, B(r) != 0)".into()))
        }
        BCase::General => {
            return Err(X1Error::NoClosedReduction("B(r) != 0 with b2 != 0".into()))
        }
    };
    let y = lift(&in_t.shift(&-spec.r.clone()));
    if !spec.residual(&der, &y).is_zero() {
        return Err(X1Error::NoClosedReduction(format!(
            "classical form fails the equation at degree {n}"
        )));
    }
    Ok(y)
}
