//! Passage between an X1 equation and its weight `W(x)(x−r)^θ`, where `W`
//! is the Pearson weight with `W'/W = (d*x + e*)/A`.
//!
//! Self-adjointness forces `B = (x−r)(d*x + e* + A') + θA`, which gives
//! `d* = b₂ − a₂(2+θ)` and `e* = b₁ + b₂r − θ(a₁ + a₂r) − a₁`.

use super::{derive, Branch, X1Derived, X1Error, X1Spec};
use crate::pearson::PearsonParams;
use crate::polycore::rational::is_even_integer;
use crate::polycore::{int, Rational, Surd};
use num_traits::{Signed, Zero};

/// `(θ, W)` for the weight `W(x)(x−r)^θ`. `θ` must be an even integer so
/// that the weight keeps its sign across `r`.
pub fn x1_weight(spec: &X1Spec, der: &X1Derived) -> Result<(Rational, PearsonParams), X1Error> {
    let theta = der
        .theta
        .clone()
        .ok_or_else(|| X1Error::InvalidSpec("theta undefined when A(r) = 0".into()))?;
    if !is_even_integer(&theta) {
        return Err(X1Error::Positivity(format!(
            "theta = {theta} is not an even integer, so (x - r)^theta changes sign"
        )));
    }
    let dstar = &spec.b2 - &spec.a2 * (int(2) + &theta);
    let estar = &spec.b1 + &spec.b2 * &spec.r - &theta * (&spec.a1 + &spec.a2 * &spec.r) - &spec.a1;
    let w = PearsonParams::new(spec.a2.clone(), spec.a1.clone(), spec.a0.clone(), dstar, estar)?;
    Ok((theta, w))
}

fn quadratic_b(theta: &Rational, w: &PearsonParams, r: &Rational) -> (Rational, Rational, Rational) {
    let two = int(2);
    let b2 = &w.dstar + (theta + &two) * &w.a;
    let b1 = &w.estar - r * (&w.dstar + &two * &w.a) + (theta + int(1)) * &w.b;
    let b0 = theta * &w.c - r * (&w.estar + &w.b);
    (b2, b1, b0)
}

/// `c₀* = 2θA(r)b₂ / (e* + rd* + (θ+1)(2ra + b) ∓ √Δ)` with `Δ` the
/// discriminant of `B`; `Plus` takes the minus sign. `None` when the
/// denominator vanishes or `Δ < 0`.
pub fn c0_closed_form(theta: &Rational, w: &PearsonParams, r: &Rational, branch: Branch) -> Option<Surd> {
    let (b2, b1, b0) = quadratic_b(theta, w, r);
    let disc = &b1 * &b1 - int(4) * &b0 * &b2;
    if disc.is_negative() {
        return None;
    }
    let ar = (&w.a * r + &w.b) * r + &w.c;
    let base = &w.estar + r * &w.dstar + (theta + int(1)) * (int(2) * r * &w.a + &w.b);
    let root = Surd::sqrt(&disc);
    let den = match branch {
        Branch::Plus => Surd::from(base) - root,
        Branch::Minus => Surd::from(base) + root,
    };
    if den.is_zero() {
        return None;
    }
    Some(Surd::from(int(2) * theta * ar * b2) / den)
}

/// X1 equation with weight `W(x)(x−r)^θ`. The branch is the one whose
/// derived `c₀*` agrees with the closed form, preferring `Plus`.
pub fn equation_from_weight(
    theta: &Rational,
    w: &PearsonParams,
    r: &Rational,
) -> Result<(X1Spec, X1Derived), X1Error> {
    let (b2, b1, b0) = quadratic_b(theta, w, r);
    let spec = X1Spec::new(
        w.a.clone(),
        w.b.clone(),
        w.c.clone(),
        b2.clone(),
        b1,
        b0,
        r.clone(),
        Branch::Plus,
    );
    if b2.is_zero() {
        let der = derive(&spec)?;
        return Ok((spec, der));
    }
    for branch in [Branch::Plus, Branch::Minus] {
        let s = spec.with_branch(branch);
        let der = derive(&s)?;
        if c0_closed_form(theta, w, r, branch).is_some_and(|c| c == der.c0star) {
            return Ok((s, der));
        }
    }
    Err(X1Error::ClosedFormMismatch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat;

    #[test]
    fn roundtrip_jacobi_weight() {
        // (1−x)^{1/2}(1+x)^{5/2}: W'/W = (2 − 3x)/(1 − x²)
        let w = PearsonParams::new(int(-1), int(0), int(1), int(-3), int(2)).unwrap();
        for r in [rat(3, 2), int(-3), int(5)] {
            for theta in [int(-2), int(0), int(2)] {
                let (s, d) = equation_from_weight(&theta, &w, &r).unwrap();
                let (t, w2) = x1_weight(&s, &d).unwrap();
                assert_eq!(t, theta);
                assert_eq!(w2, w);
            }
        }
    }

    #[test]
    fn odd_theta_is_rejected() {
        let s = X1Spec::new(int(0), int(0), int(1), int(-2), int(-1), int(1), int(0), Branch::Plus);
        let d = derive(&s).unwrap();
        assert!(matches!(x1_weight(&s, &d), Err(X1Error::Positivity(_))));
    }

    #[test]
    fn closed_form_matches_plus_branch() {
        let w = PearsonParams::new(int(0), int(1), int(0), int(-1), int(1)).unwrap();
        let r = int(-1);
        let theta = int(-2);
        let (s, d) = equation_from_weight(&theta, &w, &r).unwrap();
        assert_eq!(s.branch, Branch::Plus);
        assert_eq!(c0_closed_form(&theta, &w, &r, Branch::Plus), Some(d.c0star));
    }
}
