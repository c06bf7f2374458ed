//! The six named X1 families: ready-made [`X1Spec`] rows, closed-form `c₀*`,
//! weights `(x−r)^θ W(x)`, finite-orthogonality windows and reductions to
//! classical families.

use crate::classical::ClassicalFamily;
use crate::pearson::{pearson_from_table, Bound, ClassicalWeight, PearsonParams, Support};
use crate::polycore::rational::{is_even_integer, to_f64};
use crate::polycore::{int, rat, Rational, Surd};
use crate::quadrature::Node;
use crate::x1::{spectral_data, x1_solve, Branch, X1Error, X1Spec};
use num_traits::{Signed, Zero};

/// An X1 family member: classical parameters plus `θ`, `r` and the root
/// branch.
#[derive(Debug, Clone, PartialEq)]
pub struct X1FamilyParams {
    pub base: ClassicalFamily,
    pub theta: Rational,
    pub r: Rational,
    pub branch: Branch,
}

impl X1FamilyParams {
    /// Validates the classical parameter domain, evenness of `θ` and the
    /// placement of `r` relative to the support.
    pub fn new(
        base: ClassicalFamily,
        theta: Rational,
        r: Rational,
        branch: Branch,
    ) -> Result<Self, X1Error> {
        base.weight().validate()?;
        if !is_even_integer(&theta) {
            return Err(X1Error::Positivity(format!("theta must be an even integer (got {theta})")));
        }
        let fp = X1FamilyParams { base, theta, r, branch };
        fp.check_pole()?;
        Ok(fp)
    }

    pub fn with_branch(&self, branch: Branch) -> Self {
        X1FamilyParams { branch, ..self.clone() }
    }

    pub fn name(&self) -> String {
        format!("x1{}", self.base.name())
    }

    /// A negative `θ` puts a pole at `r`; it must sit outside the open
    /// support, and at an endpoint the combined exponent must stay above −1.
    fn check_pole(&self) -> Result<(), X1Error> {
        if !self.theta.is_negative() {
            return Ok(());
        }
        let support = self.base.support();
        if support.contains_open(&self.r) {
            return Err(X1Error::Positivity(format!(
                "r = {} lies inside the support while theta = {} < 0",
                self.r, self.theta
            )));
        }
        let t = &self.theta;
        let at = |end: &Bound| matches!(end, Bound::Finite(v) if *v == self.r);
        let endpoint_exponent = match &self.base {
            ClassicalFamily::Jacobi { alpha, .. } if at(&support.hi) => Some(("alpha", alpha + t)),
            ClassicalFamily::Jacobi { beta, .. } if at(&support.lo) => Some(("beta", beta + t)),
            ClassicalFamily::Laguerre { alpha } if at(&support.lo) => Some(("alpha", alpha + t)),
            ClassicalFamily::M { q, .. } if at(&support.lo) => Some(("q", q + t)),
            _ => None,
        };
        match endpoint_exponent {
            Some((name, e)) if e <= int(-1) => Err(X1Error::Positivity(format!(
                "{name} + theta > -1 is required with r at the endpoint (got {e})"
            ))),
            _ => Ok(()),
        }
    }

    /// Finite-orthogonality window for the largest degree in use.
    pub fn check_degree(&self, max_n: usize) -> Result<(), X1Error> {
        if orthogonality_window(self, max_n, max_n) {
            return Ok(());
        }
        let n = max_n;
        let t = &self.theta;
        Err(X1Error::Positivity(match &self.base {
            ClassicalFamily::M { p, .. } | ClassicalFamily::N { p } => {
                format!("p > 2 max n + theta + 1 (n = {n}, p = {p}, theta = {t})")
            }
            ClassicalFamily::J { p, .. } => {
                format!("p > max n + (theta + 1)/2 (n = {n}, p = {p}, theta = {t})")
            }
            _ => unreachable!("infinite families have no window"),
        }))
    }
}

/// `Q_{n,r}(b₂, b₁, b₀; a₂, a₁, a₀)` row of the family.
pub fn family_spec(fp: &X1FamilyParams) -> X1Spec {
    let (t, r) = (&fp.theta, &fp.r);
    let one = int(1);
    let two = int(2);
    let (b, a) = match &fp.base {
        ClassicalFamily::Jacobi { alpha, beta } => (
            [
                -(alpha + beta + t + &two),
                beta - alpha + r * (alpha + beta + &two),
                t - r * (beta - alpha),
            ],
            [int(-1), int(0), int(1)],
        ),
        ClassicalFamily::Laguerre { alpha } => (
            [int(-1), alpha + r + t + &one, -r * (alpha + &one)],
            [int(0), int(1), int(0)],
        ),
        ClassicalFamily::Hermite => ([int(-2), &two * r, t.clone()], [int(0), int(0), int(1)]),
        ClassicalFamily::M { p, q } => (
            [t + &two - p, q + t + &one + r * (p - &two), -r * (q + &one)],
            [int(1), int(1), int(0)],
        ),
        ClassicalFamily::N { p } => (
            [t + &two - p, &one + r * (p - &two), -r.clone()],
            [int(1), int(0), int(0)],
        ),
        ClassicalFamily::J { p, q } => (
            [t + &two - &two * p, q + &two * r * (p - &one), t - r * q],
            [int(1), int(0), int(1)],
        ),
    };
    let [b2, b1, b0] = b;
    let [a2, a1, a0] = a;
    X1Spec::new(a2, a1, a0, b2, b1, b0, r.clone(), fp.branch)
}

/// Each family's `c₀` as `num / (den ± √rad)`, `+` on the `Plus` branch.
fn c0_parts(fp: &X1FamilyParams) -> (Rational, Rational, Rational) {
    let (t, r) = (&fp.theta, &fp.r);
    let (one, two, four) = (int(1), int(2), int(4));
    match &fp.base {
        ClassicalFamily::Jacobi { alpha, beta } => {
            let s = alpha + beta + t + &two;
            let lin = (alpha + beta + &two) * r + beta - alpha;
            (
                &two * t * (&one - r * r) * &s,
                (alpha + beta + &two * t + &two) * r + alpha - beta,
                &lin * &lin + &four * &s * (t - r * (beta - alpha)),
            )
        }
        ClassicalFamily::Laguerre { alpha } => {
            let a1 = alpha + &one;
            (
                &two * r * t,
                r - alpha - t - &one,
                (r + t) * (r + t) + &a1 * (&a1 + &two * t - &two * r),
            )
        }
        ClassicalFamily::Hermite => {
            // 2θ/(r ± √(r²+2θ))
            (&two * t, r.clone(), r * r + &two * t)
        }
        ClassicalFamily::M { p, q } => {
            let lin = q + t + &one + r * (p - &two);
            (
                &two * t * r * (r + &one) * (p - t - &two),
                r * p - q - (t + &one) * (&two * r + &one),
                &lin * &lin + &four * r * (q + &one) * (t + &two - p),
            )
        }
        ClassicalFamily::N { p } => {
            let lin = &one + r * (p - &two);
            (
                &two * t * r * r * (p - t - &two),
                r * (p - &two * (t + &one)) - &one,
                &lin * &lin + &four * r * (t + &two - p),
            )
        }
        ClassicalFamily::J { p, q } => {
            let lin = q + &two * r * (p - &one);
            (
                &two * t * (r * r + &one) * (&two * p - t - &two),
                &two * r * (p - t - &one) - q,
                &lin * &lin - &four * (t + &two - &two * p) * (t - r * q),
            )
        }
    }
}

/// Closed-form `c₀` of the family on its branch.
pub fn family_c0(fp: &X1FamilyParams) -> Result<Surd, X1Error> {
    let (num, den, rad) = c0_parts(fp);
    if rad.is_negative() {
        return Err(X1Error::ComplexRoots(rad));
    }
    let root = Surd::sqrt(&rad);
    let den = match fp.branch {
        Branch::Plus => Surd::from(den) + root,
        Branch::Minus => Surd::from(den) - root,
    };
    if den.is_zero() {
        return Err(X1Error::InvalidSpec(format!(
            "closed-form c0 is indeterminate on the {} branch",
            fp.branch
        )));
    }
    Ok(Surd::from(num) / den)
}

/// [`family_c0`] checked against the generic derivation.
pub fn family_c0_checked(fp: &X1FamilyParams) -> Result<Surd, X1Error> {
    let c0 = family_c0(fp)?;
    if c0 != spectral_data(&family_spec(fp))?.c0star {
        return Err(X1Error::ClosedFormMismatch);
    }
    Ok(c0)
}

/// `ρ(x) = (x−r)^θ W(x)` on the support of the classical weight `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct X1Weight {
    pub theta: Rational,
    pub r: Rational,
    pub base: ClassicalWeight,
    pub support: Support,
}

impl X1Weight {
    pub fn pearson(&self) -> PearsonParams {
        pearson_from_table(&self.base).expect("validated at construction")
    }

    /// `ρ` at a quadrature node; distances to an endpoint pole come from the
    /// node's endpoint offsets.
    pub fn eval_node(&self, node: &Node) -> f64 {
        let mut log = self.base.log_weight_at(node.x, node.to_lo, node.to_hi);
        if !self.theta.is_zero() {
            let at = |b: &Bound| matches!(b, Bound::Finite(v) if *v == self.r);
            let dist = if at(&self.support.lo) {
                node.to_lo
            } else if at(&self.support.hi) {
                node.to_hi
            } else {
                (node.x - to_f64(&self.r)).abs()
            };
            log += to_f64(&self.theta) * dist.ln();
        }
        log.exp()
    }
}

pub fn family_weight(fp: &X1FamilyParams) -> X1Weight {
    let base = fp.base.weight();
    X1Weight {
        theta: fp.theta.clone(),
        r: fp.r.clone(),
        support: base.support(),
        base,
    }
}

/// Whether `∫ρ y_m y_n` is covered by the family's orthogonality argument.
pub fn orthogonality_window(fp: &X1FamilyParams, m: usize, n: usize) -> bool {
    let big = int(m.max(n) as i64);
    let t = &fp.theta;
    match &fp.base {
        ClassicalFamily::M { p, q } => *p > int(2) * &big + t + int(1) && *q > int(-1),
        ClassicalFamily::N { p } => *p > int(2) * &big + t + int(1),
        ClassicalFamily::J { p, .. } => *p > &big + (t + int(1)) * rat(1, 2),
        _ => true,
    }
}

/// Classical family the member collapses to, with a short identity note.
/// Requires the branch to give `c₀* = 0`, where the equation loses its
/// `1/(x−r)` term.
pub fn degenerate_reduce(fp: &X1FamilyParams) -> Option<(ClassicalFamily, String)> {
    let der = spectral_data(&family_spec(fp)).ok()?;
    if !der.c0star.is_zero() {
        return None;
    }
    let (t, r) = (&fp.theta, &fp.r);
    let zero = t.is_zero();
    let rv = |v: i64| *r == int(v);
    match &fp.base {
        ClassicalFamily::Jacobi { alpha, beta } => {
            if zero {
                Some((fp.base.clone(), "P_{n,r,0} = P_n".to_string()))
            } else if rv(-1) {
                let b = ClassicalFamily::Jacobi { alpha: alpha.clone(), beta: beta + t };
                Some((b, "P_{n,-1,theta}^(alpha,beta) = P_n^(alpha,beta+theta)".into()))
            } else if rv(1) {
                let b = ClassicalFamily::Jacobi { alpha: alpha + t, beta: beta.clone() };
                Some((b, "P_{n,1,theta}^(alpha,beta) = P_n^(alpha+theta,beta)".into()))
            } else {
                None
            }
        }
        ClassicalFamily::Laguerre { alpha } => {
            if zero {
                Some((fp.base.clone(), "L_{n,r,0} = L_n".to_string()))
            } else if rv(0) {
                let b = ClassicalFamily::Laguerre { alpha: alpha + t };
                Some((b, "L_{n,0,theta}^(alpha) = L_n^(alpha+theta)".into()))
            } else {
                None
            }
        }
        ClassicalFamily::Hermite => zero.then(|| (fp.base.clone(), "H_{n,r,0} = H_n".to_string())),
        ClassicalFamily::M { p, q } => {
            if zero {
                Some((fp.base.clone(), "M_{n,r,0} = M_n".to_string()))
            } else if rv(-1) {
                let b = ClassicalFamily::M { p: p - t, q: q.clone() };
                Some((b, "M_{n,-1,theta}^(p,q) = M_n^(p-theta,q)".into()))
            } else if rv(0) {
                let b = ClassicalFamily::M { p: p - t, q: q + t };
                Some((b, "M_{n,0,theta}^(p,q) = M_n^(p-theta,q+theta)".into()))
            } else {
                None
            }
        }
        ClassicalFamily::N { p } => {
            if zero {
                Some((fp.base.clone(), "N_{n,r,0} = N_n".to_string()))
            } else if rv(0) {
                let b = ClassicalFamily::N { p: p - t };
                Some((b, "N_{n,0,theta}^(p) = N_n^(p-theta)".into()))
            } else {
                None
            }
        }
        ClassicalFamily::J { .. } => zero.then(|| (fp.base.clone(), "J_{n,r,0} = J_n".to_string())),
    }
}

/// For `θ = −2`, the pole position at which the family carries a genuine
/// exceptional sequence of every degree.
pub fn canonical_r(base: &ClassicalFamily, theta: &Rational) -> Option<Rational> {
    if *theta != int(-2) {
        return None;
    }
    match base {
        ClassicalFamily::Jacobi { alpha, beta } if alpha != beta => {
            Some((alpha + beta) / (beta - alpha))
        }
        ClassicalFamily::Laguerre { alpha } => Some(-alpha.clone()),
        ClassicalFamily::M { p, q } if !(p + int(2) * q).is_zero() => {
            Some(-q.clone() / (p + int(2) * q))
        }
        ClassicalFamily::J { p, q } if !q.is_zero() => Some(int(-2) * p / q),
        _ => None,
    }
}

/// `Plus` unless only `Minus` carries a degree-2 eigenfunction.
pub fn preferred_branch(base: &ClassicalFamily, theta: &Rational, r: &Rational) -> Branch {
    let works = |branch| {
        let fp = X1FamilyParams { base: base.clone(), theta: theta.clone(), r: r.clone(), branch };
        x1_solve(&family_spec(&fp), 2).is_ok()
    };
    if !works(Branch::Plus) && works(Branch::Minus) {
        Branch::Minus
    } else {
        Branch::Plus
    }
}
