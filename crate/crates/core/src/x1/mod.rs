//! Exceptional X1 eigenproblem
//! `(x−r)A(x) y'' + B(x) y' − (λ_n (x−r) + c₀*) y = 0`
//! with `A = a₂x² + a₁x + a₀`, `B = b₂x² + b₁x + b₀`, `λ_n = n((n−1)a₂ + b₂)`.
//!
//! `e₁ = x − r − ν` is the degree-one eigenfunction exactly when `(ν, c₀*)`
//! solves `2b₂r + b₁ − c₀* + νb₂ = 0`, `B(r) + νc₀* = 0`; the two solutions
//! are tied to the roots `r₁, r₂` of `B` and selected by [`Branch`].
//!
//! Polynomial eigenfunctions of higher degree are found as the null space of
//! `L − λ_n(x−r)` on all polynomials of degree ≤ n. For generic `(B, r)` that
//! null space is trivial for n ≥ 2; [`x1_solve`] reports this rather than
//! assuming existence.

mod cases;
mod frobenius;
mod inverse;

pub use cases::{case_reduction, classify_b};
pub use frobenius::{frobenius_series, FrobeniusSeries};
pub use inverse::{c0_closed_form, equation_from_weight, x1_weight};

use crate::classical::ClassicalError;
use crate::pearson::PearsonError;
use crate::polycore::linalg::{null_space, Matrix};
use crate::polycore::{int, Poly, Rational, Surd};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum X1Error {
    #[error("complex roots of B (discriminant {0} < 0)")]
    ComplexRoots(Rational),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("inconsistent spec: b2 = b1 = 0 forces b0 = 0")]
    InconsistentSpec,
    #[error("basis invariance violated at degree {n}: {detail}")]
    BasisInvarianceViolated { n: usize, detail: String },
    #[error("no polynomial eigenfunction of degree {n}")]
    NoPolynomialEigenfunction { n: usize },
    #[error("degenerate eigenvalue at degree {n} (null space dimension {dim})")]
    DegenerateEigenvalue { n: usize, dim: usize },
    #[error("eigenvalue collision: lambda_{n} = lambda_{m}, only a degree-{m} solution exists")]
    EigenvalueCollision { n: usize, m: usize },
    #[error("recurrence pivot zero at k = {k}")]
    PivotZero { k: i64 },
    #[error("no closed reduction: {0}")]
    NoClosedReduction(String),
    #[error("positivity: {0}")]
    Positivity(String),
    #[error("closed-form c0* matches neither root pairing")]
    ClosedFormMismatch,
    #[error("{0}")]
    Classical(#[from] ClassicalError),
    #[error("{0}")]
    Pearson(#[from] PearsonError),
}

/// Root choice: `Plus` pairs `ν = r₁ − r` with `c₀* = b₂(r − r₂)` where
/// `r₁ = (−b₁ + √Δ)/(2b₂)`; `Minus` swaps the roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn flip(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

impl FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            _ => Err(format!("unknown branch `{s}` (expected plus or minus)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct X1Spec {
    pub a2: Rational,
    pub a1: Rational,
    pub a0: Rational,
    pub b2: Rational,
    pub b1: Rational,
    pub b0: Rational,
    pub r: Rational,
    pub branch: Branch,
}

impl X1Spec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a2: Rational,
        a1: Rational,
        a0: Rational,
        b2: Rational,
        b1: Rational,
        b0: Rational,
        r: Rational,
        branch: Branch,
    ) -> Self {
        X1Spec { a2, a1, a0, b2, b1, b0, r, branch }
    }

    pub fn with_branch(&self, branch: Branch) -> Self {
        X1Spec { branch, ..self.clone() }
    }

    pub fn a_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.a0.clone(), self.a1.clone(), self.a2.clone()])
    }

    pub fn b_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.b0.clone(), self.b1.clone(), self.b2.clone()])
    }

    /// `A(r)`
    pub fn a_at_r(&self) -> Rational {
        self.a_poly().eval(&self.r)
    }

    /// `B(r)`
    pub fn b_at_r(&self) -> Rational {
        self.b_poly().eval(&self.r)
    }

    /// `A` and `B` in powers of `t = x − r`.
    pub fn shifted(&self) -> (Poly, Poly) {
        (self.a_poly().shift(&self.r), self.b_poly().shift(&self.r))
    }

    /// `λ_n = n((n−1)a₂ + b₂)`
    pub fn lambda(&self, n: usize) -> Rational {
        let n_r = int(n as i64);
        &n_r * ((&n_r - int(1)) * &self.a2 + &self.b2)
    }

    /// `(x−r)A y'' + B y' − c₀* y`
    pub fn apply(&self, der: &X1Derived, y: &Poly<Surd>) -> Poly<Surd> {
        let lift = |p: Poly| p.map(|c| Surd::from(c.clone()));
        let xr = lift(Poly::linear_root(self.r.clone()));
        let t1 = &(&xr * &lift(self.a_poly())) * &y.diff(2);
        let t2 = &lift(self.b_poly()) * &y.diff(1);
        &(&t1 + &t2) - &y.scale(&der.c0star)
    }

    /// Left-hand side of the eigen-equation for `n = deg y`; zero exactly
    /// when `y` is an eigenfunction.
    pub fn residual(&self, der: &X1Derived, y: &Poly<Surd>) -> Poly<Surd> {
        let n = y.degree().unwrap_or(0);
        let xr = Poly::linear_root(Surd::from(self.r.clone()));
        let rhs = (&xr * y).scale(&Surd::from(self.lambda(n)));
        &self.apply(der, y) - &rhs
    }
}

/// Special configurations of `B` relative to `r`. `General` covers
/// `b₂ ≠ 0`, `B(r) ≠ 0`, which none of the special cases describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BCase {
    /// `b₂ ≠ 0`, `B(r) = 0`, `ν = 0`, `c₀* = B'(r) ≠ 0`
    Case1,
    /// `b₂ ≠ 0`, `B(r) = 0`, `c₀* = 0`, `ν = −B'(r)/b₂ ≠ 0`
    Case2,
    /// `r` a double root of `B`: `ν = c₀* = 0`
    Case3,
    /// `b₂ = 0`, `b₁ ≠ 0`, `B(r) = 0`: `c₀* = b₁`, `ν = 0`
    Case4,
    /// `b₂ = 0`, `b₁ ≠ 0`, `B(r) ≠ 0`: `c₀* = b₁`, `ν = −B(r)/b₁`
    Case5,
    /// `B ≡ 0`: `c₀* = 0`, `ν` arbitrary (taken as 0)
    Case6,
    General,
}

impl BCase {
    pub fn tag(self) -> Option<u8> {
        match self {
            BCase::Case1 => Some(1),
            BCase::Case2 => Some(2),
            BCase::Case3 => Some(3),
            BCase::Case4 => Some(4),
            BCase::Case5 => Some(5),
            BCase::Case6 => Some(6),
            BCase::General => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct X1Derived {
    /// `B(r)/A(r)`; `None` when `A(r) = 0`.
    pub theta: Option<Rational>,
    pub nu: Surd,
    pub c0star: Surd,
    /// Roots of `B` (`r₁` uses `+√Δ`); `r₂` is `None` when `B` is linear.
    pub r1: Option<Surd>,
    pub r2: Option<Surd>,
    pub case: BCase,
}

/// `ν`, `c₀*`, roots and case for any spec, including `A(r) = 0` where `θ`
/// is undefined.
pub fn spectral_data(spec: &X1Spec) -> Result<X1Derived, X1Error> {
    let q = |v: &Rational| Surd::from(v.clone());
    let br = spec.b_at_r();
    let ar = spec.a_at_r();
    let theta = (!ar.is_zero()).then(|| &br / &ar);
    let r = q(&spec.r);
    if !spec.b2.is_zero() {
        let disc = &spec.b1 * &spec.b1 - int(4) * &spec.b0 * &spec.b2;
        if disc.is_negative() {
            return Err(X1Error::ComplexRoots(disc));
        }
        let s = Surd::sqrt(&disc);
        let two_b2 = q(&(int(2) * &spec.b2));
        let r1 = (q(&-spec.b1.clone()) + s.clone()) / two_b2.clone();
        let r2 = (q(&-spec.b1.clone()) - s) / two_b2;
        let b2 = q(&spec.b2);
        let (nu, c0star) = match spec.branch {
            Branch::Plus => (r1.clone() - r.clone(), b2 * (r - r2.clone())),
            Branch::Minus => (r2.clone() - r.clone(), b2 * (r - r1.clone())),
        };
        let case = if !br.is_zero() {
            BCase::General
        } else if disc.is_zero() {
            BCase::Case3
        } else if nu.is_zero() {
            BCase::Case1
        } else {
            BCase::Case2
        };
        return Ok(X1Derived { theta, nu, c0star, r1: Some(r1), r2: Some(r2), case });
    }
    if !spec.b1.is_zero() {
        let nu = q(&(-&br / &spec.b1));
        let root = q(&(-&spec.b0 / &spec.b1));
        let case = if br.is_zero() { BCase::Case4 } else { BCase::Case5 };
        return Ok(X1Derived { theta, nu, c0star: q(&spec.b1), r1: Some(root), r2: None, case });
    }
    if !spec.b0.is_zero() {
        return Err(X1Error::InconsistentSpec);
    }
    Ok(X1Derived {
        theta,
        nu: Surd::zero(),
        c0star: Surd::zero(),
        r1: None,
        r2: None,
        case: BCase::Case6,
    })
}

/// Full derivation under the standing hypothesis `A(r) ≠ 0`.
pub fn derive(spec: &X1Spec) -> Result<X1Derived, X1Error> {
    if spec.a_at_r().is_zero() {
        return Err(X1Error::InvalidSpec("a2 r^2 + a1 r + a0 = 0".into()));
    }
    spectral_data(spec)
}

/// Both equations of the `(ν, c₀*)` system evaluated exactly.
pub fn system_residuals(spec: &X1Spec, der: &X1Derived) -> (Surd, Surd) {
    let q = |v: &Rational| Surd::from(v.clone());
    let e1 = q(&(int(2) * &spec.b2 * &spec.r + &spec.b1)) - der.c0star.clone()
        + der.nu.clone() * q(&spec.b2);
    let e2 = q(&spec.b_at_r()) + der.nu.clone() * der.c0star.clone();
    (e1, e2)
}

/// `L₀ y` in powers of `t = x − r`, for `y` given in powers of `t`.
fn apply_t(spec: &X1Spec, der: &X1Derived, y: &Poly<Surd>) -> Poly<Surd> {
    let (at, bt) = spec.shifted();
    let lift = |p: Poly| p.map(|c| Surd::from(c.clone()));
    let t = Poly::<Surd>::x();
    let t1 = &(&t * &lift(at)) * &y.diff(2);
    &(&t1 + &(&lift(bt) * &y.diff(1))) - &y.scale(&der.c0star)
}

/// Matrix of `T = (x−r)⁻¹ L₀` on `Π_{n,r,ν} = span{x−r−ν, (x−r)², …, (x−r)ⁿ}`
/// (column j holds the image of the j-th basis element).
pub fn build_operator(spec: &X1Spec, der: &X1Derived, n: usize) -> Result<Matrix<Surd>, X1Error> {
    if n == 0 {
        return Err(X1Error::InvalidSpec("operator needs n >= 1".into()));
    }
    let basis: Vec<Poly<Surd>> = (1..=n)
        .map(|k| {
            if k == 1 {
                Poly::from_coeffs(vec![-der.nu.clone(), Surd::one()])
            } else {
                Poly::monomial(Surd::one(), k)
            }
        })
        .collect();
    let mut m = vec![vec![Surd::zero(); n]; n];
    for (j, e) in basis.iter().enumerate() {
        let img = apply_t(spec, der, e);
        let violated = |detail: String| X1Error::BasisInvarianceViolated { n, detail };
        if !img.coeff(0).is_zero() {
            return Err(violated(format!("image of basis element {} is not divisible by x - r", j + 1)));
        }
        // divide by t
        let p = Poly::from_coeffs(img.coeffs().iter().skip(1).cloned().collect());
        if p.degree().is_some_and(|d| d > n) {
            return Err(violated(format!("image of basis element {} has degree above {n}", j + 1)));
        }
        let outside = p.coeff(0) + der.nu.clone() * p.coeff(1);
        if !outside.is_zero() {
            return Err(violated(format!(
                "image of basis element {} has component {} outside the span",
                j + 1,
                outside
            )));
        }
        m[0][j] = p.coeff(1);
        for k in 2..=n {
            m[k - 1][j] = p.coeff(k);
        }
    }
    Ok(m)
}

/// Whether `y` lies in `Π_{n,r,ν}`, i.e. `y(r) + ν y'(r) = 0`.
pub fn in_x1_space(spec: &X1Spec, der: &X1Derived, y: &Poly<Surd>) -> bool {
    let r = Surd::from(spec.r.clone());
    (y.eval(&r) + der.nu.clone() * y.diff(1).eval(&r)).is_zero()
}

fn monic_from_t_coeffs(spec: &X1Spec, v: Vec<Surd>, n: usize) -> Result<Poly<Surd>, X1Error> {
    let q = Poly::from_coeffs(v);
    match q.degree() {
        Some(d) if d == n => {}
        Some(m) => return Err(X1Error::EigenvalueCollision { n, m }),
        None => return Err(X1Error::NoPolynomialEigenfunction { n }),
    }
    let q = q.monic().expect("nonzero");
    Ok(q.shift(&Surd::from(-spec.r.clone())))
}

/// Monic degree-`n` eigenfunction: the null space of `L₀ − λ_n(x−r)` on
/// polynomials of degree ≤ n, computed exactly.
pub fn x1_solve(spec: &X1Spec, n: usize) -> Result<Poly<Surd>, X1Error> {
    if n == 0 {
        return Err(X1Error::InvalidSpec("X1 degrees start at 1".into()));
    }
    let der = spectral_data(spec)?;
    let lam = Surd::from(spec.lambda(n));
    let t = Poly::<Surd>::x();
    let mut m = vec![vec![Surd::zero(); n + 1]; n + 2];
    for k in 0..=n {
        let e = Poly::monomial(Surd::one(), k);
        let img = &apply_t(spec, &der, &e) - &(&t * &e).scale(&lam);
        for (i, row) in m.iter_mut().enumerate() {
            row[k] = img.coeff(i);
        }
    }
    let ns = null_space(&m, n + 1);
    match ns.len() {
        0 => Err(X1Error::NoPolynomialEigenfunction { n }),
        1 => monic_from_t_coeffs(spec, ns.into_iter().next().expect("one"), n),
        dim => Err(X1Error::DegenerateEigenvalue { n, dim }),
    }
}

/// Same eigenfunction from the operator matrix on `Π_{n,r,ν}`; requires the
/// span to be invariant.
pub fn x1_solve_in_basis(spec: &X1Spec, n: usize) -> Result<Poly<Surd>, X1Error> {
    let der = spectral_data(spec)?;
    let mut m = build_operator(spec, &der, n)?;
    let lam = Surd::from(spec.lambda(n));
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = row[i].clone() - lam.clone();
    }
    let ns = null_space(&m, n);
    match ns.len() {
        0 => Err(X1Error::NoPolynomialEigenfunction { n }),
        1 => {
            let v = &ns[0];
            let mut t = vec![-der.nu.clone() * v[0].clone(), v[0].clone()];
            t.extend(v[1..].iter().cloned());
            monic_from_t_coeffs(spec, t, n)
        }
        dim => Err(X1Error::DegenerateEigenvalue { n, dim }),
    }
}

/// Converts an eigenpolynomial with rational coefficients.
pub fn to_rational_poly(p: &Poly<Surd>) -> Option<Poly> {
    p.coeffs()
        .iter()
        .map(Surd::to_rational)
        .collect::<Option<Vec<_>>>()
        .map(Poly::from_coeffs)
}

pub fn lift(p: &Poly) -> Poly<Surd> {
    p.map(|c| Surd::from(c.clone()))
}
