//! Monic solutions `P̄_n(d, e; a, b, c | x)` of the hypergeometric equation
//! `σ y'' + τ y' − λ_n y = 0` with `σ = ax² + bx + c`, `τ = dx + e` and
//! `λ_n = n(d + (n−1)a)`.
//!
//! Three routes build the same polynomial: the explicit coefficient formula,
//! the three-term recurrence, and the Rodrigues formula. The six named
//! families are instances of one [`HypergeometricSpec`].

use crate::pearson::{pearson_from_table, ClassicalWeight, PearsonError, PearsonParams, Support};
use crate::polycore::{int, Poly, Rational, Scalar, Surd};
use crate::quadrature::{integrate, IntegrationTask, Interval, Node, QuadConfig, QuadError};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassicalError {
    #[error("invalid spec: a and d both vanish")]
    InvalidSpec,
    #[error("degenerate spec at degree {n}: {detail}")]
    Degenerate { n: usize, detail: String },
    #[error("{0}")]
    Constraint(#[from] PearsonError),
    #[error("{0}")]
    Quadrature(#[from] QuadError),
}

/// `σ(x) = ax² + bx + c`, `τ(x) = dx + e`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
}

impl HypergeometricSpec {
    pub fn new(
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        e: Rational,
    ) -> Result<Self, ClassicalError> {
        if a.is_zero() && d.is_zero() {
            return Err(ClassicalError::InvalidSpec);
        }
        Ok(HypergeometricSpec { a, b, c, d, e })
    }

    pub fn sigma(&self) -> Poly {
        Poly::from_coeffs(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    pub fn tau(&self) -> Poly {
        Poly::from_coeffs(vec![self.e.clone(), self.d.clone()])
    }

    /// `d + m·a`, the factor behind every denominator.
    fn dma(&self, m: i64) -> Rational {
        &self.d + int(m) * &self.a
    }

    fn nonzero(&self, m: i64, n: usize) -> Result<Rational, ClassicalError> {
        let v = self.dma(m);
        if v.is_zero() {
            Err(ClassicalError::Degenerate { n, detail: format!("d + {m}a = 0") })
        } else {
            Ok(v)
        }
    }

    /// `σ y'' + τ y' − λ_n y` for `n = deg y`.
    pub fn residual(&self, y: &Poly) -> Poly {
        let n = y.degree().unwrap_or(0);
        let lhs = &(&self.sigma() * &y.diff(2)) + &(&self.tau() * &y.diff(1));
        &lhs - &y.scale(&eigenvalue_classical(self, n))
    }

    /// Pearson weight of the equation (weight form `d* = d − 2a`, `e* = e − b`).
    pub fn weight_params(&self) -> Result<PearsonParams, PearsonError> {
        PearsonParams::from_equation_form(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
        )
    }
}

/// The six named families.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalFamily {
    Jacobi { alpha: Rational, beta: Rational },
    Laguerre { alpha: Rational },
    Hermite,
    M { p: Rational, q: Rational },
    N { p: Rational },
    J { p: Rational, q: Rational },
}

impl ClassicalFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ClassicalFamily::Jacobi { .. } => "jacobi",
            ClassicalFamily::Laguerre { .. } => "laguerre",
            ClassicalFamily::Hermite => "hermite",
            ClassicalFamily::M { .. } => "m",
            ClassicalFamily::N { .. } => "n",
            ClassicalFamily::J { .. } => "j",
        }
    }

    pub fn spec(&self) -> HypergeometricSpec {
        let (a, b, c, d, e) = match self {
            ClassicalFamily::Jacobi { alpha, beta } => {
                (int(-1), int(0), int(1), -(alpha + beta) - int(2), beta - alpha)
            }
            ClassicalFamily::Laguerre { alpha } => {
                (int(0), int(1), int(0), int(-1), alpha + int(1))
            }
            ClassicalFamily::Hermite => (int(0), int(0), int(1), int(-2), int(0)),
            ClassicalFamily::M { p, q } => (int(1), int(1), int(0), int(2) - p, q + int(1)),
            ClassicalFamily::N { p } => (int(1), int(0), int(0), int(2) - p, int(1)),
            ClassicalFamily::J { p, q } => {
                (int(1), int(0), int(1), int(2) - int(2) * p, q.clone())
            }
        };
        HypergeometricSpec { a, b, c, d, e }
    }

    pub fn weight(&self) -> ClassicalWeight {
        match self.clone() {
            ClassicalFamily::Jacobi { alpha, beta } => ClassicalWeight::Beta { alpha, beta },
            ClassicalFamily::Laguerre { alpha } => ClassicalWeight::Gamma { alpha },
            ClassicalFamily::Hermite => ClassicalWeight::Normal,
            ClassicalFamily::M { p, q } => ClassicalWeight::FisherF { p, q },
            ClassicalFamily::N { p } => ClassicalWeight::InverseGamma { p },
            ClassicalFamily::J { p, q } => ClassicalWeight::GeneralizedT { p, q },
        }
    }

    pub fn support(&self) -> Support {
        self.weight().support()
    }

    /// Parameter domain plus the finite-orthogonality window for degree `n`.
    pub fn check(&self, n: usize) -> Result<(), ClassicalError> {
        let w = self.weight();
        pearson_from_table(&w)?;
        w.admits_degree(n)?;
        Ok(())
    }

    /// Monic polynomial of degree `n`, built by the explicit route.
    pub fn monic(&self, n: usize) -> Result<Poly, ClassicalError> {
        self.check(n)?;
        monic_explicit(&self.spec(), n)
    }
}

/// `λ_n = n(d + (n−1)a)`
pub fn eigenvalue_classical(spec: &HypergeometricSpec, n: usize) -> Rational {
    int(n as i64) * spec.dma(n as i64 - 1)
}

/// `(e + (n−1)b) / (d + (2n−2)a)`: the `x^{n−1}` coefficient of `P̄_n`
/// divided by `n`.
pub fn coeff_subleading(spec: &HypergeometricSpec, n: usize) -> Result<Rational, ClassicalError> {
    let den = spec.nonzero(2 * n as i64 - 2, n)?;
    Ok((&spec.e + int(n as i64 - 1) * &spec.b) / den)
}

fn binomial(n: usize, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * int((n - i) as i64) / int(i as i64 + 1))
}

/// Explicit coefficients `P̄_n = Σ C(n,k) G_k x^k`.
///
/// When `a ≠ 0` and `b² − 4ac ≠ 0` every `G_k` is a terminating ₂F₁ sum
/// evaluated in `Q(√(b²−4ac))`; the irrational parts cancel. Otherwise the
/// coefficients come from the radical-free downward recursion read off the
/// equation.
pub fn monic_explicit(spec: &HypergeometricSpec, n: usize) -> Result<Poly, ClassicalError> {
    for m in (n as i64 - 1)..=(2 * n as i64 - 2) {
        spec.nonzero(m, n)?;
    }
    let disc = &spec.b * &spec.b - int(4) * &spec.a * &spec.c;
    if spec.a.is_zero() || disc.is_zero() {
        return Ok(coefficient_recursion(spec, n));
    }
    let root = Surd::sqrt(&disc);
    let b = Surd::from(spec.b.clone());
    // either sign of the root works; avoid b + s = 0
    let s = if (b.clone() + root.clone()).is_zero() { -root } else { root };
    let g = hypergeometric_kernel(spec, n, &s);
    let coeffs = (0..=n)
        .map(|k| {
            let v = Surd::from(binomial(n, k)) * g[k].clone();
            v.to_rational().ok_or_else(|| ClassicalError::Degenerate {
                n,
                detail: format!("irrational coefficient {v} at x^{k}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

/// `G_k = (2a/(b+s))^{k−n} ₂F₁(k−n, β; γ | 2s/(b+s))` with
/// `β = (2ae − bd)/(2as) + 1 − d/(2a) − n` and `γ = 2 − 2n − d/a`.
fn hypergeometric_kernel(spec: &HypergeometricSpec, n: usize, s: &Surd) -> Vec<Surd> {
    let q = |r: &Rational| Surd::from(r.clone());
    let (a, b, d, e) = (q(&spec.a), q(&spec.b), q(&spec.d), q(&spec.e));
    let two = q(&int(2));
    let nn = q(&int(n as i64));
    let beta = (two.clone() * a.clone() * e - b.clone() * d.clone()) / (two.clone() * a.clone() * s.clone())
        + Surd::one()
        - d.clone() / (two.clone() * a.clone())
        - nn.clone();
    let gamma = two.clone() - two.clone() * nn - d / a.clone();
    let z = two.clone() * s.clone() / (b.clone() + s.clone());
    let base = (b + s.clone()) / (two * a);
    (0..=n)
        .map(|k| {
            let m = n - k;
            // terminating sum Σ_j (−m)_j (β)_j / ((γ)_j j!) z^j
            let mut term = Surd::one();
            let mut sum = Surd::one();
            for j in 0..m {
                let jj = q(&int(j as i64));
                term = term
                    * (q(&int(j as i64 - m as i64)))
                    * (beta.clone() + jj.clone())
                    * z.clone()
                    / ((gamma.clone() + jj) * q(&int(j as i64 + 1)));
                sum = sum + term.clone();
            }
            (0..m).fold(sum, |acc, _| acc * base.clone())
        })
        .collect()
}

/// `c_k = [(k+1)(e+kb) c_{k+1} + c(k+1)(k+2) c_{k+2}] / (λ_n − λ_k)`, `c_n = 1`.
fn coefficient_recursion(spec: &HypergeometricSpec, n: usize) -> Poly {
    let mut c = vec![Rational::zero(); n + 3];
    c[n] = Rational::one();
    for k in (0..n).rev() {
        let k1 = int(k as i64 + 1);
        let num = &k1 * (&spec.e + int(k as i64) * &spec.b) * &c[k + 1]
            + &spec.c * &k1 * int(k as i64 + 2) * &c[k + 2];
        // λ_n − λ_k = (n−k)(d + (n+k−1)a), nonzero after the caller's check
        let den = int((n - k) as i64) * spec.dma((n + k) as i64 - 1);
        c[k] = num / den;
    }
    c.truncate(n + 1);
    Poly::from_coeffs(c)
}

/// Three-term recurrence `P̄_{k+1} = (x + A_k) P̄_k + B_k P̄_{k−1}` from
/// `P̄_0 = 1`, `P̄_1 = x + e/d`.
pub fn monic_recurrence(spec: &HypergeometricSpec, n: usize) -> Result<Poly, ClassicalError> {
    monic_sequence(spec, n).map(|mut v| v.pop().expect("nonempty"))
}

/// `[P̄_0, …, P̄_n]` by the three-term recurrence.
pub fn monic_sequence(spec: &HypergeometricSpec, n: usize) -> Result<Vec<Poly>, ClassicalError> {
    let mut out = vec![Poly::one()];
    if n == 0 {
        return Ok(out);
    }
    let d = spec.nonzero(0, 1)?;
    out.push(Poly::from_coeffs(vec![&spec.e / d, Rational::one()]));
    for k in 1..n {
        let (ak, bk) = recurrence_coefficients(spec, k)?;
        let next = &(&(&Poly::x() + &Poly::constant(ak)) * &out[k]) + &out[k - 1].scale(&bk);
        out.push(next);
    }
    Ok(out)
}

/// `(A_k, B_k)` of the monic recurrence.
pub fn recurrence_coefficients(
    spec: &HypergeometricSpec,
    k: usize,
) -> Result<(Rational, Rational), ClassicalError> {
    let (a, b, c, e) = (&spec.a, &spec.b, &spec.c, &spec.e);
    let ki = k as i64;
    let kr = int(ki);
    let n = k + 1;
    let d2k = spec.nonzero(2 * ki, n)?;
    let d2k2 = spec.nonzero(2 * ki - 2, n)?;
    let d2k1 = spec.nonzero(2 * ki - 1, n)?;
    let ak = (int(2) * &kr * int(ki + 1) * a * b
        + spec.dma(-2) * (e + int(2) * &kr * b))
        / (&d2k * &d2k2);
    // n(d+(n−2)a)/(d+(2n−3)a) collapses to 1 at the first step
    let pre = if k == 1 {
        Rational::one()
    } else {
        &kr * spec.dma(ki - 2) / spec.nonzero(2 * ki - 3, n)?
    };
    let inner = c * &d2k2 * &d2k2 - &kr * b * b * spec.dma(ki - 2)
        + (e - b) * (a * (e + b) - b * &spec.d);
    let bk = pre * inner / (&d2k2 * &d2k2 * d2k1);
    Ok((ak, bk))
}

/// Rodrigues formula, carried out on the polynomial cofactor only:
/// `d/dx[σ^k W P] = σ^{k−1} W (kσ'P + ((d−2a)x + e − b)P + σP')`.
pub fn rodrigues(spec: &HypergeometricSpec, n: usize) -> Result<Poly, ClassicalError> {
    let norm = rodrigues_product(spec, n)?;
    let sigma = spec.sigma();
    let ds = sigma.diff(1);
    let tau_star = Poly::from_coeffs(vec![&spec.e - &spec.b, spec.dma(-2)]);
    let mut p = Poly::one();
    for k in (1..=n).rev() {
        let kk = Poly::constant(int(k as i64));
        p = &(&(&(&kk * &ds) * &p) + &(&tau_star * &p)) + &(&sigma * &p.diff(1));
    }
    let out = p.scale(&(Rational::one() / norm));
    if n > 0 && !out.is_monic() {
        return Err(ClassicalError::Degenerate { n, detail: "Rodrigues leading term mismatch".into() });
    }
    Ok(out)
}

/// `Π_{k=1..n} (d + (n+k−2)a)`
fn rodrigues_product(spec: &HypergeometricSpec, n: usize) -> Result<Rational, ClassicalError> {
    (1..=n).try_fold(Rational::one(), |acc, k| {
        Ok(acc * spec.nonzero((n + k) as i64 - 2, n)?)
    })
}

/// `‖P̄_n‖² = n!(−1)ⁿ / Π(d+(n+k−2)a) · ∫ σⁿ W` with `W` the table weight.
pub fn norm_square(
    family: &ClassicalFamily,
    n: usize,
    cfg: QuadConfig,
) -> Result<f64, ClassicalError> {
    family.check(n)?;
    let spec = family.spec();
    let prod = rodrigues_product(&spec, n)?;
    let fact = (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64));
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let factor = (fact * sign / prod).approx();
    let w = family.weight();
    let sigma = spec.sigma().approx_coeffs();
    let f = |node: &Node| {
        let wv = w.log_weight_at(node.x, node.to_lo, node.to_hi).exp();
        if wv == 0.0 {
            return 0.0;
        }
        wv * crate::quadrature::horner_compensated(&sigma, node.x).powi(n as i32)
    };
    let support = Interval::from(&w.support());
    let est = integrate(&IntegrationTask { integrand: &f, support, cfg })?;
    Ok(factor * est.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat;

    fn families() -> Vec<ClassicalFamily> {
        vec![
            ClassicalFamily::Jacobi { alpha: rat(1, 2), beta: rat(3, 2) },
            ClassicalFamily::Jacobi { alpha: rat(-1, 2), beta: rat(-1, 2) },
            ClassicalFamily::Laguerre { alpha: rat(2, 3) },
            ClassicalFamily::Hermite,
            ClassicalFamily::M { p: int(30), q: rat(1, 2) },
            ClassicalFamily::N { p: int(25) },
            ClassicalFamily::J { p: int(12), q: rat(-3, 2) },
        ]
    }

    #[test]
    fn eigenvalues() {
        let j = ClassicalFamily::Jacobi { alpha: rat(1, 3), beta: int(2) }.spec();
        for n in 0..6 {
            let n_r = int(n as i64);
            let expect = -&n_r * (&n_r + rat(1, 3) + int(3));
            assert_eq!(eigenvalue_classical(&j, n), expect);
        }
        let h = ClassicalFamily::Hermite.spec();
        assert_eq!(eigenvalue_classical(&h, 5), int(-10));
        assert_eq!(eigenvalue_classical(&h, 0), int(0));
    }

    #[test]
    fn low_degree_displays() {
        let s = HypergeometricSpec::new(rat(1, 2), int(3), rat(-1, 3), int(5), rat(2, 7)).unwrap();
        assert_eq!(monic_explicit(&s, 0).unwrap(), Poly::one());
        let p1 = monic_explicit(&s, 1).unwrap();
        assert_eq!(p1, Poly::from_coeffs(vec![&s.e / &s.d, int(1)]));
        let (a, b, c, d, e) = (&s.a, &s.b, &s.c, &s.d, &s.e);
        let d2a = d + int(2) * a;
        let c1 = int(2) * (e + b) / &d2a;
        let c0 = (c * &d2a + e * (e + b)) / (&d2a * (d + a));
        assert_eq!(monic_explicit(&s, 2).unwrap(), Poly::from_coeffs(vec![c0, c1, int(1)]));
    }

    #[test]
    fn hermite_second_degree() {
        let h = ClassicalFamily::Hermite.spec();
        let p2 = monic_recurrence(&h, 2).unwrap();
        assert_eq!(p2, Poly::from_coeffs(vec![rat(-1, 2), int(0), int(1)]));
        assert_eq!(coeff_subleading(&h, 4).unwrap(), int(0));
    }

    #[test]
    fn routes_agree_and_solve_the_equation() {
        for fam in families() {
            let s = fam.spec();
            for n in 0..=8 {
                let e = monic_explicit(&s, n).unwrap();
                assert_eq!(e, monic_recurrence(&s, n).unwrap(), "{fam:?} n={n}");
                assert_eq!(e, rodrigues(&s, n).unwrap(), "{fam:?} n={n}");
                assert!(s.residual(&e).is_zero(), "{fam:?} n={n}");
                assert_eq!(e.degree(), Some(n));
                if n > 0 {
                    let sub = int(n as i64) * coeff_subleading(&s, n).unwrap();
                    assert_eq!(e.coeff(n - 1), sub);
                }
            }
        }
    }

    #[test]
    fn irrational_discriminant_route() {
        // b² − 4ac = 5 is not a square
        let s = HypergeometricSpec::new(int(1), int(1), int(-1), int(7), int(2)).unwrap();
        for n in 0..=6 {
            let e = monic_explicit(&s, n).unwrap();
            assert!(s.residual(&e).is_zero());
            assert_eq!(e, monic_recurrence(&s, n).unwrap());
        }
    }

    #[test]
    fn degenerate_specs_raise() {
        // d + a = 0 makes λ_2 = λ_0
        let s = HypergeometricSpec::new(int(1), int(0), int(1), int(-1), int(0)).unwrap();
        assert!(matches!(monic_explicit(&s, 2), Err(ClassicalError::Degenerate { n: 2, .. })));
        assert!(matches!(rodrigues(&s, 2), Err(ClassicalError::Degenerate { .. })));
        assert!(matches!(monic_recurrence(&s, 3), Err(ClassicalError::Degenerate { .. })));
        let z = HypergeometricSpec::new(int(0), int(1), int(0), int(0), int(1));
        assert_eq!(z, Err(ClassicalError::InvalidSpec));
    }

    #[test]
    fn norms() {
        let cfg = QuadConfig::default();
        let h0 = norm_square(&ClassicalFamily::Hermite, 0, cfg).unwrap();
        assert!((h0 - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let l1 = norm_square(&ClassicalFamily::Laguerre { alpha: int(0) }, 1, cfg).unwrap();
        assert!((l1 - 1.0).abs() < 1e-12);
        let p2 = norm_square(&ClassicalFamily::Jacobi { alpha: int(0), beta: int(0) }, 2, cfg).unwrap();
        assert!((p2 - 8.0 / 45.0).abs() < 1e-12);
        let bad = norm_square(&ClassicalFamily::M { p: int(3), q: int(0) }, 1, cfg);
        assert!(matches!(bad, Err(ClassicalError::Constraint(_))));
    }
}
