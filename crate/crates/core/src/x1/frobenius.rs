//! Series `y = Σ_k C_k (x−r)^{k+ρ}` for the X1 equation.
//!
//! Matching powers of `t = x − r` gives, for k ≥ −1,
//! `L_k C_{k−1} + D_k C_k + U_k C_{k+1} = 0` with
//!
//! ```text
//! L_k = a₂(k−1+ρ)(k−2+ρ) + b₂(k−1+ρ) − λ_n
//! D_k = A'(r)(k+ρ)(k+ρ−1) + B'(r)(k+ρ) − c₀*
//! U_k = A(r)(k+1+ρ)(k+ρ) + B(r)(k+1+ρ)
//! ```
//!
//! When a pivot `U_k` vanishes the equation turns into a constraint and
//! `C_{k+1}` becomes free. Termination (`C_k = 0` past degree n) and all
//! such constraints are then solved together.

use super::{spectral_data, X1Error, X1Spec};
use crate::polycore::linalg::{solve_affine, AffineSolution};
use crate::polycore::rational::as_i64;
use crate::polycore::{int, Poly, Rational, Surd};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSeries {
    /// Exponent `ρ` of the leading term.
    pub offset: usize,
    /// `C_0 = 1, C_1, …`
    pub coeffs: Vec<Surd>,
}

impl FrobeniusSeries {
    /// `Σ C_k (x−r)^{k+ρ}` expanded in powers of `x`.
    pub fn reconstruct(&self, r: &Rational) -> Poly<Surd> {
        let mut v = vec![Surd::zero(); self.offset];
        v.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(v).shift(&Surd::from(-r.clone()))
    }
}

/// Affine combination `c + Σ_j s_j p_j` of free parameters.
type Affine = Vec<Surd>;

fn axpy(acc: &mut Affine, k: &Surd, v: &Affine) {
    if acc.len() < v.len() {
        acc.resize(v.len(), Surd::zero());
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.clone() + k.clone() * b.clone();
    }
}

enum Attempt {
    Found(Vec<Surd>),
    Resonance(i64),
    NoTermination,
    Degenerate(usize),
}

struct Coefs {
    a2: Surd,
    b2: Surd,
    lam: Surd,
    a1r: Surd,
    b1r: Surd,
    c0: Surd,
    a0r: Surd,
    b0r: Surd,
}

impl Coefs {
    fn l(&self, m: &Surd) -> Surd {
        // argument m = k − 1 + ρ
        self.a2.clone() * m.clone() * (m.clone() - Surd::one()) + self.b2.clone() * m.clone() - self.lam.clone()
    }
    fn d(&self, m: &Surd) -> Surd {
        self.a1r.clone() * m.clone() * (m.clone() - Surd::one()) + self.b1r.clone() * m.clone() - self.c0.clone()
    }
    fn u(&self, m: &Surd) -> Surd {
        // argument m = k + 1 + ρ
        self.a0r.clone() * m.clone() * (m.clone() - Surd::one()) + self.b0r.clone() * m.clone()
    }
}

fn attempt(c: &Coefs, rho: usize, n: usize, kmax: usize) -> Attempt {
    let k_top = n - rho;
    let rho_s = Surd::from(int(rho as i64));
    let at = |k: i64| rho_s.clone() + Surd::from(int(k));
    // C_0 = 1 fixes E_{−1} as a pure constraint U_{−1} = 0.
    if !c.u(&at(0)).is_zero() {
        return Attempt::NoTermination;
    }
    let mut cs: Vec<Affine> = vec![vec![Surd::one()]];
    let mut params = 0usize;
    let mut resonance: Vec<(i64, Affine)> = Vec::new();
    for k in 0..kmax as i64 {
        let mut known: Affine = Vec::new();
        if k >= 1 {
            axpy(&mut known, &c.l(&at(k - 1)), &cs[(k - 1) as usize]);
        }
        axpy(&mut known, &c.d(&at(k)), &cs[k as usize]);
        let u = c.u(&at(k + 1));
        if u.is_zero() {
            resonance.push((k, known));
            params += 1;
            let mut fresh = vec![Surd::zero(); params + 1];
            fresh[params] = Surd::one();
            cs.push(fresh);
        } else {
            let mut next = Vec::new();
            axpy(&mut next, &(-Surd::one() / u), &known);
            cs.push(next);
        }
    }
    let width = params + 1;
    let row = |v: &Affine| {
        // solve_affine takes rows [A | b] for A s + b = 0
        let mut out: Vec<Surd> = (1..width).map(|j| v.get(j).cloned().unwrap_or_else(Surd::zero)).collect();
        out.push(v.first().cloned().unwrap_or_else(Surd::zero));
        out
    };
    let res_rows: Vec<Vec<Surd>> = resonance.iter().map(|(_, v)| row(v)).collect();
    if let AffineSolution::Inconsistent = solve_affine(&res_rows, params) {
        return Attempt::Resonance(resonance[0].0);
    }
    let mut rows = res_rows;
    rows.extend(cs[k_top + 1..=kmax].iter().map(row));
    let s = match solve_affine(&rows, params) {
        AffineSolution::Unique(s) => s,
        AffineSolution::Inconsistent => return Attempt::NoTermination,
        AffineSolution::Underdetermined { dim } => return Attempt::Degenerate(dim),
    };
    let eval = |v: &Affine| {
        let mut acc = v.first().cloned().unwrap_or_else(Surd::zero);
        for (j, sj) in s.iter().enumerate() {
            if let Some(pj) = v.get(j + 1) {
                acc = acc + pj.clone() * sj.clone();
            }
        }
        acc
    };
    let vals: Vec<Surd> = cs.iter().map(eval).collect();
    if vals[k_top].is_zero() {
        return Attempt::NoTermination;
    }
    Attempt::Found(vals)
}

/// Candidate leading exponents in `0..=n`, best first.
fn exponents(c: &Coefs, theta: Option<&Rational>, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if let Some(rho) = theta.and_then(|t| as_i64(&(int(1) - t))) {
        if (0..=n as i64).contains(&rho) {
            out.push(rho as usize);
        }
    }
    let indicial = |rho: usize| {
        let m = Surd::from(int(rho as i64));
        if c.a0r.is_zero() && c.b0r.is_zero() {
            c.d(&m).is_zero() || (c.a1r.is_zero() && c.b1r.is_zero() && c.c0.is_zero())
        } else {
            c.u(&m).is_zero()
        }
    };
    for rho in (0..=n).filter(|&rho| indicial(rho)) {
        if !out.contains(&rho) {
            out.push(rho);
        }
    }
    out
}

/// Series solution of degree `n`, normalized by `C_0 = 1`, with
/// coefficients returned up to `C_{max_k}`.
pub fn frobenius_series(spec: &X1Spec, n: usize, max_k: usize) -> Result<FrobeniusSeries, X1Error> {
    let der = spectral_data(spec)?;
    let (at, bt) = spec.shifted();
    let q = |v: Rational| Surd::from(v);
    let c = Coefs {
        a2: q(spec.a2.clone()),
        b2: q(spec.b2.clone()),
        lam: q(spec.lambda(n)),
        a1r: q(at.coeff(1)),
        b1r: q(bt.coeff(1)),
        c0: der.c0star.clone(),
        a0r: q(at.coeff(0)),
        b0r: q(bt.coeff(0)),
    };
    let mut first_failure: Option<X1Error> = None;
    for rho in exponents(&c, der.theta.as_ref(), n) {
        let kmax = max_k.max(n - rho + 2);
        let err = match attempt(&c, rho, n, kmax) {
            Attempt::Found(mut vals) => {
                vals.truncate(max_k + 1);
                return Ok(FrobeniusSeries { offset: rho, coeffs: vals });
            }
            Attempt::Resonance(k) => X1Error::PivotZero { k },
            Attempt::NoTermination => X1Error::NoPolynomialEigenfunction { n },
            Attempt::Degenerate(dim) => X1Error::DegenerateEigenvalue { n, dim: dim + 1 },
        };
        if matches!(err, X1Error::DegenerateEigenvalue { .. }) {
            return Err(err);
        }
        first_failure.get_or_insert(err);
    }
    Err(first_failure.unwrap_or(X1Error::NoPolynomialEigenfunction { n }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::x1::{x1_solve, Branch};

    fn laguerre(alpha: i64, theta: i64) -> X1Spec {
        let alpha = int(alpha);
        let r = -alpha.clone();
        let theta = int(theta);
        X1Spec::new(
            int(0),
            int(1),
            int(0),
            int(-1),
            &alpha + &r + &theta + int(1),
            -&r * (&alpha + int(1)),
            r,
            Branch::Plus,
        )
    }

    #[test]
    fn matches_pencil_solution() {
        let s = laguerre(2, -2);
        for n in 1..=5 {
            let fs = frobenius_series(&s, n, n + 2).unwrap();
            let y = fs.reconstruct(&s.r).monic().unwrap();
            assert_eq!(y, x1_solve(&s, n).unwrap(), "n={n}");
            assert!(fs.coeffs[n - fs.offset + 1..].iter().all(Surd::is_zero));
        }
    }

    #[test]
    fn pole_order_exponent_is_tried_first() {
        let s = laguerre(2, -2);
        // ρ = 1 − θ = 3
        let fs = frobenius_series(&s, 4, 6).unwrap();
        assert_eq!(fs.coeffs[0], Surd::one());
        assert_eq!(fs.reconstruct(&s.r).monic().unwrap(), x1_solve(&s, 4).unwrap());
    }

    #[test]
    fn reports_missing_polynomial() {
        let s = X1Spec::new(int(0), int(0), int(1), int(-2), int(-1), int(1), int(1), Branch::Plus);
        assert!(frobenius_series(&s, 2, 4).is_err());
    }
}
