//! Double-exponential (tanh-sinh) quadrature for weighted inner products.
//!
//! Half-lines are mapped with `x = a + t/(1−t)` and the real line with
//! `x = t/(1−t²)` before applying tanh-sinh on the unit interval. Integrands
//! receive a [`Node`] carrying the distances to both support ends, computed
//! without cancellation, so endpoint singularities such as `(1+x)^β` can be
//! evaluated accurately right next to the boundary.

use crate::polycore::{Poly, Scalar};
use crate::x1::{X1Derived, X1Spec};
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("invalid integration task: {0}")]
    InvalidTask(String),
    #[error("no convergence: last two level values {last} and {previous}")]
    Diverged { last: f64, previous: f64 },
    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
    #[error("gram entry ({i},{j}): {source}")]
    Gram {
        i: usize,
        j: usize,
        #[source]
        source: Box<QuadError>,
    },
}

/// Evaluation point with cancellation-free distances to the support ends
/// (`f64::INFINITY` for an unbounded end).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub to_lo: f64,
    pub to_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub max_levels: usize,
}

impl QuadConfig {
    pub const DEFAULT_REL_TOL: f64 = 1e-10;
    pub const DEFAULT_MAX_LEVELS: usize = 14;
    /// Levels always computed before the convergence test is trusted.
    pub const MIN_LEVELS: usize = 4;
    /// Absolute floor added to the relative test.
    pub const ABS_FLOOR: f64 = 1e-300;
    /// Level differences below this many ulps of `∫|f|` are roundoff.
    pub const ROUNDOFF_ULPS: f64 = 64.0;

    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadConfig { rel_tol, ..Self::default() }
    }
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { rel_tol: Self::DEFAULT_REL_TOL, max_levels: Self::DEFAULT_MAX_LEVELS }
    }
}

/// Integration interval; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }
}

impl From<&crate::pearson::Support> for Interval {
    fn from(s: &crate::pearson::Support) -> Self {
        let (lo, hi) = s.bounds_f64();
        Interval { lo, hi }
    }
}

pub struct IntegrationTask<'a> {
    pub integrand: &'a (dyn Fn(&Node) -> f64 + Sync),
    pub support: Interval,
    pub cfg: QuadConfig,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err: f64,
    /// Approximation of `∫|f|`, the scale behind the roundoff floor.
    pub magnitude: f64,
    pub levels: usize,
}

#[derive(Clone, Copy)]
enum Map {
    Finite { a: f64, b: f64 },
    Upper { a: f64 },
    Lower { b: f64 },
    Whole,
}

impl Map {
    /// Node and Jacobian `dx/dt` for tanh-sinh abscissa `t`.
    fn node(self, t: f64) -> Option<(Node, f64)> {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        // 1 − |tanh u| without cancellation
        let delta = (-u.abs()).exp() / cu;
        let dxdt = FRAC_PI_2 * t.cosh() / (cu * cu);
        if delta == 0.0 || !dxdt.is_finite() || dxdt == 0.0 {
            return None;
        }
        let right = t > 0.0;
        let (near, far) = (delta, 2.0 - delta);
        Some(match self {
            Map::Finite { a, b } => {
                let half = 0.5 * (b - a);
                let (to_lo, to_hi) = if t == 0.0 {
                    (half, half)
                } else if right {
                    ((b - a) - half * near, half * near)
                } else {
                    (half * near, (b - a) - half * near)
                };
                let x = if right { b - to_hi } else { a + to_lo };
                (Node { x, to_lo, to_hi }, half * dxdt)
            }
            Map::Upper { a } | Map::Lower { b: a } => {
                // s ∈ (0,1) with s and 1 − s both accurate
                let (s, one_minus_s) = if t == 0.0 {
                    (0.5, 0.5)
                } else if right {
                    (0.5 * far, 0.5 * near)
                } else {
                    (0.5 * near, 0.5 * far)
                };
                let y = s / one_minus_s;
                let jac = 0.5 * dxdt / (one_minus_s * one_minus_s);
                let node = match self {
                    Map::Upper { .. } => Node { x: a + y, to_lo: y, to_hi: f64::INFINITY },
                    _ => Node { x: a - y, to_lo: f64::INFINITY, to_hi: y },
                };
                (node, jac)
            }
            Map::Whole => {
                let s = if right { 1.0 - delta } else { delta - 1.0 };
                let one_minus_s2 = delta * (2.0 - delta);
                let x = s / one_minus_s2;
                let jac = dxdt * (1.0 + s * s) / (one_minus_s2 * one_minus_s2);
                (Node { x, to_lo: f64::INFINITY, to_hi: f64::INFINITY }, jac)
            }
        })
    }

    fn is_extreme(node: &Node) -> bool {
        node.x.abs() > 1e100 || node.to_lo < 1e-100 || node.to_hi < 1e-100
    }
}

/// Abscissae beyond this are below double-precision resolution of the ends.
const T_MAX: f64 = 6.5;

/// Doubly-adaptive tanh-sinh: the step halves each level until two
/// successive levels agree to `rel_tol` (or to roundoff of `∫|f|`).
pub fn integrate(task: &IntegrationTask<'_>) -> Result<Estimate, QuadError> {
    let Interval { lo, hi } = task.support;
    let cfg = task.cfg;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(QuadError::InvalidTask(format!("support [{lo}, {hi}] is not ordered")));
    }
    if !(cfg.rel_tol > 0.0 && cfg.rel_tol <= 1e-2) {
        return Err(QuadError::InvalidTask(format!("relTol {} outside (0, 1e-2]", cfg.rel_tol)));
    }
    let map = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => Map::Finite { a: lo, b: hi },
        (true, false) => Map::Upper { a: lo },
        (false, true) => Map::Lower { b: hi },
        (false, false) => Map::Whole,
    };
    let f = task.integrand;
    let eval = |t: f64| -> Result<(f64, f64), QuadError> {
        let Some((node, jac)) = map.node(t) else {
            return Ok((0.0, 0.0));
        };
        let w = f(&node) * jac;
        if w.is_finite() {
            Ok((w, w.abs()))
        } else if Map::is_extreme(&node) {
            Ok((0.0, 0.0))
        } else {
            Err(QuadError::NonFinite(node.x))
        }
    };

    // level 0: unit step
    let (mut sum, mut abs_sum) = (0.0, 0.0);
    let steps0 = T_MAX as i64;
    for j in -steps0..=steps0 {
        let (w, a) = eval(j as f64)?;
        sum += w;
        abs_sum += a;
    }
    let mut h = 1.0;
    let mut prev = sum * h;
    let mut older = f64::NAN;
    for level in 1..=cfg.max_levels {
        h *= 0.5;
        let n = (T_MAX / h) as i64;
        let mut j = 1;
        while j <= n {
            let t = j as f64 * h;
            for s in [t, -t] {
                let (w, a) = eval(s)?;
                sum += w;
                abs_sum += a;
            }
            j += 2;
        }
        let value = sum * h;
        let magnitude = abs_sum * h;
        let err = (value - prev).abs();
        if level >= QuadConfig::MIN_LEVELS {
            let tol = cfg.rel_tol * value.abs() + QuadConfig::ABS_FLOOR;
            let floor = QuadConfig::ROUNDOFF_ULPS * f64::EPSILON * magnitude;
            if err <= tol || err <= floor {
                return Ok(Estimate { value, err, magnitude, levels: level });
            }
        }
        older = prev;
        prev = value;
    }
    Err(QuadError::Diverged { last: prev, previous: older })
}

/// Convenience wrapper for plain `f(x)` integrands.
pub fn integrate_fn(
    f: impl Fn(f64) -> f64 + Sync,
    support: Interval,
    cfg: QuadConfig,
) -> Result<Estimate, QuadError> {
    let g = move |n: &Node| f(n.x);
    integrate(&IntegrationTask { integrand: &g, support, cfg })
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Compensated Horner evaluation (coefficients low to high).
pub fn horner_compensated(coeffs: &[f64], x: f64) -> f64 {
    let Some((&last, rest)) = coeffs.split_last() else {
        return 0.0;
    };
    let (mut s, mut c) = (last, 0.0);
    for &a in rest.iter().rev() {
        let (p, pe) = two_prod(s, x);
        let (ns, se) = two_sum(p, a);
        s = ns;
        c = c * x + (pe + se);
    }
    s + c
}

/// `G[i][j] = ∫ ρ y_i y_j` over `support`, each unordered pair integrated
/// once so the matrix is exactly symmetric.
pub fn gram<F: Scalar>(
    weight: &(dyn Fn(&Node) -> f64 + Sync),
    polys: &[Poly<F>],
    support: Interval,
    cfg: QuadConfig,
) -> Result<Vec<Vec<f64>>, QuadError> {
    let coeffs: Vec<Vec<f64>> = polys.iter().map(|p| p.approx_coeffs()).collect();
    let n = polys.len();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let (ci, cj) = (&coeffs[i], &coeffs[j]);
            let f = |node: &Node| {
                // an underflowed weight must not meet an overflowed product
                let w = weight(node);
                if w == 0.0 {
                    0.0
                } else {
                    w * horner_compensated(ci, node.x) * horner_compensated(cj, node.x)
                }
            };
            let est = integrate(&IntegrationTask { integrand: &f, support, cfg })
                .map_err(|e| QuadError::Gram { i, j, source: Box::new(e) })?;
            g[i][j] = est.value;
            g[j][i] = est.value;
        }
    }
    Ok(g)
}

/// Largest `|G[i][j]| / √(G[i][i] G[j][j])` over `i ≠ j`.
pub fn max_offdiag_ratio(g: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i != j {
                worst = worst.max(g[i][j].abs() / (g[i][i] * g[j][j]).sqrt());
            }
        }
    }
    worst
}

/// Floating residual of the X1 equation
/// `(x−r)A y'' + B y' − (λ_n (x−r) + c₀*) y` at the given points, with `n`
/// the degree of `y`. Returns `(max |residual|, max scale)` where the scale
/// is the largest sum of absolute term magnitudes.
pub fn residual_probe<F: Scalar>(
    spec: &X1Spec,
    der: &X1Derived,
    y: &Poly<F>,
    points: &[f64],
) -> (f64, f64) {
    let n = y.degree().unwrap_or(0);
    let lam = crate::polycore::rational::to_f64(&spec.lambda(n));
    let c0 = der.c0star.approx();
    let r = crate::polycore::rational::to_f64(&spec.r);
    let a = spec.a_poly().approx_coeffs();
    let b = spec.b_poly().approx_coeffs();
    let (y0, y1, y2) = (y.approx_coeffs(), y.diff(1).approx_coeffs(), y.diff(2).approx_coeffs());
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &x in points {
        let t1 = (x - r) * horner_compensated(&a, x) * horner_compensated(&y2, x);
        let t2 = horner_compensated(&b, x) * horner_compensated(&y1, x);
        let t3 = (lam * (x - r) + c0) * horner_compensated(&y0, x);
        worst = worst.max((t1 + t2 - t3).abs());
        scale = scale.max(t1.abs() + t2.abs() + t3.abs());
    }
    (worst, scale)
}
