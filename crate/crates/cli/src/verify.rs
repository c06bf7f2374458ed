//! `verify {ode|ortho|norms|roundtrip|all}`.

use crate::args::{CommonArgs, Format, Target, Want};
use crate::commands::x1_spec;
use crate::error::{usage, CliError};
use crate::render::{float, object, quote, to_json};
use clap::ValueEnum;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;
use std::ops::RangeInclusive;
use xop_core::classical::{ClassicalFamily, HypergeometricSpec};
use xop_core::families::{canonical_r, family_c0, family_spec, family_weight, preferred_branch, X1FamilyParams};
use xop_core::pearson::pearson_from_table;
use xop_core::polycore::{int, rat, Poly, Rational, Scalar};
use xop_core::quadrature::{gram, horner_compensated, integrate, residual_probe, IntegrationTask, Interval, Node, QuadConfig};
use xop_core::x1::{
    c0_closed_form, equation_from_weight, frobenius_series, in_x1_space, spectral_data, x1_solve, x1_weight,
};

/// Largest accepted `|G_mn| / √(G_mm G_nn)`.
pub const ORTHO_TOL: f64 = 1e-8;
/// Relative gap between the two norm routes.
pub const NORM_TOL: f64 = 1e-8;

const PROBE_POINTS: [f64; 6] = [-2.75, -0.9, -0.3, 0.2, 0.7, 3.1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ode,
    Ortho,
    Norms,
    Roundtrip,
    All,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub target: String,
    pub check: &'static str,
    pub n: String,
    pub pass: bool,
    pub exact_zero: Option<bool>,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: Option<String>,
}

impl Check {
    fn new(target: &Target, check: &'static str, n: impl ToString, pass: bool) -> Self {
        Check {
            target: label(target),
            check,
            n: n.to_string(),
            pass,
            exact_zero: None,
            residual: None,
            tolerance: None,
            detail: None,
        }
    }

    fn json(&self) -> Value {
        object([
            ("target", Value::String(self.target.clone())),
            ("check", Value::String(self.check.into())),
            ("n", Value::String(self.n.clone())),
            ("status", Value::String(if self.pass { "pass" } else { "fail" }.into())),
            ("exact_zero", self.exact_zero.map_or(Value::Null, Value::Bool)),
            ("residual", self.residual.map_or(Value::Null, float)),
            ("tolerance", self.tolerance.map_or(Value::Null, float)),
            ("detail", self.detail.clone().map_or(Value::Null, Value::String)),
        ])
    }
}

fn label(t: &Target) -> String {
    let params: Vec<String> = t.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{}({})", t.name(), params.join(","))
}

struct Ctx {
    cfg: QuadConfig,
    classical_degrees: RangeInclusive<usize>,
    x1_degrees: RangeInclusive<usize>,
}

fn classical_probe(spec: &HypergeometricSpec, y: &Poly) -> f64 {
    let n = y.degree().unwrap_or(0);
    let lam = xop_core::classical::eigenvalue_classical(spec, n).approx();
    let (s, t) = (spec.sigma().approx_coeffs(), spec.tau().approx_coeffs());
    let (y0, y1, y2) = (y.approx_coeffs(), y.diff(1).approx_coeffs(), y.diff(2).approx_coeffs());
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for x in PROBE_POINTS {
        let h = |c: &[f64]| horner_compensated(c, x);
        let terms = [h(&s) * h(&y2), h(&t) * h(&y1), lam * h(&y0)];
        worst = worst.max((terms[0] + terms[1] - terms[2]).abs());
        scale = scale.max(terms.iter().map(|v| v.abs()).sum());
    }
    worst / scale.max(f64::MIN_POSITIVE)
}

fn ode(t: &Target, ctx: &Ctx, out: &mut Vec<Check>) -> Result<(), CliError> {
    match t {
        Target::Classical(fam) => {
            let spec = fam.spec();
            for n in ctx.classical_degrees.clone() {
                let y = fam.monic(n)?;
                let zero = spec.residual(&y).is_zero();
                let mut c = Check::new(t, "ode", n, zero);
                c.exact_zero = Some(zero);
                c.residual = Some(classical_probe(&spec, &y));
                c.tolerance = Some(0.0);
                out.push(c);
            }
        }
        Target::X1(_) | Target::Spec(_) => {
            let spec = x1_spec(t);
            let der = spectral_data(&spec)?;
            // with c0* = 0 the equation no longer forces y(r) + ν y'(r) = 0
            let constrained = !der.c0star.is_zero();
            for n in ctx.x1_degrees.clone() {
                let y = x1_solve(&spec, n)?;
                let zero = spec.residual(&der, &y).is_zero();
                let space = !constrained || in_x1_space(&spec, &der, &y);
                let (res, scale) = residual_probe(&spec, &der, &y, &PROBE_POINTS);
                let mut c = Check::new(t, "ode", n, zero && space);
                c.exact_zero = Some(zero);
                c.residual = Some(res / scale.max(f64::MIN_POSITIVE));
                c.tolerance = Some(0.0);
                if !space {
                    c.detail = Some("y(r) + nu y'(r) != 0".into());
                }
                out.push(c);
                let series = frobenius_series(&spec, n, n + 2)?;
                let same = series.reconstruct(&spec.r).monic().is_some_and(|s| s == y);
                let mut c = Check::new(t, "series", n, same);
                c.exact_zero = Some(same);
                c.detail = Some(format!("leading exponent {}", series.offset));
                out.push(c);
            }
        }
    }
    Ok(())
}

fn gram_checks(
    t: &Target,
    degrees: &[usize],
    polys_gram: Result<Vec<Vec<f64>>, String>,
    out: &mut Vec<Check>,
) {
    let g = match polys_gram {
        Ok(g) => g,
        Err(e) => {
            let mut c = Check::new(t, "ortho", "all", false);
            c.detail = Some(e);
            out.push(c);
            return;
        }
    };
    for i in 0..degrees.len() {
        let mut c = Check::new(t, "norm_positive", degrees[i], g[i][i] > 0.0);
        c.residual = Some(g[i][i]);
        out.push(c);
        for j in i + 1..degrees.len() {
            let ratio = g[i][j].abs() / (g[i][i] * g[j][j]).sqrt();
            let mut c = Check::new(t, "ortho", format!("{},{}", degrees[i], degrees[j]), ratio <= ORTHO_TOL);
            c.residual = Some(ratio);
            c.tolerance = Some(ORTHO_TOL);
            out.push(c);
        }
    }
}

fn ortho(t: &Target, ctx: &Ctx, out: &mut Vec<Check>) -> Result<(), CliError> {
    match t {
        Target::Classical(fam) => {
            let degrees: Vec<usize> = ctx.classical_degrees.clone().collect();
            fam.check(*ctx.classical_degrees.end())?;
            let polys = degrees.iter().map(|&n| fam.monic(n)).collect::<Result<Vec<_>, _>>()?;
            let w = fam.weight();
            let weight = |node: &Node| w.log_weight_at(node.x, node.to_lo, node.to_hi).exp();
            let g = gram(&weight, &polys, Interval::from(&fam.support()), ctx.cfg).map_err(|e| e.to_string());
            gram_checks(t, &degrees, g, out);
        }
        Target::X1(fp) => {
            let degrees: Vec<usize> = ctx.x1_degrees.clone().collect();
            fp.check_degree(*ctx.x1_degrees.end())?;
            let spec = family_spec(fp);
            let polys = degrees.iter().map(|&n| x1_solve(&spec, n)).collect::<Result<Vec<_>, _>>()?;
            let xw = family_weight(fp);
            let weight = |node: &Node| xw.eval_node(node);
            let g = gram(&weight, &polys, Interval::from(&xw.support), ctx.cfg).map_err(|e| e.to_string());
            gram_checks(t, &degrees, g, out);
        }
        Target::Spec(_) => return Err(usage("ortho needs a named family; a raw spec carries no support")),
    }
    Ok(())
}

/// `‖P̄_n‖²` by the Rodrigues integral against `∫ W P̄_n²` directly.
fn norms(t: &Target, ctx: &Ctx, out: &mut Vec<Check>) -> Result<(), CliError> {
    let Target::Classical(fam) = t else {
        return Err(usage("norms applies to classical families"));
    };
    fam.check(*ctx.classical_degrees.end())?;
    let w = fam.weight();
    let support = Interval::from(&fam.support());
    for n in ctx.classical_degrees.clone() {
        let y = fam.monic(n)?.approx_coeffs();
        let f = |node: &Node| {
            let wv = w.log_weight_at(node.x, node.to_lo, node.to_hi).exp();
            if wv == 0.0 {
                return 0.0;
            }
            let p = horner_compensated(&y, node.x);
            wv * p * p
        };
        let direct = integrate(&IntegrationTask { integrand: &f, support, cfg: ctx.cfg });
        let rodrigues = xop_core::classical::norm_square(fam, n, ctx.cfg);
        let mut c = match (direct, rodrigues) {
            (Ok(d), Ok(h)) => {
                let rel = (h - d.value).abs() / d.value.abs();
                let mut c = Check::new(t, "norm", n, rel <= NORM_TOL && h > 0.0);
                c.residual = Some(rel);
                c
            }
            (d, h) => {
                let mut c = Check::new(t, "norm", n, false);
                let msg = |e: Option<String>| e.unwrap_or_else(|| "ok".into());
                c.detail = Some(format!(
                    "direct: {}, rodrigues: {}",
                    msg(d.err().map(|e| e.to_string())),
                    msg(h.err().map(|e| e.to_string()))
                ));
                c
            }
        };
        c.tolerance = Some(NORM_TOL);
        out.push(c);
    }
    Ok(())
}

fn roundtrip_base(args: &CommonArgs) -> Result<Option<(ClassicalFamily, Rational, Rational)>, CliError> {
    let Some(name) = args.weight.as_deref() else {
        return Ok(None);
    };
    let base = args.classical(&name.to_ascii_lowercase())?;
    let need = |v: &Option<String>, flag: &str| -> Result<Rational, CliError> {
        let raw = v.as_deref().ok_or_else(|| usage(format!("roundtrip needs --{flag}")))?;
        args.param(flag, raw)
    };
    Ok(Some((base, need(&args.theta, "theta")?, need(&args.r, "r")?)))
}

fn roundtrip(
    t: &Target,
    base: &ClassicalFamily,
    theta: &Rational,
    r: &Rational,
    out: &mut Vec<Check>,
) -> Result<(), CliError> {
    let w = pearson_from_table(&base.weight())?;
    let (spec, der) = match equation_from_weight(theta, &w, r) {
        Ok(v) => v,
        Err(e @ xop_core::x1::X1Error::ClosedFormMismatch) => {
            let mut c = Check::new(t, "equation_from_weight", "-", false);
            c.detail = Some(e.to_string());
            out.push(c);
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let (theta2, w2) = x1_weight(&spec, &der)?;
    let same = theta2 == *theta && w2 == w;
    let mut c = Check::new(t, "weight_roundtrip", "-", same);
    c.exact_zero = Some(same);
    c.detail = Some(format!("branch {}", spec.branch));
    out.push(c);
    if !spec.b2.is_zero() {
        let ok = c0_closed_form(theta, &w, r, spec.branch).is_some_and(|c| c == der.c0star);
        let mut c = Check::new(t, "closed_form_c0", "-", ok);
        c.exact_zero = Some(ok);
        c.detail = Some(format!("c0* = {}", der.c0star.format_exact()));
        out.push(c);
    }
    if let Ok(fp) = X1FamilyParams::new(base.clone(), theta.clone(), r.clone(), spec.branch) {
        let row = family_spec(&fp);
        let rows_agree = row == spec;
        let c0_agree = family_c0(&fp).is_ok_and(|c| c == der.c0star);
        let mut c = Check::new(t, "family_row", "-", rows_agree && c0_agree);
        c.exact_zero = Some(rows_agree && c0_agree);
        if !rows_agree {
            c.detail = Some("printed equation row differs from the derived one".into());
        } else if !c0_agree {
            c.detail = Some("family closed-form c0 differs".into());
        }
        out.push(c);
    }
    Ok(())
}

/// Fixed parameter points, plus random draws when a seed is given.
fn grid(seed: Option<u64>) -> Vec<Target> {
    let mut bases: Vec<ClassicalFamily> = vec![
        ClassicalFamily::Jacobi { alpha: rat(1, 2), beta: rat(3, 2) },
        ClassicalFamily::Laguerre { alpha: int(2) },
        ClassicalFamily::Hermite,
        ClassicalFamily::M { p: int(30), q: int(1) },
        ClassicalFamily::N { p: int(30) },
        ClassicalFamily::J { p: int(10), q: int(1) },
    ];
    if let Some(seed) = seed {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut q = |lo: i64, hi: i64| rat(rng.gen_range(lo * 4..=hi * 4), 4);
        for _ in 0..2 {
            bases.push(ClassicalFamily::Jacobi { alpha: q(0, 3), beta: q(0, 3) });
            bases.push(ClassicalFamily::Laguerre { alpha: q(0, 4) });
            bases.push(ClassicalFamily::M { p: q(25, 40), q: q(0, 4) });
            bases.push(ClassicalFamily::N { p: q(25, 40) });
            bases.push(ClassicalFamily::J { p: q(10, 14), q: q(-3, 3) });
        }
    }
    let mut out: Vec<Target> = bases.iter().cloned().map(Target::Classical).collect();
    for base in bases {
        // θ = −2 at the canonical pole where one exists, otherwise a
        // reduction point
        let (theta, r) = match base {
            ClassicalFamily::Hermite | ClassicalFamily::N { .. } | ClassicalFamily::J { .. } => (int(0), int(1)),
            _ => {
                let Some(r) = canonical_r(&base, &int(-2)) else { continue };
                (int(-2), r)
            }
        };
        let branch = preferred_branch(&base, &theta, &r);
        // draws whose pole lands inside the support are skipped
        if let Ok(fp) = X1FamilyParams::new(base, theta, r, branch) {
            out.push(Target::X1(fp));
        }
    }
    out
}

fn run_suite(suite: Suite, t: &Target, args: &CommonArgs, ctx: &Ctx, explicit: bool, out: &mut Vec<Check>) -> Result<(), CliError> {
    let numeric_ok = matches!(suite, Suite::Ortho | Suite::Norms);
    if args.numeric && !numeric_ok {
        return Err(usage("--numeric is only accepted by verify ortho and verify norms"));
    }
    match suite {
        Suite::Ode => ode(t, ctx, out),
        Suite::Ortho => match t {
            Target::Spec(_) if !explicit => Ok(()),
            _ => ortho(t, ctx, out),
        },
        Suite::Norms => match t {
            Target::Classical(_) => norms(t, ctx, out),
            _ if explicit => norms(t, ctx, out),
            _ => Ok(()),
        },
        Suite::Roundtrip => match (t, roundtrip_base(args)?) {
            (_, Some((base, theta, r))) => roundtrip(t, &base, &theta, &r, out),
            // θ is undefined where A(r) = 0, so the inverse map does not apply
            (Target::X1(fp), None) if !explicit && family_spec(fp).a_at_r().is_zero() => Ok(()),
            (Target::X1(fp), None) => roundtrip(t, &fp.base, &fp.theta, &fp.r, out),
            _ if explicit => Err(usage("roundtrip needs --weight with --theta and --r, or an X1 family")),
            _ => Ok(()),
        },
        Suite::All => {
            for s in [Suite::Ode, Suite::Ortho, Suite::Norms, Suite::Roundtrip] {
                run_suite(s, t, args, ctx, false, out)?;
            }
            Ok(())
        }
    }
}

pub fn verify(suite: Suite, args: &CommonArgs) -> Result<String, CliError> {
    let cfg = args.quad()?;
    let degrees = args.degrees(0..=5)?;
    let x1_lo = (*degrees.start()).max(1);
    if x1_lo > *degrees.end() {
        return Err(usage("X1 degrees start at 1"));
    }
    let ctx = Ctx {
        cfg,
        classical_degrees: if args.degrees.is_some() { degrees.clone() } else { 0..=5 },
        x1_degrees: x1_lo..=*degrees.end(),
    };
    let targets = if args.has_selection() {
        vec![args.target(Want::Either)?]
    } else if args.weight.is_some() {
        // the roundtrip target is the X1 member of the weight's family
        let (base, theta, r) = roundtrip_base(args)?.expect("weight given");
        match X1FamilyParams::new(base.clone(), theta, r, xop_core::x1::Branch::Plus) {
            Ok(fp) => vec![Target::X1(fp)],
            Err(_) => vec![Target::Classical(base)],
        }
    } else {
        grid(args.seed)
    };
    let explicit = targets.len() == 1;
    let mut checks = Vec::new();
    for t in &targets {
        let suite = if args.weight.is_some() && !args.has_selection() { Suite::Roundtrip } else { suite };
        run_suite(suite, t, args, &ctx, explicit, &mut checks)?;
    }
    if checks.is_empty() {
        return Err(usage("no checks apply to this selection"));
    }
    let passed = checks.iter().all(|c| c.pass);
    let suite_name = suite.to_possible_value().expect("named").get_name().to_string();
    let text = match args.format {
        Format::Json => to_json(&object([
            ("suite", Value::String(suite_name.clone())),
            ("passed", Value::Bool(passed)),
            ("tolerances", object([
                ("ortho", float(ORTHO_TOL)),
                ("norm", float(NORM_TOL)),
                ("rel_tol", float(cfg.rel_tol)),
            ])),
            ("checks", checks.iter().map(Check::json).collect()),
        ])),
        Format::Csv => {
            let mut s = String::from("target,check,n,status,exact_zero,residual,tolerance,detail\n");
            for c in &checks {
                let f = |v: Option<f64>| v.map(|x| format!("{x:.16e}")).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    quote(&c.target),
                    c.check,
                    quote(&c.n),
                    if c.pass { "pass" } else { "fail" },
                    c.exact_zero.map(|b| b.to_string()).unwrap_or_default(),
                    f(c.residual),
                    f(c.tolerance),
                    quote(c.detail.as_deref().unwrap_or(""))
                ));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!(
                    "[{}] {} {} n={}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.target,
                    c.check,
                    c.n
                ));
                if let Some(r) = c.residual {
                    s.push_str(&format!(" residual={r:.3e}"));
                }
                if let Some(d) = &c.detail {
                    s.push_str(&format!(" ({d})"));
                }
                s.push('\n');
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            s.push_str(&format!("{suite_name}: {} of {} checks passed\n", checks.len() - failed, checks.len()));
            s
        }
    };
    if !passed {
        return Err(CliError::Report(text));
    }
    Ok(text)
}
