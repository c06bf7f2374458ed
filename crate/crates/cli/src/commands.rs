//! `classical`, `x1`, `weight` and `reduce`.

use crate::args::{CommonArgs, Format, Target, Want};
use crate::error::{usage, CliError};
use crate::render::{float, object, pretty_params, short, to_json, Row, Table};
use serde_json::Value;
use xop_core::classical::{eigenvalue_classical, monic_explicit, norm_square, ClassicalFamily};
use xop_core::families::{degenerate_reduce, family_spec, family_weight, X1FamilyParams};
use xop_core::pearson::{Bound, PearsonParams, Support};
use xop_core::polycore::rational::format_exact;
use xop_core::polycore::{Poly, Rational, Scalar};
use xop_core::x1::{case_reduction, lift, spectral_data, x1_solve, x1_weight, BCase, X1Derived, X1Spec};

fn exact_mode(args: &CommonArgs, command: &str) -> Result<(), CliError> {
    if args.numeric {
        return Err(usage(format!("--numeric is only accepted by verify ortho and verify norms, not {command}")));
    }
    Ok(())
}

fn poly_cells<F: Scalar>(p: &Poly<F>) -> (Vec<String>, Vec<f64>) {
    (p.exact_coeffs(), p.approx_coeffs())
}

pub fn classical(args: &CommonArgs) -> Result<String, CliError> {
    exact_mode(args, "classical")?;
    let Target::Classical(family) = args.target(Want::Classical)? else {
        unreachable!("classical selection")
    };
    let degrees = args.degrees(0..=5)?;
    family.check(*degrees.end())?;
    let cfg = args.quad()?;
    let spec = family.spec();
    let mut rows = Vec::new();
    for n in degrees {
        let y = family.monic(n)?;
        let (coeffs, approx) = poly_cells(&y);
        let mut row = Row {
            n,
            lambda: format_exact(&eigenvalue_classical(&spec, n)),
            coeffs,
            coeffs_approx: approx.clone(),
            ..Row::default()
        };
        if args.orthonormal {
            let h = norm_square(&family, n, cfg)?;
            let s = h.sqrt();
            row.extra.insert("norm_square", float(h));
            row.extra.insert("orthonormal_approx", approx.iter().map(|c| float(c / s)).collect());
        }
        rows.push(row);
    }
    let target = Target::Classical(family);
    Ok(Table { family: target.name(), params: target.params(), rows }.render(args.format))
}

/// X1 equation behind a family or raw selection.
pub fn x1_spec(target: &Target) -> X1Spec {
    match target {
        Target::X1(fp) => family_spec(fp),
        Target::Spec(s) => s.clone(),
        Target::Classical(_) => unreachable!("x1 selection"),
    }
}

fn case_note(case: BCase) -> Option<&'static str> {
    Some(match case {
        BCase::Case1 | BCase::Case4 => "y = (x - r) P_{n-1}(b2 + 2a2, B'(r) + 2A'(r); a2, A'(r), 0 | x - r)",
        BCase::Case2 => "y = P_n(b2, B'(r); a2, A'(r), A(r) | x - r)",
        BCase::Case3 => "y = P_n(b2, 0; a2, A'(r), A(r) | x - r)",
        BCase::Case6 => "y = P_n(0, 0; a2, A'(r), A(r) | x - r)",
        BCase::Case5 | BCase::General => return None,
    })
}

pub fn x1_row(spec: &X1Spec, der: &X1Derived, n: usize, reduction: Option<String>) -> Result<Row, CliError> {
    let y = x1_solve(spec, n)?;
    let (coeffs, coeffs_approx) = poly_cells(&y);
    Ok(Row {
        n,
        lambda: format_exact(&spec.lambda(n)),
        nu: Some(der.nu.format_exact()),
        c0star: Some(der.c0star.format_exact()),
        theta: der.theta.as_ref().map(format_exact),
        case: der.case.tag(),
        coeffs,
        coeffs_approx,
        reduction,
        ..Row::default()
    })
}

pub fn x1(args: &CommonArgs) -> Result<String, CliError> {
    exact_mode(args, "x1")?;
    let target = args.target(Want::X1)?;
    let degrees = args.degrees(1..=5)?;
    if *degrees.start() == 0 {
        return Err(usage("X1 degrees start at 1"));
    }
    if let Target::X1(fp) = &target {
        fp.check_degree(*degrees.end())?;
    }
    let spec = x1_spec(&target);
    let der = spectral_data(&spec)?;
    let family_note = match &target {
        Target::X1(fp) => degenerate_reduce(fp).map(|(_, note)| note),
        _ => None,
    };
    let mut rows = Vec::new();
    for n in degrees {
        let note = match &target {
            Target::Spec(_) => case_reduction(&spec, n).ok().and(case_note(der.case)).map(String::from),
            _ => family_note.clone(),
        };
        rows.push(x1_row(&spec, &der, n, note)?);
    }
    Ok(Table { family: target.name(), params: target.params(), rows }.render(args.format))
}

fn bound(b: &Bound) -> Value {
    match b {
        Bound::Finite(v) => Value::String(format_exact(v)),
        Bound::NegInf => Value::String("-inf".into()),
        Bound::PosInf => Value::String("inf".into()),
    }
}

fn bound_text(b: &Bound) -> String {
    match b {
        Bound::Finite(v) => short(&format_exact(v)),
        Bound::NegInf => "-inf".into(),
        Bound::PosInf => "inf".into(),
    }
}

fn pearson_json(w: &PearsonParams) -> Value {
    let s = |r: &Rational| Value::String(format_exact(r));
    object([("a", s(&w.a)), ("b", s(&w.b)), ("c", s(&w.c)), ("dstar", s(&w.dstar)), ("estar", s(&w.estar))])
}

/// `(x − r)^θ W(x)` with `W'/W = (d*x + e*)/(ax² + bx + c)`.
pub fn weight(args: &CommonArgs) -> Result<String, CliError> {
    exact_mode(args, "weight")?;
    let target = args.target(Want::X1)?;
    let spec = x1_spec(&target);
    let (theta, w, support): (Rational, PearsonParams, Option<Support>) = match &target {
        Target::X1(fp) => {
            let xw = family_weight(fp);
            (xw.theta.clone(), xw.pearson(), Some(xw.support))
        }
        _ => {
            let der = spectral_data(&spec)?;
            let (theta, w) = x1_weight(&spec, &der)?;
            (theta, w, None)
        }
    };
    let base = match &target {
        Target::X1(fp) => Some(weight_formula(&fp.base)),
        _ => None,
    };
    let json = object([
        ("family", Value::String(target.name())),
        ("params", target.params().into_iter().map(|(k, v)| (k, Value::String(v))).collect()),
        ("theta", Value::String(format_exact(&theta))),
        ("r", Value::String(format_exact(&spec.r))),
        ("pearson", pearson_json(&w)),
        ("base_weight", base.clone().map_or(Value::Null, Value::String)),
        ("support", support.as_ref().map_or(Value::Null, |s| Value::Array(vec![bound(&s.lo), bound(&s.hi)]))),
    ]);
    Ok(match args.format {
        Format::Json => to_json(&json),
        Format::Csv => {
            let mut out = String::from("theta,r,a,b,c,dstar,estar\n");
            let cells: Vec<String> = [&theta, &spec.r, &w.a, &w.b, &w.c, &w.dstar, &w.estar]
                .iter()
                .map(|v| crate::render::quote(&format_exact(v)))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
            out
        }
        Format::Pretty => {
            let mut out = format!("{} {}\n", target.name(), pretty_params(&target.params()));
            out.push_str(&format!(
                "rho(x) = (x - {})^{} W(x)\n",
                short(&format_exact(&spec.r)),
                short(&format_exact(&theta))
            ));
            if let Some(b) = base {
                out.push_str(&format!("W(x) = {b}\n"));
            }
            out.push_str(&format!(
                "W'/W = ({} x + {}) / ({} x^2 + {} x + {})\n",
                short(&format_exact(&w.dstar)),
                short(&format_exact(&w.estar)),
                short(&format_exact(&w.a)),
                short(&format_exact(&w.b)),
                short(&format_exact(&w.c))
            ));
            if let Some(s) = support {
                out.push_str(&format!("support: ({}, {})\n", bound_text(&s.lo), bound_text(&s.hi)));
            }
            out
        }
    })
}

fn weight_formula(f: &ClassicalFamily) -> String {
    let s = |r: &Rational| short(&format_exact(r));
    match f {
        ClassicalFamily::Jacobi { alpha, beta } => format!("(1 - x)^({}) (1 + x)^({})", s(alpha), s(beta)),
        ClassicalFamily::Laguerre { alpha } => format!("x^({}) exp(-x)", s(alpha)),
        ClassicalFamily::Hermite => "exp(-x^2)".into(),
        ClassicalFamily::M { p, q } => format!("x^({}) (1 + x)^(-({} + {}))", s(q), s(p), s(q)),
        ClassicalFamily::N { p } => format!("x^(-({})) exp(-1/x)", s(p)),
        ClassicalFamily::J { p, q } => format!("(1 + x^2)^(-({})) exp({} atan x)", s(p), s(q)),
    }
}

/// Reduction of an X1 member to a classical family, confirmed degree by
/// degree, or the case-wise classical form of a raw equation.
pub fn reduce(args: &CommonArgs) -> Result<String, CliError> {
    exact_mode(args, "reduce")?;
    let target = args.target(Want::X1)?;
    let degrees = args.degrees(1..=5)?;
    if *degrees.start() == 0 {
        return Err(usage("X1 degrees start at 1"));
    }
    let (spec, target_name, note, classical) = match &target {
        Target::X1(fp) => match reduction_for(args, fp) {
            Some((fp2, fam, note)) => {
                let t = Target::Classical(fam.clone());
                let label = format!("{} {}", t.name(), pretty_params(&t.params()));
                (family_spec(&fp2), Some(label), Some(note), Some(fam))
            }
            None => (family_spec(fp), None, None, None),
        },
        _ => {
            let spec = x1_spec(&target);
            let der = spectral_data(&spec)?;
            let tag = der.case.tag().map(|c| format!("case {c}"));
            (spec, tag, case_note(der.case).map(String::from), None)
        }
    };
    let mut checks = Vec::new();
    if note.is_some() {
        for n in degrees {
            let y = x1_solve(&spec, n)?;
            let expect = match &classical {
                Some(fam) => lift(&monic_explicit(&fam.spec(), n)?),
                None => case_reduction(&spec, n)?,
            };
            checks.push((n, y == expect));
        }
    }
    let ok = checks.iter().all(|&(_, eq)| eq);
    let json = object([
        ("family", Value::String(target.name())),
        ("params", target.params().into_iter().map(|(k, v)| (k, Value::String(v))).collect()),
        ("target", target_name.clone().map_or(Value::Null, Value::String)),
        ("reduction", note.clone().map_or(Value::Null, Value::String)),
        ("branch", Value::String(spec.branch.to_string())),
        (
            "degrees",
            checks
                .iter()
                .map(|&(n, eq)| object([("n", Value::from(n)), ("equal", Value::Bool(eq))]))
                .collect(),
        ),
    ]);
    let text = match args.format {
        Format::Json => to_json(&json),
        Format::Csv => {
            let mut out = String::from("n,equal,target,reduction\n");
            for (n, eq) in &checks {
                out.push_str(&format!(
                    "{n},{eq},{},{}\n",
                    crate::render::quote(target_name.as_deref().unwrap_or("")),
                    crate::render::quote(note.as_deref().unwrap_or(""))
                ));
            }
            out
        }
        Format::Pretty => match (&target_name, &note) {
            (Some(t), Some(n)) => {
                let degs: Vec<String> = checks.iter().map(|(d, eq)| format!("n={d}:{}", if *eq { "ok" } else { "MISMATCH" })).collect();
                format!("{} -> {t}\n{n}\n{}\n", target.name(), degs.join(" "))
            }
            _ => format!("{}: none\n", target.name()),
        },
    };
    if !ok {
        return Err(CliError::Report(text));
    }
    Ok(text)
}

/// The family reduction on the requested branch, or on either branch when
/// none was requested.
fn reduction_for(args: &CommonArgs, fp: &X1FamilyParams) -> Option<(X1FamilyParams, ClassicalFamily, String)> {
    let try_one = |f: &X1FamilyParams| degenerate_reduce(f).map(|(fam, note)| (f.clone(), fam, note));
    match args.branch {
        Some(_) => try_one(fp),
        None => try_one(fp).or_else(|| try_one(&fp.with_branch(fp.branch.flip()))),
    }
}
