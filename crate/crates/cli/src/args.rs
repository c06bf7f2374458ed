//! Flag parsing and resolution of a family selection into a [`Target`].

use crate::error::{usage, CliError};
use clap::{Args, ValueEnum};
use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use xop_core::classical::ClassicalFamily;
use xop_core::families::{canonical_r, preferred_branch, X1FamilyParams};
use xop_core::polycore::rational::{format_exact, from_f64, to_f64};
use xop_core::polycore::{int, parse_rational, Rational};
use xop_core::quadrature::QuadConfig;
use xop_core::x1::{Branch, X1Spec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// jacobi, laguerre, hermite, m, n, j, or an x1-prefixed name (x1jacobi, ...)
    #[arg(long)]
    pub family: Option<String>,
    /// Raw X1 coefficients a2,a1,a0,b2,b1,b0
    #[arg(long, allow_hyphen_values = true, conflicts_with = "family")]
    pub spec: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Root pairing: plus or minus
    #[arg(long)]
    pub branch: Option<Branch>,
    /// Degree range LO..HI (inclusive) or a single degree
    #[arg(long = "n")]
    pub degrees: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write output here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Relative tolerance for quadrature
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
    /// Accept irrational parameters (pi, e, sqrt(x)); quadrature-only checks
    #[arg(long)]
    pub numeric: bool,
    /// Classical weight for the roundtrip check
    #[arg(long)]
    pub weight: Option<String>,
    /// Seed for randomized parameter grids
    #[arg(long)]
    pub seed: Option<u64>,
    /// Add orthonormal coefficients to classical tables
    #[arg(long)]
    pub orthonormal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Classical(ClassicalFamily),
    X1(X1FamilyParams),
    Spec(X1Spec),
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Classical(f) => f.name().to_string(),
            Target::X1(fp) => fp.name(),
            Target::Spec(_) => "spec".to_string(),
        }
    }

    pub fn params(&self) -> BTreeMap<String, String> {
        let mut m = base_params(match self {
            Target::Classical(f) => f,
            Target::X1(fp) => &fp.base,
            Target::Spec(_) => &ClassicalFamily::Hermite,
        });
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        match self {
            Target::Classical(_) => {}
            Target::X1(fp) => {
                put("theta", format_exact(&fp.theta));
                put("r", format_exact(&fp.r));
                put("branch", fp.branch.to_string());
            }
            Target::Spec(s) => {
                for (k, v) in [("a2", &s.a2), ("a1", &s.a1), ("a0", &s.a0), ("b2", &s.b2), ("b1", &s.b1), ("b0", &s.b0), ("r", &s.r)] {
                    put(k, format_exact(v));
                }
                put("branch", s.branch.to_string());
            }
        }
        m
    }
}

fn base_params(f: &ClassicalFamily) -> BTreeMap<String, String> {
    let pairs: Vec<(&str, &Rational)> = match f {
        ClassicalFamily::Jacobi { alpha, beta } => vec![("alpha", alpha), ("beta", beta)],
        ClassicalFamily::Laguerre { alpha } => vec![("alpha", alpha)],
        ClassicalFamily::Hermite => vec![],
        ClassicalFamily::M { p, q } | ClassicalFamily::J { p, q } => vec![("p", p), ("q", q)],
        ClassicalFamily::N { p } => vec![("p", p)],
    };
    pairs.into_iter().map(|(k, v)| (k.to_string(), format_exact(v))).collect()
}

/// Which family kinds a command accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Want {
    Classical,
    X1,
    Either,
}

/// Irrational constants accepted under `--numeric`.
fn irrational(s: &str) -> Option<f64> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let v = match body {
        "pi" => std::f64::consts::PI,
        "e" => std::f64::consts::E,
        _ => {
            let inner = body.strip_prefix("sqrt(")?.strip_suffix(')')?;
            to_f64(&parse_rational(inner).ok()?).sqrt()
        }
    };
    v.is_finite().then_some(if neg { -v } else { v })
}

impl CommonArgs {
    pub fn param(&self, name: &str, raw: &str) -> Result<Rational, CliError> {
        if let Ok(v) = parse_rational(raw) {
            return Ok(v);
        }
        match irrational(raw.trim()) {
            Some(x) if self.numeric => Ok(from_f64(x).expect("finite")),
            Some(_) => Err(usage(format!(
                "--{name} {raw} is irrational; exact mode needs a rational (use --numeric for quadrature-only checks)"
            ))),
            None => Err(usage(format!("--{name}: cannot parse {raw:?} as a number"))),
        }
    }

    fn required(&self, name: &str, v: &Option<String>, family: &str) -> Result<Rational, CliError> {
        match v {
            Some(raw) => self.param(name, raw),
            None => Err(usage(format!("--{name} is required for {family}"))),
        }
    }

    fn optional(&self, name: &str, v: &Option<String>) -> Result<Option<Rational>, CliError> {
        v.as_deref().map(|raw| self.param(name, raw)).transpose()
    }

    pub fn degrees(&self, default: RangeInclusive<usize>) -> Result<RangeInclusive<usize>, CliError> {
        let Some(raw) = self.degrees.as_deref() else {
            return Ok(default);
        };
        let bad = || usage(format!("--n {raw:?}: expected LO..HI or a single degree"));
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        let (lo, hi) = match raw.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(raw)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(usage(format!("--n {raw}: empty degree range")));
        }
        Ok(lo..=hi)
    }

    pub fn quad(&self) -> Result<QuadConfig, CliError> {
        match self.rel_tol {
            None => Ok(QuadConfig::default()),
            Some(t) if t > 0.0 && t <= 1e-2 => Ok(QuadConfig::with_rel_tol(t)),
            Some(t) => Err(usage(format!("--rel-tol {t} outside (0, 1e-2]"))),
        }
    }

    /// Classical family from a base name and the parameter flags.
    pub fn classical(&self, base: &str) -> Result<ClassicalFamily, CliError> {
        Ok(match base {
            "jacobi" => ClassicalFamily::Jacobi {
                alpha: self.required("alpha", &self.alpha, base)?,
                beta: self.required("beta", &self.beta, base)?,
            },
            "laguerre" => ClassicalFamily::Laguerre { alpha: self.required("alpha", &self.alpha, base)? },
            "hermite" => ClassicalFamily::Hermite,
            "m" => ClassicalFamily::M {
                p: self.required("p", &self.p, base)?,
                q: self.required("q", &self.q, base)?,
            },
            "n" => ClassicalFamily::N { p: self.required("p", &self.p, base)? },
            "j" => ClassicalFamily::J {
                p: self.required("p", &self.p, base)?,
                q: self.required("q", &self.q, base)?,
            },
            other => return Err(usage(format!("unknown family {other:?}"))),
        })
    }

    /// X1 member of `base`: `--theta` is required, `r` defaults to the
    /// canonical pole position (or 0) and the branch to the one that
    /// carries polynomials.
    pub fn x1_family(&self, base: ClassicalFamily) -> Result<X1FamilyParams, CliError> {
        let theta = self.required("theta", &self.theta, &format!("x1{}", base.name()))?;
        let r = match self.optional("r", &self.r)? {
            Some(r) => r,
            None => canonical_r(&base, &theta).unwrap_or_else(|| int(0)),
        };
        let branch = self.branch.unwrap_or_else(|| preferred_branch(&base, &theta, &r));
        Ok(X1FamilyParams::new(base, theta, r, branch)?)
    }

    pub fn raw_spec(&self, raw: &str) -> Result<X1Spec, CliError> {
        let parts: Vec<&str> = raw.split(',').collect();
        if parts.len() != 6 {
            return Err(usage(format!("--spec needs six values a2,a1,a0,b2,b1,b0 (got {})", parts.len())));
        }
        let v = parts.iter().map(|s| self.param("spec", s)).collect::<Result<Vec<_>, _>>()?;
        let r = self.optional("r", &self.r)?.unwrap_or_else(|| int(0));
        let [a2, a1, a0, b2, b1, b0]: [Rational; 6] = v.try_into().expect("six values");
        Ok(X1Spec::new(a2, a1, a0, b2, b1, b0, r, self.branch.unwrap_or(Branch::Plus)))
    }

    pub fn has_selection(&self) -> bool {
        self.family.is_some() || self.spec.is_some()
    }

    pub fn target(&self, want: Want) -> Result<Target, CliError> {
        if let Some(raw) = &self.spec {
            if want == Want::Classical {
                return Err(usage("--spec describes an X1 equation; use --family for classical tables"));
            }
            return Ok(Target::Spec(self.raw_spec(raw)?));
        }
        let Some(name) = self.family.as_deref() else {
            return Err(usage("one of --family or --spec is required"));
        };
        let name = name.to_ascii_lowercase();
        let (base, prefixed) = match name.strip_prefix("x1") {
            Some(b) => (b.trim_start_matches(['-', '_']).to_string(), true),
            None => (name.clone(), false),
        };
        let x1 = match want {
            Want::Classical if prefixed => {
                return Err(usage(format!("{name} is an X1 family; use the x1 command")))
            }
            Want::Classical => false,
            Want::X1 => true,
            Want::Either => prefixed,
        };
        let family = self.classical(&base)?;
        if x1 {
            Ok(Target::X1(self.x1_family(family)?))
        } else {
            family.weight().validate()?;
            Ok(Target::Classical(family))
        }
    }
}
