//! JSON, CSV and plain-text output.
//!
//! JSON objects are `serde_json::Map`, which keeps keys sorted, and floats
//! are written as 17 significant digits. Together these make a parse and
//! re-serialize cycle reproduce the bytes.

use crate::args::Format;
use serde_json::{Map, Number, Value};
use std::collections::BTreeMap;

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let n: Number = serde_json::from_str(&format!("{x:.16e}")).expect("valid number literal");
    Value::Number(n)
}

pub fn opt_str(s: Option<String>) -> Value {
    s.map_or(Value::Null, Value::String)
}

pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

fn string_map(m: &BTreeMap<String, String>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
}

/// One degree of a coefficient table.
#[derive(Debug, Clone, Default)]
pub struct Row {
    pub n: usize,
    pub lambda: String,
    pub nu: Option<String>,
    pub c0star: Option<String>,
    pub theta: Option<String>,
    pub case: Option<u8>,
    pub coeffs: Vec<String>,
    pub coeffs_approx: Vec<f64>,
    pub reduction: Option<String>,
    /// Optional display columns (orthonormal variants).
    pub extra: BTreeMap<&'static str, Value>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<Row>,
}

impl Row {
    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("n".into(), Value::from(self.n));
        m.insert("lambda".into(), Value::String(self.lambda.clone()));
        m.insert("nu".into(), opt_str(self.nu.clone()));
        m.insert("c0star".into(), opt_str(self.c0star.clone()));
        m.insert("theta".into(), opt_str(self.theta.clone()));
        m.insert("case".into(), self.case.map_or(Value::Null, Value::from));
        m.insert("coeffs".into(), self.coeffs.iter().cloned().map(Value::String).collect());
        m.insert("coeffs_approx".into(), self.coeffs_approx.iter().map(|&x| float(x)).collect());
        m.insert("reduction".into(), opt_str(self.reduction.clone()));
        for (k, v) in &self.extra {
            m.insert(k.to_string(), v.clone());
        }
        Value::Object(m)
    }
}

impl Table {
    pub fn json(&self) -> Value {
        object([
            ("family", Value::String(self.family.clone())),
            ("params", string_map(&self.params)),
            ("rows", self.rows.iter().map(Row::json).collect()),
        ])
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("n,lambda,nu,c0star,theta,case,coeffs,coeffs_approx,reduction\n");
        for r in &self.rows {
            let opt = |s: &Option<String>| s.as_deref().map(quote).unwrap_or_default();
            let approx: Vec<String> = r.coeffs_approx.iter().map(|x| format!("{x:.16e}")).collect();
            let cells = [
                r.n.to_string(),
                quote(&r.lambda),
                opt(&r.nu),
                opt(&r.c0star),
                opt(&r.theta),
                r.case.map(|c| c.to_string()).unwrap_or_default(),
                quote(&r.coeffs.join(";")),
                approx.join(";"),
                opt(&r.reduction),
            ];
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn pretty(&self) -> String {
        let mut out = format!("{} {}\n", self.family, pretty_params(&self.params));
        for r in &self.rows {
            out.push_str(&format!("n = {}  lambda = {}", r.n, short(&r.lambda)));
            if let Some(nu) = &r.nu {
                out.push_str(&format!("  nu = {}", short(nu)));
            }
            if let Some(c) = &r.c0star {
                out.push_str(&format!("  c0* = {}", short(c)));
            }
            if let Some(c) = r.case {
                out.push_str(&format!("  case {c}"));
            }
            out.push_str(&format!("\n  {}\n", poly_text(&r.coeffs)));
            if let Some(note) = &r.reduction {
                out.push_str(&format!("  reduction: {note}\n"));
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(&self.json()),
            Format::Csv => self.csv(),
            Format::Pretty => self.pretty(),
        }
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn pretty_params(p: &BTreeMap<String, String>) -> String {
    let items: Vec<String> = p.iter().map(|(k, v)| format!("{k}={}", short(v))).collect();
    format!("({})", items.join(", "))
}

/// `3/1` → `3`, also inside surd strings.
pub fn short(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'/' && b.get(i + 1) == Some(&b'1') && !b.get(i + 2).is_some_and(u8::is_ascii_digit) {
            i += 2;
            continue;
        }
        out.push(b[i] as char);
        i += 1;
    }
    out
}

/// Human-readable polynomial from exact coefficients, highest degree first.
pub fn poly_text(coeffs: &[String]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        let c = short(c);
        if c == "0" {
            continue;
        }
        let surd = c.contains("sqrt");
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) if !surd => (true, m.to_string()),
            _ => (false, if surd { format!("({c})") } else { c.clone() }),
        };
        let var = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        let body = match (mag.as_str(), k) {
            ("1", k) if k > 0 => var,
            (_, 0) => mag,
            _ => format!("{mag}*{var}"),
        };
        if terms.is_empty() {
            terms.push(if neg { format!("-{body}") } else { body });
        } else {
            terms.push(format!("{} {body}", if neg { "-" } else { "+" }));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_drops_unit_denominators() {
        assert_eq!(short("3/1"), "3");
        assert_eq!(short("-1/12"), "-1/12");
        assert_eq!(short("1/1+1/2*sqrt(3/1)"), "1+1/2*sqrt(3)");
    }

    #[test]
    fn polynomial_text() {
        let c = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(poly_text(&c(&["-1/2", "0/1", "1/1"])), "x^2 - 1/2");
        assert_eq!(poly_text(&c(&["2/1", "-3/1", "1/1"])), "x^2 - 3*x + 2");
        assert_eq!(poly_text(&c(&["0/1"])), "0");
    }

    #[test]
    fn floats_roundtrip_verbatim() {
        let v = object([("x", float(0.1)), ("y", float(-2.5e-300)), ("z", float(f64::NAN))]);
        let s = to_json(&v);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(to_json(&back), s);
        assert!(s.contains("1.0000000000000001e-1"));
    }
}
