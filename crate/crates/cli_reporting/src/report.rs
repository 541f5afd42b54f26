//! Reports and their text and JSON renderings.
//!
//! The JSON form is one flat object with sorted keys:
//! `<field>` and `<field>.tolerance` for every numeric field,
//! `check.<name>.{computed,expected,tolerance,pass}` for every check and
//! `provenance.*` when the input matched a worked example.

use std::fmt::Write as _;

use invariant_core::{fmt_rational, BigRational, DualReal};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    /// An irrational exact value by its decimal expansion.
    Decimal(String),
    Real(f64),
    Int(i64),
    Text(String),
}

impl Scalar {
    fn json(&self) -> Value {
        match self {
            Scalar::Exact(q) => Value::String(fmt_rational(q)),
            Scalar::Decimal(s) | Scalar::Text(s) => Value::String(s.clone()),
            Scalar::Real(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Scalar::Int(n) => Value::from(*n),
        }
    }

    fn text(&self) -> String {
        match self {
            Scalar::Exact(q) => fmt_rational(q),
            Scalar::Decimal(s) | Scalar::Text(s) => s.clone(),
            Scalar::Real(x) => format!("{:.6e}", x),
            Scalar::Int(n) => n.to_string(),
        }
    }

    pub fn from_dual(d: &DualReal) -> (Scalar, f64) {
        match d.as_rational() {
            Some(q) => (Scalar::Exact(q.clone()), 0.0),
            // the decimal carries well over 60 significant digits
            None => (Scalar::Decimal(d.decimal()), d.to_f64().abs() * 1e-60),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub key: String,
    pub value: Scalar,
    /// None only for text fields.
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub computed: Scalar,
    pub expected: Scalar,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when |computed − expected| ≤ tolerance.
    pub fn within(name: impl Into<String>, computed: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            computed: Scalar::Real(computed),
            expected: Scalar::Real(expected),
            tolerance,
            pass: (computed - expected).abs() <= tolerance,
        }
    }

    /// Passes when computed ≤ bound; recorded as expected 0 with tolerance `bound`.
    pub fn below(name: impl Into<String>, computed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            computed: Scalar::Real(computed),
            expected: Scalar::Real(0.0),
            tolerance: bound,
            pass: computed <= bound,
        }
    }

    pub fn exact(name: impl Into<String>, computed: Scalar, expected: Scalar) -> Self {
        let pass = computed == expected;
        Self {
            name: name.into(),
            computed,
            expected,
            tolerance: 0.0,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub example: String,
    pub parameters: String,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub fields: Vec<Field>,
    pub checks: Vec<Check>,
    pub provenance: Option<Provenance>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Self {
            command: command.into(),
            seed,
            fields: Vec::new(),
            checks: Vec::new(),
            provenance: None,
        }
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) {
        self.fields.push(Field {
            key: key.into(),
            value: Scalar::Text(value.into()),
            tolerance: None,
        });
    }

    pub fn number(&mut self, key: &str, value: Scalar, tolerance: f64) {
        self.fields.push(Field {
            key: key.into(),
            value,
            tolerance: Some(tolerance),
        });
    }

    pub fn exact(&mut self, key: &str, q: &BigRational) {
        self.number(key, Scalar::Exact(q.clone()), 0.0);
    }

    pub fn real(&mut self, key: &str, x: f64, tolerance: f64) {
        self.number(key, Scalar::Real(x), tolerance);
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.clone()));
        m.insert("seed".into(), Value::from(self.seed));
        m.insert("status".into(), Value::from(if self.passed() { "pass" } else { "fail" }));
        m.insert("checks_total".into(), Value::from(self.checks.len()));
        m.insert("checks_failed".into(), Value::from(self.failures()));
        for f in &self.fields {
            m.insert(f.key.clone(), f.value.json());
            if let Some(t) = f.tolerance {
                m.insert(format!("{}.tolerance", f.key), Scalar::Real(t).json());
            }
        }
        for c in &self.checks {
            let key = |s: &str| format!("check.{}.{}", c.name, s);
            m.insert(key("computed"), c.computed.json());
            m.insert(key("expected"), c.expected.json());
            m.insert(key("tolerance"), Scalar::Real(c.tolerance).json());
            m.insert(key("pass"), Value::from(c.pass));
        }
        if let Some(p) = &self.provenance {
            m.insert("provenance.example".into(), Value::from(p.example.clone()));
            m.insert("provenance.parameters".into(), Value::from(p.parameters.clone()));
            m.insert("provenance.source".into(), Value::from(p.source.clone()));
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("report is valid JSON");
        s.push('\n');
        s
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (seed {})", self.command, self.seed);
        let width = self
            .fields
            .iter()
            .map(|f| f.key.len())
            .chain(self.checks.iter().map(|c| c.name.len()))
            .max()
            .unwrap_or(0);
        for f in &self.fields {
            let tol = match (&f.value, f.tolerance) {
                (_, None) => String::new(),
                (Scalar::Exact(_) | Scalar::Int(_), Some(_)) => "  (exact)".into(),
                (_, Some(t)) => format!("  ± {:.1e}", t),
            };
            let _ = writeln!(out, "  {:<width$}  {}{}", f.key, f.value.text(), tol, width = width);
        }
        if let Some(p) = &self.provenance {
            let _ = writeln!(out, "matched {} ({}): {}", p.example, p.parameters, p.source);
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let _ = writeln!(
                    out,
                    "  {}  {:<width$}  computed {}  expected {}  tol {:.1e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.computed.text(),
                    c.expected.text(),
                    c.tolerance,
                    width = width
                );
            }
        }
        let _ = writeln!(
            out,
            "status: {} ({}/{} checks passed)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len() - self.failures(),
            self.checks.len()
        );
        out
    }
}
