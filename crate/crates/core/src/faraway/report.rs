use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// Exact rational used in reports.
pub type Exact = Ratio<i128>;

pub(crate) fn exact_str(v: &Exact) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn ser_exact<S: Serializer>(v: &Exact, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&exact_str(v))
}

fn ser_opt_exact<S: Serializer>(v: &Option<Exact>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&exact_str(v)),
        None => s.serialize_none(),
    }
}

/// Two sides of a counting identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub identity: String,
    /// Enumerated side.
    #[serde(serialize_with = "ser_exact")]
    pub lhs: Exact,
    /// Formula side, absent when no formula applies.
    #[serde(serialize_with = "ser_opt_exact")]
    pub rhs: Option<Exact>,
    pub matched: Option<bool>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl CountReport {
    pub fn compare(identity: impl Into<String>, lhs: Exact, rhs: Exact) -> Self {
        Self {
            identity: identity.into(),
            matched: Some(lhs == rhs),
            lhs,
            rhs: Some(rhs),
            notes: Vec::new(),
            elapsed_ms: 0,
        }
    }

    /// A report with no formula side.
    pub fn enumeration(identity: impl Into<String>, lhs: Exact) -> Self {
        Self {
            identity: identity.into(),
            lhs,
            rhs: None,
            matched: None,
            notes: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn timed(mut self, since: std::time::Instant) -> Self {
        self.elapsed_ms = since.elapsed().as_millis();
        self
    }

    /// True unless a formula side exists and differs.
    pub fn passed(&self) -> bool {
        self.matched != Some(false)
    }

    pub fn lhs_integer(&self) -> Option<i128> {
        self.lhs.is_integer().then(|| *self.lhs.numer())
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.matched {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "ENUM",
        };
        write!(
            f,
            "[{status}] {}: lhs = {}",
            self.identity,
            exact_str(&self.lhs)
        )?;
        if let Some(r) = &self.rhs {
            write!(f, ", rhs = {}", exact_str(r))?;
        }
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        Ok(())
    }
}

pub fn exact(n: impl Into<i128>) -> Exact {
    Exact::from_integer(n.into())
}
