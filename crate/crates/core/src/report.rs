//! Verification outcomes and their line-delimited JSON form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::series::{Coefficient, Mismatch};

/// Parameter assignment for one registry expansion.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_max: Option<u64>,
}

impl Params {
    pub fn none() -> Params {
        Params::default()
    }

    pub fn with_k(k: i64) -> Params {
        Params {
            k: Some(k),
            ..Params::default()
        }
    }

    pub fn with_n_max(n_max: u64) -> Params {
        Params {
            n_max: Some(n_max),
            ..Params::default()
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(n) = self.n_max {
            parts.push(format!("n_max={n}"));
        }
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

/// Always `p/q`, including integers.
pub fn format_coefficient(c: &Coefficient) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_coefficient(s: &str) -> Option<Coefficient> {
    Coefficient::from_str(s).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchRecord {
    pub exp_num: i64,
    pub exp_den: i64,
    pub lhs: String,
    pub rhs: String,
    /// Which comparison of a multi-part check failed, e.g. `n=3 beta`.
    #[serde(rename = "where", skip_serializing_if = "Option::is_none", default)]
    pub location: Option<String>,
}

impl MismatchRecord {
    pub fn from_mismatch(m: &Mismatch) -> MismatchRecord {
        MismatchRecord {
            exp_num: m.exp,
            exp_den: m.den.get(),
            lhs: format_coefficient(&m.lhs),
            rhs: format_coefficient(&m.rhs),
            location: None,
        }
    }

    pub fn at(mut self, location: impl Into<String>) -> MismatchRecord {
        self.location = Some(location.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: Params,
    pub order: i64,
    pub status: Status,
    pub first_mismatch: Option<MismatchRecord>,
    pub ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
}

impl VerificationReport {
    pub fn pass(identity: &str, params: Params, order: i64, ms: u64) -> VerificationReport {
        VerificationReport {
            identity: identity.to_string(),
            params,
            order,
            status: Status::Pass,
            first_mismatch: None,
            ms,
            message: None,
        }
    }

    pub fn fail(identity: &str, params: Params, order: i64, m: MismatchRecord, ms: u64) -> VerificationReport {
        VerificationReport {
            identity: identity.to_string(),
            params,
            order,
            status: Status::Fail,
            first_mismatch: Some(m),
            ms,
            message: None,
        }
    }

    pub fn error(identity: &str, params: Params, order: i64, message: String, ms: u64) -> VerificationReport {
        VerificationReport {
            identity: identity.to_string(),
            params,
            order,
            status: Status::Error,
            first_mismatch: None,
            ms,
            message: Some(message),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json_line(line: &str) -> serde_json::Result<VerificationReport> {
        serde_json::from_str(line)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<5} {}", self.status, self.identity)?;
        if self.params != Params::none() {
            write!(f, "[{}]", self.params)?;
        }
        write!(f, " order={} ({} ms)", self.order, self.ms)?;
        if let Some(m) = &self.first_mismatch {
            write!(f, " first mismatch at q^({}/{})", m.exp_num, m.exp_den)?;
            if let Some(loc) = &m.location {
                write!(f, " in {loc}")?;
            }
            write!(f, ": lhs={} rhs={}", m.lhs, m.rhs)?;
        }
        if let Some(msg) = &self.message {
            write!(f, ": {msg}")?;
        }
        Ok(())
    }
}
