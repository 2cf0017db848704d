//! Structured verification results.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::Coeff;
use crate::error::Result;
use crate::symfunc::SymFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

pub type Params = BTreeMap<String, Value>;

#[macro_export]
macro_rules! params {
    () => { $crate::report::Params::new() };
    ($($k:expr => $v:expr),+ $(,)?) => {{
        let mut m = $crate::report::Params::new();
        $( m.insert($k.to_string(), serde_json::json!($v)); )+
        m
    }};
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub identity: String,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Coeff>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub millis: u64,
}

/// Result of one check. `Fail` carries a nonzero difference when there is one.
#[derive(Clone, Debug)]
pub enum Outcome {
    Pass,
    Fail(Option<Coeff>),
    Note(bool, String),
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(None)
        }
    }

    pub fn coeff_eq(a: &Coeff, b: &Coeff) -> Outcome {
        Outcome::coeff_zero(&(a - b))
    }

    pub fn coeff_zero(d: &Coeff) -> Outcome {
        if d.is_zero() {
            Outcome::Pass
        } else {
            Outcome::Fail(Some(d.clone()))
        }
    }

    pub fn sf_eq(a: &SymFunc, b: &SymFunc) -> Outcome {
        Outcome::sf_zero(&a.sub(b))
    }

    pub fn sf_zero(d: &SymFunc) -> Outcome {
        match d.terms().next() {
            None => Outcome::Pass,
            Some((_, c)) => Outcome::Fail(Some(c.clone())),
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            Outcome::Pass => true,
            Outcome::Fail(_) => false,
            Outcome::Note(ok, _) => *ok,
        }
    }

    /// Combines outcomes, keeping the first failure.
    pub fn all<I: IntoIterator<Item = Outcome>>(it: I) -> Outcome {
        for o in it {
            if !o.passed() {
                return o;
            }
        }
        Outcome::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// Runs `f`, timing it. An `Err` is recorded as a failure with the message as note.
    pub fn check<F: FnOnce() -> Result<Outcome>>(&mut self, identity: &str, params: Params, f: F) {
        let start = Instant::now();
        let res = f();
        let millis = start.elapsed().as_millis() as u64;
        let (status, witness, note) = match res {
            Ok(Outcome::Pass) => (Status::Pass, None, None),
            Ok(Outcome::Fail(w)) => (Status::Fail, w, None),
            Ok(Outcome::Note(ok, n)) => (if ok { Status::Pass } else { Status::Fail }, None, Some(n)),
            Err(e) => (Status::Fail, None, Some(e.to_string())),
        };
        self.entries.push(Entry {
            identity: identity.to_string(),
            params,
            status,
            witness,
            note,
            millis,
        });
    }

    pub fn extend(&mut self, o: Report) {
        self.entries.extend(o.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same report with all timings zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for e in &mut r.entries {
            e.millis = 0;
        }
        r
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| identity | params | status | ms |\n|---|---|---|---|\n");
        for e in &self.entries {
            let params = serde_json::to_string(&e.params).unwrap_or_default();
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            s.push_str(&format!("| {} | `{}` | {} | {} |\n", e.identity, params, status, e.millis));
            if let Some(n) = &e.note {
                s.push_str(&format!("| | note: {n} | | |\n"));
            }
        }
        s
    }
}
