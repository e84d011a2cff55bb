use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one verification item.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Value,
    pub status: Status,
    /// Number of individual cases examined.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Report {
    pub fn new(check: impl Into<String>, params: Value) -> Self {
        Report {
            check: check.into(),
            params,
            status: Status::Pass,
            cases: 0,
            counterexample: None,
        }
    }

    /// Records one case; the first failure is kept as the counterexample.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
            self.counterexample = Some(describe());
        }
    }

    pub fn fail(&mut self, why: String) {
        self.record(false, || why);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(
            f,
            "{status} {} {} ({} cases)",
            self.check, self.params, self.cases
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}
