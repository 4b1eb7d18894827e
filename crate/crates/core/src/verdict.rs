//! Verdicts returned by every checking operation.

use std::fmt;

use num_rational::BigRational;

/// Outcome of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Violated,
    /// Passed a necessary test; not a proof.
    Consistent,
    /// Failed a necessary test.
    Refuted,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Consistent => "consistent",
            Status::Refuted => "refuted",
            Status::Error => "error",
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Status::Holds | Status::Consistent)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where an input number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Provenance {
    DiagramComputed,
    #[default]
    UserSupplied,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::DiagramComputed => "diagram-computed",
            Provenance::UserSupplied => "user-supplied",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "diagram-computed" => Some(Provenance::DiagramComputed),
            "user-supplied" => Some(Provenance::UserSupplied),
            _ => None,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A number carried by a verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Int(i64),
    Real(f64),
    Exact(BigRational),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(v) => write!(f, "{v}"),
            Quantity::Real(v) => write!(f, "{v:e}"),
            Quantity::Exact(v) => write!(f, "{v}"),
        }
    }
}

impl From<i64> for Quantity {
    fn from(v: i64) -> Self {
        Quantity::Int(v)
    }
}

impl From<f64> for Quantity {
    fn from(v: f64) -> Self {
        Quantity::Real(v)
    }
}

impl From<BigRational> for Quantity {
    fn from(v: BigRational) -> Self {
        Quantity::Exact(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub lhs: Option<Quantity>,
    pub rhs: Option<Quantity>,
    /// `rhs - lhs` for inequalities, a margin for numeric checks.
    pub slack: Option<Quantity>,
    /// Name of the stage that decided the verdict.
    pub stage: Option<String>,
    /// Machine-readable reason, always set for `Status::Error`.
    pub reason: Option<String>,
    pub witness: Vec<(String, String)>,
    pub provenance: Vec<(String, Provenance)>,
    pub warnings: Vec<String>,
}

impl Verdict {
    pub fn new(status: Status) -> Self {
        Verdict {
            status,
            lhs: None,
            rhs: None,
            slack: None,
            stage: None,
            reason: None,
            witness: Vec::new(),
            provenance: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        Self::new(if ok { Status::Holds } else { Status::Violated })
    }

    pub fn error(reason: impl Into<String>) -> Self {
        let mut v = Self::new(Status::Error);
        v.reason = Some(reason.into());
        v
    }

    /// `lhs <= rhs` over integers.
    pub fn le(lhs: i64, rhs: i64) -> Self {
        Self::from_bool(lhs <= rhs).sides(lhs, rhs).with_slack(rhs - lhs)
    }

    /// `lhs == rhs` over integers.
    pub fn eq(lhs: i64, rhs: i64) -> Self {
        Self::from_bool(lhs == rhs).sides(lhs, rhs).with_slack(rhs - lhs)
    }

    pub fn sides(mut self, lhs: impl Into<Quantity>, rhs: impl Into<Quantity>) -> Self {
        self.lhs = Some(lhs.into());
        self.rhs = Some(rhs.into());
        self
    }

    pub fn with_slack(mut self, slack: impl Into<Quantity>) -> Self {
        self.slack = Some(slack.into());
        self
    }

    pub fn at_stage(mut self, stage: impl Into<String>) -> Self {
        self.stage = Some(stage.into());
        self
    }

    pub fn because(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn with_witness(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.witness.push((key.into(), value.to_string()));
        self
    }

    pub fn with_provenance(mut self, key: impl Into<String>, p: Provenance) -> Self {
        self.provenance.push((key.into(), p));
        self
    }

    pub fn warn(mut self, msg: impl Into<String>) -> Self {
        self.warnings.push(msg.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    /// Key/value lines in a fixed order.
    pub fn machine_lines(&self, prefix: &str) -> Vec<String> {
        let mut out = vec![format!("{prefix}status={}", self.status)];
        let mut push = |k: &str, v: &Option<Quantity>| {
            if let Some(v) = v {
                out.push(format!("{prefix}{k}={v}"));
            }
        };
        push("lhs", &self.lhs);
        push("rhs", &self.rhs);
        push("slack", &self.slack);
        if let Some(s) = &self.stage {
            out.push(format!("{prefix}stage={s}"));
        }
        if let Some(r) = &self.reason {
            out.push(format!("{prefix}reason={r}"));
        }
        for (k, v) in &self.witness {
            out.push(format!("{prefix}witness.{k}={v}"));
        }
        for (k, p) in &self.provenance {
            out.push(format!("{prefix}provenance.{k}={p}"));
        }
        for (i, w) in self.warnings.iter().enumerate() {
            out.push(format!("{prefix}warning.{i}={w}"));
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, " (lhs {l}, rhs {r}")?;
            if let Some(s) = &self.slack {
                write!(f, ", slack {s}")?;
            }
            write!(f, ")")?;
        } else if let Some(s) = &self.slack {
            write!(f, " (margin {s})")?;
        }
        if let Some(s) = &self.stage {
            write!(f, " at {s}")?;
        }
        if let Some(r) = &self.reason {
            write!(f, ": {r}")?;
        }
        Ok(())
    }
}
