use thiserror::Error;

use crate::report::CheckReport;
use crate::workbench::format::FormatError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arity, dimension or naming mismatch in the arguments of an operation.
    #[error("argument error: {0}")]
    Argument(String),

    /// A hypothesis of a construction or check does not hold.
    #[error("precondition failed: {what}{}", witness(report))]
    Precondition {
        what: String,
        report: Option<Box<CheckReport>>,
    },

    /// A construction produced an object that does not satisfy the property
    /// it is claimed to have, although every hypothesis was verified.
    ///
    /// Raised only for claims that are known not to hold in general (see
    /// `constructions::derived_prelie`); everything else is `Internal`.
    #[error("claimed conclusion does not hold: {claim}{}", witness(&Some(report.clone())))]
    ConclusionFailed {
        claim: String,
        report: Box<CheckReport>,
    },

    /// An unconditional theorem was violated after its hypotheses passed.
    /// Only reachable through an implementation bug.
    #[error("internal consistency violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn witness(report: &Option<Box<CheckReport>>) -> String {
    match report.as_ref().and_then(|r| r.counterexample.as_ref().map(|c| (r, c))) {
        Some((r, c)) => format!(" ({} fails at basis tuple {:?})", r.identity, c.tuple),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn precondition(what: impl Into<String>, report: CheckReport) -> Self {
        Error::Precondition {
            what: what.into(),
            report: Some(Box::new(report)),
        }
    }

    pub(crate) fn precondition_msg(what: impl Into<String>) -> Self {
        Error::Precondition {
            what: what.into(),
            report: None,
        }
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

/// Turns a failed hypothesis check into a precondition error.
pub(crate) fn require(report: CheckReport, what: &str) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::precondition(what, report))
    }
}

/// Turns a failed conclusion of an unconditional theorem into an internal error.
pub(crate) fn ensure(report: CheckReport, claim: &str) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        let at = report
            .counterexample
            .as_ref()
            .map(|c| format!(" at basis tuple {:?}", c.tuple))
            .unwrap_or_default();
        Err(Error::internal(format!("{claim}: {} fails{at}", report.identity)))
    }
}
