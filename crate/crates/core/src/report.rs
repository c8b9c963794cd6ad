//! Check reports and the basis-tuple runner shared by every checker.
//!
//! All identities checked here are multilinear, so they hold everywhere iff
//! they hold on basis tuples. Tuples are visited in lexicographic order and
//! the first failure is reported, which makes counterexamples reproducible.
//!
//! Work may be split across `RBN_WORKERS` threads (default 1); the reported
//! counterexample is the same for any worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::Result;
use crate::linalg::Vector;

/// Environment variable holding the worker count for basis-tuple checks.
pub const WORKERS_ENV: &str = "RBN_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub tuple: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: String,
    pub verdict: Verdict,
    /// Basis tuples examined, up to and including the failing one.
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn pass(identity: impl Into<String>, checked: usize) -> Self {
        CheckReport {
            identity: identity.into(),
            verdict: Verdict::Pass,
            checked,
            counterexample: None,
        }
    }

    pub fn fail(identity: impl Into<String>, checked: usize, counterexample: Counterexample) -> Self {
        CheckReport {
            identity: identity.into(),
            verdict: Verdict::Fail,
            checked,
            counterexample: Some(counterexample),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub(crate) fn renamed(mut self, identity: impl Into<String>) -> Self {
        self.identity = identity.into();
        self
    }

    /// Runs `next` only if `self` passed, summing the tuple counts.
    pub(crate) fn and_then(self, next: impl FnOnce() -> Result<CheckReport>) -> Result<CheckReport> {
        if !self.passed() {
            return Ok(self);
        }
        let mut r = next()?;
        r.checked += self.checked;
        Ok(r)
    }
}

pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

/// Outcome of evaluating an identity on one tuple: `None` if it holds,
/// otherwise both sides.
pub(crate) type TupleOutcome = Result<Option<(Vector, Vector)>>;

/// Evaluates `eval` on each tuple in order and reports the first failure.
pub(crate) fn run_check<F>(identity: &str, tuples: Vec<Vec<usize>>, eval: F) -> Result<CheckReport>
where
    F: Fn(&[usize]) -> TupleOutcome + Sync,
{
    run_check_with(worker_count(), identity, tuples, eval)
}

pub(crate) fn run_check_with<F>(workers: usize, identity: &str, tuples: Vec<Vec<usize>>, eval: F) -> Result<CheckReport>
where
    F: Fn(&[usize]) -> TupleOutcome + Sync,
{
    let workers = workers.min(tuples.len()).max(1);
    let found = if workers <= 1 {
        scan(&tuples, 0, &eval, &AtomicUsize::new(usize::MAX))?
    } else {
        let best = AtomicUsize::new(usize::MAX);
        let chunk = tuples.len().div_ceil(workers);
        let results: Vec<Result<Option<(usize, Vector, Vector)>>> = std::thread::scope(|s| {
            let handles: Vec<_> = tuples
                .chunks(chunk)
                .enumerate()
                .map(|(w, part)| {
                    let eval = &eval;
                    let best = &best;
                    s.spawn(move || scan(part, w * chunk, eval, best))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("check worker panicked")).collect()
        });
        let mut first: Option<(usize, Vector, Vector)> = None;
        for r in results {
            if let Some(hit) = r? {
                if first.as_ref().map_or(true, |f| hit.0 < f.0) {
                    first = Some(hit);
                }
            }
        }
        first
    };
    Ok(match found {
        None => CheckReport::pass(identity, tuples.len()),
        Some((i, lhs, rhs)) => CheckReport::fail(
            identity,
            i + 1,
            Counterexample {
                tuple: tuples[i].clone(),
                lhs,
                rhs,
            },
        ),
    })
}

fn scan<F>(part: &[Vec<usize>], offset: usize, eval: &F, best: &AtomicUsize) -> Result<Option<(usize, Vector, Vector)>>
where
    F: Fn(&[usize]) -> TupleOutcome,
{
    for (k, tuple) in part.iter().enumerate() {
        let i = offset + k;
        if i > best.load(Ordering::Relaxed) {
            break;
        }
        if let Some((lhs, rhs)) = eval(tuple)? {
            best.fetch_min(i, Ordering::Relaxed);
            return Ok(Some((i, lhs, rhs)));
        }
    }
    Ok(None)
}

/// Tuples formed by concatenating groups, each enumerated with its own order,
/// in overall lexicographic order.
pub(crate) fn grouped_tuples(groups: &[(usize, crate::tensor::Order)], dim: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for &(len, order) in groups {
        let group: Vec<Vec<usize>> = crate::tensor::TupleIter::new(len, dim, order).collect();
        acc = acc
            .iter()
            .flat_map(|prefix| {
                group.iter().map(move |g| {
                    let mut t = prefix.clone();
                    t.extend_from_slice(g);
                    t
                })
            })
            .collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Order;

    #[test]
    fn reports_first_failure_in_order() {
        let tuples = grouped_tuples(&[(2, Order::Any)], 3);
        let r = run_check("demo", tuples, |t| {
            Ok((t[0] + t[1] >= 3).then(|| (Vector::basis(1, 0), Vector::zero(1))))
        })
        .unwrap();
        assert!(!r.passed());
        assert_eq!(r.counterexample.unwrap().tuple, vec![1, 2]);
        assert_eq!(r.checked, 6);
    }

    #[test]
    fn worker_count_does_not_change_the_counterexample() {
        let tuples = grouped_tuples(&[(3, Order::Any)], 5);
        let eval = |t: &[usize]| Ok((t[0] * t[1] + t[2] == 7).then(|| (Vector::basis(1, 0), Vector::zero(1))));
        let single = run_check_with(1, "demo", tuples.clone(), eval).unwrap();
        for workers in [2, 3, 8] {
            assert_eq!(run_check_with(workers, "demo", tuples.clone(), eval).unwrap(), single);
        }
        assert_eq!(single.counterexample.unwrap().tuple, vec![1, 3, 4]);
    }

    #[test]
    fn grouped_orders() {
        let t = grouped_tuples(&[(2, Order::Ascending), (1, Order::Any)], 3);
        assert_eq!(t.len(), 9);
        assert_eq!(t[0], vec![0, 1, 0]);
        assert_eq!(t[8], vec![1, 2, 2]);
    }
}
