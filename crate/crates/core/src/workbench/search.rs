//! Search for Rota-Baxter operators and admissible linear forms.
//!
//! Form targets have linear conditions and the `Linear` strategy returns a
//! basis of the complete solution space. The Rota-Baxter condition is
//! quadratic in the operator; grid and random search are sound (every
//! result is verified) but not complete.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::constructions::{check_fd_form, check_form_annihilates};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, LinearForm, LinearMap, Vector};
use crate::operators::check_rota_baxter;
use crate::report::CheckReport;
use crate::scalar::{int, Scalar};
use crate::tensor::{all_tuples, StructureTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    RbOperator,
    AnnihilatingForm,
    /// Forms with `f(D(x)y) = f(xD(y))` for a named map `D`.
    FdForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Every candidate with entries in `entries`.
    Grid,
    /// `max_candidates` candidates drawn with entries from `entries`.
    Random { seed: u64 },
    /// Exact nullspace of the linear condition.
    Linear,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub target: Target,
    pub product: String,
    pub weight: Scalar,
    pub strategy: Strategy,
    pub entries: Vec<Scalar>,
    pub max_candidates: usize,
    /// Map used by [`Target::FdForm`].
    pub derivation: Option<String>,
    /// Matrix positions `(row, column)` allowed to be nonzero in operator
    /// candidates; all positions when `None`.
    pub pattern: Option<Vec<(usize, usize)>>,
}

impl SearchSpec {
    pub fn new(target: Target, product: impl Into<String>) -> Self {
        SearchSpec {
            target,
            product: product.into(),
            weight: int(0),
            strategy: match target {
                Target::RbOperator => Strategy::Grid,
                _ => Strategy::Linear,
            },
            entries: vec![int(-1), int(0), int(1)],
            max_candidates: 1_000_000,
            derivation: None,
            pattern: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.target == Target::RbOperator && self.strategy == Strategy::Linear {
            return Err(Error::argument("linear solving applies only to form targets"));
        }
        if self.strategy != Strategy::Linear && self.entries.is_empty() {
            return Err(Error::argument("entry set must not be empty"));
        }
        if self.target == Target::FdForm && self.derivation.is_none() {
            return Err(Error::argument("the fD_form target needs a derivation map"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Found {
    Map(LinearMap),
    Form(LinearForm),
}

/// A search result with the passing report that certifies it.
#[derive(Debug, Clone)]
pub struct Certified {
    pub object: Found,
    pub certificate: CheckReport,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub results: Vec<Certified>,
    pub candidates: usize,
    /// The grid had more points than `max_candidates`.
    pub truncated: bool,
}

pub fn search(alg: &Algebra, spec: &SearchSpec) -> Result<SearchOutcome> {
    spec.validate()?;
    let t = alg.product(&spec.product)?;
    let d = t.dim();
    let slots: Vec<(usize, usize)> = match spec.target {
        Target::RbOperator => spec
            .pattern
            .clone()
            .unwrap_or_else(|| (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect()),
        _ => (0..d).map(|j| (0, j)).collect(),
    };
    if let Some(&(r, c)) = slots.iter().find(|&&(r, c)| r >= d || c >= d) {
        return Err(Error::argument(format!("pattern position ({r}, {c}) outside dimension {d}")));
    }
    let fd = match &spec.derivation {
        Some(name) if spec.target == Target::FdForm => Some(alg.map(name)?),
        _ => None,
    };
    let certify = |object: Found| -> Result<Option<Certified>> {
        let certificate = match (&object, spec.target) {
            (Found::Map(p), _) => check_rota_baxter(t, p, &spec.weight)?,
            (Found::Form(f), Target::AnnihilatingForm) => check_form_annihilates(t, f)?,
            (Found::Form(f), _) => check_fd_form(t, f, fd.expect("validated"))?,
        };
        Ok(certificate.passed().then_some(Certified { object, certificate }))
    };
    let build = |values: &[Scalar]| -> Found {
        match spec.target {
            Target::RbOperator => {
                let mut rows = vec![vec![int(0); d]; d];
                for (&(r, c), v) in slots.iter().zip(values) {
                    rows[r][c] = v.clone();
                }
                Found::Map(LinearMap::from_rows(rows).expect("square"))
            }
            _ => Found::Form(LinearForm::from_row(values.to_vec())),
        }
    };

    let mut results = Vec::new();
    let mut candidates = 0;
    let mut truncated = false;
    match spec.strategy {
        Strategy::Linear => {
            let rows = linear_conditions(t, spec.target, fd)?;
            for v in nullspace(&rows, d) {
                candidates += 1;
                let found = certify(Found::Form(LinearForm::from_row(v.into_coords())))?;
                results.push(found.ok_or_else(|| Error::internal("nullspace form fails its own condition"))?);
            }
        }
        Strategy::Grid => {
            let k = spec.entries.len();
            let mut digits = vec![0usize; slots.len()];
            loop {
                if candidates == spec.max_candidates {
                    truncated = true;
                    break;
                }
                candidates += 1;
                let values: Vec<Scalar> = digits.iter().map(|&i| spec.entries[i].clone()).collect();
                if let Some(c) = certify(build(&values))? {
                    results.push(c);
                }
                let mut pos = digits.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < k {
                        break;
                    }
                    digits[pos] = 0;
                }
                if digits.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
        Strategy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = std::collections::BTreeSet::new();
            for _ in 0..spec.max_candidates {
                let values: Vec<Scalar> = slots
                    .iter()
                    .map(|_| spec.entries.choose(&mut rng).expect("nonempty").clone())
                    .collect();
                candidates += 1;
                if !seen.insert(values.clone()) {
                    continue;
                }
                if let Some(c) = certify(build(&values))? {
                    results.push(c);
                }
            }
        }
    }
    Ok(SearchOutcome {
        results,
        candidates,
        truncated,
    })
}

/// Rows `r` with `r · f = 0` for every admissible form `f`.
fn linear_conditions(t: &StructureTensor, target: Target, fd: Option<&LinearMap>) -> Result<Vec<Vec<Scalar>>> {
    match target {
        Target::AnnihilatingForm => Ok(all_tuples(t.arity(), t.dim())
            .map(|x| t.basis_product(&x).into_coords())
            .collect()),
        Target::FdForm => {
            if t.arity() != 2 {
                return Err(Error::argument("the fD_form target needs a binary product"));
            }
            let d = fd.expect("validated");
            let e: Vec<Vector> = (0..t.dim()).map(|i| Vector::basis(t.dim(), i)).collect();
            let de = d.columns();
            let mut rows = Vec::new();
            for i in 0..t.dim() {
                for j in 0..t.dim() {
                    let lhs = t.eval(&[&de[i], &e[j]]);
                    let rhs = t.eval(&[&e[i], &de[j]]);
                    rows.push((&lhs - &rhs).into_coords());
                }
            }
            Ok(rows)
        }
        Target::RbOperator => Err(Error::argument("linear solving applies only to form targets")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::catalog::by_name;

    #[test]
    fn grid_visits_every_point_once() {
        let alg = by_name("nonabelian2").unwrap();
        let out = search(&alg, &SearchSpec::new(Target::RbOperator, "bracket")).unwrap();
        assert_eq!(out.candidates, 81);
        assert!(!out.truncated);
    }

    #[test]
    fn linear_rejected_for_operators() {
        let alg = by_name("nonabelian2").unwrap();
        let mut spec = SearchSpec::new(Target::RbOperator, "bracket");
        spec.strategy = Strategy::Linear;
        assert!(matches!(search(&alg, &spec), Err(Error::Argument(_))));
    }
}
