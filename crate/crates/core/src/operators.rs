//! Rota-Baxter operators and derivations of weight λ on n-algebras.
//!
//! Both identities are built on the same sum over nonempty subsets
//! `I ⊆ {1..n}` weighted by `λ^{|I|-1}`:
//!
//! * Rota-Baxter: `t(P x1, .., P xn) = P( Σ_I λ^{|I|-1} t(x̂) )` where `x̂_i`
//!   is `x_i` for `i ∈ I` and `P x_i` otherwise.
//! * derivation: `d t(x1, .., xn) = Σ_I λ^{|I|-1} t(x̌)` where `x̌_i` is
//!   `d x_i` for `i ∈ I` and `x_i` otherwise.
//!
//! For binary products these are the familiar
//! `P(x)P(y) = P(P(x)y + xP(y) + λxy)` and `d(xy) = d(x)y + xd(y) + λd(x)d(y)`.

use crate::axioms::{basis, check_associative, check_commutative, expect_arity, inherited_order};
use crate::error::{require, Error, Result};
use crate::linalg::{LinearMap, Vector};
use crate::report::{grouped_tuples, run_check, CheckReport};
use crate::scalar::{format_scalar, pow, Scalar};
use crate::tensor::{StructureTensor, Symmetry};

/// Which arguments the map is applied to in a subset term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    /// Map applied to the arguments outside `I` (Rota-Baxter convention).
    RbHat,
    /// Map applied to the arguments inside `I` (derivation convention).
    DiffCheck,
}

pub(crate) struct Expansion<'a> {
    t: &'a StructureTensor,
    powers: Vec<Scalar>,
}

impl<'a> Expansion<'a> {
    pub(crate) fn new(t: &'a StructureTensor, lambda: &Scalar) -> Self {
        let powers = (0..t.arity()).map(|k| pow(lambda, k)).collect();
        Expansion { t, powers }
    }

    /// `Σ_I λ^{|I|-1} t(args)` where slot `i` takes `plain[i]` or `mapped[i]`
    /// according to `mode`.
    pub(crate) fn sum(&self, plain: &[&Vector], mapped: &[&Vector], mode: SubsetMode) -> Vector {
        let n = self.t.arity();
        let mut out = Vector::zero(self.t.dim());
        let mut args: Vec<&Vector> = plain.to_vec();
        for mask in 1u32..(1 << n) {
            let coeff = &self.powers[mask.count_ones() as usize - 1];
            if num_traits::Zero::is_zero(coeff) {
                continue;
            }
            for (i, slot) in args.iter_mut().enumerate() {
                let inside = mask & (1 << i) != 0;
                *slot = match (mode, inside) {
                    (SubsetMode::RbHat, true) | (SubsetMode::DiffCheck, false) => plain[i],
                    (SubsetMode::RbHat, false) | (SubsetMode::DiffCheck, true) => mapped[i],
                };
            }
            out.add_scaled(coeff, &self.t.eval(&args));
        }
        out
    }
}

fn expect_map(t: &StructureTensor, m: &LinearMap, what: &str) -> Result<()> {
    if m.dim() != t.dim() {
        return Err(Error::argument(format!(
            "{what}: map of dimension {} on a product of dimension {}",
            m.dim(),
            t.dim()
        )));
    }
    Ok(())
}

pub fn subset_expansion(
    t: &StructureTensor,
    m: &LinearMap,
    lambda: &Scalar,
    args: &[Vector],
    mode: SubsetMode,
) -> Result<Vector> {
    expect_map(t, m, "subset expansion")?;
    if args.len() != t.arity() {
        return Err(Error::argument(format!(
            "expected {} arguments, got {}",
            t.arity(),
            args.len()
        )));
    }
    if args.iter().any(|a| a.dim() != t.dim()) {
        return Err(Error::argument("argument dimension mismatch"));
    }
    let mapped: Vec<Vector> = args.iter().map(|a| m.apply(a)).collect();
    let plain: Vec<&Vector> = args.iter().collect();
    let mapped: Vec<&Vector> = mapped.iter().collect();
    Ok(Expansion::new(t, lambda).sum(&plain, &mapped, mode))
}

pub(crate) fn weight_label(kind: &str, lambda: &Scalar) -> String {
    format!("{kind} (weight {})", format_scalar(lambda))
}

/// The Rota-Baxter identity of weight λ on every basis tuple.
pub fn check_rota_baxter(t: &StructureTensor, p: &LinearMap, lambda: &Scalar) -> Result<CheckReport> {
    expect_map(t, p, "rota-baxter check")?;
    let e = basis(t.dim());
    let images = p.columns();
    let expansion = Expansion::new(t, lambda);
    // the identity is alternating (symmetric) when the product is
    let tuples = grouped_tuples(&[(t.arity(), inherited_order(t))], t.dim());
    run_check(&weight_label("rota-baxter", lambda), tuples, |tuple| {
        let plain: Vec<&Vector> = tuple.iter().map(|&i| &e[i]).collect();
        let mapped: Vec<&Vector> = tuple.iter().map(|&i| &images[i]).collect();
        let lhs = t.eval(&mapped);
        let rhs = p.apply(&expansion.sum(&plain, &mapped, SubsetMode::RbHat));
        Ok((lhs != rhs).then_some((lhs, rhs)))
    })
}

/// The weight-λ derivation identity on every basis tuple.
pub fn check_derivation(t: &StructureTensor, d: &LinearMap, lambda: &Scalar) -> Result<CheckReport> {
    expect_map(t, d, "derivation check")?;
    let e = basis(t.dim());
    let images = d.columns();
    let expansion = Expansion::new(t, lambda);
    let tuples = grouped_tuples(&[(t.arity(), inherited_order(t))], t.dim());
    run_check(&weight_label("derivation", lambda), tuples, |tuple| {
        let plain: Vec<&Vector> = tuple.iter().map(|&i| &e[i]).collect();
        let mapped: Vec<&Vector> = tuple.iter().map(|&i| &images[i]).collect();
        let lhs = d.apply(&t.eval(&plain));
        let rhs = expansion.sum(&plain, &mapped, SubsetMode::DiffCheck);
        Ok((lhs != rhs).then_some((lhs, rhs)))
    })
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    pub rota_baxter: CheckReport,
    pub derivation_of_inverse: CheckReport,
    pub inverse: LinearMap,
}

impl DualityReport {
    /// Single-line summary: passes when the two verdicts agree, which is the
    /// only way a `DualityReport` is ever returned.
    pub fn summary(&self) -> CheckReport {
        CheckReport::pass(
            "duality: P rota-baxter ⇔ P⁻¹ derivation",
            self.rota_baxter.checked + self.derivation_of_inverse.checked,
        )
    }
}

/// An invertible `P` is Rota-Baxter of weight λ iff `P⁻¹` is a derivation of
/// weight λ. Both sides are checked; a disagreement is an internal error.
pub fn check_duality(t: &StructureTensor, p: &LinearMap, lambda: &Scalar) -> Result<DualityReport> {
    expect_map(t, p, "duality check")?;
    let inverse = p
        .inverse()
        .ok_or_else(|| Error::precondition_msg("duality needs an invertible map; determinant is 0"))?;
    let rota_baxter = check_rota_baxter(t, p, lambda)?;
    let derivation_of_inverse = check_derivation(t, &inverse, lambda)?;
    if rota_baxter.verdict != derivation_of_inverse.verdict {
        return Err(Error::internal(format!(
            "rota-baxter verdict {:?} but derivation-of-inverse verdict {:?}",
            rota_baxter.verdict, derivation_of_inverse.verdict
        )));
    }
    Ok(DualityReport {
        rota_baxter,
        derivation_of_inverse,
        inverse,
    })
}

/// The n-ary product `x1 ∘ x2 ∘ .. ∘ xn` of an associative algebra, nested
/// from the left. Stored symmetric when the algebra is also commutative.
pub fn nary_from_associative(t: &StructureTensor, n: usize) -> Result<StructureTensor> {
    expect_arity(t, 2, "the n-ary power construction")?;
    if n < 2 {
        return Err(Error::argument(format!("n-ary power needs n ≥ 2, got {n}")));
    }
    require(check_associative(t)?, "n-ary power needs an associative product")?;
    let symmetry = if check_commutative(t)?.passed() {
        Symmetry::Symmetric
    } else {
        Symmetry::None
    };
    let e = basis(t.dim());
    StructureTensor::from_fn(n, t.dim(), symmetry, |tuple| {
        tuple[1..]
            .iter()
            .fold(e[tuple[0]].clone(), |acc, &i| t.eval(&[&acc, &e[i]]))
    })
}

pub fn maps_commute(a: &LinearMap, b: &LinearMap) -> bool {
    a.commutes_with(b)
}
