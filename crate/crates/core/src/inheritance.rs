//! Rota-Baxter operators inducing new n-ary brackets on the same space.
//!
//! The central construction is the derived bracket
//! `[x1, .., xn]_P = Σ_I λ^{|I|-1} [x̂1, .., x̂n]`, where `x̂i = xi` for
//! `i ∈ I` and `P xi` otherwise. Every function here re-verifies the
//! conclusions it promises and reports a failure as an internal error.

use num_traits::Zero;

use crate::axioms::{basis, check_lie, check_lts, check_n_jacobi, expect_arity};
use crate::constructions::{check_form_annihilates, f_bracket, thm32_condition};
use crate::error::{ensure, require, Error, Result};
use crate::linalg::{LinearForm, LinearMap, Vector};
use crate::operators::{check_derivation, check_rota_baxter, maps_commute, Expansion, SubsetMode};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::tensor::{StructureTensor, Symmetry};

fn expect_map(t: &StructureTensor, m: &LinearMap) -> Result<()> {
    if m.dim() != t.dim() {
        return Err(Error::argument(format!(
            "map of dimension {} on a product of dimension {}",
            m.dim(),
            t.dim()
        )));
    }
    Ok(())
}

fn rebuild(t: &StructureTensor, what: &str, f: impl Fn(&[usize]) -> Vector) -> Result<StructureTensor> {
    let out = if t.symmetry() == Symmetry::None {
        StructureTensor::from_fn(t.arity(), t.dim(), Symmetry::None, f)?
    } else {
        StructureTensor::from_fn_checked(t.arity(), t.dim(), t.symmetry(), f)
            .map_err(|_| Error::internal(format!("{what} lost the {} symmetry", t.symmetry().name())))?
    };
    Ok(out)
}

/// The derived bracket `[x1, .., xn]_P`, stored with the symmetry of `t`.
/// No hypotheses are checked.
pub fn derived_nbracket(t: &StructureTensor, p: &LinearMap, lambda: &Scalar) -> Result<StructureTensor> {
    expect_map(t, p)?;
    let e = basis(t.dim());
    let pe = p.columns();
    let expansion = Expansion::new(t, lambda);
    rebuild(t, "derived bracket", |x| {
        let plain: Vec<&Vector> = x.iter().map(|&i| &e[i]).collect();
        let mapped: Vec<&Vector> = x.iter().map(|&i| &pe[i]).collect();
        expansion.sum(&plain, &mapped, SubsetMode::RbHat)
    })
}

/// The derived bracket of a Rota-Baxter n-Lie algebra. It is again n-Lie
/// and `P` is Rota-Baxter on it; both are re-verified.
pub fn inherit_rota_baxter(t: &StructureTensor, p: &LinearMap, lambda: &Scalar) -> Result<StructureTensor> {
    expect_map(t, p)?;
    require(check_n_jacobi(t)?, "input must be an n-Lie algebra")?;
    require(check_rota_baxter(t, p, lambda)?, "P must be Rota-Baxter on the input")?;
    let out = derived_nbracket(t, p, lambda)?;
    ensure(check_n_jacobi(&out)?, "derived bracket is n-Lie")?;
    ensure(check_rota_baxter(&out, p, lambda)?, "P is Rota-Baxter on the derived bracket")?;
    Ok(out)
}

/// A derivation of weight λ commuting with a Rota-Baxter operator of weight λ
/// is a derivation of the derived bracket.
pub fn check_derivation_transfer(
    t: &StructureTensor,
    p: &LinearMap,
    lambda: &Scalar,
    d: &LinearMap,
) -> Result<CheckReport> {
    expect_map(t, p)?;
    expect_map(t, d)?;
    require(check_rota_baxter(t, p, lambda)?, "P must be Rota-Baxter on the input")?;
    require(check_derivation(t, d, lambda)?, "d must be a derivation of the input")?;
    if !maps_commute(p, d) {
        return Err(Error::precondition_msg("P and d must commute"));
    }
    let derived = derived_nbracket(t, p, lambda)?;
    let report = check_derivation(&derived, d, lambda)?;
    ensure(report.clone(), "d is a derivation of the derived bracket")?;
    Ok(report)
}

/// `[x1, .., xn]_d = d [d⁻¹x1, .., d⁻¹xn]` for an invertible derivation `d`
/// of weight λ. This is the derived bracket of `d⁻¹`; the two are compared,
/// and the result is re-verified to be n-Lie with `d` a derivation of it.
pub fn cor53_bracket(t: &StructureTensor, d: &LinearMap, lambda: &Scalar) -> Result<StructureTensor> {
    expect_map(t, d)?;
    require(check_n_jacobi(t)?, "input must be an n-Lie algebra")?;
    require(check_derivation(t, d, lambda)?, "d must be a derivation of the input")?;
    let dinv = d
        .inverse()
        .ok_or_else(|| Error::precondition_msg("d must be invertible"))?;
    let cols = dinv.columns();
    let out = rebuild(t, "conjugated bracket", |x| {
        let args: Vec<&Vector> = x.iter().map(|&i| &cols[i]).collect();
        d.apply(&t.eval(&args))
    })?;
    let via_inverse = derived_nbracket(t, &dinv, lambda)?;
    if !out.same_map(&via_inverse) {
        return Err(Error::internal(
            "d[d⁻¹x, ..] differs from the derived bracket of the inverse",
        ));
    }
    ensure(check_n_jacobi(&out)?, "conjugated bracket is n-Lie")?;
    ensure(check_derivation(&out, d, lambda)?, "d is a derivation of the conjugated bracket")?;
    Ok(out)
}

/// Which way the cross term of the `f(Pz)` group is written in the explicit
/// derived f-bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossTerm {
    /// `[Px, y] + [x, Py]`, matching the derived bracket of the f-bracket.
    Symmetrized,
    /// `[Px, y] + [y, Px]`, which cancels to zero.
    Literal,
}

fn explicit_derived_f_bracket(
    lie: &StructureTensor,
    p: &LinearMap,
    lambda: &Scalar,
    f: &LinearForm,
    variant: CrossTerm,
) -> Result<StructureTensor> {
    let d = lie.dim();
    let e = basis(d);
    let pe = p.columns();
    let fr = f.row();
    let b = |u: &Vector, v: &Vector| lie.eval(&[u, v]);
    let l2 = lambda * lambda;
    StructureTensor::from_fn(3, d, Symmetry::None, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        let (fpx, fpy, fpz) = (f.apply(&pe[i]), f.apply(&pe[j]), f.apply(&pe[k]));
        let mut v = Vector::zero(d);
        // f(Px)([Py, z] + [y, Pz] + λ[y, z])
        let mut g = &b(&pe[j], &e[k]) + &b(&e[j], &pe[k]);
        g.add_scaled(lambda, &b(&e[j], &e[k]));
        v.add_scaled(&fpx, &g);
        let mut g = &b(&pe[k], &e[i]) + &b(&e[k], &pe[i]);
        g.add_scaled(lambda, &b(&e[k], &e[i]));
        v.add_scaled(&fpy, &g);
        let mut g = match variant {
            CrossTerm::Symmetrized => &b(&pe[i], &e[j]) + &b(&e[i], &pe[j]),
            CrossTerm::Literal => &b(&pe[i], &e[j]) + &b(&e[j], &pe[i]),
        };
        g.add_scaled(lambda, &b(&e[i], &e[j]));
        v.add_scaled(&fpz, &g);
        // f(x)([Py, Pz] + λ[Py, z] + λ[y, Pz] + λ²[y, z])
        let group = |a: usize, c: usize| {
            let mut g = b(&pe[a], &pe[c]);
            g.add_scaled(lambda, &b(&pe[a], &e[c]));
            g.add_scaled(lambda, &b(&e[a], &pe[c]));
            g.add_scaled(&l2, &b(&e[a], &e[c]));
            g
        };
        v.add_scaled(&fr[i], &group(j, k));
        v.add_scaled(&fr[j], &group(k, i));
        v.add_scaled(&fr[k], &group(i, j));
        v
    })
}

fn require_derived_f_bracket(lie: &StructureTensor, p: &LinearMap, lambda: &Scalar, f: &LinearForm) -> Result<()> {
    expect_arity(lie, 2, "the derived f-bracket")?;
    expect_map(lie, p)?;
    require(check_lie(lie)?, "input must be a Lie algebra")?;
    require(check_form_annihilates(lie, f)?, "f must vanish on [L, L]")?;
    require(check_rota_baxter(lie, p, lambda)?, "P must be Rota-Baxter on the Lie algebra")?;
    let cond = thm32_condition(lie, p, lambda, f)?;
    require(cond.condition, "the f-bracket kernel condition must hold")
}

/// The derived bracket of the f-bracket written out in terms of the Lie
/// bracket. With [`CrossTerm::Symmetrized`] it is compared against
/// [`derived_nbracket`] of [`f_bracket`] and re-verified to be 3-Lie with
/// `P` Rota-Baxter on it. The literal variant is returned unverified.
pub fn cor54_bracket(
    lie: &StructureTensor,
    p: &LinearMap,
    lambda: &Scalar,
    f: &LinearForm,
    variant: CrossTerm,
) -> Result<StructureTensor> {
    require_derived_f_bracket(lie, p, lambda, f)?;
    let explicit = explicit_derived_f_bracket(lie, p, lambda, f, variant)?;
    if variant == CrossTerm::Literal {
        return Ok(explicit);
    }
    let fb = f_bracket(lie, f)?;
    let derived = derived_nbracket(&fb, p, lambda)?;
    if !explicit.same_map(&derived) {
        return Err(Error::internal("explicit derived f-bracket differs from the derived bracket"));
    }
    ensure(check_n_jacobi(&derived)?, "derived f-bracket is 3-Lie")?;
    ensure(check_rota_baxter(&derived, p, lambda)?, "P is Rota-Baxter on the derived f-bracket")?;
    Ok(derived)
}

/// Weight-zero case of [`cor54_bracket`].
pub fn cor55_bracket(lie: &StructureTensor, p: &LinearMap, f: &LinearForm, variant: CrossTerm) -> Result<StructureTensor> {
    cor54_bracket(lie, p, &Scalar::zero(), f, variant)
}

/// Whether each written form of the derived f-bracket agrees with the
/// derived bracket of the f-bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossTermReport {
    pub symmetrized_matches: bool,
    pub literal_matches: bool,
}

pub fn compare_cross_terms(
    lie: &StructureTensor,
    p: &LinearMap,
    lambda: &Scalar,
    f: &LinearForm,
) -> Result<CrossTermReport> {
    require_derived_f_bracket(lie, p, lambda, f)?;
    let derived = derived_nbracket(&f_bracket(lie, f)?, p, lambda)?;
    let matches = |v| explicit_derived_f_bracket(lie, p, lambda, f, v).map(|t| t.same_map(&derived));
    Ok(CrossTermReport {
        symmetrized_matches: matches(CrossTerm::Symmetrized)?,
        literal_matches: matches(CrossTerm::Literal)?,
    })
}

/// `Σ_i t(x1, .., P xi, .., xn)`. A weight-zero Rota-Baxter operator on an
/// n-Lie algebra does not in general make this n-Lie.
pub fn naive_bracket(t: &StructureTensor, p: &LinearMap) -> Result<StructureTensor> {
    expect_map(t, p)?;
    let e = basis(t.dim());
    let pe = p.columns();
    rebuild(t, "naive bracket", |x| {
        let mut out = Vector::zero(t.dim());
        let mut args: Vec<&Vector> = x.iter().map(|&i| &e[i]).collect();
        for (slot, &i) in x.iter().enumerate() {
            args[slot] = &pe[i];
            out += &t.eval(&args);
            args[slot] = &e[i];
        }
        out
    })
}

/// The Lie triple system `{x, y, z} = [x, [y, z]]` of a Lie algebra.
pub fn lts_from_lie(lie: &StructureTensor) -> Result<StructureTensor> {
    expect_arity(lie, 2, "a Lie triple system")?;
    require(check_lie(lie)?, "input must be a Lie algebra")?;
    let e = basis(lie.dim());
    let out = StructureTensor::from_fn(3, lie.dim(), Symmetry::None, |x| {
        let inner = lie.basis_product(&[x[1], x[2]]);
        lie.eval(&[&e[x[0]], &inner])
    })?;
    ensure(check_lts(&out)?, "[x, [y, z]] is a Lie triple system")?;
    Ok(out)
}

/// A Rota-Baxter operator of a Lie algebra is Rota-Baxter, with the same
/// weight, on its Lie triple system.
pub fn check_rb_lts_transfer(lie: &StructureTensor, p: &LinearMap, lambda: &Scalar) -> Result<CheckReport> {
    let lts = lts_from_lie(lie)?;
    expect_map(lie, p)?;
    require(check_rota_baxter(lie, p, lambda)?, "P must be Rota-Baxter on the Lie algebra")?;
    let report = check_rota_baxter(&lts, p, lambda)?;
    ensure(report.clone(), "P is Rota-Baxter on the Lie triple system")?;
    Ok(report)
}

/// The derived bracket of a Rota-Baxter Lie triple system, re-verified to be
/// a Lie triple system with `P` Rota-Baxter on it.
pub fn derived_lts_bracket(lts: &StructureTensor, p: &LinearMap, lambda: &Scalar) -> Result<StructureTensor> {
    expect_arity(lts, 3, "a Lie triple system")?;
    expect_map(lts, p)?;
    require(check_lts(lts)?, "input must be a Lie triple system")?;
    require(check_rota_baxter(lts, p, lambda)?, "P must be Rota-Baxter on the triple system")?;
    let out = derived_nbracket(lts, p, lambda)?;
    ensure(check_lts(&out)?, "derived bracket is a Lie triple system")?;
    ensure(check_rota_baxter(&out, p, lambda)?, "P is Rota-Baxter on the derived triple system")?;
    Ok(out)
}
