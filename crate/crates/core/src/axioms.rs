//! Axiom checkers for the algebra classes in play, plus the small derived
//! operations on products (commutator, adjoint maps, annihilator of the image).
//!
//! Every checker reduces the universally quantified identity to basis tuples.
//! When an identity is alternating in a group of arguments (because the
//! product is skew) only strictly ascending index groups are visited; the
//! first failure in lexicographic order is unaffected by that reduction,
//! since sorting a failing group yields a lexicographically smaller failing
//! tuple.

use crate::error::{require, Error, Result};
use crate::linalg::{nullspace, LinearForm, LinearMap, Vector};
use crate::report::{grouped_tuples, run_check, CheckReport};
use crate::scalar::Scalar;
use crate::tensor::{Order, StructureTensor, Symmetry};

pub(crate) fn basis(dim: usize) -> Vec<Vector> {
    (0..dim).map(|i| Vector::basis(dim, i)).collect()
}

pub(crate) fn expect_arity(t: &StructureTensor, arity: usize, what: &str) -> Result<()> {
    if t.arity() != arity {
        return Err(Error::argument(format!(
            "{what} needs a product of arity {arity}, got arity {}",
            t.arity()
        )));
    }
    Ok(())
}

/// Binary product of two vectors.
pub(crate) fn mul(t: &StructureTensor, a: &Vector, b: &Vector) -> Vector {
    t.eval(&[a, b])
}

/// Enumeration order for identities that inherit the product's symmetry in
/// all of its arguments.
pub(crate) fn inherited_order(t: &StructureTensor) -> Order {
    match t.symmetry() {
        Symmetry::None => Order::Any,
        Symmetry::Skew => Order::Ascending,
        Symmetry::Symmetric => Order::NonDescending,
    }
}

/// Skew-symmetry under every transposition of basis arguments.
///
/// Adjacent transpositions generate the symmetric group, so checking
/// `t(τ) = -t(τ with positions k, k+1 swapped)` for every `k` suffices.
/// Skew-stored tensors pass by construction.
pub fn check_skew_symmetric(t: &StructureTensor) -> Result<CheckReport> {
    let identity = "skew-symmetry";
    if t.symmetry() == Symmetry::Skew {
        return Ok(CheckReport::pass(identity, 0));
    }
    let tuples = grouped_tuples(&[(t.arity(), Order::Any)], t.dim());
    run_check(identity, tuples, |tuple| {
        let lhs = t.basis_product(tuple);
        let mut swapped = tuple.to_vec();
        for k in 0..tuple.len() - 1 {
            swapped.swap(k, k + 1);
            let rhs = -&t.basis_product(&swapped);
            swapped.swap(k, k + 1);
            if lhs != rhs {
                return Ok(Some((lhs, rhs)));
            }
        }
        Ok(None)
    })
}

/// Both sides of the n-Jacobi identity
/// `[[x1..xn], y2..yn] = Σ_i [x1, .., [xi, y2..yn], .., xn]`
/// on a tuple of `2n - 1` basis indices `(x1..xn, y2..yn)`.
pub fn jacobi_sides(t: &StructureTensor, tuple: &[usize]) -> Result<(Vector, Vector)> {
    let n = t.arity();
    if tuple.len() != 2 * n - 1 {
        return Err(Error::argument(format!(
            "n-Jacobi tuple needs {} indices, got {}",
            2 * n - 1,
            tuple.len()
        )));
    }
    if let Some(&i) = tuple.iter().find(|&&i| i >= t.dim()) {
        return Err(Error::argument(format!("index {i} out of range")));
    }
    let e = basis(t.dim());
    jacobi_terms(t, &e, tuple).map(|(lhs, rhs, _)| (lhs, rhs))
}

/// `(lhs, rhs, rhs')` where `rhs'` is the cyclic form valid for n = 3.
fn jacobi_terms(t: &StructureTensor, e: &[Vector], tuple: &[usize]) -> Result<(Vector, Vector, Option<Vector>)> {
    let n = t.arity();
    let (xs, ys) = tuple.split_at(n);
    let xv: Vec<&Vector> = xs.iter().map(|&i| &e[i]).collect();
    let yv: Vec<&Vector> = ys.iter().map(|&i| &e[i]).collect();
    let with_ys = |first: &Vector| {
        let mut args = vec![first];
        args.extend(yv.iter().copied());
        t.eval(&args)
    };

    let inner = t.eval(&xv);
    let lhs = with_ys(&inner);

    let mut rhs = Vector::zero(t.dim());
    let brackets: Vec<Vector> = xv.iter().map(|x| with_ys(x)).collect();
    for i in 0..n {
        let mut args = xv.clone();
        args[i] = &brackets[i];
        rhs += &t.eval(&args);
    }

    let cyclic = (n == 3).then(|| {
        let mut r = Vector::zero(t.dim());
        for i in 0..3 {
            r += &t.eval(&[&brackets[i], xv[(i + 1) % 3], xv[(i + 2) % 3]]);
        }
        r
    });
    Ok((lhs, rhs, cyclic))
}

/// The n-Jacobi identity on all basis tuples.
///
/// Requires a skew product. For n = 3 the cyclic form
/// `[[x1,y2,y3],x2,x3] + [[x2,y2,y3],x3,x1] + [[x3,y2,y3],x1,x2]` is
/// evaluated alongside and must coincide with the summed form on every tuple.
pub fn check_n_jacobi(t: &StructureTensor) -> Result<CheckReport> {
    let skew = check_skew_symmetric(t)?;
    require(skew, "the n-Jacobi identity is only defined here for skew-symmetric products")?;
    let n = t.arity();
    let e = basis(t.dim());
    // LHS - RHS is alternating in the x group and in the y group.
    let tuples = grouped_tuples(&[(n, Order::Ascending), (n - 1, Order::Ascending)], t.dim());
    run_check(&format!("{n}-jacobi"), tuples, |tuple| {
        let (lhs, rhs, cyclic) = jacobi_terms(t, &e, tuple)?;
        if let Some(c) = cyclic {
            if c != rhs {
                return Err(Error::internal(format!(
                    "summed and cyclic forms of the 3-Jacobi identity differ at {tuple:?} on a skew product"
                )));
            }
        }
        Ok((lhs != rhs).then_some((lhs, rhs)))
    })
}

pub fn check_associative(t: &StructureTensor) -> Result<CheckReport> {
    expect_arity(t, 2, "associativity")?;
    let e = basis(t.dim());
    let tuples = grouped_tuples(&[(3, Order::Any)], t.dim());
    run_check("associativity", tuples, |x| {
        let lhs = mul(t, &t.basis_product(&x[..2]), &e[x[2]]);
        let rhs = mul(t, &e[x[0]], &t.basis_product(&x[1..]));
        Ok((lhs != rhs).then_some((lhs, rhs)))
    })
}

pub fn check_commutative(t: &StructureTensor) -> Result<CheckReport> {
    expect_arity(t, 2, "commutativity")?;
    let tuples = grouped_tuples(&[(2, Order::Any)], t.dim());
    run_check("commutativity", tuples, |x| {
        let lhs = t.basis_product(x);
        let rhs = t.basis_product(&[x[1], x[0]]);
        Ok((lhs != rhs).then_some((lhs, rhs)))
    })
}

/// Antisymmetry, then `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0`.
pub fn check_lie(t: &StructureTensor) -> Result<CheckReport> {
    expect_arity(t, 2, "the Lie axioms")?;
    let anti = check_skew_symmetric(t)?.renamed("lie: antisymmetry");
    anti.and_then(|| {
        let e = basis(t.dim());
        let tuples = grouped_tuples(&[(3, Order::Ascending)], t.dim());
        run_check("lie: jacobi", tuples, |x| {
            let (a, b, c) = (&e[x[0]], &e[x[1]], &e[x[2]]);
            let mut lhs = mul(t, a, &mul(t, b, c));
            lhs += &mul(t, b, &mul(t, c, a));
            lhs += &mul(t, c, &mul(t, a, b));
            let rhs = Vector::zero(t.dim());
            Ok((lhs != rhs).then_some((lhs, rhs)))
        })
    })
}

/// `(x*y)*z - x*(y*z) = (y*x)*z - y*(x*z)`
pub fn check_prelie(t: &StructureTensor) -> Result<CheckReport> {
    expect_arity(t, 2, "the pre-Lie axiom")?;
    let e = basis(t.dim());
    let tuples = grouped_tuples(&[(3, Order::Any)], t.dim());
    run_check("pre-lie", tuples, |x| {
        let (a, b, c) = (&e[x[0]], &e[x[1]], &e[x[2]]);
        let assoc = |p: &Vector, q: &Vector| &mul(t, &mul(t, p, q), c) - &mul(t, p, &mul(t, q, c));
        let lhs = assoc(a, b);
        let rhs = assoc(b, a);
        Ok((lhs != rhs).then_some((lhs, rhs)))
    })
}

/// The Lie triple system axioms.
///
/// `{x,y,y} = 0` is quadratic in `y`; over ℚ it is equivalent to the
/// multilinear `{x,y,z} = -{x,z,y}`, which is what is checked on basis
/// tuples. Then the cyclic sum, then the derivation-style identity
/// `{{x,y,z},a,b} = {{x,a,b},y,z} + {x,{y,a,b},z} + {x,y,{z,a,b}}`.
pub fn check_lts(t: &StructureTensor) -> Result<CheckReport> {
    expect_arity(t, 3, "the Lie triple system axioms")?;
    let d = t.dim();
    let e = basis(d);
    let first = run_check("lts: {x,y,y}=0", grouped_tuples(&[(3, Order::Any)], d), |x| {
        let lhs = t.basis_product(x);
        let rhs = -&t.basis_product(&[x[0], x[2], x[1]]);
        Ok((lhs != rhs).then_some((lhs, rhs)))
    })?;
    first
        .and_then(|| {
            run_check("lts: cyclic sum", grouped_tuples(&[(3, Order::Any)], d), |x| {
                let mut lhs = t.basis_product(x);
                lhs += &t.basis_product(&[x[1], x[2], x[0]]);
                lhs += &t.basis_product(&[x[2], x[0], x[1]]);
                let rhs = Vector::zero(d);
                Ok((lhs != rhs).then_some((lhs, rhs)))
            })
        })?
        .and_then(|| {
            // both sides are antisymmetric in (a, b) once the first axiom holds
            let tuples = grouped_tuples(&[(3, Order::Any), (2, Order::Ascending)], d);
            run_check("lts: derivation identity", tuples, |x| {
                let (xa, xb, xc, a, b) = (&e[x[0]], &e[x[1]], &e[x[2]], &e[x[3]], &e[x[4]]);
                let tr = |u: &Vector, v: &Vector, w: &Vector| t.eval(&[u, v, w]);
                let lhs = tr(&tr(xa, xb, xc), a, b);
                let mut rhs = tr(&tr(xa, a, b), xb, xc);
                rhs += &tr(xa, &tr(xb, a, b), xc);
                rhs += &tr(xa, xb, &tr(xc, a, b));
                Ok((lhs != rhs).then_some((lhs, rhs)))
            })
        })
}

/// `[x, y] = x*y - y*x`, stored skew.
pub fn commutator(t: &StructureTensor) -> Result<StructureTensor> {
    expect_arity(t, 2, "the commutator")?;
    StructureTensor::from_fn(2, t.dim(), Symmetry::Skew, |x| {
        &t.basis_product(x) - &t.basis_product(&[x[1], x[0]])
    })
}

/// Matrix of `v ↦ t(fixed.., v)`.
pub fn ad_map(t: &StructureTensor, fixed: &[Vector]) -> Result<LinearMap> {
    if fixed.len() + 1 != t.arity() {
        return Err(Error::argument(format!(
            "ad needs {} fixed arguments, got {}",
            t.arity() - 1,
            fixed.len()
        )));
    }
    let e = basis(t.dim());
    let cols = e
        .iter()
        .map(|v| {
            let mut args: Vec<&Vector> = fixed.iter().collect();
            args.push(v);
            t.evaluate(&args)
        })
        .collect::<Result<Vec<_>>>()?;
    LinearMap::from_columns(&cols)
}

/// Basis of the forms vanishing on every product of basis vectors.
pub fn annihilator_of_image(t: &StructureTensor) -> Vec<LinearForm> {
    // every basis product is ± a stored entry or zero
    let rows: Vec<Vec<Scalar>> = t.entries().values().map(|v| v.coords().to_vec()).collect();
    nullspace(&rows, t.dim())
        .into_iter()
        .map(|v| LinearForm::from_row(v.into_coords()))
        .collect()
}

pub fn kernel_basis(m: &LinearMap) -> Vec<Vector> {
    m.kernel_basis()
}

pub fn kernel_membership(m: &LinearMap, v: &Vector) -> bool {
    m.kernel_contains(v)
}
