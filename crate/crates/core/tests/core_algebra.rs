//! Tensors, axiom checks and exact linear algebra on hand-computed values.

use rbn_core::axioms::{
    ad_map, annihilator_of_image, check_associative, check_commutative, check_lie, check_n_jacobi, check_prelie,
    check_skew_symmetric, commutator, jacobi_sides, kernel_basis, kernel_membership,
};
use rbn_core::constructions::{dx_y_product, prelie_from_comm_assoc};
use rbn_core::linalg::nullspace;
use rbn_core::scalar::{frac, int};
use rbn_core::workbench::catalog::by_name;
use rbn_core::{format_scalar, parse_scalar, LinearMap, StructureTensor, Symmetry, Vector, Verdict};

fn e(dim: usize, i: usize) -> Vector {
    Vector::basis(dim, i)
}

fn a4() -> StructureTensor {
    by_name("a4").unwrap().product("bracket").unwrap().clone()
}

#[test]
fn a4_evaluation() {
    let t = a4();
    assert_eq!(t.evaluate(&[&e(4, 0), &e(4, 1), &e(4, 2)]).unwrap(), e(4, 3));
    // repeated argument in a skew product
    let v = Vector::from_ints(&[1, -2, 3, 0]);
    assert!(t.evaluate(&[&v, &v, &e(4, 3)]).unwrap().is_zero());
    // [x1 + x2, x3, x4] = [x1,x3,x4] + [x2,x3,x4] = x2 + x1
    let s = Vector::from_ints(&[1, 1, 0, 0]);
    assert_eq!(t.evaluate(&[&s, &e(4, 2), &e(4, 3)]).unwrap(), Vector::from_ints(&[1, 1, 0, 0]));
    // odd permutation flips the sign
    assert_eq!(t.basis_product(&[2, 1, 0]), -&e(4, 3));
}

#[test]
fn skew_storage_rejects_repeated_index() {
    let mut t = StructureTensor::new(3, 4, Symmetry::Skew).unwrap();
    assert!(t.insert(vec![0, 0, 1], e(4, 2)).is_err());
    assert!(t.insert(vec![4, 0, 1], e(4, 2)).is_err());
}

#[test]
fn skew_checks() {
    assert!(check_skew_symmetric(&a4()).unwrap().passed());
    let cross = by_name("cross3").unwrap();
    let cross = cross.product("bracket").unwrap().with_symmetry(Symmetry::None).unwrap();
    assert!(check_skew_symmetric(&cross).unwrap().passed());

    let comp = by_name("componentwise3").unwrap();
    let r = check_skew_symmetric(comp.product("mul").unwrap()).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    // e1 e1 = e1 is not -e1, and (0, 0) comes first lexicographically
    let c = r.counterexample.unwrap();
    assert_eq!(c.tuple, vec![0, 0]);
    assert_eq!((c.lhs, c.rhs), (e(3, 0), -&e(3, 0)));
}

#[test]
fn jacobi_checks() {
    let r = check_n_jacobi(&a4()).unwrap();
    assert!(r.passed());
    assert!(check_n_jacobi(&StructureTensor::zero(3, 4, Symmetry::Skew).unwrap()).unwrap().passed());

    let heis = by_name("heisenberg").unwrap();
    assert!(check_lie(heis.product("bracket").unwrap()).unwrap().passed());
    assert!(check_n_jacobi(heis.product("bracket").unwrap()).unwrap().passed());
    let (lhs, rhs) = jacobi_sides(&a4(), &[0, 1, 2, 1, 3]).unwrap();
    assert_eq!(lhs, rhs);
    assert!(jacobi_sides(&a4(), &[0, 1, 2]).is_err());
}

#[test]
fn associative_and_commutative() {
    let comp = by_name("componentwise3").unwrap();
    let m = comp.product("mul").unwrap();
    assert!(check_associative(m).unwrap().passed());
    assert!(check_commutative(m).unwrap().passed());

    let mat = by_name("mat2").unwrap();
    let m = mat.product("mul").unwrap();
    assert!(check_associative(m).unwrap().passed());
    assert!(!check_commutative(m).unwrap().passed());
    assert!(check_lie(&commutator(m).unwrap()).unwrap().passed());
}

#[test]
fn prelie_products_on_truncated_polynomials() {
    let alg = by_name("trunc_poly4").unwrap();
    let (m, d) = (alg.product("mul").unwrap(), alg.map("D").unwrap());
    // x * y = x D(y) is left-symmetric and not associative
    let pl = prelie_from_comm_assoc(m, d).unwrap();
    assert!(check_prelie(&pl).unwrap().passed());
    assert!(!check_associative(&pl).unwrap().passed());
    // t^a * t^b = b t^(a+b)
    assert_eq!(pl.basis_product(&[1, 2]), e(4, 3).scale(&int(2)));
    assert_eq!(pl.basis_product(&[2, 1]), e(4, 3));

    // D(x) y has associator D²(x) y z, so it is right-symmetric only;
    // at (1, t, 1) one side is D²(1) t = 0 and the other D²(t) = t
    let dx = dx_y_product(m, d).unwrap();
    let r = check_prelie(&dx).unwrap();
    let c = r.counterexample.unwrap();
    assert_eq!(c.tuple, vec![0, 1, 0]);
    assert!(c.lhs.is_zero() != c.rhs.is_zero());
    // its commutator is D(x)y - D(y)x, the negative of the pre-Lie one
    let c = commutator(&dx).unwrap();
    assert_eq!(c.basis_product(&[1, 2]), -&e(4, 3));
    assert!(c.same_map(&commutator(&pl).unwrap().scale(&int(-1))));
    assert!(commutator(m).unwrap().is_zero());
}

#[test]
fn adjoint_maps() {
    let t = a4();
    let ad12 = ad_map(&t, &[e(4, 0), e(4, 1)]).unwrap();
    assert_eq!(ad12.apply(&e(4, 2)), e(4, 3));
    assert_eq!(ad12.apply(&e(4, 3)), e(4, 2));
    assert!(ad12.apply(&e(4, 0)).is_zero() && ad12.apply(&e(4, 1)).is_zero());
    let swap = ad12.add(&ad_map(&t, &[e(4, 2), e(4, 3)]).unwrap());
    assert_eq!(swap.compose(&swap), LinearMap::identity(4));
    assert!(ad_map(&t, &[Vector::zero(4), e(4, 2)]).unwrap().is_zero());
}

#[test]
fn annihilators() {
    let heis = by_name("heisenberg").unwrap();
    let forms = annihilator_of_image(heis.product("bracket").unwrap());
    assert_eq!(forms.len(), 2);
    assert!(forms.iter().all(|f| f.apply(&e(3, 2)) == int(0)));
    assert!(annihilator_of_image(&a4()).is_empty());
    let abelian = StructureTensor::zero(2, 3, Symmetry::Skew).unwrap();
    assert_eq!(annihilator_of_image(&abelian).len(), 3);
}

#[test]
fn kernels() {
    assert!(kernel_basis(&LinearMap::identity(3)).is_empty());
    assert!(!kernel_membership(&LinearMap::identity(3), &e(3, 1)));
    assert_eq!(kernel_basis(&LinearMap::zero(3)).len(), 3);
    let d = by_name("a4").unwrap().map("D").unwrap().clone();
    let v = Vector::from_ints(&[1, -1, 0, 0]);
    assert!(kernel_membership(&d.add(&LinearMap::identity(4)), &v));
    assert_eq!(kernel_basis(&d.add(&LinearMap::identity(4))).len(), 2);
}

#[test]
fn exact_linear_algebra() {
    let h = LinearMap::from_rows(vec![
        vec![int(1), frac(1, 2), frac(1, 3)],
        vec![frac(1, 2), frac(1, 3), frac(1, 4)],
        vec![frac(1, 3), frac(1, 4), frac(1, 5)],
    ])
    .unwrap();
    assert_eq!(h.determinant(), frac(1, 2160));
    let inv = h.inverse().unwrap();
    assert_eq!(inv.entry(0, 0), &int(9));
    assert_eq!(inv.entry(1, 1), &int(192));
    assert_eq!(h.compose(&inv), LinearMap::identity(3));

    let ns = nullspace(&[vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]], 3);
    assert_eq!(ns.len(), 2);
    let a = LinearMap::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
    let b = LinearMap::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
    assert!(!a.commutes_with(&b));
    assert_eq!(a.compose(&b), LinearMap::from_int_rows(&[&[1, 0], &[0, 0]]).unwrap());
}

#[test]
fn scalar_text() {
    assert_eq!(parse_scalar("-3/6").unwrap(), frac(-1, 2));
    assert_eq!(format_scalar(&frac(4, 2)), "2");
    assert_eq!(format_scalar(&frac(-1, 3)), "-1/3");
    assert!(parse_scalar("0.5").is_err());
    assert!(parse_scalar("1/0").is_err());
}
