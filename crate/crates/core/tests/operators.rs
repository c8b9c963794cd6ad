//! Rota-Baxter operators, derivations and their duality.

use rbn_core::operators::{
    check_derivation, check_duality, check_rota_baxter, maps_commute, nary_from_associative, subset_expansion,
    SubsetMode,
};
use rbn_core::scalar::{frac, int};
use rbn_core::workbench::catalog::{by_name, catalog, known_operators, OperatorKind};
use rbn_core::{Error, LinearMap, Scalar, Symmetry, Vector};

fn e(dim: usize, i: usize) -> Vector {
    Vector::basis(dim, i)
}

fn neg_id(dim: usize, lambda: &Scalar) -> LinearMap {
    LinearMap::scalar(dim, &-lambda.clone())
}

#[test]
fn subset_expansion_values() {
    let a4 = by_name("a4").unwrap();
    let t = a4.product("bracket").unwrap();
    let args = vec![e(4, 0), e(4, 1), e(4, 2)];
    let plain = t.basis_product(&[0, 1, 2]);
    let lambda = frac(3, 2);
    // only I = {1,2,3} survives for the zero map
    let zero = subset_expansion(t, &LinearMap::zero(4), &lambda, &args, SubsetMode::RbHat).unwrap();
    assert_eq!(zero, plain.scale(&(&lambda * &lambda)));
    let id = subset_expansion(t, &LinearMap::identity(4), &int(0), &args, SubsetMode::RbHat).unwrap();
    assert_eq!(id, plain.scale(&int(3)));
    // [Dx1,Dx2,x3] + [Dx1,x2,Dx3] + [x1,Dx2,Dx3] = -x4
    let d = a4.map("D").unwrap();
    let v = subset_expansion(t, d, &int(0), &args, SubsetMode::RbHat).unwrap();
    assert_eq!(v, -&e(4, 3));
    assert!(subset_expansion(t, d, &int(0), &args[..2], SubsetMode::RbHat).is_err());
}

#[test]
fn rota_baxter_examples() {
    let a4 = by_name("a4").unwrap();
    let t = a4.product("bracket").unwrap();
    for lambda in [int(0), int(1), int(-1), frac(1, 2)] {
        assert!(check_rota_baxter(t, &LinearMap::zero(4), &lambda).unwrap().passed());
        assert!(check_rota_baxter(t, &neg_id(4, &lambda), &lambda).unwrap().passed());
    }
    assert!(!check_rota_baxter(t, &LinearMap::identity(4), &int(0)).unwrap().passed());

    let comp = by_name("componentwise3").unwrap();
    let (m, p) = (comp.product("mul").unwrap(), comp.map("P").unwrap());
    let r = check_rota_baxter(m, p, &int(1)).unwrap();
    assert!(r.passed());
    // a = b = e1: P(e1) P(e1) = (0,1,1) and P(P(e1) e1 + e1 P(e1) + e1 e1) = P(e1) = (0,1,1)
    let pe = p.apply(&e(3, 0));
    assert_eq!(m.evaluate(&[&pe, &pe]).unwrap(), Vector::from_ints(&[0, 1, 1]));
    assert!(!check_rota_baxter(m, p, &int(-1)).unwrap().passed());
}

#[test]
fn derivation_examples() {
    let comp = by_name("componentwise3").unwrap();
    let m = comp.product("mul").unwrap();
    // xy = 2xy - xy
    assert!(check_derivation(m, &LinearMap::identity(3), &int(-1)).unwrap().passed());
    assert!(!check_derivation(m, &LinearMap::identity(3), &int(0)).unwrap().passed());

    let tp = by_name("trunc_poly4").unwrap();
    assert!(check_derivation(tp.product("mul").unwrap(), tp.map("D").unwrap(), &int(0)).unwrap().passed());

    let a4 = by_name("a4").unwrap();
    let (t, d) = (a4.product("bracket").unwrap(), a4.map("D").unwrap());
    assert!(check_derivation(t, d, &int(0)).unwrap().passed());
    // D[x1,x2,x3] = x3 = [x2,x2,x3] + [x1,x1,x3] + [x1,x2,x4]
    assert_eq!(d.apply(&t.basis_product(&[0, 1, 2])), e(4, 2));
    // Id is a ternary derivation of weight λ iff 3 + 3λ + λ² = 1
    for (lambda, ok) in [(int(-1), true), (int(-2), true), (int(0), false), (int(1), false)] {
        assert_eq!(check_derivation(t, &LinearMap::identity(4), &lambda).unwrap().passed(), ok);
    }
}

#[test]
fn duality_examples() {
    let a4 = by_name("a4").unwrap();
    let (t, d) = (a4.product("bracket").unwrap(), a4.map("D").unwrap());
    let r = check_duality(t, d, &int(0)).unwrap();
    assert!(r.rota_baxter.passed() && r.derivation_of_inverse.passed());
    assert_eq!(&r.inverse, d);

    for lambda in [int(1), int(-1), frac(1, 2)] {
        let r = check_duality(t, &neg_id(4, &lambda), &lambda).unwrap();
        assert!(r.rota_baxter.passed());
        assert_eq!(r.inverse, LinearMap::scalar(4, &-(int(1) / &lambda)));
    }
    // both fail together as well
    let r = check_duality(t, &LinearMap::scalar(4, &int(2)), &int(0)).unwrap();
    assert!(!r.rota_baxter.passed() && !r.derivation_of_inverse.passed());

    assert!(matches!(
        check_duality(t, &LinearMap::zero(4), &int(0)),
        Err(Error::Precondition { .. })
    ));
}

#[test]
fn catalog_operators_hold() {
    for op in known_operators() {
        let alg = by_name(op.algebra).unwrap();
        let (t, m) = (alg.product(op.product).unwrap(), alg.map(op.map).unwrap());
        let r = match op.kind {
            OperatorKind::RotaBaxter => check_rota_baxter(t, m, &op.weight).unwrap(),
            OperatorKind::Derivation => check_derivation(t, m, &op.weight).unwrap(),
        };
        assert!(r.passed(), "{} {} {:?}", op.algebra, op.map, r.counterexample);
    }
}

#[test]
fn neg_lambda_identity_on_every_catalog_product() {
    for alg in catalog() {
        for t in alg.products().values() {
            for lambda in [int(1), int(-1), frac(1, 2)] {
                check_duality(t, &neg_id(t.dim(), &lambda), &lambda).unwrap();
            }
        }
    }
}

#[test]
fn nary_powers() {
    let comp = by_name("componentwise3").unwrap();
    let t3 = nary_from_associative(comp.product("mul").unwrap(), 3).unwrap();
    assert_eq!(t3.basis_product(&[1, 1, 1]), e(3, 1));
    assert!(t3.basis_product(&[0, 1, 1]).is_zero());

    let tp = by_name("trunc_poly4").unwrap();
    let t3 = nary_from_associative(tp.product("mul").unwrap(), 3).unwrap();
    assert_eq!(t3.basis_product(&[0, 1, 2]), e(4, 3));
    assert!(t3.basis_product(&[1, 1, 2]).is_zero());

    // the ternary product of componentwise ℚ⁴ keeps the running sum rota-baxter
    let c4 = by_name("componentwise4").unwrap();
    let t3 = nary_from_associative(c4.product("mul").unwrap(), 3).unwrap();
    let r = check_rota_baxter(&t3, c4.map("P").unwrap(), &int(1)).unwrap();
    assert!(r.passed());
    // a symmetric product is checked on sorted triples only
    assert_eq!(r.checked, 20);
    let full = t3.with_symmetry(Symmetry::None).unwrap();
    let r = check_rota_baxter(&full, c4.map("P").unwrap(), &int(1)).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked, 64);

    assert!(nary_from_associative(comp.product("mul").unwrap(), 1).is_err());
    let a4 = by_name("a4").unwrap();
    assert!(nary_from_associative(a4.product("bracket").unwrap(), 3).is_err());
}

#[test]
fn commuting_maps() {
    let tp = by_name("trunc_poly2_deg3").unwrap();
    assert!(maps_commute(tp.map("D1").unwrap(), tp.map("D2").unwrap()));
    let a = LinearMap::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
    let b = LinearMap::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
    assert!(maps_commute(&a, &a));
    assert!(!maps_commute(&a, &b));
}
