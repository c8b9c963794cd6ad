//! Seeded random instances: small rational entries, invertible changes of
//! basis, and transport of structures along them.

use rand::Rng;

use crate::linalg::{LinearForm, LinearMap, Vector};
use crate::scalar::{frac, Scalar};
use crate::tensor::{StructureTensor, Symmetry};

/// An integer in `-2..=2`, or with probability 1/4 a half-integer.
pub fn small_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let n = rng.gen_range(-2i64..=2);
    if rng.gen_ratio(1, 4) {
        frac(2 * n + 1, 2)
    } else {
        frac(n, 1)
    }
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    Vector::from_coords((0..dim).map(|_| small_scalar(rng)).collect())
}

pub fn random_map<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> LinearMap {
    LinearMap::from_rows((0..dim).map(|_| random_vector(rng, dim).into_coords()).collect())
        .expect("square rows")
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> LinearMap {
    loop {
        let m = random_map(rng, dim);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A skew tensor; each canonical tuple is nonzero with probability 1/2.
pub fn random_skew_tensor<R: Rng + ?Sized>(rng: &mut R, arity: usize, dim: usize) -> StructureTensor {
    StructureTensor::from_fn(arity, dim, Symmetry::Skew, |_| {
        if rng.gen_bool(0.5) {
            random_vector(rng, dim)
        } else {
            Vector::zero(dim)
        }
    })
    .expect("valid arity")
}

/// `φ(t(φ⁻¹x1, .., φ⁻¹xn))`, with the symmetry of `t`.
pub fn transport_tensor(t: &StructureTensor, phi: &LinearMap, phi_inv: &LinearMap) -> StructureTensor {
    let cols = phi_inv.columns();
    StructureTensor::from_fn(t.arity(), t.dim(), t.symmetry(), |x| {
        let args: Vec<&Vector> = x.iter().map(|&i| &cols[i]).collect();
        phi.apply(&t.eval(&args))
    })
    .expect("same shape")
}

/// `φ m φ⁻¹`.
pub fn transport_map(m: &LinearMap, phi: &LinearMap, phi_inv: &LinearMap) -> LinearMap {
    phi.compose(m).compose(phi_inv)
}

/// `f ∘ φ⁻¹`.
pub fn transport_form(f: &LinearForm, phi_inv: &LinearMap) -> LinearForm {
    f.compose(phi_inv)
}
