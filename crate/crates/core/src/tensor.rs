//! Multilinear products given by structure constants.
//!
//! A [`StructureTensor`] stores the product of every basis tuple that is
//! nonzero. Skew tensors keep only strictly ascending tuples and recover the
//! rest from the sign of the sorting permutation; symmetric tensors keep only
//! non-descending tuples.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Vector};
use crate::scalar::Scalar;

/// Largest supported arity. Subset expansions enumerate `2^n - 1` terms.
pub const MAX_ARITY: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    None,
    Skew,
    Symmetric,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::None => "none",
            Symmetry::Skew => "skew",
            Symmetry::Symmetric => "symmetric",
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct StructureTensor {
    arity: usize,
    dim: usize,
    symmetry: Symmetry,
    entries: BTreeMap<Vec<usize>, Vector>,
}

impl std::fmt::Debug for StructureTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StructureTensor")
            .field("arity", &self.arity)
            .field("dim", &self.dim)
            .field("symmetry", &self.symmetry)
            .field("entries", &self.entries)
            .finish()
    }
}

/// Sorts `buf` ascending and returns the sign of the sorting permutation,
/// or 0 if two entries coincide.
fn sort_with_sign(buf: &mut [usize]) -> i8 {
    let mut sign = 1;
    for i in 1..buf.len() {
        let mut j = i;
        while j > 0 && buf[j - 1] > buf[j] {
            buf.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && buf[j - 1] == buf[j] {
            return 0;
        }
    }
    sign
}

impl StructureTensor {
    pub fn new(arity: usize, dim: usize, symmetry: Symmetry) -> Result<Self> {
        if arity < 2 || arity > MAX_ARITY {
            return Err(Error::argument(format!("arity must be in 2..={MAX_ARITY}, got {arity}")));
        }
        Ok(StructureTensor {
            arity,
            dim,
            symmetry,
            entries: BTreeMap::new(),
        })
    }

    pub fn zero(arity: usize, dim: usize, symmetry: Symmetry) -> Result<Self> {
        Self::new(arity, dim, symmetry)
    }

    /// Fills the tensor by calling `f` on every stored (canonical) tuple.
    pub fn from_fn(
        arity: usize,
        dim: usize,
        symmetry: Symmetry,
        mut f: impl FnMut(&[usize]) -> Vector,
    ) -> Result<Self> {
        let mut t = Self::new(arity, dim, symmetry)?;
        for tuple in canonical_tuples(arity, dim, symmetry) {
            let v = f(&tuple);
            t.insert(tuple, v)?;
        }
        Ok(t)
    }

    /// Builds a tensor from its values on every basis tuple and stores it with
    /// the given symmetry, after checking that the values actually have it.
    pub fn from_fn_checked(
        arity: usize,
        dim: usize,
        symmetry: Symmetry,
        mut f: impl FnMut(&[usize]) -> Vector,
    ) -> Result<Self> {
        let full = Self::from_fn(arity, dim, Symmetry::None, &mut f)?;
        full.with_symmetry(symmetry)
    }

    /// Re-stores the same multilinear map with another symmetry. Fails if
    /// the values do not have that symmetry.
    pub fn with_symmetry(&self, symmetry: Symmetry) -> Result<Self> {
        if symmetry == self.symmetry {
            return Ok(self.clone());
        }
        let out = Self::from_fn(self.arity, self.dim, symmetry, |tuple| self.basis_product(tuple))?;
        if symmetry != Symmetry::None && !out.same_map(self) {
            return Err(Error::argument(format!("product is not {}", symmetry.name())));
        }
        Ok(out)
    }

    /// Stores `value` as the product of the basis tuple. The tuple must be
    /// canonical for the tensor's symmetry. Zero values are not stored.
    pub fn insert(&mut self, tuple: Vec<usize>, value: Vector) -> Result<()> {
        self.validate_tuple(&tuple)?;
        if value.dim() != self.dim {
            return Err(Error::argument(format!(
                "value for {tuple:?} has dimension {}, expected {}",
                value.dim(),
                self.dim
            )));
        }
        if value.is_zero() {
            self.entries.remove(&tuple);
        } else {
            self.entries.insert(tuple, value);
        }
        Ok(())
    }

    fn validate_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::argument(format!(
                "tuple {tuple:?} has length {}, arity is {}",
                tuple.len(),
                self.arity
            )));
        }
        if let Some(&i) = tuple.iter().find(|&&i| i >= self.dim) {
            return Err(Error::argument(format!("index {i} out of range for dimension {}", self.dim)));
        }
        let ok = match self.symmetry {
            Symmetry::None => true,
            Symmetry::Skew => tuple.windows(2).all(|w| w[0] < w[1]),
            Symmetry::Symmetric => tuple.windows(2).all(|w| w[0] <= w[1]),
        };
        if !ok {
            return Err(Error::argument(format!(
                "tuple {tuple:?} is not canonical for a {} product",
                self.symmetry.name()
            )));
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Stored nonzero entries, keyed by canonical tuple.
    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Vector> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `coeff · t(e_tuple)` into `out`.
    pub fn accumulate_basis_product(&self, tuple: &[usize], coeff: &Scalar, out: &mut Vector) {
        debug_assert_eq!(tuple.len(), self.arity);
        let mut buf = [0usize; MAX_ARITY];
        let key = &mut buf[..self.arity];
        key.copy_from_slice(tuple);
        let sign = match self.symmetry {
            Symmetry::None => 1,
            Symmetry::Skew => sort_with_sign(key),
            Symmetry::Symmetric => {
                key.sort_unstable();
                1
            }
        };
        if sign == 0 {
            return;
        }
        if let Some(v) = self.entries.get(&key[..]) {
            if sign > 0 {
                out.add_scaled(coeff, v);
            } else {
                out.add_scaled(&-coeff, v);
            }
        }
    }

    /// The product of a tuple of basis vectors.
    pub fn basis_product(&self, tuple: &[usize]) -> Vector {
        let mut out = Vector::zero(self.dim);
        self.accumulate_basis_product(tuple, &Scalar::one(), &mut out);
        out
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn evaluate(&self, args: &[&Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::argument(format!(
                "expected {} arguments, got {}",
                self.arity,
                args.len()
            )));
        }
        if let Some(a) = args.iter().find(|a| a.dim() != self.dim) {
            return Err(Error::argument(format!(
                "argument of dimension {} for a product on dimension {}",
                a.dim(),
                self.dim
            )));
        }
        Ok(self.eval(args))
    }

    /// [`evaluate`](Self::evaluate) without argument validation.
    pub(crate) fn eval(&self, args: &[&Vector]) -> Vector {
        let mut out = Vector::zero(self.dim);
        if self.entries.is_empty() {
            return out;
        }
        let supports: Vec<Vec<(usize, &Scalar)>> = args.iter().map(|a| a.support().collect()).collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut tuple = [0usize; MAX_ARITY];
        let mut idx = [0usize; MAX_ARITY];
        let n = self.arity;
        loop {
            let mut coeff = Scalar::one();
            for k in 0..n {
                let (i, c) = supports[k][idx[k]];
                tuple[k] = i;
                coeff *= c;
            }
            self.accumulate_basis_product(&tuple[..n], &coeff, &mut out);
            // odometer over the supports
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < supports[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// `c · t`
    pub fn scale(&self, c: &Scalar) -> StructureTensor {
        let mut out = StructureTensor {
            entries: BTreeMap::new(),
            ..self.clone()
        };
        if c.is_zero() {
            return out;
        }
        out.entries = self.entries.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect();
        out
    }

    /// `m ∘ t`, the product followed by a linear map.
    pub fn post_compose(&self, m: &LinearMap) -> StructureTensor {
        let mut out = StructureTensor {
            entries: BTreeMap::new(),
            ..self.clone()
        };
        for (k, v) in &self.entries {
            let w = m.apply(v);
            if !w.is_zero() {
                out.entries.insert(k.clone(), w);
            }
        }
        out
    }

    /// Whether the two tensors define the same multilinear map, whatever
    /// their storage.
    pub fn same_map(&self, other: &StructureTensor) -> bool {
        self.arity == other.arity
            && self.dim == other.dim
            && all_tuples(self.arity, self.dim).all(|t| self.basis_product(&t) == other.basis_product(&t))
    }

    /// First basis tuple (lexicographic) where two tensors differ.
    pub fn first_difference(&self, other: &StructureTensor) -> Option<Vec<usize>> {
        all_tuples(self.arity, self.dim).find(|t| self.basis_product(t) != other.basis_product(t))
    }
}

/// All `dim^arity` index tuples in lexicographic order.
pub fn all_tuples(arity: usize, dim: usize) -> impl Iterator<Item = Vec<usize>> {
    TupleIter::new(arity, dim, Order::Any)
}

/// The tuples a tensor with the given symmetry stores, in lexicographic order.
pub fn canonical_tuples(arity: usize, dim: usize, symmetry: Symmetry) -> impl Iterator<Item = Vec<usize>> {
    let order = match symmetry {
        Symmetry::None => Order::Any,
        Symmetry::Skew => Order::Ascending,
        Symmetry::Symmetric => Order::NonDescending,
    };
    TupleIter::new(arity, dim, order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Any,
    Ascending,
    NonDescending,
}

/// Lexicographic enumeration of index tuples under an ordering constraint.
pub struct TupleIter {
    dim: usize,
    order: Order,
    current: Option<Vec<usize>>,
}

impl TupleIter {
    pub fn new(len: usize, dim: usize, order: Order) -> Self {
        let first: Vec<usize> = match order {
            Order::Ascending => (0..len).collect(),
            _ => vec![0; len],
        };
        let valid = first.iter().all(|&i| i < dim) || len == 0;
        TupleIter {
            dim,
            order,
            current: valid.then_some(first),
        }
    }

    fn min_after(&self, prev: usize) -> usize {
        match self.order {
            Order::Any => 0,
            Order::Ascending => prev + 1,
            Order::NonDescending => prev,
        }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let len = next.len();
        let mut k = len;
        while k > 0 {
            k -= 1;
            next[k] += 1;
            // room left for the remaining positions?
            let tail = len - 1 - k;
            let needed = if self.order == Order::Ascending { tail } else { 0 };
            if next[k] + needed < self.dim {
                for j in k + 1..len {
                    next[j] = self.min_after(next[j - 1]);
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn a4() -> StructureTensor {
        let mut t = StructureTensor::new(3, 4, Symmetry::Skew).unwrap();
        t.insert(vec![0, 1, 2], Vector::basis(4, 3)).unwrap();
        t.insert(vec![0, 1, 3], Vector::basis(4, 2)).unwrap();
        t.insert(vec![0, 2, 3], Vector::basis(4, 1)).unwrap();
        t.insert(vec![1, 2, 3], Vector::basis(4, 0)).unwrap();
        t
    }

    #[test]
    fn tuple_iteration_counts() {
        assert_eq!(all_tuples(3, 4).count(), 64);
        assert_eq!(canonical_tuples(3, 4, Symmetry::Skew).count(), 4);
        assert_eq!(canonical_tuples(2, 3, Symmetry::Symmetric).count(), 6);
        assert_eq!(canonical_tuples(3, 2, Symmetry::Skew).count(), 0);
        assert_eq!(all_tuples(2, 0).count(), 0);
        let v: Vec<_> = canonical_tuples(2, 3, Symmetry::Skew).collect();
        assert_eq!(v, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn a4_basis_products() {
        let t = a4();
        let e = |i| Vector::basis(4, i);
        assert_eq!(t.evaluate(&[&e(0), &e(1), &e(2)]).unwrap(), e(3));
        assert_eq!(t.evaluate(&[&e(1), &e(0), &e(2)]).unwrap(), -&e(3));
        assert_eq!(t.evaluate(&[&e(2), &e(0), &e(1)]).unwrap(), e(3));
    }

    #[test]
    fn a4_bilinear_expansion() {
        // [x1 + x2, x3, x4] = [x1,x3,x4] + [x2,x3,x4] = x2 + x1
        let t = a4();
        let x12 = Vector::from_ints(&[1, 1, 0, 0]);
        let r = t.evaluate(&[&x12, &Vector::basis(4, 2), &Vector::basis(4, 3)]).unwrap();
        assert_eq!(r, Vector::from_ints(&[1, 1, 0, 0]));
    }

    #[test]
    fn skew_repeated_argument_is_zero() {
        let t = a4();
        let v = Vector::from_coords(vec![int(1), frac(2, 3), int(-1), int(5)]);
        let w = Vector::from_ints(&[0, 1, 1, 0]);
        assert!(t.evaluate(&[&v, &v, &w]).unwrap().is_zero());
    }

    #[test]
    fn argument_errors() {
        let t = a4();
        let e = Vector::basis(4, 0);
        assert!(t.evaluate(&[&e, &e]).is_err());
        assert!(t.evaluate(&[&e, &e, &Vector::basis(3, 0)]).is_err());
        let mut s = StructureTensor::new(3, 4, Symmetry::Skew).unwrap();
        assert!(s.insert(vec![1, 0, 2], e.clone()).is_err());
        assert!(s.insert(vec![0, 1, 4], e.clone()).is_err());
        assert!(StructureTensor::new(1, 4, Symmetry::None).is_err());
    }

    #[test]
    fn with_symmetry_detects_non_skew() {
        let full = StructureTensor::from_fn(2, 2, Symmetry::None, |t| {
            if t[0] == t[1] {
                Vector::basis(2, t[0])
            } else {
                Vector::zero(2)
            }
        })
        .unwrap();
        assert!(full.with_symmetry(Symmetry::Symmetric).is_ok());
        assert!(full.with_symmetry(Symmetry::Skew).is_err());
        assert!(a4().with_symmetry(Symmetry::None).unwrap().same_map(&a4()));
    }
}
