//! Vectors, square matrices and covectors over ℚ, plus exact elimination.
//!
//! Matrix convention: column `j` of a [`LinearMap`] is the image of basis
//! vector `j`, so composition `A ∘ B` is the matrix product `A · B`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| crate::scalar::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Indices and values of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim());
        }
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_scalar(c))?;
        }
        f.write_str(")")
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Vector> for Vector {
    fn sub_assign(&mut self, rhs: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

/// A linear endomorphism of `ℚ^d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    dim: usize,
    // row-major: entry (i, j) is the coefficient of e_i in the image of e_j
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn zero(dim: usize) -> Self {
        LinearMap {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, &Scalar::one())
    }

    /// `c · Id`
    pub fn scalar(dim: usize, c: &Scalar) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c.clone();
        }
        m
    }

    pub fn diagonal(diag: Vec<Scalar>) -> Self {
        let dim = diag.len();
        let mut m = Self::zero(dim);
        for (i, c) in diag.into_iter().enumerate() {
            m.entries[i * dim + i] = c;
        }
        m
    }

    /// Builds the map sending `e_j` to `columns[j]`.
    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        let dim = columns.len();
        let mut m = Self::zero(dim);
        for (j, col) in columns.iter().enumerate() {
            if col.dim() != dim {
                return Err(Error::argument(format!(
                    "column {j} has length {} but the map is {dim}×{dim}",
                    col.dim()
                )));
            }
            for (i, c) in col.coords().iter().enumerate() {
                m.entries[i * dim + j] = c.clone();
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::argument(format!(
                "row {i} has length {} but the map is {dim}×{dim}",
                r.len()
            )));
        }
        Ok(LinearMap {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| crate::scalar::int(c)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    /// Image of basis vector `j`.
    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.dim).map(|i| self.entry(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.dim).map(|j| self.column(j)).collect()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(v.dim(), self.dim);
        let mut out = Vector::zero(self.dim);
        for (j, c) in v.support() {
            for i in 0..self.dim {
                let a = self.entry(i, j);
                if !a.is_zero() {
                    out.0[i] += a * c;
                }
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.dim, other.dim, "composing maps of different dimension");
        let cols: Vec<Vector> = other.columns().iter().map(|c| self.apply(c)).collect();
        Self::from_columns(&cols).expect("square by construction")
    }

    pub fn pow(&self, k: usize) -> LinearMap {
        (0..k).fold(Self::identity(self.dim), |acc, _| acc.compose(self))
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.dim, other.dim);
        LinearMap {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn determinant(&self) -> Scalar {
        let mut rows: Vec<Vec<Scalar>> = self.rows().map(<[Scalar]>::to_vec).collect();
        let n = self.dim;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] / &pivot;
                for c in col..n {
                    let delta = &factor * &rows[col][c];
                    rows[r][c] -= delta;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<LinearMap> {
        let n = self.dim;
        let mut aug: Vec<Vec<Scalar>> = self
            .rows()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.to_vec();
                row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(rows).expect("square by construction"))
    }

    /// Basis of `Ker(self)`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let rows: Vec<Vec<Scalar>> = self.rows().map(<[Scalar]>::to_vec).collect();
        nullspace(&rows, self.dim)
    }

    pub fn kernel_contains(&self, v: &Vector) -> bool {
        self.apply(v).is_zero()
    }

    /// `self ∘ other == other ∘ self`
    pub fn commutes_with(&self, other: &LinearMap) -> bool {
        self.dim == other.dim && self.compose(other) == other.compose(self)
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(format_scalar).collect();
            f.write_str(&cells.join(" "))?;
        }
        f.write_str("]")
    }
}

/// A covector `f(x) = Σ row_i · x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm(Vec<Scalar>);

impl LinearForm {
    pub fn zero(dim: usize) -> Self {
        LinearForm(vec![Scalar::zero(); dim])
    }

    /// The coordinate form `e_i*`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        LinearForm(Vector::basis(dim, i).into_coords())
    }

    pub fn from_row(row: Vec<Scalar>) -> Self {
        LinearForm(row)
    }

    pub fn from_ints(row: &[i64]) -> Self {
        LinearForm(Vector::from_ints(row).into_coords())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn row(&self) -> &[Scalar] {
        &self.0
    }

    pub fn apply(&self, v: &Vector) -> Scalar {
        debug_assert_eq!(v.dim(), self.dim());
        v.support().map(|(i, c)| &self.0[i] * c).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `f ∘ m`
    pub fn compose(&self, m: &LinearMap) -> LinearForm {
        LinearForm((0..m.dim()).map(|j| self.apply(&m.column(j))).collect())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}*", Vector(self.0.clone()))
    }
}

/// Reduces `rows` in place to reduced row echelon form over the first
/// `ncols` columns and returns the pivot columns.
pub(crate) fn rref(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x ∈ ℚ^ncols : row · x = 0 for every row}`.
///
/// One basis vector per free column, with a 1 in that column; the result is
/// canonical for a given row space.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vector> {
    let mut m: Vec<Vec<Scalar>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut m, ncols);
    let free = (0..ncols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = Vector::basis(ncols, f);
        for (row, &p) in m.iter().zip(&pivots) {
            v.0[p] = -row[f].clone();
        }
        v
    })
    .collect()
}

/// Rank of the span of `rows`.
pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn identity_kernel_is_trivial() {
        let id = LinearMap::identity(3);
        assert!(id.kernel_basis().is_empty());
        assert!(!id.kernel_contains(&Vector::from_ints(&[1, 0, 2])));
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let z = LinearMap::zero(4);
        assert_eq!(z.kernel_basis().len(), 4);
        assert!(LinearMap::zero(0).kernel_basis().is_empty());
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let rows = vec![
            vec![int(1), int(2), int(3), int(4)],
            vec![int(2), int(4), int(6), int(8)],
            vec![int(0), int(1), frac(1, 2), int(0)],
        ];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert!(Vector::from_coords(r.clone()).dot(v).is_zero());
            }
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m = LinearMap::from_int_rows(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(m.determinant(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), LinearMap::identity(2));
        let singular = LinearMap::from_int_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(singular.inverse().is_none());
        assert_eq!(singular.determinant(), int(0));
    }

    #[test]
    fn columns_are_images() {
        let m = LinearMap::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        assert_eq!(m.apply(&Vector::basis(2, 1)), Vector::basis(2, 0));
        assert!(m.apply(&Vector::basis(2, 0)).is_zero());
    }

    #[test]
    fn nilpotent_and_swap_do_not_commute() {
        let a = LinearMap::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let b = LinearMap::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(a.compose(&b), LinearMap::from_int_rows(&[&[1, 0], &[0, 0]]).unwrap());
        assert_eq!(b.compose(&a), LinearMap::from_int_rows(&[&[0, 0], &[0, 1]]).unwrap());
        assert!(!a.commutes_with(&b));
        assert!(a.commutes_with(&a));
    }
}
