//! Small fixed-size vectors and matrices over [`Scalar`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<const N: usize>(pub [Scalar; N]);

pub type Vec3 = Vector<3>;
pub type Vec4 = Vector<4>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<const N: usize>(pub [[Scalar; N]; N]);

pub type Mat3 = Matrix<3>;
pub type Mat4 = Matrix<4>;

impl<const N: usize> Vector<N> {
    pub fn zero() -> Self {
        Vector(std::array::from_fn(|_| Scalar::zero()))
    }

    /// Standard basis vector `e_{i+1}`.
    pub fn basis(i: usize) -> Self {
        Vector(std::array::from_fn(|j| if i == j { Scalar::one() } else { Scalar::zero() }))
    }

    pub fn from_ints(v: [i64; N]) -> Self {
        Vector(v.map(Scalar::int))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Euclidean dot product.
    pub fn dot(&self, other: &Self) -> Scalar {
        self.0.iter().zip(&other.0).map(|(x, y)| x * y).sum()
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Vector(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn to_f64(&self) -> [f64; N] {
        std::array::from_fn(|i| self.0[i].to_f64())
    }
}

impl Vec4 {
    pub fn new(x1: Scalar, x2: Scalar, x3: Scalar, x4: Scalar) -> Self {
        Vector([x1, x2, x3, x4])
    }

    /// Spatial part `(x1, x2, x3)`.
    pub fn spatial(&self) -> Vec3 {
        Vector([self.0[0].clone(), self.0[1].clone(), self.0[2].clone()])
    }

    /// Time component `x4`.
    pub fn time(&self) -> &Scalar {
        &self.0[3]
    }

    pub fn from_parts(spatial: &Vec3, time: Scalar) -> Self {
        let [a, b, c] = spatial.0.clone();
        Vector([a, b, c, time])
    }
}

impl Vec3 {
    pub fn new(x1: Scalar, x2: Scalar, x3: Scalar) -> Self {
        Vector([x1, x2, x3])
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &o.0;
        Vector([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }
}

impl<const N: usize> Index<usize> for Vector<N> {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for Vector<N> {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl<const N: usize> Add for &Vector<N> {
    type Output = Vector<N>;
    fn add(self, o: &Vector<N>) -> Vector<N> {
        Vector(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl<const N: usize> Sub for &Vector<N> {
    type Output = Vector<N>;
    fn sub(self, o: &Vector<N>) -> Vector<N> {
        Vector(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl<const N: usize> Add for Vector<N> {
    type Output = Vector<N>;
    fn add(self, o: Vector<N>) -> Vector<N> {
        &self + &o
    }
}

impl<const N: usize> Sub for Vector<N> {
    type Output = Vector<N>;
    fn sub(self, o: Vector<N>) -> Vector<N> {
        &self - &o
    }
}

impl<const N: usize> Neg for &Vector<N> {
    type Output = Vector<N>;
    fn neg(self) -> Vector<N> {
        Vector(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl<const N: usize> Neg for Vector<N> {
    type Output = Vector<N>;
    fn neg(self) -> Vector<N> {
        -&self
    }
}

impl<const N: usize> fmt::Display for Vector<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl<const N: usize> fmt::Debug for Vector<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<const N: usize> Matrix<N> {
    pub fn identity() -> Self {
        Matrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { Scalar::one() } else { Scalar::zero() })
        }))
    }

    pub fn zero() -> Self {
        Matrix(std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero())))
    }

    pub fn diagonal(d: [Scalar; N]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = x;
        }
        m
    }

    pub fn from_rows(rows: [[Scalar; N]; N]) -> Self {
        Matrix(rows)
    }

    pub fn from_ints(rows: [[i64; N]; N]) -> Self {
        Matrix(rows.map(|r| r.map(Scalar::int)))
    }

    pub fn from_columns(cols: [Vector<N>; N]) -> Self {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| cols[j].0[i].clone())))
    }

    pub fn transpose(&self) -> Self {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn column(&self, j: usize) -> Vector<N> {
        Vector(std::array::from_fn(|i| self.0[i][j].clone()))
    }

    pub fn row(&self, i: usize) -> Vector<N> {
        Vector(self.0[i].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] * s)))
    }

    pub fn apply(&self, v: &Vector<N>) -> Vector<N> {
        Vector(std::array::from_fn(|i| {
            (0..N).map(|j| &self.0[i][j] * &v.0[j]).sum()
        }))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Row-reduces a copy of the matrix; returns the echelon form and the
    /// determinant.
    fn eliminate(&self) -> (Self, Scalar) {
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..N {
            let Some(pivot) = (col..N).find(|&r| !m.0[r][col].is_zero()) else {
                return (m, Scalar::zero());
            };
            if pivot != col {
                m.0.swap(pivot, col);
                det = -det;
            }
            let p = m.0[col][col].clone();
            det = &det * &p;
            let inv = p.recip().expect("pivot is nonzero");
            for r in col + 1..N {
                if m.0[r][col].is_zero() {
                    continue;
                }
                let f = &m.0[r][col] * &inv;
                for c in col..N {
                    let t = &f * &m.0[col][c];
                    m.0[r][c] -= &t;
                }
            }
        }
        (m, det)
    }

    pub fn determinant(&self) -> Scalar {
        self.eliminate().1
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let mut a = self.clone();
        let mut inv = Self::identity();
        for col in 0..N {
            let pivot = (col..N)
                .find(|&r| !a.0[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.0.swap(pivot, col);
            inv.0.swap(pivot, col);
            let p = a.0[col][col].recip()?;
            for c in 0..N {
                a.0[col][c] *= &p;
                inv.0[col][c] *= &p;
            }
            for r in 0..N {
                if r == col || a.0[r][col].is_zero() {
                    continue;
                }
                let f = a.0[r][col].clone();
                for c in 0..N {
                    let t = &f * &a.0[col][c];
                    a.0[r][c] -= &t;
                    let t = &f * &inv.0[col][c];
                    inv.0[r][c] -= &t;
                }
            }
        }
        Ok(inv)
    }
}

impl Mat4 {
    /// Embeds a 3×3 spatial block as `(S 0; 0 1)`.
    pub fn from_spatial(s: &Mat3) -> Self {
        let mut m = Self::identity();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = s.0[i][j].clone();
            }
        }
        m
    }

    /// Upper-left 3×3 block.
    pub fn spatial_block(&self) -> Mat3 {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].clone())))
    }
}

impl<const N: usize> Mul for &Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, o: &Matrix<N>) -> Matrix<N> {
        Matrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..N).map(|k| &self.0[i][k] * &o.0[k][j]).sum())
        }))
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, o: Matrix<N>) -> Matrix<N> {
        &self * &o
    }
}

impl<const N: usize> Add for &Matrix<N> {
    type Output = Matrix<N>;
    fn add(self, o: &Matrix<N>) -> Matrix<N> {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] + &o.0[i][j])))
    }
}

impl<const N: usize> Sub for &Matrix<N> {
    type Output = Matrix<N>;
    fn sub(self, o: &Matrix<N>) -> Matrix<N> {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] - &o.0[i][j])))
    }
}

impl<const N: usize> fmt::Display for Matrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..N {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str("]")
    }
}

impl<const N: usize> fmt::Debug for Matrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let m = Mat3::from_ints([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        assert_eq!(m.determinant(), Scalar::int(5));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        let singular = Mat3::from_ints([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert!(singular.determinant().is_zero());
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn row_swaps_flip_determinant() {
        let m = Mat4::from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(m.determinant(), Scalar::int(-1));
    }

    #[test]
    fn cross_product() {
        let x = Vec3::basis(0);
        let y = Vec3::basis(1);
        assert_eq!(x.cross(&y), Vec3::basis(2));
    }
}
