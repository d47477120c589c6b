//! Dense vectors and matrices over a [`Field`], with exact Gaussian elimination.
//!
//! Matrices act on column vectors: for a square map `N`, `N(e_i)` is column `i`,
//! so `entries[j][i]` is the coefficient of `e_j` in `N(e_i)`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn zeros(field: Field, dim: usize) -> Self {
        Self {
            field,
            coords: vec![Scalar::zero(field); dim],
        }
    }

    /// The standard basis vector `e_{index+1}` (0-based `index`).
    pub fn basis(field: Field, dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(field, dim);
        v.coords[index] = Scalar::one(field);
        v
    }

    pub fn from_scalars(field: Field, coords: Vec<Scalar>) -> Result<Self> {
        for c in &coords {
            c.check_field(field)?;
        }
        Ok(Self { field, coords })
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Self {
        Self {
            field,
            coords: coords.iter().map(|&c| Scalar::from_i64(field, c)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector {
            field: self.field,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Scalar, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn sub_assign(&mut self, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        let mut acc = Scalar::zero(self.field);
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    /// Concatenation, used for direct sums `g ⊕ V`.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        Vector {
            field: self.field,
            coords,
        }
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.coords[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector {
            field: self.field,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Vector {
    /// Sparse basis form, e.g. `2e1 - 1/2e3`; `0` for the zero vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.support() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "({c})e{}", i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A `rows × cols` matrix. Square matrices double as linear maps `g → g`,
/// rectangular ones as maps `V → g` (`rows = dim g`, `cols = dim V`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Scalar>>,
}

/// Square matrices, read as endomorphisms under the column-action convention.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![vec![Scalar::zero(field); cols]; rows],
        }
    }

    pub fn identity(field: Field, dim: usize) -> Self {
        let mut m = Self::zeros(field, dim, dim);
        for i in 0..dim {
            m.entries[i][i] = Scalar::one(field);
        }
        m
    }

    pub fn scalar(field: Field, dim: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(field, dim, dim);
        for i in 0..dim {
            m.entries[i][i] = c.clone();
        }
        m
    }

    /// Builds from row-major entries.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch {
                    expected_rows: r,
                    expected_cols: c,
                    rows: r,
                    cols: row.len(),
                });
            }
            for s in row {
                s.check_field(field)?;
            }
        }
        Ok(Self {
            field,
            rows: r,
            cols: c,
            entries: rows,
        })
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        let entries: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Scalar::from_i64(field, x)).collect())
            .collect();
        Self::from_rows(field, entries).expect("ragged rows")
    }

    /// Builds the map whose column `i` is `images[i]`, i.e. `N(e_i) = images[i]`.
    pub fn from_images(field: Field, images: &[Vector]) -> Result<Self> {
        let cols = images.len();
        let rows = images.first().map_or(0, Vector::dim);
        let mut m = Self::zeros(field, rows, cols);
        for (i, img) in images.iter().enumerate() {
            Error::check_dim(rows, img.dim())?;
            if img.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: img.field().to_string(),
                });
            }
            for j in 0..rows {
                m.entries[j][i] = img[j].clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length; only meaningful for square matrices.
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.entries[row][col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    /// Image of the basis vector `e_{col+1}`.
    pub fn column(&self, col: usize) -> Vector {
        Vector {
            field: self.field,
            coords: self.entries.iter().map(|row| row[col].clone()).collect(),
        }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(self.cols, v.dim());
        let mut out = Vector::zeros(self.field, self.rows);
        for (i, c) in v.support() {
            for j in 0..self.rows {
                let m = &self.entries[j][i];
                if !m.is_zero() {
                    out.coords[j] += &(m * c);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j][i] = self.entries[i][j].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut().flatten() {
            *e = &*e * s;
        }
        out
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Commutator `AB − BA`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                expected_rows: self.rows,
                expected_cols: self.rows,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(determinant(self.field, &self.entries))
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant().map(|d| !d.is_zero()).unwrap_or(false)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                expected_rows: self.rows,
                expected_cols: self.rows,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(self.field, n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p;
                inv[col][j] = &inv[col][j] * &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = &factor * &a[col][j];
                    a[r][j] -= &t;
                    let t = &factor * &inv[col][j];
                    inv[r][j] -= &t;
                }
            }
        }
        Ok(Matrix {
            field: self.field,
            rows: n,
            cols: n,
            entries: inv,
        })
    }

    /// `self^exp`; negative exponents need an invertible matrix.
    pub fn pow(&self, exp: i64) -> Result<Matrix> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..exp.unsigned_abs() {
            acc = acc.matmul(&base);
        }
        Ok(acc)
    }

    /// Flattened entries, row-major; used to stack maps for rank tests.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.iter().flatten().cloned().collect()
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut entries = Vec::with_capacity(a.rows + c.rows);
        for (l, r) in a.entries.iter().zip(&b.entries) {
            entries.push(l.iter().chain(r).cloned().collect());
        }
        for (l, r) in c.entries.iter().zip(&d.entries) {
            entries.push(l.iter().chain(r).cloned().collect());
        }
        Matrix {
            field: a.field,
            rows: a.rows + c.rows,
            cols: a.cols + b.cols,
            entries,
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a += b;
        }
        out
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a -= b;
        }
        out
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant of a square array of scalars. Cofactor expansion with zero
/// skipping for small sizes (the inputs are usually sparse), elimination above.
pub fn determinant(field: Field, m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    match n {
        0 => Scalar::one(field),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ if n <= 6 => {
            let cols: Vec<usize> = (0..n).collect();
            cofactor(field, m, 0, &cols)
        }
        _ => eliminate_det(field, m),
    }
}

fn cofactor(field: Field, m: &[Vec<Scalar>], row: usize, cols: &[usize]) -> Scalar {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = Scalar::zero(field);
    for (k, &c) in cols.iter().enumerate() {
        let a = &m[row][c];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor(field, m, row + 1, &rest);
        if minor.is_zero() {
            continue;
        }
        let term = a * &minor;
        if k % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

fn eliminate_det(field: Field, m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Scalar::one(field);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero(field);
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det = &det * &a[col][col];
        let p = a[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &p;
            let (upper, lower) = a.split_at_mut(r);
            for (x, y) in lower[0][col..n].iter_mut().zip(&upper[col][col..n]) {
                *x -= &(&factor * y);
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: Field, rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let _ = field;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            let (pivot_row, target) = if i < r {
                let (lo, hi) = rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                if !p.is_zero() {
                    *t -= &(&factor * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

pub fn rank(field: Field, rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut work: Vec<Vec<Scalar>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    rref(field, &mut work, ncols).len()
}

/// Basis of `{x : A x = 0}` for the system whose rows are `rows` (each of
/// length `ncols`).
pub fn nullspace(field: Field, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut work: Vec<Vec<Scalar>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let pivots = rref(field, &mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(field); ncols];
        v[free] = Scalar::one(field);
        for (row, &p) in work.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn column_action() {
        // N(e1) = e2, N(e2) = 0
        let n = Matrix::from_i64_rows(Q, &[&[0, 0], &[1, 0]]);
        assert_eq!(n.apply(&Vector::basis(Q, 2, 0)), Vector::basis(Q, 2, 1));
        assert!(n.apply(&Vector::basis(Q, 2, 1)).is_zero());
        assert_eq!(n.column(0), Vector::basis(Q, 2, 1));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64_rows(Q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant().unwrap(), Scalar::from_i64(Q, 18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Matrix::identity(Q, 3));
        let singular = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
        assert!(!singular.is_invertible());
    }

    #[test]
    fn large_determinant_paths_agree() {
        // 7x7 goes through elimination; compare against a block-diagonal product.
        let mut m = Matrix::identity(Q, 7);
        m.set(0, 0, Scalar::from_i64(Q, 2));
        m.set(0, 1, Scalar::from_i64(Q, 1));
        m.set(1, 0, Scalar::from_i64(Q, 1));
        m.set(6, 6, Scalar::from_i64(Q, -3));
        m.set(5, 6, Scalar::from_i64(Q, 5));
        assert_eq!(m.determinant().unwrap(), Scalar::from_i64(Q, -3));
    }

    #[test]
    fn negative_powers() {
        let m = Matrix::from_i64_rows(Q, &[&[1, 1], &[0, 1]]);
        let minv2 = m.pow(-2).unwrap();
        assert_eq!(minv2, Matrix::from_i64_rows(Q, &[&[1, -2], &[0, 1]]));
        assert_eq!(m.pow(0).unwrap(), Matrix::identity(Q, 2));
    }

    #[test]
    fn nullspace_basis() {
        let rows = vec![
            vec![Scalar::from_i64(Q, 1), Scalar::from_i64(Q, 2), Scalar::from_i64(Q, 3)],
            vec![Scalar::from_i64(Q, 2), Scalar::from_i64(Q, 4), Scalar::from_i64(Q, 6)],
        ];
        let ns = nullspace(Q, &rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Scalar = rows[0]
                .iter()
                .zip(v)
                .fold(Scalar::zero(Q), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
        assert_eq!(rank(Q, &rows, 3), 1);
    }
}
