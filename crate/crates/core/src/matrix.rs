//! Dense matrices over polynomial rings and over the base field.

use std::fmt;

use crate::field::Field;
use crate::poly::{Laurent, Poly, RatFn, RingElement};

/// Dense row-major matrix over a ring `T`. Empty shapes (`0 x n`) are allowed.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<Poly>;
pub type LaurentMatrix = Matrix<Laurent>;
pub type RationalMatrix = Matrix<RatFn>;

impl<T: RingElement> Matrix<T> {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![T::zero(field); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = T::one(field);
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds from rows; all rows must have equal length.
    pub fn from_rows(field: &Field, rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn column(field: &Field, entries: Vec<T>) -> Self {
        let n = entries.len();
        Matrix { field: field.clone(), rows: n, cols: 1, data: entries }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElement::is_zero)
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        Self::from_fn(&self.field, self.rows, other.cols, |i, j| {
            let mut acc = T::zero(&self.field);
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(&other[(l, j)]));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| self[(i, j)].add(&other[(i, j)]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| self[(i, j)].sub(&other[(i, j)]))
    }

    pub fn neg(&self) -> Self {
        self.map(RingElement::neg)
    }

    pub fn map<U: RingElement>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(&self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for j in 0..self.cols {
            let t = self[(src, j)].mul(c);
            if !t.is_zero() {
                self[(dst, j)] = self[(dst, j)].add(&t);
            }
        }
    }

    /// `col[dst] += c * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for i in 0..self.rows {
            let t = self[(i, src)].mul(c);
            if !t.is_zero() {
                self[(i, dst)] = self[(i, dst)].add(&t);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].mul(c);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            self[(i, j)] = self[(i, j)].mul(c);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        if self.rows == 0 {
            write!(f, "0x{}", self.cols)?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    /// Builds from small-integer coefficient lists (prime-subfield entries).
    pub fn from_int_rows(field: &Field, rows: &[&[&[i64]]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|c| Poly::from_ints(field, c)).collect()).collect();
        Self::from_rows(field, rows)
    }

    /// Largest entry degree, `-1` for the zero matrix.
    pub fn degree(&self) -> i64 {
        self.data.iter().map(Poly::deg).max().unwrap_or(-1)
    }

    /// Column degrees (`-1` for zero columns).
    pub fn col_degrees(&self) -> Vec<i64> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self[(i, j)].deg()).max().unwrap_or(-1)).collect()
    }

    pub fn row_degrees(&self) -> Vec<i64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].deg()).max().unwrap_or(-1)).collect()
    }

    /// Coefficient matrix of `z^k`.
    pub fn coeff_matrix(&self, k: usize) -> ConstMatrix {
        ConstMatrix::from_fn(&self.field, self.rows, self.cols, |i, j| self[(i, j)].coeff(k))
    }

    pub fn eval(&self, x: u32) -> ConstMatrix {
        ConstMatrix::from_fn(&self.field, self.rows, self.cols, |i, j| self[(i, j)].eval(x))
    }

    pub fn to_laurent(&self) -> LaurentMatrix {
        self.map(Laurent::from_poly)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(RatFn::from_poly)
    }

    /// Builds `sum_k coeffs[k] z^k`.
    pub fn from_coeff_matrices(field: &Field, rows: usize, cols: usize, coeffs: &[ConstMatrix]) -> Self {
        Self::from_fn(field, rows, cols, |i, j| Poly::new(field, coeffs.iter().map(|c| c[(i, j)]).collect()))
    }
}

impl LaurentMatrix {
    /// `Some` when every entry is a polynomial.
    pub fn to_poly(&self) -> Option<PolyMatrix> {
        let data: Option<Vec<Poly>> = self.data.iter().map(Laurent::to_poly).collect();
        data.map(|data| Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Substitution `z -> z^-1` entrywise.
    pub fn time_reversed(&self) -> LaurentMatrix {
        self.map(Laurent::time_reversed)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(RatFn::from_laurent)
    }

    /// Minimum exponent per column (0 for zero columns).
    pub fn col_low(&self) -> Vec<i64> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter(|&i| !self[(i, j)].is_zero()).map(|i| self[(i, j)].low()).min().unwrap_or(0))
            .collect()
    }

    pub fn row_low(&self) -> Vec<i64> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| !self[(i, j)].is_zero()).map(|j| self[(i, j)].low()).min().unwrap_or(0))
            .collect()
    }
}

/// Ring tag of a matrix read from a file or passed across module boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Poly,
    Laurent,
    Rational,
}

/// A matrix over one of the three rings.
#[derive(Clone, PartialEq, Debug)]
pub enum AnyMatrix {
    Poly(PolyMatrix),
    Laurent(LaurentMatrix),
    Rational(RationalMatrix),
}

impl AnyMatrix {
    pub fn ring(&self) -> RingKind {
        match self {
            AnyMatrix::Poly(_) => RingKind::Poly,
            AnyMatrix::Laurent(_) => RingKind::Laurent,
            AnyMatrix::Rational(_) => RingKind::Rational,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Poly(m) => m.shape(),
            AnyMatrix::Laurent(m) => m.shape(),
            AnyMatrix::Rational(m) => m.shape(),
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            AnyMatrix::Poly(m) => m.field(),
            AnyMatrix::Laurent(m) => m.field(),
            AnyMatrix::Rational(m) => m.field(),
        }
    }

    pub fn to_laurent(&self) -> Option<LaurentMatrix> {
        match self {
            AnyMatrix::Poly(m) => Some(m.to_laurent()),
            AnyMatrix::Laurent(m) => Some(m.clone()),
            AnyMatrix::Rational(_) => None,
        }
    }

    pub fn to_rational(&self) -> RationalMatrix {
        match self {
            AnyMatrix::Poly(m) => m.to_rational(),
            AnyMatrix::Laurent(m) => m.to_rational(),
            AnyMatrix::Rational(m) => m.clone(),
        }
    }
}

impl From<PolyMatrix> for AnyMatrix {
    fn from(m: PolyMatrix) -> Self {
        AnyMatrix::Poly(m)
    }
}

impl From<LaurentMatrix> for AnyMatrix {
    fn from(m: LaurentMatrix) -> Self {
        AnyMatrix::Laurent(m)
    }
}

impl From<RationalMatrix> for AnyMatrix {
    fn from(m: RationalMatrix) -> Self {
        AnyMatrix::Rational(m)
    }
}

/// Dense matrix over the base field.
#[derive(Clone, PartialEq, Eq)]
pub struct ConstMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl ConstMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        ConstMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ConstMatrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Field, rows: &[&[u32]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), c, |i, j| rows[i][j])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        Self::from_fn(f, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(0, |acc, l| f.add(acc, f.mul(self[(i, l)], other[(l, j)])))
        })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows).map(|i| (0..self.cols).fold(0, |acc, l| f.add(acc, f.mul(self[(i, l)], v[l])))).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        let f = &self.field;
        Self::from_fn(f, self.rows, self.cols, |i, j| f.add(self[(i, j)], other[(i, j)]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        let f = &self.field;
        Self::from_fn(f, self.rows, self.cols, |i, j| f.sub(self[(i, j)], other[(i, j)]))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows, self.cols, |i, j| f.neg(self[(i, j)]))
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows, self.cols, |i, j| f.mul(self[(i, j)], c))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(&self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)]
            } else {
                other[(i - self.rows, j)]
            }
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |i, j| self[(idx[i], j)])
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> Vec<u32> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ConstMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m[(i, c)] != 0) else { continue };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = f.inv(m[(r, c)]).unwrap();
            for j in 0..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i != r && m[(i, c)] != 0 {
                    let t = m[(i, c)];
                    for j in 0..m.cols {
                        m[(i, j)] = f.sub(m[(i, j)], f.mul(t, m[(r, j)]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, as columns.
    pub fn nullspace(&self) -> ConstMatrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        ConstMatrix::from_fn(f, self.cols, free.len(), |i, k| {
            let fc = free[k];
            if i == fc {
                1
            } else if let Some(pi) = pivots.iter().position(|&p| p == i) {
                f.neg(r[(pi, fc)])
            } else {
                0
            }
        })
    }

    /// Some solution of `self * x = b`.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&ConstMatrix::from_fn(&self.field, self.rows, 1, |i, _| b[i]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<ConstMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&ConstMatrix::identity(&self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(ConstMatrix::from_fn(&self.field, n, n, |i, j| r[(i, n + j)]))
    }

    pub fn to_poly(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.field, self.rows, self.cols, |i, j| Poly::constant(&self.field, self[(i, j)]))
    }
}

impl std::ops::Index<(usize, usize)> for ConstMatrix {
    type Output = u32;
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ConstMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ConstMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        if self.rows == 0 {
            write!(f, "0x{}", self.cols)?;
        }
        write!(f, "]")
    }
}
