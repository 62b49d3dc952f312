//! Dense exact linear algebra: row reduction, kernels, canonical subspaces,
//! linear maps and solving against a nondegenerate bilinear form.

use std::fmt;

use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("linear map is not invertible")]
    NotInvertible,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Shape(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Builds a matrix whose `j`th column is `columns[j]`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::Shape(format!("column {j} has length {}, expected {rows}", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        Ok(m)
    }

    pub fn from_diagonal(diag: &[S]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        let mut out = vec![S::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    o.add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            if !a.is_zero() {
                *a *= c;
            }
        }
        out
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::Shape(format!("cannot stack {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Applies the scalar map `f` entrywise.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduces `m` in place to reduced row-echelon form and returns the pivot
/// columns. Zero rows end up at the bottom.
fn rref_in_place<S: Scalar>(m: &mut Matrix<S>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).inverse().expect("pivot is nonzero");
        for j in c..cols {
            let x = m.get_mut(r, j);
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row: Vec<(usize, S)> =
            (c..cols).filter(|&j| !m.get(r, j).is_zero()).map(|j| (j, m.get(r, j).clone())).collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for (j, v) in &pivot_row {
                m.data[i * cols + j].sub_mul(&f, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Canonical RREF (zero rows dropped) and rank.
pub fn rref_rank<S: Scalar>(m: &Matrix<S>) -> (Matrix<S>, usize) {
    let mut work = m.clone();
    let pivots = rref_in_place(&mut work);
    let rank = pivots.len();
    work.data.truncate(rank * work.cols);
    work.rows = rank;
    (work, rank)
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    rref_rank(m).1
}

/// Canonical basis of `{x : M x = 0}`.
pub fn kernel<S: Scalar>(m: &Matrix<S>) -> Subspace<S> {
    let mut work = m.clone();
    let pivots = rref_in_place(&mut work);
    let n = m.cols;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut vecs = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![S::zero(); n];
        v[f] = S::one();
        for (r, &p) in pivots.iter().enumerate() {
            let x = work.get(r, f);
            if !x.is_zero() {
                v[p] = -x.clone();
            }
        }
        vecs.push(v);
    }
    Subspace::span(n, vecs).expect("kernel vectors have the ambient length")
}

/// Incremental row reduction: rows are pushed one at a time and kept fully
/// reduced, so large redundant systems never need to be materialized.
#[derive(Clone, Debug)]
pub struct RowReducer<S> {
    cols: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> RowReducer<S> {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn push(&mut self, mut row: Vec<S>) -> bool {
        assert_eq!(row.len(), self.cols, "row length does not match");
        for (p, r) in &self.rows {
            let f = row[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(r).skip(*p) {
                if !y.is_zero() {
                    x.sub_mul(&f, y);
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].inverse().expect("pivot is nonzero");
        for x in row.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, r) in self.rows.iter_mut() {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(&row).skip(p) {
                if !y.is_zero() {
                    x.sub_mul(&f, y);
                }
            }
        }
        self.rows.push((p, row));
        true
    }

    /// The reduced rows as a canonical row space.
    pub fn row_space(&self) -> Subspace<S> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|(p, _)| *p);
        let basis = Matrix::from_rows(self.cols, rows.into_iter().map(|(_, r)| r).collect()).expect("uniform rows");
        Subspace { ambient: self.cols, basis }
    }

    /// `{x : r · x = 0 for every pushed row r}`.
    pub fn kernel(&self) -> Subspace<S> {
        kernel(self.row_space().basis())
    }
}

/// Solves `A x = b`, returning one solution.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<Vec<S>, LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::Shape(format!("right-hand side has length {}, expected {}", b.len(), a.rows)));
    }
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let pivots = rref_in_place(&mut aug);
    if pivots.last() == Some(&a.cols) {
        return Err(LinalgError::Inconsistent);
    }
    let mut x = vec![S::zero(); a.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, a.cols).clone();
    }
    Ok(x)
}

/// Inverse of a square matrix.
pub fn invert<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::Shape("only square matrices are invertible".into()));
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, S::one());
    }
    let pivots = rref_in_place(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinalgError::NotInvertible);
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Ok(inv)
}

/// The unique `x` with `x^T G y = f(y)` for all `y`, where `f` is given by its
/// values on the standard basis.
pub fn dual_solve<S: Scalar>(g: &Matrix<S>, f: &[S]) -> Result<Vec<S>, LinalgError> {
    if g.rows != g.cols || f.len() != g.rows {
        return Err(LinalgError::Shape("Gram matrix must be square and match the covector".into()));
    }
    let inv = invert(&g.transpose()).map_err(|_| LinalgError::SingularGram)?;
    Ok(inv.apply(f))
}

/// A subspace of `F^n`, stored by its canonical RREF basis so that equality is
/// structural.
#[derive(Clone, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Matrix<S>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vecs: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(ambient, vecs)?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Matrix<S>) -> Self {
        let (basis, _) = rref_rank(m);
        Subspace { ambient: m.cols, basis }
    }

    pub fn column_space(m: &Matrix<S>) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<S>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // Reduce v against the RREF rows using their pivots.
        let mut w = v.to_vec();
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    w[j].sub_mul(&f, x);
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.ambient == self.ambient && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace<S>) -> Result<Subspace<S>, LinalgError> {
        self.check_ambient(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace<S>) -> Result<Subspace<S>, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // Solve sum_i a_i u_i = sum_j b_j v_j: kernel of [U^T | -V^T].
        let (k, l) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(self.ambient, k + l);
        for i in 0..k {
            for (r, x) in self.basis.row(i).iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, i, x.clone());
                }
            }
        }
        for j in 0..l {
            for (r, x) in other.basis.row(j).iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, k + j, -x.clone());
                }
            }
        }
        let ker = kernel(&m);
        let vecs = ker
            .basis_vectors()
            .into_iter()
            .map(|coef| {
                let mut v = vec![S::zero(); self.ambient];
                for (i, a) in coef[..k].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (vj, x) in v.iter_mut().zip(self.basis.row(i)) {
                        if !x.is_zero() {
                            vj.add_mul(a, x);
                        }
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient, vecs)
    }

    pub fn intersect_sum(&self, other: &Subspace<S>) -> Result<(Subspace<S>, Subspace<S>), LinalgError> {
        Ok((self.intersect(other)?, self.sum(other)?))
    }

    /// Image under a linear map.
    pub fn image(&self, f: &LinearMap<S>) -> Result<Subspace<S>, LinalgError> {
        if f.dim() != self.ambient {
            return Err(LinalgError::AmbientMismatch(f.dim(), self.ambient));
        }
        let vecs = self.basis_vectors().iter().map(|v| f.apply(v)).collect();
        Self::span(self.ambient, vecs)
    }

    fn check_ambient(&self, other: &Subspace<S>) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Subspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

/// Endomorphism of `F^n`, acting on coordinate columns.
#[derive(Clone, PartialEq)]
pub struct LinearMap<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> fmt::Debug for LinearMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap {:?}", self.matrix)
    }
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self, LinalgError> {
        if matrix.rows != matrix.cols {
            return Err(LinalgError::Shape("linear maps are square".into()));
        }
        Ok(LinearMap { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(n) }
    }

    /// The map sending `e_j` to `images[j]`.
    pub fn from_images(n: usize, images: &[Vec<S>]) -> Result<Self, LinalgError> {
        Self::new(Matrix::from_columns(n, images)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap<S>) -> Result<Self, LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::AmbientMismatch(self.dim(), other.dim()));
        }
        Ok(LinearMap { matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        Ok(LinearMap { matrix: invert(&self.matrix)? })
    }

    pub fn transpose(&self) -> Self {
        LinearMap { matrix: self.matrix.transpose() }
    }

    pub fn scale(&self, c: &S) -> Self {
        LinearMap { matrix: self.matrix.scale(c) }
    }

    pub fn kernel(&self) -> Subspace<S> {
        kernel(&self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(rref_rank(&id), (id.clone(), 3));
        let z = Matrix::<Rational>::zeros(2, 5);
        let (r, k) = rref_rank(&z);
        assert_eq!((r.rows(), k), (0, 0));
        assert_eq!(rref_rank(&mat(&[&[1, 2], &[2, 4]])), (mat(&[&[1, 2]]), 1));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::<Rational>::identity(4)).is_zero());
        assert!(kernel(&Matrix::<Rational>::zeros(5, 5)).is_full());
        let k = kernel(&mat(&[&[1, 1]]));
        assert_eq!(k.basis_vectors(), vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn intersect_sum_examples() {
        let u = Subspace::span(3, vec![vec![q(1), q(2), q(0)], vec![q(0), q(1), q(1)]]).unwrap();
        assert_eq!(u.intersect_sum(&u).unwrap(), (u.clone(), u.clone()));
        let a = Subspace::span(2, vec![vec![q(1), q(1)]]).unwrap();
        let b = Subspace::span(2, vec![vec![q(1), q(-1)]]).unwrap();
        let (i, s) = a.intersect_sum(&b).unwrap();
        assert!(i.is_zero() && s.is_full());
        assert_eq!(a.intersect(&Subspace::zero(3)), Err(LinalgError::AmbientMismatch(2, 3)));
    }

    #[test]
    fn dual_solve_examples() {
        let g = Matrix::<Rational>::identity(4);
        let mut f = vec![Rational::zero(); 4];
        f[2] = Rational::one();
        assert_eq!(dual_solve(&g, &f).unwrap(), f);
        let g = mat(&[&[2]]);
        assert_eq!(dual_solve(&g, &[q(1)]).unwrap(), vec![Rational::new(1, 2)]);
        assert_eq!(dual_solve(&mat(&[&[1, 1], &[1, 1]]), &[q(1), q(0)]), Err(LinalgError::SingularGram));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[q(1), q(3)]), Err(LinalgError::Inconsistent));
        let x = solve(&a, &[q(1), q(2)]).unwrap();
        assert_eq!(a.apply(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn inverse_and_compose() {
        let a = LinearMap::new(mat(&[&[1, 2], &[3, 4]])).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.compose(&inv).unwrap(), LinearMap::identity(2));
        assert!(LinearMap::new(mat(&[&[1, 2], &[2, 4]])).unwrap().inverse().is_err());
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, sparsity: u32) -> Matrix<Rational> {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen_ratio(1, sparsity) {
                    m.set(i, j, Rational::random(rng, 5));
                }
            }
        }
        m
    }

    #[test]
    fn grassmann_identity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..9);
            let (k, l) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
            // low-rank generators make nontrivial intersections likely
            let u = Subspace::row_space(&random_matrix(&mut rng, k, n, 2));
            let v = Subspace::row_space(&random_matrix(&mut rng, l, n, 2));
            let (i, s) = u.intersect_sum(&v).unwrap();
            assert_eq!(i.dim() + s.dim(), u.dim() + v.dim());
            assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
            assert!(s.contains_subspace(&u) && s.contains_subspace(&v));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rref_is_canonical_under_row_operations(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (k, n) = (rng.gen_range(1..6), rng.gen_range(1..8));
            let m = random_matrix(&mut rng, k, n, 2);
            let u = Subspace::row_space(&m);
            // random invertible row mixing plus a dependent row
            let mut rows = m.row_vecs();
            for _ in 0..10 {
                let (a, b) = (rng.gen_range(0..k), rng.gen_range(0..k));
                if a != b {
                    let c = Rational::random(&mut rng, 4);
                    let src = rows[b].clone();
                    for (x, y) in rows[a].iter_mut().zip(&src) {
                        x.add_mul(&c, y);
                    }
                }
            }
            let mut extra = vec![Rational::zero(); n];
            for r in &rows {
                for (x, y) in extra.iter_mut().zip(r) {
                    *x += y;
                }
            }
            rows.push(extra);
            rows.reverse();
            prop_assert_eq!(Subspace::span(n, rows).unwrap(), u);
        }

        #[test]
        fn kernel_dimension_and_membership(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..9));
            let m = random_matrix(&mut rng, r, c, 2);
            let k = kernel(&m);
            prop_assert_eq!(k.dim(), c - rank(&m));
            for v in k.basis_vectors() {
                prop_assert!(m.apply(&v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn dual_solve_repairs(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..7);
            let a = random_matrix(&mut rng, n, n, 1);
            let g = a.add(&a.transpose());
            if rank(&g) == n {
                let f: Vec<Rational> = (0..n).map(|_| Rational::random(&mut rng, 6)).collect();
                let x = dual_solve(&g, &f).unwrap();
                let gx = g.transpose().apply(&x);
                prop_assert_eq!(gx, f);
            }
        }
    }
}
