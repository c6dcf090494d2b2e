//! Matrices of scalars with exact fraction-free elimination.
//!
//! The solver returns complete solution sets (particular solution plus a
//! nullspace basis) so derivation spaces and soliton systems can be handled
//! without rounding. Elimination is Bareiss-style: every intermediate
//! division is exact, which keeps coefficient growth polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Verdict of the exact symmetric definiteness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Degenerate,
}

/// Complete solution set of a linear system `A x = b`.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// A particular solution when the system is consistent.
    pub particular: Option<Vec<Scalar>>,
    /// Basis of the kernel of `A`.
    pub nullspace: Vec<Vec<Scalar>>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, mode: Mode) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(mode); rows * cols],
        }
    }

    pub fn identity(n: usize, mode: Mode) -> Matrix {
        let mut m = Matrix::zeros(n, n, mode);
        for i in 0..n {
            m.set(i, i, Scalar::one(mode));
        }
        m
    }

    pub fn diag(entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        let mode = entries.first().map_or(Mode::Exact, Scalar::mode);
        let mut m = Matrix::zeros(n, n, mode);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    /// Mode shared by every entry; `Err(MixedMode)` when entries disagree.
    pub fn mode(&self) -> Result<Mode> {
        let mut mode = None;
        for e in &self.data {
            match mode {
                None => mode = Some(e.mode()),
                Some(m) if m == e.mode() => {}
                _ => return Err(Error::MixedMode),
            }
        }
        Ok(mode.unwrap_or(Mode::Exact))
    }

    fn mode_unchecked(&self) -> Mode {
        self.data.first().map_or(Mode::Exact, Scalar::mode)
    }

    pub fn to_float(&self) -> Matrix {
        self.map(Scalar::to_float)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - o.get(i, j))
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        self.map(|x| x * s)
    }

    pub fn matmul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mode = self.mode_unchecked();
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = Scalar::zero(mode);
            for k in 0..self.cols {
                acc += &(self.get(i, k) * o.get(k, j));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let mode = self.mode_unchecked();
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(mode);
                for j in 0..self.cols {
                    acc += &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let mut acc = Scalar::zero(self.mode_unchecked());
        for i in 0..self.rows {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Frobenius inner product `tr(AᵀB)`.
    pub fn frobenius_dot(&self, o: &Matrix) -> Scalar {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let mut acc = Scalar::zero(self.mode_unchecked());
        for (a, b) in self.data.iter().zip(&o.data) {
            acc += &(a * b);
        }
        acc
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        Matrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mode = self.mode_unchecked();
        let n = self.rows;
        if n == 0 {
            return Scalar::one(mode);
        }
        let mut m = self.clone();
        // integerize rows; the determinant is divided back out at the end
        let mut scale_back = Scalar::one(mode);
        if mode == Mode::Exact {
            for i in 0..n {
                let l = denominator_lcm((0..n).map(|j| m.get(i, j)));
                if !l.is_one() {
                    let f = Scalar::from_rational(num_rational::BigRational::from_integer(l));
                    for j in 0..n {
                        let v = m.get(i, j) * &f;
                        m.set(i, j, v);
                    }
                    scale_back = &scale_back * &f;
                }
            }
        }
        let mut sign = 1i32;
        let mut prev_inv = Scalar::one(mode);
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !is_negligible(m.get(r, k), mode));
            let Some(pr) = pivot_row else {
                return Scalar::zero(mode);
            };
            if pr != k {
                for j in 0..n {
                    let a = m.get(k, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(k, j, b);
                    m.set(pr, j, a);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                let row_factor_zero = m.get(i, k).is_zero();
                for j in k + 1..n {
                    let v = bareiss_update(
                        m.get(k, k),
                        m.get(i, j),
                        m.get(i, k),
                        m.get(k, j),
                        &prev_inv,
                        row_factor_zero,
                    );
                    m.set(i, j, v);
                }
                m.set(i, k, Scalar::zero(mode));
            }
            if k + 1 < n {
                prev_inv = m.get(k, k).inverse().expect("nonzero pivot");
            }
        }
        let d = m.get(n - 1, n - 1) / &scale_back;
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let mode = self.mode_unchecked();
        let n = self.rows;
        let identity = Matrix::identity(n, mode);
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let rhs: Vec<Scalar> = (0..n).map(|i| identity.get(i, j).clone()).collect();
            let out = solve_linear(self, &rhs)?;
            match out.particular {
                Some(x) if out.nullspace.is_empty() => cols.push(x),
                _ => return Err(Error::SingularMatrix),
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    pub fn rank(&self) -> usize {
        let zero_rhs = vec![Scalar::zero(self.mode_unchecked()); self.rows];
        solve_linear(self, &zero_rhs).map_or(0, |o| o.rank)
    }

    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let zero_rhs = vec![Scalar::zero(self.mode_unchecked()); self.rows];
        solve_linear(self, &zero_rhs).map_or_else(|_| Vec::new(), |o| o.nullspace)
    }

    /// Definiteness of a symmetric matrix.
    ///
    /// Exact mode decides by the signs of leading principal minors; float
    /// mode by Jacobi eigenvalues with tolerance 1e-9.
    pub fn definiteness(&self) -> Result<Definiteness> {
        let mode = self.mode()?;
        match mode {
            Mode::Exact => {
                if !self.is_symmetric() {
                    return Err(Error::NotSymmetric);
                }
                let n = self.rows;
                let idx: Vec<usize> = (0..n).collect();
                let minors: Vec<i32> = (1..=n)
                    .map(|k| self.submatrix(&idx[..k], &idx[..k]).det().sign())
                    .collect();
                if minors.iter().all(|&s| s > 0) {
                    return Ok(Definiteness::PositiveDefinite);
                }
                if minors
                    .iter()
                    .enumerate()
                    .all(|(i, &s)| s == if i % 2 == 0 { -1 } else { 1 })
                {
                    return Ok(Definiteness::NegativeDefinite);
                }
                if minors[n - 1] == 0 {
                    return Ok(Definiteness::Degenerate);
                }
                Ok(Definiteness::Indefinite)
            }
            Mode::Float => {
                let scale = self.max_abs_f64().max(1.0);
                let sym_tol = 1e-9 * scale;
                for i in 0..self.rows {
                    for j in 0..i {
                        if (self.get(i, j).to_f64() - self.get(j, i).to_f64()).abs() > sym_tol {
                            return Err(Error::NotSymmetric);
                        }
                    }
                }
                let eigs = self.jacobi_eigenvalues();
                let tol = 1e-9 * scale;
                if eigs.iter().all(|&e| e > tol) {
                    Ok(Definiteness::PositiveDefinite)
                } else if eigs.iter().all(|&e| e < -tol) {
                    Ok(Definiteness::NegativeDefinite)
                } else if eigs.iter().any(|&e| e.abs() <= tol) {
                    Ok(Definiteness::Degenerate)
                } else {
                    Ok(Definiteness::Indefinite)
                }
            }
        }
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
    /// ascending. Entries are read as f64 regardless of mode.
    pub fn jacobi_eigenvalues(&self) -> Vec<f64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).to_f64()).collect())
            .collect();
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    off += a[i][j] * a[i][j];
                }
            }
            if off.sqrt() < 1e-14 * (1.0 + a.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max))
            {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
        eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        eigs
    }
}

fn is_negligible(x: &Scalar, mode: Mode) -> bool {
    match mode {
        Mode::Exact => x.is_zero(),
        Mode::Float => x.to_f64().abs() < 1e-12,
    }
}

/// Least common multiple of the coordinate denominators across a row of
/// exact scalars; scaling a row by it makes every coordinate an integer,
/// which keeps fraction-free elimination in cheap integer arithmetic.
fn denominator_lcm<'a>(entries: impl Iterator<Item = &'a Scalar>) -> BigInt {
    let mut l = BigInt::one();
    for e in entries {
        if let Some(coords) = e.coords() {
            for c in coords {
                let d = c.denom();
                if !d.is_one() {
                    l = l.lcm(d);
                }
            }
        }
    }
    l
}

/// One fraction-free elimination update (pivot·x − a·b)·prev⁻¹ with the
/// common sparse cases short-circuited. The caller inverts the previous
/// pivot once per elimination step; the division is exact either way.
fn bareiss_update(
    pivot: &Scalar,
    x: &Scalar,
    a: &Scalar,
    b: &Scalar,
    prev_inv: &Scalar,
    a_zero: bool,
) -> Scalar {
    if a_zero || b.is_zero() {
        if x.is_zero() {
            return x.clone();
        }
        return &(pivot * x) * prev_inv;
    }
    if x.is_zero() {
        return &(-&(a * b)) * prev_inv;
    }
    &(&(pivot * x) - &(a * b)) * prev_inv
}

/// Solve `A x = b`, returning the complete solution set.
///
/// Exact mode performs fraction-free (Bareiss) elimination; float mode uses
/// the same elimination with partial pivoting and a relative zero threshold.
/// An inconsistent system is reported as an empty solution set, not an error.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<SolveOutcome> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let mut mode = a.mode()?;
    if a.data.is_empty() {
        mode = b.first().map_or(mode, Scalar::mode);
    }
    for x in b {
        if x.mode() != mode {
            return Err(Error::MixedMode);
        }
    }
    let m = a.rows;
    let n = a.cols;
    // Augmented matrix [A | b].
    let mut w = Matrix::from_fn(m, n + 1, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    // Row scaling leaves the solution set unchanged and turns the exact
    // elimination into integer arithmetic.
    if mode == Mode::Exact {
        for i in 0..m {
            let l = denominator_lcm((0..=n).map(|j| w.get(i, j)));
            if !l.is_one() {
                let f = Scalar::from_rational(num_rational::BigRational::from_integer(l));
                for j in 0..=n {
                    let v = w.get(i, j) * &f;
                    w.set(i, j, v);
                }
            }
        }
    }
    let scale = match mode {
        Mode::Float => w.max_abs_f64().max(1.0),
        Mode::Exact => 1.0,
    };
    let pivot_tol = 1e-11 * scale;
    let residual_tol = 1e-9 * scale;
    let usable = |x: &Scalar| match mode {
        Mode::Exact => !x.is_zero(),
        Mode::Float => x.to_f64().abs() > pivot_tol,
    };

    let mut prev_inv = Scalar::one(mode);
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0usize;
    for col in 0..n {
        if row >= m {
            break;
        }
        let pick = match mode {
            Mode::Exact => (row..m).find(|&r| usable(w.get(r, col))),
            Mode::Float => (row..m)
                .filter(|&r| usable(w.get(r, col)))
                .max_by(|&x, &y| {
                    w.get(x, col)
                        .to_f64()
                        .abs()
                        .partial_cmp(&w.get(y, col).to_f64().abs())
                        .unwrap()
                }),
        };
        let Some(pr) = pick else { continue };
        if pr != row {
            for j in 0..=n {
                let x = w.get(row, j).clone();
                let y = w.get(pr, j).clone();
                w.set(row, j, y);
                w.set(pr, j, x);
            }
        }
        match mode {
            // fraction-free update keeps everything exact
            Mode::Exact => {
                for i in row + 1..m {
                    let row_factor_zero = w.get(i, col).is_zero();
                    for j in col + 1..=n {
                        let v = bareiss_update(
                            w.get(row, col),
                            w.get(i, j),
                            w.get(i, col),
                            w.get(row, j),
                            &prev_inv,
                            row_factor_zero,
                        );
                        w.set(i, j, v);
                    }
                    w.set(i, col, Scalar::zero(mode));
                }
                if row + 1 < m {
                    prev_inv = w.get(row, col).inverse().expect("nonzero pivot");
                }
            }
            // classic scaled elimination keeps float entries bounded
            Mode::Float => {
                let pivot = w.get(row, col).to_f64();
                for i in row + 1..m {
                    let f = w.get(i, col).to_f64() / pivot;
                    if f != 0.0 {
                        for j in col + 1..=n {
                            let v = w.get(i, j).to_f64() - f * w.get(row, j).to_f64();
                            w.set(i, j, Scalar::float(v));
                        }
                    }
                    w.set(i, col, Scalar::zero(mode));
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let rank = pivots.len();

    // Consistency: a zero A-row with nonzero b entry kills the system.
    let consistent = match mode {
        Mode::Exact => (rank..m).all(|i| w.get(i, n).is_zero()),
        Mode::Float => (rank..m).all(|i| w.get(i, n).to_f64().abs() <= residual_tol),
    };

    let pivot_col_of_row: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let is_pivot_col = {
        let mut flags = vec![false; n];
        for &(_, c) in &pivots {
            flags[c] = true;
        }
        flags
    };
    let free_cols: Vec<usize> = (0..n).filter(|&c| !is_pivot_col[c]).collect();

    // Back substitution against the staircase for an assignment of the free
    // variables.
    let back_solve = |free_vals: &dyn Fn(usize) -> Scalar, rhs_scale: &Scalar| -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(mode); n];
        for &c in &free_cols {
            x[c] = free_vals(c);
        }
        for (r, &c) in pivot_col_of_row.iter().enumerate().rev() {
            let mut acc = w.get(r, n) * rhs_scale;
            for j in c + 1..n {
                if !x[j].is_zero() {
                    acc -= &(w.get(r, j) * &x[j]);
                }
            }
            x[c] = &acc / w.get(r, c);
        }
        x
    };

    let particular = if consistent {
        let one = Scalar::one(mode);
        Some(back_solve(&|_| Scalar::zero(mode), &one))
    } else {
        None
    };

    let mut nullspace = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let zero = Scalar::zero(mode);
        // Kernel vector with x_f = 1: solve the homogeneous staircase where
        // the free column is moved to the right-hand side.
        let mut x = vec![Scalar::zero(mode); n];
        x[f] = Scalar::one(mode);
        for (r, &c) in pivot_col_of_row.iter().enumerate().rev() {
            let mut acc = zero.clone();
            for j in c + 1..n {
                if !x[j].is_zero() {
                    acc -= &(w.get(r, j) * &x[j]);
                }
            }
            x[c] = &acc / w.get(r, c);
        }
        nullspace.push(x);
    }

    Ok(SolveOutcome {
        particular,
        nullspace,
        rank,
    })
}

/// Float least squares via normal equations; returns (solution, residual ℓ²).
pub fn least_squares_f64(a: &[Vec<f64>], b: &[f64]) -> (Vec<f64>, f64) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    assert_eq!(m, b.len());
    let mut ata = vec![vec![0.0f64; n]; n];
    let mut atb = vec![0.0f64; n];
    for r in 0..m {
        for i in 0..n {
            atb[i] += a[r][i] * b[r];
            for j in i..n {
                ata[i][j] += a[r][i] * a[r][j];
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            ata[i][j] = ata[j][i];
        }
    }
    // Gaussian elimination with partial pivoting; tiny pivots pin the
    // variable to zero (rank-deficient normal equations).
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = ata[i].clone();
            row.push(atb[i]);
            row
        })
        .collect();
    let scale = aug
        .iter()
        .flatten()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
        .max(1.0);
    let tol = 1e-13 * scale;
    let mut piv_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) =
            (r..n).max_by(|&x, &y| aug[x][c].abs().partial_cmp(&aug[y][c].abs()).unwrap())
        else {
            break;
        };
        if aug[pr][c].abs() <= tol {
            continue;
        }
        aug.swap(r, pr);
        for i in 0..n {
            if i != r {
                let f = aug[i][c] / aug[r][c];
                for j in c..=n {
                    aug[i][j] -= f * aug[r][j];
                }
            }
        }
        piv_of_col[c] = Some(r);
        r += 1;
    }
    let mut x = vec![0.0f64; n];
    for c in 0..n {
        if let Some(pr) = piv_of_col[c] {
            x[c] = aug[pr][n] / aug[pr][c];
        }
    }
    let mut res = 0.0f64;
    for (row, &bi) in a.iter().zip(b.iter()) {
        let mut v = -bi;
        for (j, &xj) in x.iter().enumerate() {
            v += row[j] * xj;
        }
        res += v * v;
    }
    (x, res.sqrt())
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn identity_solve() {
        let a = Matrix::identity(3, Mode::Exact);
        let b = vec![
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(3),
        ];
        let out = solve_linear(&a, &b).unwrap();
        assert_eq!(out.particular.unwrap(), b);
        assert!(out.nullspace.is_empty());
        assert_eq!(out.rank, 3);
    }

    #[test]
    fn zero_system_full_nullspace() {
        let a = Matrix::zeros(2, 2, Mode::Exact);
        let b = vec![Scalar::zero(Mode::Exact), Scalar::zero(Mode::Exact)];
        let out = solve_linear(&a, &b).unwrap();
        assert!(out.particular.is_some());
        assert_eq!(out.nullspace.len(), 2);
    }

    #[test]
    fn inconsistent_reports_empty() {
        // x + y = 1, x + y = 2
        let a = Matrix::from_rows(vec![
            vec![Scalar::from_int(1), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(1)],
        ]);
        let b = vec![Scalar::from_int(1), Scalar::from_int(2)];
        let out = solve_linear(&a, &b).unwrap();
        assert!(out.particular.is_none());
    }

    #[test]
    fn underdetermined_solution_set() {
        // x + 2y + 3z = 6 over the rationals
        let a = Matrix::from_rows(vec![vec![
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(3),
        ]]);
        let b = vec![Scalar::from_int(6)];
        let out = solve_linear(&a, &b).unwrap();
        let p = out.particular.unwrap();
        assert_eq!(out.nullspace.len(), 2);
        // verify A·p = b and A·n = 0 for kernel vectors
        let check = |x: &[Scalar]| -> Scalar {
            &(&x[0] + &(Scalar::from_int(2) * &x[1])) + &(Scalar::from_int(3) * &x[2])
        };
        assert_eq!(check(&p), Scalar::from_int(6));
        for nv in &out.nullspace {
            assert!(check(nv).is_zero());
        }
    }

    #[test]
    fn exact_det_and_inverse_with_radicals() {
        let a = Matrix::from_rows(vec![vec![s("sqrt2"), s("1")], vec![s("1"), s("sqrt2")]]);
        assert_eq!(a.det(), Scalar::from_int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Matrix::identity(2, Mode::Exact));
    }

    #[test]
    fn singular_inverse_fails() {
        let a = Matrix::from_rows(vec![
            vec![Scalar::from_int(1), Scalar::from_int(2)],
            vec![Scalar::from_int(2), Scalar::from_int(4)],
        ]);
        assert!(matches!(a.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn definiteness_verdicts() {
        let id = Matrix::identity(7, Mode::Exact);
        assert_eq!(id.definiteness().unwrap(), Definiteness::PositiveDefinite);
        assert_eq!(
            id.neg().definiteness().unwrap(),
            Definiteness::NegativeDefinite
        );
        let mut ind = Matrix::identity(7, Mode::Exact);
        ind.set(1, 1, Scalar::from_int(-1));
        assert_eq!(ind.definiteness().unwrap(), Definiteness::Indefinite);
        let mut deg = Matrix::identity(7, Mode::Exact);
        deg.set(6, 6, Scalar::zero(Mode::Exact));
        assert_eq!(deg.definiteness().unwrap(), Definiteness::Degenerate);
        // zero leading minor, nonsingular: indefinite
        let m = Matrix::from_rows(vec![
            vec![Scalar::from_int(0), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(0)],
        ]);
        assert_eq!(m.definiteness().unwrap(), Definiteness::Indefinite);
        let asym = Matrix::from_rows(vec![
            vec![Scalar::from_int(0), Scalar::from_int(1)],
            vec![Scalar::from_int(2), Scalar::from_int(0)],
        ]);
        assert!(matches!(asym.definiteness(), Err(Error::NotSymmetric)));
    }

    #[test]
    fn float_definiteness_uses_eigenvalues() {
        let m = Matrix::diag(&[Scalar::float(1.0), Scalar::float(2.0), Scalar::float(1e-12)]);
        assert_eq!(m.definiteness().unwrap(), Definiteness::Degenerate);
    }

    #[test]
    fn jacobi_eigenvalues_of_known_matrix() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::float(2.0), Scalar::float(1.0)],
            vec![Scalar::float(1.0), Scalar::float(2.0)],
        ]);
        let e = m.jacobi_eigenvalues();
        assert!((e[0] - 1.0).abs() < 1e-12);
        assert!((e[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn least_squares_recovers_exact_solution() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let b = vec![1.0, 2.0, 3.0];
        let (x, res) = least_squares_f64(&a, &b);
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 2.0).abs() < 1e-12);
        assert!(res < 1e-12);
    }
}
