//! Small dense matrices over exact scalars.
//!
//! Everything here is sized for ranks <= 12 and genus <= 3: schoolbook
//! products, fraction-free integer determinants, row Hermite and Smith normal
//! forms with transformation matrices, exact inertia of rational symmetric
//! matrices, and field elimination over `Q`, `Q(i)` and `C` (f64).

use crate::rat::{int, Int, Rat};
use crate::{Error, Result};
use num::complex::Complex64;
use num::{Complex, Integer, Num, One, Signed, Zero};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat<T> {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<T>,
}

/// Gaussian rationals `Q(i)`, the exact scalars of the branch machinery.
pub type GRat = Complex<Rat>;

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::BadInput("ragged matrix rows".into()));
        }
        Ok(Mat { nrows, ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Mat { nrows, ncols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.ncols..(i + 1) * self.ncols].to_vec()
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.ncols, self.nrows, |i, j| self.at(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { nrows: self.nrows, ncols: self.ncols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Mat::from_fn(nr, nc, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.nrows, other.nrows);
        Mat::from_fn(self.nrows, self.ncols + other.ncols, |i, j| {
            if j < self.ncols { self.at(i, j).clone() } else { other.at(i, j - self.ncols).clone() }
        })
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Mat::from_fn(nrows, ncols, |_, _| T::zero())
    }

    /// Block-diagonal stack.
    pub fn block_diag(&self, other: &Self) -> Self {
        Mat::from_fn(self.nrows + other.nrows, self.ncols + other.ncols, |i, j| {
            if i < self.nrows && j < self.ncols {
                self.at(i, j).clone()
            } else if i >= self.nrows && j >= self.ncols {
                other.at(i - self.nrows, j - self.ncols).clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn is_zero_mat(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "matmul dimension mismatch");
        Mat::from_fn(self.nrows, rhs.ncols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.ncols {
                acc = acc + self.at(i, k).clone() * rhs.at(k, j).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.ncols {
                    acc = acc + self.at(i, k).clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }
}

impl<T> Mat<T>
where
    T: Clone + std::ops::Add<Output = T>,
{
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        Mat::from_fn(self.nrows, self.ncols, |i, j| self.at(i, j).clone() + rhs.at(i, j).clone())
    }
}

impl<T> Mat<T>
where
    T: Clone + std::ops::Sub<Output = T>,
{
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        Mat::from_fn(self.nrows, self.ncols, |i, j| self.at(i, j).clone() - rhs.at(i, j).clone())
    }
}

impl<T> Mat<T>
where
    T: Clone + std::ops::Neg<Output = T>,
{
    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }
}

impl<T: Clone + PartialEq> Mat<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }
}

// ---------------------------------------------------------------------------
// i64 integer matrices
// ---------------------------------------------------------------------------

pub type IMat = Mat<i64>;

impl IMat {
    pub fn to_big(&self) -> Mat<Int> {
        self.map(|&x| int(x))
    }

    pub fn from_big(m: &Mat<Int>) -> Result<IMat> {
        let mut data = Vec::with_capacity(m.nrows * m.ncols);
        for x in &m.data {
            data.push(crate::rat::to_i64(x)?);
        }
        Ok(Mat { nrows: m.nrows, ncols: m.ncols, data })
    }

    pub fn to_rat(&self) -> Mat<Rat> {
        self.map(|&x| Rat::from_integer(int(x)))
    }

    /// Product with overflow checking; symplectic words stay well inside i64,
    /// but silently wrapping would corrupt branch bookkeeping.
    pub fn mul_checked(&self, rhs: &IMat) -> Result<IMat> {
        assert_eq!(self.ncols, rhs.nrows);
        let mut out = IMat::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for j in 0..rhs.ncols {
                let mut acc: i64 = 0;
                for k in 0..self.ncols {
                    let p = self.at(i, k).checked_mul(*rhs.at(k, j)).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(p).ok_or(Error::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn height(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn det_i64(&self) -> Result<i64> {
        crate::rat::to_i64(&det_int(&self.to_big()))
    }
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_int(a: &Mat<Int>) -> Int {
    assert!(a.is_square());
    let n = a.nrows;
    if n == 0 {
        return Int::one();
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m.at(k, k).is_zero() {
            match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                Some(i) => {
                    for j in 0..n {
                        let t = m.at(k, j).clone();
                        m.set(k, j, m.at(i, j).clone());
                        m.set(i, j, t);
                    }
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.at(i, j).clone() * m.at(k, k).clone()
                    - m.at(i, k).clone() * m.at(k, j).clone())
                    / prev.clone();
                m.set(i, j, v);
            }
        }
        prev = m.at(k, k).clone();
    }
    let d = m.at(n - 1, n - 1).clone();
    if sign < 0 { -d } else { d }
}

/// Row Hermite normal form: returns `(h, u)` with `h = u * a`, `u` unimodular.
///
/// Pivots positive, entries above each pivot reduced into `[0, pivot)`; for
/// full-row-rank input this is the canonical representative of the left
/// `GL(n,Z)`-orbit.
pub fn hnf_row(a: &Mat<Int>) -> (Mat<Int>, Mat<Int>) {
    let (m, n) = (a.nrows, a.ncols);
    let mut h = a.clone();
    let mut u: Mat<Int> = Mat::identity(m);
    let mut pivot_row = 0usize;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        // Clear the column below pivot_row by gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..m {
                if !h.at(i, col).is_zero() {
                    best = Some(match best {
                        None => i,
                        Some(b) => {
                            if h.at(i, col).abs() < h.at(b, col).abs() { i } else { b }
                        }
                    });
                }
            }
            let Some(b) = best else { break };
            if b != pivot_row {
                swap_rows(&mut h, pivot_row, b);
                swap_rows(&mut u, pivot_row, b);
            }
            let piv = h.at(pivot_row, col).clone();
            let mut done = true;
            for i in pivot_row + 1..m {
                if !h.at(i, col).is_zero() {
                    let q = div_floor_int(h.at(i, col), &piv);
                    row_axpy(&mut h, i, pivot_row, &-q.clone());
                    row_axpy(&mut u, i, pivot_row, &-q);
                    if !h.at(i, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        let piv = h.at(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = div_floor_int(h.at(i, col), &piv);
            if !q.is_zero() {
                row_axpy(&mut h, i, pivot_row, &-q.clone());
                row_axpy(&mut u, i, pivot_row, &-q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

fn swap_rows(m: &mut Mat<Int>, a: usize, b: usize) {
    for j in 0..m.ncols {
        let t = m.at(a, j).clone();
        m.set(a, j, m.at(b, j).clone());
        m.set(b, j, t);
    }
}

fn negate_row(m: &mut Mat<Int>, r: usize) {
    for j in 0..m.ncols {
        m.set(r, j, -m.at(r, j).clone());
    }
}

/// row[i] += q * row[k]
fn row_axpy(m: &mut Mat<Int>, i: usize, k: usize, q: &Int) {
    for j in 0..m.ncols {
        let v = m.at(i, j).clone() + q.clone() * m.at(k, j).clone();
        m.set(i, j, v);
    }
}

fn div_floor_int(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

/// Smith normal form `u * a * v = diag(d)` with `d_i >= 0`, `d_i | d_{i+1}`.
pub struct Snf {
    pub d: Vec<Int>,
    pub u: Mat<Int>,
    pub v: Mat<Int>,
}

pub fn snf(a: &Mat<Int>) -> Snf {
    let (m, n) = (a.nrows, a.ncols);
    let mut s = a.clone();
    let mut u: Mat<Int> = Mat::identity(m);
    let mut v: Mat<Int> = Mat::identity(n);
    let r = m.min(n);
    for t in 0..r {
        loop {
            // Find the nonzero entry of minimal absolute value in the
            // remaining block and move it to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !s.at(i, j).is_zero() {
                        best = Some(match best {
                            None => (i, j),
                            Some((bi, bj)) => {
                                if s.at(i, j).abs() < s.at(bi, bj).abs() { (i, j) } else { (bi, bj) }
                            }
                        });
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                swap_rows(&mut s, t, bi);
                swap_rows(&mut u, t, bi);
            }
            if bj != t {
                swap_cols(&mut s, t, bj);
                swap_cols(&mut v, t, bj);
            }
            let piv = s.at(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if !s.at(i, t).is_zero() {
                    let q = div_floor_int(s.at(i, t), &piv);
                    row_axpy(&mut s, i, t, &-q.clone());
                    row_axpy(&mut u, i, t, &-q);
                    if !s.at(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !s.at(t, j).is_zero() {
                    let q = div_floor_int(s.at(t, j), &piv);
                    col_axpy(&mut s, j, t, &-q.clone());
                    col_axpy(&mut v, j, t, &-q);
                    if !s.at(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility sweep: pivot must divide the rest of the block.
            let mut fixed = false;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(s.at(i, j).clone() % piv.clone()).is_zero() {
                        // Fold row i into row t and restart on this pivot.
                        row_axpy(&mut s, t, i, &Int::one());
                        row_axpy(&mut u, t, i, &Int::one());
                        fixed = true;
                        break 'outer;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if s.at(t, t).is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    let d = (0..r).map(|t| s.at(t, t).clone()).collect();
    Snf { d, u, v }
}

fn swap_cols(m: &mut Mat<Int>, a: usize, b: usize) {
    for i in 0..m.nrows {
        let t = m.at(i, a).clone();
        m.set(i, a, m.at(i, b).clone());
        m.set(i, b, t);
    }
}

/// col[j] += q * col[k]
fn col_axpy(m: &mut Mat<Int>, j: usize, k: usize, q: &Int) {
    for i in 0..m.nrows {
        let v = m.at(i, j).clone() + q.clone() * m.at(i, k).clone();
        m.set(i, j, v);
    }
}

/// Inverse of a unimodular integer matrix (exact, stays integral).
pub fn inv_unimodular(a: &IMat) -> Result<IMat> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.nrows, a.ncols));
    }
    let det = a.det_i64()?;
    if det != 1 && det != -1 {
        return Err(Error::NotUnimodular(det));
    }
    let inv_rat = inv_field(&a.to_rat()).expect("unimodular matrix is invertible");
    let mut out = IMat::zeros(a.nrows, a.ncols);
    for i in 0..a.nrows {
        for j in 0..a.ncols {
            let e = inv_rat.at(i, j);
            debug_assert!(e.denom().is_one());
            out.set(i, j, crate::rat::to_i64(&e.to_integer())?);
        }
    }
    Ok(out)
}

/// Basis of the integer kernel of `a`, via Smith normal form.
pub fn integer_kernel(a: &Mat<Int>) -> Vec<Vec<Int>> {
    let Snf { d, v, .. } = snf(a);
    let n = a.ncols;
    let mut out = vec![];
    for j in 0..n {
        let dz = j >= d.len() || d[j].is_zero();
        if dz {
            out.push((0..n).map(|i| v.at(i, j).clone()).collect());
        }
    }
    out
}

/// Complete a primitive integer column vector to a matrix in `GL_n(Z)` having
/// it as the first column.
pub fn complete_primitive(v: &[i64]) -> Result<IMat> {
    let n = v.len();
    let col = Mat { nrows: n, ncols: 1, data: v.iter().map(|&x| int(x)).collect() };
    let Snf { d, u, .. } = snf(&col);
    if d.len() != 1 || !d[0].is_one() {
        return Err(Error::BadInput("vector is not primitive".into()));
    }
    // u * v = e_1, so u^{-1} has v as first column.
    let ui = inv_unimodular(&IMat::from_big(&u)?)?;
    Ok(ui)
}

// ---------------------------------------------------------------------------
// Field elimination (exact fields and f64 complex)
// ---------------------------------------------------------------------------

/// Determinant over an exact field (`Rat`, `GRat`): plain elimination with
/// exact zero tests.
pub fn det_field<T: Num + Clone>(a: &Mat<T>) -> T {
    assert!(a.is_square());
    let n = a.nrows;
    if n == 0 {
        return T::one();
    }
    let mut m = a.clone();
    let mut det = T::one();
    for k in 0..n {
        let piv = match (k..n).find(|&i| !m.at(i, k).is_zero()) {
            Some(p) => p,
            None => return T::zero(),
        };
        if piv != k {
            for j in 0..n {
                let t = m.at(k, j).clone();
                m.set(k, j, m.at(piv, j).clone());
                m.set(piv, j, t);
            }
            det = T::zero() - det;
        }
        let p = m.at(k, k).clone();
        det = det * p.clone();
        for i in k + 1..n {
            let f = m.at(i, k).clone() / p.clone();
            for j in k..n {
                let v = m.at(i, j).clone() - f.clone() * m.at(k, j).clone();
                m.set(i, j, v);
            }
        }
    }
    det
}

/// Inverse over an exact field; `None` when singular.
pub fn inv_field<T: Num + Clone>(a: &Mat<T>) -> Option<Mat<T>> {
    assert!(a.is_square());
    let n = a.nrows;
    let mut m = a.clone();
    let mut inv: Mat<T> = Mat::identity(n);
    for k in 0..n {
        let piv = (k..n).find(|&i| !m.at(i, k).is_zero())?;
        if piv != k {
            for j in 0..n {
                let t = m.at(k, j).clone();
                m.set(k, j, m.at(piv, j).clone());
                m.set(piv, j, t);
                let t = inv.at(k, j).clone();
                inv.set(k, j, inv.at(piv, j).clone());
                inv.set(piv, j, t);
            }
        }
        let p = m.at(k, k).clone();
        for j in 0..n {
            let v = m.at(k, j).clone() / p.clone();
            m.set(k, j, v);
            let v = inv.at(k, j).clone() / p.clone();
            inv.set(k, j, v);
        }
        for i in 0..n {
            if i != k && !m.at(i, k).is_zero() {
                let f = m.at(i, k).clone();
                for j in 0..n {
                    let v = m.at(i, j).clone() - f.clone() * m.at(k, j).clone();
                    m.set(i, j, v);
                    let v = inv.at(i, j).clone() - f.clone() * inv.at(k, j).clone();
                    inv.set(i, j, v);
                }
            }
        }
    }
    Some(inv)
}

/// Determinant of a complex f64 matrix with partial pivoting.
pub fn det_c64(a: &Mat<Complex64>) -> Complex64 {
    assert!(a.is_square());
    let n = a.nrows;
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut m = a.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| {
            m.at(i, k).norm_sqr().partial_cmp(&m.at(j, k).norm_sqr()).unwrap()
        }).unwrap();
        if m.at(piv, k).norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != k {
            for j in 0..n {
                let t = *m.at(k, j);
                m.set(k, j, *m.at(piv, j));
                m.set(piv, j, t);
            }
            det = -det;
        }
        let p = *m.at(k, k);
        det *= p;
        for i in k + 1..n {
            let f = *m.at(i, k) / p;
            for j in k..n {
                let v = *m.at(i, j) - f * *m.at(k, j);
                m.set(i, j, v);
            }
        }
    }
    det
}

/// Inverse of a complex f64 matrix (Gauss-Jordan, partial pivoting); `None`
/// when numerically singular.
pub fn inv_c64(a: &Mat<Complex64>) -> Option<Mat<Complex64>> {
    assert!(a.is_square());
    let n = a.nrows;
    let mut m = a.clone();
    let mut inv: Mat<Complex64> = Mat::identity(n);
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| {
            m.at(i, k).norm_sqr().partial_cmp(&m.at(j, k).norm_sqr()).unwrap()
        })?;
        if m.at(piv, k).norm_sqr() == 0.0 {
            return None;
        }
        if piv != k {
            for j in 0..n {
                let t = *m.at(k, j);
                m.set(k, j, *m.at(piv, j));
                m.set(piv, j, t);
                let t = *inv.at(k, j);
                inv.set(k, j, *inv.at(piv, j));
                inv.set(piv, j, t);
            }
        }
        let p = *m.at(k, k);
        for j in 0..n {
            let v = *m.at(k, j) / p;
            m.set(k, j, v);
            let v = *inv.at(k, j) / p;
            inv.set(k, j, v);
        }
        for i in 0..n {
            if i != k && m.at(i, k).norm_sqr() != 0.0 {
                let f = *m.at(i, k);
                for j in 0..n {
                    let v = *m.at(i, j) - f * *m.at(k, j);
                    m.set(i, j, v);
                    let v = *inv.at(i, j) - f * *inv.at(k, j);
                    inv.set(i, j, v);
                }
            }
        }
    }
    Some(inv)
}

// ---------------------------------------------------------------------------
// Symmetric rational matrices: inertia and (semi)definiteness
// ---------------------------------------------------------------------------

/// Exact inertia `(pos, neg, zero)` of a symmetric rational matrix, by
/// symmetric elimination; zero-diagonal pivots are repaired with a row/column
/// addition, which preserves congruence class.
pub fn inertia_sym(a: &Mat<Rat>) -> Result<(usize, usize, usize)> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = a.nrows;
    let mut m = a.clone();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    let mut live: Vec<usize> = (0..n).collect();
    while let Some(&p) = live.first() {
        // Find a usable pivot among live indices.
        let diag_idx = live.iter().copied().find(|&i| !m.at(i, i).is_zero());
        let pivot = match diag_idx {
            Some(i) => i,
            None => {
                // All live diagonal entries vanish; look for an off-diagonal
                // coupling (i, j) and add row/col j into i, making
                // m[i][i] = 2 m[i][j] != 0.
                let mut found = None;
                'search: for (ai, &i) in live.iter().enumerate() {
                    for &j in &live[ai + 1..] {
                        if !m.at(i, j).is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                match found {
                    None => {
                        zero += live.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = m.at(i, k).clone() + m.at(j, k).clone();
                            m.set(i, k, v);
                        }
                        for k in 0..n {
                            let v = m.at(k, i).clone() + m.at(k, j).clone();
                            m.set(k, i, v);
                        }
                        i
                    }
                }
            }
        };
        let d = m.at(pivot, pivot).clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        // Eliminate pivot row/column from the remaining live block.
        let others: Vec<usize> = live.iter().copied().filter(|&i| i != pivot).collect();
        for &i in &others {
            let f = m.at(i, pivot).clone() / d.clone();
            if f.is_zero() {
                continue;
            }
            for &j in &others {
                let v = m.at(i, j).clone() - f.clone() * m.at(pivot, j).clone();
                m.set(i, j, v);
            }
        }
        live = others;
        let _ = p;
    }
    Ok((pos, neg, zero))
}

/// Exact positive-semidefiniteness of a symmetric rational matrix.
///
/// Recursive pivoting: a PSD matrix with a zero diagonal entry must have the
/// whole row/column zero.
pub fn is_pos_semidef(a: &Mat<Rat>) -> Result<bool> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut m = a.clone();
    let n = m.nrows;
    let mut live: Vec<usize> = (0..n).collect();
    while let Some(pos) = live.iter().position(|&i| !m.at(i, i).is_zero() || live.iter().any(|&j| !m.at(i, j).is_zero())) {
        let i = live[pos];
        let d = m.at(i, i).clone();
        if d.is_negative() {
            return Ok(false);
        }
        if d.is_zero() {
            // Row has a nonzero off-diagonal entry against a zero diagonal.
            return Ok(false);
        }
        let others: Vec<usize> = live.iter().copied().filter(|&k| k != i).collect();
        for &r in &others {
            let f = m.at(r, i).clone() / d.clone();
            if f.is_zero() {
                continue;
            }
            for &c in &others {
                let v = m.at(r, c).clone() - f.clone() * m.at(i, c).clone();
                m.set(r, c, v);
            }
        }
        live = others;
    }
    Ok(true)
}

pub fn is_pos_def(a: &Mat<Rat>) -> Result<bool> {
    let (pos, _, _) = inertia_sym(a)?;
    Ok(pos == a.nrows)
}

pub fn rank_rat(a: &Mat<Rat>) -> usize {
    // Row echelon over Q.
    let mut m = a.clone();
    let (rows, cols) = (m.nrows, m.ncols);
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let piv = (rank..rows).find(|&i| !m.at(i, col).is_zero());
        let Some(piv) = piv else { continue };
        if piv != rank {
            for j in 0..cols {
                let t = m.at(rank, j).clone();
                m.set(rank, j, m.at(piv, j).clone());
                m.set(piv, j, t);
            }
        }
        let p = m.at(rank, col).clone();
        for i in rank + 1..rows {
            let f = m.at(i, col).clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for j in col..cols {
                let v = m.at(i, j).clone() - f.clone() * m.at(rank, j).clone();
                m.set(i, j, v);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_i, to_i64};
    use proptest::prelude::*;

    fn imat(rows: Vec<Vec<i64>>) -> IMat {
        Mat::from_rows(rows).unwrap()
    }

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(det_int(&imat(vec![vec![2, 1], vec![1, 2]]).to_big()), int(3));
        assert_eq!(det_int(&imat(vec![vec![0, 1], vec![1, 0]]).to_big()), int(-1));
        let e8ish = imat(vec![
            vec![2, -1, 0],
            vec![-1, 2, -1],
            vec![0, -1, 2],
        ]);
        assert_eq!(det_int(&e8ish.to_big()), int(4)); // A_3 gram
    }

    #[test]
    fn hnf_canonicalizes_left_orbits() {
        let a = imat(vec![vec![2, 4, 4], vec![-6, 6, 12]]);
        let (h, u) = hnf_row(&a.to_big());
        assert_eq!(Mat::from_big(&u.mul(&a.to_big())).unwrap(), IMat::from_big(&h).unwrap());
        assert_eq!(det_int(&u).abs(), int(1).abs());
    }

    #[test]
    fn snf_divisor_chain() {
        let a = imat(vec![vec![2, 0], vec![0, 3]]);
        let s = snf(&a.to_big());
        assert_eq!(s.d, vec![int(1), int(6)]);
        let a = imat(vec![vec![2, 0], vec![0, 2]]);
        let s = snf(&a.to_big());
        assert_eq!(s.d, vec![int(2), int(2)]);
    }

    #[test]
    fn inertia_examples() {
        let hyper = imat(vec![vec![0, 1], vec![1, 0]]).to_rat();
        assert_eq!(inertia_sym(&hyper).unwrap(), (1, 1, 0));
        let pos = imat(vec![vec![2, 1], vec![1, 2]]).to_rat();
        assert_eq!(inertia_sym(&pos).unwrap(), (2, 0, 0));
        let degen = imat(vec![vec![1, 1], vec![1, 1]]).to_rat();
        assert_eq!(inertia_sym(&degen).unwrap(), (1, 0, 1));
    }

    #[test]
    fn psd_cases() {
        assert!(is_pos_semidef(&imat(vec![vec![1, 1], vec![1, 1]]).to_rat()).unwrap());
        assert!(!is_pos_semidef(&imat(vec![vec![1, 2], vec![2, 1]]).to_rat()).unwrap());
        assert!(is_pos_semidef(&Mat::<Rat>::zeros(2, 2)).unwrap());
        assert!(!is_pos_semidef(&imat(vec![vec![0, 1], vec![1, 2]]).to_rat()).unwrap());
    }

    #[test]
    fn complete_primitive_vector() {
        let u = complete_primitive(&[2, 3]).unwrap();
        assert_eq!((*u.at(0, 0), *u.at(1, 0)), (2, 3));
        assert_eq!(u.det_i64().unwrap().abs(), 1);
    }

    // Jacobi eigenvalue iteration, used only to cross-check exact inertia.
    fn eig_sym_signs(a: &Mat<Rat>) -> (usize, usize, usize) {
        let n = a.nrows;
        let mut m = vec![vec![0f64; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = crate::rat::to_f64(a.at(i, j));
            }
        }
        for _ in 0..200 {
            let mut p = 0;
            let mut q = 1;
            let mut best = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    if m[i][j].abs() > best {
                        best = m[i][j].abs();
                        p = i;
                        q = j;
                    }
                }
            }
            if n < 2 || best < 1e-12 {
                break;
            }
            let theta = 0.5 * (2.0 * m[p][q]).atan2(m[p][p] - m[q][q]);
            let (c, s) = (theta.cos(), theta.sin());
            for k in 0..n {
                let (akp, akq) = (m[k][p], m[k][q]);
                m[k][p] = c * akp + s * akq;
                m[k][q] = -s * akp + c * akq;
            }
            for k in 0..n {
                let (apk, aqk) = (m[p][k], m[q][k]);
                m[p][k] = c * apk + s * aqk;
                m[q][k] = -s * apk + c * aqk;
            }
        }
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        for i in 0..n {
            if m[i][i] > 1e-9 {
                pos += 1;
            } else if m[i][i] < -1e-9 {
                neg += 1;
            } else {
                zero += 1;
            }
        }
        (pos, neg, zero)
    }

    proptest! {
        #[test]
        fn inertia_matches_numeric_eigensigns(seed in 0u64..500) {
            // Small random symmetric integer matrices with mild entries.
            let n = 1 + (seed % 4) as usize;
            let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut next = || {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((x >> 33) % 11) as i64 - 5
            };
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i..n {
                    let v = next();
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            let a = imat(rows).to_rat();
            let exact = inertia_sym(&a).unwrap();
            let numeric = eig_sym_signs(&a);
            prop_assert_eq!(exact, numeric);
        }

        #[test]
        fn hnf_is_invariant_of_left_orbit(seed in 0u64..200) {
            let mut x = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            let mut next = || {
                x = x.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                ((x >> 33) % 7) as i64 - 3
            };
            let a = imat(vec![vec![next(), next(), next()], vec![next(), next(), next()]]);
            // Random unimodular 2x2 from elementary moves.
            let mut u = imat(vec![vec![1, 0], vec![0, 1]]);
            for _ in 0..4 {
                let t = next();
                let e = match next().rem_euclid(3) {
                    0 => imat(vec![vec![1, t], vec![0, 1]]),
                    1 => imat(vec![vec![1, 0], vec![t, 1]]),
                    _ => imat(vec![vec![0, 1], vec![-1, 0]]),
                };
                u = u.mul_checked(&e).unwrap();
            }
            let (h1, _) = hnf_row(&a.to_big());
            let (h2, _) = hnf_row(&u.to_big().mul(&a.to_big()));
            prop_assert_eq!(h1, h2);
        }

        #[test]
        fn kernel_vectors_annihilate(seed in 0u64..200) {
            let mut x = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(0xBF58476D1CE4E5B9);
            let mut next = || {
                x = x.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(0xBF58476D1CE4E5B9);
                ((x >> 33) % 5) as i64 - 2
            };
            let a = imat(vec![vec![next(), next(), next()], vec![next(), next(), next()]]);
            for k in integer_kernel(&a.to_big()) {
                let prod = a.to_big().mul_vec(&k);
                prop_assert!(prod.iter().all(|v| v.is_zero()));
            }
        }
    }

    #[test]
    fn field_inverse_roundtrip() {
        let a = imat(vec![vec![2, 1], vec![1, 1]]).to_rat();
        let inv = inv_field(&a).unwrap();
        assert_eq!(a.mul(&inv), Mat::<Rat>::identity(2));
        let det = det_field(&a);
        assert_eq!(to_i64(&det.to_integer()).unwrap(), 1);
        assert_eq!(det_field(&imat(vec![vec![1, 1], vec![1, 1]]).to_rat()), rat_i(0));
    }
}
