//! Exact arithmetic and dense linear algebra over GF(3).
//!
//! Elements are stored as their canonical residues `{0, 1, 2}`, with `2`
//! standing for `-1`. Matrices are dense and row-major. Gaussian elimination
//! always picks the leftmost column that still has a nonzero entry and, within
//! that column, the first row carrying one, so every routine here is
//! deterministic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// An element of the three-element field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Gf3(u8);

impl Gf3 {
    pub const ZERO: Gf3 = Gf3(0);
    pub const ONE: Gf3 = Gf3(1);
    /// `2 ≡ -1 (mod 3)`.
    pub const MINUS_ONE: Gf3 = Gf3(2);
    pub const ALL: [Gf3; 3] = [Gf3(0), Gf3(1), Gf3(2)];

    /// Reduces any integer into the field.
    #[inline]
    pub fn new(value: i64) -> Self {
        Gf3(value.rem_euclid(3) as u8)
    }

    /// Builds an element from an already-canonical residue.
    #[inline]
    pub fn from_residue(value: u8) -> Option<Self> {
        (value < 3).then_some(Gf3(value))
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse. Every nonzero element is its own inverse.
    #[inline]
    pub fn inverse(self) -> Option<Self> {
        (!self.is_zero()).then_some(self)
    }

    /// `(-1)^exponent`.
    #[inline]
    pub fn sign(exponent: u32) -> Self {
        if exponent % 2 == 0 {
            Gf3::ONE
        } else {
            Gf3::MINUS_ONE
        }
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    #[inline]
    fn add(self, rhs: Gf3) -> Gf3 {
        let s = self.0 + rhs.0;
        Gf3(if s >= 3 { s - 3 } else { s })
    }
}

impl Sub for Gf3 {
    type Output = Gf3;
    #[inline]
    fn sub(self, rhs: Gf3) -> Gf3 {
        let s = self.0 + 3 - rhs.0;
        Gf3(if s >= 3 { s - 3 } else { s })
    }
}

impl Neg for Gf3 {
    type Output = Gf3;
    #[inline]
    fn neg(self) -> Gf3 {
        Gf3(if self.0 == 0 { 0 } else { 3 - self.0 })
    }
}

impl Mul for Gf3 {
    type Output = Gf3;
    #[inline]
    fn mul(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 * rhs.0) % 3)
    }
}

impl AddAssign for Gf3 {
    #[inline]
    fn add_assign(&mut self, rhs: Gf3) {
        *self = *self + rhs;
    }
}

impl SubAssign for Gf3 {
    #[inline]
    fn sub_assign(&mut self, rhs: Gf3) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for Gf3 {
    fn sum<I: Iterator<Item = Gf3>>(iter: I) -> Gf3 {
        iter.fold(Gf3::ZERO, |a, b| a + b)
    }
}

/// `dst += coeff * src`, elementwise.
#[inline]
pub fn axpy(dst: &mut [Gf3], coeff: Gf3, src: &[Gf3]) {
    debug_assert_eq!(dst.len(), src.len());
    match coeff.0 {
        0 => {}
        1 => add_assign(dst, src),
        _ => sub_assign(dst, src),
    }
}

/// `dst += src`, elementwise.
#[inline]
pub fn add_assign(dst: &mut [Gf3], src: &[Gf3]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += *s;
    }
}

/// `dst -= src`, elementwise.
#[inline]
pub fn sub_assign(dst: &mut [Gf3], src: &[Gf3]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= *s;
    }
}

/// Dense row-major matrix over GF(3).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf3Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf3>,
}

impl fmt::Debug for Gf3Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf3Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for v in self.row(r) {
                write!(f, "{v} ")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Gf3Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl Gf3Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf3Matrix {
            rows,
            cols,
            data: vec![Gf3::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gf3::ONE);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Gf3>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Gf3Matrix { rows, cols, data })
    }

    /// Builds a matrix from signed integer rows; `-1` maps to `2`.
    ///
    /// # Panics
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| Gf3::new(v)));
        }
        Gf3Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// A single column vector.
    pub fn column_vector(values: &[Gf3]) -> Self {
        Gf3Matrix {
            rows: values.len(),
            cols: 1,
            data: values.to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Gf3 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Gf3) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Gf3] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [Gf3] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Gf3> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn as_slice(&self) -> &[Gf3] {
        &self.data
    }

    /// Entries as plain residues, row by row.
    pub fn to_residue_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|v| v.value()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn two_rows_mut(&mut self, a: usize, b: usize) -> (&mut [Gf3], &mut [Gf3]) {
        debug_assert_ne!(a, b);
        let c = self.cols;
        if a < b {
            let (lo, hi) = self.data.split_at_mut(b * c);
            (&mut lo[a * c..(a + 1) * c], &mut hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(a * c);
            (&mut hi[..c], &mut lo[b * c..(b + 1) * c])
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let (ra, rb) = self.two_rows_mut(a, b);
            ra.swap_with_slice(rb);
        }
    }

    /// `row[dst] += coeff * row[src]`.
    fn row_axpy(&mut self, dst: usize, coeff: Gf3, src: usize) {
        let (d, s) = self.two_rows_mut(dst, src);
        axpy(d, coeff, s);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Gf3Matrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for (i, &a) in self.row(r).iter().enumerate() {
                axpy(out_row, a, rhs.row(i));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Gf3]) -> Result<Vec<Gf3>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    fn zip_with(
        &self,
        rhs: &Gf3Matrix,
        op: &'static str,
        f: impl Fn(Gf3, Gf3) -> Gf3,
    ) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Gf3Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &Gf3Matrix) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Gf3Matrix) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.scale(Gf3::MINUS_ONE)
    }

    pub fn scale(&self, s: Gf3) -> Self {
        Gf3Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    /// Stacks `top` above `bottom`.
    pub fn vstack(top: &Gf3Matrix, bottom: &Gf3Matrix) -> Result<Self> {
        if top.cols != bottom.cols {
            return Err(Error::ShapeMismatch {
                op: "vstack",
                left: top.shape(),
                right: bottom.shape(),
            });
        }
        let mut data = Vec::with_capacity(top.data.len() + bottom.data.len());
        data.extend_from_slice(&top.data);
        data.extend_from_slice(&bottom.data);
        Ok(Gf3Matrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        })
    }

    /// Assembles `[[tl, tr], [bl, br]]`; `None` blocks are zero.
    pub fn from_blocks(
        top: (Option<&Gf3Matrix>, Option<&Gf3Matrix>),
        bottom: (Option<&Gf3Matrix>, Option<&Gf3Matrix>),
        top_shape: (usize, usize),
        bottom_rows: usize,
        right_cols: usize,
    ) -> Result<Self> {
        let (top_rows, left_cols) = top_shape;
        let expect = [
            (top.0, (top_rows, left_cols)),
            (top.1, (top_rows, right_cols)),
            (bottom.0, (bottom_rows, left_cols)),
            (bottom.1, (bottom_rows, right_cols)),
        ];
        for (block, shape) in expect {
            if let Some(b) = block {
                if b.shape() != shape {
                    return Err(Error::ShapeMismatch {
                        op: "from_blocks",
                        left: b.shape(),
                        right: shape,
                    });
                }
            }
        }
        let mut out = Self::zeros(top_rows + bottom_rows, left_cols + right_cols);
        let mut place = |b: Option<&Gf3Matrix>, r0: usize, c0: usize| {
            if let Some(b) = b {
                for r in 0..b.rows {
                    out.row_mut(r0 + r)[c0..c0 + b.cols].copy_from_slice(b.row(r));
                }
            }
        };
        place(top.0, 0, 0);
        place(top.1, 0, left_cols);
        place(bottom.0, top_rows, 0);
        place(bottom.1, top_rows, left_cols);
        Ok(out)
    }

    /// `diag(a, b)`.
    pub fn block_diag(a: &Gf3Matrix, b: &Gf3Matrix) -> Self {
        Self::from_blocks((Some(a), None), (None, Some(b)), a.shape(), b.rows, b.cols)
            .expect("block_diag shapes are consistent by construction")
    }

    /// `self · P` for a signed permutation `P`, in `O(rows · n)`.
    pub fn mul_signed_perm(&self, p: &SignedPermutation) -> Result<Self> {
        if self.cols != p.size() {
            return Err(Error::ShapeMismatch {
                op: "mul_signed_perm",
                left: self.shape(),
                right: (p.size(), p.size()),
            });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            let src = self.row(r);
            let dst = &mut out.data[r * self.cols..(r + 1) * self.cols];
            // P has entry sign[i] at (i, target[i]).
            for (i, (&t, &s)) in p.target.iter().zip(&p.sign).enumerate() {
                dst[t as usize] = src[i] * s;
            }
        }
        Ok(out)
    }

    /// Indices of all-zero columns.
    pub fn zero_columns(&self) -> Vec<usize> {
        let mut nonzero = vec![false; self.cols];
        for r in 0..self.rows {
            for (c, v) in self.row(r).iter().enumerate() {
                nonzero[c] |= !v.is_zero();
            }
        }
        nonzero
            .iter()
            .enumerate()
            .filter_map(|(c, &nz)| (!nz).then_some(c))
            .collect()
    }

    /// Indices of columns with at least one nonzero entry.
    pub fn nonzero_columns(&self) -> Vec<usize> {
        let zero = self.zero_columns();
        (0..self.cols)
            .filter(|c| zero.binary_search(c).is_err())
            .collect()
    }

    pub fn nonzero_column_count(&self) -> usize {
        self.cols - self.zero_columns().len()
    }

    /// Row rank by forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize(false).len()
    }

    /// Row-reduces in place, returning the pivot columns. With `reduced` set,
    /// pivots are normalized to one and cleared above as well (RREF).
    fn echelonize(&mut self, reduced: bool) -> Vec<usize> {
        self.echelonize_cols(self.cols, reduced)
    }

    /// Elimination that only searches for pivots among the first `pivot_cols`
    /// columns; row operations still act on whole rows.
    fn echelonize_cols(&mut self, pivot_cols: usize, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            if reduced && self.get(r, c) != Gf3::ONE {
                // Pivot is 2; multiply the row by 2 (its own inverse).
                for v in self.row_mut(r) {
                    *v = -*v;
                }
            }
            let pivot_inv = self.get(r, c).inverse().expect("pivot is nonzero");
            let lo = if reduced { 0 } else { r + 1 };
            for i in lo..self.rows {
                if i == r {
                    continue;
                }
                let v = self.get(i, c);
                if !v.is_zero() {
                    self.row_axpy(i, -(v * pivot_inv), r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Gf3Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.echelonize(true);
        (m, pivots)
    }
}

/// Finds `T` with `T · x_rows = target`.
///
/// Only the pivot rows of `x_rows` (after deterministic elimination) receive
/// nonzero weight in `T`, so the answer is reproducible.
pub fn solve_left(x_rows: &Gf3Matrix, target: &Gf3Matrix) -> Result<Gf3Matrix> {
    if x_rows.cols != target.cols {
        return Err(Error::ShapeMismatch {
            op: "solve_left",
            left: x_rows.shape(),
            right: target.shape(),
        });
    }
    let m = x_rows.rows;
    let n = x_rows.cols;
    // Augment [X | I] and reduce over X's columns; the right block records
    // which combination of the original rows produced each reduced row.
    let mut aug = Gf3Matrix::zeros(m, n + m);
    for r in 0..m {
        aug.row_mut(r)[..n].copy_from_slice(x_rows.row(r));
        aug.set(r, n + r, Gf3::ONE);
    }
    let pivots = aug.echelonize_cols(n, true);

    let mut t = Gf3Matrix::zeros(target.rows, m);
    for tr in 0..target.rows {
        let mut residual = target.row(tr).to_vec();
        let t_row = t.row_mut(tr);
        for (i, &pc) in pivots.iter().enumerate() {
            let coeff = residual[pc];
            if coeff.is_zero() {
                continue;
            }
            let reduced = aug.row(i);
            axpy(&mut residual, -coeff, &reduced[..n]);
            axpy(t_row, coeff, &reduced[n..]);
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return Err(Error::NoSolution);
        }
    }
    Ok(t)
}

/// Solves `a · x = b` for square nonsingular `a`.
pub fn solve_square(a: &Gf3Matrix, b: &Gf3Matrix) -> Result<Gf3Matrix> {
    if a.rows != b.rows {
        return Err(Error::ShapeMismatch {
            op: "solve_square",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let lu = Gf3Lu::factor(a)?;
    let mut x = Gf3Matrix::zeros(a.cols, b.cols);
    for c in 0..b.cols {
        let col = lu.solve(&b.column(c))?;
        for (r, v) in col.into_iter().enumerate() {
            x.set(r, c, v);
        }
    }
    Ok(x)
}

/// `P·A = L·U` over GF(3), with `L` unit lower triangular.
///
/// Factor once, then [`Gf3Lu::solve`] each right-hand side in `O(n²)`.
#[derive(Clone, Debug)]
pub struct Gf3Lu {
    /// `L` strictly below the diagonal, `U` on and above.
    lu: Gf3Matrix,
    /// Row `i` of `P·A` is row `perm[i]` of `A`.
    perm: Vec<usize>,
}

impl Gf3Lu {
    pub fn factor(a: &Gf3Matrix) -> Result<Self> {
        if a.rows != a.cols {
            return Err(Error::ShapeMismatch {
                op: "lu",
                left: a.shape(),
                right: (a.cols, a.rows),
            });
        }
        let n = a.rows;
        let mut m = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&i| !m.get(i, c).is_zero())
                .ok_or(Error::Singular)?;
            m.swap_rows(c, p);
            perm.swap(c, p);
            let pivot_inv = m.get(c, c).inverse().expect("pivot is nonzero");
            for i in c + 1..n {
                let v = m.get(i, c);
                if v.is_zero() {
                    continue;
                }
                let factor = v * pivot_inv;
                let (row_i, row_c) = m.two_rows_mut(i, c);
                axpy(&mut row_i[c + 1..], -factor, &row_c[c + 1..]);
                row_i[c] = factor;
            }
        }
        Ok(Gf3Lu { lu: m, perm })
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[Gf3]) -> Result<Vec<Gf3>> {
        let n = self.size();
        if b.len() != n {
            return Err(Error::ShapeMismatch {
                op: "lu_solve",
                left: (n, n),
                right: (b.len(), 1),
            });
        }
        let mut y: Vec<Gf3> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: Gf3 = row[..i].iter().zip(&y[..i]).map(|(&l, &v)| l * v).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: Gf3 = row[i + 1..]
                .iter()
                .zip(&y[i + 1..])
                .map(|(&u, &v)| u * v)
                .sum();
            let diag_inv = row[i].inverse().expect("U diagonal is nonzero");
            y[i] = (y[i] - s) * diag_inv;
        }
        Ok(y)
    }
}

/// A matrix with exactly one `±1` per row and per column.
///
/// Row `i` holds `sign[i]` in column `target[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    target: Vec<u32>,
    sign: Vec<Gf3>,
}

impl SignedPermutation {
    pub fn new(target: Vec<u32>, sign: Vec<Gf3>) -> Result<Self> {
        let n = target.len();
        if sign.len() != n {
            return Err(Error::ShapeMismatch {
                op: "signed_permutation",
                left: (n, 1),
                right: (sign.len(), 1),
            });
        }
        let mut seen = vec![false; n];
        for &t in &target {
            let t = t as usize;
            if t >= n || seen[t] {
                return Err(Error::InvalidParams(format!(
                    "target {t} is not part of a permutation of 0..{n}"
                )));
            }
            seen[t] = true;
        }
        if sign.iter().any(|s| s.is_zero()) {
            return Err(Error::InvalidParams(
                "signed permutation with a zero sign".into(),
            ));
        }
        Ok(SignedPermutation { target, sign })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            target: (0..n as u32).collect(),
            sign: vec![Gf3::ONE; n],
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.target.len()
    }

    pub fn targets(&self) -> &[u32] {
        &self.target
    }

    pub fn signs(&self) -> &[Gf3] {
        &self.sign
    }

    /// Column index and sign of the single nonzero entry in `row`.
    #[inline]
    pub fn entry(&self, row: usize) -> (usize, Gf3) {
        (self.target[row] as usize, self.sign[row])
    }

    pub fn to_dense(&self) -> Gf3Matrix {
        let n = self.size();
        let mut m = Gf3Matrix::zeros(n, n);
        for (i, (&t, &s)) in self.target.iter().zip(&self.sign).enumerate() {
            m.set(i, t as usize, s);
        }
        m
    }

    /// Recovers the compact form, or `None` if `m` is not a signed permutation.
    pub fn from_dense(m: &Gf3Matrix) -> Option<Self> {
        if m.rows() != m.cols() {
            return None;
        }
        let mut target = Vec::with_capacity(m.rows());
        let mut sign = Vec::with_capacity(m.rows());
        for r in 0..m.rows() {
            let mut nz = m.row(r).iter().enumerate().filter(|(_, v)| !v.is_zero());
            let (c, &v) = nz.next()?;
            if nz.next().is_some() {
                return None;
            }
            target.push(c as u32);
            sign.push(v);
        }
        SignedPermutation::new(target, sign).ok()
    }

    /// `y = P · x`.
    pub fn apply(&self, x: &[Gf3]) -> Vec<Gf3> {
        let mut y = vec![Gf3::ZERO; self.size()];
        self.apply_add_into(x, &mut y);
        y
    }

    /// `y += P · x`.
    #[inline]
    pub fn apply_add_into(&self, x: &[Gf3], y: &mut [Gf3]) {
        debug_assert_eq!(x.len(), self.size());
        debug_assert_eq!(y.len(), self.size());
        for ((yi, &t), &s) in y.iter_mut().zip(&self.target).zip(&self.sign) {
            *yi += s * x[t as usize];
        }
    }

    /// For a signed permutation the inverse is the transpose.
    pub fn inverse(&self) -> Self {
        let n = self.size();
        let mut target = vec![0u32; n];
        let mut sign = vec![Gf3::ONE; n];
        for (i, (&t, &s)) in self.target.iter().zip(&self.sign).enumerate() {
            target[t as usize] = i as u32;
            sign[t as usize] = s;
        }
        SignedPermutation { target, sign }
    }

    pub fn negated(&self) -> Self {
        SignedPermutation {
            target: self.target.clone(),
            sign: self.sign.iter().map(|&s| -s).collect(),
        }
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &SignedPermutation) -> Result<Self> {
        if self.size() != rhs.size() {
            return Err(Error::ShapeMismatch {
                op: "compose",
                left: (self.size(), self.size()),
                right: (rhs.size(), rhs.size()),
            });
        }
        let (target, sign) = self
            .target
            .iter()
            .zip(&self.sign)
            .map(|(&t, &s)| {
                let (t2, s2) = rhs.entry(t as usize);
                (t2 as u32, s * s2)
            })
            .unzip();
        Ok(SignedPermutation { target, sign })
    }

    /// `diag(a, b)`.
    pub fn block_diag(a: &SignedPermutation, b: &SignedPermutation) -> Self {
        let off = a.size() as u32;
        let target = a
            .target
            .iter()
            .copied()
            .chain(b.target.iter().map(|&t| t + off))
            .collect();
        let sign = a.sign.iter().chain(&b.sign).copied().collect();
        SignedPermutation { target, sign }
    }

    /// Flips the sign of one row. Only used to inject faults into checks.
    pub fn flip_sign(&mut self, row: usize) {
        self.sign[row] = -self.sign[row];
    }
}
