//! Exact linear algebra: integer matrices (Bareiss determinant, Smith normal
//! form, primitive rational kernels, definiteness) and matrices over a number
//! field (deterministic reduced row echelon form).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numfield::{NumberFieldElement, NumberFieldSpec};
use crate::rational::{big_gcd, Rational};

/// Dense row-major matrix over Z with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count != rows * cols");
        Self { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch);
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let delta = a * other.at(k, j);
                    *out.at_mut(i, j) += delta;
                }
            }
        }
        Ok(out)
    }

    /// Leading principal submatrix of size k.
    pub fn leading_minor_matrix(&self, k: usize) -> Self {
        let mut out = Self::zero(k, k);
        for i in 0..k {
            for j in 0..k {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det_bareiss(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut w = self.entries.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if w[idx(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !w[idx(r, k)].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            w.swap(idx(k, j), idx(r, j));
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &w[idx(i, j)] * &w[idx(k, k)] - &w[idx(i, k)] * &w[idx(k, j)];
                    w[idx(i, j)] = t / &prev; // exact by the Bareiss identity
                }
                w[idx(i, k)] = BigInt::zero();
            }
            prev = w[idx(k, k)].clone();
        }
        let det = w[idx(n - 1, n - 1)].clone();
        Ok(if sign < 0 { -det } else { det })
    }

    /// Sylvester test: all leading principal minors strictly positive.
    pub fn is_positive_definite(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for k in 1..=self.rows {
            if self.leading_minor_matrix(k).det_bareiss()?.is_positive() {
                continue;
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// Smith normal form D = U * A * V with unimodular U, V, non-negative
    /// diagonal and divisibility chain d_i | d_{i+1}.
    pub fn smith_normal_form(&self) -> SmithNormalForm {
        let mut d = self.clone();
        let mut u = Self::identity(self.rows);
        let mut v = Self::identity(self.cols);
        let mut k = 0;
        while k < self.rows.min(self.cols) {
            if !pivot_to_corner(&mut d, &mut u, &mut v, k) {
                break; // remaining block is zero
            }
            loop {
                clear_column(&mut d, &mut u, k);
                clear_row(&mut d, &mut v, k);
                if !column_is_clear(&d, k) || !row_is_clear(&d, k) {
                    continue;
                }
                match find_nondivisible(&d, k) {
                    Some(i) => {
                        // fold that row in and restart the reduction at (k, k)
                        for j in 0..d.cols {
                            let t = d.at(i, j).clone();
                            *d.at_mut(k, j) += &t;
                        }
                        for j in 0..u.cols {
                            let t = u.at(i, j).clone();
                            *u.at_mut(k, j) += &t;
                        }
                    }
                    None => break,
                }
            }
            if d.at(k, k).is_negative() {
                for j in 0..d.cols {
                    let t = -d.at(k, j).clone();
                    *d.at_mut(k, j) = t;
                }
                for j in 0..u.cols {
                    let t = -u.at(k, j).clone();
                    *u.at_mut(k, j) = t;
                }
            }
            k += 1;
        }
        let out = SmithNormalForm { d, u, v };
        #[cfg(debug_assertions)]
        out.verify(self);
        out
    }

    /// Integer basis of the rational null space, each vector primitive with
    /// its last nonzero entry positive, ordered by free column.
    pub fn rational_kernel_primitive(&self) -> Vec<Vec<BigInt>> {
        let rat_entries: Vec<Rational> = self
            .entries
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let (rref, pivots) = rational_rref(self.rows, self.cols, rat_entries);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref[r * self.cols + f].clone();
            }
            basis.push(primitive_integer_vector(&v));
        }
        basis
    }

    pub fn rank(&self) -> usize {
        let rat_entries: Vec<Rational> = self
            .entries
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        rational_rref(self.rows, self.cols, rat_entries).1.len()
    }
}

/// D = U * A * V.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal of D, length min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.at(i, i).clone())
            .collect()
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn verify(&self, a: &IntMatrix) {
        let uav = self.u.mul(a).unwrap().mul(&self.v).unwrap();
        assert_eq!(uav, self.d, "U*A*V != D");
        assert!(
            self.u.det_bareiss().unwrap().abs().is_one(),
            "U not unimodular"
        );
        assert!(
            self.v.det_bareiss().unwrap().abs().is_one(),
            "V not unimodular"
        );
        let diag = self.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative(), "negative invariant factor");
            if i + 1 < diag.len() && !diag[i].is_zero() {
                assert!(
                    (&diag[i + 1] % &diag[i]).is_zero(),
                    "divisibility chain broken"
                );
            }
            if diag[i].is_zero() && i + 1 < diag.len() {
                assert!(diag[i + 1].is_zero(), "zero before nonzero on diagonal");
            }
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j {
                    assert!(self.d.at(i, j).is_zero(), "D not diagonal");
                }
            }
        }
    }
}

/// Moves the absolutely smallest nonzero entry of the trailing block to (k, k).
/// Returns false when the block is entirely zero.
fn pivot_to_corner(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, k: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in k..d.rows {
        for j in k..d.cols {
            if d.at(i, j).is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.at(bi, bj).abs() <= d.at(i, j).abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    let Some((i, j)) = best else {
        return false;
    };
    if i != k {
        swap_rows(d, i, k);
        swap_rows(u, i, k);
    }
    if j != k {
        swap_cols(d, j, k);
        swap_cols(v, j, k);
    }
    true
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    for j in 0..m.cols {
        let (x, y) = (m.at(a, j).clone(), m.at(b, j).clone());
        *m.at_mut(a, j) = y;
        *m.at_mut(b, j) = x;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for i in 0..m.rows {
        let (x, y) = (m.at(i, a).clone(), m.at(i, b).clone());
        *m.at_mut(i, a) = y;
        *m.at_mut(i, b) = x;
    }
}

/// One sweep of Euclidean column clearing below (k, k); re-pivots on a smaller
/// remainder when division is inexact.
fn clear_column(d: &mut IntMatrix, u: &mut IntMatrix, k: usize) {
    loop {
        let mut progressed = false;
        for i in k + 1..d.rows {
            if d.at(i, k).is_zero() {
                continue;
            }
            let q = d.at(i, k).div_floor(d.at(k, k));
            if !q.is_zero() {
                for j in 0..d.cols {
                    let t = &q * d.at(k, j);
                    *d.at_mut(i, j) -= t;
                }
                for j in 0..u.cols {
                    let t = &q * u.at(k, j);
                    *u.at_mut(i, j) -= t;
                }
            }
            if !d.at(i, k).is_zero() {
                // remainder is a strictly smaller pivot candidate
                swap_rows(d, i, k);
                swap_rows(u, i, k);
                progressed = true;
            }
        }
        if !progressed {
            return;
        }
    }
}

fn clear_row(d: &mut IntMatrix, v: &mut IntMatrix, k: usize) {
    loop {
        let mut progressed = false;
        for j in k + 1..d.cols {
            if d.at(k, j).is_zero() {
                continue;
            }
            let q = d.at(k, j).div_floor(d.at(k, k));
            if !q.is_zero() {
                for i in 0..d.rows {
                    let t = &q * d.at(i, k);
                    *d.at_mut(i, j) -= t;
                }
                for i in 0..v.rows {
                    let t = &q * v.at(i, k);
                    *v.at_mut(i, j) -= t;
                }
            }
            if !d.at(k, j).is_zero() {
                swap_cols(d, j, k);
                swap_cols(v, j, k);
                progressed = true;
            }
        }
        if !progressed {
            return;
        }
    }
}

fn column_is_clear(d: &IntMatrix, k: usize) -> bool {
    (k + 1..d.rows).all(|i| d.at(i, k).is_zero())
}

fn row_is_clear(d: &IntMatrix, k: usize) -> bool {
    (k + 1..d.cols).all(|j| d.at(k, j).is_zero())
}

/// Row index whose trailing block contains an entry not divisible by d[k][k].
fn find_nondivisible(d: &IntMatrix, k: usize) -> Option<usize> {
    let p = d.at(k, k);
    for i in k + 1..d.rows {
        for j in k + 1..d.cols {
            if !(d.at(i, j) % p).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// In-place RREF over Q; returns (entries, pivot columns).
fn rational_rref(rows: usize, cols: usize, mut e: Vec<Rational>) -> (Vec<Rational>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| !e[i * cols + col].is_zero()) else {
            continue;
        };
        if pr != row {
            for j in 0..cols {
                e.swap(pr * cols + j, row * cols + j);
            }
        }
        let inv = e[row * cols + col].recip();
        for j in col..cols {
            let t = &e[row * cols + j] * &inv;
            e[row * cols + j] = t;
        }
        for i in 0..rows {
            if i == row || e[i * cols + col].is_zero() {
                continue;
            }
            let factor = e[i * cols + col].clone();
            for j in col..cols {
                let t = &factor * &e[row * cols + j];
                e[i * cols + j] -= t;
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    (e, pivots)
}

/// Clears denominators, divides by the content, and flips the sign so the
/// last nonzero entry is positive.
fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut content = BigInt::zero();
    for x in &ints {
        content = big_gcd(&content, x);
    }
    if !content.is_zero() && !content.is_one() {
        for x in &mut ints {
            *x /= &content;
        }
    }
    if let Some(last) = ints.iter().rev().find(|x| !x.is_zero()) {
        if last.is_negative() {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
    }
    ints
}

/// Dense row-major matrix over a number field; all entries share one spec.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<NumberFieldElement>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<NumberFieldElement>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count != rows * cols");
        assert!(rows * cols > 0, "use zero-sized constructors explicitly");
        Self { rows, cols, entries }
    }

    pub fn from_rows(spec: &Arc<NumberFieldSpec>, rows: &[Vec<NumberFieldElement>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let _ = spec;
        Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        }
    }

    pub fn zero(spec: &Arc<NumberFieldSpec>, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![NumberFieldElement::zero(spec); rows * cols],
        }
    }

    pub fn identity(spec: &Arc<NumberFieldSpec>, n: usize) -> Self {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = NumberFieldElement::one(spec);
        }
        m
    }

    pub fn scalar(spec: &Arc<NumberFieldSpec>, n: usize, value: &NumberFieldElement) -> Self {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = value.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &NumberFieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut NumberFieldElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[NumberFieldElement] {
        &self.entries
    }

    pub fn spec(&self) -> &Arc<NumberFieldSpec> {
        self.entries
            .first()
            .expect("empty matrix has no spec")
            .spec()
    }

    fn check_single_spec(&self) -> Result<()> {
        let spec = self.entries.first().map(|e| e.spec());
        let Some(spec) = spec else { return Ok(()) };
        if self.entries.iter().all(|e| e.spec() == spec) {
            Ok(())
        } else {
            Err(Error::MixedField)
        }
    }

    pub fn row(&self, i: usize) -> Vec<NumberFieldElement> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch);
        }
        let spec = self.spec();
        let mut out = Self::zero(spec, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.at(k, j);
                    *out.at_mut(i, j) = &out.at(i, j).clone() + &t;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.spec(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Stacks `self` on top of `other` (column counts must agree).
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::SizeMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Deterministic reduced row echelon form: leftmost pivot column, first
    /// nonzero row from the top, pivot scaled to one, full elimination.
    pub fn rref(&self) -> Result<(Self, usize, Vec<usize>)> {
        self.check_single_spec()?;
        let mut r = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..r.cols {
            let Some(pr) = (row..r.rows).find(|&i| !r.at(i, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..r.cols {
                    let a = r.at(pr, j).clone();
                    let b = r.at(row, j).clone();
                    *r.at_mut(pr, j) = b;
                    *r.at_mut(row, j) = a;
                }
            }
            let inv = r.at(row, col).inv()?;
            for j in col..r.cols {
                let t = r.at(row, j) * &inv;
                *r.at_mut(row, j) = t;
            }
            for i in 0..r.rows {
                if i == row || r.at(i, col).is_zero() {
                    continue;
                }
                let factor = r.at(i, col).clone();
                for j in col..r.cols {
                    let t = r.at(row, j) * &factor;
                    *r.at_mut(i, j) = r.at(i, j) - &t;
                }
            }
            pivots.push(col);
            row += 1;
            if row == r.rows {
                break;
            }
        }
        let rank = pivots.len();
        Ok((r, rank, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1)
    }
}
