//! Rectangular polynomial matrices and determinantal minor ideals.

use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::collections::HashMap;

/// A dense rows x cols grid of polynomials over one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    ring: PolyRing<F>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: &PolyRing<F>, rows: usize, cols: usize, entries: Vec<Polynomial<F>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MatrixShape);
        }
        for e in &entries {
            e.ring().check_same(ring)?;
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zero(ring: &PolyRing<F>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn from_columns(ring: &PolyRing<F>, rows: usize, cols: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let ncols = cols.len();
        let mut m = PolyMatrix::zero(ring, rows, ncols);
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::MatrixShape);
            }
            for (i, p) in col.into_iter().enumerate() {
                p.ring().check_same(ring)?;
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<F>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial<F>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Matrix product self * other.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(Error::MatrixShape);
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Appends one column.
    pub fn with_column(&self, col: Vec<Polynomial<F>>) -> Result<Self> {
        if col.len() != self.rows {
            return Err(Error::MatrixShape);
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            entries.extend(self.entries[i * self.cols..(i + 1) * self.cols].iter().cloned());
            entries.push(col[i].clone());
        }
        PolyMatrix::new(&self.ring, self.rows, self.cols + 1, entries)
    }

    fn det_memo(
        &self,
        row_mask: u32,
        col_mask: u32,
        memo: &mut HashMap<(u32, u32), Polynomial<F>>,
    ) -> Polynomial<F> {
        if row_mask == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(d) = memo.get(&(row_mask, col_mask)) {
            return d.clone();
        }
        let first_row = row_mask.trailing_zeros() as usize;
        let rest_rows = row_mask & (row_mask - 1);
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_flip = false;
        let mut cm = col_mask;
        while cm != 0 {
            let j = cm.trailing_zeros() as usize;
            cm &= cm - 1;
            let entry = self.get(first_row, j);
            if !entry.is_zero() {
                let sub = self.det_memo(rest_rows, col_mask & !(1 << j), memo);
                let term = entry.mul(&sub);
                acc = if sign_flip { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_flip = !sign_flip;
        }
        memo.insert((row_mask, col_mask), acc.clone());
        acc
    }

    /// Determinant of a square matrix by memoized Laplace expansion.
    pub fn det(&self) -> Result<Polynomial<F>> {
        if self.rows != self.cols {
            return Err(Error::MatrixShape);
        }
        if self.rows > 31 {
            return Err(Error::MinorsTooLarge { rows: self.rows, cols: self.cols, r: self.rows });
        }
        let mut memo = HashMap::new();
        Ok(self.det_memo((1u32 << self.rows) - 1, (1u32 << self.cols) - 1, &mut memo))
    }

    /// The ideal of r x r minors, honoring both boundary conventions:
    /// the unit ideal for r <= 0 and the zero ideal for r beyond the shape.
    pub fn minors_ideal(&self, r: i64, budget: &Budget) -> Result<Ideal<F>> {
        if r <= 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let r = r as usize;
        if r > self.rows.min(self.cols) {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.rows.min(self.cols) > 12 {
            return Err(Error::MinorsTooLarge { rows: self.rows, cols: self.cols, r });
        }
        let count = binomial(self.rows, r).saturating_mul(binomial(self.cols, r));
        if count > budget.max_minors {
            return Err(Error::MinorsTooLarge { rows: self.rows, cols: self.cols, r });
        }
        let mut memo: HashMap<(u32, u32), Polynomial<F>> = HashMap::new();
        let mut gens = Vec::new();
        for row_mask in subsets_of_size(self.rows, r) {
            for col_mask in subsets_of_size(self.cols, r) {
                let d = self.det_memo(row_mask, col_mask, &mut memo);
                if !d.is_zero() && !gens.contains(&d) {
                    gens.push(d);
                }
            }
        }
        Ideal::new(&self.ring, gens)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// All size-k subsets of 0..n as bitmasks, in ascending mask order.
fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push(mask);
        }
    }
    out
}

/// The bordered-matrix inclusion check: with B = [A | A*c + b], both
/// I_r(A) ⊆ I_r(B) and I_r(B) ⊆ I_r(A) + (b_1..b_m) must hold.
pub fn matrix_border_check<F: Field>(
    a: &PolyMatrix<F>,
    b_col: &[Polynomial<F>],
    coeffs: &[Polynomial<F>],
    r: i64,
    budget: &Budget,
) -> Result<bool> {
    if b_col.len() != a.rows() || coeffs.len() != a.cols() {
        return Err(Error::MatrixShape);
    }
    let ring = a.ring().clone();
    let mut appended = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut acc = b_col[i].clone();
        for j in 0..a.cols() {
            acc = acc.add(&coeffs[j].mul(a.get(i, j)));
        }
        appended.push(acc);
    }
    let bordered = a.with_column(appended)?;
    let minors_a = a.minors_ideal(r, budget)?;
    let minors_b = bordered.minors_ideal(r, budget)?;
    if !minors_b.contains_ideal(&minors_a, budget)? {
        return Ok(false);
    }
    let border_entries = Ideal::new(&ring, b_col.to_vec())?;
    let rhs = minors_a.sum(&border_entries)?;
    rhs.contains_ideal(&minors_b, budget)
}
