//! Dense matrices over a finite field: determinant, rank, inverse, kernels.

use crate::error::{Error, Result};
use crate::field::{Elem, Gf};

/// Largest square dimension accepted by [`det`] and the Toeplitz routines.
pub const MAX_DIM: usize = 64;

/// Row-major dense matrix. Arithmetic needs the owning [`Gf`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
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

    /// Columns `cols` in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.set(r, k, self.get(r, c));
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m.set(a, b, self.get(r, c));
            }
        }
        m
    }

    /// `[self | other]`
    pub fn hcat(&self, other: &DenseMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::SizeMismatch(format!("hcat {} vs {} rows", self.rows, other.rows)));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(m)
    }

    /// Antidiagonal transpose: entry (r, c) moves to (n-1-c, n-1-r).
    pub fn antidiagonal_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(self.cols - 1 - c, self.rows - 1 - r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, gf: &Gf, rhs: &DenseMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = gf.add(out.get(r, c), gf.mul(a, rhs.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, gf: &Gf, v: &[Elem]) -> Vec<Elem> {
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(Elem::ZERO, |acc, (&a, &b)| gf.add(acc, gf.mul(a, b)))
            })
            .collect()
    }

    /// Text form: one line per row, entries in canonical notation.
    pub fn format(&self, gf: &Gf) -> String {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&e| gf.format(e)).collect::<Vec<_>>().join(", "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Determinant by Gaussian elimination.
pub fn det(gf: &Gf, m: &DenseMatrix) -> Result<Elem> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    if m.rows > MAX_DIM {
        return Err(Error::DimensionTooLarge(m.rows));
    }
    let mut buf = m.data.clone();
    Ok(det_in_place(gf, &mut buf, m.rows))
}

/// Determinant of the `n x n` row-major matrix in `a`, destroying it.
pub(crate) fn det_in_place(gf: &Gf, a: &mut [Elem], n: usize) -> Elem {
    let mut d = Elem::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Elem::ZERO;
        };
        if piv != col {
            for c in col..n {
                a.swap(piv * n + c, col * n + c);
            }
            d = gf.neg(d);
        }
        let pv = a[col * n + col];
        d = gf.mul(d, pv);
        let pinv = gf.inv_nonzero(pv);
        for r in col + 1..n {
            let f = a[r * n + col];
            if f.is_zero() {
                continue;
            }
            let f = gf.mul(f, pinv);
            for c in col + 1..n {
                let v = gf.sub(a[r * n + c], gf.mul(f, a[col * n + c]));
                a[r * n + c] = v;
            }
        }
    }
    d
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(gf: &Gf, m: &mut DenseMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if piv != row {
            for c in 0..m.cols {
                let (a, b) = (m.get(piv, c), m.get(row, c));
                m.set(piv, c, b);
                m.set(row, c, a);
            }
        }
        let inv = gf.inv_nonzero(m.get(row, col));
        for c in 0..m.cols {
            m.set(row, c, gf.mul(inv, m.get(row, c)));
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let f = m.get(r, col);
            if f.is_zero() {
                continue;
            }
            for c in 0..m.cols {
                let v = gf.sub(m.get(r, c), gf.mul(f, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(gf: &Gf, m: &DenseMatrix) -> usize {
    rref(gf, &mut m.clone()).len()
}

/// Gauss-Jordan inverse.
pub fn inverse(gf: &Gf, m: &DenseMatrix) -> Result<DenseMatrix> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut aug = m.hcat(&DenseMatrix::identity(n))?;
    let pivots = rref(gf, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Ok(aug.select_columns(&cols))
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per row.
pub fn kernel(gf: &Gf, m: &DenseMatrix) -> DenseMatrix {
    let mut r = m.clone();
    let pivots = rref(gf, &mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = DenseMatrix::zeros(free.len(), m.cols);
    for (k, &f) in free.iter().enumerate() {
        basis.set(k, f, Elem::ONE);
        for (pr, &pc) in pivots.iter().enumerate() {
            basis.set(k, pc, gf.neg(r.get(pr, f)));
        }
    }
    basis
}
