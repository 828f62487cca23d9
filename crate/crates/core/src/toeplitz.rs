//! Lower-triangular Toeplitz matrices and superregularity.
//!
//! A `(γ+1)x(γ+1)` lower-triangular Toeplitz matrix is stored as its first
//! column `[a_0, ..., a_γ]`. A submatrix with rows `I` and columns `J`
//! (both increasing, 1-based) is *proper* when `j_ν <= i_ν` for every ν;
//! only proper submatrices can have a nonzero determinant. A matrix is
//! superregular when every proper submatrix is nonsingular.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Gf};
use crate::matrix::{det_in_place, DenseMatrix, MAX_DIM};

/// Lower-triangular Toeplitz matrix given by its first column.
#[derive(Clone, PartialEq, Eq)]
pub struct LtToeplitz {
    field: Arc<Gf>,
    col: Vec<Elem>,
}

impl fmt::Debug for LtToeplitz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LtToeplitz[{}]", self.format_col())
    }
}

impl LtToeplitz {
    pub fn new(field: Arc<Gf>, col: Vec<Elem>) -> Result<Self> {
        if col.is_empty() {
            return Err(Error::SizeMismatch("empty first column".into()));
        }
        if col.len() > MAX_DIM {
            return Err(Error::DimensionTooLarge(col.len()));
        }
        for &a in &col {
            field.check(a)?;
        }
        Ok(LtToeplitz { field, col })
    }

    /// Parses entries in any element notation.
    pub fn parse(field: Arc<Gf>, entries: &[&str]) -> Result<Self> {
        let col = entries.iter().map(|t| field.parse(t)).collect::<Result<Vec<_>>>()?;
        Self::new(field, col)
    }

    pub fn identity(field: Arc<Gf>, gamma: usize) -> Result<Self> {
        let mut col = vec![Elem::ZERO; gamma + 1];
        col[0] = Elem::ONE;
        Self::new(field, col)
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn col(&self) -> &[Elem] {
        &self.col
    }

    pub fn into_col(self) -> Vec<Elem> {
        self.col
    }

    /// γ, one less than the dimension.
    pub fn gamma(&self) -> usize {
        self.col.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.col.len()
    }

    /// Entry at 0-based (i, j).
    pub fn entry(&self, i: usize, j: usize) -> Elem {
        if i >= j {
            self.col[i - j]
        } else {
            Elem::ZERO
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, self.col[i - j]);
            }
        }
        m
    }

    /// Reads the first column of a dense matrix that must be lower-triangular Toeplitz.
    pub fn from_dense(field: Arc<Gf>, m: &DenseMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let t = Self::new(field, m.column(0))?;
        if t.to_dense() != *m {
            return Err(Error::SizeMismatch("matrix is not lower-triangular Toeplitz".into()));
        }
        Ok(t)
    }

    pub fn same_field(&self, other: &LtToeplitz) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn format_col(&self) -> String {
        self.col.iter().map(|&a| self.field.format(a)).join(", ")
    }
}

/// Row and column index sets (1-based, increasing) naming a square submatrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexPair {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl IndexPair {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        IndexPair { rows, cols }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// `j_ν <= i_ν` for every ν.
    pub fn is_proper(&self) -> bool {
        self.rows.len() == self.cols.len() && self.cols.iter().zip(&self.rows).all(|(j, i)| j <= i)
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.rows.len() != self.cols.len() {
            return Err(Error::SizeMismatch(format!(
                "{} rows vs {} columns",
                self.rows.len(),
                self.cols.len()
            )));
        }
        if self.rows.is_empty() {
            return Err(Error::SizeMismatch("empty index set".into()));
        }
        for set in [&self.rows, &self.cols] {
            if set.iter().any(|&k| k == 0 || k > dim) || !set.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::IndexOutOfRange(format!("{set:?} in 1..={dim}")));
            }
        }
        Ok(())
    }

    /// `FAIL s=<s> I=<...> J=<...>`
    pub fn fail_line(&self) -> String {
        format!("FAIL s={} I={} J={}", self.size(), self.rows.iter().join(","), self.cols.iter().join(","))
    }
}

/// Submatrix `A^I_J` as a dense matrix.
pub fn submatrix(a: &LtToeplitz, idx: &IndexPair) -> Result<DenseMatrix> {
    idx.validate(a.dim())?;
    let s = idx.size();
    let mut m = DenseMatrix::zeros(s, s);
    for (r, &i) in idx.rows.iter().enumerate() {
        for (c, &j) in idx.cols.iter().enumerate() {
            m.set(r, c, a.entry(i - 1, j - 1));
        }
    }
    Ok(m)
}

/// Every proper index pair of a `(γ+1)`-dimensional matrix, lexicographic in
/// `(s, I, J)`. `size = None` emits all sizes.
pub fn enumerate_proper(gamma: usize, size: Option<usize>) -> impl Iterator<Item = IndexPair> {
    let n = gamma + 1;
    let sizes = match size {
        Some(s) => s..=s,
        None => 1..=n,
    };
    sizes.flat_map(move |s| {
        (1..=n).combinations(s).flat_map(move |rows| {
            let rows2 = rows.clone();
            (1..=n)
                .combinations(s)
                .filter(move |cols| cols.iter().zip(&rows2).all(|(j, i)| j <= i))
                .map(move |cols| IndexPair::new(rows.clone(), cols))
        })
    })
}

/// Result of a full superregularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrCheck {
    pub superregular: bool,
    /// First proper pair (enumeration order) with zero determinant.
    pub witness: Option<IndexPair>,
}

fn minor_det(a: &LtToeplitz, idx: &IndexPair, buf: &mut Vec<Elem>) -> Elem {
    let s = idx.size();
    buf.clear();
    for &i in &idx.rows {
        for &j in &idx.cols {
            buf.push(a.entry(i - 1, j - 1));
        }
    }
    det_in_place(a.field(), buf, s)
}

/// Checks every proper submatrix, stopping at the first singular one.
pub fn is_superregular(a: &LtToeplitz) -> SrCheck {
    let mut buf = Vec::new();
    for idx in enumerate_proper(a.gamma(), None) {
        if minor_det(a, &idx, &mut buf).is_zero() {
            return SrCheck { superregular: false, witness: Some(idx) };
        }
    }
    SrCheck { superregular: true, witness: None }
}

/// Determinants of every proper submatrix, in enumeration order.
pub fn certificate(a: &LtToeplitz) -> Vec<(IndexPair, Elem)> {
    let mut buf = Vec::new();
    enumerate_proper(a.gamma(), None)
        .map(|idx| {
            let d = minor_det(a, &idx, &mut buf);
            (idx, d)
        })
        .collect()
}

/// The proper submatrices whose determinant is linear in the newest entry
/// `a_l` of an `(l+1)`-dimensional matrix: rows `(i_1..i_{s-1}, l)`, columns
/// `(0, j_1..j_{s-1})` with `1 <= j_ν <= i_ν <= l-1` (0-based). Every other
/// proper submatrix of the leading `(l+1)x(l+1)` block is either a shift of
/// one inside the leading `l x l` block or block-triangular with diagonal
/// blocks of that kind, so these are the only new conditions at level `l`.
///
/// Pairs mirrored across the antidiagonal have equal determinants (the
/// matrix is persymmetric), so only one representative of each is kept.
#[derive(Clone, Debug)]
pub struct LevelMinors {
    pub level: usize,
    /// 0-based (rows, cols) with the `a_l` entry at (last row, first column).
    pub minors: Vec<(Vec<u8>, Vec<u8>)>,
    /// Count before antidiagonal deduplication (the Catalan number C_l).
    pub total: usize,
    /// Number of antidiagonal-symmetric pairs.
    pub symmetric: usize,
    /// Per minor: prefix offsets `i - j` in elimination layout (columns
    /// `cols[1..]` then `cols[0]`), `ZERO_CELL` above the diagonal and
    /// `X_CELL` at the `a_l` slot.
    cells: Vec<u8>,
}

const ZERO_CELL: u8 = u8::MAX;
const X_CELL: u8 = u8::MAX - 1;

impl LevelMinors {
    pub fn new(level: usize) -> Self {
        let l = level;
        let mut all: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        if l == 0 {
            all.push((vec![0], vec![0]));
        } else {
            let inner: Vec<usize> = (1..l).collect();
            for t in 0..=inner.len() {
                for rows in inner.iter().copied().combinations(t) {
                    for cols in inner.iter().copied().combinations(t) {
                        if cols.iter().zip(&rows).all(|(j, i)| j <= i) {
                            let mut r: Vec<u8> = rows.iter().map(|&x| x as u8).collect();
                            r.push(l as u8);
                            let mut c = vec![0u8];
                            c.extend(cols.iter().map(|&x| x as u8));
                            all.push((r, c));
                        }
                    }
                }
            }
        }
        let total = all.len();
        let mirror = |(r, c): &(Vec<u8>, Vec<u8>)| -> (Vec<u8>, Vec<u8>) {
            let mut mr: Vec<u8> = c.iter().map(|&j| l as u8 - j).collect();
            let mut mc: Vec<u8> = r.iter().map(|&i| l as u8 - i).collect();
            mr.sort_unstable();
            mc.sort_unstable();
            (mr, mc)
        };
        let mut symmetric = 0;
        let minors: Vec<_> = all
            .into_iter()
            .filter(|p| {
                let m = mirror(p);
                if m == *p {
                    symmetric += 1;
                }
                *p <= m
            })
            .collect();
        let mut cells = Vec::new();
        for (rows, cols) in &minors {
            for &i in rows {
                for &j in cols[1..].iter().chain(&cols[..1]) {
                    cells.push(if i as usize == l && j == 0 {
                        X_CELL
                    } else if i >= j {
                        i - j
                    } else {
                        ZERO_CELL
                    });
                }
            }
        }
        LevelMinors { level, minors, total, symmetric, cells }
    }

    /// Values of `a_l` that make some level minor vanish, given `a_0..a_{l-1}`
    /// in `prefix`, written to `out`. Returns false when some minor vanishes
    /// for every value of `a_l`.
    pub fn forbidden(&self, gf: &Gf, prefix: &[Elem], buf: &mut Vec<Elem>, out: &mut Vec<Elem>) -> bool {
        out.clear();
        let value = |c: u8| if c >= X_CELL { Elem::ZERO } else { prefix[c as usize] };
        let mut start = 0;
        for (rows, cols) in &self.minors {
            let n = rows.len();
            let cells = &self.cells[start..start + n * n];
            start += n * n;
            buf.clear();
            buf.extend(cells.iter().map(|&c| value(c)));
            // With M = [[A, b], [r, m + x]] and A nonsingular, det M vanishes
            // exactly at x = -(m - r A^-1 b). Pivots stay inside A.
            let mut singular = false;
            for col in 0..n - 1 {
                let Some(piv) = (col..n - 1).find(|&r| !buf[r * n + col].is_zero()) else {
                    singular = true;
                    break;
                };
                if piv != col {
                    for c in col..n {
                        buf.swap(piv * n + c, col * n + c);
                    }
                }
                let pinv = gf.inv_nonzero(buf[col * n + col]);
                for r in col + 1..n {
                    let f = buf[r * n + col];
                    if f.is_zero() {
                        continue;
                    }
                    let f = gf.mul(f, pinv);
                    for c in col + 1..n {
                        buf[r * n + c] = gf.sub(buf[r * n + c], gf.mul(f, buf[col * n + c]));
                    }
                }
            }
            if !singular {
                out.push(gf.neg(buf[n * n - 1]));
                continue;
            }
            // det M does not depend on x.
            buf.clear();
            for &i in rows {
                for &j in cols {
                    buf.push(if i as usize == self.level && j == 0 { Elem::ZERO } else if i >= j { prefix[(i - j) as usize] } else { Elem::ZERO });
                }
            }
            if det_in_place(gf, buf, n).is_zero() {
                return false;
            }
        }
        true
    }
}

/// Minors needed at each level `0..=gamma`.
pub fn level_table(gamma: usize) -> Vec<LevelMinors> {
    (0..=gamma).map(LevelMinors::new).collect()
}

/// Checks the prefix `a_0..a_l` level by level, testing only the minors that
/// involve each newly added entry. Equivalent to full superregularity of the
/// `(l+1)x(l+1)` matrix.
pub fn is_superregular_incremental(field: &Gf, prefix: &[Elem]) -> bool {
    let mut buf = Vec::new();
    let mut forb = Vec::new();
    for l in 0..prefix.len() {
        if prefix[l].is_zero() {
            return false;
        }
        let lm = LevelMinors::new(l);
        if !lm.forbidden(field, &prefix[..l], &mut buf, &mut forb) || forb.contains(&prefix[l]) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::det;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lt(q: u64, col: &[&str]) -> LtToeplitz {
        LtToeplitz::parse(Gf::shared(q).unwrap(), col).unwrap()
    }

    fn pair(r: &[usize], c: &[usize]) -> IndexPair {
        IndexPair::new(r.to_vec(), c.to_vec())
    }

    #[test]
    fn remark_submatrix_shape_and_det() {
        let gf = Gf::shared(64).unwrap();
        let a = LtToeplitz::new(gf.clone(), (0..5).map(|k| gf.exp(k * 7 + 1)).collect()).unwrap();
        let idx = pair(&[1, 2, 5], &[1, 3, 4]);
        let m = submatrix(&a, &idx).unwrap();
        let c = a.col();
        let z = Elem::ZERO;
        assert_eq!(
            m,
            DenseMatrix::from_rows(vec![vec![c[0], z, z], vec![c[1], z, z], vec![c[4], c[2], c[1]]]).unwrap()
        );
        assert!(!idx.is_proper());
        assert!(det(&gf, &m).unwrap().is_zero());
    }

    #[test]
    fn small_submatrices() {
        let a = lt(7, &["1", "2", "3"]);
        assert_eq!(submatrix(&a, &pair(&[1], &[1])).unwrap().get(0, 0), Elem::ONE);
        let m = submatrix(&a, &pair(&[2, 3], &[1, 2])).unwrap();
        assert_eq!(m.row(0), &[a.col()[1], a.col()[0]]);
        assert_eq!(m.row(1), &[a.col()[2], a.col()[1]]);
        assert!(matches!(submatrix(&a, &pair(&[1, 4], &[1, 2])), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(submatrix(&a, &pair(&[2, 1], &[1, 2])), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(submatrix(&a, &pair(&[1, 2], &[1])), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn properness() {
        assert!(pair(&[2, 4], &[1, 3]).is_proper());
        assert!(pair(&[1, 3, 5], &[1, 3, 5]).is_proper());
        assert!(!pair(&[1, 2, 5], &[1, 3, 4]).is_proper());
    }

    #[test]
    fn enumeration_order_and_counts() {
        let all: Vec<IndexPair> = enumerate_proper(1, None).collect();
        assert_eq!(
            all,
            vec![pair(&[1], &[1]), pair(&[2], &[1]), pair(&[2], &[2]), pair(&[1, 2], &[1, 2])]
        );
        assert_eq!(enumerate_proper(0, None).collect::<Vec<_>>(), vec![pair(&[1], &[1])]);
        assert_eq!(enumerate_proper(2, Some(3)).count(), 1);
        // brute force: filter all (I, J) pairs by properness
        for gamma in 0..6 {
            let n = gamma + 1;
            let mut brute = 0;
            for s in 1..=n {
                for r in (1..=n).combinations(s) {
                    for c in (1..=n).combinations(s) {
                        if pair(&r, &c).is_proper() {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(enumerate_proper(gamma, None).count(), brute);
            let v: Vec<_> = enumerate_proper(gamma, None).collect();
            assert!(v.windows(2).all(|w| (w[0].size(), &w[0]) < (w[1].size(), &w[1])));
        }
    }

    #[test]
    fn superregular_examples() {
        assert!(is_superregular(&lt(2, &["1", "1"])).superregular);
        let r = is_superregular(&lt(2, &["1", "1", "1"]));
        assert!(!r.superregular);
        assert_eq!(r.witness, Some(pair(&[2, 3], &[1, 2])));
        assert_eq!(r.witness.unwrap().fail_line(), "FAIL s=2 I=2,3 J=1,2");
        let ex = lt(64, &["1", "w", "w^9", "w^33", "w^33", "w^9", "w", "1"]);
        assert!(is_superregular(&ex).superregular);
    }

    #[test]
    fn incremental_examples() {
        let gf2 = Gf::from_order(2).unwrap();
        let gf3 = Gf::from_order(3).unwrap();
        assert!(is_superregular_incremental(&gf2, &[Elem::ONE]));
        assert!(!is_superregular_incremental(&gf2, &[Elem::ONE; 3]));
        let p = [gf3.parse("1").unwrap(), gf3.parse("1").unwrap(), gf3.parse("2").unwrap()];
        assert!(is_superregular_incremental(&gf3, &p));
        // brute-force oracle: every proper submatrix of the 3x3 over GF(3)
        let a = LtToeplitz::new(Arc::new(gf3.clone()), p.to_vec()).unwrap();
        assert!(certificate(&a).iter().all(|(_, d)| !d.is_zero()));
    }

    #[test]
    fn level_minor_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        let central = [1usize, 1, 2, 3, 6, 10, 20, 35, 70, 126];
        for l in 0..10 {
            let lm = LevelMinors::new(l);
            assert_eq!(lm.total, catalan[l], "level {l}");
            assert_eq!(lm.symmetric, central[l], "level {l}");
            assert_eq!(lm.minors.len(), (lm.total + lm.symmetric) / 2);
        }
    }

    #[test]
    fn full_and_incremental_agree_randomly() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [3u64, 4, 5, 7, 8, 9, 11, 13] {
            let gf = Gf::shared(q).unwrap();
            for _ in 0..300 {
                let n = rng.gen_range(1..=6);
                let col: Vec<Elem> = (0..n).map(|_| gf.elem(rng.gen_range(1..q as u32)).unwrap()).collect();
                let a = LtToeplitz::new(gf.clone(), col.clone()).unwrap();
                let full = is_superregular(&a).superregular;
                assert_eq!(full, is_superregular_incremental(&gf, &col), "{a:?}");
                if full {
                    assert!(col.iter().all(|e| !e.is_zero()));
                }
            }
        }
    }

    #[test]
    fn non_proper_pairs_are_singular() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [4u64, 8, 9] {
            let gf = Gf::shared(q).unwrap();
            for _ in 0..1000 {
                let col: Vec<Elem> = (0..5).map(|_| gf.elem(rng.gen_range(0..q as u32)).unwrap()).collect();
                let a = LtToeplitz::new(gf.clone(), col).unwrap();
                let s = rng.gen_range(1..=5);
                let rows: Vec<usize> = rand::seq::index::sample(&mut rng, 5, s).into_iter().map(|x| x + 1).sorted().collect();
                let cols: Vec<usize> = rand::seq::index::sample(&mut rng, 5, s).into_iter().map(|x| x + 1).sorted().collect();
                let idx = IndexPair::new(rows, cols);
                if !idx.is_proper() {
                    assert!(det(&gf, &submatrix(&a, &idx).unwrap()).unwrap().is_zero());
                }
            }
        }
    }
}
