//! Convolutional codes: polynomial matrices, truncated sliding matrices,
//! column distances, the maximum span property and the construction of
//! systematic parity-check data from a superregular matrix.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Gf};
use crate::matrix::{kernel, rank, DenseMatrix};
use crate::toeplitz::{is_superregular, LtToeplitz};

/// `(n, k, δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, delta: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidParams(format!("need 0 < k < n, got n={n} k={k}")));
        }
        Ok(CodeParams { n, k, delta })
    }

    /// `⌊δ/k⌋ + ⌊δ/(n-k)⌋`.
    pub fn l(&self) -> usize {
        self.delta / self.k + self.delta / (self.n - self.k)
    }

    /// `(n-k)(⌊δ/k⌋ + 1) + δ + 1`.
    pub fn singleton_bound(&self) -> usize {
        (self.n - self.k) * (self.delta / self.k + 1) + self.delta + 1
    }

    /// `(n-k)(j+1) + 1`.
    pub fn coldist_bound(&self, j: usize) -> usize {
        (self.n - self.k) * (j + 1) + 1
    }
}

/// Polynomials are coefficient vectors, constant term first, without
/// trailing zeros (the zero polynomial is empty).
pub type Poly = Vec<Elem>;

pub mod poly {
    use super::Poly;
    use crate::field::{Elem, Gf};

    pub fn trim(mut p: Poly) -> Poly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[Elem]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    pub fn add(gf: &Gf, a: &[Elem], b: &[Elem]) -> Poly {
        let n = a.len().max(b.len());
        let at = |p: &[Elem], i: usize| p.get(i).copied().unwrap_or(Elem::ZERO);
        trim((0..n).map(|i| gf.add(at(a, i), at(b, i))).collect())
    }

    pub fn neg(gf: &Gf, a: &[Elem]) -> Poly {
        a.iter().map(|&c| gf.neg(c)).collect()
    }

    pub fn mul(gf: &Gf, a: &[Elem], b: &[Elem]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = gf.add(out[i + j], gf.mul(x, y));
            }
        }
        trim(out)
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(gf: &Gf, m: &[Vec<Poly>]) -> Poly {
        let n = m.len();
        match n {
            0 => vec![Elem::ONE],
            1 => m[0][0].clone(),
            _ => {
                let mut acc = Vec::new();
                for c in 0..n {
                    if m[0][c].is_empty() {
                        continue;
                    }
                    let minor: Vec<Vec<Poly>> = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|&(cc, _)| cc != c).map(|(_, p)| p.clone()).collect())
                        .collect();
                    let term = mul(gf, &m[0][c], &det(gf, &minor));
                    acc = if c % 2 == 0 { add(gf, &acc, &term) } else { add(gf, &acc, &neg(gf, &term)) };
                }
                acc
            }
        }
    }
}

/// A matrix over `F[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Vec::new(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged polynomial matrix".into()));
        }
        Ok(PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().map(poly::trim).collect() })
    }

    /// `Σ_i M_i s^i`.
    pub fn from_coefficients(coeffs: &[DenseMatrix]) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::SizeMismatch("no coefficient matrices".into()))?;
        let (r, c) = (first.rows(), first.cols());
        let mut out = PolyMatrix::zeros(r, c);
        for (d, m) in coeffs.iter().enumerate() {
            if m.rows() != r || m.cols() != c {
                return Err(Error::SizeMismatch("coefficient matrices differ in shape".into()));
            }
            for i in 0..r {
                for jj in 0..c {
                    let e = &mut out.entries[i * c + jj];
                    if e.len() <= d {
                        e.resize(d + 1, Elem::ZERO);
                    }
                    e[d] = m.get(i, jj);
                }
            }
        }
        for e in &mut out.entries {
            *e = poly::trim(std::mem::take(e));
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.entries[r * self.cols + c] = poly::trim(p);
    }

    pub fn transpose(&self) -> Self {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, gf: &Gf, rhs: &PolyMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!("{}x{} * {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Vec::new();
                for t in 0..self.cols {
                    acc = poly::add(gf, &acc, &poly::mul(gf, self.get(r, t), rhs.get(t, c)));
                }
                out.entries[r * rhs.cols + c] = acc;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    /// Largest entry degree; 0 for the zero matrix.
    pub fn max_degree(&self) -> usize {
        self.entries.iter().filter_map(|p| poly::degree(p)).max().unwrap_or(0)
    }

    /// Column degrees `μ_i`; `None` for a zero column.
    pub fn column_degrees(&self) -> Vec<Option<usize>> {
        (0..self.cols).map(|c| (0..self.rows).filter_map(|r| poly::degree(self.get(r, c))).max()).collect()
    }

    /// Coefficient `M_d` of `s^d`.
    pub fn coefficient(&self, d: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if let Some(&v) = self.get(r, c).get(d) {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Maximum degree of the `cols x cols` minors (rows >= cols), or of the
    /// `rows x rows` minors otherwise. `None` when every such minor vanishes.
    pub fn complexity(&self, gf: &Gf) -> Option<usize> {
        let (tall, k) = if self.rows >= self.cols { (self.clone(), self.cols) } else { (self.transpose(), self.rows) };
        (0..tall.rows)
            .combinations(k)
            .filter_map(|rs| {
                let block: Vec<Vec<Poly>> = rs.iter().map(|&r| (0..k).map(|c| tall.get(r, c).clone()).collect()).collect();
                poly::degree(&poly::det(gf, &block))
            })
            .max()
    }
}

/// `[M_0, ..., M_m]`; a zero matrix expands to `[0]`.
pub fn expand(p: &PolyMatrix) -> Vec<DenseMatrix> {
    (0..=p.max_degree()).map(|d| p.coefficient(d)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Block `(r, c)` is `G_{r-c}`.
    Generator,
    /// Block `(r, c)` is `H_{r-c}^T`, from the `n x (n-k)` matrix `H(s)`.
    ParityTranspose,
}

/// The `(j+1)`-block truncated sliding matrix; coefficients beyond the
/// degree are zero.
pub fn sliding(p: &PolyMatrix, j: usize, orientation: Orientation) -> DenseMatrix {
    let blocks: Vec<DenseMatrix> = (0..=j)
        .map(|d| match orientation {
            Orientation::Generator => p.coefficient(d),
            Orientation::ParityTranspose => p.coefficient(d).transpose(),
        })
        .collect();
    let (br, bc) = (blocks[0].rows(), blocks[0].cols());
    let mut out = DenseMatrix::zeros((j + 1) * br, (j + 1) * bc);
    for r in 0..=j {
        for c in 0..=r {
            let b = &blocks[r - c];
            for i in 0..br {
                for jj in 0..bc {
                    out.set(r * br + i, c * bc + jj, b.get(i, jj));
                }
            }
        }
    }
    out
}

/// Column `column` of `m` lies in the span of columns `set`.
fn in_span(gf: &Gf, m: &DenseMatrix, column: usize, set: &[usize]) -> bool {
    let base = rank(gf, &m.select_columns(set));
    let mut with: Vec<usize> = set.to_vec();
    with.push(column);
    rank(gf, &m.select_columns(&with)) == base
}

/// Smallest set of other columns whose span contains column `column`,
/// searching sizes `0..=limit`.
pub fn min_spanning_set(gf: &Gf, m: &DenseMatrix, column: usize, limit: usize) -> Option<Vec<usize>> {
    let others: Vec<usize> = (0..m.cols()).filter(|&c| c != column).collect();
    for size in 0..=limit.min(others.len()) {
        if let Some(s) = others.iter().copied().combinations(size).find(|s| in_span(gf, m, column, s)) {
            return Some(s);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxSpanResult {
    pub holds: bool,
    /// 0-based offending column and a spanning set of at most `d - 1` other columns.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// No column in `candidates` lies in the span of `d - 1` other columns.
pub fn max_span_columns(gf: &Gf, m: &DenseMatrix, candidates: &[usize], d: usize) -> MaxSpanResult {
    for &c in candidates {
        if let Some(s) = min_spanning_set(gf, m, c, d.saturating_sub(1)) {
            return MaxSpanResult { holds: false, witness: Some((c, s)) };
        }
    }
    MaxSpanResult { holds: true, witness: None }
}

/// Maximum span property on the first `w` columns.
pub fn max_span_property(gf: &Gf, m: &DenseMatrix, w: usize, d: usize) -> Result<MaxSpanResult> {
    if m.cols() < w + d {
        return Err(Error::SizeMismatch(format!("need at least {} columns, have {}", w + d, m.cols())));
    }
    Ok(max_span_columns(gf, m, &(0..w).collect::<Vec<_>>(), d))
}

/// Maximum span property for `[I_r | H]` on the first `k` columns of `H`,
/// with `d = r`.
pub fn max_span_systematic(gf: &Gf, m: &DenseMatrix, r: usize, k: usize) -> Result<MaxSpanResult> {
    if m.cols() < r + k || m.rows() != r {
        return Err(Error::SizeMismatch(format!("expected [I_{r} | H] with H having at least {k} columns")));
    }
    Ok(max_span_columns(gf, m, &(r..r + k).collect::<Vec<_>>(), r))
}

/// `[I_{j+1} | T]`.
pub fn identity_concat(t: &LtToeplitz) -> DenseMatrix {
    DenseMatrix::identity(t.dim()).hcat(&t.to_dense()).expect("same row count")
}

/// Superregularity test through the maximum span property of `[I | T]`.
pub fn superregular_via_max_span(t: &LtToeplitz) -> bool {
    let m = identity_concat(t);
    max_span_systematic(t.field(), &m, t.dim(), 1).expect("shape is [I | T]").holds
}

/// Truncated column distance from the generator side, by enumerating
/// `(u_0, ..., u_j)` with `u_0` normalized to have leading entry 1.
pub fn column_distance(gf: &Gf, g: &PolyMatrix, j: usize, budget: u128) -> Result<usize> {
    let (n, k) = (g.rows(), g.cols());
    let gj = sliding(g, j, Orientation::Generator);
    let q = gf.order() as u128;
    let digits = (j + 1) * k;
    let needed = (q.pow(k as u32) - 1) / (q - 1) * q.pow((j * k) as u32);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let elems: Vec<Elem> = gf.elements().collect();
    let columns: Vec<Vec<Elem>> = (0..digits).map(|c| gj.column(c)).collect();
    let mut best = usize::MAX;
    // u_0 = (0, .., 0, 1, *, .., *) with the 1 at position `lead`.
    for lead in 0..k {
        let mut u = vec![0usize; digits];
        u[lead] = 1;
        let mut v = columns[lead].clone();
        let free: Vec<usize> = (lead + 1..digits).collect();
        loop {
            let wt = v.iter().filter(|x| !x.is_zero()).count();
            best = best.min(wt);
            // Odometer step with incremental update of v.
            let mut pos = 0;
            loop {
                if pos == free.len() {
                    break;
                }
                let d = free[pos];
                let old = elems[u[d]];
                u[d] = (u[d] + 1) % elems.len();
                let delta = gf.sub(elems[u[d]], old);
                for (vi, &ci) in v.iter_mut().zip(&columns[d]) {
                    *vi = gf.add(*vi, gf.mul(delta, ci));
                }
                if u[d] != 0 {
                    break;
                }
                pos += 1;
            }
            if pos == free.len() {
                break;
            }
        }
    }
    let _ = n;
    Ok(best)
}

/// `1 + min |S|` over first-block columns `c` of `k` (the first `n`) whose
/// column lies in the span of the columns `S` (not containing `c`).
fn distance_from_check(gf: &Gf, check: &DenseMatrix, n: usize) -> usize {
    let limit = check.cols() - 1;
    (0..n)
        .filter_map(|c| min_spanning_set(gf, check, c, limit).map(|s| s.len() + 1))
        .min()
        .unwrap_or(usize::MAX)
}

/// Column distance from a parity-check matrix `H(s)` (`n x (n-k)`), via
/// spans of the columns of `(H_j^c)^T`.
pub fn column_distance_parity(gf: &Gf, h: &PolyMatrix, j: usize) -> usize {
    let ht = sliding(h, j, Orientation::ParityTranspose);
    distance_from_check(gf, &ht, h.rows())
}

/// Column distance of the code generated by `G` through the left kernel
/// of `G_j^c`; needs `G_0` of full column rank.
pub fn column_distance_dual(gf: &Gf, g: &PolyMatrix, j: usize) -> Result<usize> {
    if rank(gf, &g.coefficient(0)) != g.cols() {
        return Err(Error::InvalidParams("G_0 must have full column rank".into()));
    }
    let gj = sliding(g, j, Orientation::Generator);
    let left = kernel(gf, &gj.transpose());
    if left.rows() == 0 {
        // The truncated code is the whole space.
        return Ok(1);
    }
    Ok(distance_from_check(gf, &left, g.rows()))
}

#[derive(Clone, Debug)]
pub struct MdpConstruction {
    pub t_prime: DenseMatrix,
    pub assembled: DenseMatrix,
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub max_span: MaxSpanResult,
}

/// 1-based rows `{b(n-1)+k, ..., b(n-1)+n-1}` and columns
/// `{b(n-1)+1, ..., b(n-1)+k}` for `b = 0..=j`.
pub fn extraction_indices(params: CodeParams, j: usize) -> (Vec<usize>, Vec<usize>) {
    let (n, k) = (params.n, params.k);
    let rows = (0..=j).flat_map(|b| (b * (n - 1) + k)..=(b * (n - 1) + n - 1)).collect();
    let cols = (0..=j).flat_map(|b| (b * (n - 1) + 1)..=(b * (n - 1) + k)).collect();
    (rows, cols)
}

/// Builds `T'` and `[I_{(j+1)(n-k)} | T']` from a superregular `T` of
/// dimension at least `(j+1)(n-1)`, and checks the maximum span property.
pub fn extract_mdp(t: &LtToeplitz, params: CodeParams, j: usize, checked: bool) -> Result<MdpConstruction> {
    let needed = (j + 1) * (params.n - 1);
    if t.dim() < needed {
        return Err(Error::TooSmall { needed, have: t.dim() });
    }
    if checked {
        if let Some(w) = is_superregular(t).witness {
            return Err(Error::NotSuperregular { s: w.size(), rows: w.rows, cols: w.cols });
        }
    }
    let (rows, cols) = extraction_indices(params, j);
    let dense = t.to_dense();
    let r0: Vec<usize> = rows.iter().map(|r| r - 1).collect();
    let c0: Vec<usize> = cols.iter().map(|c| c - 1).collect();
    let t_prime = dense.submatrix(&r0, &c0);
    let r = t_prime.rows();
    let assembled = DenseMatrix::identity(r).hcat(&t_prime)?;
    let max_span = max_span_systematic(t.field(), &assembled, r, params.k)?;
    Ok(MdpConstruction { t_prime, assembled, row_indices: rows, col_indices: cols, max_span })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Generator,
    Dual,
}

#[derive(Clone, Debug, Serialize)]
pub struct MdpReport {
    pub params: CodeParams,
    pub l: usize,
    pub profile: Vec<usize>,
    pub bounds: Vec<usize>,
    pub mdp: bool,
    pub method: DistanceMethod,
    pub column_degrees: Vec<Option<usize>>,
    pub actual_complexity: Option<usize>,
    pub monotone: bool,
}

/// Column distance profile `d_0^c..d_L^c` and the MDP verdict. The
/// generator side is used when its enumeration fits in `budget`.
pub fn mdp_certify(gf: &Gf, g: &PolyMatrix, params: CodeParams, budget: u128) -> Result<MdpReport> {
    if g.rows() != params.n || g.cols() != params.k {
        return Err(Error::InvalidParams(format!(
            "generator is {}x{}, expected {}x{}",
            g.rows(),
            g.cols(),
            params.n,
            params.k
        )));
    }
    let l = params.l();
    let mut method = DistanceMethod::Generator;
    let mut profile = Vec::with_capacity(l + 1);
    for j in 0..=l {
        let d = match method {
            DistanceMethod::Generator => match column_distance(gf, g, j, budget) {
                Ok(d) => d,
                Err(Error::BudgetExceeded { .. }) => {
                    method = DistanceMethod::Dual;
                    profile.clear();
                    break;
                }
                Err(e) => return Err(e),
            },
            DistanceMethod::Dual => unreachable!(),
        };
        profile.push(d);
    }
    if method == DistanceMethod::Dual {
        for j in 0..=l {
            profile.push(column_distance_dual(gf, g, j)?);
        }
    }
    let bounds: Vec<usize> = (0..=l).map(|j| params.coldist_bound(j)).collect();
    Ok(MdpReport {
        params,
        l,
        mdp: profile[l] == bounds[l],
        monotone: profile.windows(2).all(|w| w[0] <= w[1]),
        profile,
        bounds,
        method,
        column_degrees: g.column_degrees(),
        actual_complexity: g.complexity(gf),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn example_t() -> LtToeplitz {
        LtToeplitz::parse(Gf::shared(64).unwrap(), &["1", "w", "w^9", "w^33", "w^33", "w^9", "w", "1"]).unwrap()
    }

    fn example_g(gf: &Gf) -> PolyMatrix {
        let p = |s: &[&str]| -> Poly { s.iter().map(|x| gf.parse(x).unwrap()).collect() };
        PolyMatrix::from_rows(vec![
            vec![p(&["w^62", "w^57", "1"]), vec![]],
            vec![vec![], p(&["w^62", "w^57", "1"])],
            vec![p(&["w^54", "w^44", "w"]), p(&["w^21", "w^17", "1"])],
        ])
        .unwrap()
    }

    #[test]
    fn params_and_bounds() {
        let p = CodeParams::new(3, 2, 2).unwrap();
        assert_eq!(p.l(), 3);
        assert_eq!(p.coldist_bound(3), 5);
        assert_eq!(p.singleton_bound(), 5);
        assert_eq!(CodeParams::new(2, 1, 0).unwrap().singleton_bound(), 2);
        assert!(CodeParams::new(2, 2, 0).is_err());
        assert!(CodeParams::new(2, 0, 0).is_err());
    }

    #[test]
    fn expand_examples() {
        let gf = Gf::shared(64).unwrap();
        let g = example_g(&gf);
        let e = expand(&g);
        assert_eq!(e.len(), 3);
        let w = |t: &str| gf.parse(t).unwrap();
        assert_eq!((e[0].get(0, 0), e[1].get(0, 0), e[2].get(0, 0)), (w("w^62"), w("w^57"), w("1")));
        assert_eq!(expand(&PolyMatrix::zeros(2, 2)), vec![DenseMatrix::zeros(2, 2)]);
        assert_eq!(PolyMatrix::from_coefficients(&e).unwrap(), g);
        assert_eq!(g.column_degrees(), vec![Some(2), Some(2)]);
        assert_eq!(g.complexity(&gf), Some(4));
    }

    #[test]
    fn sliding_shapes() {
        let gf = Gf::shared(64).unwrap();
        let g = example_g(&gf);
        assert_eq!(sliding(&g, 0, Orientation::Generator), g.coefficient(0));
        let g3 = sliding(&g, 3, Orientation::Generator);
        assert_eq!((g3.rows(), g3.cols()), (12, 8));
        // Single column: the banded convolution matrix.
        let one = PolyMatrix::from_rows(vec![vec![vec![Elem::ONE, gf.exp(1)]]]).unwrap();
        let band = sliding(&one, 2, Orientation::Generator);
        assert_eq!(band.format(&gf), "1, 0, 0\nw, 1, 0\n0, w, 1");
    }

    #[test]
    fn example_extraction() {
        let t = example_t();
        let gf = t.field().clone();
        let params = CodeParams::new(3, 2, 2).unwrap();
        let out = extract_mdp(&t, params, params.l(), true).unwrap();
        assert_eq!(out.row_indices, vec![2, 4, 6, 8]);
        assert_eq!(out.col_indices, (1..=8).collect::<Vec<_>>());
        let expected = "\
1, 0, 0, 0, w, 1, 0, 0, 0, 0, 0, 0
0, 1, 0, 0, w^33, w^9, w, 1, 0, 0, 0, 0
0, 0, 1, 0, w^9, w^33, w^33, w^9, w, 1, 0, 0
0, 0, 0, 1, 1, w, w^9, w^33, w^33, w^9, w, 1";
        assert_eq!(out.assembled.format(&gf), expected);
        assert!(out.max_span.holds);
        assert!(matches!(extract_mdp(&t, params, 4, true), Err(Error::TooSmall { needed: 10, have: 8 })));
    }

    #[test]
    fn smallest_extraction() {
        let t = LtToeplitz::parse(Gf::shared(5).unwrap(), &["2", "3"]).unwrap();
        let out = extract_mdp(&t, CodeParams::new(2, 1, 0).unwrap(), 0, true).unwrap();
        assert_eq!(out.t_prime.format(t.field()), "2");
        assert!(out.max_span.holds);
        let bad = LtToeplitz::parse(Gf::shared(2).unwrap(), &["1", "1", "1"]).unwrap();
        assert!(matches!(extract_mdp(&bad, CodeParams::new(2, 1, 0).unwrap(), 1, true), Err(Error::NotSuperregular { .. })));
    }

    #[test]
    fn max_span_basics() {
        let gf = Gf::shared(5).unwrap();
        let m = DenseMatrix::identity(3).hcat(&DenseMatrix::zeros(3, 3)).unwrap();
        for d in 1..=3 {
            assert!(max_span_property(&gf, &m, 3, d).unwrap().holds);
        }
        assert!(max_span_property(&gf, &m, 3, 4).is_err());
        let sr = LtToeplitz::parse(Gf::shared(5).unwrap(), &["1", "1", "3"]).unwrap();
        assert!(is_superregular(&sr).superregular);
        assert!(superregular_via_max_span(&sr));
        let not = LtToeplitz::parse(Gf::shared(5).unwrap(), &["1", "1", "1"]).unwrap();
        assert!(!superregular_via_max_span(&not));
    }

    fn random_pair(gf: &Gf, n: usize, k: usize, deg: usize, rng: &mut ChaCha8Rng) -> (PolyMatrix, PolyMatrix) {
        // H^T = [A | I], G = [I ; -A].
        let r = n - k;
        let mut a = PolyMatrix::zeros(r, k);
        for i in 0..r {
            for c in 0..k {
                let p: Poly = (0..=deg).map(|_| gf.elem(rng.gen_range(0..gf.order() as u32)).unwrap()).collect();
                a.set(i, c, p);
            }
        }
        let mut ht = PolyMatrix::zeros(r, n);
        let mut g = PolyMatrix::zeros(n, k);
        for i in 0..r {
            for c in 0..k {
                ht.set(i, c, a.get(i, c).clone());
                g.set(k + i, c, poly::neg(gf, a.get(i, c)));
            }
            ht.set(i, k + i, vec![Elem::ONE]);
        }
        for c in 0..k {
            g.set(c, c, vec![Elem::ONE]);
        }
        (ht.transpose(), g)
    }

    #[test]
    fn sliding_duality_and_distance_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4] {
            let gf = Gf::shared(q).unwrap();
            for _ in 0..6 {
                let (n, k) = [(2, 1), (3, 1), (3, 2)][rng.gen_range(0..3)];
                let (h, g) = random_pair(&gf, n, k, rng.gen_range(0..=2), &mut rng);
                assert!(h.transpose().mul(&gf, &g).unwrap().is_zero());
                let mut prev = 0;
                for j in 0..=2 {
                    let hj = sliding(&h, j, Orientation::ParityTranspose);
                    let gj = sliding(&g, j, Orientation::Generator);
                    assert!(hj.mul(&gf, &gj).unwrap().is_zero());
                    let d = column_distance(&gf, &g, j, 1 << 20).unwrap();
                    assert_eq!(d, column_distance_parity(&gf, &h, j));
                    assert_eq!(d, column_distance_dual(&gf, &g, j).unwrap());
                    assert!(d >= prev && d <= (n - k) * (j + 1) + 1);
                    prev = d;
                }
            }
        }
    }

    #[test]
    fn example_generator_profile() {
        let gf = Gf::shared(64).unwrap();
        let g = example_g(&gf);
        let r = mdp_certify(&gf, &g, CodeParams::new(3, 2, 2).unwrap(), 1 << 16).unwrap();
        assert_eq!(r.method, DistanceMethod::Dual);
        assert_eq!(r.profile, vec![2, 3, 4, 4]);
        assert_eq!(r.bounds, vec![2, 3, 4, 5]);
        assert!(!r.mdp && r.monotone);
        assert_eq!(r.actual_complexity, Some(4));
        let direct: Vec<usize> = (0..=1).map(|j| column_distance(&gf, &g, j, 1 << 20).unwrap()).collect();
        assert_eq!(direct, r.profile[..2]);
    }

    #[test]
    fn extracted_parity_check_is_mdp() {
        // H^T(s) = [1 | Ĥ(s)] with Ĥ_i the 1x2 blocks of the first block column of T'.
        let gf = Gf::shared(64).unwrap();
        let p = |s: &[&str]| -> Poly { s.iter().map(|x| gf.parse(x).unwrap()).collect() };
        let ht = PolyMatrix::from_rows(vec![vec![vec![Elem::ONE], p(&["w", "w^33", "w^9", "1"]), p(&["1", "w^9", "w^33", "w"])]]).unwrap();
        let h = ht.transpose();
        let profile: Vec<usize> = (0..=3).map(|j| column_distance_parity(&gf, &h, j)).collect();
        assert_eq!(profile, vec![2, 3, 4, 5]);
    }

    #[test]
    fn block_code_distance() {
        // [n=3, k=1] repetition code over GF(2): distance 3.
        let gf = Gf::shared(2).unwrap();
        let g = PolyMatrix::from_rows(vec![vec![vec![Elem::ONE]]; 3]).unwrap();
        assert_eq!(column_distance(&gf, &g, 0, 100).unwrap(), 3);
        let r = mdp_certify(&gf, &g, CodeParams::new(3, 1, 0).unwrap(), 100).unwrap();
        assert_eq!(r.l, 0);
        assert!(r.mdp);
        assert!(matches!(column_distance(&gf, &g, 40, 100), Err(Error::BudgetExceeded { .. })));
    }
}
