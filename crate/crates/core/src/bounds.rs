//! Counting behind the field-size bound `N_γ = (C_{γ-1} + binom(γ-1, ⌊(γ-1)/2⌋)) / 2`.
//!
//! `S_{i,γ}` and `T_{i,γ}` are the strictly increasing integer sequences
//! `0 = x_0 < x_1 < ... < x_{i+1} = γ` with, respectively,
//! `s_j + s_{i-j+1} <= γ` for `j = 0..=⌈i/2⌉`, and nonnegative alternating
//! partial sums `Σ_{l<=m} (-1)^l (t_{l+1} - t_l)` for `m = 0..=i`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type StepSequence = Vec<i64>;

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductIdentity {
    pub gamma: u64,
    #[serde(serialize_with = "ser_display")]
    pub lhs: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub rhs: BigRational,
    pub equal: bool,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `Π_{1<=i<=j<=n} (2+i+j)/(i+j)`; the empty product is 1.
pub fn tableau_product(n: u64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 1..=n {
        for i in 1..=j {
            acc *= BigRational::new(BigInt::from(2 + i + j), BigInt::from(i + j));
        }
    }
    acc
}

/// Compares `Π_{1<=i<=j<=γ} (2+i+j)/(i+j)` with `binom(2(γ+1), γ+1) / (γ+2)`.
pub fn product_identity_check(gamma: u64) -> Result<ProductIdentity> {
    if gamma < 1 {
        return Err(Error::InvalidConfig("gamma must be >= 1".into()));
    }
    let lhs = tableau_product(gamma);
    let rhs = BigRational::new(binomial(2 * (gamma + 1), gamma + 1), BigInt::from(gamma + 2));
    let equal = lhs == rhs;
    Ok(ProductIdentity { gamma, lhs, rhs, equal })
}

fn is_step_sequence(x: &[i64], i: usize, gamma: i64) -> bool {
    x.len() == i + 2 && x[0] == 0 && x[i + 1] == gamma && x.windows(2).all(|w| w[0] < w[1])
}

pub fn in_s(s: &[i64], i: usize, gamma: i64) -> bool {
    is_step_sequence(s, i, gamma) && (0..=i.div_ceil(2)).all(|j| s[j] + s[i - j + 1] <= gamma)
}

pub fn in_t(t: &[i64], i: usize, gamma: i64) -> bool {
    if !is_step_sequence(t, i, gamma) {
        return false;
    }
    let mut sum = 0;
    for l in 0..=i {
        let step = t[l + 1] - t[l];
        sum += if l % 2 == 0 { step } else { -step };
        if sum < 0 {
            return false;
        }
    }
    true
}

fn all_sequences(i: usize, gamma: i64) -> impl Iterator<Item = StepSequence> {
    (1..gamma.max(1)).combinations(i).map(move |mid| {
        let mut v = Vec::with_capacity(i + 2);
        v.push(0);
        v.extend(mid);
        v.push(gamma);
        v
    })
}

/// `S_{i,γ}` in lexicographic order.
pub fn enumerate_s(i: usize, gamma: i64) -> Vec<StepSequence> {
    all_sequences(i, gamma).filter(|s| in_s(s, i, gamma)).collect()
}

/// `T_{i,γ}` in lexicographic order.
pub fn enumerate_t(i: usize, gamma: i64) -> Vec<StepSequence> {
    all_sequences(i, gamma).filter(|t| in_t(t, i, gamma)).collect()
}

/// `S_{i,γ} -> T_{i,γ}`: `t_{2j} = t_{2j-1} + s_j - s_{j-1}` and
/// `t_{2j+1} = t_{2j} + s_{i-j+1} - s_{i-j}`, with `t_{-1} = s_{-1} = 0`.
pub fn bijection_f(s: &[i64], gamma: i64) -> Result<StepSequence> {
    let i = s.len().checked_sub(2).ok_or_else(|| Error::MembershipViolation(s.to_vec()))?;
    if !in_s(s, i, gamma) {
        return Err(Error::MembershipViolation(s.to_vec()));
    }
    let sm = |k: i64| if k < 0 { 0 } else { s[k as usize] };
    let mut t: Vec<i64> = Vec::with_capacity(i + 2);
    for l in 0..=(i as i64 + 1) {
        let prev = if l == 0 { 0 } else { t[l as usize - 1] };
        let j = l / 2;
        let next = if l % 2 == 0 {
            prev + sm(j) - sm(j - 1)
        } else {
            prev + sm(i as i64 - j + 1) - sm(i as i64 - j)
        };
        t.push(next);
    }
    Ok(t)
}

/// `T_{i,γ} -> S_{i,γ}`: `s_j = s_{j-1} + t_{2j} - t_{2j-1}` upward from
/// `s_0` and `s_{i-j} = s_{i-j+1} - t_{2j+1} + t_{2j}` downward from
/// `s_{i+1} = γ`; both recursions meet at index `⌈i/2⌉`.
pub fn bijection_g(t: &[i64], gamma: i64) -> Result<StepSequence> {
    let i = t.len().checked_sub(2).ok_or_else(|| Error::MembershipViolation(t.to_vec()))?;
    if !in_t(t, i, gamma) {
        return Err(Error::MembershipViolation(t.to_vec()));
    }
    let tm = |k: i64| if k < 0 { 0 } else { t[k as usize] };
    let mid = i.div_ceil(2);
    let mut s = vec![0i64; i + 2];
    let mut prev = 0;
    for j in 0..=mid {
        let jj = j as i64;
        prev += tm(2 * jj) - tm(2 * jj - 1);
        s[j] = prev;
    }
    let from_below = s[mid];
    s[i + 1] = gamma;
    for j in 0..=i / 2 {
        let jj = j as i64;
        s[i - j] = s[i - j + 1] - tm(2 * jj + 1) + tm(2 * jj);
    }
    if s[mid] != from_below {
        return Err(Error::MembershipViolation(t.to_vec()));
    }
    Ok(s)
}

/// `binom(n, ⌊n/2⌋)`.
pub fn walk_count(n: u64) -> BigInt {
    binomial(n, n / 2)
}

/// Walks with steps ±1 from height 0 that never go below 0, counted by
/// dynamic programming over heights.
pub fn walk_count_dp(n: usize) -> BigInt {
    let mut ways = vec![BigInt::zero(); n + 2];
    ways[0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); n + 2];
        for h in 0..=n {
            if ways[h].is_zero() {
                continue;
            }
            next[h + 1] += &ways[h];
            if h > 0 {
                next[h - 1] += &ways[h];
            }
        }
        ways = next;
    }
    ways.into_iter().sum()
}

/// x-coordinates of the start, the direction changes and the end of a
/// walk given as ±1 steps. `None` for an empty or negative walk.
pub fn walk_to_sequence(steps: &[i8]) -> Option<StepSequence> {
    let mut height = 0i64;
    for &st in steps {
        height += st as i64;
        if height < 0 {
            return None;
        }
    }
    if steps.is_empty() {
        return None;
    }
    let mut seq = vec![0];
    for x in 1..steps.len() {
        if steps[x] != steps[x - 1] {
            seq.push(x as i64);
        }
    }
    seq.push(steps.len() as i64);
    Some(seq)
}

/// Inverse of [`walk_to_sequence`]: runs alternate up, down, up, ...
pub fn sequence_to_walk(t: &[i64]) -> Vec<i8> {
    let mut steps = Vec::new();
    for (l, w) in t.windows(2).enumerate() {
        let dir = if l % 2 == 0 { 1 } else { -1 };
        steps.extend(std::iter::repeat_n(dir, (w[1] - w[0]) as usize));
    }
    steps
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub gamma: u64,
    #[serde(serialize_with = "ser_display")]
    pub catalan_prev: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub walks: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub l_count: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub lprime_count: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub n: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub bound: BigInt,
}

/// Field orders above `N_γ` admit a `γ x γ` superregular matrix.
/// `|L_γ|` comes from the tableau product and `|L'_γ|` from the walk DP;
/// both are checked against the closed forms.
pub fn field_size_bound(gamma: u64) -> Result<BoundReport> {
    if gamma < 1 {
        return Err(Error::InvalidConfig("gamma must be >= 1".into()));
    }
    let catalan_prev = catalan(gamma - 1);
    let walks = walk_count(gamma - 1);
    let product = tableau_product(gamma.saturating_sub(2));
    assert!(product.is_integer(), "tableau count is an integer");
    let l_count = product.to_integer();
    let lprime_count = walk_count_dp((gamma - 1) as usize);
    assert_eq!(l_count, catalan_prev);
    assert_eq!(lprime_count, walks);
    let total = &l_count + &lprime_count;
    assert!((&total % 2u32).is_zero());
    let n: BigInt = total / 2u32;
    let bound = &n + 1u32;
    Ok(BoundReport { gamma, catalan_prev, walks, l_count, lprime_count, n, bound })
}

/// Parses `a..b` or `a..=b` (both inclusive) or a single value.
pub fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<u64>> {
    let bad = || Error::Syntax(format!("bad range '{text}'"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let v = num(text)?;
            Ok(v..=v)
        }
    }
}

impl BoundReport {
    pub fn bound_u64(&self) -> Option<u64> {
        self.bound.to_u64()
    }
}
