//! The binomial lower-triangular Toeplitz matrix `X^{γ-1}` (X bidiagonal
//! with ones) and its reductions modulo primes.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::bounds::binomial;
use crate::error::{Error, Result};
use crate::field::{is_prime, Gf};
use crate::toeplitz::{is_superregular, is_superregular_incremental, LtToeplitz};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PascalMatrix {
    /// Matrix dimension.
    pub gamma: usize,
    /// First column `binom(γ-1, k)`, `k = 0..γ-1`.
    pub column: Vec<BigInt>,
}

/// Integer `γ x γ` matrix power of the bidiagonal all-ones matrix.
pub fn bidiagonal_power(gamma: usize) -> Vec<Vec<BigInt>> {
    let mut acc: Vec<Vec<BigInt>> =
        (0..gamma).map(|i| (0..gamma).map(|j| BigInt::from((i == j) as u8)).collect()).collect();
    for _ in 1..gamma {
        // acc <- X * acc: row i becomes row i + row i-1.
        for i in (1..gamma).rev() {
            let (head, tail) = acc.split_at_mut(i);
            for (t, h) in tail[0].iter_mut().zip(&head[i - 1]) {
                *t += h;
            }
        }
    }
    acc
}

/// `X^{γ-1}`, checked against the binomial closed form.
pub fn pascal_power(gamma: usize) -> Result<PascalMatrix> {
    if gamma < 1 {
        return Err(Error::InvalidConfig("gamma must be >= 1".into()));
    }
    let m = bidiagonal_power(gamma);
    let column: Vec<BigInt> = (0..gamma).map(|i| m[i][0].clone()).collect();
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let expected = if i >= j { binomial((gamma - 1) as u64, (i - j) as u64) } else { BigInt::zero() };
            assert_eq!(*v, expected, "matrix power disagrees with the binomial form at ({i}, {j})");
        }
    }
    Ok(PascalMatrix { gamma, column })
}

/// Entrywise reduction modulo the prime `p`.
pub fn pascal_mod_p(gamma: usize, p: u64) -> Result<LtToeplitz> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pm = pascal_power(gamma)?;
    reduce(&pm, p)
}

fn reduce(pm: &PascalMatrix, p: u64) -> Result<LtToeplitz> {
    let gf = Gf::shared(p)?;
    let bp = BigInt::from(p);
    let col = pm
        .column
        .iter()
        .map(|v| gf.elem((v % &bp).to_u32().expect("residue below p")))
        .collect::<Result<Vec<_>>>()?;
    LtToeplitz::new(gf, col)
}

#[derive(Clone, Debug)]
pub struct PascalPrime {
    pub p: u64,
    pub matrix: LtToeplitz,
    pub failed: Vec<u64>,
}

/// Smallest prime `p <= cap` for which the reduction is superregular.
pub fn pascal_min_prime(gamma: usize, cap: u64) -> Result<PascalPrime> {
    if gamma < 2 {
        return Err(Error::InvalidConfig("gamma must be >= 2".into()));
    }
    let pm = pascal_power(gamma)?;
    let mut failed = Vec::new();
    for p in (2..=cap).filter(|&p| is_prime(p)) {
        let t = reduce(&pm, p)?;
        if is_superregular_incremental(t.field(), t.col()) {
            debug_assert!(is_superregular(&t).superregular);
            return Ok(PascalPrime { p, matrix: t, failed });
        }
        failed.push(p);
    }
    Err(Error::CapExceeded { cap, tried: failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(pm: &PascalMatrix) -> Vec<u64> {
        pm.column.iter().map(|v| v.to_u64().unwrap()).collect()
    }

    #[test]
    fn powers() {
        assert_eq!(col(&pascal_power(2).unwrap()), vec![1, 1]);
        assert_eq!(col(&pascal_power(4).unwrap()), vec![1, 3, 3, 1]);
        assert_eq!(col(&pascal_power(6).unwrap()), vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(col(&pascal_power(1).unwrap()), vec![1]);
    }

    #[test]
    fn reductions() {
        assert_eq!(pascal_mod_p(3, 2).unwrap().format_col(), "1, 0, 1");
        assert_eq!(pascal_mod_p(4, 5).unwrap().format_col(), "1, 3, 3, 1");
        assert_eq!(pascal_mod_p(3, 3).unwrap().format_col(), "1, 2, 1");
        assert_eq!(pascal_mod_p(3, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn min_primes() {
        assert_eq!(pascal_min_prime(2, 100).unwrap().p, 2);
        let three = pascal_min_prime(3, 100).unwrap();
        assert_eq!((three.p, three.failed.clone()), (5, vec![2, 3]));
        assert!(is_superregular(&three.matrix).superregular);
        assert!(!is_superregular(&pascal_mod_p(3, 2).unwrap()).superregular);
        assert!(!is_superregular(&pascal_mod_p(3, 3).unwrap()).superregular);
        assert!(matches!(pascal_min_prime(3, 3), Err(Error::CapExceeded { .. })));
    }
}
