#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srkit_core::code::{Poly, PolyMatrix};
use srkit_core::{Elem, Gf, LtToeplitz};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elem(gf: &Gf, rng: &mut impl Rng) -> Elem {
    gf.elem(rng.gen_range(0..gf.order())).unwrap()
}

pub fn random_nonzero(gf: &Gf, rng: &mut impl Rng) -> Elem {
    gf.elem(rng.gen_range(1..gf.order())).unwrap()
}

pub fn random_toeplitz(gf: &Arc<Gf>, gamma: usize, rng: &mut impl Rng) -> LtToeplitz {
    let col = (0..=gamma).map(|_| random_elem(gf, rng)).collect();
    LtToeplitz::new(gf.clone(), col).unwrap()
}

pub fn random_poly(gf: &Gf, max_deg: usize, rng: &mut impl Rng) -> Poly {
    (0..=rng.gen_range(0..=max_deg)).map(|_| random_elem(gf, rng)).collect()
}

pub fn random_poly_matrix(gf: &Gf, rows: usize, cols: usize, max_deg: usize, rng: &mut impl Rng) -> PolyMatrix {
    let m = (0..rows).map(|_| (0..cols).map(|_| random_poly(gf, max_deg, rng)).collect()).collect();
    PolyMatrix::from_rows(m).unwrap()
}

/// Uniform choice from a non-empty slice.
pub fn pick<'a, T>(items: &'a [T], rng: &mut impl Rng) -> &'a T {
    items.choose(rng).unwrap()
}
