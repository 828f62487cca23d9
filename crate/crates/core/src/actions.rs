//! Symmetries of the set of superregular lower-triangular Toeplitz matrices.
//!
//! Inversion, diagonal conjugation `A -> D A D^-1` with `D = diag(1, α, ..., α^γ)`
//! and the Frobenius map preserve superregularity. Entrywise scaling by a
//! nonzero constant is included as a fourth symmetry: it multiplies every
//! `s x s` minor by `c^s`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Gf};
use crate::toeplitz::LtToeplitz;

/// One generator application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionLabel {
    Inverse,
    Scale(Elem),
    Frobenius(u32),
    GlobalScale(Elem),
}

impl ActionLabel {
    pub fn format(&self, gf: &Gf) -> String {
        match self {
            ActionLabel::Inverse => "inverse".into(),
            ActionLabel::Scale(a) => format!("scale({})", gf.format(*a)),
            ActionLabel::Frobenius(i) => format!("frobenius({i})"),
            ActionLabel::GlobalScale(c) => format!("gscale({})", gf.format(*c)),
        }
    }
}

/// Which generator kinds an orbit is closed under.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generators {
    pub inverse: bool,
    pub scale: bool,
    pub frobenius: bool,
    pub global_scale: bool,
}

impl Generators {
    pub const ALL: Generators = Generators { inverse: true, scale: true, frobenius: true, global_scale: true };
    /// The three symmetries not involving entrywise scaling.
    pub const PAPER: Generators = Generators { inverse: true, scale: true, frobenius: true, global_scale: false };

    /// Parses a comma-separated list such as `inverse,scale,frobenius,global-scale`.
    pub fn parse(text: &str) -> Result<Generators> {
        let mut g = Generators::default();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match part {
                "inverse" => g.inverse = true,
                "scale" => g.scale = true,
                "frobenius" => g.frobenius = true,
                "global-scale" | "gscale" => g.global_scale = true,
                "all" => g = Generators::ALL,
                other => return Err(Error::Syntax(format!("unknown generator '{other}'"))),
            }
        }
        Ok(g)
    }
}

/// `A^-1`, via `b_0 = a_0^-1`, `b_m = -a_0^-1 Σ_{i=1..m} a_i b_{m-i}`.
pub fn act_inverse(a: &LtToeplitz) -> Result<LtToeplitz> {
    let gf = a.field();
    let col = a.col();
    let inv0 = gf.inv(col[0]).map_err(|_| Error::Singular)?;
    let mut b: Vec<Elem> = Vec::with_capacity(col.len());
    b.push(inv0);
    for m in 1..col.len() {
        let mut s = Elem::ZERO;
        for i in 1..=m {
            s = gf.add(s, gf.mul(col[i], b[m - i]));
        }
        b.push(gf.neg(gf.mul(inv0, s)));
    }
    LtToeplitz::new(a.field().clone(), b)
}

/// Entry `k` becomes `α^k a_k`.
pub fn act_scale(alpha: Elem, a: &LtToeplitz) -> Result<LtToeplitz> {
    let gf = a.field();
    gf.check(alpha)?;
    if alpha.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let mut p = Elem::ONE;
    let col = a
        .col()
        .iter()
        .map(|&x| {
            let v = gf.mul(p, x);
            p = gf.mul(p, alpha);
            v
        })
        .collect();
    LtToeplitz::new(a.field().clone(), col)
}

/// Every entry raised to the power `p^i`; `i` is taken mod `e`.
pub fn act_frobenius(i: u32, a: &LtToeplitz) -> LtToeplitz {
    let gf = a.field();
    let i = i % gf.e();
    let col = a.col().iter().map(|&x| gf.frobenius(x, i as i64)).collect();
    LtToeplitz::new(a.field().clone(), col).expect("frobenius keeps entries in the field")
}

/// Every entry multiplied by `c`.
pub fn act_global_scale(c: Elem, a: &LtToeplitz) -> Result<LtToeplitz> {
    let gf = a.field();
    gf.check(c)?;
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let col = a.col().iter().map(|&x| gf.mul(c, x)).collect();
    LtToeplitz::new(a.field().clone(), col)
}

pub fn apply(label: ActionLabel, a: &LtToeplitz) -> Result<LtToeplitz> {
    match label {
        ActionLabel::Inverse => act_inverse(a),
        ActionLabel::Scale(alpha) => act_scale(alpha, a),
        ActionLabel::Frobenius(i) => Ok(act_frobenius(i, a)),
        ActionLabel::GlobalScale(c) => act_global_scale(c, a),
    }
}

#[derive(Clone, Debug)]
pub struct OrbitElement {
    pub matrix: LtToeplitz,
    /// Generators in application order (first applied first).
    pub word: Vec<ActionLabel>,
}

impl OrbitElement {
    /// Composition notation, last-applied generator leftmost; `id` when empty.
    pub fn format_word(&self) -> String {
        if self.word.is_empty() {
            return "id".into();
        }
        let gf = self.matrix.field();
        self.word.iter().rev().map(|l| l.format(gf)).collect::<Vec<_>>().join(" . ")
    }
}

impl fmt::Display for OrbitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  [{}]", self.matrix.format_col(), self.format_word())
    }
}

fn labels(gf: &Gf, gens: Generators) -> Vec<ActionLabel> {
    let mut out = Vec::new();
    if gens.inverse {
        out.push(ActionLabel::Inverse);
    }
    if gens.scale {
        out.extend(gf.nonzero_in_order().into_iter().skip(1).map(ActionLabel::Scale));
    }
    if gens.frobenius {
        out.extend((1..gf.e()).map(ActionLabel::Frobenius));
    }
    if gens.global_scale {
        out.extend(gf.nonzero_in_order().into_iter().skip(1).map(ActionLabel::GlobalScale));
    }
    out
}

/// Breadth-first closure of `{A}`; each element carries a shortest word.
/// Inversion is skipped on singular elements.
pub fn orbit(a: &LtToeplitz, gens: Generators) -> Vec<OrbitElement> {
    let gf = a.field();
    let moves = labels(gf, gens);
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut out = vec![OrbitElement { matrix: a.clone(), word: Vec::new() }];
    seen.insert(a.col().to_vec());
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for &mv in &moves {
            let Ok(next) = apply(mv, &out[idx].matrix) else { continue };
            if seen.insert(next.col().to_vec()) {
                let mut word = out[idx].word.clone();
                word.push(mv);
                out.push(OrbitElement { matrix: next, word });
                queue.push_back(out.len() - 1);
            }
        }
    }
    out
}

/// Orbit minimum under the entrywise comparison of `Gf::order_key`.
pub fn canonical_form(a: &LtToeplitz, gens: Generators) -> LtToeplitz {
    let gf = a.field().clone();
    orbit(a, gens)
        .into_iter()
        .map(|e| e.matrix)
        .min_by_key(|m| m.col().iter().map(|&x| gf.order_key(x)).collect::<Vec<_>>())
        .expect("orbit contains A")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{inverse, DenseMatrix};
    use crate::toeplitz::is_superregular;

    fn lt(q: u64, col: &[&str]) -> LtToeplitz {
        LtToeplitz::parse(Gf::shared(q).unwrap(), col).unwrap()
    }

    #[test]
    fn inverse_matches_dense_inverse() {
        let a = lt(3, &["1", "1", "2"]);
        let dense = inverse(a.field(), &a.to_dense()).unwrap();
        let b = act_inverse(&a).unwrap();
        assert_eq!(b.to_dense(), dense);
        assert_eq!(b.format_col(), "1, 2, 2");
        let id = LtToeplitz::identity(Gf::shared(5).unwrap(), 3).unwrap();
        assert_eq!(act_inverse(&id).unwrap(), id);
        assert_eq!(act_inverse(&lt(5, &["0", "1"])), Err(Error::Singular));
    }

    #[test]
    fn scale_and_frobenius_examples() {
        let a = lt(7, &["1", "1", "1"]);
        let two = a.field().elem(2).unwrap();
        assert_eq!(act_scale(two, &a).unwrap().format_col(), "1, 2, 4");
        assert_eq!(act_scale(Elem::ONE, &a).unwrap(), a);
        assert_eq!(act_scale(Elem::ZERO, &a), Err(Error::ZeroScalar));
        assert_eq!(act_global_scale(Elem::ZERO, &a), Err(Error::ZeroScalar));

        let b = lt(4, &["1", "w"]);
        assert_eq!(act_frobenius(1, &b).format_col(), "1, w^2");
        assert_eq!(act_frobenius(2, &b), b);
    }

    #[test]
    fn scale_is_diagonal_conjugation() {
        let gf = Gf::shared(9).unwrap();
        let a = LtToeplitz::new(gf.clone(), (0..5).map(|k| gf.exp(3 * k + 1)).collect()).unwrap();
        let alpha = gf.exp(5);
        let n = a.dim();
        let mut d = DenseMatrix::zeros(n, n);
        for k in 0..n {
            d.set(k, k, gf.pow(alpha, k as i64).unwrap());
        }
        let dinv = inverse(&gf, &d).unwrap();
        let conj = d.mul(&gf, &a.to_dense()).unwrap().mul(&gf, &dinv).unwrap();
        assert_eq!(act_scale(alpha, &a).unwrap().to_dense(), conj);
    }

    #[test]
    fn orbit_examples() {
        let a = lt(3, &["1", "1", "2"]);
        let inv_only = Generators { inverse: true, ..Default::default() };
        let o = orbit(&a, inv_only);
        assert_eq!(o.len(), 2);
        assert_eq!(o[1].format_word(), "inverse");

        let frob_only = Generators { frobenius: true, ..Default::default() };
        assert_eq!(orbit(&lt(7, &["1", "3", "2"]), frob_only).len(), 1);

        let gf = Gf::shared(16).unwrap();
        let scale_only = Generators { scale: true, ..Default::default() };
        let b = LtToeplitz::new(gf.clone(), vec![gf.exp(0), gf.exp(3), gf.exp(5)]).unwrap();
        assert_eq!(15 % orbit(&b, scale_only).len(), 0);

        let id = LtToeplitz::identity(gf, 3).unwrap();
        assert_eq!(canonical_form(&id, Generators::PAPER), id);
    }

    #[test]
    fn words_reproduce_elements() {
        let gf = Gf::shared(8).unwrap();
        let a = LtToeplitz::new(gf.clone(), vec![gf.exp(2), gf.exp(1), gf.exp(4)]).unwrap();
        for e in orbit(&a, Generators::ALL) {
            let mut m = a.clone();
            for &l in &e.word {
                m = apply(l, &m).unwrap();
            }
            assert_eq!(m, e.matrix);
            assert!(is_superregular(&e.matrix).superregular);
        }
        let c = canonical_form(&a, Generators::ALL);
        assert_eq!(canonical_form(&c, Generators::ALL), c);
        let s = act_scale(gf.exp(3), &a).unwrap();
        assert_eq!(canonical_form(&s, Generators::ALL), c);
    }

    #[test]
    fn parse_generators() {
        assert_eq!(Generators::parse("inverse,scale").unwrap(), Generators { inverse: true, scale: true, ..Default::default() });
        assert_eq!(Generators::parse("all").unwrap(), Generators::ALL);
        assert!(Generators::parse("bogus").is_err());
    }
}
