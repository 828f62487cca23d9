//! Exact arithmetic in GF(p^e).
//!
//! Elements are stored as their polynomial-basis coefficient vector packed
//! into an integer, `c0 + c1*p + ... + c_{e-1}*p^{e-1}`. Multiplication,
//! inversion and powers go through discrete-log/antilog tables built from the
//! designated primitive element, so fields are limited to `q <= 2^16`.
//!
//! Text notation: `0`, `w^k` (power of the primitive element), plain residues
//! for prime fields (and prime-subfield constants in extension fields), and
//! polynomial-basis vectors `[c0,c1,...]`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element, encoded as its packed polynomial-basis coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The packed coefficient encoding.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// How the defining polynomial is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modulus {
    /// Smallest monic irreducible (ordered by packed coefficients, highest
    /// degree most significant) for which `x` is primitive. For prime fields
    /// this is `x - g` with `g` the smallest generator.
    Default,
    /// Explicit coefficients, constant term first, monic of degree `e`.
    Coeffs(Vec<u32>),
}

/// The finite field GF(p^e) with a verified primitive element.
#[derive(Clone)]
pub struct Gf {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    // exp[k] = primitive^k, doubled so that log a + log b never needs a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.e == other.e
            && self.modulus == other.modulus
            && self.primitive == other.primitive
    }
}

impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}, mod={:?}, w={})", self.p, self.e, self.modulus, self.primitive.0)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q` as `p^e` when it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

// Dense polynomials over GF(p), constant term first.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = *r.last().unwrap();
            if top != 0 {
                let f = top * lead_inv % p;
                let shift = r.len() - 1 - dm;
                for (i, &c) in m.iter().enumerate() {
                    let idx = shift + i;
                    r[idx] = (r[idx] + p - f * c % p) % p;
                }
            }
            r.pop();
        }
        if r.is_empty() {
            r.push(0);
        }
        trim(&mut r);
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut k = p as u64 - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut div = vec![0u32; d + 1];
                let mut c = code;
                for slot in div.iter_mut().take(d) {
                    *slot = (c % p as u64) as u32;
                    c /= p as u64;
                }
                div[d] = 1;
                if is_zero(&rem(m, &div, p)) {
                    return false;
                }
            }
        }
        true
    }
}

impl Gf {
    /// Builds GF(p^e). With an explicit modulus the primitive element is `x`
    /// when `x` is primitive, otherwise the smallest generator in code order.
    pub fn new(p: u32, e: u32, modulus: Modulus) -> Result<Gf> {
        Self::build(p, e, modulus, None)
    }

    /// Builds GF(p^e) with an explicitly designated primitive element.
    pub fn with_primitive(p: u32, e: u32, modulus: Modulus, primitive: u32) -> Result<Gf> {
        Self::build(p, e, modulus, Some(primitive))
    }

    /// GF(q) with the default modulus.
    pub fn from_order(q: u64) -> Result<Gf> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Gf::new(p, e, Modulus::Default)
    }

    /// Shorthand for `Arc::new(Gf::from_order(q)?)`.
    pub fn shared(q: u64) -> Result<Arc<Gf>> {
        Ok(Arc::new(Gf::from_order(q)?))
    }

    fn build(p: u32, e: u32, modulus: Modulus, primitive: Option<u32>) -> Result<Gf> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::BadModulus { expected: 0, got: vec![] });
        }
        let q64 = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER);
        let q = q64.ok_or(Error::FieldTooLarge { p, e })? as u32;

        let modulus = match modulus {
            Modulus::Coeffs(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus { expected: e, got: m });
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(m));
                }
                m
            }
            Modulus::Default => Self::default_modulus(p, e)?,
        };

        let x_code = if e == 1 { (p - modulus[0]) % p } else { p };
        let candidates: Vec<u32> = match primitive {
            Some(g) => vec![g],
            None => std::iter::once(x_code).chain(1..q).collect(),
        };
        for g in candidates {
            if g == 0 || g >= q {
                continue;
            }
            if let Some(exp) = Self::power_table(p, e, q, &modulus, g) {
                return Ok(Self::from_tables(p, e, q, modulus, Elem(g), exp));
            }
        }
        Err(Error::NoPrimitiveRoot(match primitive {
            Some(g) => format!("element with code {g} does not generate GF({q})*"),
            None => format!("GF({q})"),
        }))
    }

    fn default_modulus(p: u32, e: u32) -> Result<Vec<u32>> {
        if e == 1 {
            let g = (1..p)
                .find(|&g| Self::power_table(p, 1, p, &[0, 1], g).is_some())
                .ok_or_else(|| Error::NoPrimitiveRoot(format!("GF({p})")))?;
            return Ok(vec![(p - g) % p, 1]);
        }
        let count = (p as u64).pow(e);
        for code in 0..count {
            let mut m = vec![0u32; e as usize + 1];
            let mut c = code;
            for slot in m.iter_mut().take(e as usize) {
                *slot = (c % p as u64) as u32;
                c /= p as u64;
            }
            m[e as usize] = 1;
            if m[0] == 0 || !poly::is_irreducible(&m, p) {
                continue;
            }
            if Self::power_table(p, e, count as u32, &m, p).is_some() {
                return Ok(m);
            }
        }
        Err(Error::NoPrimitiveRoot(format!("no primitive polynomial of degree {e} over GF({p})")))
    }

    fn unpack(p: u32, e: u32, mut code: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(e as usize);
        for _ in 0..e {
            v.push(code % p);
            code /= p;
        }
        v
    }

    fn pack(p: u32, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// Successive powers of `g` by polynomial multiplication; `None` unless
    /// `g` has multiplicative order exactly q-1.
    fn power_table(p: u32, e: u32, q: u32, modulus: &[u32], g: u32) -> Option<Vec<u32>> {
        let gpoly = {
            let mut v = Self::unpack(p, e, g);
            poly::trim(&mut v);
            v
        };
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut cur = vec![1u32];
        for k in 0..q - 1 {
            let mut padded = cur.clone();
            padded.resize(e as usize, 0);
            let code = Self::pack(p, &padded);
            if k > 0 && code == 1 {
                return None;
            }
            exp.push(code);
            cur = poly::mul_mod(&cur, &gpoly, modulus, p);
        }
        (Self::pack(p, &{
            let mut c = cur;
            c.resize(e as usize, 0);
            c
        }) == 1)
            .then_some(exp)
    }

    fn from_tables(p: u32, e: u32, q: u32, modulus: Vec<u32>, primitive: Elem, exp: Vec<u32>) -> Gf {
        let mut log = vec![u32::MAX; q as usize];
        for (k, &c) in exp.iter().enumerate() {
            log[c as usize] = k as u32;
        }
        let mut doubled = exp.clone();
        doubled.extend_from_slice(&exp);
        let neg = (0..q)
            .map(|c| {
                let digits: Vec<u32> = Self::unpack(p, e, c).iter().map(|&d| (p - d) % p).collect();
                Self::pack(p, &digits)
            })
            .collect();
        let mut gf = Gf { p, e, q, modulus, primitive, exp: doubled, log, neg, add_table: None };
        if p != 2 && e > 1 && q <= 1024 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = gf.add_digits(a, b) as u16;
                }
            }
            gf.add_table = Some(t);
        }
        gf
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element from its packed code; fails if the code is not below q.
    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.q {
            Ok(Elem(code))
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Checks that `a` can belong to this field.
    pub fn check(&self, a: Elem) -> Result<Elem> {
        self.elem(a.0)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(Elem)
    }

    /// Nonzero elements in search order: increasing residue for prime
    /// fields, increasing discrete log for extension fields.
    pub fn nonzero_in_order(&self) -> Vec<Elem> {
        if self.e == 1 {
            (1..self.q).map(Elem).collect()
        } else {
            self.exp[..self.q as usize - 1].iter().map(|&c| Elem(c)).collect()
        }
    }

    /// Position in the canonical total order: residue order for prime fields,
    /// discrete-log order with zero last for extension fields.
    pub fn order_key(&self, a: Elem) -> u32 {
        if self.e == 1 {
            a.0
        } else if a.0 == 0 {
            self.q - 1
        } else {
            self.log[a.0 as usize]
        }
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        Self::unpack(self.p, self.e, a.0)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Syntax(format!("bad coefficient vector {coeffs:?}")));
        }
        Ok(Elem(Self::pack(self.p, coeffs)))
    }

    /// Element of the prime subfield with residue `n mod p`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else if self.e == 1 {
            let s = a.0 + b.0;
            Elem(if s >= self.q { s - self.q } else { s })
        } else if let Some(t) = &self.add_table {
            Elem(t[(a.0 * self.q + b.0) as usize] as u32)
        } else {
            Elem(self.add_digits(a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of a known-nonzero element.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        let l = self.log[a.0 as usize];
        Elem(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`; negative exponents go through the inverse.
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem> {
        if a.0 == 0 {
            return match k.signum() {
                0 => Ok(Elem::ONE),
                1 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = (self.q - 1) as i64;
        let l = (self.log[a.0 as usize] as i64 * k.rem_euclid(n)).rem_euclid(n);
        Ok(Elem(self.exp[l as usize]))
    }

    /// `w^k` for the primitive element `w`, exponent reduced mod q-1.
    pub fn exp(&self, k: i64) -> Elem {
        Elem(self.exp[k.rem_euclid((self.q - 1) as i64) as usize])
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// The Frobenius power `a^(p^i)`, `i` taken mod e.
    pub fn frobenius(&self, a: Elem, i: i64) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let i = i.rem_euclid(self.e as i64) as u32;
        let n = (self.q - 1) as u64;
        let k = self.log[a.0 as usize] as u64 * (self.p as u64).pow(i) % n;
        Elem(self.exp[k as usize])
    }

    /// Polynomial-basis product, independent of the log tables.
    pub fn mul_poly_basis(&self, a: Elem, b: Elem) -> Elem {
        let mut x = self.coeffs(a);
        let mut y = self.coeffs(b);
        poly::trim(&mut x);
        poly::trim(&mut y);
        let mut r = poly::mul_mod(&x, &y, &self.modulus, self.p);
        r.resize(self.e as usize, 0);
        Elem(Self::pack(self.p, &r))
    }

    /// Canonical text: residues for prime fields, `0`/`1`/`w`/`w^k` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.e == 1 || a.0 == 0 {
            return a.0.to_string();
        }
        match self.log[a.0 as usize] {
            0 => "1".to_string(),
            1 => "w".to_string(),
            k => format!("w^{k}"),
        }
    }

    /// Polynomial-basis text `[c0,c1,...]`.
    pub fn format_poly(&self, a: Elem) -> String {
        let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses any accepted notation; `w^k` exponents reduce mod q-1.
    pub fn parse(&self, text: &str) -> Result<Elem> {
        self.parse_with(text, false)
    }

    /// Like [`Gf::parse`] but rejects exponents outside `0..=q-2`.
    pub fn parse_strict(&self, text: &str) -> Result<Elem> {
        self.parse_with(text, true)
    }

    fn parse_with(&self, text: &str, strict: bool) -> Result<Elem> {
        let t = text.trim();
        let syntax = || Error::Syntax(format!("cannot parse element '{t}'"));
        if t.is_empty() {
            return Err(syntax());
        }
        if let Some(rest) = t.strip_prefix('w').or_else(|| t.strip_prefix('ω')) {
            let rest = rest.trim();
            let k: i64 = if rest.is_empty() {
                1
            } else {
                let digits = rest.strip_prefix('^').ok_or_else(syntax)?.trim();
                let digits = digits.trim_start_matches('{').trim_end_matches('}');
                digits.parse().map_err(|_| syntax())?
            };
            if strict && !(0..(self.q as i64 - 1)).contains(&k) {
                return Err(Error::ExponentOutOfRange(k));
            }
            return Ok(self.exp(k));
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| syntax()))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coeffs);
        }
        let n: u32 = t.parse().map_err(|_| syntax())?;
        if n < self.p {
            Ok(Elem(n))
        } else {
            Err(Error::Syntax(format!("residue {n} not below p={}", self.p)))
        }
    }

    /// `GF p=<p> e=<e> mod=<c0,...,ce>`
    pub fn header(&self) -> String {
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("GF p={} e={} mod={}", self.p, self.e, m.join(","))
    }

    pub fn parse_header(line: &str) -> Result<Gf> {
        let bad = |msg: &str| Error::Syntax(format!("field header '{line}': {msg}"));
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("GF") {
            return Err(bad("expected 'GF'"));
        }
        let (mut p, mut e, mut m) = (None, None, None);
        for tok in tokens {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match k {
                "p" => p = Some(v.parse::<u32>().map_err(|_| bad("bad p"))?),
                "e" => e = Some(v.parse::<u32>().map_err(|_| bad("bad e"))?),
                "mod" => {
                    m = Some(
                        v.split(',')
                            .map(|c| c.parse::<u32>().map_err(|_| bad("bad modulus")))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                _ => return Err(bad("unknown key")),
            }
        }
        let p = p.ok_or_else(|| bad("missing p"))?;
        let e = e.ok_or_else(|| bad("missing e"))?;
        let modulus = m.map(Modulus::Coeffs).unwrap_or(Modulus::Default);
        Gf::new(p, e, modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(p: u32, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = x * a % p;
            k += 1;
        }
        k
    }

    #[test]
    fn gf64_from_paper_modulus() {
        let gf = Gf::new(2, 6, Modulus::Coeffs(vec![1, 1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(gf.primitive(), Elem(2));
        let w = gf.primitive();
        assert_eq!(gf.pow(w, 63).unwrap(), gf.one());
        assert_eq!(gf.mul(gf.exp(9), gf.exp(57)), gf.exp(3));
        assert_eq!(gf.mul_poly_basis(gf.exp(9), gf.exp(57)), gf.exp(3));
        // x^6 = x + 1
        assert_eq!(gf.exp(6), gf.from_coeffs(&[1, 1]).unwrap());
    }

    #[test]
    fn default_modulus_matches_paper_for_gf64() {
        let gf = Gf::from_order(64).unwrap();
        assert_eq!(gf.modulus(), &[1, 1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn gf7_primitive_is_smallest_generator() {
        let gf = Gf::new(7, 1, Modulus::Default).unwrap();
        let smallest = (1..7).find(|&a| brute_order(7, a) == 6).unwrap();
        assert_eq!(smallest, 3);
        assert_eq!(gf.primitive(), Elem(3));
        assert_eq!(gf.inv(Elem(3)).unwrap(), Elem(5));
    }

    #[test]
    fn reducible_and_bad_inputs() {
        assert!(matches!(
            Gf::new(2, 6, Modulus::Coeffs(vec![1, 0, 0, 0, 0, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        assert_eq!(Gf::new(6, 1, Modulus::Default).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(Gf::new(2, 3, Modulus::Coeffs(vec![1, 1, 1])), Err(Error::BadModulus { .. })));
        assert!(matches!(Gf::new(2, 17, Modulus::Default), Err(Error::FieldTooLarge { .. })));
        // x^2+1 over GF(3) is irreducible but x has order 4
        let gf9 = Gf::new(3, 2, Modulus::Coeffs(vec![1, 0, 1])).unwrap();
        assert_ne!(gf9.primitive(), Elem(3));
        assert!(matches!(
            Gf::with_primitive(3, 2, Modulus::Coeffs(vec![1, 0, 1]), 3),
            Err(Error::NoPrimitiveRoot(_))
        ));
    }

    #[test]
    fn division_by_zero() {
        let gf = Gf::from_order(7).unwrap();
        assert_eq!(gf.inv(Elem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(gf.pow(Elem::ZERO, -1), Err(Error::DivisionByZero));
        assert_eq!(gf.pow(Elem::ZERO, 0).unwrap(), Elem::ONE);
        assert_eq!(gf.pow(Elem(3), -1).unwrap(), Elem(5));
    }

    #[test]
    fn parse_and_format() {
        let gf64 = Gf::from_order(64).unwrap();
        assert_eq!(gf64.parse("w^33").unwrap(), gf64.exp(33));
        assert_eq!(gf64.parse("0").unwrap(), Elem::ZERO);
        assert_eq!(gf64.parse("w").unwrap(), gf64.primitive());
        assert_eq!(gf64.parse("w^66").unwrap(), gf64.exp(3));
        assert_eq!(gf64.parse_strict("w^66"), Err(Error::ExponentOutOfRange(66)));
        assert_eq!(gf64.parse("[0,1]").unwrap(), gf64.primitive());
        assert_eq!(gf64.format(gf64.exp(33)), "w^33");
        assert_eq!(gf64.format(gf64.one()), "1");
        assert!(matches!(gf64.parse("v^2"), Err(Error::Syntax(_))));
        let gf7 = Gf::from_order(7).unwrap();
        assert_eq!(gf7.parse("5").unwrap(), Elem(5));
        assert!(gf7.parse("7").is_err());
        assert_eq!(gf7.format(Elem(5)), "5");
    }

    #[test]
    fn header_round_trip() {
        for q in [2u64, 7, 9, 16, 64, 125] {
            let gf = Gf::from_order(q).unwrap();
            assert_eq!(Gf::parse_header(&gf.header()).unwrap(), gf);
        }
        assert_eq!(Gf::from_order(64).unwrap().header(), "GF p=2 e=6 mod=1,1,0,0,0,0,1");
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64] {
            let gf = Gf::from_order(q).unwrap();
            let els: Vec<Elem> = gf.elements().collect();
            for &a in &els {
                assert_eq!(gf.add(a, gf.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(gf.mul(a, gf.inv(a).unwrap()), Elem::ONE);
                }
                assert_eq!(gf.mul(a, Elem::ZERO), Elem::ZERO);
                assert_eq!(gf.mul(a, Elem::ONE), a);
                for &b in &els {
                    assert_eq!(gf.mul(a, b), gf.mul_poly_basis(a, b), "q={q}");
                    let frob = |x| gf.frobenius(x, 1);
                    assert_eq!(frob(gf.add(a, b)), gf.add(frob(a), frob(b)));
                }
            }
            // associativity and distributivity on a stride to keep q=64 cheap
            let step = (els.len() / 16).max(1);
            for &a in els.iter().step_by(step) {
                for &b in els.iter().step_by(step) {
                    for &c in &els {
                        assert_eq!(gf.mul(gf.mul(a, b), c), gf.mul(a, gf.mul(b, c)));
                        assert_eq!(gf.add(gf.add(a, b), c), gf.add(a, gf.add(b, c)));
                        assert_eq!(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn digit_add_agrees_with_table() {
        let gf = Gf::from_order(9).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(gf.add(Elem(a), Elem(b)).0, gf.add_digits(a, b));
            }
        }
        let big = Gf::from_order(2187).unwrap(); // 3^7, no table
        assert!(big.add_table.is_none());
        let a = big.exp(100);
        assert_eq!(big.sub(big.add(a, a), a), a);
    }
}
