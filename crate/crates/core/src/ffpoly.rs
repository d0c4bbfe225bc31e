//! Polynomials over F2 and the finite fields F_{2^f}.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial over F2, bit i holding the coefficient of x^i.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct F2Poly {
    words: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn x() -> Self {
        Self::from_u64(2)
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = F2Poly { words: vec![bits] };
        p.trim();
        p
    }

    /// Builds from a coefficient list, constant term first (nonzero ⇔ odd).
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut p = Self::zero();
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                p.set(i, true);
            }
        }
        p
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some(64 * (self.words.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set(&mut self, i: usize, v: bool) {
        let w = i / 64;
        if w >= self.words.len() {
            if !v {
                return;
            }
            self.words.resize(w + 1, 0);
        }
        if v {
            self.words[w] |= 1 << (i % 64);
        } else {
            self.words[w] &= !(1 << (i % 64));
            self.trim();
        }
    }

    pub fn add(&self, other: &F2Poly) -> F2Poly {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        let mut p = F2Poly { words };
        p.trim();
        p
    }

    fn xor_shifted(&mut self, other: &F2Poly, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.trim();
    }

    pub fn mul(&self, other: &F2Poly) -> F2Poly {
        let mut acc = F2Poly::zero();
        if let Some(deg) = other.degree() {
            for i in 0..=deg {
                if other.bit(i) {
                    acc.xor_shifted(self, i);
                }
            }
        }
        acc
    }

    pub fn square(&self) -> F2Poly {
        let mut out = F2Poly::zero();
        if let Some(deg) = self.degree() {
            for i in 0..=deg {
                if self.bit(i) {
                    out.set(2 * i, true);
                }
            }
        }
        out
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, divisor: &F2Poly) -> (F2Poly, F2Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = F2Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            quo.set(rd - dd, true);
            rem.xor_shifted(divisor, rd - dd);
        }
        (quo, rem)
    }

    pub fn rem(&self, divisor: &F2Poly) -> F2Poly {
        self.divrem(divisor).1
    }

    pub fn gcd(&self, other: &F2Poly) -> F2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> F2Poly {
        let mut out = F2Poly::zero();
        if let Some(deg) = self.degree() {
            for i in (1..=deg).step_by(2) {
                if self.bit(i) {
                    out.set(i - 1, true);
                }
            }
        }
        out
    }

    pub fn mulmod(&self, other: &F2Poly, m: &F2Poly) -> F2Poly {
        self.mul(other).rem(m)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(n) => self.is_squarefree() && ddf_degrees(self).map(|v| v == vec![(n, 1)]).unwrap_or(false),
        }
    }

    /// Integer encoding used to order polynomials (bit i ↦ 2^i).
    pub fn to_u128(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else { return write!(f, "0") };
        let terms: Vec<String> = (0..=deg)
            .rev()
            .filter(|&i| self.bit(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Distinct-degree factorization shape: sorted (degree, count) pairs.
pub fn ddf_degrees(p: &F2Poly) -> Result<Vec<(usize, usize)>> {
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    let mut xpow = F2Poly::x().rem(&rest);
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((deg, 1));
            break;
        }
        xpow = xpow.square().rem(&rest);
        let g = rest.gcd(&xpow.add(&F2Poly::x()));
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            out.push((d, gd / d));
            rest = rest.divrem(&g).0;
            xpow = xpow.rem(&rest);
        }
    }
    Ok(out)
}

/// Least irreducible polynomial of degree f, ordered by integer encoding.
pub fn standard_modulus(f: usize) -> F2Poly {
    assert!((1..=127).contains(&f), "degree out of supported range");
    let top = 1u128 << f;
    (top..top << 1)
        .map(|v| {
            let lo = v as u64;
            let hi = (v >> 64) as u64;
            let mut p = F2Poly { words: vec![lo, hi] };
            p.trim();
            p
        })
        .find(F2Poly::is_irreducible)
        .expect("irreducible polynomials exist in every degree")
}

/// The field F2[x]/(m) for an irreducible m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Field {
    modulus: F2Poly,
    f: usize,
}

/// An element of an `F2Field`; `rep` has degree below f.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2fElem {
    pub rep: F2Poly,
}

impl F2Field {
    pub fn new(modulus: F2Poly) -> Result<Self> {
        let f = modulus.degree().unwrap_or(0);
        if !modulus.is_irreducible() {
            return Err(Error::ReducibleModulus(f));
        }
        Ok(F2Field { modulus, f })
    }

    pub fn standard(f: usize) -> Self {
        F2Field { modulus: standard_modulus(f), f }
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn modulus(&self) -> &F2Poly {
        &self.modulus
    }

    pub fn elem(&self, p: &F2Poly) -> F2fElem {
        F2fElem { rep: p.rem(&self.modulus) }
    }

    pub fn zero(&self) -> F2fElem {
        F2fElem { rep: F2Poly::zero() }
    }

    pub fn one(&self) -> F2fElem {
        F2fElem { rep: F2Poly::one() }
    }

    /// Element whose bits (lowest f) are taken from `k`; used for enumeration.
    pub fn from_index(&self, k: u64) -> F2fElem {
        self.elem(&F2Poly::from_u64(k))
    }

    pub fn add(&self, a: &F2fElem, b: &F2fElem) -> F2fElem {
        F2fElem { rep: a.rep.add(&b.rep) }
    }

    pub fn mul(&self, a: &F2fElem, b: &F2fElem) -> F2fElem {
        F2fElem { rep: a.rep.mulmod(&b.rep, &self.modulus) }
    }

    pub fn square(&self, a: &F2fElem) -> F2fElem {
        F2fElem { rep: a.rep.square().rem(&self.modulus) }
    }

    pub fn inverse(&self, a: &F2fElem) -> Result<F2fElem> {
        if a.rep.is_zero() {
            return Err(Error::NotAUnit);
        }
        // extended Euclid tracking only the coefficient of a
        let (mut r0, mut r1) = (self.modulus.clone(), a.rep.clone());
        let (mut s0, mut s1) = (F2Poly::zero(), F2Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.add(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert!(r0.is_one());
        Ok(self.elem(&s0))
    }

    /// Absolute trace to F2, as 0 or 1.
    pub fn trace(&self, a: &F2fElem) -> u8 {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.f {
            cur = self.square(&cur);
            acc = self.add(&acc, &cur);
        }
        debug_assert!(acc.rep.degree().unwrap_or(0) == 0);
        acc.rep.bit(0) as u8
    }

    /// The unique square root a^(2^(f-1)).
    pub fn sqrt(&self, a: &F2fElem) -> F2fElem {
        let mut cur = a.clone();
        for _ in 1..self.f {
            cur = self.square(&cur);
        }
        cur
    }

    /// A root of v² + v = c, or `None` when Tr(c) = 1.
    pub fn solve_artin_schreier(&self, c: &F2fElem) -> Option<F2fElem> {
        if self.trace(c) == 1 {
            return None;
        }
        // the map v ↦ v² + v is F2-linear; row j is the image of x^j, augmented
        // with an identity block to recover the preimage combination
        let f = self.f;
        let mut rows: Vec<(F2Poly, F2Poly)> = (0..f)
            .map(|j| {
                let mut basis = F2Poly::zero();
                basis.set(j, true);
                let e = self.elem(&basis);
                (self.add(&self.square(&e), &e).rep, basis)
            })
            .collect();
        let mut target = c.rep.clone();
        let mut sol = F2Poly::zero();
        let mut used = vec![false; f];
        for bit in (0..f).rev() {
            let Some(pi) = (0..f).find(|&i| !used[i] && rows[i].0.bit(bit)) else { continue };
            used[pi] = true;
            let pivot = rows[pi].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != pi && row.0.bit(bit) {
                    row.0 = row.0.add(&pivot.0);
                    row.1 = row.1.add(&pivot.1);
                }
            }
            if target.bit(bit) {
                target = target.add(&pivot.0);
                sol = sol.add(&pivot.1);
            }
        }
        if !target.is_zero() {
            return None;
        }
        Some(self.elem(&sol))
    }
}

/// Trace of an element of the standard field of degree f.
pub fn trace_f2f(f: usize, a: &F2Poly) -> u8 {
    let k = F2Field::standard(f);
    k.trace(&k.elem(a))
}

/// Square root in the standard field of degree f.
pub fn sqrt_f2f(f: usize, a: &F2Poly) -> F2Poly {
    let k = F2Field::standard(f);
    k.sqrt(&k.elem(a)).rep
}
