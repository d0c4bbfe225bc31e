//! The Galois rings GR(2^n, f) = (Z/2^n)[x]/(m) with m irreducible mod 2,
//! and the unit square test they support.

use serde::{Deserialize, Serialize};

use crate::cycfield::{reduce_mod, RealCyclotomicField};
use crate::error::{Error, Result};
use crate::ffpoly::{ddf_degrees, standard_modulus, F2Field, F2Poly, F2fElem};

/// Largest supported precision; arithmetic wraps in u64.
pub const MAX_PRECISION: u32 = 62;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisRing {
    n: u32,
    f: usize,
    mask: u64,
    /// monic, constant term first, length f + 1
    modulus: Vec<u64>,
    residue: F2Field,
}

/// Elements are plain coefficient vectors; the ring is passed explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrElem {
    pub coeffs: Vec<u64>,
}

/// How a unit sits relative to the squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareClass {
    Square,
    /// u is not a square mod 4
    Mod4Obstructed,
    /// u is a square mod 4 but not mod 8
    Mod8Obstructed,
}

impl GaloisRing {
    /// `modulus` is monic of degree f, constant term first.
    pub fn new(n: u32, modulus: &[u64]) -> Result<Self> {
        if n == 0 || n > MAX_PRECISION {
            return Err(Error::PrecisionTooLow(n));
        }
        let f = modulus.len().saturating_sub(1);
        let mask = (1u64 << n) - 1;
        let modulus: Vec<u64> = modulus.iter().map(|c| c & mask).collect();
        if f == 0 || modulus[f] != 1 {
            return Err(Error::ReducibleModulus(f));
        }
        let residue = F2Field::new(F2Poly::from_bits(modulus.iter().map(|c| c & 1 == 1)))?;
        Ok(GaloisRing { n, f, mask, modulus, residue })
    }

    /// GR(2^n, f) on the 0/1 lift of the least irreducible of degree f.
    pub fn standard(n: u32, f: usize) -> Result<Self> {
        let m = standard_modulus(f);
        let coeffs: Vec<u64> = (0..=f).map(|i| m.bit(i) as u64).collect();
        Self::new(n, &coeffs)
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn residue_field(&self) -> &F2Field {
        &self.residue
    }

    pub fn elem(&self, coeffs: &[u64]) -> GrElem {
        let mut c: Vec<u64> = coeffs.iter().map(|x| x & self.mask).collect();
        self.reduce(&mut c);
        GrElem { coeffs: c }
    }

    pub fn from_int(&self, k: i64) -> GrElem {
        let mut c = vec![0; self.f];
        c[0] = (k as u64) & self.mask;
        GrElem { coeffs: c }
    }

    pub fn zero(&self) -> GrElem {
        self.from_int(0)
    }

    pub fn one(&self) -> GrElem {
        self.from_int(1)
    }

    /// Enumerates every element; only sensible for tiny rings.
    pub fn all_elements(&self) -> impl Iterator<Item = GrElem> + '_ {
        let total_bits = self.n as usize * self.f;
        assert!(total_bits <= 24, "ring too large to enumerate");
        (0u64..1 << total_bits).map(move |k| {
            let coeffs = (0..self.f).map(|i| (k >> (i * self.n as usize)) & self.mask).collect();
            GrElem { coeffs }
        })
    }

    fn reduce(&self, c: &mut Vec<u64>) {
        let f = self.f;
        while c.len() > f {
            let top = c.pop().expect("non-empty");
            if top == 0 {
                continue;
            }
            let shift = c.len() - f;
            for i in 0..f {
                c[shift + i] = c[shift + i].wrapping_sub(top.wrapping_mul(self.modulus[i])) & self.mask;
            }
        }
        c.resize(f, 0);
    }

    pub fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.wrapping_add(*y) & self.mask).collect();
        GrElem { coeffs }
    }

    pub fn sub(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.wrapping_sub(*y) & self.mask).collect();
        GrElem { coeffs }
    }

    pub fn scale(&self, a: &GrElem, k: u64) -> GrElem {
        GrElem { coeffs: a.coeffs.iter().map(|x| x.wrapping_mul(k) & self.mask).collect() }
    }

    pub fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let mut prod = vec![0u64; 2 * self.f - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j].wrapping_add(x.wrapping_mul(*y));
            }
        }
        for p in prod.iter_mut() {
            *p &= self.mask;
        }
        self.reduce(&mut prod);
        GrElem { coeffs: prod }
    }

    pub fn square(&self, a: &GrElem) -> GrElem {
        self.mul(a, a)
    }

    pub fn residue(&self, a: &GrElem) -> F2fElem {
        self.residue.elem(&F2Poly::from_bits(a.coeffs.iter().map(|c| c & 1 == 1)))
    }

    /// Teichmüller-free 0/1 lift of a residue.
    pub fn lift(&self, a: &F2fElem) -> GrElem {
        GrElem { coeffs: (0..self.f).map(|i| a.rep.bit(i) as u64).collect() }
    }

    pub fn is_unit(&self, a: &GrElem) -> bool {
        a.coeffs.iter().any(|c| c & 1 == 1)
    }

    /// Inverse of a unit by Newton iteration x ← x(2 - ax).
    pub fn inverse(&self, a: &GrElem) -> Result<GrElem> {
        let r = self.residue.inverse(&self.residue(a))?;
        let mut x = self.lift(&r);
        let two = self.from_int(2);
        let mut prec = 1;
        while prec < self.n {
            x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
            prec *= 2;
        }
        Ok(x)
    }

    /// Divides every coefficient by 2^k; the caller guarantees divisibility.
    fn shift_down(&self, a: &GrElem, k: u32) -> GrElem {
        debug_assert!(a.coeffs.iter().all(|c| c.trailing_zeros() >= k));
        GrElem { coeffs: a.coeffs.iter().map(|c| c >> k).collect() }
    }

    fn divisible_by_pow2(a: &GrElem, k: u32) -> bool {
        a.coeffs.iter().all(|&c| c == 0 || c.trailing_zeros() >= k)
    }

    /// Square class of a unit, with a square root in the `Square` case.
    pub fn classify_unit(&self, u: &GrElem) -> Result<(SquareClass, Option<GrElem>)> {
        if self.n < 3 {
            return Err(Error::PrecisionTooLow(self.n));
        }
        if !self.is_unit(u) {
            return Err(Error::NotAUnit);
        }
        let k = &self.residue;
        let s = self.lift(&k.sqrt(&self.residue(u)));
        if !Self::divisible_by_pow2(&self.sub(u, &self.square(&s)), 2) {
            return Ok((SquareClass::Mod4Obstructed, None));
        }
        let s_inv = self.inverse(&s)?;
        let w = self.mul(u, &self.square(&s_inv));
        let c = self.residue(&self.shift_down(&self.sub(&w, &self.one()), 2));
        let Some(t) = k.solve_artin_schreier(&c) else {
            return Ok((SquareClass::Mod8Obstructed, None));
        };
        let mut rho = self.mul(&s, &self.add(&self.one(), &self.scale(&self.lift(&t), 2)));
        for step in 3..self.n {
            let diff = self.sub(u, &self.square(&rho));
            debug_assert!(Self::divisible_by_pow2(&diff, step));
            let e = self.residue(&self.shift_down(&diff, step));
            let t = k.mul(&e, &k.inverse(&self.residue(&rho))?);
            rho = self.add(&rho, &self.scale(&self.lift(&t), 1 << (step - 1)));
        }
        debug_assert_eq!(self.square(&rho), *u);
        Ok((SquareClass::Square, Some(rho)))
    }

    /// Some ν with ν² = u, or `None` if u is not a square.
    pub fn sqrt(&self, u: &GrElem) -> Result<Option<GrElem>> {
        Ok(self.classify_unit(u)?.1)
    }
}

/// Whether θ - 2 is a square in O/2^n O when 2 is inert in the real
/// cyclotomic field.
pub fn is_square_pi_r(field: &RealCyclotomicField, n: u32) -> Result<bool> {
    let ring = inert_ring(field, n)?;
    let u = ring.elem(&reduce_mod(&field.pi_r(), 1u64 << n));
    Ok(ring.sqrt(&u)?.is_some())
}

/// O/2^n O as a Galois ring on the power basis; requires 2 inert.
pub fn inert_ring(field: &RealCyclotomicField, n: u32) -> Result<GaloisRing> {
    if n == 0 || n > MAX_PRECISION {
        return Err(Error::PrecisionTooLow(n));
    }
    let psi_mod2 = F2Poly::from_bits(field.psi().iter().map(|c| c.bit(0)));
    let shape = ddf_degrees(&psi_mod2)?;
    if shape != vec![(field.degree(), 1)] {
        return Err(Error::TwoNotInert(field.r()));
    }
    let modulus: Vec<u64> = {
        let m = crate::cycfield::CycInt::from_coeffs(field.psi().len(), field.psi());
        reduce_mod(&m, 1u64 << n)
    };
    GaloisRing::new(n, &modulus)
}
