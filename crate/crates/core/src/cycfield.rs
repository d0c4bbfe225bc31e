//! Exact arithmetic in the real cyclotomic field Q(θ), θ = ζ_r + ζ_r⁻¹.
//!
//! Elements of the ring of integers Z[θ] are stored as integer coefficient
//! vectors on the power basis 1, θ, …, θ^(d-1) with d = (r-1)/2, always reduced
//! modulo the minimal polynomial ψ_r of θ.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::{bareiss_det, lattice_index};

/// An algebraic integer of Z[θ] in the power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(d: usize) -> Self {
        CycInt { coeffs: vec![BigInt::zero(); d] }
    }

    pub fn from_int(d: usize, n: impl Into<BigInt>) -> Self {
        let mut c = Self::zero(d);
        c.coeffs[0] = n.into();
        c
    }

    /// Builds an element from its first `d` power-basis coefficients.
    /// Shorter inputs are zero-padded; the caller guarantees `coeffs.len() <= d`.
    pub fn from_coeffs(d: usize, coeffs: &[BigInt]) -> Self {
        assert!(coeffs.len() <= d, "too many coefficients for degree {d}");
        let mut c = Self::zero(d);
        c.coeffs[..coeffs.len()].clone_from_slice(coeffs);
        c
    }

    pub fn from_i64s(d: usize, coeffs: &[i64]) -> Self {
        let v: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_coeffs(d, &v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns the rational integer this element equals, if it lies in Z.
    pub fn as_rational_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// gcd of the coefficients (0 for the zero element).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "θ")?,
                (1, false) => write!(f, "{mag}θ")?,
                (_, true) => write!(f, "θ^{i}")?,
                (_, false) => write!(f, "{mag}θ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient vector"));
        }
        Ok(CycInt { coeffs })
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "mixed field degrees");
        CycInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "mixed field degrees");
        CycInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

/// A field element written as `num / den` with `den > 0` a rational integer.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CycFrac {
    pub num: CycInt,
    pub den: BigInt,
}

impl CycFrac {
    pub fn new(num: CycInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut g = num.content().gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        CycFrac {
            num: CycInt { coeffs: num.coeffs.iter().map(|c| c / &g).collect() },
            den: den / g,
        }
    }

    pub fn from_int(d: usize, n: impl Into<BigInt>) -> Self {
        CycFrac { num: CycInt::from_int(d, n), den: BigInt::one() }
    }

    pub fn integral(num: CycInt) -> Self {
        CycFrac { num, den: BigInt::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// The real cyclotomic field of conductor r, with its integral power basis.
#[derive(Clone, Debug)]
pub struct RealCyclotomicField {
    r: u64,
    d: usize,
    /// ψ_r, constant term first, monic of degree d.
    psi: Vec<BigInt>,
    /// ζ^k + ζ^-k for k = 0..r, reduced.
    power_sums: Vec<CycInt>,
}

impl RealCyclotomicField {
    /// Builds the field for an odd prime r ≥ 5.
    ///
    /// ψ_r comes from the folded cyclotomic relation 1 + Σ_{k=1}^{d} (ζ^k + ζ^-k) = 0,
    /// writing each ζ^k + ζ^-k as the Chebyshev-type polynomial C_k(θ) with
    /// C_0 = 2, C_1 = x, C_k = x·C_{k-1} - C_{k-2}.
    pub fn new(r: u64) -> Result<Self> {
        if r < 5 || !is_prime(r) {
            return Err(Error::InvalidPrime(r));
        }
        let d = ((r - 1) / 2) as usize;
        let mut cheb: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
        for k in 2..=d {
            let mut next = vec![BigInt::zero(); k + 1];
            for (i, c) in cheb[k - 1].iter().enumerate() {
                next[i + 1] += c;
            }
            for (i, c) in cheb[k - 2].iter().enumerate() {
                next[i] -= c;
            }
            cheb.push(next);
        }
        let mut psi = vec![BigInt::zero(); d + 1];
        psi[0] = BigInt::one();
        for poly in &cheb[1..=d] {
            for (i, c) in poly.iter().enumerate() {
                psi[i] += c;
            }
        }
        debug_assert!(psi[d].is_one());

        let mut field = RealCyclotomicField { r, d, psi, power_sums: Vec::new() };
        let mut sums = Vec::with_capacity(r as usize);
        sums.push(CycInt::from_int(d, 2));
        sums.push(field.theta());
        for k in 2..r as usize {
            let next = &field.mul(&sums[k - 1], &sums[1]) - &sums[k - 2];
            sums.push(next);
        }
        field.power_sums = sums;
        Ok(field)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// Degree (r-1)/2 over Q.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Minimal polynomial of θ, constant term first.
    pub fn psi(&self) -> &[BigInt] {
        &self.psi
    }

    pub fn zero(&self) -> CycInt {
        CycInt::zero(self.d)
    }

    pub fn one(&self) -> CycInt {
        CycInt::from_int(self.d, 1)
    }

    pub fn int(&self, n: impl Into<BigInt>) -> CycInt {
        CycInt::from_int(self.d, n)
    }

    pub fn theta(&self) -> CycInt {
        let mut c = self.zero();
        if self.d == 1 {
            // not reachable for r >= 5, kept for completeness of the basis map
            c.coeffs[0] = -&self.psi[0];
        } else {
            c.coeffs[1] = BigInt::one();
        }
        c
    }

    /// Reduces an arbitrary-length coefficient vector modulo ψ_r.
    pub fn reduce(&self, mut c: Vec<BigInt>) -> CycInt {
        let d = self.d;
        while c.len() > d {
            let top = c.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for i in 0..d {
                c[shift + i] -= &top * &self.psi[i];
            }
        }
        c.resize(d, BigInt::zero());
        CycInt { coeffs: c }
    }

    pub fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let d = self.d;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }

    pub fn pow(&self, a: &CycInt, mut e: u64) -> CycInt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// ζ^k + ζ^-k for 0 ≤ k ≤ r-1.
    pub fn theta_power_sum(&self, k: usize) -> Result<&CycInt> {
        self.power_sums
            .get(k)
            .ok_or(Error::IndexOutOfRange { index: k, max: self.r as usize - 1 })
    }

    /// π_r = θ - 2, the uniformizer above r.
    pub fn pi_r(&self) -> CycInt {
        &self.theta() - &self.int(2)
    }

    /// Matrix of multiplication by `a` on the power basis (column j = a·θ^j).
    pub fn multiplication_matrix(&self, a: &CycInt) -> Vec<Vec<BigInt>> {
        let d = self.d;
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.clone();
        let theta = self.theta();
        for _ in 0..d {
            cols.push(cur.clone());
            cur = self.mul(&cur, &theta);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j].coeffs[i].clone()).collect()).collect()
    }

    /// Norm to Q, computed as the determinant of the multiplication map
    /// (equal to the resultant Res(ψ_r, a) since ψ_r is monic).
    pub fn norm(&self, a: &CycInt) -> BigInt {
        bareiss_det(self.multiplication_matrix(a))
    }

    /// Discriminant of ψ_r, (-1)^(d(d-1)/2) · Norm(ψ_r'(θ)).
    pub fn discriminant(&self) -> BigInt {
        let deriv: Vec<BigInt> = self.psi[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(i + 1))
            .collect();
        let n = self.norm(&self.reduce(deriv));
        if (self.d * (self.d - 1) / 2) % 2 == 1 {
            -n
        } else {
            n
        }
    }

    /// The quadratic form f_k(x, y) = x² + (ζ^k + ζ^-k)xy + y²; f_0 = (x + y)².
    pub fn f_k_eval(&self, k: usize, x: &CycInt, y: &CycInt) -> Result<CycInt> {
        if k > self.d {
            return Err(Error::IndexOutOfRange { index: k, max: self.d });
        }
        let xy = self.mul(x, y);
        let s = &self.power_sums[k];
        let sq = &self.mul(x, x) + &self.mul(y, y);
        Ok(&sq + &self.mul(s, &xy))
    }

    /// φ_r(x, y) = Σ_{i=0}^{r-1} (-1)^i x^(r-1-i) y^i.
    pub fn phi_r_eval(&self, x: &CycInt, y: &CycInt) -> CycInt {
        // Horner in x/y: acc ← acc·x ± y^i, accumulating alternating terms
        let n = self.r as usize;
        let mut xpow = vec![self.one()];
        for i in 1..n {
            xpow.push(self.mul(&xpow[i - 1], x));
        }
        let mut acc = self.zero();
        let mut ypow = self.one();
        for i in 0..n {
            let term = self.mul(&xpow[n - 1 - i], &ypow);
            acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
            ypow = self.mul(&ypow, y);
        }
        acc
    }

    /// (α, β, γ) with α f_k1 + β f_k2 + γ f_k3 = 0:
    /// α = s(k3) - s(k2), β = s(k1) - s(k3), γ = s(k2) - s(k1).
    pub fn alpha_beta_gamma(&self, k1: usize, k2: usize, k3: usize) -> Result<(CycInt, CycInt, CycInt)> {
        for k in [k1, k2, k3] {
            if k > self.d {
                return Err(Error::IndexOutOfRange { index: k, max: self.d });
            }
        }
        if k1 == k2 || k2 == k3 || k1 == k3 {
            return Err(Error::IndicesNotDistinct(k1, k2, k3));
        }
        let s = |k: usize| &self.power_sums[k];
        Ok((s(k3) - s(k2), s(k1) - s(k3), s(k2) - s(k1)))
    }

    /// Inverse of a nonzero element as a fraction with rational-integer denominator.
    pub fn inverse(&self, a: &CycInt) -> Option<CycFrac> {
        if a.is_zero() {
            return None;
        }
        // solve M_a · v = e_0 over Q
        let d = self.d;
        let m = self.multiplication_matrix(a);
        let mut aug: Vec<Vec<BigRational>> = m
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<BigRational> = row.into_iter().map(BigRational::from_integer).collect();
                r.push(BigRational::from_integer(BigInt::from((i == 0) as i32)));
                r
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&i| !aug[i][col].is_zero())?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for j in col..=d {
                aug[col][j] = &aug[col][j] * &inv;
            }
            for i in 0..d {
                if i != col && !aug[i][col].is_zero() {
                    let f = aug[i][col].clone();
                    for j in col..=d {
                        let t = &f * &aug[col][j];
                        aug[i][j] -= t;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = aug.into_iter().map(|row| row[d].clone()).collect();
        let den = sol.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let num: Vec<BigInt> = sol.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Some(CycFrac::new(CycInt { coeffs: num }, den))
    }

    pub fn frac_add(&self, a: &CycFrac, b: &CycFrac) -> CycFrac {
        let num = &a.num.scale(&b.den) + &b.num.scale(&a.den);
        CycFrac::new(num, &a.den * &b.den)
    }

    pub fn frac_sub(&self, a: &CycFrac, b: &CycFrac) -> CycFrac {
        let num = &a.num.scale(&b.den) - &b.num.scale(&a.den);
        CycFrac::new(num, &a.den * &b.den)
    }

    pub fn frac_mul(&self, a: &CycFrac, b: &CycFrac) -> CycFrac {
        CycFrac::new(self.mul(&a.num, &b.num), &a.den * &b.den)
    }

    pub fn frac_div(&self, a: &CycFrac, b: &CycFrac) -> Option<CycFrac> {
        let inv = self.inverse(&b.num)?;
        let num = self.mul(&a.num, &inv.num).scale(&b.den);
        Some(CycFrac::new(num, &a.den * &inv.den))
    }

    /// Index [Z[θ] : I] of the ideal generated by `gens`, or `None` if I = 0.
    pub fn ideal_index(&self, gens: &[CycInt]) -> Option<BigInt> {
        let theta = self.theta();
        let mut rows = Vec::new();
        for g in gens {
            let mut cur = g.clone();
            for _ in 0..self.d {
                rows.push(cur.coeffs.clone());
                cur = self.mul(&cur, &theta);
            }
        }
        lattice_index(&rows, self.d)
    }
}

/// Componentwise reduction into [0, m); a ring map onto (Z/m)[x]/(ψ_r mod m).
pub fn reduce_mod(a: &CycInt, m: u64) -> Vec<u64> {
    assert!(m >= 2, "modulus must be at least 2");
    let mb = BigInt::from(m);
    a.coeffs
        .iter()
        .map(|c| {
            let v = c.mod_floor(&mb);
            u64::try_from(v).expect("residue fits in u64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(RealCyclotomicField::new(5).unwrap().psi(), ints(&[-1, 1, 1]).as_slice());
        assert_eq!(RealCyclotomicField::new(7).unwrap().psi(), ints(&[-1, -2, 1, 1]).as_slice());
    }

    #[test]
    fn rejects_bad_r() {
        for r in [0, 1, 2, 3, 4, 9, 15, 21] {
            assert_eq!(RealCyclotomicField::new(r).unwrap_err(), Error::InvalidPrime(r));
        }
    }

    #[test]
    fn power_sums_small() {
        let k5 = RealCyclotomicField::new(5).unwrap();
        assert_eq!(k5.theta_power_sum(0).unwrap(), &k5.int(2));
        assert_eq!(k5.theta_power_sum(2).unwrap(), &CycInt::from_i64s(2, &[-1, -1]));
        assert!(k5.theta_power_sum(5).is_err());
        // θ³ - 3θ reduced mod x³ + x² - 2x - 1 is 1 - θ - θ²... computed by hand:
        // θ³ = 1 + 2θ - θ², so θ³ - 3θ = 1 - θ - θ²
        let k7 = RealCyclotomicField::new(7).unwrap();
        assert_eq!(k7.theta_power_sum(3).unwrap(), &CycInt::from_i64s(3, &[1, -1, -1]));
    }

    #[test]
    fn pi_and_norms() {
        let k5 = RealCyclotomicField::new(5).unwrap();
        assert_eq!(k5.pi_r(), CycInt::from_i64s(2, &[-2, 1]));
        assert_eq!(k5.norm(&k5.pi_r()).abs(), BigInt::from(5));
        assert_eq!(k5.norm(&k5.one()), BigInt::one());
        let k11 = RealCyclotomicField::new(11).unwrap();
        assert_eq!(k11.norm(&k11.int(2)), BigInt::from(32));
        assert_eq!(RealCyclotomicField::new(7).unwrap().pi_r(), CycInt::from_i64s(3, &[-2, 1, 0]));
    }

    #[test]
    fn forms_at_small_points() {
        let k = RealCyclotomicField::new(5).unwrap();
        let (one, zero, two) = (k.one(), k.zero(), k.int(2));
        assert_eq!(k.f_k_eval(0, &one, &one).unwrap(), k.int(4));
        for kk in 0..=2 {
            assert_eq!(k.f_k_eval(kk, &one, &zero).unwrap(), one);
        }
        assert!(k.f_k_eval(3, &one, &one).is_err());
        let prod = (0..=2).fold(k.one(), |acc, kk| k.mul(&acc, &k.f_k_eval(kk, &two, &one).unwrap()));
        assert_eq!(prod, k.int(99));
        assert_eq!(k.phi_r_eval(&one, &zero), one);
        assert_eq!(k.phi_r_eval(&one, &one), one);
        assert_eq!(k.phi_r_eval(&two, &one), k.int(11));
    }

    #[test]
    fn abc_errors() {
        let k = RealCyclotomicField::new(7).unwrap();
        assert_eq!(k.alpha_beta_gamma(1, 1, 2).unwrap_err(), Error::IndicesNotDistinct(1, 1, 2));
        assert!(k.alpha_beta_gamma(0, 1, 4).is_err());
        let (a, b, c) = k.alpha_beta_gamma(1, 2, 3).unwrap();
        assert!((&(&a + &b) + &c).is_zero());
    }

    #[test]
    fn residues() {
        let k = RealCyclotomicField::new(5).unwrap();
        assert_eq!(reduce_mod(&k.pi_r(), 4), vec![2, 1]);
        assert_eq!(reduce_mod(&k.int(2), 2), vec![0, 0]);
        let t2 = k.mul(&k.theta(), &k.theta());
        assert_eq!(reduce_mod(&t2, 3), vec![1, 2]);
    }

    #[test]
    fn inverse_and_fractions() {
        let k = RealCyclotomicField::new(7).unwrap();
        let a = CycInt::from_i64s(3, &[3, -1, 2]);
        let inv = k.inverse(&a).unwrap();
        let back = k.frac_mul(&CycFrac::integral(a), &inv);
        assert_eq!(back, CycFrac::from_int(3, 1));
        assert!(k.inverse(&k.zero()).is_none());
        // θ is a unit, so its inverse is integral
        assert_eq!(k.inverse(&k.theta()).unwrap().den, BigInt::one());
    }

    #[test]
    fn ideal_index_of_principal_ideals() {
        let k = RealCyclotomicField::new(5).unwrap();
        assert_eq!(k.ideal_index(&[k.pi_r()]), Some(BigInt::from(5)));
        assert_eq!(k.ideal_index(&[k.int(2), k.int(3)]), Some(BigInt::one()));
        assert_eq!(k.ideal_index(&[k.int(6)]), Some(BigInt::from(36)));
    }

    #[test]
    fn display() {
        let k = RealCyclotomicField::new(7).unwrap();
        assert_eq!(CycInt::from_i64s(3, &[1, -1, -3]).to_string(), "1 - θ - 3θ^2");
        assert_eq!(k.zero().to_string(), "0");
        assert_eq!(k.pi_r().to_string(), "-2 + θ");
    }
}
