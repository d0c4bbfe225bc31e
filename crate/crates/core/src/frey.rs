//! The Frey curve Y² = X(X - A)(X + B) built from the quadratic factors of
//! x^r + y^r, with its invariants and valuation-level checks.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, split_off};
use crate::cycfield::{CycInt, RealCyclotomicField};
use crate::error::{Error, Result};
use crate::splitting::split_2_in_qplus_field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreyCurve {
    pub r: u64,
    /// `None` when A and B were supplied directly
    pub indices: Option<(usize, usize, usize)>,
    pub x: Option<CycInt>,
    pub y: Option<CycInt>,
    pub a: CycInt,
    pub b: CycInt,
    pub c: CycInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreyInvariants {
    /// 2⁴(ABC)²
    pub delta: CycInt,
    /// c4 of the model, 16(A² + AB + B²)
    pub c4: CycInt,
    /// j = j_num / j_den with j_num = -2⁸(AB + BC + CA)³ and j_den = (ABC)²
    pub j_num: CycInt,
    pub j_den: CycInt,
}

/// A = α f_k1(x, y), B = β f_k2(x, y), C = γ f_k3(x, y).
pub fn frey_curve(
    field: &RealCyclotomicField,
    x: &CycInt,
    y: &CycInt,
    k1: usize,
    k2: usize,
    k3: usize,
) -> Result<FreyCurve> {
    let (alpha, beta, gamma) = field.alpha_beta_gamma(k1, k2, k3)?;
    if x.is_zero() && y.is_zero() {
        return Err(Error::ZeroPair);
    }
    let a = field.mul(&alpha, &field.f_k_eval(k1, x, y)?);
    let b = field.mul(&beta, &field.f_k_eval(k2, x, y)?);
    let c = field.mul(&gamma, &field.f_k_eval(k3, x, y)?);
    if !(&(&a + &b) + &c).is_zero() {
        return Err(Error::Internal("A + B + C is not zero".into()));
    }
    Ok(FreyCurve { r: field.r(), indices: Some((k1, k2, k3)), x: Some(x.clone()), y: Some(y.clone()), a, b, c })
}

/// Curve with prescribed A and B, C = -A - B.
pub fn frey_curve_from_ab(field: &RealCyclotomicField, a: CycInt, b: CycInt) -> FreyCurve {
    let c = -&(&a + &b);
    FreyCurve { r: field.r(), indices: None, x: None, y: None, a, b, c }
}

/// AB + BC + CA.
pub fn symmetric_e2(field: &RealCyclotomicField, curve: &FreyCurve) -> CycInt {
    let ab = field.mul(&curve.a, &curve.b);
    let bc = field.mul(&curve.b, &curve.c);
    let ca = field.mul(&curve.c, &curve.a);
    &(&ab + &bc) + &ca
}

pub fn invariants(field: &RealCyclotomicField, curve: &FreyCurve) -> Result<FreyInvariants> {
    let abc = field.mul(&field.mul(&curve.a, &curve.b), &curve.c);
    if abc.is_zero() {
        return Err(Error::DegenerateCurve);
    }
    let j_den = field.mul(&abc, &abc);
    let delta = j_den.scale(&BigInt::from(16));
    let (a, b) = (&curve.a, &curve.b);
    let q = &(&field.mul(a, a) + &field.mul(a, b)) + &field.mul(b, b);
    let c4 = q.scale(&BigInt::from(16));
    let e2 = symmetric_e2(field, curve);
    let j_num = field.pow(&e2, 3).scale(&BigInt::from(-256));
    Ok(FreyInvariants { delta, c4, j_num, j_den })
}

/// Checks c4³·j_den = j_num·Δ exactly.
pub fn j_identity_holds(field: &RealCyclotomicField, inv: &FreyInvariants) -> bool {
    field.mul(&field.pow(&inv.c4, 3), &inv.j_den) == field.mul(&inv.j_num, &inv.delta)
}

fn eval_mod(a: &CycInt, root: &BigInt, m: &BigInt) -> BigInt {
    a.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| (acc * root + c).mod_floor(m))
}

fn eval_poly_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn check_split_prime(field: &RealCyclotomicField, q: u64, root: u64) -> Result<()> {
    if q == 2 || !is_prime(q) {
        return Err(Error::UnsupportedPrime(format!("{q} is not an odd prime")));
    }
    if q == field.r() {
        return Err(Error::UnsupportedPrime(format!("{q} divides the discriminant")));
    }
    let qb = BigInt::from(q);
    if !eval_poly_mod(field.psi(), &BigInt::from(root), &qb).is_zero() {
        return Err(Error::UnsupportedPrime(format!("{root} is not a root of the minimal polynomial mod {q}")));
    }
    Ok(())
}

/// q-adic root of ψ_r congruent to `root`, modulo q^k.
fn lift_root(field: &RealCyclotomicField, q: u64, root: u64, k: u32) -> BigInt {
    let psi = field.psi();
    let deriv: Vec<BigInt> = psi[1..].iter().enumerate().map(|(i, c)| c * BigInt::from(i + 1)).collect();
    let qb = BigInt::from(q);
    let mut rho = BigInt::from(root);
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = num_traits::pow(qb.clone(), prec as usize);
        let fv = eval_poly_mod(psi, &rho, &m);
        let dv = eval_poly_mod(&deriv, &rho, &m);
        let inv = dv.extended_gcd(&m).x.mod_floor(&m);
        rho = (&rho - fv * inv).mod_floor(&m);
    }
    rho
}

/// Roots of ψ_r mod q, i.e. the degree-1 primes above q.
pub fn split_prime_roots(field: &RealCyclotomicField, q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    (0..q).filter(|&t| eval_poly_mod(field.psi(), &BigInt::from(t), &qb).is_zero()).collect()
}

/// Valuation at the degree-1 prime (q, θ - root), q an odd prime other than r.
pub fn valuation_at_split_prime(field: &RealCyclotomicField, a: &CycInt, q: u64, root: u64) -> Result<u64> {
    check_split_prime(field, q, root)?;
    if a.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let qb = BigInt::from(q);
    // ψ' at the root must be a unit for the completion to be Z_q
    let deriv: Vec<BigInt> = field.psi()[1..].iter().enumerate().map(|(i, c)| c * BigInt::from(i + 1)).collect();
    if eval_poly_mod(&deriv, &BigInt::from(root), &qb).is_zero() {
        return Err(Error::UnsupportedPrime(format!("{root} is a repeated root mod {q}")));
    }
    let mut k = 8u32;
    loop {
        let m = num_traits::pow(qb.clone(), k as usize);
        let v = eval_mod(a, &lift_root(field, q, root, k), &m);
        if !v.is_zero() {
            return Ok(split_off(&v, q).0);
        }
        k *= 2;
    }
}

/// Valuation at (2) when 2 is inert: the least 2-adic valuation of the coefficients.
pub fn valuation_at_inert_two(field: &RealCyclotomicField, a: &CycInt) -> Result<u64> {
    if !split_2_in_qplus_field(field)?.inert {
        return Err(Error::TwoNotInert(field.r()));
    }
    if a.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(a.coeffs().iter().filter(|c| !c.is_zero()).map(|c| split_off(c, 2).0).min().expect("nonzero"))
}

/// A prime at which valuations are computable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TamePrime {
    Split { q: u64, root: u64 },
    InertTwo,
}

pub fn valuation(field: &RealCyclotomicField, a: &CycInt, prime: TamePrime) -> Result<u64> {
    match prime {
        TamePrime::Split { q, root } => valuation_at_split_prime(field, a, q, root),
        TamePrime::InertTwo => valuation_at_inert_two(field, a),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimalityReport {
    pub r: u64,
    pub pairs_checked: usize,
    /// |Norm f_k(x, y)| for k = 0..=d
    pub norms: Vec<BigInt>,
    /// (i, j, index of (f_i, f_j) with the r-part removed) for failing pairs
    pub offending: Vec<(usize, usize, BigInt)>,
}

impl CoprimalityReport {
    pub fn coprime_outside_r(&self) -> bool {
        self.offending.is_empty()
    }
}

/// For rational x, y with gcd 1: the ideal (f_i(x, y), f_j(x, y)) has index a
/// power of r for every i < j.
pub fn coprimality_check(field: &RealCyclotomicField, x: &BigInt, y: &BigInt) -> Result<CoprimalityReport> {
    let g = x.gcd(y);
    if !g.is_one() {
        return Err(Error::NotCoprimePair(g.to_string()));
    }
    let d = field.degree();
    let (xe, ye) = (field.int(x.clone()), field.int(y.clone()));
    let forms: Vec<CycInt> = (0..=d).map(|k| field.f_k_eval(k, &xe, &ye)).collect::<Result<_>>()?;
    let norms = forms.iter().map(|f| field.norm(f).abs()).collect();
    let mut offending = Vec::new();
    let mut pairs = 0;
    for i in 0..=d {
        for j in i + 1..=d {
            pairs += 1;
            let idx = field
                .ideal_index(&[forms[i].clone(), forms[j].clone()])
                .ok_or_else(|| Error::Internal("zero ideal from a coprime pair".into()))?;
            let rest = split_off(&idx, field.r()).1;
            if !rest.is_one() {
                offending.push((i, j, rest));
            }
        }
    }
    Ok(CoprimalityReport { r: field.r(), pairs_checked: pairs, norms, offending })
}

/// Rational primes other than 2 and r dividing Norm(ABC), found by trial
/// division up to `bound`.
pub fn conductor_support_outside_s(field: &RealCyclotomicField, curve: &FreyCurve, bound: u64) -> Result<BTreeSet<u64>> {
    let abc = field.mul(&field.mul(&curve.a, &curve.b), &curve.c);
    if abc.is_zero() {
        return Err(Error::DegenerateCurve);
    }
    let mut n = field.norm(&abc).abs();
    n = split_off(&n, 2).1;
    n = split_off(&n, field.r()).1;
    let mut support = BTreeSet::new();
    let mut p = 3u64;
    while p <= bound && !n.is_one() {
        if p != field.r() && is_prime(p) {
            let (e, rest) = split_off(&n, p);
            if e > 0 {
                support.insert(p);
                n = rest;
            }
        }
        p += 2;
    }
    if !n.is_one() {
        return Err(Error::UnfactoredCofactor { cofactor: n.to_string(), bound });
    }
    Ok(support)
}

/// Checks v(j) = 8 v(2) - 2 v(A) at a prime dividing A but not BC.
pub fn j_valuation_identity_check(field: &RealCyclotomicField, curve: &FreyCurve, prime: TamePrime) -> Result<bool> {
    let inv = invariants(field, curve)?;
    let va = valuation(field, &curve.a, prime)?;
    if va == 0 {
        return Err(Error::ValuationPrecondition("the prime does not divide A".into()));
    }
    if valuation(field, &curve.b, prime)? > 0 || valuation(field, &curve.c, prime)? > 0 {
        return Err(Error::ValuationPrecondition("the prime divides BC".into()));
    }
    let v2 = valuation(field, &field.int(2), prime)? as i64;
    let vj = valuation(field, &inv.j_num, prime)? as i64 - valuation(field, &inv.j_den, prime)? as i64;
    Ok(vj == 8 * v2 - 2 * va as i64)
}

/// Indices k with f_k(x, y) ≡ 0 mod 2, when 2 is inert.
pub fn k1_candidates(field: &RealCyclotomicField, x: &CycInt, y: &CycInt) -> Result<Vec<usize>> {
    if !split_2_in_qplus_field(field)?.inert {
        return Err(Error::TwoNotInert(field.r()));
    }
    let mut out = Vec::new();
    for k in 0..=field.degree() {
        let v = field.f_k_eval(k, x, y)?;
        if v.coeffs().iter().all(|c| c.is_even()) {
            out.push(k);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(r: u64) -> RealCyclotomicField {
        RealCyclotomicField::new(r).unwrap()
    }

    #[test]
    fn unit_evaluation_gives_coefficients() {
        let k = field(5);
        let c = frey_curve(&k, &k.one(), &k.zero(), 0, 1, 2).unwrap();
        let (al, be, ga) = k.alpha_beta_gamma(0, 1, 2).unwrap();
        assert_eq!((c.a, c.b, c.c), (al, be, ga));
    }

    #[test]
    fn construction_errors() {
        let k = field(5);
        assert_eq!(frey_curve(&k, &k.zero(), &k.zero(), 0, 1, 2), Err(Error::ZeroPair));
        assert_eq!(frey_curve(&k, &k.one(), &k.zero(), 0, 0, 1), Err(Error::IndicesNotDistinct(0, 0, 1)));
        let c = frey_curve(&k, &k.one(), &k.one(), 0, 1, 2).unwrap();
        let s = |i: usize| k.theta_power_sum(i).unwrap().clone();
        assert_eq!(c.a, k.mul(&(&s(2) - &s(1)), &k.int(4)));
    }

    #[test]
    fn degenerate() {
        let k = field(5);
        let c = frey_curve_from_ab(&k, k.one(), -&k.one());
        assert_eq!(invariants(&k, &c), Err(Error::DegenerateCurve));
    }

    #[test]
    fn j_identity_on_sample() {
        let k = field(7);
        let c = frey_curve(&k, &k.int(3), &k.int(2), 1, 2, 3).unwrap();
        assert!((&(&c.a + &c.b) + &c.c).is_zero());
        let inv = invariants(&k, &c).unwrap();
        assert!(j_identity_holds(&k, &inv));
        // the model's c4 is the negative of 16(AB + BC + CA)
        assert_eq!(inv.c4, -&symmetric_e2(&k, &c).scale(&BigInt::from(16)));
    }

    #[test]
    fn split_valuations() {
        let k = field(11);
        assert!(k.degree() == 5);
        let roots = split_prime_roots(&k, 43);
        assert_eq!(roots.len(), 5);
        let t = roots[0];
        assert_eq!(valuation_at_split_prime(&k, &k.int(43), 43, t).unwrap(), 1);
        assert_eq!(valuation_at_split_prime(&k, &k.one(), 43, t).unwrap(), 0);
        let elt = &k.theta() - &k.int(t as i64);
        assert!(valuation_at_split_prime(&k, &elt, 43, t).unwrap() >= 1);
        assert_eq!(valuation_at_split_prime(&k, &k.zero(), 43, t), Err(Error::ZeroValuation));
        assert!(valuation_at_split_prime(&k, &k.one(), 43, (t + 1) % 43).is_err());
        assert!(valuation_at_split_prime(&k, &k.one(), 11, 0).is_err());
    }

    #[test]
    fn coprimality_samples() {
        let k = field(5);
        let rep = coprimality_check(&k, &BigInt::from(2), &BigInt::from(1)).unwrap();
        assert!(rep.coprime_outside_r());
        assert_eq!(rep.norms[1], BigInt::from(11));
        assert_eq!(rep.norms[2], BigInt::from(11));
        assert!(coprimality_check(&field(7), &BigInt::from(3), &BigInt::from(2)).unwrap().coprime_outside_r());
        assert!(coprimality_check(&k, &BigInt::from(1), &BigInt::from(0)).unwrap().coprime_outside_r());
        assert!(matches!(coprimality_check(&k, &BigInt::from(2), &BigInt::from(2)), Err(Error::NotCoprimePair(_))));
    }

    #[test]
    fn conductor_support() {
        let k = field(5);
        let c = frey_curve(&k, &k.int(2), &k.one(), 0, 1, 2).unwrap();
        let s = conductor_support_outside_s(&k, &c, 1000).unwrap();
        assert_eq!(s, BTreeSet::from([3, 11]));
        let err = conductor_support_outside_s(&k, &c, 5).unwrap_err();
        assert!(matches!(err, Error::UnfactoredCofactor { .. }));
        let pure = frey_curve_from_ab(&k, k.int(4), k.int(-5));
        assert!(conductor_support_outside_s(&k, &pure, 10).unwrap().is_empty());
    }

    #[test]
    fn j_valuation_at_two() {
        let k = field(5);
        let c = frey_curve_from_ab(&k, k.int(4), k.int(-1));
        assert!(j_valuation_identity_check(&k, &c, TamePrime::InertTwo).unwrap());
        let odd = frey_curve_from_ab(&k, k.int(3), k.int(-1));
        assert!(matches!(
            j_valuation_identity_check(&k, &odd, TamePrime::InertTwo),
            Err(Error::ValuationPrecondition(_))
        ));
        // scaling A by the unit θ
        let scaled = frey_curve_from_ab(&k, k.mul(&k.int(4), &k.theta()), k.int(-1));
        assert!(j_valuation_identity_check(&k, &scaled, TamePrime::InertTwo).unwrap());
    }
}
