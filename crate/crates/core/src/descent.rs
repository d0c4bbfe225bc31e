//! Descent step for λ + μ = 1 and the norm-level obstruction to θ - 2 being
//! a square near 2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_squarefree, split_off};
use crate::cycfield::{CycFrac, RealCyclotomicField};
use crate::error::{Error, Result};
use crate::frey::valuation_at_inert_two;

/// Field operations needed by the descent step.
pub trait ExactField {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` on division by zero
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl ExactField for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
}

impl ExactField for RealCyclotomicField {
    type Elem = CycFrac;
    fn zero(&self) -> CycFrac {
        CycFrac::from_int(self.degree(), 0)
    }
    fn one(&self) -> CycFrac {
        CycFrac::from_int(self.degree(), 1)
    }
    fn from_int(&self, n: i64) -> CycFrac {
        CycFrac::from_int(self.degree(), n)
    }
    fn add(&self, a: &CycFrac, b: &CycFrac) -> CycFrac {
        self.frac_add(a, b)
    }
    fn sub(&self, a: &CycFrac, b: &CycFrac) -> CycFrac {
        self.frac_sub(a, b)
    }
    fn mul(&self, a: &CycFrac, b: &CycFrac) -> CycFrac {
        self.frac_mul(a, b)
    }
    fn div(&self, a: &CycFrac, b: &CycFrac) -> Option<CycFrac> {
        self.frac_div(a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentPair<E> {
    pub lambda: E,
    pub mu: E,
}

/// With λ₁ = 1 - τ and λ₂ = 1 + τ, returns (-λ₁²/(4τ), λ₂²/(4τ)).
pub fn descent_step<F: ExactField>(field: &F, tau: &F::Elem) -> Result<DescentPair<F::Elem>> {
    let one = field.one();
    let minus_one = field.sub(&field.zero(), &one);
    if *tau == field.zero() || *tau == one || *tau == minus_one {
        return Err(Error::DegenerateTau);
    }
    let l1 = field.sub(&one, tau);
    let l2 = field.add(&one, tau);
    let four_tau = field.mul(&field.from_int(4), tau);
    let lambda = field.sub(&field.zero(), &field.div(&field.mul(&l1, &l1), &four_tau).ok_or(Error::DegenerateTau)?);
    let mu = field.div(&field.mul(&l2, &l2), &four_tau).ok_or(Error::DegenerateTau)?;
    if field.add(&lambda, &mu) != one {
        return Err(Error::Internal("descent pair does not sum to 1".into()));
    }
    Ok(DescentPair { lambda, mu })
}

/// Valuations around one descent step at a designated prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentValuations {
    /// v(1 - τ²)
    pub v_lambda: i64,
    pub v_lambda1: i64,
    pub v_lambda2: i64,
    pub v_new: i64,
}

impl DescentValuations {
    /// The regime v(λ) > 4e with v(λ₂) = e.
    pub fn in_regime(&self, e: i64) -> bool {
        self.v_lambda > 4 * e && self.v_lambda2 == e
    }

    pub fn increased(&self) -> bool {
        self.v_new > self.v_lambda
    }
}

pub fn descent_valuations<F, V>(field: &F, tau: &F::Elem, v: V) -> Result<DescentValuations>
where
    F: ExactField,
    V: Fn(&F::Elem) -> Result<i64>,
{
    let pair = descent_step(field, tau)?;
    let one = field.one();
    let l1 = field.sub(&one, tau);
    let l2 = field.add(&one, tau);
    Ok(DescentValuations {
        v_lambda: v(&field.mul(&l1, &l2))?,
        v_lambda1: v(&l1)?,
        v_lambda2: v(&l2)?,
        v_new: v(&pair.lambda)?,
    })
}

/// 2-adic valuation of a nonzero rational.
pub fn v2_rational(q: &BigRational) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(split_off(q.numer(), 2).0 as i64 - split_off(q.denom(), 2).0 as i64)
}

/// Valuation at (2) of a field element when 2 is inert.
pub fn v2_inert(field: &RealCyclotomicField, q: &CycFrac) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(valuation_at_inert_two(field, &q.num)? as i64 - split_off(&q.den, 2).0 as i64)
}

/// (ζ^d + ζ^-d)² = π_r + 4 with d = (r-1)/2.
pub fn pi_plus_four_identity(field: &RealCyclotomicField) -> bool {
    let s = field.theta_power_sum(field.degree()).expect("d < r");
    field.mul(s, s) == &field.pi_r() + &field.int(4)
}

/// Which residue system decides the norm condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueSystem {
    /// N ≡ v² mod 32
    Rational,
    /// a² + b²(d-1)/4 ≡ N, b² + 2ab ≡ 0 mod 32
    InertQuadratic,
    /// a² + b²d ≡ N, 2ab ≡ 0 mod 16
    RamifiedQuadratic,
}

impl ResidueSystem {
    pub fn for_base(base_d: u64) -> Result<Self> {
        match base_d {
            0 => Ok(ResidueSystem::Rational),
            d if d % 8 == 1 => Err(Error::NotApplicable(format!("2 splits in Q(sqrt({d}))"))),
            d if d % 8 == 5 => Ok(ResidueSystem::InertQuadratic),
            _ => Ok(ResidueSystem::RamifiedQuadratic),
        }
    }

    pub fn modulus(&self) -> i64 {
        match self {
            ResidueSystem::RamifiedQuadratic => 16,
            _ => 32,
        }
    }
}

/// Exhaustive search for a solution of the residue system with target N.
pub fn residue_system_brute(system: ResidueSystem, d: u64, target: i64) -> bool {
    let m = system.modulus();
    let t = target.rem_euclid(m);
    let d = d as i64;
    match system {
        ResidueSystem::Rational => (0..m).any(|v| (v * v).rem_euclid(m) == t),
        ResidueSystem::InertQuadratic => (0..m).any(|a| {
            (0..m).any(|b| {
                (a * a + b * b * ((d - 1) / 4)).rem_euclid(m) == t && (b * b + 2 * a * b).rem_euclid(m) == 0
            })
        }),
        ResidueSystem::RamifiedQuadratic => (0..m).any(|a| {
            (0..m).any(|b| (a * a + b * b * d).rem_euclid(m) == t && (2 * a * b).rem_euclid(m) == 0)
        }),
    }
}

/// Closed form for odd targets: N ≡ 1 mod 8, or N ≡ d mod 8 over a quadratic base.
pub fn residue_system_closed_form(system: ResidueSystem, d: u64, target: i64) -> bool {
    let t = target.rem_euclid(8);
    match system {
        ResidueSystem::Rational => t == 1,
        _ => t == 1 || t == (d % 8) as i64,
    }
}

pub fn residue_system_solvable(system: ResidueSystem, d: u64, target: i64) -> Result<bool> {
    let brute = residue_system_brute(system, d, target);
    if brute != residue_system_closed_form(system, d, target) {
        return Err(Error::ResidueDisagreement { d, target });
    }
    Ok(brute)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormCondition {
    pub base_d: u64,
    pub r: u64,
    /// Norm of θ - 2 down to Q, equal to (-1)^((r-1)/2)·r
    pub target: i64,
    pub system: ResidueSystem,
    pub modulus: i64,
    /// true when the condition does not rule out squareness
    pub survives: bool,
}

/// Norm-level necessary condition for θ - 2 to be a square modulo the
/// appropriate power of the prime above 2.
pub fn norm_necessary_condition(base_d: u64, r: u64) -> Result<NormCondition> {
    if r < 5 || !is_prime(r) {
        return Err(Error::InvalidPrime(r));
    }
    if base_d != 0 {
        if base_d == 1 || !is_squarefree(base_d) {
            return Err(Error::InvalidDiscriminant(base_d));
        }
        if base_d % r == 0 {
            return Err(Error::NotCoprime { d: base_d, r });
        }
    }
    let system = ResidueSystem::for_base(base_d)?;
    let field = RealCyclotomicField::new(r)?;
    let norm: BigInt = field.norm(&field.pi_r());
    if norm.abs() != BigInt::from(r) {
        return Err(Error::Internal(format!("norm of θ - 2 is {norm}")));
    }
    let target = norm.to_i64().expect("r fits in i64");
    let survives = residue_system_solvable(system, base_d, target)?;
    Ok(NormCondition { base_d, r, target, system, modulus: system.modulus(), survives })
}
