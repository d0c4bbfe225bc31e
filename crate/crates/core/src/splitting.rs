//! Decomposition of 2 and r in the real cyclotomic field and in its
//! compositum with a real quadratic field.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_squarefree, legendre};
use crate::cycfield::RealCyclotomicField;
use crate::error::{Error, Result};
use crate::ffpoly::{ddf_degrees, F2Poly};
use crate::galoisring::{GaloisRing, SquareClass};

/// One prime in a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFactor {
    /// ramification index
    pub e: usize,
    /// residue degree
    pub f: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub rational_prime: u64,
    pub field_degree: usize,
    pub primes: Vec<PrimeFactor>,
    pub unique: bool,
    pub inert: bool,
}

impl SplittingReport {
    fn new(rational_prime: u64, field_degree: usize, primes: Vec<PrimeFactor>) -> Self {
        let total: usize = primes.iter().map(|p| p.e * p.f).sum();
        assert_eq!(total, field_degree, "decomposition does not account for the degree");
        let unique = primes.len() == 1;
        let inert = unique && primes[0].e == 1 && primes[0].f == field_degree;
        SplittingReport { rational_prime, field_degree, primes, unique, inert }
    }

    /// Ramification index of the unique prime, if there is one.
    pub fn unique_e(&self) -> Option<usize> {
        self.unique.then(|| self.primes[0].e)
    }
}

fn check_r(r: u64) -> Result<()> {
    if r < 5 || !is_prime(r) {
        return Err(Error::InvalidPrime(r));
    }
    Ok(())
}

fn check_d(d: u64) -> Result<()> {
    if d <= 1 || !is_squarefree(d) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(())
}

/// Residue-degree shape of ψ_r mod 2; 2 is unramified because disc(ψ_r) is odd.
pub fn split_2_in_qplus_field(field: &RealCyclotomicField) -> Result<SplittingReport> {
    let psi2 = F2Poly::from_bits(field.psi().iter().map(|c| c.bit(0)));
    let mut primes = Vec::new();
    for (f, count) in ddf_degrees(&psi2)? {
        primes.extend(std::iter::repeat(PrimeFactor { e: 1, f }).take(count));
    }
    Ok(SplittingReport::new(2, field.degree(), primes))
}

pub fn split_2_in_qplus(r: u64) -> Result<SplittingReport> {
    check_r(r)?;
    split_2_in_qplus_field(&RealCyclotomicField::new(r)?)
}

pub fn split_2_in_quadratic(d: u64) -> Result<SplittingReport> {
    check_d(d)?;
    let primes = match d % 8 {
        1 => vec![PrimeFactor { e: 1, f: 1 }; 2],
        5 => vec![PrimeFactor { e: 1, f: 2 }],
        _ => vec![PrimeFactor { e: 2, f: 1 }],
    };
    Ok(SplittingReport::new(2, 2, primes))
}

/// Fiber of a degree-f unramified prime above 2 in the extension by √d.
pub fn quadratic_fiber(d: u64, f: usize) -> Result<Vec<PrimeFactor>> {
    if d % 2 == 0 {
        return Ok(vec![PrimeFactor { e: 2, f }]);
    }
    let ring = GaloisRing::standard(3, f)?;
    let class = ring.classify_unit(&ring.from_int(d as i64))?.0;
    Ok(match class {
        SquareClass::Mod4Obstructed => vec![PrimeFactor { e: 2, f }],
        SquareClass::Mod8Obstructed => vec![PrimeFactor { e: 1, f: 2 * f }],
        SquareClass::Square => vec![PrimeFactor { e: 1, f }; 2],
    })
}

pub fn split_2_in_kplus(d: u64, r: u64) -> Result<SplittingReport> {
    check_d(d)?;
    let base = split_2_in_qplus(r)?;
    let mut primes = Vec::new();
    for q in &base.primes {
        primes.extend(quadratic_fiber(d, q.f)?);
    }
    Ok(SplittingReport::new(2, 2 * base.field_degree, primes))
}

/// r is totally ramified in the real cyclotomic field, with uniformizer θ - 2.
pub fn split_r_in_qplus(r: u64) -> Result<SplittingReport> {
    check_r(r)?;
    let field = RealCyclotomicField::new(r)?;
    let n = field.norm(&field.pi_r());
    if n.magnitude() != &r.into() {
        return Err(Error::Internal(format!("norm of θ - 2 is {n}, expected ±{r}")));
    }
    Ok(SplittingReport::new(r, field.degree(), vec![PrimeFactor { e: field.degree(), f: 1 }]))
}

/// r is inert in Q(√d) iff d is a non-residue mod r.
pub fn check_r_inert_in_quadratic(d: u64, r: u64) -> Result<bool> {
    if !is_prime(r) || r == 2 {
        return Err(Error::InvalidPrime(r));
    }
    check_d(d)?;
    if d % r == 0 {
        return Err(Error::NotCoprime { d, r });
    }
    Ok(legendre(d as i64, r) == -1)
}
