//! Verdict engine: evaluates the hypotheses of the rational-base criterion,
//! the quadratic-base criterion, and the general four-condition test.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{is_prime, is_squarefree, legendre, mult_order};
use crate::classnumber::{h_plus_parity, HPlusTable, Parity};
use crate::cycfield::{reduce_mod, RealCyclotomicField};
use crate::descent::norm_necessary_condition;
use crate::error::{Error, Result};
use crate::galoisring::{inert_ring, is_square_pi_r, SquareClass};
use crate::splitting::{split_2_in_kplus, split_2_in_qplus_field, SplittingReport};

pub const SCAN_MAX_R: u64 = 200;
/// Precision 4e + 1 at an unramified prime.
pub const UNRAMIFIED_PRECISION: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    RationalCorollary,
    QuadraticCorollary,
    FourConditions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

impl Status {
    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub status: Status,
    pub evidence: Value,
}

impl Condition {
    fn new(name: &str, status: Status, evidence: Value) -> Self {
        Condition { name: name.to_string(), status, evidence }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub target: Target,
    pub base_d: u64,
    pub r: u64,
    pub conditions: Vec<Condition>,
    /// observations that do not gate the verdict
    pub diagnostics: Value,
    pub overall: Status,
}

impl Verdict {
    fn new(target: Target, base_d: u64, r: u64, conditions: Vec<Condition>, diagnostics: Value) -> Self {
        let overall = combine(conditions.iter().map(|c| c.status));
        Verdict { target, base_d, r, conditions, diagnostics, overall }
    }

    pub fn failing(&self) -> Vec<&str> {
        self.named(Status::Fail)
    }

    pub fn undetermined(&self) -> Vec<&str> {
        self.named(Status::Undetermined)
    }

    fn named(&self, s: Status) -> Vec<&str> {
        self.conditions.iter().filter(|c| c.status == s).map(|c| c.name.as_str()).collect()
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// Fail dominates, then undetermined; pass only if every status passes.
pub fn combine<I: IntoIterator<Item = Status>>(statuses: I) -> Status {
    let mut out = Status::Pass;
    for s in statuses {
        match s {
            Status::Fail => return Status::Fail,
            Status::Undetermined => out = Status::Undetermined,
            Status::Pass => {}
        }
    }
    out
}

pub const COND_R_MOD_8: &str = "r mod 8";
pub const COND_TWO_INERT: &str = "2 inert";
pub const COND_H_PLUS: &str = "h+ parity";
pub const COND_R_COPRIME_D: &str = "r does not divide d";
pub const COND_UNIQUE_TWO: &str = "unique prime above 2";
pub const COND_R_INERT: &str = "r inert in K";
pub const COND_NOT_SQUARE: &str = "theta - 2 not a square";

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

/// Order of 2 in (Z/r)^× / {±1}.
pub fn order_of_two_mod_sign(r: u64) -> u64 {
    let o = mult_order(2, r);
    if o % 2 == 0 {
        o / 2
    } else {
        o
    }
}

fn splitting_json(rep: &SplittingReport) -> Value {
    json!({
        "primes": rep.primes.iter().map(|p| json!({"e": p.e, "f": p.f})).collect::<Vec<_>>(),
        "unique": rep.unique,
        "inert": rep.inert,
    })
}

fn h_plus_condition(base_d: u64, r: u64, table: &HPlusTable) -> Result<Condition> {
    Ok(match h_plus_parity(base_d, r, table)? {
        Some(ev) => Condition::new(
            COND_H_PLUS,
            Status::from_bool(ev.parity == Parity::Odd),
            json!({
                "parity": ev.parity,
                "source": ev.source,
                "h_minus": ev.h_minus.map(|h| h.to_string()),
            }),
        ),
        None => Condition::new(
            COND_H_PLUS,
            Status::Undetermined,
            json!({"missing_entry": {"d": base_d, "r": r}}),
        ),
    })
}

fn pi_norm(field: &RealCyclotomicField) -> i64 {
    field.norm(&field.pi_r()).to_i64().expect("norm of θ - 2 is ±r")
}

/// Rational base: r ≢ 1 mod 8, 2 inert in Q(θ), and h⁺ odd.
pub fn check_corollary_q(r: u64) -> Result<Verdict> {
    check_r(r)?;
    let field = RealCyclotomicField::new(r)?;
    let split = split_2_in_qplus_field(&field)?;
    let conditions = vec![
        Condition::new(COND_R_MOD_8, Status::from_bool(r % 8 != 1), json!({"r_mod_8": r % 8})),
        Condition::new(
            COND_TWO_INERT,
            Status::from_bool(split.inert),
            json!({"splitting": splitting_json(&split), "order_of_2_mod_sign": order_of_two_mod_sign(r)}),
        ),
        h_plus_condition(0, r, &HPlusTable::default())?,
    ];
    let mut diagnostics = json!({"norm_theta_minus_2": pi_norm(&field)});
    if split.inert {
        diagnostics["theta_minus_2_square_mod_32"] = json!(is_square_pi_r(&field, UNRAMIFIED_PRECISION)?);
    }
    Ok(Verdict::new(Target::RationalCorollary, 0, r, conditions, diagnostics))
}

/// Quadratic base Q(√d): r ∤ d, r ≢ 1, d mod 8, a unique prime above 2, h⁺ odd.
pub fn check_corollary_quad(d: u64, r: u64, table: &HPlusTable) -> Result<Verdict> {
    check_d(d)?;
    check_r(r)?;
    let split = split_2_in_kplus(d, r)?;
    let coprime = d % r != 0;
    let conditions = vec![
        Condition::new(COND_R_COPRIME_D, Status::from_bool(coprime), json!({"d_mod_r": d % r})),
        Condition::new(
            COND_R_MOD_8,
            Status::from_bool(r % 8 != 1 && r % 8 != d % 8),
            json!({"r_mod_8": r % 8, "d_mod_8": d % 8}),
        ),
        Condition::new(COND_UNIQUE_TWO, Status::from_bool(split.unique), json!({"splitting": splitting_json(&split)})),
        h_plus_condition(d, r, table)?,
    ];
    let diagnostics = json!({
        "legendre_d_r": legendre(d as i64, r),
        "r_inert_in_K": coprime && legendre(d as i64, r) == -1,
    });
    Ok(Verdict::new(Target::QuadraticCorollary, d, r, conditions, diagnostics))
}

/// Decides whether θ - 2 avoids the squares near the prime above 2.
fn not_square_condition(base_d: u64, field: &RealCyclotomicField, split: &SplittingReport) -> Result<Condition> {
    let Some(e) = split.unique_e() else {
        return Ok(Condition::new(
            COND_NOT_SQUARE,
            Status::Undetermined,
            json!({"reason": "no unique prime above 2"}),
        ));
    };
    let n = UNRAMIFIED_PRECISION;
    if e == 1 && base_d == 0 {
        let square = is_square_pi_r(field, n)?;
        return Ok(Condition::new(
            COND_NOT_SQUARE,
            Status::from_bool(!square),
            json!({"method": "galois ring", "precision": n, "square": square}),
        ));
    }
    if e == 1 {
        // the prime of Q(θ) below is inert of odd degree f and stays inert
        // in the quadratic step; units of the base ring that clear the mod-4
        // test become squares there, since a base residue has trace 0 in the
        // quadratic residue extension
        let ring = inert_ring(field, n)?;
        let u = ring.elem(&reduce_mod(&field.pi_r(), 1u64 << n));
        let (class, _) = ring.classify_unit(&u)?;
        let square = class != SquareClass::Mod4Obstructed;
        return Ok(Condition::new(
            COND_NOT_SQUARE,
            Status::from_bool(!square),
            json!({"method": "galois ring tower", "precision": n, "base_class": class, "square": square}),
        ));
    }
    if base_d % field.r() == 0 {
        return Ok(Condition::new(
            COND_NOT_SQUARE,
            Status::Undetermined,
            json!({"reason": "r divides d, the norm residue system does not apply"}),
        ));
    }
    let nc = norm_necessary_condition(base_d, field.r())?;
    let status = if nc.survives { Status::Undetermined } else { Status::Pass };
    Ok(Condition::new(
        COND_NOT_SQUARE,
        status,
        json!({
            "method": "norm residue system",
            "target": nc.target,
            "modulus": nc.modulus,
            "system": nc.system,
            "necessary_condition_survives": nc.survives,
        }),
    ))
}

/// The four conditions: r inert in K, a unique prime above 2 in K(θ), h⁺ odd,
/// and θ - 2 not a square modulo the (4e + 1)-th power of that prime.
pub fn check_theorem_main2(base_d: u64, r: u64, table: &HPlusTable) -> Result<Verdict> {
    check_r(r)?;
    if base_d != 0 {
        check_d(base_d)?;
    }
    let field = RealCyclotomicField::new(r)?;
    let inert_cond = if base_d == 0 {
        Condition::new(COND_R_INERT, Status::Pass, json!({"base": "Q"}))
    } else if base_d % r == 0 {
        Condition::new(COND_R_INERT, Status::Fail, json!({"ramified": true}))
    } else {
        let l = legendre(base_d as i64, r);
        Condition::new(COND_R_INERT, Status::from_bool(l == -1), json!({"legendre_d_r": l}))
    };
    let split = if base_d == 0 { split_2_in_qplus_field(&field)? } else { split_2_in_kplus(base_d, r)? };
    let unique_cond = Condition::new(
        COND_UNIQUE_TWO,
        Status::from_bool(split.unique),
        json!({"splitting": splitting_json(&split)}),
    );
    let not_square = not_square_condition(base_d, &field, &split)?;
    let conditions = vec![inert_cond, unique_cond, h_plus_condition(base_d, r, table)?, not_square];
    let mut diagnostics = json!({"norm_theta_minus_2": pi_norm(&field)});
    match norm_necessary_condition(base_d, r) {
        Ok(nc) => diagnostics["norm_condition_survives"] = json!(nc.survives),
        Err(Error::NotApplicable(_)) | Err(Error::NotCoprime { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(Verdict::new(Target::FourConditions, base_d, r, conditions, diagnostics))
}

/// Primes 5 ≤ r ≤ r_max passing the rational-base criterion, ascending.
pub fn scan_q(r_max: u64) -> Result<Vec<u64>> {
    if r_max > SCAN_MAX_R {
        return Err(Error::PrimeOutOfRange { r: r_max, min: 5, max: SCAN_MAX_R });
    }
    let mut verdicts = scan_q_verdicts(r_max)?;
    verdicts.retain(|v| v.overall == Status::Pass);
    Ok(verdicts.into_iter().map(|v| v.r).collect())
}

/// Verdicts for every prime 5 ≤ r ≤ r_max, ascending.
pub fn scan_q_verdicts(r_max: u64) -> Result<Vec<Verdict>> {
    if r_max > SCAN_MAX_R {
        return Err(Error::PrimeOutOfRange { r: r_max, min: 5, max: SCAN_MAX_R });
    }
    let primes: Vec<u64> = (5..=r_max).filter(|&r| is_prime(r)).collect();
    let mut out: Vec<Verdict> = primes.par_iter().map(|&r| check_corollary_q(r)).collect::<Result<_>>()?;
    out.sort_by_key(|v| v.r);
    Ok(out)
}
