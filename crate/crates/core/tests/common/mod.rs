//! Independent oracles used to derive and cross-check expected values.

#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rrp_core::{CycInt, GaloisRing, GrElem, RealCyclotomicField};

/// Smallest primitive root mod a prime r, by direct search.
pub fn primitive_root(r: u64) -> u64 {
    (2..r)
        .find(|&g| {
            let mut x = 1u64;
            (1..r - 1).all(|_| {
                x = x * g % r;
                x != 1
            })
        })
        .expect("prime modulus")
}

/// Order of 2 in (Z/r)^× / {±1}, by repeated doubling.
pub fn order_two_mod_sign(r: u64) -> u64 {
    let mut x = 2 % r;
    let mut k = 1;
    while x != 1 && x != r - 1 {
        x = 2 * x % r;
        k += 1;
    }
    k
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else { return BigRational::zero() };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let piv = m[col][col].clone();
        det *= &piv;
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &piv;
            for j in col..n {
                let t = &f * &m[col][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Resultant of two integer polynomials (constant term first) via the
/// Sylvester matrix over Q.
pub fn resultant(a: &[i64], b: &[i64]) -> BigRational {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = BigRational::from_integer(BigInt::from(*c));
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = BigRational::from_integer(BigInt::from(*c));
        }
        rows.push(row);
    }
    rational_det(rows)
}

/// h⁻ from the product of generalized Bernoulli numbers over odd characters,
/// written as 2r·(-1/(2r))^d·Res(X^d + 1, Σ_k (g^k mod r) X^k).
pub fn analytic_h_minus(r: u64) -> BigInt {
    let d = ((r - 1) / 2) as usize;
    let g = primitive_root(r);
    let mut p = Vec::with_capacity(r as usize - 1);
    let mut x = 1u64;
    for _ in 0..r - 1 {
        p.push(x as i64);
        x = x * g % r;
    }
    let mut xd1 = vec![0i64; d + 1];
    xd1[0] = 1;
    xd1[d] = 1;
    let res = resultant(&xd1, &p);
    let two_r = BigRational::from_integer(BigInt::from(2 * r));
    let factor = num_traits::pow(-two_r.recip(), d);
    let h = two_r * factor * res;
    assert!(h.is_integer(), "analytic value is not an integer for r = {r}");
    h.to_integer().abs()
}

/// Weierstrass c4 and Δ from a-invariants (a1, a2, a3, a4, a6).
pub fn weierstrass_c4_delta(k: &RealCyclotomicField, a: [&CycInt; 5]) -> (CycInt, CycInt) {
    let [a1, a2, a3, a4, a6] = a;
    let m = |x: &CycInt, y: &CycInt| k.mul(x, y);
    let s = |x: &CycInt, n: i64| x.scale(&BigInt::from(n));
    let b2 = &m(a1, a1) + &s(a2, 4);
    let b4 = &s(a4, 2) + &m(a1, a3);
    let b6 = &m(a3, a3) + &s(a6, 4);
    let b8 = &(&(&(&m(&m(a1, a1), a6) + &s(&m(a2, a6), 4)) - &m(&m(a1, a3), a4)) + &m(a2, &m(a3, a3))) - &m(a4, a4);
    let c4 = &m(&b2, &b2) - &s(&b4, 24);
    let delta = &(&(&(-&m(&m(&b2, &b2), &b8)) - &s(&m(&m(&b4, &b4), &b4), 8)) - &s(&m(&b6, &b6), 27))
        + &s(&m(&m(&b2, &b4), &b6), 9);
    (c4, delta)
}

/// c4 and Δ of Y² = X(X - A)(X + B), expanded to a-invariants.
pub fn frey_c4_delta(k: &RealCyclotomicField, a: &CycInt, b: &CycInt) -> (CycInt, CycInt) {
    let z = k.zero();
    let a2 = b - a;
    let a4 = -&k.mul(a, b);
    weierstrass_c4_delta(k, [&z, &a2, &z, &a4, &z])
}

/// Every square in a small Galois ring.
pub fn square_table(ring: &GaloisRing) -> HashSet<GrElem> {
    ring.all_elements().map(|v| ring.square(&v)).collect()
}

/// Number of primes above 2 in Q(θ_r, √d) and their (e, f), from the
/// Frobenius of 2 in the abelian Galois group (Z/r)^×/{±1} × {±1}.
pub fn tower_shape_by_characters(d: u64, r: u64) -> (usize, usize, usize) {
    let degree = (r - 1) as usize;
    let o = order_two_mod_sign(r) as usize;
    match d % 8 {
        2 | 3 | 6 | 7 => (degree / (2 * o), 2, o),
        1 => (degree / o, 1, o),
        5 => {
            let f = if o % 2 == 0 { o } else { 2 * o };
            (degree / f, 1, f)
        }
        _ => unreachable!("squarefree d"),
    }
}

/// Minimal deterministic RNG helpers.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Random coprime (x, y) with x + y ≠ 0 and |x|, |y| ≤ bound.
pub fn coprime_pair<R: rand::Rng>(rng: &mut R, bound: i64) -> (i64, i64) {
    loop {
        let x = rng.gen_range(-bound..=bound);
        let y = rng.gen_range(-bound..=bound);
        if gcd(x, y) == 1 && x + y != 0 {
            return (x, y);
        }
    }
}
