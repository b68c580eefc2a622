use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LaurentPoly;

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// Multiply by (s^d - 1) in place on a dense vector that has room.
fn mul_binomial(c: &mut Vec<BigInt>, d: usize) {
    let old = c.len();
    c.resize(old + d, BigInt::zero());
    for i in (0..old + d).rev() {
        let lower = if i >= d { c[i - d].clone() } else { BigInt::zero() };
        let cur = if i < old { c[i].clone() } else { BigInt::zero() };
        c[i] = lower - cur;
    }
}

// Exact division by (s^d - 1).
fn div_binomial(c: &mut Vec<BigInt>, d: usize) {
    let qlen = c.len() - d;
    let mut q = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        let prev = if i >= d { q[i - d].clone() } else { BigInt::zero() };
        q[i] = prev - &c[i];
    }
    *c = q;
}

/// The `m`-th cyclotomic polynomial, via `prod_{d | m} (s^d - 1)^{mu(m/d)}`.
pub fn cyclotomic_polynomial(m: u64) -> LaurentPoly {
    assert!(m >= 1);
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut c = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(m / d) == 1 {
            mul_binomial(&mut c, d as usize);
        }
    }
    for &d in &divisors {
        if mobius(m / d) == -1 {
            div_binomial(&mut c, d as usize);
        }
    }
    LaurentPoly::new(0, c).canonical()
}

/// Exact test: `f` is, up to `±s^k`, a product of cyclotomic polynomials.
///
/// Strips cyclotomic factors `Phi_m` with `phi(m) <= deg`; since `phi(m) >= sqrt(m/2)`
/// only `m <= 2 deg^2` can occur. What remains must be a unit.
pub fn is_cyclotomic_product(f: &LaurentPoly) -> bool {
    assert!(!f.is_zero());
    let mut g = f.canonical();
    let monic_ends = g.lowest_coeff().is_some_and(|c| c.abs().is_one())
        && g.leading_coeff().is_some_and(|c| c.abs().is_one());
    if !monic_ends {
        return false;
    }
    let bound = 2 * (g.degree() as u64).pow(2) + 2;
    let mut m = 1;
    while g.degree() > 0 && m <= bound {
        if totient(m) as usize <= g.degree() {
            let phi = cyclotomic_polynomial(m);
            while let Some(q) = g.div_exact(&phi) {
                g = q;
            }
        }
        m += 1;
    }
    g.is_unit()
}
