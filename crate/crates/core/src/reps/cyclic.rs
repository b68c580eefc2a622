//! Representations with cyclic image `<alpha>`, `alpha = (1 2 ... p)`, for
//! kernels on one base generator.
//!
//! Writing `a_nu -> alpha^{e_nu}`, each relator instance becomes a linear
//! equation in the `e_nu` modulo `p`: a circulant system whose rows hold the
//! exponent sums of the relator template by shift.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::perm::Permutation;
use super::PeriodicRep;
use crate::error::{Error, Result};
use crate::groups::KernelPresentation;
use crate::laurent::{gcd, resultant, LaurentPoly};
use crate::words::shift_kernel_word;

/// Cap on `p^nullity` candidates.
const MAX_CANDIDATES: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct CyclicRep {
    pub exponents: Vec<u64>,
    pub rep: PeriodicRep,
}

#[derive(Clone, Debug)]
pub struct CyclicReps {
    pub reps: Vec<CyclicRep>,
    /// Dimension of the null space over `F_p`.
    pub nullity: usize,
    /// `Res(Delta(t), t^r - 1)` for the order `Delta` of the abelianized templates.
    pub resultant: BigInt,
    pub note: Option<String>,
}

#[derive(Serialize)]
struct CyclicRepsJson<'a> {
    p: u64,
    r: usize,
    nullity: usize,
    resultant: String,
    note: &'a Option<String>,
    exponents: Vec<&'a [u64]>,
}

impl CyclicReps {
    pub fn to_json(&self, p: u64, r: usize) -> serde_json::Value {
        serde_json::to_value(CyclicRepsJson {
            p,
            r,
            nullity: self.nullity,
            resultant: self.resultant.to_string(),
            note: &self.note,
            exponents: self.reps.iter().map(|c| c.exponents.as_slice()).collect(),
        })
        .expect("serializes")
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Basis of the null space of `m` over `F_p`.
fn null_space_mod_p(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(pr) = (row..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = pow_mod(m[row][c], p - 2, p);
        for v in m[row].iter_mut() {
            *v = *v * inv % p;
        }
        let pr = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i != row && other[c] != 0 {
                let f = other[c];
                for (x, &y) in other.iter_mut().zip(&pr).take(cols) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[k][f]) % p;
            }
            v
        })
        .collect()
}

/// All nonzero period-`r` representations `a_nu -> alpha^{e_nu}` into `S_p`,
/// each verified against every relator instance, in lexicographic order of
/// exponent vectors.
pub fn cyclic_reps_mod_p(kp: &KernelPresentation, p: u64, r: usize) -> Result<CyclicReps> {
    if kp.num_generators() != 1 {
        return Err(Error::Unsupported(
            "cyclic representations need a kernel on one base generator".into(),
        ));
    }
    if !is_prime(p) || p > 4096 {
        return Err(Error::Unsupported(format!("{p} is not a supported prime")));
    }
    if r == 0 {
        return Err(Error::RepMismatch("period must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut delta = LaurentPoly::zero();
    for t in &kp.templates {
        let mut poly = LaurentPoly::zero();
        for nu in 0..r as i64 {
            let mut row = vec![0i64; r];
            for l in t.letters() {
                let e = if l.inverse { -1 } else { 1 };
                row[(l.shift + nu).rem_euclid(r as i64) as usize] += e;
                if nu == 0 {
                    poly = &poly + &LaurentPoly::monomial(e, l.shift);
                }
            }
            rows.push(row.into_iter().map(|v| v.rem_euclid(p as i64) as u64).collect());
        }
        delta = gcd(&delta, &poly);
    }
    let res = if delta.is_zero() {
        BigInt::zero()
    } else {
        let tr = LaurentPoly::s_power_minus_one(r as u32);
        resultant(delta.canonical().coeffs(), tr.coeffs())
    };
    let basis = null_space_mod_p(rows, r, p);
    let nullity = basis.len();
    if nullity == 0 {
        return Ok(CyclicReps {
            reps: Vec::new(),
            nullity,
            note: Some(format!(
                "Res(Delta(t), t^{r} - 1) = {res} is not divisible by {p}; only the trivial solution exists"
            )),
            resultant: res,
        });
    }
    let count = (p as u128).pow(nullity as u32);
    if count > MAX_CANDIDATES as u128 {
        return Err(Error::Unsupported(format!("{count} candidate vectors exceed the search cap")));
    }
    let alpha = Permutation::from_images((0..p as usize).map(|i| (i + 1) % p as usize).collect())?;
    let powers: Vec<Permutation> = (0..p as i64).map(|k| alpha.pow(k)).collect();
    let mut vectors = Vec::new();
    for code in 1..count as u64 {
        let mut c = code;
        let mut v = vec![0u64; r];
        for b in &basis {
            let coef = c % p;
            c /= p;
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + coef * y) % p;
            }
        }
        vectors.push(v);
    }
    vectors.sort();
    let mut reps = Vec::with_capacity(vectors.len());
    for v in vectors {
        let table = vec![v.iter().map(|&e| powers[e as usize].clone()).collect()];
        let rep = PeriodicRep::new(p as usize, r, kp.generators.clone(), table)?;
        for (j, t) in kp.templates.iter().enumerate() {
            for nu in 0..r {
                if !rep.evaluate(&shift_kernel_word(t, nu as i64)).is_identity() {
                    return Err(Error::RelatorViolated { relator: j + 1, shift: nu });
                }
            }
        }
        reps.push(CyclicRep { exponents: v, rep });
    }
    Ok(CyclicReps {
        reps,
        nullity,
        resultant: res,
        note: None,
    })
}
