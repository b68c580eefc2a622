//! Laurent polynomials in one variable over arbitrary-precision integers.
//!
//! A `LaurentPoly` is stored as a lowest exponent plus a dense coefficient
//! vector with no zero at either end. Arithmetic keeps the raw exponents;
//! [`LaurentPoly::canonical`] picks the representative modulo units `±s^k`
//! (lowest exponent 0, positive lowest coefficient) and is what every
//! reported invariant goes through.

mod cyclotomic;
mod mahler;

pub use cyclotomic::{cyclotomic_polynomial, is_cyclotomic_product};
pub use mahler::{mahler_measure, max_root_modulus, roots, MahlerMeasure, RootEnclosure};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{det_bareiss, interpolate_integer, interpolation_nodes};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial<T: Into<BigInt>>(c: T, exp: i64) -> Self {
        Self::new(exp, vec![c.into()])
    }

    /// The variable `s`.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    /// `s^k - 1`, or `1 - s^{-k}` style for negative `k` is not needed; `k >= 1`.
    pub fn s_power_minus_one(k: u32) -> Self {
        let mut c = vec![BigInt::zero(); k as usize + 1];
        c[0] = BigInt::from(-1);
        c[k as usize] = BigInt::one();
        Self::new(0, c)
    }

    /// Polynomial with `coeffs[i]` the coefficient of `s^(low + i)`; trims zeros.
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for `±s^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Width of the Laurent support (`high - low`); 0 for nonzero constants and monomials.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Representative modulo units `±s^k`: lowest exponent 0 and positive lowest coefficient.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let neg = self.coeffs[0].is_negative();
        LaurentPoly {
            low: 0,
            coeffs: if neg {
                self.coeffs.iter().map(|c| -c).collect()
            } else {
                self.coeffs.clone()
            },
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs[0].is_positive())
    }

    /// Equality up to multiplication by `±s^k`.
    pub fn associated(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.low, self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal derivative; assumes a genuine polynomial (`low >= 0`).
    pub fn derivative(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i64;
            c.push(a * BigInt::from(e));
        }
        Self::new(self.low - 1, c)
    }

    /// Value at an integer point. Requires `low >= 0` unless `z` is a unit.
    pub fn eval(&self, z: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        if self.low >= 0 {
            acc * z.pow(self.low as u32)
        } else {
            let d = z.pow((-self.low) as u32);
            debug_assert!((&acc % &d).is_zero());
            acc / d
        }
    }

    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc * z.powi(self.low as i32)
    }

    /// Substitutes `s -> s^k` for `k >= 1`.
    pub fn compose_power(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let k = k as usize;
        let mut c = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * k] = a.clone();
        }
        Self::new(self.low * k as i64, c)
    }

    /// Exact quotient `self / d` in `Z[s^±1]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly_div_exact(&self.coeffs, &d.coeffs)?;
        Some(Self::new(self.low - d.low, q))
    }

    /// True if `self` divides `g` in `Z[s^±1]`. `0` divides only `0`.
    pub fn divides(&self, g: &Self) -> bool {
        if self.is_zero() {
            return g.is_zero();
        }
        g.div_exact(self).is_some()
    }

    /// Largest `k` with `f^k | self`, for nonzero non-unit `f` and nonzero `self`.
    pub fn multiplicity(&self, f: &Self) -> u32 {
        assert!(!f.is_zero() && !f.is_unit());
        if self.is_zero() {
            return u32::MAX;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(f) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Equal to `self(s^-1)` up to `±s^i`.
    pub fn is_reciprocal(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let rev: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        rev == self.coeffs || rev.iter().zip(&self.coeffs).all(|(a, b)| *a == -b)
    }

    /// `f^{(r)}`: the polynomial whose roots are the `r`-th powers of the roots of
    /// `self`, with leading coefficient raised to the `r`. Computed exactly as
    /// `Res_t(f(t), t^r - s)`; the result is canonical.
    pub fn power_transform(&self, r: u32) -> Self {
        assert!(r >= 1);
        let f = self.canonical();
        if f.is_zero() || r == 1 || f.degree() == 0 {
            return if f.degree() == 0 && !f.is_zero() {
                Self::constant(f.coeffs[0].pow(r)).canonical()
            } else {
                f
            };
        }
        let d = f.degree();
        let nodes = interpolation_nodes(d + 1);
        let values: Vec<BigInt> = nodes
            .iter()
            .map(|&z| {
                let mut g = vec![BigInt::zero(); r as usize + 1];
                g[0] = BigInt::from(-z);
                g[r as usize] = BigInt::one();
                resultant(&f.coeffs, &g)
            })
            .collect();
        let c = interpolate_integer(&nodes, &values).expect("resultant is an integer polynomial in s");
        Self::new(0, c).canonical()
    }

    /// Renders as sparse terms `c*v^k` sorted by degree.
    pub fn display_var(&self, var: &str) -> String {
        self.render(var, true)
    }

    /// Renders as `4 - 9s + s^3`: unit coefficients and exponents dropped.
    pub fn pretty(&self, var: &str) -> String {
        self.render(var, false)
    }

    fn render(&self, var: &str, explicit: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + i as i64;
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = if explicit {
                format!("{mag}*{var}^{k}")
            } else {
                let coef = if mag.is_one() && k != 0 { String::new() } else { mag.to_string() };
                match k {
                    0 => coef,
                    1 => format!("{coef}{var}"),
                    _ => format!("{coef}{var}^{k}"),
                }
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        out
    }

    /// Parses either rendering: terms `c`, `c*v^k`, `cv^k`, `v`, `-v^k` joined
    /// by `+`/`-`.
    pub fn parse(text: &str, var: &str) -> Option<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return None;
        }
        let mut acc = Self::zero();
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.char_indices() {
            let after_caret = cleaned[..i].ends_with('^');
            if (ch == '+' || ch == '-') && i > 0 && !after_caret {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (c, k) = match body.find(var) {
                Some(pos) => {
                    let coef = body[..pos].trim_end_matches('*');
                    let c = if coef.is_empty() { BigInt::one() } else { coef.parse::<BigInt>().ok()? };
                    let rest = &body[pos + var.len()..];
                    let k = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse::<i64>().ok()? };
                    (c, k)
                }
                None => (body.parse::<BigInt>().ok()?, 0),
            };
            acc = &acc + &Self::monomial(if neg { -c } else { c }, k);
        }
        Some(acc)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty("s"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().max(rhs.high_degree());
        let mut c = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[(self.low - low) as usize + i] += a;
        }
        for (i, a) in rhs.coeffs.iter().enumerate() {
            c[(rhs.low - low) as usize + i] += a;
        }
        LaurentPoly::new(low, c)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::new(self.low + rhs.low, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    lowest: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentJson {
            lowest: self.low,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = LaurentJson::deserialize(d)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::new(j.lowest, coeffs))
    }
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Exact division of dense integer polynomials, `None` when not divisible in `Z[s]`.
pub(crate) fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let den_len = den.len();
    assert!(den_len > 0 && !den[den_len - 1].is_zero());
    if num.is_empty() {
        return Some(Vec::new());
    }
    if num.len() < den_len {
        return None;
    }
    let lead = &den[den_len - 1];
    let mut rem: Vec<BigInt> = num.to_vec();
    let qlen = num.len() - den_len + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &rem[i + den_len - 1];
        if top.is_zero() {
            continue;
        }
        let (qi, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, d) in den.iter().enumerate() {
            if !d.is_zero() {
                rem[i + j] -= &qi * d;
            }
        }
        q[i] = qi;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

fn poly_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Greatest common divisor in `Z[s^±1]`, canonical. `gcd(0, 0) = 0`.
pub fn gcd(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    if f.is_zero() {
        return g.canonical();
    }
    if g.is_zero() {
        return f.canonical();
    }
    let cont = f.content().gcd(&g.content());
    let mut a = primitive(f.canonical().coeffs);
    let mut b = primitive(g.canonical().coeffs);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            a = vec![BigInt::one()];
            break;
        }
        let r = poly_pseudo_rem(&a, &b);
        a = b;
        b = primitive(r);
    }
    let a = primitive(a);
    LaurentPoly::new(0, a).scale(&cont).canonical()
}

/// Resultant of two dense integer polynomials (constant term first) via the
/// Sylvester determinant.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    assert!(!f.is_empty() && !g.is_empty());
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

/// Squarefree decomposition of a nonzero polynomial: primitive canonical
/// factors `g_i` with multiplicities such that `f = ±content * s^k * prod g_i^i`.
pub fn squarefree_decomposition(f: &LaurentPoly) -> Vec<(LaurentPoly, u32)> {
    assert!(!f.is_zero());
    let a0 = f.canonical().primitive_part();
    let mut out = Vec::new();
    if a0.degree() == 0 {
        return out;
    }
    let da = a0.derivative();
    let b = gcd(&a0, &da);
    let mut c = a0.div_exact(&b).expect("gcd divides");
    let mut d = &da.div_exact(&b).expect("gcd divides derivative") - &c.derivative();
    let mut i = 1;
    while c.degree() > 0 {
        let a = gcd(&c, &d);
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("gcd divides");
        d = &d.div_exact(&a).expect("gcd divides") - &c.derivative();
        i += 1;
    }
    out
}
