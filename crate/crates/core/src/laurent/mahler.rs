//! Numeric roots with certified enclosures, and the Mahler measure.
//!
//! Roots of each squarefree factor are found by Aberth-Ehrlich iteration in
//! double precision. Enclosures come from the Weierstrass corrections: the
//! union of the discs `D(z_k, n |W_k|)` contains every root, and a connected
//! component made of `m` discs contains exactly `m` of them. The computed
//! `p(z_k)` is padded by a running Horner rounding bound.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use super::{squarefree_decomposition, LaurentPoly};
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootEnclosure {
    pub center: Complex64,
    pub radius: f64,
    pub multiplicity: u32,
}

impl RootEnclosure {
    pub fn modulus_bounds(&self) -> (f64, f64) {
        let m = self.center.norm();
        ((m - self.radius).max(0.0), m + self.radius)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MahlerMeasure {
    pub value: f64,
    /// Bound on `|value - M(f)|`.
    pub error_bound: f64,
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    // value, derivative, and sum |c_i| |z|^i for the rounding bound
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let az = z.norm();
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
        mag = mag * az + ci.abs();
    }
    (p, dp, mag)
}

fn squarefree_roots(g: &LaurentPoly) -> Result<Vec<RootEnclosure>> {
    let n = g.degree();
    let c: Vec<f64> = g
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Unsupported(
            "coefficients exceed double precision range".into(),
        ));
    }
    let lead = c[n];
    // Initial guesses on a circle of radius |c0/cn|^(1/n), slightly rotated.
    let radius = (c[0].abs() / lead.abs()).powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp, _) = horner(&c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    let mut discs = Vec::with_capacity(n);
    let mut worst_residual: f64 = 0.0;
    for k in 0..n {
        let (p, _, mag) = horner(&c, z[k]);
        let eval_err = (4 * n + 4) as f64 * f64::EPSILON * mag;
        let denom: f64 = (0..n)
            .filter(|&j| j != k)
            .map(|j| (z[k] - z[j]).norm())
            .product::<f64>()
            * lead.abs();
        let r = n as f64 * (p.norm() + eval_err) / denom * (1.0 + 1e-10);
        worst_residual = worst_residual.max(p.norm() / mag.max(f64::MIN_POSITIVE));
        discs.push((z[k], if r.is_finite() { r } else { f64::INFINITY }));
    }
    if !converged && worst_residual > 1e-8 {
        return Err(Error::RootFinding {
            residual: worst_residual,
        });
    }
    // Merge overlapping discs; every root of a component is bounded by the
    // component's enclosing disc.
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while comp[i] != i {
            comp[i] = comp[comp[i]];
            i = comp[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (discs[i].0 - discs[j].0).norm() <= discs[i].1 + discs[j].1 {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let root = find(&mut comp, i);
        let members: Vec<usize> = (0..n).filter(|&j| find(&mut comp, j) == root).collect();
        let radius = if members.len() == 1 {
            discs[i].1
        } else {
            members
                .iter()
                .map(|&j| (discs[j].0 - discs[i].0).norm() + discs[j].1)
                .fold(0.0, f64::max)
        };
        out.push(RootEnclosure {
            center: discs[i].0,
            radius,
            multiplicity: 1,
        });
    }
    Ok(out)
}

/// All complex roots of `f` (ignoring the unit `s^k`), with multiplicities.
pub fn roots(f: &LaurentPoly) -> Result<Vec<RootEnclosure>> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for mut r in squarefree_roots(&g)? {
            r.multiplicity = m;
            out.push(r);
        }
    }
    Ok(out)
}

/// Mahler measure `|c_d| prod max(|lambda|, 1)` with a bound on the error.
pub fn mahler_measure(f: &LaurentPoly) -> Result<MahlerMeasure> {
    assert!(!f.is_zero(), "Mahler measure of the zero polynomial");
    let f = f.canonical();
    let content = f.content().abs().to_f64().unwrap_or(f64::INFINITY);
    let mut value = content;
    let mut lo = content;
    let mut hi = content;
    for (g, m) in squarefree_decomposition(&f) {
        let lead = g.leading_coeff().unwrap().abs().to_f64().unwrap_or(f64::INFINITY);
        let mut v = lead;
        let mut l = lead;
        let mut h = lead;
        for r in squarefree_roots(&g)? {
            let (rl, rh) = r.modulus_bounds();
            v *= r.center.norm().max(1.0);
            l *= rl.max(1.0);
            h *= rh.max(1.0);
        }
        value *= v.powi(m as i32);
        lo *= l.powi(m as i32);
        hi *= h.powi(m as i32);
    }
    let rounding = 8.0 * f.degree().max(1) as f64 * f64::EPSILON * value;
    let error_bound = (hi - value).max(value - lo).max(0.0) + rounding;
    Ok(MahlerMeasure { value, error_bound })
}

/// Largest root modulus and a bound on its error; `None` for constants.
pub fn max_root_modulus(f: &LaurentPoly) -> Result<Option<(f64, f64)>> {
    let rs = roots(f)?;
    if rs.is_empty() {
        return Ok(None);
    }
    let value = rs.iter().map(|r| r.center.norm()).fold(0.0, f64::max);
    let lo = rs.iter().map(|r| r.modulus_bounds().0).fold(0.0, f64::max);
    let hi = rs.iter().map(|r| r.modulus_bounds().1).fold(0.0, f64::max);
    Ok(Some((value, (hi - value).max(value - lo))))
}
