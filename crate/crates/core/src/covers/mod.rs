//! Homology of the `N`-fold covers induced on branched cyclic covers: the
//! torsion numbers `b_{rho,rn}` and their exponential growth.
//!
//! The cover of order `rn` is presented by the twisted Jacobian with shift
//! indices wrapped modulo `rn` and `s = 1`, which kills the lift of `x^{rn}`.

mod smith;

pub use smith::{smith_exact, smith_modular, smith_normal_form, IntMatrix, SmithForm, MODULAR_THRESHOLD};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::alexmod::{jacobian_unchecked, order_delta0, spectral_check, CheckResult};
use crate::error::{Error, Result};
use crate::groups::{kernel_presentation, normalize, AugmentedGroupSystem, KernelPresentation};
use crate::laurent::{mahler_measure, LaurentPoly};
use crate::reps::PeriodicRep;

fn prepared(sys: &AugmentedGroupSystem, rep: &PeriodicRep) -> Result<KernelPresentation> {
    let kp = kernel_presentation(&normalize(sys))?;
    rep.verify(&kp)?;
    Ok(kp)
}

/// Integer matrix of size `(N rn R) x (N rn G)` presenting `H_1` of the cover
/// of the `rn`-fold branched cyclic cover. Requires the `knot` flag.
pub fn branched_cover_matrix(sys: &AugmentedGroupSystem, rep: &PeriodicRep, n: usize) -> Result<IntMatrix> {
    if !sys.meta.knot {
        return Err(Error::Unsupported(
            "branched covers need an input declared knot-like (`meta knot`)".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Unsupported("cover index must be positive".into()));
    }
    let kp = prepared(sys, rep)?;
    Ok(wrapped_matrix(&kp, rep, n))
}

fn wrapped_matrix(kp: &KernelPresentation, rep: &PeriodicRep, n: usize) -> IntMatrix {
    let j = jacobian_unchecked(kp, &rep.with_period_multiple(n));
    IntMatrix::from_rows(crate::alexmod::matrix::eval_at_one(&j))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverHomology {
    pub n: usize,
    /// Order of the torsion subgroup.
    pub torsion: BigInt,
    pub free_rank: usize,
    pub factors: Vec<BigInt>,
}

pub fn cover_homology(sys: &AugmentedGroupSystem, rep: &PeriodicRep, n: usize) -> Result<CoverHomology> {
    let f = smith_normal_form(&branched_cover_matrix(sys, rep, n)?);
    Ok(CoverHomology {
        n,
        torsion: f.torsion(),
        free_rank: f.free_rank,
        factors: f.torsion_factors(),
    })
}

/// `b_{rho,rn}`: order of the torsion subgroup of `H_1`. Use [`cover_homology`]
/// to see the free rank as well.
pub fn torsion_number(sys: &AugmentedGroupSystem, rep: &PeriodicRep, n: usize) -> Result<BigInt> {
    Ok(cover_homology(sys, rep, n)?.torsion)
}

/// Natural log of a positive integer of any size.
fn ln_big(b: &BigInt) -> f64 {
    let bits = b.bits();
    if bits < 1000 {
        return b.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = b >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub b: BigInt,
    /// `b^{1/n}`.
    pub b_pow: f64,
    pub free_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    #[serde(rename = "D")]
    pub d: LaurentPoly,
    pub mahler: f64,
    pub mahler_error: f64,
    pub rows: Vec<GrowthRow>,
    /// `b^{1/n}` for the last three `n`.
    pub last_three: Vec<f64>,
    /// Least-squares slope of `ln b` against `n` over rows with free rank 0,
    /// and its exponential.
    pub slope: Option<f64>,
    pub slope_exp: Option<f64>,
    /// `|b^{1/n_max} - M(D)|`.
    pub final_gap: f64,
    /// `n` values left out of the fit because the free rank is positive.
    pub excluded: Vec<usize>,
}

impl GrowthReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,b,b_pow\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.b, r.b_pow));
        }
        out
    }
}

/// Torsion numbers for `n = 1..=n_max`, computed in parallel, against `M(D_{rho,r})`.
pub fn mahler_growth_experiment(sys: &AugmentedGroupSystem, rep: &PeriodicRep, n_max: usize) -> Result<GrowthReport> {
    if n_max == 0 {
        return Err(Error::Unsupported("n_max must be positive".into()));
    }
    if !sys.meta.knot {
        return Err(Error::Unsupported(
            "branched covers need an input declared knot-like (`meta knot`)".into(),
        ));
    }
    let kp = prepared(sys, rep)?;
    let d = order_delta0(&jacobian_unchecked(&kp, rep));
    if d.is_zero() {
        return Err(Error::Unsupported(
            "D = 0: the torsion growth is not governed by a Mahler measure (vanishing case)".into(),
        ));
    }
    let m = mahler_measure(&d)?;
    let rows: Vec<GrowthRow> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let f = smith_normal_form(&wrapped_matrix(&kp, rep, n));
            let b = f.torsion();
            GrowthRow {
                n,
                b_pow: (ln_big(&b) / n as f64).exp(),
                b,
                free_rank: f.free_rank,
            }
        })
        .collect();
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.free_rank == 0 && !r.b.is_zero())
        .map(|r| (r.n as f64, ln_big(&r.b.abs())))
        .collect();
    let slope = (fit.len() >= 2).then(|| {
        let k = fit.len() as f64;
        let mx = fit.iter().map(|p| p.0).sum::<f64>() / k;
        let my = fit.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = fit.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = fit.iter().map(|(x, _)| (x - mx).powi(2)).sum();
        sxy / sxx
    });
    let last = rows.last().expect("n_max > 0").b_pow;
    Ok(GrowthReport {
        d,
        mahler: m.value,
        mahler_error: m.error_bound,
        last_three: rows.iter().rev().take(3).rev().map(|r| r.b_pow).collect(),
        slope,
        slope_exp: slope.map(f64::exp),
        final_gap: (last - m.value).abs(),
        excluded: rows.iter().filter(|r| r.free_rank > 0).map(|r| r.n).collect(),
        rows,
    })
}

/// `(max |z|)^{1/r} <= GR` for inputs declared fibered with a growth rate.
pub fn fibered_spectral_check(sys: &AugmentedGroupSystem, rep: &PeriodicRep) -> Result<CheckResult> {
    let kp = prepared(sys, rep)?;
    let d = order_delta0(&jacobian_unchecked(&kp, rep));
    spectral_check(sys, rep.period(), &d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(rel: &str) -> AugmentedGroupSystem {
        AugmentedGroupSystem::parse(&format!("gens x y; eps x=1 y=1; rel {rel}; meta knot;")).unwrap()
    }

    #[test]
    fn trefoil_double_cover_is_lens_space() {
        let sys = knot("x y x y^-1 x^-1 y^-1");
        let kp = kernel_presentation(&normalize(&sys)).unwrap();
        let rep = PeriodicRep::trivial(&kp, 1, 1);
        assert_eq!(torsion_number(&sys, &rep, 2).unwrap(), BigInt::from(3));
        assert_eq!(torsion_number(&sys, &rep, 1).unwrap(), BigInt::from(1));
        let m = branched_cover_matrix(&sys, &rep, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
    }

    #[test]
    fn rejects_non_knots() {
        let sys = AugmentedGroupSystem::parse("gens x a; eps x=1 a=0; rel x a x^-1 a^-2;").unwrap();
        let kp = kernel_presentation(&sys).unwrap();
        let rep = PeriodicRep::trivial(&kp, 1, 1);
        assert!(matches!(branched_cover_matrix(&sys, &rep, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn big_log() {
        let b = BigInt::from(3u8).pow(2000);
        assert!((ln_big(&b) - 2000.0 * 3f64.ln()).abs() < 1e-9 * 2000.0);
    }
}
