//! Twisted Jacobians, the Alexander-Lin polynomial `D_{rho,r}(s)`, the Wada-style
//! invariant of representations of `G`, and the structural checks.

mod checks;
pub mod matrix;

pub use checks::{run_checks, spectral_check, CheckResult, Status};
pub use matrix::{det_fraction_free, det_interpolation, determinant, order_delta0, PolyMatrix};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{kernel_presentation, normalize, AugmentedGroupSystem, KernelPresentation};
use crate::laurent::LaurentPoly;
use crate::reps::{extends_over_g, PeriodicRep, Permutation};
use crate::words::{fox_derivative, FreeWord};

/// `J_{rho,r}`: rows `(relator j, nu, i)`, columns `(generator g, nu, i)`, each
/// index flattened as `((j * r + nu) * N + i)`.
///
/// An occurrence of `a_mu` contributes to column block `mu mod r` with factor
/// `s^{floor(mu / r)}`; the `N x N` block is `+P(prefix)` for `a_mu` and
/// `-P(prefix a_mu^-1)` for `a_mu^-1`, where `P(u)` has `(i, i.u)` entries 1.
pub fn twisted_jacobian(kp: &KernelPresentation, rep: &PeriodicRep) -> Result<PolyMatrix> {
    rep.verify(kp)?;
    Ok(jacobian_unchecked(kp, rep))
}

pub(crate) fn jacobian_unchecked(kp: &KernelPresentation, rep: &PeriodicRep) -> PolyMatrix {
    let n = rep.degree();
    let r = rep.period();
    let ri = r as i64;
    let mut m = PolyMatrix::zeros(kp.templates.len() * r * n, kp.num_generators() * r * n);
    for (j, t) in kp.templates.iter().enumerate() {
        for nu in 0..r {
            let row0 = (j * r + nu) * n;
            let mut prefix = Permutation::identity(n);
            for l in t.letters() {
                let mu = l.shift + nu as i64;
                let col0 = (l.gen * r + mu.rem_euclid(ri) as usize) * n;
                let a = rep.image(l.gen, mu);
                let sign = if l.inverse {
                    prefix = &prefix * &a.inverse();
                    -1
                } else {
                    1
                };
                let mono = LaurentPoly::monomial(sign, mu.div_euclid(ri));
                for i in 0..n {
                    m.add_to(row0 + i, col0 + prefix.apply(i), &mono);
                }
                if !l.inverse {
                    prefix = &prefix * a;
                }
            }
        }
    }
    m
}

/// `D_{rho,r}(s)`, canonical; zero is a valid answer.
pub fn alexander_lin_polynomial(kp: &KernelPresentation, rep: &PeriodicRep) -> Result<LaurentPoly> {
    Ok(order_delta0(&twisted_jacobian(kp, rep)?))
}

fn evaluate_free(word: &FreeWord, images: &[Permutation], n: usize) -> Permutation {
    let mut out = Permutation::identity(n);
    for l in word.letters() {
        let p = &images[l.gen];
        out = if l.inverse { &out * &p.inverse() } else { &out * p };
    }
    out
}

/// `D_rho(t)` for a permutation representation of `G` given on generators: the
/// order of the Fox matrix under `g -> t^{eps(g)} rho(g)` with the column of `x`
/// removed.
pub fn wada_invariant(sys: &AugmentedGroupSystem, rho_g: &[Permutation]) -> Result<LaurentPoly> {
    let k = sys.generators().len();
    if rho_g.len() != k {
        return Err(Error::RepMismatch(format!("{} images for {k} generators", rho_g.len())));
    }
    let n = rho_g.first().map_or(1, Permutation::degree);
    if rho_g.iter().any(|p| p.degree() != n) {
        return Err(Error::RepMismatch("images of different degrees".into()));
    }
    for (i, r) in sys.relators().iter().enumerate() {
        if !evaluate_free(r, rho_g, n).is_identity() {
            return Err(Error::NotAHomomorphism(i + 1));
        }
    }
    let cols: Vec<usize> = (0..k).filter(|&g| g != sys.meridian).collect();
    let mut m = PolyMatrix::zeros(sys.relators().len() * n, cols.len() * n);
    for (ri, r) in sys.relators().iter().enumerate() {
        for (ci, &g) in cols.iter().enumerate() {
            let d = fox_derivative(r, g, k)?;
            for (w, c) in d.terms() {
                let p = evaluate_free(w, rho_g, n);
                let mono = LaurentPoly::monomial(c, w.degree(&sys.epsilon));
                for i in 0..n {
                    m.add_to(ri * n + i, ci * n + p.apply(i), &mono);
                }
            }
        }
    }
    Ok(order_delta0(&m))
}

/// The representation of `G` given by an extension `X`: `x -> X`, and each
/// other generator `a` of the normalized system to `rho(a_0)`.
pub fn extension_images(sys: &AugmentedGroupSystem, rep: &PeriodicRep, x: &Permutation) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(sys.generators().len());
    let mut base = 0;
    for g in 0..sys.generators().len() {
        if g == sys.meridian {
            out.push(x.clone());
        } else {
            out.push(rep.table()[base][0].clone());
            base += 1;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    #[serde(rename = "N")]
    pub degree: usize,
    pub r: usize,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    #[serde(rename = "D")]
    pub d: LaurentPoly,
    /// Text rendering of `D`.
    pub d_text: String,
    /// Width of `D`; `None` when `D = 0`.
    pub d_degree: Option<usize>,
    /// Multiplicity of `s - 1` in `D` and the remaining cofactor.
    pub s_minus_one_power: Option<u32>,
    pub cofactor: Option<LaurentPoly>,
    /// An `X` with `sigma rho = X rho X^-1`, in 1-based cycles.
    pub extension: Option<Vec<Vec<usize>>>,
    pub checks: Vec<CheckResult>,
}

impl InvariantReport {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    pub allow_reducible: bool,
}

/// Normalizes, builds the kernel presentation and `J_{rho,r}`, takes its order
/// and runs the applicable checks.
pub fn alexander_lin(
    sys: &AugmentedGroupSystem,
    rep: &PeriodicRep,
    options: &PipelineOptions,
) -> Result<InvariantReport> {
    let nsys = normalize(sys);
    let kp = kernel_presentation(&nsys)?;
    rep.verify(&kp)?;
    let orbits = rep.orbits().len();
    if orbits > 1 && !options.allow_reducible {
        return Err(Error::NotTransitive(orbits));
    }
    let j = jacobian_unchecked(&kp, rep);
    let d = order_delta0(&j);
    let (power, cofactor) = if d.is_zero() {
        (None, None)
    } else {
        let s1 = LaurentPoly::from_i64s(0, &[-1, 1]);
        let k = d.multiplicity(&s1);
        let mut c = d.clone();
        for _ in 0..k {
            c = c.div_exact(&s1).expect("multiplicity");
        }
        (Some(k), Some(c.canonical()))
    };
    let extension = extends_over_g(rep);
    let checks = run_checks(&nsys, &kp, rep, &d, extension.as_ref())?;
    Ok(InvariantReport {
        degree: rep.degree(),
        r: rep.period(),
        matrix_rows: j.rows(),
        matrix_cols: j.cols(),
        d_text: d.to_string(),
        d_degree: (!d.is_zero()).then(|| d.degree()),
        d,
        s_minus_one_power: power,
        cofactor,
        extension: extension.map(|x| x.cycles()),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::alexander_matrix;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(0, c)
    }

    fn bs() -> (AugmentedGroupSystem, KernelPresentation, PeriodicRep) {
        let sys = AugmentedGroupSystem::parse("gens x a; eps x=1 a=0; rel x a x^-1 a^-2;").unwrap();
        let kp = kernel_presentation(&sys).unwrap();
        let rep = PeriodicRep::from_json(r#"{"N":3,"r":2,"table":{"a":[[[1,2,3]],[[1,3,2]]]}}"#, &kp).unwrap();
        (sys, kp, rep)
    }

    #[test]
    fn baumslag_solitar_block_structure() {
        let (_, kp, rep) = bs();
        let j = twisted_jacobian(&kp, &rep).unwrap();
        assert_eq!((j.rows(), j.cols()), (6, 6));
        let a0 = &rep.table()[0][0];
        let a1 = &rep.table()[0][1];
        for i in 0..3 {
            for k in 0..3 {
                let id = i64::from(i == k);
                let at = |p: &Permutation| i64::from(p.apply(i) == k);
                assert_eq!(*j.get(i, k), LaurentPoly::constant(-id - at(a0)));
                assert_eq!(*j.get(i, 3 + k), LaurentPoly::constant(id));
                assert_eq!(*j.get(3 + i, k), LaurentPoly::monomial(id, 1));
                assert_eq!(*j.get(3 + i, 3 + k), LaurentPoly::constant(-id - at(a1)));
            }
        }
        assert_eq!(order_delta0(&j), (&p(&[-1, 1]).pow(2) * &p(&[-4, 1])).canonical());
    }

    #[test]
    fn trivial_rep_gives_the_alexander_matrix() {
        let (sys, kp, _) = bs();
        let j = twisted_jacobian(&kp, &PeriodicRep::trivial(&kp, 1, 1)).unwrap();
        assert_eq!(j, alexander_matrix(&sys).unwrap());
    }

    #[test]
    fn wada_of_trivial_rep_is_alexander() {
        let (sys, _, _) = bs();
        let d = wada_invariant(&sys, &[Permutation::identity(1), Permutation::identity(1)]).unwrap();
        assert_eq!(d, p(&[2, -1]));
        let bad = [Permutation::identity(2), Permutation::from_cycles(2, &[vec![1, 2]]).unwrap()];
        assert_eq!(wada_invariant(&sys, &bad), Err(Error::NotAHomomorphism(1)));
    }

    #[test]
    fn mismatched_rep_is_rejected() {
        let (_, kp, _) = bs();
        let bad = PeriodicRep::from_json(r#"{"N":3,"r":2,"table":{"a":[[[1,2,3]],[[1,2,3]]]}}"#, &kp).unwrap();
        assert!(matches!(twisted_jacobian(&kp, &bad), Err(Error::RelatorViolated { .. })));
    }
}
