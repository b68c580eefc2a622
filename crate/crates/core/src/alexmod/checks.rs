use serde::Serialize;
use serde_json::json;

use super::{extension_images, jacobian_unchecked, order_delta0, wada_invariant};
use crate::error::Result;
use crate::groups::{untwisted_alexander, AugmentedGroupSystem, KernelPresentation};
use crate::laurent::{max_root_modulus, LaurentPoly};
use crate::reps::{orbits_of, PeriodicRep, Permutation};
use crate::words::shift_kernel_word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    /// Short key: `a` .. `h`, `product`, `spectral`.
    pub id: &'static str,
    pub statement: String,
    pub status: Status,
    pub detail: String,
    pub witness: serde_json::Value,
}

impl CheckResult {
    fn new(id: &'static str, statement: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            id,
            statement: statement.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            witness: serde_json::Value::Null,
        }
    }

    fn skipped(id: &'static str, statement: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult {
            id,
            statement: statement.into(),
            status: Status::Skipped,
            detail: reason.into(),
            witness: serde_json::Value::Null,
        }
    }

    fn with(mut self, witness: serde_json::Value) -> Self {
        self.witness = witness;
        self
    }
}

fn s_minus_one() -> LaurentPoly {
    LaurentPoly::from_i64s(0, &[-1, 1])
}

/// `(s - 1)^k`, or `None` when `d = 0` (then every power divides).
fn s_minus_one_power(d: &LaurentPoly) -> Option<u32> {
    (!d.is_zero()).then(|| d.multiplicity(&s_minus_one()))
}

/// All checks that apply to `(sys, rep)`; `sys` must be normalized and `kp`
/// its kernel presentation.
pub fn run_checks(
    sys: &AugmentedGroupSystem,
    kp: &KernelPresentation,
    rep: &PeriodicRep,
    d: &LaurentPoly,
    extension: Option<&Permutation>,
) -> Result<Vec<CheckResult>> {
    let n = rep.degree();
    let r = rep.period();
    let mut out = vec![divides_check(sys, r, d)?];

    out.push(if sys.meta.manifold {
        CheckResult::new("b", "D is reciprocal", d.is_reciprocal(), "").with(json!({ "D": d }))
    } else {
        CheckResult::skipped("b", "D is reciprocal", "no 3-manifold metadata")
    });

    out.push(s_minus_one_check(sys, kp, rep, d));
    out.push(classic_factor_check(sys, rep, d, extension)?);

    let deg = (!d.is_zero()).then(|| d.degree());
    out.push(match &sys.hnn {
        Some(h) => {
            let bound = n * h.amalgamated.len();
            let statement = format!("deg D <= N rk(U) = {bound}");
            CheckResult::new("e", statement, deg.is_none_or(|k| k <= bound), degree_detail(deg))
                .with(json!({ "degree": deg, "bound": bound }))
        }
        None => CheckResult::skipped("e", "deg D <= N rk(U)", "no HNN data"),
    });

    out.push(match sys.meta.genus {
        Some(g) => {
            let bound = 2 * g as usize * n;
            let fibered = sys.meta.fibered;
            let ok = deg.is_none_or(|k| if fibered { k == bound } else { k <= bound });
            let statement = if fibered {
                format!("deg D = 2 genus N = {bound} (fibered)")
            } else {
                format!("deg D <= 2 genus N = {bound}")
            };
            CheckResult::new("f", statement, ok, degree_detail(deg))
                .with(json!({ "degree": deg, "bound": bound, "fibered": fibered }))
        }
        None => CheckResult::skipped("f", "deg D <= 2 genus N", "no genus metadata"),
    });

    out.push(root_bound_check(sys, rep, d)?);
    out.push(vanish_check(kp, rep, d));

    let orbits = rep.orbits();
    if orbits.len() > 1 {
        let mut product = LaurentPoly::one();
        let mut factors = Vec::new();
        for o in &orbits {
            let part = order_delta0(&jacobian_unchecked(kp, &rep.restrict_to_orbit(o)?));
            product = &product * &part;
            factors.push(part);
        }
        let product = product.canonical();
        out.push(
            CheckResult::new("product", "D is the product over K-orbits", product == *d, "")
                .with(json!({ "factors": factors, "product": product })),
        );
    }

    out.push(spectral_check(sys, r, d)?);
    Ok(out)
}

fn degree_detail(deg: Option<usize>) -> String {
    match deg {
        Some(k) => format!("deg D = {k}"),
        None => "D = 0".into(),
    }
}

fn divides_check(sys: &AugmentedGroupSystem, r: usize, d: &LaurentPoly) -> Result<CheckResult> {
    let delta = untwisted_alexander(sys)?;
    let delta_r = delta.power_transform(r as u32);
    let statement = format!("Delta^({r}) divides D");
    let quotient = if delta_r.is_zero() {
        d.is_zero().then(LaurentPoly::zero)
    } else {
        d.div_exact(&delta_r).map(|q| q.canonical())
    };
    Ok(CheckResult::new("a", statement, quotient.is_some(), format!("Delta^({r}) = {delta_r}"))
        .with(json!({ "Delta": delta, "Delta_r": delta_r, "quotient": quotient })))
}

fn s_minus_one_check(
    sys: &AugmentedGroupSystem,
    kp: &KernelPresentation,
    rep: &PeriodicRep,
    d: &LaurentPoly,
) -> CheckResult {
    let statement = "(s-1)^(N+T-2) divides D";
    if !sys.meta.manifold {
        return CheckResult::skipped("c", statement, "no 3-manifold metadata");
    }
    let n = rep.degree();
    let t = match &kp.longitude {
        Some(l) => rep.evaluate(l).num_cycles(),
        None if sys.meta.longitude_in_commutator && rep.has_abelian_image() => n,
        None if sys.meta.longitude_in_commutator => {
            return CheckResult::skipped("c", statement, "longitude in [K,K] but image not abelian");
        }
        None => return CheckResult::skipped("c", statement, "no longitude"),
    };
    let need = (n + t).saturating_sub(2) as u32;
    let have = s_minus_one_power(d);
    CheckResult::new(
        "c",
        format!("(s-1)^{need} divides D (N+T-2 with T = {t})"),
        have.is_none_or(|k| k >= need),
        match have {
            Some(k) => format!("D has (s-1)^{k}"),
            None => "D = 0".into(),
        },
    )
    .with(json!({ "N": n, "T": t, "required": need, "multiplicity": have }))
}

fn classic_factor_check(
    sys: &AugmentedGroupSystem,
    rep: &PeriodicRep,
    d: &LaurentPoly,
    extension: Option<&Permutation>,
) -> Result<CheckResult> {
    let statement = "D = Delta_rho^(r) (s-1)^(N-1)";
    let Some(x) = extension else {
        return Ok(CheckResult::skipped("d", statement, "does not extend over G").with(json!({ "extends": false })));
    };
    let n = rep.degree();
    let r = rep.period();
    let cycles = x.cycles();
    if !x.pow(r as i64).is_identity() {
        return Ok(CheckResult::skipped("d", statement, format!("extends by X = {x} but no extension has X^r = 1"))
            .with(json!({ "extends": true, "X": cycles })));
    }
    let wada = wada_invariant(sys, &extension_images(sys, rep, x))?;
    // det(tI - X) / (t - 1) = prod over cycles (t^len - 1), divided once by t - 1.
    let mut char_x = LaurentPoly::one();
    for len in cycle_lengths(x) {
        char_x = &char_x * &LaurentPoly::s_power_minus_one(len as u32);
    }
    let c_x = char_x.div_exact(&s_minus_one()).expect("t - 1 divides det(tI - X)");
    let Some(delta_rho) = wada.div_exact(&c_x).map(|q| q.canonical()) else {
        return Ok(CheckResult::new("d", statement, false, "c_X does not divide D_rho(t)")
            .with(json!({ "extends": true, "X": cycles, "wada": wada, "c_X": c_x })));
    };
    let expected = (&delta_rho.power_transform(r as u32) * &s_minus_one().pow(n as u32 - 1)).canonical();
    Ok(CheckResult::new("d", statement, expected == *d, format!("X = {x}"))
        .with(json!({ "extends": true, "X": cycles, "wada": wada, "Delta_rho": delta_rho, "expected": expected })))
}

fn cycle_lengths(x: &Permutation) -> Vec<usize> {
    let mut lens: Vec<usize> = x.cycles().iter().map(Vec::len).collect();
    let moved: usize = lens.iter().sum();
    lens.extend(std::iter::repeat_n(1, x.degree() - moved));
    lens
}

fn root_bound_check(sys: &AugmentedGroupSystem, rep: &PeriodicRep, d: &LaurentPoly) -> Result<CheckResult> {
    let statement = "(max |z|)^(1/r) <= M^(2n)";
    if !rep.has_abelian_image() {
        return Ok(CheckResult::skipped("g", statement, "image not abelian"));
    }
    let m = sys.relators().iter().map(|w| w.len()).max().unwrap_or(0);
    let gens = sys.generators().len() - 1;
    let log_bound = 2.0 * gens as f64 * (m as f64).ln();
    if d.is_zero() {
        return Ok(CheckResult::skipped("g", statement, "D = 0"));
    }
    let Some((modulus, err)) = max_root_modulus(d)? else {
        return Ok(CheckResult::new("g", statement, true, "D has no roots"));
    };
    let lhs = ((modulus - err).max(f64::MIN_POSITIVE)).ln() / rep.period() as f64;
    Ok(CheckResult::new("g", format!("(max |z|)^(1/r) <= {m}^{}", 2 * gens), lhs <= log_bound, "")
        .with(json!({ "max_modulus": modulus, "error_bound": err, "M": m, "n": gens })))
}

fn vanish_check(kp: &KernelPresentation, rep: &PeriodicRep, d: &LaurentPoly) -> CheckResult {
    let statement = "U_nu not transitive implies D = 0";
    let Some(us) = &kp.amalgamated else {
        return CheckResult::skipped("h", statement, "no HNN data");
    };
    let n = rep.degree();
    let bad: Vec<usize> = (0..rep.period())
        .filter(|&nu| {
            let gens: Vec<Permutation> = us.iter().map(|u| rep.evaluate(&shift_kernel_word(u, nu as i64))).collect();
            orbits_of(n, gens.iter()).len() > 1
        })
        .collect();
    if bad.is_empty() {
        return CheckResult::skipped("h", statement, "every U_nu is transitive");
    }
    CheckResult::new("h", statement, d.is_zero(), format!("U_nu not transitive for nu in {bad:?}"))
        .with(json!({ "nontransitive_shifts": bad, "D_is_zero": d.is_zero() }))
}

/// For fibered inputs with a declared growth rate: `(max |z|)^(1/r) <= GR`.
pub fn spectral_check(sys: &AugmentedGroupSystem, r: usize, d: &LaurentPoly) -> Result<CheckResult> {
    let statement = "(max |z|)^(1/r) <= GR";
    let (true, Some(gr)) = (sys.meta.fibered, sys.meta.growth_rate) else {
        return Ok(CheckResult::skipped("spectral", statement, "no fibered growth-rate metadata"));
    };
    if d.is_zero() {
        return Ok(CheckResult::skipped("spectral", statement, "D = 0"));
    }
    let (modulus, err) = max_root_modulus(d)?.unwrap_or((0.0, 0.0));
    let root = modulus.powf(1.0 / r as f64);
    let tol = 1e-9 + err;
    Ok(CheckResult::new("spectral", format!("(max |z|)^(1/r) <= {gr}"), root <= gr + tol, format!("(max |z|)^(1/r) = {root}"))
        .with(json!({ "value": root, "growth_rate": gr, "equality": (root - gr).abs() <= tol })))
}
