//! Augmented group systems `(G, eps, x)`: presentations, the text format,
//! normalization so that only `x` has nonzero degree, and the induced
//! presentation of the kernel `K = ker eps` by the symbols `a_nu`.

mod dsl;

use std::collections::HashSet;

use crate::alexmod::matrix::{order_delta0, PolyMatrix};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::words::{fox_derivative, schreier_rewrite, FreeWord, Gen, GroupRingElement, KernelLetter, KernelWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<FreeWord>,
}

impl Presentation {
    /// Validates names, generator ids, nonempty relators and positive deficiency.
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &generators {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(Error::InvalidPresentation(format!("bad or repeated generator name `{name}`")));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_identity() {
                return Err(Error::InvalidPresentation(format!("relator {} is trivial", i + 1)));
            }
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(Error::UnknownGenerator(g));
                }
            }
        }
        if generators.len() <= relators.len() {
            return Err(Error::InvalidPresentation(format!(
                "{} generators and {} relators; need more generators than relators",
                generators.len(),
                relators.len()
            )));
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generator_index(&self, name: &str) -> Option<Gen> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn deficiency(&self) -> usize {
        self.generators.len() - self.relators.len()
    }
}

/// Facts about the input that the tool cannot decide and only uses to gate checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Metadata {
    /// A knot group presentation of deficiency one.
    pub knot: bool,
    /// A 3-manifold group with `x` peripheral.
    pub manifold: bool,
    pub genus: Option<u32>,
    pub fibered: bool,
    /// Growth rate of the monodromy, for fibered inputs.
    pub growth_rate: Option<f64>,
    /// The longitude is known to lie in `[K, K]` although no word is supplied.
    pub longitude_in_commutator: bool,
}

/// HNN data `G = <B, x | x a x^-1 = phi(a), a in U>` with `U` given by kernel words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnData {
    pub base: Vec<Gen>,
    pub amalgamated: Vec<KernelWord>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AugmentedGroupSystem {
    pub presentation: Presentation,
    pub epsilon: Vec<i64>,
    /// The distinguished generator `x`, with `eps(x) = 1`.
    pub meridian: Gen,
    pub longitude: Option<FreeWord>,
    pub hnn: Option<HnnData>,
    pub meta: Metadata,
}

impl AugmentedGroupSystem {
    pub fn new(presentation: Presentation, epsilon: Vec<i64>, meridian: Gen) -> Result<Self> {
        let sys = AugmentedGroupSystem {
            presentation,
            epsilon,
            meridian,
            longitude: None,
            hnn: None,
            meta: Metadata::default(),
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn with_longitude(mut self, w: FreeWord) -> Result<Self> {
        self.longitude = Some(w);
        self.validate()?;
        Ok(self)
    }

    pub fn with_hnn(mut self, hnn: HnnData) -> Result<Self> {
        self.hnn = Some(hnn);
        self.validate()?;
        Ok(self)
    }

    pub fn with_meta(mut self, meta: Metadata) -> Self {
        self.meta = meta;
        self
    }

    /// Parses the text format; see the crate README for the grammar.
    pub fn parse(text: &str) -> Result<Self> {
        dsl::parse(text)
    }

    /// Renders in the text format; `parse(to_dsl())` returns an equal system.
    pub fn to_dsl(&self) -> String {
        dsl::print(self)
    }

    pub fn generators(&self) -> &[String] {
        &self.presentation.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.presentation.relators
    }

    pub fn is_normalized(&self) -> bool {
        self.epsilon
            .iter()
            .enumerate()
            .all(|(g, &e)| g == self.meridian || e == 0)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.presentation.generators.len();
        if self.epsilon.len() != n {
            return Err(Error::InvalidPresentation(format!(
                "augmentation has {} entries for {n} generators",
                self.epsilon.len()
            )));
        }
        if self.meridian >= n {
            return Err(Error::UnknownGenerator(self.meridian));
        }
        if self.epsilon[self.meridian] != 1 {
            return Err(Error::InvalidPresentation(format!(
                "distinguished generator `{}` has degree {}, expected 1",
                self.presentation.generators[self.meridian], self.epsilon[self.meridian]
            )));
        }
        for (i, r) in self.presentation.relators.iter().enumerate() {
            let d = r.degree(&self.epsilon);
            if d != 0 {
                return Err(Error::EpsilonInconsistent {
                    index: i + 1,
                    relator: r.display_with(self.generators()),
                    degree: d,
                });
            }
        }
        if let Some(l) = &self.longitude {
            if l.max_generator().is_some_and(|g| g >= n) {
                return Err(Error::UnknownGenerator(l.max_generator().unwrap()));
            }
            let d = l.degree(&self.epsilon);
            if d != 0 {
                return Err(Error::InvalidPresentation(format!("longitude has degree {d}, expected 0")));
            }
        }
        if let Some(h) = &self.hnn {
            for &b in &h.base {
                if b >= n {
                    return Err(Error::UnknownGenerator(b));
                }
                if b == self.meridian || self.epsilon[b] != 0 {
                    return Err(Error::InvalidPresentation(format!(
                        "HNN base generator `{}` must have degree 0",
                        self.generators()[b]
                    )));
                }
            }
            for u in &h.amalgamated {
                if let Some(l) = u.letters().iter().find(|l| !h.base.contains(&l.gen)) {
                    return Err(Error::InvalidPresentation(format!(
                        "amalgamated word uses `{}`, which is not in the HNN base",
                        self.generators().get(l.gen).cloned().unwrap_or_else(|| format!("g{}", l.gen))
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Rewrites the system so every generator other than `x` has degree 0, by the
/// substitution `y = y' x^{eps(y)}`. The new generator `y'` keeps the name `y`.
pub fn normalize(sys: &AugmentedGroupSystem) -> AugmentedGroupSystem {
    let x = sys.meridian;
    let images: Vec<FreeWord> = sys
        .epsilon
        .iter()
        .enumerate()
        .map(|(g, &e)| {
            if g == x || e == 0 {
                FreeWord::generator(g)
            } else {
                &FreeWord::generator(g) * &FreeWord::generator(x).pow(e)
            }
        })
        .collect();
    let relators = sys.relators().iter().map(|r| r.substitute(&images)).collect();
    let epsilon = (0..sys.epsilon.len()).map(|g| i64::from(g == x)).collect();
    AugmentedGroupSystem {
        presentation: Presentation {
            generators: sys.presentation.generators.clone(),
            relators,
        },
        epsilon,
        meridian: x,
        longitude: sys.longitude.as_ref().map(|l| l.substitute(&images)),
        hnn: sys.hnn.clone(),
        meta: sys.meta.clone(),
    }
}

/// Presentation `<a_nu, ..., c_nu | r_nu, ..., s_nu>` of the kernel. Base
/// generators are renumbered `0..G` in the order they appear in `G`'s
/// presentation, skipping `x`; templates are the `nu = 0` relator instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPresentation {
    pub generators: Vec<String>,
    pub templates: Vec<KernelWord>,
    pub longitude: Option<KernelWord>,
    pub amalgamated: Option<Vec<KernelWord>>,
}

impl KernelPresentation {
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }
}

pub fn kernel_presentation(sys: &AugmentedGroupSystem) -> Result<KernelPresentation> {
    let x = sys.meridian;
    if let Some(g) = (0..sys.epsilon.len()).find(|&g| g != x && sys.epsilon[g] != 0) {
        return Err(Error::NotNormalized(sys.generators()[g].clone()));
    }
    let mut index = vec![usize::MAX; sys.generators().len()];
    let mut generators = Vec::new();
    for (g, name) in sys.generators().iter().enumerate() {
        if g != x {
            index[g] = generators.len();
            generators.push(name.clone());
        }
    }
    let renumber = |w: &KernelWord| {
        KernelWord::from_letters(
            w.letters()
                .iter()
                .map(|l| KernelLetter::new(index[l.gen], l.shift, l.inverse)),
        )
    };
    let templates = sys
        .relators()
        .iter()
        .map(|r| schreier_rewrite(r, &sys.epsilon, x).map(|k| renumber(&k)))
        .collect::<Result<Vec<_>>>()?;
    let longitude = sys
        .longitude
        .as_ref()
        .map(|l| schreier_rewrite(l, &sys.epsilon, x).map(|k| renumber(&k)))
        .transpose()?;
    let amalgamated = sys
        .hnn
        .as_ref()
        .map(|h| h.amalgamated.iter().map(renumber).collect());
    Ok(KernelPresentation {
        generators,
        templates,
        longitude,
        amalgamated,
    })
}

/// Image of a group ring element under `g -> t^{eps(g)}`.
pub fn abelianize(e: &GroupRingElement, degrees: &[i64]) -> LaurentPoly {
    e.terms().fold(LaurentPoly::zero(), |acc, (w, c)| {
        &acc + &LaurentPoly::monomial(c, w.degree(degrees))
    })
}

/// Abelianized Fox matrix with the column of `x` removed: rows are relators,
/// columns the remaining generators in order.
pub fn alexander_matrix(sys: &AugmentedGroupSystem) -> Result<PolyMatrix> {
    let n = sys.generators().len();
    let cols: Vec<Gen> = (0..n).filter(|&g| g != sys.meridian).collect();
    let mut rows = Vec::with_capacity(sys.relators().len());
    for r in sys.relators() {
        let row = cols
            .iter()
            .map(|&g| fox_derivative(r, g, n).map(|d| abelianize(&d, &sys.epsilon)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(PolyMatrix::zeros(0, cols.len()));
    }
    Ok(PolyMatrix::from_rows(rows))
}

/// The classical Alexander polynomial `Delta(t)` (canonical form).
pub fn untwisted_alexander(sys: &AugmentedGroupSystem) -> Result<LaurentPoly> {
    Ok(order_delta0(&alexander_matrix(sys)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs() -> AugmentedGroupSystem {
        AugmentedGroupSystem::parse("gens x a; eps x=1 a=0; rel x a x^-1 a^-2;").unwrap()
    }

    #[test]
    fn baumslag_solitar_kernel_and_alexander() {
        let sys = bs();
        assert!(sys.is_normalized());
        let kp = kernel_presentation(&sys).unwrap();
        assert_eq!(kp.generators, vec!["a".to_string()]);
        assert_eq!(kp.templates, vec![KernelWord::from_powers(&[(0, 1, 1), (0, 0, -2)])]);
        assert_eq!(untwisted_alexander(&sys).unwrap(), LaurentPoly::from_i64s(0, &[2, -1]));
    }

    #[test]
    fn normalize_is_a_fixed_point_on_normalized_input() {
        let sys = bs();
        assert_eq!(normalize(&sys), sys);
    }

    #[test]
    fn wirtinger_trefoil_normalizes() {
        let sys = AugmentedGroupSystem::parse("gens x y; eps x=1 y=1; rel x y x y^-1 x^-1 y^-1;").unwrap();
        assert!(!sys.is_normalized());
        assert!(kernel_presentation(&sys).is_err());
        let n = normalize(&sys);
        assert!(n.is_normalized());
        assert_eq!(n.epsilon, vec![1, 0]);
        let d = untwisted_alexander(&sys).unwrap();
        assert_eq!(d, LaurentPoly::from_i64s(0, &[1, -1, 1]));
        assert_eq!(untwisted_alexander(&n).unwrap(), d);
        assert_eq!(normalize(&n), n);
    }

    #[test]
    fn presentation_needs_positive_deficiency() {
        let w = FreeWord::generator(0);
        assert!(Presentation::new(vec!["x".into()], vec![w]).is_err());
    }
}
