//! Periodic permutation representations `rho: K -> S_N`, given by the images of
//! `a_nu` for `nu` in `[0, r)`, with `rho(a_{nu + r}) = rho(a_nu)`.

mod cyclic;
mod enumerate;
mod perm;

pub use cyclic::{cyclic_reps_mod_p, CyclicRep, CyclicReps};
pub use enumerate::{brute_force_periodic, enumerate_periodic, EnumerateOptions, Enumeration};
pub use perm::{all_permutations, class_representatives, Permutation};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::KernelPresentation;
use crate::words::{shift_kernel_word, KernelWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicRep {
    n: usize,
    r: usize,
    generators: Vec<String>,
    /// `table[g][nu]` is the image of `(a_g)_nu`.
    table: Vec<Vec<Permutation>>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    #[serde(rename = "N")]
    n: usize,
    r: usize,
    table: BTreeMap<String, Vec<Vec<Vec<usize>>>>,
}

impl PeriodicRep {
    pub fn new(n: usize, r: usize, generators: Vec<String>, table: Vec<Vec<Permutation>>) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(Error::RepMismatch("degree and period must be positive".into()));
        }
        if table.len() != generators.len() {
            return Err(Error::RepMismatch(format!(
                "{} generator names but {} table rows",
                generators.len(),
                table.len()
            )));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != r {
                return Err(Error::RepMismatch(format!(
                    "generator `{}` has {} images, period is {r}",
                    generators[g],
                    row.len()
                )));
            }
            if row.iter().any(|p| p.degree() != n) {
                return Err(Error::RepMismatch(format!("generator `{}` has an image not in S_{n}", generators[g])));
            }
        }
        Ok(PeriodicRep { n, r, generators, table })
    }

    /// The trivial representation of degree `n` and period `r`.
    pub fn trivial(kp: &KernelPresentation, n: usize, r: usize) -> Self {
        let table = vec![vec![Permutation::identity(n); r]; kp.num_generators()];
        PeriodicRep {
            n,
            r,
            generators: kp.generators.clone(),
            table,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> usize {
        self.r
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<Permutation>] {
        &self.table
    }

    /// Image of `(a_g)_nu` for any integer `nu`.
    pub fn image(&self, g: usize, nu: i64) -> &Permutation {
        &self.table[g][nu.rem_euclid(self.r as i64) as usize]
    }

    pub fn evaluate(&self, w: &KernelWord) -> Permutation {
        let mut out = Permutation::identity(self.n);
        for l in w.letters() {
            let p = self.image(l.gen, l.shift);
            out = if l.inverse { &out * &p.inverse() } else { &out * p };
        }
        out
    }

    /// `(sigma rho)(u) = rho(x u x^-1)`: shifts the table by one.
    pub fn sigma(&self) -> Self {
        let table = self
            .table
            .iter()
            .map(|row| (0..self.r).map(|nu| row[(nu + 1) % self.r].clone()).collect())
            .collect();
        PeriodicRep { table, ..self.clone() }
    }

    /// Simultaneous conjugation `rho(u) -> c rho(u) c^-1`.
    pub fn conjugate(&self, c: &Permutation) -> Self {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|p| p.conjugate_by(c)).collect())
            .collect();
        PeriodicRep { table, ..self.clone() }
    }

    /// The same representation regarded as having period `k * r`.
    pub fn with_period_multiple(&self, k: usize) -> Self {
        let table = self
            .table
            .iter()
            .map(|row| (0..self.r * k).map(|nu| row[nu % self.r].clone()).collect())
            .collect();
        PeriodicRep {
            r: self.r * k,
            table,
            ..self.clone()
        }
    }

    /// Checks names against `kp` and that every relator instance `r_nu`,
    /// `nu` in `[0, r)`, maps to the identity.
    pub fn verify(&self, kp: &KernelPresentation) -> Result<()> {
        if self.generators != kp.generators {
            return Err(Error::RepMismatch(format!(
                "representation is on generators {:?}, kernel presentation has {:?}",
                self.generators, kp.generators
            )));
        }
        for (j, t) in kp.templates.iter().enumerate() {
            for nu in 0..self.r {
                if !self.evaluate(&shift_kernel_word(t, nu as i64)).is_identity() {
                    return Err(Error::RelatorViolated {
                        relator: j + 1,
                        shift: nu,
                    });
                }
            }
        }
        Ok(())
    }

    /// Orbits of the image of `K` on the points, 0-based and sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.n, self.table.iter().flatten())
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// True if all images commute, so the image of `K` is abelian.
    pub fn has_abelian_image(&self) -> bool {
        let all: Vec<&Permutation> = self.table.iter().flatten().collect();
        all.iter()
            .enumerate()
            .all(|(i, p)| all[i + 1..].iter().all(|q| (*p * *q) == (*q * *p)))
    }

    /// The subrepresentation on an orbit, with its points renumbered in increasing order.
    pub fn restrict_to_orbit(&self, orbit: &[usize]) -> Result<Self> {
        let mut label = vec![usize::MAX; self.n];
        let mut sorted = orbit.to_vec();
        sorted.sort_unstable();
        for (k, &i) in sorted.iter().enumerate() {
            label[i] = k;
        }
        let mut table = Vec::with_capacity(self.table.len());
        for row in &self.table {
            let mut new_row = Vec::with_capacity(self.r);
            for p in row {
                let images = sorted
                    .iter()
                    .map(|&i| label.get(p.apply(i)).copied().filter(|&l| l != usize::MAX))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::RepMismatch("points do not form an invariant set".into()))?;
                new_row.push(Permutation::from_images(images)?);
            }
            table.push(new_row);
        }
        PeriodicRep::new(sorted.len(), self.r, self.generators.clone(), table)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table = self
            .generators
            .iter()
            .zip(&self.table)
            .map(|(g, row)| (g.clone(), row.iter().map(Permutation::cycles).collect()))
            .collect();
        serde_json::to_value(RepJson {
            n: self.n,
            r: self.r,
            table,
        })
        .expect("representation serializes")
    }

    /// Reads `{N, r, table: {gen: [cycles per nu]}}` and orders the table like `kp`.
    pub fn from_json(text: &str, kp: &KernelPresentation) -> Result<Self> {
        let j: RepJson = serde_json::from_str(text)?;
        let mut table = Vec::with_capacity(kp.num_generators());
        for g in &kp.generators {
            let rows = j
                .table
                .get(g)
                .ok_or_else(|| Error::RepMismatch(format!("no images for generator `{g}`")))?;
            table.push(
                rows.iter()
                    .map(|cycles| Permutation::from_cycles(j.n, cycles))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        if let Some(extra) = j.table.keys().find(|k| kp.generator_index(k).is_none()) {
            return Err(Error::RepMismatch(format!("unknown generator `{extra}` in table")));
        }
        PeriodicRep::new(j.n, j.r, kp.generators.clone(), table)
    }
}

pub(crate) fn orbits_of<'a>(n: usize, perms: impl Iterator<Item = &'a Permutation>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for p in perms {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, p.apply(i)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    /// Orbits of `K`, 1-based.
    pub orbits: Vec<Vec<usize>>,
    /// Number of orbits of `<rho(l)>` when a longitude word is known.
    pub longitude_orbits: Option<usize>,
}

pub fn orbit_decomposition(rep: &PeriodicRep, longitude: Option<&KernelWord>) -> OrbitDecomposition {
    OrbitDecomposition {
        orbits: rep
            .orbits()
            .into_iter()
            .map(|o| o.into_iter().map(|i| i + 1).collect())
            .collect(),
        longitude_orbits: longitude.map(|l| rep.evaluate(l).num_cycles()),
    }
}

/// All `X` in `S_N` with `X rho(a_nu) X^-1 = rho(a_{nu+1})` for every generator and `nu`.
pub fn extensions(rep: &PeriodicRep) -> Vec<Permutation> {
    let n = rep.n;
    // X * A_nu = A_{nu+1} * X, pointwise: X[A_{nu+1}[i]] = A_nu[X[i]].
    let mut pairs: Vec<(Permutation, Permutation)> = Vec::new();
    for row in &rep.table {
        for nu in 0..rep.r {
            let next = row[(nu + 1) % rep.r].clone();
            let cur = row[nu].clone();
            pairs.push((next.inverse(), cur.inverse()));
            pairs.push((next, cur));
        }
    }
    let mut out = Vec::new();
    let mut x = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_extension(&pairs, &mut x, &mut used, &mut out);
    out
}

fn search_extension(
    pairs: &[(Permutation, Permutation)],
    x: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    let Some(i) = x.iter().position(|&v| v == usize::MAX) else {
        out.push(Permutation::from_images(x.clone()).expect("bijection by construction"));
        return;
    };
    for j in 0..x.len() {
        if used[j] {
            continue;
        }
        let (saved_x, saved_used) = (x.clone(), used.clone());
        if propagate_extension(pairs, x, used, i, j) {
            search_extension(pairs, x, used, out);
        }
        *x = saved_x;
        *used = saved_used;
    }
}

fn propagate_extension(
    pairs: &[(Permutation, Permutation)],
    x: &mut [usize],
    used: &mut [bool],
    i: usize,
    j: usize,
) -> bool {
    let mut stack = vec![(i, j)];
    while let Some((i, j)) = stack.pop() {
        if x[i] != usize::MAX {
            if x[i] != j {
                return false;
            }
            continue;
        }
        if used[j] {
            return false;
        }
        x[i] = j;
        used[j] = true;
        for (next, cur) in pairs {
            stack.push((next.apply(i), cur.apply(j)));
        }
    }
    true
}

/// A witness that `rho` extends over `G`, preferring `X` with `X^r = 1`.
pub fn extends_over_g(rep: &PeriodicRep) -> Option<Permutation> {
    let all = extensions(rep);
    all.iter()
        .find(|x| x.pow(rep.r as i64).is_identity())
        .or_else(|| all.first())
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{kernel_presentation, AugmentedGroupSystem};

    fn bs_rep() -> (KernelPresentation, PeriodicRep) {
        let sys = AugmentedGroupSystem::parse("gens x a; eps x=1 a=0; rel x a x^-1 a^-2;").unwrap();
        let kp = kernel_presentation(&sys).unwrap();
        let rep = PeriodicRep::from_json(r#"{"N":3,"r":2,"table":{"a":[[[1,2,3]],[[1,3,2]]]}}"#, &kp).unwrap();
        (kp, rep)
    }

    #[test]
    fn baumslag_solitar_rep_is_valid_and_transitive() {
        let (kp, rep) = bs_rep();
        rep.verify(&kp).unwrap();
        assert!(rep.evaluate(&kp.templates[0]).is_identity());
        assert!(rep.is_transitive());
        assert_eq!(rep.sigma().table()[0][0], rep.table()[0][1]);
        assert_eq!(rep.sigma().sigma(), rep);
        // x -> X, a -> rho(a_0) must kill x a x^-1 a^-2 in S_3; a transposition does.
        let x = extends_over_g(&rep).expect("a transposition inverts (123)");
        let a = &rep.table()[0][0];
        let image = &(&(&x * a) * &x.inverse()) * &a.pow(-2);
        assert!(image.is_identity());
        assert!(x.pow(2).is_identity());
    }

    #[test]
    fn evaluate_trivial_words() {
        let (kp, rep) = bs_rep();
        assert!(rep.evaluate(&KernelWord::identity()).is_identity());
        let w = &kp.templates[0];
        assert!(rep.evaluate(&w.concat(&w.inverse())).is_identity());
    }

    #[test]
    fn json_round_trip() {
        let (kp, rep) = bs_rep();
        let text = rep.to_json().to_string();
        assert_eq!(text, r#"{"N":3,"r":2,"table":{"a":[[[1,2,3]],[[1,3,2]]]}}"#);
        assert_eq!(PeriodicRep::from_json(&text, &kp).unwrap(), rep);
        assert!(PeriodicRep::from_json(r#"{"N":3,"r":2,"table":{"b":[[],[]]}}"#, &kp).is_err());
    }

    #[test]
    fn period_one_reps_extend_by_the_identity() {
        let (kp, _) = bs_rep();
        let one = PeriodicRep::trivial(&kp, 3, 1);
        assert!(extensions(&one).iter().any(Permutation::is_identity));
        assert_eq!(extensions(&one).len(), 6);
    }

    #[test]
    fn restriction_and_orbits() {
        let (kp, _) = bs_rep();
        let a = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let rep = PeriodicRep::new(4, 1, kp.generators.clone(), vec![vec![a]]).unwrap();
        assert_eq!(rep.orbits(), vec![vec![0, 1], vec![2, 3]]);
        let part = rep.restrict_to_orbit(&[2, 3]).unwrap();
        assert_eq!(part.table()[0][0], Permutation::from_cycles(2, &[vec![1, 2]]).unwrap());
        assert!(rep.restrict_to_orbit(&[1, 2]).is_err());
    }
}
