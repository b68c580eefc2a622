//! Backtracking search for period-`r` points of `Hom(K, S_N)`.
//!
//! Variables are the images of `(a_g)_nu`, `nu` in `[0, r)`; every relator
//! instance becomes a constraint on the variables it mentions. After each
//! choice, a constraint with all variables set is checked, and one with a
//! single unset variable occurring once is solved for it.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use super::perm::{all_permutations, class_representatives, Permutation};
use super::PeriodicRep;
use crate::error::{Error, Result};
use crate::groups::KernelPresentation;

/// Largest degree the enumerator accepts (`8! = 40320` values per variable).
pub const MAX_DEGREE: usize = 8;

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Search-node budget; `None` for unlimited.
    pub limit: Option<u64>,
    /// Keep every solution instead of one per class under shift and conjugation.
    pub raw: bool,
    /// Keep representations whose image is not transitive.
    pub allow_reducible: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            limit: Some(10_000_000),
            raw: false,
            allow_reducible: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub reps: Vec<PeriodicRep>,
    /// True when the budget ran out, so `reps` may be incomplete.
    pub partial: bool,
    pub nodes: u64,
}

struct Problem {
    n: usize,
    vars: usize,
    constraints: Vec<Vec<(usize, bool)>>,
    by_var: Vec<Vec<usize>>,
}

impl Problem {
    fn new(kp: &KernelPresentation, n: usize, r: usize) -> Self {
        let vars = kp.num_generators() * r;
        let mut constraints = Vec::new();
        for t in &kp.templates {
            for nu in 0..r as i64 {
                let c: Vec<(usize, bool)> = t
                    .letters()
                    .iter()
                    .map(|l| (l.gen * r + (l.shift + nu).rem_euclid(r as i64) as usize, l.inverse))
                    .collect();
                constraints.push(c);
            }
        }
        let mut by_var = vec![Vec::new(); vars];
        for (ci, c) in constraints.iter().enumerate() {
            for &(v, _) in c {
                if !by_var[v].contains(&ci) {
                    by_var[v].push(ci);
                }
            }
        }
        Problem {
            n,
            vars,
            constraints,
            by_var,
        }
    }

    fn product(&self, c: &[(usize, bool)], a: &[Option<Permutation>]) -> Permutation {
        let mut out = Permutation::identity(self.n);
        for &(v, inv) in c {
            let p = a[v].as_ref().expect("assigned");
            out = if inv { &out * &p.inverse() } else { &out * p };
        }
        out
    }

    /// Checks and solves constraints touched by `dirty`; false on contradiction.
    fn propagate(&self, a: &mut [Option<Permutation>], mut dirty: Vec<usize>) -> bool {
        while let Some(v) = dirty.pop() {
            for &ci in &self.by_var[v] {
                let c = &self.constraints[ci];
                let mut unset: Option<usize> = None;
                let mut unset_count = 0;
                let mut distinct = true;
                for &(w, _) in c {
                    if a[w].is_none() {
                        match unset {
                            None => unset = Some(w),
                            Some(u) if u != w => distinct = false,
                            _ => {}
                        }
                        unset_count += 1;
                    }
                }
                match unset {
                    None => {
                        if !self.product(c, a).is_identity() {
                            return false;
                        }
                    }
                    Some(u) if distinct && unset_count == 1 => {
                        // left * u^e * right = 1, so u^e = left^-1 right^-1.
                        let k = c.iter().position(|&(w, _)| w == u).unwrap();
                        let left = self.product(&c[..k], a);
                        let right = self.product(&c[k + 1..], a);
                        let solved = &left.inverse() * &right.inverse();
                        a[u] = Some(if c[k].1 { solved.inverse() } else { solved });
                        dirty.push(u);
                    }
                    _ => {}
                }
            }
        }
        true
    }
}

struct Search<'a> {
    problem: &'a Problem,
    values: &'a [Permutation],
    budget: u64,
    nodes: u64,
    exhausted: bool,
    found: Vec<Vec<Permutation>>,
}

impl Search<'_> {
    fn run(&mut self, a: &mut [Option<Permutation>]) {
        let Some(v) = (0..self.problem.vars).find(|&v| a[v].is_none()) else {
            self.found.push(a.iter().map(|p| p.clone().unwrap()).collect());
            return;
        };
        for p in self.values {
            if self.nodes >= self.budget {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            let mut next = a.to_vec();
            next[v] = Some(p.clone());
            if self.problem.propagate(&mut next, vec![v]) {
                self.run(&mut next);
            }
        }
    }
}

fn to_rep(kp: &KernelPresentation, n: usize, r: usize, flat: Vec<Permutation>) -> PeriodicRep {
    let mut it = flat.into_iter();
    let table = (0..kp.num_generators())
        .map(|_| (0..r).map(|_| it.next().unwrap()).collect())
        .collect();
    PeriodicRep::new(n, r, kp.generators.clone(), table).expect("shapes match")
}

/// Period-`r` representations of `K` into `S_n`.
///
/// Unless `raw` is set, one representative per class under the shift `sigma`
/// and simultaneous conjugation is returned, in a canonical form. Output is
/// sorted and does not depend on the thread count.
pub fn enumerate_periodic(
    kp: &KernelPresentation,
    n: usize,
    r: usize,
    options: &EnumerateOptions,
) -> Result<Enumeration> {
    if n == 0 || r == 0 {
        return Err(Error::RepMismatch("degree and period must be positive".into()));
    }
    if n > MAX_DEGREE {
        return Err(Error::Unsupported(format!("enumeration supports N <= {MAX_DEGREE}")));
    }
    let problem = Problem::new(kp, n, r);
    let values = all_permutations(n);
    if problem.vars == 0 {
        let rep = to_rep(kp, n, r, Vec::new());
        let keep = options.allow_reducible || rep.is_transitive();
        return Ok(Enumeration {
            reps: if keep { vec![rep] } else { Vec::new() },
            partial: false,
            nodes: 0,
        });
    }
    // Up to conjugation the first variable can be a cycle-type representative.
    let first: Vec<Permutation> = if options.raw { values.clone() } else { class_representatives(n) };
    let share = options.limit.map_or(u64::MAX, |l| l.div_ceil(first.len() as u64).max(1));
    let partial = AtomicBool::new(false);
    let branches: Vec<(u64, Vec<Vec<Permutation>>)> = first
        .par_iter()
        .map(|p| {
            let mut a = vec![None; problem.vars];
            a[0] = Some(p.clone());
            let mut s = Search {
                problem: &problem,
                values: &values,
                budget: share,
                nodes: 1,
                exhausted: false,
                found: Vec::new(),
            };
            if problem.propagate(&mut a, vec![0]) {
                s.run(&mut a);
            }
            if s.exhausted {
                partial.store(true, Ordering::Relaxed);
            }
            (s.nodes, s.found)
        })
        .collect();
    let nodes = branches.iter().map(|b| b.0).sum();
    let mut reps: BTreeSet<PeriodicRep> = BTreeSet::new();
    for flat in branches.into_iter().flat_map(|b| b.1) {
        let rep = to_rep(kp, n, r, flat);
        if !options.allow_reducible && !rep.is_transitive() {
            continue;
        }
        reps.insert(if options.raw { rep } else { canonical_form(&rep) });
    }
    Ok(Enumeration {
        reps: reps.into_iter().collect(),
        partial: partial.into_inner(),
        nodes,
    })
}

/// Exhaustive search over all assignments, checking every relator instance
/// directly. Exponential; meant as an oracle for small cases.
pub fn brute_force_periodic(kp: &KernelPresentation, n: usize, r: usize, allow_reducible: bool) -> Vec<PeriodicRep> {
    let values = all_permutations(n);
    let vars = kp.num_generators() * r;
    let total = values.len().pow(vars as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let flat: Vec<Permutation> = (0..vars)
            .map(|_| {
                let p = values[c % values.len()].clone();
                c /= values.len();
                p
            })
            .collect();
        let rep = to_rep(kp, n, r, flat);
        if rep.verify(kp).is_ok() && (allow_reducible || rep.is_transitive()) {
            out.push(rep);
        }
    }
    out.sort();
    out
}

/// Canonical representative of the class of `rep` under `sigma` and conjugation.
pub fn canonical_form(rep: &PeriodicRep) -> PeriodicRep {
    let mut best: Option<PeriodicRep> = None;
    let mut cur = rep.clone();
    for _ in 0..rep.period() {
        let c = conjugation_canonical(&cur);
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
        cur = cur.sigma();
    }
    best.unwrap()
}

fn relabeled(rep: &PeriodicRep, label: &[usize]) -> PeriodicRep {
    let table = rep
        .table()
        .iter()
        .map(|row| row.iter().map(|p| p.relabel(label)).collect())
        .collect();
    PeriodicRep::new(rep.degree(), rep.period(), rep.generators().to_vec(), table).expect("same shape")
}

fn conjugation_canonical(rep: &PeriodicRep) -> PeriodicRep {
    let n = rep.degree();
    let gens: Vec<&Permutation> = rep.table().iter().flatten().collect();
    if rep.is_transitive() {
        // Breadth-first relabeling from each start point determines the conjugate.
        (0..n)
            .map(|start| {
                let mut label = vec![usize::MAX; n];
                let mut order = vec![start];
                label[start] = 0;
                let mut k = 0;
                while k < order.len() {
                    let i = order[k];
                    for g in &gens {
                        let j = g.apply(i);
                        if label[j] == usize::MAX {
                            label[j] = order.len();
                            order.push(j);
                        }
                    }
                    k += 1;
                }
                relabeled(rep, &label)
            })
            .min()
            .unwrap()
    } else {
        all_permutations(n)
            .iter()
            .map(|p| relabeled(rep, &p.images().collect::<Vec<_>>()))
            .min()
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{kernel_presentation, normalize, AugmentedGroupSystem};

    fn kp(text: &str) -> KernelPresentation {
        kernel_presentation(&normalize(&AugmentedGroupSystem::parse(text).unwrap())).unwrap()
    }

    #[test]
    fn degree_one_gives_only_the_trivial_rep() {
        let k = kp("gens x a; eps x=1; rel x a x^-1 a^-2;");
        let e = enumerate_periodic(&k, 1, 3, &EnumerateOptions::default()).unwrap();
        assert_eq!(e.reps, vec![PeriodicRep::trivial(&k, 1, 3)]);
    }

    #[test]
    fn raw_matches_brute_force() {
        let k = kp("gens x y; eps x=1 y=1; rel x y x y^-1 x^-1 y^-1;");
        for (n, r) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let opts = EnumerateOptions {
                raw: true,
                allow_reducible: true,
                limit: None,
            };
            let e = enumerate_periodic(&k, n, r, &opts).unwrap();
            assert!(!e.partial);
            assert_eq!(e.reps, brute_force_periodic(&k, n, r, true), "N={n} r={r}");
        }
    }

    #[test]
    fn baumslag_solitar_known_rep_is_found() {
        let k = kp("gens x a; eps x=1; rel x a x^-1 a^-2;");
        let e = enumerate_periodic(&k, 3, 2, &EnumerateOptions::default()).unwrap();
        let known = PeriodicRep::from_json(r#"{"N":3,"r":2,"table":{"a":[[[1,2,3]],[[1,3,2]]]}}"#, &k).unwrap();
        assert!(e.reps.contains(&canonical_form(&known)));
        for rep in &e.reps {
            rep.verify(&k).unwrap();
            assert_eq!(canonical_form(rep), *rep);
        }
    }

    #[test]
    fn budget_marks_partial() {
        let k = kp("gens x y; eps x=1 y=1; rel x y x y^-1 x^-1 y^-1;");
        let opts = EnumerateOptions {
            limit: Some(5),
            ..Default::default()
        };
        assert!(enumerate_periodic(&k, 4, 3, &opts).unwrap().partial);
    }
}
