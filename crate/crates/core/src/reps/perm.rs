use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` acting on the right: `i * (p * q) = (i * p) * q`.
///
/// Externally (cycle notation, JSON) points are numbered from 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// From 0-based images, `images[i] = i * p`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|j| j as u32).collect(),
        })
    }

    /// From disjoint cycles in 1-based notation, e.g. `[[1, 2, 3]]` for `(1 2 3)`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::InvalidPermutation(format!("point {a} outside [1,{n}]")));
                }
                if std::mem::replace(&mut used[a - 1], true) {
                    return Err(Error::InvalidPermutation(format!("point {a} repeated in cycles")));
                }
                images[a - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Self::from_images(images)
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut c = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push(i + 1);
                i = self.images[i] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&j| j as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `x * self * x^-1`.
    pub fn conjugate_by(&self, x: &Permutation) -> Self {
        &(x * self) * &x.inverse()
    }

    /// Relabels points by `label`: the result sends `label[i]` to `label[i * self]`.
    pub fn relabel(&self, label: &[usize]) -> Self {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[label[i]] = label[j as usize] as u32;
        }
        Permutation { images }
    }

    /// Number of orbits of `<self>` on the points, fixed points included.
    pub fn num_cycles(&self) -> usize {
        let n = self.degree();
        n - self.cycles().iter().map(|c| c.len() - 1).sum::<usize>()
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// First `self`, then `rhs`.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&j| rhs.images[j as usize]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return f.write_str("()");
        }
        for c in cs {
            let parts: Vec<String> = c.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All of `S_n` in lexicographic order of image lists.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![Permutation { images: cur.clone() }];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation { images: cur.clone() });
    }
}

/// One permutation of each cycle type (conjugacy class representatives of `S_n`).
pub fn class_representatives(n: usize) -> Vec<Permutation> {
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            partitions(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|p| {
            let mut images: Vec<usize> = (0..n).collect();
            let mut start = 0;
            for len in p {
                for k in 0..len {
                    images[start + k] = start + (k + 1) % len;
                }
                start += len;
            }
            Permutation::from_images(images).expect("cycle type gives a permutation")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_composition() {
        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!(&a * &b, Permutation::from_cycles(3, &[vec![1, 3, 2]]).unwrap());
        assert!((&a * &a.inverse()).is_identity());
    }

    #[test]
    fn cycles_round_trip() {
        let p = Permutation::from_cycles(5, &[vec![1, 5, 4, 3, 2]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 5, 4, 3, 2]]);
        assert_eq!(p.order(), 5);
        assert_eq!(Permutation::from_cycles(5, &p.cycles()).unwrap(), p);
        assert!(Permutation::from_cycles(3, &[vec![1, 1]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![4]]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(class_representatives(5).len(), 7);
        assert_eq!(all_permutations(0).len(), 1);
    }
}
