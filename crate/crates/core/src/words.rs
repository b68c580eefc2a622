//! Free-group words, the integral group ring, Fox derivatives and
//! Reidemeister-Schreier rewriting into kernel generators.
//!
//! Generators are plain indices. Words are freely reduced on construction, so
//! structural equality is equality in the free group.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Gen = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Gen, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the free group on generators `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(gen: Gen) -> Self {
        FreeWord {
            letters: vec![Letter::new(gen, false)],
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds `g1^e1 g2^e2 ...`.
    pub fn from_powers(powers: &[(Gen, i64)]) -> Self {
        let mut w = FreeWord::identity();
        for &(g, e) in powers {
            let l = Letter::new(g, e < 0);
            for _ in 0..e.unsigned_abs() {
                w.push(l);
            }
        }
        w
    }

    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Total degree under the homomorphism sending generator `g` to `degrees[g]`.
    pub fn degree(&self, degrees: &[i64]) -> i64 {
        self.letters
            .iter()
            .map(|l| degrees[l.gen] * l.exponent())
            .sum()
    }

    pub fn max_generator(&self) -> Option<Gen> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Replaces each letter by the image of its generator (inverted for inverse letters).
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::identity();
        for l in &self.letters {
            let img = if l.inverse {
                images[l.gen].inverse()
            } else {
                images[l.gen].clone()
            };
            for m in img.letters {
                out.push(m);
            }
        }
        out
    }

    /// Renders the word using generator names, with exponents collapsed (`x a^-2`).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.exponent();
            let name = names.get(l.gen).cloned().unwrap_or_else(|| format!("g{}", l.gen));
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
            i = j;
        }
        parts.join(" ")
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &rhs.letters {
            out.push(l);
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|g| format!("g{g}"))
            .collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Finite integer combination of free-group words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        Self::from_term(w, 1)
    }

    pub fn from_term(w: FreeWord, c: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: FreeWord, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &FreeWord) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Sum of coefficients (the augmentation to `Z`).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u * v, a * b);
            }
        }
        out
    }
}

/// Fox derivative `dw/dg` in the free group on `num_gens` generators.
///
/// Every occurrence of `g` contributes its prefix, every occurrence of `g^-1`
/// contributes minus its prefix including that letter.
pub fn fox_derivative(w: &FreeWord, g: Gen, num_gens: usize) -> Result<GroupRingElement> {
    if g >= num_gens {
        return Err(Error::UnknownGenerator(g));
    }
    if let Some(m) = w.max_generator() {
        if m >= num_gens {
            return Err(Error::UnknownGenerator(m));
        }
    }
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for &l in w.letters() {
        if l.gen == g && !l.inverse {
            out.add_term(prefix.clone(), 1);
        }
        prefix.push(l);
        if l.gen == g && l.inverse {
            out.add_term(prefix.clone(), -1);
        }
    }
    Ok(out)
}

/// A letter `a_nu^{±1}` of the kernel presentation, where `a_nu = x^nu a x^-nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelLetter {
    pub gen: Gen,
    pub shift: i64,
    pub inverse: bool,
}

impl KernelLetter {
    pub fn new(gen: Gen, shift: i64, inverse: bool) -> Self {
        KernelLetter {
            gen,
            shift,
            inverse,
        }
    }

    pub fn inv(self) -> Self {
        KernelLetter {
            inverse: !self.inverse,
            ..self
        }
    }
}

/// Freely reduced word in the symbols `a_nu`; shift indices are unbounded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelWord {
    letters: Vec<KernelLetter>,
}

impl KernelWord {
    pub fn identity() -> Self {
        KernelWord::default()
    }

    pub fn from_letters<I: IntoIterator<Item = KernelLetter>>(letters: I) -> Self {
        let mut w = KernelWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds `(g1)_{nu1}^{e1} ...` from `(gen, shift, exponent)` triples.
    pub fn from_powers(powers: &[(Gen, i64, i64)]) -> Self {
        let mut w = KernelWord::identity();
        for &(g, nu, e) in powers {
            for _ in 0..e.unsigned_abs() {
                w.push(KernelLetter::new(g, nu, e < 0));
            }
        }
        w
    }

    pub fn push(&mut self, l: KernelLetter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[KernelLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        KernelWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &KernelWord) -> KernelWord {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.letters.iter().map(|l| l.shift).min()
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.letters.iter().map(|l| l.shift).max()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * if l.inverse { -1 } else { 1 };
            let name = names.get(l.gen).cloned().unwrap_or_else(|| format!("g{}", l.gen));
            if e == 1 {
                parts.push(format!("{name}_{}", l.shift));
            } else {
                parts.push(format!("{name}_{}^{e}", l.shift));
            }
            i = j;
        }
        parts.join(" ")
    }
}

/// Conjugation by `x^k`: adds `k` to every shift index.
pub fn shift_kernel_word(w: &KernelWord, k: i64) -> KernelWord {
    KernelWord {
        letters: w
            .letters
            .iter()
            .map(|l| KernelLetter {
                shift: l.shift + k,
                ..*l
            })
            .collect(),
    }
}

/// Reidemeister-Schreier rewrite of a degree-zero word with transversal `{x^n}`.
///
/// Requires every generator other than `x` to have degree 0 and `degrees[x] == 1`.
pub fn schreier_rewrite(w: &FreeWord, degrees: &[i64], x: Gen) -> Result<KernelWord> {
    let total = w.degree(degrees);
    if total != 0 {
        return Err(Error::NotInKernel(total));
    }
    rewrite_with_offset(w, degrees, x, 0).map(|(k, _)| k)
}

/// Rewrites `w` starting at coset `x^offset`; returns the kernel word and the final coset.
pub(crate) fn rewrite_with_offset(
    w: &FreeWord,
    degrees: &[i64],
    x: Gen,
    offset: i64,
) -> Result<(KernelWord, i64)> {
    if x >= degrees.len() {
        return Err(Error::UnknownGenerator(x));
    }
    if degrees[x] != 1 {
        return Err(Error::NotNormalized(format!("g{x}")));
    }
    let mut out = KernelWord::identity();
    let mut level = offset;
    for &l in w.letters() {
        if l.gen >= degrees.len() {
            return Err(Error::UnknownGenerator(l.gen));
        }
        if l.gen == x {
            level += l.exponent();
        } else if degrees[l.gen] != 0 {
            return Err(Error::NotNormalized(format!("g{}", l.gen)));
        } else {
            out.push(KernelLetter::new(l.gen, level, l.inverse));
        }
    }
    Ok((out, level))
}
