use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg::det_bareiss;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`, from column `from` on.
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt, from: usize, modulus: Option<&BigInt>) {
        for j in from..self.cols {
            let v = self.get(src, j) * q;
            if v.is_zero() {
                continue;
            }
            let e = &mut self.data[dst * self.cols + j];
            *e -= v;
            if let Some(m) = modulus {
                *e = e.mod_floor(m);
            }
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt, from: usize, modulus: Option<&BigInt>) {
        for i in from..self.rows {
            let v = self.get(i, src) * q;
            if v.is_zero() {
                continue;
            }
            let e = &mut self.data[i * self.cols + dst];
            *e -= v;
            if let Some(m) = modulus {
                *e = e.mod_floor(m);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// Rank of the free part of the cokernel `Z^cols / rowspace`.
    pub free_rank: usize,
}

impl SmithForm {
    /// Order of the torsion subgroup of the cokernel.
    pub fn torsion(&self) -> BigInt {
        self.factors.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Factors greater than one.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Square matrices at least this large with nonzero determinant go through the
/// modular path.
pub const MODULAR_THRESHOLD: usize = 48;

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    if m.rows == m.cols && m.rows >= MODULAR_THRESHOLD {
        if let Some(f) = smith_modular(m) {
            return f;
        }
    }
    smith_exact(m)
}

/// Elimination over the integers with the smallest available pivot.
pub fn smith_exact(m: &IntMatrix) -> SmithForm {
    let diag = diagonalize(m.clone(), None);
    finish(diag, m.cols)
}

/// For square nonsingular `m` with `|det| = D`: the row lattice contains `D Z^n`,
/// so elimination can run with entries reduced modulo `D`. Returns `None` for
/// non-square or singular input.
pub fn smith_modular(m: &IntMatrix) -> Option<SmithForm> {
    if m.rows != m.cols {
        return None;
    }
    let det = det_bareiss(m.to_rows()).abs();
    if det.is_zero() {
        return None;
    }
    if det.is_one() {
        return Some(SmithForm {
            factors: vec![BigInt::one(); m.rows],
            rank: m.rows,
            free_rank: 0,
        });
    }
    let mut a = m.clone();
    for e in a.data.iter_mut() {
        *e = e.mod_floor(&det);
    }
    let mut diag = diagonalize(a, Some(&det));
    diag.resize(m.rows, BigInt::zero());
    let diag = diag.into_iter().map(|d| d.gcd(&det)).collect();
    Some(finish(diag, m.cols))
}

fn finish(mut diag: Vec<BigInt>, cols: usize) -> SmithForm {
    diag.retain(|d| !d.is_zero());
    // Enforce the divisibility chain: (a, b) -> (gcd, lcm).
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    let rank = diag.len();
    SmithForm {
        factors: diag,
        rank,
        free_rank: cols - rank,
    }
}

/// Diagonal entries (absolute values) after reducing `a` to diagonal form.
fn diagonalize(mut a: IntMatrix, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let mut diag = Vec::new();
    let steps = a.rows.min(a.cols);
    for t in 0..steps {
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..a.rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                a.row_sub(i, t, &q, t, modulus);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..a.cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.col_sub(j, t, &q, t, modulus);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                pivot_from_line(&mut a, t);
                continue;
            }
            // Pivot must divide the rest; otherwise fold in an offending row.
            let p = a.get(t, t).clone();
            let bad = (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    a.row_sub(t, i, &BigInt::from(-1), t, modulus);
                }
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    diag
}

fn min_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Moves the smallest nonzero entry of row `t` or column `t` to `(t, t)`.
fn pivot_from_line(a: &mut IntMatrix, t: usize) {
    let mut best = (t, t);
    let mut val = a.get(t, t).abs();
    for i in t + 1..a.rows {
        let v = a.get(i, t).abs();
        if !v.is_zero() && (val.is_zero() || v < val) {
            best = (i, t);
            val = v;
        }
    }
    for j in t + 1..a.cols {
        let v = a.get(t, j).abs();
        if !v.is_zero() && (val.is_zero() || v < val) {
            best = (t, j);
            val = v;
        }
    }
    a.swap_rows(t, best.0);
    a.swap_cols(t, best.1);
}
