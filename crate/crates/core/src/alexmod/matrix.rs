//! Matrices over `Z[s^±1]` and their determinantal orders.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::laurent::{gcd, LaurentPoly};
use crate::linalg::{det_bareiss, interpolate_integer, interpolation_nodes};

/// Degree bound at or below which determinants go through evaluation and
/// interpolation; above it, fraction-free elimination over `Z[s]`.
pub const INTERPOLATION_DEGREE_LIMIT: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &LaurentPoly) {
        let e = &mut self.entries[i * self.cols + j];
        *e = &*e + v;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Integer matrix obtained by substituting `s = z` (`z` must be a unit if
    /// any exponent is negative).
    pub fn eval(&self, z: &BigInt) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval(z)).collect())
            .collect()
    }

    /// Upper bound for the width of the determinant: after shifting each row and
    /// column to start at exponent 0, the smaller of the row-wise and column-wise
    /// sums of top exponents.
    pub fn degree_bound(&self) -> usize {
        self.normalized().2
    }

    // Shifts every row, then every column, so all exponents are >= 0 with a zero
    // minimum in each line. Returns the shifted matrix, the total shift removed
    // and the degree bound.
    fn normalized(&self) -> (PolyMatrix, i64, usize) {
        let mut m = self.clone();
        let mut total = 0;
        for i in 0..m.rows {
            if let Some(lo) = m.row(i).iter().filter(|p| !p.is_zero()).map(|p| p.low_degree()).min() {
                total += lo;
                for j in 0..m.cols {
                    let v = m.get(i, j).shift(-lo);
                    m.set(i, j, v);
                }
            }
        }
        for j in 0..m.cols {
            let lo = m.column_entries(j).map(|p| p.low_degree()).min();
            if let Some(lo) = lo {
                total += lo;
                for i in 0..m.rows {
                    let v = m.get(i, j).shift(-lo);
                    m.set(i, j, v);
                }
            }
        }
        let row_bound: i64 = (0..m.rows)
            .map(|i| m.row(i).iter().filter(|p| !p.is_zero()).map(|p| p.high_degree()).max().unwrap_or(0))
            .sum();
        let col_bound: i64 = (0..m.cols)
            .map(|j| m.column_entries(j).map(|p| p.high_degree()).max().unwrap_or(0))
            .sum();
        (m, total, row_bound.min(col_bound) as usize)
    }

    fn column_entries(&self, j: usize) -> impl Iterator<Item = &LaurentPoly> {
        (0..self.rows).map(move |i| self.get(i, j)).filter(|p| !p.is_zero())
    }

    fn has_zero_line(&self) -> bool {
        (0..self.rows).any(|i| self.row(i).iter().all(LaurentPoly::is_zero))
            || (0..self.cols).any(|j| (0..self.rows).all(|i| self.get(i, j).is_zero()))
    }
}

/// Exact determinant by evaluation at `0, ±1, ±2, ...` and interpolation.
pub fn det_interpolation(m: &PolyMatrix) -> LaurentPoly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    if m.rows == 0 {
        return LaurentPoly::one();
    }
    if m.has_zero_line() {
        return LaurentPoly::zero();
    }
    let (norm, shift, bound) = m.normalized();
    let nodes = interpolation_nodes(bound + 1);
    let values: Vec<BigInt> = nodes
        .par_iter()
        .map(|&z| det_bareiss(norm.eval(&BigInt::from(z))))
        .collect();
    let coeffs = interpolate_integer(&nodes, &values).expect("determinant is an integer polynomial");
    LaurentPoly::new(shift, coeffs)
}

/// Exact determinant by Bareiss fraction-free elimination over `Z[s]`.
pub fn det_fraction_free(m: &PolyMatrix) -> LaurentPoly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return LaurentPoly::one();
    }
    let (norm, shift, _) = m.normalized();
    let mut a: Vec<Vec<LaurentPoly>> = (0..n).map(|i| norm.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        // Pivot of smallest width keeps intermediate growth down.
        let Some(p) = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].degree()) else {
            return LaurentPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        lower.par_iter_mut().for_each(|row| {
            let factor = row[k].clone();
            for j in k + 1..n {
                let v = &(&row[j] * pivot) - &(&factor * &pivot_row[j]);
                row[j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[k] = LaurentPoly::zero();
        });
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].shift(shift);
    if negate {
        -&d
    } else {
        d
    }
}

/// Determinant, dispatching on the degree bound.
pub fn determinant(m: &PolyMatrix) -> LaurentPoly {
    if m.degree_bound() <= INTERPOLATION_DEGREE_LIMIT {
        det_interpolation(m)
    } else {
        det_fraction_free(m)
    }
}

/// `Delta_0` of the module presented by `m` (rows are relations): the gcd of the
/// maximal minors, canonical. Fewer relations than generators gives 0.
///
/// For non-square input the `cols x cols` minors are enumerated in
/// lexicographic order of row subsets; enumeration stops once the running
/// gcd is a unit.
pub fn order_delta0(m: &PolyMatrix) -> LaurentPoly {
    if m.rows < m.cols {
        return LaurentPoly::zero();
    }
    let all_cols: Vec<usize> = (0..m.cols).collect();
    if m.rows == m.cols {
        return determinant(m).canonical();
    }
    let mut acc = LaurentPoly::zero();
    let mut subset: Vec<usize> = (0..m.cols).collect();
    loop {
        let minor = determinant(&m.select(&subset, &all_cols));
        acc = gcd(&acc, &minor);
        if acc.is_unit() {
            return acc.canonical();
        }
        if !next_combination(&mut subset, m.rows) {
            break;
        }
    }
    acc.canonical()
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Evaluates every entry at `s = 1`; used for the branched cover matrices.
pub fn eval_at_one(m: &PolyMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p| p.coeffs().iter().fold(BigInt::zero(), |a, c| a + c))
                .collect()
        })
        .collect()
}
