//! Exact integer linear algebra shared by the polynomial and matrix layers:
//! fraction-free determinants and integer-node interpolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower.iter_mut() {
            let factor = row[k].clone();
            if factor.is_zero() {
                for x in &mut row[k + 1..n] {
                    *x = &*x * pivot / &prev;
                }
            } else {
                for j in k + 1..n {
                    let v = &row[j] * pivot - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Evaluation nodes `0, 1, -1, 2, -2, ...`.
pub fn interpolation_nodes(count: usize) -> Vec<i64> {
    (0..count)
        .map(|i| {
            let k = i.div_ceil(2) as i64;
            if i % 2 == 1 {
                k
            } else {
                -k
            }
        })
        .collect()
}

/// Coefficients (constant first) of the unique polynomial of degree `< nodes.len()`
/// through `(nodes[i], values[i])`, assuming it has integer coefficients.
///
/// Divided differences of an integer polynomial at integer nodes are integers, so
/// every division is exact. Returns `None` if one is not, which means the values do
/// not come from an integer polynomial of low enough degree.
pub fn interpolate_integer(nodes: &[i64], values: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    let mut dd: Vec<BigInt> = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigInt::from(nodes[i] - nodes[i - level]);
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return None;
            }
            dd[i] = q;
        }
    }
    // Newton form to monomial form, Horner style from the top.
    let mut poly: Vec<BigInt> = vec![BigInt::zero(); n.max(1)];
    if n == 0 {
        return Some(Vec::new());
    }
    poly[0] = dd[n - 1].clone();
    let mut len = 1;
    for k in (0..n - 1).rev() {
        // poly <- poly * (s - nodes[k]) + dd[k]
        let node = BigInt::from(nodes[k]);
        let mut next = vec![BigInt::zero(); len + 1];
        for (j, c) in poly[..len].iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &node;
        }
        next[0] += &dd[k];
        len += 1;
        poly[..len].clone_from_slice(&next);
    }
    poly.truncate(len);
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    Some(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(det_bareiss(m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(det_bareiss(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det_bareiss(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            det_bareiss(m(&[&[0, 2, 1], &[3, 0, -1], &[1, 1, 1]])),
            BigInt::from(-5)
        );
        assert_eq!(det_bareiss(Vec::new()), BigInt::one());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        fn cofactor(a: &[Vec<i64>]) -> i64 {
            let n = a.len();
            if n == 1 {
                return a[0][0];
            }
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = a[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * a[0][j] * cofactor(&minor)
                })
                .sum()
        }
        let mut seed = 17u64;
        for n in 1..6 {
            for _ in 0..20 {
                let a: Vec<Vec<i64>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                                ((seed >> 33) % 7) as i64 - 3
                            })
                            .collect()
                    })
                    .collect();
                let big: Vec<Vec<BigInt>> =
                    a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
                assert_eq!(det_bareiss(big), BigInt::from(cofactor(&a)));
            }
        }
    }

    #[test]
    fn nodes_alternate() {
        assert_eq!(interpolation_nodes(5), vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        // 3 - 2s + 5s^3
        let p = |z: i64| 3 - 2 * z + 5 * z * z * z;
        let nodes = interpolation_nodes(6);
        let values: Vec<BigInt> = nodes.iter().map(|&z| BigInt::from(p(z))).collect();
        let c = interpolate_integer(&nodes, &values).unwrap();
        assert_eq!(c, vec![3, -2, 0, 5].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
