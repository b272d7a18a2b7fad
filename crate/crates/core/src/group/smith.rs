#![allow(clippy::needless_range_loop)]

//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of [`smith_normal_form`]: `diagonal = left * M * right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `min(rows, cols)` diagonal entries, non-negative, each dividing the next
    /// (zeros trail).
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
    pub right_inverse: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Computes `U`, `V` unimodular with `U * M * V` diagonal and the diagonal
/// forming a divisibility chain. `matrix` is given row-major; all rows must
/// have `cols` entries.
pub fn smith_normal_form(matrix: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut vinv = identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v, vinv, steps);
            };
            if pi != t {
                a.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(pj, t);
                }
                for row in v.iter_mut() {
                    row.swap(pj, t);
                }
                vinv.swap(pj, t);
            }

            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    for j in t..cols {
                        let delta = &q * &a[t][j];
                        a[i][j] -= delta;
                    }
                    for j in 0..rows {
                        let delta = &q * &u[t][j];
                        u[i][j] -= delta;
                    }
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for i in t..rows {
                        let delta = &q * &a[i][t];
                        a[i][j] -= delta;
                    }
                    for row in v.iter_mut() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    for k in 0..cols {
                        let delta = &q * &vinv[j][k];
                        vinv[t][k] += delta;
                    }
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // pivot must divide the whole trailing block
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                for j in t..cols {
                    let x = a[i][j].clone();
                    a[t][j] += x;
                }
                for j in 0..rows {
                    let x = u[i][j].clone();
                    u[t][j] += x;
                }
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    finish(a, u, v, vinv, steps)
}

fn finish(
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
    right_inverse: Vec<Vec<BigInt>>,
    steps: usize,
) -> SmithForm {
    let diagonal = (0..steps).map(|i| a[i][i].abs()).collect();
    SmithForm {
        diagonal,
        left,
        right,
        right_inverse,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    // Determinant by cofactor expansion; only used on tiny matrices.
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for c in 0..n {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn check(m: &[Vec<BigInt>], cols: usize) -> SmithForm {
        let s = smith_normal_form(m, cols);
        let rows = m.len();
        let d = mul(&mul(&s.left, m, rows, cols), &s.right, cols, cols);
        for i in 0..rows {
            for j in 0..cols {
                let expected = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], expected, "U M V is not the reported diagonal");
            }
        }
        assert_eq!(det(&s.left).abs(), BigInt::one());
        assert_eq!(det(&s.right).abs(), BigInt::one());
        assert_eq!(mul(&s.right, &s.right_inverse, cols, cols), identity(cols));
        for w in s.diagonal.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&big(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_matrix() {
        let s = check(&big(&[&[1, 0], &[0, 1]]), 2);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn two_four_six_eight() {
        // gcd of entries is 2 and |det| = 8, so the chain is (2, 4).
        let s = check(&big(&[&[2, 4], &[6, 8]]), 2);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn empty_and_rectangular() {
        assert!(smith_normal_form(&[], 0).diagonal.is_empty());
        assert!(smith_normal_form(&[], 3).diagonal.is_empty());
        let s = check(&big(&[&[4, 6, 0]]), 3);
        assert_eq!(s.diagonal, vec![BigInt::from(2)]);
        let s = check(&big(&[&[0, 0], &[0, 0], &[0, 5]]), 2);
        assert_eq!(s.diagonal, vec![BigInt::from(5), BigInt::zero()]);
    }

    proptest! {
        #[test]
        fn smith_invariants(rows in 0usize..4, cols in 0usize..4, seed in proptest::collection::vec(-30i64..30, 16)) {
            let m: Vec<Vec<BigInt>> = (0..rows)
                .map(|i| (0..cols).map(|j| BigInt::from(seed[i * 4 + j])).collect())
                .collect();
            check(&m, cols);
        }
    }
}
