//! Smith normal form over the integers.

pub type IntMatrix = Vec<Vec<i64>>;

/// Result of [`smith_normal_form`]: `left * m * right = diag`, with `left`
/// and `right` unimodular and `diag[i] | diag[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    /// Nonnegative diagonal entries, length `min(rows, cols)`.
    pub diag: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "determinant of a non-square matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] += k * row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    let src_row = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(src_row) {
        *x += k * y;
    }
}

/// col[dst] += k * col[src]
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] += k * row[src];
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut left = identity(rows);
    let mut right = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| (a[i][j].abs(), i, j));
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(p);
                add_row(&mut a, i, t, -q);
                add_row(&mut left, i, t, -q);
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                add_col(&mut a, j, t, -q);
                add_col(&mut right, j, t, -q);
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    add_row(&mut a, t, i, 1);
                    add_row(&mut left, t, i, 1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in left[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..rows.min(cols)).map(|i| a[i][i]).collect();
    Snf { diag, left, right }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        let d = matmul(&matmul(&snf.left, m), &snf.right);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, snf.diag[i]);
                } else {
                    assert_eq!(x, 0, "off-diagonal entry in {d:?}");
                }
            }
        }
        assert_eq!(determinant(&snf.left).abs(), 1);
        assert_eq!(determinant(&snf.right).abs(), 1);
        for w in snf.diag.windows(2) {
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        assert!(snf.diag.iter().all(|&x| x >= 0));
    }

    #[test]
    fn small_cases() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![2, 6, 12]);
        check(&m);

        let m = vec![vec![1, 1], vec![-1, 1]];
        assert_eq!(smith_normal_form(&m).diag, vec![1, 2]);

        check(&vec![vec![0, 0], vec![0, 0]]);
        check(&vec![vec![3], vec![6]]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&identity(5)), 1);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, -2]]), -1);
        assert_eq!(determinant(&vec![vec![2, 1], vec![4, 2]]), 0);
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(determinant(&a2), 3);
    }

    proptest! {
        #[test]
        fn snf_is_valid(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-7i64..=7, 36)) {
            let m: IntMatrix = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            check(&m);
        }
    }
}
