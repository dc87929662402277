//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type BigMatrix = Vec<Vec<BigInt>>;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, `d[i][i] | d[i+1][i+1]`,
/// all diagonal entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: BigMatrix,
    pub d: BigMatrix,
    pub v: BigMatrix,
}

impl SmithForm {
    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn to_big(m: &[Vec<i64>]) -> BigMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> BigMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn row_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, factor: &BigInt) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(&src) {
        *x -= factor * s;
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, factor: &BigInt) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= factor * s;
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Computes the Smith normal form of an integer matrix (rows may be empty).
pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = to_big(m);
    let mut u = identity(rows);
    let mut v = identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            // move the smallest entry of row t / column t onto the pivot
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                swap_cols(&mut a, t, best.1);
                swap_cols(&mut v, t, best.1);
            }

            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&pivot);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&pivot);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and go again
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SmithForm { u, d: a, v }
}

/// Integer solution `x` of `Σ x_k · generators[k] = target`, if one exists.
pub fn solve_integer(generators: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigInt>> {
    let n = target.len();
    let m = generators.len();
    if m == 0 {
        return target.iter().all(|&x| x == 0).then(Vec::new);
    }
    // columns of the system matrix are the generators
    let system: Vec<Vec<i64>> = (0..n)
        .map(|i| generators.iter().map(|g| g[i]).collect())
        .collect();
    let snf = smith_normal_form(&system);
    let rhs: Vec<Vec<BigInt>> = target.iter().map(|&x| vec![BigInt::from(x)]).collect();
    let ut = mat_mul(&snf.u, &rhs);
    let mut y = vec![BigInt::zero(); m];
    for (i, row) in ut.iter().enumerate() {
        let d = if i < m {
            snf.d[i][i].clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !row[0].is_zero() {
                return None;
            }
        } else {
            if !(&row[0] % &d).is_zero() {
                return None;
            }
            y[i] = &row[0] / &d;
        }
    }
    let y_col: Vec<Vec<BigInt>> = y.into_iter().map(|x| vec![x]).collect();
    Some(
        mat_mul(&snf.v, &y_col)
            .into_iter()
            .map(|mut r| r.remove(0))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::definite::determinant;
    use proptest::prelude::*;

    fn diag(snf: &SmithForm) -> Vec<i64> {
        snf.diagonal()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    fn check_identity(m: &[Vec<i64>], snf: &SmithForm) {
        assert_eq!(mat_mul(&mat_mul(&snf.u, &to_big(m)), &snf.v), snf.d);
        for (i, row) in snf.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
        let dg = snf.diagonal();
        for w in dg.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "{dg:?}");
            } else {
                assert!(w[1].is_zero());
            }
        }
        assert_eq!(determinant(&snf.u).abs(), BigInt::one());
        assert_eq!(determinant(&snf.v).abs(), BigInt::one());
    }

    #[test]
    fn scalar_two() {
        let m = vec![vec![2, 0], vec![0, 2]];
        let snf = smith_normal_form(&m);
        assert_eq!(diag(&snf), vec![2, 2]);
        check_identity(&m, &snf);
    }

    #[test]
    fn a2_cartan() {
        // det = 3, gcd of entries = 1
        let m = vec![vec![-2, 1], vec![1, -2]];
        let snf = smith_normal_form(&m);
        assert_eq!(diag(&snf), vec![1, 3]);
        check_identity(&m, &snf);
    }

    #[test]
    fn zero_one_by_one() {
        let snf = smith_normal_form(&[vec![0]]);
        assert_eq!(diag(&snf), vec![0]);
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is not in Smith form: the invariant factors are 1, 6
        let m = vec![vec![2, 0], vec![0, 3]];
        let snf = smith_normal_form(&m);
        assert_eq!(diag(&snf), vec![1, 6]);
        check_identity(&m, &snf);
    }

    #[test]
    fn integer_solve() {
        let gens = vec![vec![2, 0], vec![0, 2], vec![1, 1]];
        let x = solve_integer(&gens, &[3, 1]).unwrap();
        let combo: Vec<BigInt> = (0..2)
            .map(|i| x.iter().zip(&gens).map(|(c, g)| c * g[i]).sum())
            .collect();
        assert_eq!(combo, vec![BigInt::from(3), BigInt::from(1)]);
        assert!(solve_integer(&gens, &[1, 0]).is_none());
        assert!(solve_integer(&[], &[0, 0]).is_some());
    }

    proptest! {
        #[test]
        fn snf_identity_holds(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-6i64..=6, 16)) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let snf = smith_normal_form(&m);
            check_identity(&m, &snf);
        }
    }
}
