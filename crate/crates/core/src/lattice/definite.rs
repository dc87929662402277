//! Exact determinants and definiteness via fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

struct Overflow;

/// Runs Bareiss elimination without pivoting and reports whether every
/// leading principal minor of `a` is strictly positive.
fn leading_minors_positive<T>(mut a: Vec<Vec<T>>) -> Result<bool, Overflow>
where
    T: Clone + Zero + One + PartialOrd + CheckedMul + CheckedSub + CheckedDiv,
{
    let n = a.len();
    let mut prev = T::one();
    for k in 0..n {
        // after k steps a[k][k] is the (k+1)-th leading principal minor
        if a[k][k] <= T::zero() {
            return Ok(false);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(&a[k][k])
                    .zip(a[i][k].checked_mul(&a[k][j]))
                    .and_then(|(x, y)| x.checked_sub(&y))
                    .ok_or(Overflow)?;
                a[i][j] = num.checked_div(&prev).ok_or(Overflow)?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(true)
}

/// True iff the symmetric matrix `m` is negative definite.
///
/// Decided by the signs of the leading principal minors of `-m`; machine
/// integers are tried first and big integers take over on overflow.
pub fn is_negative_definite_matrix(m: &[Vec<i64>]) -> bool {
    let neg_small: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| -(x as i128)).collect())
        .collect();
    if let Ok(answer) = leading_minors_positive(neg_small) {
        return answer;
    }
    let neg_big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| -BigInt::from(x)).collect())
        .collect();
    leading_minors_positive(neg_big)
        .unwrap_or_else(|_| unreachable!("big integers do not overflow"))
}

/// Exact determinant of a square matrix (Bareiss with row pivoting).
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

pub fn determinant_i64(m: &[Vec<i64>]) -> BigInt {
    determinant(&super::snf::to_big(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_negative_definite_matrix(&[vec![-2]]));
        assert!(is_negative_definite_matrix(&[vec![-2, 1], vec![1, -2]]));
        let triangle = vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]];
        assert!(!is_negative_definite_matrix(&triangle));
        assert_eq!(determinant_i64(&triangle), BigInt::zero());
        assert!(!is_negative_definite_matrix(&[vec![0]]));
        assert!(!is_negative_definite_matrix(&[vec![2]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(
            determinant_i64(&[vec![-2, 1], vec![1, -2]]),
            BigInt::from(3)
        );
        assert_eq!(determinant_i64(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant_i64(&[]), BigInt::one());
    }

    #[test]
    fn big_integer_fallback() {
        // entries near i64::MAX overflow the i128 fast path in the second step
        let big = i64::MAX / 2;
        let m = vec![vec![-big, 1, 0], vec![1, -big, 1], vec![0, 1, -big]];
        assert!(is_negative_definite_matrix(&m));
        let indefinite = vec![vec![-big, big], vec![big, -big + 1]];
        assert!(!is_negative_definite_matrix(&indefinite));
    }
}
