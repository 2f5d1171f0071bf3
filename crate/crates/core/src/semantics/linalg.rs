//! Exact Gaussian elimination over the rationals.

use num_traits::{Signed, Zero};

use crate::prob::Rational;

/// Solves `a x = b` for a square, nonsingular `a`. Returns `None` when the
/// matrix is singular.
///
/// Pivots are chosen by largest absolute value; with exact arithmetic this
/// only keeps intermediate numbers small, it does not affect the result.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&r1, &r2| a[r1][col].abs().cmp(&a[r2][col].abs()).then(r2.cmp(&r1)))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{int, rat};

    #[test]
    fn two_by_two() {
        // x + 2y = 5, 3x - y = 1
        let a = vec![vec![int(1), int(2)], vec![int(3), int(-1)]];
        let x = solve(a, vec![int(5), int(1)]).unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
    }

    #[test]
    fn needs_row_swap() {
        let a = vec![vec![int(0), int(1)], vec![rat(1, 2), int(0)]];
        let x = solve(a, vec![int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
    }

    #[test]
    fn singular() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(a, vec![int(1), int(2)]).is_none());
    }
}
