//! Exact linear systems over Q by fraction-free elimination.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rat::{lcm_denoms, Rat};

/// Some solution of `rows * v = rhs`, free variables set to zero, or `None`
/// when the system is inconsistent.
///
/// Each row is scaled to integers, the augmented matrix is brought to echelon
/// form by Bareiss elimination (pivot: first nonzero entry in row-major
/// order), and the solution is read off by back substitution.
pub fn solve(rows: &[Vec<Rat>], rhs: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let l = Rat::from_integer(lcm_denoms(row.iter().chain(std::iter::once(b))));
            row.iter()
                .chain(std::iter::once(b))
                .map(|c| (c * &l).to_integer())
                .collect()
        })
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..=ncols {
                let v = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut v = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate().rev() {
        let mut s = Rat::from_integer(m[i][ncols].clone());
        for j in c + 1..ncols {
            if !m[i][j].is_zero() {
                s -= Rat::from_integer(m[i][j].clone()) * &v[j];
            }
        }
        v[c] = s / Rat::from_integer(m[i][c].clone());
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn r(cs: &[i64]) -> Vec<Rat> {
        cs.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn unique_solution() {
        let rows = vec![r(&[2, 1]), r(&[1, 3])];
        let v = solve(&rows, &r(&[3, 5]), 2).unwrap();
        assert_eq!(v, vec![frac(4, 5), frac(7, 5)]);
    }

    #[test]
    fn free_variables_are_zero() {
        let rows = vec![r(&[0, 1, 1]), r(&[0, 2, 2])];
        let v = solve(&rows, &r(&[4, 8]), 3).unwrap();
        assert_eq!(v, r(&[0, 4, 0]));
    }

    #[test]
    fn inconsistent() {
        let rows = vec![r(&[1, 1]), r(&[2, 2])];
        assert_eq!(solve(&rows, &r(&[1, 3]), 2), None);
    }

    #[test]
    fn rational_rows() {
        let rows = vec![vec![frac(1, 2), frac(1, 3)], vec![int(1), int(-1)]];
        let v = solve(&rows, &[int(1), int(0)], 2).unwrap();
        assert_eq!(v, vec![frac(6, 5), frac(6, 5)]);
    }
}
