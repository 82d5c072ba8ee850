//! Fraction-free nullspace computation over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

fn make_primitive(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// A nonzero primitive integer vector `v` with `matrix · v = 0`, or `None`
/// if the kernel is trivial.
///
/// Gauss–Jordan elimination with cross-multiplication (no division other than
/// exact content removal). The returned vector is the one attached to the
/// first non-pivot column, normalised so its last nonzero entry is positive;
/// identical inputs always give identical outputs.
pub fn nullspace_vector(matrix: &[Vec<BigInt>], cols: usize) -> Option<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .cloned()
        .collect();
    for r in rows.iter_mut() {
        debug_assert_eq!(r.len(), cols);
        make_primitive(r);
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        // Smallest nonzero entry keeps intermediate growth down; ties go to
        // the earliest row.
        let Some(best) = (next..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].bits())
        else {
            continue;
        };
        rows.swap(next, best);
        let pivot_row = rows[next].clone();
        let piv = &pivot_row[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = &*v * piv - &factor * p;
            }
            make_primitive(row);
        }
        pivots.push((next, col));
        next += 1;
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let lcm = pivots
        .iter()
        .fold(BigInt::one(), |acc, &(r, c)| acc.lcm(&rows[r][c].abs()));
    let mut v = vec![BigInt::zero(); cols];
    v[free] = lcm.clone();
    for &(r, c) in &pivots {
        v[c] = -(&rows[r][free] * (&lcm / &rows[r][c]));
    }
    make_primitive(&mut v);
    if v.iter()
        .rev()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn apply(matrix: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
        matrix
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(nullspace_vector(&a, 2), None);
    }

    #[test]
    fn rank_deficient_kernel_is_primitive() {
        let a = m(&[&[2, 4, 6], &[1, 2, 3]]);
        let v = nullspace_vector(&a, 3).unwrap();
        assert!(apply(&a, &v).iter().all(|x| x.is_zero()));
        assert_eq!(content(&v), BigInt::one());
    }

    #[test]
    fn wide_system() {
        let a = m(&[&[1, 1, 0, -1], &[0, 3, 1, 2], &[5, 0, 0, 1]]);
        let v = nullspace_vector(&a, 4).unwrap();
        assert!(v.iter().any(|x| !x.is_zero()));
        assert!(apply(&a, &v).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn zero_matrix() {
        let v = nullspace_vector(&m(&[&[0, 0]]), 2).unwrap();
        assert_eq!(v, vec![BigInt::one(), BigInt::zero()]);
    }
}
