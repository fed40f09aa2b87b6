//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// The nonzero invariant factors `d_1 | d_2 | …` of an integer matrix.
///
/// Elementary row and column operations, pivoting on the entry of least
/// absolute value in the remaining block (ties broken by row-major
/// position).
pub fn invariant_factors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                sub_row(&mut tail[0], &head[t], &q, t);
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = smallest_entry_cross(&a, t);
                a.swap(t, pi);
                if pj != t {
                    for row in a.iter_mut() {
                        row.swap(t, pj);
                    }
                }
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !a[i][j].is_zero() && !(&a[i][j] % &a[t][t]).is_zero())
            });
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    let row_i = &tail[0];
                    for (x, y) in head[t].iter_mut().zip(row_i) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn sub_row(target: &mut [BigInt], pivot: &[BigInt], q: &BigInt, from: usize) {
    for (x, p) in target.iter_mut().zip(pivot).skip(from) {
        if !p.is_zero() {
            *x -= q * p;
        }
    }
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Least nonzero entry in row `t` or column `t` (the pivot itself counts).
fn smallest_entry_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs = a[t][t].abs();
    for (i, row) in a.iter().enumerate().skip(t) {
        let v = &row[t];
        if !v.is_zero() && (best_abs.is_zero() || v.abs() < best_abs) {
            best = (i, t);
            best_abs = v.abs();
        }
    }
    for (j, v) in a[t].iter().enumerate().skip(t) {
        if !v.is_zero() && (best_abs.is_zero() || v.abs() < best_abs) {
            best = (t, j);
            best_abs = v.abs();
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn f(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn known_forms() {
        assert_eq!(invariant_factors(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), f(&[2, 6, 12]));
        assert_eq!(invariant_factors(&m(&[&[2, 0], &[0, 3]])), f(&[1, 6]));
        assert_eq!(invariant_factors(&m(&[&[0, 0], &[0, 0]])), f(&[]));
        assert_eq!(invariant_factors(&m(&[])), f(&[]));
        // boundary of the triangle: rank 2, all factors 1
        assert_eq!(
            invariant_factors(&m(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]])),
            f(&[1, 1])
        );
    }
}
