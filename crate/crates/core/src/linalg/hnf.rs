//! Row-style Hermite normal form with a unimodular transform, and the
//! integer linear algebra built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `transform · input = echelon`, with `transform` unimodular and
/// `echelon` in Hermite normal form: positive pivots, entries above each
/// pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct RowHermite {
    pub echelon: Vec<Vec<BigInt>>,
    pub transform: Vec<Vec<BigInt>>,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl RowHermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn row_hermite(rows: &[Vec<BigInt>], cols: usize) -> RowHermite {
    let m = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        u.swap(r, p);
        for i in r + 1..m {
            if a[i][c].is_zero() {
                continue;
            }
            let ext = a[r][c].extended_gcd(&a[i][c]);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let ar = &a[r][c] / &g;
            let ai = &a[i][c] / &g;
            combine(&mut a, r, i, &x, &y, &ar, &ai);
            combine(&mut u, r, i, &x, &y, &ar, &ai);
        }
        if a[r][c].is_negative() {
            negate(&mut a[r]);
            negate(&mut u[r]);
        }
        for i in 0..r {
            if a[i][c].is_zero() {
                continue;
            }
            let q = a[i][c].div_floor(&a[r][c]);
            sub_multiple(&mut a, i, r, &q);
            sub_multiple(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    RowHermite {
        echelon: a,
        transform: u,
        pivots,
    }
}

/// `(row_r, row_i) ← (x·row_r + y·row_i, ar·row_i − ai·row_r)`.
fn combine(
    a: &mut [Vec<BigInt>],
    r: usize,
    i: usize,
    x: &BigInt,
    y: &BigInt,
    ar: &BigInt,
    ai: &BigInt,
) {
    let (head, tail) = a.split_at_mut(i);
    let row_r = &mut head[r];
    let row_i = &mut tail[0];
    for (vr, vi) in row_r.iter_mut().zip(row_i.iter_mut()) {
        if vr.is_zero() && vi.is_zero() {
            continue;
        }
        let new_r = x * &*vr + y * &*vi;
        let new_i = ar * &*vi - ai * &*vr;
        *vr = new_r;
        *vi = new_i;
    }
}

fn sub_multiple(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (head, tail) = a.split_at_mut(source);
        (&mut head[target], &tail[0])
    } else {
        let (head, tail) = a.split_at_mut(target);
        (&mut tail[0], &head[source])
    };
    for (vt, vs) in t.iter_mut().zip(s) {
        if !vs.is_zero() {
            *vt -= q * vs;
        }
    }
}

fn negate(row: &mut [BigInt]) {
    for v in row.iter_mut() {
        *v = -&*v;
    }
}

/// Integer solution `x` of `a x = b` (`a` is `m × n`), or `None`.
pub fn solve_integer(a: &[Vec<BigInt>], n: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let solver = IntegerSolver::new(a, n);
    solver.solve(b)
}

/// Reusable factorisation for solving `a x = b` with several right-hand
/// sides.
pub struct IntegerSolver {
    hermite: RowHermite,
    rows: usize,
    unknowns: usize,
}

impl IntegerSolver {
    pub fn new(a: &[Vec<BigInt>], n: usize) -> Self {
        let m = a.len();
        let at: Vec<Vec<BigInt>> = (0..n).map(|j| (0..m).map(|i| a[i][j].clone()).collect()).collect();
        IntegerSolver {
            hermite: row_hermite(&at, m),
            rows: m,
            unknowns: n,
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let h = &self.hermite;
        let mut residual = b.to_vec();
        let mut x = vec![BigInt::zero(); self.unknowns];
        for (i, &c) in h.pivots.iter().enumerate() {
            if residual[c].is_zero() {
                continue;
            }
            let (q, rem) = residual[c].div_rem(&h.echelon[i][c]);
            if !rem.is_zero() {
                return None;
            }
            for (rv, ev) in residual.iter_mut().zip(&h.echelon[i]) {
                if !ev.is_zero() {
                    *rv -= &q * ev;
                }
            }
            for (xv, uv) in x.iter_mut().zip(&h.transform[i]) {
                if !uv.is_zero() {
                    *xv += &q * uv;
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(x)
    }
}

/// A basis of the lattice `{x ∈ Zⁿ : a x = 0}`, itself put in Hermite
/// normal form so the output is canonical.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let at: Vec<Vec<BigInt>> = (0..n).map(|j| (0..m).map(|i| a[i][j].clone()).collect()).collect();
    let h = row_hermite(&at, m);
    let basis: Vec<Vec<BigInt>> = h.transform[h.rank()..].to_vec();
    let reduced = row_hermite(&basis, n);
    reduced.echelon[..reduced.rank()].to_vec()
}
