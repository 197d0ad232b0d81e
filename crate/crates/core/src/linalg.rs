//! Exact dense linear algebra: row reduction over a field and Smith normal
//! form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(rows: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for k in 0..ncols {
                    if rows[r][k].is_zero() {
                        continue;
                    }
                    let d = &factor * &rows[r][k];
                    rows[i][k] = &rows[i][k] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize, zero: &Scalar) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let one = zero.one_like();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![zero.clone(); ncols];
            x[f] = one.clone();
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = -&row[f];
            }
            x
        })
        .collect()
}

/// One solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve(rows: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let zero = b.first().map(|s| s.zero_like()).or_else(|| {
        rows.first().and_then(|r| r.first()).map(|s| s.zero_like())
    })?;
    let mut aug: Matrix = rows
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![zero; ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Result of an integer Smith normal form computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Nonzero diagonal entries, positive and each dividing the next.
    pub invariants: Vec<BigInt>,
}

fn min_abs_position(m: &[Vec<BigInt>], from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(from) {
        for (j, v) in row.iter().enumerate().skip(from) {
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[bi][bj].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Integer row echelon form via gcd elimination; drops zero rows.
fn integer_echelon(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..ncols {
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| rows[i][c].abs() < rows[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (top, rest) = rows.split_at_mut(i);
                for (x, y) in rest[0].iter_mut().zip(&top[r]) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Smith normal form invariants of an integer matrix.
pub fn smith_form(rows: Vec<Vec<BigInt>>, ncols: usize) -> SmithForm {
    let mut m = integer_echelon(rows, ncols);
    let nrows = m.len();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let Some((pi, pj)) = min_abs_position(&m, t) else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            let (top, rest) = m.split_at_mut(i);
            for (x, y) in rest[0].iter_mut().zip(&top[t]) {
                if !y.is_zero() {
                    *x -= &q * y;
                }
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..ncols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for row in m.iter_mut() {
                if !row[t].is_zero() {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        let pivot = m[t][t].clone();
        let offending = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !(&m[i][j] % &pivot).is_zero()));
        if let Some(i) = offending {
            let (top, rest) = m.split_at_mut(i);
            for (x, y) in top[t].iter_mut().zip(&rest[0]) {
                *x += y;
            }
            continue;
        }
        t += 1;
    }
    let invariants: Vec<BigInt> = (0..t).map(|i| m[i][i].abs()).collect();
    SmithForm { rank: invariants.len(), invariants }
}

pub fn is_unit_invariants(form: &SmithForm) -> bool {
    form.invariants.iter().all(|d| d.is_one())
}
