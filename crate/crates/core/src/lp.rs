// Exact feasibility for `A x = b, x >= 0` by phase-1 simplex over the
// rationals, with Bland's rule so degenerate pivots cannot cycle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// A nonnegative solution of `a x = b`, if one exists.
pub fn feasible_point(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let width = cols + rows;

    // Tableau rows [A | I | b] with b made nonnegative; artificials start basic.
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let flip = if b[i] < 0 { -1 } else { 1 };
        let mut row: Vec<BigRational> = a[i].iter().map(|&x| rat(flip * x)).collect();
        row.extend((0..rows).map(|j| rat(i64::from(i == j))));
        row.push(rat(flip * b[i]));
        t.push(row);
    }
    let mut basis: Vec<usize> = (cols..width).collect();

    // Reduced costs of "minimise the sum of artificials".
    let mut cost = vec![BigRational::zero(); width + 1];
    for row in &t {
        for j in 0..cols {
            cost[j] -= &row[j];
        }
        cost[width] -= &row[width];
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // The phase-1 objective is bounded below by zero.
        let (r, _) = leave.expect("bounded phase-1 problem");
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }

    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &v) in basis.iter().enumerate() {
        if v < cols {
            x[v] = t[i][width].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], r: usize, c: usize) {
    let p = t[r][c].clone();
    for x in t[r].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
    }
}

/// Whether `p` is a convex combination of `points`.
pub fn in_convex_hull(p: &[i64], points: &[Vec<i64>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = p.len();
    let mut a: Vec<Vec<i64>> = (0..n)
        .map(|k| points.iter().map(|q| q[k]).collect())
        .collect();
    a.push(vec![1; points.len()]);
    let mut b = p.to_vec();
    b.push(1);
    feasible_point(&a, &b).is_some()
}

/// Rank of an integer matrix over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot_row[c];
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}
