// Smith normal form over Z with arbitrary-precision entries.
//
// `smith(a)` returns `U`, `U⁻¹`, `W` and the diagonal `D` with `U·A·W = D`,
// every transform unimodular and d₀ | d₁ | … on the diagonal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// The reduced matrix `U·A·W`; only its diagonal is nonzero.
    pub d: Matrix,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub w: Matrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    w: Matrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.w.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += c·row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, s) in m[i].iter_mut().zip(src) {
                *x += c * s;
            }
        }
        for row in &mut self.u_inv {
            let t = c * &row[i];
            row[j] -= t;
        }
    }

    /// col_i += c·col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in self.a.iter_mut().chain(self.w.iter_mut()) {
            let t = c * &row[j];
            row[i] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in &mut self.u_inv {
            row[i] = -&row[i];
        }
    }
}

pub fn smith(a: &Matrix) -> SmithForm {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut st = Work {
        a: a.clone(),
        u: identity(m),
        u_inv: identity(m),
        w: identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !st.a[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| st.a[i][j].abs() < st.a[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);

            let p = st.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if !st.a[i][t].is_zero() {
                    let q = st.a[i][t].div_floor(&p);
                    st.add_row(i, t, &-q);
                    clean &= st.a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !st.a[t][j].is_zero() {
                    let q = st.a[t][j].div_floor(&p);
                    st.add_col(j, t, &-q);
                    clean &= st.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !st.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => {
                    if p.is_negative() {
                        st.negate_row(t);
                    }
                    rank = t + 1;
                    break;
                }
            }
        }
        if rank <= t {
            break;
        }
    }
    SmithForm {
        d: st.a,
        u: st.u,
        u_inv: st.u_inv,
        w: st.w,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix) -> SmithForm {
        let s = smith(a);
        assert_eq!(mul(&mul(&s.u, a), &s.w), s.d);
        assert_eq!(mul(&s.u, &s.u_inv), identity(a.len()));
        for i in 0..s.d.len() {
            for j in 0..s.d[i].len() {
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
        let divs = s.divisors();
        for w in divs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(divs.iter().all(|d| d.is_positive()));
        s
    }

    #[test]
    fn small_examples() {
        let s = check(&from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.divisors(), from_i64(&[vec![2, 6, 12]])[0]);
        let s = check(&from_i64(&[vec![0, 0], vec![0, 0]]));
        assert_eq!(s.rank, 0);
        let s = check(&from_i64(&[vec![1, 1, 0, 0, -1, -1]]));
        assert_eq!(s.rank, 1);
        let s = check(&from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.divisors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(1..6);
            let n = rng.gen_range(1..6);
            let a: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect())
                .collect();
            check(&from_i64(&a));
        }
    }
}
