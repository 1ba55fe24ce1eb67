//! Smith normal form of small integer matrices, with the row transform and
//! its inverse tracked explicitly.

#[cfg(test)]
use alloc::vec;
use alloc::vec::Vec;

/// `row_ops · A · col_ops = diag(d)` with unimodular transforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub diagonal: Vec<i64>,
    pub row_ops: Vec<Vec<i64>>,
    /// Inverse of `row_ops`; its columns form a basis of `Z^m` adapted to
    /// the column lattice of `A`.
    pub row_ops_inv: Vec<Vec<i64>>,
    pub col_ops: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

struct Work {
    a: Vec<Vec<i64>>,
    p: Vec<Vec<i64>>,
    p_inv: Vec<Vec<i64>>,
    q: Vec<Vec<i64>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.p.swap(i, j);
        for row in &mut self.p_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += c · row_j
    fn add_row(&mut self, i: usize, j: usize, c: i64) {
        for k in 0..self.a[0].len() {
            self.a[i][k] += c * self.a[j][k];
        }
        for k in 0..self.p[0].len() {
            self.p[i][k] += c * self.p[j][k];
        }
        // inverse: col_j -= c · col_i
        for row in &mut self.p_inv {
            row[j] -= c * row[i];
        }
    }

    /// col_i += c · col_j
    fn add_col(&mut self, i: usize, j: usize, c: i64) {
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row[i] += c * row[j];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.a[i].iter_mut().chain(self.p[i].iter_mut()) {
            *v = -*v;
        }
        for row in &mut self.p_inv {
            row[i] = -row[i];
        }
    }
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Smith {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut w = Work { a: a.to_vec(), p: identity(m), p_inv: identity(m), q: identity(n) };
    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| w.a[i][j] != 0)
                .min_by_key(|&(i, j)| (w.a[i][j].abs(), i, j));
            let Some((pi, pj)) = pivot else { break };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let c = w.a[i][t] / w.a[t][t];
                if c != 0 {
                    w.add_row(i, t, -c);
                }
                clean &= w.a[i][t] == 0;
            }
            for j in t + 1..n {
                let c = w.a[t][j] / w.a[t][t];
                if c != 0 {
                    w.add_col(j, t, -c);
                }
                clean &= w.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let p = w.a[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }
    let diagonal = (0..m.min(n)).map(|i| w.a[i][i]).collect();
    Smith { diagonal, row_ops: w.p, row_ops_inv: w.p_inv, col_ops: w.q }
}

#[cfg(test)]
pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (m, k, n) = (a.len(), b.len(), if b.is_empty() { 0 } else { b[0].len() });
    let mut c = vec![vec![0; n]; m];
    for i in 0..m {
        for l in 0..k {
            if a[i][l] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][l] * b[l][j];
                }
            }
        }
    }
    c
}
