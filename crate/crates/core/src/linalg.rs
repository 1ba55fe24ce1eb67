//! Small dense complex matrices: products, a Hermitian eigensolver (Jacobi
//! on the real symmetric embedding) and rank by Gaussian elimination.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Row-major `rows × cols` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.at(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).conj());
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: C) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> C {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data.iter().zip(&o.data).all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn from_columns(cols: &[Vec<C>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
}

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi
/// rotations. Returns eigenvalues ascending with eigenvectors as columns of
/// a row-major `n × n` array.
pub fn jacobi_symmetric(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm: f64 = libm::sqrt(a.iter().map(|x| x * x).sum::<f64>()).max(1e-300);
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i * n + j] * a[i * n + j]).sum();
        if libm::sqrt(off) <= 1e-15 * norm {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / libm::sqrt(t * t + 1.0);
                let sn = t * cs;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = cs * akp - sn * akq;
                    a[k * n + q] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = cs * apk - sn * aqk;
                    a[q * n + k] = sn * apk + cs * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = cs * vkp - sn * vkq;
                    v[k * n + q] = sn * vkp + cs * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap_or(core::cmp::Ordering::Equal));
    let vals = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vecs = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vecs[k * n + new] = v[k * n + old];
        }
    }
    (vals, vecs)
}

fn inner(u: &[C], v: &[C]) -> C {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn normalize(u: &mut [C]) -> f64 {
    let n = libm::sqrt(inner(u, u).re);
    if n > 0.0 {
        for x in u.iter_mut() {
            *x /= n;
        }
    }
    n
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
/// matrix, grouped into clusters of equal eigenvalue (within `tol`).
pub fn hermitian_eigen(h: &CMatrix, tol: f64) -> Vec<(f64, Vec<Vec<C>>)> {
    let n = h.rows;
    let m = 2 * n;
    // [[Re, -Im], [Im, Re]]
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h.at(i, j);
            a[i * m + j] = z.re;
            a[i * m + j + n] = -z.im;
            a[(i + n) * m + j] = z.im;
            a[(i + n) * m + j + n] = z.re;
        }
    }
    let (vals, vecs) = jacobi_symmetric(a, m);
    let mut out: Vec<(f64, Vec<Vec<C>>)> = Vec::new();
    let mut k = 0;
    while k < m {
        let mut end = k + 1;
        while end < m && vals[end] - vals[k] <= tol {
            end += 1;
        }
        // every eigenvalue appears twice in the embedding; u + iv recovers
        // the complex vectors, then Gram–Schmidt removes the duplicates
        let mut basis: Vec<Vec<C>> = Vec::new();
        for col in k..end {
            let mut u: Vec<C> = (0..n).map(|i| C::new(vecs[i * m + col], vecs[(i + n) * m + col])).collect();
            for b in &basis {
                let p = inner(b, &u);
                for (x, y) in u.iter_mut().zip(b) {
                    *x -= p * y;
                }
            }
            if normalize(&mut u) > 1e-6 {
                basis.push(u);
            }
        }
        let mean = vals[k..end].iter().sum::<f64>() / (end - k) as f64;
        out.push((mean, basis));
        k = end;
    }
    out
}

/// Rank of a complex matrix by Gaussian elimination with partial pivoting.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let (piv, best) = (r..rows).map(|i| (i, a.at(i, col).norm())).fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= tol {
            continue;
        }
        for j in 0..cols {
            a.data.swap(r * cols + j, piv * cols + j);
        }
        let p = a.at(r, col);
        for i in r + 1..rows {
            let f = a.at(i, col) / p;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..cols {
                let v = a.at(r, j);
                a.data[i * cols + j] -= f * v;
            }
        }
        r += 1;
    }
    r
}
