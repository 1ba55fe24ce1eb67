//! Character tables of subgroups and explicit irreducible representations.
//!
//! Abelian subgroups get exact tables from their elementary decomposition.
//! Non-abelian ones use the class-sum method: a random Hermitian
//! combination of the (normalized) class multiplication matrices is
//! diagonalized and its eigenvectors are the central characters.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::elementary_decomposition;
use crate::error::{Error, Result};
use crate::group::{bit, bits, FiniteGroup, Subgroup};
use crate::linalg::{c, hermitian_eigen, CMatrix, C};

const SEED: u64 = 0x5eed_c4a7;
const RETRIES: u64 = 32;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub subgroup: Subgroup,
    /// Conjugacy classes as parent masks, ordered by smallest element.
    pub classes: Vec<u64>,
    pub class_sizes: Vec<usize>,
    /// One row per irreducible, one column per class.
    pub chars: Vec<Vec<C>>,
    pub degrees: Vec<usize>,
    /// For abelian subgroups: `χ_α(h) = ζ_N^{exact[α][local index of h]}`
    /// with `N = root_order`.
    pub exact: Option<(usize, Vec<Vec<usize>>)>,
    class_of: Vec<usize>,
    elements: Vec<usize>,
}

fn snap(x: f64) -> f64 {
    let r = libm::round(x);
    if (x - r).abs() < 1e-12 {
        r
    } else if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

fn root(k: usize, n: usize) -> C {
    let t = 2.0 * PI * k as f64 / n as f64;
    c(snap(libm::cos(t)), snap(libm::sin(t)))
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Elements of the subgroup, ascending parent indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// `χ_α(x)` for `x` an element of the subgroup (parent index).
    pub fn value(&self, alpha: usize, x: usize) -> C {
        self.chars[alpha][self.class_of[x]]
    }

    pub fn trivial(&self) -> usize {
        0
    }

    /// `(1/|H|) Σ_h χ_a(h) conj(χ_b(h))`
    pub fn inner(&self, a: &[C], b: &[C]) -> C {
        let s: C = (0..self.classes.len()).map(|k| a[k] * b[k].conj() * self.class_sizes[k] as f64).sum();
        s / self.order() as f64
    }

    /// Row index of a class function, if it equals one of the rows.
    pub fn find_row(&self, values: &[C], tol: f64) -> Option<usize> {
        self.chars.iter().position(|row| row.iter().zip(values).all(|(a, b)| (a - b).norm() <= tol))
    }
}

/// Conjugacy classes of `h` inside `g`, each as a mask, ordered by least
/// element.
pub fn conjugacy_classes(g: &FiniteGroup, h: &Subgroup) -> Vec<u64> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for x in bits(h.mask()) {
        if seen & bit(x) != 0 {
            continue;
        }
        let cls = bits(h.mask()).fold(0u64, |m, y| m | bit(g.conj(y, x)));
        seen |= cls;
        out.push(cls);
    }
    out
}

pub fn character_table(g: &FiniteGroup, h: &Subgroup) -> Result<CharacterTable> {
    let elements = h.elements();
    let classes = conjugacy_classes(g, h);
    let mut class_of = vec![usize::MAX; g.order()];
    for (k, &cl) in classes.iter().enumerate() {
        for x in bits(cl) {
            class_of[x] = k;
        }
    }
    let class_sizes: Vec<usize> = classes.iter().map(|m| m.count_ones() as usize).collect();
    let mut t = CharacterTable { subgroup: *h, classes, class_sizes, chars: Vec::new(), degrees: Vec::new(), exact: None, class_of, elements };
    if t.classes.len() == t.elements.len() {
        abelian_rows(g, &mut t)?;
    } else {
        class_sum_rows(g, &mut t)?;
    }
    validate(&t)?;
    Ok(t)
}

fn abelian_rows(g: &FiniteGroup, t: &mut CharacterTable) -> Result<()> {
    let (hg, emb) = t.subgroup.as_group(g);
    let d = elementary_decomposition(&hg)?;
    let orders = d.orders();
    let n = hg.exponent();
    let mut rows = Vec::new();
    // exponent vectors k in lexicographic order, trivial first
    let mut k = vec![0usize; orders.len()];
    loop {
        let exps: Vec<usize> = (0..emb.len())
            .map(|x| {
                let tcoord = d.coordinates(x);
                orders.iter().enumerate().map(|(i, &q)| k[i] * tcoord[i] * (n / q)).sum::<usize>() % n
            })
            .collect();
        rows.push(exps);
        let mut i = orders.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            k[i] += 1;
            if k[i] < orders[i] {
                break;
            }
            k[i] = 0;
        }
        if k.iter().all(|&v| v == 0) {
            break;
        }
    }
    // classes are singletons in ascending parent order = local order
    t.chars = rows.iter().map(|r| r.iter().map(|&e| root(e, n)).collect()).collect();
    t.degrees = vec![1; rows.len()];
    t.exact = Some((n, rows));
    Ok(())
}

fn class_sum_rows(g: &FiniteGroup, t: &mut CharacterTable) -> Result<()> {
    let r = t.classes.len();
    let order = t.order() as f64;
    let reps: Vec<usize> = t.classes.iter().map(|m| m.trailing_zeros() as usize).collect();
    // a[j][i][k] = #{(x, y) ∈ K_i × K_j : xy = z_k}
    let mut mats: Vec<CMatrix> = Vec::new();
    let sq: Vec<f64> = t.class_sizes.iter().map(|&s| libm::sqrt(s as f64)).collect();
    for j in 0..r {
        let mut m = CMatrix::zeros(r, r);
        for i in 0..r {
            for k in 0..r {
                let z = reps[k];
                let cnt = bits(t.classes[i]).filter(|&x| t.classes[j] & bit(g.mul(g.inv(x), z)) != 0).count();
                // D⁻¹ A_j D with D = diag(sqrt|K|)
                m.set(i, k, c(cnt as f64 * sq[k] / sq[i], 0.0));
            }
        }
        mats.push(m);
    }
    let i_unit = c(0.0, 1.0);
    for attempt in 0..RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + attempt);
        let mut herm = CMatrix::zeros(r, r);
        for m in &mats {
            let a: f64 = rng.gen::<f64>() - 0.5;
            let b: f64 = rng.gen::<f64>() - 0.5;
            let adj = m.adjoint();
            herm = herm.add(&m.add(&adj).scale(c(a, 0.0))).add(&m.sub(&adj).scale(i_unit * b));
        }
        let eig = hermitian_eigen(&herm, 1e-7);
        if eig.len() != r || eig.iter().any(|(_, v)| v.len() != 1) {
            continue;
        }
        let mut rows: Vec<(usize, Vec<C>)> = Vec::new();
        let mut ok = true;
        for (_, vs) in &eig {
            // w = D v are the central characters up to scale
            let w: Vec<C> = vs[0].iter().zip(&sq).map(|(x, s)| x * *s).collect();
            if w[0].norm() < 1e-9 {
                ok = false;
                break;
            }
            let ratio: Vec<C> = (0..r).map(|i| w[i] / w[0] / t.class_sizes[i] as f64).collect();
            let norm: f64 = (0..r).map(|i| t.class_sizes[i] as f64 * ratio[i].norm_sqr()).sum();
            let deg = libm::sqrt(order / norm);
            let d = libm::round(deg);
            if (deg - d).abs() > 1e-6 || d < 1.0 {
                ok = false;
                break;
            }
            let row = ratio.iter().map(|z| c(snap(z.re * d), snap(z.im * d))).collect();
            rows.push((d as usize, row));
        }
        if !ok {
            continue;
        }
        rows.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                for (x, y) in a.1.iter().zip(&b.1) {
                    let kx = (libm::round(x.re * 1e9) as i64, libm::round(x.im * 1e9) as i64);
                    let ky = (libm::round(y.re * 1e9) as i64, libm::round(y.im * 1e9) as i64);
                    if kx != ky {
                        return ky.cmp(&kx);
                    }
                }
                core::cmp::Ordering::Equal
            })
        });
        t.degrees = rows.iter().map(|r| r.0).collect();
        t.chars = rows.into_iter().map(|r| r.1).collect();
        return Ok(());
    }
    Err(Error::CharacterTable(format!("eigenvalues did not separate after {RETRIES} attempts")))
}

fn validate(t: &CharacterTable) -> Result<()> {
    let r = t.classes.len();
    if t.chars.len() != r {
        return Err(Error::CharacterTable(format!("{} rows for {} classes", t.chars.len(), r)));
    }
    let sum: usize = t.degrees.iter().map(|d| d * d).sum();
    if sum != t.order() {
        return Err(Error::CharacterTable(format!("sum of squared degrees {sum} ≠ {}", t.order())));
    }
    for i in 0..r {
        for j in 0..r {
            let ip = t.inner(&t.chars[i], &t.chars[j]);
            let want = if i == j { 1.0 } else { 0.0 };
            if (ip - c(want, 0.0)).norm() > 1e-9 {
                return Err(Error::CharacterTable(format!("rows {i},{j} not orthonormal")));
            }
        }
    }
    Ok(())
}

/// `n_γ^{αβ}` for every `γ` with nonzero multiplicity.
pub fn tensor_multiplicities(t: &CharacterTable, alpha: usize, beta: usize) -> Result<Vec<(usize, usize)>> {
    let limit = t.len();
    for i in [alpha, beta] {
        if i >= limit {
            return Err(Error::IndexOutOfRange { index: i, limit });
        }
    }
    let prod: Vec<C> = t.chars[alpha].iter().zip(&t.chars[beta]).map(|(a, b)| a * b).collect();
    let mut out = Vec::new();
    let mut dim = 0;
    for gamma in 0..limit {
        let m = t.inner(&prod, &t.chars[gamma]);
        let k = libm::round(m.re);
        if (m - c(k, 0.0)).norm() > 1e-6 || k < 0.0 {
            return Err(Error::NonIntegralMultiplicity(m.re));
        }
        if k > 0.0 {
            out.push((gamma, k as usize));
            dim += k as usize * t.degrees[gamma];
        }
    }
    if dim != t.degrees[alpha] * t.degrees[beta] {
        return Err(Error::CharacterTable(format!("tensor of rows {alpha},{beta} has dimension {dim}")));
    }
    Ok(out)
}

/// Explicit unitary matrices of the irreducible `alpha`, one per element of
/// the subgroup in the order of [`CharacterTable::elements`].
///
/// Degree-one characters give 1×1 matrices. Otherwise a copy of the
/// irreducible is cut out of its isotypic component in the regular
/// representation by an eigenspace of a random Hermitian element of the
/// commutant (the right regular action).
pub fn irrep(g: &FiniteGroup, t: &CharacterTable, alpha: usize) -> Result<Vec<CMatrix>> {
    let els = t.elements();
    let m = els.len();
    let d = t.degrees[alpha];
    if d == 1 {
        return Ok(els
            .iter()
            .map(|&x| {
                let mut one = CMatrix::zeros(1, 1);
                one.set(0, 0, t.value(alpha, x));
                one
            })
            .collect());
    }
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in els.iter().enumerate() {
        pos[x] = i;
    }
    let left = |x: usize| {
        let mut p = CMatrix::zeros(m, m);
        for (j, &y) in els.iter().enumerate() {
            p.set(pos[g.mul(x, y)], j, c(1.0, 0.0));
        }
        p
    };
    let right = |x: usize| {
        let mut p = CMatrix::zeros(m, m);
        for (j, &y) in els.iter().enumerate() {
            p.set(pos[g.mul(y, g.inv(x))], j, c(1.0, 0.0));
        }
        p
    };
    // e_χ = (d/|H|) Σ conj(χ(h)) h, acting on the left
    let mut proj = CMatrix::zeros(m, m);
    for &x in els {
        proj = proj.add(&left(x).scale(t.value(alpha, x).conj() * (d as f64 / m as f64)));
    }
    for attempt in 0..RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ((attempt + 1) * 0x9e37));
        let mut herm = CMatrix::identity(m).scale(c(2.0 * m as f64, 0.0));
        for &x in els {
            let z = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            let r = right(x);
            herm = herm.add(&r.scale(z)).add(&r.adjoint().scale(z.conj()));
        }
        let cut = proj.mul(&herm).mul(&proj);
        let eig = hermitian_eigen(&cut, 1e-7);
        let Some((_, basis)) = eig.iter().find(|(v, b)| *v > 0.5 && b.len() == d) else { continue };
        let q = CMatrix::from_columns(basis);
        let qa = q.adjoint();
        let mats: Vec<CMatrix> = els.iter().map(|&x| qa.mul(&left(x)).mul(&q)).collect();
        let ok = els.iter().enumerate().all(|(i, &x)| (mats[i].trace() - t.value(alpha, x)).norm() < 1e-8);
        if ok {
            return Ok(mats);
        }
    }
    Err(Error::CharacterTable(String::from("could not split the isotypic component")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quaternion, symmetric};

    fn close(a: C, re: f64, im: f64) -> bool {
        (a - c(re, im)).norm() < 1e-12
    }

    #[test]
    fn z2_table() {
        let g = cyclic(2).unwrap();
        let t = character_table(&g, &Subgroup::whole(&g)).unwrap();
        assert!(close(t.chars[0][0], 1.0, 0.0) && close(t.chars[0][1], 1.0, 0.0));
        assert!(close(t.chars[1][0], 1.0, 0.0) && close(t.chars[1][1], -1.0, 0.0));
    }

    #[test]
    fn c3_table_is_cube_roots() {
        let g = cyclic(3).unwrap();
        let t = character_table(&g, &Subgroup::whole(&g)).unwrap();
        let w = root(1, 3);
        assert!((t.chars[1][1] - w).norm() < 1e-12);
        assert!((t.chars[2][1] - w * w).norm() < 1e-12);
        assert_eq!(t.exact.as_ref().unwrap().1[1], vec![0, 1, 2]);
        assert_eq!(tensor_multiplicities(&t, 1, 2).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn s3_degrees_and_tensor() {
        let g = symmetric(3).unwrap();
        let t = character_table(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        assert!(t.chars[0].iter().all(|z| close(*z, 1.0, 0.0)));
        let m = tensor_multiplicities(&t, 2, 2).unwrap();
        assert_eq!(m, vec![(0, 1), (1, 1), (2, 1)]);
        for a in 0..3 {
            assert_eq!(tensor_multiplicities(&t, 0, a).unwrap(), vec![(a, 1)]);
        }
    }

    #[test]
    fn irreps_are_homomorphisms() {
        for g in [symmetric(3).unwrap(), dihedral(4).unwrap(), quaternion()] {
            let h = Subgroup::whole(&g);
            let t = character_table(&g, &h).unwrap();
            for a in 0..t.len() {
                let rho = irrep(&g, &t, a).unwrap();
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        assert!(rho[x].mul(&rho[y]).approx_eq(&rho[g.mul(x, y)], 1e-9));
                    }
                }
            }
        }
    }
}
