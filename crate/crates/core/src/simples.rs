//! Simple modules `M_(X,α) = M_X ⊗ V^(α)`: labels, the block-valued action
//! matrices and their specializations at irreducibles of `G_X`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::algebra::GroupoidAlgebra;
use crate::blocks::{phi_block, GroupAlgebraMatrix};
use crate::character::{character_table, irrep, CharacterTable};
use crate::error::{Error, Result};
use crate::linalg::{c, rank, CMatrix};
use crate::report::{Check, Report};
use crate::subsets::ESubset;

/// The simple module over orbit rep `x` and irreducible `alpha` of `G_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleLabel {
    pub x: ESubset,
    pub alpha: usize,
    /// `n_X · deg α`
    pub dim: usize,
}

/// Character tables of every isotropy subgroup in `T` and the resulting
/// labels, in block order then character order.
#[derive(Debug, Clone)]
pub struct SimpleCatalog {
    pub tables: Vec<CharacterTable>,
    pub labels: Vec<SimpleLabel>,
}

impl SimpleCatalog {
    pub fn new(a: &GroupoidAlgebra) -> Result<Self> {
        let mut tables = Vec::new();
        let mut labels = Vec::new();
        for o in a.orbits().orbits() {
            let t = character_table(a.group(), &o.isotropy)?;
            for (alpha, d) in t.degrees.iter().enumerate() {
                labels.push(SimpleLabel { x: o.rep, alpha, dim: o.size() * d });
            }
            tables.push(t);
        }
        Ok(Self { tables, labels })
    }

    /// Table of the orbit whose rep is `x`.
    pub fn table(&self, a: &GroupoidAlgebra, x: ESubset) -> &CharacterTable {
        &self.tables[a.orbits().locate(x).0]
    }

    pub fn index_of(&self, l: &SimpleLabel) -> Option<usize> {
        self.labels.iter().position(|m| m == l)
    }

    /// Check that `(x, alpha)` names a simple and fill in its dimension.
    pub fn label(&self, a: &GroupoidAlgebra, x: ESubset, alpha: usize) -> Result<SimpleLabel> {
        if a.orbits().position_of_rep(x).is_none() {
            return Err(Error::NonCanonicalLabel { mask: x.mask(), alpha });
        }
        self.labels.iter().copied().find(|l| l.x == x && l.alpha == alpha).ok_or(Error::NonCanonicalLabel { mask: x.mask(), alpha })
    }

    pub fn sum_dim_sq(&self) -> usize {
        self.labels.iter().map(|l| l.dim * l.dim).sum()
    }
}

pub fn simple_labels(a: &GroupoidAlgebra) -> Result<Vec<SimpleLabel>> {
    Ok(SimpleCatalog::new(a)?.labels)
}

/// `φ_X(λ([g]) Γ_X)`: the action of `[g]` on `M_X ⊗ kG_X`.
pub fn module_matrix(a: &GroupoidAlgebra, x: ESubset, g: usize) -> GroupAlgebraMatrix {
    let e = a.mul(&a.lambda_gen(g), &a.gamma_idem(x));
    phi_block(a, x, &e).expect("λ(g)Γ_X lies in the block of X")
}

/// Replace each entry `Σ c_t t` by `Σ c_t ρ(t)`; `rho` is indexed like
/// [`CharacterTable::elements`].
pub fn specialize(m: &GroupAlgebraMatrix, table: &CharacterTable, rho: &[CMatrix]) -> CMatrix {
    let d = rho[0].rows;
    let n = m.size();
    let els = table.elements();
    let mut out = CMatrix::zeros(n * d, n * d);
    for i in 0..n {
        for j in 0..n {
            for (&t, coef) in m.entry(i, j) {
                let k = els.binary_search(&t).expect("entry lies in the isotropy subgroup");
                let w = coef.to_f64().unwrap_or(f64::NAN);
                for p in 0..d {
                    for q in 0..d {
                        let v = out.at(i * d + p, j * d + q) + rho[k].at(p, q) * w;
                        out.set(i * d + p, j * d + q, v);
                    }
                }
            }
        }
    }
    out
}

/// Dimension of `{T : π(g) T = T π(g) for all g}`.
pub fn commutant_dim(mats: &[CMatrix], tol: f64) -> usize {
    let n = mats[0].rows;
    let mut sys = CMatrix::zeros(mats.len() * n * n, n * n);
    // vec(T) row-major: unknown index p*n + q for T[p][q]
    for (k, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = k * n * n + i * n + j;
                // (M T)_{ij} − (T M)_{ij}
                for l in 0..n {
                    let v = sys.at(row, l * n + j) + m.at(i, l);
                    sys.set(row, l * n + j, v);
                    let v = sys.at(row, i * n + l) - m.at(l, j);
                    sys.set(row, i * n + l, v);
                }
            }
        }
    }
    n * n - rank(&sys, tol)
}

/// Per-`Y ∈ P_e(G)` dimension of `P_Y ▷ M_(X,α)`, in ascending mask order.
pub fn support_dims(a: &GroupoidAlgebra, cat: &SimpleCatalog, l: &SimpleLabel) -> Vec<usize> {
    let deg = cat.table(a, l.x).degrees[l.alpha];
    let (o, _) = a.orbits().locate(l.x);
    a.subsets().iter().map(|&y| if a.orbits().locate(y).0 == o { deg } else { 0 }).collect()
}

pub fn verify_simples(a: &GroupoidAlgebra) -> Result<Report> {
    let cat = SimpleCatalog::new(a)?;
    let g = a.group();
    let n = g.order();
    let mut r = Report::new();

    let mut ck = Check::new("sum_dim_squared");
    let (dim, _) = a.dimension();
    let s = cat.sum_dim_sq();
    ck.record(s == dim, || vec![("sum", format!("{s}")), ("dim", format!("{dim}"))]);
    r.push(ck);

    let mut ck = Check::new("label_count");
    let want: usize = cat.tables.iter().map(|t| t.classes.len()).sum();
    ck.record(cat.labels.len() == want, || vec![("labels", format!("{}", cat.labels.len()))]);
    r.push(ck);

    let mut mult = Check::new("module_matrix_multiplicative");
    let mut pr1 = Check::new("action_pr1");
    let mut pr2 = Check::new("action_pr2");
    let mut pr3 = Check::new("action_pr3");
    let mut iso = Check::new("action_partial_isometry");
    let mut eps = Check::new("eps_action");
    let mut simple = Check::new("commutant_dim_one");
    let lam: Vec<_> = (0..n).map(|x| a.lambda_gen(x)).collect();
    for (oi, o) in a.orbits().orbits().iter().enumerate() {
        let x = o.rep;
        let mats: Vec<GroupAlgebraMatrix> = (0..n).map(|h| module_matrix(a, x, h)).collect();
        let gam = a.gamma_idem(x);
        for p in 0..n {
            for q in 0..n {
                let e = a.product([&lam[p], &lam[q], &gam]);
                let lhs = phi_block(a, x, &e).ok();
                mult.record(lhs.as_ref() == Some(&mats[p].mul(&mats[q], g)), || {
                    vec![("X", format!("{:#x}", x.mask())), ("g", String::from(g.name(p))), ("h", String::from(g.name(q)))]
                });
            }
        }
        let eps_mats: Vec<GroupAlgebraMatrix> =
            (0..n).map(|h| phi_block(a, x, &a.mul(&a.eps_gen(h), &gam)).expect("in block")).collect();
        let table = &cat.tables[oi];
        for alpha in 0..table.len() {
            let rho = irrep(g, table, alpha)?;
            let d = rho[0].rows;
            let pi: Vec<CMatrix> = mats.iter().map(|m| specialize(m, table, &rho)).collect();
            let size = pi[0].rows;
            let why = |s: &str| vec![("X", format!("{:#x}", x.mask())), ("alpha", format!("{alpha}")), ("case", String::from(s))];
            pr1.record(pi[0].approx_eq(&CMatrix::identity(size), 1e-9), || why("e"));
            for p in 0..n {
                let pinv = g.inv(p);
                iso.record(pi[p].mul(&pi[pinv]).mul(&pi[p]).approx_eq(&pi[p], 1e-9), || why(g.name(p)));
                // ε_g acts on P_{g_i X} ⊗ v by [[g ∈ g_i X]]
                let e_mat = specialize(&eps_mats[p], table, &rho);
                let mut want = CMatrix::zeros(size, size);
                for (i, y) in o.members.iter().enumerate() {
                    if y.contains(p) {
                        for k in 0..d {
                            want.set(i * d + k, i * d + k, c(1.0, 0.0));
                        }
                    }
                }
                let via_lambda = pi[p].mul(&pi[pinv]);
                eps.record(e_mat.approx_eq(&want, 1e-9) && via_lambda.approx_eq(&want, 1e-9), || why(g.name(p)));
                for q in 0..n {
                    let qinv = g.inv(q);
                    let pq = g.mul(p, q);
                    let l2 = pi[p].mul(&pi[q]).mul(&pi[qinv]);
                    pr2.record(l2.approx_eq(&pi[pq].mul(&pi[qinv]), 1e-9), || why(&format!("{} {}", g.name(p), g.name(q))));
                    let l3 = pi[pinv].mul(&pi[p]).mul(&pi[q]);
                    pr3.record(l3.approx_eq(&pi[pinv].mul(&pi[pq]), 1e-9), || why(&format!("{} {}", g.name(p), g.name(q))));
                }
            }
            let k = commutant_dim(&pi, 1e-9);
            simple.record(k == 1, || {
                let mut v = why("commutant");
                v.push(("dim", format!("{k}")));
                v
            });
        }
    }
    for ch in [mult, pr1, pr2, pr3, iso, eps, simple] {
        r.push(ch);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_product, cyclic};

    #[test]
    fn c3_catalog() {
        let a = GroupoidAlgebra::new(cyclic(3).unwrap(), 16).unwrap();
        let cat = SimpleCatalog::new(&a).unwrap();
        let dims: Vec<usize> = cat.labels.iter().map(|l| l.dim).collect();
        assert_eq!(dims, vec![1, 2, 1, 1, 1]);
        assert_eq!(cat.sum_dim_sq(), 8);
        let x1 = ESubset::new(0b011).unwrap();
        let m = module_matrix(&a, x1, 1);
        assert_eq!(m, GroupAlgebraMatrix::unit(2, crate::group::Subgroup::trivial(), 0, 1, 0));
        let whole = ESubset::new(0b111).unwrap();
        let t = cat.table(&a, whole);
        let rho = irrep(a.group(), t, 1).unwrap();
        let s = specialize(&module_matrix(&a, whole, 1), t, &rho);
        let w = crate::linalg::c(-0.5, libm::sqrt(3.0) / 2.0);
        assert!((s.at(0, 0) - w).norm() < 1e-12);
        assert!(verify_simples(&a).unwrap().passed());
    }

    #[test]
    fn counts() {
        let z4 = GroupoidAlgebra::new(cyclic(4).unwrap(), 16).unwrap();
        let cat = SimpleCatalog::new(&z4).unwrap();
        assert_eq!(cat.labels.len(), 9);
        assert_eq!(cat.sum_dim_sq(), 20);
        let k = GroupoidAlgebra::new(abelian_product(&[2, 2]).unwrap(), 16).unwrap();
        let cat = SimpleCatalog::new(&k).unwrap();
        assert_eq!(cat.sum_dim_sq(), 20);
        assert_eq!(cat.labels.len(), 12);
        let triv = GroupoidAlgebra::new(cyclic(1).unwrap(), 16).unwrap();
        let cat = SimpleCatalog::new(&triv).unwrap();
        assert_eq!(cat.labels.len(), 1);
        assert!(verify_simples(&triv).unwrap().passed());
    }

    #[test]
    fn commutant_of_full_matrix_algebra() {
        let mut e12 = CMatrix::zeros(2, 2);
        e12.set(0, 1, c(1.0, 0.0));
        let e21 = e12.adjoint();
        assert_eq!(commutant_dim(&[e12.clone(), e21], 1e-9), 1);
        assert_eq!(commutant_dim(&[CMatrix::identity(2)], 1e-9), 4);
    }
}
