//! Grothendieck ring of `k_par G`-mod: fusion of simple labels, the unit
//! object and the ring-axiom checks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::GroupoidAlgebra;
use crate::character::{character_table, tensor_multiplicities};
use crate::error::{Error, Result};
use crate::linalg::C;
use crate::report::{Check, Report};
use crate::simples::{support_dims, SimpleCatalog, SimpleLabel};
use crate::subsets::{isotropy, ESubset};
use crate::weak_hopf::balanced_components;

/// Move a class function on `G_Y` to the orbit rep `X = s⁻¹Y` via
/// `χ(h) = β(s h s⁻¹)`, and find its row in the table of `G_X`.
pub fn canonicalize_values(a: &GroupoidAlgebra, cat: &SimpleCatalog, y: ESubset, beta: impl Fn(usize) -> C) -> Result<SimpleLabel> {
    let g = a.group();
    let x = a.orbits().rep_of(y);
    let s = a.orbits().translator(y);
    let t = cat.table(a, x);
    let row: Vec<C> = t
        .classes
        .iter()
        .map(|&cls| {
            let h = cls.trailing_zeros() as usize;
            beta(g.mul(g.mul(s, h), g.inv(s)))
        })
        .collect();
    let alpha = t
        .find_row(&row, 1e-6)
        .ok_or_else(|| Error::CharacterTable(format!("transported character over {:#x} is not irreducible", y.mask())))?;
    cat.label(a, x, alpha)
}

/// The canonical label of `M_Y ⊗ V^(β)`, `β` indexing the table of `G_Y`.
pub fn canonicalize_label(a: &GroupoidAlgebra, cat: &SimpleCatalog, y: ESubset, beta: usize) -> Result<SimpleLabel> {
    if a.orbits().position_of_rep(y).is_some() {
        return cat.label(a, y, beta);
    }
    let ty = character_table(a.group(), &isotropy(a.group(), y))?;
    if beta >= ty.len() {
        return Err(Error::IndexOutOfRange { index: beta, limit: ty.len() });
    }
    canonicalize_values(a, cat, y, |h| ty.value(beta, h))
}

/// `l ⊠ m` over `A_par`: zero unless both live over the same orbit, in
/// which case the isotropy tensor multiplicities.
pub fn fuse(a: &GroupoidAlgebra, cat: &SimpleCatalog, l: &SimpleLabel, m: &SimpleLabel) -> Result<Vec<(SimpleLabel, usize)>> {
    for k in [l, m] {
        if cat.index_of(k).is_none() {
            return Err(Error::NonCanonicalLabel { mask: k.x.mask(), alpha: k.alpha });
        }
    }
    if l.x != m.x {
        return Ok(Vec::new());
    }
    let t = cat.table(a, l.x);
    tensor_multiplicities(t, l.alpha, m.alpha)?
        .into_iter()
        .map(|(gamma, k)| Ok((cat.label(a, l.x, gamma)?, k)))
        .collect()
}

/// `n[a][b][c]` = multiplicity of `labels[c]` in `labels[a] ⊠ labels[b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTable {
    pub labels: Vec<SimpleLabel>,
    pub n: Vec<Vec<Vec<usize>>>,
}

impl FusionTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Nonzero `(c, mult)` of `a ⊠ b`.
    pub fn product(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        self.n[a][b].iter().enumerate().filter(|(_, &k)| k > 0).map(|(c, &k)| (c, k)).collect()
    }
}

pub fn fusion_table(cat: &SimpleCatalog) -> Result<FusionTable> {
    let k = cat.labels.len();
    let mut n = vec![vec![vec![0usize; k]; k]; k];
    // labels of one orbit are contiguous
    let mut start = 0;
    for t in &cat.tables {
        let len = t.len();
        for i in 0..len {
            for j in 0..len {
                for (gamma, m) in tensor_multiplicities(t, i, j)? {
                    n[start + i][start + j][start + gamma] = m;
                }
            }
        }
        start += len;
    }
    Ok(FusionTable { labels: cat.labels.clone(), n })
}

/// The summands `M_X ⊗ k_ε`, `X ∈ T`, of the unit object `A_par`.
pub fn unit_decomposition(a: &GroupoidAlgebra, cat: &SimpleCatalog) -> Vec<SimpleLabel> {
    a.orbits().reps().filter_map(|x| cat.label(a, x, cat.table(a, x).trivial()).ok()).collect()
}

pub fn verify_fusion(a: &GroupoidAlgebra) -> Result<Report> {
    let cat = SimpleCatalog::new(a)?;
    let ft = fusion_table(&cat)?;
    let k = ft.len();
    let mut r = Report::new();
    let name = |i: usize| format!("({:#x},{})", ft.labels[i].x.mask(), ft.labels[i].alpha);

    // sparse (a⊠b)⊠c against a⊠(b⊠c), one case per (a,b,c,d)
    let prods: Vec<Vec<Vec<(usize, usize)>>> = (0..k).map(|p| (0..k).map(|q| ft.product(p, q)).collect()).collect();
    let mut assoc = Check::new("associativity");
    let mut lhs = vec![0usize; k];
    let mut rhs = vec![0usize; k];
    for p in 0..k {
        for q in 0..k {
            for s in 0..k {
                let mut touched = Vec::new();
                for &(e, m) in &prods[p][q] {
                    for &(d, m2) in &prods[e][s] {
                        lhs[d] += m * m2;
                        touched.push(d);
                    }
                }
                for &(f, m) in &prods[q][s] {
                    for &(d, m2) in &prods[p][f] {
                        rhs[d] += m * m2;
                        touched.push(d);
                    }
                }
                let bad = touched.iter().copied().find(|&d| lhs[d] != rhs[d]);
                assoc.cases += k as u64 - 1;
                assoc.record(bad.is_none(), || vec![("a", name(p)), ("b", name(q)), ("c", name(s)), ("d", name(bad.unwrap_or(0)))]);
                for d in touched {
                    lhs[d] = 0;
                    rhs[d] = 0;
                }
            }
        }
    }
    r.push(assoc);

    let mut comm = Check::new("commutativity");
    for p in 0..k {
        for q in 0..k {
            comm.record(ft.n[p][q] == ft.n[q][p], || vec![("a", name(p)), ("b", name(q))]);
        }
    }
    r.push(comm);

    let units: Vec<usize> = unit_decomposition(a, &cat).iter().filter_map(|u| cat.index_of(u)).collect();
    let mut unit = Check::new("unit_law");
    let mut bal_unit = Check::new("balanced_unit");
    let ones = vec![1usize; a.subsets().len()];
    for p in 0..k {
        let mut left = vec![0usize; k];
        let mut right = vec![0usize; k];
        for &u in &units {
            for c in 0..k {
                left[c] += ft.n[u][p][c];
                right[c] += ft.n[p][u][c];
            }
        }
        let mut delta = vec![0usize; k];
        delta[p] = 1;
        unit.record(left == delta && right == delta, || vec![("a", name(p))]);
        let sd = support_dims(a, &cat, &ft.labels[p]);
        let ok = balanced_components(&ones, &sd).map(|(per, _)| per == sd).unwrap_or(false);
        bal_unit.record(ok, || vec![("a", name(p))]);
    }
    r.push(unit);
    r.push(bal_unit);

    let mut support = Check::new("support_rule");
    let mut dims = Check::new("dimension_balanced");
    let sds: Vec<Vec<usize>> = ft.labels.iter().map(|l| support_dims(a, &cat, l)).collect();
    for p in 0..k {
        for q in 0..k {
            let nonzero = ft.n[p][q].iter().any(|&m| m > 0);
            support.record(!nonzero || ft.labels[p].x == ft.labels[q].x, || vec![("a", name(p)), ("b", name(q))]);
            let total: usize = (0..k).map(|c| ft.n[p][q][c] * ft.labels[c].dim).sum();
            let bal = balanced_components(&sds[p], &sds[q]).map(|(_, t)| t).ok();
            dims.record(bal == Some(total), || vec![("a", name(p)), ("b", name(q)), ("sum", format!("{total}"))]);
        }
    }
    r.push(support);
    r.push(dims);
    Ok(r)
}

/// `M(X,α)` with `X` written by element names.
pub fn label_name(a: &GroupoidAlgebra, l: &SimpleLabel) -> String {
    let g = a.group();
    let els: Vec<&str> = l.x.elements().map(|x| g.name(x)).collect();
    format!("M({{{}}},{})", els.join(","), l.alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_product, cyclic, symmetric};

    fn setup(g: crate::group::FiniteGroup) -> (GroupoidAlgebra, SimpleCatalog) {
        let a = GroupoidAlgebra::new(g, 16).unwrap();
        let cat = SimpleCatalog::new(&a).unwrap();
        (a, cat)
    }

    #[test]
    fn c3_table() {
        let (a, cat) = setup(cyclic(3).unwrap());
        let ft = fusion_table(&cat).unwrap();
        assert_eq!(ft.len(), 5);
        // expected products: label index or none
        let z3 = |i: usize, j: usize| Some(2 + (i + j) % 3);
        for p in 0..5 {
            for q in 0..5 {
                let want = match (p, q) {
                    (0, 0) => Some(0),
                    (1, 1) => Some(1),
                    (p, q) if p >= 2 && q >= 2 => z3(p - 2, q - 2),
                    _ => None,
                };
                let got: Vec<(usize, usize)> = ft.product(p, q);
                assert_eq!(got, want.map(|c| vec![(c, 1)]).unwrap_or_default(), "{p} {q}");
            }
        }
        let x1 = ESubset::new(0b011).unwrap();
        let x2 = ESubset::new(0b101).unwrap();
        assert_eq!(canonicalize_label(&a, &cat, x2, 0).unwrap(), cat.label(&a, x1, 0).unwrap());
        assert!(fuse(&a, &cat, &cat.labels[0], &cat.labels[1]).unwrap().is_empty());
        assert_eq!(unit_decomposition(&a, &cat).len(), 3);
        assert!(verify_fusion(&a).unwrap().passed());
    }

    #[test]
    fn small_groups() {
        let (a, cat) = setup(cyclic(1).unwrap());
        let ft = fusion_table(&cat).unwrap();
        assert_eq!(ft.n, vec![vec![vec![1]]]);
        assert_eq!(unit_decomposition(&a, &cat).len(), 1);
        let (a, cat) = setup(cyclic(4).unwrap());
        assert_eq!(unit_decomposition(&a, &cat).len(), 5);
        let (_, cat) = setup(cyclic(2).unwrap());
        let ft = fusion_table(&cat).unwrap();
        assert_eq!(ft.product(1, 1), vec![(1, 1)]);
        assert_eq!(ft.product(1, 2), vec![(2, 1)]);
        assert_eq!(ft.product(2, 2), vec![(1, 1)]);
        assert!(ft.product(0, 1).is_empty());
        for g in [abelian_product(&[2, 2]).unwrap(), symmetric(3).unwrap()] {
            let a = GroupoidAlgebra::new(g, 16).unwrap();
            let rep = verify_fusion(&a).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn s3_transport() {
        // every non-rep Y canonicalizes each of its characters to a distinct
        // label over its rep, with the same degree
        let (a, cat) = setup(symmetric(3).unwrap());
        let g = a.group();
        for &y in a.subsets() {
            let t = character_table(g, &isotropy(g, y)).unwrap();
            let mut seen = Vec::new();
            for beta in 0..t.len() {
                let l = canonicalize_label(&a, &cat, y, beta).unwrap();
                assert_eq!(l.x, a.orbits().rep_of(y));
                assert_eq!(cat.table(&a, l.x).degrees[l.alpha], t.degrees[beta]);
                assert!(!seen.contains(&l));
                seen.push(l);
            }
        }
    }
}
