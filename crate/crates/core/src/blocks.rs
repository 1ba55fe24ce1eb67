//! The block `kΓ(G)·Γ_X ≅ M_n(kG_X)` of each orbit, with the explicit
//! maps `φ_X` and `ψ_X`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, Arrow, Coeff, GroupoidAlgebra};
use crate::character::character_table;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::report::{Check, Report};
use crate::subsets::{ESubset, Orbit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInfo {
    pub rep: ESubset,
    /// `|X| / |G_X|`
    pub n: usize,
    pub isotropy: Subgroup,
    /// `n² |G_X|`
    pub dim: usize,
}

pub fn blocks(a: &GroupoidAlgebra) -> Vec<BlockInfo> {
    a.orbits()
        .orbits()
        .iter()
        .map(|o| {
            let n = o.size();
            BlockInfo { rep: o.rep, n, isotropy: o.isotropy, dim: n * n * o.isotropy.order() }
        })
        .collect()
}

/// An `n × n` matrix with entries in the group algebra `kG_X`, each entry a
/// sparse map from elements of `G` to coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraMatrix {
    n: usize,
    isotropy: Subgroup,
    entries: Vec<BTreeMap<usize, Coeff>>,
}

impl GroupAlgebraMatrix {
    pub fn zero(n: usize, isotropy: Subgroup) -> Self {
        Self { n, isotropy, entries: vec![BTreeMap::new(); n * n] }
    }

    pub fn identity(n: usize, isotropy: Subgroup) -> Self {
        let mut m = Self::zero(n, isotropy);
        for i in 0..n {
            m.entries[i * n + i].insert(0, Coeff::one());
        }
        m
    }

    /// `t · E_ij`
    pub fn unit(n: usize, isotropy: Subgroup, i: usize, j: usize, t: usize) -> Self {
        let mut m = Self::zero(n, isotropy);
        m.entries[i * n + j].insert(t, Coeff::one());
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn isotropy(&self) -> Subgroup {
        self.isotropy
    }

    pub fn entry(&self, i: usize, j: usize) -> &BTreeMap<usize, Coeff> {
        &self.entries[i * self.n + j]
    }

    pub fn add_to(&mut self, i: usize, j: usize, t: usize, c: Coeff) {
        let e = self.entries[i * self.n + j].entry(t).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            self.entries[i * self.n + j].remove(&t);
        }
    }

    pub fn mul(&self, other: &Self, g: &FiniteGroup) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n, self.isotropy);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_empty() {
                    continue;
                }
                for j in 0..n {
                    for (&s, cs) in a {
                        for (&t, ct) in &other.entries[k * n + j] {
                            out.add_to(i, j, g.mul(s, t), cs * ct);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }
}

impl fmt::Display for GroupAlgebraMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let e = self.entry(i, j);
                    if e.is_empty() {
                        String::from("0")
                    } else {
                        e.iter().map(|(t, c)| format!("{c}·{t}")).collect::<Vec<_>>().join("+")
                    }
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix sizes of the complex Wedderburn decomposition, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedderburnSummary {
    pub sizes: Vec<usize>,
}

impl WedderburnSummary {
    /// `(size, multiplicity)` pairs, ascending size.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &s in &self.sizes {
            match out.last_mut() {
                Some((t, k)) if *t == s => *k += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    pub fn total_dim(&self) -> usize {
        self.sizes.iter().map(|s| s * s).sum()
    }

    /// `7·M1 ⊕ M2 ⊕ M3 over C`
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self
            .counts()
            .iter()
            .map(|&(s, k)| if k == 1 { format!("M{s}") } else { format!("{k}·M{s}") })
            .collect();
        format!("{} over C", parts.join(" ⊕ "))
    }
}

/// `7C ⊕ M_2(C) ⊕ M_3(C)`
impl fmt::Display for WedderburnSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts()
            .iter()
            .map(|&(s, k)| {
                let m = if s == 1 { String::from("C") } else { format!("M_{s}(C)") };
                if k == 1 {
                    m
                } else {
                    format!("{k}{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Each block `M_n(kG_X)` contributes `M_{n·d}(C)` for every irreducible
/// degree `d` of `G_X`.
pub fn wedderburn_summary(a: &GroupoidAlgebra) -> Result<WedderburnSummary> {
    let mut sizes = Vec::new();
    for b in blocks(a) {
        let t = character_table(a.group(), &b.isotropy)?;
        sizes.extend(t.degrees.iter().map(|d| d * b.n));
    }
    sizes.sort_unstable();
    Ok(WedderburnSummary { sizes })
}

fn orbit_for(a: &GroupoidAlgebra, x: ESubset) -> &Orbit {
    a.orbits().orbit_of(x)
}

/// `φ_X`: sends the arrow `(g, g_j X)` to `(g_i⁻¹ g g_j) E_ij` where
/// `g g_j X = g_i X`. `X` may be any member of the orbit; its rep is used.
pub fn phi_block(a: &GroupoidAlgebra, x: ESubset, elem: &AlgebraElement) -> Result<GroupAlgebraMatrix> {
    if !a.owns(elem) {
        return Err(Error::GroupMismatch);
    }
    let g = a.group();
    let orbit = orbit_for(a, x);
    let (opos, _) = a.orbits().locate(orbit.rep);
    let n = orbit.size();
    let mut m = GroupAlgebraMatrix::zero(n, orbit.isotropy);
    for (arr, c) in elem.iter() {
        let (o, j) = a.orbits().locate(arr.x);
        if o != opos {
            return Err(Error::NotInBlock(orbit.rep.mask()));
        }
        let (_, i) = a.orbits().locate(a.target(*arr));
        let gi = orbit.transversal[i];
        let gj = orbit.transversal[j];
        let t = g.mul(g.inv(gi), g.mul(arr.g, gj));
        debug_assert!(orbit.isotropy.contains(t));
        m.add_to(i, j, t, c.clone());
    }
    Ok(m)
}

/// `ψ_X(t E_ij) = (g_i t g_j⁻¹, g_j X)`.
pub fn psi_block(a: &GroupoidAlgebra, x: ESubset, m: &GroupAlgebraMatrix) -> Result<AlgebraElement> {
    let g = a.group();
    let orbit = orbit_for(a, x);
    let n = orbit.size();
    if m.size() != n {
        return Err(Error::MatrixSize { expected: n, got: m.size() });
    }
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (&t, c) in m.entry(i, j) {
                if !orbit.isotropy.contains(t) {
                    return Err(Error::EntryOutsideIsotropy(t));
                }
                let h = g.mul(orbit.transversal[i], g.mul(t, g.inv(orbit.transversal[j])));
                terms.push((h, orbit.members[j].mask(), c.clone()));
            }
        }
    }
    a.element(terms)
}

/// The arrows spanning the block of `X`.
pub fn block_basis(a: &GroupoidAlgebra, x: ESubset) -> Vec<Arrow> {
    let orbit = orbit_for(a, x);
    let g = a.group();
    let mut out = Vec::new();
    for &y in &orbit.members {
        for h in 0..g.order() {
            if y.contains(g.inv(h)) {
                out.push(Arrow { x: y, g: h });
            }
        }
    }
    out
}

/// Bijectivity and multiplicativity of `φ_X` for every orbit.
pub fn verify_blocks(a: &GroupoidAlgebra) -> Report {
    let g = a.group();
    let mut r = Report::new();
    let mut dims = Check::new("block_dims_sum");
    let total: usize = blocks(a).iter().map(|b| b.dim).sum();
    dims.record(total == a.dimension().0, || vec![("sum", format!("{total}"))]);
    r.push(dims);

    let mut psi_phi = Check::new("psi_after_phi");
    let mut phi_psi = Check::new("phi_after_psi");
    let mut mult = Check::new("phi_multiplicative");
    let mut ident = Check::new("phi_gamma_identity");
    let mut diag = Check::new("phi_p_diagonal");
    for o in a.orbits().orbits() {
        let x = o.rep;
        let n = o.size();
        let hx = |s: &str| vec![("X", format!("{:#x}", x.mask())), ("case", String::from(s))];
        let id = phi_block(a, x, &a.gamma_idem(x));
        ident.record(id.as_ref().ok() == Some(&GroupAlgebraMatrix::identity(n, o.isotropy)), || hx("gamma"));
        for (i, &y) in o.members.iter().enumerate() {
            let p = phi_block(a, x, &a.p_idem(y));
            diag.record(p.ok() == Some(GroupAlgebraMatrix::unit(n, o.isotropy, i, i, 0)), || hx("P"));
        }
        let basis = block_basis(a, x);
        let images: Vec<GroupAlgebraMatrix> = basis.iter().map(|&b| phi_block(a, x, &a.basis(b)).unwrap()).collect();
        for (k, &b) in basis.iter().enumerate() {
            let back = psi_block(a, x, &images[k]);
            psi_phi.record(back.ok() == Some(a.basis(b)), || vec![("arrow", a.describe(b))]);
        }
        for i in 0..n {
            for j in 0..n {
                for t in o.isotropy.elements() {
                    let u = GroupAlgebraMatrix::unit(n, o.isotropy, i, j, t);
                    let round = psi_block(a, x, &u).and_then(|e| phi_block(a, x, &e));
                    phi_psi.record(round.ok() == Some(u), || {
                        vec![("X", format!("{:#x}", x.mask())), ("i", format!("{i}")), ("j", format!("{j}")), ("t", String::from(g.name(t)))]
                    });
                }
            }
        }
        for (p, &bp) in basis.iter().enumerate() {
            for (q, &bq) in basis.iter().enumerate() {
                let lhs = phi_block(a, x, &a.mul(&a.basis(bp), &a.basis(bq))).unwrap();
                let rhs = images[p].mul(&images[q], g);
                mult.record(lhs == rhs, || vec![("a", a.describe(bp)), ("b", a.describe(bq))]);
            }
        }
    }
    r.push(ident);
    r.push(diag);
    r.push(psi_phi);
    r.push(phi_psi);
    r.push(mult);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_product, cyclic};
    use alloc::string::ToString;

    fn sizes(a: &GroupoidAlgebra) -> Vec<(usize, usize)> {
        blocks(a).iter().map(|b| (b.n, b.isotropy.order())).collect()
    }

    #[test]
    fn block_lists() {
        let z4 = GroupoidAlgebra::new(cyclic(4).unwrap(), 16).unwrap();
        assert_eq!(sizes(&z4), vec![(1, 1), (2, 1), (1, 2), (3, 1), (1, 4)]);
        assert_eq!(blocks(&z4).iter().map(|b| b.dim).collect::<Vec<_>>(), vec![1, 4, 2, 9, 4]);
        let c3 = GroupoidAlgebra::new(cyclic(3).unwrap(), 16).unwrap();
        assert_eq!(sizes(&c3), vec![(1, 1), (2, 1), (1, 3)]);
        let k = GroupoidAlgebra::new(abelian_product(&[2, 2]).unwrap(), 16).unwrap();
        let mut d: Vec<usize> = blocks(&k).iter().map(|b| b.dim).collect();
        d.sort();
        assert_eq!(d, vec![1, 2, 2, 2, 4, 9]);
    }

    #[test]
    fn wedderburn_distinguishes_z4_and_klein() {
        let z4 = GroupoidAlgebra::new(cyclic(4).unwrap(), 16).unwrap();
        let w = wedderburn_summary(&z4).unwrap();
        assert_eq!(w.counts(), vec![(1, 7), (2, 1), (3, 1)]);
        assert_eq!(w.to_string(), "7C ⊕ M_2(C) ⊕ M_3(C)");
        assert_eq!(w.compact(), "7·M1 ⊕ M2 ⊕ M3 over C");
        let k = GroupoidAlgebra::new(abelian_product(&[2, 2]).unwrap(), 16).unwrap();
        let w = wedderburn_summary(&k).unwrap();
        assert_eq!(w.to_string(), "11C ⊕ M_3(C)");
        assert_eq!(w.total_dim(), 20);
        let c3 = GroupoidAlgebra::new(cyclic(3).unwrap(), 16).unwrap();
        assert_eq!(wedderburn_summary(&c3).unwrap().to_string(), "4C ⊕ M_2(C)");
    }

    #[test]
    fn c3_generator_is_e12() {
        let a = GroupoidAlgebra::new(cyclic(3).unwrap(), 16).unwrap();
        let x1 = ESubset::new(0b011).unwrap();
        let lg = a.mul(&a.lambda_gen(1), &a.gamma_idem(x1));
        let m = phi_block(&a, x1, &lg).unwrap();
        assert_eq!(m, GroupAlgebraMatrix::unit(2, Subgroup::trivial(), 0, 1, 0));
        assert_eq!(psi_block(&a, x1, &GroupAlgebraMatrix::identity(2, Subgroup::trivial())).unwrap(), a.gamma_idem(x1));
        assert_eq!(phi_block(&a, x1, &a.unit()), Err(Error::NotInBlock(0b011)));
        let bad = GroupAlgebraMatrix::unit(2, Subgroup::trivial(), 0, 0, 1);
        assert_eq!(psi_block(&a, x1, &bad), Err(Error::EntryOutsideIsotropy(1)));
    }

    #[test]
    fn psi_phi_roundtrip_c3() {
        let a = GroupoidAlgebra::new(cyclic(3).unwrap(), 16).unwrap();
        for x in a.orbits().reps().collect::<Vec<_>>() {
            for h in 0..3 {
                let e = a.mul(&a.lambda_gen(h), &a.gamma_idem(x));
                assert_eq!(psi_block(&a, x, &phi_block(&a, x, &e).unwrap()).unwrap(), e);
            }
        }
        assert!(verify_blocks(&a).passed());
    }
}
