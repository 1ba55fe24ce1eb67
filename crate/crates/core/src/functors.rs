//! The two embedding functors on Grothendieck data: Christmas Tree
//! `kH-mod → k_par G-mod` and Matryoshka `k_par H-mod → k_par G-mod` for
//! abelian `G`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::{subgroup_projection, SubgroupProjection};
use crate::algebra::GroupoidAlgebra;
use crate::character::{character_table, tensor_multiplicities, CharacterTable};
use crate::error::{Error, Result};
use crate::fusion::{canonicalize_values, fuse, label_name};
use crate::group::{bit, FiniteGroup, GroupMorphism, Subgroup};
use crate::report::{Check, Report};
use crate::simples::{SimpleCatalog, SimpleLabel};
use crate::subsets::{isotropy, ESubset};

#[derive(Debug, Clone)]
pub struct FunctorReport {
    /// Ordered pairs of source simples whose fusion was compared.
    pub pairs: usize,
    pub label_map: Vec<(String, SimpleLabel)>,
    pub injective: bool,
    pub dims_preserved: bool,
    pub monoidal_failures: Vec<String>,
    /// Structural side conditions (isotropy, union form, intertwiner).
    pub checks: Report,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.injective && self.dims_preserved && self.monoidal_failures.is_empty() && self.checks.passed()
    }
}

fn injective(map: &[(String, SimpleLabel)]) -> bool {
    let mut seen: Vec<SimpleLabel> = map.iter().map(|(_, l)| *l).collect();
    seen.sort();
    seen.dedup();
    seen.len() == map.len()
}

fn as_map(v: &[(SimpleLabel, usize)]) -> BTreeMap<SimpleLabel, usize> {
    v.iter().copied().collect()
}

/// `M_H ⊗ V^(α)`; `th` is the character table of `H` in `G`.
pub fn christmas_label(a: &GroupoidAlgebra, cat: &SimpleCatalog, th: &CharacterTable, alpha: usize) -> Result<SimpleLabel> {
    if alpha >= th.len() {
        return Err(Error::IndexOutOfRange { index: alpha, limit: th.len() });
    }
    let y = ESubset::new(th.subgroup.mask())?;
    canonicalize_values(a, cat, y, |h| th.value(alpha, h))
}

pub fn christmas_verify(a: &GroupoidAlgebra, cat: &SimpleCatalog, h: &Subgroup) -> Result<FunctorReport> {
    let g = a.group();
    let th = character_table(g, h)?;
    let k = th.len();
    let images: Vec<SimpleLabel> = (0..k).map(|al| christmas_label(a, cat, &th, al)).collect::<Result<_>>()?;
    let label_map: Vec<(String, SimpleLabel)> = images.iter().enumerate().map(|(al, l)| (format!("{al}"), *l)).collect();

    let mut checks = Report::new();
    let mut iso = Check::new("subset_isotropy_is_h");
    iso.record(isotropy(g, ESubset::new(h.mask())?) == *h, || vec![("H", format!("{:#x}", h.mask()))]);
    checks.push(iso);
    let mut one = Check::new("single_basis_vector");
    for l in &images {
        one.record(a.orbits().orbit_of(l.x).size() == 1, || vec![("X", format!("{:#x}", l.x.mask()))]);
    }
    checks.push(one);

    let dims_preserved = images.iter().zip(&th.degrees).all(|(l, &d)| l.dim == d);
    let mut failures = Vec::new();
    for p in 0..k {
        for q in 0..k {
            let want: Vec<(SimpleLabel, usize)> = tensor_multiplicities(&th, p, q)?.into_iter().map(|(c, m)| (images[c], m)).collect();
            let got = fuse(a, cat, &images[p], &images[q])?;
            if as_map(&want) != as_map(&got) {
                failures.push(format!("{p}⊗{q}"));
            }
        }
    }
    Ok(FunctorReport { pairs: k * k, injective: injective(&label_map), label_map, dims_preserved, monoidal_failures: failures, checks })
}

/// The surjection `φ : G → H` driving the Matryoshka functor.
pub fn matryoshka_phi(g: &FiniteGroup, h: &Subgroup) -> Result<SubgroupProjection> {
    if !g.is_abelian() {
        return Err(Error::NonAbelian);
    }
    subgroup_projection(g, h)
}

/// Everything needed to push labels of `k_par H` into `k_par G`.
#[derive(Debug, Clone)]
pub struct Matryoshka {
    pub target: GroupoidAlgebra,
    pub target_catalog: SimpleCatalog,
    pub source: GroupoidAlgebra,
    pub source_catalog: SimpleCatalog,
    pub phi: SubgroupProjection,
}

impl Matryoshka {
    pub fn new(g: &FiniteGroup, h: &Subgroup, cap: usize) -> Result<Self> {
        let phi = matryoshka_phi(g, h)?;
        let target = GroupoidAlgebra::new(g.clone(), cap)?;
        let target_catalog = SimpleCatalog::new(&target)?;
        let source = GroupoidAlgebra::new(phi.subgroup.clone(), cap)?;
        let source_catalog = SimpleCatalog::new(&source)?;
        Ok(Self { target, target_catalog, source, source_catalog, phi })
    }

    fn morphism(&self) -> &GroupMorphism {
        &self.phi.morphism
    }

    /// `Y = φ⁻¹(X)` as a subset of `G`.
    pub fn preimage(&self, x: ESubset) -> Result<ESubset> {
        ESubset::new(self.morphism().preimage(x.mask()))
    }

    /// `Y` assembled as `⋃ s_x L` over one preimage `s_x` per `K`-coset in
    /// `X`, with `L = φ⁻¹(K)`.
    pub fn union_form(&self, x: ESubset) -> u64 {
        let hg = &self.phi.subgroup;
        let g = self.target.group();
        let k = isotropy(hg, x);
        let l = self.morphism().preimage(k.mask());
        let mut covered = 0u64;
        let mut y = 0u64;
        for t in x.elements() {
            if covered & bit(t) != 0 {
                continue;
            }
            covered |= hg.left_translate(t, k.mask());
            let s = (0..g.order()).find(|&s| self.morphism().apply(s) == t).expect("φ is surjective");
            y |= g.left_translate(s, l);
        }
        y
    }

    /// Image of a canonical source label: `(φ⁻¹(X), χ∘φ)` canonicalized.
    pub fn label(&self, src: &SimpleLabel) -> Result<SimpleLabel> {
        let ha = &self.source;
        let hcat = &self.source_catalog;
        hcat.label(ha, src.x, src.alpha)?;
        let tk = hcat.table(ha, src.x);
        let y = self.preimage(src.x)?;
        canonicalize_values(&self.target, &self.target_catalog, y, |l| tk.value(src.alpha, self.morphism().apply(l)))
    }

    pub fn verify(&self) -> Result<FunctorReport> {
        let g = self.target.group();
        let ha = &self.source;
        let hcat = &self.source_catalog;
        let srcs = &hcat.labels;
        let images: Vec<SimpleLabel> = srcs.iter().map(|s| self.label(s)).collect::<Result<_>>()?;
        let label_map: Vec<(String, SimpleLabel)> = srcs.iter().zip(&images).map(|(s, t)| (label_name(ha, s), *t)).collect();
        let dims_preserved = srcs.iter().zip(&images).all(|(s, t)| s.dim == t.dim);

        let mut checks = Report::new();
        let mut iso = Check::new("preimage_isotropy");
        let mut union = Check::new("union_form");
        let mut inter = Check::new("eps_support_intertwiner");
        let n = g.order();
        for o in ha.orbits().orbits() {
            let x = o.rep;
            let y = self.preimage(x)?;
            let why = || vec![("X", format!("{:#x}", x.mask()))];
            let k = isotropy(ha.group(), x);
            iso.record(isotropy(g, y).mask() == self.morphism().preimage(k.mask()), why);
            union.record(self.union_form(x) == y.mask(), why);
            // basis P_{sY} ↔ P_{φ(s)X}: well defined, bijective, and ε_g
            // supports agree
            let mut pairs: BTreeMap<u64, u64> = BTreeMap::new();
            let mut ok = true;
            for s in 0..n {
                let sy = g.left_translate(s, y.mask());
                let sx = ha.group().left_translate(self.morphism().apply(s), x.mask());
                if *pairs.entry(sy).or_insert(sx) != sx {
                    ok = false;
                }
                for e in 0..n {
                    ok &= (sy & bit(e) != 0) == (sx & bit(self.morphism().apply(e)) != 0);
                }
            }
            let mut targets: Vec<u64> = pairs.values().copied().collect();
            targets.sort_unstable();
            targets.dedup();
            ok &= targets.len() == pairs.len();
            inter.record(ok, why);
        }
        checks.push(iso);
        checks.push(union);
        checks.push(inter);

        let mut failures = Vec::new();
        for (p, sp) in srcs.iter().enumerate() {
            for (q, sq) in srcs.iter().enumerate() {
                let want: Vec<(SimpleLabel, usize)> = fuse(ha, hcat, sp, sq)?
                    .into_iter()
                    .map(|(c, m)| Ok((self.label(&c)?, m)))
                    .collect::<Result<_>>()?;
                let got = fuse(&self.target, &self.target_catalog, &images[p], &images[q])?;
                if as_map(&want) != as_map(&got) {
                    failures.push(format!("{} ⊠ {}", label_map[p].0, label_map[q].0));
                }
            }
        }
        Ok(FunctorReport { pairs: srcs.len() * srcs.len(), injective: injective(&label_map), label_map, dims_preserved, monoidal_failures: failures, checks })
    }
}

/// Image of a canonical label of `k_par H` in `k_par G`.
pub fn matryoshka_label(g: &FiniteGroup, h: &Subgroup, src: &SimpleLabel, cap: usize) -> Result<SimpleLabel> {
    Matryoshka::new(g, h, cap)?.label(src)
}

pub fn matryoshka_verify(g: &FiniteGroup, h: &Subgroup, cap: usize) -> Result<FunctorReport> {
    Matryoshka::new(g, h, cap)?.verify()
}

/// For `K ≤ H ≤ G` abelian, compare `M(G,H) ∘ M(H,K)` with `M(G,K)` label
/// by label. The result is reported, not asserted.
pub fn matryoshka_coherence(g: &FiniteGroup, h: &Subgroup, k: &Subgroup, cap: usize) -> Result<Check> {
    if k.mask() & !h.mask() != 0 {
        return Err(Error::NotSubgroup(k.mask()));
    }
    let gh = Matryoshka::new(g, h, cap)?;
    let emb = &gh.phi.embedding;
    let local = emb.iter().enumerate().filter(|(_, &x)| k.contains(x)).fold(0u64, |m, (i, _)| m | bit(i));
    let hk = Matryoshka::new(&gh.phi.subgroup, &Subgroup::new(&gh.phi.subgroup, local)?, cap)?;
    let gk = Matryoshka::new(g, k, cap)?;
    let mut c = Check::new("matryoshka_nested");
    // both routes index K by ascending parent element, so the source
    // catalogs coincide
    if hk.phi.subgroup.table() != gk.phi.subgroup.table() {
        return Err(Error::GroupMismatch);
    }
    for src in &gk.source_catalog.labels {
        let direct = gk.label(src)?;
        let nested = gh.label(&hk.label(src)?)?;
        c.record(direct == nested, || {
            vec![
                ("source", label_name(&gk.source, src)),
                ("direct", label_name(&gk.target, &direct)),
                ("nested", label_name(&gk.target, &nested)),
            ]
        });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_product, cyclic, subgroups, symmetric};

    #[test]
    fn christmas_examples() {
        let z4 = cyclic(4).unwrap();
        let a = GroupoidAlgebra::new(z4.clone(), 16).unwrap();
        let cat = SimpleCatalog::new(&a).unwrap();
        let h = Subgroup::new(&z4, 0b0101).unwrap();
        let th = character_table(&z4, &h).unwrap();
        let l = christmas_label(&a, &cat, &th, 1).unwrap();
        assert_eq!((l.x.mask(), l.alpha, l.dim), (0b0101, 1, 1));
        let r = christmas_verify(&a, &cat, &h).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs, 4);
        let e = christmas_verify(&a, &cat, &Subgroup::trivial()).unwrap();
        assert_eq!(e.label_map[0].1.x, ESubset::identity());

        let s3 = symmetric(3).unwrap();
        let a = GroupoidAlgebra::new(s3.clone(), 16).unwrap();
        let cat = SimpleCatalog::new(&a).unwrap();
        for h in subgroups(&s3) {
            assert!(christmas_verify(&a, &cat, &h).unwrap().passed());
        }
        assert!(christmas_label(&a, &cat, &character_table(&s3, &Subgroup::whole(&s3)).unwrap(), 3).is_err());
    }

    #[test]
    fn matryoshka_z4() {
        let z4 = cyclic(4).unwrap();
        let h = Subgroup::new(&z4, 0b0101).unwrap();
        let m = Matryoshka::new(&z4, &h, 16).unwrap();
        // φ(a^t) = a^{2t}
        for t in 0..4 {
            assert_eq!(m.phi.apply_in_parent(t), (2 * t) % 4);
        }
        let src = m.source_catalog.labels.clone();
        assert_eq!(src.len(), 3);
        let img: Vec<SimpleLabel> = src.iter().map(|s| m.label(s).unwrap()).collect();
        assert_eq!((img[0].x.mask(), img[0].alpha), (0b0101, 0));
        assert_eq!((img[1].x.mask(), img[1].alpha), (0b1111, 0));
        // χ(a) = sign(a²) = −1: the Z4 row with exponent 2
        assert_eq!(img[2].x.mask(), 0b1111);
        let t = m.target_catalog.table(&m.target, img[2].x);
        assert!((t.value(img[2].alpha, 1).re + 1.0).abs() < 1e-12);
        let r = m.verify().unwrap();
        assert!(r.passed(), "{:?}", r);
        assert!(matryoshka_phi(&symmetric(3).unwrap(), &Subgroup::trivial()).is_err());
    }

    #[test]
    fn matryoshka_identity_and_klein() {
        let k = abelian_product(&[2, 2]).unwrap();
        let m = Matryoshka::new(&k, &Subgroup::whole(&k), 16).unwrap();
        for s in &m.source_catalog.labels {
            assert_eq!(m.label(s).unwrap(), *s);
        }
        for h in subgroups(&k) {
            let r = matryoshka_verify(&k, &h, 16).unwrap();
            assert!(r.passed(), "{:?}", r);
        }
    }
}
