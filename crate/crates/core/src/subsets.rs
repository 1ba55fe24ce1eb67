//! Subsets containing the identity, the left translation action on them,
//! orbits, isotropy subgroups and coset transversals.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{bit, bits, FiniteGroup, Subgroup};

/// Default bound on `|G|` for anything that enumerates all of `P_e(G)`.
pub const DEFAULT_CAP: usize = 16;

/// A subset `X ⊆ G` with `e ∈ X`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ESubset(u64);

impl ESubset {
    pub fn new(mask: u64) -> Result<Self> {
        if mask & 1 == 1 {
            Ok(Self(mask))
        } else {
            Err(Error::MissingIdentity(mask))
        }
    }

    pub(crate) fn from_mask_unchecked(mask: u64) -> Self {
        debug_assert!(mask & 1 == 1);
        Self(mask)
    }

    pub fn identity() -> Self {
        Self(1)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self(g.full_mask())
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 & bit(x) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }

    /// `gX`, provided it still contains `e` (i.e. `g⁻¹ ∈ X`).
    pub fn translate(self, g: &FiniteGroup, x: usize) -> Option<ESubset> {
        let m = g.left_translate(x, self.0);
        (m & 1 == 1).then_some(Self(m))
    }
}

impl fmt::Debug for ESubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{:#x}", self.0)
    }
}

fn check_cap(g: &FiniteGroup, cap: usize) -> Result<()> {
    if g.order() > cap {
        Err(Error::CapExceeded { order: g.order(), cap })
    } else {
        Ok(())
    }
}

/// `P_e(G)` in ascending mask order.
pub fn e_subsets(g: &FiniteGroup, cap: usize) -> Result<Vec<ESubset>> {
    check_cap(g, cap)?;
    let n = g.order();
    Ok((0..1u64 << (n - 1)).map(|k| ESubset((k << 1) | 1)).collect())
}

/// `{g·h : h ∈ X}` as a raw mask; it need not contain `e`.
pub fn translate(g: &FiniteGroup, x: usize, mask: u64) -> u64 {
    g.left_translate(x, mask)
}

/// `G_X = {g : gX = X}`.
pub fn isotropy(g: &FiniteGroup, x: ESubset) -> Subgroup {
    // gX = X forces g = g·e ∈ X
    let m = x.elements().filter(|&h| g.left_translate(h, x.0) == x.0).fold(0, |m, h| m | bit(h));
    Subgroup::from_mask_unchecked(m)
}

/// One orbit of `G` acting on `P_e(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Smallest mask in the orbit.
    pub rep: ESubset,
    pub isotropy: Subgroup,
    /// `g_1 = e, g_2, …, g_n` with `X = ⋃ G_X g_i⁻¹` disjointly.
    pub transversal: Vec<usize>,
    /// `members[i] = g_i X`
    pub members: Vec<ESubset>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All orbits of `P_e(G)`, with an O(1) lookup from any `Y` to its orbit
/// and position.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    orbits: Vec<Orbit>,
    // indexed by mask >> 1: (orbit, position in transversal)
    index: Vec<(u32, u8)>,
}

impl OrbitTable {
    pub fn new(g: &FiniteGroup, cap: usize) -> Result<Self> {
        check_cap(g, cap)?;
        let n = g.order();
        let total = 1usize << (n - 1);
        let mut index = alloc::vec![(u32::MAX, 0u8); total];
        let mut orbits = Vec::new();
        for k in 0..total {
            if index[k].0 != u32::MAX {
                continue;
            }
            let rep = ESubset(((k as u64) << 1) | 1);
            let iso = isotropy(g, rep);
            let mut transversal = Vec::new();
            let mut members = Vec::new();
            let pos = orbits.len() as u32;
            // g⁻¹ ∈ X, taken in ascending order of g; e comes first
            for x in 0..n {
                if !rep.contains(g.inv(x)) {
                    continue;
                }
                let y = ESubset(g.left_translate(x, rep.0));
                let slot = &mut index[(y.0 >> 1) as usize];
                if slot.0 == u32::MAX {
                    *slot = (pos, transversal.len() as u8);
                    transversal.push(x);
                    members.push(y);
                }
            }
            orbits.push(Orbit { rep, isotropy: iso, transversal, members });
        }
        Ok(Self { orbits, index })
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// The fundamental domain `T`.
    pub fn reps(&self) -> impl Iterator<Item = ESubset> + '_ {
        self.orbits.iter().map(|o| o.rep)
    }

    /// `(orbit index, i)` with `Y = g_i · rep`.
    pub fn locate(&self, y: ESubset) -> (usize, usize) {
        let (o, i) = self.index[(y.0 >> 1) as usize];
        (o as usize, i as usize)
    }

    pub fn orbit_of(&self, y: ESubset) -> &Orbit {
        &self.orbits[self.locate(y).0]
    }

    pub fn rep_of(&self, y: ESubset) -> ESubset {
        self.orbit_of(y).rep
    }

    /// The stored translator `g` with `Y = g · rep(Y)`.
    pub fn translator(&self, y: ESubset) -> usize {
        let (o, i) = self.locate(y);
        self.orbits[o].transversal[i]
    }

    pub fn position_of_rep(&self, x: ESubset) -> Option<usize> {
        let (o, i) = self.locate(x);
        (i == 0).then_some(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_product, cyclic, dihedral, quaternion, symmetric};
    use alloc::vec;

    fn all_groups() -> Vec<FiniteGroup> {
        let mut v: Vec<FiniteGroup> = (1..=8).map(|n| cyclic(n).unwrap()).collect();
        v.push(abelian_product(&[2, 2]).unwrap());
        v.push(abelian_product(&[2, 4]).unwrap());
        v.push(abelian_product(&[2, 2, 2]).unwrap());
        v.push(symmetric(3).unwrap());
        v.push(dihedral(4).unwrap());
        v.push(quaternion());
        v
    }

    #[test]
    fn c3_subsets_and_orbits() {
        let g = cyclic(3).unwrap();
        let masks: Vec<u64> = e_subsets(&g, 16).unwrap().iter().map(|x| x.mask()).collect();
        assert_eq!(masks, vec![0b001, 0b011, 0b101, 0b111]);
        let t = OrbitTable::new(&g, 16).unwrap();
        let orbits: Vec<Vec<u64>> = t.orbits().iter().map(|o| o.members.iter().map(|m| m.mask()).collect()).collect();
        assert_eq!(orbits, vec![vec![0b001], vec![0b011, 0b101], vec![0b111]]);
        // X_2 = g² X_1
        assert_eq!(translate(&g, 2, 0b011), 0b101);
    }

    #[test]
    fn z4_orbit_sizes() {
        let g = cyclic(4).unwrap();
        let t = OrbitTable::new(&g, 16).unwrap();
        let sizes: Vec<usize> = t.orbits().iter().map(Orbit::size).collect();
        assert_eq!(sizes, vec![1, 2, 1, 3, 1]);
        assert_eq!(isotropy(&g, ESubset(0b0101)).mask(), 0b0101);
        assert_eq!(translate(&g, 1, 0b0011), 0b0110);
        assert_eq!(ESubset(0b0011).translate(&g, 1), None);
    }

    #[test]
    fn trivial_group() {
        let g = cyclic(1).unwrap();
        let t = OrbitTable::new(&g, 16).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.orbits()[0].transversal, vec![0]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = cyclic(5).unwrap();
        assert_eq!(e_subsets(&g, 4), Err(Error::CapExceeded { order: 5, cap: 4 }));
        assert!(OrbitTable::new(&g, 4).is_err());
        assert!(ESubset::new(0b10).is_err());
    }

    // brute-force orbit partition: union-find over X ~ gX
    fn brute_orbits(g: &FiniteGroup) -> Vec<u64> {
        let n = g.order();
        let subsets: Vec<u64> = (0..1u64 << n).filter(|m| m & 1 == 1).collect();
        let mut rep: Vec<u64> = Vec::new();
        for &x in &subsets {
            let min = (0..n).map(|h| g.left_translate(h, x)).filter(|m| m & 1 == 1).min().unwrap();
            rep.push(min);
        }
        rep
    }

    #[test]
    fn orbit_table_invariants() {
        for g in all_groups() {
            let t = OrbitTable::new(&g, 16).unwrap();
            let n = g.order();
            let total: usize = t.orbits().iter().map(Orbit::size).sum();
            assert_eq!(total, 1 << (n - 1));
            let brute = brute_orbits(&g);
            for (k, y) in e_subsets(&g, 16).unwrap().into_iter().enumerate() {
                assert_eq!(t.rep_of(y).mask(), brute[k]);
                let h = t.translator(y);
                assert_eq!(g.left_translate(h, t.rep_of(y).mask()), y.mask());
            }
            for o in t.orbits() {
                let x = o.rep;
                let iso = o.isotropy;
                assert_eq!(o.transversal[0], 0);
                assert_eq!(o.size(), x.len() / iso.order());
                let mut sorted = o.transversal.clone();
                sorted.sort();
                assert_eq!(sorted, o.transversal);
                // X = ⋃ G_X g_i⁻¹, disjoint
                let mut seen = 0u64;
                for &gi in &o.transversal {
                    let coset = iso.elements().iter().fold(0u64, |m, &k| m | bit(g.mul(k, g.inv(gi))));
                    assert_eq!(seen & coset, 0);
                    seen |= coset;
                }
                assert_eq!(seen, x.mask());
                // isotropy(gX) = g G_X g⁻¹
                for h in 0..n {
                    if x.contains(g.inv(h)) {
                        let y = ESubset(g.left_translate(h, x.mask()));
                        assert_eq!(isotropy(&g, y), iso.conjugate(&g, h));
                    }
                }
            }
        }
    }
}
