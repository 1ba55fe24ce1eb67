//! Structure of finite abelian groups: elementary divisors and generating
//! sets adapted to a subgroup.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{bit, bits, FiniteGroup, GroupMorphism, Subgroup};
use crate::smith::smith_normal_form;

/// One cyclic factor `Z_{p^n}` with a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicFactor {
    pub prime: usize,
    pub exponent: u32,
    pub generator: usize,
}

impl CyclicFactor {
    pub fn order(&self) -> usize {
        self.prime.pow(self.exponent)
    }
}

/// `G ≅ Z_{p_1^{n_1}} × ⋯ × Z_{p_k^{n_k}}` realized by explicit generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianDecomposition {
    pub components: Vec<CyclicFactor>,
    coords: Vec<Vec<usize>>,
}

impl AbelianDecomposition {
    fn build(g: &FiniteGroup, components: Vec<CyclicFactor>) -> Option<Self> {
        let n = g.order();
        let mut coords = vec![Vec::new(); n];
        let mut seen = 0u64;
        let orders: Vec<usize> = components.iter().map(CyclicFactor::order).collect();
        if orders.iter().product::<usize>() != n {
            return None;
        }
        let mut t = vec![0usize; components.len()];
        loop {
            let x = components.iter().zip(&t).fold(0, |acc, (c, &ti)| g.mul(acc, g.pow(c.generator, ti)));
            if seen & bit(x) != 0 {
                return None;
            }
            seen |= bit(x);
            coords[x] = t.clone();
            // odometer, last component fastest
            let mut i = components.len();
            loop {
                if i == 0 {
                    return Some(Self { components, coords });
                }
                i -= 1;
                t[i] += 1;
                if t[i] < orders[i] {
                    break;
                }
                t[i] = 0;
            }
        }
    }

    /// Exponents `t_i` with `x = a_1^{t_1} ⋯ a_k^{t_k}`.
    pub fn coordinates(&self, x: usize) -> &[usize] {
        &self.coords[x]
    }

    pub fn element(&self, g: &FiniteGroup, t: &[usize]) -> usize {
        self.components.iter().zip(t).fold(0, |acc, (c, &ti)| g.mul(acc, g.pow(c.generator, ti % c.order())))
    }

    pub fn orders(&self) -> Vec<usize> {
        self.components.iter().map(CyclicFactor::order).collect()
    }
}

fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn prime_power_exponent(p: usize, mut q: usize) -> u32 {
    let mut e = 0;
    while q > 1 {
        q /= p;
        e += 1;
    }
    e
}

/// Split `P` (a `p`-subgroup of abelian `g`) into cyclic factors, largest
/// first. Backtracks if a greedy choice cannot be completed.
fn split_p_group(g: &FiniteGroup, p_part: u64, span: u64, max_order: usize, out: &mut Vec<usize>) -> bool {
    if span == p_part {
        return true;
    }
    let mut cands: Vec<(usize, usize)> = bits(p_part & !span)
        .map(|x| (g.element_order(x), x))
        .filter(|&(o, _)| o <= max_order)
        .collect();
    cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (o, x) in cands {
        let new_span = g.closure(span | bit(x));
        if new_span.count_ones() as usize != span.count_ones() as usize * o {
            continue;
        }
        out.push(x);
        if split_p_group(g, p_part, new_span, o, out) {
            return true;
        }
        out.pop();
    }
    false
}

/// Elementary-divisor decomposition of an abelian group, primes ascending
/// and exponents descending within a prime.
pub fn elementary_decomposition(g: &FiniteGroup) -> Result<AbelianDecomposition> {
    if !g.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let mut components = Vec::new();
    for (p, _) in prime_factors(g.order()) {
        let p_part = (0..g.order())
            .filter(|&x| {
                let o = g.element_order(x);
                prime_factors(o).iter().all(|&(q, _)| q == p)
            })
            .fold(0u64, |m, x| m | bit(x));
        let mut gens = Vec::new();
        let found = split_p_group(g, p_part, 1, usize::MAX, &mut gens);
        debug_assert!(found);
        components.extend(gens.into_iter().map(|x| CyclicFactor {
            prime: p,
            exponent: prime_power_exponent(p, g.element_order(x)),
            generator: x,
        }));
    }
    AbelianDecomposition::build(g, components).ok_or(Error::NonAbelian)
}

/// Generators of `G` together with divisors `d_i` such that
/// `H = ⟨a_1^{d_1}, …, a_k^{d_k}⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub decomposition: AbelianDecomposition,
    pub divisors: Vec<usize>,
}

/// Find a decomposition of `G` adapted to `H` via the Smith normal form of
/// the lattice of `H` inside the coordinate lattice of `G`.
///
/// Not every subgroup admits such a basis (`⟨(1,2)⟩ ≤ Z_2 × Z_8` does
/// not); in that case [`Error::NotAdapted`] is returned.
pub fn adapted_basis(g: &FiniteGroup, h: &Subgroup) -> Result<AdaptedBasis> {
    let base = elementary_decomposition(g)?;
    if !g.is_subgroup_mask(h.mask()) {
        return Err(Error::NotSubgroup(h.mask()));
    }
    let orders = base.orders();
    let k = orders.len();
    if k == 0 {
        return Ok(AdaptedBasis { decomposition: base, divisors: Vec::new() });
    }
    // one SNF per primary component; mixing primes breaks independence
    let mut gens = Vec::new();
    let mut divs = Vec::new();
    let mut lo = 0;
    while lo < k {
        let p = base.components[lo].prime;
        let hi = (lo..k).find(|&i| base.components[i].prime != p).unwrap_or(k);
        let h_p: Vec<usize> = h
            .elements()
            .into_iter()
            .filter(|&x| prime_factors(g.element_order(x)).iter().all(|&(q, _)| q == p))
            .collect();
        // columns: coordinates of H_p, then the relations q_i e_i
        let mut cols: Vec<Vec<i64>> = h_p.iter().map(|&x| base.coordinates(x)[lo..hi].iter().map(|&t| t as i64).collect()).collect();
        for i in lo..hi {
            cols.push((lo..hi).map(|j| if i == j { orders[i] as i64 } else { 0 }).collect());
        }
        let matrix: Vec<Vec<i64>> = (0..hi - lo).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let snf = smith_normal_form(&matrix);
        // candidate generators b_i = images of the columns of P^{-1}
        for i in 0..hi - lo {
            let mut coords = vec![0usize; k];
            for j in 0..hi - lo {
                coords[lo + j] = snf.row_ops_inv[j][i].rem_euclid(orders[lo + j] as i64) as usize;
            }
            let b = base.element(g, &coords);
            let ob = g.element_order(b);
            if ob == 1 {
                return Err(Error::NotAdapted);
            }
            gens.push(CyclicFactor { prime: p, exponent: prime_power_exponent(p, ob), generator: b });
            divs.push(num_integer::gcd(snf.diagonal[i].unsigned_abs() as usize, ob));
        }
        lo = hi;
    }
    let mut paired: Vec<(CyclicFactor, usize)> = gens.into_iter().zip(divs).collect();
    paired.sort_by(|a, b| a.0.prime.cmp(&b.0.prime).then(b.0.exponent.cmp(&a.0.exponent)));
    let (gens, divisors): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
    let decomposition = AbelianDecomposition::build(g, gens).ok_or(Error::NotAdapted)?;
    let generated = decomposition
        .components
        .iter()
        .zip(&divisors)
        .fold(1u64, |m, (c, &d)| m | bit(g.pow(c.generator, d)));
    if g.closure(generated) != h.mask() {
        return Err(Error::NotAdapted);
    }
    Ok(AdaptedBasis { decomposition, divisors })
}

/// A surjective morphism `φ : G → H` for a subgroup `H` of an abelian `G`.
#[derive(Debug, Clone)]
pub struct SubgroupProjection {
    /// `H` re-indexed as a group of its own.
    pub subgroup: FiniteGroup,
    /// local index in `subgroup` → index in `G`
    pub embedding: Vec<usize>,
    pub morphism: GroupMorphism,
    /// Present when `φ` is the exponent map `a_i ↦ a_i^{d_i}` of an adapted
    /// basis.
    pub adapted: Option<AdaptedBasis>,
}

impl SubgroupProjection {
    /// `φ(x)` as an element of `G`.
    pub fn apply_in_parent(&self, x: usize) -> usize {
        self.embedding[self.morphism.apply(x)]
    }
}

/// The exponent map onto `H`. Uses an adapted basis when one exists and
/// otherwise matches cyclic factors of `H` to factors of `G` prime by prime.
pub fn subgroup_projection(g: &FiniteGroup, h: &Subgroup) -> Result<SubgroupProjection> {
    let (hg, emb) = h.as_group(g);
    let mut local = vec![usize::MAX; g.order()];
    for (i, &x) in emb.iter().enumerate() {
        local[x] = i;
    }
    let (images, adapted) = match adapted_basis(g, h) {
        Ok(ab) => {
            let imgs: Vec<usize> = ab
                .decomposition
                .components
                .iter()
                .zip(&ab.divisors)
                .map(|(c, &d)| g.pow(c.generator, d))
                .collect();
            (Some((ab.decomposition.clone(), imgs)), Some(ab))
        }
        Err(Error::NotAdapted) => (None, None),
        Err(e) => return Err(e),
    };
    let (dec, imgs) = match images {
        Some(x) => x,
        None => {
            let dg = elementary_decomposition(g)?;
            let dh = elementary_decomposition(&hg)?;
            let mut imgs = vec![0usize; dg.components.len()];
            for p in dg.components.iter().map(|c| c.prime).collect::<alloc::collections::BTreeSet<_>>() {
                let gi: Vec<usize> = (0..dg.components.len()).filter(|&i| dg.components[i].prime == p).collect();
                let hi: Vec<usize> = (0..dh.components.len()).filter(|&i| dh.components[i].prime == p).collect();
                for (a, b) in gi.iter().zip(&hi) {
                    imgs[*a] = emb[dh.components[*b].generator];
                }
            }
            (dg, imgs)
        }
    };
    let map: Vec<usize> = (0..g.order())
        .map(|x| {
            let y = dec
                .coordinates(x)
                .iter()
                .zip(&imgs)
                .fold(0, |acc, (&t, &img)| g.mul(acc, g.pow(img, t)));
            local[y]
        })
        .collect();
    if map.contains(&usize::MAX) {
        return Err(Error::InvalidMorphism(alloc::string::String::from("image leaves the subgroup")));
    }
    let morphism = GroupMorphism::new(g, &hg, map)?;
    if !morphism.is_surjective() {
        return Err(Error::InvalidMorphism(alloc::string::String::from("projection is not surjective")));
    }
    Ok(SubgroupProjection { subgroup: hg, embedding: emb, morphism, adapted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_product, cyclic, subgroups, symmetric};

    #[test]
    fn decompositions() {
        let z4 = cyclic(4).unwrap();
        let d = elementary_decomposition(&z4).unwrap();
        assert_eq!(d.components, vec![CyclicFactor { prime: 2, exponent: 2, generator: 1 }]);

        let z6 = cyclic(6).unwrap();
        let d = elementary_decomposition(&z6).unwrap();
        assert_eq!(d.components.iter().map(|c| (c.prime, c.exponent)).collect::<Vec<_>>(), vec![(2, 1), (3, 1)]);
        assert_eq!(z6.element_order(d.components[0].generator), 2);
        assert_eq!(z6.element_order(d.components[1].generator), 3);

        let klein = abelian_product(&[2, 2]).unwrap();
        let d = elementary_decomposition(&klein).unwrap();
        assert_eq!(d.components.iter().map(|c| (c.prime, c.exponent)).collect::<Vec<_>>(), vec![(2, 1), (2, 1)]);

        assert_eq!(elementary_decomposition(&symmetric(3).unwrap()), Err(Error::NonAbelian));
    }

    #[test]
    fn coordinates_are_unique() {
        let g = abelian_product(&[2, 4, 3]).unwrap();
        let d = elementary_decomposition(&g).unwrap();
        assert_eq!(d.orders().iter().product::<usize>(), 24);
        for x in 0..g.order() {
            assert_eq!(d.element(&g, d.coordinates(x)), x);
        }
    }

    #[test]
    fn adapted_cyclic() {
        let z4 = cyclic(4).unwrap();
        let h = Subgroup::new(&z4, 0b0101).unwrap();
        let ab = adapted_basis(&z4, &h).unwrap();
        assert_eq!(ab.decomposition.components[0].generator, 1);
        assert_eq!(ab.divisors, vec![2]);
        let whole = adapted_basis(&z4, &Subgroup::whole(&z4)).unwrap();
        assert_eq!(whole.divisors, vec![1]);
    }

    #[test]
    fn adapted_klein_diagonal() {
        // x = a (index 2), y = b (index 1), xy = index 3
        let k = abelian_product(&[2, 2]).unwrap();
        let h = Subgroup::new(&k, 0b1001).unwrap();
        let ab = adapted_basis(&k, &h).unwrap();
        let gens: Vec<usize> = ab.decomposition.components.iter().map(|c| c.generator).collect();
        let pairs: Vec<(usize, usize)> = gens.iter().copied().zip(ab.divisors.iter().copied()).collect();
        assert!(pairs.contains(&(3, 1)), "{pairs:?}");
        assert_eq!(ab.divisors.iter().filter(|&&d| d == 2).count(), 1);
    }

    #[test]
    fn non_adapted_subgroup_is_reported() {
        let g = abelian_product(&[2, 8]).unwrap();
        // (1,2) has index 8 + 2
        let h = Subgroup::generated(&g, &[10]).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(adapted_basis(&g, &h), Err(Error::NotAdapted));
        let proj = subgroup_projection(&g, &h).unwrap();
        assert!(proj.adapted.is_none());
        assert!(proj.morphism.is_surjective());
    }

    #[test]
    fn projections_for_all_small_subgroups() {
        for g in [cyclic(8).unwrap(), abelian_product(&[2, 4]).unwrap(), abelian_product(&[2, 2, 3]).unwrap()] {
            for h in subgroups(&g) {
                let p = subgroup_projection(&g, &h).unwrap();
                assert!(p.morphism.is_surjective());
                if let Some(ab) = &p.adapted {
                    for (c, &d) in ab.decomposition.components.iter().zip(&ab.divisors) {
                        assert_eq!(p.apply_in_parent(c.generator), g.pow(c.generator, d));
                    }
                }
            }
        }
    }
}
