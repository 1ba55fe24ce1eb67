//! The groupoid `Γ(G)` and exact arithmetic in its algebra `kΓ(G)`, which
//! is identified with the partial group algebra through `λ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subsets::{e_subsets, ESubset, OrbitTable};

pub type Coeff = BigRational;

pub fn rational(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The arrow `(g, X) : X → gX`. Ordered by `(X, g)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arrow {
    pub x: ESubset,
    pub g: usize,
}

impl Arrow {
    pub fn source(self) -> ESubset {
        self.x
    }

    pub fn target(self, grp: &FiniteGroup) -> ESubset {
        ESubset::from_mask_unchecked(grp.left_translate(self.g, self.x.mask()))
    }

    pub fn is_unit(self) -> bool {
        self.g == 0
    }
}

/// A finite sparse combination of arrows with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    group: u64,
    terms: BTreeMap<Arrow, Coeff>,
}

impl AlgebraElement {
    fn zero_for(group: u64) -> Self {
        Self { group, terms: BTreeMap::new() }
    }

    fn single(group: u64, a: Arrow) -> Self {
        let mut e = Self::zero_for(group);
        e.terms.insert(a, Coeff::one());
        e
    }

    pub fn terms(&self) -> &BTreeMap<Arrow, Coeff> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arrow, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &Arrow) -> Coeff {
        self.terms.get(a).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_group(&self, other: &Self) -> bool {
        self.group == other.group
    }

    fn accumulate(&mut self, a: Arrow, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero_for(self.group);
        }
        Self { group: self.group, terms: self.terms.iter().map(|(a, v)| (*a, v * c)).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch);
        }
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.accumulate(*a, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}·")?;
            }
            write!(f, "({}, {:#x})", a.g, a.x.mask())?;
        }
        Ok(())
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { group: self.group, terms: self.terms.iter().map(|(a, c)| (*a, -c)).collect() }
    }
}

// The operator forms panic on mixed groups; use the checked_* methods or
// `GroupoidAlgebra::multiply` for a `Result`.
impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        self.checked_add(rhs).expect("operands belong to different groups")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        self.checked_sub(rhs).expect("operands belong to different groups")
    }
}

/// `kΓ(G)` for a fixed group.
#[derive(Debug, Clone)]
pub struct GroupoidAlgebra {
    group: FiniteGroup,
    orbits: OrbitTable,
    subsets: Vec<ESubset>,
    fingerprint: u64,
}

impl GroupoidAlgebra {
    pub fn new(group: FiniteGroup, cap: usize) -> Result<Self> {
        let orbits = OrbitTable::new(&group, cap)?;
        let subsets = e_subsets(&group, cap)?;
        let fingerprint = group.fingerprint();
        Ok(Self { group, orbits, subsets, fingerprint })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn orbits(&self) -> &OrbitTable {
        &self.orbits
    }

    /// `P_e(G)`, ascending.
    pub fn subsets(&self) -> &[ESubset] {
        &self.subsets
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero_for(self.fingerprint)
    }

    pub fn owns(&self, x: &AlgebraElement) -> bool {
        x.group == self.fingerprint
    }

    pub fn arrow(&self, g: usize, x: u64) -> Result<Arrow> {
        let bad = Error::InvalidArrow { g, mask: x };
        if g >= self.group.order() || x & !self.group.full_mask() != 0 {
            return Err(bad);
        }
        let xs = ESubset::new(x).map_err(|_| bad.clone())?;
        if !xs.contains(self.group.inv(g)) {
            return Err(bad);
        }
        Ok(Arrow { x: xs, g })
    }

    pub fn basis(&self, a: Arrow) -> AlgebraElement {
        AlgebraElement::single(self.fingerprint, a)
    }

    /// Build an element from `(g, mask, coefficient)` triples.
    pub fn element<I>(&self, terms: I) -> Result<AlgebraElement>
    where
        I: IntoIterator<Item = (usize, u64, Coeff)>,
    {
        let mut out = self.zero();
        for (g, x, c) in terms {
            out.accumulate(self.arrow(g, x)?, c);
        }
        Ok(out)
    }

    /// All arrows, ordered by `(X, g)`.
    pub fn arrows(&self) -> Vec<Arrow> {
        let grp = &self.group;
        self.subsets
            .iter()
            .flat_map(|&x| (0..grp.order()).filter(move |&g| x.contains(grp.inv(g))).map(move |g| Arrow { x, g }))
            .collect()
    }

    pub fn target(&self, a: Arrow) -> ESubset {
        a.target(&self.group)
    }

    /// `(g,X)·(h,Y) = (gh, Y)` when `X = hY`.
    pub fn compose(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        (a.x == self.target(b)).then(|| Arrow { x: b.x, g: self.group.mul(a.g, b.g) })
    }

    /// `(g⁻¹, gX)`
    pub fn inverse(&self, a: Arrow) -> Arrow {
        Arrow { x: self.target(a), g: self.group.inv(a.g) }
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.owns(x) || !self.owns(y) {
            return Err(Error::GroupMismatch);
        }
        Ok(self.mul(x, y))
    }

    /// Same as [`multiply`](Self::multiply) but panics on mixed groups.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        assert!(self.owns(x) && self.owns(y), "operands belong to different groups");
        let mut out = self.zero();
        for (b, cb) in &y.terms {
            let t = self.target(*b);
            let lo = Arrow { x: t, g: 0 };
            let hi = Arrow { x: t, g: usize::MAX };
            for (a, ca) in x.terms.range(lo..=hi) {
                out.accumulate(Arrow { x: b.x, g: self.group.mul(a.g, b.g) }, ca * cb);
            }
        }
        out
    }

    pub fn product<'a, I>(&self, factors: I) -> AlgebraElement
    where
        I: IntoIterator<Item = &'a AlgebraElement>,
    {
        factors.into_iter().fold(self.unit(), |acc, f| self.mul(&acc, f))
    }

    /// `1 = Σ_X (e, X)`
    pub fn unit(&self) -> AlgebraElement {
        let mut out = self.zero();
        for &x in &self.subsets {
            out.terms.insert(Arrow { x, g: 0 }, Coeff::one());
        }
        out
    }

    /// `λ([g]) = Σ_{X ∋ e, g⁻¹} (g, X)`
    pub fn lambda_gen(&self, g: usize) -> AlgebraElement {
        let gi = self.group.inv(g);
        let mut out = self.zero();
        for &x in self.subsets.iter().filter(|x| x.contains(gi)) {
            out.terms.insert(Arrow { x, g }, Coeff::one());
        }
        out
    }

    /// `ε_g = Σ_{X ∋ e, g} (e, X)`
    pub fn eps_gen(&self, g: usize) -> AlgebraElement {
        let mut out = self.zero();
        for &x in self.subsets.iter().filter(|x| x.contains(g)) {
            out.terms.insert(Arrow { x, g: 0 }, Coeff::one());
        }
        out
    }

    /// `P_X = (e, X)`
    pub fn p_idem(&self, x: ESubset) -> AlgebraElement {
        self.basis(Arrow { x, g: 0 })
    }

    /// `Γ_X = Σ_{Y∼X} P_Y`
    pub fn gamma_idem(&self, x: ESubset) -> AlgebraElement {
        let mut out = self.zero();
        for &y in &self.orbits.orbit_of(x).members {
            out.terms.insert(Arrow { x: y, g: 0 }, Coeff::one());
        }
        out
    }

    /// `Γ_X` in its averaged form `(1/|G_X|) Σ_{g⁻¹∈X} P_{gX}`.
    pub fn gamma_weighted(&self, x: ESubset) -> AlgebraElement {
        let iso = crate::subsets::isotropy(&self.group, x).order() as i64;
        let w = rational(1, iso);
        let mut out = self.zero();
        for g in 0..self.group.order() {
            if let Some(y) = x.translate(&self.group, g) {
                out.accumulate(Arrow { x: y, g: 0 }, w.clone());
            }
        }
        out
    }

    /// `λ([g_1]) ⋯ λ([g_n])` together with whether it matches the normal
    /// form `ε_{g_1} ε_{g_1g_2} ⋯ ε_{g_1⋯g_n} λ([g_1⋯g_n])`.
    pub fn word(&self, gs: &[usize]) -> (AlgebraElement, bool) {
        let lhs = self.product(gs.iter().map(|&g| self.lambda_gen(g)).collect::<Vec<_>>().iter());
        (lhs.clone(), lhs == self.normal_form(gs))
    }

    pub fn normal_form(&self, gs: &[usize]) -> AlgebraElement {
        let mut prefix = 0;
        let mut eps = Vec::new();
        for &g in gs {
            prefix = self.group.mul(prefix, g);
            eps.push(self.eps_gen(prefix));
        }
        eps.push(self.lambda_gen(prefix));
        self.product(eps.iter())
    }

    /// `(#arrows, 2^{n-2}(n+1))`; for the trivial group the formula value
    /// is taken to be 1.
    pub fn dimension(&self) -> (usize, usize) {
        let n = self.group.order();
        let count = self.subsets.iter().map(|x| x.len()).sum();
        let formula = if n == 1 { 1 } else { (1usize << (n - 2)) * (n + 1) };
        (count, formula)
    }

    pub fn describe(&self, a: Arrow) -> String {
        format!("({}, {:#x})", self.group.name(a.g), a.x.mask())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_product, cyclic, symmetric};
    use alloc::vec;

    fn alg(n: usize) -> GroupoidAlgebra {
        GroupoidAlgebra::new(cyclic(n).unwrap(), 16).unwrap()
    }

    #[test]
    fn arrow_counts() {
        assert_eq!(alg(3).arrows().len(), 8);
        assert_eq!(alg(2).arrows().len(), 3);
        assert_eq!(alg(4).arrows().len(), 20);
        let s3 = GroupoidAlgebra::new(symmetric(3).unwrap(), 16).unwrap();
        assert_eq!(s3.dimension(), (112, 112));
        assert_eq!(alg(1).dimension(), (1, 1));
        let z2 = alg(2);
        let want: Vec<Arrow> = vec![z2.arrow(0, 0b01).unwrap(), z2.arrow(0, 0b11).unwrap(), z2.arrow(1, 0b11).unwrap()];
        assert_eq!(z2.arrows(), want);
    }

    #[test]
    fn invalid_arrows_rejected() {
        let a = alg(3);
        assert!(a.arrow(1, 0b011).is_err()); // g⁻¹ = g² ∉ {e,g}
        assert!(a.arrow(0, 0b110).is_err());
        assert!(a.arrow(5, 0b111).is_err());
    }

    #[test]
    fn c3_generators() {
        let a = alg(3);
        // λ(g) = (g,{e,g²}) + (g,C_3)
        let want = a.element([(1, 0b101, Coeff::one()), (1, 0b111, Coeff::one())]).unwrap();
        assert_eq!(a.lambda_gen(1), want);
        let eps = a.element([(0, 0b011, Coeff::one()), (0, 0b111, Coeff::one())]).unwrap();
        assert_eq!(a.eps_gen(1), eps);
        assert_eq!(a.lambda_gen(0), a.unit());
        let x1 = ESubset::new(0b011).unwrap();
        let g = a.element([(0, 0b011, Coeff::one()), (0, 0b101, Coeff::one())]).unwrap();
        assert_eq!(a.gamma_idem(x1), g);
        assert_eq!(a.gamma_weighted(x1), g);
        let l = a.lambda_gen(1);
        let li = a.lambda_gen(2);
        assert_eq!(a.product([&l, &li, &l]), l);
        assert_eq!(a.word(&[1, 2]).0, a.eps_gen(1));
        assert!(a.word(&[1, 1]).1);
        assert_eq!(a.word(&[]).0, a.unit());
    }

    #[test]
    fn z2_lambda() {
        let a = alg(2);
        assert_eq!(a.lambda_gen(1), a.basis(a.arrow(1, 0b11).unwrap()));
    }

    #[test]
    fn c3_composability_matches_brute_force() {
        let a = alg(3);
        let g = a.group().clone();
        for p in a.arrows() {
            for q in a.arrows() {
                // brute force: composable iff p's source is the set q lands on
                let tq: u64 = q.x.elements().fold(0, |m, h| m | 1 << g.mul(q.g, h));
                let want = (p.x.mask() == tq).then(|| (g.mul(p.g, q.g), q.x.mask()));
                assert_eq!(a.compose(p, q).map(|r| (r.g, r.x.mask())), want);
            }
        }
        // (g, X_1) is not an arrow: g⁻¹ = g² ∉ X_1 = {e,g}
        assert!(a.arrow(1, 0b011).is_err());
    }

    #[test]
    fn mixing_groups_is_an_error() {
        let a = alg(4);
        let b = GroupoidAlgebra::new(abelian_product(&[2, 2]).unwrap(), 16).unwrap();
        assert_eq!(a.multiply(&a.unit(), &b.unit()), Err(Error::GroupMismatch));
        assert_eq!(a.unit().checked_add(&b.unit()), Err(Error::GroupMismatch));
    }

    #[test]
    fn unit_and_inverse_arrows() {
        let a = alg(4);
        let one = a.unit();
        for arr in a.arrows() {
            let x = a.basis(arr);
            assert_eq!(a.mul(&one, &x), x);
            assert_eq!(a.mul(&x, &one), x);
            let inv = a.inverse(arr);
            assert_eq!(a.compose(inv, arr), Some(Arrow { x: arr.x, g: 0 }));
        }
        assert!(a.compose(a.arrow(0, 1).unwrap(), a.arrow(0, 0b1111).unwrap()).is_none());
    }
}
