//! The weak Hopf structure of `kΓ(G)`: `Δ(γ) = γ⊗γ`, `ε(γ) = 1`,
//! `S(γ) = γ⁻¹`, with the source and target maps, and identity checks for
//! the weak bialgebra, weak Hopf and Hopf-algebroid axioms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, Arrow, Coeff, GroupoidAlgebra};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::subsets::ESubset;

/// An element of `kΓ ⊗ kΓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Arrow, Arrow), Coeff>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<(Arrow, Arrow), Coeff> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, k: (Arrow, Arrow), c: Coeff) {
        let e = self.terms.entry(k).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// `x ⊗ y`
    pub fn outer(x: &AlgebraElement, y: &AlgebraElement) -> Self {
        let mut t = Self::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                t.accumulate((*a, *b), ca * cb);
            }
        }
        t
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self, alg: &GroupoidAlgebra) -> Self {
        let mut by_source: BTreeMap<(ESubset, ESubset), Vec<(&(Arrow, Arrow), &Coeff)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            by_source.entry((k.0.x, k.1.x)).or_default().push((k, c));
        }
        let mut out = Self::zero();
        for ((c, d), cr) in &other.terms {
            if let Some(left) = by_source.get(&(alg.target(*c), alg.target(*d))) {
                for ((a, b), cl) in left {
                    let ac = alg.compose(*a, *c).expect("composable by construction");
                    let bd = alg.compose(*b, *d).expect("composable by construction");
                    out.accumulate((ac, bd), *cl * cr);
                }
            }
        }
        out
    }
}

pub fn delta(x: &AlgebraElement) -> TensorElement {
    let mut t = TensorElement::zero();
    for (a, c) in x.iter() {
        t.accumulate((*a, *a), c.clone());
    }
    t
}

pub fn counit(x: &AlgebraElement) -> Coeff {
    x.iter().fold(Coeff::zero(), |s, (_, c)| s + c)
}

pub fn antipode(alg: &GroupoidAlgebra, x: &AlgebraElement) -> AlgebraElement {
    let terms = x.iter().map(|(a, c)| {
        let b = alg.inverse(*a);
        (b.g, b.x.mask(), c.clone())
    });
    alg.element(terms).expect("inverse of an arrow is an arrow")
}

/// `ε_s(γ) = s(γ)`
pub fn eps_s(alg: &GroupoidAlgebra, x: &AlgebraElement) -> AlgebraElement {
    alg.element(x.iter().map(|(a, c)| (0, a.x.mask(), c.clone()))).expect("unit arrow")
}

/// `ε_t(γ) = t(γ)`
pub fn eps_t(alg: &GroupoidAlgebra, x: &AlgebraElement) -> AlgebraElement {
    alg.element(x.iter().map(|(a, c)| (0, alg.target(*a).mask(), c.clone()))).expect("unit arrow")
}

/// `Δ(1) = Σ_Z (e,Z) ⊗ (e,Z)`
pub fn delta_unit(alg: &GroupoidAlgebra) -> TensorElement {
    delta(&alg.unit())
}

/// `1_(1) ε(h 1_(2))`, straight from the definition.
pub fn eps_s_definition(alg: &GroupoidAlgebra, h: &AlgebraElement) -> AlgebraElement {
    let mut out = alg.zero();
    for ((u1, u2), c) in delta_unit(alg).terms() {
        let w = counit(&alg.mul(h, &alg.basis(*u2))) * c;
        out = &out + &alg.basis(*u1).scale(&w);
    }
    out
}

/// `ε(1_(1) h) 1_(2)`
pub fn eps_t_definition(alg: &GroupoidAlgebra, h: &AlgebraElement) -> AlgebraElement {
    let mut out = alg.zero();
    for ((u1, u2), c) in delta_unit(alg).terms() {
        let w = counit(&alg.mul(&alg.basis(*u1), h)) * c;
        out = &out + &alg.basis(*u2).scale(&w);
    }
    out
}

/// `1_(1) ε(1_(2) h)`
pub fn eps_s_prime(alg: &GroupoidAlgebra, h: &AlgebraElement) -> AlgebraElement {
    let mut out = alg.zero();
    for ((u1, u2), c) in delta_unit(alg).terms() {
        let w = counit(&alg.mul(&alg.basis(*u2), h)) * c;
        out = &out + &alg.basis(*u1).scale(&w);
    }
    out
}

/// `ε(h 1_(1)) 1_(2)`
pub fn eps_t_prime(alg: &GroupoidAlgebra, h: &AlgebraElement) -> AlgebraElement {
    let mut out = alg.zero();
    for ((u1, u2), c) in delta_unit(alg).terms() {
        let w = counit(&alg.mul(h, &alg.basis(*u1))) * c;
        out = &out + &alg.basis(*u2).scale(&w);
    }
    out
}

type Triple = (Arrow, Arrow, Arrow);

fn triple_mul(alg: &GroupoidAlgebra, x: &BTreeMap<Triple, Coeff>, y: &BTreeMap<Triple, Coeff>) -> BTreeMap<Triple, Coeff> {
    let mut by_source: BTreeMap<(ESubset, ESubset, ESubset), Vec<(&Triple, &Coeff)>> = BTreeMap::new();
    for (k, c) in x {
        by_source.entry((k.0.x, k.1.x, k.2.x)).or_default().push((k, c));
    }
    let mut out: BTreeMap<Triple, Coeff> = BTreeMap::new();
    for ((d, e, f), cr) in y {
        if let Some(left) = by_source.get(&(alg.target(*d), alg.target(*e), alg.target(*f))) {
            for ((a, b, c), cl) in left {
                let k = (alg.compose(*a, *d).unwrap(), alg.compose(*b, *e).unwrap(), alg.compose(*c, *f).unwrap());
                *out.entry(k).or_insert_with(Coeff::zero) += *cl * cr;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Per-`X` product of the dimensions of `P_X ▷ M` and `P_X ▷ N`, and the
/// total, which is `dim(M ⊗_{A_par} N)`.
pub fn balanced_components(m: &[usize], n: &[usize]) -> Result<(Vec<usize>, usize)> {
    if m.len() != n.len() {
        return Err(Error::LengthMismatch(m.len(), n.len()));
    }
    let per: Vec<usize> = m.iter().zip(n).map(|(a, b)| a * b).collect();
    let total = per.iter().sum();
    Ok((per, total))
}

fn arrow_case(alg: &GroupoidAlgebra, names: &[&'static str], arrows: &[Arrow]) -> Vec<(&'static str, String)> {
    names.iter().zip(arrows).map(|(n, a)| (*n, alg.describe(*a))).collect()
}

/// Weak bialgebra axioms (multiplicativity of `Δ`, weak multiplicativity of
/// `ε`, the `Δ(1)` identity) and the weak Hopf antipode identities.
///
/// The counit axiom runs over all arrow triples when `|G| ≤ 6`. For larger
/// groups it runs over the triples with `xy` and `yz` both defined (the only
/// ones where either side is nonzero) plus one undefined case per `y`.
pub fn verify_weak_hopf(alg: &GroupoidAlgebra) -> Report {
    let arrows = alg.arrows();
    let mut r = Report::new();
    let one = Coeff::one();

    let mut c = Check::new("delta_multiplicative");
    for &x in &arrows {
        for &y in &arrows {
            let bx = alg.basis(x);
            let by = alg.basis(y);
            let lhs = delta(&alg.mul(&bx, &by));
            let rhs = delta(&bx).mul(&delta(&by), alg);
            c.record(lhs == rhs, || arrow_case(alg, &["x", "y"], &[x, y]));
        }
    }
    r.push(c);

    let mut c = Check::new("counit_law");
    for &x in &arrows {
        let bx = alg.basis(x);
        // (ε⊗id)Δ = id = (id⊗ε)Δ
        let left = delta(&bx).terms().iter().fold(alg.zero(), |s, ((a, b), k)| &s + &alg.basis(*b).scale(&(k * counit(&alg.basis(*a)))));
        let right = delta(&bx).terms().iter().fold(alg.zero(), |s, ((a, b), k)| &s + &alg.basis(*a).scale(&(k * counit(&alg.basis(*b)))));
        c.record(left == bx && right == bx, || arrow_case(alg, &["x"], &[x]));
    }
    r.push(c);

    // ε(xyz) = ε(x y_(1)) ε(y_(2) z) = ε(x y_(2)) ε(y_(1) z); on basis arrows
    // Δ(y) = y⊗y so both right-hand sides are ε(xy) ε(yz).
    let mut c = Check::new("counit_weak_multiplicative");
    let eps = |p: Option<Arrow>| if p.is_some() { one.clone() } else { Coeff::zero() };
    let triple = |x: Arrow, y: Arrow, z: Arrow, c: &mut Check| {
        let lhs = eps(alg.compose(x, y).and_then(|xy| alg.compose(xy, z)));
        let dy = delta(&alg.basis(y));
        let mut r1 = Coeff::zero();
        let mut r2 = Coeff::zero();
        for ((y1, y2), k) in dy.terms() {
            r1 += k * eps(alg.compose(x, *y1)) * eps(alg.compose(*y2, z));
            r2 += k * eps(alg.compose(x, *y2)) * eps(alg.compose(*y1, z));
        }
        c.record(lhs == r1 && lhs == r2, || arrow_case(alg, &["x", "y", "z"], &[x, y, z]));
    };
    if alg.group().order() <= 6 {
        for &x in &arrows {
            for &y in &arrows {
                for &z in &arrows {
                    triple(x, y, z, &mut c);
                }
            }
        }
    } else {
        let mut into: BTreeMap<ESubset, Vec<Arrow>> = BTreeMap::new();
        for &q in &arrows {
            into.entry(alg.target(q)).or_default().push(q);
        }
        for &y in &arrows {
            let ty = alg.target(y);
            let lefts: Vec<Arrow> = arrows.iter().copied().filter(|a| a.x == ty).collect();
            for &x in &lefts {
                for &z in into.get(&y.x).map(Vec::as_slice).unwrap_or(&[]) {
                    triple(x, y, z, &mut c);
                }
            }
            // one sample per y where xy is undefined
            if let Some(&x) = arrows.iter().find(|a| a.x != ty) {
                triple(x, y, y, &mut c);
            }
        }
    }
    r.push(c);

    // (Δ(1)⊗1)(1⊗Δ(1)) = Δ²(1) = (1⊗Δ(1))(Δ(1)⊗1)
    let mut c = Check::new("delta_unit_triple");
    let units: Vec<Arrow> = alg.subsets().iter().map(|&x| Arrow { x, g: 0 }).collect();
    let mut d1 = BTreeMap::new();
    let mut d2 = BTreeMap::new();
    let mut dd = BTreeMap::new();
    for &u in &units {
        dd.insert((u, u, u), one.clone());
        for &w in &units {
            d1.insert((u, u, w), one.clone());
            d2.insert((w, u, u), one.clone());
        }
    }
    let a = triple_mul(alg, &d1, &d2);
    let b = triple_mul(alg, &d2, &d1);
    c.record(a == dd && b == dd, || vec![("terms", format!("{} / {} / {}", a.len(), b.len(), dd.len()))]);
    r.push(c);

    let mut c = Check::new("delta_unit_not_unit_tensor");
    let d = delta_unit(alg);
    let uu = TensorElement::outer(&alg.unit(), &alg.unit());
    let weak = d != uu;
    if alg.group().order() >= 2 {
        c.record(weak, || vec![("terms", format!("{}", d.len()))]);
    } else {
        c.record(!weak, || vec![("terms", format!("{}", d.len()))]);
    }
    r.push(c);

    let mut es = Check::new("eps_s_is_source");
    let mut et = Check::new("eps_t_is_target");
    let mut esp = Check::new("eps_s_prime_is_target");
    let mut etp = Check::new("eps_t_prime_is_source");
    let mut idem = Check::new("eps_st_idempotent");
    let mut ant_s = Check::new("antipode_eps_s");
    let mut ant_t = Check::new("antipode_eps_t");
    let mut ant_3 = Check::new("antipode_triple");
    for &x in &arrows {
        let bx = alg.basis(x);
        let s = eps_s(alg, &bx);
        let t = eps_t(alg, &bx);
        es.record(s == alg.p_idem(x.x) && eps_s_definition(alg, &bx) == s, || arrow_case(alg, &["h"], &[x]));
        et.record(t == alg.p_idem(alg.target(x)) && eps_t_definition(alg, &bx) == t, || arrow_case(alg, &["h"], &[x]));
        esp.record(eps_s_prime(alg, &bx) == t, || arrow_case(alg, &["h"], &[x]));
        etp.record(eps_t_prime(alg, &bx) == s, || arrow_case(alg, &["h"], &[x]));
        idem.record(eps_s(alg, &s) == s && eps_t(alg, &t) == t, || arrow_case(alg, &["h"], &[x]));
        // Δ(h) = h⊗h, Δ²(h) = h⊗h⊗h
        let sum_s = delta(&bx).terms().iter().fold(alg.zero(), |acc, ((a, b), k)| {
            &acc + &alg.mul(&antipode(alg, &alg.basis(*a)), &alg.basis(*b)).scale(k)
        });
        let sum_t = delta(&bx).terms().iter().fold(alg.zero(), |acc, ((a, b), k)| {
            &acc + &alg.mul(&alg.basis(*a), &antipode(alg, &alg.basis(*b))).scale(k)
        });
        ant_s.record(sum_s == s, || arrow_case(alg, &["h"], &[x]));
        ant_t.record(sum_t == t, || arrow_case(alg, &["h"], &[x]));
        let sx = antipode(alg, &bx);
        ant_3.record(alg.product([&sx, &bx, &sx]) == sx, || arrow_case(alg, &["h"], &[x]));
    }
    for ch in [es, et, esp, etp, idem, ant_s, ant_t, ant_3] {
        r.push(ch);
    }

    let mut c = Check::new("eps_images_commute");
    for &u in &units {
        for &w in &units {
            let a = eps_s(alg, &alg.basis(u));
            let b = eps_t(alg, &alg.basis(w));
            c.record(alg.mul(&a, &b) == alg.mul(&b, &a), || arrow_case(alg, &["u", "w"], &[u, w]));
        }
    }
    r.push(c);
    r
}

/// All words over `G` of length `≤ max_len`, shortest first.
pub fn words(order: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for x in 0..order {
                let mut w = out[i].clone();
                w.push(x);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

/// `λ` intertwines the source, counit, antipode and comultiplication of the
/// Hopf algebroid structures on generator words of length `≤ max_len`.
pub fn verify_lambda_hopf_algebroid(alg: &GroupoidAlgebra, max_len: usize) -> Report {
    let g = alg.group();
    let n = g.order();
    let lam: Vec<AlgebraElement> = (0..n).map(|x| alg.lambda_gen(x)).collect();
    let wname = |w: &[usize]| w.iter().map(|&x| String::from(g.name(x))).collect::<Vec<_>>().join(" ");
    let mut source = Check::new("lambda_source_map");
    for x in 0..n {
        let img = alg.mul(&lam[x], &lam[g.inv(x)]);
        source.record(img == alg.eps_gen(x), || vec![("g", String::from(g.name(x)))]);
    }
    let mut cnt = Check::new("lambda_counit");
    let mut ant = Check::new("lambda_antipode");
    let mut com = Check::new("lambda_comultiplication");
    let balance = delta_unit(alg);
    for w in words(n, max_len) {
        let lw = alg.product(w.iter().map(|&x| &lam[x]));
        let mut prefix = 0;
        let mut eps = Vec::new();
        for &x in &w {
            prefix = g.mul(prefix, x);
            eps.push(alg.eps_gen(prefix));
        }
        let lhs = alg.product(eps.iter());
        cnt.record(lhs == eps_t(alg, &lw), || vec![("word", wname(&w))]);
        let rev: Vec<usize> = w.iter().rev().map(|&x| g.inv(x)).collect();
        let lrev = alg.product(rev.iter().map(|&x| &lam[x]));
        ant.record(lrev == antipode(alg, &lw), || vec![("word", wname(&w))]);
        let projected = balance.mul(&TensorElement::outer(&lw, &lw), alg);
        com.record(projected == delta(&lw), || vec![("word", wname(&w))]);
    }
    let mut r = Report::new();
    r.push(source);
    r.push(cnt);
    r.push(ant);
    r.push(com);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    #[test]
    fn basis_formulas() {
        let a = GroupoidAlgebra::new(cyclic(3).unwrap(), 16).unwrap();
        let x = a.arrow(1, 0b101).unwrap();
        let bx = a.basis(x);
        assert_eq!(delta(&bx).terms().keys().copied().collect::<Vec<_>>(), vec![(x, x)]);
        assert_eq!(counit(&a.unit()), Coeff::from_integer(4.into()));
        assert_eq!(antipode(&a, &bx), a.basis(a.arrow(2, 0b011).unwrap()));
        assert_eq!(eps_s(&a, &bx), a.p_idem(x.x));
        assert_eq!(eps_t(&a, &bx), a.p_idem(a.target(x)));
        assert_eq!(eps_s(&a, &a.unit()), a.unit());
    }

    #[test]
    fn c3_and_z2_pass() {
        for n in [1, 2, 3] {
            let a = GroupoidAlgebra::new(cyclic(n).unwrap(), 16).unwrap();
            let r = verify_weak_hopf(&a);
            assert!(r.passed(), "{r}");
            let r = verify_lambda_hopf_algebroid(&a, 3);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn balanced() {
        assert_eq!(balanced_components(&[1, 1, 1, 1], &[1, 1, 1, 1]).unwrap().1, 4);
        assert_eq!(balanced_components(&[0, 1, 1, 0], &[0, 1, 1, 0]).unwrap().1, 2);
        assert_eq!(balanced_components(&[1, 0, 0, 0], &[0, 1, 1, 0]).unwrap().1, 0);
        assert!(balanced_components(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(words(3, 2).len(), 1 + 3 + 9);
        assert_eq!(words(2, 0), vec![Vec::<usize>::new()]);
    }
}
