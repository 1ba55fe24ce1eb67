//! Exhaustive checks of the basic identities of `kΓ(G)`: the idempotents
//! `P_X`, `Γ_X`, `ε_g`, the partial-representation axioms for `λ`, the
//! normal form of words, and the fact that `λ` hits every arrow.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, Arrow, GroupoidAlgebra};
use crate::report::{Check, Report};
use crate::subsets::ESubset;

fn hex(x: ESubset) -> String {
    format!("{:#x}", x.mask())
}

pub fn verify_foundations(a: &GroupoidAlgebra) -> Report {
    let g = a.group();
    let n = g.order();
    let name = |x: usize| String::from(g.name(x));
    let subsets = a.subsets();
    let lam: Vec<AlgebraElement> = (0..n).map(|x| a.lambda_gen(x)).collect();
    let eps: Vec<AlgebraElement> = (0..n).map(|x| a.eps_gen(x)).collect();
    let unit = a.unit();
    let mut r = Report::new();

    let mut c = Check::new("px_partition_of_unity");
    let sum = subsets.iter().fold(a.zero(), |s, &x| &s + &a.p_idem(x));
    c.record(sum == unit, || vec![("sum", format!("{sum}"))]);
    r.push(c);

    let mut c = Check::new("px_orthogonality");
    let p: Vec<AlgebraElement> = subsets.iter().map(|&x| a.p_idem(x)).collect();
    for (i, &x) in subsets.iter().enumerate() {
        for (j, &y) in subsets.iter().enumerate() {
            let prod = a.mul(&p[i], &p[j]);
            let want = if i == j { p[i].clone() } else { a.zero() };
            c.record(prod == want, || vec![("X", hex(x)), ("Y", hex(y))]);
        }
    }
    r.push(c);

    // λ(g) P_X = [[g⁻¹ ∈ X]] P_{gX} λ(g)
    let mut c = Check::new("px_translation");
    for x in 0..n {
        for (i, &s) in subsets.iter().enumerate() {
            let lhs = a.mul(&lam[x], &p[i]);
            let rhs = match s.translate(g, x) {
                Some(t) => a.mul(&a.p_idem(t), &lam[x]),
                None => a.zero(),
            };
            c.record(lhs == rhs, || vec![("g", name(x)), ("X", hex(s))]);
        }
    }
    r.push(c);

    let reps: Vec<ESubset> = a.orbits().reps().collect();
    let gam: Vec<AlgebraElement> = reps.iter().map(|&x| a.gamma_idem(x)).collect();

    let mut c = Check::new("gamma_commutes_with_lambda");
    for (i, &x) in reps.iter().enumerate() {
        for h in 0..n {
            c.record(a.mul(&gam[i], &lam[h]) == a.mul(&lam[h], &gam[i]), || vec![("X", hex(x)), ("g", name(h))]);
        }
    }
    r.push(c);

    let arrows = a.arrows();
    let mut c = Check::new("gamma_commutes_with_arrows");
    for (i, &x) in reps.iter().enumerate() {
        for &arr in &arrows {
            let b = a.basis(arr);
            c.record(a.mul(&gam[i], &b) == a.mul(&b, &gam[i]), || vec![("X", hex(x)), ("arrow", a.describe(arr))]);
        }
    }
    r.push(c);

    let mut c = Check::new("gamma_orthogonality");
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            let want = if i == j { gam[i].clone() } else { a.zero() };
            c.record(a.mul(&gam[i], &gam[j]) == want, || vec![("X", hex(x)), ("Y", hex(y))]);
        }
    }
    r.push(c);

    let mut c = Check::new("gamma_partition_of_unity");
    let sum = gam.iter().fold(a.zero(), |s, t| &s + t);
    c.record(sum == unit && sum.len() == subsets.len(), || vec![("terms", format!("{}", sum.len()))]);
    r.push(c);

    let mut c = Check::new("gamma_weighted_form");
    for &x in subsets {
        c.record(a.gamma_weighted(x) == a.gamma_idem(x), || vec![("X", hex(x))]);
    }
    r.push(c);

    let mut c = Check::new("pr1_identity");
    c.record(lam[0] == unit, || vec![("lambda(e)", format!("{}", lam[0]))]);
    r.push(c);

    let mut c2 = Check::new("pr2");
    let mut c3 = Check::new("pr3");
    let mut iso = Check::new("lambda_partial_isometry");
    for x in 0..n {
        let xi = g.inv(x);
        iso.record(a.product([&lam[x], &lam[xi], &lam[x]]) == lam[x], || vec![("g", name(x))]);
        for y in 0..n {
            let yi = g.inv(y);
            let xy = g.mul(x, y);
            // [g][h][h⁻¹] = [gh][h⁻¹]
            let l = a.product([&lam[x], &lam[y], &lam[yi]]);
            let rr = a.mul(&lam[xy], &lam[yi]);
            c2.record(l == rr, || vec![("g", name(x)), ("h", name(y))]);
            // [g⁻¹][g][h] = [g⁻¹][gh]
            let l = a.product([&lam[xi], &lam[x], &lam[y]]);
            let rr = a.mul(&lam[xi], &lam[xy]);
            c3.record(l == rr, || vec![("g", name(x)), ("h", name(y))]);
        }
    }
    r.push(c2);
    r.push(c3);
    r.push(iso);

    let mut idem = Check::new("eps_idempotent");
    let mut comm = Check::new("eps_commute");
    let mut cov = Check::new("eps_covariance");
    let mut from = Check::new("eps_from_lambda");
    for x in 0..n {
        idem.record(a.mul(&eps[x], &eps[x]) == eps[x], || vec![("g", name(x))]);
        from.record(a.mul(&lam[x], &lam[g.inv(x)]) == eps[x], || vec![("g", name(x))]);
        for y in 0..n {
            comm.record(a.mul(&eps[x], &eps[y]) == a.mul(&eps[y], &eps[x]), || vec![("g", name(x)), ("h", name(y))]);
            // [g] ε_h = ε_{gh} [g]
            let l = a.mul(&lam[x], &eps[y]);
            let rr = a.mul(&eps[g.mul(x, y)], &lam[x]);
            cov.record(l == rr, || vec![("g", name(x)), ("h", name(y))]);
        }
    }
    r.push(idem);
    r.push(comm);
    r.push(cov);
    r.push(from);

    let mut c = Check::new("normal_form");
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..=3 {
        let prev: Vec<Vec<usize>> = words.iter().filter(|w| w.len() == len - 1).cloned().collect();
        for w in prev {
            for x in 0..n {
                let mut v = w.clone();
                v.push(x);
                words.push(v);
            }
        }
    }
    for w in &words {
        let lhs = a.product(w.iter().map(|&x| &lam[x]));
        c.record(lhs == a.normal_form(w), || vec![("word", w.iter().map(|&x| name(x)).collect::<Vec<_>>().join(" "))]);
    }
    r.push(c);

    // Π_{r∈X} ε_r Π_{s∉X} (1 − ε_s) = (e, X)
    let mut c = Check::new("surjectivity_idempotent");
    let comp: Vec<AlgebraElement> = eps.iter().map(|e| &unit - e).collect();
    for &x in subsets {
        let prod = a.product((0..n).map(|s| if x.contains(s) { &eps[s] } else { &comp[s] }));
        c.record(prod == a.p_idem(x), || vec![("X", hex(x))]);
    }
    r.push(c);

    let mut c = Check::new("surjectivity_arrow");
    for &arr in &arrows {
        let got = a.mul(&lam[arr.g], &a.p_idem(arr.x));
        c.record(got == a.basis(arr), || vec![("arrow", a.describe(arr))]);
    }
    r.push(c);

    let mut c = Check::new("unit_law");
    for &arr in &arrows {
        let b = a.basis(arr);
        c.record(a.mul(&unit, &b) == b && a.mul(&b, &unit) == b, || vec![("arrow", a.describe(arr))]);
    }
    r.push(c);

    r.push(associativity(a, &arrows));
    r
}

/// Exhaustive over arrow triples for `|G| ≤ 6`; above that, over all
/// composable chains plus all pairs (which covers every defined product).
fn associativity(a: &GroupoidAlgebra, arrows: &[Arrow]) -> Check {
    let mut c = Check::new("associativity");
    let comp = |x: Option<Arrow>, y: Option<Arrow>| match (x, y) {
        (Some(x), Some(y)) => a.compose(x, y),
        _ => None,
    };
    let why = |p: Arrow, q: Arrow, s: Arrow| vec![("a", a.describe(p)), ("b", a.describe(q)), ("c", a.describe(s))];
    if a.group().order() <= 6 {
        for &p in arrows {
            for &q in arrows {
                let pq = a.compose(p, q);
                for &s in arrows {
                    let l = comp(pq, Some(s));
                    let rr = comp(Some(p), a.compose(q, s));
                    c.record(l == rr, || why(p, q, s));
                }
            }
        }
    } else {
        let mut into: alloc::collections::BTreeMap<ESubset, Vec<Arrow>> = alloc::collections::BTreeMap::new();
        for &q in arrows {
            into.entry(a.target(q)).or_default().push(q);
        }
        for &p in arrows {
            for &q in into.get(&p.x).map(Vec::as_slice).unwrap_or(&[]) {
                let pq = a.compose(p, q);
                for &s in into.get(&q.x).map(Vec::as_slice).unwrap_or(&[]) {
                    let l = comp(pq, Some(s));
                    let rr = comp(Some(p), a.compose(q, s));
                    c.record(l.is_some() && l == rr, || why(p, q, s));
                }
            }
        }
    }
    c
}
