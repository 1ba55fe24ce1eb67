use std::time::Instant;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use parfus_core::algebra::{rational, GroupoidAlgebra};
use parfus_core::foundations::verify_foundations;
use parfus_core::group::{abelian_product, cyclic, dihedral, quaternion, symmetric, FiniteGroup};

fn groups_upto_8() -> Vec<FiniteGroup> {
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
fn dimension_formula_by_direct_count() {
    for g in groups_upto_8() {
        let n = g.order();
        // count pairs (g, X) straight from the definition
        let mut count = 0;
        for x in 0u64..(1 << n) {
            if x & 1 == 0 {
                continue;
            }
            for h in 0..n {
                if x >> g.inv(h) & 1 == 1 {
                    count += 1;
                }
            }
        }
        let a = GroupoidAlgebra::new(g, 16).unwrap();
        let (c, f) = a.dimension();
        assert_eq!(c, count);
        assert_eq!(c, f);
        assert_eq!(a.arrows().len(), c);
    }
}

struct Lcg(u64);
impl Lcg {
    fn next(&mut self) -> i64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 33) % 7) as i64 - 3
    }
}

/// Dense product over the arrow basis, composing arrows from raw masks.
#[test]
fn sparse_product_matches_dense_oracle() {
    let mut rng = Lcg(7);
    for g in [cyclic(3).unwrap(), cyclic(4).unwrap(), symmetric(3).unwrap()] {
        let a = GroupoidAlgebra::new(g.clone(), 16).unwrap();
        let arrows: Vec<(usize, u64)> = a.arrows().iter().map(|r| (r.g, r.x.mask())).collect();
        let idx = |p: (usize, u64)| arrows.iter().position(|&q| q == p).unwrap();
        let shift = |h: usize, m: u64| (0..g.order()).filter(|&k| m >> k & 1 == 1).fold(0u64, |acc, k| acc | 1 << g.mul(h, k));
        for _ in 0..20 {
            let u: Vec<i64> = arrows.iter().map(|_| if rng.next() > 0 { rng.next() } else { 0 }).collect();
            let v: Vec<i64> = arrows.iter().map(|_| if rng.next() > 0 { rng.next() } else { 0 }).collect();
            let mut w = vec![0i64; arrows.len()];
            for (i, &(g1, x1)) in arrows.iter().enumerate() {
                for (j, &(g2, x2)) in arrows.iter().enumerate() {
                    if x1 == shift(g2, x2) {
                        w[idx((g.mul(g1, g2), x2))] += u[i] * v[j];
                    }
                }
            }
            let to_elem = |c: &[i64]| {
                a.element(arrows.iter().zip(c).map(|(&(h, m), &k)| (h, m, rational(k, 1)))).unwrap()
            };
            let got = a.mul(&to_elem(&u), &to_elem(&v));
            for (k, &p) in arrows.iter().enumerate() {
                let c: BigRational = got.coeff(&a.arrow(p.0, p.1).unwrap());
                assert_eq!(c.to_integer().to_i64().unwrap(), w[k]);
                assert!(c.fract().is_zero());
            }
        }
    }
}

#[test]
fn foundations_pass_for_all_groups_up_to_order_8() {
    let t = Instant::now();
    for g in groups_upto_8() {
        let label = g.label().to_string();
        let a = GroupoidAlgebra::new(g, 16).unwrap();
        let r = verify_foundations(&a);
        assert!(r.passed(), "{label}\n{r}");
        assert!(r.checks.iter().all(|c| c.cases > 0), "{label}\n{r}");
    }
    eprintln!("foundations up to order 8: {:?}", t.elapsed());
}

#[test]
fn blocks_are_isomorphisms_up_to_order_8() {
    let t = Instant::now();
    for g in groups_upto_8() {
        let label = g.label().to_string();
        let a = GroupoidAlgebra::new(g, 16).unwrap();
        let r = parfus_core::blocks::verify_blocks(&a);
        assert!(r.passed(), "{label}\n{r}");
    }
    eprintln!("blocks up to order 8: {:?}", t.elapsed());
}

#[test]
fn weak_hopf_and_hopf_algebroid_up_to_order_6() {
    use parfus_core::weak_hopf::{verify_lambda_hopf_algebroid, verify_weak_hopf};
    let t = Instant::now();
    for g in groups_upto_8().into_iter().filter(|g| g.order() <= 6) {
        let label = g.label().to_string();
        let a = GroupoidAlgebra::new(g, 16).unwrap();
        let r = verify_weak_hopf(&a);
        assert!(r.passed(), "{label}\n{r}");
        let r = verify_lambda_hopf_algebroid(&a, 3);
        assert!(r.passed(), "{label}\n{r}");
    }
    eprintln!("weak hopf up to order 6: {:?}", t.elapsed());
}
