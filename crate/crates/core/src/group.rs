//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order` into the table and the identity is always
//! index 0. Orders are capped at 64 so that any subset of a group fits a
//! single `u64` bitmask.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported group order.
pub const MAX_ORDER: usize = 64;

/// Iterate over the set bits of `mask`, ascending.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

/// A finite group with exact multiplication and inverse tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<u8>,
    inverse: Vec<u8>,
    label: String,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validate a Cayley table and build the group.
    ///
    /// The identity must sit at index 0. Associativity is checked on all
    /// triples.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        for (r, row) in table.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::EntryOutOfRange { row: r, col: c, value: v });
                }
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::NoIdentity);
            }
        }
        let full = if n == 64 { u64::MAX } else { bit(n) - 1 };
        for i in 0..n {
            let row = table[i].iter().fold(0u64, |m, &v| m | bit(v));
            let col = (0..n).fold(0u64, |m, r| m | bit(table[r][i]));
            if row != full || col != full {
                return Err(Error::NotLatinSquare(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i][j];
                for k in 0..n {
                    if table[ij][k] != table[i][table[j][k]] {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        let cayley: Vec<u8> = table.iter().flatten().map(|&v| v as u8).collect();
        let inverse = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == 0).unwrap() as u8)
            .collect();
        let names = (0..n)
            .map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") })
            .collect();
        Ok(Self { order: n, cayley, inverse, label: format!("group of order {n}"), names })
    }

    fn from_parts(order: usize, cayley: Vec<u8>, label: String, names: Vec<String>) -> Self {
        let inverse = (0..order)
            .map(|x| (0..order).find(|&y| cayley[x * order + y] == 0).unwrap() as u8)
            .collect();
        Self { order, cayley, inverse, label, names }
    }

    /// Rename the group, e.g. after loading it from a file.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g h g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    /// Mask with every element set.
    pub fn full_mask(&self) -> u64 {
        if self.order == 64 {
            u64::MAX
        } else {
            bit(self.order) - 1
        }
    }

    /// FNV-1a hash of the Cayley table; used to catch mixing elements of
    /// different groups.
    pub fn fingerprint(&self) -> u64 {
        self.cayley.iter().fold(0xcbf2_9ce4_8422_2325u64 ^ self.order as u64, |h, &b| {
            (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `{g·h : h ∈ mask}`
    pub fn left_translate(&self, g: usize, mask: u64) -> u64 {
        bits(mask).fold(0, |m, h| m | bit(self.mul(g, h)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// Closure of a set of elements under multiplication.
    pub fn closure(&self, gens: u64) -> u64 {
        let mut mask = gens | 1;
        let mut frontier: Vec<usize> = bits(mask).collect();
        while let Some(x) = frontier.pop() {
            for y in bits(gens | 1) {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if mask & bit(z) == 0 {
                        mask |= bit(z);
                        frontier.push(z);
                    }
                }
            }
        }
        mask
    }

    pub fn is_subgroup_mask(&self, mask: u64) -> bool {
        mask & 1 == 1
            && mask & !self.full_mask() == 0
            && bits(mask).all(|a| bits(mask).all(|b| mask & bit(self.mul(a, b)) != 0))
    }
}

/// Cyclic group `Z_n`, element `i` standing for `a^i`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
    }
    let cayley = (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u8)).collect();
    let names = (0..n).map(|i| power_name("a", i)).collect();
    Ok(FiniteGroup::from_parts(n, cayley, format!("Z{n}"), names))
}

fn power_name(sym: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

/// Direct product `G × H`; element `(g, h)` has index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (m, k) = (g.order(), h.order());
    let n = m * k;
    if n > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
    }
    let mut cayley = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            let x = g.mul(a / k, b / k) * k + h.mul(a % k, b % k);
            cayley[a * n + b] = x as u8;
        }
    }
    let names = (0..n)
        .map(|x| {
            let (l, r) = (x / k, x % k);
            match (l, r) {
                (0, 0) => "e".to_string(),
                _ => format!("({},{})", g.name(l), h.name(r)),
            }
        })
        .collect();
    Ok(FiniteGroup::from_parts(n, cayley, format!("{}x{}", g.label(), h.label()), names))
}

/// Product of cyclic groups `Z_{n1} × ⋯ × Z_{nk}`, with generators named
/// `a, b, c, …` and mixed-radix indexing (first factor most significant).
pub fn abelian_product(factors: &[usize]) -> Result<FiniteGroup> {
    let n: usize = factors.iter().product();
    if factors.is_empty() || factors.contains(&0) || n > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
    }
    let coords = |mut x: usize| {
        let mut c = vec![0; factors.len()];
        for (i, &f) in factors.iter().enumerate().rev() {
            c[i] = x % f;
            x /= f;
        }
        c
    };
    let index = |c: &[usize]| c.iter().zip(factors).fold(0, |acc, (&ci, &f)| acc * f + ci);
    let mut cayley = vec![0u8; n * n];
    for a in 0..n {
        let ca = coords(a);
        for b in 0..n {
            let cb = coords(b);
            let s: Vec<usize> = (0..factors.len()).map(|i| (ca[i] + cb[i]) % factors[i]).collect();
            cayley[a * n + b] = index(&s) as u8;
        }
    }
    let names = (0..n)
        .map(|x| {
            let s: String = coords(x)
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| power_name(&((b'a' + i as u8) as char).to_string(), c))
                .collect();
            if s.is_empty() {
                "e".to_string()
            } else {
                s
            }
        })
        .collect();
    let label = factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("x");
    Ok(FiniteGroup::from_parts(n, cayley, label, names))
}

/// Symmetric group on `n` points; permutations in lexicographic order and
/// composition `(στ)(i) = σ(τ(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let order: usize = (1..=n).product();
    if n == 0 || order > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order, max: MAX_ORDER });
    }
    let perms = permutations(n);
    let index = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p).unwrap();
    let mut cayley = vec![0u8; order * order];
    for (a, pa) in perms.iter().enumerate() {
        for (b, pb) in perms.iter().enumerate() {
            let c: Vec<usize> = (0..n).map(|i| pa[pb[i]]).collect();
            cayley[a * order + b] = index(&c) as u8;
        }
    }
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    Ok(FiniteGroup::from_parts(order, cayley, format!("S{n}"), names))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Dihedral group of order `2n`: index `k + n·j` stands for `r^k s^j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    let order = 2 * n;
    if n == 0 || order > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order, max: MAX_ORDER });
    }
    let mut cayley = vec![0u8; order * order];
    for a in 0..order {
        let (k1, j1) = (a % n, a / n);
        for b in 0..order {
            let (k2, j2) = (b % n, b / n);
            // r^k1 s^j1 r^k2 s^j2 = r^(k1 ± k2) s^(j1+j2)
            let k = if j1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            cayley[a * order + b] = (k + n * ((j1 + j2) % 2)) as u8;
        }
    }
    let names = (0..order)
        .map(|x| match (x % n, x / n) {
            (0, 0) => "e".to_string(),
            (k, 0) => power_name("r", k),
            (0, _) => "s".to_string(),
            (k, _) => format!("{}s", power_name("r", k)),
        })
        .collect();
    Ok(FiniteGroup::from_parts(order, cayley, format!("D{n}"), names))
}

/// Quaternion group `Q8` in the order `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> FiniteGroup {
    // unit quaternions as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
    let decode = |x: usize| (x % 2, x / 2);
    let encode = |neg: usize, axis: usize| axis * 2 + neg;
    let mul_axis = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, b) => (0, b),
            (a, 0) => (0, a),
            (a, b) if a == b => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let mut cayley = vec![0u8; 64];
    for a in 0..8 {
        let (sa, xa) = decode(a);
        for b in 0..8 {
            let (sb, xb) = decode(b);
            let (s, x) = mul_axis(xa, xb);
            cayley[a * 8 + b] = encode((sa + sb + s) % 2, x) as u8;
        }
    }
    let names = ["e", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_parts(8, cayley, "Q8".to_string(), names)
}

/// A subgroup, stored as a bitmask over the parent's element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    mask: u64,
}

impl Subgroup {
    pub fn new(g: &FiniteGroup, mask: u64) -> Result<Self> {
        if g.is_subgroup_mask(mask) {
            Ok(Self { mask })
        } else {
            Err(Error::NotSubgroup(mask))
        }
    }

    pub(crate) fn from_mask_unchecked(mask: u64) -> Self {
        Self { mask }
    }

    pub fn trivial() -> Self {
        Self { mask: 1 }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self { mask: g.full_mask() }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        let mut m = 0u64;
        for &x in gens {
            if x >= g.order() {
                return Err(Error::IndexOutOfRange { index: x, limit: g.order() });
            }
            m |= bit(x);
        }
        Ok(Self { mask: g.closure(m) })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn order(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, x: usize) -> bool {
        x < 64 && self.mask & bit(x) != 0
    }

    pub fn elements(&self) -> Vec<usize> {
        bits(self.mask).collect()
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { mask: self.mask & other.mask }
    }

    /// `g H g⁻¹`
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        Subgroup { mask: bits(self.mask).fold(0, |m, h| m | bit(g.conj(x, h))) }
    }

    /// Re-index the subgroup as a group in its own right. Returns the group
    /// and the embedding (local index → parent index); local indices follow
    /// the parent order, so the identity stays at 0.
    pub fn as_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let emb = self.elements();
        let k = emb.len();
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in emb.iter().enumerate() {
            local[x] = i;
        }
        let mut cayley = vec![0u8; k * k];
        for i in 0..k {
            for j in 0..k {
                cayley[i * k + j] = local[g.mul(emb[i], emb[j])] as u8;
            }
        }
        let names = emb.iter().map(|&x| g.name(x).to_string()).collect();
        let label = format!("subgroup {:#x} of {}", self.mask, g.label());
        (FiniteGroup::from_parts(k, cayley, label, names), emb)
    }
}

/// All subgroups of `g`, sorted by `(order, mask)`.
pub fn subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<u64> = BTreeSet::new();
    let mut frontier: Vec<u64> = Vec::new();
    for x in 0..g.order() {
        let c = g.closure(bit(x));
        if found.insert(c) {
            frontier.push(c);
        }
    }
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h & bit(x) == 0 {
                let c = g.closure(h | bit(x));
                if found.insert(c) {
                    frontier.push(c);
                }
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().map(|mask| Subgroup { mask }).collect();
    out.sort_by_key(|s| (s.order(), s.mask));
    out
}

/// A homomorphism between two finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMorphism {
    map: Vec<usize>,
    target_order: usize,
}

impl GroupMorphism {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidMorphism(format!(
                "table has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidMorphism("image out of range".to_string()));
        }
        if map[0] != 0 {
            return Err(Error::InvalidMorphism("identity not preserved".to_string()));
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::InvalidMorphism(format!("not multiplicative at ({x},{y})")));
                }
            }
        }
        Ok(Self { map, target_order: target.order() })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn image_mask(&self) -> u64 {
        self.map.iter().fold(0, |m, &y| m | bit(y))
    }

    pub fn kernel_mask(&self) -> u64 {
        self.map.iter().enumerate().filter(|(_, &y)| y == 0).fold(0, |m, (x, _)| m | bit(x))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask().count_ones() as usize == self.target_order
    }

    /// Set preimage of a subset of the target.
    pub fn preimage(&self, mask: u64) -> u64 {
        self.map.iter().enumerate().filter(|(_, &y)| mask & bit(y) != 0).fold(0, |m, (x, _)| m | bit(x))
    }
}
