// Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use pointlike::FiniteSemigroup;
use proptest::prelude::*;

/// Transformation semigroups on up to four points with one to three generators.
pub fn small_semigroup() -> impl Strategy<Value = FiniteSemigroup> {
    (2usize..=3)
        .prop_flat_map(|deg| {
            let map = prop::collection::vec(0..deg, deg);
            (Just(deg), prop::collection::vec(map, 1..=3))
        })
        .prop_map(|(deg, gens)| {
            FiniteSemigroup::from_transformations(deg, &gens, 64)
                .expect("small closure")
                .0
        })
}

/// `S^I` as a plain table with the identity appended.
pub fn monoid_mul(s: &FiniteSemigroup) -> impl Fn(usize, usize) -> usize + '_ {
    let n = s.size();
    move |x, y| {
        if x == n {
            y
        } else if y == n {
            x
        } else {
            s.mul(x, y)
        }
    }
}

/// `(xS^I, S^I x, S^I x S^I)` computed by enumeration.
pub fn ideals(s: &FiniteSemigroup, x: usize) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
    let n = s.size();
    let mul = monoid_mul(s);
    let right = (0..=n).map(|u| mul(x, u)).collect();
    let left = (0..=n).map(|u| mul(u, x)).collect();
    let mut two = BTreeSet::new();
    for u in 0..=n {
        for v in 0..=n {
            two.insert(mul(mul(u, x), v));
        }
    }
    (right, left, two)
}

pub type Subset = BTreeSet<usize>;

pub fn set_mul(s: &FiniteSemigroup, a: &Subset, b: &Subset) -> Subset {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| s.mul(x, y)))
        .collect()
}

/// Least complex containing `seed`, by iterating the three closure rules
/// over the whole power set until nothing changes.
pub fn naive_complex(s: &FiniteSemigroup, seed: &[Subset]) -> BTreeSet<Subset> {
    let n = s.size();
    let mut k: BTreeSet<Subset> = (0..n).map(|x| Subset::from([x])).collect();
    k.extend(seed.iter().cloned());
    loop {
        let mut next = k.clone();
        for a in &k {
            for b in &k {
                next.insert(set_mul(s, a, b));
            }
            for mask in 1u32..(1 << n) {
                let sub: Subset = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                if sub.is_subset(a) {
                    next.insert(sub);
                }
            }
        }
        if next == k {
            return k;
        }
        k = next;
    }
}
