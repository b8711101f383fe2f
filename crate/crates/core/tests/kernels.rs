use pointlike::fixtures;
use pointlike::grp::{
    find_embedding, h_kernel, h_kernel_closed_form, isomorphic, normal_subgroups, GroupTable, Variety,
};
use pointlike::{BitSet, FiniteSemigroup};

fn perm_group(degree: usize, gens: &[Vec<usize>]) -> GroupTable {
    let (s, _) = FiniteSemigroup::from_transformations(degree, gens, 1000).unwrap();
    GroupTable::from_semigroup(&s).unwrap()
}

fn test_groups() -> Vec<(&'static str, GroupTable)> {
    let mut v: Vec<(&'static str, GroupTable)> = vec![
        ("Z1", GroupTable::cyclic(1)),
        ("Z2", GroupTable::cyclic(2)),
        ("Z3", GroupTable::cyclic(3)),
        ("Z4", GroupTable::cyclic(4)),
        ("Z6", GroupTable::cyclic(6)),
        ("Z8", GroupTable::cyclic(8)),
        ("Z12", GroupTable::cyclic(12)),
        ("S3", GroupTable::from_semigroup(&fixtures::s3()).unwrap()),
    ];
    v.push(("V4", perm_group(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])));
    v.push(("D4", perm_group(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])));
    v.push(("A4", perm_group(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])));
    v.push(("D6", perm_group(6, &[vec![1, 2, 3, 4, 5, 0], vec![5, 4, 3, 2, 1, 0]])));
    v.push(("Z2xZ6", perm_group(8, &[vec![1, 0, 2, 3, 4, 5, 6, 7], vec![0, 1, 3, 4, 5, 6, 7, 2]])));
    // Q8 in its regular representation: i = 1, j = 2, -1 = 4 on {±1, ±i, ±j, ±k}
    let q8_table = quaternion_table();
    v.push(("Q8", GroupTable::new(8, q8_table).unwrap()));
    v
}

fn quaternion_table() -> Vec<usize> {
    // elements (sign, unit) with unit in {1, i, j, k}; index = 4*sign + unit
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let mut t = vec![0; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (neg, u) = unit_mul(x % 4, y % 4);
            let sign = (x / 4) ^ (y / 4) ^ usize::from(neg);
            t[x * 8 + y] = 4 * sign + u;
        }
    }
    t
}

fn subset_is_normal_subgroup(g: &GroupTable, set: &[usize]) -> bool {
    let inside = |x: usize| set.contains(&x);
    set.contains(&g.identity())
        && set.iter().all(|&a| set.iter().all(|&b| inside(g.mul(a, b))))
        && (0..g.size()).all(|x| set.iter().all(|&a| inside(g.mul(g.mul(g.inv(x), a), x))))
}

/// Quotient built from explicit cosets.
fn coset_quotient(g: &GroupTable, n: &[usize]) -> (usize, Vec<Vec<usize>>) {
    let coset_of = |x: usize| -> Vec<usize> {
        let mut c: Vec<usize> = n.iter().map(|&a| g.mul(x, a)).collect();
        c.sort_unstable();
        c
    };
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.size() {
        let c = coset_of(x);
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let m = cosets.len();
    let table = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let p = coset_of(g.mul(cosets[i][0], cosets[j][0]));
                    cosets.iter().position(|c| *c == p).unwrap()
                })
                .collect()
        })
        .collect();
    (m, table)
}

fn order_of(table: &[Vec<usize>], id: usize, x: usize) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != id {
        y = table[y][x];
        k += 1;
    }
    k
}

fn derived_len_one(m: usize, table: &[Vec<usize>]) -> bool {
    // iterate commutator subgroups by brute force
    let id = (0..m).find(|&e| (0..m).all(|x| table[e][x] == x)).unwrap();
    let inv = |x: usize| (0..m).find(|&y| table[x][y] == id).unwrap();
    let mut current: Vec<usize> = (0..m).collect();
    loop {
        let mut next: Vec<usize> = vec![id];
        for &a in &current {
            for &b in &current {
                let c = table[table[table[inv(a)][inv(b)]][a]][b];
                if !next.contains(&c) {
                    next.push(c);
                }
            }
        }
        let mut grow = true;
        while grow {
            grow = false;
            for i in 0..next.len() {
                for j in 0..next.len() {
                    let p = table[next[i]][next[j]];
                    if !next.contains(&p) {
                        next.push(p);
                        grow = true;
                    }
                }
            }
        }
        if next.len() == current.len() {
            return next.len() == 1;
        }
        current = next;
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

/// Membership decided from the table alone.
fn oracle_member(h: &Variety, m: usize, table: &[Vec<usize>]) -> bool {
    let id = (0..m).find(|&e| (0..m).all(|x| table[e][x] == x)).unwrap();
    match h {
        Variety::Trivial => m == 1,
        Variety::Abelian => (0..m).all(|x| (0..m).all(|y| table[x][y] == table[y][x])),
        Variety::PGroup(p) => prime_factors(m).iter().all(|&q| q as u64 == *p),
        // nilpotent iff for every prime the p-elements number exactly the p-part of |G|
        Variety::Nilpotent => prime_factors(m).into_iter().all(|p| {
            let mut part = 1;
            while m % (part * p) == 0 {
                part *= p;
            }
            let count = (0..m)
                .filter(|&x| prime_factors(order_of(table, id, x)).iter().all(|&q| q == p))
                .count();
            count == part
        }),
        Variety::Solvable => derived_len_one(m, table),
        Variety::All => true,
    }
}

fn oracle_kernel(g: &GroupTable, h: &Variety) -> BitSet {
    let n = g.size();
    let mut best: Option<Vec<usize>> = None;
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if !subset_is_normal_subgroup(g, &set) {
            continue;
        }
        let (m, table) = coset_quotient(g, &set);
        if oracle_member(h, m, &table) && best.as_ref().is_none_or(|b| set.len() < b.len()) {
            best = Some(set);
        }
    }
    BitSet::from_elems(n, best.unwrap())
}

const VARIETIES: [&str; 7] = ["triv", "ab", "p:2", "p:3", "nilpotent", "solvable", "all"];

#[test]
fn kernels_agree_with_brute_force() {
    for (name, g) in test_groups() {
        for v in VARIETIES {
            let h: Variety = v.parse().unwrap();
            let oracle = oracle_kernel(&g, &h);
            let enumerated = h_kernel(&g, &h, 64).unwrap().kernel;
            let closed = h_kernel_closed_form(&g, &h);
            assert_eq!(enumerated, oracle, "{name} {v}: enumeration");
            assert_eq!(closed, oracle, "{name} {v}: closed form");
            let (m, table) = coset_quotient(&g, &oracle.to_vec());
            assert!(oracle_member(&h, m, &table));
        }
    }
}

#[test]
fn membership_agrees_with_oracle() {
    for (name, g) in test_groups() {
        let table: Vec<Vec<usize>> = (0..g.size()).map(|x| (0..g.size()).map(|y| g.mul(x, y)).collect()).collect();
        for v in VARIETIES {
            let h: Variety = v.parse().unwrap();
            assert_eq!(h.is_member(&g), oracle_member(&h, g.size(), &table), "{name} {v}");
        }
    }
}

#[test]
fn normal_subgroup_counts() {
    let counts: Vec<(&str, usize)> = test_groups()
        .iter()
        .map(|(n, g)| (*n, normal_subgroups(g, 64).unwrap().len()))
        .collect();
    let expect = [("S3", 3), ("D4", 6), ("A4", 3), ("Q8", 6), ("Z12", 6), ("V4", 5)];
    for (name, want) in expect {
        let got = counts.iter().find(|(n, _)| *n == name).unwrap().1;
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn embeddings() {
    let groups = test_groups();
    let get = |n: &str| groups.iter().find(|(m, _)| *m == n).unwrap().1.clone();
    assert!(find_embedding(&get("Z2"), &get("S3")).is_some());
    assert!(find_embedding(&get("Z3"), &get("A4")).is_some());
    assert!(find_embedding(&get("V4"), &get("A4")).is_some());
    assert!(find_embedding(&get("Z4"), &get("A4")).is_none());
    assert!(find_embedding(&get("Z4"), &get("Q8")).is_some());
    assert!(find_embedding(&get("V4"), &get("Q8")).is_none());
    assert!(!isomorphic(&get("D4"), &get("Q8")));
    assert!(isomorphic(&get("D6"), &get("D6")));
    assert!(!isomorphic(&get("Z6"), &get("S3")));
}
