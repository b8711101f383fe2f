//! Finite groups as tables, normal subgroups, membership oracles for the
//! built-in pseudovarieties of groups, and kernels.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{inconsistency, resource, Error, Result};
use crate::sgp::FiniteSemigroup;

/// Largest group order for which normal subgroups are enumerated.
pub const DEFAULT_GROUP_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    size: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates a row-major table as a group.
    pub fn new(size: usize, table: Vec<usize>) -> Result<Self> {
        let sgp = FiniteSemigroup::from_flat(size, table.clone(), false)?;
        let identity = sgp
            .identity()
            .ok_or_else(|| Error::Invalid("table has no identity".into()))?;
        let mut inverse = vec![usize::MAX; size];
        for x in 0..size {
            inverse[x] = (0..size)
                .find(|&y| table[x * size + y] == identity && table[y * size + x] == identity)
                .ok_or_else(|| Error::Invalid(format!("element {x} has no inverse")))?;
        }
        Ok(GroupTable {
            size,
            table,
            identity,
            inverse,
        })
    }

    pub(crate) fn from_trusted(size: usize, table: Vec<usize>, identity: usize) -> Self {
        let mut inverse = vec![0; size];
        for x in 0..size {
            inverse[x] = (0..size)
                .find(|&y| table[x * size + y] == identity)
                .expect("group element without inverse");
        }
        GroupTable {
            size,
            table,
            identity,
            inverse,
        }
    }

    /// Interprets a semigroup table as a group, if it is one.
    pub fn from_semigroup(s: &FiniteSemigroup) -> Result<Self> {
        let n = s.size();
        let table = (0..n).flat_map(|x| s.row(x).to_vec()).collect();
        GroupTable::new(n, table)
    }

    pub fn to_semigroup(&self) -> FiniteSemigroup {
        FiniteSemigroup::from_flat_unchecked(self.size, self.table.clone())
    }

    /// Cyclic group of order `n`, element `i` standing for `i mod n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        GroupTable::from_trusted(n, table, 0)
    }

    /// Group of permutations given by a closed list; composition applies the
    /// left factor first.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = perms.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let c: Vec<usize> = perms[i].iter().map(|&p| perms[j][p]).collect();
                table[i * n + j] = *index
                    .get(c.as_slice())
                    .ok_or_else(|| Error::Invalid("permutations are not closed".into()))?;
            }
        }
        GroupTable::new(n, table)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn order_of(&self, x: usize) -> usize {
        let mut p = x;
        let mut k = 1;
        while p != self.identity {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let inv = self.mul(self.inv(x), self.inv(y));
        self.mul(inv, xy)
    }

    pub fn trivial_subgroup(&self) -> BitSet {
        BitSet::singleton(self.size, self.identity)
    }

    pub fn whole(&self) -> BitSet {
        BitSet::full(self.size)
    }

    /// Subgroup generated by `gens` (closure under products; finite groups
    /// need no explicit inverses).
    pub fn generated(&self, gens: &BitSet) -> BitSet {
        let mut set = self.trivial_subgroup();
        let mut queue = vec![self.identity];
        let gens: Vec<usize> = gens.iter().collect();
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: &BitSet) -> bool {
        set.contains(self.identity)
            && set
                .iter()
                .all(|x| set.iter().all(|y| set.contains(self.mul(x, y))))
    }

    pub fn is_normal(&self, set: &BitSet) -> bool {
        self.is_subgroup(set)
            && (0..self.size).all(|g| {
                let gi = self.inv(g);
                set.iter().all(|n| set.contains(self.mul(self.mul(gi, n), g)))
            })
    }

    /// Subgroup generated by all commutators `[a, b]`, `a ∈ A`, `b ∈ B`.
    pub fn commutator_subgroup(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let mut gens = BitSet::new(self.size);
        for x in a.iter() {
            for y in b.iter() {
                gens.insert(self.commutator(x, y));
            }
        }
        self.generated(&gens)
    }

    pub fn conjugacy_class(&self, x: usize) -> BitSet {
        BitSet::from_elems(
            self.size,
            (0..self.size).map(|g| self.mul(self.mul(self.inv(g), x), g)),
        )
    }

    /// Subgroup table on the elements of `set`, plus the list mapping new
    /// indices to old ones.
    pub fn subgroup_table(&self, set: &BitSet) -> (GroupTable, Vec<usize>) {
        let elems = set.to_vec();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let n = elems.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = pos[&self.mul(elems[i], elems[j])];
            }
        }
        (GroupTable::from_trusted(n, table, pos[&self.identity]), elems)
    }

    /// The same group with elements renamed by `perm` (old `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> GroupTable {
        let n = self.size;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.mul(x, y)];
            }
        }
        GroupTable::from_trusted(n, table, perm[self.identity])
    }
}

/// The built-in decidable pseudovarieties of groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variety {
    Trivial,
    Abelian,
    PGroup(u64),
    Nilpotent,
    Solvable,
    All,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        match spec.trim() {
            "triv" => Ok(Variety::Trivial),
            "ab" => Ok(Variety::Abelian),
            "nilpotent" => Ok(Variety::Nilpotent),
            "solvable" => Ok(Variety::Solvable),
            "all" => Ok(Variety::All),
            other => {
                let p = other
                    .strip_prefix("p:")
                    .ok_or_else(|| Error::Parse(format!("unknown variety `{other}`")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in `{other}`")))?;
                if is_prime(p) {
                    Ok(Variety::PGroup(p))
                } else {
                    Err(Error::NotPrime(p))
                }
            }
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::Trivial => write!(f, "triv"),
            Variety::Abelian => write!(f, "ab"),
            Variety::PGroup(p) => write!(f, "p:{p}"),
            Variety::Nilpotent => write!(f, "nilpotent"),
            Variety::Solvable => write!(f, "solvable"),
            Variety::All => write!(f, "all"),
        }
    }
}

pub fn parse_variety(spec: &str) -> Result<Variety> {
    spec.parse()
}

fn is_power_of(mut n: usize, p: u64) -> bool {
    let p = p as usize;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Terminal term of a descending series `G = N_0 ⊇ N_1 ⊇ ...`.
fn stable_term(g: &GroupTable, step: impl Fn(&BitSet) -> BitSet) -> BitSet {
    let mut cur = g.whole();
    loop {
        let next = step(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn derived_series_limit(g: &GroupTable) -> BitSet {
    stable_term(g, |n| g.commutator_subgroup(n, n))
}

pub fn lower_central_limit(g: &GroupTable) -> BitSet {
    let whole = g.whole();
    stable_term(g, |n| g.commutator_subgroup(n, &whole))
}

impl Variety {
    pub fn is_member(&self, g: &GroupTable) -> bool {
        match *self {
            Variety::Trivial => g.size() == 1,
            Variety::Abelian => g.is_abelian(),
            Variety::PGroup(p) => is_power_of(g.size(), p),
            Variety::Nilpotent => lower_central_limit(g).len() == 1,
            Variety::Solvable => derived_series_limit(g).len() == 1,
            Variety::All => true,
        }
    }

    /// Whether every member of `self` is a member of `other` (for the
    /// built-in kinds).
    pub fn is_contained_in(&self, other: &Variety) -> bool {
        use Variety::*;
        let rank = |v: &Variety| match v {
            Trivial => 0,
            Abelian | PGroup(_) => 1,
            Nilpotent => 2,
            Solvable => 3,
            All => 4,
        };
        match (self, other) {
            (a, b) if a == b => true,
            (Trivial, _) => true,
            (Abelian, PGroup(_)) | (PGroup(_), Abelian) | (PGroup(_), PGroup(_)) => false,
            (a, b) => rank(a) < rank(b),
        }
    }
}

pub fn is_member(h: &Variety, g: &GroupTable) -> bool {
    h.is_member(g)
}

/// All normal subgroups, sorted by (order, elements).
pub fn normal_subgroups(g: &GroupTable, cap: usize) -> Result<Vec<BitSet>> {
    if g.size() > cap {
        return Err(resource(
            format!("enumerating normal subgroups of a group of order {}", g.size()),
            cap,
        ));
    }
    let mut classes: Vec<BitSet> = Vec::new();
    let mut seen = BitSet::new(g.size());
    for x in 0..g.size() {
        if !seen.contains(x) {
            let c = g.conjugacy_class(x);
            seen.union_with(&c);
            classes.push(c);
        }
    }
    let mut found: BTreeSet<BitSet> = BTreeSet::new();
    let mut queue = vec![g.trivial_subgroup()];
    found.insert(g.trivial_subgroup());
    while let Some(n) = queue.pop() {
        for c in &classes {
            if c.is_subset(&n) {
                continue;
            }
            let mut gens = n.clone();
            gens.union_with(c);
            let m = g.generated(&gens);
            if found.insert(m.clone()) {
                queue.push(m);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Coset group `G/N` together with the projection `G -> G/N`.
pub fn quotient(g: &GroupTable, n: &BitSet) -> Result<(GroupTable, Vec<usize>)> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let mut proj = vec![usize::MAX; g.size()];
    let mut reps = Vec::new();
    for x in 0..g.size() {
        if proj[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for k in n.iter() {
            proj[g.mul(x, k)] = id;
        }
    }
    let q = reps.len();
    let mut table = vec![0; q * q];
    for i in 0..q {
        for j in 0..q {
            table[i * q + j] = proj[g.mul(reps[i], reps[j])];
        }
    }
    Ok((GroupTable::from_trusted(q, table, proj[g.identity()]), proj))
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    pub kernel: BitSet,
    pub quotient: GroupTable,
    pub witness_normals: Vec<BitSet>,
}

/// The H-kernel by enumeration: the intersection of all normal subgroups
/// whose quotient lies in `h`, checked for minimality.
pub fn h_kernel(g: &GroupTable, h: &Variety, cap: usize) -> Result<KernelResult> {
    let normals = normal_subgroups(g, cap)?;
    let mut witness = Vec::new();
    let mut kernel = g.whole();
    for n in normals {
        let (q, _) = quotient(g, &n)?;
        if h.is_member(&q) {
            kernel.intersect_with(&n);
            witness.push(n);
        }
    }
    let (q, _) = quotient(g, &kernel)?;
    if !h.is_member(&q) {
        return Err(inconsistency(format!(
            "intersection {kernel} of {h}-normal subgroups has quotient outside {h}"
        )));
    }
    if witness.iter().any(|n| n.is_subset(&kernel) && n != &kernel) {
        return Err(inconsistency("kernel is not minimal"));
    }
    Ok(KernelResult {
        kernel,
        quotient: q,
        witness_normals: witness,
    })
}

/// The H-kernel via residual formulas.
pub fn h_kernel_closed_form(g: &GroupTable, h: &Variety) -> BitSet {
    match *h {
        Variety::Trivial => g.whole(),
        Variety::All => g.trivial_subgroup(),
        Variety::Abelian => g.commutator_subgroup(&g.whole(), &g.whole()),
        Variety::PGroup(p) => {
            let p = p as usize;
            let coprime = BitSet::from_elems(
                g.size(),
                (0..g.size()).filter(|&x| g.order_of(x) % p != 0),
            );
            g.generated(&coprime)
        }
        Variety::Solvable => derived_series_limit(g),
        Variety::Nilpotent => lower_central_limit(g),
    }
}

/// Closed form, cross-checked by enumeration when the group is small enough.
pub fn kernel_checked(g: &GroupTable, h: &Variety, cap: usize) -> Result<BitSet> {
    let fast = h_kernel_closed_form(g, h);
    if g.size() <= cap {
        let slow = h_kernel(g, h, cap)?.kernel;
        if slow != fast {
            return Err(inconsistency(format!(
                "kernel mismatch for {h}: enumeration {slow} vs closed form {fast}"
            )));
        }
    }
    Ok(fast)
}

/// A small generating set, chosen greedily by element index.
pub fn generating_set(g: &GroupTable) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup();
    for x in 0..g.size() {
        if !span.contains(x) {
            gens.push(x);
            span = g.generated(&BitSet::from_elems(g.size(), gens.iter().copied()));
        }
    }
    gens
}

/// An injective homomorphism `small -> big`, if one exists.
pub fn find_embedding(small: &GroupTable, big: &GroupTable) -> Option<Vec<usize>> {
    if big.size() % small.size() != 0 {
        return None;
    }
    let gens = generating_set(small);
    let mut images = vec![0usize; gens.len()];
    search_embedding(small, big, &gens, 0, &mut images)
}

fn search_embedding(
    small: &GroupTable,
    big: &GroupTable,
    gens: &[usize],
    depth: usize,
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        return extend_homomorphism(small, big, gens, images);
    }
    let order = small.order_of(gens[depth]);
    for y in 0..big.size() {
        if big.order_of(y) != order {
            continue;
        }
        images[depth] = y;
        if let Some(m) = search_embedding(small, big, gens, depth + 1, images) {
            return Some(m);
        }
    }
    None
}

fn extend_homomorphism(
    small: &GroupTable,
    big: &GroupTable,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; small.size()];
    map[small.identity()] = big.identity();
    let mut queue = vec![small.identity()];
    while let Some(x) = queue.pop() {
        for (g, &img) in gens.iter().zip(images) {
            let y = small.mul(x, *g);
            let fy = big.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    // well defined on generators; check it is a homomorphism and injective
    for x in 0..small.size() {
        for y in 0..small.size() {
            if map[small.mul(x, y)] != big.mul(map[x], map[y]) {
                return None;
            }
        }
    }
    let mut hit = BitSet::new(big.size());
    for &v in &map {
        if !hit.insert(v) {
            return None;
        }
    }
    Some(map)
}

pub fn isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
    a.size() == b.size() && find_embedding(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3() -> GroupTable {
        let (s, _) = FiniteSemigroup::from_transformations(
            3,
            &[vec![1, 0, 2], vec![1, 2, 0]],
            100,
        )
        .unwrap();
        GroupTable::from_semigroup(&s).unwrap()
    }

    #[test]
    fn parse() {
        assert_eq!(parse_variety("triv").unwrap(), Variety::Trivial);
        assert_eq!(parse_variety("p:2").unwrap(), Variety::PGroup(2));
        assert_eq!(parse_variety("p:4"), Err(Error::NotPrime(4)));
        assert!(matches!(parse_variety("abelian"), Err(Error::Parse(_))));
        assert!(matches!(parse_variety("p:x"), Err(Error::Parse(_))));
        for v in ["triv", "ab", "p:3", "nilpotent", "solvable", "all"] {
            assert_eq!(parse_variety(v).unwrap().to_string(), v);
        }
    }

    #[test]
    fn membership() {
        let s3 = s3();
        assert!(!Variety::Abelian.is_member(&s3));
        assert!(Variety::Solvable.is_member(&s3));
        assert!(!Variety::Nilpotent.is_member(&s3));
        assert!(Variety::PGroup(2).is_member(&GroupTable::cyclic(4)));
        assert!(!Variety::PGroup(2).is_member(&GroupTable::cyclic(6)));
        assert!(Variety::Trivial.is_member(&GroupTable::cyclic(1)));
    }

    #[test]
    fn normal_lattices() {
        let z2 = GroupTable::cyclic(2);
        assert_eq!(normal_subgroups(&z2, 64).unwrap().len(), 2);
        let z4 = GroupTable::cyclic(4);
        let ns: Vec<Vec<usize>> = normal_subgroups(&z4, 64)
            .unwrap()
            .iter()
            .map(BitSet::to_vec)
            .collect();
        assert_eq!(ns, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        let s3 = s3();
        let ns = normal_subgroups(&s3, 64).unwrap();
        assert_eq!(ns.iter().map(BitSet::len).collect::<Vec<_>>(), vec![1, 3, 6]);
        assert!(matches!(
            normal_subgroups(&GroupTable::cyclic(70), 64),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn kernels() {
        let s3 = s3();
        let a3 = h_kernel(&s3, &Variety::Abelian, 64).unwrap();
        assert_eq!(a3.kernel.len(), 3);
        assert_eq!(a3.quotient.size(), 2);
        assert_eq!(h_kernel_closed_form(&s3, &Variety::Abelian), a3.kernel);
        assert_eq!(h_kernel(&s3, &Variety::All, 64).unwrap().kernel.len(), 1);
        assert_eq!(h_kernel(&s3, &Variety::Trivial, 64).unwrap().kernel.len(), 6);
        let z6 = GroupTable::cyclic(6);
        assert_eq!(
            h_kernel_closed_form(&z6, &Variety::PGroup(2)).to_vec(),
            vec![0, 2, 4]
        );
        assert_eq!(h_kernel_closed_form(&z6, &Variety::Nilpotent).to_vec(), vec![0]);
    }

    #[test]
    fn quotients() {
        let s3 = s3();
        let a3 = h_kernel_closed_form(&s3, &Variety::Abelian);
        let (q, proj) = quotient(&s3, &a3).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(proj.len(), 6);
        let (q1, _) = quotient(&s3, &s3.trivial_subgroup()).unwrap();
        assert!(isomorphic(&q1, &s3));
        let (qg, _) = quotient(&s3, &s3.whole()).unwrap();
        assert_eq!(qg.size(), 1);
        let non_normal = s3.generated(&BitSet::singleton(6, 0));
        assert_eq!(non_normal.len(), 2, "generator 0 is a transposition");
        assert_eq!(quotient(&s3, &non_normal).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn embeddings() {
        let s3 = s3();
        assert!(find_embedding(&GroupTable::cyclic(3), &s3).is_some());
        assert!(find_embedding(&GroupTable::cyclic(6), &s3).is_none());
        assert!(!isomorphic(&GroupTable::cyclic(6), &s3));
        assert!(isomorphic(&GroupTable::cyclic(4), &GroupTable::cyclic(4).relabel(&[2, 0, 3, 1])));
    }
}
