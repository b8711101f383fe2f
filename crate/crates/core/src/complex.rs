//! Complexes of subsets of a finite semigroup: closure, materialisation as
//! semigroups, moduli and their constructs, and nerves.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{inconsistency, resource, Error, Result};
use crate::green::{compute_green, maximal_subgroups};
use crate::grp::{kernel_checked, Variety};
use crate::sgp::FiniteSemigroup;

/// A non-empty subset of the base semigroup.
pub type Subset = BitSet;

pub fn subset_mul(s: &FiniteSemigroup, x: &Subset, y: &Subset) -> Subset {
    let mut out = BitSet::new(s.size());
    let ys: Vec<usize> = y.iter().collect();
    for a in x.iter() {
        let row = s.row(a);
        for &b in &ys {
            out.insert(row[b]);
        }
    }
    out
}

/// Product in `P(S)^I`; `None` is the adjoined identity.
pub fn subset_mul_i(s: &FiniteSemigroup, x: Option<&Subset>, y: Option<&Subset>) -> Option<Subset> {
    match (x, y) {
        (None, None) => None,
        (Some(a), None) | (None, Some(a)) => Some(a.clone()),
        (Some(a), Some(b)) => Some(subset_mul(s, a, b)),
    }
}

/// A down-closed, product-closed family of subsets containing all singletons,
/// stored fully enumerated in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SComplex {
    base_size: usize,
    family: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub subsets: Vec<Vec<usize>>,
    pub maximal: Vec<Vec<usize>>,
}

impl SComplex {
    fn from_sorted(base_size: usize, family: Vec<Subset>) -> Self {
        let index = family.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        SComplex {
            base_size,
            family,
            index,
        }
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn members(&self) -> &[Subset] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn contains(&self, x: &Subset) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &Subset) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn is_subcomplex_of(&self, other: &SComplex) -> bool {
        self.family.iter().all(|x| other.contains(x))
    }

    /// Inclusion-maximal members, sorted lexicographically by element lists.
    pub fn maximal(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self
            .family
            .iter()
            .filter(|x| {
                !self
                    .family
                    .iter()
                    .any(|y| y.len() > x.len() && x.is_subset(y))
            })
            .cloned()
            .collect();
        out.sort_by_key(|x| x.to_vec());
        out
    }

    pub fn maximal_lists(&self) -> Vec<Vec<usize>> {
        self.maximal().iter().map(BitSet::to_vec).collect()
    }

    pub fn to_json(&self) -> ComplexJson {
        let mut subsets: Vec<Vec<usize>> = self.family.iter().map(BitSet::to_vec).collect();
        subsets.sort();
        ComplexJson {
            subsets,
            maximal: self.maximal_lists(),
        }
    }

    /// Checks the three complex axioms exhaustively.
    pub fn check_axioms(&self, s: &FiniteSemigroup) -> Result<()> {
        for x in 0..s.size() {
            if !self.contains(&BitSet::singleton(s.size(), x)) {
                return Err(inconsistency(format!("singleton {{{x}}} missing")));
            }
        }
        for x in &self.family {
            for y in &self.family {
                if !self.contains(&subset_mul(s, x, y)) {
                    return Err(inconsistency(format!("product {x}·{y} missing")));
                }
            }
            for e in x.iter() {
                let mut smaller = x.clone();
                smaller.remove(e);
                if !smaller.is_empty() && !self.contains(&smaller) {
                    return Err(inconsistency(format!("subset {smaller} of {x} missing")));
                }
            }
        }
        Ok(())
    }
}

/// `sing(S)`.
pub fn singletons(s: &FiniteSemigroup) -> SComplex {
    SComplex::from_sorted(
        s.size(),
        (0..s.size()).map(|x| BitSet::singleton(s.size(), x)).collect(),
    )
}

/// Least complex containing `seed`.
pub fn close_complex(s: &FiniteSemigroup, seed: &[Subset], cap: usize) -> Result<SComplex> {
    let n = s.size();
    let mut list: Vec<Subset> = Vec::new();
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut push = |x: Subset, list: &mut Vec<Subset>| -> Result<()> {
        if !seen.contains(&x) {
            if list.len() >= cap {
                return Err(resource("closing a complex", cap));
            }
            seen.insert(x.clone());
            list.push(x);
        }
        Ok(())
    };
    for x in seed {
        if x.is_empty() || x.universe() != n {
            return Err(Error::Invalid(format!("seed subset {x} is empty or mis-sized")));
        }
        push(x.clone(), &mut list)?;
    }
    for x in 0..n {
        push(BitSet::singleton(n, x), &mut list)?;
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i].clone();
        if x.len() > 1 {
            for e in x.iter() {
                let mut smaller = x.clone();
                smaller.remove(e);
                push(smaller, &mut list)?;
            }
        }
        for j in 0..=i {
            let y = list[j].clone();
            push(subset_mul(s, &x, &y), &mut list)?;
            if j != i {
                push(subset_mul(s, &y, &x), &mut list)?;
            }
        }
        i += 1;
    }
    list.sort();
    Ok(SComplex::from_sorted(n, list))
}

/// A complex materialised as a semigroup under subset product; element `i`
/// of the table is `complex.members()[i]`.
#[derive(Clone, Debug)]
pub struct ComplexSemigroup {
    complex: SComplex,
    sgp: FiniteSemigroup,
}

impl ComplexSemigroup {
    pub fn complex(&self) -> &SComplex {
        &self.complex
    }

    pub fn sgp(&self) -> &FiniteSemigroup {
        &self.sgp
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn member(&self, i: usize) -> &Subset {
        &self.complex.family[i]
    }

    pub fn index_of(&self, x: &Subset) -> Option<usize> {
        self.complex.index_of(x)
    }

    /// Index of `{x}`.
    pub fn singleton_index(&self, x: usize) -> usize {
        self.complex.index[&BitSet::singleton(self.complex.base_size, x)]
    }
}

pub fn as_semigroup(k: &SComplex, s: &FiniteSemigroup, cap: usize) -> Result<ComplexSemigroup> {
    let m = k.len();
    if m > cap {
        return Err(resource("materialising a complex as a semigroup", cap));
    }
    let mut table = Vec::with_capacity(m * m);
    for x in &k.family {
        for y in &k.family {
            let p = subset_mul(s, x, y);
            let idx = k
                .index_of(&p)
                .ok_or_else(|| inconsistency(format!("complex not closed: {x}·{y} = {p}")))?;
            table.push(idx);
        }
    }
    Ok(ComplexSemigroup {
        complex: k.clone(),
        sgp: FiniteSemigroup::from_flat_unchecked(m, table),
    })
}

/// A rule assigning to each finite semigroup a family of its subsets.
pub trait Modulus {
    fn name(&self) -> String;
    /// Subsets of `t` (as bit vectors over `t`'s elements).
    fn families(&self, t: &FiniteSemigroup) -> Result<Vec<BitSet>>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinModulus {
    Grp,
    RCl,
    LCl,
    JCl,
    PrinR,
    PrinL,
    PrinJ,
    E,
}

pub fn builtin_modulus(name: &str) -> Result<BuiltinModulus> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "grp" => BuiltinModulus::Grp,
        "rcl" => BuiltinModulus::RCl,
        "lcl" => BuiltinModulus::LCl,
        "jcl" => BuiltinModulus::JCl,
        "prinr" => BuiltinModulus::PrinR,
        "prinl" => BuiltinModulus::PrinL,
        "prinj" => BuiltinModulus::PrinJ,
        "e" => BuiltinModulus::E,
        _ => return Err(Error::UnknownModulus(name.to_string())),
    })
}

impl Modulus for BuiltinModulus {
    fn name(&self) -> String {
        format!("{self:?}").to_ascii_lowercase()
    }

    fn families(&self, t: &FiniteSemigroup) -> Result<Vec<BitSet>> {
        let n = t.size();
        let g = compute_green(t);
        let from_classes = |classes: &[Vec<usize>]| -> Vec<BitSet> {
            classes
                .iter()
                .filter(|c| c.iter().all(|&x| x < n))
                .map(|c| BitSet::from_elems(n, c.iter().copied()))
                .collect()
        };
        Ok(match self {
            BuiltinModulus::Grp => maximal_subgroups(&g)
                .into_iter()
                .map(|m| BitSet::from_elems(n, m.elements))
                .collect(),
            BuiltinModulus::RCl => from_classes(&g.r_classes),
            BuiltinModulus::LCl => from_classes(&g.l_classes),
            BuiltinModulus::JCl => from_classes(&g.j_classes),
            BuiltinModulus::PrinR => (0..n)
                .map(|x| BitSet::from_elems(n, std::iter::once(x).chain(t.row(x).iter().copied())))
                .collect(),
            BuiltinModulus::PrinL => (0..n)
                .map(|x| BitSet::from_elems(n, std::iter::once(x).chain((0..n).map(|y| t.mul(y, x)))))
                .collect(),
            BuiltinModulus::PrinJ => (0..n)
                .map(|x| {
                    let mut ideal = BitSet::singleton(n, x);
                    for y in 0..n {
                        ideal.insert(t.mul(y, x));
                        ideal.insert(t.mul(x, y));
                        for z in 0..n {
                            ideal.insert(t.mul(t.mul(y, x), z));
                        }
                    }
                    ideal
                })
                .collect(),
            BuiltinModulus::E => vec![BitSet::from_elems(n, t.idempotents())],
        })
    }
}

/// A modulus given by a closure.
pub struct FnModulus<F>(pub String, pub F);

impl<F: Fn(&FiniteSemigroup) -> Vec<BitSet>> Modulus for FnModulus<F> {
    fn name(&self) -> String {
        self.0.clone()
    }

    fn families(&self, t: &FiniteSemigroup) -> Result<Vec<BitSet>> {
        Ok((self.1)(t))
    }
}

/// `{K_{H,G} : G a maximal subgroup}`: the modulus whose construct is the
/// GH-pointlike candidate.
#[derive(Clone, Copy, Debug)]
pub struct KernelModulus {
    pub variety: Variety,
    pub group_cap: usize,
}

impl Modulus for KernelModulus {
    fn name(&self) -> String {
        format!("kernel[{}]", self.variety)
    }

    fn families(&self, t: &FiniteSemigroup) -> Result<Vec<BitSet>> {
        let g = compute_green(t);
        maximal_subgroups(&g)
            .into_iter()
            .map(|m| {
                let kernel = kernel_checked(&m.group, &self.variety, self.group_cap)?;
                Ok(BitSet::from_elems(t.size(), kernel.iter().map(|i| m.elements[i])))
            })
            .collect()
    }
}

/// Least complex `K` such that the union of every family the modulus assigns
/// to `K` is again a member of `K`.
pub fn lambda_construct(s: &FiniteSemigroup, modulus: &dyn Modulus, cap: usize) -> Result<SComplex> {
    let mut k = singletons(s);
    loop {
        let cs = as_semigroup(&k, s, cap)?;
        let mut fresh: BTreeSet<Subset> = BTreeSet::new();
        for fam in modulus.families(cs.sgp())? {
            let mut union = BitSet::new(s.size());
            for i in fam.iter() {
                union.union_with(cs.member(i));
            }
            if !union.is_empty() && !k.contains(&union) {
                fresh.insert(union);
            }
        }
        if fresh.is_empty() {
            return Ok(k);
        }
        let mut seed: Vec<Subset> = fresh.into_iter().collect();
        seed.extend(k.family.iter().cloned());
        k = close_complex(s, &seed, cap)?;
    }
}

/// The candidate `C_GH(S)`.
pub fn construct_cgh(s: &FiniteSemigroup, h: &Variety, caps: &Caps) -> Result<SComplex> {
    lambda_construct(
        s,
        &KernelModulus {
            variety: *h,
            group_cap: caps.max_group,
        },
        caps.max_complex,
    )
}

/// Graph of a relational morphism `S -> T`.
#[derive(Clone, Debug)]
pub struct RelationalMorphism {
    s_size: usize,
    t_size: usize,
    graph: BTreeSet<(usize, usize)>,
}

impl RelationalMorphism {
    /// Validates that `pairs` is a subsemigroup of `S × T`.
    pub fn new(
        s: &FiniteSemigroup,
        t: &FiniteSemigroup,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let graph: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        for &(a, b) in &graph {
            if a >= s.size() || b >= t.size() {
                return Err(Error::IndexOutOfRange(format!("pair ({a}, {b})")));
            }
        }
        for &(a, b) in &graph {
            for &(c, d) in &graph {
                if !graph.contains(&(s.mul(a, c), t.mul(b, d))) {
                    return Err(Error::Invalid(format!(
                        "graph is not closed: ({a},{b})·({c},{d})"
                    )));
                }
            }
        }
        Ok(RelationalMorphism {
            s_size: s.size(),
            t_size: t.size(),
            graph,
        })
    }

    pub fn from_homomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup, map: &[usize]) -> Result<Self> {
        if map.len() != s.size() {
            return Err(Error::Invalid("map length differs from |S|".into()));
        }
        Self::new(s, t, map.iter().copied().enumerate())
    }

    pub fn projections(&self) -> (BitSet, BitSet) {
        (
            BitSet::from_elems(self.s_size, self.graph.iter().map(|p| p.0)),
            BitSet::from_elems(self.t_size, self.graph.iter().map(|p| p.1)),
        )
    }
}

/// Subsets of the fibres `(t)ρ^{-1}`.
pub fn nerve(rm: &RelationalMorphism, s: &FiniteSemigroup, cap: usize) -> Result<SComplex> {
    let (dom, _) = rm.projections();
    if let Some(missing) = (0..rm.s_size).find(|&x| !dom.contains(x)) {
        return Err(Error::NotSurjective(missing));
    }
    let fibres: Vec<Subset> = (0..rm.t_size)
        .map(|t| {
            BitSet::from_elems(
                rm.s_size,
                rm.graph.iter().filter(|p| p.1 == t).map(|p| p.0),
            )
        })
        .filter(|f| !f.is_empty())
        .collect();
    close_complex(s, &fibres, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn n2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, &[vec![1, 1], vec![1, 1]]).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> Subset {
        BitSet::from_elems(n, xs.iter().copied())
    }

    #[test]
    fn subset_products() {
        let s = z2();
        assert_eq!(subset_mul(&s, &set(2, &[0]), &set(2, &[1])), set(2, &[1]));
        assert_eq!(subset_mul(&s, &set(2, &[0, 1]), &set(2, &[1])), set(2, &[0, 1]));
        assert_eq!(subset_mul_i(&s, None, Some(&set(2, &[1]))), Some(set(2, &[1])));
        assert_eq!(subset_mul_i(&s, None, None), None);
    }

    #[test]
    fn closures() {
        let s = z2();
        assert_eq!(close_complex(&s, &[], 100).unwrap(), singletons(&s));
        assert_eq!(close_complex(&s, &[set(2, &[0, 1])], 100).unwrap().len(), 3);
        let n = n2();
        let k = close_complex(&n, &[], 100).unwrap();
        assert_eq!(k.len(), 2);
        k.check_axioms(&n).unwrap();
        assert!(matches!(
            close_complex(&s, &[set(2, &[0, 1])], 2),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn materialised() {
        let s = z2();
        let cs = as_semigroup(&singletons(&s), &s, 100).unwrap();
        assert_eq!(cs.sgp(), &s);
        let full = close_complex(&s, &[set(2, &[0, 1])], 100).unwrap();
        let cs = as_semigroup(&full, &s, 100).unwrap();
        let top = cs.index_of(&set(2, &[0, 1])).unwrap();
        for x in 0..3 {
            assert_eq!(cs.sgp().mul(top, x), top);
            assert_eq!(cs.sgp().mul(x, top), top);
        }
        let n = n2();
        assert_eq!(as_semigroup(&singletons(&n), &n, 10).unwrap().sgp(), &n);
    }

    #[test]
    fn moduli() {
        let s = z2();
        assert_eq!(builtin_modulus("grp").unwrap().families(&s).unwrap(), vec![set(2, &[0, 1])]);
        assert_eq!(builtin_modulus("nope"), Err(Error::UnknownModulus("nope".into())));
        let (t2, _) =
            FiniteSemigroup::from_transformations(2, &[vec![1, 0], vec![0, 0]], 100).unwrap();
        // swap, c0, id, c1
        let mut rcl = builtin_modulus("rcl").unwrap().families(&t2).unwrap();
        rcl.sort();
        assert_eq!(rcl, vec![set(4, &[0, 2]), set(4, &[1, 3])]);
        assert_eq!(
            builtin_modulus("e").unwrap().families(&t2).unwrap(),
            vec![set(4, &[1, 2, 3])]
        );
    }

    #[test]
    fn constructs() {
        let s = z2();
        let grp = builtin_modulus("grp").unwrap();
        assert_eq!(lambda_construct(&s, &grp, 100).unwrap().len(), 3);
        let n = n2();
        assert_eq!(lambda_construct(&n, &grp, 100).unwrap(), singletons(&n));
        let empty = FnModulus("empty".into(), |_: &FiniteSemigroup| Vec::new());
        assert_eq!(lambda_construct(&s, &empty, 100).unwrap(), singletons(&s));
    }

    #[test]
    fn nerves() {
        let s = z2();
        let id = RelationalMorphism::from_homomorphism(&s, &s, &[0, 1]).unwrap();
        assert_eq!(nerve(&id, &s, 100).unwrap(), singletons(&s));
        let triv = FiniteSemigroup::from_table(1, &[vec![0]]).unwrap();
        let collapse = RelationalMorphism::from_homomorphism(&s, &triv, &[0, 0]).unwrap();
        assert_eq!(nerve(&collapse, &s, 100).unwrap().len(), 3);
        let partial = RelationalMorphism::new(&s, &triv, [(0, 0)]).unwrap();
        assert_eq!(nerve(&partial, &s, 100), Err(Error::NotSurjective(1)));
        assert!(RelationalMorphism::new(&s, &triv, [(1, 0)]).is_err());
    }
}
