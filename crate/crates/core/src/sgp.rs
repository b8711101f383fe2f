//! Finite semigroups given by multiplication tables.

use std::collections::HashMap;

use crate::error::{inconsistency, resource, Error, Result};
use crate::grp::GroupTable;

/// Default cap on the number of elements produced by generator closure.
pub const DEFAULT_CLOSURE_CAP: usize = 500_000;

/// A finite semigroup on the dense index set `0..size`.
///
/// When `identity_adjoined` is set, element `size - 1` is a formally
/// adjoined identity `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
    identity_adjoined: bool,
}

/// A non-empty word over the elements of a semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Invalid("words must be non-empty".into()));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FiniteSemigroup {
    /// Builds and validates a semigroup from an `n x n` grid of product indices.
    pub fn from_table(n: usize, entries: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("a semigroup needs at least one element".into()));
        }
        if entries.len() != n {
            return Err(Error::IndexOutOfRange(format!(
                "expected {n} rows, found {}",
                entries.len()
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::IndexOutOfRange(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table, false)
    }

    /// Builds from a row-major table; validates ranges and associativity.
    pub fn from_flat(n: usize, table: Vec<usize>, identity_adjoined: bool) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::Invalid(format!(
                "table of length {} does not match size {n}",
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v >= n) {
            return Err(Error::IndexOutOfRange(format!(
                "entry ({}, {}) = {} not below {n}",
                pos / n,
                pos % n,
                table[pos]
            )));
        }
        let s = FiniteSemigroup {
            size: n,
            table,
            identity_adjoined,
        };
        s.check_associative()?;
        if identity_adjoined {
            s.check_adjoined_identity()?;
        }
        Ok(s)
    }

    /// Trusted constructor for tables produced by closure routines.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        FiniteSemigroup {
            size: n,
            table,
            identity_adjoined: false,
        }
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_adjoined_identity(&self) -> Result<()> {
        let one = self.size - 1;
        for x in 0..self.size {
            if self.mul(one, x) != x || self.mul(x, one) != x {
                return Err(Error::Invalid(format!(
                    "flagged identity {one} does not fix {x}"
                )));
            }
        }
        for x in 0..one {
            for y in 0..one {
                if self.mul(x, y) == one {
                    return Err(Error::Invalid(format!(
                        "adjoined identity is the product {x}*{y}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Closes a set of transformations of `0..degree` under composition and
    /// returns the semigroup together with the map realised by each element.
    pub fn from_transformations(
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        let gens32 = gens
            .iter()
            .map(|g| {
                if g.len() != degree {
                    return Err(Error::Invalid(format!(
                        "generator has {} images, degree is {degree}",
                        g.len()
                    )));
                }
                g.iter()
                    .map(|&p| {
                        if p < degree {
                            Ok(p as u32)
                        } else {
                            Err(Error::IndexOutOfRange(format!(
                                "image {p} outside degree {degree}"
                            )))
                        }
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let closure = TransformationSemigroup::generate(degree, &gens32, cap)?;
        let sgp = closure.semigroup();
        let maps = closure
            .maps
            .iter()
            .map(|m| m.iter().map(|&p| p as usize).collect())
            .collect();
        Ok((sgp, maps))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn identity_adjoined(&self) -> bool {
        self.identity_adjoined
    }

    /// Index of the adjoined identity, when flagged.
    pub fn adjoined_identity(&self) -> Option<usize> {
        self.identity_adjoined.then(|| self.size - 1)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.size..(x + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// A two-sided identity of the table, if there is one.
    pub fn identity(&self) -> Option<usize> {
        (0..self.size).find(|&e| (0..self.size).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// The unique idempotent power of `x`.
    pub fn omega_power(&self, x: usize) -> usize {
        let mut p = x;
        loop {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, x);
        }
    }

    pub fn eval_word(&self, w: &Word) -> usize {
        self.eval_letters(w.letters())
    }

    pub(crate) fn eval_letters(&self, letters: &[usize]) -> usize {
        let mut it = letters.iter();
        let first = *it.next().expect("non-empty word");
        it.fold(first, |acc, &x| self.mul(acc, x))
    }

    /// `S^I`: a copy with a fresh identity appended as the last element.
    pub fn with_identity(&self) -> FiniteSemigroup {
        let n = self.size;
        let m = n + 1;
        let mut table = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                table[x * m + y] = if x == n {
                    y
                } else if y == n {
                    x
                } else {
                    self.mul(x, y)
                };
            }
        }
        FiniteSemigroup {
            size: m,
            table,
            identity_adjoined: true,
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }
}

/// Transformations of `0..degree` closed under right composition,
/// `(p)(fg) = ((p)f)g`, generated breadth-first from a list of maps.
#[derive(Clone, Debug)]
pub struct TransformationSemigroup {
    degree: usize,
    maps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    gen_index: Vec<usize>,
}

pub fn compose(f: &[u32], g: &[u32]) -> Vec<u32> {
    f.iter().map(|&p| g[p as usize]).collect()
}

/// Maximal subgroup `H_e` of a transformation semigroup, acting on `Im e`.
#[derive(Clone, Debug)]
pub struct MapSubgroup {
    pub idempotent: usize,
    pub rank: usize,
    pub elements: Vec<usize>,
    pub group: GroupTable,
}

impl TransformationSemigroup {
    pub fn generate(degree: usize, gens: &[Vec<u32>], cap: usize) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Invalid("at least one generator is required".into()));
        }
        let mut maps: Vec<Vec<u32>> = Vec::new();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut gen_index = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != degree || g.iter().any(|&p| p as usize >= degree) {
                return Err(Error::Invalid(format!("{g:?} is not a map on {degree} points")));
            }
            let id = *index.entry(g.clone()).or_insert_with(|| {
                maps.push(g.clone());
                maps.len() - 1
            });
            gen_index.push(id);
        }
        if maps.len() > cap {
            return Err(resource("closing transformations", cap));
        }
        let mut distinct_gens = gen_index.clone();
        distinct_gens.sort_unstable();
        distinct_gens.dedup();
        let mut head = 0;
        while head < maps.len() {
            for &gi in &distinct_gens {
                let prod = compose(&maps[head], &maps[gi]);
                if !index.contains_key(&prod) {
                    if maps.len() >= cap {
                        return Err(resource("closing transformations", cap));
                    }
                    index.insert(prod.clone(), maps.len());
                    maps.push(prod);
                }
            }
            head += 1;
        }
        Ok(TransformationSemigroup {
            degree,
            maps,
            index,
            gen_index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Vec<u32>] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &[u32] {
        &self.maps[i]
    }

    pub fn index_of(&self, f: &[u32]) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Element realising the `i`-th generator.
    pub fn generator(&self, i: usize) -> usize {
        self.gen_index[i]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index[&compose(&self.maps[x], &self.maps[y])]
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&e| compose(&self.maps[e], &self.maps[e]) == self.maps[e])
            .collect()
    }

    /// Full multiplication table; only sensible for small semigroups.
    pub fn semigroup(&self) -> FiniteSemigroup {
        let n = self.maps.len();
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.mul(x, y);
            }
        }
        FiniteSemigroup::from_flat_unchecked(n, table)
    }

    /// `H_e = {f ∈ eTe : rank f = rank e}` for every idempotent `e`, without
    /// building the full table.
    pub fn maximal_subgroups(&self) -> Result<Vec<MapSubgroup>> {
        self.idempotents()
            .into_iter()
            .map(|e| self.maximal_subgroup_at(e))
            .collect()
    }

    pub fn maximal_subgroup_at(&self, e: usize) -> Result<MapSubgroup> {
        let em = &self.maps[e];
        let mut image: Vec<u32> = em.clone();
        image.sort_unstable();
        image.dedup();
        let rank = image.len();
        let mut elements = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for f in &self.maps {
            let efe = compose(&compose(em, f), em);
            let mut img: Vec<u32> = efe.clone();
            img.sort_unstable();
            img.dedup();
            if img.len() == rank && seen.insert(efe.clone()) {
                let id = self.index_of(&efe).ok_or_else(|| {
                    inconsistency("eTe left the transformation semigroup")
                })?;
                elements.push(id);
            }
        }
        elements.sort_unstable();
        let pos: HashMap<u32, usize> = image.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let perms: Vec<Vec<usize>> = elements
            .iter()
            .map(|&f| image.iter().map(|p| pos[&self.maps[f][*p as usize]]).collect())
            .collect();
        let group = GroupTable::from_permutations(&perms)
            .map_err(|_| inconsistency(format!("H-class of idempotent {e} is not a group")))?;
        Ok(MapSubgroup {
            idempotent: e,
            rank,
            elements,
            group,
        })
    }
}
