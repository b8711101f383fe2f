//! PR-transformation semigroups, wreath products and cascades, the Zeiger
//! predicate, the subgroup bound, and embeddings of the local automata of a
//! product expansion into Zeiger cascades.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{inconsistency, resource, Error, Result};
use crate::green::rees_coordinatization;
use crate::grp::{find_embedding, GroupTable};
use crate::prodexp::{ClassKind, Fragility, LocalAutomaton, LocalState, SetupData};
use crate::sgp::TransformationSemigroup;

/// Largest cascade table (summed over levels) that is tabulated.
pub const MAX_CASCADE_ENTRIES: usize = 1 << 20;

/// Full-point-set subgroup bounds are computed up to this many points;
/// beyond it only the image of the embedding is used.
pub const MAX_BOUND_POINTS: usize = 4096;

/// A level map of a PR-transformation semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LevelMap {
    /// Index into the level's group.
    Group(usize),
    Const(u32),
}

/// `(X, G ∪ C_X)` with `G` given as permutations of `X`.
#[derive(Clone, Debug)]
pub struct PrLevel {
    points: usize,
    perms: Vec<Vec<u32>>,
    group: GroupTable,
}

impl PrLevel {
    /// `perms` must be closed under composition and contain the identity.
    pub fn new(points: usize, perms: Vec<Vec<u32>>) -> Result<Self> {
        if points == 0 {
            return Err(Error::Invalid("a level needs at least one point".into()));
        }
        for p in &perms {
            let mut seen = vec![false; points];
            if p.len() != points || p.iter().any(|&x| x as usize >= points || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(Error::Invalid(format!("{p:?} is not a permutation of {points} points")));
            }
        }
        let as_usize: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| p.iter().map(|&x| x as usize).collect())
            .collect();
        let group = GroupTable::from_permutations(&as_usize)?;
        let id: Vec<u32> = (0..points as u32).collect();
        if perms[group.identity()] != id {
            return Err(Error::Invalid("the group identity must act as the identity".into()));
        }
        Ok(PrLevel {
            points,
            perms,
            group,
        })
    }

    /// Identity and resets only.
    pub fn trivial(points: usize) -> Self {
        Self::new(points, vec![(0..points as u32).collect()]).expect("identity group")
    }

    /// `Z_n` acting regularly on `n` points, plus resets.
    pub fn cyclic(n: usize) -> Self {
        let perms = (0..n)
            .map(|k| (0..n).map(|x| ((x + k) % n) as u32).collect())
            .collect();
        Self::new(n, perms).expect("cyclic group")
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn identity(&self) -> LevelMap {
        LevelMap::Group(self.group.identity())
    }

    pub fn is_identity(&self, m: LevelMap) -> bool {
        m == self.identity()
    }

    pub fn is_group(&self, m: LevelMap) -> bool {
        matches!(m, LevelMap::Group(_))
    }

    pub fn apply(&self, m: LevelMap, x: u32) -> u32 {
        match m {
            LevelMap::Group(g) => self.perms[g][x as usize],
            LevelMap::Const(c) => c,
        }
    }

    /// `a` then `b`.
    pub fn compose(&self, a: LevelMap, b: LevelMap) -> LevelMap {
        match (a, b) {
            (LevelMap::Group(g), LevelMap::Group(h)) => LevelMap::Group(self.group.mul(g, h)),
            (_, LevelMap::Const(c)) => LevelMap::Const(c),
            (LevelMap::Const(c), LevelMap::Group(h)) => LevelMap::Const(self.perms[h][c as usize]),
        }
    }

    /// All maps: group elements then constants.
    pub fn all_maps(&self) -> Vec<LevelMap> {
        (0..self.group.size())
            .map(LevelMap::Group)
            .chain((0..self.points as u32).map(LevelMap::Const))
            .collect()
    }

    fn check(&self, m: LevelMap) -> bool {
        match m {
            LevelMap::Group(g) => g < self.group.size(),
            LevelMap::Const(c) => (c as usize) < self.points,
        }
    }
}

/// `(X_n, S_n) ≀ ⋯ ≀ (X_1, S_1)`; `levels[0]` is level 1. Points are tuples
/// with `x[0] = x_1`, encoded in mixed radix with `x_1` least significant.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    levels: Vec<PrLevel>,
    radix: Vec<usize>,
}

impl WreathProduct {
    pub fn new(levels: Vec<PrLevel>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Invalid("a wreath product needs at least one level".into()));
        }
        let mut radix = vec![1usize];
        for l in &levels {
            let next = radix
                .last()
                .unwrap()
                .checked_mul(l.points)
                .ok_or_else(|| resource("sizing a wreath product", usize::MAX))?;
            radix.push(next);
        }
        Ok(WreathProduct { levels, radix })
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Level `i`, 1-based.
    pub fn level(&self, i: usize) -> &PrLevel {
        &self.levels[i - 1]
    }

    pub fn n_points(&self) -> usize {
        self.radix[self.levels.len()]
    }

    /// Number of tuples `(x_{i-1}, …, x_1)` below level `i`.
    pub fn below(&self, i: usize) -> usize {
        self.radix[i - 1]
    }

    pub fn encode(&self, x: &[u32]) -> usize {
        x.iter()
            .zip(&self.radix)
            .map(|(&xi, &r)| xi as usize * r)
            .sum()
    }

    pub fn decode(&self, mut code: usize) -> Vec<u32> {
        self.levels
            .iter()
            .map(|l| {
                let x = (code % l.points) as u32;
                code /= l.points;
                x
            })
            .collect()
    }

    pub fn identity_cascade(&self) -> Cascade {
        Cascade {
            tables: (1..=self.n_levels())
                .map(|i| vec![self.level(i).identity(); self.below(i)])
                .collect(),
        }
    }
}

/// `d = (d_n, …, d_1)`, tabulated: `tables[i - 1][t]` is `d_i` at the
/// encoded lower tuple `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cascade {
    tables: Vec<Vec<LevelMap>>,
}

impl Cascade {
    /// Tabulates `f(i, lower)` with `lower = [x_1, …, x_{i-1}]`.
    pub fn from_fn(w: &WreathProduct, mut f: impl FnMut(usize, &[u32]) -> LevelMap) -> Result<Self> {
        let total: usize = (1..=w.n_levels()).map(|i| w.below(i)).sum();
        if total > MAX_CASCADE_ENTRIES {
            return Err(resource("tabulating a cascade", MAX_CASCADE_ENTRIES));
        }
        let mut tables = Vec::with_capacity(w.n_levels());
        for i in 1..=w.n_levels() {
            let mut table = Vec::with_capacity(w.below(i));
            for t in 0..w.below(i) {
                let lower: Vec<u32> = w.decode(t)[..i - 1].to_vec();
                let m = f(i, &lower);
                if !w.level(i).check(m) {
                    return Err(Error::Invalid(format!("{m:?} is not a map of level {i}")));
                }
                table.push(m);
            }
            tables.push(table);
        }
        Ok(Cascade { tables })
    }

    /// `(x)d_i`.
    pub fn value(&self, w: &WreathProduct, i: usize, x: &[u32]) -> LevelMap {
        self.tables[i - 1][w.encode(&x[..i - 1])]
    }

    pub fn act(&self, w: &WreathProduct, x: &[u32]) -> Vec<u32> {
        (1..=w.n_levels())
            .map(|i| w.level(i).apply(self.value(w, i, x), x[i - 1]))
            .collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Cascade, w: &WreathProduct) -> Cascade {
        let tables = (1..=w.n_levels())
            .map(|i| {
                (0..w.below(i))
                    .map(|t| {
                        let lower = &w.decode(t)[..i - 1];
                        let moved = self.act_partial(w, lower);
                        let a = self.tables[i - 1][t];
                        let b = other.tables[i - 1][w.encode(&moved)];
                        w.level(i).compose(a, b)
                    })
                    .collect()
            })
            .collect();
        Cascade { tables }
    }

    fn act_partial(&self, w: &WreathProduct, lower: &[u32]) -> Vec<u32> {
        (1..=lower.len())
            .map(|i| w.level(i).apply(self.tables[i - 1][w.encode(&lower[..i - 1])], lower[i - 1]))
            .collect()
    }

    /// The transformation of encoded points.
    pub fn point_map(&self, w: &WreathProduct) -> Vec<u32> {
        (0..w.n_points())
            .map(|p| w.encode(&self.act(w, &w.decode(p))) as u32)
            .collect()
    }
}

/// `(x)d_i ∈ G_i ⇒ (x)d_k = 1_{G_k}` for every `k > i` and every tuple `x`.
pub fn is_zeiger(w: &WreathProduct, d: &Cascade) -> bool {
    zeiger_violation(w, d).is_none()
}

/// A tuple (encoded below the offending level) and the two levels involved.
pub fn zeiger_violation(w: &WreathProduct, d: &Cascade) -> Option<(usize, usize, usize)> {
    for k in 2..=w.n_levels() {
        for (t, &m) in d.tables[k - 1].iter().enumerate() {
            if w.level(k).is_identity(m) {
                continue;
            }
            for i in 1..k {
                if w.level(i).is_group(d.tables[i - 1][t % w.below(i)]) {
                    return Some((t, i, k));
                }
            }
        }
    }
    None
}

/// A uniformly chosen level map at every entry, except that entries above a
/// group-valued entry are forced to the identity.
pub fn random_zeiger_cascade<R: Rng>(w: &WreathProduct, rng: &mut R) -> Cascade {
    let mut tables: Vec<Vec<LevelMap>> = Vec::with_capacity(w.n_levels());
    for i in 1..=w.n_levels() {
        let level = w.level(i);
        let maps = level.all_maps();
        let table = (0..w.below(i))
            .map(|t| {
                let forced = (1..i).any(|j| w.level(j).is_group(tables[j - 1][t % w.below(j)]));
                if forced {
                    level.identity()
                } else {
                    maps[rng.gen_range(0..maps.len())]
                }
            })
            .collect();
        tables.push(table);
    }
    Cascade { tables }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupBoundReport {
    pub points: usize,
    pub semigroup_size: usize,
    pub subgroups_checked: usize,
    pub max_order: usize,
    pub failures: Vec<String>,
}

impl SubgroupBoundReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Generates the transformation semigroup of `cascades` (on all points, or
/// on the invariant subset `restrict`) and checks that each maximal subgroup
/// embeds into some level group.
pub fn zeiger_subgroup_bound(
    w: &WreathProduct,
    cascades: &[Cascade],
    restrict: Option<&[usize]>,
    cap: usize,
) -> Result<SubgroupBoundReport> {
    if let Some((i, d)) = cascades.iter().enumerate().find(|(_, d)| !is_zeiger(w, d)) {
        return Err(Error::Invalid(format!("cascade {i} is not Zeiger: {:?}", zeiger_violation(w, d))));
    }
    let points: Vec<usize> = match restrict {
        Some(p) => p.to_vec(),
        None => (0..w.n_points()).collect(),
    };
    let pos: HashMap<usize, u32> = points.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let gens: Vec<Vec<u32>> = cascades
        .iter()
        .map(|d| {
            points
                .iter()
                .map(|&p| {
                    let image = w.encode(&d.act(w, &w.decode(p)));
                    pos.get(&image)
                        .copied()
                        .ok_or_else(|| Error::Invalid(format!("point {p} leaves the restricted set")))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    let mut report = SubgroupBoundReport {
        points: points.len(),
        ..Default::default()
    };
    if gens.is_empty() {
        return Ok(report);
    }
    let ts = TransformationSemigroup::generate(points.len(), &gens, cap)?;
    report.semigroup_size = ts.len();
    let level_groups: Vec<&GroupTable> = (1..=w.n_levels()).map(|i| w.level(i).group()).collect();
    for m in ts.maximal_subgroups()? {
        report.subgroups_checked += 1;
        report.max_order = report.max_order.max(m.group.size());
        if !level_groups.iter().any(|g| find_embedding(&m.group, g).is_some()) {
            report.failures.push(format!(
                "subgroup of order {} at idempotent {} embeds in no level group",
                m.group.size(),
                m.idempotent
            ));
        }
    }
    Ok(report)
}

/// Embedding of one local automaton into Zeiger cascades, with its
/// reachable states and the cascade of every input.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    pub k: usize,
    pub kind: ClassKind,
    pub wreath: WreathProduct,
    pub states: Vec<LocalState>,
    /// `chi[i]` is the point of `states[i]`.
    pub chi: Vec<Vec<u32>>,
    pub inputs: Vec<usize>,
    /// `delta[j]` is the cascade of `inputs[j]`.
    pub delta: Vec<Cascade>,
}

impl EmbeddingWitness {
    /// `Ω_k = Img χ`, encoded.
    pub fn image(&self) -> Vec<usize> {
        let mut pts: Vec<usize> = self.chi.iter().map(|x| self.wreath.encode(x)).collect();
        pts.sort_unstable();
        pts
    }
}

/// Builds `(χ_k, δ_k)` and verifies injectivity, equivariance and the Zeiger
/// property over every reachable local state and every input.
pub fn embed_local(la: &LocalAutomaton<'_>, caps: &Caps) -> Result<EmbeddingWitness> {
    let st = la.setup();
    let inputs = local_inputs(la);
    let states = reachable_local_states(la, &inputs, caps.max_states)?;
    let (wreath, chi_fn, delta_fn): Embedding<'_> = match la.kind {
        ClassKind::Regular => regular_embedding(la, &inputs)?,
        ClassKind::Null => null_embedding(la, &inputs)?,
    };
    let chi: Vec<Vec<u32>> = states.iter().map(chi_fn).collect::<Result<_>>()?;

    let mut seen: HashSet<&Vec<u32>> = HashSet::new();
    for (q, x) in states.iter().zip(&chi) {
        if !seen.insert(x) {
            return Err(inconsistency(format!(
                "χ_{} is not injective at {}",
                la.k,
                la.describe(q)
            )));
        }
    }
    let index: HashMap<&LocalState, usize> = states.iter().enumerate().map(|(i, q)| (q, i)).collect();
    for (j, (&inp, d)) in inputs.iter().zip(&delta_fn).enumerate() {
        if let Some(v) = zeiger_violation(&wreath, d) {
            return Err(inconsistency(format!(
                "δ_{}({}) is not Zeiger: {v:?} (input {j})",
                la.k,
                st.show(inp)
            )));
        }
        for (i, q) in states.iter().enumerate() {
            let (next, _) = la.step(q, inp)?;
            let target = index
                .get(&next)
                .ok_or_else(|| inconsistency("local exploration missed a state"))?;
            if d.act(&wreath, &chi[i]) != chi[*target] {
                return Err(inconsistency(format!(
                    "equivariance fails for coordinate {} at {} under {}",
                    la.k,
                    la.describe(q),
                    st.show(inp)
                )));
            }
        }
    }
    Ok(EmbeddingWitness {
        k: la.k,
        kind: la.kind,
        wreath,
        states,
        chi,
        inputs,
        delta: delta_fn,
    })
}

/// `J_k`, then `Below(J_k)`, then `I`.
fn local_inputs(la: &LocalAutomaton<'_>) -> Vec<usize> {
    let st = la.setup();
    let mut inputs: Vec<usize> = la.members().to_vec();
    for k in la.k + 1..=st.n_coords() {
        inputs.extend(st.local(k).members());
    }
    inputs.push(st.one());
    inputs
}

fn reachable_local_states(la: &LocalAutomaton<'_>, inputs: &[usize], cap: usize) -> Result<Vec<LocalState>> {
    let mut states = vec![LocalState::Init];
    let mut seen: HashSet<LocalState> = HashSet::from([LocalState::Init]);
    let mut queue = VecDeque::from([LocalState::Init]);
    while let Some(q) = queue.pop_front() {
        for &inp in inputs {
            let (next, _) = la.step(&q, inp)?;
            if seen.insert(next.clone()) {
                if states.len() >= cap {
                    return Err(resource("exploring a local automaton", cap));
                }
                states.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(states)
}

type Embedding<'a> = (
    WreathProduct,
    Box<dyn Fn(&LocalState) -> Result<Vec<u32>> + 'a>,
    Vec<Cascade>,
);

/// `((A×G)^•, G ∪ resets) ≀ (B^•, {id} ∪ resets)`, `•` encoded as point 0.
fn regular_embedding<'a>(la: &LocalAutomaton<'a>, inputs: &[usize]) -> Result<Embedding<'a>> {
    let st = la.setup();
    let rc = rees_coordinatization(&st.green, la.class)?;
    let (na, nb) = (rc.a_index.len(), rc.b_index.len());
    let grp = rc.group.table.clone();
    let ng = grp.size();
    let ag = move |a: usize, g: usize| (1 + a * ng + g) as u32;
    let perms: Vec<Vec<u32>> = (0..ng)
        .map(|h| {
            std::iter::once(0)
                .chain((0..na).flat_map(|a| (0..ng).map(move |g| (a, g))).map(|(a, g)| ag(a, grp.mul(g, h))))
                .collect()
        })
        .collect();
    let w = WreathProduct::new(vec![PrLevel::trivial(nb + 1), PrLevel::new(1 + na * ng, perms)?])?;
    let own: HashSet<usize> = la.members().iter().copied().collect();
    let mut delta = Vec::with_capacity(inputs.len());
    for &x in inputs {
        let d = if x == st.one() {
            w.identity_cascade()
        } else if !own.contains(&x) {
            Cascade::from_fn(&w, |_, _| LevelMap::Const(0))?
        } else {
            let (ax, gx, bx) = rc.coords(x);
            let matrix = &rc.matrix;
            let g = &rc.group.table;
            Cascade::from_fn(&w, |i, lower| match (i, lower.first()) {
                (1, _) => LevelMap::Const(1 + bx as u32),
                (_, Some(&0)) => LevelMap::Const(ag(ax, gx)),
                (_, Some(&b)) => match matrix[b as usize - 1][ax] {
                    Some(c) => LevelMap::Group(g.mul(c, gx)),
                    None => LevelMap::Const(ag(ax, gx)),
                },
                _ => unreachable!("level 2 sees level 1"),
            })?
        };
        delta.push(d);
    }
    let lambda = rc.lambda.clone();
    let chi = Box::new(move |q: &LocalState| -> Result<Vec<u32>> {
        match q {
            LocalState::Init => Ok(vec![0, 0]),
            LocalState::Elem(x) => {
                let (a, g, b) = lambda
                    .get(x)
                    .copied()
                    .ok_or_else(|| inconsistency("state outside the regular class"))?;
                Ok(vec![1 + b as u32, ag(a, g)])
            }
            LocalState::Fragile(_) => Err(inconsistency("fragile string at a regular coordinate")),
        }
    });
    Ok((w, chi, delta))
}

/// `d_k + 1` copies of `(J_k^•, {id} ∪ resets)`, `•` encoded as point 0.
fn null_embedding<'a>(la: &LocalAutomaton<'a>, inputs: &[usize]) -> Result<Embedding<'a>> {
    let st = la.setup();
    let members = la.members().to_vec();
    let pos: HashMap<usize, u32> = members.iter().enumerate().map(|(i, &x)| (x, i as u32 + 1)).collect();
    let levels = la.depth + 1;
    let w = WreathProduct::new(vec![PrLevel::trivial(members.len() + 1); levels])?;
    let la = *la;
    let mut delta = Vec::with_capacity(inputs.len());
    for &x in inputs {
        let d = if x == st.one() {
            w.identity_cascade()
        } else if let Some(&px) = pos.get(&x) {
            Cascade::from_fn(&w, |i, lower| {
                if i == 1 {
                    return LevelMap::Const(px);
                }
                // keep x_{i-1} iff the condensed (x_{i-1}, …, x_1, X) is fragile
                let mut string: Vec<usize> = lower
                    .iter()
                    .rev()
                    .filter(|&&p| p != 0)
                    .map(|&p| members[p as usize - 1])
                    .collect();
                string.push(x);
                if la.classify_string(&string) == Fragility::Fragile {
                    LevelMap::Const(lower[i - 2])
                } else {
                    LevelMap::Const(0)
                }
            })?
        } else {
            Cascade::from_fn(&w, |_, _| LevelMap::Const(0))?
        };
        delta.push(d);
    }
    let chi = Box::new(move |q: &LocalState| -> Result<Vec<u32>> {
        let mut point = vec![0u32; levels];
        match q {
            LocalState::Init => {}
            LocalState::Fragile(xs) => {
                if xs.len() > levels {
                    return Err(inconsistency("fragile string longer than the wreath"));
                }
                for (level, x) in xs.iter().rev().enumerate() {
                    point[level] = *pos
                        .get(x)
                        .ok_or_else(|| inconsistency("state outside the null class"))?;
                }
            }
            LocalState::Elem(_) => return Err(inconsistency("element state at a null coordinate")),
        }
        Ok(point)
    });
    Ok((w, chi, delta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub k: usize,
    pub kind: ClassKind,
    pub levels: usize,
    pub points: usize,
    pub states: usize,
    pub inputs: usize,
    /// Injectivity, equivariance and the Zeiger property (verified together).
    pub verified: bool,
    /// The subgroup bound used `Ω_k` instead of all points.
    pub restricted: bool,
    pub bound: SubgroupBoundReport,
    pub level_group_orders: Vec<usize>,
}

/// Embeds every coordinate of the expansion and checks the subgroup bound.
pub fn check_embeddings(setup: &SetupData, caps: &Caps) -> Result<Vec<EmbeddingReport>> {
    (1..=setup.n_coords())
        .map(|k| {
            let la = setup.local(k);
            let wit = embed_local(&la, caps)?;
            let restricted = wit.wreath.n_points() > MAX_BOUND_POINTS;
            let image = wit.image();
            let mut distinct: Vec<Cascade> = Vec::new();
            for d in &wit.delta {
                if !distinct.contains(d) {
                    distinct.push(d.clone());
                }
            }
            let bound = zeiger_subgroup_bound(
                &wit.wreath,
                &distinct,
                restricted.then_some(image.as_slice()),
                caps.max_tsgp,
            )?;
            Ok(EmbeddingReport {
                k,
                kind: wit.kind,
                levels: wit.wreath.n_levels(),
                points: wit.wreath.n_points(),
                states: wit.states.len(),
                inputs: wit.inputs.len(),
                verified: true,
                restricted,
                bound,
                level_group_orders: (1..=wit.wreath.n_levels())
                    .map(|i| wit.wreath.level(i).group().size())
                    .collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grp::Variety;
    use crate::prodexp::build_setup_data;

    #[test]
    fn zeiger_predicate() {
        let w = WreathProduct::new(vec![PrLevel::cyclic(2), PrLevel::cyclic(2)]).unwrap();
        assert_eq!(w.n_points(), 4);
        assert!(is_zeiger(&w, &w.identity_cascade()));
        let bad = Cascade::from_fn(&w, |i, _| if i == 1 { LevelMap::Group(1) } else { LevelMap::Const(0) }).unwrap();
        assert!(!is_zeiger(&w, &bad));
        let good = Cascade::from_fn(&w, |i, _| if i == 1 { LevelMap::Const(1) } else { LevelMap::Group(1) }).unwrap();
        assert!(is_zeiger(&w, &good));
    }

    #[test]
    fn n2_null_embedding() {
        let st = build_setup_data(&fixtures::n2(), &Variety::Trivial, &Caps::default()).unwrap();
        let la = st.local(1);
        let wit = embed_local(&la, &Caps::default()).unwrap();
        assert_eq!(wit.wreath.n_levels(), 3);
        let a = st.cs.singleton_index(0);
        let i = wit.states.iter().position(|q| *q == LocalState::Fragile(vec![a, a])).unwrap();
        // (•, {a}, {a}) read top-down
        assert_eq!(wit.chi[i], vec![1, 1, 0]);
        let init = wit.states.iter().position(|q| *q == LocalState::Init).unwrap();
        assert_eq!(wit.chi[init], vec![0, 0, 0]);
    }

    #[test]
    fn regular_embeddings() {
        for (s, h) in [(fixtures::cyclic_group(2), Variety::Trivial), (fixtures::s3(), Variety::All)] {
            let st = build_setup_data(&s, &h, &Caps::default()).unwrap();
            let reports = check_embeddings(&st, &Caps::default()).unwrap();
            assert!(reports.iter().all(|r| r.verified && r.bound.passed()), "{reports:?}");
            assert_eq!(reports[0].levels, 2);
        }
    }
}
