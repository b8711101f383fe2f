//! Setup data and the product expansion automaton: local automata over the
//! β-core classes, fragile/sturdy strings, the serial ∂ recursion,
//! reachable-state exploration and the canonical flow.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blowup::{beta_gh, core_classes, h_member_classes, omega_iterate, BlowupOperator};
use crate::caps::Caps;
use crate::complex::{as_semigroup, construct_cgh, ComplexSemigroup};
use crate::error::{inconsistency, resource, Error, Result};
use crate::green::{compute_green, left_activator, GreenData};
use crate::grp::Variety;
use crate::sgp::FiniteSemigroup;

/// `𝔡 = (K, β, E_*, J_*)` plus the derived depths.
#[derive(Clone, Debug)]
pub struct SetupData {
    pub base: FiniteSemigroup,
    pub variety: Variety,
    pub cs: ComplexSemigroup,
    /// Green data of `K^I`; index `cs.len()` is `I`.
    pub green: GreenData,
    pub beta: BlowupOperator,
    pub e_star: Vec<usize>,
    /// Core class ids, `j_star[k - 1] = J_k`.
    pub j_star: Vec<usize>,
    /// `depth[k - 1] = d_k`.
    pub depth: Vec<usize>,
    rank: HashMap<usize, usize>,
    beta_singletons: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Regular,
    Null,
}

pub fn build_setup_data(s: &FiniteSemigroup, h: &Variety, caps: &Caps) -> Result<SetupData> {
    let k = construct_cgh(s, h, caps)?;
    let cs = as_semigroup(&k, s, caps.max_complex)?;
    let green = compute_green(cs.sgp());
    green.check_stability()?;
    let beta = omega_iterate(&beta_gh(&cs, &green, h, caps.max_group)?)?;
    let core = core_classes(&green, &beta)?;
    let by_groups = h_member_classes(&green, h);
    if core != by_groups {
        return Err(inconsistency(format!(
            "β-core {core:?} differs from the classes with H-member Schützenberger groups {by_groups:?}"
        )));
    }
    SetupData::assemble(s.clone(), *h, cs, green, beta, &core)
}

impl SetupData {
    fn assemble(
        base: FiniteSemigroup,
        variety: Variety,
        cs: ComplexSemigroup,
        green: GreenData,
        beta: BlowupOperator,
        core: &[usize],
    ) -> Result<Self> {
        let n = cs.len();
        let mut e_star = vec![usize::MAX; n];
        for c in green.base_classes() {
            for (x, e) in left_activator(&green, c)?.witness_idempotents {
                e_star[x] = e;
            }
        }

        // Kahn from the top: take the lowest-id class with nothing strictly above it.
        let mut remaining: Vec<usize> = core.to_vec();
        remaining.sort_unstable();
        let mut j_star = Vec::with_capacity(core.len());
        while !remaining.is_empty() {
            let pos = remaining
                .iter()
                .position(|&c| !remaining.iter().any(|&d| green.class_lt(c, d)))
                .ok_or_else(|| inconsistency("J-order on the core has a cycle"))?;
            j_star.push(remaining.remove(pos));
        }
        let minimal = green
            .base_classes()
            .into_iter()
            .filter(|&c| green.base_classes().iter().all(|&d| green.class_leq(c, d)))
            .collect::<Vec<_>>();
        if minimal.len() != 1 || j_star.last() != minimal.first() {
            return Err(inconsistency("the minimal J-class of K is not last in the core"));
        }

        let chain = chain_lengths(&green);
        let depth = j_star.iter().map(|c| chain[c]).collect();
        let rank = j_star.iter().enumerate().map(|(i, &c)| (c, i + 1)).collect();
        let beta_singletons = (0..base.size())
            .map(|x| beta.apply(cs.singleton_index(x)))
            .collect();
        Ok(SetupData {
            base,
            variety,
            cs,
            green,
            beta,
            e_star,
            j_star,
            depth,
            rank,
            beta_singletons,
        })
    }

    /// Number of core classes `N`.
    pub fn n_coords(&self) -> usize {
        self.j_star.len()
    }

    /// The sentinel `I` as an index of `K^I`.
    pub fn one(&self) -> usize {
        self.cs.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.green.mul(x, y)
    }

    /// `β̄({s})`.
    pub fn closure_of_letter(&self, s: usize) -> usize {
        self.beta_singletons[s]
    }

    /// `k` such that `class = J_k`.
    pub fn rank_of_class(&self, class: usize) -> Option<usize> {
        self.rank.get(&class).copied()
    }

    pub fn kind(&self, k: usize) -> ClassKind {
        if self.green.regular[self.j_star[k - 1]] {
            ClassKind::Regular
        } else {
            ClassKind::Null
        }
    }

    pub fn local(&self, k: usize) -> LocalAutomaton<'_> {
        LocalAutomaton {
            setup: self,
            k,
            class: self.j_star[k - 1],
            kind: self.kind(k),
            depth: self.depth[k - 1],
        }
    }

    /// Human-readable `K^I` element.
    pub fn show(&self, x: usize) -> String {
        if x == self.one() {
            "I".into()
        } else {
            self.cs.member(x).to_string()
        }
    }

    fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.one(), |acc, &x| self.mul(acc, x))
    }
}

/// Longest strict J-chain (counted in elements) topped at each class.
fn chain_lengths(g: &GreenData) -> HashMap<usize, usize> {
    let classes = g.base_classes();
    let mut order = classes.clone();
    order.sort_by_key(|&c| classes.iter().filter(|&&d| g.class_lt(d, c)).count());
    let mut len: HashMap<usize, usize> = HashMap::new();
    for &c in &order {
        let below = classes
            .iter()
            .filter(|&&d| g.class_lt(d, c))
            .map(|d| len[d])
            .max()
            .unwrap_or(0);
        len.insert(c, below + 1);
    }
    len
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LocalState {
    Init,
    Elem(usize),
    Fragile(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fragility {
    Fragile,
    Sturdy,
}

/// Coordinate `k` of the expansion.
#[derive(Clone, Copy, Debug)]
pub struct LocalAutomaton<'a> {
    setup: &'a SetupData,
    pub k: usize,
    pub class: usize,
    pub kind: ClassKind,
    pub depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Sentinel,
    Own,
    Below,
}

impl<'a> LocalAutomaton<'a> {
    pub fn setup(&self) -> &'a SetupData {
        self.setup
    }

    pub fn members(&self) -> &'a [usize] {
        &self.setup.green.j_classes[self.class]
    }

    pub fn classify_input(&self, inp: usize) -> Result<InputKind> {
        let st = self.setup;
        if inp == st.one() {
            return Ok(InputKind::Sentinel);
        }
        if inp > st.one() {
            return Err(Error::InputNotAccepted {
                coord: self.k,
                input: inp.to_string(),
            });
        }
        match st.rank_of_class(st.green.j_class[inp]) {
            Some(r) if r == self.k => Ok(InputKind::Own),
            Some(r) if r > self.k => Ok(InputKind::Below),
            _ => Err(Error::InputNotAccepted {
                coord: self.k,
                input: st.show(inp),
            }),
        }
    }

    pub fn value(&self, q: &LocalState) -> usize {
        match q {
            LocalState::Init => self.setup.one(),
            LocalState::Elem(x) => *x,
            LocalState::Fragile(xs) => self.setup.product(xs),
        }
    }

    /// Strict `≤_L` test on the suffix products.
    pub fn classify_string(&self, xs: &[usize]) -> Fragility {
        let g = &self.setup.green;
        let mut suffix = xs[xs.len() - 1];
        for &x in xs[..xs.len() - 1].iter().rev() {
            let longer = g.mul(x, suffix);
            if g.l_equiv(longer, suffix) {
                return Fragility::Sturdy;
            }
            suffix = longer;
        }
        Fragility::Fragile
    }

    /// `(cut, send)` of a sturdy string.
    pub fn cut_send(&self, xs: &[usize]) -> Result<(Vec<usize>, usize)> {
        let st = self.setup;
        let g = &st.green;
        let n = xs.len();
        // suffix[i] = X_{i+1} ⋯ X_n (0-based i)
        let mut suffix = vec![st.one(); n + 1];
        for i in (0..n).rev() {
            suffix[i] = g.mul(xs[i], suffix[i + 1]);
        }
        let m = (1..n)
            .rev()
            .find(|&m| g.l_equiv(suffix[m - 1], suffix[m]))
            .ok_or_else(|| inconsistency("cut of a fragile string requested"))?;
        let cut = xs[m..].to_vec();
        if self.classify_string(&cut) != Fragility::Fragile {
            return Err(inconsistency(format!("cut {} is not fragile", self.describe_string(&cut))));
        }
        let send = g.mul(st.product(&xs[..m]), st.e_star[suffix[m]]);
        if !g.class_lt(g.j_class[send], self.class) {
            return Err(inconsistency(format!(
                "send {} is not strictly below J_{}",
                st.show(send),
                self.k
            )));
        }
        Ok((cut, send))
    }

    /// One transition with its raw output.
    pub fn step(&self, q: &LocalState, inp: usize) -> Result<(LocalState, usize)> {
        let st = self.setup;
        let g = &st.green;
        let one = st.one();
        let (next, out) = match self.classify_input(inp)? {
            InputKind::Sentinel => return Ok((q.clone(), one)),
            InputKind::Below => (LocalState::Init, g.mul(self.value(q), inp)),
            InputKind::Own => match (self.kind, q) {
                (ClassKind::Regular, LocalState::Init) => (LocalState::Elem(inp), one),
                (ClassKind::Regular, LocalState::Elem(x)) => {
                    let xa = g.mul(*x, inp);
                    if g.r_equiv(xa, *x) {
                        (LocalState::Elem(xa), one)
                    } else {
                        (LocalState::Elem(inp), g.mul(*x, st.e_star[inp]))
                    }
                }
                (ClassKind::Null, LocalState::Init) => (LocalState::Fragile(vec![inp]), one),
                (ClassKind::Null, LocalState::Fragile(xs)) => {
                    let mut ys = xs.clone();
                    ys.push(inp);
                    if self.classify_string(&ys) == Fragility::Fragile {
                        (LocalState::Fragile(ys), one)
                    } else {
                        let (cut, send) = self.cut_send(&ys)?;
                        (LocalState::Fragile(cut), send)
                    }
                }
                (kind, q) => {
                    return Err(inconsistency(format!(
                        "state {q:?} does not belong to a {kind:?} coordinate"
                    )))
                }
            },
        };
        self.check_state(&next)?;
        if out != one {
            let below = g.class_lt(g.j_class[out], self.class);
            let passthrough = *q == LocalState::Init && out == inp;
            if !below && !passthrough {
                return Err(inconsistency(format!(
                    "coordinate {} emitted {} outside B(J_{})",
                    self.k,
                    st.show(out),
                    self.k
                )));
            }
        }
        Ok((next, out))
    }

    fn check_state(&self, q: &LocalState) -> Result<()> {
        let g = &self.setup.green;
        let in_class = |x: usize| x < self.setup.one() && g.j_class[x] == self.class;
        match q {
            LocalState::Init => Ok(()),
            LocalState::Elem(x) if in_class(*x) => Ok(()),
            LocalState::Fragile(xs)
                if xs.iter().all(|&x| in_class(x))
                    && !xs.is_empty()
                    && xs.len() <= self.depth
                    && self.classify_string(xs) == Fragility::Fragile =>
            {
                Ok(())
            }
            _ => Err(inconsistency(format!(
                "coordinate {} reached an invalid state {}",
                self.k,
                self.describe(q)
            ))),
        }
    }

    pub fn describe_string(&self, xs: &[usize]) -> String {
        let parts: Vec<String> = xs.iter().map(|&x| self.setup.show(x)).collect();
        format!("({})", parts.join(","))
    }

    pub fn describe(&self, q: &LocalState) -> String {
        match q {
            LocalState::Init => "•".into(),
            LocalState::Elem(x) => self.setup.show(*x),
            LocalState::Fragile(xs) => self.describe_string(xs),
        }
    }
}

/// `[q_N, …, q_1]`, stored with `coords[k - 1] = q_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlobalState {
    pub coords: Vec<LocalState>,
}

impl GlobalState {
    pub fn initial(n: usize) -> Self {
        GlobalState {
            coords: vec![LocalState::Init; n],
        }
    }

    pub fn is_initial(&self) -> bool {
        self.coords.iter().all(|q| *q == LocalState::Init)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordStep {
    pub input: usize,
    pub output: usize,
    pub state: LocalState,
}

/// `steps[k - 1]` records coordinate `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub letter: usize,
    pub steps: Vec<CoordStep>,
}

/// `q ⊛ s`: coordinates fed in order `1..N`, each input computed from the
/// pre-update state of the coordinate above it.
pub fn global_step(setup: &SetupData, q: &GlobalState, s: usize) -> Result<(GlobalState, StepTrace)> {
    if s >= setup.base.size() {
        return Err(Error::IndexOutOfRange(format!("letter {s}")));
    }
    let one = setup.one();
    let mut d = setup.closure_of_letter(s);
    let mut steps = Vec::with_capacity(setup.n_coords());
    let mut coords = Vec::with_capacity(setup.n_coords());
    for k in 1..=setup.n_coords() {
        let la = setup.local(k);
        let (next, out) = la.step(&q.coords[k - 1], d).map_err(|e| match e {
            Error::InputNotAccepted { coord, input } => inconsistency(format!(
                "∂_{coord} = {input} rejected by coordinate {coord}"
            )),
            other => other,
        })?;
        steps.push(CoordStep {
            input: d,
            output: out,
            state: next.clone(),
        });
        coords.push(next);
        d = if out == one { one } else { setup.beta.apply(out) };
    }
    if d != one {
        return Err(inconsistency(format!(
            "the last coordinate emitted {}",
            setup.show(d)
        )));
    }
    Ok((GlobalState { coords }, StepTrace { letter: s, steps }))
}

/// `⟦q_N⟧ ⋯ ⟦q_1⟧`.
pub fn flow_value(setup: &SetupData, q: &GlobalState) -> Result<usize> {
    if q.is_initial() {
        return Err(inconsistency("flow is undefined at the initial state"));
    }
    let v = (1..=setup.n_coords())
        .rev()
        .fold(setup.one(), |acc, k| {
            setup.mul(acc, setup.local(k).value(&q.coords[k - 1]))
        });
    if v == setup.one() {
        return Err(inconsistency("flow value is the sentinel"));
    }
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct ProductExpansion {
    pub setup: SetupData,
    pub alphabet: Vec<usize>,
    /// `states[0]` is `[•]`.
    pub states: Vec<GlobalState>,
    /// `transitions[q][i]` is the target under `alphabet[i]`.
    pub transitions: Vec<Vec<usize>>,
    /// `flow[q]` is `None` exactly at the initial state.
    pub flow: Vec<Option<usize>>,
}

/// Breadth-first closure of `[•]` under every element of `S`.
pub fn explore(setup: SetupData, max_states: usize) -> Result<ProductExpansion> {
    let alphabet = (0..setup.base.size()).collect();
    explore_with_alphabet(setup, alphabet, max_states)
}

/// Breadth-first closure of `[•]` under the given letters only.
pub fn explore_with_alphabet(
    setup: SetupData,
    alphabet: Vec<usize>,
    max_states: usize,
) -> Result<ProductExpansion> {
    let init = GlobalState::initial(setup.n_coords());
    let mut index: HashMap<GlobalState, usize> = HashMap::new();
    let mut states = vec![init.clone()];
    index.insert(init, 0);
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let mut row = Vec::with_capacity(alphabet.len());
        for &s in &alphabet {
            let (next, _) = global_step(&setup, &states[q], s)?;
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= max_states {
                        return Err(resource("exploring the product expansion", max_states));
                    }
                    let id = states.len();
                    index.insert(next.clone(), id);
                    states.push(next);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        if transitions.len() <= q {
            transitions.resize(q + 1, Vec::new());
        }
        transitions[q] = row;
    }
    let flow = states
        .iter()
        .map(|q| {
            if q.is_initial() {
                Ok(None)
            } else {
                flow_value(&setup, q).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    Ok(ProductExpansion {
        setup,
        alphabet,
        states,
        transitions,
        flow,
    })
}

impl ProductExpansion {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, q: &GlobalState) -> Option<usize> {
        self.states.iter().position(|p| p == q)
    }

    /// `[•] ⊛ σ`.
    pub fn run(&self, word: &[usize]) -> Result<usize> {
        let mut q = 0;
        for &s in word {
            let i = self
                .alphabet
                .iter()
                .position(|&a| a == s)
                .ok_or_else(|| Error::IndexOutOfRange(format!("letter {s} outside the alphabet")))?;
            q = self.transitions[q][i];
        }
        Ok(q)
    }

    /// `[q_N, …, q_1]` as text.
    pub fn describe(&self, q: &GlobalState) -> String {
        let parts: Vec<String> = (1..=self.setup.n_coords())
            .rev()
            .map(|k| self.setup.local(k).describe(&q.coords[k - 1]))
            .collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn dump(&self) -> AutomatonDump {
        let st = &self.setup;
        AutomatonDump {
            alphabet: self.alphabet.clone(),
            coordinates: (1..=st.n_coords())
                .map(|k| {
                    let la = st.local(k);
                    CoordinateDump {
                        k,
                        kind: la.kind,
                        depth: la.depth,
                        members: la.members().iter().map(|&x| st.cs.member(x).to_vec()).collect(),
                    }
                })
                .collect(),
            states: self
                .states
                .iter()
                .zip(&self.flow)
                .enumerate()
                .map(|(id, (q, f))| StateDump {
                    id,
                    coords: self.describe(q),
                    flow: f.map(|x| st.cs.member(x).to_vec()),
                })
                .collect(),
            transitions: self.transitions.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateDump {
    pub k: usize,
    pub kind: ClassKind,
    pub depth: usize,
    pub members: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateDump {
    pub id: usize,
    pub coords: String,
    pub flow: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDump {
    pub alphabet: Vec<usize>,
    pub coordinates: Vec<CoordinateDump>,
    pub states: Vec<StateDump>,
    pub transitions: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdatemultReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl UpdatemultReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `⟦q_k⟧·∂_k = ⟨q_k, ∂_k⟩·⟦q_k ⊙ ∂_k⟧` over every state, letter and coordinate.
pub fn verify_updatemult(px: &ProductExpansion) -> Result<UpdatemultReport> {
    let st = &px.setup;
    let mut report = UpdatemultReport::default();
    for q in &px.states {
        for &s in &px.alphabet {
            let (_, trace) = global_step(st, q, s)?;
            for (i, step) in trace.steps.iter().enumerate() {
                let la = st.local(i + 1);
                let lhs = st.mul(la.value(&q.coords[i]), step.input);
                let rhs = st.mul(step.output, la.value(&step.state));
                report.checked += 1;
                if lhs != rhs {
                    report.violations.push(format!(
                        "state {}, letter {s}, coordinate {}: {} ≠ {}",
                        px.describe(q),
                        i + 1,
                        st.show(lhs),
                        st.show(rhs)
                    ));
                }
            }
        }
    }
    Ok(report)
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Regular => "regular",
            ClassKind::Null => "null",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, &[vec![1, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn n2_setup_and_trace() {
        let st = build_setup_data(&n2(), &Variety::Trivial, &Caps::default()).unwrap();
        assert_eq!(st.n_coords(), 2);
        assert_eq!(st.kind(1), ClassKind::Null);
        assert_eq!(st.kind(2), ClassKind::Regular);
        assert_eq!(st.depth, vec![2, 1]);
        let (a, z) = (st.cs.singleton_index(0), st.cs.singleton_index(1));
        let la = st.local(1);
        assert_eq!(la.classify_string(&[a]), Fragility::Fragile);
        assert_eq!(la.classify_string(&[a, a]), Fragility::Fragile);
        assert_eq!(la.classify_string(&[a, a, a]), Fragility::Sturdy);
        assert_eq!(la.cut_send(&[a, a, a]).unwrap(), (vec![a, a], z));
        let q = LocalState::Fragile(vec![a, a]);
        assert_eq!(la.step(&q, a).unwrap(), (q.clone(), z));
        assert_eq!(la.step(&q, st.one()).unwrap(), (q.clone(), st.one()));

        let init = GlobalState::initial(2);
        let (q1, trace) = global_step(&st, &init, 0).unwrap();
        assert_eq!(q1.coords, vec![LocalState::Fragile(vec![a]), LocalState::Init]);
        assert!(trace.steps.iter().all(|c| c.output == st.one()));
        let (q2, _) = global_step(&st, &q1, 0).unwrap();
        let (q3, trace) = global_step(&st, &q2, 0).unwrap();
        assert_eq!(q3.coords, vec![LocalState::Fragile(vec![a, a]), LocalState::Elem(z)]);
        assert_eq!(trace.steps[1].input, z);
        assert_eq!(flow_value(&st, &q2).unwrap(), z);
    }

    #[test]
    fn n2_exploration() {
        let st = build_setup_data(&n2(), &Variety::Trivial, &Caps::default()).unwrap();
        let gen_only = explore_with_alphabet(st.clone(), vec![0], 100).unwrap();
        assert_eq!(gen_only.len(), 4);
        let px = explore(st, 100).unwrap();
        assert_eq!(px.len(), 6);
        assert!(verify_updatemult(&px).unwrap().passed());
    }

    #[test]
    fn z2_expansion() {
        let z2 = FiniteSemigroup::from_table(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let st = build_setup_data(&z2, &Variety::Trivial, &Caps::default()).unwrap();
        assert_eq!(st.n_coords(), 1);
        let full = st.closure_of_letter(0);
        assert_eq!(st.cs.member(full).len(), 2);
        let la = st.local(1);
        assert_eq!(
            la.step(&LocalState::Elem(full), full).unwrap(),
            (LocalState::Elem(full), st.one())
        );
        let px = explore(st, 100).unwrap();
        assert_eq!(px.len(), 2);
        assert_eq!(px.flow[1], Some(full));
        assert_eq!(verify_updatemult(&px).unwrap().violations.len(), 0);
    }

    #[test]
    fn rejects_foreign_inputs() {
        let st = build_setup_data(&n2(), &Variety::Trivial, &Caps::default()).unwrap();
        let a = st.cs.singleton_index(0);
        assert!(matches!(
            st.local(2).step(&LocalState::Init, a),
            Err(Error::InputNotAccepted { coord: 2, .. })
        ));
    }
}
