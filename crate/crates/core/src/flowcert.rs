//! Automata, transition semigroups, flow verification, cover complexes and
//! the end-to-end pointlike certificate.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::blowup::{audit_axioms, CheckKind};
use crate::caps::Caps;
use crate::complex::{close_complex, SComplex};
use crate::error::{Error, Result};
use crate::grp::Variety;
use crate::prodexp::{build_setup_data, explore, verify_updatemult, ProductExpansion};
use crate::sgp::{FiniteSemigroup, TransformationSemigroup, Word};

/// A complete deterministic automaton over the letters `alphabet` (elements of `S`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    pub alphabet: Vec<usize>,
    pub initial: usize,
    /// `delta[q][i]` is the state reached from `q` by `alphabet[i]`.
    pub delta: Vec<Vec<usize>>,
}

impl Automaton {
    pub fn new(alphabet: Vec<usize>, initial: usize, delta: Vec<Vec<usize>>) -> Result<Self> {
        let n = delta.len();
        if initial >= n {
            return Err(Error::IndexOutOfRange(format!("initial state {initial}")));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() || row.iter().any(|&p| p >= n) {
                return Err(Error::Invalid(format!("transition row of state {q} is not total")));
            }
        }
        Ok(Automaton {
            alphabet,
            initial,
            delta,
        })
    }

    pub fn n_states(&self) -> usize {
        self.delta.len()
    }

    pub fn step(&self, q: usize, letter_pos: usize) -> usize {
        self.delta[q][letter_pos]
    }
}

/// `Cay(S) = (S, S^I, I, ·)`; state `|S|` is `I`.
pub fn cayley_automaton(s: &FiniteSemigroup) -> Automaton {
    let n = s.size();
    let mut delta: Vec<Vec<usize>> = (0..n).map(|q| s.row(q).to_vec()).collect();
    delta.push((0..n).collect());
    Automaton {
        alphabet: (0..n).collect(),
        initial: n,
        delta,
    }
}

pub fn expansion_automaton(px: &ProductExpansion) -> Automaton {
    Automaton {
        alphabet: px.alphabet.clone(),
        initial: 0,
        delta: px.transitions.clone(),
    }
}

/// The semigroup generated by the letter actions.
#[derive(Clone, Debug)]
pub struct TransitionSemigroup {
    pub maps: TransformationSemigroup,
}

impl TransitionSemigroup {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Element realising the letter at `pos` in the alphabet.
    pub fn letter(&self, pos: usize) -> usize {
        self.maps.generator(pos)
    }
}

pub fn transition_semigroup(a: &Automaton, cap: usize) -> Result<TransitionSemigroup> {
    let gens: Vec<Vec<u32>> = (0..a.alphabet.len())
        .map(|i| a.delta.iter().map(|row| row[i] as u32).collect())
        .collect();
    Ok(TransitionSemigroup {
        maps: TransformationSemigroup::generate(a.n_states(), &gens, cap)?,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowReport {
    pub initial_ok: bool,
    pub step_ok: bool,
    pub witnesses: Vec<String>,
}

impl FlowReport {
    pub fn passed(&self) -> bool {
        self.initial_ok && self.step_ok
    }
}

/// `s ∈ ⟨init ◦ s⟩` and `⟨q⟩·{s} ⊆ ⟨q ◦ s⟩` for every non-initial `q`.
/// `phi` is indexed by state; the initial state's entry is ignored.
pub fn verify_flow(s: &FiniteSemigroup, a: &Automaton, phi: &[Option<BitSet>]) -> FlowReport {
    let mut report = FlowReport {
        initial_ok: true,
        step_ok: true,
        witnesses: Vec::new(),
    };
    let label = |q: usize| phi.get(q).and_then(|x| x.as_ref());
    for (i, &letter) in a.alphabet.iter().enumerate() {
        let q = a.step(a.initial, i);
        if !label(q).is_some_and(|x| x.contains(letter)) {
            report.initial_ok = false;
            report.witnesses.push(format!("letter {letter} is missing from the label of state {q}"));
        }
    }
    for q in 0..a.n_states() {
        if q == a.initial {
            continue;
        }
        let Some(x) = label(q) else {
            report.step_ok = false;
            report.witnesses.push(format!("state {q} has no label"));
            continue;
        };
        for (i, &letter) in a.alphabet.iter().enumerate() {
            let p = a.step(q, i);
            let moved = BitSet::from_elems(s.size(), x.iter().map(|y| s.mul(y, letter)));
            if !label(p).is_some_and(|y| moved.is_subset(y)) {
                report.step_ok = false;
                report.witnesses.push(format!(
                    "label {x} of state {q} times {letter} = {moved} escapes the label of state {p}"
                ));
            }
        }
    }
    report
}

/// Least complex containing every label.
pub fn cover_complex(s: &FiniteSemigroup, phi: &[Option<BitSet>], cap: usize) -> Result<SComplex> {
    let seeds: Vec<BitSet> = phi.iter().flatten().cloned().collect();
    close_complex(s, &seeds, cap)
}

pub fn flow_labels(px: &ProductExpansion) -> Vec<Option<BitSet>> {
    px.flow
        .iter()
        .map(|f| f.map(|x| px.setup.cs.member(x).clone()))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub checked: usize,
    pub max_order: usize,
    pub failures: Vec<String>,
}

/// Every maximal subgroup of the transition semigroup lies in `h`.
pub fn check_subgroups(ts: &TransitionSemigroup, h: &Variety) -> Result<SubgroupReport> {
    let mut report = SubgroupReport::default();
    for m in ts.maps.maximal_subgroups()? {
        report.checked += 1;
        report.max_order = report.max_order.max(m.group.size());
        if !h.is_member(&m.group) {
            report.failures.push(format!(
                "subgroup of order {} at idempotent {} (rank {}) is not in {h}",
                m.group.size(),
                m.idempotent,
                m.rank
            ));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupSummary {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub flow: bool,
    pub updatemult: bool,
    pub cover_subset: bool,
    pub subgroups: bool,
    pub blowup_axioms: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub complex_size: usize,
    pub core_classes: usize,
    pub states: usize,
    pub transition_semigroup_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub semigroup: SemigroupSummary,
    pub variety: String,
    pub maximal_pointlikes: Vec<Vec<usize>>,
    /// Upper bound checked by machine: flow, cover inclusion and subgroups.
    pub certified: bool,
    /// How the reverse inclusion is justified.
    pub lower_bound: String,
    pub checks: Checks,
    pub stats: Stats,
    pub caps: Caps,
    pub witnesses: Vec<String>,
    pub deviations: Vec<String>,
}

pub const DEVIATIONS: [&str; 2] = [
    "Below(J_k) is read as the core classes J_i with i > k",
    "at state • an input from Below(J_k) is passed through unchanged and may be J-incomparable to J_k",
];

/// Everything the certificate is computed from, kept for further checks.
#[derive(Clone, Debug)]
pub struct CertifiedRun {
    pub certificate: Certificate,
    pub candidate: SComplex,
    pub expansion: ProductExpansion,
    pub transition: TransitionSemigroup,
}

pub fn certify_pointlikes(s: &FiniteSemigroup, h: &Variety, caps: &Caps) -> Result<CertifiedRun> {
    let setup = build_setup_data(s, h, caps)?;
    let candidate = setup.cs.complex().clone();
    let audit = audit_axioms(&setup.cs, &setup.green, &setup.beta);
    let core = setup.n_coords();
    let px = explore(setup, caps.max_states)?;
    let automaton = expansion_automaton(&px);
    let labels = flow_labels(&px);
    let flow = verify_flow(s, &automaton, &labels);
    let updatemult = verify_updatemult(&px)?;
    let cover = cover_complex(s, &labels, caps.max_complex)?;
    let cover_ok = cover.is_subcomplex_of(&candidate);
    let ts = transition_semigroup(&automaton, caps.max_tsgp)?;
    let subgroups = check_subgroups(&ts, h)?;

    let mut witnesses = flow.witnesses.clone();
    witnesses.extend(updatemult.violations.iter().cloned());
    if !cover_ok {
        witnesses.extend(
            cover
                .members()
                .iter()
                .filter(|x| !candidate.contains(x))
                .map(|x| format!("cover member {x} is not in the candidate")),
        );
    }
    witnesses.extend(subgroups.failures.iter().cloned());
    witnesses.extend(
        audit
            .checks
            .iter()
            .filter(|c| !c.passed && c.kind != CheckKind::Informational)
            .map(|c| format!("blowup {}: {}", c.name, c.witness.as_deref().unwrap_or(""))),
    );

    let checks = Checks {
        flow: flow.passed(),
        updatemult: updatemult.passed(),
        cover_subset: cover_ok,
        subgroups: subgroups.failures.is_empty(),
        blowup_axioms: audit.all_passed(),
    };
    let certificate = Certificate {
        semigroup: SemigroupSummary {
            size: s.size(),
            table: s.rows(),
        },
        variety: h.to_string(),
        maximal_pointlikes: candidate.maximal_lists(),
        certified: checks.flow && checks.cover_subset && checks.subgroups,
        lower_bound: "by-theorem".into(),
        checks,
        stats: Stats {
            complex_size: candidate.len(),
            core_classes: core,
            states: px.len(),
            transition_semigroup_size: ts.len(),
        },
        caps: *caps,
        witnesses,
        deviations: DEVIATIONS.iter().map(|d| d.to_string()).collect(),
    };
    Ok(CertifiedRun {
        certificate,
        candidate,
        expansion: px,
        transition: ts,
    })
}

/// Samples words of length `1..=max_len` and returns those whose value
/// escapes the flow label of the state they reach.
pub fn sample_word_soundness<R: Rng>(
    px: &ProductExpansion,
    words: usize,
    max_len: usize,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>> {
    let s = &px.setup.base;
    let mut failures = Vec::new();
    for _ in 0..words {
        let len = rng.gen_range(1..=max_len);
        let letters: Vec<usize> = (0..len)
            .map(|_| px.alphabet[rng.gen_range(0..px.alphabet.len())])
            .collect();
        let value = s.eval_word(&Word::new(letters.clone())?);
        let q = px.run(&letters)?;
        let label = px.flow[q].map(|x| px.setup.cs.member(x));
        if !label.is_some_and(|x| x.contains(value)) {
            failures.push(letters);
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::singletons;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn n2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, &[vec![1, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn cayley() {
        for s in [z2(), n2()] {
            let a = cayley_automaton(&s);
            assert_eq!(a.n_states(), 3);
            let ts = transition_semigroup(&a, 100).unwrap();
            assert_eq!(ts.len(), 2);
            assert_eq!(&ts.maps.semigroup(), &s);
            let phi: Vec<Option<BitSet>> = (0..3)
                .map(|q| (q < 2).then(|| BitSet::singleton(2, q)))
                .collect();
            assert!(verify_flow(&s, &a, &phi).passed());
            assert_eq!(cover_complex(&s, &phi, 100).unwrap(), singletons(&s));
        }
    }

    #[test]
    fn bad_flow_has_witness() {
        let s = z2();
        let a = cayley_automaton(&s);
        let phi = vec![Some(BitSet::singleton(2, 0)), Some(BitSet::singleton(2, 0)), None];
        let report = verify_flow(&s, &a, &phi);
        assert!(!report.passed());
        assert!(!report.witnesses.is_empty());
        let full = vec![Some(BitSet::full(2)), Some(BitSet::full(2)), None];
        assert!(verify_flow(&s, &a, &full).passed());
    }

    #[test]
    fn certificates() {
        let run = certify_pointlikes(&z2(), &Variety::Trivial, &Caps::default()).unwrap();
        let c = &run.certificate;
        assert!(c.certified, "{c:?}");
        assert_eq!(c.maximal_pointlikes, vec![vec![0, 1]]);
        assert_eq!(c.stats.states, 2);
        assert_eq!(c.stats.transition_semigroup_size, 1);
        let run = certify_pointlikes(&n2(), &Variety::Trivial, &Caps::default()).unwrap();
        assert!(run.certificate.certified);
        assert_eq!(run.certificate.maximal_pointlikes, vec![vec![0], vec![1]]);
        let groups = check_subgroups(&run.transition, &Variety::Trivial).unwrap();
        assert_eq!(groups.max_order, 1);
    }
}
