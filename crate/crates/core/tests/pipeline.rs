use std::collections::{BTreeMap, HashSet, VecDeque};

use pointlike::blowup::{audit_axioms, core_classes, h_member_classes};
use pointlike::flowcert::{
    certify_pointlikes, expansion_automaton, flow_labels, transition_semigroup, verify_flow, Automaton,
};
use pointlike::green::{compute_green, maximal_subgroups};
use pointlike::grp::{isomorphic, Variety};
use pointlike::prodexp::{build_setup_data, explore, explore_with_alphabet, verify_updatemult, LocalState};
use pointlike::{fixtures, BitSet, Caps};

const VARIETIES: [&str; 5] = ["triv", "ab", "p:2", "solvable", "all"];

fn runs() -> impl Iterator<Item = (&'static str, &'static str)> {
    fixtures::CORPUS.iter().flat_map(|f| VARIETIES.iter().map(move |v| (*f, *v)))
}

/// Every value a word can take on its way to each state, by a search over
/// (state, value) pairs.
fn reachable_values(s: &pointlike::FiniteSemigroup, a: &Automaton) -> Vec<HashSet<usize>> {
    let mut seen: Vec<HashSet<usize>> = vec![HashSet::new(); a.n_states()];
    let mut queue = VecDeque::new();
    for (i, &x) in a.alphabet.iter().enumerate() {
        let q = a.step(a.initial, i);
        if seen[q].insert(x) {
            queue.push_back((q, x));
        }
    }
    while let Some((q, v)) = queue.pop_front() {
        for (i, &x) in a.alphabet.iter().enumerate() {
            let (p, w) = (a.step(q, i), s.mul(v, x));
            if seen[p].insert(w) {
                queue.push_back((p, w));
            }
        }
    }
    seen
}

#[test]
fn every_reachable_value_lies_in_its_flow_label() {
    for (f, v) in runs() {
        let s = fixtures::by_name(f).unwrap();
        let run = certify_pointlikes(&s, &v.parse().unwrap(), &Caps::default()).unwrap();
        let px = &run.expansion;
        let labels = flow_labels(px);
        let values = reachable_values(&s, &expansion_automaton(px));
        for (q, vals) in values.iter().enumerate() {
            if q == px.states.iter().position(|st| st.is_initial()).unwrap() {
                continue;
            }
            let label = labels[q].as_ref().unwrap();
            for &x in vals {
                assert!(label.contains(x), "{f}/{v}: value {x} escapes state {q}");
            }
            // labels of reachable states are pointlike-candidates
            assert!(run.candidate.contains(label), "{f}/{v}");
        }
    }
}

#[test]
fn flow_checker_rejects_shrunken_labels() {
    let s = fixtures::by_name("Z2").unwrap();
    let run = certify_pointlikes(&s, &Variety::Trivial, &Caps::default()).unwrap();
    let a = expansion_automaton(&run.expansion);
    let mut labels = flow_labels(&run.expansion);
    assert!(verify_flow(&s, &a, &labels).passed());
    let q = labels.iter().position(|l| l.is_some()).unwrap();
    labels[q] = Some(BitSet::singleton(2, 0));
    let report = verify_flow(&s, &a, &labels);
    assert!(!report.passed());
    assert!(!report.witnesses.is_empty());
}

#[test]
fn transition_subgroups_match_green_structure() {
    for (f, v) in runs() {
        let s = fixtures::by_name(f).unwrap();
        let h: Variety = v.parse().unwrap();
        let run = certify_pointlikes(&s, &h, &Caps::default()).unwrap();
        let ts = &run.transition;
        let fast = ts.maps.maximal_subgroups().unwrap();
        let table = ts.maps.semigroup();
        let slow = maximal_subgroups(&compute_green(&table));
        let count = |orders: Vec<usize>| {
            let mut m = BTreeMap::new();
            for o in orders {
                *m.entry(o).or_insert(0) += 1;
            }
            m
        };
        assert_eq!(
            count(fast.iter().map(|m| m.group.size()).collect()),
            count(slow.iter().map(|m| m.group.size()).collect()),
            "{f}/{v}"
        );
        for m in &fast {
            let other = slow.iter().find(|x| x.idempotent == m.idempotent).unwrap();
            assert!(isomorphic(&m.group, &other.group), "{f}/{v}");
            assert!(h.is_member(&m.group), "{f}/{v}");
        }
    }
}

#[test]
fn blowup_audit_and_core_on_corpus() {
    for (f, v) in runs() {
        let s = fixtures::by_name(f).unwrap();
        let h: Variety = v.parse().unwrap();
        let setup = build_setup_data(&s, &h, &Caps::default()).unwrap();
        let audit = audit_axioms(&setup.cs, &setup.green, &setup.beta);
        assert!(audit.all_passed(), "{f}/{v}: {:?}", audit.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        let mut core = core_classes(&setup.green, &setup.beta).unwrap();
        let mut member = h_member_classes(&setup.green, &h);
        core.sort_unstable();
        member.sort_unstable();
        assert_eq!(core, member, "{f}/{v}");
        let mut js = setup.j_star.clone();
        js.sort_unstable();
        let one_class = setup.green.j_class[setup.one()];
        core.retain(|&c| c != one_class);
        assert_eq!(js, core, "{f}/{v}");
    }
}

#[test]
fn z2_trivial_end_to_end() {
    let s = fixtures::by_name("Z2").unwrap();
    let run = certify_pointlikes(&s, &Variety::Trivial, &Caps::default()).unwrap();
    let c = &run.certificate;
    assert!(c.certified);
    assert_eq!(c.maximal_pointlikes, vec![vec![0, 1]]);
    assert_eq!(c.stats.states, 2);
    assert_eq!(c.stats.transition_semigroup_size, 1);
}

#[test]
fn n2_trivial_end_to_end() {
    let s = fixtures::by_name("N2").unwrap();
    let run = certify_pointlikes(&s, &Variety::Trivial, &Caps::default()).unwrap();
    assert!(run.certificate.certified);
    assert_eq!(run.certificate.maximal_pointlikes, vec![vec![0], vec![1]]);
    assert!(verify_updatemult(&run.expansion).unwrap().passed());

    let setup = build_setup_data(&s, &Variety::Trivial, &Caps::default()).unwrap();
    let (a, z) = (setup.cs.singleton_index(0), setup.cs.singleton_index(1));
    let px = explore_with_alphabet(setup, vec![0], 100).unwrap();
    let coords: Vec<Vec<LocalState>> = px.states.iter().map(|q| q.coords.clone()).collect();
    let expect = vec![
        vec![LocalState::Init, LocalState::Init],
        vec![LocalState::Fragile(vec![a]), LocalState::Init],
        vec![LocalState::Fragile(vec![a, a]), LocalState::Init],
        vec![LocalState::Fragile(vec![a, a]), LocalState::Elem(z)],
    ];
    assert_eq!(coords, expect);
    assert_eq!(px.run(&[0, 0, 0, 0, 0]).unwrap(), 3);
}

#[test]
fn s3_abelian_end_to_end() {
    let s = fixtures::s3();
    let run = certify_pointlikes(&s, &Variety::Abelian, &Caps::default()).unwrap();
    assert!(run.certificate.certified);
    let m = &run.certificate.maximal_pointlikes;
    assert_eq!(m.len(), 2);
    assert_eq!(m.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3]);
    let mut all: Vec<usize> = m.concat();
    all.sort_unstable();
    assert_eq!(all, (0..6).collect::<Vec<_>>());
}

#[test]
fn full_alphabet_expansions_pass_updatemult() {
    for (f, v) in runs() {
        let s = fixtures::by_name(f).unwrap();
        let setup = build_setup_data(&s, &v.parse().unwrap(), &Caps::default()).unwrap();
        let px = explore(setup, 10_000).unwrap();
        let report = verify_updatemult(&px).unwrap();
        assert!(report.passed(), "{f}/{v}: {:?}", report.violations);
        assert!(report.checked > 0);
    }
}

#[test]
fn transition_semigroup_of_cayley_automaton_is_the_monoid() {
    for f in fixtures::CORPUS {
        let s = fixtures::by_name(f).unwrap();
        let ts = transition_semigroup(&pointlike::flowcert::cayley_automaton(&s), 1000).unwrap();
        // right regular representation of S^I is faithful on S
        assert_eq!(ts.len(), s.size(), "{f}");
    }
}
