//! Preblowup and blowup operators on a materialised complex: the β_GH
//! operator, ω-iteration, axiom audits, the β-core and multipliers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::complex::ComplexSemigroup;
use crate::error::{inconsistency, Result};
use crate::green::{schutzenberger, GreenData};
use crate::grp::{kernel_checked, Variety};

/// A self-map of a complex, stored on member indices of a [`ComplexSemigroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupOperator {
    map: Vec<usize>,
    idempotent: bool,
}

impl BlowupOperator {
    pub fn new(map: Vec<usize>) -> Self {
        let idempotent = map.iter().all(|&y| map[y] == y);
        BlowupOperator { map, idempotent }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    pub fn is_fixed(&self, x: usize) -> bool {
        self.map[x] == x
    }
}

/// `(X)β = ⋃ {(X)γ : γ ∈ K_{H,Γ_X}}`, where `Γ_X` is the Schützenberger group
/// of the H-class of `X` acting by right translations. The result is audited.
pub fn beta_gh(
    cs: &ComplexSemigroup,
    g: &GreenData,
    h: &Variety,
    group_cap: usize,
) -> Result<BlowupOperator> {
    let n = cs.len();
    let mut map = vec![usize::MAX; n];
    for (hid, members) in g.h_classes.iter().enumerate() {
        let rep = members[0];
        if rep >= n {
            continue;
        }
        let gamma = schutzenberger(g, rep);
        let kernel = kernel_checked(&gamma.table, h, group_cap)?;
        for &x in members {
            let mut image = BitSet::new(cs.complex().base_size());
            for k in kernel.iter() {
                image.union_with(cs.member(gamma.act(k, x)));
            }
            map[x] = cs.index_of(&image).ok_or_else(|| {
                inconsistency(format!("blowup of {} in H-class {hid} leaves the complex", cs.member(x)))
            })?;
        }
    }
    let op = BlowupOperator::new(map);
    let report = audit_axioms(cs, g, &op);
    if let Some(bad) = report.checks.iter().find(|c| c.kind == CheckKind::Axiom && !c.passed) {
        return Err(inconsistency(format!(
            "β_GH violates {}: {}",
            bad.name,
            bad.witness.as_deref().unwrap_or("")
        )));
    }
    Ok(op)
}

/// `β^ω` together with the number of rounds the slowest point needed.
pub fn omega_iterate_counted(op: &BlowupOperator) -> Result<(BlowupOperator, usize)> {
    let n = op.len();
    let mut rounds = 0;
    let mut map = Vec::with_capacity(n);
    for x in 0..n {
        let mut y = x;
        let mut steps = 0;
        while op.map[y] != y {
            y = op.map[y];
            steps += 1;
            if steps > n {
                return Err(inconsistency(format!("iterating from {x} never stabilises")));
            }
        }
        rounds = rounds.max(steps);
        map.push(y);
    }
    Ok((BlowupOperator::new(map), rounds))
}

pub fn omega_iterate(op: &BlowupOperator) -> Result<BlowupOperator> {
    omega_iterate_counted(op).map(|(op, _)| op)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Axiom,
    Derived,
    /// Reported but not required of a preblowup operator.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl AuditReport {
    /// Axioms and derived properties (informational checks excluded).
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.kind != CheckKind::Informational)
            .all(|c| c.passed)
    }

    pub fn axioms_passed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Axiom)
            .all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, kind: CheckKind, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            kind,
            passed: witness.is_none(),
            witness,
        });
    }
}

fn first_failure<I, F>(pairs: I, mut bad: F) -> Option<String>
where
    I: IntoIterator<Item = (usize, usize)>,
    F: FnMut(usize, usize) -> Option<String>,
{
    pairs.into_iter().find_map(|(x, y)| bad(x, y))
}

fn leq_h(g: &GreenData, x: usize, y: usize) -> bool {
    g.leq_r(x, y) && g.leq_l(x, y)
}

/// Checks the three axioms, idempotence when flagged, and the derived
/// properties (1)–(6) (the last two with whatever multipliers exist).
pub fn audit_axioms(cs: &ComplexSemigroup, g: &GreenData, op: &BlowupOperator) -> AuditReport {
    let n = cs.len();
    let b = |x: usize| op.map[x];
    let all_pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let mut report = AuditReport::default();
    let show = |x: usize| cs.member(x).to_string();

    report.push(
        "extensive",
        CheckKind::Axiom,
        (0..n)
            .find(|&x| !cs.member(x).is_subset(cs.member(b(x))))
            .map(|x| format!("{} ⊄ {}", show(x), show(b(x)))),
    );
    report.push(
        "l_monotone",
        CheckKind::Axiom,
        first_failure(all_pairs(), |x, y| {
            (g.l_equiv(x, y) && !g.l_equiv(b(x), b(y))).then(|| {
                format!("{} L {} but images {} and {} are not", show(x), show(y), show(b(x)), show(b(y)))
            })
        }),
    );
    report.push(
        "fall_or_fix",
        CheckKind::Axiom,
        (0..n)
            .find(|&x| b(x) != x && !(leq_h(g, b(x), x) && !g.h_equiv(b(x), x)))
            .map(|x| format!("{} ↦ {} neither fixed nor strictly H-below", show(x), show(b(x)))),
    );
    if op.idempotent {
        report.push(
            "idempotent",
            CheckKind::Axiom,
            (0..n)
                .find(|&x| b(b(x)) != b(x))
                .map(|x| format!("β²({}) ≠ β({})", show(x), show(x))),
        );
    }
    report.push(
        "l_order_monotone",
        CheckKind::Informational,
        first_failure(all_pairs(), |x, y| {
            (g.leq_l(x, y) && !g.leq_l(b(x), b(y))).then(|| {
                format!("{} ≤L {} but {} ≰L {}", show(x), show(y), show(b(x)), show(b(y)))
            })
        }),
    );

    report.push(
        "p1_j_fix",
        CheckKind::Derived,
        (0..n)
            .find(|&x| g.j_equiv(x, b(x)) && b(x) != x)
            .map(|x| format!("{} J {} but not fixed", show(x), show(b(x)))),
    );
    type Rel = fn(&GreenData, usize, usize) -> bool;
    let relations: [(&str, &str, Rel); 4] = [
        ("p2_j_preserved", "p3_j_fix", GreenData::j_equiv),
        ("p3_r_preserved", "p3_r_fix", GreenData::r_equiv),
        ("p3_l_preserved", "p3_l_fix", GreenData::l_equiv),
        ("p3_h_preserved", "p3_h_fix", GreenData::h_equiv),
    ];
    for (preserved, fix, rel) in relations {
        report.push(
            preserved,
            CheckKind::Derived,
            first_failure(all_pairs(), |x, y| {
                (rel(g, x, y) && !rel(g, b(x), b(y)))
                    .then(|| format!("{} ~ {} but images are not", show(x), show(y)))
            }),
        );
        if fix != "p3_j_fix" {
            report.push(
                fix,
                CheckKind::Derived,
                (0..n)
                    .find(|&x| rel(g, x, b(x)) && b(x) != x)
                    .map(|x| format!("{} related to its image but not fixed", show(x))),
            );
        }
    }

    report.push("p4_cancellation", CheckKind::Derived, cancellation_failure(cs, g, op));

    let mult = find_multipliers(cs, g, op);
    let one = n;
    let missing_right = (0..n).filter(|&x| mult.right[x].is_none()).count();
    let missing_left = (0..n).filter(|&x| mult.left[x].is_none()).count();
    if missing_right > 0 {
        report.notes.push(format!("{missing_right} elements lack a right multiplier"));
    }
    if missing_left > 0 {
        report.notes.push(format!("{missing_left} elements lack a left multiplier"));
    }
    let sg = g.monoid();
    report.push(
        "p5_right_multiplier",
        CheckKind::Derived,
        first_failure(all_pairs(), |x, y| {
            let r = mult.right[y]?;
            if !g.leq_l(x, y) {
                return None;
            }
            let xr = sg.mul(x, r);
            let xr_set = if xr == one { cs.member(x) } else { cs.member(xr) };
            if !cs.member(x).is_subset(xr_set) || (op.is_fixed(y) && xr != x) {
                Some(format!("X = {}, Y = {}, X·r_Y = {}", show(x), show(y), xr_set))
            } else {
                None
            }
        }),
    );
    report.push(
        "p6_left_multiplier",
        CheckKind::Derived,
        first_failure(all_pairs(), |x, y| {
            let l = mult.left[y]?;
            if !g.leq_r(x, y) {
                return None;
            }
            let lx = sg.mul(l, x);
            let lx_set = if lx == one { cs.member(x) } else { cs.member(lx) };
            if !cs.member(x).is_subset(lx_set) || (op.is_fixed(y) && lx != x) {
                Some(format!("X = {}, Y = {}, ℓ_Y·X = {}", show(x), show(y), lx_set))
            } else {
                None
            }
        }),
    );
    report
}

/// `AX = BX ⇒ A·β(X) = B·β(X)` and its L/R generalisations, checked by
/// grouping `A` on the value of `AX` rather than over all pairs.
fn cancellation_failure(cs: &ComplexSemigroup, g: &GreenData, op: &BlowupOperator) -> Option<String> {
    let n = cs.len();
    let sg = g.monoid();
    for x in 0..n {
        let bx = op.map[x];
        let mut eq_left: HashMap<usize, usize> = HashMap::new();
        let mut l_left: HashMap<usize, usize> = HashMap::new();
        let mut eq_right: HashMap<usize, usize> = HashMap::new();
        let mut r_right: HashMap<usize, usize> = HashMap::new();
        for a in 0..n {
            let (ax, abx) = (sg.mul(a, x), sg.mul(a, bx));
            if *eq_left.entry(ax).or_insert(abx) != abx {
                return Some(format!("A·X = B·X but A·β(X) differs, X = {}", cs.member(x)));
            }
            let (lk, lv) = (g.l_class[ax], g.l_class[abx]);
            if *l_left.entry(lk).or_insert(lv) != lv {
                return Some(format!("AX L BX but A·β(X), B·β(X) not L-related, X = {}", cs.member(x)));
            }
            let (xa, bxa) = (sg.mul(x, a), sg.mul(bx, a));
            if *eq_right.entry(xa).or_insert(bxa) != bxa {
                return Some(format!("X·C = X·D but β(X)·C differs, X = {}", cs.member(x)));
            }
            let (rk, rv) = (g.r_class[xa], g.r_class[bxa]);
            if *r_right.entry(rk).or_insert(rv) != rv {
                return Some(format!("XC R XD but β(X)·C, β(X)·D not R-related, X = {}", cs.member(x)));
            }
        }
    }
    None
}

/// Right and left multipliers; index `len()` of the complex stands for `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierTable {
    pub right: Vec<Option<usize>>,
    pub left: Vec<Option<usize>>,
}

/// Exhaustive search over `K^I`, trying `I` first and then members in order.
pub fn find_multipliers(cs: &ComplexSemigroup, g: &GreenData, op: &BlowupOperator) -> MultiplierTable {
    let n = cs.len();
    let sg = g.monoid();
    let candidates = || std::iter::once(n).chain(0..n);
    let right = (0..n)
        .map(|x| candidates().find(|&r| sg.mul(x, r) == op.map[x]))
        .collect();
    let left = (0..n)
        .map(|x| candidates().find(|&l| sg.mul(l, x) == op.map[x]))
        .collect();
    MultiplierTable { right, left }
}

/// Right multipliers, which β_GH always has.
pub fn require_right_multipliers(cs: &ComplexSemigroup, g: &GreenData, op: &BlowupOperator) -> Result<Vec<usize>> {
    find_multipliers(cs, g, op)
        .right
        .into_iter()
        .enumerate()
        .map(|(x, r)| r.ok_or_else(|| inconsistency(format!("no right multiplier for {}", cs.member(x)))))
        .collect()
}

/// J-class ids of the complex (adjoined identity excluded) fixed by `op`.
pub fn core_classes(g: &GreenData, op: &BlowupOperator) -> Result<Vec<usize>> {
    let mut core = Vec::new();
    for c in g.base_classes() {
        let members = &g.j_classes[c];
        let shortcut = op.is_fixed(members[0]);
        let fixed = members.iter().filter(|&&x| op.is_fixed(x)).count();
        if fixed != 0 && fixed != members.len() {
            return Err(inconsistency(format!(
                "J-class {c} is partially fixed ({fixed} of {})",
                members.len()
            )));
        }
        if shortcut != (fixed == members.len()) {
            return Err(inconsistency(format!("one-element core test disagrees on class {c}")));
        }
        if shortcut {
            core.push(c);
        }
    }
    Ok(core)
}

/// J-classes whose Schützenberger groups lie in `h`.
pub fn h_member_classes(g: &GreenData, h: &Variety) -> Vec<usize> {
    g.base_classes()
        .into_iter()
        .filter(|&c| h.is_member(&schutzenberger(g, g.j_classes[c][0]).table))
        .collect()
}

/// Length (in classes) of the longest strict J-chain of the complex.
pub fn j_height(g: &GreenData) -> usize {
    let classes = g.base_classes();
    let mut depth: HashMap<usize, usize> = HashMap::new();
    let mut order = classes.clone();
    order.sort_by_key(|&c| classes.iter().filter(|&&d| g.class_lt(d, c)).count());
    for &c in &order {
        let below = classes
            .iter()
            .filter(|&&d| g.class_lt(d, c))
            .map(|d| depth[d])
            .max()
            .unwrap_or(0);
        depth.insert(c, below + 1);
    }
    depth.values().copied().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{as_semigroup, close_complex, construct_cgh, singletons};
    use crate::green::compute_green;
    use crate::sgp::FiniteSemigroup;
    use crate::Caps;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn power_z2() -> (ComplexSemigroup, GreenData) {
        let s = z2();
        let k = close_complex(&s, &[BitSet::full(2)], 100).unwrap();
        let cs = as_semigroup(&k, &s, 100).unwrap();
        let g = compute_green(cs.sgp());
        (cs, g)
    }

    #[test]
    fn beta_on_power_z2() {
        let (cs, g) = power_z2();
        let op = beta_gh(&cs, &g, &Variety::Trivial, 64).unwrap();
        let full = cs.index_of(&BitSet::full(2)).unwrap();
        for x in 0..3 {
            assert_eq!(op.apply(x), full);
        }
        assert!(op.is_idempotent());
        assert_eq!(omega_iterate(&op).unwrap(), op);
        assert_eq!(core_classes(&g, &op).unwrap(), vec![g.j_class[full]]);
        assert_eq!(h_member_classes(&g, &Variety::Trivial), vec![g.j_class[full]]);
        let m = find_multipliers(&cs, &g, &op);
        assert_eq!(m.right[cs.singleton_index(0)], Some(full));
        let report = audit_axioms(&cs, &g, &op);
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn identity_operator() {
        let (cs, g) = power_z2();
        let id = BlowupOperator::identity(3);
        assert!(audit_axioms(&cs, &g, &id).all_passed());
        assert_eq!(core_classes(&g, &id).unwrap().len(), 2);
        assert!(find_multipliers(&cs, &g, &id).right.iter().all(|r| *r == Some(3)));
        let n2 = FiniteSemigroup::from_table(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let k = construct_cgh(&n2, &Variety::Trivial, &Caps::default()).unwrap();
        assert_eq!(k, singletons(&n2));
        let cs = as_semigroup(&k, &n2, 10).unwrap();
        let g = compute_green(cs.sgp());
        assert_eq!(beta_gh(&cs, &g, &Variety::Trivial, 64).unwrap(), BlowupOperator::identity(2));
    }

    #[test]
    fn fall_or_fix_violation() {
        // U1 = {1, 0}: {0} ↦ {0,1} climbs instead of falling.
        let u1 = FiniteSemigroup::from_table(2, &[vec![0, 1], vec![1, 1]]).unwrap();
        let k = close_complex(&u1, &[BitSet::full(2)], 10).unwrap();
        let cs = as_semigroup(&k, &u1, 10).unwrap();
        let g = compute_green(cs.sgp());
        let zero = cs.singleton_index(1);
        let full = cs.index_of(&BitSet::full(2)).unwrap();
        let mut map: Vec<usize> = (0..3).collect();
        map[zero] = full;
        let report = audit_axioms(&cs, &g, &BlowupOperator::new(map));
        let check = report.get("fall_or_fix").unwrap();
        assert!(!check.passed);
        assert!(check.witness.as_ref().unwrap().contains("{1}"));
    }
}
