//! Green's relations, activators, Schützenberger groups, maximal subgroups
//! and Rees coordinates.
//!
//! Everything is computed over `S^I` (a fresh identity is always adjoined as
//! the last index), so monoids need no special handling.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bitset::BitSet;
use crate::error::{inconsistency, Result};
use crate::grp::GroupTable;
use crate::sgp::FiniteSemigroup;

/// Eggbox of one J-class: rows are R-classes, columns L-classes.
#[derive(Clone, Debug)]
pub struct Eggbox {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `cells[r][c]` is the H-class id at that position, if the cell is non-empty.
    pub cells: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Debug)]
pub struct GreenData {
    monoid: FiniteSemigroup,
    base: usize,
    r_ideal: Vec<BitSet>,
    l_ideal: Vec<BitSet>,
    j_ideal: Vec<BitSet>,
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub j_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub j_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    /// `j_below[c]` holds every class `d` with `d ≤_J c`.
    j_below: Vec<BitSet>,
    pub regular: Vec<bool>,
    pub eggbox: Vec<Eggbox>,
}

fn number_classes(keys: &[BitSet]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut ids: HashMap<&BitSet, usize> = HashMap::new();
    let mut class = Vec::with_capacity(keys.len());
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (x, k) in keys.iter().enumerate() {
        let next = ids.len();
        let id = *ids.entry(k).or_insert(next);
        if id == members.len() {
            members.push(Vec::new());
        }
        members[id].push(x);
        class.push(id);
    }
    (class, members)
}

pub fn compute_green(s: &FiniteSemigroup) -> GreenData {
    let base = s.size();
    let monoid = s.with_identity();
    let m = monoid.size();

    let r_ideal: Vec<BitSet> = (0..m)
        .map(|x| BitSet::from_elems(m, monoid.row(x).iter().copied()))
        .collect();
    let l_ideal: Vec<BitSet> = (0..m)
        .map(|x| BitSet::from_elems(m, (0..m).map(|y| monoid.mul(y, x))))
        .collect();
    let j_ideal: Vec<BitSet> = (0..m)
        .map(|x| {
            let mut acc = BitSet::new(m);
            for z in r_ideal[x].iter() {
                acc.union_with(&l_ideal[z]);
            }
            acc
        })
        .collect();

    let (r_class, r_classes) = number_classes(&r_ideal);
    let (l_class, l_classes) = number_classes(&l_ideal);
    let (j_class, j_classes) = number_classes(&j_ideal);

    let mut h_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut h_class = Vec::with_capacity(m);
    let mut h_classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..m {
        let next = h_ids.len();
        let id = *h_ids.entry((r_class[x], l_class[x])).or_insert(next);
        if id == h_classes.len() {
            h_classes.push(Vec::new());
        }
        h_classes[id].push(x);
        h_class.push(id);
    }

    let nj = j_classes.len();
    let j_below: Vec<BitSet> = j_classes
        .iter()
        .map(|members| {
            let ideal = &j_ideal[members[0]];
            BitSet::from_elems(nj, ideal.iter().map(|y| j_class[y]))
        })
        .collect();

    let regular: Vec<bool> = j_classes
        .iter()
        .map(|members| members.iter().any(|&x| monoid.is_idempotent(x)))
        .collect();

    let eggbox = j_classes
        .iter()
        .map(|members| {
            let mut rows: Vec<usize> = members.iter().map(|&x| r_class[x]).collect();
            rows.sort_unstable();
            rows.dedup();
            let mut cols: Vec<usize> = members.iter().map(|&x| l_class[x]).collect();
            cols.sort_unstable();
            cols.dedup();
            let mut cells = vec![vec![None; cols.len()]; rows.len()];
            for &x in members {
                let r = rows.binary_search(&r_class[x]).unwrap();
                let c = cols.binary_search(&l_class[x]).unwrap();
                cells[r][c] = Some(h_class[x]);
            }
            Eggbox { rows, cols, cells }
        })
        .collect();

    GreenData {
        monoid,
        base,
        r_ideal,
        l_ideal,
        j_ideal,
        r_class,
        l_class,
        j_class,
        h_class,
        r_classes,
        l_classes,
        j_classes,
        h_classes,
        j_below,
        regular,
        eggbox,
    }
}

impl GreenData {
    /// `S^I`, the table all indices refer to.
    pub fn monoid(&self) -> &FiniteSemigroup {
        &self.monoid
    }

    /// Number of elements of `S` (the adjoined identity is this index).
    pub fn base_size(&self) -> usize {
        self.base
    }

    pub fn one(&self) -> usize {
        self.base
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.monoid.mul(x, y)
    }

    pub fn leq_r(&self, x: usize, y: usize) -> bool {
        self.r_ideal[y].contains(x)
    }

    pub fn leq_l(&self, x: usize, y: usize) -> bool {
        self.l_ideal[y].contains(x)
    }

    pub fn leq_j(&self, x: usize, y: usize) -> bool {
        self.j_ideal[y].contains(x)
    }

    pub fn lt_j(&self, x: usize, y: usize) -> bool {
        self.leq_j(x, y) && self.j_class[x] != self.j_class[y]
    }

    pub fn r_equiv(&self, x: usize, y: usize) -> bool {
        self.r_class[x] == self.r_class[y]
    }

    pub fn l_equiv(&self, x: usize, y: usize) -> bool {
        self.l_class[x] == self.l_class[y]
    }

    pub fn h_equiv(&self, x: usize, y: usize) -> bool {
        self.h_class[x] == self.h_class[y]
    }

    pub fn j_equiv(&self, x: usize, y: usize) -> bool {
        self.j_class[x] == self.j_class[y]
    }

    /// `c ≤_J d` on class ids.
    pub fn class_leq(&self, c: usize, d: usize) -> bool {
        self.j_below[d].contains(c)
    }

    pub fn class_lt(&self, c: usize, d: usize) -> bool {
        c != d && self.class_leq(c, d)
    }

    /// J-class ids of elements of `S` (the adjoined identity's class excluded).
    pub fn base_classes(&self) -> Vec<usize> {
        let one = self.j_class[self.one()];
        (0..self.j_classes.len()).filter(|&c| c != one).collect()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.monoid.is_idempotent(x)
    }

    /// Stability: `x ≤_R y ∧ x J y ⇒ x R y` and the left dual, over all pairs.
    pub fn check_stability(&self) -> Result<()> {
        let m = self.monoid.size();
        for x in 0..m {
            for y in 0..m {
                if !self.j_equiv(x, y) {
                    continue;
                }
                if self.leq_r(x, y) && !self.r_equiv(x, y) {
                    return Err(inconsistency(format!("R-stability fails at ({x}, {y})")));
                }
                if self.leq_l(x, y) && !self.l_equiv(x, y) {
                    return Err(inconsistency(format!("L-stability fails at ({x}, {y})")));
                }
            }
        }
        Ok(())
    }
}

/// Renders one grid per J-class of `S`, `*` marking idempotents.
pub fn render_eggbox(g: &GreenData, label: &dyn Fn(usize) -> String) -> String {
    let mut out = String::new();
    for c in g.base_classes() {
        let boxy = &g.eggbox[c];
        let kind = if g.regular[c] { "regular" } else { "null" };
        let _ = writeln!(
            out,
            "J{c} ({kind}, {} R x {} L)",
            boxy.rows.len(),
            boxy.cols.len()
        );
        let cell_text: Vec<Vec<String>> = boxy
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| match cell {
                        None => String::new(),
                        Some(h) => g.h_classes[*h]
                            .iter()
                            .map(|&x| {
                                let star = if g.is_idempotent(x) { "*" } else { "" };
                                format!("{}{star}", label(x))
                            })
                            .collect::<Vec<_>>()
                            .join(" "),
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..boxy.cols.len())
            .map(|j| cell_text.iter().map(|r| r[j].len()).max().unwrap_or(0).max(1))
            .collect();
        let rule: String = widths
            .iter()
            .map(|w| format!("+{}", "-".repeat(w + 2)))
            .collect::<String>()
            + "+";
        let _ = writeln!(out, "{rule}");
        for row in &cell_text {
            for (j, text) in row.iter().enumerate() {
                let _ = write!(out, "| {text:<w$} ", w = widths[j]);
            }
            let _ = writeln!(out, "|");
            let _ = writeln!(out, "{rule}");
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ActivatorInfo {
    pub class: usize,
    pub a_l: BitSet,
    pub lact: usize,
    /// `(x, e)` pairs: the lowest-index idempotent `e ∈ LACT` with `e·x = x`.
    pub witness_idempotents: Vec<(usize, usize)>,
}

pub fn left_activator(g: &GreenData, class: usize) -> Result<ActivatorInfo> {
    let members = &g.j_classes[class];
    let m = g.monoid.size();
    let in_class = |y: usize| g.j_class[y] == class;
    let a_l = BitSet::from_elems(
        m,
        (0..m).filter(|&a| members.iter().any(|&j| in_class(g.mul(a, j)))),
    );
    let mut classes: Vec<usize> = a_l.iter().map(|a| g.j_class[a]).collect();
    classes.sort_unstable();
    classes.dedup();
    let minimal: Vec<usize> = classes
        .iter()
        .copied()
        .filter(|&c| !classes.iter().any(|&d| g.class_lt(d, c)))
        .collect();
    if minimal.len() != 1 {
        return Err(inconsistency(format!(
            "J-class {class} has {} minimal activator classes",
            minimal.len()
        )));
    }
    let lact = minimal[0];
    let mut witness = Vec::with_capacity(members.len());
    for &x in members {
        let e = g.j_classes[lact]
            .iter()
            .copied()
            .filter(|&e| g.is_idempotent(e) && g.mul(e, x) == x)
            .min()
            .ok_or_else(|| {
                inconsistency(format!("no idempotent of the activator fixes {x}"))
            })?;
        witness.push((x, e));
    }
    Ok(ActivatorInfo {
        class,
        a_l,
        lact,
        witness_idempotents: witness,
    })
}

/// The lowest-index idempotent `e ∈ LACT(J_x)` with `e·x = x`.
pub fn activator_idempotent(g: &GreenData, x: usize) -> Result<usize> {
    let info = left_activator(g, g.j_class[x])?;
    info.witness_idempotents
        .iter()
        .find(|(y, _)| *y == x)
        .map(|&(_, e)| e)
        .ok_or_else(|| inconsistency(format!("element {x} missing from its J-class")))
}

/// Right Schützenberger group of an H-class, realised as permutations of
/// the class induced by its right stabilizer.
#[derive(Clone, Debug)]
pub struct SchutzenbergerGroup {
    pub h_class: Vec<usize>,
    /// `perms[i][p]` is the position of `h_class[p] · stab_reps[i]`.
    pub perms: Vec<Vec<usize>>,
    pub stab_reps: Vec<usize>,
    pub table: GroupTable,
}

impl SchutzenbergerGroup {
    /// Image of an element of the H-class under group element `i`.
    pub fn act(&self, i: usize, x: usize) -> usize {
        let p = self.h_class.binary_search(&x).expect("element of the H-class");
        self.h_class[self.perms[i][p]]
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }
}

pub fn schutzenberger(g: &GreenData, x: usize) -> SchutzenbergerGroup {
    let h_class = g.h_classes[g.h_class[x]].clone();
    let pos: HashMap<usize, usize> = h_class.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut stab_reps = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 0..g.monoid.size() {
        if !pos.contains_key(&g.mul(x, s)) {
            continue;
        }
        let perm: Vec<usize> = h_class.iter().map(|&h| pos[&g.mul(h, s)]).collect();
        if !seen.contains_key(&perm) {
            seen.insert(perm.clone(), perms.len());
            perms.push(perm);
            stab_reps.push(s);
        }
    }
    let n = perms.len();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let c: Vec<usize> = perms[i].iter().map(|&p| perms[j][p]).collect();
            table[i * n + j] = seen[&c];
        }
    }
    let ident: Vec<usize> = (0..h_class.len()).collect();
    let identity = seen[&ident];
    SchutzenbergerGroup {
        h_class,
        perms,
        stab_reps,
        table: GroupTable::from_trusted(n, table, identity),
    }
}

#[derive(Clone, Debug)]
pub struct MaximalSubgroup {
    pub idempotent: usize,
    /// Group element `i` is the semigroup element `elements[i]`.
    pub elements: Vec<usize>,
    pub group: GroupTable,
}

/// One maximal subgroup per idempotent of `S` (the adjoined identity excluded).
pub fn maximal_subgroups(g: &GreenData) -> Vec<MaximalSubgroup> {
    (0..g.base)
        .filter(|&e| g.is_idempotent(e))
        .map(|e| {
            let elements = g.h_classes[g.h_class[e]].clone();
            let pos: HashMap<usize, usize> =
                elements.iter().enumerate().map(|(i, &y)| (y, i)).collect();
            let n = elements.len();
            let mut table = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    table[i * n + j] = pos[&g.mul(elements[i], elements[j])];
                }
            }
            MaximalSubgroup {
                idempotent: e,
                group: GroupTable::from_trusted(n, table, pos[&e]),
                elements,
            }
        })
        .collect()
}

/// Rees coordinates `(a, g, b)` of a regular J-class.
#[derive(Clone, Debug)]
pub struct ReesCoordinatization {
    pub class: usize,
    pub base_idempotent: usize,
    pub a_index: Vec<usize>,
    pub b_index: Vec<usize>,
    pub group: SchutzenbergerGroup,
    /// Element of the J-class mapped to `(a position, group element, b position)`.
    pub lambda: HashMap<usize, (usize, usize, usize)>,
    /// `matrix[b][a]`, `None` standing for the zero.
    pub matrix: Vec<Vec<Option<usize>>>,
}

impl ReesCoordinatization {
    pub fn coords(&self, x: usize) -> (usize, usize, usize) {
        self.lambda[&x]
    }

    pub fn element(&self, a: usize, g: usize, b: usize) -> Option<usize> {
        self.lambda
            .iter()
            .find(|(_, &c)| c == (a, g, b))
            .map(|(&x, _)| x)
    }
}

pub fn rees_coordinatization(g: &GreenData, class: usize) -> Result<ReesCoordinatization> {
    if !g.regular[class] {
        return Err(inconsistency(format!("J-class {class} is not regular")));
    }
    let members = &g.j_classes[class];
    let e = *members
        .iter()
        .find(|&&x| g.is_idempotent(x))
        .expect("regular class has an idempotent");
    let boxy = &g.eggbox[class];
    let group = schutzenberger(g, e);
    let h_e = &group.h_class;

    // group element realised by right multiplication with h ∈ H_e
    let perm_index: HashMap<Vec<usize>, usize> = group
        .perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let pos_e: HashMap<usize, usize> = h_e.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let mut as_group: HashMap<usize, usize> = HashMap::new();
    for &h in h_e {
        let perm: Vec<usize> = h_e.iter().map(|&y| pos_e[&g.mul(y, h)]).collect();
        let idx = perm_index
            .get(&perm)
            .ok_or_else(|| inconsistency("right translation by H_e missing from stabilizer"))?;
        as_group.insert(h, *idx);
    }

    let cell_min = |r: usize, l: usize| -> Result<usize> {
        members
            .iter()
            .copied()
            .filter(|&x| g.r_class[x] == r && g.l_class[x] == l)
            .min()
            .ok_or_else(|| inconsistency(format!("empty eggbox cell in regular class {class}")))
    };
    let (re, le) = (g.r_class[e], g.l_class[e]);
    let r_reps: Vec<usize> = boxy
        .rows
        .iter()
        .map(|&r| cell_min(r, le))
        .collect::<Result<_>>()?;
    let q_reps: Vec<usize> = boxy
        .cols
        .iter()
        .map(|&l| cell_min(re, l))
        .collect::<Result<_>>()?;

    let mut lambda = HashMap::new();
    for (a, &ra) in r_reps.iter().enumerate() {
        for (b, &qb) in q_reps.iter().enumerate() {
            for &z in h_e {
                let x = g.mul(g.mul(ra, z), qb);
                if g.r_class[x] != boxy.rows[a] || g.l_class[x] != boxy.cols[b] {
                    return Err(inconsistency(format!(
                        "translation of {z} lands outside cell ({a}, {b})"
                    )));
                }
                if lambda.insert(x, (a, as_group[&z], b)).is_some() {
                    return Err(inconsistency(format!("element {x} coordinatised twice")));
                }
            }
        }
    }
    if lambda.len() != members.len() {
        return Err(inconsistency("coordinates do not cover the J-class"));
    }

    let matrix: Vec<Vec<Option<usize>>> = q_reps
        .iter()
        .map(|&qb| {
            r_reps
                .iter()
                .map(|&ra| {
                    let c = g.mul(qb, ra);
                    as_group.get(&c).copied()
                })
                .collect()
        })
        .collect();

    let rc = ReesCoordinatization {
        class,
        base_idempotent: e,
        a_index: boxy.rows.clone(),
        b_index: boxy.cols.clone(),
        group,
        lambda,
        matrix,
    };
    verify_rees_law(g, &rc)?;
    Ok(rc)
}

fn verify_rees_law(g: &GreenData, rc: &ReesCoordinatization) -> Result<()> {
    let t = &rc.group.table;
    for (&x, &(ax, gx, bx)) in &rc.lambda {
        for (&y, &(ay, gy, by)) in &rc.lambda {
            let xy = g.mul(x, y);
            match rc.matrix[bx][ay] {
                Some(c) => {
                    let want = (ax, t.mul(t.mul(gx, c), gy), by);
                    if rc.lambda.get(&xy) != Some(&want) {
                        return Err(inconsistency(format!(
                            "Rees law fails for {x}*{y}: expected {want:?}"
                        )));
                    }
                }
                None => {
                    if rc.lambda.contains_key(&xy) {
                        return Err(inconsistency(format!(
                            "zero matrix entry but {x}*{y} stays in the class"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2() -> FiniteSemigroup {
        // 0 = swap, 1 = c0, 2 = id, 3 = c1
        FiniteSemigroup::from_transformations(2, &[vec![1, 0], vec![0, 0]], 100)
            .unwrap()
            .0
    }

    fn n2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, &[vec![1, 1], vec![1, 1]]).unwrap()
    }

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn classes_of_z2() {
        let g = compute_green(&z2());
        assert_eq!(g.base_classes().len(), 1);
        let c = g.j_class[0];
        assert!(g.regular[c]);
        assert_eq!(g.h_classes[g.h_class[0]], vec![0, 1]);
        g.check_stability().unwrap();
    }

    #[test]
    fn classes_of_t2() {
        let g = compute_green(&t2());
        let classes = g.base_classes();
        assert_eq!(classes.len(), 2);
        let top = g.j_class[2];
        let consts = g.j_class[1];
        assert_eq!(g.j_classes[top], vec![0, 2]);
        assert_eq!(g.j_classes[consts], vec![1, 3]);
        assert!(g.class_lt(consts, top));
        assert!(g.regular[top] && g.regular[consts]);
        let eb = &g.eggbox[consts];
        assert_eq!((eb.rows.len(), eb.cols.len()), (1, 2));
        g.check_stability().unwrap();
    }

    #[test]
    fn classes_of_n2() {
        let g = compute_green(&n2());
        let (ja, j0) = (g.j_class[0], g.j_class[1]);
        assert!(!g.regular[ja]);
        assert!(g.regular[j0]);
        assert!(g.class_lt(j0, ja));
    }

    #[test]
    fn activators() {
        let g = compute_green(&t2());
        let consts = g.j_class[1];
        assert_eq!(left_activator(&g, consts).unwrap().lact, consts);
        assert_eq!(activator_idempotent(&g, 1).unwrap(), 1);

        let g = compute_green(&n2());
        let info = left_activator(&g, g.j_class[0]).unwrap();
        assert_eq!(info.a_l.to_vec(), vec![2]);
        assert_eq!(info.lact, g.j_class[2]);
        assert_eq!(activator_idempotent(&g, 0).unwrap(), 2);

        let g = compute_green(&z2());
        assert_eq!(left_activator(&g, g.j_class[1]).unwrap().lact, g.j_class[0]);
        assert_eq!(activator_idempotent(&g, 1).unwrap(), 0);
    }

    #[test]
    fn schutzenberger_groups() {
        let g = compute_green(&t2());
        let top = schutzenberger(&g, 2);
        assert_eq!(top.order(), 2);
        assert_eq!(top.h_class, vec![0, 2]);
        assert_eq!(schutzenberger(&g, 1).order(), 1);
        let g = compute_green(&z2());
        let sg = schutzenberger(&g, 1);
        assert_eq!(sg.order(), 2);
        for (i, &s) in sg.stab_reps.iter().enumerate() {
            for &h in &sg.h_class {
                assert_eq!(sg.act(i, h), g.mul(h, s));
            }
        }
    }

    #[test]
    fn subgroups() {
        let g = compute_green(&z2());
        let ms = maximal_subgroups(&g);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].group.size(), 2);
        let g = compute_green(&t2());
        let orders: Vec<(usize, usize)> = maximal_subgroups(&g)
            .iter()
            .map(|m| (m.idempotent, m.group.size()))
            .collect();
        assert_eq!(orders, vec![(1, 1), (2, 2), (3, 1)]);
        let g = compute_green(&n2());
        let ms = maximal_subgroups(&g);
        assert_eq!(ms.len(), 1);
        assert_eq!((ms[0].idempotent, ms[0].group.size()), (1, 1));
    }

    #[test]
    fn rees_coordinates() {
        let g = compute_green(&t2());
        let consts = rees_coordinatization(&g, g.j_class[1]).unwrap();
        assert_eq!(consts.a_index.len(), 1);
        assert_eq!(consts.b_index.len(), 2);
        assert_eq!(consts.group.order(), 1);
        assert!(consts.matrix.iter().flatten().all(Option::is_some));
        let top = rees_coordinatization(&g, g.j_class[2]).unwrap();
        assert_eq!((top.a_index.len(), top.b_index.len()), (1, 1));
        assert_eq!(top.group.order(), 2);
        assert_eq!(top.matrix[0][0], Some(top.group.table.identity()));
        let g = compute_green(&n2());
        assert!(rees_coordinatization(&g, g.j_class[0]).is_err());
    }

    #[test]
    fn eggbox_text() {
        let g = compute_green(&t2());
        let text = render_eggbox(&g, &|x| x.to_string());
        assert_eq!(text.matches('J').count(), 2);
        assert!(text.contains("1*"));
    }
}
