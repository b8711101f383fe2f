//! The small semigroups used throughout tests, examples and the CLI suite.

use crate::grp::GroupTable;
use crate::sgp::FiniteSemigroup;

pub fn cyclic_group(n: usize) -> FiniteSemigroup {
    GroupTable::cyclic(n).to_semigroup()
}

/// `S3` as the closure of a 3-cycle and a transposition of `{0, 1, 2}`.
pub fn s3() -> FiniteSemigroup {
    FiniteSemigroup::from_transformations(3, &[vec![1, 2, 0], vec![1, 0, 2]], 16)
        .expect("S3 generators")
        .0
}

/// Full transformation monoid on two points: swap, const 0, identity, const 1.
pub fn t2() -> FiniteSemigroup {
    FiniteSemigroup::from_transformations(2, &[vec![1, 0], vec![0, 0]], 16)
        .expect("T2 generators")
        .0
}

/// `{a, 0}` with `a² = 0`.
pub fn n2() -> FiniteSemigroup {
    FiniteSemigroup::from_table(2, &[vec![1, 1], vec![1, 1]]).expect("N2 table")
}

/// Two-element chain `{1, 0}`.
pub fn u1() -> FiniteSemigroup {
    FiniteSemigroup::from_table(2, &[vec![0, 1], vec![1, 1]]).expect("U1 table")
}

/// Brandt semigroup `B2`: matrix units `e11, e12, e21, e22` and zero `4`.
pub fn b2() -> FiniteSemigroup {
    let units = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let rows: Vec<Vec<usize>> = (0..5)
        .map(|x| {
            (0..5)
                .map(|y| {
                    if x == 4 || y == 4 {
                        return 4;
                    }
                    let ((i, j), (k, l)) = (units[x], units[y]);
                    if j == k {
                        units.iter().position(|&u| u == (i, l)).unwrap()
                    } else {
                        4
                    }
                })
                .collect()
        })
        .collect();
    FiniteSemigroup::from_table(5, &rows).expect("B2 table")
}

/// Right-zero semigroup on two elements: `xy = y`.
pub fn rz2() -> FiniteSemigroup {
    FiniteSemigroup::from_table(2, &[vec![0, 1], vec![0, 1]]).expect("RZ2 table")
}

pub fn by_name(name: &str) -> Option<FiniteSemigroup> {
    Some(match name.to_ascii_lowercase().as_str() {
        "z2" => cyclic_group(2),
        "z3" => cyclic_group(3),
        "z4" => cyclic_group(4),
        "z6" => cyclic_group(6),
        "s3" => s3(),
        "t2" => t2(),
        "n2" => n2(),
        "u1" => u1(),
        "b2" => b2(),
        "rz2" => rz2(),
        _ => return None,
    })
}

pub const CORPUS: [&str; 10] = ["Z2", "Z3", "Z4", "Z6", "S3", "T2", "N2", "U1", "B2", "RZ2"];

pub fn corpus() -> Vec<(&'static str, FiniteSemigroup)> {
    CORPUS
        .iter()
        .map(|&n| (n, by_name(n).expect("corpus name")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = corpus().iter().map(|(_, s)| s.size()).collect();
        assert_eq!(sizes, vec![2, 3, 4, 6, 6, 4, 2, 2, 5, 2]);
    }
}
