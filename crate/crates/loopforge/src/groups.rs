//! Ready-made Cayley tables of small groups, used as fixtures and as
//! known-good inputs for the theorem checkers.

use crate::perm::{PermGroup, Permutation};
use crate::table::LoopTable;

/// The cyclic group of order `n >= 1` on labels `0..n` with addition mod `n`.
pub fn cyclic(n: usize) -> LoopTable {
    assert!(n >= 1, "cyclic groups have order at least 1");
    let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    LoopTable::from_rows(rows).expect("modular addition yields a loop table")
}

/// The Klein four-group: bitwise xor on labels `0..4`.
pub fn klein() -> LoopTable {
    let rows = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    LoopTable::from_rows(rows).expect("xor on two bits yields a loop table")
}

/// Builds a Cayley table from a permutation group's sorted element list,
/// with `i * j` defined as "apply element i, then element j".
fn table_of_perm_group(group: &PermGroup) -> LoopTable {
    let elems = group.elements();
    let index_of = |p: &Permutation| {
        elems
            .binary_search(p)
            .expect("products of group elements stay in the group")
    };
    let rows = elems
        .iter()
        .map(|p| elems.iter().map(|q| index_of(&p.then(q))).collect())
        .collect();
    LoopTable::from_rows(rows).expect("a group's multiplication table is a loop table")
}

/// The symmetric group on three letters, labeled by the lexicographic
/// order of its six permutations (so label 0 is the identity).
pub fn symmetric3() -> LoopTable {
    let swap = Permutation::from_images(vec![1, 0, 2]).expect("valid images");
    let cycle = Permutation::from_images(vec![1, 2, 0]).expect("valid images");
    let group = PermGroup::close(&[swap, cycle]).expect("S3 closes in six elements");
    table_of_perm_group(&group)
}

/// The dihedral group of order 8 (symmetries of a square), generated by
/// the rotation `(0 1 2 3)` and the reflection `(1 3)` on the vertices,
/// labeled by the lexicographic order of the eight permutations.
pub fn dihedral8() -> LoopTable {
    let rotation = Permutation::from_images(vec![1, 2, 3, 0]).expect("valid images");
    let reflection = Permutation::from_images(vec![0, 3, 2, 1]).expect("valid images");
    let group = PermGroup::close(&[rotation, reflection]).expect("D4 closes in eight elements");
    table_of_perm_group(&group)
}

/// The quaternion group of order 8 on labels
/// `[1, -1, i, -i, j, -j, k, -k]` (label `2a + s` for axis `a` and sign
/// bit `s`).
pub fn quaternion8() -> LoopTable {
    // Axis 0 is the scalar 1; axes 1, 2, 3 are i, j, k.
    let decode = |label: usize| (label / 2, label % 2 == 1);
    let encode = |axis: usize, negative: bool| 2 * axis + usize::from(negative);
    let mul = |x: usize, y: usize| {
        let (a, s) = decode(x);
        let (b, t) = decode(y);
        let negative = s ^ t;
        match (a, b) {
            (0, _) => encode(b, negative),
            (_, 0) => encode(a, negative),
            _ if a == b => encode(0, !negative), // i*i = j*j = k*k = -1
            _ => {
                // i*j = k and cyclically; the reverse order flips the sign.
                let axis = 6 - a - b;
                let forward = (a, b) == (1, 2) || (a, b) == (2, 3) || (a, b) == (3, 1);
                encode(axis, negative ^ !forward)
            }
        }
    };
    let rows = (0..8).map(|i| (0..8).map(|j| mul(i, j)).collect()).collect();
    LoopTable::from_rows(rows).expect("quaternion multiplication yields a loop table")
}

/// The standard fixture list: all groups the known-fact suites run on,
/// as `(name, table)` pairs.
pub fn fixture_groups() -> Vec<(&'static str, LoopTable)> {
    let mut fixtures: Vec<(&'static str, LoopTable)> = vec![
        ("Z1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
    ];
    fixtures.push(("V4", klein()));
    fixtures.push(("S3", symmetric3()));
    fixtures.push(("D4", dihedral8()));
    fixtures.push(("Q8", quaternion8()));
    fixtures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_are_abelian_groups() {
        for n in 1..=8 {
            let t = cyclic(n);
            assert_eq!(t.order(), n);
            assert_eq!(t.identity(), 0);
            assert!(t.is_associative());
            assert!(t.is_commutative());
        }
    }

    #[test]
    fn klein_group_is_boolean() {
        let t = klein();
        assert!(t.is_associative());
        assert!(t.is_commutative());
        for x in 0..4 {
            assert_eq!(t.mul(x, x), 0);
        }
    }

    #[test]
    fn symmetric3_is_the_smallest_nonabelian_group() {
        let t = symmetric3();
        assert_eq!(t.order(), 6);
        assert_eq!(t.identity(), 0);
        assert!(t.is_associative());
        assert!(!t.is_commutative());
    }

    #[test]
    fn dihedral8_has_a_center_of_size_two() {
        let t = dihedral8();
        assert_eq!(t.order(), 8);
        assert!(t.is_associative());
        assert!(!t.is_commutative());
        let central = (0..8)
            .filter(|&z| (0..8).all(|x| t.mul(z, x) == t.mul(x, z)))
            .count();
        assert_eq!(central, 2);
    }

    #[test]
    fn quaternion8_multiplication_relations() {
        let t = quaternion8();
        assert_eq!(t.order(), 8);
        assert_eq!(t.identity(), 0);
        assert!(t.is_associative());
        assert!(!t.is_commutative());
        // i*j = k, j*i = -k, i*i = -1.
        assert_eq!(t.mul(2, 4), 6);
        assert_eq!(t.mul(4, 2), 7);
        assert_eq!(t.mul(2, 2), 1);
        // Exactly one element of order two: -1.
        let involutions = (0..8)
            .filter(|&x| x != 0 && t.mul(x, x) == 0)
            .collect::<Vec<_>>();
        assert_eq!(involutions, vec![1]);
    }

    #[test]
    fn dihedral_and_quaternion_are_not_isomorphic_by_involution_count() {
        let d = dihedral8();
        let q = quaternion8();
        let count = |t: &LoopTable| (0..8).filter(|&x| t.mul(x, x) == t.identity()).count();
        assert_ne!(count(&d), count(&q));
    }
}
