//! Inner mappings of a loop, the groups they generate, automorphism and
//! autotopism tests, the nucleus, loop-class predicates, and the
//! known-fact suites for the well-studied families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{permutations_fixing, product, MappingTriple, PermGroup, Permutation};
use crate::report::{ClassificationReport, TheoremReport};
use crate::table::LoopTable;

/// Orders above this are rejected by the brute-force automorphism search.
pub const AUTOMORPHISM_ORDER_CAP: usize = 8;

/// The three families of inner mappings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerKind {
    /// Right inner mappings `R(x,y)`.
    Rho,
    /// Left inner mappings `L(x,y)`.
    Lambda,
    /// Middle inner mappings `T(x)`.
    Mu,
}

impl InnerKind {
    /// Number of point labels this kind of mapping takes.
    pub fn arity(self) -> usize {
        match self {
            InnerKind::Rho | InnerKind::Lambda => 2,
            InnerKind::Mu => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InnerKind::Rho => "rho",
            InnerKind::Lambda => "lambda",
            InnerKind::Mu => "mu",
        }
    }
}

impl fmt::Display for InnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for InnerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(InnerKind::Rho),
            "lambda" => Ok(InnerKind::Lambda),
            "mu" => Ok(InnerKind::Mu),
            _ => Err(Error::InvalidQuery {
                message: format!("unknown inner mapping kind `{s}` (expected rho, lambda, or mu)"),
            }),
        }
    }
}

/// Which inner mapping group to build: one family or all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerGroupKind {
    Rho,
    Lambda,
    Mu,
    Full,
}

impl InnerGroupKind {
    pub fn name(self) -> &'static str {
        match self {
            InnerGroupKind::Rho => "rho",
            InnerGroupKind::Lambda => "lambda",
            InnerGroupKind::Mu => "mu",
            InnerGroupKind::Full => "full",
        }
    }
}

impl fmt::Display for InnerGroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for InnerGroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(InnerGroupKind::Rho),
            "lambda" => Ok(InnerGroupKind::Lambda),
            "mu" => Ok(InnerGroupKind::Mu),
            "full" => Ok(InnerGroupKind::Full),
            _ => Err(Error::InvalidQuery {
                message: format!(
                    "unknown inner group kind `{s}` (expected rho, lambda, mu, or full)"
                ),
            }),
        }
    }
}

/// The right inner mapping `R(x,y)`: right-translate by `x`, then by `y`,
/// then undo the right translation by `x*y`.
pub fn right_inner(g: &LoopTable, x: usize, y: usize) -> Result<Permutation> {
    let r_x = g.right_translation(x)?;
    let r_y = g.right_translation(y)?;
    let r_xy_inv = g.right_translation(g.mul(x, y))?.inverse();
    product(&[r_x, r_y, r_xy_inv])
}

/// The left inner mapping `L(x,y)`: left-translate by `x`, then by `y`,
/// then undo the left translation by `y*x`.
pub fn left_inner(g: &LoopTable, x: usize, y: usize) -> Result<Permutation> {
    let l_x = g.left_translation(x)?;
    let l_y = g.left_translation(y)?;
    let l_yx_inv = g.left_translation(g.mul(y, x))?.inverse();
    product(&[l_x, l_y, l_yx_inv])
}

/// The middle inner mapping `T(x)`: right-translate by `x`, then undo the
/// left translation by `x`.
pub fn middle_inner(g: &LoopTable, x: usize) -> Result<Permutation> {
    let r_x = g.right_translation(x)?;
    let l_x_inv = g.left_translation(x)?.inverse();
    product(&[r_x, l_x_inv])
}

/// Dispatches on `kind`, checking the argument count: `rho` and `lambda`
/// take two labels, `mu` takes one.
pub fn inner_mapping(g: &LoopTable, kind: InnerKind, args: &[usize]) -> Result<Permutation> {
    if args.len() != kind.arity() {
        return Err(Error::WrongArity {
            kind: kind.name(),
            expected: kind.arity(),
            got: args.len(),
        });
    }
    match kind {
        InnerKind::Rho => right_inner(g, args[0], args[1]),
        InnerKind::Lambda => left_inner(g, args[0], args[1]),
        InnerKind::Mu => middle_inner(g, args[0]),
    }
}

/// All inner mappings of one family, deduplicated and sorted.
pub fn inner_generators(g: &LoopTable, kind: InnerKind) -> Vec<Permutation> {
    let n = g.order();
    let mut set = BTreeSet::new();
    match kind {
        InnerKind::Rho => {
            for x in 0..n {
                for y in 0..n {
                    set.insert(right_inner(g, x, y).expect("labels are in range"));
                }
            }
        }
        InnerKind::Lambda => {
            for x in 0..n {
                for y in 0..n {
                    set.insert(left_inner(g, x, y).expect("labels are in range"));
                }
            }
        }
        InnerKind::Mu => {
            for x in 0..n {
                set.insert(middle_inner(g, x).expect("labels are in range"));
            }
        }
    }
    set.into_iter().collect()
}

/// The group generated by the requested family of inner mappings
/// (`full` uses all three families together).
pub fn inner_group(g: &LoopTable, kind: InnerGroupKind) -> Result<PermGroup> {
    let generators = match kind {
        InnerGroupKind::Rho => inner_generators(g, InnerKind::Rho),
        InnerGroupKind::Lambda => inner_generators(g, InnerKind::Lambda),
        InnerGroupKind::Mu => inner_generators(g, InnerKind::Mu),
        InnerGroupKind::Full => {
            let mut set: BTreeSet<Permutation> = BTreeSet::new();
            set.extend(inner_generators(g, InnerKind::Rho));
            set.extend(inner_generators(g, InnerKind::Lambda));
            set.extend(inner_generators(g, InnerKind::Mu));
            set.into_iter().collect()
        }
    };
    PermGroup::close(&generators)
}

/// The multiplication group: everything generated by the left and right
/// translations together.
pub fn multiplication_group(g: &LoopTable) -> Result<PermGroup> {
    let n = g.order();
    let mut set = BTreeSet::new();
    for x in 0..n {
        set.insert(g.left_translation(x)?);
        set.insert(g.right_translation(x)?);
    }
    let generators: Vec<Permutation> = set.into_iter().collect();
    PermGroup::close(&generators)
}

/// Whether `phi` preserves the product: `(x*y)phi = (x)phi * (y)phi` for
/// all pairs.
///
/// # Panics
/// Panics if the degree does not match the table order.
pub fn is_automorphism(g: &LoopTable, phi: &Permutation) -> bool {
    assert_eq!(
        phi.degree(),
        g.order(),
        "permutation degree must match the table order"
    );
    let n = g.order();
    (0..n).all(|x| (0..n).all(|y| phi.apply(g.mul(x, y)) == g.mul(phi.apply(x), phi.apply(y))))
}

/// The full automorphism group, found by brute force over all
/// permutations fixing the identity element.
///
/// Orders above [`AUTOMORPHISM_ORDER_CAP`] are rejected: the candidate
/// space grows as `(n-1)!`.
pub fn automorphism_group(g: &LoopTable) -> Result<PermGroup> {
    if g.order() > AUTOMORPHISM_ORDER_CAP {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap: AUTOMORPHISM_ORDER_CAP,
            operation: "brute-force automorphism search",
        });
    }
    let automorphisms: Vec<Permutation> = permutations_fixing(g.order(), g.identity())
        .into_iter()
        .filter(|phi| is_automorphism(g, phi))
        .collect();
    // The filtered set is already a group; closing it sorts, verifies,
    // and wraps it.
    PermGroup::close(&automorphisms)
}

/// Whether the triple `(a, b, c)` is an autotopism:
/// `(x)a * (y)b = (x*y)c` for all pairs.
///
/// # Panics
/// Panics if the triple's degree does not match the table order.
pub fn is_autotopism(g: &LoopTable, t: &MappingTriple) -> bool {
    assert_eq!(
        t.degree(),
        g.order(),
        "triple degree must match the table order"
    );
    let n = g.order();
    (0..n).all(|x| {
        (0..n).all(|y| g.mul(t.a.apply(x), t.b.apply(y)) == t.c.apply(g.mul(x, y)))
    })
}

/// All companions `c` making `phi` a pseudo-automorphism on the given
/// side: for `left`, the labels `c` with `(phi L_c, phi, phi L_c)` an
/// autotopism; for `right`, those with `(phi, phi R_c, phi R_c)` an
/// autotopism. `phi` is a pseudo-automorphism of that side iff the
/// result is nonempty.
///
/// # Panics
/// Panics if the degree does not match the table order.
pub fn pseudo_automorphism_companions(
    g: &LoopTable,
    phi: &Permutation,
    side: crate::table::Side,
) -> Vec<usize> {
    assert_eq!(
        phi.degree(),
        g.order(),
        "permutation degree must match the table order"
    );
    (0..g.order())
        .filter(|&c| {
            let triple = match side {
                crate::table::Side::Left => {
                    let shifted = phi.then(&g.left_translation(c).expect("label in range"));
                    MappingTriple::new(shifted.clone(), phi.clone(), shifted)
                }
                crate::table::Side::Right => {
                    let shifted = phi.then(&g.right_translation(c).expect("label in range"));
                    MappingTriple::new(phi.clone(), shifted.clone(), shifted)
                }
            }
            .expect("components share the table's degree");
            is_autotopism(g, &triple)
        })
        .collect()
}

/// The nucleus: all labels that associate with every pair in each of the
/// three nuclear positions.
pub fn nucleus(g: &LoopTable) -> Vec<usize> {
    let n = g.order();
    (0..n)
        .filter(|&a| {
            (0..n).all(|x| {
                (0..n).all(|y| {
                    g.mul(a, g.mul(x, y)) == g.mul(g.mul(a, x), y)
                        && g.mul(g.mul(x, a), y) == g.mul(x, g.mul(a, y))
                        && g.mul(g.mul(x, y), a) == g.mul(x, g.mul(y, a))
                })
            })
        })
        .collect()
}

/// Whether every right inner mapping is an automorphism. Checking the
/// generators suffices: automorphisms form a group.
pub fn is_a_rho(g: &LoopTable) -> bool {
    let n = g.order();
    (0..n).all(|x| {
        (0..n).all(|y| is_automorphism(g, &right_inner(g, x, y).expect("labels in range")))
    })
}

/// Whether every left inner mapping is an automorphism.
pub fn is_a_lambda(g: &LoopTable) -> bool {
    let n = g.order();
    (0..n).all(|x| {
        (0..n).all(|y| is_automorphism(g, &left_inner(g, x, y).expect("labels in range")))
    })
}

/// Whether every middle inner mapping is an automorphism.
pub fn is_a_mu(g: &LoopTable) -> bool {
    let n = g.order();
    (0..n).all(|x| is_automorphism(g, &middle_inner(g, x).expect("labels in range")))
}

/// Whether all inner mappings are automorphisms.
pub fn is_a_loop(g: &LoopTable) -> bool {
    is_a_rho(g) && is_a_lambda(g) && is_a_mu(g)
}

/// Conjugacy closure: every conjugate of a left translation by a left
/// translation is again a left translation, and likewise on the right.
pub fn is_cc_loop(g: &LoopTable) -> bool {
    let n = g.order();
    let lefts: BTreeSet<Permutation> = (0..n)
        .map(|x| g.left_translation(x).expect("label in range"))
        .collect();
    let rights: BTreeSet<Permutation> = (0..n)
        .map(|x| g.right_translation(x).expect("label in range"))
        .collect();
    let conjugate = |a: &Permutation, b: &Permutation| a.inverse().then(b).then(a);
    lefts.iter().all(|lx| lefts.iter().all(|ly| lefts.contains(&conjugate(lx, ly))))
        && rights
            .iter()
            .all(|rx| rights.iter().all(|ry| rights.contains(&conjugate(rx, ry))))
}

/// The extra law: `x(y . zx) = (xy . z)x` for all `x, y, z`.
pub fn is_extra_loop(g: &LoopTable) -> bool {
    let n = g.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| g.mul(x, g.mul(y, g.mul(z, x))) == g.mul(g.mul(g.mul(x, y), z), x))
        })
    })
}

/// Computes the full classification report: class flags, inner group
/// sizes, automorphism count, multiplication group size, nucleus size.
///
/// Errors if the order exceeds the automorphism search cap.
pub fn classify_loop(g: &LoopTable) -> Result<ClassificationReport> {
    let a_rho = is_a_rho(g);
    let a_lambda = is_a_lambda(g);
    let a_mu = is_a_mu(g);
    Ok(ClassificationReport {
        order: g.order(),
        identity: g.identity(),
        is_group: g.is_associative(),
        is_commutative: g.is_commutative(),
        is_a_rho: a_rho,
        is_a_lambda: a_lambda,
        is_a_mu: a_mu,
        is_a_loop: a_rho && a_lambda && a_mu,
        is_cc: is_cc_loop(g),
        is_extra: is_extra_loop(g),
        inn_rho_size: inner_group(g, InnerGroupKind::Rho)?.size(),
        inn_lambda_size: inner_group(g, InnerGroupKind::Lambda)?.size(),
        inn_mu_size: inner_group(g, InnerGroupKind::Mu)?.size(),
        inn_size: inner_group(g, InnerGroupKind::Full)?.size(),
        automorphism_count: automorphism_group(g)?.size(),
        multiplication_group_size: multiplication_group(g)?.size(),
        nucleus_size: nucleus(g).len(),
    })
}

/// The loop families with dedicated known-fact suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactFamily {
    /// Conjugacy closed loops.
    Cc,
    /// Extra loops.
    Extra,
    /// A-loops (all inner mappings automorphisms).
    ALoop,
}

impl FactFamily {
    pub fn name(self) -> &'static str {
        match self {
            FactFamily::Cc => "cc",
            FactFamily::Extra => "extra",
            FactFamily::ALoop => "aloop",
        }
    }
}

impl fmt::Display for FactFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for FactFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cc" => Ok(FactFamily::Cc),
            "extra" => Ok(FactFamily::Extra),
            "aloop" => Ok(FactFamily::ALoop),
            _ => Err(Error::InvalidQuery {
                message: format!("unknown fact family `{s}` (expected cc, extra, or aloop)"),
            }),
        }
    }
}

/// All right and left inner mappings with their argument pairs, for the
/// quantified commutation clauses.
fn indexed_family(
    g: &LoopTable,
    kind: InnerKind,
) -> Vec<((usize, usize), Permutation)> {
    let n = g.order();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let p = match kind {
                InnerKind::Rho => right_inner(g, x, y),
                InnerKind::Lambda => left_inner(g, x, y),
                InnerKind::Mu => unreachable!("mu is indexed by one label"),
            }
            .expect("labels in range");
            out.push(((x, y), p));
        }
    }
    out
}

/// Runs the known-fact suite for one family, erroring out if the loop is
/// not in that family at all.
///
/// Each clause is quantified over all applicable label tuples and fails
/// with the first counterexample found.
pub fn check_known_facts(g: &LoopTable, family: FactFamily) -> Result<TheoremReport> {
    match family {
        FactFamily::Cc => {
            if !is_cc_loop(g) {
                return Err(Error::OutsideFamily { family: "cc" });
            }
            check_cc_facts(g)
        }
        FactFamily::Extra => {
            if !is_extra_loop(g) {
                return Err(Error::OutsideFamily { family: "extra" });
            }
            check_extra_facts(g)
        }
        FactFamily::ALoop => {
            if !is_a_loop(g) {
                return Err(Error::OutsideFamily { family: "aloop" });
            }
            check_aloop_facts(g)
        }
    }
}

fn check_cc_facts(g: &LoopTable) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("cc-facts");
    let rhos = indexed_family(g, InnerKind::Rho);
    let lambdas = indexed_family(g, InnerKind::Lambda);

    let bad_rho = rhos.iter().find(|(_, p)| !is_automorphism(g, p));
    report.push_check("right-inner-automorphisms", bad_rho.is_none(), || {
        let ((x, y), _) = bad_rho.expect("counterexample exists");
        format!("x={x} y={y}")
    });

    let bad_lambda = lambdas.iter().find(|(_, p)| !is_automorphism(g, p));
    report.push_check("left-inner-automorphisms", bad_lambda.is_none(), || {
        let ((x, y), _) = bad_lambda.expect("counterexample exists");
        format!("x={x} y={y}")
    });

    let inn_rho = inner_group(g, InnerGroupKind::Rho)?;
    let inn_lambda = inner_group(g, InnerGroupKind::Lambda)?;
    report.push_check(
        "left-right-groups-equal",
        inn_lambda.same_elements(&inn_rho),
        || format!("sizes {} vs {}", inn_lambda.size(), inn_rho.size()),
    );

    let inn_full = inner_group(g, InnerGroupKind::Full)?;
    let inn_mu = inner_group(g, InnerGroupKind::Mu)?;
    report.push_check(
        "middle-generates-inner",
        inn_full.same_elements(&inn_mu),
        || format!("sizes {} vs {}", inn_full.size(), inn_mu.size()),
    );

    let first_noncommuting = |left: &[((usize, usize), Permutation)],
                              right: &[((usize, usize), Permutation)]| {
        left.iter()
            .flat_map(|a| right.iter().map(move |b| (a, b)))
            .find(|((_, p), (_, q))| p.then(q) != q.then(p))
            .map(|(((x, y), _), ((u, v), _))| format!("x={x} y={y} u={u} v={v}"))
    };

    match first_noncommuting(&rhos, &rhos) {
        None => report.push_pass("right-inners-commute"),
        Some(detail) => report.push_fail("right-inners-commute", detail),
    }
    match first_noncommuting(&rhos, &lambdas) {
        None => report.push_pass("right-left-inners-commute"),
        Some(detail) => report.push_fail("right-left-inners-commute", detail),
    }

    report.push_check("right-group-abelian", inn_rho.is_abelian(), || {
        format!("a non-commuting pair exists among {} elements", inn_rho.size())
    });

    let mut both: BTreeSet<Permutation> = rhos.iter().map(|(_, p)| p.clone()).collect();
    both.extend(lambdas.iter().map(|(_, p)| p.clone()));
    let both: Vec<Permutation> = both.into_iter().collect();
    let joint = PermGroup::close(&both)?;
    report.push_check("right-left-group-abelian", joint.is_abelian(), || {
        format!("a non-commuting pair exists among {} elements", joint.size())
    });

    Ok(report)
}

fn check_extra_facts(g: &LoopTable) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("extra-facts");
    let n = g.order();

    let mut coincide_fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let r_xy = right_inner(g, x, y)?;
            if r_xy != left_inner(g, x, y)?
                || r_xy != right_inner(g, y, x)?
                || r_xy != left_inner(g, y, x)?
            {
                coincide_fail = Some(format!("x={x} y={y}"));
                break 'outer;
            }
        }
    }
    match coincide_fail {
        None => report.push_pass("inner-mappings-coincide"),
        Some(detail) => report.push_fail("inner-mappings-coincide", detail),
    }

    let mut exponent_fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let r_xy = right_inner(g, x, y)?;
            if !r_xy.then(&r_xy).is_identity() {
                exponent_fail = Some(format!("x={x} y={y} order={}", r_xy.order()));
                break 'outer;
            }
        }
    }
    match exponent_fail {
        None => report.push_pass("right-inner-exponent-two"),
        Some(detail) => report.push_fail("right-inner-exponent-two", detail),
    }

    let inn_rho = inner_group(g, InnerGroupKind::Rho)?;
    let inn_lambda = inner_group(g, InnerGroupKind::Lambda)?;
    report.push_check(
        "left-right-groups-equal",
        inn_lambda.same_elements(&inn_rho),
        || format!("sizes {} vs {}", inn_lambda.size(), inn_rho.size()),
    );
    report.push_check(
        "inner-groups-boolean",
        inn_rho.is_boolean() && inn_lambda.is_boolean(),
        || "an element of order > 2 exists".to_string(),
    );

    let nucleus_labels: BTreeSet<usize> = nucleus(g).into_iter().collect();
    let mismatch = (0..n).find(|&x| {
        let t_x = middle_inner(g, x).expect("label in range");
        is_automorphism(g, &t_x) != nucleus_labels.contains(&x)
    });
    report.push_check("middle-automorphism-iff-nuclear", mismatch.is_none(), || {
        format!("x={}", mismatch.expect("counterexample exists"))
    });

    Ok(report)
}

fn check_aloop_facts(g: &LoopTable) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("aloop-facts");
    let n = g.order();

    let mut left_fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let t_x = middle_inner(g, x)?;
            let l_yx = left_inner(g, y, x)?;
            if t_x.then(&l_yx) != l_yx.then(&t_x) {
                left_fail = Some(format!("x={x} y={y}"));
                break 'outer;
            }
        }
    }
    match left_fail {
        None => report.push_pass("middle-left-commute"),
        Some(detail) => report.push_fail("middle-left-commute", detail),
    }

    let mut right_fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let t_x = middle_inner(g, x)?;
            let r_xy = right_inner(g, x, y)?;
            if t_x.then(&r_xy) != r_xy.then(&t_x) {
                right_fail = Some(format!("x={x} y={y}"));
                break 'outer;
            }
        }
    }
    match right_fail {
        None => report.push_pass("middle-right-commute"),
        Some(detail) => report.push_fail("middle-right-commute", detail),
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, klein, quaternion8, symmetric3};
    use crate::table::Side;

    #[test]
    fn inner_mappings_of_groups_are_conjugations_or_trivial() {
        // In any group, R(x,y) = I by associativity; T(x) is conjugation.
        let s3 = symmetric3();
        for x in 0..6 {
            for y in 0..6 {
                assert!(right_inner(&s3, x, y).unwrap().is_identity());
                assert!(left_inner(&s3, x, y).unwrap().is_identity());
            }
        }
        // In an abelian group, T(x) = I too.
        let z3 = cyclic(3);
        assert!(middle_inner(&z3, 1).unwrap().is_identity());
    }

    #[test]
    fn inner_mapping_checks_arity_and_range() {
        let z3 = cyclic(3);
        assert_eq!(
            inner_mapping(&z3, InnerKind::Mu, &[0, 1]),
            Err(Error::WrongArity {
                kind: "mu",
                expected: 1,
                got: 2
            })
        );
        assert_eq!(
            inner_mapping(&z3, InnerKind::Rho, &[1]),
            Err(Error::WrongArity {
                kind: "rho",
                expected: 2,
                got: 1
            })
        );
        assert!(inner_mapping(&z3, InnerKind::Rho, &[5, 0]).is_err());
        assert!(inner_mapping(&z3, InnerKind::Rho, &[1, 2]).is_ok());
    }

    #[test]
    fn every_inner_mapping_fixes_the_identity() {
        let tables = [cyclic(4), klein(), symmetric3(), quaternion8()];
        for t in &tables {
            let e = t.identity();
            for x in 0..t.order() {
                assert_eq!(middle_inner(t, x).unwrap().apply(e), e);
                for y in 0..t.order() {
                    assert_eq!(right_inner(t, x, y).unwrap().apply(e), e);
                    assert_eq!(left_inner(t, x, y).unwrap().apply(e), e);
                }
            }
        }
    }

    #[test]
    fn inner_group_of_s3_is_its_inner_automorphism_group() {
        // S3 has trivial center, so conjugations give all |S3| = 6 inner
        // automorphisms, and middle mappings already generate them.
        let s3 = symmetric3();
        assert_eq!(inner_group(&s3, InnerGroupKind::Full).unwrap().size(), 6);
        assert_eq!(inner_group(&s3, InnerGroupKind::Mu).unwrap().size(), 6);
        assert_eq!(inner_group(&s3, InnerGroupKind::Rho).unwrap().size(), 1);
    }

    #[test]
    fn inner_group_of_abelian_groups_is_trivial() {
        assert_eq!(inner_group(&cyclic(4), InnerGroupKind::Full).unwrap().size(), 1);
        assert_eq!(inner_group(&cyclic(1), InnerGroupKind::Full).unwrap().size(), 1);
        assert_eq!(inner_group(&klein(), InnerGroupKind::Mu).unwrap().size(), 1);
    }

    #[test]
    fn automorphism_checks_on_z4() {
        let z4 = cyclic(4);
        assert!(is_automorphism(&z4, &Permutation::identity(4)));
        let negation = Permutation::from_images(vec![0, 3, 2, 1]).unwrap();
        assert!(is_automorphism(&z4, &negation));
        let swap = Permutation::from_images(vec![0, 2, 1, 3]).unwrap();
        assert!(!is_automorphism(&z4, &swap));
    }

    #[test]
    fn automorphism_group_sizes_of_small_groups() {
        assert_eq!(automorphism_group(&cyclic(1)).unwrap().size(), 1);
        assert_eq!(automorphism_group(&cyclic(3)).unwrap().size(), 2);
        assert_eq!(automorphism_group(&cyclic(4)).unwrap().size(), 2);
        // Aut(V4) permutes the three involutions freely.
        assert_eq!(automorphism_group(&klein()).unwrap().size(), 6);
        // Aut(S3) = Inn(S3) = S3.
        assert_eq!(automorphism_group(&symmetric3()).unwrap().size(), 6);
        // Aut(Q8) = S4.
        assert_eq!(automorphism_group(&quaternion8()).unwrap().size(), 24);
    }

    #[test]
    fn automorphism_group_respects_the_order_cap() {
        let rows = (0..9usize)
            .map(|i| (0..9).map(|j| (i + j) % 9).collect())
            .collect();
        let z9 = LoopTable::from_rows(rows).unwrap();
        assert_eq!(
            automorphism_group(&z9).unwrap_err(),
            Error::OrderCapExceeded {
                order: 9,
                cap: 8,
                operation: "brute-force automorphism search"
            }
        );
    }

    #[test]
    fn autotopism_examples_on_small_groups() {
        let z4 = cyclic(4);
        assert!(is_autotopism(&z4, &MappingTriple::identity(4)));
        // (L_1, I, L_1) expresses associativity 1(xy) = (1x)y.
        let l1 = z4.left_translation(1).unwrap();
        let t = MappingTriple::new(l1.clone(), Permutation::identity(4), l1).unwrap();
        assert!(is_autotopism(&z4, &t));

        let z3 = cyclic(3);
        let l1 = z3.left_translation(1).unwrap();
        let bad = MappingTriple::new(l1.clone(), l1, Permutation::identity(3)).unwrap();
        assert!(!is_autotopism(&z3, &bad));
    }

    #[test]
    fn companions_of_the_identity_in_a_group() {
        // (I, R_c, R_c) is an autotopism of any group: x(yc) = (xy)c.
        let z4 = cyclic(4);
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(
            pseudo_automorphism_companions(&z4, &Permutation::identity(4), Side::Right),
            all
        );
        assert_eq!(
            pseudo_automorphism_companions(&z4, &Permutation::identity(4), Side::Left),
            all
        );
        // A non-pseudo-automorphism has no companions at all.
        let swap = Permutation::from_images(vec![0, 2, 1, 3]).unwrap();
        assert!(pseudo_automorphism_companions(&z4, &swap, Side::Right).is_empty());
    }

    #[test]
    fn companions_contain_identity_iff_automorphism() {
        let z4 = cyclic(4);
        let e = z4.identity();
        for phi in permutations_fixing(4, e) {
            let companions = pseudo_automorphism_companions(&z4, &phi, Side::Right);
            assert_eq!(companions.contains(&e), is_automorphism(&z4, &phi));
        }
    }

    #[test]
    fn nucleus_of_a_group_is_everything() {
        assert_eq!(nucleus(&symmetric3()), (0..6).collect::<Vec<_>>());
        assert_eq!(nucleus(&cyclic(1)), vec![0]);
    }

    #[test]
    fn groups_satisfy_all_class_predicates() {
        for t in [cyclic(4), symmetric3(), quaternion8()] {
            assert!(is_a_rho(&t));
            assert!(is_a_lambda(&t));
            assert!(is_a_mu(&t));
            assert!(is_a_loop(&t));
            assert!(is_cc_loop(&t));
            assert!(is_extra_loop(&t));
        }
    }

    #[test]
    fn classify_z3_reports_trivial_sizes() {
        let report = classify_loop(&cyclic(3)).unwrap();
        assert!(report.is_group);
        assert!(report.is_commutative);
        assert!(report.is_a_loop && report.is_cc && report.is_extra);
        assert_eq!(report.inn_rho_size, 1);
        assert_eq!(report.inn_size, 1);
        assert_eq!(report.automorphism_count, 2);
        assert_eq!(report.multiplication_group_size, 3);
        assert_eq!(report.nucleus_size, 3);
    }

    #[test]
    fn known_fact_suites_pass_on_group_fixtures() {
        for (name, table) in crate::groups::fixture_groups() {
            for family in [FactFamily::Cc, FactFamily::Extra, FactFamily::ALoop] {
                let report = check_known_facts(&table, family).unwrap();
                assert!(
                    report.all_pass(),
                    "{name} failed the {family} suite:\n{report}"
                );
            }
        }
    }

    #[test]
    fn known_fact_suite_rejects_loops_outside_the_family() {
        // The first nonassociative order-5 loop is in no classical family.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        let t = LoopTable::from_rows(rows).unwrap();
        assert_eq!(
            check_known_facts(&t, FactFamily::Extra),
            Err(Error::OutsideFamily { family: "extra" })
        );
        assert_eq!(
            check_known_facts(&t, FactFamily::Cc),
            Err(Error::OutsideFamily { family: "cc" })
        );
    }

    #[test]
    fn kind_names_parse_back() {
        assert_eq!("rho".parse::<InnerKind>().unwrap(), InnerKind::Rho);
        assert_eq!("mu".parse::<InnerKind>().unwrap(), InnerKind::Mu);
        assert!("sigma".parse::<InnerKind>().is_err());
        assert_eq!("full".parse::<InnerGroupKind>().unwrap(), InnerGroupKind::Full);
        assert_eq!("cc".parse::<FactFamily>().unwrap(), FactFamily::Cc);
        assert!("weird".parse::<FactFamily>().is_err());
    }
}
