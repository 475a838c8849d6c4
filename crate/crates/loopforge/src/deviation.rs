//! The deviation of a permutation at a point, its vanishing condition,
//! and the isotopism test between two loops.

use crate::error::{Error, Result};
use crate::perm::{MappingTriple, Permutation};
use crate::table::LoopTable;

/// The deviation of `phi` at `x`: the composite
/// `phi^-1 . L_x . phi . L_{x phi}^-1` (left to right).
///
/// It measures how far `phi` is from intertwining the left translations:
/// the deviation is trivial at every point iff `phi` is an automorphism.
///
/// # Panics
/// Panics if the degree does not match the table order.
pub fn deviation(g: &LoopTable, phi: &Permutation, x: usize) -> Result<Permutation> {
    assert_eq!(
        phi.degree(),
        g.order(),
        "permutation degree must match the table order"
    );
    let l_x = g.left_translation(x)?;
    let l_x_phi_inv = g.left_translation(phi.apply(x))?.inverse();
    Ok(phi.inverse().then(&l_x).then(phi).then(&l_x_phi_inv))
}

/// Whether the vanishing condition holds at `x`: the composites
/// `L_x . phi` and `phi . L_{x phi}^-1 . phi . L_x . phi^-1 . L_{x phi}`
/// agree pointwise.
///
/// # Panics
/// Panics if the degree does not match the table order.
pub fn p_vanishes(g: &LoopTable, phi: &Permutation, x: usize) -> Result<bool> {
    assert_eq!(
        phi.degree(),
        g.order(),
        "permutation degree must match the table order"
    );
    let l_x = g.left_translation(x)?;
    let l_x_phi = g.left_translation(phi.apply(x))?;
    let lhs = l_x.then(phi);
    let rhs = phi
        .then(&l_x_phi.inverse())
        .then(phi)
        .then(&l_x)
        .then(&phi.inverse())
        .then(&l_x_phi);
    Ok(lhs == rhs)
}

/// Whether the vanishing condition holds at every point.
pub fn p_vanishes_all(g: &LoopTable, phi: &Permutation) -> Result<bool> {
    for x in 0..g.order() {
        if !p_vanishes(g, phi, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the triple `(a, b, c)` is an isotopism from `g` onto `h`:
/// `(x)a . (y)b = (x * y)c` for all pairs, where `.` is `h`'s operation
/// and `*` is `g`'s.
pub fn is_isotopism(g: &LoopTable, h: &LoopTable, t: &MappingTriple) -> Result<bool> {
    if g.order() != h.order() {
        return Err(Error::OrderMismatch {
            left: g.order(),
            right: h.order(),
        });
    }
    if t.degree() != g.order() {
        return Err(Error::DegreeMismatch {
            left: g.order(),
            right: t.degree(),
        });
    }
    let n = g.order();
    Ok((0..n).all(|x| {
        (0..n).all(|y| h.mul(t.a.apply(x), t.b.apply(y)) == t.c.apply(g.mul(x, y)))
    }))
}

/// The first pair where the triple fails to be an isotopism, if any.
pub fn isotopism_counterexample(
    g: &LoopTable,
    h: &LoopTable,
    t: &MappingTriple,
) -> Result<Option<(usize, usize)>> {
    if g.order() != h.order() {
        return Err(Error::OrderMismatch {
            left: g.order(),
            right: h.order(),
        });
    }
    if t.degree() != g.order() {
        return Err(Error::DegreeMismatch {
            left: g.order(),
            right: t.degree(),
        });
    }
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            if h.mul(t.a.apply(x), t.b.apply(y)) != t.c.apply(g.mul(x, y)) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}
