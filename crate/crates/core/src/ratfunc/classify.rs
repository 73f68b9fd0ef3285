//! Closed-form coefficients and exhaustive classification of `c`.

use rayon::prelude::*;

use super::check_bc;
use super::criteria::{find_pair_with_trace, shifted_inverses};
use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};

/// `(b^q - b)^{q+1}` when `d = 2`, `-(b^q - b)^{q²+1}` when `d = 3`, for
/// `b` in the degree-`d` subfield.
pub fn closed_form_c_in_subfield(tower: &FieldTower, b: Element, d: u32) -> Result<Element> {
    if d != 2 && d != 3 {
        return Err(Error::UnsupportedDegree {
            expected: "2 or 3",
            got: d,
        });
    }
    if !tower.is_in_subfield(b, d)? {
        return Err(Error::NonDivisorDegrees { from: tower.n(), to: d });
    }
    if tower.is_in_base(b) {
        return Err(Error::BInBaseField);
    }
    let q = tower.q() as u64;
    let diff = tower.sub(tower.frobenius(b, 1), b);
    Ok(if d == 2 {
        tower.pow(diff, q + 1)
    } else {
        tower.neg(tower.pow(diff, q * q + 1))
    })
}

/// The closed-form `c` for the tower's own degree `n ∈ {2, 3}`.
pub fn closed_form_c(tower: &FieldTower, b: Element) -> Result<Element> {
    match tower.n() {
        2 | 3 => closed_form_c_in_subfield(tower, b, tower.n()),
        n => Err(Error::UnsupportedDegree {
            expected: "2 or 3",
            got: n,
        }),
    }
}

/// All `c ∈ F_{q^n}^*` making `x + c/(Tr(x) + b)` a permutation, ascending,
/// decided by the pairwise criterion with early exit.
pub fn classify_c(tower: &FieldTower, b: Element, budget: u64) -> Result<Vec<Element>> {
    classify_c_with(tower, b, budget, tower.elements().skip(1).collect())
}

/// [`classify_c`] restricted to the given candidates.
pub fn classify_c_with(
    tower: &FieldTower,
    b: Element,
    budget: u64,
    candidates: Vec<Element>,
) -> Result<Vec<Element>> {
    check_bc(tower, b, Element::ONE)?;
    let work = (tower.size() as u128).pow(2);
    if work > budget as u128 {
        return Err(Error::SizeBudgetExceeded { size: work, budget });
    }
    let inverses = shifted_inverses(tower, b);
    Ok(candidates
        .into_par_iter()
        .filter(|&c| {
            !c.is_zero() && find_pair_with_trace(tower, &inverses, c, Element::ONE).is_none()
        })
        .collect())
}

/// `{c : Tr_{n,d}(c) = closed form over F_{q^d}}` for `b ∈ F_{q^d} \ F_q`.
pub fn lifted_c_set(tower: &FieldTower, b: Element, d: u32) -> Result<Vec<Element>> {
    if d == 0 || !tower.n().is_multiple_of(d) {
        return Err(Error::NonDivisorDegrees { from: tower.n(), to: d });
    }
    let target = closed_form_c_in_subfield(tower, b, d)?;
    let n = tower.n();
    Ok(tower
        .elements()
        .filter(|&c| tower.trace_rel(c, n, d).unwrap() == target)
        .collect())
}
