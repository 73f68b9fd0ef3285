//! The equivalent permutation criteria for `x + c/(Tr(x) + b)`:
//! direct enumeration on `F_{q^n}`, injectivity of the reduced map
//! `t ↦ t + Tr(c/(t + b))` on `F_q`, and the pairwise trace condition.

use serde::{Deserialize, Serialize};

use super::RatFuncSpec;
use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub permutes: bool,
    /// First failing pair in encoding order, when `permutes` is false.
    pub witness: Option<(Element, Element)>,
}

impl Verdict {
    pub const PERMUTES: Verdict = Verdict {
        permutes: true,
        witness: None,
    };

    pub fn fails(witness: (Element, Element)) -> Self {
        Verdict {
            permutes: false,
            witness: Some(witness),
        }
    }
}

/// Oracle: evaluates the map on all of `F_{q^n}` and looks for a collision.
pub fn is_permutation_direct(tower: &FieldTower, spec: &RatFuncSpec, budget: u64) -> Result<Verdict> {
    let size = tower.size();
    if size as u64 > budget {
        return Err(Error::SizeBudgetExceeded {
            size: size as u128,
            budget,
        });
    }
    const UNSEEN: u32 = u32::MAX;
    let mut preimage = vec![UNSEEN; size as usize];
    for x in tower.elements() {
        let y = spec.eval(tower, x).0 as usize;
        if preimage[y] != UNSEEN {
            return Ok(Verdict::fails((Element(preimage[y]), x)));
        }
        preimage[y] = x.0;
    }
    Ok(Verdict::PERMUTES)
}

/// `t0 + Tr(c/(t0 + b))` for `t0 ∈ F_q`.
pub fn reduced_map_eval(tower: &FieldTower, b: Element, c: Element, t0: Element) -> Element {
    let inv = tower
        .invert(tower.add(t0, b))
        .expect("t0 + b is nonzero because b lies outside F_q");
    tower.add(t0, tower.trace(tower.mul(c, inv)))
}

pub fn is_permutation_reduced(tower: &FieldTower, b: Element, c: Element) -> Verdict {
    let q = tower.q() as usize;
    const UNSEEN: u32 = u32::MAX;
    let mut preimage = vec![UNSEEN; q];
    for t in tower.base_elements() {
        let y = reduced_map_eval(tower, b, c, t).0 as usize;
        if preimage[y] != UNSEEN {
            return Verdict::fails((Element(preimage[y]), t));
        }
        preimage[y] = t.0;
    }
    Verdict::PERMUTES
}

/// `1/(x0 + b)` for every `x0 ∈ F_q`.
pub(crate) fn shifted_inverses(tower: &FieldTower, b: Element) -> Vec<Element> {
    tower
        .base_elements()
        .map(|x| tower.invert(tower.add(x, b)).expect("b lies outside F_q"))
        .collect()
}

/// First pair `x0 < y0` in `F_q` with `Tr(c/((x0+b)(y0+b))) = target`.
pub(crate) fn find_pair_with_trace(
    tower: &FieldTower,
    inverses: &[Element],
    c: Element,
    target: Element,
) -> Option<(Element, Element)> {
    for (x, &ix) in inverses.iter().enumerate() {
        let cx = tower.mul(c, ix);
        for (y, &iy) in inverses.iter().enumerate().skip(x + 1) {
            if tower.trace(tower.mul(cx, iy)) == target {
                return Some((Element(x as u32), Element(y as u32)));
            }
        }
    }
    None
}

/// Holds iff `Tr(c/((x0+b)(y0+b))) ≠ 1` for all `x0 ≠ y0` in `F_q`.
pub fn pairwise_criterion(tower: &FieldTower, b: Element, c: Element) -> Verdict {
    let inverses = shifted_inverses(tower, b);
    match find_pair_with_trace(tower, &inverses, c, Element::ONE) {
        Some(w) => Verdict::fails(w),
        None => Verdict::PERMUTES,
    }
}

/// First pair `x0 < y0` in `F_q` with `Tr(c/((x0+b)(y0+b))) = 0`, if any.
/// Such a pair rules out `(x^q - x) + c/(Tr(x) + b)` being a permutation.
pub fn kernel_criterion(tower: &FieldTower, b: Element, c: Element) -> Option<(Element, Element)> {
    let inverses = shifted_inverses(tower, b);
    find_pair_with_trace(tower, &inverses, c, Element::ZERO)
}
