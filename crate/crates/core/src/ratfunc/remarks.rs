//! The substitution linking `x + c/(x^q + x + b)` with
//! `x + c'/(x^q - x + b')` over `F_{q²}`, and the strengthened nonvanishing
//! check over `u + bv + b²` for `n = 3`.

use super::check_bc;
use super::criteria::Verdict;
use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};

fn require_degree(tower: &FieldTower, n: u32, expected: &'static str) -> Result<()> {
    if tower.n() != n {
        return Err(Error::UnsupportedDegree {
            expected,
            got: tower.n(),
        });
    }
    Ok(())
}

/// First `α` in encoding order with `α^{q-1} = -1` (requires `n = 2`).
pub fn find_alpha(tower: &FieldTower) -> Result<Element> {
    require_degree(tower, 2, "2")?;
    let minus_one = tower.neg(Element::ONE);
    let q = tower.q() as u64;
    Ok(tower
        .elements()
        .skip(1)
        .find(|&a| tower.pow(a, q - 1) == minus_one)
        .expect("α^(q-1) = -1 is solvable in F_(q²)"))
}

/// `(α^{q+1} c, α^q b)`: `x + c/(x^q + x + b)` permutes `F_{q²}` iff
/// `x + α^{q+1}c/(x^q - x + α^q b)` does.
pub fn remark2_transform(
    tower: &FieldTower,
    b: Element,
    c: Element,
    alpha: Element,
) -> Result<(Element, Element)> {
    require_degree(tower, 2, "2")?;
    let q = tower.q() as u64;
    if alpha.is_zero() || tower.pow(alpha, q - 1) != tower.neg(Element::ONE) {
        return Err(Error::BadAlpha);
    }
    Ok((
        tower.mul(tower.pow(alpha, q + 1), c),
        tower.mul(tower.pow(alpha, q), b),
    ))
}

/// `x + c/(x^q - x + b)`; `None` where the denominator vanishes.
pub fn eval_artin_schreier(tower: &FieldTower, b: Element, c: Element, x: Element) -> Option<Element> {
    let denom = tower.add(tower.sub(tower.frobenius(x, 1), x), b);
    let inv = tower.invert(denom).ok()?;
    Some(tower.add(x, tower.mul(c, inv)))
}

/// Direct bijection test of `x + c/(x^q - x + b)` on `F_{q^n}`; `false` when
/// the map is not total.
pub fn is_permutation_artin_schreier(tower: &FieldTower, b: Element, c: Element) -> bool {
    let mut seen = vec![false; tower.size() as usize];
    for x in tower.elements() {
        match eval_artin_schreier(tower, b, c, x) {
            Some(y) if !seen[y.0 as usize] => seen[y.0 as usize] = true,
            _ => return false,
        }
    }
    true
}

/// Checks `Tr(c/(u + bv + b²)) ≠ 1` for all `(u, v) ∈ F_q²`; the witness
/// is the first failing `(u, v)`.
pub fn remark3_check(tower: &FieldTower, b: Element, c: Element) -> Result<Verdict> {
    require_degree(tower, 3, "3")?;
    if tower.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    check_bc(tower, b, c)?;
    let b2 = tower.mul(b, b);
    for u in tower.base_elements() {
        for v in tower.base_elements() {
            let z = tower.add(tower.add(u, tower.mul(b, v)), b2);
            // 1, b, b² are independent over F_q
            let inv = tower.invert(z).expect("u + bv + b² ≠ 0 for b ∉ F_q");
            if tower.trace(tower.mul(c, inv)) == Element::ONE {
                return Ok(Verdict::fails((u, v)));
            }
        }
    }
    Ok(Verdict::PERMUTES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::DEFAULT_BUDGET;
    use crate::ratfunc::{closed_form_c, is_permutation_direct, pairwise_criterion, RatFuncSpec};

    #[test]
    fn alpha_search() {
        let f9 = FieldTower::new(3, 1, 2).unwrap();
        let a = find_alpha(&f9).unwrap();
        assert_eq!(f9.pow(a, 2), f9.neg(Element::ONE));
        assert_eq!(remark2_transform(&f9, Element(3), Element::ONE, Element::ONE), Err(Error::BadAlpha));
        assert_eq!(remark2_transform(&f9, Element(3), Element::ONE, Element::ZERO), Err(Error::BadAlpha));
    }

    #[test]
    fn transform_at_t() {
        // α = t: t^{q-1} = t² = -1 in F_9
        let f9 = FieldTower::new(3, 1, 2).unwrap();
        let t = Element(3);
        let (c2, b2) = remark2_transform(&f9, t, Element::ONE, t).unwrap();
        assert_eq!(c2, f9.pow(t, 4));
        assert_eq!(b2, f9.pow(t, 4));
        assert_eq!((c2, b2), (Element::ONE, Element::ONE));
    }

    #[test]
    fn transform_preserves_verdict_exhaustively() {
        for (p, m) in [(2u32, 1u32), (3, 1), (2, 2), (5, 1)] {
            let f = FieldTower::new(p, m, 2).unwrap();
            let alpha = find_alpha(&f).unwrap();
            for b in f.non_base_elements() {
                for c in f.elements().skip(1) {
                    let s = RatFuncSpec::with_identity(&f, c, b).unwrap();
                    let lhs = is_permutation_direct(&f, &s, DEFAULT_BUDGET).unwrap().permutes;
                    let (c2, b2) = remark2_transform(&f, b, c, alpha).unwrap();
                    assert_eq!(lhs, is_permutation_artin_schreier(&f, b2, c2), "b={b} c={c}");
                }
            }
            // Tr(α^q b) ≠ 0 exactly when b ∉ F_q
            let q = f.q() as u64;
            for b in f.elements() {
                let tr = f.trace(f.mul(f.pow(alpha, q), b));
                assert_eq!(!tr.is_zero(), !f.is_in_base(b));
            }
        }
    }

    #[test]
    fn remark3_examples() {
        let f27 = FieldTower::new(3, 1, 3).unwrap();
        let b = Element(3);
        let c = closed_form_c(&f27, b).unwrap();
        assert!(remark3_check(&f27, b, c).unwrap().permutes);
        assert!(pairwise_criterion(&f27, b, c).permutes);
        let f8 = FieldTower::new(2, 1, 3).unwrap();
        assert_eq!(remark3_check(&f8, Element(2), Element(5)), Err(Error::EvenCharacteristic));
        assert_eq!(
            remark3_check(&f27, Element(1), Element(5)),
            Err(Error::BInBaseField)
        );
    }

    #[test]
    fn remark3_implies_pairwise() {
        let f27 = FieldTower::new(3, 1, 3).unwrap();
        for b in f27.non_base_elements() {
            for c in f27.elements().skip(1) {
                if remark3_check(&f27, b, c).unwrap().permutes {
                    assert!(pairwise_criterion(&f27, b, c).permutes);
                }
            }
        }
    }
}
