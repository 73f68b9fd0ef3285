//! `q`-linear polynomials `L(x) = Σ a_i x^{q^i}` as `F_q`-linear endomorphisms
//! of `F_{q^n}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::matrix::{self, Matrix};
use crate::gf::{Element, FieldTower};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearizedPoly {
    coeffs: Vec<Element>,
}

/// Rank, kernel basis and image basis of a linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearAnalysis {
    pub rank: usize,
    pub kernel: Vec<Element>,
    pub image: Vec<Element>,
}

impl LinearizedPoly {
    /// Coefficients `a_0, …, a_{k-1}` with `k ≤ n`; missing ones are zero.
    pub fn new(tower: &FieldTower, coeffs: &[Element]) -> Result<Self> {
        let n = tower.n() as usize;
        if coeffs.len() > n {
            return Err(Error::Parse(format!(
                "a q-linear polynomial over F_(q^{n}) has at most {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        for &c in coeffs {
            tower.decode(c.0 as u64, crate::gf::Level::Top)?;
        }
        let mut coeffs = coeffs.to_vec();
        coeffs.resize(n, Element::ZERO);
        Ok(LinearizedPoly { coeffs })
    }

    pub fn identity(tower: &FieldTower) -> Self {
        Self::scalar(tower, Element::ONE)
    }

    pub fn zero(tower: &FieldTower) -> Self {
        Self::scalar(tower, Element::ZERO)
    }

    /// `a·x`.
    pub fn scalar(tower: &FieldTower, a: Element) -> Self {
        let mut coeffs = vec![Element::ZERO; tower.n() as usize];
        coeffs[0] = a;
        LinearizedPoly { coeffs }
    }

    /// `x^q - x`.
    pub fn frobenius_minus_identity(tower: &FieldTower) -> Self {
        let mut coeffs = vec![Element::ZERO; tower.n() as usize];
        coeffs[0] = tower.neg(Element::ONE);
        if tower.n() > 1 {
            coeffs[1] = Element::ONE;
        }
        LinearizedPoly { coeffs }
    }

    /// `a·Tr(β x)`, i.e. `Σ_i a β^{q^i} x^{q^i}`.
    pub fn scaled_trace(tower: &FieldTower, a: Element, beta: Element) -> Self {
        let coeffs = (0..tower.n())
            .map(|i| tower.mul(a, tower.frobenius(beta, i)))
            .collect();
        LinearizedPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn eval(&self, tower: &FieldTower, x: Element) -> Element {
        let mut acc = Element::ZERO;
        let mut xi = x;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xi = tower.frobenius(xi, 1);
            }
            if !a.is_zero() {
                acc = tower.add(acc, tower.mul(a, xi));
            }
        }
        acc
    }

    /// Matrix over `F_q` in the power basis: column `j` is `L(v^j)`.
    pub fn matrix(&self, tower: &FieldTower) -> Matrix {
        let n = tower.n() as usize;
        let images: Vec<Element> = (0..n)
            .map(|j| self.eval(tower, basis_vector(tower, j)))
            .collect();
        tower.coordinate_matrix(&images)
    }

    /// Rebuilds the unique `q`-linear polynomial realising a matrix, by
    /// solving the Moore system `Σ_i a_i σ^i(v^j) = M(v^j)` over `F_{q^n}`.
    pub fn from_matrix(tower: &FieldTower, m: &Matrix) -> Self {
        let n = tower.n() as usize;
        let targets: Vec<u32> = matrix::transpose(m)
            .iter()
            .map(|col| tower.from_coords(col).0)
            .collect();
        let moore: Matrix = (0..n)
            .map(|j| {
                let vj = basis_vector(tower, j);
                (0..n).map(|i| tower.frobenius(vj, i as u32).0).collect()
            })
            .collect();
        let top = tower.table(crate::gf::Level::Top);
        let coeffs = matrix::solve(top, &moore, &targets)
            .expect("the Moore matrix of a basis is invertible")
            .into_iter()
            .map(Element)
            .collect();
        LinearizedPoly { coeffs }
    }

    /// Rank, kernel and image. The image basis is `L(v^j)` over the pivot
    /// columns `j` of the row-reduced matrix, in increasing `j`.
    pub fn analyse(&self, tower: &FieldTower) -> LinearAnalysis {
        let f = tower.base_field();
        let m = self.matrix(tower);
        let (_, pivots) = matrix::rref(f, &m);
        let cols = matrix::transpose(&m);
        let image = pivots.iter().map(|&j| tower.from_coords(&cols[j])).collect();
        let kernel = matrix::nullspace(f, &m)
            .iter()
            .map(|v| tower.from_coords(v))
            .collect();
        LinearAnalysis {
            rank: pivots.len(),
            kernel,
            image,
        }
    }

    pub fn rank(&self, tower: &FieldTower) -> usize {
        matrix::rank(tower.base_field(), &self.matrix(tower))
    }

    pub fn invert(&self, tower: &FieldTower) -> Result<Self> {
        let inv = matrix::inverse(tower.base_field(), &self.matrix(tower)).ok_or(Error::NotBijective)?;
        Ok(Self::from_matrix(tower, &inv))
    }

    /// Pairs `(α_i, β_i)` with `L(x) = Σ α_i Tr(β_i x)`; the `α_i` are the
    /// image basis of [`analyse`](Self::analyse).
    ///
    /// The image basis is completed with the lowest-encoding elements that
    /// keep independence; `β_i` represents the `i`-th coordinate functional
    /// `x ↦ Tr(δ_i L(x))`, where `δ` is the dual of the completed basis.
    pub fn trace_decompose(&self, tower: &FieldTower) -> Vec<(Element, Element)> {
        let alphas = self.analyse(tower).image;
        if alphas.is_empty() {
            return Vec::new();
        }
        let completed = complete_basis(tower, &alphas);
        let delta = tower
            .dual_basis(&completed)
            .expect("a completed basis is a basis");
        let power_dual = tower
            .dual_basis(&power_basis(tower))
            .expect("the power basis is a basis");
        let n = tower.n() as usize;
        alphas
            .iter()
            .zip(&delta)
            .map(|(&alpha, &d)| {
                // β = Σ_j φ(v^j) ε_j with ε dual to the power basis
                let beta = (0..n).fold(Element::ZERO, |acc, j| {
                    let phi = tower.trace(tower.mul(d, self.eval(tower, basis_vector(tower, j))));
                    tower.add(acc, tower.mul(phi, power_dual[j]))
                });
                (alpha, beta)
            })
            .collect()
    }
}

pub(crate) fn basis_vector(tower: &FieldTower, j: usize) -> Element {
    let mut c = vec![0; tower.n() as usize];
    c[j] = 1;
    tower.from_coords(&c)
}

pub(crate) fn power_basis(tower: &FieldTower) -> Vec<Element> {
    (0..tower.n() as usize).map(|j| basis_vector(tower, j)).collect()
}

/// Extends an independent list to a basis using lowest-encoding elements.
pub fn complete_basis(tower: &FieldTower, start: &[Element]) -> Vec<Element> {
    let n = tower.n() as usize;
    let f = tower.base_field();
    let mut basis = start.to_vec();
    for cand in tower.elements().skip(1) {
        if basis.len() == n {
            break;
        }
        let mut trial = basis.clone();
        trial.push(cand);
        if matrix::rank(f, &tower.coordinate_matrix(&trial)) == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// Linear functional coefficients: returns `α` with `φ(x) = Tr(α x)`,
/// where `φ` is given by its values on the power basis.
pub fn functional_representative(tower: &FieldTower, values: &[Element]) -> Element {
    let dual = tower
        .dual_basis(&power_basis(tower))
        .expect("the power basis is a basis");
    values
        .iter()
        .zip(dual)
        .fold(Element::ZERO, |acc, (&v, d)| tower.add(acc, tower.mul(v, d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldTower {
        FieldTower::new(3, 1, 2).unwrap()
    }

    #[test]
    fn eval_examples() {
        let t = f9();
        let x = Element(3);
        assert_eq!(LinearizedPoly::identity(&t).eval(&t, x), x);
        let l = LinearizedPoly::frobenius_minus_identity(&t);
        assert_eq!(l.eval(&t, x), x);
        for a in t.base_elements() {
            assert_eq!(l.eval(&t, a), Element::ZERO);
        }
    }

    #[test]
    fn matrix_examples() {
        let t = f9();
        assert_eq!(LinearizedPoly::identity(&t).matrix(&t), matrix::identity(2));
        let f4 = FieldTower::new(2, 1, 2).unwrap();
        let m = LinearizedPoly::frobenius_minus_identity(&f4).matrix(&f4);
        assert!(m.iter().all(|row| row[0] == 0));
        let frob = LinearizedPoly::new(&t, &[Element::ZERO, Element::ONE]).unwrap();
        let m = frob.matrix(&t);
        assert_eq!((m[0][1], m[1][1]), (0, 2));
    }

    #[test]
    fn rank_examples() {
        for (p, m, n) in [(2, 1, 2), (3, 1, 3), (2, 2, 2)] {
            let t = FieldTower::new(p, m, n).unwrap();
            let a = LinearizedPoly::frobenius_minus_identity(&t).analyse(&t);
            assert_eq!(a.rank, n as usize - 1);
            assert_eq!(a.kernel.len(), 1);
            assert!(t.is_in_base(a.kernel[0]));
            let id = LinearizedPoly::identity(&t).analyse(&t);
            assert_eq!((id.rank, id.kernel.len()), (n as usize, 0));
            assert_eq!(LinearizedPoly::zero(&t).rank(&t), 0);
        }
    }

    #[test]
    fn invert_examples() {
        let t = f9();
        let id = LinearizedPoly::identity(&t);
        assert_eq!(id.invert(&t).unwrap(), id);
        let a = Element(5);
        let inv = LinearizedPoly::scalar(&t, a).invert(&t).unwrap();
        assert_eq!(inv, LinearizedPoly::scalar(&t, t.invert(a).unwrap()));
        let frob = LinearizedPoly::new(&t, &[Element::ZERO, Element::ONE]).unwrap();
        assert_eq!(frob.invert(&t).unwrap(), frob);
        assert_eq!(
            LinearizedPoly::frobenius_minus_identity(&t).invert(&t),
            Err(Error::NotBijective)
        );
    }

    #[test]
    fn trace_decompose_examples() {
        let f4 = FieldTower::new(2, 1, 2).unwrap();
        assert!(LinearizedPoly::zero(&f4).trace_decompose(&f4).is_empty());
        let pairs = LinearizedPoly::identity(&f4).trace_decompose(&f4);
        assert_eq!(pairs, [(Element(1), Element(3)), (Element(2), Element(1))]);
        for x in f4.elements() {
            let s = pairs.iter().fold(Element::ZERO, |acc, &(a, b)| {
                f4.add(acc, f4.mul(a, f4.trace(f4.mul(b, x))))
            });
            assert_eq!(s, x);
        }
        let alpha = Element(3);
        let l = LinearizedPoly::scaled_trace(&f4, alpha, Element::ONE);
        assert_eq!(l.trace_decompose(&f4), [(alpha, Element::ONE)]);
    }

    #[test]
    fn too_many_coefficients() {
        let t = f9();
        assert!(LinearizedPoly::new(&t, &[Element::ONE; 3]).is_err());
        assert!(LinearizedPoly::new(&t, &[Element(9)]).is_err());
    }
}
