//! Polynomials in `F_{q^n}[X, Y]` and the auxiliary curves `f(X, Y)` whose
//! off-diagonal `F_q`-points decide the permutation property.
//!
//! For `z = (x0 + b)(y0 + b)` every `f` built here satisfies
//! `f(x0, y0) = N(z)·(1 - Tr(c/z))` (or `N(z)·Tr(c/z)` for the kernel
//! variant), so off-diagonal zeros are exactly the pairwise-criterion
//! failures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};
use crate::ratfunc::check_bc;

/// Dense coefficient grid: `coeffs[i][j]` multiplies `X^i Y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    coeffs: Vec<Vec<Element>>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { coeffs: Vec::new() }
    }

    pub fn constant(a: Element) -> Self {
        Self::from_grid(vec![vec![a]])
    }

    /// `X + a`.
    pub fn x_plus(a: Element) -> Self {
        Self::from_grid(vec![vec![a], vec![Element::ONE]])
    }

    /// `Y + a`.
    pub fn y_plus(a: Element) -> Self {
        Self::from_grid(vec![vec![a, Element::ONE]])
    }

    /// `XY + βX + γY + δ`.
    pub fn bilinear(beta: Element, gamma: Element, delta: Element) -> Self {
        Self::from_grid(vec![vec![delta, gamma], vec![beta, Element::ONE]])
    }

    /// Builds from a grid, padding ragged rows and trimming zero borders.
    pub fn from_grid(grid: Vec<Vec<Element>>) -> Self {
        let width = grid.iter().map(Vec::len).max().unwrap_or(0);
        let mut coeffs: Vec<Vec<Element>> = grid
            .into_iter()
            .map(|mut row| {
                row.resize(width, Element::ZERO);
                row
            })
            .collect();
        while coeffs.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
            coeffs.pop();
        }
        let dy = coeffs
            .iter()
            .filter_map(|r| r.iter().rposition(|c| !c.is_zero()))
            .max();
        match dy {
            Some(dy) => coeffs.iter_mut().for_each(|r| r.truncate(dy + 1)),
            None => coeffs.clear(),
        }
        BivarPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `X`; `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.coeffs.first().map(|r| r.len() - 1)
    }

    pub fn total_degree(&self) -> Option<usize> {
        let mut best = None;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    best = best.max(Some(i + j));
                }
            }
        }
        best
    }

    pub fn coeff(&self, i: usize, j: usize) -> Element {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or(Element::ZERO)
    }

    pub fn grid(&self) -> &[Vec<Element>] {
        &self.coeffs
    }

    pub fn add(&self, tower: &FieldTower, other: &Self) -> Self {
        self.zip_with(other, |a, b| tower.add(a, b))
    }

    pub fn sub(&self, tower: &FieldTower, other: &Self) -> Self {
        self.zip_with(other, |a, b| tower.sub(a, b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Element, Element) -> Element) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self
            .deg_y()
            .max(other.deg_y())
            .map_or(0, |d| d + 1);
        let grid = (0..rows)
            .map(|i| (0..cols).map(|j| op(self.coeff(i, j), other.coeff(i, j))).collect())
            .collect();
        Self::from_grid(grid)
    }

    pub fn mul(&self, tower: &FieldTower, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let rows = self.coeffs.len() + other.coeffs.len() - 1;
        let cols = self.coeffs[0].len() + other.coeffs[0].len() - 1;
        let mut grid = vec![vec![Element::ZERO; cols]; rows];
        for (i, ra) in self.coeffs.iter().enumerate() {
            for (j, &a) in ra.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, rb) in other.coeffs.iter().enumerate() {
                    for (l, &b) in rb.iter().enumerate() {
                        let cell = &mut grid[i + k][j + l];
                        *cell = tower.add(*cell, tower.mul(a, b));
                    }
                }
            }
        }
        Self::from_grid(grid)
    }

    pub fn scale(&self, tower: &FieldTower, a: Element) -> Self {
        self.map(|c| tower.mul(a, c))
    }

    fn map(&self, f: impl Fn(Element) -> Element) -> Self {
        Self::from_grid(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|&c| f(c)).collect())
                .collect(),
        )
    }

    /// `σ_q^i` applied to every coefficient.
    pub fn apply_sigma(&self, tower: &FieldTower, i: u32) -> Self {
        self.map(|c| tower.frobenius(c, i))
    }

    /// `Π_{i<n} σ_q^i(self)`.
    pub fn norm(&self, tower: &FieldTower) -> Self {
        (1..tower.n()).fold(self.clone(), |acc, i| acc.mul(tower, &self.apply_sigma(tower, i)))
    }

    /// `Σ_{i<n} σ_q^i(self)`.
    pub fn trace(&self, tower: &FieldTower) -> Self {
        (1..tower.n()).fold(self.clone(), |acc, i| acc.add(tower, &self.apply_sigma(tower, i)))
    }

    pub fn is_fq_stable(&self, tower: &FieldTower) -> bool {
        self.apply_sigma(tower, 1) == *self
    }

    pub fn transpose(&self) -> Self {
        let cols = self.deg_y().map_or(0, |d| d + 1);
        Self::from_grid(
            (0..cols)
                .map(|j| self.coeffs.iter().map(|r| r[j]).collect())
                .collect(),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose() == *self
    }

    pub fn eval(&self, tower: &FieldTower, x: Element, y: Element) -> Element {
        self.coeffs.iter().rev().fold(Element::ZERO, |acc, row| {
            let r = row
                .iter()
                .rev()
                .fold(Element::ZERO, |a, &c| tower.add(tower.mul(a, y), c));
            tower.add(tower.mul(acc, x), r)
        })
    }

    /// Renders with polynomial-form coefficients.
    pub fn render(&self, tower: &FieldTower) -> String {
        let mut terms = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate().rev() {
            for (j, &c) in row.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mono = [(i, "X"), (j, "Y")]
                    .iter()
                    .filter(|(e, _)| *e > 0)
                    .map(|&(e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                    .collect::<Vec<_>>()
                    .join("*");
                let coef = tower.render(c);
                let coef = if coef.contains('+') { format!("({coef})") } else { coef };
                terms.push(match (mono.is_empty(), c == Element::ONE) {
                    (true, _) => coef,
                    (false, true) => mono,
                    (false, false) => format!("{coef}*{mono}"),
                });
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for BivarPoly {
    /// Raw encodings, `[[c00, c01, …], [c10, …], …]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .coeffs
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|c| c.0.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn require_n(tower: &FieldTower, n: u32) -> Result<()> {
    if tower.n() != n {
        return Err(Error::WrongDegree(format!(
            "construction needs n = {n}, tower has n = {}",
            tower.n()
        )));
    }
    Ok(())
}

/// `(X + b)(Y + b)`.
fn shifted(tower: &FieldTower, b: Element) -> BivarPoly {
    BivarPoly::from_grid(vec![vec![tower.mul(b, b), b], vec![b, Element::ONE]])
}

/// `(X + b)(X + b^q)(Y + b)(Y + b^q)`.
fn shifted_quartic(tower: &FieldTower, b: Element) -> BivarPoly {
    let bq = tower.frobenius(b, 1);
    let x = BivarPoly::x_plus(b).mul(tower, &BivarPoly::x_plus(bq));
    let y = BivarPoly::y_plus(b).mul(tower, &BivarPoly::y_plus(bq));
    x.mul(tower, &y)
}

/// `N((X + b)(Y + b)) - Tr(c^q (X + b)(Y + b))` for `n = 2`.
pub fn build_f2(tower: &FieldTower, b: Element, c: Element) -> Result<BivarPoly> {
    require_n(tower, 2)?;
    check_bc(tower, b, c)?;
    let z = shifted(tower, b);
    let cq = tower.frobenius(c, 1);
    Ok(z.norm(tower).sub(tower, &z.scale(tower, cq).trace(tower)))
}

/// `N((X + b)(Y + b)) - Tr(c^{q²} (X + b)(X + b^q)(Y + b)(Y + b^q))` for `n = 3`.
pub fn build_f3(tower: &FieldTower, b: Element, c: Element) -> Result<BivarPoly> {
    let kernel = build_f3_kernel(tower, b, c)?;
    Ok(shifted(tower, b).norm(tower).sub(tower, &kernel))
}

/// `Tr(c^{q²} (X + b)(X + b^q)(Y + b)(Y + b^q))` for `n = 3`.
pub fn build_f3_kernel(tower: &FieldTower, b: Element, c: Element) -> Result<BivarPoly> {
    require_n(tower, 3)?;
    check_bc(tower, b, c)?;
    let cq2 = tower.frobenius(c, 2);
    Ok(shifted_quartic(tower, b).scale(tower, cq2).trace(tower))
}

/// Which auxiliary polynomial to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    F2,
    F3,
    F3Kernel,
}

impl std::str::FromStr for CurveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f2" => Ok(CurveKind::F2),
            "f3" => Ok(CurveKind::F3),
            "f3kernel" => Ok(CurveKind::F3Kernel),
            _ => Err(Error::Parse(format!("unknown curve {s:?}; expected f2, f3 or f3kernel"))),
        }
    }
}

pub fn build_curve(tower: &FieldTower, kind: CurveKind, b: Element, c: Element) -> Result<BivarPoly> {
    match kind {
        CurveKind::F2 => build_f2(tower, b, c),
        CurveKind::F3 => build_f3(tower, b, c),
        CurveKind::F3Kernel => build_f3_kernel(tower, b, c),
    }
}

/// Coefficients `(β, γ, δ)` of a factor `g = XY + βX + γY + δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearFactor {
    pub beta: Element,
    pub gamma: Element,
    pub delta: Element,
}

impl BilinearFactor {
    pub fn poly(&self) -> BivarPoly {
        BivarPoly::bilinear(self.beta, self.gamma, self.delta)
    }
}

/// Coefficients of `N(Y + a)` as a univariate polynomial, low to high.
fn norm_linear(tower: &FieldTower, a: Element) -> Vec<Element> {
    let mut acc = vec![Element::ONE];
    for i in 0..tower.n() {
        let r = tower.frobenius(a, i);
        let mut next = vec![Element::ZERO; acc.len() + 1];
        for (k, &c) in acc.iter().enumerate() {
            next[k + 1] = tower.add(next[k + 1], c);
            next[k] = tower.add(next[k], tower.mul(c, r));
        }
        acc = next;
    }
    acc
}

/// Searches `g = XY + βX + γY + δ` over `F_{q^n}³` with
/// `Π_{i<n} σ_q^i(g) = f`, returning the first hit in `(β, γ, δ)` encoding
/// order.
///
/// Candidates are pruned before the full product check: the `X^n` row of
/// `f` must equal `N(Y + β)`, its `Y^n` column must equal `N(X + γ)`, and
/// its constant term must equal `N(δ)`.
pub fn conjugate_factor_search(
    tower: &FieldTower,
    f: &BivarPoly,
    budget: u64,
) -> Result<Option<BilinearFactor>> {
    let n = tower.n() as usize;
    if !(2..=3).contains(&n) {
        return Err(Error::WrongDegree(format!("factor search needs n ∈ {{2, 3}}, got {n}")));
    }
    if f.deg_x() != Some(n) || f.deg_y() != Some(n) {
        return Err(Error::WrongDegree(format!(
            "expected bidegree ({n}, {n}), got ({:?}, {:?})",
            f.deg_x(),
            f.deg_y()
        )));
    }
    let space = (tower.size() as u128).pow(3);
    if space > budget as u128 {
        return Err(Error::SizeBudgetExceeded { size: space, budget });
    }
    let row: Vec<Element> = (0..=n).map(|j| f.coeff(n, j)).collect();
    let col: Vec<Element> = (0..=n).map(|i| f.coeff(i, n)).collect();
    let betas: Vec<Element> = tower.elements().filter(|&a| norm_linear(tower, a) == row).collect();
    let gammas: Vec<Element> = tower.elements().filter(|&a| norm_linear(tower, a) == col).collect();
    if betas.is_empty() || gammas.is_empty() {
        return Ok(None);
    }
    let deltas: Vec<Element> = tower
        .elements()
        .filter(|&d| tower.norm(d) == f.coeff(0, 0))
        .collect();
    for &beta in &betas {
        for &gamma in &gammas {
            for &delta in &deltas {
                let g = BilinearFactor { beta, gamma, delta };
                if g.poly().norm(tower) == *f {
                    return Ok(Some(g));
                }
            }
        }
    }
    Ok(None)
}

/// `#{(x0, y0) ∈ F_q² : f(x0, y0) = 0, x0 ≠ y0}`.
pub fn count_offdiag_points(tower: &FieldTower, f: &BivarPoly) -> u64 {
    let mut count = 0;
    for x in tower.base_elements() {
        for y in tower.base_elements() {
            if x != y && f.eval(tower, x, y).is_zero() {
                count += 1;
            }
        }
    }
    count
}

fn weil_coeffs(d: u32) -> Result<(u128, u128)> {
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let d = d as u128;
    Ok(((d - 1) * (d - 2), 2 * d - 1))
}

/// Whether `q - (d-1)(d-2)√q - 2d + 1 > 0`, decided in integers.
pub fn weil_holds(q: u64, d: u32) -> Result<bool> {
    let (a, k) = weil_coeffs(d)?;
    let q = q as u128;
    // q - k > a√q  ⟺  q > k ∧ (q - k)² > a² q
    Ok(q > k && (q - k) * (q - k) > a * a * q)
}

/// Positive root `s*` of `s² - (d-1)(d-2)s - (2d-1)`; the bound holds iff
/// `√q > s*`.
pub fn weil_threshold(d: u32) -> Result<f64> {
    let (a, k) = weil_coeffs(d)?;
    let (a, k) = (a as f64, k as f64);
    Ok((a + (a * a + 4.0 * k).sqrt()) / 2.0)
}

/// Smallest prime power `q` satisfying [`weil_holds`].
pub fn weil_min_prime_power(d: u32) -> Result<u64> {
    weil_coeffs(d)?;
    let mut q = 2;
    loop {
        if crate::gf::prime::prime_power(q).is_some() && weil_holds(q, d)? {
            return Ok(q);
        }
        q += 1;
    }
}
