//! The tower `F_p ⊂ F_q = F_p[u]/(g) ⊂ F_{q^n} = F_q[v]/(h)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::{self, Matrix};
use super::poly;
use super::prime::is_prime;
use super::table::{decode_digits, encode_digits, GfTable};
use crate::error::{Error, Result};

/// Default cap on `q^n` for anything that enumerates the whole field.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// A field element as its canonical integer encoding.
///
/// The encoding of an element of `F_q` is the same whether it is viewed in
/// `F_q` or embedded in `F_{q^n}` (likewise for `F_p ⊂ F_q`), so one value
/// type serves every level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// `F_p`
    Base,
    /// `F_q`
    Mid,
    /// `F_{q^n}`
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Parsed form of a `p^m:n` field string plus optional modulus overrides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub g: Option<Vec<u32>>,
    pub h: Option<Vec<u32>>,
}

impl TowerSpec {
    pub fn new(p: u32, m: u32, n: u32) -> Self {
        TowerSpec {
            p,
            m,
            n,
            g: None,
            h: None,
        }
    }

    /// Tower for `F_{q^n}` with `q` given as a prime power.
    pub fn for_q(q: u64, n: u32) -> Result<Self> {
        let (p, m) = super::prime::prime_power(q)
            .ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?;
        Ok(TowerSpec::new(p as u32, m, n))
    }

    pub fn build(&self, budget: u64) -> Result<FieldTower> {
        FieldTower::with_moduli(
            self.p,
            self.m,
            self.n,
            self.g.as_deref(),
            self.h.as_deref(),
            budget,
        )
    }
}

impl FromStr for TowerSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("field spec {s:?} is not of the form p^m:n"));
        let (pm, n) = s.split_once(':').ok_or_else(bad)?;
        let (p, m) = pm.split_once('^').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        Ok(TowerSpec::new(num(p)?, num(m)?, num(n)?))
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:{}", self.p, self.m, self.n)
    }
}

/// Parses a comma-separated list of unsigned integers (`"1,0,1"`).
pub fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in list {s:?}")))
        })
        .collect()
}

/// Immutable once built; every operation is a pure function of its inputs.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    m: u32,
    n: u32,
    q: u32,
    size: u32,
    g: Vec<u32>,
    h: Vec<u32>,
    prime: GfTable,
    base: GfTable,
    top: GfTable,
    /// Column `j` holds the `F_q`-coordinates of `(v^j)^q`.
    frob: Matrix,
    /// `Tr(v^j)` for the power basis.
    trace_of_basis: Vec<u32>,
}

impl FieldTower {
    /// Tower with canonical moduli.
    pub fn new(p: u32, m: u32, n: u32) -> Result<Self> {
        Self::with_moduli(p, m, n, None, None, DEFAULT_BUDGET)
    }

    pub fn with_budget(p: u32, m: u32, n: u32, budget: u64) -> Result<Self> {
        Self::with_moduli(p, m, n, None, None, budget)
    }

    pub fn with_moduli(
        p: u32,
        m: u32,
        n: u32,
        g: Option<&[u32]>,
        h: Option<&[u32]>,
        budget: u64,
    ) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 || n == 0 {
            return Err(Error::DegreeZero);
        }
        let total = (p as u128).checked_pow(m * n).unwrap_or(u128::MAX);
        if total > budget as u128 || total > u32::MAX as u128 {
            return Err(Error::SizeBudgetExceeded {
                size: total,
                budget,
            });
        }
        let prime = GfTable::prime(p);
        let g = match g {
            Some(g) => checked_modulus(&prime, g, m)?,
            None => poly::canonical_irreducible(&prime, m as usize),
        };
        let base = GfTable::extension(&prime, &g);
        let h = match h {
            Some(h) => checked_modulus(&base, h, n)?,
            None => poly::canonical_irreducible(&base, n as usize),
        };
        let top = GfTable::extension(&base, &h);
        let q = base.size();
        let mut tower = FieldTower {
            p,
            m,
            n,
            q,
            size: top.size(),
            g,
            h,
            prime,
            base,
            top,
            frob: Vec::new(),
            trace_of_basis: Vec::new(),
        };
        let nn = n as usize;
        let frob_cols: Vec<Vec<u32>> = (0..nn)
            .map(|j| {
                let vj = tower.from_coords(&unit(nn, j));
                tower.coords(tower.pow(vj, q as u64))
            })
            .collect();
        tower.frob = matrix::transpose(&frob_cols);
        tower.trace_of_basis = (0..nn)
            .map(|j| {
                let vj = tower.from_coords(&unit(nn, j));
                tower.trace_by_frobenius(vj).0
            })
            .collect();
        Ok(tower)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    /// Size of the middle field `F_q`.
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Size of the top field `F_{q^n}`.
    pub fn size(&self) -> u32 {
        self.size
    }
    /// Modulus of `F_q` over `F_p`, monic, low to high.
    pub fn g(&self) -> &[u32] {
        &self.g
    }
    /// Modulus of `F_{q^n}` over `F_q`, monic, low to high.
    pub fn h(&self) -> &[u32] {
        &self.h
    }
    pub fn frobenius_matrix(&self) -> &Matrix {
        &self.frob
    }
    pub fn spec(&self) -> TowerSpec {
        TowerSpec {
            p: self.p,
            m: self.m,
            n: self.n,
            g: Some(self.g.clone()),
            h: Some(self.h.clone()),
        }
    }

    pub fn table(&self, level: Level) -> &GfTable {
        match level {
            Level::Base => &self.prime,
            Level::Mid => &self.base,
            Level::Top => &self.top,
        }
    }

    /// Arithmetic in `F_q` on raw encodings.
    pub fn base_field(&self) -> &GfTable {
        &self.base
    }

    pub fn level_size(&self, level: Level) -> u32 {
        self.table(level).size()
    }

    pub fn level_degree(&self, level: Level) -> u32 {
        match level {
            Level::Base => 1,
            Level::Mid => self.m,
            Level::Top => self.n,
        }
    }

    // ---- element construction -------------------------------------------------

    pub fn decode(&self, k: u64, level: Level) -> Result<Element> {
        let size = self.level_size(level) as u64;
        if k >= size {
            return Err(Error::OutOfRange { value: k, size });
        }
        Ok(Element(k as u32))
    }

    pub fn encode(&self, a: Element) -> u64 {
        a.0 as u64
    }

    /// Top-level element from an encoding, panicking when out of range.
    pub fn elem(&self, k: u32) -> Element {
        assert!(k < self.size, "encoding {k} out of range for F_{}", self.size);
        Element(k)
    }

    /// The generator `v` of `F_{q^n}` over `F_q` (or `u` when `n = 1`).
    pub fn gen(&self) -> Element {
        if self.n > 1 {
            Element(self.q)
        } else if self.m > 1 {
            Element(self.p)
        } else {
            Element(poly::rem(&self.prime, &[0, 1], &self.g).first().copied().unwrap_or(0))
        }
    }

    /// Coefficients of `a` over the next-lower level, low to high.
    pub fn coeffs(&self, a: Element, level: Level) -> Result<Vec<Element>> {
        self.check_level(a, level)?;
        let v = match level {
            Level::Base => vec![a.0],
            Level::Mid => decode_digits(a.0, self.p, self.m as usize),
            Level::Top => decode_digits(a.0, self.q, self.n as usize),
        };
        Ok(v.into_iter().map(Element).collect())
    }

    /// `F_q`-coordinates of a top-level element in the power basis of `v`.
    pub fn coords(&self, a: Element) -> Vec<u32> {
        decode_digits(a.0, self.q, self.n as usize)
    }

    pub fn from_coords(&self, c: &[u32]) -> Element {
        Element(encode_digits(c, self.q))
    }

    fn check_level(&self, a: Element, level: Level) -> Result<()> {
        if a.0 >= self.level_size(level) {
            Err(Error::LevelMismatch)
        } else {
            Ok(())
        }
    }

    /// Every element of the top field, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.size).map(Element)
    }

    /// Elements of `F_q`, in encoding order.
    pub fn base_elements(&self) -> impl Iterator<Item = Element> {
        (0..self.q).map(Element)
    }

    /// Elements outside `F_q` (the admissible `b` values), in encoding order.
    pub fn non_base_elements(&self) -> impl Iterator<Item = Element> {
        (self.q..self.size).map(Element)
    }

    pub fn is_in_base(&self, a: Element) -> bool {
        a.0 < self.q
    }

    // ---- arithmetic -------------------------------------------------------------

    pub fn arith(&self, a: Element, b: Element, op: ArithOp, level: Level) -> Result<Element> {
        self.check_level(a, level)?;
        self.check_level(b, level)?;
        let t = self.table(level);
        Ok(Element(match op {
            ArithOp::Add => t.add(a.0, b.0),
            ArithOp::Sub => t.sub(a.0, b.0),
            ArithOp::Mul => t.mul(a.0, b.0),
        }))
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        Element(self.top.add(a.0, b.0))
    }
    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        Element(self.top.sub(a.0, b.0))
    }
    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        Element(self.top.neg(a.0))
    }
    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.top.mul(a.0, b.0))
    }
    pub fn invert(&self, a: Element) -> Result<Element> {
        self.top.inv(a.0).map(Element).ok_or(Error::DivisionByZero)
    }
    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.mul(a, self.invert(b)?))
    }
    pub fn pow(&self, a: Element, e: u64) -> Element {
        Element(self.top.pow(a.0, e))
    }
    /// `k · a` for an integer `k`.
    pub fn scalar(&self, a: Element, k: u64) -> Element {
        Element(self.top.scalar(a.0, k))
    }

    // ---- Galois structure -------------------------------------------------------

    /// `a^{q^i}`, computed with the precomputed Frobenius matrix.
    pub fn frobenius(&self, a: Element, i: u32) -> Element {
        let mut c = self.coords(a);
        for _ in 0..i % self.n {
            c = matrix::mul_vec(&self.base, &self.frob, &c);
        }
        self.from_coords(&c)
    }

    fn trace_by_frobenius(&self, a: Element) -> Element {
        (0..self.n).fold(Element::ZERO, |acc, i| self.add(acc, self.frobenius(a, i)))
    }

    /// Absolute trace `F_{q^n} → F_q`, as the linear form on coordinates.
    #[inline]
    pub fn trace(&self, a: Element) -> Element {
        let mut k = a.0;
        let mut acc = 0;
        for &t in &self.trace_of_basis {
            let c = k % self.q;
            k /= self.q;
            if c != 0 {
                acc = self.base.add(acc, self.base.mul(c, t));
            }
        }
        Element(acc)
    }

    /// Relative trace from the degree-`from` subfield to the degree-`to` subfield.
    pub fn trace_rel(&self, a: Element, from: u32, to: u32) -> Result<Element> {
        if from == 0 || to == 0 || !from.is_multiple_of(to) || !self.n.is_multiple_of(from) {
            return Err(Error::NonDivisorDegrees { from, to });
        }
        Ok((0..from / to).fold(Element::ZERO, |acc, i| {
            self.add(acc, self.frobenius(a, to * i))
        }))
    }

    /// Norm `F_{q^n} → F_q`.
    pub fn norm(&self, a: Element) -> Element {
        (0..self.n).fold(Element::ONE, |acc, i| self.mul(acc, self.frobenius(a, i)))
    }

    pub fn is_in_subfield(&self, a: Element, d: u32) -> Result<bool> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::NonDivisorDegrees { from: self.n, to: d });
        }
        Ok(self.frobenius(a, d) == a)
    }

    /// Elements of the degree-`d` subfield `F_{q^d}`, in encoding order.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<Element>> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::NonDivisorDegrees { from: self.n, to: d });
        }
        Ok(self.elements().filter(|&a| self.frobenius(a, d) == a).collect())
    }

    /// Dual basis with respect to the trace form: `Tr(α_i β_j) = δ_ij`.
    pub fn dual_basis(&self, basis: &[Element]) -> Result<Vec<Element>> {
        let n = self.n as usize;
        if basis.len() != n {
            return Err(Error::NotABasis);
        }
        // α_i = Σ_k x_ik v^k with X·M = I, M_kj = Tr(v^k β_j)
        let m: Matrix = (0..n)
            .map(|k| {
                let vk = self.from_coords(&unit(n, k));
                basis.iter().map(|&b| self.trace(self.mul(vk, b)).0).collect()
            })
            .collect();
        let inv = matrix::inverse(&self.base, &m).ok_or(Error::NotABasis)?;
        Ok(inv.iter().map(|row| self.from_coords(row)).collect())
    }

    /// Coordinate matrix (columns) of a list of top-level elements.
    pub fn coordinate_matrix(&self, elems: &[Element]) -> Matrix {
        let cols: Vec<Vec<u32>> = elems.iter().map(|&e| self.coords(e)).collect();
        matrix::transpose(&cols)
    }

    fn basis_det_guard(&self, b: Element) -> Result<()> {
        if self.n != 3 {
            return Err(Error::UnsupportedDegree {
                expected: "3",
                got: self.n,
            });
        }
        if b.is_zero() {
            return Err(Error::BZero);
        }
        if self.is_in_base(b) {
            return Err(Error::BInBaseField);
        }
        Ok(())
    }

    /// Determinant of the conjugate matrix `[σ^i(w_j)]` for
    /// `w = (1, b^q + b, b^{q+1})`; an element of `F_q`, nonzero for
    /// `b ∉ F_q`. Equals `N(b)·Tr(b^{q-1} - b^{q²-1})`.
    pub fn basis_det_b(&self, b: Element) -> Result<Element> {
        self.basis_det_guard(b)?;
        let w = self.lemma_basis(b);
        let m: Matrix = (0..3)
            .map(|i| w.iter().map(|&x| self.frobenius(x, i).0).collect())
            .collect();
        Ok(Element(matrix::determinant(&self.top, &m)))
    }

    /// Determinant over `F_q` of the coordinate vectors of `(1, b^q + b, b^{q+1})`.
    ///
    /// Differs from [`basis_det_b`](Self::basis_det_b) by the constant
    /// factor `det[σ^i(v^j)]` of the chosen power basis.
    pub fn basis_coordinate_det(&self, b: Element) -> Result<Element> {
        self.basis_det_guard(b)?;
        let m = self.coordinate_matrix(&self.lemma_basis(b));
        Ok(Element(matrix::determinant(&self.base, &m)))
    }

    /// `N(b)·Tr(b^{q-1} - b^{q²-1})`.
    pub fn basis_det_closed_form(&self, b: Element) -> Element {
        let q = self.q as u64;
        let inner = self.sub(self.pow(b, q - 1), self.pow(b, q * q - 1));
        self.mul(self.norm(b), self.trace(inner))
    }

    fn lemma_basis(&self, b: Element) -> [Element; 3] {
        let bq = self.frobenius(b, 1);
        [Element::ONE, self.add(bq, b), self.mul(bq, b)]
    }

    // ---- rendering --------------------------------------------------------------

    /// Human-readable polynomial form: `v` is the top generator, `u` the
    /// generator of `F_q` over `F_p`.
    pub fn render(&self, a: Element) -> String {
        let render_mid = |c: u32| -> String {
            if self.m == 1 {
                return c.to_string();
            }
            render_poly(&decode_digits(c, self.p, self.m as usize), "u", &|d| d.to_string())
        };
        if self.n == 1 {
            return render_mid(a.0);
        }
        render_poly(&self.coords(a), "v", &|c| {
            let s = render_mid(c);
            if self.m > 1 && s.contains('+') {
                format!("({s})")
            } else {
                s
            }
        })
    }
}

fn render_poly(coeffs: &[u32], var: &str, coef: &dyn Fn(u32) -> String) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            match (c, i) {
                (_, 0) => coef(c),
                (1, _) => mono,
                _ => format!("{}*{mono}", coef(c)),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn unit(n: usize, j: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[j] = 1;
    v
}

fn checked_modulus(field: &GfTable, m: &[u32], degree: u32) -> Result<Vec<u32>> {
    let ok = m.len() == degree as usize + 1
        && m.last() == Some(&1)
        && m.iter().all(|&c| c < field.size())
        && poly::is_irreducible(field, m);
    if ok {
        Ok(m.to_vec())
    } else {
        Err(Error::BadModulus(m.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u32, m: u32, n: u32) -> FieldTower {
        FieldTower::new(p, m, n).unwrap()
    }

    #[test]
    fn make_tower_examples() {
        let f4 = t(2, 1, 2);
        assert_eq!(f4.h(), [1, 1, 1]);
        assert_eq!(f4.g(), [0, 1]);
        assert_eq!(t(3, 1, 2).h(), [1, 0, 1]);
        assert_eq!(FieldTower::new(4, 1, 2).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldTower::new(2, 0, 2).unwrap_err(), Error::DegreeZero);
        assert!(matches!(
            FieldTower::with_budget(2, 1, 13, 4096),
            Err(Error::SizeBudgetExceeded { size: 8192, .. })
        ));
    }

    #[test]
    fn modulus_override_is_checked() {
        assert!(FieldTower::with_moduli(3, 1, 2, None, Some(&[2, 0, 1]), DEFAULT_BUDGET).is_err());
        let f9 = FieldTower::with_moduli(3, 1, 2, None, Some(&[2, 2, 1]), DEFAULT_BUDGET).unwrap();
        assert_eq!(f9.h(), [2, 2, 1]);
    }

    #[test]
    fn arith_examples() {
        // F_4 both as F_2[u]/(u²+u+1) and as a degree-2 top level
        let f4a = t(2, 2, 1);
        let u = Element(2);
        assert_eq!(f4a.arith(u, u, ArithOp::Mul, Level::Mid).unwrap(), Element(3));
        let f4b = t(2, 1, 2);
        assert_eq!(f4b.mul(u, u), Element(3));
        let f9 = t(3, 1, 2);
        let tt = Element(3);
        assert_eq!(f9.mul(tt, tt), Element(2));
        assert_eq!(f9.add(tt, Element::ZERO), tt);
        assert_eq!(
            f9.arith(tt, Element(1), ArithOp::Add, Level::Mid),
            Err(Error::LevelMismatch)
        );
    }

    #[test]
    fn invert_examples() {
        let f9 = t(3, 1, 2);
        assert_eq!(f9.invert(Element::ONE).unwrap(), Element::ONE);
        // t + 2 -> t + 1
        assert_eq!(f9.invert(Element(5)).unwrap(), Element(4));
        let f4 = t(2, 1, 2);
        assert_eq!(f4.invert(Element(2)).unwrap(), Element(3));
        assert_eq!(f4.invert(Element::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_examples() {
        let f4 = t(2, 1, 2);
        assert_eq!(f4.frobenius(Element(2), 1), Element(3));
        let f9 = t(3, 1, 2);
        assert_eq!(f9.frobenius(Element(3), 1), Element(6));
        for a in 0..3 {
            assert_eq!(f9.frobenius(Element(a), 1), Element(a));
        }
    }

    #[test]
    fn trace_and_norm_examples() {
        let f9 = t(3, 1, 2);
        let f4 = t(2, 1, 2);
        assert_eq!(f9.trace_rel(Element(3), 2, 1).unwrap(), Element::ZERO);
        assert_eq!(f4.trace_rel(Element(2), 2, 1).unwrap(), Element::ONE);
        assert_eq!(f9.trace(Element(2)), Element(1)); // 2·2 = 4 = 1
        assert_eq!(
            f9.trace_rel(Element(3), 2, 3),
            Err(Error::NonDivisorDegrees { from: 2, to: 3 })
        );
        assert_eq!(f9.norm(Element::ZERO), Element::ZERO);
        assert_eq!(f4.norm(Element(2)), Element::ONE);
        assert_eq!(f9.norm(Element(3)), Element::ONE);
    }

    #[test]
    fn encode_decode_examples() {
        let f9 = t(3, 1, 2);
        assert_eq!(f9.coeffs(Element(3), Level::Top).unwrap(), [Element(0), Element(1)]);
        let f8 = t(2, 1, 3);
        assert_eq!(f8.from_coords(&[1, 0, 1]), Element(5));
        assert_eq!(f8.decode(0, Level::Top).unwrap(), Element::ZERO);
        assert_eq!(
            f8.decode(8, Level::Top),
            Err(Error::OutOfRange { value: 8, size: 8 })
        );
        assert_eq!(f8.decode(1, Level::Base).unwrap(), Element(1));
    }

    #[test]
    fn subfield_examples() {
        let f9 = t(3, 1, 2);
        assert!(f9.is_in_subfield(Element::ONE, 1).unwrap());
        assert!(!f9.is_in_subfield(Element(3), 1).unwrap());
        let f16 = t(2, 1, 4);
        let sub = f16.subfield_elements(2).unwrap();
        assert_eq!(sub.len(), 4);
        assert!(sub.iter().all(|&a| f16.is_in_subfield(a, 2).unwrap()));
        assert!(f16.is_in_subfield(Element(3), 3).is_err());
    }

    #[test]
    fn dual_basis_examples() {
        let f4 = t(2, 1, 2);
        let dual = f4.dual_basis(&[Element(1), Element(2)]).unwrap();
        assert_eq!(dual, [Element(3), Element(1)]);
        assert_eq!(
            f4.dual_basis(&[Element(2), Element(2)]),
            Err(Error::NotABasis)
        );
    }

    #[test]
    fn basis_det_examples() {
        let f8 = t(2, 1, 3);
        let b = Element(2);
        assert_eq!(f8.basis_coordinate_det(b).unwrap(), Element::ONE);
        assert!(!f8.basis_det_b(b).unwrap().is_zero());
        assert_eq!(f8.basis_det_b(Element::ONE), Err(Error::BInBaseField));
        assert_eq!(f8.basis_det_b(Element::ZERO), Err(Error::BZero));
        assert!(matches!(
            t(3, 1, 2).basis_det_b(Element(3)),
            Err(Error::UnsupportedDegree { .. })
        ));
    }

    #[test]
    fn render_elements() {
        let f9 = t(3, 1, 2);
        assert_eq!(f9.render(Element(7)), "2*v + 1");
        assert_eq!(f9.render(Element(0)), "0");
        let f16 = t(2, 2, 2);
        // coords (u, u+1)
        assert_eq!(f16.render(f16.from_coords(&[2, 3])), "(u + 1)*v + u");
    }

    #[test]
    fn spec_parsing() {
        let s: TowerSpec = "3^1:2".parse().unwrap();
        assert_eq!(s, TowerSpec::new(3, 1, 2));
        assert_eq!(s.to_string(), "3^1:2");
        assert!("3:2".parse::<TowerSpec>().is_err());
        assert_eq!(TowerSpec::for_q(9, 3).unwrap(), TowerSpec::new(3, 2, 3));
        assert_eq!(parse_u32_list("1, 0,2").unwrap(), [1, 0, 2]);
    }
}
