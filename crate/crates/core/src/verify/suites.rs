use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{ExceptionRecord, SuiteReport};
use super::SuiteConfig;
use crate::bivariate::{build_f2, build_f3, conjugate_factor_search, BilinearFactor, BivarPoly};
use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower, TowerSpec};
use crate::linmaps::LinearizedPoly;
use crate::ratfunc::{
    classify_c, closed_form_c, closed_form_c_in_subfield, is_permutation, is_permutation_direct,
    is_permutation_reduced, kernel_criterion, lifted_c_set, pairwise_criterion, remark3_check,
    Method, RatFuncSpec,
};

/// Largest `q` for which the `n = 2` suite classifies every `c` by default.
pub const N2_FULL_CLASSIFY_MAX_Q: u64 = 9;
/// Random non-closed-form `c` values per `b` in sampled `n = 2` mode.
pub const N2_SAMPLED_OTHERS: usize = 100;
/// Direct-oracle spot checks per `b` in the `n = 2` suite.
pub const N2_SPOT_CHECKS: usize = 10;
/// Direct spot checks per field in the proposition suite.
pub const PROPOSITION_SPOT_CHECKS: usize = 20;
/// Exhaustive `(q, n)` pairs of the equivalence suite.
pub const EQUIV_EXHAUSTIVE: [(u64, u32); 6] = [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3)];
/// Field-size cap for the equivalence suite's random instances.
pub const EQUIV_RANDOM_MAX_SIZE: u64 = 1 << 12;

fn tower(q: u64, n: u32, cfg: &SuiteConfig) -> Result<FieldTower> {
    TowerSpec::for_q(q, n)?.build(cfg.budget)
}

fn rng_for(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_nonzero(rng: &mut ChaCha8Rng, t: &FieldTower) -> Element {
    Element(rng.random_range(1..t.size()))
}

fn elapsed(cfg: &SuiteConfig, start: Instant) -> Option<std::time::Duration> {
    cfg.timing.then(|| start.elapsed())
}

fn permutes_directly(t: &FieldTower, b: Element, c: Element, budget: u64) -> Result<bool> {
    let spec = RatFuncSpec::with_identity(t, c, b)?;
    Ok(is_permutation_direct(t, &spec, budget)?.permutes)
}

/// Runs `f` for every `b ∉ F_q` in parallel, keeping `b` order.
fn per_b<T, F>(t: &FieldTower, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Element) -> Result<T> + Sync + Send,
{
    let bs: Vec<Element> = t.non_base_elements().collect();
    bs.into_par_iter().map(f).collect()
}

/// Every `b ∉ F_q` admits exactly one permuting `c`, namely `(b^q - b)^{q+1}`.
pub fn theorem_n2(q: u64, full_classify: Option<bool>, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let t = tower(q, 2, cfg)?;
    let full = full_classify.unwrap_or(q <= N2_FULL_CLASSIFY_MAX_Q);
    let results = per_b(&t, |b| {
        let mut ex = Vec::new();
        let closed = closed_form_c(&t, b)?;
        let mut rng = rng_for(cfg, b.0 as u64);
        if full {
            let set = classify_c(&t, b, cfg.budget)?;
            if set != [closed] {
                let enc: Vec<u32> = set.iter().map(|c| c.0).collect();
                ex.push(ExceptionRecord::new(
                    &t,
                    b,
                    Some(closed),
                    format!("permuting c set {enc:?} differs from {{closed form}}"),
                ));
            }
        } else {
            if !pairwise_criterion(&t, b, closed).permutes {
                ex.push(ExceptionRecord::new(&t, b, Some(closed), "closed-form c fails pairwise"));
            }
            let mut checked = 0;
            while checked < N2_SAMPLED_OTHERS {
                let c = random_nonzero(&mut rng, &t);
                if c == closed {
                    continue;
                }
                checked += 1;
                if pairwise_criterion(&t, b, c).permutes {
                    ex.push(ExceptionRecord::new(&t, b, Some(c), "non-closed-form c permutes"));
                }
            }
        }
        if !permutes_directly(&t, b, closed, cfg.budget)? {
            ex.push(ExceptionRecord::new(&t, b, Some(closed), "direct oracle rejects closed form"));
        }
        for _ in 0..N2_SPOT_CHECKS {
            let c = random_nonzero(&mut rng, &t);
            if permutes_directly(&t, b, c, cfg.budget)? != (c == closed) {
                ex.push(ExceptionRecord::new(
                    &t,
                    b,
                    Some(c),
                    "direct oracle disagrees with membership in {closed form}",
                ));
            }
        }
        Ok(ex)
    })?;
    let total = results.len() as u64;
    let exceptions = merge_cases(results);
    Ok(SuiteReport::finish(
        "theorem-n2",
        Some((&t).into()),
        true,
        total,
        exceptions,
        Vec::new(),
        elapsed(cfg, start),
    ))
}

/// Collapses per-case exception lists; a case with any exception counts
/// once towards the failures.
fn merge_cases(results: Vec<Vec<ExceptionRecord>>) -> Vec<ExceptionRecord> {
    results
        .into_iter()
        .filter_map(|mut ex| match ex.len() {
            0 => None,
            1 => ex.pop(),
            _ => {
                let mut first = ex.remove(0);
                for e in ex {
                    first.detail.push_str("; ");
                    first.detail.push_str(&e.detail);
                }
                Some(first)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum N3Mode {
    Sufficiency,
    FullClassify,
}

impl std::str::FromStr for N3Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sufficiency" => Ok(N3Mode::Sufficiency),
            "full-classify" => Ok(N3Mode::FullClassify),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// `c = -(b^q - b)^{q²+1}` permutes for every `b`; in full-classify mode any
/// other permuting `c` is recorded as an observation.
pub fn theorem_n3(q: u64, mode: N3Mode, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let t = tower(q, 3, cfg)?;
    let results = per_b(&t, |b| {
        let closed = closed_form_c(&t, b)?;
        let direct = permutes_directly(&t, b, closed, cfg.budget)?;
        let reduced = is_permutation_reduced(&t, b, closed).permutes;
        let pairwise = pairwise_criterion(&t, b, closed).permutes;
        let mut ex = Vec::new();
        if !(direct && reduced && pairwise) {
            ex.push(ExceptionRecord::new(
                &t,
                b,
                Some(closed),
                format!("closed form: direct={direct} reduced={reduced} pairwise={pairwise}"),
            ));
        }
        let mut obs = Vec::new();
        if mode == N3Mode::FullClassify {
            for c in classify_c(&t, b, cfg.budget)? {
                if c != closed {
                    obs.push(ExceptionRecord::new(&t, b, Some(c), "additional permuting c"));
                }
            }
        }
        Ok((ex, obs))
    });
    let (exs, obs): (Vec<_>, Vec<_>) = results?.into_iter().unzip();
    let total = exs.len() as u64;
    let name = match mode {
        N3Mode::Sufficiency => "theorem-n3",
        N3Mode::FullClassify => "theorem-n3-full",
    };
    Ok(SuiteReport::finish(
        name,
        Some((&t).into()),
        true,
        total,
        merge_cases(exs),
        obs.into_iter().flatten().collect(),
        elapsed(cfg, start),
    ))
}

/// With `L = x^q - x`: every `(b, c)` has a pair `x0 ≠ y0` in `F_q` with
/// `Tr(c/((x0+b)(y0+b))) = 0`, so `L(x) + c/(Tr(x)+b)` never permutes.
/// Assertive only for `n = 2, q > 3`.
pub fn proposition(q: u64, n: u32, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDegree {
            expected: "2 or 3",
            got: n,
        });
    }
    let start = Instant::now();
    let t = tower(q, n, cfg)?;
    let assertive = n == 2 && q > 3;
    let l = LinearizedPoly::frobenius_minus_identity(&t);
    let results = per_b(&t, |b| {
        let mut ex = Vec::new();
        for c in t.elements().skip(1) {
            if kernel_criterion(&t, b, c).is_none() {
                let spec = RatFuncSpec::new(&t, l.clone(), c, b)?;
                let direct = is_permutation_direct(&t, &spec, cfg.budget)?.permutes;
                ex.push(ExceptionRecord::new(
                    &t,
                    b,
                    Some(c),
                    format!("no trace-zero pair; full map permutes: {direct}"),
                ));
            }
        }
        Ok(ex)
    })?;
    let cases = (t.size() - t.q()) as u64 * (t.size() - 1) as u64;
    let mut exceptions: Vec<ExceptionRecord> = results.into_iter().flatten().collect();

    // spot checks: whenever the kernel criterion fires, the direct test must fail
    let mut rng = rng_for(cfg, 0x5052_4f50 ^ q ^ ((n as u64) << 32));
    for _ in 0..PROPOSITION_SPOT_CHECKS {
        let b = Element(rng.random_range(t.q()..t.size()));
        let c = random_nonzero(&mut rng, &t);
        let spec = RatFuncSpec::new(&t, l.clone(), c, b)?;
        let direct = is_permutation_direct(&t, &spec, cfg.budget)?.permutes;
        let routed = is_permutation(&t, &spec, Method::Pairwise, cfg.budget)?.permutes;
        let fires = kernel_criterion(&t, b, c).is_some();
        if (fires && direct) || routed != direct {
            exceptions.push(ExceptionRecord::new(
                &t,
                b,
                Some(c),
                format!("spot check: kernel pair={fires} direct={direct} routed={routed}"),
            ));
        }
    }
    Ok(SuiteReport::finish(
        &format!("proposition-n{n}"),
        Some((&t).into()),
        assertive,
        cases,
        exceptions,
        Vec::new(),
        elapsed(cfg, start),
    ))
}

fn equivalence_exceptions(t: &FieldTower, b: Element, c: Element, budget: u64) -> Result<Option<ExceptionRecord>> {
    let direct = permutes_directly(t, b, c, budget)?;
    let reduced = is_permutation_reduced(t, b, c).permutes;
    let pairwise = pairwise_criterion(t, b, c).permutes;
    Ok((direct != reduced || reduced != pairwise).then(|| {
        ExceptionRecord::new(
            t,
            b,
            Some(c),
            format!("direct={direct} reduced={reduced} pairwise={pairwise}"),
        )
        .in_field(t)
    }))
}

/// `(q, n)` pairs with `n ≥ 2`, `q^n ≤ max_size`, not in the exhaustive list.
pub fn equiv_random_fields(max_size: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in crate::gf::prime::prime_powers_between(2, max_size) {
        let mut n = 2u32;
        while q.checked_pow(n).is_some_and(|s| s <= max_size) {
            if !EQUIV_EXHAUSTIVE.contains(&(q, n)) {
                out.push((q, n));
            }
            n += 1;
        }
    }
    out
}

/// Direct, reduced and pairwise verdicts agree: exhaustively on small
/// fields, then on `samples` seeded random instances with `q^n ≤ 2^12`.
pub fn lemma_equiv(samples: usize, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut cases = 0u64;
    let mut exceptions = Vec::new();
    for &(q, n) in &EQUIV_EXHAUSTIVE {
        let t = tower(q, n, cfg)?;
        let results = per_b(&t, |b| {
            let mut ex = Vec::new();
            for c in t.elements().skip(1) {
                ex.extend(equivalence_exceptions(&t, b, c, cfg.budget)?);
            }
            Ok(ex)
        })?;
        cases += (t.size() - t.q()) as u64 * (t.size() - 1) as u64;
        exceptions.extend(results.into_iter().flatten());
    }

    let fields = equiv_random_fields(EQUIV_RANDOM_MAX_SIZE.min(cfg.budget));
    let mut rng = rng_for(cfg, 0x4551_5549);
    let picks: Vec<(usize, u64)> = (0..samples)
        .map(|_| (rng.random_range(0..fields.len()), rng.random()))
        .collect();
    let mut towers: BTreeMap<usize, FieldTower> = BTreeMap::new();
    for &(i, _) in &picks {
        if let std::collections::btree_map::Entry::Vacant(e) = towers.entry(i) {
            let (q, n) = fields[i];
            e.insert(tower(q, n, cfg)?);
        }
    }
    let random: Vec<Option<ExceptionRecord>> = picks
        .into_par_iter()
        .map(|(i, seed)| {
            let t = &towers[&i];
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let b = Element(r.random_range(t.q()..t.size()));
            let c = random_nonzero(&mut r, t);
            equivalence_exceptions(t, b, c, cfg.budget)
        })
        .collect::<Result<_>>()?;
    cases += random.len() as u64;
    exceptions.extend(random.into_iter().flatten());

    Ok(SuiteReport::finish(
        "lemma-equiv",
        None,
        true,
        cases,
        exceptions,
        Vec::new(),
        elapsed(cfg, start),
    ))
}

/// `(1, b^q + b, b^{q+1})` is a basis of `F_{q³}/F_q` for every `b ∉ F_q`;
/// the conjugate determinant equals `N(b)·Tr(b^{q-1} - b^{q²-1})`.
pub fn lemma_basis(q: u64, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let t = tower(q, 3, cfg)?;
    let results = per_b(&t, |b| {
        let det = t.basis_det_b(b)?;
        let closed = t.basis_det_closed_form(b);
        let coord = t.basis_coordinate_det(b)?;
        let mut problems = Vec::new();
        if det.is_zero() {
            problems.push("determinant vanishes".to_string());
        }
        if !t.is_in_base(det) {
            problems.push("determinant outside F_q".to_string());
        }
        if det != closed {
            problems.push(format!("determinant {} != N(b)Tr(b^(q-1)-b^(q^2-1)) = {}", det.0, closed.0));
        }
        if coord.is_zero() {
            problems.push("coordinate determinant vanishes".to_string());
        }
        Ok(if problems.is_empty() {
            Vec::new()
        } else {
            vec![ExceptionRecord::new(&t, b, None, problems.join("; "))]
        })
    })?;
    let total = results.len() as u64;
    Ok(SuiteReport::finish(
        "lemma-basis",
        Some((&t).into()),
        true,
        total,
        results.into_iter().flatten().collect(),
        Vec::new(),
        elapsed(cfg, start),
    ))
}

/// The factor whose conjugate product is `f` at the closed-form `c`.
pub fn expected_factor(t: &FieldTower, b: Element) -> Result<BilinearFactor> {
    let c = closed_form_c(t, b)?;
    Ok(match t.n() {
        2 => BilinearFactor {
            beta: b,
            gamma: t.frobenius(b, 1),
            delta: t.sub(t.trace(t.mul(b, b)), t.norm(b)),
        },
        _ => BilinearFactor {
            beta: b,
            gamma: b,
            delta: t.sub(t.mul(b, b), c),
        },
    })
}

/// Exact conjugate factorisations at the closed-form `c`; for `n = 2` the
/// factor search must also come up empty for every other `c`.
pub fn factorizations(q: u64, n: u32, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDegree {
            expected: "2 or 3",
            got: n,
        });
    }
    let start = Instant::now();
    let t = tower(q, n, cfg)?;
    let build = |b, c| if n == 2 { build_f2(&t, b, c) } else { build_f3(&t, b, c) };
    let results = per_b(&t, |b| {
        let mut ex = Vec::new();
        let closed = closed_form_c(&t, b)?;
        let f = build(b, closed)?;
        let g = expected_factor(&t, b)?;
        if g.poly().norm(&t) != f {
            ex.push(ExceptionRecord::new(&t, b, Some(closed), "named factorisation does not reproduce f"));
        }
        match conjugate_factor_search(&t, &f, cfg.budget)? {
            Some(found) if found.poly().norm(&t) == f => {}
            Some(_) => ex.push(ExceptionRecord::new(&t, b, Some(closed), "search returned a non-factor")),
            None => ex.push(ExceptionRecord::new(&t, b, Some(closed), "search found no factor")),
        }
        if n == 2 {
            for c in t.elements().skip(1).filter(|&c| c != closed) {
                if let Some(g) = conjugate_factor_search(&t, &build(b, c)?, cfg.budget)? {
                    ex.push(ExceptionRecord::new(
                        &t,
                        b,
                        Some(c),
                        format!("unexpected factor {}", g.poly().render(&t)),
                    ));
                }
            }
        }
        Ok(ex)
    })?;
    let total = results.len() as u64;
    Ok(SuiteReport::finish(
        &format!("factorizations-n{n}"),
        Some((&t).into()),
        true,
        total,
        merge_cases(results),
        Vec::new(),
        elapsed(cfg, start),
    ))
}

/// `Tr(c/(u + bv + b²)) ≠ 1` on all of `F_q²` at the closed-form `c`, `q` odd.
pub fn remark3(q: u64, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let t = tower(q, 3, cfg)?;
    if t.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let results = per_b(&t, |b| {
        let c = closed_form_c(&t, b)?;
        let v = remark3_check(&t, b, c)?;
        Ok(v.witness
            .map(|(u, w)| {
                ExceptionRecord::new(&t, b, Some(c), format!("trace 1 at (u, v) = ({}, {})", u.0, w.0))
            })
            .into_iter()
            .collect::<Vec<_>>())
    })?;
    let total = results.len() as u64;
    Ok(SuiteReport::finish(
        "remark3",
        Some((&t).into()),
        true,
        total,
        results.into_iter().flatten().collect(),
        Vec::new(),
        elapsed(cfg, start),
    ))
}

/// Every `c` with `Tr_{n,d}(c)` equal to the degree-`d` closed form, for
/// `b ∈ F_{q^d} \ F_q` and each `d ∈ {2, 3}` dividing `n`, permutes `F_{q^n}`.
pub fn corollary(q: u64, n: u32, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let degrees: Vec<u32> = [2, 3].into_iter().filter(|d| n.is_multiple_of(*d)).collect();
    if degrees.is_empty() {
        return Err(Error::UnsupportedDegree {
            expected: "a multiple of 2 or 3",
            got: n,
        });
    }
    let start = Instant::now();
    let t = tower(q, n, cfg)?;
    let mut cases = 0u64;
    let mut exceptions = Vec::new();
    for d in degrees {
        let bs: Vec<Element> = t
            .subfield_elements(d)?
            .into_iter()
            .filter(|&b| !t.is_in_base(b))
            .collect();
        let results: Vec<(u64, Vec<ExceptionRecord>)> = bs
            .into_par_iter()
            .map(|b| {
                let target = closed_form_c_in_subfield(&t, b, d)?;
                let cs = lifted_c_set(&t, b, d)?;
                let mut ex = Vec::new();
                for &c in &cs {
                    if !permutes_directly(&t, b, c, cfg.budget)? {
                        ex.push(ExceptionRecord::new(
                            &t,
                            b,
                            Some(c),
                            format!("Tr_{{n,{d}}}(c) = {} but map does not permute", target.0),
                        ));
                    }
                }
                Ok((cs.len() as u64, ex))
            })
            .collect::<Result<_>>()?;
        for (count, ex) in results {
            cases += count;
            exceptions.extend(ex);
        }
    }
    Ok(SuiteReport::finish(
        "corollary",
        Some((&t).into()),
        true,
        cases,
        exceptions,
        Vec::new(),
        elapsed(cfg, start),
    ))
}

/// Builds `f` for `(b, c)` at the tower's degree.
pub fn curve_for(t: &FieldTower, b: Element, c: Element) -> Result<BivarPoly> {
    match t.n() {
        2 => build_f2(t, b, c),
        _ => build_f3(t, b, c),
    }
}
