//! Named verification suites. Each run produces a [`SuiteReport`] with one
//! case per `b` (or per instance) and a list of exceptions.

mod report;
mod suites;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use report::{ExceptionRecord, FieldSummary, SuiteReport, SuiteVerdict};
pub use suites::{
    corollary, curve_for, equiv_random_fields, expected_factor, factorizations, lemma_basis,
    lemma_equiv, proposition, remark3, theorem_n2, theorem_n3, N3Mode, EQUIV_EXHAUSTIVE,
    EQUIV_RANDOM_MAX_SIZE, N2_FULL_CLASSIFY_MAX_Q, N2_SAMPLED_OTHERS, N2_SPOT_CHECKS,
    PROPOSITION_SPOT_CHECKS,
};

use crate::error::{Error, Result};
use crate::gf::DEFAULT_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub budget: u64,
    /// Record wall-clock time in reports.
    pub timing: bool,
    /// Random instances drawn by the equivalence suite.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            budget: DEFAULT_BUDGET,
            timing: false,
            samples: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremN2,
    TheoremN3,
    Proposition,
    LemmaEquiv,
    LemmaBasis,
    Factorizations,
    Remark3,
    Corollary,
    All,
}

impl Suite {
    pub const NAMED: [Suite; 8] = [
        Suite::TheoremN2,
        Suite::TheoremN3,
        Suite::Proposition,
        Suite::LemmaEquiv,
        Suite::LemmaBasis,
        Suite::Factorizations,
        Suite::Remark3,
        Suite::Corollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremN2 => "theorem-n2",
            Suite::TheoremN3 => "theorem-n3",
            Suite::Proposition => "proposition",
            Suite::LemmaEquiv => "lemma-equiv",
            Suite::LemmaBasis => "lemma-basis",
            Suite::Factorizations => "factorizations",
            Suite::Remark3 => "remark3",
            Suite::Corollary => "corollary",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::NAMED
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// How exhaustively the degree-2 and degree-3 theorem suites explore `c`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Full classification where affordable, sampling or sufficiency otherwise.
    #[default]
    Auto,
    FullClassify,
    Sampled,
    Sufficiency,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Mode::Auto),
            "full-classify" => Ok(Mode::FullClassify),
            "sampled" => Ok(Mode::Sampled),
            "sufficiency" => Ok(Mode::Sufficiency),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// Default `(q, n)` runs of a suite, optionally restricted to one `n`.
pub fn default_runs(suite: Suite, mode: Mode, n: Option<u32>) -> Vec<(u64, u32)> {
    let with = |qs: &[u64], n: u32| qs.iter().map(|&q| (q, n)).collect::<Vec<_>>();
    let pick = |n2: Vec<(u64, u32)>, n3: Vec<(u64, u32)>| match n {
        Some(2) => n2,
        Some(3) => n3,
        _ => [n2, n3].concat(),
    };
    match suite {
        Suite::TheoremN2 => with(&[2, 3, 4, 5, 7, 8, 9, 11, 13], 2),
        Suite::TheoremN3 if mode == Mode::FullClassify => with(&[2, 3, 4], 3),
        Suite::TheoremN3 => with(&[2, 3, 4, 5, 7], 3),
        Suite::Proposition => pick(with(&[4, 5, 7, 8, 9, 11, 13], 2), with(&[2, 3, 4, 5, 7], 3)),
        Suite::LemmaEquiv => vec![(0, 0)],
        Suite::LemmaBasis => with(&[2, 3, 4, 5, 7, 8, 9], 3),
        Suite::Factorizations => pick(with(&[2, 3, 4, 5, 7, 8, 9], 2), with(&[2, 3, 4, 5], 3)),
        Suite::Remark3 => with(&[3, 5, 7, 9], 3),
        Suite::Corollary => match n {
            Some(n) => [(2, n), (3, n)].into_iter().filter(|&(q, n)| (q as u128).pow(n) <= 1 << 12).collect(),
            None => vec![(2, 4), (3, 4), (2, 6)],
        },
        Suite::All => Vec::new(),
    }
}

fn run_one(suite: Suite, q: u64, n: u32, mode: Mode, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match suite {
        Suite::TheoremN2 => theorem_n2(
            q,
            match mode {
                Mode::FullClassify => Some(true),
                Mode::Sampled => Some(false),
                _ => None,
            },
            cfg,
        ),
        Suite::TheoremN3 => theorem_n3(
            q,
            if mode == Mode::FullClassify {
                N3Mode::FullClassify
            } else {
                N3Mode::Sufficiency
            },
            cfg,
        ),
        Suite::Proposition => proposition(q, n, cfg),
        Suite::LemmaEquiv => lemma_equiv(cfg.samples, cfg),
        Suite::LemmaBasis => lemma_basis(q, cfg),
        Suite::Factorizations => factorizations(q, n, cfg),
        Suite::Remark3 => remark3(q, cfg),
        Suite::Corollary => corollary(q, n, cfg),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Runs a suite over the given `q` values (or its defaults). `n` selects the
/// extension degree for suites that support more than one.
pub fn run_suite(
    suite: Suite,
    qs: Option<&[u64]>,
    n: Option<u32>,
    mode: Mode,
    cfg: &SuiteConfig,
) -> Result<Vec<SuiteReport>> {
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in Suite::NAMED {
            out.extend(run_suite(s, qs, n, mode, cfg)?);
        }
        return Ok(out);
    }
    let runs = match qs {
        None => default_runs(suite, mode, n),
        Some(_) if suite == Suite::LemmaEquiv => vec![(0, 0)],
        Some(qs) => {
            let fixed = match suite {
                Suite::TheoremN2 => Some(2),
                Suite::TheoremN3 | Suite::LemmaBasis | Suite::Remark3 => Some(3),
                _ => None,
            };
            let ns: Vec<u32> = match (fixed, n) {
                (Some(f), Some(n)) if n != f => {
                    return Err(Error::UnsupportedDegree {
                        expected: if f == 2 { "2" } else { "3" },
                        got: n,
                    })
                }
                (Some(f), _) => vec![f],
                (None, Some(n)) => vec![n],
                (None, None) if suite == Suite::Corollary => vec![4],
                (None, None) => vec![2, 3],
            };
            ns.iter().flat_map(|&n| qs.iter().map(move |&q| (q, n))).collect()
        }
    };
    runs.into_iter()
        .map(|(q, n)| run_one(suite, q, n, mode, cfg))
        .collect()
}
