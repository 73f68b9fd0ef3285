//! Argument parsing and command execution for the `permrf` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use permrf_core::bivariate::{
    build_curve, conjugate_factor_search, count_offdiag_points, weil_holds, weil_min_prime_power,
    weil_threshold, CurveKind,
};
use permrf_core::gf::{parse_u32_list, Level, DEFAULT_BUDGET};
use permrf_core::linmaps::LinearizedPoly;
use permrf_core::ratfunc::{classify_c, closed_form_c, is_permutation, Method, RatFuncSpec};
use permrf_core::verify::{run_suite, Mode, Suite, SuiteConfig, SuiteReport};
use permrf_core::{Element, Error, FieldTower, TowerSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Parser, Serialize, Deserialize)]
#[command(name = "permrf", version, about = "Permutation rational functions L(x) + c/(Tr(x)+b) over finite fields")]
pub struct RunConfig {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Cap on enumeration sizes.
    #[arg(long, global = true, env = "PERMRF_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Add polynomial renderings next to element encodings.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Modulus of F_q over F_p, low-to-high coefficients.
    #[arg(long, global = true, value_name = "c0,c1,...")]
    pub modulus_g: Option<String>,

    /// Modulus of F_{q^n} over F_q, low-to-high coefficient encodings.
    #[arg(long, global = true, value_name = "c0,c1,...")]
    pub modulus_h: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct FieldArg {
    /// Field as `p^m:n`.
    #[arg(long)]
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Describe a field tower.
    Field(FieldArg),
    /// Test whether L(x) + c/(Tr(x)+b) permutes the field.
    Check {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        /// Coefficients a0,a1,... of L; the identity when omitted.
        #[arg(long = "L", value_name = "a0,a1,...")]
        l: Option<String>,
        #[arg(long, default_value = "pairwise")]
        method: String,
    },
    /// List every c for which x + c/(Tr(x)+b) permutes.
    Classify {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, required_unless_present = "all_b")]
        b: Option<u32>,
        #[arg(long)]
        all_b: bool,
    },
    /// Search for a conjugate bilinear factor of the auxiliary curve.
    Factor {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
    },
    /// Count off-diagonal F_q-points of an auxiliary curve.
    Points {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[arg(long, value_name = "f2|f3|f3kernel")]
        which: String,
    },
    /// Evaluate the point-count bound for degree d.
    Weil {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        suite: String,
        /// Comma-separated q values; suite defaults when omitted.
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value = "auto", value_name = "auto|full-classify|sampled|sufficiency")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances for lemma-equiv.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Record elapsed time in reports.
        #[arg(long)]
        timing: bool,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_FAILED,
        message: e.to_string(),
    }
}

/// Command result: the JSON document and whether every assertive check passed.
pub struct Outcome {
    pub doc: Value,
    pub passed: bool,
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    tower: Option<FieldTower>,
}

impl Ctx<'_> {
    fn tower(&self) -> &FieldTower {
        self.tower.as_ref().expect("field-based command")
    }

    fn elem(&self, k: u32) -> Result<Element, Failure> {
        Ok(self.tower().decode(k as u64, Level::Top)?)
    }

    fn put(&self, out: &mut Map<String, Value>, key: &str, a: Element) {
        out.insert(key.into(), json!(a.0));
        if self.cfg.pretty {
            out.insert(format!("{key}_poly"), json!(self.tower().render(a)));
        }
    }

    fn put_list(&self, out: &mut Map<String, Value>, key: &str, xs: &[Element]) {
        out.insert(key.into(), json!(xs.iter().map(|a| a.0).collect::<Vec<_>>()));
        if self.cfg.pretty {
            let polys: Vec<String> = xs.iter().map(|&a| self.tower().render(a)).collect();
            out.insert(format!("{key}_poly"), json!(polys));
        }
    }

    fn field_json(&self) -> Value {
        let t = self.tower();
        json!({
            "spec": t.spec().to_string(),
            "p": t.p(),
            "m": t.m(),
            "n": t.n(),
            "q": t.q(),
            "size": t.size(),
        })
    }

    fn start(&self, command: &str) -> Map<String, Value> {
        let mut out = Map::new();
        out.insert("command".into(), json!(command));
        if self.tower.is_some() {
            out.insert("field".into(), self.field_json());
        }
        out
    }
}

fn build_tower(cfg: &RunConfig, field: &str) -> Result<FieldTower, Failure> {
    let mut spec: TowerSpec = field.parse()?;
    spec.g = cfg.modulus_g.as_deref().map(parse_u32_list).transpose()?;
    spec.h = cfg.modulus_h.as_deref().map(parse_u32_list).transpose()?;
    Ok(spec.build(cfg.budget)?)
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, Failure> {
    Ok(s.parse()?)
}

fn closed_form(t: &FieldTower, b: Element) -> Option<Element> {
    closed_form_c(t, b).ok()
}

fn classify_one(ctx: &Ctx, b: Element) -> Result<(Map<String, Value>, bool), Failure> {
    let t = ctx.tower();
    let set = classify_c(t, b, ctx.cfg.budget)?;
    let closed = closed_form(t, b);
    let mut out = Map::new();
    ctx.put(&mut out, "b", b);
    out.insert("method".into(), json!(Method::Pairwise.to_string()));
    ctx.put_list(&mut out, "permuting_c", &set);
    match closed {
        Some(c) => ctx.put(&mut out, "closed_form_c", c),
        None => {
            out.insert("closed_form_c".into(), Value::Null);
        }
    }
    let matches = closed.is_some_and(|c| set == [c]);
    out.insert("matches_closed_form".into(), json!(matches));
    Ok((out, matches))
}

fn run_verify(cfg: &RunConfig, cmd: &Command) -> Result<Outcome, Failure> {
    let Command::Verify {
        suite,
        q,
        n,
        mode,
        seed,
        samples,
        json: json_path,
        csv: csv_path,
        timing,
    } = cmd
    else {
        unreachable!()
    };
    let suite: Suite = parse(suite)?;
    let mode: Mode = parse(mode)?;
    let qs: Option<Vec<u64>> = q
        .as_deref()
        .map(|s| parse_u32_list(s).map(|v| v.into_iter().map(u64::from).collect()))
        .transpose()?;
    let scfg = SuiteConfig {
        seed: *seed,
        budget: cfg.budget,
        timing: *timing,
        samples: *samples,
    };
    let reports = run_suite(suite, qs.as_deref(), *n, mode, &scfg)?;
    let passed = reports.iter().all(SuiteReport::passed);
    let doc = json!({
        "command": "verify",
        "suite": suite.name(),
        "seed": seed,
        "budget": cfg.budget,
        "passed": passed,
        "reports": reports,
    });
    if let Some(path) = json_path {
        let text = serde_json::to_string_pretty(&doc).map_err(io_failure)?;
        std::fs::write(path, text + "\n").map_err(io_failure)?;
    }
    if let Some(path) = csv_path {
        write_csv(path, &reports).map_err(io_failure)?;
    }
    Ok(Outcome { doc, passed })
}

/// One CSV row per exception or observation.
#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    kind: &'a str,
    p: Option<u32>,
    m: Option<u32>,
    n: Option<u32>,
    q: Option<u32>,
    b: u32,
    c: Option<u32>,
    b_poly: &'a str,
    c_poly: Option<&'a str>,
    detail: &'a str,
}

pub fn write_csv(path: &std::path::Path, reports: &[SuiteReport]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    let mut wrote = false;
    for r in reports {
        let lists = [("exception", &r.exceptions), ("observation", &r.observations)];
        for (kind, list) in lists {
            for e in list {
                let f = e.field.or(r.field);
                w.serialize(CsvRow {
                    suite: &r.suite,
                    kind,
                    p: f.map(|f| f.p),
                    m: f.map(|f| f.m),
                    n: f.map(|f| f.n),
                    q: f.map(|f| f.q),
                    b: e.b,
                    c: e.c,
                    b_poly: &e.b_poly,
                    c_poly: e.c_poly.as_deref(),
                    detail: &e.detail,
                })?;
                wrote = true;
            }
        }
    }
    if !wrote {
        w.write_record(["suite", "kind", "p", "m", "n", "q", "b", "c", "b_poly", "c_poly", "detail"])?;
    }
    w.flush()?;
    Ok(())
}

/// Executes the configured command.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let field = match &cfg.command {
        Command::Field(f)
        | Command::Check { field: f, .. }
        | Command::Classify { field: f, .. }
        | Command::Factor { field: f, .. }
        | Command::Points { field: f, .. } => Some(build_tower(cfg, &f.field)?),
        Command::Weil { .. } | Command::Verify { .. } => None,
    };
    let ctx = Ctx { cfg, tower: field };
    match &cfg.command {
        Command::Field(_) => {
            let t = ctx.tower();
            let mut out = ctx.start("field");
            out.insert("g".into(), json!(t.g()));
            out.insert("h".into(), json!(t.h()));
            out.insert("frobenius_matrix".into(), json!(t.frobenius_matrix()));
            let basis_traces: Vec<u32> = (0..t.n())
                .map(|j| t.trace(t.pow(t.gen(), j as u64)).0)
                .collect();
            out.insert("trace_of_basis".into(), json!(basis_traces));
            ctx.put(&mut out, "generator", t.gen());
            Ok(Outcome {
                doc: Value::Object(out),
                passed: true,
            })
        }
        Command::Check { b, c, l, method, .. } => {
            let t = ctx.tower();
            let (b, c) = (ctx.elem(*b)?, ctx.elem(*c)?);
            let method: Method = parse(method)?;
            let lin = match l {
                Some(s) => {
                    let coeffs = parse_u32_list(s)?
                        .into_iter()
                        .map(|k| ctx.elem(k))
                        .collect::<Result<Vec<_>, _>>()?;
                    LinearizedPoly::new(t, &coeffs)?
                }
                None => LinearizedPoly::identity(t),
            };
            let is_identity = lin == LinearizedPoly::identity(t);
            let spec = RatFuncSpec::new(t, lin.clone(), c, b)?;
            let verdict = is_permutation(t, &spec, method, cfg.budget)?;
            let mut out = ctx.start("check");
            ctx.put(&mut out, "b", b);
            ctx.put(&mut out, "c", c);
            ctx.put_list(&mut out, "L", lin.coeffs());
            out.insert("method".into(), json!(method.to_string()));
            out.insert("verdict".into(), json!(verdict.permutes));
            if let Some((x, y)) = verdict.witness {
                out.insert("witness".into(), json!([x.0, y.0]));
            }
            match closed_form(t, b) {
                Some(k) => {
                    ctx.put(&mut out, "closed_form_c", k);
                    out.insert("matches_closed_form".into(), json!(is_identity && k == c));
                }
                None => {
                    out.insert("closed_form_c".into(), Value::Null);
                    out.insert("matches_closed_form".into(), json!(false));
                }
            }
            Ok(Outcome {
                doc: Value::Object(out),
                passed: true,
            })
        }
        Command::Classify { b, all_b, .. } => {
            let t = ctx.tower();
            let mut out = ctx.start("classify");
            if *all_b {
                let mut results = Vec::new();
                for b in t.non_base_elements() {
                    results.push(Value::Object(classify_one(&ctx, b)?.0));
                }
                out.insert("results".into(), Value::Array(results));
            } else {
                let b = ctx.elem(b.expect("clap requires --b without --all-b"))?;
                let (one, _) = classify_one(&ctx, b)?;
                out.extend(one);
            }
            Ok(Outcome {
                doc: Value::Object(out),
                passed: true,
            })
        }
        Command::Factor { b, c, .. } => {
            let t = ctx.tower();
            let (b, c) = (ctx.elem(*b)?, ctx.elem(*c)?);
            let kind = if t.n() == 2 { CurveKind::F2 } else { CurveKind::F3 };
            let f = build_curve(t, kind, b, c)?;
            let found = conjugate_factor_search(t, &f, cfg.budget)?;
            let mut out = ctx.start("factor");
            ctx.put(&mut out, "b", b);
            ctx.put(&mut out, "c", c);
            out.insert("curve".into(), json!(kind));
            out.insert("found".into(), json!(found.is_some()));
            out.insert(
                "factor".into(),
                match found {
                    Some(g) => {
                        let mut m = Map::new();
                        ctx.put(&mut m, "beta", g.beta);
                        ctx.put(&mut m, "gamma", g.gamma);
                        ctx.put(&mut m, "delta", g.delta);
                        Value::Object(m)
                    }
                    None => Value::Null,
                },
            );
            if cfg.pretty {
                out.insert("f".into(), json!(f.render(t)));
            }
            Ok(Outcome {
                doc: Value::Object(out),
                passed: true,
            })
        }
        Command::Points { b, c, which, .. } => {
            let t = ctx.tower();
            let (b, c) = (ctx.elem(*b)?, ctx.elem(*c)?);
            let kind: CurveKind = parse(which)?;
            let f = build_curve(t, kind, b, c)?;
            let mut out = ctx.start("points");
            ctx.put(&mut out, "b", b);
            ctx.put(&mut out, "c", c);
            out.insert("which".into(), json!(kind));
            out.insert("total_degree".into(), json!(f.total_degree()));
            out.insert("offdiag_points".into(), json!(count_offdiag_points(t, &f)));
            if cfg.pretty {
                out.insert("f".into(), json!(f.render(t)));
            }
            Ok(Outcome {
                doc: Value::Object(out),
                passed: true,
            })
        }
        Command::Weil { degree, q } => {
            let mut out = ctx.start("weil");
            out.insert("degree".into(), json!(degree));
            out.insert("threshold_sqrt_q".into(), json!(weil_threshold(*degree)?));
            out.insert("min_prime_power".into(), json!(weil_min_prime_power(*degree)?));
            if let Some(q) = q {
                out.insert("q".into(), json!(q));
                out.insert("holds".into(), json!(weil_holds(*q, *degree)?));
            }
            Ok(Outcome {
                doc: Value::Object(out),
                passed: true,
            })
        }
        Command::Verify { .. } => run_verify(cfg, &cfg.command),
    }
}

fn configure_workers(workers: Option<usize>) {
    if let Some(n) = workers {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `argv`, runs the command and writes JSON to `stdout`; returns the
/// process exit code.
pub fn run<I, T>(argv: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    configure_workers(cfg.workers);
    match execute(&cfg) {
        Ok(outcome) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&outcome.doc).expect("JSON values serialise"));
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
