//! Command-line front end. Every command produces a [`CommandResult`]; the
//! binary prints either its human-readable text or its JSON payload.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chromatic::{
    chromatic_brute, chromatic_qsym_fundamental, chromatic_theorem, verify_corollary,
    verify_theorem,
};
use crate::compositions::{WeakComposition, Window};
use crate::dyck::{dyck_graph, enumerate_paths, parse_literal, restriction_map, PartialDyckPath};
use crate::error::{Error, Result};
use crate::keys::{chromatic_key_expansion, is_key_positive, key_polynomial, search_counterexamples_at};
use crate::partitions::{barrho, incomparability_poset, inv_g, p_descents, rdes};
use crate::perm::permutations;
use crate::polynomial::TPolynomial;
use crate::slide::{backstable_decompose, eta0_of_backstable_slide, expand_in_slides};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    /// Human-readable rendering of the payload.
    pub text: String,
}

impl CommandResult {
    fn ok(payload: Value, text: String) -> Self {
        CommandResult { status: Status::Ok, payload, text }
    }

    fn verdict(pass: bool, payload: Value, text: String) -> Self {
        let status = if pass { Status::Ok } else { Status::Mismatch };
        CommandResult { status, payload, text }
    }

    pub fn error(e: &Error) -> Self {
        CommandResult {
            status: Status::Error,
            payload: json!({"status": "error", "message": e.to_string()}),
            text: format!("error: {e}"),
        }
    }

    /// The payload with `status` attached, pretty-printed.
    pub fn json(&self) -> String {
        let mut v = self.payload.clone();
        if let Value::Object(map) = &mut v {
            map.insert("status".into(), serde_json::to_value(self.status).expect("status"));
        }
        serde_json::to_string_pretty(&v).expect("serializable payload")
    }
}

#[derive(Debug, Parser)]
#[command(name = "slidechrom", version, about = "Chromatic nonsymmetric polynomials of Dyck graphs")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (defaults to available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Lift the desk-scale bound on sweeps.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChromaticMode {
    Brute,
    Theorem,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    Theorem,
    Backstable,
    Corollary,
    Keys,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Edges, restriction map and DOT rendering of a path's Dyck graph.
    Graph { path: String },
    /// The chromatic nonsymmetric polynomial of a path.
    Chromatic {
        path: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: ChromaticMode,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
    /// Expand a polynomial (JSON file) in fundamental slides.
    Slides {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
    /// Per-permutation table of inv, barrho, rdes and P-descents.
    Rdes { path: String },
    /// Tail-strong decomposition of a backstable slide and its η_0 image.
    Backstable {
        composition: String,
        #[arg(long)]
        r: i64,
    },
    /// Fundamental quasisymmetric expansion; checks it on `m` variables if given.
    Qsym {
        path: String,
        #[arg(long)]
        m: Option<i64>,
    },
    /// Key expansion of a path's polynomial, or a single key polynomial.
    Keys {
        path: Option<String>,
        /// Print κ_a instead, for a composition `a` supported in [1, r].
        #[arg(long, requires = "r")]
        key: Option<String>,
        #[arg(long)]
        r: Option<i64>,
    },
    /// Check every path in P_{n,r}.
    Sweep {
        n: usize,
        r: usize,
        #[arg(value_enum)]
        mode: SweepMode,
        /// Number of nonpositive colors (backstable, corollary).
        #[arg(long, default_value_t = 1)]
        m: i64,
    },
    /// Count or list P_{n,r}.
    Paths {
        n: usize,
        r: usize,
        #[arg(long)]
        list: bool,
    },
}

const DESK_SCALE: usize = 6;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => CommandResult::error(&Error::Parse(e.to_string())),
    }
}

pub fn execute(cli: &Cli) -> CommandResult {
    let work = || dispatch(cli).unwrap_or_else(|e| CommandResult::error(&e));
    match cli.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(work),
            Err(e) => CommandResult::error(&Error::Internal(e.to_string())),
        },
        None => work(),
    }
}

fn dispatch(cli: &Cli) -> Result<CommandResult> {
    match &cli.command {
        Command::Graph { path } => cmd_graph(path),
        Command::Chromatic { path, mode, window } => cmd_chromatic(path, window.as_deref(), *mode),
        Command::Slides { file, window } => cmd_slides(file, window.as_deref()),
        Command::Rdes { path } => cmd_rdes(path),
        Command::Backstable { composition, r } => cmd_backstable(composition, *r),
        Command::Qsym { path, m } => cmd_qsym(path, *m),
        Command::Keys { path, key, r } => cmd_keys(path.as_deref(), key.as_deref(), *r),
        Command::Sweep { n, r, mode, m } => cmd_sweep(*n, *r, *mode, *m, cli.force),
        Command::Paths { n, r, list } => cmd_paths(*n, *r, *list),
    }
}

fn window_arg(given: Option<&[i64]>, d: &PartialDyckPath) -> Result<Window> {
    match given {
        Some([lo, hi]) => Window::new(*lo, *hi),
        Some(_) => Err(Error::Parse("--window takes LO HI".into())),
        None => Ok(Window::positive(d.r() as i64)),
    }
}

pub fn cmd_graph(literal: &str) -> Result<CommandResult> {
    let d = parse_literal(literal)?;
    let g = dyck_graph(&d);
    let rho = restriction_map(&d);
    let edges = g.edges();
    let dot = g.to_dot(Some(&rho));
    let edge_text: Vec<String> = edges.iter().map(|(i, j)| format!("{i}{j}")).collect();
    let text = format!(
        "path  {}\nedges {}\nrho   {:?}\n{dot}",
        d.literal(),
        edge_text.join(" "),
        rho.values()
    );
    let payload = json!({
        "path": d.literal(),
        "n": d.n(),
        "r": d.r(),
        "edges": edges,
        "rho": rho.values(),
        "dot": dot,
    });
    Ok(CommandResult::ok(payload, text))
}

pub fn cmd_chromatic(literal: &str, window: Option<&[i64]>, mode: ChromaticMode) -> Result<CommandResult> {
    let d = parse_literal(literal)?;
    let w = window_arg(window, &d)?;
    let head = json!({"path": d.literal(), "window": [w.lo, w.hi]});
    match mode {
        ChromaticMode::Brute => {
            let p = chromatic_brute(&d, &w);
            let mut payload = head;
            payload["polynomial"] = p.to_json();
            Ok(CommandResult::ok(payload, p.to_string()))
        }
        ChromaticMode::Theorem => {
            let (p, e) = chromatic_theorem(&d, &w);
            let mut payload = head;
            payload["polynomial"] = p.to_json();
            payload["expansion"] = e.to_json();
            let text = format!("{p}\n{}", expansion_text(e.iter()));
            Ok(CommandResult::ok(payload, text))
        }
        ChromaticMode::Both => {
            let report = verify_theorem(&d, &w);
            let mut text = format!(
                "brute    {}\ntheorem  {}\n{}",
                report.brute,
                report.theorem,
                expansion_text(report.slide_expansion.iter())
            );
            let _ = write!(
                text,
                "\nequal: {}  slide-positive: {}",
                report.equal, report.slide_positive
            );
            Ok(CommandResult::verdict(report.passed(), report.to_json(), text))
        }
    }
}

fn expansion_text<'a>(
    terms: impl Iterator<Item = (&'a WeakComposition, &'a crate::polynomial::TCoefficient)>,
) -> String {
    let parts: Vec<String> = terms.map(|(a, c)| format!("({c})·S[{a}]")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn cmd_slides(file: &std::path::Path, window: Option<&[i64]>) -> Result<CommandResult> {
    let text = std::fs::read_to_string(file)?;
    let p = TPolynomial::from_json(&serde_json::from_str(&text)?)?;
    let w = match window {
        Some([lo, hi]) => Window::new(*lo, *hi)?,
        Some(_) => return Err(Error::Parse("--window takes LO HI".into())),
        None => p.window(),
    };
    let e = expand_in_slides(&p, &w)?;
    let payload = json!({"window": [w.lo, w.hi], "expansion": e.to_json(), "positive": e.is_positive()});
    Ok(CommandResult::ok(payload, expansion_text(e.iter())))
}

pub fn cmd_rdes(literal: &str) -> Result<CommandResult> {
    let d = parse_literal(literal)?;
    let g = dyck_graph(&d);
    let rho = restriction_map(&d);
    let p = incomparability_poset(&g)?;
    let mut rows = Vec::new();
    let mut text = String::from("pi  inv  barrho  rdes  Des\n");
    for pi in permutations(d.n()) {
        let inv = inv_g(&g, &pi.inverse());
        let bar = barrho(&pi, &rho, &p);
        let a = rdes(&pi, &rho, &p);
        let des = p_descents(&p, &pi);
        let _ = writeln!(text, "{pi}  {inv}  {:?}  {a}  {des:?}", bar.values());
        rows.push(json!({
            "pi": pi.to_string(),
            "inv": inv,
            "barrho": bar.values(),
            "rdes": a.to_string(),
            "descents": des,
        }));
    }
    Ok(CommandResult::ok(json!({"path": d.literal(), "rows": rows}), text))
}

pub fn cmd_backstable(composition: &str, r: i64) -> Result<CommandResult> {
    let a: WeakComposition = composition.parse()?;
    let terms = backstable_decompose(&a, r)?;
    let eta0 = eta0_of_backstable_slide(&a)?;
    let rendered: Vec<String> = terms.iter().map(|(f, s)| format!("F[{f}]·S[{s}]")).collect();
    let text = format!("{}\neta0: F[{eta0}]", rendered.join(" + "));
    let payload = json!({
        "composition": a.to_string(),
        "terms": terms
            .iter()
            .map(|(f, s)| json!({"fundamental": f.parts(), "slide": s.to_string()}))
            .collect::<Vec<_>>(),
        "eta0": eta0.parts(),
    });
    Ok(CommandResult::ok(payload, text))
}

pub fn cmd_qsym(literal: &str, m: Option<i64>) -> Result<CommandResult> {
    let d = parse_literal(literal)?;
    let map = chromatic_qsym_fundamental(&d);
    let rendered: Vec<String> = map.iter().map(|(a, c)| format!("({c})·F[{a}]")).collect();
    let mut text = rendered.join(" + ");
    let mut payload = json!({
        "path": d.literal(),
        "fundamentals": map
            .iter()
            .map(|(a, c)| json!({"index": a.parts(), "t": crate::polynomial::coefficient_to_json(c)}))
            .collect::<Vec<_>>(),
    });
    let pass = match m {
        Some(m) => {
            let ok = verify_corollary(&d, m);
            payload["verified_m"] = json!(m);
            payload["verified"] = json!(ok);
            let _ = write!(text, "\nverified on {m} variables: {ok}");
            ok
        }
        None => true,
    };
    Ok(CommandResult::verdict(pass, payload, text))
}

pub fn cmd_keys(literal: Option<&str>, key: Option<&str>, r: Option<i64>) -> Result<CommandResult> {
    if let Some(key) = key {
        let a: WeakComposition = key.parse()?;
        let r = r.ok_or_else(|| Error::Parse("--key needs --r".into()))?;
        let k = key_polynomial(&a, r)?;
        let payload = json!({"key": a.to_string(), "r": r, "polynomial": k.to_json()});
        return Ok(CommandResult::ok(payload, k.to_string()));
    }
    let literal = literal.ok_or_else(|| Error::Parse("keys needs a path or --key".into()))?;
    let d = parse_literal(literal)?;
    let e = chromatic_key_expansion(&d)?;
    let positive = is_key_positive(&e);
    let text = format!(
        "{}\nkey-positive: {positive}",
        expansion_text(e.iter()).replace("S[", "K[")
    );
    let payload = json!({"path": d.literal(), "expansion": e.to_json(), "key_positive": positive});
    Ok(CommandResult::ok(payload, text))
}

pub fn cmd_sweep(n: usize, r: usize, mode: SweepMode, m: i64, force: bool) -> Result<CommandResult> {
    if n > DESK_SCALE && !force {
        return Err(Error::Domain(format!(
            "n = {n} exceeds the desk-scale bound {DESK_SCALE}; pass --force"
        )));
    }
    let paths: Vec<PartialDyckPath> = enumerate_paths(n, r).collect();
    if mode == SweepMode::Keys {
        let found = search_counterexamples_at(n, r)?;
        let mut text = format!("P_{{{n},{r}}}: {} paths, {} negative key coefficients\n", paths.len(), found.len());
        for rec in &found {
            let _ = writeln!(text, "{}  K[{}]  {}", rec.path.literal(), rec.composition, rec.coefficient);
        }
        let payload = json!({
            "mode": "keys", "n": n, "r": r, "paths": paths.len(),
            "findings": serde_json::to_value(&found)?,
        });
        return Ok(CommandResult::ok(payload, text));
    }
    let rhi = r as i64;
    let results: Vec<bool> = paths
        .par_iter()
        .map(|d| match mode {
            SweepMode::Theorem => verify_theorem(d, &Window::positive(rhi)).passed(),
            SweepMode::Backstable => verify_theorem(d, &Window::backstable(m, rhi)).passed(),
            SweepMode::Corollary => verify_corollary(d, m),
            SweepMode::Keys => unreachable!(),
        })
        .collect();
    let failures: Vec<String> = paths
        .iter()
        .zip(&results)
        .filter(|(_, ok)| !**ok)
        .map(|(d, _)| d.literal())
        .collect();
    let mut text = String::new();
    for (d, ok) in paths.iter().zip(&results) {
        let _ = writeln!(text, "{}  {}", if *ok { "pass" } else { "FAIL" }, d.literal());
    }
    let _ = write!(text, "{} of {} passed", results.iter().filter(|ok| **ok).count(), paths.len());
    let mode_name = match mode {
        SweepMode::Theorem => "theorem",
        SweepMode::Backstable => "backstable",
        SweepMode::Corollary => "corollary",
        SweepMode::Keys => "keys",
    };
    let payload = json!({
        "mode": mode_name, "n": n, "r": r, "m": m,
        "paths": paths.len(),
        "results": paths.iter().zip(&results)
            .map(|(d, ok)| json!({"path": d.literal(), "pass": ok}))
            .collect::<Vec<_>>(),
        "failures": failures,
    });
    Ok(CommandResult::verdict(failures.is_empty(), payload, text))
}

pub fn cmd_paths(n: usize, r: usize, list: bool) -> Result<CommandResult> {
    let paths: Vec<String> = enumerate_paths(n, r).map(|d| d.literal()).collect();
    let mut text = format!("|P_{{{n},{r}}}| = {}", paths.len());
    if list {
        for p in &paths {
            let _ = write!(text, "\n{p}");
        }
    }
    let mut payload = json!({"n": n, "r": r, "count": paths.len()});
    if list {
        payload["paths"] = json!(paths);
    }
    Ok(CommandResult::ok(payload, text))
}
