//! The `k0cert` command line. [`run`] returns the process exit code:
//! 0 whenever a verdict or report was produced, 2 for invalid input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::bratteli::{self, FiniteSystem, Metadata, Source, SystemDocument};
use crate::certify::{self, SearchParams, SearchReport, StateRequest, Verdict};
use crate::dimgroup::InductiveSystem;
use crate::json::{self, At};
use crate::kaction::{K0Action, Word};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "k0cert",
    version,
    about = "Exact K-theoretic certificates for free-group actions on AF algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Box_ {
    /// Largest stage searched.
    #[arg(long = "max-stage", default_value_t = 4)]
    max_stage: usize,
    /// Longest word used for the coboundary generators.
    #[arg(long = "word-length", default_value_t = 1)]
    word_length: usize,
    /// Largest coordinate allowed in a witness.
    #[arg(long = "height", default_value_t = 16)]
    height: u64,
}

impl From<Box_> for SearchParams {
    fn from(b: Box_) -> Self {
        SearchParams {
            max_stage: b.max_stage,
            word_length: b.word_length,
            height_bound: b.height,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a document, check the action and report injectivity.
    Validate {
        path: PathBuf,
        /// Stages checked for the action conditions.
        #[arg(long, default_value_t = 4)]
        horizon: usize,
    },
    /// Search for a positive coboundary, then for invariant states.
    CheckMf {
        path: PathBuf,
        #[command(flatten)]
        params: Box_,
        /// JSON file with `{"requests": [{"S": [...], "F": [...]}]}`.
        #[arg(long)]
        sets: Option<PathBuf>,
        /// Write the certificate here instead of stdout.
        #[arg(long = "json-out")]
        json_out: Option<PathBuf>,
    },
    /// One-generator compression check.
    ChainRecurrence {
        path: PathBuf,
        #[command(flatten)]
        params: Box_,
        #[arg(long = "json-out")]
        json_out: Option<PathBuf>,
    },
    /// Emit a document for a finite transformation group.
    Convert {
        /// Read `points=N` and `perms=...` specifications.
        #[arg(long)]
        finite: bool,
        /// `points=N`, `perms=a,b,c/d,e,f` (or one `perms=` per generator).
        specs: Vec<String>,
    },
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate { path, horizon } => cmd_validate(&path, horizon, out),
        Command::CheckMf {
            path,
            params,
            sets,
            json_out,
        } => cmd_check_mf(&path, params.into(), sets.as_deref(), json_out.as_deref(), out, err),
        Command::ChainRecurrence { path, params, json_out } => {
            cmd_chain_recurrence(&path, params.into(), json_out.as_deref(), out, err)
        }
        Command::Convert { finite, specs } => {
            if !finite {
                Err(Error::invalid("convert", "only --finite conversion is supported"))
            } else {
                convert_finite(&specs).map(|text| {
                    let _ = write!(out, "{text}");
                })
            }
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::invalid(path.display(), format!("cannot read: {e}")))
}

/// Parses a document and rejects actions that fail their checks up to
/// `horizon`, naming the first failing item.
pub fn load_checked(bytes: &[u8], horizon: usize) -> Result<SystemDocument> {
    let doc = bratteli::parse(bytes)?;
    check_action(&doc, horizon)?;
    Ok(doc)
}

/// Rejects a document whose action fails a check up to `horizon`.
pub fn check_action(doc: &SystemDocument, horizon: usize) -> Result<()> {
    let report = doc.action().verify(doc.system(), horizon);
    let failure = report.failures().next().map(ToString::to_string);
    failure.map_or(Ok(()), |item| Err(Error::invalid("$.action", item)))
}

fn cmd_validate(path: &Path, horizon: usize, out: &mut dyn Write) -> Result<()> {
    let doc = bratteli::parse(&read(path)?)?;
    let system = doc.system();
    let report = doc.action().verify(system, horizon);
    let _ = writeln!(out, "document: {}", doc.metadata.name.as_deref().unwrap_or("(unnamed)"));
    let _ = writeln!(
        out,
        "stages: {:?}{}",
        system.declared_ranks(),
        if system.is_stationary() {
            " (stationary tail)"
        } else {
            ""
        }
    );
    let _ = writeln!(out, "generators: {}", doc.action().generators());
    for s in system.injectivity_report(horizon) {
        let _ = writeln!(
            out,
            "connecting map {} -> {}: {}",
            s.stage,
            s.stage + 1,
            if s.injective { "injective" } else { "not injective" }
        );
    }
    for item in &report.items {
        let _ = writeln!(out, "{item}");
    }
    let failure = report.failures().next().map(ToString::to_string);
    match failure {
        Some(item) => Err(Error::invalid("$.action", item)),
        None => {
            let _ = writeln!(out, "valid");
            Ok(())
        }
    }
}

/// Reads `{"requests": [{"S": [{"stage", "vector"}], "F": [[1], [-1, 2]]}]}`.
pub fn parse_requests(bytes: &[u8], system: &InductiveSystem) -> Result<Vec<StateRequest>> {
    let value = json::parse_bytes(bytes)?;
    let root = At::root(&value);
    root.only_keys(&["requests"])?;
    root.get("requests")?
        .array()?
        .iter()
        .map(|r| {
            r.only_keys(&["S", "F"])?;
            let set = r
                .get("S")?
                .array()?
                .iter()
                .map(|e| {
                    let el = e.element()?;
                    system
                        .element(el.stage, el.vector)
                        .map_err(|x| Error::invalid(&e.path, x))
                })
                .collect::<Result<_>>()?;
            let words = r
                .get("F")?
                .array()?
                .iter()
                .map(|w| {
                    let signed: Vec<i64> = w.array()?.iter().map(At::i64).collect::<Result<_>>()?;
                    Word::from_signed(&signed)
                        .ok_or_else(|| Error::invalid(&w.path, "generator index 0 is not allowed"))
                })
                .collect::<Result<_>>()?;
            Ok(StateRequest { set, words })
        })
        .collect()
}

/// Full check as run by `check-mf`; returns the verdict and its canonical JSON.
pub fn check_mf_bytes(doc: &[u8], sets: Option<&[u8]>, params: SearchParams) -> Result<(Verdict, String)> {
    let doc = bratteli::parse(doc)?;
    check_mf_document(&doc, sets, params)
}

pub fn check_mf_document(doc: &SystemDocument, sets: Option<&[u8]>, params: SearchParams) -> Result<(Verdict, String)> {
    check_action(doc, params.max_stage)?;
    let requests = sets.map(|b| parse_requests(b, doc.system())).transpose()?;
    let verdict = certify::check_mf(doc.system(), doc.action(), requests, params)?;
    let text = json::to_canonical_string(&verdict.to_json());
    Ok((verdict, text))
}

fn emit(text: &str, json_out: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match json_out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::invalid(p.display(), format!("cannot write: {e}"))),
        None => {
            let _ = write!(out, "{text}");
            Ok(())
        }
    }
}

fn cmd_check_mf(
    path: &Path,
    params: SearchParams,
    sets: Option<&Path>,
    json_out: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let sets = sets.map(read).transpose()?;
    let (verdict, text) = check_mf_bytes(&read(path)?, sets.as_deref(), params)?;
    let _ = writeln!(
        err,
        "{} (max stage {}, word length {}, height {}) in {:.3}s",
        verdict.kind,
        params.max_stage,
        params.word_length,
        params.height_bound,
        verdict.elapsed.as_secs_f64()
    );
    if let Some(w) = verdict.witness() {
        let _ = writeln!(
            err,
            "  witness x at stage {}: {:?}",
            w.value.stage,
            to_strings(&w.value.vector)
        );
        for (j, g) in w.preimages.iter().enumerate() {
            let _ = writeln!(err, "  g{} at stage {}: {:?}", j + 1, g.stage, to_strings(&g.vector));
        }
    }
    for (i, s) in verdict.states.iter().enumerate() {
        match s {
            Some(c) => {
                let _ = writeln!(
                    err,
                    "  request {i}: state at stage {}: {:?}",
                    c.stage,
                    to_strings(&c.functional)
                );
            }
            None => {
                let _ = writeln!(err, "  request {i}: no state found up to stage {}", params.max_stage);
            }
        }
    }
    emit(&text, json_out, out)
}

fn to_strings(v: &[num_bigint::BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// `COMPRESSION_FOUND` or `NONE_FOUND`.
pub fn compression_kind(report: &SearchReport) -> &'static str {
    if report.is_violation() {
        "COMPRESSION_FOUND"
    } else {
        "NONE_FOUND"
    }
}

pub fn compression_json(report: &SearchReport) -> Value {
    json::object([
        ("kind", Value::from(compression_kind(report))),
        ("params", report.params.to_json()),
        (
            "witness",
            report.witness.as_ref().map_or(Value::Null, certify::Witness::to_json),
        ),
        ("search", report.to_json()),
    ])
}

pub fn chain_recurrence_bytes(doc: &[u8], params: SearchParams) -> Result<(SearchReport, String)> {
    chain_recurrence_document(&bratteli::parse(doc)?, params)
}

pub fn chain_recurrence_document(doc: &SystemDocument, params: SearchParams) -> Result<(SearchReport, String)> {
    check_action(doc, params.max_stage)?;
    let report = certify::compression_check_r1(doc.system(), doc.action(), params)?;
    let text = json::to_canonical_string(&compression_json(&report));
    Ok((report, text))
}

fn cmd_chain_recurrence(
    path: &Path,
    params: SearchParams,
    json_out: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let (report, text) = chain_recurrence_bytes(&read(path)?, params)?;
    let _ = writeln!(err, "{}", compression_kind(&report));
    if let Some(w) = report.witness.as_ref().filter(|w| w.nonzero.is_proof()) {
        let f = &w.preimages[0];
        let _ = writeln!(
            err,
            "  f at stage {}: {:?} with f - T(f) = {:?} at stage {}",
            f.stage,
            to_strings(&f.vector),
            to_strings(&w.value.vector),
            w.value.stage
        );
    }
    emit(&text, json_out, out)
}

/// `points=N` plus `perms=...`; permutations are one-based image lists,
/// separated by `/` or given as repeated `perms=` arguments.
pub fn convert_finite(specs: &[String]) -> Result<String> {
    let mut points = None;
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for spec in specs {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::invalid(spec, "expected key=value"))?;
        match key {
            "points" => {
                points = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| Error::invalid(spec, "points must be a positive integer"))?,
                )
            }
            "perms" => {
                for p in value.split('/').filter(|p| !p.is_empty()) {
                    let images = p
                        .split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::invalid(spec, format!("malformed permutation {p:?}")))?;
                    perms.push(images);
                }
            }
            _ => return Err(Error::invalid(spec, "unknown key (expected points or perms)")),
        }
    }
    let points = points.ok_or_else(|| Error::invalid("convert", "points=N is required"))?;
    let fs = FiniteSystem::new(points, perms)?;
    let meta = Metadata {
        name: Some(format!("finite system on {points} points")),
        description: None,
    };
    let doc = SystemDocument::new(meta, Source::Finite(fs), None)?;
    // Emit the explicit one-stage system and action so the matrices are visible.
    let explicit = SystemDocument::new(
        doc.metadata.clone(),
        Source::System(doc.system().clone()),
        Some(K0Action::new(
            doc.system(),
            doc.action().forward_maps().to_vec(),
            doc.action().inverse_maps().to_vec(),
        )?),
    )?;
    Ok(bratteli::serialize(&explicit))
}
