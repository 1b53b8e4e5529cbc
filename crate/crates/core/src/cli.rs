//! Command-line dispatch. [`run`] is the whole program minus process I/O, so
//! it can be driven from tests.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::central::{contract_to_form, find_central};
use crate::cover::{build_cover, stable_model};
use crate::enumerate::{enumerate_with_bound, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::moduli::{classify_stratum, f_g_exponents, image_dimension};
use crate::reduction::{blowup_chain, reduce, ExponentVector};
use crate::tree::{canonical_code, validate_stable, WeightedTree};

#[derive(Debug, Parser)]
#[command(name = "hypermoduli", version, about = "Stable genus-0 trees, hyperelliptic covers and binary forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input document, `-` for standard input.
    #[arg(long, global = true, default_value = "-")]
    pub input: String,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Largest m accepted by `enumerate`.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: u32,

    /// Also emit the blow-up multiplicity chain of every multiple root (`reduce`).
    #[arg(long, global = true)]
    pub chain: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check weight + degree >= 3 at every vertex.
    Stability,
    /// Central vertex, or the edge splitting the weight in half.
    Central,
    /// Contract the branches onto the central component.
    Contract,
    /// Admissible double cover and its stable model.
    Cover,
    /// Local stable reduction of y^2 = prod (x - x_i)^{n_i}.
    Reduce,
    /// Boundary stratum of the tree.
    Stratum,
    /// Binary form of the stable hyperelliptic curve over the tree.
    Map,
    /// All stable trees of total weight m.
    Enumerate {
        #[arg(long = "m")]
        m: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Count,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
}

/// Parses `args` (program name first) and runs the subcommand.
///
/// Exit status 0 on success, 2 for rejected input, 1 for an internal
/// inconsistency. Failures produce `{"error": {"kind", "message"}}`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { status: 0, stdout: e.to_string() },
                _ => Outcome { status: 2, stdout: error_document("usage", &e.to_string()) },
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(stdout) => Outcome { status: 0, stdout },
        Err(e) => {
            Outcome { status: if e.is_internal() { 1 } else { 2 }, stdout: error_document(e.kind(), &e.to_string()) }
        }
    }
}

fn error_document(kind: &str, message: &str) -> String {
    let doc = json!({ "error": { "kind": kind, "message": message.trim_end() } });
    format!("{doc}\n")
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Error::Parse(format!("standard input: {e}")))?;
    } else {
        text = fs::read_to_string(PathBuf::from(path)).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::Parse(format!("format {format:?} is not available for `{command}`").to_lowercase())
}

fn json_line(value: &Value) -> String {
    format!("{value}\n")
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<String> {
    let format = cli.format;
    if let Command::Enumerate { m } = cli.command {
        return enumerate_command(m, cli.bound, format.unwrap_or(Format::Json));
    }
    let text = read_input(&cli.input, stdin)?;
    if let Command::Reduce = cli.command {
        return reduce_command(&text, cli.chain, format.unwrap_or(Format::Json));
    }
    let tree = WeightedTree::from_json(&text)?;

    match (&cli.command, format.unwrap_or(Format::Json)) {
        (Command::Stability, f @ (Format::Json | Format::Text)) => {
            let report = validate_stable(&tree);
            if f == Format::Text {
                if report.stable {
                    return Ok("stable\n".into());
                }
                let parts: Vec<_> = report
                    .violations
                    .iter()
                    .map(|v| format!("vertex {} (weight {}, degree {})", v.vertex, v.weight, v.degree))
                    .collect();
                return Ok(format!("unstable: {}\n", parts.join(", ")));
            }
            Ok(json_line(&json!({
                "m": tree.total_weight(),
                "stable": report.stable,
                "violations": report.violations,
                "code": canonical_code(&tree),
            })))
        }
        (Command::Central, Format::Text) => Ok(format!("{}\n", find_central(&tree)?)),
        (Command::Central, Format::Json) => Ok(json_line(&serde_json::to_value(find_central(&tree)?).unwrap())),
        (Command::Contract, f @ (Format::Json | Format::Text)) => {
            let central = find_central(&tree)?;
            let form = contract_to_form(&tree)?;
            if f == Format::Text {
                return Ok(format!("{form}\n"));
            }
            let mut doc = serde_json::to_value(central).unwrap();
            let extra = serde_json::to_value(&form).unwrap();
            merge(&mut doc, extra);
            doc["git_class"] = json!(form.classify());
            Ok(json_line(&doc))
        }
        (Command::Cover, Format::Dot) => Ok(build_cover(&tree)?.to_dot()),
        (Command::Cover, Format::Json) => {
            let cover = build_cover(&tree)?;
            let model = stable_model(&cover)?;
            Ok(json_line(&json!({
                "g": cover.genus,
                "arithmetic_genus": cover.arithmetic_genus(),
                "components": cover.components,
                "nodes": cover.fibers,
                "stable_model": model,
            })))
        }
        (Command::Stratum, Format::Json | Format::Text) => {
            let label = classify_stratum(&tree)?;
            let g = (tree.total_weight() - 2) / 2;
            let dimension = match image_dimension(&label, g) {
                Ok(d) => Some(d),
                Err(Error::UnsupportedStratum(_)) => None,
                Err(e) => return Err(e),
            };
            if format == Some(Format::Text) {
                return Ok(format!("{label}\n"));
            }
            Ok(json_line(&json!({ "label": label.to_string(), "g": g, "image_dimension": dimension })))
        }
        (Command::Map, Format::Json) => {
            let label = classify_stratum(&tree)?;
            let g = (tree.total_weight() - 2) / 2;
            let dimension = match image_dimension(&label, g) {
                Ok(d) => Some(d),
                Err(Error::UnsupportedStratum(_)) => None,
                Err(e) => return Err(e),
            };
            let form = f_g_exponents(&tree)?;
            let mut doc = json!({ "label": label.to_string(), "g": g, "image_dimension": dimension });
            merge(&mut doc, serde_json::to_value(&form).unwrap());
            doc["git_class"] = json!(form.classify());
            Ok(json_line(&doc))
        }
        (command, f) => Err(unsupported(f, command_name(command))),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Stability => "stability",
        Command::Central => "central",
        Command::Contract => "contract",
        Command::Cover => "cover",
        Command::Reduce => "reduce",
        Command::Stratum => "stratum",
        Command::Map => "map",
        Command::Enumerate { .. } => "enumerate",
    }
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

fn reduce_command(text: &str, chain: bool, format: Format) -> Result<String> {
    if format != Format::Json {
        return Err(unsupported(format, "reduce"));
    }
    let exponents = ExponentVector::from_json(text)?;
    let output = reduce(&exponents)?;
    let mut doc = serde_json::to_value(&output).unwrap();
    if chain {
        let chains = exponents
            .roots()
            .filter(|&(_, n)| n >= 2)
            .map(|(root, n)| {
                blowup_chain(n).map(|c| json!({ "root": root, "n": n, "multiplicities": c.multiplicities }))
            })
            .collect::<Result<Vec<_>>>()?;
        doc["chains"] = json!(chains);
    }
    Ok(json_line(&doc))
}

fn enumerate_command(m: u32, bound: u32, format: Format) -> Result<String> {
    let census = enumerate_with_bound(m, bound)?;
    match format {
        Format::Count => Ok(format!("{}\n", census.len())),
        Format::Dot => Ok(census.trees().map(WeightedTree::to_dot).collect()),
        Format::Json => Ok(json_line(&json!({
            "m": census.m,
            "count": census.len(),
            "classes": census.classes,
            "by_codimension": census.by_codimension,
            "by_stratum": census.by_stratum,
        }))),
        Format::Text => Err(unsupported(format, "enumerate")),
    }
}
