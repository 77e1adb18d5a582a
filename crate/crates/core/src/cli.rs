//! Command-line front end: argument types, dispatch and report rendering.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify_singularity, lct_low_degree, LctValue};
use crate::error::{Error, Result};
use crate::exactpoly::{parse_poly, parse_projective, parse_rat, render_rat, BPoly, Mult, Rat};
use crate::highmult::{analyze_high_mult, construct_witness, lambda_set};
use crate::localinv::{
    intersection_multiplicity_origin, is_square_free, milnor_number_origin,
    weighted_lct_upper_bound,
};
use crate::resolution::{
    export_tree, lct_from_tree, resolve_over_origin, tree_json, TreeFormat, DEFAULT_CAP,
};
use crate::selftest::{selftest, Scope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "plane-lct",
    version,
    about = "Exact log canonical thresholds of plane curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Point at which to work, as `X,Y` with rational coordinates.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,

    /// Read polynomials as homogeneous forms in x, y, z and set this
    /// variable to 1.
    #[arg(long, global = true)]
    pub projective: Option<char>,

    /// Maximum number of blowups for the resolution engine.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Log canonical threshold at the point.
    Lct { poly: String },
    /// Singularity type from the built-in tables.
    Classify { poly: String },
    /// Milnor number at the point.
    Milnor { poly: String },
    /// Local intersection multiplicity of two curves at the point.
    Imult { f: String, g: String },
    /// All thresholds at points of multiplicity d-1 on degree-d curves.
    LambdaSet { d: u32 },
    /// A curve of degree d realizing the given threshold.
    Witness { d: u32, target: String },
    /// Resolution tree over the point.
    Resolve {
        poly: String,
        /// Also write the tree in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Weighted upper bound on the threshold.
    Wbound {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Run the built-in consistency checks.
    Selftest {
        /// Include the larger degrees and sample counts.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliReport {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CliReport {
    fn ok(payload: Value) -> Self {
        CliReport {
            status: Status::Ok,
            payload,
            diagnostics: Vec::new(),
        }
    }

    fn from_error(e: &Error) -> Self {
        CliReport {
            status: Status::Error,
            payload: json!({ "error": e.kind(), "exit_code": e.class().exit_code() }),
            diagnostics: vec![e.to_string()],
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable"),
            Format::Text => {
                let mut out = String::new();
                if let Value::Object(map) = &self.payload {
                    for (k, v) in map {
                        match v {
                            Value::String(s) => {
                                let _ = writeln!(out, "{k}: {s}");
                            }
                            Value::Array(items) if items.iter().any(Value::is_object) => {
                                let _ = writeln!(out, "{k}:");
                                for item in items {
                                    let _ = writeln!(out, "  {item}");
                                }
                            }
                            other => {
                                let _ = writeln!(out, "{k}: {other}");
                            }
                        }
                    }
                }
                for d in &self.diagnostics {
                    let _ = writeln!(out, "{d}");
                }
                out
            }
        }
    }
}

/// How the `lct` subcommand obtained its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    OffCurve,
    Smooth,
    HighMult,
    Classifier,
    Resolution,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::OffCurve => "off-curve",
            Method::Smooth => "smooth",
            Method::HighMult => "highmult",
            Method::Classifier => "classifier",
            Method::Resolution => "resolution",
        }
    }
}

/// The dispatch rule of `lct`, from the degree of the curve and the
/// multiplicity at the point.
pub fn choose_method(degree: u32, mult: u32) -> Method {
    match mult {
        0 => Method::OffCurve,
        1 => Method::Smooth,
        m if degree >= 4 && m + 1 == degree => Method::HighMult,
        _ if degree <= 5 => Method::Classifier,
        _ => Method::Resolution,
    }
}

fn parse_point(text: Option<&str>) -> Result<(Rat, Rat)> {
    let Some(text) = text else {
        return Ok((Rat::from_integer(0.into()), Rat::from_integer(0.into())));
    };
    let parts: Vec<&str> = text.split(',').collect();
    let [x, y] = parts.as_slice() else {
        return Err(Error::InvalidArgument(format!(
            "point must be X,Y, got {text:?}"
        )));
    };
    Ok((parse_rat(x.trim())?, parse_rat(y.trim())?))
}

struct Input {
    projective: Option<char>,
    point: (Rat, Rat),
}

impl Input {
    fn poly(&self, text: &str) -> Result<BPoly> {
        match self.projective {
            Some(chart) => parse_projective(text, chart),
            None => parse_poly(text),
        }
    }

    /// The polynomial recentred so that the point becomes the origin.
    fn local(&self, text: &str) -> Result<(BPoly, BPoly)> {
        let f = self.poly(text)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = f.translate((&self.point.0, &self.point.1));
        Ok((f, g))
    }
}

fn lct_payload(input: &Input, text: &str, cap: usize) -> Result<Value> {
    let (f, g) = input.local(text)?;
    let degree = f.degree().finite().expect("nonzero");
    let mult = g.multiplicity_at_origin().finite().expect("nonzero");
    let method = choose_method(degree, mult);
    if mult >= 2 && !is_square_free(&f)? {
        return Err(Error::NotSquareFree);
    }
    let value = match method {
        Method::OffCurve => LctValue::Infinite,
        Method::Smooth => LctValue::Finite(Rat::one()),
        Method::HighMult => LctValue::Finite(analyze_high_mult(&g)?.lct),
        Method::Classifier => lct_low_degree(&f, (&input.point.0, &input.point.1))?,
        Method::Resolution => LctValue::Finite(lct_from_tree(&resolve_over_origin(&g, cap)?)?),
    };
    Ok(json!({ "lct": value.to_string(), "method": method.name() }))
}

fn mult_json(m: Mult) -> String {
    m.to_string()
}

fn run_command(cli: &Cli) -> Result<Value> {
    let input = Input {
        projective: cli.projective,
        point: parse_point(cli.point.as_deref())?,
    };
    match &cli.command {
        Command::Lct { poly } => lct_payload(&input, poly, cli.cap),
        Command::Classify { poly } => {
            let (_, g) = input.local(poly)?;
            let class = classify_singularity(&g)?;
            Ok(json!({
                "symbol": class.symbol.to_string(),
                "mult": class.mult,
                "mu": class.mu,
                "lct": render_rat(&class.lct),
            }))
        }
        Command::Milnor { poly } => {
            let (_, g) = input.local(poly)?;
            Ok(json!({ "mu": mult_json(milnor_number_origin(&g)?) }))
        }
        Command::Imult { f, g } => {
            let (_, f) = input.local(f)?;
            let (_, g) = input.local(g)?;
            Ok(json!({ "imult": mult_json(intersection_multiplicity_origin(&f, &g)?) }))
        }
        Command::LambdaSet { d } => {
            let values: Vec<String> = lambda_set(*d)?.iter().map(render_rat).collect();
            Ok(json!({ "d": d, "values": values }))
        }
        Command::Witness { d, target } => {
            let target = parse_rat(target)?;
            let f = construct_witness(*d, &target)?;
            Ok(json!({ "d": d, "lct": render_rat(&target), "polynomial": f.to_string() }))
        }
        Command::Resolve { poly, dot } => {
            let (_, g) = input.local(poly)?;
            let tree = resolve_over_origin(&g, cli.cap)?;
            if let Some(path) = dot {
                std::fs::write(path, export_tree(&tree, TreeFormat::Dot)).map_err(|e| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(tree_json(&tree))
        }
        Command::Wbound { poly, weights } => {
            let w = parse_point(Some(weights))?;
            let (_, g) = input.local(poly)?;
            let bound = weighted_lct_upper_bound(&g, (&w.0, &w.1))?;
            Ok(json!({
                "weights": [render_rat(&bound.weights.0), render_rat(&bound.weights.1)],
                "weighted_order": render_rat(&bound.wt_f),
                "bound": render_rat(&bound.b),
                "leading": bound.leading.to_string(),
            }))
        }
        Command::Selftest { full, seed } => {
            let scope = if *full { Scope::Full } else { Scope::Fast };
            let report = selftest(scope, *seed)?;
            Ok(serde_json::to_value(report).expect("serializable"))
        }
    }
}

/// Runs one request; returns the report and the process exit code.
pub fn run(cli: &Cli) -> (CliReport, i32) {
    match run_command(cli) {
        Ok(payload) => (CliReport::ok(payload), 0),
        Err(e) => (CliReport::from_error(&e), e.class().exit_code()),
    }
}
