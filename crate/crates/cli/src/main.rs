// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! `qalam`: shape, justify and proof Arabic text against a font description.
//!
//! Exit codes: 0 success, 1 font error, 2 text or layout error, 3 the text
//! cannot be justified at the requested width, 4 the font failed its lint.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qalam_core::font::lint_font;
use qalam_core::justify::{JustifyParams, INF};
use qalam_core::kashida::KashidaPolicy;
use qalam_core::layout::{justify_document, shape_document, Algorithm, LayoutError};
use qalam_core::lookup::FeatureSet;
use qalam_core::shaper::{ALLOGRAPH_FEATURE, LIGATURE_FEATURE};
use qalam_core::{
    demo, load_font, svg, Diagnostic, FontDescription, LayoutDocument, LayoutOptions, Severity, TextModel,
};

#[derive(Parser)]
#[command(name = "qalam", version, about = "Arabic shaping, diacritic placement and Kashida justification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shape text and place its marks, without justification.
    Shape(ShapeArgs),
    /// Break text into justified lines.
    Justify(JustifyArgs),
    /// Draw a layout as SVG.
    Render(RenderArgs),
    /// Check a font description.
    Fontlint(LintArgs),
}

#[derive(Args)]
struct FontArg {
    /// Font description; the bundled chawki-demo font when absent.
    #[arg(long, env = "QALAM_FONT_PATH")]
    font: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ErrorFormat {
    Text,
    JsonErrors,
}

#[derive(Args)]
struct ShapeArgs {
    #[command(flatten)]
    font: FontArg,
    #[arg(long, conflicts_with = "text_file")]
    text: Option<String>,
    #[arg(long)]
    text_file: Option<PathBuf>,
    /// Optional features to enable, comma separated (liga, jalt).
    #[arg(long, value_delimiter = ',')]
    features: Vec<String>,
    /// Enable aesthetic ligatures.
    #[arg(long)]
    ligatures: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: ErrorFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Args)]
struct JustifyArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Measure in font units.
    #[arg(long, value_parser = clap::value_parser!(i32).range(1..))]
    width: i32,
    #[arg(long, default_value = "optimum")]
    algorithm: Algorithm,
    #[arg(long, default_value_t = JustifyParams::default().line_penalty)]
    line_penalty: i64,
    /// Demerits per stacked elongation bucket; `inf` forbids stacking.
    #[arg(long, default_value = "3000", value_parser = parse_penalty)]
    overlap_penalty: i64,
    /// Let the breaker pick ligature and allograph variants.
    #[arg(long, value_enum, default_value = "off")]
    variants: Toggle,
    #[arg(long, default_value = "single")]
    kashida_policy: KashidaPolicy,
    /// Include summary statistics in the layout.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct RenderArgs {
    /// Layout JSON; standard input when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LintArgs {
    #[command(flatten)]
    font: FontArg,
    /// Print diagnostics as JSON.
    #[arg(long)]
    json: bool,
}

fn parse_penalty(s: &str) -> Result<i64, String> {
    match s {
        "inf" | "INF" => Ok(INF),
        _ => s.parse::<i64>().map_err(|e| e.to_string()).and_then(|v| {
            if v < 0 {
                Err("penalty must not be negative".into())
            } else {
                Ok(v)
            }
        }),
    }
}

/// A failure with its exit code and stable diagnostic code.
struct Failure {
    exit: u8,
    code: String,
    message: String,
}

impl Failure {
    fn new(exit: u8, code: &str, message: impl ToString) -> Failure {
        Failure { exit, code: code.to_string(), message: message.to_string() }
    }
}

impl From<LayoutError> for Failure {
    fn from(e: LayoutError) -> Failure {
        let exit = match e {
            LayoutError::Justify(_) => 3,
            _ => 2,
        };
        Failure::new(exit, e.code(), e)
    }
}

fn load(arg: &FontArg) -> Result<FontDescription, Failure> {
    match &arg.font {
        None => Ok(demo::font().clone()),
        Some(path) => {
            let file = fs::File::open(path).map_err(|e| Failure::new(1, "Io", format!("{}: {e}", path.display())))?;
            load_font(file).map_err(|e| Failure::new(1, e.code(), e))
        }
    }
}

fn read_text(args: &ShapeArgs) -> Result<String, Failure> {
    match (&args.text, &args.text_file) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| Failure::new(2, "Io", format!("{}: {e}", path.display())))
        }
        (None, None) => Err(Failure::new(2, "NoText", "give --text or --text-file")),
    }
}

fn features(args: &ShapeArgs) -> FeatureSet {
    let mut set = FeatureSet::from_tags(args.features.iter().map(String::as_str).filter(|s| !s.is_empty()));
    if args.ligatures {
        set = set.with(LIGATURE_FEATURE);
    }
    set
}

fn report(diagnostics: &[Diagnostic]) {
    let mut err = io::stderr().lock();
    for d in diagnostics {
        let _ = writeln!(err, "{d}");
    }
}

fn emit(bytes: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::new(2, "Io", format!("{}: {e}", path.display()))),
        None => io::stdout().lock().write_all(bytes.as_bytes()).map_err(|e| Failure::new(2, "Io", e)),
    }
}

fn emit_layout(doc: &LayoutDocument) -> Result<(), Failure> {
    report(&doc.diagnostics);
    emit(&doc.to_json(), None)
}

fn shape(args: &ShapeArgs) -> Result<(), Failure> {
    let font = load(&args.font)?;
    let text = read_text(args)?;
    let options = LayoutOptions { features: features(args), ..LayoutOptions::default() };
    let doc = shape_document(&text, &font, TextModel::builtin(), &options)?;
    emit_layout(&doc)
}

fn justify(args: &JustifyArgs) -> Result<(), Failure> {
    let font = load(&args.shape.font)?;
    let text = read_text(&args.shape)?;
    let explore = args.variants == Toggle::On;
    let mut features = features(&args.shape);
    if explore {
        features = features.with(ALLOGRAPH_FEATURE);
    }
    let options = LayoutOptions {
        features,
        kashida_policy: args.kashida_policy,
        algorithm: args.algorithm,
        params: JustifyParams {
            line_penalty: args.line_penalty,
            overlap_penalty: args.overlap_penalty,
            explore_variants: explore,
        },
        glue: None,
        stats: args.stats,
    };
    let doc = justify_document(&text, args.width, &font, TextModel::builtin(), &options)?;
    emit_layout(&doc)
}

fn render(args: &RenderArgs) -> Result<(), Failure> {
    let mut text = String::new();
    match args.input.as_ref().filter(|p| p.as_os_str() != "-") {
        Some(path) => {
            text = fs::read_to_string(path).map_err(|e| Failure::new(2, "Io", format!("{}: {e}", path.display())))?
        }
        None => {
            io::stdin().read_to_string(&mut text).map_err(|e| Failure::new(2, "Io", e))?;
        }
    }
    let doc = LayoutDocument::from_json(&text).map_err(|e| Failure::new(2, "BadLayout", e))?;
    emit(&svg::render(&doc), args.output.as_ref())
}

fn fontlint(args: &LintArgs) -> Result<(), Failure> {
    let font = load(&args.font)?;
    let diagnostics = lint_font(&font, TextModel::builtin());
    let listing = if args.json {
        serde_json::to_string_pretty(&diagnostics).expect("diagnostics serialize") + "\n"
    } else {
        diagnostics.iter().map(|d| format!("{d}\n")).collect()
    };
    emit(&listing, None)?;
    let errors = diagnostics.iter().filter(|d| d.severity == Severity::Error).count();
    if errors > 0 {
        return Err(Failure::new(4, "LintFailed", format!("{errors} lint errors")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_errors = match &cli.command {
        Command::Shape(a) => a.format == ErrorFormat::JsonErrors,
        Command::Justify(a) => a.shape.format == ErrorFormat::JsonErrors,
        _ => false,
    };
    let result = match &cli.command {
        Command::Shape(a) => shape(a),
        Command::Justify(a) => justify(a),
        Command::Render(a) => render(a),
        Command::Fontlint(a) => fontlint(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            if json_errors {
                let obj = serde_json::json!({ "error": { "code": f.code, "message": f.message, "exit": f.exit } });
                println!("{obj}");
            }
            ExitCode::from(f.exit)
        }
    }
}
