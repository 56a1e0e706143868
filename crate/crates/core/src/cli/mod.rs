//! Batch front end. [`run_command`] is `main` minus the process: it takes
//! the argument vector and the three standard streams and returns the exit
//! code (0 positive result, 1 negative result, 2 input error).

mod catalog;
mod document;
mod report;

pub use catalog::{Catalog, CatalogEntry, CATALOG_ENV};
pub use document::{parse_documents, ConeDocument, Generators, ParseError};

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{classify, cones_equivalent, homology_3d, EquivalenceOutcome, MomentInput};
use crate::cone::Cone;
use crate::goodness::is_good_facewise;
use crate::reduction::build_reduction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "conetoric", version, about = "Good cones and contact toric classification")]
struct Args {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether each cone is good.
    CheckGood { inputs: Vec<String> },
    /// Classify each cone as a moment cone.
    Classify { inputs: Vec<String> },
    /// Emit the reduction presentation of each cone.
    Construct { inputs: Vec<String> },
    /// Search for a unimodular map between two cones.
    Equiv { inputs: Vec<String> },
    /// First and second cohomology for the edge pair of a rank-2 cone.
    Homology { inputs: Vec<String> },
    /// Inspect the catalog of named cones.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Names and descriptions.
    List,
    /// Print one entry as a document.
    Show { name: String },
    /// Write every entry to `<dir>/<name>.json`.
    Export { dir: PathBuf },
}

/// Inputs are file paths, `-` for standard input, or `@name` for a catalog
/// entry; no inputs means standard input.
pub fn run_command(
    argv: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let dir = std::env::var_os(CATALOG_ENV).map(PathBuf::from);
    run_with_catalog(argv, dir.as_deref(), stdin, stdout, stderr)
}

pub fn run_with_catalog(
    argv: &[String],
    catalog_dir: Option<&Path>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut session = Session {
        format: args.format,
        catalog_dir,
        catalog: None,
        stdin,
        out: String::new(),
        err: String::new(),
    };
    let code = session.run(args.command);
    let _ = stdout.write_all(session.out.as_bytes());
    let _ = stderr.write_all(session.err.as_bytes());
    code
}

struct Item {
    label: String,
    document: ConeDocument,
}

/// Per-document result: text lines, JSON payload and exit code.
struct Outcome {
    lines: Vec<String>,
    value: Value,
    code: i32,
}

impl Outcome {
    fn new(lines: Vec<String>, value: Value, code: i32) -> Outcome {
        Outcome { lines, value, code }
    }

    fn input_error(message: String) -> Outcome {
        Outcome {
            lines: Vec::new(),
            value: json!({ "error": message }),
            code: -EXIT_INPUT,
        }
    }
}

struct Session<'a> {
    format: Format,
    catalog_dir: Option<&'a Path>,
    catalog: Option<Catalog>,
    stdin: &'a mut dyn Read,
    out: String,
    err: String,
}

impl Session<'_> {
    fn run(&mut self, command: Command) -> i32 {
        let (inputs, op): (Vec<String>, fn(&ConeDocument) -> Outcome) = match command {
            Command::Catalog { action } => return self.catalog_command(action),
            Command::Equiv { inputs } => return self.equiv(&inputs),
            Command::CheckGood { inputs } => (inputs, check_good),
            Command::Classify { inputs } => (inputs, classify_document),
            Command::Construct { inputs } => (inputs, construct),
            Command::Homology { inputs } => (inputs, homology),
        };
        let items = match self.load(&inputs) {
            Ok(items) => items,
            Err(code) => return code,
        };
        let outcomes: Vec<(String, Outcome)> =
            items.into_iter().map(|it| (it.label, op(&it.document))).collect();
        self.emit(outcomes)
    }

    fn emit(&mut self, outcomes: Vec<(String, Outcome)>) -> i32 {
        let batch = outcomes.len() != 1;
        let mut code = EXIT_OK;
        let mut values = Vec::new();
        for (label, o) in outcomes {
            if o.code < 0 {
                let msg = o.value["error"].as_str().unwrap_or_default().to_string();
                self.err.push_str(&format!("{label}: {msg}\n"));
                code = code.max(-o.code);
            } else {
                code = code.max(o.code);
            }
            match self.format {
                Format::Text => {
                    for (i, line) in o.lines.iter().enumerate() {
                        if batch && i == 0 {
                            self.out.push_str(&format!("{label}: {line}\n"));
                        } else {
                            self.out.push_str(line);
                            self.out.push('\n');
                        }
                    }
                }
                Format::Json => values.push(json!({ "input": label, "result": o.value })),
            }
        }
        if self.format == Format::Json {
            let v = if batch { Value::Array(values) } else { values.pop().unwrap_or(Value::Null) };
            self.out
                .push_str(&serde_json::to_string_pretty(&v).expect("json values serialize"));
            self.out.push('\n');
        }
        code
    }

    fn catalog(&mut self) -> Result<&Catalog, i32> {
        if self.catalog.is_none() {
            match Catalog::load(self.catalog_dir) {
                Ok(c) => self.catalog = Some(c),
                Err(e) => {
                    self.err.push_str(&format!("catalog: {e}\n"));
                    return Err(EXIT_INPUT);
                }
            }
        }
        Ok(self.catalog.as_ref().expect("loaded"))
    }

    fn load(&mut self, inputs: &[String]) -> Result<Vec<Item>, i32> {
        let default = ["-".to_string()];
        let inputs = if inputs.is_empty() { &default[..] } else { inputs };
        let mut items = Vec::new();
        for input in inputs {
            if let Some(name) = input.strip_prefix('@') {
                let found = self.catalog()?.get(name).map(|e| e.document.clone());
                match found {
                    Some(document) => items.push(Item {
                        label: name.to_string(),
                        document,
                    }),
                    None => {
                        self.err.push_str(&format!("no catalog entry named `{name}`\n"));
                        return Err(EXIT_INPUT);
                    }
                }
                continue;
            }
            let (source, text) = if input == "-" {
                let mut text = String::new();
                if let Err(e) = self.stdin.read_to_string(&mut text) {
                    self.err.push_str(&format!("<stdin>: {e}\n"));
                    return Err(EXIT_INPUT);
                }
                ("<stdin>".to_string(), text)
            } else {
                match std::fs::read_to_string(input) {
                    Ok(t) => (input.clone(), t),
                    Err(e) => {
                        self.err.push_str(&format!("{input}: {e}\n"));
                        return Err(EXIT_INPUT);
                    }
                }
            };
            let docs = match parse_documents(&text) {
                Ok(d) => d,
                Err(e) => {
                    self.err
                        .push_str(&format!("{source}:{}:{}: {}\n", e.line, e.column, e.message));
                    return Err(EXIT_INPUT);
                }
            };
            let many = docs.len() > 1;
            for (i, document) in docs.into_iter().enumerate() {
                let label = match &document.name {
                    Some(n) => n.clone(),
                    None if many => format!("{source}[{i}]"),
                    None => source.clone(),
                };
                items.push(Item { label, document });
            }
        }
        Ok(items)
    }

    fn equiv(&mut self, inputs: &[String]) -> i32 {
        let items = match self.load(inputs) {
            Ok(items) => items,
            Err(code) => return code,
        };
        if items.len() != 2 {
            self.err
                .push_str(&format!("equiv needs exactly two cones, got {}\n", items.len()));
            return EXIT_INPUT;
        }
        let label = format!("{} ~ {}", items[0].label, items[1].label);
        let outcome = match (items[0].document.to_cone(), items[1].document.to_cone()) {
            (Ok(a), Ok(b)) => match cones_equivalent(&a, &b) {
                Ok(out) => {
                    let code = match out {
                        EquivalenceOutcome::Equivalent(_) => EXIT_OK,
                        EquivalenceOutcome::NotEquivalent => EXIT_NEGATIVE,
                        EquivalenceOutcome::CapExceeded { .. } => EXIT_INPUT,
                    };
                    Outcome::new(vec![report::equivalence_line(&out)], to_value(&out), code)
                }
                Err(e) => Outcome::input_error(e.to_string()),
            },
            (Err(e), _) | (_, Err(e)) => Outcome::input_error(e.to_string()),
        };
        // a single pair is never a batch
        self.emit(vec![(label, outcome)])
    }

    fn catalog_command(&mut self, action: CatalogAction) -> i32 {
        let format = self.format;
        let catalog = match self.catalog() {
            Ok(c) => c.clone(),
            Err(code) => return code,
        };
        match action {
            CatalogAction::List => match format {
                Format::Text => {
                    for e in catalog.entries() {
                        self.out.push_str(&format!("{}\t{}\n", e.name(), e.description));
                    }
                }
                Format::Json => {
                    let docs: Vec<_> = catalog.entries().iter().map(|e| &e.document).collect();
                    self.out.push_str(&serde_json::to_string_pretty(&docs).expect("serialize"));
                    self.out.push('\n');
                }
            },
            CatalogAction::Show { name } => match catalog.get(&name) {
                Some(e) => {
                    self.out
                        .push_str(&serde_json::to_string_pretty(&e.document).expect("serialize"));
                    self.out.push('\n');
                }
                None => {
                    self.err.push_str(&format!("no catalog entry named `{name}`\n"));
                    return EXIT_INPUT;
                }
            },
            CatalogAction::Export { dir } => match catalog.export(&dir) {
                Ok(paths) => {
                    for p in paths {
                        self.out.push_str(&format!("{}\n", p.display()));
                    }
                }
                Err(e) => {
                    self.err.push_str(&format!("{}: {e}\n", dir.display()));
                    return EXIT_INPUT;
                }
            },
        }
        EXIT_OK
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn with_cone(doc: &ConeDocument, f: impl FnOnce(Cone) -> Outcome) -> Outcome {
    match doc.to_cone() {
        Ok(c) => f(c),
        Err(e) => Outcome::input_error(e.to_string()),
    }
}

fn not_full_dimensional(cone: &Cone, verdict: &str) -> Outcome {
    let line = format!(
        "{verdict}: cone is not full-dimensional (dimension {} in rank {})",
        cone.dimension(),
        cone.rank()
    );
    Outcome::new(
        vec![line],
        json!({ "full_dimensional": false, "dimension": cone.dimension() }),
        EXIT_NEGATIVE,
    )
}

fn check_good(doc: &ConeDocument) -> Outcome {
    with_cone(doc, |cone| {
        if !cone.is_full_dimensional() {
            return not_full_dimensional(&cone, "NOT GOOD");
        }
        let report = is_good_facewise(&cone).expect("full-dimensional");
        let mut lines = vec![report::goodness_summary(&report)];
        lines.extend(report::goodness_details(&report, &cone));
        let code = if report.is_good { EXIT_OK } else { EXIT_NEGATIVE };
        Outcome::new(lines, to_value(&report), code)
    })
}

fn classify_document(doc: &ConeDocument) -> Outcome {
    with_cone(doc, |cone| {
        let input = match MomentInput::new(cone, doc.winding) {
            Ok(i) => i,
            Err(e) => return Outcome::input_error(e.to_string()),
        };
        match classify(&input) {
            Ok(record) => {
                let code = if record.is_realizable() { EXIT_OK } else { EXIT_NEGATIVE };
                Outcome::new(vec![report::classification_line(&record)], to_value(&record), code)
            }
            Err(e) => Outcome::input_error(e.to_string()),
        }
    })
}

fn construct(doc: &ConeDocument) -> Outcome {
    with_cone(doc, |cone| {
        if !cone.is_full_dimensional() {
            return not_full_dimensional(&cone, "NO REDUCTION");
        }
        match build_reduction(&cone) {
            Ok(data) => {
                let code = if data.is_free() { EXIT_OK } else { EXIT_NEGATIVE };
                Outcome::new(report::reduction_lines(&data), to_value(&data), code)
            }
            Err(e) => Outcome::new(
                vec![format!("NO REDUCTION: {e}")],
                json!({ "error": e.to_string() }),
                EXIT_NEGATIVE,
            ),
        }
    })
}

/// Edge pair of a rank-2 cone: the two rays of a wedge, or both directions
/// of the boundary line of a half-plane.
fn homology(doc: &ConeDocument) -> Outcome {
    with_cone(doc, |cone| {
        if cone.rank() != 2 {
            return Outcome::input_error(format!("homology needs rank 2, got {}", cone.rank()));
        }
        let pair = match (cone.rays(), cone.lineality_basis()) {
            ([a, b], []) => (a.clone(), b.clone()),
            ([_], [l]) => (l.clone(), -l),
            _ => {
                return Outcome::input_error(
                    "homology needs a wedge or a half-plane (a cone with two edges)".into(),
                )
            }
        };
        match homology_3d(&pair.0, &pair.1) {
            Ok((h1, h2)) => Outcome::new(
                vec![format!("H1={h1} H2={h2}")],
                json!({ "mu1": pair.0, "mu2": pair.1, "h1": h1, "h2": h2 }),
                EXIT_OK,
            ),
            Err(e) => Outcome::input_error(e.to_string()),
        }
    })
}
