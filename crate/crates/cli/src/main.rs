//! `twonormal`: validate triangulations, enumerate and classify surfaces,
//! run the built-in self-test, compare thick-level lists.

mod census;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use twonormal::selftest::{run_selftest, SelftestOptions};
use twonormal::{
    classify, compare_ghs, compute_skeleton, coordinate_layout, enumerate_vertex_surfaces,
    is_admissible, AdmissibilityMode, AdmissibilityOptions, EnumerationOptions, SymbolicGhs,
    Triangulation,
};

use census::{surface_record, Census, TriangulationSummary};

/// Largest curve length the self-test will enumerate.
const MAX_CURVE_LENGTH: u32 = 32;

#[derive(Parser)]
#[command(
    name = "twonormal",
    version,
    about = "Normal, almost normal and 2-normal surface enumeration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Normal,
    Almost,
    #[value(name = "2normal")]
    TwoNormal,
}

impl From<Mode> for AdmissibilityMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Normal => AdmissibilityMode::Normal,
            Mode::Almost => AdmissibilityMode::AlmostNormal,
            Mode::TwoNormal => AdmissibilityMode::TwoNormal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args)]
struct Input {
    /// Triangulation file, or a built-in name (`single`, `double2`)
    input: String,
    /// Refuse inputs with more tetrahedra than this
    #[arg(long, default_value_t = 8)]
    max_tets: usize,
    /// Write output here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a triangulation and print its skeleton
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Fail unless every face is glued
        #[arg(long)]
        require_closed: bool,
    },
    /// Enumerate vertex surfaces of a closed triangulation
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "normal")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Let the two tubes of a 2-normal surface be nested
        #[arg(long)]
        allow_nested_tubes: bool,
    },
    /// Classify one coordinate vector, with optional tubes
    Classify {
        #[command(flatten)]
        input: Input,
        /// Coordinates in layout order, separated by spaces or commas
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Tube as `tet:a-b:k-l`, optionally `:inside-out`; repeatable
        #[arg(long = "tube")]
        tubes: Vec<String>,
        #[arg(long, value_enum, default_value = "2normal")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        allow_nested_tubes: bool,
    },
    /// Run the oracle and consistency checks
    Selftest {
        /// Longest curve length to enumerate on one tetrahedron
        #[arg(long, default_value_t = 24)]
        max_curve_length: u32,
        /// Random systems for the extreme ray comparison
        #[arg(long, default_value_t = 40)]
        random_systems: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Compare two thick-level lists: levels separated by `/`, Euler
    /// characteristics within a level by `,`
    GhsCompare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

/// Failure with its exit status: 1 constraint, 2 parse, 3 resource guard.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn constraint(message: impl ToString) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }

    fn parse(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn closed_pipe() -> Self {
        Failure {
            code: 0,
            message: String::new(),
        }
    }

    fn guard(message: impl ToString) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        if e.chain().any(is_broken_pipe) {
            return Failure::closed_pipe();
        }
        Failure::constraint(format!("{e:#}"))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::closed_pipe();
        }
        Failure::constraint(e)
    }
}

/// The reader went away (e.g. `| head`); not worth reporting.
fn is_broken_pipe(e: &(dyn std::error::Error + 'static)) -> bool {
    let kind = if let Some(e) = e.downcast_ref::<io::Error>() {
        Some(e.kind())
    } else if let Some(e) = e.downcast_ref::<serde_json::Error>() {
        e.io_error_kind()
    } else if let Some(e) = e.downcast_ref::<csv::Error>() {
        match e.kind() {
            csv::ErrorKind::Io(e) => Some(e.kind()),
            _ => None,
        }
    } else {
        None
    };
    kind == Some(io::ErrorKind::BrokenPipe)
}

type Outcome = Result<(), Failure>;

fn load(input: &Input) -> Result<Triangulation, Failure> {
    let path = Path::new(&input.input);
    let tri = if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
        Triangulation::parse(&text)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?
    } else if let Some(tri) = Triangulation::builtin(&input.input) {
        tri
    } else {
        return Err(Failure::parse(format!(
            "`{}` is neither a readable file nor one of the built-in triangulations {:?}",
            input.input,
            Triangulation::BUILTIN_NAMES
        )));
    };
    Ok(tri)
}

fn guard(tri: &Triangulation, input: &Input) -> Outcome {
    if tri.tet_count() > input.max_tets {
        return Err(Failure::guard(format!(
            "{} tetrahedra exceed --max-tets {}",
            tri.tet_count(),
            input.max_tets
        )));
    }
    Ok(())
}

fn require_closed(tri: &Triangulation) -> Outcome {
    if !tri.is_closed() {
        return Err(Failure::constraint("triangulation has unglued faces"));
    }
    Ok(())
}

fn sink(output: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match output {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                Failure::constraint(format!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct ValidateReport {
    #[serde(flatten)]
    summary: TriangulationSummary,
    closed: bool,
    edge_degrees: Vec<usize>,
    reversed_edges: bool,
}

fn validate(input: &Input, format: Format, closed: bool) -> Outcome {
    let tri = load(input)?;
    let sk = compute_skeleton(&tri);
    let report = ValidateReport {
        summary: TriangulationSummary::new(&tri),
        closed: tri.is_closed(),
        edge_degrees: sk.edges.iter().map(|e| e.degree()).collect(),
        reversed_edges: sk.has_reversed_edge(),
    };
    let mut out = sink(&input.output)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).map_err(anyhow::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "V,E,F,T,closed,edge_degrees")?;
            let s = &report.summary;
            let degrees: Vec<String> = report.edge_degrees.iter().map(usize::to_string).collect();
            writeln!(
                out,
                "{},{},{},{},{},{}",
                s.v,
                s.e,
                s.f,
                s.t,
                report.closed,
                degrees.join(" ")
            )?;
        }
        Format::Text => {
            let s = &report.summary;
            writeln!(out, "V={} E={} F={} T={}", s.v, s.e, s.f, s.t)?;
            writeln!(out, "closed: {}", if report.closed { "yes" } else { "no" })?;
            for (i, d) in report.edge_degrees.iter().enumerate() {
                writeln!(out, "edge {i}: degree {d}")?;
            }
            if report.reversed_edges {
                writeln!(
                    out,
                    "warning: some edge is identified with itself in reverse"
                )?;
            }
        }
    }
    out.flush()?;
    if closed {
        require_closed(&tri)?;
    }
    Ok(())
}

fn enumerate(input: &Input, mode: Mode, format: Format, allow_nested: bool) -> Outcome {
    let tri = load(input)?;
    guard(&tri, input)?;
    require_closed(&tri)?;
    let mode = AdmissibilityMode::from(mode);
    let layout = coordinate_layout(&tri);
    let options = EnumerationOptions {
        allow_nested_tubes: allow_nested,
        threads: None,
    };
    let found = enumerate_vertex_surfaces(&tri, mode, &options).map_err(Failure::constraint)?;
    let surfaces = found
        .iter()
        .map(|s| surface_record(&tri, &layout, &s.coordinates(), s.tubes()))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let census = Census {
        version: env!("CARGO_PKG_VERSION").to_string(),
        mode: mode.name().to_string(),
        triangulation: TriangulationSummary::new(&tri),
        layout: layout.labels(),
        layout_meta: layout.meta().clone(),
        surfaces,
    };
    let mut out = sink(&input.output)?;
    match format {
        Format::Json => census::write_json(&census, &mut out)?,
        Format::Csv => census::write_csv(&census, &mut out)?,
        Format::Text => census::write_text(&census, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn parse_vector(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<u64>()
                .map_err(|_| Failure::parse(format!("bad coordinate `{x}`")))
        })
        .collect()
}

#[derive(Serialize)]
struct Rejection {
    admissible: bool,
    violation: twonormal::Violation,
}

fn classify_cmd(
    input: &Input,
    vector: &str,
    tubes: &[String],
    mode: Mode,
    format: Format,
    allow_nested: bool,
) -> Outcome {
    let tri = load(input)?;
    guard(&tri, input)?;
    require_closed(&tri)?;
    let layout = coordinate_layout(&tri);
    let v = parse_vector(vector)?;
    let tubes = tubes
        .iter()
        .map(|t| census::parse_tube(t).map_err(|e| Failure::parse(format!("{e:#}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let options = AdmissibilityOptions {
        allow_nested_tubes: allow_nested,
    };
    let mut out = sink(&input.output)?;
    let verdict = is_admissible(&layout, &v, &tubes, mode.into(), &options)
        .and_then(|_| classify(&layout, &v, &tubes));
    match verdict {
        Ok(_) => {
            let record = surface_record(&tri, &layout, &v, &tubes)?;
            match format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &record).map_err(anyhow::Error::from)?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.serialize(census::CsvRow::new(0, &record))
                        .map_err(anyhow::Error::from)?;
                    w.flush()?;
                }
                Format::Text => writeln!(out, "{}", census::describe(0, &record))?,
            }
            out.flush()?;
            Ok(())
        }
        Err(violation) => {
            match format {
                Format::Json => {
                    let r = Rejection {
                        admissible: false,
                        violation: violation.clone(),
                    };
                    serde_json::to_writer_pretty(&mut out, &r).map_err(anyhow::Error::from)?;
                    writeln!(out)?;
                }
                _ => writeln!(out, "rejected: {} ({violation})", violation.code())?,
            }
            out.flush()?;
            Err(Failure::constraint(format!("not admissible: {violation}")))
        }
    }
}

fn selftest(max_curve_length: u32, random_systems: usize, inject_fault: bool) -> Outcome {
    if max_curve_length > MAX_CURVE_LENGTH {
        return Err(Failure::guard(format!(
            "--max-curve-length {max_curve_length} exceeds {MAX_CURVE_LENGTH}"
        )));
    }
    let options = SelftestOptions {
        max_curve_length,
        random_systems,
        inject_fault,
        ..Default::default()
    };
    let report = run_selftest(&options);
    let mut out = io::stdout().lock();
    for c in &report.checks {
        let status = if c.passed { "ok  " } else { "FAIL" };
        writeln!(out, "{status} {}: {}", c.name, c.detail)?;
    }
    writeln!(out, "dodecagon families: {}", report.dodecagon_families)?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::constraint(format!(
            "check `{}` failed: {}",
            c.name, c.detail
        ))),
    }
}

fn ghs_compare(a: &str, b: &str) -> Outcome {
    let a: SymbolicGhs = a.parse().map_err(Failure::parse)?;
    let b: SymbolicGhs = b.parse().map_err(Failure::parse)?;
    let word = match compare_ghs(&a, &b) {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    };
    println!(
        "{word} ({:?} vs {:?})",
        a.sorted_complexities(),
        b.sorted_complexities()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate {
            input,
            format,
            require_closed,
        } => validate(input, *format, *require_closed),
        Command::Enumerate {
            input,
            mode,
            format,
            allow_nested_tubes,
        } => enumerate(input, *mode, *format, *allow_nested_tubes),
        Command::Classify {
            input,
            vector,
            tubes,
            mode,
            format,
            allow_nested_tubes,
        } => classify_cmd(input, vector, tubes, *mode, *format, *allow_nested_tubes),
        Command::Selftest {
            max_curve_length,
            random_systems,
            inject_fault,
        } => selftest(*max_curve_length, *random_systems, *inject_fault),
        Command::GhsCompare { a, b } => ghs_compare(a, b),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("twonormal: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
