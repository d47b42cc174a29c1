//! Command-line front end.
//!
//! Exit codes: 0 success, 1 falsification or mismatch, 2 invalid input,
//! 3 oracle cap exceeded, 4 input not classifiable. Machine-readable output
//! goes to stdout, diagnostics to stderr.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{Classifier, ClassifyError, Gate};
use crate::constructive::constructive_spectrum;
use crate::families::{FamilySpec, TriangleEdge};
use crate::graph::{parse_edge_list, to_edge_list, Graph, VertexSeq};
use crate::oracle::{cycle_spectrum, CycleSpectrum, OracleError, DEFAULT_ORACLE_CAP};
use crate::verify::{Fault, Suite, Verifier};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_UNCLASSIFIABLE: i32 = 4;

/// Environment variable overriding the oracle vertex cap.
pub const ORACLE_CAP_ENV: &str = "APK_ORACLE_CAP";

#[derive(Parser, Debug)]
#[command(name = "apk", version, about = "Almost-planar graph families: generators, cycle spectra, classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a family instance as an edge list plus role map.
    Gen(GenArgs),
    /// Cycle spectrum of a graph by exhaustive search and/or construction.
    Spectrum(SpectrumArgs),
    /// Run the theorem suites against the oracle.
    Verify(VerifyArgs),
    /// Gate and classify a graph.
    Classify(InputArgs),
    /// Convert an edge list to DOT or JSON.
    Export(ExportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyName {
    Mobius,
    Bicycle,
    A,
    Wheel,
    K33chain,
    H1,
    H2,
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Rim indices whose s-spoke is removed.
    #[arg(long, value_delimiter = ',')]
    remove_s: Vec<usize>,
    /// Rim indices whose t-spoke is removed.
    #[arg(long, value_delimiter = ',')]
    remove_t: Vec<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Triangle edges to delete (H families), e.g. `ab,bc`.
    #[arg(long, value_delimiter = ',')]
    delete: Vec<String>,
    /// Triangle edges to add (K3,3 chain).
    #[arg(long, value_delimiter = ',')]
    extra: Vec<String>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Output prefix; writes PREFIX.edges and PREFIX.roles.json. Without it
    /// the edge list goes to stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Also write PREFIX.dot (or print DOT instead of the edge list).
    #[arg(long)]
    dot: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Oracle,
    Constructive,
    Both,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Edge-list file, or `-` for stdin.
    input: PathBuf,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "oracle")]
    method: Method,
    /// Include one witness cycle per length.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    /// Where a failing graph is written.
    #[arg(long, default_value = "counterexample.edges")]
    counterexample: PathBuf,
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "dot")]
    format: ExportFormat,
}

/// Error carrying the exit code it maps to.
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Exit {
            code,
            message: message.into(),
        }
    }
}

impl From<OracleError> for Exit {
    fn from(e: OracleError) -> Self {
        Exit::new(EXIT_CAP, e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(exit) => {
            if !exit.message.is_empty() {
                eprintln!("error: {}", exit.message);
            }
            exit.code
        }
    }
}

fn run(cli: Cli) -> Result<(), Exit> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Export(args) => cmd_export(args),
    }
}

fn oracle_cap() -> Result<usize, Exit> {
    match std::env::var(ORACLE_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Exit::new(EXIT_INVALID, format!("{ORACLE_CAP_ENV}={v:?} is not a vertex count"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn triangle_set(items: &[String]) -> Result<BTreeSet<TriangleEdge>, Exit> {
    items
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|e: crate::families::FamilyError| Exit::new(EXIT_INVALID, e.to_string())))
        .collect()
}

fn build_spec(a: &SpecArgs) -> Result<FamilySpec, Exit> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Exit::new(EXIT_INVALID, format!("--family {:?} requires --{flag}", a.family)))
    };
    let spec = match a.family {
        FamilyName::Mobius => FamilySpec::Mobius { k: need(a.k, "k")? },
        FamilyName::Bicycle => FamilySpec::Bicycle {
            n: need(a.n, "n")?,
            removed_s: a.remove_s.iter().copied().collect(),
            removed_t: a.remove_t.iter().copied().collect(),
        },
        FamilyName::A => FamilySpec::a_graph(need(a.n, "n")?),
        FamilyName::Wheel => FamilySpec::Wheel { n: need(a.n, "n")? },
        FamilyName::K33chain => FamilySpec::K33Chain {
            extra_edges: triangle_set(&a.extra)?,
        },
        FamilyName::H1 | FamilyName::H2 => {
            let (p, q, r) = (need(a.p, "p")?, need(a.q, "q")?, need(a.r, "r")?);
            let deleted = triangle_set(&a.delete)?;
            if a.family == FamilyName::H1 {
                FamilySpec::H1 { p, q, r, deleted }
            } else {
                FamilySpec::H2 { p, q, r, deleted }
            }
        }
    };
    spec.validate().map_err(|e| Exit::new(EXIT_INVALID, e.to_string()))?;
    Ok(spec)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Exit> {
    fs::write(path, contents).map_err(|e| Exit::new(EXIT_INVALID, format!("cannot write {}: {e}", path.display())))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_gen(args: GenArgs) -> Result<(), Exit> {
    let spec = build_spec(&args.spec)?;
    let inst = spec.generate().map_err(|e| Exit::new(EXIT_INVALID, e.to_string()))?;
    for w in &inst.warnings {
        eprintln!("warning: {w}");
    }
    match &args.out {
        Some(prefix) => {
            let roles = serde_json::to_string_pretty(&inst.role_map_json()).expect("json");
            write_file(&with_suffix(prefix, ".edges"), &to_edge_list(&inst.graph))?;
            write_file(&with_suffix(prefix, ".roles.json"), &(roles + "\n"))?;
            if args.dot {
                write_file(&with_suffix(prefix, ".dot"), &inst.to_dot())?;
            }
            eprintln!("{spec}: n = {}, m = {}", inst.graph.n(), inst.graph.m());
        }
        None if args.dot => emit(&inst.to_dot()),
        None => emit(&to_edge_list(&inst.graph)),
    }
    Ok(())
}

fn read_graph(input: &Path) -> Result<Graph, Exit> {
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Exit::new(EXIT_INVALID, format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| Exit::new(EXIT_INVALID, format!("cannot read {}: {e}", input.display())))?
    };
    parse_edge_list(&text).map_err(|e| Exit::new(EXIT_INVALID, format!("{}: {e}", input.display())))
}

/// Writes to stdout, ignoring a closed pipe so `apk ... | head` exits quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json(v: &serde_json::Value) {
    emit(&(serde_json::to_string_pretty(v).expect("json") + "\n"));
}

/// Constructive spectrum of `g`, with witnesses mapped back to input labels.
fn constructive_for(g: &Graph) -> Result<(FamilySpec, CycleSpectrum), Exit> {
    let c = Classifier::new().classify(g).map_err(|e| match e {
        ClassifyError::CapExceeded { .. } => Exit::new(EXIT_CAP, e.to_string()),
        ClassifyError::NoFamily => Exit::new(EXIT_FALSIFIED, e.to_string()),
    })?;
    let (Gate::AlmostPlanar, Some(spec), Some(iso)) = (c.gate, c.matched_spec, c.iso_map) else {
        return Err(Exit::new(
            EXIT_UNCLASSIFIABLE,
            format!("no family for constructive spectrum (gate: {:?})", c.gate),
        ));
    };
    let inst = spec.generate().map_err(|e| Exit::new(EXIT_INVALID, e.to_string()))?;
    let built = constructive_spectrum(&inst).map_err(|e| Exit::new(EXIT_UNCLASSIFIABLE, e.to_string()))?;
    let mut back = vec![0; iso.len() + 1];
    for (i, &w) in iso.iter().enumerate() {
        back[w] = i + 1;
    }
    let witnesses = built
        .witnesses
        .iter()
        .map(|(&l, w)| (l, VertexSeq(w.0.iter().map(|&v| back[v]).collect())))
        .collect();
    Ok((
        spec,
        CycleSpectrum {
            witnesses,
            ..built
        },
    ))
}

fn spectrum_json(s: &CycleSpectrum, g: &Graph, source: &str, witnesses: bool) -> serde_json::Value {
    let mut v = s.to_json(g, source);
    if !witnesses {
        v.as_object_mut().expect("object").remove("witnesses");
    }
    v
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Exit> {
    let g = read_graph(&args.input.input)?;
    let cap = oracle_cap()?;
    match args.method {
        Method::Oracle => {
            let s = cycle_spectrum(&g, cap)?;
            print_json(&spectrum_json(&s, &g, "oracle", args.witnesses));
        }
        Method::Constructive => {
            let (spec, s) = constructive_for(&g)?;
            let mut v = spectrum_json(&s, &g, "constructive", args.witnesses);
            v["family"] = serde_json::to_value(&spec).expect("json");
            print_json(&v);
        }
        Method::Both => {
            let truth = cycle_spectrum(&g, cap)?;
            let (spec, built) = constructive_for(&g)?;
            let agree = truth.lengths == built.lengths;
            let mut v = spectrum_json(&truth, &g, "both", args.witnesses);
            v["family"] = serde_json::to_value(&spec).expect("json");
            v["constructive_lengths"] = serde_json::json!(built.lengths);
            v["agree"] = serde_json::json!(agree);
            print_json(&v);
            if !agree {
                return Err(Exit::new(
                    EXIT_FALSIFIED,
                    format!("oracle {truth} differs from construction {built}"),
                ));
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Exit> {
    let suite: Suite = args.suite.parse().map_err(|e: String| Exit::new(EXIT_INVALID, e))?;
    let cap = oracle_cap()?;
    if args.max_n > cap {
        return Err(Exit::new(
            EXIT_CAP,
            format!("--max-n {} exceeds the oracle cap {cap} (set {ORACLE_CAP_ENV})", args.max_n),
        ));
    }
    let mut verifier = Verifier::new(args.max_n, cap);
    verifier.fault = args
        .inject_fault
        .as_deref()
        .map(str::parse::<Fault>)
        .transpose()
        .map_err(|e| Exit::new(EXIT_INVALID, e))?;
    let results = verifier.run(suite);
    for r in &results {
        emit(&format!("{r}\n"));
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    if failed.is_empty() {
        emit(&format!("all {} checks passed\n", results.len()));
        return Ok(());
    }
    if let Some(g) = failed.iter().find_map(|r| r.counterexample.as_ref()) {
        write_file(&args.counterexample, &to_edge_list(g))?;
        eprintln!("counterexample written to {}", args.counterexample.display());
    }
    Err(Exit::new(EXIT_FALSIFIED, format!("{} of {} checks failed", failed.len(), results.len())))
}

fn cmd_classify(args: InputArgs) -> Result<(), Exit> {
    let g = read_graph(&args.input)?;
    match Classifier::new().classify(&g) {
        Ok(c) => {
            print_json(&c.to_json());
            Ok(())
        }
        Err(e @ ClassifyError::CapExceeded { .. }) => Err(Exit::new(EXIT_CAP, e.to_string())),
        Err(e @ ClassifyError::NoFamily) => {
            print_json(&serde_json::json!({
                "schema": crate::SCHEMA_VERSION,
                "gate": Gate::AlmostPlanar,
                "spec": null,
                "falsification": e.to_string(),
            }));
            Err(Exit::new(EXIT_FALSIFIED, e.to_string()))
        }
    }
}

fn cmd_export(args: ExportArgs) -> Result<(), Exit> {
    let g = read_graph(&args.input.input)?;
    match args.format {
        ExportFormat::Dot => {
            let mut out = String::from("graph G {\n");
            for v in g.vertices() {
                out.push_str(&format!("  {v};\n"));
            }
            for e in g.edges() {
                out.push_str(&format!("  {} -- {};\n", e.u, e.v));
            }
            out.push_str("}\n");
            emit(&out);
        }
        ExportFormat::Json => print_json(&serde_json::json!({
            "schema": crate::SCHEMA_VERSION,
            "n": g.n(),
            "m": g.m(),
            "edges": g.edges().map(|e| [e.u, e.v]).collect::<Vec<_>>(),
        })),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        main_with_args(std::iter::once("apk").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(code(&["gen", "--family", "mobius"]), EXIT_INVALID);
        assert_eq!(code(&["gen", "--family", "mobius", "--k", "2"]), EXIT_INVALID);
        assert_eq!(code(&["gen", "--bogus"]), EXIT_INVALID);
        assert_eq!(code(&["verify", "--suite", "nope"]), EXIT_INVALID);
    }

    #[test]
    fn help_exits_0() {
        assert_eq!(code(&["--help"]), EXIT_OK);
    }

    #[test]
    fn verify_over_cap_exits_3() {
        assert_eq!(code(&["verify", "--max-n", "40"]), EXIT_CAP);
    }

    #[test]
    fn suffixes() {
        assert_eq!(with_suffix(Path::new("out/v8"), ".edges"), PathBuf::from("out/v8.edges"));
    }
}
