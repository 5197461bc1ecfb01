//! Command-line surface for the cycle-certificate engine: closed-form graph
//! statistics, certificate generation, whole-spectrum coverage runs,
//! construction-blind verification, and edge-list export.
//!
//! Exit codes are a stable contract: 0 on success, 1 when verification or
//! coverage fails, 2 on usage or parse errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pancycle::cert::{
    render_cycle_edgelist, render_graph_edgelist, CertificateDocument, DocumentError,
};
use pancycle::chain::{base_certificate, certificate_in, ChainError, CycleCertificate};
use pancycle::product::{build_mesh_chain, count_edges_by_enumeration, graph_stats, MeshChain};
use pancycle::verify::{verify_cycle, CoverageReport, LengthStatus};

/// Exit code for verification and coverage failures.
const EXIT_FAILURE: u8 = 1;
/// Exit code for usage and parse errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "pancycle",
    version,
    about = "Cycle certificates for powers of the 9-vertex ring-complement graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print closed-form graph statistics, optionally cross-checked by
    /// explicit enumeration (n ≤ 3).
    Stats {
        /// Power of the base graph.
        #[arg(long)]
        n: usize,
        /// Also count edges by enumeration and report MATCH or MISMATCH.
        #[arg(long)]
        enumerate: bool,
    },
    /// Generate one verified cycle certificate.
    Gen {
        /// Power of the base graph.
        #[arg(long)]
        n: usize,
        /// Cycle length, between 3 and 9^n.
        #[arg(long)]
        length: usize,
        /// Output format: the certificate document or its edge list.
        #[arg(long, value_enum, default_value_t = GenFormat::Json)]
        format: GenFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate and verify certificates for every length 3..=9^n.
    Cover {
        /// Power of the base graph.
        #[arg(long)]
        n: usize,
        /// Directory for the JSON coverage report; no file when omitted.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Worker threads for generation and verification.
        #[arg(long, env = "PANCYCLE_WORKERS", default_value_t = 1)]
        parallel: usize,
    },
    /// Re-verify a stored certificate document, construction-blind.
    Verify {
        /// Path of the certificate document.
        #[arg(long)]
        input: PathBuf,
        /// Also require the current schema version and a consistent length
        /// field.
        #[arg(long)]
        strict: bool,
    },
    /// Export the full edge list of a small power graph (n ≤ 3).
    ExportGraph {
        /// Power of the base graph.
        #[arg(long)]
        n: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Output formats of `gen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    /// The versioned certificate document.
    Json,
    /// The cycle's edges in traversal order, one `u v` line per step.
    #[value(name = "edgelist-path")]
    EdgelistPath,
}

/// A command failure: what to print on stderr and which code to exit with.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Stats { n, enumerate } => cmd_stats(n, enumerate),
        Command::Gen {
            n,
            length,
            format,
            out,
        } => cmd_gen(n, length, format, out.as_deref()),
        Command::Cover {
            n,
            out_dir,
            parallel,
        } => cmd_cover(n, out_dir.as_deref(), parallel),
        Command::Verify { input, strict } => cmd_verify(&input, strict),
        Command::ExportGraph { n, out } => cmd_export_graph(n, out.as_deref()),
    }
}

/// Writes to the file when given, otherwise to stdout.
fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_stats(n: usize, enumerate: bool) -> Result<(), Failure> {
    let stats = graph_stats(n).map_err(|e| Failure::usage(e.to_string()))?;
    println!(
        "{} vertices, {} edges, {}-regular",
        stats.vertex_count, stats.edge_count, stats.regularity
    );
    if enumerate {
        let counted = count_edges_by_enumeration(n)
            .map_err(|e| Failure::usage(format!("--enumerate is limited to small powers: {e}")))?;
        if counted == stats.edge_count {
            println!("enumeration: MATCH ({counted} = {})", stats.edge_count);
        } else {
            println!("enumeration: MISMATCH ({counted} != {})", stats.edge_count);
            return Err(Failure::failed(format!(
                "enumerated edge count {counted} contradicts the closed form {}",
                stats.edge_count
            )));
        }
    }
    Ok(())
}

/// Builds the certificate for one length, reusing a prebuilt chain for
/// powers of 2 and higher.
fn generate(
    n: usize,
    chain: Option<&MeshChain>,
    length: usize,
) -> Result<CycleCertificate, ChainError> {
    match chain {
        None if n == 1 => base_certificate(length),
        None => unreachable!("chain is built for every n >= 2"),
        Some(chain) => certificate_in(chain, length),
    }
}

/// Maps a generation error to its exit class: internal verification
/// failures are failures, everything else is bad input.
fn generation_failure(err: &ChainError) -> Failure {
    match err {
        ChainError::Verification { .. } | ChainError::BaseCycleMissing { .. } => {
            Failure::failed(format!("generation failed: {err}"))
        }
        _ => Failure::usage(err.to_string()),
    }
}

fn build_chain(n: usize) -> Result<Option<MeshChain>, Failure> {
    match n {
        0 => Err(Failure::usage("the power must be at least 1")),
        1 => Ok(None),
        _ => Ok(Some(
            build_mesh_chain(n).map_err(|e| Failure::usage(e.to_string()))?,
        )),
    }
}

fn cmd_gen(n: usize, length: usize, format: GenFormat, out: Option<&Path>) -> Result<(), Failure> {
    let chain = build_chain(n)?;
    let cert = generate(n, chain.as_ref(), length).map_err(|e| generation_failure(&e))?;
    // Never emit an unverified certificate: the generators verify
    // internally, and this final check keeps that property even if they
    // regress.
    verify_cycle(&cert)
        .map_err(|e| Failure::failed(format!("generated certificate failed verification: {e}")))?;
    let content = match format {
        GenFormat::Json => CertificateDocument::from_certificate(&cert).to_json(),
        GenFormat::EdgelistPath => render_cycle_edgelist(&cert),
    };
    emit(out, &content)
}

fn cmd_cover(n: usize, out_dir: Option<&Path>, parallel: usize) -> Result<(), Failure> {
    if parallel == 0 {
        return Err(Failure::usage("--parallel needs at least one worker"));
    }
    let chain = build_chain(n)?;
    let max = 9usize
        .checked_pow(n as u32)
        .ok_or_else(|| Failure::usage(format!("9^{n} does not fit this machine's word size")))?;
    let lengths: Vec<usize> = (3..=max).collect();
    let workers = parallel.min(lengths.len().max(1));

    // Fan lengths across the workers round-robin; each worker generates and
    // then re-verifies, construction-blind, every length it owns.
    let chain_ref = chain.as_ref();
    let statuses: BTreeMap<usize, LengthStatus> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lengths = &lengths;
                scope.spawn(move || {
                    lengths
                        .iter()
                        .skip(w)
                        .step_by(workers)
                        .map(|&length| {
                            let status = match generate(n, chain_ref, length) {
                                Ok(cert) => match verify_cycle(&cert) {
                                    Ok(()) => LengthStatus::Verified,
                                    Err(e) => LengthStatus::Failed(e.to_string()),
                                },
                                Err(e) => LengthStatus::Failed(format!("generation: {e}")),
                            };
                            (length, status)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("coverage workers do not panic"))
            .collect()
    });

    let report = CoverageReport::from_statuses(n, statuses);
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(format!("coverage-n{n}.json"));
        let mut body =
            serde_json::to_string_pretty(&report).expect("coverage reports serialize infallibly");
        body.push('\n');
        fs::write(&path, body)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }

    let summary = report.summary();
    if report.is_pancyclic() {
        println!("PANCYCLIC, {}/{}", summary.verified, summary.total);
        Ok(())
    } else {
        let (length, status) = report
            .first_problem()
            .expect("a non-pancyclic report has a problem");
        Err(Failure::failed(format!(
            "NOT PANCYCLIC: {}/{} verified; first problem at length {length}: {status:?}",
            summary.verified, summary.total
        )))
    }
}

fn document_failure(err: DocumentError) -> Failure {
    // Anything wrong with the document itself is a parse problem; only the
    // cycle checks downgrade to verification failures.
    Failure::usage(format!("cannot load certificate: {err}"))
}

fn cmd_verify(input: &Path, strict: bool) -> Result<(), Failure> {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", input.display())))?;
    let doc = CertificateDocument::from_json(&text).map_err(document_failure)?;
    if strict {
        if !doc.is_current_schema() {
            return Err(Failure::usage(format!(
                "strict mode: unsupported schema_version {:?}",
                doc.schema_version
            )));
        }
        if doc.length != doc.vertices.len() {
            return Err(Failure::failed(format!(
                "strict mode: length field {} disagrees with {} vertices",
                doc.length,
                doc.vertices.len()
            )));
        }
    }
    let cert = doc.to_certificate().map_err(document_failure)?;
    match verify_cycle(&cert) {
        Ok(()) => {
            println!(
                "OK: length {}, dimension {}, provenance {}",
                cert.length(),
                cert.n(),
                cert.provenance()
            );
            Ok(())
        }
        Err(err) => Err(Failure::failed(format!(
            "verification failed: {:?}: {err}",
            err.kind()
        ))),
    }
}

fn cmd_export_graph(n: usize, out: Option<&Path>) -> Result<(), Failure> {
    let content = render_graph_edgelist(n).map_err(|e| Failure::usage(e.to_string()))?;
    emit(out, &content)
}
