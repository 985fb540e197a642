//! Batch front-end over the exact toolkit. Every subcommand reads and
//! writes the JSON formats from the library crate; human-readable text goes
//! to stdout unless `--json` asks for machine output.
//!
//! Exit codes: 0 success, 1 a verification came back negative, 2 usage or
//! parse errors (reported as `{"error": "..."}` on stderr).

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use schubertq_cli::{
    point_from_json_slice, to_canonical_json, FormatError, HomologyDegree, HomologyReport,
    IdealFile, ResolveReport, VerifyReport,
};
use schubertq_core::bottsamelson::{bott_samelson_ideal, desingularize, section_over_cell};
use schubertq_core::bundles::{
    pullback_sphere_bundle_ideal, sphere_bundle_ideal, universal_bundle_ideal, PolyMap,
};
use schubertq_core::certify::{
    inversion_compactify, projectively_q_closed_certificate, puncture_lift, replay_certificate,
    verify_q_jacobian_witness, Certificate, CertificateKind,
};
use schubertq_core::exactmath::{PolyMatrix, PolySystem, Rational};
use schubertq_core::grassmann::grassmann_ideal;
use schubertq_core::partitions::{betti_numbers, partitions_in_box, NormalizedCore, Partition};
use schubertq_core::schubert::{sample_open_cell_point, schubert_ideal};

#[derive(Parser)]
#[command(
    name = "schubertq",
    version,
    about = "Exact-arithmetic toolkit for Grassmannians, Schubert varieties, and their certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the ideal of a built-in construction as a JSON file.
    Ideal {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Check a point against an ideal and attempt a Jacobian witness.
    Verify(VerifyArgs),
    /// Betti numbers and the cell basis of a Grassmannian.
    Homology(HomologyArgs),
    /// Normalize a partition and certify the resolution of its cell closure.
    Resolve(ResolveArgs),
    /// Rewrite an ideal through the inversion substitution x -> x/|x|^2.
    Compactify(CompactifyArgs),
    /// Lift an ideal so the origin leaves its zero set.
    Puncture(PunctureArgs),
    /// Attempt an overtness / projective closure certificate for an ideal.
    Certify(CertifyArgs),
}

#[derive(Subcommand)]
enum Construction {
    /// Projector model of the Grassmannian of m-planes in R^{m+n}.
    Grassmann(BoxArgs),
    /// Schubert variety of a partition inside its box.
    Schubert(PartitionBoxArgs),
    /// Resolution system of a normalized partition.
    BottSamelson(PartitionBoxArgs),
    /// Universal bundle over the Grassmannian.
    Vbundle(BoxArgs),
    /// Unit-sphere bundle over the Grassmannian.
    Sbundle(BoxArgs),
    /// Product of sphere bundles pulled back along the diagonal.
    Pullback(PullbackArgs),
}

#[derive(Args)]
struct BoxArgs {
    /// Plane dimension m >= 1.
    #[arg(long)]
    m: usize,
    /// Codimension n >= 1.
    #[arg(long)]
    n: usize,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionBoxArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Comma-separated weakly decreasing parts, e.g. `2,1,0`.
    #[arg(long)]
    partition: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PullbackArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Number of sphere-bundle factors.
    #[arg(long, default_value_t = 1)]
    factors: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Ideal file to check against.
    #[arg(long)]
    ideal: PathBuf,
    /// Point file: JSON array of "p/q" coordinates.
    #[arg(long)]
    point: PathBuf,
    /// Claimed local dimension of the zero set.
    #[arg(long)]
    expected_dim: usize,
    /// Certificate file to re-check against this ideal.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Write the certificate produced by the check.
    #[arg(long)]
    certificate_out: Option<PathBuf>,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ResolveArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Comma-separated weakly decreasing parts, e.g. `1,0`.
    #[arg(long)]
    partition: String,
    /// Additionally sample this many cell points and check the section.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Sampling seed; overrides SCHUBERTQ_SEED and the default 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompactifyArgs {
    #[arg(long)]
    ideal: PathBuf,
    /// Substitution exponent; defaults to the top degree in the ideal.
    #[arg(long)]
    exponent: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PunctureArgs {
    #[arg(long)]
    ideal: PathBuf,
    /// Nonzero rational "p/q" the lifted product must equal.
    #[arg(long, default_value = "1")]
    constant: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    ideal: PathBuf,
    /// Also write the certificate to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn usage(err: impl std::fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if err.use_stderr() => {
            report_failure(&err.to_string());
        }
        Err(err) => {
            // --help and --version land here; keep clap's exit semantics.
            err.print().expect("stdout is writable");
            std::process::exit(0);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => report_failure(&err.to_string()),
    }
}

fn report_failure(message: &str) -> ! {
    let payload = serde_json::json!({ "error": message });
    eprintln!("{payload}");
    std::process::exit(2)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Ideal { construction } => cmd_ideal(construction),
        Command::Verify(args) => cmd_verify(args),
        Command::Homology(args) => cmd_homology(args),
        Command::Resolve(args) => cmd_resolve(args),
        Command::Compactify(args) => cmd_compactify(args),
        Command::Puncture(args) => cmd_puncture(args),
        Command::Certify(args) => cmd_certify(args),
    }
}

fn check_box(m: usize, n: usize) -> Result<(), CliError> {
    if m == 0 || n == 0 {
        return Err(CliError::Usage(format!("box must be at least 1x1, got {m}x{n}")));
    }
    Ok(())
}

fn parse_partition(m: usize, n: usize, text: &str) -> Result<Partition, CliError> {
    let parts = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("could not parse partition `{text}`")))?;
    Partition::new(m, n, parts).map_err(usage)
}

fn load_system(path: &Path) -> Result<PolySystem, CliError> {
    let bytes = std::fs::read(path)?;
    let file = IdealFile::from_json_slice(&bytes)?;
    Ok(file.to_system()?)
}

fn write_artifact(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn write_system(system: &PolySystem, out: Option<&Path>) -> Result<i32, CliError> {
    let file = IdealFile::from_system(system);
    write_artifact(&file.to_json_bytes(), out)?;
    Ok(0)
}

fn cmd_ideal(construction: Construction) -> Result<i32, CliError> {
    match construction {
        Construction::Grassmann(args) => {
            check_box(args.m, args.n)?;
            write_system(&grassmann_ideal(args.m, args.n), args.out.as_deref())
        }
        Construction::Schubert(args) => {
            check_box(args.m, args.n)?;
            let lambda = parse_partition(args.m, args.n, &args.partition)?;
            write_system(&schubert_ideal(&lambda), args.out.as_deref())
        }
        Construction::BottSamelson(args) => {
            check_box(args.m, args.n)?;
            let lambda = parse_partition(args.m, args.n, &args.partition)?;
            let resolution = bott_samelson_ideal(&lambda).map_err(usage)?;
            write_system(&resolution.system, args.out.as_deref())
        }
        Construction::Vbundle(args) => {
            check_box(args.m, args.n)?;
            write_system(&universal_bundle_ideal(args.m, args.n), args.out.as_deref())
        }
        Construction::Sbundle(args) => {
            check_box(args.m, args.n)?;
            write_system(&sphere_bundle_ideal(args.m, args.n), args.out.as_deref())
        }
        Construction::Pullback(args) => {
            check_box(args.m, args.n)?;
            if args.factors == 0 {
                return Err(CliError::Usage("pullback needs at least one factor".into()));
            }
            let base = grassmann_ideal(args.m, args.n);
            let size = args.m + args.n;
            let identity = PolyMatrix::of_variables(base.ambient(), 0, size, size);
            let map = PolyMap::new(vec![identity; args.factors]).map_err(usage)?;
            let system = pullback_sphere_bundle_ideal(&base, &map).map_err(usage)?;
            write_system(&system, args.out.as_deref())
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let system = load_system(&args.ideal)?;
    let point = point_from_json_slice(&std::fs::read(&args.point)?)?;
    let ambient_len = system.ambient().len();
    if point.len() != ambient_len {
        return Err(CliError::Usage(format!(
            "point has {} coordinates, ideal has {} variables",
            point.len(),
            ambient_len
        )));
    }
    if args.expected_dim >= ambient_len {
        return Err(CliError::Usage(format!(
            "expected dimension {} must be below the ambient dimension {}",
            args.expected_dim, ambient_len
        )));
    }
    let on_variety = system.vanishes_at(&point).map_err(usage)?;
    let jacobian_rank = system.jacobian_at(&point).map_err(usage)?.rank();
    let required_rank = ambient_len - args.expected_dim;
    let mut witness = false;
    if on_variety {
        let certificate =
            verify_q_jacobian_witness(&system, &point, args.expected_dim).map_err(usage)?;
        witness = certificate.kind == CertificateKind::QJacobianWitness;
        if let Some(path) = &args.certificate_out {
            write_artifact(&to_canonical_json(&certificate), Some(path))?;
        }
    }
    let replayed = match &args.replay {
        Some(path) => {
            let certificate: Certificate = serde_json::from_slice(&std::fs::read(path)?)?;
            Some(replay_certificate(&system, &certificate))
        }
        None => None,
    };
    let report = VerifyReport { on_variety, jacobian_rank, required_rank, witness, replayed };
    if args.json {
        write_artifact(&to_canonical_json(&report), None)?;
    } else {
        println!("on variety: {on_variety}");
        println!("jacobian rank: {jacobian_rank} (required {required_rank})");
        println!("witness: {witness}");
        if let Some(replayed) = replayed {
            println!("certificate replayed: {replayed}");
        }
    }
    let ok = on_variety && witness && replayed.unwrap_or(true);
    Ok(if ok { 0 } else { 1 })
}

fn cmd_homology(args: HomologyArgs) -> Result<i32, CliError> {
    check_box(args.m, args.n)?;
    let betti = betti_numbers(args.m, args.n);
    let mut basis: Vec<HomologyDegree> = (0..betti.len())
        .map(|degree| HomologyDegree { degree, cells: 0, partitions: Vec::new() })
        .collect();
    for lambda in partitions_in_box(args.m, args.n) {
        let degree = args.m * args.n - lambda.weight();
        basis[degree].cells += 1;
        basis[degree].partitions.push(lambda.parts().to_vec());
    }
    for (degree, entry) in basis.iter().enumerate() {
        debug_assert_eq!(entry.cells, betti[degree]);
    }
    let report = HomologyReport {
        m: args.m,
        n: args.n,
        total: betti.iter().sum(),
        betti,
        basis,
    };
    if args.json {
        write_artifact(&to_canonical_json(&report), None)?;
        return Ok(0);
    }
    let betti_line =
        report.betti.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    println!(
        "G_{{{m},{n}}} cellular homology over Z/2: {betti_line} (total {total})",
        m = report.m,
        n = report.n,
        total = report.total
    );
    for entry in &report.basis {
        let cells = entry
            .partitions
            .iter()
            .map(|parts| {
                let inner =
                    parts.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                format!("({inner})")
            })
            .collect::<Vec<_>>()
            .join(" ");
        println!("degree {}: {} cell(s): {}", entry.degree, entry.cells, cells);
    }
    Ok(0)
}

fn effective_seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = explicit {
        return Ok(seed);
    }
    match std::env::var("SCHUBERTQ_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| CliError::Usage(format!("SCHUBERTQ_SEED is not a u64: `{text}`"))),
        Err(_) => Ok(0),
    }
}

fn cmd_resolve(args: ResolveArgs) -> Result<i32, CliError> {
    check_box(args.m, args.n)?;
    let lambda = parse_partition(args.m, args.n, &args.partition)?;
    let seed = effective_seed(args.seed)?;
    let pipeline = desingularize(&lambda);
    let mut certified = pipeline.rank_at_base == pipeline.rank_target
        && pipeline.cardinalities.iter().all(|card| card.matches_targets());
    let mut sections_checked = 0;
    if args.samples > 0 {
        if let NormalizedCore::Core(core) = lambda.normalize().0 {
            let resolution = bott_samelson_ideal(&core).map_err(usage)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..args.samples {
                let point = sample_open_cell_point(&core, &mut rng);
                let tuple = section_over_cell(&point, &core).map_err(usage)?;
                if resolution.system.vanishes_at(&tuple).map_err(usage)? {
                    sections_checked += 1;
                } else {
                    certified = false;
                }
            }
        }
    }
    let report = ResolveReport { seed, sections_checked, certified, pipeline };
    if args.json {
        write_artifact(&to_canonical_json(&report), None)?;
    } else {
        let parts = report
            .pipeline
            .partition
            .parts()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        println!("partition ({parts}) in the {}x{} box", args.m, args.n);
        if report.pipeline.trace.is_empty() {
            println!("normalization: already normalized");
        } else {
            let steps = report
                .pipeline
                .trace
                .iter()
                .map(|step| match step {
                    schubertq_core::partitions::NormalizeMove::StripTop { rows } => {
                        format!("strip-top {rows}")
                    }
                    schubertq_core::partitions::NormalizeMove::ShrinkAmbient { amount } => {
                        format!("shrink-ambient {amount}")
                    }
                })
                .collect::<Vec<_>>()
                .join(", ");
            println!("normalization: {steps}");
        }
        println!(
            "cell dimension {}, rank target {}, rank at base point {}",
            report.pipeline.dim, report.pipeline.rank_target, report.pipeline.rank_at_base
        );
        if args.samples > 0 {
            println!("sections checked: {} (seed {})", report.sections_checked, report.seed);
        }
        println!("certified: {}", report.certified);
    }
    Ok(if report.certified { 0 } else { 1 })
}

fn cmd_compactify(args: CompactifyArgs) -> Result<i32, CliError> {
    let system = load_system(&args.ideal)?;
    let exponent = args.exponent.unwrap_or_else(|| system.max_degree());
    let transformed = inversion_compactify(&system, exponent).map_err(usage)?;
    write_system(&transformed, args.out.as_deref())
}

fn cmd_puncture(args: PunctureArgs) -> Result<i32, CliError> {
    let system = load_system(&args.ideal)?;
    let constant: Rational = args
        .constant
        .parse()
        .map_err(|_| CliError::Usage(format!("could not parse constant `{}`", args.constant)))?;
    let lifted = puncture_lift(&system, &constant).map_err(usage)?;
    write_system(&lifted, args.out.as_deref())
}

fn cmd_certify(args: CertifyArgs) -> Result<i32, CliError> {
    let system = load_system(&args.ideal)?;
    let certificate = projectively_q_closed_certificate(&system);
    if let Some(path) = &args.out {
        write_artifact(&to_canonical_json(&certificate), Some(path))?;
    }
    if args.json {
        write_artifact(&to_canonical_json(&certificate), None)?;
    } else {
        let kind = serde_json::to_value(&certificate.kind)?;
        let kind = kind.as_str().unwrap_or("unknown").to_string();
        println!("kind: {kind}");
        println!("evidence: {}", serde_json::to_string(&certificate.evidence)?);
    }
    Ok(if certificate.is_conclusive() { 0 } else { 1 })
}
