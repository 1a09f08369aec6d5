//! Command-line front end: ingestion, construction, serialization,
//! statistics and validation.
//!
//! Exit codes: 0 on success, 1 when validation finds a mismatch, 2 on
//! usage or I/O errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gsacms::builder::{build_gsa_full, BuildArtifacts, BuildConfig, BuildReport};
use gsacms::ingest::{ingest, parse_reference, sniff_format, InputFormat};
use gsacms::oracle::naive_gsa;
use gsacms::serialize::{read_gsa, write_gsa, OutputFormat};
use gsacms::{ByteText, Collection};

/// A collection's total content size above which validation refuses to run
/// the brute-force comparison.
const VALIDATE_LIMIT: usize = 1 << 20;

#[derive(Parser)]
#[command(
    name = "gsacms",
    version,
    about = "Generalized suffix arrays for similar string collections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the generalized suffix array and write it to a file
    BuildGsa(BuildGsaArgs),
    /// Build the matching-statistics store and write its binary dump
    BuildMs(BuildMsArgs),
    /// Print collection, work and timing statistics of a build
    Stats(CommonArgs),
    /// Compare a previously written array against the brute-force reference
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormatArg {
    Fasta,
    Raw,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormatArg {
    Binary,
    Tsv,
}

#[derive(Args)]
struct CommonArgs {
    /// Input collection file(s); FASTA or raw, one document per line
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,

    /// Reference sequence file (first record / line); defaults to the
    /// first document of the collection
    #[arg(long)]
    reference: Option<PathBuf>,

    /// Force the input layout instead of sniffing it
    #[arg(long, value_enum)]
    input_format: Option<InputFormatArg>,

    /// LCP block size for the cached minima
    #[arg(long, default_value_t = 256)]
    block_size: usize,

    /// Predecessor sampling rate of the head store
    #[arg(long, default_value_t = 32)]
    pred_sample: usize,

    /// Disable the singleton fast path
    #[arg(long)]
    no_heuristic: bool,

    /// Worker threads for the per-document and per-bucket phases
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct BuildGsaArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Output file for the array
    #[arg(long)]
    output: PathBuf,

    /// Output encoding
    #[arg(long, value_enum, default_value = "binary")]
    format: OutputFormatArg,

    /// Compare the result against the brute-force reference (small inputs)
    #[arg(long)]
    validate: bool,

    /// Print statistics after building
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct BuildMsArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Output file for the store dump
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// The array file to check (binary or TSV)
    #[arg(long)]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gsacms: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_payload(
    path: &Path,
    forced: Option<InputFormatArg>,
) -> anyhow::Result<(Vec<u8>, InputFormat)> {
    let data = fs::read(path).map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))?;
    let format = match forced {
        Some(InputFormatArg::Fasta) => InputFormat::Fasta,
        Some(InputFormatArg::Raw) => InputFormat::Raw,
        None => sniff_format(&data),
    };
    Ok((data, format))
}

fn load_inputs(common: &CommonArgs) -> anyhow::Result<(Collection, Option<ByteText>)> {
    let mut payloads = Vec::new();
    for path in &common.input {
        payloads.push(read_payload(path, common.input_format)?);
    }
    let collection = ingest(&payloads)?;
    let reference = match &common.reference {
        Some(path) => {
            let (data, format) = read_payload(path, common.input_format)?;
            Some(parse_reference(&data, format)?)
        }
        None => None,
    };
    Ok((collection, reference))
}

fn config_of(common: &CommonArgs) -> BuildConfig {
    BuildConfig {
        block_size: common.block_size,
        pred_sample: common.pred_sample,
        heuristic: !common.no_heuristic,
        workers: common.workers,
    }
}

fn build(common: &CommonArgs) -> anyhow::Result<(Collection, BuildArtifacts)> {
    let (collection, reference) = load_inputs(common)?;
    let artifacts = build_gsa_full(&collection, reference.as_ref(), &config_of(common))?;
    Ok((collection, artifacts))
}

fn print_report(report: &BuildReport) {
    println!("documents (m):            {}", report.doc_count);
    println!("total length (N):         {}", report.total_len);
    println!("alphabet size (sigma):    {}", report.sigma);
    println!("reference length:         {}", report.reference_len);
    println!("reference lcp sum:        {}", report.lcp_sum_reference);
    println!("heads (chi):              {}", report.chi);
    println!("insert-heads (chi'):      {}", report.chi_prime);
    println!("s*-suffixes:              {}", report.sstar_count);
    println!("lcp contractions:         {}", report.counters.contractions);
    println!(
        "  of which expanded:      {}",
        report.counters.contractions_expanded
    );
    println!(
        "fast path hits:           {}",
        report.counters.fast_path_hits
    );
    println!(
        "fast path fallbacks:      {}",
        report.counters.fast_path_fallbacks
    );
    println!(
        "right extensions:         {}",
        report.counters.right_extensions
    );
    let t = &report.timings;
    println!("phase 1 reference index:  {:?}", t.reference_index);
    println!("phase 2 matching stats:   {:?}", t.matching);
    println!("phase 3 bucketing:        {:?}", t.bucketing);
    println!("phase 4 head sort:        {:?}", t.head_sort);
    println!("phase 5 s* sort:          {:?}", t.sstar_sort);
    println!("phase 6 induction:        {:?}", t.induce);
}

fn check_validate_limit(collection: &Collection) -> anyhow::Result<()> {
    let total = collection.total_len();
    if total > VALIDATE_LIMIT {
        anyhow::bail!(
            "validation refuses inputs over {} bytes (collection is {total})",
            VALIDATE_LIMIT
        );
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::BuildGsa(args) => {
            let (collection, artifacts) = build(&args.common)?;
            let format = match args.format {
                OutputFormatArg::Binary => OutputFormat::Binary,
                OutputFormatArg::Tsv => OutputFormat::Tsv,
            };
            let file = fs::File::create(&args.output)
                .map_err(|e| anyhow::anyhow!("creating {}: {e}", args.output.display()))?;
            let mut w = std::io::BufWriter::new(file);
            write_gsa(&artifacts.gsa, format, &mut w)?;
            w.flush()?;
            if args.stats {
                print_report(&artifacts.report);
            }
            if args.validate {
                check_validate_limit(&collection)?;
                if artifacts.gsa != naive_gsa(&collection) {
                    eprintln!("gsacms: validation failed: array differs from brute-force order");
                    return Ok(ExitCode::from(1));
                }
                println!("validation ok ({} entries)", artifacts.gsa.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BuildMs(args) => {
            let (_, artifacts) = build(&args.common)?;
            fs::write(&args.output, artifacts.store.encode())
                .map_err(|e| anyhow::anyhow!("writing {}: {e}", args.output.display()))?;
            println!(
                "wrote {} insert-head records for {} documents",
                artifacts.store.chi_prime(),
                artifacts.store.doc_count()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats(common) => {
            let (_, artifacts) = build(&common)?;
            print_report(&artifacts.report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate(args) => {
            let (collection, _) = load_inputs(&args.common)?;
            check_validate_limit(&collection)?;
            let file = fs::File::open(&args.output)
                .map_err(|e| anyhow::anyhow!("opening {}: {e}", args.output.display()))?;
            let written = read_gsa(std::io::BufReader::new(file))?;
            let expect = naive_gsa(&collection);
            if written != expect {
                let at = written
                    .iter()
                    .zip(&expect)
                    .position(|(a, b)| a != b)
                    .unwrap_or(written.len().min(expect.len()));
                eprintln!(
                    "gsacms: mismatch: {} entries written vs {} expected, first divergence at row {}",
                    written.len(),
                    expect.len(),
                    at + 1
                );
                return Ok(ExitCode::from(1));
            }
            println!("validation ok ({} entries)", expect.len());
            Ok(ExitCode::SUCCESS)
        }
    }
}
