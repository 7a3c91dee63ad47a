//! Command-line shell around the library: build families from
//! recipes, verify and measure document files, export correlation
//! profiles, and search for admissible permutation families.
//!
//! Exit codes: 0 success (and, for `verify`, verdict true); 1 a
//! verification verdict came back false; 2 usage or validation
//! errors; 3 a requested construction is infeasible.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ccckit::format::{self, Document};
use ccckit::{
    CodeSet, CorrelationMode, Error, Generated, PartitionChoice, PermChoice, Recipe,
    VerificationReport, correlation_profile, generate, measure_zccz, qccs_delta, qccs_report,
    search_perm_family, verify_ccc, verify_snc, verify_zccs,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ccckit", version, about = "Construct, verify, and measure complementary code families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code set or family and write it as a document
    Gen(GenArgs),
    /// Check a document against a correlation property
    Verify(VerifyArgs),
    /// Export the correlation profile of one code pair as CSV
    Profile(ProfileArgs),
    /// Search for an admissible permutation family
    SearchPerms(SearchArgs),
    /// Measure zone widths and side-lobe levels of a family
    Measure(MeasureArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Replay a recipe document instead of assembling one from flags
    #[arg(long, conflicts_with_all = ["seed", "blocks", "partition", "total",
        "strategy", "mos", "perms", "require_14", "strict_mu", "perm_seed"])]
    recipe: Option<PathBuf>,

    /// Seed code set: example1, hadamard:M, or a document path
    #[arg(long, default_value = "example1")]
    seed: String,

    /// Number of blocks each row is assembled from
    #[arg(long = "P", value_name = "P", required_unless_present = "recipe")]
    blocks: Option<usize>,

    /// Explicit gap vector, P+1 comma-separated counts
    #[arg(long, value_delimiter = ',', value_name = "N1,..,NP+1",
        conflicts_with_all = ["total", "strategy"])]
    partition: Option<Vec<usize>>,

    /// Total zeros per row, distributed by --strategy
    #[arg(long = "n", value_name = "N",
        required_unless_present_any = ["recipe", "partition"])]
    total: Option<usize>,

    /// Gap placement: front, even, distinct, or distinct-mod-L
    #[arg(long, default_value = "front")]
    strategy: String,

    /// Scalar family generator: hadamard or dft
    #[arg(long, default_value = "hadamard")]
    mos: String,

    /// Permutations for a multi-set family: "auto" to search, or
    /// explicit images like "1,2,3,4;2,1,4,3"
    #[arg(long)]
    perms: Option<String>,

    /// Demand aligned-collision freedom of the permutation family
    #[arg(long)]
    require_14: bool,

    /// Restrict the disjointness condition to interior residue classes
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set,
        value_name = "BOOL")]
    strict_mu: bool,

    /// Seed for --perms auto; 0 searches in lexicographic order
    #[arg(long, default_value_t = 0)]
    perm_seed: u64,

    /// Output path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum ModeArg {
    Aperiodic,
    Periodic,
    Both,
}

impl ModeArg {
    fn modes(self) -> &'static [CorrelationMode] {
        match self {
            ModeArg::Aperiodic => &[CorrelationMode::Aperiodic],
            ModeArg::Periodic => &[CorrelationMode::Periodic],
            ModeArg::Both => &[CorrelationMode::Aperiodic, CorrelationMode::Periodic],
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum PropertyArg {
    /// Complete complementarity, with spectral-null classification
    Ccc,
    /// Presence of the spectral-null constraint
    Snc,
    /// Zero-correlation zone of width --zone
    Zccs,
    /// Side-lobe levels within the quasi-complementary tolerance
    Qccs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code-set or family document
    file: PathBuf,

    #[arg(long, value_enum, default_value_t = PropertyArg::Ccc)]
    property: PropertyArg,

    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,

    /// Zone width for --property zccs
    #[arg(long)]
    zone: Option<usize>,

    /// Write the full reports as JSON
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ProfileArgs {
    /// Code-set or family document
    file: PathBuf,

    /// First code: an index K for a set, or J:K for a family
    #[arg(long)]
    first: String,

    /// Second code, same form as --first
    #[arg(long)]
    second: String,

    #[arg(long, value_enum, default_value_t = ModeArg::Aperiodic)]
    mode: ModeArg,

    /// Output CSV path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Number of codes the permutations act on
    #[arg(long = "M", value_name = "M")]
    degree: usize,

    /// Number of blocks per row
    #[arg(long = "P", value_name = "P")]
    blocks: usize,

    /// Demand aligned-collision freedom as well
    #[arg(long)]
    require_14: bool,

    /// Restrict the disjointness condition to interior residue classes
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set,
        value_name = "BOOL")]
    strict_mu: bool,

    /// 0 searches in lexicographic order; other seeds reorder the scan
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct MeasureArgs {
    /// Code-set or family document
    file: PathBuf,

    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Infeasible { .. } | Error::SearchExhausted { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> ccckit::Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Profile(args) => cmd_profile(args),
        Command::SearchPerms(args) => cmd_search(args),
        Command::Measure(args) => cmd_measure(args),
    }
}

fn parse_usize_list(text: &str, locus: &str) -> ccckit::Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| Error::Parse {
                locus: locus.to_string(),
                detail: format!("expected a comma-separated list of integers, got {text:?}"),
            })
        })
        .collect()
}

fn recipe_from_args(args: &GenArgs) -> ccckit::Result<Recipe> {
    if let Some(path) = &args.recipe {
        return format::load_recipe(path);
    }
    let blocks = args.blocks.expect("clap enforces --P without --recipe");
    let partition = match &args.partition {
        Some(gaps) => PartitionChoice::Explicit(gaps.clone()),
        None => PartitionChoice::Strategy {
            total: args.total.expect("clap enforces --n without --partition"),
            strategy: args.strategy.clone(),
        },
    };
    let perms = match args.perms.as_deref() {
        None => None,
        Some("auto") => Some(PermChoice::Search {
            seed: args.perm_seed,
        }),
        Some(text) => {
            let images = text
                .split(';')
                .map(|part| parse_usize_list(part, "--perms"))
                .collect::<ccckit::Result<Vec<_>>>()?;
            Some(PermChoice::Explicit(images))
        }
    };
    Ok(Recipe {
        seed: args.seed.clone(),
        blocks,
        partition,
        mos: args.mos.clone(),
        perms,
        require_14: args.require_14,
        strict_mu: args.strict_mu,
    })
}

fn emit(text: &str, out: Option<&Path>, what: &str) -> ccckit::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io {
                path: path.to_path_buf(),
                source: e,
            })?;
            println!("wrote {what} to {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(args: GenArgs) -> ccckit::Result<ExitCode> {
    let recipe = recipe_from_args(&args)?;
    match generate(&recipe)? {
        Generated::Set(set) => {
            let what = format!(
                "code set ({} codes of {}x{})",
                set.num_codes(),
                set.code_rows(),
                set.seq_len()
            );
            emit(&format::codeset_to_string(&set, None), args.out.as_deref(), &what)?;
        }
        Generated::Family(family) => {
            let what = format!(
                "family ({} sets of {} codes, {}x{})",
                family.num_sets(),
                family.set(0).num_codes(),
                family.set(0).code_rows(),
                family.set(0).seq_len()
            );
            emit(&format::family_to_string(&family), args.out.as_deref(), &what)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(report: &VerificationReport) {
    let mode = report
        .mode
        .map(|m| format!(" ({m})"))
        .unwrap_or_default();
    let verdict = if report.verdict { "pass" } else { "FAIL" };
    let mut extras = Vec::new();
    if let Some(peak) = report.peak {
        extras.push(format!("peak {peak}"));
    }
    if let Some(epsilon) = report.epsilon {
        extras.push(format!("epsilon {epsilon}"));
    }
    if let Some(class) = &report.classification {
        extras.push(class.clone());
    }
    if let Some(zone) = report.measured.zone_width {
        extras.push(format!("zone {zone}"));
    }
    if let Some(predicted) = report.measured.predicted_zone {
        extras.push(format!("predicted {predicted}"));
    }
    if let Some(delta) = report.measured.max_sidelobe {
        extras.push(format!("max side-lobe {delta}"));
    }
    let extras = if extras.is_empty() {
        String::new()
    } else {
        format!(": {}", extras.join(", "))
    };
    println!("{} {}{mode}: {verdict}{extras}", report.subject, report.property);
    for violation in report.violations.iter().take(5) {
        println!("  {violation}");
    }
    if report.violations.len() > 5 {
        println!("  .. and {} more", report.violations.len() - 5);
    }
}

fn snc_report(set: &CodeSet, subject: String) -> VerificationReport {
    let epsilon = set.uniform_zero_count();
    VerificationReport {
        subject,
        property: "spectral-null-constraint".into(),
        mode: None,
        verdict: verify_snc(set),
        peak: None,
        epsilon,
        classification: None,
        violations: Vec::new(),
        measured: Default::default(),
    }
}

fn set_reports(
    set: &CodeSet,
    subject: &str,
    property: PropertyArg,
    mode: ModeArg,
    zone: Option<usize>,
) -> ccckit::Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    match property {
        PropertyArg::Ccc => {
            for &m in mode.modes() {
                let mut report = match m {
                    CorrelationMode::Aperiodic => verify_ccc(set, set.tolerance()),
                    // The full-length zone in periodic mode is the
                    // cyclic side of complete complementarity.
                    CorrelationMode::Periodic => {
                        verify_zccs(set, set.seq_len(), CorrelationMode::Periodic)?
                    }
                };
                report.subject = subject.to_string();
                reports.push(report);
            }
        }
        PropertyArg::Snc => reports.push(snc_report(set, subject.to_string())),
        PropertyArg::Zccs => {
            let zone = zone.ok_or_else(|| Error::Parse {
                locus: "--zone".into(),
                detail: "required for --property zccs".into(),
            })?;
            for &m in mode.modes() {
                let mut report = verify_zccs(set, zone, m)?;
                report.subject = subject.to_string();
                reports.push(report);
            }
        }
        PropertyArg::Qccs => {
            for &m in mode.modes() {
                let mut report = qccs_report(set, m);
                report.subject = subject.to_string();
                reports.push(report);
            }
        }
    }
    Ok(reports)
}

fn cmd_verify(args: VerifyArgs) -> ccckit::Result<ExitCode> {
    let mut reports = Vec::new();
    match format::load_document(&args.file)? {
        Document::Set(set) => {
            reports.extend(set_reports(&set, "code-set", args.property, args.mode, args.zone)?);
        }
        Document::Family(family) => {
            for (j, set) in family.sets().iter().enumerate() {
                let subject = format!("set {j}");
                reports.extend(set_reports(set, &subject, args.property, args.mode, args.zone)?);
            }
            // Family-level inter-set zone, judged against the
            // provenance prediction when one is recorded.
            if matches!(args.property, PropertyArg::Ccc) {
                for &m in args.mode.modes() {
                    let (_, report) = measure_zccz(&family, m)?;
                    reports.push(report);
                }
            }
        }
        Document::Recipe(_) => {
            return Err(Error::Parse {
                locus: args.file.display().to_string(),
                detail: "expected a code-set or code-family document, got a recipe".into(),
            });
        }
    }
    for report in &reports {
        print_report(report);
    }
    if let Some(path) = &args.report {
        let json = serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
        std::fs::write(path, json).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    let verdict = reports.iter().all(|r| r.verdict);
    Ok(if verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Picks a code out of a loaded document: a plain index for a set
/// document, set:code for a family document.
fn select<'a>(doc: &'a Document, selector: &str, locus: &str) -> ccckit::Result<&'a ccckit::Code> {
    let err = |detail: String| Error::Parse {
        locus: locus.to_string(),
        detail,
    };
    match doc {
        Document::Set(set) => {
            let k: usize = selector
                .parse()
                .map_err(|_| err(format!("expected a code index, got {selector:?}")))?;
            if k >= set.num_codes() {
                return Err(err(format!(
                    "code index {k} out of range, the set has {} codes",
                    set.num_codes()
                )));
            }
            Ok(set.code(k))
        }
        Document::Family(family) => {
            let (j, k) = selector
                .split_once(':')
                .and_then(|(j, k)| Some((j.parse::<usize>().ok()?, k.parse::<usize>().ok()?)))
                .ok_or_else(|| err(format!("expected SET:CODE for a family, got {selector:?}")))?;
            if j >= family.num_sets() || k >= family.set(j).num_codes() {
                return Err(err(format!(
                    "selector {j}:{k} out of range for {} sets of {} codes",
                    family.num_sets(),
                    family.set(0).num_codes()
                )));
            }
            Ok(family.set(j).code(k))
        }
        Document::Recipe(_) => Err(err("expected a code-set or code-family document".into())),
    }
}

fn cmd_profile(args: ProfileArgs) -> ccckit::Result<ExitCode> {
    let mode = match args.mode {
        ModeArg::Aperiodic => CorrelationMode::Aperiodic,
        ModeArg::Periodic => CorrelationMode::Periodic,
        ModeArg::Both => {
            return Err(Error::Parse {
                locus: "--mode".into(),
                detail: "profile exports one mode per file; pick aperiodic or periodic".into(),
            });
        }
    };
    let doc = format::load_document(&args.file)?;
    let first = select(&doc, &args.first, "--first")?;
    let second = select(&doc, &args.second, "--second")?;
    let profile = correlation_profile(first, second, mode)?;
    match &args.out {
        Some(path) => {
            format::save_profile_csv(&profile, path)?;
            println!(
                "wrote {} profile ({} shifts) to {}",
                mode,
                profile.num_points(),
                path.display()
            );
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            format::write_profile_csv(&profile, &mut stdout).map_err(|e| Error::Io {
                path: PathBuf::from("stdout"),
                source: e,
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(args: SearchArgs) -> ccckit::Result<ExitCode> {
    let family = search_perm_family(
        args.degree,
        args.blocks,
        args.require_14,
        args.seed,
        args.strict_mu,
    )?;
    for perm in &family {
        let image = perm
            .image()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        println!("{image}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_measure(args: MeasureArgs) -> ccckit::Result<ExitCode> {
    match format::load_document(&args.file)? {
        Document::Set(set) => {
            for &m in args.mode.modes() {
                let d = qccs_delta(&set, m);
                println!(
                    "{m}: delta {} auto {} cross {}",
                    d.delta, d.delta_auto, d.delta_cross
                );
            }
        }
        Document::Family(family) => {
            let flat = family.flatten();
            for &m in args.mode.modes() {
                let (zone, report) = measure_zccz(&family, m)?;
                match report.measured.predicted_zone {
                    Some(p) => println!("{m}: inter-set zone {zone} (predicted {p})"),
                    None => println!("{m}: inter-set zone {zone}"),
                }
                let d = qccs_delta(&flat, m);
                println!(
                    "{m}: delta {} auto {} cross {}",
                    d.delta, d.delta_auto, d.delta_cross
                );
            }
        }
        Document::Recipe(_) => {
            return Err(Error::Parse {
                locus: args.file.display().to_string(),
                detail: "expected a code-set or code-family document, got a recipe".into(),
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}
