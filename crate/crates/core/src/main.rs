use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use matroidkit::degeneracy::DEFAULT_NODE_LIMIT;
use matroidkit::generators;
use matroidkit::instance::{Instance, InstanceMeta};
use matroidkit::io::{self, default_format, read_instance, serialize, Format};
use matroidkit::matroid::{direct_sum, two_sum};
use matroidkit::report::{self, FlatsRequest, ReportDocument};
use matroidkit::verify::{CheckName, CheckOptions};
use matroidkit::{corpus, Error};

#[derive(Parser)]
#[command(name = "matroidkit", version, about = "Exact matroid flats, degeneracy and incidence checks")]
struct Cli {
    /// Output format; `series` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Worker threads for flat enumeration and report batches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Enumerate flats or report flat-size statistics.
    Flats {
        instance: PathBuf,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, conflicts_with = "stats")]
        list: bool,
        #[arg(long)]
        stats: bool,
        /// Count rank 0 and the whole ground set too.
        #[arg(long)]
        include_trivial: bool,
    },
    /// Largest k-degenerate set, optionally with the optimal stratification.
    Degeneracy {
        instance: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        stratify: bool,
        #[command(flatten)]
        limit: Limit,
    },
    /// Run inequality checks on an instance.
    Verify {
        instance: PathBuf,
        /// Comma-separated check names.
        #[arg(long, value_delimiter = ',', required_unless_present = "all")]
        check: Vec<CheckName>,
        #[arg(long, conflicts_with = "check")]
        all: bool,
        #[command(flatten)]
        checks: CheckArgs,
    },
    /// Consolidated report over every instance file in a directory.
    Report {
        dir: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        checks: CheckArgs,
    },
    /// Average hyperplane size of DG(r, Z_t) over a range of t.
    Series {
        #[arg(long, default_value_t = 4)]
        rank: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5])]
        t: Vec<u32>,
    },
}

#[derive(Args)]
struct Limit {
    /// Branch-and-bound node budget; exceeding it exits with code 3.
    #[arg(long, env = "MATROIDKIT_NODE_LIMIT", default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
}

#[derive(Args)]
struct CheckArgs {
    /// Values of k for strat1, strat2 and lund-ratio.
    #[arg(long = "k", value_delimiter = ',', default_values_t = [2, 3, 4])]
    ks: Vec<usize>,
    #[arg(long)]
    include_trivial: bool,
    #[command(flatten)]
    limit: Limit,
}

impl CheckArgs {
    fn options(&self) -> CheckOptions {
        CheckOptions { ks: self.ks.clone(), include_trivial: self.include_trivial, node_limit: self.limit.node_limit }
    }
}

#[derive(Args)]
struct Out {
    /// Destination file; its extension picks the format. Prints to stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gen {
    Dowling {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        group_order: u32,
        #[arg(long)]
        delete_joints: bool,
        #[command(flatten)]
        out: Out,
    },
    Uniform {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        out: Out,
    },
    Figure1 {
        #[arg(long)]
        a: usize,
        #[command(flatten)]
        out: Out,
    },
    K4 {
        #[command(flatten)]
        out: Out,
    },
    Random {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    NearPencil {
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        out: Out,
    },
    /// 2-sum of two instance files along the given basepoints.
    TwoSum {
        left: PathBuf,
        left_point: usize,
        right: PathBuf,
        right_point: usize,
        #[command(flatten)]
        out: Out,
    },
    DirectSum {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Write the shipped corpus into a directory.
    Corpus {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SearchLimit(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(text: &str, output: Option<&Path>) -> matroidkit::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> matroidkit::Result<u8> {
    let csv = cli.format == Some(OutputFormat::Csv);
    let doc_out = |doc: &ReportDocument, table: fn(&ReportDocument) -> String, output: Option<&Path>| {
        let text = if csv { table(doc) } else { doc.to_json() };
        emit(&text, output)
    };
    match &cli.command {
        Command::Gen { what } => gen(what),
        Command::Flats { instance, rank, list, stats, include_trivial } => {
            let inst = read_instance(instance)?;
            let req = FlatsRequest { rank: *rank, list: *list, stats: *stats, include_trivial: *include_trivial };
            let doc = ReportDocument::new(vec![report::flats_section(&inst, req)?]);
            let table = if *list { report::listing_csv } else { report::stats_csv };
            doc_out(&doc, table, None)?;
            Ok(0)
        }
        Command::Degeneracy { instance, k, stratify, limit } => {
            let inst = read_instance(instance)?;
            let doc = ReportDocument::new(vec![report::degeneracy_section(&inst, *k, *stratify, limit.node_limit)?]);
            doc_out(&doc, report::degeneracy_csv, None)?;
            Ok(0)
        }
        Command::Verify { instance, check, all, checks } => {
            let inst = read_instance(instance)?;
            let names: &[CheckName] = if *all { &CheckName::ALL } else { check };
            let doc = ReportDocument::new(vec![report::verify_section(&inst, names, &checks.options())?]);
            doc_out(&doc, report::checks_csv, None)?;
            Ok(u8::from(doc.has_violation()))
        }
        Command::Report { dir, output, checks } => {
            let doc = report::corpus_report(dir, &checks.options())?;
            doc_out(&doc, report::checks_csv, output.as_deref())?;
            Ok(u8::from(doc.has_violation()))
        }
        Command::Series { rank, t } => {
            let rows = report::dowling_series(*rank, t)?;
            let text = if cli.format == Some(OutputFormat::Json) {
                let mut s = serde_json::to_string_pretty(&serde_json::to_value(&rows).unwrap()).unwrap();
                s.push('\n');
                s
            } else {
                report::series_csv(&rows)
            };
            emit(&text, None)?;
            Ok(0)
        }
    }
}

fn write_out(inst: &Instance, out: &Out) -> matroidkit::Result<u8> {
    match &out.output {
        Some(path) => io::write_instance(inst, path)?,
        None => emit(&serialize(inst, default_format(&inst.matroid))?, None)?,
    }
    Ok(0)
}

/// A script loading both operands, for sums of instances that have no
/// construction of their own.
fn load_script(verb: &str, left: &Path, right: &Path, points: Option<(usize, usize)>, out: &Out) -> String {
    let rel = |p: &Path| -> String {
        let dir = out.output.as_deref().and_then(Path::parent).map(Path::to_path_buf).unwrap_or_default();
        let abs = |q: &Path| std::fs::canonicalize(q).unwrap_or_else(|_| q.to_path_buf());
        let (pa, da) = (abs(p), abs(if dir.as_os_str().is_empty() { Path::new(".") } else { &dir }));
        match pa.strip_prefix(&da) {
            Ok(r) => r.display().to_string(),
            Err(_) => pa.display().to_string(),
        }
    };
    let args = match points {
        Some((p, q)) => format!("a {p} b {q}"),
        None => "a b".into(),
    };
    format!("a = load {}\nb = load {}\nm = {verb} {args}\n", rel(left), rel(right))
}

fn gen(what: &Gen) -> matroidkit::Result<u8> {
    match what {
        Gen::Dowling { rank, group_order, delete_joints, out } => {
            write_out(&generators::dowling_instance(*rank, *group_order, *delete_joints)?, out)
        }
        Gen::Uniform { rank, size, out } => write_out(&generators::uniform_instance(*rank, *size)?, out),
        Gen::Figure1 { a, out } => write_out(&generators::figure1_instance(*a)?, out),
        Gen::K4 { out } => {
            let meta = InstanceMeta::new("k4", matroidkit::Representability::REAL);
            write_out(&Instance::new(meta, generators::graphic_k4()?), out)
        }
        Gen::Random { rank, size, seed, out } => write_out(&generators::random_instance(*rank, *size, *seed)?, out),
        Gen::NearPencil { size, out } => write_out(&generators::near_pencil(*size)?, out),
        Gen::TwoSum { left, left_point, right, right_point, out } => {
            let (a, b) = (read_instance(left)?, read_instance(right)?);
            let m = two_sum(&a.matroid, *left_point, &b.matroid, *right_point)?;
            let flags = a.meta.representability.meet(b.meta.representability);
            let inst = Instance::new(InstanceMeta::new("two-sum", flags), m);
            sum_out(&inst, "two_sum", left, right, Some((*left_point, *right_point)), out)
        }
        Gen::DirectSum { left, right, out } => {
            let (a, b) = (read_instance(left)?, read_instance(right)?);
            let m = direct_sum(&a.matroid, &b.matroid)?;
            let flags = a.meta.representability.meet(b.meta.representability);
            let inst = Instance::new(InstanceMeta::new("direct-sum", flags), m);
            sum_out(&inst, "direct_sum", left, right, None, out)
        }
        Gen::Corpus { dir } => {
            for name in corpus::write_corpus(dir)? {
                println!("{}", dir.join(name).display());
            }
            Ok(0)
        }
    }
}

fn sum_out(
    inst: &Instance,
    verb: &str,
    left: &Path,
    right: &Path,
    points: Option<(usize, usize)>,
    out: &Out,
) -> matroidkit::Result<u8> {
    let to_script = out.output.as_deref().is_none_or(|p| Format::from_path(p).ok() == Some(Format::Script));
    match serialize(inst, Format::Script) {
        Err(Error::Unserializable(_)) if to_script => {
            emit(&load_script(verb, left, right, points, out), out.output.as_deref())?;
            Ok(0)
        }
        _ => write_out(inst, out),
    }
}
