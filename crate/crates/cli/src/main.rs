//! `anyhier` command-line tool.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use anyhier::anytime::default_budget;
use anyhier::experiment::{run_experiment, DataSource, ExperimentConfig};
use anyhier::io::{self as aio, MnistCorpus};
use anyhier::{
    anytime_cluster_with, cophenetic_correlation, cophenetic_matrix, hac, random_tree,
    AnytimeConfig, AnytimeTrace, BinaryHierarchy, Dataset, Dissimilarity, Error, EvalStrategy,
    Linkage, LinkageKind,
};

#[derive(Parser)]
#[command(
    name = "anyhier",
    version,
    about = "Hierarchical clustering by nearest-neighbor-interchange restructuring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Uniform random points in the unit square, as dataset CSV.
    GenData {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Balanced sample of IDX digit images, as dataset CSV.
    LoadMnist {
        #[arg(long)]
        images: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = 10)]
        per_digit: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Batch agglomerative clustering.
    Hac {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Restructure an initial tree until it is homogeneous.
    Anytime {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum, default_value_t = Init::Random)]
        init: Init,
        /// Initial tree for `--init file`.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Iteration budget; defaults to 10·n².
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Insert one point into an existing tree, then restructure.
    Insert {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        label: u32,
        /// Comma-separated coordinates.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        point: Vec<f64>,
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Where to write the dataset including the new point.
        #[arg(long)]
        dataset_output: Option<PathBuf>,
    },
    /// Cophenetic correlation of a tree against its dataset.
    Validate {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tree: PathBuf,
        /// Also write the cophenetic matrix as CSV.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Compare hac, anytime and incremental clustering over random trials.
    Experiment {
        #[arg(long, value_delimiter = ',', default_value = "10,20,30,40,50")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "single,complete,average,minimax,ward"
        )]
        kinds: Vec<LinkageKind>,
        #[arg(long, value_enum, default_value_t = Source::Synthetic)]
        source: Source,
        #[arg(long, required_if_eq("source", "mnist"))]
        images: Option<PathBuf>,
        #[arg(long, required_if_eq("source", "mnist"))]
        labels: Option<PathBuf>,
        #[arg(long, default_value = "euclidean")]
        dissimilarity: Dissimilarity,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct DataArgs {
    /// Dataset CSV (`label,x1,x2,...`).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "single")]
    linkage: LinkageKind,
    #[arg(long, default_value = "euclidean")]
    dissimilarity: Dissimilarity,
    #[arg(long, default_value = "auto")]
    strategy: EvalStrategy,
}

impl DataArgs {
    fn load(&self) -> Result<(Dataset, Linkage)> {
        let file =
            File::open(&self.input).with_context(|| format!("opening {}", self.input.display()))?;
        let data = aio::read_dataset_csv(file, self.dissimilarity)
            .with_context(|| format!("reading {}", self.input.display()))?;
        Ok((data, Linkage::new(self.linkage, self.strategy)))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Init {
    Random,
    Hac,
    File,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Source {
    Synthetic,
    Mnist,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Writes to `path`, or stdout when absent.
fn emit(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn read_tree(path: &Path) -> Result<BinaryHierarchy> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let tree = if is_json(path) {
        aio::from_json(&text)
    } else {
        aio::newick::parse(&text)
    };
    tree.with_context(|| format!("parsing {}", path.display()))
}

fn write_tree(path: Option<&Path>, tree: &BinaryHierarchy) -> Result<()> {
    let text = match path {
        Some(p) if is_json(p) => aio::to_json(tree),
        _ => tree.to_newick(),
    };
    emit(path, |w| Ok(writeln!(w, "{text}")?))
}

fn write_dataset(path: Option<&Path>, data: &Dataset) -> Result<()> {
    emit(path, |w| Ok(aio::write_dataset_csv(w, data)?))
}

/// Writes the trace (partial on budget exhaustion) and the final tree.
fn finish_anytime(
    result: anyhier::Result<AnytimeTrace>,
    output: Option<&Path>,
    trace_path: Option<&Path>,
) -> Result<()> {
    let trace = match result {
        Ok(t) => t,
        Err(Error::IterationBudgetExceeded { budget, partial }) => {
            if let Some(p) = trace_path {
                emit(Some(p), |w| Ok(aio::write_trace_csv(w, &partial)?))?;
            }
            bail!("no homogeneous tree within {budget} iterations");
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(p) = trace_path {
        emit(Some(p), |w| Ok(aio::write_trace_csv(w, &trace)?))?;
    }
    write_tree(output, &trace.final_tree)?;
    eprintln!("{} iterations", trace.iterations);
    Ok(())
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::GenData { n, seed, output } => {
            let data = aio::gen_uniform_square(n, seed)?;
            write_dataset(output.as_deref(), &data)
        }
        Command::LoadMnist {
            images,
            labels,
            per_digit,
            seed,
            output,
        } => {
            let data = aio::load_mnist(&images, &labels, per_digit, seed)?;
            write_dataset(output.as_deref(), &data)
        }
        Command::Hac { data, output } => {
            let (dataset, linkage) = data.load()?;
            write_tree(output.as_deref(), &hac(&dataset, linkage)?)
        }
        Command::Anytime {
            data,
            init,
            tree,
            seed,
            max_iter,
            output,
            trace,
        } => {
            let (dataset, linkage) = data.load()?;
            let start = match (init, tree) {
                (Init::File, Some(p)) => read_tree(&p)?,
                (Init::File, None) => bail!("--init file requires --tree"),
                (Init::Hac, _) => hac(&dataset, linkage)?,
                (Init::Random, _) => random_tree(dataset.index_set(), seed)?,
            };
            let config = AnytimeConfig {
                max_iterations: Some(max_iter.unwrap_or_else(|| default_budget(dataset.len()))),
                ..AnytimeConfig::default()
            };
            let result = anytime_cluster_with(&dataset, linkage, &start, &config);
            finish_anytime(result, output.as_deref(), trace.as_deref())
        }
        Command::Insert {
            data,
            tree,
            label,
            point,
            max_iter,
            output,
            trace,
            dataset_output,
        } => {
            let (dataset, linkage) = data.load()?;
            let start = read_tree(&tree)?;
            let config = AnytimeConfig {
                max_iterations: Some(max_iter.unwrap_or_else(|| default_budget(dataset.len() + 1))),
                ..AnytimeConfig::default()
            };
            let result = anyhier::incremental::incremental_cluster_with(
                &dataset, linkage, &start, label, point, &config,
            );
            let result = match result {
                Ok((grown, trace)) => {
                    if let Some(p) = dataset_output.as_deref() {
                        write_dataset(Some(p), &grown)?;
                    }
                    Ok(trace)
                }
                Err(e) => Err(e),
            };
            finish_anytime(result, output.as_deref(), trace.as_deref())
        }
        Command::Validate { data, tree, matrix } => {
            let (dataset, linkage) = data.load()?;
            let t = read_tree(&tree)?;
            if let Some(p) = matrix.as_deref() {
                let u = cophenetic_matrix(&dataset, linkage, &t)?;
                emit(Some(p), |w| Ok(u.write_csv(w)?))?;
            }
            let rho = cophenetic_correlation(&dataset, linkage, &t)?;
            println!("{rho}");
            Ok(())
        }
        Command::Experiment {
            sizes,
            trials,
            kinds,
            source,
            images,
            labels,
            dissimilarity,
            seed,
            output,
        } => {
            let source = match (source, images, labels) {
                (Source::Synthetic, _, _) => DataSource::Synthetic,
                (Source::Mnist, Some(i), Some(l)) => {
                    DataSource::Mnist(Arc::new(MnistCorpus::from_files(i, l)?))
                }
                (Source::Mnist, _, _) => bail!("--source mnist requires --images and --labels"),
            };
            let config = ExperimentConfig {
                sizes,
                trials,
                kinds,
                source,
                dissimilarity,
                seed,
            };
            let report = run_experiment(&config)?;
            emit(output.as_deref(), |w| Ok(report.write_csv(w)?))
        }
    }
}
