//! Command-line flags and their translation into a [`JobConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{CartanSource, Command, CompareMode, Format, JobConfig, Op, CONFIG_SCHEMA_VERSION};
use crate::error::CliError;
use crate::parse::{parse_ints, parse_label, parse_matrix, parse_weight_list, parse_word};

#[derive(Debug, Parser)]
#[command(name = "kmcrystal", version, about = "Crystals of Kac-Moody algebras and their tensor products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct CartanArgs {
    /// Builtin Cartan type: A_n, B_n, C_n, D_n, E6-E8, F4, G2, A_n^(1).
    #[arg(long, conflicts_with_all = ["cartan_matrix", "cartan_file"])]
    pub cartan: Option<String>,
    /// Cartan matrix literal, rows separated by ';' (e.g. "2,-1;-1,2").
    #[arg(long, allow_hyphen_values = true, conflicts_with = "cartan_file")]
    pub cartan_matrix: Option<String>,
    /// JSON file with a Cartan matrix.
    #[arg(long)]
    pub cartan_file: Option<PathBuf>,
    /// Highest weights as coroot pairings; factors separated by ';'
    /// (in rank 1 commas also separate factors).
    #[arg(long, allow_hyphen_values = true)]
    pub hw: Option<String>,
    /// Depth cutoff for crystal generation (required outside finite type).
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result to this file. Relative paths are resolved against
    /// $KMCRYSTAL_OUTPUT_DIR when it is set.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print the job configuration as JSON instead of running it.
    #[arg(long)]
    pub emit_config: bool,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Generate a crystal B(ν) and export it.
    Crystal {
        #[command(flatten)]
        cartan: CartanArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Apply a tensor product operator e_i or f_i to a label.
    TensorOp {
        #[command(flatten)]
        cartan: CartanArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Label as per-factor weights, e.g. "-1,1,1" or "1,-1;0@1".
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long, value_enum)]
        op: Op,
        /// Node index (0-based).
        #[arg(long)]
        i: usize,
    },
    /// Print the reduced i-signature of a label.
    Signature {
        #[command(flatten)]
        cartan: CartanArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long)]
        i: usize,
    },
    /// Decompose a tensor product into connected components.
    Decompose {
        #[command(flatten)]
        cartan: CartanArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// String parametrization of each factor of a label.
    StringParam {
        #[command(flatten)]
        cartan: CartanArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        /// Word as "cycle" or "prefix/cycle"; defaults to 0,1,…,rank-1 repeated.
        #[arg(long)]
        word: Option<String>,
    },
    /// Compare weights, weight tuples or exponent sequences.
    Compare {
        #[command(flatten)]
        cartan: CartanArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, value_enum)]
        mode: CompareMode,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        word: Option<String>,
    },
    /// Residue condensation of a partition.
    Condense {
        #[command(flatten)]
        out: OutputArgs,
        /// Comma-separated parts, e.g. "7,5,1,1,1,1,1".
        #[arg(long)]
        partition: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: usize,
    },
    /// Run the invariant suite on the given crystals.
    Verify {
        #[command(flatten)]
        cartan: CartanArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a job from a JSON configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Write the result to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// A parsed invocation: the job plus where its output goes.
#[derive(Debug)]
pub struct Invocation {
    pub job: JobConfig,
    pub output: Option<PathBuf>,
    pub emit_config: bool,
}

impl CartanArgs {
    fn source(&self) -> Option<Result<CartanSource, CliError>> {
        if let Some(name) = &self.cartan {
            Some(Ok(CartanSource::Builtin(name.clone())))
        } else if let Some(m) = &self.cartan_matrix {
            Some(parse_matrix(m).map(CartanSource::Matrix))
        } else {
            self.cartan_file.clone().map(|p| Ok(CartanSource::File(p)))
        }
    }
}

struct Partial {
    cartan: Option<CartanSource>,
    rank: usize,
    hw: Vec<Vec<i64>>,
    depth: Option<usize>,
}

fn resolve(args: &CartanArgs) -> Result<Partial, CliError> {
    let cartan = args.source().transpose()?;
    let rank = match &cartan {
        Some(src) => src.load()?.rank(),
        None => 0,
    };
    let hw = match (&args.hw, &cartan) {
        (Some(s), Some(_)) => parse_weight_list(s, rank, "highest weight")?,
        (Some(_), None) => return Err(CliError::Usage("--hw needs a Cartan type".into())),
        (None, _) => Vec::new(),
    };
    Ok(Partial { cartan, rank, hw, depth: args.depth })
}

fn job(p: Partial, out: &OutputArgs, command: Command) -> Invocation {
    Invocation {
        job: JobConfig {
            schema_version: CONFIG_SCHEMA_VERSION,
            cartan: p.cartan,
            hw: p.hw,
            depth: p.depth,
            format: out.format,
            seed: out.seed,
            command,
        },
        output: out.output.clone(),
        emit_config: out.emit_config,
    }
}

fn need_rank(p: &Partial) -> Result<usize, CliError> {
    if p.cartan.is_none() {
        return Err(CliError::Usage("a Cartan type is required".into()));
    }
    Ok(p.rank)
}

impl Sub {
    /// Builds the job. `run` reads its configuration file here.
    pub fn into_invocation(self) -> Result<Invocation, CliError> {
        Ok(match self {
            Sub::Crystal { cartan, out } => job(resolve(&cartan)?, &out, Command::Crystal),
            Sub::TensorOp { cartan, out, label, op, i } => {
                let p = resolve(&cartan)?;
                let label = parse_label(&label, need_rank(&p)?)?;
                job(p, &out, Command::TensorOp { label, op, i })
            }
            Sub::Signature { cartan, out, label, i } => {
                let p = resolve(&cartan)?;
                let label = parse_label(&label, need_rank(&p)?)?;
                job(p, &out, Command::Signature { label, i })
            }
            Sub::Decompose { cartan, out } => job(resolve(&cartan)?, &out, Command::Decompose),
            Sub::StringParam { cartan, out, label, word } => {
                let p = resolve(&cartan)?;
                let label = parse_label(&label, need_rank(&p)?)?;
                let word = word.as_deref().map(parse_word).transpose()?;
                job(p, &out, Command::StringParam { label, word })
            }
            Sub::Compare { cartan, out, mode, a, b, word } => {
                let p = resolve(&cartan)?;
                let word = word.as_deref().map(parse_word).transpose()?;
                job(p, &out, Command::Compare { mode, a, b, word })
            }
            Sub::Condense { out, partition, p, r } => {
                let partition = parse_ints::<usize>(&partition, "partition")?;
                let empty = Partial { cartan: None, rank: 0, hw: Vec::new(), depth: None };
                job(empty, &out, Command::Condense { partition, p, r })
            }
            Sub::Verify { cartan, out } => job(resolve(&cartan)?, &out, Command::Verify),
            Sub::Run { config, output } => {
                let text =
                    std::fs::read_to_string(&config).map_err(|e| CliError::Io(config.display().to_string(), e))?;
                let job: JobConfig = serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", config.display())))?;
                Invocation { job, output, emit_config: false }
            }
        })
    }
}
