mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser)]
#[command(
    name = "e2",
    version,
    about = "Steenrod algebra, 𝔾∗ and Ext chart computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible form of a product of squares, e.g. "Sq2 Sq2".
    Adem {
        #[arg(required = true, num_args = 1..)]
        monomial: Vec<String>,
    },
    /// Admissible basis of the Steenrod algebra in one degree.
    Basis {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Also count the Milnor basis and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Check the Σ-structure of 𝔾∗ (or of a presented algebra) and that
    /// H_n is 𝔽 in bidegree (n, n).
    GstarVerify {
        #[arg(long, default_value_t = 2)]
        prime: u32,
        #[arg(long, default_value_t = 12)]
        max_n: i64,
        /// Presentation document to check instead of 𝔾∗.
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Print the presentation document of 𝔾∗ with generators up to
    /// `[p]_{max-dim}`.
    ExportGstar {
        #[arg(long, default_value_t = 2)]
        prime: u32,
        #[arg(long, default_value_t = 8)]
        max_dim: u32,
    },
    /// Minimal resolution of 𝔽₂ and its Ext chart.
    Resolve {
        #[arg(long)]
        max_s: u32,
        #[arg(long)]
        max_t: u32,
        #[arg(long)]
        out: PathBuf,
        /// ascii goes to stdout; svg is written next to the chart.
        #[arg(long, value_enum)]
        render: Option<Render>,
        /// Compare with the bar complex on the whole window.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Give up once some (F_s)_t exceeds this dimension.
        #[arg(long)]
        max_basis: Option<usize>,
    },
    /// Write the resolution matrices as JSON.
    Dump {
        #[arg(long)]
        max_s: u32,
        #[arg(long)]
        max_t: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Word basis of B∗ in one bidegree.
    BstarBasis {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, allow_negative_numbers = true)]
        dimension: i64,
        #[arg(long)]
        skeleton: PathBuf,
    },
    /// Adem relation generators r(a,b) with their boundaries.
    Relations {
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Adem { monomial } => commands::adem(&monomial.join(" ")),
        Command::Basis { degree, oracle } => commands::basis(degree, oracle),
        Command::GstarVerify {
            prime,
            max_n,
            presentation,
        } => commands::gstar_verify(prime, max_n, presentation.as_deref()),
        Command::ExportGstar { prime, max_dim } => commands::export_gstar(prime, max_dim),
        Command::Resolve {
            max_s,
            max_t,
            out,
            render,
            oracle,
            threads,
            max_basis,
        } => {
            let render = render.map(|r| match r {
                Render::Ascii => e2_core::resolution::ChartFormat::Ascii,
                Render::Svg => e2_core::resolution::ChartFormat::Svg,
            });
            let args = commands::ResolveArgs {
                max_s,
                max_t,
                out,
                render,
                oracle,
                max_basis,
            };
            with_threads(threads, || commands::resolve(&args))
        }
        Command::Dump { max_s, max_t, out } => commands::dump(max_s, max_t, out.as_deref()),
        Command::BstarBasis {
            degree,
            dimension,
            skeleton,
        } => commands::bstar_basis_cmd(degree, dimension, &skeleton),
        Command::Relations { max_degree } => commands::relations(max_degree),
    }
}

fn with_threads<T>(
    threads: Option<usize>,
    f: impl FnOnce() -> Result<T, Failure> + Send,
) -> Result<T, Failure>
where
    T: Send,
{
    match threads {
        None => f(),
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.partial_output() {
                print!("{out}");
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
