mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

/// Basic sets, lightnings, exact decompositions and basic embeddings of trees.
#[derive(Parser)]
#[command(name = "basicity", version)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Check a previously printed certificate against the input instead of
    /// solving.
    #[arg(long, value_name = "FILE", global = true)]
    verify: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite point sets.
    #[command(subcommand)]
    Points(PointsCmd),
    /// The marked-board game.
    #[command(subcommand)]
    Game(GameCmd),
    /// Graphs and the embeddability criterion.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Explicit embeddings.
    #[command(subcommand)]
    Embed(EmbedCmd),
}

#[derive(Subcommand)]
enum PointsCmd {
    /// E-iteration, lightning lengths and the basicness verdict.
    Analyze { points: PathBuf },
    /// Splits a valuation into per-axis functions.
    Decompose(DecomposeArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    points: PathBuf,
    values: PathBuf,
    /// Least-squares approximation by alternating projections, optionally
    /// followed by the sweep limit and the tolerance.
    #[arg(long, num_args = 0..=2, value_names = ["ITERS", "TOL"])]
    lsq: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum GameCmd {
    /// Decides the winner, optionally for one assignment of numbers.
    Solve(GameArgs),
}

#[derive(Args)]
struct GameArgs {
    board: Option<PathBuf>,
    values: Option<PathBuf>,
    /// List the minimal losing sets of the n x n x n cube (n <= 3).
    #[arg(long, value_name = "N")]
    enumerate: Option<usize>,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Forbidden subgraphs, R_n containment and the book defect.
    Check {
        graph: PathBuf,
        /// Also decide embeddability into the book with this many pages.
        #[arg(long, value_name = "N")]
        book: Option<usize>,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Builds the planar embedding of R_n.
    Rn {
        n: usize,
        /// Samples per segment.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Write the sampled points here (needs --k).
        #[arg(long, value_name = "FILE")]
        points: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Ctx {
        format: cli.format,
        verify: cli.verify,
    };
    let result = match cli.command {
        Command::Points(PointsCmd::Analyze { points }) => commands::points_analyze(&ctx, &points),
        Command::Points(PointsCmd::Decompose(a)) => {
            commands::points_decompose(&ctx, &a.points, &a.values, a.lsq.as_deref())
        }
        Command::Game(GameCmd::Solve(a)) => {
            commands::game_solve(&ctx, a.board.as_deref(), a.values.as_deref(), a.enumerate)
        }
        Command::Graph(GraphCmd::Check { graph, book }) => {
            commands::graph_check(&ctx, &graph, book)
        }
        Command::Embed(EmbedCmd::Rn { n, k, svg, points }) => {
            commands::embed_rn(&ctx, n, k, svg.as_deref(), points.as_deref())
        }
    };
    match result {
        Ok((code, out)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
