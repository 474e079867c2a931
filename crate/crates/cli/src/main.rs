mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "mapcone", version, about = "Exact cone, Kodaira-energy and orbit-count checks for stable maps to P^1")]
struct Cli {
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Full,
    Fiber,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curve-by-divisor intersection table.
    Pairings {
        #[arg(long)]
        n: usize,
    },
    /// Certify that B[2], ..., B[n] generate the invariant effective cone.
    ConeCert {
        #[arg(long)]
        n: usize,
    },
    /// Kodaira energy of the hyperplane class; expected 2/n.
    Kodaira {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "full")]
        space: Space,
    },
    /// Derive the linear relation between L and the B[s] by counting.
    Relation {
        #[arg(long)]
        n: usize,
    },
    /// Check the basis identities of the fiber model.
    FiberCheck {
        #[arg(long)]
        n: usize,
    },
    /// Discriminant of a binary form.
    Disc {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Substitute (z, w) -> (a z + b w, c z + d w).
    Act {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Count orbit elements of bounded height on a geometric grid ending at bmax.
    Count {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        bmax: u64,
        /// Number of grid points bmax/2^(k-1), ..., bmax/2, bmax.
        #[arg(long, default_value_t = 9)]
        grid: usize,
        #[arg(long, default_value_t = 4)]
        t0: u64,
        #[arg(long, default_value = "2")]
        growth: String,
        #[arg(long, default_value_t = 2)]
        stab: u32,
    },
    /// Fit the growth exponent of a B,N series.
    Fit {
        #[arg(long = "in")]
        input: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pairings { n } => commands::pairings(*n),
        Command::ConeCert { n } => commands::cone_cert(*n),
        Command::Kodaira { n, space } => commands::kodaira(*n, *space),
        Command::Relation { n } => commands::relation(*n),
        Command::FiberCheck { n } => commands::fiber_check(*n),
        Command::Disc { coeffs } => commands::discriminant(coeffs),
        Command::Act { coeffs, matrix } => commands::act_on(coeffs, matrix),
        Command::Count {
            coeffs,
            bmax,
            grid,
            t0,
            growth,
            stab,
        } => commands::count(commands::CountArgs {
            coeffs,
            bmax: *bmax,
            grid: *grid,
            t0: *t0,
            growth,
            stab: *stab,
        }),
        Command::Fit { input } => commands::fit(input),
    };
    match result {
        Ok(env) => {
            println!("{}", env.render(cli.format));
            ExitCode::from(env.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
