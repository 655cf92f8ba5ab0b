use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::Output;

#[derive(Debug, Parser)]
#[command(
    name = "twotrans",
    version,
    about = "Coxeter double cosets, A_k buildings, weight decompositions and the 2-transitive tables"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One pretty-printed JSON document.
    Json,
    /// One JSON record per line.
    Jsonl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep finite irreducible Coxeter diagrams for 2-transitive corank-1 actions.
    Classify {
        #[arg(long)]
        max_rank: usize,
        #[arg(long, default_value_t = 12)]
        max_dihedral: u32,
        /// Report every (diagram, node) pair, not just the 2-transitive ones.
        #[arg(long)]
        all: bool,
    },
    /// Double cosets of the maximal parabolic subgroup omitting one node.
    DoubleCosets {
        /// Diagram name (`E8`, `I2(5)`) or JSON document.
        #[arg(long = "type")]
        diagram: String,
        #[arg(long)]
        node: usize,
        /// Largest orbit to enumerate.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Checks on the building of GL_{k+1}(F_q).
    Building {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = BuildingCheck::All)]
        check: BuildingCheck,
        /// Largest chamber count to build.
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Weight computations for a simple root system.
    Decompose {
        /// Root system name, e.g. `B4`.
        #[arg(long = "type")]
        root_system: String,
        #[arg(long, value_enum)]
        op: Op,
        /// Fundamental-weight coordinates, e.g. `0,0,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Second weight for `tensor`.
        #[arg(long, allow_hyphen_values = true)]
        weight2: Option<String>,
        /// Largest module dimension to expand.
        #[arg(long)]
        dim_cap: Option<u128>,
    },
    /// Query and check the classification tables.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildingCheck {
    Structure,
    Points,
    Axioms,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Sym2,
    Alt2,
    Tensor,
    Dim,
    Dual,
    Realtype,
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// List rows matching every given filter.
    Lookup {
        /// Table id or alias.
        #[arg(long)]
        table: Option<String>,
        /// Ambient vector space dimension.
        #[arg(long)]
        m: Option<i64>,
        /// Dimension of the space acted on.
        #[arg(long)]
        space_dim: Option<i64>,
        #[arg(long, value_parser = ["sphere", "projective", "vector"])]
        space_kind: Option<String>,
        #[arg(long, value_parser = ["sphere_transitive", "proj_transitive", "linear_transitive", "sharply_transitive", "complex_structure_marked"])]
        flag: Option<String>,
        /// Substring of the group name.
        #[arg(long)]
        group: Option<String>,
        /// Let families such as SO(n) match dimension filters.
        #[arg(long)]
        expand_families: bool,
    },
    /// Run every arithmetic cross-check on the shipped tables.
    Verify,
    /// Numerically probe regularity of the sharply transitive groups.
    Probe {
        /// Entry id or group name; all probeable entries when omitted.
        #[arg(long)]
        entry: Option<String>,
        /// Spiral parameters; repeatable.
        #[arg(long = "a", allow_negative_numbers = true, default_values_t = [1.0])]
        a: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn run(cli: Cli) -> Result<Output, String> {
    match cli.command {
        Command::Classify {
            max_rank,
            max_dihedral,
            all,
        } => commands::classify(max_rank, max_dihedral, all),
        Command::DoubleCosets {
            diagram,
            node,
            limit,
        } => commands::double_cosets(&diagram, node, limit),
        Command::Building {
            rank,
            q,
            check,
            cap,
        } => {
            let (structure, points, axioms) = match check {
                BuildingCheck::Structure => (true, false, false),
                BuildingCheck::Points => (false, true, false),
                BuildingCheck::Axioms => (false, false, true),
                BuildingCheck::All => (true, true, true),
            };
            commands::building(rank, q, cap, structure, points, axioms)
        }
        Command::Decompose {
            root_system,
            op,
            weight,
            weight2,
            dim_cap,
        } => {
            let op = match op {
                Op::Sym2 => "sym2",
                Op::Alt2 => "alt2",
                Op::Tensor => "tensor",
                Op::Dim => "dim",
                Op::Dual => "dual",
                Op::Realtype => "realtype",
            };
            commands::decompose(&root_system, op, &weight, weight2.as_deref(), dim_cap)
        }
        Command::Catalog { action } => match action {
            CatalogCommand::Lookup {
                table,
                m,
                space_dim,
                space_kind,
                flag,
                group,
                expand_families,
            } => commands::catalog_lookup(
                table,
                m,
                space_dim,
                space_kind,
                flag,
                group,
                expand_families,
            ),
            CatalogCommand::Verify => commands::catalog_verify(),
            CatalogCommand::Probe {
                entry,
                a,
                samples,
                tol,
            } => commands::catalog_probe(entry.as_deref(), &a, samples, tol, cli.seed),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    let out = match run(cli) {
        Ok(out) => out,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let rendered = match format {
        Format::Text => out.text.clone(),
        Format::Json => serde_json::to_string_pretty(&out.document).expect("serializable") + "\n",
        Format::Jsonl => {
            let records = if out.records.is_empty() {
                std::slice::from_ref(&out.document)
            } else {
                &out.records[..]
            };
            records
                .iter()
                .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
                .collect()
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(rendered.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    if out.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
