mod cache;
mod commands;
mod groupspec;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use parfus_core::subsets::DEFAULT_CAP;
use sha2::{Digest, Sha256};

use cache::Cache;
use commands::{Ctx, Failure, Format, Suite};

/// Partial group algebras of finite groups: blocks, simple modules, fusion
/// rules and the embedding functors.
#[derive(Parser)]
#[command(name = "parfus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// cyclic:N | product:N1xN2[x...] | sym:N | dihedral:N | quaternion | file:PATH
    #[arg(long, global = true)]
    group: Option<String>,
    /// gens:i,j (generator element indices) or all
    #[arg(long, global = true)]
    subgroup: Option<String>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[arg(long, value_enum, default_value = "all", global = true)]
    suite: Suite,
    /// Largest group order for which the e-subsets are enumerated.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    cap: usize,
    #[arg(long, env = "PARFUS_CACHE", global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Order, elements, number of e-subsets and orbits, dimension
    Info,
    /// Blocks M_n(kG_X) and the complex Wedderburn decomposition
    Decompose,
    /// Simple modules M_(X,α) with dimensions
    Simples,
    /// Fusion rules of the simple modules
    Fusion,
    /// Run verification suites (exit 1 on any failure)
    Verify,
    /// Christmas Tree functor kH-mod → k_par G-mod
    Christmas,
    /// Matryoshka functor k_par H-mod → k_par G-mod (abelian G)
    Matryoshka,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Decompose => "decompose",
            Command::Simples => "simples",
            Command::Fusion => "fusion",
            Command::Verify => "verify",
            Command::Christmas => "christmas",
            Command::Matryoshka => "matryoshka",
        }
    }
}

fn cache_key(cli: &Cli, spec: &str) -> String {
    // file specs are keyed by content so an edited file is a miss
    let content = spec
        .strip_prefix("file:")
        .and_then(|p| fs::read(p).ok())
        .map(|b| format!("{:x}", Sha256::digest(&b)))
        .unwrap_or_default();
    format!(
        "{}\n{spec}\n{content}\n{}\n{:?}\n{:?}\n{}",
        cli.command.name(),
        cli.subgroup.as_deref().unwrap_or("-"),
        cli.suite,
        cli.format,
        cli.cap
    )
}

fn run(cli: &Cli) -> Result<(i32, String), Failure> {
    let spec = cli.group.as_deref().ok_or_else(|| Failure::usage("--group is required"))?.trim().to_string();
    let cache = if cli.no_cache { None } else { cli.cache.as_deref().map(Cache::new) };
    let key = cache_key(cli, &spec);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok(hit);
    }
    let group = groupspec::parse_group_spec(&spec).map_err(Failure::usage)?;
    let subgroup = cli.subgroup.as_deref().map(groupspec::parse_subgroup_spec).transpose().map_err(Failure::usage)?;
    let ctx = Ctx { spec, group, cap: cli.cap, format: cli.format, subgroup, suite: cli.suite };
    let out = match cli.command {
        Command::Info => commands::info(&ctx),
        Command::Decompose => commands::decompose(&ctx),
        Command::Simples => commands::simples(&ctx),
        Command::Fusion => commands::fusion(&ctx),
        Command::Verify => commands::verify(&ctx),
        Command::Christmas => commands::christmas(&ctx),
        Command::Matryoshka => commands::matryoshka(&ctx),
    }?;
    if let Some(c) = &cache {
        c.put(&key, out.0, &out.1);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((code, doc)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(doc.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
