use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use twochar::atlas::Atlas;
use twochar::corpus;
use twochar::error::{Error, Result};
use twochar::gkchar::char_table;
use twochar::group::FiniteGroup;
use twochar::io::{self, Bounds, BurnsideReport, H2Report};
use twochar::verify::{run_suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "twochar", version, about = "2-characters of finite groups")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CrossedCommand {
    Validate,
    Pi,
    Triples,
}

#[derive(Subcommand)]
enum Command {
    /// Second cohomology with cyclic coefficients and the Schur classes.
    H2 {
        /// Group JSON file or bundled group name.
        group: String,
        #[arg(long)]
        level: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Burnside ring basis, multiplication table and marks.
    Burnside {
        group: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Show cyclotomic values as decimal approximations.
        #[arg(long)]
        numeric: bool,
    },
    /// 2-character table on commuting pairs.
    CharTable {
        group: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Report whether the three character formulas agree.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        numeric: bool,
    },
    /// Run a verification suite: shapiro, oracle, burnside or crossed.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        iters: usize,
        /// Corrupt one table entry; the suite should then fail.
        #[arg(long)]
        poison: bool,
    },
    /// Inspect a crossed module file or bundled name.
    Crossed {
        file: String,
        #[arg(value_enum)]
        command: CrossedCommand,
    },
}

fn bounds() -> Result<Bounds> {
    let mut b = Bounds::default();
    if let Ok(v) = std::env::var("TWO_CHAR_MAX_ORDER") {
        b.max_order = v.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "TWO_CHAR_MAX_ORDER must be a positive integer, got {v:?}"
            ))
        })?;
    }
    Ok(b)
}

fn read_source(arg: &str, bundled: Option<&'static str>) -> Result<String> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")));
    }
    bundled
        .map(str::to_string)
        .ok_or_else(|| Error::Parse(format!("{arg}: no such file or bundled name")))
}

fn load_group(arg: &str) -> Result<Arc<FiniteGroup>> {
    let src = read_source(arg, corpus::group_source(arg))?;
    Ok(Arc::new(io::group_from_json_bounded(&src, bounds()?)?))
}

/// Output text and whether it reports a verification failure.
fn run(command: Command) -> Result<(String, bool)> {
    Ok(match command {
        Command::H2 {
            group,
            level,
            format,
        } => {
            let r = H2Report::new(load_group(&group)?, level)?;
            match format {
                Format::Json => (r.to_json() + "\n", false),
                _ => (r.to_text(), false),
            }
        }
        Command::Burnside {
            group,
            format,
            numeric,
        } => {
            let r = BurnsideReport::new(Atlas::new(load_group(&group)?))?;
            let out = match format {
                Format::Text => r.to_text(numeric),
                Format::Json => r.to_json() + "\n",
                Format::Csv => r.to_csv(numeric),
            };
            (out, false)
        }
        Command::CharTable {
            group,
            format,
            verify,
            numeric,
        } => {
            let atlas = Atlas::new(load_group(&group)?);
            let (table, verdict) = match char_table(&atlas) {
                Ok(t) => (Some(t), None),
                Err(Error::CrossCheckFailed(w)) if verify => (None, Some(w)),
                Err(e) => return Err(e),
            };
            let mut out = match &table {
                Some(t) => match format {
                    Format::Csv => io::char_table_csv(t, &atlas, numeric),
                    Format::Json => io::char_table_json(t, &atlas) + "\n",
                    Format::Text => io::char_table_text(t, &atlas, numeric),
                },
                None => String::new(),
            };
            if verify {
                let line = match &verdict {
                    None => "PASS three-formula agreement on every commuting pair and basis pair\n"
                        .to_string(),
                    Some(w) => format!("FAIL three-formula agreement: {w}\n"),
                };
                if matches!(format, Format::Text) {
                    out.push_str(&line);
                } else {
                    eprint!("{line}");
                }
            }
            (out, verdict.is_some())
        }
        Command::Verify {
            suite,
            seed,
            iters,
            poison,
        } => {
            let report = run_suite(
                &suite,
                VerifyConfig {
                    seed,
                    iters,
                    poison,
                },
            )?;
            (report.render(), !report.passed())
        }
        Command::Crossed { file, command } => {
            let src = read_source(&file, corpus::crossed_source(&file))?;
            let k = io::crossed_data_from_json(&src, bounds()?)?.validate()?;
            let out = match command {
                CrossedCommand::Validate => io::crossed_validate_text(&k),
                CrossedCommand::Pi => io::crossed_pi_text(&k),
                CrossedCommand::Triples => io::crossed_triples_text(&k)?,
            };
            (out, false)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(text, failed)| {
        match &cli.output {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
