use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use posner_cli::config::{acceptance_suite, ConfigFile, ExperimentConfig, Format};
use posner_cli::estimates::{estimate, EstimateInputs, EstimateKind};
use posner_cli::experiments::run_experiment;
use posner_cli::report::{canonical_json, to_csv, ExperimentResult};
use posner_cli::selftest::run_suite;
use posner_cli::{CliError, CliResult, EXIT_FAILURE, EXIT_OK};
use posner_core::machine::{run_script, Instruction};
use posner_core::spin::{charge_table_csv, trio_table_csv};

#[derive(Parser)]
#[command(name = "posner", version, about = "Posner-molecule quantum computation simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Diffusion,
    Rotation,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config or a suite of them.
    Run {
        config: PathBuf,
        /// Output file; overrides the config's output path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Execute a JSON program of machine instructions and print its trace.
    Script {
        program: PathBuf,
        /// Run seed for stochastic instructions without their own seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form time-scale estimates.
    Estimate {
        #[arg(value_enum)]
        kind: KindArg,
        /// Magnetic field, T.
        #[arg(long = "B", default_value_t = EstimateInputs::default().b)]
        b: f64,
        /// Diffusion length, m.
        #[arg(long, default_value_t = EstimateInputs::default().l)]
        l: f64,
        /// Viscosity, Pa s.
        #[arg(long, default_value_t = EstimateInputs::default().eta)]
        eta: f64,
        /// Hydrodynamic radius, m.
        #[arg(long, default_value_t = EstimateInputs::default().r)]
        r: f64,
        /// Temperature, K.
        #[arg(long = "T", default_value_t = EstimateInputs::default().t)]
        t: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Dump the trio basis and the three charge-sector tables as CSV.
    Tables {
        /// Write one file per table here instead of printing.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the bundled acceptance suite.
    Selftest {
        /// Also write the full outcomes as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn render(results: &[ExperimentResult], single: bool, format: Format) -> CliResult<String> {
    match format {
        Format::Csv => to_csv(results),
        Format::Json if single => canonical_json(&results[0]),
        Format::Json => canonical_json(&results),
    }
}

fn run(config_path: &Path, out: Option<PathBuf>, format: Option<FormatArg>) -> CliResult<i32> {
    let file = ConfigFile::load(config_path)?;
    let base_dir = config_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let configs: Vec<&ExperimentConfig> = match &file {
        ConfigFile::Single(c) => vec![c],
        ConfigFile::Suite(s) => s.criteria.iter().flat_map(|c| &c.experiments).collect(),
    };
    let results = configs.iter().map(|c| run_experiment(c, &base_dir)).collect::<CliResult<Vec<_>>>()?;
    let spec = file.output().cloned().unwrap_or_default();
    let format = format.map(Format::from).unwrap_or(spec.format);
    let path = out.or_else(|| spec.path.map(|p| base_dir.join(p)));
    emit(&render(&results, matches!(file, ConfigFile::Single(_)), format)?, path.as_deref())?;
    let failed: Vec<String> = results
        .iter()
        .flat_map(|r| r.failures().into_iter().map(move |n| format!("{}/{n}", r.experiment)))
        .collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        Ok(EXIT_FAILURE)
    }
}

fn script(program: &Path, seed: Option<u64>, out: Option<PathBuf>) -> CliResult<i32> {
    let text = std::fs::read_to_string(program)
        .map_err(|e| CliError::Usage(format!("cannot read program {}: {e}", program.display())))?;
    let instructions: Vec<Instruction> =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("program: {e}")))?;
    let unseeded = instructions.iter().any(|i| {
        matches!(
            i,
            Instruction::AttemptBinding { seed: None, force: None, .. }
                | Instruction::BindToReference { seed: None, force: None, .. }
        )
    });
    if unseeded && seed.is_none() {
        return Err(CliError::Usage("program has unseeded binding attempts; pass --seed".into()));
    }
    let (_, trace) = run_script::<f64>(&text, seed.unwrap_or(0))?;
    emit(&canonical_json(&trace)?, out.as_deref())?;
    Ok(EXIT_OK)
}

fn estimate_cmd(kind: KindArg, inputs: EstimateInputs, format: FormatArg) -> CliResult<i32> {
    let kind = match kind {
        KindArg::Diffusion => EstimateKind::Diffusion,
        KindArg::Rotation => EstimateKind::Rotation,
    };
    let estimates = estimate(kind, &inputs)?;
    let text = match format {
        FormatArg::Json => canonical_json(&json!({ "kind": kind, "inputs": inputs, "estimates": estimates }))?,
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| CliError::Invariant(e.to_string());
            w.write_record(["name", "value", "unit", "order_of_magnitude"]).map_err(err)?;
            for e in &estimates {
                w.write_record([e.name.clone(), e.value.to_string(), e.unit.clone(), e.order_of_magnitude.to_string()])
                    .map_err(err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Invariant(e.to_string()))?)
                .map_err(|e| CliError::Invariant(e.to_string()))?
        }
    };
    emit(&text, None)?;
    Ok(EXIT_OK)
}

fn tables(out_dir: Option<PathBuf>) -> CliResult<i32> {
    let tables = [
        ("trio_basis.csv", trio_table_csv()),
        ("charge_tau0.csv", charge_table_csv(0)),
        ("charge_tau1.csv", charge_table_csv(1)),
        ("charge_tau2.csv", charge_table_csv(2)),
    ];
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(&dir)?;
            for (name, text) in &tables {
                std::fs::write(dir.join(name), text)?;
            }
        }
        None => {
            let blocks: Vec<String> = tables.iter().map(|(name, text)| format!("# {name}\n{text}")).collect();
            print!("{}", blocks.join("\n"));
        }
    }
    Ok(EXIT_OK)
}

fn selftest(json_path: Option<PathBuf>) -> CliResult<i32> {
    let suite = acceptance_suite()?;
    let outcomes = run_suite(&suite, Path::new("."), |o| println!("{}", o.line()));
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    if let Some(p) = json_path {
        emit(&canonical_json(&outcomes)?, Some(&p))?;
    }
    Ok(if passed == outcomes.len() { EXIT_OK } else { EXIT_FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, out, format } => run(&config, out, format),
        Command::Script { program, seed, out } => script(&program, seed, out),
        Command::Estimate { kind, b, l, eta, r, t, format } => {
            estimate_cmd(kind, EstimateInputs { b, l, eta, r, t }, format)
        }
        Command::Tables { out_dir } => tables(out_dir),
        Command::Selftest { json } => selftest(json),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
