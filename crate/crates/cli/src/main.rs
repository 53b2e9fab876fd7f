use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nlts_cli::commands::{self, InputFormat};
use nlts_cli::dataset::Column;
use nlts_cli::{CliError, Result};
use nlts_core::{CodecConfig, EntropyCoderId, MethodVersion, QuantizerConfig, TransformConfig};

#[derive(Parser)]
#[command(name = "nlts", about = "Near-lossless time series compressor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a column of decimal values.
    Compress {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        codec: CodecArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Decompress to one value per line.
    Decompress { input: PathBuf, output: PathBuf },
    /// Check that two series agree to within epsilon.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        epsilon: f64,
    },
    /// Run a parameter sweep over a dataset.
    Bench {
        dataset_spec: PathBuf,
        sweep_spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a compressed file's header.
    Stats { input: PathBuf },
}

#[derive(Args)]
struct CodecArgs {
    #[arg(long = "version", value_parser = ["1", "2"], default_value = "2")]
    method: String,
    #[arg(long, default_value = "arithmetic")]
    coder: EntropyCoderId,
    #[arg(long = "block", default_value_t = 16)]
    block_len: usize,
    #[arg(long, default_value_t = 9)]
    tau: usize,
    #[arg(long, default_value_t = 3, conflicts_with = "lossless")]
    digits: u8,
    #[arg(long)]
    lossless: bool,
}

impl CodecArgs {
    fn config(&self) -> Result<CodecConfig> {
        let version = if self.method == "1" {
            MethodVersion::V1
        } else {
            MethodVersion::V2
        };
        let cfg = CodecConfig {
            transform: TransformConfig::new(version, self.block_len, self.tau)?,
            quantizer: if self.lossless {
                QuantizerConfig::Lossless
            } else {
                QuantizerConfig::Rounding { digits: self.digits }
            },
            coder: self.coder,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct FormatArgs {
    /// Column index or header name.
    #[arg(long, default_value = "0")]
    column: String,
    /// Field delimiter: one character, "tab" or "whitespace".
    #[arg(long, default_value = ",")]
    delimiter: String,
    /// The first line holds column names.
    #[arg(long)]
    header: bool,
}

impl FormatArgs {
    fn format(&self) -> InputFormat {
        InputFormat {
            column: match self.column.parse() {
                Ok(i) => Column::Index(i),
                Err(_) => Column::Name(self.column.clone()),
            },
            delimiter: self.delimiter.clone(),
            header: self.header || self.column.parse::<usize>().is_err(),
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compress {
            input,
            output,
            codec,
            format,
        } => {
            let m = commands::compress(&input, &output, &codec.config()?, &format.format())?;
            println!(
                "{} -> {} bytes, CR {:.3}, max error {}",
                m.input_bytes,
                m.output_bytes,
                m.cr,
                m.max_abs_error.unwrap_or(0.0)
            );
        }
        Command::Decompress { input, output } => {
            let m = commands::decompress(&input, &output)?;
            println!("{} -> {} bytes", m.output_bytes, m.input_bytes);
        }
        Command::Verify { a, b, epsilon } => {
            let r = commands::verify_files(&a, &b, epsilon)?;
            if !r.ok {
                return Err(CliError::Verification(format!(
                    "max error {} at sample {} exceeds {epsilon}",
                    r.max_abs_error, r.argmax
                )));
            }
            println!("ok, max error {}", r.max_abs_error);
        }
        Command::Bench {
            dataset_spec,
            sweep_spec,
            out,
        } => {
            let rows = commands::bench(&dataset_spec, &sweep_spec, &out)?;
            print!("{}", commands::format_rows(&rows));
            let failed = rows.iter().filter(|r| !r.is_ok()).count();
            if failed > 0 {
                return Err(CliError::Verification(format!(
                    "{failed} of {} rows failed",
                    rows.len()
                )));
            }
        }
        Command::Stats { input } => print!("{}", commands::stats(&input)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nlts: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
