use std::fmt::Write as _;
use std::path::Path;

use nlts_core::container::{HEADER_LEN, MAGIC};
use nlts_core::{compress_decimal, decompress_stream, CodecConfig, RunMetrics, Scale, StreamHeader};

use crate::dataset::{self, Column, DatasetSpec};
use crate::error::{CliError, Result};
use crate::sweep::{self, ReportRow, Series, SweepSpec};
use crate::verify::{self, VerifyReport};

/// How to pull one column out of a delimited text input.
#[derive(Clone, Debug)]
pub struct InputFormat {
    pub column: Column,
    pub delimiter: String,
    pub header: bool,
}

impl Default for InputFormat {
    fn default() -> Self {
        InputFormat {
            column: Column::Index(0),
            delimiter: ",".into(),
            header: false,
        }
    }
}

pub fn read_tokens(path: &Path, format: &InputFormat) -> Result<Vec<String>> {
    let spec = DatasetSpec {
        column: format.column.clone(),
        delimiter: format.delimiter.clone(),
        header: format.header,
        ..DatasetSpec::plain(path)
    };
    Ok(dataset::ingest(&spec)?)
}

pub fn compress(input: &Path, output: &Path, cfg: &CodecConfig, format: &InputFormat) -> Result<RunMetrics> {
    let tokens = read_tokens(input, format)?;
    let (stream, metrics) = compress_decimal(&tokens, cfg)?;
    std::fs::write(output, stream.as_bytes()).map_err(|e| CliError::io(output, e))?;
    Ok(metrics)
}

pub fn decompress(input: &Path, output: &Path) -> Result<RunMetrics> {
    let bytes = std::fs::read(input).map_err(|e| CliError::io(input, e))?;
    let (decoded, metrics) = decompress_stream(&bytes)?;
    std::fs::write(output, decoded.render_text()).map_err(|e| CliError::io(output, e))?;
    Ok(metrics)
}

/// Reads samples from a compressed stream or from one-value-per-line text.
pub fn read_values(path: &Path) -> Result<Vec<f64>> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    if bytes.starts_with(&MAGIC) {
        return Ok(decompress_stream(&bytes)?.0.to_f64());
    }
    let tokens = read_tokens(path, &InputFormat::default())?;
    Ok(tokens
        .iter()
        .map(|t| t.parse().expect("ingest checks numbers"))
        .collect())
}

pub fn verify_files(a: &Path, b: &Path, epsilon: f64) -> Result<VerifyReport> {
    verify::verify(&read_values(a)?, &read_values(b)?, epsilon)
}

pub fn stats(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let h = StreamHeader::parse(&bytes)?;
    let scale = match h.scale {
        Scale::Rounded(d) => format!("{d} digits (max error {})", h.scale.epsilon()),
        Scale::Lossless(d) => format!("lossless ({d} digits)"),
    };
    let mut out = String::new();
    writeln!(out, "method:        version {}", h.method.as_u8()).unwrap();
    writeln!(out, "coder:         {}", h.coder).unwrap();
    writeln!(out, "block length:  {}", h.block_len).unwrap();
    writeln!(out, "tau:           {}", h.tau).unwrap();
    writeln!(out, "scale:         {scale}").unwrap();
    writeln!(out, "samples:       {}", h.sample_count).unwrap();
    writeln!(out, "file size:     {} bytes ({HEADER_LEN}-byte header)", bytes.len()).unwrap();
    Ok(out)
}

/// Ingests a dataset, runs the sweep, and writes the CSV report and its plot data.
pub fn bench(dataset_spec: &Path, sweep_spec: &Path, report: &Path) -> Result<Vec<ReportRow>> {
    let ds = DatasetSpec::load(dataset_spec)?;
    let sw = SweepSpec::load(sweep_spec)?;
    let sha = dataset::check_source(&ds)?;
    let tokens = dataset::ingest(&ds)?;
    let rows = sweep::run_sweep(
        &Series {
            name: &ds.name,
            tokens: &tokens,
            sha256: &sha,
        },
        &sw,
    )?;
    sweep::write_report(report, &rows)?;
    sweep::write_plot_data(&sweep::plot_path(report), &rows)?;
    Ok(rows)
}

pub fn format_rows(rows: &[ReportRow]) -> String {
    let mut out = String::from("dataset   v coder             L    tau  d   CR       enc MB/s  dec MB/s  status\n");
    for r in rows {
        let d = if r.lossless {
            format!("{}*", r.digits)
        } else {
            r.digits.to_string()
        };
        let rate = |x: Option<f64>| x.map_or("-".to_string(), |x| format!("{x:.2}"));
        writeln!(
            out,
            "{:<9} {} {:<17} {:<4} {:<4} {:<3} {:<8.3} {:<9} {:<9} {}",
            r.dataset,
            r.version,
            r.coder,
            r.block_len,
            r.tau,
            d,
            r.cr,
            rate(r.encode_mb_s),
            rate(r.decode_mb_s),
            r.status
        )
        .unwrap();
    }
    out
}
