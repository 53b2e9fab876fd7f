//! Parameter sweeps over one dataset, with a CSV report and plot data.

use std::path::{Path, PathBuf};
use std::time::Instant;

use nlts_core::container::{canonical_text_len, quantize_decimal, render_text, MB};
use nlts_core::quantizer::code_to_f64;
use nlts_core::{
    compress_codes, compress_decimal, decompress_stream, CodecConfig, EntropyCoderId, MethodVersion, QuantizerConfig,
    Scale, TransformConfig,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::verify::slack;

pub const MIN_REPEATS: usize = 3;

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub versions: Vec<u8>,
    pub coders: Vec<String>,
    pub block_lengths: Vec<usize>,
    /// Absolute thresholds, applied at every block length.
    #[serde(default)]
    pub taus: Vec<usize>,
    /// Thresholds as a fraction of the block length, rounded to nearest.
    #[serde(default)]
    pub tau_fractions: Vec<f64>,
    #[serde(default)]
    pub digits: Vec<u8>,
    #[serde(default)]
    pub lossless: bool,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
}

fn default_repeats() -> usize {
    MIN_REPEATS
}

impl SweepSpec {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let spec: SweepSpec = toml::from_str(&text).map_err(|e| CliError::Spec {
            path: path.to_owned(),
            message: e.to_string(),
        })?;
        spec.configs().map_err(|e| match e {
            CliError::Usage(message) => CliError::Spec {
                path: path.to_owned(),
                message,
            },
            other => other,
        })?;
        Ok(spec)
    }

    /// Expands the cartesian product, rejecting empty products and τ > L.
    pub fn configs(&self) -> Result<Vec<CodecConfig>> {
        let bad = |m: String| CliError::Usage(m);
        if self.repeats < MIN_REPEATS {
            return Err(bad(format!("repeats must be at least {MIN_REPEATS}")));
        }
        let versions = self
            .versions
            .iter()
            .map(|&v| MethodVersion::from_u8(v).ok_or_else(|| bad(format!("unknown version {v}"))))
            .collect::<Result<Vec<_>>>()?;
        let coders = self
            .coders
            .iter()
            .map(|c| c.parse::<EntropyCoderId>().map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let mut quantizers: Vec<QuantizerConfig> = self
            .digits
            .iter()
            .map(|&digits| QuantizerConfig::Rounding { digits })
            .collect();
        if self.lossless {
            quantizers.push(QuantizerConfig::Lossless);
        }
        for f in &self.tau_fractions {
            if !(*f > 0.0 && *f <= 1.0) {
                return Err(bad(format!("tau fraction {f} is outside (0, 1]")));
            }
        }

        let mut out = Vec::new();
        for &version in &versions {
            for &l in &self.block_lengths {
                let taus = self.taus_for(l);
                if let Some(t) = taus.iter().find(|&&t| t > l) {
                    return Err(bad(format!("tau {t} exceeds block length {l}")));
                }
                for &tau in &taus {
                    let transform = TransformConfig::new(version, l, tau).map_err(|e| bad(e.to_string()))?;
                    for &coder in &coders {
                        for &quantizer in &quantizers {
                            let cfg = CodecConfig {
                                transform,
                                quantizer,
                                coder,
                            };
                            cfg.validate().map_err(|e| bad(e.to_string()))?;
                            out.push(cfg);
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(bad("sweep expands to no configurations".into()));
        }
        Ok(out)
    }

    fn taus_for(&self, l: usize) -> Vec<usize> {
        let mut taus = self.taus.clone();
        taus.extend(
            self.tau_fractions
                .iter()
                .map(|f| ((f * l as f64).round() as usize).max(1)),
        );
        taus
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub dataset: String,
    pub version: u8,
    pub coder: String,
    pub block_len: usize,
    pub tau: usize,
    pub lossless: bool,
    pub digits: u8,
    pub samples: usize,
    /// Size of the column's tokens as they appear in the source, one per line.
    pub raw_bytes: u64,
    /// Size of the decompressed text: every value rendered with `digits` places.
    pub canonical_bytes: u64,
    pub compressed_bytes: u64,
    /// `canonical_bytes / compressed_bytes`.
    pub cr: f64,
    /// `raw_bytes / compressed_bytes`.
    pub cr_raw: f64,
    pub encode_mb_s: Option<f64>,
    pub decode_mb_s: Option<f64>,
    pub max_abs_error: Option<f64>,
    pub status: String,
    pub input_sha256: String,
}

impl ReportRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// A dataset column ready for sweeping.
pub struct Series<'a> {
    pub name: &'a str,
    pub tokens: &'a [String],
    pub sha256: &'a str,
}

/// Runs every configuration: correctness checks in parallel, then timing one
/// configuration at a time so runs do not compete for cores.
pub fn run_sweep(series: &Series<'_>, sweep: &SweepSpec) -> Result<Vec<ReportRow>> {
    let configs = sweep.configs()?;
    let values: Vec<f64> = series
        .tokens
        .iter()
        .map(|t| t.parse::<f64>().unwrap_or(f64::NAN))
        .collect();
    let raw_bytes = series.tokens.iter().map(|t| t.len() as u64 + 1).sum();

    let mut rows: Vec<ReportRow> = configs
        .par_iter()
        .map(|cfg| check_config(series, &values, raw_bytes, cfg))
        .collect();

    for (row, cfg) in rows.iter_mut().zip(&configs) {
        if row.is_ok() {
            let (enc, dec) = time_config(series.tokens, cfg, sweep.repeats)?;
            row.encode_mb_s = Some(row.canonical_bytes as f64 / MB / enc);
            row.decode_mb_s = Some(row.canonical_bytes as f64 / MB / dec);
        }
    }
    Ok(rows)
}

fn check_config(series: &Series<'_>, values: &[f64], raw_bytes: u64, cfg: &CodecConfig) -> ReportRow {
    let mut row = ReportRow {
        dataset: series.name.to_owned(),
        version: cfg.transform.version.as_u8(),
        coder: cfg.coder.name().to_owned(),
        block_len: cfg.transform.block_len,
        tau: cfg.transform.tau,
        lossless: matches!(cfg.quantizer, QuantizerConfig::Lossless),
        digits: match cfg.quantizer {
            QuantizerConfig::Rounding { digits } => digits,
            QuantizerConfig::Lossless => 0,
        },
        samples: series.tokens.len(),
        raw_bytes,
        canonical_bytes: 0,
        compressed_bytes: 0,
        cr: 0.0,
        cr_raw: 0.0,
        encode_mb_s: None,
        decode_mb_s: None,
        max_abs_error: None,
        status: "ok".into(),
        input_sha256: series.sha256.to_owned(),
    };
    if let Err(e) = check_into(&mut row, series.tokens, values, cfg) {
        row.status = format!("error: {e}");
    }
    row
}

fn check_into(row: &mut ReportRow, tokens: &[String], values: &[f64], cfg: &CodecConfig) -> Result<()> {
    let (scale, codes) = quantize_decimal(tokens, &cfg.quantizer)?;
    row.digits = scale.digits();
    let stream = compress_codes(&codes, scale, cfg)?;
    let (decoded, _) = decompress_stream(stream.as_bytes())?;
    if decoded.codes != codes {
        return Err(CliError::Verification(
            "decoded codes differ from the quantized input".into(),
        ));
    }
    let eps = match scale {
        Scale::Rounded(d) => 10f64.powi(-i32::from(d)),
        Scale::Lossless(_) => 0.0,
    };
    let mut max_err = 0.0f64;
    for (i, (&x, &c)) in values.iter().zip(&codes).enumerate() {
        let err = (x - code_to_f64(c, scale.digits())).abs();
        if err.is_nan() || err > slack(eps, x) {
            return Err(CliError::Verification(format!("sample {i}: error {err} exceeds {eps}")));
        }
        max_err = max_err.max(err);
    }
    row.canonical_bytes = canonical_text_len(&codes, scale.digits());
    row.compressed_bytes = stream.len() as u64;
    row.cr = row.canonical_bytes as f64 / row.compressed_bytes as f64;
    row.cr_raw = row.raw_bytes as f64 / row.compressed_bytes as f64;
    row.max_abs_error = Some(max_err);
    Ok(())
}

/// Median encode and decode wall-clock seconds over `repeats` runs.
fn time_config(tokens: &[String], cfg: &CodecConfig, repeats: usize) -> Result<(f64, f64)> {
    let mut enc = Vec::with_capacity(repeats);
    let mut dec = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        let (stream, _) = compress_decimal(tokens, cfg)?;
        enc.push(start.elapsed().as_secs_f64());

        let start = Instant::now();
        let (decoded, _) = decompress_stream(stream.as_bytes())?;
        let text = render_text(&decoded.codes, decoded.digits());
        dec.push(start.elapsed().as_secs_f64());
        std::hint::black_box(text);
    }
    Ok((median(&mut enc), median(&mut dec)))
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
    .max(f64::MIN_POSITIVE)
}

pub fn plot_path(report: &Path) -> PathBuf {
    let mut name = report.as_os_str().to_owned();
    name.push(".plot.dat");
    PathBuf::from(name)
}

pub fn write_report(path: &Path, rows: &[ReportRow]) -> Result<()> {
    let io = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(e) => CliError::io(path, e),
        other => CliError::Usage(format!("{other:?}")),
    };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<Vec<ReportRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::Usage(e.to_string()))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<ReportRow>, _>>()
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Whitespace-separated columns, one configuration per line, for plotting CR
/// against any parameter.
pub fn write_plot_data(path: &Path, rows: &[ReportRow]) -> Result<()> {
    let mut out = String::from("# dataset version coder block_len tau digits lossless cr\n");
    for r in rows.iter().filter(|r| r.is_ok()) {
        out.push_str(&format!(
            "{} {} {} {} {} {} {} {:.4}\n",
            r.dataset, r.version, r.coder, r.block_len, r.tau, r.digits, r.lossless as u8, r.cr
        ));
    }
    std::fs::write(path, out).map_err(|e| CliError::io(path, e))
}
