/// Bytes per megabyte in reported rates.
pub const MB: f64 = 1e6;

/// Size, speed and error figures for one compression run.
///
/// `input_bytes` is the size of the uncompressed text and `output_bytes` the
/// size of the compressed file, so `cr = input_bytes / output_bytes`. Both
/// rates are uncompressed megabytes per second.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunMetrics {
    pub input_bytes: u64,
    pub output_bytes: u64,
    pub cr: f64,
    pub encode_rate: Option<f64>,
    pub decode_rate: Option<f64>,
    pub max_abs_error: Option<f64>,
}

pub fn compute_metrics(
    input_bytes: u64,
    output_bytes: u64,
    encode_secs: Option<f64>,
    decode_secs: Option<f64>,
    max_abs_error: Option<f64>,
) -> RunMetrics {
    let rate = |secs: f64| input_bytes as f64 / MB / secs.max(f64::MIN_POSITIVE);
    RunMetrics {
        input_bytes,
        output_bytes,
        cr: input_bytes as f64 / output_bytes.max(1) as f64,
        encode_rate: encode_secs.map(rate),
        decode_rate: decode_secs.map(rate),
        max_abs_error,
    }
}
