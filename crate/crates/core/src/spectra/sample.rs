//! Simulated spectra of the level Laplacians over a window of levels.

use std::fmt::Write as _;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::graph::DiffusionPair;
use crate::matrix::{level_laplacian, level_node};

use super::eigen::sym_eigs;

/// Largest mantissa the simulator is willing to use for one level.
pub const MAX_WORKING_BITS: u32 = 1 << 20;

/// The union of the level spectra for `r_min <= r <= r_max`, one block of
/// `n` values per level, sorted increasingly.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSample {
    pub q: u64,
    pub r_min: i64,
    pub r_max: i64,
    /// Mantissa bits of every stored value.
    pub precision_bits: u32,
    pub values: Vec<Float>,
}

impl SpectrumSample {
    pub fn width(&self) -> usize {
        (self.r_max - self.r_min + 1) as usize
    }

    /// Number of vertices, from the sample size.
    pub fn n(&self) -> usize {
        self.values.len() / self.width()
    }

    pub fn zero_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_zero()).count()
    }

    /// Zeros per level, i.e. the number of connected components.
    pub fn components(&self) -> usize {
        self.zero_count() / self.width()
    }

    pub fn nonzero(&self) -> Vec<Float> {
        self.values
            .iter()
            .filter(|v| !v.is_zero())
            .cloned()
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "spectrum q={} rmin={} rmax={} prec={}\n",
            self.q, self.r_min, self.r_max, self.precision_bits
        );
        let digits = digits_for_bits(self.precision_bits);
        for v in &self.values {
            writeln!(out, "{}", v.to_string_radix(10, Some(digits))).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty spectrum".into(),
        })?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("spectrum") {
            return Err(Error::Parse {
                line: 1,
                msg: "expected `spectrum` header".into(),
            });
        }
        let (mut q, mut r_min, mut r_max, mut prec) = (None, None, None, None);
        for f in fields {
            let (key, val) = f.split_once('=').ok_or(Error::Parse {
                line: 1,
                msg: format!("bad header field `{f}`"),
            })?;
            let bad = |_| Error::Parse {
                line: 1,
                msg: format!("bad value in `{f}`"),
            };
            match key {
                "q" => q = Some(val.parse::<u64>().map_err(bad)?),
                "rmin" => r_min = Some(val.parse::<i64>().map_err(bad)?),
                "rmax" => r_max = Some(val.parse::<i64>().map_err(bad)?),
                "prec" => prec = Some(val.parse::<u32>().map_err(bad)?),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unknown header field `{key}`"),
                    })
                }
            }
        }
        let missing = |k: &str| Error::Parse {
            line: 1,
            msg: format!("header lacks `{k}`"),
        };
        let q = q.ok_or_else(|| missing("q"))?;
        let r_min = r_min.ok_or_else(|| missing("rmin"))?;
        let r_max = r_max.ok_or_else(|| missing("rmax"))?;
        let prec = prec.ok_or_else(|| missing("prec"))?;
        if r_min > r_max || !(rug::float::prec_min()..=rug::float::prec_max()).contains(&prec) {
            return Err(Error::Parse {
                line: 1,
                msg: "inconsistent header".into(),
            });
        }
        let mut values = Vec::new();
        for (k, line) in lines {
            let parsed = Float::parse(line.trim()).map_err(|e| Error::Parse {
                line: k + 1,
                msg: e.to_string(),
            })?;
            values.push(Float::with_val(prec, parsed));
        }
        let sample = Self {
            q,
            r_min,
            r_max,
            precision_bits: prec,
            values,
        };
        if !sample.values.len().is_multiple_of(sample.width()) {
            return Err(Error::Parse {
                line: 1,
                msg: "value count is not a multiple of the window width".into(),
            });
        }
        Ok(sample)
    }
}

/// Decimal digits written per value for a `bits`-bit mantissa. Parsing
/// that many digits back at `bits` bits and printing again reproduces the
/// same text.
pub fn digits_for_bits(bits: u32) -> usize {
    (((bits.max(3) - 2) as f64) * std::f64::consts::LOG10_2)
        .floor()
        .max(1.0) as usize
}

/// Mantissa bits that hold `digits` decimal digits.
pub fn bits_for_digits(digits: usize) -> u32 {
    2 + (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

/// Mantissa bits used for level `r` so that `precision_bits` survive the
/// dynamic range of the level and of its characteristic polynomial.
pub fn working_bits(dp: &DiffusionPair, q: u64, r: i64, precision_bits: u32) -> u32 {
    let log_y = ((1 - r).unsigned_abs() as f64) * (q as f64).log2();
    let span = dp.label_sum() + dp.max_label();
    let extra = (log_y * span as f64).ceil() as u64;
    (precision_bits as u64 + 64 + extra + 4 * dp.n() as u64).min(u32::MAX as u64) as u32
}

/// Spectrum of each level in the window, zeros snapped to exact 0.
pub fn simulate_levels(
    dp: &DiffusionPair,
    q: u64,
    r_min: i64,
    r_max: i64,
    precision_bits: u32,
) -> Result<Vec<(i64, Vec<Float>)>> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "q must be at least 2, got {q}"
        )));
    }
    if r_min > r_max {
        return Err(Error::InvalidArgument(format!(
            "empty window [{r_min}, {r_max}]"
        )));
    }
    let b0 = dp.graph().num_components();
    let min_label = dp.labels().iter().copied().min();
    (r_min..=r_max)
        .into_par_iter()
        .map(|r| {
            let bits = working_bits(dp, q, r, precision_bits);
            if bits > MAX_WORKING_BITS {
                return Err(Error::PrecisionExhausted(format!(
                    "level {r} needs {bits} mantissa bits"
                )));
            }
            let m = level_laplacian(dp, q, r)?;
            let mut vals = sym_eigs(&m, bits)?;
            let threshold = match min_label {
                Some(a) => {
                    let y = Float::with_val(bits, &level_node(q, r));
                    let w = y.pow(a as u32);
                    w >> (precision_bits as i32 / 2)
                }
                None => Float::with_val(bits, 1u32),
            };
            let small = vals
                .iter()
                .filter(|v| Float::with_val(bits, v.abs_ref()) <= threshold)
                .count();
            if small != b0 {
                return Err(Error::PrecisionExhausted(format!(
                    "level {r} has {small} numerically zero eigenvalues, expected {b0}"
                )));
            }
            for v in vals.iter_mut().take(b0) {
                *v = Float::new(bits);
            }
            Ok((r, vals))
        })
        .collect()
}

/// Sorted union of the level spectra, all stored at the widest level
/// precision so the conversion is exact.
pub fn simulate_spectrum(
    dp: &DiffusionPair,
    q: u64,
    r_min: i64,
    r_max: i64,
    precision_bits: u32,
) -> Result<SpectrumSample> {
    let levels = simulate_levels(dp, q, r_min, r_max, precision_bits)?;
    let storage = (r_min..=r_max)
        .map(|r| working_bits(dp, q, r, precision_bits))
        .max()
        .unwrap_or(precision_bits);
    let mut values: Vec<Float> = levels
        .into_iter()
        .flat_map(|(_, vs)| vs)
        .map(|v| Float::with_val(storage, v))
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(SpectrumSample {
        q,
        r_min,
        r_max,
        precision_bits: storage,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f64s(s: &SpectrumSample) -> Vec<f64> {
        s.values.iter().map(Float::to_f64).collect()
    }

    #[test]
    fn k2_windows() {
        let k2 = DiffusionPair::new(2, &[(1, 2, 1)]).unwrap();
        let s = simulate_spectrum(&k2, 5, 0, 1, 128).unwrap();
        assert_eq!(f64s(&s), vec![0.0, 0.0, 2.0, 10.0]);
        assert_eq!(s.n(), 2);
        assert_eq!(s.components(), 1);
        let s = simulate_spectrum(&k2, 7, 0, 1, 128).unwrap();
        assert_eq!(f64s(&s), vec![0.0, 0.0, 2.0, 14.0]);
    }

    #[test]
    fn k3_uniform_levels_scale() {
        let k3 = DiffusionPair::new_allow_repeated_labels(3, &[(1, 2, 1), (1, 3, 1), (2, 3, 1)])
            .unwrap();
        let s = simulate_spectrum(&k3, 101, -1, 1, 256).unwrap();
        let want = [0.0, 0.0, 0.0, 3.0, 3.0, 303.0, 303.0, 30603.0, 30603.0];
        for (g, w) in f64s(&s).iter().zip(want) {
            assert!((g - w).abs() <= 1e-9 * w.max(1.0), "{g} vs {w}");
        }
    }

    #[test]
    fn text_round_trip_is_stable() {
        let dp = DiffusionPair::new(3, &[(1, 2, 1), (1, 3, 2), (2, 3, 4)]).unwrap();
        let s = simulate_spectrum(&dp, 101, -2, 1, 128).unwrap();
        let text = s.to_text();
        let back = SpectrumSample::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.values.len(), 12);
    }

    #[test]
    fn digit_mapping() {
        for bits in [53u32, 64, 128, 512, 4099] {
            let d = digits_for_bits(bits);
            assert!(bits_for_digits(d) <= bits + 1);
        }
    }
}
