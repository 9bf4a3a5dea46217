//! Sorted table of critical-line zero ordinates and its on-disk format.
//!
//! ```text
//! zctab v1
//! accuracy=0.000000001
//! max_height=100
//! 14.134725141734695
//! ...
//! sha256=<hex digest of every preceding byte>
//! ```

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const MAGIC: &str = "zctab v1";

/// Ascending positive ordinates γ_n with their common accuracy. Every zero
/// with 0 < γ ≤ `max_height` is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    accuracy: f64,
    max_height: f64,
}

impl ZeroTable {
    pub fn new(gammas: Vec<f64>, accuracy: f64, max_height: f64) -> Result<Self> {
        if !(accuracy > 0.0) || !accuracy.is_finite() {
            return Err(Error::Domain(format!("accuracy must be positive, got {accuracy}")));
        }
        if !max_height.is_finite() {
            return Err(Error::Domain("max_height must be finite".into()));
        }
        for (i, &g) in gammas.iter().enumerate() {
            if !(g > 0.0) || !g.is_finite() {
                return Err(Error::Domain(format!("ordinate #{} = {g} is not positive", i + 1)));
            }
            if i > 0 && g <= gammas[i - 1] {
                return Err(Error::Domain(format!(
                    "ordinates not strictly increasing at #{}",
                    i + 1
                )));
            }
        }
        if let Some(&last) = gammas.last() {
            if last > max_height + accuracy {
                return Err(Error::Domain(format!(
                    "ordinate {last} above max_height {max_height}"
                )));
            }
        }
        Ok(Self {
            gammas,
            accuracy,
            max_height,
        })
    }

    /// A table that certifies there are no zeros up to `max_height`.
    pub fn empty(max_height: f64) -> Self {
        Self {
            gammas: Vec::new(),
            accuracy: 1e-9,
            max_height,
        }
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn accuracy(&self) -> f64 {
        self.accuracy
    }

    pub fn max_height(&self) -> f64 {
        self.max_height
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Number of tabulated ordinates strictly below `t`.
    pub fn count_below(&self, t: f64) -> usize {
        self.gammas.partition_point(|&g| g < t)
    }

    /// Ordinate closest to `t`, if any.
    pub fn nearest(&self, t: f64) -> Option<(usize, f64)> {
        let i = self.count_below(t);
        [i.wrapping_sub(1), i]
            .into_iter()
            .filter_map(|j| self.gammas.get(j).map(|&g| (j, g)))
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
    }

    /// The sub-table complete to `height` (which must not exceed `max_height`).
    pub fn truncated(&self, height: f64) -> Result<Self> {
        if height > self.max_height {
            return Err(Error::TableTooShort {
                max_height: self.max_height,
                reason: format!("cannot restrict to {height}"),
            });
        }
        let n = self.gammas.partition_point(|&g| g <= height);
        Ok(Self {
            gammas: self.gammas[..n].to_vec(),
            accuracy: self.accuracy,
            max_height: height,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = TableWriter::create(path, self.accuracy, self.max_height)?;
        for &g in &self.gammas {
            w.push(g)?;
        }
        w.finish()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        Self::parse(&bytes)
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Format {
            line: 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count(),
            message: "not UTF-8".into(),
        })?;
        let lines: Vec<&str> = text.split_inclusive('\n').collect();
        let n_lines = lines.len();
        let footer = lines.last().copied().unwrap_or("");
        let Some(digest) = footer.trim_end().strip_prefix("sha256=") else {
            return Err(Error::Format {
                line: n_lines.max(1),
                message: "missing sha256 footer (truncated file?)".into(),
            });
        };
        let body_len = text.len() - footer.len();
        let found = hex::encode(Sha256::digest(&bytes[..body_len]));
        if !digest.eq_ignore_ascii_case(&found) {
            return Err(Error::ChecksumMismatch {
                expected: digest.to_string(),
                found,
            });
        }

        let body = &lines[..n_lines - 1];
        let field = |idx: usize, key: &str| -> Result<f64> {
            let line = body.get(idx).ok_or_else(|| Error::Format {
                line: idx + 1,
                message: format!("missing {key} header"),
            })?;
            line.trim_end()
                .strip_prefix(key)
                .and_then(|v| v.strip_prefix('='))
                .and_then(|v| v.parse::<f64>().ok())
                .ok_or_else(|| Error::Format {
                    line: idx + 1,
                    message: format!("expected {key}=<decimal>"),
                })
        };
        if body.first().map(|l| l.trim_end()) != Some(MAGIC) {
            return Err(Error::Format {
                line: 1,
                message: format!("expected '{MAGIC}'"),
            });
        }
        let accuracy = field(1, "accuracy")?;
        let max_height = field(2, "max_height")?;
        let mut gammas = Vec::with_capacity(body.len().saturating_sub(3));
        for (i, line) in body.iter().enumerate().skip(3) {
            let g: f64 = line.trim_end().parse().map_err(|_| Error::Format {
                line: i + 1,
                message: format!("bad ordinate '{}'", line.trim_end()),
            })?;
            if gammas.last().is_some_and(|&prev| g <= prev) {
                return Err(Error::Format {
                    line: i + 1,
                    message: "ordinates must be strictly increasing".into(),
                });
            }
            gammas.push(g);
        }
        Self::new(gammas, accuracy, max_height).map_err(|e| Error::Format {
            line: 3,
            message: e.to_string(),
        })
    }
}

/// Append-only writer for the table format; the footer is written by
/// [`TableWriter::finish`], so an interrupted run leaves a file that fails to
/// load rather than a silently incomplete table.
pub struct TableWriter {
    out: BufWriter<File>,
    hasher: Sha256,
    last: f64,
}

impl TableWriter {
    pub fn create(path: impl AsRef<Path>, accuracy: f64, max_height: f64) -> Result<Self> {
        let mut w = Self {
            out: BufWriter::new(File::create(path)?),
            hasher: Sha256::new(),
            last: 0.0,
        };
        w.line(MAGIC)?;
        w.line(&format!("accuracy={accuracy}"))?;
        w.line(&format!("max_height={max_height}"))?;
        Ok(w)
    }

    fn line(&mut self, s: &str) -> Result<()> {
        let bytes = format!("{s}\n");
        self.hasher.update(bytes.as_bytes());
        self.out.write_all(bytes.as_bytes())?;
        Ok(())
    }

    pub fn push(&mut self, gamma: f64) -> Result<()> {
        if !(gamma > self.last) {
            return Err(Error::Domain(format!(
                "ordinate {gamma} does not follow {}",
                self.last
            )));
        }
        self.last = gamma;
        self.line(&format!("{gamma}"))
    }

    pub fn finish(mut self) -> Result<()> {
        let digest = hex::encode(self.hasher.clone().finalize());
        self.out.write_all(format!("sha256={digest}\n").as_bytes())?;
        self.out.flush()?;
        Ok(())
    }
}
