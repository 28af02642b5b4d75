use super::LocalProtocol;
use crate::error::{Error, Result};

/// Largest `M·k` for which [`output_matrix`] will materialize the matrix.
pub const MAX_MATRIX_ENTRIES: usize = 1 << 24;

/// Column-stochastic `M × k` matrix: entry `(y, x)` is `P(message y | input x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputMatrix {
    rows: usize,
    columns: Vec<Vec<f64>>,
}

impl OutputMatrix {
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::LengthMismatch {
                expected: rows,
                actual: bad.len(),
            });
        }
        Ok(Self { rows, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, y: usize, x: usize) -> f64 {
        self.columns[x][y]
    }

    pub fn column(&self, x: usize) -> &[f64] {
        &self.columns[x]
    }

    /// Largest deviation of a column sum from 1.
    pub fn max_column_defect(&self) -> f64 {
        self.columns
            .iter()
            .map(|c| (c.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `max_{y, x, x'} P(y|x) / P(y|x')`. Infinite if some row mixes zero and
    /// nonzero entries.
    pub fn max_privacy_ratio(&self) -> f64 {
        (0..self.rows)
            .map(|y| {
                let (lo, hi) = self
                    .columns
                    .iter()
                    .map(|c| c[y])
                    .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
                if hi == 0.0 {
                    1.0
                } else if lo == 0.0 {
                    f64::INFINITY
                } else {
                    hi / lo
                }
            })
            .fold(1.0, f64::max)
    }

    /// Kronecker-style product for `T` independent uses, rows indexed in
    /// mixed radix with the first use as the least significant digit.
    pub fn power(&self, times: u32) -> Result<Self> {
        let total = (self.rows as u128).pow(times) * self.cols() as u128;
        if total > MAX_MATRIX_ENTRIES as u128 {
            return Err(Error::Capability(format!(
                "{}^{times} x {} matrix too large",
                self.rows,
                self.cols()
            )));
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let mut acc = vec![1.0];
                for _ in 0..times {
                    acc = col
                        .iter()
                        .flat_map(|&p| acc.iter().map(move |&a| a * p))
                        .collect();
                }
                acc
            })
            .collect();
        Self::from_columns(columns)
    }
}

/// Exact output matrix of a protocol with an enumerable message space.
pub fn output_matrix<P: LocalProtocol>(protocol: &P) -> Result<OutputMatrix> {
    let k = protocol.alphabet_size();
    let rows = protocol
        .message_space_size()
        .filter(|&m| m.saturating_mul(k) <= MAX_MATRIX_ENTRIES)
        .ok_or_else(|| {
            Error::Capability(format!(
                "message space of {} is too large to enumerate",
                protocol.descriptor().name
            ))
        })?;
    let columns = (0..k)
        .map(|x| protocol.output_distribution(x))
        .collect::<Result<Vec<_>>>()?;
    let m = OutputMatrix::from_columns(columns)?;
    debug_assert_eq!(m.rows(), rows);
    Ok(m)
}
