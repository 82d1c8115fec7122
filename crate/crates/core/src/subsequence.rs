//! Subsequence weights and the quantities built from them.
//!
//! `w_y(x)` is the number of index sets `i_1 < ... < i_|y|` with
//! `x[i_k] = y[k]`; `w_λ(x) = 1`.

use crate::error::{check_open_prob, Error, Result};
use crate::math::binomial;
use crate::pmf::IntegerPmf;
use crate::seq::BinarySeq;

/// Suffix-pair table of subsequence weights.
///
/// Entry `(j, k)` is `w_{y[k..]}(x[j..])` with zero-based suffix starts, so
/// `(0, 0)` is the full weight and column `k = |y|` is all ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubseqWeightTable {
    x_len: usize,
    y_len: usize,
    counts: Vec<u64>,
}

impl SubseqWeightTable {
    pub fn get(&self, j: usize, k: usize) -> u64 {
        assert!(j <= self.x_len && k <= self.y_len);
        self.counts[j * (self.y_len + 1) + k]
    }

    pub fn x_len(&self) -> usize {
        self.x_len
    }

    pub fn y_len(&self) -> usize {
        self.y_len
    }

    pub fn weight(&self) -> u64 {
        self.get(0, 0)
    }
}

/// Fills the suffix table from the bottom-right corner using
/// `T(j, k) = T(j+1, k) + [x_j = y_k] T(j+1, k+1)`.
pub fn weight_table(x: &BinarySeq, y: &BinarySeq) -> Result<SubseqWeightTable> {
    let (xs, ys) = (x.bits(), y.bits());
    let (nx, ny) = (xs.len(), ys.len());
    let width = ny + 1;
    let mut counts = vec![0u64; (nx + 1) * width];
    counts[nx * width + ny] = 1;
    for j in (0..nx).rev() {
        counts[j * width + ny] = 1;
        for k in (0..ny).rev() {
            let skip = counts[(j + 1) * width + k];
            let take = if xs[j] == ys[k] {
                counts[(j + 1) * width + k + 1]
            } else {
                0
            };
            counts[j * width + k] = skip.checked_add(take).ok_or(Error::WeightOverflow {
                x_len: nx,
                y_len: ny,
            })?;
        }
    }
    Ok(SubseqWeightTable {
        x_len: nx,
        y_len: ny,
        counts,
    })
}

/// `w_y(x)`, the number of occurrences of `y` as a subsequence of `x`.
pub fn subseq_weight(x: &BinarySeq, y: &BinarySeq) -> Result<u64> {
    // one rolling row instead of the full table
    let ys = y.bits();
    let mut row = vec![0u64; ys.len() + 1];
    row[0] = 1;
    for &b in x.bits() {
        for k in (0..ys.len()).rev() {
            if ys[k] == b {
                row[k + 1] = row[k + 1]
                    .checked_add(row[k])
                    .ok_or(Error::WeightOverflow {
                        x_len: x.len(),
                        y_len: ys.len(),
                    })?;
            }
        }
    }
    Ok(row[ys.len()])
}

fn check_drift(x: &BinarySeq, y: &BinarySeq, m: usize) -> Result<()> {
    if x.len() != m + y.len() {
        return Err(Error::InvalidArgument(format!(
            "|x| = {} but m + |y| = {}",
            x.len(),
            m + y.len()
        )));
    }
    Ok(())
}

/// Posterior of the first drift value `Z_1` over `{-m, ..., 0}` given
/// `Z_i = -m`, `x = X[..m + i - 1]` and `y = Y[..i - 1]` for the deletion
/// channel. Mass at `z` is `[x_{1-z} = y_1] w_{y[2..]}(x[2-z..]) / w_y(x)`.
pub fn z1_posterior(x: &BinarySeq, y: &BinarySeq, m: usize) -> Result<IntegerPmf> {
    check_drift(x, y, m)?;
    if y.is_empty() {
        return Err(Error::InvalidArgument(
            "posterior of Z_1 needs at least one output symbol".into(),
        ));
    }
    let table = weight_table(x, y)?;
    posterior_from_table(x, y, m, &table)
}

pub(crate) fn posterior_from_table(
    x: &BinarySeq,
    y: &BinarySeq,
    m: usize,
    table: &SubseqWeightTable,
) -> Result<IntegerPmf> {
    let total = table.weight();
    if total == 0 {
        return Err(Error::Inconsistent { deletions: m });
    }
    let (xs, y0) = (x.bits(), y.bits()[0]);
    // index 0 holds z = -m
    let masses = (0..=m)
        .rev()
        .map(|skip| {
            if xs[skip] == y0 {
                table.get(skip + 1, 1) as f64 / total as f64
            } else {
                0.0
            }
        })
        .collect();
    IntegerPmf::new(-(m as i64), masses, 0.0)
}

/// `P(Y[..|y|] = y | X = x, Z_{|y|+1} = -m) = w_y(x) / C(m + |y|, m)`.
pub fn output_prob_given_drift(x: &BinarySeq, y: &BinarySeq, m: usize) -> Result<f64> {
    check_drift(x, y, m)?;
    let w = subseq_weight(x, y)?;
    let patterns = binomial(x.len() as u64, m as u64).ok_or(Error::WeightOverflow {
        x_len: x.len(),
        y_len: y.len(),
    })?;
    Ok(w as f64 / patterns as f64)
}

/// Length of the first run of `x`.
pub fn first_run_length(x: &BinarySeq) -> Result<usize> {
    let bits = x.bits();
    let first = *bits
        .first()
        .ok_or_else(|| Error::InvalidArgument("first run of the empty sequence".into()))?;
    Ok(bits.iter().take_while(|&&b| b == first).count())
}

/// Distributions of the number of ones in successive prefixes of a
/// stationary symmetric Markov-1 source with flip probability `alpha`.
///
/// Yields `π(α, ·, m)` for `m = 1, 2, ...` as a vector indexed by `i = 0..=m`.
/// The per-endpoint parts are propagated with
///
/// ```text
/// π₀(i, m) = (1-α) π₀(i, m-1) + α π₁(i, m-1)
/// π₁(i, m) = (1-α) π₁(i-1, m-1) + α π₀(i-1, m-1)
/// ```
///
/// where `π_j(i, m)` is the probability that a length-`m` block has `i` ones
/// and ends in `j`. The boundary values `π(α, 0, m) = π(α, m, m) =
/// ½(1-α)^(m-1)` are imposed directly.
#[derive(Clone, Debug)]
pub struct Markov1WeightPmfs {
    alpha: f64,
    m: usize,
    ends0: Vec<f64>,
    ends1: Vec<f64>,
}

impl Markov1WeightPmfs {
    pub fn new(alpha: f64) -> Result<Self> {
        check_open_prob("alpha", alpha)?;
        Ok(Self {
            alpha,
            m: 0,
            ends0: Vec::new(),
            ends1: Vec::new(),
        })
    }
}

impl Iterator for Markov1WeightPmfs {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        let a = self.alpha;
        self.m += 1;
        let m = self.m;
        if m == 1 {
            self.ends0 = vec![0.5, 0.0];
            self.ends1 = vec![0.0, 0.5];
        } else {
            let mut e0 = vec![0.0; m + 1];
            let mut e1 = vec![0.0; m + 1];
            for i in 0..=m {
                if i < m {
                    e0[i] = (1.0 - a) * self.ends0[i] + a * self.ends1[i];
                }
                if i > 0 {
                    e1[i] = (1.0 - a) * self.ends1[i - 1] + a * self.ends0[i - 1];
                }
            }
            let edge = 0.5 * (1.0 - a).powi(m as i32 - 1);
            e0[0] = edge;
            e1[0] = 0.0;
            e0[m] = 0.0;
            e1[m] = edge;
            self.ends0 = e0;
            self.ends1 = e1;
        }
        Some(
            self.ends0
                .iter()
                .zip(&self.ends1)
                .map(|(u, v)| u + v)
                .collect(),
        )
    }
}

/// `π(α, i, m)` for `i = 0..=m`.
pub fn markov1_weight_pmf(alpha: f64, m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    Ok(Markov1WeightPmfs::new(alpha)?
        .nth(m - 1)
        .expect("iterator is infinite"))
}
