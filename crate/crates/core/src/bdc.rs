//! Capacity lower bounds for the deletion-duplication channel, with most of
//! the machinery specialized to the binary deletion channel (`p_i = 0`).
//!
//! The bounds come from conditioning the first drift value `Z_1` on a later
//! one, `Z_i`:
//!
//! ```text
//! L_i = (1 + Σ_m P(Z_i = -m) H(Z_1 | Z_i = -m, X, Y)) (1 - p) - h2(p)
//! ```
//!
//! `i = 1` gives the weak bound `1 - p - h2(p)`, `i = 2` has a closed form,
//! and larger `i` need subsequence-weight enumeration. Keeping only the
//! single-deletion term `m = 1` gives the `𝔏` family, which is tight to
//! first order in `p`.

use crate::channel::{state_i_step_pmf, ChannelParams};
use crate::error::{check_half_open_prob, check_open_prob, Error, Result};
use crate::exec::Exec;
use crate::math::binomial;
use crate::optimize::{Maximum, ScalarSearch};
use crate::seq::BinarySeq;
use crate::series::{geometric_tail, SeriesSpec, SeriesValue};
use crate::subsequence::{posterior_from_table, weight_table, Markov1WeightPmfs};

pub use crate::math::h2;

/// Input process used to evaluate a bound or an information rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InputModel {
    /// Independent, uniformly distributed bits.
    Iud,
    /// Symmetric first-order Markov source with flip probability `alpha`.
    Markov1 { alpha: f64 },
}

impl InputModel {
    pub fn markov1(alpha: f64) -> Result<Self> {
        Ok(Self::Markov1 {
            alpha: check_open_prob("alpha", alpha)?,
        })
    }

    pub fn flip_probability(&self) -> f64 {
        match *self {
            InputModel::Iud => 0.5,
            InputModel::Markov1 { alpha } => alpha,
        }
    }

    /// Entropy rate in bits per symbol.
    pub fn entropy_rate(&self) -> f64 {
        h2(self.flip_probability())
    }

    /// Probability of the block `x` under the stationary source.
    pub fn block_prob(&self, x: &BinarySeq) -> f64 {
        let bits = x.bits();
        if bits.is_empty() {
            return 1.0;
        }
        let a = self.flip_probability();
        bits.windows(2)
            .fold(0.5, |acc, w| acc * if w[0] != w[1] { a } else { 1.0 - a })
    }
}

/// Lower and upper ends of the elementary capacity sandwich.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prop1Bounds {
    pub lower: f64,
    pub upper: f64,
}

/// `((1 - p_d)(1 - h2(p_i)/(1 - p_i)) - h2(p_d))^+ <= C <= 1 - p_d`.
pub fn prop1_bounds(params: &ChannelParams) -> Prop1Bounds {
    let (pi, pd) = (params.p_i(), params.p_d());
    let lower = (1.0 - pd) * (1.0 - h2(pi) / (1.0 - pi)) - h2(pd);
    Prop1Bounds {
        lower: lower.max(0.0),
        upper: 1.0 - pd,
    }
}

/// Posterior entropy of `Z_1` given `Z_2 = -m` for i.u.d. input:
/// `log2(m+1) - 2^-(m+1) Σ_i C(m+1, i) h2(i/(m+1))`.
pub fn frak_h2(m: usize) -> f64 {
    let n = m + 1;
    // binomial(n, 1/2) pmf via log-space recurrence
    let ln_half = -(n as f64) * std::f64::consts::LN_2;
    let mut ln_c = 0.0;
    let mut avg = 0.0;
    for i in 0..=n {
        if i > 0 {
            ln_c += ((n - i + 1) as f64).ln() - (i as f64).ln();
        }
        avg += (ln_c + ln_half).exp() * h2(i as f64 / n as f64);
    }
    (n as f64).log2() - avg
}

/// Bound on the ratio of consecutive majorants `(m+1) p^m log2(m+1)` for
/// every index `>= m` (requires `m >= 1`).
fn drift_series_ratio(p: f64, m: usize) -> f64 {
    let m = m as f64;
    p * (m + 2.0) / (m + 1.0) * (m + 2.0).log2() / (m + 1.0).log2()
}

/// Sums `Σ_{m>=0} (m+1) p^m f(m)` for `0 <= f(m) <= log2(m+1)`, stopping when
/// `scale` times the certified tail falls below `series.tail_tol`.
fn drift_weighted_series<F: FnMut(usize) -> f64>(
    p: f64,
    scale: f64,
    series: &SeriesSpec,
    mut f: F,
) -> SeriesValue {
    if p == 0.0 {
        return SeriesValue {
            value: f(0),
            truncation_bound: 0.0,
            terms: 1,
        };
    }
    let mut sum = 0.0;
    let mut weight = 1.0; // (m+1) p^m, updated multiplicatively
    let mut m = 0usize;
    loop {
        sum += weight * f(m);
        let next_weight = weight * p * (m + 2) as f64 / (m + 1) as f64;
        let first_omitted = next_weight * ((m + 2) as f64).log2();
        let bound = scale * geometric_tail(first_omitted, drift_series_ratio(p, m + 1));
        m += 1;
        weight = next_weight;
        if bound <= series.tail_tol || m >= series.max_terms {
            return SeriesValue {
                value: sum,
                truncation_bound: bound,
                terms: m,
            };
        }
    }
}

/// Closed-form `L_2` for i.u.d. input:
/// `(1 + (1-p)^2 Σ_m (m+1) p^m 𝔉_m) (1-p) - h2(p)`.
///
/// The returned value is the expression itself and goes negative for large
/// `p`; [`SeriesValue::clamped`] gives the capacity bound.
pub fn l2_iud(p: f64, series: &SeriesSpec) -> Result<SeriesValue> {
    check_half_open_prob("p", p)?;
    let q = 1.0 - p;
    let s = drift_weighted_series(p, q * q * q, series, frak_h2);
    Ok(SeriesValue {
        value: (1.0 + q * q * s.value) * q - h2(p),
        ..s
    })
}

/// Largest `m + i - 1` (number of input bits) enumerated by [`frak_h_general`].
pub const FRAK_H_MAX_BITS: usize = 20;
const FRAK_H_MAX_WORK_LOG2: usize = 26;

/// `𝔉^(i)_m`: expected posterior entropy of `Z_1` given `Z_i = -m`, by
/// averaging over all `x` in `{0,1}^(m+i-1)` (uniform) and all `y` in
/// `{0,1}^(i-1)` weighted by `w_y(x) / C(m+i-1, m)`.
pub fn frak_h_general(i: usize, m: usize, exec: Exec) -> Result<f64> {
    if i < 2 {
        return Err(Error::InvalidArgument("frak_h_general needs i >= 2".into()));
    }
    let n = m + i - 1;
    if n > FRAK_H_MAX_BITS || n + (i - 1) > FRAK_H_MAX_WORK_LOG2 {
        return Err(Error::BudgetExceeded(format!(
            "enumerating 2^{n} inputs times 2^{} outputs",
            i - 1
        )));
    }
    if m == 0 {
        return Ok(0.0);
    }
    let patterns = binomial(n as u64, m as u64).expect("n <= 20") as f64;
    let outputs: Vec<BinarySeq> = BinarySeq::all(i - 1).collect();
    let total = exec.sum_range(0..1u64 << n, |code| {
        let x = BinarySeq::from_index(code, n);
        let mut acc = 0.0;
        for y in &outputs {
            let table = weight_table(&x, y).expect("n <= 20 cannot overflow");
            let w = table.weight();
            if w == 0 {
                continue;
            }
            let post = posterior_from_table(&x, y, m, &table).expect("weight is positive");
            acc += w as f64 / patterns * post.entropy_bits();
        }
        acc
    });
    Ok(total / (1u64 << n) as f64)
}

/// Precomputed `𝔉^(i)_m` for `m = 0..=m_max`, reusable across `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrakHTable {
    pub i: usize,
    pub values: Vec<f64>,
}

impl FrakHTable {
    pub fn new(i: usize, m_max: usize, exec: Exec) -> Result<Self> {
        if i == 1 {
            return Ok(Self {
                i,
                values: vec![0.0; m_max + 1],
            });
        }
        let values = (0..=m_max)
            .map(|m| frak_h_general(i, m, exec))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { i, values })
    }

    /// Largest `m` the enumeration budget allows for this `i`.
    pub fn max_m(i: usize) -> usize {
        (FRAK_H_MAX_BITS + 1).saturating_sub(i)
    }

    /// `L_i` at deletion probability `p` from the tabulated terms.
    ///
    /// Terms beyond the table are dropped, which keeps the value a valid
    /// lower bound; their total is bounded using `𝔉_m <= log2(m+1)`.
    pub fn li(&self, p: f64) -> Result<SeriesValue> {
        check_half_open_prob("p", p)?;
        let q = 1.0 - p;
        let base = q - h2(p);
        if self.i == 1 {
            return Ok(SeriesValue::exact(base));
        }
        let m_max = self.values.len() - 1;
        let masses = state_i_step_pmf(&ChannelParams::bdc(p)?, self.i, f64::MIN_POSITIVE)?;
        let mut sum = 0.0;
        for (m, f) in self.values.iter().enumerate() {
            sum += masses.mass(-(m as i64)) * f;
        }
        let truncation_bound = if p == 0.0 {
            0.0
        } else {
            q * li_tail_bound(p, self.i, m_max)
        };
        Ok(SeriesValue {
            value: base + q * sum,
            truncation_bound,
            terms: m_max + 1,
        })
    }
}

/// `Σ_{m > m_max} C(m+i-1, m) (1-p)^i p^m log2(m+1)`, bounded geometrically.
fn li_tail_bound(p: f64, i: usize, m_max: usize) -> f64 {
    // smallest index where the majorant ratio is below one, then geometric
    let mut m = m_max + 1;
    let term = |m: usize| {
        let lc: f64 = (1..=m).map(|k| ((k + i - 1) as f64 / k as f64).ln()).sum();
        (lc + i as f64 * (1.0 - p).ln() + m as f64 * p.ln()).exp() * ((m + 1) as f64).log2()
    };
    let ratio = |m: usize| {
        p * (m + i) as f64 / (m + 1) as f64 * ((m + 2) as f64).log2() / ((m + 1) as f64).log2()
    };
    let mut head = 0.0;
    while ratio(m) >= 1.0 {
        head += term(m);
        m += 1;
    }
    head + geometric_tail(term(m), ratio(m))
}

/// `L_i` for i.u.d. input, with `𝔉^(i)_m` enumerated up to the budget or
/// until the remaining tail is below `series.tail_tol`.
pub fn li_iud(p: f64, i: usize, series: &SeriesSpec) -> Result<SeriesValue> {
    check_half_open_prob("p", p)?;
    if i == 0 {
        return Err(Error::InvalidArgument("i must be at least 1".into()));
    }
    if i == 1 {
        return FrakHTable::new(1, 0, Exec::default())?.li(p);
    }
    let cap = FrakHTable::max_m(i);
    let mut m_max = 0;
    while m_max < cap && p > 0.0 && (1.0 - p) * li_tail_bound(p, i, m_max) > series.tail_tol {
        m_max += 1;
    }
    FrakHTable::new(i, m_max, Exec::default())?.li(p)
}

/// `b_1^(i) = H(Z_1 | Z_i = -1, X, Y)`:
/// `(1/i) [Σ_{j<i} (j/2^j) h2(1/j) + (i/2^(i-1)) h2(1/i)]`.
pub fn b1(i: usize) -> f64 {
    assert!(i >= 1);
    let head: f64 = (1..i)
        .map(|j| j as f64 / 2f64.powi(j as i32) * h2(1.0 / j as f64))
        .sum();
    (head + i as f64 / 2f64.powi(i as i32 - 1) * h2(1.0 / i as f64)) / i as f64
}

/// `a_1^(i) = i p (1-p)^i b_1^(i)`, the single-deletion term of `L_i`.
pub fn a1(i: usize, p: f64) -> f64 {
    i as f64 * p * (1.0 - p).powi(i as i32) * b1(i)
}

/// Result of a maximization over the conditioning depth `i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepthMax {
    pub value: f64,
    pub i_star: usize,
    /// The maximizer was the largest allowed depth; raise `i_max`.
    pub at_boundary: bool,
}

/// `𝔏_1 = 1 - p - h2(p) + (1-p) max_{i <= i_max} a_1^(i)`.
pub fn frak_l1_iud(p: f64, i_max: usize) -> Result<DepthMax> {
    check_half_open_prob("p", p)?;
    if i_max == 0 {
        return Err(Error::InvalidArgument("i_max must be at least 1".into()));
    }
    // running Σ_{j<i} (j/2^j) h2(1/j)
    let mut head = 0.0;
    let mut best = (f64::NEG_INFINITY, 1);
    for i in 1..=i_max {
        let tail = i as f64 / 2f64.powi(i as i32 - 1) * h2(1.0 / i as f64);
        let a = p * (1.0 - p).powi(i as i32) * (head + tail);
        if a > best.0 {
            best = (a, i);
        }
        head += i as f64 / 2f64.powi(i as i32) * h2(1.0 / i as f64);
    }
    Ok(DepthMax {
        value: 1.0 - p - h2(p) + (1.0 - p) * best.0,
        i_star: best.1,
        at_boundary: best.1 == i_max && i_max > 1 && p > 0.0,
    })
}

/// `Σ_{j>=1} (j/2^j) log2 j`, summed until the certified tail is below 1e-15.
pub fn weighted_log_series() -> SeriesValue {
    let term = |j: usize| j as f64 / 2f64.powi(j as i32) * (j as f64).log2();
    let mut sum = 0.0;
    let mut j = 1;
    loop {
        sum += term(j);
        j += 1;
        // ratio of consecutive terms for all indices >= j (j >= 2)
        let ratio = 0.5 * (j + 1) as f64 / j as f64 * ((j + 1) as f64).log2() / (j as f64).log2();
        let bound = geometric_tail(term(j), ratio);
        if bound < 1e-15 {
            return SeriesValue {
                value: sum,
                truncation_bound: bound,
                terms: j - 1,
            };
        }
    }
}

/// Small-`p` constant of the deletion channel,
/// `c = log2(2e) - ½ Σ_j (j/2^j) log2 j ≈ 1.154163`.
pub fn constant_c() -> f64 {
    (2.0 * std::f64::consts::E).log2() - 0.5 * weighted_log_series().value
}

/// Markov-1 counterpart of `𝔉^(2)_m`:
/// `log2(m+1) - Σ_i h2(i/(m+1)) π(α, i, m+1)`, for `m = 0, 1, ...`.
fn markov1_ell(alpha: f64) -> Result<impl Iterator<Item = f64>> {
    Ok(Markov1WeightPmfs::new(alpha)?.map(|pi| {
        let n = pi.len() - 1;
        let avg: f64 = pi
            .iter()
            .enumerate()
            .map(|(i, w)| w * h2(i as f64 / n as f64))
            .sum();
        (n as f64).log2() - avg
    }))
}

/// `L_2` for a symmetric Markov-1 input with flip probability `alpha`:
/// `[h2(α) + (1-p)^2 Σ_m (m+1) p^m ℓ_m(α)] (1-p) - h2(p)`.
pub fn l2_markov1(p: f64, alpha: f64, series: &SeriesSpec) -> Result<SeriesValue> {
    check_half_open_prob("p", p)?;
    let mut ell = markov1_ell(alpha)?;
    let q = 1.0 - p;
    let s = drift_weighted_series(p, q * q * q, series, |_| ell.next().expect("infinite"));
    Ok(SeriesValue {
        value: (h2(alpha) + q * q * s.value) * q - h2(p),
        ..s
    })
}

/// Maximizes [`l2_markov1`] over `alpha`.
pub fn sup_l2_markov1(
    p: f64,
    series: &SeriesSpec,
    search: &ScalarSearch,
) -> Result<(SeriesValue, f64)> {
    check_half_open_prob("p", p)?;
    let best = search.maximize(|a| l2_markov1(p, a, series).map_or(f64::NEG_INFINITY, |v| v.value));
    Ok((l2_markov1(p, best.arg, series)?, best.arg))
}

/// Inner bracket of the Markov-1 single-deletion bound at fixed `alpha`:
/// `h2(α) + p max_i (1-p)^i (α Σ_{j<=i} j(1-α)^(j-1) h2(1/j) + i(1-α)^i h2(1/i))`.
pub fn frak_l1_markov1_inner(p: f64, alpha: f64, i_max: usize) -> (f64, usize) {
    let mut head = 0.0;
    let mut best = (f64::NEG_INFINITY, 1);
    let beta = 1.0 - alpha;
    for i in 1..=i_max {
        let hi = h2(1.0 / i as f64);
        head += i as f64 * beta.powi(i as i32 - 1) * hi;
        let v = (1.0 - p).powi(i as i32) * (alpha * head + i as f64 * beta.powi(i as i32) * hi);
        if v > best.0 {
            best = (v, i);
        }
    }
    (h2(alpha) + p * best.0, best.1)
}

/// Markov-1 single-deletion bound, maximized over `alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaDepthMax {
    pub value: f64,
    pub alpha: f64,
    pub i_star: usize,
}

/// `-h2(p) + (1-p) sup_α [inner bracket]`.
pub fn frak_l1_markov1(p: f64, i_max: usize, search: &ScalarSearch) -> Result<AlphaDepthMax> {
    check_half_open_prob("p", p)?;
    if i_max == 0 {
        return Err(Error::InvalidArgument("i_max must be at least 1".into()));
    }
    let Maximum { arg, .. } = search.maximize(|a| frak_l1_markov1_inner(p, a, i_max).0);
    let (inner, i_star) = frak_l1_markov1_inner(p, arg, i_max);
    Ok(AlphaDepthMax {
        value: -h2(p) + (1.0 - p) * inner,
        alpha: arg,
        i_star,
    })
}

/// Small-`p` expansion `1 + p log2 p - c p` of the single-deletion bound.
pub fn small_p_expansion_bdc(p: f64) -> f64 {
    if p == 0.0 {
        return 1.0;
    }
    1.0 + p * p.log2() - constant_c() * p
}

/// Average of `h2(1/r_1(x))` over uniform `x` and single-deletion outputs,
/// counted per deletion position. Equals [`b1`] and is used to check it.
pub fn b1_by_runs(i: usize) -> f64 {
    let mut total = 0.0;
    for x in BinarySeq::all(i) {
        let r1 = crate::subsequence::first_run_length(&x).expect("nonempty");
        // r1 of the i deletion positions fall in the first run
        total += r1 as f64 / i as f64 * h2(1.0 / r1 as f64);
    }
    total / 2f64.powi(i as i32)
}
