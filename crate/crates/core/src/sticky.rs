//! Sticky channel (`p_d = 0`): a lower bound from conditioning on one
//! duplication, the exact rate of symmetric Markov-1 inputs, and a scan for
//! grid points where that rate beats `1 - p`.

use crate::bdc::{h2, weighted_log_series};
use crate::error::{check_half_open_prob, check_open_prob, Result};
use crate::exec::Exec;
use crate::optimize::ScalarSearch;
use crate::series::{SeriesSpec, SeriesValue};

/// `H(Z_1 | Z_i = 1, X, Y)` for a Markov-1 input with flip probability `alpha`:
/// `(1/i) Σ_{j<i} (j+1) h2(1/(j+1)) (1-α)^j α + h2(1/i) (1-α)^i`.
pub fn hz1_given_zi1(alpha: f64, i: usize) -> f64 {
    assert!(i >= 1);
    let beta = 1.0 - alpha;
    let head: f64 = (1..i)
        .map(|j| (j + 1) as f64 * h2(1.0 / (j + 1) as f64) * beta.powi(j as i32) * alpha)
        .sum();
    head / i as f64 + h2(1.0 / i as f64) * beta.powi(i as i32)
}

/// `((p + (1-α)(1-p)) / (1-p)) h2(p / (p + (1-α)(1-p)))`, the entropy of the
/// duplication pattern per input symbol given the run structure.
fn run_split_entropy(p: f64, alpha: f64) -> f64 {
    let q = p + (1.0 - alpha) * (1.0 - p);
    if q == 0.0 {
        return 0.0;
    }
    q / (1.0 - p) * h2((p / q).min(1.0))
}

/// Objective of the sticky lower bound at fixed `alpha`, maximized over
/// `i <= i_max`. Returns the value and the maximizing `i`.
pub fn sticky_objective(p: f64, alpha: f64, i_max: usize) -> (f64, usize) {
    let mut best = (0.0, 1);
    if p > 0.0 {
        for i in 1..=i_max.max(1) {
            let v = i as f64 * p * (1.0 - p).powi(i as i32 - 2) * hz1_given_zi1(alpha, i);
            if v > best.0 {
                best = (v, i);
            }
        }
    }
    (h2(alpha) + best.0 - run_split_entropy(p, alpha), best.1)
}

/// Sticky lower bound with its maximizers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StickyBound {
    /// Supremum of the objective. Can dip a hair below zero for `p` near one,
    /// where the optimum sits at the edge of the `alpha` range.
    pub value: f64,
    pub alpha: f64,
    pub i_star: usize,
}

impl StickyBound {
    pub fn clamped(&self) -> f64 {
        self.value.max(0.0)
    }
}

pub fn sticky_lower_bound(p: f64, i_max: usize, search: &ScalarSearch) -> Result<StickyBound> {
    check_half_open_prob("p", p)?;
    let best = search.maximize(|a| sticky_objective(p, a, i_max).0);
    let (value, i_star) = sticky_objective(p, best.arg, i_max);
    Ok(StickyBound {
        value,
        alpha: best.arg,
        i_star,
    })
}

/// Small-`p` constant of the sticky channel,
/// `d = log2(2/e) + ½ Σ_j (j/2^j) log2 j ≈ 0.845836`.
pub fn constant_d() -> f64 {
    (2.0 / std::f64::consts::E).log2() + 0.5 * weighted_log_series().value
}

/// Small-`p` expansion `1 + p log2 p + d p`.
pub fn small_p_expansion_sticky(p: f64) -> f64 {
    if p == 0.0 {
        return 1.0;
    }
    1.0 + p * p.log2() + constant_d() * p
}

/// Exact information rate of a symmetric Markov-1 input over the sticky
/// channel:
///
/// ```text
/// h2(α) + α Σ_{r>=1} ((1-α)(1-p))^r Σ_{s>=r} C(s,r) p^(s-r) h2(r/s)
///       - ((p + (1-α)(1-p))/(1-p)) h2(p / (p + (1-α)(1-p)))
/// ```
///
/// Inner terms are built in log space. Using `h2 <= 1` and
/// `Σ_s C(s,r) p^(s-r) = (1-p)^-(r+1)`, the outer tail past `R` is at most
/// `(1-α)^(R+1) / (1-p)`; each inner tail is bounded geometrically. Half of
/// `tail_tol` goes to each. When `max_terms` cuts the sum short the value is
/// still a lower bound on the rate (all omitted terms are positive) and the
/// reported bound grows accordingly.
pub fn sticky_markov1_rate(p: f64, alpha: f64, series: &SeriesSpec) -> Result<SeriesValue> {
    check_half_open_prob("p", p)?;
    check_open_prob("alpha", alpha)?;
    if p == 0.0 {
        return Ok(SeriesValue::exact(h2(alpha)));
    }
    let beta = 1.0 - alpha;
    let (ln_p, ln_w) = (p.ln(), (beta * (1.0 - p)).ln());
    let half_tol = 0.5 * series.tail_tol;

    let mut sum = 0.0;
    let mut inner_bound = 0.0;
    let mut terms = 0usize;
    let mut r = 1usize;
    loop {
        let ln_weight = alpha.ln() + r as f64 * ln_w;
        let budget = half_tol * 0.5f64.powi(r.min(1000) as i32);
        // s = r: C(r, r) p^0 = 1
        let mut ln_v = 0.0;
        let mut s = r;
        loop {
            sum += (ln_weight + ln_v).exp() * h2(r as f64 / s as f64);
            terms += 1;
            // ln of the majorant C(s+1, r) p^(s+1-r)
            let next = ln_v + ln_p + ((s + 1) as f64).ln() - ((s + 1 - r) as f64).ln();
            s += 1;
            ln_v = next;
            // ratio bound p (t+1)/(t+1-r) for all t >= s, decreasing in t
            let ratio = p * (s + 1) as f64 / (s + 1 - r) as f64;
            if ratio < 1.0 {
                let tail = (ln_weight + ln_v).exp() / (1.0 - ratio);
                if tail <= budget || terms >= series.max_terms {
                    inner_bound += tail;
                    break;
                }
            }
        }
        let outer = beta.powi(r as i32 + 1) / (1.0 - p);
        if outer <= half_tol || terms >= series.max_terms {
            return Ok(SeriesValue {
                value: h2(alpha) + sum - run_split_entropy(p, alpha),
                truncation_bound: outer + inner_bound,
                terms,
            });
        }
        r += 1;
    }
}

/// Maximizes [`sticky_markov1_rate`] over `alpha`.
pub fn sup_sticky_markov1(
    p: f64,
    series: &SeriesSpec,
    search: &ScalarSearch,
) -> Result<(SeriesValue, f64)> {
    check_half_open_prob("p", p)?;
    let best = search
        .maximize(|a| sticky_markov1_rate(p, a, series).map_or(f64::NEG_INFINITY, |v| v.value));
    Ok((sticky_markov1_rate(p, best.arg, series)?, best.arg))
}

/// One grid point of [`convexity_scan`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPoint {
    pub p: f64,
    pub rate: SeriesValue,
    pub alpha: f64,
    /// `rate > 1 - p + margin`.
    pub exceeds: bool,
}

/// Evaluates the best Markov-1 rate on `p_grid` and flags points above the
/// line `1 - p` by more than `margin`.
pub fn convexity_scan(
    p_grid: &[f64],
    margin: f64,
    series: &SeriesSpec,
    search: &ScalarSearch,
    exec: Exec,
) -> Result<Vec<ScanPoint>> {
    exec.try_map(p_grid, |&p| {
        let (rate, alpha) = sup_sticky_markov1(p, series, search)?;
        Ok(ScanPoint {
            p,
            rate,
            alpha,
            exceeds: rate.value > 1.0 - p + margin,
        })
    })
}
