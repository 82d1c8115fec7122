//! Brute-force ground truth at small block lengths.
//!
//! Nothing here calls the bound code: posterior entropies are recomputed by
//! listing deletion patterns as bitmasks, and mutual information comes from
//! exhaustive output distributions.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::bdc::InputModel;
use crate::channel::{
    exact_output_pmf_state, exact_output_pmf_string, output_len_for_tol, output_length_pmf,
    state_i_step_pmf, ChannelParams, EnumBudget,
};
use crate::error::{check_half_open_prob, Error, Result};
use crate::exec::Exec;
use crate::math::{entropy_bits, h2, neg_xlog2x};
use crate::seq::BinarySeq;

/// Limits for the exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleBudget {
    pub max_n: usize,
    /// Cap on tracked output prefixes per input.
    pub max_states: usize,
    /// Target for the neglected output-length mass when `p_i > 0`.
    pub tol: f64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_n: 10,
            max_states: 4_000_000,
            tol: 1e-12,
        }
    }
}

/// Block length cap applied on top of `max_n` when duplications are possible.
pub const MAX_N_WITH_DUPLICATION: usize = 6;
const MAX_OUT_LEN: usize = 64;

/// `(1/n) I(X; Y)` with a certified half-width for the output truncation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MiEstimate {
    pub rate: f64,
    pub error_bound: f64,
    pub max_out_len: usize,
}

/// Mutual information rate of an `n`-bit block under a fixed input model.
pub fn mutual_information_exact(
    params: &ChannelParams,
    input: &InputModel,
    n: usize,
    budget: &OracleBudget,
) -> Result<MiEstimate> {
    let law: Vec<f64> = BinarySeq::all(n).map(|x| input.block_prob(&x)).collect();
    mutual_information_for_law(params, &law, n, budget, Exec::default())
}

/// Same as [`mutual_information_exact`] for an arbitrary input law, given as
/// masses indexed by [`BinarySeq::from_index`].
pub fn mutual_information_for_law(
    params: &ChannelParams,
    law: &[f64],
    n: usize,
    budget: &OracleBudget,
    exec: Exec,
) -> Result<MiEstimate> {
    let cap = if params.p_i() > 0.0 {
        budget.max_n.min(MAX_N_WITH_DUPLICATION)
    } else {
        budget.max_n
    };
    if n == 0 || n > cap {
        return Err(Error::BudgetExceeded(format!(
            "block length {n} outside 1..={cap}"
        )));
    }
    if law.len() != 1 << n {
        return Err(Error::InvalidArgument(format!(
            "input law has {} masses, expected {}",
            law.len(),
            1u64 << n
        )));
    }
    let max_out_len = output_len_for_tol(params, n, budget.tol, MAX_OUT_LEN);
    let enum_budget = EnumBudget {
        max_n: cap,
        max_out_len: MAX_OUT_LEN,
        max_entries: budget.max_states,
    };
    let codes: Vec<u64> = (0..1u64 << n).collect();
    let pmfs = exec.try_map(&codes, |&code| {
        let x = BinarySeq::from_index(code, n);
        exact_output_pmf_string(params, &x, max_out_len, &enum_budget)
    })?;

    let mut joint: BTreeMap<&BinarySeq, f64> = BTreeMap::new();
    let mut h_cond = 0.0;
    for (pmf, &px) in pmfs.iter().zip(law) {
        if px == 0.0 {
            continue;
        }
        h_cond += px * entropy_bits(pmf.masses.values().copied());
        for (y, &q) in &pmf.masses {
            *joint.entry(y).or_insert(0.0) += px * q;
        }
    }
    let h_out = entropy_bits(joint.values().copied());
    let tail = length_tail_entropy_bound(params, n, max_out_len);
    Ok(MiEstimate {
        rate: (h_out - h_cond) / n as f64,
        error_bound: tail / n as f64,
        max_out_len,
    })
}

/// `Σ_{ℓ > L} P_ℓ (ℓ + log2(1/P_ℓ))`: the most entropy that outputs longer
/// than `L` can carry, given only their length distribution.
fn length_tail_entropy_bound(params: &ChannelParams, n: usize, max_out_len: usize) -> f64 {
    if params.p_i() == 0.0 {
        return 0.0;
    }
    let far = max_out_len + 400;
    let (dist, rest) = output_length_pmf(params, n, far);
    let head: f64 = dist[max_out_len + 1..]
        .iter()
        .enumerate()
        .map(|(k, &p)| p * (max_out_len + 1 + k) as f64 + neg_xlog2x(p))
        .sum();
    // whatever lies past `far` is negligible; charge it generously
    head + rest * (2.0 * far as f64 + 64.0)
}

/// Largest `m + i - 1` handled by [`conditional_state_entropy`].
pub const STATE_ENTROPY_MAX_BITS: usize = 20;

/// `H(Z_1 | Z_i = -m, X, Y)` for the deletion channel by listing every
/// placement of `m` deletions among the first `m + i - 1` input bits.
///
/// Given `Z_i = -m` all placements are equally likely, so `p` only enters
/// through validation.
pub fn conditional_state_entropy(p: f64, i: usize, m: usize, exec: Exec) -> Result<f64> {
    check_half_open_prob("p", p)?;
    if i < 2 {
        return Err(Error::InvalidArgument(
            "conditional_state_entropy needs i >= 2".into(),
        ));
    }
    let n = m + i - 1;
    if n > STATE_ENTROPY_MAX_BITS {
        return Err(Error::BudgetExceeded(format!(
            "{n} input bits exceed {STATE_ENTROPY_MAX_BITS}"
        )));
    }
    if m == 0 {
        return Ok(0.0);
    }
    // deletion masks with exactly m bits set
    let masks: Vec<u32> = (0u32..1 << n)
        .filter(|v| v.count_ones() as usize == m)
        .collect();
    let total = masks.len() as f64;
    let sum = exec.sum_range(0..1u64 << n, |x| {
        let x = x as u32;
        // (output word, number of deletions before the first kept bit)
        let mut events: Vec<(u32, u32)> = masks
            .iter()
            .map(|&del| {
                let keep = !del & ((1 << n) - 1);
                let mut y = 0u32;
                let mut k = 0;
                for b in 0..n {
                    if keep >> b & 1 == 1 {
                        y |= (x >> b & 1) << k;
                        k += 1;
                    }
                }
                (y, keep.trailing_zeros())
            })
            .collect();
        events.sort_unstable();
        let mut acc = 0.0;
        let mut start = 0;
        while start < events.len() {
            let y = events[start].0;
            let end = start + events[start..].iter().take_while(|e| e.0 == y).count();
            let group = &events[start..end];
            let w = group.len() as f64;
            let mut h = 0.0;
            let mut s = 0;
            while s < group.len() {
                let run = group[s..].iter().take_while(|e| e.1 == group[s].1).count();
                h += neg_xlog2x(run as f64 / w);
                s += run;
            }
            acc += w / total * h;
            start = end;
        }
        acc
    });
    Ok(sum / (1u64 << n) as f64)
}

/// Outcome of comparing the two channel formulations on every input.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub p_i: f64,
    pub p_d: f64,
    pub n: usize,
    pub max_out_len: usize,
    pub max_discrepancy: f64,
    pub max_tv: f64,
    pub worst_input: BinarySeq,
    pub tol: f64,
    pub pass: bool,
}

/// Compares the per-symbol and drift-process output laws for all `x` of
/// length `n`, on outputs up to the length where the neglected mass is
/// below `1e-12` (at most 40).
pub fn equivalence_certificate(
    params: &ChannelParams,
    n: usize,
    tol: f64,
) -> Result<EquivalenceReport> {
    let max_out_len = output_len_for_tol(params, n, 1e-12, 40);
    let budget = EnumBudget {
        max_n: 8,
        max_out_len: 40,
        max_entries: 4_000_000,
    };
    let codes: Vec<u64> = (0..1u64 << n).collect();
    let diffs = Exec::default().try_map(&codes, |&code| -> Result<(f64, f64)> {
        let x = BinarySeq::from_index(code, n);
        let a = exact_output_pmf_string(params, &x, max_out_len, &budget)?;
        let b = exact_output_pmf_state(params, &x, max_out_len, &budget)?;
        let (tv, max) = a.discrepancy(&b);
        Ok((max, tv))
    })?;
    let (worst, &(max_discrepancy, _)) = diffs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .expect("n >= 0 gives at least one input");
    let max_tv = diffs.iter().map(|d| d.1).fold(0.0, f64::max);
    Ok(EquivalenceReport {
        p_i: params.p_i(),
        p_d: params.p_d(),
        n,
        max_out_len,
        max_discrepancy,
        max_tv,
        worst_input: BinarySeq::from_index(worst as u64, n),
        tol,
        pass: max_discrepancy <= tol,
    })
}

/// One rung `L_i` of the ladder, with the weight of the dropped `m` terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LadderLevel {
    pub i: usize,
    pub value: f64,
    pub truncation_bound: f64,
    pub m_max: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderReport {
    pub p: f64,
    pub slack: f64,
    pub levels: Vec<LadderLevel>,
    pub pass: bool,
}

/// Assembles `L_1..=L_{i_max}` from drift masses and enumerated posterior
/// entropies and checks the sequence is non-decreasing.
///
/// Dropping `m` terms only lowers a rung, so the check
/// `L_{i+1} + slack >= L_i + bound_i` is conservative.
pub fn lemma1_monotonicity_check(
    p: f64,
    i_max: usize,
    slack: f64,
    exec: Exec,
) -> Result<LadderReport> {
    check_half_open_prob("p", p)?;
    if !(1..=4).contains(&i_max) {
        return Err(Error::BudgetExceeded(format!(
            "i_max {i_max} outside 1..=4"
        )));
    }
    let params = ChannelParams::bdc(p)?;
    let base = 1.0 - p - h2(p);
    let mut levels = vec![LadderLevel {
        i: 1,
        value: base,
        truncation_bound: 0.0,
        m_max: 0,
    }];
    for i in 2..=i_max {
        let drift = state_i_step_pmf(&params, i, f64::MIN_POSITIVE)?;
        let m_cap = STATE_ENTROPY_MAX_BITS + 1 - i;
        let mut sum = 0.0;
        let mut kept = 0.0;
        let mut m_max = 0;
        for m in 0..=m_cap {
            let w = drift.mass(-(m as i64));
            sum += w * conditional_state_entropy(p, i, m, exec)?;
            kept += w;
            m_max = m;
            // remaining mass times the largest possible entropy of what is left
            if p == 0.0 || remaining_bound(p, i, m, 1.0 - kept) < 1e-13 {
                break;
            }
        }
        levels.push(LadderLevel {
            i,
            value: base + (1.0 - p) * sum,
            truncation_bound: (1.0 - p) * remaining_bound(p, i, m_max, (1.0 - kept).max(0.0)),
            m_max,
        });
    }
    let pass = levels
        .windows(2)
        .all(|w| w[1].value + slack >= w[0].value + w[0].truncation_bound);
    Ok(LadderReport {
        p,
        slack,
        levels,
        pass,
    })
}

/// Entropy bound for drift values beyond `m`: mass `rest` spread over
/// values `m' > m`, each with posterior entropy at most `log2(m'+1)`. By
/// Jensen and the decreasing mean residual life of the negative binomial,
/// `E[log2(M+1) | M > m] <= log2(m + 2 + E[M])`.
fn remaining_bound(p: f64, i: usize, m: usize, rest: f64) -> f64 {
    if rest <= 0.0 {
        return 0.0;
    }
    // E[M | M > m] <= m + 1 + mean of the full law
    let mean = i as f64 * p / (1.0 - p);
    rest * (m as f64 + 2.0 + mean).log2()
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "equivalence p_i={} p_d={} n={} L={} max_diff={:.3e} max_tv={:.3e} worst={} {}",
            self.p_i,
            self.p_d,
            self.n,
            self.max_out_len,
            self.max_discrepancy,
            self.max_tv,
            self.worst_input,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

impl fmt::Display for LadderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = format!("ladder p={}", self.p);
        for l in &self.levels {
            let _ = write!(
                s,
                " L{}={:.12} (+{:.1e}, m<={})",
                l.i, l.value, l.truncation_bound, l.m_max
            );
        }
        write!(f, "{s} {}", if self.pass { "pass" } else { "FAIL" })
    }
}
