//! The deletion-duplication channel in its two formulations.
//!
//! *String formulation*: every input bit independently becomes `λ` with
//! probability `p_d` or `x^r` with probability `p_t p_i^(r-1)`; the output
//! is the concatenation.
//!
//! *State formulation*: output symbol `k` reads input position
//! `Γ_k = k - Z_k`, where the drift `Z` is a Markov chain with increments
//! `+1` (w.p. `p_i`, a repeat of the current input bit) and `-r`, `r >= 0`
//! (w.p. `p_t p_d^r`, skipping `r` deleted bits). The output ends at
//! `N_n = sup{k : Γ_k <= n}`.
//!
//! At the synchronized start `Γ_0 = 0` there is no bit to repeat, so the
//! first increment is drawn from the advance moves alone,
//! `P(Z_1 = -r) = (1 - p_d) p_d^r`. Every completed path is weighted by the
//! probability that the following step leaves the block, which makes the
//! state formulation a distribution over outputs identical to the string
//! formulation.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_half_open_prob, check_prob, Error, Result};
use crate::pmf::IntegerPmf;
use crate::seq::BinarySeq;

/// Duplication and deletion probabilities of a DDC, both in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    p_i: f64,
    p_d: f64,
}

impl ChannelParams {
    pub fn new(p_i: f64, p_d: f64) -> Result<Self> {
        Ok(Self {
            p_i: check_half_open_prob("p_i", p_i)?,
            p_d: check_half_open_prob("p_d", p_d)?,
        })
    }

    /// Binary deletion channel.
    pub fn bdc(p: f64) -> Result<Self> {
        Self::new(0.0, p)
    }

    /// Binary sticky channel.
    pub fn sticky(p: f64) -> Result<Self> {
        Self::new(p, 0.0)
    }

    /// Symmetric DDC, `p_i = p_d = p`.
    pub fn symmetric(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    pub fn p_i(&self) -> f64 {
        self.p_i
    }

    pub fn p_d(&self) -> f64 {
        self.p_d
    }

    /// Transmission probability `p_t = (1 - p_d)(1 - p_i)`.
    pub fn p_t(&self) -> f64 {
        (1.0 - self.p_d) * (1.0 - self.p_i)
    }

    fn run_prob(&self, r: usize) -> f64 {
        debug_assert!(r >= 1);
        self.p_t() * self.p_i.powi(r as i32 - 1)
    }

    /// Probability that the drift process leaves a block of length `n` right
    /// after reading position `gamma` (`gamma = 0` is the start).
    fn exit_prob(&self, gamma: usize, n: usize) -> f64 {
        let skipped = self.p_d.powi((n - gamma) as i32);
        if gamma == 0 {
            skipped
        } else {
            (1.0 - self.p_i) * skipped
        }
    }
}

/// Almost-sure limit of `N_n / n`.
pub fn renewal_output_ratio(params: &ChannelParams) -> f64 {
    (1.0 - params.p_d) / (1.0 - params.p_i)
}

/// Distribution over output strings, with the mass of strings that were not
/// enumerated reported separately.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OutputPmf {
    pub masses: BTreeMap<BinarySeq, f64>,
    pub truncated_mass: f64,
}

impl OutputPmf {
    pub fn get(&self, y: &BinarySeq) -> f64 {
        self.masses.get(y).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.masses.values().sum()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Total variation distance and largest per-string discrepancy against
    /// `other`, over the union of both supports.
    pub fn discrepancy(&self, other: &OutputPmf) -> (f64, f64) {
        let mut tv = 0.0;
        let mut max = 0.0f64;
        for (y, &a) in &self.masses {
            let d = (a - other.get(y)).abs();
            tv += d;
            max = max.max(d);
        }
        for (y, &b) in &other.masses {
            if !self.masses.contains_key(y) {
                tv += b;
                max = max.max(b);
            }
        }
        (0.5 * tv, max)
    }
}

/// Output distribution of a single input bit, listing `λ` and `x^r` for
/// `r <= r_max`. The omitted mass `sum_{r > r_max} p_t p_i^(r-1)` equals
/// `(1 - p_d) p_i^r_max`.
pub fn symbol_output_pmf(params: &ChannelParams, x: u8, r_max: usize) -> Result<OutputPmf> {
    if r_max == 0 {
        return Err(Error::InvalidArgument("r_max must be at least 1".into()));
    }
    if x > 1 {
        return Err(Error::InvalidArgument(format!("symbol {x} is not a bit")));
    }
    let mut masses = BTreeMap::new();
    if params.p_d > 0.0 {
        masses.insert(BinarySeq::empty(), params.p_d);
    }
    for r in 1..=r_max {
        let m = params.run_prob(r);
        if m > 0.0 {
            let mut y = BinarySeq::empty();
            y.extend_repeat(x, r);
            masses.insert(y, m);
        }
    }
    Ok(OutputPmf {
        masses,
        truncated_mass: (1.0 - params.p_d) * params.p_i.powi(r_max as i32),
    })
}

/// Seedable stream-splittable generator used by every sampler.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Number of extra steps with success probability `q` before the first failure.
fn count_successes<R: Rng>(rng: &mut R, q: f64) -> usize {
    let mut k = 0;
    while q > 0.0 && rng.random::<f64>() < q {
        k += 1;
    }
    k
}

/// Passes `x` through the string formulation of the channel.
pub fn simulate_string(params: &ChannelParams, x: &BinarySeq, seed: u64) -> BinarySeq {
    let mut rng = rng(seed, 0);
    let mut out = BinarySeq::empty();
    for &bit in x.bits() {
        if rng.random::<f64>() < params.p_d {
            continue;
        }
        let r = 1 + count_successes(&mut rng, params.p_i);
        out.extend_repeat(bit, r);
    }
    out
}

/// Drift values `Z_1..Z_N` of one channel use; `Z_0 = 0` is implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatePath {
    pub states: Vec<i64>,
}

impl StatePath {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Index process `Γ_k = k - Z_k`.
    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.states
            .iter()
            .enumerate()
            .map(|(k, z)| (k as i64 + 1) - z)
    }

    /// Checks the increment law and that every index lies in `[1, n]`.
    pub fn is_valid_for(&self, n: usize) -> bool {
        let mut prev = 0;
        for (k, &z) in self.states.iter().enumerate() {
            let inc = z - prev;
            if inc != 1 && inc > 0 {
                return false;
            }
            if k == 0 && inc == 1 {
                return false;
            }
            let gamma = (k as i64 + 1) - z;
            if gamma < 1 || gamma > n as i64 {
                return false;
            }
            prev = z;
        }
        true
    }
}

/// Passes `x` through the state formulation, returning the output and the
/// drift path that produced it.
pub fn simulate_state(params: &ChannelParams, x: &BinarySeq, seed: u64) -> (BinarySeq, StatePath) {
    let mut rng = rng(seed, 0);
    let n = x.len();
    let mut out = BinarySeq::empty();
    let mut path = StatePath::default();
    let mut gamma = 0usize;
    loop {
        let repeat = gamma > 0 && rng.random::<f64>() < params.p_i;
        if !repeat {
            gamma += 1 + count_successes(&mut rng, params.p_d);
        }
        if gamma > n {
            break;
        }
        let k = out.len() as i64 + 1;
        path.states.push(k - gamma as i64);
        out.push(x.bits()[gamma - 1]);
    }
    (out, path)
}

/// Enumeration limits for the exact output distributions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnumBudget {
    pub max_n: usize,
    pub max_out_len: usize,
    /// Cap on simultaneously tracked (prefix, position) entries.
    pub max_entries: usize,
}

impl Default for EnumBudget {
    fn default() -> Self {
        Self {
            max_n: 16,
            max_out_len: 64,
            max_entries: 4_000_000,
        }
    }
}

impl EnumBudget {
    fn check(&self, n: usize, max_out_len: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::BudgetExceeded(format!(
                "block length {n} exceeds {}",
                self.max_n
            )));
        }
        if max_out_len > self.max_out_len {
            return Err(Error::BudgetExceeded(format!(
                "output length {max_out_len} exceeds {}",
                self.max_out_len
            )));
        }
        Ok(())
    }

    fn check_entries(&self, entries: usize) -> Result<()> {
        if entries > self.max_entries {
            return Err(Error::BudgetExceeded(format!(
                "{entries} tracked prefixes exceed {}",
                self.max_entries
            )));
        }
        Ok(())
    }
}

/// Distribution of the output length for an `n`-bit input, for lengths up
/// to `max_len`; the second value is `P(length > max_len)`.
///
/// The length does not depend on the input bits.
pub fn output_length_pmf(params: &ChannelParams, n: usize, max_len: usize) -> (Vec<f64>, f64) {
    let mut dist = vec![0.0; max_len + 1];
    dist[0] = 1.0;
    for _ in 0..n {
        let mut next = vec![0.0; max_len + 1];
        for (len, &m) in dist.iter().enumerate() {
            if m == 0.0 {
                continue;
            }
            next[len] += m * params.p_d;
            for r in 1..=(max_len - len) {
                next[len + r] += m * params.run_prob(r);
            }
        }
        dist = next;
    }
    let kept: f64 = dist.iter().sum();
    (dist, (1.0 - kept).max(0.0))
}

/// Smallest output length whose neglected length tail is at most `tol`,
/// capped at `cap`.
pub fn output_len_for_tol(params: &ChannelParams, n: usize, tol: f64, cap: usize) -> usize {
    if params.p_i == 0.0 {
        return n.min(cap);
    }
    let mut len = n;
    while len < cap && output_length_pmf(params, n, len).1 > tol {
        len += 1;
    }
    len
}

/// `Q_n(y | x)` for a single output string by the forward recursion over
/// (input position, output position):
/// `f(i, j) = p_d f(i-1, j) + sum_{r >= 1, y[j-r..j] = x_i^r} p_t p_i^(r-1) f(i-1, j-r)`.
pub fn string_transition_prob(params: &ChannelParams, x: &BinarySeq, y: &BinarySeq) -> f64 {
    let (xs, ys) = (x.bits(), y.bits());
    let m = ys.len();
    let mut prev = vec![0.0; m + 1];
    prev[0] = 1.0;
    for &xi in xs {
        let mut cur = vec![0.0; m + 1];
        for j in 0..=m {
            let mut acc = params.p_d * prev[j];
            let mut r = 1;
            while r <= j && ys[j - r] == xi {
                acc += params.run_prob(r) * prev[j - r];
                r += 1;
            }
            cur[j] = acc;
        }
        prev = cur;
    }
    prev[m]
}

/// Exact `Q_n(· | x)` on all outputs of length at most `max_out_len`, by
/// propagating the distribution of concatenated prefixes one input bit at a
/// time (parsings that give the same prefix merge).
pub fn exact_output_pmf_string(
    params: &ChannelParams,
    x: &BinarySeq,
    max_out_len: usize,
    budget: &EnumBudget,
) -> Result<OutputPmf> {
    budget.check(x.len(), max_out_len)?;
    let mut prefixes: HashMap<BinarySeq, f64> = HashMap::from([(BinarySeq::empty(), 1.0)]);
    for &bit in x.bits() {
        let mut next: HashMap<BinarySeq, f64> = HashMap::with_capacity(prefixes.len() * 2);
        for (prefix, &m) in &prefixes {
            if params.p_d > 0.0 {
                *next.entry(prefix.clone()).or_insert(0.0) += m * params.p_d;
            }
            let mut y = prefix.clone();
            for r in 1..=(max_out_len - prefix.len()) {
                let q = params.run_prob(r);
                if q == 0.0 {
                    break;
                }
                y.push(bit);
                *next.entry(y.clone()).or_insert(0.0) += m * q;
            }
        }
        budget.check_entries(next.len())?;
        prefixes = next;
    }
    let (_, truncated_mass) = output_length_pmf(params, x.len(), max_out_len);
    Ok(OutputPmf {
        masses: prefixes.into_iter().filter(|(_, m)| *m > 0.0).collect(),
        truncated_mass,
    })
}

/// Exact `P_n(· | x, Z_0 = 0)` on all outputs of length at most
/// `max_out_len`, by a forward pass over (output step, read position) with
/// the emitted prefix carried along. Each path is closed off with the
/// probability that its next index falls outside the block.
pub fn exact_output_pmf_state(
    params: &ChannelParams,
    x: &BinarySeq,
    max_out_len: usize,
    budget: &EnumBudget,
) -> Result<OutputPmf> {
    let n = x.len();
    budget.check(n, max_out_len)?;
    let xs = x.bits();
    let mut out: BTreeMap<BinarySeq, f64> = BTreeMap::new();
    let mut frontier: HashMap<(BinarySeq, usize), f64> =
        HashMap::from([((BinarySeq::empty(), 0usize), 1.0)]);
    let mut truncated_mass = 0.0;
    for step in 0..=max_out_len {
        let mut next: HashMap<(BinarySeq, usize), f64> = HashMap::new();
        for ((prefix, gamma), &m) in &frontier {
            let stop = params.exit_prob(*gamma, n);
            if stop > 0.0 {
                *out.entry(prefix.clone()).or_insert(0.0) += m * stop;
            }
            if step == max_out_len {
                truncated_mass += m * (1.0 - stop);
                continue;
            }
            let mut emit = |to: usize, q: f64| {
                if q > 0.0 {
                    let mut y = prefix.clone();
                    y.push(xs[to - 1]);
                    *next.entry((y, to)).or_insert(0.0) += m * q;
                }
            };
            if *gamma > 0 {
                emit(*gamma, params.p_i);
            }
            let advance = if *gamma == 0 {
                1.0 - params.p_d
            } else {
                params.p_t()
            };
            for skip in 0..(n - gamma) {
                emit(gamma + 1 + skip, advance * params.p_d.powi(skip as i32));
            }
        }
        budget.check_entries(next.len())?;
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    out.retain(|_, m| *m > 0.0);
    Ok(OutputPmf {
        masses: out,
        truncated_mass,
    })
}

/// Pmf of one drift increment `Z_k - Z_{k-1}`: `p_i` at `+1` and
/// `p_t p_d^r` at `-r`, truncated once the neglected mass
/// `(1 - p_i) p_d^(R+1)` is at most `support_tol`.
pub fn state_step_pmf(params: &ChannelParams, support_tol: f64) -> Result<IntegerPmf> {
    if support_tol.is_nan() || support_tol <= 0.0 {
        return Err(Error::InvalidArgument(
            "support_tol must be positive".into(),
        ));
    }
    let mut depth = 0usize;
    let mut tail = (1.0 - params.p_i) * params.p_d;
    while tail > support_tol {
        depth += 1;
        tail *= params.p_d;
    }
    // masses indexed from -depth up to +1
    let mut masses: Vec<f64> = (0..=depth)
        .rev()
        .map(|r| params.p_t() * params.p_d.powi(r as i32))
        .collect();
    masses.push(params.p_i);
    let pmf = IntegerPmf::new(-(depth as i64), masses, tail)?;
    Ok(pmf.trimmed())
}

/// Pmf of `Z_i - Z_0`, the `i`-fold convolution of [`state_step_pmf`],
/// computed by repeated squaring. Each factor is truncated at
/// `support_tol / i`, so the total neglected mass stays below `support_tol`.
pub fn state_i_step_pmf(params: &ChannelParams, i: usize, support_tol: f64) -> Result<IntegerPmf> {
    if i == 0 {
        return Err(Error::InvalidArgument("i must be at least 1".into()));
    }
    check_prob("support_tol", support_tol)?;
    let mut base = state_step_pmf(params, support_tol / i as f64)?;
    let mut acc: Option<IntegerPmf> = None;
    let mut k = i;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.convolve(&base),
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = base.convolve(&base);
    }
    Ok(acc.expect("i >= 1").trimmed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn s(t: &str) -> BinarySeq {
        t.parse().unwrap()
    }

    #[test]
    fn params_reject_degenerate_values() {
        assert!(ChannelParams::new(1.0, 0.0).is_err());
        assert!(ChannelParams::new(0.0, 1.0).is_err());
        assert!(ChannelParams::new(-0.1, 0.0).is_err());
        assert!(ChannelParams::new(f64::NAN, 0.0).is_err());
        let p = ChannelParams::new(0.3, 0.2).unwrap();
        // p_d + sum_r p_t p_i^(r-1) = 1
        let series: f64 = (1..200).map(|r| p.run_prob(r)).sum();
        assert_abs_diff_eq!(p.p_d() + series, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn symbol_pmf_examples() {
        let bdc = ChannelParams::bdc(0.3).unwrap();
        let pmf = symbol_output_pmf(&bdc, 1, 3).unwrap();
        assert_eq!(pmf.len(), 2);
        assert_abs_diff_eq!(pmf.get(&s("")), 0.3);
        assert_abs_diff_eq!(pmf.get(&s("1")), 0.7);
        assert_eq!(pmf.truncated_mass, 0.0);

        let sticky = ChannelParams::sticky(0.5).unwrap();
        let pmf = symbol_output_pmf(&sticky, 0, 2).unwrap();
        assert_eq!(pmf.len(), 2);
        assert_abs_diff_eq!(pmf.get(&s("0")), 0.5);
        // p_t = 0.5: "0" -> 0.5, "00" -> 0.25, tail 0.25
        assert_abs_diff_eq!(pmf.get(&s("00")), 0.25);
        assert_abs_diff_eq!(pmf.truncated_mass, 0.25);

        let noiseless = ChannelParams::new(0.0, 0.0).unwrap();
        let pmf = symbol_output_pmf(&noiseless, 1, 1).unwrap();
        assert_eq!(pmf.get(&s("1")), 1.0);
        assert_eq!(pmf.len(), 1);
        assert!(symbol_output_pmf(&noiseless, 1, 0).is_err());
    }

    #[test]
    fn exact_string_bdc_examples() {
        let p = 0.3;
        let ch = ChannelParams::bdc(p).unwrap();
        let b = EnumBudget::default();
        let one = exact_output_pmf_string(&ch, &s("1"), 1, &b).unwrap();
        assert_abs_diff_eq!(one.get(&s("")), p, epsilon = 1e-15);
        assert_abs_diff_eq!(one.get(&s("1")), 1.0 - p, epsilon = 1e-15);

        let ten = exact_output_pmf_string(&ch, &s("10"), 2, &b).unwrap();
        assert_abs_diff_eq!(ten.get(&s("")), p * p, epsilon = 1e-15);
        assert_abs_diff_eq!(ten.get(&s("1")), p * (1.0 - p), epsilon = 1e-15);
        assert_abs_diff_eq!(ten.get(&s("0")), p * (1.0 - p), epsilon = 1e-15);
        assert_abs_diff_eq!(ten.get(&s("10")), (1.0 - p) * (1.0 - p), epsilon = 1e-15);

        let eleven = exact_output_pmf_string(&ch, &s("11"), 2, &b).unwrap();
        assert_abs_diff_eq!(eleven.get(&s("1")), 2.0 * p * (1.0 - p), epsilon = 1e-15);
        assert_eq!(eleven.len(), 3);
    }

    #[test]
    fn per_string_recursion_matches_pmf() {
        let ch = ChannelParams::new(0.35, 0.2).unwrap();
        let x = s("0110");
        let pmf = exact_output_pmf_string(&ch, &x, 9, &EnumBudget::default()).unwrap();
        for (y, &m) in &pmf.masses {
            assert_abs_diff_eq!(string_transition_prob(&ch, &x, y), m, epsilon = 1e-15);
        }
        assert_eq!(string_transition_prob(&ch, &x, &s("101")), 0.0);
    }

    #[test]
    fn state_route_noiseless_and_single_symbol() {
        let b = EnumBudget::default();
        let noiseless = ChannelParams::new(0.0, 0.0).unwrap();
        let x = s("01101");
        let pmf = exact_output_pmf_state(&noiseless, &x, 5, &b).unwrap();
        assert_eq!(pmf.len(), 1);
        assert_abs_diff_eq!(pmf.get(&x), 1.0);

        let ch = ChannelParams::bdc(0.4).unwrap();
        let pmf = exact_output_pmf_state(&ch, &s("1"), 1, &b).unwrap();
        assert_abs_diff_eq!(pmf.get(&s("")), 0.4, epsilon = 1e-15);
    }

    #[test]
    fn two_routes_agree_small() {
        let b = EnumBudget::default();
        for (pi, pd) in [(0.0, 0.3), (0.2, 0.3), (0.5, 0.5), (0.5, 0.0)] {
            let ch = ChannelParams::new(pi, pd).unwrap();
            for x in BinarySeq::all(3) {
                let a = exact_output_pmf_string(&ch, &x, 10, &b).unwrap();
                let c = exact_output_pmf_state(&ch, &x, 10, &b).unwrap();
                let (tv, max) = a.discrepancy(&c);
                assert!(tv < 1e-12 && max < 1e-12, "{pi} {pd} {x}: {tv}");
                assert_abs_diff_eq!(a.truncated_mass, c.truncated_mass, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let ch = ChannelParams::new(0.2, 0.2).unwrap();
        let tight = EnumBudget {
            max_n: 3,
            max_out_len: 5,
            max_entries: 10,
        };
        assert!(matches!(
            exact_output_pmf_string(&ch, &s("0000"), 4, &tight),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(exact_output_pmf_string(&ch, &s("010"), 6, &tight).is_err());
        assert!(exact_output_pmf_state(&ch, &s("010"), 5, &tight).is_err());
    }

    #[test]
    fn step_pmf_examples() {
        let p = 0.3;
        let bdc = state_step_pmf(&ChannelParams::bdc(p).unwrap(), 1e-12).unwrap();
        for m in 0..20 {
            assert_abs_diff_eq!(bdc.mass(-m), (1.0 - p) * p.powi(m as i32), epsilon = 1e-16);
        }
        assert!(bdc.tail_mass() <= 1e-12);
        assert_eq!(bdc.mass(1), 0.0);
        assert_abs_diff_eq!(bdc.stored_mass() + bdc.tail_mass(), 1.0, epsilon = 1e-12);

        let sticky = state_step_pmf(&ChannelParams::sticky(p).unwrap(), 1e-12).unwrap();
        assert_eq!((sticky.lo(), sticky.hi()), (0, 1));
        assert_abs_diff_eq!(sticky.mass(1), p);
        assert_abs_diff_eq!(sticky.mass(0), 1.0 - p);
        assert_eq!(sticky.tail_mass(), 0.0);

        assert!(state_step_pmf(&ChannelParams::bdc(p).unwrap(), 0.0).is_err());
    }

    #[test]
    fn i_step_pmf_examples() {
        let p = 0.2;
        let tol = 1e-13;
        let bdc = ChannelParams::bdc(p).unwrap();
        for i in 1..6usize {
            let pmf = state_i_step_pmf(&bdc, i, tol).unwrap();
            assert!(pmf.tail_mass() <= tol);
            for m in 0..15u64 {
                let nb = crate::math::binomial(m + i as u64 - 1, m).unwrap() as f64
                    * (1.0 - p).powi(i as i32)
                    * p.powi(m as i32);
                assert_abs_diff_eq!(pmf.mass(-(m as i64)), nb, epsilon = 1e-15);
            }
            assert_abs_diff_eq!(
                pmf.mass(-1),
                i as f64 * p * (1.0 - p).powi(i as i32),
                epsilon = 1e-15
            );
        }
        let sticky = ChannelParams::sticky(p).unwrap();
        for i in 1..8usize {
            let pmf = state_i_step_pmf(&sticky, i, tol).unwrap();
            assert_abs_diff_eq!(
                pmf.mass(1),
                i as f64 * p * (1.0 - p).powi(i as i32 - 1),
                epsilon = 1e-15
            );
            assert_eq!(pmf.hi(), i as i64);
        }
        let one = state_i_step_pmf(&bdc, 1, tol).unwrap();
        assert_eq!(one, state_step_pmf(&bdc, tol).unwrap());
    }

    #[test]
    fn renewal_ratio_values() {
        assert_eq!(
            renewal_output_ratio(&ChannelParams::new(0.0, 0.0).unwrap()),
            1.0
        );
        assert_abs_diff_eq!(renewal_output_ratio(&ChannelParams::bdc(0.3).unwrap()), 0.7);
        assert_eq!(
            renewal_output_ratio(&ChannelParams::symmetric(0.5).unwrap()),
            1.0
        );
    }

    #[test]
    fn simulation_identity_and_sticky() {
        let x: BinarySeq =
            BinarySeq::new((0..200).map(|k| ((k * 7 / 3) % 2) as u8).collect()).unwrap();
        let id = ChannelParams::new(0.0, 0.0).unwrap();
        assert_eq!(simulate_string(&id, &x, 1), x);
        let (y, path) = simulate_state(&id, &x, 1);
        assert_eq!(y, x);
        assert!(path.states.iter().all(|&z| z == 0));

        let sticky = ChannelParams::sticky(0.4).unwrap();
        let y = simulate_string(&sticky, &x, 9);
        assert_eq!(y.run_symbols(), x.run_symbols());
        let (xr, yr) = (x.run_lengths(), y.run_lengths());
        assert!(xr.iter().zip(&yr).all(|(a, b)| b >= a));
    }

    #[test]
    fn simulate_state_follows_defining_equation() {
        let ch = ChannelParams::new(0.3, 0.25).unwrap();
        let x =
            BinarySeq::new((0..500).map(|k| ((k * k + 3 * k) % 5 % 2) as u8).collect()).unwrap();
        for seed in 0..20 {
            let (y, path) = simulate_state(&ch, &x, seed);
            assert_eq!(y.len(), path.len());
            assert!(path.is_valid_for(x.len()));
            for (k, gamma) in path.indices().enumerate() {
                assert_eq!(y.bits()[k], x.bits()[gamma as usize - 1]);
            }
        }
        // deterministic given seed
        assert_eq!(simulate_state(&ch, &x, 5), simulate_state(&ch, &x, 5));
        assert_eq!(simulate_string(&ch, &x, 5), simulate_string(&ch, &x, 5));
    }

    #[test]
    fn near_total_deletion_length_concentrates() {
        let eps = 0.01;
        let ch = ChannelParams::bdc(1.0 - eps).unwrap();
        let n = 100_000;
        let x = BinarySeq::new(vec![1; n]).unwrap();
        let y = simulate_string(&ch, &x, 42);
        let mean = eps * n as f64;
        let sd = (n as f64 * eps * (1.0 - eps)).sqrt();
        assert!((y.len() as f64 - mean).abs() <= 4.0 * sd, "{}", y.len());
    }

    #[test]
    fn length_pmf_is_independent_route() {
        let ch = ChannelParams::new(0.3, 0.1).unwrap();
        let (dist, tail) = output_length_pmf(&ch, 3, 12);
        let pmf = exact_output_pmf_string(&ch, &s("010"), 12, &EnumBudget::default()).unwrap();
        assert_abs_diff_eq!(pmf.truncated_mass, tail);
        assert_abs_diff_eq!(pmf.total() + tail, 1.0, epsilon = 1e-12);
        for (len, &m) in dist.iter().enumerate() {
            let by_strings: f64 = pmf
                .masses
                .iter()
                .filter(|(y, _)| y.len() == len)
                .map(|(_, v)| v)
                .sum();
            assert_abs_diff_eq!(by_strings, m, epsilon = 1e-14);
        }
        let len = output_len_for_tol(&ch, 3, 1e-12, 64);
        assert!(output_length_pmf(&ch, 3, len).1 <= 1e-12);
        assert!(output_length_pmf(&ch, 3, len - 1).1 > 1e-12);
    }
}
