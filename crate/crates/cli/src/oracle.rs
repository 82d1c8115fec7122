//! `oracle`: brute-force suites with a pass/fail verdict per case.

use std::str::FromStr;

use ddc_core::bdc::{b1, frak_h2, frak_h_general, InputModel};
use ddc_core::math::h2;
use ddc_core::oracle::{
    conditional_state_entropy, equivalence_certificate, lemma1_monotonicity_check,
    mutual_information_exact, OracleBudget,
};
use ddc_core::{ChannelParams, Exec};

use crate::table::{Cell, Table};
use crate::{Failure, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Equivalence,
    Monotonicity,
    Mi,
    Entropy,
}

impl FromStr for Suite {
    type Err = Failure;

    fn from_str(s: &str) -> Result<Self, Failure> {
        match s {
            "equivalence" => Ok(Suite::Equivalence),
            "monotonicity" => Ok(Suite::Monotonicity),
            "mi" => Ok(Suite::Mi),
            "entropy" => Ok(Suite::Entropy),
            _ => Err(Failure::Usage(format!(
                "unknown suite {s:?}; valid: equivalence, monotonicity, mi, entropy"
            ))),
        }
    }
}

/// One checked case: `|value - reference| <= tolerance`, or for ladder
/// steps `value + tolerance >= reference`.
#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Case {
    fn close(name: String, value: f64, reference: f64, tolerance: f64) -> Self {
        Self {
            pass: (value - reference).abs() <= tolerance,
            name,
            value,
            reference,
            tolerance,
        }
    }
}

const LADDER_SLACK: f64 = 1e-9;
const EQUIVALENCE_TOL: f64 = 1e-9;

fn equivalence_cases() -> Result<Vec<Case>, Failure> {
    let mut cases = Vec::new();
    let levels = [0.0, 0.2, 0.5];
    let mut runs: Vec<(f64, f64, usize)> = Vec::new();
    for &pi in &levels {
        for &pd in &levels {
            runs.extend((1..=3).map(|n| (pi, pd, n)));
        }
    }
    runs.extend([(0.0, 0.2, 4), (0.0, 0.5, 4)]);
    for (pi, pd, n) in runs {
        let r = equivalence_certificate(&ChannelParams::new(pi, pd)?, n, EQUIVALENCE_TOL)?;
        cases.push(Case {
            name: format!("p_i={pi} p_d={pd} n={n}"),
            value: r.max_discrepancy,
            reference: 0.0,
            tolerance: EQUIVALENCE_TOL,
            pass: r.pass,
        });
    }
    Ok(cases)
}

fn monotonicity_cases(cfg: &RunConfig) -> Result<Vec<Case>, Failure> {
    let grid = cfg.grid().unwrap_or_else(|| vec![0.05, 0.1, 0.2]);
    let mut cases = Vec::new();
    for p in grid {
        let r = lemma1_monotonicity_check(p, cfg.ladder_i_max, LADDER_SLACK, Exec::default())?;
        for w in r.levels.windows(2) {
            cases.push(Case {
                name: format!("p={p} L{}>=L{}", w[1].i, w[0].i),
                value: w[1].value,
                reference: w[0].value + w[0].truncation_bound,
                tolerance: LADDER_SLACK,
                pass: w[1].value + LADDER_SLACK >= w[0].value + w[0].truncation_bound,
            });
        }
    }
    Ok(cases)
}

fn mi_cases(cfg: &RunConfig) -> Result<Vec<Case>, Failure> {
    let budget = OracleBudget::default();
    let grid = cfg.grid().unwrap_or_else(|| vec![0.1, 0.3, 0.5]);
    let mut cases = Vec::new();
    for p in grid {
        let mi = mutual_information_exact(&ChannelParams::bdc(p)?, &InputModel::Iud, 1, &budget)?;
        cases.push(Case::close(
            format!("bdc p={p} n=1"),
            mi.rate,
            1.0 - p,
            1e-12,
        ));
    }
    let clean = ChannelParams::new(0.0, 0.0)?;
    for n in [1, 4, 8] {
        let mi = mutual_information_exact(&clean, &InputModel::Iud, n, &budget)?;
        cases.push(Case::close(
            format!("noiseless iud n={n}"),
            mi.rate,
            1.0,
            1e-12,
        ));
    }
    let alpha = 0.3;
    let model = InputModel::markov1(alpha)?;
    let n = 6;
    let mi = mutual_information_exact(&clean, &model, n, &budget)?;
    let block = (1.0 + (n - 1) as f64 * h2(alpha)) / n as f64;
    cases.push(Case::close(
        format!("noiseless markov1 alpha={alpha} n={n}"),
        mi.rate,
        block,
        1e-12,
    ));
    Ok(cases)
}

fn entropy_cases() -> Result<Vec<Case>, Failure> {
    let e = Exec::default();
    let mut cases = Vec::new();
    for m in 0..=6 {
        let v = conditional_state_entropy(0.1, 2, m, e)?;
        cases.push(Case::close(
            format!("i=2 m={m} vs closed form"),
            v,
            frak_h2(m),
            1e-12,
        ));
    }
    for i in 2..=6 {
        let v = conditional_state_entropy(0.1, i, 1, e)?;
        cases.push(Case::close(format!("i={i} m=1 vs b1"), v, b1(i), 1e-12));
    }
    for (i, m) in [(3, 5), (4, 4), (5, 3)] {
        let v = conditional_state_entropy(0.1, i, m, e)?;
        cases.push(Case::close(
            format!("i={i} m={m} vs weight enumeration"),
            v,
            frak_h_general(i, m, e)?,
            1e-12,
        ));
    }
    Ok(cases)
}

pub fn run_suite(cfg: &RunConfig, suite: Suite) -> Result<Vec<Case>, Failure> {
    match suite {
        Suite::Equivalence => equivalence_cases(),
        Suite::Monotonicity => monotonicity_cases(cfg),
        Suite::Mi => mi_cases(cfg),
        Suite::Entropy => entropy_cases(),
    }
}

/// Report table plus the overall verdict.
pub fn cmd_oracle(cfg: &RunConfig, suite: Suite) -> Result<(Table, bool), Failure> {
    let cases = run_suite(cfg, suite)?;
    let mut t = Table::new(
        ["case", "value", "reference", "tolerance", "pass"]
            .map(String::from)
            .to_vec(),
    );
    t.meta(format!("command: oracle suite={suite:?}").to_lowercase());
    t.meta("config:");
    t.meta(cfg.echo());
    let failed = cases.iter().filter(|c| !c.pass).count();
    t.meta(format!("cases = {}, failed = {failed}", cases.len()));
    for c in cases {
        t.push(vec![
            Cell::Text(c.name),
            c.value.into(),
            c.reference.into(),
            c.tolerance.into(),
            c.pass.into(),
        ]);
    }
    Ok((t, failed == 0))
}
