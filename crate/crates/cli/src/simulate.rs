//! `simulate`: Monte Carlo output lengths for the all-zeros input. The
//! output length does not depend on the input bits.

use ddc_core::channel::{renewal_output_ratio, simulate_string};
use ddc_core::{BinarySeq, ChannelParams, Exec};

use crate::table::Table;
use crate::{Failure, RunConfig};

/// Sample of `N_n / n` over `trials` seeds starting at `seed`.
pub fn length_ratios(params: &ChannelParams, n: usize, seed: u64, trials: u64) -> Vec<f64> {
    let mut x = BinarySeq::empty();
    x.extend_repeat(0, n);
    Exec::default().map_range(seed..seed + trials, |s| {
        simulate_string(params, &x, s).len() as f64 / n as f64
    })
}

pub fn cmd_simulate(
    cfg: &RunConfig,
    p_i: f64,
    p_d: f64,
    n: usize,
    trials: u64,
) -> Result<Table, Failure> {
    let params = ChannelParams::new(p_i, p_d)?;
    if n == 0 || trials == 0 {
        return Err(Failure::Usage("n and trials must be positive".into()));
    }
    let ratios = length_ratios(&params, n, cfg.seed, trials);
    let mean = ratios.iter().sum::<f64>() / trials as f64;
    let mut t = Table::new(["seed", "output_len", "ratio"].map(String::from).to_vec());
    t.meta(format!(
        "command: simulate p_i={p_i} p_d={p_d} n={n} trials={trials}"
    ));
    t.meta("config:");
    t.meta(cfg.echo());
    t.meta(format!(
        "renewal limit (1-p_d)/(1-p_i) = {}",
        renewal_output_ratio(&params)
    ));
    t.meta(format!("sample mean = {mean}"));
    for (k, r) in ratios.iter().enumerate() {
        let len = (r * n as f64).round() as usize;
        t.push(vec![
            (cfg.seed as usize + k).into(),
            len.into(),
            (*r).into(),
        ]);
    }
    Ok(t)
}
