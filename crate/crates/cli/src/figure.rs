//! `figure1`: data for the deletion-channel bound comparison and its
//! sticky-channel inset.

use std::path::{Path, PathBuf};

use ddc_core::bdc::{frak_l1_iud, l2_iud, small_p_expansion_bdc};
use ddc_core::sticky::{convexity_scan, sticky_lower_bound};
use ddc_core::Exec;

use crate::table::{format_float, Cell, Table};
use crate::{Failure, RunConfig};

pub const BDC_FILE: &str = "figure1_bdc.csv";
pub const STICKY_FILE: &str = "figure1_sticky.csv";

pub fn bdc_table(cfg: &RunConfig, grid: &[f64]) -> Result<Table, Failure> {
    let series = cfg.series();
    let rows = Exec::default().try_map(grid, |&p| -> Result<_, Failure> {
        let l2 = l2_iud(p, &series)?;
        let l1 = frak_l1_iud(p, cfg.i_max)?;
        Ok((p, l2, small_p_expansion_bdc(p), l1))
    })?;
    let mut t = Table::new(
        ["p", "L2_iud", "expansion", "frakL1_iud"]
            .map(String::from)
            .to_vec(),
    );
    t.meta("command: figure1 (bdc)");
    t.meta("config:");
    t.meta(cfg.echo());
    let worst = rows
        .iter()
        .map(|r| r.1.truncation_bound)
        .fold(0.0, f64::max);
    t.meta(format!("max_truncation_bound L2_iud = {worst:e}"));
    for r in rows.iter().filter(|r| r.3.at_boundary) {
        t.meta(format!(
            "warning: frakL1_iud maximizer at i_max = {} for p = {}",
            cfg.i_max, r.0
        ));
    }
    for (p, l2, expansion, l1) in rows {
        t.push(vec![
            p.into(),
            l2.value.into(),
            expansion.into(),
            l1.value.into(),
        ]);
    }
    Ok(t)
}

pub fn sticky_table(cfg: &RunConfig, grid: &[f64]) -> Result<Table, Failure> {
    let search = cfg.search();
    let scan = convexity_scan(grid, 0.0, &cfg.series(), &search, Exec::default())?;
    let lower = Exec::default().try_map(grid, |&p| sticky_lower_bound(p, cfg.i_max, &search))?;
    let mut t = Table::new(
        ["p", "sticky_lb", "sticky_markov1", "exceeds_1_minus_p"]
            .map(String::from)
            .to_vec(),
    );
    t.meta("command: figure1 (sticky)");
    t.meta("config:");
    t.meta(cfg.echo());
    let worst = scan
        .iter()
        .map(|s| s.rate.truncation_bound)
        .fold(0.0, f64::max);
    t.meta(format!("max_truncation_bound sticky_markov1 = {worst:e}"));
    let flagged: Vec<f64> = scan.iter().filter(|s| s.exceeds).map(|s| s.p).collect();
    if let (Some(a), Some(b)) = (flagged.first(), flagged.last()) {
        t.meta(format!(
            "sticky_markov1 > 1 - p at {} grid points, p in [{}, {}]",
            flagged.len(),
            format_float(*a),
            format_float(*b)
        ));
    }
    for (s, l) in scan.iter().zip(&lower) {
        t.push(vec![
            s.p.into(),
            l.value.into(),
            s.rate.value.into(),
            Cell::Flag(s.exceeds),
        ]);
    }
    Ok(t)
}

/// Writes both files into `dir` and returns their paths.
pub fn cmd_figure1(cfg: &RunConfig, dir: &Path) -> Result<(PathBuf, PathBuf), Failure> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::Io(format!("creating {}: {e}", dir.display())))?;
    let grid = cfg.grid_or(crate::DEFAULT_GRID);
    let bdc = dir.join(BDC_FILE);
    let sticky = dir.join(STICKY_FILE);
    bdc_table(cfg, &grid)?.write(Some(&bdc))?;
    sticky_table(cfg, &grid)?.write(Some(&sticky))?;
    Ok((bdc, sticky))
}
