//! `bounds`: evaluates named bounds over a p-grid.

use std::str::FromStr;

use ddc_core::bdc::{
    frak_l1_iud, frak_l1_markov1, l2_iud, prop1_bounds, small_p_expansion_bdc, sup_l2_markov1,
};
use ddc_core::sticky::{small_p_expansion_sticky, sticky_lower_bound, sup_sticky_markov1};
use ddc_core::{ChannelParams, Exec};

use crate::table::{Cell, Table};
use crate::{Failure, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Bdc,
    Sticky,
    /// Symmetric deletion-duplication channel, `p_i = p_d = p`.
    Ddc,
}

impl FromStr for Family {
    type Err = Failure;

    fn from_str(s: &str) -> Result<Self, Failure> {
        match s.to_ascii_lowercase().as_str() {
            "bdc" => Ok(Family::Bdc),
            "sticky" => Ok(Family::Sticky),
            "ddc" => Ok(Family::Ddc),
            _ => Err(Failure::Usage(format!(
                "unknown family {s:?}; valid: bdc, sticky, ddc"
            ))),
        }
    }
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Bdc => "bdc",
            Family::Sticky => "sticky",
            Family::Ddc => "ddc",
        }
    }

    /// Bound names accepted by `--set`, with their auxiliary columns.
    pub fn bounds(self) -> &'static [(&'static str, &'static [&'static str])] {
        match self {
            Family::Bdc => &[
                ("prop1_lower", &[]),
                ("upper", &[]),
                ("L2_iud", &[]),
                ("frakL1_iud", &["i"]),
                ("expansion", &[]),
                ("L2_markov1", &["alpha"]),
                ("frakL1_markov1", &["alpha", "i"]),
            ],
            Family::Sticky => &[
                ("prop1_lower", &[]),
                ("upper", &[]),
                ("sticky_lb", &["alpha", "i"]),
                ("sticky_markov1", &["alpha", "exceeds_1_minus_p"]),
                ("expansion", &[]),
            ],
            Family::Ddc => &[("prop1_lower", &[]), ("upper", &[])],
        }
    }

    fn params(self, p: f64) -> ddc_core::Result<ChannelParams> {
        match self {
            Family::Bdc => ChannelParams::bdc(p),
            Family::Sticky => ChannelParams::sticky(p),
            Family::Ddc => ChannelParams::symmetric(p),
        }
    }
}

/// One evaluated bound at one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub p: f64,
    pub value: f64,
    pub aux: Vec<Cell>,
    pub truncation_bound: f64,
    pub warning: Option<String>,
}

/// A bound evaluated over a grid, in grid order.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCurve {
    pub name: String,
    pub family: Family,
    pub aux_names: Vec<String>,
    pub points: Vec<CurvePoint>,
}

impl BoundCurve {
    pub fn max_truncation_bound(&self) -> f64 {
        self.points
            .iter()
            .map(|pt| pt.truncation_bound)
            .fold(0.0, f64::max)
    }
}

/// Values are the raw expressions; a negative lower bound means only the
/// trivial bound 0 holds there.
fn evaluate_point(
    family: Family,
    name: &str,
    p: f64,
    cfg: &RunConfig,
) -> Result<CurvePoint, Failure> {
    let params = family.params(p)?;
    let (series, search) = (cfg.series(), cfg.search());
    let mut point = CurvePoint {
        p,
        value: 0.0,
        aux: Vec::new(),
        truncation_bound: 0.0,
        warning: None,
    };
    match (family, name) {
        (_, "prop1_lower") => point.value = prop1_bounds(&params).lower,
        (_, "upper") => point.value = prop1_bounds(&params).upper,
        (Family::Bdc, "L2_iud") => {
            let v = l2_iud(p, &series)?;
            point.value = v.value;
            point.truncation_bound = v.truncation_bound;
        }
        (Family::Bdc, "frakL1_iud") => {
            let v = frak_l1_iud(p, cfg.i_max)?;
            point.value = v.value;
            point.aux = vec![v.i_star.into()];
            if v.at_boundary {
                point.warning = Some(format!(
                    "frakL1_iud maximizer at i_max = {} for p = {p}",
                    cfg.i_max
                ));
            }
        }
        (Family::Bdc, "expansion") => point.value = small_p_expansion_bdc(p),
        (Family::Bdc, "L2_markov1") => {
            let (v, alpha) = sup_l2_markov1(p, &series, &search)?;
            point.value = v.value;
            point.truncation_bound = v.truncation_bound;
            point.aux = vec![alpha.into()];
        }
        (Family::Bdc, "frakL1_markov1") => {
            let v = frak_l1_markov1(p, cfg.i_max, &search)?;
            point.value = v.value;
            point.aux = vec![v.alpha.into(), v.i_star.into()];
        }
        (Family::Sticky, "sticky_lb") => {
            let v = sticky_lower_bound(p, cfg.i_max, &search)?;
            point.value = v.value;
            point.aux = vec![v.alpha.into(), v.i_star.into()];
        }
        (Family::Sticky, "sticky_markov1") => {
            let (v, alpha) = sup_sticky_markov1(p, &series, &search)?;
            point.value = v.value;
            point.truncation_bound = v.truncation_bound;
            point.aux = vec![alpha.into(), (v.value > 1.0 - p).into()];
        }
        (Family::Sticky, "expansion") => point.value = small_p_expansion_sticky(p),
        _ => return Err(unknown_bound(family, name)),
    }
    Ok(point)
}

fn unknown_bound(family: Family, name: &str) -> Failure {
    let valid: Vec<&str> = family.bounds().iter().map(|b| b.0).collect();
    Failure::Usage(format!(
        "unknown bound {name:?} for family {}; valid: {}",
        family.tag(),
        valid.join(", ")
    ))
}

pub fn evaluate_curve(
    family: Family,
    name: &str,
    grid: &[f64],
    cfg: &RunConfig,
) -> Result<BoundCurve, Failure> {
    let (_, aux) = family
        .bounds()
        .iter()
        .find(|b| b.0 == name)
        .ok_or_else(|| unknown_bound(family, name))?;
    let points = Exec::default().try_map(grid, |&p| evaluate_point(family, name, p, cfg))?;
    Ok(BoundCurve {
        name: name.to_string(),
        family,
        aux_names: aux.iter().map(|a| format!("aux_{name}_{a}")).collect(),
        points,
    })
}

/// Lays curves out as `p, <bounds...>, <aux...>` with provenance metadata.
pub fn curves_table(curves: &[BoundCurve], grid: &[f64], command: &str, cfg: &RunConfig) -> Table {
    let mut columns = vec!["p".to_string()];
    columns.extend(curves.iter().map(|c| c.name.clone()));
    columns.extend(curves.iter().flat_map(|c| c.aux_names.clone()));
    let mut table = Table::new(columns);
    table.meta(format!("command: {command}"));
    table.meta("config:");
    table.meta(cfg.echo());
    for c in curves {
        table.meta(format!(
            "max_truncation_bound {} = {:e}",
            c.name,
            c.max_truncation_bound()
        ));
        for w in c.points.iter().filter_map(|pt| pt.warning.as_ref()) {
            table.meta(format!("warning: {w}"));
        }
    }
    for (k, &p) in grid.iter().enumerate() {
        let mut row: Vec<Cell> = vec![p.into()];
        row.extend(curves.iter().map(|c| Cell::Float(c.points[k].value)));
        row.extend(curves.iter().flat_map(|c| c.points[k].aux.clone()));
        table.push(row);
    }
    table
}

pub fn cmd_bounds(cfg: &RunConfig, family: Family, names: &[String]) -> Result<Table, Failure> {
    if names.is_empty() {
        return Err(unknown_bound(family, ""));
    }
    let grid = cfg.grid_or(crate::DEFAULT_GRID);
    let curves = names
        .iter()
        .map(|n| evaluate_curve(family, n, &grid, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    for c in &curves {
        for w in c.points.iter().filter_map(|pt| pt.warning.as_ref()) {
            eprintln!("warning: {w}");
        }
    }
    let command = format!("bounds family={} set={}", family.tag(), names.join(","));
    Ok(curves_table(&curves, &grid, &command, cfg))
}
