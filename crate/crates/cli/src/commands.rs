use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use wpt_core::energy::report;
use wpt_core::placement::{allocate, analytic_optimum, compare_placements, grid_search};
use wpt_core::{AllocationPolicy, Edge, EnergyReport, Placement, Trajectory};

use crate::config::{Resolved, RunConfig};
use crate::CliError;

/// Allowed |computed − published| for every reproduction row, in dB.
pub const REPRODUCE_TOL_DB: f64 = 0.005;

fn edge_name(t: &Trajectory) -> &'static str {
    match t.edge {
        Edge::Lower => "lower",
        Edge::Upper => "upper",
    }
}

fn write_report(out: &mut impl Write, cfg: &Resolved, placements: &[Placement], r: &EnergyReport) -> Result<(), CliError> {
    if let Some(seed) = cfg.seed {
        writeln!(out, "seed: {seed}")?;
    }
    writeln!(out, "traversal_time_s: {:.4}", r.traversal_time_s)?;
    writeln!(out, "placements:")?;
    for (j, p) in placements.iter().enumerate() {
        writeln!(out, "  tuav[{j}]: a_m={:.4} b_m={:.4} energy_j={:.6}", p.a_m, p.b_m, r.per_tuav_energy_j[j])?;
    }
    writeln!(out, "receivers:")?;
    for (k, t) in cfg.trajectories.iter().enumerate() {
        writeln!(
            out,
            "  ruav[{k}] ({}): energy_j={:.6} avg_power_w={:.6} avg_power_dbm={:.4}",
            edge_name(t),
            r.per_ruav_energy_j[k],
            r.per_ruav_avg_power_w[k],
            r.per_ruav_avg_power_dbm[k]
        )?;
    }
    writeln!(out, "total_energy_j: {:.6}", r.total_energy_j)?;
    writeln!(out, "total_avg_power_w: {:.6}", r.total_avg_power_w)?;
    writeln!(out, "total_avg_power_dbm: {:.4}", r.total_avg_power_dbm)?;
    writeln!(out, "fairness_ratio: {:.6}", r.fairness_ratio)?;
    Ok(())
}

/// Energy report for the configured placements, or `override_placements` when non-empty.
pub fn evaluate(config: &RunConfig, override_placements: &[(f64, f64)], json: bool, out: &mut impl Write) -> Result<(), CliError> {
    let cfg = config.resolve()?;
    let placements: Vec<Placement> = if override_placements.is_empty() {
        cfg.placements.clone()
    } else {
        override_placements.iter().map(|&(a, b)| Placement::new(a, b)).collect()
    };
    if placements.is_empty() {
        return Err(CliError::Config(
            "no placements given: set `placements` in the config or pass --placement a,b".into(),
        ));
    }
    let r = report(&placements, &cfg.trajectories, &cfg.area, &cfg.rf)?;
    if json {
        serde_json::to_writer_pretty(&mut *out, &r)?;
        writeln!(out)?;
    } else {
        write_report(out, &cfg, &placements, &r)?;
    }
    Ok(())
}

/// Writes the raster CSV to `dest` (or `out` when `None`); returns a one-line summary.
pub fn sweep(config: &RunConfig, resolution_m: Option<f64>, dest: Option<&Path>, out: &mut impl Write) -> Result<String, CliError> {
    let cfg = config.resolve()?;
    let resolution = resolution_m
        .or(cfg.resolution_m)
        .ok_or_else(|| CliError::Config("no sweep resolution: pass --resolution or set resolution_m".into()))?;
    let grid = grid_search(&cfg.area, &cfg.rf, resolution, &cfg.trajectories)?;
    match dest {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            grid.write_csv(&mut w)?;
            w.flush()?;
        }
        None => grid.write_csv(&mut *out)?,
    }
    let cells: Vec<String> = grid.argmax_cells.iter().map(|p| format!("({}, {})", p.a_m, p.b_m)).collect();
    Ok(format!("{} cells at {} m; argmax {}", grid.rows.len(), resolution, cells.join(" ")))
}

#[derive(Serialize)]
struct OptimizeOutput<'a> {
    policy: AllocationPolicy,
    placements: &'a [Placement],
    report: &'a EnergyReport,
}

/// Allocates `n_tuavs` transmitters to both edges under `policy` and reports the result.
pub fn optimize(config: &RunConfig, n_tuavs: usize, policy: AllocationPolicy, json: bool, out: &mut impl Write) -> Result<(), CliError> {
    let cfg = config.resolve()?;
    let mut edges = config.trajectories.clone();
    edges.sort();
    if edges != [Edge::Lower, Edge::Upper] {
        return Err(CliError::Config("optimize needs exactly the two edges: trajectories = [\"lower\", \"upper\"]".into()));
    }
    let placements = allocate(n_tuavs, policy, &cfg.area)?;
    let r = report(&placements, &cfg.trajectories, &cfg.area, &cfg.rf)?;
    if json {
        serde_json::to_writer_pretty(&mut *out, &OptimizeOutput { policy, placements: &placements, report: &r })?;
        writeln!(out)?;
    } else {
        let name = match policy {
            AllocationPolicy::MaxTotal => "max-total",
            AllocationPolicy::Fair => "fair",
        };
        writeln!(out, "policy: {name}")?;
        writeln!(out, "tuavs: {n_tuavs}")?;
        write_report(out, &cfg, &placements, &r)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproRow {
    pub label: &'static str,
    pub unit: &'static str,
    pub published: f64,
    pub computed: f64,
}

impl ReproRow {
    pub fn delta(&self) -> f64 {
        self.computed - self.published
    }

    pub fn passes(&self) -> bool {
        self.delta().abs() <= REPRODUCE_TOL_DB
    }
}

/// The five published power levels and three gains, recomputed under `config`'s area and RF.
pub fn reproduction_rows(config: &RunConfig) -> Result<Vec<ReproRow>, CliError> {
    let cfg = config.resolve()?;
    let (area, rf) = (&cfg.area, &cfg.rf);
    let half = area.side_length_m() / 2.0;
    let optimum = [analytic_optimum(area)[0]];
    let centre = [Placement::new(half, half)];
    let side = [Placement::new(0.0, half)];
    let both = Trajectory::both();
    let lower = [Trajectory::LOWER];
    let dbm = |p: &[Placement], t: &[Trajectory]| report(p, t, area, rf).map(|r| r.total_avg_power_dbm);

    let row = |label, unit, published, computed| ReproRow { label, unit, published, computed };
    Ok(vec![
        row("optimum (l/2, ε), two receivers", "dBm", 25.5121, dbm(&optimum, &both)?),
        row("centre (l/2, l/2), two receivers", "dBm", 16.7425, dbm(&centre, &both)?),
        row("side (0, l/2), two receivers", "dBm", 15.2233, dbm(&side, &both)?),
        row("optimum (l/2, ε), lower receiver", "dBm", 25.4152, dbm(&optimum, &lower)?),
        row("side (0, l/2), lower receiver", "dBm", 12.2130, dbm(&side, &lower)?),
        row("gain optimum over centre, two receivers", "dB", 8.7696, compare_placements(&optimum, &centre, &both, area, rf)?),
        row("gain optimum over side, two receivers", "dB", 10.2888, compare_placements(&optimum, &side, &both, area, rf)?),
        row("gain optimum over side, lower receiver", "dB", 13.2022, compare_placements(&optimum, &side, &lower, area, rf)?),
    ])
}

/// Prints the comparison table; fails with [`CliError::Mismatch`] if any row is out of tolerance.
pub fn reproduce(config: &RunConfig, out: &mut impl Write) -> Result<(), CliError> {
    let rows = reproduction_rows(config)?;
    writeln!(out, "{:<42} {:>10} {:>10} {:>9}  status", "quantity", "published", "computed", "delta")?;
    for r in &rows {
        writeln!(
            out,
            "{:<42} {:>10.4} {:>10.4} {:>+9.4}  {}",
            format!("{} [{}]", r.label, r.unit),
            r.published,
            r.computed,
            r.delta(),
            if r.passes() { "PASS" } else { "FAIL" }
        )?;
    }
    let failing: Vec<&str> = rows.iter().filter(|r| !r.passes()).map(|r| r.label).collect();
    if failing.is_empty() {
        writeln!(out, "all {} rows within ±{REPRODUCE_TOL_DB} dB", rows.len())?;
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("{} of {} rows out of tolerance: {}", failing.len(), rows.len(), failing.join("; "))))
    }
}
