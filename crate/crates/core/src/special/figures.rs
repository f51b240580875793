//! Data behind the three occupation plots: degenerate `θ̄(y)` for `n = 5`,
//! hard-core boson `N̄(y)` for `n = 1..5`, and equidistant `θ̄_i(q)` at
//! `p = 1`, `n = 5`.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::emit::{csv_string, format_g, json_string, write_text, Emit};
use crate::error::{Error, Result};
use crate::thermo::{thermo_report, Route};

use super::{degenerate_averages, equidistant_p1, hardcore_boson_n, DegenerateParams};

/// Orbitals in figures 1 and 3.
pub const FIGURE_N: usize = 5;
/// `y` at which figure 3 is evaluated (`x = 1`).
pub const FIGURE3_Y: f64 = 0.0;
/// Relative tolerance of the brute-force spot checks.
const SPOT_TOL: f64 = 1e-10;

type Column = Box<dyn Fn(f64) -> Result<f64> + Sync>;

/// `count` equally spaced points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 || stop.partial_cmp(&start) != Some(std::cmp::Ordering::Greater) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidParams(format!(
                "grid {start}:{stop}:{count} must be increasing with at least 2 points"
            )));
        }
        Ok(Grid { start, stop, count })
    }

    pub fn default_for(id: u8) -> Result<Self> {
        match id {
            1 | 2 => Grid::new(-10.0, 10.0, 201),
            3 => Grid::new(0.01, 0.99, 99),
            _ => Err(unknown(id)),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.stop
                } else {
                    self.start + span * k as f64 / last
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;
    /// `start:stop:count`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse(format!("grid {s:?} is not start:stop:count"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Grid::new(
            parts[0].trim().parse().map_err(|_| bad())?,
            parts[1].trim().parse().map_err(|_| bad())?,
            parts[2].trim().parse().map_err(|_| bad())?,
        )
    }
}

fn unknown(id: u8) -> Error {
    Error::InvalidParams(format!("unknown figure id {id} (expected 1, 2 or 3)"))
}

/// One named curve of a figure.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub values: Vec<f64>,
}

/// Abscissa grid plus curves and a description of how they were made.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSeries {
    pub id: u8,
    pub abscissa_label: String,
    pub abscissa: Vec<f64>,
    pub curves: Vec<Curve>,
    pub metadata: Value,
}

impl FigureSeries {
    pub fn curve(&self, label: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn header(&self) -> Vec<String> {
        std::iter::once(self.abscissa_label.clone())
            .chain(self.curves.iter().map(|c| c.label.clone()))
            .collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = self
            .abscissa
            .iter()
            .enumerate()
            .map(|(k, a)| {
                std::iter::once(a.to_text())
                    .chain(self.curves.iter().map(|c| c.values[k].to_text()))
                    .collect()
            })
            .collect();
        csv_string(&self.header(), &rows)
    }

    pub fn to_json(&self) -> Value {
        let curves: Vec<Value> = self
            .curves
            .iter()
            .map(|c| json!({ "label": c.label, "values": c.values }))
            .collect();
        json!({
            "figure": self.id,
            "abscissa": { "label": self.abscissa_label, "values": self.abscissa },
            "curves": curves,
            "metadata": self.metadata,
        })
    }

    /// Writes `figN.csv` and `figN.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        let csv_path = dir.join(format!("fig{}.csv", self.id));
        let json_path = dir.join(format!("fig{}.json", self.id));
        write_text(&csv_path, &self.to_csv()?)?;
        write_text(&json_path, &json_string(&self.to_json()))?;
        Ok((csv_path, json_path))
    }
}

fn grid_text(g: &Grid) -> String {
    format!("{}:{}:{}", format_g(g.start, 17), format_g(g.stop, 17), g.count)
}

/// Builds a figure; `grid` defaults to `y ∈ [-10, 10]` (201 points) for
/// figures 1 and 2 and `q ∈ [0.01, 0.99]` (99 points) for figure 3.
pub fn figure_data(id: u8, grid: Option<Grid>) -> Result<FigureSeries> {
    let default = Grid::default_for(id)?;
    let grid = grid.unwrap_or(default);
    if id == 3 && (grid.start <= 0.0 || grid.stop >= 1.0) {
        return Err(Error::InvalidParams("figure 3 needs 0 < q < 1".into()));
    }
    let xs = grid.points();
    let columns: Vec<(String, Column)> = match id {
        1 => (1..=FIGURE_N as u64)
            .map(|p| {
                let f: Column = Box::new(move |y| {
                    Ok(degenerate_averages(&DegenerateParams::from_y(p, FIGURE_N, y)?)?.theta_bar)
                });
                (format!("p{p}"), f)
            })
            .collect(),
        2 => (1..=FIGURE_N)
            .map(|n| {
                let f: Column =
                    Box::new(move |y| Ok(hardcore_boson_n(n, y)));
                (format!("n{n}"), f)
            })
            .collect(),
        3 => (1..=FIGURE_N)
            .map(|i| {
                let f: Column = Box::new(move |q| {
                    Ok(equidistant_p1(FIGURE_N, FIGURE3_Y, q)?.theta_bar[i - 1])
                });
                (format!("theta{i}"), f)
            })
            .collect(),
        _ => return Err(unknown(id)),
    };
    let curves = columns
        .iter()
        .map(|(label, f)| {
            let values = xs.par_iter().map(|&a| f(a)).collect::<Result<Vec<f64>>>()?;
            Ok(Curve {
                label: label.clone(),
                values,
            })
        })
        .collect::<Result<Vec<Curve>>>()?;
    let series = FigureSeries {
        id,
        abscissa_label: if id == 3 { "q" } else { "y" }.into(),
        abscissa: xs,
        curves,
        metadata: metadata(id, &grid, grid == default),
    };
    spot_check(&series)?;
    Ok(series)
}

fn metadata(id: u8, grid: &Grid, default: bool) -> Value {
    let grid_note = if default {
        "default grid; axis ranges chosen to cover the transition region"
    } else {
        "user grid"
    };
    match id {
        1 => json!({
            "quantity": "theta_bar (degenerate orbitals)",
            "n": FIGURE_N, "p": "1..5", "abscissa": "y = (eps - mu)/tau",
            "grid": grid_text(grid), "grid_note": grid_note,
        }),
        2 => json!({
            "quantity": "Nbar (p = 1)",
            "n": "1..5", "p": 1, "abscissa": "y = (eps - mu)/tau",
            "grid": grid_text(grid), "grid_note": grid_note,
        }),
        _ => json!({
            "quantity": "theta_bar_i (equidistant levels)",
            "n": FIGURE_N, "p": 1, "abscissa": "q = exp(-delta/tau)",
            "y": FIGURE3_Y,
            "grid": grid_text(grid), "grid_note": grid_note,
        }),
    }
}

/// Compares the first, middle and last grid points with state enumeration.
fn spot_check(series: &FigureSeries) -> Result<()> {
    let len = series.abscissa.len();
    for k in [0, len / 2, len - 1] {
        let a = series.abscissa[k];
        for (c, curve) in series.curves.iter().enumerate() {
            let want = match series.id {
                1 => {
                    let d = DegenerateParams::from_y(c as u64 + 1, FIGURE_N, a)?;
                    thermo_report(&d.thermo()?, Route::Bruteforce)?.theta_bar[0]
                }
                2 => {
                    let d = DegenerateParams::from_y(1, c + 1, a)?;
                    thermo_report(&d.thermo()?, Route::Bruteforce)?.nbar
                }
                _ => {
                    let e = super::EquidistantParams::new(1, FIGURE_N, (-FIGURE3_Y).exp(), a)?;
                    thermo_report(&e.thermo()?, Route::Bruteforce)?.theta_bar[c]
                }
            };
            let got = curve.values[k];
            if (got - want).abs() > SPOT_TOL * want.abs().max(1e-300) {
                return Err(Error::Consistency(format!(
                    "figure {} curve {} at {a}: closed form {got} vs enumeration {want}",
                    series.id, curve.label
                )));
            }
        }
    }
    Ok(())
}
