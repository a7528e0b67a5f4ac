//! Tables behind the nine rate-gap figures.

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use subblock_codes::asymptotic::{
    gap_cwc_cscc_sweep, gap_hwc_secc_sweep, gap_secc_cscc_sweep, rate_penalty_r, threshold_root,
    SweepValue, Threshold,
};
use subblock_codes::{Error, Result};

use crate::table::{Cell, Table};

pub const DEFAULT_DELTAS: [f64; 3] = [0.001, 0.01, 0.05];
pub const DEFAULT_WEIGHT_SWEEP_L: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

/// The three gaps, each owning one row of figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gap {
    CwcCscc,
    HwcSecc,
    SeccCscc,
}

impl Gap {
    pub fn label(self) -> &'static str {
        match self {
            Gap::CwcCscc => "cwc-cscc",
            Gap::HwcSecc => "hwc-secc",
            Gap::SeccCscc => "secc-cscc",
        }
    }

    pub fn threshold(self) -> Threshold {
        match self {
            Gap::CwcCscc => Threshold::Tilde,
            Gap::HwcSecc => Threshold::Hat,
            Gap::SeccCscc => Threshold::Grave,
        }
    }

    pub fn sweep(self, l: u32, delta: f64, ws: u32) -> Result<SweepValue<f64>> {
        match self {
            Gap::CwcCscc => gap_cwc_cscc_sweep(l, delta, ws),
            Gap::HwcSecc => gap_hwc_secc_sweep(l, delta, ws),
            Gap::SeccCscc => gap_secc_cscc_sweep(l, delta, ws),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Gap at `w_s = L/2` against `L`.
    VersusLength,
    /// Gap against `w_s` at one `L`.
    VersusWeight,
    /// Threshold root against `L`.
    Threshold,
}

impl FigureId {
    pub const ALL: [FigureId; 9] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9,
    ];

    pub fn label(self) -> String {
        format!("fig{}", self as usize + 1)
    }

    pub fn gap(self) -> Gap {
        match self as usize / 3 {
            0 => Gap::CwcCscc,
            1 => Gap::HwcSecc,
            _ => Gap::SeccCscc,
        }
    }

    pub fn layout(self) -> Layout {
        match self as usize % 3 {
            0 => Layout::VersusLength,
            1 => Layout::VersusWeight,
            _ => Layout::Threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureSpec {
    pub id: FigureId,
    pub deltas: Vec<f64>,
    /// Even subblock lengths for the length sweeps.
    pub lengths: Vec<u32>,
    /// Subblock length for the weight sweeps.
    pub weight_sweep_l: u32,
}

impl FigureSpec {
    pub fn new(id: FigureId) -> Self {
        FigureSpec {
            id,
            deltas: DEFAULT_DELTAS.to_vec(),
            lengths: (2..=64).step_by(2).collect(),
            weight_sweep_l: DEFAULT_WEIGHT_SWEEP_L,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        match self.id.layout() {
            Layout::VersusLength | Layout::Threshold => {
                if self.lengths.is_empty() {
                    return bad("length grid is empty".into());
                }
                if let Some(l) = self.lengths.iter().find(|&&l| l == 0 || l % 2 != 0) {
                    return bad(format!("lengths must be even and positive, got {l}"));
                }
            }
            Layout::VersusWeight => {
                if self.weight_sweep_l < 2 || self.weight_sweep_l % 2 != 0 {
                    return bad(format!(
                        "weight sweep needs an even L ≥ 2, got {}",
                        self.weight_sweep_l
                    ));
                }
            }
        }
        if self.id.layout() != Layout::Threshold {
            if self.deltas.is_empty() {
                return bad("δ grid is empty".into());
            }
            if let Some(d) = self.deltas.iter().find(|d| !(0.0..=1.0).contains(*d)) {
                return bad(format!("δ values must lie in [0, 1], got {d}"));
            }
        }
        Ok(())
    }

    fn metadata(&self) -> String {
        let join = |v: &[String]| v.join(",");
        let lengths: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        let deltas: Vec<String> = self.deltas.iter().map(|d| d.to_string()).collect();
        let grid = match self.id.layout() {
            Layout::VersusLength => format!("w_s=L/2 L={} delta={}", join(&lengths), join(&deltas)),
            Layout::VersusWeight => format!(
                "L={} w_s={}..{} delta={}",
                self.weight_sweep_l,
                self.weight_sweep_l / 2,
                self.weight_sweep_l - 1,
                join(&deltas)
            ),
            Layout::Threshold => format!("w_s=L/2 L={}", join(&lengths)),
        };
        format!(
            "sbcodes {} figure={} gap={} {grid}",
            env!("CARGO_PKG_VERSION"),
            self.id.label(),
            self.id.gap().label()
        )
    }
}

fn sweep_cell(v: SweepValue<f64>) -> Cell {
    match v.value() {
        Some(x) => Cell::Num(x),
        None => Cell::Empty,
    }
}

fn delta_header(d: f64) -> String {
    format!("delta={d}")
}

/// Computes the figure's table; rows are evaluated in parallel but kept
/// in grid order.
pub fn figure_table(spec: &FigureSpec) -> Result<Table> {
    spec.validate()?;
    let gap = spec.id.gap();
    let (header, rows): (Vec<String>, Vec<Vec<Cell>>) = match spec.id.layout() {
        Layout::VersusLength => {
            let mut header = vec!["L".to_string()];
            header.extend(spec.deltas.iter().map(|&d| delta_header(d)));
            let with_penalty = spec.id == FigureId::Fig1;
            if with_penalty {
                header.push("r(L,0.5)".into());
            }
            let rows = spec
                .lengths
                .par_iter()
                .map(|&l| {
                    let mut row = vec![Cell::Int(l as u64)];
                    for &d in &spec.deltas {
                        row.push(sweep_cell(gap.sweep(l, d, l / 2)?));
                    }
                    if with_penalty {
                        row.push(Cell::Num(rate_penalty_r::<f64>(l, l / 2)?));
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            (header, rows)
        }
        Layout::VersusWeight => {
            let l = spec.weight_sweep_l;
            let mut header = vec!["w_s".to_string()];
            header.extend(spec.deltas.iter().map(|&d| delta_header(d)));
            let rows = (l / 2..l)
                .into_par_iter()
                .map(|ws| {
                    let mut row = vec![Cell::Int(ws as u64)];
                    for &d in &spec.deltas {
                        row.push(sweep_cell(gap.sweep(l, d, ws)?));
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            (header, rows)
        }
        Layout::Threshold => {
            let which = gap.threshold();
            let header = vec![
                "L".to_string(),
                format!("root_{}", which.label()),
                "zero_boundary".to_string(),
            ];
            let rows = spec
                .lengths
                .par_iter()
                .map(|&l| {
                    let root: f64 = threshold_root(which, l)?;
                    // at w_s = L/2 both δ* and the Plotkin point equal 1/2
                    Ok(vec![Cell::Int(l as u64), Cell::Num(root), Cell::Num(0.5)])
                })
                .collect::<Result<Vec<_>>>()?;
            (header, rows)
        }
    };
    Ok(Table {
        metadata: spec.metadata(),
        header,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_map_to_gaps_and_layouts() {
        assert_eq!(FigureId::Fig1.gap(), Gap::CwcCscc);
        assert_eq!(FigureId::Fig5.gap(), Gap::HwcSecc);
        assert_eq!(FigureId::Fig9.gap(), Gap::SeccCscc);
        assert_eq!(FigureId::Fig4.layout(), Layout::VersusLength);
        assert_eq!(FigureId::Fig8.layout(), Layout::VersusWeight);
        assert_eq!(FigureId::Fig6.layout(), Layout::Threshold);
        assert_eq!(FigureId::Fig7.label(), "fig7");
    }

    #[test]
    fn threshold_rows_for_two_bits() {
        let t = figure_table(&FigureSpec::new(FigureId::Fig6)).unwrap();
        match t.rows[0][1] {
            Cell::Num(x) => assert!((x - 0.056).abs() < 1e-3),
            ref c => panic!("{c:?}"),
        }
        let t = figure_table(&FigureSpec::new(FigureId::Fig9)).unwrap();
        match t.rows[0][1] {
            Cell::Num(x) => assert!((x - 0.084).abs() < 1e-3),
            ref c => panic!("{c:?}"),
        }
    }

    #[test]
    fn malformed_specs_rejected() {
        let mut s = FigureSpec::new(FigureId::Fig1);
        s.lengths = vec![3];
        assert!(figure_table(&s).is_err());
        s.lengths.clear();
        assert!(figure_table(&s).is_err());
        let mut s = FigureSpec::new(FigureId::Fig2);
        s.deltas = vec![1.5];
        assert!(figure_table(&s).is_err());
    }
}
