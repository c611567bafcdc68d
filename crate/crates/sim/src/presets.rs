//! Bundled scenarios for the three published figures.
//!
//! | id | sweep               | band            | output                     |
//! |----|---------------------|-----------------|----------------------------|
//! | 4  | M from 1e2 to 1e5   | 3.5 GHz, 100 MHz | rate at `d_x = 400 m`     |
//! | 5  | `d_x` 25 to 400 m   | 60 GHz, 1 GHz   | rate at `M = 50000`        |
//! | 6  | `d_x` 25 to 150 m   | 60 GHz, 1 GHz   | elements for 2 bps/Hz      |
//!
//! The M range of figure 4 and the distance range of figure 5 are
//! reconstructions; the figures do not label them numerically.

use crate::config::{
    Architecture, BetaSetting, ChannelMode, GeometryConfig, IrsConventionSetting, RadioSection, SweepAxis,
    SweepConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    Rates,
    Sizing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub id: u8,
    pub kind: FigureKind,
    pub config: SweepConfig,
}

impl Figure {
    pub fn default_file_name(&self) -> String {
        format!("figure{}.csv", self.id)
    }
}

/// `points_per_decade` log-spaced integers from `10^lo` to `10^hi`.
pub fn log_spaced_counts(lo: i32, hi: i32, points_per_decade: u32) -> Vec<f64> {
    let steps = (hi - lo) as u32 * points_per_decade;
    let mut v: Vec<f64> = (0..=steps)
        .map(|i| 10f64.powf(lo as f64 + i as f64 / points_per_decade as f64).round())
        .collect();
    v.dedup();
    v
}

pub fn linear_range(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

fn mmwave_radio() -> RadioSection {
    RadioSection {
        fc_ghz: 60.0,
        bandwidth_hz: 1e9,
        ..RadioSection::default()
    }
}

fn base(radio: RadioSection, sweep_axis: SweepAxis, axis_values: Vec<f64>) -> SweepConfig {
    SweepConfig {
        geometry: GeometryConfig::default(),
        radio,
        sweep_axis,
        axis_values,
        elements: None,
        architectures: Vec::new(),
        beta_values_db: vec![BetaSetting::Db(15.0), BetaSetting::Db(20.0), BetaSetting::Max],
        mode: ChannelMode::UpperBound,
        target_rate: None,
        irs_convention: IrsConventionSetting::Double,
        output_path: None,
    }
}

pub fn figure4() -> Figure {
    let mut config = base(RadioSection::default(), SweepAxis::Elements, log_spaced_counts(2, 5, 10));
    config.geometry.d_x = 400.0;
    config.architectures = vec![Architecture::Irs, Architecture::RirDf, Architecture::RirAf];
    Figure {
        id: 4,
        kind: FigureKind::Rates,
        config,
    }
}

pub fn figure5() -> Figure {
    let mut config = base(mmwave_radio(), SweepAxis::Distance, linear_range(25.0, 400.0, 25.0));
    config.elements = Some(50_000);
    config.architectures = Architecture::ALL.to_vec();
    Figure {
        id: 5,
        kind: FigureKind::Rates,
        config,
    }
}

pub fn figure6() -> Figure {
    let mut config = base(mmwave_radio(), SweepAxis::Distance, linear_range(25.0, 150.0, 5.0));
    config.target_rate = Some(2.0);
    config.architectures = vec![Architecture::Irs, Architecture::RirDf, Architecture::RirAf];
    config.beta_values_db = vec![BetaSetting::Db(15.0), BetaSetting::Db(20.0)];
    Figure {
        id: 6,
        kind: FigureKind::Sizing,
        config,
    }
}

pub fn figure(id: u8) -> Option<Figure> {
    match id {
        4 => Some(figure4()),
        5 => Some(figure5()),
        6 => Some(figure6()),
        _ => None,
    }
}
