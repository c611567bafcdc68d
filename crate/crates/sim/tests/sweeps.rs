use rir_core::rates::{
    rate_af_relay, rate_df_relay, rate_irs, rate_rir_af, rate_rir_df, BetaPolicy, IrsChannel,
    IrsConvention, IrsInputs, Powers, RelayInputs, RirChannel, RirInputs,
};
use rir_core::sizing::SizingTarget;
use rir_sim::config::{BetaSetting, SweepAxis};
use rir_sim::output::to_csv_string;
use rir_sim::sweep::INFEASIBLE;
use rir_sim::{presets, run_rate_sweep, run_sizing_sweep, with_workers, Architecture, ChannelMode, SweepConfig, SweepRow};

fn one_point(arch: &str, axis: &str) -> SweepConfig {
    SweepConfig::from_json(&format!(
        r#"{{"sweep_axis":"{axis}","axis_values":[120],"elements":1000,"target_rate":2,
             "architectures":["{arch}"],"beta_values_db":[15]}}"#
    ))
    .unwrap()
}

#[test]
fn single_point_single_architecture_gives_one_row() {
    for arch in ["irs", "df_relay", "af_relay", "rir_df", "rir_af"] {
        let rows = run_rate_sweep(&one_point(arch, "elements")).unwrap();
        assert_eq!(rows.len(), 1, "{arch}");
        assert!(rows[0].rate_bps_hz.is_some() && rows[0].m_required.is_none());
    }
    for arch in ["irs", "rir_df", "rir_af"] {
        let rows = run_sizing_sweep(&one_point(arch, "distance")).unwrap();
        assert_eq!(rows.len(), 1, "{arch}");
        assert!(rows[0].rate_bps_hz.is_none() && rows[0].m_required.is_some());
    }
}

#[test]
fn rows_are_sorted_by_axis_then_architecture() {
    let mut config = presets::figure5().config;
    config.axis_values.reverse();
    config.architectures.reverse();
    let rows = run_rate_sweep(&config).unwrap();
    assert_eq!(rows.len(), 16 * 9);
    for w in rows.windows(2) {
        assert!(w[0].axis < w[1].axis || (w[0].axis == w[1].axis && w[0].architecture <= w[1].architecture));
    }
    assert_eq!(rows, run_rate_sweep(&presets::figure5().config).unwrap());
}

#[test]
fn worker_count_does_not_change_output() {
    let config = presets::figure4().config;
    let one = with_workers(Some(1), || run_rate_sweep(&config)).unwrap().unwrap();
    let many = with_workers(Some(8), || run_rate_sweep(&config)).unwrap().unwrap();
    assert_eq!(to_csv_string(&one), to_csv_string(&many));
}

/// Rebuilds the link budget for one distance without the sweep runner.
fn independent_link(fc_ghz: f64, bandwidth_hz: f64, d_x: f64) -> (Powers, f64, f64) {
    let noise_mw = 10f64.powf((-174.0 + 10.0 * bandwidth_hz.log10() + 8.0) / 10.0);
    let powers = Powers {
        p_t: 100.0,
        p_r: 100.0,
        sigma1_sq: noise_mw,
        sigma2_sq: noise_mw,
    };
    let gain = |d: f64| 10f64.powf(-(32.4 + 21.0 * d.log10() + 20.0 * fc_ghz.log10()) / 10.0);
    let half = d_x / 2.0;
    let d_t = (half * half + 100.0).sqrt();
    let d_r = (half * half + 100.0 + 81.0).sqrt();
    (powers, gain(d_t), gain(d_r))
}

fn recompute(row: &SweepRow, m: u64, powers: Powers, rho_t: f64, rho_r: f64) -> f64 {
    let beta = BetaPolicy::from_db(row.beta.and_then(BetaSetting::db));
    let rir = RirInputs {
        elements: m,
        kappa: 1.0,
        powers,
        channel: RirChannel::UpperBound { rho_t, rho_r },
        beta,
    };
    let relay = RelayInputs {
        powers,
        zeta_t: rho_t,
        zeta_r: rho_r,
        beta,
    };
    let r = match row.architecture {
        Architecture::Irs => rate_irs(&IrsInputs {
            elements: m,
            kappa: 1.0,
            powers,
            channel: IrsChannel::UpperBound {
                zeta_t: rho_t,
                zeta_r: rho_r,
            },
            convention: IrsConvention::Double,
        }),
        Architecture::DfRelay => rate_df_relay(&relay),
        Architecture::AfRelay => rate_af_relay(&relay),
        Architecture::RirDf => rate_rir_df(&rir),
        Architecture::RirAf => rate_rir_af(&rir),
    };
    r.unwrap().rate
}

#[test]
fn rate_rows_reproduce_through_the_engine() {
    for fig in [presets::figure4(), presets::figure5()] {
        let c = &fig.config;
        let rows = run_rate_sweep(c).unwrap();
        // Every 20th row: a 5% spot check.
        for row in rows.iter().step_by(20) {
            let (m, d_x) = match c.sweep_axis {
                SweepAxis::Elements => (row.axis as u64, c.geometry.d_x),
                SweepAxis::Distance => (c.elements.unwrap(), row.axis),
            };
            let (powers, rho_t, rho_r) = independent_link(c.radio.fc_ghz, c.radio.bandwidth_hz, d_x);
            let want = recompute(row, m, powers, rho_t, rho_r);
            let got = row.rate_bps_hz.unwrap();
            assert!((got - want).abs() <= 1e-9 * want.abs().max(1e-300), "{row:?}: {want}");
        }
    }
}

#[test]
fn sizing_rows_are_tight() {
    let fig = presets::figure6();
    let c = &fig.config;
    let target = SizingTarget::new(2.0).unwrap();
    for row in run_sizing_sweep(c).unwrap() {
        let m = row.m_required.expect("figure 6 is feasible everywhere");
        let (powers, rho_t, rho_r) = independent_link(60.0, 1e9, row.axis);
        assert!(recompute(&row, m, powers, rho_t, rho_r) >= target.r_lim, "{row:?}");
        if m > 1 {
            assert!(recompute(&row, m - 1, powers, rho_t, rho_r) < target.r_lim, "{row:?}");
        }
        assert!((row.m_real.unwrap() - m as f64).abs() < 1.0 + 1e-6 * m as f64);
    }
}

#[test]
fn unreachable_targets_become_infeasible_rows() {
    let mut c = presets::figure6().config;
    c.target_rate = Some(200.0);
    let rows = run_sizing_sweep(&c).unwrap();
    assert_eq!(rows.len(), c.axis_values.len() * 4);
    assert!(rows.iter().all(|r| r.branch == INFEASIBLE && r.m_required.is_none() && r.m_real.is_none()));
}

#[test]
fn irs_sizing_grows_super_linearly() {
    let rows = run_sizing_sweep(&presets::figure6().config).unwrap();
    let irs: Vec<f64> = rows
        .iter()
        .filter(|r| r.architecture == Architecture::Irs)
        .map(|r| r.m_real.unwrap())
        .collect();
    let slopes: Vec<f64> = irs.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(slopes.windows(2).all(|s| s[1] > s[0]), "{slopes:?}");
}

#[test]
fn non_bound_modes_run_and_never_exceed_the_bound() {
    let mut c = presets::figure5().config;
    c.axis_values = vec![50.0, 200.0];
    let bound = run_rate_sweep(&c).unwrap();
    for mode in [ChannelMode::Los, ChannelMode::Exact] {
        c.mode = mode;
        let rows = run_rate_sweep(&c).unwrap();
        assert_eq!(rows.len(), bound.len());
        for (r, b) in rows.iter().zip(&bound) {
            let (r, b) = (r.rate_bps_hz.unwrap(), b.rate_bps_hz.unwrap());
            // The classical surface sees the same product of path gains in every mode.
            assert!(r <= b * (1.0 + 1e-9), "{mode:?}: {r} > {b}");
        }
    }
}
