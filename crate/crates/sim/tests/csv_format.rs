use rir_sim::config::BetaSetting;
use rir_sim::output::{emit_csv, read_csv, read_csv_file, to_csv_string, HEADER};
use rir_sim::{presets, run_rate_sweep, run_sizing_sweep, Architecture, SweepRow};

fn sample_rows() -> Vec<SweepRow> {
    vec![
        SweepRow {
            axis: 400.0,
            architecture: Architecture::Irs,
            beta: None,
            rate_bps_hz: Some(1.0 / 3.0),
            m_required: None,
            m_real: None,
            branch: "upper_bound".into(),
        },
        SweepRow {
            axis: 150.0,
            architecture: Architecture::RirAf,
            beta: Some(BetaSetting::Db(15.0)),
            rate_bps_hz: None,
            m_required: Some(271_497),
            m_real: Some(271_496.338_5),
            branch: "rir_af_gain_limited".into(),
        },
        SweepRow {
            axis: 25.0,
            architecture: Architecture::AfRelay,
            beta: Some(BetaSetting::Max),
            rate_bps_hz: Some(6.945e-1),
            m_required: None,
            m_real: None,
            branch: "power_limited".into(),
        },
    ]
}

#[test]
fn empty_rows_give_header_only() {
    assert_eq!(to_csv_string(&[]), format!("{}\n", HEADER.join(",")));
}

#[test]
fn one_line_per_row_with_lf_endings() {
    let text = to_csv_string(&sample_rows());
    assert_eq!(text.lines().count(), 4);
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    assert_eq!(text.lines().next().unwrap(), "axis,architecture,beta_db,rate_bps_hz,m_required,m_real,branch");
    assert_eq!(text.lines().nth(1).unwrap(), "4.000000000e2,irs,,3.333333333e-1,,,upper_bound");
    assert_eq!(
        text.lines().nth(2).unwrap(),
        "1.500000000e2,rir_af,1.500000000e1,,271497,2.714963385e5,rir_af_gain_limited"
    );
    assert_eq!(text.lines().nth(3).unwrap(), "2.500000000e1,af_relay,max,6.945000000e-1,,,power_limited");
}

#[test]
fn ten_significant_digits() {
    let text = to_csv_string(&sample_rows());
    for line in text.lines().skip(1) {
        for cell in line.split(',') {
            if cell.parse::<f64>().is_err() {
                continue;
            }
            if let Some((mantissa, _)) = cell.split_once('e') {
                let digits = mantissa.chars().filter(char::is_ascii_digit).count();
                assert_eq!(digits, 10, "{cell}");
            }
        }
    }
}

#[test]
fn round_trip_is_stable() {
    let rows = sample_rows();
    let text = to_csv_string(&rows);
    let back = read_csv(text.as_bytes()).unwrap();
    assert_eq!(back.len(), rows.len());
    for (a, b) in rows.iter().zip(&back) {
        assert_eq!(a.architecture, b.architecture);
        assert_eq!(a.beta, b.beta);
        assert_eq!(a.m_required, b.m_required);
        assert_eq!(a.branch, b.branch);
        let close = |x: Option<f64>, y: Option<f64>| match (x, y) {
            (None, None) => true,
            (Some(x), Some(y)) => (x - y).abs() <= 5e-10 * x.abs(),
            _ => false,
        };
        assert!(close(Some(a.axis), Some(b.axis)));
        assert!(close(a.rate_bps_hz, b.rate_bps_hz));
        assert!(close(a.m_real, b.m_real));
    }
    assert_eq!(to_csv_string(&back), text);
}

#[test]
fn figure_datasets_round_trip_exactly() {
    for fig in [presets::figure4(), presets::figure5(), presets::figure6()] {
        let rows = match fig.kind {
            presets::FigureKind::Rates => run_rate_sweep(&fig.config).unwrap(),
            presets::FigureKind::Sizing => run_sizing_sweep(&fig.config).unwrap(),
        };
        let text = to_csv_string(&rows);
        let back = read_csv(text.as_bytes()).unwrap();
        assert_eq!(to_csv_string(&back), text);
        assert_eq!(read_csv(to_csv_string(&back).as_bytes()).unwrap(), back);
    }
}

#[test]
fn file_output_creates_directories() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/out/rows.csv");
    emit_csv(&sample_rows(), &path).unwrap();
    assert_eq!(read_csv_file(&path).unwrap().len(), 3);
}

#[test]
fn malformed_input_is_rejected() {
    assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    let bad_arch = format!("{}\n1e2,mimo,,1,,,exact\n", HEADER.join(","));
    assert!(read_csv(bad_arch.as_bytes()).unwrap_err().to_string().contains("mimo"));
    let bad_num = format!("{}\n1e2,irs,,fast,,,exact\n", HEADER.join(","));
    assert!(read_csv(bad_num.as_bytes()).unwrap_err().to_string().contains("rate_bps_hz"));
}
