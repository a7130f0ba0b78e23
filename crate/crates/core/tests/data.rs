use dlinear_core::data::*;
use dlinear_core::Matrix;
use proptest::prelude::*;

fn series(rows: usize, cols: usize, seed: u64) -> TimeSeries {
    let data = (0..rows * cols)
        .map(|i| ((i as u64 * 2654435761 + seed * 97) % 1000) as f64 / 37.0 - 13.0)
        .collect();
    TimeSeries::from_values(Matrix::from_vec(rows, cols, data).unwrap()).unwrap()
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (2usize..40, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-1e3f64..1e3, r * c).prop_map(move |v| Matrix::from_vec(r, c, v).unwrap())
    })
}

#[test]
fn etth1_shaped_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ETTh1.csv");
    let mut text = String::from("date,HUFL,HULL,MUFL,MULL,LUFL,LULL,OT\n");
    for i in 0..17_420 {
        let (day, hour) = (i / 24, i % 24);
        text.push_str(&format!("{day:05} {hour:02}:00:00"));
        for j in 0..7 {
            text.push_str(&format!(",{}", (i * 7 + j) % 13));
        }
        text.push('\n');
    }
    std::fs::write(&path, text).unwrap();
    let s = load_csv(&path, &CsvSchema::default()).unwrap();
    assert_eq!((s.len(), s.channels()), (17_420, 7));
    assert_eq!(s.variate_names().last().unwrap(), "OT");
    assert_eq!(s.time_column(), Some("date"));
}

#[test]
fn exchange_shaped_file() {
    let mut text = String::from("date,0,1,2,3,4,5,6,OT\n");
    for i in 0..7_588 {
        text.push_str(&format!("{i}"));
        for j in 0..8 {
            text.push_str(&format!(",{}.5", (i + j) % 9));
        }
        text.push('\n');
    }
    let s = parse_csv(text.as_bytes(), &CsvSchema::default()).unwrap();
    assert_eq!((s.len(), s.channels()), (7_588, 8));
}

#[test]
fn csv_write_then_parse_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let s = series(25, 3, 1);
    s.write_csv(&path).unwrap();
    let back = load_csv(&path, &CsvSchema::default()).unwrap();
    assert_eq!(back, s);

    let bare = s.clone().with_time_column(None);
    let mut buf = Vec::new();
    bare.write_csv_to(&mut buf).unwrap();
    assert!(String::from_utf8(buf.clone()).unwrap().starts_with("x0,x1,x2\n"));
    let back = parse_csv(buf.as_slice(), &CsvSchema::default()).unwrap();
    assert_eq!(back.values(), s.values());
    assert_eq!(back.time_column(), None);
}

#[test]
fn ett_minute_calendar() {
    let b = split_boundaries(69_680, &SplitSpec::ett_minute()).unwrap();
    assert_eq!((b.train_end, b.val_end, b.test_end), (34_560, 46_080, 57_600));
    assert_eq!(b.unused_tail(), 69_680 - 57_600);
}

#[test]
fn val_and_test_windows_read_preceding_rows() {
    let s = series(100, 2, 3);
    let sp = split(&s, &SplitSpec::ratio(0.7, 0.1, 0.2)).unwrap();
    let test = sp.windows(&s, Segment::Test, 12, 4).unwrap();
    // every target row of the 20-row test segment is reachable
    assert_eq!(test.len(), 20 - 4 + 1);
    let first = test.pair(0);
    assert_eq!(first.input.row(11), s.values().row(79));
    assert_eq!(first.target.row(0), s.values().row(80));
}

proptest! {
    #[test]
    fn scaler_round_trip(m in matrix_strategy()) {
        let s = TimeSeries::from_values(m).unwrap();
        let scaler = fit_scaler(&s).unwrap();
        let back = apply_scaler(&apply_scaler(&s, &scaler, Direction::Forward).unwrap(), &scaler, Direction::Inverse).unwrap();
        for c in 0..s.channels() {
            if scaler.stds[c] <= SCALER_EPSILON {
                continue;
            }
            for r in 0..s.len() {
                let (x, y) = (s.values().get(r, c), back.values().get(r, c));
                prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(scaler.stds[c]));
            }
        }
    }

    #[test]
    fn windows_are_adjacent_rows(m in matrix_strategy(), l in 1usize..8, t in 1usize..8) {
        let s = TimeSeries::from_values(m).unwrap();
        prop_assume!(s.len() >= l + t);
        let w = make_windows(&s, None, l, t).unwrap();
        prop_assert_eq!(w.len(), s.len() - l - t + 1);
        for pair in w.iter() {
            let o = pair.origin_index;
            prop_assert_eq!(pair.input.row(l - 1), s.values().row(o - 1));
            prop_assert_eq!(pair.target.row(0), s.values().row(o));
        }
    }

    #[test]
    fn split_is_lossless(n in 10usize..5000, train in 0.05f64..0.9, val_share in 0.05f64..0.95) {
        let val = (1.0 - train) * val_share;
        let test = 1.0 - train - val;
        let b = match split_boundaries(n, &SplitSpec::ratio(train, val, test)) {
            Ok(b) => b,
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(b.train_start, 0);
        prop_assert_eq!(b.test_end + b.unused_tail(), n);
        prop_assert!(b.train_end <= b.val_end && b.val_end <= b.test_end);
    }

    #[test]
    fn calendar_split_is_lossless(a in 1usize..500, v in 1usize..500, t in 1usize..500, extra in 0usize..300, k in 1usize..500) {
        let n = a + v + t + extra;
        let spec = SplitSpec::calendar(a, v, t).with_truncation(Some(k.min(a)));
        let b = split_boundaries(n, &spec).unwrap();
        prop_assert_eq!((b.train_end, b.val_end, b.test_end), (a, a + v, a + v + t));
        prop_assert_eq!(b.test_end + b.unused_tail(), n);
        prop_assert_eq!(b.train_end - b.train_start, k.min(a));
    }

    #[test]
    fn scaler_ignores_later_segments(m in matrix_strategy(), extra in matrix_strategy()) {
        prop_assume!(m.cols() == extra.cols());
        let train = TimeSeries::from_values(m.clone()).unwrap();
        let whole = TimeSeries::from_values(m.vstack(&extra).unwrap()).unwrap();
        let n = train.len();
        let spec = SplitSpec::calendar(n, extra.rows().div_ceil(2), extra.rows() / 2);
        prop_assume!(extra.rows() >= 2);
        let sp = split(&whole, &spec).unwrap();
        prop_assert_eq!(fit_scaler(&sp.train).unwrap(), fit_scaler(&train).unwrap());
    }
}
