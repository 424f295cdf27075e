use normgrid::format::{get_f64, points_from_json, points_json, to_json_string};
use normgrid_core::spaces::{Frame, PointSet};
use proptest::prelude::*;
use serde_json::{json, Value};

proptest! {
    #[test]
    fn any_float_survives_json(bits in any::<u64>()) {
        let v = f64::from_bits(bits);
        let text = to_json_string(&json!({ "x": normgrid::format::num(v) }));
        let back: Value = serde_json::from_str(&text).unwrap();
        let got = get_f64(&back["x"]).unwrap();
        if v.is_nan() {
            prop_assert!(got.is_nan());
        } else {
            prop_assert_eq!(got.to_bits(), v.to_bits());
        }
    }

    #[test]
    fn points_round_trip(
        rows in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 0..20),
        weighted in any::<bool>(),
    ) {
        let p = PointSet::new(3, Frame::Cube, &rows).unwrap();
        let w: Vec<f64> = (0..rows.len()).map(|i| 1.0 / (i + 1) as f64).collect();
        let v = points_json(&p, weighted.then_some(&w[..]), &[], None);
        let text = to_json_string(&v);
        let back = points_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.points.as_flat(), p.as_flat());
        prop_assert_eq!(back.points.frame(), Frame::Cube);
        prop_assert_eq!(back.weights.is_some(), weighted);
        prop_assert_eq!(to_json_string(&points_json(&back.points, back.weights.as_deref(), &[], None)), text);
    }
}
