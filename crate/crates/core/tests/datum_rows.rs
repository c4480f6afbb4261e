use springer_core::coxeter::{Component, Family};
use springer_core::data::{enumerate_families, export_json, row, sweep, DatumFamily, Tag, SCHEMA_VERSION};
use springer_core::report::{analyze, Options, Report, REPORT_SCHEMA};
use springer_core::Error;

#[test]
fn every_swept_family_instantiates() {
    for f in sweep(8) {
        let r = row(&f).unwrap_or_else(|e| panic!("{f}: {e}"));
        assert_eq!(r.l_type.rank(), r.finite.i_nodes.len(), "{f}");
        let nodes: usize = r.dual.w_type.components.iter().map(|c| c.node_count().unwrap()).sum();
        assert_eq!(r.dual.ell.len(), nodes, "{f}");
        assert_eq!(r.finite.ell0.len(), r.finite.w_type.rank());
    }
}

#[test]
fn out_of_range_parameters_are_rejected() {
    assert!(matches!(row(&DatumFamily::new(Tag::B, 0, 0, 0)), Err(Error::ParamsOutOfRange { family: 'b', .. })));
    assert!(enumerate_families(Component::finite(Family::E, 9)).is_err());
}

#[test]
fn json_export_is_stable() {
    let rows: Vec<_> = sweep(4).iter().map(|f| row(f).unwrap()).collect();
    let a = export_json(&rows);
    let b = export_json(&rows);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], SCHEMA_VERSION);
    assert_eq!(v["rows"].as_array().unwrap().len(), rows.len());
}

#[test]
fn report_round_trips_through_json() {
    let r = row(&DatumFamily::new(Tag::J, 0, 0, 0)).unwrap();
    let rep = Report::from(&analyze(&r, &Options::default()));
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    assert_eq!(v["schema"], REPORT_SCHEMA);
    assert_eq!(v["g_type"]["value"], "E6");
    assert_eq!(v["finite"]["relative_type"]["value"], "G2");
    assert!(rep.to_text().contains("G2"));
}
