use std::collections::HashMap;
use std::f64::consts::PI;

use chtube::groups::regular_polygon_inradius;
use chtube::lines::s_function;
use chtube::measure::{half_projection_disc_area, tube_volume, wedge_volume, WedgeParams};
use chtube::tubes::{
    collar_width_area, collar_width_chi, eigenvalue_bound_explicit, tube_function_bounds, two_surface_width,
    volume_lower_bound,
};

fn golden() -> HashMap<String, f64> {
    let raw: HashMap<String, String> = serde_json::from_str(include_str!("../golden/golden.json")).unwrap();
    raw.into_iter().map(|(k, v)| (k, v.parse().unwrap())).collect()
}

fn agree_12(name: &str, got: f64, want: f64) {
    let rel = ((got - want) / want).abs();
    assert!(rel < 5e-12, "{name}: {got:.17e} vs {want:.17e} (rel {rel:.2e})");
}

#[test]
fn closed_forms_match_offline_values() {
    let g = golden();
    let cases: Vec<(&str, f64)> = vec![
        ("s_of_1", s_function(1.0).unwrap()),
        ("collar_width_area_2", collar_width_area(2.0).unwrap()),
        ("collar_width_chi_m2", collar_width_chi(-2).unwrap()),
        ("two_surface_width_2_2", two_surface_width(2.0, 2.0).unwrap()),
        ("tube_volume_1_1", tube_volume(1.0, 1.0).unwrap()),
        ("volume_lower_bound_1_m2", volume_lower_bound(1, -2).unwrap()),
        ("eigenvalue_bound_explicit_100_m2", eigenvalue_bound_explicit(100.0, -2).unwrap()),
        ("tube_bounds_m2_lower", tube_function_bounds(-2).unwrap().lower),
        ("tube_bounds_m2_upper", tube_function_bounds(-2).unwrap().upper),
        ("genus2_inradius", regular_polygon_inradius(2).unwrap()),
        ("wedge_volume_1_1_pi", wedge_volume(&WedgeParams::new(1.0, 1.0, PI).unwrap())),
        ("half_projection_disc_area_1", half_projection_disc_area(1.0).unwrap()),
    ];
    assert_eq!(cases.len(), g.len());
    for (name, got) in cases {
        agree_12(name, got, g[name]);
    }
}

#[test]
fn volume_bound_first_digits() {
    let v = volume_lower_bound(1, -2).unwrap();
    assert!((v - 1.35e-2).abs() < 5e-4, "{v}");
}
