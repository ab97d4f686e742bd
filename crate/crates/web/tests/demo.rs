use kerov_web::{profile_data, ratio_data, transition_data};

#[test]
fn profile_tabulates_sample_and_limit_shape() {
    let p = profile_data(400, 7, 101).unwrap();
    assert_eq!(p.rows.iter().sum::<u32>(), 400);
    assert_eq!(p.x.len(), 101);
    assert_eq!(p.x[50], 0.0);
    assert!((p.omega[50] - 4.0 / std::f64::consts::PI).abs() < 1e-12);
    assert!(p.sup_distance < 0.5);
    assert_eq!(profile_data(400, 7, 101).unwrap().rows, p.rows);
    assert!(profile_data(0, 1, 10).is_err());
}

#[test]
fn ratios_are_exact() {
    let r = ratio_data("2,1", "2").unwrap();
    assert_eq!(r.ratio, "0");
    let r = ratio_data("3", "3").unwrap();
    assert_eq!(r.ratio, "1");
    let r = ratio_data("2,1,1", "2").unwrap();
    assert_eq!(r.ratio, "-1/3");
    assert!(ratio_data("2,1", "4").is_err());
    assert!(ratio_data("1,2", "1").is_err());
}

#[test]
fn transition_atoms_form_a_centered_probability() {
    let atoms = transition_data("3,1").unwrap();
    assert_eq!(atoms.iter().map(|a| a.x).collect::<Vec<_>>(), vec![-2, 0, 3]);
    let total: f64 = atoms.iter().map(|a| a.value).sum();
    let mean: f64 = atoms.iter().map(|a| a.x as f64 * a.value).sum();
    assert!((total - 1.0).abs() < 1e-12 && mean.abs() < 1e-12);
    assert_eq!(atoms.iter().map(|a| a.mass.as_str()).collect::<Vec<_>>(), ["2/5", "1/3", "4/15"]);
}
