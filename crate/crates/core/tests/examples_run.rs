//! Runs every example's entry point on small inputs.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }
    };
}

example!(field_arithmetic);
example!(conic_geometry);
example!(greedy_search);
example!(randomized_search);
example!(exact_minimum);
example!(bound_curves);
example!(nrc_completeness);
example!(p0_thresholds);
example!(verify_tables);

#[test]
fn field_arithmetic_runs() {
    field_arithmetic::run(8).unwrap();
    field_arithmetic::run(13).unwrap();
}

#[test]
fn conic_geometry_runs() {
    conic_geometry::run(8).unwrap();
    conic_geometry::run(9).unwrap();
}

#[test]
fn greedy_search_runs() {
    greedy_search::run(23).unwrap();
}

#[test]
fn randomized_search_runs() {
    randomized_search::run(25, 20).unwrap();
}

#[test]
fn exact_minimum_runs() {
    exact_minimum::run(&[5, 7, 8, 9]).unwrap();
}

#[test]
fn bound_curves_runs() {
    bound_curves::run(&[11, 101, 55711]).unwrap();
}

#[test]
fn nrc_completeness_runs() {
    nrc_completeness::run().unwrap();
}

#[test]
fn p0_thresholds_runs() {
    p0_thresholds::run(6).unwrap();
}

#[test]
fn verify_tables_runs() {
    assert!(verify_tables::run(None).unwrap());
}
