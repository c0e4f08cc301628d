use nshadow::repro::{self, ReproOptions, SCENARIOS};

#[test]
fn every_scenario_passes_and_is_deterministic() {
    for &name in SCENARIOS {
        let opts = ReproOptions { seed: 3, trials: 10 };
        let a = repro::run(name, opts).unwrap();
        assert!(a.passed, "{}", a.to_table());
        let b = repro::run(name, opts).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{name}");
        assert!(a.to_table().starts_with(&format!("scenario {name} (seed 3): PASS")));
    }
}

#[test]
fn seeds_change_random_scenarios() {
    let a = repro::run("mixing-pair", ReproOptions { seed: 1, trials: 5 }).unwrap();
    let b = repro::run("mixing-pair", ReproOptions { seed: 2, trials: 5 }).unwrap();
    assert_ne!(a.to_json(), b.to_json());
}

#[test]
fn unknown_scenario() {
    assert!(matches!(
        repro::run("nope", ReproOptions::default()),
        Err(nshadow::Error::UnknownScenario(_))
    ));
}
