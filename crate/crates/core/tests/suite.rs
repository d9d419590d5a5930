use relsim_core::suite::{any_failed, json_report, run_suite, text_report, theorem_ids, Status};
use relsim_core::SuiteConfig;

#[test]
fn default_suite_passes() {
    let reports = run_suite(&SuiteConfig { seed: 42, ..Default::default() }).unwrap();
    print!("{}", text_report(&reports));
    assert_eq!(reports.len(), theorem_ids().len());
    assert!(!any_failed(&reports));
}

#[test]
fn reports_are_deterministic_for_a_seed() {
    let cfg = SuiteConfig { selection: vec!["causality".into(), "join-meet".into()], seed: 7, ..Default::default() };
    let a = json_report(&run_suite(&cfg).unwrap(), false);
    let b = json_report(&run_suite(&cfg).unwrap(), false);
    assert_eq!(a, b);
}

#[test]
fn witness_statuses() {
    let cfg = SuiteConfig { selection: vec!["poincare-nogo".into(), "conformal-uniqueness".into()], ..Default::default() };
    for r in run_suite(&cfg).unwrap() {
        match r.theorem_id.as_str() {
            "conformal-uniqueness:full" => assert!(matches!(r.status, Status::Skipped(_))),
            _ => assert!(matches!(r.status, Status::Witness(_)), "{}: {:?}", r.theorem_id, r.status),
        }
    }
}
