use super::*;

fn small(trials: usize) -> Params {
    Params { p: 3, max_dim: 2, max_len: 2, max_set: 2, trials }
}

#[test]
fn registry_matches_coverage_map() {
    let a = audit();
    assert!(a.is_clean(), "{a:?}");
}

#[test]
fn eq1_passes() {
    let r = run_diagram("EQ1", 7, &small(5)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.trials_run, 5);
    assert!(r.failure.is_none());
}

#[test]
fn unknown_id_is_an_error() {
    assert!(matches!(run_diagram("D99", 0, &small(1)), Err(Error::UnknownDiagram(_))));
}

#[test]
fn zero_trials_is_a_flagged_vacuous_pass() {
    let r = run_diagram("D26", 0, &small(0)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.trials_run, 0);
    assert_eq!(r.note.as_deref(), Some("no trials"));
}

#[test]
fn constant_tp_signs_break_the_anticommuting_row() {
    let c = Corruption { flips: vec![], constants: vec![(Symbol::Tp1, 1), (Symbol::Tp2, 1)] };
    let r = run_diagram_with("Table2.row14", 0, &small(1), &c).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let f = r.failure.unwrap();
    assert!(matches!(f.counterexample, Counterexample::Indices(ref x) if x.len() == 2));
}

#[test]
fn reports_are_deterministic_and_replayable() {
    let c = Corruption::flip(Symbol::Th2);
    let one = run_diagram_with("D4", 3, &small(4), &c).unwrap();
    let two = run_diagram_with("D4", 3, &small(4), &c).unwrap();
    assert_eq!(one.verdict, Verdict::Fail);
    assert_eq!(one.failure, two.failure);
    let json = serde_json::to_string(&one).unwrap();
    let back: CheckReport = serde_json::from_str(&json).unwrap();
    let r = replay(&back).unwrap();
    assert!(r.reproduced);
    assert_eq!(r.verdict, Verdict::Fail);
}

#[test]
fn replaying_under_standard_signs_passes() {
    let c = Corruption::flip(Symbol::Th2);
    let mut rep = run_diagram_with("D5", 1, &small(3), &c).unwrap();
    assert_eq!(rep.verdict, Verdict::Fail);
    rep.corruption = Corruption::none();
    let r = replay(&rep).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(!r.reproduced);
}

#[test]
fn seeds_separate_ids_and_trials() {
    assert_ne!(trial_seed(1, "D4", 0), trial_seed(1, "D5", 0));
    assert_ne!(trial_seed(1, "D4", 0), trial_seed(1, "D4", 1));
    assert_eq!(trial_seed(9, "EQ1", 3), trial_seed(9, "EQ1", 3));
}

#[test]
fn bad_params_are_rejected() {
    assert!(run_diagram("EQ1", 0, &Params { p: 4, ..small(1) }).is_err());
    assert!(run_diagram("EQ1", 0, &Params { max_dim: 0, ..small(1) }).is_err());
}

#[test]
fn every_family_runs_on_small_instances() {
    let specs: Vec<DiagramSpec> = registry().into_iter().filter(|s| s.id != "pentagon").collect();
    let s = run_selected(&specs, 5, &Params { p: 3, max_dim: 1, max_len: 2, max_set: 2, trials: 2 }, &Corruption::none()).unwrap();
    assert!(s.all_pass(), "failing: {:?}", s.failing());
}
