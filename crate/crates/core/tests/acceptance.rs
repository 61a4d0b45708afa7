use tamesym::selftest::{run_criterion, Fault, Options, CRITERIA};

#[test]
fn acceptance_criteria() {
    let opts = Options::default();
    let results: Vec<_> = CRITERIA.iter().map(|(id, _)| run_criterion(*id, opts)).collect();
    for r in &results {
        println!("{}", r.line());
        for f in &r.failures {
            println!("    failure: {f}");
        }
        for n in &r.notes {
            println!("    note: {n}");
        }
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn injected_fault_fails_the_named_criterion() {
    let r = run_criterion(1, Options { quick: true, fault: Some(Fault::WrongCartan) });
    assert!(!r.passed);
    assert!(r.line().contains("criterion 1"));
    assert!(r.failures.iter().any(|f| f.contains("Cartan")));
}
