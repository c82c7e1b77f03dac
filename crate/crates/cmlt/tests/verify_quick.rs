use cmlt::verify::{run_suite, Scale, Suite};

fn assert_suite(suite: Suite) {
    let results = run_suite(suite, Scale::quick());
    for r in &results {
        println!("{} / {}: {} cases, {:?}", r.suite, r.property, r.cases, r.failure);
    }
    for r in &results {
        assert!(r.passed, "{}: {:?}", r.property, r.failure);
        assert!(r.cases > 0, "{} checked nothing", r.property);
    }
}

#[test]
fn symbols() {
    assert_suite(Suite::Symbols);
}

#[test]
fn gauss_sums() {
    assert_suite(Suite::GaussSums);
}

#[test]
fn frobenius() {
    assert_suite(Suite::Frobenius);
}

#[test]
fn residue_counts() {
    assert_suite(Suite::ResidueCounts);
}

#[test]
fn classifiers() {
    assert_suite(Suite::Classifiers);
}
