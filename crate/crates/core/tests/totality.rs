#[path = "support/fuzz.rs"]
mod fuzz;

#[test]
fn checker_is_total_on_arbitrary_syntax() {
    let accepted = fuzz::checker_is_total(fuzz::CASES).unwrap();
    assert!(accepted < fuzz::CASES as usize);
}

#[test]
fn substitution_is_total_on_arbitrary_syntax() {
    fuzz::substitution_is_total(fuzz::CASES).unwrap();
}

#[test]
fn checker_is_total_on_mismatched_instances() {
    fuzz::mismatches_are_total(2_000).unwrap();
}
