//! The lemma suite, one test per lemma.

#[path = "support/lemmas.rs"]
mod lemmas;

#[test]
fn cumulativity() {
    lemmas::cumulativity().unwrap();
}

#[test]
fn merge_of_well_formed_contexts() {
    lemmas::merge_of_well_formed_contexts().unwrap();
}

#[test]
fn well_formed_extension() {
    lemmas::well_formed_extension().unwrap();
}

#[test]
fn chopping_preserves_well_formedness() {
    lemmas::chopping_preserves_well_formedness().unwrap();
}

#[test]
fn weakening() {
    lemmas::weakening().unwrap();
}

#[test]
fn identity_substitution() {
    lemmas::identity_substitution().unwrap();
}

#[test]
fn level_k_well_formedness_depends_only_on_the_chop() {
    lemmas::level_k_well_formedness_depends_only_on_the_chop().unwrap();
}

#[test]
fn reductions_stay_below_the_bound() {
    lemmas::reductions_stay_below_the_bound().unwrap();
}

#[test]
fn composition_pushes_through_closure() {
    lemmas::composition_pushes_through_closure().unwrap();
}

#[test]
fn composition_merges_substitutions() {
    lemmas::composition_merges_substitutions().unwrap();
}

#[test]
fn composition_with_single_substitution() {
    lemmas::composition_with_single_substitution().unwrap();
}

#[test]
fn substitutions_at_separate_levels_commute() {
    lemmas::substitutions_at_separate_levels_commute().unwrap();
}

#[test]
fn identity_extension_by_one_declaration() {
    lemmas::identity_extension_by_one_declaration().unwrap();
}

#[test]
fn identity_extension_by_a_context() {
    lemmas::identity_extension_by_a_context().unwrap();
}

#[test]
fn single_substitution_preserves_typing() {
    lemmas::single_substitution_preserves_typing().unwrap();
}

#[test]
fn simultaneous_substitution_preserves_typing() {
    lemmas::simultaneous_substitution_preserves_typing().unwrap();
}

#[test]
fn synthesized_types_are_well_formed() {
    lemmas::synthesized_types_are_well_formed().unwrap();
}

/// Raising the bound chops more of the ambient context, so a context that
/// mentions an ambient variable at level n is well-formed at n and not above.
#[test]
fn cumulativity_needs_a_stable_chop() {
    use mlf_core::parse::{parse, parse_context};
    use mlf_core::typer::{check_signature, Checker};
    use mlf_core::Level;
    let src = "i : type. p : {x : i} type.";
    let sig = check_signature(&parse(src).unwrap().signature().unwrap()).unwrap();
    let ch = Checker::new(&sig);
    let psi = parse_context("G^1 : i").unwrap();
    let both = parse_context("G^1 : i, x : p G^1[]").unwrap();
    let phi = mlf_core::Context::new(both.decls()[1..].to_vec()).unwrap();
    assert!(ch.check_ctx(&psi, &phi, Level(1)).is_ok());
    assert!(ch.check_ctx(&psi, &phi, Level(2)).is_err());
}
