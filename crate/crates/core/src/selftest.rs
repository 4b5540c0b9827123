//! Named checks of the defining equations, one or more per clause, plus
//! drivers for the randomized oracle comparison. Shared by the CLI's
//! `selftest` command and the test suites.

use crate::approx::{
    approx_leq, approx_lt, approx_lt_ctx_type, erase_ctx, erase_ctx_type, erase_type, ApproxEntry,
    CtxApprox, CtxTypeApprox, TypeApprox,
};
use crate::contexts::{chop_ctx, chop_subst, id_subst, merge_ctx, merge_subst};
use crate::hsub::{
    hsub_ctx, hsub_neutral, hsub_normal, hsub_subst, hsub_type, simsub_ctx, simsub_neutral,
    simsub_normal, simsub_subst, simsub_type, HsubNeutralResult, SingleSubst, SubstError,
};
use crate::oracle::{self, embed, embed_body, embed_subst, raw_alpha_eq, Generator};
use crate::parse::{parse_context, parse_subst, parse_term, parse_type};
use crate::syntax::{
    alpha_equal, AtomicTerm, BoundBody, Context, CtxType, HatContext, Level, NormalTerm, Subst,
    SubstEntry, Type, Var,
};

pub type Outcome = Result<(), String>;

pub struct Case {
    pub name: &'static str,
    pub run: fn() -> Outcome,
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ctx(s: &str) -> Context {
    if s.trim().is_empty() {
        return Context::empty();
    }
    parse_context(s).expect("fixture context parses")
}

fn term(s: &str, scope: &str) -> NormalTerm {
    parse_term(s, &ctx(scope)).expect("fixture term parses")
}

/// `s` parsed where the declarations of `outer` are in scope.
fn ctx_under(outer: &str, s: &str) -> Context {
    let all = ctx(&format!("{outer}, {s}"));
    let skip = ctx(outer).len();
    Context::new(all.decls()[skip..].to_vec()).expect("fixture names are distinct")
}

fn atomic(s: &str, scope: &str) -> AtomicTerm {
    match term(s, scope) {
        NormalTerm::Atomic(r) => r,
        NormalTerm::Lam(..) => panic!("fixture {s} is not atomic"),
    }
}

fn ty(s: &str, scope: &str) -> Type {
    parse_type(s, &ctx(scope)).expect("fixture type parses")
}

fn subst(s: &str, scope: &str) -> Subst {
    parse_subst(s, &ctx(scope)).expect("fixture substitution parses")
}

fn bound(a: &str, local: &str) -> CtxTypeApprox {
    let c = ctx(local);
    erase_ctx_type(&CtxType::new(
        parse_type(a, &c).expect("fixture type parses"),
        c,
    ))
    .expect("fixture type erases")
}

fn dom(s: &str) -> CtxApprox {
    erase_ctx(&ctx(s)).expect("fixture context erases")
}

/// `[hat. body / target]_{a[local]}`.
fn single(hat: &[&str], body: &str, target: Var, a: &str, local: &str) -> SingleSubst {
    let hat: Vec<Var> = hat.iter().map(|v| parse_var(v)).collect();
    let b = BoundBody::new(hat, term(body, local));
    SingleSubst::new(b, target, bound(a, local)).expect("fixture substitution is valid")
}

fn parse_var(s: &str) -> Var {
    match s.split_once('^') {
        Some((n, l)) => Var::new(n, l.parse().expect("numeric level")),
        None => Var::new(s, 0),
    }
}

fn v(s: &str) -> Var {
    parse_var(s)
}

fn same(got: &NormalTerm, want: &NormalTerm) -> Outcome {
    ensure!(alpha_equal(got, want), "got {got}, expected {want}");
    Ok(())
}

fn same_subst(got: &Subst, want: &Subst) -> Outcome {
    ensure!(alpha_equal(got, want), "got {got}, expected {want}");
    Ok(())
}

fn same_type(got: &Type, want: &Type) -> Outcome {
    ensure!(alpha_equal(got, want), "got {got}, expected {want}");
    Ok(())
}

fn same_ctx(got: &Context, want: &Context) -> Outcome {
    ensure!(alpha_equal(got, want), "got {got}, expected {want}");
    Ok(())
}

/// Hereditary substitution agrees with the naive pipeline.
fn oracle_single(s: &SingleSubst, m: &NormalTerm, got: &NormalTerm) -> Outcome {
    let naive = oracle::naive_subst_normalize(&embed(m), &s.target, &embed_body(&s.replacement))
        .map_err(|e| e.to_string())?;
    ensure!(
        raw_alpha_eq(&embed(got), &naive),
        "oracle disagrees: {naive:?}"
    );
    Ok(())
}

fn oracle_sim(sigma: &Subst, domain: &Context, m: &NormalTerm, got: &NormalTerm) -> Outcome {
    let map: Vec<_> = domain.vars().cloned().zip(embed_subst(sigma)).collect();
    let naive = oracle::naive_simsub_normalize(&embed(m), &map).map_err(|e| e.to_string())?;
    ensure!(
        raw_alpha_eq(&embed(got), &naive),
        "oracle disagrees: {naive:?}"
    );
    Ok(())
}

fn err(e: SubstError) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// Context merging and chopping

fn merge_ctx_empty_left() -> Outcome {
    let phi = ctx("x^2 : a, y : b");
    same_ctx(
        &merge_ctx(&Context::empty(), &phi).map_err(|e| e.to_string())?,
        &phi,
    )
}

fn merge_ctx_empty_right() -> Outcome {
    let psi = ctx("x^2 : a, y : b");
    same_ctx(
        &merge_ctx(&psi, &Context::empty()).map_err(|e| e.to_string())?,
        &psi,
    )
}

fn merge_ctx_lower_goes_last() -> Outcome {
    let got = merge_ctx(&ctx("x^2 : a"), &ctx("y : b")).map_err(|e| e.to_string())?;
    same_ctx(&got, &ctx("x^2 : a, y : b"))
}

fn merge_ctx_higher_moves_left() -> Outcome {
    let got = merge_ctx(&ctx("y : b"), &ctx("x^2 : a")).map_err(|e| e.to_string())?;
    same_ctx(&got, &ctx("x^2 : a, y : b"))
}

fn chop_ctx_empty() -> Outcome {
    same_ctx(&chop_ctx(&Context::empty(), Level(3)), &Context::empty())
}

fn chop_ctx_drops_lower() -> Outcome {
    same_ctx(&chop_ctx(&ctx("x^2 : a, y : b"), Level(1)), &ctx("x^2 : a"))
}

fn chop_ctx_keeps_higher() -> Outcome {
    let psi = ctx("x^2 : a, y^1 : b");
    same_ctx(&chop_ctx(&psi, Level(1)), &psi)
}

fn chop_ctx_below_bound_is_empty() -> Outcome {
    same_ctx(&chop_ctx(&ctx("x : a, y : b"), Level(1)), &Context::empty())
}

// ---------------------------------------------------------------------------
// Substitution merging and chopping, identity

fn merge_subst_empty_left() -> Outcome {
    let phi = ctx("y : b");
    let tau = subst("z", "z : b");
    let (got, d) =
        merge_subst(&Subst::empty(), &Context::empty(), &tau, &phi).map_err(|e| e.to_string())?;
    same_subst(&got, &tau)?;
    same_ctx(&d, &phi)
}

fn merge_subst_empty_right() -> Outcome {
    let psi = ctx("y : b");
    let sigma = subst("z", "z : b");
    let (got, _) =
        merge_subst(&sigma, &psi, &Subst::empty(), &Context::empty()).map_err(|e| e.to_string())?;
    same_subst(&got, &sigma)
}

fn merge_subst_lower_goes_last() -> Outcome {
    let sigma = subst("c", "");
    let tau = subst("z", "z : b");
    let (got, d) =
        merge_subst(&sigma, &ctx("x^2 : a"), &tau, &ctx("y : b")).map_err(|e| e.to_string())?;
    same_subst(&got, &subst("c, z", "z : b"))?;
    same_ctx(&d, &ctx("x^2 : a, y : b"))
}

fn merge_subst_higher_moves_left() -> Outcome {
    let sigma = subst("z", "z : b");
    let tau = subst("c", "");
    let (got, _) =
        merge_subst(&sigma, &ctx("y : b"), &tau, &ctx("x^2 : a")).map_err(|e| e.to_string())?;
    same_subst(&got, &subst("c, z", "z : b"))
}

fn chop_subst_empty() -> Outcome {
    let (got, d) =
        chop_subst(&Subst::empty(), &Context::empty(), Level(2)).map_err(|e| e.to_string())?;
    ensure!(got.is_empty() && d.is_empty(), "expected empty, got {got}");
    Ok(())
}

fn chop_subst_drops_lower() -> Outcome {
    let sigma = subst("c, z", "z : b");
    let (got, d) =
        chop_subst(&sigma, &ctx("x^2 : a, y : b"), Level(1)).map_err(|e| e.to_string())?;
    same_subst(&got, &subst("c", ""))?;
    same_ctx(&d, &ctx("x^2 : a"))
}

fn chop_subst_keeps_higher() -> Outcome {
    let sigma = subst("c, z", "z : b");
    let (got, _) =
        chop_subst(&sigma, &ctx("x^2 : a, y : b"), Level(0)).map_err(|e| e.to_string())?;
    same_subst(&got, &sigma)
}

fn id_empty() -> Outcome {
    ensure!(
        id_subst(&HatContext::empty()).is_empty(),
        "id(·) is not empty"
    );
    Ok(())
}

fn id_unrolls() -> Outcome {
    let got = id_subst(&HatContext(vec![v("F^1"), v("y")]));
    let want = Subst(vec![
        SubstEntry::Rename(v("F^1")),
        SubstEntry::Rename(v("y")),
    ]);
    ensure!(got == want, "got {got}");
    Ok(())
}

// ---------------------------------------------------------------------------
// Erasure and the approximation order

fn erase_base() -> Outcome {
    let got = erase_type(&ty("a", "")).map_err(|e| e.to_string())?;
    ensure!(got == TypeApprox::base("a"), "got {got}");
    Ok(())
}

fn erase_drops_arguments() -> Outcome {
    let got = erase_type(&ty("vec n", "n : nat")).map_err(|e| e.to_string())?;
    ensure!(got == TypeApprox::base("vec"), "got {got}");
    Ok(())
}

fn erase_pi() -> Outcome {
    let got = erase_type(&ty("{x : nat} vec x", "")).map_err(|e| e.to_string())?;
    let want = TypeApprox::arrow(TypeApprox::base("nat").plain(), TypeApprox::base("vec"));
    ensure!(got == want, "got {got}");
    Ok(())
}

fn erase_ctx_empty() -> Outcome {
    ensure!(dom("").is_empty(), "erasure of · is not ·");
    Ok(())
}

fn erase_ctx_declarations() -> Outcome {
    let got = dom("F^1 : a [y : b], x : nat");
    let inner = CtxApprox(vec![ApproxEntry {
        var: v("y"),
        approx: Some(TypeApprox::base("b").plain()),
    }]);
    let want = CtxApprox(vec![
        ApproxEntry {
            var: v("F^1"),
            approx: Some(CtxTypeApprox {
                approx: TypeApprox::base("a"),
                ctx: inner,
            }),
        },
        ApproxEntry {
            var: v("x"),
            approx: Some(TypeApprox::base("nat").plain()),
        },
    ]);
    ensure!(got == want, "got {got}");
    Ok(())
}

fn approx_order() -> Outcome {
    let a = TypeApprox::base("a");
    let arrow = TypeApprox::arrow(a.clone().plain(), TypeApprox::base("b"));
    ensure!(approx_leq(&a, &a), "a ≤ a fails");
    ensure!(approx_lt(&a, &arrow), "a < a ⇒ b fails");
    ensure!(!approx_lt(&arrow, &a), "a ⇒ b < a holds");
    ensure!(
        !approx_lt_ctx_type(&arrow, &a.clone().plain()),
        "a ⇒ b < a[·] holds"
    );
    // occurrences inside a local context count
    ensure!(
        approx_lt_ctx_type(&TypeApprox::base("b"), &bound("a", "y : b")),
        "b < a[y:b] fails"
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Single substitution into normal and neutral terms

fn hsub_c_z() -> Outcome {
    let s = single(&[], "\\y. c y", v("x"), "{y : i} i", "");
    let m = term("x z", "x : {y : i} i, z : i");
    let got = hsub_normal(&s, &m).map_err(err)?;
    ensure!(got.to_string() == "c z", "got {got}");
    oracle_single(&s, &m, &got)
}

fn hsub_lam_below_target_level() -> Outcome {
    let s = single(&["y"], "c y", v("F^1"), "a", "y : b");
    let m = term("\\z. F^1[z]", "F^1 : a [y : b]");
    let got = hsub_normal(&s, &m).map_err(err)?;
    same(&got, &term("\\z. c z", ""))?;
    oracle_single(&s, &m, &got)
}

fn hsub_lam_at_target_level() -> Outcome {
    let s = single(&[], "c", v("x"), "a", "");
    let m = term("\\w. x", "x : a");
    let got = hsub_normal(&s, &m).map_err(err)?;
    same(&got, &term("\\w. c", ""))?;
    oracle_single(&s, &m, &got)
}

fn hsub_lam_avoids_capture() -> Outcome {
    let y = BoundBody::closed(term("y", "y : a"));
    let s = SingleSubst::new(y, v("x"), bound("a", "")).map_err(err)?;
    let m = term("\\y. x", "x : a");
    let got = hsub_normal(&s, &m).map_err(err)?;
    let NormalTerm::Lam(b, body) = &got else {
        return Err(format!("got {got}"));
    };
    ensure!(*b != v("y"), "binder captured the replacement: {got}");
    same(body, &term("y", "y : a"))?;
    oracle_single(&s, &m, &got)
}

fn hsub_constant() -> Outcome {
    let s = single(&[], "d", v("x"), "i", "");
    let got = hsub_neutral(&s, &atomic("c", "")).map_err(err)?;
    ensure!(
        matches!(&got, HsubNeutralResult::StillNeutral(AtomicTerm::Const(c)) if &**c == "c"),
        "got {got:?}"
    );
    Ok(())
}

fn hsub_variable_hit() -> Outcome {
    let s = single(&["y"], "c y", v("F^1"), "a", "y : b");
    let got = hsub_neutral(&s, &atomic("F^1[z]", "F^1 : a [y : b], z : b")).map_err(err)?;
    match got {
        HsubNeutralResult::Reduced(m, a) => {
            same(&m, &term("c z", "z : b"))?;
            ensure!(a == TypeApprox::base("a"), "approximation {a}");
            Ok(())
        }
        other => Err(format!("got {other:?}")),
    }
}

fn hsub_variable_empty_closure() -> Outcome {
    let s = single(&[], "c", v("x"), "a", "");
    match hsub_neutral(&s, &atomic("x", "x : a")).map_err(err)? {
        HsubNeutralResult::Reduced(m, a) if a == TypeApprox::base("a") => same(&m, &term("c", "")),
        other => Err(format!("got {other:?}")),
    }
}

fn hsub_variable_other() -> Outcome {
    let s = single(&["y"], "c y", v("F^1"), "a", "y : b");
    let got = hsub_neutral(&s, &atomic("G^1[z]", "G^1 : a [y : b], z : b")).map_err(err)?;
    match got {
        HsubNeutralResult::StillNeutral(r) => {
            same(&r.into(), &term("G^1[z]", "G^1 : a [y : b], z : b"))
        }
        other => Err(format!("got {other:?}")),
    }
}

fn hsub_application_argument_rewritten() -> Outcome {
    let s = single(&[], "zero", v("n"), "nat", "");
    let m = term("f n", "n : nat");
    let got = hsub_normal(&s, &m).map_err(err)?;
    same(&got, &term("f zero", ""))?;
    oracle_single(&s, &m, &got)
}

fn hsub_application_argument_out_of_reach() -> Outcome {
    // the argument's hat binds all level-0 variables, so x cannot occur there
    let s = single(&[], "c", v("x"), "i", "");
    let m = term("box (y. f y)", "");
    let got = hsub_normal(&s, &m).map_err(err)?;
    same(&got, &m)
}

fn hsub_beta_argument_rewritten() -> Outcome {
    let s = single(&[], "\\y. f y", v("x"), "{y : i} i", "");
    let m = term("x (x c)", "x : {y : i} i");
    let got = hsub_normal(&s, &m).map_err(err)?;
    same(&got, &term("f (f c)", ""))?;
    oracle_single(&s, &m, &got)
}

fn hsub_beta_higher_argument() -> Outcome {
    let s = single(
        &[],
        "\\X^1. box (y. X^1[y])",
        v("h"),
        "{X^1 : i [y : i]} i",
        "",
    );
    let m = term("h (y. f y)", "h : {X^1 : i [y : i]} i");
    let got = hsub_normal(&s, &m).map_err(err)?;
    same(&got, &term("box (y. f y)", ""))?;
    oracle_single(&s, &m, &got)
}

fn hsub_fails_on_non_function_head() -> Outcome {
    let s = single(&[], "c", v("x"), "{y : i} i", "");
    let m = term("x z", "x : {y : i} i, z : i");
    match hsub_normal(&s, &m) {
        Err(SubstError::Fails(_)) => Ok(()),
        other => Err(format!("expected failure, got {other:?}")),
    }
}

fn hsub_fails_when_bound_is_too_small() -> Outcome {
    // the approximation claims a base type, so the created redex is not allowed
    let s = single(&[], "\\y. y", v("x"), "i", "");
    let m = term("x c", "x : {y : i} i");
    match hsub_normal(&s, &m) {
        Err(SubstError::Fails(_)) => Ok(()),
        other => Err(format!("expected failure, got {other:?}")),
    }
}

// ---------------------------------------------------------------------------
// Single substitution into substitutions, contexts and types

fn hsub_subst_empty() -> Outcome {
    let s = single(&[], "c", v("x"), "a", "");
    ensure!(
        hsub_subst(&s, &Subst::empty()).map_err(err)?.is_empty(),
        "· changed"
    );
    Ok(())
}

fn hsub_subst_term_entry() -> Outcome {
    let s = single(&[], "c", v("x"), "a", "");
    let got = hsub_subst(&s, &subst("f x", "x : a")).map_err(err)?;
    same_subst(&got, &subst("f c", ""))
}

fn hsub_subst_term_entry_out_of_reach() -> Outcome {
    let s = single(&[], "c", v("x"), "a", "");
    let sigma = subst("(y. f y)", "");
    same_subst(&hsub_subst(&s, &sigma).map_err(err)?, &sigma)
}

fn hsub_subst_rename_hit() -> Outcome {
    let s = single(&[], "c", v("x"), "a", "");
    let got = hsub_subst(&s, &subst("x", "x : a")).map_err(err)?;
    same_subst(
        &got,
        &Subst(vec![SubstEntry::Term(BoundBody::closed(term("c", "")))]),
    )
}

fn hsub_subst_rename_other() -> Outcome {
    let s = single(&[], "c", v("x"), "a", "");
    let sigma = subst("y", "y : a");
    same_subst(&hsub_subst(&s, &sigma).map_err(err)?, &sigma)
}

fn hsub_ctx_empty() -> Outcome {
    let s = single(&[], "zero", v("n"), "nat", "");
    ensure!(
        hsub_ctx(&s, &Context::empty()).map_err(err)?.is_empty(),
        "· changed"
    );
    Ok(())
}

fn hsub_ctx_rewrites_declaration() -> Outcome {
    let s = single(&[], "zero", v("n"), "nat", "");
    let got = hsub_ctx(&s, &ctx_under("n : nat", "xs : vec n")).map_err(err)?;
    same_ctx(&got, &ctx("xs : vec zero"))
}

fn hsub_ctx_stops_above_target() -> Outcome {
    let s = single(&[], "zero", v("n"), "nat", "");
    let gamma = ctx("G^1 : a");
    same_ctx(&hsub_ctx(&s, &gamma).map_err(err)?, &gamma)
}

fn hsub_type_spine() -> Outcome {
    let s = single(&[], "zero", v("n"), "nat", "");
    let got = hsub_type(&s, &ty("vec n", "n : nat")).map_err(err)?;
    same_type(&got, &ty("vec zero", ""))
}

fn hsub_type_pi() -> Outcome {
    let s = single(&[], "zero", v("n"), "nat", "");
    let got = hsub_type(&s, &ty("{x : bool} vec n", "n : nat")).map_err(err)?;
    same_type(&got, &ty("{x : bool} vec zero", ""))
}

// ---------------------------------------------------------------------------
// Simultaneous substitution

fn simsub_empty() -> Outcome {
    let m = term("f c", "");
    same(
        &simsub_normal(&Subst::empty(), &CtxApprox::empty(), &m).map_err(err)?,
        &m,
    )
}

fn simsub_term_entry() -> Outcome {
    let d = ctx("y : b");
    let sigma = subst("z[]", "z : b");
    let m = term("c y", "y : b");
    let got = simsub_normal(&sigma, &dom("y : b"), &m).map_err(err)?;
    same(&got, &term("c z", "z : b"))?;
    oracle_sim(&sigma, &d, &m, &got)
}

fn simsub_lambda_extends() -> Outcome {
    let d = ctx("y : a");
    let sigma = subst("c", "");
    let m = term("\\w. y", "y : a");
    let got = simsub_normal(&sigma, &dom("y : a"), &m).map_err(err)?;
    same(&got, &term("\\w. c", ""))?;
    oracle_sim(&sigma, &d, &m, &got)
}

fn simsub_meta_variable_hit() -> Outcome {
    let sigma = subst("(y. c y)", "");
    let got = simsub_neutral(
        &sigma,
        &dom("F^1 : a [y : b]"),
        &atomic("F^1[z]", "F^1 : a [y : b], z : b"),
    )
    .map_err(err)?;
    match got {
        HsubNeutralResult::Reduced(m, a) if a == TypeApprox::base("a") => {
            same(&m, &term("c z", "z : b"))
        }
        other => Err(format!("got {other:?}")),
    }
}

fn simsub_rename_hit() -> Outcome {
    let sigma = subst("x", "x : a");
    let got = simsub_neutral(&sigma, &dom("w : a"), &atomic("w", "w : a")).map_err(err)?;
    match got {
        HsubNeutralResult::StillNeutral(r) => same(&r.into(), &term("x", "x : a")),
        other => Err(format!("got {other:?}")),
    }
}

fn simsub_into_rename_entry() -> Outcome {
    let got = simsub_subst(&subst("c", ""), &dom("y : a"), &subst("y", "y : a")).map_err(err)?;
    same_subst(&got, &subst("c", ""))
}

fn simsub_into_term_entry() -> Outcome {
    let got = simsub_subst(&subst("c", ""), &dom("y : a"), &subst("f y", "y : a")).map_err(err)?;
    same_subst(&got, &subst("f c", ""))
}

fn simsub_into_type() -> Outcome {
    let got =
        simsub_type(&subst("zero", ""), &dom("n : nat"), &ty("vec n", "n : nat")).map_err(err)?;
    same_type(&got, &ty("vec zero", ""))
}

fn simsub_into_context() -> Outcome {
    let got = simsub_ctx(
        &subst("zero", ""),
        &dom("n : nat"),
        &ctx_under("n : nat", "xs : vec n"),
        Level(0),
    )
    .map_err(err)?;
    same_ctx(&got, &ctx("xs : vec zero"))
}

fn simsub_unknown_entry() -> Outcome {
    // a λ-bound variable has no known approximation
    let d = CtxApprox(vec![ApproxEntry {
        var: v("w"),
        approx: None,
    }]);
    match simsub_normal(&subst("(\\y. y)", ""), &d, &term("w c", "w : {y : i} i")) {
        Err(SubstError::UnknownApprox(_)) => Ok(()),
        other => Err(format!("expected UnknownApprox, got {other:?}")),
    }
}

pub fn equations() -> Vec<Case> {
    macro_rules! cases {
        ($($f:ident),* $(,)?) => {
            vec![$(Case { name: stringify!($f), run: $f }),*]
        };
    }
    cases![
        merge_ctx_empty_left,
        merge_ctx_empty_right,
        merge_ctx_lower_goes_last,
        merge_ctx_higher_moves_left,
        chop_ctx_empty,
        chop_ctx_drops_lower,
        chop_ctx_keeps_higher,
        chop_ctx_below_bound_is_empty,
        merge_subst_empty_left,
        merge_subst_empty_right,
        merge_subst_lower_goes_last,
        merge_subst_higher_moves_left,
        chop_subst_empty,
        chop_subst_drops_lower,
        chop_subst_keeps_higher,
        id_empty,
        id_unrolls,
        erase_base,
        erase_drops_arguments,
        erase_pi,
        erase_ctx_empty,
        erase_ctx_declarations,
        approx_order,
        hsub_c_z,
        hsub_lam_below_target_level,
        hsub_lam_at_target_level,
        hsub_lam_avoids_capture,
        hsub_constant,
        hsub_variable_hit,
        hsub_variable_empty_closure,
        hsub_variable_other,
        hsub_application_argument_rewritten,
        hsub_application_argument_out_of_reach,
        hsub_beta_argument_rewritten,
        hsub_beta_higher_argument,
        hsub_fails_on_non_function_head,
        hsub_fails_when_bound_is_too_small,
        hsub_subst_empty,
        hsub_subst_term_entry,
        hsub_subst_term_entry_out_of_reach,
        hsub_subst_rename_hit,
        hsub_subst_rename_other,
        hsub_ctx_empty,
        hsub_ctx_rewrites_declaration,
        hsub_ctx_stops_above_target,
        hsub_type_spine,
        hsub_type_pi,
        simsub_empty,
        simsub_term_entry,
        simsub_lambda_extends,
        simsub_meta_variable_hit,
        simsub_rename_hit,
        simsub_into_rename_entry,
        simsub_into_term_entry,
        simsub_into_type,
        simsub_into_context,
        simsub_unknown_entry,
    ]
}

/// Runs every equation, catching panics so one bad case cannot hide others.
pub fn run_equations() -> Vec<(&'static str, Outcome)> {
    equations()
        .into_iter()
        .map(|c| {
            let r = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".to_string()));
            (c.name, r)
        })
        .collect()
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub single: usize,
    pub simultaneous: usize,
    pub failures: Vec<String>,
}

/// Compares both substitution forms with the oracle on `seeds` generated
/// instances of each.
pub fn run_oracle(seeds: u64, size: usize, level: u32) -> OracleReport {
    let mut report = OracleReport::default();
    for seed in 0..seeds {
        let mut g = Generator::new(seed, size, level);
        let sig = g.signature().signature().clone();
        let h = g.hsub_instance();
        match oracle::cross_check_hsub(&sig, &h) {
            Ok(_) => report.single += 1,
            Err(e) => report.failures.push(format!("seed {seed} single: {e}")),
        }
        let s = g.simsub_instance();
        match oracle::cross_check_simsub(&sig, &s) {
            Ok(_) => report.simultaneous += 1,
            Err(e) => report
                .failures
                .push(format!("seed {seed} simultaneous: {e}")),
        }
    }
    report
}
