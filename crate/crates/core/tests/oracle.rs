use mlf_core::approx::{erase_ctx, erase_type, TypeApprox};
use mlf_core::oracle::*;
use mlf_core::parse::{parse_context, parse_term};
use mlf_core::typer::Checker;
use mlf_core::{alpha_equal, AtomicTerm, Context, NormalTerm, Var};

fn raw_var(s: &str) -> RawTerm {
    RawTerm::Var(Var::new(s, 0))
}

fn app(f: RawTerm, a: RawTerm) -> RawTerm {
    RawTerm::App(Box::new(f), Box::new(a))
}

fn c(s: &str) -> RawTerm {
    RawTerm::Const(s.into())
}

#[test]
fn embeds_constants() {
    assert_eq!(embed(&NormalTerm::constant("c")), c("c"));
}

#[test]
fn reads_back_at_arrow_type() {
    let sig = fixed_signature();
    let r = RawTerm::Lam(Var::new("y", 0), Box::new(app(c("f"), raw_var("y"))));
    let a =
        erase_type(&mlf_core::parse::parse_type("{x : i} i", &Context::empty()).unwrap()).unwrap();
    let m = readback(sig.signature(), &Default::default(), &r, &a).unwrap();
    assert!(alpha_equal(
        &m,
        &parse_term("\\y. f y", &Context::empty()).unwrap()
    ));
}

#[test]
fn readback_eta_expands() {
    let sig = fixed_signature();
    let a =
        erase_type(&mlf_core::parse::parse_type("{x : i} i", &Context::empty()).unwrap()).unwrap();
    let m = readback(sig.signature(), &Default::default(), &c("f"), &a).unwrap();
    assert!(alpha_equal(
        &m,
        &parse_term("\\w. f w", &Context::empty()).unwrap()
    ));
}

#[test]
fn readback_rejects_redex() {
    let sig = fixed_signature();
    let redex = app(
        RawTerm::Lam(Var::new("y", 0), Box::new(raw_var("y"))),
        c("c"),
    );
    let e = readback(
        sig.signature(),
        &Default::default(),
        &redex,
        &TypeApprox::base("i"),
    );
    assert_eq!(e, Err(OracleError::NotNormal));
}

#[test]
fn naive_c_z() {
    let body = RawTerm::Lam(Var::new("y", 0), Box::new(app(c("c"), raw_var("y"))));
    let got =
        naive_subst_normalize(&app(raw_var("x"), raw_var("z")), &Var::new("x", 0), &body).unwrap();
    assert_eq!(got, app(c("c"), raw_var("z")));
}

#[test]
fn naive_without_occurrence_is_identity() {
    let t = app(c("f"), raw_var("z"));
    assert_eq!(
        naive_subst_normalize(&t, &Var::new("x", 0), &c("c")).unwrap(),
        t
    );
}

#[test]
fn naive_substitution_avoids_capture() {
    // (λy. x)[y/x] must not bind the replacement
    let t = RawTerm::Lam(Var::new("y", 0), Box::new(raw_var("x")));
    let got = naive_subst_normalize(&t, &Var::new("x", 0), &raw_var("y")).unwrap();
    let RawTerm::Lam(b, body) = got else { panic!() };
    assert_ne!(b, Var::new("y", 0));
    assert_eq!(*body, raw_var("y"));
}

#[test]
fn divergence_hits_the_budget() {
    let y = Var::new("y", 0);
    let omega = RawTerm::Lam(y.clone(), Box::new(app(raw_var("y"), raw_var("y"))));
    let e = normalize(&app(omega.clone(), omega), 1000);
    assert_eq!(e, Err(OracleError::BudgetExceeded(1000)));
}

#[test]
fn readback_round_trips_generated_terms() {
    for seed in 0..1000 {
        let inst = generate_instance(seed, 12, 2);
        let scope = erase_ctx(&inst.ctx).unwrap();
        let a = erase_type(&inst.ty).unwrap();
        let back = readback(inst.sig.signature(), &scope, &embed(&inst.term), &a)
            .unwrap_or_else(|e| panic!("seed {seed}: {e} for {}", inst.term));
        assert!(
            alpha_equal(&back, &inst.term),
            "seed {seed}: {} became {back}",
            inst.term
        );
    }
}

#[test]
fn generator_contract() {
    let inst = generate_instance(0, 3, 0);
    assert!(inst.ctx.vars().all(|v| v.level.0 == 0));
    Checker::new(&inst.sig)
        .check_judgement(&inst.ctx, &inst.term, &inst.ty)
        .unwrap();

    let inst = generate_instance(1, 6, 1);
    Checker::new(&inst.sig)
        .check_judgement(&inst.ctx, &inst.term, &inst.ty)
        .unwrap();
    assert!(has_meta_closure(&inst.term), "no closure in {}", inst.term);
}

fn has_meta_closure(m: &NormalTerm) -> bool {
    fn atomic(r: &AtomicTerm) -> bool {
        match r {
            AtomicTerm::Var(x, _) => x.level.0 > 0,
            AtomicTerm::Const(_) => false,
            AtomicTerm::App(h, a) => atomic(h) || has_meta_closure(&a.body),
        }
    }
    match m {
        NormalTerm::Lam(_, b) => has_meta_closure(b),
        NormalTerm::Atomic(r) => atomic(r),
    }
}

#[test]
fn generated_instances_all_check() {
    let mut g = Generator::new(99, 12, 2);
    let sig = g.signature().clone();
    for i in 0..300 {
        let inst = g.instance();
        Checker::new(&inst.sig)
            .check_judgement(&inst.ctx, &inst.term, &inst.ty)
            .unwrap_or_else(|e| panic!("instance {i}: {e}"));
        let h = g.hsub_instance();
        let c = Checker::new(&sig);
        c.check_judgement(&h.subject_ctx(), &h.subject, &h.subject_ty)
            .unwrap_or_else(|e| panic!("subject {i}: {e}"));
        let inner = mlf_core::contexts::merge_ctx(
            &mlf_core::contexts::chop_ctx(&h.ctx, h.target.level),
            &h.bound.ctx,
        )
        .unwrap();
        c.check_normal(&inner, &h.replacement.body, &h.bound.ty)
            .unwrap_or_else(|e| panic!("replacement {i}: {e}"));
        let s = g.simsub_instance();
        c.check_subst(&s.ctx, &s.subst, &s.domain)
            .unwrap_or_else(|e| panic!("substitution {i}: {e}"));
    }
}

#[test]
fn agrees_with_hereditary_substitution() {
    let report = mlf_core::selftest::run_oracle(600, 12, 2);
    assert!(report.failures.is_empty(), "{:#?}", report.failures);
    assert_eq!(report.single + report.simultaneous, 1200);
}

#[test]
fn meta_variable_scope_from_parser() {
    let psi = parse_context("F^1 : i [y : i]").unwrap();
    let m = parse_term("box (y. F^1[y])", &psi).unwrap();
    let back = readback(
        fixed_signature().signature(),
        &erase_ctx(&psi).unwrap(),
        &embed(&m),
        &TypeApprox::base("i"),
    )
    .unwrap();
    assert!(alpha_equal(&back, &m));
}
