//! Metatheory of the calculus, checked on generated instances. Each lemma
//! returns the number of instances it exercised.

#![allow(dead_code)]

use mlf_core::approx::{approx_lt_ctx_type, erase_ctx, erase_ctx_type};
use mlf_core::budget::Budget;
use mlf_core::contexts::{chop_ctx, chop_subst, extend_ctx, id_subst, merge_ctx, merge_subst};
use mlf_core::hsub::{
    hsub_normal, hsub_type, rename_type, simsub_normal, simsub_subst, simsub_type, Engine, Event,
    SingleSubst,
};
use mlf_core::oracle::Generator;
use mlf_core::typer::{equal_normal, Checker};
use mlf_core::{
    AtomicTerm, BoundBody, Context, Decl, Level, NormalTerm, Sort, Subst, SubstEntry, Type, Var,
};

const INSTANCES: u64 = 250;
const SIZE: usize = 8;

/// Runs `body` once per seed. `Ok(false)` marks a skipped instance; every
/// lemma must be exercised on at least 200 instances.
fn suite(
    name: &str,
    body: impl Fn(&mut Generator) -> Result<bool, String>,
) -> Result<usize, String> {
    let mut used = 0;
    let mut failures = Vec::new();
    for seed in 0..INSTANCES {
        let mut g = Generator::new(seed, SIZE, 2);
        match body(&mut g) {
            Ok(true) => used += 1,
            Ok(false) => {}
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    if let Some(first) = failures.first() {
        return Err(format!(
            "{name}: {} failures, first: {first}",
            failures.len()
        ));
    }
    if used < 200 {
        return Err(format!("{name}: only {used} instances exercised"));
    }
    Ok(used)
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn same(lhs: &NormalTerm, rhs: &NormalTerm, what: &str) -> Result<bool, String> {
    if equal_normal(lhs, rhs) {
        Ok(true)
    } else {
        Err(format!("{what}: {lhs} vs {rhs}"))
    }
}

/// `Ψ`, `Φ` and `Ψ ⊢ σ ⇐ Φ`.
fn subst_setup(g: &mut Generator) -> (Context, Context, Subst) {
    let psi = g.context("u");
    let phi = g.context("a");
    let sigma = g.subst_for(&psi, &phi);
    (psi, phi, sigma)
}

pub fn cumulativity() -> Result<usize, String> {
    suite("cumulativity", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let psi = g.context("u");
        let n = 1 + g.pick(2);
        let k = n + g.pick(1);
        // Φ only refers to the part of Ψ that survives chopping at k
        let phi = g.context_in(&chop_ctx(&psi, Level(k)), "a", n);
        ok(ch.check_ctx(&psi, &phi, Level(n)), "at n")?;
        ok(ch.check_ctx(&psi, &phi, Level(k)), "at k")?;
        Ok(true)
    })
}

pub fn merge_of_well_formed_contexts() -> Result<usize, String> {
    suite("merge", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let (n, k) = (1 + g.pick(2), 1 + g.pick(2));
        let phi = g.context_in(&Context::empty(), "a", n);
        let gamma = g.context_in(&Context::empty(), "g", k);
        let empty = Context::empty();
        ok(ch.check_ctx(&empty, &phi, Level(n)), "left")?;
        ok(ch.check_ctx(&empty, &gamma, Level(k)), "right")?;
        let both = ok(merge_ctx(&phi, &gamma), "merge")?;
        ok(ch.check_ctx(&empty, &both, Level(n.max(k))), "merged")?;
        Ok(true)
    })
}

pub fn well_formed_extension() -> Result<usize, String> {
    suite("extension", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let inst = g.hsub_instance();
        let empty = Context::empty();
        ok(ch.check_ctx(&empty, &inst.ctx, Level(3)), "base")?;
        ok(
            ch.check_ctx(&empty, &inst.subject_ctx(), Level(3)),
            "extended",
        )?;
        Ok(true)
    })
}

pub fn chopping_preserves_well_formedness() -> Result<usize, String> {
    suite("chopping", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let psi = g.context("u");
        let empty = Context::empty();
        ok(ch.check_ctx(&empty, &psi, Level(3)), "whole")?;
        for n in 0..=3 {
            ok(
                ch.check_ctx(&empty, &chop_ctx(&psi, Level(n)), Level(3)),
                "chopped",
            )?;
        }
        Ok(true)
    })
}

pub fn weakening() -> Result<usize, String> {
    suite("weakening", |g| {
        let inst = g.instance();
        let ch = Checker::new(&inst.sig);
        let k = g.pick(2);
        let ty = g.decl_type(&chop_ctx(&inst.ctx, Level(k)), k);
        let wider = ok(extend_ctx(&inst.ctx, Var::new("w", k), ty), "extend")?;
        ok(
            ch.check_judgement(&inst.ctx, &inst.term, &inst.ty),
            "original",
        )?;
        ok(ch.check_judgement(&wider, &inst.term, &inst.ty), "weakened")?;
        Ok(true)
    })
}

pub fn identity_substitution() -> Result<usize, String> {
    suite("identity", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let psi = g.context("u");
        ok(ch.check_subst(&psi, &id_subst(&psi.hat()), &psi), "whole")?;
        for n in 0..=2 {
            let part = Context::new(
                psi.decls()
                    .iter()
                    .filter(|d| d.var.level == Level(n))
                    .cloned()
                    .collect(),
            )
            .expect("sub-context of a context");
            ok(
                ch.check_subst(&psi, &id_subst(&part.hat()), &part),
                "one level",
            )?;
        }
        Ok(true)
    })
}

pub fn level_k_well_formedness_depends_only_on_the_chop() -> Result<usize, String> {
    suite("level-k", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let psi = g.context("u");
        let k = 1 + g.pick(2);
        // scope is the whole of Ψ, so some of these mention variables below k
        let phi = g.context_in(&psi, "a", k);
        let full = ch.check_ctx(&psi, &phi, Level(k)).is_ok();
        let chopped = ch
            .check_ctx(&chop_ctx(&psi, Level(k)), &phi, Level(k))
            .is_ok();
        if full != chopped {
            return Err(format!("{phi} in {psi} at {k}: {full} vs {chopped}"));
        }
        Ok(true)
    })
}

pub fn reductions_stay_below_the_bound() -> Result<usize, String> {
    suite("termination", |g| {
        let inst = g.hsub_instance();
        let bound = ok(erase_ctx_type(&inst.bound), "erase")?;
        let s = ok(
            SingleSubst::new(inst.replacement.clone(), inst.target.clone(), bound),
            "subst",
        )?;
        let budget = Budget::default();
        let engine = Engine::recording(&budget);
        ok(engine.normal(&s, &inst.subject), "hsub")?;
        for e in engine.take_events() {
            match e {
                Event::Reduced { result, bound } => {
                    if !approx_lt_ctx_type(&result, &bound) {
                        return Err(format!("{result} not below {bound}"));
                    }
                }
                Event::Beta { outer, inner } => {
                    if inner >= outer {
                        return Err(format!("measure {inner} not below {outer}"));
                    }
                }
            }
        }
        Ok(true)
    })
}

/// `⌈Φ⌉m ⋈ Γ ⊢ F`, `Φ ⊢ ρ ⇐ Γ`, with `m` the level of the closure.
struct Closure {
    phi: Context,
    sigma: Subst,
    m: Level,
    gamma: Context,
    rho: Subst,
    body: NormalTerm,
}

fn closure_setup(g: &mut Generator) -> Closure {
    let (_, phi, sigma) = subst_setup(g);
    let m = Level(1 + g.pick(2));
    let gamma = g.context_in(&chop_ctx(&phi, m), "g", m.0);
    let rho = g.subst_for(&phi, &gamma);
    let inner = merge_ctx(&chop_ctx(&phi, m), &gamma).expect("names are apart");
    let ty = g.target_type(&inner);
    let body = g.term(&inner, &ty);
    Closure {
        phi,
        sigma,
        m,
        gamma,
        rho,
        body,
    }
}

pub fn composition_pushes_through_closure() -> Result<usize, String> {
    // [[σ]ρ]([⌈σ⌉m ⋈ id(Γ̂)]F) = [σ]([ρ]F)
    suite("composition 1", |g| {
        let c = closure_setup(g);
        let (ephi, egamma) = (erase_ctx(&c.phi).unwrap(), erase_ctx(&c.gamma).unwrap());
        let rhs = ok(simsub_normal(&c.rho, &egamma, &c.body), "[ρ]F")?;
        let rhs = ok(simsub_normal(&c.sigma, &ephi, &rhs), "[σ]([ρ]F)")?;
        let (top, top_dom) = ok(chop_subst(&c.sigma, &c.phi, c.m), "chop")?;
        let (lifted, dom) = ok(
            merge_subst(&top, &top_dom, &id_subst(&c.gamma.hat()), &c.gamma),
            "merge",
        )?;
        let inner = ok(
            simsub_normal(&lifted, &erase_ctx(&dom).unwrap(), &c.body),
            "[σ']F",
        )?;
        let rho2 = ok(simsub_subst(&c.sigma, &ephi, &c.rho), "[σ]ρ")?;
        let lhs = ok(simsub_normal(&rho2, &egamma, &inner), "lhs")?;
        same(&lhs, &rhs, "composition 1")
    })
}

pub fn composition_merges_substitutions() -> Result<usize, String> {
    // [σ]([ρ]F) = [⌈σ⌉m ⋈ [σ]ρ]F
    suite("composition 2", |g| {
        let c = closure_setup(g);
        let (ephi, egamma) = (erase_ctx(&c.phi).unwrap(), erase_ctx(&c.gamma).unwrap());
        let lhs = ok(simsub_normal(&c.rho, &egamma, &c.body), "[ρ]F")?;
        let lhs = ok(simsub_normal(&c.sigma, &ephi, &lhs), "[σ]([ρ]F)")?;
        let (top, top_dom) = ok(chop_subst(&c.sigma, &c.phi, c.m), "chop")?;
        let rho2 = ok(simsub_subst(&c.sigma, &ephi, &c.rho), "[σ]ρ")?;
        let (tau, dom) = ok(merge_subst(&top, &top_dom, &rho2, &c.gamma), "merge")?;
        let rhs = ok(
            simsub_normal(&tau, &erase_ctx(&dom).unwrap(), &c.body),
            "rhs",
        )?;
        same(&lhs, &rhs, "composition 2")
    })
}

/// `Φ ⋈ x:A[Γ] ⊢ F` with `⌈Φ⌉n ⋈ Γ ⊢ N ⇐ A`.
struct Single {
    phi: Context,
    decl: Decl,
    replacement: BoundBody,
    body: NormalTerm,
}

fn single_setup(g: &mut Generator, phi: Context, n: u32) -> Single {
    let x = Var::new("t", n);
    let ty = g.decl_type(&chop_ctx(&phi, Level(n)), n);
    let inner = merge_ctx(&chop_ctx(&phi, Level(n)), &ty.ctx).expect("names are apart");
    let n_term = g.term(&inner, &ty.ty);
    let outer = extend_ctx(&phi, x.clone(), ty.clone()).expect("t is fresh");
    let b = g.target_type(&outer);
    let body = g.term(&outer, &b);
    Single {
        phi,
        replacement: BoundBody::new(ty.ctx.hat().0, n_term),
        decl: Decl::new(x, ty),
        body,
    }
}

impl Single {
    fn subst(&self) -> SingleSubst {
        SingleSubst::new(
            self.replacement.clone(),
            self.decl.var.clone(),
            erase_ctx_type(&self.decl.ty).unwrap(),
        )
        .unwrap()
    }
}

pub fn composition_with_single_substitution() -> Result<usize, String> {
    // [σ]([Γ̂.N/x]F) = [σ ⋈ [σ](Γ̂.N)/x]F
    suite("composition 3", |g| {
        let (_, phi, sigma) = subst_setup(g);
        let n = g.pick(2);
        let s = single_setup(g, phi, n);
        let ephi = erase_ctx(&s.phi).unwrap();
        let lhs = ok(hsub_normal(&s.subst(), &s.body), "[N/x]F")?;
        let lhs = ok(simsub_normal(&sigma, &ephi, &lhs), "lhs")?;
        let entry = Subst(vec![SubstEntry::Term(s.replacement.clone())]);
        let entry = ok(simsub_subst(&sigma, &ephi, &entry), "[σ]N")?;
        let one = Context::new(vec![s.decl.clone()]).unwrap();
        let (tau, dom) = ok(merge_subst(&sigma, &s.phi, &entry, &one), "merge")?;
        let rhs = ok(
            simsub_normal(&tau, &erase_ctx(&dom).unwrap(), &s.body),
            "rhs",
        )?;
        same(&lhs, &rhs, "composition 3")
    })
}

pub fn substitutions_at_separate_levels_commute() -> Result<usize, String> {
    // [σ]([Γ̂.N/x]F) = [Γ̂.N/x]([σ]F) when Φ lies below x
    suite("composition 4", |g| {
        let n = 1 + g.pick(1);
        let phi = g.context_in(&Context::empty(), "a", n);
        let psi = g.context("u");
        let sigma = g.subst_for(&psi, &phi);
        let s = single_setup(g, phi, n);
        let ephi = erase_ctx(&s.phi).unwrap();
        let lhs = ok(hsub_normal(&s.subst(), &s.body), "[N/x]F")?;
        let lhs = ok(simsub_normal(&sigma, &ephi, &lhs), "lhs")?;
        let rhs = ok(simsub_normal(&sigma, &ephi, &s.body), "[σ]F")?;
        let rhs = ok(hsub_normal(&s.subst(), &rhs), "rhs")?;
        same(&lhs, &rhs, "composition 4")
    })
}

pub fn identity_extension_by_one_declaration() -> Result<usize, String> {
    suite("identity extension", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let (psi, phi, sigma) = subst_setup(g);
        let k = g.pick(2);
        let x = Var::new("t", k);
        let ty = g.decl_type(&chop_ctx(&phi, Level(k)), k);
        let budget = Budget::default();
        let moved = ok(
            Engine::new(&budget).simsub_ctx_type(&sigma, &erase_ctx(&phi).unwrap(), &ty, Level(k)),
            "[σ]A",
        )?;
        let wider = ok(extend_ctx(&psi, x.clone(), moved), "extend Ψ")?;
        let one = Context::new(vec![Decl::new(x.clone(), ty)]).unwrap();
        let (rho, dom) = ok(
            merge_subst(&sigma, &phi, &Subst(vec![SubstEntry::Rename(x)]), &one),
            "merge",
        )?;
        ok(ch.check_subst(&psi, &sigma, &phi), "σ")?;
        ok(ch.check_subst(&wider, &rho, &dom), "σ ⋈ x/x")?;
        Ok(true)
    })
}

pub fn identity_extension_by_a_context() -> Result<usize, String> {
    suite("identity extension (context)", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let (psi, phi, sigma) = subst_setup(g);
        let gamma = g.context_in(&phi, "g", 3);
        let budget = Budget::default();
        let moved = ok(
            Engine::new(&budget).simsub_ctx(&sigma, &erase_ctx(&phi).unwrap(), &gamma, Level(0)),
            "[σ]Γ",
        )?;
        let wider = ok(merge_ctx(&psi, &moved), "Ψ ⋈ [σ]Γ")?;
        let (rho, dom) = ok(
            merge_subst(&sigma, &phi, &id_subst(&gamma.hat()), &gamma),
            "merge",
        )?;
        ok(ch.check_subst(&wider, &rho, &dom), "σ ⋈ id(Γ̂)")?;
        Ok(true)
    })
}

pub fn single_substitution_preserves_typing() -> Result<usize, String> {
    suite("substitution property (single)", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let inst = g.hsub_instance();
        let bound = erase_ctx_type(&inst.bound).unwrap();
        let s = SingleSubst::new(inst.replacement.clone(), inst.target.clone(), bound).unwrap();
        ok(
            ch.check_judgement(&inst.subject_ctx(), &inst.subject, &inst.subject_ty),
            "premise",
        )?;
        let m = ok(hsub_normal(&s, &inst.subject), "hsub term")?;
        let b = ok(hsub_type(&s, &inst.subject_ty), "hsub type")?;
        ok(ch.check_judgement(&inst.ctx, &m, &b), "result")?;
        Ok(true)
    })
}

pub fn simultaneous_substitution_preserves_typing() -> Result<usize, String> {
    suite("substitution property (simultaneous)", |g| {
        let sig = g.signature().clone();
        let ch = Checker::new(&sig);
        let inst = g.simsub_instance();
        let dom = erase_ctx(&inst.domain).unwrap();
        ok(
            ch.check_subst(&inst.ctx, &inst.subst, &inst.domain),
            "premise",
        )?;
        let m = ok(
            simsub_normal(&inst.subst, &dom, &inst.subject),
            "simsub term",
        )?;
        let b = ok(
            simsub_type(&inst.subst, &dom, &inst.subject_ty),
            "simsub type",
        )?;
        ok(ch.check_judgement(&inst.ctx, &m, &b), "result")?;
        Ok(true)
    })
}

/// Atomic subterms reached by walking the λ-prefix and then the spine.
fn atomic_sites(psi: &Context, m: &NormalTerm, a: &Type, out: &mut Vec<(Context, AtomicTerm)>) {
    match (m, a) {
        (
            NormalTerm::Lam(y, body),
            Type::Pi {
                binder,
                domain,
                body: cod,
            },
        ) => {
            let Ok(inner) = extend_ctx(psi, y.clone(), (**domain).clone()) else {
                return;
            };
            atomic_sites(&inner, body, &rename_type(cod, binder, y), out);
        }
        (NormalTerm::Atomic(r), _) => {
            let mut head = r;
            while let AtomicTerm::App(h, _) = head {
                out.push((psi.clone(), head.clone()));
                head = h;
            }
            out.push((psi.clone(), head.clone()));
        }
        _ => {}
    }
}

pub fn synthesized_types_are_well_formed() -> Result<usize, String> {
    suite("synthesis", |g| {
        let inst = g.instance();
        let ch = Checker::new(&inst.sig);
        let mut sites = Vec::new();
        atomic_sites(&inst.ctx, &inst.term, &inst.ty, &mut sites);
        for (psi, r) in sites {
            let a = ok(ch.synth_atomic(&psi, &r), "synth")?;
            ok(ch.check_type(&psi, &a, Sort::Type), "synthesized type")?;
        }
        Ok(true)
    })
}

pub type Lemma = fn() -> Result<usize, String>;

pub const ALL: &[(&str, Lemma)] = &[
    ("cumulativity", cumulativity),
    (
        "merge of well formed contexts",
        merge_of_well_formed_contexts,
    ),
    ("well formed extension", well_formed_extension),
    (
        "chopping preserves well formedness",
        chopping_preserves_well_formedness,
    ),
    ("weakening", weakening),
    ("identity substitution", identity_substitution),
    (
        "level k well formedness depends only on the chop",
        level_k_well_formedness_depends_only_on_the_chop,
    ),
    (
        "reductions stay below the bound",
        reductions_stay_below_the_bound,
    ),
    (
        "composition pushes through closure",
        composition_pushes_through_closure,
    ),
    (
        "composition merges substitutions",
        composition_merges_substitutions,
    ),
    (
        "composition with single substitution",
        composition_with_single_substitution,
    ),
    (
        "substitutions at separate levels commute",
        substitutions_at_separate_levels_commute,
    ),
    (
        "identity extension by one declaration",
        identity_extension_by_one_declaration,
    ),
    (
        "identity extension by a context",
        identity_extension_by_a_context,
    ),
    (
        "single substitution preserves typing",
        single_substitution_preserves_typing,
    ),
    (
        "simultaneous substitution preserves typing",
        simultaneous_substitution_preserves_typing,
    ),
    (
        "synthesized types are well formed",
        synthesized_types_are_well_formed,
    ),
];
