//! Arbitrary, mostly ill-typed syntax never makes the checker or the
//! substitution functions panic; every call ends in a value or an error.

#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use mlf_core::approx::{erase_ctx, erase_ctx_type};
use mlf_core::budget::Budget;
use mlf_core::hsub::{hsub_normal, hsub_type, simsub_normal, Engine, SingleSubst};
use mlf_core::oracle::{fixed_signature, Generator};
use mlf_core::typer::Checker;
use mlf_core::{
    AtomicTerm, AtomicType, BoundBody, Context, CtxType, Decl, NormalTerm, Sort, Subst, SubstEntry,
    Type, Var,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: u64 = 10_000;

const NAMES: &[&str] = &["x", "y", "z", "F", "G", "u1", "a1"];
const CONSTS: &[&str] = &[
    "i", "o", "p", "c", "f", "g", "hof", "mk", "use", "box", "nope",
];

struct Fuzz(ChaCha8Rng);

impl Fuzz {
    fn var(&mut self) -> Var {
        Var::new(NAMES.choose(&mut self.0).unwrap(), self.0.gen_range(0..3))
    }

    fn hat(&mut self) -> Vec<Var> {
        let mut hat: Vec<Var> = (0..self.0.gen_range(0..3)).map(|_| self.var()).collect();
        hat.dedup();
        hat
    }

    fn body(&mut self, d: u32) -> BoundBody {
        BoundBody::new(self.hat(), self.normal(d))
    }

    fn subst(&mut self, d: u32) -> Subst {
        Subst(
            (0..self.0.gen_range(0..3))
                .map(|_| {
                    if self.0.gen_bool(0.5) {
                        SubstEntry::Rename(self.var())
                    } else {
                        SubstEntry::Term(self.body(d))
                    }
                })
                .collect(),
        )
    }

    fn atomic(&mut self, d: u32) -> AtomicTerm {
        match self.0.gen_range(0..3) {
            _ if d == 0 => AtomicTerm::constant(CONSTS.choose(&mut self.0).unwrap()),
            0 => AtomicTerm::Var(self.var(), self.subst(d - 1)),
            1 => AtomicTerm::constant(CONSTS.choose(&mut self.0).unwrap()),
            _ => self.atomic(d - 1).app(self.body(d - 1)),
        }
    }

    fn normal(&mut self, d: u32) -> NormalTerm {
        if d > 0 && self.0.gen_bool(0.3) {
            NormalTerm::lam(self.var(), self.normal(d - 1))
        } else {
            self.atomic(d).into()
        }
    }

    fn atomic_type(&mut self, d: u32) -> AtomicType {
        match self.0.gen_range(0..4) {
            0 => AtomicType::Sort(if self.0.gen_bool(0.5) {
                Sort::Type
            } else {
                Sort::Kind
            }),
            1 if d > 0 => self.atomic_type(d - 1).app(self.body(d - 1)),
            _ => AtomicType::constant(CONSTS.choose(&mut self.0).unwrap()),
        }
    }

    fn ty(&mut self, d: u32) -> Type {
        if d > 0 && self.0.gen_bool(0.4) {
            Type::pi(self.var(), self.ctx_type(d - 1), self.ty(d - 1))
        } else {
            self.atomic_type(d).into()
        }
    }

    fn ctx_type(&mut self, d: u32) -> CtxType {
        CtxType::new(self.ty(d), self.ctx(d.saturating_sub(1)))
    }

    fn ctx(&mut self, d: u32) -> Context {
        let decls = (0..self.0.gen_range(0..3))
            .map(|_| {
                let ty = if d == 0 {
                    CtxType::plain(self.atomic_type(0).into())
                } else {
                    self.ctx_type(d - 1)
                };
                Decl::new(self.var(), ty)
            })
            .collect();
        Context::new(decls).unwrap_or_else(|_| Context::empty())
    }
}

/// Runs `f`, failing on a panic or on a case slower than one second.
fn guarded(what: &str, seed: u64, f: impl FnOnce()) -> Result<(), String> {
    let start = Instant::now();
    if catch_unwind(AssertUnwindSafe(f)).is_err() {
        return Err(format!("{what} panicked on seed {seed}"));
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(1) {
        return Err(format!("{what} took {took:?} on seed {seed}"));
    }
    Ok(())
}

/// Checks `cases` arbitrary judgements; returns how many were accepted.
pub fn checker_is_total(cases: u64) -> Result<usize, String> {
    let sig = fixed_signature();
    let mut accepted = 0;
    for seed in 0..cases {
        let mut fz = Fuzz(ChaCha8Rng::seed_from_u64(seed));
        let (psi, m, a) = (fz.ctx(2), fz.normal(4), fz.ty(3));
        let mut verdict = None;
        guarded("check_judgement", seed, || {
            let ch = Checker::with_budget(&sig, Budget::new(2_000));
            verdict = Some(ch.check_judgement(&psi, &m, &a));
        })?;
        match verdict {
            Some(Ok(())) => accepted += 1,
            Some(Err(e)) if !e.to_string().is_empty() => {}
            other => return Err(format!("seed {seed}: unclassified outcome {other:?}")),
        }
    }
    Ok(accepted)
}

pub fn substitution_is_total(cases: u64) -> Result<(), String> {
    for seed in 0..cases {
        let mut fz = Fuzz(ChaCha8Rng::seed_from_u64(seed));
        let (rep, x, bound) = (fz.body(3), fz.var(), fz.ctx_type(2));
        let (m, a) = (fz.normal(4), fz.ty(3));
        let (sigma, domain) = (fz.subst(3), fz.ctx(2));
        guarded("hsub", seed, || {
            if let Ok(bound) = erase_ctx_type(&bound) {
                if let Ok(s) = SingleSubst::new(rep, x, bound) {
                    let _ = hsub_normal(&s, &m);
                    let _ = hsub_type(&s, &a);
                }
            }
        })?;
        guarded("simsub", seed, || {
            if let Ok(domain) = erase_ctx(&domain) {
                let _ = simsub_normal(&sigma, &domain, &m);
                let budget = Budget::new(2_000);
                let _ = Engine::new(&budget).simsub_type(&sigma, &domain, &a);
            }
        })?;
    }
    Ok(())
}

/// Generated well-typed terms checked against the wrong type.
pub fn mismatches_are_total(cases: u64) -> Result<(), String> {
    for seed in 0..cases {
        let inst = Generator::new(seed, 8, 2).instance();
        let other = Generator::new(seed + 1, 8, 2).instance();
        guarded("check_judgement", seed, || {
            let ch = Checker::new(&inst.sig);
            let _ = ch.check_judgement(&inst.ctx, &inst.term, &other.ty);
            let _ = ch.check_judgement(&other.ctx, &inst.term, &inst.ty);
        })?;
    }
    Ok(())
}
