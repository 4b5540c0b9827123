//! Hereditary substitution.
//!
//! Single substitution `[Φ̂.N/xⁿ]_{α[φ]}` follows the clause structure of the
//! usual canonical-forms presentation: when a variable closure is hit the
//! pending substitution is pushed through its closure first, and any redex
//! created at the head of an application is reduced at once at a strictly
//! smaller approximation.
//!
//! Simultaneous substitution `[σ]_φ` is matched positionally against an
//! approximate domain `φ`. Its clauses:
//!
//! * `λyᵏ.M`: when `k < level(φ)` the substitution is extended with `y ↦ y`
//!   and an unknown domain entry; otherwise it passes under the binder as is.
//! * `yᵏ[ρ]`: `ρ` is rewritten first. A renaming entry for `y` yields a new
//!   closure; a term entry `Γ̂.M` yields `[ρ′]_γ M` at the entry's known
//!   approximation `α[γ]`.
//! * an argument `Ψ̂ᵏ.M` with `k < level(φ)` is rewritten by
//!   `⌈σ⌉k ⋈ id(Ψ̂ᵏ)`; β-steps at the head are guarded by the order.
//! * a local context `Γᵏ` is rewritten declaration by declaration, each with
//!   `⌈σ⌉k` extended by the identity on the declarations before it.
//!
//! Binders that would capture a free variable of the substituted terms are
//! renamed instead of failing.

use std::cell::RefCell;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::approx::{
    approx_lt_ctx, approx_lt_ctx_type, ctx_node_count, ctx_type_node_count, ApproxEntry, CtxApprox,
    CtxTypeApprox, TypeApprox,
};
use crate::budget::{Budget, DepthGuard};
use crate::contexts::{chop_by_level, merge_by_level};
use crate::syntax::{
    AtomicTerm, AtomicType, BoundBody, Context, CtxType, Decl, HatContext, Level, NormalTerm,
    Scoped, Subst, SubstEntry, Type, Var,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substitution fails: {0}")]
    Fails(String),
    #[error("approximation of {0:?} is unknown")]
    UnknownApprox(Var),
    #[error("recursion budget exhausted")]
    Budget,
}

type R<T> = Result<T, SubstError>;

fn fails<T>(msg: impl Into<String>) -> R<T> {
    Err(SubstError::Fails(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HsubNeutralResult {
    StillNeutral(AtomicTerm),
    Reduced(NormalTerm, TypeApprox),
}

impl HsubNeutralResult {
    pub fn into_normal(self) -> NormalTerm {
        match self {
            HsubNeutralResult::StillNeutral(r) => NormalTerm::Atomic(r),
            HsubNeutralResult::Reduced(m, _) => m,
        }
    }
}

/// `[Φ̂.N/xⁿ]_{α[φ]}`.
#[derive(Debug, Clone)]
pub struct SingleSubst {
    pub replacement: BoundBody,
    pub target: Var,
    pub bound: CtxTypeApprox,
    fv: BTreeSet<Var>,
}

impl SingleSubst {
    pub fn new(replacement: BoundBody, target: Var, bound: CtxTypeApprox) -> R<SingleSubst> {
        if replacement.hat.level_bound() > target.level {
            return fails(format!(
                "replacement binds variables at or above the level of {}^{}",
                target.name, target.level
            ));
        }
        let fv = replacement.free_vars();
        Ok(SingleSubst {
            replacement,
            target,
            bound,
            fv,
        })
    }

    fn level(&self) -> Level {
        self.target.level
    }
}

/// Observations made during substitution, for checking the termination
/// argument from tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    /// A neutral term reduced to `result` under a single substitution at `bound`.
    Reduced {
        result: TypeApprox,
        bound: CtxTypeApprox,
    },
    /// A hereditary β-step recursed from measure `outer` to measure `inner`.
    Beta { outer: usize, inner: usize },
}

/// Runs substitutions against a shared budget.
pub struct Engine<'b> {
    budget: &'b Budget,
    log: Option<RefCell<Vec<Event>>>,
}

impl<'b> Engine<'b> {
    pub fn new(budget: &'b Budget) -> Engine<'b> {
        Engine { budget, log: None }
    }

    pub fn recording(budget: &'b Budget) -> Engine<'b> {
        Engine {
            budget,
            log: Some(RefCell::new(Vec::new())),
        }
    }

    pub fn take_events(&self) -> Vec<Event> {
        self.log
            .as_ref()
            .map(|l| std::mem::take(&mut *l.borrow_mut()))
            .unwrap_or_default()
    }

    fn record(&self, e: Event) {
        if let Some(l) = &self.log {
            l.borrow_mut().push(e);
        }
    }

    fn enter(&self) -> R<DepthGuard<'b>> {
        self.budget.enter().map_err(|_| SubstError::Budget)
    }

    // -----------------------------------------------------------------------
    // Single substitution

    pub fn normal(&self, s: &SingleSubst, m: &NormalTerm) -> R<NormalTerm> {
        let _g = self.enter()?;
        match m {
            NormalTerm::Atomic(r) => Ok(self.neutral(s, r)?.into_normal()),
            NormalTerm::Lam(y, body) => {
                if *y == s.target {
                    return Ok(m.clone());
                }
                let (y, body) = unclash_lam(y, body, &s.fv, &s.target);
                Ok(NormalTerm::lam(y, self.normal(s, &body)?))
            }
        }
    }

    pub fn neutral(&self, s: &SingleSubst, r: &AtomicTerm) -> R<HsubNeutralResult> {
        let _g = self.enter()?;
        match r {
            AtomicTerm::Const(_) => Ok(HsubNeutralResult::StillNeutral(r.clone())),
            AtomicTerm::Var(y, sigma) => {
                let sigma = self.subst(s, sigma)?;
                if *y != s.target {
                    return Ok(HsubNeutralResult::StillNeutral(AtomicTerm::Var(
                        y.clone(),
                        sigma,
                    )));
                }
                let rep = &s.replacement;
                let Some(domain) = s.bound.ctx.relabel(&rep.hat) else {
                    return fails("replacement binders do not match the bound's context");
                };
                let sim = Sim::new(&sigma, &domain)?;
                let m = self.sim_normal(&sim, &rep.body)?;
                self.record(Event::Reduced {
                    result: s.bound.approx.clone(),
                    bound: s.bound.clone(),
                });
                Ok(HsubNeutralResult::Reduced(m, s.bound.approx.clone()))
            }
            AtomicTerm::App(head, arg) => {
                let head = self.neutral(s, head)?;
                let arg = self.arg(s, arg)?;
                match head {
                    HsubNeutralResult::StillNeutral(h) => {
                        Ok(HsubNeutralResult::StillNeutral(h.app(arg)))
                    }
                    HsubNeutralResult::Reduced(NormalTerm::Lam(y, body), arrow) => {
                        let TypeApprox::Arrow(dom, cod) = &arrow else {
                            return fails("λ reduced at a base approximation");
                        };
                        if !approx_lt_ctx_type(&arrow, &s.bound) {
                            return fails("approximation guard fails at a head redex");
                        }
                        self.record(Event::Beta {
                            outer: ctx_type_node_count(&s.bound),
                            inner: ctx_type_node_count(dom),
                        });
                        let inner = SingleSubst::new(arg, y, (**dom).clone())?;
                        let m = self.normal(&inner, &body)?;
                        self.record(Event::Reduced {
                            result: (**cod).clone(),
                            bound: s.bound.clone(),
                        });
                        Ok(HsubNeutralResult::Reduced(m, (**cod).clone()))
                    }
                    HsubNeutralResult::Reduced(..) => fails("non-λ applied to an argument"),
                }
            }
        }
    }

    /// Arguments and term entries: rewritten only when their bound `k ≤ n`.
    fn arg(&self, s: &SingleSubst, b: &BoundBody) -> R<BoundBody> {
        if b.hat.contains(&s.target) || b.hat.level_bound() > s.level() {
            return Ok(b.clone());
        }
        let b = unclash_hat(b, &s.fv, Some(&s.target));
        Ok(BoundBody {
            body: Box::new(self.normal(s, &b.body)?),
            hat: b.hat,
        })
    }

    pub fn subst(&self, s: &SingleSubst, sigma: &Subst) -> R<Subst> {
        let _g = self.enter()?;
        sigma
            .0
            .iter()
            .map(|e| match e {
                SubstEntry::Term(b) => Ok(SubstEntry::Term(self.arg(s, b)?)),
                SubstEntry::Rename(v) if *v == s.target => {
                    Ok(SubstEntry::Term(s.replacement.clone()))
                }
                SubstEntry::Rename(v) => Ok(SubstEntry::Rename(v.clone())),
            })
            .collect::<R<_>>()
            .map(Subst)
    }

    pub fn ty(&self, s: &SingleSubst, a: &Type) -> R<Type> {
        let _g = self.enter()?;
        match a {
            Type::Atomic(p) => Ok(Type::Atomic(self.atomic_type(s, p)?)),
            Type::Pi {
                binder,
                domain,
                body,
            } => {
                let domain = self.ctx_type(s, domain)?;
                if *binder == s.target {
                    return Ok(Type::pi(binder.clone(), domain, (**body).clone()));
                }
                let (y, body) = unclash_pi(binder, body, &s.fv, &s.target);
                Ok(Type::pi(y, domain, self.ty(s, &body)?))
            }
        }
    }

    fn atomic_type(&self, s: &SingleSubst, p: &AtomicType) -> R<AtomicType> {
        let _g = self.enter()?;
        match p {
            AtomicType::App(h, arg) => Ok(self.atomic_type(s, h)?.app(self.arg(s, arg)?)),
            other => Ok(other.clone()),
        }
    }

    pub fn ctx_type(&self, s: &SingleSubst, a: &CtxType) -> R<CtxType> {
        let (decls, ty) = self.local(s, a.ctx.decls(), Some(&a.ty), true)?;
        Ok(CtxType::new(
            ty.expect("type is threaded through"),
            Context::from_distinct(decls),
        ))
    }

    /// Declarations above the target's level are left alone.
    pub fn ctx(&self, s: &SingleSubst, ctx: &Context) -> R<Context> {
        let (decls, _) = self.local(s, ctx.decls(), None, false)?;
        Ok(Context::from_distinct(decls))
    }

    fn local(
        &self,
        s: &SingleSubst,
        decls: &[Decl],
        tail: Option<&Type>,
        local_binders: bool,
    ) -> R<(Vec<Decl>, Option<Type>)> {
        let _g = self.enter()?;
        let mut rest: Vec<Decl> = decls.to_vec();
        let mut tail = tail.cloned();
        let mut out = Vec::with_capacity(rest.len());
        let mut i = 0;
        while i < rest.len() {
            let d = rest[i].clone();
            let ty = if d.var.level <= s.level() {
                self.ctx_type(s, &d.ty)?
            } else {
                d.ty.clone()
            };
            if d.var == s.target {
                out.push(Decl::new(d.var, ty));
                out.extend(rest.drain(i + 1..));
                return Ok((out, tail));
            }
            let mut var = d.var.clone();
            if local_binders && s.fv.contains(&var) {
                let taken = taken_by(&rest[i + 1..], tail.as_ref(), &s.fv, &out);
                let fresh = var.freshen(|v| taken.contains(v) || *v == s.target);
                rename_rest(&mut rest[i + 1..], tail.as_mut(), &var, &fresh);
                var = fresh;
            }
            out.push(Decl::new(var, ty));
            i += 1;
        }
        let tail = match tail {
            Some(t) => Some(self.ty(s, &t)?),
            None => None,
        };
        Ok((out, tail))
    }

    // -----------------------------------------------------------------------
    // Simultaneous substitution

    fn sim_normal(&self, s: &Sim, m: &NormalTerm) -> R<NormalTerm> {
        let _g = self.enter()?;
        match m {
            NormalTerm::Atomic(r) => Ok(self.sim_neutral(s, r)?.into_normal()),
            NormalTerm::Lam(y, body) => {
                let (y, body) = unclash_lam_many(y, body, &s.range_fv);
                let body = if y.level < s.level() {
                    self.sim_normal(&s.extend(std::slice::from_ref(&y)), &body)?
                } else {
                    self.sim_normal(s, &body)?
                };
                Ok(NormalTerm::lam(y, body))
            }
        }
    }

    fn sim_neutral(&self, s: &Sim, r: &AtomicTerm) -> R<HsubNeutralResult> {
        let _g = self.enter()?;
        match r {
            AtomicTerm::Const(_) => Ok(HsubNeutralResult::StillNeutral(r.clone())),
            AtomicTerm::Var(y, rho) => {
                let rho = self.sim_subst(s, rho)?;
                let Some(i) = s.position(y) else {
                    return Ok(HsubNeutralResult::StillNeutral(AtomicTerm::Var(
                        y.clone(),
                        rho,
                    )));
                };
                match &s.entries[i] {
                    SubstEntry::Rename(z) => Ok(HsubNeutralResult::StillNeutral(AtomicTerm::Var(
                        z.clone(),
                        rho,
                    ))),
                    SubstEntry::Term(b) => {
                        let Some(a) = &s.domain[i].approx else {
                            return Err(SubstError::UnknownApprox(y.clone()));
                        };
                        let Some(inner) = a.ctx.relabel(&b.hat) else {
                            return fails("entry binders do not match their domain");
                        };
                        let m = self.sim_normal(&Sim::new(&rho, &inner)?, &b.body)?;
                        Ok(HsubNeutralResult::Reduced(m, a.approx.clone()))
                    }
                }
            }
            AtomicTerm::App(head, arg) => {
                let head = self.sim_neutral(s, head)?;
                let arg = self.sim_arg(s, arg)?;
                match head {
                    HsubNeutralResult::StillNeutral(h) => {
                        Ok(HsubNeutralResult::StillNeutral(h.app(arg)))
                    }
                    HsubNeutralResult::Reduced(NormalTerm::Lam(y, body), arrow) => {
                        let TypeApprox::Arrow(dom, cod) = &arrow else {
                            return fails("λ reduced at a base approximation");
                        };
                        let domain = s.domain_approx();
                        if !approx_lt_ctx(&arrow, &domain) {
                            return fails("approximation guard fails at a head redex");
                        }
                        self.record(Event::Beta {
                            outer: ctx_node_count(&domain),
                            inner: ctx_type_node_count(dom),
                        });
                        let inner = SingleSubst::new(arg, y, (**dom).clone())?;
                        let m = self.normal(&inner, &body)?;
                        Ok(HsubNeutralResult::Reduced(m, (**cod).clone()))
                    }
                    HsubNeutralResult::Reduced(..) => fails("non-λ applied to an argument"),
                }
            }
        }
    }

    /// `Ψ̂ᵏ.M ↦ Ψ̂ᵏ.[⌈σ⌉k ⋈ id(Ψ̂ᵏ)]M` when `k < level(φ)`.
    fn sim_arg(&self, s: &Sim, b: &BoundBody) -> R<BoundBody> {
        let k = b.hat.level_bound();
        if k >= s.level() {
            return Ok(b.clone());
        }
        let chopped = s.chop(k);
        let b = unclash_hat(b, &chopped.range_fv, None);
        let ext = chopped.extend(&b.hat.0);
        Ok(BoundBody {
            body: Box::new(self.sim_normal(&ext, &b.body)?),
            hat: b.hat,
        })
    }

    fn sim_subst(&self, s: &Sim, rho: &Subst) -> R<Subst> {
        let _g = self.enter()?;
        rho.0
            .iter()
            .map(|e| match e {
                SubstEntry::Term(b) => Ok(SubstEntry::Term(self.sim_arg(s, b)?)),
                SubstEntry::Rename(v) => Ok(match s.position(v) {
                    Some(i) => s.entries[i].clone(),
                    None => SubstEntry::Rename(v.clone()),
                }),
            })
            .collect::<R<_>>()
            .map(Subst)
    }

    fn sim_type(&self, s: &Sim, a: &Type) -> R<Type> {
        let _g = self.enter()?;
        match a {
            Type::Atomic(p) => Ok(Type::Atomic(self.sim_atomic_type(s, p)?)),
            Type::Pi {
                binder,
                domain,
                body,
            } => {
                let domain = self.sim_ctx_type(s, domain, binder.level)?;
                let (y, body) = unclash_pi_many(binder, body, &s.range_fv);
                let body = if y.level < s.level() {
                    self.sim_type(&s.extend(std::slice::from_ref(&y)), &body)?
                } else {
                    self.sim_type(s, &body)?
                };
                Ok(Type::pi(y, domain, body))
            }
        }
    }

    fn sim_atomic_type(&self, s: &Sim, p: &AtomicType) -> R<AtomicType> {
        let _g = self.enter()?;
        match p {
            AtomicType::App(h, arg) => Ok(self.sim_atomic_type(s, h)?.app(self.sim_arg(s, arg)?)),
            other => Ok(other.clone()),
        }
    }

    /// `[σ]_φ(A[Γᵏ])`: `Γ` is rewritten declaration by declaration and `A`
    /// with `⌈σ⌉k ⋈ id(Γ̂)`.
    fn sim_ctx_type(&self, s: &Sim, a: &CtxType, k: Level) -> R<CtxType> {
        let (decls, ty) = self.sim_local(s, a.ctx.decls(), Some(&a.ty), k)?;
        Ok(CtxType::new(
            ty.expect("type is threaded through"),
            Context::from_distinct(decls),
        ))
    }

    fn sim_local(
        &self,
        s: &Sim,
        decls: &[Decl],
        tail: Option<&Type>,
        k: Level,
    ) -> R<(Vec<Decl>, Option<Type>)> {
        let _g = self.enter()?;
        let mut cur = s.chop(k);
        let mut rest: Vec<Decl> = decls.to_vec();
        let mut tail = tail.cloned();
        let mut out: Vec<Decl> = Vec::with_capacity(rest.len());
        for i in 0..rest.len() {
            let d = rest[i].clone();
            let ty = self.sim_ctx_type(&cur, &d.ty, d.var.level)?;
            let mut var = d.var.clone();
            if cur.range_fv.contains(&var) {
                let taken = taken_by(&rest[i + 1..], tail.as_ref(), &cur.range_fv, &out);
                let fresh = var.freshen(|v| taken.contains(v));
                rename_rest(&mut rest[i + 1..], tail.as_mut(), &var, &fresh);
                var = fresh;
            }
            cur = cur.extend(std::slice::from_ref(&var));
            out.push(Decl::new(var, ty));
        }
        let tail = match tail {
            Some(t) => Some(self.sim_type(&cur, &t)?),
            None => None,
        };
        Ok((out, tail))
    }
}

/// A simultaneous substitution paired with its approximate domain.
#[derive(Debug, Clone)]
struct Sim {
    entries: Vec<SubstEntry>,
    domain: Vec<ApproxEntry>,
    range_fv: BTreeSet<Var>,
}

impl Sim {
    fn new(sigma: &Subst, domain: &CtxApprox) -> R<Sim> {
        if sigma.len() != domain.len() {
            return fails(format!(
                "substitution has {} entries but its domain has {}",
                sigma.len(),
                domain.len()
            ));
        }
        Ok(Sim::from_parts(sigma.0.clone(), domain.0.clone()))
    }

    fn from_parts(entries: Vec<SubstEntry>, domain: Vec<ApproxEntry>) -> Sim {
        let range_fv = Subst(entries.clone()).free_vars();
        Sim {
            entries,
            domain,
            range_fv,
        }
    }

    fn level(&self) -> Level {
        self.domain
            .iter()
            .map(|e| e.var.level.succ())
            .max()
            .unwrap_or(Level::ZERO)
    }

    fn position(&self, v: &Var) -> Option<usize> {
        self.domain.iter().rposition(|e| &e.var == v)
    }

    fn domain_approx(&self) -> CtxApprox {
        CtxApprox(self.domain.clone())
    }

    fn pairs(&self) -> Vec<(SubstEntry, ApproxEntry)> {
        self.entries
            .iter()
            .cloned()
            .zip(self.domain.iter().cloned())
            .collect()
    }

    fn chop(&self, k: Level) -> Sim {
        let pairs = self.pairs();
        let kept = chop_by_level(&pairs, k, |p| p.1.var.level).len();
        Sim::from_parts(self.entries[..kept].to_vec(), self.domain[..kept].to_vec())
    }

    /// `σ ⋈ id(vs)` with unknown approximations; an extended variable
    /// shadows any domain entry of the same name.
    fn extend(&self, vs: &[Var]) -> Sim {
        let left: Vec<(SubstEntry, ApproxEntry)> = self
            .pairs()
            .into_iter()
            .filter(|(_, d)| !vs.contains(&d.var))
            .collect();
        let right: Vec<(SubstEntry, ApproxEntry)> = vs
            .iter()
            .map(|v| {
                (
                    SubstEntry::Rename(v.clone()),
                    ApproxEntry {
                        var: v.clone(),
                        approx: None,
                    },
                )
            })
            .collect();
        let (entries, domain) = merge_by_level(&left, &right, |p| p.1.var.level)
            .into_iter()
            .unzip();
        Sim::from_parts(entries, domain)
    }
}

// ---------------------------------------------------------------------------
// Capture avoidance

fn unclash_lam(
    y: &Var,
    body: &NormalTerm,
    avoid: &BTreeSet<Var>,
    target: &Var,
) -> (Var, NormalTerm) {
    if !avoid.contains(y) {
        return (y.clone(), body.clone());
    }
    let used = body.all_vars();
    let fresh = y.freshen(|v| avoid.contains(v) || used.contains(v) || v == target);
    (fresh.clone(), rename_normal(body, y, &fresh))
}

fn unclash_lam_many(y: &Var, body: &NormalTerm, avoid: &BTreeSet<Var>) -> (Var, NormalTerm) {
    unclash_lam(y, body, avoid, y)
}

fn unclash_pi(y: &Var, body: &Type, avoid: &BTreeSet<Var>, target: &Var) -> (Var, Type) {
    if !avoid.contains(y) {
        return (y.clone(), body.clone());
    }
    let used = body.all_vars();
    let fresh = y.freshen(|v| avoid.contains(v) || used.contains(v) || v == target);
    (fresh.clone(), rename_type(body, y, &fresh))
}

fn unclash_pi_many(y: &Var, body: &Type, avoid: &BTreeSet<Var>) -> (Var, Type) {
    unclash_pi(y, body, avoid, y)
}

/// Renames hat binders that occur in `avoid`.
fn unclash_hat(b: &BoundBody, avoid: &BTreeSet<Var>, target: Option<&Var>) -> BoundBody {
    if !b.hat.0.iter().any(|v| avoid.contains(v)) {
        return b.clone();
    }
    let mut used = b.all_vars();
    let mut hat = b.hat.0.clone();
    let mut body = (*b.body).clone();
    for v in hat.iter_mut() {
        if avoid.contains(v) {
            let fresh = v.freshen(|w| avoid.contains(w) || used.contains(w) || Some(w) == target);
            body = rename_normal(&body, v, &fresh);
            used.insert(fresh.clone());
            *v = fresh;
        }
    }
    BoundBody {
        hat: HatContext(hat),
        body: Box::new(body),
    }
}

fn taken_by(
    rest: &[Decl],
    tail: Option<&Type>,
    avoid: &BTreeSet<Var>,
    done: &[Decl],
) -> BTreeSet<Var> {
    let mut taken = avoid.clone();
    for d in rest.iter().chain(done) {
        taken.insert(d.var.clone());
        d.ty.collect_all(&mut taken);
    }
    if let Some(t) = tail {
        t.collect_all(&mut taken);
    }
    taken
}

fn rename_rest(rest: &mut [Decl], tail: Option<&mut Type>, from: &Var, to: &Var) {
    for d in rest.iter_mut() {
        d.ty = rename_ctx_type(&d.ty, from, to);
        if d.var == *from {
            // shadowed from here on
            return;
        }
    }
    if let Some(t) = tail {
        *t = rename_type(t, from, to);
    }
}

// ---------------------------------------------------------------------------
// Renaming a free variable to one that is fresh for the subject

pub fn rename_normal(m: &NormalTerm, from: &Var, to: &Var) -> NormalTerm {
    match m {
        NormalTerm::Atomic(r) => NormalTerm::Atomic(rename_atomic(r, from, to)),
        NormalTerm::Lam(y, _) if y == from => m.clone(),
        NormalTerm::Lam(y, b) => NormalTerm::lam(y.clone(), rename_normal(b, from, to)),
    }
}

pub fn rename_atomic(r: &AtomicTerm, from: &Var, to: &Var) -> AtomicTerm {
    match r {
        AtomicTerm::Var(y, s) => {
            let y = if y == from { to.clone() } else { y.clone() };
            AtomicTerm::Var(y, rename_subst(s, from, to))
        }
        AtomicTerm::Const(_) => r.clone(),
        AtomicTerm::App(h, b) => rename_atomic(h, from, to).app(rename_body(b, from, to)),
    }
}

pub fn rename_body(b: &BoundBody, from: &Var, to: &Var) -> BoundBody {
    if b.hat.contains(from) {
        return b.clone();
    }
    BoundBody {
        hat: b.hat.clone(),
        body: Box::new(rename_normal(&b.body, from, to)),
    }
}

pub fn rename_subst(s: &Subst, from: &Var, to: &Var) -> Subst {
    Subst(
        s.0.iter()
            .map(|e| match e {
                SubstEntry::Term(b) => SubstEntry::Term(rename_body(b, from, to)),
                SubstEntry::Rename(y) if y == from => SubstEntry::Rename(to.clone()),
                SubstEntry::Rename(y) => SubstEntry::Rename(y.clone()),
            })
            .collect(),
    )
}

pub fn rename_type(a: &Type, from: &Var, to: &Var) -> Type {
    match a {
        Type::Atomic(p) => Type::Atomic(rename_atomic_type(p, from, to)),
        Type::Pi {
            binder,
            domain,
            body,
        } => {
            let domain = rename_ctx_type(domain, from, to);
            let body = if binder == from {
                (**body).clone()
            } else {
                rename_type(body, from, to)
            };
            Type::pi(binder.clone(), domain, body)
        }
    }
}

fn rename_atomic_type(p: &AtomicType, from: &Var, to: &Var) -> AtomicType {
    match p {
        AtomicType::App(h, b) => rename_atomic_type(h, from, to).app(rename_body(b, from, to)),
        other => other.clone(),
    }
}

pub fn rename_ctx_type(a: &CtxType, from: &Var, to: &Var) -> CtxType {
    let mut decls = a.ctx.decls().to_vec();
    for d in decls.iter_mut() {
        d.ty = rename_ctx_type(&d.ty, from, to);
        if d.var == *from {
            return CtxType::new(a.ty.clone(), Context::from_distinct(decls));
        }
    }
    CtxType::new(rename_type(&a.ty, from, to), Context::from_distinct(decls))
}

/// Renames free occurrences in a context whose declarations bind each other.
pub fn rename_ctx(c: &Context, from: &Var, to: &Var) -> Context {
    let mut decls = c.decls().to_vec();
    rename_rest(&mut decls, None, from, to);
    Context::from_distinct(decls)
}

// ---------------------------------------------------------------------------
// Entry points with a fresh default budget

macro_rules! with_default_budget {
    ($(#[$m:meta])* $name:ident, $method:ident, ($($arg:ident : $ty:ty),*) -> $ret:ty) => {
        $(#[$m])*
        pub fn $name($($arg: $ty),*) -> R<$ret> {
            let budget = Budget::default();
            Engine::new(&budget).$method($($arg),*)
        }
    };
}

with_default_budget!(hsub_normal, normal, (s: &SingleSubst, m: &NormalTerm) -> NormalTerm);
with_default_budget!(hsub_neutral, neutral, (s: &SingleSubst, r: &AtomicTerm) -> HsubNeutralResult);
with_default_budget!(hsub_subst, subst, (s: &SingleSubst, sigma: &Subst) -> Subst);
with_default_budget!(hsub_ctx, ctx, (s: &SingleSubst, ctx: &Context) -> Context);
with_default_budget!(hsub_type, ty, (s: &SingleSubst, a: &Type) -> Type);
with_default_budget!(hsub_ctx_type, ctx_type, (s: &SingleSubst, a: &CtxType) -> CtxType);

impl Engine<'_> {
    pub fn simsub_normal(
        &self,
        sigma: &Subst,
        domain: &CtxApprox,
        m: &NormalTerm,
    ) -> R<NormalTerm> {
        self.sim_normal(&Sim::new(sigma, domain)?, m)
    }

    pub fn simsub_neutral(
        &self,
        sigma: &Subst,
        domain: &CtxApprox,
        r: &AtomicTerm,
    ) -> R<HsubNeutralResult> {
        self.sim_neutral(&Sim::new(sigma, domain)?, r)
    }

    pub fn simsub_subst(&self, sigma: &Subst, domain: &CtxApprox, rho: &Subst) -> R<Subst> {
        self.sim_subst(&Sim::new(sigma, domain)?, rho)
    }

    pub fn simsub_type(&self, sigma: &Subst, domain: &CtxApprox, a: &Type) -> R<Type> {
        self.sim_type(&Sim::new(sigma, domain)?, a)
    }

    /// `[σ]_φ(Γᵏ)`; `k` is the level bound of the context being rewritten.
    pub fn simsub_ctx(
        &self,
        sigma: &Subst,
        domain: &CtxApprox,
        ctx: &Context,
        k: Level,
    ) -> R<Context> {
        let (decls, _) = self.sim_local(&Sim::new(sigma, domain)?, ctx.decls(), None, k)?;
        Ok(Context::from_distinct(decls))
    }

    /// `[σ]_φ(A[Γᵏ])` for a variable of level `k`.
    pub fn simsub_ctx_type(
        &self,
        sigma: &Subst,
        domain: &CtxApprox,
        a: &CtxType,
        k: Level,
    ) -> R<CtxType> {
        self.sim_ctx_type(&Sim::new(sigma, domain)?, a, k)
    }
}

with_default_budget!(simsub_normal, simsub_normal, (sigma: &Subst, domain: &CtxApprox, m: &NormalTerm) -> NormalTerm);
with_default_budget!(simsub_neutral, simsub_neutral, (sigma: &Subst, domain: &CtxApprox, r: &AtomicTerm) -> HsubNeutralResult);
with_default_budget!(simsub_subst, simsub_subst, (sigma: &Subst, domain: &CtxApprox, rho: &Subst) -> Subst);
with_default_budget!(simsub_type, simsub_type, (sigma: &Subst, domain: &CtxApprox, a: &Type) -> Type);
with_default_budget!(simsub_ctx, simsub_ctx, (sigma: &Subst, domain: &CtxApprox, ctx: &Context, k: Level) -> Context);
with_default_budget!(simsub_ctx_type, simsub_ctx_type, (sigma: &Subst, domain: &CtxApprox, a: &CtxType, k: Level) -> CtxType);
