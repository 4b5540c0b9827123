//! An independent reference for substitution.
//!
//! Canonical terms are embedded into an untyped λ-calculus where bound
//! bodies become λ-abstractions and closures become applications. There,
//! substitution is naive and textual and normalization is ordinary
//! leftmost-outermost β-reduction. Nothing here shares code with `hsub`.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::approx::{erase_type, CtxApprox, CtxTypeApprox, TypeApprox};
use crate::syntax::{
    AtomicTerm, BoundBody, ConstClass, Name, NormalTerm, Signature, Subst, SubstEntry, Var,
};

mod generate;

pub use generate::{
    fixed_signature, generate_instance, mentions_meta, Generator, HsubInstance, Instance,
    SimsubInstance,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawTerm {
    Var(Var),
    Const(Name),
    Lam(Var, Box<RawTerm>),
    App(Box<RawTerm>, Box<RawTerm>),
    /// A variable applied to the entries of its closure.
    Closure(Var, Vec<RawTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("term contains a redex")]
    NotNormal,
    #[error("normalization exceeded {0} steps")]
    BudgetExceeded(usize),
    #[error("readback failed: {0}")]
    Readback(String),
}

type R<T> = Result<T, OracleError>;

pub const DEFAULT_STEPS: usize = 100_000;

impl RawTerm {
    fn app(self, arg: RawTerm) -> RawTerm {
        RawTerm::App(Box::new(self), Box::new(arg))
    }

    fn lams(hat: &[Var], body: RawTerm) -> RawTerm {
        hat.iter()
            .rev()
            .fold(body, |b, x| RawTerm::Lam(x.clone(), Box::new(b)))
    }

    fn spine(&self) -> (&RawTerm, Vec<&RawTerm>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let RawTerm::App(h, a) = cur {
            args.push(&**a);
            cur = h;
        }
        args.reverse();
        (cur, args)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut var = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            RawTerm::Var(v) => var(v, bound),
            RawTerm::Const(_) => {}
            RawTerm::Lam(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            RawTerm::App(h, a) => {
                h.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            RawTerm::Closure(x, es) => {
                var(x, bound);
                for e in es {
                    e.collect_free(bound, out);
                }
            }
        }
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        match self {
            RawTerm::Var(v) => {
                out.insert(v.clone());
            }
            RawTerm::Const(_) => {}
            RawTerm::Lam(x, b) => {
                out.insert(x.clone());
                b.collect_all(out);
            }
            RawTerm::App(h, a) => {
                h.collect_all(out);
                a.collect_all(out);
            }
            RawTerm::Closure(x, es) => {
                out.insert(x.clone());
                es.iter().for_each(|e| e.collect_all(out));
            }
        }
    }

    /// Closures as plain applications, the form used for comparison.
    pub fn flatten(&self) -> RawTerm {
        match self {
            RawTerm::Var(_) | RawTerm::Const(_) => self.clone(),
            RawTerm::Lam(x, b) => RawTerm::Lam(x.clone(), Box::new(b.flatten())),
            RawTerm::App(h, a) => h.flatten().app(a.flatten()),
            RawTerm::Closure(x, es) => es
                .iter()
                .fold(RawTerm::Var(x.clone()), |h, e| h.app(e.flatten())),
        }
    }
}

// ---------------------------------------------------------------------------
// Embedding

pub fn embed(m: &NormalTerm) -> RawTerm {
    match m {
        NormalTerm::Lam(x, b) => RawTerm::Lam(x.clone(), Box::new(embed(b))),
        NormalTerm::Atomic(r) => embed_atomic(r),
    }
}

pub fn embed_atomic(r: &AtomicTerm) -> RawTerm {
    match r {
        AtomicTerm::Var(x, s) if s.is_empty() && x.level.0 == 0 => RawTerm::Var(x.clone()),
        AtomicTerm::Var(x, s) => RawTerm::Closure(x.clone(), embed_subst(s)),
        AtomicTerm::Const(c) => RawTerm::Const(c.clone()),
        AtomicTerm::App(h, a) => embed_atomic(h).app(embed_body(a)),
    }
}

pub fn embed_body(b: &BoundBody) -> RawTerm {
    RawTerm::lams(&b.hat.0, embed(&b.body))
}

pub fn embed_subst(s: &Subst) -> Vec<RawTerm> {
    s.0.iter()
        .map(|e| match e {
            SubstEntry::Term(b) => embed_body(b),
            SubstEntry::Rename(y) => RawTerm::Var(y.clone()),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Naive substitution and normalization

/// Parallel capture-avoiding substitution.
pub fn subst(t: &RawTerm, map: &[(Var, RawTerm)]) -> RawTerm {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        RawTerm::Var(v) => match map.iter().find(|(x, _)| x == v) {
            Some((_, s)) => s.clone(),
            None => t.clone(),
        },
        RawTerm::Const(_) => t.clone(),
        RawTerm::App(h, a) => subst(h, map).app(subst(a, map)),
        RawTerm::Closure(x, es) => {
            let es: Vec<RawTerm> = es.iter().map(|e| subst(e, map)).collect();
            match map.iter().find(|(y, _)| y == x) {
                Some((_, s)) => es.into_iter().fold(s.clone(), RawTerm::app),
                None => RawTerm::Closure(x.clone(), es),
            }
        }
        RawTerm::Lam(z, b) => {
            let fv_b = b.free_vars();
            let live: Vec<(Var, RawTerm)> = map
                .iter()
                .filter(|(x, _)| x != z && fv_b.contains(x))
                .cloned()
                .collect();
            if live.is_empty() {
                return t.clone();
            }
            let captured = live.iter().any(|(_, s)| s.free_vars().contains(z));
            if !captured {
                return RawTerm::Lam(z.clone(), Box::new(subst(b, &live)));
            }
            let mut avoid = fv_b;
            for (x, s) in &live {
                avoid.insert(x.clone());
                s.collect_all(&mut avoid);
            }
            let fresh = z.freshen(|v| avoid.contains(v));
            let mut live = live;
            live.push((z.clone(), RawTerm::Var(fresh.clone())));
            RawTerm::Lam(fresh, Box::new(subst(b, &live)))
        }
    }
}

/// Leftmost-outermost β-normalization.
pub fn normalize(t: &RawTerm, max_steps: usize) -> R<RawTerm> {
    let mut steps = 0;
    nf(t.clone(), &mut steps, max_steps)
}

fn nf(t: RawTerm, steps: &mut usize, max: usize) -> R<RawTerm> {
    match t {
        RawTerm::Lam(x, b) => Ok(RawTerm::Lam(x, Box::new(nf(*b, steps, max)?))),
        RawTerm::Var(_) | RawTerm::Const(_) => Ok(t),
        RawTerm::Closure(x, es) => Ok(RawTerm::Closure(
            x,
            es.into_iter()
                .map(|e| nf(e, steps, max))
                .collect::<R<_>>()?,
        )),
        RawTerm::App(..) => {
            let mut t = t;
            loop {
                let (head, args) = t.spine();
                let RawTerm::Lam(x, b) = head else { break };
                *steps += 1;
                if *steps > max {
                    return Err(OracleError::BudgetExceeded(max));
                }
                let reduced = subst(b, &[(x.clone(), args[0].clone())]);
                t = args[1..].iter().fold(reduced, |h, a| h.app((*a).clone()));
                if !matches!(t, RawTerm::App(..)) {
                    return nf(t, steps, max);
                }
            }
            let (head, args) = t.spine();
            let head = nf(head.clone(), steps, max)?;
            args.into_iter()
                .try_fold(head, |acc, a| Ok(acc.app(nf(a.clone(), steps, max)?)))
        }
    }
}

pub fn naive_subst_normalize(r: &RawTerm, v: &Var, s: &RawTerm) -> R<RawTerm> {
    normalize(&subst(r, &[(v.clone(), s.clone())]), DEFAULT_STEPS)
}

pub fn naive_simsub_normalize(r: &RawTerm, map: &[(Var, RawTerm)]) -> R<RawTerm> {
    normalize(&subst(r, map), DEFAULT_STEPS)
}

/// α-equality after flattening closures.
pub fn raw_alpha_eq(a: &RawTerm, b: &RawTerm) -> bool {
    fn go<'a>(a: &'a RawTerm, b: &'a RawTerm, env: &mut Vec<(&'a Var, &'a Var)>) -> bool {
        match (a, b) {
            (RawTerm::Var(x), RawTerm::Var(y)) => {
                match env.iter().rev().find(|(l, r)| *l == x || *r == y) {
                    Some((l, r)) => *l == x && *r == y,
                    None => x == y,
                }
            }
            (RawTerm::Const(c), RawTerm::Const(d)) => c == d,
            (RawTerm::Lam(x, m), RawTerm::Lam(y, n)) => {
                env.push((x, y));
                let ok = go(m, n, env);
                env.pop();
                ok
            }
            (RawTerm::App(f, a), RawTerm::App(g, b)) => go(f, g, env) && go(a, b, env),
            _ => false,
        }
    }
    go(&a.flatten(), &b.flatten(), &mut Vec::new())
}

// ---------------------------------------------------------------------------
// Readback

/// Reads β-normal raw terms back into canonical form, guided by
/// approximate types.
pub struct Readback {
    consts: HashMap<Name, TypeApprox>,
    scope: Vec<(Var, CtxTypeApprox)>,
}

impl Readback {
    pub fn new(sig: &Signature) -> Readback {
        let consts = sig
            .entries()
            .iter()
            .filter(|e| e.class == ConstClass::Term)
            .filter_map(|e| Some((e.name.clone(), erase_type(&e.ty).ok()?)))
            .collect();
        Readback {
            consts,
            scope: Vec::new(),
        }
    }

    /// Variables in scope, outermost first.
    pub fn with_scope(mut self, scope: &CtxApprox) -> R<Readback> {
        for e in &scope.0 {
            let a = e
                .approx
                .clone()
                .ok_or_else(|| OracleError::Readback(format!("{} has no type", e.var)))?;
            self.scope.push((e.var.clone(), a));
        }
        Ok(self)
    }

    fn find(&self, x: &Var) -> R<CtxTypeApprox> {
        self.scope
            .iter()
            .rev()
            .find(|(v, _)| v == x)
            .map(|(_, a)| a.clone())
            .ok_or_else(|| OracleError::Readback(format!("{x} is not in scope")))
    }

    fn fresh(&self, base: &Var, r: &RawTerm) -> Var {
        let mut used = BTreeSet::new();
        r.collect_all(&mut used);
        base.freshen(|v| used.contains(v) || self.scope.iter().any(|(w, _)| w == v))
    }

    pub fn normal(&mut self, r: &RawTerm, a: &TypeApprox) -> R<NormalTerm> {
        match a {
            TypeApprox::Arrow(dom, cod) => {
                let (z, body) = match r {
                    RawTerm::Lam(z, b) => (z.clone(), (**b).clone()),
                    _ => {
                        let w = self.fresh(&Var::new("w", dom.ctx.hat().level_bound().0), r);
                        let arg = eta_var(&w, dom)?;
                        (w, r.clone().app(arg))
                    }
                };
                self.scope.push((z.clone(), (**dom).clone()));
                let m = self.normal(&body, cod);
                self.scope.pop();
                Ok(NormalTerm::lam(z, m?))
            }
            TypeApprox::Base(_) => {
                let (got, r) = self.atomic(r)?;
                if got != *a {
                    return Err(OracleError::Readback(format!("expected {a}, found {got}")));
                }
                Ok(r.into())
            }
        }
    }

    fn atomic(&mut self, r: &RawTerm) -> R<(TypeApprox, AtomicTerm)> {
        let (head, mut args) = r.spine();
        let (mut ty, mut out) = match head {
            RawTerm::Lam(..) => return Err(OracleError::NotNormal),
            RawTerm::App(..) => unreachable!("spine heads are never applications"),
            RawTerm::Const(c) => {
                let a = self
                    .consts
                    .get(c)
                    .cloned()
                    .ok_or_else(|| OracleError::Readback(format!("unknown constant {c}")))?;
                (a, AtomicTerm::Const(c.clone()))
            }
            RawTerm::Var(x) | RawTerm::Closure(x, _) => {
                let mut es: Vec<RawTerm> = match head {
                    RawTerm::Closure(_, es) => es.clone(),
                    _ => Vec::new(),
                };
                // after substitution closure entries may arrive as arguments
                let want = self.find(x)?.ctx.len();
                let take = want.saturating_sub(es.len()).min(args.len());
                es.extend(args.drain(..take).cloned());
                self.closure(x, &es)?
            }
        };
        for arg in args {
            let TypeApprox::Arrow(dom, cod) = ty else {
                return Err(OracleError::Readback("too many arguments".into()));
            };
            out = out.app(self.bound(arg, &dom)?);
            ty = *cod;
        }
        Ok((ty, out))
    }

    fn closure(&mut self, x: &Var, es: &[RawTerm]) -> R<(TypeApprox, AtomicTerm)> {
        let ct = self.find(x)?;
        if ct.ctx.len() != es.len() {
            return Err(OracleError::Readback(format!(
                "{x} expects {} closure entries, found {}",
                ct.ctx.len(),
                es.len()
            )));
        }
        let mut entries = Vec::new();
        for (e, d) in es.iter().zip(&ct.ctx.0) {
            let bare = match e {
                RawTerm::Var(w) => Some(w),
                RawTerm::Closure(w, inner) if inner.is_empty() => Some(w),
                _ => None,
            };
            match bare {
                Some(w) if w.level == d.var.level => entries.push(SubstEntry::Rename(w.clone())),
                _ => {
                    let a = d
                        .approx
                        .as_ref()
                        .ok_or_else(|| OracleError::Readback(format!("{} has no type", d.var)))?;
                    entries.push(SubstEntry::Term(self.bound(e, a)?));
                }
            }
        }
        Ok((ct.approx, AtomicTerm::Var(x.clone(), Subst(entries))))
    }

    fn bound(&mut self, r: &RawTerm, a: &CtxTypeApprox) -> R<BoundBody> {
        let mut hat = Vec::new();
        let mut cur = r;
        for d in &a.ctx.0 {
            let RawTerm::Lam(z, b) = cur else {
                return Err(OracleError::Readback(format!(
                    "argument binds fewer than {} variables",
                    a.ctx.len()
                )));
            };
            if z.level != d.var.level {
                return Err(OracleError::Readback(format!("{z} stands for {}", d.var)));
            }
            hat.push(z.clone());
            cur = b;
        }
        let local = a
            .ctx
            .relabel(&crate::syntax::HatContext(hat.clone()))
            .ok_or_else(|| OracleError::Readback("hat does not fit".into()))?;
        let depth = self.scope.len();
        for e in &local.0 {
            let t = e
                .approx
                .clone()
                .ok_or_else(|| OracleError::Readback(format!("{} has no type", e.var)))?;
            self.scope.push((e.var.clone(), t));
        }
        let m = self.normal(cur, &a.approx);
        self.scope.truncate(depth);
        Ok(BoundBody::new(hat, m?))
    }
}

/// The η-expansion of a variable at a contextual type, at the level of its
/// local context; deeper expansion happens when the result is read back.
fn eta_var(w: &Var, a: &CtxTypeApprox) -> R<RawTerm> {
    let entries = a
        .ctx
        .0
        .iter()
        .map(|e| {
            let t = e
                .approx
                .as_ref()
                .ok_or_else(|| OracleError::Readback(format!("{} has no type", e.var)))?;
            eta_var(&e.var, t)
        })
        .collect::<R<Vec<_>>>()?;
    let head = if entries.is_empty() && w.level.0 == 0 {
        RawTerm::Var(w.clone())
    } else {
        RawTerm::Closure(w.clone(), entries)
    };
    Ok(RawTerm::lams(&a.ctx.hat().0, head))
}

pub fn readback(sig: &Signature, scope: &CtxApprox, r: &RawTerm, a: &TypeApprox) -> R<NormalTerm> {
    Readback::new(sig).with_scope(scope)?.normal(r, a)
}

// ---------------------------------------------------------------------------
// Cross-checks

/// Compares hereditary substitution against the naive pipeline on one
/// instance. The error describes the first disagreement.
pub fn cross_check_hsub(sig: &Signature, inst: &HsubInstance) -> Result<NormalTerm, String> {
    let bound = crate::approx::erase_ctx_type(&inst.bound).map_err(|e| e.to_string())?;
    let s = crate::hsub::SingleSubst::new(inst.replacement.clone(), inst.target.clone(), bound)
        .map_err(|e| e.to_string())?;
    let got = crate::hsub::hsub_normal(&s, &inst.subject).map_err(|e| format!("hsub: {e}"))?;
    let naive = naive_subst_normalize(
        &embed(&inst.subject),
        &inst.target,
        &embed_body(&inst.replacement),
    )
    .map_err(|e| format!("oracle: {e}"))?;
    agree(sig, &inst.ctx, &got, &naive, &inst.subject_ty)?;
    Ok(got)
}

pub fn cross_check_simsub(sig: &Signature, inst: &SimsubInstance) -> Result<NormalTerm, String> {
    let dom = crate::approx::erase_ctx(&inst.domain).map_err(|e| e.to_string())?;
    let got = crate::hsub::simsub_normal(&inst.subst, &dom, &inst.subject)
        .map_err(|e| format!("simsub: {e}"))?;
    let map: Vec<(Var, RawTerm)> = inst
        .domain
        .vars()
        .cloned()
        .zip(embed_subst(&inst.subst))
        .collect();
    let naive =
        naive_simsub_normalize(&embed(&inst.subject), &map).map_err(|e| format!("oracle: {e}"))?;
    agree(sig, &inst.ctx, &got, &naive, &inst.subject_ty)?;
    Ok(got)
}

fn agree(
    sig: &Signature,
    ctx: &crate::syntax::Context,
    got: &NormalTerm,
    naive: &RawTerm,
    ty: &crate::syntax::Type,
) -> Result<(), String> {
    if !raw_alpha_eq(&embed(got), naive) {
        return Err(format!("hsub gave {got}, oracle gave {naive:?}"));
    }
    let scope = crate::approx::erase_ctx(ctx).map_err(|e| e.to_string())?;
    let a = erase_type(ty).map_err(|e| e.to_string())?;
    readback(sig, &scope, naive, &a).map_err(|e| format!("{e} for {naive:?}"))?;
    Ok(())
}
