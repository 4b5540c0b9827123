//! Random well-typed instances over a small fixed signature.
//!
//! Generation follows the checking rules in reverse: pick a head whose type
//! ends in the wanted family, generate its closure and arguments against the
//! instantiated domains, and keep the result when its type matches. The
//! checker computes every intermediate type, so instances are well-typed by
//! construction; tests still re-check them.

use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::erase_ctx;
use crate::budget::Budget;
use crate::contexts::{chop_ctx, extend_ctx, lookup, merge_ctx};
use crate::hsub::{rename_type, Engine};
use crate::parse::{parse, parse_context};
use crate::syntax::{
    eta_contract, AtomicTerm, AtomicType, BoundBody, ConstClass, Context, CtxType, Decl, Name,
    NormalTerm, Scoped, Subst, SubstEntry, Type, Var,
};
use crate::typer::{check_signature, equal_atomic, equal_ctx_type, CheckedSignature, Checker};

const SIGNATURE: &str = "
i : type.  o : type.  p : {x : i} type.
c : i.  d : i.  f : {x : i} i.  g : {x : i} {y : i} i.
hof : {h : {x : i} i} i.  all : {h : {x : i} o} o.
tt : o.  imp : {x : o} {y : o} o.
mk : {x : i} p x.  use : {x : i} {e : p x} o.
box : {X^1 : i [y : i]} i.
box2 : {Y^2 : i [X^1 : i [y : i]]} i.
";

/// Contextual types available for declarations, by level. `p ?` asks for a
/// generated index.
const MENU: [&[&str]; 3] = [
    &["i", "o", "{x : i} i", "{x : i} o", "p c", "p ?"],
    &[
        "i [y : i]",
        "o [y : i, z : i]",
        "i [h : {x : i} i]",
        "i",
        "p y [y : i]",
    ],
    &["i [X^1 : i [y : i]]", "o [X^1 : i [y : i], z : i]"],
];

const TARGETS: &[&str] = &["i", "o", "i", "{y : i} o", "p ?"];

pub fn fixed_signature() -> CheckedSignature {
    let sig = parse(SIGNATURE)
        .and_then(|f| f.signature())
        .expect("fixed signature parses");
    check_signature(&sig).expect("fixed signature checks")
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub sig: CheckedSignature,
    pub ctx: Context,
    pub term: NormalTerm,
    pub ty: Type,
}

/// `Ψ ⋈ x:A[Φ] ⊢ M ⇐ B` together with `⌈Ψ⌉n ⋈ Φ ⊢ N ⇐ A`.
#[derive(Debug, Clone)]
pub struct HsubInstance {
    pub ctx: Context,
    pub target: Var,
    pub bound: CtxType,
    pub replacement: BoundBody,
    pub subject: NormalTerm,
    pub subject_ty: Type,
}

impl HsubInstance {
    pub fn subject_ctx(&self) -> Context {
        extend_ctx(&self.ctx, self.target.clone(), self.bound.clone())
            .expect("target is fresh for the context")
    }
}

/// `Φ ⊢ M ⇐ B` together with `Ψ ⊢ σ ⇐ Φ`.
#[derive(Debug, Clone)]
pub struct SimsubInstance {
    pub ctx: Context,
    pub domain: Context,
    pub subst: Subst,
    pub subject: NormalTerm,
    pub subject_ty: Type,
}

#[derive(Clone)]
enum Head {
    Var(Var),
    Const(Name),
}

pub struct Generator {
    rng: ChaCha8Rng,
    sig: Rc<CheckedSignature>,
    size: usize,
    level: u32,
    names: usize,
    focus: Option<Var>,
}

impl Generator {
    pub fn new(seed: u64, size: usize, level: u32) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            sig: Rc::new(fixed_signature()),
            size: size.max(1),
            level: level.min(2),
            names: 0,
            focus: None,
        }
    }

    pub fn signature(&self) -> &CheckedSignature {
        &self.sig
    }

    fn binder(&mut self, level: crate::syntax::Level) -> Var {
        self.names += 1;
        Var::new(&format!("b{}", self.names), level.0)
    }

    /// A well-formed context of at most four declarations named `prefix1`, …
    pub fn context(&mut self, prefix: &str) -> Context {
        let len = self.rng.gen_range(0..=4);
        let mut levels: Vec<u32> = (0..len)
            .map(|_| self.rng.gen_range(0..=self.level))
            .collect();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        let mut ctx = Context::empty();
        for (i, level) in levels.into_iter().enumerate() {
            let var = Var::new(&format!("{prefix}{}", i + 1), level);
            let ty = self.menu_type(&ctx, MENU[level as usize], level);
            ctx = extend_ctx(&ctx, var, ty).expect("generated names are distinct");
        }
        ctx
    }

    /// A context `Γ` such that `scope ⋈ Γ` is well-formed, with every
    /// declaration below level `below`.
    pub fn context_in(&mut self, scope: &Context, prefix: &str, below: u32) -> Context {
        let top = self.level.min(below.saturating_sub(1));
        if below == 0 {
            return Context::empty();
        }
        let len = self.rng.gen_range(0..=3);
        let mut levels: Vec<u32> = (0..len).map(|_| self.rng.gen_range(0..=top)).collect();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        let mut ctx = Context::empty();
        for (i, level) in levels.into_iter().enumerate() {
            let var = Var::new(&format!("{prefix}{}", i + 1), level);
            let inner = merge_ctx(&chop_ctx(scope, crate::syntax::Level(level)), &ctx)
                .expect("prefixes keep names apart");
            let ty = self.menu_type(&inner, MENU[level as usize], level);
            ctx = extend_ctx(&ctx, var, ty).expect("generated names are distinct");
        }
        ctx
    }

    /// A contextual type for a level-`level` declaration over `scope`.
    pub fn decl_type(&mut self, scope: &Context, level: u32) -> CtxType {
        let level = level.min(2);
        self.menu_type(scope, MENU[level as usize], level)
    }

    /// Uniform choice from `0..=hi`, for tests that need extra randomness.
    pub fn pick(&mut self, hi: u32) -> u32 {
        self.rng.gen_range(0..=hi)
    }

    /// A target type for a term in `scope`.
    pub fn target_type(&mut self, scope: &Context) -> Type {
        self.target(scope)
    }

    fn menu_type(&mut self, scope: &Context, menu: &[&str], level: u32) -> CtxType {
        let src = *menu.choose(&mut self.rng).expect("menus are non-empty");
        if src == "p ?" {
            let mut fuel = 2;
            let t = self.term_or_fallback(scope, &Type::constant("i"), &mut fuel);
            return CtxType::plain(AtomicType::constant("p").app(BoundBody::closed(t)).into());
        }
        let decl = parse_context(&format!("{} : {src}", Var::new("q", level)))
            .expect("menu entries parse");
        decl.decls()[0].ty.clone()
    }

    fn target(&mut self, scope: &Context) -> Type {
        self.menu_type(scope, TARGETS, 0).ty
    }

    /// A term of type `a` in `psi`, within the size bound when possible.
    pub fn term(&mut self, psi: &Context, a: &Type) -> NormalTerm {
        let mut best: Option<NormalTerm> = None;
        for _ in 0..8 {
            let mut fuel = self.size as i64;
            let m = self.term_or_fallback(psi, a, &mut fuel);
            if m.size() <= self.size {
                return m;
            }
            if best.as_ref().is_none_or(|b| m.size() < b.size()) {
                best = Some(m);
            }
        }
        best.expect("at least one attempt")
    }

    fn term_or_fallback(&mut self, psi: &Context, a: &Type, fuel: &mut i64) -> NormalTerm {
        self.normal(psi, a, fuel)
            .unwrap_or_else(|| panic!("no term of type {a} in {psi}"))
    }

    fn normal(&mut self, psi: &Context, a: &Type, fuel: &mut i64) -> Option<NormalTerm> {
        match a {
            Type::Pi {
                binder,
                domain,
                body,
            } => {
                *fuel -= 1;
                let z = self.binder(binder.level);
                let body = rename_type(body, binder, &z);
                let psi2 = extend_ctx(psi, z.clone(), (**domain).clone()).ok()?;
                Some(NormalTerm::lam(z, self.normal(&psi2, &body, fuel)?))
            }
            Type::Atomic(q) => self.atomic_of(psi, q, fuel).map(NormalTerm::from),
        }
    }

    fn atomic_of(&mut self, psi: &Context, q: &AtomicType, fuel: &mut i64) -> Option<AtomicTerm> {
        *fuel -= 1;
        let AtomicType::Const(fam) = q.head() else {
            return None;
        };
        let cheap_only = *fuel <= 0;
        let mut heads: Vec<(Head, u32)> = Vec::new();
        for d in psi.decls() {
            if family(&d.ty.ty) == Some(fam) && (!cheap_only || is_cheap(&d.ty)) {
                let w = if self.focus.as_ref() == Some(&d.var) {
                    6
                } else {
                    2
                };
                heads.push((Head::Var(d.var.clone()), w));
            }
        }
        for e in self.sig.signature().entries() {
            if e.class == ConstClass::Term
                && family(&e.ty) == Some(fam)
                && (!cheap_only || matches!(e.ty, Type::Atomic(_)))
            {
                heads.push((Head::Const(e.name.clone()), 1));
            }
        }
        for _ in 0..6 {
            let Ok(h) = heads.choose_weighted(&mut self.rng, |(_, w)| *w) else {
                break;
            };
            let h = h.0.clone();
            if let Some(r) = self.spine(psi, h, q, fuel) {
                return Some(r);
            }
        }
        fallback(q)
    }

    fn spine(
        &mut self,
        psi: &Context,
        head: Head,
        q: &AtomicType,
        fuel: &mut i64,
    ) -> Option<AtomicTerm> {
        let sig = Rc::clone(&self.sig);
        let checker = Checker::new(&sig);
        let (mut r, mut ty) = match head {
            Head::Const(c) => {
                let ty = sig.signature().get(&c)?.ty.clone();
                (AtomicTerm::Const(c), ty)
            }
            Head::Var(x) => {
                let ct = lookup(psi, &x).ok()?.clone();
                let sigma = self.subst_in(psi, &ct.ctx, fuel)?;
                let r = AtomicTerm::Var(x, sigma);
                let ty = checker.synth_atomic(psi, &r).ok()?;
                (r, ty)
            }
        };
        while let Type::Pi { binder, domain, .. } = &ty {
            let arg = self.bound(psi, binder.level, domain, fuel)?;
            ty = checker.apply_pi(psi, &ty, &arg).ok()?;
            r = r.app(arg);
        }
        match &ty {
            Type::Atomic(p) if equal_atomic(p, q) => Some(r),
            _ => None,
        }
    }

    fn bound(
        &mut self,
        psi: &Context,
        n: crate::syntax::Level,
        d: &CtxType,
        fuel: &mut i64,
    ) -> Option<BoundBody> {
        let inner = merge_ctx(&chop_ctx(psi, n), &d.ctx).ok()?;
        let body = self.normal(&inner, &d.ty, fuel)?;
        Some(BoundBody::new(d.ctx.hat().0, body))
    }

    /// A substitution `Ψ ⊢ σ ⇐ Φ` mixing renamings and terms.
    pub fn subst_for(&mut self, psi: &Context, phi: &Context) -> Subst {
        let mut fuel = self.size as i64;
        self.subst_in(psi, phi, &mut fuel)
            .unwrap_or_else(|| panic!("no substitution for {phi} in {psi}"))
    }

    fn subst_in(&mut self, psi: &Context, phi: &Context, fuel: &mut i64) -> Option<Subst> {
        let budget = Budget::default();
        let engine = Engine::new(&budget);
        let mut entries: Vec<SubstEntry> = Vec::new();
        for (i, d) in phi.decls().iter().enumerate() {
            let k = d.var.level;
            let expected = if i == 0 {
                d.ty.clone()
            } else {
                let dom = erase_ctx(&Context::new(phi.decls()[..i].to_vec()).ok()?).ok()?;
                engine
                    .simsub_ctx_type(&Subst(entries.clone()), &dom, &d.ty, k)
                    .ok()?
            };
            let renames: Vec<&Decl> = psi
                .decls()
                .iter()
                .filter(|w| w.var.level == k && equal_ctx_type(&w.ty, &expected))
                .collect();
            if !renames.is_empty() && self.rng.gen_bool(0.5) {
                let w = renames.choose(&mut self.rng)?;
                entries.push(SubstEntry::Rename(w.var.clone()));
                continue;
            }
            let b = self.bound(psi, k, &expected, fuel)?;
            let entry = match eta_contract(&b) {
                Some(w)
                    if w.level == k
                        && lookup(psi, &w).is_ok_and(|t| equal_ctx_type(t, &expected)) =>
                {
                    SubstEntry::Rename(w)
                }
                _ => SubstEntry::Term(b),
            };
            entries.push(entry);
        }
        Some(Subst(entries))
    }

    /// With a level bound above zero the instance contains a closure of a
    /// meta-variable, unless ten attempts fail to produce one.
    pub fn instance(&mut self) -> Instance {
        let mut ctx = self.context("u");
        let usable =
            |d: &Decl| d.var.level.0 > 0 && matches!(d.ty.ty.codomain(), AtomicType::Const(_));
        if self.level > 0 && !ctx.decls().iter().any(usable) {
            let level = self.rng.gen_range(1..=self.level);
            let src = ["i [y : i]", "i [X^1 : i [y : i]]"][level as usize - 1];
            let ty = self.menu_type(&Context::empty(), &[src], level);
            ctx = extend_ctx(&ctx, Var::new("u0", level), ty).expect("u0 is fresh");
        }
        // bias towards a meta-variable so closures show up
        let focus = ctx.decls().iter().find(|d| usable(d)).cloned();
        self.focus = focus.as_ref().map(|d| d.var.clone());
        let mut ty = self.target(&ctx);
        let mut term = self.term(&ctx, &ty);
        for _ in 0..10 {
            if self.level == 0 || mentions_meta(&term) {
                break;
            }
            ty = match &focus {
                Some(d) => Type::Atomic(d.ty.ty.codomain().clone()),
                None => self.target(&ctx),
            };
            term = self.term(&ctx, &ty);
        }
        self.focus = None;
        Instance {
            sig: (*self.sig).clone(),
            ctx,
            term,
            ty,
        }
    }

    pub fn hsub_instance(&mut self) -> HsubInstance {
        let ctx = self.context("u");
        let level = self.rng.gen_range(0..=self.level);
        let target = Var::new("t", level);
        let bound = self.menu_type(
            &chop_ctx(&ctx, crate::syntax::Level(level)),
            MENU[level as usize],
            level,
        );
        let inner = merge_ctx(&chop_ctx(&ctx, target.level), &bound.ctx).expect("levels separate");
        let n = self.term(&inner, &bound.ty);
        let replacement = BoundBody::new(bound.ctx.hat().0, n);
        let outer = extend_ctx(&ctx, target.clone(), bound.clone()).expect("target is fresh");
        self.focus = Some(target.clone());
        let mut attempt = None;
        for _ in 0..10 {
            let ty = match bound.ty.codomain() {
                p @ AtomicType::Const(_) if self.rng.gen_bool(0.5) => Type::Atomic(p.clone()),
                _ => self.target(&outer),
            };
            let m = self.term(&outer, &ty);
            let hit = m.free_vars().contains(&target);
            attempt = Some((m, ty));
            if hit {
                break;
            }
        }
        self.focus = None;
        let (subject, subject_ty) = attempt.expect("at least one attempt");
        HsubInstance {
            ctx,
            target,
            bound,
            replacement,
            subject,
            subject_ty,
        }
    }

    pub fn simsub_instance(&mut self) -> SimsubInstance {
        let ctx = self.context("u");
        let mut domain = self.context("a");
        for _ in 0..3 {
            if !domain.is_empty() {
                break;
            }
            domain = self.context("a");
        }
        let mut attempt = None;
        for _ in 0..10 {
            let ty = self.target(&domain);
            let m = self.term(&domain, &ty);
            let hit = m.free_vars().iter().any(|v| domain.contains(v));
            attempt = Some((m, ty));
            if hit {
                break;
            }
        }
        let (subject, subject_ty) = attempt.expect("at least one attempt");
        let subst = self.subst_for(&ctx, &domain);
        SimsubInstance {
            ctx,
            domain,
            subst,
            subject,
            subject_ty,
        }
    }
}

pub fn generate_instance(seed: u64, size: usize, level: u32) -> Instance {
    Generator::new(seed, size, level).instance()
}

fn family(a: &Type) -> Option<&str> {
    match a.codomain().head() {
        AtomicType::Const(c) => Some(c),
        _ => None,
    }
}

/// True when some variable above level 0 occurs.
pub fn mentions_meta(m: &NormalTerm) -> bool {
    m.free_vars().iter().any(|v| v.level.0 > 0)
}

fn is_cheap(a: &CtxType) -> bool {
    a.ctx.is_empty() && matches!(a.ty, Type::Atomic(_))
}

/// Small closed inhabitants, so generation always terminates.
fn fallback(q: &AtomicType) -> Option<AtomicTerm> {
    match q {
        AtomicType::Const(c) if &**c == "i" => Some(AtomicTerm::constant("c")),
        AtomicType::Const(c) if &**c == "o" => Some(AtomicTerm::constant("tt")),
        AtomicType::App(h, t) if matches!(&**h, AtomicType::Const(p) if &**p == "p") => {
            Some(AtomicTerm::constant("mk").app(t.clone()))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_check() {
        for seed in 0..200 {
            let inst = generate_instance(seed, 12, 2);
            let c = Checker::new(&inst.sig);
            c.check_judgement(&inst.ctx, &inst.term, &inst.ty)
                .unwrap_or_else(|e| {
                    panic!(
                        "seed {seed}: {e} at {:?}\n{} : {} in {}",
                        e.path, inst.term, inst.ty, inst.ctx
                    )
                });
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_instance(7, 8, 1);
        let b = generate_instance(7, 8, 1);
        assert_eq!(a.term, b.term);
        assert_eq!(a.ctx, b.ctx);
    }
}
