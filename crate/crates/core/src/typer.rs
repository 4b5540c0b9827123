//! Bidirectional type checking.
//!
//! Normal terms and types are checked, atomic ones synthesize. Types are
//! kept canonical by hereditary substitution, so conversion is syntactic
//! equality up to α and η on substitution entries.

use std::borrow::Cow;
use std::cell::RefCell;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::approx::{erase_ctx, erase_ctx_type, ApproxEntry, CtxApprox};
use crate::budget::{Budget, DepthGuard};
use crate::contexts::{
    chop_ctx, extend_ctx, level_of, lookup, merge_ctx, well_sorted, ContextError,
};
use crate::hsub::{rename_normal, rename_type, Engine, SingleSubst, SubstError};
use crate::syntax::{
    AtomicTerm, AtomicType, BoundBody, ConstClass, Context, CtxType, Decl, Equiv, HatContext,
    Level, NormalTerm, Scoped, Signature, Sort, Subst, SubstEntry, Type, Var,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    TypeMismatch,
    UnboundVariable,
    UnboundConstant,
    NotPi,
    ArityMismatch,
    LevelViolation,
    IllFormedContext,
    NotEtaLong,
    SubstFails,
    UnknownApprox,
    DepthExceeded,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind}: {message}")]
pub struct TypeError {
    pub kind: ErrorKind,
    /// From the judgement root down to the failing node.
    pub path: Vec<String>,
    pub message: String,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl TypeError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> TypeError {
        TypeError {
            kind,
            path: Vec::new(),
            message: message.into(),
            expected: None,
            actual: None,
        }
    }

    fn mismatch(expected: impl fmt::Display, actual: impl fmt::Display) -> TypeError {
        let (e, a) = (expected.to_string(), actual.to_string());
        TypeError {
            message: format!("expected {e}, found {a}"),
            expected: Some(e),
            actual: Some(a),
            ..TypeError::new(ErrorKind::TypeMismatch, "")
        }
    }
}

impl From<SubstError> for TypeError {
    fn from(e: SubstError) -> TypeError {
        let kind = match e {
            SubstError::Fails(_) => ErrorKind::SubstFails,
            SubstError::UnknownApprox(_) => ErrorKind::UnknownApprox,
            SubstError::Budget => ErrorKind::DepthExceeded,
        };
        TypeError::new(kind, e.to_string())
    }
}

impl From<ContextError> for TypeError {
    fn from(e: ContextError) -> TypeError {
        let kind = match e {
            ContextError::DuplicateName(_) => ErrorKind::IllFormedContext,
            ContextError::UnboundVariable(_) => ErrorKind::UnboundVariable,
            ContextError::ArityMismatch { .. } => ErrorKind::ArityMismatch,
        };
        TypeError::new(kind, e.to_string())
    }
}

type Res<T> = Result<T, TypeError>;

trait At<T> {
    fn at(self, seg: impl FnOnce() -> String) -> Res<T>;
}

impl<T> At<T> for Res<T> {
    fn at(self, seg: impl FnOnce() -> String) -> Res<T> {
        self.map_err(|mut e| {
            e.path.insert(0, seg());
            e
        })
    }
}

const PREVIEW: usize = 40;

/// At most `PREVIEW` bytes of `x`'s rendering. Printing stops early, so path
/// segments for deep terms stay cheap.
fn preview(x: &impl fmt::Display) -> String {
    struct Bounded(String);
    impl fmt::Write for Bounded {
        fn write_str(&mut self, s: &str) -> fmt::Result {
            let room = PREVIEW - self.0.len();
            if s.len() <= room {
                self.0.push_str(s);
                return Ok(());
            }
            let mut cut = room;
            while !s.is_char_boundary(cut) {
                cut -= 1;
            }
            self.0.push_str(&s[..cut]);
            Err(fmt::Error)
        }
    }
    let mut out = Bounded(String::new());
    match fmt::write(&mut out, format_args!("{x}")) {
        Ok(()) => out.0,
        Err(_) => out.0 + "…",
    }
}

/// A signature whose declarations have all been checked.
#[derive(Debug, Clone, Default)]
pub struct CheckedSignature(Signature);

impl CheckedSignature {
    pub fn signature(&self) -> &Signature {
        &self.0
    }
}

pub fn check_signature(sig: &Signature) -> Res<CheckedSignature> {
    for (i, e) in sig.entries().iter().enumerate() {
        let c = Checker::with_prefix(sig, i, Budget::default());
        let sort = match e.class {
            ConstClass::Family => Sort::Kind,
            ConstClass::Term => Sort::Type,
        };
        c.check_type(&Context::empty(), &e.ty, sort)
            .at(|| e.name.to_string())?;
    }
    Ok(CheckedSignature(sig.clone()))
}

pub struct Checker<'s> {
    sig: &'s Signature,
    visible: usize,
    budget: Budget,
    trace: Option<RefCell<Vec<String>>>,
}

impl<'s> Checker<'s> {
    pub fn new(sig: &'s CheckedSignature) -> Checker<'s> {
        Checker::with_budget(sig, Budget::default())
    }

    pub fn with_budget(sig: &'s CheckedSignature, budget: Budget) -> Checker<'s> {
        Checker::with_prefix(&sig.0, sig.0.len(), budget)
    }

    fn with_prefix(sig: &'s Signature, visible: usize, budget: Budget) -> Checker<'s> {
        Checker {
            sig,
            visible,
            budget,
            trace: None,
        }
    }

    /// Records every rule applied, retrievable with `take_trace`.
    pub fn traced(mut self) -> Checker<'s> {
        self.trace = Some(RefCell::new(Vec::new()));
        self
    }

    pub fn take_trace(&self) -> Vec<String> {
        self.trace
            .as_ref()
            .map(|t| std::mem::take(&mut *t.borrow_mut()))
            .unwrap_or_default()
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    fn rule(&self, name: &str, subject: impl FnOnce() -> String) {
        if let Some(t) = &self.trace {
            t.borrow_mut().push(format!("{name} {}", subject()));
        }
    }

    fn enter(&self) -> Res<DepthGuard<'_>> {
        self.budget.enter().map_err(|_| {
            TypeError::new(
                ErrorKind::DepthExceeded,
                format!("recursion depth exceeds {}", self.budget.max_depth()),
            )
        })
    }

    fn engine(&self) -> Engine<'_> {
        Engine::new(&self.budget)
    }

    fn constant(&self, name: &str) -> Res<&'s crate::syntax::SigEntry> {
        self.sig.get_in_prefix(name, self.visible).ok_or_else(|| {
            TypeError::new(
                ErrorKind::UnboundConstant,
                format!("unknown constant {name}"),
            )
        })
    }

    /// Checks a context, a type in it and a term against the type.
    pub fn check_judgement(&self, psi: &Context, m: &NormalTerm, a: &Type) -> Res<()> {
        self.budget.reset_steps();
        self.check_ctx(&Context::empty(), psi, level_of(psi))
            .at(|| "context".into())?;
        self.check_type(psi, a, Sort::Type).at(|| "type".into())?;
        self.check_normal(psi, m, a).at(|| "term".into())
    }

    // -----------------------------------------------------------------------
    // Types and kinds

    pub fn check_type(&self, psi: &Context, a: &Type, s: Sort) -> Res<()> {
        let _g = self.enter()?;
        match a {
            Type::Atomic(AtomicType::Sort(Sort::Type)) if s == Sort::Kind => {
                self.rule("K-Type", || a.to_string());
                Ok(())
            }
            Type::Atomic(AtomicType::Sort(_)) => Err(TypeError::mismatch(s, a)),
            Type::Atomic(p) => {
                self.rule("K-Atomic", || a.to_string());
                if s != Sort::Type {
                    return Err(TypeError::mismatch(s, a));
                }
                let k = self.synth_atomic_type(psi, p)?;
                if matches!(k, Type::Atomic(AtomicType::Sort(Sort::Type))) {
                    Ok(())
                } else {
                    Err(TypeError::mismatch(Sort::Type, k))
                }
            }
            Type::Pi {
                binder,
                domain,
                body,
            } => {
                self.rule("K-Pi", || a.to_string());
                let n = binder.level;
                self.check_ctx(psi, &domain.ctx, n)
                    .at(|| format!("domain of {binder}"))?;
                let inner = merge_ctx(&chop_ctx(psi, n), &domain.ctx)
                    .map_err(TypeError::from)
                    .at(|| format!("domain of {binder}"))?;
                self.check_type(&inner, &domain.ty, Sort::Type)
                    .at(|| format!("domain of {binder}"))?;
                let z = fresh_binder(binder, psi, false, &body.all_vars());
                let body = if z == *binder {
                    (**body).clone()
                } else {
                    rename_type(body, binder, &z)
                };
                let psi2 = extend_ctx(psi, z.clone(), (**domain).clone())?;
                self.check_type(&psi2, &body, s)
                    .at(|| format!("body of {z}"))
            }
        }
    }

    pub fn synth_atomic_type(&self, psi: &Context, p: &AtomicType) -> Res<Type> {
        let _g = self.enter()?;
        match p {
            AtomicType::Sort(s) => Err(TypeError::new(
                ErrorKind::TypeMismatch,
                format!("{s} has no kind"),
            )),
            AtomicType::Const(a) => {
                self.rule("A-Const", || a.to_string());
                let e = self.constant(a)?;
                if e.class != ConstClass::Family {
                    return Err(TypeError::new(
                        ErrorKind::TypeMismatch,
                        format!("{a} is a term constant, not a type family"),
                    ));
                }
                Ok(e.ty.clone())
            }
            AtomicType::App(h, arg) => {
                self.rule("A-App", || p.to_string());
                let k = self.synth_atomic_type(psi, h).at(|| "head".into())?;
                self.apply_pi(psi, &k, arg)
                    .at(|| format!("argument {}", preview(arg)))
            }
        }
    }

    /// The shared application step: checks `arg` against the Π domain and
    /// instantiates the codomain.
    pub fn apply_pi(&self, psi: &Context, f: &Type, arg: &BoundBody) -> Res<Type> {
        let Type::Pi {
            binder,
            domain,
            body,
        } = f
        else {
            return Err(TypeError::new(
                ErrorKind::NotPi,
                format!("cannot apply something of type {f}"),
            ));
        };
        let n = binder.level;
        let phi = &domain.ctx;
        let m = self.align(&arg.hat, phi, &arg.body)?;
        let inner = merge_ctx(&chop_ctx(psi, n), phi)?;
        self.check_normal(&inner, &m, &domain.ty)?;
        let bound = erase_ctx_type(domain)
            .map_err(|e| TypeError::new(ErrorKind::TypeMismatch, e.to_string()))?;
        // a non-dependent codomain needs no substitution, which keeps long
        // spines linear
        if !body.free_vars().contains(binder) {
            return Ok((**body).clone());
        }
        let s = SingleSubst::new(
            BoundBody::new(phi.hat().0, m.into_owned()),
            binder.clone(),
            bound,
        )?;
        Ok(self.engine().ty(&s, body)?)
    }

    /// Renames the binders of `hat` to the declarations of `phi`.
    fn align<'m>(
        &self,
        hat: &HatContext,
        phi: &Context,
        m: &'m NormalTerm,
    ) -> Res<Cow<'m, NormalTerm>> {
        if hat.len() != phi.len() {
            return Err(TypeError::new(
                ErrorKind::ArityMismatch,
                format!(
                    "argument binds {} variables but its context has {}",
                    hat.len(),
                    phi.len()
                ),
            ));
        }
        if let Some((h, d)) = hat
            .0
            .iter()
            .zip(phi.vars())
            .find(|(h, d)| h.level != d.level)
        {
            return Err(TypeError::new(
                ErrorKind::LevelViolation,
                format!("binder {h} stands for {d}"),
            ));
        }
        if hat.0.iter().eq(phi.vars()) {
            return Ok(Cow::Borrowed(m));
        }
        let sigma = Subst(phi.vars().cloned().map(SubstEntry::Rename).collect());
        let dom = CtxApprox(
            hat.0
                .iter()
                .map(|v| ApproxEntry {
                    var: v.clone(),
                    approx: None,
                })
                .collect(),
        );
        Ok(Cow::Owned(self.engine().simsub_normal(&sigma, &dom, m)?))
    }

    // -----------------------------------------------------------------------
    // Terms

    pub fn synth_atomic(&self, psi: &Context, r: &AtomicTerm) -> Res<Type> {
        let _g = self.enter()?;
        match r {
            AtomicTerm::Var(x, sigma) => {
                self.rule("T-Var", || r.to_string());
                let ct = lookup(psi, x)?;
                self.check_subst(psi, sigma, &ct.ctx)
                    .at(|| format!("closure of {x}"))?;
                if sigma.is_empty() {
                    return Ok(ct.ty.clone());
                }
                let dom = erase_ctx(&ct.ctx)
                    .map_err(|e| TypeError::new(ErrorKind::IllFormedContext, e.to_string()))?;
                Ok(self.engine().simsub_type(sigma, &dom, &ct.ty)?)
            }
            AtomicTerm::Const(c) => {
                self.rule("T-Const", || c.to_string());
                let e = self.constant(c)?;
                if e.class != ConstClass::Term {
                    return Err(TypeError::new(
                        ErrorKind::TypeMismatch,
                        format!("{c} is a type family, not a term"),
                    ));
                }
                Ok(e.ty.clone())
            }
            AtomicTerm::App(h, arg) => {
                self.rule("T-App", || r.to_string());
                let f = self.synth_atomic(psi, h).at(|| "head".into())?;
                self.apply_pi(psi, &f, arg)
                    .at(|| format!("argument {}", preview(arg)))
            }
        }
    }

    pub fn check_normal(&self, psi: &Context, m: &NormalTerm, a: &Type) -> Res<()> {
        let _g = self.enter()?;
        match (m, a) {
            (
                NormalTerm::Lam(y, body),
                Type::Pi {
                    binder,
                    domain,
                    body: b,
                },
            ) => {
                self.rule("N-Lam", || m.to_string());
                if y.level != binder.level {
                    return Err(TypeError::new(
                        ErrorKind::LevelViolation,
                        format!("λ binds {y} against a Π over {binder}"),
                    ));
                }
                let b_vars = b.all_vars();
                let clash = y != binder && b_vars.contains(y);
                let mut used = body.all_vars();
                used.extend(b_vars);
                let z = fresh_binder(y, psi, clash, &used);
                let body = if z == *y {
                    (**body).clone()
                } else {
                    rename_normal(body, y, &z)
                };
                let b = if z == *binder {
                    (**b).clone()
                } else {
                    rename_type(b, binder, &z)
                };
                let psi2 = extend_ctx(psi, z.clone(), (**domain).clone())?;
                self.check_normal(&psi2, &body, &b)
                    .at(|| format!("body of \\{z}"))
            }
            (NormalTerm::Lam(..), Type::Atomic(_)) => Err(TypeError::mismatch(a, "a function")),
            (NormalTerm::Atomic(_), Type::Pi { .. }) => Err(TypeError {
                expected: Some(a.to_string()),
                actual: Some(m.to_string()),
                ..TypeError::new(
                    ErrorKind::NotEtaLong,
                    format!("{m} must be η-expanded to check against {a}"),
                )
            }),
            (NormalTerm::Atomic(r), Type::Atomic(q)) => {
                self.rule("N-Conv", || m.to_string());
                let p = self.synth_atomic(psi, r)?;
                match &p {
                    Type::Pi { .. } => Err(TypeError {
                        expected: Some(a.to_string()),
                        actual: Some(p.to_string()),
                        ..TypeError::new(ErrorKind::NotEtaLong, format!("{m} is not fully applied"))
                    }),
                    Type::Atomic(p) if equal_atomic(p, q) => Ok(()),
                    Type::Atomic(p) => Err(TypeError::mismatch(q, p)),
                }
            }
        }
    }

    // -----------------------------------------------------------------------
    // Substitutions and contexts

    pub fn check_subst(&self, psi: &Context, sigma: &Subst, phi: &Context) -> Res<()> {
        let _g = self.enter()?;
        if sigma.len() != phi.len() {
            return Err(TypeError::new(
                ErrorKind::ArityMismatch,
                format!(
                    "substitution has {} entries for a context of {}",
                    sigma.len(),
                    phi.len()
                ),
            ));
        }
        if sigma.is_empty() {
            self.rule("S-Empty", String::new);
        }
        for (i, (entry, d)) in sigma.0.iter().zip(phi.decls()).enumerate() {
            let prefix = Subst(sigma.0[..i].to_vec());
            let dom = erase_ctx(&Context::from_distinct(phi.decls()[..i].to_vec()))
                .map_err(|e| TypeError::new(ErrorKind::IllFormedContext, e.to_string()))?;
            let k = d.var.level;
            let expected = if prefix.is_empty() {
                d.ty.clone()
            } else {
                self.engine().simsub_ctx_type(&prefix, &dom, &d.ty, k)?
            };
            self.subst_entry(psi, entry, &d.var, &expected)
                .at(|| format!("entry for {}", d.var))?;
        }
        Ok(())
    }

    fn subst_entry(
        &self,
        psi: &Context,
        entry: &SubstEntry,
        x: &Var,
        expected: &CtxType,
    ) -> Res<()> {
        let k = x.level;
        match entry {
            SubstEntry::Term(b) => {
                self.rule("S-Term", || b.to_string());
                let m = self.align(&b.hat, &expected.ctx, &b.body)?;
                let inner = merge_ctx(&chop_ctx(psi, k), &expected.ctx)?;
                self.check_normal(&inner, &m, &expected.ty)
            }
            SubstEntry::Rename(y) => {
                self.rule("S-Rename", || y.to_string());
                if y.level != k {
                    return Err(TypeError::new(
                        ErrorKind::LevelViolation,
                        format!("{y} cannot stand for {x}"),
                    ));
                }
                let actual = lookup(psi, y)?;
                if equal_ctx_type(actual, expected) {
                    Ok(())
                } else {
                    Err(TypeError::mismatch(expected, actual))
                }
            }
        }
    }

    /// `Ψ ⊢ Φⁿ ctx`.
    pub fn check_ctx(&self, psi: &Context, phi: &Context, n: Level) -> Res<()> {
        let _g = self.enter()?;
        if !well_sorted(phi) {
            return Err(TypeError::new(
                ErrorKind::IllFormedContext,
                format!("declarations of {phi} are not ordered by level"),
            ));
        }
        if phi.is_empty() {
            self.rule("C-Empty", String::new);
        }
        let outer = chop_ctx(psi, n);
        for (i, d) in phi.decls().iter().enumerate() {
            let Decl { var, ty } = d;
            self.rule("C-Decl", || d.to_string());
            let k = var.level;
            if k >= n {
                return Err(TypeError::new(
                    ErrorKind::LevelViolation,
                    format!("{var} is not below the context bound {n}"),
                ))
                .at(|| format!("declaration of {var}"));
            }
            let before = chop_ctx(&Context::from_distinct(phi.decls()[..i].to_vec()), k);
            let base = merge_ctx(&outer, &before)
                .map_err(TypeError::from)
                .at(|| format!("declaration of {var}"))?;
            self.check_ctx(&base, &ty.ctx, k)
                .at(|| format!("local context of {var}"))?;
            let full = merge_ctx(&base, &ty.ctx)
                .map_err(TypeError::from)
                .at(|| format!("declaration of {var}"))?;
            self.check_type(&full, &ty.ty, Sort::Type)
                .at(|| format!("declaration of {var}"))?;
        }
        Ok(())
    }
}

/// A binder name for extending `psi`: `y` itself when that is safe,
/// otherwise a fresh variant avoiding `psi` and `used`.
fn fresh_binder(y: &Var, psi: &Context, clash: bool, used: &BTreeSet<Var>) -> Var {
    if !clash && !psi.contains(y) {
        return y.clone();
    }
    y.freshen(|v| psi.contains(v) || used.contains(v))
}

// ---------------------------------------------------------------------------
// Equality

pub fn equal_atomic(p: &AtomicType, q: &AtomicType) -> bool {
    Equiv::new(true).atomic_type(p, q)
}

pub fn equal_type(a: &Type, b: &Type) -> bool {
    Equiv::new(true).ty(a, b)
}

pub fn equal_ctx_type(a: &CtxType, b: &CtxType) -> bool {
    Equiv::new(true).ctx_type(a, b)
}

pub fn equal_subst(s: &Subst, t: &Subst) -> bool {
    Equiv::new(true).subst(s, t)
}

pub fn equal_normal(m: &NormalTerm, n: &NormalTerm) -> bool {
    Equiv::new(true).normal(m, n)
}
